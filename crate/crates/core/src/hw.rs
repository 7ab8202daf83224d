//! Highest-weight modules as spans of f-words modulo the radical of the
//! contravariant pairing.
//!
//! A word `f_j·b` is identified with its image under all `e_i`, computed from
//! `e_i f_j = f_j e_i + δ_ij h_i`. Below the top, a vector is in the radical
//! exactly when every `e_i` kills it, so a maximal independent set of
//! e-images gives a basis of the quotient.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::exact::scalar::Field;
use crate::linalg::{IncrementalBasis, Mat};

/// Simple-root coordinates of `λ - (weight)`.
pub type Level = Vec<u32>;

#[derive(Clone, Debug)]
pub struct LevelData<E> {
    /// Basis words; `word[0]` is applied last.
    pub words: Vec<Vec<usize>>,
    /// `e[i]`: matrix of `e_i` from this level to `β - α_i`.
    pub e: Vec<Option<Mat<E>>>,
}

#[derive(Clone, Debug)]
pub struct HwQuotient<E> {
    pub rank: usize,
    pub levels: BTreeMap<Level, LevelData<E>>,
    /// Levels sorted by height, then lexicographically.
    pub order: Vec<Level>,
    /// `f[(j, β)]`: matrix of `f_j` from `β` to `β + α_j`.
    pub f: BTreeMap<(usize, Level), Mat<E>>,
    /// Largest height that was built.
    pub depth: usize,
}

fn step(b: &Level, i: usize, up: bool) -> Option<Level> {
    let mut out = b.clone();
    if up {
        out[i] += 1;
    } else {
        out[i] = out[i].checked_sub(1)?;
    }
    Some(out)
}

/// Builds the quotient up to height `depth`, or until a height is empty when
/// `depth` is `None`. With `kostant` set, every level must have dimension
/// equal to the Kostant partition count.
pub fn build<F: Field>(
    k: &F,
    rs: &RootSystem,
    lam: &[F::E],
    depth: Option<usize>,
    kostant: bool,
) -> Result<HwQuotient<F::E>> {
    let r = rs.rank;
    let top = vec![0u32; r];
    let mut q = HwQuotient {
        rank: r,
        levels: BTreeMap::new(),
        order: vec![top.clone()],
        f: BTreeMap::new(),
        depth: 0,
    };
    q.levels.insert(
        top,
        LevelData {
            words: vec![Vec::new()],
            e: vec![None; r],
        },
    );
    let mut h = 1usize;
    loop {
        if depth.is_some_and(|d| h > d) {
            break;
        }
        let mut any = false;
        for beta in rs.cone_level(h as u32) {
            if build_level(k, rs, lam, &mut q, &beta, kostant)? {
                any = true;
            }
        }
        if !any && depth.is_none() {
            break;
        }
        q.depth = h;
        h += 1;
    }
    Ok(q)
}

fn build_level<F: Field>(
    k: &F,
    rs: &RootSystem,
    lam: &[F::E],
    q: &mut HwQuotient<F::E>,
    beta: &Level,
    kostant: bool,
) -> Result<bool> {
    let r = rs.rank;
    // candidates f_j·b for b in the level β - α_j
    let mut cands: Vec<(usize, Level, usize)> = Vec::new();
    for j in 0..r {
        if let Some(pb) = step(beta, j, false) {
            if let Some(l) = q.levels.get(&pb) {
                for idx in 0..l.words.len() {
                    cands.push((j, pb.clone(), idx));
                }
            }
        }
    }
    let targets: Vec<(usize, Level, usize)> = (0..r)
        .filter_map(|i| {
            let t = step(beta, i, false)?;
            let n = q.levels.get(&t)?.words.len();
            Some((i, t, n))
        })
        .collect();
    let images: Vec<Vec<F::E>> = cands
        .iter()
        .map(|(j, pb, idx)| e_image(k, rs, lam, q, &targets, *j, pb, *idx))
        .collect();
    let mut basis = IncrementalBasis::new(k.clone());
    let mut chosen = Vec::new();
    for (c, img) in images.iter().enumerate() {
        if basis.try_add(img) {
            chosen.push(c);
        }
    }
    if kostant {
        let expected = rs.kostant_partition(&rs.from_simple(&beta.iter().map(|&x| i64::from(x)).collect::<Vec<_>>()));
        if chosen.len() as u64 != expected {
            return Err(Error::NonGenericWeight(alloc::format!(
                "level {:?} has dimension {} instead of {}",
                beta,
                chosen.len(),
                expected
            )));
        }
    }
    if chosen.is_empty() {
        return Ok(false);
    }
    let mut e = vec![None; r];
    let mut offset = 0;
    for (i, _, n) in &targets {
        e[*i] = Some(Mat::from_fn(*n, chosen.len(), |a, c| {
            images[chosen[c]][offset + a].clone()
        }));
        offset += n;
    }
    let words = chosen
        .iter()
        .map(|&c| {
            let (j, pb, idx) = &cands[c];
            let mut w = vec![*j];
            w.extend_from_slice(&q.levels[pb].words[*idx]);
            w
        })
        .collect();
    for j in 0..r {
        let Some(pb) = step(beta, j, false) else {
            continue;
        };
        let Some(src) = q.levels.get(&pb) else {
            continue;
        };
        let mut fm = Mat::filled(chosen.len(), src.words.len(), k.zero());
        for (c, (jj, pbb, idx)) in cands.iter().enumerate() {
            if *jj != j || *pbb != pb {
                continue;
            }
            let coords = basis
                .coords(&images[c])
                .ok_or_else(|| Error::Postcondition("candidate outside the span of the chosen words".into()))?;
            for (t, v) in coords.into_iter().enumerate() {
                fm.set(t, *idx, v);
            }
        }
        q.f.insert((j, pb), fm);
    }
    q.levels.insert(beta.clone(), LevelData { words, e });
    q.order.push(beta.clone());
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn e_image<F: Field>(
    k: &F,
    rs: &RootSystem,
    lam: &[F::E],
    q: &HwQuotient<F::E>,
    targets: &[(usize, Level, usize)],
    j: usize,
    pb: &Level,
    idx: usize,
) -> Vec<F::E> {
    let r = rs.rank;
    let mut out = Vec::new();
    for (i, _, n) in targets {
        let mut v = vec![k.zero(); *n];
        // f_j (e_i b)
        if let (Some(src), Some(Some(ei))) = (step(pb, *i, false), q.levels[pb].e.get(*i)) {
            if let Some(fj) = q.f.get(&(j, src)) {
                for a in 0..ei.rows() {
                    let c = ei.get(a, idx);
                    if k.is_zero(c) {
                        continue;
                    }
                    for (t, x) in v.iter_mut().enumerate() {
                        let y = fj.get(t, a);
                        if !k.is_zero(y) {
                            *x = k.add(x, &k.mul(c, y));
                        }
                    }
                }
            }
        }
        // δ_ij h_i b
        if *i == j {
            let shift: i64 = (0..r).map(|l| rs.cartan[*i][l] * i64::from(pb[l])).sum();
            let hval = k.sub(&lam[*i], &k.lift_int(shift));
            v[idx] = k.add(&v[idx], &hval);
        }
        out.extend(v);
    }
    out
}
