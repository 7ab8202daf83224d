//! Deterministic JSON encodings. Object keys come out sorted because
//! `serde_json::Map` is ordered.

use qdyb_core::block::TensorSpace;
use qdyb_core::diffop::DiffOp;
use qdyb_core::exact::{rat_to_string, DynField, ExpSeries, Prefactor, Rat};
use qdyb_core::linalg::Mat;
use qdyb_core::repmod::FinModule;
use qdyb_core::report::Verification;
use qdyb_core::trace::TraceFunction;
use serde_json::{json, Value};

pub fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rat_to_string(x))).collect())
}

/// Nonzero entries in row-major order.
pub fn matrix<E: Clone>(
    space: &TensorSpace<'_>,
    m: &Mat<E>,
    is_zero: impl Fn(&E) -> bool,
    render: impl Fn(&E) -> String,
) -> Value {
    let mut entries = Vec::new();
    for (i, j, x) in m.entries() {
        if !is_zero(x) {
            entries.push(json!([space.label(i), space.label(j), render(x)]));
        }
    }
    json!({
        "codomain": space.names(),
        "domain": space.names(),
        "entries": entries,
    })
}

pub fn field_matrix<F: DynField>(k: &F, space: &TensorSpace<'_>, m: &Mat<F::E>) -> Value {
    matrix(space, m, |x| k.is_zero(x), |x| k.render(x))
}

pub fn diffop(d: &DiffOp, u: &FinModule, prefix: &str) -> Value {
    let labels: Vec<&str> = d.zero.iter().map(|&i| u.labels[i].as_str()).collect();
    let shifts: Vec<Value> = d
        .coeffs
        .iter()
        .map(|(nu, m)| {
            let mut entries = Vec::new();
            for (i, j, x) in m.entries() {
                if !x.is_zero() {
                    entries.push(json!([labels[i], labels[j], x.to_string_with(prefix)]));
                }
            }
            json!({
                "matrix": {"codomain": [u.name], "domain": [u.name], "entries": entries},
                "nu": nu,
            })
        })
        .collect();
    json!({"module": u.name, "shifts": shifts})
}

fn prefactor(p: Prefactor) -> &'static str {
    match p {
        Prefactor::None => "none",
        Prefactor::Plus => "+",
        Prefactor::Minus => "-",
    }
}

pub fn series(s: &ExpSeries, prefix: &str) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(xi, c)| json!({"coeff": c.to_string_with(prefix), "exponent": rats(&xi.0)}))
        .collect();
    json!({
        "order": rat_to_string(s.order()),
        "prefactor": prefactor(s.prefactor()),
        "terms": terms,
    })
}

pub fn trace(t: &TraceFunction, v: &FinModule, prefix: &str) -> Value {
    let mut entries = Vec::new();
    for (a, row) in t.series.iter().enumerate() {
        for (b, s) in row.iter().enumerate() {
            entries.push(json!({
                "col": format!("{}*", v.labels[t.zero[b]]),
                "row": v.labels[t.zero[a]],
                "series": series(s, prefix),
            }));
        }
    }
    json!({
        "entries": entries,
        "module": t.module,
        "order": rat_to_string(&t.order),
        "prefactor": prefactor(t.prefactor),
    })
}

pub fn report(r: &Verification, sample: Option<&[Rat]>) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({"block": f.block, "col": f.col, "lhs": f.lhs, "rhs": f.rhs, "row": f.row}))
        .collect();
    json!({
        "checked": r.checked,
        "failures": failures,
        "identity": r.identity,
        "operands": r.operands,
        "sample": sample.map(rats),
        "status": if r.passed() { "pass" } else { "fail" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdyb_core::cartan::root_system;
    use qdyb_core::exact::Q;
    use qdyb_core::linalg::identity;
    use qdyb_core::repmod::trivial;

    #[test]
    fn identity_matrix() {
        let rs = root_system(1).unwrap();
        let t = trivial(&rs);
        let space = TensorSpace::new(&[&t]);
        let v = field_matrix(
            &qdyb_core::exact::Numeric::new(vec![Rat::from_integer(0.into())]),
            &space,
            &identity(&Q, 1),
        );
        assert_eq!(v["entries"], json!([["0", "0", "1"]]));
    }

    #[test]
    fn pass_report() {
        let r = Verification::new("qdybe", "L(1)");
        let v = report(&r, None);
        assert_eq!(v["status"], "pass");
        assert_eq!(v["failures"], json!([]));
    }
}
