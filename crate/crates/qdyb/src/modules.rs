//! Algebra and module specifications as given on the command line.

use qdyb_core::cartan::{root_system, RootSystem};
use qdyb_core::repmod::{dual, irrep, FinModule};

/// `A1`, `A2`, ...
pub fn parse_algebra(s: &str) -> Result<RootSystem, String> {
    let rank = s
        .strip_prefix('A')
        .and_then(|r| r.parse::<i64>().ok())
        .ok_or_else(|| format!("unknown algebra `{s}` (expected A1, A2, ...)"))?;
    root_system(rank).map_err(|e| e.to_string())
}

/// Splits at commas outside parentheses.
pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// `L(a_1,...,a_r)` with an optional trailing `*` for the dual.
pub fn parse_module(rs: &RootSystem, s: &str) -> Result<FinModule, String> {
    let (body, is_dual) = match s.strip_suffix('*') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let inner = body
        .strip_prefix("L(")
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| format!("bad module `{s}` (expected L(a,b,...))"))?;
    let lam = inner
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| format!("bad highest weight in `{s}`"))?;
    if lam.len() != rs.rank {
        return Err(format!("`{s}` needs {} coordinates", rs.rank));
    }
    let m = irrep(rs, &lam).map_err(|e| format!("{s}: {e}"))?;
    Ok(if is_dual { dual(&m) } else { m })
}

pub fn parse_modules(rs: &RootSystem, s: &str) -> Result<Vec<FinModule>, String> {
    let mods = split_list(s)
        .iter()
        .map(|m| parse_module(rs, m))
        .collect::<Result<Vec<_>, _>>()?;
    if mods.is_empty() {
        return Err("no modules given".into());
    }
    Ok(mods)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_keep_parenthesised_commas() {
        assert_eq!(split_list("L(1,0),L(0,1)"), ["L(1,0)", "L(0,1)"]);
        assert_eq!(split_list("L(1), L(2)"), ["L(1)", "L(2)"]);
    }

    #[test]
    fn module_specs() {
        let rs = parse_algebra("A2").unwrap();
        let m = parse_module(&rs, "L(1,0)").unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(parse_module(&rs, "L(1,0)*").unwrap().name, "L(1,0)*");
        assert!(parse_module(&rs, "L(1)").is_err());
        assert!(parse_module(&rs, "L(-1,0)").is_err());
        assert!(parse_algebra("B2").is_err());
    }
}
