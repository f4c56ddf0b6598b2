//! Group specifications: the named-type shorthand grammar and matrix files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use cambrian::CoxeterMatrix;

/// Expand a named type: `A<n>`, `B<n>`, `D<n>`, `E6`..`E8`, `F4`, `H3`,
/// `H4`, or `I2(<m>)`.
pub fn parse_group_spec(text: &str) -> Result<CoxeterMatrix> {
    let text = text.trim();
    let unsupported = |what: &str| anyhow!("unsupported rank for {what}: {text:?}");
    if let Some(m) = text.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = m.parse().with_context(|| format!("bad I2 order in {text:?}"))?;
        return CoxeterMatrix::dihedral(m).map_err(|_| unsupported("I2(m), m >= 3"));
    }
    let (family, num) = text.split_at(1.min(text.len()));
    let n: usize = match family {
        "A" | "B" | "D" | "E" | "H" if !num.is_empty() => num
            .parse()
            .with_context(|| format!("bad rank in group spec {text:?}"))?,
        "F" if num == "4" => return Ok(CoxeterMatrix::type_f4()),
        _ => bail!("unrecognized group spec {text:?} (expected A<n>, B<n>, D<n>, E6-E8, F4, H3, H4, or I2(<m>))"),
    };
    match family {
        "A" => CoxeterMatrix::type_a(n).map_err(|_| unsupported("A<n>, n >= 1")),
        "B" => CoxeterMatrix::type_b(n).map_err(|_| unsupported("B<n>, n >= 2")),
        "D" => CoxeterMatrix::type_d(n).map_err(|_| unsupported("D<n>, n >= 2")),
        "E" => CoxeterMatrix::type_e(n).map_err(|_| unsupported("E6, E7, E8")),
        "H" => CoxeterMatrix::type_h(n).map_err(|_| unsupported("H3, H4")),
        _ => unreachable!(),
    }
}

/// Read a matrix from a JSON file `{"rank": n, "m": [[...]]}`.
pub fn matrix_from_file(path: &Path) -> Result<CoxeterMatrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read matrix file {}", path.display()))?;
    CoxeterMatrix::from_json(&text).map_err(|e| anyhow!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_specs() {
        assert_eq!(parse_group_spec("B2").unwrap().entry(0, 1), 4);
        let a3 = parse_group_spec("A3").unwrap();
        assert_eq!((a3.entry(0, 1), a3.entry(1, 2), a3.entry(0, 2)), (3, 3, 2));
        assert_eq!(parse_group_spec("I2(7)").unwrap().entry(1, 0), 7);
        assert_eq!(parse_group_spec("F4").unwrap().rank(), 4);
        assert_eq!(parse_group_spec("E6").unwrap().rank(), 6);
        assert_eq!(parse_group_spec("H4").unwrap().rank(), 4);
        assert_eq!(parse_group_spec("A1").unwrap().rank(), 1);
    }

    #[test]
    fn rejected_specs() {
        for bad in ["", "Q5", "A0", "B1", "D1", "H5", "E9", "F5", "I2(2)", "I2(x)", "A", "Ax"] {
            assert!(parse_group_spec(bad).is_err(), "{bad} should be rejected");
        }
    }
}
