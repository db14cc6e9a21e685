//! Bundled fixture curves F1-F5. They anchor the documentation examples,
//! the default sweep and the acceptance suite.
//!
//! - F1: one smooth rational component
//! - F2: two components joined at one node (chain)
//! - F3: two components joined at two nodes (cycle, genus 1)
//! - F4: one component with a self-node (nodal cubic model, genus 1)
//! - F5: three components in a subdivided theta shape (genus 2)

use crate::curve::NodalCurve;
use crate::error::{Error, Result};
use crate::linalg::rat;

pub const NAMES: [&str; 5] = ["F1", "F2", "F3", "F4", "F5"];

pub fn f1() -> NodalCurve {
    NodalCurve::new(vec!["Z1".into()], vec![]).unwrap()
}

pub fn f2() -> NodalCurve {
    NodalCurve::new(
        vec!["Z1".into(), "Z2".into()],
        vec![("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0)))],
    )
    .unwrap()
}

pub fn f3() -> NodalCurve {
    NodalCurve::new(
        vec!["Z1".into(), "Z2".into()],
        vec![
            ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
            ("e2".into(), ("Z1".into(), rat(1)), ("Z2".into(), rat(1))),
        ],
    )
    .unwrap()
}

pub fn f4() -> NodalCurve {
    NodalCurve::new(
        vec!["Z1".into()],
        vec![("e1".into(), ("Z1".into(), rat(0)), ("Z1".into(), rat(1)))],
    )
    .unwrap()
}

pub fn f5() -> NodalCurve {
    NodalCurve::new(
        vec!["Z1".into(), "Z2".into(), "Z3".into()],
        vec![
            ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
            ("e2".into(), ("Z1".into(), rat(1)), ("Z2".into(), rat(1))),
            ("e3".into(), ("Z1".into(), rat(2)), ("Z3".into(), rat(0))),
            ("e4".into(), ("Z3".into(), rat(1)), ("Z2".into(), rat(2))),
        ],
    )
    .unwrap()
}

pub fn by_name(name: &str) -> Result<NodalCurve> {
    match name {
        "F1" => Ok(f1()),
        "F2" => Ok(f2()),
        "F3" => Ok(f3()),
        "F4" => Ok(f4()),
        "F5" => Ok(f5()),
        other => Err(Error::Input {
            field: "catalog".into(),
            message: format!("unknown fixture `{other}` (known: F1..F5)"),
        }),
    }
}

pub fn all() -> Vec<(String, NodalCurve)> {
    NAMES
        .iter()
        .map(|n| (n.to_string(), by_name(n).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genera() {
        assert_eq!(f1().arithmetic_genus().unwrap(), 0);
        assert_eq!(f2().arithmetic_genus().unwrap(), 0);
        assert_eq!(f3().arithmetic_genus().unwrap(), 1);
        assert_eq!(f4().arithmetic_genus().unwrap(), 1);
        assert_eq!(f5().arithmetic_genus().unwrap(), 2);
    }

    #[test]
    fn unknown_name() {
        assert!(by_name("F9").is_err());
    }
}
