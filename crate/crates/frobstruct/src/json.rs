//! JSON file formats. All indices are 0-based and all coefficients are exact
//! rational strings `"p/q"`.

use std::str::FromStr;

use frobstruct_core::algebra::{Decision, OracleOutcome, OracleVerdict};
use frobstruct_core::coalgebra::{Coalgebra, Elem, IncCoalgebra};
use frobstruct_core::linalg::Rational;
use frobstruct_core::preorder::{BuildMode, Preorder};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed rational {0:?} (expected \"p/q\" or an integer)")]
    Rational(String),
    #[error("({x}, {y}) is not a basis pair of the coalgebra")]
    NotABasisPair { x: usize, y: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    #[default]
    Verify,
    Closure,
}

impl From<ModeJson> for BuildMode {
    fn from(m: ModeJson) -> Self {
        match m {
            ModeJson::Verify => BuildMode::Verify,
            ModeJson::Closure => BuildMode::Closure,
        }
    }
}

/// `{"n": 3, "pairs": [[0,1],[1,2]], "mode": "closure"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderJson {
    pub n: usize,
    #[serde(default)]
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub mode: ModeJson,
}

impl PreorderJson {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Preorder, frobstruct_core::PreorderError> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&[x, y]| (x, y)).collect();
        Preorder::build(self.n, &pairs, self.mode.into())
    }

    /// Closed form: every comparable pair, diagonal included.
    pub fn from_preorder(p: &Preorder) -> Self {
        PreorderJson {
            n: p.n(),
            pairs: p.comparable_pairs().map(|(x, y)| [x, y]).collect(),
            mode: ModeJson::Verify,
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let bad = || FormatError::Rational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// One term of an element: `{"x": 0, "y": 2, "coef": "3/2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: usize,
    pub y: usize,
    pub coef: String,
}

pub fn elem_to_json(c: &IncCoalgebra, e: &Elem) -> Vec<TermJson> {
    e.iter()
        .map(|(&k, coef)| {
            let (x, y) = c.pair(k);
            TermJson {
                x,
                y,
                coef: format_rational(coef),
            }
        })
        .collect()
}

pub fn elem_from_json(c: &IncCoalgebra, terms: &[TermJson]) -> Result<Elem, FormatError> {
    let mut out = Elem::zero();
    for t in terms {
        let k = c
            .index_of(t.x, t.y)
            .ok_or(FormatError::NotABasisPair { x: t.x, y: t.y })?;
        out.add_term(k, parse_rational(&t.coef)?);
    }
    Ok(out)
}

/// A term of `Δ(c)`: `coef · e_left ⊗ e_right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorTermJson {
    pub left: [usize; 2],
    pub right: [usize; 2],
    pub coef: String,
}

pub fn delta_to_json(c: &IncCoalgebra, e: &Elem) -> Vec<TensorTermJson> {
    c.delta(e)
        .iter()
        .map(|((a, b), coef)| {
            let (x1, y1) = c.pair(*a);
            let (x2, y2) = c.pair(*b);
            TensorTermJson {
                left: [x1, y1],
                right: [x2, y2],
                coef: format_rational(coef),
            }
        })
        .collect()
}

/// `{"frobenius": bool, "blocks": [[..]] | null, "counterexample": [x,y] | null, "dim": int, "block_sizes": [..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionJson {
    pub frobenius: bool,
    pub blocks: Option<Vec<Vec<usize>>>,
    pub counterexample: Option<[usize; 2]>,
    pub dim: usize,
    pub block_sizes: Vec<usize>,
}

impl DecisionJson {
    pub fn new(decision: &Decision, dim: usize) -> Self {
        DecisionJson {
            frobenius: decision.is_frobenius(),
            blocks: decision.partition().map(<[_]>::to_vec),
            counterexample: decision.counterexample().map(|(x, y)| [x, y]),
            dim,
            block_sizes: decision.block_sizes(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleJson {
    pub verdict: &'static str,
    pub witness: Option<Vec<String>>,
    pub trials: usize,
    pub failure_bound: String,
}

impl From<&OracleVerdict> for OracleJson {
    fn from(v: &OracleVerdict) -> Self {
        OracleJson {
            verdict: match v.outcome {
                OracleOutcome::Frobenius => "Frobenius",
                OracleOutcome::ProbablyNotFrobenius => "ProbablyNotFrobenius",
            },
            witness: v.witness.as_ref().map(|w| {
                w.iter()
                    .map(|x| format_rational(&Rational::from_integer(x.clone())))
                    .collect()
            }),
            trials: v.trials,
            failure_bound: format_rational(&v.failure_bound),
        }
    }
}

/// Decision plus the oracle cross-check emitted by `frobenius --oracle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusReportJson {
    #[serde(flatten)]
    pub decision: DecisionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosemisimple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

/// `{"representatives": [..], "reduced_dim": int, "quotient_dim": int, "iso_ok": bool, "algebra_iso_ok": bool}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReportJson {
    pub representatives: Vec<usize>,
    pub reduced_dim: usize,
    pub quotient_dim: usize,
    pub iso_ok: bool,
    pub algebra_iso_ok: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobstruct_core::linalg::rat;

    #[test]
    fn preorder_json_round_trip() {
        let parsed = PreorderJson::parse(r#"{"n": 3, "pairs": [[0,1],[1,2]], "mode": "closure"}"#).unwrap();
        let p = parsed.build().unwrap();
        let emitted = PreorderJson::from_preorder(&p);
        assert!(emitted.pairs.contains(&[0, 2]) && emitted.pairs.contains(&[1, 1]));
        let text = serde_json::to_string(&emitted).unwrap();
        assert_eq!(PreorderJson::parse(&text).unwrap().build().unwrap(), p);
    }

    #[test]
    fn mode_defaults_to_verify() {
        let parsed = PreorderJson::parse(r#"{"n": 3, "pairs": [[0,1],[1,2]]}"#).unwrap();
        assert!(matches!(
            parsed.build(),
            Err(frobstruct_core::PreorderError::NotTransitive { x: 0, y: 1, z: 2 })
        ));
    }

    #[test]
    fn rationals() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(format_rational(&rat(2)), "2/1");
        for bad in ["1.5", "1/0", "x", ""] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn element_round_trip() {
        let c = IncCoalgebra::new(&Preorder::chain(3));
        let terms: Vec<TermJson> =
            serde_json::from_str(r#"[{"x":0,"y":2,"coef":"3/2"},{"x":1,"y":1,"coef":"-1"}]"#).unwrap();
        let e = elem_from_json(&c, &terms).unwrap();
        let back = elem_to_json(&c, &e);
        assert_eq!(elem_from_json(&c, &back).unwrap(), e);
        assert_eq!(
            back[0],
            TermJson {
                x: 0,
                y: 2,
                coef: "3/2".into()
            }
        );
        let bad: Vec<TermJson> = serde_json::from_str(r#"[{"x":2,"y":0,"coef":"1"}]"#).unwrap();
        assert!(matches!(
            elem_from_json(&c, &bad),
            Err(FormatError::NotABasisPair { x: 2, y: 0 })
        ));
    }

    #[test]
    fn decision_json_shape() {
        let p = Preorder::build(3, &[(0, 1), (1, 0)], BuildMode::Verify).unwrap();
        let d = DecisionJson::new(&frobstruct_core::frobenius_decide(&p), 5);
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"frobenius": true, "blocks": [[0,1],[2]], "counterexample": null, "dim": 5, "block_sizes": [1,2]})
        );
        let d = DecisionJson::new(&frobstruct_core::frobenius_decide(&Preorder::chain(2)), 3);
        assert_eq!(d.counterexample, Some([0, 1]));
        assert_eq!(d.blocks, None);
    }
}
