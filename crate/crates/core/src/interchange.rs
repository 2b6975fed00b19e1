//! JSON and text formats shared by the CLI and the browser demo.
//!
//! Coefficients are exact rational strings `"p/q"` (always written with a
//! denominator, read with or without one). Sets are written as decimal serial
//! strings.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordElement, SeedSpace};
use crate::error::{QsetError, Result};
use crate::grassmann::{normalize, Element, Rational};
use crate::hfs::Hfs;
use crate::palev::{ContractionSample, StructureTensor};
use crate::quantify::{FockOperator, OneBodyOperator};

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || QsetError::Invalid(format!("bad rational {text:?}"));
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn parse_serial(text: &str) -> Result<Hfs> {
    BigUint::from_str(text.trim())
        .map(|n| Hfs::from_serial(&n))
        .map_err(|_| QsetError::Invalid(format!("bad serial {text:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub monomial: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    /// Terms in descending monomial order, factors descending.
    pub fn from_element(a: &Element) -> Result<ElementJson> {
        let terms = a
            .terms()
            .rev()
            .map(|(m, c)| {
                let monomial = m
                    .factors()
                    .iter()
                    .map(|f| f.serial().map(|s| s.to_string()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(TermJson {
                    coef: format_rational(c),
                    monomial,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementJson { terms })
    }

    /// Factors may come in any order; each term is reordered with its sign.
    pub fn to_element(&self) -> Result<Element> {
        let mut out = Element::zero();
        for t in &self.terms {
            let factors = t
                .monomial
                .iter()
                .map(|s| parse_serial(s))
                .collect::<Result<Vec<_>>>()?;
            let (sign, m) = normalize(factors);
            if sign == 0 {
                continue;
            }
            let c = parse_rational(&t.coef)? * Rational::from_integer(BigInt::from(sign));
            out.add_term(m, c);
        }
        Ok(out)
    }
}

pub fn element_to_json(a: &Element) -> Result<String> {
    Ok(serde_json::to_string(&ElementJson::from_element(a)?).expect("serializable"))
}

pub fn element_from_json(text: &str) -> Result<Element> {
    serde_json::from_str::<ElementJson>(text)
        .map_err(|e| QsetError::Invalid(e.to_string()))?
        .to_element()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub basis: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_operator(h: &OneBodyOperator) -> Result<MatrixJson> {
        Ok(MatrixJson {
            basis: h
                .seed
                .labels()
                .iter()
                .map(|x| x.serial().map(|s| s.to_string()))
                .collect::<Result<_>>()?,
            rows: h
                .matrix
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        })
    }

    pub fn to_operator(&self) -> Result<OneBodyOperator> {
        let labels = self
            .basis
            .iter()
            .map(|s| parse_serial(s))
            .collect::<Result<Vec<_>>>()?;
        let seed = SeedSpace::new(labels)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        OneBodyOperator::new(seed, rows)
    }
}

pub fn operator_from_json(text: &str) -> Result<OneBodyOperator> {
    serde_json::from_str::<MatrixJson>(text)
        .map_err(|e| QsetError::Invalid(e.to_string()))?
        .to_operator()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockJson {
    pub basis: Vec<String>,
    /// `[row, col, "p/q"]`, row-major.
    pub entries: Vec<(usize, usize, String)>,
}

impl FockJson {
    /// Basis monomials as canonical brace text.
    pub fn from_operator(op: &FockOperator) -> FockJson {
        let mut entries: Vec<_> = op
            .triplets()
            .map(|(r, c, v)| (r, c, format_rational(v)))
            .collect();
        entries.sort();
        FockJson {
            basis: op.basis().monomials().iter().map(|m| m.to_string()).collect(),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordTermJson {
    pub coef: String,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordJson {
    pub dim: usize,
    pub terms: Vec<CliffordTermJson>,
}

impl CliffordJson {
    pub fn from_element(a: &CliffordElement) -> CliffordJson {
        CliffordJson {
            dim: a.dim(),
            terms: a
                .to_index_terms()
                .into_iter()
                .map(|(c, generators)| CliffordTermJson {
                    coef: format_rational(&c),
                    generators,
                })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<CliffordElement> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((parse_rational(&t.coef)?, t.generators.clone())))
            .collect::<Result<Vec<_>>>()?;
        CliffordElement::from_index_terms(self.dim, &terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub dim: usize,
    pub basis: Vec<(usize, usize)>,
    /// `[i, j, k, "p/q"]`, 0-based over `basis`.
    pub entries: Vec<(usize, usize, usize, String)>,
}

impl StructureJson {
    pub fn from_tensor(t: &StructureTensor) -> StructureJson {
        StructureJson {
            dim: t.dim,
            basis: t.pairs.clone(),
            entries: t
                .entries()
                .map(|(i, j, k, c)| (i, j, k, format_rational(c)))
                .collect(),
        }
    }
}

/// One `i j k p/q` line per nonzero structure constant.
pub fn structure_triplets_text(t: &StructureTensor) -> String {
    let mut out = String::new();
    for (i, j, k, c) in t.entries() {
        writeln!(out, "{i}\t{j}\t{k}\t{}", format_rational(c)).unwrap();
    }
    out
}

pub fn contraction_csv(samples: &[ContractionSample]) -> String {
    let mut out = String::from("j,k,residual\n");
    for s in samples {
        writeln!(out, "{},{},{}", s.j, s.k, format_residual(s.residual)).unwrap();
    }
    out
}

/// Twelve decimal places with trailing zeros dropped.
pub fn format_residual(r: f64) -> String {
    let text = format!("{r:.12}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text.is_empty() || text == "-" {
        "0".to_string()
    } else {
        text.to_string()
    }
}

/// `serial<TAB>rank<TAB>set` for serials `0..=max_serial`.
pub fn render_table(max_serial: u64) -> String {
    let mut out = String::new();
    for n in 0..=max_serial {
        let x = Hfs::from_serial_u64(n);
        writeln!(out, "{n}\t{}\t{x}", x.rank()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_element;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3.into()));
        assert_eq!(
            parse_rational("-2/4").unwrap(),
            Rational::new((-1).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&Rational::from_integer(5.into())), "5/1");
    }

    #[test]
    fn element_json_shape() {
        let a = parse_element("1/2*{1} + {{1},1}", 5).unwrap();
        let text = element_to_json(&a).unwrap();
        assert_eq!(
            text,
            r#"{"terms":[{"coef":"1/1","monomial":["1","0"]},{"coef":"1/2","monomial":["0"]}]}"#
        );
        assert_eq!(element_from_json(&text).unwrap(), a);
    }

    #[test]
    fn element_json_reorders_factors() {
        let text = r#"{"terms":[{"coef":"1","monomial":["0","1"]}]}"#;
        let a = element_from_json(text).unwrap();
        assert_eq!(a, -&Element::basis(3));
        let text = r#"{"terms":[{"coef":"1","monomial":["0","0"]}]}"#;
        assert!(element_from_json(text).unwrap().is_zero());
    }

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"basis":["0","1"],"rows":[["1","0"],["1/2","-1"]]}"#;
        let h = operator_from_json(text).unwrap();
        assert_eq!(h.dim(), 2);
        let back = MatrixJson::from_operator(&h).unwrap();
        assert_eq!(back.rows[1], vec!["1/2", "-1/1"]);
        assert!(operator_from_json(r#"{"basis":["0"],"rows":[["1","2"]]}"#).is_err());
    }

    #[test]
    fn clifford_round_trip() {
        let a = CliffordElement::word(2, &[3, 1]).unwrap();
        let j = CliffordJson::from_element(&a);
        assert_eq!(j.to_element().unwrap(), a);
    }

    #[test]
    fn residual_text() {
        assert_eq!(format_residual(0.5000000000000004), "0.5");
        assert_eq!(format_residual(0.24999999999999978), "0.25");
        assert_eq!(format_residual(0.0), "0");
        assert_eq!(format_residual(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn table_lines() {
        let t = render_table(3);
        assert_eq!(t, "0\t0\t1\n1\t1\t{1}\n2\t2\t{{1}}\n3\t2\t{{1},1}\n");
    }
}
