//! JSON specifications of tori, involutions and Lie torus models.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, ShiftHom};
use crate::lie::LieTorus;
use crate::scalar::CycScalar;
use crate::torus::{alternative_isotope, jordan_isotope, opposite, Involution, InvolutionSpec, QMatrix, StructuredTorus};

fn default_order() -> u32 {
    2
}

/// A q-matrix entry: ±1 as a plain integer, or an explicit cyclotomic scalar.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QEntry {
    Sign(i64),
    Scalar(CycScalar),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusSpec {
    Laurent {
        n: usize,
        #[serde(default = "default_order")]
        m: u32,
    },
    Quantum {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        q: Vec<Vec<QEntry>>,
    },
    Octonion {
        #[serde(default)]
        extra_laurent: usize,
        #[serde(default = "default_order")]
        m: u32,
    },
    Spin {
        n: usize,
        #[serde(default = "default_order")]
        m: u32,
    },
    JordanPlus {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        q: Vec<Vec<QEntry>>,
    },
    JordanIsotope {
        base: Box<TorusSpec>,
        u: Vec<i64>,
    },
    AlternativeIsotope {
        base: Box<TorusSpec>,
        u1: Vec<i64>,
        u2: Vec<i64>,
    },
    Opposite {
        base: Box<TorusSpec>,
    },
    Perturbed {
        base: Box<TorusSpec>,
        left: Vec<i64>,
        right: Vec<i64>,
        value: QEntry,
    },
}

fn qmatrix(m: Option<u32>, n: Option<usize>, rows: &[Vec<QEntry>]) -> Result<QMatrix> {
    if let Some(n) = n {
        if rows.len() != n {
            return Err(Error::Validation(format!("q has {} rows, expected {n}", rows.len())));
        }
    }
    let signs: Option<Vec<Vec<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|e| if let QEntry::Sign(s) = e { Some(*s) } else { None }).collect())
        .collect();
    match signs {
        Some(s) => QMatrix::from_signs(m.unwrap_or(2), &s),
        None => {
            let order = m.or_else(|| rows.iter().flatten().find_map(|e| match e {
                QEntry::Scalar(c) => Some(c.order()),
                QEntry::Sign(_) => None,
            }));
            let order = order.unwrap_or(2);
            let scalars = rows.iter().map(|r| r.iter().map(|e| entry(order, e)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
            QMatrix::from_scalars(order, &scalars)
        }
    }
}

fn entry(m: u32, e: &QEntry) -> Result<CycScalar> {
    match e {
        QEntry::Sign(s) => Ok(CycScalar::from_int(m, *s)),
        QEntry::Scalar(c) if c.order() == m => Ok(c.clone()),
        QEntry::Scalar(c) => Err(Error::IncompatibleField(c.order(), m)),
    }
}

impl TorusSpec {
    pub fn build(&self) -> Result<Arc<StructuredTorus>> {
        match self {
            TorusSpec::Laurent { n, m } => Ok(StructuredTorus::laurent(*n, *m)),
            TorusSpec::Quantum { n, m, q } => Ok(StructuredTorus::quantum(qmatrix(*m, *n, q)?)),
            TorusSpec::Octonion { extra_laurent, m } => StructuredTorus::octonion(*extra_laurent, *m),
            TorusSpec::Spin { n, m } => StructuredTorus::spin(*n, *m),
            TorusSpec::JordanPlus { m, q } => Ok(StructuredTorus::jordan_plus(qmatrix(*m, None, q)?)),
            TorusSpec::JordanIsotope { base, u } => jordan_isotope(&base.build()?, &LatticeVec(u.clone())),
            TorusSpec::AlternativeIsotope { base, u1, u2 } => {
                alternative_isotope(&base.build()?, &LatticeVec(u1.clone()), &LatticeVec(u2.clone()))
            }
            TorusSpec::Opposite { base } => Ok(opposite(&base.build()?)),
            TorusSpec::Perturbed { base, left, right, value } => {
                let b = base.build()?;
                let n = b.rank();
                if left.len() != n || right.len() != n {
                    return Err(Error::Validation(format!("perturbed degrees must have rank {n}")));
                }
                let v = entry(b.order(), value)?;
                Ok(b.with_corrupted_constant(LatticeVec(left.clone()), LatticeVec(right.clone()), v))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Sl,
    Tkk,
    Ssp,
}

/// A shift given as "1,0;0,1" or as a list of base-root images.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShiftSpec {
    Text(String),
    Images(Vec<Vec<i64>>),
}

impl ShiftSpec {
    pub fn build(&self) -> Result<ShiftHom> {
        match self {
            ShiftSpec::Text(s) => ShiftHom::parse(s),
            ShiftSpec::Images(v) => Ok(ShiftHom::new(v.iter().cloned().map(LatticeVec).collect())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: ModelName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub coord: TorusSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftSpec>,
    /// Window on which TKK inner parts are compared.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<i64>,
}

impl ModelSpec {
    pub fn build(&self) -> Result<Arc<LieTorus>> {
        let a = self.coord.build()?;
        let need_r = || self.r.ok_or_else(|| Error::Validation(format!("{:?} model needs r", self.model)));
        let mut model = match self.model {
            ModelName::Sl => LieTorus::sl(need_r()?, &a)?,
            ModelName::Tkk => LieTorus::tkk(&a)?,
            ModelName::Ssp => {
                let e = match &self.involution {
                    Some(spec) => spec.e.clone(),
                    None => vec![1; a.rank()],
                };
                LieTorus::ssp(need_r()?, &Involution::new(&a, e)?)?
            }
        };
        if let Some(w) = self.probe {
            model = model.with_probe(w);
        }
        if let Some(s) = &self.shift {
            model = model.shift_isotope(&s.build()?)?;
        }
        Ok(model)
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_torus(text: &str) -> Result<Arc<StructuredTorus>> {
    parse_json::<TorusSpec>(text)?.build()
}

pub fn parse_model(text: &str) -> Result<Arc<LieTorus>> {
    parse_json::<ModelSpec>(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Flavor;

    #[test]
    fn torus_specs() {
        let a = parse_torus(r#"{"kind":"quantum","n":2,"m":2,"q":[[1,-1],[-1,1]]}"#).unwrap();
        assert_eq!(a.kind_name(), "quantum");
        assert_eq!(a.flavor(), Flavor::Associative);
        assert_eq!(parse_torus(r#"{"kind":"octonion","extra_laurent":1}"#).unwrap().rank(), 4);
        assert_eq!(parse_torus(r#"{"kind":"spin","n":3}"#).unwrap().flavor(), Flavor::Jordan);
        let iso = parse_torus(r#"{"kind":"jordan_isotope","base":{"kind":"spin","n":2},"u":[-1,0]}"#).unwrap();
        assert_eq!(iso.kind_name(), "jordan_isotope");
    }

    #[test]
    fn scalar_entries() {
        let a = parse_torus(r#"{"kind":"quantum","q":[[1,{"m":4,"coeffs":["0","1"]}],[{"m":4,"coeffs":["0","-1"]},1]]}"#).unwrap();
        assert_eq!(a.order(), 4);
    }

    #[test]
    fn malformed_is_a_parse_error() {
        assert!(matches!(parse_torus(r#"{"kind":"klein"}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_torus("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_model(r#"{"model":"sl","coord":{"kind":"laurent","n":1}}"#), Err(Error::Validation(_))));
    }

    #[test]
    fn model_specs() {
        let l = parse_model(r#"{"model":"sl","r":2,"coord":{"kind":"laurent","n":1},"shift":"1;0"}"#).unwrap();
        assert_eq!(l.shift().images, vec![LatticeVec::from([1]), LatticeVec::from([0])]);
        let s = parse_model(r#"{"model":"ssp","r":2,"coord":{"kind":"quantum","q":[[1,-1],[-1,1]]},"involution":{"e":[1,1]}}"#);
        assert!(s.is_ok());
        assert!(parse_model(r#"{"model":"tkk","coord":{"kind":"spin","n":2}}"#).is_ok());
    }
}
