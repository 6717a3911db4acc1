//! JSON encodings of operators and generator tables. Matrices are written
//! densely, row-major, with `[re, im]` pairs.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::areps::CanonicalModel;
use crate::azero::{Meta, Representation};
use crate::error::{Error, Result};
use crate::gens::GenTable;
use crate::kernel::{FactorSpec, SpaceShape, TruncatedOperator, DENSE_CAPACITY};
use crate::qrep::perm::display_letters;
use crate::qrep::{QRepresentation, ReducedWord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub shape: Vec<FactorSpec>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_operator(op: &TruncatedOperator) -> Result<Self> {
        op.shape().check_capacity(DENSE_CAPACITY)?;
        let d = op.to_dense()?;
        let entries = (0..d.nrows()).map(|r| (0..d.ncols()).map(|c| [d[(r, c)].re, d[(r, c)].im]).collect()).collect();
        Ok(Self { shape: op.shape().factors().to_vec(), entries })
    }

    pub fn to_operator(&self) -> Result<TruncatedOperator> {
        let shape = SpaceShape::new(self.shape.iter().map(|f| validate_factor(*f)).collect::<Result<_>>()?)?;
        shape.check_capacity(DENSE_CAPACITY)?;
        let d = shape.total_dim();
        if self.entries.len() != d || self.entries.iter().any(|row| row.len() != d) {
            return Err(Error::ShapeMismatch(format!("entries are not {d}×{d}")));
        }
        let m = nalgebra::DMatrix::from_fn(d, d, |r, c| Complex64::new(self.entries[r][c][0], self.entries[r][c][1]));
        TruncatedOperator::from_dense(shape, &m)
    }
}

fn validate_factor(f: FactorSpec) -> Result<FactorSpec> {
    match f.kind {
        crate::kernel::FactorKind::HalfLine => FactorSpec::half(f.dim),
        crate::kernel::FactorKind::Line => FactorSpec::line(f.dim),
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Common layout of generator-table files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: usize,
    pub q: Option<f64>,
    #[serde(default)]
    pub phases: Vec<[f64; 2]>,
    #[serde(default)]
    pub word: WordField,
    pub gens: BTreeMap<String, MatrixJson>,
}

/// Letters as a list, or written as `"s1s2s1"` (`"e"` for the empty word).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordField {
    Letters(Vec<usize>),
    Text(String),
}

impl Default for WordField {
    fn default() -> Self {
        WordField::Letters(Vec::new())
    }
}

impl WordField {
    pub fn letters(&self, n: usize) -> Result<Vec<usize>> {
        match self {
            WordField::Letters(v) => Ok(v.clone()),
            WordField::Text(t) => Ok(ReducedWord::parse(n, t)?.letters().to_vec()),
        }
    }
}

fn table_to_json(gens: &GenTable) -> Result<BTreeMap<String, MatrixJson>> {
    let m = gens.n() + 1;
    let mut out = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=m {
            out.insert(format!("{i},{j}"), MatrixJson::from_operator(gens.get(i, j))?);
        }
    }
    Ok(out)
}

fn table_from_json(n: usize, gens: &BTreeMap<String, MatrixJson>) -> Result<GenTable> {
    if n == 0 {
        return Err(Error::MalformedRepresentation("rank must be at least 1".into()));
    }
    let m = n + 1;
    for key in gens.keys() {
        let ok = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .is_some_and(|(i, j)| (1..=m).contains(&i) && (1..=m).contains(&j));
        if !ok {
            return Err(Error::MalformedRepresentation(format!("unexpected generator key {key:?}")));
        }
    }
    let first = gens.get("1,1").ok_or_else(|| Error::MalformedRepresentation("missing generator 1,1".into()))?;
    let shape = SpaceShape::new(first.shape.clone())?;
    GenTable::from_fn(n, shape, |i, j| {
        let key = format!("{i},{j}");
        gens.get(&key)
            .ok_or_else(|| Error::MalformedRepresentation(format!("missing generator {key}")))?
            .to_operator()
    })
}

pub fn rep_to_json(r: &Representation) -> Result<TableJson> {
    let (phases, word) = match &r.meta {
        Some(m) => (m.phases.iter().copied().map(pair).collect(), m.word.clone()),
        None => (Vec::new(), Vec::new()),
    };
    Ok(TableJson { n: r.n(), q: Some(0.0), phases, word: WordField::Letters(word), gens: table_to_json(&r.gens)? })
}

pub fn rep_from_json(t: &TableJson) -> Result<Representation> {
    let gens = table_from_json(t.n, &t.gens)?;
    let phases: Vec<Complex64> = t.phases.iter().copied().map(unpair).collect();
    let word = t.word.letters(t.n)?;
    if phases.is_empty() && word.is_empty() {
        return Ok(Representation::new(gens));
    }
    Ok(Representation { gens, meta: Some(Meta { phases, word }) })
}

pub fn qrep_to_json(r: &QRepresentation) -> Result<TableJson> {
    Ok(TableJson {
        n: r.n,
        q: r.q,
        phases: r.phases.iter().copied().map(pair).collect(),
        word: WordField::Letters(r.word.clone()),
        gens: table_to_json(&r.gens)?,
    })
}

pub fn qrep_from_json(t: &TableJson) -> Result<QRepresentation> {
    Ok(QRepresentation {
        n: t.n,
        q: t.q,
        phases: t.phases.iter().copied().map(unpair).collect(),
        word: t.word.letters(t.n)?,
        gens: table_from_json(t.n, &t.gens)?,
    })
}

/// Representation JSON plus `lambda`, `mu` and the word as text.
pub fn canonical_to_json(m: &CanonicalModel) -> Result<Value> {
    let mut v = serde_json::to_value(rep_to_json(&m.rep)?)?;
    let obj = v.as_object_mut().expect("table JSON is an object");
    obj.insert("lambda".into(), serde_json::to_value(pair(m.lambda))?);
    obj.insert("mu".into(), serde_json::to_value(pair(m.mu))?);
    obj.insert("word".into(), Value::String(display_letters(m.word.letters())));
    Ok(v)
}

pub fn read_rep(text: &str) -> Result<Representation> {
    rep_from_json(&serde_json::from_str::<TableJson>(text)?)
}

pub fn write_rep(r: &Representation) -> Result<String> {
    Ok(serde_json::to_string(&rep_to_json(r)?)?)
}

pub fn read_qrep(text: &str) -> Result<QRepresentation> {
    qrep_from_json(&serde_json::from_str::<TableJson>(text)?)
}

pub fn write_qrep(r: &QRepresentation) -> Result<String> {
    Ok(serde_json::to_string(&qrep_to_json(r)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::make_shift;

    #[test]
    fn matrix_layout() {
        let s = make_shift(2).unwrap();
        let j = serde_json::to_string(&MatrixJson::from_operator(&s).unwrap()).unwrap();
        assert_eq!(j, r#"{"shape":[{"kind":"half","dim":2}],"entries":[[[0.0,0.0],[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#);
        let back: MatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_operator().unwrap(), s);
    }

    #[test]
    fn bad_keys_are_rejected() {
        let r = Representation::trivial(1).unwrap();
        let mut t = rep_to_json(&r).unwrap();
        let m = t.gens.remove("2,2").unwrap();
        assert!(rep_from_json(&t).is_err());
        t.gens.insert("3,1".into(), m);
        assert!(rep_from_json(&t).is_err());
    }
}
