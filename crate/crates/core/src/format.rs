//! The JSON algebra file: structure constants, optional p-map, declared
//! modules, an optional declared chief chain and induction seeds.
//!
//! Scalars are integers `0..p` over GF(p) and strings `"a/b"` over Q.
//! Bracket keys are `"i,j"` with `i < j`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rationals};
use crate::induction::CodimOne;
use crate::lie::{LieAlgebra, UpperTable};
use crate::matrix::Mat;
use crate::rep::Representation;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub name: String,
    pub dim: usize,
    /// One matrix per basis element, each a list of rows.
    pub action: Vec<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InductionFile {
    /// Spanning vectors of the codimension one ideal.
    pub ideal: Vec<Vec<Value>>,
    /// Module of the ideal, acting through the echelon basis of `ideal`.
    pub module: ModuleFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: String,
    /// 0 for Q.
    pub characteristic: u64,
    pub dim: usize,
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: BTreeMap<String, Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleFile>,
    /// Proper nonzero terms `L_1 < ... < L_{n-1}`, each as spanning vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<Vec<Value>>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub induction: Vec<InductionFile>,
}

/// An ideal of codimension one with a module on it, kept as raw matrices
/// until the ideal's algebra is built.
#[derive(Clone, Debug)]
pub struct InductionSeed<F: Field> {
    pub name: String,
    pub ideal: Subspace<F>,
    pub action: Vec<Mat<F>>,
    pub dim: usize,
}

impl<F: Field> InductionSeed<F> {
    pub fn build(&self, algebra: &Arc<LieAlgebra<F>>) -> Result<(CodimOne<F>, Representation<F>)> {
        let setup = CodimOne::new(algebra, &algebra.ideal(self.ideal.clone())?)?;
        let s = Representation::new(setup.sub.clone(), self.dim, self.action.clone())?;
        Ok((setup, s))
    }
}

/// A validated algebra with its declared extras.
#[derive(Clone, Debug)]
pub struct AlgebraSpec<F: Field> {
    pub name: String,
    pub algebra: Arc<LieAlgebra<F>>,
    pub modules: Vec<(String, Representation<F>)>,
    pub chain: Option<Vec<Subspace<F>>>,
    pub induction: Vec<InductionSeed<F>>,
}

#[derive(Clone, Debug)]
pub enum AnySpec {
    Modular(AlgebraSpec<Fp>),
    Rational(AlgebraSpec<Rationals>),
}

impl AnySpec {
    pub fn name(&self) -> &str {
        match self {
            AnySpec::Modular(s) => &s.name,
            AnySpec::Rational(s) => &s.name,
        }
    }

    pub fn to_file(&self) -> AlgebraFile {
        match self {
            AnySpec::Modular(s) => s.to_file(),
            AnySpec::Rational(s) => s.to_file(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }
}

/// Line and column (1-based) of the first occurrence of `"key"`.
fn locate(text: &str, key: &str) -> Option<(usize, usize)> {
    let needle = format!("\"{key}\"");
    let off = text.find(&needle)?;
    let before = &text[..off];
    let line = before.matches('\n').count() + 1;
    let column = off - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, column))
}

fn at(text: &str, key: &str, e: Error) -> Error {
    let path = match locate(text, key) {
        Some((l, c)) => format!("{key} (line {l}, column {c})"),
        None => key.to_string(),
    };
    e.at(path)
}

pub fn parse(text: &str) -> Result<AnySpec> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if file.characteristic == 0 {
        Ok(AnySpec::Rational(build(&Rationals, &file, text)?))
    } else {
        let f = Fp::new(file.characteristic).map_err(|e| at(text, "characteristic", e))?;
        Ok(AnySpec::Modular(build(&f, &file, text)?))
    }
}

pub fn load(path: &Path) -> Result<AnySpec> {
    parse(&std::fs::read_to_string(path)?)
}

fn vector<F: Field>(f: &F, n: usize, v: &[Value]) -> Result<Vec<F::Elem>> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("vector of length {}, expected {n}", v.len())));
    }
    v.iter().map(|x| f.parse_json(x)).collect()
}

fn matrix<F: Field>(f: &F, n: usize, rows: &[Vec<Value>]) -> Result<Mat<F>> {
    if rows.len() != n {
        return Err(Error::DimensionMismatch(format!("{} rows, expected {n}", rows.len())));
    }
    let rows = rows.iter().map(|r| vector(f, n, r)).collect::<Result<Vec<_>>>()?;
    Mat::from_rows(f, n, rows)
}

fn actions<F: Field>(f: &F, m: &ModuleFile, count: usize) -> Result<Vec<Mat<F>>> {
    if m.action.len() != count {
        return Err(Error::DimensionMismatch(format!(
            "module {} has {} matrices, expected {count}",
            m.name,
            m.action.len()
        )));
    }
    m.action.iter().map(|a| matrix(f, m.dim, a)).collect()
}

fn build<F: Field>(f: &F, file: &AlgebraFile, text: &str) -> Result<AlgebraSpec<F>> {
    let n = file.dim;
    if file.labels.len() != n {
        return Err(at(
            text,
            "labels",
            Error::DimensionMismatch(format!("{} labels for dimension {n}", file.labels.len())),
        ));
    }
    let mut upper = UpperTable::new();
    for (key, v) in &file.brackets {
        let parsed = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
        let Some((i, j)) = parsed else {
            return Err(at(text, key, Error::Scalar(format!("bad bracket key \"{key}\""))));
        };
        if i >= j || j >= n {
            return Err(at(text, key, Error::Precondition(format!("bracket key \"{key}\" needs i < j < {n}"))));
        }
        upper.insert((i, j), vector(f, n, v).map_err(|e| at(text, key, e))?);
    }
    let pmap = match &file.pmap {
        None => None,
        Some(rows) => {
            if rows.len() != n {
                return Err(at(text, "pmap", Error::DimensionMismatch(format!("{} p-map images", rows.len()))));
            }
            Some(rows.iter().map(|r| vector(f, n, r)).collect::<Result<Vec<_>>>().map_err(|e| at(text, "pmap", e))?)
        }
    };
    let key = if pmap.is_some() { "pmap" } else { "brackets" };
    let algebra = Arc::new(
        LieAlgebra::new(f, file.labels.clone(), upper, pmap).map_err(|e| match e {
            Error::PMapViolation { .. } => at(text, key, e),
            other => at(text, "brackets", other),
        })?,
    );
    let mut modules = Vec::new();
    for m in &file.modules {
        let rep = actions(f, m, n)
            .and_then(|a| Representation::new(algebra.clone(), m.dim, a))
            .and_then(|r| {
                if algebra.is_restricted() {
                    r.check_restricted()?;
                }
                Ok(r)
            })
            .map_err(|e| at(text, &m.name, e))?;
        modules.push((m.name.clone(), rep));
    }
    let chain = match &file.chain {
        None => None,
        Some(terms) => Some(
            terms
                .iter()
                .map(|t| {
                    let vecs = t.iter().map(|v| vector(f, n, v)).collect::<Result<Vec<_>>>()?;
                    Ok(Subspace::from_vectors(f, n, vecs))
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| at(text, "chain", e))?,
        ),
    };
    let mut induction = Vec::new();
    for (k, seed) in file.induction.iter().enumerate() {
        let built = (|| {
            let vecs = seed.ideal.iter().map(|v| vector(f, n, v)).collect::<Result<Vec<_>>>()?;
            let ideal = Subspace::from_vectors(f, n, vecs);
            let action = actions(f, &seed.module, ideal.dim())?;
            let s = InductionSeed {
                name: seed.module.name.clone(),
                ideal,
                action,
                dim: seed.module.dim,
            };
            s.build(&algebra)?;
            Ok(s)
        })()
        .map_err(|e: Error| at(text, "induction", e.at(format!("induction[{k}]"))))?;
        induction.push(built);
    }
    Ok(AlgebraSpec {
        name: file.name.clone(),
        algebra,
        modules,
        chain,
        induction,
    })
}

fn json_vec<F: Field>(f: &F, v: &[F::Elem]) -> Vec<Value> {
    v.iter().map(|x| f.to_json(x)).collect()
}

fn json_mat<F: Field>(m: &Mat<F>) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| json_vec(m.field(), m.row(i))).collect()
}

impl<F: Field> AlgebraSpec<F> {
    pub fn to_file(&self) -> AlgebraFile {
        let l = &self.algebra;
        let f = l.field();
        let brackets = l
            .upper_table()
            .into_iter()
            .map(|((i, j), v)| (format!("{i},{j}"), json_vec(f, &v)))
            .collect();
        let module_file = |name: &str, dim: usize, action: &[Mat<F>]| ModuleFile {
            name: name.to_string(),
            dim,
            action: action.iter().map(json_mat).collect(),
        };
        AlgebraFile {
            name: self.name.clone(),
            characteristic: f.characteristic(),
            dim: l.dim(),
            labels: l.labels().to_vec(),
            brackets,
            pmap: l.pmap().map(|p| p.iter().map(|v| json_vec(f, v)).collect()),
            modules: self
                .modules
                .iter()
                .map(|(name, r)| module_file(name, r.dim(), r.actions()))
                .collect(),
            chain: self.chain.as_ref().map(|c| {
                c.iter()
                    .map(|s| s.vectors().iter().map(|v| json_vec(f, v)).collect())
                    .collect()
            }),
            induction: self
                .induction
                .iter()
                .map(|s| InductionFile {
                    ideal: s.ideal.vectors().iter().map(|v| json_vec(f, v)).collect(),
                    module: module_file(&s.name, s.dim, &s.action),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L2: &str = r#"{
  "name": "l2",
  "characteristic": 5,
  "dim": 2,
  "labels": ["t", "e"],
  "brackets": {"0,1": [0, 1]},
  "pmap": [[1, 0], [0, 0]],
  "modules": [{"name": "F1", "dim": 1, "action": [[[1]], [[0]]]}],
  "induction": [{"ideal": [[0, 1]], "module": {"name": "F", "dim": 1, "action": [[[0]]]}}]
}"#;

    #[test]
    fn round_trip() {
        let AnySpec::Modular(s) = parse(L2).unwrap() else { panic!() };
        assert_eq!(s.algebra.dim(), 2);
        assert_eq!(s.modules.len(), 1);
        let again = parse(&s.to_json()).unwrap();
        assert_eq!(again.to_file(), s.to_file());
    }

    #[test]
    fn syntax_error_position() {
        let err = parse("{\n  \"dim\": 2,\n  oops\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn jacobi_violation_is_located() {
        let text = r#"{"characteristic": 5, "dim": 3, "labels": ["a","b","c"],
            "brackets": {"0,1": [1,0,0], "0,2": [0,1,0]}}"#;
        match parse(text).unwrap_err() {
            Error::Spec { path, source } => {
                assert!(path.starts_with("brackets (line 2"));
                assert!(matches!(*source, Error::JacobiViolation(0, 1, 2)));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn rational_scalars() {
        let text = r#"{"characteristic": 0, "dim": 2, "labels": ["h","e"],
            "brackets": {"0,1": ["0", "2"]},
            "modules": [{"name": "F_1/2", "dim": 1, "action": [[["1/2"]], [["0"]]]}],
            "chain": [[["0", "1"]]]}"#;
        let AnySpec::Rational(s) = parse(text).unwrap() else { panic!() };
        assert_eq!(s.chain.as_ref().unwrap()[0].dim(), 1);
        assert_eq!(s.to_file().modules[0].action[0][0][0], Value::from("1/2"));
    }

    #[test]
    fn bad_module_rejected() {
        let text = r#"{"characteristic": 5, "dim": 2, "labels": ["t","e"],
            "brackets": {"0,1": [0, 1]},
            "modules": [{"name": "bad", "dim": 1, "action": [[[1]], [[1]]]}]}"#;
        assert!(matches!(parse(text).unwrap_err(), Error::Spec { .. }));
    }
}
