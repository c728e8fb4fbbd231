//! Isomorphism classes of irreducible modules and their display names.

use crate::error::Result;
use crate::field::Field;
use crate::poly::charpoly;
use crate::rep::{irreducibles_isomorphic, Representation};

/// Sort key for irreducibles: the characteristic polynomial of each basis
/// action, written out. Isomorphic modules share it.
pub fn fingerprint<F: Field>(rep: &Representation<F>) -> Vec<String> {
    let f = rep.field();
    rep.actions()
        .iter()
        .map(|a| {
            charpoly(a)
                .coeffs()
                .iter()
                .map(|c| f.display(c))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect()
}

/// An irreducible module together with a stable name.
#[derive(Clone, Debug)]
pub struct IsoClassLabel<F: Field> {
    pub name: String,
    pub representative: Representation<F>,
}

impl<F: Field> IsoClassLabel<F> {
    /// Equal iff both modules have the same dimension and a nonzero
    /// intertwiner; both are assumed irreducible.
    pub fn same_class(&self, other: &Self) -> Result<bool> {
        irreducibles_isomorphic(&self.representative, &other.representative)
    }
}

/// Registry handing out one name per isomorphism class.
#[derive(Clone, Debug)]
pub struct ClassRegistry<F: Field> {
    declared: Vec<(String, Representation<F>)>,
    classes: Vec<IsoClassLabel<F>>,
}

impl<F: Field> ClassRegistry<F> {
    /// `declared` modules lend their names to isomorphic classes.
    pub fn new(declared: Vec<(String, Representation<F>)>) -> Self {
        ClassRegistry {
            declared,
            classes: Vec::new(),
        }
    }

    pub fn classes(&self) -> &[IsoClassLabel<F>] {
        &self.classes
    }

    /// Index of the class of `rep`, registering it when new.
    pub fn classify(&mut self, rep: &Representation<F>) -> Result<usize> {
        for (i, c) in self.classes.iter().enumerate() {
            if irreducibles_isomorphic(rep, &c.representative)? {
                return Ok(i);
            }
        }
        let mut name = None;
        for (n, d) in &self.declared {
            if irreducibles_isomorphic(rep, d)? {
                name = Some(n.clone());
                break;
            }
        }
        let name = name.unwrap_or_else(|| {
            if rep.dim() == 1 && rep.is_trivial() {
                "F".to_string()
            } else {
                let k = self.classes.iter().filter(|c| c.representative.dim() == rep.dim()).count();
                format!("S{}.{}", rep.dim(), k)
            }
        });
        self.classes.push(IsoClassLabel {
            name,
            representative: rep.clone(),
        });
        Ok(self.classes.len() - 1)
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.classes[idx].name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::lie::{LieAlgebra, UpperTable};
    use crate::matrix::Mat;
    use std::sync::Arc;

    #[test]
    fn registry_names_and_dedup() {
        let f = Fp::new(5).unwrap();
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 1]);
        let l = Arc::new(LieAlgebra::new(&f, vec!["t".into(), "e".into()], t, None).unwrap());
        let w = |lam: i64| {
            Representation::new(l.clone(), 1, vec![Mat::from_i64(&f, &[&[lam]]), Mat::zeros(&f, 1, 1)]).unwrap()
        };
        let mut reg = ClassRegistry::new(vec![("F1".into(), w(1))]);
        assert_eq!(reg.classify(&w(0)).unwrap(), 0);
        assert_eq!(reg.classify(&w(1)).unwrap(), 1);
        assert_eq!(reg.classify(&w(2)).unwrap(), 2);
        assert_eq!(reg.classify(&w(1)).unwrap(), 1);
        assert_eq!(reg.name(0), "F");
        assert_eq!(reg.name(1), "F1");
        assert_eq!(reg.name(2), "S1.2");
        assert_eq!(fingerprint(&w(1)), fingerprint(&w(1)));
        assert_ne!(fingerprint(&w(1)), fingerprint(&w(2)));
    }
}
