//! Subspaces of `F^n` in canonical (reduced row-echelon) form.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;

/// A subspace stored by its reduced row-echelon basis. Two subspaces are
/// equal exactly when their echelon bases agree.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Mat<F>) -> Self {
        let mut r = m.clone();
        let pivots = r.rref_in_place();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Mat<F>) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn from_vectors(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        let m = Mat::from_rows(field, ambient, vectors).expect("vectors of ambient length");
        Self::row_space(&m)
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
    pub fn basis(&self) -> &Mat<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }
    pub fn vector(&self, i: usize) -> &[F::Elem] {
        self.basis.row(i)
    }

    /// Non-pivot coordinates; the unit vectors at these positions span a
    /// fixed complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the subspace: the result vanishes at every pivot.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let coef = out[c].clone();
            if !f.is_zero(&coef) {
                f.axpy(&mut out, &f.neg(&coef), self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|e| f.is_zero(e))
    }

    pub fn contains_space(&self, other: &Subspace<F>) -> bool {
        (0..other.dim()).all(|i| self.contains(other.vector(i)))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// Coordinates of `v` modulo the subspace, in the complement spanned by
    /// the unit vectors at [`Self::complement_indices`].
    pub fn quotient_coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|c| r[c].clone()).collect()
    }

    /// Vector with the given echelon coordinates.
    pub fn combination(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.basis.vec_mul(coords)
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Annihilator under the standard pairing, `{w : <v, w> = 0 for all v}`.
    pub fn orthogonal(&self) -> Subspace<F> {
        self.basis.kernel()
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        Ok(self.orthogonal().sum(&other.orthogonal())?.orthogonal())
    }

    /// Image of the subspace under a linear map given as a matrix acting on
    /// column vectors.
    pub fn image(&self, map: &Mat<F>) -> Subspace<F> {
        let vecs = (0..self.dim()).map(|i| map.mul_vec(self.vector(i))).collect();
        Subspace::from_vectors(self.field(), map.rows(), vecs)
    }

    /// Matrix of a linear map restricted to this (invariant) subspace, in
    /// echelon coordinates.
    pub fn restrict_map(&self, map: &Mat<F>) -> Result<Mat<F>> {
        let f = self.field();
        let mut cols = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let w = map.mul_vec(self.vector(i));
            cols.push(self.coordinates(&w).ok_or_else(|| {
                Error::Precondition("subspace is not invariant under the map".into())
            })?);
        }
        Ok(Mat::from_columns(f, self.dim(), &cols))
    }

    /// Matrix of the induced map on `F^n / self`, in quotient coordinates.
    pub fn quotient_map(&self, map: &Mat<F>) -> Mat<F> {
        let f = self.field();
        let comp = self.complement_indices();
        let cols: Vec<Vec<F::Elem>> = comp
            .iter()
            .map(|&c| self.quotient_coordinates(&map.column(c)))
            .collect();
        Mat::from_columns(f, comp.len(), &cols)
    }

    /// Preimage under the quotient map of a subspace of `F^n / self`.
    pub fn lift_from_quotient(&self, sub: &Subspace<F>) -> Subspace<F> {
        let f = self.field();
        let comp = self.complement_indices();
        let mut vecs = self.vectors();
        for v in sub.vectors() {
            let mut w = vec![f.zero(); self.ambient];
            for (k, &c) in comp.iter().enumerate() {
                w[c] = v[k].clone();
            }
            vecs.push(w);
        }
        Subspace::from_vectors(f, self.ambient, vecs)
    }
}

/// Coordinates on a quotient `sup / sub` of two nested subspaces, in a fixed
/// complement basis chosen greedily from the echelon basis of `sup`.
#[derive(Clone, Debug)]
pub struct RelativeQuotient<F: Field> {
    sub_dim: usize,
    complement: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    transform: Mat<F>,
}

impl<F: Field> RelativeQuotient<F> {
    pub fn new(sup: &Subspace<F>, sub: &Subspace<F>) -> Result<Self> {
        if !sup.contains_space(sub) {
            return Err(Error::Precondition("quotient of non-nested subspaces".into()));
        }
        let f = sup.field();
        let mut current = sub.clone();
        let mut complement = Vec::new();
        for v in sup.vectors() {
            if !current.contains(&v) {
                current = current.sum(&Subspace::from_vectors(f, sup.ambient_dim(), vec![v.clone()]))?;
                complement.push(v);
            }
        }
        let mut rows = sub.vectors();
        rows.extend(complement.iter().cloned());
        let k = rows.len();
        let stacked = Mat::from_rows(f, sup.ambient_dim(), rows)?;
        let mut aug = stacked.hstack(&Mat::identity(f, k));
        let all_pivots = aug.rref_in_place();
        let pivots: Vec<usize> = all_pivots.into_iter().take(k).collect();
        debug_assert!(pivots.iter().all(|&c| c < sup.ambient_dim()));
        let transform = Mat::from_fn(f, k, k, |i, j| aug.get(i, sup.ambient_dim() + j).clone());
        Ok(RelativeQuotient {
            sub_dim: sub.dim(),
            complement,
            pivots,
            transform,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn complement(&self) -> &[Vec<F::Elem>] {
        &self.complement
    }

    /// Coordinates of `v in sup` modulo `sub`.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let a: Vec<F::Elem> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let c = self.transform.vec_mul(&a);
        c[self.sub_dim..].to_vec()
    }
}

/// Semi-echelon basis grown one vector at a time. Each stored row has a
/// leading 1 at its pivot and zeros at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        Echelon {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&w[c]) {
                let coef = f.neg(&w[c]);
                f.axpy(&mut w, &coef, row);
            }
        }
        w
    }

    /// Adds `v` if it is new; returns the normalised reduced vector then.
    pub fn insert(&mut self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let mut w = self.reduce(v);
        let c = w.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&w[c]).unwrap();
        f.scale_in_place(&mut w, &inv);
        self.rows.push(w.clone());
        self.pivots.push(c);
        Some(w)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn to_subspace(&self) -> Subspace<F> {
        Subspace::from_vectors(&self.field, self.ambient, self.rows.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn intersection_in_gf2_cubed() {
        let f = Fp::new(2).unwrap();
        let u = Subspace::from_vectors(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let v = Subspace::from_vectors(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let expected = Subspace::from_vectors(&f, 3, vec![vec![0, 1, 0]]);
        assert_eq!(u.intersection(&v).unwrap(), expected);
        assert_eq!(u.intersection(&u).unwrap(), u);
        assert_eq!(u.sum(&Subspace::zero(&f, 3)).unwrap(), u);
        assert!(u.sum(&Subspace::zero(&f, 2)).is_err());
    }

    #[test]
    fn quotient_coordinates_fixed_complement() {
        let f = Fp::new(5).unwrap();
        let u = Subspace::from_vectors(&f, 3, vec![vec![1, 1, 0]]);
        assert_eq!(u.complement_indices(), vec![1, 2]);
        assert_eq!(u.quotient_coordinates(&[1, 1, 0]), vec![0, 0]);
        assert_eq!(u.quotient_coordinates(&[1, 0, 0]), vec![4, 0]);
    }

    #[test]
    fn relative_quotient_coordinates() {
        let f = Fp::new(3).unwrap();
        let sup = Subspace::from_vectors(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 1]]);
        let sub = Subspace::from_vectors(&f, 3, vec![vec![1, 1, 1]]);
        let q = RelativeQuotient::new(&sup, &sub).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coordinates(&[1, 1, 1]), vec![0]);
        let c = q.coordinates(&[1, 0, 0]);
        assert_ne!(c, vec![0]);
        // linear: (0,1,1) = (1,1,1) - (1,0,0)
        assert_eq!(q.coordinates(&[0, 1, 1]), vec![f.neg(&c[0])]);
    }
}
