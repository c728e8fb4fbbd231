//! Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::subspace::Subspace;

/// A finite-dimensional Lie algebra with basis `e_0, ..., e_{n-1}` and
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`, optionally restricted.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    dim: usize,
    // full table, entry i * dim + j holds the coordinates of [e_i, e_j]
    table: Vec<Vec<F::Elem>>,
    pmap: Option<Vec<Vec<F::Elem>>>,
}

/// Brackets `[e_i, e_j]` for `i < j`; omitted pairs bracket to zero.
pub type UpperTable<E> = BTreeMap<(usize, usize), Vec<E>>;

impl<F: Field> LieAlgebra<F> {
    /// Builds and validates an algebra from its upper-triangular bracket
    /// table. The lower half is filled in by antisymmetry.
    pub fn new(
        field: &F,
        labels: Vec<String>,
        upper: UpperTable<F::Elem>,
        pmap: Option<Vec<Vec<F::Elem>>>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table = vec![vec![field.zero(); dim]; dim * dim];
        for ((i, j), v) in upper {
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket entry ({i},{j}) does not fit a {dim}-dimensional algebra"
                )));
            }
            if i >= j {
                if v.iter().all(|c| field.is_zero(c)) && i == j {
                    continue;
                }
                return Err(Error::AntisymmetryViolation(i, j));
            }
            table[j * dim + i] = v.iter().map(|c| field.neg(c)).collect();
            table[i * dim + j] = v;
        }
        Self::from_table(field, labels, table, pmap)
    }

    /// Builds and validates an algebra from a full `dim x dim` table.
    pub fn from_table(
        field: &F,
        labels: Vec<String>,
        table: Vec<Vec<F::Elem>>,
        pmap: Option<Vec<Vec<F::Elem>>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch("bracket table shape".into()));
        }
        for i in 0..dim {
            for j in i..dim {
                let a = &table[i * dim + j];
                let b = &table[j * dim + i];
                if a.iter().zip(b).any(|(x, y)| !field.is_zero(&field.add(x, y))) {
                    return Err(Error::AntisymmetryViolation(i, j));
                }
            }
        }
        if let Some(pm) = &pmap {
            if field.characteristic() == 0 {
                return Err(Error::Unsupported("a [p]-map needs prime characteristic".into()));
            }
            if pm.len() != dim || pm.iter().any(|v| v.len() != dim) {
                return Err(Error::DimensionMismatch("p-map table shape".into()));
            }
        }
        let alg = LieAlgebra {
            field: field.clone(),
            labels,
            dim,
            table,
            pmap,
        };
        alg.check_jacobi()?;
        if alg.pmap.is_some() {
            crate::restricted::check_pmap_axioms(&alg)?;
        }
        Ok(alg)
    }

    /// Lie algebra spanned by linearly independent square matrices, with
    /// the commutator bracket. In prime characteristic the matrix `p`-th
    /// power is used as `[p]`-map when every power stays in the span.
    pub fn from_matrices(field: &F, labels: Vec<String>, mats: &[Mat<F>]) -> Result<Self> {
        let n = mats.len();
        let cols: Vec<Vec<F::Elem>> = mats.iter().map(|m| m.to_vec()).collect();
        let len = cols.first().map_or(0, |c| c.len());
        let basis = Mat::from_columns(field, len, &cols);
        if basis.rank() != n {
            return Err(Error::Precondition("matrices are linearly dependent".into()));
        }
        let coords = |m: &Mat<F>| basis.solve(&m.to_vec()).ok().flatten();
        let mut upper = UpperTable::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = coords(&mats[i].commutator(&mats[j])).ok_or(Error::NotASubalgebra)?;
                upper.insert((i, j), c);
            }
        }
        let p = field.characteristic();
        let pmap = if p > 0 {
            mats.iter().map(|m| coords(&m.pow(p))).collect::<Option<Vec<_>>>()
        } else {
            None
        };
        Self::new(field, labels, upper, pmap)
    }

    pub fn abelian(field: &F, dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("x{i}")).collect();
        let pmap = (field.characteristic() > 0).then(|| vec![vec![field.zero(); dim]; dim]);
        Self::new(field, labels, UpperTable::new(), pmap).expect("abelian algebra is valid")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn pmap(&self) -> Option<&[Vec<F::Elem>]> {
        self.pmap.as_deref()
    }
    pub fn is_restricted(&self) -> bool {
        self.pmap.is_some()
    }

    /// Same algebra without its `[p]`-map.
    pub fn without_pmap(&self) -> Self {
        LieAlgebra {
            pmap: None,
            ..self.clone()
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) || i == j {
                    continue;
                }
                f.axpy(&mut out, &f.mul(xi, yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    /// Matrix of `ad(e_i)`.
    pub fn ad_basis(&self, i: usize) -> Mat<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.bracket_basis(i, j).to_vec()).collect();
        Mat::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of `ad(x)`.
    pub fn ad(&self, x: &[F::Elem]) -> Mat<F> {
        let mut m = Mat::zeros(&self.field, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !self.field.is_zero(xi) {
                m.add_scaled(xi, &self.ad_basis(i));
            }
        }
        m
    }

    fn check_jacobi(&self) -> Result<()> {
        let f = &self.field;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&self.unit(i), self.bracket_basis(j, k));
                    let b = self.bracket(&self.unit(j), self.bracket_basis(k, i));
                    let c = self.bracket(&self.unit(k), self.bracket_basis(i, j));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !f.is_zero(&f.add(&f.add(x, y), z))) {
                        return Err(Error::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| v.iter().all(|c| self.field.is_zero(c)))
    }

    /// `[U, V]` as a subspace.
    pub fn bracket_spaces(&self, u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
        let mut vecs = Vec::new();
        for a in u.vectors() {
            for b in v.vectors() {
                vecs.push(self.bracket(&a, &b));
            }
        }
        Subspace::from_vectors(&self.field, self.dim, vecs)
    }

    pub fn whole(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim)
    }

    pub fn derived_algebra(&self) -> Subspace<F> {
        let vecs = self.table.to_vec();
        Subspace::from_vectors(&self.field, self.dim, vecs)
    }

    pub fn center(&self) -> Subspace<F> {
        // x central iff ad(e_j) x = 0 for all j; stack the ad matrices
        let mut stacked = Mat::zeros(&self.field, 0, self.dim);
        for j in 0..self.dim {
            stacked = stacked.vstack(&self.ad_basis(j));
        }
        stacked.kernel()
    }

    pub fn is_subalgebra(&self, space: &Subspace<F>) -> bool {
        space.contains_space(&self.bracket_spaces(space, space))
    }

    pub fn ideal(&self, space: Subspace<F>) -> Result<Ideal<F>> {
        if space.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("ideal in wrong ambient space".into()));
        }
        if !space.contains_space(&self.bracket_spaces(&self.whole(), &space)) {
            return Err(Error::NotAnIdeal);
        }
        Ok(Ideal { space })
    }

    pub fn zero_ideal(&self) -> Ideal<F> {
        Ideal {
            space: Subspace::zero(&self.field, self.dim),
        }
    }

    pub fn whole_ideal(&self) -> Ideal<F> {
        Ideal { space: self.whole() }
    }

    pub fn series(&self) -> Series<F> {
        let mut derived = vec![self.whole()];
        loop {
            let last = derived.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if next.dim() == last.dim() {
                break;
            }
            derived.push(next);
        }
        let mut lower = vec![self.whole()];
        loop {
            let last = lower.last().unwrap();
            let next = self.bracket_spaces(&self.whole(), last);
            if next.dim() == last.dim() {
                break;
            }
            lower.push(next);
        }
        let is_solvable = derived.last().unwrap().is_zero();
        let is_nilpotent = lower.last().unwrap().is_zero();
        Series {
            derived,
            lower_central: lower,
            is_solvable,
            is_nilpotent,
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.series().is_solvable
    }

    /// Whether the subspace is closed under the `[p]`-map.
    pub fn is_p_closed(&self, space: &Subspace<F>) -> bool {
        match &self.pmap {
            None => false,
            Some(_) => space
                .vectors()
                .iter()
                .all(|v| space.contains(&crate::restricted::pmap_eval(self, v))),
        }
    }

    /// `L / I` with the complement basis `{e_c : c not a pivot of I}`.
    pub fn quotient(&self, ideal: &Ideal<F>) -> Result<Quotient<F>> {
        let space = &ideal.space;
        let comp = space.complement_indices();
        let q = comp.len();
        let mut upper = UpperTable::new();
        for a in 0..q {
            for b in a + 1..q {
                let v = space.quotient_coordinates(self.bracket_basis(comp[a], comp[b]));
                upper.insert((a, b), v);
            }
        }
        let pmap = if self.is_p_closed(space) {
            let pm = self.pmap.as_ref().unwrap();
            Some(comp.iter().map(|&c| space.quotient_coordinates(&pm[c])).collect())
        } else {
            None
        };
        let labels = comp.iter().map(|&c| self.labels[c].clone()).collect();
        let algebra = LieAlgebra::new(&self.field, labels, upper, pmap)?;
        let projection = Mat::from_columns(
            &self.field,
            q,
            &(0..self.dim).map(|j| space.quotient_coordinates(&self.unit(j))).collect::<Vec<_>>(),
        );
        let section = Mat::from_columns(
            &self.field,
            self.dim,
            &comp.iter().map(|&c| self.unit(c)).collect::<Vec<_>>(),
        );
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let lhs = projection.mul_vec(self.bracket_basis(a, b));
                let rhs = algebra.bracket(&projection.column(a), &projection.column(b));
                if lhs != rhs {
                    return Err(Error::Internal("projection is not a homomorphism".into()));
                }
            }
        }
        Ok(Quotient {
            algebra: Arc::new(algebra),
            ideal: ideal.clone(),
            projection,
            section,
        })
    }

    /// The subalgebra spanned by `space`, in its echelon basis.
    pub fn subalgebra(&self, space: &Subspace<F>) -> Result<LieAlgebra<F>> {
        if !self.is_subalgebra(space) {
            return Err(Error::NotASubalgebra);
        }
        let vecs = space.vectors();
        let k = vecs.len();
        let mut upper = UpperTable::new();
        for a in 0..k {
            for b in a + 1..k {
                let br = self.bracket(&vecs[a], &vecs[b]);
                upper.insert((a, b), space.coordinates(&br).expect("closed"));
            }
        }
        let pmap = if self.is_p_closed(space) {
            Some(
                vecs.iter()
                    .map(|v| space.coordinates(&crate::restricted::pmap_eval(self, v)).unwrap())
                    .collect(),
            )
        } else {
            None
        };
        let labels = space.pivots().iter().map(|&c| self.labels[c].clone()).collect();
        LieAlgebra::new(&self.field, labels, upper, pmap)
    }

    /// The algebra of derivations, with the inner derivations marked.
    pub fn derivation_algebra(&self) -> Result<Derivations<F>> {
        let f = &self.field;
        let n = self.dim;
        let var = |row: usize, col: usize| row * n + col;
        let mut eqs: Vec<Vec<F::Elem>> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for m in 0..n {
                    let mut row = vec![f.zero(); n * n];
                    for k in 0..n {
                        let c = &self.bracket_basis(i, j)[k];
                        row[var(m, k)] = f.add(&row[var(m, k)], c);
                        let c = &self.bracket_basis(k, j)[m];
                        row[var(k, i)] = f.sub(&row[var(k, i)], c);
                        let c = &self.bracket_basis(i, k)[m];
                        row[var(k, j)] = f.sub(&row[var(k, j)], c);
                    }
                    eqs.push(row);
                }
            }
        }
        let system = Mat::from_rows(f, n * n, eqs)?;
        let space = system.kernel();
        let mats: Vec<Mat<F>> = space
            .vectors()
            .into_iter()
            .map(|v| Mat::new(f.clone(), n, n, v).unwrap())
            .collect();
        let d = mats.len();
        let mut upper = UpperTable::new();
        for a in 0..d {
            for b in a + 1..d {
                let c = space
                    .coordinates(&mats[a].commutator(&mats[b]).to_vec())
                    .ok_or_else(|| Error::Internal("derivations not closed under commutator".into()))?;
                upper.insert((a, b), c);
            }
        }
        let p = f.characteristic();
        let pmap = if p > 0 {
            let pm = mats
                .iter()
                .map(|m| space.coordinates(&m.pow(p).to_vec()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Internal("p-th power of a derivation is not a derivation".into()))?;
            Some(pm)
        } else {
            None
        };
        let labels = (0..d).map(|a| format!("d{a}")).collect();
        let algebra = LieAlgebra::new(f, labels, upper, pmap)?;
        let inner_vecs = (0..n)
            .map(|i| {
                space
                    .coordinates(&self.ad_basis(i).to_vec())
                    .ok_or_else(|| Error::Internal("inner derivation missing".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let inner = Subspace::from_vectors(f, d, inner_vecs);
        Ok(Derivations {
            algebra: Arc::new(algebra),
            matrices: mats,
            inner,
        })
    }

    /// `L (+) K` with `L`'s basis first.
    pub fn direct_sum(&self, other: &LieAlgebra<F>) -> Result<LieAlgebra<F>> {
        let f = &self.field;
        let (n, m) = (self.dim, other.dim);
        let embed = |v: &[F::Elem], offset: usize| {
            let mut w = vec![f.zero(); n + m];
            for (k, c) in v.iter().enumerate() {
                w[offset + k] = c.clone();
            }
            w
        };
        let mut upper = UpperTable::new();
        for i in 0..n {
            for j in i + 1..n {
                upper.insert((i, j), embed(self.bracket_basis(i, j), 0));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                upper.insert((n + i, n + j), embed(other.bracket_basis(i, j), n));
            }
        }
        let pmap = match (&self.pmap, &other.pmap) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .map(|v| embed(v, 0))
                    .chain(b.iter().map(|v| embed(v, n)))
                    .collect(),
            ),
            _ => None,
        };
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        LieAlgebra::new(f, labels, upper, pmap)
    }

    /// `L |x V` for an `L`-module `V` regarded as an abelian Lie algebra.
    pub fn semidirect(
        algebra: &Arc<LieAlgebra<F>>,
        rep: &crate::rep::Representation<F>,
    ) -> Result<LieAlgebra<F>> {
        if !Arc::ptr_eq(rep.algebra(), algebra) && **rep.algebra() != **algebra {
            return Err(Error::InvalidRepresentation("module for a different algebra".into()));
        }
        let f = algebra.field();
        let (n, d) = (algebra.dim, rep.dim());
        let mut upper = UpperTable::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut w = algebra.bracket_basis(i, j).to_vec();
                w.extend(std::iter::repeat_n(f.zero(), d));
                upper.insert((i, j), w);
            }
            for k in 0..d {
                let mut w = vec![f.zero(); n];
                w.extend(rep.action(i).column(k));
                upper.insert((i, n + k), w);
            }
        }
        let pmap = match (&algebra.pmap, rep.is_restricted()) {
            (Some(pm), true) => {
                let mut rows: Vec<Vec<F::Elem>> = pm
                    .iter()
                    .map(|v| {
                        let mut w = v.clone();
                        w.extend(std::iter::repeat_n(f.zero(), d));
                        w
                    })
                    .collect();
                rows.extend(std::iter::repeat_n(vec![f.zero(); n + d], d));
                Some(rows)
            }
            _ => None,
        };
        let mut labels = algebra.labels.clone();
        labels.extend((0..d).map(|k| format!("v{k}")));
        LieAlgebra::new(f, labels, upper, pmap)
    }

    pub fn upper_table(&self) -> UpperTable<F::Elem> {
        let mut t = UpperTable::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if v.iter().any(|c| !self.field.is_zero(c)) {
                    t.insert((i, j), v.to_vec());
                }
            }
        }
        t
    }
}

/// An ideal of a Lie algebra, verified at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    space: Subspace<F>,
}

impl<F: Field> Ideal<F> {
    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Series<F: Field> {
    pub derived: Vec<Subspace<F>>,
    pub lower_central: Vec<Subspace<F>>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

/// `L / I` together with the projection `L -> L/I` and the section mapping
/// each quotient basis vector to its complement basis vector in `L`.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub algebra: Arc<LieAlgebra<F>>,
    pub ideal: Ideal<F>,
    pub projection: Mat<F>,
    pub section: Mat<F>,
}

#[derive(Clone, Debug)]
pub struct Derivations<F: Field> {
    pub algebra: Arc<LieAlgebra<F>>,
    /// Derivation matrices, one per basis element of `algebra`.
    pub matrices: Vec<Mat<F>>,
    /// Inner derivations `ad(L)`, in the coordinates of `algebra`.
    pub inner: Subspace<F>,
}
