//! Finite-dimensional modules given by action matrices.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::{LieAlgebra, Quotient};
use crate::matrix::Mat;
use crate::subspace::{Echelon, Subspace};

/// An `L`-module `V = F^dim` with `rho(e_i)` stored per basis element.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    algebra: Arc<LieAlgebra<F>>,
    dim: usize,
    action: Vec<Mat<F>>,
}

impl<F: Field> Representation<F> {
    /// Checks shapes and `rho([e_i,e_j]) = [rho(e_i), rho(e_j)]`.
    pub fn new(algebra: Arc<LieAlgebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "{} action matrices for a {}-dimensional algebra",
                action.len(),
                algebra.dim()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidRepresentation(format!("action matrices must be {dim}x{dim}")));
        }
        let rep = Representation { algebra, dim, action };
        for i in 0..rep.algebra.dim() {
            for j in i + 1..rep.algebra.dim() {
                let lhs = rep.act(rep.algebra.bracket_basis(i, j));
                if lhs != rep.action[i].commutator(&rep.action[j]) {
                    return Err(Error::InvalidRepresentation(format!(
                        "bracket relation fails for ({i},{j})"
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: Arc<LieAlgebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        Representation { algebra, dim, action }
    }

    pub fn trivial(algebra: &Arc<LieAlgebra<F>>, dim: usize) -> Self {
        let f = algebra.field();
        let action = vec![Mat::zeros(f, dim, dim); algebra.dim()];
        Self::new_unchecked(algebra.clone(), dim, action)
    }

    pub fn adjoint(algebra: &Arc<LieAlgebra<F>>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.ad_basis(i)).collect();
        Self::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Mat<F> {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Mat<F>] {
        &self.action
    }

    /// `rho(x)` for an arbitrary element `x`.
    pub fn act(&self, x: &[F::Elem]) -> Mat<F> {
        let f = self.field();
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (xi, a) in x.iter().zip(&self.action) {
            if !f.is_zero(xi) {
                m.add_scaled(xi, a);
            }
        }
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|m| m.is_zero())
    }

    /// `rho(e_i^[p]) = rho(e_i)^p` for every basis element; errors when the
    /// algebra carries no `[p]`-map or the identity fails.
    pub fn check_restricted(&self) -> Result<()> {
        let pm = self
            .algebra
            .pmap()
            .ok_or_else(|| Error::NotRestricted("algebra has no [p]-map".into()))?;
        let p = self.field().characteristic();
        for (i, a) in self.action.iter().enumerate() {
            if self.act(&pm[i]) != a.pow(p) {
                return Err(Error::NotRestricted(format!(
                    "rho({}^[p]) differs from rho({})^p",
                    self.algebra.labels()[i],
                    self.algebra.labels()[i]
                )));
            }
        }
        Ok(())
    }

    pub fn is_restricted(&self) -> bool {
        self.check_restricted().is_ok()
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        spin_under(self.field(), self.dim, &self.action, vectors).to_subspace()
    }

    pub fn is_submodule(&self, sub: &Subspace<F>) -> bool {
        self.action.iter().all(|a| sub.contains_space(&sub.image(a)))
    }

    /// The submodule on `sub`, in its echelon basis.
    pub fn submodule(&self, sub: &Subspace<F>) -> Result<Self> {
        let action = self.action.iter().map(|a| sub.restrict_map(a)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new_unchecked(self.algebra.clone(), sub.dim(), action))
    }

    /// `V / sub`, in coordinates on the complement indices of `sub`.
    pub fn quotient(&self, sub: &Subspace<F>) -> Result<Self> {
        if !self.is_submodule(sub) {
            return Err(Error::Precondition("quotient by a non-invariant subspace".into()));
        }
        let action = self.action.iter().map(|a| sub.quotient_map(a)).collect();
        Ok(Self::new_unchecked(self.algebra.clone(), self.dim - sub.dim(), action))
    }

    pub fn dual(&self) -> Self {
        let action = self.action.iter().map(|a| a.transpose().neg()).collect();
        Self::new_unchecked(self.algebra.clone(), self.dim, action)
    }

    /// `Hom_F(V1, V2)` with `(x.T) = rho2(x) T - T rho1(x)`; a map `T` is
    /// flattened row-major (`T[a][b]` at `a * dim V1 + b`).
    pub fn hom(r1: &Self, r2: &Self) -> Result<Self> {
        same_algebra(r1, r2)?;
        let f = r1.field();
        let (d1, d2) = (r1.dim, r2.dim);
        let n = d1 * d2;
        let action = r1
            .action
            .iter()
            .zip(&r2.action)
            .map(|(a1, a2)| {
                let mut m = Mat::zeros(f, n, n);
                for a in 0..d2 {
                    for b in 0..d1 {
                        let row = a * d1 + b;
                        for c in 0..d2 {
                            let v = a2.get(a, c);
                            if !f.is_zero(v) {
                                let cur = f.add(m.get(row, c * d1 + b), v);
                                m.set(row, c * d1 + b, cur);
                            }
                        }
                        for d in 0..d1 {
                            let v = a1.get(d, b);
                            if !f.is_zero(v) {
                                let cur = f.sub(m.get(row, a * d1 + d), v);
                                m.set(row, a * d1 + d, cur);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Self::new_unchecked(r1.algebra.clone(), n, action))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_algebra(self, other)?;
        let f = self.field();
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                Mat::from_fn(f, n, n, |i, j| match (i < self.dim, j < self.dim) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - self.dim, j - self.dim).clone(),
                    _ => f.zero(),
                })
            })
            .collect();
        Ok(Self::new_unchecked(self.algebra.clone(), n, action))
    }

    /// `V^L`, the common kernel of the action.
    pub fn invariants(&self) -> Subspace<F> {
        let f = self.field();
        let mut stacked = Mat::zeros(f, 0, self.dim);
        for a in &self.action {
            stacked = stacked.vstack(a);
        }
        stacked.kernel()
    }

    /// Kernel of the representation as an ideal of `L`.
    pub fn annihilator(&self) -> Subspace<F> {
        let f = self.field();
        let n = self.algebra.dim();
        // x annihilates iff sum_i x_i rho(e_i) = 0: columns are flattened matrices
        let cols: Vec<Vec<F::Elem>> = self.action.iter().map(|a| a.to_vec()).collect();
        Mat::from_columns(f, self.dim * self.dim, &cols).kernel_or_empty(n)
    }

    /// Restriction to a subalgebra given by its embedding: `embedding[k]`
    /// is the image in `L` of the `k`-th basis element of `sub`.
    pub fn restrict_along(&self, sub: &Arc<LieAlgebra<F>>, embedding: &[Vec<F::Elem>]) -> Result<Self> {
        if embedding.len() != sub.dim() {
            return Err(Error::DimensionMismatch("embedding length".into()));
        }
        let action = embedding.iter().map(|v| self.act(v)).collect();
        Self::new(sub.clone(), self.dim, action)
    }

    /// Restriction to the subalgebra spanned by `space`, in its echelon basis.
    pub fn restrict_to(&self, space: &Subspace<F>) -> Result<Self> {
        let sub = Arc::new(self.algebra.subalgebra(space)?);
        self.restrict_along(&sub, &space.vectors())
    }

    /// The module of `L/I` obtained when `I` acts trivially.
    pub fn descend(&self, quotient: &Quotient<F>) -> Result<Self> {
        for v in quotient.ideal.space().vectors() {
            if !self.act(&v).is_zero() {
                return Err(Error::Precondition("ideal does not act trivially".into()));
            }
        }
        let action = (0..quotient.algebra.dim())
            .map(|k| self.act(&quotient.section.column(k)))
            .collect();
        Ok(Self::new_unchecked(quotient.algebra.clone(), self.dim, action))
    }

    /// Pulls a module of `L/I` back to `L`.
    pub fn inflate(quotient: &Quotient<F>, rep: &Self, algebra: &Arc<LieAlgebra<F>>) -> Self {
        let action = (0..algebra.dim())
            .map(|j| rep.act(&quotient.projection.column(j)))
            .collect();
        Self::new_unchecked(algebra.clone(), rep.dim, action)
    }

    /// Same matrices viewed over another copy of the algebra.
    pub fn rebase(&self, algebra: &Arc<LieAlgebra<F>>) -> Result<Self> {
        Self::new(algebra.clone(), self.dim, self.action.clone())
    }
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra && self.action == other.action
    }
}

trait KernelOrEmpty<F: Field> {
    fn kernel_or_empty(&self, n: usize) -> Subspace<F>;
}

impl<F: Field> KernelOrEmpty<F> for Mat<F> {
    fn kernel_or_empty(&self, n: usize) -> Subspace<F> {
        if self.rows() == 0 {
            Subspace::full(self.field(), n)
        } else {
            self.kernel()
        }
    }
}

fn same_algebra<F: Field>(r1: &Representation<F>, r2: &Representation<F>) -> Result<()> {
    if Arc::ptr_eq(&r1.algebra, &r2.algebra) || *r1.algebra == *r2.algebra {
        Ok(())
    } else {
        Err(Error::InvalidRepresentation("modules over different algebras".into()))
    }
}

/// Spins `vectors` under the matrices `gens`, returning the echelon basis.
pub fn spin_under<F: Field>(field: &F, dim: usize, gens: &[Mat<F>], vectors: &[Vec<F::Elem>]) -> Echelon<F> {
    let mut ech = Echelon::new(field, dim);
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    for v in vectors {
        if let Some(w) = ech.insert(v) {
            queue.push(w);
        }
    }
    while let Some(v) = queue.pop() {
        if ech.dim() == dim {
            break;
        }
        for g in gens {
            if let Some(w) = ech.insert(&g.mul_vec(&v)) {
                queue.push(w);
            }
        }
    }
    ech
}

/// Basis of `{T : T rho1(x) = rho2(x) T}`; each `T` is `dim V2 x dim V1`.
pub fn intertwiners<F: Field>(r1: &Representation<F>, r2: &Representation<F>) -> Result<Vec<Mat<F>>> {
    same_algebra(r1, r2)?;
    let f = r1.field();
    let (d1, d2) = (r1.dim, r2.dim);
    let n = d1 * d2;
    if n == 0 {
        return Ok(Vec::new());
    }
    let var = |a: usize, c: usize| a * d1 + c;
    let mut rows = Vec::new();
    for (a1, a2) in r1.action.iter().zip(&r2.action) {
        for a in 0..d2 {
            for b in 0..d1 {
                // sum_c T[a][c] a1[c][b] - sum_c a2[a][c] T[c][b]
                let mut row = vec![f.zero(); n];
                for c in 0..d1 {
                    let v = a1.get(c, b);
                    if !f.is_zero(v) {
                        row[var(a, c)] = f.add(&row[var(a, c)], v);
                    }
                }
                for c in 0..d2 {
                    let v = a2.get(a, c);
                    if !f.is_zero(v) {
                        row[var(c, b)] = f.sub(&row[var(c, b)], v);
                    }
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(f, n)
    } else {
        Mat::from_rows(f, n, rows)?.kernel()
    };
    Ok(space
        .vectors()
        .into_iter()
        .map(|v| Mat::new(f.clone(), d2, d1, v).unwrap())
        .collect())
}

/// `dim_F End_L(V)`.
pub fn end_dim<F: Field>(r: &Representation<F>) -> Result<usize> {
    Ok(intertwiners(r, r)?.len())
}

/// Isomorphism test for irreducible modules: equal dimension and a
/// nonzero intertwiner.
pub fn irreducibles_isomorphic<F: Field>(r1: &Representation<F>, r2: &Representation<F>) -> Result<bool> {
    if r1.dim != r2.dim {
        return Ok(false);
    }
    Ok(!intertwiners(r1, r2)?.is_empty())
}

/// Searches for an invertible intertwiner `V1 -> V2` among random
/// combinations of an intertwiner basis. Works for arbitrary modules; a
/// `None` after the attempts is conclusive only when the basis is empty.
pub fn find_isomorphism<F: Field, R: Rng + ?Sized>(
    r1: &Representation<F>,
    r2: &Representation<F>,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<Mat<F>>> {
    if r1.dim != r2.dim {
        return Ok(None);
    }
    let f = r1.field();
    if r1.dim == 0 {
        return Ok(Some(Mat::zeros(f, 0, 0)));
    }
    let basis = intertwiners(r1, r2)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for b in &basis {
        if b.is_invertible() {
            return Ok(Some(b.clone()));
        }
    }
    for _ in 0..attempts {
        let mut t = Mat::zeros(f, r2.dim, r1.dim);
        for b in &basis {
            t.add_scaled(&f.random(rng), b);
        }
        if t.is_invertible() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
