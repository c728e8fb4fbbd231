//! Restricted Lie algebras: the `[p]`-map, restricted cohomology in degree
//! one, the restricted enveloping algebra `u(L)` and its irreducible
//! modules, Ext-quiver blocks and second Loewy layer multiplicities.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{self, CohomologyResult};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::LieAlgebra;
use crate::matrix::Mat;
use crate::meataxe;
use crate::rep::{end_dim, irreducibles_isomorphic, Representation};
use crate::subspace::Subspace;
use crate::Limits;

fn pmap_table<F: Field>(l: &LieAlgebra<F>) -> Result<&[Vec<F::Elem>]> {
    l.pmap()
        .ok_or_else(|| Error::Unsupported("a restricted Lie algebra ([p]-map present)".into()))
}

/// `s_1(x,y), ..., s_{p-1}(x,y)`, where `i s_i(x,y)` is the coefficient of
/// `tau^{i-1}` in `ad(tau x + y)^{p-1}(x)`.
pub fn jacobson_terms<F: Field>(l: &LieAlgebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let f = l.field();
    let p = f.characteristic() as usize;
    // poly[k] is the coefficient of tau^k
    let mut poly: Vec<Vec<F::Elem>> = vec![x.to_vec()];
    for _ in 0..p - 1 {
        let mut next = vec![l.zero_vector(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            let a = l.bracket(y, c);
            let b = l.bracket(x, c);
            for (t, v) in next[k].iter_mut().zip(&a) {
                *t = f.add(t, v);
            }
            for (t, v) in next[k + 1].iter_mut().zip(&b) {
                *t = f.add(t, v);
            }
        }
        poly = next;
    }
    (1..p)
        .map(|i| {
            let inv = f.inv(&f.from_i64(i as i64)).unwrap();
            poly[i - 1].iter().map(|c| f.mul(&inv, c)).collect()
        })
        .collect()
}

/// `sum_i s_i(x,y)`.
pub fn jacobson_sum<F: Field>(l: &LieAlgebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let f = l.field();
    let mut out = l.zero_vector();
    for s in jacobson_terms(l, x, y) {
        for (o, v) in out.iter_mut().zip(&s) {
            *o = f.add(o, v);
        }
    }
    out
}

/// `x^[p]`, extended from the basis by homogeneity and the Jacobson formula.
pub fn pmap_eval<F: Field>(l: &LieAlgebra<F>, x: &[F::Elem]) -> Vec<F::Elem> {
    let f = l.field();
    let pm = l.pmap().expect("restricted algebra");
    let p = f.characteristic();
    let mut acc = l.zero_vector();
    let mut acc_p = l.zero_vector();
    for (i, c) in x.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let mut y = l.zero_vector();
        y[i] = c.clone();
        let cp = f.pow(c, p);
        let y_p: Vec<F::Elem> = pm[i].iter().map(|v| f.mul(&cp, v)).collect();
        let s = jacobson_sum(l, &acc, &y);
        for k in 0..acc.len() {
            acc_p[k] = f.add(&f.add(&acc_p[k], &y_p[k]), &s[k]);
        }
        acc[i] = c.clone();
    }
    acc_p
}

fn violation(axiom: &'static str, detail: String) -> Error {
    Error::PMapViolation { axiom, detail }
}

/// Checks the `[p]`-map axioms: `ad(x^[p]) = ad(x)^p`, `p`-homogeneity, and
/// the Jacobson formula on all basis pairs (evaluated in both orders) and
/// on random pairs.
pub fn check_pmap_axioms<F: Field>(l: &LieAlgebra<F>) -> Result<()> {
    let f = l.field();
    let p = f.characteristic();
    let pm = pmap_table(l)?;
    let n = l.dim();
    for i in 0..n {
        if l.ad(&pm[i]) != l.ad_basis(i).pow(p) {
            return Err(violation("ad-compatibility", format!("basis element {}", l.labels()[i])));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (l.unit(i), l.unit(j));
            let a = jacobson_sum(l, &x, &y);
            let b = jacobson_sum(l, &y, &x);
            if a != b {
                return Err(violation(
                    "jacobson",
                    format!("s(x,y) != s(y,x) for ({}, {})", l.labels()[i], l.labels()[j]),
                ));
            }
            let sum: Vec<F::Elem> = (0..n).map(|k| f.add(&f.add(&pm[i][k], &pm[j][k]), &a[k])).collect();
            let xy: Vec<F::Elem> = (0..n).map(|k| f.add(&x[k], &y[k])).collect();
            if l.ad(&sum) != l.ad(&xy).pow(p) {
                return Err(violation(
                    "jacobson",
                    format!("ad((x+y)^[p]) != ad(x+y)^p for ({}, {})", l.labels()[i], l.labels()[j]),
                ));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let x: Vec<F::Elem> = (0..n).map(|_| f.random(&mut rng)).collect();
        let y: Vec<F::Elem> = (0..n).map(|_| f.random(&mut rng)).collect();
        let lam = f.random(&mut rng);
        let xp = pmap_eval(l, &x);
        let lx: Vec<F::Elem> = x.iter().map(|c| f.mul(&lam, c)).collect();
        let lp = f.pow(&lam, p);
        let expect: Vec<F::Elem> = xp.iter().map(|c| f.mul(&lp, c)).collect();
        if pmap_eval(l, &lx) != expect {
            return Err(violation("p-homogeneity", "(lambda x)^[p] != lambda^p x^[p] on a random pair".into()));
        }
        let xy: Vec<F::Elem> = x.iter().zip(&y).map(|(a, b)| f.add(a, b)).collect();
        let s = jacobson_sum(l, &x, &y);
        let yp = pmap_eval(l, &y);
        let rhs: Vec<F::Elem> = (0..n).map(|k| f.add(&f.add(&xp[k], &yp[k]), &s[k])).collect();
        if pmap_eval(l, &xy) != rhs {
            return Err(violation("jacobson", "additivity defect on a random pair".into()));
        }
        if l.ad(&xp) != l.ad(&x).pow(p) {
            return Err(violation("ad-compatibility", "random element".into()));
        }
    }
    Ok(())
}

/// Dimension of the image of `x -> x^[p]` in `L/[L,L]`.
pub fn p_image_mod_derived<F: Field>(l: &LieAlgebra<F>) -> Result<usize> {
    let pm = pmap_table(l)?;
    let derived = l.derived_algebra();
    let mut vecs = derived.vectors();
    vecs.extend(pm.iter().cloned());
    Ok(Subspace::from_vectors(l.field(), l.dim(), vecs).dim() - derived.dim())
}

/// Span of `{x^[p] : x in L}` by enumerating all of `L`; `None` above
/// `p^dim > 2^16`.
pub fn p_image_span<F: Field>(l: &LieAlgebra<F>) -> Result<Option<Subspace<F>>> {
    pmap_table(l)?;
    let f = l.field();
    let elems = f.elements().expect("finite field");
    let q = elems.len();
    let total = match q.checked_pow(l.dim() as u32) {
        Some(t) if t <= 1 << 16 => t,
        _ => return Ok(None),
    };
    let mut vecs = Vec::new();
    for idx in 0..total {
        let mut r = idx;
        let x: Vec<F::Elem> = (0..l.dim())
            .map(|_| {
                let c = elems[r % q].clone();
                r /= q;
                c
            })
            .collect();
        vecs.push(pmap_eval(l, &x));
    }
    Ok(Some(Subspace::from_vectors(f, l.dim(), vecs)))
}

/// `H^1_*(L, M)`: restricted derivations modulo inner derivations.
pub fn restricted_h1<F: Field>(rep: &Representation<F>) -> Result<CohomologyResult> {
    rep.check_restricted()?;
    let l = rep.algebra();
    let f = l.field();
    let p = f.characteristic();
    let pm = pmap_table(l)?;
    let (n, m) = (l.dim(), rep.dim());
    let cdim = n * m;
    if cdim == 0 {
        return Ok(CohomologyResult {
            degree: 1,
            dim_cocycles: 0,
            dim_coboundaries: 0,
            dim_f: 0,
            dim_over_d: None,
        });
    }
    // ordinary cocycle equations
    let d1 = cohomology::differential(rep, 1)?;
    let mut rows = d1.row_vecs();
    // d(e_i^[p]) - rho(e_i)^{p-1} d(e_i) = 0
    for i in 0..n {
        let rp = rep.action(i).pow(p - 1);
        for a in 0..m {
            let mut row = vec![f.zero(); cdim];
            for (k, c) in pm[i].iter().enumerate() {
                if !f.is_zero(c) {
                    row[k * m + a] = f.add(&row[k * m + a], c);
                }
            }
            for b in 0..m {
                let v = rp.get(a, b);
                if !f.is_zero(v) {
                    row[i * m + b] = f.sub(&row[i * m + b], v);
                }
            }
            rows.push(row);
        }
    }
    let z = Mat::from_rows(f, cdim, rows)?.kernel();
    let b = cohomology::coboundaries(rep, 1)?;
    if !z.contains_space(&b) {
        return Err(Error::Internal("inner derivation fails the restricted condition".into()));
    }
    Ok(CohomologyResult {
        degree: 1,
        dim_cocycles: z.dim(),
        dim_coboundaries: b.dim(),
        dim_f: z.dim() - b.dim(),
        dim_over_d: None,
    })
}

type Sparse<E> = Vec<(usize, E)>;

/// The restricted enveloping algebra `u(L)` on the PBW basis
/// `e_0^{a_0} ... e_{n-1}^{a_{n-1}}`, `0 <= a_i < p`; monomial `a` has index
/// `sum_i a_i p^i`.
#[derive(Clone, Debug)]
pub struct UAlg<F: Field> {
    algebra: Arc<LieAlgebra<F>>,
    p: usize,
    dim: usize,
    /// `left[i][m]`: `e_i` times monomial `m`, as sparse coordinates.
    left: Vec<Vec<Sparse<F::Elem>>>,
}

struct Straightener<'a, F: Field> {
    l: &'a LieAlgebra<F>,
    pm: &'a [Vec<F::Elem>],
    p: usize,
    n: usize,
    memo: HashMap<(usize, usize), Sparse<F::Elem>>,
}

impl<F: Field> Straightener<'_, F> {
    fn decode(&self, mut m: usize) -> Vec<usize> {
        (0..self.n)
            .map(|_| {
                let a = m % self.p;
                m /= self.p;
                a
            })
            .collect()
    }

    fn encode(&self, exps: &[usize]) -> usize {
        exps.iter().rev().fold(0, |acc, &a| acc * self.p + a)
    }

    fn add_into(&self, acc: &mut HashMap<usize, F::Elem>, c: &F::Elem, v: &Sparse<F::Elem>) {
        let f = self.l.field();
        for (m, x) in v {
            let e = acc.entry(*m).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(c, x));
        }
    }

    fn finish(&self, acc: HashMap<usize, F::Elem>) -> Sparse<F::Elem> {
        let f = self.l.field();
        let mut out: Sparse<F::Elem> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        out.sort_by_key(|(m, _)| *m);
        out
    }

    /// `x * m` for `x = sum_j x_j e_j`.
    fn times_element(&mut self, x: &[F::Elem], m: usize) -> Sparse<F::Elem> {
        let f = self.l.field().clone();
        let mut acc = HashMap::new();
        for (j, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                let r = self.mult(j, m);
                self.add_into(&mut acc, c, &r);
            }
        }
        self.finish(acc)
    }

    /// `e_i * m`.
    fn mult(&mut self, i: usize, m: usize) -> Sparse<F::Elem> {
        if let Some(r) = self.memo.get(&(i, m)) {
            return r.clone();
        }
        let f = self.l.field().clone();
        let mut exps = self.decode(m);
        let first = exps.iter().position(|&a| a > 0);
        let result = match first {
            Some(k) if i > k => {
                // e_i e_k m' = e_k (e_i m') + [e_i, e_k] m'
                exps[k] -= 1;
                let m1 = self.encode(&exps);
                let t = self.mult(i, m1);
                let mut acc = HashMap::new();
                for (mono, c) in &t {
                    let r = self.mult(k, *mono);
                    self.add_into(&mut acc, c, &r);
                }
                let br = self.l.bracket_basis(i, k).to_vec();
                let r = self.times_element(&br, m1);
                self.add_into(&mut acc, &f.one(), &r);
                self.finish(acc)
            }
            _ => {
                if exps[i] + 1 < self.p {
                    exps[i] += 1;
                    vec![(self.encode(&exps), f.one())]
                } else {
                    // e_i^p = e_i^[p]
                    exps[i] = 0;
                    let rest = self.encode(&exps);
                    let img = self.pm[i].clone();
                    self.times_element(&img, rest)
                }
            }
        };
        self.memo.insert((i, m), result.clone());
        result
    }
}

impl<F: Field> UAlg<F> {
    /// Builds `u(L)`; rejects `p^dim L` above `limits.max_u_dim`.
    pub fn new(algebra: &Arc<LieAlgebra<F>>, limits: &Limits) -> Result<Self> {
        let pm = pmap_table(algebra)?;
        let p = algebra.field().characteristic() as usize;
        let n = algebra.dim();
        let dim = p
            .checked_pow(n as u32)
            .filter(|&d| d <= limits.max_u_dim)
            .ok_or(Error::ScaleGuard {
                what: "dimension of u(L)",
                size: p.saturating_pow(n as u32),
                limit: limits.max_u_dim,
            })?;
        let mut st = Straightener {
            l: algebra,
            pm,
            p,
            n,
            memo: HashMap::new(),
        };
        let left = (0..n).map(|i| (0..dim).map(|m| st.mult(i, m)).collect()).collect();
        Ok(UAlg {
            algebra: algebra.clone(),
            p,
            dim,
            left,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<F>> {
        &self.algebra
    }

    pub fn exponents(&self, mut m: usize) -> Vec<usize> {
        (0..self.algebra.dim())
            .map(|_| {
                let a = m % self.p;
                m /= self.p;
                a
            })
            .collect()
    }

    fn field(&self) -> &F {
        self.algebra.field()
    }

    fn left_vec(&self, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim];
        for (m, c) in v.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, x) in &self.left[i][m] {
                out[*k] = f.add(&out[*k], &f.mul(c, x));
            }
        }
        out
    }

    /// `monomial(a) * v`, applying the generators of the PBW word right to left.
    fn monomial_times(&self, a: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let exps = self.exponents(a);
        let mut out = v.to_vec();
        for i in (0..exps.len()).rev() {
            for _ in 0..exps[i] {
                out = self.left_vec(i, &out);
            }
        }
        out
    }

    pub fn unit_vector(&self, m: usize) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim];
        v[m] = f.one();
        v
    }

    /// Product of two elements in PBW coordinates.
    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim];
        for (m, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                f.axpy(&mut out, c, &self.monomial_times(m, b));
            }
        }
        out
    }

    /// Checks `(ab)c = a(bc)` on random monomial triples and the defining
    /// relations of the left action on random vectors.
    pub fn spot_check<R: Rng + ?Sized>(&self, rng: &mut R, trials: usize) -> Result<()> {
        let f = self.field().clone();
        let l = &self.algebra;
        let p = f.characteristic();
        let pm = pmap_table(l)?;
        for _ in 0..trials {
            let (a, b, c) = (
                self.unit_vector(rng.gen_range(0..self.dim)),
                self.unit_vector(rng.gen_range(0..self.dim)),
                self.unit_vector(rng.gen_range(0..self.dim)),
            );
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                return Err(Error::Internal("u(L) multiplication is not associative".into()));
            }
            let v: Vec<F::Elem> = (0..self.dim).map(|_| f.random(rng)).collect();
            let i = rng.gen_range(0..l.dim());
            let j = rng.gen_range(0..l.dim());
            let lhs: Vec<F::Elem> = self
                .left_vec(i, &self.left_vec(j, &v))
                .iter()
                .zip(&self.left_vec(j, &self.left_vec(i, &v)))
                .map(|(x, y)| f.sub(x, y))
                .collect();
            if lhs != self.element_times(l.bracket_basis(i, j), &v) {
                return Err(Error::Internal("u(L) left action violates the bracket".into()));
            }
            let mut w = v.clone();
            for _ in 0..p {
                w = self.left_vec(i, &w);
            }
            if w != self.element_times(&pm[i], &v) {
                return Err(Error::Internal("u(L) left action violates x^p = x^[p]".into()));
            }
        }
        Ok(())
    }

    fn element_times(&self, x: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim];
        for (j, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                f.axpy(&mut out, c, &self.left_vec(j, v));
            }
        }
        out
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_matrix(&self, i: usize) -> Mat<F> {
        let f = self.field();
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (col, entries) in self.left[i].iter().enumerate() {
            for (row, c) in entries {
                m.set(*row, col, c.clone());
            }
        }
        m
    }

    /// `u(L)` as a left module over itself, viewed as an `L`-module.
    pub fn regular_module(&self, limits: &Limits) -> Result<Representation<F>> {
        if self.dim > limits.max_module_dim {
            return Err(Error::ScaleGuard {
                what: "regular module dimension",
                size: self.dim,
                limit: limits.max_module_dim,
            });
        }
        let action = (0..self.algebra.dim()).map(|i| self.left_matrix(i)).collect();
        Ok(Representation::new_unchecked(self.algebra.clone(), self.dim, action))
    }
}

/// Composition factors of the regular module grouped by isomorphism class.
#[derive(Clone, Debug)]
pub struct RegularDecomposition<F: Field> {
    pub u_dim: usize,
    /// Representatives with their multiplicity in the regular module.
    pub irreducibles: Vec<(Representation<F>, usize)>,
}

impl<F: Field> RegularDecomposition<F> {
    /// `sum dim(S) * mult(S)`.
    pub fn weighted_total(&self) -> usize {
        self.irreducibles.iter().map(|(s, k)| s.dim() * k).sum()
    }
}

/// Groups modules into isomorphism classes of irreducibles, keeping the
/// first representative of each class.
pub fn group_irreducibles<F: Field>(factors: &[Representation<F>]) -> Result<Vec<(Representation<F>, usize)>> {
    let mut classes: Vec<(Representation<F>, usize)> = Vec::new();
    for s in factors {
        let mut hit = None;
        for (idx, (t, _)) in classes.iter().enumerate() {
            if irreducibles_isomorphic(s, t)? {
                hit = Some(idx);
                break;
            }
        }
        match hit {
            Some(idx) => classes[idx].1 += 1,
            None => classes.push((s.clone(), 1)),
        }
    }
    Ok(classes)
}

/// All restricted irreducible modules, harvested from the regular module of
/// `u(L)`, ordered by dimension and then by their first weight data.
pub fn regular_decomposition<F: Field>(
    algebra: &Arc<LieAlgebra<F>>,
    seed: u64,
    limits: &Limits,
) -> Result<RegularDecomposition<F>> {
    let u = UAlg::new(algebra, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    u.spot_check(&mut rng, 4)?;
    let reg = u.regular_module(limits)?;
    let cs = meataxe::composition_series(&reg, &mut rng, limits.max_module_dim)?;
    let mut irreducibles = group_irreducibles(&cs.factors)?;
    irreducibles.sort_by_cached_key(|(s, _)| (s.dim(), crate::classes::fingerprint(s)));
    for (s, _) in &irreducibles {
        s.check_restricted()?;
    }
    Ok(RegularDecomposition {
        u_dim: u.dim(),
        irreducibles,
    })
}

pub fn restricted_irreducibles<F: Field>(
    algebra: &Arc<LieAlgebra<F>>,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<Representation<F>>> {
    Ok(regular_decomposition(algebra, seed, limits)?
        .irreducibles
        .into_iter()
        .map(|(s, _)| s)
        .collect())
}

/// `dim Ext^1_{u(L)}(S, T) = dim H^1_*(L, Hom(S, T))`.
pub fn ext1_dim<F: Field>(s: &Representation<F>, t: &Representation<F>) -> Result<usize> {
    let hom = Representation::hom(s, t)?;
    Ok(restricted_h1(&hom)?.dim_f)
}

/// Ext-quiver components of a list of irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    /// Each block lists indices into the irreducibles, ascending.
    pub components: Vec<Vec<usize>>,
    /// Block containing the trivial module, when it is in the list.
    pub principal: Option<usize>,
    /// `ext1[i][j] = dim Ext^1(S_i, S_j)`.
    pub ext1: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn block_of(&self, idx: usize) -> usize {
        self.components.iter().position(|c| c.contains(&idx)).expect("index in some block")
    }
}

pub fn blocks<F: Field>(irreducibles: &[Representation<F>]) -> Result<BlockPartition> {
    let k = irreducibles.len();
    let mut ext1 = vec![vec![0; k]; k];
    let mut uf = UnionFind::<usize>::new(k);
    for i in 0..k {
        for j in 0..k {
            ext1[i][j] = ext1_dim(&irreducibles[i], &irreducibles[j])?;
            if ext1[i][j] > 0 {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for (i, root) in labels.iter().enumerate() {
        let c = *root_of.entry(*root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[c].push(i);
    }
    let trivial = irreducibles.iter().position(|s| s.dim() == 1 && s.is_trivial());
    let principal = trivial.map(|t| components.iter().position(|c| c.contains(&t)).unwrap());
    Ok(BlockPartition {
        components,
        principal,
        ext1,
    })
}

/// Multiplicity of `S` in the second Loewy layer of the projective cover of
/// the trivial module: `dim H^1_*(L,S) / dim End_L(S)`.
pub fn second_loewy_multiplicity<F: Field>(s: &Representation<F>) -> Result<usize> {
    let h = restricted_h1(s)?.dim_f;
    let e = end_dim(s)?;
    if e == 0 || h % e != 0 {
        return Err(Error::Internal(format!(
            "dim H^1_* = {h} is not divisible by end_dim = {e}"
        )));
    }
    Ok(h / e)
}

/// `dim H^1_*(L/ann_L(S), S)`. The annihilator of a restricted module is
/// closed under the p-map, so the quotient stays restricted.
pub fn restricted_h1_mod_annihilator<F: Field>(s: &Representation<F>) -> Result<usize> {
    let alg = s.algebra();
    let ann = alg.ideal(s.annihilator())?;
    let quot = alg.quotient(&ann)?;
    if !quot.algebra.is_restricted() {
        return Err(Error::Internal("annihilator is not p-closed".into()));
    }
    Ok(restricted_h1(&s.descend(&quot)?)?.dim_f)
}

/// `dim H^1_*(L,S)` and `dim H^1(L,S)` for a nontrivial irreducible `S`;
/// the two agree.
pub fn six_term_consistency<F: Field>(s: &Representation<F>) -> Result<(usize, usize)> {
    Ok((restricted_h1(s)?.dim_f, cohomology::cohomology(s, 1)?.dim_f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::lie::UpperTable;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn two_dim(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 1]);
        Arc::new(LieAlgebra::new(f, names(&["t", "e"]), t, Some(vec![vec![1, 0], vec![0, 0]])).unwrap())
    }

    fn sl2(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 0, 1]);
        t.insert((0, 2), vec![f.from_i64(-2), 0, 0]);
        t.insert((1, 2), vec![0, 2, 0]);
        let pm = vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]];
        Arc::new(LieAlgebra::new(f, names(&["e", "f", "h"]), t, Some(pm)).unwrap())
    }

    fn weight(l: &Arc<LieAlgebra<Fp>>, lam: i64) -> Representation<Fp> {
        let f = l.field();
        Representation::new(l.clone(), 1, vec![Mat::from_i64(f, &[&[lam]]), Mat::zeros(f, 1, 1)]).unwrap()
    }

    #[test]
    fn pmap_examples() {
        let f = Fp::new(5).unwrap();
        let ab = LieAlgebra::abelian(&f, 2);
        assert!(check_pmap_axioms(&ab).is_ok());
        assert!(check_pmap_axioms(&two_dim(&f)).is_ok());
        assert!(check_pmap_axioms(&sl2(&f)).is_ok());
        // e^[p] = e fails ad-compatibility in {t, e}
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 1]);
        let bad = LieAlgebra::new(&f, names(&["t", "e"]), t, Some(vec![vec![1, 0], vec![0, 1]]));
        assert!(matches!(bad, Err(Error::PMapViolation { axiom: "ad-compatibility", .. })));
    }

    #[test]
    fn jacobson_for_p2_is_the_bracket() {
        let f = Fp::new(2).unwrap();
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 1]);
        let l = LieAlgebra::new(&f, names(&["t", "e"]), t, Some(vec![vec![1, 0], vec![0, 0]])).unwrap();
        assert_eq!(jacobson_sum(&l, &[1, 0], &[0, 1]), vec![0, 1]);
        assert_eq!(pmap_eval(&l, &[1, 1]), vec![1, 1]);
    }

    #[test]
    fn p_image_examples() {
        let f = Fp::new(5).unwrap();
        assert_eq!(p_image_mod_derived(&LieAlgebra::abelian(&f, 2)).unwrap(), 0);
        assert_eq!(p_image_mod_derived(&two_dim(&f)).unwrap(), 1);
        assert_eq!(p_image_mod_derived(&sl2(&f)).unwrap(), 0);
        let span = p_image_span(&two_dim(&f)).unwrap().unwrap();
        assert!(span.contains(&[1, 0]));
    }

    #[test]
    fn restricted_h1_examples() {
        let f = Fp::new(5).unwrap();
        let l = two_dim(&f);
        assert_eq!(restricted_h1(&weight(&l, 0)).unwrap().dim_f, 0);
        assert_eq!(restricted_h1(&weight(&l, 1)).unwrap().dim_f, 1);
        // brute force over candidate derivations d = (d(t), d(e)) in F^2
        for lam in 0..5 {
            for mu in 0..5 {
                let hom = Representation::hom(&weight(&l, lam), &weight(&l, mu)).unwrap();
                let expected = usize::from((mu - lam).rem_euclid(5) == 1);
                assert_eq!(ext1_dim(&weight(&l, lam), &weight(&l, mu)).unwrap(), expected);
                assert_eq!(brute_force_restricted_h1(&hom), expected);
            }
        }
    }

    /// Counts restricted derivations of a 1-dim module of `{t, e}` by
    /// enumeration and subtracts the inner ones.
    fn brute_force_restricted_h1(m: &Representation<Fp>) -> usize {
        let f = m.field();
        let lam = *m.action(0).get(0, 0);
        let mut count = 0;
        for dt in 0..5u32 {
            for de in 0..5u32 {
                // d([t,e]) = t.d(e) - e.d(t): d(e) = lam d(e)
                let cocycle = de == f.mul(&lam, &de);
                // d(t^[p]) = d(t) = lam^{p-1} d(t); d(e^[p]) = 0 = 0
                let restricted = dt == f.mul(&f.pow(&lam, 4), &dt);
                if cocycle && restricted {
                    count += 1;
                }
            }
        }
        let mut z = 0;
        while count > 1 {
            count /= 5;
            z += 1;
        }
        let b = usize::from(lam != 0);
        z - b
    }

    #[test]
    fn u_algebra_dimensions() {
        let f3 = Fp::new(3).unwrap();
        let x = Arc::new(LieAlgebra::abelian(&f3, 1));
        let u = UAlg::new(&x, &Limits::default()).unwrap();
        assert_eq!(u.dim(), 3);
        // F[x]/(x^3): x * x^2 = 0
        assert!(u.left_matrix(0).pow(3).is_zero());
        let f5 = Fp::new(5).unwrap();
        assert_eq!(UAlg::new(&two_dim(&f5), &Limits::default()).unwrap().dim(), 25);
        let u = UAlg::new(&sl2(&f5), &Limits::default()).unwrap();
        assert_eq!(u.dim(), 125);
        assert_eq!(u.left_matrix(0).rows(), 125);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        u.spot_check(&mut rng, 10).unwrap();
        let tiny = Limits {
            max_u_dim: 100,
            ..Limits::default()
        };
        assert!(matches!(UAlg::new(&sl2(&f5), &tiny), Err(Error::ScaleGuard { .. })));
    }

    #[test]
    fn irreducibles_of_two_dim() {
        let f = Fp::new(5).unwrap();
        let l = two_dim(&f);
        let dec = regular_decomposition(&l, 1, &Limits::default()).unwrap();
        assert_eq!(dec.irreducibles.len(), 5);
        assert_eq!(dec.weighted_total(), 25);
        for (s, mult) in &dec.irreducibles {
            assert_eq!((s.dim(), *mult), (1, 5));
            assert!(s.action(1).is_zero());
        }
        let irr: Vec<_> = dec.irreducibles.iter().map(|(s, _)| s.clone()).collect();
        let b = blocks(&irr).unwrap();
        assert_eq!(b.components.len(), 1);
        assert_eq!(b.principal, Some(0));
    }

    #[test]
    fn torus_has_p_blocks() {
        let f = Fp::new(5).unwrap();
        let l = Arc::new(LieAlgebra::new(&f, names(&["x"]), UpperTable::new(), Some(vec![vec![1]])).unwrap());
        let irr = restricted_irreducibles(&l, 0, &Limits::default()).unwrap();
        assert_eq!(irr.len(), 5);
        assert_eq!(blocks(&irr).unwrap().components.len(), 5);
        let x0 = Arc::new(LieAlgebra::abelian(&Fp::new(3).unwrap(), 1));
        let irr = restricted_irreducibles(&x0, 0, &Limits::default()).unwrap();
        assert_eq!(irr.len(), 1);
        assert_eq!(blocks(&irr).unwrap().components.len(), 1);
    }

    #[test]
    fn loewy_examples() {
        let f = Fp::new(5).unwrap();
        let l = two_dim(&f);
        assert_eq!(second_loewy_multiplicity(&weight(&l, 0)).unwrap(), 0);
        assert_eq!(second_loewy_multiplicity(&weight(&l, 1)).unwrap(), 1);
        assert_eq!(six_term_consistency(&weight(&l, 1)).unwrap(), (1, 1));
    }
}
