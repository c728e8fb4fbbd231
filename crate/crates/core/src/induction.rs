//! Truncated induction and coinduction from an ideal of codimension one in
//! a restricted Lie algebra.
//!
//! With `L = Ft + I`, the induced module `u(L) (x)_{u(I)} S` has basis
//! `t^v (x) s_k` for `0 <= v < p`, stored at index `v * dim S + k`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::{Ideal, LieAlgebra};
use crate::matrix::Mat;
use crate::meataxe;
use crate::rep::{find_isomorphism, irreducibles_isomorphic, Representation};
use crate::restricted::pmap_eval;
use crate::Limits;

/// `L = Ft (+) I` with `t` the unit vector outside the pivots of `I`.
#[derive(Clone, Debug)]
pub struct CodimOne<F: Field> {
    pub ambient: Arc<LieAlgebra<F>>,
    pub ideal: Ideal<F>,
    /// `I` in the echelon basis of its subspace.
    pub sub: Arc<LieAlgebra<F>>,
    pub embedding: Vec<Vec<F::Elem>>,
    pub t: Vec<F::Elem>,
    /// `t^[p] = a t + z` with `z` in `I`, as `(a, coordinates of z)`.
    pub t_power: (F::Elem, Vec<F::Elem>),
}

impl<F: Field> CodimOne<F> {
    pub fn new(ambient: &Arc<LieAlgebra<F>>, ideal: &Ideal<F>) -> Result<Self> {
        let f = ambient.field();
        if f.characteristic() == 0 || !ambient.is_restricted() {
            return Err(Error::Precondition("truncated induction needs a restricted algebra".into()));
        }
        let space = ideal.space();
        let comp = space.complement_indices();
        if comp.len() != 1 {
            return Err(Error::Precondition(format!("ideal has codimension {}, expected 1", comp.len())));
        }
        if !ambient.is_p_closed(space) {
            return Err(Error::Precondition("ideal is not closed under the p-map".into()));
        }
        let sub = Arc::new(ambient.subalgebra(space)?);
        let t = ambient.unit(comp[0]);
        let tp = pmap_eval(ambient, &t);
        let a = space.quotient_coordinates(&tp)[0].clone();
        let mut z = tp;
        f.axpy(&mut z, &f.neg(&a), &t);
        let z = space
            .coordinates(&z)
            .ok_or_else(|| Error::Internal("t^[p] - a t outside the ideal".into()))?;
        Ok(CodimOne {
            ambient: ambient.clone(),
            ideal: ideal.clone(),
            sub,
            embedding: space.vectors(),
            t,
            t_power: (a, z),
        })
    }

    fn field(&self) -> &F {
        self.ambient.field()
    }

    fn p(&self) -> usize {
        self.field().characteristic() as usize
    }

    /// Coordinates in `I` of `D^k(y)` for `k < p`, where `D = ad(t)` scaled
    /// by `sign`.
    fn iterated(&self, y: &[F::Elem], sign: &F::Elem) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let space = self.ideal.space();
        let mut out = Vec::with_capacity(self.p());
        let mut cur = y.to_vec();
        for _ in 0..self.p() {
            out.push(space.coordinates(&cur).expect("ideal is stable under ad t"));
            cur = self.ambient.bracket(&self.t, &cur);
            f.scale_in_place(&mut cur, sign);
        }
        out
    }

    /// Writes `x` in `L` as `c t + y` with `y` in `I`.
    fn split(&self, x: &[F::Elem]) -> (F::Elem, Vec<F::Elem>) {
        let f = self.field();
        let c = self.ideal.space().quotient_coordinates(x)[0].clone();
        let mut y = x.to_vec();
        f.axpy(&mut y, &f.neg(&c), &self.t);
        (c, y)
    }

    fn check_seed(&self, s: &Representation<F>) -> Result<()> {
        if **s.algebra() != *self.sub {
            return Err(Error::InvalidRepresentation("seed module is not over the ideal".into()));
        }
        s.check_restricted()
    }

    /// Action matrices of the basis of `L` built from the action of `t` and
    /// the action of `y` in `I` on a module of dimension `p * d`.
    fn assemble(
        &self,
        d: usize,
        t_action: &Mat<F>,
        ideal_action: impl Fn(&[F::Elem]) -> Mat<F>,
    ) -> Result<Representation<F>> {
        let action = (0..self.ambient.dim())
            .map(|i| {
                let (c, y) = self.split(&self.ambient.unit(i));
                let mut m = ideal_action(&y);
                m.add_scaled(&c, t_action);
                m
            })
            .collect();
        let rep = Representation::new(self.ambient.clone(), self.p() * d, action)?;
        rep.check_restricted()?;
        Ok(rep)
    }
}

fn binomials<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
    let mut row = vec![f.one()];
    for k in 1..=n {
        let prev = row[k - 1].clone();
        row.push(f.div(&f.mul(&prev, &f.from_i64((n - k + 1) as i64)), &f.from_i64(k as i64)).expect("k < p"));
    }
    row
}

fn set_block<F: Field>(m: &mut Mat<F>, d: usize, bi: usize, bj: usize, block: &Mat<F>) {
    for r in 0..d {
        for c in 0..d {
            m.set(bi * d + r, bj * d + c, block.get(r, c).clone());
        }
    }
}

fn add_block<F: Field>(m: &mut Mat<F>, d: usize, bi: usize, bj: usize, coeff: &F::Elem, block: &Mat<F>) {
    let f = m.field().clone();
    for r in 0..d {
        for c in 0..d {
            let v = f.add(m.get(bi * d + r, bj * d + c), &f.mul(coeff, block.get(r, c)));
            m.set(bi * d + r, bj * d + c, v);
        }
    }
}

fn block<F: Field>(m: &Mat<F>, d: usize, bi: usize, bj: usize) -> Mat<F> {
    Mat::from_fn(m.field(), d, d, |r, c| m.get(bi * d + r, bj * d + c).clone())
}

#[derive(Clone, Debug)]
pub struct InducedModule<F: Field> {
    pub setup: CodimOne<F>,
    pub seed_module: Representation<F>,
    pub module: Representation<F>,
}

/// `u(L) (x)_{u(I)} S`. For `y` in `I`,
/// `y (t^v (x) s) = sum_k C(v,k) t^(v-k) (x) D^k(y) s` with `D(y) = [y,t]`,
/// and `t^p` is replaced by `t^[p]`.
pub fn truncated_induced<F: Field>(setup: &CodimOne<F>, s: &Representation<F>) -> Result<InducedModule<F>> {
    setup.check_seed(s)?;
    let f = setup.field();
    let (p, d) = (setup.p(), s.dim());
    let (a, z) = &setup.t_power;
    let mut t_action = Mat::zeros(f, p * d, p * d);
    let id = Mat::identity(f, d);
    for v in 0..p - 1 {
        set_block(&mut t_action, d, v + 1, v, &id);
    }
    add_block(&mut t_action, d, 1, p - 1, a, &id);
    add_block(&mut t_action, d, 0, p - 1, &f.one(), &s.act(z));
    let minus = f.neg(&f.one());
    let ideal_action = |y: &[F::Elem]| {
        let iter = setup.iterated(y, &minus);
        let mut m = Mat::zeros(f, p * d, p * d);
        for v in 0..p {
            let binom = binomials(f, v);
            for (k, c) in binom.iter().enumerate() {
                add_block(&mut m, d, v - k, v, c, &s.act(&iter[k]));
            }
        }
        m
    };
    let module = setup.assemble(d, &t_action, ideal_action)?;
    Ok(InducedModule {
        setup: setup.clone(),
        seed_module: s.clone(),
        module,
    })
}

/// `Hom_{u(I)}(u(L), S)`, a map `f` recorded by the values `f(t^v)`.
/// `(x f)(u) = f(u x)`, so `f(t^v y) = sum_k C(v,k) (ad t)^k(y) f(t^(v-k))`.
pub fn truncated_coinduced<F: Field>(setup: &CodimOne<F>, s: &Representation<F>) -> Result<Representation<F>> {
    setup.check_seed(s)?;
    let f = setup.field();
    let (p, d) = (setup.p(), s.dim());
    let (a, z) = &setup.t_power;
    let mut t_action = Mat::zeros(f, p * d, p * d);
    let id = Mat::identity(f, d);
    for v in 0..p - 1 {
        set_block(&mut t_action, d, v, v + 1, &id);
    }
    add_block(&mut t_action, d, p - 1, 1, a, &id);
    add_block(&mut t_action, d, p - 1, 0, &f.one(), &s.act(z));
    let plus = f.one();
    let ideal_action = |y: &[F::Elem]| {
        let iter = setup.iterated(y, &plus);
        let mut m = Mat::zeros(f, p * d, p * d);
        for v in 0..p {
            let binom = binomials(f, v);
            for (k, c) in binom.iter().enumerate() {
                add_block(&mut m, d, v, v - k, c, &s.act(&iter[k]));
            }
        }
        m
    };
    setup.assemble(d, &t_action, ideal_action)
}

/// The coinduced module realized as the dual of the induced module of `S*`.
pub fn coinduced_via_dual<F: Field>(setup: &CodimOne<F>, s: &Representation<F>) -> Result<Representation<F>> {
    Ok(truncated_induced(setup, &s.dual())?.module.dual())
}

/// Outcome of the filtration checks on an induced module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    /// `F^n` is `I`-stable, one entry per `n`.
    pub stable: Vec<bool>,
    /// `gr^n` is isomorphic to `S` as an `I`-module.
    pub graded_isomorphic: Vec<bool>,
    /// `t : gr^n -> gr^(n+1)` is a bijective `I`-intertwiner.
    pub t_steps: Vec<bool>,
    /// Every `I`-composition factor is isomorphic to `S`; absent over
    /// infinite fields.
    pub composition_factors: Option<Vec<bool>>,
}

impl FiltrationReport {
    pub fn passes(&self) -> bool {
        self.stable.iter().all(|&b| b)
            && self.graded_isomorphic.iter().all(|&b| b)
            && self.t_steps.iter().all(|&b| b)
            && self.composition_factors.as_ref().is_none_or(|v| v.iter().all(|&b| b))
    }
}

/// The module restricted to `I`.
pub fn restrict_to_ideal<F: Field>(setup: &CodimOne<F>, m: &Representation<F>) -> Result<Representation<F>> {
    m.restrict_along(&setup.sub, &setup.embedding)
}

/// `I`-composition factors of `m`, each compared with `s`.
pub fn factors_match_seed<F: Field>(
    setup: &CodimOne<F>,
    m: &Representation<F>,
    s: &Representation<F>,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<bool>> {
    let res = restrict_to_ideal(setup, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = meataxe::composition_series(&res, &mut rng, limits.max_module_dim)?;
    cs.factors.iter().map(|x| irreducibles_isomorphic(x, s)).collect()
}

pub fn filtration_factor_check<F: Field>(m: &InducedModule<F>, seed: u64, limits: &Limits) -> Result<FiltrationReport> {
    let setup = &m.setup;
    let f = setup.field();
    let s = &m.seed_module;
    let (p, d) = (setup.p(), s.dim());
    let res = restrict_to_ideal(setup, &m.module)?;
    let mut stable = Vec::with_capacity(p);
    for n in 0..p {
        let ok = res
            .actions()
            .iter()
            .all(|a| (0..p).all(|bi| (0..=n).all(|bj| bi <= n || block(a, d, bi, bj).is_zero())));
        stable.push(ok);
    }
    let graded: Vec<Representation<F>> = (0..p)
        .map(|n| {
            let action = res.actions().iter().map(|a| block(a, d, n, n)).collect();
            Representation::new(setup.sub.clone(), d, action)
        })
        .collect::<Result<_>>()?;
    let mut graded_isomorphic = Vec::with_capacity(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in &graded {
        graded_isomorphic.push(find_isomorphism(g, s, &mut rng, 64)?.is_some());
    }
    let t_act = m.module.act(&setup.t);
    let mut t_steps = Vec::with_capacity(p - 1);
    for n in 0..p - 1 {
        let tm = block(&t_act, d, n + 1, n);
        let intertwines = (0..setup.sub.dim())
            .all(|i| tm.mul(graded[n].action(i)) == graded[n + 1].action(i).mul(&tm));
        t_steps.push(intertwines && tm.is_invertible());
    }
    let composition_factors = if f.order().is_some() {
        Some(factors_match_seed(setup, &m.module, s, seed, limits)?)
    } else {
        None
    };
    Ok(FiltrationReport {
        stable,
        graded_isomorphic,
        t_steps,
        composition_factors,
    })
}

/// Both sides of `dim H^1(L, coind S) = dim H^1(I,S) + dim (L/I) (x) S^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapiroReport {
    pub h1_coinduced: usize,
    pub h1_ideal: usize,
    pub invariants: usize,
    /// The direct and the dual constructions are isomorphic.
    pub constructions_agree: bool,
}

impl ShapiroReport {
    pub fn rhs(&self) -> usize {
        self.h1_ideal + self.invariants
    }

    pub fn holds(&self) -> bool {
        self.constructions_agree && self.h1_coinduced == self.rhs()
    }
}

pub fn shapiro_check<F: Field>(setup: &CodimOne<F>, s: &Representation<F>, seed: u64) -> Result<ShapiroReport> {
    let direct = truncated_coinduced(setup, s)?;
    let dual = coinduced_via_dual(setup, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let constructions_agree = find_isomorphism(&direct, &dual, &mut rng, 64)?.is_some();
    Ok(ShapiroReport {
        h1_coinduced: cohomology::h1_dim(&dual)?,
        h1_ideal: cohomology::h1_dim(s)?,
        invariants: s.invariants().dim(),
        constructions_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::lie::UpperTable;
    use crate::subspace::Subspace;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn two_dim(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 1]);
        Arc::new(LieAlgebra::new(f, names(&["t", "e"]), t, Some(vec![vec![1, 0], vec![0, 0]])).unwrap())
    }

    fn l2xu(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 1, 0]);
        let pm = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]];
        Arc::new(LieAlgebra::new(f, names(&["t", "e", "u"]), t, Some(pm)).unwrap())
    }

    fn heisenberg(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 0, 1]);
        Arc::new(LieAlgebra::new(f, names(&["x", "y", "z"]), t, Some(vec![vec![0; 3]; 3])).unwrap())
    }

    fn setup(l: &Arc<LieAlgebra<Fp>>, vecs: Vec<Vec<u32>>) -> CodimOne<Fp> {
        let f = *l.field();
        let sp = Subspace::from_vectors(&f, l.dim(), vecs);
        CodimOne::new(l, &l.ideal(sp).unwrap()).unwrap()
    }

    #[test]
    fn two_dim_trivial_seed() {
        let f = Fp::new(5).unwrap();
        let l = two_dim(&f);
        let su = setup(&l, vec![vec![0, 1]]);
        let s = Representation::trivial(&su.sub, 1);
        let m = truncated_induced(&su, &s).unwrap();
        assert_eq!(m.module.dim(), 5);
        let rep = filtration_factor_check(&m, 0, &Limits::default()).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.composition_factors.unwrap().len(), 5);
        let sh = shapiro_check(&su, &s, 0).unwrap();
        assert_eq!((sh.h1_ideal, sh.invariants, sh.h1_coinduced), (1, 1, 2));
        assert!(sh.holds());
    }

    #[test]
    fn central_extension_seed_f1() {
        let f = Fp::new(5).unwrap();
        let l = l2xu(&f);
        let su = setup(&l, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let f1 = Representation::new(su.sub.clone(), 1, vec![Mat::from_i64(&f, &[&[1]]), Mat::zeros(&f, 1, 1)]).unwrap();
        let m = truncated_induced(&su, &f1).unwrap();
        let rep = filtration_factor_check(&m, 1, &Limits::default()).unwrap();
        assert!(rep.passes());
        let sh = shapiro_check(&su, &f1, 0).unwrap();
        assert_eq!((sh.h1_ideal, sh.invariants, sh.h1_coinduced), (1, 0, 1));
        assert!(sh.holds());
    }

    #[test]
    fn heisenberg_seed_dimensions() {
        let f = Fp::new(3).unwrap();
        let h = heisenberg(&f);
        let su = setup(&h, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let s = Representation::trivial(&su.sub, 1);
        let sh = shapiro_check(&su, &s, 0).unwrap();
        assert_eq!(sh.rhs(), 3);
        assert!(sh.holds());
        let s2 = Representation::trivial(&su.sub, 2);
        assert_eq!(truncated_induced(&su, &s2).unwrap().module.dim(), 6);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = Fp::new(3).unwrap();
        let h = heisenberg(&f);
        let z = h.ideal(h.center()).unwrap();
        assert!(matches!(CodimOne::new(&h, &z), Err(Error::Precondition(_))));
        let f5 = Fp::new(5).unwrap();
        let l = two_dim(&f5);
        let su = setup(&l, vec![vec![0, 1]]);
        // e acting by a nonzero nilpotent-free scalar is not restricted for e^[p] = 0
        let bad = Representation::new(su.sub.clone(), 1, vec![Mat::from_i64(&f5, &[&[1]])]).unwrap();
        assert!(matches!(truncated_induced(&su, &bad), Err(Error::NotRestricted(..))));
    }
}
