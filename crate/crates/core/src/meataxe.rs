//! Irreducibility testing and composition series over finite fields.
//!
//! Random elements of the matrix algebra generated by the action are drawn
//! from a caller-owned PRNG. An irreducible factor `f` of the characteristic
//! polynomial of such an element `theta` with `dim ker f(theta) = deg f`
//! decides irreducibility by Norton's criterion: either a kernel vector
//! spins to a proper submodule, or a kernel vector of `f(theta)^T` spins to
//! a proper submodule of the dual, or the module is irreducible.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::{charpoly, distinct_degree_parts, Poly};
use crate::rep::{intertwiners, spin_under, Representation};
use crate::subspace::Subspace;

pub const DEFAULT_MAX_DIM: usize = 512;
const MAX_ATTEMPTS: usize = 500;
/// Root search by evaluation is used for fields up to this size.
const ROOT_SEARCH_LIMIT: u64 = 4096;

/// Evidence of irreducibility: the algebra element, the factor of its
/// characteristic polynomial, and the two kernel vectors that spin to the
/// whole module and its dual.
#[derive(Clone, Debug)]
pub struct NortonCertificate<F: Field> {
    pub element: Mat<F>,
    pub factor: Poly<F>,
    pub kernel_vector: Vec<F::Elem>,
    pub dual_vector: Vec<F::Elem>,
}

#[derive(Clone, Debug)]
pub enum Irreducibility<F: Field> {
    /// One-dimensional modules need no certificate.
    Irreducible(Option<NortonCertificate<F>>),
    /// A proper nonzero submodule.
    Reducible(Subspace<F>),
}

impl<F: Field> Irreducibility<F> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

fn require_finite<F: Field>(field: &F) -> Result<()> {
    if field.order().is_none() {
        return Err(Error::Unsupported(
            "a finite field (irreducibility over Q is not decided)".into(),
        ));
    }
    Ok(())
}

fn check_scale(dim: usize, max_dim: usize) -> Result<()> {
    if dim > max_dim {
        return Err(Error::ScaleGuard {
            what: "module dimension",
            size: dim,
            limit: max_dim,
        });
    }
    Ok(())
}

/// Random element of the algebra generated by the action matrices: a
/// combination of the identity, the generators, and a few random words.
fn random_element<F: Field, R: Rng + ?Sized>(gens: &[Mat<F>], dim: usize, rng: &mut R) -> Mat<F> {
    let f = gens[0].field();
    let mut theta = Mat::identity(f, dim).scale(&f.random(rng));
    for g in gens {
        theta.add_scaled(&f.random(rng), g);
    }
    let words = 1 + gens.len();
    for _ in 0..words {
        let len = rng.gen_range(2..=4);
        let mut w = gens[rng.gen_range(0..gens.len())].clone();
        for _ in 1..len {
            w = w.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        theta.add_scaled(&f.random(rng), &w);
    }
    theta
}

/// Irreducible factors of `c` worth trying: every linear factor (when the
/// field is small enough to search for roots) and every distinct-degree
/// part that is itself irreducible.
fn candidate_factors<F: Field>(c: &Poly<F>) -> Vec<Poly<F>> {
    let f = c.field();
    let q = f.order().unwrap();
    let mut out = Vec::new();
    let deg = c.degree().unwrap_or(0);
    for (d, g) in distinct_degree_parts(c, deg) {
        if g.degree() == Some(d) {
            out.push(g);
        } else if d == 1 && q <= ROOT_SEARCH_LIMIT {
            for a in f.elements().unwrap() {
                if f.is_zero(&g.eval(&a)) {
                    out.push(Poly::linear(f, &a));
                }
            }
        }
    }
    out.sort_by_key(|p| p.degree());
    out
}

/// Decides irreducibility of a module over a finite field.
pub fn is_irreducible<F: Field, R: Rng + ?Sized>(
    rep: &Representation<F>,
    rng: &mut R,
    max_dim: usize,
) -> Result<Irreducibility<F>> {
    let f = rep.field();
    require_finite(f)?;
    let n = rep.dim();
    check_scale(n, max_dim)?;
    if n == 0 {
        return Err(Error::Precondition("the zero module is not irreducible".into()));
    }
    if n == 1 {
        return Ok(Irreducibility::Irreducible(None));
    }
    let gens: Vec<Mat<F>> = if rep.actions().is_empty() {
        vec![Mat::zeros(f, n, n)]
    } else {
        rep.actions().to_vec()
    };
    let transposed: Vec<Mat<F>> = gens.iter().map(|g| g.transpose()).collect();
    for _ in 0..MAX_ATTEMPTS {
        let theta = random_element(&gens, n, rng);
        let c = charpoly(&theta);
        for factor in candidate_factors(&c) {
            let kernel = factor.eval_matrix(&theta).kernel();
            let k = kernel.dim();
            if k == 0 {
                continue;
            }
            let v = random_vector_in(&kernel, rng);
            let span = spin_under(f, n, &gens, std::slice::from_ref(&v));
            if span.dim() < n {
                return Ok(Irreducibility::Reducible(span.to_subspace()));
            }
            if Some(k) != factor.degree() {
                continue;
            }
            let dual_kernel = factor.eval_matrix(&theta.transpose()).kernel();
            let w = random_vector_in(&dual_kernel, rng);
            let dual_span = spin_under(f, n, &transposed, std::slice::from_ref(&w));
            if dual_span.dim() < n {
                // annihilator of an invariant subspace of the dual
                let sub = dual_span.to_subspace().orthogonal();
                return Ok(Irreducibility::Reducible(sub));
            }
            return Ok(Irreducibility::Irreducible(Some(NortonCertificate {
                element: theta,
                factor,
                kernel_vector: v,
                dual_vector: w,
            })));
        }
    }
    Err(Error::Internal(format!(
        "no usable algebra element after {MAX_ATTEMPTS} attempts"
    )))
}

fn random_vector_in<F: Field, R: Rng + ?Sized>(space: &Subspace<F>, rng: &mut R) -> Vec<F::Elem> {
    let f = space.field();
    loop {
        let coords: Vec<F::Elem> = (0..space.dim()).map(|_| f.random(rng)).collect();
        if coords.iter().any(|c| !f.is_zero(c)) {
            return space.combination(&coords);
        }
    }
}

/// A composition series `0 = M_0 < ... < M_r = M` with its irreducible
/// factors; `factors[i]` is isomorphic to `chain[i+1] / chain[i]`.
#[derive(Clone, Debug)]
pub struct CompositionSeries<F: Field> {
    pub chain: Vec<Subspace<F>>,
    pub factors: Vec<Representation<F>>,
}

pub fn composition_series<F: Field, R: Rng + ?Sized>(
    rep: &Representation<F>,
    rng: &mut R,
    max_dim: usize,
) -> Result<CompositionSeries<F>> {
    let f = rep.field();
    require_finite(f)?;
    check_scale(rep.dim(), max_dim)?;
    let n = rep.dim();
    if n == 0 {
        return Ok(CompositionSeries {
            chain: vec![Subspace::zero(f, 0)],
            factors: Vec::new(),
        });
    }
    match is_irreducible(rep, rng, max_dim)? {
        Irreducibility::Irreducible(_) => Ok(CompositionSeries {
            chain: vec![Subspace::zero(f, n), Subspace::full(f, n)],
            factors: vec![rep.clone()],
        }),
        Irreducibility::Reducible(u) => {
            let sub = rep.submodule(&u)?;
            let quo = rep.quotient(&u)?;
            let low = composition_series(&sub, rng, max_dim)?;
            let high = composition_series(&quo, rng, max_dim)?;
            let ubasis = u.basis();
            let mut chain: Vec<Subspace<F>> = low
                .chain
                .iter()
                .map(|s| {
                    let vecs = s.vectors().iter().map(|c| ubasis.vec_mul(c)).collect();
                    Subspace::from_vectors(f, n, vecs)
                })
                .collect();
            chain.extend(high.chain.iter().skip(1).map(|s| u.lift_from_quotient(s)));
            let mut factors = low.factors;
            factors.extend(high.factors);
            Ok(CompositionSeries { chain, factors })
        }
    }
}

/// Minimal submodules isomorphic to the irreducible module `s`, found as
/// images of nonzero intertwiners `s -> rep`. The number of them is
/// `(q^k - 1) / (q^e - 1)` with `k = dim Hom_L(s, rep)` and
/// `e = dim End_L(s)`; they are listed only when there are at most `limit`.
#[derive(Clone, Debug)]
pub struct SocleComponent<F: Field> {
    pub hom_dim: usize,
    pub end_dim: usize,
    /// Sum of all minimal submodules isomorphic to `s`.
    pub isotypic: Subspace<F>,
    pub count: Option<u128>,
    pub minimal: Option<Vec<Subspace<F>>>,
}

pub fn socle_component<F: Field>(
    s: &Representation<F>,
    rep: &Representation<F>,
    limit: usize,
) -> Result<SocleComponent<F>> {
    let f = rep.field();
    let homs = intertwiners(s, rep)?;
    let end_dim = intertwiners(s, s)?.len();
    let k = homs.len();
    let mut vecs = Vec::new();
    for h in &homs {
        vecs.extend(h.transpose().row_vecs());
    }
    let isotypic = Subspace::from_vectors(f, rep.dim(), vecs);
    let count = f.order().and_then(|q| {
        if k == 0 {
            return Some(0);
        }
        let qk = (q as u128).checked_pow(k as u32)?;
        let qe = (q as u128).checked_pow(end_dim as u32)?;
        Some((qk - 1) / (qe - 1))
    });
    let minimal = match (count, f.elements()) {
        (Some(c), Some(elems)) if c as usize <= limit => {
            let mut found: Vec<Subspace<F>> = Vec::new();
            let total = (elems.len() as u128).pow(k as u32);
            for idx in 1..total {
                let mut t = Mat::zeros(f, rep.dim(), s.dim());
                let mut r = idx;
                for h in &homs {
                    let c = &elems[(r % elems.len() as u128) as usize];
                    r /= elems.len() as u128;
                    t.add_scaled(c, h);
                }
                let image = Subspace::column_space(&t);
                if !image.is_zero() && !found.contains(&image) {
                    found.push(image);
                }
            }
            Some(found)
        }
        _ => None,
    };
    Ok(SocleComponent {
        hom_dim: k,
        end_dim,
        isotypic,
        count,
        minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::lie::{LieAlgebra, UpperTable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn sl2(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 0, 1]);
        t.insert((0, 2), vec![f.from_i64(-2), 0, 0]);
        t.insert((1, 2), vec![0, 2, 0]);
        Arc::new(LieAlgebra::new(f, vec!["e".into(), "f".into(), "h".into()], t, None).unwrap())
    }

    fn heisenberg(f: &Fp) -> Arc<LieAlgebra<Fp>> {
        let mut t = UpperTable::new();
        t.insert((0, 1), vec![0, 0, 1]);
        Arc::new(LieAlgebra::new(f, vec!["x".into(), "y".into(), "z".into()], t, None).unwrap())
    }

    /// Oracle: a module is irreducible iff every line spins to everything.
    fn irreducible_by_lines(rep: &Representation<Fp>) -> bool {
        let f = rep.field();
        let q = f.p() as usize;
        let n = rep.dim();
        for idx in 1..q.pow(n as u32) {
            let mut v = Vec::with_capacity(n);
            let mut r = idx;
            for _ in 0..n {
                v.push((r % q) as u32);
                r /= q;
            }
            if rep.spin(&[v]).dim() < n {
                return false;
            }
        }
        true
    }

    #[test]
    fn small_examples() {
        let f = Fp::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let l = sl2(&f);
        assert!(is_irreducible(&Representation::trivial(&l, 1), &mut rng, 512).unwrap().is_irreducible());
        match is_irreducible(&Representation::trivial(&l, 2), &mut rng, 512).unwrap() {
            Irreducibility::Reducible(u) => assert_eq!(u.dim(), 1),
            _ => panic!("trivial 2-dim module is reducible"),
        }
        let ad = Representation::adjoint(&l);
        assert!(irreducible_by_lines(&ad));
        let res = is_irreducible(&ad, &mut rng, 512).unwrap();
        assert!(res.is_irreducible());
        assert!(matches!(res, Irreducibility::Irreducible(Some(_))));
    }

    #[test]
    fn reducible_witness_is_a_submodule() {
        let f = Fp::new(3).unwrap();
        let h = heisenberg(&f);
        let ad = Representation::adjoint(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        match is_irreducible(&ad, &mut rng, 512).unwrap() {
            Irreducibility::Reducible(u) => {
                assert!(!u.is_zero() && !u.is_full());
                assert!(ad.is_submodule(&u));
            }
            _ => panic!("adjoint Heisenberg module is reducible"),
        }
    }

    #[test]
    fn heisenberg_composition_series() {
        let f = Fp::new(3).unwrap();
        let ad = Representation::adjoint(&heisenberg(&f));
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cs = composition_series(&ad, &mut rng, 512).unwrap();
            assert_eq!(cs.factors.len(), 3);
            assert!(cs.factors.iter().all(|s| s.dim() == 1 && s.is_trivial()));
            for w in cs.chain.windows(2) {
                assert!(w[1].contains_space(&w[0]) && w[1].dim() == w[0].dim() + 1);
                assert!(ad.is_submodule(&w[1]));
            }
        }
    }

    #[test]
    fn norton_with_nonlinear_factor() {
        let f = Fp::new(2).unwrap();
        let l = Arc::new(LieAlgebra::abelian(&f, 1));
        let c = Mat::from_i64(&f, &[&[0, 1], &[1, 1]]);
        let r = Representation::new(l, 2, vec![c]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(is_irreducible(&r, &mut rng, 512).unwrap().is_irreducible());
    }

    #[test]
    fn scale_guard_and_rationals() {
        let f = Fp::new(3).unwrap();
        let l = Arc::new(LieAlgebra::abelian(&f, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let big = Representation::trivial(&l, 10);
        assert!(matches!(is_irreducible(&big, &mut rng, 4), Err(Error::ScaleGuard { .. })));
        let q = crate::field::Rationals;
        let lq = Arc::new(LieAlgebra::abelian(&q, 1));
        assert!(matches!(
            is_irreducible(&Representation::trivial(&lq, 2), &mut rng, 512),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn socle_of_trivial_module() {
        let f = Fp::new(3).unwrap();
        let l = Arc::new(LieAlgebra::abelian(&f, 1));
        let triv1 = Representation::trivial(&l, 1);
        let comp = socle_component(&triv1, &Representation::trivial(&l, 2), 100).unwrap();
        assert_eq!(comp.count, Some(4));
        assert_eq!(comp.minimal.unwrap().len(), 4);
    }
}
