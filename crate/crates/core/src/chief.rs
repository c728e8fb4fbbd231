//! Chief series, splitting of abelian chief factors and the split
//! multiplicity `[L:S]_split`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{self, Subsets};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::{Ideal, LieAlgebra};
use crate::matrix::Mat;
use crate::meataxe::{self, Irreducibility};
use crate::rep::{end_dim, irreducibles_isomorphic, Representation};
use crate::subspace::{RelativeQuotient, Subspace};
use crate::Limits;

/// Number of random vectors spun per factor when certifying a declared
/// chain over an infinite field.
pub const SPIN_TRIALS: usize = 20;

/// How the irreducibility of the factors was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Norton criterion over a finite field.
    MeatAxe,
    /// Declared chain; each factor survived randomized spinning.
    RandomSpinning,
}

/// Outcome of the splitting test for an abelian chief factor.
#[derive(Clone, Debug)]
pub struct Splitting<F: Field> {
    pub splits: bool,
    /// Lifts `s'(q)` of a basis of `L/L_j` spanning, together with
    /// `L_{j-1}`, a subalgebra complementing `L_j / L_{j-1}`.
    pub complement: Option<Subspace<F>>,
}

#[derive(Clone, Debug)]
pub struct ChiefFactor<F: Field> {
    pub lower: Subspace<F>,
    pub upper: Subspace<F>,
    /// `L` acting on `upper / lower`.
    pub module: Representation<F>,
    pub is_abelian: bool,
    /// Present exactly for abelian factors.
    pub splitting: Option<Splitting<F>>,
}

impl<F: Field> ChiefFactor<F> {
    pub fn is_split(&self) -> Option<bool> {
        self.splitting.as_ref().map(|s| s.splits)
    }
}

#[derive(Clone, Debug)]
pub struct ChiefSeries<F: Field> {
    pub algebra: Arc<LieAlgebra<F>>,
    pub chain: Vec<Ideal<F>>,
    pub factors: Vec<ChiefFactor<F>>,
    pub certification: Certification,
}

/// `upper / lower` as an `L`-module, in the coordinates of a
/// [`RelativeQuotient`].
pub fn factor_module<F: Field>(
    algebra: &Arc<LieAlgebra<F>>,
    upper: &Subspace<F>,
    lower: &Subspace<F>,
) -> Result<(Representation<F>, RelativeQuotient<F>)> {
    let q = RelativeQuotient::new(upper, lower)?;
    let f = algebra.field();
    let action = (0..algebra.dim())
        .map(|i| {
            let cols: Vec<Vec<F::Elem>> = q
                .complement()
                .iter()
                .map(|v| q.coordinates(&algebra.bracket(&algebra.unit(i), v)))
                .collect();
            Mat::from_columns(f, q.dim(), &cols)
        })
        .collect();
    Ok((Representation::new(algebra.clone(), q.dim(), action)?, q))
}

/// Chief series of `L` over a finite field, read off a composition series
/// of the adjoint module.
pub fn chief_series<F: Field>(algebra: &Arc<LieAlgebra<F>>, seed: u64, limits: &Limits) -> Result<ChiefSeries<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ad = Representation::adjoint(algebra);
    let cs = meataxe::composition_series(&ad, &mut rng, limits.max_module_dim)?;
    let chain = cs
        .chain
        .into_iter()
        .map(|s| algebra.ideal(s))
        .collect::<Result<Vec<_>>>()?;
    build_series(algebra, chain, Certification::MeatAxe, &mut rng, limits)
}

/// Chief series from a declared chain of subspaces `0 < ... < L`. Over
/// finite fields each factor is certified by the MeatAxe, otherwise by
/// randomized spinning.
pub fn declared_chief_series<F: Field>(
    algebra: &Arc<LieAlgebra<F>>,
    chain: Vec<Subspace<F>>,
    seed: u64,
    limits: &Limits,
) -> Result<ChiefSeries<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = algebra.dim();
    let f = algebra.field();
    let mut full = chain;
    if full.first().is_none_or(|s| !s.is_zero()) {
        full.insert(0, Subspace::zero(f, n));
    }
    if full.last().is_none_or(|s| !s.is_full()) {
        full.push(Subspace::full(f, n));
    }
    for w in full.windows(2) {
        if !w[1].contains_space(&w[0]) || w[1].dim() == w[0].dim() {
            return Err(Error::Precondition("declared chain is not strictly increasing".into()));
        }
    }
    let chain = full
        .into_iter()
        .map(|s| algebra.ideal(s))
        .collect::<Result<Vec<_>>>()?;
    let cert = if f.order().is_some() {
        Certification::MeatAxe
    } else {
        Certification::RandomSpinning
    };
    build_series(algebra, chain, cert, &mut rng, limits)
}

fn build_series<F: Field>(
    algebra: &Arc<LieAlgebra<F>>,
    chain: Vec<Ideal<F>>,
    certification: Certification,
    rng: &mut ChaCha8Rng,
    limits: &Limits,
) -> Result<ChiefSeries<F>> {
    let f = algebra.field();
    let mut factors = Vec::new();
    for j in 1..chain.len() {
        let (lower, upper) = (chain[j - 1].space().clone(), chain[j].space().clone());
        let (module, _) = factor_module(algebra, &upper, &lower)?;
        match certification {
            Certification::MeatAxe => {
                if let Irreducibility::Reducible(_) = meataxe::is_irreducible(&module, rng, limits.max_module_dim)? {
                    return Err(Error::Precondition(format!("chief factor {j} is not irreducible")));
                }
            }
            Certification::RandomSpinning => {
                for _ in 0..SPIN_TRIALS {
                    let v: Vec<F::Elem> = (0..module.dim()).map(|_| f.random(rng)).collect();
                    if v.iter().all(|c| f.is_zero(c)) {
                        continue;
                    }
                    if !module.spin(&[v]).is_full() {
                        return Err(Error::Precondition(format!(
                            "declared chief factor {j} has a proper submodule"
                        )));
                    }
                }
            }
        }
        let is_abelian = lower.contains_space(&algebra.bracket_spaces(&upper, &upper));
        factors.push(ChiefFactor {
            lower,
            upper,
            module,
            is_abelian,
            splitting: None,
        });
    }
    let mut series = ChiefSeries {
        algebra: algebra.clone(),
        chain,
        factors,
        certification,
    };
    for j in 0..series.factors.len() {
        if series.factors[j].is_abelian {
            let s = factor_extension_splits(&series, j)?;
            series.factors[j].splitting = Some(s);
        }
    }
    Ok(series)
}

/// Decides whether `0 -> L_j/L_{j-1} -> L/L_{j-1} -> L/L_j -> 0` splits by
/// solving `d phi = -omega` for the extension cocycle `omega` of the
/// standard section. `j` indexes `series.factors`.
pub fn factor_extension_splits<F: Field>(series: &ChiefSeries<F>, j: usize) -> Result<Splitting<F>> {
    let alg = &series.algebra;
    let f = alg.field();
    let factor = &series.factors[j];
    if !factor.is_abelian {
        return Err(Error::Precondition("splitting is only decided for abelian factors".into()));
    }
    let upper_ideal = alg.ideal(factor.upper.clone())?;
    let quot = alg.quotient(&upper_ideal)?;
    let (amod, aq) = factor_module(alg, &factor.upper, &factor.lower)?;
    let a_q = amod.descend(&quot)?;
    let (qn, m) = (quot.algebra.dim(), a_q.dim());
    let section: Vec<Vec<F::Elem>> = (0..qn).map(|k| quot.section.column(k)).collect();
    let subs = Subsets::new(qn, 2);
    let mut rhs = vec![f.zero(); subs.len() * m];
    for si in 0..subs.len() {
        let (a, b) = (subs.get(si)[0], subs.get(si)[1]);
        let mut omega = alg.bracket(&section[a], &section[b]);
        let sab = quot.section.mul_vec(quot.algebra.bracket_basis(a, b));
        for (o, s) in omega.iter_mut().zip(&sab) {
            *o = f.sub(o, s);
        }
        if !factor.upper.contains(&omega) {
            return Err(Error::Internal("extension cocycle leaves L_j".into()));
        }
        let c = aq.coordinates(&omega);
        for (k, v) in c.iter().enumerate() {
            rhs[si * m + k] = f.neg(v);
        }
    }
    let complement_of = |phi: &[F::Elem]| -> Subspace<F> {
        let vecs = (0..qn)
            .map(|a| {
                let mut v = section[a].clone();
                for (k, c) in phi[a * m..(a + 1) * m].iter().enumerate() {
                    f.axpy(&mut v, c, &aq.complement()[k]);
                }
                v
            })
            .collect();
        Subspace::from_vectors(f, alg.dim(), vecs)
    };
    let phi = if rhs.is_empty() {
        Some(vec![f.zero(); qn * m])
    } else {
        cohomology::differential(&a_q, 1)?.solve(&rhs)?
    };
    let Some(phi) = phi else {
        return Ok(Splitting {
            splits: false,
            complement: None,
        });
    };
    let w = complement_of(&phi);
    let wl = w.sum(&factor.lower)?;
    let closed = alg.is_subalgebra(&wl);
    let direct = wl.dim() + factor.upper.dim() == alg.dim() + factor.lower.dim()
        && wl.sum(&factor.upper)?.is_full();
    if !closed || !direct {
        return Err(Error::Internal("corrected section does not give a complement".into()));
    }
    Ok(Splitting {
        splits: true,
        complement: Some(w),
    })
}

impl<F: Field> ChiefSeries<F> {
    /// Number of split abelian factors isomorphic to `s`.
    pub fn split_multiplicity(&self, s: &Representation<F>) -> Result<usize> {
        let mut count = 0;
        for fac in &self.factors {
            if fac.is_split() == Some(true) && irreducibles_isomorphic(&fac.module, s)? {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Distinct factor modules up to isomorphism, in order of appearance.
    pub fn distinct_factors(&self) -> Result<Vec<Representation<F>>> {
        let mut out: Vec<Representation<F>> = Vec::new();
        for fac in &self.factors {
            let mut seen = false;
            for t in &out {
                if irreducibles_isomorphic(&fac.module, t)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(fac.module.clone());
            }
        }
        Ok(out)
    }
}

/// `H^1(L/ann_L(S), S)` for a module `S`.
pub fn h1_mod_annihilator<F: Field>(s: &Representation<F>) -> Result<usize> {
    let alg = s.algebra();
    let ann = alg.ideal(s.annihilator())?;
    let quot = alg.quotient(&ann)?;
    let sq = s.descend(&quot)?;
    cohomology::h1_dim(&sq)
}

/// Both sides of the multiplicity formula for an irreducible `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityCheck {
    pub split: usize,
    pub end_dim: usize,
    pub h1: usize,
    pub h1_mod_ann: usize,
}

impl MultiplicityCheck {
    /// `dim_D H^1(L,S) - dim_D H^1(L/ann,S)`, when both divide exactly.
    pub fn rhs(&self) -> Option<i64> {
        if self.end_dim == 0 || !self.h1.is_multiple_of(self.end_dim) || !self.h1_mod_ann.is_multiple_of(self.end_dim) {
            return None;
        }
        Some((self.h1 / self.end_dim) as i64 - (self.h1_mod_ann / self.end_dim) as i64)
    }

    pub fn holds(&self) -> bool {
        self.rhs() == Some(self.split as i64)
    }
}

pub fn multiplicity_check<F: Field>(series: &ChiefSeries<F>, s: &Representation<F>) -> Result<MultiplicityCheck> {
    Ok(MultiplicityCheck {
        split: series.split_multiplicity(s)?,
        end_dim: end_dim(s)?,
        h1: cohomology::h1_dim(s)?,
        h1_mod_ann: h1_mod_annihilator(s)?,
    })
}

/// First module in `candidates` with `H^1(L/ann(S), S) != 0`, with that
/// dimension.
pub fn find_nonvanishing_module<F: Field>(candidates: &[Representation<F>]) -> Result<Option<(usize, usize)>> {
    for (i, s) in candidates.iter().enumerate() {
        let h = h1_mod_annihilator(s)?;
        if h != 0 {
            return Ok(Some((i, h)));
        }
    }
    Ok(None)
}

/// Minimal ideals of `L` over a finite field: minimal submodules of the
/// adjoint module, listed when there are at most `limit` of them. Returns
/// the total count and, when listed, the ideals.
pub fn minimal_ideals<F: Field>(
    algebra: &Arc<LieAlgebra<F>>,
    seed: u64,
    limits: &Limits,
    limit: usize,
) -> Result<(u128, Option<Vec<Ideal<F>>>)> {
    let series = chief_series(algebra, seed, limits)?;
    let ad = Representation::adjoint(algebra);
    let mut total = 0u128;
    let mut all = Some(Vec::new());
    for s in series.distinct_factors()? {
        let comp = meataxe::socle_component(&s, &ad, limit)?;
        total += comp.count.ok_or_else(|| Error::Internal("socle count overflow".into()))?;
        match (comp.minimal, all.as_mut()) {
            (Some(list), Some(acc)) => {
                for sp in list {
                    acc.push(algebra.ideal(sp)?);
                }
            }
            _ => all = None,
        }
    }
    if all.as_ref().is_some_and(|a| a.len() as u128 != total) {
        return Err(Error::Internal("minimal ideal enumeration disagrees with the count".into()));
    }
    Ok((total, all))
}
