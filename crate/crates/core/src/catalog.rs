//! Built-in example algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rationals};
use crate::format::{AlgebraSpec, AnySpec, InductionSeed};
use crate::lie::{LieAlgebra, UpperTable};
use crate::matrix::Mat;
use crate::rep::Representation;
use crate::subspace::Subspace;

pub const NAMES: &[&str] = &[
    "abelian_1_gf3",
    "abelian_2_gf2",
    "torus_1_gf5",
    "l2_gf3",
    "l2_gf5",
    "heisenberg_gf3",
    "sl2_gf5",
    "sl2_q",
    "borel2_q",
    "psl3_gf3",
    "der_psl3_gf3",
    "l2xu_gf5",
];

pub fn names() -> &'static [&'static str] {
    NAMES
}

pub fn entry(name: &str) -> Result<AnySpec> {
    let gf = |p| Fp::new(p).expect("prime");
    Ok(match name {
        "abelian_1_gf3" => AnySpec::Modular(abelian(name, gf(3), 1)),
        "abelian_2_gf2" => AnySpec::Modular(abelian(name, gf(2), 2)),
        "torus_1_gf5" => AnySpec::Modular(torus(name, gf(5))?),
        "l2_gf3" => AnySpec::Modular(l2(name, gf(3))?),
        "l2_gf5" => AnySpec::Modular(l2(name, gf(5))?),
        "heisenberg_gf3" => AnySpec::Modular(heisenberg(name, gf(3))?),
        "sl2_gf5" => AnySpec::Modular(sl2(name, &gf(5), &[0, 1, 2, 3, 4], "L")?),
        "sl2_q" => AnySpec::Rational(sl2(name, &Rationals, &[0, 2, 4], "V")?),
        "borel2_q" => AnySpec::Rational(borel2_q(name)?),
        "psl3_gf3" => AnySpec::Modular(bare(name, Arc::new(psl3_gf3()?))),
        "der_psl3_gf3" => AnySpec::Modular(bare(name, der_psl3_gf3()?.0)),
        "l2xu_gf5" => AnySpec::Modular(l2xu(name, gf(5))?),
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    })
}

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn bare<F: Field>(name: &str, algebra: Arc<LieAlgebra<F>>) -> AlgebraSpec<F> {
    AlgebraSpec {
        name: name.to_string(),
        algebra,
        modules: Vec::new(),
        chain: None,
        induction: Vec::new(),
    }
}

fn ivec<F: Field>(f: &F, v: &[i64]) -> Vec<F::Elem> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

fn scalar<F: Field>(f: &F, x: i64) -> Mat<F> {
    Mat::from_i64(f, &[&[x]])
}

fn abelian(name: &str, f: Fp, dim: usize) -> AlgebraSpec<Fp> {
    bare(name, Arc::new(LieAlgebra::abelian(&f, dim)))
}

/// `span{x}` with `x^[p] = x`.
fn torus(name: &str, f: Fp) -> Result<AlgebraSpec<Fp>> {
    let l = LieAlgebra::new(&f, labels(&["x"]), UpperTable::new(), Some(vec![vec![1]]))?;
    Ok(bare(name, Arc::new(l)))
}

/// `[t,e] = e`, `t^[p] = t`, `e^[p] = 0`, with the characters `F_k`.
fn l2(name: &str, f: Fp) -> Result<AlgebraSpec<Fp>> {
    let mut t = UpperTable::new();
    t.insert((0, 1), vec![0, 1]);
    let l = Arc::new(LieAlgebra::new(&f, labels(&["t", "e"]), t, Some(vec![vec![1, 0], vec![0, 0]]))?);
    let mut modules = Vec::new();
    for k in 1..f.p() as i64 {
        let r = Representation::new(l.clone(), 1, vec![scalar(&f, k), scalar(&f, 0)])?;
        modules.push((format!("F{k}"), r));
    }
    Ok(AlgebraSpec {
        induction: vec![InductionSeed {
            name: "F".into(),
            ideal: Subspace::from_vectors(&f, 2, vec![vec![0, 1]]),
            action: vec![scalar(&f, 0)],
            dim: 1,
        }],
        modules,
        ..bare(name, l)
    })
}

/// `[x,y] = z`, zero p-map.
fn heisenberg(name: &str, f: Fp) -> Result<AlgebraSpec<Fp>> {
    let mut t = UpperTable::new();
    t.insert((0, 1), vec![0, 0, 1]);
    let l = Arc::new(LieAlgebra::new(&f, labels(&["x", "y", "z"]), t, Some(vec![vec![0; 3]; 3]))?);
    Ok(AlgebraSpec {
        induction: vec![InductionSeed {
            name: "F".into(),
            ideal: Subspace::from_vectors(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]),
            action: vec![scalar(&f, 0), scalar(&f, 0)],
            dim: 1,
        }],
        ..bare(name, l)
    })
}

/// Highest weight module of dimension `n + 1`:
/// `h v_i = (n-2i) v_i`, `f v_i = (i+1) v_(i+1)`, `e v_i = (n-i+1) v_(i-1)`.
pub fn sl2_module<F: Field>(f: &F, n: usize) -> [Mat<F>; 3] {
    let d = n + 1;
    let e = Mat::from_fn(f, d, d, |r, c| {
        if c >= 1 && r == c - 1 {
            f.from_i64((n - c + 1) as i64)
        } else {
            f.zero()
        }
    });
    let fm = Mat::from_fn(f, d, d, |r, c| if r == c + 1 { f.from_i64(r as i64) } else { f.zero() });
    let h = Mat::from_fn(f, d, d, |r, c| {
        if r == c {
            f.from_i64(n as i64 - 2 * r as i64)
        } else {
            f.zero()
        }
    });
    [e, fm, h]
}

/// Basis `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
fn sl2<F: Field>(name: &str, f: &F, weights: &[usize], prefix: &str) -> Result<AlgebraSpec<F>> {
    let mut t = UpperTable::new();
    t.insert((0, 1), ivec(f, &[0, 0, 1]));
    t.insert((0, 2), ivec(f, &[-2, 0, 0]));
    t.insert((1, 2), ivec(f, &[0, 2, 0]));
    let pmap = (f.characteristic() > 0).then(|| vec![ivec(f, &[0, 0, 0]), ivec(f, &[0, 0, 0]), ivec(f, &[0, 0, 1])]);
    let l = Arc::new(LieAlgebra::new(f, labels(&["e", "f", "h"]), t, pmap)?);
    let mut modules = Vec::new();
    for &n in weights {
        let r = Representation::new(l.clone(), n + 1, sl2_module(f, n).to_vec())?;
        modules.push((format!("{prefix}({n})"), r));
    }
    let chain = (f.characteristic() == 0).then(Vec::new);
    Ok(AlgebraSpec {
        modules,
        chain,
        ..bare(name, l)
    })
}

/// `[h,e] = 2e` over Q with the characters `F_k : h -> k` and the chain
/// `0 < span{e} < L`.
fn borel2_q(name: &str) -> Result<AlgebraSpec<Rationals>> {
    let q = Rationals;
    let mut t = UpperTable::new();
    t.insert((0, 1), ivec(&q, &[0, 2]));
    let l = Arc::new(LieAlgebra::new(&q, labels(&["h", "e"]), t, None)?);
    let mut modules = Vec::new();
    for k in 0..3 {
        let r = Representation::new(l.clone(), 1, vec![scalar(&q, k), scalar(&q, 0)])?;
        modules.push((format!("F_{k}"), r));
    }
    Ok(AlgebraSpec {
        modules,
        chain: Some(vec![Subspace::from_vectors(&q, 2, vec![ivec(&q, &[0, 1])])]),
        ..bare(name, l)
    })
}

/// `sl_3(GF(3))` modulo its center, the scalar matrices.
pub fn psl3_gf3() -> Result<LieAlgebra<Fp>> {
    let f = Fp::new(3)?;
    let unit = |i: usize, j: usize| Mat::from_fn(&f, 3, 3, |r, c| if (r, c) == (i, j) { 1 } else { 0 });
    let mats = vec![
        unit(0, 1),
        unit(0, 2),
        unit(1, 0),
        unit(1, 2),
        unit(2, 0),
        unit(2, 1),
        unit(0, 0).sub(&unit(1, 1)),
        unit(1, 1).sub(&unit(2, 2)),
    ];
    let names = labels(&["e12", "e13", "e21", "e23", "e31", "e32", "h1", "h2"]);
    let sl3 = LieAlgebra::from_matrices(&f, names, &mats)?;
    let center = sl3.ideal(sl3.center())?;
    let q = sl3.quotient(&center)?;
    Ok(Arc::try_unwrap(q.algebra).unwrap_or_else(|a| (*a).clone()))
}

/// `der(psl_3(GF(3)))` and its inner derivations.
pub fn der_psl3_gf3() -> Result<(Arc<LieAlgebra<Fp>>, Subspace<Fp>)> {
    let d = psl3_gf3()?.derivation_algebra()?;
    Ok((d.algebra, d.inner))
}

/// `L_2 x span{u}` with `u` central, `u^[p] = 0`, seeded for induction
/// from `L_2` with the character `F1`.
fn l2xu(name: &str, f: Fp) -> Result<AlgebraSpec<Fp>> {
    let mut t = UpperTable::new();
    t.insert((0, 1), vec![0, 1, 0]);
    let pm = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]];
    let l = Arc::new(LieAlgebra::new(&f, labels(&["t", "e", "u"]), t, Some(pm))?);
    Ok(AlgebraSpec {
        induction: vec![InductionSeed {
            name: "F1".into(),
            ideal: Subspace::from_vectors(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]),
            action: vec![scalar(&f, 1), scalar(&f, 0)],
            dim: 1,
        }],
        ..bare(name, l)
    })
}
