//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use liechief::catalog;
use liechief::chief::{self, ChiefSeries};
use liechief::classes::ClassRegistry;
use liechief::cohomology;
use liechief::field::{Field, Fp, Rationals};
use liechief::format::{AlgebraSpec, AnySpec};
use liechief::induction;
use liechief::report::{Report, Verdict};
use liechief::restricted;
use liechief::suite::run_suite;
use liechief::{Limits, Mat, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 7;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn modular(name: &str) -> AlgebraSpec<Fp> {
    match catalog::entry(name).unwrap() {
        AnySpec::Modular(s) => s,
        AnySpec::Rational(_) => panic!("{name} is rational"),
    }
}

fn rational(name: &str) -> AlgebraSpec<Rationals> {
    match catalog::entry(name).unwrap() {
        AnySpec::Rational(s) => s,
        AnySpec::Modular(_) => panic!("{name} is modular"),
    }
}

fn suite(name: &str, id: &str) -> Report {
    run_suite(&catalog::entry(name).unwrap(), id, SEED, &Limits::default()).unwrap()
}

fn module<F: Field>(spec: &AlgebraSpec<F>, name: &str) -> Representation<F> {
    spec.modules.iter().find(|(n, _)| n == name).unwrap().1.clone()
}

fn series<F: Field>(spec: &AlgebraSpec<F>) -> ChiefSeries<F> {
    match &spec.chain {
        Some(chain) if spec.algebra.field().characteristic() == 0 => {
            chief::declared_chief_series(&spec.algebra, chain.clone(), SEED, &Limits::default()).unwrap()
        }
        _ => chief::chief_series(&spec.algebra, SEED, &Limits::default()).unwrap(),
    }
}

fn is_restricted(name: &str) -> bool {
    matches!(catalog::entry(name).unwrap(), AnySpec::Modular(s) if s.algebra.is_restricted())
}

fn is_solvable(name: &str) -> bool {
    match catalog::entry(name).unwrap() {
        AnySpec::Modular(s) => s.algebra.is_solvable(),
        AnySpec::Rational(s) => s.algebra.is_solvable(),
    }
}

/// Every record with `check` passed and at least one exists.
fn all_pass(r: &Report, check: &str) -> Outcome {
    let recs: Vec<_> = r.find(check).collect();
    ensure!(!recs.is_empty(), "{}: no {check} records", r.algebra);
    for rec in recs {
        ensure!(
            rec.verdict == Verdict::Pass,
            "{}: {check} {:?} is {:?} ({:?})",
            r.algebra,
            rec.inputs,
            rec.verdict,
            rec.reason
        );
    }
    Ok(())
}

fn no_failures(r: &Report) -> Outcome {
    ensure!(r.passed(), "{} {} has failures:\n{}", r.algebra, r.suite, r.to_text());
    Ok(())
}

fn criterion_1() -> Outcome {
    for name in catalog::names() {
        let r = suite(name, "eq1");
        no_failures(&r)?;
        all_pass(&r, "eq1.formula")?;
        all_pass(&r, "eq1.seed-independence")?;
    }
    // Heisenberg over GF(3): two split trivial factors and a non-split center.
    let h = modular("heisenberg_gf3");
    let s = series(&h);
    let triv = Representation::trivial(&h.algebra, 1);
    let check = chief::multiplicity_check(&s, &triv).map_err(|e| e.to_string())?;
    ensure!(
        (check.split, check.h1, check.h1_mod_ann, check.end_dim) == (2, 2, 0, 1),
        "heisenberg: {check:?}"
    );
    for k in 0..10 {
        let other = chief::chief_series(&h.algebra, k, &Limits::default()).unwrap();
        ensure!(other.split_multiplicity(&triv).unwrap() == 2, "heisenberg seed {k}");
    }
    let sl2 = modular("sl2_gf5");
    let l3 = module(&sl2, "L(3)");
    for k in 0..10 {
        let other = chief::chief_series(&sl2.algebra, k, &Limits::default()).unwrap();
        ensure!(other.split_multiplicity(&l3).unwrap() == 0, "sl2 seed {k}");
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let expected = [
        ("abelian_1_gf3", 1),
        ("abelian_2_gf2", 2),
        ("torus_1_gf5", 1),
        ("l2_gf3", 1),
        ("l2_gf5", 1),
        ("heisenberg_gf3", 2),
        ("sl2_gf5", 0),
        ("sl2_q", 0),
        ("borel2_q", 1),
        ("psl3_gf3", 0),
        ("der_psl3_gf3", 0),
        ("l2xu_gf5", 2),
    ];
    assert_eq!(expected.len(), catalog::names().len());
    fn one<F: Field>(spec: &AlgebraSpec<F>, want: usize) -> Outcome {
        let l = &spec.algebra;
        let abel = l.dim() - l.derived_algebra().dim();
        let split = series(spec).split_multiplicity(&Representation::trivial(l, 1)).unwrap();
        ensure!(split == abel && split == want, "{}: split {split}, dim L/[L,L] {abel}", spec.name);
        Ok(())
    }
    for (name, want) in expected {
        match catalog::entry(name).unwrap() {
            AnySpec::Modular(s) => one(&s, want)?,
            AnySpec::Rational(s) => one(&s, want)?,
        }
        all_pass(&suite(name, "eq1"), "eq1.trivial-split")?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for name in catalog::names() {
        let rational = matches!(catalog::entry(name).unwrap(), AnySpec::Rational(_));
        if rational || is_solvable(name) {
            let r = suite(name, "solv");
            no_failures(&r)?;
            all_pass(&r, "solv.identity")?;
        }
    }
    let q = rational("sl2_q");
    let s = series(&q);
    for v in ["V(0)", "V(2)", "V(4)"] {
        let m = module(&q, v);
        let h1 = cohomology::h1_dim(&m).unwrap();
        let e = liechief::rep::end_dim(&m).unwrap();
        let split = s.split_multiplicity(&m).unwrap();
        ensure!(h1 == 0 && h1 == e * split, "sl2_q {v}: h1 {h1}, end {e}, split {split}");
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let q = rational("sl2_q");
    let ad = Representation::adjoint(&q.algebra);
    ensure!(ad.annihilator().is_zero(), "adjoint is not faithful");
    for n in 0..3 {
        let c = cohomology::cohomology(&ad, n).unwrap();
        ensure!(c.dim_f == 0, "H^{n}(sl2, sl2) = {}", c.dim_f);
    }
    let r = suite("sl2_q", "char0");
    no_failures(&r)?;
    all_pass(&r, "char0.vanishing")?;
    all_pass(&r, "char0.identity")
}

fn criterion_5() -> Outcome {
    let (der, inner) = catalog::der_psl3_gf3().unwrap();
    let (count, list) = chief::minimal_ideals(&der, SEED, &Limits::default(), 8).unwrap();
    ensure!(count == 1, "{count} minimal ideals");
    let ideal = &list.unwrap()[0];
    ensure!(ideal.space() == &inner, "minimal ideal is not the inner derivations");
    let sub = Representation::adjoint(&der).submodule(ideal.space()).unwrap();
    let inv = cohomology::h1_with_outer_action(ideal, &sub).unwrap().invariants_dim;
    ensure!(inv == 0, "dim H^1(I,I)^L = {inv}");
    ensure!(der.derived_algebra().is_full(), "[L,L] != L");
    let r = suite("der_psl3_gf3", "remark-psl3");
    no_failures(&r)?;
    all_pass(&r, "remark-psl3.minimal-ideal")
}

fn triples() -> Vec<&'static str> {
    catalog::names()
        .iter()
        .copied()
        .filter(|n| matches!(catalog::entry(n).unwrap(), AnySpec::Modular(s) if !s.induction.is_empty()))
        .collect()
}

fn criterion_6() -> Outcome {
    let names = triples();
    ensure!(names.len() >= 4, "only {} induction triples", names.len());
    for name in names {
        let spec = modular(name);
        for seed in &spec.induction {
            let (setup, s) = seed.build(&spec.algebra).unwrap();
            let m = induction::truncated_induced(&setup, &s).unwrap();
            ensure!(m.module.dim() == s.dim() * spec.algebra.field().p() as usize, "{name}: dim");
            let rep = induction::filtration_factor_check(&m, SEED, &Limits::default()).unwrap();
            ensure!(rep.passes(), "{name}: {rep:?}");
            ensure!(rep.t_steps.iter().all(|&b| b), "{name}: t-steps {:?}", rep.t_steps);
        }
        let r = suite(name, "clifford");
        all_pass(&r, "clifford.induced")?;
        all_pass(&r, "clifford.coinduced")?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in triples() {
        all_pass(&suite(name, "shapiro"), "shapiro.dimension")?;
    }
    let spec = modular("l2_gf5");
    let (setup, s) = spec.induction[0].build(&spec.algebra).unwrap();
    let r = induction::shapiro_check(&setup, &s, SEED).unwrap();
    ensure!(r.holds() && r.h1_coinduced == 2, "l2_gf5: {r:?}");
    Ok(())
}

fn criterion_8() -> Outcome {
    let sl2 = modular("sl2_gf5");
    let irr = restricted::restricted_irreducibles(&sl2.algebra, SEED, &Limits::default()).unwrap();
    let (i, h) = chief::find_nonvanishing_module(&irr).unwrap().ok_or("no module found")?;
    let mut reg = ClassRegistry::new(sl2.modules.clone());
    let idx = reg.classify(&irr[i]).unwrap();
    ensure!(reg.name(idx) == "L(3)" && h == 2, "found {} with {h}", reg.name(idx));

    let r = suite("sl2_gf5", "charsolv");
    no_failures(&r)?;
    let verdict = r.find("charsolv.verdict").next().ok_or("no verdict")?;
    ensure!(
        verdict.detail.iter().any(|d| d.starts_with("non-solvable certified")),
        "verdict {:?}",
        verdict.detail
    );
    ensure!(
        verdict.values["iii_fails_at"].as_array().unwrap().contains(&Value::from("L(3)")),
        "(iii) does not fail at L(3)"
    );
    let iii = r.find("charsolv.iii").find(|x| x.inputs["S"] == "L(3)").ok_or("no L(3) record")?;
    ensure!(iii.values["holds"] == false, "(iii) holds at L(3)");

    for name in catalog::names().iter().filter(|n| is_solvable(n)) {
        if matches!(catalog::entry(name).unwrap(), AnySpec::Rational(_)) {
            continue;
        }
        let r = suite(name, "charsolv");
        all_pass(&r, "charsolv.ii")?;
        all_pass(&r, "charsolv.iii")?;
        all_pass(&r, "charsolv.verdict")?;
        all_pass(&r, "charsolv.nonvanishing")?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let sl2 = modular("sl2_gf5");
    let l3 = module(&sl2, "L(3)");
    let layer = restricted::second_loewy_multiplicity(&l3).unwrap();
    let split = series(&sl2).split_multiplicity(&l3).unwrap();
    ensure!(layer == 2 && split == 0, "layer {layer}, split {split}");
    let r = suite("sl2_gf5", "loewy");
    no_failures(&r)?;
    ensure!(
        r.to_text().lines().any(|l| l.trim() == "L(3): second-layer 2 ≥ split 0 (strict)"),
        "missing loewy line"
    );
    Ok(())
}

fn criterion_10() -> Outcome {
    let l2 = modular("l2_gf5");
    let triv = Representation::trivial(&l2.algebra, 1);
    let layer = restricted::second_loewy_multiplicity(&triv).unwrap();
    let split = series(&l2).split_multiplicity(&triv).unwrap();
    ensure!(layer == 0 && split == 1, "layer {layer}, split {split}");
    Ok(())
}

fn criterion_11() -> Outcome {
    for name in catalog::names().iter().filter(|n| is_restricted(n)) {
        let r = suite(name, "llpim");
        no_failures(&r)?;
        all_pass(&r, "llpim.trivial")?;
        if is_solvable(name) {
            let nontrivial = r.find("llpim.nontrivial").count();
            if nontrivial > 0 {
                all_pass(&r, "llpim.nontrivial")?;
            }
        }
    }
    let l2 = modular("l2_gf5");
    ensure!(restricted::p_image_mod_derived(&l2.algebra).unwrap() == 1, "p-image of l2_gf5");
    let h = modular("heisenberg_gf3");
    ensure!(restricted::p_image_mod_derived(&h.algebra).unwrap() == 0, "p-image of heisenberg_gf3");
    Ok(())
}

fn criterion_12() -> Outcome {
    for name in catalog::names().iter().filter(|n| is_restricted(n)) {
        let r = suite(name, "chiefpriblo");
        all_pass(&r, "chiefpriblo.factor")?;
    }
    Ok(())
}

fn criterion_13() -> Outcome {
    const CONDITIONS: [&str; 8] = ["ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"];
    for name in catalog::names().iter().filter(|n| is_restricted(n) && is_solvable(n)) {
        let r = suite(name, "pim");
        for c in CONDITIONS {
            let check = format!("pim.{c}");
            all_pass(&r, &check)?;
            let rec = r.find(&check).next().unwrap();
            ensure!(rec.values["holds"] == true, "{name}: ({c}) does not hold");
        }
    }
    let r = suite("sl2_gf5", "pim");
    no_failures(&r)?;
    let viii = r.find("pim.viii").next().ok_or("no (viii)")?;
    ensure!(viii.values["holds"] == false, "(viii) holds for sl2");
    ensure!(viii.values["witnesses"] == serde_json::json!(["L(3)"]), "witnesses {:?}", viii.values["witnesses"]);
    ensure!(viii.detail.iter().any(|d| d == "L(3): second-layer 2, split 0"), "detail {:?}", viii.detail);
    Ok(())
}

fn criterion_14() -> Outcome {
    for (name, total) in [("l2_gf5", 25), ("sl2_gf5", 125)] {
        let spec = modular(name);
        let d = restricted::regular_decomposition(&spec.algebra, SEED, &Limits::default()).unwrap();
        ensure!(d.u_dim == total && d.weighted_total() == total, "{name}: {}", d.weighted_total());
        ensure!(d.irreducibles.len() == 5, "{name}: {} irreducibles", d.irreducibles.len());
    }
    Ok(())
}

fn d_squared_everywhere<F: Field>(spec: &AlgebraSpec<F>) -> Outcome {
    const MAX_ENTRIES: usize = 2_000_000;
    let l = &spec.algebra;
    let mut mods = vec![Representation::adjoint(l), Representation::trivial(l, 1)];
    mods.extend(spec.modules.iter().map(|(_, m)| m.clone()));
    for m in &mods {
        for n in 0..l.dim() {
            let a = cohomology::cochain_dim(l.dim(), m.dim(), n + 1);
            let b = cohomology::cochain_dim(l.dim(), m.dim(), n + 2);
            if a * b > MAX_ENTRIES || (n + 1 > 2 && l.dim() > cohomology::MAX_HIGH_DEGREE_DIM) {
                break;
            }
            ensure!(cohomology::d_squared_vanishes(m, n).unwrap(), "{}: d^2 != 0 in degree {n}", spec.name);
        }
    }
    Ok(())
}

fn matrix_properties<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Outcome {
    for case in 0..1000 {
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let a = Mat::from_fn(f, r, c, |_, _| f.from_i64(rng.gen_range(-3..=3)));
        let rank = a.rank();
        let ker = a.kernel();
        ensure!(rank + ker.dim() == c, "case {case}: rank-nullity");
        ensure!(rank == a.transpose().rank(), "case {case}: row rank != column rank");
        for v in ker.vectors() {
            ensure!(a.mul_vec(&v).iter().all(|x| *x == f.zero()), "case {case}: kernel vector");
        }
        let x: Vec<_> = (0..c).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).map_err(|e| e.to_string())?.ok_or(format!("case {case}: consistent system unsolved"))?;
        ensure!(a.mul_vec(&y) == b, "case {case}: solve");
        if r == c {
            match a.inverse() {
                Some(inv) => ensure!(a.mul(&inv) == Mat::identity(f, r) && rank == r, "case {case}: inverse"),
                None => ensure!(rank < r, "case {case}: singular but full rank"),
            }
        }
    }
    Ok(())
}

fn criterion_15() -> Outcome {
    for name in catalog::names() {
        match catalog::entry(name).unwrap() {
            AnySpec::Modular(s) => d_squared_everywhere(&s)?,
            AnySpec::Rational(s) => d_squared_everywhere(&s)?,
        }
        let r = suite(name, "structure");
        no_failures(&r)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for p in [2, 3, 5, 65521] {
        matrix_properties(&Fp::new(p).unwrap(), &mut rng)?;
    }
    matrix_properties(&Rationals, &mut rng)
}

/// Every catalog algebra passes `all` with zero failures.
fn catalog_all() -> Outcome {
    for name in catalog::names() {
        let r = suite(name, "all");
        no_failures(&r)?;
        ensure!(r == suite(name, "all"), "{name}: report not deterministic");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 16] = [
        ("1 multiplicity formula and seed independence", criterion_1),
        ("2 trivial split count equals dim L/[L,L]", criterion_2),
        ("3 H^1 = end_dim * split for solvable and characteristic 0", criterion_3),
        ("4 cohomology of sl2 over Q vanishes in degrees 0..2", criterion_4),
        ("5 der(psl3) minimal ideal", criterion_5),
        ("6 truncated induced filtration", criterion_6),
        ("7 Shapiro dimension", criterion_7),
        ("8 solvability certification", criterion_8),
        ("9 sl2 second Loewy layer at L(3)", criterion_9),
        ("10 trivial module second Loewy layer", criterion_10),
        ("11 second Loewy layer formula", criterion_11),
        ("12 abelian chief factors in the principal block", criterion_12),
        ("13 projective cover conditions", criterion_13),
        ("14 regular module bookkeeping", criterion_14),
        ("15 d^2 = 0 and matrix properties", criterion_15),
        ("catalog passes all suites", catalog_all),
    ];
    let mut failed = Vec::new();
    for (label, run) in criteria {
        match run() {
            Ok(()) => println!("PASS criterion {label}"),
            Err(e) => {
                println!("FAIL criterion {label}: {e}");
                failed.push(label);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
