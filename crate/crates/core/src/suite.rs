//! Verification suites run against an algebra file.

use std::cell::{OnceCell, RefCell};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chief::{self, ChiefSeries};
use crate::classes::ClassRegistry;
use crate::cohomology;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::format::{AlgebraSpec, AnySpec};
use crate::induction;
use crate::lie::LieAlgebra;
use crate::rep::{end_dim, Representation};
use crate::report::{CheckRecord, Report};
use crate::restricted::{self, BlockPartition, RegularDecomposition, UAlg};
use crate::Limits;

pub const SUITES: &[&str] = &[
    "structure",
    "eq1",
    "solv",
    "char0",
    "charsolv",
    "clifford",
    "shapiro",
    "loewy",
    "llpim",
    "blocks",
    "chiefpriblo",
    "pim",
    "remark-psl3",
];

/// Number of reseeded chief series compared for seed independence.
pub const RESEEDS: u64 = 10;
/// Number of reseeded decompositions compared for block stability.
pub const BLOCK_RESEEDS: u64 = 5;

pub fn run_suite(spec: &AnySpec, suite: &str, seed: u64, limits: &Limits) -> Result<Report> {
    if suite != "all" && !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    Ok(match spec {
        AnySpec::Modular(s) => run(s, suite, seed, limits),
        AnySpec::Rational(s) => run(s, suite, seed, limits),
    })
}

fn run<F: Field>(spec: &AlgebraSpec<F>, suite: &str, seed: u64, limits: &Limits) -> Report {
    let f = spec.algebra.field();
    let field = if f.characteristic() == 0 {
        "Q".to_string()
    } else {
        format!("GF({})", f.characteristic())
    };
    let mut report = Report::new(suite, &spec.name, &field, seed);
    let ctx = Ctx::new(spec, seed, limits);
    let list: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    for s in list {
        let records = match s {
            "structure" => ctx.structure(),
            "eq1" => ctx.eq1(),
            "solv" => ctx.solv(),
            "char0" => ctx.char0(),
            "charsolv" => ctx.charsolv(),
            "clifford" => ctx.clifford(),
            "shapiro" => ctx.shapiro(),
            "loewy" => ctx.loewy(),
            "llpim" => ctx.llpim(),
            "blocks" => ctx.blocks_suite(),
            "chiefpriblo" => ctx.chiefpriblo(),
            "pim" => ctx.pim(),
            "remark-psl3" => ctx.remark(),
            _ => unreachable!(),
        };
        report.records.extend(records);
    }
    for n in ctx.notes.into_inner() {
        report.note(n);
    }
    report
}

/// A failed computation: scale and field limitations become skips,
/// everything else a failure.
#[derive(Clone, Debug)]
struct Problem {
    skip: bool,
    msg: String,
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        let skip = matches!(e, Error::ScaleGuard { .. } | Error::Unsupported(_));
        Problem { skip, msg: e.to_string() }
    }
}

impl Problem {
    fn skip(msg: impl Into<String>) -> Self {
        Problem {
            skip: true,
            msg: msg.into(),
        }
    }

    fn apply(&self, rec: CheckRecord) -> CheckRecord {
        if self.skip {
            rec.skip(&self.msg)
        } else {
            rec.fail(&self.msg)
        }
    }
}

type Out<T> = std::result::Result<T, Problem>;

/// An irreducible module from the scanned set with the quantities every
/// suite needs.
#[derive(Clone, Debug)]
struct Scanned<F: Field> {
    name: String,
    rep: Representation<F>,
    trivial: bool,
    faithful: bool,
    split: usize,
    end_dim: usize,
    h1: usize,
    h1_mod_ann: usize,
}

#[derive(Clone, Debug)]
struct Layer<F: Field> {
    name: String,
    rep: Representation<F>,
    layer: usize,
    split: usize,
}

#[derive(Clone, Debug)]
struct RestrictedData<F: Field> {
    decomposition: RegularDecomposition<F>,
    names: Vec<String>,
    blocks: BlockPartition,
}

struct Ctx<'a, F: Field> {
    spec: &'a AlgebraSpec<F>,
    alg: &'a Arc<LieAlgebra<F>>,
    seed: u64,
    limits: &'a Limits,
    registry: RefCell<ClassRegistry<F>>,
    notes: RefCell<Vec<String>>,
    chief: OnceCell<Out<ChiefSeries<F>>>,
    restricted: OnceCell<Out<RestrictedData<F>>>,
    scan: OnceCell<Out<Vec<Scanned<F>>>>,
}

fn yes(b: bool) -> Value {
    Value::Bool(b)
}

impl<'a, F: Field> Ctx<'a, F> {
    fn new(spec: &'a AlgebraSpec<F>, seed: u64, limits: &'a Limits) -> Self {
        Ctx {
            spec,
            alg: &spec.algebra,
            seed,
            limits,
            registry: RefCell::new(ClassRegistry::new(spec.modules.clone())),
            notes: RefCell::new(Vec::new()),
            chief: OnceCell::new(),
            restricted: OnceCell::new(),
            scan: OnceCell::new(),
        }
    }

    fn f(&self) -> &F {
        self.alg.field()
    }

    fn modular(&self) -> bool {
        self.f().characteristic() > 0
    }

    fn note(&self, s: &str) {
        let mut n = self.notes.borrow_mut();
        if !n.iter().any(|x| x == s) {
            n.push(s.to_string());
        }
    }

    fn name_of(&self, rep: &Representation<F>) -> Out<String> {
        let mut reg = self.registry.borrow_mut();
        let idx = reg.classify(rep)?;
        Ok(reg.name(idx).to_string())
    }

    fn chief_for(&self, seed: u64) -> Out<ChiefSeries<F>> {
        if self.modular() {
            Ok(chief::chief_series(self.alg, seed, self.limits)?)
        } else {
            let Some(chain) = &self.spec.chain else {
                return Err(Problem::skip("a chief series over Q needs a declared chain"));
            };
            self.note("chief factors over Q are certified by randomized spinning of 20 vectors");
            Ok(chief::declared_chief_series(self.alg, chain.clone(), seed, self.limits)?)
        }
    }

    fn chief(&self) -> Out<&ChiefSeries<F>> {
        self.chief.get_or_init(|| self.chief_for(self.seed)).as_ref().map_err(Clone::clone)
    }

    fn restricted_data(&self) -> Out<&RestrictedData<F>> {
        self.restricted
            .get_or_init(|| {
                if !self.modular() {
                    return Err(Problem::skip("characteristic 0"));
                }
                if !self.alg.is_restricted() {
                    return Err(Problem::skip("no p-map"));
                }
                self.note("restricted irreducibles are the composition factors of the regular u(L)-module");
                let decomposition = restricted::regular_decomposition(self.alg, self.seed, self.limits)?;
                let names = decomposition
                    .irreducibles
                    .iter()
                    .map(|(s, _)| self.name_of(s))
                    .collect::<Out<Vec<_>>>()?;
                let reps: Vec<_> = decomposition.irreducibles.iter().map(|(s, _)| s.clone()).collect();
                let blocks = restricted::blocks(&reps)?;
                Ok(RestrictedData {
                    decomposition,
                    names,
                    blocks,
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Adjoint chief factors, the trivial module, the restricted
    /// irreducibles when in scale, and the declared modules, one per class.
    fn scan(&self) -> Out<&Vec<Scanned<F>>> {
        self.scan
            .get_or_init(|| {
                let series = self.chief()?;
                let mut candidates: Vec<Representation<F>> =
                    series.factors.iter().map(|x| x.module.clone()).collect();
                candidates.push(Representation::trivial(self.alg, 1));
                if let Ok(r) = self.restricted_data() {
                    candidates.extend(r.decomposition.irreducibles.iter().map(|(s, _)| s.clone()));
                } else if self.modular() && self.alg.is_restricted() {
                    self.note("restricted irreducibles beyond scale; scanned set is chief factors, trivial and declared modules");
                }
                candidates.extend(self.spec.modules.iter().map(|(_, m)| m.clone()));
                let mut out: Vec<Scanned<F>> = Vec::new();
                for rep in candidates {
                    let name = self.name_of(&rep)?;
                    if out.iter().any(|s| s.name == name) {
                        continue;
                    }
                    out.push(Scanned {
                        trivial: rep.is_trivial(),
                        faithful: rep.annihilator().is_zero(),
                        split: series.split_multiplicity(&rep)?,
                        end_dim: end_dim(&rep)?,
                        h1: cohomology::h1_dim(&rep)?,
                        h1_mod_ann: chief::h1_mod_annihilator(&rep)?,
                        name,
                        rep,
                    });
                }
                Ok(out)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn structure(&self) -> Vec<CheckRecord> {
        let alg = self.alg;
        let mut out = vec![CheckRecord::new("structure.jacobi", "structure constants define a Lie algebra")
            .value("dim", alg.dim())
            .value("labels", alg.labels().join(","))];
        let pm = CheckRecord::new("structure.pmap", "the p-map satisfies the restricted axioms");
        out.push(if !self.modular() {
            pm.skip("characteristic 0")
        } else if !alg.is_restricted() {
            pm.skip("no p-map")
        } else {
            match restricted::check_pmap_axioms(alg) {
                Ok(()) => pm,
                Err(e) => pm.fail(e.to_string()),
            }
        });
        for (name, m) in &self.spec.modules {
            let rec = CheckRecord::new("structure.module", "declared module is a representation").input("module", name.as_str());
            let rec = rec.value("dim", m.dim());
            out.push(if alg.is_restricted() {
                rec.value("restricted", yes(m.is_restricted())).expect(m.is_restricted())
            } else {
                rec
            });
        }
        let s = alg.series();
        out.push(
            CheckRecord::new("structure.series", "derived and lower central series")
                .value("derived", json!(s.derived.iter().map(|x| x.dim()).collect::<Vec<_>>()))
                .value("lower_central", json!(s.lower_central.iter().map(|x| x.dim()).collect::<Vec<_>>()))
                .value("solvable", yes(s.is_solvable))
                .value("nilpotent", yes(s.is_nilpotent)),
        );
        let degrees: &[usize] = if alg.dim() <= cohomology::MAX_HIGH_DEGREE_DIM { &[0, 1, 2] } else { &[0] };
        for (label, rep) in [("adjoint", Representation::adjoint(alg)), ("trivial", Representation::trivial(alg, 1))] {
            for &n in degrees {
                let rec = CheckRecord::new("structure.d-squared", "d∘d = 0 on cochains")
                    .input("module", label)
                    .input("degree", n);
                out.push(match cohomology::d_squared_vanishes(&rep, n) {
                    Ok(ok) => rec.expect(ok),
                    Err(e) => Problem::from(e).apply(rec),
                });
            }
        }
        let rec = CheckRecord::new("structure.u-algebra", "u(L) is associative with x^p = x^[p]");
        out.push(if !self.modular() || !alg.is_restricted() {
            rec.skip(if self.modular() { "no p-map" } else { "characteristic 0" })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            match UAlg::new(alg, self.limits).and_then(|u| u.spot_check(&mut rng, 20).map(|_| u.dim())) {
                Ok(d) => rec.value("dim", d),
                Err(e) => Problem::from(e).apply(rec),
            }
        });
        out
    }

    fn eq1(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str = "[L:S]_split = dim_D H^1(L,S) - dim_D H^1(L/ann_L(S),S)";
        let mut out = Vec::new();
        let series = match self.chief() {
            Ok(s) => s,
            Err(p) => return vec![p.apply(CheckRecord::new("eq1.formula", ANCHOR))],
        };
        for (j, fac) in series.factors.iter().enumerate() {
            let Some(sp) = &fac.splitting else { continue };
            let name = self.name_of(&fac.module).unwrap_or_default();
            let mut rec = CheckRecord::new("eq1.split-witness", "a split factor has a complementing subalgebra")
                .input("factor", j)
                .value("module", name.as_str())
                .value("dim", fac.module.dim())
                .value("split", yes(sp.splits));
            if let Some(w) = &sp.complement {
                rec = rec.value("complement_dim", w.dim());
            }
            out.push(rec);
        }
        match self.scan() {
            Ok(scan) => {
                for s in scan {
                    let check = chief::MultiplicityCheck {
                        split: s.split,
                        end_dim: s.end_dim,
                        h1: s.h1,
                        h1_mod_ann: s.h1_mod_ann,
                    };
                    out.push(
                        CheckRecord::new("eq1.formula", ANCHOR)
                            .input("S", s.name.as_str())
                            .value("split", s.split)
                            .value("end_dim", s.end_dim)
                            .value("h1", s.h1)
                            .value("h1_mod_ann", s.h1_mod_ann)
                            .expect(check.holds()),
                    );
                }
                let triv = scan.iter().find(|s| s.trivial && s.rep.dim() == 1);
                let abel = self.alg.dim() - self.alg.derived_algebra().dim();
                if let Some(t) = triv {
                    out.push(
                        CheckRecord::new("eq1.trivial-split", "[L:F]_split = dim L/[L,L]")
                            .value("split", t.split)
                            .value("dim_L_mod_derived", abel)
                            .expect(t.split == abel),
                    );
                }
            }
            Err(p) => out.push(p.apply(CheckRecord::new("eq1.formula", ANCHOR))),
        }
        out.push(self.seed_independence(series));
        out
    }

    fn signature(&self, series: &ChiefSeries<F>) -> Out<Vec<(String, bool, Option<bool>)>> {
        let mut sig = series
            .factors
            .iter()
            .map(|x| Ok((self.name_of(&x.module)?, x.is_abelian, x.is_split())))
            .collect::<Out<Vec<_>>>()?;
        sig.sort();
        Ok(sig)
    }

    fn seed_independence(&self, series: &ChiefSeries<F>) -> CheckRecord {
        let rec = CheckRecord::new(
            "eq1.seed-independence",
            "chief factors and split counts do not depend on the chief series",
        );
        let run = || -> Out<(usize, bool)> {
            let base = self.signature(series)?;
            let mut same = true;
            for k in 1..RESEEDS {
                let other = self.chief_for(self.seed.wrapping_add(k))?;
                same &= self.signature(&other)? == base;
            }
            Ok((RESEEDS as usize, same))
        };
        match run() {
            Ok((n, same)) => rec.value("seeds", n).expect(same),
            Err(p) => p.apply(rec),
        }
    }

    fn identity_records(&self, id: &str, anchor: &str, record_only: bool) -> Vec<CheckRecord> {
        match self.scan() {
            Ok(scan) => scan
                .iter()
                .map(|s| {
                    let holds = s.h1 == s.end_dim * s.split;
                    let rec = CheckRecord::new(id, anchor)
                        .input("S", s.name.as_str())
                        .value("h1", s.h1)
                        .value("end_dim", s.end_dim)
                        .value("split", s.split)
                        .value("holds", yes(holds));
                    if record_only {
                        rec
                    } else {
                        rec.expect(holds)
                    }
                })
                .collect(),
            Err(p) => vec![p.apply(CheckRecord::new(id, anchor))],
        }
    }

    fn solv(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str = "dim H^1(L,S) = dim End_L(S) * [L:S]_split";
        if !self.modular() {
            return self.identity_records("solv.identity", ANCHOR, false);
        }
        if self.alg.is_solvable() {
            return self.identity_records("solv.identity", ANCHOR, false);
        }
        let mut out = self.identity_records("solv.scan", ANCHOR, true);
        let violators: Vec<String> = out
            .iter()
            .filter(|r| r.values.get("holds") == Some(&Value::Bool(false)))
            .filter_map(|r| r.inputs.get("S").and_then(|v| v.as_str()).map(String::from))
            .collect();
        let rec = CheckRecord::new("solv.violation", "a non-solvable algebra violates the identity for some S")
            .value("violators", json!(violators));
        out.push(if violators.is_empty() {
            rec.skip("no violating module among the scanned set")
        } else {
            rec
        });
        out
    }

    fn char0(&self) -> Vec<CheckRecord> {
        const VANISH: &str = "H^0 = H^1 = H^2 = 0 for a faithful irreducible module in characteristic 0";
        if self.modular() {
            return vec![CheckRecord::new("char0.vanishing", VANISH).skip("positive characteristic")];
        }
        let mut out = Vec::new();
        match self.scan() {
            Ok(scan) => {
                for s in scan.iter().filter(|s| s.faithful && !s.trivial) {
                    let rec = CheckRecord::new("char0.vanishing", VANISH).input("S", s.name.as_str());
                    let dims = (0..3)
                        .map(|n| cohomology::cohomology(&s.rep, n).map(|c| c.dim_f))
                        .collect::<Result<Vec<_>>>();
                    out.push(match dims {
                        Ok(d) => rec.value("dims", json!(d)).expect(d.iter().all(|&x| x == 0)),
                        Err(e) => Problem::from(e).apply(rec),
                    });
                }
            }
            Err(p) => out.push(p.apply(CheckRecord::new("char0.vanishing", VANISH))),
        }
        out.extend(self.identity_records(
            "char0.identity",
            "characteristic 0: dim H^1(L,S) = dim End_L(S) * [L:S]_split",
            false,
        ));
        out
    }

    fn charsolv(&self) -> Vec<CheckRecord> {
        const II: &str = "solvable iff H^1(L/ann_L(S),S) = 0 for every irreducible S";
        const III: &str = "solvable iff dim H^1(L,S) = dim End_L(S) * [L:S]_split for every irreducible S";
        if !self.modular() {
            return vec![CheckRecord::new("charsolv.verdict", II)
                .skip("the conditions hold for every algebra in characteristic 0")];
        }
        let solvable = self.alg.is_solvable();
        let scan = match self.scan() {
            Ok(s) => s,
            Err(p) => return vec![p.apply(CheckRecord::new("charsolv.verdict", II))],
        };
        let mut out = Vec::new();
        let (mut fail_ii, mut fail_iii) = (Vec::new(), Vec::new());
        for s in scan {
            let ii = s.h1_mod_ann == 0;
            let iii = s.h1 == s.end_dim * s.split;
            if !ii {
                fail_ii.push(s.name.clone());
            }
            if !iii {
                fail_iii.push(s.name.clone());
            }
            let a = CheckRecord::new("charsolv.ii", II)
                .input("S", s.name.as_str())
                .value("h1_mod_ann", s.h1_mod_ann)
                .value("holds", yes(ii));
            let b = CheckRecord::new("charsolv.iii", III)
                .input("S", s.name.as_str())
                .value("h1", s.h1)
                .value("end_dim", s.end_dim)
                .value("split", s.split)
                .value("holds", yes(iii));
            if solvable {
                out.push(a.expect(ii));
                out.push(b.expect(iii));
            } else {
                out.push(a);
                out.push(b);
            }
        }
        let verdict = CheckRecord::new("charsolv.verdict", "L is solvable iff (ii) iff (iii)")
            .value("solvable", yes(solvable))
            .value("ii_fails_at", json!(fail_ii))
            .value("iii_fails_at", json!(fail_iii));
        out.push(if solvable {
            let ok = fail_ii.is_empty() && fail_iii.is_empty();
            verdict.expect(ok).line("solvable: (ii) and (iii) hold on the scanned set")
        } else if !fail_ii.is_empty() && !fail_iii.is_empty() {
            verdict.line(format!(
                "non-solvable certified: (ii) fails at {}, (iii) fails at {}",
                fail_ii.join(","),
                fail_iii.join(",")
            ))
        } else if fail_ii.is_empty() && fail_iii.is_empty() {
            verdict.skip("search exhausted: no witness among the scanned modules")
        } else {
            verdict.fail("(ii) and (iii) disagree on the scanned set")
        });
        out.push(self.nonvanishing(solvable));
        out
    }

    fn nonvanishing(&self, solvable: bool) -> CheckRecord {
        let rec = CheckRecord::new(
            "charsolv.nonvanishing",
            "a non-solvable algebra has an irreducible S with H^1(L/ann_L(S),S) != 0",
        );
        // Chief factors of a restricted algebra are restricted, so the
        // scanned set stands in when the regular module is out of scale.
        let (reps, names): (Vec<_>, Vec<_>) = match (self.restricted_data(), self.scan()) {
            (Ok(d), _) => d
                .decomposition
                .irreducibles
                .iter()
                .map(|(s, _)| s.clone())
                .zip(d.names.iter().cloned())
                .unzip(),
            (Err(_), Ok(scan)) => scan.iter().map(|s| (s.rep.clone(), s.name.clone())).unzip(),
            (Err(p), Err(_)) => return p.apply(rec),
        };
        match chief::find_nonvanishing_module(&reps) {
            Ok(Some((i, h))) => rec
                .value("module", names[i].as_str())
                .value("h1_mod_ann", h)
                .expect(!solvable),
            Ok(None) if solvable => rec.value("module", Value::Null),
            Ok(None) => rec.skip("search exhausted: no module among the candidates"),
            Err(e) => Problem::from(e).apply(rec),
        }
    }

    fn seeds(&self, id: &str, anchor: &str) -> Option<CheckRecord> {
        if self.spec.induction.is_empty() {
            return Some(CheckRecord::new(id, anchor).skip("no induction seeds declared"));
        }
        self.note("truncated induction is the restricted specialization u(L) ⊗_{u(I)} S");
        None
    }

    fn clifford(&self) -> Vec<CheckRecord> {
        const IND: &str = "t-filtration of the induced module has graded pieces ≅ S and t: gr^n → gr^(n+1) is an isomorphism";
        const COIND: &str = "every I-composition factor of the coinduced module is ≅ S";
        if let Some(r) = self.seeds("clifford.induced", IND) {
            return vec![r];
        }
        let mut out = Vec::new();
        for seed in &self.spec.induction {
            let rec = CheckRecord::new("clifford.induced", IND).input("S", seed.name.as_str());
            let rec2 = CheckRecord::new("clifford.coinduced", COIND).input("S", seed.name.as_str());
            let built = seed.build(self.alg);
            let (setup, s) = match built {
                Ok(x) => x,
                Err(e) => {
                    let p = Problem::from(e);
                    out.push(p.apply(rec));
                    out.push(p.apply(rec2));
                    continue;
                }
            };
            out.push(
                match induction::truncated_induced(&setup, &s)
                    .and_then(|m| induction::filtration_factor_check(&m, self.seed, self.limits).map(|r| (m, r)))
                {
                    Ok((m, r)) => rec
                        .value("dim", m.module.dim())
                        .value("stable", json!(r.stable))
                        .value("graded_isomorphic", json!(r.graded_isomorphic))
                        .value("t_steps", json!(r.t_steps))
                        .value("composition_factors", json!(r.composition_factors))
                        .expect(r.passes()),
                    Err(e) => Problem::from(e).apply(rec),
                },
            );
            out.push(
                match induction::truncated_coinduced(&setup, &s)
                    .and_then(|c| induction::factors_match_seed(&setup, &c, &s, self.seed, self.limits))
                {
                    Ok(v) => rec2.value("factors", json!(v)).expect(v.iter().all(|&b| b)),
                    Err(e) => Problem::from(e).apply(rec2),
                },
            );
        }
        out
    }

    fn shapiro(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str = "dim H^1(L, coind S) = dim H^1(I,S) + dim (L/I) ⊗ S^I";
        if let Some(r) = self.seeds("shapiro.dimension", ANCHOR) {
            return vec![r];
        }
        self.spec
            .induction
            .iter()
            .map(|seed| {
                let rec = CheckRecord::new("shapiro.dimension", ANCHOR).input("S", seed.name.as_str());
                match seed.build(self.alg).and_then(|(setup, s)| induction::shapiro_check(&setup, &s, self.seed)) {
                    Ok(r) => rec
                        .value("h1_coinduced", r.h1_coinduced)
                        .value("h1_ideal", r.h1_ideal)
                        .value("invariants", r.invariants)
                        .value("constructions_agree", yes(r.constructions_agree))
                        .expect(r.holds()),
                    Err(e) => Problem::from(e).apply(rec),
                }
            })
            .collect()
    }

    /// Restricted irreducibles with name, second-layer multiplicity and
    /// split count. When the regular module is out of scale the restricted
    /// modules of the scanned set stand in and the flag is false.
    fn layers(&self) -> Out<(Vec<Layer<F>>, bool)> {
        let series = self.chief()?;
        let (mods, complete): (Vec<(String, Representation<F>)>, bool) = match self.restricted_data() {
            Ok(d) => (
                d.names
                    .iter()
                    .cloned()
                    .zip(d.decomposition.irreducibles.iter().map(|(s, _)| s.clone()))
                    .collect(),
                true,
            ),
            Err(p) if p.skip && self.modular() && self.alg.is_restricted() => {
                self.note("regular module beyond scale; Loewy data computed for the restricted modules of the scanned set");
                let scan = self.scan()?;
                let mods = scan
                    .iter()
                    .filter(|s| s.rep.is_restricted())
                    .map(|s| (s.name.clone(), s.rep.clone()))
                    .collect();
                (mods, false)
            }
            Err(p) => return Err(p),
        };
        let layers = mods
            .into_iter()
            .map(|(name, s)| {
                Ok(Layer {
                    layer: restricted::second_loewy_multiplicity(&s)?,
                    split: series.split_multiplicity(&s)?,
                    name,
                    rep: s,
                })
            })
            .collect::<Out<Vec<_>>>()?;
        Ok((layers, complete))
    }

    fn loewy(&self) -> Vec<CheckRecord> {
        const BOUND: &str = "[second Loewy layer of P(F) : S] ≥ [L:S]_split for nontrivial S";
        let (layers, _) = match self.layers() {
            Ok(l) => l,
            Err(p) => return vec![p.apply(CheckRecord::new("loewy.bound", BOUND))],
        };
        let solvable = self.alg.is_solvable();
        let mut out = Vec::new();
        for l in &layers {
            let (name, layer, split) = (l.name.as_str(), l.layer, l.split);
            if l.rep.is_trivial() {
                out.push(
                    CheckRecord::new("loewy.trivial", "[second Loewy layer of P(F) : F] ≤ [L:F]_split")
                        .input("S", name)
                        .value("second_layer", layer)
                        .value("split", split)
                        .expect(layer <= split),
                );
                continue;
            }
            let strict = if layer > split { " (strict)" } else { "" };
            out.push(
                CheckRecord::new("loewy.bound", BOUND)
                    .input("S", name)
                    .value("second_layer", layer)
                    .value("split", split)
                    .line(format!("{name}: second-layer {layer} ≥ split {split}{strict}"))
                    .expect(layer >= split),
            );
            let rec = CheckRecord::new("loewy.six-term", "H^1_*(L,S) = H^1(L,S) for nontrivial irreducible S")
                .input("S", name);
            out.push(match restricted::six_term_consistency(&l.rep) {
                Ok((a, b)) => rec.value("restricted", a).value("ordinary", b).expect(a == b),
                Err(e) => Problem::from(e).apply(rec),
            });
            if solvable && split > 0 {
                out.push(
                    CheckRecord::new(
                        "loewy.split-solvable",
                        "solvable: a nontrivial split chief factor occurs in the second Loewy layer",
                    )
                    .input("S", name)
                    .value("second_layer", layer)
                    .expect(layer >= 1),
                );
            }
        }
        out
    }

    fn llpim(&self) -> Vec<CheckRecord> {
        const TRIV: &str = "[second Loewy layer of P(F) : F] = [L:F]_split - dim <L^[p]>/([L,L] ∩ <L^[p]>)";
        const NONTRIV: &str = "solvable: [second Loewy layer of P(F) : S] = [L:S]_split for S ≇ F";
        let (layers, complete) = match self.layers() {
            Ok(l) => l,
            Err(p) => return vec![p.apply(CheckRecord::new("llpim.trivial", TRIV))],
        };
        let mut out = Vec::new();
        let pimage = match restricted::p_image_mod_derived(self.alg) {
            Ok(x) => x,
            Err(e) => return vec![Problem::from(e).apply(CheckRecord::new("llpim.trivial", TRIV))],
        };
        let solvable = self.alg.is_solvable();
        for l in &layers {
            if l.rep.is_trivial() {
                out.push(
                    CheckRecord::new("llpim.trivial", TRIV)
                        .input("S", l.name.as_str())
                        .value("second_layer", l.layer)
                        .value("split", l.split)
                        .value("p_image", pimage)
                        .expect(l.layer as i64 == l.split as i64 - pimage as i64),
                );
            } else if solvable {
                out.push(
                    CheckRecord::new("llpim.nontrivial", NONTRIV)
                        .input("S", l.name.as_str())
                        .value("second_layer", l.layer)
                        .value("split", l.split)
                        .expect(l.layer == l.split),
                );
            }
        }
        if solvable && !complete {
            out.push(CheckRecord::new("llpim.nontrivial", NONTRIV).skip("restricted irreducibles beyond scale"));
        }
        out
    }

    fn blocks_suite(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str = "blocks are the connected components of the Ext^1 quiver";
        let data = match self.restricted_data() {
            Ok(d) => d,
            Err(p) => return vec![p.apply(CheckRecord::new("blocks.partition", ANCHOR))],
        };
        let b = &data.blocks;
        let named: Vec<Vec<&str>> = b
            .components
            .iter()
            .map(|c| c.iter().map(|&i| data.names[i].as_str()).collect())
            .collect();
        let mut out = vec![CheckRecord::new("blocks.partition", ANCHOR)
            .value("blocks", json!(named))
            .value("principal", json!(b.principal))
            .value("ext1", json!(b.ext1))
            .expect(b.principal.is_some())];
        let rec = CheckRecord::new("blocks.seed-independence", "the block partition does not depend on the seed");
        let run = || -> Out<bool> {
            let mut same = true;
            for k in 1..BLOCK_RESEEDS {
                let dec = restricted::regular_decomposition(self.alg, self.seed.wrapping_add(k), self.limits)?;
                let names = dec.irreducibles.iter().map(|(s, _)| self.name_of(s)).collect::<Out<Vec<_>>>()?;
                let reps: Vec<_> = dec.irreducibles.iter().map(|(s, _)| s.clone()).collect();
                let other = restricted::blocks(&reps)?;
                let rename = |bp: &BlockPartition, nm: &[String]| {
                    let mut v: Vec<Vec<String>> = bp
                        .components
                        .iter()
                        .map(|c| {
                            let mut x: Vec<String> = c.iter().map(|&i| nm[i].clone()).collect();
                            x.sort();
                            x
                        })
                        .collect();
                    v.sort();
                    v
                };
                same &= rename(&other, &names) == rename(b, &data.names);
            }
            Ok(same)
        };
        out.push(match run() {
            Ok(same) => rec.value("seeds", BLOCK_RESEEDS).expect(same),
            Err(p) => p.apply(rec),
        });
        out
    }

    fn chiefpriblo(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str = "every abelian chief factor belongs to the principal block";
        let run = || -> Out<Vec<CheckRecord>> {
            let series = self.chief()?;
            let abelian: Vec<_> = series.factors.iter().enumerate().filter(|(_, x)| x.is_abelian).collect();
            if abelian.is_empty() {
                return Ok(vec![CheckRecord::new("chiefpriblo.factor", ANCHOR)
                    .value("abelian_factors", 0)
                    .line("no abelian chief factors")]);
            }
            let data = self.restricted_data()?;
            let principal = data.blocks.principal.ok_or_else(|| Problem {
                skip: false,
                msg: "trivial module missing from the irreducibles".into(),
            })?;
            let mut out = Vec::new();
            for (j, fac) in abelian {
                let name = self.name_of(&fac.module)?;
                let idx = data.names.iter().position(|n| *n == name);
                let rec = CheckRecord::new("chiefpriblo.factor", ANCHOR)
                    .input("factor", j)
                    .value("module", name.as_str());
                out.push(match idx {
                    Some(i) => rec.expect(data.blocks.block_of(i) == principal),
                    None => rec.fail("chief factor is not among the restricted irreducibles"),
                });
            }
            Ok(out)
        };
        run().unwrap_or_else(|p| vec![p.apply(CheckRecord::new("chiefpriblo.factor", ANCHOR))])
    }

    fn pim(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str = "restricted L is solvable iff each condition holds for nontrivial restricted irreducibles";
        let run = || -> Out<Vec<CheckRecord>> {
            let (layers, complete) = self.layers()?;
            let blocks = self.restricted_data().ok().map(|d| &d.blocks);
            let solvable = self.alg.is_solvable();
            // (name, in principal block, values per condition ii..ix)
            let mut rows = Vec::new();
            for (i, l) in layers.iter().enumerate() {
                let s = &l.rep;
                if s.is_trivial() {
                    continue;
                }
                let (layer, split) = (l.layer, l.split);
                let e = end_dim(s)?;
                let h1 = cohomology::h1_dim(s)?;
                let h1a = chief::h1_mod_annihilator(s)?;
                let rh1 = restricted::restricted_h1(s)?.dim_f;
                let rh1a = restricted::restricted_h1_mod_annihilator(s)?;
                let in_principal = blocks.map(|b| b.principal == Some(b.block_of(i)));
                rows.push((l.name.clone(), in_principal, [
                    (h1a == 0, format!("H^1(L/ann,S) = {h1a}")),
                    (h1 == e * split, format!("H^1 = {h1}, end·split = {}", e * split)),
                    (rh1a == 0, format!("H^1_*(L/ann,S) = {rh1a}")),
                    (rh1 == e * split, format!("H^1_* = {rh1}, end·split = {}", e * split)),
                    (layer == split, format!("second-layer {layer}, split {split}")),
                ]));
            }
            // condition -> (index into the row values, principal block only)
            let conds = [
                ("ii", 0, false),
                ("iii", 1, false),
                ("iv", 2, false),
                ("v", 2, true),
                ("vi", 3, false),
                ("vii", 3, true),
                ("viii", 4, false),
                ("ix", 4, true),
            ];
            let mut out = Vec::new();
            for (label, k, principal_only) in conds {
                let mut rec = CheckRecord::new(format!("pim.{label}"), ANCHOR).value("solvable", yes(solvable));
                if principal_only && blocks.is_none() {
                    out.push(rec.skip("blocks need the restricted irreducibles, beyond scale"));
                    continue;
                }
                let mut holds = true;
                let mut witnesses = Vec::new();
                for (name, in_p, vals) in &rows {
                    if principal_only && *in_p != Some(true) {
                        continue;
                    }
                    let (ok, text) = &vals[k];
                    if !ok {
                        holds = false;
                        witnesses.push(name.clone());
                        rec = rec.line(format!("{name}: {text}"));
                    }
                }
                rec = rec.value("holds", yes(holds)).value("witnesses", json!(witnesses));
                out.push(if holds && !complete {
                    rec.skip("search exhausted on the scanned set")
                } else {
                    rec.expect(holds == solvable)
                });
            }
            Ok(out)
        };
        run().unwrap_or_else(|p| vec![p.apply(CheckRecord::new("pim.ii", ANCHOR))])
    }

    fn remark(&self) -> Vec<CheckRecord> {
        const ANCHOR: &str =
            "a unique minimal ideal I with H^1(I,I)^L = 0 does not force [L,L] ⊆ I";
        let rec = CheckRecord::new("remark-psl3.minimal-ideal", ANCHOR);
        if !self.modular() {
            return vec![rec.skip("minimal ideals are enumerated over finite fields only")];
        }
        let run = || -> Out<CheckRecord> {
            let (count, list) = chief::minimal_ideals(self.alg, self.seed, self.limits, 64)?;
            let rec = rec.clone().value("minimal_ideals", count.to_string());
            let Some(list) = list.filter(|_| count == 1) else {
                return Ok(rec.skip("no unique minimal ideal"));
            };
            let ideal = &list[0];
            let sub = Representation::adjoint(self.alg).submodule(ideal.space())?;
            if self.alg.bracket_spaces(ideal.space(), ideal.space()).is_zero() {
                return Ok(rec.value("ideal_dim", ideal.dim()).skip("the minimal ideal is abelian"));
            }
            let inv = cohomology::h1_with_outer_action(ideal, &sub)?.invariants_dim;
            let derived = self.alg.derived_algebra();
            let perfect = derived.is_full();
            let contained = ideal.space().contains_space(&derived);
            let mut rec = rec
                .value("ideal_dim", ideal.dim())
                .value("h1_invariants", inv)
                .value("perfect", yes(perfect))
                .value("derived_in_ideal", yes(contained));
            if inv == 0 && !contained {
                rec = rec.line("H^1(I,I)^L = 0 but [L,L] is not contained in I");
            }
            Ok(rec)
        };
        vec![run().unwrap_or_else(|p| p.apply(CheckRecord::new("remark-psl3.minimal-ideal", ANCHOR)))]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn run(name: &str, suite: &str) -> Report {
        run_suite(&catalog::entry(name).unwrap(), suite, 7, &Limits::default()).unwrap()
    }

    #[test]
    fn unknown_suite() {
        let spec = catalog::entry("l2_gf3").unwrap();
        assert!(matches!(run_suite(&spec, "nope", 0, &Limits::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn heisenberg_eq1_reports_nonsplit_center() {
        let r = run("heisenberg_gf3", "eq1");
        assert!(r.passed(), "{}", r.to_text());
        let witness: Vec<_> = r.find("eq1.split-witness").collect();
        assert_eq!(witness.len(), 3);
        assert_eq!(witness[0].values["split"], Value::Bool(false));
    }

    #[test]
    fn borel_over_q_is_consistent() {
        let r = run("borel2_q", "all");
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn deterministic_output() {
        assert_eq!(run("l2_gf3", "all").to_json(), run("l2_gf3", "all").to_json());
    }
}
