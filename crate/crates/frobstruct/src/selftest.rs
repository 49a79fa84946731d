//! Exhaustive invariant sweep over every preorder up to a given size.
//!
//! Each preorder is checked independently on the rayon pool and the
//! per-preorder tallies are merged at the end.

use std::collections::BTreeMap;

use frobstruct_core::algebra::{self, AlgebraError, StructMatrixAlgebra};
use frobstruct_core::coalgebra::{check_coalgebra_axioms, Coalgebra, IncCoalgebra};
use frobstruct_core::linalg::{self, rat, Matrix, Rational, Subspace};
use frobstruct_core::morita;
use frobstruct_core::preorder::{enumerate_preorders_bounded, BuildMode, Preorder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest size for which the wedge filtration is recomputed.
pub const WEDGE_LIMIT: usize = 5;

const MAX_WITNESSES: usize = 3;

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub max_n: usize,
    pub bound: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InvariantResult {
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub preorders: usize,
    pub invariants: BTreeMap<&'static str, InvariantResult>,
    /// Notes on checks that were skipped or weakened.
    pub notes: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.invariants.values().all(|r| r.failed == 0)
    }

    fn record(&mut self, name: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        let entry = self.invariants.entry(name).or_default();
        entry.checked += 1;
        if !ok {
            entry.failed += 1;
            if entry.witnesses.len() < MAX_WITNESSES {
                entry.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: SelftestReport) -> SelftestReport {
        self.preorders += other.preorders;
        for (name, r) in other.invariants {
            let entry = self.invariants.entry(name).or_default();
            entry.checked += r.checked;
            entry.failed += r.failed;
            for w in r.witnesses {
                if entry.witnesses.len() < MAX_WITNESSES {
                    entry.witnesses.push(w);
                }
            }
        }
        self.notes.extend(other.notes);
        self
    }
}

/// Runs every invariant on all preorders of size `1..=max_n`.
pub fn run(config: &SelftestConfig) -> Result<SelftestReport, frobstruct_core::PreorderError> {
    let mut report = SelftestReport {
        max_n: config.max_n,
        ..Default::default()
    };
    if config.max_n > WEDGE_LIMIT {
        report
            .notes
            .push(format!("wedge filtration skipped above n = {WEDGE_LIMIT}"));
    }
    for n in 1..=config.max_n {
        let all: Vec<Preorder> = enumerate_preorders_bounded(n, config.bound)?.collect();
        let expected = brute_force_count(n);
        report.record("preorder.enumeration_count", all.len() == expected, || {
            format!("n = {n}: enumerated {}, brute force {expected}", all.len())
        });
        let swept = all
            .par_iter()
            .map(|p| check_preorder(p, config))
            .reduce(SelftestReport::default, SelftestReport::merge);
        report = report.merge(swept);
    }
    linalg_invariants(&mut report, config.seed);
    Ok(report)
}

/// Number of transitive relations among all `2^(n²-n)` reflexive ones.
/// Only called for small `n`.
pub fn brute_force_count(n: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    (0u64..1 << off.len())
        .filter(|mask| {
            let mut leq = vec![false; n * n];
            for x in 0..n {
                leq[x * n + x] = true;
            }
            for (bit, &(x, y)) in off.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    leq[x * n + y] = true;
                }
            }
            (0..n)
                .all(|x| (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z])))
        })
        .count()
}

/// `E_x` is local iff the maximal elements of `↑x` form a single class.
pub fn envelope_is_local(p: &Preorder, x: usize) -> bool {
    let up: Vec<usize> = (0..p.n()).filter(|&y| p.leq(x, y)).collect();
    let maximal: Vec<usize> = up
        .iter()
        .copied()
        .filter(|&y| up.iter().all(|&z| !p.leq(y, z) || p.leq(z, y)))
        .collect();
    maximal.iter().all(|&y| p.equivalent(y, maximal[0]))
}

fn span_of(c: &IncCoalgebra, pairs: impl IntoIterator<Item = (usize, usize)>) -> Subspace {
    Subspace::coordinate(
        c.dim(),
        pairs
            .into_iter()
            .map(|(x, y)| c.index_of(x, y).expect("comparable")),
    )
}

fn describe(p: &Preorder) -> String {
    let pairs: Vec<String> = p
        .comparable_pairs()
        .filter(|(x, y)| x != y)
        .map(|(x, y)| format!("{x}<={y}"))
        .collect();
    format!("n={} {{{}}}", p.n(), pairs.join(", "))
}

fn check_preorder(p: &Preorder, config: &SelftestConfig) -> SelftestReport {
    let mut r = SelftestReport {
        preorders: 1,
        ..Default::default()
    };
    let n = p.n();
    let who = describe(p);

    // preorder_core
    let classes = p.equivalence_classes();
    let lengths = p.interval_lengths();
    let ok = (0..n).all(|x| {
        (0..n).all(|y| match lengths[x * n + y] {
            Some(0) => classes.class_of[x] == classes.class_of[y],
            Some(_) => classes.class_of[x] != classes.class_of[y],
            None => !p.leq(x, y),
        })
    });
    r.record("preorder.length_zero_iff_same_class", ok, || who.clone());
    let q = p.quotient();
    r.record(
        "preorder.quotient_antisymmetric",
        q.as_preorder().is_antisymmetric(),
        || who.clone(),
    );
    let relation: Vec<(usize, usize)> = p.comparable_pairs().collect();
    let closed = Preorder::build(n, &relation, BuildMode::Closure);
    r.record("preorder.closure_idempotent", closed.as_ref() == Ok(p), || {
        who.clone()
    });

    // incidence_coalgebra
    let c = IncCoalgebra::new(p);
    r.record("coalgebra.axioms", check_coalgebra_axioms(&c), || who.clone());
    let envelopes: Vec<_> = (0..n)
        .map(|x| c.injective_envelope(x).expect("in range"))
        .collect();
    r.record(
        "coalgebra.dimension",
        c.dim() == p.comparable_count() && envelopes.iter().map(|e| e.dim()).sum::<usize>() == c.dim(),
        || who.clone(),
    );
    if n <= WEDGE_LIMIT {
        let by_length = c.coradical_filtration();
        let by_wedge = c.coradical_filtration_by_wedge();
        r.record(
            "coalgebra.filtration_by_wedge",
            by_wedge.as_ref() == Ok(&by_length),
            || who.clone(),
        );
    }
    let mut actions_ok = true;
    let mut generated_ok = true;
    for &(x, y) in c.basis() {
        let px = c.p(x, y).expect("basis pair");
        for &(u, v) in c.basis() {
            let e = c.e(u, v).expect("basis pair");
            actions_ok &= c.p_arrow(x, y, u, v).ok() == Some(c.left_action(&px, &e));
        }
        let g = c.generated_subcomodule(&c.e(x, y).expect("basis pair"));
        let interval = p.interval(x, y).expect("comparable");
        generated_ok &= g.dim() == interval.len()
            && g.is_basis_supported()
            && g.space() == &span_of(&c, interval.iter().map(|&z| (x, z)));
    }
    r.record("coalgebra.p_arrow_matches_left_action", actions_ok, || {
        who.clone()
    });
    r.record(
        "coalgebra.generated_subcomodule_is_interval",
        generated_ok,
        || who.clone(),
    );
    let symmetric = p.comparable_pairs().all(|(x, y)| p.leq(y, x));
    r.record(
        "coalgebra.cosemisimple_iff_symmetric",
        c.is_cosemisimple() == symmetric,
        || who.clone(),
    );
    for x in 0..n {
        let socle = c.socle(&envelopes[x]).expect("right coideal");
        let simple = c.simple_comodule(x).expect("in range");
        r.record(
            "coalgebra.socle_is_simple",
            socle.space() == simple.space(),
            || format!("{who}, x={x}"),
        );
        let essential = c.essential_check(x, config.trials, config.seed);
        r.record("coalgebra.socle_essential", essential == Ok(true), || {
            format!("{who}, x={x}")
        });
        let iso = c.simple_dual_iso_check(x);
        r.record("coalgebra.simple_dual_iso", iso == Ok(true), || {
            format!("{who}, v={x}")
        });
    }

    // structural_algebra
    let a = StructMatrixAlgebra::new(p);
    r.record("algebra.associative", associative(&a), || who.clone());
    let decision = algebra::frobenius_decide(p);
    let semisimple = a.is_semisimple();
    let oracle = a.frobenius_oracle(config.trials, config.seed);
    r.record(
        "algebra.decision_semisimple_oracle_agree",
        decision.is_frobenius() == semisimple && semisimple == oracle.is_frobenius(),
        || {
            format!(
                "{who}: decision {}, semisimple {semisimple}, oracle {}",
                decision.is_frobenius(),
                oracle.is_frobenius()
            )
        },
    );
    r.record("algebra.dual_pairing", a.dual_pairing_check(&c), || who.clone());
    if decision.is_frobenius() {
        let sizes = algebra::block_decomposition(p);
        let ok = sizes
            .map(|s| s.iter().map(|k| k * k).sum::<usize>() == a.dim())
            .unwrap_or(false);
        r.record("algebra.block_dimension_identity", ok, || who.clone());
        r.record(
            "algebra.block_conjugation",
            algebra::block_conjugation_check(p) == Ok(true),
            || who.clone(),
        );
    }
    r.record("algebra.radical_two_sided_ideal", radical_is_ideal(&a), || {
        who.clone()
    });
    for (x, envelope) in envelopes.iter().enumerate() {
        let outcome = a.local_generation_check(&c, envelope);
        let local = envelope_is_local(p, x);
        let ok = match outcome {
            Ok(true) => local,
            Err(AlgebraError::NotLocal { .. }) => !local,
            _ => false,
        };
        r.record("algebra.local_generation", ok, || {
            format!("{who}, x={x}: {outcome:?}")
        });
    }

    // morita_reduction
    let cq = IncCoalgebra::new(q.as_preorder());
    for reps in morita::representative_systems(p) {
        let m = morita::basic_idempotent(&c, Some(&reps));
        r.record("morita.idempotent", m.is_ok(), || format!("{who}, S={reps:?}"));
        let Ok(m) = m else { continue };
        let reduced = morita::reduce(&c, &m);
        r.record("morita.reduced_axioms", check_coalgebra_axioms(&reduced), || {
            format!("{who}, S={reps:?}")
        });
        r.record(
            "morita.reduced_dimension",
            reduced.dim() == q.as_preorder().comparable_count(),
            || format!("{who}, S={reps:?}"),
        );
        r.record(
            "morita.iso_to_quotient",
            morita::iso_to_quotient_check(&reduced, &cq),
            || format!("{who}, S={reps:?}"),
        );
        r.record(
            "morita.algebra_corner",
            morita::algebra_reduction_check_with(p, &reps),
            || format!("{who}, S={reps:?}"),
        );
    }
    r
}

fn associative(a: &StructMatrixAlgebra) -> bool {
    let d = a.dim();
    (0..d).all(|i| {
        (0..d).all(|j| {
            (0..d).all(|k| {
                let left = a.basis_product(i, j).and_then(|ij| a.basis_product(ij, k));
                let right = a.basis_product(j, k).and_then(|jk| a.basis_product(i, jk));
                left == right
            })
        })
    })
}

fn radical_is_ideal(a: &StructMatrixAlgebra) -> bool {
    let radical = a.radical_trace();
    let d = a.dim();
    radical.basis().iter().all(|v| {
        let x = a.from_coords(v);
        (0..d).all(|b| {
            let unit = a.from_coords(&linalg::unit_vector(d, b));
            [a.multiply(&x, &unit), a.multiply(&unit, &x)]
                .into_iter()
                .all(|prod| {
                    prod.and_then(|p| a.to_coords(&p))
                        .map(|coords| radical.contains(&coords).unwrap_or(false))
                        .unwrap_or(false)
                })
        })
    })
}

fn random_rows(
    rng: &mut ChaCha8Rng,
    rows: std::ops::RangeInclusive<usize>,
    cols: usize,
) -> Vec<Vec<Rational>> {
    let rows = rng.gen_range(rows);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    // sparse-ish entries make rank deficiency likely
                    if rng.gen_bool(0.4) {
                        Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into())
                    } else {
                        rat(0)
                    }
                })
                .collect()
        })
        .collect()
}

fn linalg_invariants(r: &mut SelftestReport, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..64 {
        let ambient = rng.gen_range(1..=7);
        let u = Subspace::span(ambient, random_rows(&mut rng, 0..=5, ambient)).expect("dims");
        let v = Subspace::span(ambient, random_rows(&mut rng, 0..=5, ambient)).expect("dims");
        let rebuilt = Subspace::span(ambient, u.basis().to_vec()).expect("dims");
        r.record("linalg.canonical_round_trip", rebuilt == u, || {
            format!("round {round}")
        });
        let sum = u.sum(&v).expect("dims");
        let meet = u.intersect(&v).expect("dims");
        r.record(
            "linalg.dimension_formula",
            sum.dim() + meet.dim() == u.dim() + v.dim(),
            || format!("round {round}"),
        );
        let rows = rng.gen_range(1..=6);
        let map = Matrix::from_rows(ambient, random_rows(&mut rng, rows..=rows, ambient)).expect("dims");
        let target = Subspace::span(rows, random_rows(&mut rng, 0..=3, rows)).expect("dims");
        let ok = linalg::preimage(&map, &target)
            .and_then(|pre| map.kernel().is_subspace_of(&pre))
            .unwrap_or(false);
        r.record("linalg.preimage_contains_kernel", ok, || format!("round {round}"));
    }
}
