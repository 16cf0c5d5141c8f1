//! Acceptance criteria 1 to 9, run in parallel by a plain `main`. Each one
//! prints a single `PASS`/`FAIL` line.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::SeedableRng;

use flowinv::canon::{canonical_form, CanonicalForm};
use flowinv::enumerate::{
    count_classes_seeded, enumerate_pairs_seeded, for_each_candidate, ClassKey, EnumBounds,
};
use flowinv::fixtures;
use flowinv::iso::{pair_isomorphic, scrambled, Fingerprint, IsoMode, PreparedPair};
use flowinv::multigraph::connected_multigraphs;
use flowinv::pair::{
    classify_separation, to_extended_poset, underlying_multigraph, InvariantPair, SeparationReport,
    VertexLabel,
};
use flowinv::surface::{chi_cells, extract_invariant, realize_multigraph, reconstruct};
use flowinv::topology::{alexandroff_space, specialization_order};

static REPORTED: Mutex<BTreeSet<u32>> = Mutex::new(BTreeSet::new());

fn report(n: u32, name: &str, ok: bool, detail: String) {
    REPORTED.lock().unwrap().insert(n);
    println!(
        "criterion {n} [{}] {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

const MODES: [IsoMode; 2] = [IsoMode::PLUS, IsoMode::ANY];

fn desk_bounds(mode: IsoMode) -> EnumBounds {
    EnumBounds {
        max_saddles: 2,
        max_k_sum: 2,
        max_centers: 4,
        max_n: 2,
        max_b: 2,
        max_annuli: 4,
        max_tori: 1,
        closed_only: false,
        orientable_only: false,
        mode,
    }
}

fn criterion_1_round_trip_completeness() {
    let start = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for mode in MODES {
        for (c, p) in enumerate_pairs_seeded(&desk_bounds(mode), None) {
            total += 1;
            let back = reconstruct(&p).and_then(|(m, _)| extract_invariant(&m));
            match back {
                Ok(q) if canonical_form(&q, mode).ok() == Some(c.clone()) => {}
                other => bad.push(format!("{} -> {:?}", c.digest(), other.err())),
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "reconstruct then extract preserves the canonical form",
        bad.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "{}/{} models round-trip in {:.1?}; first failures {:?}",
            total - bad.len(),
            total,
            elapsed,
            &bad[..bad.len().min(3)]
        ),
    );
}

fn criterion_2_canonical_form_matches_oracle() {
    let mut disagreements = Vec::new();
    let mut compared = 0u64;
    let mut searched = 0u64;
    let mut rng = rand::rngs::StdRng::seed_from_u64(2);
    for mode in MODES {
        let b = desk_bounds(mode);
        let models = enumerate_pairs_seeded(&b, None);
        let prepared: Vec<PreparedPair> = models
            .iter()
            .map(|(_, p)| PreparedPair::new(p.clone()).unwrap())
            .collect();
        let forms: Vec<&CanonicalForm> = models.iter().map(|(c, _)| c).collect();

        // every unordered pair: the oracle's invariant prefilter settles
        // pairs in different buckets, backtracking settles the rest
        let mut buckets: HashMap<&Fingerprint, Vec<usize>> = HashMap::new();
        for (i, p) in prepared.iter().enumerate() {
            buckets.entry(p.fingerprint()).or_default().push(i);
        }
        let n = prepared.len() as u64;
        compared += n * (n - 1) / 2;
        for members in buckets.values() {
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    searched += 1;
                    let iso = prepared[i].isomorphic(&prepared[j], mode).is_some();
                    if iso != (forms[i] == forms[j]) {
                        disagreements.push(format!(
                            "{mode:?}: {} vs {}",
                            forms[i].digest(),
                            forms[j].digest()
                        ));
                    }
                }
            }
        }
        let distinct: HashSet<&CanonicalForm> = forms.iter().copied().collect();
        if distinct.len() != forms.len() {
            disagreements.push(format!("{mode:?}: repeated canonical forms"));
        }

        // every generated candidate is isomorphic to the class sharing its form
        let index: HashMap<&CanonicalForm, usize> =
            forms.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        for_each_candidate(&b, None, |_, p| {
            let c = canonical_form(&p, mode).unwrap();
            let q = PreparedPair::new(p).unwrap();
            searched += 1;
            if q.isomorphic(&prepared[index[&c]], mode).is_none() {
                disagreements.push(format!("{mode:?}: candidate merged into {}", c.digest()));
            }
        });

        // relabeled copies
        for (i, (c, p)) in models.iter().enumerate().step_by(7) {
            let q = scrambled(p, &mut rng);
            searched += 1;
            let iso = PreparedPair::new(q.clone())
                .unwrap()
                .isomorphic(&prepared[i], mode)
                .is_some();
            if !iso || canonical_form(&q, mode).unwrap() != *c {
                disagreements.push(format!("{mode:?}: relabeled {} disagrees", c.digest()));
            }
        }
    }
    report(
        2,
        "canonical form equality agrees with backtracking isomorphism",
        disagreements.is_empty(),
        format!(
            "{compared} unordered pairs, {searched} backtracking searches, {} disagreements {:?}",
            disagreements.len(),
            &disagreements[..disagreements.len().min(3)]
        ),
    );
}

fn criterion_3_euler_characteristic() {
    let mut checked = 0;
    let mut cw_checked = 0;
    let mut bad = Vec::new();
    for (c, p) in enumerate_pairs_seeded(&desk_bounds(IsoMode::PLUS), None) {
        checked += 1;
        let centers = p
            .vertices
            .iter()
            .filter(|v| v.label == VertexLabel::Center)
            .count() as i64;
        let expected = centers - p.diagram.k_sum() as i64;
        let chi = chi_cells(&p).unwrap();
        if chi != vec![expected] {
            bad.push(format!("{}: chi {chi:?} != {expected}", c.digest()));
        }
        let closed_orientable = p
            .vertices
            .iter()
            .all(|v| !matches!(v.label, VertexLabel::OneSided | VertexLabel::Boundary));
        if closed_orientable {
            cw_checked += 1;
            let (m, _) = reconstruct(&p).unwrap();
            let comps = m.components();
            let cw: Vec<i64> = comps
                .iter()
                .map(|cells| m.cw_counts(cells).euler())
                .collect();
            if cw != chi {
                bad.push(format!("{}: V-E+F {cw:?} != {chi:?}", c.digest()));
            }
        }
    }
    report(
        3,
        "chi_cells = #C - sum k, and V-E+F = chi_cells on closed orientable models",
        bad.is_empty(),
        format!(
            "{checked} models, {cw_checked} cell-complex counts, failures {:?}",
            &bad[..bad.len().min(3)]
        ),
    );
}

fn criterion_4_realization_round_trip() {
    let start = Instant::now();
    let graphs = connected_multigraphs(6);
    let mut bad = Vec::new();
    for g in &graphs {
        let ok = realize_multigraph(g)
            .ok()
            .and_then(|p| to_extended_poset(&p).ok())
            .and_then(|poset| poset.to_multigraph().ok())
            .is_some_and(|back| back.is_isomorphic(g));
        if !ok {
            bad.push(format!("{:?}", g.edges));
        }
    }
    let elapsed = start.elapsed();
    report(
        4,
        "realize then read back the multi-graph",
        bad.is_empty() && elapsed < Duration::from_secs(60) && !graphs.is_empty(),
        format!(
            "{}/{} connected multi-graphs with |V|+|E| <= 6 in {elapsed:.1?}; failures {bad:?}",
            graphs.len() - bad.len(),
            graphs.len()
        ),
    );
}

fn criterion_5_flower_and_nested_loops() {
    let (l, r) = (fixtures::flower_disk(), fixtures::nested_disk());
    let plus = pair_isomorphic(&l, &r, IsoMode::PLUS).unwrap().is_none();
    let any = pair_isomorphic(&l, &r, IsoMode::ANY).unwrap().is_none();
    let same_shape = underlying_multigraph(&l)
        .unwrap()
        .is_isomorphic(&underlying_multigraph(&r).unwrap());
    report(
        5,
        "disk flows differ as labeled pairs but share the abstract multi-graph",
        plus && any && same_shape,
        format!("non-isomorphic (+): {plus}, non-isomorphic (any): {any}, unlabeled graphs isomorphic: {same_shape}"),
    );
}

fn criterion_6_one_sided_versus_boundary() {
    let (x, y) = (fixtures::eight_mobius(), fixtures::eight_boundary());
    let posets = to_extended_poset(&x)
        .unwrap()
        .is_isomorphic(&to_extended_poset(&y).unwrap());
    let plus = pair_isomorphic(&x, &y, IsoMode::PLUS).unwrap().is_none();
    let any = pair_isomorphic(&x, &y, IsoMode::ANY).unwrap().is_none();
    report(
        6,
        "same extended orbit poset, different labeled pairs",
        posets && plus && any,
        format!("posets isomorphic: {posets}, pairs non-isomorphic (+): {plus}, (any): {any}"),
    );
}

fn criterion_7_separation_table() {
    let sphere = classify_separation(&fixtures::sphere_rotation()).unwrap();
    let eight = classify_separation(&fixtures::three_centers_eight()).unwrap();
    let torus = classify_separation(&fixtures::periodic_torus()).unwrap();
    let ok = sphere.sv_t2
        && eight.sv_t0
        && !eight.sv_t1
        && eight.svex_t2
        && torus.sv_t1
        && sphere
            == SeparationReport {
                sv_t0: true,
                sv_t1: true,
                sv_t2: true,
                svex_t1: true,
                svex_t2: true,
            };
    report(
        7,
        "separation axioms of the witnesses",
        ok,
        format!("sphere {sphere:?}; three centers + eight {eight:?}; torus {torus:?}"),
    );
}

/// First-run class counts, frozen.
fn golden() -> Vec<(EnumBounds, Vec<(ClassKey, usize)>)> {
    let key = |orientable, genus, boundary, saddles| ClassKey {
        orientable,
        genus,
        boundary,
        saddles,
    };
    vec![
        (
            EnumBounds {
                max_centers: 2,
                max_annuli: 1,
                max_tori: 1,
                closed_only: true,
                orientable_only: true,
                ..Default::default()
            },
            vec![(key(true, 0, 0, 0), 1), (key(true, 1, 0, 0), 1)],
        ),
        (
            EnumBounds {
                max_centers: 2,
                max_n: 2,
                max_annuli: 1,
                closed_only: true,
                ..Default::default()
            },
            vec![
                (key(false, 1, 0, 0), 2),
                (key(false, 2, 0, 0), 1),
                (key(true, 0, 0, 0), 1),
            ],
        ),
        (
            EnumBounds {
                max_saddles: 1,
                max_k_sum: 1,
                max_centers: 3,
                max_annuli: 3,
                closed_only: true,
                ..Default::default()
            },
            vec![
                (key(true, 0, 0, 0), 1),
                (key(true, 0, 0, 1), 16),
                (key(true, 1, 0, 1), 14),
            ],
        ),
        (
            EnumBounds {
                max_saddles: 1,
                max_k_sum: 1,
                max_centers: 3,
                max_annuli: 3,
                closed_only: true,
                mode: IsoMode::ANY,
                ..Default::default()
            },
            vec![
                (key(true, 0, 0, 0), 1),
                (key(true, 0, 0, 1), 8),
                (key(true, 1, 0, 1), 7),
            ],
        ),
        (
            EnumBounds {
                max_saddles: 2,
                max_k_sum: 2,
                max_centers: 4,
                max_annuli: 4,
                closed_only: true,
                orientable_only: true,
                ..Default::default()
            },
            vec![
                (key(true, 0, 0, 0), 1),
                (key(true, 0, 0, 1), 48),
                (key(true, 0, 0, 2), 277),
                (key(true, 1, 0, 1), 98),
                (key(true, 1, 0, 2), 1807),
                (key(true, 2, 0, 1), 22),
                (key(true, 2, 0, 2), 324),
            ],
        ),
        (
            desk_bounds(IsoMode::PLUS),
            vec![
                (key(false, 1, 0, 0), 2),
                (key(false, 1, 0, 1), 148),
                (key(false, 1, 0, 2), 880),
                (key(false, 1, 1, 0), 2),
                (key(false, 1, 1, 1), 376),
                (key(false, 1, 1, 2), 2128),
                (key(false, 1, 2, 1), 348),
                (key(false, 1, 2, 2), 1768),
                (key(false, 2, 0, 0), 1),
                (key(false, 2, 0, 1), 192),
                (key(false, 2, 0, 2), 1094),
                (key(false, 2, 1, 1), 348),
                (key(false, 2, 1, 2), 1768),
                (key(false, 2, 2, 1), 160),
                (key(false, 2, 2, 2), 722),
                (key(false, 3, 0, 1), 180),
                (key(false, 3, 0, 2), 3408),
                (key(false, 3, 1, 1), 168),
                (key(false, 3, 1, 2), 3288),
                (key(false, 4, 0, 1), 84),
                (key(false, 4, 0, 2), 1680),
                (key(true, 0, 0, 0), 1),
                (key(true, 0, 0, 1), 48),
                (key(true, 0, 0, 2), 277),
                (key(true, 0, 1, 0), 2),
                (key(true, 0, 1, 1), 148),
                (key(true, 0, 1, 2), 880),
                (key(true, 0, 2, 0), 1),
                (key(true, 0, 2, 1), 192),
                (key(true, 0, 2, 2), 1094),
                (key(true, 1, 0, 0), 1),
                (key(true, 1, 0, 1), 98),
                (key(true, 1, 0, 2), 1807),
                (key(true, 1, 1, 1), 180),
                (key(true, 1, 1, 2), 3408),
                (key(true, 1, 2, 1), 84),
                (key(true, 1, 2, 2), 1680),
                (key(true, 2, 0, 1), 22),
                (key(true, 2, 0, 2), 324),
            ],
        ),
        (
            desk_bounds(IsoMode::ANY),
            vec![
                (key(false, 1, 0, 0), 1),
                (key(false, 1, 0, 1), 74),
                (key(false, 1, 0, 2), 440),
                (key(false, 1, 1, 0), 1),
                (key(false, 1, 1, 1), 188),
                (key(false, 1, 1, 2), 1064),
                (key(false, 1, 2, 1), 174),
                (key(false, 1, 2, 2), 884),
                (key(false, 2, 0, 0), 1),
                (key(false, 2, 0, 1), 96),
                (key(false, 2, 0, 2), 550),
                (key(false, 2, 1, 1), 174),
                (key(false, 2, 1, 2), 884),
                (key(false, 2, 2, 1), 80),
                (key(false, 2, 2, 2), 362),
                (key(false, 3, 0, 1), 90),
                (key(false, 3, 0, 2), 1704),
                (key(false, 3, 1, 1), 84),
                (key(false, 3, 1, 2), 1644),
                (key(false, 4, 0, 1), 42),
                (key(false, 4, 0, 2), 850),
                (key(true, 0, 0, 0), 1),
                (key(true, 0, 0, 1), 24),
                (key(true, 0, 0, 2), 141),
                (key(true, 0, 1, 0), 1),
                (key(true, 0, 1, 1), 74),
                (key(true, 0, 1, 2), 440),
                (key(true, 0, 2, 0), 1),
                (key(true, 0, 2, 1), 96),
                (key(true, 0, 2, 2), 550),
                (key(true, 1, 0, 0), 1),
                (key(true, 1, 0, 1), 49),
                (key(true, 1, 0, 2), 915),
                (key(true, 1, 1, 1), 90),
                (key(true, 1, 1, 2), 1704),
                (key(true, 1, 2, 1), 42),
                (key(true, 1, 2, 2), 850),
                (key(true, 2, 0, 1), 11),
                (key(true, 2, 0, 2), 171),
            ],
        ),
    ]
}

fn criterion_8_enumeration_determinism_and_completeness() {
    let mut problems = Vec::new();

    // determinism under shuffled generation order
    let mut runs = 0;
    for mode in MODES {
        let b = desk_bounds(mode);
        let base = count_classes_seeded(&b, Some(11));
        runs += 1;
        if base != count_classes_seeded(&b, Some(97)) || base != count_classes_seeded(&b, None) {
            problems.push(format!("{mode:?}: tables differ between runs"));
        }
    }

    // completeness against the pruning-free generator on every bound
    // vector with at most two annuli (so at most six cells)
    let mut grids = 0;
    for mode in MODES {
        let top = EnumBounds {
            max_annuli: 2,
            ..desk_bounds(mode)
        };
        let brute = common::brute_force_classes(&top);
        let brute_models: Vec<&InvariantPair> = brute.members().collect();
        for max_saddles in 0..=2 {
            for max_k_sum in 0..=2 {
                for max_centers in [0, 1, 2, 4] {
                    for max_n in 0..=2 {
                        for max_b in 0..=2 {
                            for max_annuli in 0..=2 {
                                for max_tori in 0..=1 {
                                    for (closed_only, orientable_only) in
                                        [(false, false), (true, false), (false, true), (true, true)]
                                    {
                                        let b = EnumBounds {
                                            max_saddles,
                                            max_k_sum,
                                            max_centers,
                                            max_n,
                                            max_b,
                                            max_annuli,
                                            max_tori,
                                            closed_only,
                                            orientable_only,
                                            mode,
                                        };
                                        grids += 1;
                                        let expected = brute_models
                                            .iter()
                                            .filter(|p| common::within(p, &b))
                                            .count();
                                        let got = enumerate_pairs_seeded(&b, None);
                                        if got.len() != expected {
                                            problems.push(format!(
                                                "{b:?}: {} classes, brute force {expected}",
                                                got.len()
                                            ));
                                        } else if let Some((c, _)) =
                                            got.iter().find(|(_, p)| !brute.contains(p))
                                        {
                                            problems.push(format!(
                                                "{b:?}: {} missing from brute force",
                                                c.digest()
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // frozen counts
    for (b, expected) in golden() {
        let table: BTreeMap<ClassKey, usize> = count_classes_seeded(&b, None)
            .into_iter()
            .map(|(k, v)| (k, v.count))
            .collect();
        let expected: BTreeMap<ClassKey, usize> = expected.into_iter().collect();
        if table != expected {
            problems.push(format!("{b:?}: table {table:?} != golden {expected:?}"));
        }
    }

    report(
        8,
        "enumeration is order independent and matches the brute-force generator",
        problems.is_empty(),
        format!(
            "{runs} shuffled table comparisons, {grids} bound vectors; problems {:?}",
            &problems[..problems.len().min(3)]
        ),
    );
}

fn criterion_9_alexandroff_round_trip() {
    let mut total = 0;
    let mut bad = 0;
    for n in 0..=6 {
        for p in common::natural_posets(n) {
            total += 1;
            let back = alexandroff_space(&p).and_then(|s| specialization_order(&s));
            if back.as_ref() != Ok(&p) {
                bad += 1;
            }
        }
    }
    report(
        9,
        "specialization order of the Alexandroff topology is the identity",
        bad == 0 && total == 1 + 1 + 2 + 7 + 40 + 357 + 4824,
        format!(
            "{}/{total} naturally labeled posets with at most 6 elements",
            total - bad
        ),
    );
}

type Criterion = (u32, fn());

fn main() {
    let criteria: [Criterion; 9] = [
        (1, criterion_1_round_trip_completeness),
        (2, criterion_2_canonical_form_matches_oracle),
        (3, criterion_3_euler_characteristic),
        (4, criterion_4_realization_round_trip),
        (5, criterion_5_flower_and_nested_loops),
        (6, criterion_6_one_sided_versus_boundary),
        (7, criterion_7_separation_table),
        (8, criterion_8_enumeration_determinism_and_completeness),
        (9, criterion_9_alexandroff_round_trip),
    ];
    let handles: Vec<_> = criteria
        .into_iter()
        .map(|(n, f)| (n, std::thread::spawn(f)))
        .collect();
    let mut failed = 0;
    for (n, h) in handles {
        if h.join().is_err() {
            failed += 1;
            if !REPORTED.lock().unwrap().contains(&n) {
                println!("criterion {n} [FAIL] panicked before reporting");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
