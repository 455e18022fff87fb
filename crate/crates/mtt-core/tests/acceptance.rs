//! End-to-end acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;

use mtt_core::algebra::{check_centrality, CentralityOutcome, Element, Ring, Trace};
use mtt_core::determinant::{det_exact_commutative, tau_det_with};
use mtt_core::forests::{enumerate_forests, rhs_mtkz, rhs_sym, verify_mtkz};
use mtt_core::graph::{edge_var, WeightMode};
use mtt_core::harness::{
    generate_random_instance, generate_random_simplicial, run_campaign, CampaignConfig,
    HolonomySampling, InstanceSource, Preset, RandomOptions, TheoremId,
};
use mtt_core::lift::{
    all_coefficients_nonnegative, cancellation_offenders, lift_instance, rhs_mtkzn, verify_mtkzn,
    verify_mttnall,
};
use mtt_core::simplicial::{
    unit_weight_minor, verify_cw, CellWeightMode, Orientation, SimplicialComplex,
    SimplicialInstance,
};

const DET_CAP: usize = 12;

fn pass(name: &str) {
    println!("[PASS] {name}");
}

fn ring_trace_pairs() -> Vec<(Ring, Trace)> {
    vec![
        (Ring::Rational, Trace::identity(Ring::Rational).unwrap()),
        (Ring::Gaussian, Trace::identity(Ring::Gaussian).unwrap()),
        (Ring::Gaussian, Trace::real_part(Ring::Gaussian).unwrap()),
        (Ring::Quaternion, Trace::real_part(Ring::Quaternion).unwrap()),
        (Ring::GroupRing(4), Trace::identity(Ring::GroupRing(4)).unwrap()),
    ]
}

/// 1. Twisted forest identity on the full (n, m) grid, 20 seeded instances
///    per supported (ring, trace) pair, exact equality.
#[test]
fn graph_identity_grid() {
    for n in 2..=5usize {
        for m in 1..=n {
            for (ring, trace) in ring_trace_pairs() {
                for seed in 0..20u64 {
                    let inst = generate_random_instance(
                        seed * 1000 + (n * 10 + m) as u64,
                        n,
                        m,
                        ring.clone(),
                        trace.clone(),
                        &RandomOptions::default(),
                    )
                    .unwrap();
                    let r = verify_mtkz(&inst, DET_CAP).unwrap();
                    assert!(r.equal, "n={n} m={m} seed={seed}\n{}", r.render_text(false));
                }
            }
        }
    }
    pass("graph identity on the n ∈ {2..5} grid, 20 seeds per ring/trace pair");
}

/// 2. The symmetric-weight class sum equals the plain forest sum after
///    identifying a_ij with a_ji.
#[test]
fn symmetric_class_sum_matches() {
    for n in 2..=4usize {
        for m in 1..=n {
            for seed in 0..5u64 {
                let sym = generate_random_instance(
                    seed + (n * 100 + m) as u64,
                    n,
                    m,
                    Ring::Quaternion,
                    Trace::real_part(Ring::Quaternion).unwrap(),
                    &RandomOptions {
                        holonomy: HolonomySampling::Random,
                        symmetric_conj: false,
                        weight_mode: WeightMode::SymbolicSymmetric,
                    },
                )
                .unwrap();
                let mut plain = sym.clone();
                plain.weight_mode = WeightMode::Symbolic;
                let by_classes = rhs_sym(&sym).unwrap();
                let identified = rhs_mtkz(&plain)
                    .unwrap()
                    .rename_vars(|v| {
                        let (i, j) = ((v as usize) / n, (v as usize) % n);
                        edge_var(n, true, i, j)
                    })
                    .unwrap();
                assert_eq!(by_classes, identified, "n={n} m={m} seed={seed}");
            }
        }
    }
    pass("symmetric class sum equals the identified forest sum, n ∈ {2..4}");
}

/// 3. Classical reduction: unit holonomies and unit weights count spanning
///    forests (16 for n=4, m=3), and the full Laplacian determinant vanishes.
#[test]
fn classical_reduction_counts() {
    let inst = Preset::Kirchhoff.instantiate(0, 4, 3).unwrap();
    let rhs = rhs_mtkz(&inst).unwrap();
    let total = rhs.specialize(&|_| Some(Ring::Rational.one())).unwrap();
    assert_eq!(total, Ring::Rational.from_integer(16));
    let lap = inst.build_laplacian().unwrap();
    let minor = lap.principal_submatrix(3).unwrap();
    let det = tau_det_with(&minor, &inst.trace, DET_CAP).unwrap();
    assert_eq!(det.specialize(&|_| Some(Ring::Rational.one())).unwrap(), Ring::Rational.from_integer(16));
    // independent oracle on the specialized integer matrix
    let ones: Vec<Vec<num_rational::BigRational>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let p = minor.entry(i, j);
                    match p.specialize(&|_| Some(Ring::Rational.one())).unwrap() {
                        Element::Rational(r) => r,
                        _ => unreachable!(),
                    }
                })
                .collect()
        })
        .collect();
    assert_eq!(
        det_exact_commutative(&ones).unwrap(),
        num_rational::BigRational::from_integer(16.into())
    );
    // spanning-forest count matches the cycle-free enumeration directly
    let forests = enumerate_forests(4, 3).unwrap();
    let acyclic = forests
        .iter()
        .filter(|f| mtt_core::forests::classify_forest(f, 3).cycles.is_empty())
        .count();
    assert_eq!(acyclic, 16);
    // empty well: the full determinant is the zero polynomial
    let full = Preset::Kirchhoff.instantiate(0, 4, 4).unwrap();
    let det = tau_det_with(
        &full.build_laplacian().unwrap(),
        &full.trace,
        DET_CAP,
    )
    .unwrap();
    assert!(det.is_zero());
    assert!(rhs_mtkz(&full).unwrap().is_zero());
    pass("classical reduction: 16 spanning trees of K4 and a singular full Laplacian");
}

/// 4. Matrix-holonomy identity on the lifted grid, plus the determinant-free
///    cross-check between the horizontal-forest and all-forest sums.
#[test]
fn lifted_identity_grid_and_cross_check() {
    for &(n, fiber) in &[(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let m = n;
        let inst = generate_random_instance(
            (n * 100 + fiber) as u64,
            n,
            m,
            Ring::Matrix(fiber, Box::new(Ring::Rational)),
            Trace::identity(Ring::Rational).unwrap(),
            &RandomOptions::default(),
        )
        .unwrap();
        let lifted = lift_instance(inst).unwrap();
        let r = verify_mtkzn(&lifted, DET_CAP).unwrap();
        assert!(r.equal, "n={n} N={fiber}\n{}", r.render_text(false));
        let r = verify_mttnall(&lifted).unwrap();
        assert!(r.equal, "n={n} N={fiber} (all-forest)\n{}", r.render_text(false));
    }
    pass("lifted identity and all-forest cross-check on the (n, N) grid");
}

/// 5. Rank cancellation for symmetric specializations: no surviving monomial
///    has a weight exponent above the fiber dimension; unitary quaternion
///    instances have nonnegative coefficients throughout.
#[test]
fn cancellation_and_positivity() {
    let sym_unitary = RandomOptions {
        holonomy: HolonomySampling::Unitary,
        symmetric_conj: true,
        weight_mode: WeightMode::SymbolicSymmetric,
    };
    // fiber 1: commutative/id and unitary-quaternion/Re
    for n in 2..=4usize {
        for (ring, trace) in [
            (Ring::Rational, Trace::identity(Ring::Rational).unwrap()),
            (Ring::GroupRing(3), Trace::identity(Ring::GroupRing(3)).unwrap()),
            (Ring::Quaternion, Trace::real_part(Ring::Quaternion).unwrap()),
        ] {
            let inst = generate_random_instance(
                (n * 7) as u64,
                n,
                n,
                ring.clone(),
                trace,
                &sym_unitary,
            )
            .unwrap();
            let poly = rhs_mtkz(&inst).unwrap();
            assert!(
                cancellation_offenders(&poly, 1).is_empty(),
                "n={n} ring={ring:?}"
            );
            if ring == Ring::Quaternion {
                assert_eq!(all_coefficients_nonnegative(&poly), Some(true), "n={n}");
            }
        }
    }
    // matrix fiber: exponent bound N
    for &(n, fiber) in &[(2usize, 2usize), (3, 2)] {
        for (base, trace) in [
            (Ring::Rational, Trace::identity(Ring::Rational).unwrap()),
            (Ring::Quaternion, Trace::real_part(Ring::Quaternion).unwrap()),
        ] {
            let ring = Ring::Matrix(fiber, Box::new(base.clone()));
            let inst = generate_random_instance(
                (n * 11 + fiber) as u64,
                n,
                n,
                ring.clone(),
                trace,
                &sym_unitary,
            )
            .unwrap();
            let poly = rhs_mtkzn(&lift_instance(inst).unwrap()).unwrap();
            assert!(
                cancellation_offenders(&poly, fiber).is_empty(),
                "n={n} N={fiber} base={base:?}"
            );
            if base == Ring::Quaternion {
                assert_eq!(
                    all_coefficients_nonnegative(&poly),
                    Some(true),
                    "n={n} N={fiber}"
                );
            }
        }
    }
    pass("symmetric-weight cancellation and unitary positivity");
}

/// 6. Simplicial identity with random holonomies, orientation-flip
///    invariance of principal minors, and the two independently known
///    minors (4 and 46656).
#[test]
fn simplicial_identity_and_minors() {
    for &(v, d) in &[(4usize, 2usize), (5, 2)] {
        let cx = SimplicialComplex::new(v, d).unwrap();
        let max_inner = cx.cells.iter().filter(|c| !c.contains(&(v - 1))).count();
        for m in 1..=max_inner {
            let inst = generate_random_simplicial(
                (v * 29 + m) as u64,
                v,
                d,
                m,
                Ring::Rational,
                Trace::identity(Ring::Rational).unwrap(),
                CellWeightMode::PairSymbolic,
                true,
            )
            .unwrap();
            let r = verify_cw(&inst, DET_CAP).unwrap();
            assert!(r.equal, "v={v} m={m}\n{}", r.render_text(false));
        }
    }
    // orientation flips leave every leading principal minor unchanged
    let base = generate_random_simplicial(
        99,
        4,
        2,
        1,
        Ring::Rational,
        Trace::identity(Ring::Rational).unwrap(),
        CellWeightMode::PairSymbolic,
        false,
    )
    .unwrap();
    let reference_minors: Vec<_> = (1..=base.cx.cell_count())
        .map(|m| {
            let lap = base.build_laplacian().unwrap();
            tau_det_with(&lap.principal_submatrix(m).unwrap(), &base.trace, DET_CAP).unwrap()
        })
        .collect();
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let mut flipped = base.clone();
        flipped.orientation = Orientation::random(base.cx.cell_count(), &mut rng);
        let lap = flipped.build_laplacian().unwrap();
        for (m, expected) in reference_minors.iter().enumerate() {
            let det = tau_det_with(
                &lap.principal_submatrix(m + 1).unwrap(),
                &flipped.trace,
                DET_CAP,
            )
            .unwrap();
            assert_eq!(&det, expected, "minor {} under flip", m + 1);
        }
    }
    // unit-weight minors with the maximal proper well
    let kalai = |v: usize, m: usize| -> num_rational::BigRational {
        let cx = SimplicialComplex::new(v, 2).unwrap();
        let orient = Orientation::reference(cx.cell_count());
        let inst = SimplicialInstance::new(
            cx,
            orient,
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            BTreeMap::new(),
            CellWeightMode::CellSymmetric,
            m,
        )
        .unwrap();
        det_exact_commutative(&unit_weight_minor(&inst).unwrap()).unwrap()
    };
    assert_eq!(kalai(4, 3), num_rational::BigRational::from_integer(4.into()));
    assert_eq!(
        kalai(6, 10),
        num_rational::BigRational::from_integer(46656.into())
    );
    pass("simplicial identity, orientation invariance, and the 4 / 46656 minors");
}

/// 7. Trace functionals: centrality holds for the supported traces, fails
///    with a witness for the planted non-central one, and ring axiom spot
///    checks pass (the latter live in the unit suites; re-run a sample here).
#[test]
fn algebra_substrate_checks() {
    for trace in [
        Trace::identity(Ring::Rational).unwrap(),
        Trace::identity(Ring::GroupRing(5)).unwrap(),
        Trace::real_part(Ring::Gaussian).unwrap(),
        Trace::real_part(Ring::Quaternion).unwrap(),
    ] {
        assert!(matches!(
            check_centrality(&trace, 17, 200).unwrap(),
            CentralityOutcome::Pass { .. }
        ));
    }
    match check_centrality(&Trace::i_coefficient(), 17, 200).unwrap() {
        CentralityOutcome::Fail { x, y } => {
            let h = Ring::Quaternion;
            let planted = Trace::i_coefficient();
            let xy = planted.apply(&h.mul(&x, &y).unwrap()).unwrap();
            let yx = planted.apply(&h.mul(&y, &x).unwrap()).unwrap();
            assert_ne!(xy, yx, "witness must separate τ(xy) from τ(yx)");
        }
        CentralityOutcome::Pass { .. } => panic!("planted functional must fail"),
    }
    // axiom sample: associativity and distributivity on quaternions
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let h = Ring::Quaternion;
    for _ in 0..200 {
        let a = h.random_element(&mut rng);
        let b = h.random_element(&mut rng);
        let c = h.random_element(&mut rng);
        let ab_c = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let lhs = h.mul(&a, &h.add(&b, &c).unwrap()).unwrap();
        let rhs = h.add(&h.mul(&a, &b).unwrap(), &h.mul(&a, &c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    pass("trace centrality (with planted failure witness) and ring axioms");
}

/// 8. Determinism: the same seed yields byte-identical rendered reports
///    across repeated runs and across thread-pool sizes.
#[test]
fn deterministic_reports() {
    let config = CampaignConfig {
        theorem: TheoremId::Mtkz,
        source: InstanceSource::Random {
            seed: 42,
            n: 4,
            m: 3,
            fiber: None,
            ring: Ring::Quaternion,
            preset: None,
        },
        trials: 3,
        det_cap: DET_CAP,
    };
    let render = |reports: &[mtt_core::VerificationReport]| -> String {
        reports.iter().map(|r| r.render_text(false)).collect()
    };
    let first = render(&run_campaign(&config).unwrap());
    let again = render(&run_campaign(&config).unwrap());
    assert_eq!(first, again, "repeated runs must agree byte for byte");
    for threads in [1usize, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let pooled = pool.install(|| render(&run_campaign(&config).unwrap()));
        assert_eq!(first, pooled, "thread count {threads} changed the output");
    }
    pass("byte-identical reports across runs and thread counts");
}
