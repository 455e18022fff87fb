//! Verification campaigns: seeded random instance generation, special-case
//! presets, theorem selection, and report collection.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Ring, Trace};
use crate::determinant::DEFAULT_SIZE_CAP;
use crate::forests::{rhs_mtkz, verify_mtkz, verify_sym};
use crate::graph::{instance_digest, GraphInstance, WeightMode};
use crate::lift::{
    all_coefficients_nonnegative, cancellation_offenders, lift_instance, rhs_mtkzn, verify_mtkzn, verify_mttnall,
};
use crate::report::VerificationReport;
use crate::simplicial::{
    verify_cw, CellWeightMode, Orientation, SimplicialComplex, SimplicialInstance,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremId {
    Mtkz,
    Sym,
    Mtkzn,
    Mttnall,
    Cw,
    Cancellation,
    Positivity,
    Factorization,
}

impl TheoremId {
    pub fn parse(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "mtkz" => TheoremId::Mtkz,
            "sym" => TheoremId::Sym,
            "mtkzn" => TheoremId::Mtkzn,
            "mttnall" => TheoremId::Mttnall,
            "cw" => TheoremId::Cw,
            "cancellation" => TheoremId::Cancellation,
            "positivity" => TheoremId::Positivity,
            "factorization" => TheoremId::Factorization,
            other => return Err(Error::InvalidConfig(format!("unknown theorem `{other}`"))),
        })
    }
}

/// Special-case bundles: ring, trace, and holonomy constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// h = 1 over ℚ: the classical matrix-tree theorem.
    Kirchhoff,
    /// Complex (Gaussian) holonomies with the identity trace.
    Forman,
    /// Abelian-group holonomies in ℤ[ℤ/k].
    Chaiken(usize),
    /// ℤ/2 signs: signed graphs.
    Zaslavsky,
    /// Unit quaternions with h_ji = conj(h_ij), symmetric weights, Re trace.
    Kenyon,
}

impl Preset {
    pub fn parse(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "kirchhoff" => Preset::Kirchhoff,
            "forman" => Preset::Forman,
            "zaslavsky" => Preset::Zaslavsky,
            "kenyon" => Preset::Kenyon,
            _ => {
                if let Some(k) = s.strip_prefix("chaiken:") {
                    let k: usize = k
                        .parse()
                        .map_err(|_| Error::InvalidConfig(format!("bad preset `{s}`")))?;
                    Preset::Chaiken(k.max(1))
                } else {
                    return Err(Error::InvalidConfig(format!("unknown preset `{s}`")));
                }
            }
        })
    }

    pub fn instantiate(&self, seed: u64, n: usize, m: usize) -> Result<GraphInstance, Error> {
        match self {
            Preset::Kirchhoff => {
                let opts = RandomOptions {
                    holonomy: HolonomySampling::Unit,
                    symmetric_conj: false,
                    weight_mode: WeightMode::Symbolic,
                };
                generate_random_instance(
                    seed,
                    n,
                    m,
                    Ring::Rational,
                    Trace::identity(Ring::Rational)?,
                    &opts,
                )
            }
            Preset::Forman => generate_random_instance(
                seed,
                n,
                m,
                Ring::Gaussian,
                Trace::identity(Ring::Gaussian)?,
                &RandomOptions::default(),
            ),
            Preset::Chaiken(k) => generate_random_instance(
                seed,
                n,
                m,
                Ring::GroupRing(*k),
                Trace::identity(Ring::GroupRing(*k))?,
                &RandomOptions {
                    holonomy: HolonomySampling::Unitary,
                    symmetric_conj: false,
                    weight_mode: WeightMode::Symbolic,
                },
            ),
            Preset::Zaslavsky => generate_random_instance(
                seed,
                n,
                m,
                Ring::GroupRing(2),
                Trace::identity(Ring::GroupRing(2))?,
                &RandomOptions {
                    holonomy: HolonomySampling::Unitary,
                    symmetric_conj: true,
                    weight_mode: WeightMode::Symbolic,
                },
            ),
            Preset::Kenyon => generate_random_instance(
                seed,
                n,
                m,
                Ring::Quaternion,
                Trace::real_part(Ring::Quaternion)?,
                &RandomOptions {
                    holonomy: HolonomySampling::Unitary,
                    symmetric_conj: true,
                    weight_mode: WeightMode::SymbolicSymmetric,
                },
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HolonomySampling {
    /// All holonomies equal to the ring unit.
    Unit,
    /// Small random ring elements.
    Random,
    /// Exact norm-one elements (rational parametrization).
    Unitary,
}

#[derive(Clone, Debug)]
pub struct RandomOptions {
    pub holonomy: HolonomySampling,
    /// Force h_ji = conj(h_ij).
    pub symmetric_conj: bool,
    pub weight_mode: WeightMode,
}

impl Default for RandomOptions {
    fn default() -> Self {
        RandomOptions {
            holonomy: HolonomySampling::Random,
            symmetric_conj: false,
            weight_mode: WeightMode::Symbolic,
        }
    }
}

/// Deterministic instance generation: the same seed and parameters always
/// produce the same instance.
pub fn generate_random_instance(
    seed: u64,
    n: usize,
    m: usize,
    ring: Ring,
    trace: Trace,
    opts: &RandomOptions,
) -> Result<GraphInstance, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut holonomies = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if opts.symmetric_conj && j < i {
                continue;
            }
            let h = match opts.holonomy {
                HolonomySampling::Unit => ring.one(),
                HolonomySampling::Random => ring.random_element(&mut rng),
                HolonomySampling::Unitary => ring.random_unitary(&mut rng)?,
            };
            if opts.symmetric_conj {
                holonomies.insert((j, i), ring.conj(&h)?);
            }
            holonomies.insert((i, j), h);
        }
    }
    GraphInstance::new(n, m, ring, trace, holonomies, opts.weight_mode.clone())
}

/// Random simplicial instance with holonomies on every ordered adjacent
/// cell pair.
pub fn generate_random_simplicial(
    seed: u64,
    v: usize,
    d: usize,
    m: usize,
    ring: Ring,
    trace: Trace,
    weight_mode: CellWeightMode,
    random_orientation: bool,
) -> Result<SimplicialInstance, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cx = SimplicialComplex::new(v, d)?;
    let orientation = if random_orientation {
        Orientation::random(cx.cell_count(), &mut rng)
    } else {
        Orientation::reference(cx.cell_count())
    };
    let mut holonomies = BTreeMap::new();
    for s in 0..cx.cell_count() {
        for &t in &cx.adjacency[s] {
            holonomies.insert((s, t), ring.random_element(&mut rng));
        }
    }
    SimplicialInstance::new(cx, orientation, ring, trace, holonomies, weight_mode, m)
}

#[derive(Clone, Debug)]
pub enum InstanceSource {
    Document(String),
    Random {
        seed: u64,
        n: usize,
        m: usize,
        fiber: Option<usize>,
        ring: Ring,
        preset: Option<Preset>,
    },
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub theorem: TheoremId,
    pub source: InstanceSource,
    pub trials: u64,
    pub det_cap: usize,
}

impl CampaignConfig {
    pub fn new(theorem: TheoremId, source: InstanceSource) -> Self {
        CampaignConfig {
            theorem,
            source,
            trials: 1,
            det_cap: DEFAULT_SIZE_CAP,
        }
    }
}

fn pass_fail_report(theorem: &str, instance: String, pass: bool, detail: String) -> VerificationReport {
    VerificationReport {
        theorem: theorem.to_string(),
        instance,
        lhs: detail.clone(),
        rhs: if pass { "pass".into() } else { "fail".into() },
        equal: pass,
        lhs_terms: 0,
        rhs_terms: 0,
        lhs_millis: 0,
        rhs_millis: 0,
        counterexamples: if pass { vec![] } else { vec![detail] },
    }
}

fn instance_for_trial(
    source: &InstanceSource,
    trial: u64,
    default_trace: fn(Ring) -> Result<Trace, Error>,
    opts: &RandomOptions,
) -> Result<GraphInstance, Error> {
    match source {
        InstanceSource::Document(doc) => crate::graph::load_instance(doc),
        InstanceSource::Random {
            seed,
            n,
            m,
            fiber,
            ring,
            preset,
        } => {
            if let Some(p) = preset {
                return p.instantiate(seed.wrapping_add(trial), *n, *m);
            }
            let ring = match fiber {
                Some(nf) if !matches!(ring, Ring::Matrix(_, _)) => {
                    Ring::Matrix(*nf, Box::new(ring.clone()))
                }
                _ => ring.clone(),
            };
            let scalar = match &ring {
                Ring::Matrix(_, base) => (**base).clone(),
                r => r.clone(),
            };
            let trace = default_trace(scalar)?;
            generate_random_instance(seed.wrapping_add(trial), *n, *m, ring, trace, opts)
        }
    }
}

fn natural_trace(ring: Ring) -> Result<Trace, Error> {
    if ring.is_commutative() {
        Trace::identity(ring)
    } else {
        Trace::real_part(ring)
    }
}

/// Runs the configured campaign. All-pass is the caller's exit-0 condition.
pub fn run_campaign(config: &CampaignConfig) -> Result<Vec<VerificationReport>, Error> {
    let mut reports = Vec::new();
    for trial in 0..config.trials {
        let report = match config.theorem {
            TheoremId::Mtkz => {
                let inst = instance_for_trial(
                    &config.source,
                    trial,
                    natural_trace,
                    &RandomOptions::default(),
                )?;
                verify_mtkz(&inst, config.det_cap)?
            }
            TheoremId::Sym => {
                let opts = RandomOptions {
                    holonomy: HolonomySampling::Random,
                    symmetric_conj: false,
                    weight_mode: WeightMode::SymbolicSymmetric,
                };
                let inst = instance_for_trial(&config.source, trial, natural_trace, &opts)?;
                verify_sym(&inst, config.det_cap)?
            }
            TheoremId::Mtkzn => {
                let inst = instance_for_trial(
                    &config.source,
                    trial,
                    natural_trace,
                    &RandomOptions::default(),
                )?;
                let lifted = lift_instance(inst)?;
                verify_mtkzn(&lifted, config.det_cap)?
            }
            TheoremId::Mttnall => {
                let inst = instance_for_trial(
                    &config.source,
                    trial,
                    natural_trace,
                    &RandomOptions::default(),
                )?;
                let lifted = lift_instance(inst)?;
                verify_mttnall(&lifted)?
            }
            TheoremId::Cw => match &config.source {
                InstanceSource::Random { seed, n, m, fiber, ring, .. } => {
                    let d = fiber.unwrap_or(2);
                    let trace = natural_trace(ring.clone())?;
                    let inst = generate_random_simplicial(
                        seed.wrapping_add(trial),
                        *n,
                        d,
                        *m,
                        ring.clone(),
                        trace,
                        CellWeightMode::PairSymbolic,
                        true,
                    )?;
                    verify_cw(&inst, config.det_cap)?
                }
                InstanceSource::Document(doc) => {
                    let inst = load_simplicial_instance(doc)?;
                    verify_cw(&inst, config.det_cap)?
                }
            },
            TheoremId::Cancellation => {
                let opts = RandomOptions {
                    holonomy: HolonomySampling::Unitary,
                    symmetric_conj: true,
                    weight_mode: WeightMode::SymbolicSymmetric,
                };
                let inst = instance_for_trial(&config.source, trial, natural_trace, &opts)?;
                let fiber = inst.fiber().unwrap_or(1);
                let digest = instance_digest(&inst);
                let poly = if inst.fiber().is_ok() {
                    rhs_mtkzn(&lift_instance(inst)?)?
                } else {
                    rhs_mtkz(&inst)?
                };
                let offenders = cancellation_offenders(&poly, fiber);
                pass_fail_report(
                    "cancellation",
                    digest,
                    offenders.is_empty(),
                    format!("{} monomials exceed exponent {}", offenders.len(), fiber),
                )
            }
            TheoremId::Positivity => {
                let opts = RandomOptions {
                    holonomy: HolonomySampling::Unitary,
                    symmetric_conj: true,
                    weight_mode: WeightMode::SymbolicSymmetric,
                };
                let inst = instance_for_trial(&config.source, trial, natural_trace, &opts)?;
                let digest = instance_digest(&inst);
                let poly = if inst.fiber().is_ok() {
                    rhs_mtkzn(&lift_instance(inst)?)?
                } else {
                    rhs_mtkz(&inst)?
                };
                let ok = all_coefficients_nonnegative(&poly);
                pass_fail_report(
                    "positivity",
                    digest,
                    ok == Some(true),
                    match ok {
                        Some(true) => "all coefficients nonnegative".into(),
                        Some(false) => "negative coefficient found".into(),
                        None => "coefficients are not rational".into(),
                    },
                )
            }
            TheoremId::Factorization => {
                // block-diagonal holonomies over two 1×1 blocks: the lifted
                // forest sum must factor as the product of the block sums
                let (seed, n, m) = match &config.source {
                    InstanceSource::Random { seed, n, m, .. } => {
                        (seed.wrapping_add(trial), *n, *m)
                    }
                    InstanceSource::Document(_) => {
                        return Err(Error::InvalidConfig(
                            "factorization check uses random instances".into(),
                        ))
                    }
                };
                factorization_report(seed, n, m)?
            }
        };
        reports.push(report);
    }
    Ok(reports)
}

fn factorization_report(seed: u64, n: usize, m: usize) -> Result<VerificationReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut holos = BTreeMap::new();
    let mut block_a = BTreeMap::new();
    let mut block_b = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = Ring::Rational.random_element(&mut rng);
            let y = Ring::Rational.random_element(&mut rng);
            holos.insert(
                (i, j),
                Element::Matrix {
                    size: 2,
                    entries: vec![
                        x.clone(),
                        Ring::Rational.zero(),
                        Ring::Rational.zero(),
                        y.clone(),
                    ],
                },
            );
            block_a.insert((i, j), x);
            block_b.insert((i, j), y);
        }
    }
    let trace = Trace::identity(Ring::Rational)?;
    let whole = GraphInstance::new(
        n,
        m,
        Ring::Matrix(2, Box::new(Ring::Rational)),
        trace.clone(),
        holos,
        WeightMode::Symbolic,
    )?;
    let digest = instance_digest(&whole);
    let lifted = lift_instance(whole)?;
    let lhs = rhs_mtkzn(&lifted)?;
    let a = GraphInstance::new(n, m, Ring::Rational, trace.clone(), block_a, WeightMode::Symbolic)?;
    let b = GraphInstance::new(n, m, Ring::Rational, trace, block_b, WeightMode::Symbolic)?;
    let rhs = rhs_mtkz(&a)?.mul(&rhs_mtkz(&b)?)?;
    let name = |v: u32| lifted.base.var_name(v);
    Ok(VerificationReport::from_polynomials(
        "factorization",
        digest,
        &lhs,
        &rhs,
        &name,
        0,
        0,
    ))
}

/// Parses a simplicial instance document with a `complex: {v, d}` field and
/// a well given as `"contains_vertex:v"` or an explicit inner cell count.
pub fn load_simplicial_instance(document: &str) -> Result<SimplicialInstance, Error> {
    use crate::algebra::literal::{parse_element, parse_ring};
    use serde_json::Value;
    let v: Value = serde_json::from_str(document)
        .map_err(|e| Error::MalformedInstance(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::MalformedInstance("document must be an object".into()))?;
    let complex = obj
        .get("complex")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::MalformedInstance("missing `complex`".into()))?;
    let vv = complex
        .get("v")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::MalformedInstance("complex missing `v`".into()))? as usize;
    let d = complex
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::MalformedInstance("complex missing `d`".into()))? as usize;
    let cx = SimplicialComplex::new(vv, d)?;
    let m = match obj.get("well") {
        None => cx.cell_count(),
        Some(Value::String(s)) => {
            if let Some(vtx) = s.strip_prefix("contains_vertex:") {
                let vtx: usize = vtx
                    .parse()
                    .map_err(|_| Error::MalformedInstance(format!("bad well `{s}`")))?;
                cx.cells.iter().filter(|c| !c.contains(&(vtx - 1))).count()
            } else {
                return Err(Error::MalformedInstance(format!("bad well `{s}`")));
            }
        }
        Some(Value::Array(cells)) => {
            // explicit list of well cells (1-based vertex lists)
            let mut well = Vec::new();
            for c in cells {
                let verts: Vec<usize> = c
                    .as_array()
                    .ok_or_else(|| Error::MalformedInstance("well cell must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as usize - 1)
                            .ok_or_else(|| Error::MalformedInstance("bad well vertex".into()))
                    })
                    .collect::<Result<_, _>>()?;
                let mut verts = verts;
                verts.sort_unstable();
                well.push(verts);
            }
            cx.cells.iter().filter(|c| !well.contains(c)).count()
        }
        Some(_) => return Err(Error::MalformedInstance("bad `well` field".into())),
    };
    let ring = parse_ring(obj.get("ring").and_then(Value::as_str).unwrap_or("rational"))?;
    let trace = match obj.get("trace").and_then(Value::as_str).unwrap_or("id") {
        "id" => Trace::identity(ring.clone())?,
        "re" => Trace::real_part(ring.clone())?,
        other => return Err(Error::MalformedInstance(format!("unknown trace `{other}`"))),
    };
    let weight_mode = match obj
        .get("weight_mode")
        .and_then(Value::as_str)
        .unwrap_or("symbolic")
    {
        "symbolic" => CellWeightMode::PairSymbolic,
        "cell_symmetric" => CellWeightMode::CellSymmetric,
        other => {
            return Err(Error::MalformedInstance(format!(
                "unknown weight mode `{other}`"
            )))
        }
    };
    let mut holonomies = BTreeMap::new();
    if let Some(edges) = obj.get("edges").and_then(Value::as_array) {
        for e in edges {
            let eo = e
                .as_object()
                .ok_or_else(|| Error::MalformedInstance("edge must be an object".into()))?;
            let cell_of = |key: &str| -> Result<usize, Error> {
                let verts: Vec<usize> = eo
                    .get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::MalformedInstance(format!("edge missing `{key}`")))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as usize - 1)
                            .ok_or_else(|| Error::MalformedInstance("bad cell vertex".into()))
                    })
                    .collect::<Result<_, _>>()?;
                let mut verts = verts;
                verts.sort_unstable();
                cx.cells
                    .iter()
                    .position(|c| *c == verts)
                    .ok_or_else(|| Error::MalformedInstance(format!("unknown cell in `{key}`")))
            };
            let s = cell_of("from")?;
            let t = cell_of("to")?;
            if let Some(h) = eo.get("h") {
                holonomies.insert((s, t), parse_element(&ring, h)?);
            }
        }
    }
    let orientation = Orientation::reference(cx.cell_count());
    SimplicialInstance::new(cx, orientation, ring, trace, holonomies, weight_mode, m)
}

/// The grid of checks run by `campaign full`: one line per item, exit 0 only
/// if every item passes.
pub fn default_campaign(seed: u64, det_cap: usize) -> Result<Vec<VerificationReport>, Error> {
    let mut reports = Vec::new();
    // graph identity over all supported (ring, trace) pairs
    let ring_pairs: Vec<(Ring, fn(Ring) -> Result<Trace, Error>)> = vec![
        (Ring::Rational, |r| Trace::identity(r)),
        (Ring::Gaussian, |r| Trace::identity(r)),
        (Ring::Gaussian, |r| Trace::real_part(r)),
        (Ring::Quaternion, |r| Trace::real_part(r)),
        (Ring::GroupRing(3), |r| Trace::identity(r)),
    ];
    for n in 2..=5usize {
        for m in 1..=n {
            for (ring, mk_trace) in &ring_pairs {
                let inst = generate_random_instance(
                    seed ^ ((n * 31 + m) as u64),
                    n,
                    m,
                    ring.clone(),
                    mk_trace(ring.clone())?,
                    &RandomOptions::default(),
                )?;
                reports.push(verify_mtkz(&inst, det_cap)?);
            }
        }
    }
    // symmetric class-sum form
    for n in 2..=4usize {
        for m in 1..=n {
            let inst = generate_random_instance(
                seed ^ (1000 + (n * 7 + m) as u64),
                n,
                m,
                Ring::Quaternion,
                Trace::real_part(Ring::Quaternion)?,
                &RandomOptions {
                    holonomy: HolonomySampling::Random,
                    symmetric_conj: false,
                    weight_mode: WeightMode::SymbolicSymmetric,
                },
            )?;
            reports.push(verify_sym(&inst, det_cap)?);
        }
    }
    // lifted identity and the averaged variant on the (n, N) grid
    for &(n, fiber) in &[(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let m = n;
        let inst = generate_random_instance(
            seed ^ (2000 + (n * 13 + fiber) as u64),
            n,
            m,
            Ring::Matrix(fiber, Box::new(Ring::Rational)),
            Trace::identity(Ring::Rational)?,
            &RandomOptions::default(),
        )?;
        let lifted = lift_instance(inst)?;
        reports.push(verify_mtkzn(&lifted, det_cap.max(fiber * m))?);
        reports.push(verify_mttnall(&lifted)?);
    }
    // cancellation and positivity for unitary quaternion instances
    for &(n, fiber) in &[(3usize, 1usize), (3, 2)] {
        let cfg = CampaignConfig {
            theorem: TheoremId::Cancellation,
            source: InstanceSource::Random {
                seed: seed ^ (3000 + n as u64),
                n,
                m: n,
                fiber: if fiber > 1 { Some(fiber) } else { None },
                ring: Ring::Quaternion,
                preset: None,
            },
            trials: 1,
            det_cap,
        };
        reports.extend(run_campaign(&cfg)?);
        let cfg = CampaignConfig {
            theorem: TheoremId::Positivity,
            ..cfg
        };
        reports.extend(run_campaign(&cfg)?);
    }
    // factorization
    reports.push(factorization_report(seed ^ 4000, 2, 2)?);
    // simplicial identity
    for &(v, d) in &[(4usize, 2usize), (5, 2)] {
        let max_inner = SimplicialComplex::new(v, d)?
            .cells
            .iter()
            .filter(|c| !c.contains(&(v - 1)))
            .count();
        for m in 1..=max_inner {
            let inst = generate_random_simplicial(
                seed ^ (5000 + (v * 17 + m) as u64),
                v,
                d,
                m,
                Ring::Rational,
                Trace::identity(Ring::Rational)?,
                CellWeightMode::PairSymbolic,
                true,
            )?;
            reports.push(verify_cw(&inst, det_cap)?);
        }
    }
    Ok(reports)
}
