//! Enumeration of cycle-and-well-rooted spanning forests, cycle
//! decomposition, and the forest-sum sides of the graph matrix-tree
//! identities.
//!
//! A forest assigns one out-edge to each inner vertex. Components of the
//! resulting functional graph are trees rooted in the well or unicycles
//! contained in the inner set. Enumeration is by mixed-radix counting over
//! the out-edge choices, so forests come in a fixed deterministic order.

use rayon::prelude::*;
use std::time::Instant;

use crate::algebra::{Element, Monomial, Polynomial, Ring};
use crate::determinant::tau_det_with;
use crate::graph::{instance_digest, GraphInstance, WeightMode};
use crate::report::VerificationReport;
use crate::Error;

/// One out-edge per inner vertex: `out[i]` is the 0-based target of inner
/// vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    pub out: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    /// Disjoint simple cycles inside the inner set, each rotated so its
    /// minimal vertex comes first.
    pub cycles: Vec<Vec<usize>>,
    /// Edges (i, out[i]) not lying on a cycle.
    pub tree_edges: Vec<(usize, usize)>,
}

/// Default guardrail on exhaustive enumeration size.
pub const DEFAULT_ENUM_CAP: u128 = 200_000_000;

/// Decodes index `idx` into `digits` base-`radix` digits, least significant
/// first.
pub fn decode_mixed_radix(mut idx: u64, radix: usize, digits: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(digits);
    for _ in 0..digits {
        out.push((idx % radix as u64) as usize);
        idx /= radix as u64;
    }
    out
}

/// All (n−1)^m forests, in mixed-radix order.
pub fn enumerate_forests(n: usize, m: usize) -> Result<Vec<Forest>, Error> {
    if m < 1 || m > n {
        return Err(Error::InnerCountOutOfRange { m, n });
    }
    let total = (n as u128 - 1).pow(m as u32);
    if total > DEFAULT_ENUM_CAP {
        return Err(Error::EnumerationTooLarge(total, DEFAULT_ENUM_CAP));
    }
    Ok((0..total as u64)
        .map(|idx| forest_from_index(n, m, idx))
        .collect())
}

/// The forest with the given mixed-radix index: digit c of inner vertex i
/// selects the c-th element of {0..n} \ {i}.
pub fn forest_from_index(n: usize, m: usize, idx: u64) -> Forest {
    let digits = decode_mixed_radix(idx, n - 1, m);
    let out = digits
        .iter()
        .enumerate()
        .map(|(i, &c)| if c < i { c } else { c + 1 })
        .collect();
    Forest { out }
}

fn rotate_min_first(mut cycle: Vec<usize>) -> Vec<usize> {
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(p, _)| p)
        .unwrap();
    cycle.rotate_left(pos);
    cycle
}

/// Cycle decomposition by pointer chasing with three-color marking.
pub fn classify_forest(forest: &Forest, m: usize) -> CycleDecomposition {
    let out = &forest.out;
    // 0 = unvisited, 1 = on current path, 2 = finished
    let mut color = vec![0u8; m];
    let mut on_cycle = vec![false; m];
    let mut cycles = Vec::new();
    for start in 0..m {
        if color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut cur = start;
        loop {
            if cur >= m || color[cur] == 2 {
                break;
            }
            if color[cur] == 1 {
                let pos = path.iter().position(|&x| x == cur).unwrap();
                let cycle: Vec<usize> = path[pos..].to_vec();
                for &v in &cycle {
                    on_cycle[v] = true;
                }
                cycles.push(rotate_min_first(cycle));
                break;
            }
            color[cur] = 1;
            path.push(cur);
            cur = out[cur];
        }
        for &v in &path {
            color[v] = 2;
        }
    }
    let tree_edges = (0..m)
        .filter(|&i| !on_cycle[i])
        .map(|i| (i, out[i]))
        .collect();
    cycles.sort();
    CycleDecomposition { cycles, tree_edges }
}

/// Holonomy product along a cycle, in cyclic order, then traced into K.
fn traced_cycle_holonomy(
    inst: &GraphInstance,
    cycle: &[usize],
    reverse: bool,
) -> Result<Element, Error> {
    let h = inst.scalar_ring()?;
    let verts: Vec<usize> = if reverse {
        let mut v = cycle.to_vec();
        v[1..].reverse();
        v
    } else {
        cycle.to_vec()
    };
    let r = verts.len();
    let mut prod = inst.holonomy(verts[0], verts[1 % r]);
    for w in 1..r {
        prod = h.mul(&prod, &inst.holonomy(verts[w], verts[(w + 1) % r]))?;
    }
    inst.trace.apply(&prod)
}

fn forest_monomial(inst: &GraphInstance, decomp: &CycleDecomposition) -> Monomial {
    let mut mono = Monomial::one();
    for &(i, j) in &decomp.tree_edges {
        mono = mono.mul(&Monomial::var(inst.edge_var(i, j)));
    }
    for cycle in &decomp.cycles {
        let r = cycle.len();
        for w in 0..r {
            mono = mono.mul(&Monomial::var(inst.edge_var(cycle[w], cycle[(w + 1) % r])));
        }
    }
    mono
}

/// Parallel fold of per-forest contributions into a polynomial. Addition is
/// commutative, so the result is schedule-independent.
pub(crate) fn par_poly_sum<F>(total: u64, ring: Ring, per_item: F) -> Result<Polynomial, Error>
where
    F: Fn(u64) -> Result<Option<(Monomial, Element)>, Error> + Sync,
{
    (0..total)
        .into_par_iter()
        .try_fold(
            || Polynomial::zero(ring.clone()),
            |mut acc, idx| {
                if let Some((mono, coeff)) = per_item(idx)? {
                    acc.add_term(mono, coeff)?;
                }
                Ok(acc)
            },
        )
        .try_reduce(|| Polynomial::zero(ring.clone()), |a, b| a.add(&b))
}

/// Right-hand side of the twisted matrix-tree identity:
/// Σ_F a_F ∏_{c ∈ cycles(F)} (1 − τ(h_c)).
pub fn rhs_mtkz(inst: &GraphInstance) -> Result<Polynomial, Error> {
    inst.scalar_ring()?;
    let k = inst.target_ring().clone();
    let one = k.one();
    let total = (inst.n as u64 - 1).pow(inst.m as u32);
    par_poly_sum(total, k.clone(), |idx| {
        let forest = forest_from_index(inst.n, inst.m, idx);
        let decomp = classify_forest(&forest, inst.m);
        let mut coeff = one.clone();
        for cycle in &decomp.cycles {
            let t = traced_cycle_holonomy(inst, cycle, false)?;
            let factor = k.sub(&one, &t)?;
            if factor.is_zero() {
                return Ok(None);
            }
            coeff = k.mul(&coeff, &factor)?;
        }
        Ok(Some((forest_monomial(inst, &decomp), coeff)))
    })
}

/// Whether every cycle of length ≥ 3 is in its canonical orientation: of the
/// two orientations of a cycle starting at its minimal vertex, the canonical
/// one has the smaller second vertex.
fn is_class_representative(decomp: &CycleDecomposition) -> bool {
    decomp
        .cycles
        .iter()
        .all(|c| c.len() < 3 || c[1] < c[c.len() - 1])
}

/// Class-summed right-hand side for symmetric weights: 2-cycles contribute
/// (1 − τ(h_c)), longer cycles (2 − τ(h_c) − τ(h_{c⁻¹})).
pub fn rhs_sym(inst: &GraphInstance) -> Result<Polynomial, Error> {
    if !inst.weight_mode.is_symmetric() {
        return Err(Error::NotSymmetricMode);
    }
    inst.scalar_ring()?;
    let k = inst.target_ring().clone();
    let one = k.one();
    let two = k.from_integer(2);
    let total = (inst.n as u64 - 1).pow(inst.m as u32);
    par_poly_sum(total, k.clone(), |idx| {
        let forest = forest_from_index(inst.n, inst.m, idx);
        let decomp = classify_forest(&forest, inst.m);
        if !is_class_representative(&decomp) {
            return Ok(None);
        }
        let mut coeff = one.clone();
        for cycle in &decomp.cycles {
            let fwd = traced_cycle_holonomy(inst, cycle, false)?;
            let factor = if cycle.len() == 2 {
                k.sub(&one, &fwd)?
            } else {
                let rev = traced_cycle_holonomy(inst, cycle, true)?;
                k.sub(&k.sub(&two, &fwd)?, &rev)?
            };
            if factor.is_zero() {
                return Ok(None);
            }
            coeff = k.mul(&coeff, &factor)?;
        }
        Ok(Some((forest_monomial(inst, &decomp), coeff)))
    })
}

/// Orbit size of a forest class: 2^{#cycles of length ≥ 3}.
pub fn class_orbit_size(decomp: &CycleDecomposition) -> u64 {
    1u64 << decomp.cycles.iter().filter(|c| c.len() >= 3).count()
}

/// Specializes a polynomial per the instance's weight map; edges absent from
/// the map are set to zero.
pub fn specialize_weights(inst: &GraphInstance, poly: &Polynomial) -> Result<Element, Error> {
    let values = match &inst.weight_mode {
        WeightMode::Specialized(map) => map,
        _ => return Err(Error::InvalidConfig("instance is not specialized".into())),
    };
    let k = inst.target_ring().clone();
    let n = inst.n as u32;
    poly.specialize(&|v| {
        let (i, j) = ((v / n) as usize, (v % n) as usize);
        Some(
            values
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| k.zero()),
        )
    })
}

/// Verifies the graph matrix-tree identity on one instance: the
/// τ-determinant of the m×m Laplacian minor against the forest sum.
pub fn verify_mtkz(inst: &GraphInstance, det_cap: usize) -> Result<VerificationReport, Error> {
    let t0 = Instant::now();
    let lap = inst.build_laplacian()?;
    let minor = lap.principal_submatrix(inst.m)?;
    let mut lhs = tau_det_with(&minor, &inst.trace, det_cap)?;
    let lhs_millis = t0.elapsed().as_millis() as u64;
    let t1 = Instant::now();
    let mut rhs = rhs_mtkz(inst)?;
    let rhs_millis = t1.elapsed().as_millis() as u64;
    if matches!(inst.weight_mode, WeightMode::Specialized(_)) {
        let k = inst.target_ring().clone();
        lhs = Polynomial::constant(k.clone(), specialize_weights(inst, &lhs)?);
        rhs = Polynomial::constant(k, specialize_weights(inst, &rhs)?);
    }
    let name = |v: u32| inst.var_name(v);
    Ok(VerificationReport::from_polynomials(
        "mtkz",
        instance_digest(inst),
        &lhs,
        &rhs,
        &name,
        lhs_millis,
        rhs_millis,
    ))
}

/// Verifies the symmetric-weight form: the class sum equals the full
/// forest sum in the quotient by a_ij = a_ji, and both equal the
/// τ-determinant of the symmetric Laplacian minor.
pub fn verify_sym(inst: &GraphInstance, det_cap: usize) -> Result<VerificationReport, Error> {
    if !inst.weight_mode.is_symmetric() {
        return Err(Error::NotSymmetricMode);
    }
    let t0 = Instant::now();
    let lap = inst.build_laplacian()?;
    let minor = lap.principal_submatrix(inst.m)?;
    let lhs = tau_det_with(&minor, &inst.trace, det_cap)?;
    let lhs_millis = t0.elapsed().as_millis() as u64;
    let t1 = Instant::now();
    let rhs = rhs_sym(inst)?;
    let rhs_millis = t1.elapsed().as_millis() as u64;
    let name = |v: u32| inst.var_name(v);
    Ok(VerificationReport::from_polynomials(
        "sym",
        instance_digest(inst),
        &lhs,
        &rhs,
        &name,
        lhs_millis,
        rhs_millis,
    ))
}
