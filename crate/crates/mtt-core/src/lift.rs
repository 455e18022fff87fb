//! The lifted graph for matrix holonomies: each edge of the base graph
//! lifts to N² scalar-holonomy edges carrying the matrix entries. The
//! τ-determinant of the assembled Nm×Nm Laplacian minor equals a sum over
//! horizontal lifted forests, and independently an averaged sum over all
//! lifted forests.
//!
//! Lifted vertex (i,k) is index i·N + k, so the lifted well is exactly the
//! index range ≥ N·m and the graph machinery from `forests` applies
//! unchanged.

use std::time::Instant;

use crate::algebra::{Element, Monomial, PolyMatrix, Polynomial, Ring};
use crate::determinant::tau_det_with;
use crate::forests::{classify_forest, decode_mixed_radix, par_poly_sum, CycleDecomposition, Forest};
use crate::graph::{instance_digest, GraphInstance};
use crate::report::VerificationReport;
use crate::Error;

/// A graph instance with Matrix(N, H) holonomies together with its derived
/// scalar picture on the vertex set V × {1..N}.
#[derive(Clone, Debug)]
pub struct LiftedInstance {
    pub base: GraphInstance,
    pub fiber: usize,
    scalar_ring: Ring,
}

impl LiftedInstance {
    pub fn new(base: GraphInstance) -> Result<Self, Error> {
        let fiber = base.fiber()?;
        let scalar_ring = match &base.ring {
            Ring::Matrix(_, inner) => (**inner).clone(),
            _ => unreachable!(),
        };
        if base.trace.source != scalar_ring {
            return Err(Error::ElementRingMismatch);
        }
        Ok(LiftedInstance {
            base,
            fiber,
            scalar_ring,
        })
    }

    pub fn lifted_vertex_count(&self) -> usize {
        self.base.n * self.fiber
    }

    pub fn lifted_inner_count(&self) -> usize {
        self.base.m * self.fiber
    }

    /// N² lifted edges over each base edge.
    pub fn lifted_edge_count(&self) -> usize {
        self.base.n * (self.base.n - 1) * self.fiber * self.fiber
    }

    fn split(&self, v: usize) -> (usize, usize) {
        (v / self.fiber, v % self.fiber)
    }

    /// Scalar holonomy of the lifted edge ((i,k),(j,l)): the (k,l) entry of
    /// h_ij.
    pub fn lifted_holonomy(&self, src: usize, dst: usize) -> Result<Element, Error> {
        let (i, k) = self.split(src);
        let (j, l) = self.split(dst);
        if i == j {
            return Err(Error::SelfLoop(i + 1));
        }
        match self.base.holonomy(i, j) {
            Element::Matrix { size, entries } => Ok(entries[k * size + l].clone()),
            _ => Err(Error::ScalarHolonomiesNotMatrix),
        }
    }

    /// The assembled Nn×Nn matrix over H: the base Laplacian with a_ij read
    /// as a_ij·I_N. Diagonal blocks are diagonal, so no vertical edges
    /// appear.
    pub fn build_laplacian(&self) -> Result<PolyMatrix, Error> {
        let nn = self.lifted_vertex_count();
        let h = self.scalar_ring.clone();
        let mut lap = PolyMatrix::zero(nn, h.clone());
        for src in 0..nn {
            let (i, _k) = self.split(src);
            let mut diag = Polynomial::zero(h.clone());
            for j in 0..self.base.n {
                if j == i {
                    continue;
                }
                let var = self.base.edge_var(i, j);
                diag = diag.add(&Polynomial::var(h.clone(), var))?;
                for l in 0..self.fiber {
                    let dst = j * self.fiber + l;
                    let coeff = h.neg(&self.lifted_holonomy(src, dst)?)?;
                    lap.set(src, dst, Polynomial::term(h.clone(), coeff, Monomial::var(var)));
                }
            }
            lap.set(src, src, diag);
        }
        Ok(lap)
    }

    /// Number of out-edge choices per lifted inner vertex.
    fn radix(&self) -> usize {
        (self.base.n - 1) * self.fiber
    }

    fn forest_from_index(&self, idx: u64) -> Forest {
        let inner = self.lifted_inner_count();
        let digits = decode_mixed_radix(idx, self.radix(), inner);
        let out = digits
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                let i = v / self.fiber;
                let j0 = c / self.fiber;
                let l = c % self.fiber;
                let j = if j0 < i { j0 } else { j0 + 1 };
                j * self.fiber + l
            })
            .collect();
        Forest { out }
    }

    fn total_forests(&self) -> u64 {
        (self.radix() as u64).pow(self.lifted_inner_count() as u32)
    }

    fn is_horizontal_edge(&self, src: usize, dst: usize) -> bool {
        src % self.fiber == dst % self.fiber
    }

    fn forest_monomial(&self, decomp: &CycleDecomposition, forest: &Forest) -> Monomial {
        let mut mono = Monomial::one();
        for &(src, _) in &decomp.tree_edges {
            let (i, _) = self.split(src);
            let (j, _) = self.split(forest.out[src]);
            mono = mono.mul(&Monomial::var(self.base.edge_var(i, j)));
        }
        for cycle in &decomp.cycles {
            let r = cycle.len();
            for w in 0..r {
                let (i, _) = self.split(cycle[w]);
                let (j, _) = self.split(cycle[(w + 1) % r]);
                mono = mono.mul(&Monomial::var(self.base.edge_var(i, j)));
            }
        }
        mono
    }

    fn traced_cycle(&self, cycle: &[usize], reverse: bool) -> Result<Element, Error> {
        let verts: Vec<usize> = if reverse {
            let mut v = cycle.to_vec();
            v[1..].reverse();
            v
        } else {
            cycle.to_vec()
        };
        let r = verts.len();
        let h = &self.scalar_ring;
        let mut prod = self.lifted_holonomy(verts[0], verts[1 % r])?;
        for w in 1..r {
            prod = h.mul(&prod, &self.lifted_holonomy(verts[w], verts[(w + 1) % r])?)?;
        }
        self.base.trace.apply(&prod)
    }

    fn cycle_is_horizontal(&self, cycle: &[usize]) -> bool {
        let r = cycle.len();
        (0..r).all(|w| self.is_horizontal_edge(cycle[w], cycle[(w + 1) % r]))
    }
}

/// Builds the lifted view of a matrix-holonomy instance.
pub fn lift_instance(base: GraphInstance) -> Result<LiftedInstance, Error> {
    LiftedInstance::new(base)
}

/// Horizontal-forest sum: Σ over horizontal lifted forests of a_F times
/// (1 − τ(h_c)) on horizontal cycles and (−τ(h_c)) on skew cycles.
pub fn rhs_mtkzn(lift: &LiftedInstance) -> Result<Polynomial, Error> {
    let k = lift.base.target_ring().clone();
    let one = k.one();
    let inner = lift.lifted_inner_count();
    par_poly_sum(lift.total_forests(), k.clone(), |idx| {
        let forest = lift.forest_from_index(idx);
        let decomp = classify_forest(&forest, inner);
        if decomp
            .tree_edges
            .iter()
            .any(|&(src, dst)| !lift.is_horizontal_edge(src, dst))
        {
            return Ok(None);
        }
        let mut coeff = one.clone();
        for cycle in &decomp.cycles {
            let t = lift.traced_cycle(cycle, false)?;
            let factor = if lift.cycle_is_horizontal(cycle) {
                k.sub(&one, &t)?
            } else {
                k.neg(&t)?
            };
            if factor.is_zero() {
                return Ok(None);
            }
            coeff = k.mul(&coeff, &factor)?;
        }
        Ok(Some((lift.forest_monomial(&decomp, &forest), coeff)))
    })
}

/// Averaged all-forests sum: (1/N^{Nm}) Σ over all lifted forests of a_F
/// times ∏ (1 − N^{ℓ(c)} τ(h_c)). Requires 1/N in K.
pub fn rhs_mttnall(lift: &LiftedInstance) -> Result<Polynomial, Error> {
    let k = lift.base.target_ring().clone();
    if !k.has_rational_scalars() {
        return Err(Error::DivisionUnavailable(lift.fiber as u64));
    }
    let one = k.one();
    let inner = lift.lifted_inner_count();
    let n_fiber = lift.fiber as i64;
    let raw = par_poly_sum(lift.total_forests(), k.clone(), |idx| {
        let forest = lift.forest_from_index(idx);
        let decomp = classify_forest(&forest, inner);
        let mut coeff = one.clone();
        for cycle in &decomp.cycles {
            let t = lift.traced_cycle(cycle, false)?;
            let scale = k.from_integer(n_fiber.pow(cycle.len() as u32));
            let factor = k.sub(&one, &k.mul(&scale, &t)?)?;
            if factor.is_zero() {
                return Ok(None);
            }
            coeff = k.mul(&coeff, &factor)?;
        }
        Ok(Some((lift.forest_monomial(&decomp, &forest), coeff)))
    })?;
    // divide by N^{Nm}
    let mut out = Polynomial::zero(k.clone());
    let denom = (lift.fiber as u64).pow(inner as u32);
    for (m, c) in &raw.terms {
        out.add_term(m.clone(), k.div_nat(c, denom)?)?;
    }
    Ok(out)
}

fn is_class_representative(decomp: &CycleDecomposition) -> bool {
    decomp
        .cycles
        .iter()
        .all(|c| c.len() < 3 || c[1] < c[c.len() - 1])
}

/// Class-summed horizontal-forest formula for symmetric weights, with the
/// four cycle-factor kinds (horizontal/skew × length 2/≥3).
pub fn rhs_mtkzn_sym_classes(lift: &LiftedInstance) -> Result<Polynomial, Error> {
    if !lift.base.weight_mode.is_symmetric() {
        return Err(Error::NotSymmetricMode);
    }
    let k = lift.base.target_ring().clone();
    let one = k.one();
    let two = k.from_integer(2);
    let inner = lift.lifted_inner_count();
    par_poly_sum(lift.total_forests(), k.clone(), |idx| {
        let forest = lift.forest_from_index(idx);
        let decomp = classify_forest(&forest, inner);
        if decomp
            .tree_edges
            .iter()
            .any(|&(src, dst)| !lift.is_horizontal_edge(src, dst))
        {
            return Ok(None);
        }
        if !is_class_representative(&decomp) {
            return Ok(None);
        }
        let mut coeff = one.clone();
        for cycle in &decomp.cycles {
            let fwd = lift.traced_cycle(cycle, false)?;
            let horizontal = lift.cycle_is_horizontal(cycle);
            let factor = if cycle.len() == 2 {
                if horizontal {
                    k.sub(&one, &fwd)?
                } else {
                    k.neg(&fwd)?
                }
            } else {
                let rev = lift.traced_cycle(cycle, true)?;
                let sum = k.add(&fwd, &rev)?;
                if horizontal {
                    k.sub(&two, &sum)?
                } else {
                    k.neg(&sum)?
                }
            };
            if factor.is_zero() {
                return Ok(None);
            }
            coeff = k.mul(&coeff, &factor)?;
        }
        Ok(Some((lift.forest_monomial(&decomp, &forest), coeff)))
    })
}

/// Monomials of `poly` in which some edge variable has exponent exceeding
/// `fiber`. Empty means the Cauchy–Binet cancellation held.
pub fn cancellation_offenders(poly: &Polynomial, fiber: usize) -> Vec<Monomial> {
    poly.terms
        .keys()
        .filter(|m| m.max_exponent() > fiber as u32)
        .cloned()
        .collect()
}

/// Whether every coefficient is a nonnegative rational; `None` when a
/// coefficient is not rational.
pub fn all_coefficients_nonnegative(poly: &Polynomial) -> Option<bool> {
    let mut all = true;
    for c in poly.terms.values() {
        match c.rational_nonnegative() {
            Some(b) => all &= b,
            None => return None,
        }
    }
    Some(all)
}

/// Verifies the lifted identity: τ-determinant of the Nm×Nm minor against
/// the horizontal-forest sum.
pub fn verify_mtkzn(lift: &LiftedInstance, det_cap: usize) -> Result<VerificationReport, Error> {
    let t0 = Instant::now();
    let lap = lift.build_laplacian()?;
    let minor = lap.principal_submatrix(lift.lifted_inner_count())?;
    let lhs = tau_det_with(&minor, &lift.base.trace, det_cap)?;
    let lhs_millis = t0.elapsed().as_millis() as u64;
    let t1 = Instant::now();
    let rhs = rhs_mtkzn(lift)?;
    let rhs_millis = t1.elapsed().as_millis() as u64;
    let name = |v: u32| lift.base.var_name(v);
    Ok(VerificationReport::from_polynomials(
        "mtkzn",
        instance_digest(&lift.base),
        &lhs,
        &rhs,
        &name,
        lhs_millis,
        rhs_millis,
    ))
}

/// Determinant-free cross-check: the horizontal-forest sum equals the
/// averaged all-forests sum as polynomials.
pub fn verify_mttnall(lift: &LiftedInstance) -> Result<VerificationReport, Error> {
    let t0 = Instant::now();
    let lhs = rhs_mtkzn(lift)?;
    let lhs_millis = t0.elapsed().as_millis() as u64;
    let t1 = Instant::now();
    let rhs = rhs_mttnall(lift)?;
    let rhs_millis = t1.elapsed().as_millis() as u64;
    let name = |v: u32| lift.base.var_name(v);
    Ok(VerificationReport::from_polynomials(
        "mttnall",
        instance_digest(&lift.base),
        &lhs,
        &rhs,
        &name,
        lhs_millis,
        rhs_millis,
    ))
}
