//! Complete d-skeleta of simplicial complexes, incidence signs, the twisted
//! top-down Laplacian on (d−1)-cells, and its forest-sum identity.
//!
//! Cells are sorted vertex subsets, ordered colexicographically so that
//! cells containing the largest vertex come last; choosing the well as the
//! cells meeting one vertex is then a principal-submatrix choice. The
//! orientation of each cell only affects individual signs ε_στ, never the
//! sign products along closed chains nor any principal minor.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;

use crate::algebra::{Element, Monomial, PolyMatrix, Polynomial, Ring, Trace};
use crate::determinant::tau_det_with;
use crate::forests::{classify_forest, decode_mixed_radix, par_poly_sum, CycleDecomposition, Forest};
use crate::report::VerificationReport;
use crate::Error;

/// The complete d-skeleton on v vertices, viewed through its (d−1)-cells
/// and their adjacency (σ ~ τ iff σ∪τ is a d-cell).
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub v: usize,
    pub d: usize,
    /// (d−1)-cells: sorted d-subsets of {0..v-1} in colexicographic order.
    pub cells: Vec<Vec<usize>>,
    /// d-cells: sorted (d+1)-subsets in colexicographic order.
    pub top_cells: Vec<Vec<usize>>,
    /// Adjacent cell indices, sorted, per cell. Out-degree is d·(v−d).
    pub adjacency: Vec<Vec<usize>>,
}

fn subsets(v: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(v: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..v {
            cur.push(x);
            rec(v, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(v, k, 0, &mut cur, &mut out);
    // colexicographic: compare largest elements first
    out.sort_by(|a, b| {
        a.iter().rev().collect::<Vec<_>>().cmp(&b.iter().rev().collect::<Vec<_>>())
    });
    out
}

impl SimplicialComplex {
    pub fn new(v: usize, d: usize) -> Result<Self, Error> {
        if d < 1 || d > v - 1 {
            return Err(Error::DimensionOutOfRange { d, v });
        }
        let cells = subsets(v, d);
        let top_cells = subsets(v, d + 1);
        let index: BTreeMap<Vec<usize>, usize> = cells
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let mut adjacency = vec![Vec::new(); cells.len()];
        for (si, sigma) in cells.iter().enumerate() {
            for x_pos in 0..d {
                for y in 0..v {
                    if sigma.contains(&y) {
                        continue;
                    }
                    let mut tau = sigma.clone();
                    tau[x_pos] = y;
                    tau.sort_unstable();
                    adjacency[si].push(index[&tau]);
                }
            }
            adjacency[si].sort_unstable();
            adjacency[si].dedup();
        }
        Ok(SimplicialComplex {
            v,
            d,
            cells,
            top_cells,
            adjacency,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Index of the d-cell σ∪τ for adjacent cells, or an error.
    pub fn union_cell(&self, si: usize, ti: usize) -> Result<Vec<usize>, Error> {
        let mut u: Vec<usize> = self.cells[si]
            .iter()
            .chain(self.cells[ti].iter())
            .copied()
            .collect();
        u.sort_unstable();
        u.dedup();
        if u.len() != self.d + 1 {
            return Err(Error::NotIncident);
        }
        Ok(u)
    }

    pub fn top_cell_index(&self, rho: &[usize]) -> Option<usize> {
        self.top_cells.iter().position(|c| c == rho)
    }
}

/// Incidence sign between a d-cell and one of its facets under the
/// reference (sorted-vertex) orientation: (−1)^j where the deleted vertex
/// is the j-th smallest of ρ.
pub fn incidence_sign(rho: &[usize], sigma: &[usize]) -> Result<i8, Error> {
    if rho.len() != sigma.len() + 1 {
        return Err(Error::NotIncident);
    }
    let mut deleted = None;
    for (j, x) in rho.iter().enumerate() {
        if !sigma.contains(x) {
            if deleted.is_some() {
                return Err(Error::NotIncident);
            }
            deleted = Some(j);
        }
    }
    match deleted {
        Some(j) => Ok(if j % 2 == 0 { 1 } else { -1 }),
        None => Err(Error::NotIncident),
    }
}

/// Per-cell orientation choice relative to the reference orientation.
#[derive(Clone, Debug)]
pub struct Orientation(pub Vec<i8>);

impl Orientation {
    pub fn reference(cells: usize) -> Self {
        Orientation(vec![1; cells])
    }

    pub fn random<R: Rng>(cells: usize, rng: &mut R) -> Self {
        Orientation((0..cells).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect())
    }
}

/// Weight-variable layout for the cell graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellWeightMode {
    /// One indeterminate per ordered adjacent pair.
    PairSymbolic,
    /// a_στ = x_ρ, one indeterminate per d-cell ρ = σ∪τ.
    CellSymmetric,
}

/// A twisted top-down Laplacian instance on the cell graph.
#[derive(Clone, Debug)]
pub struct SimplicialInstance {
    pub cx: SimplicialComplex,
    pub orientation: Orientation,
    pub ring: Ring,
    pub trace: Trace,
    /// Holonomies keyed by ordered adjacent cell-index pairs; default unit.
    pub holonomies: BTreeMap<(usize, usize), Element>,
    pub weight_mode: CellWeightMode,
    /// Inner cell count; the well is the remaining cells.
    pub m: usize,
}

impl SimplicialInstance {
    pub fn new(
        cx: SimplicialComplex,
        orientation: Orientation,
        ring: Ring,
        trace: Trace,
        holonomies: BTreeMap<(usize, usize), Element>,
        weight_mode: CellWeightMode,
        m: usize,
    ) -> Result<Self, Error> {
        let cells = cx.cell_count();
        if m < 1 || m > cells {
            return Err(Error::InnerCountOutOfRange { m, n: cells });
        }
        if orientation.0.len() != cells {
            return Err(Error::InvalidConfig("orientation length mismatch".into()));
        }
        if !ring.has_rational_scalars() || !trace.target.has_rational_scalars() {
            return Err(Error::DivisionUnavailable(cx.d as u64));
        }
        for (&(s, t), h) in &holonomies {
            cx.union_cell(s, t)?;
            if !ring.contains(h) {
                return Err(Error::ElementRingMismatch);
            }
        }
        Ok(SimplicialInstance {
            cx,
            orientation,
            ring,
            trace,
            holonomies,
            weight_mode,
            m,
        })
    }

    pub fn holonomy(&self, s: usize, t: usize) -> Element {
        self.holonomies
            .get(&(s, t))
            .cloned()
            .unwrap_or_else(|| self.ring.one())
    }

    /// ε_στ = s_σ s_τ · inc(σ∪τ, σ) · inc(σ∪τ, τ).
    pub fn epsilon(&self, s: usize, t: usize) -> Result<i8, Error> {
        let rho = self.cx.union_cell(s, t)?;
        let a = incidence_sign(&rho, &self.cx.cells[s])?;
        let b = incidence_sign(&rho, &self.cx.cells[t])?;
        Ok(self.orientation.0[s] * self.orientation.0[t] * a * b)
    }

    /// Sign product along a closed chain of adjacent cells; independent of
    /// the orientation choice.
    pub fn epsilon_chain(&self, chain: &[usize]) -> Result<i8, Error> {
        let r = chain.len();
        let mut sign = 1i8;
        for w in 0..r {
            sign *= self.epsilon(chain[w], chain[(w + 1) % r])?;
        }
        Ok(sign)
    }

    pub fn edge_var(&self, s: usize, t: usize) -> Result<u32, Error> {
        match self.weight_mode {
            CellWeightMode::PairSymbolic => Ok((s * self.cx.cell_count() + t) as u32),
            CellWeightMode::CellSymmetric => {
                let rho = self.cx.union_cell(s, t)?;
                Ok(self
                    .cx
                    .top_cell_index(&rho)
                    .expect("union is a top cell") as u32)
            }
        }
    }

    fn render_cell(cell: &[usize]) -> String {
        let parts: Vec<String> = cell.iter().map(|x| (x + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn var_name(&self, v: u32) -> String {
        match self.weight_mode {
            CellWeightMode::PairSymbolic => {
                let nc = self.cx.cell_count() as u32;
                let (s, t) = ((v / nc) as usize, (v % nc) as usize);
                format!(
                    "a{}_{}",
                    Self::render_cell(&self.cx.cells[s]),
                    Self::render_cell(&self.cx.cells[t])
                )
            }
            CellWeightMode::CellSymmetric => {
                format!("x{}", Self::render_cell(&self.cx.top_cells[v as usize]))
            }
        }
    }

    /// The twisted top-down Laplacian: off-diagonal ε_στ h_στ a_στ for
    /// adjacent pairs, diagonal (1/d)·Σ a_στ.
    pub fn build_laplacian(&self) -> Result<PolyMatrix, Error> {
        let nc = self.cx.cell_count();
        let h = self.ring.clone();
        let inv_d = h.div_nat(&h.one(), self.cx.d as u64)?;
        let mut lap = PolyMatrix::zero(nc, h.clone());
        for s in 0..nc {
            let mut diag = Polynomial::zero(h.clone());
            for &t in &self.cx.adjacency[s] {
                let var = self.edge_var(s, t)?;
                diag.add_term(Monomial::var(var), inv_d.clone())?;
                // +ε h a, so that at h = 1 the matrix is the composite of the
                // boundary and coboundary operators
                let eps = self.epsilon(s, t)?;
                let mut coeff = self.holonomy(s, t);
                if eps < 0 {
                    coeff = h.neg(&coeff)?;
                }
                lap.set(s, t, Polynomial::term(h.clone(), coeff, Monomial::var(var)));
            }
            lap.set(s, s, diag);
        }
        Ok(lap)
    }

    fn radix(&self) -> usize {
        self.cx.d * (self.cx.v - self.cx.d)
    }

    fn forest_from_index(&self, idx: u64) -> Forest {
        let digits = decode_mixed_radix(idx, self.radix(), self.m);
        let out = digits
            .iter()
            .enumerate()
            .map(|(s, &c)| self.cx.adjacency[s][c])
            .collect();
        Forest { out }
    }

    fn total_forests(&self) -> u64 {
        (self.radix() as u64).pow(self.m as u32)
    }

    fn forest_monomial(&self, decomp: &CycleDecomposition, forest: &Forest) -> Result<Monomial, Error> {
        let mut mono = Monomial::one();
        for &(s, _) in &decomp.tree_edges {
            mono = mono.mul(&Monomial::var(self.edge_var(s, forest.out[s])?));
        }
        for cycle in &decomp.cycles {
            let r = cycle.len();
            for w in 0..r {
                mono = mono.mul(&Monomial::var(self.edge_var(cycle[w], cycle[(w + 1) % r])?));
            }
        }
        Ok(mono)
    }

    fn traced_cycle(&self, cycle: &[usize]) -> Result<Element, Error> {
        let r = cycle.len();
        let mut prod = self.holonomy(cycle[0], cycle[1 % r]);
        for w in 1..r {
            prod = self.ring.mul(&prod, &self.holonomy(cycle[w], cycle[(w + 1) % r]))?;
        }
        self.trace.apply(&prod)
    }
}

/// Forest-sum side of the simplicial identity:
/// (1/d^m) Σ_F a_F ∏_c (1 − (−d)^{ℓ(c)} ε_c τ(h_c)).
pub fn rhs_cw(inst: &SimplicialInstance) -> Result<Polynomial, Error> {
    let k = inst.trace.target.clone();
    let one = k.one();
    let d = inst.cx.d as i64;
    let m = inst.m;
    let raw = par_poly_sum(inst.total_forests(), k.clone(), |idx| {
        let forest = inst.forest_from_index(idx);
        let decomp = classify_forest(&forest, m);
        let mut coeff = one.clone();
        for cycle in &decomp.cycles {
            let t = inst.traced_cycle(cycle)?;
            let eps = inst.epsilon_chain(cycle)?;
            let mut scale = k.from_integer((-d).pow(cycle.len() as u32));
            if eps < 0 {
                scale = k.neg(&scale)?;
            }
            let factor = k.sub(&one, &k.mul(&scale, &t)?)?;
            if factor.is_zero() {
                return Ok(None);
            }
            coeff = k.mul(&coeff, &factor)?;
        }
        Ok(Some((inst.forest_monomial(&decomp, &forest)?, coeff)))
    })?;
    let denom = (inst.cx.d as u64).pow(m as u32);
    let mut out = Polynomial::zero(k.clone());
    for (mono, c) in &raw.terms {
        out.add_term(mono.clone(), k.div_nat(c, denom)?)?;
    }
    Ok(out)
}

/// Verifies the simplicial identity: τ-determinant of the m×m principal
/// minor against the forest sum.
pub fn verify_cw(inst: &SimplicialInstance, det_cap: usize) -> Result<VerificationReport, Error> {
    let t0 = Instant::now();
    let lap = inst.build_laplacian()?;
    let minor = lap.principal_submatrix(inst.m)?;
    let lhs = tau_det_with(&minor, &inst.trace, det_cap)?;
    let lhs_millis = t0.elapsed().as_millis() as u64;
    let t1 = Instant::now();
    let rhs = rhs_cw(inst)?;
    let rhs_millis = t1.elapsed().as_millis() as u64;
    let name = |v: u32| inst.var_name(v);
    let digest = format!(
        "v={};d={};m={};ring={};cells={}",
        inst.cx.v,
        inst.cx.d,
        inst.m,
        crate::algebra::literal::render_ring(&inst.ring),
        inst.cx.cell_count()
    );
    Ok(VerificationReport::from_polynomials(
        "cw", digest, &lhs, &rhs, &name, lhs_millis, rhs_millis,
    ))
}

/// Specialized integer minor at x=1, h=1 for elimination cross-checks.
pub fn unit_weight_minor(inst: &SimplicialInstance) -> Result<Vec<Vec<num_rational::BigRational>>, Error> {
    use num_rational::BigRational;
    use num_traits::Zero;
    let m = inst.m;
    let d = inst.cx.d;
    let mut rows = vec![vec![BigRational::zero(); m]; m];
    for s in 0..m {
        let deg = inst.cx.adjacency[s].len();
        rows[s][s] = BigRational::new((deg as i64).into(), (d as i64).into());
        for &t in &inst.cx.adjacency[s] {
            if t < m {
                let eps = inst.epsilon(s, t)?;
                rows[s][t] = BigRational::from_integer((eps as i64).into());
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::det_exact_commutative;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_instance(v: usize, d: usize, m: usize, mode: CellWeightMode) -> SimplicialInstance {
        let cx = SimplicialComplex::new(v, d).unwrap();
        let orient = Orientation::reference(cx.cell_count());
        SimplicialInstance::new(
            cx,
            orient,
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            BTreeMap::new(),
            mode,
            m,
        )
        .unwrap()
    }

    #[test]
    fn cell_counts_and_adjacency() {
        let cx = SimplicialComplex::new(4, 2).unwrap();
        assert_eq!(cx.cell_count(), 6);
        assert_eq!(cx.top_cells.len(), 4);
        for adj in &cx.adjacency {
            assert_eq!(adj.len(), 4); // d(v−d) = 2·2
        }
        // colex: cells containing the largest vertex come last
        assert!(cx.cells[3..].iter().all(|c| c.contains(&3)));
        assert!(cx.cells[..3].iter().all(|c| !c.contains(&3)));
    }

    #[test]
    fn incidence_sign_convention() {
        assert_eq!(incidence_sign(&[0, 1, 2], &[1, 2]).unwrap(), 1);
        assert_eq!(incidence_sign(&[0, 1, 2], &[0, 2]).unwrap(), -1);
        assert_eq!(incidence_sign(&[0, 1, 2], &[0, 1]).unwrap(), 1);
        assert!(incidence_sign(&[0, 1, 2], &[0, 3]).is_err());
    }

    #[test]
    fn epsilon_flip_behaviour() {
        let mut inst = unit_instance(4, 2, 3, CellWeightMode::PairSymbolic);
        let base = inst.epsilon(0, 1).unwrap();
        inst.orientation.0[0] = -1;
        assert_eq!(inst.epsilon(0, 1).unwrap(), -base);
        assert_eq!(inst.epsilon(1, 0).unwrap(), -base * 1); // symmetric in the two incidences
    }

    #[test]
    fn epsilon_chain_orientation_invariant() {
        let cx = SimplicialComplex::new(4, 2).unwrap();
        // triangle chain {1,2},{1,3},{2,3} = cell indices 0,1,2
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let reference = {
            let inst = unit_instance(4, 2, 3, CellWeightMode::PairSymbolic);
            inst.epsilon_chain(&[0, 1, 2]).unwrap()
        };
        for _ in 0..100 {
            let orient = Orientation::random(cx.cell_count(), &mut rng);
            let inst = SimplicialInstance::new(
                cx.clone(),
                orient,
                Ring::Rational,
                Trace::identity(Ring::Rational).unwrap(),
                BTreeMap::new(),
                CellWeightMode::PairSymbolic,
                3,
            )
            .unwrap();
            assert_eq!(inst.epsilon_chain(&[0, 1, 2]).unwrap(), reference);
        }
    }

    #[test]
    fn symmetric_diagonal_collects_top_cells() {
        // with a_στ = x_ρ and h=1 the diagonal entry is Σ_{ρ ⊇ σ} x_ρ
        let inst = unit_instance(4, 2, 3, CellWeightMode::CellSymmetric);
        let lap = inst.build_laplacian().unwrap();
        for s in 0..inst.cx.cell_count() {
            let diag = lap.entry(s, s);
            // each containing ρ contributes d adjacent τ, canceling 1/d
            let containing = inst
                .cx
                .top_cells
                .iter()
                .filter(|rho| inst.cx.cells[s].iter().all(|x| rho.contains(x)))
                .count();
            assert_eq!(diag.num_terms(), containing);
            for c in diag.terms.values() {
                assert_eq!(c, &Ring::Rational.one());
            }
        }
    }

    #[test]
    fn d1_reduces_to_graph_laplacian() {
        use crate::forests::rhs_mtkz;
        use crate::graph::{GraphInstance, WeightMode};
        // at d=1 the cell graph is the complete graph and ε ≡ −1 under the
        // reference orientation, so the off-diagonal εha = −ha matches the
        // graph Laplacian with the same holonomies
        let n = 4;
        let m = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut cell_holos = BTreeMap::new();
        let mut graph_holos = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let x = Ring::Rational.random_element(&mut rng);
                cell_holos.insert((i, j), x.clone());
                graph_holos.insert((i, j), x);
            }
        }
        let cx = SimplicialComplex::new(n, 1).unwrap();
        let inst = SimplicialInstance::new(
            cx,
            Orientation::reference(n),
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            cell_holos,
            CellWeightMode::PairSymbolic,
            m,
        )
        .unwrap();
        let graph = GraphInstance::new(
            n,
            m,
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            graph_holos,
            WeightMode::Symbolic,
        )
        .unwrap();
        assert_eq!(rhs_cw(&inst).unwrap(), rhs_mtkz(&graph).unwrap());
    }

    #[test]
    fn kalai_minor_v4() {
        // h=1, x=1, well = the 3 cells containing vertex 4: minor = 4
        let inst = unit_instance(4, 2, 3, CellWeightMode::CellSymmetric);
        let rows = unit_weight_minor(&inst).unwrap();
        let det = det_exact_commutative(&rows).unwrap();
        assert_eq!(det, num_rational::BigRational::from_integer(4.into()));
        // cross-check via the forest sum
        let rhs = rhs_cw(&inst).unwrap();
        let total = rhs.specialize(&|_| Some(Ring::Rational.one())).unwrap();
        assert_eq!(total, Element::Rational(det));
    }

    #[test]
    fn kalai_minor_v6_elimination_only() {
        // v=6, d=2, well = cells containing vertex 6 (m=10): det = 6⁶
        let inst = unit_instance(6, 2, 10, CellWeightMode::CellSymmetric);
        let rows = unit_weight_minor(&inst).unwrap();
        let det = det_exact_commutative(&rows).unwrap();
        assert_eq!(det, num_rational::BigRational::from_integer(46656.into()));
    }

    #[test]
    fn identity_small_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cx = SimplicialComplex::new(4, 2).unwrap();
        let mut holos = BTreeMap::new();
        for s in 0..cx.cell_count() {
            for &t in &cx.adjacency[s] {
                holos.insert((s, t), Ring::Rational.random_element(&mut rng));
            }
        }
        let inst = SimplicialInstance::new(
            cx,
            Orientation::reference(6),
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            holos,
            CellWeightMode::PairSymbolic,
            2,
        )
        .unwrap();
        let r = verify_cw(&inst, 10).unwrap();
        assert!(r.equal, "{}", r.render_text(false));
    }

    #[test]
    fn empty_well_determinant_vanishes() {
        // h=1, symmetric weights, m = C(v,2): determinant is zero
        let inst = unit_instance(4, 2, 6, CellWeightMode::CellSymmetric);
        let r = verify_cw(&inst, 10).unwrap();
        assert!(r.equal, "{}", r.render_text(false));
        let lap = inst.build_laplacian().unwrap();
        let det = tau_det_with(&lap, &inst.trace, 10).unwrap();
        assert!(det.specialize(&|_| Some(Ring::Rational.one())).unwrap().is_zero());
    }

    #[test]
    fn symmetric_weight_cancellation() {
        // every monomial with some x_ρ exponent > 1 has zero net coefficient
        let inst = unit_instance(4, 2, 3, CellWeightMode::CellSymmetric);
        let rhs = rhs_cw(&inst).unwrap();
        for m in rhs.terms.keys() {
            assert!(m.max_exponent() <= 1, "offending monomial {:?}", m);
        }
    }
}
