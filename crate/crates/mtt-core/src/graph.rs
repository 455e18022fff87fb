//! Graph instances on the complete directed graph with a well, holonomy
//! assignments, Laplacian construction, and instance file I/O.
//!
//! Vertices are 1..n externally and 0-based internally. The well is the
//! vertex set {m+1..n}; inner vertices are {1..m}. Every ordered pair of
//! distinct vertices carries a holonomy (defaulting to the ring unit) and an
//! edge indeterminate a_ij. Missing edges are modeled by specializing a_ij
//! to zero, never by absent entries.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::algebra::literal::{parse_element, parse_ring, render_ring};
use crate::algebra::{Element, PolyMatrix, Polynomial, Ring, Trace};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum WeightMode {
    /// One indeterminate per ordered edge.
    Symbolic,
    /// a_ij and a_ji are the same indeterminate.
    SymbolicSymmetric,
    /// Concrete edge weights in the target ring K, keyed by 0-based ordered
    /// edge; missing edges default to zero.
    Specialized(BTreeMap<(usize, usize), Element>),
}

impl WeightMode {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, WeightMode::SymbolicSymmetric)
    }
}

/// A complete directed graph on n vertices with well {m+1..n}, scalar or
/// matrix holonomies, and a weight mode.
#[derive(Clone, Debug)]
pub struct GraphInstance {
    pub n: usize,
    pub m: usize,
    /// Holonomy ring H, or Matrix(N, H) for lifted instances.
    pub ring: Ring,
    /// τ on the scalar ring H.
    pub trace: Trace,
    /// 0-based ordered edges; absent edges default to the ring unit.
    pub holonomies: BTreeMap<(usize, usize), Element>,
    pub weight_mode: WeightMode,
}

impl GraphInstance {
    pub fn new(
        n: usize,
        m: usize,
        ring: Ring,
        trace: Trace,
        holonomies: BTreeMap<(usize, usize), Element>,
        weight_mode: WeightMode,
    ) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InnerCountOutOfRange { m, n });
        }
        if m < 1 || m > n {
            return Err(Error::InnerCountOutOfRange { m, n });
        }
        for (&(i, j), h) in &holonomies {
            if i == j {
                return Err(Error::SelfLoop(i + 1));
            }
            if i >= n || j >= n {
                return Err(Error::EdgeOutOfRange(i + 1, j + 1));
            }
            if !ring.contains(h) {
                return Err(Error::ElementRingMismatch);
            }
        }
        Ok(GraphInstance {
            n,
            m,
            ring,
            trace,
            holonomies,
            weight_mode,
        })
    }

    /// Scalar holonomy ring H; errors for matrix holonomies.
    pub fn scalar_ring(&self) -> Result<&Ring, Error> {
        match &self.ring {
            Ring::Matrix(_, _) => Err(Error::MatrixHolonomiesNotScalar),
            r => Ok(r),
        }
    }

    /// Fiber size N for matrix holonomies; errors for scalar ones.
    pub fn fiber(&self) -> Result<usize, Error> {
        match &self.ring {
            Ring::Matrix(n, _) => Ok(*n),
            _ => Err(Error::ScalarHolonomiesNotMatrix),
        }
    }

    /// Target ring K of the trace.
    pub fn target_ring(&self) -> &Ring {
        &self.trace.target
    }

    pub fn holonomy(&self, i: usize, j: usize) -> Element {
        self.holonomies
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.one())
    }

    /// Variable id of the edge indeterminate a_ij (0-based vertices). Under
    /// symmetric mode the unordered pair maps to the (min, max) variable.
    pub fn edge_var(&self, i: usize, j: usize) -> u32 {
        edge_var(self.n, self.weight_mode.is_symmetric(), i, j)
    }

    /// Display name of a variable id, 1-based as `a{i}_{j}`.
    pub fn var_name(&self, v: u32) -> String {
        let n = self.n as u32;
        format!("a{}_{}", v / n + 1, v % n + 1)
    }

    /// The holonomy-twisted Laplacian of Eqs. (2)-(3): off-diagonal entry
    /// (i,j) is −h_ij·a_ij, diagonal entry (i,i) is Σ_{j≠i} a_ij.
    pub fn build_laplacian(&self) -> Result<PolyMatrix, Error> {
        let h = self.scalar_ring()?.clone();
        let mut lap = PolyMatrix::zero(self.n, h.clone());
        for i in 0..self.n {
            let mut diag = Polynomial::zero(h.clone());
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let var = self.edge_var(i, j);
                diag = diag.add(&Polynomial::var(h.clone(), var))?;
                let coeff = h.neg(&self.holonomy(i, j))?;
                lap.set(
                    i,
                    j,
                    Polynomial::term(h.clone(), coeff, crate::algebra::Monomial::var(var)),
                );
            }
            lap.set(i, i, diag);
        }
        Ok(lap)
    }
}

/// Edge indeterminate numbering shared by graph and lift: `i*n + j`, with
/// the (min, max) representative under symmetric identification.
pub fn edge_var(n: usize, symmetric: bool, i: usize, j: usize) -> u32 {
    let (i, j) = if symmetric && j < i { (j, i) } else { (i, j) };
    (i * n + j) as u32
}

/// Parses an instance document (JSON). See the schema in the crate README.
pub fn load_instance(document: &str) -> Result<GraphInstance, Error> {
    let v: Value = serde_json::from_str(document)
        .map_err(|e| Error::MalformedInstance(e.to_string()))?;
    instance_from_value(&v)
}

pub fn instance_from_value(v: &Value) -> Result<GraphInstance, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::MalformedInstance("document must be an object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::MalformedInstance("missing field `n`".into()))? as usize;
    let m = obj
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::MalformedInstance("missing field `m`".into()))? as usize;
    let ring = parse_ring(
        obj.get("ring")
            .and_then(Value::as_str)
            .unwrap_or("rational"),
    )?;
    let scalar = match &ring {
        Ring::Matrix(_, base) => (**base).clone(),
        r => r.clone(),
    };
    let trace = match obj.get("trace").and_then(Value::as_str).unwrap_or("id") {
        "id" => Trace::identity(scalar)?,
        "re" => Trace::real_part(scalar)?,
        other => {
            return Err(Error::MalformedInstance(format!("unknown trace `{other}`")));
        }
    };
    let mode_str = obj
        .get("weight_mode")
        .and_then(Value::as_str)
        .unwrap_or("symbolic");
    let mut holonomies = BTreeMap::new();
    let mut weights = BTreeMap::new();
    if let Some(edges) = obj.get("edges") {
        let edges = edges
            .as_array()
            .ok_or_else(|| Error::MalformedInstance("`edges` must be an array".into()))?;
        for e in edges {
            let eo = e
                .as_object()
                .ok_or_else(|| Error::MalformedInstance("edge must be an object".into()))?;
            let from = eo
                .get("from")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::MalformedInstance("edge missing `from`".into()))?
                as usize;
            let to = eo
                .get("to")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::MalformedInstance("edge missing `to`".into()))?
                as usize;
            if from == 0 || to == 0 || from > n || to > n {
                return Err(Error::EdgeOutOfRange(from, to));
            }
            if from == to {
                return Err(Error::SelfLoop(from));
            }
            if let Some(h) = eo.get("h") {
                holonomies.insert((from - 1, to - 1), parse_element(&ring, h)?);
            }
            if let Some(a) = eo.get("a") {
                weights.insert((from - 1, to - 1), parse_element(&trace.target, a)?);
            }
        }
    }
    let weight_mode = match mode_str {
        "symbolic" => WeightMode::Symbolic,
        "symmetric" => WeightMode::SymbolicSymmetric,
        "specialized" => WeightMode::Specialized(weights),
        other => {
            return Err(Error::MalformedInstance(format!(
                "unknown weight mode `{other}`"
            )));
        }
    };
    GraphInstance::new(n, m, ring, trace, holonomies, weight_mode)
}

/// Renders an instance back to its document form (used for digests and
/// report round-trips).
pub fn instance_digest(inst: &GraphInstance) -> String {
    use crate::algebra::render_element;
    let mut parts = vec![
        format!("n={}", inst.n),
        format!("m={}", inst.m),
        format!("ring={}", render_ring(&inst.ring)),
    ];
    for (&(i, j), h) in &inst.holonomies {
        parts.push(format!("h{}_{}={}", i + 1, j + 1, render_element(h)));
    }
    match &inst.weight_mode {
        WeightMode::Symbolic => parts.push("weights=symbolic".into()),
        WeightMode::SymbolicSymmetric => parts.push("weights=symmetric".into()),
        WeightMode::Specialized(w) => {
            parts.push("weights=specialized".into());
            for (&(i, j), a) in w {
                parts.push(format!("a{}_{}={}", i + 1, j + 1, render_element(a)));
            }
        }
    }
    parts.join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    fn simple(n: usize, m: usize) -> GraphInstance {
        GraphInstance::new(
            n,
            m,
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            BTreeMap::new(),
            WeightMode::Symbolic,
        )
        .unwrap()
    }

    #[test]
    fn load_minimal() {
        let inst = load_instance(r#"{"n":2,"m":1}"#).unwrap();
        assert_eq!(inst.n, 2);
        assert_eq!(inst.m, 1);
        assert_eq!(inst.holonomy(0, 1), Ring::Rational.one());
    }

    #[test]
    fn m_out_of_range() {
        assert!(matches!(
            load_instance(r#"{"n":3,"m":4}"#),
            Err(Error::InnerCountOutOfRange { .. })
        ));
    }

    #[test]
    fn self_loop_rejected() {
        let doc = r#"{"n":2,"m":1,"edges":[{"from":1,"to":1,"h":"1"}]}"#;
        assert!(matches!(load_instance(doc), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn kenyon_style_conjugate_pair() {
        let doc = r#"{"n":2,"m":2,"ring":"quaternion","trace":"re",
            "edges":[{"from":1,"to":2,"h":["0","1","0","0"]},
                     {"from":2,"to":1,"h":["0","-1","0","0"]}]}"#;
        let inst = load_instance(doc).unwrap();
        let h12 = inst.holonomy(0, 1);
        let h21 = inst.holonomy(1, 0);
        assert_eq!(h21, Ring::Quaternion.conj(&h12).unwrap());
    }

    #[test]
    fn laplacian_two_vertices() {
        let inst = simple(2, 1);
        let lap = inst.build_laplacian().unwrap();
        let r = Ring::Rational;
        assert_eq!(*lap.entry(0, 0), Polynomial::var(r.clone(), inst.edge_var(0, 1)));
        assert_eq!(
            *lap.entry(0, 1),
            Polynomial::term(
                r.clone(),
                r.neg(&r.one()).unwrap(),
                Monomial::var(inst.edge_var(0, 1))
            )
        );
    }

    #[test]
    fn laplacian_row_sums_vanish_for_unit_holonomies() {
        for n in 2..=4 {
            let inst = simple(n, n);
            let lap = inst.build_laplacian().unwrap();
            for i in 0..n {
                let mut sum = Polynomial::zero(Ring::Rational);
                for j in 0..n {
                    sum = sum.add(lap.entry(i, j)).unwrap();
                }
                assert!(sum.is_zero(), "row {i} of n={n}");
            }
        }
    }

    #[test]
    fn off_diagonal_shape() {
        let inst = simple(3, 2);
        let lap = inst.build_laplacian().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(lap.entry(i, j).num_terms(), 2);
                    for m in lap.entry(i, j).terms.keys() {
                        assert_eq!(m.total_degree(), 1);
                    }
                } else {
                    assert_eq!(lap.entry(i, j).num_terms(), 1);
                }
            }
        }
    }

    #[test]
    fn symmetric_mode_identifies_vars() {
        let inst = GraphInstance::new(
            3,
            2,
            Ring::Rational,
            Trace::identity(Ring::Rational).unwrap(),
            BTreeMap::new(),
            WeightMode::SymbolicSymmetric,
        )
        .unwrap();
        assert_eq!(inst.edge_var(0, 2), inst.edge_var(2, 0));
        assert_eq!(inst.var_name(inst.edge_var(2, 0)), "a1_3");
        // build is idempotent
        let a = inst.build_laplacian().unwrap();
        let b = inst.build_laplacian().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn principal_submatrix_cases() {
        let inst = simple(3, 2);
        let lap = inst.build_laplacian().unwrap();
        assert_eq!(lap.principal_submatrix(3).unwrap(), lap);
        let sub = lap.principal_submatrix(2).unwrap();
        assert_eq!(sub.size, 2);
        assert_eq!(sub.entry(0, 0), lap.entry(0, 0));
        assert!(lap.principal_submatrix(4).is_err());
    }
}
