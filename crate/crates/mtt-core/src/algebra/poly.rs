//! Sparse multivariate polynomials with central commuting indeterminates and
//! coefficients in any supported ring. The coefficient ring may be
//! noncommutative; indeterminates always commute with everything, so
//! multiplication adds exponent vectors and multiplies coefficients in
//! left-to-right order.

use std::collections::BTreeMap;

use super::ring::{render_element, Element, Ring};
use super::trace::Trace;
use crate::Error;

/// Sparse exponent vector: pairs (variable id, exponent > 0) sorted by
/// variable id. Ordered lexicographically on the dense exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.0
            .iter()
            .find(|&&(var, _)| var == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Applies a variable renaming and re-canonicalizes.
    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Monomial {
        let mut m = BTreeMap::new();
        for &(v, e) in &self.0 {
            *m.entry(f(v)).or_insert(0u32) += e;
        }
        Monomial(m.into_iter().collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        // lexicographic on the dense exponent vector under the fixed
        // variable enumeration
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        let (mut pa, mut pb) = (a.next(), b.next());
        loop {
            match (pa, pb) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            pa = a.next();
                            pb = b.next();
                        }
                        ord => return ord,
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

/// Polynomial in canonical form: no stored zero coefficients, terms keyed by
/// monomial in a `BTreeMap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub ring: Ring,
    pub terms: BTreeMap<Monomial, Element>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        let one = ring.one();
        Polynomial::constant(ring, one)
    }

    pub fn constant(ring: Ring, c: Element) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { ring, terms }
    }

    /// c · x_v
    pub fn term(ring: Ring, c: Element, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring, terms }
    }

    pub fn var(ring: Ring, v: u32) -> Self {
        let one = ring.one();
        Polynomial::term(ring, one, Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), Error> {
        if self.ring != other.ring {
            return Err(Error::PolynomialRingMismatch);
        }
        Ok(())
    }

    pub fn add_term(&mut self, m: Monomial, c: Element) -> Result<(), Error> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.ring.add(e.get(), &c)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero(self.ring.clone());
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.ring.neg(c)?);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.add(&other.neg()?)
    }

    /// Product with coefficient products taken in left-to-right order.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.ring.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb)?)?;
            }
        }
        Ok(out)
    }

    /// Left multiplication by a constant.
    pub fn scale(&self, c: &Element) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero(self.ring.clone());
        for (m, coeff) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(c, coeff)?)?;
        }
        Ok(out)
    }

    /// Applies τ coefficientwise, producing a polynomial over the target ring.
    pub fn apply_trace(&self, trace: &Trace) -> Result<Polynomial, Error> {
        if trace.source != self.ring {
            return Err(Error::PolynomialRingMismatch);
        }
        let mut out = Polynomial::zero(trace.target.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), trace.apply(c)?)?;
        }
        Ok(out)
    }

    /// Evaluation homomorphism. The assignment must cover every variable that
    /// occurs; values must be central for the result to be well defined, which
    /// holds for all our uses (assignments take scalar values).
    pub fn specialize(&self, assignment: &dyn Fn(u32) -> Option<Element>) -> Result<Element, Error> {
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for &(v, e) in &m.0 {
                let a = assignment(v).ok_or(Error::MissingAssignment(v))?;
                for _ in 0..e {
                    val = self.ring.mul(&val, &a)?;
                }
            }
            acc = self.ring.add(&acc, &val)?;
        }
        Ok(acc)
    }

    /// Identifies variables via `f`, re-accumulating coefficients.
    pub fn rename_vars(&self, f: impl Fn(u32) -> u32) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero(self.ring.clone());
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone())?;
        }
        Ok(out)
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Canonical text rendering; `name` maps a variable id to its display
    /// name.
    pub fn render(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        name(v)
                    } else {
                        format!("{}^{}", name(v), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                parts.push(format!("({})", render_element(c)));
            } else {
                parts.push(format!("({})·{}", render_element(c), mono.join("·")));
            }
        }
        parts.join(" + ")
    }
}

/// Square matrix of polynomials over a common coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub size: usize,
    pub ring: Ring,
    pub entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(size: usize, ring: Ring) -> Self {
        PolyMatrix {
            size,
            ring: ring.clone(),
            entries: vec![Polynomial::zero(ring); size * size],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.size + j] = p;
    }

    /// Top-left k×k block.
    pub fn principal_submatrix(&self, k: usize) -> Result<PolyMatrix, Error> {
        if k < 1 || k > self.size {
            return Err(Error::MinorOutOfRange { k, size: self.size });
        }
        let mut out = PolyMatrix::zero(k, self.ring.clone());
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.entry(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Block-diagonal assembly of two matrices over the same ring.
    pub fn block_diag(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix, Error> {
        if a.ring != b.ring {
            return Err(Error::PolynomialRingMismatch);
        }
        let n = a.size + b.size;
        let mut out = PolyMatrix::zero(n, a.ring.clone());
        for i in 0..a.size {
            for j in 0..a.size {
                out.set(i, j, a.entry(i, j).clone());
            }
        }
        for i in 0..b.size {
            for j in 0..b.size {
                out.set(a.size + i, a.size + j, b.entry(i, j).clone());
            }
        }
        Ok(out)
    }
}
