//! Central additive maps τ: H → K into a commutative target ring.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ring::{Element, Ring};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceKind {
    /// H commutative, K = H, τ = id.
    Identity,
    /// Real part of a Gaussian or quaternion element; K = ℚ.
    RealPart,
    /// (1/N)·tr composed with a base trace on the entries. Experimental.
    NormalizedMatrixTrace(Box<Trace>),
    /// Coefficient of i on quaternions. Additive but NOT central; kept as a
    /// planted negative for the centrality checker.
    ICoefficient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub source: Ring,
    pub target: Ring,
    pub kind: TraceKind,
}

impl Trace {
    pub fn identity(ring: Ring) -> Result<Self, Error> {
        if !ring.is_commutative() {
            return Err(Error::TraceRequiresCommutative);
        }
        Ok(Trace {
            source: ring.clone(),
            target: ring,
            kind: TraceKind::Identity,
        })
    }

    pub fn real_part(ring: Ring) -> Result<Self, Error> {
        match ring {
            Ring::Gaussian | Ring::Quaternion => Ok(Trace {
                source: ring,
                target: Ring::Rational,
                kind: TraceKind::RealPart,
            }),
            _ => Err(Error::UnsupportedTrace),
        }
    }

    pub fn i_coefficient() -> Self {
        Trace {
            source: Ring::Quaternion,
            target: Ring::Rational,
            kind: TraceKind::ICoefficient,
        }
    }

    pub fn normalized_matrix_trace(n: usize, base: Trace) -> Result<Self, Error> {
        if !base.target.has_rational_scalars() {
            return Err(Error::DivisionUnavailable(n as u64));
        }
        Ok(Trace {
            source: Ring::Matrix(n, Box::new(base.source.clone())),
            target: base.target.clone(),
            kind: TraceKind::NormalizedMatrixTrace(Box::new(base)),
        })
    }

    pub fn apply(&self, x: &Element) -> Result<Element, Error> {
        if !self.source.contains(x) {
            return Err(Error::ElementRingMismatch);
        }
        match (&self.kind, x) {
            (TraceKind::Identity, _) => Ok(x.clone()),
            (TraceKind::RealPart, Element::Gaussian(a)) => Ok(Element::Rational(a[0].clone())),
            (TraceKind::RealPart, Element::Quaternion(a)) => Ok(Element::Rational(a[0].clone())),
            (TraceKind::ICoefficient, Element::Quaternion(a)) => {
                Ok(Element::Rational(a[1].clone()))
            }
            (TraceKind::NormalizedMatrixTrace(base), Element::Matrix { size, entries }) => {
                let n = *size;
                let mut acc = base.target.zero();
                for i in 0..n {
                    let t = base.apply(&entries[i * n + i])?;
                    acc = base.target.add(&acc, &t)?;
                }
                base.target.div_nat(&acc, n as u64)
            }
            _ => Err(Error::ElementRingMismatch),
        }
    }
}

/// Outcome of a randomized centrality test: either all sampled pairs satisfy
/// τ(xy) = τ(yx), or a witnessing pair is returned.
#[derive(Clone, Debug)]
pub enum CentralityOutcome {
    Pass { trials: u64 },
    Fail { x: Element, y: Element },
}

/// Samples `trials` pairs from the source ring and checks τ(xy) = τ(yx).
pub fn check_centrality(trace: &Trace, seed: u64, trials: u64) -> Result<CentralityOutcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = trace.source.random_element(&mut rng);
        let y = trace.source.random_element(&mut rng);
        let xy = trace.apply(&trace.source.mul(&x, &y)?)?;
        let yx = trace.apply(&trace.source.mul(&y, &x)?)?;
        if xy != yx {
            return Ok(CentralityOutcome::Fail { x, y });
        }
    }
    Ok(CentralityOutcome::Pass { trials })
}
