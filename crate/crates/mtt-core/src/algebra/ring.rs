//! Exact coefficient rings: rationals, Gaussian rationals, rational
//! quaternions, integer group rings of cyclic groups, and square matrices
//! over any of these.
//!
//! All arithmetic is exact; there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::Error;

/// Descriptor of a supported coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    /// ℚ
    Rational,
    /// ℚ(i), elements a + bi
    Gaussian,
    /// Rational quaternions, elements w + xi + yj + zk
    Quaternion,
    /// ℤ[ℤ/k], coefficient vectors indexed by powers of the generator
    GroupRing(usize),
    /// N×N matrices over a base ring
    Matrix(usize, Box<Ring>),
}

/// An element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Rational(BigRational),
    Gaussian([BigRational; 2]),
    Quaternion([BigRational; 4]),
    GroupRing(Vec<BigInt>),
    Matrix { size: usize, entries: Vec<Element> },
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Ring {
    pub fn is_commutative(&self) -> bool {
        match self {
            Ring::Rational | Ring::Gaussian | Ring::GroupRing(_) => true,
            Ring::Quaternion => false,
            Ring::Matrix(n, base) => *n == 1 && base.is_commutative(),
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            Ring::Rational => Element::Rational(BigRational::zero()),
            Ring::Gaussian => Element::Gaussian([BigRational::zero(), BigRational::zero()]),
            Ring::Quaternion => Element::Quaternion([
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ]),
            Ring::GroupRing(k) => Element::GroupRing(vec![BigInt::zero(); *k]),
            Ring::Matrix(n, base) => Element::Matrix {
                size: *n,
                entries: vec![base.zero(); n * n],
            },
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Ring::Rational => Element::Rational(BigRational::one()),
            Ring::Gaussian => Element::Gaussian([BigRational::one(), BigRational::zero()]),
            Ring::Quaternion => Element::Quaternion([
                BigRational::one(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ]),
            Ring::GroupRing(k) => {
                let mut v = vec![BigInt::zero(); *k];
                v[0] = BigInt::one();
                Element::GroupRing(v)
            }
            Ring::Matrix(n, base) => {
                let mut entries = vec![base.zero(); n * n];
                for i in 0..*n {
                    entries[i * n + i] = base.one();
                }
                Element::Matrix { size: *n, entries }
            }
        }
    }

    pub fn from_integer(&self, v: i64) -> Element {
        match self {
            Ring::Rational => Element::Rational(rat(v)),
            Ring::Gaussian => Element::Gaussian([rat(v), BigRational::zero()]),
            Ring::Quaternion => Element::Quaternion([
                rat(v),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ]),
            Ring::GroupRing(k) => {
                let mut c = vec![BigInt::zero(); *k];
                c[0] = BigInt::from(v);
                Element::GroupRing(c)
            }
            Ring::Matrix(n, base) => {
                let mut entries = vec![base.zero(); n * n];
                for i in 0..*n {
                    entries[i * n + i] = base.from_integer(v);
                }
                Element::Matrix { size: *n, entries }
            }
        }
    }

    /// Checks that `x` is structurally a valid element of this ring.
    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Ring::Rational, Element::Rational(_)) => true,
            (Ring::Gaussian, Element::Gaussian(_)) => true,
            (Ring::Quaternion, Element::Quaternion(_)) => true,
            (Ring::GroupRing(k), Element::GroupRing(c)) => c.len() == *k,
            (Ring::Matrix(n, base), Element::Matrix { size, entries }) => {
                *size == *n && entries.len() == n * n && entries.iter().all(|e| base.contains(e))
            }
            _ => false,
        }
    }

    fn check(&self, x: &Element) -> Result<(), Error> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ElementRingMismatch)
        }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a + b),
            (Element::Gaussian(a), Element::Gaussian(b)) => {
                Element::Gaussian([&a[0] + &b[0], &a[1] + &b[1]])
            }
            (Element::Quaternion(a), Element::Quaternion(b)) => Element::Quaternion([
                &a[0] + &b[0],
                &a[1] + &b[1],
                &a[2] + &b[2],
                &a[3] + &b[3],
            ]),
            (Element::GroupRing(a), Element::GroupRing(b)) => {
                Element::GroupRing(a.iter().zip(b).map(|(p, q)| p + q).collect())
            }
            (
                Element::Matrix { size, entries: a },
                Element::Matrix { entries: b, .. },
            ) => {
                let base = match self {
                    Ring::Matrix(_, base) => base,
                    _ => unreachable!(),
                };
                let entries = a
                    .iter()
                    .zip(b)
                    .map(|(p, q)| base.add(p, q))
                    .collect::<Result<Vec<_>, _>>()?;
                Element::Matrix { size: *size, entries }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self, x: &Element) -> Result<Element, Error> {
        self.check(x)?;
        Ok(match x {
            Element::Rational(a) => Element::Rational(-a),
            Element::Gaussian(a) => Element::Gaussian([-&a[0], -&a[1]]),
            Element::Quaternion(a) => {
                Element::Quaternion([-&a[0], -&a[1], -&a[2], -&a[3]])
            }
            Element::GroupRing(c) => Element::GroupRing(c.iter().map(|v| -v).collect()),
            Element::Matrix { size, entries } => {
                let base = match self {
                    Ring::Matrix(_, base) => base,
                    _ => unreachable!(),
                };
                Element::Matrix {
                    size: *size,
                    entries: entries
                        .iter()
                        .map(|e| base.neg(e))
                        .collect::<Result<Vec<_>, _>>()?,
                }
            }
        })
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a * b),
            (Element::Gaussian(a), Element::Gaussian(b)) => Element::Gaussian([
                &a[0] * &b[0] - &a[1] * &b[1],
                &a[0] * &b[1] + &a[1] * &b[0],
            ]),
            (Element::Quaternion(a), Element::Quaternion(b)) => {
                let (w1, x1, y1, z1) = (&a[0], &a[1], &a[2], &a[3]);
                let (w2, x2, y2, z2) = (&b[0], &b[1], &b[2], &b[3]);
                Element::Quaternion([
                    w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                    w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                    w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                    w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
                ])
            }
            (Element::GroupRing(a), Element::GroupRing(b)) => {
                // cyclic convolution
                let k = a.len();
                let mut c = vec![BigInt::zero(); k];
                for (i, p) in a.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    for (j, q) in b.iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        c[(i + j) % k] += p * q;
                    }
                }
                Element::GroupRing(c)
            }
            (
                Element::Matrix { size, entries: a },
                Element::Matrix { entries: b, .. },
            ) => {
                let base = match self {
                    Ring::Matrix(_, base) => base,
                    _ => unreachable!(),
                };
                let n = *size;
                let mut entries = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = base.zero();
                        for l in 0..n {
                            let prod = base.mul(&a[i * n + l], &b[l * n + j])?;
                            acc = base.add(&acc, &prod)?;
                        }
                        entries.push(acc);
                    }
                }
                Element::Matrix { size: n, entries }
            }
            _ => unreachable!(),
        })
    }

    /// The natural involution: identity on ℚ, complex/quaternion conjugation,
    /// g ↦ g⁻¹ on group rings, conjugate transpose on matrices.
    pub fn conj(&self, x: &Element) -> Result<Element, Error> {
        self.check(x)?;
        Ok(match x {
            Element::Rational(a) => Element::Rational(a.clone()),
            Element::Gaussian(a) => Element::Gaussian([a[0].clone(), -&a[1]]),
            Element::Quaternion(a) => {
                Element::Quaternion([a[0].clone(), -&a[1], -&a[2], -&a[3]])
            }
            Element::GroupRing(c) => {
                let k = c.len();
                let mut out = vec![BigInt::zero(); k];
                for (e, v) in c.iter().enumerate() {
                    out[(k - e) % k] = v.clone();
                }
                Element::GroupRing(out)
            }
            Element::Matrix { size, entries } => {
                let base = match self {
                    Ring::Matrix(_, base) => base,
                    _ => unreachable!(),
                };
                let n = *size;
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        out.push(base.conj(&entries[j * n + i])?);
                    }
                }
                Element::Matrix { size: n, entries: out }
            }
        })
    }

    /// Exact division by a positive integer. Fails on integer group rings
    /// when a coefficient is not divisible.
    pub fn div_nat(&self, x: &Element, d: u64) -> Result<Element, Error> {
        self.check(x)?;
        let db = BigInt::from(d);
        Ok(match x {
            Element::Rational(a) => Element::Rational(a / BigRational::from_integer(db)),
            Element::Gaussian(a) => {
                let q = BigRational::from_integer(db);
                Element::Gaussian([&a[0] / &q, &a[1] / &q])
            }
            Element::Quaternion(a) => {
                let q = BigRational::from_integer(db);
                Element::Quaternion([&a[0] / &q, &a[1] / &q, &a[2] / &q, &a[3] / &q])
            }
            Element::GroupRing(c) => {
                let mut out = Vec::with_capacity(c.len());
                for v in c {
                    let (q, r) = num_integer::Integer::div_rem(v, &db);
                    if !r.is_zero() {
                        return Err(Error::DivisionUnavailable(d));
                    }
                    out.push(q);
                }
                Element::GroupRing(out)
            }
            Element::Matrix { size, entries } => {
                let base = match self {
                    Ring::Matrix(_, base) => base,
                    _ => unreachable!(),
                };
                Element::Matrix {
                    size: *size,
                    entries: entries
                        .iter()
                        .map(|e| base.div_nat(e, d))
                        .collect::<Result<Vec<_>, _>>()?,
                }
            }
        })
    }

    /// Whether exact division by arbitrary positive integers is available.
    pub fn has_rational_scalars(&self) -> bool {
        match self {
            Ring::Rational | Ring::Gaussian | Ring::Quaternion => true,
            Ring::GroupRing(_) => false,
            Ring::Matrix(_, base) => base.has_rational_scalars(),
        }
    }

    /// Draws a random element with small integer components, deterministic in
    /// the generator state.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Element {
        match self {
            Ring::Rational => Element::Rational(rat(rng.gen_range(-5..=5))),
            Ring::Gaussian => {
                Element::Gaussian([rat(rng.gen_range(-5..=5)), rat(rng.gen_range(-5..=5))])
            }
            Ring::Quaternion => Element::Quaternion([
                rat(rng.gen_range(-3..=3)),
                rat(rng.gen_range(-3..=3)),
                rat(rng.gen_range(-3..=3)),
                rat(rng.gen_range(-3..=3)),
            ]),
            Ring::GroupRing(k) => Element::GroupRing(
                (0..*k).map(|_| BigInt::from(rng.gen_range(-2..=2i64))).collect(),
            ),
            Ring::Matrix(n, base) => Element::Matrix {
                size: *n,
                entries: (0..n * n).map(|_| base.random_element(rng)).collect(),
            },
        }
    }

    /// Draws an element of exact norm one: `p² / N(p)` for a random nonzero
    /// `p`, so that `q · conj(q) = 1` holds exactly.
    pub fn random_unitary<R: Rng>(&self, rng: &mut R) -> Result<Element, Error> {
        match self {
            Ring::Rational => Ok(self.from_integer(if rng.gen::<bool>() { 1 } else { -1 })),
            Ring::Gaussian | Ring::Quaternion => {
                let p = loop {
                    let p = self.random_element(rng);
                    if p != self.zero() {
                        break p;
                    }
                };
                let n = self.mul(&p, &self.conj(&p)?)?;
                let norm = match &n {
                    Element::Gaussian(c) => c[0].clone(),
                    Element::Quaternion(c) => c[0].clone(),
                    _ => unreachable!(),
                };
                let sq = self.mul(&p, &p)?;
                Ok(scale_rational(&sq, &norm.recip()))
            }
            Ring::GroupRing(k) => {
                // group elements are the units of norm one we use here
                let e = rng.gen_range(0..*k);
                let mut c = vec![BigInt::zero(); *k];
                c[e] = BigInt::one();
                Ok(Element::GroupRing(c))
            }
            Ring::Matrix(n, base) => {
                // block-diagonal of scalar unitaries composed with a permutation
                let mut entries = vec![base.zero(); n * n];
                let mut perm: Vec<usize> = (0..*n).collect();
                for i in (1..*n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                for (i, &j) in perm.iter().enumerate() {
                    entries[i * n + j] = base.random_unitary(rng)?;
                }
                Ok(Element::Matrix { size: *n, entries })
            }
        }
    }
}

/// Multiplies every rational component of an element by `s`.
fn scale_rational(x: &Element, s: &BigRational) -> Element {
    match x {
        Element::Rational(a) => Element::Rational(a * s),
        Element::Gaussian(a) => Element::Gaussian([&a[0] * s, &a[1] * s]),
        Element::Quaternion(a) => {
            Element::Quaternion([&a[0] * s, &a[1] * s, &a[2] * s, &a[3] * s])
        }
        _ => panic!("scale_rational on non-rational-component element"),
    }
}

impl Element {
    pub fn is_zero(&self) -> bool {
        match self {
            Element::Rational(a) => a.is_zero(),
            Element::Gaussian(a) => a.iter().all(Zero::is_zero),
            Element::Quaternion(a) => a.iter().all(Zero::is_zero),
            Element::GroupRing(c) => c.iter().all(Zero::is_zero),
            Element::Matrix { entries, .. } => entries.iter().all(Element::is_zero),
        }
    }

    /// Nonnegativity of a rational element; `None` for other kinds.
    pub fn rational_nonnegative(&self) -> Option<bool> {
        match self {
            Element::Rational(a) => Some(!a.is_negative()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Element::Rational(a) => Some(a),
            _ => None,
        }
    }
}

fn render_rat(a: &BigRational) -> String {
    if a.denom().is_one() {
        format!("{}", a.numer())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Canonical text rendering of a ring element.
pub fn render_element(x: &Element) -> String {
    match x {
        Element::Rational(a) => render_rat(a),
        Element::Gaussian(a) => format!("({})+({})i", render_rat(&a[0]), render_rat(&a[1])),
        Element::Quaternion(a) => format!(
            "{}+{}i+{}j+{}k",
            render_rat(&a[0]),
            render_rat(&a[1]),
            render_rat(&a[2]),
            render_rat(&a[3])
        ),
        Element::GroupRing(c) => {
            let parts: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(e, v)| format!("{}·[g^{}]", v, e))
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        }
        Element::Matrix { size, entries } => {
            let mut rows = Vec::with_capacity(*size);
            for i in 0..*size {
                let row: Vec<String> = (0..*size)
                    .map(|j| render_element(&entries[i * size + j]))
                    .collect();
                rows.push(format!("[{}]", row.join(", ")));
            }
            format!("[{}]", rows.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Element {
        Element::Quaternion([rat(w), rat(x), rat(y), rat(z)])
    }

    #[test]
    fn quaternion_table() {
        let h = Ring::Quaternion;
        let i = q(0, 1, 0, 0);
        let j = q(0, 0, 1, 0);
        let k = q(0, 0, 0, 1);
        assert_eq!(h.mul(&i, &j).unwrap(), k);
        assert_eq!(h.mul(&j, &i).unwrap(), h.neg(&k).unwrap());
        assert_eq!(h.mul(&i, &i).unwrap(), h.from_integer(-1));
    }

    #[test]
    fn group_ring_z2_annihilator() {
        let r = Ring::GroupRing(2);
        let one = r.one();
        let g = Element::GroupRing(vec![BigInt::zero(), BigInt::one()]);
        let p = r.add(&one, &g).unwrap();
        let m = r.sub(&one, &g).unwrap();
        assert!(r.mul(&p, &m).unwrap().is_zero());
    }

    #[test]
    fn rational_add() {
        let r = Ring::Rational;
        let half = Element::Rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let third = Element::Rational(BigRational::new(BigInt::from(1), BigInt::from(3)));
        let sum = r.add(&half, &third).unwrap();
        assert_eq!(
            sum,
            Element::Rational(BigRational::new(BigInt::from(5), BigInt::from(6)))
        );
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r = Ring::GroupRing(3);
        let bad = Element::GroupRing(vec![BigInt::one(); 2]);
        assert!(r.add(&bad, &r.one()).is_err());
    }

    #[test]
    fn axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in [
            Ring::Rational,
            Ring::Gaussian,
            Ring::Quaternion,
            Ring::GroupRing(4),
            Ring::Matrix(2, Box::new(Ring::Rational)),
        ] {
            for _ in 0..1000 {
                let x = ring.random_element(&mut rng);
                let y = ring.random_element(&mut rng);
                let z = ring.random_element(&mut rng);
                let xy_z = ring.mul(&ring.mul(&x, &y).unwrap(), &z).unwrap();
                let x_yz = ring.mul(&x, &ring.mul(&y, &z).unwrap()).unwrap();
                assert_eq!(xy_z, x_yz, "associativity in {:?}", ring);
                let lhs = ring.mul(&x, &ring.add(&y, &z).unwrap()).unwrap();
                let rhs = ring
                    .add(&ring.mul(&x, &y).unwrap(), &ring.mul(&x, &z).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "distributivity in {:?}", ring);
                assert_eq!(ring.mul(&x, &ring.one()).unwrap(), x);
                assert_eq!(ring.mul(&ring.one(), &x).unwrap(), x);
            }
        }
    }

    #[test]
    fn unitary_sampling_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ring in [Ring::Gaussian, Ring::Quaternion] {
            for _ in 0..50 {
                let u = ring.random_unitary(&mut rng).unwrap();
                let n = ring.mul(&u, &ring.conj(&u).unwrap()).unwrap();
                assert_eq!(n, ring.one());
            }
        }
    }

    #[test]
    fn conj_is_antihomomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ring in [Ring::Quaternion, Ring::GroupRing(5)] {
            for _ in 0..200 {
                let x = ring.random_element(&mut rng);
                let y = ring.random_element(&mut rng);
                let lhs = ring.conj(&ring.mul(&x, &y).unwrap()).unwrap();
                let rhs = ring
                    .mul(&ring.conj(&y).unwrap(), &ring.conj(&x).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
