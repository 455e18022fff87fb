//! The τ-determinant by direct permutation expansion, and an independent
//! fraction-free determinant for specialized commutative matrices.
//!
//! The expansion follows the cycle form: for each permutation σ the
//! contribution is ε(σ) times the product over cycles of τ applied to the
//! entry product taken in cyclic order; fixed points contribute τ(M_ii).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{PolyMatrix, Polynomial, Trace};
use crate::Error;

/// Default guardrail: 10! ≈ 3.6M cycle products.
pub const DEFAULT_SIZE_CAP: usize = 10;

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Permutation of {0..k-1} with the given factorial-number-system rank.
fn nth_permutation(k: usize, mut rank: u64) -> Vec<usize> {
    let mut items: Vec<usize> = (0..k).collect();
    let mut out = Vec::with_capacity(k);
    for pos in (0..k).rev() {
        let f = factorial(pos);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(items.remove(idx));
    }
    out
}

/// Cycle decomposition of a one-line permutation; fixed points appear as
/// singleton cycles. Each cycle starts at its minimal element.
pub fn cycle_decomposition(perm: &[usize]) -> Vec<Vec<usize>> {
    let k = perm.len();
    let mut seen = vec![false; k];
    let mut cycles = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = perm[start];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            cur = perm[cur];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Signature from the cycle type: ∏ (−1)^{ℓ−1}.
pub fn sign_from_cycles(cycles: &[Vec<usize>], k: usize) -> i64 {
    if (k - cycles.len()) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutation_contribution(
    matrix: &PolyMatrix,
    trace: &Trace,
    traced_diagonal: &[Polynomial],
    perm: &[usize],
) -> Result<Polynomial, Error> {
    let k = perm.len();
    let cycles = cycle_decomposition(perm);
    let sign = sign_from_cycles(&cycles, k);
    let mut acc = Polynomial::one(trace.target.clone());
    for cycle in &cycles {
        let traced = if cycle.len() == 1 {
            traced_diagonal[cycle[0]].clone()
        } else {
            // entry product in cyclic order; coefficient order matters
            let mut prod = matrix.entry(cycle[0], cycle[1]).clone();
            for w in 1..cycle.len() {
                let next = cycle[(w + 1) % cycle.len()];
                prod = prod.mul(matrix.entry(cycle[w], next))?;
            }
            prod.apply_trace(trace)?
        };
        if traced.is_zero() {
            return Ok(Polynomial::zero(trace.target.clone()));
        }
        acc = acc.mul(&traced)?;
    }
    if sign < 0 {
        acc = acc.neg()?;
    }
    Ok(acc)
}

/// τ-determinant of a square polynomial matrix over H, landing in
/// K[a_ij]. Refuses sizes above `cap` (permutation count grows as k!).
pub fn tau_det_with(matrix: &PolyMatrix, trace: &Trace, cap: usize) -> Result<Polynomial, Error> {
    let k = matrix.size;
    if matrix.entries.len() != k * k {
        return Err(Error::NotSquare);
    }
    if matrix.ring != trace.source {
        return Err(Error::PolynomialRingMismatch);
    }
    if k > cap {
        return Err(Error::DeterminantTooLarge(k, cap));
    }
    if k == 0 {
        return Ok(Polynomial::one(trace.target.clone()));
    }
    let traced_diagonal: Vec<Polynomial> = (0..k)
        .map(|i| matrix.entry(i, i).apply_trace(trace))
        .collect::<Result<_, _>>()?;
    let total = factorial(k);
    // expansion parallelizes over permutations; polynomial addition is
    // commutative so the result is schedule-independent
    (0..total)
        .into_par_iter()
        .map(|rank| {
            let perm = nth_permutation(k, rank);
            permutation_contribution(matrix, trace, &traced_diagonal, &perm)
        })
        .try_reduce(
            || Polynomial::zero(trace.target.clone()),
            |a, b| a.add(&b),
        )
}

pub fn tau_det(matrix: &PolyMatrix, trace: &Trace) -> Result<Polynomial, Error> {
    tau_det_with(matrix, trace, DEFAULT_SIZE_CAP)
}

/// Exact determinant of a rational matrix by fraction-free Bareiss
/// elimination. Independent of the permutation expansion above.
pub fn det_exact_commutative(rows: &[Vec<BigRational>]) -> Result<BigRational, Error> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    if n == 0 {
        return Ok(BigRational::one());
    }
    // clear denominators row by row, tracking the accumulated scale
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let mut lcm = BigInt::one();
        for x in row {
            lcm = lcm.lcm(x.denom());
        }
        scale *= &lcm;
        a.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigRational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by the Bareiss identity
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(BigRational::new(sign * a[n - 1][n - 1].clone(), scale))
}
