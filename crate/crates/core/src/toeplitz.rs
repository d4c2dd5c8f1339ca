//! Binomial Toeplitz matrices and the checks showing they are nondegenerate.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::error::invalid;
use crate::linalg;
use crate::Result;

/// Exact binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn signed(i: i64, v: BigInt) -> BigInt {
    if i.rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ToeplitzSpec {
    /// `m×m`, entry `(r,c)` is `(−1)^{r−c} C(2n, n+r−c)`.
    Even { n: usize, m: usize },
    /// `m×m`, entry `(r,c)` is `(−1)^{r−c} C(2n+1, n+r−c+1)`.
    Odd { n: usize, m: usize },
    /// `(k−l+1)×(k−2j+1)`, entry `(r,c)` is `(−1)^{c−r} C(l, j+c−r)`.
    Restriction { l: usize, k: usize, j: usize },
}

impl fmt::Display for ToeplitzSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToeplitzSpec::Even { n, m } => write!(f, "T_even(n={n}, m={m})"),
            ToeplitzSpec::Odd { n, m } => write!(f, "T_odd(n={n}, m={m})"),
            ToeplitzSpec::Restriction { l, k, j } => write!(f, "R(l={l}, k={k}, j={j})"),
        }
    }
}

/// Diagonal value of `T_even(n,·)` at offset `d = r − c`.
pub fn even_diagonal(n: usize, d: i64) -> BigInt {
    let n = n as i64;
    signed(d, binomial(2 * n, n + d))
}

/// Diagonal value of `T_odd(n,·)` at offset `d = r − c`; nonzero for `−n−1 <= d <= n`.
pub fn odd_diagonal(n: usize, d: i64) -> BigInt {
    let n = n as i64;
    signed(d, binomial(2 * n + 1, n + d + 1))
}

pub fn build(spec: ToeplitzSpec) -> Result<Vec<Vec<BigInt>>> {
    Ok(match spec {
        ToeplitzSpec::Even { n, m } => {
            (0..m).map(|r| (0..m).map(|c| even_diagonal(n, r as i64 - c as i64)).collect()).collect()
        }
        ToeplitzSpec::Odd { n, m } => {
            (0..m).map(|r| (0..m).map(|c| odd_diagonal(n, r as i64 - c as i64)).collect()).collect()
        }
        ToeplitzSpec::Restriction { l, k, j } => {
            if l > k || 2 * j > k {
                return Err(invalid(format!("R(l={l}, k={k}, j={j}) needs l <= k and 2j <= k")));
            }
            let (rows, cols) = (k - l + 1, k - 2 * j + 1);
            (0..rows)
                .map(|r| {
                    (0..cols)
                        .map(|c| {
                            let i = c as i64 - r as i64;
                            signed(i, binomial(l as i64, j as i64 + i))
                        })
                        .collect()
                })
                .collect()
        }
    })
}

pub fn det_exact(m: &[Vec<BigInt>]) -> Result<BigInt> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(invalid("determinant of a non-square matrix"));
    }
    Ok(linalg::det_bareiss(m))
}

pub fn column_rank(m: &[Vec<BigInt>]) -> usize {
    linalg::rank_dense(m)
}

pub fn leading_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    linalg::leading_minors(m)
}

/// Deletes the first `j − ⌊(l+1)/2⌋` and the last `j − ⌊l/2⌋` rows of `R(l,k,j)`.
/// The result is square of size `k − 2j + 1`.
pub fn trimmed_restriction(l: usize, k: usize, j: usize) -> Result<(Vec<Vec<BigInt>>, usize)> {
    if l > 2 * j || 2 * j > k {
        return Err(invalid(format!("trimming R(l={l}, k={k}, j={j}) needs l <= 2j <= k")));
    }
    let r = build(ToeplitzSpec::Restriction { l, k, j })?;
    let top = j - (l + 1) / 2;
    let bottom = j - l / 2;
    Ok((r[top..r.len() - bottom].to_vec(), top))
}

fn transpose(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

/// The square block of `R(l,k,j)` predicted by the deletion rule: `±T_even(l/2, m)`
/// for even `l`, `±T_odd((l−1)/2, m)ᵀ` for odd `l`, sign `(−1)^{rows deleted on top}`.
pub fn predicted_trimmed_block(l: usize, k: usize, j: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = k + 1 - 2 * j;
    let top = j - (l + 1) / 2;
    let base = if l % 2 == 0 {
        build(ToeplitzSpec::Even { n: l / 2, m })?
    } else {
        transpose(&build(ToeplitzSpec::Odd { n: (l - 1) / 2, m })?)
    };
    Ok(if top % 2 == 1 { base.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect() } else { base })
}

/// Laurent symbol `Σ_d t_d z^d` of the diagonals.
pub fn even_symbol(n: usize) -> BTreeMap<i64, BigInt> {
    let n = n as i64;
    (-n..=n).map(|d| (d, even_diagonal(n as usize, d))).collect()
}

pub fn odd_symbol(n: usize) -> BTreeMap<i64, BigInt> {
    let n = n as i64;
    (-n - 1..=n).map(|d| (d, odd_diagonal(n as usize, d))).collect()
}

/// Checks `symbol(T_even(n+1)) = (1 − z)·symbol(T_odd(n))` as Laurent polynomials.
pub fn symbol_step_holds(n: usize) -> bool {
    let mut prod: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (d, v) in odd_symbol(n) {
        *prod.entry(d).or_default() += &v;
        *prod.entry(d + 1).or_default() -= &v;
    }
    prod.retain(|_, v| !v.is_zero());
    let mut even = even_symbol(n + 1);
    even.retain(|_, v| !v.is_zero());
    prod == even
}

#[derive(Clone, Debug, Serialize)]
pub struct ToeplitzCheck {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, cases: usize, failures: Vec<String>) -> ToeplitzCheck {
    ToeplitzCheck {
        name: name.to_string(),
        cases,
        passed: failures.is_empty(),
        detail: failures.into_iter().take(3).collect::<Vec<_>>().join("; "),
    }
}

/// The nondegeneracy battery: minors, odd determinants, restriction ranks,
/// the even-level identity and the deletion rule, for `n <= max_n`, sizes `<= max_m`.
pub fn verify_all(max_n: usize, max_m: usize) -> Result<Vec<ToeplitzCheck>> {
    let mut out = Vec::new();

    let (mut cases, mut fails) = (0, Vec::new());
    for n in 1..=max_n {
        for m in 1..=max_m {
            cases += 1;
            let t = build(ToeplitzSpec::Even { n, m })?;
            if let Some(bad) = leading_minors(&t).iter().position(|v| !v.is_positive()) {
                fails.push(format!("T_even({n},{m}) minor {}", bad + 1));
            }
        }
    }
    out.push(check("even leading minors positive", cases, fails));

    let (mut cases, mut fails) = (0, Vec::new());
    for n in 0..=max_n {
        for m in 1..=max_m {
            cases += 1;
            if det_exact(&build(ToeplitzSpec::Odd { n, m })?)?.is_zero() {
                fails.push(format!("det T_odd({n},{m}) = 0"));
            }
        }
    }
    out.push(check("odd determinants nonzero", cases, fails));

    let (mut cases, mut fails) = (0, Vec::new());
    let (mut trim_cases, mut trim_fails) = (0, Vec::new());
    for k in 0..=max_m {
        for j in 0..=k / 2 {
            for l in 0..=(2 * j).min(k) {
                cases += 1;
                let r = build(ToeplitzSpec::Restriction { l, k, j })?;
                if column_rank(&r) != k - 2 * j + 1 {
                    fails.push(format!("rank R({l},{k},{j})"));
                }
                trim_cases += 1;
                if trimmed_restriction(l, k, j)?.0 != predicted_trimmed_block(l, k, j)? {
                    trim_fails.push(format!("trimmed R({l},{k},{j})"));
                }
            }
        }
    }
    out.push(check("restriction matrices injective", cases, fails));
    out.push(check("deletion rule", trim_cases, trim_fails));

    let (mut cases, mut fails) = (0, Vec::new());
    for k in 0..=max_m {
        for j in 0..=k / 2 {
            cases += 1;
            let r = build(ToeplitzSpec::Restriction { l: 2 * j, k, j })?;
            if r != build(ToeplitzSpec::Even { n: j, m: k + 1 - 2 * j })? {
                fails.push(format!("R({},{k},{j})", 2 * j));
            }
        }
    }
    out.push(check("square restriction equals T_even", cases, fails));

    let fails = (0..max_n).filter(|&n| !symbol_step_holds(n)).map(|n| format!("symbol step n={n}")).collect();
    out.push(check("symbol factorization", max_n, fails));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{det_cofactor, to_big_matrix};

    #[test]
    fn listed_matrices() {
        let t = build(ToeplitzSpec::Even { n: 1, m: 3 }).unwrap();
        assert_eq!(t, to_big_matrix(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]));
        assert_eq!(det_exact(&t).unwrap(), BigInt::from(4));
        let o = build(ToeplitzSpec::Odd { n: 1, m: 2 }).unwrap();
        assert_eq!(o, to_big_matrix(&[vec![3, -3], vec![-1, 3]]));
        assert!(det_exact(&[vec![BigInt::one(), BigInt::zero()]]).is_err());
    }

    #[test]
    fn tridiagonal_determinants() {
        for m in 1..=12 {
            let t = build(ToeplitzSpec::Even { n: 1, m }).unwrap();
            assert_eq!(det_exact(&t).unwrap(), BigInt::from(m + 1));
            if m <= 8 {
                assert_eq!(det_cofactor(&t), BigInt::from(m + 1));
            }
        }
    }

    #[test]
    fn determinants_agree_with_cofactors() {
        for n in 1..=4 {
            for m in 1..=6 {
                for spec in [ToeplitzSpec::Even { n, m }, ToeplitzSpec::Odd { n, m }] {
                    let t = build(spec).unwrap();
                    assert_eq!(det_exact(&t).unwrap(), det_cofactor(&t), "{spec}");
                }
            }
        }
    }

    #[test]
    fn battery_passes() {
        for c in verify_all(6, 12).unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(column_rank(&vec![vec![BigInt::zero(); 3]; 2]), 0);
    }
}
