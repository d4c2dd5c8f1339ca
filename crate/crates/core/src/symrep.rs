//! Sign-isotypic dimensions of `Λ^q(V⊗ρ_k)` and `Λ^q(V⊗R_k)` for `dim V = 2`,
//! and explicit tensor-model checks of the wedge identities behind them.
//!
//! `R_k` is the permutation representation of `S_k`, `ρ_k = R_k − 1_k` the
//! standard one. Characters come from `det(1 + tσ | V⊗R_k) = ∏_cycles (1 − (−t)^c)^2`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::Serialize;

use crate::combinat::enumerate_partitions;
use crate::linalg;
use crate::perm::{self, Perm};
use crate::{Error, Result};

/// `Σ_q dim(anti-invariants of Λ^q) t^q`, coefficient `q` at index `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimSeries {
    pub coeffs: Vec<BigInt>,
}

impl GradedDimSeries {
    pub fn coeff(&self, q: usize) -> BigInt {
        self.coeffs.get(q).cloned().unwrap_or_default()
    }
}

impl fmt::Display for GradedDimSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(q, c)| match q {
                0 => format!("{c}"),
                1 => format!("{c} t"),
                _ => format!("{c} t^{q}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

type Series = Vec<BigInt>;

fn mul(a: &Series, b: &Series) -> Series {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by `1 + t`; `None` when the remainder is nonzero.
fn div_one_plus_t(a: &Series) -> Option<Series> {
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(1)];
    for i in (1..rem.len()).rev() {
        let c = rem[i].clone();
        q[i - 1] = c.clone();
        rem[i] -= &c;
        rem[i - 1] -= &c;
    }
    rem[0].is_zero().then_some(q)
}

/// `det(1 + tσ | V⊗R_k)` for a permutation of cycle type `cycles`.
pub fn char_poly_r(cycles: &[usize]) -> Series {
    let mut p: Series = vec![BigInt::one()];
    for &c in cycles {
        // 1 − (−t)^c
        let mut f = vec![BigInt::zero(); c + 1];
        f[0] = BigInt::one();
        f[c] = if c % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        p = mul(&p, &f);
        p = mul(&p, &f);
    }
    p
}

fn class_size(cycles: &[usize]) -> BigInt {
    let k: usize = cycles.iter().sum();
    let mut z = BigInt::one();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in cycles {
        *counts.entry(c).or_default() += 1;
        z *= BigInt::from(c);
    }
    for &m in counts.values() {
        z *= BigInt::from(perm::factorial(m));
    }
    BigInt::from(perm::factorial(k)) / z
}

fn average(k: usize, standard: bool) -> Result<GradedDimSeries> {
    if k == 0 {
        return Err(crate::error::invalid("k must be at least 1"));
    }
    let len = 2 * k + 1;
    let mut total = vec![BigInt::zero(); len];
    for mu in enumerate_partitions(k, k) {
        let cycles = mu.parts();
        let mut p = char_poly_r(cycles);
        if standard {
            p = div_one_plus_t(&p).and_then(|q| div_one_plus_t(&q)).ok_or_else(|| {
                Error::NonIntegral(format!("character of cycle type {mu} not divisible by (1+t)^2"))
            })?;
        }
        let sign = if (k - cycles.len()) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let w = class_size(cycles) * sign;
        for (q, c) in p.iter().enumerate() {
            total[q] += &w * c;
        }
    }
    let order = BigInt::from(perm::factorial(k));
    let mut coeffs = Vec::with_capacity(len);
    for (q, c) in total.into_iter().enumerate() {
        let (quot, rem) = c.div_rem(&order);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::NonIntegral(format!("signed average at q={q} for k={k}")));
        }
        coeffs.push(quot);
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(GradedDimSeries { coeffs })
}

/// Sign-isotypic dimensions of `Λ^q(V⊗ρ_k)`: `k t^{k−1}`.
pub fn antiinv_dims_rho(k: usize) -> Result<GradedDimSeries> {
    average(k, true)
}

/// Sign-isotypic dimensions of `Λ^q(V⊗R_k)`: `k t^{k−1} + 2k t^k + k t^{k+1}`.
pub fn antiinv_dims_r(k: usize) -> Result<GradedDimSeries> {
    average(k, false)
}

/// Matrix of `σ` on `V⊗R_k` (`standard = false`) or `V⊗ρ_k` in the basis
/// `e_i − e_k` (`standard = true`); `V` contributes two identical blocks.
fn rep_matrix(sigma: &[usize], standard: bool) -> Vec<Vec<BigInt>> {
    let k = sigma.len();
    let d = if standard { k - 1 } else { k };
    let mut one = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        if standard {
            if sigma[i] != k - 1 {
                one[sigma[i]][i] += 1;
            }
            if sigma[k - 1] != k - 1 {
                one[sigma[k - 1]][i] -= 1;
            }
        } else {
            one[sigma[i]][i] += 1;
        }
    }
    let mut m = vec![vec![BigInt::zero(); 2 * d]; 2 * d];
    for b in 0..2 {
        for r in 0..d {
            for c in 0..d {
                m[b * d + r][b * d + c] = one[r][c].clone();
            }
        }
    }
    m
}

/// Trace on `Λ^q` as the sum of principal `q×q` minors.
fn exterior_trace(m: &[Vec<BigInt>], q: usize) -> BigInt {
    let n = m.len();
    let mut total = BigInt::zero();
    for rows in itertools::Itertools::combinations(0..n, q) {
        let sub: Vec<Vec<BigInt>> = rows.iter().map(|&r| rows.iter().map(|&c| m[r][c].clone()).collect()).collect();
        total += linalg::det_bareiss(&sub);
    }
    total
}

/// Explicit-matrix oracle: averages `sign(σ)·tr(σ | Λ^q)` over all of `S_k`.
pub fn antiinv_dims_brute(k: usize, standard: bool) -> Result<GradedDimSeries> {
    let group = perm::all(k);
    let order = BigInt::from(group.len());
    let mats: Vec<(i64, Vec<Vec<BigInt>>)> = group.iter().map(|s| (perm::sign(s), rep_matrix(s, standard))).collect();
    let dim = mats[0].1.len();
    let mut coeffs = Vec::new();
    for q in 0..=dim {
        let mut sum = BigInt::zero();
        for (sg, m) in &mats {
            sum += BigInt::from(*sg) * exterior_trace(m, q);
        }
        let (quot, rem) = sum.div_rem(&order);
        if !rem.is_zero() {
            return Err(Error::NonIntegral(format!("brute-force average at q={q}")));
        }
        coeffs.push(quot);
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(GradedDimSeries { coeffs })
}

// ---- tensor and wedge models -------------------------------------------------

/// Tensors in `R_k^{⊗m}`: index words (1-based basis labels) to coefficients.
type Tensor = BTreeMap<Vec<usize>, i64>;

fn antisymmetrize(word: &[usize], coeff: i64, out: &mut Tensor) {
    for p in perm::all(word.len()) {
        let w: Vec<usize> = p.iter().map(|&i| word[i]).collect();
        *out.entry(w).or_default() += coeff * perm::sign(&p);
    }
}

/// `ω_m = Σ_i (−1)^{m+1−i} ê_i` over the ordered labels `idx` (length `m+1`),
/// written as a tensor via `w_1∧…∧w_m ↦ Σ_σ sign(σ) w_σ(1)⊗…⊗w_σ(m)`.
fn omega_tensor(idx: &[usize]) -> Tensor {
    let m = idx.len() - 1;
    let mut out = Tensor::new();
    for (pos, _) in idx.iter().enumerate() {
        let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &x)| x).collect();
        let sign = if (m - pos) % 2 == 0 { 1 } else { -1 };
        antisymmetrize(&rest, sign, &mut out);
    }
    out.retain(|_, v| *v != 0);
    out
}

fn relabel(t: &Tensor, map: &dyn Fn(usize) -> usize) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in t {
        *out.entry(w.iter().map(|&x| map(x)).collect()).or_default() += c;
    }
    out
}

fn add_scaled(acc: &mut Tensor, t: &Tensor, s: i64) {
    for (w, c) in t {
        *acc.entry(w.clone()).or_default() += s * c;
    }
    acc.retain(|_, v| *v != 0);
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    pub k: usize,
    /// `Σ_τ sign(τ) e_τ(1)⊗…⊗e_τ(k−1) = ω_{k−1}`.
    pub permutation_sum: bool,
    /// The coset sum of `ω_{k−2}⊗σ_{k−1}` equals `ω_{k−1}` with transposition representatives.
    pub coset_sum: bool,
    /// Same with every representative `(ik)` replaced by `(ik)∘π`, `π ∈ S_{k−1}`.
    pub coset_sum_other_representatives: bool,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.permutation_sum && self.coset_sum && self.coset_sum_other_representatives
    }
}

fn coset_sum(k: usize, twist: &dyn Fn(usize) -> Perm) -> Tensor {
    let lower = omega_tensor(&(1..k).collect::<Vec<_>>());
    let mut base = Tensor::new();
    for (w, c) in &lower {
        for j in 1..k {
            let mut w2 = w.clone();
            w2.push(j);
            *base.entry(w2).or_default() += c;
        }
    }
    let mut total = Tensor::new();
    for i in 1..=k {
        // representative (ik)∘π, with π fixing k; labels are 1-based.
        let mut tr = perm::identity(k);
        tr.swap(i - 1, k - 1);
        let rep = perm::compose(&tr, &twist(i));
        let moved = relabel(&base, &|x| rep[x - 1] + 1);
        add_scaled(&mut total, &moved, perm::sign(&rep));
    }
    total
}

pub fn verify_omega(k: usize) -> Result<OmegaReport> {
    if !(2..=7).contains(&k) {
        return Err(crate::error::invalid("verify_omega supports 2 <= k <= 7"));
    }
    let target = omega_tensor(&(1..=k).collect::<Vec<_>>());
    let mut perm_sum = Tensor::new();
    for p in perm::all(k) {
        let w: Vec<usize> = p[..k - 1].iter().map(|&x| x + 1).collect();
        *perm_sum.entry(w).or_default() += perm::sign(&p);
    }
    perm_sum.retain(|_, v| *v != 0);
    let plain = coset_sum(k, &|_| perm::identity(k));
    // A fixed but varied element of S_{k−1} per coset: a rotation of 1..k−1 by i.
    let rotated = coset_sum(k, &|i| {
        let mut p = perm::identity(k);
        for (x, slot) in p.iter_mut().enumerate().take(k - 1) {
            *slot = (x + i) % (k - 1);
        }
        p
    });
    Ok(OmegaReport {
        k,
        permutation_sum: perm_sum == target,
        coset_sum: plain == target,
        coset_sum_other_representatives: rotated == target,
    })
}

/// Elements of `Λ(V⊗R_k)`: sorted words of basis labels `(v, e)` to coefficients.
type Wedge = BTreeMap<Vec<(usize, usize)>, BigRational>;

fn wedge_word(word: Vec<(usize, usize)>) -> Option<(Vec<(usize, usize)>, i64)> {
    let s = perm::sort_sign(&word);
    if s == 0 {
        return None;
    }
    let mut w = word;
    w.sort();
    Some((w, s))
}

fn wedge_mul(a: &Wedge, b: &Wedge) -> Wedge {
    let mut out = Wedge::new();
    for (x, c) in a {
        for (y, d) in b {
            let mut w = x.clone();
            w.extend_from_slice(y);
            if let Some((w, s)) = wedge_word(w) {
                *out.entry(w).or_insert_with(BigRational::zero) += c * d * BigRational::from_integer(s.into());
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn wedge_add(acc: &mut Wedge, t: &Wedge, s: &BigRational) {
    for (w, c) in t {
        *acc.entry(w.clone()).or_insert_with(BigRational::zero) += c * s;
    }
    acc.retain(|_, v| !v.is_zero());
}

/// `incl(u_1⋯u_m ⊗ w_1∧…∧w_m) = Σ_τ (u_τ(1)⊗w_1)∧…∧(u_τ(m)⊗w_m)`.
fn incl(us: &[usize], es: &[usize], coeff: &BigRational) -> Wedge {
    let mut out = Wedge::new();
    for t in perm::all(us.len()) {
        let word: Vec<(usize, usize)> = es.iter().enumerate().map(|(p, &e)| (us[t[p]], e)).collect();
        if let Some((w, s)) = wedge_word(word) {
            *out.entry(w).or_insert_with(BigRational::zero) += coeff * BigRational::from_integer(s.into());
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Terms `(sign, labels)` of `ω_m` on ordered labels, as wedge monomials.
fn omega_terms(idx: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let m = idx.len() - 1;
    (0..idx.len())
        .map(|pos| {
            let rest = idx.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &x)| x).collect();
            (if (m - pos) % 2 == 0 { 1 } else { -1 }, rest)
        })
        .collect()
}

fn frac(a: i64, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The wedge-model image of `u ⊗ v` (with `u ∈ S^{k−2}V` a monomial) through the
/// inclusions `f_i`, summed over cosets with signs.
fn sym_map_image(k: usize, us: &[usize], v: usize) -> Wedge {
    let mut inner = Wedge::new();
    for (s, es) in omega_terms(&(1..k).collect::<Vec<_>>()) {
        wedge_add(&mut inner, &incl(us, &es, &frac(s, perm::factorial(k - 2))), &BigRational::one());
    }
    let sigma: Wedge = (1..k).map(|j| (vec![(v, j)], BigRational::one())).collect();
    let base = wedge_mul(&inner, &sigma);
    let mut total = Wedge::new();
    for i in 1..=k {
        let moved: Wedge = base
            .iter()
            .filter_map(|(w, c)| {
                let word = w
                    .iter()
                    .map(|&(a, e)| {
                        let e2 = if e == i { k } else if e == k { i } else { e };
                        (a, e2)
                    })
                    .collect();
                wedge_word(word).map(|(w2, s)| (w2, c * BigRational::from_integer(s.into())))
            })
            .collect();
        let sign = if i == k { 1 } else { -1 };
        wedge_add(&mut total, &moved, &frac(sign, (k - 1) as u128));
    }
    total
}

/// `incl(u·v ⊗ ω̂_{k−1})` with `ω̂_{k−1} = ω_{k−1}/(k−1)!`.
fn sym_image(k: usize, us: &[usize], v: usize) -> Wedge {
    let mut all = us.to_vec();
    all.push(v);
    let mut out = Wedge::new();
    for (s, es) in omega_terms(&(1..=k).collect::<Vec<_>>()) {
        wedge_add(&mut out, &incl(&all, &es, &frac(s, perm::factorial(k - 1))), &BigRational::one());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SymMapReport {
    pub k: usize,
    pub inputs: usize,
    /// The single rational `c` with `map = c·(k−1)·sym` on every input, if one exists.
    pub global_factor: Option<String>,
    pub passed: bool,
}

/// Compares the coset-summed inclusion map on `S^{k−2}V ⊗ V` with `(k−1)·sym`
/// for every monomial input, `dim V = 2`.
pub fn verify_sym_map(k: usize) -> Result<SymMapReport> {
    if !(2..=5).contains(&k) {
        return Err(crate::error::invalid("verify_sym_map supports 2 <= k <= 5"));
    }
    let mut ratio: Option<BigRational> = None;
    let mut ok = true;
    let mut inputs = 0;
    for us in itertools::Itertools::combinations_with_replacement(0..2usize, k - 2) {
        for v in 0..2 {
            inputs += 1;
            let lhs = sym_map_image(k, &us, v);
            let rhs = sym_image(k, &us, v);
            if rhs.is_empty() {
                ok &= lhs.is_empty();
                continue;
            }
            let (w, r) = rhs.iter().next().unwrap();
            let c = lhs.get(w).cloned().unwrap_or_else(BigRational::zero) / r;
            let mut scaled = Wedge::new();
            wedge_add(&mut scaled, &rhs, &c);
            ok &= scaled == lhs;
            match &ratio {
                None => ratio = Some(c),
                Some(prev) => ok &= *prev == c,
            }
        }
    }
    let positive = ratio.as_ref().is_some_and(|r| r.is_positive());
    Ok(SymMapReport { k, inputs, global_factor: ratio.map(|r| r.to_string()), passed: ok && positive })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[i64]) -> GradedDimSeries {
        GradedDimSeries { coeffs: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    #[test]
    fn standard_rep_dims() {
        assert_eq!(antiinv_dims_rho(2).unwrap(), series(&[0, 2]));
        assert_eq!(antiinv_dims_rho(3).unwrap(), series(&[0, 0, 3]));
        assert_eq!(antiinv_dims_rho(3).unwrap().to_string(), "3 t^2");
        let s5 = antiinv_dims_rho(5).unwrap();
        for q in 0..=12 {
            assert_eq!(s5.coeff(q), BigInt::from(if q == 4 { 5 } else { 0 }));
        }
    }

    #[test]
    fn permutation_rep_dims() {
        assert_eq!(antiinv_dims_r(1).unwrap(), series(&[1, 2, 1]));
        assert_eq!(antiinv_dims_r(3).unwrap(), series(&[0, 0, 3, 6, 3]));
        assert_eq!(antiinv_dims_r(6).unwrap().coeff(7), BigInt::from(6));
    }

    #[test]
    fn brute_force_matches_characters() {
        for k in 1..=4 {
            assert_eq!(antiinv_dims_brute(k, false).unwrap(), antiinv_dims_r(k).unwrap(), "R_{k}");
            if k >= 2 {
                assert_eq!(antiinv_dims_brute(k, true).unwrap(), antiinv_dims_rho(k).unwrap(), "rho_{k}");
            }
        }
    }

    #[test]
    fn omega_identities() {
        for k in 2..=6 {
            let r = verify_omega(k).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn sym_map_factor_is_one() {
        for k in 2..=4 {
            let r = verify_sym_map(k).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.global_factor.as_deref(), Some("1"));
        }
    }
}
