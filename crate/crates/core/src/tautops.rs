//! Higher differences, the restriction-kernel filtration on the affine model,
//! the graded-dimension oracle, and symbolic checks of the operator identities.
//!
//! A tuple `(x_λ)` indexed by `c_n(k)` lies in the kernel filtration step `E^l`
//! when `Δ^{l'}_{μ,A}(x) ∈ I_A^{l'}` for every `1 ≤ l' ≤ l` and `(μ, A) ∈ B(k, l')`.
//! The full kernel is `E^{k−1}`. Every condition preserves total degree, so the
//! linear systems are solved one homogeneous degree at a time.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{enumerate_compositions, enumerate_partitions, m_mu, Composition, Partition};
use crate::error::invalid;
use crate::polyjet::{self, binom_i64, monomial_jet, monomials, DiagonalIdeal, ImageBuilder, PolyRing};
use crate::perm::{self, Perm};
use crate::poly::{rat, Exp, Poly};
use crate::{Error, Result};

/// Default refusal threshold for `unknowns × rows` of one linear system.
pub const DEFAULT_MAX_MATRIX_ENTRIES: usize = 2_000_000;

/// The matrix-size cap, overridable through `HILBTAUT_MAX_MATRIX_ENTRIES`.
pub fn max_matrix_entries() -> usize {
    std::env::var("HILBTAUT_MAX_MATRIX_ENTRIES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_MATRIX_ENTRIES)
}

/// One polynomial per composition in `c_n(k)`, all in the ring of `n` points.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionTuple {
    pub n: usize,
    pub k: usize,
    entries: BTreeMap<Composition, Poly>,
}

impl SectionTuple {
    pub fn new(n: usize, k: usize, entries: BTreeMap<Composition, Poly>) -> Result<Self> {
        let expected = enumerate_compositions(n, k);
        if entries.len() != expected.len() || expected.iter().any(|c| !entries.contains_key(c)) {
            return Err(invalid(format!("tuple must be indexed exactly by c_{n}({k})")));
        }
        if entries.values().any(|p| p.nvars() != 2 * n) {
            return Err(invalid("tuple entries must live in the ring of n points"));
        }
        Ok(SectionTuple { n, k, entries })
    }

    pub fn get(&self, lambda: &Composition) -> &Poly {
        &self.entries[lambda]
    }

    /// `(σ·x)_{σλ} = σ_* x_λ`.
    pub fn act(&self, sigma: &[usize]) -> SectionTuple {
        let entries = self.entries.iter().map(|(l, p)| (l.act(sigma), polyjet::symmetrize(p, sigma))).collect();
        SectionTuple { n: self.n, k: self.k, entries }
    }
}

fn check_pair(n: usize, pair: DiagonalIdeal) -> Result<()> {
    if pair.a1 > n {
        return Err(invalid(format!("pair ({},{}) outside 1..={n}", pair.a0, pair.a1)));
    }
    Ok(())
}

/// Coefficients of `Δ^l_{μ,A}` on the formal symbols `x_λ`:
/// `Σ_i (−1)^i C(l,i) x_{μ + i·e_{a0} + (l−i)·e_{a1}}`.
pub fn difference_coefficients(l: usize, mu: &Composition, pair: DiagonalIdeal) -> BTreeMap<Composition, i64> {
    let mut out = BTreeMap::new();
    for i in 0..=l {
        let lambda = mu.plus_unit(pair.a0, i).plus_unit(pair.a1, l - i);
        let c = if i % 2 == 0 { 1 } else { -1 } * binom_i64(l, i);
        *out.entry(lambda).or_insert(0) += c;
    }
    out
}

/// `Δ^l_{μ,A}(x)`.
pub fn higher_difference(x: &SectionTuple, l: usize, mu: &Composition, pair: DiagonalIdeal) -> Result<Poly> {
    if mu.range() != x.n || mu.weight() + l != x.k {
        return Err(Error::WeightMismatch { expected: x.k, got: mu.weight() + l });
    }
    check_pair(x.n, pair)?;
    let mut out = Poly::zero(2 * x.n);
    for (lambda, c) in difference_coefficients(l, mu, pair) {
        out = &out + &x.get(&lambda).scale(&rat(c));
    }
    Ok(out)
}

/// `(−1)^{l(l−1)/2} l!`, the constant relating spectral-sequence differentials
/// to the restriction operators.
pub fn comparison_constant(l: usize) -> BigInt {
    let f = BigInt::from(perm::factorial(l));
    if (l * l.saturating_sub(1) / 2) % 2 == 0 {
        f
    } else {
        -f
    }
}

fn all_pairs(n: usize) -> Vec<DiagonalIdeal> {
    let mut v = Vec::new();
    for a0 in 1..=n {
        for a1 in a0 + 1..=n {
            v.push(DiagonalIdeal { a0, a1 });
        }
    }
    v
}

/// `(l', block)` entries touching the symbol `x_λ`: block = `(l', μ, A)`.
type Block = (usize, Composition, DiagonalIdeal);

fn blocks_touching(lambda: &Composition, max_level: usize, pairs: &[DiagonalIdeal]) -> Vec<(Block, i64)> {
    let mut out = Vec::new();
    for &pair in pairs {
        let (v0, v1) = (lambda.values()[pair.a0 - 1], lambda.values()[pair.a1 - 1]);
        for level in 1..=max_level {
            for i in 0..=level {
                if i > v0 || level - i > v1 {
                    continue;
                }
                let mut mu = lambda.values().to_vec();
                mu[pair.a0 - 1] -= i;
                mu[pair.a1 - 1] -= level - i;
                let c = if i % 2 == 0 { 1 } else { -1 } * binom_i64(level, i);
                out.push(((level, Composition::new(mu), pair), c));
            }
        }
    }
    out
}

/// Unknowns of degree `d`: orbit sums of `(λ, monomial)` under `S_n`, or single pairs.
fn tuple_unknowns(n: usize, k: usize, d: usize, invariant: bool) -> Vec<Vec<(Composition, Exp)>> {
    let comps = enumerate_compositions(n, k);
    let mons = monomials(2 * n, d);
    if !invariant {
        return comps.iter().flat_map(|c| mons.iter().map(move |m| vec![(c.clone(), m.clone())])).collect();
    }
    let group = perm::all(n);
    let mut seen: std::collections::HashSet<(Composition, Exp)> = std::collections::HashSet::new();
    let mut out = Vec::new();
    for c in &comps {
        for m in &mons {
            if seen.contains(&(c.clone(), m.clone())) {
                continue;
            }
            let mut orbit: Vec<(Composition, Exp)> =
                group.iter().map(|s| (c.act(s), polyjet::act_exp(m, s))).collect();
            orbit.sort();
            orbit.dedup();
            for e in &orbit {
                seen.insert(e.clone());
            }
            out.push(orbit);
        }
    }
    out
}

fn nullity_in_degree(n: usize, k: usize, d: usize, level: usize, invariant: bool, cap: usize) -> Result<usize> {
    let unknowns = tuple_unknowns(n, k, d, invariant);
    if level == 0 {
        return Ok(unknowns.len());
    }
    let pairs = all_pairs(n);
    let mut touch: HashMap<Composition, Vec<(Block, i64)>> = HashMap::new();
    let mut block_ids: HashMap<Block, usize> = HashMap::new();
    let mut b: ImageBuilder<(usize, Exp)> = ImageBuilder::new();
    for unknown in &unknowns {
        let mut image: HashMap<(usize, Exp), i64> = HashMap::new();
        for (lambda, m) in unknown {
            let entries = touch.entry(lambda.clone()).or_insert_with(|| blocks_touching(lambda, level, &pairs));
            for (block, c) in entries.iter() {
                let next = block_ids.len();
                let id = *block_ids.entry(block.clone()).or_insert(next);
                for (t, w) in monomial_jet(m, block.2, block.0) {
                    *image.entry((id, t)).or_default() += c * w;
                }
            }
        }
        b.push(image);
        if b.entries() > cap {
            return Err(Error::ResourceCap { entries: b.entries(), cap });
        }
    }
    Ok(b.unknowns() - b.rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelNullity {
    pub n: usize,
    pub k: usize,
    pub invariant: bool,
    /// Dimension of the kernel in each homogeneous degree `0..=max_deg`.
    pub per_degree: Vec<usize>,
    /// Running sums: the kernel in degree `≤ d`.
    pub cumulative: Vec<usize>,
}

fn cumulative(v: &[usize]) -> Vec<usize> {
    v.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Nullity of the stacked system for `E^level`, per degree.
pub fn filtration_nullity(n: usize, k: usize, max_deg: usize, level: usize, invariant: bool) -> Result<KernelNullity> {
    filtration_nullity_capped(n, k, max_deg, level, invariant, max_matrix_entries())
}

/// As [`filtration_nullity`] with an explicit matrix-size cap.
pub fn filtration_nullity_capped(
    n: usize,
    k: usize,
    max_deg: usize,
    level: usize,
    invariant: bool,
    cap: usize,
) -> Result<KernelNullity> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let per_degree = (0..=max_deg)
        .map(|d| nullity_in_degree(n, k, d, level, invariant, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelNullity { n, k, invariant, cumulative: cumulative(&per_degree), per_degree })
}

/// Nullity of the full kernel `E^{k−1}(n,k)` (no conditions for `k ≤ 1`).
pub fn kernel_nullity(n: usize, k: usize, max_deg: usize, invariant: bool) -> Result<KernelNullity> {
    filtration_nullity(n, k, max_deg, k.saturating_sub(1), invariant)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub n: usize,
    pub k: usize,
    pub max_deg: usize,
    /// `full[l][d]`: dimension of `E^l` in degree `d`, for `l = 0..k−1`.
    pub full: Vec<Vec<usize>>,
    /// Same for the `S_n`-invariant tuples.
    pub invariant: Vec<Vec<usize>>,
}

pub fn filtration_report(n: usize, k: usize, max_deg: usize) -> Result<FiltrationReport> {
    let levels = k.max(1);
    let mut full = Vec::new();
    let mut inv = Vec::new();
    for level in 0..levels {
        full.push(filtration_nullity(n, k, max_deg, level, false)?.per_degree);
        inv.push(filtration_nullity(n, k, max_deg, level, true)?.per_degree);
    }
    Ok(FiltrationReport { n, k, max_deg, full, invariant: inv })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExponentRule {
    /// `e_ij = 2 m_μ` for every pair.
    Uniform,
    /// `e_ij = 2 μ_j` for `i < j`.
    PerPair,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedDims {
    pub mu: String,
    /// Homogeneous dimensions in degrees `0..=max_deg`.
    pub per_degree: Vec<usize>,
}

/// For each `μ ∈ p_n(k)` in refined order: dimensions of the `Stab(μ)`-invariant part of
/// `⋂_{i<j≤l(μ)} I_ij^{e_ij}`.
pub fn graded_dims(n: usize, k: usize, max_deg: usize, rule: ExponentRule) -> Result<Vec<GradedDims>> {
    let ring = PolyRing::new(n, max_deg);
    let mut out = Vec::new();
    for mu in enumerate_partitions(k, n) {
        let group: Vec<Perm> = mu.as_composition(n)?.stabilizer();
        let pairs = graded_pairs(&mu, rule)?;
        out.push(GradedDims { mu: mu.to_string(), per_degree: polyjet::intersection_dims(&pairs, &ring, Some(&group)) });
    }
    Ok(out)
}

fn graded_pairs(mu: &Partition, rule: ExponentRule) -> Result<Vec<(DiagonalIdeal, usize)>> {
    let parts = mu.parts();
    let uniform = if parts.is_empty() { 0 } else { 2 * m_mu(mu)? };
    let mut pairs = Vec::new();
    for j in 1..=parts.len() {
        for i in 1..j {
            let e = match rule {
                ExponentRule::Uniform => uniform,
                ExponentRule::PerPair => 2 * parts[j - 1],
            };
            if e > 0 {
                pairs.push((DiagonalIdeal { a0: i, a1: j }, e));
            }
        }
    }
    Ok(pairs)
}

/// Whether `(n, k)` lies in the range where the graded description is proven.
pub fn in_proven_range(n: usize, k: usize) -> bool {
    n <= 2 || k <= 4
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationCheck {
    pub n: usize,
    pub k: usize,
    pub max_deg: usize,
    pub rule: ExponentRule,
    pub kernel: Vec<usize>,
    pub graded_sum: Vec<usize>,
    pub graded: Vec<GradedDims>,
    pub mismatch_degree: Option<usize>,
    pub conjectural: bool,
    pub passed: bool,
}

/// Compares the invariant kernel with the sum of graded dimensions, degree by degree.
pub fn verify_filtration(n: usize, k: usize, max_deg: usize, rule: ExponentRule, exploratory: bool) -> Result<FiltrationCheck> {
    let conjectural = !in_proven_range(n, k);
    if conjectural && !exploratory {
        return Err(Error::Unsupported(format!("(n,k) = ({n},{k}) is outside n <= 2 or k <= 4; use exploratory mode")));
    }
    let kernel = kernel_nullity(n, k, max_deg, true)?.per_degree;
    let graded = graded_dims(n, k, max_deg, rule)?;
    let graded_sum: Vec<usize> = (0..=max_deg).map(|d| graded.iter().map(|g| g.per_degree[d]).sum()).collect();
    let mismatch_degree = (0..=max_deg).find(|&d| kernel[d] != graded_sum[d]);
    Ok(FiltrationCheck {
        n,
        k,
        max_deg,
        rule,
        passed: mismatch_degree.is_none(),
        kernel,
        graded_sum,
        graded,
        mismatch_degree,
        conjectural,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

/// `Δ^l_{μ,A} = −Δ^{l−1}_{a0μ,A} + Δ^{l−1}_{a1μ,A}` on formal symbols, `1 ≤ l ≤ l_max`.
pub fn verify_recursion(l_max: usize) -> Result<IdentityReport> {
    if l_max == 0 {
        return Err(invalid("l_max must be at least 1"));
    }
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 2..=3 {
        for pair in all_pairs(n) {
            for l in 1..=l_max {
                for extra in 0..=2 {
                    for mu in enumerate_compositions(n, extra) {
                        cases += 1;
                        let lhs = difference_coefficients(l, &mu, pair);
                        let mut rhs: BTreeMap<Composition, i64> = BTreeMap::new();
                        for (c, v) in difference_coefficients(l - 1, &mu.plus_unit(pair.a0, 1), pair) {
                            *rhs.entry(c).or_insert(0) -= v;
                        }
                        for (c, v) in difference_coefficients(l - 1, &mu.plus_unit(pair.a1, 1), pair) {
                            *rhs.entry(c).or_insert(0) += v;
                        }
                        rhs.retain(|_, v| *v != 0);
                        if lhs != rhs {
                            failures.push(format!("n={n} A=({},{}) l={l} mu={mu}", pair.a0, pair.a1));
                        }
                    }
                }
            }
        }
    }
    Ok(IdentityReport {
        name: "difference recursion".into(),
        cases,
        passed: failures.is_empty(),
        detail: failures.into_iter().take(3).collect::<Vec<_>>().join("; "),
    })
}

/// Which point carries the sign in the higher difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignConvention {
    /// `(−1)^{β(a0)}`, the convention used everywhere else in this crate.
    FirstPoint,
    /// `(−1)^{β(a1)}`.
    SecondPoint,
}

/// Formal ring for the transition identity at `n = 2`: symbols `x_(i,j)` with
/// `i + j = total`, then `γ_{a0}`, `γ_{a1}`.
struct TransitionRing {
    total: usize,
}

impl TransitionRing {
    fn nvars(&self) -> usize {
        self.total + 3
    }
    fn x(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }
    fn g0(&self) -> Poly {
        Poly::var(self.nvars(), self.total + 1)
    }
    fn g1(&self) -> Poly {
        Poly::var(self.nvars(), self.total + 2)
    }

    /// `Δ^len` with base `(m0, m1)` on the pair, each symbol `x_(i,j)` replaced by `weight(i, j)`.
    fn delta(&self, len: usize, m0: usize, m1: usize, conv: SignConvention, weight: &dyn Fn(usize, usize) -> Poly) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for b0 in 0..=len {
            let b1 = len - b0;
            let s = match conv {
                SignConvention::FirstPoint => b0,
                SignConvention::SecondPoint => b1,
            };
            let c = if s % 2 == 0 { 1 } else { -1 } * binom_i64(len, b0);
            out = &out + &weight(b0 + m0, b1 + m1).scale(&rat(c));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransitionForm {
    /// `+γ^μ Σ_i (−1)^{i+1} C(L,i) γ0^{L−i}(γ1−γ0)^i Δ^{L−i}_{a1^i μ}`.
    Alternating,
    /// `−γ^μ Σ_i C(L,i) γ0^{L−i}(γ1−γ0)^i Δ^{L−i}_{a1^i μ}`.
    Negated,
}

/// Checks `Δ^L_μ(x)γ0^Lγ^μ − Δ^L_μ(xγ) = RHS` for `L = l + 2` with base `(m0, m1)`.
pub fn transition_holds(l: usize, m0: usize, m1: usize, conv: SignConvention, form: TransitionForm) -> bool {
    let len = l + 2;
    let ring = TransitionRing { total: len + m0 + m1 };
    let (g0, g1) = (ring.g0(), ring.g1());
    let gamma_mu = &g0.pow(m0) * &g1.pow(m1);
    let plain = |i: usize, _j: usize| ring.x(i);
    let weighted = |i: usize, j: usize| &(&ring.x(i) * &g0.pow(i)) * &g1.pow(j);
    let lhs = &(&(&ring.delta(len, m0, m1, conv, &plain) * &g0.pow(len)) * &gamma_mu)
        - &ring.delta(len, m0, m1, conv, &weighted);
    let diff = &g1 - &g0;
    let mut sum = Poly::zero(ring.nvars());
    for i in 1..=len {
        let sign = match form {
            TransitionForm::Alternating => {
                if i % 2 == 1 {
                    1
                } else {
                    -1
                }
            }
            TransitionForm::Negated => -1,
        };
        let term = &(&g0.pow(len - i) * &diff.pow(i)) * &ring.delta(len - i, m0, m1 + i, conv, &plain);
        sum = &sum + &term.scale(&rat(sign * binom_i64(len, i)));
    }
    let rhs = &gamma_mu * &sum;
    lhs == rhs
}

/// Both sides vanish once `γ_{a1} = γ_{a0}`.
pub fn transition_degenerate_vanishes(l: usize) -> bool {
    let len = l + 2;
    let ring = TransitionRing { total: len };
    let g0 = ring.g0();
    let plain = |i: usize, _j: usize| ring.x(i);
    let weighted = |i: usize, j: usize| &ring.x(i) * &g0.pow(i + j);
    let lhs = &(&ring.delta(len, 0, 0, SignConvention::FirstPoint, &plain) * &g0.pow(len))
        - &ring.delta(len, 0, 0, SignConvention::FirstPoint, &weighted);
    lhs.is_zero()
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionReport {
    pub l_max: usize,
    pub cases: usize,
    /// Negated form under the first-point sign convention.
    pub first_point_negated: bool,
    /// Alternating form under the second-point sign convention.
    pub second_point_alternating: bool,
    /// The alternating form under the first-point convention fails for some `l`.
    pub first_point_alternating_fails: bool,
    pub degenerate_vanishes: bool,
    pub passed: bool,
}

pub fn verify_transition(l_max: usize) -> TransitionReport {
    let mut cases = 0;
    let (mut neg, mut alt, mut alt_first_all, mut degen) = (true, true, true, true);
    for l in 0..=l_max {
        for (m0, m1) in [(0, 0), (1, 0), (0, 1), (1, 2)] {
            cases += 1;
            neg &= transition_holds(l, m0, m1, SignConvention::FirstPoint, TransitionForm::Negated);
            alt &= transition_holds(l, m0, m1, SignConvention::SecondPoint, TransitionForm::Alternating);
            alt_first_all &= transition_holds(l, m0, m1, SignConvention::FirstPoint, TransitionForm::Alternating);
        }
        degen &= transition_degenerate_vanishes(l);
    }
    TransitionReport {
        l_max,
        cases,
        first_point_negated: neg,
        second_point_alternating: alt,
        first_point_alternating_fails: !alt_first_all,
        degenerate_vanishes: degen,
        passed: neg && alt && !alt_first_all && degen,
    }
}

// ---- invariant operators on decomposable sections ----------------------------

/// A decomposable invariant section of `L^λ`: one list of factors per block of
/// equal parts of `λ` (zeros included), each block symmetrized over its points.
#[derive(Clone, Debug)]
pub struct Decomposable {
    pub lambda: Partition,
    pub blocks: Vec<Vec<Poly>>,
}

/// `f` (a polynomial in one point's `x, y`) placed at point `p` (0-based) of `n`.
fn at_point(f: &Poly, p: usize, n: usize) -> Poly {
    f.rename(&[2 * p, 2 * p + 1], 2 * n)
}

/// `Σ_τ Π_i fs[τ(i)](points[i])`, with no normalizing factor.
fn sym_product(fs: &[Poly], points: &[usize], n: usize) -> Poly {
    let mut out = Poly::zero(2 * n);
    for t in perm::all(fs.len()) {
        let mut term = Poly::one(2 * n);
        for (i, &p) in points.iter().enumerate() {
            term = &term * &at_point(&fs[t[i]], p, n);
        }
        out = &out + &term;
    }
    out
}

fn representative(d: &Decomposable, n: usize) -> Result<Poly> {
    let comp = d.lambda.as_composition(n)?;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for p in 0..n {
        match groups.last_mut() {
            Some(g) if comp.values()[g[0]] == comp.values()[p] => g.push(p),
            _ => groups.push(vec![p]),
        }
    }
    if groups.len() != d.blocks.len() || groups.iter().zip(&d.blocks).any(|(g, b)| g.len() != b.len()) {
        return Err(invalid(format!("factor blocks do not match the point blocks of {}", d.lambda)));
    }
    let mut out = Poly::one(2 * n);
    for (g, b) in groups.iter().zip(&d.blocks) {
        out = &out * &sym_product(b, g, n);
    }
    Ok(out)
}

/// The invariant tuple with `x_λ` built from the decomposable sections and
/// `x_{σλ} = σ_* x_λ`; compositions of partitions without a section are zero.
pub fn invariant_tuple(n: usize, k: usize, sections: &[Decomposable]) -> Result<SectionTuple> {
    let mut reps: HashMap<Vec<usize>, (Composition, Poly)> = HashMap::new();
    for d in sections {
        if d.lambda.weight() != k {
            return Err(Error::WeightMismatch { expected: k, got: d.lambda.weight() });
        }
        let comp = d.lambda.as_composition(n)?;
        let rep = representative(d, n)?;
        for s in comp.stabilizer() {
            if polyjet::symmetrize(&rep, &s) != rep {
                return Err(invalid(format!("section of {} is not invariant under its stabilizer", d.lambda)));
            }
        }
        reps.insert(d.lambda.parts().to_vec(), (comp, rep));
    }
    let mut entries = BTreeMap::new();
    for c in enumerate_compositions(n, k) {
        let value = match reps.get(c.nu().parts()) {
            None => Poly::zero(2 * n),
            Some((rep_comp, rep)) => polyjet::symmetrize(rep, &moving_perm(rep_comp, &c)),
        };
        entries.insert(c, value);
    }
    SectionTuple::new(n, k, entries)
}

/// A permutation `σ` with `σ·from = to`.
fn moving_perm(from: &Composition, to: &Composition) -> Perm {
    let n = from.range();
    let mut used = vec![false; n];
    let mut sigma = vec![0; n];
    for i in 0..n {
        let target = (0..n).find(|&j| !used[j] && to.values()[j] == from.values()[i]).expect("same orbit");
        used[target] = true;
        sigma[i] = target;
    }
    sigma
}

/// Substitutes `p2 = p1 + h` (the increment `h` reusing point 2's variables) and
/// keeps the part of degree `l` in `h`.
pub fn restrict_to_diagonal(f: &Poly, n: usize, l: usize) -> Poly {
    let nv = 2 * n;
    let mut images: Vec<Poly> = (0..nv).map(|i| Poly::var(nv, i)).collect();
    images[2] = &Poly::var(nv, 0) + &Poly::var(nv, 2);
    images[3] = &Poly::var(nv, 1) + &Poly::var(nv, 3);
    f.compose(&images).part_of_degree_in(&[2, 3], l)
}

/// The local operator of order `l`: `Δ^{l+1}_{μ,{1,2}}` restricted to the diagonal at order `l`.
pub fn local_operator(x: &SectionTuple, l: usize, mu: &Composition) -> Result<Poly> {
    let delta = higher_difference(x, l + 1, mu, DiagonalIdeal { a0: 1, a1: 2 })?;
    Ok(restrict_to_diagonal(&delta, x.n, l))
}

/// `d^m f` at point 1 in direction `h`.
fn d(f: &Poly, m: usize, n: usize) -> Poly {
    restrict_to_diagonal(&at_point(f, 1, n), n, m)
}

fn random_poly<R: Rng>(rng: &mut R, max_deg: usize) -> Poly {
    let mut p = Poly::zero(2);
    for dx in 0..=max_deg {
        for dy in 0..=max_deg - dx {
            let c: i64 = rng.gen_range(-3..=3);
            p.add_term(vec![dx as u16, dy as u16], rat(c));
        }
    }
    p
}

/// Which reference local formula to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalCase {
    /// `k = 3`, order 1, label `((1), 0)`.
    K3Order1,
    /// `k = 4`, order 1, label `((2), 0)`.
    K4Order1Two,
    /// `k = 4`, order 1, label `((1), (1))`; needs `n ≥ 3`.
    K4Order1OneOne,
    /// `k = 4`, order 2, label `((1), 0)`.
    K4Order2,
}

impl LocalCase {
    pub fn all() -> [LocalCase; 4] {
        [LocalCase::K3Order1, LocalCase::K4Order1Two, LocalCase::K4Order1OneOne, LocalCase::K4Order2]
    }

    fn k(self) -> usize {
        if self == LocalCase::K3Order1 {
            3
        } else {
            4
        }
    }

    fn order(self) -> usize {
        if self == LocalCase::K4Order2 {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalFormulaReport {
    pub case: LocalCase,
    pub n: usize,
    pub seed: u64,
    /// `c` with computed = `c`·reference, if a single rational works.
    pub global_factor: Option<String>,
    pub passed: bool,
}

fn rand_list<R: Rng>(rng: &mut R, len: usize) -> Vec<Poly> {
    (0..len).map(|_| random_poly(rng, 2)).collect()
}

/// Builds random decomposable sections for every partition of `k` with at most `n` parts.
fn random_sections<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Decomposable> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(k, n) {
        let comp = lambda.as_composition(n).expect("fits");
        let mut blocks: Vec<Vec<Poly>> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for p in 0..n {
            if p > 0 && comp.values()[p] == comp.values()[p - 1] {
                *sizes.last_mut().unwrap() += 1;
            } else {
                sizes.push(1);
            }
        }
        for s in sizes {
            blocks.push(rand_list(rng, s));
        }
        out.push(Decomposable { lambda, blocks });
    }
    out
}

fn section<'a>(sections: &'a [Decomposable], parts: &[usize]) -> &'a Decomposable {
    sections.iter().find(|s| s.lambda.parts() == parts).expect("section present")
}

/// Factor block `i`, empty when `λ` has no zero parts and `i` is the absent zero block.
fn block(s: &Decomposable, i: usize) -> &[Poly] {
    s.blocks.get(i).map_or(&[], |b| b.as_slice())
}

/// `Σ_i first(p0) · d^m(list_i) · sym(list without i)` over points `rest`.
fn leading_sum(first: &Poly, list: &[Poly], m: usize, rest: &[usize], n: usize) -> Poly {
    let mut out = Poly::zero(2 * n);
    for i in 0..list.len() {
        let others: Vec<Poly> = list.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        out = &out + &(&(&at_point(first, 0, n) * &d(&list[i], m, n)) * &sym_product(&others, rest, n));
    }
    out
}

fn reference_formula(case: LocalCase, sections: &[Decomposable], n: usize) -> Poly {
    let at = |f: &Poly, p: usize| at_point(f, p, n);
    let rest2: Vec<usize> = (2..n).collect();
    let rest3: Vec<usize> = (3..n).collect();
    match case {
        LocalCase::K3Order1 => {
            let s3 = section(sections, &[3]);
            let s21 = section(sections, &[2, 1]);
            let (f, a) = (&s3.blocks[0][0], block(s3, 1));
            let (g1, g2, b) = (&s21.blocks[0][0], &s21.blocks[1][0], block(s21, 2));
            let bracket = &(&at(g1, 0) * &d(g2, 1, n)).scale(&rat(2)) - &(&at(g2, 0) * &d(g1, 1, n));
            &leading_sum(f, a, 1, &rest2, n) - &(&bracket * &sym_product(b, &rest2, n))
        }
        LocalCase::K4Order1Two => {
            let s4 = section(sections, &[4]);
            let s31 = section(sections, &[3, 1]);
            let s22 = section(sections, &[2, 2]);
            let (f, a) = (&s4.blocks[0][0], block(s4, 1));
            let (g1, g2, b) = (&s31.blocks[0][0], &s31.blocks[1][0], block(s31, 2));
            let (h, c) = (block(s22, 0), block(s22, 1));
            let gterm = &(&at(g1, 0) * &d(g2, 1, n)).scale(&rat(2)) * &sym_product(b, &rest2, n);
            let hterm = &(&(&at(&h[0], 0) * &d(&h[1], 1, n)) + &(&at(&h[1], 0) * &d(&h[0], 1, n)))
                * &sym_product(c, &rest2, n);
            &(&leading_sum(f, a, 1, &rest2, n) - &gterm) + &hterm
        }
        LocalCase::K4Order1OneOne => {
            let s31 = section(sections, &[3, 1]);
            let s211 = section(sections, &[2, 1, 1]);
            let (g1, g2, b) = (&s31.blocks[0][0], &s31.blocks[1][0], block(s31, 2));
            let (kk, k23, dd) = (&s211.blocks[0][0], block(s211, 1), block(s211, 2));
            let (k2, k3) = (&k23[0], &k23[1]);
            // g1 db_i ⊗ g2 ⊗ b̂_i, the R factor sitting at point 3.
            let mut first = Poly::zero(2 * n);
            for i in 0..b.len() {
                let others: Vec<Poly> = b.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
                first = &first
                    + &(&(&(&at(g1, 0) * &d(&b[i], 1, n)) * &at(g2, 2)) * &sym_product(&others, &rest3, n));
            }
            let second = (&(&d(k2, 1, n) * &at(k3, 2)) + &(&d(k3, 1, n) * &at(k2, 2))).scale(&rat(2));
            let second = &at(kk, 0) * &second;
            let third = &(&(&at(k2, 0) * &d(kk, 1, n)) * &at(k3, 2)) + &(&(&at(k3, 0) * &d(kk, 1, n)) * &at(k2, 2));
            &first + &(&(&third - &second) * &sym_product(dd, &rest3, n))
        }
        LocalCase::K4Order2 => {
            let s4 = section(sections, &[4]);
            let s31 = section(sections, &[3, 1]);
            let s22 = section(sections, &[2, 2]);
            let (f, a) = (&s4.blocks[0][0], block(s4, 1));
            let (g1, g2, b) = (&s31.blocks[0][0], &s31.blocks[1][0], block(s31, 2));
            let (h, c) = (block(s22, 0), block(s22, 1));
            let bsym = sym_product(b, &rest2, n);
            let g = &(&(&at(g1, 0) * &d(g2, 2, n)).scale(&rat(3)) + &(&at(g2, 0) * &d(g1, 2, n))) * &bsym;
            let hh = &(&(&at(&h[0], 0) * &d(&h[1], 2, n)) + &(&at(&h[1], 0) * &d(&h[0], 2, n))).scale(&rat(3))
                * &sym_product(c, &rest2, n);
            &(&g - &hh) - &leading_sum(f, a, 2, &rest2, n)
        }
    }
}

fn case_mu(case: LocalCase, n: usize) -> Composition {
    let mut v = vec![0; n];
    match case {
        LocalCase::K3Order1 | LocalCase::K4Order2 => v[0] = 1,
        LocalCase::K4Order1Two => v[0] = 2,
        LocalCase::K4Order1OneOne => {
            v[0] = 1;
            v[2] = 1;
        }
    }
    Composition::new(v)
}

/// Applies the local operator to random decomposable sections and compares with the reference bracket formula.
pub fn verify_invariant_local_formula(case: LocalCase, n: usize, seed: u64) -> Result<LocalFormulaReport> {
    let min_n = if case == LocalCase::K4Order1OneOne { 3 } else { 2 };
    if n < min_n || n > 4 {
        return Err(invalid(format!("{case:?} needs {min_n} <= n <= 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = case.k();
    let sections = random_sections(&mut rng, n, k);
    let tuple = invariant_tuple(n, k, &sections)?;
    let computed = local_operator(&tuple, case.order(), &case_mu(case, n))?;
    let reference = reference_formula(case, &sections, n);
    let factor = match reference.terms().next() {
        None => computed.is_zero().then(BigRational::one),
        Some((e, c)) => {
            let r = computed.coeff(e) / c;
            (reference.scale(&r) == computed).then_some(r)
        }
    };
    let passed = factor.as_ref().is_some_and(|r| r.is_positive());
    Ok(LocalFormulaReport { case, n, seed, global_factor: factor.map(|r| r.to_string()), passed })
}

/// All local formulas of weight `k ∈ {3, 4}`, each at `n = 3` and `n = 4`.
pub fn verify_local_formulas(k: usize, seed: u64) -> Result<Vec<LocalFormulaReport>> {
    if !(3..=4).contains(&k) {
        return Err(invalid("local formulas are tabulated for k = 3 and k = 4"));
    }
    let mut out = Vec::new();
    for case in LocalCase::all().into_iter().filter(|c| c.k() == k) {
        for n in 3..=4 {
            out.push(verify_invariant_local_formula(case, n, seed)?);
        }
    }
    Ok(out)
}

/// Constant sections are killed by every operator of positive order.
pub fn constants_vanish(case: LocalCase, n: usize) -> Result<bool> {
    let k = case.k();
    let sections: Vec<Decomposable> = enumerate_partitions(k, n)
        .into_iter()
        .map(|lambda| {
            let comp = lambda.as_composition(n).expect("fits");
            let mut blocks: Vec<Vec<Poly>> = Vec::new();
            for p in 0..n {
                if p > 0 && comp.values()[p] == comp.values()[p - 1] {
                    blocks.last_mut().unwrap().push(Poly::constant(2, rat(2)));
                } else {
                    blocks.push(vec![Poly::constant(2, rat(2))]);
                }
            }
            Decomposable { lambda, blocks }
        })
        .collect();
    let tuple = invariant_tuple(n, k, &sections)?;
    Ok(local_operator(&tuple, case.order(), &case_mu(case, n))?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn formal_tuple(n: usize, k: usize) -> SectionTuple {
        // x_λ is a distinct monomial per λ so coefficients can be read off.
        let comps = enumerate_compositions(n, k);
        let entries = comps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0u16; 2 * n];
                e[0] = i as u16;
                e[1] = 1;
                (c.clone(), Poly::monomial(e, rat(1)))
            })
            .collect();
        SectionTuple::new(n, k, entries).unwrap()
    }

    #[test]
    fn listed_differences() {
        let pair = DiagonalIdeal::new(1, 2).unwrap();
        let d = difference_coefficients(2, &comp(&[1, 0]), pair);
        let expected: BTreeMap<Composition, i64> =
            [(comp(&[3, 0]), 1), (comp(&[2, 1]), -2), (comp(&[1, 2]), 1)].into_iter().collect();
        assert_eq!(d, expected);
        let d1 = difference_coefficients(1, &comp(&[1, 1]), pair);
        let e1: BTreeMap<Composition, i64> = [(comp(&[1, 2]), 1), (comp(&[2, 1]), -1)].into_iter().collect();
        assert_eq!(d1, e1);
        let x = formal_tuple(2, 3);
        assert_eq!(higher_difference(&x, 0, &comp(&[2, 1]), pair).unwrap(), *x.get(&comp(&[2, 1])));
        assert!(higher_difference(&x, 1, &comp(&[1, 0]), pair).is_err());
    }

    #[test]
    fn small_kernels() {
        let k = kernel_nullity(2, 2, 2, true).unwrap();
        assert_eq!(k.per_degree, vec![1, 4, 13]);
        assert_eq!(k.cumulative, vec![1, 5, 18]);
        let g = graded_dims(2, 2, 2, ExponentRule::Uniform).unwrap();
        assert_eq!(g[0].per_degree.iter().sum::<usize>(), 15);
        assert_eq!(g[1].per_degree, vec![0, 0, 3]);
    }

    #[test]
    fn unconstrained_levels() {
        // k ≤ 1 has no conditions: all invariant tuples.
        let k1 = kernel_nullity(2, 1, 2, true).unwrap();
        let free = filtration_nullity(2, 1, 2, 0, true).unwrap();
        assert_eq!(k1, free);
    }

    #[test]
    fn filtration_decreases() {
        let r = filtration_report(2, 3, 2).unwrap();
        for rows in [&r.full, &r.invariant] {
            for l in 1..rows.len() {
                for d in 0..=2 {
                    assert!(rows[l][d] <= rows[l - 1][d]);
                }
            }
        }
        for l in 0..r.full.len() {
            for d in 0..=2 {
                assert!(r.invariant[l][d] <= r.full[l][d]);
            }
        }
    }

    #[test]
    fn rules_agree_up_to_weight_four() {
        for k in 1..=4 {
            for n in 1..=3 {
                let u = graded_dims(n, k, 2, ExponentRule::Uniform).unwrap();
                let p = graded_dims(n, k, 2, ExponentRule::PerPair).unwrap();
                for (a, b) in u.iter().zip(&p) {
                    assert_eq!(a.per_degree, b.per_degree, "n={n} k={k} mu={}", a.mu);
                }
            }
        }
    }

    #[test]
    fn recursion_and_transition() {
        assert!(verify_recursion(8).unwrap().passed);
        let t = verify_transition(4);
        assert!(t.passed, "{t:?}");
    }

    #[test]
    fn comparison_constants() {
        let expected = [1, 1, -2, -6, 24, 120];
        for (l, e) in expected.iter().enumerate() {
            assert_eq!(comparison_constant(l), BigInt::from(*e));
        }
    }

    #[test]
    fn local_formulas() {
        for case in LocalCase::all() {
            for n in 3..=4 {
                let r = verify_invariant_local_formula(case, n, 11).unwrap();
                assert!(r.passed, "{r:?}");
                assert!(constants_vanish(case, n).unwrap());
            }
        }
        let r = verify_invariant_local_formula(LocalCase::K3Order1, 2, 5).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn resource_cap_is_enforced() {
        let r = filtration_nullity_capped(2, 2, 2, 1, false, 10);
        assert!(matches!(r, Err(Error::ResourceCap { .. })));
    }
}
