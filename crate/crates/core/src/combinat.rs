//! Compositions, partitions and multi-index maps with their group actions.
//!
//! Points are numbered `1..=n` and tensor slots `1..=k` in the public API.
//! A [`Composition`] is a dense vector whose entry `i` belongs to point `i+1`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::invalid;
use crate::perm::{self, Perm};
use crate::{Error, Result};

/// Cap on `n!·k!` for brute-force group enumerations.
pub const BRUTE_FORCE_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition {
    values: Vec<usize>,
}

impl Composition {
    pub fn new(values: Vec<usize>) -> Self {
        Composition { values }
    }

    pub fn zero(n: usize) -> Self {
        Composition { values: vec![0; n] }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn range(&self) -> usize {
        self.values.len()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().sum()
    }

    /// Points (1-based) with nonzero value.
    pub fn support(&self) -> BTreeSet<usize> {
        self.values.iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, _)| i + 1).collect()
    }

    pub fn add(&self, other: &Composition) -> Composition {
        assert_eq!(self.range(), other.range());
        Composition { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    /// `self + times·e_point`, point 1-based.
    pub fn plus_unit(&self, point: usize, times: usize) -> Composition {
        let mut v = self.values.clone();
        v[point - 1] += times;
        Composition { values: v }
    }

    /// Restriction to a set of points, extended by zero.
    pub fn restrict(&self, points: &BTreeSet<usize>) -> Composition {
        Composition {
            values: self.values.iter().enumerate().map(|(i, &v)| if points.contains(&(i + 1)) { v } else { 0 }).collect(),
        }
    }

    /// `σ·λ = λ ∘ σ⁻¹` with `σ` on 0-based points: `(σ·λ)[σ(i)] = λ[i]`.
    pub fn act(&self, sigma: &[usize]) -> Composition {
        let mut v = vec![0; self.values.len()];
        for (i, &x) in self.values.iter().enumerate() {
            v[sigma[i]] = x;
        }
        Composition { values: v }
    }

    /// The partition in the orbit of `self`.
    pub fn nu(&self) -> Partition {
        let mut parts: Vec<usize> = self.values.iter().copied().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Permutations of the points fixing `self`, as 0-based image vectors.
    pub fn stabilizer(&self) -> Vec<Perm> {
        perm::all(self.range()).into_iter().filter(|s| self.act(s) == *self).collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.values.iter().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates: strictly positive, weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Exponential notation: `(i, α_i)` for every part size `i` with `α_i > 0`, increasing `i`.
    pub fn exponential(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((i, a)) if *i == p => *a += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn from_exponential(exp: &[(usize, usize)]) -> Result<Self> {
        let mut parts = Vec::new();
        for &(i, a) in exp {
            if i == 0 {
                return Err(invalid("part size 0 in exponential notation"));
            }
            parts.extend(std::iter::repeat(i).take(a));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Dense composition of range `n` with the parts in the first slots.
    pub fn as_composition(&self, n: usize) -> Result<Composition> {
        if self.len() > n {
            return Err(invalid(format!("partition {self} longer than range {n}")));
        }
        let mut v = self.parts.clone();
        v.resize(n, 0);
        Ok(Composition::new(v))
    }

    /// Two equal parts, the shape excluded from the reduced label set.
    pub fn is_square_pair(&self) -> bool {
        self.parts.len() == 2 && self.parts[0] == self.parts[1]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})", self.parts.iter().join(","))
        }
    }
}

/// All compositions of `k` of range `n`, in reverse lexicographic order of the value vectors.
pub fn enumerate_compositions(n: usize, k: usize) -> Vec<Composition> {
    fn rec(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(Composition::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for v in (0..=k).rev() {
            prefix.push(v);
            rec(n, k - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Composition::new(Vec::new()));
        }
        return out;
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `k` with at most `n` parts, in refined order.
pub fn enumerate_partitions(k: usize, n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            prefix.push(p);
            rec(rem - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, n, &mut Vec::new(), &mut out);
    out.sort_by(refined_unchecked);
    out
}

fn refined_unchecked(a: &Partition, b: &Partition) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| b.parts.cmp(&a.parts))
}

/// Refined order: shorter first; equal lengths compared reverse lexicographically,
/// so `(6) ≺ (5,1) ≺ (4,2) ≺ (3,3) ≺ (4,1,1)`.
pub fn compare_refined(a: &Partition, b: &Partition) -> Result<Ordering> {
    if a.weight() != b.weight() {
        return Err(Error::WeightMismatch { expected: a.weight(), got: b.weight() });
    }
    Ok(refined_unchecked(a, b))
}

/// Plain reverse lexicographic order, `(5) ≺ (4,1) ≺ (3,2) ≺ (3,1,1)`.
pub fn compare_rlex(a: &Partition, b: &Partition) -> Result<Ordering> {
    if a.weight() != b.weight() {
        return Err(Error::WeightMismatch { expected: a.weight(), got: b.weight() });
    }
    Ok(b.parts.cmp(&a.parts))
}

/// `0` for one-part partitions, otherwise the last (smallest) part.
pub fn m_mu(mu: &Partition) -> Result<usize> {
    match mu.parts.len() {
        0 => Err(invalid("m_mu of the empty partition")),
        1 => Ok(0),
        l => Ok(mu.parts[l - 1]),
    }
}

/// `ε_{i,J} = (-1)^{#{j ∈ J : j < i}}`.
pub fn sign_epsilon(i: usize, set: &BTreeSet<usize>) -> Result<i64> {
    if !set.contains(&i) {
        return Err(invalid(format!("{i} is not in the index set")));
    }
    let below = set.iter().filter(|&&j| j < i).count();
    Ok(if below % 2 == 0 { 1 } else { -1 })
}

/// A map from slots `1..=k` to nonempty subsets of points `1..=n`, stored as bitmasks
/// (bit `j` is point `j+1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndexMap {
    n: usize,
    images: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiIndexInvariants {
    /// Union of the images with at least two points.
    pub a: BTreeSet<usize>,
    /// Union of the singleton images.
    pub j: BTreeSet<usize>,
    /// Slots whose image has at least two points.
    pub s0: BTreeSet<usize>,
    /// `λ_p` = number of slots mapped to `{p}`.
    pub lambda: Composition,
    /// `Σ|a(i)| − k`.
    pub l: usize,
    /// `max(0, 2(|A|−1))`.
    pub k_a: usize,
    /// `|A ∩ J|`.
    pub t: usize,
}

fn mask_of(points: &[usize], n: usize) -> Result<u32> {
    let mut m = 0u32;
    for &p in points {
        if p == 0 || p > n {
            return Err(invalid(format!("point {p} outside 1..={n}")));
        }
        m |= 1 << (p - 1);
    }
    if m == 0 {
        return Err(invalid("images must be nonempty"));
    }
    Ok(m)
}

fn mask_points(m: u32) -> BTreeSet<usize> {
    (0..32).filter(|b| m & (1 << b) != 0).map(|b| b + 1).collect()
}

impl MultiIndexMap {
    pub fn new(n: usize, images: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > 31 {
            return Err(invalid("n must be in 1..=31"));
        }
        let images = images.iter().map(|im| mask_of(im, n)).collect::<Result<Vec<_>>>()?;
        Ok(MultiIndexMap { n, images })
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, slot: usize) -> BTreeSet<usize> {
        mask_points(self.images[slot - 1])
    }

    pub fn invariants(&self) -> MultiIndexInvariants {
        let mut a_mask = 0u32;
        let mut j_mask = 0u32;
        let mut total = 0usize;
        let mut lambda = vec![0usize; self.n];
        for &m in &self.images {
            let c = m.count_ones() as usize;
            total += c;
            if c >= 2 {
                a_mask |= m;
            } else {
                j_mask |= m;
                lambda[m.trailing_zeros() as usize] += 1;
            }
        }
        let a = mask_points(a_mask);
        let s0 = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, &m)| m.count_ones() >= 2)
            .map(|(i, _)| i + 1)
            .collect();
        let a_len = a.len();
        MultiIndexInvariants {
            t: (a_mask & j_mask).count_ones() as usize,
            j: mask_points(j_mask),
            s0,
            lambda: Composition::new(lambda),
            l: total - self.k(),
            k_a: if a_len == 0 { 0 } else { 2 * (a_len - 1) },
            a,
        }
    }

    /// `(σ, τ)·a = σ ∘ a ∘ τ⁻¹`, both permutations 0-based.
    pub fn act(&self, sigma: &[usize], tau: &[usize]) -> MultiIndexMap {
        let mut images = vec![0u32; self.k()];
        for (i, &m) in self.images.iter().enumerate() {
            let mut img = 0u32;
            for b in 0..self.n {
                if m & (1 << b) != 0 {
                    img |= 1 << sigma[b];
                }
            }
            images[tau[i]] = img;
        }
        MultiIndexMap { n: self.n, images }
    }

    /// `ψ(a) = (λ(a), A(a))`.
    pub fn psi(&self) -> (Composition, BTreeSet<usize>) {
        let inv = self.invariants();
        (inv.lambda, inv.a)
    }
}

impl fmt::Display for MultiIndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.images.iter().map(|&m| format!("{{{}}}", mask_points(m).iter().join(",")));
        write!(f, "({})", parts.format(","))
    }
}

/// Every map in `I^l`: `l(a) = l` and `k(a) ≤ 2`, found by filtering all maps.
pub fn enumerate_i(k: usize, n: usize, l: usize) -> Vec<MultiIndexMap> {
    let subsets: Vec<u32> = (1..(1u32 << n)).collect();
    let mut out = Vec::new();
    for images in (0..k).map(|_| subsets.iter().copied()).multi_cartesian_product() {
        let a = MultiIndexMap { n, images };
        let inv = a.invariants();
        if inv.l == l && inv.k_a <= 2 {
            out.push(a);
        }
    }
    if k == 0 && l == 0 {
        out.push(MultiIndexMap { n, images: Vec::new() });
    }
    out
}

/// Labels of the direct-sum decompositions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LabelPair {
    /// Element of `B(k,l)`: composition of `k−l` and a point set with `|A| ∈ {0,2}`.
    Diagonal { lambda: Composition, pair: Vec<usize> },
    /// Element of `A(k,l)`: partitions carried by `A` and by its complement.
    Orbit { mu: Partition, nu: Partition },
}

impl fmt::Display for LabelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelPair::Diagonal { lambda, pair } => write!(f, "({lambda}, {{{}}})", pair.iter().join(",")),
            LabelPair::Orbit { mu, nu } => write!(f, "({mu}, {nu})"),
        }
    }
}

fn pairs(n: usize) -> Vec<Vec<usize>> {
    (1..=n).tuple_combinations().map(|(a, b)| vec![a, b]).collect()
}

/// `B(k,l)`: `c_n(k)×{∅}` for `l = 0`, otherwise `c_n(k−l)` times the pairs of points.
pub fn quotient_b(k: usize, l: usize, n: usize) -> Result<Vec<LabelPair>> {
    if l > k {
        return Err(invalid(format!("l = {l} exceeds k = {k}")));
    }
    let comps = enumerate_compositions(n, k - l);
    if l == 0 {
        return Ok(comps.into_iter().map(|lambda| LabelPair::Diagonal { lambda, pair: Vec::new() }).collect());
    }
    let ps = pairs(n);
    Ok(comps
        .into_iter()
        .flat_map(|lambda| ps.iter().map(move |p| LabelPair::Diagonal { lambda: lambda.clone(), pair: p.clone() }))
        .collect())
}

/// `η(λ, A) = (ν(λ|_A), ν(λ|_Ā))`.
pub fn eta(lambda: &Composition, pair: &BTreeSet<usize>) -> (Partition, Partition) {
    let comp: BTreeSet<usize> = (1..=lambda.range()).filter(|p| !pair.contains(p)).collect();
    (lambda.restrict(pair).nu(), lambda.restrict(&comp).nu())
}

fn orbit_label_order(x: &(Partition, Partition), y: &(Partition, Partition)) -> Ordering {
    y.0.weight()
        .cmp(&x.0.weight())
        .then_with(|| refined_unchecked(&x.0, &y.0))
        .then_with(|| y.1.weight().cmp(&x.1.weight()))
        .then_with(|| refined_unchecked(&x.1, &y.1))
}

/// `A(k,l)`, the image of `η` on `B(k,l)`, in refined order of the first then second partition.
pub fn quotient_a(k: usize, l: usize, n: usize) -> Result<Vec<LabelPair>> {
    let mut seen: Vec<(Partition, Partition)> = Vec::new();
    for label in quotient_b(k, l, n)? {
        if let LabelPair::Diagonal { lambda, pair } = label {
            let set: BTreeSet<usize> = pair.into_iter().collect();
            let e = eta(&lambda, &set);
            if !seen.contains(&e) {
                seen.push(e);
            }
        }
    }
    seen.sort_by(orbit_label_order);
    Ok(seen.into_iter().map(|(mu, nu)| LabelPair::Orbit { mu, nu }).collect())
}

/// `A₀(k,l)`: the labels of `A(k,l)` with `μ ≠ 0` and `μ` not of the form `(h,h)`.
pub fn quotient_a0(k: usize, l: usize, n: usize) -> Result<Vec<LabelPair>> {
    if l == 0 || l >= k {
        return Err(invalid(format!("A0 needs 1 <= l <= k-1, got l = {l}, k = {k}")));
    }
    Ok(quotient_a(k, l, n)?
        .into_iter()
        .filter(|lab| matches!(lab, LabelPair::Orbit { mu, .. } if !mu.is_empty() && !mu.is_square_pair()))
        .collect())
}

/// Fixed section of `ψ_l`: the first `l` slots go to the pair, the rest to singletons
/// in increasing point order with multiplicities `λ`.
pub fn section(lambda: &Composition, pair: &[usize], l: usize) -> Result<MultiIndexMap> {
    let n = lambda.range();
    let mut images: Vec<Vec<usize>> = Vec::new();
    if l > 0 {
        if pair.len() != 2 {
            return Err(invalid("a positive level needs a pair of points"));
        }
        images.extend(std::iter::repeat(pair.to_vec()).take(l));
    }
    for (i, &v) in lambda.values().iter().enumerate() {
        images.extend(std::iter::repeat(vec![i + 1]).take(v));
    }
    MultiIndexMap::new(n, &images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// Permutations of the slots only.
    H,
    /// Points and slots.
    GxH,
}

fn factorial(n: usize) -> u128 {
    perm::factorial(n)
}

/// `|D^a(R)|`: permutations of `R` preserving `λ`, lifted, times the slot permutations
/// inside each fibre `a⁻¹(r)`.
fn d_order(lambda: &Composition, r: &BTreeSet<usize>) -> u128 {
    let mut classes: HashMap<usize, usize> = HashMap::new();
    let mut fibres = 1u128;
    for &p in r {
        let v = lambda.values()[p - 1];
        *classes.entry(v).or_default() += 1;
        fibres *= factorial(v);
    }
    classes.values().map(|&c| factorial(c)).product::<u128>() * fibres
}

/// Stabilizer order from the product formula.
pub fn stabilizer_order(a: &MultiIndexMap, group: Group) -> u128 {
    let inv = a.invariants();
    let h_s0 = factorial(inv.s0.len());
    match group {
        Group::H => h_s0 * inv.j.iter().map(|&p| factorial(inv.lambda.values()[p - 1])).product::<u128>(),
        Group::GxH => {
            let outside = a.n() - inv.a.union(&inv.j).count();
            let a_minus_j = inv.a.difference(&inv.j).count();
            let a_cap_j: BTreeSet<usize> = inv.a.intersection(&inv.j).copied().collect();
            let j_minus_a: BTreeSet<usize> = inv.j.difference(&inv.a).copied().collect();
            factorial(outside)
                * factorial(a_minus_j)
                * h_s0
                * d_order(&inv.lambda, &a_cap_j)
                * d_order(&inv.lambda, &j_minus_a)
        }
    }
}

fn check_cap(n: usize, k: usize) -> Result<()> {
    let size = factorial(n) * factorial(k);
    if size > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap { size, cap: BRUTE_FORCE_CAP });
    }
    Ok(())
}

/// Stabilizer order by enumerating `G×H` (or `H`).
pub fn stabilizer_order_brute(a: &MultiIndexMap, group: Group) -> Result<u128> {
    check_cap(a.n(), a.k())?;
    let taus = perm::all(a.k());
    let sigmas = match group {
        Group::H => vec![perm::identity(a.n())],
        Group::GxH => perm::all(a.n()),
    };
    let mut count = 0u128;
    for s in &sigmas {
        for t in &taus {
            if a.act(s, t) == *a {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn generators(m: usize) -> Vec<Perm> {
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(perm::transposition(m, 0, 1));
        gens.push((0..m).map(|i| (i + 1) % m).collect());
    }
    gens
}

/// Orbits of `I^l` under `H` or `G×H`, found by union-find over group generators.
pub fn orbits_brute(k: usize, n: usize, l: usize, group: Group) -> Result<Vec<Vec<MultiIndexMap>>> {
    check_cap(n, k)?;
    let elems = enumerate_i(k, n, l);
    let index: HashMap<&MultiIndexMap, usize> = elems.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let id_n = perm::identity(n);
    let id_k = perm::identity(k);
    let mut moves: Vec<(Perm, Perm)> = generators(k).into_iter().map(|t| (id_n.clone(), t)).collect();
    if group == Group::GxH {
        moves.extend(generators(n).into_iter().map(|s| (s, id_k.clone())));
    }
    for (i, a) in elems.iter().enumerate() {
        for (s, t) in &moves {
            let b = a.act(s, t);
            let j = index[&b];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<MultiIndexMap>> = HashMap::new();
    for (i, a) in elems.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(a.clone());
    }
    let mut out: Vec<Vec<MultiIndexMap>> = groups.into_values().collect();
    for o in &mut out {
        o.sort();
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn composition_counts() {
        assert_eq!(enumerate_compositions(2, 2).len(), 3);
        assert_eq!(enumerate_compositions(3, 3).len(), 10);
        assert_eq!(enumerate_compositions(4, 4).len(), 35);
        let c: Vec<String> = enumerate_compositions(2, 2).iter().map(|c| c.to_string()).collect();
        assert_eq!(c, ["(2,0)", "(1,1)", "(0,2)"]);
    }

    #[test]
    fn partitions_of_four_and_three() {
        let four: Vec<String> = enumerate_partitions(4, 4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        let three: Vec<String> = enumerate_partitions(3, 2).iter().map(|p| p.to_string()).collect();
        assert_eq!(three, ["(3)", "(2,1)"]);
        assert_eq!(enumerate_partitions(0, 3), vec![Partition::empty()]);
    }

    #[test]
    fn refined_order_of_six() {
        let six: Vec<String> = enumerate_partitions(6, 6).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            six,
            [
                "(6)",
                "(5,1)",
                "(4,2)",
                "(3,3)",
                "(4,1,1)",
                "(3,2,1)",
                "(2,2,2)",
                "(3,1,1,1)",
                "(2,2,1,1)",
                "(2,1,1,1,1)",
                "(1,1,1,1,1,1)"
            ]
        );
        assert_eq!(compare_refined(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap(), Ordering::Less);
        assert_eq!(compare_rlex(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap(), Ordering::Greater);
        assert!(compare_refined(&p(&[3]), &p(&[2])).is_err());
    }

    #[test]
    fn m_mu_values() {
        assert_eq!(m_mu(&p(&[4])).unwrap(), 0);
        assert_eq!(m_mu(&p(&[2, 2])).unwrap(), 2);
        assert_eq!(m_mu(&p(&[2, 1, 1])).unwrap(), 1);
        assert!(m_mu(&Partition::empty()).is_err());
    }

    #[test]
    fn exponential_round_trip() {
        let mu = p(&[3, 3, 2, 1, 1, 1]);
        assert_eq!(mu.exponential(), vec![(1, 3), (2, 1), (3, 2)]);
        assert_eq!(Partition::from_exponential(&mu.exponential()).unwrap(), mu);
    }

    #[test]
    fn invariants_of_listed_maps() {
        let a = MultiIndexMap::new(2, &[vec![1, 2], vec![1], vec![1]]).unwrap();
        let inv = a.invariants();
        assert_eq!(inv.a, BTreeSet::from([1, 2]));
        assert_eq!(inv.s0, BTreeSet::from([1]));
        assert_eq!(inv.j, BTreeSet::from([1]));
        assert_eq!(inv.lambda.values(), &[2, 0]);
        assert_eq!((inv.l, inv.t), (1, 1));

        let b = MultiIndexMap::new(2, &[vec![1], vec![1], vec![2]]).unwrap();
        let inv = b.invariants();
        assert!(inv.a.is_empty());
        assert_eq!(inv.j, BTreeSet::from([1, 2]));
        assert_eq!(inv.lambda.values(), &[2, 1]);
        assert_eq!((inv.l, inv.t, inv.k_a), (0, 0, 0));

        let c = MultiIndexMap::new(3, &[vec![1, 2], vec![1, 2]]).unwrap();
        let inv = c.invariants();
        assert_eq!(inv.a, BTreeSet::from([1, 2]));
        assert!(inv.j.is_empty());
        assert_eq!(inv.s0, BTreeSet::from([1, 2]));
        assert_eq!((inv.l, inv.t), (2, 0));
    }

    #[test]
    fn listed_stabilizers() {
        let a = MultiIndexMap::new(2, &[vec![1, 2], vec![1], vec![1]]).unwrap();
        assert_eq!(stabilizer_order(&a, Group::H), 2);
        assert_eq!(stabilizer_order_brute(&a, Group::H).unwrap(), 2);
        let b = MultiIndexMap::new(3, &[vec![1], vec![1], vec![2]]).unwrap();
        assert_eq!(stabilizer_order(&b, Group::H), 2);
        let id = MultiIndexMap::new(4, &[vec![1], vec![2], vec![3], vec![4]]).unwrap();
        assert_eq!(stabilizer_order(&id, Group::H), 1);
    }

    #[test]
    fn label_sets_match_listed_summands() {
        let show = |v: Vec<LabelPair>| v.iter().map(|l| l.to_string()).collect::<Vec<_>>();
        assert_eq!(show(quotient_a0(3, 1, 3).unwrap()), ["((2), 0)", "((1), (1))"]);
        assert_eq!(
            show(quotient_a0(4, 1, 4).unwrap()),
            ["((3), 0)", "((2,1), 0)", "((2), (1))", "((1), (2))", "((1), (1,1))"]
        );
        assert_eq!(show(quotient_a0(4, 3, 4).unwrap()), ["((1), 0)"]);
        assert_eq!(quotient_b(3, 1, 2).unwrap().len(), 3);
        assert_eq!(quotient_b(4, 1, 3).unwrap().len(), 30);
    }

    #[test]
    fn epsilon_signs() {
        let j = BTreeSet::from([1, 3, 5]);
        assert_eq!(sign_epsilon(1, &j).unwrap(), 1);
        assert_eq!(sign_epsilon(3, &j).unwrap(), -1);
        assert_eq!(sign_epsilon(5, &j).unwrap(), 1);
        assert!(sign_epsilon(2, &j).is_err());
    }
}
