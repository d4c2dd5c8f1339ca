//! Polynomials on `(C^2)^n` truncated by total degree, diagonal ideals and jets.
//!
//! Variables are ordered `x_1, y_1, ..., x_n, y_n`; point `p` (0-based) owns
//! slots `2p` and `2p+1`. Every map here preserves total degree, so all
//! dimension questions are answered one homogeneous degree at a time.
//!
//! Jets along `A = {a0, a1}` use the unimodular substitution
//! `x_{a0} = x_{a1} + u`, `y_{a0} = y_{a1} + v`; the slots of `a0` then carry
//! the exponents of `u, v`. A polynomial lies in `I_A^e` iff every coefficient
//! of `u^i v^j` with `i + j < e` vanishes.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, One, ToPrimitive};

use crate::error::invalid;
use crate::linalg::{self, SparseRow};
use crate::perm::{self, Perm};
use crate::poly::{Exp, Poly};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub n: usize,
    pub max_deg: usize,
}

impl PolyRing {
    pub fn new(n: usize, max_deg: usize) -> Self {
        PolyRing { n, max_deg }
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn x(&self, point: usize) -> Poly {
        Poly::var(self.nvars(), 2 * (point - 1))
    }

    pub fn y(&self, point: usize) -> Poly {
        Poly::var(self.nvars(), 2 * (point - 1) + 1)
    }

    /// Number of monomials of degree at most `max_deg`: `C(2n + D, 2n)`.
    pub fn basis_size(&self) -> usize {
        (0..=self.max_deg).map(|d| monomials(self.nvars(), d).len()).sum()
    }
}

/// Homogeneous monomials of degree `d` in `nvars` variables, lexicographically decreasing.
pub fn monomials(nvars: usize, d: usize) -> Vec<Exp> {
    fn rec(i: usize, rem: usize, cur: &mut Exp, out: &mut Vec<Exp>) {
        if i + 1 == cur.len() {
            cur[i] = rem as u16;
            out.push(cur.clone());
            return;
        }
        for v in (0..=rem).rev() {
            cur[i] = v as u16;
            rec(i + 1, rem - v, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// `I_A` for a pair of points `a0 < a1` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalIdeal {
    pub a0: usize,
    pub a1: usize,
}

impl DiagonalIdeal {
    pub fn new(a0: usize, a1: usize) -> Result<Self> {
        if a0 == 0 || a0 >= a1 {
            return Err(invalid(format!("diagonal pair needs 1 <= a0 < a1, got ({a0},{a1})")));
        }
        Ok(DiagonalIdeal { a0, a1 })
    }

    /// `u_A = x_{a0} − x_{a1}`.
    pub fn u(&self, ring: &PolyRing) -> Poly {
        &ring.x(self.a0) - &ring.x(self.a1)
    }

    /// `v_A = y_{a0} − y_{a1}`.
    pub fn v(&self, ring: &PolyRing) -> Poly {
        &ring.y(self.a0) - &ring.y(self.a1)
    }
}

pub(crate) fn binom_i64(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Jet of a monomial below order `order`, in the coordinates adapted to `ideal`.
pub fn monomial_jet(exp: &[u16], ideal: DiagonalIdeal, order: usize) -> Vec<(Exp, i64)> {
    let (s0, s1) = (2 * (ideal.a0 - 1), 2 * (ideal.a1 - 1));
    let (p, q) = (exp[s0] as usize, exp[s0 + 1] as usize);
    let mut out = Vec::new();
    for i in 0..=p.min(order.saturating_sub(1)) {
        for j in 0..=q {
            if i + j >= order {
                break;
            }
            let mut e = exp.to_vec();
            e[s0] = i as u16;
            e[s0 + 1] = j as u16;
            e[s1] += (p - i) as u16;
            e[s1 + 1] += (q - j) as u16;
            out.push((e, binom_i64(p, i) * binom_i64(q, j)));
        }
    }
    out
}

/// Linear functionals on the degree-≤D coefficient space whose common kernel is
/// `I_A^order` in degree ≤ D. Each functional maps monomials to integer weights.
pub fn jet_conditions(ideal: DiagonalIdeal, order: usize, ring: &PolyRing) -> Result<Vec<BTreeMap<Exp, BigInt>>> {
    if order < 1 {
        return Err(invalid("jet order must be at least 1"));
    }
    let mut by_target: BTreeMap<Exp, BTreeMap<Exp, BigInt>> = BTreeMap::new();
    for d in 0..=ring.max_deg {
        for m in monomials(ring.nvars(), d) {
            for (t, c) in monomial_jet(&m, ideal, order) {
                by_target.entry(t).or_default().insert(m.clone(), BigInt::from(c));
            }
        }
    }
    Ok(by_target.into_values().collect())
}

/// Truncated jet of `f` along `ideal`; zero iff `f ∈ I_A^order`.
pub fn jet(f: &Poly, ideal: DiagonalIdeal, order: usize) -> Poly {
    let mut out = Poly::zero(f.nvars());
    for (e, c) in f.terms() {
        for (t, w) in monomial_jet(e, ideal, order) {
            out.add_term(t, c * BigRational::from_integer(BigInt::from(w)));
        }
    }
    out
}

pub fn in_ideal_power(f: &Poly, ideal: DiagonalIdeal, order: usize) -> bool {
    order == 0 || jet(f, ideal, order).is_zero()
}

/// `σ_*`: the variables of point `i` become those of point `σ(i)` (0-based permutation).
pub fn act_exp(exp: &[u16], sigma: &[usize]) -> Exp {
    let mut out = vec![0u16; exp.len()];
    for (i, &s) in sigma.iter().enumerate() {
        out[2 * s] = exp[2 * i];
        out[2 * s + 1] = exp[2 * i + 1];
    }
    out
}

pub fn symmetrize(f: &Poly, sigma: &[usize]) -> Poly {
    let mut out = Poly::zero(f.nvars());
    for (e, c) in f.terms() {
        out.add_term(act_exp(e, sigma), c.clone());
    }
    out
}

/// Average of `σ_* f` over a group of point permutations.
pub fn average(f: &Poly, group: &[Perm]) -> Poly {
    let mut out = Poly::zero(f.nvars());
    for s in group {
        out = &out + &symmetrize(f, s);
    }
    out.scale(&BigRational::new(BigInt::one(), BigInt::from(group.len())))
}

/// A homogeneous polynomial with integer coefficients, the unit of the linear systems.
pub type IntPoly = Vec<(Exp, i64)>;

/// Orbit sums of the degree-`d` monomials under `group`; a basis of the invariants.
pub fn invariant_monomial_basis(nvars: usize, d: usize, group: &[Perm]) -> Vec<IntPoly> {
    let mut seen: HashMap<Exp, ()> = HashMap::new();
    let mut out = Vec::new();
    for m in monomials(nvars, d) {
        if seen.contains_key(&m) {
            continue;
        }
        let mut orbit: BTreeMap<Exp, i64> = BTreeMap::new();
        for s in group {
            orbit.insert(act_exp(&m, s), 1);
        }
        for e in orbit.keys() {
            seen.insert(e.clone(), ());
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Interns row keys and collects one sparse vector per unknown.
#[derive(Default)]
pub(crate) struct ImageBuilder<K: std::hash::Hash + Eq> {
    keys: HashMap<K, usize>,
    rows: Vec<SparseRow>,
}

impl<K: std::hash::Hash + Eq> ImageBuilder<K> {
    pub(crate) fn new() -> Self {
        ImageBuilder { keys: HashMap::new(), rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, image: HashMap<K, i64>) {
        let mut row: SparseRow = Vec::with_capacity(image.len());
        for (k, v) in image {
            if v == 0 {
                continue;
            }
            let next = self.keys.len();
            let c = *self.keys.entry(k).or_insert(next);
            row.push((c, BigInt::from(v)));
        }
        self.rows.push(row);
    }

    pub(crate) fn entries(&self) -> usize {
        self.rows.len() * self.keys.len()
    }

    /// Rank of the map sending each unknown to its image.
    pub(crate) fn rank(&self) -> usize {
        linalg::rank(&self.rows, self.keys.len())
    }

    pub(crate) fn unknowns(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of `span(unknowns) ∩ ⋂ I_A^{e_A}` where the unknowns are linearly independent.
pub fn restricted_intersection_dim(unknowns: &[IntPoly], pairs: &[(DiagonalIdeal, usize)]) -> usize {
    let mut b: ImageBuilder<(usize, Exp)> = ImageBuilder::new();
    for f in unknowns {
        let mut image: HashMap<(usize, Exp), i64> = HashMap::new();
        for (idx, &(ideal, order)) in pairs.iter().enumerate() {
            for (m, c) in f {
                for (t, w) in monomial_jet(m, ideal, order) {
                    *image.entry((idx, t)).or_default() += c * w;
                }
            }
        }
        b.push(image);
    }
    b.unknowns() - b.rank()
}

/// Per-degree dimensions of `⋂ I_A^{e_A}` in degrees `0..=D`, optionally restricted
/// to the invariants of a group of point permutations.
pub fn intersection_dims(pairs: &[(DiagonalIdeal, usize)], ring: &PolyRing, group: Option<&[Perm]>) -> Vec<usize> {
    let trivial = [perm::identity(ring.n)];
    let g = group.unwrap_or(&trivial);
    (0..=ring.max_deg)
        .map(|d| restricted_intersection_dim(&invariant_monomial_basis(ring.nvars(), d, g), pairs))
        .collect()
}

/// Exact basis of `⋂ I_A^{e_A}` in degree ≤ D, from the nullspace of the stacked jet conditions.
pub fn intersect_ideal_powers(pairs: &[(DiagonalIdeal, usize)], ring: &PolyRing) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in 0..=ring.max_deg {
        out.extend(intersect_in_degree(pairs, ring.nvars(), d));
    }
    out
}

fn intersect_in_degree(pairs: &[(DiagonalIdeal, usize)], nvars: usize, d: usize) -> Vec<Poly> {
    let mons = monomials(nvars, d);
    let mut rows: BTreeMap<(usize, Exp), SparseRow> = BTreeMap::new();
    for (col, m) in mons.iter().enumerate() {
        for (idx, &(ideal, order)) in pairs.iter().enumerate() {
            for (t, w) in monomial_jet(m, ideal, order) {
                rows.entry((idx, t)).or_default().push((col, BigInt::from(w)));
            }
        }
    }
    let rows: Vec<SparseRow> = rows.into_values().collect();
    linalg::nullspace(&rows, mons.len())
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(nvars);
            for (m, c) in mons.iter().zip(v) {
                p.add_term(m.clone(), BigRational::from_integer(c));
            }
            p
        })
        .collect()
}

fn rank_of_polys(polys: &[Poly], nvars: usize, d: usize) -> usize {
    let index: HashMap<Exp, usize> = monomials(nvars, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<SparseRow> = polys
        .iter()
        .map(|p| {
            // Clear denominators so the rows are integral.
            let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| num::integer::lcm(acc, c.denom().clone()));
            p.terms().map(|(e, c)| (index[e], (c * BigRational::from_integer(lcm.clone())).to_integer())).collect()
        })
        .collect();
    linalg::rank(&rows, index.len())
}

/// Per-degree dimensions of `I_A^e` computed as the span of `u^i v^{e−i}·m`.
pub fn ideal_power_span_dims(ideal: DiagonalIdeal, e: usize, ring: &PolyRing) -> Vec<usize> {
    let u = ideal.u(ring);
    let v = ideal.v(ring);
    let gens: Vec<Poly> = (0..=e).map(|i| &u.pow(i) * &v.pow(e - i)).collect();
    (0..=ring.max_deg)
        .map(|d| {
            if d < e {
                return 0;
            }
            let mut span = Vec::new();
            for g in &gens {
                for m in monomials(ring.nvars(), d - e) {
                    span.push(g * &Poly::monomial(m, BigRational::one()));
                }
            }
            rank_of_polys(&span, ring.nvars(), d)
        })
        .collect()
}

/// Per-degree `(dim (⋂_{i<j≤m} I_ij)^s, dim ⋂_{i<j≤m} I_ij^s)`.
pub fn big_diagonal_power_dims(m: usize, s: usize, ring: &PolyRing) -> Result<Vec<(usize, usize)>> {
    if m > ring.n || m < 2 {
        return Err(invalid("big diagonal needs 2 <= m <= n"));
    }
    let pairs_with = |e: usize| -> Vec<(DiagonalIdeal, usize)> {
        let mut v = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                v.push((DiagonalIdeal { a0: i, a1: j }, e));
            }
        }
        v
    };
    let nv = ring.nvars();
    let base: Vec<Vec<Poly>> = (0..=ring.max_deg).map(|d| intersect_in_degree(&pairs_with(1), nv, d)).collect();
    // power[d] spans the degree-d part of the s'-th power, built up one factor at a time.
    let mut power: Vec<Vec<Poly>> = base.clone();
    for _ in 1..s {
        let mut next: Vec<Vec<Poly>> = vec![Vec::new(); ring.max_deg + 1];
        for (d, slot) in next.iter_mut().enumerate() {
            let mut span = Vec::new();
            for d1 in 0..=d {
                for f in &power[d1] {
                    for g in &base[d - d1] {
                        span.push(f * g);
                    }
                }
            }
            *slot = independent_subset(span, nv, d);
        }
        power = next;
    }
    let rhs = intersection_dims(&pairs_with(s), ring, None);
    Ok((0..=ring.max_deg).map(|d| (rank_of_polys(&power[d], nv, d), rhs[d])).collect())
}

fn independent_subset(polys: Vec<Poly>, nvars: usize, d: usize) -> Vec<Poly> {
    let mut kept: Vec<Poly> = Vec::new();
    for p in polys {
        kept.push(p);
        if rank_of_polys(&kept, nvars, d) < kept.len() {
            kept.pop();
        }
    }
    kept
}

/// Converts an integral polynomial to the sparse integer form.
pub fn to_int_poly(f: &Poly) -> Option<IntPoly> {
    f.terms().map(|(e, c)| if c.is_integer() { c.to_integer().to_i64().map(|v| (e.clone(), v)) } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ideal12() -> DiagonalIdeal {
        DiagonalIdeal::new(1, 2).unwrap()
    }

    #[test]
    fn membership_of_generators() {
        let r = PolyRing::new(2, 3);
        let u = ideal12().u(&r);
        let v = ideal12().v(&r);
        assert!(in_ideal_power(&u, ideal12(), 1));
        assert!(in_ideal_power(&(&u * &v), ideal12(), 2));
        assert!(!in_ideal_power(&u, ideal12(), 2));
        assert!(!in_ideal_power(&r.x(1), ideal12(), 1));
    }

    #[test]
    fn small_intersections() {
        let r = PolyRing::new(2, 2);
        let dims = intersection_dims(&[(ideal12(), 2)], &r, None);
        assert_eq!(dims, vec![0, 0, 3]);
        assert_eq!(intersect_ideal_powers(&[(ideal12(), 2)], &PolyRing::new(2, 1)).len(), 0);
        assert_eq!(intersect_ideal_powers(&[(ideal12(), 2)], &r).len(), 3);
        assert_eq!(r.basis_size(), 15);
    }

    #[test]
    fn conditions_cut_out_the_power() {
        let r = PolyRing::new(2, 2);
        let conds = jet_conditions(ideal12(), 2, &r).unwrap();
        let mons: Vec<Exp> = (0..=2).flat_map(|d| monomials(4, d)).collect();
        let rows: Vec<SparseRow> = conds
            .iter()
            .map(|f| f.iter().map(|(m, c)| (mons.iter().position(|x| x == m).unwrap(), c.clone())).collect())
            .collect();
        assert_eq!(mons.len() - linalg::rank(&rows, mons.len()), 3);
        assert!(jet_conditions(ideal12(), 0, &r).is_err());
    }

    #[test]
    fn point_action() {
        let r = PolyRing::new(2, 1);
        let swap = vec![1, 0];
        assert_eq!(symmetrize(&r.x(1), &swap), r.x(2));
        assert_eq!(symmetrize(&symmetrize(&r.y(1), &swap), &swap), r.y(1));
        let r3 = PolyRing::new(3, 1);
        let avg = average(&r3.x(1), &perm::all(3));
        let expected = (&(&r3.x(1) + &r3.x(2)) + &r3.x(3)).scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(avg, expected);
        let _ = rat(0);
    }

    #[test]
    fn jets_agree_with_spans() {
        for n in 2..=3 {
            let r = PolyRing::new(n, 4);
            for e in 1..=3 {
                assert_eq!(intersection_dims(&[(ideal12(), e)], &r, None), ideal_power_span_dims(ideal12(), e, &r));
            }
        }
    }
}
