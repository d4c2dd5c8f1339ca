//! Exact integer linear algebra: rank, nullspace, Bareiss determinants.
//!
//! Elimination is fraction-free. Rows are reduced by integer combinations and
//! divided by their content, so an `i128` fast path covers nearly every system
//! met in practice; on overflow the computation restarts over `BigInt`.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

/// Sparse integer row: `(column, value)` pairs, columns need not be sorted.
pub type SparseRow = Vec<(usize, BigInt)>;

pub fn sparse_row(entries: impl IntoIterator<Item = (usize, i64)>) -> SparseRow {
    entries
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(c, v)| (c, BigInt::from(v)))
        .collect()
}

trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn is_one(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

// Bound keeps gcd/abs away from i128::MIN.
const I128_BOUND: i128 = 1 << 120;

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128().filter(|x| x.abs() < I128_BOUND)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        let r = a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)?;
        (r.abs() < I128_BOUND).then_some(r)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Divide `row[from..]` by its content and make the first nonzero entry positive.
fn normalize<T: Scalar>(row: &mut [T], from: usize) {
    let mut g = T::zero();
    let mut lead_negative = None;
    for v in &row[from..] {
        if !v.is_zero() {
            if lead_negative.is_none() {
                lead_negative = Some(v.is_negative());
            }
            g = g.gcd(v);
            if g.is_one() && lead_negative == Some(false) {
                return;
            }
        }
    }
    let Some(neg) = lead_negative else { return };
    if neg {
        g = g.neg();
    }
    if g.is_one() {
        return;
    }
    for v in &mut row[from..] {
        if !v.is_zero() {
            *v = v.div_exact(&g);
        }
    }
}

/// Row echelon form: `pivots[c]` holds the row whose leading column is `c`.
struct Echelon<T> {
    ncols: usize,
    pivots: Vec<Option<Vec<T>>>,
    rank: usize,
}

impl<T: Scalar> Echelon<T> {
    fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: vec![None; ncols], rank: 0 }
    }

    /// Reduce `row` against the current pivots; `None` on overflow.
    fn insert(&mut self, mut row: Vec<T>) -> Option<bool> {
        let n = self.ncols;
        let mut c = 0;
        while c < n {
            if row[c].is_zero() {
                c += 1;
                continue;
            }
            match &self.pivots[c] {
                Some(p) => {
                    let g = row[c].gcd(&p[c]);
                    let a = p[c].div_exact(&g);
                    let b = row[c].div_exact(&g);
                    for j in c..n {
                        if p[j].is_zero() {
                            if !row[j].is_zero() && !a.is_one() {
                                row[j] = T::mul_sub(&a, &row[j], &T::zero(), &T::zero())?;
                            }
                        } else {
                            row[j] = T::mul_sub(&a, &row[j], &b, &p[j])?;
                        }
                    }
                    normalize(&mut row, c + 1);
                    c += 1;
                }
                None => {
                    normalize(&mut row, c);
                    self.pivots[c] = Some(row);
                    self.rank += 1;
                    return Some(true);
                }
            }
        }
        Some(false)
    }

    fn full(&self) -> bool {
        self.rank == self.ncols
    }
}

fn densify<T: Scalar>(row: &SparseRow, ncols: usize) -> Option<Vec<T>> {
    let mut dense = vec![T::zero(); ncols];
    for (c, v) in row {
        let add = T::from_big(v)?;
        let cur = std::mem::replace(&mut dense[*c], T::zero());
        // cur + add written as 1*cur - (-1)*add keeps the checked path
        let one = T::from_big(&BigInt::one())?;
        let minus_one = T::from_big(&BigInt::from(-1))?;
        dense[*c] = T::mul_sub(&one, &cur, &minus_one, &add)?;
    }
    Some(dense)
}

fn build<T: Scalar>(rows: &[SparseRow], ncols: usize, stop_when_full: bool) -> Option<Echelon<T>> {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        if stop_when_full && ech.full() {
            break;
        }
        if row.is_empty() {
            continue;
        }
        ech.insert(densify(row, ncols)?)?;
    }
    Some(ech)
}

/// Exact rank of a sparse integer matrix with `ncols` columns.
pub fn rank(rows: &[SparseRow], ncols: usize) -> usize {
    if ncols == 0 {
        return 0;
    }
    match build::<i128>(rows, ncols, true) {
        Some(e) => e.rank,
        None => build::<BigInt>(rows, ncols, true).expect("BigInt elimination cannot overflow").rank,
    }
}

/// Exact rank of a dense integer matrix.
pub fn rank_dense(m: &[Vec<BigInt>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let rows: Vec<SparseRow> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !Zero::is_zero(*v)).map(|(c, v)| (c, v.clone())).collect())
        .collect();
    rank(&rows, ncols)
}

/// Integer basis of the right nullspace `{x : M x = 0}`, one vector per free column,
/// each divided by its content.
pub fn nullspace(rows: &[SparseRow], ncols: usize) -> Vec<Vec<BigInt>> {
    let ech = match build::<i128>(rows, ncols, true) {
        Some(e) => lift(e),
        None => build::<BigInt>(rows, ncols, true).expect("BigInt elimination cannot overflow"),
    };
    let pivot_cols: Vec<usize> = (0..ncols).filter(|&c| ech.pivots[c].is_some()).collect();
    let mut reduced: Vec<(usize, Vec<BigInt>)> =
        pivot_cols.iter().map(|&c| (c, ech.pivots[c].clone().unwrap())).collect();
    // Back-substitution to reduced echelon form, still fraction-free.
    for i in (0..reduced.len()).rev() {
        let (ci, ref pi) = reduced[i].clone();
        for row in reduced.iter_mut().take(i) {
            let r = &mut row.1;
            if Zero::is_zero(&r[ci]) {
                continue;
            }
            let g = Integer::gcd(&r[ci], &pi[ci]);
            let a = &pi[ci] / &g;
            let b = &r[ci] / &g;
            for j in 0..ncols {
                r[j] = &a * &r[j] - &b * &pi[j];
            }
            normalize(r, 0);
        }
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if ech.pivots[f].is_some() {
            continue;
        }
        let mut scale = <BigInt as One>::one();
        for (c, r) in &reduced {
            if !Zero::is_zero(&r[f]) {
                scale = Integer::lcm(&scale, &r[*c]);
            }
        }
        let mut v = vec![<BigInt as Zero>::zero(); ncols];
        v[f] = scale.clone();
        for (c, r) in &reduced {
            if !Zero::is_zero(&r[f]) {
                v[*c] = -(&r[f] * &scale) / &r[*c];
            }
        }
        normalize(&mut v, 0);
        basis.push(v);
    }
    basis
}

fn lift(e: Echelon<i128>) -> Echelon<BigInt> {
    Echelon {
        ncols: e.ncols,
        rank: e.rank,
        pivots: e.pivots.into_iter().map(|p| p.map(|r| r.iter().map(Scalar::to_big).collect())).collect(),
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det_bareiss needs a square matrix");
    if n == 0 {
        return <BigInt as One>::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = <BigInt as One>::one();
    let mut prev = <BigInt as One>::one();
    for k in 0..n - 1 {
        if Zero::is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !Zero::is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return <BigInt as Zero>::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinants of the leading principal submatrices of sizes 1..=n.
pub fn leading_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|s| {
            let sub: Vec<Vec<BigInt>> = m[..s].iter().map(|r| r[..s].to_vec()).collect();
            det_bareiss(&sub)
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row; only for test oracles.
pub fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return <BigInt as One>::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = <BigInt as Zero>::zero();
    for c in 0..n {
        if Zero::is_zero(&m[0][c]) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * det_cofactor(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn to_big_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank_dense(&big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_dense(&big(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank_dense(&big(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn nullspace_annihilates() {
        let m = big(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let rows: Vec<SparseRow> = m
            .iter()
            .map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !Zero::is_zero(v)).collect())
            .collect();
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &m {
                let dot: BigInt = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(Zero::is_zero(&dot));
            }
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge: BigInt = BigInt::from(1u8) << 110;
        let rows = vec![
            vec![(0, huge.clone()), (1, BigInt::from(3))],
            vec![(0, BigInt::from(7)), (1, huge.clone() + 1)],
            vec![(0, &huge * 2), (1, BigInt::from(6))],
        ];
        assert_eq!(rank(&rows, 2), 2);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = big(&[&[2, -1, 0, 3], &[-1, 2, -1, 0], &[0, -1, 2, 5], &[1, 0, 4, -2]]);
        assert_eq!(det_bareiss(&m), det_cofactor(&m));
        let swap = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_bareiss(&swap), BigInt::from(-1));
    }
}
