//! Lattice surface models, Riemann-Roch, and Euler characteristics of twisted
//! symmetric powers of tautological bundles on `X^[n]`.
//!
//! A line bundle is a vector in the Picard lattice; `L^a ⊗ A^b` is the vector
//! `a·L + b·A`. Binomials `C(x, h)` are integer polynomials in `x`, valid for
//! negative `x` and zero for `h < 0`.

use num::{BigInt, Integer, One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::{Error, Result};

pub type BundleClass = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub name: String,
    pub rank: usize,
    pub intersection: Vec<Vec<i64>>,
    #[serde(rename = "K")]
    pub canonical: Vec<i64>,
    #[serde(rename = "chiO")]
    pub chi_o: i64,
    pub c2: i64,
}

impl SurfaceModel {
    /// Checks shapes, symmetry and Noether's formula `K² + c2 = 12 χ(O)`.
    pub fn validate(&self) -> Result<()> {
        let r = self.rank;
        if self.intersection.len() != r || self.intersection.iter().any(|row| row.len() != r) {
            return Err(Error::Model(format!("{}: intersection matrix is not {r}x{r}", self.name)));
        }
        if self.canonical.len() != r {
            return Err(Error::Model(format!("{}: canonical vector has length {}", self.name, self.canonical.len())));
        }
        for i in 0..r {
            for j in 0..i {
                if self.intersection[i][j] != self.intersection[j][i] {
                    return Err(Error::Model(format!("{}: intersection matrix not symmetric", self.name)));
                }
            }
        }
        let k2 = self.dot(&self.canonical, &self.canonical);
        if k2 + self.c2 as i128 != 12 * self.chi_o as i128 {
            return Err(Error::Model(format!(
                "{}: Noether fails, K^2 + c2 = {} but 12 chi(O) = {}",
                self.name,
                k2 + self.c2 as i128,
                12 * self.chi_o
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: SurfaceModel = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let m = match name {
            "p2" => model("p2", vec![vec![1]], vec![-3], 1, 3),
            "p1xp1" => model("p1xp1", vec![vec![0, 1], vec![1, 0]], vec![-2, -2], 1, 4),
            "k3" => model("k3", vec![vec![2]], vec![0], 2, 24),
            "abelian" => model("abelian", vec![vec![2]], vec![0], 0, 0),
            _ => return Err(invalid(format!("unknown builtin surface '{name}' (p2, p1xp1, k3, abelian)"))),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn builtin_names() -> [&'static str; 4] {
        ["p2", "p1xp1", "k3", "abelian"]
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                s += *x as i128 * self.intersection[i][j] as i128 * *y as i128;
            }
        }
        s
    }

    fn check_class(&self, m: &[i64]) -> Result<()> {
        if m.len() != self.rank {
            return Err(invalid(format!("class of length {} on a rank-{} lattice", m.len(), self.rank)));
        }
        Ok(())
    }

    fn k2(&self) -> i128 {
        self.dot(&self.canonical, &self.canonical)
    }
}

fn model(name: &str, q: Vec<Vec<i64>>, k: Vec<i64>, chi_o: i64, c2: i64) -> SurfaceModel {
    SurfaceModel { name: name.to_string(), rank: q.len(), intersection: q, canonical: k, chi_o, c2 }
}

/// `a·L + b·A` in the lattice.
pub fn combo(a: i64, l: &[i64], b: i64, m: &[i64]) -> BundleClass {
    l.iter().zip(m).map(|(x, y)| a * x + b * y).collect()
}

fn half(v: i128, what: &str) -> Result<i128> {
    if v % 2 != 0 {
        return Err(Error::NonIntegral(format!("{what}: {v}/2")));
    }
    Ok(v / 2)
}

/// `χ(M) = χ(O) + M·(M − K)/2`.
pub fn chi_line(s: &SurfaceModel, m: &[i64]) -> Result<BigInt> {
    s.check_class(m)?;
    let mk: Vec<i64> = m.iter().zip(&s.canonical).map(|(a, b)| a - b).collect();
    Ok(BigInt::from(s.chi_o as i128 + half(s.dot(m, &mk), "M.(M-K)")?))
}

/// Rank, first Chern class (a lattice vector) and second Chern number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub rank: i128,
    pub c1: Vec<i128>,
    pub c2num: i128,
}

fn dot128(s: &SurfaceModel, a: &[i128], b: &[i128]) -> i128 {
    let mut t = 0i128;
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            t += x * s.intersection[i][j] as i128 * y;
        }
    }
    t
}

fn k128(s: &SurfaceModel) -> Vec<i128> {
    s.canonical.iter().map(|&x| x as i128).collect()
}

impl ChernData {
    pub fn line(m: &[i64]) -> Self {
        ChernData { rank: 1, c1: m.iter().map(|&x| x as i128).collect(), c2num: 0 }
    }

    /// `2·ch2 = c1² − 2c2`.
    fn twice_ch2(&self, s: &SurfaceModel) -> i128 {
        dot128(s, &self.c1, &self.c1) - 2 * self.c2num
    }

    /// `E ⊗ M` for a line bundle `M`.
    pub fn twist(&self, s: &SurfaceModel, m: &[i64]) -> ChernData {
        let m128: Vec<i128> = m.iter().map(|&x| x as i128).collect();
        let c1 = self.c1.iter().zip(&m128).map(|(a, b)| a + self.rank * b).collect();
        let c2num =
            self.c2num + (self.rank - 1) * dot128(s, &self.c1, &m128) + self.rank * (self.rank - 1) / 2 * dot128(s, &m128, &m128);
        ChernData { rank: self.rank, c1, c2num }
    }

    /// `E ⊗ F` via `ch2(E⊗F) = r_F ch2(E) + c1(E)c1(F) + r_E ch2(F)`.
    pub fn tensor(&self, other: &ChernData, s: &SurfaceModel) -> Result<ChernData> {
        let c1: Vec<i128> = self.c1.iter().zip(&other.c1).map(|(a, b)| other.rank * a + self.rank * b).collect();
        let twice_ch2 = other.rank * self.twice_ch2(s)
            + 2 * dot128(s, &self.c1, &other.c1)
            + self.rank * other.twice_ch2(s);
        let c2num = half(dot128(s, &c1, &c1) - twice_ch2, "c2 of a tensor product")?;
        Ok(ChernData { rank: self.rank * other.rank, c1, c2num })
    }
}

/// Chern data of `S^l Ω¹_X`.
pub fn chern_sym_omega(s: &SurfaceModel, l: usize) -> Result<ChernData> {
    let l = l as i128;
    let tri = l * (l + 1) / 2;
    let k2 = s.k2();
    let c2 = s.c2 as i128;
    let s2 = l * (l + 1) * (2 * l + 1) / 6;
    let sum_sq = s2 * (k2 - 2 * c2) + l * (l + 1) * (l - 1) / 3 * c2;
    Ok(ChernData {
        rank: l + 1,
        c1: k128(s).iter().map(|x| tri * x).collect(),
        c2num: half(tri * tri * k2 - sum_sq, "c2 of a symmetric power")?,
    })
}

/// Hirzebruch-Riemann-Roch: `χ = r χ(O) + (c1² − 2c2)/2 − c1·K/2`.
pub fn chi_bundle(s: &SurfaceModel, e: &ChernData) -> Result<BigInt> {
    let twice = 2 * e.rank * s.chi_o as i128 + e.twice_ch2(s) - dot128(s, &e.c1, &k128(s));
    Ok(BigInt::from(half(twice, "HRR")?))
}

/// `χ(E ⊗ M)`.
pub fn chi_twisted(s: &SurfaceModel, e: &ChernData, m: &[i64]) -> Result<BigInt> {
    s.check_class(m)?;
    chi_bundle(s, &e.twist(s, m))
}

fn chi_sym_omega_twist(s: &SurfaceModel, l: usize, m: &[i64]) -> Result<BigInt> {
    chi_twisted(s, &chern_sym_omega(s, l)?, m)
}

/// `C(x, h)` as an integer polynomial in `x`; zero for `h < 0`.
pub fn binom_poly(x: &BigInt, h: i64) -> BigInt {
    if h < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..h {
        num *= x - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num.div_floor(&den)
}

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `χ(A)` style shorthand: `χ(L^a ⊗ A^b)`.
struct Ctx<'a> {
    s: &'a SurfaceModel,
    l: &'a [i64],
    a: &'a [i64],
}

impl Ctx<'_> {
    fn chi(&self, p: i64, q: i64) -> Result<BigInt> {
        chi_line(self.s, &combo(p, self.l, q, self.a))
    }

    /// `χ(S^j Ω ⊗ L^p ⊗ A^q)`.
    fn chi_sym(&self, j: usize, p: i64, q: i64) -> Result<BigInt> {
        chi_sym_omega_twist(self.s, j, &combo(p, self.l, q, self.a))
    }

    fn chi_omega_omega(&self, p: i64, q: i64) -> Result<BigInt> {
        let om = chern_sym_omega(self.s, 1)?;
        chi_twisted(self.s, &om.tensor(&om, self.s)?, &combo(p, self.l, q, self.a))
    }

    fn chi_canonical(&self, p: i64, q: i64) -> Result<BigInt> {
        let m = combo(p, self.l, q, self.a);
        chi_line(self.s, &m.iter().zip(&self.s.canonical).map(|(x, k)| x + k).collect::<Vec<_>>())
    }

    /// `χ(S^m X, D_A) = C(χ(A) + m − 1, m)`.
    fn sym_prefactor(&self, m: i64) -> Result<BigInt> {
        Ok(binom_poly(&(self.chi(0, 1)? + bi(m - 1)), m))
    }
}

/// The `n = 2` formula, any `k`.
pub fn chi_sym_power_n2(s: &SurfaceModel, k: usize, l: &[i64], a: &[i64]) -> Result<BigInt> {
    let c = Ctx { s, l, a };
    let k = k as i64;
    let mut total = BigInt::zero();
    if k % 2 == 0 {
        total += binom_poly(&(c.chi(k / 2, 1)? + 1), 2);
    }
    let top = if k >= 1 { (k - 1) / 2 } else { -1 };
    for i in 0..=top {
        total += c.chi(k - i, 1)? * c.chi(i, 1)?;
    }
    for j in 0..=k - 2 {
        total -= bi((k - j) / 2) * c.chi_sym(j as usize, k, 2)?;
    }
    Ok(total)
}

/// The closed formulas in `n` for `k ≤ 4`.
pub fn chi_sym_power_small_k(s: &SurfaceModel, n: usize, k: usize, l: &[i64], a: &[i64]) -> Result<BigInt> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let c = Ctx { s, l, a };
    let n = n as i64;
    let p = |m: i64| c.sym_prefactor(m);
    let la = c.chi(1, 1)?;
    Ok(match k {
        0 => p(n)?,
        1 => p(n - 1)? * la,
        2 => p(n - 1)? * c.chi(2, 1)? + p(n - 2)? * (binom_poly(&(&la + 1), 2) - c.chi(2, 2)?),
        3 => {
            p(n - 1)? * c.chi(3, 1)?
                + p(n - 2)? * (c.chi(2, 1)? * &la - c.chi(3, 2)? - c.chi_sym(1, 3, 2)?)
                + p(n - 3)? * (binom_poly(&(&la + 2), 3) - c.chi(2, 2)? * &la + c.chi_sym(1, 3, 3)?)
        }
        4 => {
            let second = c.chi(3, 1)? * &la - bi(2) * c.chi(4, 2)? - c.chi_sym(1, 4, 2)?
                + binom_poly(&(c.chi(2, 1)? + 1), 2)
                - c.chi_sym(2, 4, 2)?;
            let third = c.chi(2, 1)? * binom_poly(&(&la + 1), 2)
                - c.chi(3, 2)? * &la
                - c.chi(2, 2)? * c.chi(2, 1)?
                + c.chi(4, 3)?
                - c.chi_sym(1, 3, 2)? * &la
                + bi(2) * c.chi_sym(1, 4, 3)?
                + c.chi_omega_omega(4, 3)?
                + c.chi_sym(3, 4, 3)?;
            let fourth = binom_poly(&(&la + 3), 4) - c.chi(2, 2)? * binom_poly(&(&la + 1), 2)
                + binom_poly(&c.chi(2, 2)?, 2)
                + c.chi_sym(1, 3, 3)? * &la
                - c.chi_sym(1, 4, 4)?
                - c.chi_canonical(4, 4)?
                - c.chi_sym(3, 4, 4)?;
            p(n - 1)? * c.chi(4, 1)? + p(n - 2)? * second + p(n - 3)? * third + p(n - 4)? * fourth
        }
        _ => return Err(Error::Unsupported(format!("no closed formula in n for k = {k}"))),
    })
}

/// `χ(X^[n], S^k L^[n] ⊗ D_A)` where a closed formula is available.
pub fn chi_sym_power(s: &SurfaceModel, n: usize, k: usize, l: &[i64], a: &[i64]) -> Result<BigInt> {
    s.check_class(l)?;
    s.check_class(a)?;
    match (n, k) {
        (0, _) => Err(invalid("n must be at least 1")),
        (1, _) => chi_line(s, &combo(k as i64, l, 1, a)),
        (2, _) => chi_sym_power_n2(s, k, l, a),
        (_, 0..=4) => chi_sym_power_small_k(s, n, k, l, a),
        _ => Err(Error::Unsupported(format!("no formula for n = {n}, k = {k}; needs n <= 2 or k <= 4"))),
    }
}

/// `χ` of the `(k−j, j)` graded piece at `n = 2`.
pub fn chi_graded_piece_n2(s: &SurfaceModel, k: usize, j: usize, l: &[i64], a: &[i64]) -> Result<BigInt> {
    if 2 * j > k {
        return Err(invalid(format!("graded piece needs 0 <= j <= k/2, got j = {j}, k = {k}")));
    }
    s.check_class(l)?;
    s.check_class(a)?;
    let c = Ctx { s, l, a };
    let (big, small) = ((k - j) as i64, j as i64);
    let k = k as i64;
    let mut total = if big > small {
        c.chi(big, 1)? * c.chi(small, 1)?
    } else {
        binom_poly(&(c.chi(big, 1)? + 1), 2)
    };
    for deg in 0..2 * j {
        if big == small && deg % 2 == 1 {
            continue;
        }
        total -= c.chi_sym(deg, k, 2)?;
    }
    Ok(total)
}

/// `χ(S^4 X, A_4(M)) = C(χ(M), 2)`.
pub fn chi_a4(s: &SurfaceModel, m: &[i64]) -> Result<BigInt> {
    Ok(binom_poly(&chi_line(s, m)?, 2))
}

/// `dim S^k H⁰(P², O(l)) = C(C(l+2,2) + k − 1, k)`.
pub fn sym_power_of_sections_p2(l: i64, k: i64) -> BigInt {
    let n = binom_poly(&bi(l + 2), 2);
    binom_poly(&(n + bi(k - 1)), k)
}

/// A random lattice vector with entries in `−bound..=bound`.
pub fn random_class<R: Rng>(rng: &mut R, rank: usize, bound: i64) -> BundleClass {
    (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> SurfaceModel {
        SurfaceModel::builtin("p2").unwrap()
    }

    #[test]
    fn line_bundles() {
        for d in -5..=8i64 {
            assert_eq!(chi_line(&p2(), &[d]).unwrap(), binom_poly(&bi(d + 2), 2));
        }
        assert_eq!(chi_line(&SurfaceModel::builtin("k3").unwrap(), &[0]).unwrap(), bi(2));
        assert_eq!(chi_line(&SurfaceModel::builtin("abelian").unwrap(), &[0]).unwrap(), bi(0));
    }

    #[test]
    fn symmetric_powers_of_omega() {
        let s = p2();
        assert_eq!(chern_sym_omega(&s, 0).unwrap(), ChernData { rank: 1, c1: vec![0], c2num: 0 });
        assert_eq!(chern_sym_omega(&s, 1).unwrap(), ChernData { rank: 2, c1: vec![-3], c2num: 3 });
        let s2 = chern_sym_omega(&s, 2).unwrap();
        assert_eq!((s2.rank, s2.c1.clone(), s2.c2num), (3, vec![-9], 30));
        assert_eq!(chi_bundle(&s, &s2).unwrap(), bi(0));
        for d in -3..=5 {
            assert_eq!(chi_twisted(&s, &chern_sym_omega(&s, 1).unwrap(), &[d]).unwrap(), bi(d * d - 1));
        }
    }

    #[test]
    fn chern_roots_oracle() {
        // Roots of S^l Ω are iα + (l−i)β with α+β = K, αβ = c2.
        for name in SurfaceModel::builtin_names() {
            let s = SurfaceModel::builtin(name).unwrap();
            let (k2, c2) = (s.k2(), s.c2 as i128);
            for l in 0..=6i128 {
                let (mut sq, mut mixed) = (0i128, 0i128);
                for i in 0..=l {
                    sq += i * i;
                    mixed += i * (l - i);
                }
                let sum_sq = sq * (k2 - 2 * c2) + 2 * c2 * mixed;
                let tri = l * (l + 1) / 2;
                let e = chern_sym_omega(&s, l as usize).unwrap();
                assert_eq!(2 * e.c2num, tri * tri * k2 - sum_sq, "{name} l={l}");
            }
        }
    }

    #[test]
    fn tensor_square_of_omega() {
        let s = p2();
        let om = chern_sym_omega(&s, 1).unwrap();
        let t = om.tensor(&om, &s).unwrap();
        assert_eq!((t.rank, t.c1.clone()), (4, vec![-12]));
        // Ω⊗Ω = S²Ω ⊕ K.
        let split = chi_bundle(&s, &chern_sym_omega(&s, 2).unwrap()).unwrap() + chi_line(&s, &[-3]).unwrap();
        assert_eq!(chi_bundle(&s, &t).unwrap(), split);
        let k3 = SurfaceModel::builtin("k3").unwrap();
        assert_eq!(chi_line(&k3, &k3.canonical).unwrap(), bi(2));
    }

    #[test]
    fn listed_values() {
        let s = p2();
        assert_eq!(chi_sym_power(&s, 3, 3, &[2], &[0]).unwrap(), bi(56));
        assert_eq!(chi_sym_power_n2(&s, 3, &[3], &[1]).unwrap(), bi(540));
        assert_eq!(chi_sym_power_small_k(&s, 2, 3, &[3], &[1]).unwrap(), bi(540));
        let k3 = SurfaceModel::builtin("k3").unwrap();
        assert_eq!(chi_sym_power(&k3, 1, 0, &[0], &[0]).unwrap(), bi(2));
        assert!(chi_sym_power(&s, 3, 5, &[1], &[0]).is_err());
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binom_poly(&bi(-1), 2), bi(1));
        assert_eq!(binom_poly(&bi(0), 2), bi(0));
        assert_eq!(binom_poly(&bi(15), 2), bi(105));
        assert_eq!(binom_poly(&bi(3), -1), bi(0));
        assert_eq!(chi_a4(&p2(), &[0]).unwrap(), bi(0));
    }

    #[test]
    fn graded_pieces_sum_to_total() {
        for name in SurfaceModel::builtin_names() {
            let s = SurfaceModel::builtin(name).unwrap();
            let l: Vec<i64> = (0..s.rank as i64).map(|i| 2 - i).collect();
            let a: Vec<i64> = (0..s.rank as i64).map(|i| i - 1).collect();
            for k in 0..=6 {
                let sum: BigInt = (0..=k / 2).map(|j| chi_graded_piece_n2(&s, k, j, &l, &a).unwrap()).sum();
                assert_eq!(sum, chi_sym_power_n2(&s, k, &l, &a).unwrap(), "{name} k={k}");
            }
        }
    }

    #[test]
    fn model_loading() {
        let good = r#"{"name":"p2","rank":1,"intersection":[[1]],"K":[-3],"chiO":1,"c2":3}"#;
        assert_eq!(SurfaceModel::from_json(good).unwrap(), p2());
        let bad = r#"{"name":"x","rank":1,"intersection":[[1]],"K":[-3],"chiO":1,"c2":4}"#;
        assert!(matches!(SurfaceModel::from_json(bad), Err(Error::Model(_))));
        let asym = r#"{"name":"x","rank":2,"intersection":[[0,1],[2,0]],"K":[0,0],"chiO":0,"c2":0}"#;
        assert!(matches!(SurfaceModel::from_json(asym), Err(Error::Model(_))));
    }
}
