//! Weights and levels, alcove points of Δ_n, line-bundle data B(λ⃗, ℓ) with grade
//! and shift operations, Galois relabelling and indivisible normal forms.

use crate::error::{Error, Result};
use crate::Rational;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A dominant-or-not integral weight of SL(n) stored in row form with the last
/// row normalized to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWeight", into = "RowsOnly")]
pub struct Weight {
    rows: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Rows { rows: Vec<i64> },
    Fund { fund: Vec<i64> },
}

#[derive(Serialize)]
struct RowsOnly {
    rows: Vec<i64>,
}

impl From<Weight> for RowsOnly {
    fn from(w: Weight) -> Self {
        RowsOnly { rows: w.rows }
    }
}

impl TryFrom<RawWeight> for Weight {
    type Error = Error;
    fn try_from(raw: RawWeight) -> Result<Self> {
        match raw {
            RawWeight::Rows { rows } => Weight::from_rows(&rows),
            RawWeight::Fund { fund } => Ok(Weight::from_fund(&fund)),
        }
    }
}

impl Weight {
    pub fn from_rows(rows: &[i64]) -> Result<Self> {
        let last = *rows.last().ok_or_else(|| Error::Invalid("empty weight".into()))?;
        Ok(Weight { rows: rows.iter().map(|x| x - last).collect() })
    }

    /// Σ c_b ω_b for fundamental coefficients c_1, …, c_{n−1}.
    pub fn from_fund(c: &[i64]) -> Self {
        let n = c.len() + 1;
        let rows = (0..n).map(|k| c[k..].iter().sum()).collect();
        Weight { rows }
    }

    pub fn zero(n: usize) -> Self {
        Weight { rows: vec![0; n] }
    }

    /// The fundamental weight ω_b (ω_0 = ω_n = 0).
    pub fn fundamental(n: usize, b: usize) -> Self {
        let b = b % n;
        Weight { rows: (0..n).map(|k| i64::from(k < b)).collect() }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[i64] {
        &self.rows
    }

    /// c_b = λ_b − λ_{b+1}, b = 1, …, n−1.
    pub fn fund(&self) -> Vec<i64> {
        self.rows.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] >= w[1])
    }

    /// λ_1 − λ_n, the smallest level at which the weight lies in the alcove.
    pub fn width(&self) -> i64 {
        self.rows[0] - self.rows[self.n() - 1]
    }

    pub fn fits_level(&self, level: i64) -> bool {
        self.is_dominant() && self.width() <= level
    }

    /// |λ| for the normalized row form.
    pub fn size(&self) -> i64 {
        self.rows.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight { rows: self.rows.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect() }
    }
}

/// A point a_1 ≥ … ≥ a_n ≥ a_1 − 1 with Σ a_i = 0. Serialized as "p/q" strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct AlcovePoint {
    pub coords: Vec<Rational>,
}

impl TryFrom<Vec<String>> for AlcovePoint {
    type Error = Error;
    fn try_from(raw: Vec<String>) -> Result<Self> {
        AlcovePoint::new(raw.iter().map(|x| parse_rational(x)).collect::<Result<_>>()?)
    }
}

impl From<AlcovePoint> for Vec<String> {
    fn from(p: AlcovePoint) -> Self {
        p.coords.iter().map(fmt_rational).collect()
    }
}

impl AlcovePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let p = AlcovePoint { coords };
        if !p.is_valid() {
            return Err(Error::Invalid(format!("not an alcove point: {}", p.fmt_coords())));
        }
        Ok(p)
    }

    pub fn center(n: usize) -> Self {
        AlcovePoint { coords: vec![Rational::zero(); n] }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn is_valid(&self) -> bool {
        let c = &self.coords;
        !c.is_empty()
            && c.iter().sum::<Rational>().is_zero()
            && c.windows(2).all(|w| w[0] >= w[1])
            && c[c.len() - 1] >= c[0] - Rational::one()
    }

    /// The action of the central element ζ_n^m: ζ·a = (a_2, …, a_n, a_1 − 1) + 1/n.
    pub fn twist(&self, m: i64) -> AlcovePoint {
        let n = self.n() as i64;
        let mut c = self.coords.clone();
        for _ in 0..m.rem_euclid(n) {
            let first = c.remove(0) - Rational::one();
            c.push(first);
            let shift = Rational::new(1, n);
            c.iter_mut().for_each(|x| *x += shift);
        }
        AlcovePoint { coords: c }
    }

    pub fn fmt_coords(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        format!("({})", parts.join(","))
    }
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// κ(λ/ℓ) = (λ_k/ℓ − |λ|/(nℓ))_k.
pub fn kappa(w: &Weight, level: i64) -> Result<AlcovePoint> {
    if level <= 0 || !w.fits_level(level) {
        return Err(Error::LevelViolation { weight: w.rows.clone(), level });
    }
    let n = w.n() as i64;
    let size = w.size();
    let coords = w.rows.iter().map(|&x| Rational::new(x * n - size, n * level)).collect();
    Ok(AlcovePoint { coords })
}

/// B(λ⃗, ℓ) on Par_{n,N,S} with deg N = `deg_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineBundleData {
    pub n: usize,
    #[serde(rename = "degN", default)]
    pub deg_n: i64,
    pub level: i64,
    pub weights: Vec<Weight>,
}

impl LineBundleData {
    pub fn new(n: usize, deg_n: i64, level: i64, weights: Vec<Weight>) -> Result<Self> {
        let b = LineBundleData { n, deg_n, level, weights };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 || self.level < 0 {
            return Err(Error::Invalid("need n ≥ 1 and level ≥ 0".into()));
        }
        if let Some(w) = self.weights.iter().find(|w| w.n() != self.n) {
            return Err(Error::Invalid(format!("weight {:?} has wrong rank for n={}", w.rows(), self.n)));
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.weights.len()
    }

    /// (Σ|λ^i| + ℓ deg N) mod n.
    pub fn grade(&self) -> i64 {
        let total: i64 = self.weights.iter().map(Weight::size).sum::<i64>() + self.level * self.deg_n;
        total.rem_euclid(self.n as i64)
    }

    /// All weights dominant and inside the level-ℓ alcove.
    pub fn in_alcove(&self) -> bool {
        self.weights.iter().all(|w| w.fits_level(self.level))
    }

    pub fn kappa_points(&self) -> Result<Vec<AlcovePoint>> {
        self.weights.iter().map(|w| kappa(w, self.level)).collect()
    }

    pub fn tensor(&self, other: &LineBundleData) -> Result<LineBundleData> {
        if self.n != other.n || self.s() != other.s() || self.deg_n != other.deg_n {
            return Err(Error::Invalid("tensor of incompatible bundles".into()));
        }
        let weights = self.weights.iter().zip(&other.weights).map(|(a, b)| a.add(b)).collect();
        Ok(LineBundleData { n: self.n, deg_n: self.deg_n, level: self.level + other.level, weights })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// Pullback along the shift at one point. Forward: μ_1 = λ_n + ℓ, μ_a = λ_{a−1},
/// on the bundle of degree deg N − 1. Inverse: ν_a = λ_{a+1}, ν_n = λ_1 − ℓ, on
/// degree deg N + 1. Both preserve the grade.
pub fn shift_bundle(l: &LineBundleData, point: usize, dir: Direction) -> Result<LineBundleData> {
    if point >= l.s() {
        return Err(Error::Invalid(format!("point {point} out of range")));
    }
    let mut out = l.clone();
    let rows = l.weights[point].rows();
    let n = l.n;
    let new_rows: Vec<i64> = match dir {
        Direction::Forward => {
            out.deg_n -= 1;
            std::iter::once(rows[n - 1] + l.level).chain(rows[..n - 1].iter().copied()).collect()
        }
        Direction::Inverse => {
            out.deg_n += 1;
            rows[1..].iter().copied().chain(std::iter::once(rows[0] - l.level)).collect()
        }
    };
    out.weights[point] = Weight::from_rows(&new_rows)?;
    Ok(out)
}

/// Moves the bundle to deg N = 0 by shifts at point 0. n forward shifts give back
/// the same normalized weights on degree deg N − n.
pub fn shift_to_degree_zero(l: &LineBundleData) -> Result<LineBundleData> {
    let n = l.n as i64;
    let mut out = l.clone();
    out.deg_n = l.deg_n.rem_euclid(n);
    while out.deg_n > 0 {
        out = shift_bundle(&out, 0, Direction::Forward)?;
    }
    Ok(out)
}

/// T_m: Σ c_a ω_a ↦ Σ c_a ω_{ma mod n}.
pub fn galois_tm(w: &Weight, m: i64) -> Result<Weight> {
    let n = w.n();
    if m.gcd(&(n as i64)) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    let c = w.fund();
    let mut out = vec![0; n.saturating_sub(1)];
    for (a, &ca) in c.iter().enumerate() {
        let target = ((a as i64 + 1) * m).rem_euclid(n as i64) as usize;
        out[target - 1] += ca;
    }
    Ok(Weight::from_fund(&out))
}

/// Applies T_m to every weight of a bundle.
pub fn galois_bundle(l: &LineBundleData, m: i64) -> Result<LineBundleData> {
    let weights = l.weights.iter().map(|w| galois_tm(w, m)).collect::<Result<_>>()?;
    Ok(LineBundleData { weights, ..l.clone() })
}

/// Divides (λ⃗, ℓ) by the largest integer keeping everything integral and of grade zero.
pub fn normalize_indivisible(l: &LineBundleData) -> Result<LineBundleData> {
    if l.level <= 0 {
        return Err(Error::Precondition("normalize_indivisible needs ℓ > 0".into()));
    }
    if l.grade() != 0 {
        return Err(Error::GradeNonzero(l.grade()));
    }
    let g = l.weights.iter().flat_map(|w| w.rows().iter()).fold(l.level, |acc, &x| acc.gcd(&x));
    let n = l.n as i64;
    let total: i64 = l.weights.iter().map(Weight::size).sum();
    let k = (1..=g)
        .rev()
        .find(|k| g % k == 0 && (total / k + (l.level / k) * l.deg_n).rem_euclid(n) == 0)
        .unwrap_or(1);
    Ok(LineBundleData {
        n: l.n,
        deg_n: l.deg_n,
        level: l.level / k,
        weights: l.weights.iter().map(|w| Weight { rows: w.rows.iter().map(|x| x / k).collect() }).collect(),
    })
}

/// Clears denominators of a⃗ and scales to grade zero on deg N = 0, without
/// dividing back down.
pub fn vertex_to_bundle_raw(points: &[AlcovePoint]) -> Result<LineBundleData> {
    let n = points.first().ok_or_else(|| Error::Invalid("empty tuple".into()))?.n();
    for p in points {
        if p.n() != n || !p.is_valid() {
            return Err(Error::Invalid(format!("not an alcove point of Δ_{n}: {}", p.fmt_coords())));
        }
    }
    let diffs: Vec<Vec<Rational>> =
        points.iter().map(|p| p.coords.iter().map(|x| x - p.coords[n - 1]).collect()).collect();
    let den = diffs.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let weights: Vec<Weight> = diffs
        .iter()
        .map(|b| Weight { rows: b.iter().map(|x| (x * Rational::from_integer(den)).to_integer()).collect() })
        .collect();
    let total: i64 = weights.iter().map(Weight::size).sum();
    let t = (n as i64) / total.gcd(&(n as i64));
    let weights = weights.iter().map(|w| w.scale(t)).collect();
    Ok(LineBundleData { n, deg_n: 0, level: den * t, weights })
}

/// The indivisible grade-zero bundle B(λ⃗, ℓ) on Par_{n,O,S} with κ(λ^j/ℓ) = a^j.
pub fn vertex_to_bundle(points: &[AlcovePoint]) -> Result<LineBundleData> {
    normalize_indivisible(&vertex_to_bundle_raw(points)?)
}
