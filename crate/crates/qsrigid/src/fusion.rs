//! Fusion ranks of sl_r at level k: a floating-point Verlinde oracle, the
//! dictionary with Gromov-Witten numbers, and h⁰ of line bundles on parabolic
//! moduli computed through the quantum ring.

use crate::alcove::{shift_to_degree_zero, LineBundleData, Weight};
use crate::error::{Error, Result};
use crate::partitions::{box_partitions, index_to_partition, partition_to_index, BoxPartition, Partition};
use crate::qschubert::{gw_generalized, GwQuery};
use dashmap::DashMap;
use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::f64::consts::PI;
use std::sync::Arc;

/// Tolerance on the distance of a Verlinde sum to the nearest integer.
pub const TOLERANCE: f64 = 1e-6;

/// Dominant weights of sl_r of level ≤ k, stored in normalized row form.
#[derive(Debug, Clone)]
pub struct FusionAlgebra {
    pub r: usize,
    pub k: usize,
    pub weights: Vec<Weight>,
}

impl FusionAlgebra {
    pub fn new(r: usize, k: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("sl_r needs r ≥ 1".into()));
        }
        let weights = box_partitions(r - 1, k)
            .iter()
            .map(|p| {
                let rows: Vec<i64> = p.padded(r).iter().map(|&x| x as i64).collect();
                Weight::from_rows(&rows).expect("nonempty")
            })
            .collect();
        Ok(FusionAlgebra { r, k, weights })
    }
}

/// Per weight μ of the algebra: exponents t_j with x_j = exp(2πi t_j), and S_{0μ}².
struct SPoint {
    t: Vec<f64>,
    s0sq: f64,
}

static S_ROWS: Lazy<DashMap<(usize, usize), Arc<Vec<SPoint>>>> = Lazy::new(DashMap::new);

fn s_rows(r: usize, k: usize) -> Arc<Vec<SPoint>> {
    if let Some(v) = S_ROWS.get(&(r, k)) {
        return v.clone();
    }
    let h = (r + k) as f64;
    let alg = FusionAlgebra::new(r, k).expect("r ≥ 1");
    let rows: Vec<SPoint> = alg
        .weights
        .iter()
        .map(|mu| {
            let v: Vec<f64> = (0..r).map(|j| (mu.rows()[j] + (r - 1 - j) as i64) as f64).collect();
            let mean = v.iter().sum::<f64>() / r as f64;
            let t = v.iter().map(|vj| (vj - mean) / h).collect();
            let mut s0sq = 1.0;
            for a in 0..r {
                for b in a + 1..r {
                    s0sq *= (2.0 * (PI * (v[a] - v[b]) / h).sin()).powi(2);
                }
            }
            s0sq /= r as f64 * h.powi(r as i32 - 1);
            SPoint { t, s0sq }
        })
        .collect();
    let v = Arc::new(rows);
    S_ROWS.insert((r, k), v.clone());
    v
}

fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let piv = (c..n).max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm())).unwrap();
        if m[piv][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != c {
            m.swap(piv, c);
            acc = -acc;
        }
        acc *= m[c][c];
        for rr in c + 1..n {
            let f = m[rr][c] / m[c][c];
            for cc in c..n {
                let sub = f * m[c][cc];
                m[rr][cc] -= sub;
            }
        }
    }
    acc
}

/// Schur polynomial s_λ(x) with x_j = exp(2πi t_j), as a ratio of alternants.
fn schur(rows: &[i64], t: &[f64]) -> Complex64 {
    let r = t.len();
    let alt = |expo: &dyn Fn(usize) -> f64| -> Complex64 {
        let m = (0..r)
            .map(|i| (0..r).map(|j| Complex64::from_polar(1.0, 2.0 * PI * expo(i) * t[j])).collect())
            .collect();
        det(m)
    };
    let num = alt(&|i| (rows[i] + (r - 1 - i) as i64) as f64);
    let den = alt(&|i| (r - 1 - i) as f64);
    num / den
}

/// Genus-zero s-point fusion rank for sl_r at level k via the Verlinde sum.
pub fn verlinde_rank(alg: &FusionAlgebra, weights: &[Weight]) -> Result<u64> {
    verlinde_rank_rk(alg.r, alg.k, weights)
}

pub fn verlinde_rank_rk(r: usize, k: usize, weights: &[Weight]) -> Result<u64> {
    for w in weights {
        if w.n() != r {
            return Err(Error::Invalid(format!("weight {:?} is not an sl_{r} weight", w.rows())));
        }
        if !w.fits_level(k as i64) {
            return Err(Error::LevelViolation { weight: w.rows().to_vec(), level: k as i64 });
        }
    }
    if r == 1 {
        return Ok(1);
    }
    let total: i64 = weights.iter().map(Weight::size).sum();
    if total.rem_euclid(r as i64) != 0 {
        return Ok(0);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for p in s_rows(r, k).iter() {
        let mut term = Complex64::new(p.s0sq, 0.0);
        for w in weights {
            term *= schur(w.rows(), &p.t);
        }
        sum += term;
    }
    let rounded = sum.re.round();
    let residue = (sum.re - rounded).abs().max(sum.im.abs());
    if residue > TOLERANCE || rounded < 0.0 {
        return Err(Error::Precision { value: sum.re, residue });
    }
    Ok(rounded as u64)
}

/// The d-fold cyclic level-k shift (μ_1, …, μ_r) ↦ (μ_2, …, μ_r, μ_1 − k).
pub fn level_shift(rows: &[i64], k: i64, d: i64) -> Vec<i64> {
    let mut v = rows.to_vec();
    for _ in 0..d.max(0) {
        let first = v.remove(0);
        v.push(first - k);
    }
    for _ in 0..(-d).max(0) {
        let last = v.pop().unwrap();
        v.insert(0, last + k);
    }
    v
}

/// Evaluates a Gromov-Witten query through sl_r fusion at level n − r.
pub fn witten_rank(q: &GwQuery) -> Result<u64> {
    q.validate()?;
    if q.codim_excess() != 0 || q.indices.is_empty() {
        return Ok(0);
    }
    let (r, k) = (q.r, q.n - q.r);
    let mut weights = Vec::with_capacity(q.indices.len());
    for (j, idx) in q.indices.iter().enumerate() {
        let rows: Vec<i64> = index_to_partition(idx).inner.padded(r).iter().map(|&x| x as i64).collect();
        let rows = if j == 0 { level_shift(&rows, k as i64, q.d) } else { rows };
        weights.push(Weight::from_rows(&rows)?);
    }
    verlinde_rank_rk(r, k, &weights)
}

/// The generalized GW query on Gr(n, n+ℓ) whose value is h⁰ of a grade-zero
/// bundle on deg N = 0 with weights inside the alcove.
fn h0_query(l: &LineBundleData) -> Result<GwQuery> {
    let (n, level) = (l.n, l.level as usize);
    let total: i64 = l.weights.iter().map(Weight::size).sum();
    let u = total / n as i64;
    let indices = l
        .weights
        .iter()
        .map(|w| {
            let parts: Vec<usize> = w.rows().iter().map(|&x| x as usize).collect();
            Ok(partition_to_index(&BoxPartition::new(Partition::new(parts)?, n, level)?))
        })
        .collect::<Result<Vec<_>>>()?;
    GwQuery::new(n, n + level, 0, level as i64 - u, indices)
}

/// Trivial cases shared by both routes; None when a real computation is needed.
fn h0_trivial(l: &LineBundleData) -> Result<Option<u64>> {
    l.validate()?;
    if l.grade() != 0 || !l.in_alcove() {
        return Ok(Some(0));
    }
    if l.level == 0 {
        return Ok(Some(u64::from(l.weights.iter().all(Weight::is_zero))));
    }
    if l.n == 1 || l.weights.is_empty() {
        return Ok(Some(1));
    }
    Ok(None)
}

/// h⁰ through the quantum cohomology of Gr(n, n+ℓ).
pub fn h0_gw(l: &LineBundleData) -> Result<u64> {
    if let Some(v) = h0_trivial(l)? {
        return Ok(v);
    }
    gw_generalized(&h0_query(&shift_to_degree_zero(l)?)?)
}

/// h⁰ through the sl_n level-ℓ Verlinde sum.
pub fn h0_verlinde(l: &LineBundleData) -> Result<u64> {
    if let Some(v) = h0_trivial(l)? {
        return Ok(v);
    }
    let l0 = shift_to_degree_zero(l)?;
    verlinde_rank_rk(l0.n, l0.level as usize, &l0.weights)
}

/// h⁰(Par_{n,N,S}, B(λ⃗, ℓ)), exact, cross-checked against the Verlinde oracle.
pub fn h0(l: &LineBundleData) -> Result<u64> {
    let exact = h0_gw(l)?;
    let oracle = h0_verlinde(l)?;
    if exact != oracle {
        return Err(Error::disagree("h0 quantum ring vs Verlinde", exact, oracle));
    }
    Ok(exact)
}

/// The level-rank transform B(λ⃗, ℓ) on Par_{n,O,S} ↦ B(λ⃗ᵀ, n) on Par_{ℓ,Ñ,S}
/// with deg Ñ = −Σ|λ^i|/n. Needs grade zero and ℓ ≥ 1.
pub fn level_rank_dual(l: &LineBundleData) -> Result<LineBundleData> {
    if l.grade() != 0 {
        return Err(Error::GradeNonzero(l.grade()));
    }
    if l.level < 1 || !l.in_alcove() {
        return Err(Error::Precondition("level-rank transform needs ℓ ≥ 1 and alcove weights".into()));
    }
    let l0 = shift_to_degree_zero(l)?;
    let level = l0.level as usize;
    let total: i64 = l0.weights.iter().map(Weight::size).sum();
    let weights = l0
        .weights
        .iter()
        .map(|w| {
            let parts: Vec<usize> = w.rows().iter().map(|&x| x as usize).collect();
            let t = Partition::new(parts)?.transpose();
            let rows: Vec<i64> = t.padded(level).iter().map(|&x| x as i64).collect();
            Weight::from_rows(&rows)
        })
        .collect::<Result<Vec<_>>>()?;
    LineBundleData::new(level, -total / l0.n as i64, l0.n as i64, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(c: &[i64]) -> Weight {
        Weight::from_fund(c)
    }

    #[test]
    fn verlinde_examples() {
        let a = FusionAlgebra::new(2, 1).unwrap();
        assert_eq!(a.weights.len(), 2);
        assert_eq!(verlinde_rank(&a, &[fw(&[1]), fw(&[1])]).unwrap(), 1);
        assert_eq!(verlinde_rank(&a, &[fw(&[1]), fw(&[1]), fw(&[1])]).unwrap(), 0);
        let a = FusionAlgebra::new(4, 2).unwrap();
        let w = fw(&[1, 0, 1]);
        assert_eq!(verlinde_rank(&a, &[w.clone(), w.clone(), w]).unwrap(), 1);
        assert_eq!(FusionAlgebra::new(3, 4).unwrap().weights.len(), 15);
    }

    #[test]
    fn witten_examples() {
        let q = GwQuery::from_sets(2, 4, 0, 0, &[&[2, 4]; 4]).unwrap();
        assert_eq!(witten_rank(&q).unwrap(), 2);
        let q = GwQuery::from_sets(4, 8, 2, 0, &[&[2, 3, 4, 7], &[1, 3, 4, 7], &[1, 3, 4, 7]]).unwrap();
        assert_eq!(witten_rank(&q).unwrap(), 1);
        let q = GwQuery::from_sets(2, 4, 1, 0, &[&[2, 4]; 3]).unwrap();
        assert_eq!(witten_rank(&q).unwrap(), 0);
    }

    #[test]
    fn h0_examples() {
        let w = fw(&[1, 0, 1]);
        let l = LineBundleData::new(4, 0, 2, vec![w.clone(), w.clone(), w]).unwrap();
        assert_eq!(h0(&l).unwrap(), 1);
        let t = fw(&[1, 0, 0, 2, 0, 0, 1]);
        let l = LineBundleData::new(8, 0, 4, vec![t.clone(), t.clone(), t]).unwrap();
        assert_eq!(h0(&l).unwrap(), 1);
        let l = LineBundleData::new(4, 0, 2, vec![fw(&[1, 0, 0]), Weight::zero(4), Weight::zero(4)]).unwrap();
        assert_eq!(h0(&l).unwrap(), 0);
    }

    #[test]
    fn level_rank_examples() {
        let w = fw(&[1, 0, 1]);
        let l = LineBundleData::new(4, 0, 2, vec![w.clone(), w.clone(), w]).unwrap();
        let dual = level_rank_dual(&l).unwrap();
        assert_eq!((dual.n, dual.level, dual.deg_n), (2, 4, -3));
        assert_eq!(dual.grade(), 0);
        assert_eq!(h0(&dual).unwrap(), 1);
    }
}
