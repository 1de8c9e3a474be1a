//! Faces of the effective cone: the Pic′ subgroup, the decomposition of a face
//! into basic rays and a Pic′ part, and Levi induction onto a face.

use crate::alcove::{LineBundleData, Weight};
use crate::divisors::{build_daj, FaceData};
use crate::error::{Error, Result};
use crate::fusion::verlinde_rank_rk;
use crate::partitions::index_to_partition;
use crate::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// B(λ⃗, ℓ) with rational GL weights; weights are compared modulo constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBundle {
    pub n: usize,
    pub level: Rational,
    pub weights: Vec<Vec<Rational>>,
}

impl RationalBundle {
    pub fn zero(n: usize, s: usize) -> Self {
        RationalBundle { n, level: Rational::zero(), weights: vec![vec![Rational::zero(); n]; s] }
    }

    pub fn from_bundle(l: &LineBundleData) -> Self {
        let weights =
            l.weights.iter().map(|w| w.rows().iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        RationalBundle { n: l.n, level: Rational::from_integer(l.level), weights }
    }

    /// self += c · other.
    pub fn add_scaled(&mut self, other: &RationalBundle, c: Rational) {
        self.level += other.level * c;
        for (w, v) in self.weights.iter_mut().zip(&other.weights) {
            for (x, y) in w.iter_mut().zip(v) {
                *x += y * c;
            }
        }
    }

    pub fn scaled(&self, c: Rational) -> RationalBundle {
        let mut out = RationalBundle::zero(self.n, self.weights.len());
        out.add_scaled(self, c);
        out
    }

    /// Each weight shifted so that its last entry is zero.
    pub fn normalized(&self) -> RationalBundle {
        let weights = self.weights.iter().map(|w| w.iter().map(|x| x - w[self.n - 1]).collect()).collect();
        RationalBundle { n: self.n, level: self.level, weights }
    }

    pub fn is_zero(&self) -> bool {
        let z = self.normalized();
        z.level.is_zero() && z.weights.iter().flatten().all(Zero::is_zero)
    }

    /// The integral bundle on Par_{n,O,S}, if the class is integral.
    pub fn to_line_bundle(&self) -> Result<LineBundleData> {
        let z = self.normalized();
        let int = |x: &Rational| -> Result<i64> {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Invalid(format!("class is not integral: entry {x}")))
            }
        };
        let level = int(&z.level)?;
        let weights = z
            .weights
            .iter()
            .map(|w| Weight::from_rows(&w.iter().map(int).collect::<Result<Vec<_>>>()?))
            .collect::<Result<_>>()?;
        LineBundleData::new(self.n, 0, level, weights)
    }
}

/// How far B(λ⃗, ℓ) is from the Pic′ equality attached to (a, j), j 1-based.
fn violation(b: &RationalBundle, a: usize, j: usize) -> Rational {
    let w = &b.weights[j - 1];
    if a > 1 {
        w[a - 2] - w[a - 1]
    } else {
        w[b.n - 1] - w[0] + b.level
    }
}

fn check_face(f: &FaceData, n: usize, s: usize) -> Result<()> {
    if f.n != n || f.s() != s {
        return Err(Error::Invalid(format!("face is for n={}, s={}; bundle has n={n}, s={s}", f.n, f.s())));
    }
    Ok(())
}

/// Both Pic′ conditions: λ^j_{a−1} = λ^j_a for a > 1 admissible, and
/// λ^j_1 = λ^j_n + ℓ when 1 ∈ I^j, n ∉ I^j.
pub fn pic_prime_test(l: &LineBundleData, f: &FaceData) -> bool {
    if f.n != l.n || f.s() != l.s() {
        return false;
    }
    let b = RationalBundle::from_bundle(l);
    f.admissible_pairs().into_iter().all(|(a, j)| violation(&b, a, j).is_zero())
}

fn require_degree_zero(f: &FaceData) -> Result<()> {
    if f.deg_shift != 0 {
        return Err(Error::Precondition("face needs N = O".into()));
    }
    Ok(())
}

fn basic_rays(f: &FaceData) -> Result<Vec<(usize, usize, LineBundleData)>> {
    f.admissible_pairs().into_iter().map(|(a, j)| Ok((a, j, build_daj(f, a, j)?.1))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDecomposition {
    pub face: FaceData,
    /// (a, j, O(D(a, j))) with j 1-based.
    pub basic_rays: Vec<(usize, usize, LineBundleData)>,
    pub f2_part: LineBundleData,
    pub coefficients: Vec<Rational>,
}

impl FaceDecomposition {
    /// f2_part ⊗ ⨂ D(a, j)^{coefficient}.
    pub fn reconstruct(&self) -> RationalBundle {
        let mut out = RationalBundle::from_bundle(&self.f2_part);
        for ((_, _, ray), c) in self.basic_rays.iter().zip(&self.coefficients) {
            out.add_scaled(&RationalBundle::from_bundle(ray), *c);
        }
        out
    }
}

/// Subtracts D(a, j) once for each unit of failure of the (a, j) equality. Each
/// D(a, j) fails only its own equality, by exactly one, so the remainder lies in Pic′.
pub fn face_decompose(l: &LineBundleData, f: &FaceData) -> Result<FaceDecomposition> {
    require_degree_zero(f)?;
    check_face(f, l.n, l.s())?;
    if l.deg_n != 0 {
        return Err(Error::Precondition("bundle needs N = O".into()));
    }
    let defect = f.face_defect(l);
    if defect != 0 {
        return Err(Error::NotOnFace(format!("face equality off by {defect}")));
    }
    let rays = basic_rays(f)?;
    let mut rest = RationalBundle::from_bundle(l);
    let mut coefficients = Vec::with_capacity(rays.len());
    for (a, j, ray) in &rays {
        let v = violation(&rest, *a, *j);
        rest.add_scaled(&RationalBundle::from_bundle(ray), -v);
        coefficients.push(v);
    }
    for (a, j, _) in &rays {
        let v = violation(&rest, *a, *j);
        if !v.is_zero() {
            return Err(Error::disagree("remainder in Pic′", (a, j, v), 0));
        }
    }
    Ok(FaceDecomposition { face: f.clone(), basic_rays: rays, f2_part: rest.to_line_bundle()?, coefficients })
}

/// One factor of the Levi data: a bundle of rank `rank` and degree `deg_n` with
/// GL weights and a level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviSide {
    pub rank: usize,
    #[serde(rename = "degN", default)]
    pub deg_n: i64,
    pub level: i64,
    pub weights: Vec<Vec<i64>>,
}

impl LeviSide {
    pub fn trivial(rank: usize, deg_n: i64, s: usize) -> Self {
        LeviSide { rank, deg_n, level: 0, weights: vec![vec![0; rank]; s] }
    }

    /// Weights shifted by a common constant so that the C*-index vanishes:
    /// Σ|λ^i| = −deg N · ℓ.
    pub fn normalized(&self) -> Vec<Vec<Rational>> {
        let total: i64 = self.weights.iter().flatten().sum();
        let target = -self.deg_n * self.level;
        let cells = (self.rank * self.weights.len()) as i64;
        let c = Rational::new(total - target, cells.max(1));
        self.weights.iter().map(|w| w.iter().map(|&x| Rational::from_integer(x) - c).collect()).collect()
    }
}

/// B(λ⃗, ℓ) on the subbundle side and B(μ⃗, m) on the quotient side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviBundle {
    pub sub: LeviSide,
    pub quot: LeviSide,
}

impl LeviBundle {
    pub fn validate(&self, f: &FaceData) -> Result<()> {
        let (r, n, s) = (f.r, f.n, f.s());
        let bad = |what: &str| Err(Error::Invalid(format!("Levi data does not fit the face: {what}")));
        if self.sub.rank != r || self.quot.rank != n - r {
            return bad("ranks");
        }
        if self.sub.deg_n != -f.d || self.quot.deg_n != f.d - f.deg_shift {
            return bad("degrees");
        }
        if self.sub.weights.len() != s || self.quot.weights.len() != s {
            return bad("number of points");
        }
        if self.sub.weights.iter().any(|w| w.len() != r) || self.quot.weights.iter().any(|w| w.len() != n - r) {
            return bad("weight lengths");
        }
        if self.sub.level < 0 || self.quot.level < 0 {
            return bad("negative level");
        }
        Ok(())
    }
}

/// δ^j_{i^j_c} = λ^j_c and δ^j_{k^j_c} = μ^j_c, with k^j the complement of I^j.
fn interleave(f: &FaceData, sub: &[Vec<Rational>], quot: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    f.indices
        .iter()
        .zip(sub.iter().zip(quot))
        .map(|(idx, (l, m))| {
            let mut delta = vec![Rational::zero(); f.n];
            let (mut c, mut e) = (0, 0);
            for (pos, slot) in delta.iter_mut().enumerate() {
                if idx.contains(pos + 1) {
                    *slot = l[c];
                    c += 1;
                } else {
                    *slot = m[e];
                    e += 1;
                }
            }
            delta
        })
        .collect()
}

/// B(δ⃗, 0) ⊗ O(Σ b_{(a,j)} D(a, j)) with b = δ^j_a − δ^j_{a−1} (a > 1) or δ^j_1 − δ^j_n.
fn induce_weights(f: &FaceData, delta: Vec<Vec<Rational>>) -> Result<RationalBundle> {
    let n = f.n;
    let mut out = RationalBundle { n, level: Rational::zero(), weights: delta };
    for (a, j, ray) in basic_rays(f)? {
        let w = &out.weights[j - 1];
        let b = if a > 1 { w[a - 1] - w[a - 2] } else { w[0] - w[n - 1] };
        out.add_scaled(&RationalBundle::from_bundle(&ray), b);
    }
    Ok(out)
}

/// Induction of level-zero Levi data (weights normalized to index zero).
pub fn induce_level_zero(levi: &LeviBundle, f: &FaceData) -> Result<RationalBundle> {
    require_degree_zero(f)?;
    levi.validate(f)?;
    if levi.sub.level != 0 || levi.quot.level != 0 {
        return Err(Error::Precondition("level-zero induction needs ℓ = m = 0".into()));
    }
    induce_weights(f, interleave(f, &levi.sub.normalized(), &levi.quot.normalized()))
}

/// The two factors of O(R_L): A = D(V*)^{n−r} ⊗ det V_x^{d−D} ⊗ L_{λ(I^j)} on the
/// subbundle side and A′ = D(T*)^r ⊗ det T_x^d ⊗ L_{λ(I^j)ᵀ}(T) with T = Q*, written
/// as Q-side weights (reverse and negate) at level r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationData {
    pub a: LeviSide,
    pub a_prime: LeviSide,
}

pub fn ramification_bundles(f: &FaceData) -> RamificationData {
    let (r, n, d) = (f.r, f.n, f.d);
    let k = n - r;
    let mut sub = Vec::with_capacity(f.s());
    let mut quot = Vec::with_capacity(f.s());
    for (j, idx) in f.indices.iter().enumerate() {
        let lam = index_to_partition(idx).inner;
        let mut w: Vec<i64> = lam.padded(r).iter().map(|&x| x as i64).collect();
        let mut t: Vec<i64> = lam.transpose().padded(k).iter().rev().map(|&x| -(x as i64)).collect();
        if j == 0 {
            w.iter_mut().for_each(|x| *x += d - f.deg_shift);
            t.iter_mut().for_each(|x| *x -= d);
        }
        sub.push(w);
        quot.push(t);
    }
    RamificationData {
        a: LeviSide { rank: r, deg_n: -d, level: k as i64, weights: sub },
        a_prime: LeviSide { rank: k, deg_n: d - f.deg_shift, level: r as i64, weights: quot },
    }
}

/// Induced classes of the normalized determinant-of-cohomology bundles D(V*) and
/// D(Q*), from Ind(A ⊠ 1) = 0 and Ind(1 ⊠ A′) = 0.
pub fn induced_determinants(f: &FaceData) -> Result<(RationalBundle, RationalBundle)> {
    require_degree_zero(f)?;
    let (r, n, s) = (f.r, f.n, f.s());
    let ram = ramification_bundles(f);
    let zero_sub = LeviSide::trivial(r, -f.d, s).normalized();
    let zero_quot = LeviSide::trivial(n - r, f.d - f.deg_shift, s).normalized();
    let a = induce_weights(f, interleave(f, &ram.a.normalized(), &zero_quot))?;
    let a_prime = induce_weights(f, interleave(f, &zero_sub, &ram.a_prime.normalized()))?;
    Ok((a.scaled(-Rational::new(1, (n - r) as i64)), a_prime.scaled(-Rational::new(1, r as i64))))
}

/// For d = D = 0 with 1 ∉ I^j for all j: the rank of the sl_r block with
/// weights λ(I^j) at level n−r−1. It counts the non-trivial subbundles in
/// codimension one; ranks 0 and 1 are the cases where D(V*) is tied to a
/// determinant at a point.
pub fn determinant_block_rank(f: &FaceData) -> Result<Option<u64>> {
    if f.d != 0 || f.deg_shift != 0 || f.indices.iter().any(|i| i.contains(1)) {
        return Ok(None);
    }
    let r = f.r;
    let weights: Vec<Weight> = f
        .indices
        .iter()
        .map(|i| Weight::from_rows(&index_to_partition(i).inner.padded(r).iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    Ok(Some(verlinde_rank_rk(r, f.n - r - 1, &weights)?))
}

/// Ind(B(λ⃗, ℓ) ⊠ B(μ⃗, m)) = Ind₀(normalized weights) + ℓ·Ind D(V*) + m·Ind D(Q*).
pub fn induce(levi: &LeviBundle, f: &FaceData) -> Result<RationalBundle> {
    require_degree_zero(f)?;
    levi.validate(f)?;
    let mut out = induce_weights(f, interleave(f, &levi.sub.normalized(), &levi.quot.normalized()))?;
    if levi.sub.level == 0 && levi.quot.level == 0 {
        return Ok(out);
    }
    let (dv, dq) = induced_determinants(f)?;
    if levi.sub.level != 0 {
        if let Some(rank) = determinant_block_rank(f)? {
            if rank >= 2 {
                return Err(Error::Unsupported(format!("d = D = 0 with block rank {rank} ≥ 2")));
            }
        }
        out.add_scaled(&dv, Rational::from_integer(levi.sub.level));
    }
    if levi.quot.level != 0 {
        out.add_scaled(&dq, Rational::from_integer(levi.quot.level));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rex_face() -> FaceData {
        FaceData::from_sets(0, 3, 9, 0, &[&[3, 7, 8][..], &[3, 6, 9], &[3, 6, 9]]).unwrap()
    }

    fn rex_target() -> LineBundleData {
        let w = |v: &[i64]| Weight::from_rows(v).unwrap();
        let mu = w(&[2, 2, 2, 1, 1, 1, 0, 0, 0]);
        LineBundleData::new(9, 0, 3, vec![w(&[3, 3, 3, 2, 2, 2, 2, 1, 0]), mu.clone(), mu]).unwrap()
    }

    #[test]
    fn rex_reconstruction() {
        let f = rex_face();
        let levi = LeviBundle {
            sub: LeviSide { rank: 3, deg_n: 0, level: 1, weights: vec![vec![1, 1, 0]; 3] },
            quot: LeviSide::trivial(6, 0, 3),
        };
        let got = induce(&levi, &f).unwrap().to_line_bundle().unwrap();
        assert_eq!(got, rex_target());
        let dec = face_decompose(&got, &f).unwrap();
        assert!(dec.coefficients.iter().all(Zero::is_zero));
        assert_eq!(dec.f2_part, rex_target());
    }

    #[test]
    fn basic_rays_fail_one_equality() {
        let f = rex_face();
        for (a, j, ray) in basic_rays(&f).unwrap() {
            assert!(!pic_prime_test(&ray, &f));
            let dec = face_decompose(&ray, &f).unwrap();
            for ((b, k, _), c) in dec.basic_rays.iter().zip(&dec.coefficients) {
                assert_eq!(*c, Rational::from_integer(i64::from((a, j) == (*b, *k))));
            }
            assert!(RationalBundle::from_bundle(&dec.f2_part).is_zero());
        }
        assert!(pic_prime_test(&LineBundleData::new(9, 0, 0, vec![Weight::zero(9); 3]).unwrap(), &f));
    }

    #[test]
    fn level_zero_lands_in_pic_prime() {
        let f = rex_face();
        let levi = LeviBundle {
            sub: LeviSide { rank: 3, deg_n: 0, level: 0, weights: vec![vec![2, 1, 0], vec![1, 0, 0], vec![0, 0, 0]] },
            quot: LeviSide { rank: 6, deg_n: 0, level: 0, weights: vec![vec![1, 1, 0, 0, 0, 0]; 3] },
        };
        let ind = induce_level_zero(&levi, &f).unwrap();
        let l = ind.scaled(Rational::from_integer(3)).to_line_bundle().unwrap();
        assert!(pic_prime_test(&l, &f));
        assert_eq!(f.face_defect(&l), 0);
        let zero = LeviBundle { sub: LeviSide::trivial(3, 0, 3), quot: LeviSide::trivial(6, 0, 3) };
        assert!(induce_level_zero(&zero, &f).unwrap().is_zero());
    }
}

