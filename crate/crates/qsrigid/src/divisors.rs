//! Codimension-one degeneracy cycles, their divisor classes, the basic rays
//! D(a, j) attached to faces, and the F-line-bundle scan.

use crate::alcove::{normalize_indivisible, shift_to_degree_zero, LineBundleData, Weight};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::partitions::{subsets, SchubertIndex};
use crate::qschubert::{gw_generalized, GwQuery};
use crate::strangedual::{from_bundle, rigidity_numerics, ConjClassTuple};
use serde::{Deserialize, Serialize};

/// The cycle C(d, r, N, n, J⃗) with D = −deg N.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleData {
    pub d: i64,
    pub r: usize,
    pub n: usize,
    #[serde(rename = "D", default)]
    pub deg_shift: i64,
    pub indices: Vec<SchubertIndex>,
}

impl CycleData {
    pub fn new(d: i64, r: usize, n: usize, deg_shift: i64, indices: Vec<SchubertIndex>) -> Result<Self> {
        GwQuery::new(r, n, d, deg_shift, indices.clone())?;
        Ok(CycleData { d, r, n, deg_shift, indices })
    }

    pub fn from_sets<S: AsRef<[usize]>>(d: i64, r: usize, n: usize, deg_shift: i64, sets: &[S]) -> Result<Self> {
        let q = GwQuery::from_sets(r, n, d, deg_shift, sets)?;
        Ok(CycleData { d, r, n, deg_shift, indices: q.indices })
    }

    pub fn s(&self) -> usize {
        self.indices.len()
    }

    /// Σ|σ_{J^i}| − (dn − Dr + r(n−r)).
    pub fn codim(&self) -> i64 {
        self.query(self.d, self.indices.clone()).codim_excess()
    }

    fn query(&self, d: i64, indices: Vec<SchubertIndex>) -> GwQuery {
        GwQuery { r: self.r, n: self.n, d, deg_shift: self.deg_shift, indices }
    }

    fn gw_with(&self, d: i64, point: usize, idx: SchubertIndex) -> Result<u64> {
        let mut indices = self.indices.clone();
        indices[point] = idx;
        gw_generalized(&self.query(d, indices))
    }
}

/// A face datum (d, r, n, D, I⃗) with ⟨σ_{I^1}, …, σ_{I^s}⟩_{d,D} = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceData {
    pub d: i64,
    pub r: usize,
    pub n: usize,
    #[serde(rename = "D", default)]
    pub deg_shift: i64,
    pub indices: Vec<SchubertIndex>,
}

impl FaceData {
    pub fn new(d: i64, r: usize, n: usize, deg_shift: i64, indices: Vec<SchubertIndex>) -> Result<Self> {
        let f = FaceData { d, r, n, deg_shift, indices };
        f.validate()?;
        Ok(f)
    }

    pub fn from_sets<S: AsRef<[usize]>>(d: i64, r: usize, n: usize, deg_shift: i64, sets: &[S]) -> Result<Self> {
        let q = GwQuery::from_sets(r, n, d, deg_shift, sets)?;
        FaceData::new(d, r, n, deg_shift, q.indices)
    }

    pub fn validate(&self) -> Result<()> {
        let gw = gw_generalized(&self.query())?;
        if gw != 1 {
            return Err(Error::Precondition(format!("face needs GW number 1, got {gw}")));
        }
        Ok(())
    }

    pub fn query(&self) -> GwQuery {
        GwQuery { r: self.r, n: self.n, d: self.d, deg_shift: self.deg_shift, indices: self.indices.clone() }
    }

    pub fn s(&self) -> usize {
        self.indices.len()
    }

    /// n(Σ_j Σ_{k∈I^j} λ^j_k − dℓ) − r(Σ_j |λ^j| − Dℓ); zero exactly on the face.
    pub fn face_defect(&self, l: &LineBundleData) -> i64 {
        face_defect(self.r, self.n, self.d, self.deg_shift, &self.indices, l)
    }

    /// All admissible pairs (a, j): a > 1 with a ∈ I^j, a−1 ∉ I^j, or a = 1 with
    /// 1 ∈ I^j, n ∉ I^j. Points j are 1-based.
    pub fn admissible_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, idx) in self.indices.iter().enumerate() {
            if idx.contains(1) && !idx.contains(self.n) {
                out.push((1, j + 1));
            }
            for &a in &idx.elems {
                if a > 1 && !idx.contains(a - 1) {
                    out.push((a, j + 1));
                }
            }
        }
        out.sort_by_key(|&(a, j)| (j, a));
        out
    }
}

pub(crate) fn face_defect(
    r: usize,
    n: usize,
    d: i64,
    deg_shift: i64,
    indices: &[SchubertIndex],
    l: &LineBundleData,
) -> i64 {
    let inner: i64 = indices
        .iter()
        .zip(&l.weights)
        .map(|(idx, w)| idx.elems.iter().map(|&k| w.rows()[k - 1]).sum::<i64>())
        .sum();
    let total: i64 = l.weights.iter().map(Weight::size).sum();
    n as i64 * (inner - d * l.level) - r as i64 * (total - deg_shift * l.level)
}

/// O(E) for a codimension-one cycle, with the fundamental coefficients c_i^b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub level: i64,
    /// coeffs[i][b−1] = c_i^b for b = 1, …, n−1.
    pub coeffs: Vec<Vec<i64>>,
    pub bundle: LineBundleData,
}

/// The divisor class of a codimension-one cycle. The level is a GW number with
/// the extra index {1, n−r+1, …, n−1} at degree d+1; c_i^b swaps b ↦ b+1 in J^i.
/// The slack ℓ − Σ_b c_i^b is recomputed independently (swap n ↦ 1 at degree
/// d+1 when 1 ∉ J^i and n ∈ J^i, zero otherwise) and must agree.
pub fn divisor_class(c: &CycleData) -> Result<DivisorClass> {
    let codim = c.codim();
    if codim != 1 {
        return Err(Error::Codim(codim));
    }
    let (n, r) = (c.n, c.r);
    let mut extra_elems = vec![1];
    extra_elems.extend(n - r + 1..n);
    let extra = SchubertIndex::new(n, extra_elems)?;
    let mut with_extra = c.indices.clone();
    with_extra.push(extra);
    let level = gw_generalized(&GwQuery { r, n, d: c.d + 1, deg_shift: c.deg_shift, indices: with_extra })? as i64;

    let mut coeffs = Vec::with_capacity(c.s());
    for (i, idx) in c.indices.iter().enumerate() {
        let mut ci = vec![0i64; n - 1];
        for b in 1..n {
            if idx.contains(b) && !idx.contains(b + 1) {
                ci[b - 1] = c.gw_with(c.d, i, idx.swap(b, b + 1)?)? as i64;
            }
        }
        let slack = if !idx.contains(1) && idx.contains(n) {
            c.gw_with(c.d + 1, i, idx.swap(n, 1)?)? as i64
        } else {
            0
        };
        let sum: i64 = ci.iter().sum();
        if level - sum != slack {
            return Err(Error::disagree(&format!("slack at point {i} of {:?}", c), level - sum, slack));
        }
        if ci.windows(2).any(|w| w[0] != 0 && w[1] != 0) {
            return Err(Error::disagree("adjacent nonzero coefficients", &ci, "no adjacent pair"));
        }
        if ci[0] != 0 && level != sum {
            return Err(Error::disagree("c^1 ≠ 0 forces ℓ = Σ c^b", level, sum));
        }
        coeffs.push(ci);
    }
    let weights = coeffs.iter().map(|ci| Weight::from_fund(ci)).collect();
    let bundle = LineBundleData::new(n, -c.deg_shift, level, weights)?;
    if bundle.grade() != 0 {
        return Err(Error::disagree("grade of an effective divisor class", bundle.grade(), 0));
    }
    Ok(DivisorClass { level, coeffs, bundle })
}

/// The cycle for the pair (a, j): J^j = I^j − a + (a−1) with d′ = d when a > 1,
/// and J^j = I^j − 1 + n with d′ = d − 1 when a = 1. Points j are numbered from 1.
pub fn daj_cycle(f: &FaceData, a: usize, j: usize) -> Result<CycleData> {
    let idx = j.checked_sub(1).and_then(|p| f.indices.get(p)).ok_or(Error::Inadmissible { a, j })?;
    let n = f.n;
    let (new_idx, d) = if a > 1 && idx.contains(a) && !idx.contains(a - 1) {
        (idx.swap(a, a - 1)?, f.d)
    } else if a == 1 && idx.contains(1) && !idx.contains(n) {
        (idx.swap(1, n)?, f.d - 1)
    } else {
        return Err(Error::Inadmissible { a, j });
    };
    let mut indices = f.indices.clone();
    indices[j - 1] = new_idx;
    CycleData::new(d, f.r, n, f.deg_shift, indices)
}

/// The basic ray D(a, j) of a face: its cycle and divisor class. The class is
/// checked to lie on the face.
pub fn build_daj(f: &FaceData, a: usize, j: usize) -> Result<(CycleData, LineBundleData)> {
    let cycle = daj_cycle(f, a, j)?;
    let class = divisor_class(&cycle)?;
    let defect = f.face_defect(&class.bundle);
    if defect != 0 {
        return Err(Error::disagree("D(a,j) face equality", defect, 0));
    }
    Ok((cycle, class.bundle))
}

/// The strange dual of D(a, j): a rank-ℓ tuple of conjugacy classes satisfying
/// the rigidity equation.
pub fn rigid_from_face(f: &FaceData, a: usize, j: usize) -> Result<ConjClassTuple> {
    let (_, bundle) = build_daj(f, a, j)?;
    let tuple = from_bundle(&shift_to_degree_zero(&bundle)?)?;
    let (lhs, rhs, _) = rigidity_numerics(&tuple);
    if lhs != rhs {
        return Err(Error::disagree("rigidity equation", lhs, rhs));
    }
    Ok(tuple)
}

/// Degrees d admitting a codimension-one cycle on Gr(r, n) with s points and
/// D = 0: 0 ≤ Σ|σ_{J^i}| = dn + r(n−r) + 1 ≤ s·r(n−r). Negative d is allowed
/// (the subbundle then has positive degree).
pub fn degree_range(r: usize, n: usize, s: usize) -> std::ops::RangeInclusive<i64> {
    let (dim, n) = ((r * (n - r)) as i64, n as i64);
    let lo = -(dim + 1).div_euclid(n);
    let hi = ((s as i64 - 1) * dim - 1).div_euclid(n);
    lo..=hi
}

/// Tuples of indices (one per point) with prescribed total codimension.
/// With `sorted` only nondecreasing tuples are produced.
pub(crate) fn index_tuples(n: usize, r: usize, s: usize, total: usize, sorted: bool) -> Vec<Vec<SchubertIndex>> {
    let all = subsets(n, r);
    let codims: Vec<usize> = all.iter().map(SchubertIndex::codim).collect();
    let max = r * (n - r);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(
        all: &[SchubertIndex],
        codims: &[usize],
        s: usize,
        left: usize,
        start: usize,
        sorted: bool,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<SchubertIndex>>,
    ) {
        let remaining = s - cur.len();
        if remaining == 0 {
            if left == 0 {
                out.push(cur.iter().map(|&i| all[i].clone()).collect());
            }
            return;
        }
        if left > remaining * max {
            return;
        }
        for i in (if sorted { start } else { 0 })..all.len() {
            if codims[i] > left {
                continue;
            }
            cur.push(i);
            rec(all, codims, s, left - codims[i], i, sorted, max, cur, out);
            cur.pop();
        }
    }
    rec(&all, &codims, s, total, 0, sorted, max, &mut cur, &mut out);
    out
}

/// All codimension-one cycles C(d, r, O, n, J⃗) with 1 ≤ r < n, d in
/// [`degree_range`] and, if given, d ≤ d_max.
pub fn enumerate_codim1_cycles(n: usize, s: usize, d_max: Option<i64>) -> Vec<CycleData> {
    enumerate_cycles(n, s, d_max, false)
}

pub(crate) fn enumerate_cycles(n: usize, s: usize, d_max: Option<i64>, sorted: bool) -> Vec<CycleData> {
    let mut out = Vec::new();
    for r in 1..n {
        let range = degree_range(r, n, s);
        let hi = (*range.end()).min(d_max.unwrap_or(i64::MAX));
        for d in *range.start()..=hi {
            let total = (d * n as i64 + (r * (n - r)) as i64 + 1) as usize;
            for indices in index_tuples(n, r, s, total, sorted) {
                out.push(CycleData { d, r, n, deg_shift: 0, indices });
            }
        }
    }
    out
}

/// Strict inequality (ii): Σ_i Σ_{k∈J^i} λ^i_k > dℓ + Σ_i r|λ^i|/n (with D = 0).
pub fn passes_practical(c: &CycleData, l: &LineBundleData) -> bool {
    face_defect(c.r, c.n, c.d, c.deg_shift, &c.indices, l) > 0
}

/// The F-line bundle certified by a cycle on Par_{n,O,S}, if it certifies one.
pub fn practical_bundle(c: &CycleData) -> Result<Option<LineBundleData>> {
    if c.deg_shift != 0 {
        return Err(Error::Precondition("the F-line bundle scan uses D = 0".into()));
    }
    let class = divisor_class(c)?;
    let l = class.bundle;
    if l.level < 1 || !passes_practical(c, &l) {
        return Ok(None);
    }
    if normalize_indivisible(&l)? != l {
        return Ok(None);
    }
    Ok(Some(l))
}

/// Runs [`practical_bundle`] over all sorted cycles, bucketed by (r, d).
pub(crate) fn scan_practical(n: usize, s: usize, exec: Exec) -> Result<Vec<(CycleData, LineBundleData)>> {
    let mut buckets = Vec::new();
    for r in 1..n {
        for d in degree_range(r, n, s) {
            buckets.push((r, d));
        }
    }
    let results = par::map(exec, buckets, |(r, d)| -> Result<Vec<(CycleData, LineBundleData)>> {
        let total = (d * n as i64 + (r * (n - r)) as i64 + 1) as usize;
        let mut found = Vec::new();
        for indices in index_tuples(n, r, s, total, true) {
            let c = CycleData { d, r, n, deg_shift: 0, indices };
            if let Some(l) = practical_bundle(&c)? {
                found.push((c, l));
            }
        }
        Ok(found)
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(c: &[i64]) -> Weight {
        Weight::from_fund(c)
    }

    #[test]
    fn oldie_class() {
        let c = CycleData::from_sets(1, 2, 4, 0, &[[1, 3]; 3]).unwrap();
        assert_eq!(c.codim(), 1);
        let dc = divisor_class(&c).unwrap();
        assert_eq!(dc.level, 2);
        assert!(dc.bundle.weights.iter().all(|w| *w == fw(&[1, 0, 1])));
        assert!(practical_bundle(&c).unwrap().is_some());
    }

    #[test]
    fn wilson_class() {
        let c = CycleData::from_sets(0, 3, 9, 0, &[&[2, 6, 9][..], &[3, 6, 9], &[3, 6, 9]]).unwrap();
        let dc = divisor_class(&c).unwrap();
        assert_eq!(dc.level, 6);
        assert_eq!(dc.bundle.weights[0], fw(&[0, 3, 0, 0, 0, 2, 0, 0]));
        assert_eq!(dc.bundle.weights[1], fw(&[0, 0, 2, 0, 0, 2, 0, 0]));
        assert!(passes_practical(&c, &dc.bundle));
    }

    #[test]
    fn rank_one_classes_are_fundamental() {
        for c in enumerate_codim1_cycles(5, 3, None).into_iter().filter(|c| c.r == 1) {
            let dc = divisor_class(&c).unwrap();
            assert_eq!(dc.level, 1);
            for ci in &dc.coeffs {
                assert!(ci.iter().all(|&x| x == 0 || x == 1));
                assert!(ci.iter().sum::<i64>() <= 1);
            }
        }
    }

    #[test]
    fn thaddeus_ray() {
        let f = FaceData::from_sets(2, 4, 8, 0, &[[2, 3, 4, 7], [1, 3, 4, 7], [1, 3, 4, 7]]).unwrap();
        let (cycle, l) = build_daj(&f, 2, 1).unwrap();
        assert_eq!(cycle.indices[0].elems, vec![1, 3, 4, 7]);
        assert_eq!(l.level, 4);
        assert!(l.weights.iter().all(|w| *w == fw(&[1, 0, 0, 2, 0, 0, 1])));
        let t = rigid_from_face(&f, 2, 1).unwrap();
        assert_eq!(t.classes[0].parts(), &[7, 4, 4, 1]);
    }

    #[test]
    fn oldie_ray() {
        let f = FaceData::from_sets(1, 2, 4, 0, &[&[1, 4][..], &[1, 3], &[1, 3]]).unwrap();
        let (cycle, l) = build_daj(&f, 4, 1).unwrap();
        assert_eq!((cycle.d, cycle.indices[0].elems.clone()), (1, vec![1, 3]));
        assert_eq!(l.level, 2);
        assert!(matches!(build_daj(&f, 1, 1), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn negative_degree_gives_trivial_bundle() {
        let c = CycleData::from_sets(-1, 1, 2, 0, &[[2]; 3]).unwrap();
        let l = practical_bundle(&c).unwrap().unwrap();
        assert_eq!(l.level, 1);
        assert!(l.weights.iter().all(Weight::is_zero));
    }

    #[test]
    fn enumeration_small() {
        let cycles = enumerate_codim1_cycles(2, 3, None);
        assert!(!cycles.is_empty() && cycles.iter().all(|c| c.r == 1 && c.codim() == 1));
        let target = CycleData::from_sets(1, 2, 4, 0, &[[1, 3]; 3]).unwrap();
        assert!(enumerate_codim1_cycles(4, 3, None).contains(&target));
        assert!(enumerate_codim1_cycles(4, 3, Some(-1)).iter().all(|c| c.d == -1));
    }
}
