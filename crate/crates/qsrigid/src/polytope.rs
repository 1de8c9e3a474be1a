//! The multiplicative eigenvalue polytope P_n(s): facet inequalities, membership,
//! F-vertices with certificates, symmetry orbits and an exhaustive
//! double-description vertex oracle for small n.

use crate::alcove::{vertex_to_bundle_raw, AlcovePoint, LineBundleData};
use crate::divisors::{index_tuples, scan_practical, CycleData, FaceData};
use crate::error::{Error, Result};
use crate::fusion::h0;
use crate::par::{self, Exec};
use crate::qschubert::{gw_invariant, GwQuery};
use crate::Rational;
use dashmap::DashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// One inequality normal · a ≤ rhs on (Δ_n)^s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Facet {
    /// Σ_j Σ_{k∈I^j} a^j_k ≤ d for a face with GW number 1.
    Regular { face: FaceData },
    /// a^point_k ≥ a^point_{k+1} for k < n, and a^point_1 − a^point_n ≤ 1 for k = n.
    /// Points are numbered from 0.
    Wall { point: usize, k: usize },
}

impl Facet {
    pub fn is_regular(&self) -> bool {
        matches!(self, Facet::Regular { .. })
    }

    /// (normal over the s·n coordinates, rhs).
    pub fn inequality(&self, n: usize, s: usize) -> (Vec<i64>, i64) {
        let mut normal = vec![0i64; n * s];
        match self {
            Facet::Regular { face } => {
                for (j, idx) in face.indices.iter().enumerate() {
                    for &k in &idx.elems {
                        normal[j * n + k - 1] = 1;
                    }
                }
                (normal, face.d)
            }
            Facet::Wall { point, k } if *k < n => {
                normal[point * n + k - 1] = -1;
                normal[point * n + k] = 1;
                (normal, 0)
            }
            Facet::Wall { point, .. } => {
                normal[point * n] = 1;
                normal[point * n + n - 1] = -1;
                (normal, 1)
            }
        }
    }

    /// rhs − normal · a; nonnegative exactly when the inequality holds.
    pub fn slack(&self, points: &[AlcovePoint]) -> Rational {
        let n = points[0].n();
        let (normal, rhs) = self.inequality(n, points.len());
        let lhs: Rational = points
            .iter()
            .flat_map(|p| p.coords.iter())
            .zip(&normal)
            .map(|(x, &c)| x * Rational::from_integer(c))
            .sum();
        Rational::from_integer(rhs) - lhs
    }
}

/// Largest d with a GW number of expected dimension: r(n−r) + dn ≤ s·r(n−r).
pub fn facet_degree_bound(r: usize, n: usize, s: usize) -> i64 {
    ((s as i64 - 1) * (r * (n - r)) as i64).div_euclid(n as i64)
}

/// All distinct orderings of a tuple.
pub(crate) fn permutations(s: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; s], &mut out);
    out
}

fn permute<T: Clone>(items: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&i| items[i].clone()).collect()
}

static FACETS: Lazy<DashMap<(usize, usize), Arc<Vec<Facet>>>> = Lazy::new(DashMap::new);

fn regular_faces(n: usize, s: usize, exec: Exec) -> Result<Vec<FaceData>> {
    let mut buckets = Vec::new();
    for r in 1..n {
        for d in 0..=facet_degree_bound(r, n, s) {
            buckets.push((r, d));
        }
    }
    let perms = permutations(s);
    let found = par::map(exec, buckets, |(r, d)| -> Result<BTreeSet<FaceData>> {
        let total = r * (n - r) + d as usize * n;
        let mut out = BTreeSet::new();
        for indices in index_tuples(n, r, s, total, true) {
            let q = GwQuery { r, n, d, deg_shift: 0, indices };
            if gw_invariant(&q)? == 1 {
                for p in &perms {
                    out.insert(FaceData { d, r, n, deg_shift: 0, indices: permute(&q.indices, p) });
                }
            }
        }
        Ok(out)
    });
    let mut all = BTreeSet::new();
    for f in found {
        all.extend(f?);
    }
    Ok(all.into_iter().collect())
}

/// Regular facets (GW number 1, degree ≤ d_max if given) followed by the alcove walls.
pub fn facets(n: usize, s: usize, d_max: Option<i64>) -> Result<Arc<Vec<Facet>>> {
    if n < 2 || s < 2 {
        return Err(Error::Invalid("facets need n ≥ 2 and s ≥ 2".into()));
    }
    let all = match FACETS.get(&(n, s)) {
        Some(f) => f.clone(),
        None => {
            let mut out: Vec<Facet> =
                regular_faces(n, s, Exec::default())?.into_iter().map(|face| Facet::Regular { face }).collect();
            for point in 0..s {
                for k in 1..=n {
                    out.push(Facet::Wall { point, k });
                }
            }
            let out = Arc::new(out);
            FACETS.insert((n, s), out.clone());
            out
        }
    };
    Ok(match d_max {
        None => all,
        Some(m) => Arc::new(
            all.iter()
                .filter(|f| match f {
                    Facet::Regular { face } => face.d <= m,
                    Facet::Wall { .. } => true,
                })
                .cloned()
                .collect(),
        ),
    })
}

fn check_tuple(points: &[AlcovePoint]) -> Result<usize> {
    let n = points.first().ok_or_else(|| Error::Invalid("empty tuple".into()))?.n();
    if points.iter().any(|p| p.n() != n) {
        return Err(Error::Invalid("points of different rank".into()));
    }
    Ok(n)
}

/// Membership through the facet inequalities.
pub fn membership_facets(points: &[AlcovePoint]) -> Result<bool> {
    let n = check_tuple(points)?;
    if !points.iter().all(AlcovePoint::is_valid) {
        return Ok(false);
    }
    if points.len() < 2 {
        return Ok(points.iter().all(|p| p.coords.iter().all(Zero::is_zero)));
    }
    Ok(facets(n, points.len(), None)?.iter().all(|f| !f.slack(points).is_negative()))
}

/// Membership through effectiveness of the bundle obtained by clearing denominators.
pub fn membership_h0(points: &[AlcovePoint]) -> Result<bool> {
    check_tuple(points)?;
    if !points.iter().all(AlcovePoint::is_valid) {
        return Ok(false);
    }
    Ok(h0(&vertex_to_bundle_raw(points)?)? > 0)
}

/// Membership in P_n(s), computed both ways; a mismatch is an internal error.
pub fn membership(points: &[AlcovePoint]) -> Result<bool> {
    let a = membership_facets(points)?;
    let b = membership_h0(points)?;
    if a != b {
        return Err(Error::disagree("membership: facets vs h0", a, b));
    }
    Ok(a)
}

fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c];
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c] / pivot;
                for k in c..cols {
                    let v = rows[rank][k] * f;
                    rows[i][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Facets (regular and walls) tight at a tuple.
pub fn active_facets(points: &[AlcovePoint]) -> Result<Vec<Facet>> {
    let n = check_tuple(points)?;
    Ok(facets(n, points.len(), None)?.iter().filter(|f| f.slack(points).is_zero()).cloned().collect())
}

/// True iff the tuple lies in P_n(s) and the tight inequalities, together with
/// the s trace conditions, have full rank s·n.
pub fn certify_vertex(points: &[AlcovePoint]) -> Result<bool> {
    let n = check_tuple(points)?;
    let s = points.len();
    if !membership_facets(points)? {
        return Err(Error::Precondition("certify_vertex needs a point of the polytope".into()));
    }
    let mut rows: Vec<Vec<Rational>> = active_facets(points)?
        .iter()
        .map(|f| f.inequality(n, s).0.into_iter().map(Rational::from_integer).collect())
        .collect();
    for j in 0..s {
        let mut row = vec![Rational::zero(); n * s];
        row[j * n..(j + 1) * n].iter_mut().for_each(|x| *x = Rational::one());
        rows.push(row);
    }
    Ok(rational_rank(rows) == n * s)
}

/// An F-vertex with its F-line bundle, a witness cycle and its tight facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVertexCertificate {
    pub point: Vec<AlcovePoint>,
    pub bundle: LineBundleData,
    pub witness_cycle: CycleData,
    pub active_facets: Vec<Facet>,
}

static F_VERTICES: Lazy<DashMap<(usize, usize), Arc<Vec<FVertexCertificate>>>> = Lazy::new(DashMap::new);

/// All F-line bundles on Par_{n,O,S} with |S| = s, keyed by bundle, with witnesses.
pub fn f_line_bundles(n: usize, s: usize, exec: Exec) -> Result<BTreeMap<LineBundleData, CycleData>> {
    let perms = permutations(s);
    let mut out = BTreeMap::new();
    for (c, l) in scan_practical(n, s, exec)? {
        for p in &perms {
            let cycle = CycleData { indices: permute(&c.indices, p), ..c.clone() };
            let bundle = LineBundleData { weights: permute(&l.weights, p), ..l.clone() };
            out.entry(bundle).or_insert(cycle);
        }
    }
    Ok(out)
}

/// The F-vertices of P_n(s), sorted by bundle. Cached per (n, s).
pub fn f_vertices(n: usize, s: usize) -> Result<Arc<Vec<FVertexCertificate>>> {
    f_vertices_with(n, s, Exec::default())
}

pub fn f_vertices_with(n: usize, s: usize, exec: Exec) -> Result<Arc<Vec<FVertexCertificate>>> {
    if n < 2 || s < 2 {
        return Err(Error::Invalid("f_vertices needs n ≥ 2 and s ≥ 2".into()));
    }
    if let Some(v) = F_VERTICES.get(&(n, s)) {
        return Ok(v.clone());
    }
    let all_facets = facets(n, s, None)?;
    let bundles: Vec<_> = f_line_bundles(n, s, exec)?.into_iter().collect();
    let certs = par::map(exec, bundles, |(bundle, witness_cycle)| -> Result<FVertexCertificate> {
        let point = bundle.kappa_points()?;
        let active_facets = all_facets.iter().filter(|f| f.slack(&point).is_zero()).cloned().collect();
        Ok(FVertexCertificate { point, bundle, witness_cycle, active_facets })
    });
    let certs = Arc::new(certs.into_iter().collect::<Result<Vec<_>>>()?);
    F_VERTICES.insert((n, s), certs.clone());
    Ok(certs)
}

/// The orbit of a tuple under central twists ζ^{m_i} (Σ m_i ≡ 0 mod n) and
/// permutations of the points.
pub fn symmetry_orbit(points: &[AlcovePoint]) -> Result<BTreeSet<Vec<AlcovePoint>>> {
    let n = check_tuple(points)?;
    let s = points.len();
    let twists: Vec<Vec<AlcovePoint>> = (0..n).map(|m| points.iter().map(|p| p.twist(m as i64)).collect()).collect();
    let mut out = BTreeSet::new();
    let perms = permutations(s);
    let mut m = vec![0usize; s];
    loop {
        if m.iter().sum::<usize>() % n == 0 {
            let twisted: Vec<AlcovePoint> = (0..s).map(|j| twists[m[j]][j].clone()).collect();
            for p in &perms {
                out.insert(permute(&twisted, p));
            }
        }
        let Some(pos) = m.iter().position(|&x| x + 1 < n) else { break };
        m[pos] += 1;
        m[..pos].iter_mut().for_each(|x| *x = 0);
    }
    Ok(out)
}

/// Lexicographically least element of the orbit.
pub fn orbit_representative(points: &[AlcovePoint]) -> Result<Vec<AlcovePoint>> {
    Ok(symmetry_orbit(points)?.into_iter().next().expect("orbit contains the input"))
}

/// One τ_n(s) ⋊ S_s orbit of F-vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrbit {
    pub representative: FVertexCertificate,
    pub size: usize,
}

impl VertexOrbit {
    pub fn level(&self) -> i64 {
        self.representative.bundle.level
    }
}

/// The F-vertices grouped into orbits, each represented by its least point.
pub fn f_vertex_orbits(n: usize, s: usize) -> Result<Vec<VertexOrbit>> {
    let certs = f_vertices(n, s)?;
    let by_point: BTreeMap<&Vec<AlcovePoint>, &FVertexCertificate> = certs.iter().map(|c| (&c.point, c)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in certs.iter() {
        if seen.contains(&c.point) {
            continue;
        }
        let orbit = symmetry_orbit(&c.point)?;
        let rep = orbit.iter().next().unwrap();
        let rep_cert = by_point
            .get(rep)
            .ok_or_else(|| Error::disagree("F-vertex set closed under symmetry", rep, "missing"))?;
        for p in &orbit {
            if !by_point.contains_key(p) {
                return Err(Error::disagree("F-vertex set closed under symmetry", p, "missing"));
            }
            seen.insert(p.clone());
        }
        out.push(VertexOrbit { representative: (*rep_cert).clone(), size: orbit.len() });
    }
    out.sort_by(|a, b| a.representative.point.cmp(&b.representative.point));
    Ok(out)
}

/// Tuples whose points are all central: ζ^{m_i} with Σ m_i ≡ 0 mod n.
pub fn trivial_vertices(n: usize, s: usize) -> BTreeSet<Vec<AlcovePoint>> {
    let center = vec![AlcovePoint::center(n); s];
    symmetry_orbit(&center).expect("center is a valid tuple")
}

const DD_MAX_DIM: usize = 9;

fn to_big_rows(rows: &[(Vec<i64>, i64)], n: usize, s: usize) -> Vec<Vec<BigInt>> {
    // Coordinates x = (a^j_k)_{k<n}; a^j_n = −Σ_{k<n} a^j_k. Row h satisfies h·(y0, x) ≥ 0.
    rows.iter()
        .map(|(normal, rhs)| {
            let mut h = vec![BigInt::from(*rhs)];
            for j in 0..s {
                let last = normal[j * n + n - 1];
                for k in 0..n - 1 {
                    h.push(BigInt::from(-(normal[j * n + k] - last)));
                }
            }
            h
        })
        .collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize_ray(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|x| x.count_ones() as usize).sum()
    }
}

/// Extreme rays of the cone {z : h·z ≥ 0 for all rows h}, by double description.
fn dd_cone(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    // Greedy choice of dim independent rows for the initial simplicial cone.
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, h) in rows.iter().enumerate() {
        let mut v: Vec<Rational> = h.iter().map(|x| Rational::from_integer(x.to_i64().unwrap())).collect();
        for e in &echelon {
            let p = e.iter().position(|x| !x.is_zero()).unwrap();
            if !v[p].is_zero() {
                let f = v[p] / e[p];
                for k in 0..dim {
                    let t = e[k] * f;
                    v[k] -= t;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(Error::Invalid("inequality system is not full rank".into()));
    }
    // Columns of the inverse of the basis matrix are the initial rays.
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(r, &i)| {
            let mut row: Vec<Rational> = rows[i].iter().map(|x| Rational::from_integer(x.to_i64().unwrap())).collect();
            row.extend((0..dim).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..dim {
        let p = (c..dim).find(|&i| !aug[i][c].is_zero()).unwrap();
        aug.swap(c, p);
        let piv = aug[c][c];
        aug[c].iter_mut().for_each(|x| *x /= piv);
        for i in 0..dim {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c];
                for k in 0..2 * dim {
                    let t = aug[c][k] * f;
                    aug[i][k] -= t;
                }
            }
        }
    }
    let mut rays: Vec<Vec<BigInt>> = (0..dim)
        .map(|col| {
            let v: Vec<Rational> = (0..dim).map(|r| aug[r][dim + col]).collect();
            let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
            normalize_ray(v.iter().map(|x| BigInt::from((x * Rational::from_integer(den)).to_integer())).collect())
        })
        .collect();
    let order: Vec<usize> = basis.iter().copied().chain((0..rows.len()).filter(|i| !basis.contains(i))).collect();
    let total = rows.len();
    let mut zeros: Vec<Bits> = rays
        .iter()
        .map(|r| {
            let mut b = Bits::new(total);
            for &i in &basis {
                if dot(&rows[i], r).is_zero() {
                    b.set(i);
                }
            }
            b
        })
        .collect();
    for &i in &order[dim..] {
        let h = &rows[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(h, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for k in 0..rays.len() {
                if vals[k].is_zero() {
                    zeros[k].set(i);
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].and(&zeros[q]);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == q || !common.subset_of(&zeros[t]));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> =
                    rays[q].iter().zip(&rays[p]).map(|(xq, xp)| &vals[p] * xq - &vals[q] * xp).collect();
                let mut z = common;
                z.set(i);
                new_rays.push(normalize_ray(v));
                new_zeros.push(z);
            }
        }
        let keep: Vec<usize> = (0..rays.len()).filter(|&k| !vals[k].is_negative()).collect();
        let mut next_rays = Vec::with_capacity(keep.len() + new_rays.len());
        let mut next_zeros = Vec::with_capacity(keep.len() + new_rays.len());
        for k in keep {
            let mut z = zeros[k].clone();
            if vals[k].is_zero() {
                z.set(i);
            }
            next_rays.push(rays[k].clone());
            next_zeros.push(z);
        }
        next_rays.extend(new_rays);
        next_zeros.extend(new_zeros);
        rays = next_rays;
        zeros = next_zeros;
    }
    Ok(rays)
}

/// All vertices of the polytope cut out by `facets(n, s)` and the alcove walls,
/// by exact double description. Limited to s(n−1) ≤ 9.
pub fn dd_vertex_enumeration(n: usize, s: usize) -> Result<Vec<Vec<AlcovePoint>>> {
    if n < 2 || s < 2 || s * (n - 1) > DD_MAX_DIM {
        return Err(Error::SizeGuard(format!("double description limited to s(n−1) ≤ {DD_MAX_DIM}")));
    }
    let mut ineqs: Vec<(Vec<i64>, i64)> = Vec::new();
    let all = facets(n, s, None)?;
    // Walls first: they bound the polytope and keep intermediate cones small.
    for f in all.iter().filter(|f| !f.is_regular()).chain(all.iter().filter(|f| f.is_regular())) {
        ineqs.push(f.inequality(n, s));
    }
    let dim = s * (n - 1) + 1;
    let mut rows = vec![{
        let mut h = vec![BigInt::zero(); dim];
        h[0] = BigInt::one();
        h
    }];
    rows.extend(to_big_rows(&ineqs, n, s));
    let rays = dd_cone(&rows, dim)?;
    let mut out = BTreeSet::new();
    for ray in rays {
        if !ray[0].is_positive() {
            return Err(Error::disagree("bounded polytope", "ray at infinity", &ray));
        }
        let den = ray[0].to_i64().unwrap();
        let mut pts = Vec::with_capacity(s);
        for j in 0..s {
            let mut coords: Vec<Rational> =
                (0..n - 1).map(|k| Rational::new(ray[1 + j * (n - 1) + k].to_i64().unwrap(), den)).collect();
            let last = -coords.iter().sum::<Rational>();
            coords.push(last);
            pts.push(AlcovePoint::new(coords)?);
        }
        out.insert(pts);
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[(i64, i64)]) -> AlcovePoint {
        AlcovePoint::new(c.iter().map(|&(p, q)| Rational::new(p, q)).collect()).unwrap()
    }

    #[test]
    fn n2_polytope() {
        let half = pt(&[(1, 2), (-1, 2)]);
        let zero = AlcovePoint::center(2);
        let v = vec![half.clone(), half.clone(), zero.clone()];
        assert!(membership(&v).unwrap());
        assert!(certify_vertex(&v).unwrap());
        let dd = dd_vertex_enumeration(2, 3).unwrap();
        assert_eq!(dd.len(), 4);
        assert!(dd.contains(&v) && dd.contains(&vec![zero.clone(); 3]));
        assert!(!certify_vertex(&[pt(&[(1, 4), (-1, 4)]), zero.clone(), pt(&[(1, 4), (-1, 4)])]).unwrap());
    }

    #[test]
    fn center_and_outside() {
        let c = vec![AlcovePoint::center(4); 3];
        assert!(membership(&c).unwrap());
        let out = vec![pt(&[(1, 2), (0, 1), (0, 1), (-1, 2)]), AlcovePoint::center(4), AlcovePoint::center(4)];
        assert!(!membership(&out).unwrap());
        for f in facets(4, 3, None).unwrap().iter() {
            assert!(!f.slack(&c).is_negative());
        }
    }

    #[test]
    fn orbits_n4() {
        let a = pt(&[(1, 2), (0, 1), (0, 1), (-1, 2)]);
        let v = vec![a.clone(), a.clone(), a];
        assert!(certify_vertex(&v).unwrap());
        // ζ² fixes (1/2,0,0,−1/2), so the stabilizer has order 4.
        assert_eq!(symmetry_orbit(&v).unwrap().len(), 4);
        assert_eq!(trivial_vertices(4, 3).len(), 16);
        let orbits = f_vertex_orbits(4, 3).unwrap();
        let big: Vec<_> = orbits.iter().filter(|o| o.level() > 1).collect();
        assert_eq!(big.len(), 1);
        assert!(symmetry_orbit(&big[0].representative.point).unwrap().contains(&v));
    }
}
