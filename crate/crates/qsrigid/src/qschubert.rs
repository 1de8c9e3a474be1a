//! Classical and small quantum cohomology of Grassmannians: Littlewood-Richardson
//! coefficients, rim-hook reduction, and (generalized) Gromov-Witten numbers.

use crate::error::{Error, Result};
use crate::partitions::{
    box_partitions, complement_in_box, index_to_partition, BoxPartition, Partition, SchubertIndex,
};
use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The ring QH*(Gr(r, n)) with basis the diagrams in the r × (n−r) box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrassmannianRing {
    pub r: usize,
    pub n: usize,
}

impl GrassmannianRing {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::Invalid(format!("need 0 < r < n, got r={r}, n={n}")));
        }
        Ok(GrassmannianRing { r, n })
    }

    pub fn k(&self) -> usize {
        self.n - self.r
    }

    pub fn basis(&self) -> Vec<Partition> {
        box_partitions(self.r, self.k())
    }

    pub fn contains(&self, p: &Partition) -> bool {
        p.fits(self.r, self.k())
    }

    fn boxed(&self, p: Partition) -> BoxPartition {
        BoxPartition { inner: p, rows: self.r, cols: self.k() }
    }

    /// The Poincaré dual diagram.
    pub fn dual(&self, p: &Partition) -> Partition {
        complement_in_box(&self.boxed(p.clone())).inner
    }
}

/// A class Σ c · q^d σ_λ with positive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QClass {
    pub ring: GrassmannianRing,
    pub terms: BTreeMap<(Partition, usize), u64>,
}

impl QClass {
    pub fn zero(ring: GrassmannianRing) -> Self {
        QClass { ring, terms: BTreeMap::new() }
    }

    pub fn unit(ring: GrassmannianRing) -> Self {
        QClass::schubert(ring, Partition::empty()).expect("empty partition fits")
    }

    pub fn schubert(ring: GrassmannianRing, p: Partition) -> Result<Self> {
        if !ring.contains(&p) {
            return Err(Error::BoxMismatch(format!("{:?} not in Gr({},{})", p.parts(), ring.r, ring.n)));
        }
        let mut terms = BTreeMap::new();
        terms.insert((p, 0), 1);
        Ok(QClass { ring, terms })
    }

    pub fn coeff(&self, p: &Partition, d: usize) -> u64 {
        self.terms.get(&(p.clone(), d)).copied().unwrap_or(0)
    }
}

/// Skew LR tableaux of shape ν/λ and content μ with ν limited to `max_rows`
/// rows (columns unbounded). Returns ν with its multiplicity.
pub fn lr_expand(lam: &Partition, mu: &Partition, max_rows: usize) -> Vec<(Partition, u64)> {
    if lam.len() > max_rows || mu.len() > max_rows {
        return Vec::new();
    }
    let mut st = LrState {
        lam: lam.padded(max_rows),
        mu: mu.parts().to_vec(),
        rows: max_rows,
        nu: Vec::with_capacity(max_rows),
        used: vec![0; mu.len()],
        out: BTreeMap::new(),
    };
    st.row(0, &[]);
    st.out.into_iter().collect()
}

struct LrState {
    lam: Vec<usize>,
    mu: Vec<usize>,
    rows: usize,
    nu: Vec<usize>,
    used: Vec<usize>,
    out: BTreeMap<Partition, u64>,
}

impl LrState {
    fn row(&mut self, i: usize, prev: &[usize]) {
        if i == self.rows {
            if self.used == self.mu {
                *self.out.entry(Partition::from_sorted(self.nu.clone())).or_insert(0) += 1;
            }
            return;
        }
        let labels = (i + 1).min(self.mu.len());
        let mut counts = vec![0; labels];
        self.counts(i, 0, labels, &mut counts, prev);
    }

    fn counts(&mut self, i: usize, j: usize, labels: usize, counts: &mut Vec<usize>, prev: &[usize]) {
        if j == labels {
            let row: Vec<usize> = (0..labels).flat_map(|t| std::iter::repeat(t).take(counts[t])).collect();
            let len = self.lam[i] + row.len();
            if i > 0 && len > self.nu[i - 1] {
                return;
            }
            if i > 0 {
                let (lo, hi) = (self.lam[i - 1], self.nu[i - 1]);
                for (c, &lab) in row.iter().enumerate() {
                    let col = self.lam[i] + c;
                    if col >= lo && col < hi && lab <= prev[col - lo] {
                        return;
                    }
                }
            }
            for t in 0..labels {
                self.used[t] += counts[t];
            }
            self.nu.push(len);
            self.row(i + 1, &row);
            self.nu.pop();
            for t in 0..labels {
                self.used[t] -= counts[t];
            }
            return;
        }
        let mut hi = self.mu[j] - self.used[j];
        if j >= 1 {
            hi = hi.min(self.used[j - 1] - self.used[j]);
        }
        for c in 0..=hi {
            counts[j] = c;
            self.counts(i, j + 1, labels, counts, prev);
        }
        counts[j] = 0;
    }
}

/// Multiplicity of σ_ν in σ_λ · σ_μ in H*(Gr(r, n)).
pub fn lr_coefficient(lam: &BoxPartition, mu: &BoxPartition, nu: &BoxPartition) -> Result<u64> {
    let shape = (lam.rows, lam.cols);
    if (mu.rows, mu.cols) != shape || (nu.rows, nu.cols) != shape {
        return Err(Error::BoxMismatch("all three diagrams must share one box".into()));
    }
    if lam.size() + mu.size() != nu.size() {
        return Ok(0);
    }
    Ok(lr_expand(&lam.inner, &mu.inner, lam.rows)
        .into_iter()
        .find(|(p, _)| *p == nu.inner)
        .map_or(0, |(_, c)| c))
}

/// Removes n-rim hooks from ν (at most r rows). Returns the core, the number of
/// hooks removed and the accumulated sign, or None when the term vanishes.
pub fn rim_hook_reduce(nu: &Partition, r: usize, n: usize) -> Option<(Partition, usize, i64)> {
    let mut beta: Vec<i64> = (0..r).map(|i| (nu.get(i) + r - 1 - i) as i64).collect();
    let (n, r) = (n as i64, r as i64);
    let mut sign = 1;
    let mut hooks = 0;
    loop {
        let (pos, &b) = beta.iter().enumerate().max_by_key(|(_, &b)| b).unwrap();
        if b < n {
            break;
        }
        let t = b - n;
        if beta.contains(&t) {
            return None;
        }
        let jumped = beta.iter().filter(|&&x| t < x && x < b).count() as i64;
        if (r - 1 - jumped) % 2 == 1 {
            sign = -sign;
        }
        beta[pos] = t;
        hooks += 1;
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts = (0..r as usize).map(|i| (beta[i] - (r - 1 - i as i64)) as usize).collect();
    Some((Partition::from_sorted(parts), hooks, sign))
}

type ProductKey = (usize, usize, Partition, Partition);
static PRODUCTS: Lazy<DashMap<ProductKey, Arc<Vec<(Partition, usize, u64)>>>> = Lazy::new(DashMap::new);

/// σ_λ ⋆ σ_μ for basis elements, memoized per ring.
pub fn basis_product(ring: GrassmannianRing, lam: &Partition, mu: &Partition) -> Arc<Vec<(Partition, usize, u64)>> {
    let (a, b) = if lam <= mu { (lam, mu) } else { (mu, lam) };
    let key = (ring.r, ring.n, a.clone(), b.clone());
    if let Some(v) = PRODUCTS.get(&key) {
        return v.clone();
    }
    let mut acc: BTreeMap<(Partition, usize), i64> = BTreeMap::new();
    for (nu, c) in lr_expand(a, b, ring.r) {
        if let Some((core, d, sign)) = rim_hook_reduce(&nu, ring.r, ring.n) {
            *acc.entry((core, d)).or_insert(0) += sign * c as i64;
        }
    }
    let terms: Vec<_> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((p, d), c)| {
            assert!(c > 0, "negative quantum structure constant {c} for {:?}*{:?}", a, b);
            (p, d, c as u64)
        })
        .collect();
    let v = Arc::new(terms);
    PRODUCTS.insert(key, v.clone());
    v
}

pub fn quantum_product(a: &QClass, b: &QClass) -> Result<QClass> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.r, a.ring.n, b.ring.r, b.ring.n));
    }
    let mut out = QClass::zero(a.ring);
    for ((p, dp), cp) in &a.terms {
        for ((q, dq), cq) in &b.terms {
            for (nu, e, c) in basis_product(a.ring, p, q).iter() {
                *out.terms.entry((nu.clone(), dp + dq + e)).or_insert(0) += cp * cq * c;
            }
        }
    }
    Ok(out)
}

/// An s-point query ⟨σ_{I^1}, …, σ_{I^s}⟩_{d,D} on Gr(r, n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GwQuery {
    pub r: usize,
    pub n: usize,
    pub d: i64,
    #[serde(rename = "D", default)]
    pub deg_shift: i64,
    pub indices: Vec<SchubertIndex>,
}

impl GwQuery {
    pub fn new(r: usize, n: usize, d: i64, deg_shift: i64, indices: Vec<SchubertIndex>) -> Result<Self> {
        let q = GwQuery { r, n, d, deg_shift, indices };
        q.validate()?;
        Ok(q)
    }

    /// Convenience constructor from raw element lists.
    pub fn from_sets<S: AsRef<[usize]>>(r: usize, n: usize, d: i64, deg_shift: i64, sets: &[S]) -> Result<Self> {
        let indices =
            sets.iter().map(|s| SchubertIndex::from_unsorted(n, s.as_ref().to_vec())).collect::<Result<_>>()?;
        GwQuery::new(r, n, d, deg_shift, indices)
    }

    pub fn validate(&self) -> Result<()> {
        GrassmannianRing::new(self.r, self.n)?;
        for idx in &self.indices {
            if idx.n != self.n || idx.r() != self.r {
                return Err(Error::Invalid(format!("index {:?} not an {}-subset of [{}]", idx.elems, self.r, self.n)));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> GrassmannianRing {
        GrassmannianRing { r: self.r, n: self.n }
    }

    /// Σ|σ_{I^j}| − (r(n−r) + dn − Dr); zero when the count is finite and expected.
    pub fn codim_excess(&self) -> i64 {
        let total: i64 = self.indices.iter().map(|i| i.codim() as i64).sum();
        let (r, n) = (self.r as i64, self.n as i64);
        total - (r * (n - r) + self.d * n - self.deg_shift * r)
    }
}

/// ⟨σ_{I^1}, …, σ_{I^s}⟩_d for D = 0, via iterated quantum products.
pub fn gw_invariant(q: &GwQuery) -> Result<u64> {
    if q.deg_shift != 0 {
        return Err(Error::Precondition("gw_invariant needs D = 0; use gw_generalized".into()));
    }
    if q.indices.len() < 2 {
        return Err(Error::Invalid("need at least two points".into()));
    }
    q.validate()?;
    if q.d < 0 || q.codim_excess() != 0 {
        return Ok(0);
    }
    let ring = q.ring();
    let d = q.d as usize;
    let lams: Vec<Partition> = q.indices.iter().map(|i| index_to_partition(i).inner).collect();
    let (last, rest) = lams.split_last().unwrap();
    let mut cur: BTreeMap<(Partition, usize), u64> = BTreeMap::new();
    cur.insert((rest[0].clone(), 0), 1);
    for lam in &rest[1..] {
        let mut next = BTreeMap::new();
        for ((p, e), c) in &cur {
            for (nu, f, c2) in basis_product(ring, p, lam).iter() {
                if e + f <= d {
                    *next.entry((nu.clone(), e + f)).or_insert(0) += c * c2;
                }
            }
        }
        cur = next;
    }
    Ok(cur.get(&(ring.dual(last), d)).copied().unwrap_or(0))
}

/// One shift at a point: K = I − 1 when 1 ∉ I, otherwise 1 wraps to n and d drops.
/// Returns the new index and the change in d.
pub fn shift_index(idx: &SchubertIndex) -> (SchubertIndex, i64) {
    if !idx.contains(1) {
        let elems = idx.elems.iter().map(|x| x - 1).collect();
        (SchubertIndex { n: idx.n, elems }, 0)
    } else {
        let mut elems: Vec<usize> = idx.elems[1..].iter().map(|x| x - 1).collect();
        elems.push(idx.n);
        (SchubertIndex { n: idx.n, elems }, -1)
    }
}

/// Inverse of [`shift_index`].
pub fn unshift_index(idx: &SchubertIndex) -> (SchubertIndex, i64) {
    if !idx.contains(idx.n) {
        let elems = idx.elems.iter().map(|x| x + 1).collect();
        (SchubertIndex { n: idx.n, elems }, 0)
    } else {
        let r = idx.r();
        let mut elems = vec![1];
        elems.extend(idx.elems[..r - 1].iter().map(|x| x + 1));
        (SchubertIndex { n: idx.n, elems }, 1)
    }
}

/// Reduces a query to D = 0 by shifts at the first point. Each shift lowers D by
/// one; n shifts at one point lower (d, D) by (r, n) and fix the indices.
pub fn reduce_to_d0(q: &GwQuery) -> GwQuery {
    let (n, r) = (q.n as i64, q.r as i64);
    let mut out = q.clone();
    let folds = q.deg_shift.div_euclid(n);
    out.d -= folds * r;
    out.deg_shift -= folds * n;
    while out.deg_shift > 0 {
        let (k, dd) = shift_index(&out.indices[0]);
        out.indices[0] = k;
        out.d += dd;
        out.deg_shift -= 1;
    }
    out
}

/// ⟨σ_{I^1}, …, σ_{I^s}⟩_{d,D}.
pub fn gw_generalized(q: &GwQuery) -> Result<u64> {
    q.validate()?;
    if q.indices.is_empty() {
        return Err(Error::Invalid("need at least one point".into()));
    }
    let reduced = reduce_to_d0(q);
    if reduced.d < 0 {
        return Ok(0);
    }
    if reduced.indices.len() == 1 {
        return Ok(u64::from(reduced.d == 0 && reduced.codim_excess() == 0));
    }
    gw_invariant(&reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pieri_and_lr() {
        let b = |v: &[usize], r, c| BoxPartition::from_parts(v.to_vec(), r, c).unwrap();
        assert_eq!(lr_coefficient(&b(&[1], 2, 2), &b(&[1], 2, 2), &b(&[1, 1], 2, 2)).unwrap(), 1);
        assert_eq!(lr_coefficient(&b(&[1], 2, 2), &b(&[1], 2, 2), &b(&[2], 2, 2)).unwrap(), 1);
        assert_eq!(lr_coefficient(&b(&[2, 1], 3, 3), &b(&[2, 1], 3, 3), &b(&[3, 2, 1], 3, 3)).unwrap(), 2);
        assert!(lr_coefficient(&b(&[1], 2, 2), &b(&[1], 2, 3), &b(&[2], 2, 2)).is_err());
    }

    #[test]
    fn quantum_examples() {
        let ring = GrassmannianRing::new(2, 4).unwrap();
        let boxc = QClass::schubert(ring, p(&[2, 2])).unwrap();
        let sq = quantum_product(&boxc, &boxc).unwrap();
        assert_eq!(sq.terms.len(), 1);
        assert_eq!(sq.coeff(&Partition::empty(), 2), 1);
        let one = QClass::schubert(ring, p(&[1])).unwrap();
        let prod = quantum_product(&one, &boxc).unwrap();
        assert_eq!(prod.terms.len(), 1);
        assert_eq!(prod.coeff(&p(&[1]), 1), 1);
        assert_eq!(quantum_product(&QClass::unit(ring), &prod).unwrap(), prod);
    }

    #[test]
    fn gw_examples() {
        let q = GwQuery::from_sets(2, 4, 0, 0, &[&[2, 4]; 4]).unwrap();
        assert_eq!(gw_invariant(&q).unwrap(), 2);
        let q = GwQuery::from_sets(2, 4, 1, 0, &[&[1, 4], &[1, 3], &[1, 3]]).unwrap();
        assert_eq!(gw_invariant(&q).unwrap(), 1);
        let q = GwQuery::from_sets(4, 8, 2, 0, &[&[2, 3, 4, 7], &[1, 3, 4, 7], &[1, 3, 4, 7]]).unwrap();
        assert_eq!(gw_invariant(&q).unwrap(), 1);
        let q = GwQuery::from_sets(2, 4, 1, 0, &[&[2, 4]; 4]).unwrap();
        assert_eq!(gw_invariant(&q).unwrap(), 0);
        let q = GwQuery::from_sets(2, 4, 2, 4, &[&[2, 4]; 4]).unwrap();
        assert_eq!(gw_generalized(&q).unwrap(), 2);
    }

    #[test]
    fn shifts_invert() {
        for idx in crate::partitions::subsets(6, 3) {
            let (k, dd) = shift_index(&idx);
            let (back, ee) = unshift_index(&k);
            assert_eq!(back, idx);
            assert_eq!(dd + ee, 0);
        }
    }
}
