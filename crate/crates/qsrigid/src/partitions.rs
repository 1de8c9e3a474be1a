//! Integer partitions, box-bounded diagrams and the subset/partition dictionary
//! for Schubert classes.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A weakly decreasing sequence of positive integers (trailing zeros dropped).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("not weakly decreasing: {parts:?}")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from parts already known to be weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The i-th part (0-based), zero beyond the length.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The parts padded with zeros to exactly `rows` entries.
    pub fn padded(&self, rows: usize) -> Vec<usize> {
        (0..rows).map(|i| self.get(i)).collect()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.get(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.get(0) <= cols
    }
}

/// A partition together with a declared r × c bounding box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxPartition {
    pub inner: Partition,
    pub rows: usize,
    pub cols: usize,
}

impl BoxPartition {
    pub fn new(inner: Partition, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 {
            return Err(Error::Invalid("box needs at least one row".into()));
        }
        if !inner.fits(rows, cols) {
            return Err(Error::BoxMismatch(format!("{:?} does not fit {rows}x{cols}", inner.parts())));
        }
        Ok(BoxPartition { inner, rows, cols })
    }

    pub fn from_parts(parts: Vec<usize>, rows: usize, cols: usize) -> Result<Self> {
        BoxPartition::new(Partition::new(parts)?, rows, cols)
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }
}

pub fn transpose_in_box(p: &BoxPartition) -> BoxPartition {
    BoxPartition { inner: p.inner.transpose(), rows: p.cols.max(1), cols: p.rows }
}

/// The complement (c − p_{r+1−a})_a of a diagram inside its box.
pub fn complement_in_box(p: &BoxPartition) -> BoxPartition {
    let padded = p.inner.padded(p.rows);
    let parts = (0..p.rows).map(|a| p.cols - padded[p.rows - 1 - a]).collect();
    BoxPartition { inner: Partition::from_sorted(parts), rows: p.rows, cols: p.cols }
}

/// A subset I = {i_1 < … < i_r} of [n] labelling a Schubert class of Gr(r, n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIndex")]
pub struct SchubertIndex {
    pub n: usize,
    pub elems: Vec<usize>,
}

#[derive(Deserialize)]
struct RawIndex {
    n: usize,
    elems: Vec<usize>,
}

impl TryFrom<RawIndex> for SchubertIndex {
    type Error = Error;
    fn try_from(raw: RawIndex) -> Result<Self> {
        SchubertIndex::new(raw.n, raw.elems)
    }
}

impl SchubertIndex {
    pub fn new(n: usize, elems: Vec<usize>) -> Result<Self> {
        if elems.is_empty() || elems.len() > n {
            return Err(Error::Invalid(format!("index {elems:?} has bad size for n={n}")));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) || elems[0] < 1 || *elems.last().unwrap() > n {
            return Err(Error::Invalid(format!("index {elems:?} not strictly increasing in [1,{n}]")));
        }
        Ok(SchubertIndex { n, elems })
    }

    /// Builds an index from arbitrary-order distinct elements.
    pub fn from_unsorted(n: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        SchubertIndex::new(n, elems)
    }

    pub fn r(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elems.binary_search(&a).is_ok()
    }

    /// Codimension Σ (n − r + a − i_a) of the Schubert class.
    pub fn codim(&self) -> usize {
        let (n, r) = (self.n, self.r());
        self.elems.iter().enumerate().map(|(a, &i)| n - r + a + 1 - i).sum()
    }

    /// Replaces element `old` by `new` (which must be absent).
    pub fn swap(&self, old: usize, new: usize) -> Result<Self> {
        if !self.contains(old) || self.contains(new) {
            return Err(Error::Invalid(format!("cannot swap {old}->{new} in {:?}", self.elems)));
        }
        let elems = self.elems.iter().map(|&x| if x == old { new } else { x }).collect();
        SchubertIndex::from_unsorted(self.n, elems)
    }

    /// The complement [n] − I in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|&x| !self.contains(x)).collect()
    }
}

/// λ_a = n − r + a − i_a, a diagram in the r × (n−r) box.
pub fn index_to_partition(idx: &SchubertIndex) -> BoxPartition {
    let (n, r) = (idx.n, idx.r());
    let parts = idx.elems.iter().enumerate().map(|(a, &i)| n - r + a + 1 - i).collect();
    BoxPartition { inner: Partition::from_sorted(parts), rows: r, cols: n - r }
}

/// Inverse of [`index_to_partition`]: i_a = n − r + a − λ_a with n = rows + cols.
pub fn partition_to_index(p: &BoxPartition) -> SchubertIndex {
    let (r, n) = (p.rows, p.rows + p.cols);
    let elems = (0..r).map(|a| n - r + a + 1 - p.inner.get(a)).collect();
    SchubertIndex { n, elems }
}

/// All diagrams in the rows × cols box, in decreasing lexicographic order.
pub fn box_partitions(rows: usize, cols: usize) -> Vec<Partition> {
    fn rec(rows: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if prefix.len() == rows {
            out.push(Partition::from_sorted(prefix.clone()));
            return;
        }
        for v in (0..=max).rev() {
            prefix.push(v);
            rec(rows, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// All r-subsets of [n] in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<SchubertIndex> {
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<SchubertIndex>) {
        if cur.len() == r {
            out.push(SchubertIndex { n, elems: cur.clone() });
            return;
        }
        for x in start..=n {
            if n - x + 1 < r - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, r, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && r <= n {
        rec(n, r, 1, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(parts: &[usize], r: usize, c: usize) -> BoxPartition {
        BoxPartition::from_parts(parts.to_vec(), r, c).unwrap()
    }

    #[test]
    fn transpose_examples() {
        let t = transpose_in_box(&bp(&[7, 4, 4, 1], 4, 8));
        assert_eq!(t, bp(&[4, 3, 3, 3, 1, 1, 1, 0], 8, 4));
        assert_eq!(transpose_in_box(&bp(&[], 3, 2)).inner, Partition::empty());
        assert_eq!(transpose_in_box(&bp(&[2, 1], 2, 2)), bp(&[2, 1], 2, 2));
    }

    #[test]
    fn index_examples() {
        let i = SchubertIndex::new(4, vec![2, 4]).unwrap();
        assert_eq!(index_to_partition(&i), bp(&[1, 0], 2, 2));
        let top = SchubertIndex::new(7, vec![5, 6, 7]).unwrap();
        assert!(index_to_partition(&top).inner.is_empty());
        let bottom = SchubertIndex::new(7, vec![1, 2, 3]).unwrap();
        assert_eq!(index_to_partition(&bottom), bp(&[4, 4, 4], 3, 4));
        assert_eq!(bottom.codim(), 12);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_in_box(&bp(&[1], 2, 2)), bp(&[2, 1], 2, 2));
        assert_eq!(complement_in_box(&bp(&[], 2, 3)), bp(&[3, 3], 2, 3));
        assert_eq!(complement_in_box(&bp(&[1, 1], 2, 2)), bp(&[1, 1], 2, 2));
    }

    #[test]
    fn counts() {
        assert_eq!(box_partitions(3, 4).len(), binomial(7, 3));
        assert_eq!(subsets(7, 3).len(), 35);
        for idx in subsets(6, 3) {
            assert_eq!(partition_to_index(&index_to_partition(&idx)), idx);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(SchubertIndex::new(4, vec![3, 2]).is_err());
        assert!(SchubertIndex::new(4, vec![0, 2]).is_err());
        assert!(BoxPartition::from_parts(vec![3], 2, 2).is_err());
    }

    #[test]
    fn json_shapes() {
        let i: SchubertIndex = serde_json::from_str("{\"n\":4,\"elems\":[2,4]}").unwrap();
        assert_eq!(i.elems, vec![2, 4]);
        assert!(serde_json::from_str::<SchubertIndex>("{\"n\":4,\"elems\":[4,2]}").is_err());
        let p: Partition = serde_json::from_str("[3,1,0]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1]");
    }
}
