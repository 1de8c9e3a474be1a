//! Conjugacy-class data of unitary local systems and their strange duals:
//! the correspondence with line bundles, v(A), rigidity numerics, the
//! F-line-bundle test, classification, Galois and property (P) checks.

use crate::alcove::{galois_bundle, normalize_indivisible, shift_to_degree_zero, AlcovePoint, LineBundleData, Weight};
use crate::divisors::{degree_range, divisor_class, face_defect, CycleData};
use crate::error::{Error, Result};
use crate::fusion::h0;
use crate::par::{self, Exec};
use crate::partitions::{subsets, Partition, SchubertIndex};
use crate::polytope::{f_vertex_orbits, f_vertices};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Semisimple classes Ā_1, …, Ā_s in GL(ℓ) with Ā_i^n = 1. Class i has the
/// eigenvalues exp(2πi μ^i_j / n), j = 1, …, ℓ, where μ^i fits an ℓ × (n−1) box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTuple")]
pub struct ConjClassTuple {
    pub rank: usize,
    pub n: usize,
    pub classes: Vec<Partition>,
}

#[derive(Deserialize)]
struct RawTuple {
    rank: usize,
    n: usize,
    classes: Vec<Partition>,
}

impl TryFrom<RawTuple> for ConjClassTuple {
    type Error = Error;
    fn try_from(raw: RawTuple) -> Result<Self> {
        ConjClassTuple::new(raw.rank, raw.n, raw.classes)
    }
}

impl ConjClassTuple {
    pub fn new(rank: usize, n: usize, classes: Vec<Partition>) -> Result<Self> {
        let t = ConjClassTuple { rank, n, classes };
        t.validate()?;
        Ok(t)
    }

    /// Builds the tuple from exponent lists; missing entries are eigenvalue 1.
    pub fn from_exponents<E: AsRef<[usize]>>(rank: usize, n: usize, exps: &[E]) -> Result<Self> {
        let classes = exps
            .iter()
            .map(|e| {
                let mut v = e.as_ref().to_vec();
                if v.len() > rank {
                    return Err(Error::Invalid(format!("class {v:?} has more than {rank} eigenvalues")));
                }
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(v)
            })
            .collect::<Result<_>>()?;
        ConjClassTuple::new(rank, n, classes)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 || self.n == 0 {
            return Err(Error::Invalid("need rank ≥ 1 and n ≥ 1".into()));
        }
        for mu in &self.classes {
            if !mu.fits(self.rank, self.n - 1) {
                return Err(Error::BoxMismatch(format!(
                    "{:?} does not fit {}x{}",
                    mu.parts(),
                    self.rank,
                    self.n - 1
                )));
            }
        }
        let total: usize = self.classes.iter().map(Partition::size).sum();
        if total % self.n != 0 {
            return Err(Error::Invalid(format!("determinant condition fails: n={} does not divide {total}", self.n)));
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.classes.len()
    }

    /// The ℓ exponents of class i, in decreasing order.
    pub fn exponents(&self, i: usize) -> Vec<usize> {
        self.classes[i].padded(self.rank)
    }

    /// m[e] = multiplicity of exp(2πi e/n) in class i, e = 0, …, n−1.
    pub fn multiplicities(&self, i: usize) -> Vec<usize> {
        let mut m = vec![0; self.n];
        for e in self.exponents(i) {
            m[e] += 1;
        }
        m
    }

    /// Multiplies class i by ζ^{t_i}; the determinant condition must survive.
    pub fn twist(&self, t: &[i64]) -> Result<Self> {
        if t.len() != self.s() {
            return Err(Error::Invalid("one twist per point".into()));
        }
        let n = self.n as i64;
        let exps: Vec<Vec<usize>> = (0..self.s())
            .map(|i| self.exponents(i).iter().map(|&e| (e as i64 + t[i]).rem_euclid(n) as usize).collect())
            .collect();
        ConjClassTuple::from_exponents(self.rank, self.n, &exps)
    }
}

/// B(λ⃗, ℓ) on Par_{n,O,S} with λ^i = (μ^i)ᵀ.
pub fn to_bundle(a: &ConjClassTuple) -> Result<LineBundleData> {
    a.validate()?;
    let weights = a
        .classes
        .iter()
        .map(|mu| Weight::from_rows(&mu.transpose().padded(a.n).iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    LineBundleData::new(a.n, 0, a.rank as i64, weights)
}

/// Inverse of [`to_bundle`]; bundles on other degrees are first shifted to deg N = 0.
pub fn from_bundle(l: &LineBundleData) -> Result<ConjClassTuple> {
    if l.level < 1 {
        return Err(Error::Precondition("strange dual needs ℓ ≥ 1".into()));
    }
    if l.grade() != 0 {
        return Err(Error::GradeNonzero(l.grade()));
    }
    let l0 = shift_to_degree_zero(l)?;
    let classes = l0
        .weights
        .iter()
        .map(|w| {
            if !w.fits_level(l0.level) {
                return Err(Error::LevelViolation { weight: w.rows().to_vec(), level: l0.level });
            }
            Partition::new(w.rows().iter().map(|&x| x as usize).collect()).map(|p| p.transpose())
        })
        .collect::<Result<_>>()?;
    ConjClassTuple::new(l0.level as usize, l0.n, classes)
}

/// v(A) = (κ(λ^i/ℓ))_i.
pub fn v_of_a(a: &ConjClassTuple) -> Result<Vec<AlcovePoint>> {
    to_bundle(a)?.kappa_points()
}

/// (Σ_i dim Z(Ā_i), (s−2)ℓ² + 2, irreducibility bound over all central twists).
/// The bound Σ rk(A_i − I) ≥ 2ℓ is only imposed for ℓ ≥ 2.
pub fn rigidity_numerics(a: &ConjClassTuple) -> (i64, i64, bool) {
    let l = a.rank as i64;
    let lhs: i64 = (0..a.s()).map(|i| a.multiplicities(i).iter().map(|&m| (m * m) as i64).sum::<i64>()).sum();
    let rhs = (a.s() as i64 - 2) * l * l + 2;
    (lhs, rhs, l < 2 || min_twisted_rank_sum(a) >= 2 * l)
}

/// min over twists t with Σ t_i ≡ 0 mod n of Σ_i (ℓ − mult_i(−t_i)).
fn min_twisted_rank_sum(a: &ConjClassTuple) -> i64 {
    let n = a.n;
    let l = a.rank as i64;
    // best[res] = least partial sum with Σ e_i ≡ res, e_i the removed eigenvalue exponent.
    let mut best = vec![i64::MAX; n];
    best[0] = 0;
    for i in 0..a.s() {
        let m = a.multiplicities(i);
        let mut next = vec![i64::MAX; n];
        for (res, &b) in best.iter().enumerate() {
            if b == i64::MAX {
                continue;
            }
            for (e, &me) in m.iter().enumerate() {
                let k = (res + e) % n;
                next[k] = next[k].min(b + l - me as i64);
            }
        }
        best = next;
    }
    best[0]
}

/// Property (P): no class has two eigenvalues with ratio ζ_n.
pub fn property_p(a: &ConjClassTuple) -> bool {
    (0..a.s()).all(|i| {
        let m = a.multiplicities(i);
        (0..a.n).all(|e| m[e] == 0 || m[(e + 1) % a.n] == 0 || a.n == 1)
    })
}

/// The strengthened property: no class has two eigenvalues whose ratio is a
/// primitive n-th root of unity.
pub fn property_p_strong(a: &ConjClassTuple) -> bool {
    (0..a.s()).all(|i| {
        let m = a.multiplicities(i);
        let present: Vec<usize> = (0..a.n).filter(|&e| m[e] > 0).collect();
        present.iter().all(|&e| present.iter().all(|&f| e == f || (f + a.n - e).gcd(&a.n) != 1))
    })
}

fn candidate_indices(l: &LineBundleData, i: usize, r: usize) -> Vec<SchubertIndex> {
    let n = l.n;
    let c = l.weights[i].fund();
    let slack = l.level - c.iter().sum::<i64>();
    subsets(n, r)
        .into_iter()
        .filter(|idx| {
            (1..n).all(|b| c[b - 1] == 0 || (idx.contains(b) && !idx.contains(b + 1)))
                && (slack == 0 || (idx.contains(n) && !idx.contains(1)))
        })
        .collect()
}

/// A codimension-one cycle E with O(E) = L satisfying the strict inequality
/// (ii), if one exists. L must be on deg N = 0.
pub fn find_witness(l: &LineBundleData) -> Result<Option<CycleData>> {
    let (n, s) = (l.n, l.s());
    for r in 1..n {
        let cands: Vec<Vec<SchubertIndex>> = (0..s).map(|i| candidate_indices(l, i, r)).collect();
        if cands.iter().any(Vec::is_empty) {
            continue;
        }
        for d in degree_range(r, n, s) {
            let total = d * n as i64 + (r * (n - r)) as i64 + 1;
            let mut found = None;
            let mut cur = Vec::with_capacity(s);
            search(l, &cands, r, d, total, &mut cur, &mut found)?;
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

fn search(
    l: &LineBundleData,
    cands: &[Vec<SchubertIndex>],
    r: usize,
    d: i64,
    left: i64,
    cur: &mut Vec<SchubertIndex>,
    found: &mut Option<CycleData>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    let i = cur.len();
    if i == cands.len() {
        if left != 0 || face_defect(r, l.n, d, 0, cur, l) <= 0 {
            return Ok(());
        }
        let c = CycleData { d, r, n: l.n, deg_shift: 0, indices: cur.clone() };
        if divisor_class(&c)?.bundle == *l {
            *found = Some(c);
        }
        return Ok(());
    }
    let max_rest = ((cands.len() - i - 1) * r * (l.n - r)) as i64;
    for idx in &cands[i] {
        let cd = idx.codim() as i64;
        if cd > left || left - cd > max_rest {
            continue;
        }
        cur.push(idx.clone());
        search(l, cands, r, d, left - cd, cur, found)?;
        cur.pop();
    }
    Ok(())
}

/// The F-line-bundle test: indivisible, grade zero, a rigid strange dual, and a
/// witness cycle for the practical criterion.
pub fn is_f_line_bundle(l: &LineBundleData) -> Result<bool> {
    Ok(f_line_bundle_witness(l)?.is_some())
}

pub fn f_line_bundle_witness(l: &LineBundleData) -> Result<Option<CycleData>> {
    if l.level < 1 || l.grade() != 0 {
        return Ok(None);
    }
    let l0 = shift_to_degree_zero(l)?;
    if !l0.in_alcove() || normalize_indivisible(&l0)? != l0 {
        return Ok(None);
    }
    let (lhs, rhs, _) = rigidity_numerics(&from_bundle(&l0)?);
    if lhs != rhs {
        return Ok(None);
    }
    find_witness(&l0)
}

/// Everything the classification establishes about a tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidReport {
    pub input: ConjClassTuple,
    pub exists_unitary: bool,
    pub irreducible_forced: Option<bool>,
    pub rigid_unitary: bool,
    pub finite_monodromy: bool,
    pub dual_bundle: LineBundleData,
    pub certificates: Vec<String>,
}

const SPLIT_GUARD: u128 = 2_000_000;

/// Whether the dual bundle is indecomposable in the semigroup of effective
/// grade-zero bundles: no L = L′ ⊗ L″ with both factors effective of positive level.
/// Returns None when the splitting scan exceeds the size guard.
pub fn irreducible_forced(l: &LineBundleData) -> Result<Option<bool>> {
    let fund: Vec<Vec<i64>> = l.weights.iter().map(Weight::fund).collect();
    let work: u128 = fund.iter().flatten().map(|&c| c as u128 + 1).product::<u128>() * (l.level as u128 / 2 + 1);
    if work > SPLIT_GUARD {
        return Ok(None);
    }
    for l1 in 1..=l.level / 2 {
        let mut choice: Vec<Vec<i64>> = fund.iter().map(|c| vec![0; c.len()]).collect();
        if split_search(l, &fund, l1, 0, 0, &mut choice)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn split_search(
    l: &LineBundleData,
    fund: &[Vec<i64>],
    l1: i64,
    i: usize,
    b: usize,
    choice: &mut Vec<Vec<i64>>,
) -> Result<bool> {
    if i == fund.len() {
        let first: Vec<Weight> = choice.iter().map(|c| Weight::from_fund(c)).collect();
        let second: Vec<Weight> = fund
            .iter()
            .zip(choice.iter())
            .map(|(c, c1)| Weight::from_fund(&c.iter().zip(c1).map(|(x, y)| x - y).collect::<Vec<_>>()))
            .collect();
        let a = LineBundleData::new(l.n, l.deg_n, l1, first)?;
        let bb = LineBundleData::new(l.n, l.deg_n, l.level - l1, second)?;
        if a.grade() != 0 || !a.in_alcove() || !bb.in_alcove() {
            return Ok(false);
        }
        return Ok(h0(&a)? > 0 && h0(&bb)? > 0);
    }
    if b == fund[i].len() {
        let used: i64 = choice[i].iter().sum();
        let rest: i64 = fund[i].iter().sum::<i64>() - used;
        if used > l1 || rest > l.level - l1 {
            return Ok(false);
        }
        return split_search(l, fund, l1, i + 1, 0, choice);
    }
    for v in 0..=fund[i][b] {
        choice[i][b] = v;
        if choice[i].iter().sum::<i64>() > l1 {
            break;
        }
        if split_search(l, fund, l1, i, b + 1, choice)? {
            choice[i][b] = 0;
            return Ok(true);
        }
    }
    choice[i][b] = 0;
    Ok(false)
}

/// True iff every Galois twist T_m (m coprime to n) of the dual bundle is again
/// an F-line bundle. Needs a rigid unitary tuple.
pub fn galois_test(a: &ConjClassTuple) -> Result<bool> {
    let l = to_bundle(a)?;
    if !is_f_line_bundle(&l)? {
        return Err(Error::Precondition("galois_test needs a rigid unitary tuple".into()));
    }
    galois_twists_are_f(&l)
}

fn galois_twists_are_f(l: &LineBundleData) -> Result<bool> {
    for m in 2..l.n as i64 {
        if m.gcd(&(l.n as i64)) == 1 && !is_f_line_bundle(&galois_bundle(l, m)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classifies a tuple: unitary realizability, forced irreducibility, rigidity
/// and finiteness of global monodromy.
pub fn classify(a: &ConjClassTuple) -> Result<RigidReport> {
    let bundle = to_bundle(a)?;
    let mut certificates = Vec::new();
    let sections = h0(&bundle)?;
    certificates.push(format!("h0 = {sections}"));
    let exists_unitary = sections > 0;
    let (lhs, rhs, bound) = rigidity_numerics(a);
    certificates.push(format!("rigidity {lhs} vs {rhs}, irreducibility bound {bound}"));
    let irreducible_forced = if exists_unitary { irreducible_forced(&bundle)? } else { Some(false) };
    let witness = if exists_unitary { f_line_bundle_witness(&bundle)? } else { None };
    if let Some(c) = &witness {
        let sets: Vec<&Vec<usize>> = c.indices.iter().map(|i| &i.elems).collect();
        certificates.push(format!("witness cycle d={} Gr({},{}) J={:?}", c.d, c.r, c.n, sets));
    }
    let rigid_unitary = witness.is_some();
    let finite_monodromy = rigid_unitary && galois_twists_are_f(&bundle)?;
    Ok(RigidReport {
        input: a.clone(),
        exists_unitary,
        irreducible_forced,
        rigid_unitary,
        finite_monodromy,
        dual_bundle: bundle,
        certificates,
    })
}

/// One orbit of rigid unitary local systems with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidEntry {
    pub tuple: ConjClassTuple,
    pub point: Vec<AlcovePoint>,
    pub orbit_size: usize,
    pub finite_monodromy: bool,
    pub property_p: bool,
}

/// Orbit representatives of all unitary rigid local systems with local
/// monodromies of order dividing n at s points.
pub fn rigid_catalog(n: usize, s: usize, exec: Exec) -> Result<Vec<RigidEntry>> {
    f_vertices(n, s)?;
    let orbits = f_vertex_orbits(n, s)?;
    par::map(exec, orbits, |o| -> Result<RigidEntry> {
        let tuple = from_bundle(&o.representative.bundle)?;
        Ok(RigidEntry {
            finite_monodromy: galois_twists_are_f(&o.representative.bundle)?,
            property_p: property_p(&tuple),
            point: o.representative.point.clone(),
            orbit_size: o.size,
            tuple,
        })
    })
    .into_iter()
    .collect()
}
