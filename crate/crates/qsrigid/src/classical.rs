//! Classical rigid families: the hypergeometric ₗF_{ℓ−1} and the Pochhammer
//! systems, with unitarity criteria, exponent tables and Katz lowering.

use crate::error::{Error, Result};
use crate::kz::LocalExponentTable;
use crate::strangedual::ConjClassTuple;
use crate::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// ⟨x⟩ = x − ⌊x⌋.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

fn tabulate(xs: impl IntoIterator<Item = Rational>) -> Vec<(Rational, u64)> {
    let mut acc: BTreeMap<Rational, u64> = BTreeMap::new();
    for x in xs {
        *acc.entry(x).or_default() += 1;
    }
    acc.into_iter().collect()
}

/// e with exp(2πi x) = ζ_n^e, when n·x is an integer.
fn root_exponent(x: &Rational, n: usize) -> Result<usize> {
    let y = x * Rational::from_integer(n as i64);
    if !y.is_integer() {
        return Err(Error::Invalid(format!("exp(2πi·{x}) is not an {n}-th root of unity")));
    }
    Ok(y.to_integer().rem_euclid(n as i64) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeomData {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
}

impl HypergeomData {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(Error::Invalid(format!("need |α| = |β| ≥ 1, got {} and {}", alpha.len(), beta.len())));
        }
        Ok(HypergeomData { alpha, beta })
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    /// α_i − β_j ∉ ℤ for all i, j.
    pub fn irreducible(&self) -> bool {
        self.alpha.iter().all(|a| self.beta.iter().all(|b| !(a - b).is_integer()))
    }

    /// From eigenvalue exponents ζ_n^e at z = 0 and at z = ∞.
    pub fn from_eigenvalues(n: usize, at_zero: &[usize], at_infinity: &[usize]) -> Result<Self> {
        let nn = n as i64;
        let beta = at_zero.iter().map(|&e| frac(&Rational::new(-(e as i64), nn))).collect();
        let alpha = at_infinity.iter().map(|&e| Rational::new(e as i64 % nn, nn)).collect();
        HypergeomData::new(alpha, beta)
    }

    /// Eigenvalue exponents at 0, 1, ∞ as a conjugacy class tuple of n-th roots.
    pub fn to_conj_classes(&self, n: usize) -> Result<ConjClassTuple> {
        let table = hypergeom_exponents(self);
        let expand = |t: &[(Rational, u64)]| -> Result<Vec<usize>> {
            let mut v = Vec::new();
            for (x, m) in t {
                let e = root_exponent(x, n)?;
                v.extend(std::iter::repeat_n(e, *m as usize));
            }
            Ok(v)
        };
        let classes =
            [expand(&table.points[0])?, expand(&table.points[1])?, expand(&table.infinity)?];
        ConjClassTuple::from_exponents(self.rank(), n, &classes)
    }
}

/// Strict interlacing of the sorted fractional parts in either order.
pub fn hypergeom_unitary(h: &HypergeomData) -> bool {
    let mut a: Vec<Rational> = h.alpha.iter().map(frac).collect();
    let mut b: Vec<Rational> = h.beta.iter().map(frac).collect();
    a.sort();
    b.sort();
    let interlace = |x: &[Rational], y: &[Rational]| {
        let merged: Vec<&Rational> = x.iter().zip(y).flat_map(|(p, q)| [p, q]).collect();
        merged.windows(2).all(|w| w[0] < w[1])
    };
    interlace(&a, &b) || interlace(&b, &a)
}

/// Exponents 1 − β at z = 0; 0, 1, …, ℓ−2 and −1 + Σ(β − α) at z = 1; α at ∞.
pub fn hypergeom_exponents(h: &HypergeomData) -> LocalExponentTable {
    let l = h.rank();
    let one = Rational::one();
    let at0 = tabulate(h.beta.iter().map(|b| one - b));
    let shift: Rational = h.beta.iter().sum::<Rational>() - h.alpha.iter().sum::<Rational>() - one;
    let at1 = tabulate((0..l as i64 - 1).map(Rational::from_integer).chain([shift]));
    LocalExponentTable { points: vec![at0, at1], infinity: tabulate(h.alpha.iter().cloned()) }
}

/// One Katz lowering step. After a twist making the least ⟨β⟩ zero, the
/// interlacing is 0 = β_1 < α_1 < β_2 < ⋯ < β_ℓ < α_ℓ; picking the eigenvalue 1
/// at z = 0 and z = 1 and exp(2πiα_1) at ∞ leaves (α_2, …, α_ℓ; β_2, …, β_ℓ).
pub fn hypergeom_katz_lower(h: &HypergeomData) -> Result<HypergeomData> {
    if h.rank() < 2 {
        return Err(Error::Precondition("Katz lowering needs rank ≥ 2".into()));
    }
    if !hypergeom_unitary(h) {
        return Err(Error::Precondition("Katz lowering needs interlacing α, β".into()));
    }
    let t = h.beta.iter().map(frac).min().expect("nonempty");
    let mut a: Vec<Rational> = h.alpha.iter().map(|x| frac(&(x - t))).collect();
    let mut b: Vec<Rational> = h.beta.iter().map(|x| frac(&(x - t))).collect();
    a.sort();
    b.sort();
    debug_assert!(b[0].is_zero() && b[0] < a[0]);
    HypergeomData::new(a[1..].to_vec(), b[1..].to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PochhammerData {
    pub lambda: Vec<Rational>,
    pub rho: Rational,
}

impl PochhammerData {
    pub fn new(lambda: Vec<Rational>, rho: Rational) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::Invalid("Pochhammer systems need ℓ ≥ 2".into()));
        }
        let sum: Rational = lambda.iter().sum();
        if sum == rho * Rational::from_integer(lambda.len() as i64) {
            return Err(Error::Invalid("need Σλ ≠ ℓρ".into()));
        }
        Ok(PochhammerData { lambda, rho })
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// ρ′ = Σλ_i − (ℓ−1)ρ.
    pub fn rho_prime(&self) -> Rational {
        self.lambda.iter().sum::<Rational>() - self.rho * Rational::from_integer(self.rank() as i64 - 1)
    }

    /// λ_i − ρ, ρ and ρ′ all non-integral.
    pub fn irreducible(&self) -> bool {
        self.lambda.iter().all(|l| !(l - self.rho).is_integer())
            && !self.rho.is_integer()
            && !self.rho_prime().is_integer()
    }
}

/// Both fractional-part conditions; errors when the system is reducible.
pub fn pochhammer_unitary(p: &PochhammerData) -> Result<bool> {
    if !p.irreducible() {
        return Err(Error::Precondition(format!(
            "reducible Pochhammer data: some of λ_i − ρ, ρ = {}, ρ′ = {} is an integer",
            p.rho,
            p.rho_prime()
        )));
    }
    let r = frac(&p.rho);
    let lams: Vec<Rational> = p.lambda.iter().map(frac).collect();
    let total: Rational = lams.iter().sum();
    let lm1 = Rational::from_integer(p.rank() as i64 - 1);
    let below = lams.iter().all(|l| r < *l) && total < lm1 * r + Rational::one();
    let above = lams.iter().all(|l| r > *l) && lm1 * r < total;
    Ok(below || above)
}

/// 0 (ℓ−1 times) and λ_i at t_i; −ρ (ℓ−1 times) and −ρ′ at ∞.
pub fn pochhammer_exponents(p: &PochhammerData) -> LocalExponentTable {
    let l = p.rank();
    let points = p
        .lambda
        .iter()
        .map(|x| tabulate(std::iter::repeat_n(Rational::zero(), l - 1).chain([*x])))
        .collect();
    let infinity = tabulate(std::iter::repeat_n(-p.rho, l - 1).chain([-p.rho_prime()]));
    LocalExponentTable { points, infinity }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| Rational::new(a, b)).collect()
    }

    #[test]
    fn unitarity() {
        let h = HypergeomData::new(q(&[(1, 6), (5, 6)]), q(&[(0, 1), (4, 6)])).unwrap();
        assert!(hypergeom_unitary(&h));
        let h = HypergeomData::new(q(&[(7, 9), (8, 9)]), q(&[(0, 1), (3, 9)])).unwrap();
        assert!(!hypergeom_unitary(&h));
        let h = HypergeomData::new(q(&[(1, 2), (1, 2)]), q(&[(0, 1), (3, 4)])).unwrap();
        assert!(!hypergeom_unitary(&h));
    }

    #[test]
    fn exponents() {
        let h = HypergeomData::new(q(&[(1, 4), (3, 4)]), q(&[(1, 2), (1, 1)])).unwrap();
        let t = hypergeom_exponents(&h);
        assert_eq!(t.points[0], vec![(Rational::zero(), 1), (Rational::new(1, 2), 1)]);
        assert_eq!(t.points[1], vec![(Rational::new(-1, 2), 1), (Rational::zero(), 1)]);
        let h = HypergeomData::new(q(&[(1, 6), (3, 6), (5, 6)]), q(&[(0, 1), (2, 6), (4, 6)])).unwrap();
        let a = h.to_conj_classes(6).unwrap();
        assert_eq!(a.exponents(0), vec![4, 2, 0]);
        assert_eq!(a.exponents(1), vec![3, 0, 0]);
        assert_eq!(a.exponents(2), vec![5, 3, 1]);
    }

    #[test]
    fn lowering() {
        let h = HypergeomData::from_eigenvalues(8, &[7, 3, 1], &[6, 4, 0]).unwrap();
        assert!(hypergeom_unitary(&h));
        let low = hypergeom_katz_lower(&h).unwrap();
        assert_eq!(low.rank(), 2);
        assert!(hypergeom_unitary(&low));
        let one = hypergeom_katz_lower(&low).unwrap();
        assert_eq!(one.rank(), 1);
        assert!(hypergeom_katz_lower(&one).is_err());
    }

    #[test]
    fn pochhammer() {
        let p = PochhammerData::new(q(&[(1, 3), (1, 3)]), Rational::new(1, 6)).unwrap();
        assert!(pochhammer_unitary(&p).unwrap());
        let p = PochhammerData::new(q(&[(1, 3), (1, 3), (1, 3)]), Rational::new(1, 6)).unwrap();
        assert_eq!(p.rho_prime(), Rational::new(2, 3));
        assert!(pochhammer_unitary(&p).unwrap());
        let p = PochhammerData::new(q(&[(1, 2), (1, 3)]), Rational::new(1, 2)).unwrap();
        assert!(pochhammer_unitary(&p).is_err());
        let p = PochhammerData::new(q(&[(1, 6), (1, 6)]), Rational::new(1, 3)).unwrap();
        assert!(pochhammer_unitary(&p).is_err());
        let p = PochhammerData::new(q(&[(1, 6), (1, 6)]), Rational::new(2, 3)).unwrap();
        assert!(!pochhammer_unitary(&p).unwrap());
        let p = PochhammerData::new(q(&[(1, 2), (1, 2)]), Rational::new(2, 3)).unwrap();
        assert!(pochhammer_unitary(&p).unwrap());
        let t = pochhammer_exponents(&p);
        assert_eq!(t.points.len(), 2);
        assert_eq!(t.infinity.iter().map(|x| x.1).sum::<u64>(), 2);
    }
}
