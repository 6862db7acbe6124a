//! Finite geometry over `F_p` and `F_{p^2}`: Gaussian binomials, canonical
//! subspaces, exhaustive enumeration, symplectic and `F_{q^2}`-structured spaces.

mod field;
mod subspace;
mod symplectic;

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub use field::{Elem, PrimePowerField};
pub use subspace::{rref, Subspace};
pub use symplectic::{count_lagrangian, enumerate_isotropic, QuadraticStructure, SymplecticSpace};

use crate::error::{Error, Result};
use crate::poly::{int, LaurentPoly, VarSet};

/// Default cap on the number of subspaces an enumeration may produce.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `𝔤(k, l)` at an integer `q`: the number of `k`-dimensional subspaces of `F_q^l`.
/// Zero outside `0 ≤ k ≤ l`.
pub fn gaussian_binomial(k: i64, l: i64, q: u64) -> BigInt {
    if k < 0 || l < 0 || k > l {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 1..=k {
        let base = q.pow((i - 1) as u32);
        num *= q.pow(l as u32) - &base;
        den *= q.pow(k as u32) - &base;
    }
    if den.is_zero() {
        // q = 1 limit: the ordinary binomial
        return (0..k).fold(BigInt::one(), |acc, i| acc * (l - i) / (i + 1));
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Saturating `u128` form of [`gaussian_binomial`].
pub fn gaussian_count(k: usize, l: usize, q: usize) -> u128 {
    gaussian_binomial(k as i64, l as i64, q as u64).to_u128().unwrap_or(u128::MAX)
}

/// `𝔤(k, l)` as a polynomial in `Q`, built by the q-Pascal recursion
/// `𝔤(k,l) = 𝔤(k−1,l−1) + Q^k 𝔤(k,l−1)` over the given variable set.
pub fn gaussian_binomial_symbolic(vars: &Arc<VarSet>, k: i64, l: i64) -> LaurentPoly {
    if k < 0 || l < 0 || k > l {
        return LaurentPoly::zero(vars);
    }
    let (k, l) = (k as usize, l as usize);
    // row[m] = 𝔤(m, current l)
    let mut row = vec![LaurentPoly::one(vars)];
    for cur in 1..=l {
        let mut next = Vec::with_capacity(cur + 1);
        for m in 0..=cur {
            let left = if m >= 1 { row[m - 1].clone() } else { LaurentPoly::zero(vars) };
            let right = row
                .get(m)
                .map(|p| p.mul_q_pow(m as i32))
                .unwrap_or_else(|| LaurentPoly::zero(vars));
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// Every `j`-dimensional subspace of `F^r`, once each, in lexicographic order
/// of echelon matrices. Refuses when the count exceeds `budget`.
pub fn enumerate_subspaces(r: usize, j: usize, field: &PrimePowerField, budget: u128) -> Result<Vec<Subspace>> {
    if j > r {
        return Err(Error::IndexOutOfRange {
            what: "subspace dimension",
            index: j as i64,
            min: 0,
            max: r as i64,
        });
    }
    let q = field.order();
    check_budget(gaussian_count(j, r, q), budget)?;
    let mut out = Vec::new();
    for pivots in (0..r).combinations(j) {
        // free cells: (row, col) with col > pivot(row) and col not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| ((pc + 1)..r).filter(|c| !pivots.contains(c)).map(move |c| (row, c)))
            .collect();
        let mut template = vec![vec![0 as Elem; r]; j];
        for (row, &pc) in pivots.iter().enumerate() {
            template[row][pc] = 1;
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rows = template.clone();
            for (&(row, c), &d) in free.iter().zip(&digits) {
                rows[row][c] = d as Elem;
            }
            out.push(Subspace::from_echelon_unchecked(r, rows));
            let mut done = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < q {
                    done = false;
                    break;
                }
                *d = 0;
            }
            if done {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of grouping `j`-subspaces `W` by `(W ∩ D, W + D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileCount {
    pub r: usize,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub q: usize,
    /// Number of distinct pairs with `dim(W ∩ D) = i`.
    pub classes: u128,
    /// The common size of those classes.
    pub fiber: u128,
    pub expected_classes: u128,
    pub expected_fiber: u128,
}

impl ProfileCount {
    pub fn matches(&self) -> bool {
        self.classes == self.expected_classes && self.fiber == self.expected_fiber
    }
}

/// Brute-force class and fiber counts for the intersection profile `i` of
/// `j`-dimensional subspaces against `D`.
pub fn profile_count(d: &Subspace, i: usize, j: usize, field: &PrimePowerField, budget: u128) -> Result<ProfileCount> {
    let (r, n, q) = (d.ambient(), d.dim(), field.order());
    if j > r || i > j.min(n) || j - i > r - n {
        return Err(Error::InvalidParameter(format!(
            "profile (i={i}, j={j}) impossible for dim D = {n} in F^{r}"
        )));
    }
    let mut classes: BTreeMap<(Subspace, Subspace), u128> = BTreeMap::new();
    for w in enumerate_subspaces(r, j, field, budget)? {
        let meet = w.intersect(d, field)?;
        if meet.dim() != i {
            continue;
        }
        let join = w.span(d, field)?;
        *classes.entry((meet, join)).or_default() += 1;
    }
    let sizes: Vec<u128> = classes.values().copied().unique().collect();
    if sizes.len() > 1 {
        return Err(Error::IdentityFailed(format!(
            "unequal fibers {sizes:?} for r={r} n={n} j={j} i={i} q={q}"
        )));
    }
    let qq = q as u128;
    Ok(ProfileCount {
        r,
        n,
        i,
        j,
        q,
        classes: classes.len() as u128,
        fiber: sizes.first().copied().unwrap_or(0),
        expected_classes: gaussian_count(i, n, q) * gaussian_count(j - i, r - n, q),
        expected_fiber: qq.pow(((j - i) * (n - i)) as u32),
    })
}

/// `Σ_i 𝔤(i,n) 𝔤(j−i,r−n) Q^{(j−i)(n−i)} − 𝔤(j,r)`, which should vanish.
pub fn q_vandermonde_defect(r: usize, n: usize, j: usize) -> LaurentPoly {
    let vars = VarSet::q_only();
    let mut total = gaussian_binomial_symbolic(&vars, j as i64, r as i64).scale(&-int(1));
    for i in 0..=j.min(n) {
        let term = &gaussian_binomial_symbolic(&vars, i as i64, n as i64)
            * &gaussian_binomial_symbolic(&vars, (j - i) as i64, (r - n) as i64);
        total = &total + &term.mul_q_pow(((j - i) * (n - i)) as i32);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(1, 2, 2), BigInt::from(3));
        assert_eq!(gaussian_binomial(2, 4, 2), BigInt::from(35));
        assert_eq!(gaussian_binomial(3, 2, 2), BigInt::zero());
        assert_eq!(gaussian_binomial(-1, 2, 2), BigInt::zero());
        let v = VarSet::q_only();
        let expected = &(&LaurentPoly::q_pow(&v, 2, int(1)) + &LaurentPoly::q_pow(&v, 1, int(1))) + &LaurentPoly::one(&v);
        assert_eq!(gaussian_binomial_symbolic(&v, 1, 3), expected);
    }

    #[test]
    fn symbolic_matches_numeric() {
        let v = VarSet::q_only();
        for l in 0..7 {
            for k in 0..=l {
                let p = gaussian_binomial_symbolic(&v, k, l);
                for q in [2u64, 3, 5] {
                    let val = p.evaluate_with(|_| Some(int(q as i64))).unwrap();
                    assert_eq!(val, crate::poly::Rational::from_integer(gaussian_binomial(k, l, q)));
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let f2 = PrimePowerField::prime(2).unwrap();
        let f3 = PrimePowerField::prime(3).unwrap();
        assert_eq!(enumerate_subspaces(3, 1, &f2, DEFAULT_BUDGET).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(2, 0, &f3, DEFAULT_BUDGET).unwrap(), vec![Subspace::zero(2)]);
        let planes = enumerate_subspaces(4, 2, &f2, DEFAULT_BUDGET).unwrap();
        assert_eq!(planes.len(), 35);
        assert!(planes.windows(2).all(|w| w[0] < w[1]));
        assert!(planes.iter().all(|w| w.is_canonical(&f2)));
    }

    #[test]
    fn budget_refusal() {
        let f2 = PrimePowerField::prime(2).unwrap();
        assert_eq!(
            enumerate_subspaces(4, 2, &f2, 10),
            Err(Error::BudgetExceeded {
                required: 35,
                budget: 10
            })
        );
    }

    #[test]
    fn profile_examples() {
        let f2 = PrimePowerField::prime(2).unwrap();
        let d = Subspace::coordinate(2, &[1]);
        let pc = profile_count(&d, 0, 1, &f2, DEFAULT_BUDGET).unwrap();
        assert_eq!((pc.classes, pc.fiber), (1, 2));
        let d = Subspace::coordinate(4, &[2, 3]);
        let pc = profile_count(&d, 1, 2, &f2, DEFAULT_BUDGET).unwrap();
        assert_eq!((pc.classes, pc.fiber), (9, 2));
        assert!(pc.matches());
        let pc = profile_count(&d, 2, 2, &f2, DEFAULT_BUDGET).unwrap();
        assert_eq!((pc.classes, pc.fiber), (1, 1));
    }

    #[test]
    fn modular_law_on_all_pairs() {
        let f2 = PrimePowerField::prime(2).unwrap();
        let all: Vec<Subspace> = (0..=3)
            .flat_map(|j| enumerate_subspaces(3, j, &f2, DEFAULT_BUDGET).unwrap())
            .collect();
        assert_eq!(all.len(), 16);
        for a in &all {
            for b in &all {
                let meet = a.intersect(b, &f2).unwrap();
                let join = a.span(b, &f2).unwrap();
                assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());
                assert!(a.contains(&meet, &f2) && b.contains(&meet, &f2));
                assert!(join.contains(a, &f2) && join.contains(b, &f2));
            }
        }
    }

    #[test]
    fn q_vandermonde_symbolic() {
        for r in 0..=6 {
            for n in 0..=r {
                for j in 0..=r {
                    assert!(q_vandermonde_defect(r, n, j).is_zero(), "r={r} n={n} j={j}");
                }
            }
        }
    }
}
