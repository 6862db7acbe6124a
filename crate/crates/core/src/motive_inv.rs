//! Discrete invariants `(ν; k_1, …, k_{ν+1})` of t-motives with nilpotent
//! operator `N ≠ 0`, with `r = Σ k_i` and `n = Σ (i−1) k_i`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NilpotentInvariants {
    pub nu: usize,
    pub k: Vec<usize>,
}

impl NilpotentInvariants {
    pub fn r(&self) -> usize {
        self.k.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.k.iter().enumerate().map(|(i, k)| i * k).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({ "nu": self.nu, "k": self.k, "r": self.r(), "n": self.n() })
    }
}

impl fmt::Display for NilpotentInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.k.iter().map(usize::to_string).collect();
        write!(f, "nu={} k=({})", self.nu, ks.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub problems: Vec<String>,
}

impl Validation {
    pub fn valid(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn validate(nu: usize, k: &[usize], r: usize, n: usize) -> Validation {
    let mut problems = Vec::new();
    if nu == 0 {
        problems.push("nu must be at least 1".to_string());
    }
    if k.len() != nu + 1 {
        problems.push(format!("expected {} entries k_1..k_{}, got {}", nu + 1, nu + 1, k.len()));
    }
    let inv = NilpotentInvariants { nu, k: k.to_vec() };
    if inv.r() != r {
        problems.push(format!("sum of k_i is {}, not r = {r}", inv.r()));
    }
    if inv.n() != n {
        problems.push(format!("sum of (i-1)k_i is {}, not n = {n}", inv.n()));
    }
    if nu > 1 && k.len() == nu + 1 && k[nu] == 0 {
        problems.push(format!("k_{} = 0, so nu = {nu} is not minimal", nu + 1));
    }
    Validation { problems }
}

fn fill(slot: usize, r_left: usize, n_left: usize, k: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if slot == 0 {
        if n_left == 0 {
            let mut full = k.clone();
            full.push(r_left);
            full.reverse();
            out.push(full);
        }
        return;
    }
    // slot i carries weight i
    for c in 0..=r_left.min(n_left / slot) {
        k.push(c);
        fill(slot - 1, r_left - c, n_left - c * slot, k, out);
        k.pop();
    }
}

/// All valid invariants with `ν ≤ nu_max`, sorted by `(ν, k)`.
pub fn enumerate_invariants(r: usize, n: usize, nu_max: usize) -> Result<Vec<NilpotentInvariants>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let mut out = Vec::new();
    for nu in 1..=nu_max.min(n.max(1)) {
        let mut tuples = Vec::new();
        let top_min = usize::from(nu > 1);
        for top in top_min..=r.min(n / nu) {
            let mut k = vec![top];
            fill(nu - 1, r - top, n - top * nu, &mut k, &mut tuples);
        }
        tuples.sort();
        out.extend(tuples.into_iter().map(|k| NilpotentInvariants { nu, k }));
    }
    Ok(out)
}

fn check(inv: &NilpotentInvariants) -> Result<()> {
    let v = validate(inv.nu, &inv.k, inv.r(), inv.n());
    if v.valid() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(v.problems.join("; ")))
    }
}

/// The multiset with `−i+1` occurring `k_i` times, in decreasing order.
pub fn to_weights(inv: &NilpotentInvariants) -> Result<Vec<i64>> {
    check(inv)?;
    Ok(inv
        .k
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(-(i as i64), k))
        .collect())
}

/// Predicted Levi block; empty blocks are kept and flagged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeviBlock {
    pub size: usize,
    pub empty: bool,
}

/// Block sizes `k_1, …, k_{ν+1}` (CONJECTURAL).
pub fn levi_blocks(inv: &NilpotentInvariants) -> Result<Vec<LeviBlock>> {
    check(inv)?;
    Ok(inv.k.iter().map(|&size| LeviBlock { size, empty: size == 0 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        assert!(validate(1, &[3, 2], 5, 2).valid());
        assert!(validate(2, &[1, 0, 1], 2, 2).valid());
        let v = validate(2, &[2, 0, 0], 2, 0);
        assert!(!v.valid());
        assert!(v.problems[0].contains("not minimal"));
        assert!(!validate(1, &[1, 1], 2, 2).valid());
    }

    #[test]
    fn enumeration_examples() {
        let show = |r, n, nu| -> Vec<String> {
            enumerate_invariants(r, n, nu).unwrap().iter().map(ToString::to_string).collect()
        };
        assert_eq!(show(2, 1, 1), vec!["nu=1 k=(1,1)"]);
        assert_eq!(show(2, 2, 2), vec!["nu=1 k=(0,2)", "nu=2 k=(1,0,1)"]);
        assert_eq!(show(1, 0, 5), vec!["nu=1 k=(1,0)"]);
    }

    #[test]
    fn weights_and_blocks() {
        let inv = NilpotentInvariants { nu: 2, k: vec![1, 0, 1] };
        assert_eq!(to_weights(&inv).unwrap(), vec![0, -2]);
        let blocks = levi_blocks(&inv).unwrap();
        assert_eq!(blocks.iter().filter(|b| b.empty).count(), 1);
        let inv = NilpotentInvariants { nu: 1, k: vec![3, 2] };
        assert_eq!(to_weights(&inv).unwrap(), vec![0, 0, 0, -1, -1]);
        assert!(to_weights(&NilpotentInvariants { nu: 2, k: vec![2, 0, 0] }).is_err());
    }
}
