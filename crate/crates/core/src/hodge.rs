//! Hodge numbers of generic middle-cohomology submotives, counted by subset sums.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HodgeKind {
    Siegel { g: usize },
    /// Unitary or functional case; the functional reading is conjectural.
    Unitary { r: usize, n: usize },
}

/// `h^{0,d}, h^{1,d−1}, …, h^{d,0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeVector {
    pub kind: HodgeKind,
    pub weight: usize,
    pub entries: Vec<u128>,
}

impl HodgeVector {
    pub fn total(&self) -> u128 {
        self.entries.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    pub fn status(&self) -> &'static str {
        match self.kind {
            HodgeKind::Siegel { .. } => "theorem",
            HodgeKind::Unitary { .. } => "theorem (unitary); CONJECTURAL (functional)",
        }
    }

    pub fn to_json(&self) -> Value {
        let (family, params) = match self.kind {
            HodgeKind::Siegel { g } => ("siegel", json!({ "g": g })),
            HodgeKind::Unitary { r, n } => ("unitary", json!({ "r": r, "n": n })),
        };
        json!({
            "family": family,
            "params": params,
            "weight": self.weight,
            "h": self.entries.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            "total": self.total().to_string(),
            "status": self.status(),
        })
    }
}

impl fmt::Display for HodgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().map(u128::to_string).collect::<Vec<_>>().join(","))
    }
}

/// `counts[k][s]` = number of `k`-subsets of `{1..m}` with sum `s`.
fn subset_sum_table(m: usize, max_k: usize) -> Vec<Vec<u128>> {
    let max_sum = m * (m + 1) / 2;
    let mut counts = vec![vec![0u128; max_sum + 1]; max_k + 1];
    counts[0][0] = 1;
    for x in 1..=m {
        for k in (1..=max_k.min(x)).rev() {
            for s in (x..=max_sum).rev() {
                counts[k][s] += counts[k - 1][s - x];
            }
        }
    }
    counts
}

/// `h^{i, d−i}` = number of subsets of `{1..g}` with element sum `i`, `d = g(g+1)/2`.
pub fn siegel_hodge(g: usize) -> Result<HodgeVector> {
    if g == 0 || g > 120 {
        return Err(Error::InvalidParameter(format!("genus must lie in 1..=120, got {g}")));
    }
    let table = subset_sum_table(g, g);
    let weight = g * (g + 1) / 2;
    let entries = (0..=weight).map(|s| table.iter().map(|row| row[s]).sum()).collect();
    Ok(HodgeVector {
        kind: HodgeKind::Siegel { g },
        weight,
        entries,
    })
}

/// `h^{i, (r−n)n−i}` = number of `n`-subsets of `{1..r}` with sum `n(n+1)/2 + i`.
pub fn unitary_hodge(r: usize, n: usize) -> Result<HodgeVector> {
    if n == 0 || n > r || r > 120 {
        return Err(Error::InvalidParameter(format!("need 1 ≤ n ≤ r ≤ 120, got r={r}, n={n}")));
    }
    let table = subset_sum_table(r, n);
    let weight = (r - n) * n;
    let base = n * (n + 1) / 2;
    let entries = (0..=weight).map(|i| table[n][base + i]).collect();
    Ok(HodgeVector {
        kind: HodgeKind::Unitary { r, n },
        weight,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(siegel_hodge(1).unwrap().to_string(), "(1,1)");
        let h2 = siegel_hodge(2).unwrap();
        assert_eq!((h2.to_string(), h2.weight), ("(1,1,1,1)".to_string(), 3));
        let h3 = siegel_hodge(3).unwrap();
        assert_eq!((h3.to_string(), h3.weight, h3.total()), ("(1,1,1,2,1,1,1)".to_string(), 6, 8));
        let u = unitary_hodge(3, 1).unwrap();
        assert_eq!((u.to_string(), u.weight), ("(1,1,1)".to_string(), 2));
        let u = unitary_hodge(4, 2).unwrap();
        assert_eq!((u.to_string(), u.weight, u.total()), ("(1,1,2,1,1)".to_string(), 4, 6));
        assert!(unitary_hodge(3, 0).is_err());
        assert!(siegel_hodge(0).is_err());
    }
}
