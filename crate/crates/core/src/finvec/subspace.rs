use std::fmt::Write;

use super::field::{Elem, PrimePowerField};
use crate::error::{Error, Result};

/// Subspace of `F^ambient` held as its reduced row-echelon basis, so equal
/// subspaces have identical representations. The derived order compares
/// echelon matrices row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Elem>>,
}

/// In-place reduced row-echelon form; returns the nonzero rows.
pub fn rref(field: &PrimePowerField, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for c in col..ncols {
                let t = field.mul(factor, rows[rank][c]);
                rows[r][c] = field.sub(rows[r][c], t);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { ambient, rows }
    }

    /// Span of standard basis vectors `e_i`, `i ∈ idxs` (0-based).
    pub fn coordinate(ambient: usize, idxs: &[usize]) -> Self {
        let mut idxs = idxs.to_vec();
        idxs.sort_unstable();
        idxs.dedup();
        let rows = idxs
            .into_iter()
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { ambient, rows }
    }

    pub fn from_vectors(field: &PrimePowerField, ambient: usize, vectors: Vec<Vec<Elem>>) -> Result<Self> {
        let q = field.order() as Elem;
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch(v.len(), ambient));
            }
            if v.iter().any(|&x| x >= q) {
                return Err(Error::InvalidParameter(format!("vector entry outside F_{q}")));
            }
        }
        Ok(Subspace {
            ambient,
            rows: rref(field, vectors),
        })
    }

    /// Trusts the caller that `rows` is already a reduced echelon basis.
    pub(crate) fn from_echelon_unchecked(ambient: usize, rows: Vec<Vec<Elem>>) -> Self {
        Subspace { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect()
    }

    /// Whether the stored rows are exactly the reduced echelon form of their span.
    pub fn is_canonical(&self, field: &PrimePowerField) -> bool {
        rref(field, self.rows.clone()) == self.rows && self.rows.iter().all(|r| r.len() == self.ambient)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn span(&self, other: &Subspace, field: &PrimePowerField) -> Result<Subspace> {
        self.check(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace {
            ambient: self.ambient,
            rows: rref(field, rows),
        })
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self, field: &PrimePowerField) -> Subspace {
        let pivots = self.pivots();
        let mut basis = Vec::new();
        for free in (0..self.ambient).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; self.ambient];
            v[free] = 1;
            for (row, &pc) in self.rows.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            basis.push(v);
        }
        Subspace {
            ambient: self.ambient,
            rows: rref(field, basis),
        }
    }

    pub fn intersect(&self, other: &Subspace, field: &PrimePowerField) -> Result<Subspace> {
        self.check(other)?;
        let ann = self.annihilator(field).span(&other.annihilator(field), field)?;
        Ok(ann.annihilator(field))
    }

    pub fn contains_vector(&self, v: &[Elem], field: &PrimePowerField) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(field, rows).len() == self.rows.len()
    }

    pub fn contains(&self, other: &Subspace, field: &PrimePowerField) -> bool {
        other.rows.iter().all(|v| self.contains_vector(v, field))
    }

    /// `<r1,r2,..>` with one symbol per field element; `<>` for the zero space.
    pub fn to_text(&self, field: &PrimePowerField) -> String {
        let mut s = String::from("<");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            for &x in row {
                s.push(field.symbol(x));
            }
        }
        let _ = write!(s, ">");
        s
    }
}
