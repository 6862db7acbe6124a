use super::field::{irreducible_quadratic, Elem, PrimePowerField};
use super::subspace::Subspace;
use super::{enumerate_subspaces, gaussian_count};
use crate::error::{Error, Result};

/// `F_p^{2g}` with `⟨x, y⟩ = Σ_i x_i y_{g+i} − x_{g+i} y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    g: usize,
}

impl SymplecticSpace {
    pub fn new(g: usize) -> Self {
        SymplecticSpace { g }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    /// Gram matrix in the standard block form `[[0, I], [−I, 0]]`.
    pub fn gram(&self, field: &PrimePowerField) -> Vec<Vec<Elem>> {
        let d = self.dim();
        let mut m = vec![vec![0; d]; d];
        for i in 0..self.g {
            m[i][self.g + i] = 1;
            m[self.g + i][i] = field.neg(1);
        }
        m
    }

    pub fn form(&self, field: &PrimePowerField, x: &[Elem], y: &[Elem]) -> Elem {
        let g = self.g;
        (0..g).fold(0, |acc, i| {
            let plus = field.mul(x[i], y[g + i]);
            let minus = field.mul(x[g + i], y[i]);
            field.add(acc, field.sub(plus, minus))
        })
    }

    pub fn is_isotropic(&self, field: &PrimePowerField, w: &Subspace) -> bool {
        let rows = w.rows();
        rows.iter()
            .enumerate()
            .all(|(a, x)| rows[a + 1..].iter().all(|y| self.form(field, x, y) == 0))
    }

    /// Exhaustive check that the form is alternating and nondegenerate.
    pub fn verify(&self, field: &PrimePowerField) -> Result<()> {
        let gram = self.gram(field);
        let d = self.dim();
        for i in 0..d {
            if gram[i][i] != 0 || (0..d).any(|j| gram[i][j] != field.neg(gram[j][i])) {
                return Err(Error::IdentityFailed("form is not alternating".into()));
            }
        }
        if super::rref(field, gram).len() != d {
            return Err(Error::IdentityFailed("form is degenerate".into()));
        }
        Ok(())
    }
}

/// All `j`-dimensional isotropic subspaces of the standard symplectic `F_p^{2g}`.
pub fn enumerate_isotropic(g: usize, j: usize, field: &PrimePowerField, budget: u128) -> Result<Vec<Subspace>> {
    if j > g {
        return Err(Error::IndexOutOfRange {
            what: "isotropic dimension",
            index: j as i64,
            min: 0,
            max: g as i64,
        });
    }
    let space = SymplecticSpace::new(g);
    Ok(enumerate_subspaces(2 * g, j, field, budget)?
        .into_iter()
        .filter(|w| space.is_isotropic(field, w))
        .collect())
}

pub fn count_lagrangian(g: usize, field: &PrimePowerField, budget: u128) -> Result<u128> {
    Ok(enumerate_isotropic(g, g, field, budget)?.len() as u128)
}

/// `F_p^{2m}` read as `F_{p^2}^m`: coordinates `(2k, 2k+1)` hold `a0 + a1 ω`
/// where `ω^2 + a ω + b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticStructure {
    m: usize,
    a: Elem,
    b: Elem,
}

impl QuadraticStructure {
    pub fn new(field: &PrimePowerField, m: usize) -> Result<Self> {
        if field.degree() != 1 {
            return Err(Error::InvalidParameter("quadratic structure needs a prime base field".into()));
        }
        let (a, b) = irreducible_quadratic(field.characteristic());
        Ok(QuadraticStructure {
            m,
            a: a as Elem,
            b: b as Elem,
        })
    }

    pub fn ambient(&self) -> usize {
        2 * self.m
    }

    /// Multiplication by `ω`.
    pub fn omega(&self, field: &PrimePowerField, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; v.len()];
        for k in 0..self.m {
            let (a0, a1) = (v[2 * k], v[2 * k + 1]);
            out[2 * k] = field.neg(field.mul(self.b, a1));
            out[2 * k + 1] = field.sub(a0, field.mul(self.a, a1));
        }
        out
    }

    /// Smallest `F_{p^2}`-stable subspace containing `w`.
    pub fn f_q2_span(&self, field: &PrimePowerField, w: &Subspace) -> Result<Subspace> {
        if w.ambient() != self.ambient() {
            return Err(Error::AmbientMismatch(w.ambient(), self.ambient()));
        }
        let mut vectors: Vec<Vec<Elem>> = w.rows().to_vec();
        vectors.extend(w.rows().iter().map(|v| self.omega(field, v)));
        Subspace::from_vectors(field, self.ambient(), vectors)
    }

    pub fn is_stable(&self, field: &PrimePowerField, w: &Subspace) -> Result<bool> {
        Ok(self.f_q2_span(field, w)? == *w)
    }

    /// Number of `F_{p^2}`-stable subspaces of `F_p`-dimension `2k`.
    pub fn stable_count(&self, field: &PrimePowerField, k: usize) -> u128 {
        gaussian_count(k, self.m, field.order() * field.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finvec::DEFAULT_BUDGET;

    #[test]
    fn lagrangian_counts() {
        let f2 = PrimePowerField::prime(2).unwrap();
        let f3 = PrimePowerField::prime(3).unwrap();
        assert_eq!(count_lagrangian(1, &f2, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(count_lagrangian(2, &f2, DEFAULT_BUDGET).unwrap(), 15);
        assert_eq!(count_lagrangian(2, &f3, DEFAULT_BUDGET).unwrap(), 40);
        SymplecticSpace::new(2).verify(&f3).unwrap();
    }

    #[test]
    fn f4_span_of_line() {
        let f2 = PrimePowerField::prime(2).unwrap();
        let qs = QuadraticStructure::new(&f2, 1).unwrap();
        let line = Subspace::from_vectors(&f2, 2, vec![vec![1, 0]]).unwrap();
        assert_eq!(qs.f_q2_span(&f2, &line).unwrap(), Subspace::full(2));
        assert!(qs.is_stable(&f2, &Subspace::full(2)).unwrap());
        assert!(qs.is_stable(&f2, &Subspace::zero(2)).unwrap());
    }

    #[test]
    fn stable_subspaces_match_count() {
        for p in [2, 3] {
            let f = PrimePowerField::prime(p).unwrap();
            let qs = QuadraticStructure::new(&f, 2).unwrap();
            let stable = enumerate_subspaces(4, 2, &f, DEFAULT_BUDGET)
                .unwrap()
                .into_iter()
                .filter(|w| qs.is_stable(&f, w).unwrap())
                .count() as u128;
            assert_eq!(stable, qs.stable_count(&f, 1));
            // closure laws
            for w in enumerate_subspaces(4, 1, &f, DEFAULT_BUDGET).unwrap() {
                let s = qs.f_q2_span(&f, &w).unwrap();
                assert_eq!(qs.f_q2_span(&f, &s).unwrap(), s);
                assert!(s.contains(&w, &f));
            }
        }
    }
}
