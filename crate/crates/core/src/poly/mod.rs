//! Exact multivariate Laurent polynomials over the rationals.
//!
//! Every polynomial lives over a [`VarSet`]: an ordered list of named
//! variables followed by the distinguished invertible symbol `Q` (the size of
//! the residue field, kept formal so identities hold for every prime power).
//! Terms are stored in a sorted map keyed by exponent vectors, so two equal
//! polynomials are structurally identical and print identically.

mod render;
mod symmetric;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use symmetric::{elementary_symmetric, is_invariant, sym_reduce, Action, Generator, Invariance, SymmetricForm};

/// Exact rational coefficient, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// `base^exp` for a nonzero rational base and any integer exponent.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    let r = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        r.recip()
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// `U1..Ur` for the torus of `GL_r`.
    Gl(usize),
    /// `U1..Ug, V1..Vg` for the torus of `GSp_2g`.
    Siegel(usize),
    /// Anything else: generator symbols, adjoined `X`, ...
    Named,
}

/// Ordered variable names; `Q` is implicit and always last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    kind: VarKind,
    names: Vec<String>,
}

pub const Q_NAME: &str = "Q";

impl VarSet {
    pub fn gl(r: usize) -> Arc<VarSet> {
        Arc::new(VarSet {
            kind: VarKind::Gl(r),
            names: (1..=r).map(|i| format!("U{i}")).collect(),
        })
    }

    pub fn siegel(g: usize) -> Arc<VarSet> {
        let mut names: Vec<String> = (1..=g).map(|i| format!("U{i}")).collect();
        names.extend((1..=g).map(|i| format!("V{i}")));
        Arc::new(VarSet {
            kind: VarKind::Siegel(g),
            names,
        })
    }

    /// Only the symbol `Q`.
    pub fn q_only() -> Arc<VarSet> {
        Arc::new(VarSet {
            kind: VarKind::Named,
            names: Vec::new(),
        })
    }

    pub fn named<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarSet>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n == Q_NAME {
                return Err(Error::InvalidParameter(format!("illegal variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidParameter(format!("duplicate variable name {n}")));
            }
        }
        Ok(Arc::new(VarSet {
            kind: VarKind::Named,
            names,
        }))
    }

    pub fn kind(&self) -> &VarKind {
        &self.kind
    }

    /// Number of variables excluding `Q`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Length of an exponent vector (variables plus `Q`).
    pub fn arity(&self) -> usize {
        self.names.len() + 1
    }

    pub fn q_index(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, idx: usize) -> &str {
        if idx == self.names.len() {
            Q_NAME
        } else {
            &self.names[idx]
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        if name == Q_NAME {
            Some(self.q_index())
        } else {
            self.names.iter().position(|n| n == name)
        }
    }

    fn describe(&self) -> String {
        let mut all = self.names.clone();
        all.push(Q_NAME.to_string());
        all.join(",")
    }
}

/// Exponent vector indexed by a [`VarSet`] (with `Q` last).
pub type Monomial = Vec<i32>;

/// Exact Laurent polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        Self::monomial(vars, vec![0; vars.arity()], c)
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.arity(), "exponent vector has wrong length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable with index `idx` (the index of `Q` is allowed).
    pub fn var(vars: &Arc<VarSet>, idx: usize) -> Self {
        let mut e = vec![0; vars.arity()];
        e[idx] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variable {name}")))?;
        Ok(Self::var(vars, idx))
    }

    /// `c * Q^e`.
    pub fn q_pow(vars: &Arc<VarSet>, e: i32, c: Rational) -> Self {
        let mut m = vec![0; vars.arity()];
        m[vars.q_index()] = e;
        Self::monomial(vars, m, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(vars: &Arc<VarSet>, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.arity(), "exponent vector has wrong length");
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[i32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lex-largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// `Some(c)` if the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(self.vars.describe(), other.vars.describe()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                acc.entry(m).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_q_pow(&self, e: i32) -> Self {
        let mut s = vec![0; self.vars.arity()];
        s[self.vars.q_index()] = e;
        self.shift(&s)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Rewrites every monomial through `f`, collecting like terms.
    pub fn map_monomials<F: FnMut(&[i32]) -> Monomial>(&self, mut f: F) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c);
        }
        out
    }

    /// Rewrites every term through `f`, which may also rescale coefficients.
    pub fn map_terms<F: FnMut(&[i32], &Rational) -> (Monomial, Rational)>(&self, mut f: F) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let (m2, c2) = f(m, c);
            out.add_term(m2, &c2);
        }
        out
    }

    /// Sends variable `i` to variable `perm[i]` (indices include `Q`).
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        self.map_monomials(|m| {
            let mut out = vec![0; m.len()];
            for (i, &e) in m.iter().enumerate() {
                out[perm[i]] = e;
            }
            out
        })
    }

    /// Moves the polynomial to another variable set, mapping each source
    /// variable to the index given by `index_map` (`Q` must map to `Q`).
    pub fn reembed(&self, target: &Arc<VarSet>, index_map: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.arity()];
            for (i, &x) in m.iter().enumerate() {
                e[index_map[i]] += x;
            }
            out.add_term(e, c);
        }
        out
    }

    /// Smallest and largest exponent of variable `idx` over all terms.
    pub fn exponent_range(&self, idx: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Exact value under `assignment` (variable name -> value).
    ///
    /// Only variables that actually occur need a value; a zero value is an
    /// error for any variable that occurs with a negative exponent.
    pub fn evaluate(&self, assignment: &HashMap<String, Rational>) -> Result<Rational> {
        let values: Vec<Option<&Rational>> = (0..self.vars.arity())
            .map(|i| assignment.get(self.vars.name(i)))
            .collect();
        self.evaluate_with(|i| values[i].cloned())
    }

    /// Like [`evaluate`](Self::evaluate) but with values looked up by index.
    pub fn evaluate_with<F: Fn(usize) -> Option<Rational>>(&self, value: F) -> Result<Rational> {
        let arity = self.vars.arity();
        let mut vals: Vec<Option<Rational>> = vec![None; arity];
        for i in 0..arity {
            let used = self.terms.keys().any(|m| m[i] != 0);
            if !used {
                continue;
            }
            let v = value(i).ok_or_else(|| Error::MissingAssignment(self.vars.name(i).to_string()))?;
            if v.is_zero() && self.terms.keys().any(|m| m[i] < 0) {
                return Err(Error::ZeroToNegativePower(self.vars.name(i).to_string()));
            }
            vals[i] = Some(v);
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e != 0 {
                    t *= rat_pow(vals[i].as_ref().unwrap(), e as i64);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes `images[i]` (a polynomial over `target`) for source variable
    /// `i`; `Q` always goes to the `Q` of `target`. Variables occurring with a
    /// negative exponent must map to single-term images.
    pub fn substitute(&self, images: &[LaurentPoly], target: &Arc<VarSet>) -> Result<LaurentPoly> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable required");
        for img in images {
            if img.vars != *target {
                return Err(Error::VarSetMismatch(img.vars.describe(), target.describe()));
            }
        }
        let q = self.vars.q_index();
        let mut cache: Vec<HashMap<i32, LaurentPoly>> = vec![HashMap::new(); images.len()];
        let mut out = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::q_pow(target, m[q], c.clone());
            for (i, &e) in m[..q].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = if e > 0 {
                        images[i].pow(e as u32)
                    } else {
                        images[i].inverse_monomial()?.pow((-e) as u32)
                    };
                    cache[i].insert(e, p);
                }
                t = &t * &cache[i][&e];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc);
            }
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial.
    pub fn inverse_monomial(&self) -> Result<LaurentPoly> {
        if self.terms.len() != 1 {
            return Err(Error::InvalidParameter(format!("{self} is not an invertible monomial")));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Ok(LaurentPoly::monomial(&self.vars, m.iter().map(|e| -e).collect(), c.recip()))
    }

    /// True iff every exponent of the given variables is non-negative.
    pub fn is_polynomial_in(&self, idxs: &[usize]) -> bool {
        self.terms.keys().all(|m| idxs.iter().all(|&i| m[i] >= 0))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("adding polynomials over different variable sets")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("subtracting polynomials over different variable sets")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("multiplying polynomials over different variable sets")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::to_text(self))
    }
}
