//! Bidegrees `(d₁ˢ, d₁ⁿˢ, d₂ˢ, d₂ⁿˢ)` of the Hecke correspondences, as
//! polynomials in `Q`, with the duality and consistency checks that tie them
//! together.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::finvec::{gaussian_binomial_symbolic, PrimePowerField, DEFAULT_BUDGET};
use crate::hecke_gl::{dual, express_in_levi_generators, levi_summand, GlContext};
use crate::poly::{int, LaurentPoly, Rational, VarSet};
use crate::redsim::{census, ModelPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidegreeProfile {
    pub d1s: LaurentPoly,
    pub d1ns: LaurentPoly,
    pub d2s: LaurentPoly,
    pub d2ns: LaurentPoly,
}

/// A profile evaluated at an integer `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericProfile {
    pub d1s: BigInt,
    pub d1ns: BigInt,
    pub d2s: BigInt,
    pub d2ns: BigInt,
}

impl NumericProfile {
    pub fn d1(&self) -> BigInt {
        &self.d1s * &self.d1ns
    }

    pub fn d2(&self) -> BigInt {
        &self.d2s * &self.d2ns
    }
}

impl fmt::Display for NumericProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d1s, self.d1ns, self.d2s, self.d2ns)
    }
}

fn qvars() -> Arc<VarSet> {
    VarSet::q_only()
}

fn qpow(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(&qvars(), e as i32, int(1))
}

fn gauss(k: usize, l: usize) -> LaurentPoly {
    gaussian_binomial_symbolic(&qvars(), k as i64, l as i64)
}

impl BidegreeProfile {
    pub fn d1(&self) -> LaurentPoly {
        &self.d1s * &self.d1ns
    }

    pub fn d2(&self) -> LaurentPoly {
        &self.d2s * &self.d2ns
    }

    /// The profile of the transposed correspondence.
    pub fn swapped(&self) -> Self {
        BidegreeProfile {
            d1s: self.d2s.clone(),
            d1ns: self.d2ns.clone(),
            d2s: self.d1s.clone(),
            d2ns: self.d1ns.clone(),
        }
    }

    pub fn at(&self, q: u64) -> Result<NumericProfile> {
        let ev = |p: &LaurentPoly| -> Result<BigInt> {
            let v = p.evaluate_with(|_| Some(Rational::from_integer(BigInt::from(q))))?;
            if !v.is_integer() {
                return Err(Error::IdentityFailed(format!("degree {p} is not integral at q={q}")));
            }
            Ok(v.to_integer())
        };
        Ok(NumericProfile {
            d1s: ev(&self.d1s)?,
            d1ns: ev(&self.d1ns)?,
            d2s: ev(&self.d2s)?,
            d2ns: ev(&self.d2ns)?,
        })
    }

    pub fn entries(&self) -> [&LaurentPoly; 4] {
        [&self.d1s, &self.d1ns, &self.d2s, &self.d2ns]
    }
}

impl fmt::Display for BidegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d1s, self.d1ns, self.d2s, self.d2ns)
    }
}

/// The correspondences with closed-form degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Correspondence {
    T(usize),
    Phi(usize),
    Psi(usize),
    /// `Q^{−i(j−i)} Ψ_i Φ_{j−i}`.
    Summand { i: usize, j: usize },
    SiegelPhi(usize),
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Correspondence::T(j) => write!(f, "T{j}"),
            Correspondence::Phi(i) => write!(f, "Phi{i}"),
            Correspondence::Psi(i) => write!(f, "Psi{i}"),
            Correspondence::Summand { i, j } => write!(f, "Psi{i}*Phi{}", j - i),
            Correspondence::SiegelPhi(i) => write!(f, "SiegelPhi{i}"),
        }
    }
}

fn out_of_range(what: &'static str, index: usize, max: usize) -> Error {
    Error::IndexOutOfRange {
        what,
        index: index as i64,
        min: 0,
        max: max as i64,
    }
}

/// First-projection degrees of `Ψ_a Φ_b`: separable `𝔤(a,n)𝔤(b,r−n)`,
/// inseparable `Q^{b(n−a)}`.
fn d1_summand(r: usize, n: usize, a: usize, b: usize) -> (LaurentPoly, LaurentPoly) {
    (&gauss(a, n) * &gauss(b, r - n), qpow((b * (n - a)) as i64))
}

/// Identifies the dual of `Ψ_a Φ_b` as a Levi summand by computing it in the
/// quotient Hecke algebra.
fn dual_summand(r: usize, n: usize, a: usize, b: usize) -> Result<(usize, usize)> {
    let ctx = GlContext::new(r, n, true)?;
    let e = levi_summand(&ctx, a, a + b)?;
    let expr = express_in_levi_generators(&dual(&e)?)?;
    if expr.len() != 1 {
        return Err(Error::IdentityFailed(format!("dual of Psi{a}*Phi{b} is not a monomial: {expr}")));
    }
    let (mono, _) = expr.leading_term().expect("nonzero");
    let m = r - n;
    let mut phi = None;
    let mut psi = None;
    for (idx, &e) in mono[..r].iter().enumerate() {
        match e {
            0 => {}
            1 if idx < m && phi.is_none() => phi = Some(idx + 1),
            1 if idx >= m && psi.is_none() => psi = Some(idx - m + 1),
            _ => {
                return Err(Error::IdentityFailed(format!(
                    "dual of Psi{a}*Phi{b} is not a single summand: {expr}"
                )))
            }
        }
    }
    Ok((psi.unwrap_or(0), phi.unwrap_or(0)))
}

fn gl_summand_profile(r: usize, n: usize, a: usize, b: usize) -> Result<BidegreeProfile> {
    let (d1s, d1ns) = d1_summand(r, n, a, b);
    // d₂(C) = d₁(Ĉ)
    let (da, db) = dual_summand(r, n, a, b)?;
    let (d2s, d2ns) = d1_summand(r, n, da, db);
    Ok(BidegreeProfile { d1s, d1ns, d2s, d2ns })
}

/// Closed-form profile. `rank` is `r` for `GL_r` and `g` for Siegel.
///
/// Second-projection degrees of Levi elements come from the first-projection
/// formula applied to the dual correspondence, the dual being computed in
/// the Hecke algebra.
pub fn profile(c: Correspondence, rank: usize, n: usize) -> Result<BidegreeProfile> {
    let r = rank;
    if let Correspondence::SiegelPhi(i) = c {
        let g = rank;
        if i > g {
            return Err(out_of_range("Siegel Phi index", i, g));
        }
        let s = gauss(i, g);
        return Ok(BidegreeProfile {
            d1s: s.clone(),
            d1ns: qpow(((g + 1 - i) * (g - i) / 2) as i64),
            d2s: s,
            d2ns: qpow(((i + 1) * i / 2) as i64),
        });
    }
    if r == 0 || n > r {
        return Err(Error::InvalidParameter(format!("need 0 ≤ n ≤ r and r ≥ 1, got r={r}, n={n}")));
    }
    match c {
        Correspondence::T(j) => {
            if j > r {
                return Err(out_of_range("T index", j, r));
            }
            let s = gauss(j, r);
            Ok(BidegreeProfile {
                d1s: s.clone(),
                d1ns: qpow(0),
                d2s: s,
                d2ns: qpow(0),
            })
        }
        Correspondence::Phi(i) => {
            if i > r - n {
                return Err(out_of_range("Phi index", i, r - n));
            }
            gl_summand_profile(r, n, 0, i)
        }
        Correspondence::Psi(i) => {
            if i > n {
                return Err(out_of_range("Psi index", i, n));
            }
            gl_summand_profile(r, n, i, 0)
        }
        Correspondence::Summand { i, j } => {
            if j > r || i > j.min(n) || j - i > r - n {
                return Err(Error::InvalidParameter(format!("no summand Psi{i}*Phi(j-i) for j={j}, r={r}, n={n}")));
            }
            gl_summand_profile(r, n, i, j - i)
        }
        Correspondence::SiegelPhi(_) => unreachable!(),
    }
}

/// One named check of a consistency report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub checks: Vec<Check>,
}

impl ConsistencyReport {
    fn push(&mut self, name: String, lhs: &LaurentPoly, rhs: &LaurentPoly) {
        let passed = lhs == rhs;
        let detail = if passed { lhs.to_string() } else { format!("{lhs} != {rhs}") };
        self.checks.push(Check { name, passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Symbolic consistency of the degree formulas for `GL_r`, `M_{r−n,n}`.
pub fn consistency_report(r: usize, n: usize) -> Result<ConsistencyReport> {
    let m = r - n;
    let mut rep = ConsistencyReport::default();
    for i in 0..=n {
        for b in 0..=m {
            let c = profile(Correspondence::Summand { i, j: i + b }, r, n)?;
            // (3.7): β₂ = Q^{ib} 𝔠 and (3.9): d₁ⁿˢ(β₂) = Q^{nb}
            rep.push(
                format!("beta2 r={r} n={n} Psi{i}*Phi{b}"),
                &(&c.d1ns * &qpow((i * b) as i64)),
                &qpow((n * b) as i64),
            );
            // multiplicativity of β₂-degrees on Ψ_i · Φ_b
            let psi = profile(Correspondence::Psi(i), r, n)?;
            let phi = profile(Correspondence::Phi(b), r, n)?;
            rep.push(
                format!("multiplicative r={r} n={n} Psi{i}*Phi{b}"),
                &(&psi.d1ns * &phi.d1ns),
                &(&c.d1ns * &qpow((i * b) as i64)),
            );
            rep.push(
                format!("separable product r={r} n={n} Psi{i}*Phi{b}"),
                &(&psi.d1s * &phi.d1s),
                &c.d1s,
            );
        }
    }
    for j in 0..=r {
        let t = profile(Correspondence::T(j), r, n)?;
        let mut d1 = LaurentPoly::zero(&qvars());
        let mut d2 = LaurentPoly::zero(&qvars());
        for i in 0..=j.min(n) {
            if j - i > m {
                continue;
            }
            let c = profile(Correspondence::Summand { i, j }, r, n)?;
            d1 = &d1 + &c.d1();
            d2 = &d2 + &c.d2();
        }
        rep.push(format!("partition d1 r={r} n={n} T{j}"), &d1, &t.d1());
        rep.push(format!("partition d2 r={r} n={n} T{j}"), &d2, &t.d2());
        let dual_t = profile(Correspondence::T(r - j), r, n)?;
        rep.push(format!("duality r={r} T{j}"), &t.swapped().d1(), &dual_t.d2());
    }
    // (1.2.6a): d_i(Ĉ) = d_î(C), with Φ̂_i ∝ Ψ_n Φ_{m−i} and Ψ̂_i ∝ Ψ_{n−i} Φ_m
    for i in 0..=m {
        let p = profile(Correspondence::Phi(i), r, n)?.swapped();
        let hat = profile(Correspondence::Summand { i: n, j: n + m - i }, r, n)?;
        rep.push(format!("duality r={r} n={n} Phi{i} d1"), &p.d1s, &hat.d1s);
        rep.push(format!("duality r={r} n={n} Phi{i} d1ns"), &p.d1ns, &hat.d1ns);
        rep.push(format!("duality r={r} n={n} Phi{i} d2ns"), &p.d2ns, &hat.d2ns);
    }
    for i in 0..=n {
        let p = profile(Correspondence::Psi(i), r, n)?.swapped();
        let hat = profile(Correspondence::Summand { i: n - i, j: n - i + m }, r, n)?;
        rep.push(format!("duality r={r} n={n} Psi{i} d1"), &p.d1s, &hat.d1s);
        rep.push(format!("duality r={r} n={n} Psi{i} d1ns"), &p.d1ns, &hat.d1ns);
        rep.push(format!("duality r={r} n={n} Psi{i} d2ns"), &p.d2ns, &hat.d2ns);
    }
    let frob = profile(Correspondence::Psi(n), r, n)?;
    rep.push(format!("frobenius d2ns r={r} n={n}"), &frob.d2ns, &qpow((n * m) as i64));
    rep.push(format!("frobenius d2s r={r} n={n}"), &frob.d2s, &qpow(0));
    if n > 0 && m > 0 {
        let phi_top = profile(Correspondence::Phi(m), r, n)?;
        rep.push(format!("dual Phi{m} = fr r={r} n={n}"), &phi_top.swapped().d1(), &frob.d1());
    }
    if n == 1 {
        // the n = 1 statements against the general-n ones
        let psi1 = profile(Correspondence::Psi(1), r, 1)?;
        rep.push(format!("n=1 Psi1 d1 r={r}"), &psi1.d1(), &qpow(0));
        rep.push(format!("n=1 Psi1 d2ns r={r}"), &psi1.d2ns, &qpow(r as i64 - 1));
        for i in 0..r {
            let phi = profile(Correspondence::Phi(i), r, 1)?;
            rep.push(format!("n=1 Phi{i} d1s r={r}"), &phi.d1s, &gauss(i, r - 1));
            rep.push(format!("n=1 Phi{i} d1ns r={r}"), &phi.d1ns, &qpow(i as i64));
            rep.push(format!("n=1 Phi{i} d2ns r={r}"), &phi.d2ns, &qpow(0));
            let s = profile(Correspondence::Summand { i: 1, j: i + 1 }, r, 1)?;
            rep.push(format!("n=1 fr*Phi{i} d1ns r={r}"), &s.d1ns, &qpow(0));
            rep.push(format!("n=1 fr*Phi{i} d2s r={r}"), &s.d2s, &gauss(i, r - 1));
            rep.push(format!("n=1 fr*Phi{i} d2ns r={r}"), &s.d2ns, &qpow((r - 1 - i) as i64));
        }
    }
    Ok(rep)
}

/// One comparison of a closed-form degree with a brute-force census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusComparison {
    pub label: String,
    pub formula: BigInt,
    pub census: BigInt,
}

impl CensusComparison {
    pub fn matches(&self) -> bool {
        self.formula == self.census
    }
}

/// Compares `d₁ˢ`, `d₁ⁿˢ` of every summand with the classes and fibers of the
/// `GL` census, and checks the twisted multiplicativity
/// `d₁ⁿˢ(Ψ_i) d₁ⁿˢ(Φ_b) = Q^{ib} d₁ⁿˢ(Ψ_i Φ_b)` on the census fibers.
pub fn compare_with_census(r: usize, n: usize, q: usize) -> Result<Vec<CensusComparison>> {
    let field = PrimePowerField::prime(q)?;
    let point = ModelPoint::ordinary(field, r, n)?;
    let mut fibers: std::collections::BTreeMap<(usize, usize), BigInt> = Default::default();
    let mut out = Vec::new();
    for j in 0..=r {
        let cen = census(&point, j, DEFAULT_BUDGET)?;
        for row in &cen.rows {
            let i = row.i;
            let p = profile(Correspondence::Summand { i, j }, r, n)?.at(q as u64)?;
            out.push(CensusComparison {
                label: format!("r={r} n={n} q={q} j={j} i={i} classes"),
                formula: p.d1s.clone(),
                census: BigInt::from(row.classes),
            });
            let fiber = BigInt::from(row.fiber.unwrap_or(0));
            out.push(CensusComparison {
                label: format!("r={r} n={n} q={q} j={j} i={i} fiber"),
                formula: p.d1ns.clone(),
                census: fiber.clone(),
            });
            fibers.insert((i, j - i), fiber);
        }
    }
    for (&(i, b), f) in &fibers {
        let (Some(fpsi), Some(fphi)) = (fibers.get(&(i, 0)), fibers.get(&(0, b))) else {
            continue;
        };
        let twist = BigInt::from(q).pow((i * b) as u32);
        out.push(CensusComparison {
            label: format!("r={r} n={n} q={q} multiplicative Psi{i}*Phi{b}"),
            formula: fpsi * fphi,
            census: twist * f,
        });
    }
    Ok(out)
}

/// `Σ_i 𝔤(i,g) Q^{(g+1−i)(g−i)/2}`, the total first degree of Siegel `T_p`.
pub fn siegel_degree_sum(g: usize) -> LaurentPoly {
    (0..=g).fold(LaurentPoly::zero(&qvars()), |acc, i| {
        let p = profile(Correspondence::SiegelPhi(i), g, 0).expect("index in range");
        &acc + &p.d1()
    })
}

/// `∏_{i=1}^{g} (Q^i + 1)`.
pub fn lagrangian_count_formula(g: usize) -> LaurentPoly {
    (1..=g).fold(qpow(0), |acc, i| &acc * &(&qpow(i as i64) + &qpow(0)))
}

/// `(element, d₁ˢ, d₁ⁿˢ, d₂ˢ, d₂ⁿˢ)` rows for all `GL` correspondences of `(r, n)`.
pub fn gl_table(r: usize, n: usize) -> Result<Vec<(Correspondence, BidegreeProfile)>> {
    let mut rows = Vec::new();
    for j in 0..=r {
        rows.push((Correspondence::T(j), profile(Correspondence::T(j), r, n)?));
    }
    for i in 0..=r - n {
        rows.push((Correspondence::Phi(i), profile(Correspondence::Phi(i), r, n)?));
    }
    for i in 0..=n {
        rows.push((Correspondence::Psi(i), profile(Correspondence::Psi(i), r, n)?));
    }
    for j in 0..=r {
        for i in (0..=j.min(n)).rev() {
            if j - i <= r - n {
                let c = Correspondence::Summand { i, j };
                rows.push((c, profile(c, r, n)?));
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(p: &BidegreeProfile) -> String {
        p.to_string()
    }

    #[test]
    fn closed_form_examples() {
        for r in 2..=6 {
            let p = profile(Correspondence::Psi(1), r, 1).unwrap();
            assert_eq!(sym(&p), format!("(1, 1, 1, Q^{})", r - 1).replace("Q^1)", "Q)"));
        }
        let p = profile(Correspondence::Summand { i: 1, j: 2 }, 4, 2).unwrap().at(2).unwrap();
        assert_eq!((p.d1s, p.d1ns), (BigInt::from(9), BigInt::from(2)));
        let p = profile(Correspondence::SiegelPhi(2), 2, 0).unwrap().at(2).unwrap();
        assert_eq!(p.to_string(), "(1, 1, 1, 8)");
        let p = profile(Correspondence::SiegelPhi(0), 1, 0).unwrap().at(3).unwrap();
        assert_eq!(p.to_string(), "(1, 3, 1, 1)");
    }

    #[test]
    fn d2_closed_form_oracle() {
        // d₂ of Ψ_a Φ_b written out directly: (𝔤(a,n)𝔤(b,m), Q^{a(m−b)})
        for r in 1..=5 {
            for n in 0..=r {
                let m = r - n;
                for a in 0..=n {
                    for b in 0..=m {
                        let p = profile(Correspondence::Summand { i: a, j: a + b }, r, n).unwrap();
                        assert_eq!(p.d2s, &gauss(a, n) * &gauss(b, m));
                        assert_eq!(p.d2ns, qpow((a * (m - b)) as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn vandermonde_example() {
        // r=4, n=2, j=2: Q^4 + 9Q... at Q=2 gives 16 + 18 + 1
        let rows: Vec<BigInt> = (0..=2)
            .map(|i| profile(Correspondence::Summand { i, j: 2 }, 4, 2).unwrap().at(2).unwrap().d1())
            .collect();
        assert_eq!(rows, vec![BigInt::from(16), BigInt::from(18), BigInt::from(1)]);
    }

    #[test]
    fn reports_pass() {
        for r in 1..=4 {
            for n in 0..=r {
                let rep = consistency_report(r, n).unwrap();
                assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn census_agreement_small() {
        for c in compare_with_census(3, 1, 2).unwrap() {
            assert!(c.matches(), "{c:?}");
        }
    }

    #[test]
    fn siegel_sum_is_lagrangian_count() {
        for g in 0..=4 {
            assert_eq!(siegel_degree_sum(g), lagrangian_count_formula(g));
        }
    }
}
