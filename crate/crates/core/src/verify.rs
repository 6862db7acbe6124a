//! Invariant suites behind `hecke verify`. Reports contain no timings, so
//! equal parameters give byte-identical output.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::degrees::{compare_with_census, consistency_report, lagrangian_count_formula, siegel_degree_sum};
use crate::error::{Error, Result};
use crate::finvec::{
    count_lagrangian, enumerate_subspaces, gaussian_binomial_symbolic, gaussian_count, q_vandermonde_defect,
    PrimePowerField, DEFAULT_BUDGET,
};
use crate::frobchar::{closed_form_n1, duality_maps_roots, hecke_charpoly, langlands_oracle_check};
use crate::hecke_gl::{
    dual, levi_expand, satake_phi, satake_psi, satake_t, GlContext, HeckeElement, Level,
};
use crate::hodge::{siegel_hodge, unitary_hodge};
use crate::motive_inv::{enumerate_invariants, to_weights};
use crate::poly::{elementary_symmetric, int, is_invariant, rat, sym_reduce, Action, LaurentPoly, VarSet};
use crate::redsim::{census, nonordinary_census, ModelPoint};
use crate::siegel::{
    check_hat_identities, satake_phi as siegel_phi, satake_tp, siegel_frob_charpoly, siegel_profile, SiegelContext,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Poly,
    Hecke,
    Siegel,
    Geometry,
    Langlands,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Poly, Suite::Hecke, Suite::Siegel, Suite::Geometry, Suite::Langlands];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Poly => "poly",
            Suite::Hecke => "hecke",
            Suite::Siegel => "siegel",
            Suite::Geometry => "geometry",
            Suite::Langlands => "langlands",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(Suite::Poly),
            "hecke" => Ok(Suite::Hecke),
            "siegel" => Ok(Suite::Siegel),
            "geometry" => Ok(Suite::Geometry),
            "langlands" => Ok(Suite::Langlands),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyLine {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub conjectural: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<VerifyLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.lines.len(),
            "failures": self.failures().count(),
            "lines": self.lines.iter().map(|l| json!({
                "suite": l.suite,
                "name": l.name,
                "passed": l.passed,
                "conjectural": l.conjectural,
                "detail": l.detail,
            })).collect::<Vec<_>>(),
        })
    }

    fn check(&mut self, suite: &'static str, name: impl Into<String>, outcome: Result<String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.lines.push(VerifyLine {
            suite,
            name: name.into(),
            passed,
            conjectural: false,
            detail,
        });
    }

    fn conjecture(&mut self, suite: &'static str, name: impl Into<String>, outcome: Result<String>) {
        self.check(suite, name, outcome);
        if let Some(l) = self.lines.last_mut() {
            l.conjectural = true;
        }
    }

    fn extend(&mut self, other: VerifyReport) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            let conj = if l.conjectural { " [CONJECTURAL]" } else { "" };
            writeln!(f, "{tag} {} {}{conj}: {}", l.suite, l.name, l.detail)?;
        }
        let fails = self.failures().count();
        writeln!(f, "summary: {} checks, {} failed", self.lines.len(), fails)
    }
}

fn ensure(cond: bool, detail: impl Into<String>, failure: impl FnOnce() -> String) -> Result<String> {
    if cond {
        Ok(detail.into())
    } else {
        Err(Error::IdentityFailed(failure()))
    }
}

pub fn run_suite(suite: Suite, max_r: usize, seed: u64) -> Result<VerifyReport> {
    if max_r == 0 {
        return Err(Error::InvalidParameter("max-r must be at least 1".into()));
    }
    Ok(match suite {
        Suite::Poly => poly_suite(max_r, seed),
        Suite::Hecke => hecke_suite(max_r),
        Suite::Siegel => siegel_suite(max_r),
        Suite::Geometry => geometry_suite(max_r),
        Suite::Langlands => langlands_suite(max_r, seed),
        Suite::All => {
            let mut rep = VerifyReport::default();
            for s in Suite::ALL {
                rep.extend(run_suite(s, max_r, seed)?);
            }
            rep
        }
    })
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &Arc<VarSet>) -> LaurentPoly {
    let arity = vars.arity();
    let terms = (0..rng.gen_range(1..=4)).map(|_| {
        let m: Vec<i32> = (0..arity).map(|_| rng.gen_range(-2..=2)).collect();
        (m, rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
    });
    LaurentPoly::from_terms(vars, terms.collect::<Vec<_>>())
}

fn random_symmetric(rng: &mut ChaCha8Rng, vars: &Arc<VarSet>, r: usize) -> Result<LaurentPoly> {
    let block: Vec<usize> = (0..r).collect();
    let mut acc = LaurentPoly::zero(vars);
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = LaurentPoly::constant(vars, int(rng.gen_range(-3..=3)));
        for _ in 0..rng.gen_range(0..=3) {
            term = &term * &elementary_symmetric(vars, &block, rng.gen_range(1..=r))?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

pub fn poly_suite(max_r: usize, seed: u64) -> VerifyReport {
    const S: &str = "poly";
    let mut rep = VerifyReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarSet::gl(3);
    let trials = 50;
    let mut bad = None;
    for t in 0..trials {
        let (a, b, c) = (random_poly(&mut rng, &vars), random_poly(&mut rng, &vars), random_poly(&mut rng, &vars));
        let ok = &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &(&a + &b) - &b == a;
        if !ok && bad.is_none() {
            bad = Some(t);
        }
    }
    rep.check(
        S,
        "ring axioms",
        ensure(bad.is_none(), format!("{trials} random triples"), || format!("trial {bad:?}")),
    );

    let mut bad = None;
    for t in 0..trials {
        let (a, b) = (random_poly(&mut rng, &vars), random_poly(&mut rng, &vars));
        let point: Vec<_> = (0..vars.arity()).map(|_| rat(rng.gen_range(1..=9), rng.gen_range(1..=5))).collect();
        let ev = |p: &LaurentPoly| p.evaluate_with(|i| Some(point[i].clone()));
        let ok = match (ev(&a), ev(&b), ev(&(&a * &b)), ev(&(&a + &b))) {
            (Ok(x), Ok(y), Ok(xy), Ok(s)) => &x * &y == xy && &x + &y == s,
            _ => false,
        };
        if !ok && bad.is_none() {
            bad = Some(t);
        }
    }
    rep.check(
        S,
        "evaluation homomorphism",
        ensure(bad.is_none(), format!("{trials} random pairs"), || format!("trial {bad:?}")),
    );

    for r in 1..=max_r {
        let vars = VarSet::gl(r);
        let block: Vec<usize> = (0..r).collect();
        let outcome = (|| -> Result<String> {
            for _ in 0..10 {
                let p = random_symmetric(&mut rng, &vars, r)?;
                let form = sym_reduce(&p, &block)?;
                if form.substitute_back() != p {
                    return Err(Error::IdentityFailed(format!("round trip failed on {p}")));
                }
            }
            let u1 = LaurentPoly::var(&vars, 0);
            if r > 1 && sym_reduce(&u1, &block).is_ok() {
                return Err(Error::IdentityFailed("U1 accepted as symmetric".into()));
            }
            Ok("10 random symmetric polynomials".into())
        })();
        rep.check(S, format!("sym_reduce round trip r={r}"), outcome);
    }

    let outcome = (|| -> Result<String> {
        let c = SiegelContext::new(2)?;
        let phi1 = siegel_phi(&c, 1)?;
        let tp = satake_tp(&c)?;
        ensure(
            is_invariant(tp.image(), &Action::SiegelWeyl(2)).holds()
                && is_invariant(phi1.image(), &Action::SiegelLevi(2)).holds()
                && !is_invariant(phi1.image(), &Action::SiegelWeyl(2)).holds(),
            "T_p under W_G; Phi1 under S_g only",
            || "Siegel invariance pattern".into(),
        )
    })();
    rep.check(S, "Siegel invariance g=2", outcome);
    rep
}

/// Duality identities in the quotient: `T̂_i = T_{r−i}`, `Ψ_n Φ_{r−n} = Q^{n(r−n)}`,
/// `Φ̂_i = Q^{−n(r−n−i)} Ψ_n Φ_{r−n−i}`, `Ψ̂_i = Q^{−(n−i)(r−n)} Ψ_{n−i} Φ_{r−n}`,
/// and involutivity.
pub fn duality_checks(r: usize, n: usize) -> Result<String> {
    let c = GlContext::new(r, n, true)?;
    let m = r - n;
    let fail = |what: String| Err(Error::IdentityFailed(what));
    let mut count = 0;
    for i in 0..=r {
        let t = satake_t(&c, i)?;
        if dual(&t)? != satake_t(&c, r - i)? {
            return fail(format!("dual(T{i}) != T{}", r - i));
        }
        if dual(&dual(&t)?)? != t {
            return fail(format!("dual not involutive on T{i}"));
        }
        count += 2;
    }
    let fr = satake_psi(&c, n)?;
    let top = fr.mul(&satake_phi(&c, m)?)?;
    let q_nm = HeckeElement::one(&c).scale_q(1, (n * m) as i32);
    if top.image() != q_nm.image() {
        return fail(format!("Psi{n}*Phi{m} = {top}"));
    }
    count += 1;
    for i in 0..=m {
        let phi = satake_phi(&c, i)?;
        let rhs = fr.mul(&satake_phi(&c, m - i)?)?.scale_q(1, -((n * (m - i)) as i32));
        if dual(&phi)?.image() != rhs.image() {
            return fail(format!("dual(Phi{i}) = {} != {rhs}", dual(&phi)?));
        }
        if dual(&dual(&phi)?)? != phi {
            return fail(format!("dual not involutive on Phi{i}"));
        }
        count += 2;
    }
    for i in 0..=n {
        let psi = satake_psi(&c, i)?;
        let rhs = satake_psi(&c, n - i)?.mul(&satake_phi(&c, m)?)?.scale_q(1, -(((n - i) * m) as i32));
        if dual(&psi)?.image() != rhs.image() {
            return fail(format!("dual(Psi{i}) = {} != {rhs}", dual(&psi)?));
        }
        if dual(&dual(&psi)?)? != psi {
            return fail(format!("dual not involutive on Psi{i}"));
        }
        count += 2;
    }
    if m > 0 && n > 0 && dual(&satake_phi(&c, m)?)? != fr {
        return fail(format!("dual(Phi{m}) != fr"));
    }
    if !duality_maps_roots(r, n) {
        return fail("duality does not permute the Frobenius roots".into());
    }
    Ok(format!("{count} identities"))
}

/// `levi_expand` for every `j` (the identity is checked inside), plus the
/// `n = 1` shape `T_j = Q^{−(j−1)} fr Φ_{j−1} + Φ_j`.
pub fn levi_checks(r: usize, n: usize) -> Result<String> {
    let c = GlContext::new(r, n, false)?;
    let mut rendered = Vec::new();
    for j in 0..=r {
        let terms = levi_expand(&c, j)?;
        let sum = terms.iter().try_fold(LaurentPoly::zero(c.vars()), |acc, t| -> Result<LaurentPoly> {
            Ok(&acc + t.element(&c)?.image())
        })?;
        if &sum != satake_t(&c, j)?.image() {
            return Err(Error::IdentityFailed(format!("summands of T{j} do not add up")));
        }
        if n == 1 {
            let mut expected = Vec::new();
            if j >= 1 {
                let q = if j > 1 { format!("Q^-{}*", j - 1) } else { String::new() };
                expected.push(if j > 1 { format!("{q}fr*Phi{}", j - 1) } else { "fr".to_string() });
            }
            if j < r {
                expected.push(if j == 0 { "1".to_string() } else { format!("Phi{j}") });
            }
            let got: Vec<String> = terms.iter().map(|t| t.render(1)).collect();
            if got != expected {
                return Err(Error::IdentityFailed(format!("T{j}: {got:?} vs {expected:?}")));
            }
        }
        rendered.push(terms.len());
    }
    Ok(format!("summand counts {rendered:?}"))
}

pub fn hecke_suite(max_r: usize) -> VerifyReport {
    const S: &str = "hecke";
    let mut rep = VerifyReport::default();
    for r in 1..=max_r {
        for n in 0..=r {
            rep.check(S, format!("levi_expand r={r} n={n}"), levi_checks(r, n));
            rep.check(S, format!("duality r={r} n={n}"), duality_checks(r, n));
            let outcome = consistency_report(r, n).and_then(|c| {
                let fails: Vec<_> = c.failures().map(|f| f.name.clone()).collect();
                ensure(fails.is_empty(), format!("{} checks", c.checks.len()), || fails.join(", "))
            });
            rep.check(S, format!("degrees r={r} n={n}"), outcome);
            let outcome = (0..=r)
                .try_for_each(|j| {
                    let d = q_vandermonde_defect(r, n, j);
                    if d.is_zero() {
                        Ok(())
                    } else {
                        Err(Error::IdentityFailed(format!("j={j}: defect {d}")))
                    }
                })
                .map(|_| format!("j=0..{r}"));
            rep.check(S, format!("q-Vandermonde r={r} n={n}"), outcome);
        }
        let outcome = hecke_charpoly(r, 1).and_then(|p| {
            ensure(p.coeffs() == closed_form_n1(r).as_slice(), p.to_text("X"), || {
                format!("{} differs from the closed form", p.to_text("X"))
            })
        });
        rep.check(S, format!("charpoly closed form r={r} n=1"), outcome);
    }
    rep
}

pub fn siegel_suite(max_r: usize) -> VerifyReport {
    const S: &str = "siegel";
    let mut rep = VerifyReport::default();
    let max_g = max_r.clamp(1, 4);
    for g in 1..=max_g {
        let outcome = SiegelContext::new(g).and_then(|c| {
            check_hat_identities(&c)?;
            let tp = satake_tp(&c)?;
            ensure(tp.level() == Level::G, "hat(T_p)=T_p, hat(Phi_i)=Phi_{g-i}, involution", || {
                "T_p not at level G".into()
            })
        });
        rep.check(S, format!("involution g={g}"), outcome);
        let outcome = SiegelContext::new(g).and_then(|c| siegel_frob_charpoly(&c)).and_then(|cp| {
            let tp = satake_tp(&SiegelContext::new(g)?)?;
            ensure(
                cp.degree() == 1 << g && cp.coeffs[cp.degree() - 1] == -tp.image(),
                format!("degree {}, invariant coefficients", cp.degree()),
                || "X^{2^g-1} coefficient is not -T_p".into(),
            )
        });
        rep.check(S, format!("frobenius charpoly g={g}"), outcome);
        let outcome = (0..=g)
            .try_for_each(|i| {
                let (a, b) = (siegel_profile(g, i)?, siegel_profile(g, g - i)?);
                if a == b.swapped() {
                    Ok(())
                } else {
                    Err(Error::IdentityFailed(format!("Phi{i} profile {a} vs swapped Phi{} {b}", g - i)))
                }
            })
            .map(|_| "d(Phi_i) = swap d(Phi_{g-i})".to_string());
        rep.check(S, format!("degree duality g={g}"), outcome);
        let (sum, count) = (siegel_degree_sum(g), lagrangian_count_formula(g));
        rep.check(
            S,
            format!("degree sum g={g}"),
            ensure(sum == count, count.to_string(), || format!("{sum} != {count}")),
        );
    }
    rep
}

pub fn subspace_count_check(r: usize, j: usize, q: usize) -> Result<String> {
    let field = PrimePowerField::prime(q)?;
    let found = enumerate_subspaces(r, j, &field, DEFAULT_BUDGET)?.len() as u128;
    let expected = gaussian_count(j, r, q);
    let symbolic = gaussian_binomial_symbolic(&VarSet::q_only(), j as i64, r as i64)
        .evaluate_with(|_| Some(int(q as i64)))?;
    ensure(
        found == expected && symbolic == int(expected as i64),
        format!("{found}"),
        || format!("enumerated {found}, formula {expected}, symbolic {symbolic}"),
    )
}

pub fn census_check(r: usize, n: usize, j: usize, q: usize) -> Result<String> {
    let point = ModelPoint::ordinary(PrimePowerField::prime(q)?, r, n)?;
    let c = census(&point, j, DEFAULT_BUDGET)?;
    c.check()?;
    Ok(format!("{} types, total {}", c.rows.len(), c.total))
}

pub fn siegel_geometry_check(g: usize, p: usize) -> Result<String> {
    let field = PrimePowerField::prime(p)?;
    let found = count_lagrangian(g, &field, DEFAULT_BUDGET)?;
    let product: u128 = (1..=g as u32).map(|i| (p as u128).pow(i) + 1).product();
    let degree_sum = siegel_degree_sum(g).evaluate_with(|_| Some(int(p as i64)))?;
    if found != product || degree_sum != int(product as i64) {
        return Err(Error::IdentityFailed(format!(
            "enumerated {found}, product {product}, degree sum {degree_sum}"
        )));
    }
    let c = census(&ModelPoint::siegel(field, g)?, g, DEFAULT_BUDGET)?;
    c.check()?;
    Ok(format!("{found} Lagrangians, {} intersection types", c.rows.len()))
}

pub fn geometry_suite(max_r: usize) -> VerifyReport {
    const S: &str = "geometry";
    let mut rep = VerifyReport::default();
    let small = max_r.min(4);
    for q in [2, 3] {
        for r in 1..=small {
            for j in 0..=r {
                rep.check(S, format!("subspaces r={r} j={j} q={q}"), subspace_count_check(r, j, q));
            }
        }
    }
    if max_r >= 5 {
        for j in [1, 2] {
            rep.check(S, format!("subspaces r=5 j={j} q=2"), subspace_count_check(5, j, 2));
        }
    }
    for q in [2, 3] {
        for r in 1..=small {
            for n in 0..=r {
                for j in 0..=r {
                    rep.check(S, format!("census r={r} n={n} j={j} q={q}"), census_check(r, n, j, q));
                }
            }
        }
    }
    for r in 1..=small.min(3) {
        for n in 0..=r {
            let outcome = compare_with_census(r, n, 2).and_then(|cs| {
                let bad: Vec<_> = cs.iter().filter(|c| !c.matches()).map(|c| c.label.clone()).collect();
                ensure(bad.is_empty(), format!("{} comparisons", cs.len()), || bad.join(", "))
            });
            rep.check(S, format!("degrees vs census r={r} n={n} q=2"), outcome);
        }
    }
    for g in 1..=max_r.min(2) {
        for p in [2, 3] {
            rep.check(S, format!("lagrangians g={g} p={p}"), siegel_geometry_check(g, p));
        }
    }
    let outcome = (|| -> Result<String> {
        let point = ModelPoint::unitary(PrimePowerField::prime(2)?, 3, 1)?;
        let c = census(&point, 1, DEFAULT_BUDGET)?;
        c.check()?;
        Ok(format!("{} types over F_4, total {}", c.rows.len(), c.total))
    })();
    rep.conjecture(S, "unitary census r=3 n=1 p=2", outcome);
    let outcome = (|| -> Result<String> {
        let field = PrimePowerField::prime(2)?;
        let a = nonordinary_census(&ModelPoint::nonordinary(field.clone(), 3)?, DEFAULT_BUDGET)?;
        let b = nonordinary_census(&ModelPoint::quadratic(field, 4)?, DEFAULT_BUDGET)?;
        let total_a = a.inside as u128 + a.outside.values().map(|&v| v as u128).sum::<u128>();
        let total_b = b.inside as u128 + b.outside.values().map(|&v| v as u128).sum::<u128>();
        ensure(
            total_a == a.total && total_b == b.total,
            format!(
                "non-ordinary r=3: {} in D, {} span classes; quadratic r=4: {} in D, {} span classes",
                a.inside,
                a.outside.len(),
                b.inside,
                b.outside.len()
            ),
            || "lines not partitioned".into(),
        )
    })();
    rep.conjecture(S, "non-ordinary classification q=2", outcome);
    for g in 1..=8 {
        let outcome = siegel_hodge(g).and_then(|h| {
            ensure(h.total() == 1 << g && h.is_symmetric(), h.to_string(), || format!("{h}"))
        });
        rep.check(S, format!("siegel hodge g={g}"), outcome);
    }
    for r in 1..=max_r.max(1) {
        for n in 1..=r {
            let outcome = unitary_hodge(r, n).and_then(|h| {
                let total = gaussian_count(n, r, 1);
                let mirror = if n < r { unitary_hodge(r, r - n)?.entries == h.entries } else { true };
                ensure(h.total() == total && h.is_symmetric() && mirror, h.to_string(), || format!("{h}"))
            });
            rep.conjecture(S, format!("unitary hodge r={r} n={n}"), outcome);
        }
    }
    for r in 1..=max_r {
        for n in 0..=r {
            let outcome = enumerate_invariants(r, n, 3).and_then(|invs| {
                for inv in &invs {
                    let w: i64 = to_weights(inv)?.iter().sum();
                    if w != -(n as i64) {
                        return Err(Error::IdentityFailed(format!("{inv}: weight sum {w}")));
                    }
                }
                let nu1: Vec<_> = invs.iter().filter(|i| i.nu == 1).map(|i| i.k.clone()).collect();
                ensure(nu1 == vec![vec![r - n, n]], format!("{} tuples", invs.len()), || format!("nu=1: {nu1:?}"))
            });
            rep.check(S, format!("invariants r={r} n={n}"), outcome);
        }
    }
    rep
}

pub fn langlands_suite(max_r: usize, seed: u64) -> VerifyReport {
    const S: &str = "langlands";
    let mut rep = VerifyReport::default();
    for r in 1..=max_r {
        for n in 1..=r {
            let outcome = langlands_oracle_check(r, n, 200, seed).and_then(|o| {
                ensure(o.passed(), o.summary(), || o.summary())
            });
            rep.check(S, format!("oracle r={r} n={n}"), outcome);
        }
    }
    rep
}
