//! The Hecke polynomial `P_{r,n}`: characteristic polynomial of `fr = Ψ_n`
//! over the image of the `GL_r` Hecke algebra, and a numeric eigenvalue oracle.

use itertools::Itertools;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke_gl::{
    dual_poly, express_in_t_generators, from_t_generators, normal_form_poly, t_generator_vars, triangular, GlContext,
    HeckeElement, Level,
};
use crate::poly::{int, rat, rat_pow, LaurentPoly, Rational, VarSet};

/// Monic polynomial in `X` whose coefficients are polynomials in `T1..Tr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckePolynomial {
    r: usize,
    n: usize,
    /// Constant term first.
    coeffs: Vec<LaurentPoly>,
}

pub fn charpoly_degree(r: usize, n: usize) -> usize {
    binomial(r, n)
}

/// `Q^{−n(n−1)/2} U_I` for every `n`-subset `I`, in lexicographic order of `I`.
pub fn frobenius_roots(r: usize, n: usize) -> Vec<LaurentPoly> {
    let vars = VarSet::gl(r);
    let qe = -triangular(n as i64) as i32;
    (0..r)
        .combinations(n)
        .map(|subset| {
            let mut m = vec![0; r + 1];
            for i in subset {
                m[i] = 1;
            }
            m[r] = qe;
            LaurentPoly::monomial(&vars, m, int(1))
        })
        .collect()
}

/// Coefficients (constant first) of `∏ (X − root)` over Laurent polynomials.
pub fn expand_symbolic(roots: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let vars = roots.first().map(|p| p.vars().clone()).unwrap_or_else(VarSet::q_only);
    let mut coeffs = vec![LaurentPoly::one(&vars)];
    for root in roots {
        let mut next = vec![LaurentPoly::zero(&vars); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(root * c);
        }
        coeffs = next;
    }
    coeffs
}

/// Coefficients (constant first) of `∏ (X − root)` over the rationals.
pub fn expand_numeric(roots: &[Rational]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for root in roots {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= root * c;
        }
        coeffs = next;
    }
    coeffs
}

/// `P_{r,n} = ∏_{|I|=n} (X − Q^{−n(n−1)/2} U_I)` with coefficients written in
/// `T1..Tr`. Each coefficient is checked to substitute back to the expanded
/// product.
pub fn hecke_charpoly(r: usize, n: usize) -> Result<HeckePolynomial> {
    if r == 0 || n == 0 || n > r {
        return Err(Error::IndexOutOfRange {
            what: "n",
            index: n as i64,
            min: 1,
            max: r as i64,
        });
    }
    let ctx = GlContext::new(r, n, false)?;
    let expanded = expand_symbolic(&frobenius_roots(r, n));
    let coeffs = expanded
        .into_iter()
        .map(|c| express_in_t_generators(&HeckeElement::new(&ctx, Level::G, c)?))
        .collect::<Result<Vec<_>>>()?;
    let p = HeckePolynomial { r, n, coeffs };
    if p.degree() != charpoly_degree(r, n) {
        return Err(Error::IdentityFailed(format!(
            "deg P_({r},{n}) = {} but C({r},{n}) = {}",
            p.degree(),
            charpoly_degree(r, n)
        )));
    }
    Ok(p)
}

/// `(−1)^i Q^{i(i−1)/2} T_i` as the coefficient of `X^{r−i}`: the closed form for `n = 1`.
pub fn closed_form_n1(r: usize) -> Vec<LaurentPoly> {
    let vars = t_generator_vars(r);
    let mut coeffs = vec![LaurentPoly::zero(&vars); r + 1];
    for i in 0..=r {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let mut m = vec![0; r + 1];
        if i > 0 {
            m[i - 1] = 1;
        }
        m[r] = triangular(i as i64) as i32;
        coeffs[r - i] = LaurentPoly::monomial(&vars, m, int(sign));
    }
    coeffs
}

impl HeckePolynomial {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Constant term first.
    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().and_then(LaurentPoly::as_constant) == Some(Rational::one())
    }

    /// Coefficients with `T_i` replaced by Satake images (no quotient).
    pub fn satake_coeffs(&self) -> Result<Vec<LaurentPoly>> {
        let ctx = GlContext::new(self.r, self.n, false)?;
        self.coeffs
            .iter()
            .map(|c| from_t_generators(&ctx, c).map(|h| h.image().clone()))
            .collect()
    }

    /// Numeric coefficients at `T_i = t[i−1]`, `Q = q`.
    pub fn evaluate(&self, t: &[Rational], q: &Rational) -> Result<Vec<Rational>> {
        let qi = self.r;
        self.coeffs
            .iter()
            .map(|c| c.evaluate_with(|i| if i == qi { Some(q.clone()) } else { t.get(i).cloned() }))
            .collect()
    }

    /// `X^3 - T1*X^2 + T2*Q*X - T3*Q^3`; multi-term coefficients are parenthesized.
    pub fn to_text(&self, var: &str) -> String {
        polynomial_text(&self.coeffs, var)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "n": self.n,
            "degree": self.degree(),
            "coeffs": self.coeffs.iter().map(LaurentPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Sign and body of a coefficient; single terms carry their own sign.
/// Renders `Σ c_k X^k` by decreasing `k`, parenthesizing multi-term coefficients.
pub fn polynomial_text(coeffs: &[LaurentPoly], var: &str) -> String {
    let mut out = String::new();
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        let xpart = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let (neg, body) = coefficient_text(c);
        let term = match (body.as_str(), xpart.is_empty()) {
            ("1", false) => xpart,
            (_, true) => body,
            (_, false) => format!("{body}*{xpart}"),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => {
                out.push('-');
                out.push_str(&term);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&term);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&term);
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn coefficient_text(c: &LaurentPoly) -> (bool, String) {
    if c.len() == 1 {
        let (_, coef) = c.leading_term().expect("nonzero");
        if coef.is_negative() {
            return (true, (-c).to_string());
        }
        return (false, c.to_string());
    }
    if c.terms().all(|(_, coef)| coef.is_negative()) {
        return (true, format!("({})", -c));
    }
    (false, format!("({c})"))
}

/// One trial of the eigenvalue oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTrial {
    pub seed: u64,
    pub alphas: Vec<Rational>,
    pub q: Rational,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub r: usize,
    pub n: usize,
    pub seed: u64,
    pub trials: Vec<OracleTrial>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.equal)
    }

    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.equal).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "langlands r={} n={} seed={} trials={} failures={}",
            self.r,
            self.n,
            self.seed,
            self.trials.len(),
            self.failures()
        )
    }
}

fn draw_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-12..=12);
        if num != 0 {
            return rat(num, rng.gen_range(1..=7));
        }
    }
}

/// Compares `P_{r,n}` evaluated at `T_i = q^{−i(i−1)/2} σ_i(α)` with the
/// direct expansion of `∏_{|I|=n}(X − q^{−n(n−1)/2} α_I)`.
///
/// Trial `k` draws from its own generator seeded with `seed + k`.
pub fn langlands_oracle_check(r: usize, n: usize, trials: usize, seed: u64) -> Result<OracleReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial required".into()));
    }
    let p = hecke_charpoly(r, n)?;
    let mut out = Vec::with_capacity(trials);
    for k in 0..trials {
        let trial_seed = seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let mut alphas: Vec<Rational> = Vec::with_capacity(r);
        while alphas.len() < r {
            let a = draw_nonzero(&mut rng);
            if !alphas.contains(&a) {
                alphas.push(a);
            }
        }
        let q = draw_nonzero(&mut rng);
        // a_i = q^{-i(i-1)/2} σ_i(α)
        let sigmas = expand_numeric(&alphas.iter().map(|a| -a).collect::<Vec<_>>());
        let t: Vec<Rational> = (1..=r)
            .map(|i| &sigmas[r - i] * rat_pow(&q, -triangular(i as i64)))
            .collect();
        let via_hecke = p.evaluate(&t, &q)?;
        let twist = rat_pow(&q, -triangular(n as i64));
        let roots: Vec<Rational> = (0..r)
            .combinations(n)
            .map(|s| s.iter().fold(twist.clone(), |acc, &i| acc * &alphas[i]))
            .collect();
        let direct = expand_numeric(&roots);
        out.push(OracleTrial {
            seed: trial_seed,
            alphas,
            q,
            equal: via_hecke == direct,
        });
    }
    Ok(OracleReport {
        r,
        n,
        seed,
        trials: out,
    })
}

/// Whether the duality sends the roots of `P_{r,n}` onto those of `P_{r,r−n}`
/// as multisets of central normal forms.
pub fn duality_maps_roots(r: usize, n: usize) -> bool {
    let normalize = |mut v: Vec<LaurentPoly>| {
        v.sort_by_key(|p| p.to_string());
        v
    };
    let mapped = normalize(
        frobenius_roots(r, n)
            .iter()
            .map(|p| normal_form_poly(r, &dual_poly(r, p)))
            .collect(),
    );
    let target = normalize(frobenius_roots(r, r - n).iter().map(|p| normal_form_poly(r, p)).collect());
    mapped == target
}
