//! Spherical Hecke algebras of `GL_r`, its Levi `M = GL_{r−n} × GL_n` and the
//! torus, represented by Satake images in `Q[U1^±..Ur^±, Q^±]`.
//!
//! `Φ_i` lives on the first block `U1..U_{r−n}`, `Ψ_i` on the last `n`
//! variables, and `Ψ_n` is the Frobenius `fr`. With `quotient` set the central
//! relation `U1⋯Ur = Q^{r(r−1)/2}` is imposed and images are kept in the
//! normal form where every monomial has minimal `U`-exponent zero.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{
    elementary_symmetric, int, is_invariant, sym_reduce, Action, Invariance, LaurentPoly, SymmetricForm, VarSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    G,
    M,
    T,
}

impl Level {
    /// The level of a product or sum: the least symmetric of the two.
    fn meet(self, other: Level) -> Level {
        self.max(other)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::G => "G",
            Level::M => "M",
            Level::T => "T",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GlContext {
    r: usize,
    n: usize,
    quotient: bool,
    vars: Arc<VarSet>,
}

impl PartialEq for GlContext {
    fn eq(&self, other: &Self) -> bool {
        (self.r, self.n, self.quotient) == (other.r, other.n, other.quotient)
    }
}

impl Eq for GlContext {}

pub(crate) fn triangular(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn exp32(e: i64) -> i32 {
    i32::try_from(e).expect("exponent fits in i32")
}

impl GlContext {
    pub fn new(r: usize, n: usize, quotient: bool) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("rank r must be at least 1".into()));
        }
        if n > r {
            return Err(Error::IndexOutOfRange {
                what: "n",
                index: n as i64,
                min: 0,
                max: r as i64,
            });
        }
        Ok(GlContext {
            r,
            n,
            quotient,
            vars: VarSet::gl(r),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size `r − n` of the `Φ` block.
    pub fn m(&self) -> usize {
        self.r - self.n
    }

    pub fn quotient(&self) -> bool {
        self.quotient
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// Same `r, n` with the other choice of quotient.
    pub fn with_quotient(&self, quotient: bool) -> Self {
        GlContext {
            quotient,
            ..self.clone()
        }
    }

    pub fn all_block(&self) -> Vec<usize> {
        (0..self.r).collect()
    }

    pub fn phi_block(&self) -> Vec<usize> {
        (0..self.m()).collect()
    }

    pub fn psi_block(&self) -> Vec<usize> {
        (self.m()..self.r).collect()
    }

    fn action(&self, level: Level) -> Option<Action> {
        match level {
            Level::G => Some(Action::Symmetric(self.all_block())),
            Level::M => Some(Action::Product(self.phi_block(), self.psi_block())),
            Level::T => None,
        }
    }

    fn check_index(&self, what: &'static str, i: usize, max: usize) -> Result<()> {
        if i > max {
            Err(Error::IndexOutOfRange {
                what,
                index: i as i64,
                min: 0,
                max: max as i64,
            })
        } else {
            Ok(())
        }
    }
}

/// Central normal form for `GL_r`: `U^a Q^b ↦ Q^{b + t r(r−1)/2} U^{a − t}`,
/// `t = min a_i`.
pub fn normal_form_poly(r: usize, p: &LaurentPoly) -> LaurentPoly {
    let c = exp32(triangular(r as i64));
    p.map_monomials(|m| {
        let t = *m[..r].iter().min().expect("r ≥ 1");
        let mut out = m.to_vec();
        for e in &mut out[..r] {
            *e -= t;
        }
        out[r] += t * c;
        out
    })
}

/// The torus-level duality `U_j ↦ Q^{r−1} U_j^{−1}` (no normal form applied).
pub fn dual_poly(r: usize, p: &LaurentPoly) -> LaurentPoly {
    let shift = exp32(r as i64 - 1);
    p.map_monomials(|m| {
        let total: i32 = m[..r].iter().sum();
        let mut out: Vec<i32> = m.iter().map(|e| -e).collect();
        out[r] = m[r] + shift * total;
        out
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    ctx: GlContext,
    level: Level,
    image: LaurentPoly,
}

impl HeckeElement {
    /// Checks the invariance demanded by `level` and normalizes in the quotient.
    pub fn new(ctx: &GlContext, level: Level, image: LaurentPoly) -> Result<Self> {
        if **image.vars() != **ctx.vars() {
            return Err(Error::VarSetMismatch(
                image.vars().names().join(","),
                ctx.vars().names().join(","),
            ));
        }
        if let Some(action) = ctx.action(level) {
            if let Invariance::Violated(g) = is_invariant(&image, &action) {
                return Err(Error::NotInvariant(format!(
                    "level {level} image moved by {}",
                    g.describe(ctx.vars())
                )));
            }
        }
        Ok(Self::trusted(ctx, level, image))
    }

    fn trusted(ctx: &GlContext, level: Level, image: LaurentPoly) -> Self {
        let image = if ctx.quotient { normal_form_poly(ctx.r, &image) } else { image };
        HeckeElement {
            ctx: ctx.clone(),
            level,
            image,
        }
    }

    pub fn one(ctx: &GlContext) -> Self {
        Self::trusted(ctx, Level::G, LaurentPoly::one(ctx.vars()))
    }

    pub fn context(&self) -> &GlContext {
        &self.ctx
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn image(&self) -> &LaurentPoly {
        &self.image
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::InvalidParameter(format!(
                "context mismatch: (r={}, n={}, quotient={}) vs (r={}, n={}, quotient={})",
                self.ctx.r, self.ctx.n, self.ctx.quotient, other.ctx.r, other.ctx.n, other.ctx.quotient
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(Self::trusted(&self.ctx, self.level.meet(other.level), &self.image * &other.image))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(Self::trusted(&self.ctx, self.level.meet(other.level), &self.image + &other.image))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(Self::trusted(&self.ctx, self.level.meet(other.level), &self.image - &other.image))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::trusted(&self.ctx, self.level, self.image.pow(e))
    }

    /// Multiplies by the scalar `c Q^e`.
    pub fn scale_q(&self, c: i64, e: i32) -> Self {
        Self::trusted(&self.ctx, self.level, self.image.scale(&int(c)).mul_q_pow(e))
    }

    /// Same element, regarded at a coarser level (`G → M → T`).
    pub fn restrict(&self, level: Level) -> Result<Self> {
        if level < self.level {
            return Err(Error::InvalidParameter(format!("cannot lift a level-{} element to {level}", self.level)));
        }
        Ok(HeckeElement {
            level,
            ..self.clone()
        })
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.image.fmt(f)
    }
}

fn scaled_sigma(ctx: &GlContext, block: &[usize], i: usize) -> LaurentPoly {
    elementary_symmetric(ctx.vars(), block, i)
        .expect("index checked by caller")
        .mul_q_pow(exp32(-triangular(i as i64)))
}

/// `T_i ↦ Q^{−i(i−1)/2} σ_i(U1..Ur)`.
pub fn satake_t(ctx: &GlContext, i: usize) -> Result<HeckeElement> {
    ctx.check_index("T index", i, ctx.r)?;
    Ok(HeckeElement::trusted(ctx, Level::G, scaled_sigma(ctx, &ctx.all_block(), i)))
}

/// `Φ_i ↦ Q^{−i(i−1)/2} σ_i(U1..U_{r−n})`.
pub fn satake_phi(ctx: &GlContext, i: usize) -> Result<HeckeElement> {
    ctx.check_index("Phi index", i, ctx.m())?;
    Ok(HeckeElement::trusted(ctx, Level::M, scaled_sigma(ctx, &ctx.phi_block(), i)))
}

/// `Ψ_i ↦ Q^{−i(i−1)/2} σ_i(U_{r−n+1}..U_r)`.
pub fn satake_psi(ctx: &GlContext, i: usize) -> Result<HeckeElement> {
    ctx.check_index("Psi index", i, ctx.n)?;
    Ok(HeckeElement::trusted(ctx, Level::M, scaled_sigma(ctx, &ctx.psi_block(), i)))
}

/// `Q^{q_exp} Ψ_psi Φ_phi`, one summand of the Levi expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviTerm {
    pub q_exp: i32,
    pub psi: usize,
    pub phi: usize,
}

impl LeviTerm {
    pub fn j(&self) -> usize {
        self.psi + self.phi
    }

    pub fn element(&self, ctx: &GlContext) -> Result<HeckeElement> {
        Ok(satake_psi(ctx, self.psi)?
            .mul(&satake_phi(ctx, self.phi)?)?
            .scale_q(1, self.q_exp))
    }

    /// `Q^-1*fr*Phi1`; `Ψ_n` prints as `fr`.
    pub fn render(&self, n: usize) -> String {
        let mut parts = Vec::new();
        if self.q_exp != 0 {
            parts.push(format!("Q^{}", self.q_exp));
        }
        if self.psi > 0 {
            parts.push(if self.psi == n { "fr".to_string() } else { format!("Psi{}", self.psi) });
        }
        if self.phi > 0 {
            parts.push(format!("Phi{}", self.phi));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// The summand `Q^{−i(j−i)} Ψ_i Φ_{j−i}`.
pub fn levi_summand(ctx: &GlContext, i: usize, j: usize) -> Result<HeckeElement> {
    if i > j {
        return Err(Error::InvalidParameter(format!("summand needs i ≤ j, got i={i}, j={j}")));
    }
    LeviTerm {
        q_exp: exp32(-((i * (j - i)) as i64)),
        psi: i,
        phi: j - i,
    }
    .element(ctx)
}

/// `T_j = Σ_i Q^{−i(j−i)} Ψ_i Φ_{j−i}` over valid pairs, `i` descending.
/// The identity with `satake_t(ctx, j)` is checked on every call.
pub fn levi_expand(ctx: &GlContext, j: usize) -> Result<Vec<LeviTerm>> {
    ctx.check_index("T index", j, ctx.r)?;
    let terms: Vec<LeviTerm> = (0..=j.min(ctx.n))
        .rev()
        .filter(|&i| j - i <= ctx.m())
        .map(|i| LeviTerm {
            q_exp: exp32(-((i * (j - i)) as i64)),
            psi: i,
            phi: j - i,
        })
        .collect();
    let mut total = LaurentPoly::zero(ctx.vars());
    for t in &terms {
        total = &total + t.element(ctx)?.image();
    }
    let expected = satake_t(ctx, j)?;
    let total = if ctx.quotient { normal_form_poly(ctx.r, &total) } else { total };
    if &total != expected.image() {
        return Err(Error::IdentityFailed(format!(
            "Levi expansion of T{j} (r={}, n={}): {total} != {}",
            ctx.r,
            ctx.n,
            expected.image()
        )));
    }
    Ok(terms)
}

pub fn central_normal_form(e: &HeckeElement) -> Result<HeckeElement> {
    if !e.ctx.quotient {
        return Err(Error::NotQuotient);
    }
    Ok(HeckeElement::trusted(&e.ctx, e.level, e.image.clone()))
}

/// The duality involution; defined only in the quotient.
pub fn dual(e: &HeckeElement) -> Result<HeckeElement> {
    if !e.ctx.quotient {
        return Err(Error::NotQuotient);
    }
    Ok(HeckeElement::trusted(&e.ctx, e.level, dual_poly(e.ctx.r, &e.image)))
}

pub fn t_generator_vars(r: usize) -> Arc<VarSet> {
    let names: Vec<String> = (1..=r).map(|i| format!("T{i}")).collect();
    VarSet::named(&names).expect("distinct names")
}

pub fn levi_generator_vars(r: usize, n: usize) -> Arc<VarSet> {
    let mut names: Vec<String> = (1..=r - n).map(|i| format!("Phi{i}")).collect();
    names.extend((1..=n).map(|i| format!("Psi{i}")));
    VarSet::named(&names).expect("distinct names")
}

/// Shift making the block polynomial: `min(0, smallest exponent)`.
fn block_shift(p: &LaurentPoly, block: &[usize]) -> i32 {
    block
        .iter()
        .filter_map(|&b| p.exponent_range(b).map(|(lo, _)| lo))
        .min()
        .unwrap_or(0)
        .min(0)
}

fn shift_block(p: &LaurentPoly, block: &[usize], t: i32) -> LaurentPoly {
    let mut s = vec![0; p.vars().arity()];
    for &b in block {
        s[b] = t;
    }
    p.shift(&s)
}

/// Maps the `Q` slot of `vars` onto the `Q` slot of `target`; other variables
/// must not occur.
fn q_part_to(p: &LaurentPoly, target: &Arc<VarSet>) -> LaurentPoly {
    let q = p.vars().q_index();
    let mut map = vec![0; p.vars().arity()];
    map[q] = target.q_index();
    debug_assert!(p.terms().all(|(m, _)| m[..q].iter().all(|&e| e == 0)));
    p.reembed(target, &map)
}

/// `c Q^{qe} x_idx^e` over `target`.
fn gen_power(target: &Arc<VarSet>, idx: usize, e: i32, qe: i32) -> LaurentPoly {
    let mut m = vec![0; target.arity()];
    m[idx] = e;
    m[target.q_index()] = qe;
    LaurentPoly::monomial(target, m, int(1))
}

/// Images `σ_i ↦ Q^{i(i−1)/2} g_{offset+i}` for `i = 1..k`.
fn sigma_images(target: &Arc<VarSet>, offset: usize, k: usize) -> Vec<LaurentPoly> {
    (1..=k)
        .map(|i| gen_power(target, offset + i - 1, 1, exp32(triangular(i as i64))))
        .collect()
}

/// Reduces `p` over `block` and assembles with `σ_i ↦ images[i−1]`.
fn reduce_block<F>(p: &LaurentPoly, block: &[usize], target: &Arc<VarSet>, images: &[LaurentPoly], coeff: F) -> Result<LaurentPoly>
where
    F: FnMut(&LaurentPoly) -> Result<LaurentPoly>,
{
    let form: SymmetricForm = sym_reduce(p, block)?;
    form.assemble(target, images, coeff)
}

/// Writes a level-`G` element as a Laurent polynomial in `T1..Tr`.
///
/// In the quotient `T_r = 1` and is eliminated. Substituting the generator
/// images back reproduces the element; this is checked.
pub fn express_in_t_generators(e: &HeckeElement) -> Result<LaurentPoly> {
    let ctx = &e.ctx;
    if let Invariance::Violated(g) = is_invariant(&e.image, &Action::Symmetric(ctx.all_block())) {
        return Err(Error::NotInvariant(format!("not S_{}-invariant: moved by {}", ctx.r, g.describe(ctx.vars()))));
    }
    let r = ctx.r;
    let gvars = t_generator_vars(r);
    let block = ctx.all_block();
    let t = block_shift(&e.image, &block);
    let p = shift_block(&e.image, &block, -t);
    let mut expr = reduce_block(&p, &block, &gvars, &sigma_images(&gvars, 0, r), |c| Ok(q_part_to(c, &gvars)))?;
    if t != 0 {
        expr = &expr * &gen_power(&gvars, r - 1, t, t * exp32(triangular(r as i64)));
    }
    if ctx.quotient {
        expr = expr.map_monomials(|m| {
            let mut m = m.to_vec();
            m[r - 1] = 0;
            m
        });
    }
    let back = from_t_generators(ctx, &expr)?;
    if back.image != e.image {
        return Err(Error::IdentityFailed(format!("T-generator round trip: {} != {}", back.image, e.image)));
    }
    Ok(expr)
}

/// Substitutes `T_i ↦ satake_t(ctx, i)` into a polynomial over `T1..Tr`.
pub fn from_t_generators(ctx: &GlContext, expr: &LaurentPoly) -> Result<HeckeElement> {
    let images: Vec<LaurentPoly> = (1..=ctx.r)
        .map(|i| satake_t(&ctx.with_quotient(false), i).map(|h| h.image))
        .collect::<Result<_>>()?;
    let img = expr.substitute(&images, ctx.vars())?;
    Ok(HeckeElement::trusted(ctx, Level::G, img))
}

/// Writes a level-`M` element in `Phi1..Phi_{r−n}, Psi1..Psi_n`.
///
/// In the quotient the relation `Ψ_n Φ_{r−n} = Q^{n(r−n)}` cancels every
/// common power of the two top generators, so no monomial contains both
/// (`Φ_r = 1` when `n = 0`, `Ψ_r = 1` when `n = r`). The expression is then
/// unique.
pub fn express_in_levi_generators(e: &HeckeElement) -> Result<LaurentPoly> {
    let ctx = &e.ctx;
    let (a, b) = (ctx.phi_block(), ctx.psi_block());
    if let Invariance::Violated(g) = is_invariant(&e.image, &Action::Product(a.clone(), b.clone())) {
        return Err(Error::NotInvariant(format!(
            "not S_{}×S_{}-invariant: moved by {}",
            ctx.m(),
            ctx.n,
            g.describe(ctx.vars())
        )));
    }
    let (m, n) = (ctx.m(), ctx.n);
    let gvars = levi_generator_vars(ctx.r, n);
    let (ta, tb) = (block_shift(&e.image, &a), block_shift(&e.image, &b));
    let p = shift_block(&shift_block(&e.image, &a, -ta), &b, -tb);
    let phi_images = sigma_images(&gvars, 0, m);
    let psi_images = sigma_images(&gvars, m, n);
    let inner = |c: &LaurentPoly| -> Result<LaurentPoly> {
        if b.is_empty() {
            Ok(q_part_to(c, &gvars))
        } else {
            reduce_block(c, &b, &gvars, &psi_images, |cc| Ok(q_part_to(cc, &gvars)))
        }
    };
    let mut expr = if a.is_empty() {
        inner(&p)?
    } else {
        reduce_block(&p, &a, &gvars, &phi_images, inner)?
    };
    if ta != 0 {
        expr = &expr * &gen_power(&gvars, m - 1, ta, ta * exp32(triangular(m as i64)));
    }
    if tb != 0 {
        expr = &expr * &gen_power(&gvars, m + n - 1, tb, tb * exp32(triangular(n as i64)));
    }
    if ctx.quotient {
        let q = gvars.q_index();
        let rel = exp32((n * m) as i64);
        expr = expr.map_monomials(|mono| {
            let mut mono = mono.to_vec();
            match (m, n) {
                (_, 0) => mono[m - 1] = 0,
                (0, _) => mono[n - 1] = 0,
                _ => {
                    let (mut a, mut b) = (mono[m - 1], mono[m + n - 1]);
                    let mut qe = mono[q];
                    if a < 0 {
                        b -= a;
                        qe += rel * a;
                        a = 0;
                    }
                    if b < 0 {
                        a -= b;
                        qe += rel * b;
                        b = 0;
                    }
                    let t = a.min(b);
                    mono[m - 1] = a - t;
                    mono[m + n - 1] = b - t;
                    mono[q] = qe + rel * t;
                }
            }
            mono
        });
    }
    let back = from_levi_generators(ctx, &expr)?;
    if back.image != e.image {
        return Err(Error::IdentityFailed(format!("Levi-generator round trip: {} != {}", back.image, e.image)));
    }
    Ok(expr)
}

/// Substitutes `Φ_i, Ψ_i` by their Satake images.
pub fn from_levi_generators(ctx: &GlContext, expr: &LaurentPoly) -> Result<HeckeElement> {
    let raw = ctx.with_quotient(false);
    let mut images: Vec<LaurentPoly> = (1..=ctx.m())
        .map(|i| satake_phi(&raw, i).map(|h| h.image))
        .collect::<Result<_>>()?;
    for i in 1..=ctx.n {
        images.push(satake_psi(&raw, i)?.image);
    }
    let img = expr.substitute(&images, ctx.vars())?;
    Ok(HeckeElement::trusted(ctx, Level::M, img))
}

/// Generator expression text with `Ψ_n` written as `fr`.
pub fn render_levi_expr(expr: &LaurentPoly, n: usize) -> String {
    let fr = format!("Psi{n}");
    let mut s = expr.to_string();
    if n > 0 {
        s = rename_symbol(&s, &fr, "fr");
    }
    s
}

/// Replaces whole-word occurrences of `from`.
fn rename_symbol(s: &str, from: &str, to: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find(from) {
        let before_ok = rest[..pos].chars().next_back().is_none_or(|c| !c.is_ascii_alphanumeric());
        let after = &rest[pos + from.len()..];
        let after_ok = after.chars().next().is_none_or(|c| !c.is_ascii_alphanumeric());
        out.push_str(&rest[..pos]);
        out.push_str(if before_ok && after_ok { to } else { from });
        rest = after;
    }
    out.push_str(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(r: usize, n: usize) -> GlContext {
        GlContext::new(r, n, true).unwrap()
    }

    fn raw(r: usize, n: usize) -> GlContext {
        GlContext::new(r, n, false).unwrap()
    }

    #[test]
    fn satake_examples() {
        let c = raw(3, 1);
        assert_eq!(satake_t(&c, 1).unwrap().to_string(), "U1 + U2 + U3");
        assert_eq!(satake_t(&c, 0).unwrap().to_string(), "1");
        assert_eq!(satake_t(&c, 2).unwrap().to_string(), "U1*U2*Q^-1 + U1*U3*Q^-1 + U2*U3*Q^-1");
        assert_eq!(satake_psi(&c, 1).unwrap().to_string(), "U3");
        assert_eq!(satake_phi(&c, 2).unwrap().to_string(), "U1*U2*Q^-1");
        assert_eq!(satake_phi(&raw(2, 1), 0).unwrap().to_string(), "1");
        assert!(satake_t(&c, 4).is_err());
        assert!(satake_psi(&c, 2).is_err());
    }

    #[test]
    fn levi_examples() {
        let t = levi_expand(&raw(2, 1), 1).unwrap();
        assert_eq!(t.iter().map(|x| x.render(1)).collect::<Vec<_>>(), ["fr", "Phi1"]);
        let t = levi_expand(&raw(3, 1), 2).unwrap();
        assert_eq!(t.iter().map(|x| x.render(1)).collect::<Vec<_>>(), ["Q^-1*fr*Phi1", "Phi2"]);
        let t = levi_expand(&raw(5, 1), 5).unwrap();
        assert_eq!(t.iter().map(|x| x.render(1)).collect::<Vec<_>>(), ["Q^-4*fr*Phi4"]);
    }

    #[test]
    fn normal_form_examples() {
        let c = q(2, 1);
        let v = c.vars().clone();
        let e = HeckeElement::new(&c, Level::T, LaurentPoly::monomial(&v, vec![1, 1, 0], int(1))).unwrap();
        assert_eq!(e.to_string(), "Q");
        let c3 = q(3, 1);
        let v3 = c3.vars().clone();
        let e = HeckeElement::new(&c3, Level::T, LaurentPoly::monomial(&v3, vec![2, 1, 1, 0], int(1))).unwrap();
        assert_eq!(e.to_string(), "U1*Q^3");
        assert!(central_normal_form(&satake_t(&raw(2, 1), 1).unwrap()).is_err());
    }

    #[test]
    fn duality_examples() {
        for r in 1..=5 {
            for n in 0..=r {
                let c = q(r, n);
                for i in 0..=r {
                    assert_eq!(dual(&satake_t(&c, i).unwrap()).unwrap(), satake_t(&c, r - i).unwrap());
                }
                let fr = satake_psi(&c, n).unwrap();
                assert_eq!(dual(&satake_phi(&c, r - n).unwrap()).unwrap(), fr);
                let prod = fr.mul(&satake_phi(&c, r - n).unwrap()).unwrap();
                assert_eq!(prod, HeckeElement::one(&c).scale_q(1, (n * (r - n)) as i32).restrict(Level::M).unwrap());
            }
        }
    }

    #[test]
    fn t_generator_examples() {
        let c = q(3, 1);
        assert_eq!(express_in_t_generators(&satake_t(&c, 2).unwrap()).unwrap().to_string(), "T2");
        let s1 = satake_t(&c, 1).unwrap();
        assert_eq!(express_in_t_generators(&s1.pow(2)).unwrap().to_string(), "T1^2");
        let s2 = HeckeElement::new(&c, Level::G, elementary_symmetric(c.vars(), &[0, 1, 2], 2).unwrap()).unwrap();
        assert_eq!(express_in_t_generators(&s2.pow(2)).unwrap().to_string(), "T2^2*Q^2");
        assert_eq!(express_in_t_generators(&satake_t(&c, 3).unwrap()).unwrap().to_string(), "1");
        let u1 = HeckeElement::new(&c, Level::T, LaurentPoly::var(c.vars(), 0)).unwrap();
        assert!(matches!(express_in_t_generators(&u1), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn t_generators_without_quotient() {
        let c = raw(3, 1);
        let t3 = satake_t(&c, 3).unwrap();
        let inv = HeckeElement::new(&c, Level::G, t3.image().inverse_monomial().unwrap()).unwrap();
        let e = inv.mul(&satake_t(&c, 1).unwrap()).unwrap();
        assert_eq!(express_in_t_generators(&e).unwrap().to_string(), "T1*T3^-1");
    }

    #[test]
    fn levi_generator_examples() {
        let c = q(3, 1);
        let e = satake_psi(&c, 1).unwrap().mul(&satake_phi(&c, 1).unwrap()).unwrap();
        assert_eq!(express_in_levi_generators(&e).unwrap().to_string(), "Phi1*Psi1");
        let c2 = q(2, 1);
        let t1 = satake_t(&c2, 1).unwrap().restrict(Level::M).unwrap();
        assert_eq!(express_in_levi_generators(&t1).unwrap().to_string(), "Phi1 + Psi1");
        // dual(Φ_1) for r=4, n=1: Q^{-2} Ψ_1 Φ_2
        let c4 = q(4, 1);
        let d = dual(&satake_phi(&c4, 1).unwrap()).unwrap();
        assert_eq!(render_levi_expr(&express_in_levi_generators(&d).unwrap(), 1), "Phi2*fr*Q^-2");
    }

    #[test]
    fn rename_is_word_based() {
        assert_eq!(rename_symbol("Psi1*Psi12 + Psi1", "Psi1", "fr"), "fr*Psi12 + fr");
    }
}
