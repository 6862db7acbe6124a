//! Satake side for `GSp_2g` over variables `U1..Ug, V1..Vg, Q`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::degrees::{profile, BidegreeProfile, Correspondence, NumericProfile};
use crate::error::{Error, Result};
use crate::frobchar::{expand_symbolic, polynomial_text};
use crate::hecke_gl::Level;
use crate::poly::{int, is_invariant, Action, Invariance, LaurentPoly, Monomial, VarSet};

#[derive(Clone, Debug)]
pub struct SiegelContext {
    g: usize,
    central: Option<i32>,
    vars: Arc<VarSet>,
}

impl PartialEq for SiegelContext {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.central == other.central
    }
}

impl Eq for SiegelContext {}

impl SiegelContext {
    pub fn new(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidParameter("genus must be at least 1".into()));
        }
        Ok(SiegelContext {
            g,
            central: None,
            vars: VarSet::siegel(g),
        })
    }

    /// Imposes `∏ U_i V_i = Q^s`.
    pub fn with_central(g: usize, s: i32) -> Result<Self> {
        let mut ctx = Self::new(g)?;
        ctx.central = Some(s);
        Ok(ctx)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn central(&self) -> Option<i32> {
        self.central
    }

    pub fn quotient(&self) -> bool {
        self.central.is_some()
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    fn action(&self, level: Level) -> Option<Action> {
        match level {
            Level::G => Some(Action::SiegelWeyl(self.g)),
            Level::M => Some(Action::SiegelLevi(self.g)),
            Level::T => None,
        }
    }

    fn normal_form(&self, p: &LaurentPoly) -> LaurentPoly {
        let Some(s) = self.central else {
            return p.clone();
        };
        let g2 = 2 * self.g;
        p.map_monomials(|m| {
            let t = m[..g2].iter().copied().min().unwrap_or(0);
            let mut out: Monomial = m.iter().map(|e| e - t).collect();
            out[g2] = m[g2] + t * s;
            out
        })
    }
}

/// The common value of `a_i + b_i` on a monomial, if there is one.
pub fn similitude_weight(g: usize, m: &[i32]) -> Option<i32> {
    let w = m[0] + m[g];
    (1..g).all(|i| m[i] + m[g + i] == w).then_some(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelHeckeElement {
    ctx: SiegelContext,
    level: Level,
    image: LaurentPoly,
}

impl SiegelHeckeElement {
    pub fn new(ctx: &SiegelContext, level: Level, image: LaurentPoly) -> Result<Self> {
        if **image.vars() != *ctx.vars {
            return Err(Error::VarSetMismatch(image.vars().names().join(","), ctx.vars.names().join(",")));
        }
        if let Some((m, _)) = image.terms().find(|(m, _)| similitude_weight(ctx.g, m).is_none()) {
            return Err(Error::NotInvariant(format!(
                "monomial {} violates the similitude condition",
                LaurentPoly::monomial(&ctx.vars, m.clone(), int(1))
            )));
        }
        if let Some(action) = ctx.action(level) {
            if let Invariance::Violated(gen) = is_invariant(&image, &action) {
                return Err(Error::NotInvariant(format!(
                    "level {level} image moved by {}",
                    gen.describe(&ctx.vars)
                )));
            }
        }
        let image = ctx.normal_form(&image);
        Ok(SiegelHeckeElement {
            ctx: ctx.clone(),
            level,
            image,
        })
    }

    pub fn context(&self) -> &SiegelContext {
        &self.ctx
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn image(&self) -> &LaurentPoly {
        &self.image
    }

    fn combine(&self, other: &Self, image: LaurentPoly) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::InvalidParameter(format!(
                "Siegel context mismatch: g={} vs g={}",
                self.ctx.g, other.ctx.g
            )));
        }
        Ok(SiegelHeckeElement {
            ctx: self.ctx.clone(),
            level: self.level.max(other.level),
            image: self.ctx.normal_form(&image),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, &self.image * &other.image)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &self.image + &other.image)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &self.image - &other.image)
    }
}

impl fmt::Display for SiegelHeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.image.fmt(f)
    }
}

fn check_index(i: usize, g: usize) -> Result<()> {
    if i > g {
        return Err(Error::IndexOutOfRange {
            what: "Siegel Phi index",
            index: i as i64,
            min: 0,
            max: g as i64,
        });
    }
    Ok(())
}

/// `U_I = ∏_{i∈I} U_i ∏_{i∉I} V_i`.
pub fn u_subset(ctx: &SiegelContext, subset: &[usize]) -> LaurentPoly {
    let g = ctx.g;
    let mut m = vec![0; 2 * g + 1];
    for i in 0..g {
        if subset.contains(&i) {
            m[i] = 1;
        } else {
            m[g + i] = 1;
        }
    }
    LaurentPoly::monomial(&ctx.vars, m, int(1))
}

/// `Φ_i = Σ_{|I|=i} U_I`.
pub fn satake_phi(ctx: &SiegelContext, i: usize) -> Result<SiegelHeckeElement> {
    check_index(i, ctx.g)?;
    let mut image = LaurentPoly::zero(&ctx.vars);
    for subset in (0..ctx.g).combinations(i) {
        image = &image + &u_subset(ctx, &subset);
    }
    SiegelHeckeElement::new(ctx, Level::M, image)
}

/// `T_p = Φ_0 + … + Φ_g`, rebuilt at level `G` so that invariance is checked.
pub fn satake_tp(ctx: &SiegelContext) -> Result<SiegelHeckeElement> {
    let mut image = LaurentPoly::zero(&ctx.vars);
    for i in 0..=ctx.g {
        image = &image + satake_phi(ctx, i)?.image();
    }
    SiegelHeckeElement::new(ctx, Level::G, image)
}

/// Orbit of the image under `W_G = S_g ⋉ (Z/2)^g`, sorted by rendering.
pub fn weyl_orbit(e: &SiegelHeckeElement) -> Vec<LaurentPoly> {
    let gens = Action::SiegelWeyl(e.ctx.g).generators();
    let mut seen: BTreeMap<String, LaurentPoly> = BTreeMap::new();
    let mut queue = VecDeque::from([e.image.clone()]);
    seen.insert(e.image.to_string(), e.image.clone());
    while let Some(p) = queue.pop_front() {
        for gen in &gens {
            let next = e.ctx.normal_form(&gen.apply(&p));
            let key = next.to_string();
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen.into_values().collect()
}

/// `U_i <-> V_i` for every `i`.
pub fn hat_siegel(e: &SiegelHeckeElement) -> SiegelHeckeElement {
    let g = e.ctx.g;
    let perm: Vec<usize> = (0..g).map(|i| g + i).chain(0..g).chain([2 * g]).collect();
    SiegelHeckeElement {
        ctx: e.ctx.clone(),
        level: e.level,
        image: e.ctx.normal_form(&e.image.permute_vars(&perm)),
    }
}

/// Checks `T̂_p = T_p` and `Φ̂_i = Φ_{g−i}`.
pub fn check_hat_identities(ctx: &SiegelContext) -> Result<()> {
    let tp = satake_tp(ctx)?;
    if hat_siegel(&tp) != tp {
        return Err(Error::IdentityFailed(format!("hat(T_p) = {} differs from T_p", hat_siegel(&tp))));
    }
    for i in 0..=ctx.g {
        let phi = satake_phi(ctx, i)?;
        if hat_siegel(&phi) != satake_phi(ctx, ctx.g - i)? {
            return Err(Error::IdentityFailed(format!("hat(Phi{i}) is not Phi{}", ctx.g - i)));
        }
        if hat_siegel(&hat_siegel(&phi)) != phi {
            return Err(Error::IdentityFailed(format!("hat is not an involution on Phi{i}")));
        }
    }
    Ok(())
}

/// `∏_{I ⊆ {1..g}} (X − U_I)`, coefficients constant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelCharpoly {
    pub g: usize,
    pub coeffs: Vec<LaurentPoly>,
}

impl SiegelCharpoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_text(&self, var: &str) -> String {
        polynomial_text(&self.coeffs, var)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "degree": self.degree(),
            "coeffs": self.coeffs.iter().map(LaurentPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn siegel_frob_charpoly(ctx: &SiegelContext) -> Result<SiegelCharpoly> {
    let roots: Vec<LaurentPoly> = (0..=ctx.g)
        .flat_map(|k| (0..ctx.g).combinations(k))
        .map(|s| u_subset(ctx, &s))
        .collect();
    let coeffs: Vec<LaurentPoly> = expand_symbolic(&roots).iter().map(|c| ctx.normal_form(c)).collect();
    if coeffs.len() != (1 << ctx.g) + 1 {
        return Err(Error::IdentityFailed(format!("degree {} is not 2^g", coeffs.len() - 1)));
    }
    for (k, c) in coeffs.iter().enumerate() {
        if let Invariance::Violated(gen) = is_invariant(c, &Action::SiegelWeyl(ctx.g)) {
            return Err(Error::NotInvariant(format!(
                "coefficient of X^{k} moved by {}",
                gen.describe(&ctx.vars)
            )));
        }
    }
    Ok(SiegelCharpoly { g: ctx.g, coeffs })
}

/// `(𝔤(i,g), Q^{(g+1−i)(g−i)/2}, 𝔤(i,g), Q^{i(i+1)/2})`.
pub fn siegel_profile(g: usize, i: usize) -> Result<BidegreeProfile> {
    profile(Correspondence::SiegelPhi(i), g, 0)
}

pub fn siegel_degrees(g: usize, i: usize, p: u64) -> Result<NumericProfile> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p must be at least 2, got {p}")));
    }
    siegel_profile(g, i)?.at(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(g: usize) -> SiegelContext {
        SiegelContext::new(g).unwrap()
    }

    #[test]
    fn phi_and_tp() {
        assert_eq!(satake_phi(&ctx(2), 0).unwrap().to_string(), "V1*V2");
        assert_eq!(satake_phi(&ctx(2), 1).unwrap().to_string(), "U1*V2 + U2*V1");
        assert_eq!(satake_phi(&ctx(1), 1).unwrap().to_string(), "U1");
        assert_eq!(satake_tp(&ctx(1)).unwrap().to_string(), "U1 + V1");
        assert_eq!(satake_tp(&ctx(2)).unwrap().to_string(), "U1*U2 + U1*V2 + U2*V1 + V1*V2");
        assert!(satake_phi(&ctx(2), 3).is_err());
        for g in 1..=4 {
            assert_eq!(satake_tp(&ctx(g)).unwrap().level(), Level::G);
        }
    }

    #[test]
    fn phi1_is_levi_but_not_weyl_invariant() {
        let phi1 = satake_phi(&ctx(2), 1).unwrap();
        assert!(is_invariant(phi1.image(), &Action::SiegelLevi(2)).holds());
        assert!(!is_invariant(phi1.image(), &Action::SiegelWeyl(2)).holds());
        assert!(SiegelHeckeElement::new(&ctx(2), Level::G, phi1.image().clone()).is_err());
    }

    #[test]
    fn similitude_enforced() {
        let c = ctx(2);
        let bad = LaurentPoly::var(c.vars(), 0);
        assert!(SiegelHeckeElement::new(&c, Level::T, bad).is_err());
    }

    #[test]
    fn orbits() {
        let c = ctx(3);
        let top = satake_phi(&c, 3).unwrap();
        assert_eq!(weyl_orbit(&top).len(), 8);
        assert_eq!(weyl_orbit(&satake_tp(&c).unwrap()).len(), 1);
        let u1 = satake_phi(&ctx(1), 1).unwrap();
        let names: Vec<String> = weyl_orbit(&u1).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["U1", "V1"]);
    }

    #[test]
    fn hat_identities() {
        for g in 1..=4 {
            check_hat_identities(&ctx(g)).unwrap();
        }
        let c = ctx(2);
        assert_eq!(hat_siegel(&satake_phi(&c, 0).unwrap()), satake_phi(&c, 2).unwrap());
    }

    #[test]
    fn charpoly() {
        let cp = siegel_frob_charpoly(&ctx(1)).unwrap();
        assert_eq!(cp.to_text("X"), "X^2 - (U1 + V1)*X + U1*V1");
        let c2 = ctx(2);
        let cp = siegel_frob_charpoly(&c2).unwrap();
        assert_eq!(cp.degree(), 4);
        assert_eq!(cp.coeffs[3], -satake_tp(&c2).unwrap().image());
        assert_eq!(cp.coeffs[0].to_string(), "U1^2*U2^2*V1^2*V2^2");
        for g in 3..=4 {
            assert_eq!(siegel_frob_charpoly(&ctx(g)).unwrap().degree(), 1 << g);
        }
    }

    #[test]
    fn central_relation() {
        let c = SiegelContext::with_central(1, 1).unwrap();
        let cp = siegel_frob_charpoly(&c).unwrap();
        assert_eq!(cp.coeffs[0].to_string(), "Q");
    }

    #[test]
    fn degrees() {
        assert_eq!(siegel_degrees(2, 2, 2).unwrap().to_string(), "(1, 1, 1, 8)");
        assert_eq!(siegel_degrees(1, 0, 3).unwrap().to_string(), "(1, 3, 1, 1)");
        for g in 1..=4 {
            for i in 0..=g {
                assert_eq!(siegel_profile(g, i).unwrap(), siegel_profile(g, g - i).unwrap().swapped());
            }
        }
        assert!(siegel_degrees(2, 1, 1).is_err());
    }
}
