//! Elementary symmetric polynomials, reduction of symmetric polynomials to
//! them, and invariance checks under the Weyl-group actions used elsewhere.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LaurentPoly, Monomial, Rational, VarKind, VarSet};
use crate::error::{Error, Result};

/// `σ_i` over the variables `block` (indices into `vars`); `σ_0 = 1`.
pub fn elementary_symmetric(vars: &Arc<VarSet>, block: &[usize], i: usize) -> Result<LaurentPoly> {
    if i > block.len() {
        return Err(Error::IndexOutOfRange {
            what: "elementary symmetric",
            index: i as i64,
            min: 0,
            max: block.len() as i64,
        });
    }
    let mut p = LaurentPoly::zero(vars);
    for subset in block.iter().combinations(i) {
        let mut m = vec![0; vars.arity()];
        for &&v in &subset {
            m[v] += 1;
        }
        p.add_term(m, &Rational::one());
    }
    Ok(p)
}

/// Expression of a symmetric polynomial in the elementary symmetric
/// polynomials of a block of variables.
///
/// `terms` maps σ-exponent vectors `(d_1..d_k)` to coefficients, which are
/// polynomials over the original variable set that do not involve the block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    vars: Arc<VarSet>,
    block: Vec<usize>,
    terms: BTreeMap<Vec<u32>, LaurentPoly>,
}

impl SymmetricForm {
    pub fn block(&self) -> &[usize] {
        &self.block
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Replaces `σ_i` by `images[i-1]` and each coefficient by `coeff_map(c)`;
    /// everything must land over `target`.
    pub fn assemble<F>(&self, target: &Arc<VarSet>, images: &[LaurentPoly], mut coeff_map: F) -> Result<LaurentPoly>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly>,
    {
        assert_eq!(images.len(), self.block.len());
        let mut powers: HashMap<(usize, u32), LaurentPoly> = HashMap::new();
        let mut out = LaurentPoly::zero(target);
        for (d, c) in &self.terms {
            let mut t = coeff_map(c)?;
            for (i, &e) in d.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                t = t.checked_mul(p)?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Substitutes the actual `σ_i` of the block; reproduces the reduced input.
    pub fn substitute_back(&self) -> LaurentPoly {
        let images: Vec<LaurentPoly> = (1..=self.block.len())
            .map(|i| elementary_symmetric(&self.vars, &self.block, i).expect("index in range"))
            .collect();
        self.assemble(&self.vars, &images, |c| Ok(c.clone())).expect("same variable set")
    }
}

/// Coefficients of a symmetric polynomial in `k` variables on the monomial
/// symmetric basis, keyed by non-increasing exponent vectors.
type MonomialBasis = BTreeMap<Vec<i32>, BigInt>;

fn sorted_desc(mut v: Vec<i32>) -> Vec<i32> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Multiplies a monomial-basis expansion by `σ_e` in `k` variables.
///
/// The coefficient of `x^μ` (μ sorted) in `P·σ_e` is the sum, over `e`-subsets
/// `S`, of the coefficient of `x^(μ-1_S)` in `P`, which by symmetry is read off
/// at the sorted exponent.
fn mul_by_elementary(p: &MonomialBasis, k: usize, e: usize) -> MonomialBasis {
    let subsets: Vec<Vec<usize>> = (0..k).combinations(e).collect();
    let mut candidates: BTreeSet<Vec<i32>> = BTreeSet::new();
    for nu in p.keys() {
        for s in &subsets {
            let mut m = nu.clone();
            for &i in s {
                m[i] += 1;
            }
            candidates.insert(sorted_desc(m));
        }
    }
    let mut out = MonomialBasis::new();
    for mu in candidates {
        let mut c = BigInt::zero();
        for s in &subsets {
            if s.iter().any(|&i| mu[i] == 0) {
                continue;
            }
            let mut m = mu.clone();
            for &i in s {
                m[i] -= 1;
            }
            if let Some(x) = p.get(&sorted_desc(m)) {
                c += x;
            }
        }
        if !c.is_zero() {
            out.insert(mu, c);
        }
    }
    out
}

struct ElementaryPowers {
    k: usize,
    cache: HashMap<Vec<u32>, MonomialBasis>,
}

impl ElementaryPowers {
    fn new(k: usize) -> Self {
        let mut cache = HashMap::new();
        let mut one = MonomialBasis::new();
        one.insert(vec![0; k], BigInt::one());
        cache.insert(vec![0; k], one);
        ElementaryPowers { k, cache }
    }

    /// Monomial-basis expansion of `∏ σ_i^{d_i}`.
    fn get(&mut self, d: &[u32]) -> &MonomialBasis {
        if !self.cache.contains_key(d) {
            let i = d.iter().rposition(|&x| x > 0).expect("nonzero exponent vector");
            let mut prev = d.to_vec();
            prev[i] -= 1;
            let base = self.get(&prev).clone();
            let next = mul_by_elementary(&base, self.k, i + 1);
            self.cache.insert(d.to_vec(), next);
        }
        &self.cache[d]
    }
}

fn check_block(vars: &VarSet, block: &[usize]) -> Result<()> {
    for (i, &b) in block.iter().enumerate() {
        if b >= vars.len() {
            return Err(Error::InvalidParameter(format!("variable index {b} is not a U/V variable")));
        }
        if block[..i].contains(&b) {
            return Err(Error::InvalidParameter(format!("variable {} listed twice", vars.name(b))));
        }
    }
    Ok(())
}

/// Writes a symmetric polynomial in the elementary symmetric polynomials of
/// `block` by repeatedly cancelling the lexicographically leading monomial.
///
/// `p` must be polynomial in the block (other variables, `Q` included, may
/// carry any exponents) and invariant under all permutations of the block.
pub fn sym_reduce(p: &LaurentPoly, block: &[usize]) -> Result<SymmetricForm> {
    let vars = p.vars().clone();
    check_block(&vars, block)?;
    if let Some(&bad) = block.iter().find(|&&b| !p.is_polynomial_in(&[b])) {
        return Err(Error::NegativeExponent(vars.name(bad).to_string()));
    }
    if let Invariance::Violated(g) = is_invariant(p, &Action::Symmetric(block.to_vec())) {
        return Err(Error::NotSymmetric(g.describe(&vars)));
    }

    let k = block.len();
    // leading coefficients live on sorted exponents only
    let mut rem: BTreeMap<Vec<i32>, LaurentPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let part: Vec<i32> = block.iter().map(|&b| m[b]).collect();
        if part.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let mut rest: Monomial = m.clone();
        for &b in block {
            rest[b] = 0;
        }
        rem.entry(part).or_insert_with(|| LaurentPoly::zero(&vars)).add_term(rest, c);
    }
    rem.retain(|_, c| !c.is_zero());

    let mut powers = ElementaryPowers::new(k);
    let mut terms = BTreeMap::new();
    while let Some((lead, c)) = rem.pop_last() {
        let d: Vec<u32> = (0..k)
            .map(|i| (lead[i] - if i + 1 < k { lead[i + 1] } else { 0 }) as u32)
            .collect();
        for (mu, coef) in powers.get(&d) {
            if *mu == lead {
                debug_assert!(coef.is_one());
                continue;
            }
            debug_assert!(*mu < lead);
            let delta = c.scale(&-Rational::from_integer(coef.clone()));
            let slot = rem.entry(mu.clone()).or_insert_with(|| LaurentPoly::zero(&vars));
            *slot = &*slot + &delta;
            if slot.is_zero() {
                rem.remove(mu);
            }
        }
        terms.insert(d, c);
    }
    Ok(SymmetricForm {
        vars,
        block: block.to_vec(),
        terms,
    })
}

/// Group actions by variable permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Full symmetric group on a block of variables.
    Symmetric(Vec<usize>),
    /// `S_a × S_b` on two disjoint blocks.
    Product(Vec<usize>, Vec<usize>),
    /// Weyl group of `GSp_2g` on `U1..Ug, V1..Vg`: permutations of indices
    /// together with the swaps `U_i <-> V_i`.
    SiegelWeyl(usize),
    /// The section `S_g` of the Siegel Weyl group (simultaneous index permutations).
    SiegelLevi(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Exchanges two variables.
    Transposition(usize, usize),
    /// Exchanges indices `i, j` in both the `U` and the `V` block of genus `g`.
    Diagonal { g: usize, i: usize, j: usize },
    /// `U_i <-> V_i` in genus `g`.
    Swap { g: usize, i: usize },
}

impl Generator {
    /// Variable permutation on an exponent vector of length `arity`.
    pub fn permutation(&self, arity: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..arity).collect();
        match *self {
            Generator::Transposition(a, b) => perm.swap(a, b),
            Generator::Diagonal { g, i, j } => {
                perm.swap(i, j);
                perm.swap(g + i, g + j);
            }
            Generator::Swap { g, i } => perm.swap(i, g + i),
        }
        perm
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        p.permute_vars(&self.permutation(p.vars().arity()))
    }

    pub fn describe(&self, vars: &VarSet) -> String {
        match *self {
            Generator::Transposition(a, b) => format!("({} {})", vars.name(a), vars.name(b)),
            Generator::Diagonal { g, i, j } => format!(
                "({} {})({} {})",
                vars.name(i),
                vars.name(j),
                vars.name(g + i),
                vars.name(g + j)
            ),
            Generator::Swap { g, i } => format!("({} {})", vars.name(i), vars.name(g + i)),
        }
    }
}

impl Action {
    /// A generating set; invariance under these is invariance under the group.
    pub fn generators(&self) -> Vec<Generator> {
        let adjacent = |b: &[usize]| -> Vec<Generator> { b.windows(2).map(|w| Generator::Transposition(w[0], w[1])).collect() };
        match self {
            Action::Symmetric(b) => adjacent(b),
            Action::Product(a, b) => {
                let mut g = adjacent(a);
                g.extend(adjacent(b));
                g
            }
            Action::SiegelWeyl(g) => {
                let mut gens: Vec<Generator> = (1..*g).map(|i| Generator::Diagonal { g: *g, i: i - 1, j: i }).collect();
                if *g > 0 {
                    gens.push(Generator::Swap { g: *g, i: 0 });
                }
                gens
            }
            Action::SiegelLevi(g) => (1..*g).map(|i| Generator::Diagonal { g: *g, i: i - 1, j: i }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    Violated(Generator),
}

impl Invariance {
    pub fn holds(&self) -> bool {
        matches!(self, Invariance::Invariant)
    }
}

impl fmt::Display for Invariance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariance::Invariant => f.write_str("invariant"),
            Invariance::Violated(g) => write!(f, "violated by {g:?}"),
        }
    }
}

/// Checks `p` against every generator of `action`; the zero polynomial is
/// invariant under everything.
pub fn is_invariant(p: &LaurentPoly, action: &Action) -> Invariance {
    if let Action::SiegelWeyl(g) | Action::SiegelLevi(g) = action {
        assert_eq!(p.vars().kind(), &VarKind::Siegel(*g), "Siegel action on a non-Siegel variable set");
    }
    for gen in action.generators() {
        if gen.apply(p) != *p {
            return Invariance::Violated(gen);
        }
    }
    Invariance::Invariant
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sigma(v: &Arc<VarSet>, block: &[usize], i: usize) -> LaurentPoly {
        elementary_symmetric(v, block, i).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let v = VarSet::gl(3);
        assert_eq!(sigma(&v, &[0, 1, 2], 1).to_string(), "U1 + U2 + U3");
        assert_eq!(sigma(&v, &[0, 1, 2], 3).to_string(), "U1*U2*U3");
        assert_eq!(sigma(&v, &[0, 1, 2], 0), LaurentPoly::one(&v));
        assert!(elementary_symmetric(&v, &[0, 1, 2], 4).is_err());
        let v4 = VarSet::gl(4);
        let s2 = sigma(&v4, &[0, 1, 2, 3], 2);
        // enumerate 2-subsets of four indices by hand
        let mut count = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                let mut m = vec![0; 5];
                m[a] = 1;
                m[b] = 1;
                assert_eq!(s2.coeff(&m), int(1));
                count += 1;
            }
        }
        assert_eq!(s2.len(), count);
        assert_eq!(count, 6);
    }

    fn single(form: &SymmetricForm) -> Vec<(Vec<u32>, String)> {
        form.terms().map(|(d, c)| (d.clone(), c.to_string())).collect()
    }

    #[test]
    fn newton_power_sum() {
        let v = VarSet::gl(2);
        let u1 = LaurentPoly::var(&v, 0);
        let u2 = LaurentPoly::var(&v, 1);
        let p = &u1.pow(2) + &u2.pow(2);
        let f = sym_reduce(&p, &[0, 1]).unwrap();
        assert_eq!(single(&f), vec![(vec![0, 1], "-2".to_string()), (vec![2, 0], "1".to_string())]);
        assert_eq!(f.substitute_back(), p);
    }

    #[test]
    fn sigma2_reduces_to_itself() {
        let v = VarSet::gl(3);
        let f = sym_reduce(&sigma(&v, &[0, 1, 2], 2), &[0, 1, 2]).unwrap();
        assert_eq!(single(&f), vec![(vec![0, 1, 0], "1".to_string())]);
    }

    #[test]
    fn non_symmetric_input_names_a_transposition() {
        let v = VarSet::gl(2);
        let err = sym_reduce(&LaurentPoly::var(&v, 0), &[0, 1]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric("(U1 U2)".into()));
        let neg = LaurentPoly::monomial(&v, vec![-1, -1, 0], int(1));
        assert!(matches!(sym_reduce(&neg, &[0, 1]), Err(Error::NegativeExponent(_))));
    }

    #[test]
    fn pairwise_product_charpoly_coefficients() {
        // ∏_{i<j≤3} (X - U_i U_j): each X-coefficient reduces and re-substitutes
        let v = VarSet::gl(3);
        let u: Vec<LaurentPoly> = (0..3).map(|i| LaurentPoly::var(&v, i)).collect();
        let roots = [&u[0] * &u[1], &u[0] * &u[2], &u[1] * &u[2]];
        let mut coeffs = vec![LaurentPoly::one(&v)];
        for root in &roots {
            let mut next = vec![LaurentPoly::zero(&v); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * root);
            }
            coeffs = next;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in &coeffs {
            let f = sym_reduce(c, &[0, 1, 2]).unwrap();
            assert_eq!(&f.substitute_back(), c);
            for _ in 0..20 {
                let pt: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
                let s: Vec<Rational> = (1..=3)
                    .map(|i| sigma(&v, &[0, 1, 2], i).evaluate_with(|j| pt.get(j).cloned()).unwrap())
                    .collect();
                let via_sigma: Rational = f
                    .terms()
                    .map(|(d, k)| {
                        let mut t = k.as_constant().unwrap();
                        for (i, &e) in d.iter().enumerate() {
                            t *= num_traits::pow(s[i].clone(), e as usize);
                        }
                        t
                    })
                    .sum();
                assert_eq!(via_sigma, c.evaluate_with(|j| pt.get(j).cloned()).unwrap());
            }
        }
        // X^0 coefficient is -(U1U2U3)^2 = -σ_3^2
        let f0 = sym_reduce(&coeffs[0], &[0, 1, 2]).unwrap();
        assert_eq!(single(&f0), vec![(vec![0, 0, 2], "-1".to_string())]);
    }

    #[test]
    fn coefficients_may_involve_other_variables() {
        let v = VarSet::gl(3);
        let u3 = LaurentPoly::var(&v, 2).mul_q_pow(-2);
        let p = &sigma(&v, &[0, 1], 2) * &u3;
        let f = sym_reduce(&p, &[0, 1]).unwrap();
        assert_eq!(single(&f), vec![(vec![0, 1], "U3*Q^-2".to_string())]);
        assert_eq!(f.substitute_back(), p);
    }

    #[test]
    fn invariance_examples() {
        let v = VarSet::gl(4);
        assert!(is_invariant(&sigma(&v, &[0, 1, 2, 3], 2), &Action::Symmetric(vec![0, 1, 2, 3])).holds());
        let v2 = VarSet::gl(2);
        assert_eq!(
            is_invariant(&LaurentPoly::var(&v2, 0), &Action::Symmetric(vec![0, 1])),
            Invariance::Violated(Generator::Transposition(0, 1))
        );
        assert!(is_invariant(&LaurentPoly::zero(&v2), &Action::Symmetric(vec![0, 1])).holds());
        let w = Generator::Transposition(0, 1);
        assert_eq!(w.describe(&v2), "(U1 U2)");
    }
}
