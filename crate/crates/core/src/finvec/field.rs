use crate::error::{Error, Result};

/// Field element, stored as its index `a0 + a1*p` (basis `1, ω` for degree 2).
pub type Elem = u16;

const MAX_ORDER: usize = 1024;
const VERIFY_UP_TO: usize = 9;

/// `F_p` or `F_{p^2}` with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct PrimePowerField {
    p: usize,
    degree: usize,
    /// `x^2 + a x + b`, irreducible over `F_p` (degree 2 only).
    modulus: Option<(usize, usize)>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for PrimePowerField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for PrimePowerField {}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimePowerField {
    pub fn prime(p: usize) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn quadratic(p: usize) -> Result<Self> {
        Self::new(p, 2)
    }

    /// The field with `q = p` or `q = p²` elements.
    pub fn of_order(q: usize) -> Result<Self> {
        if is_prime(q) {
            return Self::prime(q);
        }
        let root = (q as f64).sqrt().round() as usize;
        if root * root == q && is_prime(root) {
            return Self::quadratic(root);
        }
        Err(Error::InvalidParameter(format!("{q} is neither a prime nor the square of a prime")))
    }

    pub fn new(p: usize, degree: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if degree != 1 && degree != 2 {
            return Err(Error::InvalidParameter(format!("field degree {degree} unsupported (1 or 2)")));
        }
        let q = p.pow(degree as u32);
        if q > MAX_ORDER {
            return Err(Error::InvalidParameter(format!("field of order {q} exceeds {MAX_ORDER}")));
        }
        let modulus = (degree == 2).then(|| irreducible_quadratic(p));
        let split = |x: usize| (x % p, x / p);
        let join = |a0: usize, a1: usize| (a0 + a1 * p) as Elem;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q {
            let (x0, x1) = split(x);
            for y in 0..q {
                let (y0, y1) = split(y);
                add[x * q + y] = join((x0 + y0) % p, (x1 + y1) % p);
                mul[x * q + y] = match modulus {
                    None => ((x0 * y0) % p) as Elem,
                    Some((a, b)) => {
                        // ω^2 = -aω - b
                        let hi = x1 * y1 % p;
                        let c0 = (x0 * y0 + (p - b) * hi) % p;
                        let c1 = (x0 * y1 + x1 * y0 + (p - a) * hi) % p;
                        join(c0, c1)
                    }
                };
            }
        }
        let neg: Vec<Elem> = (0..q).map(|x| (0..q).find(|&y| add[x * q + y] == 0).unwrap() as Elem).collect();
        let mut inv = vec![0; q];
        for x in 1..q {
            inv[x] = (1..q)
                .find(|&y| mul[x * q + y] == 1)
                .ok_or_else(|| Error::IdentityFailed(format!("{x} has no inverse in F_{q}")))? as Elem;
        }
        let field = PrimePowerField {
            p,
            degree,
            modulus,
            add,
            mul,
            neg,
            inv,
        };
        if q <= VERIFY_UP_TO {
            field.verify_axioms()?;
        }
        Ok(field)
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn verify_axioms(&self) -> Result<()> {
        let q = self.order() as Elem;
        let fail = |what: &str| Err(Error::IdentityFailed(format!("F_{q}: {what}")));
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identity");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverse");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.degree as u32)
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Option<(usize, usize)> {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    /// The element `a0 + a1 ω`.
    pub fn from_coords(&self, a0: usize, a1: usize) -> Elem {
        ((a0 % self.p) + (a1 % self.p) * self.p) as Elem
    }

    /// One character per element: `0-9a-z` by index.
    pub fn symbol(&self, a: Elem) -> char {
        std::char::from_digit(a as u32, 36).unwrap_or('?')
    }

    pub fn dot(&self, x: &[Elem], y: &[Elem]) -> Elem {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

/// Lexicographically first `(a, b)` with `x^2 + a x + b` rootless in `F_p`.
pub(crate) fn irreducible_quadratic(p: usize) -> (usize, usize) {
    for a in 0..p {
        for b in 1..p {
            if (0..p).all(|x| (x * x + a * x + b) % p != 0) {
                return (a, b);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}
