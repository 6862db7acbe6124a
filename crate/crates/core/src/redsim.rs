//! Linear-algebra model of reduction of Hecke orbits.
//!
//! A point is modelled by its `𝔭`-torsion `F^r` together with the kernel `D`
//! of reduction. Orbit elements are subspaces `W` (kernels of isogenies), the
//! reduction type is `dim(W ∩ D)`, and two orbit elements reduce to the same
//! closed point when their keys `(W ∩ D, W + D)` agree.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finvec::{
    enumerate_isotropic, enumerate_subspaces, gaussian_count, PrimePowerField, QuadraticStructure, Subspace,
    SymplecticSpace,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `dim D = n` in `F_𝔮^r`.
    Ordinary { n: usize },
    /// `D` Lagrangian in the standard symplectic `F_p^{2g}`.
    Siegel { g: usize },
    /// `n = 1` with `dim D = 2`.
    NonOrdinary,
    /// `F_𝔮^{2m}` with an `F_{𝔮²}`-structure and `D` an `F_{𝔮²}`-line.
    Quadratic,
    /// `F_{p²}^r` with `dim D = max(r − n, n)` over `F_{p²}`.
    Unitary { n: usize },
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Ordinary { .. } => "ordinary",
            Flavor::Siegel { .. } => "siegel",
            Flavor::NonOrdinary => "nonordinary",
            Flavor::Quadratic => "quadratic",
            Flavor::Unitary { .. } => "unitary",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModelPoint {
    field: PrimePowerField,
    d: Subspace,
    flavor: Flavor,
    quadratic: Option<QuadraticStructure>,
}

fn last_coordinates(ambient: usize, k: usize) -> Subspace {
    Subspace::coordinate(ambient, &((ambient - k)..ambient).collect::<Vec<_>>())
}

impl ModelPoint {
    pub fn ordinary(field: PrimePowerField, r: usize, n: usize) -> Result<Self> {
        if r == 0 || n > r {
            return Err(Error::InvalidParameter(format!("ordinary point needs 0 ≤ n ≤ r, r ≥ 1 (r={r}, n={n})")));
        }
        Self::with_d(field, last_coordinates(r, n), Flavor::Ordinary { n })
    }

    /// `D` spanned by the `V`-coordinates `e_{g+1}..e_{2g}`.
    pub fn siegel(field: PrimePowerField, g: usize) -> Result<Self> {
        if g == 0 || field.degree() != 1 {
            return Err(Error::InvalidParameter("Siegel point needs g ≥ 1 over a prime field".into()));
        }
        Self::with_d(field, last_coordinates(2 * g, g), Flavor::Siegel { g })
    }

    pub fn nonordinary(field: PrimePowerField, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameter("non-ordinary point needs r ≥ 2".into()));
        }
        Self::with_d(field, last_coordinates(r, 2), Flavor::NonOrdinary)
    }

    /// `r` must be even; `D` is the last `F_{𝔮²}`-coordinate line.
    pub fn quadratic(field: PrimePowerField, r: usize) -> Result<Self> {
        if r == 0 || !r.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("quadratic point needs even r ≥ 2, got {r}")));
        }
        Self::with_d(field, last_coordinates(r, 2), Flavor::Quadratic)
    }

    /// `field` is the prime field `F_p`; the model lives over `F_{p²}`.
    pub fn unitary(field: PrimePowerField, r: usize, n: usize) -> Result<Self> {
        if field.degree() != 1 || r == 0 || n > r {
            return Err(Error::InvalidParameter("unitary point needs a prime field and 0 ≤ n ≤ r".into()));
        }
        let big = PrimePowerField::quadratic(field.characteristic())?;
        Self::with_d(big, last_coordinates(r, n.max(r - n)), Flavor::Unitary { n })
    }

    /// Any `D` of the right shape for `flavor`.
    pub fn with_d(field: PrimePowerField, d: Subspace, flavor: Flavor) -> Result<Self> {
        let ambient = d.ambient();
        let mut quadratic = None;
        let ok = match &flavor {
            Flavor::Ordinary { n } => d.dim() == *n,
            Flavor::Siegel { g } => {
                ambient == 2 * g && d.dim() == *g && SymplecticSpace::new(*g).is_isotropic(&field, &d)
            }
            Flavor::NonOrdinary => d.dim() == 2,
            Flavor::Quadratic => {
                let qs = QuadraticStructure::new(&field, ambient / 2)?;
                let stable = d.dim() == 2 && qs.is_stable(&field, &d)?;
                quadratic = Some(qs);
                ambient.is_multiple_of(2) && stable
            }
            Flavor::Unitary { n } => field.degree() == 2 && d.dim() == (*n).max(ambient - n),
        };
        if !ok {
            return Err(Error::WrongFlavor(format!(
                "D = {} does not fit the {} flavor",
                d.to_text(&field),
                flavor.name()
            )));
        }
        Ok(ModelPoint {
            field,
            d,
            flavor,
            quadratic,
        })
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn d(&self) -> &Subspace {
        &self.d
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn ambient(&self) -> usize {
        self.d.ambient()
    }
}

/// All `j`-dimensional kernels: subspaces of the ambient space, or isotropic
/// ones for the Siegel flavor.
pub fn hecke_orbit(t: &ModelPoint, j: usize, budget: u128) -> Result<Vec<Subspace>> {
    match t.flavor {
        Flavor::Siegel { g } => enumerate_isotropic(g, j, &t.field, budget),
        _ => enumerate_subspaces(t.ambient(), j, &t.field, budget),
    }
}

pub fn reduction_type(t: &ModelPoint, w: &Subspace) -> Result<usize> {
    Ok(w.intersect(&t.d, &t.field)?.dim())
}

/// `W = D`: the reduction is the Frobenius point.
pub fn is_frobenius(t: &ModelPoint, w: &Subspace) -> bool {
    *w == t.d
}

/// Closed point of the reduction. Siegel keys use the intersection only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPointKey {
    pub meet: Subspace,
    pub join: Option<Subspace>,
}

pub fn closed_point_key(t: &ModelPoint, w: &Subspace) -> Result<ClosedPointKey> {
    let meet = w.intersect(&t.d, &t.field)?;
    let join = match t.flavor {
        Flavor::Siegel { .. } => None,
        _ => Some(w.span(&t.d, &t.field)?),
    };
    Ok(ClosedPointKey { meet, join })
}

/// Census row for one reduction type `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub i: usize,
    pub classes: u128,
    /// Common class size, if all classes of this type have equal size.
    pub fiber: Option<u128>,
    /// class size → number of classes of that size
    pub fiber_sizes: BTreeMap<u128, u128>,
    pub formula_classes: u128,
    pub formula_fiber: u128,
}

impl CensusRow {
    pub fn matches(&self) -> bool {
        self.classes == self.formula_classes && self.fiber == Some(self.formula_fiber)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCensus {
    pub flavor: Flavor,
    pub r: usize,
    pub n: usize,
    pub q: usize,
    pub j: usize,
    /// Rows by decreasing `i`.
    pub rows: Vec<CensusRow>,
    pub total: u128,
    pub expected_total: u128,
}

impl ReductionCensus {
    /// Whether the formulas are theorems for this flavor (otherwise conjectural).
    pub fn proven(&self) -> bool {
        matches!(self.flavor, Flavor::Ordinary { .. } | Flavor::Siegel { .. })
    }

    pub fn partition_ok(&self) -> bool {
        let sum: u128 = self
            .rows
            .iter()
            .flat_map(|r| r.fiber_sizes.iter().map(|(s, c)| s * c))
            .sum();
        sum == self.total && self.total == self.expected_total
    }

    /// For `n = 1`: every class with `W ⊃ D` is a single orbit element.
    pub fn frobenius_fibers_trivial(&self) -> bool {
        if self.n != 1 || matches!(self.flavor, Flavor::Siegel { .. }) {
            return true;
        }
        self.rows
            .iter()
            .filter(|r| r.i == 1)
            .all(|r| r.fiber_sizes.keys().all(|&s| s == 1))
    }

    pub fn passed(&self) -> bool {
        self.partition_ok() && self.frobenius_fibers_trivial() && self.rows.iter().all(CensusRow::matches)
    }

    /// Error describing every mismatch, if any.
    pub fn check(&self) -> Result<()> {
        if self.passed() {
            return Ok(());
        }
        let mut msg = format!("census {} r={} n={} q={} j={}:", self.flavor.name(), self.r, self.n, self.q, self.j);
        for row in self.rows.iter().filter(|r| !r.matches()) {
            let _ = write!(
                msg,
                " i={} classes {} vs {}, fiber {:?} vs {};",
                row.i, row.classes, row.formula_classes, row.fiber, row.formula_fiber
            );
        }
        if !self.partition_ok() {
            let _ = write!(msg, " total {} vs {};", self.total, self.expected_total);
        }
        Err(Error::IdentityFailed(msg))
    }

    pub const CSV_HEADER: &'static str = "i,classes,fiber,formula_classes,formula_fiber,match";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for row in &self.rows {
            let fiber = row.fiber.map_or_else(|| "mixed".to_string(), |f| f.to_string());
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                row.i,
                row.classes,
                fiber,
                row.formula_classes,
                row.formula_fiber,
                row.matches()
            );
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "flavor": self.flavor.name(),
            "status": if self.proven() { "theorem" } else { "CONJECTURAL" },
            "r": self.r,
            "n": self.n,
            "q": self.q,
            "j": self.j,
            "total": self.total.to_string(),
            "expected_total": self.expected_total.to_string(),
            "rows": self.rows.iter().map(|row| json!({
                "i": row.i,
                "classes": row.classes.to_string(),
                "fiber": row.fiber.map(|f| f.to_string()),
                "formula_classes": row.formula_classes.to_string(),
                "formula_fiber": row.formula_fiber.to_string(),
                "match": row.matches(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "census flavor={} r={} dimD={} q={} j={} total={} expected={}{}\n",
            self.flavor.name(),
            self.r,
            self.n,
            self.q,
            self.j,
            self.total,
            self.expected_total,
            if self.proven() { "" } else { " [CONJECTURAL]" }
        );
        for row in &self.rows {
            let fiber = row.fiber.map_or_else(|| "mixed".to_string(), |f| f.to_string());
            let _ = writeln!(
                s,
                "  i={}: classes={} fiber={} formula=({}, {}) {}",
                row.i,
                row.classes,
                fiber,
                row.formula_classes,
                row.formula_fiber,
                if row.matches() { "ok" } else { "MISMATCH" }
            );
        }
        s
    }
}

fn pow_u128(base: usize, e: usize) -> u128 {
    (base as u128).pow(e as u32)
}

/// Groups the orbit by closed-point key and compares with the closed forms:
/// classes `𝔤(i,n)𝔤(j−i,r−n)`, fibers `𝔮^{(j−i)(n−i)}` (ordinary, unitary);
/// classes `𝔤(i,g)`, fibers `p^{(g+1−i)(g−i)/2}` on Lagrangians (Siegel).
pub fn census(t: &ModelPoint, j: usize, budget: u128) -> Result<ReductionCensus> {
    let q = t.field.order();
    let r = t.ambient();
    let n = t.d.dim();
    if let Flavor::Siegel { g } = t.flavor {
        if j != g {
            return Err(Error::InvalidParameter(format!("Siegel census is over Lagrangians: need j = g = {g}")));
        }
    }
    if matches!(t.flavor, Flavor::NonOrdinary | Flavor::Quadratic) {
        return Err(Error::WrongFlavor(format!(
            "{} points are classified by nonordinary_census",
            t.flavor.name()
        )));
    }
    let orbit = hecke_orbit(t, j, budget)?;
    let mut groups: BTreeMap<ClosedPointKey, u128> = BTreeMap::new();
    for w in &orbit {
        *groups.entry(closed_point_key(t, w)?).or_default() += 1;
    }
    let mut by_type: BTreeMap<usize, BTreeMap<u128, u128>> = BTreeMap::new();
    for (key, size) in &groups {
        *by_type.entry(key.meet.dim()).or_default().entry(*size).or_default() += 1;
    }
    let rows = by_type
        .into_iter()
        .rev()
        .map(|(i, sizes)| {
            let (formula_classes, formula_fiber) = match t.flavor {
                Flavor::Siegel { g } => (gaussian_count(i, g, q), pow_u128(q, (g + 1 - i) * (g - i) / 2)),
                _ => (
                    gaussian_count(i, n, q) * gaussian_count(j - i, r - n, q),
                    pow_u128(q, (j - i) * (n - i)),
                ),
            };
            CensusRow {
                i,
                classes: sizes.values().sum(),
                fiber: if sizes.len() == 1 { sizes.keys().next().copied() } else { None },
                fiber_sizes: sizes,
                formula_classes,
                formula_fiber,
            }
        })
        .collect();
    let expected_total = match t.flavor {
        Flavor::Siegel { g } => (1..=g).map(|i| pow_u128(q, i) + 1).product(),
        _ => gaussian_count(j, r, q),
    };
    Ok(ReductionCensus {
        flavor: t.flavor.clone(),
        r,
        n,
        q,
        j,
        rows,
        total: orbit.len() as u128,
        expected_total,
    })
}

/// Classification of the lines of a non-ordinary or quadratic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonOrdinaryReport {
    pub flavor: Flavor,
    pub r: usize,
    pub q: usize,
    /// Lines inside `D`: candidates for the `Ψ_1`-point.
    pub inside: usize,
    /// Lines outside `D`, grouped by `⟨W, D⟩` (over `F_{𝔮²}` for the quadratic flavor).
    pub outside: BTreeMap<Subspace, usize>,
    pub total: u128,
}

impl NonOrdinaryReport {
    pub fn to_text(&self, field: &PrimePowerField) -> String {
        let mut s = format!(
            "nonordinary census flavor={} r={} q={} lines={} [CONJECTURAL]\n  (a) lines in D: {} (one closed point of Psi1, also in Phi1)\n  (b) classes by span: {}\n",
            self.flavor.name(),
            self.r,
            self.q,
            self.total,
            self.inside,
            self.outside.len()
        );
        for (span, count) in &self.outside {
            let _ = writeln!(s, "    {} : {}", span.to_text(field), count);
        }
        s
    }

    pub fn to_json(&self, field: &PrimePowerField) -> Value {
        json!({
            "flavor": self.flavor.name(),
            "status": "CONJECTURAL",
            "r": self.r,
            "q": self.q,
            "lines": self.total.to_string(),
            "inside_d": self.inside,
            "span_classes": self.outside.iter().map(|(s, c)| json!({"span": s.to_text(field), "lines": c})).collect::<Vec<_>>(),
        })
    }
}

pub fn nonordinary_census(t: &ModelPoint, budget: u128) -> Result<NonOrdinaryReport> {
    if !matches!(t.flavor, Flavor::NonOrdinary | Flavor::Quadratic) {
        return Err(Error::WrongFlavor(format!("{} point given to nonordinary_census", t.flavor.name())));
    }
    let lines = hecke_orbit(t, 1, budget)?;
    let mut inside = 0;
    let mut outside: BTreeMap<Subspace, usize> = BTreeMap::new();
    for w in &lines {
        if t.d.contains(w, &t.field) {
            inside += 1;
            continue;
        }
        let span = w.span(&t.d, &t.field)?;
        let span = match &t.quadratic {
            Some(qs) => qs.f_q2_span(&t.field, &span)?,
            None => span,
        };
        *outside.entry(span).or_default() += 1;
    }
    Ok(NonOrdinaryReport {
        flavor: t.flavor.clone(),
        r: t.ambient(),
        q: t.field.order(),
        inside,
        outside,
        total: lines.len() as u128,
    })
}
