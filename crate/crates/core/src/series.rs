//! Laurent polynomials and truncated Laurent series in a ramified variable
//! `zeta = z^(1/m)`.
//!
//! A [`Series`] is a finite map from rational exponents (denominator dividing
//! the ramification) to cyclotomic coefficients.  It is either an exact
//! Laurent polynomial or a truncated series `... + O(z^p)`: all inputs and
//! canonical outputs of the reduction pipelines are exact polynomials, while
//! intermediate gauge transformations carry a tracked precision.  Precision
//! propagation is pessimistic and never silently extends what is provable.
//!
//! The derivation is `z d/dz` (so `z^e -> e z^e`), the coverings act by
//! substitution `z -> z^m`, and the Galois group of the covering
//! `k((z^(1/l))) / k((z))` acts by `z^(1/l) -> omega_l z^(1/l)`.

use alloc::collections::BTreeMap;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, Rational};

/// Exponents of the variable `z`: rationals with small numerator and
/// denominator (the denominator divides the ramification).
pub type Exponent = num_rational::Ratio<i64>;

/// Convert an exponent into a field element (used by `z d/dz`).
pub fn exponent_scalar(e: Exponent) -> Cyclotomic {
    Cyclotomic::from_rational(Rational::new((*e.numer()).into(), (*e.denom()).into()))
}

/// Truncation state of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// All terms are known; the series is an exact Laurent polynomial.
    Exact,
    /// Terms with exponent `>= p` are unknown.
    Truncated(Exponent),
}

/// A Laurent polynomial or truncated Laurent series in `z^(1/m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    ramification: u64,
    terms: BTreeMap<Exponent, Cyclotomic>,
    kind: Kind,
}

impl Series {
    // -- construction --------------------------------------------------------

    pub fn zero() -> Self {
        Series {
            ramification: 1,
            terms: BTreeMap::new(),
            kind: Kind::Exact,
        }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    /// The monomial `c * z^e`.
    pub fn monomial(c: Cyclotomic, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        let mut s = Series {
            ramification: 1,
            terms,
            kind: Kind::Exact,
        };
        s.normalize();
        s
    }

    /// The variable `z` itself.
    pub fn z() -> Self {
        Self::monomial(Cyclotomic::one(), Exponent::one())
    }

    /// An exact polynomial from a term list; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Cyclotomic)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Exponent, Cyclotomic> = BTreeMap::new();
        for (e, c) in iter {
            let entry = terms.entry(e).or_insert_with(Cyclotomic::zero);
            *entry = entry.add_ref(&c);
        }
        let mut s = Series {
            ramification: 1,
            terms,
            kind: Kind::Exact,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Kind::Truncated(p) = self.kind {
            self.terms.retain(|e, _| *e < p);
        }
        self.terms.retain(|_, c| !c.is_zero());
        let mut ram: u64 = 1;
        for e in self.terms.keys() {
            ram = ram.lcm(&(*e.denom() as u64));
        }
        if let Kind::Truncated(p) = self.kind {
            ram = ram.lcm(&(*p.denom() as u64));
        }
        self.ramification = ram;
    }

    // -- accessors ------------------------------------------------------------

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Exact)
    }

    /// The precision bound, when truncated.
    pub fn precision(&self) -> Option<Exponent> {
        match self.kind {
            Kind::Exact => None,
            Kind::Truncated(p) => Some(p),
        }
    }

    /// Exactly zero (the zero polynomial).  A truncated series with no known
    /// terms is only zero up to its precision, which this does not claim.
    pub fn is_zero(&self) -> bool {
        self.is_exact() && self.terms.is_empty()
    }

    /// No stored terms: zero as far as the precision can see.
    pub fn has_no_terms(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least stored exponent; `None` when no term is stored.
    pub fn valuation(&self) -> Option<Exponent> {
        self.terms.keys().next().copied()
    }

    /// A lower bound for the valuation: the least stored exponent, or the
    /// precision when nothing is stored; `None` only for the exact zero.
    fn valuation_bound(&self) -> Option<Exponent> {
        match (self.valuation(), self.kind) {
            (Some(v), _) => Some(v),
            (None, Kind::Truncated(p)) => Some(p),
            (None, Kind::Exact) => None,
        }
    }

    /// The coefficient of `z^e`; `None` when `e` is beyond the precision.
    pub fn coefficient(&self, e: Exponent) -> Option<Cyclotomic> {
        if let Kind::Truncated(p) = self.kind {
            if e >= p {
                return None;
            }
        }
        Some(self.terms.get(&e).cloned().unwrap_or_else(Cyclotomic::zero))
    }

    /// The constant coefficient, `None` when unknown.
    pub fn constant_coefficient(&self) -> Option<Cyclotomic> {
        self.coefficient(Exponent::zero())
    }

    /// True when the series provably equals a constant: no stored term with
    /// nonzero exponent.  (For truncated series the tail is certified only
    /// up to the precision.)
    pub fn is_constant_up_to_precision(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// Iterate over `(exponent, coefficient)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &Cyclotomic)> {
        self.terms.iter()
    }

    /// Degree (largest stored exponent); `None` for no stored terms.
    pub fn degree(&self) -> Option<Exponent> {
        self.terms.keys().next_back().copied()
    }

    // -- arithmetic -----------------------------------------------------------

    fn join_kind(a: Kind, b: Kind) -> Kind {
        match (a, b) {
            (Kind::Exact, k) | (k, Kind::Exact) => k,
            (Kind::Truncated(p), Kind::Truncated(q)) => Kind::Truncated(p.min(q)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Cyclotomic::zero);
            *entry = entry.add_ref(c);
        }
        let mut s = Series {
            ramification: 1,
            terms,
            kind: Self::join_kind(self.kind, other.kind),
        };
        s.normalize();
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            ramification: self.ramification,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
            kind: self.kind,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // An exact zero annihilates even unknown tails.
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let kind = match (self.kind, other.kind) {
            (Kind::Exact, Kind::Exact) => Kind::Exact,
            _ => {
                // p = min(p_a + val(b), p_b + val(a)) over the truncated sides.
                let mut p: Option<Exponent> = None;
                if let Kind::Truncated(pa) = self.kind {
                    let q = pa + other.valuation_bound().expect("nonzero");
                    p = Some(p.map_or(q, |x: Exponent| x.min(q)));
                }
                if let Kind::Truncated(pb) = other.kind {
                    let q = pb + self.valuation_bound().expect("nonzero");
                    p = Some(p.map_or(q, |x: Exponent| x.min(q)));
                }
                Kind::Truncated(p.expect("at least one side truncated"))
            }
        };
        let mut terms: BTreeMap<Exponent, Cyclotomic> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if let Kind::Truncated(p) = kind {
                    if e >= p {
                        continue;
                    }
                }
                let c = ca.mul_ref(cb);
                let entry = terms.entry(e).or_insert_with(Cyclotomic::zero);
                *entry = entry.add_ref(&c);
            }
        }
        let mut s = Series {
            ramification: 1,
            terms,
            kind,
        };
        s.normalize();
        s
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return match self.kind {
                Kind::Exact => Self::zero(),
                Kind::Truncated(p) => Self::zero().truncate(p),
            };
        }
        let mut s = Series {
            ramification: self.ramification,
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul_ref(c))).collect(),
            kind: self.kind,
        };
        s.normalize();
        s
    }

    /// Forget terms with exponent `>= p`, marking the result truncated.  If
    /// the series is already truncated more strictly, the stricter bound is
    /// kept.
    pub fn truncate(&self, p: Exponent) -> Self {
        let bound = match self.kind {
            Kind::Exact => p,
            Kind::Truncated(q) => q.min(p),
        };
        let mut s = self.clone();
        s.kind = Kind::Truncated(bound);
        s.normalize();
        s
    }

    /// The multiplicative inverse to the largest provable precision `p' >= p`
    /// where `p` bounds the valuation of `self * inverse - 1`.
    ///
    /// Exact for monomials; otherwise returns a truncated series.
    pub fn invert_to_precision(&self, p: Exponent) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(v) = self.valuation() else {
            // Truncated with no known leading coefficient.
            let avail = self.precision().unwrap();
            return Err(Error::InsufficientPrecision {
                needed: p,
                available: avail,
            });
        };
        let lead = self.terms.get(&v).unwrap().clone();
        let lead_inv = lead.inv()?;
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Self::monomial(lead_inv, -v));
        }
        // Largest provable product precision.
        let product_target = match self.kind {
            Kind::Exact => p,
            Kind::Truncated(pa) => {
                let best = pa - v;
                if best < p {
                    return Err(Error::InsufficientPrecision {
                        needed: p,
                        available: best,
                    });
                }
                best
            }
        };
        let mut inv = Self::monomial(lead_inv.clone(), -v);
        // residual = 1 - self * inv, updated incrementally.
        let mut residual = Self::one().sub(&self.mul(&inv));
        while let Some(e) = residual.valuation() {
            if e >= product_target {
                break;
            }
            let c = residual.terms.get(&e).unwrap().clone();
            let term = Self::monomial(c.mul_ref(&lead_inv), e - v);
            residual = residual.sub(&self.mul(&term));
            inv = inv.add(&term);
        }
        Ok(inv.truncate(product_target - v))
    }

    // -- derivation, substitution, Galois action ------------------------------

    /// The derivation `z d/dz`: termwise `c z^e -> e c z^e`.
    pub fn z_ddz(&self) -> Self {
        let mut s = Series {
            ramification: self.ramification,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.mul_ref(&exponent_scalar(*e))))
                .collect(),
            kind: self.kind,
        };
        s.normalize();
        s
    }

    /// The covering substitution `z -> z^m`: every exponent is multiplied by
    /// `m`.  Injective and exact on polynomials.
    pub fn substitute_power(&self, m: u64) -> Self {
        assert!(m >= 1);
        self.scale_exponents(Exponent::from_integer(m as i64))
    }

    /// Multiply every exponent (and the precision) by a positive rational.
    /// `substitute_power` is the integer case; the reciprocal case re-reads a
    /// series on the `m`-fold covering in the ramified variable `z^(1/m)`.
    pub fn scale_exponents(&self, factor: Exponent) -> Self {
        assert!(factor.is_positive());
        let kind = match self.kind {
            Kind::Exact => Kind::Exact,
            Kind::Truncated(p) => Kind::Truncated(p * factor),
        };
        let mut s = Series {
            ramification: 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * factor, c.clone()))
                .collect(),
            kind,
        };
        s.normalize();
        s
    }

    /// Apply `gamma^t` where `gamma` generates the Galois group of the
    /// covering `k((z^(1/l)))/k((z))`: `gamma(z^(1/l)) = omega_l z^(1/l)`,
    /// so the term `c z^e` picks up the factor `omega_l^(t e l)`.
    pub fn galois_act(&self, l: u64, t: i64) -> Result<Self> {
        if l == 0 || l % self.ramification != 0 {
            return Err(Error::RamificationMismatch {
                ramification: self.ramification,
                level: l,
            });
        }
        let mut s = Series {
            ramification: self.ramification,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let j = e.numer() * (l as i64 / e.denom());
                    (
                        *e,
                        c.mul_ref(&Cyclotomic::root_of_unity(l, t.wrapping_mul(j))),
                    )
                })
                .collect(),
            kind: self.kind,
        };
        s.normalize();
        Ok(s)
    }
}

/// A 1-form `coefficient * dlog z`, where `dlog z = z^-1 dz`.
///
/// `dlog z` is the reference form in every ramification: on the `m`-fold
/// covering, `dlog z^(1/m) = (1/m) dlog z` is converted at the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogForm {
    pub coefficient: Series,
}

impl LogForm {
    pub fn new(coefficient: Series) -> Self {
        LogForm { coefficient }
    }

    /// The logarithmic differential `dlog u = (z d/dz (u) / u) dlog z` of a
    /// unit `u`, to the requested product precision.
    pub fn dlog_of(u: &Series, p: Exponent) -> Result<Self> {
        let inv = u.invert_to_precision(p)?;
        Ok(LogForm {
            coefficient: u.z_ddz().mul(&inv),
        })
    }

    /// Pull-back along the `m`-fold covering:
    /// `f(z) dlog z -> m f(z^m) dlog z`.
    pub fn pullback(&self, m: u64) -> Self {
        LogForm {
            coefficient: self
                .coefficient
                .substitute_power(m)
                .scale(&Cyclotomic::from_integer(m as i64)),
        }
    }

    /// Galois action of the covering group; `dlog z` is invariant because
    /// `gamma(z^(1/l)) / z^(1/l)` is constant.
    pub fn galois_act(&self, l: u64, t: i64) -> Result<Self> {
        Ok(LogForm {
            coefficient: self.coefficient.galois_act(l, t)?,
        })
    }
}

fn fmt_exponent(e: Exponent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.is_integer() {
        write!(f, "{}", e.numer())
    } else {
        write!(f, "({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for Series {
    /// Renders in the syntax understood by the CLI parser: scalar
    /// coefficients times `z^(a/b)` monomials, with an `O(z^(p))` suffix for
    /// truncated series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use alloc::string::ToString;
        let mut first = true;
        for (e, c) in &self.terms {
            let text = c.to_string();
            let (sign_neg, mag) = match text.strip_prefix('-') {
                // A leading minus can be pulled out only for single-term scalars.
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    (true, rest.to_string())
                }
                _ => (false, text),
            };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let needs_parens = mag.contains(' ');
            if e.is_zero() {
                if needs_parens {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else {
                if mag != "1" {
                    if needs_parens {
                        write!(f, "({mag})*")?;
                    } else {
                        write!(f, "{mag}*")?;
                    }
                }
                write!(f, "z")?;
                if !e.is_one() {
                    write!(f, "^")?;
                    fmt_exponent(*e, f)?;
                }
            }
        }
        match self.kind {
            Kind::Exact => {
                if first {
                    write!(f, "0")?;
                }
            }
            Kind::Truncated(p) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(z^")?;
                fmt_exponent(p, f)?;
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}
