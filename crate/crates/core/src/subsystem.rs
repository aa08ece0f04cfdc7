//! Parameters ((n, K, R, d))_q of subsystem codes built from additive codes.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumerate::{EnumOptions, Outcome};
use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::lincode::{LinearCode, Weight};
use crate::symplectic::AdditiveCode;

/// Column subsets spent on lower bounds when enumeration is out of budget.
const COLUMN_BUDGET: u64 = 1 << 20;
/// Supports tried when a coset weight is out of enumeration range.
const SUPPORT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Distance {
    pub kind: DistanceKind,
    pub value: usize,
}

impl Distance {
    pub fn exact(value: usize) -> Self {
        Distance { kind: DistanceKind::Exact, value }
    }

    pub fn at_least(value: usize) -> Self {
        Distance { kind: DistanceKind::LowerBound, value }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == DistanceKind::Exact
    }

    /// Demote to a lower bound.
    pub fn bound(self) -> Self {
        Distance::at_least(self.value)
    }
}

impl From<Weight> for Distance {
    fn from(w: Weight) -> Self {
        match w {
            Weight::Exact(v) => Distance::exact(v),
            Weight::AtLeast(v) => Distance::at_least(v),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DistanceKind::Exact => write!(f, "{}", self.value),
            DistanceKind::LowerBound => write!(f, "≥{}", self.value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Purity {
    Pure,
    Impure,
    Unknown,
}

/// ((n, K, R, d))_q with K = p^k_exp and R = p^r_exp.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Descriptor {
    pub n: usize,
    pub p: u32,
    pub m: u32,
    pub k_exp: u32,
    pub r_exp: u32,
    pub d: Distance,
    /// No nonzero vector of the additive code has symplectic weight below this.
    pub pure_to: Option<Distance>,
    /// Whether the underlying code is GF(q)-linear.
    pub linear: bool,
    pub provenance: Vec<String>,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k(), self.r()) {
            (Some(k), Some(r)) => write!(f, "[[{},{},{},{}]]_{}", self.n, k, r, self.d, self.q()),
            _ => write!(
                f,
                "(({},{}^{},{}^{},{}))_{}",
                self.n,
                self.p,
                self.k_exp,
                self.p,
                self.r_exp,
                self.d,
                self.q()
            ),
        }
    }
}

impl Descriptor {
    /// A bracket-form record [[n,k,r,d]]_q.
    pub fn bracket(q: u32, n: usize, k: u32, r: u32, d: Distance) -> Result<Self> {
        let (p, m) = crate::galois::prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        let desc = Descriptor {
            n,
            p,
            m,
            k_exp: k * m,
            r_exp: r * m,
            d,
            pure_to: None,
            linear: false,
            provenance: Vec::new(),
        };
        desc.validate()?;
        Ok(desc)
    }

    pub fn with_pure_to(mut self, pure_to: Option<Distance>) -> Self {
        self.pure_to = pure_to;
        self
    }

    pub fn with_linear(mut self, linear: bool) -> Self {
        self.linear = linear;
        self
    }

    pub fn with_step(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }

    /// log_q K when it is an integer.
    pub fn k(&self) -> Option<u32> {
        self.k_exp.is_multiple_of(self.m).then_some(self.k_exp / self.m)
    }

    pub fn r(&self) -> Option<u32> {
        self.r_exp.is_multiple_of(self.m).then_some(self.r_exp / self.m)
    }

    pub fn is_stabilizer(&self) -> bool {
        self.r_exp == 0
    }

    pub fn purity(&self) -> Purity {
        match self.pure_to {
            None => Purity::Unknown,
            Some(pt) if pt.value >= self.d.value => Purity::Pure,
            Some(pt) if pt.is_exact() => Purity::Impure,
            _ => Purity::Unknown,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.purity() == Purity::Pure
    }

    /// Structural checks: K R divides q^n, d >= 1, and K = 1 codes are pure.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("length 0".into()));
        }
        if self.k_exp as u64 + self.r_exp as u64 > self.n as u64 * self.m as u64 {
            return Err(Error::InvalidParameter(format!("K R exceeds q^n in {self}")));
        }
        if self.d.value == 0 {
            return Err(Error::InvalidParameter("distance 0".into()));
        }
        if self.k_exp == 0 && self.purity() == Purity::Impure {
            return Err(Error::Precondition(format!("{self} has K = 1 but is impure")));
        }
        Ok(())
    }

    /// Largest d the Singleton bound allows: floor((n - k - r + 2) / 2).
    pub fn singleton_max_d(&self) -> Option<i64> {
        let (k, r) = (self.k()?, self.r()?);
        Some((self.n as i64 - k as i64 - r as i64 + 2).div_euclid(2))
    }

    /// A linear code whose lower bound meets the Singleton bound has that distance exactly.
    pub(crate) fn tighten(mut self) -> Self {
        if self.linear && !self.d.is_exact() && self.singleton_max_d() == Some(self.d.value as i64) {
            self.d = Distance::exact(self.d.value);
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingletonReport {
    /// (n - 2d + 2) - (k + r), evaluated at the recorded d.
    pub slack: i64,
    pub is_mds: bool,
    /// False when d is only a lower bound; then `slack` is an upper bound.
    pub determinate: bool,
}

/// Compare against k + r <= n - 2d + 2.
pub fn singleton_check(desc: &Descriptor) -> Result<SingletonReport> {
    let (k, r) = desc
        .k()
        .zip(desc.r())
        .ok_or_else(|| Error::Precondition(format!("{desc} has no bracket form")))?;
    let slack = desc.n as i64 - 2 * desc.d.value as i64 + 2 - (k + r) as i64;
    let determinate = desc.d.is_exact();
    Ok(SingletonReport { slack, is_mds: determinate && slack == 0, determinate })
}

/// K R sum_{j <= (d-1)/2} C(n,j) (q^2-1)^j == q^n for pure codes with exact d.
pub fn hamming_perfect_check(desc: &Descriptor) -> Result<bool> {
    if !desc.d.is_exact() {
        return Err(Error::Precondition("distance is not exact".into()));
    }
    if desc.purity() != Purity::Pure {
        return Err(Error::Precondition(format!("{desc} is not known to be pure")));
    }
    let p = BigUint::from(desc.p);
    let q = BigUint::from(desc.q());
    let q2m1 = &q * &q - 1u32;
    let mut ball = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    let mut power = BigUint::from(1u32);
    for j in 0..=(desc.d.value - 1) / 2 {
        if j > 0 {
            binom = binom * BigUint::from(desc.n - j + 1) / BigUint::from(j);
            power *= &q2m1;
        }
        ball += &binom * &power;
    }
    let kr = p.pow(desc.k_exp + desc.r_exp);
    Ok(kr * ball == q.pow(desc.n as u32))
}

/// Knobs for the distance computations.
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    pub enumeration: EnumOptions,
    /// A proven lower bound on d: stops searches early and backs up over-budget results.
    pub lower_bound: Option<usize>,
}

impl EngineOptions {
    pub fn with_lower_bound(mut self, lb: Option<usize>) -> Self {
        self.lower_bound = lb;
        self
    }
}

fn weight_or(outcome: Outcome, fallback: impl FnOnce() -> usize) -> Distance {
    match outcome {
        Outcome::Exact(w) => Distance::exact(w),
        _ => Distance::at_least(fallback().max(1)),
    }
}

/// The parameters attached to an additive code C of GF(q)^{2n}.
pub fn from_additive(c: &AdditiveCode, opts: &EngineOptions) -> Result<Descriptor> {
    if c.dim_p() == 0 {
        return Err(Error::Precondition("the zero code defines no subsystem code".into()));
    }
    let field = c.field();
    let n = c.n();
    let nm = n * field.m() as usize;
    let d_code = c.radical();
    let x = c.dim_p();
    let y = d_code.dim_p();
    debug_assert_eq!((x - y) % 2, 0);
    let k_exp = (nm - (x + y) / 2) as u32;
    let r_exp = ((x - y) / 2) as u32;
    let floor = opts.lower_bound.unwrap_or(1);
    let pure = c.min_swt(&opts.enumeration)?;
    let pure_to = match pure {
        Outcome::Exact(w) => Some(Distance::exact(w)),
        _ => None,
    };
    let d = if k_exp == 0 {
        // D^perp_s = C: the distance is swt(C).
        weight_or(pure, || floor)
    } else {
        let dperp = d_code.symp_dual();
        weight_or(dperp.coset_min_swt(c, floor, &opts.enumeration)?, || floor)
    };
    let desc = Descriptor {
        n,
        p: field.p(),
        m: field.m(),
        k_exp,
        r_exp,
        d,
        pure_to,
        linear: field.m() == 1,
        provenance: vec![format!("additive code n={n} q={} dim_p={x}", field.order())],
    }
    .tighten();
    desc.validate()?;
    Ok(desc)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dual {
    Euclidean,
    Hermitian,
}

fn linear_construction(c: &LinearCode, dual: Dual, opts: &EngineOptions) -> Result<Descriptor> {
    let field = c.field();
    let n = c.n();
    let cperp = match dual {
        Dual::Euclidean => c.dual(),
        Dual::Hermitian => c.hermitian_dual()?,
    };
    let d_code = c.intersect(&cperp)?;
    let k1 = c.k();
    let k2 = d_code.k();
    if k1 + k2 >= n {
        return Err(Error::Precondition(format!("k' + k'' = {} is not below n = {n}", k1 + k2)));
    }
    let dperp = match dual {
        Dual::Euclidean => d_code.dual(),
        Dual::Hermitian => d_code.hermitian_dual()?,
    };
    let floor = opts.lower_bound.unwrap_or(1);
    // k + r = n - 2 dim D, so the Singleton bound reads d <= dim D + 1.
    let singleton = k2 + 1;
    if floor > singleton {
        return Err(Error::Precondition(format!("lower bound {floor} exceeds the Singleton bound {singleton}")));
    }
    let d = if floor == singleton {
        Distance::exact(floor)
    } else {
        match dperp.coset_min_weight(c, floor, &opts.enumeration)? {
            Outcome::Exact(w) => Distance::exact(w),
            _ => {
                let lb = floor.max(dperp.column_distance(COLUMN_BUDGET).value());
                Distance::from(dperp.coset_column_weight(c, lb, SUPPORT_BUDGET)?)
            }
        }
    };
    let pure_to = if k1 == 0 {
        Some(d)
    } else {
        match c.min_weight(&opts.enumeration)? {
            Outcome::Exact(w) => Some(Distance::exact(w)),
            _ => Some(Distance::from(c.column_distance(COLUMN_BUDGET)).bound()),
        }
    };
    let (p, m, name) = match dual {
        Dual::Euclidean => (field.p(), field.m(), "euclidean"),
        Dual::Hermitian => (field.p(), field.m() / 2, "hermitian"),
    };
    let desc = Descriptor {
        n,
        p,
        m,
        k_exp: ((n - k1 - k2) as u32) * m,
        r_exp: ((k1 - k2) as u32) * m,
        d,
        pure_to,
        linear: true,
        provenance: vec![format!("{name} construction from [{n},{k1}]_{}", field.order())],
    }
    .tighten();
    desc.validate()?;
    Ok(desc)
}

/// [[n, n-(k'+k''), k'-k'', wt(D^perp \ C)]]_q from a GF(q)-linear C with D = C ∩ C^perp.
pub fn euclidean_construction(c: &LinearCode, opts: &EngineOptions) -> Result<Descriptor> {
    linear_construction(c, Dual::Euclidean, opts)
}

/// The Hermitian analogue for C over GF(q^2); the result is over GF(q).
pub fn hermitian_construction(c: &LinearCode, opts: &EngineOptions) -> Result<Descriptor> {
    if !c.field().is_quadratic() {
        return Err(Error::NotQuadratic(c.field().order()));
    }
    linear_construction(c, Dual::Hermitian, opts)
}

/// Recompute the Hermitian descriptor through the additive expansion of C.
pub fn hermitian_via_additive(c: &LinearCode, opts: &EngineOptions) -> Result<Descriptor> {
    let add = crate::symplectic::herm_expand(c)?;
    let mut desc = from_additive(&add, opts)?;
    desc.linear = true;
    Ok(desc.tighten())
}

/// Order of GF(q) for a descriptor's field, as a field context.
pub fn descriptor_field(desc: &Descriptor) -> Result<FieldSpec> {
    FieldSpec::new(desc.p, desc.m)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Dim {
    Int(u32),
    /// "e/m": log_q of a non-integral power of q.
    Frac(String),
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    n: usize,
    k: Dim,
    r: Dim,
    d: Distance,
    q: u32,
    #[serde(default)]
    pure_to: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pure_to_kind: Option<DistanceKind>,
    #[serde(default)]
    purity: Option<Purity>,
    #[serde(default)]
    linear: bool,
    #[serde(default)]
    provenance: Vec<String>,
}

fn dim_to_json(exp: u32, m: u32) -> Dim {
    if exp.is_multiple_of(m) {
        Dim::Int(exp / m)
    } else {
        Dim::Frac(format!("{exp}/{m}"))
    }
}

fn dim_from_json(d: &Dim, m: u32) -> std::result::Result<u32, String> {
    match d {
        Dim::Int(v) => Ok(v * m),
        Dim::Frac(s) => {
            let (e, mm) = s.split_once('/').ok_or_else(|| format!("bad dimension {s:?}"))?;
            let e: u32 = e.trim().parse().map_err(|_| format!("bad dimension {s:?}"))?;
            let mm: u32 = mm.trim().parse().map_err(|_| format!("bad dimension {s:?}"))?;
            if mm != m {
                return Err(format!("dimension {s:?} does not use denominator {m}"));
            }
            Ok(e)
        }
    }
}

impl Serialize for Descriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DescriptorJson {
            n: self.n,
            k: dim_to_json(self.k_exp, self.m),
            r: dim_to_json(self.r_exp, self.m),
            d: self.d,
            q: self.q(),
            pure_to: self.pure_to.map(|p| p.value),
            pure_to_kind: self.pure_to.map(|p| p.kind),
            purity: Some(self.purity()),
            linear: self.linear,
            provenance: self.provenance.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Descriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DescriptorJson::deserialize(d)?;
        let (p, m) = crate::galois::prime_power(raw.q).ok_or_else(|| D::Error::custom("q is not a prime power"))?;
        let pure_to = raw.pure_to.map(|v| Distance {
            kind: raw.pure_to_kind.unwrap_or(DistanceKind::LowerBound),
            value: v,
        });
        let desc = Descriptor {
            n: raw.n,
            p,
            m,
            k_exp: dim_from_json(&raw.k, m).map_err(D::Error::custom)?,
            r_exp: dim_from_json(&raw.r, m).map_err(D::Error::custom)?,
            d: raw.d,
            pure_to,
            linear: raw.linear,
            provenance: raw.provenance,
        };
        // An explicit purity claim without a pure_to value.
        let desc = match (raw.purity, desc.pure_to) {
            (Some(Purity::Pure), None) => desc.with_pure_to(Some(raw.d)),
            (Some(Purity::Impure), None) => {
                return Err(D::Error::custom("impure records need an exact pure_to below d"))
            }
            _ => desc,
        };
        desc.validate().map_err(D::Error::custom)?;
        Ok(desc)
    }
}
