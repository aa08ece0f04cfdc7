//! Arithmetic in GF(p^m) and univariate polynomials over it.
//!
//! Elements are plain integers `0..q`: the polynomial-basis coefficients
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` are packed base p as
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The constants `0..p` are therefore
//! exactly the prime subfield. Every field carries exponent/log tables over
//! a primitive modulus, so multiplication and inversion are table lookups.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::moduli::PRIMITIVE_MODULI;

/// A field element in the packed polynomial-basis encoding.
pub type Elem = u32;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<u16>>,
    trace: Vec<u32>,
}

/// GF(p^m) arithmetic context. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p(), self.m(), self.inner.modulus)
    }
}

impl FieldSpec {
    /// GF(p^m) with the shipped primitive modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=16).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if (p as u64).checked_pow(m).is_none_or(|q| q > MAX_FIELD_SIZE) {
            return Err(Error::FieldTooLarge { p, m });
        }
        let modulus = if m == 1 {
            let g = arith::primitive_root(p);
            vec![(p - g) % p, 1]
        } else {
            PRIMITIVE_MODULI
                .iter()
                .find(|(tp, tm, _)| *tp == p && *tm == m)
                .map(|(_, _, f)| f.to_vec())
                .ok_or(Error::FieldTooLarge { p, m })?
        };
        Self::with_modulus(p, modulus)
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Field of order q (a prime power) with the shipped modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| {
            Error::InvalidParameter(format!("{q} is not a prime power"))
        })?;
        Self::new(p, m)
    }

    /// GF(p^m) for an explicit monic modulus (low-to-high), which must be primitive.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::NotPrimitive(p));
        }
        let m = (modulus.len() - 1) as u32;
        if m > 16 {
            return Err(Error::DegreeOutOfRange(m));
        }
        let q64 = (p as u64).pow(m);
        if q64 > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { p, m });
        }
        let q = q64 as u32;
        let order = (q - 1) as usize;

        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u32; m as usize];
        digits[0] = 1;
        for i in 0..order {
            let v = pack(&digits, p);
            if log[v as usize] != u32::MAX {
                return Err(Error::NotPrimitive(p));
            }
            log[v as usize] = i as u32;
            exp[i] = v;
            exp[i + order] = v;
            times_x(&mut digits, &modulus, p);
        }
        if pack(&digits, p) != 1 {
            return Err(Error::NotPrimitive(p));
        }

        let neg = (0..q)
            .map(|a| {
                let d = unpack(a, p, m);
                pack(&d.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)
            })
            .collect();
        let add = if p != 2 && q <= 256 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b, p, m) as u16;
                }
            }
            Some(t)
        } else {
            None
        };

        let mut tables = Tables { p, m, q, modulus, exp, log, neg, add, trace: Vec::new() };
        // Absolute trace x + x^p + ... + x^{p^{m-1}}, always a constant in 0..p.
        let trace = {
            let f = FieldSpec { inner: Arc::new(Tables { trace: Vec::new(), ..clone_tables(&tables) }) };
            (0..q).map(|x| f.trace_raw(x, 1)).collect::<Vec<_>>()
        };
        tables.trace = trace;
        Ok(FieldSpec { inner: Arc::new(tables) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field size q = p^m.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The root of the modulus, a generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.inner.exp[if self.inner.q == 2 { 0 } else { 1 }]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.inner;
        if t.p == 2 {
            a ^ b
        } else if let Some(tab) = &t.add {
            tab[(a * t.q + b) as usize] as Elem
        } else {
            add_digits(a, b, t.p, t.m)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let t = &*self.inner;
        let order = t.q - 1;
        Some(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.inner;
        let order = (t.q - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// alpha^i for the primitive element alpha.
    pub fn exp(&self, i: u64) -> Elem {
        let order = (self.inner.q - 1) as u64;
        self.inner.exp[(i % order) as usize]
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let order = (self.inner.q - 1) as u64;
        Some(order / arith::gcd(l, order))
    }

    /// Polynomial-basis coefficients over GF(p), low to high, length m.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        unpack(a, self.inner.p, self.inner.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.inner.m as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::Malformed(format!(
                "expected {} coefficients in 0..{}",
                self.inner.m, self.inner.p
            )));
        }
        Ok(pack(coeffs, self.inner.p))
    }

    /// Prime-field constant for an integer (reduced mod p).
    pub fn from_int(&self, c: i64) -> Elem {
        c.rem_euclid(self.inner.p as i64) as Elem
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.inner.q
    }

    /// Trace from GF(p^m) down to GF(p^s): sum of x^{(p^s)^i} for i < m/s.
    pub fn trace(&self, x: Elem, sub_degree: u32) -> Result<Elem> {
        if sub_degree == 0 || !self.inner.m.is_multiple_of(sub_degree) {
            return Err(Error::NotSubfield { p: self.inner.p, sub: sub_degree, m: self.inner.m });
        }
        if sub_degree == 1 {
            return Ok(self.inner.trace[x as usize]);
        }
        Ok(self.trace_raw(x, sub_degree))
    }

    /// Absolute trace tr_{q/p}, a constant in `0..p`.
    #[inline]
    pub fn trace_prime(&self, x: Elem) -> u32 {
        self.inner.trace[x as usize]
    }

    fn trace_raw(&self, x: Elem, s: u32) -> Elem {
        let step = (self.inner.p as u64).pow(s);
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.inner.m / s {
            acc = self.add(acc, y);
            y = self.pow(y, step);
        }
        acc
    }

    /// True if the field is GF(q^2) for some q (even extension degree).
    pub fn is_quadratic(&self) -> bool {
        self.inner.m.is_multiple_of(2)
    }

    /// Order of the designated subfield GF(q) inside GF(q^2).
    pub fn sqrt_order(&self) -> Result<u32> {
        if !self.is_quadratic() {
            return Err(Error::NotQuadratic(self.inner.q));
        }
        Ok(self.inner.p.pow(self.inner.m / 2))
    }

    /// The q-power map x -> x^q on GF(q^2).
    pub fn conj(&self, x: Elem) -> Result<Elem> {
        let q = self.sqrt_order()?;
        Ok(self.pow(x, q as u64))
    }

    /// Membership in the subfield GF(p^s).
    pub fn in_subfield(&self, x: Elem, s: u32) -> bool {
        self.inner.m.is_multiple_of(s) && self.pow(x, (self.inner.p as u64).pow(s)) == x
    }

    /// Elements of the subfield GF(p^s), sorted.
    pub fn subfield_elements(&self, s: u32) -> Result<Vec<Elem>> {
        if s == 0 || !self.inner.m.is_multiple_of(s) {
            return Err(Error::NotSubfield { p: self.inner.p, sub: s, m: self.inner.m });
        }
        let mut v: Vec<Elem> = (0..self.inner.q).filter(|&x| self.in_subfield(x, s)).collect();
        v.sort_unstable();
        Ok(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }
}

fn clone_tables(t: &Tables) -> Tables {
    Tables {
        p: t.p,
        m: t.m,
        q: t.q,
        modulus: t.modulus.clone(),
        exp: t.exp.clone(),
        log: t.log.clone(),
        neg: t.neg.clone(),
        add: t.add.clone(),
        trace: t.trace.clone(),
    }
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn unpack(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn add_digits(mut a: u32, mut b: u32, p: u32, m: u32) -> u32 {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// Multiply a residue (digits low-to-high, length m) by x modulo the monic modulus.
fn times_x(digits: &mut [u32], modulus: &[u32], p: u32) {
    let m = digits.len();
    let top = digits[m - 1];
    for j in (1..m).rev() {
        digits[j] = digits[j - 1];
    }
    digits[0] = 0;
    if top != 0 {
        for j in 0..m {
            digits[j] = (digits[j] + (p - top) * modulus[j]) % p;
        }
    }
}

/// Decompose a prime power q = p^m.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

/// Explicit embedding of a subfield `small` into `big` (same characteristic).
///
/// The image of the primitive element of `small` is the first element of
/// `big` (in increasing log order among subfield generators) that is a root
/// of `small`'s modulus, so the embedding is a field homomorphism.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldSpec,
    big: FieldSpec,
    image: Vec<Elem>,
    preimage: Vec<u32>,
}

impl Embedding {
    pub fn new(small: &FieldSpec, big: &FieldSpec) -> Result<Self> {
        if small.p() != big.p() || !big.m().is_multiple_of(small.m()) {
            return Err(Error::NotSubfield { p: small.p(), sub: small.m(), m: big.m() });
        }
        let qs = small.order() as u64;
        let qb = big.order() as u64;
        let step = (qb - 1) / (qs - 1);
        let generator = if small.m() == 1 {
            // Prime subfields are the constants in both encodings.
            small.primitive()
        } else {
            (1..qs - 1)
                .filter(|&j| arith::gcd(j, qs - 1) == 1)
                .map(|j| big.exp(j * step))
                .find(|&beta| {
                    // Evaluate small's modulus at beta; coefficients are prime-field constants.
                    small.modulus().iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, beta), c)) == 0
                })
                .ok_or(Error::NotPrimitive(small.p()))?
        };
        let mut image = vec![0; small.order() as usize];
        let mut preimage = vec![u32::MAX; big.order() as usize];
        preimage[0] = 0;
        if small.m() == 1 {
            for c in 0..small.order() {
                image[c as usize] = c;
                preimage[c as usize] = c;
            }
        } else {
            for i in 0..qs - 1 {
                let s = small.exp(i);
                let b = big.pow(generator, i);
                image[s as usize] = b;
                preimage[b as usize] = s;
            }
        }
        Ok(Embedding { small: small.clone(), big: big.clone(), image, preimage })
    }

    pub fn small(&self) -> &FieldSpec {
        &self.small
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    #[inline]
    pub fn map(&self, x: Elem) -> Elem {
        self.image[x as usize]
    }

    /// Inverse image, if `y` lies in the embedded subfield.
    #[inline]
    pub fn lift(&self, y: Elem) -> Option<Elem> {
        let v = self.preimage[y as usize];
        (v != u32::MAX).then_some(v)
    }
}

/// GF(q^2) over GF(q) with the fixed basis {1, beta}, beta the primitive
/// element of GF(q^2). Used by the Hermitian-to-symplectic expansion.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    embed: Embedding,
    beta: Elem,
    split: Vec<(Elem, Elem)>,
}

impl QuadraticExtension {
    /// Build for a GF(q^2) field, creating GF(q) with the shipped modulus.
    pub fn new(big: &FieldSpec) -> Result<Self> {
        if !big.is_quadratic() {
            return Err(Error::NotQuadratic(big.order()));
        }
        let small = FieldSpec::new(big.p(), big.m() / 2)?;
        let embed = Embedding::new(&small, big)?;
        let beta = big.primitive();
        let mut split = vec![(0, 0); big.order() as usize];
        for u in small.elements() {
            for v in small.elements() {
                let y = big.add(embed.map(u), big.mul(beta, embed.map(v)));
                split[y as usize] = (u, v);
            }
        }
        Ok(QuadraticExtension { embed, beta, split })
    }

    pub fn big(&self) -> &FieldSpec {
        self.embed.big()
    }

    pub fn small(&self) -> &FieldSpec {
        self.embed.small()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embed
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// Coordinates (u, v) in GF(q) with y = u + beta v.
    #[inline]
    pub fn split(&self, y: Elem) -> (Elem, Elem) {
        self.split[y as usize]
    }

    pub fn join(&self, u: Elem, v: Elem) -> Elem {
        let big = self.big();
        big.add(self.embed.map(u), big.mul(self.beta, self.embed.map(v)))
    }
}

/// Univariate polynomial over a field, coefficients low to high with no
/// trailing zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::new(field, vec![1])
    }

    /// c * x^k.
    pub fn monomial(field: &FieldSpec, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// x^n - 1.
    pub fn x_n_minus_one(field: &FieldSpec, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], lead_inv);
            let shift = top - dd;
            if c != 0 {
                quot[shift] = c;
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] = f.sub(rem[shift + j], f.mul(c, dc));
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Same polynomial scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_base_field() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.primitive(), 1);
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.primitive();
        assert_eq!(w, 2);
        // w^2 = w + 1
        assert_eq!(f.mul(w, w), f.add(w, 1));
    }

    #[test]
    fn gf9_modulus_has_no_roots_in_gf3() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        let m = f.modulus().to_vec();
        for x in 0..3u32 {
            let v = (m[0] + m[1] * x + m[2] * x * x) % 3;
            assert_ne!(v, 0, "root {x} found in GF(3)");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(2, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(FieldSpec::new(2, 17).unwrap_err(), Error::DegreeOutOfRange(17));
        assert!(matches!(FieldSpec::new(3, 11), Err(Error::FieldTooLarge { .. })));
        // x^2 + 1 over GF(3) is irreducible but not primitive.
        assert_eq!(FieldSpec::with_modulus(3, vec![1, 0, 1]).unwrap_err(), Error::NotPrimitive(3));
    }

    #[test]
    fn trace_examples_gf4() {
        let f = FieldSpec::new(2, 2).unwrap();
        let w = f.primitive();
        assert_eq!(f.trace(0, 1).unwrap(), 0);
        assert_eq!(f.trace(w, 1).unwrap(), 1);
        assert_eq!(f.trace(1, 1).unwrap(), 0);
        assert_eq!(f.trace(w, 2).unwrap(), w);
        assert!(matches!(f.trace(w, 3), Err(Error::NotSubfield { .. })));
    }

    #[test]
    fn conj_examples_gf4() {
        let f = FieldSpec::new(2, 2).unwrap();
        let w = f.primitive();
        assert_eq!(f.conj(0).unwrap(), 0);
        assert_eq!(f.conj(1).unwrap(), 1);
        assert_eq!(f.conj(w).unwrap(), f.mul(w, w));
        let g8 = FieldSpec::new(2, 3).unwrap();
        assert_eq!(g8.conj(1).unwrap_err(), Error::NotQuadratic(8));
    }

    #[test]
    fn primitive_element_orders() {
        for (p, m) in [(2, 1), (2, 4), (2, 8), (3, 2), (3, 5), (5, 3), (7, 2), (13, 2)] {
            let f = FieldSpec::new(p, m).unwrap();
            if f.order() <= 256 {
                assert_eq!(f.elem_order(f.primitive()).unwrap(), (f.order() - 1) as u64);
            }
        }
    }

    #[test]
    fn shipped_moduli_are_primitive() {
        for &(p, m, coeffs) in PRIMITIVE_MODULI {
            FieldSpec::with_modulus(p, coeffs.to_vec())
                .unwrap_or_else(|e| panic!("GF({p}^{m}): {e}"));
        }
    }

    #[test]
    fn poly_examples() {
        let g3 = FieldSpec::new(3, 1).unwrap();
        let a = Poly::new(&g3, vec![2, 0, 1]); // x^2 - 1
        let b = Poly::new(&g3, vec![2, 1]); // x - 1
        assert_eq!(a.gcd(&b).unwrap(), b);

        let g2 = FieldSpec::new(2, 1).unwrap();
        let xp1 = Poly::new(&g2, vec![1, 1]);
        assert_eq!(xp1.mul(&xp1).unwrap(), Poly::new(&g2, vec![1, 0, 1]));

        let g4 = FieldSpec::new(2, 2).unwrap();
        let modpoly = Poly::new(&g4, vec![1, 1, 1]);
        assert_eq!(modpoly.eval(g4.primitive()), 0);
    }

    #[test]
    fn poly_errors() {
        let g2 = FieldSpec::new(2, 1).unwrap();
        let g3 = FieldSpec::new(3, 1).unwrap();
        let a = Poly::one(&g2);
        assert_eq!(a.divmod(&Poly::zero(&g2)).unwrap_err(), Error::DivisionByZero);
        assert_eq!(a.add(&Poly::one(&g3)).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn divmod_degree_bound() {
        let f = FieldSpec::new(2, 4).unwrap();
        let a = Poly::new(&f, vec![3, 7, 1, 9, 12, 5, 1]);
        let b = Poly::new(&f, vec![4, 0, 11, 2]);
        let (qt, r) = a.divmod(&b).unwrap();
        assert!(r.degree().is_none_or(|d| d < 3));
        assert_eq!(qt.mul(&b).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn embedding_is_homomorphic() {
        let small = FieldSpec::new(2, 2).unwrap();
        let big = FieldSpec::new(2, 4).unwrap();
        let e = Embedding::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.map(small.mul(a, b)), big.mul(e.map(a), e.map(b)));
                assert_eq!(e.map(small.add(a, b)), big.add(e.map(a), e.map(b)));
            }
            assert_eq!(e.lift(e.map(a)), Some(a));
        }
        let g8 = FieldSpec::new(2, 3).unwrap();
        assert!(Embedding::new(&small, &g8).is_err());
    }

    #[test]
    fn quadratic_split_roundtrip() {
        for (p, m) in [(2, 2), (3, 2), (2, 4), (5, 2)] {
            let big = FieldSpec::new(p, m).unwrap();
            let ext = QuadraticExtension::new(&big).unwrap();
            for y in big.elements() {
                let (u, v) = ext.split(y);
                assert_eq!(ext.join(u, v), y);
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
    }
}
