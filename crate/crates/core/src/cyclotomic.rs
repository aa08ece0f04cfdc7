//! Cyclotomic cosets, defining sets and generator polynomials of cyclic codes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::galois::{Embedding, FieldSpec, Poly};

fn check_coprime(n: usize, q: u32) -> Result<()> {
    if n == 0 || arith::gcd(n as u64, q as u64) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    Ok(())
}

/// The q-cyclotomic coset of `x` modulo `n`, sorted.
pub fn coset(x: usize, n: usize, q: u32) -> Result<Vec<usize>> {
    check_coprime(n, q)?;
    let x = x % n;
    let mut out = vec![x];
    let mut y = x * q as usize % n;
    while y != x {
        out.push(y);
        y = y * q as usize % n;
    }
    out.sort_unstable();
    Ok(out)
}

/// All cosets modulo n, ordered by their smallest member.
pub fn cosets(n: usize, q: u32) -> Result<Vec<Vec<usize>>> {
    check_coprime(n, q)?;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if !seen[x] {
            let c = coset(x, n, q)?;
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
    }
    Ok(out)
}

/// A union of q-cyclotomic cosets modulo n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DefiningSet {
    n: usize,
    q: u32,
    bits: Vec<u64>,
}

impl fmt::Debug for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(n={}, q={}){:?}", self.n, self.q, self.members())
    }
}

#[derive(Serialize, Deserialize)]
struct DefiningSetJson {
    n: usize,
    q: u32,
    members: Vec<usize>,
}

impl Serialize for DefiningSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DefiningSetJson { n: self.n, q: self.q, members: self.members() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DefiningSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DefiningSetJson::deserialize(d)?;
        DefiningSet::new(raw.n, raw.q, &raw.members).map_err(serde::de::Error::custom)
    }
}

impl DefiningSet {
    /// Build from residues, which must already be closed under x -> qx.
    pub fn new(n: usize, q: u32, members: &[usize]) -> Result<Self> {
        let mut t = Self::empty(n, q)?;
        for &x in members {
            if x >= n {
                return Err(Error::InvalidParameter(format!("residue {x} not below n={n}")));
            }
            t.insert(x);
        }
        if !t.is_closed() {
            return Err(Error::NotCosetClosed { n, q });
        }
        Ok(t)
    }

    /// The union of the cosets containing each of `reps`.
    pub fn from_cosets(n: usize, q: u32, reps: &[usize]) -> Result<Self> {
        let mut t = Self::empty(n, q)?;
        for &x in reps {
            for y in coset(x, n, q)? {
                t.insert(y);
            }
        }
        Ok(t)
    }

    pub fn empty(n: usize, q: u32) -> Result<Self> {
        check_coprime(n, q)?;
        Ok(DefiningSet { n, q, bits: vec![0; n.div_ceil(64)] })
    }

    /// N = {0, ..., n-1}.
    pub fn full(n: usize, q: u32) -> Result<Self> {
        let mut t = Self::empty(n, q)?;
        for x in 0..n {
            t.insert(x);
        }
        Ok(t)
    }

    fn insert(&mut self, x: usize) {
        self.bits[x / 64] |= 1 << (x % 64);
    }

    fn is_closed(&self) -> bool {
        self.iter().all(|x| self.contains(x * self.q as usize % self.n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.bits[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&x| self.contains(x))
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member of each coset in the set.
    pub fn coset_leaders(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for x in self.iter() {
            if !seen[x] {
                out.push(x);
                let mut y = x;
                loop {
                    seen[y] = true;
                    y = y * self.q as usize % self.n;
                    if y == x {
                        break;
                    }
                }
            }
        }
        out
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::Ambient(format!(
                "defining sets over (n={}, q={}) and (n={}, q={})",
                self.n, self.q, other.n, other.q
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.same_ambient(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| op(a, b)).collect();
        Ok(DefiningSet { n: self.n, q: self.q, bits })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & !b)
    }

    /// N \ T.
    pub fn complement(&self) -> Self {
        let mut out = DefiningSet { n: self.n, q: self.q, bits: vec![0; self.bits.len()] };
        for x in 0..self.n {
            if !self.contains(x) {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0))
    }

    /// T^a = { a t mod n }, for a unit a modulo n.
    pub fn scale(&self, a: i64) -> Result<Self> {
        let n = self.n as i64;
        let a_mod = a.rem_euclid(n) as u64;
        if arith::gcd(a_mod, self.n as u64) != 1 {
            return Err(Error::NotUnit { a, n: self.n });
        }
        let mut out = DefiningSet { n: self.n, q: self.q, bits: vec![0; self.bits.len()] };
        for x in self.iter() {
            out.insert((x as u64 * a_mod % self.n as u64) as usize);
        }
        if !out.is_closed() {
            return Err(Error::NotCosetClosed { n: self.n, q: self.q });
        }
        Ok(out)
    }

    /// Defining set of the Euclidean dual code: N \ T^{-1}.
    pub fn euclidean_dual(&self) -> Self {
        self.scale(-1).expect("-1 is a unit").complement()
    }

    /// Defining set of the Hermitian dual over GF(q^2): N \ T^{-sqrt(q)}.
    pub fn hermitian_dual(&self) -> Result<Self> {
        let r = arith::exact_sqrt(self.q as u64).filter(|&r| r > 1).ok_or(Error::NotQuadratic(self.q))?;
        Ok(self.scale(-(r as i64))?.complement())
    }

    /// Dual defining set for the given flavor.
    pub fn dual(&self, flavor: Flavor) -> Result<Self> {
        match flavor {
            Flavor::Euclidean => Ok(self.euclidean_dual()),
            Flavor::Hermitian => self.hermitian_dual(),
        }
    }

    /// The multiplier a with T^a used by the flavor's dual (-1 or -sqrt(q)).
    pub fn dual_multiplier(&self, flavor: Flavor) -> Result<i64> {
        match flavor {
            Flavor::Euclidean => Ok(-1),
            Flavor::Hermitian => arith::exact_sqrt(self.q as u64)
                .filter(|&r| r > 1)
                .map(|r| -(r as i64))
                .ok_or(Error::NotQuadratic(self.q)),
        }
    }

    /// Cosets C_b, ..., C_{b+delta-2}.
    pub fn bch(n: usize, q: u32, delta: usize, b: usize) -> Result<Self> {
        if delta < 2 || delta > n {
            return Err(Error::InvalidParameter(format!("designed distance {delta} outside 2..={n}")));
        }
        let reps: Vec<usize> = (b..b + delta - 1).map(|x| x % n).collect();
        Self::from_cosets(n, q, &reps)
    }

    /// BCH lower bound for the code with this defining set: one more than
    /// the longest run {b, b+s, ..., b+(l-1)s} inside T with s a unit.
    /// Returns n+1 for the zero code (T = N).
    pub fn bch_bound(&self) -> usize {
        let n = self.n;
        if self.len() == n {
            return n + 1;
        }
        let mut best = 0;
        for s in 1..n.max(2) {
            if arith::gcd(s as u64, n as u64) != 1 {
                continue;
            }
            // Walk the single cycle 0, s, 2s, ... and take the longest run of members.
            let start = (0..n).map(|i| i * s % n).position(|x| !self.contains(x)).unwrap();
            let mut run = 0;
            for i in 1..=n {
                if self.contains((start + i) * s % n) {
                    run += 1;
                    best = best.max(run);
                } else {
                    run = 0;
                }
            }
        }
        best + 1
    }
}

/// Which inner product a construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    #[serde(alias = "euclid")]
    Euclidean,
    #[serde(alias = "herm")]
    Hermitian,
}

/// A cyclic code of length n over GF(q) given by its defining set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    defining_set: DefiningSet,
    root_field_degree: u32,
}

impl CyclicCode {
    pub fn new(defining_set: DefiningSet) -> Self {
        let root_field_degree = arith::mult_order(defining_set.q as u64, defining_set.n as u64) as u32;
        CyclicCode { defining_set, root_field_degree }
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    /// Degree of GF(q^{m'}) over GF(q) holding a primitive n-th root of unity.
    pub fn root_field_degree(&self) -> u32 {
        self.root_field_degree
    }

    pub fn n(&self) -> usize {
        self.defining_set.n
    }

    pub fn dim(&self) -> usize {
        self.defining_set.n - self.defining_set.len()
    }

    /// g(x) = prod_{t in T} (x - alpha^t) with coefficients pulled back into `field`.
    pub fn generator_poly(&self, field: &FieldSpec) -> Result<Poly> {
        let ds = &self.defining_set;
        if field.order() != ds.q {
            return Err(Error::Ambient(format!("field of order {} for q={}", field.order(), ds.q)));
        }
        let big_m = field.m() * self.root_field_degree;
        let big = FieldSpec::new(field.p(), big_m)
            .map_err(|_| Error::SplittingFieldTooLarge { q: ds.q, degree: self.root_field_degree })?;
        let embed = Embedding::new(field, &big)?;
        let step = (big.order() as u64 - 1) / ds.n as u64;
        let mut g = Poly::one(&big);
        for t in ds.iter() {
            let root = big.exp(step * t as u64);
            g = g.mul(&Poly::new(&big, vec![big.neg(root), 1]))?;
        }
        let coeffs = g
            .coeffs()
            .iter()
            .map(|&c| embed.lift(c).ok_or(Error::NotCosetClosed { n: ds.n, q: ds.q }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_mod_31_over_4() {
        assert_eq!(coset(0, 31, 4).unwrap(), vec![0]);
        assert_eq!(coset(1, 31, 4).unwrap(), vec![1, 2, 4, 8, 16]);
        assert_eq!(coset(3, 31, 4).unwrap(), vec![3, 6, 12, 17, 24]);
        assert_eq!(coset(1, 6, 4).unwrap_err(), Error::NotCoprime { n: 6, q: 4 });
    }

    #[test]
    fn scaling_by_minus_two() {
        let c1 = DefiningSet::from_cosets(31, 4, &[1]).unwrap();
        assert_eq!(c1.scale(-2).unwrap().members(), vec![15, 23, 27, 29, 30]);
        let c5 = DefiningSet::from_cosets(31, 4, &[5]).unwrap();
        let c11 = DefiningSet::from_cosets(31, 4, &[11]).unwrap();
        assert_eq!(c5.scale(-2).unwrap(), c11);
        assert_eq!(c5.scale(1).unwrap(), c5);
        assert!(matches!(c5.scale(31), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn rejects_open_sets() {
        assert_eq!(DefiningSet::new(15, 2, &[1, 2]).unwrap_err(), Error::NotCosetClosed { n: 15, q: 2 });
    }

    #[test]
    fn hermitian_dual_of_example() {
        let t = DefiningSet::from_cosets(31, 4, &[1, 3]).unwrap();
        let td = t.hermitian_dual().unwrap();
        assert_eq!(td, DefiningSet::from_cosets(31, 4, &[0, 1, 3, 5, 11]).unwrap());
        assert_eq!(td.hermitian_dual().unwrap(), t);
        let t2 = DefiningSet::from_cosets(15, 2, &[1]).unwrap();
        assert_eq!(t2.hermitian_dual().unwrap_err(), Error::NotQuadratic(2));
    }

    #[test]
    fn bch_sets() {
        let t = DefiningSet::bch(31, 4, 5, 1).unwrap();
        assert_eq!(t.len(), 10);
        assert_eq!(DefiningSet::bch(15, 2, 3, 1).unwrap().members(), vec![1, 2, 4, 8]);
        assert!(DefiningSet::bch(15, 2, 1, 1).is_err());
        assert_eq!(t.bch_bound(), 5);
    }

    #[test]
    fn bch_bound_uses_unit_steps() {
        // {1,2,4,8}: no unit step gives a run longer than two (Hamming code, d = 3).
        let t = DefiningSet::bch(15, 2, 3, 1).unwrap();
        assert_eq!(t.bch_bound(), 3);
        assert_eq!(DefiningSet::full(7, 2).unwrap().bch_bound(), 8);
        assert_eq!(DefiningSet::empty(7, 2).unwrap().bch_bound(), 1);
    }

    #[test]
    fn generator_polynomials() {
        let g2 = FieldSpec::new(2, 1).unwrap();
        let zero = CyclicCode::new(DefiningSet::new(7, 2, &[0]).unwrap());
        assert_eq!(zero.generator_poly(&g2).unwrap().coeffs(), &[1, 1]);
        let full = CyclicCode::new(DefiningSet::empty(7, 2).unwrap());
        assert_eq!(full.generator_poly(&g2).unwrap(), Poly::one(&g2));

        let c1 = CyclicCode::new(DefiningSet::bch(15, 2, 3, 1).unwrap());
        let g = c1.generator_poly(&g2).unwrap();
        assert_eq!(g.degree(), Some(4));
        let (_, r) = Poly::x_n_minus_one(&g2, 15).divmod(&g).unwrap();
        assert!(r.is_zero());
    }
}
