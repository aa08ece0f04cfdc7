//! GF(q)-linear codes held as canonical generator matrices.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclicCode, DefiningSet};
use crate::enumerate::{fp_expand, EnumOptions, Outcome, Search};
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldSpec};

/// Reduced row-echelon form in place; returns pivot columns. Zero rows are dropped.
pub fn rref(field: &FieldSpec, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).unwrap();
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = field.neg(row[col]);
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if y != 0 {
                        *x = field.add(*x, field.mul(f, y));
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a set of vectors.
pub fn rank(field: &FieldSpec, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of { v : rows . v = 0 } from an RREF matrix with the given pivots.
pub(crate) fn nullspace_rref(field: &FieldSpec, rows: &[Vec<Elem>], pivots: &[usize], ncols: usize) -> Vec<Vec<Elem>> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Basis of the right kernel of an arbitrary matrix with `ncols` columns.
pub fn nullspace(field: &FieldSpec, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    nullspace_rref(field, &m, &pivots, ncols)
}

pub fn dot(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Minimum weight with its certainty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Weight {
    Exact(usize),
    /// The true value is at least this.
    AtLeast(usize),
}

impl Weight {
    pub fn value(self) -> usize {
        match self {
            Weight::Exact(v) | Weight::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Weight::Exact(_))
    }
}

/// A k-dimensional linear code of length n over GF(q), generator in RREF.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: FieldSpec,
    n: usize,
    gen: Vec<Vec<Elem>>,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]_{}", self.n, self.k(), self.field.order())
    }
}

impl LinearCode {
    pub fn new(field: &FieldSpec, n: usize, mut rows: Vec<Vec<Elem>>) -> Result<Self> {
        for row in &rows {
            if row.len() != n {
                return Err(Error::Malformed(format!("row of length {} in a length-{n} code", row.len())));
            }
            if row.iter().any(|&c| !field.contains(c)) {
                return Err(Error::Malformed(format!("symbol outside GF({})", field.order())));
            }
        }
        rref(field, &mut rows);
        Ok(LinearCode { field: field.clone(), n, gen: rows })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        LinearCode { field: field.clone(), n, gen: Vec::new() }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        let gen = (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect();
        LinearCode { field: field.clone(), n, gen }
    }

    /// Cyclic code with the given defining set; rows are shifts of g(x).
    pub fn from_cyclic(field: &FieldSpec, code: &CyclicCode) -> Result<Self> {
        let g = code.generator_poly(field)?;
        let n = code.n();
        let deg = g.degree().unwrap_or(0);
        let rows = (0..n - deg)
            .map(|i| {
                let mut row = vec![0; n];
                row[i..i + deg + 1].copy_from_slice(g.coeffs());
                row
            })
            .collect();
        Self::new(field, n, rows)
    }

    pub fn from_defining_set(field: &FieldSpec, t: &DefiningSet) -> Result<Self> {
        Self::from_cyclic(field, &CyclicCode::new(t.clone()))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn gen(&self) -> &[Vec<Elem>] {
        &self.gen
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::Ambient(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }

    fn pivots(&self) -> Vec<usize> {
        self.gen.iter().map(|r| r.iter().position(|&c| c != 0).unwrap()).collect()
    }

    /// Euclidean dual.
    pub fn dual(&self) -> Self {
        let basis = nullspace_rref(&self.field, &self.gen, &self.pivots(), self.n);
        LinearCode::new(&self.field, self.n, basis).expect("same ambient")
    }

    /// Entrywise q-power map on a code over GF(q^2).
    pub fn conj(&self) -> Result<Self> {
        let rows = self
            .gen
            .iter()
            .map(|r| r.iter().map(|&c| self.field.conj(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, self.n, rows)
    }

    /// Hermitian dual over GF(q^2): conj(C^perp).
    pub fn hermitian_dual(&self) -> Result<Self> {
        self.dual().conj()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Self::new(&self.field, self.n, self.gen.iter().chain(&other.gen).cloned().collect())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Whether `word` is a codeword.
    pub fn contains_word(&self, word: &[Elem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut w = word.to_vec();
        for (row, pc) in self.gen.iter().zip(self.pivots()) {
            let c = w[pc];
            if c != 0 {
                let f = self.field.neg(c);
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = self.field.add(*x, self.field.mul(f, y));
                }
            }
        }
        w.iter().all(|&c| c == 0)
    }

    /// Whether `other` is a subcode of `self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other.gen.iter().all(|r| self.contains_word(r)))
    }

    /// Rows extending a basis of `sub` (a subcode) to a basis of `self`.
    pub fn complement_basis(&self, sub: &Self) -> Result<Vec<Vec<Elem>>> {
        if !self.contains(sub)? {
            return Err(Error::Precondition("subcode not contained in code".into()));
        }
        let mut basis = sub.gen.clone();
        let mut extra = Vec::new();
        for row in &self.gen {
            let mut trial = basis.clone();
            trial.push(row.clone());
            if rank(&self.field, &trial) == basis.len() + 1 {
                basis.push(row.clone());
                extra.push(row.clone());
            }
        }
        Ok(extra)
    }

    /// Append an overall parity coordinate -(c_1 + ... + c_n).
    pub fn extend_parity(&self) -> Self {
        let rows = self
            .gen
            .iter()
            .map(|r| {
                let s = r.iter().fold(0, |acc, &c| self.field.add(acc, c));
                let mut row = r.clone();
                row.push(self.field.neg(s));
                row
            })
            .collect();
        LinearCode::new(&self.field, self.n + 1, rows).expect("valid rows")
    }

    /// Delete coordinate `pos`.
    pub fn puncture(&self, pos: usize) -> Result<Self> {
        if pos >= self.n || self.n == 1 {
            return Err(Error::InvalidParameter(format!("cannot puncture position {pos} of length {}", self.n)));
        }
        let rows = self
            .gen
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &c)| c).collect())
            .collect();
        LinearCode::new(&self.field, self.n - 1, rows)
    }

    /// Whether all generator entries lie in the prime field.
    pub fn is_prime_field_defined(&self) -> bool {
        let p = self.field.p();
        self.gen.iter().flatten().all(|&c| c < p)
    }

    /// The same generator read over GF(p); requires a prime-field generator.
    pub fn restrict_to_prime(&self) -> Result<Self> {
        if !self.is_prime_field_defined() {
            return Err(Error::Precondition("generator not defined over the prime field".into()));
        }
        let gp = FieldSpec::prime(self.field.p())?;
        Self::new(&gp, self.n, self.gen.clone())
    }

    /// Hamming weight of the lightest nonzero codeword.
    pub fn min_weight(&self, opts: &EnumOptions) -> Result<Outcome> {
        if self.k() == 0 {
            return Err(Error::Precondition("minimum weight of the zero code".into()));
        }
        let zero = LinearCode::zero(&self.field, self.n);
        self.coset_min_weight(&zero, 1, opts)
    }

    /// Hamming weight of the lightest word of `self` outside the subcode `sub`.
    ///
    /// `floor` is a proven lower bound that lets the search stop early.
    /// When both codes have generators over the prime field the search runs
    /// over GF(p): expanding a word in an F_p-basis of GF(q) shows the
    /// minimum is attained by a prime-field word.
    pub fn coset_min_weight(&self, sub: &Self, floor: usize, opts: &EnumOptions) -> Result<Outcome> {
        self.same_ambient(sub)?;
        if sub.k() >= self.k() || !self.contains(sub)? {
            return Err(Error::Precondition("coset weight needs a proper subcode".into()));
        }
        if self.field.m() > 1 && self.is_prime_field_defined() && sub.is_prime_field_defined() {
            return self.restrict_to_prime()?.coset_min_weight(&sub.restrict_to_prime()?, floor, opts);
        }
        let extra = self.complement_basis(sub)?;
        let mut basis = fp_expand(&self.field, &sub.gen);
        let fixed = basis.len();
        basis.extend(fp_expand(&self.field, &extra));
        let search = Search { field: &self.field, n: self.n, width: 1, basis, fixed, floor: floor.max(1) };
        Ok(search.run(opts))
    }

    /// Minimum distance from linear dependencies among parity-check columns.
    ///
    /// Visits column subsets of increasing size until a dependent one shows
    /// up; if the subset budget runs out first the result is a lower bound.
    pub fn column_distance(&self, budget: u64) -> Weight {
        let h = self.dual();
        let r = h.k();
        if self.k() == 0 {
            return Weight::AtLeast(self.n + 1);
        }
        let cols: Vec<Vec<Elem>> = (0..self.n).map(|j| h.gen.iter().map(|row| row[j]).collect()).collect();
        let mut spent: u64 = 0;
        for t in 1..=r + 1 {
            if t > r {
                return Weight::Exact(t);
            }
            let count = binomial(self.n as u64, t as u64);
            if spent.saturating_add(count) > budget {
                return Weight::AtLeast(t);
            }
            spent += count;
            let dependent = (0..self.n).combinations(t).any(|set| {
                let sub: Vec<Vec<Elem>> = set.iter().map(|&j| cols[j].clone()).collect();
                rank(&self.field, &sub) < t
            });
            if dependent {
                return Weight::Exact(t);
            }
        }
        unreachable!()
    }

    /// Whether the code is invariant under the cyclic shift.
    pub fn is_cyclic(&self) -> bool {
        self.gen.iter().all(|row| {
            let mut shifted = row.clone();
            shifted.rotate_right(1);
            self.contains_word(&shifted)
        })
    }

    /// Weight of the lightest word of `self` outside `sub`, from column supports.
    ///
    /// Supports are visited in increasing size from `floor`, a proven lower
    /// bound. When both codes are cyclic only supports through position 0
    /// are needed. Running out of `budget` subsets gives a lower bound.
    pub fn coset_column_weight(&self, sub: &Self, floor: usize, budget: u64) -> Result<Weight> {
        self.same_ambient(sub)?;
        if !self.contains(sub)? {
            return Err(Error::Precondition("coset weight needs a subcode".into()));
        }
        let n = self.n;
        let f = &self.field;
        let columns = |code: &Self| -> Vec<Vec<Elem>> {
            let h = code.dual();
            (0..n).map(|j| h.gen.iter().map(|row| row[j]).collect()).collect()
        };
        let cols = columns(self);
        let sub_cols = columns(sub);
        let cyclic = self.is_cyclic() && sub.is_cyclic();
        let r = cols.first().map_or(0, Vec::len);
        // Some word of self with support in `set` lies outside sub.
        let escapes = |set: &[usize]| -> bool {
            let rows: Vec<Vec<Elem>> = (0..r).map(|i| set.iter().map(|&j| cols[j][i]).collect()).collect();
            nullspace(f, &rows, set.len()).iter().any(|v| {
                (0..sub_cols.first().map_or(0, Vec::len)).any(|i| {
                    set.iter().zip(v).fold(0, |acc, (&j, &x)| f.add(acc, f.mul(x, sub_cols[j][i]))) != 0
                })
            })
        };
        let mut spent: u64 = 0;
        for t in floor.max(1)..=n {
            let count = if cyclic { binomial(n as u64 - 1, t as u64 - 1) } else { binomial(n as u64, t as u64) };
            if spent.saturating_add(count) > budget {
                return Ok(Weight::AtLeast(t));
            }
            spent += count;
            let found = if cyclic {
                (1..n).combinations(t - 1).any(|mut set| {
                    set.insert(0, 0);
                    escapes(&set)
                })
            } else {
                (0..n).combinations(t).any(|set| escapes(&set))
            };
            if found {
                return Ok(Weight::Exact(t));
            }
        }
        Ok(Weight::AtLeast(n + 1))
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// JSON form `{"q":4,"n":31,"gen":[[...]]}` with symbols in the packed encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: u32,
    pub n: usize,
    pub gen: Vec<Vec<Elem>>,
}

impl CodeJson {
    pub fn from_code(c: &LinearCode) -> Self {
        CodeJson { q: c.field.order(), n: c.n, gen: c.gen.clone() }
    }

    pub fn into_code(self) -> Result<LinearCode> {
        let field = FieldSpec::of_order(self.q)?;
        LinearCode::new(&field, self.n, self.gen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EnumOptions {
        EnumOptions::with_budget(1 << 26)
    }

    #[test]
    fn dual_of_full_is_zero() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(LinearCode::full(&f, 4).dual(), LinearCode::zero(&f, 4));
        assert_eq!(LinearCode::zero(&f, 4).dual(), LinearCode::full(&f, 4));
    }

    #[test]
    fn repetition_code_weight() {
        for q in [2, 3, 4, 5, 9] {
            let f = FieldSpec::of_order(q).unwrap();
            let rep = LinearCode::new(&f, 6, vec![vec![1; 6]]).unwrap();
            assert_eq!(rep.min_weight(&opts()).unwrap(), Outcome::Exact(6));
            assert_eq!(rep.column_distance(1 << 20), Weight::Exact(6));
        }
    }

    #[test]
    fn hamming_7_4() {
        let f = FieldSpec::new(2, 1).unwrap();
        let c = LinearCode::from_defining_set(&f, &DefiningSet::bch(7, 2, 3, 1).unwrap()).unwrap();
        assert_eq!(c.k(), 4);
        assert_eq!(c.min_weight(&opts()).unwrap(), Outcome::Exact(3));
        assert_eq!(c.column_distance(1 << 20), Weight::Exact(3));
    }

    #[test]
    fn coset_weight_rejects_non_subcodes() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = LinearCode::new(&f, 3, vec![vec![1, 1, 0]]).unwrap();
        let b = LinearCode::new(&f, 3, vec![vec![0, 1, 1]]).unwrap();
        assert!(matches!(a.coset_min_weight(&b, 1, &opts()), Err(Error::Precondition(_))));
        assert!(matches!(a.coset_min_weight(&a, 1, &opts()), Err(Error::Precondition(_))));
    }

    #[test]
    fn budget_gives_over_budget() {
        let f = FieldSpec::new(2, 1).unwrap();
        let c = LinearCode::full(&f, 20);
        assert_eq!(c.min_weight(&EnumOptions::with_budget(1000)).unwrap(), Outcome::OverBudget);
    }

    #[test]
    fn extend_parity_of_hamming() {
        let f = FieldSpec::new(2, 1).unwrap();
        let c = LinearCode::from_defining_set(&f, &DefiningSet::bch(7, 2, 3, 1).unwrap()).unwrap();
        let e = c.extend_parity();
        assert_eq!((e.n(), e.k()), (8, 4));
        assert_eq!(e.min_weight(&opts()).unwrap(), Outcome::Exact(4));
    }

    #[test]
    fn json_roundtrip() {
        let f = FieldSpec::new(2, 2).unwrap();
        let c = LinearCode::new(&f, 3, vec![vec![1, 2, 3]]).unwrap();
        let j = serde_json::to_string(&CodeJson::from_code(&c)).unwrap();
        let back: CodeJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.into_code().unwrap(), c);
    }
}
