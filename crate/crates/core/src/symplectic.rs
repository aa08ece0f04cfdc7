//! Additive codes in GF(q)^{2n} under the trace-symplectic form.
//!
//! An additive code is stored as a GF(p)-linear code of length 2nm: each
//! GF(q) coordinate expands into its m polynomial-basis coefficients, the
//! a-half first and then the b-half. Duals, intersections and the
//! Gram-Schmidt decomposition all reduce to GF(p) linear algebra against
//! the trace matrix T_{st} = tr(x^s x^t).

use serde::{Deserialize, Serialize};

use crate::enumerate::{EnumOptions, Outcome, Search};
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldSpec, QuadraticExtension};
use crate::lincode::{nullspace, LinearCode};

/// A vector (a|b) of GF(q)^{2n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SympVector {
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
}

impl SympVector {
    pub fn new(a: Vec<Elem>, b: Vec<Elem>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Malformed(format!("halves of length {} and {}", a.len(), b.len())));
        }
        Ok(SympVector { a, b })
    }

    pub fn zero(n: usize) -> Self {
        SympVector { a: vec![0; n], b: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Number of positions with (a_i, b_i) != (0, 0).
    pub fn swt(&self) -> usize {
        self.a.iter().zip(&self.b).filter(|(&x, &y)| x != 0 || y != 0).count()
    }
}

/// tr(a'.b - a.b') for u = (a|b), v = (a'|b').
pub fn tsp(field: &FieldSpec, u: &SympVector, v: &SympVector) -> Result<Elem> {
    if u.n() != v.n() {
        return Err(Error::Ambient(format!("lengths {} and {}", u.n(), v.n())));
    }
    let mut acc = 0;
    for i in 0..u.n() {
        acc = field.add(acc, field.mul(v.a[i], u.b[i]));
        acc = field.sub(acc, field.mul(u.a[i], v.b[i]));
    }
    Ok(field.trace_prime(acc))
}

/// F_p-linear subcode of GF(q)^{2n}.
#[derive(Clone, PartialEq, Eq)]
pub struct AdditiveCode {
    field: FieldSpec,
    n: usize,
    code: LinearCode,
}

impl std::fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "additive(n={}, q={}, dim_p={})", self.n, self.field.order(), self.dim_p())
    }
}

/// Output of the symplectic Gram-Schmidt procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicBasis {
    /// Spans C intersected with its symplectic dual.
    pub isotropic: Vec<SympVector>,
    /// Pairs (x, z) with <x|z>_s = 1, orthogonal to everything else.
    pub pairs: Vec<(SympVector, SympVector)>,
}

impl AdditiveCode {
    pub fn new(field: &FieldSpec, n: usize, gens: &[SympVector]) -> Result<Self> {
        let prime = FieldSpec::prime(field.p())?;
        let rows = gens
            .iter()
            .map(|g| {
                if g.n() != n || g.a.iter().chain(&g.b).any(|&c| !field.contains(c)) {
                    return Err(Error::Malformed(format!("generator does not live in GF({})^(2*{n})", field.order())));
                }
                Ok(expand(field, g))
            })
            .collect::<Result<Vec<_>>>()?;
        let code = LinearCode::new(&prime, 2 * n * field.m() as usize, rows)?;
        Ok(AdditiveCode { field: field.clone(), n, code })
    }

    fn from_fp(field: &FieldSpec, n: usize, code: LinearCode) -> Self {
        AdditiveCode { field: field.clone(), n, code }
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Result<Self> {
        Self::new(field, n, &[])
    }

    /// {(a|b) : a in c1, b in c2} for GF(q)-linear c1, c2 of length n.
    pub fn css(c1: &LinearCode, c2: &LinearCode) -> Result<Self> {
        if c1.field() != c2.field() || c1.n() != c2.n() {
            return Err(Error::Ambient("css halves differ".into()));
        }
        let f = c1.field();
        let n = c1.n();
        let mut gens = Vec::new();
        for s in 0..f.m() {
            let g = f.p().pow(s);
            for r in c1.gen() {
                gens.push(SympVector { a: r.iter().map(|&c| f.mul(c, g)).collect(), b: vec![0; n] });
            }
            for r in c2.gen() {
                gens.push(SympVector { a: vec![0; n], b: r.iter().map(|&c| f.mul(c, g)).collect() });
            }
        }
        Self::new(f, n, &gens)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over GF(p); |C| = p^dim_p.
    pub fn dim_p(&self) -> usize {
        self.code.k()
    }

    /// The underlying GF(p)-linear code of length 2nm.
    pub fn fp_code(&self) -> &LinearCode {
        &self.code
    }

    /// An F_p-basis as symplectic vectors.
    pub fn gens(&self) -> Vec<SympVector> {
        self.code.gen().iter().map(|r| collapse(&self.field, self.n, r)).collect()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::Ambient(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &SympVector) -> bool {
        v.n() == self.n && self.code.contains_word(&expand(&self.field, v))
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        self.code.contains(&other.code)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(Self::from_fp(&self.field, self.n, self.code.sum(&other.code)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(Self::from_fp(&self.field, self.n, self.code.intersect(&other.code)?))
    }

    /// Trace-symplectic form on expanded vectors.
    #[cfg(test)]
    pub(crate) fn form(&self, u: &[Elem], v: &[Elem]) -> Elem {
        form(&self.field, &trace_matrix(&self.field), self.n, u, v)
    }

    /// The trace-symplectic dual.
    pub fn symp_dual(&self) -> Self {
        let field = &self.field;
        let t = trace_matrix(field);
        let m = field.m() as usize;
        let nm = self.n * m;
        let p = field.p();
        let functionals: Vec<Vec<Elem>> = self
            .code
            .gen()
            .iter()
            .map(|u| {
                let mut phi = vec![0; 2 * nm];
                for i in 0..self.n {
                    for tt in 0..m {
                        let mut ca = 0u64;
                        let mut cb = 0u64;
                        for s in 0..m {
                            ca += u[nm + i * m + s] as u64 * t[s][tt] as u64;
                            cb += u[i * m + s] as u64 * t[s][tt] as u64;
                        }
                        phi[i * m + tt] = (ca % p as u64) as Elem;
                        phi[nm + i * m + tt] = ((p as u64 - cb % p as u64) % p as u64) as Elem;
                    }
                }
                phi
            })
            .collect();
        let prime = self.code.field().clone();
        let basis = nullspace(&prime, &functionals, 2 * nm);
        Self::from_fp(field, self.n, LinearCode::new(&prime, 2 * nm, basis).expect("kernel rows"))
    }

    /// C intersected with its symplectic dual.
    pub fn radical(&self) -> Self {
        self.intersect(&self.symp_dual()).expect("same ambient")
    }

    pub fn is_isotropic(&self) -> bool {
        self.symp_dual().contains(self).expect("same ambient")
    }

    /// Split an F_p-basis into an isotropic part and hyperbolic pairs.
    ///
    /// Generators are scanned in basis order; each one is paired with the
    /// first later generator it is not orthogonal to, and the rest are made
    /// orthogonal to the new pair.
    pub fn symp_gram_schmidt(&self) -> HyperbolicBasis {
        let field = self.code.field();
        let t = trace_matrix(&self.field);
        let f = |u: &[Elem], v: &[Elem]| form(&self.field, &t, self.n, u, v);
        let mut work: Vec<Vec<Elem>> = self.code.gen().to_vec();
        let mut isotropic = Vec::new();
        let mut pairs = Vec::new();
        while !work.is_empty() {
            let x = work.remove(0);
            let Some(j) = work.iter().position(|w| f(&x, w) != 0) else {
                isotropic.push(x);
                continue;
            };
            let mut z = work.remove(j);
            let scale = field.inv(f(&x, &z)).unwrap();
            for c in z.iter_mut() {
                *c = field.mul(*c, scale);
            }
            for w in work.iter_mut() {
                let wz = f(w, &z);
                let wx = f(w, &x);
                for ((c, &xc), &zc) in w.iter_mut().zip(&x).zip(&z) {
                    *c = field.add(field.sub(*c, field.mul(wz, xc)), field.mul(wx, zc));
                }
            }
            pairs.push((x, z));
        }
        HyperbolicBasis {
            isotropic: isotropic.iter().map(|r| collapse(&self.field, self.n, r)).collect(),
            pairs: pairs
                .iter()
                .map(|(x, z)| (collapse(&self.field, self.n, x), collapse(&self.field, self.n, z)))
                .collect(),
        }
    }

    fn interleaved(&self, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        rows.iter()
            .map(|r| {
                let v = collapse(&self.field, self.n, r);
                v.a.iter().zip(&v.b).flat_map(|(&a, &b)| [a, b]).collect()
            })
            .collect()
    }

    /// Smallest symplectic weight of a nonzero vector.
    pub fn min_swt(&self, opts: &EnumOptions) -> Result<Outcome> {
        let zero = Self::zero(&self.field, self.n)?;
        self.coset_min_swt(&zero, 1, opts)
    }

    /// Smallest symplectic weight over self \ sub, where sub is a proper subcode.
    pub fn coset_min_swt(&self, sub: &Self, floor: usize, opts: &EnumOptions) -> Result<Outcome> {
        self.same_ambient(sub)?;
        if sub.dim_p() >= self.dim_p() || !self.contains(sub)? {
            return Err(Error::Precondition("coset weight needs a proper subcode".into()));
        }
        let extra = self.code.complement_basis(&sub.code)?;
        let mut basis = self.interleaved(sub.code.gen());
        let fixed = basis.len();
        basis.extend(self.interleaved(&extra));
        let search = Search { field: &self.field, n: self.n, width: 2, basis, fixed, floor: floor.max(1) };
        Ok(search.run(opts))
    }
}

/// T_{st} = tr(x^s x^t) over the polynomial basis.
pub(crate) fn trace_matrix(field: &FieldSpec) -> Vec<Vec<u32>> {
    let m = field.m();
    (0..m)
        .map(|s| (0..m).map(|t| field.trace_prime(field.mul(field.p().pow(s), field.p().pow(t)))).collect())
        .collect()
}

fn form(field: &FieldSpec, t: &[Vec<u32>], n: usize, u: &[Elem], v: &[Elem]) -> Elem {
    let m = field.m() as usize;
    let nm = n * m;
    let p = field.p() as u64;
    let mut acc = 0u64;
    for i in 0..n {
        for s in 0..m {
            let ub = u[nm + i * m + s] as u64;
            let ua = u[i * m + s] as u64;
            if ub == 0 && ua == 0 {
                continue;
            }
            for (tt, &tst) in t[s].iter().enumerate() {
                let tst = tst as u64;
                acc += ub * tst * v[i * m + tt] as u64;
                acc += (p - 1) * ua % p * tst * v[nm + i * m + tt] as u64;
            }
        }
        acc %= p;
    }
    (acc % p) as Elem
}

pub(crate) fn expand(field: &FieldSpec, v: &SympVector) -> Vec<Elem> {
    v.a.iter().chain(&v.b).flat_map(|&c| field.coeffs(c)).collect()
}

fn collapse(field: &FieldSpec, n: usize, row: &[Elem]) -> SympVector {
    let m = field.m() as usize;
    let sym = |i: usize| field.from_coeffs(&row[i * m..(i + 1) * m]).expect("prime digits");
    SympVector { a: (0..n).map(sym).collect(), b: (n..2 * n).map(sym).collect() }
}

/// {(u|v) : u + beta v in X} for a GF(q^2)-linear X, as an additive code over GF(q).
pub fn herm_expand(x: &LinearCode) -> Result<AdditiveCode> {
    let ext = QuadraticExtension::new(x.field())?;
    let big = x.field();
    let n = x.n();
    let mut gens = Vec::new();
    for s in 0..big.m() {
        let g = big.p().pow(s);
        for row in x.gen() {
            let mut a = Vec::with_capacity(n);
            let mut b = Vec::with_capacity(n);
            for &c in row {
                let (u, v) = ext.split(big.mul(c, g));
                a.push(u);
                b.push(v);
            }
            gens.push(SympVector { a, b });
        }
    }
    AdditiveCode::new(ext.small(), n, &gens)
}

/// Expansion of a Hermitian self-orthogonal GF(q^2)-linear code.
pub fn herm_to_symp(x: &LinearCode) -> Result<AdditiveCode> {
    if !x.hermitian_dual()?.contains(x)? {
        return Err(Error::Precondition("code is not Hermitian self-orthogonal".into()));
    }
    herm_expand(x)
}

/// JSON form `{"q":4,"n":31,"gens":[{"a":[...],"b":[...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveJson {
    pub q: u32,
    pub n: usize,
    pub gens: Vec<SympVector>,
}

impl AdditiveJson {
    pub fn from_code(c: &AdditiveCode) -> Self {
        AdditiveJson { q: c.field.order(), n: c.n, gens: c.gens() }
    }

    pub fn into_code(self) -> Result<AdditiveCode> {
        let field = FieldSpec::of_order(self.q)?;
        AdditiveCode::new(&field, self.n, &self.gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swt_examples() {
        assert_eq!(SympVector::zero(3).swt(), 0);
        assert_eq!(SympVector::new(vec![1, 0], vec![1, 1]).unwrap().swt(), 2);
        assert_eq!(SympVector::new(vec![1, 0, 1], vec![0; 3]).unwrap().swt(), 2);
    }

    #[test]
    fn tsp_of_unit_pair() {
        let f = FieldSpec::new(2, 1).unwrap();
        let x = SympVector::new(vec![1], vec![0]).unwrap();
        let z = SympVector::new(vec![0], vec![1]).unwrap();
        assert_eq!(tsp(&f, &x, &z).unwrap(), 1);
        assert_eq!(tsp(&f, &x, &x).unwrap(), 0);
    }

    #[test]
    fn self_dual_line() {
        let f = FieldSpec::new(2, 1).unwrap();
        let c = AdditiveCode::new(&f, 1, &[SympVector::new(vec![1], vec![0]).unwrap()]).unwrap();
        assert_eq!(c.symp_dual(), c);
        let zero = AdditiveCode::zero(&f, 1).unwrap();
        assert_eq!(zero.symp_dual().dim_p(), 2);
    }

    #[test]
    fn gram_schmidt_on_full_plane() {
        let f = FieldSpec::new(2, 1).unwrap();
        let c = AdditiveCode::new(
            &f,
            1,
            &[SympVector::new(vec![1], vec![0]).unwrap(), SympVector::new(vec![0], vec![1]).unwrap()],
        )
        .unwrap();
        let hb = c.symp_gram_schmidt();
        assert!(hb.isotropic.is_empty());
        assert_eq!(hb.pairs.len(), 1);
        assert_eq!(tsp(&f, &hb.pairs[0].0, &hb.pairs[0].1).unwrap(), 1);
    }

    #[test]
    fn form_matches_vector_definition() {
        let f = FieldSpec::new(3, 2).unwrap();
        let u = SympVector::new(vec![1, 5, 7], vec![2, 0, 8]).unwrap();
        let v = SympVector::new(vec![4, 3, 0], vec![6, 1, 2]).unwrap();
        let c = AdditiveCode::zero(&f, 3).unwrap();
        assert_eq!(c.form(&expand(&f, &u), &expand(&f, &v)), tsp(&f, &u, &v).unwrap());
    }

    #[test]
    fn hermitian_expansion_of_repetition() {
        let g4 = FieldSpec::new(2, 2).unwrap();
        let x = LinearCode::new(&g4, 2, vec![vec![1, 1]]).unwrap();
        let c = herm_to_symp(&x).unwrap();
        assert_eq!(c.dim_p(), 2);
        assert_eq!(c.min_swt(&EnumOptions::default()).unwrap(), Outcome::Exact(2));
        assert!(c.is_isotropic());
        let bad = LinearCode::new(&g4, 2, vec![vec![1, 0]]).unwrap();
        assert!(matches!(herm_to_symp(&bad), Err(Error::Precondition(_))));
    }
}
