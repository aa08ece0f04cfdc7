//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use subsys_core::galois::{Elem, FieldSpec};
use subsys_core::symplectic::SympVector;

/// Absolute trace to the prime field, summed over Frobenius powers.
pub fn trace(f: &FieldSpec, x: Elem) -> Elem {
    let mut acc = 0;
    let mut y = x;
    for _ in 0..f.m() {
        acc = f.add(acc, y);
        y = f.pow(y, f.p() as u64);
    }
    acc
}

pub fn form(f: &FieldSpec, u: &SympVector, v: &SympVector) -> Elem {
    let mut acc = 0;
    for i in 0..u.a.len() {
        acc = f.add(acc, f.mul(v.a[i], u.b[i]));
        acc = f.sub(acc, f.mul(u.a[i], v.b[i]));
    }
    trace(f, acc)
}

fn add(f: &FieldSpec, u: &SympVector, v: &SympVector) -> SympVector {
    SympVector {
        a: u.a.iter().zip(&v.a).map(|(&x, &y)| f.add(x, y)).collect(),
        b: u.b.iter().zip(&v.b).map(|(&x, &y)| f.add(x, y)).collect(),
    }
}

/// Every F_p-combination of `gens`.
pub fn span(f: &FieldSpec, n: usize, gens: &[SympVector]) -> Vec<SympVector> {
    let mut seen: HashSet<SympVector> = HashSet::new();
    seen.insert(SympVector::zero(n));
    let mut all = vec![SympVector::zero(n)];
    for g in gens {
        if seen.contains(g) {
            continue;
        }
        let mut next = Vec::new();
        for v in &all {
            let mut w = v.clone();
            for _ in 1..f.p() {
                w = add(f, &w, g);
                if seen.insert(w.clone()) {
                    next.push(w.clone());
                }
            }
        }
        all.extend(next);
    }
    all
}

/// A minimal spanning subset of `vs`.
pub fn basis_of(f: &FieldSpec, n: usize, vs: &[SympVector]) -> Vec<SympVector> {
    let mut basis: Vec<SympVector> = Vec::new();
    let mut spanned: HashSet<SympVector> = span(f, n, &[]).into_iter().collect();
    for v in vs {
        if !spanned.contains(v) {
            basis.push(v.clone());
            spanned = span(f, n, &basis).into_iter().collect();
        }
    }
    basis
}

pub fn random_vector(rng: &mut impl Rng, f: &FieldSpec, n: usize) -> SympVector {
    SympVector {
        a: (0..n).map(|_| rng.gen_range(0..f.order())).collect(),
        b: (0..n).map(|_| rng.gen_range(0..f.order())).collect(),
    }
}

/// Exponents and distance of the subsystem code of an additive code, by enumeration.
#[derive(Debug, PartialEq, Eq)]
pub struct Brute {
    pub k_exp: u32,
    pub r_exp: u32,
    pub d: usize,
}

fn log_p(p: u32, mut size: usize) -> u32 {
    let mut e = 0;
    while size > 1 {
        size /= p as usize;
        e += 1;
    }
    e
}

/// Calls `visit` on every vector of symplectic weight `w`; stops when it returns true.
pub fn any_of_weight(f: &FieldSpec, n: usize, w: usize, visit: &mut impl FnMut(&SympVector) -> bool) -> bool {
    let q = f.order();
    let pairs: Vec<(Elem, Elem)> = (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).filter(|&p| p != (0, 0)).collect();
    for support in itertools::Itertools::combinations(0..n, w) {
        let mut idx = vec![0usize; w];
        loop {
            let mut v = SympVector::zero(n);
            for (slot, &pos) in support.iter().enumerate() {
                v.a[pos] = pairs[idx[slot]].0;
                v.b[pos] = pairs[idx[slot]].1;
            }
            if visit(&v) {
                return true;
            }
            let mut j = 0;
            while j < w && idx[j] == pairs.len() - 1 {
                idx[j] = 0;
                j += 1;
            }
            if j == w {
                break;
            }
            idx[j] += 1;
        }
    }
    false
}

pub fn brute(f: &FieldSpec, n: usize, gens: &[SympVector]) -> Brute {
    let c = span(f, n, gens);
    let c_set: HashSet<SympVector> = c.iter().cloned().collect();
    let c_basis = basis_of(f, n, gens);
    let d_elems: Vec<SympVector> =
        c.iter().filter(|v| c_basis.iter().all(|g| form(f, v, g) == 0)).cloned().collect();
    let d_basis = basis_of(f, n, &d_elems);
    let lx = log_p(f.p(), c.len());
    let ly = log_p(f.p(), d_elems.len());
    let nm = n as u32 * f.m();
    let k_exp = nm - (lx + ly) / 2;
    let r_exp = (lx - ly) / 2;
    let d = if k_exp == 0 {
        c.iter().map(SympVector::swt).filter(|&w| w > 0).min().unwrap()
    } else {
        (1..=n)
            .find(|&w| {
                any_of_weight(f, n, w, &mut |v| !c_set.contains(v) && d_basis.iter().all(|g| form(f, v, g) == 0))
            })
            .expect("D^perp is larger than C")
    };
    Brute { k_exp, r_exp, d }
}
