//! Exhaustive minimum-weight search over F_p-spans.
//!
//! A search is described by an F_p-basis of vectors over GF(q), grouped into
//! positions of `width` symbols (1 for Hamming weight, 2 for symplectic
//! weight with interleaved (a_i, b_i)). The first `fixed` basis vectors span a
//! subspace B that is excluded; the minimum is taken over span \ B.
//!
//! Words are visited in p-ary modular Gray order, so each step adds exactly
//! one basis row. The message space is cut into chunks by its top digits and
//! the chunks are reduced with `min`, in parallel when the `parallel` feature
//! is on and [`Exec::Parallel`] is requested.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::galois::{Elem, FieldSpec};

/// Default number of words a single search may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "SUBSYS_MAX_ENUM";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Word visits a search may spend; symbol-wise searches pay [`SYMBOL_COST`] per word.
    pub budget: u64,
    pub exec: Exec,
}

impl Default for EnumOptions {
    fn default() -> Self {
        let budget = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| parse_budget(&s))
            .unwrap_or(DEFAULT_BUDGET);
        EnumOptions { budget, exec: Exec::default() }
    }
}

impl EnumOptions {
    pub fn with_budget(budget: u64) -> Self {
        EnumOptions { budget, ..Default::default() }
    }

    pub fn sequential(mut self) -> Self {
        self.exec = Exec::Sequential;
        self
    }
}

/// Accepts plain integers or powers written as `2^30`.
pub fn parse_budget(s: &str) -> Option<u64> {
    let s = s.trim();
    if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.trim().parse().ok()?;
        let e: u32 = e.trim().parse().ok()?;
        return b.checked_pow(e);
    }
    s.parse().ok()
}

/// Result of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Exact(usize),
    /// Every word of the span lies in the excluded subspace.
    Empty,
    /// The estimated cost exceeds the budget; nothing was enumerated.
    OverBudget,
}

impl Outcome {
    pub fn exact(self) -> Option<usize> {
        match self {
            Outcome::Exact(w) => Some(w),
            _ => None,
        }
    }
}

/// Budget units charged per word by the symbol-wise enumerator.
pub const SYMBOL_COST: u128 = 32;

/// Number of words p^dim, saturating.
pub fn space_size(p: u32, dim: usize) -> u128 {
    (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX)
}

/// F_p-basis {x^s v} of the GF(q)-span of `rows`.
pub fn fp_expand(field: &FieldSpec, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = Vec::with_capacity(rows.len() * field.m() as usize);
    for row in rows {
        for s in 0..field.m() {
            let g = field.p().pow(s);
            out.push(row.iter().map(|&c| field.mul(c, g)).collect());
        }
    }
    out
}

pub(crate) struct Search<'a> {
    pub field: &'a FieldSpec,
    pub n: usize,
    pub width: usize,
    pub basis: Vec<Vec<Elem>>,
    pub fixed: usize,
    /// A proven lower bound on the answer; the search stops once it is met.
    pub floor: usize,
}

impl Search<'_> {
    pub fn run(&self, opts: &EnumOptions) -> Outcome {
        let p = self.field.p();
        let dim = self.basis.len();
        if dim <= self.fixed {
            return Outcome::Empty;
        }
        let planes = self.width * self.field.m() as usize;
        let bits = p == 2 && self.n <= 128 && matches!(planes, 1..=6 | 8 | 10 | 12 | 16);
        // Symbol words cost a row update each, bit-sliced words a few XORs.
        let cost = if bits { 1 } else { SYMBOL_COST };
        if space_size(p, dim).saturating_mul(cost) > opts.budget as u128 {
            return Outcome::OverBudget;
        }
        let best = if bits {
            match planes {
                1 => self.run_bits::<1>(opts),
                2 => self.run_bits::<2>(opts),
                3 => self.run_bits::<3>(opts),
                4 => self.run_bits::<4>(opts),
                5 => self.run_bits::<5>(opts),
                6 => self.run_bits::<6>(opts),
                8 => self.run_bits::<8>(opts),
                10 => self.run_bits::<10>(opts),
                12 => self.run_bits::<12>(opts),
                _ => self.run_bits::<16>(opts),
            }
        } else {
            self.run_symbols(opts)
        };
        Outcome::Exact(best)
    }

    /// Number of top digits used to cut the space into chunks.
    fn chunk_digits(&self) -> usize {
        let p = self.field.p() as u128;
        let dim = self.basis.len();
        let mut h = 0;
        while h < dim && p.pow(h as u32) < 512 && dim - h > 4 {
            h += 1;
        }
        h
    }

    fn reduce(&self, chunks: u64, opts: &EnumOptions, f: impl Fn(u64, &AtomicBool) -> usize + Sync) -> usize {
        let stop = AtomicBool::new(false);
        let worst = self.n + 1;
        let run = |c: u64| {
            if stop.load(Ordering::Relaxed) {
                return worst;
            }
            let w = f(c, &stop);
            if w <= self.floor {
                stop.store(true, Ordering::Relaxed);
            }
            w
        };
        match opts.exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..chunks).into_par_iter().map(run).min().unwrap_or(worst)
            }
            _ => (0..chunks).map(run).min().unwrap_or(worst),
        }
    }

    fn run_bits<const P: usize>(&self, opts: &EnumOptions) -> usize {
        let m = self.field.m() as usize;
        let rows: Vec<[u128; P]> = self
            .basis
            .iter()
            .map(|v| {
                let mut planes = [0u128; P];
                for pos in 0..self.n {
                    for u in 0..self.width {
                        let sym = v[pos * self.width + u];
                        for bit in 0..m {
                            if sym >> bit & 1 == 1 {
                                planes[u * m + bit] |= 1 << pos;
                            }
                        }
                    }
                }
                planes
            })
            .collect();
        let dim = rows.len();
        let h = self.chunk_digits();
        let inner = dim - h;
        let fixed = self.fixed;
        let floor = self.floor;
        let worst = self.n + 1;
        // Inner digits at or above `fixed` put a word outside B.
        let high_mask: u64 = if fixed >= inner { 0 } else { (!0u64) << fixed };

        self.reduce(1 << h, opts, |chunk, stop| {
            let mut word = [0u128; P];
            let mut top_outside = false;
            for i in 0..h {
                if chunk >> i & 1 == 1 {
                    let j = inner + i;
                    xor_into(&mut word, &rows[j]);
                    top_outside |= j >= fixed;
                }
            }
            let mut state: u64 = 0;
            let mut best = worst;
            let total: u64 = 1 << inner;
            let mut t: u64 = 0;
            loop {
                if top_outside || state & high_mask != 0 {
                    let mut acc = 0u128;
                    for plane in &word {
                        acc |= plane;
                    }
                    let w = acc.count_ones() as usize;
                    if w < best {
                        best = w;
                        if best <= floor {
                            return best;
                        }
                    }
                }
                t += 1;
                if t == total {
                    return best;
                }
                let j = t.trailing_zeros() as usize;
                state ^= 1 << j;
                xor_into(&mut word, &rows[j]);
                if t & 0xffff == 0 && stop.load(Ordering::Relaxed) {
                    return best;
                }
            }
        })
    }

    fn run_symbols(&self, opts: &EnumOptions) -> usize {
        let field = self.field;
        let p = field.p();
        let len = self.n * self.width;
        let rows: Vec<Vec<(usize, Elem)>> = self
            .basis
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect())
            .collect();
        let dim = rows.len();
        let h = self.chunk_digits();
        let inner = dim - h;
        let fixed = self.fixed;
        let floor = self.floor;
        let width = self.width;
        let worst = self.n + 1;
        let chunks = (p as u64).pow(h as u32);

        self.reduce(chunks, opts, |chunk, stop| {
            let mut word = vec![0 as Elem; len];
            let mut nz = vec![0u8; self.n];
            let mut weight = 0usize;
            let add_row = |word: &mut [Elem], nz: &mut [u8], weight: &mut usize, j: usize| {
                for &(i, c) in &rows[j] {
                    let before = word[i] != 0;
                    word[i] = field.add(word[i], c);
                    let after = word[i] != 0;
                    if before != after {
                        let pos = i / width;
                        if after {
                            if nz[pos] == 0 {
                                *weight += 1;
                            }
                            nz[pos] += 1;
                        } else {
                            nz[pos] -= 1;
                            if nz[pos] == 0 {
                                *weight -= 1;
                            }
                        }
                    }
                }
            };
            let mut top_outside = false;
            let mut c = chunk;
            for i in 0..h {
                let digit = (c % p as u64) as u32;
                c /= p as u64;
                let j = inner + i;
                for _ in 0..digit {
                    add_row(&mut word, &mut nz, &mut weight, j);
                }
                top_outside |= digit != 0 && j >= fixed;
            }
            let mut gray = vec![0u32; inner];
            let mut odometer = vec![0u32; inner + 1];
            let mut outside_count = 0usize;
            let mut best = worst;
            let mut steps: u64 = 0;
            loop {
                if (top_outside || outside_count > 0) && weight < best {
                    best = weight;
                    if best <= floor {
                        return best;
                    }
                }
                let mut j = 0;
                while j < inner && odometer[j] == p - 1 {
                    odometer[j] = 0;
                    j += 1;
                }
                if j == inner {
                    return best;
                }
                odometer[j] += 1;
                let old = gray[j];
                gray[j] = (old + 1) % p;
                if j >= fixed {
                    if old == 0 {
                        outside_count += 1;
                    } else if gray[j] == 0 {
                        outside_count -= 1;
                    }
                }
                add_row(&mut word, &mut nz, &mut weight, j);
                steps += 1;
                if steps & 0xffff == 0 && stop.load(Ordering::Relaxed) {
                    return best;
                }
            }
        })
    }
}

#[inline]
fn xor_into<const P: usize>(word: &mut [u128; P], row: &[u128; P]) {
    for (w, r) in word.iter_mut().zip(row) {
        *w ^= r;
    }
}
