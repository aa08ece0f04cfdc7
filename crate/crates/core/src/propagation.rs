//! Rules that derive new subsystem codes from known ones.
//!
//! Rules with an explicit code manipulation come in a constructive form,
//! which transforms an [`AdditiveCode`] and recomputes its parameters, and a
//! parametric form working on descriptors alone. The remaining rules are
//! parametric only. Parametric outputs carry d as a lower bound unless the
//! Singleton bound pins it down for a linear code.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::subsystem::{from_additive, singleton_check, Descriptor, Distance, EngineOptions, Purity};
use crate::symplectic::{AdditiveCode, SympVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Thm8,
    Thm9,
    Thm10,
    Thm11,
    Cor12,
    Thm15,
    Thm16,
    Thm17,
    Thm18,
    Thm19,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::Thm8,
        RuleId::Thm9,
        RuleId::Thm10,
        RuleId::Thm11,
        RuleId::Cor12,
        RuleId::Thm15,
        RuleId::Thm16,
        RuleId::Thm17,
        RuleId::Thm18,
        RuleId::Thm19,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Thm8 => "thm8",
            RuleId::Thm9 => "thm9",
            RuleId::Thm10 => "thm10",
            RuleId::Thm11 => "thm11",
            RuleId::Cor12 => "cor12",
            RuleId::Thm15 => "thm15",
            RuleId::Thm16 => "thm16",
            RuleId::Thm17 => "thm17",
            RuleId::Thm18 => "thm18",
            RuleId::Thm19 => "thm19",
        }
    }

    pub fn tier(self) -> Tier {
        match self {
            RuleId::Thm8 | RuleId::Thm10 | RuleId::Thm16 => Tier::Constructive,
            _ => Tier::Parametric,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown rule {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Constructive,
    Parametric,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

fn bracket_of(desc: &Descriptor) -> Result<(u32, u32)> {
    desc.k()
        .zip(desc.r())
        .ok_or_else(|| Error::Precondition(format!("{desc} has no bracket form")))
}

/// min{d, d'} as a lower bound, if d' is known.
fn pure_to_min(desc: &Descriptor) -> Option<Distance> {
    desc.pure_to.map(|pt| Distance::at_least(pt.value.min(desc.d.value)))
}

fn derived(desc: &Descriptor, rule: RuleId) -> Descriptor {
    let mut out = desc.clone();
    out.provenance.push(format!("{rule}: from {desc}"));
    out
}

fn finish(out: Descriptor) -> Result<Descriptor> {
    let out = out.tighten();
    out.validate()?;
    Ok(out)
}

/// Recompute a constructed code, falling back to the rule's guarantees over budget.
fn recompute(c: &AdditiveCode, floor: usize, opts: &EngineOptions, fallback: &Descriptor) -> Result<Descriptor> {
    let mut out = from_additive(c, &opts.with_lower_bound(Some(floor)))?;
    if !out.d.is_exact() {
        out.d = fallback.d;
    }
    if out.pure_to.is_none() {
        out.pure_to = fallback.pure_to;
    }
    out.linear = fallback.linear;
    out.provenance = fallback.provenance.clone();
    Ok(out)
}

/// ((n,K,R,d)) -> ((n,K/p,pR,>=d)), pure to min{d,d'}.
pub fn shrink_k_params(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.k_exp >= 2 || (desc.k_exp == 1 && desc.is_pure()), || {
        format!("{desc}: needs K > p, or K = p and a pure code")
    })?;
    let mut out = derived(desc, RuleId::Thm8);
    out.k_exp -= 1;
    out.r_exp += 1;
    out.d = if desc.k_exp == 1 { desc.d } else { desc.d.bound() };
    out.pure_to = pure_to_min(desc);
    out.linear = desc.m == 1;
    finish(out)
}

/// Constructive form: adjoin the first hyperbolic pair of C^perp_s to C.
pub fn shrink_k(c: &AdditiveCode, desc: &Descriptor, opts: &EngineOptions) -> Result<(AdditiveCode, Descriptor)> {
    let target = shrink_k_params(desc)?;
    let hb = c.symp_dual().symp_gram_schmidt();
    let (x, z) = hb
        .pairs
        .first()
        .ok_or_else(|| Error::Precondition("symplectic dual has no hyperbolic pair".into()))?;
    let mut gens = c.gens();
    gens.push(x.clone());
    gens.push(z.clone());
    let cm = AdditiveCode::new(c.field(), c.n(), &gens)?;
    let out = recompute(&cm, desc.d.value, opts, &target)?;
    Ok((cm, out))
}

/// F_q-linear [[n,k,r,d]] -> [[n,k-1,r+1,>=d]], pure to min{d,d'}.
pub fn shrink_k_linear(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.linear, || format!("{desc} is not known to be F_q-linear"))?;
    let (k, _) = bracket_of(desc)?;
    require(k > 1 || (k == 1 && desc.is_pure()), || format!("{desc}: needs k > 1, or k = 1 and a pure code"))?;
    let mut out = derived(desc, RuleId::Thm9);
    out.k_exp -= desc.m;
    out.r_exp += desc.m;
    out.d = if k == 1 { desc.d } else { desc.d.bound() };
    out.pure_to = pure_to_min(desc);
    finish(out)
}

/// Pure ((n,K,R,d)) with R > 1 -> pure ((n,pK,R/p,d)).
pub fn grow_k_params(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.purity() == Purity::Pure, || format!("{desc} is not known to be pure"))?;
    require(desc.r_exp >= 1, || format!("{desc} has R = 1"))?;
    let mut out = derived(desc, RuleId::Thm10);
    out.k_exp += 1;
    out.r_exp -= 1;
    out.linear = desc.m == 1;
    finish(out)
}

/// Constructive form: drop the last hyperbolic pair of C.
pub fn grow_k(c: &AdditiveCode, desc: &Descriptor, opts: &EngineOptions) -> Result<(AdditiveCode, Descriptor)> {
    let target = grow_k_params(desc)?;
    let mut hb = c.symp_gram_schmidt();
    hb.pairs.pop().ok_or_else(|| Error::Precondition("code has no hyperbolic pair".into()))?;
    let gens: Vec<SympVector> = hb.isotropic.into_iter().chain(hb.pairs.into_iter().flat_map(|(x, z)| [x, z])).collect();
    let cs = AdditiveCode::new(c.field(), c.n(), &gens)?;
    if cs.dim_p() == 0 {
        // The engine rejects the zero code; keep the derived parameters.
        return Ok((cs, target));
    }
    let out = recompute(&cs, desc.d.value, opts, &target)?;
    Ok((cs, out))
}

/// Pure F_q-linear [[n,k,r,d]] with r > 0 -> pure [[n,k+1,r-1,d]].
pub fn grow_k_linear(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.linear, || format!("{desc} is not known to be F_q-linear"))?;
    require(desc.purity() == Purity::Pure, || format!("{desc} is not known to be pure"))?;
    let (_, r) = bracket_of(desc)?;
    require(r > 0, || format!("{desc} has r = 0"))?;
    let mut out = derived(desc, RuleId::Thm11);
    out.k_exp += desc.m;
    out.r_exp -= desc.m;
    finish(out)
}

/// [[n,k,d]] stabilizer code -> [[n,k-r,r,>=d]], pure to min{d,d'}.
///
/// r = k is accepted for pure inputs (the final step yields K = 1).
pub fn stabilizer_to_subsystem(desc: &Descriptor, r: u32) -> Result<Descriptor> {
    require(desc.is_stabilizer(), || format!("{desc} is not a stabilizer code"))?;
    let (k, _) = bracket_of(desc)?;
    require(r < k || (r == k && k > 0 && desc.is_pure()), || format!("r = {r} outside 0..{k} for {desc}"))?;
    if r == 0 {
        return Ok(desc.clone());
    }
    let mut out = derived(desc, RuleId::Cor12);
    out.k_exp -= r * desc.m;
    out.r_exp += r * desc.m;
    out.d = if r == k { desc.d } else { desc.d.bound() };
    out.pure_to = pure_to_min(desc);
    finish(out)
}

/// Pure [[n,k,r,d]] -> pure [[n,k+r,d]] stabilizer code.
pub fn subsystem_to_stabilizer(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.purity() == Purity::Pure, || format!("{desc} is not known to be pure"))?;
    let mut out = derived(desc, RuleId::Cor12);
    out.k_exp += desc.r_exp;
    out.r_exp = 0;
    finish(out)
}

/// An F_q-linear MDS stabilizer [[n,k,d]] gives pure MDS [[n,k-r,r,d]] for 0 <= r <= k.
pub fn mds_chain(desc: &Descriptor) -> Result<Vec<Descriptor>> {
    require(desc.linear, || format!("{desc} is not known to be F_q-linear"))?;
    require(desc.is_stabilizer(), || format!("{desc} is not a stabilizer code"))?;
    let report = singleton_check(desc)?;
    require(report.is_mds, || format!("{desc} is not an MDS code with exact distance"))?;
    let (k, _) = bracket_of(desc)?;
    (0..=k)
        .map(|r| {
            let mut out = derived(desc, RuleId::Thm15);
            out.k_exp -= r * desc.m;
            out.r_exp += r * desc.m;
            out.pure_to = Some(Distance::at_least(desc.d.value));
            finish(out)
        })
        .collect()
}

/// ((n,K,R,d)) with K > 1 -> ((n+1,K,R,>=d)), pure to 1.
pub fn extend_n_params(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.k_exp >= 1, || format!("{desc} has K = 1"))?;
    let mut out = derived(desc, RuleId::Thm16);
    out.n += 1;
    out.d = desc.d.bound();
    out.pure_to = Some(Distance::exact(1));
    finish(out)
}

/// Constructive form: X' = {(a alpha | b 0)}.
pub fn extend_n(c: &AdditiveCode, desc: &Descriptor, opts: &EngineOptions) -> Result<(AdditiveCode, Descriptor)> {
    let target = extend_n_params(desc)?;
    let field = c.field();
    let n = c.n();
    let mut gens: Vec<SympVector> = c
        .gens()
        .into_iter()
        .map(|g| {
            let mut a = g.a;
            let mut b = g.b;
            a.push(0);
            b.push(0);
            SympVector { a, b }
        })
        .collect();
    for s in 0..field.m() {
        let mut a = vec![0; n + 1];
        a[n] = field.p().pow(s);
        gens.push(SympVector { a, b: vec![0; n + 1] });
    }
    let ce = AdditiveCode::new(field, n + 1, &gens)?;
    let out = recompute(&ce, desc.d.value, opts, &target)?;
    Ok((ce, out))
}

/// Pure ((n,K,R,d)) -> pure ((n-1,qK,R,d-1)).
pub fn shorten(desc: &Descriptor) -> Result<Descriptor> {
    require(desc.purity() == Purity::Pure, || format!("{desc} is not known to be pure"))?;
    require(desc.d.value >= 2 && desc.n >= 2, || format!("{desc}: needs d >= 2 and n >= 2"))?;
    let mut out = derived(desc, RuleId::Thm17);
    out.n -= 1;
    out.k_exp += desc.m;
    out.d = Distance::at_least(desc.d.value - 1);
    out.pure_to = Some(Distance::at_least(desc.d.value - 1));
    out.linear = desc.m == 1;
    finish(out)
}

/// Pure binary [[n1,k1,r1,d1]] and [[n2,k2,r2,d2]] with k2+r2 <= n1 give
/// [[n1+n2-k2-r2, k1+r1-r, r, >= min{d1, d1+d2-k2-r2}]] for 0 <= r < k1+r1.
pub fn combine_disjoint(d1: &Descriptor, d2: &Descriptor) -> Result<Vec<Descriptor>> {
    require(d1.q() == 2 && d2.q() == 2, || "binary codes required".into())?;
    require(d1.is_pure() && d2.is_pure(), || "both codes must be pure".into())?;
    let (k1, r1) = bracket_of(d1)?;
    let (k2, r2) = bracket_of(d2)?;
    require((k2 + r2) as usize <= d1.n, || format!("k2 + r2 = {} exceeds n1 = {}", k2 + r2, d1.n))?;
    let n = d1.n + d2.n - (k2 + r2) as usize;
    let d = (d1.d.value as i64).min(d1.d.value as i64 + d2.d.value as i64 - (k2 + r2) as i64).max(1) as usize;
    (0..k1 + r1)
        .map(|r| {
            let mut out = Descriptor::bracket(2, n, k1 + r1 - r, r, Distance::at_least(d))?;
            out.provenance = vec![format!("{}: from {d1} and {d2}", RuleId::Thm18)];
            Ok(out)
        })
        .collect()
}

/// Pure [[n,k1,r1,d1]] containing pure [[n,k2,r2,d2]] give pure
/// [[2n, k1+k2+r1+r2-r, r, >= min{d1, 2 d2}]] for 0 <= r <= k1+k2+r1+r2.
/// `nested` is the caller's assertion that the second code is inside the first.
pub fn combine_nested(d1: &Descriptor, d2: &Descriptor, nested: bool) -> Result<Vec<Descriptor>> {
    require(nested, || "nesting witness missing".into())?;
    require(d1.n == d2.n && d1.q() == d2.q(), || format!("{d1} and {d2} differ in n or q"))?;
    require(d1.is_pure() && d2.is_pure(), || "both codes must be pure".into())?;
    let (k1, r1) = bracket_of(d1)?;
    let (k2, r2) = bracket_of(d2)?;
    let total = k1 + k2 + r1 + r2;
    let d = d1.d.value.min(2 * d2.d.value);
    (0..=total)
        .map(|r| {
            let mut out = Descriptor::bracket(d1.q(), 2 * d1.n, total - r, r, Distance::at_least(d))?
                .with_pure_to(Some(Distance::at_least(d)));
            out.provenance = vec![format!("{}: from {d1} and {d2}", RuleId::Thm19)];
            Ok(out)
        })
        .collect()
}

/// Apply a single-input rule at the parametric tier. `r` is the target for cor12.
pub fn apply_params(rule: RuleId, desc: &Descriptor, r: Option<u32>) -> Result<Vec<Descriptor>> {
    Ok(match rule {
        RuleId::Thm8 => vec![shrink_k_params(desc)?],
        RuleId::Thm9 => vec![shrink_k_linear(desc)?],
        RuleId::Thm10 => vec![grow_k_params(desc)?],
        RuleId::Thm11 => vec![grow_k_linear(desc)?],
        RuleId::Cor12 => match r {
            Some(r) => vec![stabilizer_to_subsystem(desc, r)?],
            None => vec![subsystem_to_stabilizer(desc)?],
        },
        RuleId::Thm15 => mds_chain(desc)?,
        RuleId::Thm16 => vec![extend_n_params(desc)?],
        RuleId::Thm17 => vec![shorten(desc)?],
        RuleId::Thm18 | RuleId::Thm19 => {
            return Err(Error::InvalidParameter(format!("{rule} combines two codes")));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pure(q: u32, n: usize, k: u32, r: u32, d: usize) -> Descriptor {
        Descriptor::bracket(q, n, k, r, Distance::exact(d))
            .unwrap()
            .with_pure_to(Some(Distance::exact(d)))
            .with_linear(true)
    }

    #[test]
    fn rule_ids_parse() {
        for r in RuleId::ALL {
            assert_eq!(r.as_str().parse::<RuleId>().unwrap(), r);
        }
        assert!("thm99".parse::<RuleId>().is_err());
    }

    #[test]
    fn shrink_linear_arithmetic() {
        let out = shrink_k_linear(&pure(2, 15, 4, 3, 3)).unwrap();
        assert_eq!((out.k(), out.r(), out.d), (Some(3), Some(4), Distance::at_least(3)));
        let k1 = shrink_k_linear(&pure(2, 5, 1, 0, 3)).unwrap();
        assert_eq!((k1.k(), k1.r(), k1.d), (Some(0), Some(1), Distance::exact(3)));
    }

    #[test]
    fn bacon_shor_guard() {
        let bs = Descriptor::bracket(2, 9, 1, 4, Distance::exact(3))
            .unwrap()
            .with_pure_to(Some(Distance::exact(2)))
            .with_linear(true);
        assert!(matches!(grow_k_params(&bs), Err(Error::Precondition(_))));
        assert!(matches!(grow_k_linear(&bs), Err(Error::Precondition(_))));
        assert!(matches!(shrink_k_linear(&bs), Err(Error::Precondition(_))));
    }

    #[test]
    fn shorten_arithmetic() {
        let out = shorten(&pure(2, 16, 4, 3, 4)).unwrap();
        assert_eq!((out.n, out.k(), out.r(), out.d.value), (15, Some(5), Some(3), 3));
        let impure = pure(2, 16, 4, 3, 4).with_pure_to(Some(Distance::exact(2)));
        assert!(shorten(&impure).is_err());
    }

    #[test]
    fn combine_families() {
        let fam = combine_disjoint(&pure(2, 15, 7, 0, 3), &pure(2, 7, 1, 0, 3)).unwrap();
        assert_eq!(fam.len(), 7);
        assert!(fam.iter().all(|d| d.n == 21 && d.d == Distance::at_least(3)));
        assert!(combine_disjoint(&pure(2, 3, 1, 0, 1), &pure(2, 7, 4, 0, 3)).is_err());
        let nested = combine_nested(&pure(2, 7, 1, 0, 3), &pure(2, 7, 1, 0, 3), true).unwrap();
        assert_eq!(nested.len(), 3);
        assert_eq!(nested[0].d.value, 3);
        assert!(combine_nested(&pure(2, 7, 1, 0, 3), &pure(2, 7, 1, 0, 3), false).is_err());
    }

    #[test]
    fn mds_chain_keeps_distance() {
        let chain = mds_chain(&pure(3, 8, 6, 0, 2)).unwrap();
        assert_eq!(chain.len(), 7);
        assert!(chain.iter().all(|d| d.d == Distance::exact(2)));
        assert!(mds_chain(&pure(2, 15, 7, 0, 3)).is_err());
    }
}
