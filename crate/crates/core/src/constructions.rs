//! Code families: cyclic subsystem codes, BCH families and MDS families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{coset, DefiningSet, Flavor};
use crate::error::{Error, Result};
use crate::galois::{prime_power, Elem, FieldSpec};
use crate::lincode::LinearCode;
use crate::propagation::mds_chain;
use crate::subsystem::{
    euclidean_construction, hermitian_construction, Descriptor, Distance, EngineOptions,
};

/// Most coset subsets the admissible-T enumerator will visit.
pub const ADMISSIBLE_CAP: usize = 1 << 16;

/// Order of the field the classical codes live over: q, or q^2 for Hermitian.
pub fn code_field_order(q: u32, flavor: Flavor) -> Result<u32> {
    prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    match flavor {
        Flavor::Euclidean => Ok(q),
        Flavor::Hermitian => q
            .checked_mul(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q}^2 overflows"))),
    }
}

fn construct(c: &LinearCode, flavor: Flavor, opts: &EngineOptions) -> Result<Descriptor> {
    match flavor {
        Flavor::Euclidean => euclidean_construction(c, opts),
        Flavor::Hermitian => hermitian_construction(c, opts),
    }
}

fn linear_dual(c: &LinearCode, flavor: Flavor) -> Result<LinearCode> {
    match flavor {
        Flavor::Euclidean => Ok(c.dual()),
        Flavor::Hermitian => c.hermitian_dual(),
    }
}

fn floor_of(opts: &EngineOptions, floor: usize) -> EngineOptions {
    opts.with_lower_bound(Some(floor.max(opts.lower_bound.unwrap_or(1))))
}

/// Input of the cyclic constructions.
///
/// `q` is the alphabet of the subsystem code; the defining sets are
/// cyclotomic over GF(q) (Euclidean) or GF(q^2) (Hermitian).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSubsysSpec {
    pub n: usize,
    pub q: u32,
    pub t_d: DefiningSet,
    pub t: DefiningSet,
    pub flavor: Flavor,
}

#[derive(Clone, Debug)]
pub struct CyclicOutput {
    /// The classical code C with C ∩ C^perp = D.
    pub code: LinearCode,
    pub t_c: DefiningSet,
    pub descriptor: Descriptor,
}

/// Defining-set bookkeeping of a cyclic construction, without building codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicLayout {
    pub t_dperp: DefiningSet,
    pub t_c: DefiningSet,
    /// dim D.
    pub k: usize,
    /// |T ∪ T^a|.
    pub r: usize,
}

impl CyclicSubsysSpec {
    pub fn layout(&self) -> Result<CyclicLayout> {
        let fo = code_field_order(self.q, self.flavor)?;
        for t in [&self.t_d, &self.t] {
            if t.n() != self.n || t.q() != fo {
                return Err(Error::InvalidParameter(format!(
                    "defining set over (n={}, q={}) where (n={}, q={fo}) was expected",
                    t.n(),
                    t.q(),
                    self.n
                )));
            }
        }
        let t_dperp = self.t_d.dual(self.flavor)?;
        if !t_dperp.is_subset(&self.t_d)? {
            return Err(Error::Precondition("D is not self-orthogonal".into()));
        }
        let region = self.t_d.difference(&t_dperp)?;
        if !self.t.is_subset(&region)? {
            return Err(Error::Precondition("T is not inside T_D \\ T_{D^perp}".into()));
        }
        let a = self.t_d.dual_multiplier(self.flavor)?;
        let tt = self.t.union(&self.t.scale(a)?)?;
        let k = self.n - self.t_d.len();
        let r = tt.len();
        if 2 * k + r >= self.n {
            return Err(Error::Precondition(format!("r = {r} is not below n - 2k = {}", self.n as i64 - 2 * k as i64)));
        }
        let t_c = self.t_d.difference(&tt)?;
        if t_c.union(&t_c.dual(self.flavor)?)? != self.t_d {
            return Err(Error::Precondition("T_C and its dual do not recover T_D".into()));
        }
        Ok(CyclicLayout { t_dperp, t_c, k, r })
    }
}

/// The cyclic construction for either flavor: [[n, n-2k-r, r, wt(D^perp \ C)]]_q.
pub fn cyclic_construction(spec: &CyclicSubsysSpec, opts: &EngineOptions) -> Result<CyclicOutput> {
    let lay = spec.layout()?;
    let field = FieldSpec::of_order(spec.t_d.q())?;
    let code = LinearCode::from_defining_set(&field, &lay.t_c)?;
    let d_code = LinearCode::from_defining_set(&field, &spec.t_d)?;
    if code.intersect(&linear_dual(&code, spec.flavor)?)? != d_code {
        return Err(Error::Precondition("C ∩ C^perp differs from D".into()));
    }
    let descriptor = construct(&code, spec.flavor, &floor_of(opts, lay.t_dperp.bch_bound()))?.with_step(format!(
        "cyclic {:?} T_D leaders {:?}, T leaders {:?}",
        spec.flavor,
        spec.t_d.coset_leaders(),
        spec.t.coset_leaders()
    ));
    Ok(CyclicOutput { code, t_c: lay.t_c, descriptor })
}

/// Euclidean cyclic construction.
pub fn cyclic_euclidean(spec: &CyclicSubsysSpec, opts: &EngineOptions) -> Result<CyclicOutput> {
    if spec.flavor != Flavor::Euclidean {
        return Err(Error::InvalidParameter("spec is not Euclidean".into()));
    }
    cyclic_construction(spec, opts)
}

/// Hermitian cyclic construction over GF(q^2).
pub fn cyclic_hermitian(spec: &CyclicSubsysSpec, opts: &EngineOptions) -> Result<CyclicOutput> {
    if spec.flavor != Flavor::Hermitian {
        return Err(Error::InvalidParameter("spec is not Hermitian".into()));
    }
    cyclic_construction(spec, opts)
}

/// Coset unions inside T_D \ T_{D^perp}, each with its r = |T ∪ T^a|.
#[derive(Clone, Debug)]
pub struct AdmissibleT {
    pub choices: Vec<(DefiningSet, usize)>,
    /// Set when the region has more than 16 cosets and the list stops at the cap.
    pub truncated: bool,
}

impl AdmissibleT {
    pub fn achievable_r(&self) -> BTreeSet<usize> {
        self.choices.iter().map(|&(_, r)| r).collect()
    }
}

pub fn admissible_t(t_d: &DefiningSet, flavor: Flavor) -> Result<AdmissibleT> {
    let t_dperp = t_d.dual(flavor)?;
    if !t_dperp.is_subset(t_d)? {
        return Err(Error::Precondition("D is not self-orthogonal".into()));
    }
    let leaders = t_d.difference(&t_dperp)?.coset_leaders();
    let a = t_d.dual_multiplier(flavor)?;
    let total = 1usize.checked_shl(leaders.len() as u32).filter(|&t| t <= ADMISSIBLE_CAP);
    let limit = total.unwrap_or(ADMISSIBLE_CAP);
    let pick = |mask: usize| -> Result<(DefiningSet, usize)> {
        let reps: Vec<usize> = leaders.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        let t = DefiningSet::from_cosets(t_d.n(), t_d.q(), &reps)?;
        let r = t.union(&t.scale(a)?)?.len();
        Ok((t, r))
    };
    #[cfg(feature = "parallel")]
    let choices = (0..limit).into_par_iter().map(pick).collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let choices = (0..limit).map(pick).collect::<Result<Vec<_>>>()?;
    Ok(AdmissibleT { choices, truncated: total.is_none() })
}

/// (T_D, T_{D^perp}) with D^perp the narrow-sense BCH code of designed distance delta.
pub fn bch_self_orthogonal(n: usize, field_order: u32, delta: usize, flavor: Flavor) -> Result<(DefiningSet, DefiningSet)> {
    let t_dperp = DefiningSet::bch(n, field_order, delta, 1)?;
    let t_d = t_dperp.dual(flavor)?;
    if !t_dperp.is_subset(&t_d)? {
        return Err(Error::Precondition(format!("BCH code of designed distance {delta} does not contain its dual")));
    }
    Ok((t_d, t_dperp))
}

/// Primitive BCH subsystem family.
///
/// Euclidean: length q^m - 1 over GF(q). Hermitian: length q^{2m} - 1, with
/// the BCH code over GF(q^2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchFamilySpec {
    pub q: u32,
    pub m: u32,
    pub delta: usize,
    pub r: usize,
    pub flavor: Flavor,
}

impl BchFamilySpec {
    fn big_q(&self) -> Result<u64> {
        Ok(code_field_order(self.q, self.flavor)? as u64)
    }

    pub fn length(&self) -> Result<usize> {
        let big = self.big_q()?;
        big.checked_pow(self.m)
            .filter(|&v| v <= 1 << 20)
            .map(|v| (v - 1) as usize)
            .ok_or_else(|| Error::InvalidParameter("length too large".into()))
    }

    /// Largest designed distance with a dual-containing BCH code.
    pub fn delta_max(&self) -> u64 {
        let q = self.q as u64;
        let m = self.m;
        match self.flavor {
            Flavor::Euclidean => {
                let odd = (m % 2 == 1) as u64;
                (q.pow(m.div_ceil(2)) - 1).saturating_sub((q - 2) * odd)
            }
            Flavor::Hermitian => {
                let even = m.is_multiple_of(2) as u32;
                (q.pow(m + even) - 1).saturating_sub((q * q - 2) * even as u64)
            }
        }
    }

    /// m * ceil((delta - 1)(1 - 1/Q)) with Q = q or q^2.
    pub fn k_formula(&self) -> Result<usize> {
        let big = self.big_q()? as usize;
        Ok(self.m as usize * ((self.delta - 1) * (big - 1)).div_ceil(big))
    }
}

/// Block sizes |C_x ∪ C_{ax}| of the admissible region, with a representative each.
fn blocks(region: &DefiningSet, a: i64) -> Result<Vec<(usize, usize)>> {
    let n = region.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in region.coset_leaders() {
        if seen[x] {
            continue;
        }
        let ax = (x as i64 * a).rem_euclid(n as i64) as usize;
        let mut size = 0;
        for y in coset(x, n, region.q())?.into_iter().chain(coset(ax, n, region.q())?) {
            if !seen[y] {
                seen[y] = true;
                size += 1;
            }
        }
        out.push((x, size));
    }
    Ok(out)
}

/// Representatives of blocks whose sizes sum to exactly r.
fn subset_with_sum(blocks: &[(usize, usize)], r: usize) -> Option<Vec<usize>> {
    // reach[s] = (block index, previous sum) of the first way to reach s.
    let mut reach: Vec<Option<(usize, usize)>> = vec![None; r + 1];
    let mut ok = vec![false; r + 1];
    ok[0] = true;
    for (i, &(_, size)) in blocks.iter().enumerate() {
        for s in (size..=r).rev() {
            if !ok[s] && ok[s - size] {
                ok[s] = true;
                reach[s] = Some((i, s - size));
            }
        }
    }
    if !ok[r] {
        return None;
    }
    let mut reps = Vec::new();
    let mut s = r;
    while s > 0 {
        let (i, prev) = reach[s]?;
        reps.push(blocks[i].0);
        s = prev;
    }
    Some(reps)
}

pub fn bch_family(spec: &BchFamilySpec, opts: &EngineOptions) -> Result<Descriptor> {
    if spec.m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    if spec.delta < 2 || spec.delta as u64 > spec.delta_max() {
        return Err(Error::InvalidParameter(format!(
            "designed distance {} outside 2..={}",
            spec.delta,
            spec.delta_max()
        )));
    }
    let n = spec.length()?;
    let fo = code_field_order(spec.q, spec.flavor)?;
    let (t_d, _) = bch_self_orthogonal(n, fo, spec.delta, spec.flavor)?;
    let k = n - t_d.len();
    if 2 * k + spec.r >= n {
        return Err(Error::InvalidParameter(format!("r = {} is not below n - 2k = {}", spec.r, n - 2 * k)));
    }
    let region = t_d.difference(&t_d.dual(spec.flavor)?)?;
    let a = t_d.dual_multiplier(spec.flavor)?;
    let family = format!("BCH family q={} m={} delta={} {:?}", spec.q, spec.m, spec.delta, spec.flavor);
    match subset_with_sum(&blocks(&region, a)?, spec.r) {
        Some(reps) => {
            let t = DefiningSet::from_cosets(n, fo, &reps)?;
            let cs = CyclicSubsysSpec { n, q: spec.q, t_d, t, flavor: spec.flavor };
            Ok(cyclic_construction(&cs, opts)?.descriptor.with_step(family))
        }
        None => {
            // r is not a sum of block sizes: trade dimensions on the stabilizer code instead.
            let empty = DefiningSet::empty(n, fo)?;
            let cs = CyclicSubsysSpec { n, q: spec.q, t_d, t: empty, flavor: spec.flavor };
            let stab = cyclic_construction(&cs, opts)?.descriptor.with_step(family);
            crate::propagation::stabilizer_to_subsystem(&stab, spec.r as u32)
        }
    }
}

/// The items of the MDS family corollary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MdsItem {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl MdsItem {
    pub const ALL: [MdsItem; 6] = [MdsItem::I, MdsItem::II, MdsItem::III, MdsItem::IV, MdsItem::V, MdsItem::VI];

    pub fn as_str(self) -> &'static str {
        match self {
            MdsItem::I => "i",
            MdsItem::II => "ii",
            MdsItem::III => "iii",
            MdsItem::IV => "iv",
            MdsItem::V => "v",
            MdsItem::VI => "vi",
        }
    }

    /// Items with an explicit Reed-Solomon construction.
    pub fn is_constructive(self) -> bool {
        !matches!(self, MdsItem::I | MdsItem::II)
    }
}

impl fmt::Display for MdsItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MdsItem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MdsItem::ALL
            .into_iter()
            .find(|i| i.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown MDS item {s:?}")))
    }
}

/// Parameters of an MDS item; each item reads the fields it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsParams {
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub nu: Option<usize>,
    pub delta: Option<usize>,
    pub r: usize,
}

#[derive(Clone, Debug)]
pub struct MdsRecord {
    pub descriptor: Descriptor,
    /// False for items only known to exist.
    pub constructive: bool,
}

fn need(v: Option<usize>, name: &str, item: MdsItem) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParameter(format!("item {item} needs {name}")))
}

fn range_err(item: MdsItem, what: String) -> Error {
    Error::InvalidParameter(format!("item {item}: {what}"))
}

/// Self-orthogonal Reed-Solomon evaluation code behind items iii-vi.
///
/// Rows are (x^j)_x for j in the exponent range, over the nonzero elements
/// (iii, v) or all elements (iv, vi) of GF(q) or GF(q^2).
pub fn mds_stabilizer_code(item: MdsItem, q: u32, delta: usize) -> Result<(LinearCode, Flavor)> {
    let (flavor, all_points) = match item {
        MdsItem::III => (Flavor::Euclidean, false),
        MdsItem::IV => (Flavor::Euclidean, true),
        MdsItem::V => (Flavor::Hermitian, false),
        MdsItem::VI => (Flavor::Hermitian, true),
        _ => return Err(range_err(item, "no explicit construction".into())),
    };
    let field = FieldSpec::of_order(code_field_order(q, flavor)?)?;
    let points: Vec<Elem> = field.elements().filter(|&x| all_points || x != 0).collect();
    let exps = if all_points { 0..=delta } else { 1..=delta };
    let rows = exps
        .map(|j| points.iter().map(|&x| if j == 0 { 1 } else { field.pow(x, j as u64) }).collect())
        .collect();
    Ok((LinearCode::new(&field, points.len(), rows)?, flavor))
}

fn mds_stabilizer(item: MdsItem, q: u32, delta: usize, opts: &EngineOptions) -> Result<Descriptor> {
    let (c, flavor) = mds_stabilizer_code(item, q, delta)?;
    let n = c.n();
    let d = if matches!(item, MdsItem::III | MdsItem::V) { delta + 1 } else { delta + 2 };
    // D^perp is again a Reed-Solomon code, of distance dim D + 1.
    let desc = construct(&c, flavor, &floor_of(opts, d))?;
    if desc.k() != Some((n - 2 * c.k()) as u32) || desc.d != Distance::exact(d) {
        return Err(Error::Precondition(format!("item {item} construction gave {desc}")));
    }
    Ok(desc.with_step(format!("MDS item {item} q={q} delta={delta}")))
}

pub fn mds_family(item: MdsItem, q: u32, params: &MdsParams, opts: &EngineOptions) -> Result<MdsRecord> {
    prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    let qu = q as usize;
    let r = params.r;
    let record = |n: usize, d: usize| -> Result<MdsRecord> {
        let k = n + 2 - 2 * d - r;
        let desc = Descriptor::bracket(q, n, k as u32, r as u32, Distance::exact(d))?
            .with_pure_to(Some(Distance::at_least(d)))
            .with_linear(true)
            .with_step(format!("MDS item {item} (existence only)"));
        Ok(MdsRecord { descriptor: desc, constructive: false })
    };
    match item {
        MdsItem::I => {
            let n = need(params.n, "n", item)?;
            let d = need(params.d, "d", item)?;
            if !(3..=qu).contains(&n) || d < 1 || 2 * d > n + 2 || r + 2 * d > n + 1 {
                return Err(range_err(item, format!("n={n} d={d} r={r} out of range")));
            }
            record(n, d)
        }
        MdsItem::II => {
            let nu = need(params.nu, "nu", item)?;
            let n = (nu + 1) * qu;
            if nu + 2 > qu || r + 2 * nu + 3 > n {
                return Err(range_err(item, format!("nu={nu} r={r} out of range")));
            }
            record(n, nu + 2)
        }
        _ => {
            let delta = need(params.delta, "delta", item)?;
            let (n, limit_ok) = match item {
                MdsItem::III => (qu - 1, 2 * delta < qu - 1 && r + 2 * delta < qu),
                MdsItem::IV => (qu, 2 * delta < qu - 1 && r + 2 * delta + 2 < qu),
                MdsItem::V => (qu * qu - 1, delta + 1 < qu && r + 2 * delta + 1 < qu * qu),
                _ => (qu * qu, delta + 1 < qu && r + 2 * delta + 2 < qu * qu),
            };
            if !limit_ok {
                return Err(range_err(item, format!("q={q} delta={delta} r={r} out of range (n={n})")));
            }
            let stab = mds_stabilizer(item, q, delta, opts)?;
            let descriptor = mds_chain(&stab)?.swap_remove(r);
            Ok(MdsRecord { descriptor, constructive: true })
        }
    }
}

/// Single-coordinate modification of a cyclic parent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modifier {
    #[default]
    None,
    Extend,
    Puncture,
}

/// A classical cyclic code fed directly to the Euclidean or Hermitian construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parent {
    /// Alphabet of the subsystem code.
    pub q: u32,
    pub flavor: Flavor,
    pub t_c: DefiningSet,
    #[serde(default)]
    pub modifier: Modifier,
}

impl fmt::Display for Parent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.t_c.n();
        write!(f, "[{},{}]_{} cyclic, zeros {:?}", n, n - self.t_c.len(), self.t_c.q(), self.t_c.coset_leaders())?;
        match self.modifier {
            Modifier::None => Ok(()),
            Modifier::Extend => f.write_str(", extended"),
            Modifier::Puncture => f.write_str(", punctured"),
        }
    }
}

impl Parent {
    /// Narrow-sense BCH code of designed distance delta.
    pub fn bch(q: u32, flavor: Flavor, n: usize, delta: usize) -> Result<Self> {
        let t_c = DefiningSet::bch(n, code_field_order(q, flavor)?, delta, 1)?;
        Ok(Parent { q, flavor, t_c, modifier: Modifier::None })
    }

    /// Reed-Solomon code of length Q - 1 and dimension `dim`, zeros b, ..., b + n - dim - 1.
    pub fn rs(q: u32, flavor: Flavor, dim: usize, b: usize) -> Result<Self> {
        let fo = code_field_order(q, flavor)?;
        let n = fo as usize - 1;
        if dim == 0 || dim >= n {
            return Err(Error::InvalidParameter(format!("dimension {dim} outside 1..{n}")));
        }
        let zeros: Vec<usize> = (b..b + n - dim).map(|x| x % n).collect();
        let t_c = DefiningSet::new(n, fo, &zeros)?;
        Ok(Parent { q, flavor, t_c, modifier: Modifier::None })
    }

    pub fn with_modifier(mut self, modifier: Modifier) -> Self {
        self.modifier = modifier;
        self
    }

    pub fn n(&self) -> usize {
        match self.modifier {
            Modifier::None => self.t_c.n(),
            Modifier::Extend => self.t_c.n() + 1,
            Modifier::Puncture => self.t_c.n() - 1,
        }
    }

    pub fn code(&self) -> Result<LinearCode> {
        let field = FieldSpec::of_order(self.t_c.q())?;
        let c = LinearCode::from_defining_set(&field, &self.t_c)?;
        match self.modifier {
            Modifier::None => Ok(c),
            Modifier::Extend => Ok(c.extend_parity()),
            Modifier::Puncture => c.puncture(c.n() - 1),
        }
    }

    /// (k, r) of the construction; `None` when k' + k'' >= n.
    pub fn dims(&self) -> Result<Option<(usize, usize)>> {
        let n = self.n();
        let (k1, k2) = match self.modifier {
            Modifier::None => {
                let t_d = self.t_c.union(&self.t_c.dual(self.flavor)?)?;
                (n - self.t_c.len(), n - t_d.len())
            }
            _ => {
                let c = self.code()?;
                (c.k(), c.intersect(&linear_dual(&c, self.flavor)?)?.k())
            }
        };
        Ok((k1 + k2 < n).then(|| (n - k1 - k2, k1 - k2)))
    }

    pub fn build(&self, opts: &EngineOptions) -> Result<Descriptor> {
        let c = self.code()?;
        let floor = match self.modifier {
            // D^perp is cyclic with defining set T_C ∩ T_{C^perp}.
            Modifier::None => self.t_c.intersect(&self.t_c.dual(self.flavor)?)?.bch_bound(),
            _ => 1,
        };
        Ok(construct(&c, self.flavor, &floor_of(opts, floor))?.with_step(format!("parent {self}")))
    }
}

/// Offsets b for which the Reed-Solomon parent gives the bracket (k, r).
pub fn rs_offsets(q: u32, flavor: Flavor, dim: usize, modifier: Modifier, k: usize, r: usize) -> Result<Vec<usize>> {
    let n = code_field_order(q, flavor)? as usize - 1;
    let mut out = Vec::new();
    for b in 0..n {
        let parent = Parent::rs(q, flavor, dim, b)?.with_modifier(modifier);
        if parent.dims()? == Some((k, r)) {
            out.push(b);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::EnumOptions;

    fn opts() -> EngineOptions {
        EngineOptions { enumeration: EnumOptions::with_budget(1 << 22), lower_bound: None }
    }

    #[test]
    fn example_region_and_r() {
        let t_d = DefiningSet::from_cosets(31, 4, &[0, 1, 3, 5, 11]).unwrap();
        let adm = admissible_t(&t_d, Flavor::Hermitian).unwrap();
        assert!(!adm.truncated);
        assert_eq!(adm.choices.len(), 8);
        let c5 = DefiningSet::from_cosets(31, 4, &[5]).unwrap();
        assert!(adm.choices.iter().any(|(t, r)| *t == c5 && *r == 10));
        assert_eq!(adm.achievable_r(), [0, 1, 10, 11].into_iter().collect());
    }

    #[test]
    fn example_layout() {
        let t_d = DefiningSet::from_cosets(31, 4, &[0, 1, 3, 5, 11]).unwrap();
        let t = DefiningSet::from_cosets(31, 4, &[5]).unwrap();
        let spec = CyclicSubsysSpec { n: 31, q: 2, t_d, t, flavor: Flavor::Hermitian };
        let lay = spec.layout().unwrap();
        assert_eq!((lay.k, lay.r, 31 - lay.t_c.len()), (10, 10, 20));
    }

    #[test]
    fn bch_family_formula_matches_sets() {
        for (q, m, flavor) in [(2, 4, Flavor::Euclidean), (2, 6, Flavor::Euclidean), (3, 3, Flavor::Euclidean), (2, 2, Flavor::Hermitian), (2, 3, Flavor::Hermitian)] {
            let mut spec = BchFamilySpec { q, m, delta: 2, r: 0, flavor };
            let n = spec.length().unwrap();
            let fo = code_field_order(q, flavor).unwrap();
            for delta in 2..=spec.delta_max() as usize {
                spec.delta = delta;
                let (t_d, _) = bch_self_orthogonal(n, fo, delta, flavor).unwrap();
                assert_eq!(n - t_d.len(), spec.k_formula().unwrap(), "{spec:?}");
            }
        }
    }

    #[test]
    fn bch_family_example() {
        let spec = BchFamilySpec { q: 2, m: 4, delta: 3, r: 3, flavor: Flavor::Euclidean };
        let d = bch_family(&spec, &opts()).unwrap();
        assert_eq!((d.n, d.k(), d.r()), (15, Some(4), Some(3)));
        assert!(d.d.value >= 3);
        let bad = BchFamilySpec { r: 7, ..spec };
        assert!(bch_family(&bad, &opts()).is_err());
        let far = BchFamilySpec { delta: 4, ..spec };
        assert!(bch_family(&far, &opts()).is_err());
    }

    #[test]
    fn subset_sum_reconstructs() {
        let b = [(0, 1), (3, 4), (5, 2)];
        let reps = subset_with_sum(&b, 3).unwrap();
        assert_eq!(reps.iter().map(|r| b.iter().find(|x| x.0 == *r).unwrap().1).sum::<usize>(), 3);
        assert!(subset_with_sum(&b, 4).is_some());
        assert!(subset_with_sum(&[(0, 4)], 3).is_none());
    }

    #[test]
    fn mds_items_small() {
        let rec = mds_family(MdsItem::V, 3, &MdsParams { delta: Some(1), r: 5, ..Default::default() }, &opts()).unwrap();
        assert!(rec.constructive);
        assert_eq!(rec.descriptor.to_string(), "[[8,1,5,2]]_3");
        let rec = mds_family(MdsItem::I, 5, &MdsParams { n: Some(5), d: Some(2), r: 1, ..Default::default() }, &opts()).unwrap();
        assert!(!rec.constructive);
        assert_eq!(rec.descriptor.to_string(), "[[5,2,1,2]]_5");
        assert!(mds_family(MdsItem::V, 3, &MdsParams { delta: Some(2), r: 5, ..Default::default() }, &opts()).is_err());
    }

    #[test]
    fn mds_item_parse() {
        assert_eq!("iv".parse::<MdsItem>().unwrap(), MdsItem::IV);
        assert!("vii".parse::<MdsItem>().is_err());
    }
}
