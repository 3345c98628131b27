//! Exhaustive generation of every path family, in canonical order.
//!
//! Air-pocket families are produced from their grammars (second-to-last
//! return for all paths, first arch for the non-decreasing ones) and then
//! sorted. [`air_paths_dfs`] is an independent filtered depth-first generator
//! over raw step sequences, kept for cross-validation.
//!
//! Ordering is by step sequence with `U < D1 < D2 < ...`; Motzkin-type words
//! use `U < D < F < W` and meander words `L < R`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bijections::elevate_steps;
use crate::error::EnumError;
use crate::path::{
    AirPocketPath, Arc, DyckStep, DyckWord, MeanderWord, MotzkinMode, MotzkinStep, MotzkinWord,
    Step,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyId {
    Air,
    AirInc,
    Prime,
    ValleysAtZero,
    PeaklessMotzkin,
    ValleylessMotzkin,
    GrandPeakless,
    GrandPeaklessStartd,
    SFamily,
    Meander,
    Dyck,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::Air,
        FamilyId::AirInc,
        FamilyId::Prime,
        FamilyId::ValleysAtZero,
        FamilyId::PeaklessMotzkin,
        FamilyId::ValleylessMotzkin,
        FamilyId::GrandPeakless,
        FamilyId::GrandPeaklessStartd,
        FamilyId::SFamily,
        FamilyId::Meander,
        FamilyId::Dyck,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::Air => "AIR",
            FamilyId::AirInc => "AIR_INC",
            FamilyId::Prime => "PRIME",
            FamilyId::ValleysAtZero => "VALLEYS_AT_ZERO",
            FamilyId::PeaklessMotzkin => "PEAKLESS_MOTZKIN",
            FamilyId::ValleylessMotzkin => "VALLEYLESS_MOTZKIN",
            FamilyId::GrandPeakless => "GRAND_PEAKLESS",
            FamilyId::GrandPeaklessStartd => "GRAND_PEAKLESS_STARTD",
            FamilyId::SFamily => "S_FAMILY",
            FamilyId::Meander => "MEANDER",
            FamilyId::Dyck => "DYCK",
        }
    }

    /// True for the families whose members are air-pocket paths.
    pub fn is_air(self) -> bool {
        matches!(
            self,
            FamilyId::Air | FamilyId::AirInc | FamilyId::Prime | FamilyId::ValleysAtZero
        )
    }

    /// True for the families whose members are Motzkin-type words.
    pub fn is_motzkin(self) -> bool {
        matches!(
            self,
            FamilyId::PeaklessMotzkin
                | FamilyId::ValleylessMotzkin
                | FamilyId::GrandPeakless
                | FamilyId::GrandPeaklessStartd
                | FamilyId::SFamily
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyId {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase().replace('-', "_");
        FamilyId::ALL
            .into_iter()
            .find(|f| f.tag() == upper)
            .ok_or_else(|| EnumError::UnknownFamily(s.to_string()))
    }
}

/// One member of a family stream.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyMember {
    Air(AirPocketPath),
    Motzkin(MotzkinWord),
    Meander(MeanderWord),
    Dyck(DyckWord),
}

impl FamilyMember {
    pub fn as_air(&self) -> Option<&AirPocketPath> {
        match self {
            FamilyMember::Air(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_motzkin(&self) -> Option<&MotzkinWord> {
        match self {
            FamilyMember::Motzkin(w) => Some(w),
            _ => None,
        }
    }

    /// JSON value for JSON-lines output: paths as `{"steps": [...]}`, words
    /// as `{"word": "..."}`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            FamilyMember::Air(p) => serde_json::to_value(p).expect("paths serialize"),
            other => serde_json::json!({ "word": other.to_string() }),
        }
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMember::Air(p) => p.fmt(f),
            FamilyMember::Motzkin(w) => w.fmt(f),
            FamilyMember::Meander(w) => w.fmt(f),
            FamilyMember::Dyck(w) => w.fmt(f),
        }
    }
}

/// Every member of `family` at size `n`, in canonical order. For `MEANDER`,
/// `n` is the half-length.
pub fn enum_family(family: FamilyId, n: usize) -> Vec<FamilyMember> {
    match family {
        FamilyId::Air => wrap_air(air_paths(n)),
        FamilyId::AirInc => wrap_air(nondecreasing_paths(n)),
        FamilyId::Prime => wrap_air(prime_paths(n)),
        FamilyId::ValleysAtZero => wrap_air(valleys_at_zero_paths(n)),
        FamilyId::PeaklessMotzkin
        | FamilyId::ValleylessMotzkin
        | FamilyId::GrandPeakless
        | FamilyId::GrandPeaklessStartd
        | FamilyId::SFamily => motzkin_words(family, n)
            .into_iter()
            .map(FamilyMember::Motzkin)
            .collect(),
        FamilyId::Meander => meanders(n).into_iter().map(FamilyMember::Meander).collect(),
        FamilyId::Dyck => dyck_words(n).into_iter().map(FamilyMember::Dyck).collect(),
    }
}

/// [`enum_family`] guarded by a maximum member count.
pub fn enum_family_limited(
    family: FamilyId,
    n: usize,
    limit: u64,
) -> Result<Vec<FamilyMember>, EnumError> {
    let count = count_family(family, n);
    if count > BigUint::from(limit) {
        return Err(EnumError::LimitExceeded {
            family: family.to_string(),
            n,
            count: count.to_string(),
            limit,
        });
    }
    Ok(enum_family(family, n))
}

fn wrap_air(paths: Vec<AirPocketPath>) -> Vec<FamilyMember> {
    paths.into_iter().map(FamilyMember::Air).collect()
}

fn into_paths(mut raw: Vec<Vec<Step>>) -> Vec<AirPocketPath> {
    raw.par_sort_unstable();
    raw.into_iter().map(AirPocketPath::from_trusted).collect()
}

/// Builds step lists for all lengths up to `n` from the second-to-last
/// return decomposition: `UD`, `beta U D`, a prime path, or `beta gamma`
/// with `gamma` prime.
fn air_grammar(n: usize) -> Vec<Vec<Vec<Step>>> {
    let mut air: Vec<Vec<Vec<Step>>> = vec![Vec::new(); n + 1];
    for m in 2..=n {
        let mut out = Vec::new();
        if m == 2 {
            out.push(vec![Step::Up, Step::Down(1)]);
        }
        if m >= 4 {
            for beta in &air[m - 2] {
                let mut s = beta.clone();
                s.extend([Step::Up, Step::Down(1)]);
                out.push(s);
            }
        }
        if m >= 3 {
            out.extend(air[m - 1].iter().map(|a| elevate_steps(a)));
        }
        for i in 2..m.saturating_sub(2) {
            // gamma is prime of length m - i >= 3
            for gamma_src in &air[m - i - 1] {
                let gamma = elevate_steps(gamma_src);
                for beta in &air[i] {
                    let mut s = beta.clone();
                    s.extend_from_slice(&gamma);
                    out.push(s);
                }
            }
        }
        air[m] = out;
    }
    air
}

/// All air-pocket paths of length `n`.
pub fn air_paths(n: usize) -> Vec<AirPocketPath> {
    if n < 2 {
        return Vec::new();
    }
    let mut table = air_grammar(n);
    into_paths(std::mem::take(&mut table[n]))
}

/// Prime paths of length `n`: elevations of all paths of length `n - 1`.
pub fn prime_paths(n: usize) -> Vec<AirPocketPath> {
    if n < 3 {
        return Vec::new();
    }
    let raw = air_grammar(n - 1)
        .swap_remove(n - 1)
        .iter()
        .map(|a| elevate_steps(a))
        .collect();
    into_paths(raw)
}

fn pyramid(k: usize) -> Vec<Step> {
    let mut s = vec![Step::Up; k];
    s.push(Step::Down(k as u32));
    s
}

/// Non-decreasing paths of length `n`, by first-arch decomposition: an arch
/// (`UD` or an elevated non-decreasing path), or a pyramid `U^k D_k` followed
/// by a nonempty non-decreasing path.
pub fn nondecreasing_paths(n: usize) -> Vec<AirPocketPath> {
    if n < 2 {
        return Vec::new();
    }
    let mut inc: Vec<Vec<Vec<Step>>> = vec![Vec::new(); n + 1];
    for m in 2..=n {
        let mut out = Vec::new();
        if m == 2 {
            out.push(pyramid(1));
        } else {
            out.extend(inc[m - 1].iter().map(|a| elevate_steps(a)));
        }
        for k in 1..m {
            let rest = m - k - 1;
            if rest < 2 {
                continue;
            }
            let head = pyramid(k);
            for beta in &inc[rest] {
                let mut s = head.clone();
                s.extend_from_slice(beta);
                out.push(s);
            }
        }
        inc[m] = out;
    }
    into_paths(std::mem::take(&mut inc[n]))
}

/// Paths whose valleys all lie at height 0: sequences of pyramids.
pub fn valleys_at_zero_paths(n: usize) -> Vec<AirPocketPath> {
    let mut table: Vec<Vec<Vec<Step>>> = vec![Vec::new(); n + 1];
    for m in 2..=n {
        let mut out = vec![pyramid(m - 1)];
        for k in 1..m {
            let rest = m - k - 1;
            if rest < 2 {
                continue;
            }
            let head = pyramid(k);
            for tail in &table[rest] {
                let mut s = head.clone();
                s.extend_from_slice(tail);
                out.push(s);
            }
        }
        table[m] = out;
    }
    if n < 2 {
        return Vec::new();
    }
    into_paths(std::mem::take(&mut table[n]))
}

/// Filtered depth-first generation of all paths of length `n`, already in
/// canonical order.
pub fn air_paths_dfs(n: usize) -> Vec<AirPocketPath> {
    let mut out = Vec::new();
    if n >= 2 {
        let mut buf = Vec::with_capacity(n);
        air_dfs(n, &mut buf, 0, true, &mut out);
    }
    out.into_iter().map(AirPocketPath::from_trusted).collect()
}

/// [`air_paths_dfs`] with the prefix space split across the rayon pool. The
/// result is identical to the sequential generator.
pub fn air_paths_dfs_parallel(n: usize) -> Vec<AirPocketPath> {
    if n < 2 {
        return Vec::new();
    }
    let depth = n.min(8);
    let mut prefixes = Vec::new();
    air_prefixes(n, depth, &mut Vec::new(), 0, true, &mut prefixes);
    prefixes
        .into_par_iter()
        .map(|(prefix, h, last_down)| {
            let mut out = Vec::new();
            let mut buf = prefix;
            air_dfs(n, &mut buf, h, last_down, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .map(AirPocketPath::from_trusted)
        .collect()
}

fn air_feasible(h: i64, last_down: bool, remaining: usize) -> bool {
    match remaining {
        0 => h == 0,
        1 => h > 0 && !last_down,
        _ => true,
    }
}

fn air_children(h: i64, last_down: bool) -> impl Iterator<Item = Step> {
    let downs = if last_down { 0 } else { h.max(0) as u32 };
    std::iter::once(Step::Up).chain((1..=downs).map(Step::Down))
}

fn air_dfs(
    n: usize,
    buf: &mut Vec<Step>,
    h: i64,
    last_down: bool,
    out: &mut Vec<Vec<Step>>,
) {
    if buf.len() == n {
        if h == 0 {
            out.push(buf.clone());
        }
        return;
    }
    for step in air_children(h, last_down) {
        let nh = h + step.delta();
        if !air_feasible(nh, step.is_down(), n - buf.len() - 1) {
            continue;
        }
        buf.push(step);
        air_dfs(n, buf, nh, step.is_down(), out);
        buf.pop();
    }
}

fn air_prefixes(
    n: usize,
    depth: usize,
    buf: &mut Vec<Step>,
    h: i64,
    last_down: bool,
    out: &mut Vec<(Vec<Step>, i64, bool)>,
) {
    if buf.len() == depth {
        out.push((buf.clone(), h, last_down));
        return;
    }
    for step in air_children(h, last_down) {
        let nh = h + step.delta();
        if !air_feasible(nh, step.is_down(), n - buf.len() - 1) {
            continue;
        }
        buf.push(step);
        air_prefixes(n, depth, buf, nh, step.is_down(), out);
        buf.pop();
    }
}

/// All air-pocket paths with exactly `ups` up steps, of any length. There are
/// `Catalan(ups)` of them.
pub fn air_paths_by_ups(ups: usize) -> Vec<AirPocketPath> {
    fn rec(
        ups: usize,
        used: usize,
        buf: &mut Vec<Step>,
        h: i64,
        last_down: bool,
        out: &mut Vec<Vec<Step>>,
    ) {
        if used == ups {
            if h > 0 && !last_down {
                buf.push(Step::Down(h as u32));
                out.push(buf.clone());
                buf.pop();
            }
            return;
        }
        buf.push(Step::Up);
        rec(ups, used + 1, buf, h + 1, false, out);
        buf.pop();
        if !last_down {
            for k in 1..=h {
                buf.push(Step::Down(k as u32));
                rec(ups, used, buf, h - k, true, out);
                buf.pop();
            }
        }
    }
    let mut out = Vec::new();
    if ups > 0 {
        rec(ups, 0, &mut Vec::new(), 0, true, &mut out);
    }
    out.sort();
    out.into_iter().map(AirPocketPath::from_trusted).collect()
}

#[derive(Clone, Copy)]
struct MotzkinRules {
    nonnegative: bool,
    forbid: (MotzkinStep, MotzkinStep),
    first_down: bool,
}

fn motzkin_rules(family: FamilyId) -> MotzkinRules {
    use MotzkinStep::{Down, Up};
    match family {
        FamilyId::PeaklessMotzkin => MotzkinRules {
            nonnegative: true,
            forbid: (Up, Down),
            first_down: false,
        },
        FamilyId::ValleylessMotzkin => MotzkinRules {
            nonnegative: true,
            forbid: (Down, Up),
            first_down: false,
        },
        FamilyId::GrandPeakless | FamilyId::SFamily => MotzkinRules {
            nonnegative: false,
            forbid: (Up, Down),
            first_down: false,
        },
        FamilyId::GrandPeaklessStartd => MotzkinRules {
            nonnegative: false,
            forbid: (Up, Down),
            first_down: true,
        },
        other => panic!("{other} is not a Motzkin family"),
    }
}

/// Members of a Motzkin-type family of length `n`.
///
/// `PEAKLESS_MOTZKIN`, `GRAND_PEAKLESS_STARTD` and `S_FAMILY` have no member
/// of length 0; `VALLEYLESS_MOTZKIN` and `GRAND_PEAKLESS` contain the empty
/// word.
pub fn motzkin_words(family: FamilyId, n: usize) -> Vec<MotzkinWord> {
    let mode = match family {
        FamilyId::PeaklessMotzkin | FamilyId::ValleylessMotzkin => MotzkinMode::Motzkin,
        _ => MotzkinMode::Grand,
    };
    let mut out: Vec<Vec<MotzkinStep>> = Vec::new();
    if family == FamilyId::SFamily {
        if n == 0 {
            return Vec::new();
        }
        // k = 0 part: grand peakless words starting with D.
        let mut words = Vec::new();
        motzkin_dfs(
            n,
            motzkin_rules(FamilyId::GrandPeaklessStartd),
            &mut Vec::new(),
            0,
            &mut words,
        );
        out.extend(words);
        // W^k followed by any grand peakless word, k >= 1. In the order
        // U < D < F < W a longer wavy prefix sorts later.
        for k in 1..=n {
            let mut tails = Vec::new();
            motzkin_dfs(
                n - k,
                motzkin_rules(FamilyId::GrandPeakless),
                &mut Vec::new(),
                0,
                &mut tails,
            );
            for tail in tails {
                let mut s = vec![MotzkinStep::WavyFlat; k];
                s.extend(tail);
                out.push(s);
            }
        }
        out.sort();
    } else {
        if n == 0 && matches!(family, FamilyId::PeaklessMotzkin | FamilyId::GrandPeaklessStartd)
        {
            return Vec::new();
        }
        motzkin_dfs(n, motzkin_rules(family), &mut Vec::new(), 0, &mut out);
    }
    out.into_iter()
        .map(|s| MotzkinWord::from_trusted(s, mode))
        .collect()
}

fn motzkin_dfs(
    n: usize,
    rules: MotzkinRules,
    buf: &mut Vec<MotzkinStep>,
    h: i64,
    out: &mut Vec<Vec<MotzkinStep>>,
) {
    if buf.len() == n {
        if h == 0 {
            out.push(buf.clone());
        }
        return;
    }
    let remaining = (n - buf.len() - 1) as i64;
    for step in [MotzkinStep::Up, MotzkinStep::Down, MotzkinStep::Flat] {
        if buf.is_empty() && rules.first_down && step != MotzkinStep::Down {
            continue;
        }
        if buf.last() == Some(&rules.forbid.0) && step == rules.forbid.1 {
            continue;
        }
        let nh = h + step.delta();
        if (rules.nonnegative && nh < 0) || nh.abs() > remaining {
            continue;
        }
        buf.push(step);
        motzkin_dfs(n, rules, buf, nh, out);
        buf.pop();
    }
}

/// Meander words with `2n` letters, generated pair by pair. A word is valid
/// when its letters obey the run rules and its pair coding returns to height
/// 0; the run rules already force the coding to be peakless with wavy flats
/// only in front.
pub fn meanders(n: usize) -> Vec<MeanderWord> {
    fn rec(
        n: usize,
        buf: &mut Vec<Arc>,
        h: i64,
        all_l: bool,
        out: &mut Vec<Vec<Arc>>,
    ) {
        if buf.len() == 2 * n {
            if h == 0 {
                out.push(buf.clone());
            }
            return;
        }
        let remaining = (n - buf.len() / 2 - 1) as i64;
        for pair in [[Arc::L, Arc::L], [Arc::L, Arc::R], [Arc::R, Arc::L], [Arc::R, Arc::R]] {
            if buf.is_empty() && pair[0] != Arc::L {
                continue;
            }
            if pair == [Arc::L, Arc::L] && !all_l {
                continue;
            }
            if buf.last() == Some(&Arc::L) && pair[0] == Arc::L && !all_l {
                continue;
            }
            let nh = h + match pair {
                [Arc::R, Arc::L] => 1,
                [Arc::L, Arc::R] => -1,
                _ => 0,
            };
            if nh.abs() > remaining {
                continue;
            }
            buf.extend(pair);
            let still = all_l && pair == [Arc::L, Arc::L];
            rec(n, buf, nh, still, out);
            buf.truncate(buf.len() - 2);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), 0, true, &mut out);
    }
    out.into_iter().map(MeanderWord::from_trusted).collect()
}

/// Classical Dyck words of length `n` (empty unless `n` is even).
pub fn dyck_words(n: usize) -> Vec<DyckWord> {
    fn rec(n: usize, buf: &mut Vec<DyckStep>, h: usize, out: &mut Vec<Vec<DyckStep>>) {
        if buf.len() == n {
            out.push(buf.clone());
            return;
        }
        let remaining = n - buf.len() - 1;
        if h < remaining {
            buf.push(DyckStep::Up);
            rec(n, buf, h + 1, out);
            buf.pop();
        }
        if h > 0 && h - 1 <= remaining {
            buf.push(DyckStep::Down);
            rec(n, buf, h - 1, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        rec(n, &mut Vec::new(), 0, &mut out);
    }
    out.into_iter().map(DyckWord::from_trusted).collect()
}

/// Number of members of `family` at size `n`, by transfer counting rather
/// than generation. Tests check it against the length of [`enum_family`].
pub fn count_family(family: FamilyId, n: usize) -> BigUint {
    match family {
        FamilyId::Air => count_air(n),
        FamilyId::Prime => {
            if n >= 3 {
                count_air(n - 1)
            } else {
                BigUint::zero()
            }
        }
        FamilyId::AirInc => {
            let mut inc = vec![BigUint::zero(); n + 1];
            for m in 2..=n {
                let mut c = if m == 2 { BigUint::one() } else { inc[m - 1].clone() };
                for k in 1..m {
                    if m - k - 1 >= 2 {
                        c += &inc[m - k - 1];
                    }
                }
                inc[m] = c;
            }
            inc[n].clone()
        }
        FamilyId::ValleysAtZero => {
            let mut v = vec![BigUint::zero(); n + 1];
            for m in 2..=n {
                let mut c = BigUint::one();
                for k in 1..m {
                    if m - k - 1 >= 2 {
                        c += &v[m - k - 1];
                    }
                }
                v[m] = c;
            }
            v[n].clone()
        }
        FamilyId::PeaklessMotzkin => {
            if n == 0 {
                BigUint::zero()
            } else {
                count_motzkin(n, motzkin_rules(family))
            }
        }
        FamilyId::ValleylessMotzkin | FamilyId::GrandPeakless => {
            count_motzkin(n, motzkin_rules(family))
        }
        FamilyId::GrandPeaklessStartd => {
            if n == 0 {
                BigUint::zero()
            } else {
                count_motzkin(n, motzkin_rules(family))
            }
        }
        FamilyId::SFamily | FamilyId::Meander => {
            if n == 0 {
                return BigUint::zero();
            }
            let mut total = count_family(FamilyId::GrandPeaklessStartd, n);
            for k in 1..=n {
                total += count_family(FamilyId::GrandPeakless, n - k);
            }
            total
        }
        FamilyId::Dyck => {
            if n % 2 == 1 {
                BigUint::zero()
            } else {
                crate::closedforms::catalan(n / 2)
            }
        }
    }
}

fn count_air(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::zero();
    }
    // ways[h][last_down]
    let mut ways = vec![[BigUint::zero(), BigUint::zero()]; n + 2];
    ways[0][1] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![[BigUint::zero(), BigUint::zero()]; n + 2];
        for h in 0..=n {
            for ld in 0..2 {
                let c = &ways[h][ld];
                if c.is_zero() {
                    continue;
                }
                next[h + 1][0] += c;
                if ld == 0 {
                    for k in 1..=h {
                        next[h - k][1] += c;
                    }
                }
            }
        }
        ways = next;
    }
    ways[0][1].clone()
}

fn count_motzkin(n: usize, rules: MotzkinRules) -> BigUint {
    // Heights are offset by n; state index = last step (0 none, 1 U, 2 D, 3 F).
    let width = 2 * n + 1;
    let off = n as i64;
    let mut ways = vec![[BigUint::zero(), BigUint::zero(), BigUint::zero(), BigUint::zero()]; width];
    ways[n][0] = BigUint::one();
    let steps = [MotzkinStep::Up, MotzkinStep::Down, MotzkinStep::Flat];
    for pos in 0..n {
        let mut next =
            vec![[BigUint::zero(), BigUint::zero(), BigUint::zero(), BigUint::zero()]; width];
        for (hi, row) in ways.iter().enumerate() {
            for (last, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (si, &step) in steps.iter().enumerate() {
                    if pos == 0 && rules.first_down && step != MotzkinStep::Down {
                        continue;
                    }
                    if last > 0 && steps[last - 1] == rules.forbid.0 && step == rules.forbid.1 {
                        continue;
                    }
                    let nh = hi as i64 - off + step.delta();
                    if (rules.nonnegative && nh < 0) || nh.abs() > off {
                        continue;
                    }
                    next[(nh + off) as usize][si + 1] += c;
                }
            }
        }
        ways = next;
    }
    ways[n].iter().sum()
}

/// `count_family` as a `u64`, for small sizes.
pub fn count_family_u64(family: FamilyId, n: usize) -> u64 {
    count_family(family, n)
        .to_u64()
        .expect("count fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(family: FamilyId, n: usize) -> Vec<String> {
        enum_family(family, n).iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn small_air() {
        assert_eq!(texts(FamilyId::Air, 2), vec!["UD"]);
        assert_eq!(enum_family(FamilyId::Air, 5).len(), 4);
        assert_eq!(enum_family(FamilyId::Air, 1).len(), 0);
        assert_eq!(texts(FamilyId::Air, 4), vec!["UUUD3", "UDUD"]);
    }

    #[test]
    fn air_sequence() {
        let expected = [1u64, 1, 2, 4, 8, 17, 37, 82, 185];
        for (i, &e) in expected.iter().enumerate() {
            let n = i + 2;
            assert_eq!(air_paths(n).len() as u64, e, "n={n}");
            assert_eq!(count_family_u64(FamilyId::Air, n), e);
        }
    }

    #[test]
    fn grammar_matches_dfs() {
        for n in 0..=12 {
            let dfs = air_paths_dfs(n);
            assert_eq!(air_paths(n), dfs, "n={n}");
            assert_eq!(air_paths_dfs_parallel(n), dfs, "n={n}");
        }
    }

    #[test]
    fn meanders_of_four_letters() {
        assert_eq!(texts(FamilyId::Meander, 2), vec!["LLLL", "LLRR", "LRRL"]);
        assert_eq!(texts(FamilyId::Meander, 1), vec!["LL"]);
    }

    #[test]
    fn family_counts() {
        assert_eq!(count_family_u64(FamilyId::Air, 7), 17);
        assert_eq!(count_family_u64(FamilyId::AirInc, 8), 32);
        assert_eq!(count_family_u64(FamilyId::ValleysAtZero, 6), 5);
        let s: Vec<u64> = (0..=8).map(|n| count_family_u64(FamilyId::SFamily, n)).collect();
        assert_eq!(s, vec![0, 1, 3, 6, 13, 30, 70, 167, 405]);
        let g: Vec<u64> = (0..=8)
            .map(|n| count_family_u64(FamilyId::GrandPeakless, n))
            .collect();
        assert_eq!(g, vec![1, 1, 2, 5, 11, 26, 63, 153, 376]);
        let nn: Vec<u64> = (0..=8)
            .map(|n| count_family_u64(FamilyId::GrandPeaklessStartd, n))
            .collect();
        assert_eq!(nn, vec![0, 0, 1, 2, 4, 10, 24, 58, 143]);
    }

    #[test]
    fn counts_match_streams() {
        for family in FamilyId::ALL {
            for n in 0..=9 {
                assert_eq!(
                    count_family_u64(family, n),
                    enum_family(family, n).len() as u64,
                    "{family} n={n}"
                );
            }
        }
    }

    #[test]
    fn streams_are_sorted_and_valid() {
        for family in FamilyId::ALL {
            for n in 0..=8 {
                let members = enum_family(family, n);
                assert!(members.windows(2).all(|w| w[0] < w[1]), "{family} n={n}");
            }
        }
    }

    #[test]
    fn ups_grading_small() {
        let counts: Vec<usize> = (1..=6).map(|u| air_paths_by_ups(u).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn limit() {
        assert!(enum_family_limited(FamilyId::Air, 10, 185).is_ok());
        assert!(matches!(
            enum_family_limited(FamilyId::Air, 11, 185),
            Err(EnumError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn family_tags_round_trip() {
        for family in FamilyId::ALL {
            assert_eq!(family.tag().parse::<FamilyId>().unwrap(), family);
        }
        assert!("nope".parse::<FamilyId>().is_err());
    }
}
