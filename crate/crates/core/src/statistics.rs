//! Pattern statistics on air-pocket paths and on Motzkin-type words,
//! distributions over whole families, and popularities.
//!
//! Patterns are contiguous factors and overlapping occurrences all count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{enum_family, FamilyId, FamilyMember};
use crate::error::StatError;
use crate::path::{AirPocketPath, MotzkinStep, MotzkinWord, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatId {
    UCount,
    D1Count,
    DuCount,
    UuCount,
    Delta(u32),
    DeltaGe(u32),
    DeltaLe(u32),
    Peak,
    Ret,
    Cat,
    SLast,
    MF,
    MU,
    MUfd,
    MU2md2,
    MIndF,
    MIndUmd,
    MIndFk(u32),
    MUfkd(u32),
    MIndFk1umd(u32),
    MUfk1umd2(u32),
    MLastF,
    MRet,
}

const PLAIN: [(StatId, &str); 17] = [
    (StatId::UCount, "U_COUNT"),
    (StatId::D1Count, "D1_COUNT"),
    (StatId::DuCount, "DU_COUNT"),
    (StatId::UuCount, "UU_COUNT"),
    (StatId::Peak, "PEAK"),
    (StatId::Ret, "RET"),
    (StatId::Cat, "CAT"),
    (StatId::SLast, "SLAST"),
    (StatId::MF, "M_F"),
    (StatId::MU, "M_U"),
    (StatId::MUfd, "M_UFD"),
    (StatId::MU2md2, "M_U2MD2"),
    (StatId::MIndF, "M_IND_F"),
    (StatId::MIndUmd, "M_IND_UMD"),
    (StatId::MLastF, "M_LASTF"),
    (StatId::MRet, "M_RET"),
    (StatId::UCount, "U"),
];

const PARAMETERIZED: [&str; 7] = [
    "DELTA",
    "DELTA_GE",
    "DELTA_LE",
    "M_IND_FK",
    "M_UFKD",
    "M_IND_FK1UMD",
    "M_UFK1UMD2",
];

impl StatId {
    fn with_param(name: &str, k: u32) -> Option<StatId> {
        Some(match name {
            "DELTA" => StatId::Delta(k),
            "DELTA_GE" => StatId::DeltaGe(k),
            "DELTA_LE" => StatId::DeltaLe(k),
            "M_IND_FK" => StatId::MIndFk(k),
            "M_UFKD" => StatId::MUfkd(k),
            "M_IND_FK1UMD" => StatId::MIndFk1umd(k),
            "M_UFK1UMD2" => StatId::MUfk1umd2(k),
            _ => return None,
        })
    }

    pub fn param(self) -> Option<u32> {
        match self {
            StatId::Delta(k)
            | StatId::DeltaGe(k)
            | StatId::DeltaLe(k)
            | StatId::MIndFk(k)
            | StatId::MUfkd(k)
            | StatId::MIndFk1umd(k)
            | StatId::MUfk1umd2(k) => Some(k),
            _ => None,
        }
    }

    /// True for statistics read on air-pocket paths.
    pub fn is_air(self) -> bool {
        matches!(
            self,
            StatId::UCount
                | StatId::D1Count
                | StatId::DuCount
                | StatId::UuCount
                | StatId::Delta(_)
                | StatId::DeltaGe(_)
                | StatId::DeltaLe(_)
                | StatId::Peak
                | StatId::Ret
                | StatId::Cat
                | StatId::SLast
        )
    }
}

impl fmt::Display for StatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self {
            StatId::Delta(_) => "DELTA",
            StatId::DeltaGe(_) => "DELTA_GE",
            StatId::DeltaLe(_) => "DELTA_LE",
            StatId::MIndFk(_) => "M_IND_Fk",
            StatId::MUfkd(_) => "M_UFkD",
            StatId::MIndFk1umd(_) => "M_IND_Fk1UMD",
            StatId::MUfk1umd2(_) => "M_UFk1UMD2",
            plain => {
                let name = PLAIN.iter().find(|(s, _)| s == plain).map(|(_, n)| *n);
                return f.write_str(name.expect("every plain stat has a name"));
            }
        };
        write!(f, "{base}({})", self.param().expect("parameterized"))
    }
}

impl FromStr for StatId {
    type Err = StatError;

    /// Accepts `PEAK`, `DELTA(2)`, `DELTA_GE(3)`, case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim().to_ascii_uppercase();
        if let Some(open) = text.find('(') {
            let name = &text[..open];
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| StatError::Unknown(s.to_string()))?;
            let k: u32 = inner
                .trim()
                .parse()
                .map_err(|_| StatError::Unknown(s.to_string()))?;
            if k == 0 {
                return Err(StatError::BadParameter(0));
            }
            return StatId::with_param(name, k).ok_or_else(|| StatError::Unknown(s.to_string()));
        }
        if PARAMETERIZED.contains(&text.as_str()) {
            return Err(StatError::Unknown(format!("{s} needs a parameter, e.g. {s}(1)")));
        }
        PLAIN
            .iter()
            .find(|(_, n)| *n == text)
            .map(|(id, _)| *id)
            .ok_or_else(|| StatError::Unknown(s.to_string()))
    }
}

impl Serialize for StatId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StatId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn delta_count(steps: &[Step], k: u32) -> u64 {
    let k = k as usize;
    steps
        .iter()
        .enumerate()
        .filter(|&(i, &s)| {
            s == Step::Down(k as u32) && i >= k && steps[i - k..i].iter().all(|&u| u == Step::Up)
        })
        .count() as u64
}

/// Value of an air-pocket statistic.
pub fn air_stat(path: &AirPocketPath, s: StatId) -> Result<u64, StatError> {
    let steps = path.steps();
    let pairs = || steps.windows(2);
    let returns = |min_k: u32| {
        let heights = path.heights();
        steps
            .iter()
            .zip(&heights)
            .filter(|(s, h)| matches!(s, Step::Down(k) if *k >= min_k) && **h == 0)
            .count() as u64
    };
    Ok(match s {
        StatId::UCount => path.up_count() as u64,
        StatId::D1Count => steps.iter().filter(|&&s| s == Step::Down(1)).count() as u64,
        StatId::DuCount => pairs()
            .filter(|w| w[0] == Step::Down(1) && w[1] == Step::Up)
            .count() as u64,
        StatId::UuCount => pairs().filter(|w| w == &[Step::Up, Step::Up]).count() as u64,
        StatId::Delta(k) => delta_count(steps, k),
        StatId::DeltaGe(k) => {
            let max = steps.len() as u32;
            (k..=max).map(|j| delta_count(steps, j)).sum()
        }
        StatId::DeltaLe(k) => (1..=k).map(|j| delta_count(steps, j)).sum(),
        StatId::Peak => pairs().filter(|w| w[0] == Step::Up && w[1].is_down()).count() as u64,
        StatId::Ret => returns(1),
        StatId::Cat => returns(2),
        StatId::SLast => match path.last_step() {
            Step::Down(k) => u64::from(k),
            Step::Up => unreachable!("paths end with a down step"),
        },
        other => {
            return Err(StatError::TypeMismatch {
                stat: other.to_string(),
                object: "an air-pocket path".into(),
            })
        }
    })
}

/// True iff `steps` is a nonempty Motzkin path (relative to its own start)
/// with no `UD` factor.
fn is_peakless_motzkin(steps: &[MotzkinStep]) -> bool {
    use MotzkinStep::*;
    if steps.is_empty() {
        return false;
    }
    let mut h = 0i64;
    for (i, &s) in steps.iter().enumerate() {
        if s == WavyFlat || (i > 0 && steps[i - 1] == Up && s == Down) {
            return false;
        }
        h += s.delta();
        if h < 0 {
            return false;
        }
    }
    h == 0
}

/// Counts factors `prefix . beta . suffix` where `beta` is a nonempty peakless
/// Motzkin word, by scanning every start and growing `beta` with a running
/// validity check.
fn count_wrapped(steps: &[MotzkinStep], prefix: &[MotzkinStep], suffix: &[MotzkinStep]) -> u64 {
    use MotzkinStep::*;
    let n = steps.len();
    let mut count = 0;
    for start in 0..n {
        if !steps[start..].starts_with(prefix) {
            continue;
        }
        let body = start + prefix.len();
        let mut h = 0i64;
        let mut ok = true;
        for end in body..n {
            let s = steps[end];
            if s == WavyFlat || (end > body && steps[end - 1] == Up && s == Down) {
                ok = false;
            }
            h += s.delta();
            if h < 0 || !ok {
                break;
            }
            if h == 0 && steps[end + 1..].starts_with(suffix) {
                count += 1;
            }
        }
    }
    count
}

fn is_exactly_wrapped(steps: &[MotzkinStep], prefix: &[MotzkinStep], suffix: &[MotzkinStep]) -> bool {
    steps.len() > prefix.len() + suffix.len()
        && steps.starts_with(prefix)
        && steps.ends_with(suffix)
        && is_peakless_motzkin(&steps[prefix.len()..steps.len() - suffix.len()])
}

fn count_factor(steps: &[MotzkinStep], pattern: &[MotzkinStep]) -> u64 {
    if pattern.is_empty() || steps.len() < pattern.len() {
        return 0;
    }
    steps.windows(pattern.len()).filter(|w| *w == pattern).count() as u64
}

fn flats(k: u32) -> Vec<MotzkinStep> {
    vec![MotzkinStep::Flat; k as usize]
}

/// Value of a Motzkin-side statistic.
pub fn motzkin_stat(word: &MotzkinWord, s: StatId) -> Result<u64, StatError> {
    use MotzkinStep::{Down as D, Flat as F, Up as U};
    let m = word.steps();
    let ind = |b: bool| u64::from(b);
    Ok(match s {
        StatId::MF => m.iter().filter(|&&x| x == F).count() as u64,
        StatId::MU => m.iter().filter(|&&x| x == U).count() as u64,
        StatId::MUfd => count_factor(m, &[U, F, D]),
        StatId::MU2md2 => count_wrapped(m, &[U, U], &[D, D]),
        StatId::MIndF => ind(m == [F]),
        StatId::MIndUmd => ind(is_exactly_wrapped(m, &[U], &[D])),
        StatId::MIndFk(k) => ind(m == flats(k).as_slice()),
        StatId::MUfkd(k) => {
            let mut pat = vec![U];
            pat.extend(flats(k));
            pat.push(D);
            count_factor(m, &pat)
        }
        StatId::MIndFk1umd(k) => {
            let mut pre = flats(k - 1);
            pre.push(U);
            ind(is_exactly_wrapped(m, &pre, &[D]))
        }
        StatId::MUfk1umd2(k) => {
            let mut pre = vec![U];
            pre.extend(flats(k - 1));
            pre.push(U);
            count_wrapped(m, &pre, &[D, D])
        }
        StatId::MLastF => m.iter().rposition(|&x| x == F).map_or(0, |i| i as u64 + 1),
        StatId::MRet => word.heights().iter().filter(|&&h| h == 0).count() as u64,
        other => {
            return Err(StatError::TypeMismatch {
                stat: other.to_string(),
                object: "a Motzkin word".into(),
            })
        }
    })
}

/// Value of `s` on a family member; air statistics need a path and `M_*`
/// statistics a Motzkin word.
pub fn stat(object: &FamilyMember, s: StatId) -> Result<u64, StatError> {
    match object {
        FamilyMember::Air(p) => air_stat(p, s),
        FamilyMember::Motzkin(w) => motzkin_stat(w, s),
        other => Err(StatError::TypeMismatch {
            stat: s.to_string(),
            object: format!("word {other}"),
        }),
    }
}

/// Exact counts of statistic values over one family at one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub family: FamilyId,
    pub n: usize,
    pub stat: StatId,
    pub entries: BTreeMap<u64, BigUint>,
}

impl Histogram {
    pub fn get(&self, value: u64) -> BigUint {
        self.entries.get(&value).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Sum of value times count.
    pub fn weighted_total(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(v, c)| c * BigUint::from(*v))
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct HistogramJson {
    family: FamilyId,
    n: usize,
    stat: StatId,
    entries: BTreeMap<String, String>,
}

impl Serialize for Histogram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HistogramJson {
            family: self.family,
            n: self.n,
            stat: self.stat,
            entries: self
                .entries
                .iter()
                .map(|(v, c)| (v.to_string(), c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Histogram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = HistogramJson::deserialize(deserializer)?;
        let mut entries = BTreeMap::new();
        for (v, c) in raw.entries {
            let v: u64 = v.parse().map_err(D::Error::custom)?;
            let c: BigUint = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("histogram counts must be positive"));
            }
            entries.insert(v, c);
        }
        Ok(Histogram {
            family: raw.family,
            n: raw.n,
            stat: raw.stat,
            entries,
        })
    }
}

fn check_side(family: FamilyId, s: StatId) -> Result<(), StatError> {
    let ok = (family.is_air() && s.is_air()) || (family.is_motzkin() && !s.is_air());
    if ok {
        Ok(())
    } else {
        Err(StatError::TypeMismatch {
            stat: s.to_string(),
            object: format!("family {family}"),
        })
    }
}

/// Histogram of `s` over `family` at size `n`, accumulated in parallel.
pub fn distribution(family: FamilyId, n: usize, s: StatId) -> Result<Histogram, StatError> {
    check_side(family, s)?;
    let members = enum_family(family, n);
    distribution_of(family, n, s, &members)
}

/// Histogram of `s` over an already generated member list.
pub fn distribution_of(
    family: FamilyId,
    n: usize,
    s: StatId,
    members: &[FamilyMember],
) -> Result<Histogram, StatError> {
    let counts = members
        .par_iter()
        .try_fold(BTreeMap::<u64, u64>::new, |mut acc, m| {
            *acc.entry(stat(m, s)?).or_default() += 1;
            Ok::<_, StatError>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            Ok(a)
        })?;
    Ok(Histogram {
        family,
        n,
        stat: s,
        entries: counts
            .into_iter()
            .map(|(k, v)| (k, BigUint::from(v)))
            .collect(),
    })
}

/// Total number of occurrences of `s` over the family.
pub fn popularity(family: FamilyId, n: usize, s: StatId) -> Result<BigUint, StatError> {
    Ok(distribution(family, n, s)?.weighted_total())
}

/// One side-by-side comparison of a path statistic with the matching
/// combination of statistics on its peakless Motzkin image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transport {
    pub name: String,
    pub path_side: i64,
    pub motzkin_side: i64,
}

impl Transport {
    pub fn holds(&self) -> bool {
        self.path_side == self.motzkin_side
    }
}

/// The statistic transports through `psi`, with pyramids of size `1..=kmax`.
pub fn transported(path: &AirPocketPath, kmax: u32) -> Vec<Transport> {
    let m = crate::bijections::psi(path);
    let a = |s| air_stat(path, s).expect("air statistic") as i64;
    let w = |s| motzkin_stat(&m, s).expect("Motzkin statistic") as i64;
    let t = |name: &str, path_side, motzkin_side| Transport {
        name: name.to_string(),
        path_side,
        motzkin_side,
    };
    let mut out = vec![
        t("U = F + U", a(StatId::UCount), w(StatId::MF) + w(StatId::MU)),
        t(
            "D1 = 1_F + UFD + 1_UMD + UUMDD",
            a(StatId::D1Count),
            w(StatId::MIndF) + w(StatId::MUfd) + w(StatId::MIndUmd) + w(StatId::MU2md2),
        ),
        t("DU = UFD + UUMDD", a(StatId::DuCount), w(StatId::MUfd) + w(StatId::MU2md2)),
        t("UU = F - 1", a(StatId::UuCount), w(StatId::MF) - 1),
        t("Peak = U + 1", a(StatId::Peak), w(StatId::MU) + 1),
        t("Ret = n - LastF", a(StatId::Ret), path.len() as i64 - w(StatId::MLastF)),
        t("SLast = Ret", a(StatId::SLast), w(StatId::MRet)),
    ];
    for k in 1..=kmax {
        out.push(t(
            &format!("Delta_{k} = 1_F^k + UF^kD + 1_F^(k-1)UMD + UF^(k-1)UMDD"),
            a(StatId::Delta(k)),
            w(StatId::MIndFk(k))
                + w(StatId::MUfkd(k))
                + w(StatId::MIndFk1umd(k))
                + w(StatId::MUfk1umd2(k)),
        ));
    }
    out
}
