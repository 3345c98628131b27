//! Path and word types with eager validation.
//!
//! An [`AirPocketPath`] is a nonempty lattice path from the origin back to the
//! x-axis that never goes below it, built from up steps `U = (1, 1)` and down
//! steps `D_k = (1, -k)` with `k >= 1`, where two down steps are never
//! adjacent. The text form writes `D_1` as `D` and `D_k` as `Dk`, so
//! `UUUD2UD2UD` is an eight-step path.
//!
//! The same module holds the Motzkin-type words used as bijective images, the
//! meander words over `{L, R}` and classical Dyck words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bijections;
use crate::error::PathError;

/// A single step of an air-pocket path.
///
/// The derived order is `Up < Down(1) < Down(2) < ...`, which is the order
/// used for canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down(u32),
}

impl Step {
    /// Height change produced by the step.
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down(k) => -i64::from(k),
        }
    }

    pub fn is_down(self) -> bool {
        matches!(self, Step::Down(_))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Up => f.write_str("U"),
            Step::Down(1) => f.write_str("D"),
            Step::Down(k) => write!(f, "D{k}"),
        }
    }
}

/// Prefix heights after each step.
///
/// Works on any step sequence, valid or not.
pub fn height_profile(steps: &[Step]) -> Vec<i64> {
    steps
        .iter()
        .scan(0i64, |h, s| {
            *h += s.delta();
            Some(*h)
        })
        .collect()
}

/// A validated Dyck path with air pockets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AirPocketPath {
    steps: Vec<Step>,
}

impl AirPocketPath {
    /// Validates `steps` and wraps them.
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        validate_air_steps(&steps)?;
        Ok(Self { steps })
    }

    /// Wraps steps produced by a generator that already guarantees validity.
    pub(crate) fn from_trusted(steps: Vec<Step>) -> Self {
        debug_assert!(validate_air_steps(&steps).is_ok(), "invalid steps {steps:?}");
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn heights(&self) -> Vec<i64> {
        height_profile(&self.steps)
    }

    pub fn last_step(&self) -> Step {
        *self.steps.last().expect("paths are nonempty")
    }

    /// True iff the path ends with `D_k`, `k >= 2`, and touches the x-axis only
    /// at its end.
    pub fn is_prime(&self) -> bool {
        if !matches!(self.last_step(), Step::Down(k) if k >= 2) {
            return false;
        }
        self.heights().iter().filter(|&&h| h == 0).count() == 1
    }

    /// Heights of the lattice points between each adjacent pair `D_k U`.
    pub fn valley_heights(&self) -> ValleyProfile {
        let heights = self.heights();
        let valleys = self
            .steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].is_down() && w[1] == Step::Up)
            .map(|(i, _)| u32::try_from(heights[i]).expect("heights are nonnegative"))
            .collect();
        ValleyProfile(valleys)
    }

    /// True iff the valley heights never decrease from left to right.
    pub fn is_nondecreasing(&self) -> bool {
        self.valley_heights().is_nondecreasing()
    }

    /// Number of `Up` steps.
    pub fn up_count(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Up).count()
    }
}

impl fmt::Display for AirPocketPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| s.fmt(f))
    }
}

impl FromStr for AirPocketPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_path(s)
    }
}

#[derive(Serialize, Deserialize)]
struct StepsJson {
    steps: Vec<String>,
}

impl Serialize for AirPocketPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        StepsJson {
            steps: self.steps.iter().map(Step::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AirPocketPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = StepsJson::deserialize(deserializer)?;
        parse_path(&raw.steps.concat()).map_err(serde::de::Error::custom)
    }
}

fn validate_air_steps(steps: &[Step]) -> Result<(), PathError> {
    if steps.is_empty() {
        return Err(PathError::Empty);
    }
    let mut height = 0i64;
    let mut prev_down = false;
    for (i, &step) in steps.iter().enumerate() {
        if step == Step::Down(0) {
            return Err(PathError::ZeroSubscript { position: i + 1 });
        }
        if prev_down && step.is_down() {
            return Err(PathError::ConsecutiveDowns { position: i + 1 });
        }
        height += step.delta();
        if height < 0 {
            return Err(PathError::NegativeHeight { position: i + 1 });
        }
        prev_down = step.is_down();
    }
    if height != 0 {
        return Err(PathError::NonzeroFinalHeight { height });
    }
    Ok(())
}

/// Tokenizes the step grammar `('U' | 'D' digits?)+` without validating the
/// path invariants.
pub fn parse_steps(text: &str) -> Result<Vec<Step>, PathError> {
    let bytes = text.as_bytes();
    let mut steps = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'U' => {
                steps.push(Step::Up);
                i += 1;
            }
            b'D' => {
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let k = if end == start {
                    1
                } else {
                    text[start..end].parse::<u32>().map_err(|_| PathError::Syntax {
                        position: i + 1,
                        message: format!("bad subscript {:?}", &text[start..end]),
                    })?
                };
                if k == 0 {
                    return Err(PathError::ZeroSubscript {
                        position: steps.len() + 1,
                    });
                }
                steps.push(Step::Down(k));
                i = end;
            }
            other => {
                return Err(PathError::Syntax {
                    position: i + 1,
                    message: format!("unexpected character {:?}", char::from(other)),
                })
            }
        }
    }
    Ok(steps)
}

/// Parses and validates an air-pocket path such as `"UUUD2UD2UD"`.
pub fn parse_path(text: &str) -> Result<AirPocketPath, PathError> {
    AirPocketPath::new(parse_steps(text.trim())?)
}

/// Canonical text of a path; inverse of [`parse_path`].
pub fn format_path(path: &AirPocketPath) -> String {
    path.to_string()
}

/// Heights of the valleys of a path, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValleyProfile(pub Vec<u32>);

impl ValleyProfile {
    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(|&h| h == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Step of a Motzkin-type word. Wavy flats only appear in grand words, as a
/// prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotzkinStep {
    Up,
    Down,
    Flat,
    WavyFlat,
}

impl MotzkinStep {
    pub fn delta(self) -> i64 {
        match self {
            MotzkinStep::Up => 1,
            MotzkinStep::Down => -1,
            MotzkinStep::Flat | MotzkinStep::WavyFlat => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            MotzkinStep::Up => 'U',
            MotzkinStep::Down => 'D',
            MotzkinStep::Flat => 'F',
            MotzkinStep::WavyFlat => 'W',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            'U' => Some(MotzkinStep::Up),
            'D' => Some(MotzkinStep::Down),
            'F' => Some(MotzkinStep::Flat),
            'W' => Some(MotzkinStep::WavyFlat),
            _ => None,
        }
    }
}

/// Whether heights may go negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MotzkinMode {
    /// Nonnegative heights, no wavy flats.
    Motzkin,
    /// Any heights; wavy flats allowed as a prefix.
    Grand,
}

/// A Motzkin path or grand Motzkin path ending at height 0.
///
/// Text form uses `U`, `D`, `F` and `W` (wavy flat).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotzkinWord {
    steps: Vec<MotzkinStep>,
    mode: MotzkinMode,
}

impl MotzkinWord {
    pub fn new(steps: Vec<MotzkinStep>, mode: MotzkinMode) -> Result<Self, PathError> {
        validate_motzkin(&steps, mode)?;
        Ok(Self { steps, mode })
    }

    pub(crate) fn from_trusted(steps: Vec<MotzkinStep>, mode: MotzkinMode) -> Self {
        debug_assert!(validate_motzkin(&steps, mode).is_ok(), "invalid word {steps:?}");
        Self { steps, mode }
    }

    pub fn parse(text: &str, mode: MotzkinMode) -> Result<Self, PathError> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| {
                MotzkinStep::from_symbol(c).ok_or_else(|| PathError::Syntax {
                    position: i + 1,
                    message: format!("unexpected character {c:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(steps, mode)
    }

    pub fn steps(&self) -> &[MotzkinStep] {
        &self.steps
    }

    pub fn mode(&self) -> MotzkinMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn heights(&self) -> Vec<i64> {
        motzkin_heights(&self.steps)
    }

    /// No `UD` factor.
    pub fn is_peakless(&self) -> bool {
        !has_factor(&self.steps, MotzkinStep::Up, MotzkinStep::Down)
    }

    /// No `DU` factor.
    pub fn is_valleyless(&self) -> bool {
        !has_factor(&self.steps, MotzkinStep::Down, MotzkinStep::Up)
    }
}

impl fmt::Display for MotzkinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

pub(crate) fn motzkin_heights(steps: &[MotzkinStep]) -> Vec<i64> {
    steps
        .iter()
        .scan(0i64, |h, s| {
            *h += s.delta();
            Some(*h)
        })
        .collect()
}

fn has_factor(steps: &[MotzkinStep], a: MotzkinStep, b: MotzkinStep) -> bool {
    steps.windows(2).any(|w| w[0] == a && w[1] == b)
}

fn validate_motzkin(steps: &[MotzkinStep], mode: MotzkinMode) -> Result<(), PathError> {
    let mut height = 0i64;
    let mut in_wavy_prefix = true;
    for (i, &step) in steps.iter().enumerate() {
        if step == MotzkinStep::WavyFlat {
            if mode == MotzkinMode::Motzkin {
                return Err(PathError::InvalidMotzkin {
                    position: i + 1,
                    reason: "wavy flat in a Motzkin path".into(),
                });
            }
            if !in_wavy_prefix {
                return Err(PathError::InvalidMotzkin {
                    position: i + 1,
                    reason: "wavy flat after the prefix".into(),
                });
            }
        } else {
            in_wavy_prefix = false;
        }
        height += step.delta();
        if mode == MotzkinMode::Motzkin && height < 0 {
            return Err(PathError::NegativeHeight { position: i + 1 });
        }
    }
    if height != 0 {
        return Err(PathError::NonzeroFinalHeight { height });
    }
    Ok(())
}

/// Membership in the image class of meanders: `W^k g` where `g` is a peakless
/// grand Motzkin word without wavy flats, and either `k >= 1` or `g` starts
/// with a down step.
pub fn is_wavy_grand(steps: &[MotzkinStep]) -> bool {
    let k = steps
        .iter()
        .take_while(|s| **s == MotzkinStep::WavyFlat)
        .count();
    let grand = &steps[k..];
    if grand.contains(&MotzkinStep::WavyFlat) {
        return false;
    }
    if has_factor(grand, MotzkinStep::Up, MotzkinStep::Down) {
        return false;
    }
    if grand.iter().map(|s| s.delta()).sum::<i64>() != 0 {
        return false;
    }
    k >= 1 || grand.first() == Some(&MotzkinStep::Down)
}

/// Membership of a word in the meander image class; see [`is_wavy_grand`].
pub fn is_in_s(word: &MotzkinWord) -> bool {
    is_wavy_grand(word.steps())
}

/// Arc direction of a meander letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arc {
    L,
    R,
}

/// A closed Fibonacci meander with central angle 180 degrees, as a word over
/// `{L, R}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeanderWord {
    letters: Vec<Arc>,
}

impl MeanderWord {
    pub fn new(letters: Vec<Arc>) -> Result<Self, PathError> {
        validate_meander(&letters)?;
        Ok(Self { letters })
    }

    pub(crate) fn from_trusted(letters: Vec<Arc>) -> Self {
        debug_assert!(validate_meander(&letters).is_ok());
        Self { letters }
    }

    pub fn parse(text: &str) -> Result<Self, PathError> {
        let letters = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'L' => Ok(Arc::L),
                'R' => Ok(Arc::R),
                _ => Err(PathError::Syntax {
                    position: i + 1,
                    message: format!("unexpected character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Arc] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for MeanderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|a| {
            f.write_str(match a {
                Arc::L => "L",
                Arc::R => "R",
            })
        })
    }
}

/// Letter-level rules of a meander word, without the closedness condition.
pub(crate) fn meander_letters_ok(letters: &[Arc]) -> Result<(), PathError> {
    if letters.is_empty() {
        return Err(PathError::Empty);
    }
    if letters.len() % 2 != 0 {
        return Err(PathError::InvalidMeander("odd number of arcs".into()));
    }
    if letters[0] != Arc::L {
        return Err(PathError::InvalidMeander("must start with L".into()));
    }
    let run = letters.iter().take_while(|a| **a == Arc::L).count();
    if let Some(i) = letters[run..]
        .windows(2)
        .position(|w| w == [Arc::L, Arc::L])
    {
        return Err(PathError::InvalidMeander(format!(
            "LL at position {} outside the initial run",
            run + i + 1
        )));
    }
    Ok(())
}

fn validate_meander(letters: &[Arc]) -> Result<(), PathError> {
    meander_letters_ok(letters)?;
    let code: Vec<MotzkinStep> = letters
        .chunks(2)
        .map(|p| bijections::tau(p[0], p[1]))
        .collect();
    if !is_wavy_grand(&code) {
        return Err(PathError::InvalidMeander("curve is not closed".into()));
    }
    Ok(())
}

/// Step of a classical Dyck word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DyckStep {
    Up,
    Down,
}

/// A classical Dyck word over `{U, D}`. The empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord {
    steps: Vec<DyckStep>,
}

impl DyckWord {
    pub fn new(steps: Vec<DyckStep>) -> Result<Self, PathError> {
        let mut h = 0i64;
        for (i, s) in steps.iter().enumerate() {
            h += if *s == DyckStep::Up { 1 } else { -1 };
            if h < 0 {
                return Err(PathError::NegativeHeight { position: i + 1 });
            }
        }
        if h != 0 {
            return Err(PathError::NonzeroFinalHeight { height: h });
        }
        Ok(Self { steps })
    }

    pub(crate) fn from_trusted(steps: Vec<DyckStep>) -> Self {
        Self { steps }
    }

    pub fn parse(text: &str) -> Result<Self, PathError> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'U' => Ok(DyckStep::Up),
                'D' => Ok(DyckStep::Down),
                _ => Err(PathError::Syntax {
                    position: i + 1,
                    message: format!("unexpected character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(steps)
    }

    pub fn steps(&self) -> &[DyckStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn peaks(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[0] == DyckStep::Up && w[1] == DyckStep::Down)
            .count()
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| {
            f.write_str(match s {
                DyckStep::Up => "U",
                DyckStep::Down => "D",
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> AirPocketPath {
        parse_path(s).unwrap()
    }

    #[test]
    fn parse_smallest() {
        assert_eq!(p("UD").steps(), &[Step::Up, Step::Down(1)]);
    }

    #[test]
    fn parse_eight_step_path() {
        let path = p("UUUD2UD2UD");
        assert_eq!(path.len(), 8);
        assert_eq!(format_path(&path), "UUUD2UD2UD");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_path("UDD2U"),
            Err(PathError::ConsecutiveDowns { position: 3 })
        ));
        assert!(matches!(parse_path(""), Err(PathError::Empty)));
        assert!(matches!(
            parse_path("UD2"),
            Err(PathError::NegativeHeight { position: 2 })
        ));
        assert!(matches!(
            parse_path("UU"),
            Err(PathError::NonzeroFinalHeight { height: 2 })
        ));
        assert!(matches!(parse_path("UXD"), Err(PathError::Syntax { position: 2, .. })));
        assert!(matches!(parse_path("UD0"), Err(PathError::ZeroSubscript { .. })));
        assert!(matches!(parse_path("DU"), Err(PathError::NegativeHeight { position: 1 })));
    }

    #[test]
    fn format_examples() {
        let path = AirPocketPath::new(vec![Step::Up, Step::Up, Step::Down(2)]).unwrap();
        assert_eq!(format_path(&path), "UUD2");
        assert_eq!(p("UD1").to_string(), "UD");
    }

    #[test]
    fn heights() {
        assert_eq!(p("UD").heights(), vec![1, 0]);
        assert_eq!(p("UUD2").heights(), vec![1, 2, 0]);
        assert_eq!(p("UUDUDUD2").heights(), vec![1, 2, 1, 2, 1, 2, 0]);
    }

    #[test]
    fn primality() {
        assert!(!p("UD").is_prime());
        assert!(p("UUDUUD3").is_prime());
        assert!(!p("UUD2UD").is_prime());
        assert!(p("UUD2").is_prime());
    }

    #[test]
    fn valleys() {
        assert_eq!(p("UUDUDUD2").valley_heights().0, vec![1, 1]);
        assert_eq!(p("UUDUD2UD").valley_heights().0, vec![1, 0]);
        assert!(p("UD").valley_heights().is_empty());
        assert!(p("UUDUDUD2").is_nondecreasing());
        assert!(!p("UUDUD2UD").is_nondecreasing());
        assert!(p("UD").is_nondecreasing());
    }

    #[test]
    fn wavy_grand_membership() {
        use MotzkinStep::*;
        assert!(is_wavy_grand(&[WavyFlat]));
        assert!(is_wavy_grand(&[Down, Up]));
        assert!(!is_wavy_grand(&[Flat, Down]));
        assert!(!is_wavy_grand(&[Flat]));
        assert!(!is_wavy_grand(&[]));
        assert!(!is_wavy_grand(&[WavyFlat, Up, Down]));
        assert!(!is_wavy_grand(&[Down, Up, WavyFlat]));
        assert!(is_wavy_grand(&[WavyFlat, Flat, Up, Flat, Down]));
    }

    #[test]
    fn motzkin_validation() {
        assert!(MotzkinWord::parse("UFD", MotzkinMode::Motzkin).is_ok());
        assert!(MotzkinWord::parse("DU", MotzkinMode::Motzkin).is_err());
        assert!(MotzkinWord::parse("DU", MotzkinMode::Grand).is_ok());
        assert!(MotzkinWord::parse("WDU", MotzkinMode::Grand).is_ok());
        assert!(MotzkinWord::parse("DWU", MotzkinMode::Grand).is_err());
        assert!(MotzkinWord::parse("WF", MotzkinMode::Motzkin).is_err());
        assert!(!MotzkinWord::parse("UD", MotzkinMode::Motzkin).unwrap().is_peakless());
    }

    #[test]
    fn meander_validation() {
        assert!(MeanderWord::parse("LL").is_ok());
        assert!(MeanderWord::parse("LRRL").is_ok());
        assert!(MeanderWord::parse("LLLLRRLRRLRLRLRRLRLR").is_ok());
        assert!(MeanderWord::parse("LRLR").is_err());
        assert!(MeanderWord::parse("RL").is_err());
        assert!(MeanderWord::parse("LRRLLR").is_err());
        assert!(MeanderWord::parse("L").is_err());
        assert!(MeanderWord::parse("").is_err());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&p("UUD2UD")).unwrap();
        assert_eq!(json, r#"{"steps":["U","U","D2","U","D"]}"#);
        let back: AirPocketPath = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p("UUD2UD"));
        assert!(serde_json::from_str::<AirPocketPath>(r#"{"steps":["D"]}"#).is_err());
    }
}
