//! Lowering and elevation of prime paths, the map `psi` onto peakless Motzkin
//! paths, unfurling into classical Dyck words, and the meander coding `mu`.

use crate::error::BijectionError;
use crate::path::{
    motzkin_heights, AirPocketPath, Arc, DyckStep, DyckWord, MeanderWord, MotzkinMode,
    MotzkinStep, MotzkinWord, Step,
};

/// `U beta U D_k` with `k >= 2` maps to `beta U D_{k-1}`.
pub fn lower(path: &AirPocketPath) -> Result<AirPocketPath, BijectionError> {
    if !path.is_prime() {
        return Err(BijectionError::NotPrime(path.to_string()));
    }
    Ok(AirPocketPath::from_trusted(lower_steps(path.steps())))
}

fn lower_steps(steps: &[Step]) -> Vec<Step> {
    let mut out = steps[1..].to_vec();
    if let Some(Step::Down(k)) = out.last_mut() {
        *k -= 1;
    }
    out
}

/// Inverse of [`lower`]: prepend `U` and raise the last subscript by one.
pub fn elevate(path: &AirPocketPath) -> AirPocketPath {
    AirPocketPath::from_trusted(elevate_steps(path.steps()))
}

pub(crate) fn elevate_steps(steps: &[Step]) -> Vec<Step> {
    let mut out = Vec::with_capacity(steps.len() + 1);
    out.push(Step::Up);
    out.extend_from_slice(steps);
    if let Some(Step::Down(k)) = out.last_mut() {
        *k += 1;
    }
    out
}

/// The bijection from paths of length `n` to peakless Motzkin paths of
/// length `n - 1`, by the four-case recursion on the second-to-last return.
pub fn psi(path: &AirPocketPath) -> MotzkinWord {
    let mut out = Vec::with_capacity(path.len() - 1);
    psi_into(path.steps(), &mut out);
    MotzkinWord::from_trusted(out, MotzkinMode::Motzkin)
}

fn psi_into(steps: &[Step], out: &mut Vec<MotzkinStep>) {
    if steps == [Step::Up, Step::Down(1)] {
        out.push(MotzkinStep::Flat);
        return;
    }
    // Scan right to left for the return before the last one.
    let mut h = 0i64;
    let mut split = None;
    for i in (0..steps.len() - 1).rev() {
        h -= steps[i + 1].delta();
        if h == 0 {
            split = Some(i + 1);
            break;
        }
    }
    match split {
        None => {
            // A single arch longer than UD is prime.
            psi_into(&lower_steps(steps), out);
            out.push(MotzkinStep::Flat);
        }
        Some(cut) => {
            let (beta, gamma) = steps.split_at(cut);
            if gamma == [Step::Up, Step::Down(1)] {
                out.push(MotzkinStep::Up);
                psi_into(beta, out);
                out.push(MotzkinStep::Down);
            } else {
                psi_into(&lower_steps(gamma), out);
                out.push(MotzkinStep::Up);
                psi_into(beta, out);
                out.push(MotzkinStep::Down);
            }
        }
    }
}

/// Inverse of [`psi`].
pub fn psi_inv(word: &MotzkinWord) -> Result<AirPocketPath, BijectionError> {
    if word.mode() != MotzkinMode::Motzkin || word.is_empty() || !word.is_peakless() {
        return Err(BijectionError::InvalidWord(word.to_string()));
    }
    psi_inv_steps(word.steps()).map(AirPocketPath::from_trusted)
}

fn psi_inv_steps(m: &[MotzkinStep]) -> Result<Vec<Step>, BijectionError> {
    let dispatch_err = || BijectionError::Dispatch(m.iter().map(|s| s.symbol()).collect());
    if m == [MotzkinStep::Flat] {
        return Ok(vec![Step::Up, Step::Down(1)]);
    }
    match m.last() {
        Some(MotzkinStep::Flat) => {
            let inner = psi_inv_steps(&m[..m.len() - 1])?;
            Ok(elevate_steps(&inner))
        }
        Some(MotzkinStep::Down) => {
            // The matching up step is the last one leaving height 0.
            let heights = motzkin_heights(m);
            let j = (0..m.len())
                .rev()
                .find(|&j| {
                    m[j] == MotzkinStep::Up && (j == 0 || heights[j - 1] == 0)
                })
                .ok_or_else(dispatch_err)?;
            let inner = &m[j + 1..m.len() - 1];
            if inner.is_empty() {
                return Err(dispatch_err());
            }
            let mut beta = psi_inv_steps(inner)?;
            if j == 0 {
                beta.extend([Step::Up, Step::Down(1)]);
            } else {
                let gamma = elevate_steps(&psi_inv_steps(&m[..j])?);
                beta.extend(gamma);
            }
            Ok(beta)
        }
        _ => Err(dispatch_err()),
    }
}

/// Expands each `D_k` into `k` unit down steps.
pub fn unfurl(path: &AirPocketPath) -> DyckWord {
    let mut out = Vec::new();
    for step in path.steps() {
        match *step {
            Step::Up => out.push(DyckStep::Up),
            Step::Down(k) => out.extend(std::iter::repeat(DyckStep::Down).take(k as usize)),
        }
    }
    DyckWord::from_trusted(out)
}

/// Contracts each maximal run `D^i` into `D_i`.
pub fn refurl(word: &DyckWord) -> Result<AirPocketPath, BijectionError> {
    let mut out: Vec<Step> = Vec::new();
    for step in word.steps() {
        match (step, out.last_mut()) {
            (DyckStep::Up, _) => out.push(Step::Up),
            (DyckStep::Down, Some(Step::Down(k))) => *k += 1,
            (DyckStep::Down, _) => out.push(Step::Down(1)),
        }
    }
    Ok(AirPocketPath::new(out)?)
}

/// Pair coding: `RL -> U`, `LR -> D`, `RR -> F`, `LL -> W` (wavy flat).
pub fn tau(a: Arc, b: Arc) -> MotzkinStep {
    match (a, b) {
        (Arc::R, Arc::L) => MotzkinStep::Up,
        (Arc::L, Arc::R) => MotzkinStep::Down,
        (Arc::R, Arc::R) => MotzkinStep::Flat,
        (Arc::L, Arc::L) => MotzkinStep::WavyFlat,
    }
}

fn tau_inv(step: MotzkinStep) -> [Arc; 2] {
    match step {
        MotzkinStep::Up => [Arc::R, Arc::L],
        MotzkinStep::Down => [Arc::L, Arc::R],
        MotzkinStep::Flat => [Arc::R, Arc::R],
        MotzkinStep::WavyFlat => [Arc::L, Arc::L],
    }
}

/// Applies [`tau`] to consecutive letter pairs.
pub fn mu(word: &MeanderWord) -> MotzkinWord {
    let steps = word
        .letters()
        .chunks(2)
        .map(|p| tau(p[0], p[1]))
        .collect();
    MotzkinWord::from_trusted(steps, MotzkinMode::Grand)
}

/// Inverse of [`mu`]; fails unless the word lies in the meander image class.
pub fn mu_inv(word: &MotzkinWord) -> Result<MeanderWord, BijectionError> {
    let letters = word.steps().iter().flat_map(|s| tau_inv(*s)).collect();
    Ok(MeanderWord::new(letters)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::parse_path;

    fn p(s: &str) -> AirPocketPath {
        parse_path(s).unwrap()
    }

    fn m(s: &str) -> MotzkinWord {
        MotzkinWord::parse(s, MotzkinMode::Motzkin).unwrap()
    }

    #[test]
    fn lowering() {
        assert_eq!(lower(&p("UUDUUD3")).unwrap(), p("UDUUD2"));
        assert_eq!(lower(&p("UUD2")).unwrap(), p("UD"));
        assert_eq!(lower(&p("UUUD3")).unwrap(), p("UUD2"));
        assert!(matches!(lower(&p("UD")), Err(BijectionError::NotPrime(_))));
    }

    #[test]
    fn elevation() {
        assert_eq!(elevate(&p("UDUUD2")), p("UUDUUD3"));
        assert_eq!(elevate(&p("UD")), p("UUD2"));
        assert_eq!(elevate(&p("UUD2")), p("UUUD3"));
    }

    #[test]
    fn psi_fixtures() {
        assert_eq!(psi(&p("UD")).to_string(), "F");
        assert_eq!(psi(&p("UUD2")).to_string(), "FF");
        assert_eq!(psi(&p("UUUD2UD2UD")).to_string(), "UUFFDFD");
        assert_eq!(psi(&p("UDUD")).to_string(), "UFD");
    }

    #[test]
    fn psi_inverse_fixtures() {
        assert_eq!(psi_inv(&m("F")).unwrap(), p("UD"));
        assert_eq!(psi_inv(&m("FF")).unwrap(), p("UUD2"));
        assert_eq!(psi_inv(&m("UUFFDFD")).unwrap(), p("UUUD2UD2UD"));
        assert!(psi_inv(&m("UD")).is_err());
    }

    #[test]
    fn unfurl_fixtures() {
        assert_eq!(unfurl(&p("UUD2")).to_string(), "UUDD");
        assert_eq!(unfurl(&p("UD")).to_string(), "UD");
        assert_eq!(unfurl(&p("UUUD2UD2UD")).to_string(), "UUUDDUDDUD");
        let w = DyckWord::parse("UUUDDUDDUD").unwrap();
        assert_eq!(refurl(&w).unwrap(), p("UUUD2UD2UD"));
    }

    #[test]
    fn mu_fixtures() {
        let fig = MeanderWord::parse("LLLLRRLRRLRLRLRRLRLR").unwrap();
        assert_eq!(mu(&fig).to_string(), "WWFDUUUFDD");
        assert_eq!(mu(&MeanderWord::parse("LL").unwrap()).to_string(), "W");
        assert_eq!(mu(&MeanderWord::parse("LRRL").unwrap()).to_string(), "DU");
        assert_eq!(mu_inv(&mu(&fig)).unwrap(), fig);
    }
}
