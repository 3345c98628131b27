//! Exact closed-form counts and the floating-point asymptotic estimates.
//!
//! Fibonacci numbers are indexed with `F_0 = 0`, `F_1 = F_2 = 1`. Binomial
//! coefficients vanish outside `0 <= b <= a`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::enumeration::FamilyId;
use crate::error::ClosedFormError;
use crate::statistics::StatId;

type Res<T> = Result<T, ClosedFormError>;

fn domain(msg: impl Into<String>) -> ClosedFormError {
    ClosedFormError::Domain(msg.into())
}

/// `binom(a, b)`, zero when `b < 0`, `b > a` or `a < 0`.
pub fn binom(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `N(m, k) = binom(m, k) binom(m, k - 1) / m`.
pub fn narayana(m: i64, k: i64) -> Res<BigUint> {
    if m < 1 {
        return Err(domain(format!("narayana needs m >= 1, got {m}")));
    }
    Ok(binom(m, k) * binom(m, k - 1) / BigUint::from(m as u64))
}

pub fn catalan(n: usize) -> BigUint {
    binom(2 * n as i64, n as i64) / BigUint::from(n as u64 + 1)
}

/// `sum_k (-1)^(n-k) binom(n, k) c_k`.
pub fn riordan(n: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let term = BigInt::from(binom(n as i64, k as i64) * catalan(k));
        if (n - k) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("Riordan numbers are nonnegative")
}

pub fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Closed-form size of `family` at length `n`; with `k`, the number of its
/// members having `k` peaks.
pub fn closed_count(family: FamilyId, n: usize, k: Option<u32>) -> Res<BigUint> {
    let ni = n as i64;
    match (family, k) {
        (_, Some(0)) => Err(domain("peak count must be at least 1")),
        (FamilyId::Air, Some(k)) => {
            let k = k as i64;
            if ni - k < 1 {
                return Ok(BigUint::zero());
            }
            narayana(ni - k, k)
        }
        (FamilyId::Air, None) => {
            if n < 2 {
                return Err(domain("air-pocket paths have length at least 2"));
            }
            (1..=ni / 2).try_fold(BigUint::zero(), |acc, k| Ok(acc + narayana(ni - k, k)?))
        }
        (FamilyId::AirInc, Some(k)) => {
            if n < 2 {
                return Err(domain("air-pocket paths have length at least 2"));
            }
            Ok(binom(ni - 2, 2 * (k as i64 - 1)))
        }
        (FamilyId::AirInc, None) => match n {
            0 | 1 => Err(domain("air-pocket paths have length at least 2")),
            2 => Ok(BigUint::one()),
            _ => Ok(pow2(n - 3)),
        },
        (FamilyId::ValleysAtZero, None) => {
            if n < 2 {
                return Err(domain("air-pocket paths have length at least 2"));
            }
            Ok(fibonacci(n - 1))
        }
        (FamilyId::Dyck, None) => Ok(if n % 2 == 0 {
            catalan(n / 2)
        } else {
            BigUint::zero()
        }),
        (f, _) => Err(domain(format!("no closed count for {}", f.tag()))),
    }
}

/// Closed-form popularity of `stat` over `family` at length `n`.
pub fn closed_popularity(family: FamilyId, n: usize, stat: StatId) -> Res<BigUint> {
    if n < 2 {
        return Err(domain("air-pocket paths have length at least 2"));
    }
    match (family, stat) {
        (FamilyId::Air, StatId::Peak) => Ok(remark1_identity(n).0),
        (FamilyId::AirInc, StatId::Peak) => Ok(match n {
            2 | 3 => BigUint::one(),
            _ => BigUint::from(n + 2) * pow2(n - 4) / 2u32,
        }),
        (FamilyId::AirInc, StatId::Ret) => Ok(pow2(n - 2) - fibonacci(n - 2)),
        (FamilyId::AirInc, StatId::Cat) => Ok(match n {
            2 => BigUint::zero(),
            3 => BigUint::one(),
            _ => BigUint::from(3u32) * pow2(n - 4) - BigUint::from(2u32) * fibonacci(n - 3),
        }),
        (f, s) => Err(domain(format!("no closed popularity for {s} on {}", f.tag()))),
    }
}

/// Both sides of the binomial identity whose common value is the number of
/// peaks over all air-pocket paths of length `n`.
pub fn remark1_identity(n: usize) -> (BigUint, BigUint) {
    let n = n as i64;
    let mut lhs = BigUint::zero();
    let mut rhs = BigUint::zero();
    for k in 1..=n {
        lhs += binom(n - k - 1, k - 1) * binom(n - k, k - 1);
        rhs += binom(k - 1, 2 * k - n) * binom(k, 2 * k - n + 1);
    }
    (lhs, rhs)
}

/// Which asymptotic estimate to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Asymptotic {
    /// Up steps over all paths.
    PopU,
    /// `D` steps over all paths.
    PopD,
    PopPeak,
    PopRet,
    PopCat,
    /// Pyramids of size `k` over all paths.
    Pyramid(u32),
    /// `D` steps over non-decreasing paths.
    IncD,
    /// Pyramids of size `k` over non-decreasing paths.
    IncPyramid(u32),
}

impl Asymptotic {
    pub const SQRT_TYPE: [Asymptotic; 8] = [
        Asymptotic::PopU,
        Asymptotic::PopD,
        Asymptotic::PopPeak,
        Asymptotic::PopRet,
        Asymptotic::PopCat,
        Asymptotic::Pyramid(1),
        Asymptotic::Pyramid(2),
        Asymptotic::Pyramid(3),
    ];
}

impl fmt::Display for Asymptotic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Asymptotic::PopU => f.write_str("POP_U"),
            Asymptotic::PopD => f.write_str("POP_D"),
            Asymptotic::PopPeak => f.write_str("POP_PEAK"),
            Asymptotic::PopRet => f.write_str("POP_RET"),
            Asymptotic::PopCat => f.write_str("POP_CAT"),
            Asymptotic::Pyramid(k) => write!(f, "Y({k})"),
            Asymptotic::IncD => f.write_str("POP_INC_D"),
            Asymptotic::IncPyramid(k) => write!(f, "W({k})"),
        }
    }
}

impl FromStr for Asymptotic {
    type Err = ClosedFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let param = |prefix: &str| -> Option<u32> {
            t.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        Ok(match t.as_str() {
            "POP_U" => Asymptotic::PopU,
            "POP_D" => Asymptotic::PopD,
            "POP_PEAK" => Asymptotic::PopPeak,
            "POP_RET" => Asymptotic::PopRet,
            "POP_CAT" => Asymptotic::PopCat,
            "POP_INC_D" => Asymptotic::IncD,
            _ => {
                if let Some(k) = param("Y(").filter(|k| *k > 0) {
                    Asymptotic::Pyramid(k)
                } else if let Some(k) = param("W(").filter(|k| *k > 0) {
                    Asymptotic::IncPyramid(k)
                } else {
                    return Err(domain(format!("unknown asymptotic {s:?}")));
                }
            }
        })
    }
}

/// Limit of the ratio of catastrophe to return popularity over all paths.
pub fn cat_ret_limit() -> f64 {
    let s5 = 5f64.sqrt();
    (4.0 - s5) / s5
}

/// The same limit over non-decreasing paths.
pub const INC_CAT_RET_LIMIT: f64 = 0.75;

/// Estimate of the popularity named by `which` at length `n`.
pub fn asymptotic(which: Asymptotic, n: usize) -> f64 {
    let nf = n as f64;
    let s5 = 5f64.sqrt();
    let c = (14.0 * s5 - 30.0).sqrt();
    let phi = (3.0 + s5) / 2.0;
    let root = (PI * nf).sqrt();
    // powi keeps the large powers exact enough; ln/exp would lose digits
    let grow = |e: i64| phi.powi(e as i32);
    let n = n as i64;
    match which {
        Asymptotic::PopU => 2.0 * (s5 - 2.0) / ((3.0 - s5) * root * c) * grow(n),
        Asymptotic::PopD => (s5 - 3.0).powi(2) * (s5 - 1.0) / (8.0 * root * c) * grow(n),
        Asymptotic::PopPeak => (3.0 - s5) * (s5 - 1.0) / (4.0 * root * c) * grow(n),
        Asymptotic::PopRet => c * s5 / (4.0 * nf * root) * grow(n + 1),
        Asymptotic::PopCat => c * (4.0 - s5) / (4.0 * nf * root) * grow(n + 1),
        Asymptotic::Pyramid(k) => (s5 - 1.0) / (2.0 * root * c) * grow(n - k as i64 - 1),
        Asymptotic::IncD => nf * 2f64.powi(n as i32 - 6),
        Asymptotic::IncPyramid(k) => nf * 2f64.powi(n as i32 - 5 - k as i32),
    }
}

/// `BigUint` to `f64`, saturating at infinity.
pub fn to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_values() {
        assert_eq!(narayana(4, 2).unwrap(), u(6));
        assert_eq!(riordan(3), u(1));
        assert_eq!(
            (0..8).map(riordan).collect::<Vec<_>>(),
            [1, 0, 1, 1, 3, 6, 15, 36].map(u)
        );
        assert_eq!(fibonacci(5), u(5));
        assert_eq!(fibonacci(0), u(0));
        assert_eq!(catalan(5), u(42));
        assert_eq!(binom(3, -1), u(0));
        assert_eq!(binom(-2, 0), u(0));
        assert_eq!(binom(2, 3), u(0));
    }

    #[test]
    fn closed_counts() {
        assert_eq!(closed_count(FamilyId::AirInc, 9, None).unwrap(), u(64));
        assert_eq!(closed_count(FamilyId::AirInc, 6, Some(2)).unwrap(), u(6));
        assert_eq!(closed_count(FamilyId::AirInc, 2, None).unwrap(), u(1));
        assert_eq!(closed_count(FamilyId::ValleysAtZero, 6, None).unwrap(), u(5));
        assert_eq!(closed_count(FamilyId::Air, 10, None).unwrap(), u(185));
        assert!(closed_count(FamilyId::Meander, 4, None).is_err());
    }

    #[test]
    fn closed_popularities() {
        assert_eq!(closed_popularity(FamilyId::AirInc, 6, StatId::Peak).unwrap(), u(16));
        assert_eq!(closed_popularity(FamilyId::AirInc, 6, StatId::Ret).unwrap(), u(13));
        assert_eq!(closed_popularity(FamilyId::AirInc, 6, StatId::Cat).unwrap(), u(8));
        let cats: Vec<_> = (2..=8)
            .map(|n| closed_popularity(FamilyId::AirInc, n, StatId::Cat).unwrap())
            .collect();
        assert_eq!(cats, [0, 1, 1, 4, 8, 18, 38].map(u));
    }

    #[test]
    fn binomial_sums_agree() {
        assert_eq!(remark1_identity(2), (u(1), u(1)));
        assert_eq!(remark1_identity(4), (u(3), u(3)));
        assert_eq!(remark1_identity(6), (u(16), u(16)));
    }

    #[test]
    fn asymptotic_names() {
        for a in Asymptotic::SQRT_TYPE {
            assert_eq!(a.to_string().parse::<Asymptotic>().unwrap(), a);
        }
        assert!((cat_ret_limit() - 0.788854).abs() < 1e-6);
    }
}
