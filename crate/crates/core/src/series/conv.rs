//! Product of truncated series whose coefficients are sparse polynomials in
//! two markers. Each operand is brought to a common denominator so the
//! convolution runs on integers; it uses `i128` when the operand sizes
//! guarantee no overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponents of the markers `(y, z)`.
pub type Monomial = (u32, u32);

pub(crate) type Row = Vec<(Monomial, BigRational)>;

struct Scaled {
    den: BigInt,
    rows: Vec<Vec<(Monomial, BigInt)>>,
    degrees: Vec<Option<Monomial>>,
    bits: u64,
    terms: usize,
}

fn scale(rows: &[Row], order: usize) -> Scaled {
    let upto = order.min(rows.len().saturating_sub(1));
    let used = if rows.is_empty() { &rows[..0] } else { &rows[..=upto] };
    let mut den = BigInt::one();
    for row in used {
        for (_, q) in row {
            if !q.denom().is_one() {
                den = den.lcm(q.denom());
            }
        }
    }
    let mut bits = 0;
    let mut terms = 0;
    let mut degrees = Vec::with_capacity(used.len());
    let scaled_rows = used
        .iter()
        .map(|row| {
            let mut deg: Option<Monomial> = None;
            let out: Vec<(Monomial, BigInt)> = row
                .iter()
                .map(|(m, q)| {
                    let v = if den.is_one() {
                        q.numer().clone()
                    } else {
                        q.numer() * (&den / q.denom())
                    };
                    bits = bits.max(v.bits());
                    deg = Some(match deg {
                        None => *m,
                        Some((y, z)) => (y.max(m.0), z.max(m.1)),
                    });
                    (*m, v)
                })
                .collect();
            terms += out.len();
            degrees.push(deg);
            out
        })
        .collect();
    Scaled {
        den,
        rows: scaled_rows,
        degrees,
        bits,
        terms,
    }
}

fn bit_length(n: usize) -> u64 {
    (usize::BITS - n.leading_zeros()) as u64
}

/// Coefficient rows `0..=order` of the product `a * b`.
pub(crate) fn mul_rows(a: &[Row], b: &[Row], order: usize) -> Vec<Row> {
    let sa = scale(a, order);
    let sb = scale(b, order);
    let den = &sa.den * &sb.den;
    let cell_bits = bit_length(sa.terms.min(sb.terms) + 1);
    let small = sa.bits + sb.bits + cell_bits <= 126;
    let narrow = |s: &Scaled| -> Vec<Vec<(Monomial, i128)>> {
        if !small {
            return Vec::new();
        }
        s.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(m, v)| (*m, i128::try_from(v).expect("bounded by bit check")))
                    .collect()
            })
            .collect()
    };
    let (na, nb) = (narrow(&sa), narrow(&sb));

    (0..=order)
        .map(|n| {
            let mut dims: Option<Monomial> = None;
            for i in 0..=n {
                let (Some(Some(da)), Some(Some(db))) =
                    (sa.degrees.get(i), sb.degrees.get(n - i))
                else {
                    continue;
                };
                let d = (da.0 + db.0, da.1 + db.1);
                dims = Some(match dims {
                    None => d,
                    Some(e) => (e.0.max(d.0), e.1.max(d.1)),
                });
            }
            let Some((dy, dz)) = dims else {
                return Vec::new();
            };
            let width = dz as usize + 1;
            let cells = (dy as usize + 1) * width;
            let values: Vec<BigInt> = if small {
                let mut acc = vec![0i128; cells];
                let pairs = (0..=n).filter_map(|i| Some((na.get(i)?, nb.get(n - i)?)));
                for (ra, rb) in pairs {
                    for (ma, va) in ra {
                        for (mb, vb) in rb {
                            let idx = (ma.0 + mb.0) as usize * width + (ma.1 + mb.1) as usize;
                            acc[idx] += va * vb;
                        }
                    }
                }
                acc.into_iter().map(BigInt::from).collect()
            } else {
                let mut acc = vec![BigInt::zero(); cells];
                let pairs =
                    (0..=n).filter_map(|i| Some((sa.rows.get(i)?, sb.rows.get(n - i)?)));
                for (ra, rb) in pairs {
                    for (ma, va) in ra {
                        for (mb, vb) in rb {
                            let idx = (ma.0 + mb.0) as usize * width + (ma.1 + mb.1) as usize;
                            acc[idx] += va * vb;
                        }
                    }
                }
                acc
            };
            values
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(idx, v)| {
                    let m = ((idx / width) as u32, (idx % width) as u32);
                    let q = if den.is_one() {
                        BigRational::from_integer(v)
                    } else {
                        BigRational::new(v, den.clone())
                    };
                    (m, q)
                })
                .collect()
        })
        .collect()
}

/// Largest absolute numerator bit length, for diagnostics.
#[allow(dead_code)]
pub(crate) fn max_bits(rows: &[Row]) -> u64 {
    rows.iter()
        .flatten()
        .map(|(_, q)| q.numer().abs().bits().max(q.denom().bits()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_product() {
        // (1/2 + y x) * (2/3 + z x) = 1/3 + (z/2 + 2y/3) x + yz x^2
        let a = vec![vec![((0, 0), q(1, 2))], vec![((1, 0), q(1, 1))]];
        let b = vec![vec![((0, 0), q(2, 3))], vec![((0, 1), q(1, 1))]];
        let c = mul_rows(&a, &b, 2);
        assert_eq!(c[0], vec![((0, 0), q(1, 3))]);
        assert_eq!(c[1], vec![((0, 1), q(1, 2)), ((1, 0), q(2, 3))]);
        assert_eq!(c[2], vec![((1, 1), q(1, 1))]);
    }

    #[test]
    fn big_path_matches_small_path() {
        let big: BigInt = BigInt::from(1u8) << 100;
        let a = vec![vec![((0, 0), BigRational::from_integer(big.clone()))]; 3];
        let c = mul_rows(&a, &a, 2);
        assert_eq!(c[2][0].1, BigRational::from_integer(&big * &big * 3));
    }
}
