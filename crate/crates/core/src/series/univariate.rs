use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::conv::{mul_rows, Row};
use super::fixed_point::Iterate;
use super::Series;
use crate::error::SeriesError;

/// Dense truncated series in `x` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to `order`.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant_value(BigRational::one(), order)
    }

    pub fn constant_value(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// Integer coefficients, index = power of `x`.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            order,
        )
    }

    /// Sparse integer polynomial from `(power, coefficient)` pairs.
    pub fn poly(terms: &[(usize, i64)], order: usize) -> Self {
        let mut s = Self::zero(order);
        for &(e, c) in terms {
            if e <= order {
                s.coeffs[e] += BigRational::from_integer(c.into());
            }
        }
        s
    }

    /// `x^k`.
    pub fn x_pow(k: usize, order: usize) -> Self {
        Self::poly(&[(k, 1)], order)
    }

    /// `x^k / (1 - x)`.
    pub fn geometric_from(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        for c in s.coeffs.iter_mut().skip(k) {
            *c = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the order.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        Self::new(c, order)
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, self.order())
    }

    /// Exact division by `x^k`.
    pub fn shift_div_x(&self, k: usize) -> Result<Self, SeriesError> {
        if let Some(i) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroLowOrder { index: i, shift: k });
        }
        if k > self.order() {
            return Err(SeriesError::BadOrder);
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        super::divide(self, other)
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        super::inverse(self)
    }

    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        super::sqrt(self)
    }

    /// Formal derivative in `x`.
    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigRational::from_integer(i.into()))
            .collect();
        Self::new(c, self.order().saturating_sub(1))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Index of the first non-integral coefficient.
    pub fn first_non_integral(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_integer())
    }

    /// Coefficients as integers; fails on the first non-integral one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>, usize> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if c.is_integer() { Ok(c.to_integer()) } else { Err(i) })
            .collect()
    }

    /// Coefficient `i` as a nonnegative integer, if it is one.
    pub fn natural(&self, i: usize) -> Option<BigUint> {
        let c = self.coeffs.get(i)?;
        if !c.is_integer() || c.is_negative() {
            return None;
        }
        c.to_integer().to_biguint()
    }

    /// Coefficient `i` as a float, for ratio checks.
    pub fn coeff_f64(&self, i: usize) -> f64 {
        self.coeff(i).to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn rows(&self) -> Vec<Row> {
        self.coeffs
            .iter()
            .map(|c| if c.is_zero() { Vec::new() } else { vec![((0, 0), c.clone())] })
            .collect()
    }

    pub(crate) fn from_rows(rows: Vec<Row>) -> Self {
        Self {
            coeffs: rows
                .into_iter()
                .map(|r| r.into_iter().map(|(_, q)| q).sum())
                .collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }
}

impl Iterate for TruncatedSeries {
    fn order(&self) -> usize {
        TruncatedSeries::order(self)
    }

    fn with_order(&self, order: usize) -> Self {
        TruncatedSeries::with_order(self, order)
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl Series for TruncatedSeries {
    fn constant(c: BigRational, order: usize) -> Self {
        Self::constant_value(c, order)
    }

    fn scalar_constant(&self) -> Option<BigRational> {
        Some(self.coeffs[0].clone())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries::scale(self, c)
    }

    fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn shift_div_x(&self, k: usize) -> Result<Self, SeriesError> {
        TruncatedSeries::shift_div_x(self, k)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_rows(mul_rows(&self.rows(), &rhs.rows(), order))
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { <&$ty as $tr<&$ty>>::$m(&self, &rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { <&$ty as $tr<&$ty>>::$m(&self, rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { <&$ty as $tr<&$ty>>::$m(self, &rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(TruncatedSeries, Add add, Sub sub, Mul mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom("coefficient count does not match order"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let d: BigInt = d.parse().map_err(D::Error::custom)?;
                if d.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn geometric_identity() {
        let one_minus_x = TruncatedSeries::from_ints(&[1, -1], 10);
        let geo = TruncatedSeries::geometric_from(0, 10);
        assert_eq!(&one_minus_x * &geo, TruncatedSeries::one(10));
    }

    #[test]
    fn division() {
        let a = TruncatedSeries::one(6);
        let b = TruncatedSeries::from_ints(&[1, -1], 6);
        assert_eq!(a.div(&b).unwrap(), TruncatedSeries::geometric_from(0, 6));
        let z = TruncatedSeries::from_ints(&[0, 1], 6);
        assert_eq!(a.div(&z), Err(SeriesError::NonInvertible));
        let third = TruncatedSeries::from_ints(&[3], 4).inverse().unwrap();
        assert_eq!(third.coeff(0), BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn square_roots() {
        assert_eq!(TruncatedSeries::one(8).sqrt().unwrap(), TruncatedSeries::one(8));
        let sq = TruncatedSeries::from_ints(&[1, -2, 1], 8);
        assert_eq!(sq.sqrt().unwrap(), TruncatedSeries::from_ints(&[1, -1], 8));
        assert_eq!(
            TruncatedSeries::from_ints(&[4], 3).sqrt(),
            Err(SeriesError::SqrtConstant)
        );
        let r = TruncatedSeries::from_ints(&[1, -2, -1, -2, 1], 12);
        let s = r.sqrt().unwrap();
        assert_eq!(&s * &s, r);
        let num = &TruncatedSeries::from_ints(&[1, -1, -1], 12) - &s;
        let a = num.shift_div_x(1).unwrap().scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(ints(&a)[2..8], [1, 1, 2, 4, 8, 17]);
    }

    #[test]
    fn shifts() {
        let s = TruncatedSeries::from_ints(&[0, 0, 3, 4], 5);
        assert_eq!(ints(&s.shift_div_x(2).unwrap()), vec![3, 4, 0, 0]);
        assert_eq!(ints(&s.shift_div_x(0).unwrap()), vec![0, 0, 3, 4, 0, 0]);
        assert_eq!(
            s.shift_div_x(3),
            Err(SeriesError::NonzeroLowOrder { index: 2, shift: 3 })
        );
    }

    #[test]
    fn min_order_semantics() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(7);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn json_round_trip() {
        let s = TruncatedSeries::new(vec![BigRational::new(1.into(), 2.into())], 2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":2,"coeffs":[["1","2"],["0","1"],["0","1"]]}"#);
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
