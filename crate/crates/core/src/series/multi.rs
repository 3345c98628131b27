use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::conv::{mul_rows, Monomial, Row};
use super::fixed_point::Iterate;
use super::univariate::{forward_owned, TruncatedSeries};
use super::Series;
use crate::error::SeriesError;

/// Auxiliary variable of a multivariate series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Marker {
    Y,
    Z,
}

impl Marker {
    fn get(self, m: Monomial) -> u32 {
        match self {
            Marker::Y => m.0,
            Marker::Z => m.1,
        }
    }

    fn set(self, m: Monomial, e: u32) -> Monomial {
        match self {
            Marker::Y => (e, m.1),
            Marker::Z => (m.0, e),
        }
    }
}

/// Polynomial in `y` and `z`: exponents `(y, z)` to nonzero coefficient.
pub type Poly = BTreeMap<Monomial, BigRational>;

/// Truncated series in `x` whose coefficients are polynomials in the markers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    coeffs: Vec<Poly>,
}

fn add_term(p: &mut Poly, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

impl MultiSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Poly::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant_value(BigRational::one(), order)
    }

    pub fn constant_value(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        add_term(&mut s.coeffs[0], (0, 0), c);
        s
    }

    /// Sum of integer monomials `c x^i y^j z^k` given as `(c, i, j, k)`.
    pub fn monomials(terms: &[(i64, usize, u32, u32)], order: usize) -> Self {
        let mut s = Self::zero(order);
        for &(c, i, j, k) in terms {
            if i <= order {
                add_term(&mut s.coeffs[i], (j, k), BigRational::from_integer(c.into()));
            }
        }
        s
    }

    /// The bare marker as a series.
    pub fn marker(marker: Marker, order: usize) -> Self {
        let m = marker.set((0, 0), 1);
        Self::monomials(&[(1, 0, m.0, m.1)], order)
    }

    pub fn from_univariate(s: &TruncatedSeries) -> Self {
        let mut out = Self::zero(s.order());
        for (i, c) in s.coeffs().iter().enumerate() {
            add_term(&mut out.coeffs[i], (0, 0), c.clone());
        }
        out
    }

    /// Requires that no marker remains.
    pub fn to_univariate(&self) -> Option<TruncatedSeries> {
        let mut c = Vec::with_capacity(self.coeffs.len());
        for p in &self.coeffs {
            if p.keys().any(|m| *m != (0, 0)) {
                return None;
            }
            c.push(p.get(&(0, 0)).cloned().unwrap_or_else(BigRational::zero));
        }
        Some(TruncatedSeries::new(c, self.order()))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^j z^k`.
    pub fn coeff(&self, i: usize, j: u32, k: u32) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|p| p.get(&(j, k)))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, Poly::new());
        Self { coeffs: c }
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut c = vec![Poly::new(); k];
        c.extend(self.coeffs.iter().cloned());
        c.truncate(self.coeffs.len());
        Self { coeffs: c }
    }

    pub fn shift_div_x(&self, k: usize) -> Result<Self, SeriesError> {
        if let Some(i) = self.coeffs.iter().take(k).position(|p| !p.is_empty()) {
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
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.iter().map(|(m, v)| (*m, v * c)).collect())
                .collect(),
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

    /// Exact division by `marker^k`.
    pub fn div_marker_pow(&self, marker: Marker, k: u32) -> Result<Self, SeriesError> {
        let mut out = Self::zero(self.order());
        for (i, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p {
                let e = marker.get(*m);
                if e < k {
                    return Err(SeriesError::MarkerDivision { index: i });
                }
                out.coeffs[i].insert(marker.set(*m, e - k), c.clone());
            }
        }
        Ok(out)
    }

    /// Formal partial derivative in `marker`.
    pub fn deriv_marker(&self, marker: Marker) -> Self {
        let mut out = Self::zero(self.order());
        for (i, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p {
                let e = marker.get(*m);
                if e > 0 {
                    let f = BigRational::from_integer(BigInt::from(e));
                    add_term(&mut out.coeffs[i], marker.set(*m, e - 1), c * f);
                }
            }
        }
        out
    }

    /// Substitutes a number for `marker`.
    pub fn eval_marker(&self, marker: Marker, value: &BigRational) -> Self {
        let mut out = Self::zero(self.order());
        for (i, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p {
                let e = marker.get(*m);
                let w = num_traits::pow(value.clone(), e as usize);
                add_term(&mut out.coeffs[i], marker.set(*m, 0), c * w);
            }
        }
        out
    }

    /// Sets every marker to 1.
    pub fn erase_markers(&self) -> TruncatedSeries {
        let one = BigRational::one();
        self.eval_marker(Marker::Y, &one)
            .eval_marker(Marker::Z, &one)
            .to_univariate()
            .expect("no markers left")
    }

    /// `d/d marker` at `marker = 1`, other markers set to 1: the popularity
    /// series of the statistic carried by `marker`.
    pub fn marker_popularity(&self, marker: Marker) -> TruncatedSeries {
        self.deriv_marker(marker).erase_markers()
    }

    /// Drops every term whose total marker degree exceeds `cap`.
    pub fn truncate_marker_degree(&self, cap: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| {
                    p.iter()
                        .filter(|(m, _)| m.0 + m.1 <= cap)
                        .map(|(m, c)| (*m, c.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// The series in `x` multiplying `y^j z^k`.
    pub fn slice(&self, j: u32, k: u32) -> TruncatedSeries {
        let c = self
            .coeffs
            .iter()
            .map(|p| p.get(&(j, k)).cloned().unwrap_or_else(BigRational::zero))
            .collect();
        TruncatedSeries::new(c, self.order())
    }

    /// Exchanges the roles of `y` and `z`.
    pub fn swap_markers(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.iter().map(|(m, c)| ((m.1, m.0), c.clone())).collect())
                .collect(),
        }
    }

    /// Largest marker degree that occurs, per marker.
    pub fn max_marker_degrees(&self) -> Monomial {
        self.coeffs
            .iter()
            .flat_map(|p| p.keys())
            .fold((0, 0), |acc, m| (acc.0.max(m.0), acc.1.max(m.1)))
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }

    pub fn first_non_integral(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|p| p.values().any(|c| !c.is_integer()))
    }

    fn rows(&self) -> Vec<Row> {
        self.coeffs
            .iter()
            .map(|p| p.iter().map(|(m, c)| (*m, c.clone())).collect())
            .collect()
    }

    fn zip_with(&self, other: &Self, sign: i8) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| {
                let mut p = self.coeffs[i].clone();
                for (m, c) in &other.coeffs[i] {
                    add_term(&mut p, *m, if sign < 0 { -c } else { c.clone() });
                }
                p
            })
            .collect();
        Self { coeffs }
    }

    /// Polynomial in `y` (and `z`) of the `x^i` coefficient, as text.
    pub fn format_poly(p: &Poly) -> String {
        if p.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .iter()
            .map(|((j, k), c)| {
                let mut vars = String::new();
                for (name, e) in [("y", *j), ("z", *k)] {
                    match e {
                        0 => {}
                        1 => vars.push_str(name),
                        _ => vars.push_str(&format!("{name}^{e}")),
                    }
                }
                if vars.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    vars
                } else {
                    format!("{c}{vars}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl Iterate for MultiSeries {
    fn order(&self) -> usize {
        MultiSeries::order(self)
    }

    fn with_order(&self, order: usize) -> Self {
        MultiSeries::with_order(self, order)
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl Series for MultiSeries {
    fn constant(c: BigRational, order: usize) -> Self {
        Self::constant_value(c, order)
    }

    fn scalar_constant(&self) -> Option<BigRational> {
        let p = &self.coeffs[0];
        match p.len() {
            0 => Some(BigRational::zero()),
            1 => p.get(&(0, 0)).cloned(),
            _ => None,
        }
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
        MultiSeries::scale(self, c)
    }

    fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_empty())
    }

    fn shift_div_x(&self, k: usize) -> Result<Self, SeriesError> {
        MultiSeries::shift_div_x(self, k)
    }
}

impl Add for &MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: Self) -> MultiSeries {
        self.zip_with(rhs, 1)
    }
}

impl Sub for &MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: Self) -> MultiSeries {
        self.zip_with(rhs, -1)
    }
}

impl Mul for &MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: Self) -> MultiSeries {
        let order = self.order().min(rhs.order());
        let rows = mul_rows(&self.rows(), &rhs.rows(), order);
        MultiSeries {
            coeffs: rows.into_iter().map(|r| r.into_iter().collect()).collect(),
        }
    }
}

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        self.scale_int(-1)
    }
}

impl Neg for MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        -&self
    }
}

forward_owned!(MultiSeries, Add add, Sub sub, Mul mul);

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "x^{i}({})", Self::format_poly(p))?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: usize,
    y: u32,
    z: u32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct MultiJson {
    order: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MultiSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.iter().map(move |((j, k), c)| TermJson {
                    x: i,
                    y: *j,
                    z: *k,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
            })
            .collect();
        MultiJson {
            order: self.order(),
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MultiJson::deserialize(deserializer)?;
        let mut out = MultiSeries::zero(raw.order);
        for t in raw.terms {
            if t.x > raw.order {
                return Err(D::Error::custom("term beyond order"));
            }
            let n: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let d: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if d.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            add_term(&mut out.coeffs[t.x], (t.y, t.z), BigRational::new(n, d));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marker_calculus() {
        // x^2 y z + x^3 y^2
        let s = MultiSeries::monomials(&[(1, 2, 1, 1), (1, 3, 2, 0)], 5);
        let dy = s.deriv_marker(Marker::Y);
        assert_eq!(dy.coeff(3, 1, 0), BigRational::from_integer(2.into()));
        let e = s.erase_markers();
        assert_eq!(e.coeff(2), BigRational::one());
        assert_eq!(e.coeff(3), BigRational::one());
        let pop = s.marker_popularity(Marker::Y);
        assert_eq!(pop.coeff(3), BigRational::from_integer(2.into()));
        let q = s.div_marker_pow(Marker::Y, 1).unwrap();
        assert_eq!(q.coeff(3, 1, 0), BigRational::one());
        assert!(s.div_marker_pow(Marker::Z, 1).is_err());
    }

    #[test]
    fn division_needs_scalar_constant() {
        let y = MultiSeries::marker(Marker::Y, 4);
        assert_eq!(MultiSeries::one(4).div(&y), Err(SeriesError::NonInvertible));
        // 1 / (1 - x y) = sum x^i y^i
        let d = MultiSeries::monomials(&[(1, 0, 0, 0), (-1, 1, 1, 0)], 4);
        let inv = d.inverse().unwrap();
        for i in 0..=4 {
            assert_eq!(inv.coeff(i, i as u32, 0), BigRational::one());
        }
    }

    #[test]
    fn sqrt_of_square() {
        let a = MultiSeries::monomials(&[(1, 0, 0, 0), (3, 1, 1, 0), (-2, 2, 0, 1)], 8);
        let sq = &a * &a;
        assert_eq!(sq.sqrt().unwrap(), a);
    }

    #[test]
    fn json_round_trip() {
        let s = MultiSeries::monomials(&[(1, 2, 1, 1), (-3, 3, 2, 0)], 4);
        let text = serde_json::to_string(&s).unwrap();
        let back: MultiSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
