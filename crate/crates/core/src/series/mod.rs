//! Exact truncated power series and the generating functions built on them.
//!
//! A series of order `N` knows the coefficients of `x^0 .. x^N`. Binary
//! operations return the smaller of the two orders. Coefficients are exact
//! rationals; counting series are checked to be integral before they leave
//! [`gf`].

mod conv;
mod fixed_point;
mod gf;
mod multi;
mod univariate;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SeriesError;

pub use conv::Monomial;
pub use fixed_point::{solve_fixed_point, Iterate};
pub use gf::{
    gf, gf_closed, gf_equation, graded_by_updegree, Grading, GfId, GfValue, CLOSED_FORM_SLACK,
};
pub use multi::{Marker, MultiSeries, Poly};
pub use univariate::TruncatedSeries;

/// Arithmetic shared by the univariate and marker-polynomial series, enough
/// for the Newton iterations below.
pub trait Series: Iterate {
    fn constant(c: BigRational, order: usize) -> Self;
    /// The `x^0` coefficient when it is a plain number.
    fn scalar_constant(&self) -> Option<BigRational>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
    /// Index of the first nonzero coefficient.
    fn valuation(&self) -> Option<usize>;
    /// Exact division by `x^k`; the order drops by `k`.
    fn shift_div_x(&self, k: usize) -> Result<Self, SeriesError>;
}

/// Newton iteration `g <- g + g (1 - b g)`, doubling the number of correct
/// coefficients each round.
pub fn inverse<S: Series>(b: &S) -> Result<S, SeriesError> {
    let c = b.scalar_constant().filter(|c| !c.is_zero());
    let c = c.ok_or(SeriesError::NonInvertible)?;
    let n = b.order();
    let one = BigRational::one();
    let mut g = S::constant(one.clone() / c, 0);
    let mut known = 1;
    while known < n + 1 {
        known = (2 * known).min(n + 1);
        let ord = known - 1;
        let g_ext = g.with_order(ord);
        let err = S::constant(one.clone(), ord).sub(&b.with_order(ord).mul(&g_ext));
        g = g_ext.add(&g_ext.mul(&err));
    }
    Ok(g)
}

/// `a / b` with the order of the shorter operand.
pub fn divide<S: Series>(a: &S, b: &S) -> Result<S, SeriesError> {
    let order = a.order().min(b.order());
    Ok(a.with_order(order).mul(&inverse(&b.with_order(order))?))
}

/// Divides after removing the common power of `x` carried by the
/// denominator. The order drops by that power.
pub fn divide_stripped<S: Series>(num: &S, den: &S) -> Result<S, SeriesError> {
    let v = den.valuation().ok_or(SeriesError::NonInvertible)?;
    divide(&num.shift_div_x(v)?, &den.shift_div_x(v)?)
}

/// Square root of a series with constant term exactly 1, by the coupled
/// Newton iteration `s <- s + g (a - s^2) / 2`, `g <- g + g (1 - s g)`,
/// where `g` tracks `1 / s`.
pub fn sqrt<S: Series>(a: &S) -> Result<S, SeriesError> {
    if a.scalar_constant() != Some(BigRational::one()) {
        return Err(SeriesError::SqrtConstant);
    }
    let n = a.order();
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let mut s = S::constant(one.clone(), 0);
    let mut g = S::constant(one.clone(), 0);
    let mut known = 1;
    while known < n + 1 {
        let next = (2 * known).min(n + 1);
        let ord = next - 1;
        let s_ext = s.with_order(ord);
        let resid = a.with_order(ord).sub(&s_ext.mul(&s_ext));
        s = s_ext.add(&g.with_order(ord).mul(&resid).scale(&half));
        if next < n + 1 {
            // g only needs to be good to the next round's residual valuation.
            let g_ext = g.with_order(ord);
            let err = S::constant(one.clone(), ord).sub(&s.mul(&g_ext));
            g = g_ext.add(&g_ext.mul(&err));
        }
        known = next;
    }
    Ok(s)
}
