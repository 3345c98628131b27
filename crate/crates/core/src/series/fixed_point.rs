use crate::error::SeriesError;

/// What the fixed-point solver needs from an iterate.
pub trait Iterate: Clone {
    fn order(&self) -> usize;
    /// Truncates or zero-pads to `order`.
    fn with_order(&self, order: usize) -> Self;
    /// First index where the two differ, up to the smaller order.
    fn first_difference(&self, other: &Self) -> Option<usize>;
}

impl<A: Iterate, B: Iterate> Iterate for (A, B) {
    fn order(&self) -> usize {
        self.0.order().min(self.1.order())
    }

    fn with_order(&self, order: usize) -> Self {
        (self.0.with_order(order), self.1.with_order(order))
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        match (
            self.0.first_difference(&other.0),
            self.1.first_difference(&other.1),
        ) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Solves `f = map(f)` to order `order`, starting from `zero`.
///
/// The map must gain at least one correct coefficient per application. Pass
/// `t` works at order `min(order, t + 1)`, so early passes are cheap; the
/// operations inside `map` take the smaller operand order, so full-order
/// constants can be mixed with the iterate freely. Fails with
/// [`SeriesError::Stagnation`] when two successive iterates agree on fewer
/// than `t` coefficients at pass `t`.
pub fn solve_fixed_point<S, F>(zero: S, order: usize, mut map: F) -> Result<S, SeriesError>
where
    S: Iterate,
    F: FnMut(&S) -> Result<S, SeriesError>,
{
    let mut cur = zero;
    for t in 0..=order + 2 {
        let w = order.min(t + 1);
        cur = cur.with_order(w);
        let next = map(&cur)?;
        debug_assert!(next.order() >= w, "map lowered the order");
        let next = next.with_order(w);
        let agree = next.first_difference(&cur).unwrap_or(w + 1);
        if agree < t.min(w + 1) {
            return Err(SeriesError::Stagnation {
                iteration: t,
                agreement: agree,
            });
        }
        if w == order && agree > w {
            return Ok(next);
        }
        cur = next;
    }
    Err(SeriesError::NoConvergence(order + 3))
}
