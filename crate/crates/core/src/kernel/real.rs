use num_dual::{DualNum, HyperDual64};

use super::SmoothMap;

/// Hyper-dual number carrying a value, two first-order parts and a mixed second-order part.
pub type Dual = HyperDual64;

/// Scalars a [`Formula`](super::Formula) can be evaluated on: plain `f64` for values,
/// [`Dual`] for exact first and second derivatives.
pub trait Real: DualNum<Primitive = f64> + Copy + Send + Sync + 'static {
    /// The real part.
    fn value(self) -> f64;

    /// Embeds a constant.
    fn cst(x: f64) -> Self;

    /// Applies a scalar function `g` given `g`, `g'`, `g''` at `self.value()`.
    fn lift(self, g0: f64, g1: f64, g2: f64) -> Self;

    /// Evaluates a type-erased map on this scalar type.
    fn call(map: &dyn SmoothMap, u: &[Self]) -> Vec<Self>;
}

impl Real for f64 {
    #[inline]
    fn value(self) -> f64 {
        self
    }

    #[inline]
    fn cst(x: f64) -> Self {
        x
    }

    #[inline]
    fn lift(self, g0: f64, _g1: f64, _g2: f64) -> Self {
        g0
    }

    fn call(map: &dyn SmoothMap, u: &[Self]) -> Vec<Self> {
        map.eval(u)
    }
}

impl Real for Dual {
    #[inline]
    fn value(self) -> f64 {
        self.re
    }

    #[inline]
    fn cst(x: f64) -> Self {
        Dual::from_re(x)
    }

    #[inline]
    fn lift(self, g0: f64, g1: f64, g2: f64) -> Self {
        Dual::new(
            g0,
            self.eps1 * g1,
            self.eps2 * g1,
            self.eps1eps2 * g1 + self.eps1 * self.eps2 * g2,
        )
    }

    fn call(map: &dyn SmoothMap, u: &[Self]) -> Vec<Self> {
        map.eval_dual(u)
    }
}
