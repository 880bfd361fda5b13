//! Solutions of `F' = ρ(F)`: the profile of the Mercator-type map `(x, t) ↦ (F(t), x)`
//! from `Q^n_ε × ℝ` onto a warped product `I ×_ρ Q^n_ε`.
//!
//! Closed forms are used for `sin`, `id`, `exp` and `sqrt2exp`; other warpings (or
//! `force_rk4`) integrate with fixed-step RK4 from the initial condition.

use std::f64::consts::SQRT_2;

use crate::error::{GeomError, Result};
use crate::kernel::Real;
use crate::spaces::Warping;
use crate::tolerances::RK4_STEP;

/// Beyond this magnitude the RK4 solution is declared to have blown up.
const BLOW_UP: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Closed {
    /// `2 arctan(e^{t−c})`.
    Sin,
    /// `e^{t+c}`.
    Identity,
    /// `−ln(c − t/√2)`.
    Exp,
    /// `−ln(c − √2 t)`.
    Sqrt2Exp,
}

/// A solution of `F' = ρ(F)` through `(t0, F0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mercator {
    warping: Warping,
    t0: f64,
    f0: f64,
    closed: Option<(Closed, f64)>,
}

impl Mercator {
    /// The solution with `F(t0) = f0`, which must lie in the interval of `ρ`.
    pub fn from_initial(warping: Warping, t0: f64, f0: f64) -> Result<Self> {
        if !warping.contains(f0) {
            let (lo, hi) = warping.interval();
            return Err(GeomError::OutsideInterval { t: f0, lo, hi });
        }
        let closed = match warping {
            Warping::Sin => Some((Closed::Sin, t0 - (f0 / 2.0).tan().ln())),
            Warping::Identity => Some((Closed::Identity, f0.ln() - t0)),
            Warping::Exp => Some((Closed::Exp, t0 / SQRT_2 + (-f0).exp())),
            Warping::Sqrt2Exp => Some((Closed::Sqrt2Exp, SQRT_2 * t0 + (-f0).exp())),
            _ => None,
        };
        Ok(Self { warping, t0, f0, closed })
    }

    /// The closed-form solution with integration constant `c`.
    pub fn closed_form(warping: Warping, c: f64) -> Result<Self> {
        let (kind, f0) = match warping {
            Warping::Sin => (Closed::Sin, 2.0 * (-c).exp().atan()),
            Warping::Identity => (Closed::Identity, c.exp()),
            Warping::Exp => (Closed::Exp, -c.ln()),
            Warping::Sqrt2Exp => (Closed::Sqrt2Exp, -c.ln()),
            ref w => {
                return Err(GeomError::Precondition(format!(
                    "no closed-form Mercator profile for {}",
                    w.name()
                )))
            }
        };
        if !f0.is_finite() {
            return Err(GeomError::Precondition(format!("constant {c} puts t = 0 outside the domain")));
        }
        Ok(Self { warping, t0: 0.0, f0, closed: Some((kind, c)) })
    }

    /// Drops the closed form and integrates numerically.
    pub fn force_rk4(mut self) -> Self {
        self.closed = None;
        self
    }

    pub fn warping(&self) -> &Warping {
        &self.warping
    }

    pub fn uses_closed_form(&self) -> bool {
        self.closed.is_some()
    }

    /// Maximal interval of existence when known in closed form.
    pub fn maximal_interval(&self) -> Option<(f64, f64)> {
        let (kind, c) = self.closed?;
        Some(match kind {
            Closed::Sin | Closed::Identity => (f64::NEG_INFINITY, f64::INFINITY),
            Closed::Exp => (f64::NEG_INFINITY, c * SQRT_2),
            Closed::Sqrt2Exp => (f64::NEG_INFINITY, c / SQRT_2),
        })
    }

    /// `F(t)`.
    pub fn value(&self, t: f64) -> Result<f64> {
        match self.closed {
            Some((kind, c)) => {
                let v = match kind {
                    Closed::Sin => 2.0 * (t - c).exp().atan(),
                    Closed::Identity => (t + c).exp(),
                    Closed::Exp => -(c - t / SQRT_2).ln(),
                    Closed::Sqrt2Exp => -(c - SQRT_2 * t).ln(),
                };
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(GeomError::BlowUp(t))
                }
            }
            None => self.rk4(t),
        }
    }

    fn rk4(&self, t: f64) -> Result<f64> {
        let rho = |x: f64| self.warping.eval(x);
        let span = t - self.t0;
        let full = (span.abs() / RK4_STEP).floor() as usize;
        let sign = span.signum();
        let mut y = self.f0;
        let mut cur = self.t0;
        let step = |y: f64, h: f64| {
            let k1 = rho(y);
            let k2 = rho(y + 0.5 * h * k1);
            let k3 = rho(y + 0.5 * h * k2);
            let k4 = rho(y + h * k3);
            y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        };
        for _ in 0..full {
            y = step(y, sign * RK4_STEP);
            cur += sign * RK4_STEP;
            if !y.is_finite() || y.abs() > BLOW_UP || !self.warping.contains(y) {
                return Err(GeomError::BlowUp(cur));
            }
        }
        let rest = t - (self.t0 + sign * RK4_STEP * full as f64);
        if rest != 0.0 {
            y = step(y, rest);
        }
        if !y.is_finite() || y.abs() > BLOW_UP || !self.warping.contains(y) {
            return Err(GeomError::BlowUp(t));
        }
        Ok(y)
    }

    /// `F` on a generic scalar; `F' = ρ(F)` and `F'' = ρ'(F)ρ(F)` supply the derivative parts.
    /// Outside the interval of existence the result is NaN.
    pub fn eval<D: Real>(&self, t: D) -> D {
        match self.value(t.value()) {
            Ok(f) => {
                let r = self.warping.eval(f);
                t.lift(f, r, self.warping.derivative(f) * r)
            }
            Err(_) => t.lift(f64::NAN, f64::NAN, f64::NAN),
        }
    }

    /// `F⁻¹(s)`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if !self.warping.contains(s) {
            let (lo, hi) = self.warping.interval();
            return Err(GeomError::OutsideInterval { t: s, lo, hi });
        }
        if let Some((kind, c)) = self.closed {
            return Ok(match kind {
                Closed::Sin => c + (s / 2.0).tan().ln(),
                Closed::Identity => s.ln() - c,
                Closed::Exp => SQRT_2 * (c - (-s).exp()),
                Closed::Sqrt2Exp => (c - (-s).exp()) / SQRT_2,
            });
        }
        // F is strictly increasing, so Newton from t0 with step control converges.
        let mut t = self.t0;
        for _ in 0..100 {
            let f = self.value(t)?;
            let d = self.warping.eval(f);
            let dt = (f - s) / d;
            let dt = dt.clamp(-0.5, 0.5);
            t -= dt;
            if dt.abs() < 1e-14 * t.abs().max(1.0) {
                return Ok(t);
            }
        }
        Err(GeomError::RootFinding(s))
    }

    /// `max |F'(t) − ρ(F(t))|` over `grid`, with `F'` from the five-point stencil on
    /// [`Mercator::value`].
    pub fn ode_residual(&self, grid: &[f64]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &t in grid {
            let h = 1e-4 * t.abs().max(1.0);
            let v = |k: f64| self.value(t + k * h);
            let d = (8.0 * (v(1.0)? - v(-1.0)?) - (v(2.0)? - v(-2.0)?)) / (12.0 * h);
            let rhs = self.warping.value(self.value(t)?)?;
            worst = worst.max((d - rhs).abs());
        }
        Ok(worst)
    }
}

/// `F` on `grid` for the solution through `(t0, f0)`.
pub fn mercator_solve(warping: Warping, t0: f64, f0: f64, grid: &[f64]) -> Result<Vec<f64>> {
    let m = Mercator::from_initial(warping, t0, f0)?;
    grid.iter().map(|&t| m.value(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn sine_profile_values() {
        let m = Mercator::closed_form(Warping::Sin, 0.0).unwrap();
        assert_abs_diff_eq!(m.value(0.0).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.value(1.0).unwrap(), 2.0 * 1f64.exp().atan(), epsilon = 1e-15);
        assert!(m.value(1.0).unwrap() < PI);
        assert_abs_diff_eq!(m.inverse(m.value(0.7).unwrap()).unwrap(), 0.7, epsilon = 1e-13);
    }

    #[test]
    fn closed_forms_agree_with_rk4() {
        for (w, f0, ts) in [
            (Warping::Sin, 1.0, vec![-2.0, -0.3, 0.4, 2.5]),
            (Warping::Identity, 0.5, vec![-1.0, 1.5]),
            (Warping::Exp, 0.2, vec![-2.0, 0.5]),
            (Warping::Sqrt2Exp, -0.5, vec![-1.0, 0.3]),
        ] {
            let exact = Mercator::from_initial(w.clone(), 0.1, f0).unwrap();
            let num = exact.clone().force_rk4();
            for t in ts {
                let a = exact.value(t).unwrap();
                let b = num.value(t).unwrap();
                assert!((a - b).abs() < 1e-10, "{} at {t}: {a} vs {b}", w.name());
            }
        }
    }

    #[test]
    fn cosh_profile_is_inverse_gudermannian() {
        // gd(F) = t for F(0) = 0.
        let m = Mercator::from_initial(Warping::Cosh, 0.0, 0.0).unwrap();
        for t in [-1.2, -0.4, 0.3, 1.1] {
            let f = m.value(t).unwrap();
            assert_abs_diff_eq!(2.0 * (f / 2.0).tanh().atan(), t, epsilon = 1e-11);
        }
        assert!(matches!(m.value(1.6), Err(GeomError::BlowUp(_))));
    }

    #[test]
    fn sinh_profile_and_blow_up() {
        // ln tanh(F/2) = t + ln tanh(1/2) for F(0) = 1; blow-up at -ln tanh(1/2).
        let m = Mercator::from_initial(Warping::Sinh, 0.0, 1.0).unwrap();
        let shift = 0.5f64.tanh().ln();
        for t in [-2.0, -0.5, 0.5] {
            let f = m.value(t).unwrap();
            assert_abs_diff_eq!((f / 2.0).tanh().ln(), t + shift, epsilon = 1e-10);
        }
        assert!(m.value(0.8).is_err());
        assert!(m.ode_residual(&[-1.0, 0.0, 0.6]).unwrap() < 1e-8);
        let s = m.value(0.3).unwrap();
        assert_abs_diff_eq!(m.inverse(s).unwrap(), 0.3, epsilon = 1e-11);
    }

    #[test]
    fn ode_residual_small_for_all_closed_forms() {
        for w in [Warping::Sin, Warping::Identity, Warping::Exp, Warping::Sqrt2Exp] {
            let m = Mercator::closed_form(w, 1.0).unwrap();
            let r = m.ode_residual(&[-1.0, -0.2, 0.3]).unwrap();
            assert!(r < 1e-8, "{r}");
        }
    }

    #[test]
    fn exp_profile_blows_up_at_finite_time() {
        let m = Mercator::closed_form(Warping::Sqrt2Exp, 1.0).unwrap();
        assert_eq!(m.maximal_interval().unwrap().1, 1.0 / SQRT_2);
        assert!(matches!(m.value(0.8), Err(GeomError::BlowUp(_))));
    }

    #[test]
    fn initial_value_outside_interval_is_rejected() {
        assert!(Mercator::from_initial(Warping::Sin, 0.0, 4.0).is_err());
        assert!(Mercator::closed_form(Warping::Cosh, 0.0).is_err());
    }
}
