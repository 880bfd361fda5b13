//! Explicit immersions with known properties: constant-ratio and principal-direction
//! submanifolds built from parallel families, curves and parallel normal frames, their
//! images under the atlas, and a few classical surfaces.
//!
//! Every constructor returns an [`ImmersionSpec`] carrying the claims it should satisfy.

mod build;
pub mod family;
mod registry;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

pub use build::*;
pub use family::{
    g_inverse, g_inverse_real, BaseCurve, CurveSpec, HypersurfaceFamily, NormalFrame, Profile,
    Projection,
};
pub use registry::{by_name, names, GalleryParams, GALLERY_NAMES};

use crate::error::{GeomError, Result};
use crate::fields::AmbientField;
use crate::kernel::{jacobian, jet2, Jet2, Scheme, SmoothMap};
use crate::spaces::AmbientSpace;
use crate::tolerances::{MEMBERSHIP_TOL, MIN_SINGULAR};
use crate::verify::Grid;

/// Properties an immersion can be declared to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum ClaimKind {
    ConstantRatio,
    PrincipalDirection,
    /// `‖Zᵀ‖` constant.
    TConstant,
    /// `‖Z⊥‖` constant.
    NConstant,
    /// `Z⊥` parallel in the normal connection.
    NormalParallel,
    ConstantGaussCurvature,
}

impl ClaimKind {
    pub fn name(self) -> &'static str {
        match self {
            ClaimKind::ConstantRatio => "cr",
            ClaimKind::PrincipalDirection => "pd",
            ClaimKind::TConstant => "t_constant",
            ClaimKind::NConstant => "n_constant",
            ClaimKind::NormalParallel => "normal_parallel",
            ClaimKind::ConstantGaussCurvature => "gauss",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "cr" => ClaimKind::ConstantRatio,
            "pd" => ClaimKind::PrincipalDirection,
            "t_constant" => ClaimKind::TConstant,
            "n_constant" => ClaimKind::NConstant,
            "normal_parallel" => ClaimKind::NormalParallel,
            "gauss" => ClaimKind::ConstantGaussCurvature,
            _ => return Err(GeomError::UnknownName(format!("property {name}"))),
        })
    }

    /// Whether the property survives conformal changes of the ambient metric.
    pub fn is_conformally_invariant(self) -> bool {
        matches!(self, ClaimKind::ConstantRatio | ClaimKind::PrincipalDirection)
    }
}

/// A declared property; `expected` pins the constant when it is known.
#[derive(Clone, Debug)]
pub struct Claim {
    pub kind: ClaimKind,
    pub field: Option<AmbientField>,
    pub expected: Option<f64>,
}

impl Claim {
    pub fn new(kind: ClaimKind, field: AmbientField, expected: Option<f64>) -> Self {
        Self { kind, field: Some(field), expected }
    }

    pub fn gauss(k: f64) -> Self {
        Self { kind: ClaimKind::ConstantGaussCurvature, field: None, expected: Some(k) }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let Some(z) = &self.field {
            write!(f, "({})", z.name())?;
        }
        if let Some(c) = self.expected {
            write!(f, " = {c}")?;
        }
        Ok(())
    }
}

/// An immersion `f` of a parameter box into an ambient space, with its declared claims.
#[derive(Clone)]
pub struct ImmersionSpec {
    pub name: String,
    /// Per-axis open intervals, already shrunk away from singular points.
    pub domain: Vec<(f64, f64)>,
    pub map: Arc<dyn SmoothMap>,
    pub ambient: AmbientSpace,
    pub claims: Vec<Claim>,
    pub params: BTreeMap<String, f64>,
    /// `c` in `g(∂_s, ∂_s) = c`, `g(∂_s, ∂_{x_i}) = 0` when the first chart axis is polar.
    pub polar_constant: Option<f64>,
}

impl fmt::Debug for ImmersionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ImmersionSpec({} -> {})", self.name, self.ambient)
    }
}

impl ImmersionSpec {
    pub fn new(
        name: impl Into<String>,
        domain: Vec<(f64, f64)>,
        map: Arc<dyn SmoothMap>,
        ambient: AmbientSpace,
    ) -> Result<Self> {
        if map.dim_in() != domain.len() {
            return Err(GeomError::DimensionMismatch { expected: map.dim_in(), got: domain.len() });
        }
        if map.dim_out() != ambient.embed_dim() {
            return Err(GeomError::DimensionMismatch { expected: ambient.embed_dim(), got: map.dim_out() });
        }
        Ok(Self {
            name: name.into(),
            domain,
            map,
            ambient,
            claims: Vec::new(),
            params: BTreeMap::new(),
            polar_constant: None,
        })
    }

    pub fn with_claim(mut self, claim: Claim) -> Self {
        self.claims.push(claim);
        self
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_polar(mut self, c: f64) -> Self {
        self.polar_constant = Some(c);
        self
    }

    /// Dimension `m` of the parameter space.
    pub fn dim(&self) -> usize {
        self.domain.len()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.dim() + 1 == self.ambient.dim()
    }

    pub fn claim(&self, kind: ClaimKind) -> Option<&Claim> {
        self.claims.iter().find(|c| c.kind == kind)
    }

    pub fn in_domain(&self, u: &[f64]) -> bool {
        u.len() == self.dim() && u.iter().zip(&self.domain).all(|(x, (lo, hi))| *lo <= *x && x <= hi)
    }

    /// `f(u)`, checked against the domain, finiteness and ambient membership.
    pub fn eval(&self, u: &[f64]) -> Result<Vec<f64>> {
        if !self.in_domain(u) {
            return Err(GeomError::OutsideDomain(u.to_vec()));
        }
        let p = self.map.eval(u);
        if p.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite(u.to_vec()));
        }
        let scale = p.iter().map(|v| v * v).sum::<f64>().max(1.0);
        if self.ambient.membership_residual(&p) > MEMBERSHIP_TOL * scale {
            return Err(GeomError::Precondition(format!(
                "{} leaves {} at {u:?}",
                self.name, self.ambient
            )));
        }
        Ok(p)
    }

    /// `requested`, or central differences when the map has no exact jet.
    pub fn scheme_for(&self, requested: Scheme) -> Scheme {
        match requested {
            Scheme::Analytic if !self.map.is_analytic() => Scheme::fd_default(),
            other => other,
        }
    }

    pub fn jet(&self, u: &[f64], scheme: Scheme) -> Result<Jet2> {
        if !self.in_domain(u) {
            return Err(GeomError::OutsideDomain(u.to_vec()));
        }
        jet2(&*self.map, u, self.scheme_for(scheme))
    }

    /// Smallest eigenvalue of the induced metric, square-rooted: the smallest singular value
    /// of `df` measured in the ambient metric.
    pub fn min_singular(&self, u: &[f64]) -> Result<f64> {
        let (p, jac) = jacobian(&*self.map, u, self.scheme_for(Scheme::Analytic))?;
        let w = self.ambient.metric_at(p.as_slice());
        let gram = w.gram(&jac);
        let eig = nalgebra::SymmetricEigen::new(gram).eigenvalues;
        Ok(eig.min().max(0.0).sqrt())
    }

    /// Per grid point: whether `df` has full rank (smallest singular value above
    /// [`MIN_SINGULAR`]).
    pub fn regularity_mask(&self, grid: &Grid) -> Vec<bool> {
        grid.points()
            .iter()
            .map(|u| self.min_singular(u).map(|s| s > MIN_SINGULAR).unwrap_or(false))
            .collect()
    }

    /// Fails if any point of a coarse grid is singular or leaves the ambient space.
    pub fn check_regular(&self, per_axis: usize) -> Result<()> {
        let grid = Grid::new(&self.domain, per_axis);
        let mask = self.regularity_mask(&grid);
        let bad = mask.iter().filter(|ok| !**ok).count();
        if bad > 0 {
            return Err(GeomError::Precondition(format!(
                "{} is singular at {bad} of {} sample points",
                self.name,
                mask.len()
            )));
        }
        for u in grid.points() {
            self.eval(&u)?;
        }
        Ok(())
    }

    /// Points of `f` on a grid, in grid order.
    pub fn sample(&self, grid: &Grid) -> Result<Vec<Vec<f64>>> {
        grid.points().iter().map(|u| self.eval(u)).collect()
    }

    /// Induced metric `G = Jᵀ W J` at `u`.
    pub fn induced_metric(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        let (p, jac) = jacobian(&*self.map, u, self.scheme_for(Scheme::Analytic))?;
        Ok(self.ambient.metric_at(p.as_slice()).gram(&jac))
    }
}
