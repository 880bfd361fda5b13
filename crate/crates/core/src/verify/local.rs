//! Pointwise extrinsic geometry of an immersion: induced metric, normal frame, tangent/normal
//! split of an ambient field and shape operators.

use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};
use crate::fields::AmbientField;
use crate::gallery::ImmersionSpec;
use crate::kernel::{complement_basis, invert_gram, split_with, Jet2, Metric, Scheme};
use crate::tolerances::MIN_SINGULAR;

/// Everything needed at one parameter point.
#[derive(Clone, Debug)]
pub struct LocalGeometry {
    pub u: Vec<f64>,
    pub jet: Jet2,
    /// Container metric at `f(u)`.
    pub metric: Metric,
    /// Induced metric `G = Jᵀ W J`.
    pub gram: DMatrix<f64>,
    pub gram_inv: DMatrix<f64>,
    /// Orthonormal basis of the normal space of `f` inside the ambient tangent space.
    pub normals: Vec<DVector<f64>>,
}

impl LocalGeometry {
    pub fn at(f: &ImmersionSpec, u: &[f64], scheme: Scheme) -> Result<Self> {
        let jet = f.jet(u, scheme)?;
        let p = jet.value.as_slice();
        if p.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite(u.to_vec()));
        }
        let metric = f.ambient.metric_at(p);
        let gram = metric.gram(&jet.jacobian);
        let min_eig = nalgebra::SymmetricEigen::new(gram.clone()).eigenvalues.min();
        if !(min_eig > MIN_SINGULAR * MIN_SINGULAR) {
            return Err(GeomError::SingularGram);
        }
        let gram_inv = invert_gram(&gram)?;
        let want = f.ambient.dim() - f.dim();
        let candidates = f.ambient.tangent_basis(p);
        let normals = complement_basis(&metric, &jet.jacobian, &candidates, want)?;
        Ok(Self { u: u.to_vec(), jet, metric, gram, gram_inv, normals })
    }

    pub fn point(&self) -> &[f64] {
        self.jet.value.as_slice()
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// `f_* X` for chart coefficients `x`.
    pub fn push(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.jet.jacobian * x
    }

    /// `‖x‖_G`.
    pub fn norm_g(&self, x: &DVector<f64>) -> f64 {
        x.dot(&(&self.gram * x)).max(0.0).sqrt()
    }

    /// Splits an ambient vector into chart coefficients of its tangent part and its normal part.
    pub fn split(&self, w: &DVector<f64>) -> Result<(DVector<f64>, DVector<f64>)> {
        split_with(&self.metric, &self.jet.jacobian, w)
    }

    /// Components of `w` along the normal basis.
    pub fn normal_components(&self, w: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.normals.len(),
            self.normals.iter().map(|xi| self.metric.inner(w.as_slice(), xi.as_slice())),
        )
    }

    /// `∂²f/∂u_i∂u_j + Γ(∂_i f, ∂_j f)`: the flat-coordinate covariant second derivative.
    pub fn hessian_term(&self, f: &ImmersionSpec, i: usize, j: usize) -> DVector<f64> {
        let (a, b) = (self.jet.first(i), self.jet.first(j));
        self.jet.second(i, j) + f.ambient.christoffel(self.point(), a.as_slice(), b.as_slice())
    }

    /// `B_ξ` for each normal `ξ`: `(B_ξ)_ij = ⟨∂_ij f + Γ(∂_i f, ∂_j f), ξ⟩`.
    pub fn second_forms(&self, f: &ImmersionSpec) -> Vec<DMatrix<f64>> {
        let m = self.dim();
        let terms: Vec<Vec<DVector<f64>>> =
            (0..m).map(|i| (0..m).map(|j| self.hessian_term(f, i, j)).collect()).collect();
        self.normals
            .iter()
            .map(|xi| DMatrix::from_fn(m, m, |i, j| self.metric.inner(terms[i][j].as_slice(), xi.as_slice())))
            .collect()
    }

    /// `A_ξ = G⁻¹ B_ξ` for each normal `ξ`.
    pub fn shape_operators(&self, f: &ImmersionSpec) -> Vec<DMatrix<f64>> {
        self.second_forms(f).into_iter().map(|b| &self.gram_inv * b).collect()
    }

    /// Spectral norm of the `G`-self-adjoint operator `G⁻¹B`, i.e. of `L⁻¹ B L⁻ᵀ` with `G = LLᵀ`.
    pub fn operator_norm(&self, b: &DMatrix<f64>) -> f64 {
        match self.gram.clone().cholesky() {
            Some(ch) => {
                let l = ch.l();
                let linv = l.clone().try_inverse().unwrap_or_else(|| DMatrix::zeros(l.nrows(), l.ncols()));
                let s = &linv * b * linv.transpose();
                let s = (&s + s.transpose()) * 0.5;
                nalgebra::SymmetricEigen::new(s).eigenvalues.amax()
            }
            None => f64::INFINITY,
        }
    }
}

/// Orthogonal split of `Z(f(u))` along `f`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Coordinates of `Zᵀ` in the chart basis `∂f/∂u_i`.
    pub tangent_coeffs: DVector<f64>,
    pub tangent_ambient: DVector<f64>,
    pub normal_ambient: DVector<f64>,
    pub tangent_norm: f64,
    pub normal_norm: f64,
}

impl Decomposition {
    pub fn from_vector(geo: &LocalGeometry, z: &DVector<f64>) -> Result<Self> {
        let (c, normal) = geo.split(z)?;
        Ok(Self {
            tangent_ambient: geo.push(&c),
            tangent_norm: geo.norm_g(&c),
            normal_norm: geo.metric.norm(normal.as_slice()),
            tangent_coeffs: c,
            normal_ambient: normal,
        })
    }

    pub fn at(geo: &LocalGeometry, field: &AmbientField) -> Result<Self> {
        Self::from_vector(geo, &field.eval(geo.point())?)
    }
}

/// `Zᵀ` and `Z⊥` of `field` along `f` at `u`, with exact derivatives.
pub fn decompose(f: &ImmersionSpec, field: &AmbientField, u: &[f64]) -> Result<Decomposition> {
    check_field(f, field)?;
    let geo = LocalGeometry::at(f, u, Scheme::Analytic)?;
    Decomposition::at(&geo, field)
}

/// `(ξ, A_ξ)` for an orthonormal normal basis at `u`.
pub fn shape_operators(f: &ImmersionSpec, u: &[f64], scheme: Scheme) -> Result<Vec<(DVector<f64>, DMatrix<f64>)>> {
    let geo = LocalGeometry::at(f, u, scheme)?;
    Ok(geo.normals.clone().into_iter().zip(geo.shape_operators(f)).collect())
}

pub(crate) fn check_field(f: &ImmersionSpec, field: &AmbientField) -> Result<()> {
    if field.space() != &f.ambient {
        return Err(GeomError::Precondition(format!(
            "field {} lives on {}, immersion {} lands in {}",
            field.name(),
            field.space(),
            f.name,
            f.ambient
        )));
    }
    Ok(())
}
