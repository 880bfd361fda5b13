//! Ambient vector fields: `∂/∂t`, the radial field, rotational Killing fields `𝒦_ij`,
//! conformal Killing fields `𝒞_i`, coordinate fields, and pushforwards through atlas maps.
//!
//! Index arguments of `killing`, `conformal_killing` and `coordinate` are 1-based, matching
//! the usual `x_1, …, x_N` naming; names parse as `ddt`, `radial`, `killing`,
//! `killing:i,j`, `ckilling:i`, `coord:i`.

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use serde::Serialize;

use crate::atlas::{pushforward, ConformalMapSpec, Direction};
use crate::error::{GeomError, Result};
use crate::spaces::{AmbientSpace, SpaceKind};

const MEMBERSHIP_SLACK: f64 = 1e-6;

#[derive(Clone)]
pub enum FieldKind {
    /// Unit field along the line factor of a product or warped product.
    Ddt,
    /// `ρ(t) ∂/∂t` on a warped product.
    RhoDdt,
    /// `y ↦ y`.
    Radial,
    /// `x_i ∂_j − x_j ∂_i`.
    Killing(usize, usize),
    /// `½(x_i² − Σ_{j≠i} x_j²) ∂_i + x_i Σ_{j≠i} x_j ∂_j`.
    ConformalKilling(usize),
    /// `∂_i`.
    Coordinate(usize),
    /// `c·Z`.
    Scaled(f64, Box<AmbientField>),
    /// `c·‖y‖^k·Z`.
    NormScaled { coeff: f64, power: i32, inner: Box<AmbientField> },
    /// `Ψ_* Z`, evaluated at the preimage.
    Pushforward { map: Arc<ConformalMapSpec>, base: Box<AmbientField> },
}

/// Where a field comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Provenance {
    Intrinsic,
    Pushforward { map: String, base: String },
}

#[derive(Clone)]
pub struct AmbientField {
    name: String,
    space: AmbientSpace,
    kind: FieldKind,
}

impl fmt::Debug for AmbientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmbientField({} on {})", self.name, self.space)
    }
}

impl fmt::Display for AmbientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl PartialEq for AmbientField {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.space == other.space
    }
}

fn need(cond: bool, what: &str, space: &AmbientSpace) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GeomError::Precondition(format!("{what} is not defined on {space}")))
    }
}

fn is_flat(space: &AmbientSpace) -> bool {
    space.kind() == SpaceKind::Flat
}

impl AmbientField {
    fn new(name: String, space: &AmbientSpace, kind: FieldKind) -> Self {
        Self { name, space: space.clone(), kind }
    }

    pub fn ddt(space: &AmbientSpace) -> Result<Self> {
        need(space.t_index().is_some(), "d/dt", space)?;
        Ok(Self::new("ddt".into(), space, FieldKind::Ddt))
    }

    pub fn rho_ddt(space: &AmbientSpace) -> Result<Self> {
        need(space.warping().is_some(), "rho d/dt", space)?;
        Ok(Self::new("rho_ddt".into(), space, FieldKind::RhoDdt))
    }

    pub fn radial(space: &AmbientSpace) -> Result<Self> {
        need(is_flat(space), "the radial field", space)?;
        Ok(Self::new("radial".into(), space, FieldKind::Radial))
    }

    pub fn killing(space: &AmbientSpace, i: usize, j: usize) -> Result<Self> {
        let n = space.embed_dim();
        need(is_flat(space) && i != j && (1..=n).contains(&i) && (1..=n).contains(&j), "K_ij", space)?;
        Ok(Self::new(format!("killing:{i},{j}"), space, FieldKind::Killing(i, j)))
    }

    /// `𝒦_{N−1,N}` on `ℝ^N`.
    pub fn default_killing(space: &AmbientSpace) -> Result<Self> {
        let n = space.embed_dim();
        need(n >= 2, "K", space)?;
        Self::killing(space, n - 1, n)
    }

    pub fn conformal_killing(space: &AmbientSpace, i: usize) -> Result<Self> {
        need(
            is_flat(space) && space.signature().is_euclidean() && (1..=space.embed_dim()).contains(&i),
            "C_i",
            space,
        )?;
        Ok(Self::new(format!("ckilling:{i}"), space, FieldKind::ConformalKilling(i)))
    }

    pub fn coordinate(space: &AmbientSpace, i: usize) -> Result<Self> {
        need(is_flat(space) && (1..=space.embed_dim()).contains(&i), "d/dx_i", space)?;
        Ok(Self::new(format!("coord:{i}"), space, FieldKind::Coordinate(i)))
    }

    pub fn scaled(self, c: f64) -> Self {
        let space = self.space.clone();
        Self::new(format!("{c}*{}", self.name), &space, FieldKind::Scaled(c, Box::new(self)))
    }

    /// `coeff·‖y‖^power·self`.
    pub fn norm_scaled(self, coeff: f64, power: i32) -> Self {
        let space = self.space.clone();
        Self::new(
            format!("{coeff}*|x|^{power}*{}", self.name),
            &space,
            FieldKind::NormScaled { coeff, power, inner: Box::new(self) },
        )
    }

    pub fn pushforward(map: Arc<ConformalMapSpec>, base: AmbientField) -> Result<Self> {
        if base.space != map.source {
            return Err(GeomError::Precondition(format!(
                "field {} lives on {}, map {} starts on {}",
                base.name, base.space, map.name, map.source
            )));
        }
        let space = map.target.clone();
        Ok(Self::new(
            format!("push[{}]({})", map.name, base.name),
            &space,
            FieldKind::Pushforward { map, base: Box::new(base) },
        ))
    }

    /// Parses `ddt | radial | killing | killing:i,j | ckilling:i | coord:i`.
    pub fn parse(name: &str, space: &AmbientSpace) -> Result<Self> {
        let bad = || GeomError::UnknownName(format!("field {name}"));
        let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match name.split_once(':') {
            None => match name {
                "ddt" => Self::ddt(space),
                "rho_ddt" => Self::rho_ddt(space),
                "radial" => Self::radial(space),
                "killing" => Self::default_killing(space),
                _ => Err(bad()),
            },
            Some(("killing", ij)) => {
                let (i, j) = ij.split_once(',').ok_or_else(bad)?;
                Self::killing(space, int(i)?, int(j)?)
            }
            Some(("ckilling", i)) => Self::conformal_killing(space, int(i)?),
            Some(("coord", i)) => Self::coordinate(space, int(i)?),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn provenance(&self) -> Provenance {
        match &self.kind {
            FieldKind::Pushforward { map, base } => Provenance::Pushforward {
                map: map.name.clone(),
                base: base.name.clone(),
            },
            _ => Provenance::Intrinsic,
        }
    }

    /// The field with any constant or norm-power rescaling stripped.
    pub fn unscaled(&self) -> &AmbientField {
        match &self.kind {
            FieldKind::Scaled(_, inner) | FieldKind::NormScaled { inner, .. } => inner.unscaled(),
            _ => self,
        }
    }

    /// Value of the field at `p`.
    pub fn eval(&self, p: &[f64]) -> Result<DVector<f64>> {
        let res = self.space.membership_residual(p);
        if !(res <= MEMBERSHIP_SLACK) {
            return Err(GeomError::Precondition(format!(
                "point is not in {} (residual {res:e})",
                self.space
            )));
        }
        self.eval_unchecked(p)
    }

    fn eval_unchecked(&self, p: &[f64]) -> Result<DVector<f64>> {
        let d = p.len();
        let unit = |i: usize| DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 });
        Ok(match &self.kind {
            FieldKind::Ddt => unit(self.space.t_index().unwrap()),
            FieldKind::RhoDdt => {
                let rho = self.space.warping().unwrap().eval(p[0]);
                unit(0) * rho
            }
            FieldKind::Radial => DVector::from_column_slice(p),
            FieldKind::Killing(i, j) => {
                let (i, j) = (i - 1, j - 1);
                let mut v = DVector::zeros(d);
                v[j] = p[i];
                v[i] = -p[j];
                v
            }
            FieldKind::ConformalKilling(i) => {
                let i = i - 1;
                let r2: f64 = p.iter().map(|x| x * x).sum();
                let mut v = DVector::from_column_slice(p) * p[i];
                v[i] -= 0.5 * r2;
                v
            }
            FieldKind::Coordinate(i) => unit(i - 1),
            FieldKind::Scaled(c, inner) => inner.eval_unchecked(p)? * *c,
            FieldKind::NormScaled { coeff, power, inner } => {
                let r = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                inner.eval_unchecked(p)? * (coeff * r.powi(*power))
            }
            FieldKind::Pushforward { map, base } => {
                let q = map.apply(p, Direction::Inverse)?;
                let v = base.eval(&q)?;
                pushforward(map, &q, v.as_slice())?
            }
        })
    }
}

/// Free-function form of [`AmbientField::eval`].
pub fn eval_field(field: &AmbientField, p: &[f64]) -> Result<DVector<f64>> {
    field.eval(p)
}

/// `‖Ψ_* Z_src(p) − Z_tgt(Ψ(p))‖ / max(1, ‖Z_tgt(Ψ(p))‖)`, norms in the target metric.
pub fn related_residual(
    map: &ConformalMapSpec,
    field_src: &AmbientField,
    field_tgt: &AmbientField,
    p: &[f64],
) -> Result<f64> {
    let v = field_src.eval(p)?;
    let pushed = pushforward(map, p, v.as_slice())?;
    let q = map.apply(p, Direction::Forward)?;
    let w = field_tgt.eval(&q)?;
    let g = map.target.metric_at(&q);
    let diff = &pushed - &w;
    Ok(g.norm(diff.as_slice()) / g.norm(w.as_slice()).max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceForm;
    use approx::assert_abs_diff_eq;

    #[test]
    fn evaluation_examples() {
        let r2 = AmbientSpace::euclidean(2);
        let r3 = AmbientSpace::euclidean(3);
        let rad = AmbientField::radial(&r2).unwrap();
        assert_eq!(rad.eval(&[3.0, 4.0]).unwrap().as_slice(), &[3.0, 4.0]);

        let k = AmbientField::killing(&r3, 2, 3).unwrap();
        assert_eq!(k.eval(&[5.0, 1.0, 0.0]).unwrap().as_slice(), &[0.0, 0.0, 1.0]);

        let c = AmbientField::conformal_killing(&r2, 1).unwrap();
        let v = c.eval(&[1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(v[0], 0.5);
        assert_abs_diff_eq!(v[1], 0.0);
    }

    #[test]
    fn conformal_killing_matches_component_formula() {
        let r3 = AmbientSpace::euclidean(3);
        let p = [0.3, -1.2, 0.7];
        for i in 1..=3 {
            let v = AmbientField::conformal_killing(&r3, i).unwrap().eval(&p).unwrap();
            let xi = p[i - 1];
            let others: f64 = (0..3).filter(|&j| j != i - 1).map(|j| p[j] * p[j]).sum();
            for j in 0..3 {
                let want = if j == i - 1 { 0.5 * (xi * xi - others) } else { xi * p[j] };
                assert_abs_diff_eq!(v[j], want, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn parse_and_defaults() {
        let r3 = AmbientSpace::euclidean(3);
        assert_eq!(AmbientField::parse("killing", &r3).unwrap().name(), "killing:2,3");
        assert_eq!(AmbientField::parse("killing:1,2", &r3).unwrap().name(), "killing:1,2");
        assert_eq!(AmbientField::parse("ckilling:3", &r3).unwrap().name(), "ckilling:3");
        assert!(AmbientField::parse("ddt", &r3).is_err());
        assert!(AmbientField::parse("killing:1,1", &r3).is_err());
        assert!(AmbientField::parse("bogus", &r3).is_err());
        let prod = AmbientSpace::product(SpaceForm::Sphere, 2);
        let d = AmbientField::parse("ddt", &prod).unwrap();
        assert_eq!(d.eval(&[0.0, 0.0, 1.0, 2.0]).unwrap().as_slice(), &[0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn eval_rejects_points_off_the_space() {
        let s = AmbientSpace::product(SpaceForm::Sphere, 2);
        let d = AmbientField::ddt(&s).unwrap();
        assert!(d.eval(&[1.0, 1.0, 1.0, 0.0]).is_err());
    }
}
