//! Critical locus, relative polar and Lê cycles, and the numbers read off
//! from them.
//!
//! Everything is computed in the original coordinates `x`. A frame only
//! supplies the linear forms `z_k` and the derivation directions, so `f` is
//! never rewritten.

mod transversal;

use serde::{Deserialize, Serialize};

pub use transversal::{multiplicity_at_origin, TransversalSum};
pub(crate) use transversal::is_smooth_curve_at_origin;

use crate::error::{Error, Result};
use crate::frame::CoordinateFrame;
use crate::ideal::{Engine, Ideal, LocalDimension, QuotientDimension};
use crate::poly::Polynomial;

/// `J(f) = (∂f/∂x_0, ..., ∂f/∂x_n)`.
pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    check_germ(f)?;
    let ring = f.ring();
    Ok(Ideal::new(ring, (0..ring.nvars()).map(|i| f.partial_derivative(i))))
}

fn check_germ(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotAtOrigin);
    }
    Ok(())
}

/// `dim_0 Σf`; `EmptyAtOrigin` when `f` is smooth at the origin.
pub fn sigma_dim(engine: &Engine, f: &Polynomial) -> Result<LocalDimension> {
    engine.local_dimension(&jacobian_ideal(f)?)
}

/// Milnor number of an isolated singularity.
pub fn milnor_number(engine: &Engine, f: &Polynomial) -> Result<u64> {
    match engine.local_quotient_dimension(&jacobian_ideal(f)?)? {
        QuotientDimension::Finite(mu) => Ok(mu),
        QuotientDimension::Infinite => Err(Error::NonIsolated),
    }
}

/// `γ¹`, `λ⁰` and `τ` of a one-dimensional critical locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveNumbers {
    pub gamma1: u64,
    pub lambda0: u64,
    pub tau: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub s: usize,
    /// Always 0 in a completed record.
    pub dim0_f0: usize,
    pub mu0_f0: u64,
    pub gamma_s_dot_v: u64,
    pub lambda_s: u64,
    pub gamma_is_zero: bool,
    /// `dim 𝒪/(I_Λ + (z_0, ..., z_{s-1}))`, which must equal `lambda_s`.
    pub lambda_path: u64,
    pub curve: Option<CurveNumbers>,
}

/// A singular germ `f` at the origin with its Jacobian ideal and `s = dim_0 Σf`.
#[derive(Clone, Debug)]
pub struct Singularity {
    f: Polynomial,
    jacobian: Ideal,
    s: usize,
}

impl Singularity {
    pub fn new(engine: &Engine, f: &Polynomial) -> Result<Self> {
        let jacobian = jacobian_ideal(f)?;
        match engine.local_dimension(&jacobian)? {
            LocalDimension::EmptyAtOrigin => Err(Error::Nonsingular),
            LocalDimension::Dim(s) => Ok(Singularity { f: f.clone(), jacobian, s }),
        }
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn jacobian(&self) -> &Ideal {
        &self.jacobian
    }

    /// Number of variables, `n + 1`.
    pub fn nvars(&self) -> usize {
        self.f.ring().nvars()
    }

    fn check_frame(&self, frame: &CoordinateFrame) -> Result<()> {
        if frame.dim() != self.nvars() {
            return Err(Error::InvalidInput(format!(
                "frame has dimension {} but f has {} variables",
                frame.dim(),
                self.nvars()
            )));
        }
        Ok(())
    }

    /// `z_0, ..., z_{s-1}`.
    pub fn family_forms(&self, frame: &CoordinateFrame) -> Vec<Polynomial> {
        frame.family_map(self.f.ring(), self.s)
    }

    /// Generators of `I_C = (∂f/∂z_s, ..., ∂f/∂z_n)`.
    pub fn polar_source(&self, frame: &CoordinateFrame) -> Result<Ideal> {
        self.check_frame(frame)?;
        let gens = frame.kernel_basis(self.s).into_iter().map(|v| self.f.directional_derivative(&v));
        Ok(Ideal::new(self.f.ring(), gens))
    }

    /// `μ_0(f_0)` for the slice `f_0 = f|V(z_0, ..., z_{s-1})`.
    pub fn restricted_milnor_number(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<u64> {
        let slice = self.polar_source(frame)?.with(self.family_forms(frame));
        match engine.local_quotient_dimension(&slice)? {
            QuotientDimension::Finite(mu) => Ok(mu),
            QuotientDimension::Infinite => Err(Error::NonIsolatedSlice(
                "the singularity of f restricted to V(z_0, ..., z_{s-1}) is not isolated".into(),
            )),
        }
    }

    /// `I_Γ = I_C : J(f)^∞`, defining the relative polar variety.
    pub fn polar_ideal(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<Ideal> {
        engine.saturation(&self.polar_source(frame)?, &self.jacobian)
    }

    /// `I_Λ = I_C : I_Γ^∞`: the part of `C` carried by the critical locus.
    pub fn le_cycle_ideal(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<Ideal> {
        let polar = self.polar_ideal(engine, frame)?;
        engine.saturation(&self.polar_source(frame)?, &polar)
    }

    pub fn gamma_is_zero(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<bool> {
        Ok(!engine.origin_membership(&self.polar_ideal(engine, frame)?))
    }

    fn sliced_dimension(&self, engine: &Engine, ideal: &Ideal, frame: &CoordinateFrame, what: &str) -> Result<u64> {
        match engine.local_quotient_dimension(&ideal.with(self.family_forms(frame)))? {
            QuotientDimension::Finite(d) => Ok(d),
            QuotientDimension::Infinite => Err(Error::ImproperIntersection(format!(
                "{what} is not cut properly by V(z_0, ..., z_{{s-1}})"
            ))),
        }
    }

    /// `(Γ^s · V(z_0, ..., z_{s-1}))_0`.
    pub fn polar_intersection_number(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<u64> {
        let polar = self.polar_ideal(engine, frame)?;
        self.sliced_dimension(engine, &polar, frame, "the polar variety")
    }

    /// `λ^s_{f,z}(0) = μ_0(f_0) - (Γ^s · V)_0`.
    pub fn le_number_top(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<u64> {
        let mu = self.restricted_milnor_number(engine, frame)?;
        let gamma = self.polar_intersection_number(engine, frame)?;
        difference(mu, gamma)
    }

    /// `γ¹`, `λ⁰`, `τ` with Teissier's identity `τ = λ⁰ + γ¹` enforced.
    pub fn curve_case_numbers(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<CurveNumbers> {
        let polar = self.polar_ideal(engine, frame)?;
        self.curve_numbers_from(engine, frame, &polar)
    }

    fn curve_numbers_from(&self, engine: &Engine, frame: &CoordinateFrame, polar: &Ideal) -> Result<CurveNumbers> {
        if self.s != 1 {
            return Err(Error::InvalidInput(format!("curve-case numbers need s = 1, got s = {}", self.s)));
        }
        let cut = |g: Polynomial, what: &str| -> Result<u64> {
            match engine.local_quotient_dimension(&polar.with([g]))? {
                QuotientDimension::Finite(d) => Ok(d),
                QuotientDimension::Infinite => {
                    Err(Error::ImproperIntersection(format!("the polar curve lies in V({what})")))
                }
            }
        };
        let gamma1 = cut(frame.coordinate(self.f.ring(), 0), "z_0")?;
        let lambda0 = cut(frame.partial(&self.f, 0), "∂f/∂z_0")?;
        let tau = cut(self.f.clone(), "f")?;
        if tau != lambda0 + gamma1 {
            return Err(Error::ConsistencyFailure(format!(
                "tau = {tau} but lambda0 + gamma1 = {lambda0} + {gamma1}"
            )));
        }
        Ok(CurveNumbers { gamma1, lambda0, tau })
    }

    /// All frame-dependent numbers, with the two-path check
    /// `dim(I_Γ + lin) + dim(I_Λ + lin) = μ_0(f_0)` and, for `s = 1`, Teissier's identity.
    pub fn invariant_record(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<InvariantRecord> {
        let mu0_f0 = self.restricted_milnor_number(engine, frame)?;
        if self.s == 0 {
            return Ok(InvariantRecord {
                s: 0,
                dim0_f0: 0,
                mu0_f0,
                gamma_s_dot_v: 0,
                lambda_s: mu0_f0,
                gamma_is_zero: true,
                lambda_path: mu0_f0,
                curve: None,
            });
        }
        let polar = self.polar_ideal(engine, frame)?;
        let gamma_is_zero = !engine.origin_membership(&polar);
        let gamma_s_dot_v = if gamma_is_zero {
            0
        } else {
            self.sliced_dimension(engine, &polar, frame, "the polar variety")?
        };
        let lambda_s = difference(mu0_f0, gamma_s_dot_v)?;
        let le = engine.saturation(&self.polar_source(frame)?, &polar)?;
        let lambda_path = self.sliced_dimension(engine, &le, frame, "the Lê cycle")?;
        if lambda_path != lambda_s {
            return Err(Error::ConsistencyFailure(format!(
                "Lê cycle gives {lambda_path} but mu0(f0) - (Gamma.V) = {lambda_s}"
            )));
        }
        let curve = if self.s == 1 { Some(self.curve_numbers_from(engine, frame, &polar)?) } else { None };
        Ok(InvariantRecord { s: self.s, dim0_f0: 0, mu0_f0, gamma_s_dot_v, lambda_s, gamma_is_zero, lambda_path, curve })
    }

    /// `z_0` is prepolar when `dim_0 Σ(f|V(z_0)) ≤ s - 1`.
    pub fn prepolar_check(&self, engine: &Engine, frame: &CoordinateFrame) -> Result<bool> {
        self.check_frame(frame)?;
        if self.s == 0 {
            return Ok(true);
        }
        let ring = self.f.ring();
        let gens = frame
            .kernel_basis(1)
            .into_iter()
            .map(|v| self.f.directional_derivative(&v))
            .chain([frame.coordinate(ring, 0)]);
        Ok(match engine.local_dimension(&Ideal::new(ring, gens))? {
            LocalDimension::EmptyAtOrigin => true,
            LocalDimension::Dim(d) => d < self.s,
        })
    }

    /// Sum of Milnor numbers of `f|V(z_0 - t)` over its critical points on
    /// `Σf`, together with the number of those points.
    pub fn transversal_milnor_sum(
        &self,
        engine: &Engine,
        frame: &CoordinateFrame,
        t: &crate::poly::Rational,
    ) -> Result<TransversalSum> {
        self.check_frame(frame)?;
        transversal::transversal_milnor_sum(engine, self, frame, t)
    }

    /// `transversal_milnor_sum` at each parameter value.
    pub fn mu_constancy_scan(
        &self,
        engine: &Engine,
        frame: &CoordinateFrame,
        params: &[crate::poly::Rational],
    ) -> Result<Vec<(crate::poly::Rational, u64)>> {
        params
            .iter()
            .map(|t| Ok((t.clone(), self.transversal_milnor_sum(engine, frame, t)?.sum)))
            .collect()
    }
}

fn difference(mu: u64, gamma: u64) -> Result<u64> {
    if gamma > mu {
        return Err(Error::NegativeLeNumber(mu as i64 - gamma as i64));
    }
    Ok(mu - gamma)
}
