//! Slices transverse to the critical locus, multiplicities of curves.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Singularity;
use crate::error::{Error, Result};
use crate::frame::CoordinateFrame;
use crate::ideal::{Engine, Ideal, LocalDimension, QuotientDimension};
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalSum {
    /// Sum of the Milnor numbers of the slice at its critical points on `Σf`.
    pub sum: u64,
    /// Number of those points.
    pub points: u64,
}

/// Slice `V(z_0 - t)`: points off `Σf` are polar points and are removed by
/// saturating with `J(f)`; what remains is counted with and without
/// multiplicity.
pub(super) fn transversal_milnor_sum(
    engine: &Engine,
    sing: &Singularity,
    frame: &CoordinateFrame,
    t: &Rational,
) -> Result<TransversalSum> {
    if sing.s() != 1 {
        return Err(Error::InvalidInput(format!("transversal slices need s = 1, got s = {}", sing.s())));
    }
    if t.is_zero() {
        return Err(Error::InvalidInput("the slice parameter must be nonzero".into()));
    }
    let f = sing.f();
    let ring = f.ring();
    let level = &frame.coordinate(ring, 0) - &Polynomial::constant(ring, t.clone());
    let slice = Ideal::new(
        ring,
        frame.kernel_basis(1).into_iter().map(|v| f.directional_derivative(&v)).chain([level]),
    );
    let total = match engine.global_quotient_dimension(&slice)? {
        QuotientDimension::Finite(d) => d,
        QuotientDimension::Infinite => {
            return Err(Error::NonIsolatedSlice(format!("the slice z_0 = {t} has non-isolated critical points")))
        }
    };
    let off_sigma = engine.saturation(&slice, sing.jacobian())?;
    let off = engine.global_quotient_dimension(&off_sigma)?.finite().expect("subscheme of a finite scheme");
    let sum = total - off;
    if sum == 0 {
        return Ok(TransversalSum { sum: 0, points: 0 });
    }
    let on_sigma = engine.saturation(&slice, &off_sigma)?;
    let points = engine.count_points(&on_sigma)?;
    Ok(TransversalSum { sum, points })
}

/// Multiplicity at the origin of a curve: `dim 𝒪/(I + (ℓ))` for generic
/// linear `ℓ`. A value is accepted once two samples agree on the minimum.
pub fn multiplicity_at_origin<R: Rng>(engine: &Engine, ideal: &Ideal, rng: &mut R, retries: usize) -> Result<u64> {
    match engine.local_dimension(ideal)? {
        LocalDimension::Dim(1) => {}
        other => return Err(Error::InvalidInput(format!("multiplicity needs a curve germ, got {other:?}"))),
    }
    let ring = ideal.ring();
    let mut samples: Vec<u64> = Vec::new();
    for _ in 0..2 + retries {
        let coeffs: Vec<Rational> =
            (0..ring.nvars()).map(|_| Rational::from_integer(rng.gen_range(-100i64..=100).into())).collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let form = Polynomial::linear_form(ring, &coeffs);
        if let QuotientDimension::Finite(d) = engine.local_quotient_dimension(&ideal.with([form]))? {
            samples.push(d);
        }
        if let Some(&min) = samples.iter().min() {
            if samples.iter().filter(|&&d| d == min).count() >= 2 {
                return Ok(min);
            }
        }
    }
    Err(Error::GenericityFailure(format!("multiplicity samples never agreed: {samples:?}")))
}

/// Rank of the Jacobian matrix of the generators at the origin.
pub(crate) fn jacobian_rank_at_origin(ideal: &Ideal) -> usize {
    let n = ideal.ring().nvars();
    let origin = vec![Rational::zero(); n];
    let rows: Vec<Vec<Rational>> = ideal
        .generators()
        .iter()
        .map(|g| (0..n).map(|i| g.partial_derivative(i).eval(&origin)).collect())
        .collect();
    rank(rows)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &rows[r][col];
            let pivot = rows[r][col..ncols].to_vec();
            for (x, p) in rows[i][col..ncols].iter_mut().zip(&pivot) {
                *x -= &factor * p;
            }
        }
        r += 1;
    }
    r
}

/// Whether `ideal` is a smooth curve germ at the origin: multiplicity one
/// and a Jacobian matrix of full corank one.
pub(crate) fn is_smooth_curve_at_origin<R: Rng>(engine: &Engine, ideal: &Ideal, rng: &mut R) -> Result<bool> {
    if engine.local_dimension(ideal)? != LocalDimension::Dim(1) {
        return Ok(false);
    }
    let mult = multiplicity_at_origin(engine, ideal, rng, 5)?;
    Ok(mult == 1 && jacobian_rank_at_origin(ideal) == ideal.ring().nvars() - 1)
}
