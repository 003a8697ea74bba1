//! Linear coordinate frames `z = A x`.
//!
//! Only the linear part of a coordinate system matters for every invariant
//! computed here, so a frame is just an invertible rational matrix. Row `k`
//! of `A` is the linear form `z_k`; column `j` of `A^{-1}` is the direction
//! of `∂/∂z_j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::field::{format_rational, parse_rational, Rational};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateFrame {
    forms: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl CoordinateFrame {
    /// Frame whose coordinate `z_k` is row `k` of `matrix`.
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let inverse = invert(&matrix)?;
        Ok(CoordinateFrame { forms: matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        let id: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        CoordinateFrame { forms: id.clone(), inverse: id }
    }

    /// Frame given by the substitution `x_i -> sum_j m[i][j] z_j`.
    pub fn from_substitution(m: Vec<Vec<Rational>>) -> Result<Self> {
        let forms = invert(&m)?;
        Ok(CoordinateFrame { forms, inverse: m })
    }

    /// Random integer matrix with entries in `[-range, range]`, redrawn until invertible.
    pub fn random<R: Rng>(n: usize, range: i64, rng: &mut R) -> Self {
        loop {
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(-range..=range).into())).collect())
                .collect();
            if let Ok(frame) = CoordinateFrame::new(m) {
                return frame;
            }
        }
    }

    /// Parses rows separated by `;`, entries by `,`, e.g. `1,0;1/2,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| parse_rational(e).ok_or_else(|| Error::InvalidInput(format!("bad frame entry {e:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("frame matrix must be square".into()));
        }
        CoordinateFrame::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    pub fn inverse(&self) -> &[Vec<Rational>] {
        &self.inverse
    }

    pub fn matrix_strings(&self) -> Vec<Vec<String>> {
        self.forms.iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }

    /// The linear form `z_k` in the original coordinates.
    pub fn coordinate(&self, ring: &Ring, k: usize) -> Polynomial {
        Polynomial::linear_form(ring, &self.forms[k])
    }

    /// `z_0, ..., z_{s-1}`: the components of the family map.
    pub fn family_map(&self, ring: &Ring, s: usize) -> Vec<Polynomial> {
        (0..s).map(|k| self.coordinate(ring, k)).collect()
    }

    /// Direction of `∂/∂z_j`, rescaled to a primitive integer vector.
    ///
    /// Rescaling a generator does not change any ideal it generates.
    pub fn direction(&self, j: usize) -> Vec<Rational> {
        let col: Vec<Rational> = self.inverse.iter().map(|row| row[j].clone()).collect();
        primitive(&col)
    }

    /// Primitive integer basis of the common kernel of `z_0, ..., z_{s-1}`.
    ///
    /// It spans the same directions as columns `s..` of `A^{-1}`, so the
    /// derivatives along it generate the same ideal, with much smaller
    /// coefficients.
    pub fn kernel_basis(&self, s: usize) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut rows: Vec<Vec<Rational>> = self.forms[..s].to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let lead = rows[r][col].clone();
            for x in rows[r].iter_mut() {
                *x = &*x / &lead;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    let pivot = rows[r].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot) {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); n];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -rows[i][free].clone();
                }
                primitive(&v)
            })
            .collect()
    }

    /// `∂f/∂z_j` up to a nonzero scalar.
    pub fn partial(&self, f: &Polynomial, j: usize) -> Polynomial {
        f.directional_derivative(&self.direction(j))
    }

    /// `∂f/∂z_j` exactly.
    pub fn exact_partial(&self, f: &Polynomial, j: usize) -> Polynomial {
        let col: Vec<Rational> = self.inverse.iter().map(|row| row[j].clone()).collect();
        f.directional_derivative(&col)
    }

    /// `z = B (A x)`: coordinates `B` applied on top of this frame.
    pub fn compose(&self, b: &CoordinateFrame) -> CoordinateFrame {
        let forms = matmul(&b.forms, &self.forms);
        let inverse = matmul(&self.inverse, &b.inverse);
        CoordinateFrame { forms, inverse }
    }
}

/// `f` written in the frame's coordinates: `f(A^{-1} z)`.
pub fn apply_frame(f: &Polynomial, frame: &CoordinateFrame) -> Result<Polynomial> {
    if frame.dim() != f.ring().nvars() {
        return Err(Error::InvalidInput(format!(
            "frame has dimension {} but the ring has {} variables",
            frame.dim(),
            f.ring().nvars()
        )));
    }
    Ok(f.substitute_linear(frame.inverse()))
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        acc += &a[i][k] * &bk[j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse over the rationals.
pub fn invert(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("frame matrix must be square and nonempty".into()));
    }
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = CoordinateFrame::identity(n).forms;
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularFrame)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] -= t;
                let t = &factor * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Ok(inv)
}

/// Clears denominators and divides out the content.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    // Fix the sign so the first nonzero entry is positive.
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

/// Serializable frame description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameRows(pub Vec<Vec<String>>);

impl From<&CoordinateFrame> for FrameRows {
    fn from(f: &CoordinateFrame) -> Self {
        FrameRows(f.matrix_strings())
    }
}
