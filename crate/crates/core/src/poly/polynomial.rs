use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{format_rational, Rational};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::sparse::Poly;
use crate::error::{Error, Result};

/// Ordered variable names of a polynomial ring over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidInput(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate variable {n:?}")));
            }
        }
        Ok(Ring { names: names.into() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A ring with fresh variables prepended; used for elimination.
    pub(crate) fn with_front_variables(&self, k: usize) -> Ring {
        let mut names: Vec<String> = Vec::with_capacity(self.nvars() + k);
        let mut i = 0;
        while names.len() < k {
            let candidate = format!("_aux{i}");
            if !self.names.contains(&candidate) {
                names.push(candidate);
            }
            i += 1;
        }
        names.extend(self.names.iter().cloned());
        Ring { names: names.into() }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(","))
    }
}

/// Exact multivariate polynomial over the rationals, stored in canonical
/// (degrevlex-descending) term order.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    ring: Ring,
    poly: Poly<Rational>,
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        for (m, c) in self.poly.terms() {
            m.hash(state);
            c.hash(state);
        }
    }
}

pub(crate) fn canonical_order() -> MonomialOrder {
    MonomialOrder::degrevlex()
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), poly: Poly::zero(ring.nvars()) }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Polynomial { ring: ring.clone(), poly: Poly::constant(ring.nvars(), c) }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn variable(ring: &Ring, var: usize) -> Self {
        assert!(var < ring.nvars());
        Polynomial {
            ring: ring.clone(),
            poly: Poly::monomial(Monomial::variable(ring.nvars(), var), Rational::one()),
        }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        assert!(terms.iter().all(|(m, _)| m.nvars() == ring.nvars()));
        Polynomial { ring: ring.clone(), poly: Poly::from_terms(ring.nvars(), terms, &canonical_order()) }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(ring: &Ring, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::variable(ring.nvars(), i), c.clone()))
            .collect();
        Self::from_terms(ring, terms)
    }

    pub(crate) fn from_poly(ring: &Ring, poly: Poly<Rational>) -> Self {
        debug_assert_eq!(ring.nvars(), poly.nvars());
        let ord = canonical_order();
        Polynomial { ring: ring.clone(), poly: poly.resort(&ord) }
    }

    pub(crate) fn poly(&self) -> &Poly<Rational> {
        &self.poly
    }

    /// Terms resorted for `ord`.
    pub(crate) fn poly_in(&self, ord: &MonomialOrder) -> Poly<Rational> {
        self.poly.resort(ord)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.poly.terms().iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.poly.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.poly.terms().iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.poly
            .terms()
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.poly.total_degree()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.poly.constant_coefficient()
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Leading monomial under `ord`.
    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<Monomial> {
        self.poly.terms().iter().map(|(m, _)| m).max_by(|a, b| ord.cmp(a, b)).cloned()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.ring.nvars(), "variable index out of range");
        let mut terms = Vec::with_capacity(self.poly.len());
        for (m, c) in self.poly.terms() {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[var] -= 1;
            terms.push((d, c * Rational::from_integer(e.into())));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Derivative along the constant vector field `direction`.
    pub fn directional_derivative(&self, direction: &[Rational]) -> Self {
        assert_eq!(direction.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(&self.ring);
        for (i, v) in direction.iter().enumerate() {
            if !v.is_zero() {
                acc = &acc + &self.partial_derivative(i).scale(v);
            }
        }
        acc
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j`.
    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> Self {
        assert_eq!(m.len(), self.ring.nvars());
        let images: Vec<Polynomial> = m.iter().map(|row| Polynomial::linear_form(&self.ring, row)).collect();
        self.substitute(&self.ring, &images)
    }

    /// Substitutes `x_i -> images[i]`, landing in the ring of the images.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        // Cache powers of each image as they are needed.
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        for (mono, c) in self.poly.terms() {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            terms.extend(term.poly.into_terms());
        }
        Polynomial::from_terms(target, terms)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Rational::zero();
        for (m, c) in self.poly.terms() {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let ord = canonical_order();
        let (dm, dc) = divisor.poly.terms()[0].clone();
        let mut rem = self.poly.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.terms().first().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = &c / &dc;
            rem = rem.sub_mul_term(&qc, &qm, &divisor.poly, &ord);
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quotient))
    }

    /// Moves the polynomial into `ring`, which must have the same number of variables.
    pub fn with_ring(&self, ring: &Ring) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial { ring: ring.clone(), poly: self.poly.clone() }
    }

    /// Makes the leading (canonical-order) coefficient 1.
    pub fn monic(&self) -> Self {
        Polynomial { ring: self.ring.clone(), poly: self.poly.monic() }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        Polynomial { ring: self.ring.clone(), poly: self.poly.add(&rhs.poly, &canonical_order()) }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        Polynomial { ring: self.ring.clone(), poly: self.poly.sub(&rhs.poly, &canonical_order()) }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        Polynomial { ring: self.ring.clone(), poly: self.poly.mul(&rhs.poly, &canonical_order()) }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), poly: self.poly.neg() }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms().iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, &e)| {
                    let name = &self.ring.names()[v];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.ring)
    }
}
