//! Sparse polynomials with terms sorted descending by a caller-supplied order.
//!
//! `Poly` does not remember its order; every operation that needs one takes
//! it explicitly and assumes the inputs are already sorted by it.

use std::cmp::Ordering;

use super::field::Field;
use super::monomial::Monomial;
use super::order::MonomialOrder;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    nvars: usize,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn monomial(m: Monomial, c: K) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Sorts, merges duplicate monomials and drops zero coefficients.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, K)>, ord: &MonomialOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    /// Trusts that `terms` are sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, K)>) -> Self {
        Poly { nvars, terms }
    }

    pub fn resort(&self, ord: &MonomialOrder) -> Self {
        let mut p = self.clone();
        p.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&K> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Total degree minus the degree of the leading monomial.
    pub fn ecart(&self) -> u32 {
        match self.leading_monomial() {
            Some(lm) => self.total_degree() - lm.degree(),
            None => 0,
        }
    }

    /// Keeps only the terms of total degree below `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() < d).cloned().collect(),
        }
    }

    pub fn constant_coefficient(&self) -> K {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.neg())).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial keeps the term order.
    pub fn mul_term(&self, c: &K, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn add(&self, other: &Self, ord: &MonomialOrder) -> Self {
        self.merge(other, &K::one(), &Monomial::one(self.nvars), ord)
    }

    pub fn sub(&self, other: &Self, ord: &MonomialOrder) -> Self {
        self.merge(other, &K::one().neg(), &Monomial::one(self.nvars), ord)
    }

    /// `self - c * m * other`.
    pub fn sub_mul_term(&self, c: &K, m: &Monomial, other: &Self, ord: &MonomialOrder) -> Self {
        self.merge(other, &c.neg(), m, ord)
    }

    /// `self + c * m * other`, merging two sorted term lists.
    fn merge(&self, other: &Self, c: &K, m: &Monomial, ord: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut pending: Option<Monomial> = None;
        while i < self.terms.len() || j < other.terms.len() {
            let om = if j < other.terms.len() {
                if pending.is_none() {
                    pending = Some(other.terms[j].0.mul(m));
                }
                pending.as_ref()
            } else {
                None
            };
            let step = match (self.terms.get(i), om) {
                (Some((sm, _)), Some(om)) => ord.cmp(sm, om),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match step {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mono = pending.take().unwrap();
                    out.push((mono, other.terms[j].1.mul(c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let mono = pending.take().unwrap();
                    let coeff = self.terms[i].1.add(&other.terms[j].1.mul(c));
                    if !coeff.is_zero() {
                        out.push((mono, coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Self, ord: &MonomialOrder) -> Self {
        let mut acc = Self::zero(self.nvars);
        // Multiply by the shorter factor term-by-term.
        let (a, b) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for (m, c) in &a.terms {
            acc = acc.merge(b, c, m, ord);
        }
        acc
    }

    pub fn map_coefficients<L: Field>(&self, f: impl Fn(&K) -> Option<L>) -> Option<Poly<L>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((m.clone(), v));
            }
        }
        Some(Poly { nvars: self.nvars, terms })
    }

    /// Embeds into a ring with `k` new variables in front. Block elimination
    /// orders keep the relative order of the old terms.
    pub fn extend_front(&self, k: usize) -> Self {
        Poly {
            nvars: self.nvars + k,
            terms: self.terms.iter().map(|(m, c)| (m.extend_front(k), c.clone())).collect(),
        }
    }

    /// Drops the first `k` variables; they must not occur.
    pub fn drop_front(&self, k: usize) -> Self {
        debug_assert!(self.terms.iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)));
        Poly {
            nvars: self.nvars - k,
            terms: self.terms.iter().map(|(m, c)| (m.drop_front(k), c.clone())).collect(),
        }
    }

    pub fn involves_front(&self, k: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[..k].iter().any(|&e| e > 0))
    }
}
