//! Ideals, bases and the ideal-theoretic toolkit built on them.

mod groebner;
pub mod staircase;
mod zero_dim;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::field::CHECK_PRIMES;
use crate::poly::sparse::Poly;
use crate::poly::{Field, Monomial, MonomialOrder, Polynomial, Rational, Ring, Zp};
use groebner::{buchberger, local_standard_basis, mora_normal_form, reduce_global, Budget};

/// Finitely generated ideal of a polynomial ring over the rationals.
///
/// Zero generators are dropped; an empty list is the zero ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        assert!(gens.iter().all(|g| g.ring() == ring), "generator from a different ring");
        Ideal { ring: ring.clone(), gens }
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when some generator is a nonzero constant.
    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(Polynomial::is_constant)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring, other.ring);
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().cloned().chain(extra))
    }

    /// Canonical generator list: monic, deduplicated, sorted.
    fn canonical_generators(&self) -> Vec<Polynomial> {
        let mut keyed: Vec<(u32, usize, String, Polynomial)> = self
            .gens
            .iter()
            .map(|g| {
                let g = g.monic();
                (g.total_degree(), g.num_terms(), g.to_string(), g)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        keyed.dedup_by(|a, b| a.2 == b.2);
        keyed.into_iter().map(|k| k.3).collect()
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A Gröbner basis (global order) or standard basis (local order) of an ideal.
#[derive(Clone, Debug)]
pub struct BasisResult {
    source: Ideal,
    order: MonomialOrder,
    basis: Arc<Vec<Poly<Rational>>>,
    max_steps: u64,
}

impl BasisResult {
    pub fn source(&self) -> &Ideal {
        &self.source
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Global bases are fully reduced; local ones are minimal.
    pub fn reduced(&self) -> bool {
        self.order.is_global()
    }

    pub fn basis(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|p| Polynomial::from_poly(&self.source.ring, p.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|p| p.leading_monomial().cloned()).collect()
    }

    /// True when the (localized, for local orders) ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.leading_monomial().is_some_and(Monomial::is_one))
    }

    /// Normal form of `g`. Under a local order this is Mora's weak normal
    /// form, which is zero exactly for members of the localized ideal.
    pub fn normal_form(&self, g: &Polynomial) -> Result<Polynomial> {
        let mut budget = Budget::new(self.max_steps);
        let p = g.poly_in(&self.order);
        let nf = if self.order.is_global() {
            let refs: Vec<&Poly<Rational>> = self.basis.iter().collect();
            reduce_global(&p, &refs, &self.order, &mut budget)?
        } else {
            mora_normal_form(&p, &self.basis, &self.order, &mut budget)?
        };
        Ok(Polynomial::from_poly(&self.source.ring, nf))
    }

    pub fn contains(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(g)?.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalDimension {
    /// The origin is not on the variety.
    EmptyAtOrigin,
    Dim(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(d) => Some(d),
            QuotientDimension::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(d) => write!(f, "{d}"),
            QuotientDimension::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Limits {
    /// Reduction steps allowed per basis computation.
    pub max_steps: u64,
    /// Rounds of iterated quotients before saturation falls back to elimination.
    pub max_saturation_rounds: usize,
    /// Recompute quotient dimensions modulo a large prime.
    pub modular_check: bool,
    /// Selects the first prime of the modular check.
    pub modular_seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 1_000_000, max_saturation_rounds: 16, modular_check: false, modular_seed: 0 }
    }
}

type MemoKey = (MonomialOrder, Ring, Vec<Polynomial>);

const MEMO_CAPACITY: usize = 8192;

type Memo = HashMap<MemoKey, Arc<Vec<Poly<Rational>>>>;

static MEMO: Lazy<RwLock<Memo>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Entry point for every basis-backed computation.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    limits: Limits,
}

impl Engine {
    pub fn new(limits: Limits) -> Self {
        Engine { limits }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Empties the process-wide basis cache.
    pub fn clear_memo() {
        MEMO.write().clear();
    }

    pub fn standard_basis(&self, ideal: &Ideal, order: &MonomialOrder) -> Result<BasisResult> {
        let gens = ideal.canonical_generators();
        let key: MemoKey = (order.clone(), ideal.ring.clone(), gens);
        if let Some(hit) = MEMO.read().get(&key) {
            return Ok(self.wrap(ideal, order, hit.clone()));
        }
        let polys: Vec<Poly<Rational>> = key.2.iter().map(|g| g.poly_in(order)).collect();
        let mut budget = Budget::new(self.limits.max_steps);
        let basis = if order.is_local() {
            local_standard_basis(&polys, order, &mut budget)?
        } else {
            buchberger(&polys, order, &mut budget)?
        };
        let basis = Arc::new(basis);
        let mut memo = MEMO.write();
        if memo.len() >= MEMO_CAPACITY {
            memo.clear();
        }
        let stored = memo.entry(key).or_insert(basis).clone();
        Ok(self.wrap(ideal, order, stored))
    }

    fn wrap(&self, ideal: &Ideal, order: &MonomialOrder, basis: Arc<Vec<Poly<Rational>>>) -> BasisResult {
        BasisResult { source: ideal.clone(), order: order.clone(), basis, max_steps: self.limits.max_steps }
    }

    /// Reduced Gröbner basis under degrevlex.
    pub fn groebner(&self, ideal: &Ideal) -> Result<BasisResult> {
        self.standard_basis(ideal, &MonomialOrder::degrevlex())
    }

    /// Standard basis under the local order.
    pub fn local_basis(&self, ideal: &Ideal) -> Result<BasisResult> {
        self.standard_basis(ideal, &MonomialOrder::local())
    }

    /// The ideal regenerated by its reduced Gröbner basis.
    pub fn reduce(&self, ideal: &Ideal) -> Result<Ideal> {
        Ok(Ideal::new(&ideal.ring, self.groebner(ideal)?.basis()))
    }

    pub fn contains(&self, ideal: &Ideal, g: &Polynomial) -> Result<bool> {
        self.groebner(ideal)?.contains(g)
    }

    /// `a ⊆ b` in the polynomial ring.
    pub fn is_subset(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        let gb = self.groebner(b)?;
        for g in a.generators() {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ideals_equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        // Reduced bases are unique.
        Ok(self.groebner(a)?.basis() == self.groebner(b)?.basis())
    }

    /// Equality after localizing at the origin.
    pub fn locally_equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        let (la, lb) = (self.local_basis(a)?, self.local_basis(b)?);
        for g in b.generators() {
            if !la.contains(g)? {
                return Ok(false);
            }
        }
        for g in a.generators() {
            if !lb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection of an ideal of `ring.with_front_variables(k)` with the
    /// subring in the original variables.
    fn eliminate_front(&self, ring: &Ring, ext: &Ideal, k: usize) -> Result<Ideal> {
        let order = MonomialOrder::elimination(k);
        let gb = self.standard_basis(ext, &order)?;
        let kept = gb
            .basis
            .iter()
            .filter(|p| !p.involves_front(k))
            .map(|p| Polynomial::from_poly(ring, p.drop_front(k)));
        Ok(Ideal::new(ring, kept))
    }

    fn lift(poly: &Polynomial, ext: &Ring, k: usize) -> Polynomial {
        Polynomial::from_poly(ext, poly.poly().extend_front(k))
    }

    /// `I ∩ J` through `(t·I + (1-t)·J) ∩ k[x]`.
    pub fn intersection(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        assert_eq!(a.ring, b.ring);
        if a.is_zero() || b.is_zero() {
            return Ok(Ideal::zero(&a.ring));
        }
        if a.has_unit_generator() {
            return self.reduce(b);
        }
        if b.has_unit_generator() {
            return self.reduce(a);
        }
        let ext = a.ring.with_front_variables(1);
        let t = Polynomial::variable(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let gens = a
            .gens
            .iter()
            .map(|g| &t * &Self::lift(g, &ext, 1))
            .chain(b.gens.iter().map(|g| &one_minus_t * &Self::lift(g, &ext, 1)));
        self.eliminate_front(&a.ring, &Ideal::new(&ext, gens), 1)
    }

    /// `I : g = { h : h·g ∈ I }`.
    pub fn ideal_quotient(&self, ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::InvalidInput("ideal quotient by the zero polynomial".into()));
        }
        if g.is_constant() || ideal.is_zero() {
            return self.reduce(ideal);
        }
        let meet = self.intersection(ideal, &Ideal::new(&ideal.ring, [g.clone()]))?;
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(g).expect("elements of I ∩ (g) are multiples of g"));
        self.reduce(&Ideal::new(&ideal.ring, gens))
    }

    /// `I : J`, the intersection of `I : g` over the generators of `J`.
    pub fn quotient(&self, ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
        let mut acc = Ideal::unit(&ideal.ring);
        for g in by.generators() {
            let q = self.ideal_quotient(ideal, g)?;
            acc = self.intersection(&acc, &q)?;
        }
        Ok(acc)
    }

    /// `I : J^∞`.
    ///
    /// Iterates `I ← I : J` until stable; past the round budget the
    /// auxiliary-variable route takes over.
    pub fn saturation(&self, ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
        if let Some(trivial) = self.trivial_saturation(ideal, by)? {
            return Ok(trivial);
        }
        let mut current = self.reduce(ideal)?;
        for _ in 0..self.limits.max_saturation_rounds {
            let next = match self.quotient(&current, by) {
                Ok(next) => next,
                Err(Error::ResourceLimit(_)) => break,
                Err(e) => return Err(e),
            };
            if self.ideals_equal(&next, &current)? {
                return Ok(next);
            }
            current = next;
        }
        self.saturation_by_elimination(ideal, by)
    }

    fn trivial_saturation(&self, ideal: &Ideal, by: &Ideal) -> Result<Option<Ideal>> {
        assert_eq!(ideal.ring, by.ring);
        if by.is_zero() {
            return Ok(Some(Ideal::unit(&ideal.ring)));
        }
        if by.has_unit_generator() || ideal.is_zero() {
            return Ok(Some(self.reduce(ideal)?));
        }
        if ideal.has_unit_generator() {
            return Ok(Some(Ideal::unit(&ideal.ring)));
        }
        Ok(None)
    }

    /// `I : J^∞` as the intersection over generators `g` of `(I + (1 - y·g)) ∩ k[x]`.
    pub fn saturation_by_elimination(&self, ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
        if let Some(trivial) = self.trivial_saturation(ideal, by)? {
            return Ok(trivial);
        }
        let ext = ideal.ring.with_front_variables(1);
        let y = Polynomial::variable(&ext, 0);
        let mut acc = Ideal::unit(&ideal.ring);
        for g in by.generators() {
            let inverter = &Polynomial::one(&ext) - &(&y * &Self::lift(g, &ext, 1));
            let gens = ideal.gens.iter().map(|f| Self::lift(f, &ext, 1)).chain([inverter]);
            let sat = self.eliminate_front(&ideal.ring, &Ideal::new(&ext, gens), 1)?;
            acc = self.intersection(&acc, &sat)?;
        }
        Ok(acc)
    }

    /// Krull dimension of the localization at the origin.
    pub fn local_dimension(&self, ideal: &Ideal) -> Result<LocalDimension> {
        if !self.origin_membership(ideal) {
            return Ok(LocalDimension::EmptyAtOrigin);
        }
        let ideal = &strip_linear(ideal);
        let n = ideal.ring.nvars();
        if ideal.is_zero() {
            return Ok(LocalDimension::Dim(n));
        }
        let basis = self.local_basis(ideal)?;
        Ok(match staircase::dimension(&basis.leading_monomials(), n) {
            Some(d) => LocalDimension::Dim(d),
            None => LocalDimension::EmptyAtOrigin,
        })
    }

    /// Krull dimension of `k[x]/I`, `None` for the unit ideal.
    pub fn global_dimension(&self, ideal: &Ideal) -> Result<Option<usize>> {
        let n = ideal.ring.nvars();
        if ideal.is_zero() {
            return Ok(Some(n));
        }
        Ok(staircase::dimension(&self.groebner(ideal)?.leading_monomials(), n))
    }

    /// `dim_k 𝒪/I` for the local ring `𝒪` at the origin.
    pub fn local_quotient_dimension(&self, ideal: &Ideal) -> Result<QuotientDimension> {
        if !self.origin_membership(ideal) {
            return Ok(QuotientDimension::Finite(0));
        }
        let ideal = &strip_linear(ideal);
        if ideal.is_zero() {
            return Ok(QuotientDimension::Infinite);
        }
        let basis = self.local_basis(ideal)?;
        let dim = count(&basis.leading_monomials(), ideal.ring.nvars());
        if self.limits.modular_check {
            self.verify(ideal, &MonomialOrder::local(), dim)?;
        }
        Ok(dim)
    }

    /// `dim_k k[x]/I`.
    pub fn global_quotient_dimension(&self, ideal: &Ideal) -> Result<QuotientDimension> {
        if ideal.is_zero() {
            return Ok(QuotientDimension::Infinite);
        }
        let basis = self.groebner(ideal)?;
        let dim = count(&basis.leading_monomials(), ideal.ring.nvars());
        if self.limits.modular_check {
            self.verify(ideal, &MonomialOrder::degrevlex(), dim)?;
        }
        Ok(dim)
    }

    /// Whether the origin lies on `V(I)`; every generator must vanish there.
    pub fn origin_membership(&self, ideal: &Ideal) -> bool {
        ideal.gens.iter().all(Polynomial::vanishes_at_origin)
    }

    /// Radical of a zero-dimensional ideal: adjoin the squarefree part of
    /// each coordinate's minimal polynomial.
    pub fn zero_dim_radical(&self, ideal: &Ideal) -> Result<Ideal> {
        let dim = match self.global_quotient_dimension(ideal)? {
            QuotientDimension::Finite(d) => d,
            QuotientDimension::Infinite => {
                return Err(Error::InvalidInput("radical requested for a positive-dimensional ideal".into()))
            }
        };
        if dim == 0 {
            return Ok(Ideal::unit(&ideal.ring));
        }
        let gb = self.groebner(ideal)?;
        let ring = ideal.ring.clone();
        let mut extra = Vec::with_capacity(ring.nvars());
        for var in 0..ring.nvars() {
            let minpoly = zero_dim::minimal_polynomial(&ring, var, dim, |p| gb.normal_form(p))?;
            extra.push(zero_dim::to_polynomial(&ring, var, &zero_dim::squarefree_part(&minpoly)));
        }
        self.reduce(&ideal.with(extra))
    }

    /// Number of distinct points of a zero-dimensional variety over the
    /// algebraic closure.
    pub fn count_points(&self, ideal: &Ideal) -> Result<u64> {
        let radical = self.zero_dim_radical(ideal)?;
        Ok(self.global_quotient_dimension(&radical)?.finite().expect("radical of a finite ideal"))
    }

    /// Recomputes a quotient dimension modulo large primes. A disagreement
    /// is retried with the next prime before it is reported.
    fn verify(&self, ideal: &Ideal, order: &MonomialOrder, expected: QuotientDimension) -> Result<()> {
        let polys: Vec<Poly<Rational>> = ideal.canonical_generators().iter().map(|g| g.poly_in(order)).collect();
        let n = ideal.ring.nvars();
        let start = (self.limits.modular_seed % CHECK_PRIMES.len() as u64) as usize;
        let mut mismatches = Vec::new();
        for attempt in 0..CHECK_PRIMES.len() {
            let idx = (start + attempt) % CHECK_PRIMES.len();
            let got = match idx {
                0 => modular_dimension::<{ CHECK_PRIMES[0] }>(&polys, order, n, self.limits.max_steps)?,
                1 => modular_dimension::<{ CHECK_PRIMES[1] }>(&polys, order, n, self.limits.max_steps)?,
                2 => modular_dimension::<{ CHECK_PRIMES[2] }>(&polys, order, n, self.limits.max_steps)?,
                _ => modular_dimension::<{ CHECK_PRIMES[3] }>(&polys, order, n, self.limits.max_steps)?,
            };
            match got {
                // The prime divides a denominator; try another.
                None => continue,
                Some(d) if d == expected => return Ok(()),
                Some(d) => {
                    mismatches.push(format!("p = {}: {d}", CHECK_PRIMES[idx]));
                    if mismatches.len() == 2 {
                        return Err(Error::VerificationMismatch(format!(
                            "rational dimension {expected}, modular {}",
                            mismatches.join(", ")
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Uses the homogeneous linear generators to eliminate variables. The local
/// rings at the origin before and after are isomorphic. One variable is
/// always kept.
fn strip_linear(ideal: &Ideal) -> Ideal {
    let n = ideal.ring.nvars();
    let is_linear = |g: &Polynomial| g.terms().all(|(m, _)| m.degree() == 1);
    let mut rows: Vec<Vec<Rational>> = ideal
        .gens
        .iter()
        .filter(|g| is_linear(g))
        .map(|g| (0..n).map(|i| g.coefficient(&Monomial::variable(n, i))).collect())
        .collect();
    if rows.is_empty() {
        return ideal.clone();
    }
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..n {
        let r = pivots.len();
        if r + 1 == n {
            break;
        }
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
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let names: Vec<&str> = free.iter().map(|&c| ideal.ring.names()[c].as_str()).collect();
    let target = Ring::new(&names).expect("subset of valid names");
    let images: Vec<Polynomial> = (0..n)
        .map(|c| match pivots.iter().position(|&p| p == c) {
            Some(i) => {
                let coeffs: Vec<Rational> = free.iter().map(|&j| -rows[i][j].clone()).collect();
                Polynomial::linear_form(&target, &coeffs)
            }
            None => Polynomial::variable(&target, free.iter().position(|&j| j == c).unwrap()),
        })
        .collect();
    let leftover = rows[pivots.len()..].iter().map(|row| {
        let coeffs: Vec<Rational> = free.iter().map(|&j| row[j].clone()).collect();
        Polynomial::linear_form(&target, &coeffs)
    });
    let gens: Vec<Polynomial> = ideal
        .gens
        .iter()
        .filter(|g| !is_linear(g))
        .map(|g| g.substitute(&target, &images))
        .chain(leftover)
        .collect();
    Ideal::new(&target, gens)
}

fn count(lms: &[Monomial], nvars: usize) -> QuotientDimension {
    match staircase::staircase_size(lms, nvars) {
        Some(d) => QuotientDimension::Finite(d),
        None => QuotientDimension::Infinite,
    }
}

fn modular_dimension<const P: u64>(
    polys: &[Poly<Rational>],
    order: &MonomialOrder,
    nvars: usize,
    max_steps: u64,
) -> Result<Option<QuotientDimension>> {
    let mut reduced: Vec<Poly<Zp<P>>> = Vec::with_capacity(polys.len());
    for p in polys {
        match p.map_coefficients(Zp::<P>::from_rational) {
            Some(q) => reduced.push(q),
            None => return Ok(None),
        }
    }
    // Reduction mod p may change the leading term; restore the order.
    let reduced: Vec<Poly<Zp<P>>> = reduced.into_iter().map(|p| p.resort(order)).collect();
    if reduced.iter().all(|p| p.is_zero()) {
        return Ok(Some(QuotientDimension::Infinite));
    }
    let mut budget = Budget::new(max_steps);
    let basis = if order.is_local() {
        local_standard_basis(&reduced, order, &mut budget)?
    } else {
        buchberger(&reduced, order, &mut budget)?
    };
    let lms: Vec<Monomial> = basis.iter().filter_map(|p| p.leading_monomial().cloned()).collect();
    debug_assert!(basis.iter().all(|p| !p.leading_coefficient().unwrap().is_zero()));
    Ok(Some(count(&lms, nvars)))
}
