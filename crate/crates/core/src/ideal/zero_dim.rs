//! Zero-dimensional ideals: minimal polynomials of coordinates and the
//! radical via squarefree parts (Seidenberg's lemma).

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::poly::{Monomial, Polynomial, Rational, Ring};

/// Univariate polynomial, coefficients from the constant term upwards.
pub(crate) type Univariate = Vec<Rational>;

fn trim(mut p: Univariate) -> Univariate {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rational]) -> Univariate {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
}

/// Remainder and quotient of `a` by nonzero `b`.
fn div_rem(a: &[Rational], b: &[Rational]) -> (Univariate, Univariate) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[shift + i] -= t;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: Univariate) -> Univariate {
    match p.last().cloned() {
        Some(l) if !l.is_one() => p.into_iter().map(|c| c / &l).collect(),
        _ => p,
    }
}

pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> Univariate {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// `p / gcd(p, p')`, monic.
pub(crate) fn squarefree_part(p: &[Rational]) -> Univariate {
    let g = gcd(p, &derivative(p));
    monic(div_rem(p, &g).0)
}

/// Monic minimal polynomial of `x_var` modulo an ideal, given its normal
/// form map. The quotient must have dimension at most `bound`.
pub(crate) fn minimal_polynomial(
    ring: &Ring,
    var: usize,
    bound: u64,
    normal_form: impl Fn(&Polynomial) -> Result<Polynomial>,
) -> Result<Univariate> {
    let x = Polynomial::variable(ring, var);
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    // Echelon rows: (pivot column, vector, combination of powers).
    let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut power = Polynomial::one(ring);
    for k in 0..=bound as usize + 1 {
        let nf = normal_form(&power)?;
        let mut vec: Vec<Rational> = vec![Rational::zero(); index.len()];
        for (m, c) in nf.terms() {
            let next = index.len();
            let i = *index.entry(m.clone()).or_insert(next);
            if i >= vec.len() {
                vec.resize(i + 1, Rational::zero());
            }
            vec[i] = c.clone();
        }
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (pivot, row, rc) in &rows {
            let c = vec.get(*pivot).cloned().unwrap_or_else(Rational::zero);
            if c.is_zero() {
                continue;
            }
            for (i, r) in row.iter().enumerate() {
                if i >= vec.len() {
                    vec.resize(i + 1, Rational::zero());
                }
                vec[i] -= &c * r;
            }
            for (i, r) in rc.iter().enumerate() {
                combo[i] -= &c * r;
            }
        }
        match vec.iter().position(|c| !c.is_zero()) {
            None => return Ok(monic(trim(combo))),
            Some(p) => {
                let lead = vec[p].clone();
                let row: Vec<Rational> = vec.iter().map(|c| c / &lead).collect();
                let rc: Vec<Rational> = combo.iter().map(|c| c / &lead).collect();
                // Keep existing rows reduced against the new pivot.
                for (_, other, oc) in rows.iter_mut() {
                    let c = other.get(p).cloned().unwrap_or_else(Rational::zero);
                    if c.is_zero() {
                        continue;
                    }
                    if other.len() < row.len() {
                        other.resize(row.len(), Rational::zero());
                    }
                    for (i, r) in row.iter().enumerate() {
                        other[i] -= &c * r;
                    }
                    if oc.len() < rc.len() {
                        oc.resize(rc.len(), Rational::zero());
                    }
                    for (i, r) in rc.iter().enumerate() {
                        oc[i] -= &c * r;
                    }
                }
                rows.push((p, row, rc));
            }
        }
        power = &power * &x;
    }
    unreachable!("powers of a variable are dependent in a quotient of dimension {bound}")
}

pub(crate) fn to_polynomial(ring: &Ring, var: usize, p: &[Rational]) -> Polynomial {
    let terms = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mut e = vec![0u32; ring.nvars()];
            e[var] = k as u32;
            (Monomial::from_exponents(&e), c.clone())
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}
