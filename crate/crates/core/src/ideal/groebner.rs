//! Buchberger's algorithm for global orders and Mora's tangent-cone
//! algorithm for the local order.
//!
//! Both work over any [`Field`]; the rationals are the production path and
//! prime fields serve the modular cross-check.

use crate::error::{Error, Result};
use crate::poly::{Field, Monomial, MonomialOrder};
use crate::poly::sparse::Poly;
use super::staircase::standard_monomials;

/// Counts reduction steps of a single basis computation.
#[derive(Debug)]
pub(crate) struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    fn step(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::ResourceLimit(format!("more than {} reduction steps", self.limit)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn lm<K: Field>(p: &Poly<K>) -> &Monomial {
    p.leading_monomial().expect("nonzero polynomial")
}

fn s_polynomial<K: Field>(f: &Poly<K>, g: &Poly<K>, lcm: &Monomial, ord: &MonomialOrder) -> Poly<K> {
    // f and g are monic.
    let mf = lcm.div(lm(f));
    let mg = lcm.div(lm(g));
    f.mul_term(&K::one(), &mf).sub_mul_term(&K::one(), &mg, g, ord)
}

/// Full reduction of `p` by a set of monic polynomials under a global order.
pub(crate) fn reduce_global<K: Field>(
    p: &Poly<K>,
    basis: &[&Poly<K>],
    ord: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Poly<K>> {
    let nvars = p.nvars();
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, K)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match basis.iter().find(|g| lm(g).divides(&m)) {
            Some(g) => {
                budget.step()?;
                rest = rest.sub_mul_term(&c, &m.div(lm(g)), g, ord);
            }
            None => {
                remainder.push((m, c));
                let tail = rest.terms()[1..].to_vec();
                rest = Poly::from_sorted_terms(nvars, tail);
            }
        }
    }
    Ok(Poly::from_sorted_terms(nvars, remainder))
}

/// Reduced Gröbner basis under a global order. The result is monic and
/// sorted by descending leading monomial; `[1]` for the unit ideal.
pub(crate) fn buchberger<K: Field>(
    gens: &[Poly<K>],
    ord: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Poly<K>>> {
    assert!(ord.is_global());
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(Vec::new()),
    };
    let mut store: Vec<Poly<K>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let unit = || vec![Poly::constant(nvars, K::one())];

    for g in gens.iter().filter(|g| !g.is_zero()) {
        let refs: Vec<&Poly<K>> = active_refs(&store, &active);
        let h = reduce_global(g, &refs, ord, budget)?;
        if h.is_zero() {
            continue;
        }
        if lm(&h).is_one() {
            return Ok(unit());
        }
        store.push(h.monic());
        active.push(true);
        update(&store, &mut active, &mut pairs, store.len() - 1);
    }

    while !pairs.is_empty() {
        let pos = (0..pairs.len())
            .min_by_key(|&k| (pairs[k].lcm.degree(), pairs[k].i, pairs[k].j))
            .unwrap();
        let pair = pairs.swap_remove(pos);
        let s = s_polynomial(&store[pair.i], &store[pair.j], &pair.lcm, ord);
        let refs = active_refs(&store, &active);
        let h = reduce_global(&s, &refs, ord, budget)?;
        if h.is_zero() {
            continue;
        }
        if lm(&h).is_one() {
            return Ok(unit());
        }
        store.push(h.monic());
        active.push(true);
        update(&store, &mut active, &mut pairs, store.len() - 1);
    }

    let mut basis: Vec<Poly<K>> = store
        .into_iter()
        .zip(active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    minimalize(&mut basis);
    // Interreduce tails.
    for k in 0..basis.len() {
        let others: Vec<&Poly<K>> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let head = Poly::from_sorted_terms(nvars, vec![basis[k].terms()[0].clone()]);
        let tail = Poly::from_sorted_terms(nvars, basis[k].terms()[1..].to_vec());
        let reduced_tail = reduce_global(&tail, &others, ord, budget)?;
        basis[k] = head.add(&reduced_tail, ord);
    }
    basis.sort_by(|a, b| ord.cmp(lm(b), lm(a)));
    Ok(basis)
}

fn active_refs<'a, K: Field>(store: &'a [Poly<K>], active: &[bool]) -> Vec<&'a Poly<K>> {
    store.iter().zip(active).filter_map(|(p, a)| a.then_some(p)).collect()
}

/// Drops elements whose leading monomial is divisible by another's.
fn minimalize<K: Field>(basis: &mut Vec<Poly<K>>) {
    let lms: Vec<Monomial> = basis.iter().map(|p| lm(p).clone()).collect();
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|j| j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i))
        })
        .collect();
    let mut k = 0;
    basis.retain(|_| {
        k += 1;
        keep[k - 1]
    });
}

/// Gebauer-Möller installation of the new element `h`.
fn update<K: Field>(store: &[Poly<K>], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
    let hm = lm(&store[h]).clone();
    let candidates: Vec<usize> = (0..h).filter(|&g| active[g]).collect();
    let lcms: Vec<Monomial> = candidates.iter().map(|&g| hm.lcm(lm(&store[g]))).collect();

    let mut kept: Vec<usize> = Vec::new(); // indices into `candidates`
    for a in 0..candidates.len() {
        let coprime = hm.is_coprime(lm(&store[candidates[a]]));
        let dominated = (a + 1..candidates.len()).any(|b| lcms[b].divides(&lcms[a]))
            || kept.iter().any(|&b| lcms[b].divides(&lcms[a]));
        if coprime || !dominated {
            kept.push(a);
        }
    }
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|&a| !hm.is_coprime(lm(&store[candidates[a]])))
        .map(|a| Pair { i: candidates[a], j: h, lcm: lcms[a].clone() })
        .collect();

    pairs.retain(|p| {
        !(hm.divides(&p.lcm)
            && lm(&store[p.i]).lcm(&hm) != p.lcm
            && hm.lcm(lm(&store[p.j])) != p.lcm)
    });
    pairs.extend(new_pairs);

    for g in 0..h {
        if active[g] && hm.divides(lm(&store[g])) {
            active[g] = false;
        }
    }
}

/// Mora's normal form under the local order.
///
/// Returns `h` with `u·f - h` in the ideal for some unit `u`, and `h = 0` or
/// its leading monomial outside the leading ideal of `basis`.
pub(crate) fn mora_normal_form<K: Field>(
    f: &Poly<K>,
    basis: &[Poly<K>],
    ord: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Poly<K>> {
    Ok(mora_normal_form_cut(f, basis, ord, None, None, budget)?.expect("no ceiling"))
}

/// Mora's normal form computed modulo `m^cut`, which must lie in the ideal;
/// `None` once the budget passes `ceiling`.
fn mora_normal_form_cut<K: Field>(
    f: &Poly<K>,
    basis: &[Poly<K>],
    ord: &MonomialOrder,
    cut: Option<u32>,
    ceiling: Option<u64>,
    budget: &mut Budget,
) -> Result<Option<Poly<K>>> {
    let mut extra: Vec<(Poly<K>, u32)> = Vec::new();
    let base_ecarts: Vec<u32> = basis.iter().map(|g| g.ecart()).collect();
    let mut h = f.clone();
    loop {
        let Some(hm) = h.leading_monomial().cloned() else {
            return Ok(Some(h));
        };
        // Minimal ecart among reducers; ties go to the earliest.
        let mut best: Option<(&Poly<K>, u32)> = None;
        for (g, &e) in basis.iter().zip(&base_ecarts).chain(extra.iter().map(|(g, e)| (g, e))) {
            if lm(g).divides(&hm) && best.is_none_or(|(_, be)| e < be) {
                best = Some((g, e));
            }
        }
        let Some((g, ge)) = best else {
            return Ok(Some(h));
        };
        budget.step()?;
        if ceiling.is_some_and(|c| budget.used > c) {
            return Ok(None);
        }
        let g = g.clone();
        let he = h.ecart();
        if ge > he {
            extra.push((h.clone(), he));
        }
        let c = h.leading_coefficient().unwrap().div(g.leading_coefficient().unwrap());
        h = truncate(h.sub_mul_term(&c, &hm.div(lm(&g)), &g, ord), cut);
    }
}

/// Reduction steps Mora may spend without a highest corner before the
/// computation moves on.
const CORNER_PATIENCE: u64 = 150;

/// Standard basis under the local order; minimal, monic, sorted by
/// descending leading monomial. `[1]` when the localized ideal is the unit ideal.
///
/// Mora's algorithm with highest-corner truncation is fast once a corner is
/// known, but without one its normal forms can grow without bound in
/// practice. A run that finds no corner within `CORNER_PATIENCE` steps is
/// followed by [`corner_search`], which settles ideals of finite colength,
/// and then by [`lazard_standard_basis`].
pub(crate) fn local_standard_basis<K: Field>(
    gens: &[Poly<K>],
    ord: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Poly<K>>> {
    if let Some(basis) = mora_standard_basis(gens, ord, budget, Some(CORNER_PATIENCE), None)? {
        return Ok(basis);
    }
    if let Some(basis) = corner_search(gens, ord, budget)? {
        return Ok(basis);
    }
    lazard_standard_basis(gens, ord, budget)
}

/// Standard basis of `I + m^c` for `c = 1, 2, ...`, by Mora truncated at
/// degree `c`. When the staircases of `I + m^{c-1}` and `I + m^c` have the
/// same size, Nakayama gives `m^{c-1} ⊆ I` locally and the basis for `c` is
/// one of `I`. `None` when no such `c` exists up to twice the generator
/// degree (plus slack), which happens in particular for every ideal of
/// infinite colength.
fn corner_search<K: Field>(gens: &[Poly<K>], ord: &MonomialOrder, budget: &mut Budget) -> Result<Option<Vec<Poly<K>>>> {
    let Some(nvars) = gens.first().map(Poly::nvars) else {
        return Ok(None);
    };
    let cap = gens.iter().map(Poly::total_degree).max().unwrap_or(0).max(4) * 2 + 1;
    let mut previous = None;
    for c in 1..=cap {
        let basis = mora_standard_basis(gens, ord, budget, None, Some(c))?.expect("no patience limit");
        if basis.first().is_some_and(|g| lm(g).is_one()) {
            return Ok(Some(basis));
        }
        let lms: Vec<Monomial> = basis.iter().map(|g| lm(g).clone()).collect();
        let size = staircase_below(&lms, nvars, c);
        if previous == Some(size) {
            return Ok(Some(basis));
        }
        previous = Some(size);
    }
    Ok(None)
}

/// Monomials of degree below `d` outside the ideal generated by `lms`.
fn staircase_below(lms: &[Monomial], nvars: usize, d: u32) -> u64 {
    fn walk(lms: &[Monomial], exps: &mut Vec<u32>, nvars: usize, left: u32) -> u64 {
        if exps.len() == nvars {
            let m = Monomial::from_exponents(exps);
            return u64::from(!lms.iter().any(|g| g.divides(&m)));
        }
        let mut total = 0;
        for e in 0..=left {
            exps.push(e);
            total += walk(lms, exps, nvars, left - e);
            exps.pop();
        }
        total
    }
    match d {
        0 => 0,
        _ => walk(lms, &mut Vec::with_capacity(nvars), nvars, d - 1),
    }
}

/// Mora's tangent-cone algorithm; `None` when `patience` steps pass
/// without a highest corner. With `cut = Some(c)` everything is computed
/// modulo `m^c`, giving a standard basis of `I + m^c`.
pub(crate) fn mora_standard_basis<K: Field>(
    gens: &[Poly<K>],
    ord: &MonomialOrder,
    budget: &mut Budget,
    patience: Option<u64>,
    cut: Option<u32>,
) -> Result<Option<Vec<Poly<K>>>> {
    assert!(ord.is_local());
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(Some(Vec::new())),
    };
    let start = budget.used;
    let unit = || Some(vec![Poly::constant(nvars, K::one())]);
    let mut basis: Vec<Poly<K>> = Vec::new();
    for g in gens.iter().map(|g| truncate(g.clone(), cut)).filter(|g| !g.is_zero()) {
        if lm(&g).is_one() {
            return Ok(unit());
        }
        basis.push(g.monic());
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair { i, j, lcm: lm(&basis[i]).lcm(lm(&basis[j])) });
        }
    }
    let mut cut = cut;
    update_corner(&mut basis, &mut cut, nvars);
    while !pairs.is_empty() {
        let pos = (0..pairs.len())
            .min_by_key(|&k| (pairs[k].lcm.degree(), pairs[k].i, pairs[k].j))
            .unwrap();
        let pair = pairs.swap_remove(pos);
        let s = truncate(s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm, ord), cut);
        let ceiling = if cut.is_none() { patience.map(|p| start + p) } else { None };
        let Some(h) = mora_normal_form_cut(&s, &basis, ord, cut, ceiling, budget)? else {
            return Ok(None);
        };
        if h.is_zero() {
            continue;
        }
        if lm(&h).is_one() {
            return Ok(unit());
        }
        let h = h.monic();
        let j = basis.len();
        pairs.extend(basis.iter().enumerate().map(|(i, g)| Pair { i, j, lcm: lm(g).lcm(lm(&h)) }));
        basis.push(h);
        update_corner(&mut basis, &mut cut, nvars);
    }
    minimalize(&mut basis);
    basis.sort_by(|a, b| ord.cmp(lm(b), lm(a)));
    Ok(Some(basis))
}

/// Standard basis under the local order by Lazard's method: a Gröbner basis
/// of the homogenized generators under [`MonomialOrder::homogenized`],
/// dehomogenized. Same output conventions as [`local_standard_basis`].
pub(crate) fn lazard_standard_basis<K: Field>(
    gens: &[Poly<K>],
    ord: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Poly<K>>> {
    let Some(nvars) = gens.first().map(Poly::nvars) else {
        return Ok(Vec::new());
    };
    let hord = MonomialOrder::homogenized(ord);
    let homogenized: Vec<Poly<K>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let d = g.total_degree();
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push(d - m.degree());
                    (Monomial::from_exponents(&e), c.clone())
                })
                .collect();
            Poly::from_terms(nvars + 1, terms, &hord)
        })
        .collect();
    let mut basis: Vec<Poly<K>> = Vec::new();
    for g in buchberger(&homogenized, &hord, budget)? {
        let terms = g
            .into_terms()
            .into_iter()
            .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[..nvars]), c))
            .collect();
        let p = Poly::from_terms(nvars, terms, ord);
        if p.is_zero() {
            continue;
        }
        if lm(&p).is_one() {
            return Ok(vec![Poly::constant(nvars, K::one())]);
        }
        basis.push(p.monic());
    }
    minimalize(&mut basis);
    basis.sort_by(|a, b| ord.cmp(lm(b), lm(a)));
    Ok(basis)
}

fn truncate<K: Field>(p: Poly<K>, cut: Option<u32>) -> Poly<K> {
    match cut {
        Some(d) => p.truncate_degree(d),
        None => p,
    }
}

/// Highest-corner bookkeeping for the local order.
///
/// Once the leading monomials contain every monomial of degree `d`, the
/// ideal contains `m^d` locally (the order refines degree, so Nakayama
/// applies). From then on terms of degree `>= d` are dropped; elements whose
/// leading monomial has degree `>= d` are replaced by that monomial so the
/// leading ideal is unchanged.
fn update_corner<K: Field>(basis: &mut [Poly<K>], cut: &mut Option<u32>, nvars: usize) {
    let lms: Vec<Monomial> = basis.iter().map(|p| lm(p).clone()).collect();
    let Some(standard) = standard_monomials(&lms, nvars) else {
        return;
    };
    let d = standard.iter().map(Monomial::degree).max().map_or(0, |m| m + 1);
    if cut.is_some_and(|c| c <= d) {
        return;
    }
    *cut = Some(d);
    for p in basis.iter_mut() {
        let m = lm(p).clone();
        *p = if m.degree() >= d { Poly::monomial(m, K::one()) } else { p.truncate_degree(d) };
    }
}
