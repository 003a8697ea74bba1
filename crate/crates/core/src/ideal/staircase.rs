//! Combinatorics of monomial ideals: Krull dimension through independent
//! variable sets and vector-space dimension through staircase counting.

use crate::poly::Monomial;

/// Removes generators divisible by another generator and duplicates.
pub fn minimal_generators(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (i, m) in gens.iter().enumerate() {
        let redundant = gens
            .iter()
            .enumerate()
            .any(|(j, g)| j != i && g.divides(m) && (g != m || j < i));
        if !redundant {
            out.push(m.clone());
        }
    }
    out.sort();
    out
}

/// Krull dimension of `k[x]/(gens)`, or `None` when the ideal contains 1.
///
/// A set of variables is independent when no generator is supported inside
/// it; the dimension is the largest such set.
pub fn dimension(gens: &[Monomial], nvars: usize) -> Option<usize> {
    if gens.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    Some(max_independent(&supports, nvars, 0, 0))
}

fn max_independent(supports: &[u64], nvars: usize, var: usize, chosen: u64) -> usize {
    if var == nvars {
        return chosen.count_ones() as usize;
    }
    let with = chosen | (1 << var);
    let best_with = if supports.iter().all(|&s| s & !with != 0) {
        max_independent(supports, nvars, var + 1, with)
    } else {
        0
    };
    // Bound: even taking every remaining variable cannot beat `best_with`.
    if best_with == chosen.count_ones() as usize + (nvars - var) {
        return best_with;
    }
    best_with.max(max_independent(supports, nvars, var + 1, chosen))
}

/// Number of monomials outside the ideal, or `None` when infinite.
pub fn staircase_size(gens: &[Monomial], nvars: usize) -> Option<u64> {
    if gens.iter().any(Monomial::is_one) {
        return Some(0);
    }
    // Finite iff every variable has a pure power among the generators.
    let mut bounds = vec![u32::MAX; nvars];
    for m in gens {
        let support: Vec<usize> = m.support().collect();
        if let [v] = support[..] {
            bounds[v] = bounds[v].min(m.exponent(v));
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut exps = vec![0u32; nvars];
    Some(count_standard(gens, &bounds, &mut exps, 0))
}

fn count_standard(gens: &[Monomial], bounds: &[u32], exps: &mut [u32], var: usize) -> u64 {
    if var == exps.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        exps[var] = e;
        // Prune as soon as the prefix (with zero tail) is already in the ideal;
        // larger exponents stay in it.
        let in_ideal = gens.iter().any(|g| {
            g.exponents()[..=var].iter().zip(&exps[..=var]).all(|(a, b)| a <= b)
                && g.exponents()[var + 1..].iter().all(|&a| a == 0)
        });
        if in_ideal {
            break;
        }
        total += count_standard(gens, bounds, exps, var + 1);
    }
    exps[var] = 0;
    total
}

/// Monomials outside the ideal, listed when finitely many.
pub fn standard_monomials(gens: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    staircase_size(gens, nvars)?;
    let mut out = Vec::new();
    if gens.iter().any(Monomial::is_one) {
        return Some(out);
    }
    let mut bounds = vec![u32::MAX; nvars];
    for m in gens {
        let support: Vec<usize> = m.support().collect();
        if let [v] = support[..] {
            bounds[v] = bounds[v].min(m.exponent(v));
        }
    }
    let mut exps = vec![0u32; nvars];
    list_standard(gens, &bounds, &mut exps, 0, &mut out);
    Some(out)
}

fn list_standard(gens: &[Monomial], bounds: &[u32], exps: &mut [u32], var: usize, out: &mut Vec<Monomial>) {
    if var == exps.len() {
        let m = Monomial::from_exponents(exps);
        if !gens.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        list_standard(gens, bounds, exps, var + 1, out);
    }
    exps[var] = 0;
}
