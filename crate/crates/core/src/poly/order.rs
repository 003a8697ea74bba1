//! Monomial orderings.
//!
//! Global orders are well-orders and drive Buchberger's algorithm. The local
//! order ranks `1` above every variable, so a standard basis under it
//! describes the localization at the origin.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    /// Graded reverse lexicographic.
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic: lower total degree is larger.
    LocalNegDegRevLex,
    /// Product order eliminating the first `block` variables; each block is
    /// compared by degrevlex.
    Elimination { block: usize },
    /// Total degree first, then the local order on all but the last
    /// variable, which homogenizes.
    Homogenized,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Position `i` of the compared vector holds exponent `perm[i]`.
    perm: Option<Arc<[usize]>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::GlobalDegRevLex, perm: None }
    }

    pub fn local() -> Self {
        MonomialOrder { kind: OrderKind::LocalNegDegRevLex, perm: None }
    }

    pub fn elimination(block: usize) -> Self {
        MonomialOrder { kind: OrderKind::Elimination { block }, perm: None }
    }

    /// Global order on `K[x, t]` whose standard bases of homogenized
    /// generators dehomogenize to standard bases under `local`.
    pub fn homogenized(local: &MonomialOrder) -> Self {
        assert!(local.is_local());
        let perm = local.perm.as_ref().map(|p| p.iter().copied().chain([p.len()]).collect());
        MonomialOrder { kind: OrderKind::Homogenized, perm }
    }

    /// Same kind with variables compared in the order given by `perm`.
    ///
    /// Panics unless `perm` is a permutation of `0..perm.len()`.
    pub fn with_permutation(mut self, perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        self.perm = Some(perm.into());
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_global(&self) -> bool {
        !matches!(self.kind, OrderKind::LocalNegDegRevLex)
    }

    pub fn is_local(&self) -> bool {
        !self.is_global()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.perm {
            None => self.cmp_exps(a.exponents(), b.exponents()),
            Some(p) => {
                let pa: Vec<u32> = p.iter().map(|&i| a.exponent(i)).collect();
                let pb: Vec<u32> = p.iter().map(|&i| b.exponent(i)).collect();
                self.cmp_exps(&pa, &pb)
            }
        }
    }

    fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::GlobalDegRevLex => degrevlex(a, b),
            OrderKind::LocalNegDegRevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                db.cmp(&da).then_with(|| revlex_tie(a, b))
            }
            OrderKind::Elimination { block } => {
                let k = block.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
            OrderKind::Homogenized => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                let n = a.len() - 1;
                da.cmp(&db).then_with(|| a[n].cmp(&b[n])).then_with(|| revlex_tie(&a[..n], &b[..n]))
            }
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| revlex_tie(a, b))
}

/// Among equal degrees, the monomial with the smaller exponent in the last
/// differing variable is larger.
fn revlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.perm {
            None => write!(f, "{:?}", self.kind),
            Some(p) => write!(f, "{:?}{:?}", self.kind, p),
        }
    }
}
