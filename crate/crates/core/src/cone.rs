//! Exact feasibility of homogeneous linear inequality systems.
//!
//! With identity global maps every shadowing condition becomes a
//! homogeneous linear inequality in the log-coordinates `l` of the initial
//! section, and "close to the network" means `l < 0`. A path is followed by
//! some trajectory iff the open cone `{ l < 0, w . l > 0 for each w }` is
//! nonempty. Fourier–Motzkin elimination over exact rationals decides this
//! and back-substitution yields a witness.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// `normal . l > 0`, or `>= 0` when not strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub strict: bool,
}

impl Halfspace {
    pub fn strict(normal: Vec<Rat>) -> Self {
        Self { normal, strict: true }
    }

    pub fn closed(normal: Vec<Rat>) -> Self {
        Self { normal, strict: false }
    }

    pub fn holds(&self, l: &[Rat]) -> bool {
        let v: Rat = self.normal.iter().zip(l).map(|(a, b)| a * b).sum();
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeVerdict {
    /// A point of the open cone.
    Feasible(Vec<Rat>),
    /// Empty, but nonempty once the path inequalities are relaxed to `>=`:
    /// the path lives only on a boundary.
    Degenerate,
    Infeasible,
}

impl ConeVerdict {
    pub fn witness(&self) -> Option<&[Rat]> {
        match self {
            ConeVerdict::Feasible(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides `{ l in R^dim : l_i < 0, w . l > 0 for w in forms }`.
pub fn negative_cone(dim: usize, forms: &[Vec<Rat>]) -> ConeVerdict {
    let orthant = (0..dim).map(|i| {
        let mut n = vec![Rat::zero(); dim];
        n[i] = -Rat::one();
        Halfspace::strict(n)
    });
    let strict: Vec<Halfspace> = orthant.clone().chain(forms.iter().cloned().map(Halfspace::strict)).collect();
    if let Some(w) = solve(dim, &strict) {
        return ConeVerdict::Feasible(w);
    }
    let relaxed: Vec<Halfspace> = orthant.chain(forms.iter().cloned().map(Halfspace::closed)).collect();
    match solve(dim, &relaxed) {
        Some(_) => ConeVerdict::Degenerate,
        None => ConeVerdict::Infeasible,
    }
}

/// A point satisfying every halfspace, if one exists.
pub fn solve(dim: usize, system: &[Halfspace]) -> Option<Vec<Rat>> {
    for h in system {
        assert_eq!(h.normal.len(), dim, "halfspace dimension");
    }
    // stages[k] holds the system in variables 0..dim-k before eliminating the last of them
    let mut stages: Vec<Vec<Halfspace>> = vec![dedup(system.to_vec())];
    for var in (0..dim).rev() {
        let current = stages.last().expect("nonempty");
        let mut next = Vec::new();
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for h in current {
            let a = &h.normal[var];
            if a.is_positive() {
                lower.push(h);
            } else if a.is_negative() {
                upper.push(h);
            } else {
                next.push(h.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                // a_lo > 0 > a_up; a_lo * up - a_up * lo cancels the variable
                let (p, q) = (lo.normal[var].clone(), -up.normal[var].clone());
                let normal: Vec<Rat> = lo.normal.iter().zip(&up.normal).map(|(x, y)| x * &q + y * &p).collect();
                next.push(Halfspace { normal, strict: lo.strict || up.strict });
            }
        }
        let next = dedup(next);
        if next.iter().any(|h| trivially_false(h, var)) {
            return None;
        }
        stages.push(next);
    }
    // stages[dim] only has constant rows, all checked true above
    let mut point = vec![Rat::zero(); dim];
    for var in 0..dim {
        let sys = &stages[dim - 1 - var];
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for h in sys {
            let a = &h.normal[var];
            if a.is_zero() {
                continue;
            }
            let rest: Rat = h.normal[..var].iter().zip(&point[..var]).map(|(x, y)| x * y).sum();
            let bound = -rest / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|u| &bound < u) {
                hi = Some(bound);
            }
        }
        point[var] = match (lo, hi) {
            (Some(l), Some(u)) => (l + u) / Rat::from_integer(2.into()),
            (Some(l), None) => l + Rat::one(),
            (None, Some(u)) => u - Rat::one(),
            (None, None) => -Rat::one(),
        };
    }
    debug_assert!(system.iter().all(|h| h.holds(&point)));
    system.iter().all(|h| h.holds(&point)).then_some(point)
}

/// A row whose variables 0..=var are all zero and that fails on constants.
fn trivially_false(h: &Halfspace, var: usize) -> bool {
    h.normal[..var].iter().all(Zero::is_zero) && h.strict
}

/// Scales each row so its first nonzero entry has magnitude 1, then removes
/// duplicates (keeping the strict copy) and rows `0 >= 0`.
fn dedup(rows: Vec<Halfspace>) -> Vec<Halfspace> {
    let mut out: Vec<Halfspace> = Vec::with_capacity(rows.len());
    for mut h in rows {
        let Some(lead) = h.normal.iter().find(|v| !v.is_zero()).map(|v| v.abs()) else {
            if h.strict {
                out.push(h);
            }
            continue;
        };
        for v in h.normal.iter_mut() {
            *v /= &lead;
        }
        match out.iter_mut().find(|o| o.normal == h.normal) {
            Some(o) => o.strict |= h.strict,
            None => out.push(h),
        }
    }
    out
}
