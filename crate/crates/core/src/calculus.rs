//! Iterated derivations and the quantitative inequalities they satisfy.
//!
//! Three families of inequalities are checked exhaustively on a finite
//! lattice:
//!
//! * inner power products: with `g = x . -`, `g^i(x) . g^j(x) <= g^(i+j+1)(x)`;
//! * the iterated Leibniz rule: `f^n(a . b) <= join_{i=0..n} f^i(a) . f^(n-i)(b)`;
//! * the descent chain: if `x <= y`, `f <= id` and `f^m(y) <= g(x)`, then
//!   `f^(t(k, m))(y) <= g^k(x)` with `t(k, m) = km + (k-1)(m-1)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    check_jacobi, inner_derivation, Axiom, AxiomReport, CommutatorSemilattice, Derivation, DerivationError,
    LatticeError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalculusError {
    #[error("iteration bound needs k >= 1 and m >= 1, got k = {k}, m = {m}")]
    NonPositive { k: u64, m: u64 },
    #[error("lattice fails the Jacobi inequality at {witness:?}")]
    NotJacobi { witness: Vec<usize> },
    #[error(transparent)]
    Input(#[from] LatticeError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

/// `km + (k-1)(m-1)`, equivalently `2km - k - m + 1`.
pub fn iteration_bound(k: u64, m: u64) -> Result<u64, CalculusError> {
    if k == 0 || m == 0 {
        return Err(CalculusError::NonPositive { k, m });
    }
    Ok(k * m + (k - 1) * (m - 1))
}

/// Applies `f` `n` times to `a`, stopping early at a fixed point.
pub fn iterate(f: &Derivation<'_>, n: u64, a: usize) -> usize {
    iterate_table(f.table(), n, a)
}

pub(crate) fn iterate_table(table: &[usize], n: u64, mut a: usize) -> usize {
    for _ in 0..n {
        let next = table[a];
        if next == a {
            break;
        }
        a = next;
    }
    a
}

/// The orbit `[h^0(a), h^1(a), ..., h^n(a)]` of one element under a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationChain {
    pub base: usize,
    pub map_label: String,
    pub values: Vec<usize>,
    pub names: Vec<String>,
}

impl IterationChain {
    pub fn new(l: &CommutatorSemilattice, table: &[usize], label: &str, base: usize, n: usize) -> Self {
        let mut values = Vec::with_capacity(n + 1);
        values.push(base);
        for i in 0..n {
            values.push(table[values[i]]);
        }
        let names = values.iter().map(|&v| l.name(v).to_owned()).collect();
        Self { base, map_label: label.to_owned(), values, names }
    }
}

fn require_jacobi(l: &CommutatorSemilattice) -> Result<(), CalculusError> {
    let jac = check_jacobi(l);
    match jac.witnesses.into_iter().next() {
        Some(witness) => Err(CalculusError::NotJacobi { witness }),
        None => Ok(()),
    }
}

/// Checks `g^i(x) . g^j(x) <= g^(i+j+1)(x)` for all `i <= max_i`, `j <= max_j`
/// on a Jacobi lattice. Witnesses are `(i, j)` pairs.
pub fn verify_inner_power_products(
    l: &CommutatorSemilattice,
    x: usize,
    max_i: usize,
    max_j: usize,
) -> Result<AxiomReport, CalculusError> {
    l.check_id(x)?;
    require_jacobi(l)?;
    Ok(inner_power_products(l, x, max_i, max_j, usize::MAX))
}

/// Evaluates the inner power product inequality without any precondition;
/// used to probe lattices that are not Jacobi.
pub fn inner_power_products(
    l: &CommutatorSemilattice,
    x: usize,
    max_i: usize,
    max_j: usize,
    cap: usize,
) -> AxiomReport {
    let powers = {
        let mut p = vec![x];
        for k in 0..=max_i + max_j {
            p.push(l.dot(x, p[k]));
        }
        p
    };
    let mut witnesses = Vec::new();
    'outer: for i in 0..=max_i {
        for j in 0..=max_j {
            if !l.le(l.dot(powers[i], powers[j]), powers[i + j + 1]) {
                witnesses.push(vec![i, j]);
                if witnesses.len() >= cap {
                    break 'outer;
                }
            }
        }
    }
    AxiomReport::from_witnesses(Axiom::InnerPowerProduct, witnesses)
}

/// Right-hand side of the iterated Leibniz rule:
/// `join_{i=0..n} f^i(a) . f^(n-i)(b)`.
pub fn leibniz_expansion(f: &Derivation<'_>, a: usize, b: usize, n: u64) -> usize {
    let l = f.lattice();
    (0..=n)
        .map(|i| l.dot(iterate(f, i, a), iterate(f, n - i, b)))
        .reduce(|acc, t| l.join(acc, t))
        .expect("range 0..=n is non-empty")
}

/// Checks `f^n(a . b) <= join_{i=0..n} f^i(a) . f^(n-i)(b)` for every
/// `n <= max_n`. Witnesses are single-element `[n]` lists.
pub fn verify_leibniz_expansion(
    f: &Derivation<'_>,
    a: usize,
    b: usize,
    max_n: u64,
) -> Result<AxiomReport, CalculusError> {
    let l = f.lattice();
    l.check_id(a)?;
    l.check_id(b)?;
    let ab = l.dot(a, b);
    let witnesses = (0..=max_n)
        .filter(|&n| !l.le(iterate(f, n, ab), leibniz_expansion(f, a, b, n)))
        .map(|n| vec![n as usize])
        .collect();
    Ok(AxiomReport::from_witnesses(Axiom::LeibnizExpansion, witnesses))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainHypotheses {
    /// `x <= y`.
    pub x_below_y: bool,
    /// `f^m(y) <= g(x)`.
    pub start_below_g: bool,
    /// `f(a) <= a` for every `a`.
    pub f_below_identity: bool,
}

impl ChainHypotheses {
    pub fn all_hold(&self) -> bool {
        self.x_below_y && self.start_below_g && self.f_below_identity
    }

    /// Name of the first failing hypothesis, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.x_below_y {
            Some("x_below_y")
        } else if !self.f_below_identity {
            Some("f_below_identity")
        } else if !self.start_below_g {
            Some("start_below_g")
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub k: u64,
    pub t_k: u64,
    /// `f^(t_k)(y)`.
    pub lhs: usize,
    pub lhs_name: String,
    /// `g^k(x)`.
    pub rhs: usize,
    pub rhs_name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub x: usize,
    pub x_name: String,
    pub y: usize,
    pub y_name: String,
    pub m: u64,
    pub hypotheses: ChainHypotheses,
    /// True exactly when every hypothesis holds.
    pub valid: bool,
    /// Empty when the report is not valid.
    pub steps: Vec<ChainStep>,
    /// `f^0(y), f^1(y), ...` up to the largest `t_k` checked (or `m`).
    pub f_iterates: IterationChain,
    /// `g^0(x), ..., g^max_k(x)`.
    pub g_iterates: IterationChain,
    /// Whether the last `g^k(x)` is the lattice bottom; set by callers that
    /// expect the chain to terminate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ends_at_bottom: Option<bool>,
}

impl ChainReport {
    /// Valid and every step holds.
    pub fn holds(&self) -> bool {
        self.valid && self.steps.iter().all(|s| s.holds)
    }
}

/// Checks the descent chain `f^(t(k, m))(y) <= g^k(x)` for `k = 1..=max_k`
/// with `g = x . -`. Hypotheses are recorded first; when any fails the
/// report is marked invalid and no steps are evaluated.
pub fn verify_descent_chain(
    f: &Derivation<'_>,
    x: usize,
    y: usize,
    m: u64,
    max_k: u64,
) -> Result<ChainReport, CalculusError> {
    let l = f.lattice();
    l.check_id(x)?;
    l.check_id(y)?;
    iteration_bound(1, m)?;
    require_jacobi(l)?;
    let g = inner_derivation(l, x)?;
    Ok(descent_chain(f.table(), g.table(), l, x, y, m, max_k))
}

/// Descent chain evaluation on raw tables, without verifying that `f` and
/// `g` are derivations or that the lattice is Jacobi.
pub(crate) fn descent_chain(
    f: &[usize],
    g: &[usize],
    l: &CommutatorSemilattice,
    x: usize,
    y: usize,
    m: u64,
    max_k: u64,
) -> ChainReport {
    let hypotheses = ChainHypotheses {
        x_below_y: l.le(x, y),
        start_below_g: l.le(iterate_table(f, m, y), g[x]),
        f_below_identity: f.iter().enumerate().all(|(a, &fa)| l.le(fa, a)),
    };
    let valid = hypotheses.all_hold();
    let mut steps = Vec::new();
    let mut g_power = x;
    let mut f_span = m;
    if valid {
        for k in 1..=max_k {
            g_power = g[g_power];
            let t_k = iteration_bound(k, m).expect("k, m >= 1");
            f_span = t_k;
            let lhs = iterate_table(f, t_k, y);
            steps.push(ChainStep {
                k,
                t_k,
                lhs,
                lhs_name: l.name(lhs).to_owned(),
                rhs: g_power,
                rhs_name: l.name(g_power).to_owned(),
                holds: l.le(lhs, g_power),
            });
        }
    }
    // f <= id in a finite lattice stabilises after at most size steps.
    let f_len = (f_span as usize).min(l.size() + 1);
    ChainReport {
        x,
        x_name: l.name(x).to_owned(),
        y,
        y_name: l.name(y).to_owned(),
        m,
        hypotheses,
        valid,
        steps,
        f_iterates: IterationChain::new(l, f, "f", y, f_len),
        g_iterates: IterationChain::new(l, g, "g", x, max_k as usize),
        ends_at_bottom: None,
    }
}
