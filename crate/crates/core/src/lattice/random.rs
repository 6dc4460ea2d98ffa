//! Seeded generation of small commutator semilattices.
//!
//! The carrier is a union-closed family of subsets of a small ground set
//! (bitmasks), which makes the join axioms hold by construction. The dot
//! table is sampled on pairs of join-irreducible elements, extended to the
//! whole carrier by joins, and then rejected unless it passes the checks.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Axiom, AxiomChecker, CommutatorSemilattice};

const MAX_ATTEMPTS: usize = 2_000;
const GROUND_BITS: u64 = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerationError {
    #[error("lattice size must be at least 1")]
    ZeroSize,
    #[error("size {0} too large for the generator (max 48)")]
    TooLarge(usize),
    #[error("no valid dot table after {attempts} attempts; first failing axiom: {axiom:?}")]
    AttemptsExhausted { attempts: usize, axiom: Axiom },
}

pub fn random_commutator_semilattice(
    seed: u64,
    size: usize,
    enforce_jacobi: bool,
) -> Result<CommutatorSemilattice, GenerationError> {
    if size == 0 {
        return Err(GenerationError::ZeroSize);
    }
    if size > 48 {
        return Err(GenerationError::TooLarge(size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = union_closed_family(&mut rng, size);
    let n = family.len();
    let index: HashMap<u64, usize> = family.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            join[a * n + b] = index[&(family[a] | family[b])];
        }
    }
    let subset = |a: usize, b: usize| family[a] & !family[b] == 0;
    let irreducible: Vec<usize> = (1..n)
        .filter(|&a| {
            let below = (0..n).filter(|&b| b != a && subset(b, a)).fold(0u64, |acc, b| acc | family[b]);
            below != family[a]
        })
        .collect();
    let names: Vec<String> = family.iter().map(|&s| set_name(s)).collect();
    let checker = AxiomChecker::with_cap(1);

    let mut first_failure = None;
    for _ in 0..MAX_ATTEMPTS {
        let mut base = HashMap::new();
        for (pi, &p) in irreducible.iter().enumerate() {
            for &q in &irreducible[pi..] {
                let common: Vec<usize> = (0..n).filter(|&z| subset(z, p) && subset(z, q)).collect();
                let pick = if rng.gen_bool(0.5) { 0 } else { common[rng.gen_range(0..common.len())] };
                base.insert((p, q), pick);
                base.insert((q, p), pick);
            }
        }
        let mut dot = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = 0;
                for &p in irreducible.iter().filter(|&&p| subset(p, a)) {
                    for &q in irreducible.iter().filter(|&&q| subset(q, b)) {
                        acc = join[acc * n + base[&(p, q)]];
                    }
                }
                dot[a * n + b] = acc;
            }
        }
        let lattice = CommutatorSemilattice::from_flat(names.clone(), join.clone(), dot);
        let mut failing = checker.commutator_axioms(&lattice).first_failure().map(|r| r.axiom);
        if failing.is_none() && enforce_jacobi && !checker.jacobi(&lattice).holds {
            failing = Some(Axiom::Jacobi);
        }
        match failing {
            None => return Ok(lattice),
            Some(axiom) => {
                first_failure.get_or_insert(axiom);
            }
        }
    }
    Err(GenerationError::AttemptsExhausted {
        attempts: MAX_ATTEMPTS,
        axiom: first_failure.unwrap_or(Axiom::DotDistributes),
    })
}

/// A union-closed family of exactly `size` bitmasks containing the empty set,
/// ordered by (popcount, value) so the empty set has id 0.
fn union_closed_family(rng: &mut ChaCha8Rng, size: usize) -> Vec<u64> {
    let mut family = vec![0u64];
    let mut bits = GROUND_BITS;
    while family.len() < size {
        let room = size - family.len();
        let mut added = false;
        for _ in 0..32 {
            let s = rng.gen_range(1..(1u64 << bits));
            let mut fresh: Vec<u64> = family.iter().map(|&x| x | s).filter(|u| !family.contains(u)).collect();
            fresh.sort_unstable();
            fresh.dedup();
            if !fresh.is_empty() && fresh.len() <= room {
                family.extend(fresh);
                added = true;
                break;
            }
        }
        if !added {
            // A set strictly above the current top always adds exactly one element.
            let top = family.iter().fold(0, |acc, &x| acc | x);
            let free = (0..bits).find(|&b| top & (1u64 << b) == 0);
            let bit = free.unwrap_or_else(|| {
                bits += 1;
                bits - 1
            });
            family.push(top | (1u64 << bit));
        }
    }
    family.sort_by_key(|&s| (s.count_ones(), s));
    family
}

fn set_name(s: u64) -> String {
    let items: Vec<String> = (0..64).filter(|b| s & (1u64 << b) != 0).map(|b| b.to_string()).collect();
    format!("{{{}}}", items.join(","))
}
