//! Built-in group families, all realised as permutation groups.
//!
//! | family | action | degree |
//! |---|---|---|
//! | `C(n)` | rotation of an n-gon | n |
//! | `D(n)` (order 2n) | symmetries of an n-gon | n |
//! | `Q(2m)` dicyclic / generalised quaternion | right regular | 2m |
//! | `Heis(p)` = `UT(3, p)` | affine action on `GF(p)^2` | p^2 |
//! | `UT(n, p)` | affine action on `GF(p)^(n-1)` | p^(n-1) |
//! | products | disjoint union of the factors' actions | sum |

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError, Perm, DEFAULT_DEGREE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Dicyclic group of the given order (a multiple of 4, at least 8);
    /// generalised quaternion when the order is a power of two.
    Quaternion(usize),
    Heisenberg(usize),
    Unitriangular {
        n: usize,
        p: usize,
    },
    Product(Vec<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "C{n}"),
            Family::Dihedral(n) => write!(f, "D{n}"),
            Family::Quaternion(n) => write!(f, "Q{n}"),
            Family::Heisenberg(p) => write!(f, "Heis({p})"),
            Family::Unitriangular { n, p } => write!(f, "UT({n},{p})"),
            Family::Product(factors) => {
                let names: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "{}", names.join("x"))
            }
        }
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Family {
    /// The group order, computed from the family parameters.
    pub fn order(&self) -> Option<usize> {
        match self {
            Family::Cyclic(n) => Some(*n),
            Family::Dihedral(n) => n.checked_mul(2),
            Family::Quaternion(n) => Some(*n),
            Family::Heisenberg(p) => p.checked_pow(3),
            Family::Unitriangular { n, p } => p.checked_pow((n * n.saturating_sub(1) / 2) as u32),
            Family::Product(factors) => factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    /// Number of points the permutation action uses.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Family::Cyclic(n) | Family::Dihedral(n) | Family::Quaternion(n) => Some(*n),
            Family::Heisenberg(p) => p.checked_pow(2),
            Family::Unitriangular { n, p } => p.checked_pow(n.saturating_sub(1) as u32),
            Family::Product(factors) => factors.iter().try_fold(0usize, |acc, f| acc.checked_add(f.degree()?)),
        }
    }

    fn validate(&self) -> Result<(), GroupError> {
        let bad = |msg: String| Err(GroupError::Input(msg));
        match self {
            Family::Cyclic(0) => bad("cyclic group needs n >= 1".into()),
            Family::Dihedral(n) if *n < 3 => bad(format!("dihedral D{n} needs n >= 3")),
            Family::Quaternion(n) if *n < 8 || n % 4 != 0 => {
                bad(format!("quaternion order {n} must be a multiple of 4 and at least 8"))
            }
            Family::Heisenberg(p) if !is_prime(*p) => bad(format!("Heisenberg modulus {p} is not prime")),
            Family::Unitriangular { n, p } if *n < 2 || !is_prime(*p) => {
                bad(format!("UT({n},{p}) needs n >= 2 and p prime"))
            }
            Family::Product(factors) if factors.is_empty() => bad("empty direct product".into()),
            Family::Product(factors) => factors.iter().try_for_each(Family::validate),
            _ => Ok(()),
        }
    }

    /// Permutation generators and the degree they act on.
    pub fn generators(&self) -> Result<(Vec<Perm>, usize), GroupError> {
        self.validate()?;
        Ok(match self {
            Family::Cyclic(n) => {
                let rot = (0..*n).map(|i| (i + 1) % n).collect();
                (vec![Perm::from_images(rot)?], *n)
            }
            Family::Dihedral(n) => {
                let rot = (0..*n).map(|i| (i + 1) % n).collect();
                let refl = (0..*n).map(|i| (n - i) % n).collect();
                (vec![Perm::from_images(rot)?, Perm::from_images(refl)?], *n)
            }
            Family::Quaternion(order) => (dicyclic_regular(*order)?, *order),
            Family::Heisenberg(p) => unitriangular_affine(3, *p)?,
            Family::Unitriangular { n, p } => unitriangular_affine(*n, *p)?,
            Family::Product(factors) => {
                let parts = factors.iter().map(Family::generators).collect::<Result<Vec<_>, _>>()?;
                let degree: usize = parts.iter().map(|(_, d)| d).sum();
                let mut gens = Vec::new();
                let mut before = 0;
                for (fgens, d) in &parts {
                    for g in fgens {
                        let left = Perm::identity(before);
                        let right = Perm::identity(degree - before - d);
                        gens.push(left.direct_sum(g).direct_sum(&right));
                    }
                    before += d;
                }
                (gens, degree)
            }
        })
    }

    pub fn build(&self, order_cap: usize) -> Result<FiniteGroup, GroupError> {
        self.build_with_caps(order_cap, DEFAULT_DEGREE_CAP)
    }

    pub fn build_with_caps(&self, order_cap: usize, degree_cap: usize) -> Result<FiniteGroup, GroupError> {
        self.validate()?;
        match self.degree() {
            Some(d) if d <= degree_cap => {}
            Some(d) => return Err(GroupError::DegreeTooLarge { degree: d, cap: degree_cap }),
            None => return Err(GroupError::DegreeTooLarge { degree: usize::MAX, cap: degree_cap }),
        }
        match self.order() {
            Some(o) if o <= order_cap => {}
            _ => return Err(GroupError::TooLarge { cap: order_cap }),
        }
        let (gens, degree) = self.generators()?;
        let group = FiniteGroup::from_generators(&gens, degree, order_cap)?;
        debug_assert_eq!(Some(group.order()), self.order(), "{self}");
        Ok(group)
    }
}

/// Right regular representation of `<a, b | a^m = 1, b^2 = a^(m/2), b^-1 a b = a^-1>`
/// with `m = order / 2`, elements `a^i b^j` indexed `i + m j`.
fn dicyclic_regular(order: usize) -> Result<Vec<Perm>, GroupError> {
    let m = order / 2;
    let mul = |x: usize, y: usize| -> usize {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        match (j, l) {
            (0, _) => (i + k) % m + m * l,
            (1, 0) => (i + m - k) % m + m,
            _ => (i + m - k + m / 2) % m,
        }
    };
    [1, m].iter().map(|&g| Perm::from_images((0..order).map(|y| mul(y, g)).collect())).collect()
}

/// Upper unitriangular `n x n` matrices over `GF(p)` acting on column
/// vectors `(x_1, .., x_(n-1), 1)`, generated by the elementary matrices
/// `I + E_(i,i+1)`. Points are the vectors read in base `p`.
fn unitriangular_affine(n: usize, p: usize) -> Result<(Vec<Perm>, usize), GroupError> {
    let dim = n - 1;
    let degree = p.pow(dim as u32);
    let decode = |mut v: usize| -> Vec<usize> {
        let mut x = vec![0; dim];
        for c in x.iter_mut() {
            *c = v % p;
            v /= p;
        }
        x
    };
    let encode = |x: &[usize]| x.iter().rev().fold(0, |acc, &c| acc * p + c);
    let gens = (0..dim)
        .map(|i| {
            let images = (0..degree)
                .map(|v| {
                    let mut x = decode(v);
                    let next = if i + 1 < dim { x[i + 1] } else { 1 };
                    x[i] = (x[i] + next) % p;
                    encode(&x)
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((gens, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(f: Family) -> FiniteGroup {
        f.build(4096).unwrap()
    }

    #[test]
    fn orders_match_formulas() {
        let cases = [
            Family::Cyclic(1),
            Family::Cyclic(12),
            Family::Dihedral(3),
            Family::Dihedral(8),
            Family::Quaternion(8),
            Family::Quaternion(16),
            Family::Quaternion(12),
            Family::Heisenberg(2),
            Family::Heisenberg(3),
            Family::Heisenberg(5),
            Family::Unitriangular { n: 2, p: 3 },
            Family::Unitriangular { n: 4, p: 2 },
            Family::Unitriangular { n: 5, p: 2 },
            Family::Unitriangular { n: 4, p: 3 },
            Family::Product(vec![Family::Cyclic(2), Family::Dihedral(4)]),
        ];
        for f in cases {
            let g = build(f.clone());
            assert_eq!(Some(g.order()), f.order(), "{f}");
        }
    }

    #[test]
    fn known_classes() {
        assert_eq!(build(Family::Dihedral(4)).nilpotency_class(), Some(2));
        assert_eq!(build(Family::Dihedral(8)).nilpotency_class(), Some(3));
        assert_eq!(build(Family::Dihedral(16)).nilpotency_class(), Some(4));
        assert_eq!(build(Family::Dihedral(6)).nilpotency_class(), None);
        assert_eq!(build(Family::Quaternion(8)).nilpotency_class(), Some(2));
        assert_eq!(build(Family::Quaternion(16)).nilpotency_class(), Some(3));
        assert_eq!(build(Family::Heisenberg(3)).nilpotency_class(), Some(2));
        assert_eq!(build(Family::Heisenberg(5)).nilpotency_class(), Some(2));
        assert_eq!(build(Family::Unitriangular { n: 4, p: 2 }).nilpotency_class(), Some(3));
        assert_eq!(build(Family::Unitriangular { n: 5, p: 2 }).nilpotency_class(), Some(4));
        assert_eq!(build(Family::Cyclic(7)).nilpotency_class(), Some(1));
    }

    #[test]
    fn quaternion_has_one_involution() {
        for order in [8, 16] {
            let g = build(Family::Quaternion(order));
            assert_eq!((1..order).filter(|&a| g.element_order(a) == 2).count(), 1);
        }
    }

    #[test]
    fn caps_and_validation() {
        assert!(matches!(
            Family::Unitriangular { n: 5, p: 3 }.build(1 << 20),
            Err(GroupError::DegreeTooLarge { degree: 81, cap: 32 })
        ));
        assert!(matches!(Family::Dihedral(20).build(16), Err(GroupError::TooLarge { cap: 16 })));
        assert!(Family::Dihedral(2).build(64).is_err());
        assert!(Family::Quaternion(10).build(64).is_err());
        assert!(Family::Heisenberg(4).build(64).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(Family::Unitriangular { n: 4, p: 2 }.to_string(), "UT(4,2)");
        assert_eq!(Family::Product(vec![Family::Cyclic(2), Family::Quaternion(8)]).to_string(), "C2xQ8");
    }
}
