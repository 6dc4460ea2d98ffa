//! Finite groups with fully materialised multiplication tables.
//!
//! Elements are dense indices `0..order` with `0` the identity. Groups come
//! from permutation generators (closed by breadth-first search) or from a
//! validated Cayley table; either way every operation afterwards is a table
//! lookup.

pub mod families;
mod perm;
pub mod spec;
mod subgroup;

use std::collections::HashMap;

pub use perm::Perm;
pub use subgroup::{CentralSeries, Subgroup};

use thiserror::Error;

/// Default bound on enumerated group order.
pub const DEFAULT_ORDER_CAP: usize = 2048;
/// Default bound on permutation degree.
pub const DEFAULT_DEGREE_CAP: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("group order exceeds cap {cap}")]
    TooLarge { cap: usize },
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("table is not a group: {reason} at {witness:?}")]
    NotAGroup { reason: &'static str, witness: Vec<usize> },
    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { element: String, conjugator: String },
    #[error("product of subgroups is not closed ({product} elements, generated subgroup has {generated})")]
    ProductNotClosed { product: usize, generated: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backing {
    Permutation { degree: usize, elements: Vec<Perm> },
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    backing: Backing,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self { order: 1, mult: vec![0], inv: vec![0], gens: Vec::new(), backing: Backing::Table }
    }

    /// Closes `generators` under composition. Fails once more than `cap`
    /// elements have been found.
    pub fn from_generators(generators: &[Perm], degree: usize, cap: usize) -> Result<Self, GroupError> {
        if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
            return Err(GroupError::Input(format!("generator {p} has degree {}, expected {degree}", p.degree())));
        }
        let mut gens: Vec<Perm> = Vec::new();
        for p in generators {
            if !p.is_identity() && !gens.contains(p) {
                gens.push(p.clone());
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::from([(elements[0].clone(), 0)]);
        // parent[b] = (a, k) with elements[b] = elements[a] then gens[k]
        let mut parent = vec![(0usize, 0usize)];
        let mut right = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (k, g) in gens.iter().enumerate() {
                let y = elements[i].then(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::TooLarge { cap });
                        }
                        let j = elements.len();
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push((i, k));
                        j
                    }
                };
                right.push(j);
            }
            i += 1;
        }
        let n = elements.len();
        let r = gens.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mult[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (pb, k) = parent[b];
                row[b] = right[row[pb] as usize * r + k] as u32;
            }
        }
        let gen_ids = gens.iter().map(|g| index[g]).collect();
        let mut group = Self::from_parts(n, mult, gen_ids);
        group.backing = Backing::Permutation { degree, elements };
        Ok(group)
    }

    /// Validates a Cayley table: identity, two-sided inverses, then full
    /// associativity. If the identity is not element 0 the labels of the
    /// identity and 0 are swapped.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Input("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Input(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::Input(format!("entry {v} out of range in row {i}")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NotAGroup { reason: "no identity element", witness: vec![] })?;
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }
        let at = |a: usize, b: usize| mult[a * n + b] as usize;
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => {}
                _ => return Err(GroupError::NotAGroup { reason: "no two-sided inverse", witness: vec![relabel(a)] }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup {
                            reason: "not associative",
                            witness: vec![relabel(a), relabel(b), relabel(c)],
                        });
                    }
                }
            }
        }
        let mut group = Self::from_parts(n, mult, Vec::new());
        group.gens = group.greedy_generators();
        Ok(group)
    }

    /// Builds from a trusted multiplication table with identity 0.
    pub(crate) fn from_parts(order: usize, mult: Vec<u32>, gens: Vec<usize>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &mult[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&v| v == 0).expect("group table has inverses") as u32;
        }
        Self { order, mult, inv, gens, backing: Backing::Table }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut closure = subgroup::Closure::new(self);
        let mut gens = Vec::new();
        for x in 1..self.order {
            if closure.add(self, x) {
                gens.push(x);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.backing {
            Backing::Permutation { degree, .. } => Some(*degree),
            Backing::Table => None,
        }
    }

    pub fn perm(&self, a: usize) -> Option<&Perm> {
        match &self.backing {
            Backing::Permutation { elements, .. } => Some(&elements[a]),
            Backing::Table => None,
        }
    }

    /// Index of a permutation in a permutation-backed group.
    pub fn find_perm(&self, p: &Perm) -> Option<usize> {
        match &self.backing {
            Backing::Permutation { elements, .. } => elements.iter().position(|e| e == p),
            Backing::Table => None,
        }
    }

    /// Cycle notation for permutation groups, `e` / `g<i>` otherwise.
    pub fn element_label(&self, a: usize) -> String {
        match &self.backing {
            Backing::Permutation { elements, .. } => elements[a].to_string(),
            Backing::Table if a == 0 => "e".to_owned(),
            Backing::Table => format!("g{a}"),
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Row-major Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let mut class = vec![x];
            let mut i = 0;
            while i < class.len() {
                for &g in &self.gens {
                    let y = self.conj(class[i], g);
                    if !seen[y] {
                        seen[y] = true;
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Direct product `self x other` on pairs, `(a, b) -> a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / n2, a % n2);
                let (b1, b2) = (b / n2, b % n2);
                mult[a * n + b] = (self.mul(a1, b1) * n2 + other.mul(a2, b2)) as u32;
            }
        }
        let gens = self.gens.iter().map(|&g| g * n2).chain(other.gens.iter().copied()).collect();
        FiniteGroup::from_parts(n, mult, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(cycles: &[&str], degree: usize) -> Vec<Perm> {
        cycles.iter().map(|c| Perm::parse_cycles(c, degree).unwrap()).collect()
    }

    /// All permutations of `0..n` by brute force.
    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_generators(&[], 3, 100).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn s3_from_generators() {
        let g = FiniteGroup::from_generators(&perms(&["(1 2 3)", "(1 2)"], 3), 3, 100).unwrap();
        assert_eq!(g.order(), 6);
        let Backing::Permutation { elements, .. } = g.backing() else { panic!() };
        let mut found: Vec<Vec<usize>> = elements.iter().map(|p| (0..3).map(|i| p.apply(i)).collect()).collect();
        found.sort();
        let mut expected = all_perms(3);
        expected.sort();
        assert_eq!(found, expected);
        assert!(!g.is_abelian());
    }

    #[test]
    fn multiplication_matches_composition() {
        let g = FiniteGroup::from_generators(&perms(&["(1 2 3 4)", "(1 3)"], 4), 4, 100).unwrap();
        assert_eq!(g.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                let ab = g.perm(a).unwrap().then(g.perm(b).unwrap());
                assert_eq!(g.perm(g.mul(a, b)).unwrap(), &ab);
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(g.inv(a), a), 0);
        }
    }

    #[test]
    fn klein_group() {
        let g = FiniteGroup::from_generators(&perms(&["(1 2)(3 4)", "(1 3)(2 4)"], 4), 4, 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!((1..4).all(|a| g.element_order(a) == 2));
        assert!(g.is_abelian());
    }

    #[test]
    fn cap_enforced() {
        let err = FiniteGroup::from_generators(&perms(&["(1 2 3 4 5)", "(1 2)"], 5), 5, 100).unwrap_err();
        assert_eq!(err, GroupError::TooLarge { cap: 100 });
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cyclic_table() {
        let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let g = FiniteGroup::from_table(&table).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(1), 4);
        assert_eq!(g.table(), table);
    }

    #[test]
    fn identity_relabelled_to_zero() {
        // Z/3 written with identity at label 2.
        let table: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b + 1) % 3).collect()).collect();
        let g = FiniteGroup::from_table(&table).unwrap();
        assert!((0..3).all(|x| g.mul(0, x) == x && g.mul(x, 0) == x));
    }

    #[test]
    fn table_without_identity_rejected() {
        let err = FiniteGroup::from_table(&[vec![1, 0], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup { reason: "no identity element", .. }));
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let g = FiniteGroup::from_generators(&perms(&["(1 2 3)", "(1 2)"], 3), 3, 100).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn table_direct_product() {
        let c2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        let v4 = c2.direct_product(&c2);
        assert_eq!(v4.order(), 4);
        assert!((1..4).all(|a| v4.element_order(a) == 2));
        assert!(FiniteGroup::from_table(&v4.table()).is_ok());
    }
}
