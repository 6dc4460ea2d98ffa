use std::cmp::Ordering;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use super::{FiniteGroup, GroupError};

/// Incremental subgroup closure: the subgroup generated by every element
/// added so far, kept as a membership vector plus element list.
#[derive(Debug, Clone)]
pub(crate) struct Closure {
    members: Vec<bool>,
    elems: Vec<usize>,
    gens: Vec<usize>,
}

impl Closure {
    pub(crate) fn new(g: &FiniteGroup) -> Self {
        let mut members = vec![false; g.order()];
        members[0] = true;
        Self { members, elems: vec![0], gens: Vec::new() }
    }

    fn from_subgroup(s: &Subgroup) -> Self {
        Self { members: s.members.clone(), elems: s.key.clone(), gens: s.gens.clone() }
    }

    /// Adds `x` as a generator. Returns false if `x` was already a member.
    pub(crate) fn add(&mut self, g: &FiniteGroup, x: usize) -> bool {
        if self.members[x] {
            return false;
        }
        self.gens.push(x);
        // Right-multiplying every element by every generator until nothing
        // new appears gives the generated submonoid, which is the subgroup
        // in a finite group.
        let mut i = 0;
        while i < self.elems.len() {
            let a = self.elems[i];
            for &s in &self.gens {
                let y = g.mul(a, s);
                if !self.members[y] {
                    self.members[y] = true;
                    self.elems.push(y);
                }
            }
            i += 1;
        }
        true
    }

    fn finish(self, g: &FiniteGroup) -> Subgroup {
        let mut key = self.elems;
        key.sort_unstable();
        debug_assert_eq!(g.order() % key.len(), 0, "Lagrange violated");
        Subgroup { members: self.members, key, gens: self.gens }
    }
}

/// A subgroup of a [`FiniteGroup`], identified by its sorted member list.
#[derive(Debug, Clone)]
pub struct Subgroup {
    members: Vec<bool>,
    key: Vec<usize>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by size, then by member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.key.len(), &self.key).cmp(&(other.key.len(), &other.key))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.key.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    /// Sorted member indices; the canonical identity of the subgroup.
    pub fn key(&self) -> &[usize] {
        &self.key
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.key.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.key.iter().all(|&x| other.contains(x))
    }

    /// A non-redundant generating set, chosen greedily from the stored generators.
    pub fn reduced_generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut closure = Closure::new(g);
        self.gens.iter().copied().filter(|&x| closure.add(g, x)).collect()
    }

    /// `<gen, gen, ...>` in the group's element notation; `1` when trivial.
    pub fn describe(&self, g: &FiniteGroup) -> String {
        if self.is_trivial() {
            return "1".to_owned();
        }
        let gens: Vec<String> = self.reduced_generators(g).into_iter().map(|x| g.element_label(x)).collect();
        format!("<{}>", gens.join(", "))
    }

    /// Re-expresses this subgroup as a standalone group, members relabelled
    /// in key order.
    pub fn to_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in self.key.iter().enumerate() {
            local[x] = i;
        }
        let mut mult = vec![0u32; n * n];
        for (i, &a) in self.key.iter().enumerate() {
            for (j, &b) in self.key.iter().enumerate() {
                mult[i * n + j] = local[g.mul(a, b)] as u32;
            }
        }
        let gens = self.gens.iter().map(|&x| local[x]).collect();
        FiniteGroup::from_parts(n, mult, gens)
    }
}

/// Lower central series `G = g_0 >= g_1 = [G, g_0] >= ...`, stopped when it
/// reaches the trivial subgroup or stops shrinking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<Subgroup>,
}

impl CentralSeries {
    /// Least `n` with a trivial `n`-th term, or `None` if the series
    /// stabilises above the trivial subgroup.
    pub fn class(&self) -> Option<usize> {
        let last = self.terms.last().expect("series has at least one term");
        last.is_trivial().then(|| self.terms.len() - 1)
    }
}

impl FiniteGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Closure::new(self).finish(self)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: vec![true; self.order()],
            key: (0..self.order()).collect(),
            gens: self.generators().to_vec(),
        }
    }

    pub fn subgroup_generated(&self, seeds: &[usize]) -> Subgroup {
        let mut closure = Closure::new(self);
        for &s in seeds {
            closure.add(self, s);
        }
        closure.finish(self)
    }

    /// Least subgroup containing `seeds` and normalised by every element of
    /// `ambient`. `ambient` should generate the subgroup doing the normalising.
    pub fn normal_closure_in(&self, ambient: &[usize], seeds: &[usize]) -> Subgroup {
        let mut closure = Closure::new(self);
        for &s in seeds {
            closure.add(self, s);
        }
        let mut i = 0;
        while i < closure.gens.len() {
            let x = closure.gens[i];
            for &h in ambient {
                let y = self.conj(x, h);
                closure.add(self, y);
            }
            i += 1;
        }
        closure.finish(self)
    }

    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        self.normal_closure_in(self.generators(), seeds)
    }

    /// `(h, g)` with `g^-1 h g` outside `h_sub`, if `h_sub` is not normal.
    pub fn normality_witness(&self, h_sub: &Subgroup) -> Option<(usize, usize)> {
        for &g in self.generators() {
            for &h in h_sub.generators() {
                if !h_sub.contains(self.conj(h, g)) {
                    return Some((h, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, h_sub: &Subgroup) -> bool {
        self.normality_witness(h_sub).is_none()
    }

    pub(crate) fn not_normal_error(&self, h_sub: &Subgroup) -> Option<GroupError> {
        self.normality_witness(h_sub)
            .map(|(h, g)| GroupError::NotNormal { element: self.element_label(h), conjugator: self.element_label(g) })
    }

    /// `[M, N]`, the subgroup generated by all `m^-1 n^-1 m n`.
    ///
    /// When both arguments are normal the result is the normal closure of the
    /// commutators of their generators; otherwise every pair is enumerated.
    pub fn commutator_subgroup(&self, m: &Subgroup, n: &Subgroup) -> Subgroup {
        if self.is_normal(m) && self.is_normal(n) {
            let comms: Vec<usize> = m
                .generators()
                .iter()
                .flat_map(|&a| n.generators().iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.commutator(a, b))
                .collect();
            let out = self.normal_closure(&comms);
            debug_assert!(self.is_normal(&out));
            out
        } else {
            let mut closure = Closure::new(self);
            for &a in m.key() {
                for &b in n.key() {
                    closure.add(self, self.commutator(a, b));
                }
            }
            closure.finish(self)
        }
    }

    /// `[H, K]` for `K` normal in `H`, computed inside `H`.
    fn commutator_within(&self, h_sub: &Subgroup, k_sub: &Subgroup) -> Subgroup {
        let comms: Vec<usize> = h_sub
            .generators()
            .iter()
            .flat_map(|&a| k_sub.generators().iter().map(move |&b| self.commutator(a, b)))
            .collect();
        self.normal_closure_in(h_sub.generators(), &comms)
    }

    /// Join of two subgroups known to permute (e.g. both normal).
    pub(crate) fn join_unchecked(&self, m: &Subgroup, n: &Subgroup) -> Subgroup {
        let (big, small) = if m.order() >= n.order() { (m, n) } else { (n, m) };
        let mut closure = Closure::from_subgroup(big);
        for &x in small.generators() {
            closure.add(self, x);
        }
        closure.finish(self)
    }

    /// The set product `MN`. Errors when it is not a subgroup.
    pub fn product_subgroup(&self, m: &Subgroup, n: &Subgroup) -> Result<Subgroup, GroupError> {
        let joined = self.join_unchecked(m, n);
        let meet = m.key().iter().filter(|&&x| n.contains(x)).count();
        let product = m.order() * n.order() / meet;
        if product == joined.order() {
            Ok(joined)
        } else {
            Err(GroupError::ProductNotClosed { product, generated: joined.order() })
        }
    }

    /// `G / N` with cosets numbered by their smallest member's first
    /// appearance, so the identity coset is 0.
    pub fn quotient(&self, n_sub: &Subgroup) -> Result<FiniteGroup, GroupError> {
        if let Some(err) = self.not_normal_error(n_sub) {
            return Err(err);
        }
        let mut label = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if label[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &k in n_sub.key() {
                label[self.mul(x, k)] = id;
            }
        }
        let q = reps.len();
        let mut mult = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mult[i * q + j] = label[self.mul(a, b)] as u32;
            }
        }
        let mut gens: Vec<usize> = self.generators().iter().map(|&g| label[g]).filter(|&c| c != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        Ok(FiniteGroup::from_parts(q, mult, gens))
    }

    pub fn lower_central_series(&self) -> CentralSeries {
        self.lower_central_series_of(&self.whole())
    }

    /// Lower central series of a subgroup `H`, with terms `[H, previous]`.
    pub fn lower_central_series_of(&self, h_sub: &Subgroup) -> CentralSeries {
        let mut terms = vec![h_sub.clone()];
        loop {
            let last = terms.last().expect("non-empty");
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_within(h_sub, last);
            if next == *last {
                break;
            }
            terms.push(next);
        }
        CentralSeries { terms }
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.lower_central_series().class()
    }

    pub fn nilpotency_class_of(&self, h_sub: &Subgroup) -> Option<usize> {
        self.lower_central_series_of(h_sub).class()
    }

    /// Every normal subgroup, sorted by (order, members).
    ///
    /// Each normal subgroup is a product of normal closures of conjugacy
    /// classes, so closing those closures under pairwise products starting
    /// from the trivial subgroup reaches all of them.
    pub fn all_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut atoms: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes().into_iter().skip(1) {
            let closure = self.normal_closure(&class[..1]);
            if !atoms.contains(&closure) {
                atoms.push(closure);
            }
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.key().to_vec());
        let mut all = vec![trivial];
        let mut i = 0;
        while i < all.len() {
            for atom in &atoms {
                if atom.is_subgroup_of(&all[i]) {
                    continue;
                }
                let j = self.join_unchecked(&all[i], atom);
                if seen.insert(j.key().to_vec()) {
                    all.push(j);
                }
            }
            i += 1;
        }
        all.sort();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::Family;

    fn s3() -> FiniteGroup {
        Family::Dihedral(3).build(64).unwrap()
    }

    fn d4() -> FiniteGroup {
        Family::Dihedral(4).build(64).unwrap()
    }

    fn q8() -> FiniteGroup {
        Family::Quaternion(8).build(64).unwrap()
    }

    fn cyclic_table(n: usize) -> FiniteGroup {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&table).unwrap()
    }

    fn find(g: &FiniteGroup, cycles: &str) -> usize {
        let p = crate::group::Perm::parse_cycles(cycles, g.degree().unwrap()).unwrap();
        g.find_perm(&p).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let g = s3();
        assert!(g.subgroup_generated(&[]).is_trivial());
        let a3 = g.subgroup_generated(&[find(&g, "(1 2 3)")]);
        assert_eq!(a3.order(), 3);
        let c4 = cyclic_table(4);
        assert_eq!(c4.subgroup_generated(&[2]).key(), &[0, 2]);
    }

    #[test]
    fn normal_closures() {
        let g = s3();
        assert!(g.normal_closure(&[0]).is_trivial());
        assert_eq!(g.normal_closure(&[find(&g, "(1 2)")]).order(), 6);
        let d = d4();
        let z = d.normal_closure(&[find(&d, "(1 3)(2 4)")]);
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn normal_subgroup_counts() {
        let orders = |g: &FiniteGroup| g.all_normal_subgroups().iter().map(Subgroup::order).collect::<Vec<_>>();
        assert_eq!(orders(&cyclic_table(4)), vec![1, 2, 4]);
        assert_eq!(orders(&s3()), vec![1, 3, 6]);
        assert_eq!(orders(&FiniteGroup::trivial()), vec![1]);
        assert_eq!(orders(&d4()), vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(orders(&q8()), vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn commutators() {
        let g = s3();
        let whole = g.whole();
        let trivial = g.trivial_subgroup();
        assert!(g.commutator_subgroup(&whole, &trivial).is_trivial());
        assert_eq!(g.commutator_subgroup(&whole, &whole).order(), 3);
        let q = q8();
        let qq = q.commutator_subgroup(&q.whole(), &q.whole());
        assert_eq!(qq.order(), 2);
        // non-normal arguments take the enumeration path
        let refl = g.subgroup_generated(&[find(&g, "(1 2)")]);
        let rot = g.subgroup_generated(&[find(&g, "(1 2 3)")]);
        assert_eq!(g.commutator_subgroup(&refl, &rot).order(), 3);
        assert_eq!(g.commutator_subgroup(&refl, &refl).order(), 1);
    }

    #[test]
    fn products() {
        let d = d4();
        let z = d.subgroup_generated(&[find(&d, "(1 3)(2 4)")]);
        let r = d.subgroup_generated(&[find(&d, "(1 2 3 4)")]);
        assert_eq!(d.product_subgroup(&z, &r).unwrap(), r);
        let t = d.trivial_subgroup();
        assert_eq!(d.product_subgroup(&r, &t).unwrap(), r);
        let s1 = d.subgroup_generated(&[find(&d, "(1 3)")]);
        let s2 = d.subgroup_generated(&[find(&d, "(1 2)(3 4)")]);
        assert!(matches!(d.product_subgroup(&s1, &s2), Err(GroupError::ProductNotClosed { .. })));
        let v =
            FiniteGroup::from_table(&[vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap();
        let a = v.subgroup_generated(&[1]);
        let b = v.subgroup_generated(&[2]);
        assert_eq!(v.product_subgroup(&a, &b).unwrap().order(), 4);
    }

    #[test]
    fn quotients() {
        let q = q8();
        let center = q.commutator_subgroup(&q.whole(), &q.whole());
        let v = q.quotient(&center).unwrap();
        assert_eq!(v.order(), 4);
        assert!((1..4).all(|a| v.element_order(a) == 2));
        let same = q.quotient(&q.trivial_subgroup()).unwrap();
        assert_eq!(same.order(), 8);
        assert_eq!(q.quotient(&q.whole()).unwrap().order(), 1);
        let g = s3();
        let refl = g.subgroup_generated(&[find(&g, "(1 2)")]);
        assert!(matches!(g.quotient(&refl), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn classes() {
        assert_eq!(FiniteGroup::trivial().nilpotency_class(), Some(0));
        assert_eq!(cyclic_table(6).nilpotency_class(), Some(1));
        assert_eq!(d4().nilpotency_class(), Some(2));
        assert_eq!(q8().nilpotency_class(), Some(2));
        let series = s3().lower_central_series();
        assert_eq!(series.class(), None);
        assert_eq!(series.terms.last().unwrap().order(), 3);
    }

    #[test]
    fn subgroup_as_group() {
        let d = d4();
        let r = d.subgroup_generated(&[find(&d, "(1 2 3 4)")]);
        let c4 = r.to_group(&d);
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert!(FiniteGroup::from_table(&c4.table()).is_ok());
    }

    #[test]
    fn describe_uses_reduced_generators() {
        let g = s3();
        assert_eq!(g.trivial_subgroup().describe(&g), "1");
        let a3 = g.commutator_subgroup(&g.whole(), &g.whole());
        let text = a3.describe(&g);
        assert!(text == "<(1 2 3)>" || text == "<(1 3 2)>", "{text}");
    }
}
