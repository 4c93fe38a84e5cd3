//! Finite groups as tables: subgroup classes up to conjugacy, cores, coset
//! actions, and minimal permutation degree faithful on a normal subgroup.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the order of a group whose subgroups are enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>, identity: usize) -> Self {
        let inverse = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| table[g * order + h] == identity)
                    .expect("group element without inverse")
            })
            .collect();
        Group {
            order,
            table,
            identity,
            inverse,
        }
    }

    /// Validates the group axioms on an explicit table.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        size: n,
                    });
                }
                table.push(v);
            }
        }
        let m = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| m(a, b) == identity) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::NonAssociative { s: a, t: b, u: c });
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(n, table, identity))
    }

    /// Cyclic group of order `n`, element `k` is the `k`-th power of a generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        Self::from_flat_unchecked(n, (0..n * n).map(|k| (k / n + k % n) % n).collect(), 0)
    }

    /// Symmetric group on `0..n`, elements in lexicographic order of their
    /// image lists (so 0 is the identity), composed left to right.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index: std::collections::HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for p in &perms {
            for q in &perms {
                let r: Vec<usize> = p.iter().map(|&i| q[i]).collect();
                table.push(index[r.as_slice()]);
            }
        }
        Self::from_flat_unchecked(order, table, 0)
    }

    pub fn direct_product(&self, other: &Group) -> Group {
        let m = other.order;
        let n = self.order * m;
        let table = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
            })
            .collect();
        Self::from_flat_unchecked(n, table, self.identity * m + other.identity)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn trivial_subgroup(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order);
        s.insert(self.identity);
        s
    }

    pub fn whole(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order);
        s.insert_range(..);
        s
    }

    pub fn subset(&self, elems: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order);
        for &x in elems {
            s.insert(x);
        }
        s
    }

    pub fn generated(&self, gens: &[usize]) -> FixedBitSet {
        let mut seen = self.trivial_subgroup();
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen.put(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn is_subgroup(&self, h: &FixedBitSet) -> bool {
        h.contains(self.identity)
            && h.ones()
                .all(|a| h.contains(self.inv(a)) && h.ones().all(|b| h.contains(self.mul(a, b))))
    }

    /// `x⁻¹ H x`.
    pub fn conjugate(&self, h: &FixedBitSet, x: usize) -> FixedBitSet {
        let xi = self.inv(x);
        let mut out = FixedBitSet::with_capacity(self.order);
        for a in h.ones() {
            out.insert(self.mul(self.mul(xi, a), x));
        }
        out
    }

    pub fn is_normal(&self, h: &FixedBitSet) -> bool {
        (0..self.order).all(|x| self.conjugate(h, x) == *h)
    }

    /// Largest normal subgroup of `G` inside `h`.
    pub fn core(&self, h: &FixedBitSet) -> FixedBitSet {
        let mut c = h.clone();
        for x in 0..self.order {
            c.intersect_with(&self.conjugate(h, x));
        }
        c
    }

    pub fn is_trivial_set(&self, h: &FixedBitSet) -> bool {
        h.count_ones(..) == 1 && h.contains(self.identity)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Sorted elements of the representative.
    pub elements: Vec<usize>,
    pub index: usize,
    /// Number of subgroups in the class.
    pub class_size: usize,
    /// Sorted elements of the core.
    pub core: Vec<usize>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub group: Group,
    /// Representatives sorted by increasing index, ties broken by elements.
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    pub fn compute(group: &Group, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::GroupTooLarge {
                order: group.order(),
                cap,
            });
        }
        let n = group.order();
        let trivial = group.trivial_subgroup();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        seen.insert(trivial.clone());
        let mut reps: Vec<(FixedBitSet, Vec<usize>)> = vec![(trivial, Vec::new())];
        let mut found: Vec<(FixedBitSet, Vec<FixedBitSet>)> =
            vec![(group.trivial_subgroup(), vec![group.trivial_subgroup()])];
        // Every subgroup is reached by adjoining one element at a time to a
        // chain; extending only class representatives by every element reaches
        // a conjugate of each link.
        let mut next = 0;
        while next < reps.len() {
            let (h, gens) = reps[next].clone();
            next += 1;
            for g in 0..n {
                if h.contains(g) {
                    continue;
                }
                let mut ext = gens.clone();
                ext.push(g);
                let k = group.generated(&ext);
                if seen.contains(&k) {
                    continue;
                }
                let mut conjugates: Vec<FixedBitSet> = Vec::new();
                for x in 0..n {
                    let c = group.conjugate(&k, x);
                    if seen.insert(c.clone()) {
                        conjugates.push(c);
                    }
                }
                found.push((k.clone(), conjugates));
                reps.push((k, ext));
            }
        }
        let mut classes: Vec<SubgroupClass> = found
            .into_iter()
            .map(|(h, conjugates)| {
                let mut core = h.clone();
                for c in &conjugates {
                    core.intersect_with(c);
                }
                let elements: Vec<usize> = h.ones().collect();
                SubgroupClass {
                    index: n / elements.len(),
                    elements,
                    class_size: conjugates.len(),
                    core: core.ones().collect(),
                }
            })
            .collect();
        classes.sort_by(|x, y| x.index.cmp(&y.index).then_with(|| x.elements.cmp(&y.elements)));
        Ok(SubgroupLattice {
            group: group.clone(),
            classes,
        })
    }

    pub fn core_set(&self, class: usize) -> FixedBitSet {
        self.group.subset(&self.classes[class].core)
    }

    pub fn subgroup_set(&self, class: usize) -> FixedBitSet {
        self.group.subset(&self.classes[class].elements)
    }
}

/// A right action of a group on `0..degree` by permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group_order: usize,
    degree: usize,
    /// `images[g * degree + p]` is `p·g`.
    images: Vec<usize>,
    /// Stabilizer class of each point when built from cosets, else `None`.
    pub orbit_labels: Option<Vec<usize>>,
}

impl GroupAction {
    pub fn from_images(group_order: usize, degree: usize, images: Vec<usize>) -> Self {
        assert_eq!(images.len(), group_order * degree);
        GroupAction {
            group_order,
            degree,
            images,
            orbit_labels: None,
        }
    }

    /// One-point action.
    pub fn trivial(group: &Group) -> Self {
        Self::from_images(group.order(), 1, vec![0; group.order()])
    }

    /// Right regular action.
    pub fn regular(group: &Group) -> Self {
        let n = group.order();
        Self::from_images(n, n, (0..n * n).map(|k| group.mul(k % n, k / n)).collect())
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    #[inline]
    pub fn act(&self, p: usize, g: usize) -> usize {
        self.images[g * self.degree + p]
    }

    /// Identity acts trivially and `(p·g)·h = p·(gh)`.
    pub fn is_action(&self, group: &Group) -> bool {
        (0..self.degree).all(|p| self.act(p, group.identity()) == p)
            && (0..self.degree).all(|p| {
                (0..self.group_order)
                    .all(|g| (0..self.group_order).all(|h| self.act(self.act(p, g), h) == self.act(p, group.mul(g, h))))
            })
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group_order)
            .filter(|&g| (0..self.degree).all(|p| self.act(p, g) == p))
            .collect()
    }

    /// Faithful on the subgroup given by `n`: only the identity of `n` acts trivially.
    pub fn is_faithful_on(&self, group: &Group, n: &FixedBitSet) -> bool {
        self.kernel()
            .into_iter()
            .all(|g| g == group.identity() || !n.contains(g))
    }

    pub fn fixed_points(&self, g: usize) -> usize {
        (0..self.degree).filter(|&p| self.act(p, g) == p).count()
    }

    pub fn stabilizer(&self, p: usize) -> Vec<usize> {
        (0..self.group_order).filter(|&g| self.act(p, g) == p).collect()
    }

    /// Disjoint union; points of later summands are shifted.
    pub fn coproduct(parts: &[GroupAction]) -> GroupAction {
        let order = parts.first().map_or(1, |p| p.group_order);
        let degree: usize = parts.iter().map(|p| p.degree).sum();
        let mut images = vec![0; order * degree];
        let mut offset = 0;
        for part in parts {
            assert_eq!(part.group_order, order);
            for g in 0..order {
                for p in 0..part.degree {
                    images[g * degree + offset + p] = offset + part.act(p, g);
                }
            }
            offset += part.degree;
        }
        let labels = if parts.iter().all(|p| p.orbit_labels.is_some()) {
            Some(parts.iter().flat_map(|p| p.orbit_labels.clone().unwrap()).collect())
        } else {
            None
        };
        GroupAction {
            group_order: order,
            degree,
            images,
            orbit_labels: labels,
        }
    }
}

/// Action on the right cosets `Hg` by right multiplication. Cosets are
/// numbered in order of their lowest element.
pub fn coset_action(group: &Group, h: &FixedBitSet) -> Result<GroupAction> {
    if !group.is_subgroup(h) {
        return Err(Error::NotSubgroup);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            for x in h.ones() {
                coset_of[group.mul(x, g)] = reps.len();
            }
            reps.push(g);
        }
    }
    let degree = reps.len();
    let mut images = vec![0; n * degree];
    for x in 0..n {
        for (p, &r) in reps.iter().enumerate() {
            images[x * degree + p] = coset_of[group.mul(r, x)];
        }
    }
    Ok(GroupAction::from_images(n, degree, images))
}

/// Outcome of a branch-and-bound over subgroup classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub cost: usize,
    /// Indices into the item list, ascending.
    pub chosen: Vec<usize>,
}

/// Minimum total cost of a set of distinct items whose cores, intersected
/// with `target`, leave only the identity. With `require_nonempty` the empty
/// set is inadmissible even when `target` is already trivial.
///
/// Items are explored in increasing cost; a branch is cut when its cost
/// reaches the incumbent, when an item does not shrink the residual, or when
/// all remaining items together cannot make the residual trivial.
pub fn min_cost_cover(
    group: &Group,
    costs: &[usize],
    cores: &[FixedBitSet],
    target: &FixedBitSet,
    require_nonempty: bool,
) -> Option<CoverSolution> {
    assert_eq!(costs.len(), cores.len());
    let mut order: Vec<usize> = (0..costs.len()).collect();
    order.sort_by_key(|&i| (costs[i], i));

    if group.is_trivial_set(target) || target.count_ones(..) == 0 {
        if !require_nonempty {
            return Some(CoverSolution {
                cost: 0,
                chosen: Vec::new(),
            });
        }
        return order.first().map(|&i| CoverSolution {
            cost: costs[i],
            chosen: vec![i],
        });
    }

    // suffix[k] = intersection of the cores of order[k..]
    let mut suffix = vec![group.whole(); order.len() + 1];
    for k in (0..order.len()).rev() {
        let mut s = suffix[k + 1].clone();
        s.intersect_with(&cores[order[k]]);
        suffix[k] = s;
    }

    struct Search<'a> {
        group: &'a Group,
        costs: &'a [usize],
        cores: &'a [FixedBitSet],
        order: &'a [usize],
        suffix: &'a [FixedBitSet],
        best: Option<CoverSolution>,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, start: usize, residual: &FixedBitSet, cost: usize) {
            if self.group.is_trivial_set(residual) {
                if self.best.as_ref().is_none_or(|b| cost < b.cost) {
                    let mut chosen = self.chosen.clone();
                    chosen.sort_unstable();
                    self.best = Some(CoverSolution { cost, chosen });
                }
                return;
            }
            let mut reach = residual.clone();
            reach.intersect_with(&self.suffix[start]);
            if !self.group.is_trivial_set(&reach) {
                return;
            }
            for k in start..self.order.len() {
                let item = self.order[k];
                let next_cost = cost + self.costs[item];
                if self.best.as_ref().is_some_and(|b| next_cost >= b.cost) {
                    break;
                }
                let mut next = residual.clone();
                next.intersect_with(&self.cores[item]);
                if next == *residual {
                    continue;
                }
                self.chosen.push(item);
                self.go(k + 1, &next, next_cost);
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        group,
        costs,
        cores,
        order: &order,
        suffix: &suffix,
        best: None,
        chosen: Vec::new(),
    };
    search.go(0, target, 0);
    search.best
}

/// Smallest degree of a permutation representation of `G` whose restriction
/// to the normal subgroup `n` is faithful, with the witnessing classes. A
/// trivial `n` gives degree 0 and no classes.
pub fn min_degree_faithful_on(lattice: &SubgroupLattice, n: &FixedBitSet) -> CoverSolution {
    let costs: Vec<usize> = lattice.classes.iter().map(|c| c.index).collect();
    let cores: Vec<FixedBitSet> = (0..lattice.classes.len()).map(|i| lattice.core_set(i)).collect();
    min_cost_cover(&lattice.group, &costs, &cores, n, false)
        .expect("the regular representation is faithful on every subgroup")
}

/// Classical minimal faithful permutation degree.
pub fn min_faithful_degree(lattice: &SubgroupLattice) -> usize {
    min_degree_faithful_on(lattice, &lattice.group.whole()).cost
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Group {
        Group::cyclic(2).direct_product(&Group::cyclic(2))
    }

    /// All subgroups by brute force over subsets (small groups only).
    fn all_subgroups(g: &Group) -> Vec<FixedBitSet> {
        let n = g.order();
        (0u64..(1 << n))
            .map(|mask| {
                let mut s = FixedBitSet::with_capacity(n);
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        s.insert(i);
                    }
                }
                s
            })
            .filter(|s| g.is_subgroup(s))
            .collect()
    }

    fn brute_class_count(g: &Group) -> usize {
        let subs = all_subgroups(g);
        let mut reps: Vec<FixedBitSet> = Vec::new();
        for h in subs {
            if !reps.iter().any(|r| (0..g.order()).any(|x| g.conjugate(r, x) == h)) {
                reps.push(h);
            }
        }
        reps.len()
    }

    #[test]
    fn subgroup_class_counts() {
        let c6 = SubgroupLattice::compute(&Group::cyclic(6), 720).unwrap();
        let orders: Vec<usize> = c6.classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![6, 3, 2, 1]);

        let s3 = Group::symmetric(3);
        assert_eq!(brute_class_count(&s3), 4);
        assert_eq!(SubgroupLattice::compute(&s3, 720).unwrap().classes.len(), 4);

        let v4 = klein();
        assert_eq!(SubgroupLattice::compute(&v4, 720).unwrap().classes.len(), 5);
        assert_eq!(brute_class_count(&v4), 5);
    }

    #[test]
    fn s4_has_eleven_classes() {
        let s4 = Group::symmetric(4);
        assert_eq!(SubgroupLattice::compute(&s4, 720).unwrap().classes.len(), 11);
    }

    #[test]
    fn lattice_invariants() {
        for g in [Group::symmetric(3), Group::cyclic(4), klein(), Group::symmetric(4)] {
            let lat = SubgroupLattice::compute(&g, 720).unwrap();
            for (i, c) in lat.classes.iter().enumerate() {
                let h = lat.subgroup_set(i);
                assert!(g.is_subgroup(&h));
                let core = lat.core_set(i);
                assert!(g.is_normal(&core));
                assert_eq!(core, g.core(&h));
                for d in &lat.classes[..i] {
                    let other = g.subset(&d.elements);
                    assert!((0..g.order()).all(|x| g.conjugate(&other, x) != h));
                }
                assert_eq!(c.index * c.order(), g.order());
            }
        }
    }

    #[test]
    fn too_large_group_is_rejected() {
        let s4 = Group::symmetric(4);
        assert_eq!(
            SubgroupLattice::compute(&s4, 10).unwrap_err(),
            Error::GroupTooLarge { order: 24, cap: 10 }
        );
    }

    #[test]
    fn coset_actions() {
        let s3 = Group::symmetric(3);
        let whole = coset_action(&s3, &s3.whole()).unwrap();
        assert_eq!(whole.degree(), 1);
        assert_eq!(whole.kernel().len(), 6);
        let reg = coset_action(&s3, &s3.trivial_subgroup()).unwrap();
        assert_eq!(reg.degree(), 6);
        assert_eq!(reg.kernel(), vec![0]);
        // a transposition: in lex order [0,2,1] is element 1
        let c2 = s3.generated(&[1]);
        assert_eq!(c2.count_ones(..), 2);
        let nat = coset_action(&s3, &c2).unwrap();
        assert_eq!(nat.degree(), 3);
        assert!(nat.is_action(&s3));
        assert_eq!(nat.kernel(), s3.core(&c2).ones().collect::<Vec<_>>());
        assert_eq!(nat.kernel(), vec![0]);
        assert_eq!(
            coset_action(&s3, &s3.subset(&[0, 1, 2])).unwrap_err(),
            Error::NotSubgroup
        );
    }

    #[test]
    fn minimal_degrees() {
        let c6 = SubgroupLattice::compute(&Group::cyclic(6), 720).unwrap();
        assert_eq!(min_faithful_degree(&c6), 5);

        let triv = Group::cyclic(1);
        let lt = SubgroupLattice::compute(&triv, 720).unwrap();
        let sol = min_degree_faithful_on(&lt, &triv.whole());
        assert_eq!(
            sol,
            CoverSolution {
                cost: 0,
                chosen: vec![]
            }
        );

        let s3 = Group::symmetric(3);
        let ls3 = SubgroupLattice::compute(&s3, 720).unwrap();
        let a3 = s3.generated(&[3]); // [1,2,0], a 3-cycle
        assert_eq!(a3.count_ones(..), 3);
        let sol = min_degree_faithful_on(&ls3, &a3);
        assert_eq!(sol.cost, 3);
        for &c in &sol.chosen {
            assert_eq!(ls3.classes[c].index, 3);
        }
    }

    #[test]
    fn cyclic_degree_is_sum_of_prime_powers() {
        fn prime_power_sum(mut n: usize) -> usize {
            if n == 1 {
                return 0;
            }
            let mut sum = 0;
            let mut p = 2;
            while n > 1 {
                if n.is_multiple_of(p) {
                    let mut q = 1;
                    while n.is_multiple_of(p) {
                        n /= p;
                        q *= p;
                    }
                    sum += q;
                }
                p += 1;
            }
            sum
        }
        for n in 1..=24 {
            let lat = SubgroupLattice::compute(&Group::cyclic(n), 720).unwrap();
            assert_eq!(min_faithful_degree(&lat), prime_power_sum(n), "C_{n}");
        }
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[0], vec![0, 1, 2]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
