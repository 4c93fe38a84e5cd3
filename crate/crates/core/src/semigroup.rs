//! Finite semigroups as dense multiplication tables.
//!
//! Elements are the indices `0..size`. Every other structure in the crate is
//! computed from a [`FiniteSemigroup`], so the table is stored flat and
//! products are a single lookup.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sentinel for "undefined" in partial maps and partial actions.
pub const UNDEF: usize = usize::MAX;

/// Default cap on the size of a closure computed by [`FiniteSemigroup::from_partial_maps`].
pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<u32>,
    identity: Option<usize>,
    zero: Option<usize>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .field("zero", &self.zero)
            .finish()
    }
}

impl FiniteSemigroup {
    /// Validates a square table and detects the identity and zero.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let s = Self::from_table_unchecked(rows)?;
        if s.size > 64 && s.light_test() {
            return Ok(s);
        }
        if let Some((a, b, c)) = s.associativity_witness() {
            return Err(Error::NonAssociative { s: a, t: b, u: c });
        }
        Ok(s)
    }

    /// Like [`from_table`](Self::from_table) but skips the cubic associativity
    /// scan. Shape and range are still checked. Builders whose tables are
    /// associative by construction go through here.
    pub fn from_table_unchecked(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyGeneratorSet);
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
                table.push(v as u32);
            }
        }
        Ok(Self::from_flat(n, table))
    }

    pub(crate) fn from_flat(size: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        let mut s = FiniteSemigroup {
            size,
            table,
            identity: None,
            zero: None,
        };
        s.identity = (0..size).find(|&e| (0..size).all(|x| s.mul(e, x) == x && s.mul(x, e) == x));
        s.zero = (0..size).find(|&z| (0..size).all(|x| s.mul(z, x) == z && s.mul(x, z) == z));
        s
    }

    /// Builds a semigroup from a product function on `0..size`.
    pub(crate) fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(size * size);
        for s in 0..size {
            for t in 0..size {
                table.push(f(s, t) as u32);
            }
        }
        Self::from_flat(size, table)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.size + t] as usize
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&s| self.is_idempotent(s)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|s| (0..self.size).map(|t| self.mul(s, t)).collect())
            .collect()
    }

    /// First triple (in lexicographic order) violating associativity.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for s in 0..n {
            for t in 0..n {
                let st = self.mul(s, t);
                for u in 0..n {
                    if self.mul(st, u) != self.mul(s, self.mul(t, u)) {
                        return Some((s, t, u));
                    }
                }
            }
        }
        None
    }

    /// Light's test: `(xa)y = x(ay)` for every `a` in a set whose right
    /// closure is everything. Elements passing it are closed under products,
    /// so this is equivalent to associativity in `O(n² · |gens|)`.
    pub fn light_test(&self) -> bool {
        let gens = self.generating_set();
        if self.closure(&gens).count_ones(..) != self.size {
            return false;
        }
        let n = self.size;
        gens.iter().all(|&a| {
            (0..n).all(|x| {
                let xa = self.mul(x, a);
                (0..n).all(|y| self.mul(xa, y) == self.mul(x, self.mul(a, y)))
            })
        })
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|s| (0..s).all(|t| self.mul(s, t) == self.mul(t, s)))
    }

    /// The opposite semigroup: same elements, product `s *op t = t * s`.
    pub fn opposite(&self) -> Self {
        let n = self.size;
        let mut table = vec![0u32; n * n];
        for s in 0..n {
            for t in 0..n {
                table[s * n + t] = self.table[t * n + s];
            }
        }
        FiniteSemigroup {
            size: n,
            table,
            identity: self.identity,
            zero: self.zero,
        }
    }

    /// S¹: adjoins a new identity as the last element, even when one exists.
    pub fn with_identity(&self) -> Self {
        let n = self.size;
        let one = n;
        Self::from_fn(n + 1, |s, t| match (s == one, t == one) {
            (true, _) => t,
            (_, true) => s,
            _ => self.mul(s, t),
        })
    }

    /// S⁰: adjoins a new zero as the last element.
    pub fn with_zero(&self) -> Self {
        let n = self.size;
        let z = n;
        Self::from_fn(n + 1, |s, t| if s == z || t == z { z } else { self.mul(s, t) })
    }

    /// Direct product `self × other`, element `(s, t)` at index `s * |other| + t`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let m = other.size;
        Self::from_fn(self.size * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
    }

    /// Subsemigroup generated by `gens`, as a bitset over the elements.
    pub fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.size);
        let mut stack: Vec<usize> = Vec::new();
        for &g in gens {
            if !seen.put(g) {
                stack.push(g);
            }
        }
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

    /// A greedy, irredundant-in-sequence generating set. Elements outside S²
    /// are taken first (they belong to every generating set), the rest in
    /// `order` (index order when `None`), skipping anything already generated.
    pub fn generating_set_in_order(&self, order: Option<&[usize]>) -> Vec<usize> {
        let n = self.size;
        let mut in_square = FixedBitSet::with_capacity(n);
        for s in 0..n {
            for t in 0..n {
                in_square.insert(self.mul(s, t));
            }
        }
        let default_order: Vec<usize> = (0..n).collect();
        let order = order.unwrap_or(&default_order);
        let mut candidates: Vec<usize> = order.iter().copied().filter(|&x| !in_square[x]).collect();
        candidates.extend(order.iter().copied().filter(|&x| in_square[x]));

        let mut gens = Vec::new();
        let mut have = FixedBitSet::with_capacity(n);
        let mut members: Vec<usize> = Vec::new();
        for x in candidates {
            if have[x] {
                continue;
            }
            gens.push(x);
            // Extend the closed set by the new generator: every old member and
            // every new element must be multiplied on the right by every
            // generator, and the old members by the new one.
            let mut stack = Vec::new();
            if !have.put(x) {
                members.push(x);
                stack.push(x);
            }
            for idx in 0..members.len() {
                let y = self.mul(members[idx], x);
                if !have.put(y) {
                    members.push(y);
                    stack.push(y);
                }
            }
            while let Some(y) = stack.pop() {
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !have.put(z) {
                        members.push(z);
                        stack.push(z);
                    }
                }
            }
        }
        gens
    }

    pub fn generating_set(&self) -> Vec<usize> {
        self.generating_set_in_order(None)
    }

    /// Index and period of the monogenic subsemigroup generated by `s`.
    pub fn index_period(&self, s: usize) -> (usize, usize) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut x = s;
        let mut k = 1;
        loop {
            if let Some(&first) = seen.get(&x) {
                return (first, k - first);
            }
            seen.insert(x, k);
            x = self.mul(x, s);
            k += 1;
        }
    }

    /// Whether some `t` satisfies `s t s = s`.
    pub fn is_regular_element(&self, s: usize) -> bool {
        (0..self.size).any(|t| self.mul(self.mul(s, t), s) == s)
    }

    /// Inverse semigroup: every element regular and idempotents commute.
    pub fn is_inverse(&self) -> bool {
        let idem = self.idempotents();
        let commute = idem
            .iter()
            .all(|&e| idem.iter().all(|&f| self.mul(e, f) == self.mul(f, e)));
        commute && (0..self.size).all(|s| self.is_regular_element(s))
    }

    /// The unique inverse of `s` in an inverse semigroup.
    pub fn inverse_of(&self, s: usize) -> Option<usize> {
        (0..self.size).find(|&t| self.mul(self.mul(s, t), s) == s && self.mul(self.mul(t, s), t) == t)
    }

    /// Applies a relabelling: element `i` of `self` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size;
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Self::from_fn(n, |x, y| perm[self.mul(inv[x], inv[y])])
    }

    /// Closes a set of partial maps under composition (right action: the
    /// left factor is applied first). Returns the semigroup together with the
    /// partial map realizing each element; generators come first, in the given
    /// order with duplicates removed.
    pub fn from_partial_maps(degree: usize, generators: &[PartialMap], cap: usize) -> Result<(Self, Vec<PartialMap>)> {
        if generators.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::BadParameters(format!(
                    "generator of degree {} in a closure of degree {degree}",
                    g.degree()
                )));
            }
            if let Some(&p) = g.images().iter().find(|&&p| p != UNDEF && p >= degree) {
                return Err(Error::BadParameters(format!("point {p} out of range")));
            }
        }
        let mut index: HashMap<PartialMap, usize> = HashMap::new();
        let mut elems: Vec<PartialMap> = Vec::new();
        for g in generators {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let gen_count = elems.len();
        let mut i = 0;
        while i < elems.len() {
            for j in 0..gen_count {
                let p = elems[i].then(&elems[j]);
                if !index.contains_key(&p) {
                    if elems.len() >= cap {
                        return Err(Error::SizeLimitExceeded { cap });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let s = Self::from_map_list(&elems, &index);
        Ok((s, elems))
    }

    /// Table of a list of maps already closed under composition.
    pub(crate) fn from_map_list(elems: &[PartialMap], index: &HashMap<PartialMap, usize>) -> Self {
        Self::from_fn(elems.len(), |s, t| index[&elems[s].then(&elems[t])])
    }
}

/// A partial map on `0..degree`; `UNDEF` marks points outside the domain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialMap(Vec<usize>);

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if p == UNDEF {
                write!(f, "-")?;
            } else {
                write!(f, "{p}")?;
            }
        }
        write!(f, "]")
    }
}

impl PartialMap {
    pub fn new(images: Vec<usize>) -> Self {
        PartialMap(images)
    }

    pub fn from_options(images: &[Option<usize>]) -> Self {
        PartialMap(images.iter().map(|p| p.unwrap_or(UNDEF)).collect())
    }

    pub fn identity(degree: usize) -> Self {
        PartialMap((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        match self.0[p] {
            UNDEF => None,
            q => Some(q),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        PartialMap(
            self.0
                .iter()
                .map(|&p| if p == UNDEF { UNDEF } else { other.0[p] })
                .collect(),
        )
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(|&p| p != UNDEF)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &p in &self.0 {
            if p != UNDEF {
                if seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .filter(|&&p| p != UNDEF && !std::mem::replace(&mut seen[p], true))
            .count()
    }
}
