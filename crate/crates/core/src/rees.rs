//! Rees coordinates for a regular J-class.
//!
//! With `e` the chosen idempotent, `p_a` a representative of the H-class
//! `R_a ∩ L_e` and `q_b` one of `R_e ∩ L_b` (both equal to `e` at the base
//! class), every element of the J-class is uniquely `p_a g q_b` with `g` in the
//! maximal subgroup at `e`, and the sandwich entry is `C_{ba} = q_b p_a` when
//! that product stays in the H-class of `e`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::greens::GreensStructure;
use crate::group::Group;
use crate::semigroup::{FiniteSemigroup, UNDEF};

/// Position of an element of J in Rees coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    pub a: usize,
    pub g: usize,
    pub b: usize,
}

#[derive(Debug, Clone)]
pub struct ReesCoordinatization {
    pub jclass: usize,
    /// Lowest-index idempotent of the J-class.
    pub e: usize,
    /// Elements of the maximal subgroup at `e`; position 0 is `e`.
    pub group: Vec<usize>,
    pub a_count: usize,
    pub b_count: usize,
    /// R-class id for each `a`; `a = 0` is the R-class of `e`.
    pub rclass_ids: Vec<usize>,
    /// L-class id for each `b`; `b = 0` is the L-class of `e`.
    pub lclass_ids: Vec<usize>,
    /// `p_a`, in `R_a ∩ L_e`.
    pub column_reps: Vec<usize>,
    /// `q_b`, in `R_e ∩ L_b`.
    pub row_reps: Vec<usize>,
    /// Flat `b_count × a_count` matrix; 0 is the zero entry, `k > 0` is group
    /// element `k - 1`.
    sandwich: Vec<usize>,
    group_table: Vec<usize>,
    /// Element at `(a, g, b)`, indexed by `(a * |G| + g) * b_count + b`.
    element_at: Vec<usize>,
    /// Inverse of `element_at`; `UNDEF` outside the J-class.
    position_of: Vec<usize>,
}

impl ReesCoordinatization {
    pub fn compute(s: &FiniteSemigroup, greens: &GreensStructure, j: usize) -> Result<Self> {
        if j >= greens.num_jclasses() || !greens.regular[j] {
            return Err(Error::NotRegular(j));
        }
        let members = &greens.jclasses[j];
        let e = *members
            .iter()
            .find(|&&x| s.is_idempotent(x))
            .expect("regular J-class has an idempotent");
        let re = greens.rclass_of[e];
        let le = greens.lclass_of[e];

        let mut rclass_ids = vec![re];
        rclass_ids.extend(greens.rclasses_in(j).into_iter().filter(|&r| r != re));
        let mut lclass_ids = vec![le];
        lclass_ids.extend(greens.lclasses_in(j).into_iter().filter(|&l| l != le));
        let a_of: HashMap<usize, usize> = rclass_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let b_of: HashMap<usize, usize> = lclass_ids.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let (a_count, b_count) = (rclass_ids.len(), lclass_ids.len());

        let mut group = vec![e];
        group.extend(greens.hclasses[greens.hclass_of[e]].iter().copied().filter(|&x| x != e));
        let gsize = group.len();
        let mut gpos = HashMap::new();
        for (i, &x) in group.iter().enumerate() {
            gpos.insert(x, i);
        }
        let group_table: Vec<usize> = (0..gsize * gsize)
            .map(|k| gpos[&s.mul(group[k / gsize], group[k % gsize])])
            .collect();

        let mut column_reps = vec![UNDEF; a_count];
        let mut row_reps = vec![UNDEF; b_count];
        column_reps[0] = e;
        row_reps[0] = e;
        for &x in members {
            if greens.lclass_of[x] == le {
                let a = a_of[&greens.rclass_of[x]];
                if column_reps[a] == UNDEF {
                    column_reps[a] = x;
                }
            }
            if greens.rclass_of[x] == re {
                let b = b_of[&greens.lclass_of[x]];
                if row_reps[b] == UNDEF {
                    row_reps[b] = x;
                }
            }
        }

        let mut element_at = vec![UNDEF; a_count * gsize * b_count];
        let mut position_of = vec![UNDEF; s.size()];
        for a in 0..a_count {
            for (g, &gx) in group.iter().enumerate() {
                let left = s.mul(column_reps[a], gx);
                for b in 0..b_count {
                    let x = s.mul(left, row_reps[b]);
                    let pos = (a * gsize + g) * b_count + b;
                    debug_assert_eq!(greens.rclass_of[x], rclass_ids[a]);
                    debug_assert_eq!(greens.lclass_of[x], lclass_ids[b]);
                    debug_assert_eq!(position_of[x], UNDEF, "coordinates must be a bijection");
                    element_at[pos] = x;
                    position_of[x] = pos;
                }
            }
        }
        assert_eq!(element_at.len(), members.len(), "J-class size must equal |A||G||B|");

        let mut sandwich = vec![0; b_count * a_count];
        for b in 0..b_count {
            for a in 0..a_count {
                let x = s.mul(row_reps[b], column_reps[a]);
                if let Some(&g) = gpos.get(&x) {
                    sandwich[b * a_count + a] = g + 1;
                }
            }
        }

        let r = ReesCoordinatization {
            jclass: j,
            e,
            group,
            a_count,
            b_count,
            rclass_ids,
            lclass_ids,
            column_reps,
            row_reps,
            sandwich,
            group_table,
            element_at,
            position_of,
        };
        debug_assert!(r.verify_multiplication(s, greens));
        Ok(r)
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    /// Sandwich entry as a local group index, `None` for zero.
    #[inline]
    pub fn entry(&self, b: usize, a: usize) -> Option<usize> {
        match self.sandwich[b * self.a_count + a] {
            0 => None,
            k => Some(k - 1),
        }
    }

    /// The sandwich matrix with 0 for zero and `k` for group element `k - 1`.
    pub fn sandwich_rows(&self) -> Vec<Vec<usize>> {
        self.sandwich.chunks(self.a_count).map(|r| r.to_vec()).collect()
    }

    /// Product of local group indices.
    #[inline]
    pub fn gmul(&self, g: usize, h: usize) -> usize {
        self.group_table[g * self.group.len() + h]
    }

    pub fn as_group(&self) -> Group {
        Group::from_flat_unchecked(self.group.len(), self.group_table.clone(), 0)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position_of[x] != UNDEF
    }

    pub fn coord(&self, x: usize) -> Option<Coord> {
        let pos = self.position_of[x];
        if pos == UNDEF {
            return None;
        }
        let gsize = self.group.len();
        Some(Coord {
            a: pos / (gsize * self.b_count),
            g: (pos / self.b_count) % gsize,
            b: pos % self.b_count,
        })
    }

    pub fn element(&self, c: Coord) -> usize {
        self.element_at[(c.a * self.group.len() + c.g) * self.b_count + c.b]
    }

    /// `true` iff `x` lies in the R-class of `e`.
    pub fn in_base_rclass(&self, x: usize) -> bool {
        self.coord(x).is_some_and(|c| c.a == 0)
    }

    pub fn in_base_lclass(&self, x: usize) -> bool {
        self.coord(x).is_some_and(|c| c.b == 0)
    }

    /// Elements of `R_e`, ordered by `(g, b)`.
    pub fn base_rclass(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.group.len() * self.b_count);
        for g in 0..self.group.len() {
            for b in 0..self.b_count {
                v.push(self.element(Coord { a: 0, g, b }));
            }
        }
        v
    }

    /// Number of nonzero sandwich entries, which equals the number of
    /// idempotents in the J-class.
    pub fn nonzero_entries(&self) -> usize {
        self.sandwich.iter().filter(|&&k| k != 0).count()
    }

    /// Checks the Rees multiplication law against the table for every pair of
    /// elements of J, including products that fall out of J.
    pub fn verify_multiplication(&self, s: &FiniteSemigroup, greens: &GreensStructure) -> bool {
        let members = &greens.jclasses[self.jclass];
        for &x in members {
            let cx = self.coord(x).unwrap();
            for &y in members {
                let cy = self.coord(y).unwrap();
                let prod = s.mul(x, y);
                match self.entry(cx.b, cy.a) {
                    Some(c) => {
                        let g = self.gmul(self.gmul(cx.g, c), cy.g);
                        if prod != self.element(Coord { a: cx.a, g, b: cy.b }) {
                            return false;
                        }
                    }
                    None => {
                        if self.contains(prod) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
