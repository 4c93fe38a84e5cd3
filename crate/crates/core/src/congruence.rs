//! Congruences attached to regular J-classes, Rhodes semisimplicity and
//! RM-irreducibility.
//!
//! Both congruences are computed from reduced signatures. For `x = p_a g q_b`
//! in J, `xs` lies in J iff `q_b s` does, and then `xs = p_a g (q_b s)`; so
//! comparing `q_b s` over the rows `b` decides `≡_{RM,J}`. The same argument
//! on both sides reduces `≡_J` to comparing `q_b s p_a` over `(b, a)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::partition_from_keys;
use crate::rees::ReesCoordinatization;
use crate::semigroup::{FiniteSemigroup, UNDEF};
use crate::structure::Structure;

/// An equivalence on element indices; classes are numbered by lowest member,
/// so two values are equal iff they are the same partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Congruence {
    pub fn from_keys<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Self {
        let (class_of, classes) = partition_from_keys(keys);
        Congruence { class_of, classes }
    }

    pub fn equality(n: usize) -> Self {
        Congruence {
            class_of: (0..n).collect(),
            classes: (0..n).map(|x| vec![x]).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        Congruence {
            class_of: vec![0; n],
            classes: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Classes with more than one element.
    pub fn nontrivial_classes(&self) -> Vec<Vec<usize>> {
        self.classes.iter().filter(|c| c.len() > 1).cloned().collect()
    }

    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let keys: Vec<(usize, usize)> = (0..self.size())
            .map(|x| (self.class_of[x], other.class_of[x]))
            .collect();
        Congruence::from_keys(&keys)
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.class_of[x] == other.class_of[c[0]]))
    }

    /// A pair related here but not in `other`.
    pub fn escaping_pair(&self, other: &Congruence) -> Option<(usize, usize)> {
        self.classes.iter().find_map(|c| {
            c.iter()
                .find(|&&x| other.class_of[x] != other.class_of[c[0]])
                .map(|&x| (c[0], x))
        })
    }

    pub fn is_equality(&self) -> bool {
        self.classes.len() == self.size()
    }

    pub fn is_universal(&self) -> bool {
        self.classes.len() <= 1
    }

    /// Checks `s ~ t ⇒ us ~ ut, su ~ tu` for every `u`.
    pub fn is_compatible(&self, s: &FiniteSemigroup) -> bool {
        self.classes.iter().all(|c| {
            c.windows(2).all(|w| {
                (0..s.size()).all(|u| {
                    self.related(s.mul(u, w[0]), s.mul(u, w[1])) && self.related(s.mul(w[0], u), s.mul(w[1], u))
                })
            })
        })
    }

    /// Intersection of a family; `None` for the empty family.
    pub fn intersect_all<'a>(family: impl IntoIterator<Item = &'a Congruence>) -> Option<Congruence> {
        family.into_iter().fold(None, |acc, c| match acc {
            None => Some(c.clone()),
            Some(a) => Some(a.intersect(c)),
        })
    }
}

fn in_j(r: &ReesCoordinatization, x: usize) -> usize {
    if r.contains(x) {
        x
    } else {
        UNDEF
    }
}

/// `s ~ t` iff `s` and `t` act identically on J by right multiplication.
pub fn rm_congruence(s: &FiniteSemigroup, r: &ReesCoordinatization) -> Congruence {
    let keys: Vec<Vec<usize>> = (0..s.size())
        .map(|t| r.row_reps.iter().map(|&q| in_j(r, s.mul(q, t))).collect())
        .collect();
    Congruence::from_keys(&keys)
}

/// `s ~ t` iff `xsy` and `xty` agree (or both leave J) for all `x, y` in J.
pub fn ggm_congruence(s: &FiniteSemigroup, r: &ReesCoordinatization) -> Congruence {
    let keys: Vec<Vec<usize>> = (0..s.size())
        .map(|t| {
            let mut key = Vec::with_capacity(r.b_count * r.a_count);
            for &q in &r.row_reps {
                let qt = s.mul(q, t);
                for &p in &r.column_reps {
                    key.push(if r.contains(qt) { in_j(r, s.mul(qt, p)) } else { UNDEF });
                }
            }
            key
        })
        .collect();
    Congruence::from_keys(&keys)
}

pub fn rm_congruence_at(st: &Structure, j: usize) -> Result<Congruence> {
    Ok(rm_congruence(&st.semigroup, st.rees(j)?))
}

pub fn ggm_congruence_at(st: &Structure, j: usize) -> Result<Congruence> {
    Ok(ggm_congruence(&st.semigroup, st.rees(j)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhodesVerdict {
    pub semisimple: bool,
    /// Intersection of `≡_J` over all regular J.
    pub ggm: Congruence,
}

pub fn is_rhodes_semisimple(st: &Structure) -> RhodesVerdict {
    let parts: Vec<Congruence> = st
        .regular_jclasses()
        .into_par_iter()
        .map(|j| ggm_congruence(&st.semigroup, st.rees(j).unwrap()))
        .collect();
    let ggm = Congruence::intersect_all(&parts).unwrap_or_else(|| Congruence::universal(st.semigroup.size()));
    RhodesVerdict {
        semisimple: ggm.is_equality(),
        ggm,
    }
}

/// Irreducibility data of one regular J-class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JIrreducibility {
    pub jclass: usize,
    pub rm_irreducible: bool,
    /// Related by every lower `≡_{RM,J'}` but not by `≡_{RM,J}`.
    pub witness: Option<(usize, usize)>,
    /// Elements of `M_J`, sorted.
    pub mj: Vec<usize>,
    /// Positions of `M_J` in the local group numbering, sorted.
    pub mj_local: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    /// One entry per regular J-class, ascending by id.
    pub classes: Vec<JIrreducibility>,
}

impl IrreducibilityReport {
    pub fn irreducible(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|c| c.rm_irreducible)
            .map(|c| c.jclass)
            .collect()
    }

    pub fn get(&self, j: usize) -> Option<&JIrreducibility> {
        self.classes.iter().find(|c| c.jclass == j)
    }
}

/// `≡_{RM,J}` for every regular J, indexed by J-class id.
pub fn rm_congruences(st: &Structure) -> Vec<Option<Congruence>> {
    (0..st.greens.num_jclasses())
        .into_par_iter()
        .map(|j| st.rees(j).ok().map(|r| rm_congruence(&st.semigroup, r)))
        .collect()
}

pub fn rm_irreducible_classes(st: &Structure) -> IrreducibilityReport {
    let rm = rm_congruences(st);
    let classes = st
        .regular_jclasses()
        .into_par_iter()
        .map(|j| {
            let r = st.rees(j).unwrap();
            let lower =
                Congruence::intersect_all(st.greens.strictly_below(j).into_iter().filter_map(|k| rm[k].as_ref()));
            let here = rm[j].as_ref().unwrap();
            let witness = match &lower {
                Some(l) => l.escaping_pair(here),
                None => Congruence::universal(st.semigroup.size()).escaping_pair(here),
            };
            let mj_local: Vec<usize> = (0..r.group_order())
                .filter(|&g| lower.as_ref().is_none_or(|l| l.related(r.group[g], r.e)))
                .collect();
            let mut mj: Vec<usize> = mj_local.iter().map(|&g| r.group[g]).collect();
            mj.sort_unstable();
            JIrreducibility {
                jclass: j,
                rm_irreducible: witness.is_some(),
                witness,
                mj,
                mj_local,
            }
        })
        .collect();
    IrreducibilityReport { classes }
}

/// Irreducibility and `M_J` read off the natural partial order of an inverse
/// semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheinVerdict {
    pub jclass: usize,
    pub irreducible: bool,
    pub mj: Vec<usize>,
}

pub fn schein_irreducibility_check(st: &Structure) -> Result<Vec<ScheinVerdict>> {
    let s = &st.semigroup;
    if !s.is_inverse() {
        return Err(Error::NotInverse);
    }
    let idem = &st.greens.idempotents;
    // f ≤ g for an idempotent f iff f = fg
    let below = |f: usize, g: usize| s.mul(f, g) == f;
    let mut out = Vec::new();
    for j in st.regular_jclasses() {
        let r = st.rees(j)?;
        let e = r.e;
        let lower: Vec<usize> = idem.iter().copied().filter(|&f| f != e && below(f, e)).collect();
        let irreducible = if lower.is_empty() {
            s.zero() != Some(e)
        } else {
            // e is not the join of the idempotents under it
            idem.iter().any(|&f| lower.iter().all(|&d| below(d, f)) && !below(e, f))
        };
        let mut mj: Vec<usize> = r
            .group
            .iter()
            .copied()
            .filter(|&g| lower.iter().all(|&f| below(f, g) && f != g))
            .collect();
        mj.sort_unstable();
        out.push(ScheinVerdict {
            jclass: j,
            irreducible,
            mj,
        });
    }
    Ok(out)
}

/// Every two distinct rows differ in the zero pattern of some column.
pub fn column_condition(r: &ReesCoordinatization) -> bool {
    (0..r.b_count).all(|b| {
        (b + 1..r.b_count).all(|b2| (0..r.a_count).any(|a| r.entry(b, a).is_some() != r.entry(b2, a).is_some()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProportionalityFlags {
    /// No two columns are right proportional.
    pub rm: bool,
    /// No two rows are left proportional.
    pub lm: bool,
    pub ggm: bool,
}

pub fn proportionality_flags(r: &ReesCoordinatization) -> ProportionalityFlags {
    let n = r.group_order();
    let scale_right = |c: Option<usize>, g: usize| c.map(|c| r.gmul(c, g));
    let scale_left = |c: Option<usize>, g: usize| c.map(|c| r.gmul(g, c));
    let columns_proportional =
        |a: usize, a2: usize| (0..n).any(|g| (0..r.b_count).all(|b| scale_right(r.entry(b, a), g) == r.entry(b, a2)));
    let rows_proportional =
        |b: usize, b2: usize| (0..n).any(|g| (0..r.a_count).all(|a| scale_left(r.entry(b, a), g) == r.entry(b2, a)));
    let rm = (0..r.a_count).all(|a| (a + 1..r.a_count).all(|a2| !columns_proportional(a, a2)));
    let lm = (0..r.b_count).all(|b| (b + 1..r.b_count).all(|b2| !rows_proportional(b, b2)));
    ProportionalityFlags { rm, lm, ggm: rm && lm }
}
