//! Right actions of a semigroup by partial maps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::congruence::{IrreducibilityReport, RhodesVerdict};
use crate::error::{Error, Result};
use crate::greens::{components, partition_from_keys};
use crate::group::GroupAction;
use crate::rees::ReesCoordinatization;
use crate::semigroup::{FiniteSemigroup, PartialMap, UNDEF};
use crate::structure::Structure;

/// `images[s * degree + p]` is `p·s`, or `UNDEF`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ActionRepr", try_from = "ActionRepr")]
pub struct PartialAction {
    degree: usize,
    elements: usize,
    images: Vec<usize>,
}

/// Serialized form: one row per element, `null` for undefined.
#[derive(Serialize, Deserialize)]
struct ActionRepr {
    degree: usize,
    maps: Vec<Vec<Option<usize>>>,
}

impl From<PartialAction> for ActionRepr {
    fn from(a: PartialAction) -> Self {
        ActionRepr {
            degree: a.degree,
            maps: (0..a.elements)
                .map(|s| {
                    (0..a.degree)
                        .map(|p| Some(a.act(p, s)).filter(|&q| q != UNDEF))
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<ActionRepr> for PartialAction {
    type Error = String;

    fn try_from(r: ActionRepr) -> std::result::Result<Self, String> {
        let mut images = Vec::with_capacity(r.maps.len() * r.degree);
        for row in &r.maps {
            if row.len() != r.degree {
                return Err(format!(
                    "row of length {} in an action of degree {}",
                    row.len(),
                    r.degree
                ));
            }
            for &q in row {
                match q {
                    Some(q) if q >= r.degree => return Err(format!("point {q} out of range")),
                    Some(q) => images.push(q),
                    None => images.push(UNDEF),
                }
            }
        }
        Ok(PartialAction {
            degree: r.degree,
            elements: r.maps.len(),
            images,
        })
    }
}

impl PartialAction {
    pub fn from_images(elements: usize, degree: usize, images: Vec<usize>) -> Self {
        assert_eq!(images.len(), elements * degree);
        debug_assert!(images.iter().all(|&p| p == UNDEF || p < degree));
        PartialAction {
            degree,
            elements,
            images,
        }
    }

    pub fn from_fn(elements: usize, degree: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut images = Vec::with_capacity(elements * degree);
        for s in 0..elements {
            for p in 0..degree {
                images.push(f(p, s));
            }
        }
        Self::from_images(elements, degree, images)
    }

    /// One partial map per element.
    pub fn from_maps(maps: &[PartialMap]) -> Self {
        let degree = maps.first().map_or(0, PartialMap::degree);
        let images = maps.iter().flat_map(|m| m.images().iter().copied()).collect();
        Self::from_images(maps.len(), degree, images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    #[inline]
    pub fn act(&self, p: usize, s: usize) -> usize {
        self.images[s * self.degree + p]
    }

    pub fn map_of(&self, s: usize) -> PartialMap {
        PartialMap::new(self.images[s * self.degree..(s + 1) * self.degree].to_vec())
    }

    pub fn maps(&self) -> Vec<PartialMap> {
        (0..self.elements).map(|s| self.map_of(s)).collect()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(|&p| p != UNDEF)
    }

    /// Every element acts by a partial bijection.
    pub fn is_by_partial_bijections(&self) -> bool {
        (0..self.elements).all(|s| self.map_of(s).is_injective())
    }

    /// A triple `(p, s, t)` with `p·(st) ≠ (p·s)·t`.
    pub fn compatibility_witness(&self, s: &FiniteSemigroup) -> Option<(usize, usize, usize)> {
        for a in 0..s.size() {
            for b in 0..s.size() {
                let ab = s.mul(a, b);
                for p in 0..self.degree {
                    let q = self.act(p, a);
                    let lhs = if q == UNDEF { UNDEF } else { self.act(q, b) };
                    if lhs != self.act(p, ab) {
                        return Some((p, a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, s: &FiniteSemigroup) -> bool {
        self.compatibility_witness(s).is_none()
    }

    /// Two distinct elements inducing the same map.
    pub fn faithfulness_witness(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for s in 0..self.elements {
            let row = &self.images[s * self.degree..(s + 1) * self.degree];
            if let Some(&t) = seen.get(row) {
                return Some((t, s));
            }
            seen.insert(row, s);
        }
        None
    }

    pub fn is_faithful(&self) -> bool {
        self.faithfulness_witness().is_none()
    }

    /// Restriction to `points`, renumbered in the given order; images leaving
    /// the set become undefined.
    pub fn restrict(&self, points: &[usize]) -> PartialAction {
        let mut new_of = vec![UNDEF; self.degree];
        for (i, &p) in points.iter().enumerate() {
            new_of[p] = i;
        }
        Self::from_fn(self.elements, points.len(), |i, s| {
            let q = self.act(points[i], s);
            if q == UNDEF {
                UNDEF
            } else {
                new_of[q]
            }
        })
    }

    /// Disjoint union; points of later summands are shifted.
    pub fn coproduct(parts: &[PartialAction]) -> PartialAction {
        let elements = parts.first().map_or(0, |p| p.elements);
        let degree = parts.iter().map(|p| p.degree).sum();
        let mut images = vec![UNDEF; elements * degree];
        let mut offset = 0;
        for part in parts {
            assert_eq!(part.elements, elements);
            for s in 0..elements {
                for p in 0..part.degree {
                    let q = part.act(p, s);
                    if q != UNDEF {
                        images[s * degree + offset + p] = offset + q;
                    }
                }
            }
            offset += part.degree;
        }
        PartialAction {
            degree,
            elements,
            images,
        }
    }

    /// The action rendered one line per element, `-` for undefined.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.degree);
        for s in 0..self.elements {
            let row: Vec<String> = (0..self.degree)
                .map(|p| match self.act(p, s) {
                    UNDEF => "-".to_string(),
                    q => q.to_string(),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Action of `S` on itself by right multiplication.
pub fn right_regular(s: &FiniteSemigroup) -> PartialAction {
    PartialAction::from_fn(s.size(), s.size(), |p, t| s.mul(p, t))
}

/// Right regular action on `S¹`, the extra point playing the identity. Always
/// faithful.
pub fn cayley(s: &FiniteSemigroup) -> PartialAction {
    let n = s.size();
    PartialAction::from_fn(n, n + 1, |p, t| if p == n { t } else { s.mul(p, t) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKind {
    Transitive,
    Null,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub kind: OrbitKind,
    /// Minimal J-class not annihilating the orbit; transitive orbits only.
    pub apex: Option<usize>,
    /// No point of the orbit is sent to another orbit.
    pub invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn transitive(&self) -> impl Iterator<Item = (usize, &Orbit)> {
        self.orbits
            .iter()
            .enumerate()
            .filter(|(_, o)| o.kind == OrbitKind::Transitive)
    }
}

pub fn orbits(st: &Structure, omega: &PartialAction) -> OrbitDecomposition {
    let gens = &st.greens.generators;
    let d = omega.degree();
    let edges = (0..d).flat_map(|p| {
        gens.iter()
            .map(move |&g| (p, omega.act(p, g)))
            .filter(|&(_, q)| q != UNDEF)
    });
    let (orbit_of, comps) = components(d, edges);
    let orbits = comps
        .into_iter()
        .enumerate()
        .map(|(id, points)| {
            let null = points.len() == 1 && (0..omega.elements()).all(|s| omega.act(points[0], s) != points[0]);
            let invariant = points.iter().all(|&p| {
                gens.iter().all(|&g| {
                    let q = omega.act(p, g);
                    q == UNDEF || orbit_of[q] == id
                })
            });
            let apex = if null {
                None
            } else {
                Some(apex_of(st, omega, &orbit_of, id, &points))
            };
            Orbit {
                points,
                kind: if null { OrbitKind::Null } else { OrbitKind::Transitive },
                apex,
                invariant,
            }
        })
        .collect();
    OrbitDecomposition { orbit_of, orbits }
}

fn apex_of(st: &Structure, omega: &PartialAction, orbit_of: &[usize], id: usize, points: &[usize]) -> usize {
    let g = &st.greens;
    let mut live = vec![false; g.num_jclasses()];
    for s in 0..omega.elements() {
        let j = g.jclass_of[s];
        if !live[j]
            && points.iter().any(|&p| {
                let q = omega.act(p, s);
                q != UNDEF && orbit_of[q] == id
            })
        {
            live[j] = true;
        }
    }
    let minimal: Vec<usize> = (0..live.len())
        .filter(|&j| live[j] && !(0..live.len()).any(|k| live[k] && g.is_below(k, j)))
        .collect();
    assert_eq!(minimal.len(), 1, "a transitive orbit has a unique apex");
    let apex = minimal[0];
    assert!(g.regular[apex], "the apex of a transitive orbit is regular");
    apex
}

/// Restriction to the transitive orbits, each closed off from the others.
/// Returns the action and the original point of each new point.
pub fn semisimplify(st: &Structure, omega: &PartialAction) -> (PartialAction, Vec<usize>) {
    let dec = orbits(st, omega);
    let keep: Vec<usize> = (0..omega.degree())
        .filter(|&p| dec.orbits[dec.orbit_of[p]].kind == OrbitKind::Transitive)
        .collect();
    let mut new_of = vec![UNDEF; omega.degree()];
    for (i, &p) in keep.iter().enumerate() {
        new_of[p] = i;
    }
    let action = PartialAction::from_fn(omega.elements(), keep.len(), |i, s| {
        let p = keep[i];
        let q = omega.act(p, s);
        if q != UNDEF && dec.orbit_of[q] == dec.orbit_of[p] {
            new_of[q]
        } else {
            UNDEF
        }
    });
    (action, keep)
}

pub fn is_semisimple(st: &Structure, omega: &PartialAction) -> bool {
    let dec = orbits(st, omega);
    dec.orbits
        .iter()
        .all(|o| o.kind == OrbitKind::Transitive && o.invariant)
}

/// Right multiplication on `R_e`, points in the order of
/// [`ReesCoordinatization::base_rclass`].
pub fn schutzenberger_right(s: &FiniteSemigroup, r: &ReesCoordinatization) -> (PartialAction, Vec<usize>) {
    let points = r.base_rclass();
    let mut index = vec![UNDEF; s.size()];
    for (i, &x) in points.iter().enumerate() {
        index[x] = i;
    }
    let action = PartialAction::from_fn(s.size(), points.len(), |i, t| index[s.mul(points[i], t)]);
    (action, points)
}

/// Coproduct of the right Schützenberger actions at every regular J-class.
pub fn all_schutzenberger(st: &Structure) -> PartialAction {
    let parts: Vec<PartialAction> = st
        .regular_jclasses()
        .into_iter()
        .map(|j| schutzenberger_right(&st.semigroup, st.rees(j).unwrap()).0)
        .collect();
    PartialAction::coproduct(&parts)
}

/// Decides faithfulness of a semisimple action from its orbit structure: for
/// every RM-irreducible J the orbits with apex J exist and, multiplied by
/// `e_J`, form a faithful `M_J`-set.
pub fn faithful_by_criterion(
    st: &Structure,
    omega: &PartialAction,
    verdict: &RhodesVerdict,
    report: &IrreducibilityReport,
) -> Result<bool> {
    if !verdict.semisimple {
        return Err(Error::NotRhodesSemisimple {
            classes: verdict.ggm.nontrivial_classes(),
        });
    }
    let dec = orbits(st, omega);
    if !dec
        .orbits
        .iter()
        .all(|o| o.kind == OrbitKind::Transitive && o.invariant)
    {
        return Err(Error::NotSemisimpleAction);
    }
    for c in report.classes.iter().filter(|c| c.rm_irreducible) {
        let r = st.rees(c.jclass)?;
        let mut fixed: Vec<usize> = dec
            .transitive()
            .filter(|(_, o)| o.apex == Some(c.jclass))
            .flat_map(|(_, o)| o.points.iter().map(|&p| omega.act(p, r.e)))
            .filter(|&q| q != UNDEF)
            .collect();
        if fixed.is_empty() {
            return Ok(false);
        }
        fixed.sort_unstable();
        fixed.dedup();
        let faithful =
            c.mj.iter()
                .filter(|&&g| g != r.e)
                .all(|&g| fixed.iter().any(|&p| omega.act(p, g) != p));
        if !faithful {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X ⊗ R_J` in Rees coordinates: point `(x, b)` is `x * b_count + b` and
/// stands for `x ⊗ q_b`. The group acts through the local numbering of `r`.
pub fn tensor_action(s: &FiniteSemigroup, r: &ReesCoordinatization, x: &GroupAction) -> PartialAction {
    let bc = r.b_count;
    PartialAction::from_fn(s.size(), x.degree() * bc, |p, t| {
        let (xp, b) = (p / bc, p % bc);
        match r.coord(s.mul(r.row_reps[b], t)) {
            Some(c) if c.a == 0 => x.act(xp, c.g) * bc + c.b,
            _ => UNDEF,
        }
    })
}

/// Quotient of an action by the partition `class_of`, which must be a
/// congruence of the action.
fn quotient_by(omega: &PartialAction, class_of: &[usize], classes: &[Vec<usize>]) -> PartialAction {
    PartialAction::from_fn(omega.elements(), classes.len(), |c, s| {
        let q = omega.act(classes[c][0], s);
        if q == UNDEF {
            UNDEF
        } else {
            class_of[q]
        }
    })
}

/// Green's quotient at the idempotent `e`: `α ~ β` iff `α·te = β·te` for all
/// `t ∈ S¹`. Returns the quotient action and the class of each point.
pub fn greens_quotient(s: &FiniteSemigroup, omega: &PartialAction, e: usize) -> Result<(PartialAction, Vec<usize>)> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let te: Vec<usize> = (0..s.size()).map(|t| s.mul(t, e)).collect();
    let keys: Vec<Vec<usize>> = (0..omega.degree())
        .map(|p| {
            std::iter::once(omega.act(p, e))
                .chain(te.iter().map(|&u| omega.act(p, u)))
                .collect()
        })
        .collect();
    let (class_of, classes) = partition_from_keys(&keys);
    Ok((quotient_by(omega, &class_of, &classes), class_of))
}

/// The same quotient computed by partition refinement over `generators`,
/// starting from the kernel of `α ↦ α·e` on `Ω ∪ {⊥}`.
pub fn greens_quotient_fixpoint(
    s: &FiniteSemigroup,
    omega: &PartialAction,
    e: usize,
    generators: &[usize],
) -> Result<(PartialAction, Vec<usize>)> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let d = omega.degree();
    let sink = d;
    let step = |p: usize, t: usize| if p == sink { sink } else { omega.act(p, t) };
    let lift = |q: usize| if q == UNDEF { sink } else { q };
    let initial: Vec<usize> = (0..=d).map(|p| lift(step(p, e))).collect();
    let (mut class_of, mut count) = {
        let (c, cl) = partition_from_keys(&initial);
        (c, cl.len())
    };
    loop {
        let keys: Vec<Vec<usize>> = (0..=d)
            .map(|p| {
                std::iter::once(class_of[p])
                    .chain(generators.iter().map(|&g| class_of[lift(step(p, g))]))
                    .collect()
            })
            .collect();
        let (next, cl) = partition_from_keys(&keys);
        class_of = next;
        if cl.len() == count {
            break;
        }
        count = cl.len();
    }
    let keys: Vec<usize> = class_of[..d].to_vec();
    let (class_of, classes) = partition_from_keys(&keys);
    Ok((quotient_by(omega, &class_of, &classes), class_of))
}

/// Classes of the Green's quotient of `X ⊗ R_J` by the pair rule
/// `(x,b) ~ (x',b')` iff `x·C_{ba} = x'·C_{b'a}` for all `a`.
pub fn pair_rule_classes(r: &ReesCoordinatization, x: &GroupAction) -> Vec<usize> {
    let bc = r.b_count;
    let keys: Vec<Vec<usize>> = (0..x.degree() * bc)
        .map(|p| {
            let (xp, b) = (p / bc, p % bc);
            (0..r.a_count)
                .map(|a| r.entry(b, a).map_or(UNDEF, |c| x.act(xp, c)))
                .collect()
        })
        .collect();
    partition_from_keys(&keys).0
}

/// Number of classes of the pair rule.
pub fn pair_rule_size(r: &ReesCoordinatization, x: &GroupAction) -> usize {
    pair_rule_classes(r, x).into_iter().max().map_or(0, |m| m + 1)
}
