//! Shared corpus and brute-force oracles for the integration tests. Every
//! oracle here works straight from the definitions, without Rees coordinates
//! or any of the library's shortcuts.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgmindeg::action::{
    cayley, faithful_by_criterion, greens_quotient, greens_quotient_fixpoint, orbits, pair_rule_classes,
    pair_rule_size, schutzenberger_right, semisimplify, tensor_action,
};
use sgmindeg::builders;
use sgmindeg::congruence::{
    ggm_congruence, is_rhodes_semisimple, proportionality_flags, rm_congruence, rm_congruences, rm_irreducible_classes,
    schein_irreducibility_check,
};
use sgmindeg::group::{coset_action, Group, GroupAction, SubgroupLattice};
use sgmindeg::mindeg::{dj, min_partial_degree, Analysis, MinDegConfig};
use sgmindeg::oracle::{brute_min_degree, Mode, OracleQuery};
use sgmindeg::{Congruence, FiniteSemigroup, PartialAction, PartialMap, Structure, UNDEF};

pub const SEED: u64 = 0x5eed_2026;
pub const MAX_RANDOM_ORDER: usize = 8;
pub const RANDOM_TARGET: usize = 220;

#[derive(Debug, Clone)]
pub struct Sample {
    pub name: String,
    pub semigroup: FiniteSemigroup,
    pub random: bool,
}

fn sample(name: impl Into<String>, semigroup: FiniteSemigroup) -> Sample {
    Sample {
        name: name.into(),
        semigroup,
        random: false,
    }
}

fn random_map(rng: &mut ChaCha8Rng, degree: usize) -> PartialMap {
    PartialMap::new(
        (0..degree)
            .map(|_| {
                let p = rng.gen_range(0..=degree);
                if p == degree {
                    UNDEF
                } else {
                    p
                }
            })
            .collect(),
    )
}

/// A sandwich matrix with every row and column holding a nonzero entry.
pub fn random_sandwich(rng: &mut ChaCha8Rng, order: usize, a: usize, b: usize, zero: bool) -> Vec<Vec<usize>> {
    loop {
        let c: Vec<Vec<usize>> = (0..b)
            .map(|_| {
                (0..a)
                    .map(|_| {
                        if zero && rng.gen_bool(0.35) {
                            0
                        } else {
                            rng.gen_range(1..=order)
                        }
                    })
                    .collect()
            })
            .collect();
        let rows_ok = c.iter().all(|row| row.iter().any(|&x| x != 0));
        let cols_ok = (0..a).all(|j| c.iter().any(|row| row[j] != 0));
        if rows_ok && cols_ok {
            return c;
        }
    }
}

pub fn small_group(rng: &mut ChaCha8Rng, max_order: usize) -> Group {
    let pool: Vec<Group> = [
        Group::cyclic(1),
        Group::cyclic(2),
        Group::cyclic(3),
        Group::symmetric(3),
        Group::cyclic(4),
    ]
    .into_iter()
    .filter(|g| g.order() <= max_order)
    .collect();
    pool[rng.gen_range(0..pool.len())].clone()
}

/// A random Rees matrix semigroup with at most `max_order` elements.
pub fn random_rees(rng: &mut ChaCha8Rng, max_order: usize) -> (Group, Vec<Vec<usize>>, bool, FiniteSemigroup) {
    loop {
        let zero = rng.gen_bool(0.5);
        let group = small_group(rng, max_order);
        let a = rng.gen_range(1..=3);
        let b = rng.gen_range(1..=3);
        if a * b * group.order() + usize::from(zero) > max_order {
            continue;
        }
        let c = random_sandwich(rng, group.order(), a, b, zero);
        let s = builders::rees(&group, &c, zero).expect("valid sandwich");
        return (group, c, zero, s);
    }
}

fn random_samples() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |out: &mut Vec<Sample>, name: String, s: FiniteSemigroup| {
        if s.size() <= MAX_RANDOM_ORDER && seen.insert(s.rows()) {
            out.push(Sample {
                name,
                semigroup: s,
                random: true,
            });
        }
    };
    let mut attempts = 0;
    while out.len() < RANDOM_TARGET {
        attempts += 1;
        assert!(attempts < 200_000, "corpus generation stalled at {} samples", out.len());
        match rng.gen_range(0..6) {
            0..=2 => {
                let degree = rng.gen_range(2..=4);
                let k = rng.gen_range(1..=3);
                let gens: Vec<PartialMap> = (0..k).map(|_| random_map(&mut rng, degree)).collect();
                if let Ok((s, _)) = FiniteSemigroup::from_partial_maps(degree, &gens, MAX_RANDOM_ORDER) {
                    push(&mut out, format!("pmaps#{attempts}"), s);
                }
            }
            3 | 4 => {
                let (_, _, _, s) = random_rees(&mut rng, MAX_RANDOM_ORDER);
                push(&mut out, format!("rees#{attempts}"), s);
            }
            _ => {
                // adjoin an identity or a zero, or take the opposite, of an earlier sample
                if out.is_empty() {
                    continue;
                }
                let base = out[rng.gen_range(0..out.len())].semigroup.clone();
                let s = match rng.gen_range(0..3) {
                    0 => base.with_identity(),
                    1 => base.with_zero(),
                    _ => base.opposite(),
                };
                push(&mut out, format!("derived#{attempts}"), s);
            }
        }
    }
    out
}

fn builder_samples() -> Vec<Sample> {
    let c2 = Group::cyclic(2);
    let mut out = vec![
        sample("B_2", builders::binary_relations(2).unwrap().semigroup),
        sample("M_2(F_2)", builders::matrix_monoid(2, 2).unwrap().semigroup),
        sample("SIM_2", builders::symmetric_inverse(2).unwrap().semigroup),
        sample("SIM_3", builders::symmetric_inverse(3).unwrap().semigroup),
        sample("T_2", builders::full_transformation(2).unwrap().semigroup),
        sample("T_3", builders::full_transformation(3).unwrap().semigroup),
        sample("PT_2", builders::partial_transformation(2).unwrap().semigroup),
        sample("S_3", builders::symmetric_group(3).unwrap().semigroup),
        sample("C_6", builders::group_semigroup(&Group::cyclic(6))),
        sample("RB(2,2)", builders::rectangular_band(2, 2).unwrap()),
        sample("RB(1,3)", builders::rectangular_band(1, 3).unwrap()),
        sample("RB(3,1)", builders::rectangular_band(3, 1).unwrap()),
        sample("C_2xRB(2,2)", builders::rectangular_group(&c2, 2, 2).unwrap()),
        sample("aggm_01(2,{01})", builders::aggm_01(2, &[vec![0, 1]]).unwrap()),
        sample("aggm_01(2,{0})", builders::aggm_01(2, &[vec![0]]).unwrap()),
        sample("null(3)", builders::null(3).unwrap()),
        sample("sigma_square(3,(01))", builders::sigma_square(3, &[1, 0, 2]).unwrap()),
        sample(
            "M0(C2,2,2,diag)",
            builders::rees(&c2, &[vec![1, 0], vec![0, 2]], true).unwrap(),
        ),
        sample(
            "M(C2,2,2,[[1,1],[1,2]])",
            builders::rees(&c2, &[vec![1, 1], vec![1, 2]], false).unwrap(),
        ),
    ];
    for k in 1..=5 {
        out.push(sample(format!("chain({k})"), builders::chain_semilattice(k).unwrap()));
    }
    for n in [1, 2, 3, 4] {
        out.push(sample(format!("C_{n}"), builders::group_semigroup(&Group::cyclic(n))));
    }
    out
}

/// At least 200 random semigroups of order at most 8 followed by the builder
/// families. Deterministic.
pub fn corpus() -> &'static [Sample] {
    static CORPUS: OnceLock<Vec<Sample>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut all = random_samples();
        all.extend(builder_samples());
        all
    })
}

pub fn random_part() -> impl Iterator<Item = &'static Sample> {
    corpus().iter().filter(|s| s.random)
}

// ---- brute-force definitions ------------------------------------------------

/// `s ~ t` iff for every `x ∈ J`, `xs` and `xt` are equal or both leave `J`.
pub fn brute_rm(s: &FiniteSemigroup, j: &[usize]) -> Congruence {
    let inside = membership(s.size(), j);
    let keys: Vec<Vec<usize>> = (0..s.size())
        .map(|t| {
            j.iter()
                .map(|&x| {
                    let p = s.mul(x, t);
                    if inside[p] {
                        p
                    } else {
                        UNDEF
                    }
                })
                .collect()
        })
        .collect();
    Congruence::from_keys(&keys)
}

/// `s ~ t` iff for all `x, y ∈ J`, `xsy` and `xty` are equal or both leave
/// `J`.
pub fn brute_ggm(s: &FiniteSemigroup, j: &[usize]) -> Congruence {
    let inside = membership(s.size(), j);
    let keys: Vec<Vec<usize>> = (0..s.size())
        .map(|t| {
            j.iter()
                .flat_map(|&x| j.iter().map(move |&y| (x, y)))
                .map(|(x, y)| {
                    let p = s.mul(s.mul(x, t), y);
                    if inside[p] {
                        p
                    } else {
                        UNDEF
                    }
                })
                .collect()
        })
        .collect();
    Congruence::from_keys(&keys)
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in set {
        m[x] = true;
    }
    m
}

/// J-classes from principal two-sided ideals.
pub fn brute_jclasses(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let n = s.size();
    let ideal = |x: usize| -> Vec<bool> {
        let mut m = vec![false; n];
        m[x] = true;
        for u in 0..n {
            m[s.mul(u, x)] = true;
            m[s.mul(x, u)] = true;
            for v in 0..n {
                m[s.mul(s.mul(u, x), v)] = true;
            }
        }
        m
    };
    let ideals: Vec<Vec<bool>> = (0..n).map(ideal).collect();
    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (x, ideal) in ideals.into_iter().enumerate() {
        groups.entry(ideal).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Whether `partition` (class id per point) is a congruence of the action.
pub fn is_action_congruence(omega: &PartialAction, partition: &[usize]) -> bool {
    let d = omega.degree();
    for p in 0..d {
        for q in p + 1..d {
            if partition[p] != partition[q] {
                continue;
            }
            for s in 0..omega.elements() {
                let (a, b) = (omega.act(p, s), omega.act(q, s));
                let ok = match (a == UNDEF, b == UNDEF) {
                    (true, true) => true,
                    (false, false) => partition[a] == partition[b],
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Calls `f` with every set partition of `0..d` as a restricted growth string.
pub fn for_each_partition(d: usize, mut f: impl FnMut(&[usize])) {
    fn go(rgs: &mut Vec<usize>, d: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if rgs.len() == d {
            f(rgs);
            return;
        }
        for c in 0..=max + 1 {
            rgs.push(c);
            go(rgs, d, max.max(c), f);
            rgs.pop();
        }
    }
    if d == 0 {
        f(&[]);
        return;
    }
    let mut rgs = vec![0];
    go(&mut rgs, d, 0, &mut f);
}

/// `p ~ q` in `a` implies `p ~ q` in `b`.
pub fn partition_refines(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|p| (p + 1..a.len()).all(|q| a[p] != a[q] || b[p] == b[q]))
}

pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    partition_refines(a, b) && partition_refines(b, a)
}

/// The coarsest congruence of `omega` that is the identity on `Ω·e`, by
/// enumerating every partition. Also checks that it is the largest one.
pub fn brute_greens_congruence(s: &FiniteSemigroup, omega: &PartialAction, e: usize) -> Vec<usize> {
    let d = omega.degree();
    let fixed: Vec<usize> = {
        let mut v: Vec<usize> = (0..d).map(|p| omega.act(p, e)).filter(|&q| q != UNDEF).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    assert!(s.is_idempotent(e));
    let mut valid: Vec<Vec<usize>> = Vec::new();
    for_each_partition(d, |p| {
        let separates = fixed
            .iter()
            .enumerate()
            .all(|(i, &x)| fixed[i + 1..].iter().all(|&y| p[x] != p[y]));
        if separates && is_action_congruence(omega, p) {
            valid.push(p.to_vec());
        }
    });
    let coarsest = valid
        .iter()
        .min_by_key(|p| p.iter().max().map_or(0, |m| m + 1))
        .expect("equality is always valid")
        .clone();
    assert!(
        valid.iter().all(|p| partition_refines(p, &coarsest)),
        "the admissible congruences have no largest element"
    );
    coarsest
}

/// Whether a semisimple action separates all elements (direct check).
pub fn separates(omega: &PartialAction) -> bool {
    let n = omega.elements();
    let maps: Vec<PartialMap> = (0..n).map(|s| omega.map_of(s)).collect();
    maps.iter().collect::<HashSet<_>>().len() == n
}

/// Every group action built from coset spaces with multiplicity, total degree
/// at most `max_degree`.
pub fn coset_multisets(
    group: &Group,
    lattice: &SubgroupLattice,
    max_each: usize,
    max_degree: usize,
) -> Vec<(Vec<usize>, GroupAction)> {
    let k = lattice.classes.len();
    let spaces: Vec<GroupAction> = (0..k)
        .map(|c| coset_action(group, &lattice.subgroup_set(c)).unwrap())
        .collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; k];
    loop {
        let degree: usize = counts.iter().zip(&spaces).map(|(&c, x)| c * x.degree()).sum();
        if degree > 0 && degree <= max_degree {
            let parts: Vec<GroupAction> = counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(spaces[i].clone(), c))
                .collect();
            out.push((counts.clone(), GroupAction::coproduct(&parts)));
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            counts[i] += 1;
            if counts[i] <= max_each {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

pub fn faithful_on(x: &GroupAction, subgroup: &[usize], identity: usize) -> bool {
    subgroup
        .iter()
        .all(|&g| g == identity || (0..x.degree()).any(|p| x.act(p, g) != p))
}

// ---- properties -------------------------------------------------------------

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_associative(s: &FiniteSemigroup) -> Check {
    ensure(s.associativity_witness().is_none(), || {
        "table is not associative".into()
    })
}

/// Green's J-classes and both reduced congruences against the definitions,
/// plus `≡_{RM,J} ⊆ ≡_J`.
pub fn check_congruences(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    let mut js = st.greens.jclasses.clone();
    for j in &mut js {
        j.sort_unstable();
    }
    js.sort();
    ensure(js == brute_jclasses(s), || {
        "J-classes differ from principal ideals".into()
    })?;
    for j in st.regular_jclasses() {
        let r = st.rees(j).map_err(|e| e.to_string())?;
        ensure(r.verify_multiplication(s, &st.greens), || {
            format!("Rees coordinates wrong at J{j}")
        })?;
        let members = &st.greens.jclasses[j];
        let rm = rm_congruence(s, r);
        let ggm = ggm_congruence(s, r);
        ensure(rm == brute_rm(s, members), || format!("RM congruence wrong at J{j}"))?;
        ensure(ggm == brute_ggm(s, members), || format!("J congruence wrong at J{j}"))?;
        ensure(rm.refines(&ggm), || format!("RM not inside J congruence at J{j}"))?;
        ensure(rm.is_compatible(s) && ggm.is_compatible(s), || {
            format!("not a congruence at J{j}")
        })?;
        ensure(
            r.nonzero_entries() == st.greens.jclasses[j].iter().filter(|&&x| s.is_idempotent(x)).count(),
            || format!("idempotent count differs from nonzero sandwich entries at J{j}"),
        )?;
    }
    Ok(())
}

/// Irreducible classes give the same intersection as all regular classes,
/// none can be dropped, and the recorded witnesses are genuine.
pub fn check_irredundant(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    let n = s.size();
    let brute: Vec<Option<Congruence>> = (0..st.greens.num_jclasses())
        .map(|j| st.greens.regular[j].then(|| brute_rm(s, &st.greens.jclasses[j])))
        .collect();
    let report = rm_irreducible_classes(&st);
    let irr = report.irreducible();
    let all = Congruence::intersect_all(brute.iter().flatten()).unwrap_or_else(|| Congruence::universal(n));
    let over_irr = Congruence::intersect_all(irr.iter().map(|&j| brute[j].as_ref().unwrap()))
        .unwrap_or_else(|| Congruence::universal(n));
    ensure(all == over_irr, || {
        "irreducible classes give a different intersection".into()
    })?;
    for c in &report.classes {
        let j = c.jclass;
        let lower: Vec<usize> = st
            .greens
            .strictly_below(j)
            .into_iter()
            .filter(|&k| st.greens.regular[k])
            .collect();
        let here = brute[j].as_ref().unwrap();
        let escapes = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .any(|(a, b)| !here.related(a, b) && lower.iter().all(|&k| brute[k].as_ref().unwrap().related(a, b)));
        ensure(escapes == c.rm_irreducible, || {
            format!("irreducibility of J{j} disagrees with the definition")
        })?;
        if !c.rm_irreducible {
            continue;
        }
        let (a, b) = c.witness.ok_or_else(|| format!("J{j} has no witness"))?;
        ensure(!here.related(a, b), || format!("J{j} witness is related at J"))?;
        ensure(lower.iter().all(|&k| brute[k].as_ref().unwrap().related(a, b)), || {
            format!("J{j} witness is separated below")
        })?;
        // a pair separated only by J
        let members = &st.greens.jclasses[j];
        let inside = membership(n, members);
        let x = members
            .iter()
            .copied()
            .find(|&x| (inside[s.mul(x, a)] || inside[s.mul(x, b)]) && s.mul(x, a) != s.mul(x, b))
            .ok_or_else(|| format!("no separating x in J{j}"))?;
        let (u, v) = (s.mul(x, a), s.mul(x, b));
        for (k, cong) in brute.iter().enumerate() {
            if let Some(cong) = cong {
                ensure(cong.related(u, v) == (k != j), || {
                    format!("pair for J{j} misbehaves at J{k}")
                })?;
            }
        }
        let without = Congruence::intersect_all(irr.iter().filter(|&&k| k != j).map(|&k| brute[k].as_ref().unwrap()))
            .unwrap_or_else(|| Congruence::universal(n));
        ensure(without != all, || format!("J{j} can be omitted"))?;
        // M_J is a normal subgroup of G_J
        let r = st.rees(j).unwrap();
        let g = r.as_group();
        let mj = g.subset(&c.mj_local);
        ensure(g.is_subgroup(&mj) && g.is_normal(&mj), || {
            format!("M_J at J{j} is not normal")
        })?;
    }
    Ok(())
}

/// Actions to feed the orbit-level properties: the Cayley action, the
/// Schützenberger coproduct, and Green's quotients of tensor products.
pub fn sample_actions(st: &Structure) -> Vec<PartialAction> {
    let s = &st.semigroup;
    let mut actions = vec![cayley(s)];
    let mut sch = Vec::new();
    for j in st.regular_jclasses() {
        let r = st.rees(j).unwrap();
        sch.push(schutzenberger_right(s, r).0);
        let g = r.as_group();
        actions.push(tensor_action(s, r, &GroupAction::trivial(&g)));
        actions.push(
            greens_quotient(s, &tensor_action(s, r, &GroupAction::regular(&g)), r.e)
                .unwrap()
                .0,
        );
    }
    if !sch.is_empty() {
        actions.push(PartialAction::coproduct(&sch));
        let mut with_cayley = sch.clone();
        with_cayley.push(cayley(s));
        actions.push(PartialAction::coproduct(&with_cayley));
    }
    actions
}

/// For each transitive orbit of a semisimplified action, `r ↦ α·r` maps
/// `R_J` of the apex equivariantly onto the orbit.
pub fn check_apex(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    for omega in sample_actions(&st) {
        ensure(omega.is_compatible(s), || "sample action is not an action".into())?;
        let (ss, _) = semisimplify(&st, &omega);
        let dec = orbits(&st, &ss);
        for (_, orbit) in dec.transitive() {
            let j = orbit.apex.unwrap();
            let r = st.rees(j).map_err(|_| format!("apex J{j} is not regular"))?;
            // minimality and uniqueness of the apex
            for k in 0..st.greens.num_jclasses() {
                let hits = st.greens.jclasses[k]
                    .iter()
                    .any(|&t| orbit.points.iter().any(|&p| ss.act(p, t) != UNDEF));
                if k == j {
                    ensure(hits, || "apex annihilates its orbit".into())?;
                } else if !st.greens.is_below(j, k) {
                    ensure(!hits, || format!("J{k} acts on an orbit with apex J{j}"))?;
                }
            }
            let alpha = orbit
                .points
                .iter()
                .map(|&p| ss.act(p, r.e))
                .find(|&q| q != UNDEF)
                .ok_or("no point fixed by e")?;
            let rj = r.base_rclass();
            let phi: Vec<usize> = rj.iter().map(|&x| ss.act(alpha, x)).collect();
            ensure(phi.iter().all(|&q| q != UNDEF && orbit.points.contains(&q)), || {
                "apex map leaves the orbit".into()
            })?;
            let mut image = phi.clone();
            image.sort_unstable();
            image.dedup();
            ensure(image.len() == orbit.points.len(), || "apex map is not onto".into())?;
            for (i, &x) in rj.iter().enumerate() {
                for t in 0..s.size() {
                    let xt = s.mul(x, t);
                    let lhs = rj.iter().position(|&y| y == xt).map_or(UNDEF, |k| phi[k]);
                    ensure(lhs == ss.act(phi[i], t), || "apex map is not equivariant".into())?;
                }
            }
        }
    }
    Ok(())
}

/// When `≡_RM` is equality, semisimplifying a faithful action keeps it
/// faithful and does not grow it.
pub fn check_semisimplification(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    let rm = rm_congruences(&st);
    let trivial = Congruence::intersect_all(rm.iter().flatten()).is_some_and(|c| c.is_equality());
    for omega in sample_actions(&st) {
        let (ss, _) = semisimplify(&st, &omega);
        ensure(ss.degree() <= omega.degree(), || "semisimplification grew".into())?;
        ensure(sgmindeg::action::is_semisimple(&st, &ss), || {
            "semisimplification is not semisimple".into()
        })?;
        if trivial && separates(&omega) {
            ensure(separates(&ss), || "semisimplification lost faithfulness".into())?;
        }
    }
    Ok(())
}

/// The faithfulness criterion agrees with the direct check on semisimple
/// actions.
pub fn check_criterion(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    let verdict = is_rhodes_semisimple(&st);
    if !verdict.semisimple {
        return Ok(());
    }
    let report = rm_irreducible_classes(&st);
    let mut candidates = Vec::new();
    for omega in sample_actions(&st) {
        let (ss, _) = semisimplify(&st, &omega);
        candidates.push(ss);
    }
    // single Schützenberger actions, which are often not faithful
    for j in st.regular_jclasses() {
        candidates.push(schutzenberger_right(s, st.rees(j).unwrap()).0);
    }
    for omega in candidates {
        let by_criterion = faithful_by_criterion(&st, &omega, &verdict, &report).map_err(|e| e.to_string())?;
        ensure(by_criterion == separates(&omega), || {
            format!(
                "criterion says {by_criterion} on an action of degree {}",
                omega.degree()
            )
        })?;
    }
    Ok(())
}

/// Pair rule, generic quotient, fixpoint quotient and (when small) the
/// partition enumeration all agree on `X ⊗ R_J`.
pub fn check_quotients(s: &FiniteSemigroup, brute_limit: usize) -> Check {
    let st = Structure::new(s.clone());
    for j in st.regular_jclasses() {
        let r = st.rees(j).unwrap();
        let g = r.as_group();
        let lattice = SubgroupLattice::compute(&g, 720).map_err(|e| e.to_string())?;
        let spaces: Vec<GroupAction> = (0..lattice.classes.len())
            .map(|c| coset_action(&g, &lattice.subgroup_set(c)).unwrap())
            .collect();
        for x in &spaces {
            let tensor = tensor_action(s, r, x);
            ensure(tensor.is_compatible(s), || {
                format!("tensor product is not an action at J{j}")
            })?;
            ensure(tensor.degree() == x.degree() * r.b_count, || {
                "tensor has the wrong size".into()
            })?;
            let (q, classes) = greens_quotient(s, &tensor, r.e).unwrap();
            let (_, fixpoint) = greens_quotient_fixpoint(s, &tensor, r.e, &st.greens.generators).unwrap();
            let pair = pair_rule_classes(r, x);
            ensure(same_partition(&classes, &pair), || {
                format!("pair rule disagrees at J{j}")
            })?;
            ensure(same_partition(&classes, &fixpoint), || {
                format!("fixpoint quotient disagrees at J{j}")
            })?;
            ensure(q.is_compatible(s), || "quotient is not an action".into())?;
            if tensor.degree() <= brute_limit {
                let brute = brute_greens_congruence(s, &tensor, r.e);
                ensure(same_partition(&classes, &brute), || {
                    format!("Green's congruence is not the largest at J{j}")
                })?;
            }
            if sgmindeg::congruence::column_condition(r) {
                ensure(q.degree() == tensor.degree(), || {
                    format!("column condition but nontrivial quotient at J{j}")
                })?;
            }
        }
        // additivity over coproducts
        if spaces.len() >= 2 {
            let x = GroupAction::coproduct(&spaces);
            let whole = greens_quotient(s, &tensor_action(s, r, &x), r.e).unwrap().0.degree();
            let sum: usize = spaces.iter().map(|y| pair_rule_size(r, y)).sum();
            ensure(whole == sum, || {
                format!("quotient is not additive at J{j}: {whole} vs {sum}")
            })?;
        }
    }
    Ok(())
}

/// `d_J` from the report matches the search over multisets of coset spaces,
/// and the general search matches the fast paths.
pub fn check_dj_search(s: &FiniteSemigroup, max_each: usize, max_degree: usize) -> Check {
    let an = Analysis::new(s);
    if !an.verdict.semisimple {
        return Ok(());
    }
    let st = &an.structure;
    let fast = MinDegConfig::default();
    let general = MinDegConfig {
        force_general: true,
        ..MinDegConfig::default()
    };
    for irr in an.irreducibility.classes.iter().filter(|c| c.rm_irreducible) {
        let (d_fast, _) = dj(st, irr, None, &fast).map_err(|e| e.to_string())?;
        let (d_gen, _) = dj(st, irr, None, &general).map_err(|e| e.to_string())?;
        ensure(d_fast.dj == d_gen.dj, || {
            format!("fast path {} vs general {}", d_fast.dj, d_gen.dj)
        })?;
        let r = st.rees(irr.jclass).unwrap();
        let g = r.as_group();
        let lattice = SubgroupLattice::compute(&g, 720).unwrap();
        let best = coset_multisets(&g, &lattice, max_each, max_degree)
            .into_iter()
            .filter(|(_, x)| faithful_on(x, &irr.mj_local, g.identity()))
            .map(|(_, x)| greens_quotient(s, &tensor_action(s, r, &x), r.e).unwrap().0.degree())
            .min();
        if let Some(best) = best {
            ensure(best == d_fast.dj, || {
                format!("multiset search {best} vs d_J {}", d_fast.dj)
            })?;
        }
    }
    Ok(())
}

/// Schein's order-theoretic test agrees with RM-irreducibility and `M_J`.
pub fn check_schein(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    let schein = schein_irreducibility_check(&st).map_err(|e| e.to_string())?;
    let report = rm_irreducible_classes(&st);
    for v in schein {
        let c = report.get(v.jclass).unwrap();
        ensure(v.irreducible == c.rm_irreducible, || {
            format!("irreducibility differs at J{}", v.jclass)
        })?;
        if v.irreducible {
            ensure(v.mj == c.mj, || {
                format!("M_J differs at J{}: {:?} vs {:?}", v.jclass, v.mj, c.mj)
            })?;
        }
    }
    Ok(())
}

/// Proportionality flags against the congruences, for a semigroup whose only
/// nonzero J-class is its principal factor.
pub fn check_proportionality(s: &FiniteSemigroup) -> Check {
    let st = Structure::new(s.clone());
    // the trivial semigroup is simple even though its element is a zero
    let nonzero: Vec<usize> = (0..st.greens.num_jclasses())
        .filter(|&j| s.size() == 1 || s.zero().is_none_or(|z| st.greens.jclasses[j] != [z]))
        .collect();
    if nonzero.len() != 1 || !st.greens.regular[nonzero[0]] {
        return Err("not a (0-)simple semigroup".into());
    }
    let j = nonzero[0];
    let r = st.rees(j).unwrap();
    let flags = proportionality_flags(r);
    let rm = brute_rm(s, &st.greens.jclasses[j]).is_equality();
    let ggm = brute_ggm(s, &st.greens.jclasses[j]).is_equality();
    let op = s.opposite();
    let lm = brute_rm(&op, &st.greens.jclasses[j]).is_equality();
    ensure(flags.rm == rm, || {
        format!("RM flag {} but congruence says {rm}", flags.rm)
    })?;
    ensure(flags.lm == lm, || {
        format!("LM flag {} but congruence says {lm}", flags.lm)
    })?;
    ensure(flags.ggm == ggm, || {
        format!("GGM flag {} but congruence says {ggm}", flags.ggm)
    })?;
    Ok(())
}

pub fn is_zero_simple(s: &FiniteSemigroup) -> bool {
    check_proportionality(s).map_or_else(|e| e != "not a (0-)simple semigroup", |_| true)
}

/// Oracle degrees: theory equals the partial oracle, `m ≤ μ ≤ m + 1`, and
/// for inverse semigroups partial bijections give the same degree.
pub fn check_oracle(s: &FiniteSemigroup) -> Check {
    let partial = brute_min_degree(&OracleQuery::new(s, Mode::Partial)).map_err(|e| e.to_string())?;
    let m = partial.degree().ok_or("no partial embedding found")?;
    let total = brute_min_degree(&OracleQuery::new(s, Mode::Total).degrees(m, m + 1)).map_err(|e| e.to_string())?;
    let mu = total.degree().ok_or("no total embedding up to m + 1")?;
    ensure(m <= mu && mu <= m + 1, || format!("m = {m}, mu = {mu}"))?;
    if s.is_inverse() {
        let pb = brute_min_degree(&OracleQuery::new(s, Mode::PartialBijection)).map_err(|e| e.to_string())?;
        ensure(pb.degree() == Some(m), || {
            format!("partial bijections give {:?}, partial maps {m}", pb.degree())
        })?;
    }
    match min_partial_degree(s, &MinDegConfig::default()) {
        Ok(report) => {
            ensure(report.m == m, || format!("theory m = {} but oracle m = {m}", report.m))?;
            if let Some(t) = report.total_degree.exact() {
                ensure(t == mu, || format!("theory total degree {t} but oracle {mu}"))?;
            }
            if s.is_inverse() {
                ensure(report.witness_action.is_by_partial_bijections(), || {
                    "inverse semigroup witness uses non-injective maps".into()
                })?;
            }
        }
        Err(sgmindeg::Error::NotRhodesSemisimple { .. }) => {}
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

/// Collects failures of `check` over `samples` as `name: message` lines.
pub fn failures<'a>(
    samples: impl IntoIterator<Item = &'a Sample>,
    check: impl Fn(&FiniteSemigroup) -> Check,
) -> Vec<String> {
    samples
        .into_iter()
        .filter_map(|smp| check(&smp.semigroup).err().map(|e| format!("{}: {e}", smp.name)))
        .collect()
}
