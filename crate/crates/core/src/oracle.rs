//! Brute-force search for the least degree of a faithful representation by
//! partial maps, total maps or partial bijections.
//!
//! Only generator images are searched. Generators are taken in a fixed order
//! and after each assignment the images of the subsemigroup they generate are
//! derived along a breadth-first word tree, checked for the defining
//! relations and for injectivity. Simultaneous conjugation by a permutation
//! of the points maps embeddings to embeddings, so each new image is required
//! to be lexicographically least under the stabilizer of the images already
//! chosen.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::GreensStructure;
use crate::group::permutations;
use crate::semigroup::{FiniteSemigroup, PartialMap, UNDEF};

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);
pub const BUDGET_ENV: &str = "SGMINDEG_TIME_BUDGET_SECS";
/// Largest semigroup accepted by the oracle.
pub const ORACLE_CAP: usize = 1000;
/// Largest degree for which the point-permutation symmetry is enumerated.
const SYMMETRY_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Partial,
    Total,
    PartialBijection,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "partial" => Ok(Mode::Partial),
            "total" => Ok(Mode::Total),
            "pbij" | "partial_bijection" => Ok(Mode::PartialBijection),
            _ => Err(Error::BadParameters(format!(
                "unknown mode {s:?}; use partial, total or pbij"
            ))),
        }
    }
}

/// Budget from the environment, else the default.
pub fn budget_from_env() -> Duration {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|&v| v > 0.0)
        .map_or(DEFAULT_BUDGET, Duration::from_secs_f64)
}

#[derive(Debug, Clone)]
pub struct OracleQuery {
    pub semigroup: FiniteSemigroup,
    pub mode: Mode,
    pub min_n: usize,
    pub max_n: usize,
    pub generators: Vec<usize>,
    pub budget: Duration,
}

impl OracleQuery {
    /// Degrees `0..=|S| + 1` (the Cayley action on `S¹` always works), the
    /// generating set chosen greedily from the top J-classes down.
    pub fn new(semigroup: &FiniteSemigroup, mode: Mode) -> Self {
        let greens = GreensStructure::compute(semigroup);
        let order = greens.elements_top_down();
        let generators = semigroup.generating_set_in_order(Some(&order));
        OracleQuery {
            semigroup: semigroup.clone(),
            mode,
            min_n: 0,
            max_n: semigroup.size() + 1,
            generators,
            budget: budget_from_env(),
        }
    }

    pub fn degrees(mut self, min_n: usize, max_n: usize) -> Self {
        self.min_n = min_n;
        self.max_n = max_n;
        self
    }

    pub fn budget(mut self, budget: Duration) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleOutcome {
    /// Least degree with an image for each query generator.
    Found {
        degree: usize,
        images: Vec<PartialMap>,
    },
    NotFoundUpTo(usize),
}

impl OracleOutcome {
    pub fn degree(&self) -> Option<usize> {
        match self {
            OracleOutcome::Found { degree, .. } => Some(*degree),
            OracleOutcome::NotFoundUpTo(_) => None,
        }
    }
}

type Map = Vec<u8>;
const NONE: u8 = u8::MAX;

fn compose(f: &[u8], g: &[u8]) -> Map {
    f.iter()
        .map(|&p| if p == NONE { NONE } else { g[p as usize] })
        .collect()
}

/// Index and period of a map under composition.
fn map_index_period(f: &[u8]) -> (usize, usize) {
    let mut seen: HashMap<Map, usize> = HashMap::new();
    let mut cur = f.to_vec();
    let mut k = 1;
    loop {
        if let Some(&i) = seen.get(&cur) {
            return (i, k - i);
        }
        seen.insert(cur.clone(), k);
        cur = compose(&cur, f);
        k += 1;
    }
}

fn to_partial_map(f: &[u8]) -> PartialMap {
    PartialMap::new(f.iter().map(|&p| if p == NONE { UNDEF } else { p as usize }).collect())
}

fn all_candidates(n: usize, mode: Mode) -> Vec<Map> {
    let base = if mode == Mode::Total { n } else { n + 1 };
    let count = base.pow(n as u32);
    let mut out = Vec::with_capacity(count);
    for mut code in 0..count {
        let mut f = vec![0u8; n];
        for i in (0..n).rev() {
            let d = code % base;
            code /= base;
            f[i] = if d == n { NONE } else { d as u8 };
        }
        if mode == Mode::PartialBijection {
            let mut seen = vec![false; n];
            if f.iter()
                .any(|&p| p != NONE && std::mem::replace(&mut seen[p as usize], true))
            {
                continue;
            }
        }
        out.push(f);
    }
    out
}

/// `π⁻¹ f π`, i.e. `x ↦ π(f(π⁻¹ x))`.
fn conjugate(f: &[u8], pi: &[usize], pi_inv: &[usize]) -> Map {
    (0..f.len())
        .map(|x| match f[pi_inv[x]] {
            NONE => NONE,
            y => pi[y as usize] as u8,
        })
        .collect()
}

/// Word tree for each prefix of the generators.
struct Plan {
    /// New elements at level k, each `(element, parent, generator position)`;
    /// a parent of `UNDEF` marks the generator itself.
    levels: Vec<Vec<(usize, usize, usize)>>,
    /// Elements generated by the first `k + 1` generators.
    members: Vec<Vec<usize>>,
}

fn plan(s: &FiniteSemigroup, gens: &[usize]) -> Plan {
    let n = s.size();
    let mut reached = vec![false; n];
    let mut order: Vec<usize> = Vec::new();
    let mut levels = Vec::new();
    let mut members = Vec::new();
    for (k, &g) in gens.iter().enumerate() {
        let mut level = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        if !reached[g] {
            reached[g] = true;
            level.push((g, UNDEF, k));
            queue.push(g);
        }
        // every old element times the new generator, then close up
        let mut frontier: Vec<(usize, usize)> = order.iter().map(|&x| (x, k)).collect();
        let mut qi = 0;
        loop {
            while let Some((x, gi)) = frontier.pop() {
                let y = s.mul(x, gens[gi]);
                if !reached[y] {
                    reached[y] = true;
                    level.push((y, x, gi));
                    queue.push(y);
                }
            }
            if qi == queue.len() {
                break;
            }
            let x = queue[qi];
            qi += 1;
            frontier.extend((0..=k).map(|gi| (x, gi)));
        }
        order.extend(level.iter().map(|&(x, _, _)| x));
        levels.push(level);
        members.push(order.clone());
    }
    Plan { levels, members }
}

struct Search<'a> {
    s: &'a FiniteSemigroup,
    gens: &'a [usize],
    plan: &'a Plan,
    candidates: Vec<Vec<Map>>,
    perms: Option<Vec<(Vec<usize>, Vec<usize>)>>,
    images: Vec<Option<Map>>,
    start: Instant,
    budget: Duration,
    nodes: u64,
    degree: usize,
}

impl Search<'_> {
    fn timed_out(&mut self) -> bool {
        self.nodes += 1;
        self.nodes % 1024 == 1 && self.start.elapsed() > self.budget
    }

    /// Assigns generator `k`; `image_set` holds the images of earlier members.
    fn go(&mut self, k: usize, stab: &[usize], image_set: &mut HashSet<Map>) -> Result<bool> {
        if k == self.gens.len() {
            return Ok(true);
        }
        let g = self.gens[k];
        let level = &self.plan.levels[k];
        // a generator reached by earlier ones has its image forced
        let forced = if level.iter().any(|&(x, _, _)| x == g) {
            None
        } else {
            Some(self.images[g].clone().expect("generator reached earlier"))
        };
        let count = if forced.is_some() { 1 } else { self.candidates[k].len() };
        for ci in 0..count {
            if self.timed_out() {
                return Err(Error::Timeout {
                    secs: self.budget.as_secs(),
                    degree: self.degree,
                });
            }
            let cand = forced.clone().unwrap_or_else(|| self.candidates[k][ci].clone());
            if let (Some(perms), None) = (&self.perms, &forced) {
                if stab.iter().any(|&p| conjugate(&cand, &perms[p].0, &perms[p].1) < cand) {
                    continue;
                }
            }
            let mut added: Vec<usize> = Vec::new();
            if self.extend(k, &cand, image_set, &mut added) {
                let next_stab: Vec<usize> = match &self.perms {
                    Some(perms) => stab
                        .iter()
                        .copied()
                        .filter(|&p| conjugate(&cand, &perms[p].0, &perms[p].1) == cand)
                        .collect(),
                    None => Vec::new(),
                };
                if self.go(k + 1, &next_stab, image_set)? {
                    return Ok(true);
                }
            }
            for x in added {
                if let Some(img) = self.images[x].take() {
                    image_set.remove(&img);
                }
            }
        }
        Ok(false)
    }

    /// Derives the images of the new members of level `k` and checks the
    /// relations and injectivity; `added` collects what was assigned.
    fn extend(&mut self, k: usize, cand: &Map, image_set: &mut HashSet<Map>, added: &mut Vec<usize>) -> bool {
        for &(x, parent, gi) in &self.plan.levels[k] {
            let img = if parent == UNDEF {
                cand.clone()
            } else {
                let gimg = if gi == k {
                    cand
                } else {
                    self.images[self.gens[gi]].as_ref().unwrap()
                };
                compose(self.images[parent].as_ref().unwrap(), gimg)
            };
            if !image_set.insert(img.clone()) {
                return false;
            }
            self.images[x] = Some(img);
            added.push(x);
        }
        // φ(x)φ(g_i) = φ(x g_i) where x is new or g_i is the new generator
        let fresh = self.plan.levels[k].len();
        let members = &self.plan.members[k];
        let first_new = members.len() - fresh;
        for (pos, &x) in members.iter().enumerate() {
            let fx = self.images[x].as_ref().unwrap();
            let from = if pos >= first_new { 0 } else { k };
            for gi in from..=k {
                let g = self.gens[gi];
                let fg = self.images[g].as_ref().unwrap_or(cand);
                let y = self.s.mul(x, g);
                match self.images[y].as_ref() {
                    Some(fy) if compose(fx, fg) == *fy => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Least degree in `[min_n, max_n]` admitting an embedding of the given mode.
pub fn brute_min_degree(q: &OracleQuery) -> Result<OracleOutcome> {
    let s = &q.semigroup;
    if s.size() > ORACLE_CAP {
        return Err(Error::SizeLimitExceeded { cap: ORACLE_CAP });
    }
    if q.generators.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    if s.closure(&q.generators).count_ones(..) != s.size() {
        return Err(Error::BadParameters(
            "the query generators do not generate the semigroup".into(),
        ));
    }
    if q.max_n > u8::MAX as usize - 1 {
        return Err(Error::BadParameters("degree too large for the oracle".into()));
    }
    let start = Instant::now();
    let plan = plan(s, &q.generators);
    for n in q.min_n..=q.max_n {
        log::debug!("oracle: trying degree {n}");
        let all = all_candidates(n, q.mode);
        let mut by_shape: HashMap<(usize, usize), Vec<Map>> = HashMap::new();
        for f in all {
            by_shape.entry(map_index_period(&f)).or_default().push(f);
        }
        let candidates: Vec<Vec<Map>> = q
            .generators
            .iter()
            .map(|&g| by_shape.get(&s.index_period(g)).cloned().unwrap_or_default())
            .collect();
        let perms = (n <= SYMMETRY_LIMIT).then(|| {
            permutations(n)
                .into_iter()
                .map(|p| {
                    let mut inv = vec![0; n];
                    for (i, &x) in p.iter().enumerate() {
                        inv[x] = i;
                    }
                    (p, inv)
                })
                .collect::<Vec<_>>()
        });
        let stab: Vec<usize> = perms.as_ref().map_or(Vec::new(), |p| (0..p.len()).collect());
        let mut search = Search {
            s,
            gens: &q.generators,
            plan: &plan,
            candidates,
            perms,
            images: vec![None; s.size()],
            start,
            budget: q.budget,
            nodes: 0,
            degree: n,
        };
        let mut image_set = HashSet::new();
        if search.go(0, &stab, &mut image_set)? {
            let images = q
                .generators
                .iter()
                .map(|&g| to_partial_map(search.images[g].as_ref().unwrap()))
                .collect();
            return Ok(OracleOutcome::Found { degree: n, images });
        }
    }
    Ok(OracleOutcome::NotFoundUpTo(q.max_n))
}

/// Checks that `generators ↦ images` extends to an injective homomorphism of
/// `S` into partial maps.
pub fn verify_embedding(s: &FiniteSemigroup, generators: &[usize], images: &[PartialMap]) -> bool {
    if generators.len() != images.len() || generators.is_empty() {
        return false;
    }
    let degree = images[0].degree();
    if images.iter().any(|m| m.degree() != degree) {
        return false;
    }
    let mut phi: Vec<Option<PartialMap>> = vec![None; s.size()];
    let mut queue = Vec::new();
    for (&g, img) in generators.iter().zip(images) {
        match &phi[g] {
            Some(old) if old != img => return false,
            Some(_) => {}
            None => {
                phi[g] = Some(img.clone());
                queue.push(g);
            }
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, img) in generators.iter().zip(images) {
            let y = s.mul(x, g);
            let fy = phi[x].as_ref().unwrap().then(img);
            match &phi[y] {
                Some(old) if *old != fy => return false,
                Some(_) => {}
                None => {
                    phi[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    if queue.len() != s.size() {
        return false;
    }
    let distinct: HashSet<&PartialMap> = phi.iter().map(|m| m.as_ref().unwrap()).collect();
    distinct.len() == s.size()
}
