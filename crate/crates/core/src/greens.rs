//! Green's relations and the order on J-classes.

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::semigroup::FiniteSemigroup;

/// R-, L-, J- and H-classes of a finite semigroup plus the strict order on
/// J-classes. Class ids are assigned in order of their lowest element.
#[derive(Debug, Clone)]
pub struct GreensStructure {
    pub rclass_of: Vec<usize>,
    pub lclass_of: Vec<usize>,
    pub jclass_of: Vec<usize>,
    pub hclass_of: Vec<usize>,
    pub rclasses: Vec<Vec<usize>>,
    pub lclasses: Vec<Vec<usize>>,
    pub jclasses: Vec<Vec<usize>>,
    pub hclasses: Vec<Vec<usize>>,
    /// `below[j]` holds the J-classes strictly below `j`.
    below: Vec<FixedBitSet>,
    pub regular: Vec<bool>,
    pub idempotents: Vec<usize>,
    pub generators: Vec<usize>,
}

/// Strongly connected components relabelled in order of lowest member.
pub(crate) fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    for _ in 0..n {
        graph.add_node(());
    }
    for (a, b) in edges {
        if a != b {
            graph.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    let mut id = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for &x in c {
            id[x] = i;
        }
    }
    (id, comps)
}

pub(crate) fn partition_from_keys<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut map = std::collections::HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut id = vec![0; keys.len()];
    for (x, k) in keys.iter().enumerate() {
        let c = *map.entry(k.clone()).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(x);
        id[x] = c;
    }
    (id, classes)
}

impl GreensStructure {
    pub fn compute(s: &FiniteSemigroup) -> Self {
        let n = s.size();
        let gens = s.generating_set();
        let right = |x: usize| gens.iter().map(move |&g| (x, s.mul(x, g)));
        let left = |x: usize| gens.iter().map(move |&g| (x, s.mul(g, x)));

        let (rclass_of, rclasses) = components(n, (0..n).flat_map(right));
        let (lclass_of, lclasses) = components(n, (0..n).flat_map(left));
        let (jclass_of, jclasses) = components(n, (0..n).flat_map(|x| right(x).chain(left(x))));
        let hkeys: Vec<(usize, usize)> = (0..n).map(|x| (rclass_of[x], lclass_of[x])).collect();
        let (hclass_of, hclasses) = partition_from_keys(&hkeys);

        let nj = jclasses.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nj];
        for x in 0..n {
            for &g in &gens {
                for y in [s.mul(x, g), s.mul(g, x)] {
                    let (a, b) = (jclass_of[x], jclass_of[y]);
                    if a != b && !succ[a].contains(&b) {
                        succ[a].push(b);
                    }
                }
            }
        }
        let below = (0..nj)
            .map(|j| {
                let mut seen = FixedBitSet::with_capacity(nj);
                let mut stack = succ[j].clone();
                while let Some(k) = stack.pop() {
                    if !seen.put(k) {
                        stack.extend(succ[k].iter().copied());
                    }
                }
                seen
            })
            .collect();

        let idempotents = s.idempotents();
        let mut regular = vec![false; nj];
        for &e in &idempotents {
            regular[jclass_of[e]] = true;
        }
        GreensStructure {
            rclass_of,
            lclass_of,
            jclass_of,
            hclass_of,
            rclasses,
            lclasses,
            jclasses,
            hclasses,
            below,
            regular,
            idempotents,
            generators: gens,
        }
    }

    pub fn num_jclasses(&self) -> usize {
        self.jclasses.len()
    }

    /// `a < b` in the J-order.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.below[b][a]
    }

    /// J-classes strictly below `j`, ascending.
    pub fn strictly_below(&self, j: usize) -> Vec<usize> {
        self.below[j].ones().collect()
    }

    pub fn regular_jclasses(&self) -> Vec<usize> {
        (0..self.num_jclasses()).filter(|&j| self.regular[j]).collect()
    }

    /// J-classes ordered so that every class comes before those below it.
    pub fn top_down(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.num_jclasses()).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(self.below[j].count_ones(..)));
        order
    }

    /// R-class ids contained in J-class `j`, ascending.
    pub fn rclasses_in(&self, j: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.jclasses[j].iter().map(|&x| self.rclass_of[x]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn lclasses_in(&self, j: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.jclasses[j].iter().map(|&x| self.lclass_of[x]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Elements ordered so that maximal J-classes come first.
    pub fn elements_top_down(&self) -> Vec<usize> {
        self.top_down()
            .into_iter()
            .flat_map(|j| self.jclasses[j].iter().copied())
            .collect()
    }
}
