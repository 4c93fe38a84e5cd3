//! Minimal degree of a faithful representation by partial maps for Rhodes
//! semisimple semigroups: one contribution `d_J` per RM-irreducible J-class.

use std::fmt::Write as _;
use std::time::Duration;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{faithful_by_criterion, greens_quotient, pair_rule_size, tensor_action, PartialAction};
use crate::congruence::{
    column_condition, is_rhodes_semisimple, rm_irreducible_classes, IrreducibilityReport, JIrreducibility,
    RhodesVerdict,
};
use crate::error::{Error, Result};
use crate::group::{
    coset_action, min_cost_cover, min_degree_faithful_on, GroupAction, SubgroupLattice, DEFAULT_SUBGROUP_CAP,
};
use crate::oracle::{brute_min_degree, Mode, OracleOutcome, OracleQuery};
use crate::rees::ReesCoordinatization;
use crate::semigroup::FiniteSemigroup;
use crate::structure::Structure;

#[derive(Debug, Clone)]
pub struct MinDegConfig {
    pub subgroup_cap: usize,
    /// Skip the fast paths and always run the search over subgroup classes.
    pub force_general: bool,
    /// Settle the total degree with the oracle when it is not determined by
    /// theory and the semigroup has at most this many elements.
    pub resolve_total: Option<(usize, Duration)>,
}

impl Default for MinDegConfig {
    fn default() -> Self {
        MinDegConfig {
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            force_general: false,
            resolve_total: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FastPath {
    Aggm,
    ColumnCondition,
    GeneralSearch,
}

/// One coset space `G_J / H` used by the witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessClass {
    /// Elements of `H` as semigroup elements, sorted.
    pub subgroup: Vec<usize>,
    pub index: usize,
    pub core_order: usize,
    /// Points contributed after the Green's quotient.
    pub quotient_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDegree {
    pub jclass: usize,
    pub idempotent: usize,
    /// Number of L-classes.
    pub ell: usize,
    pub group_order: usize,
    pub mj_order: usize,
    pub fast_path: FastPath,
    pub dj: usize,
    pub witness: Vec<WitnessClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TotalDegree {
    Exact { value: usize, reason: String },
    Interval { low: usize, high: usize, reason: String },
}

impl TotalDegree {
    pub fn exact(&self) -> Option<usize> {
        match self {
            TotalDegree::Exact { value, .. } => Some(*value),
            TotalDegree::Interval { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDegReport {
    pub size: usize,
    pub rhodes_semisimple: bool,
    pub classes: Vec<ClassDegree>,
    pub m: usize,
    pub witness_action: PartialAction,
    pub total_degree: TotalDegree,
    /// Report for the opposite semigroup, when requested and computable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Box<MinDegReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_note: Option<String>,
    /// `l(S) ≤ 2^m(S) − 1`, when both sides were computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_bound_holds: Option<bool>,
}

/// `d_J` for one irreducible class, with the action realizing it.
pub fn dj(
    st: &Structure,
    irr: &JIrreducibility,
    lattice: Option<&SubgroupLattice>,
    config: &MinDegConfig,
) -> Result<(ClassDegree, PartialAction)> {
    if !irr.rm_irreducible {
        return Err(Error::NotIrreducible(irr.jclass));
    }
    let r = st.rees(irr.jclass)?;
    let group = r.as_group();
    let ell = r.b_count;
    let mj = group.subset(&irr.mj_local);

    let owned;
    let lattice = match lattice {
        Some(l) => l,
        None => {
            owned = SubgroupLattice::compute(&group, config.subgroup_cap)?;
            &owned
        }
    };

    let (fast_path, chosen): (FastPath, Vec<usize>) = if group.order() == 1 && !config.force_general {
        (FastPath::Aggm, vec![0])
    } else if !config.force_general && column_condition(r) {
        let sol = min_degree_faithful_on(lattice, &mj);
        // Ω_J must be nonempty; the one-point action is the cheapest orbit
        let chosen = if sol.chosen.is_empty() { vec![0] } else { sol.chosen };
        (FastPath::ColumnCondition, chosen)
    } else {
        let costs: Vec<usize> = (0..lattice.classes.len())
            .map(|c| pair_rule_size(r, &coset_action(&group, &lattice.subgroup_set(c)).unwrap()))
            .collect();
        let cores: Vec<FixedBitSet> = (0..lattice.classes.len()).map(|c| lattice.core_set(c)).collect();
        let sol = min_cost_cover(&group, &costs, &cores, &mj, true).expect("the regular action is faithful on M_J");
        (FastPath::GeneralSearch, sol.chosen)
    };

    let mut parts = Vec::new();
    let mut witness = Vec::new();
    for &c in &chosen {
        let h = lattice.subgroup_set(c);
        let x = coset_action(&group, &h)?;
        let action = quotient_of_tensor(&st.semigroup, r, &x)?;
        let class = &lattice.classes[c];
        let mut subgroup: Vec<usize> = class.elements.iter().map(|&g| r.group[g]).collect();
        subgroup.sort_unstable();
        witness.push(WitnessClass {
            subgroup,
            index: class.index,
            core_order: class.core.len(),
            quotient_size: action.degree(),
        });
        parts.push(action);
    }
    let action = PartialAction::coproduct(&parts);
    let degree = ClassDegree {
        jclass: irr.jclass,
        idempotent: r.e,
        ell,
        group_order: group.order(),
        mj_order: irr.mj_local.len(),
        fast_path,
        dj: action.degree(),
        witness,
    };
    if fast_path == FastPath::ColumnCondition {
        debug_assert_eq!(
            degree.dj,
            ell * chosen.iter().map(|&c| lattice.classes[c].index).sum::<usize>()
        );
    }
    Ok((degree, action))
}

/// Green's quotient at `e_J` of `X ⊗ R_J`, checked against the pair rule.
pub fn quotient_of_tensor(s: &FiniteSemigroup, r: &ReesCoordinatization, x: &GroupAction) -> Result<PartialAction> {
    let tensor = tensor_action(s, r, x);
    let (quotient, _) = greens_quotient(s, &tensor, r.e)?;
    assert_eq!(
        quotient.degree(),
        pair_rule_size(r, x),
        "Green's quotient disagrees with the pair rule"
    );
    Ok(quotient)
}

fn total_degree(s: &FiniteSemigroup, m: usize, witness: &PartialAction, config: &MinDegConfig) -> TotalDegree {
    if s.size() == 1 {
        return TotalDegree::Exact {
            value: 0,
            reason: "trivial semigroup: the empty map".into(),
        };
    }
    if witness.is_total() {
        return TotalDegree::Exact {
            value: m,
            reason: "the minimal witness is total".into(),
        };
    }
    if s.zero().is_some() {
        return TotalDegree::Exact {
            value: m + 1,
            reason: "the zero acts as the empty map, so a sink point is needed".into(),
        };
    }
    if let Some((cap, budget)) = config.resolve_total {
        if s.size() <= cap {
            let q = OracleQuery::new(s, Mode::Total).degrees(m, m).budget(budget);
            match brute_min_degree(&q) {
                Ok(OracleOutcome::Found { .. }) => {
                    return TotalDegree::Exact {
                        value: m,
                        reason: "oracle found a total embedding of degree m".into(),
                    }
                }
                Ok(OracleOutcome::NotFoundUpTo(_)) => {
                    return TotalDegree::Exact {
                        value: m + 1,
                        reason: "oracle found no total embedding of degree m".into(),
                    }
                }
                Err(e) => log::info!("total degree left open: {e}"),
            }
        }
    }
    TotalDegree::Interval {
        low: m,
        high: m + 1,
        reason: "no zero and the minimal witness is partial".into(),
    }
}

/// Everything the degree computation needs about one semigroup.
pub struct Analysis {
    pub structure: Structure,
    pub verdict: RhodesVerdict,
    pub irreducibility: IrreducibilityReport,
}

impl Analysis {
    pub fn new(s: &FiniteSemigroup) -> Self {
        let structure = Structure::new(s.clone());
        let verdict = is_rhodes_semisimple(&structure);
        let irreducibility = rm_irreducible_classes(&structure);
        Analysis {
            structure,
            verdict,
            irreducibility,
        }
    }
}

pub fn min_partial_degree(s: &FiniteSemigroup, config: &MinDegConfig) -> Result<MinDegReport> {
    min_partial_degree_of(&Analysis::new(s), config)
}

pub fn min_partial_degree_of(an: &Analysis, config: &MinDegConfig) -> Result<MinDegReport> {
    let st = &an.structure;
    let s = &st.semigroup;
    if !an.verdict.semisimple {
        return Err(Error::NotRhodesSemisimple {
            classes: an.verdict.ggm.nontrivial_classes(),
        });
    }
    let irreducible: Vec<&JIrreducibility> = an.irreducibility.classes.iter().filter(|c| c.rm_irreducible).collect();
    let results: Vec<(ClassDegree, PartialAction)> = irreducible
        .par_iter()
        .map(|irr| dj(st, irr, None, config))
        .collect::<Result<_>>()?;
    let (classes, parts): (Vec<ClassDegree>, Vec<PartialAction>) = results.into_iter().unzip();
    let m = classes.iter().map(|c| c.dj).sum();
    let witness_action = if parts.is_empty() {
        PartialAction::from_images(s.size(), 0, Vec::new())
    } else {
        PartialAction::coproduct(&parts)
    };
    assert_eq!(witness_action.degree(), m);
    assert!(witness_action.is_faithful(), "assembled witness is not faithful");
    assert!(
        faithful_by_criterion(st, &witness_action, &an.verdict, &an.irreducibility)?,
        "faithfulness criterion rejects the assembled witness"
    );
    let total_degree = total_degree(s, m, &witness_action, config);
    Ok(MinDegReport {
        size: s.size(),
        rhodes_semisimple: true,
        classes,
        m,
        witness_action,
        total_degree,
        left: None,
        left_note: None,
        left_bound_holds: None,
    })
}

/// The report for `S` with the opposite semigroup's report attached, and the
/// bound `l(S) ≤ 2^m(S) − 1` checked.
pub fn left_degrees(s: &FiniteSemigroup, config: &MinDegConfig) -> Result<MinDegReport> {
    let mut report = min_partial_degree(s, config)?;
    match min_partial_degree(&s.opposite(), config) {
        Ok(left) => {
            let bound = 1u128.checked_shl(report.m as u32).map(|b| b - 1);
            let holds = bound.is_none_or(|b| (left.m as u128) <= b);
            assert!(holds, "left degree exceeds 2^m - 1");
            report.left_bound_holds = Some(holds);
            report.left = Some(Box::new(left));
        }
        Err(Error::NotRhodesSemisimple { .. }) => {
            report.left_note = Some("the opposite semigroup is not Rhodes semisimple; use the oracle".into());
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

impl MinDegReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, "");
        out
    }

    fn render_into(&self, out: &mut String, title: &str) {
        let _ = writeln!(out, "{title}semigroup of order {}", self.size);
        let _ = writeln!(out, "rhodes semisimple: {}", self.rhodes_semisimple);
        for c in &self.classes {
            let path = match c.fast_path {
                FastPath::Aggm => "aggm",
                FastPath::ColumnCondition => "column_condition",
                FastPath::GeneralSearch => "general_search",
            };
            let _ = writeln!(
                out,
                "J-class {} (e = {}): ell = {}, |G| = {}, |M_J| = {}, path = {}, d_J = {}",
                c.jclass, c.idempotent, c.ell, c.group_order, c.mj_order, path, c.dj
            );
            for w in &c.witness {
                let _ = writeln!(
                    out,
                    "  subgroup of index {} (order {}, core order {}) -> {} points",
                    w.index,
                    w.subgroup.len(),
                    w.core_order,
                    w.quotient_size
                );
            }
        }
        let _ = writeln!(out, "m = {}", self.m);
        match &self.total_degree {
            TotalDegree::Exact { value, reason } => {
                let _ = writeln!(out, "total degree = {value} ({reason})");
            }
            TotalDegree::Interval { low, high, reason } => {
                let _ = writeln!(out, "total degree in [{low}, {high}] ({reason})");
            }
        }
        if let Some(left) = &self.left {
            let _ = writeln!(out, "l = {}", left.m);
            if let Some(h) = self.left_bound_holds {
                let _ = writeln!(out, "l <= 2^m - 1: {h}");
            }
        }
        if let Some(note) = &self.left_note {
            let _ = writeln!(out, "left: {note}");
        }
    }
}
