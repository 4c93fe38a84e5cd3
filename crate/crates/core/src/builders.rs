//! The standard families of finite semigroups, with their natural actions
//! where one exists.

use std::collections::HashMap;

use crate::action::PartialAction;
use crate::error::{Error, Result};
use crate::group::{permutations, Group};
use crate::semigroup::{FiniteSemigroup, PartialMap, UNDEF};

/// Largest semigroup a builder will tabulate.
pub const BUILD_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    FullTransformation {
        n: usize,
    },
    PartialTransformation {
        n: usize,
    },
    SymmetricInverse {
        n: usize,
    },
    MatrixMonoid {
        n: usize,
        q: usize,
    },
    BinaryRelations {
        n: usize,
    },
    /// Sandwich rows are indexed by B, columns by A; entries are 0 for zero
    /// or a 1-based group element.
    Rees {
        group: Group,
        sandwich: Vec<Vec<usize>>,
        zero: bool,
    },
    RectangularBand {
        m: usize,
        n: usize,
    },
    RectangularGroup {
        group: Group,
        m: usize,
        n: usize,
    },
    ChainSemilattice {
        k: usize,
    },
    Cyclic {
        n: usize,
    },
    SymmetricGroup {
        n: usize,
    },
    /// `σ` as its image list on `0..n`.
    SigmaSquare {
        n: usize,
        sigma: Vec<usize>,
    },
    /// `M⁰(1, [n + |X|], [n], [I_n | X])`, each subset of `0..n` giving one
    /// extra column.
    Aggm01 {
        n: usize,
        subsets: Vec<Vec<usize>>,
    },
    Null {
        n: usize,
    },
}

pub const FAMILIES: &[&str] = &[
    "full_transformation",
    "partial_transformation",
    "symmetric_inverse",
    "matrix_monoid",
    "binary_relations",
    "rectangular_band",
    "rectangular_group",
    "chain_semilattice",
    "cyclic",
    "symmetric_group",
    "sigma_square",
    "aggm_01",
    "null",
];

#[derive(Debug, Clone)]
pub struct Built {
    pub semigroup: FiniteSemigroup,
    pub natural: Option<PartialAction>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| bad(format!("expected a number, got {s:?}")))
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_usize).collect()
}

/// `C<n>` or `S<n>`.
pub fn parse_group(s: &str) -> Result<Group> {
    let (kind, n) = s.split_at(1.min(s.len()));
    let n = parse_usize(n)?;
    match kind {
        "C" | "c" if n >= 1 => Ok(Group::cyclic(n)),
        "S" | "s" if (1..=6).contains(&n) => Ok(Group::symmetric(n)),
        _ => Err(bad(format!("unknown group {s:?}; use C<n> or S<n> with n <= 6"))),
    }
}

impl FamilySpec {
    /// Parses a family name and its parameters as given on a command line.
    /// Lists are comma separated; the subsets of `aggm_01` are separate
    /// arguments, `{}` standing for the empty set.
    pub fn from_args(name: &str, params: &[String]) -> Result<FamilySpec> {
        let need = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(format!("{name} takes {k} parameter(s), got {}", params.len())))
            }
        };
        let num = |i: usize| parse_usize(&params[i]);
        Ok(match name {
            "full_transformation" => {
                need(1)?;
                FamilySpec::FullTransformation { n: num(0)? }
            }
            "partial_transformation" => {
                need(1)?;
                FamilySpec::PartialTransformation { n: num(0)? }
            }
            "symmetric_inverse" => {
                need(1)?;
                FamilySpec::SymmetricInverse { n: num(0)? }
            }
            "matrix_monoid" => {
                need(2)?;
                FamilySpec::MatrixMonoid { n: num(0)?, q: num(1)? }
            }
            "binary_relations" => {
                need(1)?;
                FamilySpec::BinaryRelations { n: num(0)? }
            }
            "rectangular_band" => {
                need(2)?;
                FamilySpec::RectangularBand { m: num(0)?, n: num(1)? }
            }
            "rectangular_group" => {
                need(3)?;
                FamilySpec::RectangularGroup {
                    group: parse_group(&params[0])?,
                    m: num(1)?,
                    n: num(2)?,
                }
            }
            "chain_semilattice" => {
                need(1)?;
                FamilySpec::ChainSemilattice { k: num(0)? }
            }
            "cyclic" => {
                need(1)?;
                FamilySpec::Cyclic { n: num(0)? }
            }
            "symmetric_group" => {
                need(1)?;
                FamilySpec::SymmetricGroup { n: num(0)? }
            }
            "sigma_square" => {
                need(2)?;
                FamilySpec::SigmaSquare {
                    n: num(0)?,
                    sigma: parse_list(&params[1])?,
                }
            }
            "aggm_01" => {
                if params.is_empty() {
                    return Err(bad("aggm_01 takes n followed by the subsets"));
                }
                let subsets = params[1..]
                    .iter()
                    .map(|p| if p == "{}" { Ok(Vec::new()) } else { parse_list(p) })
                    .collect::<Result<_>>()?;
                FamilySpec::Aggm01 { n: num(0)?, subsets }
            }
            "null" => {
                need(1)?;
                FamilySpec::Null { n: num(0)? }
            }
            _ => return Err(bad(format!("unknown family {name:?}; known: {}", FAMILIES.join(", ")))),
        })
    }
}

pub fn build(spec: &FamilySpec) -> Result<Built> {
    let plain = |s: FiniteSemigroup| Built {
        semigroup: s,
        natural: None,
    };
    match spec {
        FamilySpec::FullTransformation { n } => full_transformation(*n),
        FamilySpec::PartialTransformation { n } => partial_transformation(*n),
        FamilySpec::SymmetricInverse { n } => symmetric_inverse(*n),
        FamilySpec::MatrixMonoid { n, q } => matrix_monoid(*n, *q),
        FamilySpec::BinaryRelations { n } => binary_relations(*n),
        FamilySpec::Rees { group, sandwich, zero } => rees(group, sandwich, *zero).map(plain),
        FamilySpec::RectangularBand { m, n } => rectangular_band(*m, *n).map(plain),
        FamilySpec::RectangularGroup { group, m, n } => rectangular_group(group, *m, *n).map(plain),
        FamilySpec::ChainSemilattice { k } => chain_semilattice(*k).map(plain),
        FamilySpec::Cyclic { n } => {
            if *n == 0 {
                return Err(bad("cyclic group of order 0"));
            }
            Ok(plain(group_semigroup(&Group::cyclic(*n))))
        }
        FamilySpec::SymmetricGroup { n } => symmetric_group(*n),
        FamilySpec::SigmaSquare { n, sigma } => sigma_square(*n, sigma).map(plain),
        FamilySpec::Aggm01 { n, subsets } => aggm_01(*n, subsets).map(plain),
        FamilySpec::Null { n } => null(*n).map(plain),
    }
}

fn check_size(size: usize) -> Result<()> {
    if size > BUILD_CAP {
        Err(bad(format!("{size} elements exceeds the build cap of {BUILD_CAP}")))
    } else {
        Ok(())
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32)
        .filter(|&v| v <= BUILD_CAP)
        .ok_or_else(|| bad(format!("{base}^{exp} elements exceeds the build cap of {BUILD_CAP}")))
}

/// Semigroup of a list of maps closed under composition, in the given order.
fn from_closed_maps(maps: Vec<PartialMap>) -> Built {
    let index: HashMap<PartialMap, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let semigroup = FiniteSemigroup::from_map_list(&maps, &index);
    Built {
        natural: Some(PartialAction::from_maps(&maps)),
        semigroup,
    }
}

/// All maps `0..n → 0..k`, digit `k` standing for undefined when `partial`.
fn all_maps(n: usize, partial: bool) -> Result<Vec<PartialMap>> {
    let base = if partial { n + 1 } else { n };
    let count = checked_pow(base, n)?;
    Ok((0..count)
        .map(|mut code| {
            let mut images = vec![0; n];
            for i in (0..n).rev() {
                let d = code % base;
                code /= base;
                images[i] = if d == n { UNDEF } else { d };
            }
            PartialMap::new(images)
        })
        .collect())
}

pub fn full_transformation(n: usize) -> Result<Built> {
    if n == 0 {
        return Err(bad("T_0 is empty"));
    }
    Ok(from_closed_maps(all_maps(n, false)?))
}

pub fn partial_transformation(n: usize) -> Result<Built> {
    if n == 0 {
        return Err(bad("PT_0 needs at least one point"));
    }
    Ok(from_closed_maps(all_maps(n, true)?))
}

pub fn symmetric_inverse(n: usize) -> Result<Built> {
    if n == 0 || n > 5 {
        return Err(bad("symmetric_inverse needs 1 <= n <= 5"));
    }
    let maps = all_maps(n, true)?
        .into_iter()
        .filter(PartialMap::is_injective)
        .collect();
    Ok(from_closed_maps(maps))
}

pub fn symmetric_group(n: usize) -> Result<Built> {
    if n == 0 || n > 6 {
        return Err(bad("symmetric_group needs 1 <= n <= 6"));
    }
    let maps: Vec<PartialMap> = permutations(n).into_iter().map(PartialMap::new).collect();
    Ok(from_closed_maps(maps))
}

pub fn binary_relations(n: usize) -> Result<Built> {
    if n == 0 || n > 3 {
        return Err(bad("binary_relations needs 1 <= n <= 3"));
    }
    let size = 1usize << (n * n);
    // row i of a relation is bits i*n .. i*n + n
    let mul = |a: usize, b: usize| {
        let row = |m: usize, i: usize| (m >> (i * n)) & ((1 << n) - 1);
        let mut c = 0;
        for i in 0..n {
            let mut r = 0;
            for j in 0..n {
                if row(a, i) >> j & 1 == 1 {
                    r |= row(b, j);
                }
            }
            c |= r << (i * n);
        }
        c
    };
    let semigroup = FiniteSemigroup::from_fn(size, mul);
    // rows act on nonempty subsets; subset v is point v - 1
    let natural = PartialAction::from_fn(size, (1 << n) - 1, |p, m| {
        let v = p + 1;
        let mut w = 0;
        for j in 0..n {
            if v >> j & 1 == 1 {
                w |= (m >> (j * n)) & ((1 << n) - 1);
            }
        }
        if w == 0 {
            UNDEF
        } else {
            w - 1
        }
    });
    Ok(Built {
        semigroup,
        natural: Some(natural),
    })
}

/// Addition and multiplication tables of `F_q`, `q ∈ {2, 3, 4, 5}`. `F_4` is
/// `F_2[x]/(x² + x + 1)` with `x` coded as 2.
fn field(q: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    match q {
        2 | 3 | 5 => Ok((
            (0..q * q).map(|k| (k / q + k % q) % q).collect(),
            (0..q * q).map(|k| (k / q) * (k % q) % q).collect(),
        )),
        4 => {
            let add = (0..16).map(|k| (k / 4) ^ (k % 4)).collect();
            let mul = (0..16)
                .map(|k| {
                    let (a, b) = (k / 4, k % 4);
                    // carry-less product reduced by x² = x + 1
                    let mut p = 0;
                    for i in 0..2 {
                        if b >> i & 1 == 1 {
                            p ^= a << i;
                        }
                    }
                    if p & 4 != 0 {
                        p ^= 0b111;
                    }
                    p
                })
                .collect();
            Ok((add, mul))
        }
        _ => Err(bad(format!("q = {q} is not a supported field order (2, 3, 4, 5)"))),
    }
}

pub fn matrix_monoid(n: usize, q: usize) -> Result<Built> {
    if n == 0 || n > 3 {
        return Err(bad("matrix_monoid needs 1 <= n <= 3"));
    }
    let (add, mul) = field(q)?;
    let size = checked_pow(q, n * n)?;
    let decode = |mut code: usize, len: usize| {
        let mut v = vec![0; len];
        for i in (0..len).rev() {
            v[i] = code % q;
            code /= q;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * q + d);
    let mats: Vec<Vec<usize>> = (0..size).map(|c| decode(c, n * n)).collect();
    let semigroup = FiniteSemigroup::from_fn(size, |a, b| {
        let (x, y) = (&mats[a], &mats[b]);
        let mut z = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let mut acc = 0;
                for j in 0..n {
                    acc = add[acc * q + mul[x[i * n + j] * q + y[j * n + k]]];
                }
                z[i * n + k] = acc;
            }
        }
        encode(&z)
    });
    // row vectors; nonzero vector v is point code(v) - 1
    let vectors = q.pow(n as u32);
    let natural = PartialAction::from_fn(size, vectors - 1, |p, m| {
        let v = decode(p + 1, n);
        let x = &mats[m];
        let w: Vec<usize> = (0..n)
            .map(|k| (0..n).fold(0, |acc, j| add[acc * q + mul[v[j] * q + x[j * n + k]]]))
            .collect();
        match encode(&w) {
            0 => UNDEF,
            c => c - 1,
        }
    });
    Ok(Built {
        semigroup,
        natural: Some(natural),
    })
}

/// `M⁰(G, A, B, C)` or, without zero, `M(G, A, B, C)`. Element `(a, g, b)` is
/// `(a·|G| + g)·|B| + b`; the zero, if any, comes last.
pub fn rees(group: &Group, sandwich: &[Vec<usize>], zero: bool) -> Result<FiniteSemigroup> {
    let b_count = sandwich.len();
    let a_count = sandwich.first().map_or(0, Vec::len);
    if a_count == 0 {
        return Err(bad("empty sandwich matrix"));
    }
    let g = group.order();
    for (b, row) in sandwich.iter().enumerate() {
        if row.len() != a_count {
            return Err(bad(format!(
                "sandwich row {b} has {} entries, expected {a_count}",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v > g) {
            return Err(bad(format!("sandwich entry {v} exceeds the group order {g}")));
        }
        if row.iter().all(|&v| v == 0) {
            return Err(bad(format!("sandwich row {b} is zero")));
        }
        if !zero && row.contains(&0) {
            return Err(bad(
                "a Rees matrix semigroup without zero needs an all-nonzero sandwich",
            ));
        }
    }
    for a in 0..a_count {
        if sandwich.iter().all(|row| row[a] == 0) {
            return Err(bad(format!("sandwich column {a} is zero")));
        }
    }
    let core = a_count * g * b_count;
    let size = core + usize::from(zero);
    check_size(size)?;
    Ok(FiniteSemigroup::from_fn(size, |x, y| {
        if x == core || y == core {
            return core;
        }
        let (a, gx, b) = (x / (g * b_count), (x / b_count) % g, x % b_count);
        let (a2, gy, b2) = (y / (g * b_count), (y / b_count) % g, y % b_count);
        match sandwich[b][a2] {
            0 => core,
            c => (a * g + group.mul(group.mul(gx, c - 1), gy)) * b_count + b2,
        }
    }))
}

/// `(i, j)·(k, l) = (i, l)`, element `(i, j)` at `i·n + j`.
pub fn rectangular_band(m: usize, n: usize) -> Result<FiniteSemigroup> {
    if m == 0 || n == 0 {
        return Err(bad("rectangular band needs m, n >= 1"));
    }
    check_size(m * n)?;
    Ok(FiniteSemigroup::from_fn(m * n, |x, y| (x / n) * n + y % n))
}

/// `G × RB(m, n)`, element `(g, x)` at `g·mn + x`.
pub fn rectangular_group(group: &Group, m: usize, n: usize) -> Result<FiniteSemigroup> {
    let band = rectangular_band(m, n)?;
    check_size(group.order() * m * n)?;
    Ok(group_semigroup(group).direct_product(&band))
}

/// Elements `0..k` multiplied by `min`, so `k - 1` is the top.
pub fn chain_semilattice(k: usize) -> Result<FiniteSemigroup> {
    if k == 0 {
        return Err(bad("chain needs at least one element"));
    }
    Ok(FiniteSemigroup::from_fn(k, |a, b| a.min(b)))
}

pub fn group_semigroup(group: &Group) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(group.order(), |a, b| group.mul(a, b))
}

/// `M(S_n, 2, 2, [[1, 1], [1, σ]])`.
pub fn sigma_square(n: usize, sigma: &[usize]) -> Result<FiniteSemigroup> {
    if n == 0 || n > 6 {
        return Err(bad("sigma_square needs 1 <= n <= 6"));
    }
    let perms = permutations(n);
    let idx = perms
        .iter()
        .position(|p| p.as_slice() == sigma)
        .ok_or_else(|| bad(format!("{sigma:?} is not a permutation of 0..{n}")))?;
    rees(&Group::symmetric(n), &[vec![1, 1], vec![1, idx + 1]], false)
}

/// `M⁰(1, [n + |X|], [n], [I_n | X])`.
pub fn aggm_01(n: usize, subsets: &[Vec<usize>]) -> Result<FiniteSemigroup> {
    if n == 0 {
        return Err(bad("aggm_01 needs n >= 1"));
    }
    let k = n + subsets.len();
    let mut c = vec![vec![0; k]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (j, x) in subsets.iter().enumerate() {
        for &i in x {
            if i >= n {
                return Err(bad(format!("subset element {i} out of range 0..{n}")));
            }
            c[i][n + j] = 1;
        }
    }
    rees(&Group::cyclic(1), &c, true)
}

pub fn null(n: usize) -> Result<FiniteSemigroup> {
    if n == 0 {
        return Err(bad("null semigroup needs at least one element"));
    }
    Ok(FiniteSemigroup::from_fn(n, |_, _| 0))
}
