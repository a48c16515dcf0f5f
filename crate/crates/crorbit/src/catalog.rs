//! Catalog of named real forms.
//!
//! Classical families are built parametrically; the shipped data file
//! `data/catalog.txt` lists every instantiated form up to the rank bound,
//! one record per line (`name type rank black arrows`). Each record is
//! validated on load; a failing record is a data-integrity error.

use std::collections::BTreeSet;

use crate::dynkin::{DynkinGraph, SimpleType, MAX_COMPONENT_RANK};
use crate::error::{Error, Result};
use crate::satake::SatakeDiagram;

const CATALOG_DATA: &str = include_str!("../data/catalog.txt");

/// Classical family names accepted by the spec grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Su,
    SlR,
    SlH,
    So,
    SoStar,
    SpR,
    Sp,
    Compact,
    Complex,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Su,
        Family::SlR,
        Family::SlH,
        Family::So,
        Family::SoStar,
        Family::SpR,
        Family::Sp,
        Family::Compact,
        Family::Complex,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Family::Su => "su",
            Family::SlR => "sl_r",
            Family::SlH => "sl_h",
            Family::So => "so",
            Family::SoStar => "so_star",
            Family::SpR => "sp_r",
            Family::Sp => "sp",
            Family::Compact => "compact",
            Family::Complex => "complex",
        }
    }

    pub fn from_token(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.token() == s)
    }
}

/// Parameters of a form: two integers, one integer, or a type letter with a
/// rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Params {
    Pq(usize, usize),
    N(usize),
    Typed(SimpleType, usize),
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Params::Pq(p, q) => write!(f, "{p},{q}"),
            Params::N(n) => write!(f, "{n}"),
            Params::Typed(t, r) => write!(f, "{},{r}", t.letter()),
        }
    }
}

/// Canonical display name of a form, e.g. `su(1,3)`.
pub fn form_name(family: Family, params: &Params) -> String {
    format!("{}({})", family.token(), params)
}

/// Builds the Satake diagram of a named classical form.
pub fn lookup(family: Family, params: &Params) -> Result<SatakeDiagram> {
    let (graph, black, arrows) = describe(family, params)?;
    SatakeDiagram::new(graph, black, arrows)
}

fn range_err(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}

fn describe(
    family: Family,
    params: &Params,
) -> Result<(DynkinGraph, BTreeSet<usize>, Vec<(usize, usize)>)> {
    match (family, params) {
        (Family::Su, &Params::Pq(p, q)) => {
            let (p, q) = (p.min(q), p.max(q));
            if p < 1 {
                return Err(range_err(
                    "su(p,q) needs p,q >= 1; compact forms are compact(A,l)",
                ));
            }
            let rank = p + q - 1;
            if !(1..=MAX_COMPONENT_RANK).contains(&rank) {
                return Err(range_err(format!("su({p},{q}) has rank {rank}")));
            }
            let graph = DynkinGraph::from_components(&[(SimpleType::A, rank)])?;
            let black: BTreeSet<usize> = (p + 1..q).collect();
            let arrows: Vec<(usize, usize)> = (1..=p)
                .filter(|&i| i != p + q - i)
                .map(|i| (i, p + q - i))
                .collect();
            Ok((graph, black, arrows))
        }
        (Family::SlR, &Params::N(n)) => {
            if n < 2 || n - 1 > MAX_COMPONENT_RANK {
                return Err(range_err(format!("sl_r({n})")));
            }
            let graph = DynkinGraph::from_components(&[(SimpleType::A, n - 1)])?;
            Ok((graph, BTreeSet::new(), vec![]))
        }
        (Family::SlH, &Params::N(m)) => {
            if m < 1 || 2 * m - 1 > MAX_COMPONENT_RANK {
                return Err(range_err(format!("sl_h({m})")));
            }
            let rank = 2 * m - 1;
            let graph = DynkinGraph::from_components(&[(SimpleType::A, rank)])?;
            let black: BTreeSet<usize> = (1..=rank).step_by(2).collect();
            Ok((graph, black, vec![]))
        }
        (Family::So, &Params::Pq(p, q)) => {
            let (p, q) = (p.min(q), p.max(q));
            if p < 1 {
                return Err(range_err(
                    "so(p,q) needs p,q >= 1; compact forms are compact(B,l)/compact(D,l)",
                ));
            }
            let n = p + q;
            if n % 2 == 1 {
                let rank = (n - 1) / 2;
                if !(2..=MAX_COMPONENT_RANK).contains(&rank) {
                    return Err(range_err(format!(
                        "so({p},{q}): rank {rank} outside B2..B8"
                    )));
                }
                let graph = DynkinGraph::from_components(&[(SimpleType::B, rank)])?;
                let black: BTreeSet<usize> = (p + 1..=rank).collect();
                Ok((graph, black, vec![]))
            } else {
                let rank = n / 2;
                if !(4..=MAX_COMPONENT_RANK).contains(&rank) {
                    return Err(range_err(format!(
                        "so({p},{q}): rank {rank} outside D4..D8"
                    )));
                }
                let graph = DynkinGraph::from_components(&[(SimpleType::D, rank)])?;
                if p == q {
                    Ok((graph, BTreeSet::new(), vec![]))
                } else if q - p == 2 {
                    Ok((graph, BTreeSet::new(), vec![(rank - 1, rank)]))
                } else {
                    let black: BTreeSet<usize> = (p + 1..=rank).collect();
                    Ok((graph, black, vec![]))
                }
            }
        }
        (Family::SoStar, &Params::N(two_n)) => {
            if two_n % 2 == 1 {
                return Err(range_err(format!(
                    "so_star({two_n}): argument must be even"
                )));
            }
            let n = two_n / 2;
            if !(4..=MAX_COMPONENT_RANK).contains(&n) {
                return Err(range_err(format!(
                    "so_star({two_n}): rank {n} outside D4..D8"
                )));
            }
            let graph = DynkinGraph::from_components(&[(SimpleType::D, n)])?;
            if n % 2 == 0 {
                let black: BTreeSet<usize> = (1..n).step_by(2).collect();
                Ok((graph, black, vec![]))
            } else {
                let black: BTreeSet<usize> = (1..n - 1).step_by(2).collect();
                Ok((graph, black, vec![(n - 1, n)]))
            }
        }
        (Family::SpR, &Params::N(n)) => {
            if !(2..=MAX_COMPONENT_RANK).contains(&n) {
                return Err(range_err(format!("sp_r({n})")));
            }
            let graph = DynkinGraph::from_components(&[(SimpleType::C, n)])?;
            Ok((graph, BTreeSet::new(), vec![]))
        }
        (Family::Sp, &Params::Pq(p, q)) => {
            let (p, q) = (p.min(q), p.max(q));
            if p < 1 {
                return Err(range_err(
                    "sp(p,q) needs p,q >= 1; compact forms are compact(C,l)",
                ));
            }
            let n = p + q;
            if !(2..=MAX_COMPONENT_RANK).contains(&n) {
                return Err(range_err(format!("sp({p},{q}): rank {n} outside C2..C8")));
            }
            let graph = DynkinGraph::from_components(&[(SimpleType::C, n)])?;
            let mut black: BTreeSet<usize> = (1..=2 * p - 1).step_by(2).collect();
            black.extend(2 * p + 1..=n);
            Ok((graph, black, vec![]))
        }
        (Family::Compact, &Params::Typed(ty, rank)) => {
            if !ty.admits_rank(rank) || rank > MAX_COMPONENT_RANK {
                return Err(range_err(format!("compact({},{rank})", ty.letter())));
            }
            let graph = DynkinGraph::from_components(&[(ty, rank)])?;
            Ok((graph, (1..=rank).collect(), vec![]))
        }
        (Family::Complex, &Params::Typed(ty, rank)) => {
            if !ty.admits_rank(rank) || rank > MAX_COMPONENT_RANK {
                return Err(range_err(format!("complex({},{rank})", ty.letter())));
            }
            let graph = DynkinGraph::from_components(&[(ty, rank), (ty, rank)])?;
            let arrows: Vec<(usize, usize)> = (1..=rank).map(|i| (i, rank + i)).collect();
            Ok((graph, BTreeSet::new(), arrows))
        }
        _ => Err(range_err(format!(
            "{} does not take these parameters",
            family.token()
        ))),
    }
}

/// Noncompact exceptional real forms, as static table data.
#[allow(clippy::type_complexity)]
const EXCEPTIONAL: &[(&str, SimpleType, usize, &[usize], &[(usize, usize)])] = &[
    ("g2(2)", SimpleType::G, 2, &[], &[]),
    ("f4(4)", SimpleType::F, 4, &[], &[]),
    ("f4(-20)", SimpleType::F, 4, &[1, 2, 3], &[]),
    ("e6(6)", SimpleType::E, 6, &[], &[]),
    ("e6(2)", SimpleType::E, 6, &[], &[(1, 6), (3, 5)]),
    ("e6(-14)", SimpleType::E, 6, &[3, 4, 5], &[(1, 6)]),
    ("e6(-26)", SimpleType::E, 6, &[2, 3, 4, 5], &[]),
    ("e7(7)", SimpleType::E, 7, &[], &[]),
    ("e7(-5)", SimpleType::E, 7, &[2, 5, 7], &[]),
    ("e7(-25)", SimpleType::E, 7, &[2, 3, 4, 5], &[]),
    ("e8(8)", SimpleType::E, 8, &[], &[]),
    ("e8(-24)", SimpleType::E, 8, &[2, 3, 4, 5], &[]),
];

/// Builds an exceptional form by its table name.
pub fn exceptional(name: &str) -> Result<SatakeDiagram> {
    let &(_, ty, rank, black, arrows) = EXCEPTIONAL
        .iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| Error::UnknownForm(name.to_string()))?;
    let graph = DynkinGraph::from_components(&[(ty, rank)])?;
    SatakeDiagram::new(graph, black.iter().copied().collect(), arrows.to_vec())
}

/// Parameter lists of a family with total rank at most `max_rank`, in
/// canonical order.
pub fn family_params(family: Family, max_rank: usize) -> Vec<Params> {
    let max_rank = max_rank.min(MAX_COMPONENT_RANK);
    let mut out = Vec::new();
    match family {
        Family::Su => {
            for total in 2..=max_rank + 1 {
                for p in 1..=total / 2 {
                    out.push(Params::Pq(p, total - p));
                }
            }
        }
        Family::SlR => out.extend((2..=max_rank + 1).map(Params::N)),
        Family::SlH => out.extend((1..=max_rank.div_ceil(2)).map(Params::N)),
        Family::So => {
            for total in 5..=2 * max_rank + 1 {
                let ok = if total % 2 == 1 {
                    (2..=max_rank).contains(&((total - 1) / 2))
                } else {
                    (4..=max_rank).contains(&(total / 2))
                };
                if !ok {
                    continue;
                }
                for p in 1..=total / 2 {
                    out.push(Params::Pq(p, total - p));
                }
            }
        }
        Family::SoStar => {
            out.extend((4..=max_rank).map(|n| Params::N(2 * n)));
        }
        Family::SpR => out.extend((2..=max_rank).map(Params::N)),
        Family::Sp => {
            for total in 2..=max_rank {
                for p in 1..=total / 2 {
                    out.push(Params::Pq(p, total - p));
                }
            }
        }
        Family::Compact | Family::Complex => {
            let per_component = if family == Family::Complex {
                max_rank / 2
            } else {
                max_rank
            };
            for ty in [
                SimpleType::A,
                SimpleType::B,
                SimpleType::C,
                SimpleType::D,
                SimpleType::E,
                SimpleType::F,
                SimpleType::G,
            ] {
                for rank in 1..=per_component {
                    if ty.admits_rank(rank) {
                        out.push(Params::Typed(ty, rank));
                    }
                }
            }
        }
    }
    out
}

/// A validated catalog record.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub diagram: SatakeDiagram,
}

/// All records the catalog ships, generated from the same constructors that
/// serve lookups. The data file must agree with this list record for record.
pub fn builtin_records() -> Vec<(String, SatakeDiagram)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for params in family_params(family, MAX_COMPONENT_RANK) {
            let d = lookup(family, &params).expect("enumerated parameters are admissible");
            out.push((form_name(family, &params), d));
        }
    }
    for &(name, _, _, _, _) in EXCEPTIONAL {
        out.push((
            name.to_string(),
            exceptional(name).expect("static table entry"),
        ));
    }
    out
}

/// Loads and validates the shipped catalog file, keeping forms of total rank
/// at most `max_rank`.
pub fn entries(max_rank: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in CATALOG_DATA.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry = parse_record(line).map_err(|e| Error::CatalogIntegrity {
            name: format!("line {}", lineno + 1),
            reason: e.to_string(),
        })?;
        if entry.diagram.rank() <= max_rank {
            out.push(entry);
        }
    }
    Ok(out)
}

fn parse_record(line: &str) -> Result<CatalogEntry> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(Error::CatalogIntegrity {
            name: line.to_string(),
            reason: format!("expected 5 fields, found {}", fields.len()),
        });
    }
    let name = fields[0].to_string();
    let fail = |reason: String| Error::CatalogIntegrity {
        name: name.clone(),
        reason,
    };

    let mut parts = Vec::new();
    for part in fields[1].split('+') {
        let mut chars = part.chars();
        let letter = chars.next().ok_or_else(|| fail("empty type".into()))?;
        let ty = SimpleType::from_letter(letter)
            .ok_or_else(|| fail(format!("unknown type letter {letter}")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| fail(format!("bad component rank in {part}")))?;
        parts.push((ty, rank));
    }
    let rank: usize = fields[2]
        .parse()
        .map_err(|_| fail("bad rank field".into()))?;
    let black = parse_brace_set(fields[3]).map_err(&fail)?;
    let arrows = parse_brace_pairs(fields[4]).map_err(&fail)?;

    let graph = DynkinGraph::from_components(&parts).map_err(|e| fail(e.to_string()))?;
    if graph.rank() != rank {
        return Err(fail(format!(
            "declared rank {rank} != graph rank {}",
            graph.rank()
        )));
    }
    let diagram = SatakeDiagram::new(graph, black, arrows).map_err(|e| fail(e.to_string()))?;
    Ok(CatalogEntry { name, diagram })
}

fn parse_brace_set(s: &str) -> std::result::Result<BTreeSet<usize>, String> {
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format!("expected braces around {s}"))?;
    if inner.is_empty() {
        return Ok(BTreeSet::new());
    }
    inner
        .split(',')
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad integer {t}")))
        .collect()
}

fn parse_brace_pairs(s: &str) -> std::result::Result<Vec<(usize, usize)>, String> {
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format!("expected braces around {s}"))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for piece in inner.split("),(") {
        let piece = piece.trim_start_matches('(').trim_end_matches(')');
        let (a, b) = piece
            .split_once(',')
            .ok_or_else(|| format!("bad pair {piece}"))?;
        out.push((
            a.parse().map_err(|_| format!("bad integer {a}"))?,
            b.parse().map_err(|_| format!("bad integer {b}"))?,
        ));
    }
    Ok(out)
}

/// Serializes a record as one catalog line.
pub fn record_line(name: &str, d: &SatakeDiagram) -> String {
    let black = if d.black().is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", crate::error::fmt_node_set(d.black()))
    };
    let arrows = if d.arrows().is_empty() {
        "{}".to_string()
    } else {
        let pairs: Vec<String> = d
            .arrows()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        format!("{{{}}}", pairs.join(","))
    };
    format!(
        "{} {} {} {} {}",
        name,
        d.graph().type_string(),
        d.rank(),
        black,
        arrows
    )
}
