//! Serializable reports behind the command-line tool.
//!
//! Every report carries `version`, bumped whenever a field changes meaning.
//! Lists of knots come out in knot-table order: crossing number, then the
//! alternating/non-alternating letter, then the index.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{Catalog, CatalogEntry, CatalogError};
use crate::diagram::MorseWord;
use crate::exec::Execution;
use crate::heisenberg::{ideal_equal, ideal_invariant, table1, GroebnerError, HeisenbergError, LaurentIdeal, Table1Row};
use crate::hopf::{conjecture_check, HopfError};
use crate::knotgroup::{alexander, count_homs, KnotGroupError, WirtingerData};
use crate::laurent::{LaurentPoly, Q};
use crate::rt::{derive_tildes, invariant, RelCategory, RtError, SpanCategory};
use crate::setcat::{fiber_count, rack_from_pointed_group, rmatrix_from_rack, FiniteGroup, PointedGroup, SetCatError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    SetCat(#[from] SetCatError),
    #[error(transparent)]
    KnotGroup(#[from] KnotGroupError),
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Rt(#[from] RtError),
    #[error("{0}")]
    Usage(String),
}

impl ReportError {
    /// Whether the error is a computation stopped by a resource limit.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            ReportError::Heisenberg(HeisenbergError::Groebner(GroebnerError::ResourceLimit { .. }))
        )
    }
}

fn name_key(name: &str) -> (usize, String, usize, String) {
    let digits: String = name.chars().take_while(|c| c.is_ascii_digit()).collect();
    let rest = &name[digits.len()..];
    let (letter, index) = rest.split_once('_').unwrap_or((rest, ""));
    (digits.parse().unwrap_or(usize::MAX), letter.to_string(), index.parse().unwrap_or(usize::MAX), name.to_string())
}

/// Orders knot names as in knot tables: `3_1 < 8_2 < 8_10 < 11a_5 < 11n_1`.
pub fn knot_order(a: &str, b: &str) -> Ordering {
    name_key(a).cmp(&name_key(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListEntry {
    pub name: String,
    pub strands: usize,
    pub crossings: usize,
    pub alexander: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListReport {
    pub version: u32,
    pub knots: Vec<ListEntry>,
}

pub fn cmd_list(catalog: &Catalog) -> ListReport {
    let mut entries: Vec<&CatalogEntry> = catalog.entries().iter().collect();
    entries.sort_by(|a, b| knot_order(&a.name, &b.name));
    let knots = entries
        .into_iter()
        .map(|e| ListEntry { name: e.name.clone(), strands: e.strands, crossings: e.crossing_count(), alexander: e.alexander.clone() })
        .collect();
    ListReport { version: SCHEMA_VERSION, knots }
}

impl ListReport {
    pub fn table(&self) -> String {
        let mut s = format!("{:<8} {:>7} {:>9}  alexander\n", "knot", "strands", "crossings");
        for k in &self.knots {
            let _ = writeln!(s, "{:<8} {:>7} {:>9}  {}", k.name, k.strands, k.crossings, k.alexander);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetBackend {
    Rel,
    Span,
}

impl std::str::FromStr for SetBackend {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Self, ReportError> {
        match s {
            "rel" => Ok(SetBackend::Rel),
            "span" => Ok(SetBackend::Span),
            _ => Err(ReportError::Usage(format!("unknown backend `{s}`, expected rel or span"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaCount {
    pub lambda: String,
    /// Number of colorings with the given ends: the span entry, or 0/1 for
    /// the relation backend.
    pub count: u64,
    /// Homomorphisms from the knot group found by direct search.
    pub cross_check: u64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RackReport {
    pub version: u32,
    pub knot: String,
    pub group: String,
    pub mu: String,
    pub backend: SetBackend,
    pub counts: Vec<LambdaCount>,
    pub total: u64,
    pub cross_check_total: u64,
    pub agree: bool,
}

/// Colorings of a knot by the conjugation rack of `(G, mu)` with bottom end
/// `e` and top end `lambda`, against a direct count of homomorphisms.
pub fn cmd_rack(
    catalog: &Catalog,
    knot: &str,
    group: &str,
    mu: &str,
    lambda: Option<&str>,
    backend: SetBackend,
    exec: Execution,
) -> Result<RackReport, ReportError> {
    let (name, word) = catalog.diagram(knot)?;
    let pg = PointedGroup::new(FiniteGroup::parse_spec(group)?, mu)?;
    let g = &pg.group;
    let lambdas: Vec<usize> = match lambda {
        None => (0..g.order()).collect(),
        Some(l) if l.eq_ignore_ascii_case("all") => (0..g.order()).collect(),
        Some(l) => vec![g.element(l)?],
    };
    rack_report(&name, &word, &pg, group, &lambdas, backend, exec)
}

fn rack_report(
    name: &str,
    word: &MorseWord,
    pg: &PointedGroup,
    group: &str,
    lambdas: &[usize],
    backend: SetBackend,
    exec: Execution,
) -> Result<RackReport, ReportError> {
    let g = &pg.group;
    let rack = rack_from_pointed_group(pg);
    let e = g.identity();
    let fibers: Vec<u64> = match backend {
        SetBackend::Span => {
            let cat = SpanCategory::new(exec);
            let datum = derive_tildes(&cat, &rmatrix_from_rack::<u64>(&rack)?)?;
            let j = invariant(&cat, &datum, word)?;
            lambdas.iter().map(|&l| fiber_count(&j, e, l)).collect::<Result<_, _>>()?
        }
        SetBackend::Rel => {
            let cat = RelCategory::new(exec);
            let datum = derive_tildes(&cat, &rmatrix_from_rack::<bool>(&rack)?)?;
            let j = invariant(&cat, &datum, word)?;
            lambdas.iter().map(|&l| u64::from(j.entry(e, l))).collect()
        }
    };
    let homs = count_homs(&WirtingerData::of_knot(word)?, g, pg.mu, 0, exec);
    let counts: Vec<LambdaCount> = lambdas
        .iter()
        .zip(&fibers)
        .map(|(&l, &count)| {
            let cross_check = homs.for_lambda(l);
            let agree = match backend {
                SetBackend::Span => count == cross_check,
                SetBackend::Rel => (count == 1) == (cross_check > 0),
            };
            LambdaCount { lambda: g.label(l).to_string(), count, cross_check, agree }
        })
        .collect();
    Ok(RackReport {
        version: SCHEMA_VERSION,
        knot: name.to_string(),
        group: group.to_string(),
        mu: pg.mu_label().to_string(),
        backend,
        total: counts.iter().map(|c| c.count).sum(),
        cross_check_total: counts.iter().map(|c| c.cross_check).sum(),
        agree: counts.iter().all(|c| c.agree),
        counts,
    })
}

impl RackReport {
    pub fn table(&self) -> String {
        let mut s = format!("{} over {} with mu = {} ({:?})\n", self.knot, self.group, self.mu, self.backend);
        let _ = writeln!(s, "{:<16} {:>8} {:>12}", "lambda", "count", "cross-check");
        for c in &self.counts {
            let _ = writeln!(s, "{:<16} {:>8} {:>12}{}", c.lambda, c.count, c.cross_check, if c.agree { "" } else { "  MISMATCH" });
        }
        let _ = writeln!(s, "{:<16} {:>8} {:>12}", "total", self.total, self.cross_check_total);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeisenbergReport {
    pub version: u32,
    pub knot: String,
    pub generators: Vec<String>,
    pub principal: bool,
    pub matches_alexander_times_s: bool,
    /// Agreement with the reference table; absent for knots not in it.
    pub table1_match: Option<bool>,
}

fn alexander_times_s(ideal: &LaurentIdeal, delta: &LaurentPoly, step_cap: usize) -> Result<bool, GroebnerError> {
    Ok(ideal_equal(ideal, &LaurentIdeal::from_generators(&[vec![(1, delta.clone())]], step_cap)?))
}

pub fn cmd_heisenberg(catalog: &Catalog, knot: &str, step_cap: usize) -> Result<HeisenbergReport, ReportError> {
    let (name, word) = catalog.diagram(knot)?;
    let w = WirtingerData::of_knot(&word)?;
    let ideal = ideal_invariant(&w, step_cap)?;
    let delta = alexander(&w)?;
    let table1_match = match table1().into_iter().find(|r| r.knot == name) {
        Some(row) => Some(row.matches(&ideal, step_cap).map_err(HeisenbergError::from)?),
        None => None,
    };
    Ok(HeisenbergReport {
        version: SCHEMA_VERSION,
        knot: name,
        generators: ideal.canonical_strings(),
        principal: ideal.is_principal(),
        matches_alexander_times_s: alexander_times_s(&ideal, &delta, step_cap).map_err(HeisenbergError::from)?,
        table1_match,
    })
}

impl HeisenbergReport {
    pub fn table(&self) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        format!(
            "knot       {}\nideal      ({})\nprincipal  {}\n= (Δ s)    {}\ntable      {}\n",
            self.knot,
            self.generators.join(", "),
            flag(self.principal),
            flag(self.matches_alexander_times_s),
            self.table1_match.map_or("n/a", flag),
        )
    }
}

/// Which reference rows to recompute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Table1Profile {
    /// 3_1, 4_1, 6_2, 8_10 and 8_20.
    Core,
    /// Every row.
    Extended,
}

impl std::str::FromStr for Table1Profile {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Self, ReportError> {
        match s {
            "core" => Ok(Table1Profile::Core),
            "extended" => Ok(Table1Profile::Extended),
            _ => Err(ReportError::Usage(format!("unknown profile `{s}`, expected core or extended"))),
        }
    }
}

const CORE_ROWS: [&str; 5] = ["3_1", "4_1", "6_2", "8_10", "8_20"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Line {
    pub knot: String,
    pub alexander_expected: String,
    pub alexander_computed: String,
    pub alexander_match: bool,
    pub ideal_expected: String,
    pub ideal_computed: Vec<String>,
    pub ideal_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub version: u32,
    pub profile: Table1Profile,
    pub rows: Vec<Table1Line>,
    pub all_match: bool,
}

fn table1_line(catalog: &Catalog, row: &Table1Row, step_cap: usize) -> Result<Table1Line, ReportError> {
    let word = catalog.get(&row.knot)?.diagram()?;
    let w = WirtingerData::of_knot(&word)?;
    let delta = alexander(&w)?;
    let ideal = ideal_invariant(&w, step_cap)?;
    Ok(Table1Line {
        knot: row.knot.clone(),
        alexander_expected: row.alexander_label.clone(),
        alexander_computed: delta.to_string(),
        alexander_match: delta.eq_up_to_units(&row.alexander),
        ideal_expected: row.ideal_label.clone(),
        ideal_computed: ideal.canonical_strings(),
        ideal_match: row.matches(&ideal, step_cap).map_err(HeisenbergError::from)?,
    })
}

/// Recomputes the reference table of Alexander polynomials and ideals.
pub fn cmd_table1(catalog: &Catalog, profile: Table1Profile, step_cap: usize, exec: Execution) -> Result<Table1Report, ReportError> {
    let rows: Vec<Table1Row> = table1()
        .into_iter()
        .filter(|r| profile == Table1Profile::Extended || CORE_ROWS.contains(&r.knot.as_str()))
        .collect();
    let mut lines = exec.map(&rows, |r| table1_line(catalog, r, step_cap)).into_iter().collect::<Result<Vec<_>, _>>()?;
    lines.sort_by(|a, b| knot_order(&a.knot, &b.knot));
    let all_match = lines.iter().all(|l| l.alexander_match && l.ideal_match);
    Ok(Table1Report { version: SCHEMA_VERSION, profile, rows: lines, all_match })
}

impl Table1Report {
    pub fn table(&self) -> String {
        let mut s = format!("{:<7} {:<22} {:<26} {:<6} computed\n", "knot", "alexander", "ideal", "match");
        for l in &self.rows {
            let ok = l.alexander_match && l.ideal_match;
            let _ = writeln!(
                s,
                "{:<7} {:<22} {:<26} {:<6} ({})",
                l.knot,
                l.alexander_expected,
                l.ideal_expected,
                if ok { "yes" } else { "NO" },
                l.ideal_computed.join(", ")
            );
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub version: u32,
    pub knot: String,
    #[serde(rename = "N")]
    pub trunc: usize,
    #[serde(rename = "d")]
    pub rank: usize,
    #[serde(rename = "c")]
    pub offset: String,
    /// Coefficients are compared modulo `ε^precision`.
    pub precision: usize,
    pub computed_scalar: String,
    pub predicted_scalar: String,
    /// Whether the invariant acts by a scalar series at all.
    pub scalar: bool,
    pub equal: bool,
}

pub fn cmd_universal(catalog: &Catalog, knot: &str, trunc: usize, rank: usize, offset: Q, exec: Execution) -> Result<UniversalReport, ReportError> {
    let (name, word) = catalog.diagram(knot)?;
    let r = conjecture_check(&word, trunc, rank, offset, exec)?;
    Ok(UniversalReport {
        version: SCHEMA_VERSION,
        knot: name,
        trunc: r.trunc,
        rank: r.rank,
        offset: r.offset,
        precision: r.precision,
        computed_scalar: r.computed.to_string(),
        predicted_scalar: r.predicted.to_string(),
        scalar: r.scalar,
        equal: r.equal,
    })
}

impl UniversalReport {
    pub fn table(&self) -> String {
        format!(
            "knot       {}\nmodule     N={} d={} c={}\ncomputed   {}\npredicted  {}\nscalar     {}\nequal      {}\n",
            self.knot, self.trunc, self.rank, self.offset, self.computed_scalar, self.predicted_scalar, self.scalar, self.equal
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::DEFAULT_STEP_CAP;
    use crate::laurent::q;

    #[test]
    fn knot_table_order() {
        let mut v = vec!["11a_5", "8_10", "3_1", "10_99", "8_2", "11n_1", "4_1"];
        v.sort_by(|a, b| knot_order(a, b));
        assert_eq!(v, ["3_1", "4_1", "8_2", "8_10", "10_99", "11a_5", "11n_1"]);
    }

    #[test]
    fn listing() {
        let l = cmd_list(&Catalog::builtin());
        assert_eq!(l.knots.len(), 16);
        assert_eq!(l.knots[0].name, "3_1");
        assert_eq!(l.knots.last().unwrap().name, "11a_5");
        let empty = Catalog::from_json(r#"{"version": 1, "knots": []}"#, "e").unwrap();
        assert!(cmd_list(&empty).knots.is_empty());
    }

    #[test]
    fn rack_counts() {
        let c = Catalog::builtin();
        let r = cmd_rack(&c, "unknot", "S3", "(1 2)", Some("e"), SetBackend::Span, Execution::Sequential).unwrap();
        assert_eq!((r.total, r.cross_check_total), (1, 1));
        let span = cmd_rack(&c, "3_1", "S3", "(1 2)", None, SetBackend::Span, Execution::Parallel).unwrap();
        assert!(span.agree);
        assert_eq!(span.total, span.cross_check_total);
        let rel = cmd_rack(&c, "3_1", "S3", "(1 2)", Some("ALL"), SetBackend::Rel, Execution::Parallel).unwrap();
        assert!(rel.agree);
        for (a, b) in rel.counts.iter().zip(&span.counts) {
            assert_eq!(a.count, u64::from(b.count > 0));
        }
        assert!(cmd_rack(&c, "9_99", "S3", "(1 2)", None, SetBackend::Span, Execution::Sequential).is_err());
        assert!(cmd_rack(&c, "3_1", "Q9", "(1 2)", None, SetBackend::Span, Execution::Sequential).is_err());
    }

    #[test]
    fn heisenberg_reports() {
        let c = Catalog::builtin();
        let r = cmd_heisenberg(&c, "3_1", DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.generators, ["(1 - t + t^2)*s"]);
        assert!(r.principal && r.matches_alexander_times_s);
        assert_eq!(r.table1_match, Some(true));
        let r = cmd_heisenberg(&c, "9_24", DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.table1_match, Some(true));
        assert!(!r.principal && !r.matches_alexander_times_s);
        let r = cmd_heisenberg(&c, "unknot", DEFAULT_STEP_CAP).unwrap();
        assert_eq!(r.generators, ["s"]);
        assert_eq!(r.table1_match, None);
        let err = cmd_heisenberg(&c, "11a_5", 5).unwrap_err();
        assert!(err.is_resource_cap(), "{err}");
    }

    #[test]
    fn core_table() {
        let t = cmd_table1(&Catalog::builtin(), Table1Profile::Core, DEFAULT_STEP_CAP, Execution::Parallel).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert!(t.all_match, "{}", t.table());
    }

    #[test]
    fn universal_unknot() {
        let r = cmd_universal(&Catalog::builtin(), "unknot", 4, 4, q(0), Execution::Sequential).unwrap();
        assert!(r.equal);
        assert_eq!(r.computed_scalar, "1 + O(ε^4)");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["N"], 4);
        assert_eq!(json["version"], SCHEMA_VERSION);
    }
}
