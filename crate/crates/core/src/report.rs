//! Serializable analysis reports and their human-readable rendering.

use std::fmt::Write;

use serde::Serialize;

use crate::construction::{Construction, ConstructionParams, RootCount};
use crate::properties::{self, PropertyError};
use crate::subq::{self, GenerationTrace, SubqReport};
use crate::table::QTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub subquasigroups: Vec<Vec<usize>>,
    pub simple: bool,
    pub affine: bool,
    pub polynomially_complete: bool,
    pub associative_triples: u64,
    pub doubly_transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionParams>,
}

impl AnalysisReport {
    pub fn analyze(q: &QTable) -> Self {
        Self::build(q, None).expect("no cross-check without parameters")
    }

    /// Like [`Self::analyze`], but cross-checks the verdicts against the
    /// construction parameters that produced `q`.
    pub fn with_params(q: &QTable, params: &ConstructionParams) -> Result<Self, PropertyError> {
        Self::build(q, Some(params))
    }

    fn build(q: &QTable, params: Option<&ConstructionParams>) -> Result<Self, PropertyError> {
        let n = q.order();
        let polynomially_complete = properties::is_polynomially_complete(q, params)?;
        let simple = properties::is_simple(q);
        let affine = properties::is_affine(q);
        Ok(AnalysisReport {
            order: n,
            subquasigroups: subq::find_all_subquasigroups(q).subquasigroups,
            simple,
            affine,
            polynomially_complete,
            associative_triples: properties::count_associative_triples(q),
            doubly_transitive: n >= 2 && q.mult_group_orbit_pairs() == n * (n - 1),
            construction: params.cloned(),
        })
    }

    pub fn shifted(mut self, offset: usize) -> Self {
        shift_sets(&mut self.subquasigroups, offset);
        self
    }
}

/// Output of the `construct` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub params: ConstructionParams,
    pub table: QTable,
    pub root_count: RootCount,
    pub certification: AnalysisReport,
}

impl ConstructionReport {
    pub fn new(built: Construction) -> Result<Self, PropertyError> {
        let certification = AnalysisReport::build(&built.table, Some(&built.params))?;
        Ok(ConstructionReport {
            params: built.params,
            table: built.table,
            root_count: built.root_count,
            certification,
        })
    }

    pub fn to_text(&self) -> String {
        let f = self.params.field();
        let tags = |xs: &[crate::field::FieldElem]| -> String {
            xs.iter()
                .map(|x| x.tag().to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let modulus: Vec<String> = f.modulus().iter().map(u64::to_string).collect();
        let cert = &self.certification;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "field: GF({}^{}) modulus [{}] beta {}",
            f.p(),
            f.r(),
            modulus.join(","),
            f.beta().tag()
        );
        let _ = writeln!(
            out,
            "params: m {} d {} alpha {} c {} gamma {}",
            self.params.m(),
            self.params.d(),
            self.params.alpha().tag(),
            self.params.c().tag(),
            self.root_count.gamma.tag()
        );
        let _ = writeln!(
            out,
            "circulant rank {}, roots {} [{}]",
            self.root_count.rank,
            self.root_count.count,
            tags(&self.root_count.roots)
        );
        let _ = writeln!(
            out,
            "simple {}, affine {}, polynomially complete {}, doubly transitive {}",
            cert.simple, cert.affine, cert.polynomially_complete, cert.doubly_transitive
        );
        let _ = writeln!(
            out,
            "associative triples {}, subquasigroups {}",
            cert.associative_triples,
            format_sets(&cert.subquasigroups)
        );
        out.push('\n');
        out.push_str(&render_table(&self.table));
        out
    }
}

fn shift_sets(sets: &mut [Vec<usize>], offset: usize) {
    for x in sets.iter_mut().flatten() {
        *x += offset;
    }
}

pub fn shift_subq(mut report: SubqReport, offset: usize) -> SubqReport {
    shift_sets(&mut report.subquasigroups, offset);
    report
}

pub fn shift_trace(mut trace: GenerationTrace, offset: usize) -> GenerationTrace {
    shift_sets(&mut trace.chain, offset);
    for x in trace.result.iter_mut() {
        *x += offset;
    }
    trace
}

fn format_sets(sets: &[Vec<usize>]) -> String {
    let parts: Vec<String> = sets
        .iter()
        .map(|s| {
            let inner: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

/// Cayley table with row and column headers, right-aligned.
pub fn render_table(q: &QTable) -> String {
    let n = q.order();
    let width = n.saturating_sub(1).to_string().len();
    let mut out = format!("{:>width$} |", "*");
    for j in 0..n {
        let _ = write!(out, " {j:>width$}");
    }
    out.push('\n');
    out.push_str(&"-".repeat(width + 2 + n * (width + 1)));
    out.push('\n');
    for i in 0..n {
        let _ = write!(out, "{i:>width$} |");
        for &x in q.row(i) {
            let _ = write!(out, " {x:>width$}");
        }
        out.push('\n');
    }
    out
}
