//! Golden tables: recompute each reference table from the embedded corpus
//! and compare it cell by cell at the printed precision.

use std::fmt::Write as _;

use crate::corpus::{network, DOUBLETS};
use crate::dist::mutual_information;
use crate::error::{Error, Result};
use crate::net::{uniform_joint, TransitionMap};
use crate::phi::{EiMode, PhiAnalyzer};
use crate::psi;
use crate::report::fmt_probability;

pub const FIGURE_IDS: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig6"];

/// One compared cell. `expected` is the printed text: a decimal, a
/// fraction like `1/4`, or `-` for an unreachable state.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub expected: &'static str,
    pub actual: Option<f64>,
}

impl Cell {
    pub fn matches(&self) -> bool {
        match (self.expected, self.actual) {
            ("-", None) => true,
            ("-", Some(_)) | (_, None) => false,
            (text, Some(v)) => match text.split_once('/') {
                Some((a, b)) => match (a.parse::<f64>(), b.parse::<f64>()) {
                    (Ok(a), Ok(b)) => (v - a / b).abs() < 1e-9,
                    _ => false,
                },
                None => match text.parse::<f64>() {
                    Ok(e) => (v - e).abs() <= tolerance(text),
                    Err(_) => false,
                },
            },
        }
    }

    /// The computed value at the expected cell's precision.
    pub fn shown(&self) -> String {
        match self.actual {
            None => "-".into(),
            Some(v) if self.expected.contains('/') => fmt_probability(v),
            Some(v) => {
                let d = decimals(self.expected).max(3);
                let s = format!("{v:.d$}");
                if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
                    s[1..].to_string()
                } else {
                    s
                }
            }
        }
    }
}

fn decimals(text: &str) -> usize {
    text.split_once('.').map_or(0, |(_, f)| f.len())
}

/// Half a unit in the last printed place, never looser than 0.005.
fn tolerance(text: &str) -> f64 {
    let d = decimals(text);
    let half_ulp = if d >= 2 {
        0.5 * 10f64.powi(-(d as i32))
    } else {
        0.005
    };
    half_ulp + 1e-9
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureCheck {
    pub id: String,
    pub tables: Vec<Table>,
}

impl FigureCheck {
    pub fn passed(&self) -> bool {
        self.tables
            .iter()
            .flat_map(|t| &t.rows)
            .flat_map(|r| &r.cells)
            .all(Cell::matches)
    }

    /// `(table, row, column, cell)` for every mismatching cell.
    pub fn mismatches(&self) -> Vec<(String, String, String, Cell)> {
        let mut out = Vec::new();
        for t in &self.tables {
            for r in &t.rows {
                for (c, cell) in t.columns.iter().zip(&r.cells) {
                    if !cell.matches() {
                        out.push((t.title.clone(), r.label.clone(), c.clone(), cell.clone()));
                    }
                }
            }
        }
        out
    }

    /// Markdown tables of computed values; mismatching cells show
    /// `computed (expected)` in bold.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(out, "### {} {}\n", self.id, t.title);
            let _ = writeln!(out, "|  | {} |", t.columns.join(" | "));
            let _ = writeln!(out, "|---{}|", "|---".repeat(t.columns.len()));
            for r in &t.rows {
                let cells: Vec<String> = r
                    .cells
                    .iter()
                    .map(|c| {
                        if c.matches() {
                            c.shown()
                        } else {
                            format!("**{} (expected {})**", c.shown(), c.expected)
                        }
                    })
                    .collect();
                let _ = writeln!(out, "| {} | {} |", r.label, cells.join(" | "));
            }
            out.push('\n');
        }
        let verdict = if self.passed() {
            "PASS".to_string()
        } else {
            format!("FAIL ({} mismatching cells)", self.mismatches().len())
        };
        let _ = writeln!(out, "{}: {}", self.id, verdict);
        out
    }
}

fn cells(expected: &[&'static str], actual: impl IntoIterator<Item = Option<f64>>) -> Vec<Cell> {
    expected
        .iter()
        .zip(actual)
        .map(|(&e, a)| Cell {
            expected: e,
            actual: a,
        })
        .collect()
}

fn row(
    label: &str,
    expected: &[&'static str],
    actual: impl IntoIterator<Item = Option<f64>>,
) -> Row {
    Row {
        label: label.to_string(),
        cells: cells(expected, actual),
    }
}

struct StateColumns {
    pr: Vec<Option<f64>>,
    ei: Vec<Option<f64>>,
    phi: Vec<Option<f64>>,
}

fn state_columns(map: &TransitionMap) -> Result<StateColumns> {
    let joint = uniform_joint(map);
    let mut analyzer = PhiAnalyzer::new(&joint)?;
    let total = map.space().total_states();
    let mut cols = StateColumns {
        pr: Vec::with_capacity(total),
        ei: Vec::with_capacity(total),
        phi: Vec::with_capacity(total),
    };
    for y in 0..total {
        let p = joint.output_marginal().prob(y);
        if p > 0.0 {
            cols.pr.push(Some(p));
            cols.ei
                .push(Some(crate::phi::effective_information(&joint, y)?));
            cols.phi
                .push(Some(analyzer.find_mip(y, EiMode::Standard)?.raw_ei_beyond));
        } else {
            cols.pr.push(None);
            cols.ei.push(None);
            cols.phi.push(None);
        }
    }
    Ok(cols)
}

/// Whole-network measures used by the summary tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkMeasures {
    pub mutual_information: f64,
    pub min_phi: f64,
    pub max_phi: f64,
    pub bracket_phi: f64,
    pub bracket_psi_min: f64,
    pub bracket_psi_max: f64,
}

pub fn network_measures(map: &TransitionMap) -> Result<NetworkMeasures> {
    let joint = uniform_joint(map);
    let mut analyzer = PhiAnalyzer::new(&joint)?;
    let mut min_phi = f64::INFINITY;
    let mut max_phi = f64::NEG_INFINITY;
    for y in joint.reachable_outputs().collect::<Vec<_>>() {
        let phi = analyzer.find_mip(y, EiMode::Standard)?.raw_ei_beyond;
        min_phi = min_phi.min(phi);
        max_phi = max_phi.max(phi);
    }
    let bracket = analyzer.bracket(EiMode::Standard)?;
    let psi = psi::bracket_psi_bounds(&joint)?;
    Ok(NetworkMeasures {
        mutual_information: mutual_information(&joint),
        min_phi,
        max_phi,
        bracket_phi: bracket.phi,
        bracket_psi_min: psi.lower,
        bracket_psi_max: psi.upper,
    })
}

const STATES2: [&str; 4] = ["00", "01", "10", "11"];

fn state_table(
    name: &str,
    pr: &[&'static str],
    ei: &[&'static str],
    phi: &[&'static str],
) -> Result<Table> {
    let cols = state_columns(&network(name).map)?;
    Ok(Table {
        title: name.to_string(),
        columns: STATES2.iter().map(|s| s.to_string()).collect(),
        rows: vec![
            row("Pr(y)", pr, cols.pr),
            row("ei(y)", ei, cols.ei),
            row("phi(y)", phi, cols.phi),
        ],
    })
}

fn fig1() -> Result<Vec<Table>> {
    let or_get = network_measures(&network("OR-GET").map)?;
    Ok(vec![
        state_table(
            "OR-GET",
            &["1/4", "-", "1/4", "1/2"],
            &["2.00", "-", "2.00", "1.00"],
            &["1.00", "-", "2.58", "0.58"],
        )?,
        state_table(
            "OR-XOR",
            &["1/4", "-", "1/4", "1/2"],
            &["2.00", "-", "2.00", "1.00"],
            &["1.00", "-", "1.58", "1.08"],
        )?,
        Table {
            title: "averages".into(),
            columns: vec!["<phi>".into()],
            rows: vec![row("OR-GET", &["1.189"], [Some(or_get.bracket_phi)])],
        },
    ])
}

fn fig2() -> Result<Vec<Table>> {
    let mut summary = Vec::new();
    for (name, bphi) in [("AND-ZERO", "0.5"), ("AND-AND", "0.189")] {
        let m = network_measures(&network(name).map)?;
        summary.push(row(
            name,
            &["0.811", bphi],
            [Some(m.mutual_information), Some(m.bracket_phi)],
        ));
    }
    Ok(vec![
        state_table(
            "AND-ZERO",
            &["3/4", "-", "1/4", "-"],
            &["0.42", "-", "2.00", "-"],
            &["0.33", "-", "1.00", "-"],
        )?,
        state_table(
            "AND-AND",
            &["3/4", "-", "-", "1/4"],
            &["0.42", "-", "-", "2.00"],
            &["0.25", "-", "-", "0.00"],
        )?,
        Table {
            title: "averages".into(),
            columns: vec!["I(X;Y)".into(), "<phi>".into()],
            rows: summary,
        },
    ])
}

fn fig3() -> Result<Vec<Table>> {
    let expected: [(&str, [&'static str; 4]); 4] = [
        ("SHIFT", ["4.000", "2.000", "2.000", "2.000"]),
        ("4422", ["1.198", "0.000", "0.673", "0.424"]),
        ("4322", ["1.805", "0.322", "1.586", "1.367"]),
        ("4321", ["2.031", "0.322", "1.682", "1.651"]),
    ];
    let mut rows = Vec::new();
    for (name, e) in expected {
        let m = network_measures(&network(name).map)?;
        rows.push(row(
            name,
            &e,
            [m.mutual_information, m.min_phi, m.max_phi, m.bracket_phi].map(Some),
        ));
    }
    Ok(vec![Table {
        title: "phi".into(),
        columns: ["I(X;Y)", "min phi(y)", "max phi(y)", "<phi>"]
            .map(String::from)
            .to_vec(),
        rows,
    }])
}

fn comparison_table(expected: &[(&str, [&'static str; 4])]) -> Result<Table> {
    let mut rows = Vec::new();
    for (name, e) in expected {
        let m = network_measures(&network(name).map)?;
        rows.push(row(
            name,
            e,
            [
                m.mutual_information,
                m.bracket_phi,
                m.bracket_psi_min,
                m.bracket_psi_max,
            ]
            .map(Some),
        ));
    }
    Ok(Table {
        title: "phi vs psi".into(),
        columns: ["I(X;Y)", "<phi>", "<psi>_min", "<psi>_max"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

fn fig4() -> Result<Vec<Table>> {
    Ok(vec![comparison_table(&[
        ("AND-ZERO+KEEP", ["1.81", "0", "0", "0.50"]),
        ("2x AND-ZERO", ["1.62", "0", "0", "0.50"]),
        ("KEEP-KEEP", ["2.00", "0", "0", "1.00"]),
        ("GET-GET", ["2.00", "2.00", "0", "1.00"]),
        ("ANDtriplet", ["2.00", "2.00", "0.16", "0.75"]),
        ("iso-ANDtriplet", ["2.00", "1.07", "0.16", "0.75"]),
        ("AND-ZERO", ["0.81", "0.50", "0.19", "0.50"]),
        ("AND-AND", ["0.81", "0.19", "0.19", "0.50"]),
        ("SHIFT", ["4.00", "2.00", "0", "1.00"]),
        ("4422", ["1.20", "0.42", "0.33", "0.50"]),
        ("4322", ["1.81", "1.37", "0.68", "0.88"]),
        ("4321", ["2.03", "1.65", "0.78", "1.00"]),
    ])?])
}

/// The doublet table as printed, in `DOUBLETS` order.
pub const FIG6_EXPECTED: [[&str; 4]; 16] = [
    ["0", "0", "0", "0"],
    ["1.0", "0", "0", "0"],
    ["2.0", "0", "0", "1.0"],
    ["1.0", "1.0", "0", "0"],
    ["1.0", "0", "0", "0"],
    ["2.0", "2.0", "0", "1.0"],
    ["0.811", "0.5", "0.189", "0.5"],
    ["1.5", "0.189", "0", "0.5"],
    ["1.5", "1.189", "0", "0.5"],
    ["0.811", "0.189", "0.189", "0.5"],
    ["1.5", "1.189", "0.5", "1.0"],
    ["1.0", "1.0", "1.0", "1.0"],
    ["2.0", "1.0", "0", "1.0"],
    ["2.0", "2.0", "0", "1.0"],
    ["1.5", "1.189", "0.5", "1.0"],
    ["1.0", "1.0", "1.0", "1.0"],
];

fn fig6() -> Result<Vec<Table>> {
    let expected: Vec<(&str, [&'static str; 4])> =
        DOUBLETS.iter().copied().zip(FIG6_EXPECTED).collect();
    Ok(vec![comparison_table(&expected)?])
}

/// Recomputes the named figure's tables.
pub fn check_figure(id: &str) -> Result<FigureCheck> {
    let tables = match id {
        "fig1" => fig1()?,
        "fig2" => fig2()?,
        "fig3" => fig3()?,
        "fig4" => fig4()?,
        "fig6" => fig6()?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown figure id {id:?}; expected one of {}",
                FIGURE_IDS.join(", ")
            )))
        }
    };
    Ok(FigureCheck {
        id: id.to_string(),
        tables,
    })
}
