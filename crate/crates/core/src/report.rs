//! Measure reports and their md / csv / json renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::{entropy, Dist};
use crate::error::{Error, Result};
use crate::net::{compose_t_steps, mechanism_joint, TransitionMap};
use crate::phi::{EiMode, PhiAnalyzer};
use crate::psi;

/// Where the input distribution `P(X)` comes from.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InputDistribution {
    #[default]
    Uniform,
    Empirical {
        label: String,
        dist: Dist,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub mode: EiMode,
    pub t: usize,
    pub input: InputDistribution,
    /// Keep only this output state's row.
    pub state: Option<usize>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            mode: EiMode::Standard,
            t: 1,
            input: InputDistribution::Uniform,
            state: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFlags {
    pub mode: EiMode,
    pub t: usize,
    pub x_distribution: String,
    /// The input distribution is not a product of node marginals, so the ψ
    /// bounds' premise does not hold.
    pub independence_violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateMeasures {
    pub probability: f64,
    pub ei: f64,
    pub phi: f64,
    pub mip: String,
    pub psi_min: f64,
    pub psi_min_partition: String,
    pub psi_max: f64,
    pub psi_max_node: usize,
}

/// One output state; `measures` is `None` when the state is unreachable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRow {
    pub state: String,
    pub measures: Option<StateMeasures>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub entropy_x: f64,
    pub mutual_information: f64,
    pub bracket_phi: f64,
    pub bracket_mip: String,
    pub expected_state_phi: f64,
    pub min_state_phi: f64,
    pub max_state_phi: f64,
    pub bracket_psi_min: f64,
    pub bracket_psi_min_partition: String,
    pub bracket_psi_max: f64,
    pub bracket_psi_max_node: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub network: String,
    pub node_count: usize,
    pub flags: ReportFlags,
    pub rows: Vec<StateRow>,
    pub summary: Summary,
}

/// Computes every state-dependent and bracket measure of a network.
pub fn build_report(
    name: &str,
    map: &TransitionMap,
    opts: &ReportOptions,
) -> Result<MeasureReport> {
    let map = compose_t_steps(map, opts.t)?;
    let space = map.space().clone();
    let (input, x_label, independence_violated) = match &opts.input {
        InputDistribution::Uniform => (Dist::uniform(space.clone()), "uniform".to_string(), false),
        InputDistribution::Empirical { label, dist } => (
            dist.clone(),
            format!("empirical:{label}"),
            !dist.is_product(1e-9),
        ),
    };
    let joint = mechanism_joint(&map, &input)?;
    if let Some(y) = opts.state {
        joint.require_reachable(y)?;
    }

    let mut analyzer = PhiAnalyzer::new(&joint)?;
    let mut rows = Vec::with_capacity(space.total_states());
    for y in 0..space.total_states() {
        let p = joint.output_marginal().prob(y);
        let measures = if p > 0.0 {
            let mip = analyzer.find_mip(y, opts.mode)?;
            let bounds = psi::psi_bounds_state(&joint, y)?;
            Some(StateMeasures {
                probability: p,
                ei: crate::phi::effective_information(&joint, y)?,
                phi: mip.raw_ei_beyond,
                mip: mip.partition.to_string(),
                psi_min: bounds.lower,
                psi_min_partition: bounds.argmin_lower.to_string(),
                psi_max: bounds.upper,
                psi_max_node: bounds.argmin_upper,
            })
        } else {
            None
        };
        rows.push(StateRow {
            state: space.format_state(y),
            measures,
        });
    }

    let reachable = || rows.iter().filter_map(|r| r.measures.as_ref());
    let expected_state_phi = reachable().map(|m| m.probability * m.phi).sum();
    let min_state_phi = reachable().map(|m| m.phi).fold(f64::INFINITY, f64::min);
    let max_state_phi = reachable().map(|m| m.phi).fold(f64::NEG_INFINITY, f64::max);
    let bracket = analyzer.bracket(opts.mode)?;
    let psi_bracket = psi::bracket_psi_bounds(&joint)?;
    let summary = Summary {
        entropy_x: entropy(joint.input_marginal()),
        mutual_information: bracket.ei,
        bracket_phi: bracket.phi,
        bracket_mip: bracket.mip.partition.to_string(),
        expected_state_phi,
        min_state_phi,
        max_state_phi,
        bracket_psi_min: psi_bracket.lower,
        bracket_psi_min_partition: psi_bracket.argmin_lower.to_string(),
        bracket_psi_max: psi_bracket.upper,
        bracket_psi_max_node: psi_bracket.argmin_upper,
    };

    if let Some(y) = opts.state {
        rows.retain(|r| r.state == space.format_state(y));
    }
    Ok(MeasureReport {
        network: name.to_string(),
        node_count: space.node_count(),
        flags: ReportFlags {
            mode: opts.mode,
            t: opts.t,
            x_distribution: x_label,
            independence_violated,
        },
        rows,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// Three decimals, ties to even, no negative zero.
pub fn fmt3(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `p` as a reduced fraction when it has a small or power-of-two
/// denominator, else three decimals.
pub fn fmt_probability(p: f64) -> String {
    let denominators = (1..=64u64).chain((7..=30).map(|k| 1u64 << k));
    for d in denominators {
        let a = p * d as f64;
        if (a - a.round()).abs() < 1e-9 {
            let a = a.round() as u64;
            let g = gcd(a, d).max(1);
            return if d / g == 1 {
                format!("{}", a / g)
            } else {
                format!("{}/{}", a / g, d / g)
            };
        }
    }
    fmt3(p)
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn summary_pairs(s: &Summary) -> Vec<(&'static str, String)> {
    vec![
        ("H(X)", fmt3(s.entropy_x)),
        ("I(X;Y)", fmt3(s.mutual_information)),
        ("<phi>", fmt3(s.bracket_phi)),
        ("<MIP>", s.bracket_mip.clone()),
        ("E_y phi(y)", fmt3(s.expected_state_phi)),
        ("min_y phi(y)", fmt3(s.min_state_phi)),
        ("max_y phi(y)", fmt3(s.max_state_phi)),
        ("<psi>_min", fmt3(s.bracket_psi_min)),
        ("<psi>_min bipartition", s.bracket_psi_min_partition.clone()),
        ("<psi>_max", fmt3(s.bracket_psi_max)),
        ("<psi>_max node", s.bracket_psi_max_node.to_string()),
    ]
}

pub fn render(report: &MeasureReport, format: Format) -> String {
    match format {
        Format::Md => render_md(report),
        Format::Csv => render_csv(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn render_md(r: &MeasureReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## {}\n", r.network);
    let _ = writeln!(
        out,
        "mode: {} | t: {} | X: {}\n",
        r.flags.mode, r.flags.t, r.flags.x_distribution
    );
    if r.flags.independence_violated {
        let _ = writeln!(
            out,
            "WARNING: independence assumption violated; psi bounds assume independent inputs\n"
        );
    }
    out.push_str("| y | Pr(y) | ei | phi | psi_min | psi_max | MIP |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for row in &r.rows {
        match &row.measures {
            Some(m) => {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    row.state,
                    fmt_probability(m.probability),
                    fmt3(m.ei),
                    fmt3(m.phi),
                    fmt3(m.psi_min),
                    fmt3(m.psi_max),
                    md_escape(&m.mip)
                );
            }
            None => {
                let _ = writeln!(out, "| {} | - | - | - | - | - | - |", row.state);
            }
        }
    }
    out.push_str("\n| measure | value |\n|---|---|\n");
    for (k, v) in summary_pairs(&r.summary) {
        let _ = writeln!(out, "| {} | {} |", k, md_escape(&v));
    }
    out
}

fn render_csv(r: &MeasureReport) -> String {
    let mut out = String::new();
    out.push_str(
        "network,state,probability,ei,phi,psi_min,psi_max,mip,psi_min_partition,psi_max_node\n",
    );
    let net = csv_field(&r.network);
    for row in &r.rows {
        match &row.measures {
            Some(m) => {
                let _ = writeln!(
                    out,
                    "{net},{},{},{},{},{},{},{},{},{}",
                    row.state,
                    fmt3(m.probability),
                    fmt3(m.ei),
                    fmt3(m.phi),
                    fmt3(m.psi_min),
                    fmt3(m.psi_max),
                    csv_field(&m.mip),
                    csv_field(&m.psi_min_partition),
                    m.psi_max_node
                );
            }
            None => {
                let _ = writeln!(out, "{net},{},-,-,-,-,-,-,-,-", row.state);
            }
        }
    }
    out.push_str("\nmeasure,value\n");
    for (k, v) in summary_pairs(&r.summary) {
        let _ = writeln!(out, "{},{}", csv_field(k), csv_field(&v));
    }
    let _ = writeln!(out, "mode,{}", r.flags.mode);
    let _ = writeln!(out, "t,{}", r.flags.t);
    let _ = writeln!(out, "x_distribution,{}", csv_field(&r.flags.x_distribution));
    let _ = writeln!(
        out,
        "independence_violated,{}",
        r.flags.independence_violated
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::network;

    #[test]
    fn rounding_is_half_even_on_exact_ties() {
        assert_eq!(fmt3(0.0625), "0.062");
        assert_eq!(fmt3(0.1875), "0.188");
        assert_eq!(fmt3(-1e-15), "0.000");
        assert_eq!(fmt3(2.584962500721156), "2.585");
    }

    #[test]
    fn probability_fractions() {
        assert_eq!(fmt_probability(0.25), "1/4");
        assert_eq!(fmt_probability(0.75), "3/4");
        assert_eq!(fmt_probability(1.0), "1");
        assert_eq!(fmt_probability(1.0 / 3.0), "1/3");
        assert_eq!(fmt_probability(3.0 / 1024.0), "3/1024");
        assert_eq!(fmt_probability(0.123456789), "0.123");
    }

    #[test]
    fn or_get_md() {
        let r = build_report("OR-GET", &network("OR-GET").map, &ReportOptions::default()).unwrap();
        let md = render(&r, Format::Md);
        assert!(md.contains("| 10 | 1/4 | 2.000 | 2.585 |"), "{md}");
        assert!(md.contains("| 01 | - | - | - | - | - | - |"), "{md}");
        let csv = render(&r, Format::Csv);
        assert!(csv.contains("OR-GET,01,-,-,-,-,-,-,-,-"), "{csv}");
    }

    #[test]
    fn json_round_trip_and_nulls() {
        let r = build_report(
            "AND-ZERO",
            &network("AND-ZERO").map,
            &ReportOptions::default(),
        )
        .unwrap();
        let js = render(&r, Format::Json);
        let back: MeasureReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert!(v["rows"][1]["measures"].is_null());
    }

    #[test]
    fn state_filter() {
        let map = network("AND-ZERO").map;
        let opts = ReportOptions {
            state: Some(0b10),
            ..ReportOptions::default()
        };
        let r = build_report("AND-ZERO", &map, &opts).unwrap();
        assert_eq!(r.rows.len(), 1);
        let m = r.rows[0].measures.as_ref().unwrap();
        assert!((m.phi - 1.0).abs() < 1e-12);
        let opts = ReportOptions {
            state: Some(0b01),
            ..ReportOptions::default()
        };
        assert!(matches!(
            build_report("AND-ZERO", &map, &opts),
            Err(Error::UnreachableState { .. })
        ));
    }

    #[test]
    fn empirical_flags_dependence() {
        let map = network("KEEP-KEEP").map;
        let dist = Dist::new(map.space().clone(), vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let opts = ReportOptions {
            input: InputDistribution::Empirical {
                label: "corr".into(),
                dist,
            },
            ..ReportOptions::default()
        };
        let r = build_report("KEEP-KEEP", &map, &opts).unwrap();
        assert!(r.flags.independence_violated);
        assert!(render(&r, Format::Md).contains("WARNING"));
    }
}
