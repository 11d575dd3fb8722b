//! Report serialization: versioned JSON (schema `fprlab/1`) and CSV
//! flattening for the row-oriented reports. Rationals are always rendered as
//! reduced `a/b` strings; output is byte-stable for a fixed configuration
//! because every collection is emitted in a deterministic order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bases::{BaseOutcome, BaseProbEstimate, BoundsRecord};
use crate::classes::ClassTable;
use crate::error::Result;
use crate::fpr::{rational_approx, rational_str, FprReport};
use crate::genspread::{GraphStats, SpreadCert, SpreadMethod, UniformSpreadCertificate};
use crate::genus::{GenusScreen, SigStatus};
use crate::perm::Permutation;

pub const SCHEMA: &str = "fprlab/1";

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: &'static str,
    pub seed: u64,
    pub command: String,
    #[serde(flatten)]
    pub payload: T,
}

pub fn to_json<T: Serialize>(seed: u64, command: &str, payload: T) -> String {
    let env = Envelope {
        schema: SCHEMA,
        seed,
        command: command.to_string(),
        payload,
    };
    serde_json::to_string_pretty(&env).expect("report serialization")
}

#[derive(Serialize)]
pub struct ClassRow {
    pub rep: String,
    pub order: u64,
    pub size: u128,
    pub centralizer_order: u128,
}

#[derive(Serialize)]
pub struct ClassesOut {
    pub group: String,
    pub degree: usize,
    pub order: u128,
    /// Representative canonicalization rule in force: classes here are
    /// always fully enumerated, so reps are the lex-least image sequences.
    pub rep_rule: &'static str,
    pub classes: Vec<ClassRow>,
}

pub fn classes_out(name: &str, degree: usize, table: &ClassTable) -> ClassesOut {
    ClassesOut {
        group: name.to_string(),
        degree,
        order: table.group_order,
        rep_rule: "lex-least",
        classes: table
            .classes
            .iter()
            .map(|c| ClassRow {
                rep: c.rep.to_cycles_str(),
                order: c.order,
                size: c.size,
                centralizer_order: c.centralizer_order,
            })
            .collect(),
    }
}

pub fn classes_csv(out: &ClassesOut) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rep", "order", "size", "centralizer_order"])
        .map_err(csv_err)?;
    for c in &out.classes {
        w.write_record([
            c.rep.clone(),
            c.order.to_string(),
            c.size.to_string(),
            c.centralizer_order.to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish_csv(w)
}

#[derive(Serialize)]
pub struct FprRowOut {
    pub rep: String,
    pub order: u64,
    pub size: u128,
    pub fix: usize,
    pub fpr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fpr_float: Option<String>,
}

#[derive(Serialize)]
pub struct FprOut {
    pub group: String,
    pub action: String,
    pub degree: usize,
    pub order: u128,
    pub rows: Vec<FprRowOut>,
    pub mu: usize,
    pub fixity: usize,
    pub involution_fixity: Option<usize>,
    pub no_involutions: bool,
    pub max_fpr: String,
    pub derangement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derangement_witness: Option<String>,
}

pub fn fpr_out(group: &str, action: &str, report: &FprReport, with_float: bool) -> FprOut {
    FprOut {
        group: group.to_string(),
        action: action.to_string(),
        degree: report.degree,
        order: report.group_order,
        rows: report
            .rows
            .iter()
            .map(|r| FprRowOut {
                rep: r.rep.to_cycles_str(),
                order: r.order,
                size: r.size,
                fix: r.fix,
                fpr: rational_str(&r.fpr),
                fpr_float: with_float.then(|| rational_approx(&r.fpr)),
            })
            .collect(),
        mu: report.mu,
        fixity: report.fixity,
        involution_fixity: report.involution_fixity,
        no_involutions: report.involution_fixity.is_none(),
        max_fpr: rational_str(&report.max_fpr),
        derangement: report.has_derangement(),
        derangement_witness: report
            .derangement_witness
            .map(|i| report.rows[i].rep.to_cycles_str()),
    }
}

pub fn fpr_csv(out: &FprOut) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rep", "order", "size", "fix", "fpr"])
        .map_err(csv_err)?;
    for r in &out.rows {
        w.write_record([
            r.rep.clone(),
            r.order.to_string(),
            r.size.to_string(),
            r.fix.to_string(),
            r.fpr.clone(),
        ])
        .map_err(csv_err)?;
    }
    finish_csv(w)
}

#[derive(Serialize)]
pub struct BoundedOut {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct GraphOut {
    pub group: String,
    pub vertices: usize,
    pub edges: u128,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub clique: BoundedOut,
    pub coclique: BoundedOut,
    pub posa_criterion: bool,
    pub min_degree: usize,
    pub max_degree: usize,
}

pub fn graph_out(group: &str, stats: &GraphStats, posa: bool) -> GraphOut {
    GraphOut {
        group: group.to_string(),
        vertices: stats.vertices,
        edges: stats.edges,
        connected: stats.connected,
        diameter: stats.diameter,
        clique: BoundedOut {
            lower: stats.clique.lower,
            upper: stats.clique.upper,
            exact: stats.clique.exact,
        },
        coclique: BoundedOut {
            lower: stats.coclique.lower,
            upper: stats.coclique.upper,
            exact: stats.coclique.exact,
        },
        posa_criterion: posa,
        min_degree: stats.degree_sequence.first().copied().unwrap_or(0),
        max_degree: stats.degree_sequence.last().copied().unwrap_or(0),
    }
}

#[derive(Serialize)]
pub struct SpreadOut {
    pub group: String,
    pub s: usize,
    pub u: usize,
    pub witness_class: String,
    pub s_failing_tuple: Vec<String>,
    pub u_failing_tuple: Vec<String>,
    pub method: String,
}

pub fn spread_out(group: &str, cert: &SpreadCert) -> SpreadOut {
    SpreadOut {
        group: group.to_string(),
        s: cert.s,
        u: cert.u,
        witness_class: cert.witness_class.to_cycles_str(),
        s_failing_tuple: cert
            .s_failing_tuple
            .iter()
            .map(Permutation::to_cycles_str)
            .collect(),
        u_failing_tuple: cert
            .u_failing_tuple
            .iter()
            .map(Permutation::to_cycles_str)
            .collect(),
        method: match cert.method {
            SpreadMethod::SetCoverExact => "set-cover-exact".into(),
            SpreadMethod::CertifiedLowerBound => "certified-lower-bound".into(),
        },
    }
}

#[derive(Serialize)]
pub struct UspreadRowOut {
    pub rep: String,
    pub order: u64,
    pub summands: Vec<String>,
    pub total: String,
}

#[derive(Serialize)]
pub struct UspreadOut {
    pub group: String,
    pub y: String,
    pub k: usize,
    pub conditional: bool,
    pub overgroups: Vec<OvergroupOut>,
    pub rows: Vec<UspreadRowOut>,
    pub max_total: String,
    pub threshold: String,
    pub granted: bool,
}

#[derive(Serialize)]
pub struct OvergroupOut {
    pub order: u128,
    pub index: u128,
    pub generators: Vec<String>,
}

pub fn uspread_out(group: &str, cert: &UniformSpreadCertificate) -> UspreadOut {
    UspreadOut {
        group: group.to_string(),
        y: cert.y.to_cycles_str(),
        k: cert.k,
        conditional: cert.conditional,
        overgroups: cert
            .overgroups
            .iter()
            .map(|o| OvergroupOut {
                order: o.order,
                index: o.index,
                generators: o.generators.iter().map(Permutation::to_cycles_str).collect(),
            })
            .collect(),
        rows: cert
            .rows
            .iter()
            .map(|r| UspreadRowOut {
                rep: r.class_rep.to_cycles_str(),
                order: r.order,
                summands: r.summands.iter().map(rational_str).collect(),
                total: rational_str(&r.total),
            })
            .collect(),
        max_total: rational_str(&cert.max_total),
        threshold: format!("1/{}", cert.k),
        granted: cert.granted,
    }
}

#[derive(Serialize)]
pub struct GenusScreenOut {
    pub group: String,
    pub degree: usize,
    pub genus: i64,
    pub target_sum: usize,
    pub insoluble_filter: bool,
    pub min_ind: BTreeMap<u64, usize>,
    pub signatures: Vec<SignatureOut>,
    pub survivors: Vec<Vec<u64>>,
}

#[derive(Serialize)]
pub struct SignatureOut {
    pub orders: Vec<u64>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

pub fn genus_screen_out(group: &str, screen: &GenusScreen, insoluble_filter: bool) -> GenusScreenOut {
    GenusScreenOut {
        group: group.to_string(),
        degree: screen.degree,
        genus: screen.genus,
        target_sum: screen.target_sum,
        insoluble_filter,
        min_ind: screen.min_ind.clone(),
        signatures: screen
            .signatures
            .iter()
            .map(|(orders, status)| SignatureOut {
                orders: orders.clone(),
                status: match status {
                    SigStatus::RefutedByIndex => "refuted-by-index".into(),
                    SigStatus::RefutedByRatio => "refuted-by-85/42".into(),
                    SigStatus::Realized(_) => "realized".into(),
                    SigStatus::Unrealized => "unrealized".into(),
                    SigStatus::Undecided => "undecided".into(),
                },
                witness: match status {
                    SigStatus::Realized(t) => {
                        Some(t.iter().map(Permutation::to_cycles_str).collect())
                    }
                    _ => None,
                },
            })
            .collect(),
        survivors: screen
            .survivors()
            .iter()
            .map(|(sig, _)| sig.clone())
            .collect(),
    }
}

#[derive(Serialize)]
pub struct IndTableOut {
    pub group: String,
    pub degree: usize,
    pub min_ind: BTreeMap<u64, usize>,
}

#[derive(Serialize)]
pub struct BaseOut {
    pub group: String,
    pub degree: usize,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    /// 1-indexed points.
    pub witness: Vec<usize>,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qhat: Option<QhatOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prob: Option<ProbOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsOut>,
}

#[derive(Serialize)]
pub struct QhatOut {
    pub c: u32,
    pub value: String,
    pub certifies: bool,
}

#[derive(Serialize)]
pub struct ProbOut {
    pub c: usize,
    pub trials: u64,
    pub bases_found: u64,
    pub seed: u64,
    pub estimate: String,
}

#[derive(Serialize)]
pub struct BoundsOut {
    pub b: usize,
    pub mu: usize,
    pub lower_log_ok: bool,
    pub upper_log_ok: bool,
    pub coupling_ok: bool,
}

pub fn base_out(group: &str, degree: usize, order: &num_bigint::BigUint, out: &BaseOutcome) -> BaseOut {
    BaseOut {
        group: group.to_string(),
        degree,
        order: order.to_string(),
        b: out.exact,
        lower: out.lower,
        upper: out.upper,
        witness: out.witness.iter().map(|p| p + 1).collect(),
        nodes: out.nodes,
        qhat: None,
        prob: None,
        bounds: None,
    }
}

pub fn prob_out(est: &BaseProbEstimate) -> ProbOut {
    ProbOut {
        c: est.c,
        trials: est.trials,
        bases_found: est.bases_found,
        seed: est.seed,
        estimate: rational_str(&est.estimate),
    }
}

pub fn bounds_out(rec: &BoundsRecord) -> BoundsOut {
    BoundsOut {
        b: rec.b,
        mu: rec.mu,
        lower_log_ok: rec.lower_log_ok,
        upper_log_ok: rec.upper_log_ok,
        coupling_ok: rec.coupling_ok,
    }
}

fn csv_err(e: csv::Error) -> crate::error::Error {
    crate::error::Error::Parse(format!("csv: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| crate::error::Error::Parse(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| crate::error::Error::Parse(format!("csv utf8: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_table;
    use crate::fpr::fpr_report;
    use crate::group::alt;

    #[test]
    fn json_has_schema_and_seed() {
        let table = class_table(&alt(5), 10_000).unwrap();
        let out = classes_out("alt:5@natural", 5, &table);
        let json = to_json(7, "classes", out);
        assert!(json.contains("\"schema\": \"fprlab/1\""));
        assert!(json.contains("\"seed\": 7"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn reports_are_byte_stable() {
        let table = class_table(&alt(5), 10_000).unwrap();
        let report = fpr_report("alt:5@natural", 5, &table).unwrap();
        let a = to_json(1, "fpr", fpr_out("alt:5", "natural", &report, false));
        let table2 = class_table(&alt(5), 10_000).unwrap();
        let report2 = fpr_report("alt:5@natural", 5, &table2).unwrap();
        let b = to_json(1, "fpr", fpr_out("alt:5", "natural", &report2, false));
        assert_eq!(a, b);
    }

    #[test]
    fn csv_flattening() {
        let table = class_table(&alt(5), 10_000).unwrap();
        let out = classes_out("alt:5", 5, &table);
        let csv = classes_csv(&out).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines[0].starts_with("rep,order,size"));
        // Cycle notation contains commas, so reps must be quoted.
        assert!(lines[2].starts_with('"'));
    }
}
