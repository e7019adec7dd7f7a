//! Rendering helpers shared by the text and JSON output paths. Both paths
//! format numbers through the same functions so the two views of one run
//! always carry identical digits.

use fuzzy_cpa_core::decimal::{format_decimal, pow10};
use fuzzy_cpa_core::diagnostics::{CrossConfigurationFinding, DiscrepancyReport};
use fuzzy_cpa_core::fuzzy::{Belief, DiscreteFuzzyQuantity, Duration, BELIEF_FRAC_DIGITS};
use fuzzy_cpa_core::network::ProjectNetwork;
use fuzzy_cpa_core::oracle::{ConfigTableRow, TraceEntry};

pub fn belief_str(b: Belief) -> String {
    b.to_string()
}

pub fn duration_str(d: Duration, scale: u32) -> String {
    d.format(scale)
}

pub fn quantity_str(q: &DiscreteFuzzyQuantity, scale: u32) -> String {
    q.format(scale)
}

/// AREA in display units: raw area is duration-raw times belief-raw.
pub fn area_str(area_raw: i128, scale: u32) -> String {
    format_decimal(area_raw, scale + BELIEF_FRAC_DIGITS)
}

pub fn delta_str(delta_raw: i128) -> String {
    let s = format_decimal(delta_raw, BELIEF_FRAC_DIGITS);
    if delta_raw > 0 {
        format!("+{s}")
    } else {
        s
    }
}

/// `num/den` to a fixed number of fractional digits, by integer long
/// division (round toward zero).
pub fn ratio_str(num: i128, den: i128, digits: u32) -> String {
    assert!(den > 0);
    format_decimal(num * pow10(digits) / den, digits)
}

pub fn quantity_points(q: &DiscreteFuzzyQuantity, scale: u32) -> Vec<(String, String)> {
    q.points()
        .iter()
        .map(|&(d, b)| (duration_str(d, scale), belief_str(b)))
        .collect()
}

pub fn render_report_text(report: &DiscrepancyReport, scale: u32) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "discrepancies: {} of {} lengths (max delta {})\n",
        report.mismatches,
        report.rows.len(),
        delta_str(report.max_delta_raw)
    ));
    out.push_str("  length  recursion  oracle  delta\n");
    for row in &report.rows {
        let fmt_opt = |b: Option<Belief>| b.map_or("-".to_string(), belief_str);
        out.push_str(&format!(
            "  {:>6}  {:>9}  {:>6}  {:>5}\n",
            duration_str(row.length, scale),
            fmt_opt(row.recursion),
            fmt_opt(row.oracle),
            delta_str(row.delta_raw),
        ));
    }
    out
}

pub fn render_findings_text(findings: &[CrossConfigurationFinding], scale: u32) -> String {
    let mut out = String::new();
    out.push_str(&format!("potential cross-configuration findings: {}\n", findings.len()));
    for f in findings {
        let choices = |cs: &[Duration]| {
            cs.iter().map(|&d| duration_str(d, scale)).collect::<Vec<_>>().join("|")
        };
        out.push_str(&format!(
            "  at {}: ef[{}] {}/{} vs ef[{}] {}/{} -> {}/{}; conflict on {}: {} vs {}\n",
            f.merge_id,
            f.left.source_ids.join(","),
            duration_str(f.left.value, scale),
            belief_str(f.left.belief),
            f.right.source_ids.join(","),
            duration_str(f.right.value, scale),
            belief_str(f.right.belief),
            duration_str(f.result_value, scale),
            belief_str(f.result_belief),
            f.conflict_id,
            choices(&f.left_choices),
            choices(&f.right_choices),
        ));
    }
    out
}

pub fn render_table_text(
    net: &ProjectNetwork,
    paths: &[Vec<usize>],
    rows: &[ConfigTableRow],
) -> String {
    let scale = net.scale();
    let mut out = String::new();
    let mut header: Vec<String> = net
        .activities()
        .iter()
        .map(|a| format!("{}(dur/bel)", a.id))
        .collect();
    for p in paths {
        let names: Vec<&str> = p.iter().map(|&i| net.id_of(i)).collect();
        header.push(format!("P {}", names.join("-")));
    }
    header.push("CP".to_string());
    header.push("belief".to_string());
    out.push_str(&header.join("  "));
    out.push('\n');
    for row in rows {
        let mut cells: Vec<String> = row
            .configuration
            .choices
            .iter()
            .map(|&(d, b)| format!("{}/{}", duration_str(d, scale), belief_str(b)))
            .collect();
        for &len in &row.path_lengths {
            cells.push(duration_str(len, scale));
        }
        cells.push(duration_str(row.cp_length, scale));
        cells.push(belief_str(row.belief));
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

pub fn report_json(report: &DiscrepancyReport, scale: u32) -> serde_json::Value {
    serde_json::json!({
        "rows": report.rows.iter().map(|r| serde_json::json!({
            "length": duration_str(r.length, scale),
            "recursion": r.recursion.map(belief_str),
            "oracle": r.oracle.map(belief_str),
            "delta": delta_str(r.delta_raw),
        })).collect::<Vec<_>>(),
        "mismatches": report.mismatches,
        "max_delta": delta_str(report.max_delta_raw),
        "supports_identical": report.supports_identical,
    })
}

pub fn findings_json(findings: &[CrossConfigurationFinding], scale: u32) -> serde_json::Value {
    let point = |ids: &[String], v: Duration, b: Belief| {
        serde_json::json!({
            "sources": ids,
            "value": duration_str(v, scale),
            "belief": belief_str(b),
        })
    };
    serde_json::json!(findings
        .iter()
        .map(|f| serde_json::json!({
            "merge": f.merge_id,
            "left": point(&f.left.source_ids, f.left.value, f.left.belief),
            "right": point(&f.right.source_ids, f.right.value, f.right.belief),
            "result": { "value": duration_str(f.result_value, scale), "belief": belief_str(f.result_belief) },
            "conflict": f.conflict_id,
            "left_choices": f.left_choices.iter().map(|&d| duration_str(d, scale)).collect::<Vec<_>>(),
            "right_choices": f.right_choices.iter().map(|&d| duration_str(d, scale)).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

pub fn trace_json(trace: &[TraceEntry], scale: u32) -> serde_json::Value {
    serde_json::json!(trace
        .iter()
        .map(|t| serde_json::json!({
            "samples": t.samples,
            "area": area_str(t.area_raw, scale),
            "delta": t.delta_raw.map(|d| area_str(d, scale)),
        }))
        .collect::<Vec<_>>())
}
