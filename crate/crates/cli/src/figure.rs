use qcalc_core::qburgers::{figure_samples, FigureId};

use crate::error::CliError;
use crate::output::{csv_table, fmt_real};

/// CSV `x,u` for one figure, one row per grid point.
pub fn figure_csv(id: FigureId, prec: usize) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> =
        figure_samples(id, prec)?.iter().map(|(x, u)| vec![fmt_real(x, prec), fmt_real(u, prec)]).collect();
    csv_table(&["x", "u"], &rows)
}

/// Parameters of a figure, for `--format json`.
pub fn figure_json(id: FigureId) -> serde_json::Value {
    let p = id.params();
    let mut v = serde_json::json!({
        "figure": id.to_string(),
        "caption": p.caption,
        "q": p.q,
        "nu": p.nu,
        "offset": p.offset,
        "k": p.ks,
        "t": p.t,
        "x_range": [p.x_range.0, p.x_range.1],
        "points": p.points,
    });
    if matches!(id, FigureId::Fig4 | FigureId::Fig5 | FigureId::Fig6) {
        let n = id.to_string()[3..].parse::<usize>().expect("figN") + 3;
        v["note"] = format!("numbered by caption; the accompanying text calls this figure {n}").into();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows() {
        let csv = figure_csv(FigureId::Fig2, 64).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,u"));
        assert_eq!(lines.count(), FigureId::Fig2.params().points);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_note_only_on_multi_shock() {
        assert!(figure_json(FigureId::Fig1).get("note").is_none());
        assert!(figure_json(FigureId::Fig5)["note"].as_str().unwrap().contains('8'));
    }
}
