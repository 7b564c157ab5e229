use std::fmt::Write as _;

use hypereig::spectral::format_module_structure;
use hypereig::{ExactCount, ZeroSpectrumReport};

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn labels(vertices: &[usize]) -> String {
    let shifted: Vec<usize> = vertices.iter().map(|v| v + 1).collect();
    join(&shifted, ",")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn optional(c: &Option<ExactCount>) -> String {
    c.as_ref()
        .map_or_else(|| "n/a (odd m)".to_string(), ExactCount::to_string)
}

pub fn report_text(r: &ZeroSpectrumReport, indent: &str) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        let _ = writeln!(out, "{indent}{s}");
    };
    line(format!("n = {}, m = {}, k = {}", r.n, r.m, r.k));
    line(format!(
        "invariant divisors mod {}: [{}]  (r_m = {}, GF(2) rank = {})",
        r.m,
        join(&r.divisors, ", "),
        r.r_m,
        r.r_bar
    ));
    line(format!(
        "first Laplacian eigenvectors: {}  (H: {}, N: {})",
        r.count_laplacian, r.count_h_laplacian, r.count_n_laplacian
    ));
    line(format!(
        "first signless Laplacian eigenvectors: {}  (H: {}, N: {})",
        r.count_signless, r.count_h_signless, r.count_n_signless
    ));
    line(format!(
        "eigenvector module: {}  (composition length {})",
        format_module_structure(&r.module_structure),
        r.composition_length
    ));
    line(format!("odd-colorable: {}", yes_no(r.odd_colorable)));
    line(format!("odd-bipartite: {}", yes_no(r.odd_bipartite)));
    line(format!("even bipartitions: {}", optional(&r.even_bipartitions)));
    line(format!("odd bipartitions: {}", optional(&r.odd_bipartitions)));
    out
}

pub const REPORT_CSV_HEADER: [&str; 20] = [
    "component",
    "vertices",
    "n",
    "m",
    "k",
    "r_m",
    "divisors",
    "r_bar",
    "count_L",
    "count_Q",
    "countH_L",
    "countH_Q",
    "countN_L",
    "countN_Q",
    "odd_colorable",
    "odd_bipartite",
    "module_structure",
    "composition_length",
    "even_bipartitions",
    "odd_bipartitions",
];

/// One CSV record; isolated vertices leave the report columns empty.
pub fn report_csv(component: usize, vertices: &[usize], r: Option<&ZeroSpectrumReport>) -> Vec<String> {
    let mut row = vec![component.to_string(), labels(vertices).replace(',', " ")];
    let Some(r) = r else {
        row.resize(REPORT_CSV_HEADER.len(), String::new());
        return row;
    };
    let opt = |c: &Option<ExactCount>| c.as_ref().map_or_else(String::new, ExactCount::to_string);
    row.extend([
        r.n.to_string(),
        r.m.to_string(),
        r.k.to_string(),
        r.r_m.to_string(),
        join(&r.divisors, " "),
        r.r_bar.to_string(),
        r.count_laplacian.to_string(),
        r.count_signless.to_string(),
        r.count_h_laplacian.to_string(),
        r.count_h_signless.to_string(),
        r.count_n_laplacian.to_string(),
        r.count_n_signless.to_string(),
        r.odd_colorable.to_string(),
        r.odd_bipartite.to_string(),
        format_module_structure(&r.module_structure),
        r.composition_length.to_string(),
        opt(&r.even_bipartitions),
        opt(&r.odd_bipartitions),
    ]);
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypereig::{gen_cored_star, zero_spectrum_report};

    #[test]
    fn labels_are_one_based() {
        assert_eq!(labels(&[0, 4, 9]), "1,5,10");
        assert_eq!(labels(&[]), "");
    }

    #[test]
    fn csv_rows_match_header() {
        let r = zero_spectrum_report(&gen_cored_star(2, 4).unwrap()).unwrap();
        let row = report_csv(1, &[0, 1, 2, 3, 4, 5, 6], Some(&r));
        assert_eq!(row.len(), REPORT_CSV_HEADER.len());
        assert_eq!(row[8], "256");
        assert_eq!(row[16], "Z4 ⊕ Z4 ⊕ Z4 ⊕ Z4");
        let isolated = report_csv(3, &[7], None);
        assert_eq!(isolated.len(), REPORT_CSV_HEADER.len());
        assert!(isolated[2..].iter().all(String::is_empty));
    }

    #[test]
    fn odd_uniformity_has_no_bipartitions() {
        let h = hypereig::Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let text = report_text(&zero_spectrum_report(&h).unwrap(), "  ");
        assert!(text.contains("  even bipartitions: n/a (odd m)"));
        assert!(text.lines().all(|l| l.starts_with("  ")));
    }
}
