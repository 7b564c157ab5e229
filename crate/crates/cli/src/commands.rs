use std::io::{Read, Write};

use hypereig::linalg::{gcd, integer_snf_promoting, invariant_divisors_mod};
use hypereig::oracle::{brute_force_count, exponent_to_vector, residual, Complex, BRUTE_FORCE_BUDGET};
use hypereig::spectral::{count_h, exponent_space};
use hypereig::{
    count_first, enumerate_bipartitions, enumerate_eigenvectors, gen_complete, gen_cored_star, gen_power,
    gen_random_connected, parse_hypergraph, zero_spectrum_report, ComplexVector64, EigenKind, ExactCount, Hypergraph,
    IntMatrix, Parity, ResidueEigenvector, TensorKind, ZeroSpectrumReport,
};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::render::{labels, report_csv, report_text, REPORT_CSV_HEADER};
use crate::{Cli, CliError, Command, EnumerateKind, Format, Generator, EXIT_BREACH, EXIT_INVALID, EXIT_OK};

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let format = cli.format;
    match &cli.command {
        Command::Analyze { input } => analyze(&load(input, stdin)?, format, out),
        Command::Enumerate { input, kind, cap } => {
            let cap = usize::try_from(*cap).unwrap_or(usize::MAX);
            enumerate(&load(input, stdin)?, *kind, cap, format, out)
        }
        Command::Snf { input, modulus } => snf(&load(input, stdin)?, *modulus, format, out),
        Command::Generate { family } => {
            let h = match family {
                Generator::Complete { n, m } => gen_complete(*n, *m)?,
                Generator::Star { t, m } => gen_cored_star(*t, *m)?,
                Generator::Power { graph, m } => gen_power(&load(graph, stdin)?, *m)?,
            };
            write_hypergraph(&h, format, out)
        }
        Command::Verify {
            input,
            alpha,
            kind,
            tol,
        } => verify(&load(input, stdin)?, alpha, (*kind).into(), *tol, format, out),
        Command::Oracle { random, max_n, m, seed } => oracle(*random, *max_n, *m, *seed, format, out),
    }
}

fn load(path: &str, stdin: &mut dyn Read) -> Result<Hypergraph> {
    let mut text = String::new();
    let read = if path == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })?;
    Ok(parse_hypergraph(&text)?)
}

/// One entry of `analyze` output for disconnected input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentReport {
    pub component: usize,
    /// 1-based labels in the input hypergraph.
    pub vertices: Vec<usize>,
    /// `None` for an isolated vertex.
    pub report: Option<ZeroSpectrumReport>,
}

fn analyze(h: &Hypergraph, format: Format, out: &mut dyn Write) -> Result<i32> {
    let components = h.connected_components();
    if components.len() == 1 {
        let report = zero_spectrum_report(h)?;
        let all: Vec<usize> = (0..h.n()).collect();
        match format {
            Format::Text => write!(out, "{}", report_text(&report, ""))?,
            Format::Json => writeln!(out, "{}", report.to_json())?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(REPORT_CSV_HEADER)?;
                w.write_record(report_csv(1, &all, Some(&report)))?;
                w.flush()?;
            }
        }
        return Ok(EXIT_OK);
    }

    let mut entries = Vec::with_capacity(components.len());
    for (i, c) in components.iter().enumerate() {
        let report = c.hypergraph.as_ref().map(zero_spectrum_report).transpose()?;
        entries.push((i + 1, &c.vertices, report));
    }
    match format {
        Format::Text => {
            writeln!(out, "{} connected components", entries.len())?;
            for (id, vertices, report) in &entries {
                match report {
                    Some(r) => {
                        writeln!(out, "component {id} (vertices {}):", labels(vertices))?;
                        write!(out, "{}", report_text(r, "  "))?;
                    }
                    None => writeln!(out, "component {id} (vertex {}): isolated, no edges", labels(vertices))?,
                }
            }
        }
        Format::Json => {
            let json: Vec<ComponentReport> = entries
                .into_iter()
                .map(|(component, vertices, report)| ComponentReport {
                    component,
                    vertices: vertices.iter().map(|v| v + 1).collect(),
                    report,
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(REPORT_CSV_HEADER)?;
            for (id, vertices, report) in &entries {
                w.write_record(report_csv(*id, vertices, report.as_ref()))?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Enumeration<'a> {
    kind: &'a str,
    modulus: u64,
    total: ExactCount,
    shown: usize,
    vectors: Vec<Vec<u64>>,
}

fn enumerate(h: &Hypergraph, kind: EnumerateKind, cap: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let (name, modulus, total, vectors, shown_text): (_, _, _, Vec<Vec<u64>>, Vec<String>) = match kind {
        EnumerateKind::Laplacian | EnumerateKind::Signless => {
            let (name, ek) = match kind {
                EnumerateKind::Laplacian => ("laplacian", EigenKind::Laplacian),
                _ => ("signless", EigenKind::Signless),
            };
            let total = count_first(h, ek)?;
            let alphas: Vec<ResidueEigenvector> = enumerate_eigenvectors(h, ek, cap)?.collect();
            let text = alphas.iter().map(ToString::to_string).collect();
            let vectors = alphas.into_iter().map(|a| a.alpha().to_vec()).collect();
            (name, h.m() as u64, total, vectors, text)
        }
        EnumerateKind::EvenBip | EnumerateKind::OddBip => {
            let (name, parity, ek) = match kind {
                EnumerateKind::EvenBip => ("even-bip", Parity::Even, EigenKind::Laplacian),
                _ => ("odd-bip", Parity::Odd, EigenKind::Signless),
            };
            let parts: Vec<_> = enumerate_bipartitions(h, parity, cap)?.collect();
            let total = count_h(h, ek)?;
            let text = parts.iter().map(ToString::to_string).collect();
            let vectors = parts
                .iter()
                .map(|p| p.sides().iter().map(|&s| u64::from(s)).collect())
                .collect();
            (name, 2, total, vectors, text)
        }
    };

    match format {
        Format::Text => {
            let what = match kind {
                EnumerateKind::Laplacian => "first Laplacian eigenvectors (exponents mod m)",
                EnumerateKind::Signless => "first signless Laplacian eigenvectors (exponents mod m)",
                EnumerateKind::EvenBip => "even bipartitions",
                EnumerateKind::OddBip => "odd bipartitions",
            };
            writeln!(out, "# {total} {what}")?;
            if total > BigUint::from(vectors.len()) {
                writeln!(out, "# showing the first {}", vectors.len())?;
            }
            for line in shown_text {
                writeln!(out, "{line}")?;
            }
        }
        Format::Json => {
            let doc = Enumeration {
                kind: name,
                modulus,
                total: total.into(),
                shown: vectors.len(),
                vectors,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record((1..=h.n()).map(|v| format!("v{v}")))?;
            for v in &vectors {
                w.write_record(v.iter().map(u64::to_string))?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

// Integers within ±2^53 as JSON numbers, larger ones as decimal strings.
fn big_json(x: &BigInt) -> Value {
    const EXACT: u64 = 1 << 53;
    match i64::try_from(x) {
        Ok(v) if v.unsigned_abs() <= EXACT => Value::from(v),
        _ => Value::from(x.to_string()),
    }
}

#[derive(Serialize)]
struct SnfOutput {
    rows: usize,
    cols: usize,
    rank: usize,
    invariant_factors: Vec<Value>,
    modulus: u64,
    divisors: Vec<u64>,
    p: Vec<Vec<Value>>,
    q: Vec<Vec<Value>>,
}

fn snf(h: &Hypergraph, modulus: Option<u64>, format: Format, out: &mut dyn Write) -> Result<i32> {
    let modulus = modulus.unwrap_or(h.m() as u64);
    let b: IntMatrix = h.incidence_matrix().to_matrix();
    let s = integer_snf_promoting(&b);
    let reduced = invariant_divisors_mod(&s, modulus)?;
    let matrix_json = |m: &hypereig::BigIntMatrix| -> Vec<Vec<Value>> {
        m.iter_rows().map(|r| r.iter().map(big_json).collect()).collect()
    };
    match format {
        Format::Text => {
            writeln!(out, "incidence matrix: {} x {}, rank {}", b.rows(), b.cols(), s.rank)?;
            let factors: Vec<String> = s.diag.iter().map(BigInt::to_string).collect();
            writeln!(out, "invariant factors: {}", factors.join(" "))?;
            let divisors: Vec<String> = reduced.divisors.iter().map(u64::to_string).collect();
            writeln!(
                out,
                "invariant divisors mod {modulus}: [{}]  (r_m = {})",
                divisors.join(", "),
                reduced.r_m()
            )?;
            for (name, m) in [("P", &s.p), ("Q", &s.q)] {
                writeln!(out, "{name} =")?;
                for row in m.iter_rows() {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                    writeln!(out, "  [{} ]", cells.join(" "))?;
                }
            }
        }
        Format::Json => {
            let doc = SnfOutput {
                rows: b.rows(),
                cols: b.cols(),
                rank: s.rank,
                invariant_factors: s.diag.iter().map(big_json).collect(),
                modulus,
                divisors: reduced.divisors.clone(),
                p: matrix_json(&s.p),
                q: matrix_json(&s.q),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["index", "factor", "gcd_with_modulus"])?;
            let m = BigInt::from(modulus);
            for (i, f) in s.diag.iter().enumerate() {
                let g = u64::try_from(&(f % &m)).map(|r| gcd(r, modulus)).unwrap_or(modulus);
                w.write_record([(i + 1).to_string(), f.to_string(), g.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn write_hypergraph(h: &Hypergraph, format: Format, out: &mut dyn Write) -> Result<i32> {
    match format {
        Format::Text => write!(out, "{h}")?,
        Format::Json => writeln!(out, "{}", h.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record((1..=h.m()).map(|i| format!("v{i}")))?;
            for e in h.edges() {
                w.write_record(e.iter().map(|v| (v + 1).to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Verification {
    kind: EigenKind,
    alpha: Vec<u64>,
    exact: bool,
    residual: f64,
    tol: f64,
    pass: bool,
}

fn verify(h: &Hypergraph, alpha: &str, kind: EigenKind, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let values: Vec<u64> = alpha
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--alpha {alpha:?} is not a comma-separated list of residues")))?;
    if values.len() != h.n() {
        return Err(hypereig::Error::DimensionMismatch {
            expected: h.n(),
            found: values.len(),
        }
        .into());
    }
    let alpha = ResidueEigenvector::new(values, h.m() as u64)?;
    let exact = alpha.satisfies(h, kind);
    let x: ComplexVector64 = exponent_to_vector(&alpha);
    let r = residual(h, TensorKind::from(kind), Complex::new(0.0, 0.0), &x)?;
    let pass = exact && r < tol;
    let doc = Verification {
        kind,
        alpha: alpha.alpha().to_vec(),
        exact,
        residual: r,
        tol,
        pass,
    };
    match format {
        Format::Text => {
            writeln!(out, "congruence: {}", if exact { "holds" } else { "fails" })?;
            writeln!(out, "residual: {r:.3e} (tol {tol:e})")?;
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["kind", "alpha", "exact", "residual", "tol", "pass"])?;
            w.write_record([
                serde_json::to_value(kind)
                    .expect("serializable")
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
                alpha.to_string(),
                exact.to_string(),
                r.to_string(),
                tol.to_string(),
                pass.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_INVALID })
}

#[derive(Serialize)]
struct OracleCase {
    instance: usize,
    kind: EigenKind,
    n: usize,
    k: usize,
    solver: ExactCount,
    exhaustive: u64,
}

#[derive(Serialize)]
struct OracleSummary {
    instances: usize,
    agree: usize,
    m: usize,
    max_n: usize,
    seed: u64,
    disagreements: Vec<OracleCase>,
}

fn oracle(count: usize, max_n: usize, m: usize, seed: u64, format: Format, out: &mut dyn Write) -> Result<i32> {
    if m < 2 {
        return Err(CliError::Usage(format!("--m must be at least 2, got {m}")));
    }
    if max_n < m {
        return Err(CliError::Usage(format!("--max-n {max_n} is below the uniformity {m}")));
    }
    let candidates = (m as u128).checked_pow((max_n - 1) as u32).unwrap_or(u128::MAX);
    if candidates > BRUTE_FORCE_BUDGET {
        return Err(hypereig::Error::BudgetExceeded {
            candidates,
            budget: BRUTE_FORCE_BUDGET,
        }
        .into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    let mut agree = 0;
    for instance in 1..=count {
        let n = rng.gen_range(m..=max_n);
        let extra = rng.gen_range(0..=4);
        let h = gen_random_connected(n, m, extra, &mut rng)?;
        let b: IntMatrix = h.incidence_matrix().to_matrix();
        let mut kinds = vec![(EigenKind::Laplacian, 0i64)];
        if m % 2 == 0 {
            kinds.push((EigenKind::Signless, (m / 2) as i64));
        }
        let mut ok = true;
        for (kind, c) in kinds {
            let solver = exponent_space(&h, kind)?.map(|s| s.cardinality()).unwrap_or_default();
            let exhaustive = brute_force_count(&b, &vec![c; h.k()], m as u64, true)?;
            let case = OracleCase {
                instance,
                kind,
                n: h.n(),
                k: h.k(),
                solver: solver.into(),
                exhaustive,
            };
            if case.solver != exhaustive {
                ok = false;
                cases.push((false, case));
            } else if format == Format::Csv {
                cases.push((true, case));
            }
        }
        agree += usize::from(ok);
    }

    let disagreements: Vec<OracleCase> = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["instance", "kind", "n", "k", "solver", "exhaustive", "agree"])?;
            for (matched, c) in &cases {
                let kind = serde_json::to_value(c.kind).expect("serializable");
                w.write_record([
                    c.instance.to_string(),
                    kind.as_str().unwrap_or_default().to_string(),
                    c.n.to_string(),
                    c.k.to_string(),
                    c.solver.to_string(),
                    c.exhaustive.to_string(),
                    matched.to_string(),
                ])?;
            }
            w.flush()?;
            cases
                .into_iter()
                .filter(|(matched, _)| !matched)
                .map(|(_, c)| c)
                .collect()
        }
        _ => cases.into_iter().map(|(_, c)| c).collect(),
    };
    match format {
        Format::Text => {
            writeln!(out, "{agree}/{count} agree")?;
            for c in &disagreements {
                writeln!(
                    out,
                    "instance {} ({:?}, n = {}, k = {}): solver {} vs exhaustive {}",
                    c.instance, c.kind, c.n, c.k, c.solver, c.exhaustive
                )?;
            }
        }
        Format::Json => {
            let doc = OracleSummary {
                instances: count,
                agree,
                m,
                max_n,
                seed,
                disagreements,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Csv => {}
    }
    Ok(if agree == count { EXIT_OK } else { EXIT_BREACH })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_switch_to_strings() {
        assert_eq!(big_json(&BigInt::from(-7)), Value::from(-7));
        assert_eq!(big_json(&BigInt::from(1u64 << 53)), Value::from(1u64 << 53));
        assert_eq!(
            big_json(&BigInt::from((1u64 << 53) + 1)),
            Value::from("9007199254740993")
        );
        assert_eq!(big_json(&-BigInt::from(u64::MAX)), Value::from("-18446744073709551615"));
    }

    #[test]
    fn stdin_is_read_for_dash() {
        let mut input = std::io::Cursor::new(b"2 2 1\n1 2\n".to_vec());
        let h = load("-", &mut input).unwrap();
        assert_eq!((h.n(), h.m(), h.k()), (2, 2, 1));
        assert!(matches!(load("/nonexistent", &mut input), Err(CliError::Read { .. })));
    }

    #[test]
    fn oracle_rejects_bad_parameters() {
        let mut sink = Vec::new();
        assert!(matches!(
            oracle(1, 3, 4, 0, Format::Text, &mut sink),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            oracle(1, 3, 1, 0, Format::Text, &mut sink),
            Err(CliError::Usage(_))
        ));
        assert_eq!(oracle(5, 5, 2, 3, Format::Csv, &mut sink).unwrap(), EXIT_OK);
        let text = String::from_utf8(sink).unwrap();
        assert!(text.starts_with("instance,kind,n,k,solver,exhaustive,agree\n"));
        assert_eq!(text.lines().count(), 11);
    }
}
