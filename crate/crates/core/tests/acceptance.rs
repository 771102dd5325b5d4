//! Acceptance suite. Prints one `[PASS]`, `[FAIL]` or `[SKIP]` line per
//! criterion and exits non-zero if any criterion fails.
//!
//! Corpus files are looked up in `tests/data/` (override with `EDEN_SR25` and
//! `EDEN_GRAPH8C`). A missing corpus skips its criterion with a notice.

use eden_core::isotest::{dataset_scan_detailed, exact_isomorphic, EXACT_NODE_CAP};
use eden_core::{
    apply_permutation, apsp, baseline_matrix, calibrate_thresholds, compare_pair,
    compare_signatures, diameter_vector, eden_encode, erdos_renyi, fixture_graph, graph_signature,
    parse_graph6, pca_fit, phase_propagation, random_permutation, serialize_graph6,
    sym_eigendecomp, wl1_refine, Baseline, Centering, DMatrix, EncoderConfig, Graph, PcaOptions,
    Thresholds, VerdictKind, VerdictReason, DEFAULT_UNREACHABLE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EQUIVARIANCE_TOL: f64 = 1e-8;
const SINGULAR_VALUE_TOL: f64 = 1e-3;
const KERNEL_TOL: f64 = 1e-8;
const SR25_RANGE: (u64, u64) = (101, 105);
const GRAPH8C_SOFT_TARGET: u64 = 312;
const CALIBRATION_TRIALS: usize = 5;
const SAFETY: f64 = 10.0;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::*;

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, &x| a.max(x.abs()))
}

/// Erdős–Rényi graph with `n ∈ [lo, hi]` and `p ∈ ps`, drawn from `rng`.
fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize, ps: &[f64]) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = ps[rng.gen_range(0..ps.len())];
    erdos_renyi(n, p, rng.gen()).unwrap()
}

fn data_path(var: &str, file: &str) -> PathBuf {
    std::env::var_os(var).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/data")
            .join(file)
    })
}

fn load_corpus(var: &str, file: &str) -> Option<(PathBuf, Vec<String>, Vec<Graph>)> {
    let path = data_path(var, file);
    let text = std::fs::read_to_string(&path).ok()?;
    let lines: Vec<String> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_owned)
        .collect();
    let graphs = lines
        .iter()
        .map(|l| parse_graph6(l.as_bytes()).unwrap_or_else(|e| panic!("{}: {e}", path.display())))
        .collect();
    Some((path, lines, graphs))
}

fn a1_equivariance() -> Outcome {
    let cfg = EncoderConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    let (mut checked, mut worst) = (0, 0.0f64);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 4, 30, &[0.2, 0.5]);
        let p = random_permutation(g.node_count(), rng.gen()).unwrap();
        let h = apply_permutation(&g, &p).unwrap();
        let (eg, eh) = (
            eden_encode(&g, &cfg).unwrap(),
            eden_encode(&h, &cfg).unwrap(),
        );
        if eg.degenerate() || eh.degenerate() {
            continue;
        }
        checked += 1;
        for u in 0..g.node_count() {
            let (a, b) = (eg.row(u), eh.row(p.apply(u)));
            worst = a
                .iter()
                .zip(&b)
                .fold(worst, |w, (x, y)| w.max((x - y).abs()));
        }
    }
    check(
        checked > 0 && worst < EQUIVARIANCE_TOL,
        format!("{checked}/200 cases with simple spectrum and no sign ties, max deviation {worst:.2e} (tol {EQUIVARIANCE_TOL:.0e})"),
    )
}

fn a2_soundness() -> Outcome {
    let cfg = EncoderConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    let calib: Vec<Graph> = (0..200)
        .map(|_| random_graph(&mut rng, 4, 30, &[0.2, 0.5]))
        .collect();
    let t = calibrate_thresholds(&calib, CALIBRATION_TRIALS, rng.gen(), SAFETY, &cfg).unwrap();
    let (mut non_iso, mut exact_checked, mut exact_disagree) = (0, 0, 0);
    let mut kinds = [0usize; 3];
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 4, 30, &[0.2, 0.5]);
        let p = random_permutation(g.node_count(), rng.gen()).unwrap();
        let h = apply_permutation(&g, &p).unwrap();
        let v = compare_pair(&g, &h, &t, &cfg).unwrap();
        kinds[v.verdict as usize] += 1;
        if v.verdict == VerdictKind::NonIsomorphic {
            non_iso += 1;
        }
        if g.node_count() <= EXACT_NODE_CAP {
            exact_checked += 1;
            if !exact_isomorphic(&g, &h).unwrap() {
                exact_disagree += 1;
            }
        }
    }
    check(
        non_iso == 0 && exact_disagree == 0,
        format!(
            "tau_sv={:.1e} tau_row={:.1e}; verdicts non/possibly/inconclusive = {}/{}/{}; exact oracle confirmed {}/{} pairs with n<={EXACT_NODE_CAP}",
            t.tau_sv, t.tau_row, kinds[0], kinds[1], kinds[2], exact_checked - exact_disagree, exact_checked
        ),
    )
}

fn a3_singular_values() -> Outcome {
    let cfg = EncoderConfig::default();
    let targets: [(&str, [f64; 3]); 6] = [
        ("decalin", [4.9790, 3.5061, 2.1254]),
        ("bicyclopentyl", [6.2486, 2.0653, 1.3309]),
        ("cospectral10", [4.2360, 3.5615, 3.0]),
        ("regular4_10", [4.2360, 3.5615, 3.0]),
        ("rook4x4", [4.0, 4.0, 4.0]),
        ("shrikhande", [4.0, 4.0, 4.0]),
    ];
    let mut worst = 0.0f64;
    let mut shown = Vec::new();
    for (name, want) in targets {
        let s = graph_signature(&fixture_graph(name).unwrap(), &cfg).unwrap();
        for (x, y) in s.sorted_singular_values.iter().zip(want) {
            worst = worst.max((x - y).abs());
        }
        let sv: Vec<String> = s
            .sorted_singular_values
            .iter()
            .map(|x| format!("{x:.4}"))
            .collect();
        shown.push(format!("{name} [{}]", sv.join(", ")));
    }
    check(
        worst < SINGULAR_VALUE_TOL,
        format!(
            "centering {:?}, max deviation {worst:.1e}: {}",
            cfg.centering,
            shown.join("; ")
        ),
    )
}

fn a4_fixture_verdicts() -> Outcome {
    let cfg = EncoderConfig::default();
    let t = Thresholds::default();
    let g = |n| fixture_graph(n).unwrap();
    let mut problems = Vec::new();

    let (a, b) = (g("decalin"), g("bicyclopentyl"));
    let v = compare_pair(&a, &b, &t, &cfg).unwrap();
    if v.verdict != VerdictKind::NonIsomorphic {
        problems.push(format!("decalin/bicyclopentyl gave {}", v.verdict));
    }
    if wl1_refine(&a) != wl1_refine(&b) {
        problems.push("decalin/bicyclopentyl are not 1-WL equivalent".into());
    }

    let (a, b) = (g("cospectral10"), g("regular4_10"));
    let (sa, sb) = (
        graph_signature(&a, &cfg).unwrap(),
        graph_signature(&b, &cfg).unwrap(),
    );
    let v = compare_signatures(&sa, &sb, &t);
    if v.verdict != VerdictKind::NonIsomorphic || v.reason != VerdictReason::Rows {
        problems.push(format!(
            "cospectral10/regular4_10 gave {} ({:?})",
            v.verdict, v.reason
        ));
    }
    if eden_core::isotest::singular_value_gap(&sa, &sb) > t.tau_sv {
        problems.push("cospectral10/regular4_10 singular values differ".into());
    }

    let v = compare_pair(&g("rook4x4"), &g("shrikhande"), &t, &cfg).unwrap();
    if v.verdict != VerdictKind::Inconclusive || v.reason != VerdictReason::DegenerateSpectrum {
        problems.push(format!(
            "rook4x4/shrikhande gave {} ({:?})",
            v.verdict, v.reason
        ));
    }

    if problems.is_empty() {
        Pass("decalin/bicyclopentyl NON_ISOMORPHIC with equal 1-WL histograms; cospectral10/regular4_10 NON_ISOMORPHIC by rows with equal singular values; rook4x4/shrikhande INCONCLUSIVE (degenerate spectrum)".into())
    } else {
        Fail(problems.join("; "))
    }
}

fn scan_corpus(graphs: &[Graph], seed: u64) -> (Thresholds, eden_core::isotest::ScanOutcome) {
    let cfg = EncoderConfig::default();
    let t = calibrate_thresholds(graphs, 2, seed, SAFETY, &cfg).unwrap();
    (t, dataset_scan_detailed(graphs, &t, &cfg).unwrap())
}

fn a5_sr25() -> Outcome {
    let Some((path, _, graphs)) = load_corpus("EDEN_SR25", "sr25.g6") else {
        return Skip(format!(
            "corpus not found at {} (set EDEN_SR25)",
            data_path("EDEN_SR25", "sr25.g6").display()
        ));
    };
    let (t, out) = scan_corpus(&graphs, 0xA5);
    let r = out.report;
    check(
        (SR25_RANGE.0..=SR25_RANGE.1).contains(&r.misjudged),
        format!(
            "{}: {} graphs, {} pairs, misjudged {} (possibly {}, inconclusive {}), target [{}, {}], tau_sv={:.1e}",
            path.display(),
            r.corpus_size,
            r.pairs_total,
            r.misjudged,
            r.possibly_isomorphic,
            r.inconclusive,
            SR25_RANGE.0,
            SR25_RANGE.1,
            t.tau_sv
        ),
    )
}

fn a6_graph8c() -> Outcome {
    let Some((_, _, graphs)) = load_corpus("EDEN_GRAPH8C", "graph8c.g6") else {
        return Skip("GRAPH8C corpus not found (set EDEN_GRAPH8C)".into());
    };
    let cfg = EncoderConfig::default();
    let (t, out) = scan_corpus(&graphs, 0xA6);

    // soundness: every graph against a fresh relabelling of itself
    let mut rng = ChaCha8Rng::seed_from_u64(0xA6A6);
    let mut unsound = 0;
    for g in &graphs {
        let p = random_permutation(g.node_count(), rng.gen()).unwrap();
        let h = apply_permutation(g, &p).unwrap();
        if compare_pair(g, &h, &t, &cfg).unwrap().verdict == VerdictKind::NonIsomorphic {
            unsound += 1;
        }
    }
    // every unseparated pair must be a genuinely distinct pair of graphs
    let duplicates = out
        .candidates
        .iter()
        .filter(|c| exact_isomorphic(&graphs[c.i], &graphs[c.j]).unwrap())
        .count();

    let r = out.report;
    let hard = if r.misjudged == 0 { "met" } else { "not met" };
    check(
        unsound == 0 && duplicates == 0 && r.misjudged <= GRAPH8C_SOFT_TARGET,
        format!(
            "{} graphs, {} pairs: misjudged {} (possibly {}, inconclusive {}), soft target <= {GRAPH8C_SOFT_TARGET}, hard target 0 {hard}; \
             {unsound} self-pairs rejected; {duplicates} isomorphic duplicates among {} candidates; {} ms",
            r.corpus_size,
            r.pairs_total,
            r.misjudged,
            r.possibly_isomorphic,
            r.inconclusive,
            out.candidates.len(),
            r.wall_ms
        ),
    )
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-1.0..1.0);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

fn a7_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA7);
    let (mut recon, mut ortho, mut pca) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let a = random_symmetric(&mut rng, 10);
        let dec = sym_eigendecomp(&a).unwrap();
        let v = &dec.eigenvectors;
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(dec.eigenvalues.clone()));
        recon = recon.max((v * lambda * v.transpose() - &a).norm());
        ortho = ortho.max(max_abs(&(v.transpose() * v - DMatrix::identity(10, 10))));

        let x = DMatrix::from_fn(10, 10, |_, _| rng.gen_range(-1.0..1.0));
        for centering in [Centering::ColumnMean, Centering::None] {
            let opts = PcaOptions {
                centering,
                ..Default::default()
            };
            let fit = pca_fit(&x, 10, &opts).unwrap();
            let mut back = &fit.encoding.values * fit.axes.transpose();
            for (j, mean) in fit.means.iter().enumerate() {
                back.column_mut(j).add_scalar_mut(*mean);
            }
            pca = pca.max((back - &x).norm());
        }
    }
    check(
        recon < KERNEL_TOL && ortho < KERNEL_TOL && pca < KERNEL_TOL,
        format!("100 matrices: reconstruction {recon:.1e}, orthonormality {ortho:.1e}, PCA m=n round trip {pca:.1e} (tol {KERNEL_TOL:.0e})"),
    )
}

fn a8_ranges() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA8);
    let mut problems = Vec::new();
    let mut unreachable_seen = 0;
    for k in 0..500 {
        let g = random_graph(&mut rng, 1, 30, &[0.05, 0.1, 0.2, 0.5, 0.9]);
        let d = apsp(&g);
        let diam = diameter_vector(&d);
        let phase = phase_propagation(&d);
        let x = phase.as_matrix();
        let n = g.node_count();
        for i in 0..n {
            if x[(i, i)] != 1.0 {
                problems.push(format!("graph {k}: diagonal {i} is {}", x[(i, i)]));
            }
            let ones = (0..n).filter(|&j| x[(i, j)] >= 1.0 - 1e-12).count();
            if diam.values()[i] > 0 && ones != 1 {
                problems.push(format!("graph {k}: row {i} has {ones} entries equal to 1"));
            }
            for j in 0..n {
                let v = x[(i, j)];
                if v == DEFAULT_UNREACHABLE {
                    unreachable_seen += 1;
                } else if !(-1.0..=1.0).contains(&v) {
                    problems.push(format!("graph {k}: phase ({i},{j}) = {v}"));
                }
            }
        }
        for mode in [Baseline::S2, Baseline::S3] {
            let (m, _) = baseline_matrix(&d, mode);
            for i in 0..n {
                for j in 0..n {
                    if d.get(i, j).is_some() && !(0.0..=1.0).contains(&m[(i, j)]) {
                        problems.push(format!("graph {k}: {mode:?} ({i},{j}) = {}", m[(i, j)]));
                    }
                }
            }
        }
    }
    problems.truncate(5);
    check(
        problems.is_empty() && unreachable_seen > 0,
        if problems.is_empty() {
            format!("500 graphs within range ({unreachable_seen} unreachable entries at {DEFAULT_UNREACHABLE})")
        } else {
            problems.join("; ")
        },
    )
}

fn a9_graph6() -> Outcome {
    let mut lines_checked = 0;
    let mut problems = Vec::new();
    for (var, file) in [("EDEN_GRAPH8C", "graph8c.g6"), ("EDEN_SR25", "sr25.g6")] {
        if let Some((path, lines, graphs)) = load_corpus(var, file) {
            for (line, g) in lines.iter().zip(&graphs) {
                lines_checked += 1;
                if serialize_graph6(g) != line.trim_end().as_bytes() {
                    problems.push(format!("{}: {line} does not round-trip", path.display()));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9);
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 1, 100, &[0.1, 0.3, 0.5, 0.8]);
        let bytes = serialize_graph6(&g);
        match parse_graph6(&bytes) {
            Ok(h) if h == g && serialize_graph6(&h) == bytes => {}
            _ => problems.push(format!(
                "random graph with n={} does not round-trip",
                g.node_count()
            )),
        }
    }
    problems.truncate(5);
    check(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{lines_checked} corpus lines and 1000 random graphs (n <= 100) round-trip")
        } else {
            problems.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("A1", "equivariance", a1_equivariance),
        ("A2", "soundness", a2_soundness),
        ("A3", "reference singular values", a3_singular_values),
        ("A4", "fixture verdicts", a4_fixture_verdicts),
        ("A5", "SR25 misjudged pairs", a5_sr25),
        ("A6", "GRAPH8C scan", a6_graph8c),
        ("A7", "numerical kernel", a7_kernel),
        ("A8", "encoder ranges", a8_ranges),
        ("A9", "graph6 round trip", a9_graph6),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("[{tag}] {id} {name}: {detail} ({secs:.2}s)");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
