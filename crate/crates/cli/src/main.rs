//! Command-line surface for the separability-probability laboratory:
//! Monte Carlo estimation, exact/quadrature probabilities, chi tables,
//! volume tables and quasirandom diagnostics.

mod args;
mod report;

use args::Args;
use report::{estimate_report_json, RegistryComparison, RunConfig};
use seplab_analytic::chi::{chi_closed, chi_double_sum, chi_general};
use seplab_analytic::exact::sep_prob_exact;
use seplab_analytic::lovas::master_chi;
use seplab_analytic::quadrature::{sep_prob_quadrature, ExponentRule, QuadError};
use seplab_analytic::rational::{format_ratio, rat, to_f64};
use seplab_analytic::volumes::{
    registry_json, registry_lookup, separable_volume, vol_hs_complex, vol_hs_real,
    vol_lebesgue_complex, vol_lebesgue_quaternionic, vol_lebesgue_real, FieldLabel,
    MeasureLabel,
};
use seplab_core::ensembles::{Family, Field, MeasureSpec};
use seplab_core::qrseq::{solve_phi, QrState};
use seplab_core::rng::CounterRng;
use seplab_core::runner::{default_threads, run_estimate, run_quasi_bures, RunOptions};

const EXIT_OK: i32 = 0;
const EXIT_INVALID: i32 = 2;
const EXIT_NONCONVERGENCE: i32 = 3;
const EXIT_REGISTRY: i32 = 4;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run(&argv));
}

fn run(argv: &[String]) -> i32 {
    let parsed = match Args::parse(argv) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("{USAGE}");
            return EXIT_INVALID;
        }
    };
    if parsed.switch("help") || parsed.command == "help" {
        println!("{USAGE}");
        return EXIT_OK;
    }
    let result = match parsed.command.as_str() {
        "estimate" => cmd_estimate(&parsed),
        "prob" => cmd_prob(&parsed),
        "chi" => cmd_chi(&parsed),
        "volumes" => cmd_volumes(&parsed),
        "qrtest" => cmd_qrtest(&parsed),
        other => {
            eprintln!("error: unknown command '{other}'");
            eprintln!("{USAGE}");
            return EXIT_INVALID;
        }
    };
    match result {
        Ok(code) => code,
        Err(CmdError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
        Err(CmdError::NonConvergence(msg)) => {
            eprintln!("error: {msg}");
            EXIT_NONCONVERGENCE
        }
    }
}

const USAGE: &str = "usage: seplab <command> [flags]

commands:
  estimate  --field R|C|H --dims 2x2 --measure hs|induced:K|bures|interpolated:X
            --samples 1e7 [--seed 1] [--threads N] [--x-states] [--stride 5e6]
            [--out FILE] [--format json|csv] [--assert-registry]
  prob      --d D --k K [--rule induced|sqrtx]
  chi       --d D --k K [--check] [--csv FILE]
  volumes   [--N 4] [--json]
  qrtest    --s S --points 1e5 | --bures --field R|C --points 2e7
            [--alpha0 0.5] [--both-offsets] [--threads N]";

enum CmdError {
    Invalid(String),
    NonConvergence(String),
}

fn invalid(msg: impl Into<String>) -> CmdError {
    CmdError::Invalid(msg.into())
}

fn parse_field(s: &str) -> Result<Field, CmdError> {
    match s {
        "R" | "r" => Ok(Field::Real),
        "C" | "c" => Ok(Field::Complex),
        "H" | "h" => Ok(Field::Quaternion),
        _ => Err(invalid(format!("unknown field '{s}' (expected R, C or H)"))),
    }
}

fn parse_measure(s: &str) -> Result<Family, CmdError> {
    if s == "hs" {
        return Ok(Family::HilbertSchmidt);
    }
    if s == "bures" {
        return Ok(Family::Bures);
    }
    if let Some(k) = s.strip_prefix("induced:") {
        let k: i64 = k.parse().map_err(|_| invalid(format!("bad induced order '{k}'")))?;
        return Ok(Family::Induced(k));
    }
    if let Some(x) = s.strip_prefix("interpolated:") {
        let x: f64 = x.parse().map_err(|_| invalid(format!("bad interpolation '{x}'")))?;
        return Ok(Family::Interpolated(x));
    }
    Err(invalid(format!("unknown measure '{s}'")))
}

fn field_label(f: Field) -> FieldLabel {
    match f {
        Field::Real => FieldLabel::R,
        Field::Complex => FieldLabel::C,
        Field::Quaternion => FieldLabel::H,
    }
}

fn cmd_estimate(a: &Args) -> Result<i32, CmdError> {
    let field = parse_field(&a.get_or("field", "C"))?;
    let dims = a.dims((2, 2)).map_err(|e| invalid(e.0))?;
    let measure_str = a.get_or("measure", "hs");
    let family = parse_measure(&measure_str)?;
    let samples = a.count("samples", 1_000_000).map_err(|e| invalid(e.0))?;
    let seed = a.count("seed", 1).map_err(|e| invalid(e.0))?;
    let threads = a.count("threads", default_threads() as u64).map_err(|e| invalid(e.0))? as usize;
    let stride = a.count("stride", 5_000_000).map_err(|e| invalid(e.0))?;
    let x_states = a.switch("x-states");
    let format = a.get_or("format", "json");

    let spec = MeasureSpec::new(field, dims, family);
    spec.validate().map_err(|e| invalid(e.to_string()))?;
    let opts = RunOptions { samples, seed, threads, x_states, checkpoint_stride: stride };
    let state = run_estimate(&spec, &opts).map_err(|e| invalid(e.to_string()))?;

    // compare against the registry for the measures it tabulates
    let registry = if matches!(family, Family::HilbertSchmidt) {
        let label = if x_states { MeasureLabel::XStatesHs } else { MeasureLabel::Hs };
        registry_lookup(field_label(field), (dims.0 as u32, dims.1 as u32), label).map(|r| {
            let v = r.value_f64();
            let p = state.p_hat();
            let sigma = (p.max(1e-12) * (1.0 - p).max(1e-12) / state.trials as f64).sqrt();
            RegistryComparison { value: v, z: (p - v) / sigma }
        })
    } else {
        None
    };

    let config = RunConfig {
        command: "estimate".into(),
        field: a.get_or("field", "C"),
        dims,
        measure: measure_str,
        samples,
        seed,
        threads,
        x_states,
        stride,
        alpha0: None,
    };
    let timestamp =
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap().as_secs();
    let body = match format.as_str() {
        "json" => estimate_report_json(&config, &state, registry.as_ref(), timestamp),
        // leading comment line carries the full provenance
        "csv" => format!("# {}\n{}", config.to_json(), state.trace_csv(0.95)),
        other => return Err(invalid(format!("unknown format '{other}'"))),
    };
    match a.get("out") {
        Some(path) => std::fs::write(path, body.as_bytes())
            .map_err(|e| invalid(format!("writing {path}: {e}")))?,
        None => println!("{body}"),
    }
    if a.switch("assert-registry") {
        if let Some(r) = &registry {
            if r.z.abs() > 5.0 {
                eprintln!("registry deviation: z = {:.2}", r.z);
                return Ok(EXIT_REGISTRY);
            }
        }
    }
    Ok(EXIT_OK)
}

fn quad_err(e: QuadError) -> CmdError {
    match e {
        QuadError::NonConvergence { .. } => CmdError::NonConvergence(e.to_string()),
        QuadError::InvalidExponent(_) => invalid(e.to_string()),
    }
}

fn cmd_prob(a: &Args) -> Result<i32, CmdError> {
    let d = a.u32_flag("d", 2).map_err(|e| invalid(e.0))?;
    let k = a.u32_flag("k", 0).map_err(|e| invalid(e.0))?;
    let rule = a.get_or("rule", "induced");
    if d == 0 {
        return Err(invalid("--d must be >= 1"));
    }
    let erule = match rule.as_str() {
        "induced" => ExponentRule::Induced(k),
        "sqrtx" => ExponentRule::OpMonotoneSqrt(k),
        other => return Err(invalid(format!("unknown rule '{other}'"))),
    };
    if erule.exponent(d) <= -0.999 {
        return Err(invalid(format!("rule '{rule}' diverges for d = {d}, k = {k}")));
    }
    let quad = if d % 2 == 0 {
        let chi = chi_closed(d, k).map_err(invalid)?;
        sep_prob_quadrature(move |z| chi.eval_f64(z), d, erule).map_err(quad_err)?
    } else {
        sep_prob_quadrature(|z| master_chi(d, z.sqrt()).unwrap_or(f64::NAN), d, erule)
            .map_err(quad_err)?
    };
    match erule {
        ExponentRule::Induced(_) => {
            if d % 2 == 0 {
                let exact = sep_prob_exact(d / 2, k);
                let num = to_f64(&exact);
                println!("exact      {} = {:.12}", format_ratio(&exact), num);
                println!("quadrature {quad:.12}");
                println!("difference {:.3e}", num - quad);
            } else {
                println!("exact      unsupported for odd d (non-polynomial chi)");
                println!("quadrature {quad:.12}");
            }
        }
        _ => {
            let pi2 = std::f64::consts::PI * std::f64::consts::PI;
            let closed: Option<(&str, f64)> = match (d, k) {
                (2, 0) => Some(("1 - 256/(27 pi^2)", 1.0 - 256.0 / (27.0 * pi2))),
                (2, 1) => Some(("4427 - 131072/(3 pi^2)", 4427.0 - 131072.0 / (3.0 * pi2))),
                (2, 2) => Some((
                    "-1713917/3 + 26642219008/(4725 pi^2)",
                    -1_713_917.0 / 3.0 + 26_642_219_008.0 / (4725.0 * pi2),
                )),
                (4, 1) => Some(("27637/168 - 50 pi^2/3", 27_637.0 / 168.0 - 50.0 * pi2 / 3.0)),
                _ => None,
            };
            match closed {
                Some((expr, v)) => {
                    println!("closed     {expr} = {v:.12}");
                    println!("quadrature {quad:.12}");
                    println!("difference {:.3e}", v - quad);
                }
                None => println!("quadrature {quad:.12}"),
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_chi(a: &Args) -> Result<i32, CmdError> {
    let d = a.u32_flag("d", 2).map_err(|e| invalid(e.0))?;
    let k = a.u32_flag("k", 0).map_err(|e| invalid(e.0))?;
    if d % 2 != 0 || d == 0 {
        return Err(invalid(format!("chi tables are polynomial only for even d, got {d}")));
    }
    let chi = chi_closed(d, k).map_err(invalid)?;
    let expanded = chi.expanded();
    println!("chi_{{{d},{k}}}(z) = 1 + (1-z)^{} p(z)", k + 1);
    for i in 0..=chi.p.degree() {
        println!("p z^{i}: {}", format_ratio(&chi.p.coeff(i)));
    }
    println!("expanded:");
    for i in 0..=expanded.degree() {
        println!("z^{i}: {}", format_ratio(&expanded.coeff(i)));
    }
    if a.switch("check") {
        let general = chi_general(d / 2, k);
        let coeffs_equal = general.p == chi.p;
        let mut dsum_equal = true;
        for i in 0..=20i64 {
            let z = rat(i, 20);
            if chi.eval(&z) != chi_double_sum(d, k, &z) {
                dsum_equal = false;
            }
        }
        if coeffs_equal && dsum_equal {
            println!("check: closed form, coefficient formula and double sum agree: exact");
        } else {
            println!(
                "check: PIPELINE DISAGREEMENT (coefficients: {coeffs_equal}, double sum: {dsum_equal})"
            );
            return Err(CmdError::NonConvergence("chi pipelines disagree".into()));
        }
    }
    if let Some(path) = a.get("csv") {
        let mut csv = String::from("z,chi\n");
        for i in 0..=1000 {
            let z = i as f64 / 1000.0;
            csv.push_str(&format!("{z},{}\n", chi.eval_f64(z)));
        }
        std::fs::write(path, csv.as_bytes())
            .map_err(|e| invalid(format!("writing {path}: {e}")))?;
    }
    Ok(EXIT_OK)
}

fn cmd_volumes(a: &Args) -> Result<i32, CmdError> {
    if a.switch("json") {
        println!("{}", registry_json());
        return Ok(EXIT_OK);
    }
    let ns: Vec<u32> = match a.get("N") {
        Some(s) => vec![s.parse().map_err(|_| invalid("bad --N"))?],
        None => vec![4, 6, 8, 10],
    };
    for n in ns {
        println!("# N = {n}");
        println!("lebesgue C: {}", vol_lebesgue_complex(n));
        if n % 2 == 0 {
            println!("lebesgue R: {}", vol_lebesgue_real(n / 2));
        }
        println!("lebesgue H: {}", vol_lebesgue_quaternionic(n));
        println!("hs       C: {}", vol_hs_complex(n));
        if n % 2 == 0 {
            println!("hs       R: {}", vol_hs_real(n));
        }
        for rec in seplab_analytic::volumes::registry() {
            if rec.dims.0 * rec.dims.1 == n && rec.measure == MeasureLabel::Hs {
                let sep = separable_volume(&rec);
                println!(
                    "separable {} {}x{} ({} = {:.9}): {}",
                    rec.field,
                    rec.dims.0,
                    rec.dims.1,
                    format_ratio(&rec.value.coeff),
                    rec.value_f64(),
                    sep
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_qrtest(a: &Args) -> Result<i32, CmdError> {
    let threads = a.count("threads", default_threads() as u64).map_err(|e| invalid(e.0))? as usize;
    if a.switch("bures") {
        let field = parse_field(&a.get_or("field", "C"))?;
        if field == Field::Quaternion {
            return Err(invalid("quasirandom Bures runs cover R and C"));
        }
        let points = a.count("points", 1_000_000).map_err(|e| invalid(e.0))?;
        let stride = a.count("stride", 5_000_000).map_err(|e| invalid(e.0))?;
        let offsets: Vec<f64> = if a.switch("both-offsets") {
            vec![0.0, 0.5]
        } else {
            vec![a.f64_flag("alpha0", 0.5).map_err(|e| invalid(e.0))?]
        };
        let mut endpoints = Vec::new();
        for alpha0 in &offsets {
            let st = run_quasi_bures(field, (2, 2), points, *alpha0, threads, stride)
                .map_err(|e| invalid(e.to_string()))?;
            let (lo, hi) = st.wilson_ci(0.95);
            println!(
                "alpha0 = {alpha0}: p_hat = {:.7} (n = {}, hits = {}, ci = [{lo:.7}, {hi:.7}])",
                st.p_hat(),
                st.trials,
                st.hits
            );
            endpoints.push(st.p_hat());
        }
        if endpoints.len() == 2 {
            println!("offset endpoint difference: {:.3e}", (endpoints[0] - endpoints[1]).abs());
        }
        return Ok(EXIT_OK);
    }
    let s = a.u32_flag("s", 2).map_err(|e| invalid(e.0))? as usize;
    if s == 0 {
        return Err(invalid("--s must be >= 1"));
    }
    let points = a.count("points", 100_000).map_err(|e| invalid(e.0))? as usize;
    let phi = solve_phi(s);
    let residual = (phi.powi(s as i32 + 1) - phi - 1.0).abs();
    println!("phi_{s} = {phi:.10} (residual {residual:.2e})");
    // star-discrepancy proxy on anchored boxes vs a pseudorandom run
    let two_d = s >= 2;
    let mut q = QrState::new(s, 0.5);
    let mut qr_pts = Vec::with_capacity(points);
    let mut buf = vec![0.0; s];
    for _ in 0..points {
        q.next_point_into(&mut buf);
        qr_pts.push((buf[0], if two_d { buf[1] } else { 0.5 }));
    }
    let mut r = CounterRng::new(12345, 0);
    let ps_pts: Vec<(f64, f64)> =
        (0..points).map(|_| (r.uniform(), if two_d { r.uniform() } else { 0.5 })).collect();
    let mut boxes = CounterRng::new(988, 0);
    let mut qr_wins = 0;
    let trials = 100;
    for _ in 0..trials {
        let (x1, y1) = (0.1 + 0.9 * boxes.uniform(), 0.1 + 0.9 * boxes.uniform());
        let count = |pts: &[(f64, f64)]| {
            pts.iter().filter(|(x, y)| *x < x1 && (!two_d || *y < y1)).count() as f64
                / points as f64
        };
        let area = if two_d { x1 * y1 } else { x1 };
        if (count(&qr_pts) - area).abs() < (count(&ps_pts) - area).abs() {
            qr_wins += 1;
        }
    }
    println!(
        "box-count discrepancy proxy: quasirandom beats pseudorandom on {qr_wins}/{trials} boxes"
    );
    Ok(EXIT_OK)
}
