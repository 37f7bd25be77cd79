use std::fs;
use std::path::{Path, PathBuf};

use isogear::graph::{
    build_fig3_pair, build_gear, dual_gear, fig6_pair, gear_to_digraph, parse_digraph, parse_graph, subdivide,
    write_digraph, write_graph, Attach, Digraph, Fig3Variant, GearSpec, MetricGraph, ToothMode, Variant,
};
use isogear::markov::{
    characteristic_polynomial_exact, conjugator_report, crosscheck_quantum, markov_matrix, markov_spectrum, Mode,
    Weight,
};
use isogear::quantum::{compare_spectra, scan_spectrum, ScanParams, Spectrum, VertexConditions};
use isogear::zeta::{
    char_poly_symbolic, digraph_isomorphic, pencil, verify_t, zeta_equivalent, PencilRestriction, VerdictKind,
};
use isogear::{Category, Error};
use serde::Serialize;

use crate::{
    BuildArgs, CompareArgs, ConjugateArgs, GearArgs, IsomorphicArgs, MarkovArgs, ScanArgs, SpectrumArgs, ZetaArgs,
    ZetaConjugatorArgs,
};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.category() {
            Category::Io => 1,
            Category::Validation => 2,
            Category::Numerical => 3,
            Category::Verification => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn check(passed: bool, what: &str) -> Outcome {
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: 4,
            message: format!("{what} failed"),
        })
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, value: &impl Serialize) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(out, &text)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn gear_spec(args: &GearArgs) -> Result<GearSpec, Failure> {
    if let Some(n) = args.n {
        if n < 3 {
            return Err(invalid(format!("a gear needs n >= 3, got {n}")));
        }
        if n != args.lengths.len() {
            return Err(invalid(format!("--n {n} but {} lengths given", args.lengths.len())));
        }
    }
    let spec = if args.attach.is_empty() {
        GearSpec::new(args.lengths.clone(), Variant::Primal)?
    } else {
        let attachments = args
            .attach
            .iter()
            .map(|a| match a.as_str() {
                "tail" | "t" => Ok(Attach::Tail),
                "head" | "h" => Ok(Attach::Head),
                other => Err(invalid(format!("unknown attachment `{other}`"))),
            })
            .collect::<Result<_, _>>()?;
        GearSpec::with_attachments(args.lengths.clone(), attachments)?
    };
    Ok(if args.dual { dual_gear(&spec) } else { spec })
}

fn weight(text: &str) -> Result<Weight, Failure> {
    Ok(text.parse::<Weight>()?)
}

fn scan_setup(args: &ScanArgs) -> Result<(VertexConditions, ScanParams), Failure> {
    let cond = VertexConditions::new(weight(&args.w)?.value)?;
    let mut params = ScanParams::new(args.k_max.unwrap_or(f64::NAN));
    for item in &args.params {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| invalid(format!("expected key=value, got `{item}`")))?;
        params.set(key.trim(), value.trim())?;
    }
    if params.k_max.is_nan() {
        return Err(invalid("--k-max is required"));
    }
    params.validate()?;
    Ok((cond, params))
}

fn scan(g: &MetricGraph, cond: &VertexConditions, params: &ScanParams) -> Result<Spectrum, Failure> {
    let spectrum = scan_spectrum(g, cond, params)?;
    Ok(spectrum)
}

fn anomaly_check(spectra: &[&Spectrum]) -> Outcome {
    let anomalies: Vec<f64> = spectra.iter().flat_map(|s| s.anomalies.iter().copied()).collect();
    if anomalies.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: format!("refinement did not converge near k = {anomalies:?}"),
        })
    }
}

pub fn build(args: BuildArgs) -> Outcome {
    if let Some(variant) = &args.fig3 {
        let variant: Fig3Variant = variant.parse().map_err(|e: Error| Failure::from(e))?;
        let (left, right) = build_fig3_pair(variant, &args.gear.lengths)?;
        let prefix = args
            .out
            .as_deref()
            .ok_or_else(|| invalid("--out is required for pairs"))?;
        emit(Some(&with_suffix(prefix, "-left.graph")), &write_graph(&left))?;
        return emit(Some(&with_suffix(prefix, "-right.graph")), &write_graph(&right));
    }
    if args.fig6 {
        let (g, gt) = fig6_pair();
        let prefix = args
            .out
            .as_deref()
            .ok_or_else(|| invalid("--out is required for pairs"))?;
        emit(Some(&with_suffix(prefix, "-left.digraph")), &write_digraph(&g))?;
        return emit(Some(&with_suffix(prefix, "-right.digraph")), &write_digraph(&gt));
    }
    let spec = gear_spec(&args.gear)?;
    let text = match &args.digraph {
        Some(mode) => write_digraph(&gear_to_digraph(&spec, mode.parse::<ToothMode>()?)?),
        None => write_graph(&build_gear(&spec)),
    };
    emit(args.out.as_deref(), &text)
}

pub fn spectrum(args: SpectrumArgs) -> Outcome {
    let g = parse_graph(&read(&args.graph)?)?;
    let (cond, params) = scan_setup(&args.scan)?;
    let s = scan(&g, &cond, &params)?;
    emit(args.out.as_deref(), &s.to_csv())?;
    anomaly_check(&[&s])
}

fn load_spectrum(path: &Path, scan_args: &ScanArgs) -> Result<Spectrum, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with("k,") {
        return Ok(Spectrum::from_csv(&text)?);
    }
    let g = parse_graph(&text)?;
    let (cond, params) = scan_setup(scan_args)?;
    scan(&g, &cond, &params)
}

pub fn compare(args: CompareArgs) -> Outcome {
    let s1 = load_spectrum(&args.first, &args.scan)?;
    let s2 = load_spectrum(&args.second, &args.scan)?;
    let report = compare_spectra(&s1, &s2, args.tol)?;
    emit_json(args.out.as_deref(), &report)?;
    anomaly_check(&[&s1, &s2])?;
    check(report.matched, "spectral comparison")
}

#[derive(Serialize)]
struct MarkovReport {
    size: usize,
    w: String,
    mode: Mode,
    bipartite: bool,
    detailed_balance_defect: f64,
    spectrum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    charpoly: Option<isogear::markov::PolyCoefficients>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crosscheck: Option<isogear::markov::CrosscheckReport>,
}

pub fn markov(args: MarkovArgs) -> Outcome {
    let g = parse_graph(&read(&args.graph)?)?;
    let w = weight(&args.w)?;
    let mode: Mode = args.mode.parse()?;
    let cg = subdivide(&g)?;
    let (ms, charpoly, defect) = match mode {
        Mode::Rational => {
            let exact = markov_matrix::<isogear::markov::BigRational>(&cg, &w)?;
            let poly = characteristic_polynomial_exact(&exact)?;
            let defect = isogear::markov::Scalar::to_f64(&exact.detailed_balance_defect());
            (exact.to_f64(), Some(poly.to_lists()), defect)
        }
        Mode::Float => {
            let ms = markov_matrix::<f64>(&cg, &w)?;
            let defect = ms.detailed_balance_defect();
            (ms, None, defect)
        }
    };
    let crosscheck = match args.crosscheck_k_max {
        Some(k_max) => {
            let spectrum = scan(&g, &VertexConditions::new(w.value)?, &ScanParams::new(k_max))?;
            anomaly_check(&[&spectrum])?;
            Some(crosscheck_quantum(&ms, &spectrum, k_max, args.tol))
        }
        None => None,
    };
    let passed = crosscheck.as_ref().is_none_or(|c| c.matched);
    let report = MarkovReport {
        size: ms.size(),
        w: w.to_string(),
        mode,
        bipartite: cg.is_bipartite(),
        detailed_balance_defect: defect,
        spectrum: markov_spectrum(&ms),
        charpoly,
        crosscheck,
    };
    emit_json(args.out.as_deref(), &report)?;
    check(passed, "quantum crosscheck")
}

pub fn conjugate(args: ConjugateArgs) -> Outcome {
    let spec = gear_spec(&args.gear)?;
    let report = conjugator_report(&spec, &weight(&args.w)?, args.mode.parse()?)?;
    emit_json(args.out.as_deref(), &report)?;
    check(report.passed(), "conjugator check")
}

fn load_digraph(path: &Path) -> Result<Digraph, Failure> {
    Ok(parse_digraph(&read(path)?)?)
}

#[derive(Serialize)]
struct ZetaReport {
    #[serde(flatten)]
    verdict: isogear::zeta::Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbolic_equal: Option<bool>,
}

pub fn zeta(args: ZetaArgs) -> Outcome {
    let g1 = load_digraph(&args.first)?;
    let g2 = load_digraph(&args.second)?;
    let restriction: PencilRestriction = args.restriction.parse()?;
    if args.trials == 0 {
        return Err(invalid("--trials must be positive"));
    }
    let verdict = zeta_equivalent(&g1, &g2, args.trials, args.seed, restriction);
    let symbolic_equal = if args.symbolic {
        Some(char_poly_symbolic(&pencil(&g1), restriction)? == char_poly_symbolic(&pencil(&g2), restriction)?)
    } else {
        None
    };
    let passed = verdict.verdict == VerdictKind::EquivalentWithBound && symbolic_equal != Some(false);
    emit_json(
        args.out.as_deref(),
        &ZetaReport {
            verdict,
            symbolic_equal,
        },
    )?;
    check(passed, "zeta equivalence")
}

pub fn zeta_conjugator(args: ZetaConjugatorArgs) -> Outcome {
    let (g1, g2) = match args.graphs.as_slice() {
        [a, b] => (load_digraph(a)?, load_digraph(b)?),
        _ => fig6_pair(),
    };
    let report = verify_t(&g1, &g2)?;
    emit_json(args.out.as_deref(), &report)?;
    check(report.passed(), "intertwiner check")
}

#[derive(Serialize)]
struct IsomorphismReport {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
}

pub fn isomorphic(args: IsomorphicArgs) -> Outcome {
    let g1 = load_digraph(&args.first)?;
    let g2 = load_digraph(&args.second)?;
    let witness = digraph_isomorphic(&g1, &g2)?;
    emit_json(
        args.out.as_deref(),
        &IsomorphismReport {
            isomorphic: witness.is_some(),
            witness,
        },
    )
}
