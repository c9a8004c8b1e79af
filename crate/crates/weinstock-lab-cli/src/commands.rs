//! Subcommand implementations.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weinstock_lab::bodies::{
    body_from_json, disk_polygon, ellipse_polygon, ellipse_support, random_polygon2,
    random_polytope3, random_support_body, PolarCurve,
};
use weinstock_lab::cropping;
use weinstock_lab::flows;
use weinstock_lab::functionals::{self, FunctionalReport, MARGIN_TOL};
use weinstock_lab::steklov;
use weinstock_lab::support2d;
use weinstock_lab::{Body, Polygon2};

use crate::output::{emit, parallel_map, Artifact};
use crate::{Cli, CliError, Command, Format, GeneratorKind};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum ReproduceTarget {
    /// πJ − LA = −4π/75 for the (nonconvex) cardioid.
    Cardioid,
    /// λ_γ of regular polygons dips below the disk value; the fitted
    /// leading coefficient is −γ/6.
    PolygonGamma,
    /// Excess signs of the two ellipse families.
    EllipseExcess,
    /// λ decreases along the inverse mean curvature flow from a
    /// negative-excess seed.
    ImcfDescent,
    /// σ₁ ≤ 2π/P over a random polygon suite.
    Weinstock,
    /// μ(B₁, β) = 1 + β for the unit disk.
    WentzellBall,
    /// W/V^{3/2} ≥ 2/√π over a random 2D suite.
    Brock,
}

pub fn run(cli: &Cli) -> Result<Vec<String>, CliError> {
    match &cli.command {
        Command::Functionals {
            body,
            generate,
            count,
            gamma,
        } => functionals_cmd(cli, body.as_deref(), *generate, *count, gamma),
        Command::VerifyMain {
            body,
            generate,
            count,
        } => verify_main_cmd(cli, body.as_deref(), *generate, *count),
        Command::FlowImcf {
            body,
            t_final,
            dt_record,
        } => flow_cmd(cli, body, *t_final, *dt_record),
        Command::Crop { body, eps } => crop_cmd(cli, body, eps),
        Command::Steklov {
            body,
            refine,
            k,
            csv,
        } => spectrum_cmd(cli, body, 0.0, *refine, *k, csv.as_deref()),
        Command::Wentzell {
            body,
            beta,
            refine,
            k,
            csv,
        } => spectrum_cmd(cli, body, *beta, *refine, *k, csv.as_deref()),
        Command::Reproduce {
            target,
            gamma,
            k_list,
            refine,
            count,
        } => reproduce_cmd(cli, *target, *gamma, k_list, *refine, *count),
    }
}

fn jobs(cli: &Cli) -> usize {
    cli.jobs
        .or_else(|| {
            std::env::var("WEINSTOCK_LAB_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

fn load_body(path: &std::path::Path) -> Result<Body, CliError> {
    let data = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    body_from_json(&data).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn generate_bodies(kind: GeneratorKind, count: usize, seed: u64) -> Vec<Body> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match kind {
            GeneratorKind::Polygon2 => {
                let n = rng.gen_range(5..=50);
                Body::Polygon2(random_polygon2(&mut rng, n))
            }
            GeneratorKind::Polytope3 => {
                let n = rng.gen_range(10..=60);
                Body::Polytope3(random_polytope3(&mut rng, n))
            }
            GeneratorKind::Support2 => {
                let strength = rng.gen_range(0.2..0.85);
                Body::Support2(random_support_body(&mut rng, 16, strength))
            }
        })
        .collect()
}

fn input_bodies(
    cli: &Cli,
    body: Option<&std::path::Path>,
    generate: Option<GeneratorKind>,
    count: Option<usize>,
) -> Result<Vec<Body>, CliError> {
    match (body, generate) {
        (Some(path), None) => Ok(vec![load_body(path)?]),
        (None, Some(kind)) => Ok(generate_bodies(kind, count.unwrap_or(1), cli.seed)),
        _ => Err(CliError::Input(
            "exactly one of --body or --generate/--count is required".into(),
        )),
    }
}

fn emit_reports(cli: &Cli, reports: &[FunctionalReport]) -> Result<(), CliError> {
    match cli.format {
        Format::Csv => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Csv {
                header: FunctionalReport::CSV_HEADER.to_string(),
                rows: reports.iter().map(|r| r.to_csv_row()).collect(),
            },
        ),
        Format::Json => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Json(serde_json::to_value(reports).expect("serializable")),
        ),
    }
}

fn functionals_cmd(
    cli: &Cli,
    body: Option<&std::path::Path>,
    generate: Option<GeneratorKind>,
    count: Option<usize>,
    gamma: &[f64],
) -> Result<Vec<String>, CliError> {
    let bodies = input_bodies(cli, body, generate, count)?;
    if !gamma.is_empty() {
        if let Some(i) = bodies.iter().position(|b| b.dim() != 2) {
            return Err(CliError::Input(format!(
                "lambda_gamma requires 2D bodies, body {i} is 3D"
            )));
        }
    }
    let seed = cli.seed;
    let reports = parallel_map(bodies.len(), jobs(cli), |i| {
        FunctionalReport::new(&bodies[i], Some(seed), gamma)
    });
    emit_reports(cli, &reports)?;
    Ok(Vec::new())
}

fn verify_main_cmd(
    cli: &Cli,
    body: Option<&std::path::Path>,
    generate: Option<GeneratorKind>,
    count: Option<usize>,
) -> Result<Vec<String>, CliError> {
    let bodies = input_bodies(cli, body, generate, count)?;
    let seed = cli.seed;
    let reports = parallel_map(bodies.len(), jobs(cli), |i| {
        FunctionalReport::new(&bodies[i].normalized(), Some(seed), &[])
    });
    let mut violations = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        if !r.main_inequality_holds {
            violations.push(format!(
                "body {i}: lambda margin {} < -{MARGIN_TOL}",
                r.main_inequality_margin
            ));
        }
    }
    emit_reports(cli, &reports)?;
    Ok(violations)
}

fn flow_cmd(
    cli: &Cli,
    path: &std::path::Path,
    t_final: f64,
    dt_record: f64,
) -> Result<Vec<String>, CliError> {
    // negated comparisons so NaN arguments land on the error path
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(t_final >= 0.0) || !(dt_record > 0.0) {
        return Err(CliError::Input(
            "flow needs t_final >= 0 and dt_record > 0".into(),
        ));
    }
    let seed_body = match load_body(path)? {
        Body::Support2(b) => b,
        other => {
            return Err(CliError::Input(format!(
                "flow-imcf needs a support2 body, got {}",
                other.kind()
            )))
        }
    };
    let state = flows::imcf_evolve(&seed_body, t_final, dt_record);
    match cli.format {
        Format::Csv => {
            let csv = state.to_csv();
            let mut lines = csv.lines();
            let header = lines.next().expect("csv header").to_string();
            emit(
                cli.seed,
                cli.out.as_deref(),
                Artifact::Csv {
                    header,
                    rows: lines.map(str::to_string).collect(),
                },
            )?;
        }
        Format::Json => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Json(serde_json::to_value(state.history()).expect("serializable")),
        )?,
    }
    Ok(Vec::new())
}

fn crop_cmd(cli: &Cli, path: &std::path::Path, eps: &[f64]) -> Result<Vec<String>, CliError> {
    let body = load_body(path)?;
    let report = cropping::lemma_reverse_check(&body, eps).map_err(map_crop_err)?;
    match cli.format {
        Format::Csv => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Csv {
                header: "eps,dV,dP,dW,dlam_actual,dlam_predicted,ratio,residual".into(),
                rows: report
                    .rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{},{},{},{},{},{}",
                            r.eps,
                            r.delta_v,
                            r.delta_p,
                            r.delta_w,
                            r.delta_lambda_actual,
                            r.delta_lambda_predicted,
                            r.ratio,
                            r.normalized_residual
                        )
                    })
                    .collect(),
            },
        )?,
        Format::Json => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Json(serde_json::to_value(&report).expect("serializable")),
        )?,
    }
    let mut violations = Vec::new();
    if !report.ratios_bounded {
        violations.push("|dV|/|dP| ratio blow-up along the eps sweep".to_string());
    }
    if !report.residual_vanishes {
        violations.push("momentum expansion residual does not vanish".to_string());
    }
    Ok(violations)
}

fn map_crop_err(e: cropping::CropError) -> CliError {
    match e {
        cropping::CropError::Degenerate(inner) => CliError::Numeric(inner.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn map_steklov_err(e: steklov::SteklovError) -> CliError {
    match e {
        steklov::SteklovError::NegativeBeta(b) => {
            CliError::Input(format!("beta must be nonnegative, got {b}"))
        }
        steklov::SteklovError::SolverFailure(m) => CliError::Numeric(m),
    }
}

fn polygon_for_fem(body: Body) -> Result<Polygon2, CliError> {
    match body {
        Body::Polygon2(p) => Ok(p),
        Body::Support2(b) => b
            .to_polygon(256)
            .map_err(|e| CliError::Numeric(format!("sampling support boundary: {e}"))),
        Body::Polytope3(_) => Err(CliError::Input(
            "eigenvalue solver supports 2D bodies only".into(),
        )),
    }
}

fn spectrum_cmd(
    cli: &Cli,
    path: &std::path::Path,
    beta: f64,
    refine: usize,
    k: usize,
    csv: Option<&std::path::Path>,
) -> Result<Vec<String>, CliError> {
    let poly = polygon_for_fem(load_body(path)?)?;
    let result = steklov::wentzell_spectrum(&poly, beta, refine, k).map_err(map_steklov_err)?;
    let mut violations = Vec::new();
    if !result.bound_holds {
        violations.push(format!(
            "sigma_1 {} exceeds the test-function bound {}",
            result.sigma_1, result.test_function_bound
        ));
    }
    if beta == 0.0 && !result.eq_perimeter_holds {
        violations.push(format!(
            "sigma_1 {} exceeds the equal-perimeter ball value {}",
            result.sigma_1, result.ball_eq_perimeter
        ));
    }
    let out = csv.or(cli.out.as_deref());
    match cli.format {
        Format::Csv => emit(
            cli.seed,
            out,
            Artifact::Csv {
                header: steklov::SpectrumResult::CSV_HEADER.to_string(),
                rows: vec![result.to_csv_row(0)],
            },
        )?,
        Format::Json => emit(
            cli.seed,
            out,
            Artifact::Json(serde_json::to_value(&result).expect("serializable")),
        )?,
    }
    Ok(violations)
}

// --- reproduce targets ------------------------------------------------------

fn reproduce_cmd(
    cli: &Cli,
    target: ReproduceTarget,
    gamma: f64,
    k_list: &[usize],
    refine: usize,
    count: usize,
) -> Result<Vec<String>, CliError> {
    match target {
        ReproduceTarget::Cardioid => cardioid(cli),
        ReproduceTarget::PolygonGamma => polygon_gamma(cli, gamma, k_list),
        ReproduceTarget::EllipseExcess => ellipse_excess(cli),
        ReproduceTarget::ImcfDescent => imcf_descent(cli),
        ReproduceTarget::Weinstock => weinstock_suite(cli, refine, count),
        ReproduceTarget::WentzellBall => wentzell_ball(cli, refine.min(3)),
        ReproduceTarget::Brock => brock_suite(cli, count),
    }
}

/// The reproduction commands emit two-column (quantity, value) tables.
fn two_column(
    cli: &Cli,
    rows: Vec<(String, f64)>,
    violations: Vec<String>,
) -> Result<Vec<String>, CliError> {
    match cli.format {
        Format::Csv => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Csv {
                header: "quantity,value".into(),
                rows: rows.iter().map(|(q, v)| format!("{q},{v}")).collect(),
            },
        )?,
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = rows
                .into_iter()
                .map(|(q, v)| (q, serde_json::json!(v)))
                .collect();
            emit(
                cli.seed,
                cli.out.as_deref(),
                Artifact::Json(serde_json::Value::Object(map)),
            )?;
        }
    }
    Ok(violations)
}

fn cardioid(cli: &Cli) -> Result<Vec<String>, CliError> {
    let triple = support2d::polar_laj(&PolarCurve::cardioid(), 1e-10)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let expected = -4.0 * std::f64::consts::PI / 75.0;
    let err = (triple.gap() - expected).abs();
    let mut violations = Vec::new();
    if err > 1e-6 {
        violations.push(format!(
            "cardioid gap {} differs from -4π/75 by {err:e}",
            triple.gap()
        ));
    }
    two_column(
        cli,
        vec![
            ("L".into(), triple.l),
            ("A".into(), triple.a),
            ("J".into(), triple.j),
            ("pi_J_minus_LA".into(), triple.gap()),
            ("expected".into(), expected),
            ("abs_error".into(), err),
        ],
        violations,
    )
}

fn polygon_gamma(cli: &Cli, gamma: f64, k_list: &[usize]) -> Result<Vec<String>, CliError> {
    if gamma < 0.0 || k_list.is_empty() {
        return Err(CliError::Input("need gamma >= 0 and a nonempty k list".into()));
    }
    let ball = functionals::lambda_gamma_ball(gamma);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut num = 0.0;
    let mut den = 0.0;
    for &k in k_list {
        if k < 3 {
            return Err(CliError::Input(format!("polygon needs k >= 3, got {k}")));
        }
        let (poly, _) = support2d::regular_polygon(k);
        let value = functionals::lambda_gamma(&Body::Polygon2(poly), gamma)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let alpha = std::f64::consts::PI / k as f64;
        let x = alpha * alpha;
        num += x * (value / ball - 1.0);
        den += x * x;
        if gamma > 0.0 && value >= ball {
            violations.push(format!(
                "lambda_gamma(P_{k}) = {value} is not below the disk value {ball}"
            ));
        }
        rows.push((format!("lambda_gamma_k{k}"), value));
    }
    let slope = num / den;
    let expected_slope = -gamma / 6.0;
    if gamma > 0.0 {
        let rel = (slope - expected_slope).abs() / expected_slope.abs();
        if rel > 0.05 {
            violations.push(format!(
                "fitted alpha² coefficient {slope} deviates from -gamma/6 = {expected_slope} by {:.1}%",
                100.0 * rel
            ));
        }
    }
    rows.push(("lambda_gamma_disk".into(), ball));
    rows.push(("fitted_alpha2_coefficient".into(), slope));
    rows.push(("expected_alpha2_coefficient".into(), expected_slope));
    two_column(cli, rows, violations)
}

fn ellipse_excess(cli: &Cli) -> Result<Vec<String>, CliError> {
    let eps = 0.3;
    let flat = Body::Polygon2(ellipse_polygon(eps, 1.0 / eps, 4096));
    let round = Body::Polygon2(ellipse_polygon(1.1, 0.9, 4096));
    let e_flat = functionals::r_max_and_excess(&flat).excess;
    let e_round = functionals::r_max_and_excess(&round).excess;
    let mut violations = Vec::new();
    if e_flat >= 0.0 {
        violations.push(format!(
            "E(ellipse {eps} x {}) = {e_flat} should be negative",
            1.0 / eps
        ));
    }
    if e_round <= 0.0 {
        violations.push(format!("E(ellipse 1.1 x 0.9) = {e_round} should be positive"));
    }
    two_column(
        cli,
        vec![
            ("excess_flat_ellipse".into(), e_flat),
            ("excess_round_ellipse".into(), e_round),
        ],
        violations,
    )
}

fn imcf_descent(cli: &Cli) -> Result<Vec<String>, CliError> {
    let seed = ellipse_support(0.4, 2.5, 64).map_err(|e| CliError::Numeric(e.to_string()))?;
    let state = flows::imcf_evolve(&seed, 1.0, 0.01);
    let first = state.history().first().expect("nonempty history");
    let last = state.history().last().expect("nonempty history");
    let phi: Vec<f64> = {
        let s = seed.sample_grid();
        (0..s.h.len()).map(|j| s.h[j] + s.d2h[j]).collect()
    };
    let d0 = flows::shape_derivative(&Body::Support2(seed.clone()), &phi)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let mut violations = Vec::new();
    if first.excess >= 0.0 {
        violations.push(format!("seed excess {} should be negative", first.excess));
    }
    if d0 >= 0.0 {
        violations.push(format!("initial dλ/dt {d0} should be negative"));
    }
    if !state.lambda_nonincreasing(1e-9) {
        violations.push("lambda increased along the flow".to_string());
    }
    two_column(
        cli,
        vec![
            ("seed_excess".into(), first.excess),
            ("initial_dlambda_dt".into(), d0),
            ("lambda_start".into(), first.lambda),
            ("lambda_end".into(), last.lambda),
            ("lambda_disk".into(), 1.0 / std::f64::consts::PI),
        ],
        violations,
    )
}

fn weinstock_suite(cli: &Cli, refine: usize, count: usize) -> Result<Vec<String>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let polys: Vec<Polygon2> = (0..count).map(|_| random_polygon2(&mut rng, 12)).collect();
    let results = parallel_map(polys.len(), jobs(cli), |i| {
        steklov::steklov_spectrum(&polys[i], refine, 2)
    });
    let mut rows = Vec::new();
    let mut spectra = Vec::new();
    let mut violations = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let s = r.map_err(map_steklov_err)?;
        if !s.eq_perimeter_holds {
            violations.push(format!(
                "body {i}: sigma_1 {} above the ball value {}",
                s.sigma_1, s.ball_eq_perimeter
            ));
        }
        rows.push(s.to_csv_row(i));
        spectra.push(s);
    }
    match cli.format {
        Format::Csv => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Csv {
                header: steklov::SpectrumResult::CSV_HEADER.to_string(),
                rows,
            },
        )?,
        Format::Json => emit(
            cli.seed,
            cli.out.as_deref(),
            Artifact::Json(serde_json::to_value(&spectra).expect("serializable")),
        )?,
    }
    Ok(violations)
}

fn wentzell_ball(cli: &Cli, refine: usize) -> Result<Vec<String>, CliError> {
    let disk = disk_polygon(1.0, 256);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for beta in [0.1, 0.5, 1.0] {
        let s = steklov::wentzell_spectrum(&disk, beta, refine, 2).map_err(map_steklov_err)?;
        let expected = 1.0 + beta;
        if (s.sigma_1 - expected).abs() > 0.01 * expected {
            violations.push(format!(
                "mu(B1, {beta}) = {} deviates from {expected} by more than 1%",
                s.sigma_1
            ));
        }
        rows.push((format!("mu_beta_{beta}"), s.sigma_1));
        rows.push((format!("expected_beta_{beta}"), expected));
    }
    two_column(cli, rows, violations)
}

fn brock_suite(cli: &Cli, count: usize) -> Result<Vec<String>, CliError> {
    let bodies = generate_bodies(GeneratorKind::Polygon2, count, cli.seed);
    let ratios = parallel_map(bodies.len(), jobs(cli), |i| {
        functionals::brock_ratio(&bodies[i].normalized())
    });
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for (i, r) in ratios.iter().enumerate() {
        if !r.holds {
            violations.push(format!(
                "body {i}: Brock ratio {} below the ball value {}",
                r.value, r.ball_value
            ));
        }
        rows.push((format!("brock_ratio_{i}"), r.value));
    }
    rows.push(("ball_value".into(), ratios[0].ball_value));
    two_column(cli, rows, violations)
}
