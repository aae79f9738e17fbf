use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mlradii::radii::{linear_grid, sweep, DEFAULT_TOL};
use mlradii::region::DEFAULT_MAX_C_DEPTH;
use mlradii::verify::{verify_radius_geometric, DEFAULT_DELTA, DEFAULT_GRID};
use mlradii::{
    eval_phi, eval_phi_derivative, in_wi, zeros_of, Error, MLParams, Normalization, ProblemSpec, RadiusSolver,
    RegionPoint, Result, SweepParam, Verified, WiStatus, WiVerdict, ZeroTarget,
};

#[derive(Parser)]
#[command(name = "mlradii", version, about = "Radii of normalized three-parameter Mittag-Leffler functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate φ(ω, β, γ, x) or one of its first two derivatives.
    Eval(EvalArgs),
    /// Positive zeros of a target factor.
    Zeros(ZerosArgs),
    /// Solve one radius problem.
    Radius(RadiusArgs),
    /// Solve a radius problem over a parameter grid.
    Sweep(SweepArgs),
    /// Decide whether (ω, β) lies in the real-zero parameter region.
    WiCheck(WiArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    omega: f64,
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<MLParams> {
        MLParams::new(self.omega, self.beta, self.gamma)
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    p: ParamArgs,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=2))]
    order: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    p: ParamArgs,
    /// lambda, psiprime, gprime, hprime or hfunction.
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 5)]
    count: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemKind {
    Ucv,
    Alphaconvex,
    Sp,
    Strong,
    Star,
    Convex,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long, value_enum)]
    problem: ProblemKind,
    /// f, g or h.
    #[arg(long)]
    norm: Normalization,
    #[command(flatten)]
    p: ParamArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    eta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    rho: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_C_DEPTH)]
    max_depth: u32,
    /// Skip the parameter-region check.
    #[arg(long)]
    assume_real_zeros: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Serialize)]
struct Settings {
    tol: f64,
    grid: usize,
    delta: f64,
    max_depth: u32,
    assume_real_zeros: bool,
}

impl ProblemArgs {
    fn problem(&self) -> ProblemSpec {
        let (eta, alpha, rho) = (self.eta, self.alpha, self.rho);
        match self.problem {
            ProblemKind::Ucv => ProblemSpec::UniformConvex { eta, rho },
            ProblemKind::Alphaconvex => ProblemSpec::AlphaConvex { alpha, rho },
            ProblemKind::Sp => ProblemSpec::ParabolicStarlike { eta, rho },
            ProblemKind::Strong => ProblemSpec::StrongStarlike { rho },
            ProblemKind::Star => ProblemSpec::Starlike { rho },
            ProblemKind::Convex => ProblemSpec::Convex { rho },
        }
    }

    fn solver(&self) -> Result<RadiusSolver> {
        Ok(RadiusSolver::new(self.p.params()?, self.norm)
            .tol(self.tol)
            .max_c_depth(self.max_depth)
            .assume_real_zeros(self.assume_real_zeros))
    }

    fn settings(&self, grid: usize, delta: f64) -> Settings {
        Settings { tol: self.tol, grid, delta, max_depth: self.max_depth, assume_real_zeros: self.assume_real_zeros }
    }
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    prob: ProblemArgs,
    /// Sample the defining condition on circles around the radius.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    prob: ProblemArgs,
    #[arg(long, value_enum)]
    vary: VaryKind,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    steps: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum VaryKind {
    Eta,
    Rho,
    Alpha,
}

impl From<VaryKind> for SweepParam {
    fn from(v: VaryKind) -> Self {
        match v {
            VaryKind::Eta => SweepParam::Eta,
            VaryKind::Rho => SweepParam::Rho,
            VaryKind::Alpha => SweepParam::Alpha,
        }
    }
}

#[derive(Args)]
struct WiArgs {
    #[arg(long, allow_hyphen_values = true)]
    omega: f64,
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_C_DEPTH)]
    max_depth: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// A command's output in all three renderings.
struct Payload {
    json: serde_json::Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    table: String,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn strings<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn to_json(v: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("payload types serialize")
}

fn table_of(pairs: &[(&str, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

fn emit(p: &Payload, format: Format) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&p.json)?),
        Format::Table => write!(out, "{}", p.table),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&p.header)?;
            for r in &p.rows {
                w.write_record(r)?;
            }
            w.flush()
        }
    }
}

fn cmd_eval(a: &EvalArgs) -> Result<Payload> {
    let params = a.p.params()?;
    let r = match a.order {
        0 => eval_phi(&params, a.x)?,
        k => eval_phi_derivative(&params, a.x, k)?,
    };
    Ok(Payload {
        json: json!({ "params": params, "x": a.x, "order": a.order, "result": r }),
        header: strings(["omega", "beta", "gamma", "x", "order", "value", "est_error", "terms_used"]),
        rows: vec![vec![
            num(params.omega()),
            num(params.beta()),
            num(params.gamma()),
            num(a.x),
            a.order.to_string(),
            num(r.value),
            num(r.est_error),
            r.terms_used.to_string(),
        ]],
        table: table_of(&[
            ("value", format!("{:.17e}", r.value)),
            ("est_error", format!("{:e}", r.est_error)),
            ("terms_used", r.terms_used.to_string()),
        ]),
    })
}

fn cmd_zeros(a: &ZerosArgs) -> Result<Payload> {
    let params = a.p.params()?;
    let target: ZeroTarget = a.target.parse()?;
    let t = zeros_of(&params, target, a.count)?;
    let table = t.zeros.iter().enumerate().map(|(i, z)| format!("{:>4}  {z:.15}\n", i + 1)).collect();
    Ok(Payload {
        json: to_json(&t),
        header: strings(["index", "zero"]),
        rows: t.zeros.iter().enumerate().map(|(i, z)| vec![(i + 1).to_string(), num(*z)]).collect(),
        table,
    })
}

fn cmd_radius(a: &RadiusArgs) -> Result<Payload> {
    let problem = a.prob.problem();
    problem.validate()?;
    if a.verify && !(a.delta > 0.0 && a.delta < 1.0 && a.grid > 0) {
        return Err(Error::InvalidParams("--delta must lie in (0, 1) and --grid must be positive".into()));
    }
    let solver = a.prob.solver()?;
    let mut res = solver.solve(&problem)?;
    let mut report = None;
    if a.verify {
        match verify_radius_geometric(&solver, &problem, res.radius, a.delta, a.grid) {
            Ok(rep) => {
                // the strong-starlike radius rests on a sufficient condition, so
                // only the inner circle is decisive for it
                let sharp = !matches!(problem, ProblemSpec::StrongStarlike { .. });
                let ok = rep.inner_pass && (rep.outer_fail || !sharp);
                res.verified = if ok { Verified::Passed } else { Verified::Failed };
                report = Some(rep);
            }
            Err(e) => eprintln!("warning: verification skipped: {e}"),
        }
    }
    let mut pairs = vec![
        ("problem", problem.to_string()),
        ("norm", res.norm.to_string()),
        ("params", format!("omega={} beta={} gamma={}", res.params.omega(), res.params.beta(), res.params.gamma())),
        ("radius", format!("{:.15}", res.radius)),
        ("bracket", format!("({}, {})", res.bracket.0, res.bracket.1)),
        ("residual", format!("{:e}", res.residual)),
        ("iterations", res.iterations.to_string()),
        ("zeros_used", res.zeros_used.to_string()),
        ("verified", format!("{:?}", res.verified).to_lowercase()),
        ("tol", format!("{:e}", a.prob.tol)),
        ("max_depth", a.prob.max_depth.to_string()),
    ];
    if let Some(r) = &report {
        pairs.extend([
            ("inner_pass", r.inner_pass.to_string()),
            ("outer_fail", r.outer_fail.to_string()),
            ("worst_margin_inner", format!("{:e}", r.worst_margin_inner)),
            ("violation_angle", r.violation_angle_outer.map_or("-".into(), |t| t.to_string())),
            ("grid", r.samples.to_string()),
            ("delta", r.delta.to_string()),
        ]);
    }
    let mut header = strings([
        "problem", "norm", "omega", "beta", "gamma", "radius", "bracket_lo", "bracket_hi", "residual", "iterations",
        "zeros_used", "verified", "tol",
    ]);
    let mut row = vec![
        problem.to_string(),
        res.norm.to_string(),
        num(res.params.omega()),
        num(res.params.beta()),
        num(res.params.gamma()),
        num(res.radius),
        num(res.bracket.0),
        num(res.bracket.1),
        num(res.residual),
        res.iterations.to_string(),
        res.zeros_used.to_string(),
        format!("{:?}", res.verified).to_lowercase(),
        num(a.prob.tol),
    ];
    if let Some(r) = &report {
        header.extend(strings(["inner_pass", "outer_fail", "worst_margin_inner", "violation_angle"]));
        row.extend([
            r.inner_pass.to_string(),
            r.outer_fail.to_string(),
            num(r.worst_margin_inner),
            r.violation_angle_outer.map_or(String::new(), num),
        ]);
    }
    Ok(Payload {
        json: json!({
            "settings": a.prob.settings(a.grid, a.delta),
            "result": res,
            "verification": report,
        }),
        header,
        rows: vec![row],
        table: table_of(&pairs),
    })
}

/// Returns the payload and whether any grid point succeeded.
fn cmd_sweep(a: &SweepArgs) -> Result<(Payload, bool)> {
    let param: SweepParam = a.vary.into();
    let values = linear_grid(a.from, a.to, a.steps)?;
    let base = a.prob.problem();
    base.with_param(param, a.from)?;
    let solver = a.prob.solver()?;
    solver.admit()?;
    let rows = sweep(&solver, &base, param, &values)?;
    let any_ok = rows.iter().any(|r| r.radius.is_some());
    let opt = |v: Option<f64>| v.map_or(String::new(), num);
    let mut table = format!("{:>12}  {:>18}  {:>11}  {:>5}  status\n", param, "radius", "residual", "zeros");
    for r in &rows {
        table += &format!(
            "{:>12.6}  {:>18}  {:>11}  {:>5}  {}\n",
            r.value,
            r.radius.map_or("-".into(), |x| format!("{x:.15}")),
            r.residual.map_or("-".into(), |x| format!("{x:.3e}")),
            r.zeros_used.map_or("-".into(), |x| x.to_string()),
            r.status
        );
    }
    let payload = Payload {
        json: json!({
            "settings": a.prob.settings(DEFAULT_GRID, DEFAULT_DELTA),
            "problem": base,
            "norm": solver.norm(),
            "params": solver.params(),
            "rows": rows,
        }),
        header: strings(["param", "value", "radius", "residual", "zeros_used", "status"]),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.param.to_string(),
                    num(r.value),
                    opt(r.radius),
                    opt(r.residual),
                    r.zeros_used.map_or(String::new(), |z| z.to_string()),
                    r.status.clone(),
                ]
            })
            .collect(),
        table,
    };
    Ok((payload, any_ok))
}

fn cmd_wi_check(a: &WiArgs) -> Result<Payload> {
    if !(a.beta > 0.0 && a.beta.is_finite()) {
        return Err(Error::InvalidParams(format!("beta must be positive and finite, got {}", a.beta)));
    }
    if !(a.omega > 0.0 && a.omega.is_finite()) {
        return Err(Error::InvalidParams(format!("omega must be positive and finite, got {}", a.omega)));
    }
    let verdict = if a.omega <= 1.0 {
        WiVerdict {
            status: WiStatus::NonMember,
            witness: None,
            reason: format!("omega = {} <= 1; the region only contains points with omega > 1", a.omega),
        }
    } else {
        in_wi(RegionPoint::from_omega(a.omega, a.beta)?, a.max_depth)
    };
    let mut table = table_of(&[
        ("status", format!("{:?}", verdict.status)),
        ("reason", verdict.reason.clone()),
        ("max_depth", a.max_depth.to_string()),
    ]);
    let mut chain = String::new();
    if let Some(w) = &verdict.witness {
        chain = format!("W_a ({}, {})", w.origin.omega(), w.origin.beta);
        for (op, p) in w.ops.iter().zip(&w.points[1..]) {
            chain += &format!(" -{op}-> ({}, {})", p.omega(), p.beta);
        }
        table += &format!("witness    {chain}  [as (omega, beta)]\n");
    }
    Ok(Payload {
        json: json!({ "omega": a.omega, "beta": a.beta, "max_depth": a.max_depth, "verdict": verdict }),
        header: strings(["omega", "beta", "status", "witness", "reason"]),
        rows: vec![vec![num(a.omega), num(a.beta), format!("{:?}", verdict.status), chain, verdict.reason.clone()]],
        table,
    })
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn finish(p: Payload, format: Format) -> ExitCode {
    match emit(&p, format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(4)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, format) = match &cli.cmd {
        Cmd::Eval(a) => (cmd_eval(a), a.format),
        Cmd::Zeros(a) => (cmd_zeros(a), a.format),
        Cmd::Radius(a) => (cmd_radius(a), a.prob.format),
        Cmd::WiCheck(a) => (cmd_wi_check(a), a.format),
        Cmd::Sweep(a) => match cmd_sweep(a) {
            Ok((p, any_ok)) => {
                let code = finish(p, a.prob.format);
                if !any_ok {
                    eprintln!("error: no grid point could be solved");
                    return ExitCode::from(4);
                }
                return code;
            }
            Err(e) => return fail(e),
        },
    };
    match outcome {
        Ok(p) => finish(p, format),
        Err(e) => fail(e),
    }
}
