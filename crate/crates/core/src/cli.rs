//! Command-line surface: identity verification and CSV curve generation.
//!
//! Subcommands mirror the library layers: `verify` runs every analytic
//! identity against its independent numerical path and prints a residual
//! table; `fig2` through `fig5` emit the family-concurrence, peak-
//! concurrence, critical-temperature, and sudden-death curves as CSV; and
//! `sweep` evaluates a single scalar quantity over a loop-parameter range.
//! Output is deterministic: identical invocations produce byte-identical
//! bytes, numbers carry 17 significant digits, and CSV follows RFC 4180
//! with '.' decimals and a trailing newline.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::{
    esd_closed_form, esd_windows, evolved_concurrence, propagator, propagator_elements,
    InitialState,
};
use crate::entanglement::generalized_concurrence;
use crate::error::Error;
use crate::linalg::{func_hermitian, C64, CMatrix};
use crate::spin_model::{
    conjugated_hamiltonian, conjugated_hamiltonian_numeric, eigensystem, ModelParams,
};
use crate::thermal::{
    c_max, critical_temperature, thermal_concurrence, thermal_state, thermal_state_numeric,
    zero_t_limit,
};
use crate::tl::{
    build_state, family_generator, verify_constraints, verify_tl_relations, AmplitudeMatrix,
    FamilySpec,
};
use crate::yang_baxter::{verify_unitarity, verify_ybe, yang_baxterize};

#[derive(Parser)]
#[command(
    name = "tlent",
    version,
    about = "Loop-parameterized projector representations, braid operators, \
             and the entanglement curves they generate"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every analytic identity against its numerical oracle
    Verify(VerifyArgs),
    /// Family concurrence versus loop parameter (qubit and qutrit curves)
    Fig2(RangeArgs),
    /// Peak thermal concurrence versus loop parameter
    Fig3(RangeArgs),
    /// Critical temperature versus loop parameter
    Fig4(Fig4Args),
    /// Sudden-death concurrence over time for several loop parameters
    Fig5(Fig5Args),
    /// Evaluate one scalar quantity over a loop-parameter range
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    MaxEntangled,
    TwoDim,
    ThreeDim,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict the representation checks to one family
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    /// Family deformation parameter; replaces the built-in q grids
    #[arg(long)]
    q: Option<f64>,
    /// Generator phase carried into the braid and model checks
    #[arg(long, default_value_t = std::f64::consts::PI)]
    phi: f64,
    /// Largest residual accepted as a pass
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, default_value_t = 2.0)]
    d_min: f64,
    #[arg(long, default_value_t = 12.0)]
    d_max: f64,
    /// Number of grid points including both endpoints
    #[arg(long, default_value_t = 201)]
    steps: usize,
    /// Cross-check tolerance between state-computed and closed-form values
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV
    #[arg(long, requires = "out")]
    gnuplot: bool,
}

#[derive(Args)]
struct Fig4Args {
    #[command(flatten)]
    range: RangeArgs,
    /// Exchange coupling J
    #[arg(long = "J", default_value_t = 1.0)]
    j: f64,
    /// Ising coupling g
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Mean field B
    #[arg(long = "B", default_value_t = 0.0)]
    b: f64,
}

#[derive(Args)]
struct Fig5Args {
    /// Comma-separated loop parameters for the time slices
    #[arg(long, default_value = "2.1,4,5,8")]
    d_list: String,
    /// End of the scanned time interval
    #[arg(long, default_value_t = 4.0 * std::f64::consts::PI)]
    t_max: f64,
    /// Time samples per loop parameter
    #[arg(long, default_value_t = 513)]
    steps: usize,
    /// Output CSV path; the death/revival summary lands next to it with an
    /// `_windows` suffix. Stdout (both tables) when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV
    #[arg(long, requires = "out")]
    gnuplot: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepOp {
    /// Peak thermal concurrence 4*sqrt(d^2-4)/d^2
    CMax,
    /// Temperature where the thermal concurrence vanishes
    CriticalTemperature,
    /// Zero-temperature concurrence limit
    ZeroTLimit,
    /// Qubit family concurrence 2/d from the built state
    ConcurrenceN2,
    /// Qutrit family concurrence sqrt(3/d) from the built state
    ConcurrenceN3,
    /// Thermal concurrence at a fixed temperature
    ThermalConcurrence,
    /// Concurrence of the evolved Werner-like state at a fixed time
    EvolvedConcurrence,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    op: SweepOp,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long = "B", default_value_t = 0.0)]
    b: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    j: f64,
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    #[arg(long, default_value_t = std::f64::consts::PI)]
    phi: f64,
    /// Temperature for the thermal-concurrence sweep
    #[arg(long, default_value_t = 1.0)]
    temperature: f64,
    /// Mixing weight of the evolved initial state
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Angle of the evolved initial state
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    alpha: f64,
    /// Evaluation time for the evolved-concurrence sweep
    #[arg(long, default_value_t = std::f64::consts::PI)]
    time: f64,
}

/// Parses arguments, dispatches, and maps failures onto the exit-code
/// contract: 0 success, 1 validation or identity failure, 2 numerical
/// breakdown.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Fig2(args) => cmd_fig2(&args),
        Command::Fig3(args) => cmd_fig3(&args),
        Command::Fig4(args) => cmd_fig4(&args),
        Command::Fig5(args) => cmd_fig5(&args),
        Command::Sweep(args) => cmd_sweep(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Numeric(_) | Error::NoConvergence(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

/// 17-significant-digit representation, round-trip safe for f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    let span = max - min;
    (0..steps)
        .map(|i| min + span * i as f64 / (steps - 1) as f64)
        .collect()
}

fn check_range(min: f64, max: f64, steps: usize, lower: f64) -> Result<(), Error> {
    if !(min >= lower) {
        return Err(Error::InvalidSpec(format!(
            "range start {min} is below the domain bound {lower}"
        )));
    }
    if !(max >= min) {
        return Err(Error::InvalidSpec(format!(
            "range end {max} is below its start {min}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidSpec(format!(
            "a range needs at least 2 steps, got {steps}"
        )));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidSpec(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Error::InvalidSpec(format!("cannot write to stdout: {e}")))
        }
    }
}

fn sibling_path(out: &Path, suffix: &str, extension: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".into());
    out.with_file_name(format!("{stem}{suffix}.{extension}"))
}

fn write_gnuplot(out: &Path, script: &str) -> Result<(), Error> {
    let path = out.with_extension("gp");
    fs::write(&path, script)
        .map_err(|e| Error::InvalidSpec(format!("cannot write {}: {e}", path.display())))
}

/// The q ≤ 1 qubit deformation matching a loop parameter d ≥ 2.
fn qubit_q(d: f64) -> f64 {
    (d - (d * d - 4.0).sqrt()) / 2.0
}

/// The q ≤ 1 qutrit deformation matching a loop parameter d ≥ 3.
fn qutrit_q(d: f64) -> f64 {
    let half = d - 1.0;
    (half - (half * half - 4.0).sqrt()) / 2.0
}

// ---------------------------------------------------------------------
// verify

struct CheckRow {
    label: &'static str,
    residual: f64,
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let mut rows: Vec<CheckRow> = Vec::new();
    rows.extend(family_checks(args)?);
    rows.extend(braid_checks(args)?);
    rows.extend(model_checks(args)?);

    let mut all_pass = true;
    println!("{:<58} {:>13}  status", "identity", "max residual");
    for row in &rows {
        let pass = row.residual <= args.tolerance;
        all_pass &= pass;
        println!(
            "{:<58} {:>13.3e}  {}",
            row.label,
            row.residual,
            if pass { "pass" } else { "FAIL" }
        );
    }
    println!(
        "{} checks, tolerance {:.1e}: {}",
        rows.len(),
        args.tolerance,
        if all_pass { "all passed" } else { "FAILURES" }
    );
    Ok(if all_pass { 0 } else { 1 })
}

fn selected_families(args: &VerifyArgs) -> Vec<FamilySpec> {
    let keep = |kind: FamilyKind| args.family.is_none() || args.family == Some(kind);
    let mut specs = Vec::new();
    if keep(FamilyKind::MaxEntangled) {
        for n in 2..=4 {
            let phases: Vec<f64> = (0..n).map(|k| 0.37 * k as f64).collect();
            specs.push(FamilySpec::MaxEntangled { n, phases });
        }
    }
    let qubit_qs = args.q.map(|q| vec![q]).unwrap_or(vec![0.2, 0.5, 1.0, 2.0, 5.0]);
    if keep(FamilyKind::TwoDim) {
        for &q in &qubit_qs {
            specs.push(FamilySpec::two_dim_with_phase(q, args.phi));
        }
    }
    let qutrit_qs = args.q.map(|q| vec![q]).unwrap_or(vec![0.5, 1.0, 2.0]);
    if keep(FamilyKind::ThreeDim) {
        for branch in 1u8..=3 {
            for &q in &qutrit_qs {
                specs.push(FamilySpec::three_dim(branch, q));
            }
        }
    }
    specs
}

fn family_checks(args: &VerifyArgs) -> Result<Vec<CheckRow>, Error> {
    let mut projector: f64 = 0.0;
    let mut braid_left: f64 = 0.0;
    let mut braid_right: f64 = 0.0;
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    let mut law_max: f64 = 0.0;
    let mut law_qubit: f64 = 0.0;
    let mut law_qutrit: f64 = 0.0;

    for spec in selected_families(args) {
        spec.validate()?;
        let gen = family_generator(&spec)?;
        let relations = verify_tl_relations(&gen);
        projector = projector.max(relations.projector_residual);
        braid_left = braid_left.max(relations.braid_left_residual);
        braid_right = braid_right.max(relations.braid_right_residual);

        let amp = AmplitudeMatrix::from_family(&spec)?;
        let constraints = verify_constraints(&amp, spec.loop_parameter());
        first = first.max(constraints.first_residual);
        second = second.max(constraints.second_residual);

        let state = build_state(&spec)?;
        let n = spec.site_dim();
        let d = spec.loop_parameter();
        let c = generalized_concurrence(&state, n)?.value;
        match spec {
            FamilySpec::MaxEntangled { .. } => law_max = law_max.max((c - 1.0).abs()),
            FamilySpec::TwoDim { .. } => law_qubit = law_qubit.max((c - 2.0 / d).abs()),
            FamilySpec::ThreeDim { .. } => {
                law_qutrit = law_qutrit.max((c - (3.0 / d).sqrt()).abs())
            }
        }
    }

    let mut rows = vec![
        CheckRow {
            label: "generator relation U^2 = d U on three sites",
            residual: projector,
        },
        CheckRow {
            label: "braid relation U1 U2 U1 = U1",
            residual: braid_left,
        },
        CheckRow {
            label: "braid relation U2 U1 U2 = U2",
            residual: braid_right,
        },
        CheckRow {
            label: "amplitude constraint sums, first condition",
            residual: first,
        },
        CheckRow {
            label: "amplitude constraint sums, second condition",
            residual: second,
        },
    ];
    if args.family.is_none() || args.family == Some(FamilyKind::MaxEntangled) {
        rows.push(CheckRow {
            label: "diagonal family concurrence C = 1",
            residual: law_max,
        });
    }
    if args.family.is_none() || args.family == Some(FamilyKind::TwoDim) {
        rows.push(CheckRow {
            label: "qubit family concurrence C = 2/d",
            residual: law_qubit,
        });
    }
    if args.family.is_none() || args.family == Some(FamilyKind::ThreeDim) {
        rows.push(CheckRow {
            label: "qutrit family concurrence C = sqrt(3/d)",
            residual: law_qutrit,
        });
    }
    Ok(rows)
}

fn braid_checks(args: &VerifyArgs) -> Result<Vec<CheckRow>, Error> {
    let q = args.q.unwrap_or(2.0);
    let gen = family_generator(&FamilySpec::two_dim_with_phase(q, args.phi))?;
    let thetas = [0.3, 0.9, 1.5, 2.1, 2.7];

    let mut inverse_defect: f64 = 0.0;
    let mut ybe: f64 = 0.0;
    for &tx in &thetas {
        let braid = yang_baxterize(&gen, C64::from_polar(1.0, tx))?;
        let unit = (&(braid.matrix() * braid.inverse()) - &CMatrix::identity(4))
            .frobenius_norm();
        inverse_defect = inverse_defect.max(unit);
        for &ty in &thetas {
            let res = verify_ybe(&gen, C64::from_polar(1.0, tx), C64::from_polar(1.0, ty))?;
            ybe = ybe.max(res);
        }
    }
    let unitarity = verify_unitarity(&gen, &thetas)?;

    let half_turn = yang_baxterize(&gen, C64::new(0.0, 1.0))?;
    let square = half_turn.matrix() * half_turn.matrix();
    let involution = (&square + &CMatrix::identity(4)).frobenius_norm();

    Ok(vec![
        CheckRow {
            label: "braid inverse closed form, R(x) R(x)^-1 = 1",
            residual: inverse_defect,
        },
        CheckRow {
            label: "Yang-Baxter equation on the unit circle",
            residual: ybe,
        },
        CheckRow {
            label: "braid unitarity, adjoint equals inverse",
            residual: unitarity.max_dagger_vs_inverse,
        },
        CheckRow {
            label: "braid unitarity, inverse equals reflected parameter",
            residual: unitarity.max_inverse_vs_reflected,
        },
        CheckRow {
            label: "half-turn braid squares to minus identity",
            residual: involution,
        },
    ])
}

/// Deterministic parameter sample for the model cross-checks.
fn sample_params() -> Vec<ModelParams> {
    let mut out = Vec::new();
    let golden = 0.6180339887498949;
    for k in 0..12 {
        let x = (k as f64 * golden).fract();
        let y = ((k + 5) as f64 * golden).fract();
        let b = 4.0 * x;
        let j = 3.0 * (y - 0.5);
        let g = 2.0 * (x - 0.5);
        let d = 2.0 + 10.0 * y;
        let phi = std::f64::consts::TAU * x;
        out.push(ModelParams::from_field_coupling(b, j, g, d, phi).unwrap());
    }
    out
}

fn model_checks(_args: &VerifyArgs) -> Result<Vec<CheckRow>, Error> {
    let sample = sample_params();

    let mut conj: f64 = 0.0;
    let mut eigen: f64 = 0.0;
    let mut gibbs: f64 = 0.0;
    let mut c2: f64 = 0.0;
    let mut prop: f64 = 0.0;
    for p in &sample {
        let analytic = conjugated_hamiltonian(p);
        let numeric = conjugated_hamiltonian_numeric(p)?;
        conj = conj.max((analytic.matrix() - &numeric).frobenius_norm());

        let sys = eigensystem(p);
        for (energy, state) in sys.energies.iter().zip(&sys.states) {
            let hv = analytic.matrix().mul_vec(state);
            let defect: f64 = hv
                .iter()
                .zip(state)
                .map(|(a, s)| (a - s * energy).norm_sqr())
                .sum::<f64>()
                .sqrt();
            eigen = eigen.max(defect);
        }

        for t in [0.5, 1.0, 2.0] {
            let closed = thermal_state(p, t)?;
            let numeric = thermal_state_numeric(p, t)?;
            gibbs = gibbs.max((&closed.rho - &numeric.rho).frobenius_norm());
            let analytic_c = thermal_concurrence(p, t)?.value;
            c2 = c2.max((analytic_c - numeric.concurrence.value).abs());
        }

        for t in [0.4, 1.7] {
            let spectral = propagator(p, t);
            let elements = propagator_elements(p, t);
            let h = conjugated_hamiltonian(p);
            let exponential =
                func_hermitian(h.matrix(), |v| C64::from_polar(1.0, -v * t))?;
            prop = prop
                .max((&spectral - &elements).frobenius_norm())
                .max((&spectral - &exponential).frobenius_norm());
        }
    }

    let mut esd: f64 = 0.0;
    let init = InitialState::new(0.5, std::f64::consts::FRAC_PI_4)?;
    for d in [2.1, 3.0, 5.0] {
        for i in 0..16 {
            let t = 4.0 * std::f64::consts::PI * i as f64 / 15.0;
            for (b, g) in [(0.8, 0.4), (2.5, -0.9)] {
                let p =
                    ModelParams::from_field_coupling(b, 0.5, g, d, std::f64::consts::PI)?;
                let pipeline = evolved_concurrence(&p, &init, t)?.value;
                let closed = esd_closed_form(d, t)?.value;
                esd = esd.max((pipeline - closed).abs());
            }
        }
    }

    Ok(vec![
        CheckRow {
            label: "conjugated Hamiltonian, closed form vs braid conjugation",
            residual: conj,
        },
        CheckRow {
            label: "analytic eigenpairs satisfy H psi = E psi",
            residual: eigen,
        },
        CheckRow {
            label: "Gibbs state, closed form vs matrix exponential",
            residual: gibbs,
        },
        CheckRow {
            label: "thermal concurrence, closed form vs spin flip",
            residual: c2,
        },
        CheckRow {
            label: "propagator, closed form vs spectral sum",
            residual: prop,
        },
        CheckRow {
            label: "sudden-death concurrence, closed form vs pipeline",
            residual: esd,
        },
    ])
}

// ---------------------------------------------------------------------
// figures

fn cmd_fig2(args: &RangeArgs) -> Result<u8, Error> {
    check_range(args.d_min, args.d_max, args.steps, 2.0)?;
    let mut csv = String::from("d,c_n2,c_n3\n");
    for d in linspace(args.d_min, args.d_max, args.steps) {
        let qubit_state = build_state(&FamilySpec::two_dim(qubit_q(d)))?;
        let c2 = generalized_concurrence(&qubit_state, 2)?.value;
        if (c2 - 2.0 / d).abs() > args.tolerance {
            eprintln!(
                "identity failure: qubit concurrence at d = {d} drifted from 2/d by {:.3e}",
                (c2 - 2.0 / d).abs()
            );
            return Ok(1);
        }
        let c3 = if d >= 3.0 {
            let qutrit_state = build_state(&FamilySpec::three_dim(1, qutrit_q(d)))?;
            let c3 = generalized_concurrence(&qutrit_state, 3)?.value;
            if (c3 - (3.0 / d).sqrt()).abs() > args.tolerance {
                eprintln!(
                    "identity failure: qutrit concurrence at d = {d} drifted from sqrt(3/d) by {:.3e}",
                    (c3 - (3.0 / d).sqrt()).abs()
                );
                return Ok(1);
            }
            fmt(c3)
        } else {
            String::new()
        };
        csv.push_str(&format!("{},{},{c3}\n", fmt(d), fmt(c2)));
    }
    emit(&args.out, &csv)?;
    if args.gnuplot {
        let out = args.out.as_ref().unwrap();
        write_gnuplot(
            out,
            &format!(
                "set datafile separator ','\n\
                 set key autotitle columnhead\n\
                 set xlabel 'd'\n\
                 set ylabel 'C'\n\
                 plot '{0}' using 1:2 with lines, '' using 1:3 with lines\n",
                out.display()
            ),
        )?;
    }
    Ok(0)
}

fn cmd_fig3(args: &RangeArgs) -> Result<u8, Error> {
    check_range(args.d_min, args.d_max, args.steps, 2.0)?;
    let mut csv = String::from("d,c_max\n");
    for d in linspace(args.d_min, args.d_max, args.steps) {
        csv.push_str(&format!("{},{}\n", fmt(d), fmt(c_max(d)?)));
    }
    emit(&args.out, &csv)?;
    if args.gnuplot {
        let out = args.out.as_ref().unwrap();
        write_gnuplot(
            out,
            &format!(
                "set datafile separator ','\n\
                 set key autotitle columnhead\n\
                 set xlabel 'd'\n\
                 set ylabel 'C_max'\n\
                 plot '{0}' using 1:2 with lines\n",
                out.display()
            ),
        )?;
    }
    Ok(0)
}

fn cmd_fig4(args: &Fig4Args) -> Result<u8, Error> {
    check_range(args.range.d_min, args.range.d_max, args.range.steps, 2.0)?;
    let mut csv = String::from("d,t_c\n");
    for d in linspace(args.range.d_min, args.range.d_max, args.range.steps) {
        let params = ModelParams::from_field_coupling(args.b, args.j, args.g, d, 0.0)?;
        let root = critical_temperature(&params)?;
        csv.push_str(&format!("{},{}\n", fmt(d), fmt(root.tc)));
    }
    emit(&args.range.out, &csv)?;
    if args.range.gnuplot {
        let out = args.range.out.as_ref().unwrap();
        write_gnuplot(
            out,
            &format!(
                "set datafile separator ','\n\
                 set key autotitle columnhead\n\
                 set xlabel 'd'\n\
                 set ylabel 'T_c'\n\
                 plot '{0}' using 1:2 with lines\n",
                out.display()
            ),
        )?;
    }
    Ok(0)
}

fn cmd_fig5(args: &Fig5Args) -> Result<u8, Error> {
    let ds: Vec<f64> = args
        .d_list
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSpec(format!("cannot parse loop parameter '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    if ds.is_empty() {
        return Err(Error::InvalidSpec("the loop-parameter list is empty".into()));
    }
    if !(args.t_max > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "scan range must be positive, got {}",
            args.t_max
        )));
    }
    if args.steps < 2 {
        return Err(Error::InvalidSpec(format!(
            "a range needs at least 2 steps, got {}",
            args.steps
        )));
    }

    let mut csv = String::from("d,t,c\n");
    let mut windows_csv = String::from("d,t_death,t_revival\n");
    for &d in &ds {
        for t in linspace(0.0, args.t_max, args.steps) {
            let c = esd_closed_form(d, t)?.value;
            csv.push_str(&format!("{},{},{}\n", fmt(d), fmt(t), fmt(c)));
        }
        for w in esd_windows(d, args.t_max, None)? {
            windows_csv.push_str(&format!(
                "{},{},{}\n",
                fmt(d),
                fmt(w.t_death),
                fmt(w.t_revival)
            ));
        }
    }

    match &args.out {
        Some(path) => {
            emit(&args.out, &csv)?;
            let windows_path = sibling_path(path, "_windows", "csv");
            fs::write(&windows_path, &windows_csv).map_err(|e| {
                Error::InvalidSpec(format!("cannot write {}: {e}", windows_path.display()))
            })?;
        }
        None => {
            emit(&None, &csv)?;
            emit(&None, "\n")?;
            emit(&None, &windows_csv)?;
        }
    }
    if args.gnuplot {
        let out = args.out.as_ref().unwrap();
        let words: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        write_gnuplot(
            out,
            &format!(
                "set datafile separator ','\n\
                 set xlabel 't'\n\
                 set ylabel 'C'\n\
                 ds = '{1}'\n\
                 plot for [i=1:words(ds)] '{0}' \
                 using (column(1)==real(word(ds,i))?column(2):NaN):3 \
                 with lines title sprintf('d=%s', word(ds,i))\n",
                out.display(),
                words.join(" ")
            ),
        )?;
    }
    Ok(0)
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8, Error> {
    let lower = match args.op {
        SweepOp::ConcurrenceN3 => 3.0,
        _ => 2.0,
    };
    check_range(args.range.d_min, args.range.d_max, args.range.steps, lower)?;
    let mut csv = String::from("d,value\n");
    for d in linspace(args.range.d_min, args.range.d_max, args.range.steps) {
        let value = match args.op {
            SweepOp::CMax => c_max(d)?,
            SweepOp::CriticalTemperature => {
                let p = ModelParams::from_field_coupling(args.b, args.j, args.g, d, args.phi)?;
                critical_temperature(&p)?.tc
            }
            SweepOp::ZeroTLimit => {
                let p = ModelParams::from_field_coupling(args.b, args.j, args.g, d, args.phi)?;
                zero_t_limit(&p).value
            }
            SweepOp::ConcurrenceN2 => {
                let state = build_state(&FamilySpec::two_dim(qubit_q(d)))?;
                generalized_concurrence(&state, 2)?.value
            }
            SweepOp::ConcurrenceN3 => {
                let state = build_state(&FamilySpec::three_dim(1, qutrit_q(d)))?;
                generalized_concurrence(&state, 3)?.value
            }
            SweepOp::ThermalConcurrence => {
                let p = ModelParams::from_field_coupling(args.b, args.j, args.g, d, args.phi)?;
                thermal_concurrence(&p, args.temperature)?.value
            }
            SweepOp::EvolvedConcurrence => {
                let p = ModelParams::from_field_coupling(args.b, args.j, args.g, d, args.phi)?;
                let init = InitialState::new(args.gamma, args.alpha)?;
                evolved_concurrence(&p, &init, args.time)?.value
            }
        };
        csv.push_str(&format!("{},{}\n", fmt(d), fmt(value)));
    }
    emit(&args.range.out, &csv)?;
    if args.range.gnuplot {
        let out = args.range.out.as_ref().unwrap();
        write_gnuplot(
            out,
            &format!(
                "set datafile separator ','\n\
                 set key autotitle columnhead\n\
                 set xlabel 'd'\n\
                 set ylabel 'value'\n\
                 plot '{0}' using 1:2 with lines\n",
                out.display()
            ),
        )?;
    }
    Ok(0)
}
