use std::fs;
use std::io::{self, Write};
use std::path::Path;

use perturba::experiments::{
    run_instance, write_csv, Method, ProblemInstance, RunResult, SolverConfig,
};
use perturba::hamiltonian::{default_quartic_a2, Problem, SyntheticSpec};
use perturba::oscillator::{cached_table, TABLE_LIMIT};
use perturba::{Error, IterConfig, Result, RsptConfig};

use crate::args::{
    Cli, Command, ElementsArgs, MatrixArgs, ProblemArg, Setting, SolverArgs, Toggle,
};

/// Largest `n_max` accepted by `osc2d`.
pub const OSC2D_NMAX_LIMIT: usize = 39;
/// Default number of states reported by `quartic`.
pub const QUARTIC_DEFAULT_STATES: usize = 8;
/// Default number of states reported by `osc2d` (`n₁ + n₂ ≤ 5`).
pub const OSC2D_DEFAULT_STATES: usize = 21;

pub enum Outcome {
    AllConverged,
    Partial,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Linear(a) => {
            let transform = |beta: f64| match a.synthetic_a {
                Setting::Off => None,
                Setting::Auto => Some(SyntheticSpec::Linear { beta, a: beta }),
                Setting::Value(v) => Some(SyntheticSpec::Linear { beta, a: v }),
            };
            sweep(
                Problem::Linear1D,
                &a.beta,
                a.dim,
                a.method,
                &a.solver,
                None,
                false,
                transform,
            )
        }
        Command::Quartic(a) => {
            if a.dim > TABLE_LIMIT {
                return Err(Error::InvalidArgument(format!(
                    "quartic dimension {} exceeds {TABLE_LIMIT}",
                    a.dim
                )));
            }
            let transform = |beta: f64| match a.a2 {
                Setting::Off => None,
                Setting::Auto => Some(SyntheticSpec::Quartic {
                    beta,
                    a2: default_quartic_a2(beta),
                }),
                Setting::Value(v) => Some(SyntheticSpec::Quartic { beta, a2: v }),
            };
            sweep(
                Problem::Quartic1D,
                &a.beta,
                a.dim,
                a.method,
                &a.solver,
                Some(QUARTIC_DEFAULT_STATES),
                false,
                transform,
            )
        }
        Command::Osc2d(a) => {
            if a.nmax > OSC2D_NMAX_LIMIT {
                return Err(Error::InvalidArgument(format!(
                    "nmax {} exceeds {OSC2D_NMAX_LIMIT}",
                    a.nmax
                )));
            }
            let transform = |beta: f64| match a.synthetic {
                Toggle::Off => None,
                Toggle::On => Some(SyntheticSpec::Coupled2D {
                    beta,
                    a: beta / 2.0,
                }),
            };
            let cut = a.cut.into();
            sweep_with(
                Problem::Coupled2D,
                &a.beta,
                a.nmax,
                a.method,
                &a.solver,
                Some(OSC2D_DEFAULT_STATES),
                true,
                transform,
                |inst| inst.with_cut(cut),
            )
        }
        Command::Elements(a) => elements(&a),
        Command::Matrix(a) => matrix(&a),
    }
}

fn solver_config(s: &SolverArgs) -> SolverConfig {
    SolverConfig {
        rspt: RsptConfig {
            energy_tol: s.energy_tol,
            coeff_tol: s.coeff_tol,
            max_order: s.max_order,
        },
        iter: IterConfig {
            energy_tol: s.energy_tol,
            coeff_tol: s.coeff_tol,
            max_iter: s.max_iter,
            ..IterConfig::default()
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    problem: Problem,
    betas: &[f64],
    size: usize,
    method: Method,
    solver: &SolverArgs,
    default_states: Option<usize>,
    with_exact: bool,
    transform: impl Fn(f64) -> Option<SyntheticSpec>,
) -> Result<Outcome> {
    sweep_with(
        problem,
        betas,
        size,
        method,
        solver,
        default_states,
        with_exact,
        transform,
        |i| i,
    )
}

#[allow(clippy::too_many_arguments)]
fn sweep_with(
    problem: Problem,
    betas: &[f64],
    size: usize,
    method: Method,
    solver: &SolverArgs,
    default_states: Option<usize>,
    with_exact: bool,
    transform: impl Fn(f64) -> Option<SyntheticSpec>,
    customize: impl Fn(ProblemInstance) -> ProblemInstance,
) -> Result<Outcome> {
    let mut betas = betas.to_vec();
    betas.sort_by(f64::total_cmp);
    let config = solver_config(solver);
    let mut results: Vec<RunResult> = Vec::with_capacity(betas.len());
    for &beta in &betas {
        let mut inst = ProblemInstance::new(problem, beta, size, method).with_config(config);
        if let Some(spec) = transform(beta) {
            inst = inst.with_transform(spec);
        }
        if let Some(n) = solver.states.or(default_states) {
            inst = inst.with_states(n);
        }
        results.push(run_instance(&customize(inst))?);
    }
    emit(solver.out.as_deref(), &write_csv(&results, with_exact))?;
    Ok(if results.iter().all(RunResult::all_converged) {
        Outcome::AllConverged
    } else {
        Outcome::Partial
    })
}

fn elements(a: &ElementsArgs) -> Result<Outcome> {
    let table = cached_table(a.op, a.max_n)?;
    emit(a.out.as_deref(), &table.to_csv())?;
    Ok(Outcome::AllConverged)
}

fn matrix(a: &MatrixArgs) -> Result<Outcome> {
    let beta = a.beta;
    let (problem, spec) = match a.problem {
        ProblemArg::Linear => (
            Problem::Linear1D,
            setting(a.transform, beta).map(|v| SyntheticSpec::Linear { beta, a: v }),
        ),
        ProblemArg::Quartic => (
            Problem::Quartic1D,
            setting(a.transform, default_quartic_a2(beta))
                .map(|v| SyntheticSpec::Quartic { beta, a2: v }),
        ),
        ProblemArg::Osc2d => (
            Problem::Coupled2D,
            setting(a.transform, beta / 2.0).map(|v| SyntheticSpec::Coupled2D { beta, a: v }),
        ),
    };
    let mut inst =
        ProblemInstance::new(problem, beta, a.size, Method::Iterative).with_cut(a.cut.into());
    if let Some(spec) = spec {
        inst = inst.with_transform(spec);
    }
    let (h, _) = inst.build_matrix()?;
    emit(a.out.as_deref(), &h.to_text())?;
    Ok(Outcome::AllConverged)
}

fn setting(s: Setting, auto: f64) -> Option<f64> {
    match s {
        Setting::Off => None,
        Setting::Auto => Some(auto),
        Setting::Value(v) => Some(v),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
