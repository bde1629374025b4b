//! `shapeapprox`: command-line front end for the experiment runner.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shapeapprox_core::{experiments, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "shapeapprox",
    version,
    about = "Shape-preserving polynomial approximation experiments"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output file; `.json` writes JSON, anything else CSV plus a `.json` sidecar.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// JSON experiment config; explicit flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a generating polynomial.
    GenPoly {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Apply an operator to a function on a uniform grid.
    Apply {
        /// bernstein:N, genuine:N, durrmeyer:N, lupas:N:A, gavrea:N:R or mn:Q:N.
        #[arg(long)]
        op: Option<String>,
        #[arg(long = "f")]
        function: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Ditzian-Totik moduli over a list of t.
    Moduli {
        #[arg(long = "f")]
        function: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long = "t-grid", value_delimiter = ',')]
        t_grid: Vec<f64>,
    },
    /// k-monotonicity check.
    Shape {
        #[arg(long = "f")]
        function: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Best q-monotone errors against omega_2^phi(f, 1/n).
    Jackson {
        #[arg(long = "f")]
        function: Option<String>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long = "n-list", value_delimiter = ',')]
        n_list: Vec<usize>,
    },
    /// Bernstein polynomials of x^eps.
    BernXeps {
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long = "n-list", value_delimiter = ',')]
        n_list: Vec<usize>,
    },
    /// Pointwise errors of M_n against the corollary envelope.
    MnStudy {
        #[arg(long = "f")]
        function: Option<String>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long = "n-list", value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// The ln(x + eps) family with lambda = 2.
    Lambda2 {
        #[arg(long = "eps", value_delimiter = ',')]
        eps_list: Vec<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        discretization: Option<usize>,
    },
    /// Deficiency and sign report for a family of generators.
    GenReport {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long = "n-list", value_delimiter = ',')]
        n_list: Vec<usize>,
    },
}

fn set<T>(slot: &mut Option<T>, v: Option<T>) {
    if v.is_some() {
        *slot = v;
    }
}

fn set_list<T>(slot: &mut Vec<T>, v: Vec<T>) {
    if !v.is_empty() {
        *slot = v;
    }
}

fn build_config(cli: Cli) -> Result<(ExperimentConfig, Option<PathBuf>), String> {
    let mut cfg = match &cli.common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            ExperimentConfig::from_json(&text).map_err(|e| e.to_string())?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(s) = cli.common.seed {
        cfg.seed = s;
    }
    if let Some(b) = cli.common.precision_bits {
        cfg.precision_bits = b;
    }
    let name = match cli.command {
        Command::GenPoly { n, r } => {
            set(&mut cfg.n, n);
            set(&mut cfg.r, r);
            "gen-poly"
        }
        Command::Apply { op, function, grid } => {
            set(&mut cfg.operator, op);
            set(&mut cfg.function, function);
            set(&mut cfg.x_grid, grid);
            "apply"
        }
        Command::Moduli {
            function,
            k,
            lambda,
            t_grid,
        } => {
            set(&mut cfg.function, function);
            set(&mut cfg.k, k);
            set(&mut cfg.lambda, lambda);
            set_list(&mut cfg.t_list, t_grid);
            "moduli"
        }
        Command::Shape { function, k, grid } => {
            set(&mut cfg.function, function);
            set(&mut cfg.k, k);
            set(&mut cfg.x_grid, grid);
            "shape"
        }
        Command::Jackson { function, q, n_list } => {
            set(&mut cfg.function, function);
            set(&mut cfg.q, q);
            set_list(&mut cfg.n_list, n_list);
            "jackson"
        }
        Command::BernXeps { eps, lambda, n_list } => {
            set(&mut cfg.eps, eps);
            set(&mut cfg.lambda, lambda);
            set_list(&mut cfg.n_list, n_list);
            "bern-xeps"
        }
        Command::MnStudy {
            function,
            q,
            lambda,
            n_list,
            grid,
        } => {
            set(&mut cfg.function, function);
            set(&mut cfg.q, q);
            set(&mut cfg.lambda, lambda);
            set_list(&mut cfg.n_list, n_list);
            set(&mut cfg.x_grid, grid);
            "mn-study"
        }
        Command::Lambda2 {
            eps_list,
            n,
            discretization,
        } => {
            set_list(&mut cfg.eps_list, eps_list);
            set(&mut cfg.n, n);
            set(&mut cfg.discretization, discretization);
            "lambda2"
        }
        Command::GenReport { r, n_list } => {
            set(&mut cfg.r, r);
            set_list(&mut cfg.n_list, n_list);
            "gen-report"
        }
    };
    if !cfg.subcommand.is_empty() && cfg.subcommand != name {
        return Err(format!(
            "config is for {:?}, command line asks for {name:?}",
            cfg.subcommand
        ));
    }
    cfg.subcommand = name.to_string();
    Ok((cfg, cli.common.out))
}

fn main() -> ExitCode {
    let (cfg, out) = match build_config(Cli::parse()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match experiments::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &out {
        Some(path) => {
            if let Err(e) = result.write(path) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{}", result.to_csv()),
    }
    for a in &result.assertions {
        eprintln!(
            "{}: {} ({})",
            a.name,
            if a.passed { "pass" } else { "FAIL" },
            a.detail
        );
    }
    if result.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
