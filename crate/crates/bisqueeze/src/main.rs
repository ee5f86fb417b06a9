//! Command-line front end. Every subcommand is a thin wrapper over the
//! library; exit code 0 on success, 2 on validation errors, 3 on numerical
//! failures.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bisqueeze::fock::{evolve_vacuum, oracle_expectations, TruncatedSpace};
use bisqueeze::generation::{
    bisqueezed_state, decouple, PumpParameters, ThermalSpec,
};
use bisqueeze::homodyne::{homodyne_condition, local_invariants};
use bisqueeze::measures::{
    first_order_coherence, negativity, number_expectation, one_vs_rest_negativity,
    relative_entropy_of_coherence, tripartite_negativity, von_neumann_entropy, ModePair,
};
use bisqueeze::statefile::{read_state, write_state, Basis};
use bisqueeze::sweep::{run_sweep, SweepConfig};
use bisqueeze::symplectic::CovarianceMatrix;
use bisqueeze::{Error, Result};

#[derive(Parser)]
#[command(
    name = "bisqueeze",
    about = "Bi-squeezed three-mode Gaussian states: generation, measures, homodyne conditioning",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StateArgs {
    /// Squeezing strength of the (a,b) pump
    #[arg(long)]
    rab: f64,
    /// Squeezing strength of the (b,c) pump
    #[arg(long)]
    rbc: f64,
    /// Mode a frequency in Hz
    #[arg(long, default_value_t = 4.99e9)]
    omega_a: f64,
    /// Mode b frequency in Hz
    #[arg(long, default_value_t = 5.00e9)]
    omega_b: f64,
    /// Mode c frequency in Hz
    #[arg(long, default_value_t = 5.01e9)]
    omega_c: f64,
    /// Temperature in kelvin
    #[arg(long, default_value_t = 0.015)]
    temperature: f64,
}

impl StateArgs {
    fn build(&self) -> Result<CovarianceMatrix> {
        let spec = ThermalSpec::new(
            2.0 * std::f64::consts::PI * self.omega_a,
            2.0 * std::f64::consts::PI * self.omega_b,
            2.0 * std::f64::consts::PI * self.omega_c,
            self.temperature,
        )?;
        bisqueezed_state(PumpParameters::new(self.rab, self.rbc)?, &spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a bi-squeezed state and write it as a state file
    State {
        #[command(flatten)]
        args: StateArgs,
        /// Output basis: complex or quadrature
        #[arg(long, default_value = "complex")]
        basis: Basis,
        /// Output path ("-" for stdout)
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Print the exact factorization of the two-pump evolution
    Decouple {
        #[arg(long)]
        rab: f64,
        #[arg(long)]
        rbc: f64,
    },
    /// Report entanglement and coherence of a pair (or the full tripartition)
    Measure {
        /// Input state file
        #[arg(long)]
        input: PathBuf,
        /// ab, bc, ac, or abc
        #[arg(long)]
        pair: String,
    },
    /// Condition on a homodyne measurement of one mode and report the result
    Homodyne {
        /// Input state file (three modes)
        #[arg(long)]
        input: PathBuf,
        /// Quadrature angle in radians (0 measures q)
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Mode to measure (default: the idler, mode 1)
        #[arg(long, default_value_t = 1)]
        measured: usize,
        /// Optional path for the conditional state file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the Gaussian pipeline against the truncated Fock simulation
    OracleCheck {
        #[arg(long)]
        rab: f64,
        #[arg(long)]
        rbc: f64,
        /// Photon cutoff per mode
        #[arg(long, default_value_t = TruncatedSpace::DEFAULT_N_MAX)]
        nmax: usize,
    },
    /// Sweep r = R_ab = R_bc and write every figure of merit as CSV
    Sweep {
        /// Flat key = value config file
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path ("-" for stdout)
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        omega_a: Option<f64>,
        #[arg(long)]
        omega_b: Option<f64>,
        #[arg(long)]
        omega_c: Option<f64>,
        #[arg(long)]
        temperature: Option<f64>,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        r_steps: Option<usize>,
        /// Comma-separated column subset
        #[arg(long)]
        outputs: Option<String>,
    },
}

fn open_output(path: &str) -> Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn load_state(path: &Path) -> Result<CovarianceMatrix> {
    read_state(BufReader::new(File::open(path)?))
}

fn print_pair_report(sigma: &CovarianceMatrix, m: usize, n: usize) -> Result<()> {
    let pair = sigma.partial_trace(&[m.min(n), m.max(n)])?;
    let rep = negativity(&pair)?;
    println!("nu_tilde_minus={:.12e}", rep.nu_tilde_minus);
    println!("negativity={:.12e}", rep.negativity);
    println!("log_negativity={:.12e}", rep.log_negativity);
    println!(
        "entanglement_of_formation={:.12e}",
        rep.entanglement_of_formation
    );
    println!("symmetric={}", rep.symmetric);
    let coh = first_order_coherence(sigma, m, n)?;
    println!("pair_coherence={:.12e}", coh.pair_coherence);
    println!("g1={:.12e}", coh.g1);
    println!(
        "rel_ent_coherence_bits={:.12e}",
        coh.relative_entropy_coherence
    );
    println!("purity={:.12e}", pair.purity()?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::State { args, basis, out } => {
            let sigma = args.build()?;
            let mut w = open_output(&out)?;
            write_state(&mut w, &sigma, basis)?;
        }
        Command::Decouple { rab, rbc } => {
            let d = decouple(PumpParameters::new(rab, rbc)?);
            println!("r_ab={:.12e}", d.r_ab);
            println!("r_bc={:.12e}", d.r_bc);
            println!("theta_ac={:.12e}", d.theta_ac);
            println!("rho={:.12e}", d.rho);
            println!("phi={:.12e}", d.phi);
        }
        Command::Measure { input, pair } => {
            let sigma = load_state(&input)?;
            if pair == "abc" {
                if sigma.n_modes() != 3 {
                    return Err(Error::ModeMismatch {
                        left: sigma.n_modes(),
                        right: 3,
                    });
                }
                println!("tripartite_negativity={:.12e}", tripartite_negativity(&sigma)?);
                for (label, mode) in [("a_bc", 0), ("b_ac", 1), ("c_ab", 2)] {
                    println!(
                        "negativity_{label}={:.12e}",
                        one_vs_rest_negativity(&sigma, mode)?
                    );
                }
                for (label, mode) in [("a", 0), ("b", 1), ("c", 2)] {
                    println!(
                        "occupation_{label}={:.12e}",
                        number_expectation(&sigma, mode)?
                    );
                }
                println!("entropy_nats={:.12e}", von_neumann_entropy(&sigma)?);
                println!(
                    "rel_ent_coherence_bits={:.12e}",
                    relative_entropy_of_coherence(&sigma, 2.0)?
                );
                println!("purity={:.12e}", sigma.purity()?);
            } else {
                let pair: ModePair = pair.parse()?;
                let (m, n) = pair.indices();
                if sigma.n_modes() == 2 {
                    if pair != ModePair::Ab {
                        return Err(Error::InvalidParameter(
                            "two-mode input holds only the pair 'ab'".into(),
                        ));
                    }
                    print_pair_report(&sigma, 0, 1)?;
                } else {
                    print_pair_report(&sigma, m, n)?;
                }
            }
        }
        Command::Homodyne {
            input,
            theta,
            measured,
            out,
        } => {
            let sigma = load_state(&input)?;
            let conditional = homodyne_condition(&sigma, measured, theta)?;
            if let Some(path) = out {
                let mut w = BufWriter::new(File::create(path)?);
                write_state(&mut w, conditional.sigma(), Basis::Complex)?;
            }
            let inv = local_invariants(&conditional)?;
            println!("a_sq={:.12e}", inv.a_sq);
            println!("b_sq={:.12e}", inv.b_sq);
            println!("c_plus_c_minus={:.12e}", inv.c_plus_c_minus);
            println!("entangled={}", inv.entangled);
            print_pair_report(conditional.sigma(), 0, 1)?;
        }
        Command::OracleCheck { rab, rbc, nmax } => {
            let p = PumpParameters::new(rab, rbc)?;
            let space = TruncatedSpace::new(nmax)?;
            let state = evolve_vacuum(&p, &space)?;
            let fock = oracle_expectations(&state)?;

            let sigma = bisqueezed_state(
                p,
                &ThermalSpec::new(1.0, 1.0, 1.0, 0.0)?,
            )?;
            println!("boundary_weight={:.3e}", state.boundary_weight());
            println!("{:<16} {:>22} {:>22} {:>12}", "quantity", "gaussian", "fock", "delta");
            for (label, mode) in [("n_a", 0), ("n_b", 1), ("n_c", 2)] {
                let gauss = number_expectation(&sigma, mode)?;
                let fockv = fock.occupations[mode];
                println!(
                    "{label:<16} {gauss:>22.15e} {fockv:>22.15e} {:>12.3e}",
                    (gauss - fockv).abs()
                );
            }
            let gauss_pair = first_order_coherence(&sigma, 0, 2)?.pair_coherence;
            println!(
                "{:<16} {gauss_pair:>22.15e} {:>22.15e} {:>12.3e}",
                "adag_c",
                fock.pair_coherence_ac.re,
                (gauss_pair - fock.pair_coherence_ac.re).abs()
            );
            for (label, mode) in [("entropy_a", 0), ("entropy_b", 1), ("entropy_c", 2)] {
                let gauss = von_neumann_entropy(&sigma.partial_trace(&[mode])?)?;
                let fockv = fock.entropies[mode];
                println!(
                    "{label:<16} {gauss:>22.15e} {fockv:>22.15e} {:>12.3e}",
                    (gauss - fockv).abs()
                );
            }
        }
        Command::Sweep {
            config,
            out,
            omega_a,
            omega_b,
            omega_c,
            temperature,
            r_min,
            r_max,
            r_steps,
            outputs,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let mut text = String::new();
                    File::open(path)?.read_to_string(&mut text)?;
                    SweepConfig::parse(&text)?
                }
                None => SweepConfig::default(),
            };
            if let Some(v) = omega_a {
                cfg.omega_a_hz = v;
            }
            if let Some(v) = omega_b {
                cfg.omega_b_hz = v;
            }
            if let Some(v) = omega_c {
                cfg.omega_c_hz = v;
            }
            if let Some(v) = temperature {
                cfg.temperature_k = v;
            }
            if let Some(v) = r_min {
                cfg.r_min = v;
            }
            if let Some(v) = r_max {
                cfg.r_max = v;
            }
            if let Some(v) = r_steps {
                cfg.r_steps = v;
            }
            if let Some(v) = outputs {
                cfg.outputs = Some(v.split(',').map(|s| s.trim().to_string()).collect());
            }
            let table = run_sweep(&cfg)?;
            let mut w = open_output(&out)?;
            w.write_all(table.to_csv().as_bytes())?;
        }
    }
    Ok(())
}


fn configure_threads() {
    if let Ok(value) = std::env::var("BISQUEEZE_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

/// Die quietly when the reader of a pipe goes away instead of panicking in
/// the stdout machinery.
#[cfg(unix)]
fn restore_default_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_default_sigpipe() {}

fn main() -> ExitCode {
    restore_default_sigpipe();
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
