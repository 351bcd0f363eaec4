//! `nucc`: build, simulate and cost non-unitary coupled-cluster state
//! preparation circuits.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{HamiltonianFormat, HamiltonianSource, Mode, RunConfig};
use error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "nucc", version, about = "Non-unitary coupled-cluster state preparation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plan the excitation blocks and export the circuit.
    Prepare(CommonArgs),
    /// Run the circuit and report energy and success probability.
    Simulate(CommonArgs),
    /// Compare gate counts with the UCCSD baseline.
    Resources(CommonArgs),
    /// Exact ground state and overlaps with the reference and prepared states.
    Spectrum(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Hamiltonian file (FCIDUMP integrals or a Pauli sum).
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Hamiltonian format; inferred from the file name when omitted.
    #[arg(long, value_enum)]
    format: Option<HamiltonianFormat>,
    /// Coupled-cluster amplitudes (JSON).
    #[arg(long)]
    amplitudes: Option<PathBuf>,
    /// Amplitudes with smaller magnitude are dropped.
    #[arg(long, default_value_t = nucc_core::builder::DEFAULT_DROP_THRESHOLD)]
    threshold: f64,
    /// Rotation-synthesis precisions, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.001])]
    epsilon: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Postselect)]
    mode: Mode,
    /// Shots in sample mode.
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for output files; nothing is written when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn resolve(self, command: &str) -> CliResult<RunConfig> {
        let hamiltonian = self.hamiltonian.map(|path| HamiltonianSource {
            format: self.format.unwrap_or_else(|| HamiltonianFormat::infer(&path)),
            path,
        });
        let config = RunConfig {
            command: command.to_string(),
            hamiltonian,
            amplitudes_path: self.amplitudes,
            drop_threshold: self.threshold,
            epsilon_list: self.epsilon,
            mode: self.mode,
            shots: self.shots,
            seed: self.seed,
            output_dir: self.out,
        };
        config.validate()?;
        Ok(config)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Prepare(args) => {
            let doc = commands::prepare(args.resolve("prepare")?)?;
            println!("blocks: {}", doc.blocks.len());
            for b in &doc.blocks {
                println!(
                    "  block {:>3}  {:<16} alpha {:>+.6e}  theta {:.6}",
                    b.block, b.term, b.alpha, b.theta
                );
            }
            println!(
                "qubits: {} system + {} ancilla = {} ({} without ancilla reuse)",
                doc.qubits.system, doc.qubits.ancillas, doc.qubits.total, doc.qubits.total_without_reuse
            );
        }
        Command::Simulate(args) => {
            let doc = commands::simulate(args.resolve("simulate")?)?;
            println!("energy: {:.10}", doc.energy);
            println!("success probability: {:.6}", doc.success_probability);
            if let Some(s) = &doc.sampled {
                println!(
                    "sampled success: {}/{} = {:.6} (sigma {:.2e})",
                    s.successes, s.shots, s.rate, s.sigma
                );
            }
            if let (Some(e0), Some(ov)) = (doc.ground_energy, doc.ground_state_overlap) {
                println!("ground energy: {e0:.10}");
                println!("ground-state overlap: {ov:.6}");
            }
            if let Some(d) = doc.delta_vs_cc_reference {
                println!("delta vs cc reference: {d:+.3e}");
            }
        }
        Command::Resources(args) => {
            let doc = commands::resources(args.resolve("resources")?)?;
            println!(
                "{:<8} {:>8} {:>4} {:>4} {:>10} {:>10} {:>10} {:>10} {:>7} {:>7}",
                "label", "epsilon", "Ns", "Nd", "CNOT(nu)", "CNOT(ucc)", "T(nu)", "T(ucc)", "rCNOT", "rT"
            );
            for r in &doc.reports {
                println!(
                    "{:<8} {:>8} {:>4} {:>4} {:>10} {:>10} {:>10} {:>10} {:>7.3} {:>7.3}",
                    r.label,
                    r.epsilon,
                    r.n_singles,
                    r.n_doubles,
                    r.cnot_nonunitary,
                    r.cnot_uccsd,
                    r.t_nonunitary,
                    r.t_uccsd,
                    r.cnot_ratio,
                    r.t_ratio
                );
            }
        }
        Command::Spectrum(args) => {
            let doc = commands::spectrum(args.resolve("spectrum")?)?;
            println!("ground energy: {:.10}", doc.ground_energy);
            println!("HF overlap: {:.6}", doc.hf_overlap);
            if let Some(ov) = doc.prepared_overlap {
                println!("prepared-state overlap: {ov:.6}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
