use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vaxsim::hardness::{check_reduction, girth, special_case};
use vaxsim::harness::{run_sweep, summarize, write_csv, ExperimentConfig};
use vaxsim::hrg::{self, HrgParams};
use vaxsim::{graph, Error, Result};

#[derive(Parser)]
#[command(
    name = "vaxsim",
    version,
    about = "Vaccination strategy experiments on contact networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strategy × budget sweep; writes one CSV row per (strategy, alpha).
    Simulate(SimulateArgs),
    /// Checks the vaccination/densest-subgraph reduction on a small graph.
    Hardness {
        #[arg(long)]
        h_graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Writes a hyperbolic random graph as an edge list.
    GenHrg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2.5)]
        b: f64,
        #[arg(long = "T", default_value_t = 0.6)]
        temperature: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SimulateArgs {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, conflicts_with = "hrg")]
    graph: Option<PathBuf>,
    /// Treat the edge list as directed and symmetrize it.
    #[arg(long)]
    directed: bool,
    /// e.g. n=4039,m=88234,b=2.5,T=0.6,seed=1
    #[arg(long)]
    hrg: Option<String>,
    #[arg(long, value_delimiter = ',')]
    strategies: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    init_infected: Option<usize>,
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SimulateArgs {
    fn into_config(self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        let flags = ExperimentConfig {
            graph: self.graph,
            directed: self.directed.then_some(true),
            hrg: self.hrg,
            strategies: self.strategies,
            alphas: self.alphas,
            reps: self.reps,
            seed: self.seed,
            beta: self.beta,
            gamma: self.gamma,
            init_infected: self.init_infected,
            max_rounds: self.max_rounds,
            threads: self.threads,
            out: self.out,
        };
        Ok(file.merge(flags))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| io_error(path, e))?,
    ))
}

fn io_error(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let config = args.into_config()?;
    let dataset = config.dataset()?;
    let graph = dataset.build()?;
    log::info!("{}: n = {}, m = {}", dataset.label(), graph.n(), graph.m());
    let spec = config.to_spec(graph.n())?;
    let rows = run_sweep(&dataset.label(), &graph, &spec)?.rows();
    match &config.out {
        Some(path) => {
            let mut w = create(path)?;
            write_csv(&rows, &mut w)?;
            w.flush().map_err(|e| io_error(path, e))?;
            print!("{}", summarize(&rows));
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

fn hardness(path: &Path, k: usize) -> Result<()> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let h = graph::load_edge_list(BufReader::new(file), false)?;
    let check = check_reduction(&h, k)?;
    let g = girth(&h);
    println!(
        "n_H = {}, m_H = {}, girth = {}",
        h.n(),
        h.m(),
        g.map_or("inf".into(), |g| g.to_string())
    );
    println!("OPT_H({k}) = {}", check.opt_h);
    println!("OPT_G({k}) = {}", check.opt_g);
    println!("OPT_H + n_H + 1 = {}", check.opt_h + check.n_h + 1);
    if let Some(s) = special_case(&h, k) {
        println!("polynomial special case applies: {s}");
    }
    let in_range = g.is_some_and(|g| g <= k) && k < h.n();
    println!(
        "verdict: {}{}",
        if check.holds() {
            "equality holds"
        } else {
            "equality fails"
        },
        if in_range {
            ""
        } else {
            " (k outside girth <= k < n_H)"
        }
    );
    Ok(())
}

fn gen_hrg(params: HrgParams, out: Option<&Path>) -> Result<()> {
    let g = hrg::generate(&params)?;
    log::info!(
        "generated n = {}, m = {} (target {})",
        g.n(),
        g.m(),
        params.target_m
    );
    match out {
        Some(path) => {
            let mut w = create(path)?;
            g.write_edge_list(&mut w, false)
                .map_err(|e| io_error(path, e))?;
            w.flush().map_err(|e| io_error(path, e))
        }
        None => g
            .write_edge_list(io::stdout().lock(), false)
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Hardness { h_graph, k } => hardness(&h_graph, k),
        Command::GenHrg {
            n,
            m,
            seed,
            b,
            temperature,
            out,
        } => {
            let mut params = HrgParams::new(n, m, seed);
            params.exponent_b = b;
            params.temperature = temperature;
            gen_hrg(params, out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
