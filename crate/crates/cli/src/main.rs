use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use onemotive::Config;
use onemotive_cli::{run_text, CliError, Options, Verb};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerbArg {
    /// Hodge, de Rham and finite-level realizations of a motive.
    Realize,
    /// Cartier dual, symmetric avatar and level pairings.
    Dualize,
    /// Realization sequences, double duality and isomorphism tests.
    Check,
    /// The four Picard and Albanese motives of a curve configuration.
    Curve,
    /// Abel-Jacobi image of a divisor.
    Aj,
}

#[derive(Parser, Debug)]
#[command(name = "onemotive", version, about = "Computations with Deligne 1-motives")]
struct Args {
    verb: VerbArg,
    /// Input JSON file, `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Output JSON file, `-` for stdout.
    #[arg(long, default_value = "-")]
    output: String,
    /// Finite levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    levels: Vec<u64>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "denom-bound", default_value_t = 1e6)]
    denom_bound: f64,
    /// Theta series terms for sigma functions.
    #[arg(long = "sigma-n", default_value_t = 20)]
    sigma_n: usize,
    /// Significant digits of output floats.
    #[arg(long, default_value_t = 15)]
    precision: usize,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path)?;
    }
    Ok(s)
}

/// Writes through a temporary file in the target directory, so a failed run never leaves a partial file.
fn write_output(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    }
    let target = Path::new(path);
    let dir = target.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(target).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

fn main() -> ExitCode {
    // Exit status 2 is reserved for failed checks, so clap's own usage errors are remapped to 1.
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let verb = match args.verb {
        VerbArg::Realize => Verb::Realize,
        VerbArg::Dualize => Verb::Dualize,
        VerbArg::Check => Verb::Check,
        VerbArg::Curve => Verb::Curve,
        VerbArg::Aj => Verb::Aj,
    };
    if !(args.tol > 0.0) || !(args.denom_bound >= 1.0) || args.sigma_n == 0 || args.precision == 0 || args.precision > 17 {
        eprintln!("error: --tol must be positive, --denom-bound at least 1, --sigma-n positive, --precision in 1..=17");
        return ExitCode::from(1);
    }
    let opts = Options {
        levels: args.levels,
        cfg: Config { tol: args.tol, denom_bound: args.denom_bound, sigma_terms: args.sigma_n },
        precision: args.precision,
    };
    let result = read_input(&args.input).and_then(|text| run_text(verb, &text, &opts));
    match result.and_then(|(text, code)| write_output(&args.output, &text).map(|_| code)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
