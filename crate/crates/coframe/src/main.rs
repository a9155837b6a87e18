use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coframe::files::{parse_flag, parse_ideal_file, parse_manifold_file};
use coframe::{examples, report, CliError};
use coframe_core::{parse_form, EdsProblem, Manifold, Session};

#[derive(Parser)]
#[command(name = "coframe", version, about = "Exterior calculus on parallelizable manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in worked example.
    Example { name: ExampleName },
    /// Cartan's test for a linear differential ideal on the frame bundle.
    Eds {
        /// Dimension of the base manifold (1..=9).
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        ideal_file: PathBuf,
        /// Flag order as a comma-separated permutation of 1..=dim.
        #[arg(long)]
        flag: Option<String>,
        /// Also print the equations for V_n and the polar one-forms.
        #[arg(long)]
        verbose: bool,
    },
    /// Exterior derivative of a form on a manifold given by its d-table.
    Dform {
        #[arg(long)]
        manifold_file: PathBuf,
        form: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    NilpotentTorsion,
    Su2Spinor,
    Bilagrangian,
    Iwasawa,
    G2,
}

impl ExampleName {
    fn as_str(self) -> &'static str {
        match self {
            ExampleName::NilpotentTorsion => "nilpotent-torsion",
            ExampleName::Su2Spinor => "su2-spinor",
            ExampleName::Bilagrangian => "bilagrangian",
            ExampleName::Iwasawa => "iwasawa",
            ExampleName::G2 => "g2",
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Example { name } => examples::run(name.as_str()),
        Command::Eds { dim, ideal_file, flag, verbose } => {
            let flag = flag.as_deref().map(parse_flag).transpose().map_err(CliError::Input)?;
            let mut session = Session::new();
            let problem =
                EdsProblem::frame_bundle(&mut session, dim).map_err(|e| CliError::Input(format!("--dim: {e}")))?;
            let text = read(&ideal_file)?;
            let ideal = parse_ideal_file(&text, &problem)
                .map_err(|e| CliError::Input(format!("{}: {e}", ideal_file.display())))?;
            let result = problem.cartan_test(&ideal, flag.as_deref())?;
            Ok(report::cartan(&result, verbose))
        }
        Command::Dform { manifold_file, form } => {
            let text = read(&manifold_file)?;
            let manifold =
                parse_manifold_file(&text).map_err(|e| CliError::Input(format!("{}: {e}", manifold_file.display())))?;
            let form = parse_form(manifold.dimension(), &form)?;
            Ok(format!("{}\n", manifold.d(&form)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
