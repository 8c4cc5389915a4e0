//! `latalg`: normal forms, basis listings, dimension tables and basis caches
//! for the free Lie admissible triple algebra.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use latalg::Alphabet;
use latalg_cli::commands::{self, DimsFormat, ListFormat, NfBasis, DEFAULT_GRADE_LIMIT};
use latalg_cli::error::EXIT_INTERNAL;
use latalg_cli::listing::Which;
use latalg_cli::render::TermFormat;
use latalg_cli::CliError;

#[derive(Parser)]
#[command(name = "latalg", version, about = "Exact computations in the free Lie admissible triple algebra")]
struct Cli {
    /// Color names in order, e.g. `a,b,c`; the order fixes all basis orders.
    #[arg(long, global = true, env = "LATALG_ALPHABET", value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    #[command(subcommand)]
    command: Command,
}

/// An expression given inline, from a file, or from stdin (`-`).
#[derive(Args)]
struct ExprInput {
    /// The expression, or `-` to read it from stdin.
    #[arg(required_unless_present = "file")]
    expr: Option<String>,
    /// Read the expression from a file.
    #[arg(long, conflicts_with = "expr")]
    file: Option<PathBuf>,
}

impl ExprInput {
    fn read(&self) -> Result<String, CliError> {
        match (&self.expr, &self.file) {
            (_, Some(p)) => std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
            (Some(e), None) if e == "-" => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
                Ok(s)
            }
            (Some(e), None) => Ok(e.clone()),
            (None, None) => Err(CliError::Usage("no expression given".into())),
        }
    }
}

/// Which basis, over how many colors, up to which grade.
#[derive(Args)]
struct Graded {
    /// The basis.
    #[arg(long, value_enum)]
    which: Which,
    /// Number of colors (named a, b, … unless --alphabet is given).
    #[arg(long)]
    colors: Option<usize>,
    /// Highest grade (vertex count, or word length for osbb).
    #[arg(long)]
    max_grade: usize,
    /// Safety limit on --max-grade.
    #[arg(long, default_value_t = DEFAULT_GRADE_LIMIT)]
    limit: usize,
}

impl Graded {
    fn alphabet(&self, names: Option<&[String]>) -> Result<Alphabet, CliError> {
        commands::check_limit(self.max_grade, self.limit)?;
        commands::resolve_alphabet(names, self.colors, 1)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression in the LAT, pre-Lie or tree basis.
    Nf {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, value_enum, default_value_t = NfBasis::Lat)]
        basis: NfBasis,
        #[arg(long, value_enum, default_value_t = TermFormat::Text)]
        format: TermFormat,
    },
    /// Graded basis listing.
    Basis {
        #[command(flatten)]
        graded: Graded,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Per-grade dimensions, optionally checked against --expect.
    Dims {
        #[command(flatten)]
        graded: Graded,
        /// Expected counts for grades 1, 2, …; a mismatch exits with code 2.
        #[arg(long, value_delimiter = ',')]
        expect: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = DimsFormat::Text)]
        format: DimsFormat,
    },
    /// Grafting `left ⊳ right` of two expressions.
    Graft {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = NfBasis::Tree)]
        basis: NfBasis,
        #[arg(long, value_enum, default_value_t = TermFormat::Text)]
        format: TermFormat,
    },
    /// A word in the colors written in the OSBB basis.
    OsbbRewrite {
        /// Color names separated by spaces or commas, or one string of one-letter names.
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
        #[arg(long, value_enum, default_value_t = TermFormat::Text)]
        format: TermFormat,
    },
    /// Hall normal form of a Lie triple system expression (colors, tb, +, *).
    HallRewrite {
        #[command(flatten)]
        input: ExprInput,
        #[arg(long, value_enum, default_value_t = TermFormat::Text)]
        format: TermFormat,
    },
    /// Write, read or verify cached basis listings.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Compute a listing and store it.
    Write {
        #[command(flatten)]
        graded: Graded,
        /// Destination file.
        path: PathBuf,
    },
    /// Print a cached listing (same output as `basis`).
    Read {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Validate a cache file.
    Verify { path: PathBuf },
}

const DEFAULT_EXPR_COLORS: usize = 3;

fn run(cli: Cli) -> Result<String, CliError> {
    let names = cli.alphabet.as_deref();
    let expr_alphabet = || commands::resolve_alphabet(names, None, DEFAULT_EXPR_COLORS);
    match cli.command {
        Command::Nf { input, basis, format } => commands::nf(&input.read()?, &expr_alphabet()?, basis, format),
        Command::Basis { graded, format } => {
            let al = graded.alphabet(names)?;
            Ok(commands::basis(graded.which, &al, graded.max_grade, format))
        }
        Command::Dims { graded, expect, format } => {
            let al = graded.alphabet(names)?;
            let (out, check) = commands::dims(graded.which, &al, graded.max_grade, expect.as_deref(), format);
            print!("{out}");
            check.map(|()| String::new())
        }
        Command::Graft { left, right, basis, format } => commands::graft(&left, &right, &expr_alphabet()?, basis, format),
        Command::OsbbRewrite { word, format } => {
            let al = expr_alphabet()?;
            commands::osbb_rewrite(&commands::parse_word(&word, &al)?, &al, format)
        }
        Command::HallRewrite { input, format } => commands::hall_rewrite(&input.read()?, &expr_alphabet()?, format),
        Command::Cache { action } => match action {
            CacheAction::Write { graded, path } => {
                let al = graded.alphabet(names)?;
                commands::cache_write(graded.which, &al, graded.max_grade, &path)
            }
            CacheAction::Read { path, format } => commands::cache_read(&path, format),
            CacheAction::Verify { path } => commands::cache_verify(&path),
        },
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
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => {
            eprintln!("error: internal assertion failed");
            ExitCode::from(EXIT_INTERNAL as u8)
        }
    }
}
