//! Command-line front end. All results go to stdout as deterministic JSON
//! (or `--format text`); diagnostics go to stderr. Exit codes: 0 success,
//! 1 refused input (not gentle / infinite-dimensional / no witness),
//! 2 usage or input errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gentlekit_core::{
    decide_with, hom_dim_combinatorial_certified, hom_dim_linear, idempotent_reduction,
    parse_quiver, quotient_by_ideal, validate_gentle, BoundQuiver, DecideOptions, Error,
    FieldSpec, StringWord,
};

#[derive(Parser)]
#[command(name = "gentlekit", version, about = "Decide tau-tilting finiteness of gentle bound quiver algebras")]
struct Cli {
    /// Output format for results on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// Quiver file (text or JSON format, autodetected); `-` reads stdin
    #[arg(value_name = "FILE", conflicts_with = "inline")]
    path: Option<String>,
    /// Quiver given directly on the command line instead of a file
    #[arg(long, value_name = "QUIVER")]
    inline: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the gentleness and finite-dimensionality conditions
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Decide tau-tilting finiteness, with witness or brick census
    Decide {
        #[command(flatten)]
        input: Input,
        /// Brick family size when a family applies
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Print the reduced band witness and its quotient-algebra class
    Witness {
        #[command(flatten)]
        input: Input,
    },
    /// Print the explicit brick family (infinite case) or the census
    Bricks {
        #[command(flatten)]
        input: Input,
        /// Brick family size when a family applies
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Hom dimension between two string modules, by both backends
    Hom {
        #[command(flatten)]
        input: Input,
        /// First string (e.g. "a b^-1" or "e(1)")
        #[arg(long)]
        c: String,
        /// Second string
        #[arg(long)]
        d: String,
        /// Coefficient field: `q` or `gf:<p>`
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Enumerate canonical strings up to a length bound
    Strings {
        #[command(flatten)]
        input: Input,
        /// Length bound (default: 2 |Q1|, or the GENTLEKIT_MAX_LEN env var)
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Quotient by killed vertices/arrows, or idempotent reduction at a vertex
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Idempotent reduction at this vertex
        #[arg(long, conflicts_with_all = ["kill_vertices", "kill_arrows"])]
        vertex: Option<String>,
        /// Vertices to delete (comma-separated)
        #[arg(long, value_delimiter = ',')]
        kill_vertices: Vec<String>,
        /// Arrows to delete (comma-separated)
        #[arg(long, value_delimiter = ',')]
        kill_arrows: Vec<String>,
    },
}

enum CliError {
    /// Bad invocation or unreadable/unparsable input: exit 2.
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl Input {
    fn load(&self) -> Result<BoundQuiver, CliError> {
        let text = match (&self.path, &self.inline) {
            (_, Some(text)) => text.clone(),
            (Some(path), None) if path == "-" => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
                buf
            }
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?,
            (None, None) => {
                return Err(CliError::Usage(
                    "no input: give a file, `-` for stdin, or --inline".into(),
                ))
            }
        };
        Ok(parse_quiver(&text)?)
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => println!("{}", text()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let format = cli.format;
    match cli.command {
        Cmd::Validate { input } => {
            let q = input.load()?;
            let report = validate_gentle(&q);
            emit(format, &report, || report.to_string());
            Ok(if report.is_gentle && report.is_finite_dimensional {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Decide { input, n } => {
            let q = input.load()?;
            let d = decide_with(&q, DecideOptions { family_size: n })?;
            emit(format, &d, || {
                let mut s = format!("verdict: {:?}", d.verdict).to_lowercase();
                if let Some(census) = &d.brick_census {
                    s.push_str(&format!("\nbricks: {}", census.len()));
                    for b in census {
                        s.push_str(&format!("\n  {b}"));
                    }
                }
                if let Some(w) = &d.witness {
                    s.push_str(&format!("\nwitness form: {}", w.form));
                }
                if let Some(family) = &d.brick_family {
                    s.push_str("\nbrick family:");
                    for b in family {
                        s.push_str(&format!("\n  {b}"));
                    }
                }
                s
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Witness { input } => {
            let q = input.load()?;
            let d = decide_with(&q, DecideOptions::default())?;
            let Some(w) = d.witness else {
                return Err(Error::Precondition(
                    "the algebra is tau-tilting finite; no band witness exists".into(),
                )
                .into());
            };
            emit(format, &w, || {
                let mut s = format!("form: {}", w.form);
                for (name, part) in [("band", &w.band), ("b1", &w.b1), ("omega", &w.omega), ("b2", &w.b2)] {
                    if let Some(p) = part {
                        s.push_str(&format!("\n{name}: {p}"));
                    }
                }
                s.push_str(&format!("\nclass: {:?}", w.class));
                s
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bricks { input, n } => {
            let q = input.load()?;
            let d = decide_with(&q, DecideOptions { family_size: n })?;
            let bricks = d
                .brick_family
                .or(d.brick_census)
                .ok_or_else(|| {
                    Error::Precondition(
                        "no explicit brick family for this witness form; see `witness`".into(),
                    )
                })?;
            emit(format, &bricks, || {
                bricks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("\n")
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hom { input, c, d, field } => {
            let q = input.load()?;
            let c: StringWord = c.parse()?;
            let d: StringWord = d.parse()?;
            let field: FieldSpec = field.parse()?;
            let (combinatorial, certificate) = hom_dim_combinatorial_certified(&q, &c, &d)?;
            let linear = hom_dim_linear(&q, &c, &d, field)?;
            let out = serde_json::json!({
                "combinatorial": combinatorial,
                "linear": linear,
                "field": field,
                "certificate": certificate,
            });
            emit(format, &out, || {
                format!("combinatorial: {combinatorial}\nlinear over {field}: {linear}")
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Strings { input, max_len } => {
            let q = input.load()?;
            let bound = match max_len {
                Some(l) => l,
                None => match std::env::var("GENTLEKIT_MAX_LEN") {
                    Ok(v) => v.parse().map_err(|_| {
                        Error::Precondition(format!("GENTLEKIT_MAX_LEN is not a length: `{v}`"))
                    })?,
                    Err(_) => 2 * q.arrows().len(),
                },
            };
            let strings = gentlekit_core::enumerate_strings(&q, bound)?;
            emit(format, &strings, || {
                strings.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n")
            });
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Reduce { input, vertex, kill_vertices, kill_arrows } => {
            let q = input.load()?;
            let reduced = match vertex {
                Some(v) => idempotent_reduction(&q, &v)?.quiver,
                None => quotient_by_ideal(&q, &kill_vertices, &kill_arrows)?,
            };
            emit(format, &reduced, || reduced.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::NotGentle(_) | Error::InfiniteDimensional | Error::Precondition(_) => {
                    ExitCode::from(1)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}
