//! Command-line front end for the permanental-ideal toolkit.

use clap::{Args, Parser, Subcommand};
use permideal::{
    basis_count, component_count, gap_length_formula, minimal_primes, parse_polynomial,
    permanental_ideal, q_component, radical_ideal, run_suite, unmixed_part, Ambient,
    BuchbergerOptions, Budget, Error, FieldSpec, Ideal, Polynomial, Shape, SuiteOptions,
    TermOrder,
};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "permideal",
    version,
    about = "Exact Gröbner-basis toolkit for 2x2 permanental ideals of generic matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Number of matrix rows (at least 2)
    #[arg(long)]
    m: u16,
    /// Number of matrix columns (at least 2)
    #[arg(long)]
    n: u16,
    /// Coefficient field: q (rationals) or fp:<prime>
    #[arg(long, default_value = "q")]
    field: String,
    /// Term order: diag-lex or diag-lex-T
    #[arg(long, default_value = "diag-lex")]
    order: String,
    /// Wall-clock budget per basis computation, in milliseconds
    #[arg(long, default_value_t = 60_000)]
    budget_ms: u64,
    /// Write the command's output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical reduced Gröbner basis of an ideal
    Gb {
        #[command(flatten)]
        common: Common,
        /// Ideal family: perm2 | radical | q-component | i1 | i2 | i3 | @<file>
        #[arg(long)]
        ideal: String,
    },
    /// Print the normal form of a polynomial modulo an ideal
    Nf {
        #[command(flatten)]
        common: Common,
        /// Polynomial expression, e.g. "x[1,1]*x[2,2] + x[1,2]*x[2,1]"
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: String,
    },
    /// Decide ideal membership; prints true or false
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: String,
    },
    /// Decide membership in the radical; prints true or false
    RadicalMember {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: String,
    },
    /// Intersect two or more ideals and print the reduced basis
    Intersect {
        #[command(flatten)]
        common: Common,
        /// Repeatable; at least two ideal families
        #[arg(long)]
        ideal: Vec<String>,
    },
    /// Print the closed-form counts for the shape
    Count {
        #[command(flatten)]
        common: Common,
    },
    /// List the minimal primes with their heights
    Primes {
        #[command(flatten)]
        common: Common,
    },
    /// Emit the decomposition pieces and the component list
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification suite; JSON report on stdout, summary on stderr
    Verify {
        #[command(flatten)]
        common: Common,
        /// Only run checks whose id starts with this prefix
        #[arg(long)]
        checks: Option<String>,
        /// Include elapsed milliseconds in the report
        #[arg(long)]
        timings: bool,
        /// Run intersection-heavy checks even beyond 3x3 shapes
        #[arg(long)]
        force_intersections: bool,
    },
}

struct Config {
    ambient: Ambient,
    order: TermOrder,
    opts: BuchbergerOptions,
    budget_ms: u64,
    out: Option<PathBuf>,
}

/// Input problems (bad flags, bad expressions, undefined families) are
/// usage errors; exhausted budgets get their own code.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn configure(common: &Common) -> Result<Config, Error> {
    let shape = Shape::new(common.m, common.n)?;
    let field = parse_field(&common.field)?;
    let order = TermOrder::from_name(&common.order)
        .ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            message: format!("unknown order {:?}; expected diag-lex or diag-lex-T", common.order),
        })?;
    Ok(Config {
        ambient: Ambient::new(shape, field),
        order,
        opts: BuchbergerOptions {
            budget: Budget::with_time_limit(Duration::from_millis(common.budget_ms)),
            chain_criterion: true,
        },
        budget_ms: common.budget_ms,
        out: common.out.clone(),
    })
}

fn parse_field(text: &str) -> Result<FieldSpec, Error> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::rationals());
    }
    if let Some(rest) = text.strip_prefix("fp:") {
        let p: u64 = rest.parse().map_err(|_| Error::Parse {
            line: 1,
            col: 1,
            message: format!("invalid prime in field spec {text:?}"),
        })?;
        return FieldSpec::prime_field(p);
    }
    Err(Error::Parse {
        line: 1,
        col: 1,
        message: format!("unknown field {text:?}; expected q or fp:<prime>"),
    })
}

fn resolve_ideal(name: &str, config: &Config) -> Result<Ideal, Error> {
    let ambient = config.ambient;
    match name {
        "perm2" => permanental_ideal(ambient, 2),
        "radical" => radical_ideal(ambient),
        "q-component" => q_component(ambient),
        "i1" => unmixed_part(ambient, 1),
        "i2" => unmixed_part(ambient, 2),
        "i3" => unmixed_part(ambient, 3),
        _ => {
            if let Some(path) = name.strip_prefix('@') {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{path}: {e}")))?;
                let mut gens = Vec::new();
                for line in text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    gens.push(parse_polynomial(line, ambient)?);
                }
                Ideal::new(ambient, gens)
            } else {
                Err(Error::UnknownFamily(name.to_string()))
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render_lines(polys: &[Polynomial], order: TermOrder) -> String {
    let mut s = String::new();
    for p in polys {
        s.push_str(&p.render(order));
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gb { common, ideal } => {
            let config = configure(&common)?;
            let ideal = resolve_ideal(&ideal, &config)?;
            let basis = ideal.groebner_basis(config.order, &config.opts)?;
            emit(&config.out, &render_lines(&basis, config.order))?;
            Ok(EXIT_OK)
        }
        Command::Nf { common, poly, ideal } => {
            let config = configure(&common)?;
            let ideal = resolve_ideal(&ideal, &config)?;
            let f = parse_polynomial(&poly, config.ambient)?;
            let nf = ideal.normal_form_of(&f, config.order, &config.opts)?;
            emit(&config.out, &format!("{}\n", nf.render(config.order)))?;
            Ok(EXIT_OK)
        }
        Command::Member { common, poly, ideal } => {
            let config = configure(&common)?;
            let ideal = resolve_ideal(&ideal, &config)?;
            let f = parse_polynomial(&poly, config.ambient)?;
            let answer = ideal.contains(&f, config.order, &config.opts)?;
            emit(&config.out, &format!("{answer}\n"))?;
            Ok(EXIT_OK)
        }
        Command::RadicalMember { common, poly, ideal } => {
            let config = configure(&common)?;
            let ideal = resolve_ideal(&ideal, &config)?;
            let f = parse_polynomial(&poly, config.ambient)?;
            let answer = ideal.radical_member(&f, config.order, &config.opts)?;
            emit(&config.out, &format!("{answer}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Intersect { common, ideal } => {
            let config = configure(&common)?;
            if ideal.len() < 2 {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    message: "intersect needs at least two --ideal arguments".into(),
                });
            }
            let ideals: Vec<Ideal> = ideal
                .iter()
                .map(|name| resolve_ideal(name, &config))
                .collect::<Result<_, _>>()?;
            let refs: Vec<&Ideal> = ideals.iter().collect();
            let meet = Ideal::intersect_all(&refs, config.order, &config.opts)?;
            let basis = meet.groebner_basis(config.order, &config.opts)?;
            emit(&config.out, &render_lines(&basis, config.order))?;
            Ok(EXIT_OK)
        }
        Command::Count { common } => {
            let config = configure(&common)?;
            let (m, n) = (config.ambient.shape.m, config.ambient.shape.n);
            let text = format!(
                "gb={}\ncomponents={}\ngap-length={}\n",
                basis_count(m, n),
                component_count(m, n),
                gap_length_formula(m, n),
            );
            emit(&config.out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Primes { common } => {
            let config = configure(&common)?;
            let primes = minimal_primes(config.ambient)?;
            let mut text = String::new();
            for p in &primes {
                text.push_str(&format!("{}: height {}\n", p.kind, p.height));
            }
            emit(&config.out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Decompose { common } => {
            let config = configure(&common)?;
            let ambient = config.ambient;
            let mut text = String::new();
            text.push_str("[Q]\n");
            text.push_str(&render_lines(q_component(ambient)?.generators(), config.order));
            for (header, index) in [("[I1]", 1u8), ("[I2]", 2), ("[I3]", 3)] {
                text.push_str(&format!("\n{header}\n"));
                match unmixed_part(ambient, index) {
                    Ok(part) => text.push_str(&render_lines(part.generators(), config.order)),
                    Err(Error::UnmixedUndefined { .. }) => {
                        text.push_str("(not defined at this shape)\n")
                    }
                    Err(e) => return Err(e),
                }
            }
            text.push_str("\n[minimal-primes]\n");
            for p in &minimal_primes(ambient)? {
                text.push_str(&format!("{}: height {}\n", p.kind, p.height));
            }
            emit(&config.out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { common, checks, timings, force_intersections } => {
            let config = configure(&common)?;
            let suite_options = SuiteOptions {
                budget_ms: config.budget_ms,
                force_intersections,
                check_filter: checks,
            };
            let report = run_suite(config.ambient, config.order, &suite_options);
            emit(&config.out, &report.json_string(timings))?;
            eprint!("{}", report.render_text(timings));
            let (_, failed, _, timed_out) = report.tally();
            if failed > 0 {
                Ok(EXIT_FAILED)
            } else if timed_out > 0 {
                Ok(EXIT_BUDGET)
            } else {
                Ok(EXIT_OK)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
