//! The `wilfcheck` command line.
//!
//! Exit codes: 0 for success or a true answer, 1 for a false answer, an
//! input outside a bijection's domain, or a failed verification, and 2 for
//! usage, parse and size-limit errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use wilfcheck::enumerate::{self, CountOptions, COUNT_CEILING, DEFAULT_MAX_N, HARD_MAX_N};
use wilfcheck::verify::{self, Checkers};
use wilfcheck::{bijection, pattern, perm, Class, Error, LrMaxSpec, Permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides the enumeration limit (default 12, at most 20).
pub const MAX_N_VAR: &str = "WILFCHECK_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "wilfcheck",
    version,
    about = "Check, map and count 3-5-2-4-1-satisfying and 31-4-2-avoiding permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test membership of a permutation in a class
    Check {
        #[arg(long, value_parser = parse_class)]
        class: Class,
        #[arg(allow_hyphen_values = true)]
        perm: String,
    },
    /// List occurrences of a dashed pattern, one index tuple per line
    Occurrences {
        pattern: String,
        #[arg(allow_hyphen_values = true)]
        perm: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Print the left-to-right maxima specification
    Spec {
        #[arg(allow_hyphen_values = true)]
        perm: String,
    },
    /// Print the minimal or maximal permutation of a specification
    Fill {
        #[arg(long, value_enum)]
        kind: FillKind,
        spec: String,
    },
    /// Apply a bijection
    Map {
        #[arg(long, value_enum)]
        bijection: Bijection,
        #[arg(long)]
        inverse: bool,
        #[arg(allow_hyphen_values = true)]
        perm: String,
    },
    /// Count both classes for n = 0..=N
    Count {
        #[arg(long)]
        n_max: usize,
        /// Use the occurrence-search predicates instead of the recursive ones
        #[arg(long)]
        naive: bool,
        /// Worker threads (default: all logical CPUs)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count valid LRmax specifications and compare with the Catalan number
    Specs {
        #[arg(long)]
        n: usize,
    },
    /// Run the exhaustive self-check suite
    Verify {
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FillKind {
    Minimal,
    Maximal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Bijection {
    SimionSchmidt,
    Wilf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_class(s: &str) -> Result<Class, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Anything that ends a command early, with its exit code.
enum Exit {
    Usage(String),
    False(String),
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit::Usage(format!("i/o error: {e}"))
    }
}

fn usage(what: &str, input: &str, e: Error) -> Exit {
    Exit::Usage(format!("invalid {what} {input:?}: {e}"))
}

fn parse_perm(text: &str) -> Result<Permutation, Exit> {
    text.parse().map_err(|e| usage("permutation", text, e))
}

fn max_n() -> Result<usize, Exit> {
    match std::env::var(MAX_N_VAR) {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n <= HARD_MAX_N => Ok(n),
            _ => Err(Exit::Usage(format!(
                "{MAX_N_VAR}={v:?} is not an integer in 0..={HARD_MAX_N}"
            ))),
        },
    }
}

fn guard(n: usize) -> Result<usize, Exit> {
    let limit = max_n()?;
    if n > limit {
        Err(Exit::Usage(
            Error::SizeGuard { n, limit }.to_string() + &format!(" (raise it with {MAX_N_VAR})"),
        ))
    } else {
        Ok(limit)
    }
}

fn domain_error(e: Error) -> Exit {
    match e {
        Error::OutsideDomain { .. } => Exit::False(e.to_string()),
        other => Exit::Usage(other.to_string()),
    }
}

/// Runs the CLI with the real checkers.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_checkers(args, &Checkers::default(), out, err)
}

/// Runs the CLI; `verify` uses `checkers` in place of the library's.
pub fn run_with_checkers<I, T>(args: I, checkers: &Checkers, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, checkers, out, err) {
        Ok(code) => code,
        Err(Exit::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Exit::False(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FALSE
        }
    }
}

fn execute(command: Command, checkers: &Checkers, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    match command {
        Command::Check { class, perm } => {
            let p = parse_perm(&perm)?;
            if class.contains(&p) {
                writeln!(out, "true")?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "false")?;
            if let Some(w) = class.witness(&p) {
                let values = w.values_in(&p).iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                writeln!(out, "witness: {w} values {values}")?;
            }
            Ok(EXIT_FALSE)
        }
        Command::Occurrences {
            pattern: text,
            perm,
            limit,
        } => {
            let pat = pattern::parse_pattern(&text).map_err(|e| Exit::Usage(e.to_string()))?;
            let p = parse_perm(&perm)?;
            for occ in pattern::occurrences(&p, &pat, limit) {
                writeln!(out, "{occ}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Spec { perm } => {
            writeln!(out, "{}", parse_perm(&perm)?.lrmax_spec())?;
            Ok(EXIT_OK)
        }
        Command::Fill { kind, spec } => {
            let s: LrMaxSpec = spec.parse().map_err(|e| usage("spec", &spec, e))?;
            let filled = match kind {
                FillKind::Minimal => perm::minimal_permutation(&s),
                FillKind::Maximal => perm::maximal_permutation(&s),
            }
            .map_err(|e| usage("spec", &spec, e))?;
            writeln!(out, "{filled}")?;
            Ok(EXIT_OK)
        }
        Command::Map {
            bijection: which,
            inverse,
            perm,
        } => {
            let p = parse_perm(&perm)?;
            let image = match (which, inverse) {
                (Bijection::SimionSchmidt, false) => perm::simion_schmidt(&p),
                (Bijection::SimionSchmidt, true) => perm::simion_schmidt_inverse(&p),
                (Bijection::Wilf, false) => bijection::phi(&p),
                (Bijection::Wilf, true) => bijection::phi_inverse(&p),
            }
            .map_err(domain_error)?;
            writeln!(out, "{image}")?;
            Ok(EXIT_OK)
        }
        Command::Count {
            n_max,
            naive,
            jobs,
            format,
            out: path,
        } => {
            let limit = guard(n_max)?;
            if n_max > COUNT_CEILING {
                writeln!(
                    err,
                    "warning: counting up to n={n_max} enumerates {n_max}! permutations; this may take long"
                )?;
            }
            let mut opts = CountOptions {
                use_fast: !naive,
                max_n: limit,
                ..Default::default()
            };
            if let Some(j) = jobs {
                opts.jobs = j as usize;
            }
            let reports = enumerate::count_table(n_max, &opts).map_err(|e| Exit::Usage(e.to_string()))?;
            let mut buf = Vec::new();
            match format {
                Format::Csv => enumerate::write_csv(&reports, &mut buf).map_err(|e| Exit::Usage(e.to_string()))?,
                Format::Json => writeln!(buf, "{}", enumerate::to_json(&reports))?,
            }
            match path {
                Some(path) => File::create(&path)
                    .and_then(|mut f| f.write_all(&buf))
                    .map_err(|e| Exit::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => out.write_all(&buf)?,
            }
            Ok(EXIT_OK)
        }
        Command::Specs { n } => {
            let limit = guard(n)?;
            let specs = enumerate::count_valid_specs_with_limit(n, limit).map_err(|e| Exit::Usage(e.to_string()))?;
            let catalan = enumerate::catalan(n).map_err(|e| Exit::Usage(e.to_string()))?;
            writeln!(out, "specs={specs}")?;
            writeln!(out, "catalan={catalan}")?;
            Ok(if specs == catalan { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Verify { n_max } => {
            guard(n_max)?;
            let report = verify::verify_suite_with(n_max, checkers);
            writeln!(out, "{report}")?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["wilfcheck"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_true_and_false() {
        assert_eq!(
            call(&["check", "--class", "avoiding3142v", "3,5,1,4,2"]),
            (0, "true\n".into(), "".into())
        );
        let (code, out, _) = call(&["check", "--class", "satisfying", "3,2,4,1"]);
        assert_eq!(code, 1);
        assert_eq!(out, "false\nwitness: (1,2,3,4) values 3,2,4,1\n");
        assert_eq!(call(&["check", "--class", "avoids321", ""]).0, 0);
    }

    #[test]
    fn parse_errors_exit_2() {
        let (code, _, err) = call(&["check", "--class", "satisfying", "3,x,1"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"x\""), "{err}");
        let (code, _, err) = call(&["spec", "1,1"]);
        assert_eq!(code, 2);
        assert!(err.contains("index 2"), "{err}");
        assert_eq!(call(&["check", "--class", "nope", "1"]).0, 2);
        assert_eq!(call(&["spec", "--bogus", "1"]).0, 2);
        assert_eq!(call(&["occurrences", "3-1-4-22", "1,2"]).0, 2);
        assert_eq!(call(&["fill", "--kind", "minimal", "P=1,3;M=1,3;n=3"]).0, 2);
        assert_eq!(call(&["count", "--n-max", "3", "--jobs", "0"]).0, 2);
        assert_eq!(call(&[]).0, 2);
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn spec_and_fill() {
        assert_eq!(call(&["spec", "3,1,5,4,2,7,6"]).1, "P=1,3,6;M=3,5,7;n=7\n");
        assert_eq!(call(&["spec", ""]).1, "P=;M=;n=0\n");
        assert_eq!(
            call(&["fill", "--kind", "maximal", "P=1,3,6;M=3,5,7;n=7"]).1,
            "3,2,5,4,1,7,6\n"
        );
        assert_eq!(
            call(&["fill", "--kind", "minimal", "P=1,3,6;M=3,5,7;n=7"]).1,
            "3,1,5,2,4,7,6\n"
        );
    }

    #[test]
    fn map_both_bijections() {
        assert_eq!(
            call(&["map", "--bijection", "wilf", "3,1,4,2"]),
            (0, "3,2,4,1\n".into(), "".into())
        );
        assert_eq!(
            call(&["map", "--bijection", "wilf", "--inverse", "3,2,4,1"]).1,
            "3,1,4,2\n"
        );
        assert_eq!(
            call(&["map", "--bijection", "simion-schmidt", "3,1,5,2,4,7,6"]).1,
            "3,2,5,4,1,7,6\n"
        );
        assert_eq!(
            call(&["map", "--bijection", "simion-schmidt", "--inverse", "3,2,1"]).1,
            "3,1,2\n"
        );
        let (code, _, err) = call(&["map", "--bijection", "wilf", "3,2,4,1"]);
        assert_eq!(code, 1);
        assert!(err.contains("(1,2,3,4)"), "{err}");
    }

    #[test]
    fn occurrences_listing() {
        assert_eq!(call(&["occurrences", "3-1-4-2", "3,5,1,4,2"]).1, "(1,3,4,5)\n");
        assert_eq!(call(&["occurrences", "31-4-2", "3,5,1,4,2"]).1, "");
        assert_eq!(
            call(&["occurrences", "2-1", "3,2,1", "--limit", "2"]).1,
            "(1,2)\n(1,3)\n"
        );
    }

    #[test]
    fn specs_and_count() {
        assert_eq!(
            call(&["specs", "--n", "4"]),
            (0, "specs=14\ncatalan=14\n".into(), "".into())
        );
        let (code, out, _) = call(&["count", "--n-max", "4", "--jobs", "1"]);
        assert_eq!(code, 0);
        let last = out.lines().last().unwrap();
        assert!(last.starts_with("4,23,23,14,14,"), "{out}");
        assert_eq!(call(&["count", "--n-max", "13"]).0, 2);
    }

    #[test]
    fn verify_and_fault_injection() {
        let (code, out, _) = call(&["verify", "--n-max", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("satisfying=avoiding: 1,2,6,23"));

        let broken = Checkers {
            avoids_3142v_fast: |p| pattern::avoids_3142v_fast(p) && p.values() != [2, 1, 3],
            ..Default::default()
        };
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run_with_checkers(["wilfcheck", "verify", "--n-max", "4"], &broken, &mut o, &mut e);
        let text = String::from_utf8(o).unwrap();
        assert_eq!(code, 1);
        assert!(
            text.contains("FAIL 31-4-2 fast = naive: n=3 counterexample 2,1,3"),
            "{text}"
        );
    }
}
