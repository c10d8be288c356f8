//! Command-line front end for the `sturmian` library.
//!
//! Every subcommand except `render` prints one JSON document whose layout
//! is fixed by a schema in `schema/`. Exit codes: 0 on success, 1 when a
//! verification fails, 2 on usage or input errors.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use sturmian::census::{
    brute_force_census_with_limit, geometric_count, palindrome_count, palindrome_lines,
    palindrome_words, sturmian_count, totient_sum_identity,
};
use sturmian::geometry::{parse_rational, z_count, DefiningLine, GridLine};
use sturmian::mapping::{
    extend_to_full_contact, image_words, locate, locate_line, through_all_word, verify_partition,
    FullContact, SplitSpec,
};
use sturmian::returns::{returns_of_factor, verify_residue_correspondence, verify_two_returns_aperiodic};
use sturmian::words::{is_palindrome, Word};

pub mod render;
pub mod schema;

use render::{Format, RenderLine, RenderSpec};

/// Environment variable overriding both exhaustive-search guards.
pub const LIMIT_VAR: &str = "STURMIAN_BRUTE_LIMIT";
/// Guard for suites that repeat an exhaustive census for every length up to `n`.
pub const CENSUS_LIMIT: usize = 14;
/// Guard for a single scan over all `2^n` words.
pub const SCAN_LIMIT: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "sturmian", version, about = "Finite Sturmian words and the grid lines that generate them")]
pub struct Cli {
    /// Write the output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of Sturmian words (and palindromes) of length n.
    Count {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Number of Sturmian palindromes of length n.
    Palindromes {
        n: usize,
        /// Also list the palindromes.
        #[arg(long)]
        list: bool,
    },
    /// The image set of a grid line.
    MapLine {
        #[arg(long, value_name = "a:b:c")]
        line: GridLine,
        #[arg(long)]
        n: usize,
    },
    /// The grid line whose image set contains a word.
    Locate {
        #[arg(long)]
        word: Word,
    },
    /// Run a property suite for every length (or denominator) up to n.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        n: usize,
    },
    /// Occurrences, residues and return words of a factor.
    Returns {
        #[arg(long, value_name = "a:b:c")]
        line: GridLine,
        #[arg(long)]
        factor: Word,
        /// Number of letters of the line's word to scan (default 4a + |factor|).
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Draw a line, its grid points and a word's broken line.
    ///
    /// Irrational slopes can be approximated by a convergent p/q: with
    /// q > n², the first n letters are unchanged unless a constraint is
    /// within 1/q of being tight.
    Render {
        #[arg(long, value_name = "a:b:c", required_unless_present = "alpha", conflicts_with = "alpha")]
        line: Option<GridLine>,
        /// Slope of a defining line y = alpha·x + rho, as p/q.
        #[arg(long, requires = "rho")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        rho: Option<String>,
        #[arg(long)]
        n: usize,
        /// Word to draw (default: the word of the line).
        #[arg(long)]
        word: Option<Word>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        /// Cell size in pixels (SVG only).
        #[arg(long, default_value_t = 40)]
        cell: u32,
    },
    /// The first extension of a word through all integer points of its line.
    Extend {
        #[arg(long)]
        word: Word,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Brute,
    Geometric,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Partition,
    Census,
    Identity,
    Palindromes,
    Returns,
}

#[derive(Debug, Serialize)]
pub struct CensusDoc {
    pub n: usize,
    pub method: Method,
    pub sturmian: String,
    pub palindromes: String,
    pub formula: Option<String>,
    pub brute: Option<String>,
    pub geometric: Option<String>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct PalindromesDoc {
    pub n: usize,
    pub count: String,
    pub words: Option<Vec<Word>>,
}

#[derive(Debug, Serialize)]
pub struct ImageDoc {
    pub line: GridLine,
    pub n: usize,
    pub z: usize,
    pub count: usize,
    pub entries: Vec<ImageEntryDoc>,
}

#[derive(Debug, Serialize)]
pub struct ImageEntryDoc {
    pub word: Word,
    pub split: SplitSpec,
}

#[derive(Debug, Serialize)]
pub struct LocateDoc {
    pub word: Word,
    pub line: GridLine,
    pub split: SplitSpec,
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub suite: Suite,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// What a successful dispatch produced.
#[derive(Debug)]
pub struct Outcome {
    /// Schema kind of the JSON document, `None` for figures.
    pub kind: Option<&'static str>,
    pub text: String,
    pub ok: bool,
}

fn json<T: Serialize>(kind: &'static str, doc: &T, ok: bool) -> Outcome {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    Outcome {
        kind: Some(kind),
        text,
        ok,
    }
}

fn usage(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Guard for exhaustive searches, from [`LIMIT_VAR`] when set.
pub fn brute_limit(default: usize) -> Result<usize, String> {
    match std::env::var(LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{LIMIT_VAR}={v:?} is not a non-negative integer")),
        Err(_) => Ok(default),
    }
}

fn guard(n: usize, default: usize, what: &str) -> Result<usize, String> {
    let limit = brute_limit(default)?;
    if n > limit {
        return Err(format!("{what} is limited to n <= {limit} (set {LIMIT_VAR} to raise it)"));
    }
    Ok(limit)
}

/// Executes a parsed command. `Err` is a usage or input error.
pub fn execute(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Count { n, method } => count(*n, *method),
        Command::Palindromes { n, list } => {
            let count = palindrome_count(*n as u64);
            let words = if *list { Some(palindrome_words(*n).map_err(usage)?) } else { None };
            let ok = words.as_ref().is_none_or(|w| count == BigUint::from(w.len()));
            let doc = PalindromesDoc {
                n: *n,
                count: count.to_string(),
                words,
            };
            Ok(json("palindromes", &doc, ok))
        }
        Command::MapLine { line, n } => {
            let img = image_words(line, *n).map_err(usage)?;
            let doc = ImageDoc {
                line: *line,
                n: *n,
                z: z_count(line, *n),
                count: img.len(),
                entries: img
                    .entries
                    .into_iter()
                    .map(|e| ImageEntryDoc {
                        word: e.word,
                        split: e.split,
                    })
                    .collect(),
            };
            Ok(json("image", &doc, true))
        }
        Command::Locate { word } => {
            let (line, split) = locate(word).map_err(usage)?;
            let doc = LocateDoc {
                word: word.clone(),
                line,
                split,
            };
            Ok(json("locate", &doc, true))
        }
        Command::Verify { suite, n } => {
            let doc = verify(*suite, *n)?;
            let ok = doc.pass;
            Ok(json("verify", &doc, ok))
        }
        Command::Returns {
            line,
            factor,
            horizon,
        } => {
            let report = returns_of_factor(line, factor, *horizon).map_err(usage)?;
            let ok = report.pass;
            Ok(json("returns", &report, ok))
        }
        Command::Render {
            line,
            alpha,
            rho,
            n,
            word,
            format,
            cell,
        } => {
            let line = match (line, alpha, rho) {
                (Some(l), _, _) => RenderLine::Grid(*l),
                (None, Some(alpha), Some(rho)) => {
                    let alpha = parse_rational(alpha).map_err(usage)?;
                    let rho = parse_rational(rho).map_err(usage)?;
                    RenderLine::Defining(DefiningLine::new(alpha, rho).map_err(usage)?)
                }
                _ => return Err("render needs --line or both --alpha and --rho".into()),
            };
            let spec = RenderSpec {
                line,
                n: *n,
                word: word.clone(),
                format: *format,
                cell: *cell,
            };
            Ok(Outcome {
                kind: None,
                text: render::render(&spec).map_err(usage)?,
                ok: true,
            })
        }
        Command::Extend { word } => {
            let fc: FullContact = extend_to_full_contact(word).map_err(usage)?;
            Ok(json("extend", &fc, true))
        }
    }
}

fn count(n: usize, method: Method) -> Result<Outcome, String> {
    let wants = |m: Method| method == m || method == Method::All;
    let formula = sturmian_count(n as u64);
    let formula_pal = palindrome_count(n as u64);
    let brute = if wants(Method::Brute) {
        let limit = guard(n, SCAN_LIMIT, "brute-force counting")?;
        Some(brute_force_census_with_limit(n, limit).map_err(usage)?)
    } else {
        None
    };
    let geometric = if wants(Method::Geometric) {
        let words = geometric_count(n).map_err(usage)?;
        let pals = palindrome_words(n).map_err(usage)?.len();
        Some((words, pals))
    } else {
        None
    };

    let mut sturmian = Vec::new();
    let mut pals = Vec::new();
    if wants(Method::Formula) {
        sturmian.push(formula.to_string());
        pals.push(formula_pal.to_string());
    }
    if let Some(b) = &brute {
        sturmian.push(b.sturmian.to_string());
        pals.push(b.palindromic.to_string());
    }
    if let Some((g, p)) = &geometric {
        sturmian.push(g.to_string());
        pals.push(p.to_string());
    }
    let agree = sturmian.windows(2).all(|w| w[0] == w[1]) && pals.windows(2).all(|w| w[0] == w[1]);
    let doc = CensusDoc {
        n,
        method,
        sturmian: sturmian[0].clone(),
        palindromes: pals[0].clone(),
        formula: wants(Method::Formula).then(|| formula.to_string()),
        brute: brute.map(|b| b.sturmian.to_string()),
        geometric: geometric.map(|(g, _)| g.to_string()),
        agree,
    };
    Ok(json("census", &doc, agree))
}

/// Runs one property suite.
pub fn verify(suite: Suite, n: usize) -> Result<VerifyDoc, String> {
    let mut checked = 0;
    let mut failures = Vec::new();
    match suite {
        Suite::Partition => {
            guard(n, CENSUS_LIMIT, "the partition suite")?;
            for k in 1..=n {
                let r = verify_partition(k).map_err(usage)?;
                checked += r.brute_count as usize;
                for w in &r.duplicates {
                    failures.push(format!("n={k}: {w} lies in several image sets"));
                }
                for w in &r.missing {
                    failures.push(format!("n={k}: {w} lies in no image set"));
                }
                if r.geometric_sum != r.brute_count {
                    failures.push(format!(
                        "n={k}: image sets hold {} words, {} are Sturmian",
                        r.geometric_sum, r.brute_count
                    ));
                }
            }
        }
        Suite::Census => {
            let limit = guard(n, CENSUS_LIMIT, "the census suite")?;
            for k in 1..=n {
                let brute = brute_force_census_with_limit(k, limit).map_err(usage)?;
                let formula = sturmian_count(k as u64);
                let geometric = geometric_count(k).map_err(usage)?;
                if formula != BigUint::from(brute.sturmian) || formula != geometric {
                    failures.push(format!(
                        "n={k}: formula {formula}, brute force {}, geometric {geometric}",
                        brute.sturmian
                    ));
                }
                let pal = palindrome_count(k as u64);
                if pal != BigUint::from(brute.palindromic) {
                    failures.push(format!(
                        "n={k}: palindrome formula {pal}, brute force {}",
                        brute.palindromic
                    ));
                }
                checked += 1;
            }
        }
        Suite::Identity => {
            for k in 1..=n {
                let id = totient_sum_identity(k);
                if !id.holds() {
                    failures.push(format!("n={k}: {} != {}", id.lhs, id.rhs));
                }
                checked += 1;
            }
        }
        Suite::Palindromes => {
            let limit = guard(n, CENSUS_LIMIT, "the palindrome suite")?;
            for k in 1..=n {
                let brute = brute_force_census_with_limit(k, limit).map_err(usage)?;
                let expected: BTreeSet<&Word> = brute.palindromes().collect();
                if palindrome_count(k as u64) != BigUint::from(expected.len()) {
                    failures.push(format!("n={k}: formula disagrees with {} palindromes", expected.len()));
                }
                let built = palindrome_words(k).map_err(usage)?;
                if built.iter().collect::<BTreeSet<_>>() != expected {
                    failures.push(format!("n={k}: constructed palindromes differ from brute force"));
                }
                for pl in palindrome_lines(k) {
                    checked += 1;
                    match through_all_word(&pl.line, k) {
                        Some(w) if is_palindrome(&w) => match locate_line(&w) {
                            Ok(back) if back == pl.line => {}
                            other => failures.push(format!("n={k}: {w} locates to {other:?}, not {}", pl.line)),
                        },
                        other => failures.push(format!("n={k}: {} gives {other:?}", pl.line)),
                    }
                }
            }
        }
        Suite::Returns => {
            let r = verify_residue_correspondence(n as i64).map_err(usage)?;
            checked += r.factors;
            failures.extend(r.failures);
            if n >= 1 {
                let t = verify_two_returns_aperiodic(n, (100 * n).max(1000)).map_err(usage)?;
                checked += t.checked;
                failures.extend(t.failures.iter().map(|u| format!("Fibonacci factor {u}: not two returns")));
            }
        }
    }
    Ok(VerifyDoc {
        suite,
        n,
        checked,
        pass: failures.is_empty(),
        failures,
    })
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    finish(&outcome, cli.out.as_deref(), out, err)
}

/// Writes an outcome and maps it to an exit code.
fn finish(outcome: &Outcome, path: Option<&std::path::Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let written = match path {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    if outcome.ok {
        0
    } else {
        let _ = writeln!(err, "verification failed");
        1
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
