//! The `ntdice` command line.
//!
//! Exit codes: 0 success, 1 verification failed, 2 domain error (for example
//! `p` out of range), 3 resource limit, 4 parse or usage error, 5 internal
//! consistency failure.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{envelopes_f64, gamma_n, p_star_vector, pi_n, BoundContext};
use crate::builder::{build_central_word, construct_dice_with, pair_count_bounds};
use crate::certified::compare_to_pi_n;
use crate::dice::{word_from_dice, DiceSet};
use crate::error::Error;
use crate::oracle::{bn_spectrum, enumerate_central, EnumerationCap};
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::search::{ConstructionOptions, SearchStrategy};
use crate::verify::{verify_word, VerificationReport};
use crate::word::{parse_word, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// One common denominator for every chain parameter.
    Shared,
    /// Simplest rational per coordinate in a shrinking box.
    Box,
}

impl From<Strategy> for SearchStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Shared => SearchStrategy::SharedDenominator,
            Strategy::Box => SearchStrategy::BoxHalving,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ntdice",
    version,
    about = "Balanced nontransitive dice: build, verify, bound"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build n dice whose cyclic winning probabilities all equal p.
    Construct {
        #[arg(long)]
        n: usize,
        /// Target probability as num/den.
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 1_000_000)]
        max_denominator: u64,
        #[arg(long, default_value_t = 20_000_000)]
        max_faces: u64,
        /// Use the smallest admissible side count.
        #[arg(long)]
        shrink_m: bool,
        /// How the chain parameters p_2..p_k are searched.
        #[arg(long, value_enum, default_value = "shared")]
        strategy: Strategy,
    },
    /// Check a dice JSON file or a word for balance and nontransitivity.
    Verify {
        /// Dice JSON file, `{"n": .., "dice": [[..], ..]}`, or `-` for stdin.
        path: Option<String>,
        #[arg(long, conflicts_with = "path")]
        word: Option<String>,
        /// Expected winning probability as num/den.
        #[arg(long)]
        claim: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The upper bound π_n on the winning probability.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// The chain targets p_j* for n ≥ 5.
    Pstar {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive winning-probability spectrum for small dice.
    Spectrum {
        #[arg(long)]
        n: usize,
        /// Comma-separated side counts.
        #[arg(long, value_delimiter = ',')]
        sides: Vec<u64>,
        #[arg(long, default_value_t = 16)]
        max_len: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare realisable pair counts of central words with their predicted box.
    Lemma4 {
        #[arg(long, value_delimiter = ',')]
        m: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        a: Vec<u64>,
        #[arg(long, default_value_t = 16)]
        max_len: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        let code = match err {
            Error::Domain(_) => 2,
            Error::Resource(_) => 3,
            Error::Parse { .. } => 4,
            Error::Consistency(_) => 5,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("ntdice: {err}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = match cli.command {
        Command::Construct {
            n,
            p,
            format,
            max_denominator,
            max_faces,
            shrink_m,
            strategy,
        } => cmd_construct(
            n,
            &p,
            format,
            &ConstructionOptions {
                strategy: strategy.into(),
                max_denominator,
                shrink_m,
                max_faces,
            },
        ),
        Command::Verify {
            path,
            word,
            claim,
            format,
        } => cmd_verify(path.as_deref(), word.as_deref(), claim.as_deref(), format),
        Command::Bound { n } => cmd_bound(n),
        Command::Pstar { n } => cmd_pstar(n),
        Command::Spectrum {
            n,
            sides,
            max_len,
            format,
        } => cmd_spectrum(n, &sides, max_len, format),
        Command::Lemma4 { m, a, max_len } => cmd_lemma4(&m, &a, max_len),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn decimal(r: &Rational) -> String {
    format!("{:.12}", to_f64(r))
}

fn report_json(report: &VerificationReport) -> Value {
    let mut value = serde_json::to_value(report).expect("report serializes");
    value["cyclic_probs_decimal"] = report.cyclic_probs.iter().map(decimal).collect();
    value["w_decimal"] = report.w.as_ref().map(decimal).into();
    value
}

fn report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for (i, p) in report.cyclic_probs.iter().enumerate() {
        let next = if i + 1 == report.n { 1 } else { i + 2 };
        let _ = writeln!(
            out,
            "P(A{} < A{}) = {} ≈ {}",
            i + 1,
            next,
            format_rational(p),
            decimal(p)
        );
    }
    let _ = writeln!(out, "balanced: {}", report.balanced);
    let _ = writeln!(out, "nontransitive: {}", report.nontransitive);
    match &report.w {
        Some(w) => {
            let _ = writeln!(out, "w = {} ≈ {}", format_rational(w), decimal(w));
        }
        None => {
            let _ = writeln!(out, "w = (undefined, not balanced)");
        }
    }
    match &report.central_type {
        Some(t) => {
            let t: Vec<String> = t.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "central: true, type ({})", t.join(","));
        }
        None => {
            let _ = writeln!(out, "central: false");
        }
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn cmd_construct(
    n: usize,
    p: &str,
    format: Format,
    options: &ConstructionOptions,
) -> crate::Result<Outcome> {
    let p = parse_rational(p)?;
    let built = construct_dice_with(n, &p, options)?;
    let word = built.word.to_word();
    let stdout = match format {
        Format::Word => format!("{word}\n"),
        Format::Json => {
            let value = json!({
                "n": built.dice.n(),
                "dice": built.dice.dice(),
                "p": format_rational(&p),
                "p_decimal": decimal(&p),
                "word": word.to_string(),
                "plan": serde_json::to_value(&built.plan).expect("plan serializes"),
                "report": report_json(&built.report),
            });
            format!("{value}\n")
        }
        Format::Text => {
            let plan = &built.plan;
            let mut out = String::new();
            let _ = writeln!(
                out,
                "n = {n}, p = {} ≈ {}",
                format_rational(&p),
                decimal(&p)
            );
            let _ = writeln!(out, "m = {}", plan.m);
            let _ = writeln!(out, "type a = ({})", join(&plan.a));
            let _ = writeln!(out, "targets s = ({})", join(&plan.s));
            let aux: Vec<String> = plan.aux.iter().map(format_rational).collect();
            let _ = writeln!(out, "chain p_2..p_k = ({})", aux.join(","));
            let _ = writeln!(out, "word: {word}");
            for (i, faces) in built.dice.dice().iter().enumerate() {
                let _ = writeln!(out, "A{}: {}", i + 1, join(faces));
            }
            out.push_str(&report_text(&built.report));
            out
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn cmd_verify(
    path: Option<&str>,
    word: Option<&str>,
    claim: Option<&str>,
    format: Format,
) -> crate::Result<Outcome> {
    let word: Word = match (path, word) {
        (_, Some(text)) => parse_word(text)?,
        (Some(path), None) => {
            let text = if path == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(path)
            };
            let text = text.map_err(|e| Error::Parse {
                position: 0,
                message: format!("cannot read {path}: {e}"),
            })?;
            word_from_dice(&DiceSet::from_json(&text)?)
        }
        (None, None) => {
            return Err(Error::Parse {
                position: 0,
                message: "give a dice JSON path or --word".into(),
            })
        }
    };
    let claim = claim.map(parse_rational).transpose()?;
    let report = verify_word(&word)?;
    let claim_holds = claim.as_ref().map(|c| report.w.as_ref() == Some(c));
    let pass = report.is_bn() && claim_holds.unwrap_or(true);

    let stdout = match format {
        Format::Json => {
            let mut value = report_json(&report);
            if let Some(c) = &claim {
                value["claim"] = format_rational(c).into();
                value["claim_holds"] = claim_holds.into();
            }
            format!("{value}\n")
        }
        Format::Text | Format::Word => {
            let mut out = report_text(&report);
            if let (Some(c), Some(holds)) = (&claim, claim_holds) {
                let _ = writeln!(out, "claim w = {}: {}", format_rational(c), holds);
            }
            out
        }
    };
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

pub fn cmd_bound(n: usize) -> crate::Result<Outcome> {
    let bound = pi_n(n)?;
    Ok(Outcome::ok(match bound.exact {
        Some(exact) => format!("{} (exact)\n", format_rational(&exact)),
        None => format!("{:.15} (irrational)\n", bound.value),
    }))
}

pub fn cmd_pstar(n: usize) -> crate::Result<Outcome> {
    let ctx = BoundContext::new(n)?;
    if ctx.k < 2 {
        return Err(Error::Domain(format!(
            "n = {n} has no free chain parameters (k = {})",
            ctx.k
        )));
    }
    let stars = p_star_vector(n)?;
    let mut out = String::new();
    for (i, v) in stars.iter().enumerate() {
        let _ = writeln!(out, "p_{}* = {v:.15}", i + 2);
    }
    let (_, upper) = envelopes_f64(n, &stars)?.expect("k ≥ 2");
    let _ = writeln!(out, "L(p*) = Γ_{n} = {:.15}", gamma_n(n)?);
    let _ = writeln!(out, "U(p*) = {upper:.15}");
    let _ = writeln!(out, "π_{n} = {:.15}", pi_n(n)?.value);
    Ok(Outcome::ok(out))
}

pub fn cmd_spectrum(
    n: usize,
    sides: &[u64],
    max_len: u64,
    format: Format,
) -> crate::Result<Outcome> {
    let result = bn_spectrum(n, sides, &EnumerationCap { max_len })?;
    let certified = match &result.max_w {
        Some(w) => compare_to_pi_n(w, n)?.at_most(),
        None => Some(true),
    };
    let stdout = match format {
        Format::Json => {
            let mut value = serde_json::to_value(&result).expect("spectrum serializes");
            value["within_bound"] = certified.into();
            format!("{value}\n")
        }
        Format::Text | Format::Word => {
            let mut out = result.to_table();
            let verdict = match certified {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "undecided",
            };
            let _ = writeln!(out, "max w ≤ π_{n} (certified): {verdict}");
            out
        }
    };
    Ok(Outcome {
        code: if certified == Some(false) { 1 } else { 0 },
        stdout,
        stderr: String::new(),
    })
}

pub fn cmd_lemma4(m: &[u64], a: &[u64], max_len: u64) -> crate::Result<Outcome> {
    let bounds = pair_count_bounds(m, a)?;
    let achieved = enumerate_central(m, a, &EnumerationCap { max_len })?;

    let mut predicted = vec![Vec::new()];
    for &(lo, hi) in &bounds {
        predicted = predicted
            .into_iter()
            .flat_map(|prefix: Vec<u128>| {
                (lo..=hi).map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    let mut built_ok = 0usize;
    for s in &predicted {
        let word = build_central_word(m, a, s)?;
        let w = word.to_word();
        if (0..s.len()).all(|i| w.count_pairs(i + 1, i + 2).ok() == Some(s[i])) {
            built_ok += 1;
        }
    }
    let matches =
        achieved.len() == predicted.len() && predicted.iter().all(|s| achieved.contains(s));

    let mut out = String::new();
    let _ = writeln!(out, "m = ({}), a = ({})", join(m), join(a));
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let _ = writeln!(out, "s_{} ∈ [{lo}, {hi}]", i + 1);
    }
    let _ = writeln!(out, "predicted points: {}", predicted.len());
    let _ = writeln!(out, "realised by enumeration: {}", achieved.len());
    let _ = writeln!(out, "enumeration equals box: {matches}");
    let _ = writeln!(out, "builder hits: {built_ok}/{}", predicted.len());
    Ok(Outcome {
        code: if matches && built_ok == predicted.len() {
            0
        } else {
            1
        },
        stdout: out,
        stderr: String::new(),
    })
}
