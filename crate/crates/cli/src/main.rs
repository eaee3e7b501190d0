use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use opfree::bijection::family_convert;
use opfree::enumerate::{enumerate, EnumConfig};
use opfree::rota_baxter::{rb_evaluate, rb_product, seq_rb_target, RotaBaxterBasis, SequenceWeight, TruncatedSequence};
use opfree::{
    selfcheck, Alphabet, AngularForest, BracketedWord, CoeffKind, DecoratedForest, Error, Family, FamilyElement,
    LetterOmega, LetterX, LinearCombination, MotzkinPath, Predicate, Rational, Representation, Weight,
};

/// Free operated monoids and free Rota-Baxter algebras on paths, words and
/// forests.
#[derive(Parser)]
#[command(name = "opfree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an element, check its family and extra predicates.
    Validate {
        /// Family name (M, S, R, SR, P, L, V, LV, F, Fl, XF, XF0) or
        /// representation (word, path, vforest, aforest).
        #[arg(long)]
        family: Family,
        /// Extra predicate to enforce; may be repeated.
        #[arg(long, value_parser = parse_predicate)]
        require: Vec<Predicate>,
        /// Element text, or `-` for stdin.
        input: String,
    },
    /// Map an element along the bijection diagram.
    Convert {
        #[arg(long)]
        from: Family,
        #[arg(long)]
        to: Family,
        input: String,
    },
    /// Rota-Baxter product of two basis elements.
    RbMul {
        /// word, path, vforest or aforest.
        #[arg(long)]
        rep: Family,
        /// `sym` for a symbolic weight, or a rational such as -1 or 1/2.
        #[arg(long, default_value = "sym", value_parser = parse_weight, allow_hyphen_values = true)]
        lambda: Weight,
        /// Print the JSON form.
        #[arg(long)]
        json: bool,
        lhs: String,
        rhs: String,
    },
    /// List every member of a family of a given size.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        size: usize,
        /// Comma-separated letters.
        #[arg(long, default_value = "x", value_delimiter = ',')]
        alphabet: Vec<String>,
        /// Comma-separated operator names.
        #[arg(long, default_value = "_", value_delimiter = ',')]
        omega: Vec<String>,
        #[arg(long, value_parser = parse_predicate)]
        filter: Option<Predicate>,
        #[arg(long)]
        count_only: bool,
    },
    /// Draw an element as ASCII art.
    Render {
        #[arg(long)]
        family: Family,
        input: String,
    },
    /// Evaluate a Rota-Baxter word in the algebra of rational sequences.
    EvalSeq {
        /// Sequence length.
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// Operator weight, 1 or -1.
        #[arg(long, default_value = "1", value_parser = parse_sequence_weight, allow_hyphen_values = true)]
        weight: SequenceWeight,
        /// Letter assignment such as `x=1,2,3`; may be repeated.
        #[arg(long, value_parser = parse_assignment)]
        assign: Vec<(LetterX, Vec<Rational>)>,
        /// Read the input as a JSON linear combination of words.
        #[arg(long)]
        json: bool,
        input: String,
    },
    /// Run the invariant suites exhaustively.
    Selfcheck {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    Predicate::from_name(s).ok_or_else(|| format!("unknown predicate `{s}`"))
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    if s == "sym" {
        return Ok(Weight::Symbolic);
    }
    s.parse::<Rational>()
        .map(Weight::Value)
        .map_err(|_| format!("expected `sym` or a rational, got `{s}`"))
}

fn parse_sequence_weight(s: &str) -> Result<SequenceWeight, String> {
    match s {
        "1" | "+1" => Ok(SequenceWeight::Plus),
        "-1" => Ok(SequenceWeight::Minus),
        _ => Err(format!("weight must be 1 or -1, got `{s}`")),
    }
}

fn parse_assignment(s: &str) -> Result<(LetterX, Vec<Rational>), String> {
    let (name, values) = s.split_once('=').ok_or("expected `letter=v1,v2,...`")?;
    let x = LetterX::new(name.trim()).map_err(|e| e.to_string())?;
    let values = values
        .split(',')
        .map(|v| v.trim().parse::<Rational>().map_err(|_| format!("bad rational `{v}`")))
        .collect::<Result<_, _>>()?;
    Ok((x, values))
}

/// Failures after argument parsing.
enum Failure {
    Domain(Error),
    Usage(String),
    Selfcheck { lines: Vec<String>, failed: Vec<&'static str> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
    Ok(buf.trim_end_matches(['\n', '\r']).to_string())
}

fn alphabet(letters: &[String], omega: &[String]) -> Result<Alphabet, Failure> {
    let xs = letters.iter().map(|x| LetterX::new(x.trim())).collect::<Result<Vec<_>, _>>()?;
    let ws = omega.iter().map(|w| LetterOmega::new(w.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(Alphabet::new(xs, ws))
}

fn rb_mul_text<B: RotaBaxterBasis>(lhs: &str, rhs: &str, weight: &Weight, json: bool) -> Result<String, Failure> {
    let kind = CoeffKind::Rational;
    let u = lhs.parse::<B>()?;
    let v = rhs.parse::<B>()?;
    u.check_member()?;
    v.check_member()?;
    let out = rb_product(&LinearCombination::basis(u, kind), &LinearCombination::basis(v, kind), weight)?;
    Ok(if json { out.to_json_string() } else { out.to_string() })
}

fn run(command: Command) -> Result<Vec<String>, Failure> {
    match command {
        Command::Validate { family, require, input } => {
            let e = FamilyElement::parse(family, &read_input(&input)?)?;
            for p in require {
                e.element().require(p)?;
            }
            Ok(vec![format!("ok: {e}")])
        }
        Command::Convert { from, to, input } => {
            let e = FamilyElement::parse(from, &read_input(&input)?)?;
            Ok(vec![family_convert(&e, to)?.to_string()])
        }
        Command::RbMul { rep, lambda, json, lhs, rhs } => {
            let (lhs, rhs) = (read_input(&lhs)?, read_input(&rhs)?);
            let line = match rep.representation() {
                Representation::Word => rb_mul_text::<BracketedWord>(&lhs, &rhs, &lambda, json)?,
                Representation::Path => rb_mul_text::<MotzkinPath>(&lhs, &rhs, &lambda, json)?,
                Representation::VForest => rb_mul_text::<DecoratedForest>(&lhs, &rhs, &lambda, json)?,
                Representation::AForest => rb_mul_text::<AngularForest>(&lhs, &rhs, &lambda, json)?,
            };
            Ok(vec![line])
        }
        Command::Enumerate { family, size, alphabet: letters, omega, filter, count_only } => {
            let alphabet = alphabet(&letters, &omega)?;
            let elems = enumerate(family, size, &alphabet, filter, &EnumConfig::from_env())?;
            Ok(if count_only {
                vec![elems.len().to_string()]
            } else {
                elems.iter().map(ToString::to_string).collect()
            })
        }
        Command::Render { family, input } => {
            let e = FamilyElement::parse(family, &read_input(&input)?)?;
            Ok(vec![e.element().render()])
        }
        Command::EvalSeq { length, weight, assign, json, input } => {
            if length == 0 {
                return Err(Failure::Usage("--length must be positive".into()));
            }
            let mut table = BTreeMap::new();
            for (x, values) in assign {
                if values.len() != length {
                    return Err(Failure::Usage(format!(
                        "assignment for {x} has {} values, expected {length}",
                        values.len()
                    )));
                }
                table.insert(x, TruncatedSequence::new(values));
            }
            let text = read_input(&input)?;
            let combination = if json {
                LinearCombination::<BracketedWord>::from_json_str(&text)?
            } else {
                let w = text.parse::<BracketedWord>()?;
                w.check_member()?;
                LinearCombination::basis(w, CoeffKind::Rational)
            };
            let target = seq_rb_target(length, weight, table);
            let value = rb_evaluate(&combination, &target)?;
            let entries: Vec<String> = value.entries().iter().map(ToString::to_string).collect();
            Ok(vec![entries.join(" ")])
        }
        Command::Selfcheck { max_size } => {
            let reports = selfcheck::run_all(max_size);
            let mut lines = Vec::new();
            let mut failed = Vec::new();
            for r in &reports {
                match &r.failure {
                    None => lines.push(format!("PASS {} ({} checks)", r.name, r.checked)),
                    Some(why) => {
                        lines.push(format!("FAIL {}: {why}", r.name));
                        failed.push(r.name);
                    }
                }
            }
            if failed.is_empty() {
                Ok(lines)
            } else {
                Err(Failure::Selfcheck { lines, failed })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error:{}", e.to_json());
            ExitCode::from(1)
        }
        Err(Failure::Selfcheck { lines, failed }) => {
            for l in lines {
                println!("{l}");
            }
            eprintln!("error:{}", serde_json::json!({ "code": "SELFCHECK_FAILED", "suites": failed }));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
