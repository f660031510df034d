use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pwclone::{
    check_suite, clone_superpose, dims, enumerate_classes, equiv, frontier, normal_form,
    right_comb, term_equiv, Budget, CloneId, Error, MonoidSpec, Suite, Term, Variety, Word,
};

const DEFAULT_MAX_CLASSES: u64 = 10_000_000;

/// Normal forms and word problems in clones of pigmented words.
#[derive(Parser, Debug)]
#[command(name = "pwclone", version)]
struct Cli {
    /// Pigment monoid: trivial | free:<symbols> | zmod:<n> | int-add | nat-max | table:<path>
    #[arg(long, global = true, default_value = "trivial")]
    monoid: String,

    /// Clone: p | winc | arra:<k> | arra-rev:<k> | inc:<k> | magn[:k,k'] | stal:<k> | stal-rev:<k> | pill[:k,k']
    #[arg(long = "clone", global = true, default_value = "p")]
    clone_id: String,

    /// Arity of the word or term operands (defaults to the largest value).
    #[arg(long, global = true)]
    arity: Option<usize>,

    /// Wrap the result as {"result", "clone", "monoid"}.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a word.
    Normalize { word: String },
    /// Exit 0 if the two words are equivalent, 1 otherwise.
    Equiv { left: String, right: String },
    /// Superpose arguments into a word and normalize.
    Superpose {
        word: String,
        /// Semicolon-separated argument words, all of one arity.
        #[arg(long)]
        args: String,
    },
    /// Evaluate a term to its pigmented word.
    Frontier { term: String },
    /// Print the right-comb term of a word.
    Rc { word: String },
    /// Exit 0 if the two terms are equal in the variety, 1 otherwise.
    TermEquiv { left: String, right: String },
    /// Number of classes of arity n.
    Dims {
        n: usize,
        /// Count by enumerating words instead of using the closed formula.
        #[arg(long)]
        brute_force: bool,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Run a verification suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
    },
}

/// What a command produced: text to print, its JSON form, and whether the
/// decision was positive.
struct Outcome {
    text: String,
    json: Value,
    positive: bool,
}

impl Outcome {
    fn text(s: String) -> Outcome {
        Outcome {
            json: Value::String(s.clone()),
            text: s,
            positive: true,
        }
    }

    fn decision(b: bool) -> Outcome {
        Outcome {
            text: b.to_string(),
            json: Value::Bool(b),
            positive: b,
        }
    }
}

fn max_classes() -> Result<u64, Error> {
    match std::env::var("PWCLONE_MAX_CLASSES") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidMonoid(format!("PWCLONE_MAX_CLASSES is not a number: {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_CLASSES),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let m: MonoidSpec = cli.monoid.parse()?;
    let c = CloneId::new(cli.clone_id.parse::<Variety>()?, m.clone())?;
    let word = |s: &str| Word::parse(s, &m, cli.arity);
    let term = |s: &str| Term::parse(s, &m, cli.arity);

    Ok(match &cli.command {
        Command::Normalize { word: w } => Outcome::text(normal_form(&c, &word(w)?)?.render(&m)),
        Command::Equiv { left, right } => Outcome::decision(equiv(&c, &word(left)?, &word(right)?)?),
        Command::Superpose { word: w, args } => {
            let p = word(w)?;
            let pieces: Vec<&str> = args.split(';').collect();
            // the argument list shares one arity: the largest value in any of them
            let arity = pieces
                .iter()
                .map(|s| Word::parse(s, &m, Some(usize::MAX)).map(|w| w.values().max().unwrap_or(0)))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            let args = pieces
                .iter()
                .map(|s| Word::parse(s, &m, Some(arity)))
                .collect::<Result<Vec<_>, _>>()?;
            Outcome::text(clone_superpose(&c, &p, &args)?.render(&m))
        }
        Command::Frontier { term: t } => Outcome::text(frontier(&term(t)?, &m)?.render(&m)),
        Command::Rc { word: w } => Outcome::text(right_comb(&word(w)?).render(&m)),
        Command::TermEquiv { left, right } => {
            Outcome::decision(term_equiv(&c, &term(left)?, &term(right)?)?)
        }
        Command::Dims {
            n,
            brute_force,
            max_len,
        } => {
            if *brute_force {
                let classes = enumerate_classes(&c, *n, *max_len, max_classes()?)?;
                Outcome::text(classes.len().to_string())
            } else {
                Outcome::text(dims(&c, *n)?.to_string())
            }
        }
        Command::Check {
            suite,
            seed,
            samples,
            max_arity,
            max_len,
        } => {
            let suite: Suite = suite.parse()?;
            let mut b = Budget::for_suite(suite);
            b.seed = seed.unwrap_or(b.seed);
            b.samples = samples.unwrap_or(b.samples);
            b.max_arity = max_arity.unwrap_or(b.max_arity);
            b.max_len = max_len.unwrap_or(b.max_len);
            let report = check_suite(&c, suite, &b)?;
            Outcome {
                text: report.to_string().trim_end().to_string(),
                json: serde_json::to_value(&report).expect("reports serialize"),
                positive: report.passed(),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let wrapped = json!({
                    "result": out.json,
                    "clone": cli.clone_id,
                    "monoid": cli.monoid,
                });
                println!("{wrapped}");
            } else {
                println!("{}", out.text);
            }
            if out.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
