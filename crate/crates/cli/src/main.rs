use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use charkit::charsolve::verify_character;
use charkit::fixtures::{self, QuadraticCorpus};
use charkit::oracle::{torus_check, TORUS_TOLERANCE};
use charkit::tensor::{
    cg_decompose, dimension_identity, monomial_decompose, series_family_z7, CGSeries,
};
use charkit::{weyl_dim, CharacterTable, Delta1Operator, Monomial, MultiPoly, Weight};

mod json;

#[derive(Parser, Debug)]
#[command(name = "charkit", version, about = "Exact E7 characters and Clebsch-Gordan series")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Directory holding the persistent character cache.
    #[arg(long, env = "CHARKIT_CACHE", default_value = ".charcache", global = true)]
    cache_dir: PathBuf,

    /// Neither read nor write the character cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character polynomial of each highest weight.
    Character {
        #[arg(required = true, value_parser = parse_weight)]
        weights: Vec<Weight>,
        #[arg(long, value_enum, default_value_t = Method::M1)]
        method: Method,
    },
    /// Clebsch-Gordan series of a product of two irreducibles.
    Cg {
        #[arg(value_parser = parse_weight)]
        m: Weight,
        #[arg(value_parser = parse_weight)]
        n: Weight,
    },
    /// Clebsch-Gordan series of a product of fundamental characters,
    /// given as `z1^2*z7` or as an exponent vector like `2000001`.
    MonomialCg {
        #[arg(value_parser = parse_monomial)]
        monomial: Monomial,
    },
    /// Weyl dimension of each highest weight.
    Dim {
        #[arg(required = true, value_parser = parse_weight)]
        weights: Vec<Weight>,
    },
    /// z7 times the character of n·λ_k, against its closed form.
    SeriesFamily {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        k: u8,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Recompute a bundled corpus and report every item.
    Verify {
        #[arg(long, value_enum, default_value_t = Corpus::All)]
        corpus: Corpus,
        #[arg(long, value_enum, default_value_t = Method::M1)]
        method: Method,
        /// Random torus points per oracle check.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0x0e7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    M1,
    M2,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Corpus {
    AppendixA,
    AppendixB,
    Quadratic,
    All,
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse().map_err(|e: charkit::Error| e.to_string())
}

fn parse_monomial(s: &str) -> Result<Monomial, String> {
    if let Ok(w) = s.parse::<Weight>() {
        return Monomial::from_weight(&w).map_err(|e| e.to_string());
    }
    s.parse().map_err(|e: charkit::Error| e.to_string())
}

/// Failures that are not usage errors.
enum Failure {
    Verification(String),
    Runtime(charkit::Error),
}

impl From<charkit::Error> for Failure {
    fn from(e: charkit::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let op = Delta1Operator::embedded();
    let table = CharacterTable::new(op);
    if !cli.no_cache {
        if let Err(e) = table.load_dir(&cli.cache_dir) {
            eprintln!("warning: ignoring cache in {}: {e}", cli.cache_dir.display());
        }
    }
    let result = run(&cli, &table);
    if !cli.no_cache {
        if let Err(e) = table.save_dir(&cli.cache_dir) {
            eprintln!("warning: could not write cache to {}: {e}", cli.cache_dir.display());
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, table: &CharacterTable<'_>) -> Result<(), Failure> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Character { weights, method } => {
            for m in weights {
                let chi = character(table, m, *method)?;
                if text {
                    println!("{chi}");
                } else {
                    println!("{}", json::character(m, &chi));
                }
            }
        }
        Command::Cg { m, n } => {
            let series = cg_decompose(table, m, n)?;
            emit_series(text, &[*m, *n], &series)?;
        }
        Command::MonomialCg { monomial } => {
            let series = monomial_decompose(table, monomial)?;
            let factors: Vec<Weight> = monomial
                .exps()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(Weight::fundamental(i + 1), e as usize))
                .collect();
            emit_series(text, &factors, &series)?;
        }
        Command::Dim { weights } => {
            for m in weights {
                let d = weyl_dim(m)?;
                if text {
                    println!("{d}");
                } else {
                    println!("{}", json!({"weight": m.0, "dim": d.to_string()}));
                }
            }
        }
        Command::SeriesFamily { k, n } => {
            let fc = series_family_z7(table, usize::from(*k), *n)?;
            if text {
                println!("computed    {}", fc.computed);
                println!("closed form {}", fc.closed_form);
                println!("matches {}", fc.matches());
            } else {
                println!(
                    "{}",
                    json!({
                        "k": k,
                        "n": n,
                        "series": json::series_terms(&fc.computed),
                        "closed_form": json::series_terms(&fc.closed_form),
                        "matches": fc.matches(),
                    })
                );
            }
            if !fc.matches() {
                return Err(Failure::Verification(format!(
                    "z7 * chi({}) differs from the closed form",
                    Weight::fundamental(usize::from(*k)).scaled(i64::from(*n))
                )));
            }
        }
        Command::Verify {
            corpus,
            method,
            trials,
            seed,
        } => {
            let items = verify(table, *corpus, *method, *trials, *seed);
            let failed = items.iter().filter(|i| !i.pass).count();
            if text {
                for i in &items {
                    println!("{:<4} {:<24} {}", if i.pass { "ok" } else { "FAIL" }, i.name, i.detail);
                }
                println!("{} passed, {} failed", items.len() - failed, failed);
            } else {
                let rows: Vec<Value> = items
                    .iter()
                    .map(|i| json!({"name": i.name, "pass": i.pass, "detail": i.detail}))
                    .collect();
                println!(
                    "{}",
                    json!({"items": rows, "passed": items.len() - failed, "failed": failed})
                );
            }
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} item(s) failed")));
            }
        }
    }
    Ok(())
}

fn character(table: &CharacterTable<'_>, m: &Weight, method: Method) -> Result<MultiPoly, Failure> {
    Ok(match method {
        Method::M1 => (*table.character(m)?).clone(),
        Method::M2 => table.character_m2(m)?,
        Method::Both => {
            let a = (*table.character(m)?).clone();
            let b = table.character_m2(m)?;
            if a != b {
                return Err(Failure::Verification(format!("methods disagree on {m}")));
            }
            a
        }
    })
}

fn emit_series(text: bool, factors: &[Weight], series: &CGSeries) -> Result<(), Failure> {
    let dim_check = dimension_identity(series, factors)?;
    if text {
        for (w, n) in series.iter() {
            println!("{w}:{n}");
        }
        println!("dim_check {dim_check} ({})", series.dimension());
    } else {
        println!("{}", json::cg(factors, series, dim_check));
    }
    if dim_check {
        Ok(())
    } else {
        Err(Failure::Verification("dimension identity fails".into()))
    }
}

struct Item {
    name: String,
    pass: bool,
    detail: String,
}

fn item(name: String, r: Result<(bool, String), charkit::Error>) -> Item {
    match r {
        Ok((pass, detail)) => Item { name, pass, detail },
        Err(e) => Item {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn check_character(
    table: &CharacterTable<'_>,
    m: &Weight,
    expected: &MultiPoly,
    method: Method,
) -> Result<(bool, String), charkit::Error> {
    let mut ok = true;
    let mut parts = Vec::new();
    if matches!(method, Method::M1 | Method::Both) {
        let same = *table.character(m)? == *expected;
        ok &= same;
        parts.push(format!("m1={}", if same { "match" } else { "differs" }));
    }
    if matches!(method, Method::M2 | Method::Both) {
        let same = table.character_m2(m)? == *expected;
        ok &= same;
        parts.push(format!("m2={}", if same { "match" } else { "differs" }));
    }
    let report = verify_character(table.operator(), m, expected)?;
    ok &= report.passed();
    parts.push(format!("dim={}", report.dimension));
    Ok((ok, parts.join(" ")))
}

fn check_series(got: charkit::Result<CGSeries>, expected: &CGSeries) -> Result<(bool, String), charkit::Error> {
    let got = got?;
    let same = got == *expected;
    Ok((
        same,
        if same {
            format!("{} terms, dim {}", got.len(), got.dimension())
        } else {
            format!("got {got}")
        },
    ))
}

fn verify(table: &CharacterTable<'_>, corpus: Corpus, method: Method, trials: usize, seed: u64) -> Vec<Item> {
    let want = |c: Corpus| corpus == c || corpus == Corpus::All;
    let mut items: Vec<Item> = Vec::new();

    if want(Corpus::Quadratic) {
        let q = QuadraticCorpus::embedded();
        let pairs: Vec<_> = q.series.iter().collect();
        items.extend(pairs.par_iter().map(|(&(j, k), expected)| {
            let got = cg_decompose(table, &Weight::fundamental(j), &Weight::fundamental(k));
            item(format!("cg {j} {k}"), check_series(got, expected))
        }).collect::<Vec<_>>());
        let chars: Vec<_> = q.second_order_chars.iter().filter(|(m, _)| m.level() == 2).collect();
        items.extend(chars.par_iter().map(|(m, chi)| {
            item(format!("chi {m}"), check_character(table, m, chi, method))
        }).collect::<Vec<_>>());
    }
    if want(Corpus::AppendixA) {
        let chars: Vec<_> = fixtures::appendix_a().characters().into_iter().collect();
        items.extend(chars.par_iter().map(|(m, chi)| {
            item(format!("chi {m}"), check_character(table, m, chi, method))
        }).collect::<Vec<_>>());
    }
    if want(Corpus::AppendixB) {
        let series = fixtures::appendix_b().monomial_series();
        items.extend(series.par_iter().map(|(n, expected)| {
            item(format!("mono {n}"), check_series(monomial_decompose(table, n), expected))
        }).collect::<Vec<_>>());
    }
    if corpus == Corpus::All {
        let mut targets: Vec<Weight> = (1..=7).map(Weight::fundamental).collect();
        targets.extend(["0000002", "1000001", "0000003"].map(|s| s.parse::<Weight>().unwrap()));
        items.extend(targets.par_iter().map(|m| {
            let r = table.character(m).and_then(|chi| torus_check(m, &chi, trials, seed));
            item(
                format!("torus {m}"),
                r.map(|dev| (dev < TORUS_TOLERANCE, format!("max deviation {dev:.3e}"))),
            )
        }).collect::<Vec<_>>());
    }
    items.sort_by(|a, b| a.name.cmp(&b.name));
    items
}
