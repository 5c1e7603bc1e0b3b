//! Command implementations behind the `rpkit` binary.
//!
//! Every command produces a [`Report`]: line-oriented `KEY value` pairs
//! (plus verbatim utility lines) that can also be rendered as JSON. Exit
//! codes: 0 success, 1 parse or usage error, 2 mathematical refusal, 3
//! property-suite failure.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use rpkit::acyclicity::find_strict_cycle;
use rpkit::format::{parse_embedding_map, parse_relation, parse_stratification, write_relation};
use rpkit::optimality::scalarization_counterexample_check;
use rpkit::oracle::{enumerate_all_relations, random_relation, suites, EXHAUSTIVE_MAX};
use rpkit::{
    argmax, disjointify, is_acyclic, is_pseudo_stratification, is_separable_finite, is_separating,
    is_stratification, maximal_elements, normalize_to_unit_interval, prop1_utility, synthesize,
    utility_from_stratification, verify_embedding, verify_representation, GeneratorConfig, Relation, RelationKind,
    Stratification,
};

pub use report::{digest, Entry, Report, Status};

/// Menus are enumerated exhaustively by `fuzz` only up to this size.
pub const MENU_SUITE_MAX: usize = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: rpkit::Error },
    #[error(transparent)]
    Core(#[from] rpkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

#[derive(Debug, Parser)]
#[command(name = "rpkit", version, about = "Richter-Peleg representations of finite binary relations")]
pub struct Cli {
    /// Emit the report as JSON instead of KEY value lines.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report order properties of a relation, with a witness cycle when it
    /// is not strongly acyclic.
    Check { path: PathBuf },
    /// Print the transitive closure.
    Closure {
        path: PathBuf,
        /// Take the reflexive closure as well.
        #[arg(long)]
        reflexive: bool,
        /// Also write the closure to this file in `.rel` format.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Construct and verify a Richter-Peleg representation.
    Represent(RepresentArgs),
    /// Maximal elements of a menu, optionally recovered by one utility.
    Maximal {
        path: PathBuf,
        /// Comma-separated menu; defaults to the whole universe.
        #[arg(long, value_delimiter = ',')]
        menu: Option<Vec<String>>,
        /// Build a utility whose argmax over the menu is the maximal set
        /// (preorders only).
        #[arg(long)]
        scalarize: bool,
    },
    /// Validate a `.strat` file against a relation.
    Stratify {
        relation: PathBuf,
        strat: PathBuf,
        /// Print the disjointified collection.
        #[arg(long)]
        disjointify: bool,
    },
    /// Verify an embedding map `source -> target`.
    Embed {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Confirm that scalarization fails for a strongly acyclic but
    /// intransitive relation.
    Counterexample,
    /// Run the oracle-agreement and scalarization property suites.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Integer heights of indifference classes.
    Level,
    /// Dyadic series over a separating stratification.
    Series,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Level)]
    pub method: Method,
    /// `.strat` file, or `singletons`. Required by `--method series`.
    #[arg(long)]
    pub strat: Option<String>,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub seeds: u64,
    #[arg(long, default_value = "arbitrary", value_parser = parse_kind)]
    pub kind: RelationKind,
    /// Check every relation on `n` elements instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
}

fn parse_kind(s: &str) -> Result<RelationKind, String> {
    s.parse()
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_relation(report: &mut Report, path: &Path) -> Result<Relation, CliError> {
    let bytes = read(path)?;
    report.input(&bytes);
    parse_relation(&String::from_utf8_lossy(&bytes)).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_stratification(report: &mut Report, path: &Path) -> Result<Stratification, CliError> {
    let bytes = read(path)?;
    report.input(&bytes);
    parse_stratification(&String::from_utf8_lossy(&bytes)).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Records a refusal, or passes any other error through.
fn refuse_or(report: &mut Report, err: rpkit::Error) -> Result<(), CliError> {
    if !err.is_refusal() {
        return Err(err.into());
    }
    if let rpkit::Error::NotStronglyAcyclic(w) = &err {
        report.field("WITNESS", w);
    }
    report.refuse(&err);
    Ok(())
}

fn sorted_labels(mut labels: Vec<String>) -> String {
    labels.sort();
    labels.join(" ")
}

pub fn run(command: &Command, echo: &str) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = Report::new(echo);
    match command {
        Command::Check { path } => check(&mut report, path)?,
        Command::Closure {
            path,
            reflexive,
            output,
        } => closure(&mut report, path, *reflexive, output.as_deref())?,
        Command::Represent(args) => represent(&mut report, args)?,
        Command::Maximal { path, menu, scalarize } => maximal(&mut report, path, menu.as_deref(), *scalarize)?,
        Command::Stratify {
            relation,
            strat,
            disjointify,
        } => stratify(&mut report, relation, strat, *disjointify)?,
        Command::Embed { source, target, map } => embed(&mut report, source, target, map)?,
        Command::Counterexample => counterexample(&mut report),
        Command::Fuzz(args) => fuzz(&mut report, args)?,
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn check(report: &mut Report, path: &Path) -> Result<(), CliError> {
    let r = load_relation(report, path)?;
    report.field("ELEMENTS", r.len());
    report.field("PAIRS", r.pair_count());
    report.field("REFLEXIVE", r.is_reflexive());
    report.field("COMPLETE", r.is_complete());
    report.field("TRANSITIVE", r.is_transitive());
    report.field("PREORDER", r.is_preorder());
    report.field("ACYCLIC", is_acyclic(&r));
    let witness = find_strict_cycle(&r);
    report.field("STRONGLY_ACYCLIC", witness.is_none());
    report.field("SEPARABLE_FINITE", is_separable_finite(&r));
    if let Some(w) = witness {
        report.field("WITNESS", w);
    }
    Ok(())
}

fn closure(report: &mut Report, path: &Path, reflexive: bool, output: Option<&Path>) -> Result<(), CliError> {
    let r = load_relation(report, path)?;
    let base = if reflexive { r.reflexive_closure() } else { r.clone() };
    let closed = base.transitive_closure();
    report.field("ADDED_PAIRS", closed.pair_count() - r.pair_count());
    report.field("PREORDER", closed.is_preorder());
    let text = write_relation(&closed);
    for line in text.lines() {
        report.raw(line);
    }
    if let Some(out) = output {
        fs::write(out, &text).map_err(|source| CliError::Io {
            path: out.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

fn represent(report: &mut Report, args: &RepresentArgs) -> Result<(), CliError> {
    let r = load_relation(report, &args.path)?;
    let utility = match args.method {
        Method::Level => {
            report.field("METHOD", "level");
            synthesize(&r)
        }
        Method::Series => {
            report.field("METHOD", "series");
            let s = match args.strat.as_deref() {
                None => {
                    return Err(rpkit::Error::Parse {
                        line: 0,
                        message: "--method series needs --strat <file|singletons>".into(),
                    }
                    .into())
                }
                Some("singletons") => Stratification::singletons(&r),
                Some(path) => load_stratification(report, Path::new(path))?,
            };
            report.field("STRATA", s.len());
            utility_from_stratification(&r, &s)
        }
    };
    match utility {
        Ok(u) => {
            for line in u.to_string().lines() {
                report.raw(line);
            }
            let verification = verify_representation(&r, &u)?;
            for v in &verification.violations {
                report.raw(v.to_string());
            }
            report.field("VERIFIED", verification.is_valid());
        }
        Err(e) => refuse_or(report, e)?,
    }
    Ok(())
}

fn maximal(report: &mut Report, path: &Path, menu: Option<&[String]>, scalarize: bool) -> Result<(), CliError> {
    let r = load_relation(report, path)?;
    let menu: Vec<String> = match menu {
        Some(m) => m.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => r.labels().to_vec(),
    };
    let best = maximal_elements(&r, &menu)?;
    report.field("MENU", sorted_labels(menu.clone()));
    report.field("MAXIMAL", sorted_labels(best.clone()));
    if scalarize {
        let base = match synthesize(&r) {
            Ok(u) => normalize_to_unit_interval(&u),
            Err(e) => return refuse_or(report, e),
        };
        match prop1_utility(&r, &base, &menu) {
            Ok(u) => {
                for line in u.to_string().lines() {
                    report.raw(line);
                }
                let top = argmax(&u, &menu)?;
                report.field("ARGMAX", sorted_labels(top.clone()));
                let equal = sorted_labels(top) == sorted_labels(best);
                report.field("ARGMAX_EQUALS_MAXIMAL", equal);
                if !equal {
                    report.status = Status::SuiteFailed;
                }
            }
            Err(e) => refuse_or(report, e)?,
        }
    }
    Ok(())
}

fn stratify(report: &mut Report, rel: &Path, strat: &Path, show_disjoint: bool) -> Result<(), CliError> {
    let r = load_relation(report, rel)?;
    let s = load_stratification(report, strat)?;
    report.field("STRATA", s.len());
    report.field("PREORDER", r.is_preorder());
    let pseudo = is_pseudo_stratification(&r, &s)?;
    report.field("PSEUDO_STRATIFICATION", pseudo);
    report.field("STRATIFICATION", is_stratification(&r, &s)?);
    if pseudo {
        report.field("SEPARATING", is_separating(&r, &s)?);
    } else {
        report.field("SEPARATING", "n/a");
    }
    if show_disjoint {
        let d = disjointify(&s);
        for (stratum, origin) in d.strata().iter().zip(d.origin()) {
            report.field("DISJOINT_STRATUM", format!("{origin}: {}", stratum.join(" ")));
        }
        if pseudo {
            report.field("DISJOINT_SEPARATING", is_separating(&r, &d)?);
        }
    }
    Ok(())
}

fn embed(report: &mut Report, source: &Path, target: &Path, map: &Path) -> Result<(), CliError> {
    let src = load_relation(report, source)?;
    let dst = load_relation(report, target)?;
    let bytes = read(map)?;
    report.input(&bytes);
    let e = parse_embedding_map(&String::from_utf8_lossy(&bytes), src, dst).map_err(|source| CliError::Input {
        path: map.to_path_buf(),
        source,
    })?;
    let mismatches = e.mismatches();
    for (x, y) in &mismatches {
        report.field("MISMATCH", format!("{} {}", e.source().label(*x), e.source().label(*y)));
    }
    report.field("EMBEDDING", verify_embedding(&e));
    report.field("SOURCE_PREORDER", e.source().is_preorder());
    report.field("TARGET_PREORDER", e.target().is_preorder());
    Ok(())
}

fn counterexample(report: &mut Report) {
    let c = scalarization_counterexample_check();
    report.field("MAXIMAL_AC", if c.maximal_is_whole_menu { "a c" } else { "other" });
    report.field("STATED_UTILITY_VERIFIED", c.stated_utility_verifies);
    report.field("STRONGLY_ACYCLIC", c.strongly_acyclic);
    report.field("TRANSITIVE", c.transitive);
    report.field("REPRESENTATIONS_CHECKED", c.representations_checked);
    report.field("ALL_RANK_A_ABOVE_C", c.all_prefer_a_over_c);
    report.field("COUNTEREXAMPLE_CONFIRMED", c.confirmed());
    if !c.confirmed() {
        report.status = Status::SuiteFailed;
    }
}

/// Per-relation outcome of the fuzz suites.
struct Outcome {
    representable: bool,
    prop1_menus: Option<usize>,
    prop2_pairs: Option<usize>,
}

fn run_suites(r: &Relation) -> Result<Outcome, String> {
    let representable = suites::existence_agreement(r)?;
    let (mut prop1_menus, mut prop2_pairs) = (None, None);
    if r.is_preorder() && r.len() <= MENU_SUITE_MAX {
        prop1_menus = Some(suites::prop1_all_menus(r)?);
        prop2_pairs = Some(suites::prop2_all_menus(r)?);
    }
    Ok(Outcome {
        representable,
        prop1_menus,
        prop2_pairs,
    })
}

fn fuzz(report: &mut Report, args: &FuzzArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(rpkit::Error::EmptyUniverse.into());
    }
    // (reproduction line, relation)
    let cases: Vec<(String, Relation)> = if args.exhaustive {
        if args.n > EXHAUSTIVE_MAX {
            return Err(rpkit::Error::TooLarge {
                n: args.n,
                max: EXHAUSTIVE_MAX,
            }
            .into());
        }
        enumerate_all_relations(args.n)?
            .enumerate()
            .map(|(i, r)| (format!("n={} exhaustive index={i}", args.n), r))
            .collect()
    } else {
        (0..args.seeds)
            .map(|seed| {
                let cfg = GeneratorConfig::new(args.n, seed, args.kind);
                (cfg.to_string(), random_relation(&cfg))
            })
            .collect()
    };
    report.field("MODE", if args.exhaustive { "exhaustive" } else { "random" });
    report.field("N", args.n);
    if !args.exhaustive {
        report.field("KIND", args.kind);
    }
    if args.n > rpkit::oracle::BRUTE_FORCE_MAX {
        report.field("SKIPPED", "brute-force deciders (n > 6)");
    }

    let results: Vec<Result<Outcome, String>> = cases.par_iter().map(|(_, r)| run_suites(r)).collect();

    let total = cases.len();
    let mut agreed = 0;
    let mut representable = 0;
    let (mut p1_rel, mut p1_menus, mut p2_rel, mut p2_pairs) = (0, 0, 0, 0);
    let mut failure = None;
    for ((repro, _), res) in cases.iter().zip(&results) {
        match res {
            Ok(o) => {
                agreed += 1;
                representable += usize::from(o.representable);
                if let Some(m) = o.prop1_menus {
                    p1_rel += 1;
                    p1_menus += m;
                }
                if let Some(m) = o.prop2_pairs {
                    p2_rel += 1;
                    p2_pairs += m;
                }
            }
            Err(msg) if failure.is_none() => failure = Some((repro.clone(), msg.clone())),
            Err(_) => {}
        }
    }
    report.field("EXISTENCE_AGREEMENT", format!("{agreed}/{total}"));
    report.field("REPRESENTABLE", representable);
    report.field("PROP1", format!("{p1_rel} relations, {p1_menus} menus"));
    report.field("PROP2", format!("{p2_rel} relations, {p2_pairs} element-menu pairs"));
    match failure {
        Some((repro, msg)) => {
            report.field("FAILURE", msg);
            report.field("REPRO", repro);
            report.field("SUITE_PASSED", false);
            report.status = Status::SuiteFailed;
        }
        None => report.field("SUITE_PASSED", true),
    }
    Ok(())
}
