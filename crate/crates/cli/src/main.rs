//! satkit: command-line front end for satkit-core.
//!
//! Exit codes: 0 success, 1 input/parse error, 2 precondition violation,
//! 3 resource guard tripped (--max-size).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use satkit_core::algebra::{parse_algebra_with, ParseOptions, SubUniverse};
use satkit_core::catfib::{
    self, all_hom_congruences, cat_syntactic, parallel_indiscrete, parse_category,
    FiniteCategory, WideSubcategory,
};
use satkit_core::centralizer::{centralizer, is_connected, pair_algebra};
use satkit_core::congruence::{all_congruences, check_shifting_lemma, ShiftingLemma};
use satkit_core::error::Error as CoreError;
use satkit_core::lang::{parse_dfa, syntactic_monoid};
use satkit_core::saturation::{
    forall_u, is_normal_to, is_saturated, normal_sup, restrict_congruence, syntactic_congruence,
};
use satkit_core::varieties::{check_variety, protomodular_tag, VarietyTag};
use satkit_core::{FiniteAlgebra, Partition};

#[derive(Parser)]
#[command(
    name = "satkit",
    about = "Syntactic congruences, saturation operators and centralizers on finite algebras",
    long_about = "Inputs are .alg (finite algebra), .cat (finite category) and .dfa files.\n\
        Partitions are written in block form [[0,2],[1,3]] or as label vectors\n\
        `labels 0 1 0 1`; trailing singleton blocks may be omitted.\n\
        Congruences on a subuniverse are indexed by position within the\n\
        subuniverse's sorted element list.\n\
        Exit codes: 0 ok, 1 input/parse error, 2 precondition violation,\n\
        3 resource guard tripped."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Carrier-size guard for lattice-enumerating computations
    #[arg(long, global = true, default_value_t = 64)]
    max_size: usize,

    /// Re-run "largest" computations against the brute-force lattice
    /// oracle and diff (slow)
    #[arg(long, global = true)]
    oracle: bool,

    /// Cap on operation arity accepted by the .alg parser
    #[arg(long, global = true, default_value_t = 3)]
    max_arity: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an input file; with --variety, also check variety axioms
    Check {
        file: PathBuf,
        /// One of: monoid, group, semiring, ring, skew_brace
        #[arg(long)]
        variety: Option<String>,
    },
    /// Enumerate all congruences of an algebra, one per line
    Congruences { file: PathBuf },
    /// Syntactic congruence of a subset of the carrier
    Syn {
        file: PathBuf,
        /// Comma-separated elements, e.g. 0,2
        #[arg(long)]
        subset: String,
    },
    /// Saturation operator for a subuniverse U and a congruence S on U
    Forall {
        file: PathBuf,
        /// Comma-separated subuniverse elements
        #[arg(long)]
        sub: String,
        /// Congruence on U by positions in U (default: all related)
        #[arg(long)]
        cong: Option<String>,
    },
    /// Supremum of the congruences a subuniverse is normal to
    NormalSup {
        file: PathBuf,
        #[arg(long)]
        sub: String,
    },
    /// Centralizer of a congruence
    Centralizer {
        file: PathBuf,
        #[arg(long)]
        cong: String,
    },
    /// Does S centralize R (`[R,S] = 0`)?
    Connected {
        file: PathBuf,
        #[arg(long)]
        cong_r: String,
        #[arg(long)]
        cong_s: String,
    },
    /// Syntactic monoid of a DFA, printed as an .alg block
    Synmon { file: PathBuf },
    /// Generalized syntactic relation of a wide subcategory
    CatSyn {
        file: PathBuf,
        /// Comma-separated morphism indices of the wide subcategory
        #[arg(long)]
        wide: String,
        /// Hom-congruence on the subcategory by positions in the wide
        /// list (default: all parallel pairs related)
        #[arg(long)]
        cong: Option<String>,
    },
    /// Shifting Lemma check for congruences T, S, R with meet(R,S) ⊆ T
    Shift {
        file: PathBuf,
        #[arg(long)]
        cong_t: String,
        #[arg(long)]
        cong_s: String,
        #[arg(long)]
        cong_r: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match &e {
            CoreError::Parse { .. } | CoreError::BadBlocks(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("satkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(1, format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path, max_arity: usize) -> Result<FiniteAlgebra, Failure> {
    let text = read_file(path)?;
    let opts = ParseOptions { max_arity };
    parse_algebra_with(&text, opts).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn load_category(path: &Path) -> Result<FiniteCategory, Failure> {
    let text = read_file(path)?;
    parse_category(&text).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn parse_elements(s: &str) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| fail(1, format!("bad element `{tok}` in list `{s}`")))?;
        out.push(v);
    }
    Ok(out)
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    Partition::from_str(s).map_err(|e| fail(1, format!("bad partition `{s}`: {e}")))
}

/// A partition argument padded with singletons up to the carrier size, so
/// trailing singleton blocks may be omitted.
fn parse_partition_on(s: &str, n: usize, what: &str) -> Result<Partition, Failure> {
    let p = parse_partition(s)?;
    if p.size() > n {
        return Err(fail(
            2,
            format!(
                "{what} mentions element {} but the carrier has {n} elements",
                p.size() - 1
            ),
        ));
    }
    if p.size() == n {
        return Ok(p);
    }
    let mut labels: Vec<usize> = p.labels().to_vec();
    let mut next = p.num_classes();
    while labels.len() < n {
        labels.push(next);
        next += 1;
    }
    Ok(Partition::from_labels(&labels))
}

fn guard(len: usize, max_size: usize, what: &str) -> Result<(), Failure> {
    if len > max_size {
        return Err(fail(
            3,
            format!("{what} has {len} elements, above the --max-size guard of {max_size}"),
        ));
    }
    Ok(())
}

/// The element of `candidates` dominating every other, if one exists.
fn maximum(candidates: &[Partition]) -> Option<Partition> {
    candidates
        .iter()
        .find(|t| candidates.iter().all(|u| u.is_refinement_of(t)))
        .cloned()
}

fn oracle_diff(computed: &Partition, oracle: Option<Partition>, what: &str) -> Result<(), Failure> {
    match oracle {
        Some(expected) if &expected == computed => {
            println!("oracle: match");
            Ok(())
        }
        Some(expected) => Err(fail(
            2,
            format!("oracle mismatch for {what}: computed {computed}, oracle {expected}"),
        )),
        None => Err(fail(
            2,
            format!("oracle found no maximum for {what}; computed {computed}"),
        )),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Check { file, variety } => check_cmd(cli, file, variety.as_deref()),
        Command::Congruences { file } => {
            let a = load_algebra(file, cli.max_arity)?;
            guard(a.size(), cli.max_size, "the carrier")?;
            for c in all_congruences(&a) {
                println!("{c}");
            }
            Ok(())
        }
        Command::Syn { file, subset } => {
            let a = load_algebra(file, cli.max_arity)?;
            let w = parse_elements(subset)?;
            if w.is_empty() {
                return Err(fail(2, "empty subset"));
            }
            let result = syntactic_congruence(&a, &w)?;
            println!("{result}");
            if cli.oracle {
                guard(a.size(), cli.max_size, "the carrier")?;
                let candidates: Vec<Partition> = all_congruences(&a)
                    .into_iter()
                    .filter(|t| is_saturated(&w, t).unwrap_or(false))
                    .collect();
                oracle_diff(&result, maximum(&candidates), "syn")?;
            }
            Ok(())
        }
        Command::Forall { file, sub, cong } => {
            let a = load_algebra(file, cli.max_arity)?;
            let u = SubUniverse::new(&a, &parse_elements(sub)?)?;
            let s = match cong {
                Some(text) => parse_partition_on(text, u.len(), "--cong")?,
                None => Partition::indiscrete(u.len()),
            };
            let result = forall_u(&a, &u, &s)?;
            println!("{result}");
            if cli.oracle {
                guard(a.size(), cli.max_size, "the carrier")?;
                let candidates: Vec<Partition> = all_congruences(&a)
                    .into_iter()
                    .filter(|t| {
                        is_saturated(u.elements(), t).unwrap_or(false)
                            && restrict_congruence(t, &u)
                                .map(|r| r.is_refinement_of(&s))
                                .unwrap_or(false)
                    })
                    .collect();
                oracle_diff(&result, maximum(&candidates), "forall")?;
            }
            Ok(())
        }
        Command::NormalSup { file, sub } => {
            let a = load_algebra(file, cli.max_arity)?;
            let u = SubUniverse::new(&a, &parse_elements(sub)?)?;
            let result = normal_sup(&a, &u)?;
            match &result {
                Some(p) => println!("{p}"),
                None => println!("not normal to any congruence"),
            }
            if cli.oracle {
                guard(a.size(), cli.max_size, "the carrier")?;
                let candidates: Vec<Partition> = all_congruences(&a)
                    .into_iter()
                    .filter(|t| is_normal_to(&u, t).unwrap_or(false))
                    .collect();
                match (&result, maximum(&candidates)) {
                    (Some(p), oracle) => oracle_diff(p, oracle, "normal-sup")?,
                    (None, None) if candidates.is_empty() => println!("oracle: match"),
                    (None, _) => {
                        return Err(fail(
                            2,
                            "oracle mismatch for normal-sup: oracle found a supremum",
                        ))
                    }
                }
            }
            Ok(())
        }
        Command::Centralizer { file, cong } => {
            let a = load_algebra(file, cli.max_arity)?;
            let r = parse_partition_on(cong, a.size(), "--cong")?;
            let result = centralizer(&a, &r)?;
            let tag = if protomodular_tag(&a).is_some() {
                "protomodular"
            } else {
                "formal"
            };
            println!("{result} {tag}");
            if cli.oracle {
                let p = pair_algebra(&a, &r)?;
                guard(p.len(), cli.max_size, "the pair algebra")?;
                let d = p.diagonal();
                let candidates: Vec<Partition> = all_congruences(p.algebra())
                    .into_iter()
                    .filter(|t| is_saturated(d.elements(), t).unwrap_or(false))
                    .collect();
                let oracle = maximum(&candidates).map(|f| {
                    let labels: Vec<usize> = (0..a.size())
                        .map(|x| f.label(p.index_of(x, x).expect("diagonal")))
                        .collect();
                    Partition::from_labels(&labels)
                });
                oracle_diff(&result, oracle, "centralizer")?;
            }
            Ok(())
        }
        Command::Connected { file, cong_r, cong_s } => {
            let a = load_algebra(file, cli.max_arity)?;
            let r = parse_partition_on(cong_r, a.size(), "--cong-r")?;
            let s = parse_partition_on(cong_s, a.size(), "--cong-s")?;
            println!("{}", is_connected(&a, &r, &s)?);
            Ok(())
        }
        Command::Synmon { file } => {
            let text = read_file(file)?;
            let d = parse_dfa(&text).map_err(|e| fail(1, format!("{}: {e}", file.display())))?;
            let monoid = syntactic_monoid(&d)?;
            print!("{}", monoid.to_alg_string());
            println!("size: {}", monoid.size());
            Ok(())
        }
        Command::CatSyn { file, wide, cong } => {
            let d = load_category(file)?;
            let c = WideSubcategory::new(&d, &parse_elements(wide)?)?;
            let sub = c.to_category(&d);
            let s = match cong {
                Some(text) => parse_partition_on(text, c.len(), "--cong")?,
                None => parallel_indiscrete(&sub),
            };
            let result = cat_syntactic(&d, &c, &s)?;
            println!("{}", result.partition());
            if cli.oracle {
                guard(d.morphism_count(), cli.max_size, "the morphism set")?;
                let candidates: Vec<Partition> = all_hom_congruences(&d)
                    .into_iter()
                    .filter(|t| {
                        is_saturated(c.morphisms(), t).unwrap_or(false)
                            && t.restrict_to(c.morphisms())
                                .map(|r| r.is_refinement_of(&s))
                                .unwrap_or(false)
                    })
                    .collect();
                oracle_diff(result.partition(), maximum(&candidates), "cat-syn")?;
            }
            Ok(())
        }
        Command::Shift {
            file,
            cong_t,
            cong_s,
            cong_r,
        } => {
            let a = load_algebra(file, cli.max_arity)?;
            let t = parse_partition_on(cong_t, a.size(), "--cong-t")?;
            let s = parse_partition_on(cong_s, a.size(), "--cong-s")?;
            let r = parse_partition_on(cong_r, a.size(), "--cong-r")?;
            match check_shifting_lemma(&a, &t, &s, &r)? {
                ShiftingLemma::Holds => println!("holds"),
                ShiftingLemma::Violated(w) => println!(
                    "fails: x={} y={} x'={} y'={}",
                    w.x, w.y, w.x_prime, w.y_prime
                ),
            }
            Ok(())
        }
    }
}

fn check_cmd(cli: &Cli, file: &Path, variety: Option<&str>) -> Result<(), Failure> {
    let ext = file
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default();
    match ext {
        "alg" => {
            let a = load_algebra(file, cli.max_arity)?;
            match variety {
                Some(tag_str) => {
                    let tag: VarietyTag = tag_str
                        .parse()
                        .map_err(|e: CoreError| fail(1, e.to_string()))?;
                    match check_variety(&a, tag)? {
                        None => println!("{tag}: OK"),
                        Some(viol) => println!("{tag}: FAIL {viol}"),
                    }
                }
                None => println!("algebra {}: OK (size {})", a.name(), a.size()),
            }
            Ok(())
        }
        "cat" => {
            if variety.is_some() {
                return Err(fail(2, "--variety applies to .alg files only"));
            }
            let c = load_category(file)?;
            let kind = if catfib::is_groupoid(&c) {
                "groupoid"
            } else {
                "category"
            };
            println!(
                "{kind} {}: OK ({} objects, {} morphisms)",
                c.name(),
                c.object_count(),
                c.morphism_count()
            );
            Ok(())
        }
        "dfa" => {
            if variety.is_some() {
                return Err(fail(2, "--variety applies to .alg files only"));
            }
            let text = read_file(file)?;
            let d = parse_dfa(&text).map_err(|e| fail(1, format!("{}: {e}", file.display())))?;
            println!("dfa {}: OK ({} states)", d.name(), d.state_count());
            Ok(())
        }
        other => Err(fail(
            1,
            format!("unknown input format `.{other}` (expected .alg, .cat or .dfa)"),
        )),
    }
}
