use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use qset_core::clifford::{beta, BetaConvention, SeedSpace};
use qset_core::grassmann::Element;
use qset_core::hfs::{hexp, tier_range, Hfs, SERIAL_RANK_LIMIT};
use qset_core::interchange::{
    contraction_csv, element_to_json, format_rational, operator_from_json, render_table,
    structure_triplets_text, CliffordJson, FockJson, MatrixJson, StructureJson,
};
use qset_core::palev::{closure_check, contraction_sweep, pair_import};
use qset_core::quantify::{lift_rank, multiquantify, occupation, quantify, FockBasis, FockOperator};
use qset_core::syntax::{parse_element, parse_set, print_canonical};
use qset_core::QsetError;

#[derive(Parser)]
#[command(name = "qset", version, about = "Exact algebra of hereditarily finite quantum sets")]
struct Cli {
    /// Largest rank any parsed or produced set may reach
    #[arg(long, global = true, default_value_t = SERIAL_RANK_LIMIT)]
    rank_guard: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Literal,
    Chevalley,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of an expression
    Normalize { expr: String },
    /// Serial number of a set
    Serial { set: String },
    /// Set with the given serial number
    Unserial { n: String },
    /// Wedge product a ^ b
    Wedge { a: String, b: String },
    /// Association x -> {x}, extended linearly
    Iota { expr: String },
    /// Grade operator, or the grade-g part with --project
    Grade {
        expr: String,
        #[arg(long)]
        project: Option<usize>,
    },
    /// Largest rank among the terms
    Rank { expr: String },
    /// Serial range [low, high) of tier r
    Tier { r: u32 },
    /// Iterated power of two
    Hexp { r: u32 },
    /// Serial, rank and set for every serial up to the bound
    Table {
        #[arg(long, default_value_t = 24)]
        max_serial: u64,
    },
    /// Normal-ordered product v_i v_j of two duplex generators
    Pair {
        #[arg(long)]
        dim: usize,
        i: usize,
        j: usize,
    },
    /// Spinor form of two elements over the first d sets
    Beta {
        #[arg(long, value_enum, default_value_t = Convention::Chevalley)]
        convention: Convention,
        #[arg(long)]
        dim: usize,
        a: String,
        b: String,
    },
    /// Fock operator of a one-body matrix file
    Quantify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Occupation number operator of one seed label over the first d sets
    Occupation {
        #[arg(long)]
        dim: usize,
        set: String,
    },
    /// Lifts an operator on all sets of rank r to rank r+1 (or to --to)
    Lift {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        to: Option<u32>,
    },
    /// Structure constants of the bivector Lie algebra
    PalevClosure {
        #[arg(long)]
        dim: usize,
    },
    /// Residual of the canonical relation for rescaled spin-j matrices
    Contract {
        #[arg(long, value_delimiter = ',', required = true)]
        j: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<u64>,
    },
}

struct Ctx {
    guard: u32,
    format: Format,
}

impl Ctx {
    fn element(&self, text: &str) -> qset_core::Result<Element> {
        parse_element(text, self.guard)
    }

    fn guarded(&self, a: Element) -> qset_core::Result<Element> {
        if a.rank() > self.guard {
            return Err(QsetError::RankGuard {
                rank: a.rank(),
                limit: self.guard,
            });
        }
        Ok(a)
    }

    fn show_element(&self, a: &Element) -> qset_core::Result<String> {
        match self.format {
            Format::Text => Ok(print_canonical(a)),
            Format::Json => element_to_json(a),
        }
    }

    fn show_value(&self, key: &str, text: String) -> String {
        match self.format {
            Format::Text => text,
            Format::Json => json!({ key: text }).to_string(),
        }
    }

    fn show_fock(&self, op: &FockOperator) -> String {
        match self.format {
            Format::Json => serde_json::to_string(&FockJson::from_operator(op)).expect("serializable"),
            Format::Text => {
                let basis = op.basis().monomials();
                let mut entries: Vec<_> = op.triplets().collect();
                entries.sort_by_key(|(r, c, _)| (*r, *c));
                entries
                    .into_iter()
                    .map(|(r, c, v)| format!("{}\t{}\t{}", basis[r], basis[c], v))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
    }
}

fn read(path: &PathBuf) -> qset_core::Result<String> {
    fs::read_to_string(path).map_err(|e| QsetError::Invalid(format!("{}: {e}", path.display())))
}

fn full_rank_operator(text: &str) -> qset_core::Result<FockOperator> {
    let file: MatrixJson = serde_json::from_str(text).map_err(|e| QsetError::Invalid(e.to_string()))?;
    let h = file.to_operator()?;
    let n = h.dim();
    let r = (0..=3u32)
        .find(|&r| hexp(r).ok().map(|h| h == BigUint::from(n)).unwrap_or(false))
        .ok_or_else(|| QsetError::Invalid(format!("basis of size {n} is not all sets of one rank")))?;
    let basis = FockBasis::rank(r)?;
    if basis.monomials().iter().map(|m| m.as_hfs()).ne(h.seed.labels().iter()) {
        return Err(QsetError::Invalid(format!(
            "basis must list serials 0..{n} in ascending order"
        )));
    }
    FockOperator::from_dense(basis, &h.matrix)
}

fn run(cli: Cli) -> qset_core::Result<String> {
    let ctx = Ctx {
        guard: cli.rank_guard,
        format: cli.format,
    };
    match cli.command {
        Command::Normalize { expr } => ctx.show_element(&ctx.element(&expr)?),
        Command::Serial { set } => {
            let x = parse_set(&set, ctx.guard)?;
            Ok(ctx.show_value("serial", x.serial()?.to_string()))
        }
        Command::Unserial { n } => {
            let n = BigUint::from_str(n.trim()).map_err(|_| QsetError::Invalid(format!("bad serial {n:?}")))?;
            let limit = ctx.guard.min(SERIAL_RANK_LIMIT);
            if n >= hexp(limit)? {
                return Err(QsetError::RankGuard {
                    rank: limit + 1,
                    limit,
                });
            }
            let x = Hfs::from_serial(&n);
            match ctx.format {
                Format::Text => Ok(x.to_string()),
                Format::Json => Ok(json!({ "set": x.to_string(), "nested": x, "rank": x.rank() }).to_string()),
            }
        }
        Command::Wedge { a, b } => {
            let w = ctx.element(&a)?.wedge(&ctx.element(&b)?);
            ctx.show_element(&ctx.guarded(w)?)
        }
        Command::Iota { expr } => ctx.show_element(&ctx.element(&expr)?.iota_guarded(ctx.guard)?),
        Command::Grade { expr, project } => {
            let a = ctx.element(&expr)?;
            ctx.show_element(&match project {
                Some(g) => a.grade_project(g),
                None => a.grade_op(),
            })
        }
        Command::Rank { expr } => Ok(ctx.show_value("rank", ctx.element(&expr)?.rank().to_string())),
        Command::Tier { r } => {
            let (lo, hi) = tier_range(r)?;
            match ctx.format {
                Format::Text => Ok(format!("[{lo}, {hi})")),
                Format::Json => Ok(json!({ "low": lo.to_string(), "high": hi.to_string() }).to_string()),
            }
        }
        Command::Hexp { r } => Ok(ctx.show_value("hexp", hexp(r)?.to_string())),
        Command::Table { max_serial } => {
            if max_serial >= 65536 {
                return Err(QsetError::RankGuard { rank: 5, limit: 4 });
            }
            match ctx.format {
                Format::Text => Ok(render_table(max_serial).trim_end().to_string()),
                Format::Json => {
                    let rows: Vec<_> = (0..=max_serial)
                        .map(|n| {
                            let x = Hfs::from_serial_u64(n);
                            json!({ "serial": n.to_string(), "rank": x.rank(), "set": x.to_string() })
                        })
                        .collect();
                    Ok(serde_json::Value::from(rows).to_string())
                }
            }
        }
        Command::Pair { dim, i, j } => {
            let p = pair_import(dim, i, j)?;
            match ctx.format {
                Format::Text => Ok(p.to_string()),
                Format::Json => Ok(serde_json::to_string(&CliffordJson::from_element(&p)).expect("serializable")),
            }
        }
        Command::Beta { convention, dim, a, b } => {
            let seed = SeedSpace::first(dim)?;
            let convention = match convention {
                Convention::Literal => BetaConvention::Literal,
                Convention::Chevalley => BetaConvention::Chevalley,
            };
            let v = beta(convention, &ctx.element(&a)?, &ctx.element(&b)?, &seed)?;
            Ok(ctx.show_value("beta", format_rational(&v)))
        }
        Command::Quantify { matrix } => {
            let h = operator_from_json(&read(&matrix)?)?;
            Ok(ctx.show_fock(&quantify(&h)?))
        }
        Command::Occupation { dim, set } => {
            let seed = SeedSpace::first(dim)?;
            let x = parse_set(&set, ctx.guard)?;
            Ok(ctx.show_fock(&occupation(&seed, &x)?))
        }
        Command::Lift { matrix, to } => {
            let op = full_rank_operator(&read(&matrix)?)?;
            let from = op.basis().full_rank().expect("full rank basis");
            let lifted = match to {
                Some(to) => multiquantify(&op, from, to)?,
                None => lift_rank(&op)?,
            };
            Ok(ctx.show_fock(&lifted))
        }
        Command::PalevClosure { dim } => {
            let t = closure_check(dim)?;
            match ctx.format {
                Format::Text => Ok(structure_triplets_text(&t).trim_end().to_string()),
                Format::Json => Ok(serde_json::to_string(&StructureJson::from_tensor(&t)).expect("serializable")),
            }
        }
        Command::Contract { j, k } => {
            let samples = contraction_sweep(&j, &k)?;
            match ctx.format {
                Format::Text => Ok(contraction_csv(&samples).trim_end().to_string()),
                Format::Json => {
                    let rows: Vec<_> = samples
                        .iter()
                        .map(|s| json!({ "j": s.j, "k": s.k, "residual": s.residual }))
                        .collect();
                    Ok(serde_json::Value::from(rows).to_string())
                }
            }
        }
    }
}

fn exit_code(e: &QsetError) -> u8 {
    match e {
        QsetError::RankGuard { .. } | QsetError::SizeGuard(_) => 3,
        QsetError::ClosureViolation { .. } => 4,
        QsetError::Syntax { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qset: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
