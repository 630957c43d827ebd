//! Command-line front end. `dispatch` parses arguments, runs one
//! subcommand and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::cartan::{Params, RootElement};
use crate::character::QCharacter;
use crate::crystal::{mullineux, restricted_of_size, CrystalGraph};
use crate::decomp::{
    check_column_consistency, decomposition_matrix, irreducible_qcharacters, Block, DecompositionMatrix, MatrixCache,
    Method,
};
use crate::error::{Error, Result};
use crate::fock::verify_uqg_relations;
use crate::multipartition::{partitions, Multipartition};
use crate::seminormal::{build_seminormal, verify_klr_relations};
use crate::tableaux::{block_graded_dimension_codegree, block_graded_dimensions, specht_qcharacter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

/// Environment variable that overrides `--cache-dir`.
pub const CACHE_ENV: &str = "GRKAPPA_CACHE";

#[derive(Parser, Debug)]
#[command(name = "grkappa", version, about = "Graded representation theory of cyclotomic Hecke algebras")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Quantum characteristic (0 or at least 2).
    #[arg(long, global = true, default_value_t = 0)]
    e: u32,
    /// Comma-separated residues k_1,...,k_l.
    #[arg(long, global = true, default_value = "0")]
    kappa: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached decomposition matrices.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for per-block work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Llt,
    Bar,
    Extremal,
    All,
}

#[derive(Args, Debug)]
struct BlockSel {
    /// Size d: every block of multipartitions of d.
    #[arg(long, conflicts_with = "alpha")]
    d: Option<usize>,
    /// A single block, e.g. `0:2,1:1`.
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Blocks of size d with their multipartitions, restricted labels and defects.
    Blocks {
        #[command(flatten)]
        sel: BlockSel,
    },
    /// Graded Specht character of a multipartition.
    SpechtChar {
        #[arg(long)]
        mu: String,
    },
    /// Graded irreducible character of a restricted multipartition.
    IrrChar {
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Bar)]
        method: MethodArg,
    },
    /// Graded decomposition matrices.
    Decomp {
        #[command(flatten)]
        sel: BlockSel,
        #[arg(long, value_enum, default_value_t = MethodArg::Bar)]
        method: MethodArg,
    },
    /// Crystal graph of restricted multipartitions up to size d.
    Crystal {
        #[arg(long)]
        d: usize,
    },
    /// Restricted multipartitions of size d.
    Restricted {
        #[arg(long)]
        d: usize,
    },
    /// Mullineux image of an e-restricted partition.
    Mullineux {
        #[arg(long)]
        mu: String,
    },
    /// Graded dimensions of every e(i) H e(j) over the selected blocks.
    GradedDim {
        #[command(flatten)]
        sel: BlockSel,
    },
    /// Quantum-group relations on the truncated Fock space.
    FockVerify {
        #[arg(long)]
        dmax: usize,
    },
    /// KLR relations on seminormal representations (e = 0, level one).
    SeminormalCheck {
        #[arg(long, conflicts_with = "mu")]
        d: Option<usize>,
        #[arg(long)]
        mu: Option<String>,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 on bad input, 2 on a failed verification.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.common.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let (res, buf) = pool.install(|| {
                    let mut buf = Vec::new();
                    (run(&cli, &mut buf), buf)
                });
                let _ = out.write_all(&buf);
                res
            }
            Err(e) => Err(Error::Domain(format!("cannot start {n} workers: {e}"))),
        },
        None => run(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inconsistent(_) => EXIT_VERIFY,
                _ => EXIT_DOMAIN,
            }
        }
    }
}

fn params_of(c: &Common) -> Result<Params> {
    let kappa: Vec<i64> = c
        .kappa
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad residue `{t}` in --kappa"))))
        .collect::<Result<_>>()?;
    Params::new(c.e, &kappa)
}

fn cache_of(c: &Common) -> Option<MatrixCache> {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .or_else(|| c.cache_dir.clone())
        .map(MatrixCache::new)
}

fn parse_mu(s: &str, params: &Params) -> Result<Multipartition> {
    let mu: Multipartition = s.parse()?;
    if mu.level() != params.level() {
        return Err(Error::Domain(format!("{mu} has level {}, but kappa has level {}", mu.level(), params.level())));
    }
    Ok(mu)
}

fn block_contents(sel: &BlockSel, params: &Params) -> Result<Vec<RootElement>> {
    match (&sel.d, &sel.alpha) {
        (_, Some(a)) => Ok(vec![RootElement::parse(a, params.e)?]),
        (Some(d), None) => Ok(Block::contents_of_size(*d, params)),
        (None, None) => Err(Error::Domain("give --d or --alpha".into())),
    }
}

fn unsupported(format: Format, cmd: &str) -> Error {
    Error::Domain(format!("format {format:?} is not available for {cmd}").to_lowercase())
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn seq_text<T: ToString>(seq: &[T]) -> String {
    seq.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn character_text(ch: &QCharacter) -> String {
    let mut s = String::new();
    for (seq, p) in ch.iter() {
        s.push_str(&format!("({})  {p}\n", seq_text(seq)));
    }
    s
}

fn mp_list(v: &[Multipartition]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let c = &cli.common;
    let params = params_of(c)?;
    match &cli.cmd {
        Command::Blocks { sel } => {
            let contents = block_contents(sel, &params)?;
            let blocks: Vec<Block> = contents.par_iter().map(|a| Block::new(&params, a)).collect::<Result<_>>()?;
            match c.format {
                Format::Json => {
                    let v: Vec<_> = blocks
                        .iter()
                        .map(|b| {
                            json!({
                                "alpha": b.alpha,
                                "defect": params.defect(&b.alpha),
                                "multipartitions": mp_list(&b.rows),
                                "restricted": mp_list(&b.cols),
                            })
                        })
                        .collect();
                    emit_json(out, &json!(v))?;
                }
                Format::Text => {
                    for b in &blocks {
                        writeln!(out, "block {}  defect {}", b.alpha, params.defect(&b.alpha))?;
                        writeln!(out, "  multipartitions: {}", mp_list(&b.rows).join("  "))?;
                        writeln!(out, "  restricted:      {}", mp_list(&b.cols).join("  "))?;
                    }
                }
                f => return Err(unsupported(f, "blocks")),
            }
        }
        Command::SpechtChar { mu } => {
            let mu = parse_mu(mu, &params)?;
            let ch = specht_qcharacter(&mu, &params)?;
            match c.format {
                Format::Json => emit_json(out, &serde_json::to_value(&ch)?)?,
                Format::Text => write!(out, "{}", character_text(&ch))?,
                f => return Err(unsupported(f, "specht-char")),
            }
        }
        Command::IrrChar { mu, method } => {
            let mu = parse_mu(mu, &params)?;
            let block = Block::new(&params, &mu.content(&params))?;
            if !block.cols.contains(&mu) {
                return Err(Error::Domain(format!("{mu} is not restricted")));
            }
            let m = matrix_for(&block, *method, cache_of(c).as_ref())?.0;
            let irr = irreducible_qcharacters(&block, &m)?;
            let ch = &irr[&mu];
            match c.format {
                Format::Json => emit_json(out, &serde_json::to_value(ch)?)?,
                Format::Text => write!(out, "{}", character_text(ch))?,
                f => return Err(unsupported(f, "irr-char")),
            }
        }
        Command::Decomp { sel, method } => {
            let contents = block_contents(sel, &params)?;
            let cache = cache_of(c);
            let results: Vec<(DecompositionMatrix, bool)> = contents
                .par_iter()
                .map(|a| {
                    let block = Block::new(&params, a)?;
                    let (m, agree) = matrix_for(&block, *method, cache.as_ref())?;
                    let irr = irreducible_qcharacters(&block, &m)?;
                    check_column_consistency(&m, &irr)?;
                    Ok((m, agree))
                })
                .collect::<Result<_>>()?;
            let all_agree = results.iter().all(|(_, a)| *a);
            match c.format {
                Format::Json => {
                    let v: Vec<_> = results
                        .iter()
                        .map(|(m, _)| m.to_json())
                        .collect();
                    let mut doc = json!({ "blocks": v });
                    if *method == MethodArg::All {
                        doc["methods_agree"] = json!(all_agree);
                    }
                    emit_json(out, &doc)?;
                }
                Format::Csv => {
                    for (m, _) in &results {
                        writeln!(out, "# block {}", m.alpha)?;
                        write!(out, "{}", m.to_csv()?)?;
                    }
                }
                Format::Text => {
                    for (m, _) in &results {
                        writeln!(out, "block {}", m.alpha)?;
                        write!(out, "{}", m.to_text())?;
                    }
                }
                Format::Dot => return Err(unsupported(Format::Dot, "decomp")),
            }
            if *method == MethodArg::All {
                writeln!(out, "methods agree: {}", if all_agree { "yes" } else { "no" })?;
                if !all_agree {
                    return Ok(EXIT_VERIFY);
                }
            }
        }
        Command::Crystal { d } => {
            let g = CrystalGraph::new(*d, &params);
            match c.format {
                Format::Dot => write!(out, "{}", g.to_dot())?,
                Format::Json => emit_json(out, &serde_json::to_value(&g)?)?,
                Format::Text => {
                    for e in &g.edges {
                        writeln!(out, "{} -[{}]-> {}", e.source, e.i, e.target)?;
                    }
                }
                Format::Csv => return Err(unsupported(Format::Csv, "crystal")),
            }
        }
        Command::Restricted { d } => {
            let list = restricted_of_size(*d, &params);
            match c.format {
                Format::Json => emit_json(out, &json!(mp_list(&list)))?,
                Format::Text => {
                    for mu in &list {
                        writeln!(out, "{mu}")?;
                    }
                }
                f => return Err(unsupported(f, "restricted")),
            }
        }
        Command::Mullineux { mu } => {
            let mu = parse_mu(mu, &params)?;
            let image = mullineux(&mu, &params)?;
            match c.format {
                Format::Json => emit_json(out, &json!({ "mu": mu.to_string(), "image": image.to_string() }))?,
                Format::Text => writeln!(out, "{image}")?,
                f => return Err(unsupported(f, "mullineux")),
            }
        }
        Command::GradedDim { sel } => {
            let contents = block_contents(sel, &params)?;
            let mut rows = Vec::new();
            for alpha in &contents {
                for ((i, j), g) in block_graded_dimensions(&params, alpha)? {
                    let g2 = block_graded_dimension_codegree(&params, alpha, &i, &j)?;
                    if g != g2 {
                        return Err(Error::Inconsistent(format!("degree and codegree sums differ: {g} vs {g2}")));
                    }
                    rows.push((alpha.clone(), i, j, g));
                }
            }
            let total: num_bigint::BigInt = rows.iter().map(|r| r.3.eval_one()).sum();
            match c.format {
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(a, i, j, g)| json!({ "alpha": a, "i": i, "j": j, "qdim": g })).collect();
                    emit_json(out, &json!({ "entries": v, "total_at_q1": total.to_string() }))?;
                }
                Format::Text => {
                    for (_, i, j, g) in &rows {
                        writeln!(out, "({}) ({})  {g}", seq_text(i), seq_text(j))?;
                    }
                    writeln!(out, "total at q=1: {total}")?;
                }
                f => return Err(unsupported(f, "graded-dim")),
            }
        }
        Command::FockVerify { dmax } => {
            let report = verify_uqg_relations(*dmax, &params)?;
            match c.format {
                Format::Json => emit_json(out, &serde_json::to_value(&report)?)?,
                Format::Text => {
                    writeln!(out, "checks: {}", report.checks)?;
                    writeln!(out, "violations: {}", report.violations.len())?;
                    for v in &report.violations {
                        writeln!(out, "  {} on M[{}] (i={}, j={}): {}", v.relation, v.mu, v.i, v.j, v.defect)?;
                    }
                }
                f => return Err(unsupported(f, "fock-verify")),
            }
            if !report.passed() {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::SeminormalCheck { d, mu } => {
            let shapes: Vec<Multipartition> = match (d, mu) {
                (_, Some(m)) => vec![parse_mu(m, &params)?],
                (Some(d), None) => partitions(*d).iter().map(|p| Multipartition::single(p)).collect(),
                (None, None) => return Err(Error::Domain("give --d or --mu".into())),
            };
            let reports = shapes
                .par_iter()
                .map(|mu| {
                    let rep = build_seminormal(mu, &params)?;
                    Ok((mu.clone(), rep.dim(), verify_klr_relations(&rep, &params)))
                })
                .collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.2.passed());
            match c.format {
                Format::Json => {
                    let v: Vec<_> = reports
                        .iter()
                        .map(|(mu, dim, r)| json!({ "mu": mu.to_string(), "dim": dim, "report": r }))
                        .collect();
                    emit_json(out, &json!(v))?;
                }
                Format::Text => {
                    for (mu, dim, r) in &reports {
                        writeln!(out, "{mu}  dim {dim}  checks {}  violations {}", r.checks, r.violations.len())?;
                        for v in &r.violations {
                            writeln!(out, "  {} r={:?} i={:?}", v.relation, v.r, v.seq)?;
                        }
                    }
                }
                f => return Err(unsupported(f, "seminormal-check")),
            }
            if !passed {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

/// The matrix by one method (through the cache when given), or by all
/// three with an agreement flag.
fn matrix_for(block: &Block, method: MethodArg, cache: Option<&MatrixCache>) -> Result<(DecompositionMatrix, bool)> {
    let single = match method {
        MethodArg::Llt => Some(Method::Llt),
        MethodArg::Bar => Some(Method::Bar),
        MethodArg::Extremal => Some(Method::Extremal),
        MethodArg::All => None,
    };
    if let Some(m) = single {
        let matrix = match cache {
            Some(cache) => cache.get_or_compute(block, m)?,
            None => decomposition_matrix(block, m)?,
        };
        return Ok((matrix, true));
    }
    let mut methods = vec![Method::Bar, Method::Extremal];
    if block.params.level() == 1 && block.params.e.get() > 0 {
        methods.insert(0, Method::Llt);
    }
    let matrices: Vec<DecompositionMatrix> = methods.iter().map(|&m| decomposition_matrix(block, m)).collect::<Result<_>>()?;
    let agree = matrices.windows(2).all(|w| w[0] == w[1]);
    let first = matrices.into_iter().next().expect("at least two methods");
    if agree {
        if let Some(cache) = cache {
            cache.store(&block.params, &first)?;
        }
    }
    Ok((first, agree))
}
