//! `bchwb`: command-line front end for the BCH workbench.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bch_workbench::arith::prime_power;
use bch_workbench::codes::{bch_build, dual, write_codewords, CodeSpec, LinearCode, TraceDual};
use bch_workbench::cyclotomic::{coset, coset_leaders, CyclotomicCoset};
use bch_workbench::designs::{
    supports_of_weight, verify_design, weight4_blocks_det, weight5_blocks_rank, write_blocks, Block, Source,
};
use bch_workbench::enumerate::{check_budget, DEFAULT_BUDGET};
use bch_workbench::galois::field;
use bch_workbench::subfield::{report_row, report_tables, reports_csv, reports_text, table_rows, TableRow};
use bch_workbench::verify::{verify, Instance, Verification, CLAIM_IDS};
use bch_workbench::weights::{classify_from_distributions, macwilliams, weight_distribution, WeightDistribution};
use bch_workbench::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bchwb", version, about = "BCH codes of length q+1: weights, designs and subfield subcodes")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Largest number of items a single enumeration may visit.
    #[arg(long, global = true, env = "WORKBENCH_BUDGET", default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: u128,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sampling; every check shipped here is exhaustive,
    /// so it is only recorded.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn parse_budget(s: &str) -> std::result::Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Code,
    Dual,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BlockMethod {
    /// Check subsets for the code, trace pairs for the dual.
    Auto,
    /// Enumerate every codeword of the chosen side.
    Enumerate,
    /// Solve the parity checks on every k-subset (code side).
    Subsets,
    /// Vanishing 4x4 determinants (code side, weight 4).
    Det,
    /// One-dimensional null spaces of 4x5 submatrices (code side, weight 5).
    Rank,
}

#[derive(Args, Clone, Copy)]
struct CodeArgs {
    #[arg(long)]
    q: u64,
    /// Defaults to q+1.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = 3)]
    delta: u64,
    #[arg(long)]
    h: u64,
}

impl CodeArgs {
    fn spec(&self) -> CodeSpec {
        CodeSpec::new(self.q, self.n.unwrap_or(self.q + 1), self.delta, self.h)
    }

    fn antiprimitive(&self) -> bool {
        self.n.is_none_or(|n| n == self.q + 1) && self.delta == 3
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parameters and primitive modulus of GF(p^m).
    Field {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
    },
    /// q-cyclotomic cosets modulo n, or the one containing s.
    Coset {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: Option<u64>,
    },
    /// Build C_(q,n,delta,h).
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Also dump every codeword to this file.
        #[arg(long)]
        codewords: Option<PathBuf>,
    },
    /// Weight distribution of the code or its dual.
    Wdist {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Side::Code)]
        side: Side,
        /// Use the orbit reduction of the trace representation.
        #[arg(long)]
        orbits: bool,
    },
    /// MDS / NMDS / AMDS-not-NMDS / ordinary.
    Classify {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Check that the supports of the weight-k codewords form a t-design.
    Design {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Side::Code)]
        side: Side,
        #[arg(long, value_enum, default_value_t = BlockMethod::Auto)]
        method: BlockMethod,
        /// Also write the block file here.
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
    /// Subfield subcode parameters: one instance, or the whole table.
    Subfield {
        #[arg(long, requires_all = ["h", "t"])]
        q: Option<u64>,
        #[arg(long)]
        h: Option<u64>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Check one claim on one instance.
    Verify {
        #[arg(value_parser = CLAIM_IDS)]
        id: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        h: Option<u64>,
        #[arg(long)]
        family: Option<String>,
    },
}

fn emit(run: &RunConfig, body: &str) -> Result<()> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &run.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn cmd_field(run: &RunConfig, p: u32, m: u32) -> Result<String> {
    let f = field(p, m)?;
    let spec = f.spec();
    let modulus: Vec<String> = spec.modulus.iter().map(|c| c.to_string()).collect();
    Ok(match run.format {
        Format::Json => pretty(&serde_json::to_value(&spec)?),
        Format::Csv => format!("p,m,modulus\n{},{},{}", spec.p, spec.m, modulus.join(" ")),
        Format::Text => format!(
            "GF({}^{}) of order {}\nmodulus coefficients (constant term first): {}",
            spec.p,
            spec.m,
            f.order(),
            modulus.join(" ")
        ),
    })
}

fn cmd_coset(run: &RunConfig, n: u64, q: u64, s: Option<u64>) -> Result<String> {
    let cosets: Vec<CyclotomicCoset> = match s {
        Some(s) => vec![coset(n, q, s)?],
        None => coset_leaders(n, q)?,
    };
    let join = |c: &CyclotomicCoset| c.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
    Ok(match run.format {
        Format::Json if s.is_some() => pretty(&serde_json::to_value(&cosets[0])?),
        Format::Json => pretty(&serde_json::to_value(&cosets)?),
        Format::Csv => {
            let mut out = String::from("leader,size,members\n");
            for c in &cosets {
                out.push_str(&format!("{},{},{}\n", c.leader, c.members.len(), join(c)));
            }
            out
        }
        Format::Text => cosets
            .iter()
            .map(|c| format!("C_{} = {{{}}}", c.leader, join(c)))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn code_summary(run: &RunConfig, code: &LinearCode) -> String {
    let g: Vec<String> = code
        .gen_poly
        .iter()
        .flat_map(|g| g.coeffs.iter().map(|c| c.to_string()))
        .collect();
    match run.format {
        Format::Json => pretty(&code.to_json()),
        Format::Csv => format!(
            "q,n,k,family,gen_poly\n{},{},{},{},{}",
            code.q(),
            code.n,
            code.k,
            code.family.label(),
            g.join(" ")
        ),
        Format::Text => format!(
            "[{}, {}] code over GF({}), family {}\ngenerator polynomial (constant term first): {}",
            code.n,
            code.k,
            code.q(),
            code.family.label(),
            g.join(" ")
        ),
    }
}

fn cmd_build(run: &RunConfig, args: CodeArgs, codewords: Option<&Path>) -> Result<String> {
    let code = bch_build(args.spec())?;
    if let Some(path) = codewords {
        check_budget(code.q(), code.k, run.budget)?;
        let mut w = create(path)?;
        write_codewords(&code, run.budget, &mut w)?;
        w.flush()?;
    }
    Ok(code_summary(run, &code))
}

fn distributions(run: &RunConfig, args: CodeArgs, orbits: bool) -> Result<(WeightDistribution, WeightDistribution)> {
    if orbits {
        if !args.antiprimitive() {
            bail!(Error::InvalidParameters("--orbits needs n = q+1 and delta = 3".into()));
        }
        let td = TraceDual::new(args.q, args.h)?;
        let d = WeightDistribution::from_counts(td.n(), args.q, 4, &td.distribution_by_orbits());
        return Ok((macwilliams(&d)?, d));
    }
    let code = bch_build(args.spec())?;
    let a = weight_distribution(&code, run.budget)?;
    let d = macwilliams(&a)?;
    Ok((a, d))
}

fn cmd_wdist(run: &RunConfig, args: CodeArgs, side: Side, orbits: bool) -> Result<String> {
    let (a, d) = distributions(run, args, orbits)?;
    let w = if side == Side::Code { a } else { d };
    Ok(match run.format {
        Format::Json => pretty(&w.to_json()),
        Format::Csv => w.to_csv(),
        Format::Text => {
            let mut out = format!("[{}, {}] over GF({})\n", w.n, w.k, w.q);
            for i in w.support() {
                out.push_str(&format!("A_{i} = {}\n", w.counts[i]));
            }
            out
        }
    })
}

fn cmd_classify(run: &RunConfig, args: CodeArgs) -> Result<String> {
    let (a, d) = distributions(run, args, false)?;
    let c = classify_from_distributions(&a, &d)?;
    Ok(match run.format {
        Format::Json => pretty(&serde_json::to_value(&c)?),
        Format::Csv => format!(
            "label,n,k,d,d_dual,singleton_defect,dual_defect\n{},{},{},{},{},{},{}",
            c.label.as_str(),
            c.n,
            c.k,
            c.d,
            c.d_dual,
            c.singleton_defect,
            c.dual_defect
        ),
        Format::Text => format!(
            "{}: [{}, {}, {}], dual [{}, {}, {}]",
            c.label.as_str(),
            c.n,
            c.k,
            c.d,
            c.n,
            c.n - c.k,
            c.d_dual
        ),
    })
}

fn design_blocks(run: &RunConfig, args: CodeArgs, weight: usize, side: Side, method: BlockMethod) -> Result<Vec<Block>> {
    let code = bch_build(args.spec())?;
    let b = run.budget;
    let blocks = match (side, method) {
        (Side::Code, BlockMethod::Auto | BlockMethod::Subsets) => {
            supports_of_weight(Source::CheckSubsets(&code), weight, b)?.blocks()?
        }
        (Side::Code, BlockMethod::Enumerate) => supports_of_weight(Source::Code(&code), weight, b)?.blocks()?,
        (Side::Code, BlockMethod::Det) if weight == 4 && args.antiprimitive() => weight4_blocks_det(args.q, args.h, b)?,
        (Side::Code, BlockMethod::Rank) if weight == 5 && args.antiprimitive() => weight5_blocks_rank(args.q, args.h, b)?,
        (Side::Dual, BlockMethod::Auto) if args.antiprimitive() => {
            let td = TraceDual::new(args.q, args.h)?;
            supports_of_weight(Source::TraceDual(&td), weight, b)?.blocks()?
        }
        (Side::Dual, BlockMethod::Auto | BlockMethod::Enumerate) => {
            supports_of_weight(Source::Code(&dual(&code)), weight, b)?.blocks()?
        }
        _ => bail!(Error::InvalidParameters(
            "det needs weight 4, rank needs weight 5, both on the code side of C_(q,q+1,3,h)".into()
        )),
    };
    Ok(blocks)
}

fn cmd_design(
    run: &RunConfig,
    args: CodeArgs,
    weight: usize,
    t: usize,
    side: Side,
    method: BlockMethod,
    blocks_path: Option<&Path>,
) -> Result<String> {
    let blocks = design_blocks(run, args, weight, side, method)?;
    let n = args.n.unwrap_or(args.q + 1) as usize;
    if let Some(path) = blocks_path {
        let mut w = create(path)?;
        write_blocks(n, weight, &blocks, &mut w)?;
        w.flush()?;
    }
    if blocks.is_empty() {
        bail!(Error::InvalidParameters(format!("no codewords of weight {weight}")));
    }
    let design = verify_design(&blocks, n, t)?;
    let cert = design.certificate();
    Ok(match run.format {
        Format::Json => pretty(&cert),
        Format::Csv => format!(
            "n,k,t,lambda,b,steiner\n{},{},{},{},{},{}",
            cert["n"], cert["k"], cert["t"], cert["lambda"], cert["b"], cert["steiner"]
        ),
        Format::Text => format!(
            "{}-({},{},{}) design with {} blocks{}",
            design.t,
            design.n_points,
            design.k,
            design.lambda,
            design.b,
            if cert["steiner"] == true { " (Steiner system)" } else { "" }
        ),
    })
}

fn cmd_subfield(run: &RunConfig, instance: Option<(u64, u64, u32)>) -> Result<String> {
    let reports = match instance {
        None => report_tables(run.budget)?,
        Some((q, h, t)) => {
            let spec = CodeSpec::antiprimitive(q, h);
            let s = prime_power(q).map_or(0, |(_, s)| s);
            let row = table_rows()
                .into_iter()
                .find(|r| r.parent == spec && r.t == t)
                .unwrap_or(TableRow {
                    s,
                    t,
                    parent: spec,
                    published: [0; 3],
                    published_dual: [0; 3],
                    note: "",
                });
            let rep = report_row(&row, run.budget)?;
            vec![rep]
        }
    };
    Ok(match run.format {
        Format::Json => pretty(&serde_json::to_value(&reports)?),
        Format::Csv => reports_csv(&reports),
        Format::Text => reports_text(&reports),
    })
}

fn cmd_verify(run: &RunConfig, id: &str, inst: Instance) -> Result<(String, bool)> {
    let v: Verification = verify(id, &inst, run.budget)?;
    let passed = v.passed();
    let body = match run.format {
        Format::Json => pretty(&json!({
            "id": v.id,
            "instance": v.instance,
            "passed": passed,
            "seed": run.seed,
            "assertions": v.assertions,
        })),
        Format::Csv => {
            let mut out = String::from("claim,formula,enumerated,pass\n");
            for a in &v.assertions {
                let q = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
                out.push_str(&format!("{},{},{},{}\n", q(&a.claim), q(&a.formula), q(&a.enumerated), a.pass));
            }
            out
        }
        Format::Text => v.to_text(),
    };
    Ok((body, passed))
}

/// Exit status: 0 success, 1 falsified claim, 2 bad input, 3 budget.
fn run(cli: Cli) -> Result<u8> {
    let run = &cli.run;
    if let Some(n) = run.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global()?;
    }
    let mut status = 0;
    let body = match cli.cmd {
        Command::Field { p, m } => cmd_field(run, p, m)?,
        Command::Coset { n, q, s } => cmd_coset(run, n, q, s)?,
        Command::Build { code, codewords } => cmd_build(run, code, codewords.as_deref())?,
        Command::Wdist { code, side, orbits } => cmd_wdist(run, code, side, orbits)?,
        Command::Classify { code } => cmd_classify(run, code)?,
        Command::Design {
            code,
            weight,
            t,
            side,
            method,
            blocks,
        } => cmd_design(run, code, weight, t, side, method, blocks.as_deref())?,
        Command::Subfield { q, h, t } => cmd_subfield(run, q.map(|q| (q, h.unwrap(), t.unwrap())))?,
        Command::Verify { id, q, s, i, h, family } => {
            let (body, passed) = cmd_verify(run, &id, Instance { q, s, i, h, family })?;
            if !passed {
                status = 1;
            }
            body
        }
    };
    emit(run, &body)?;
    Ok(status)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(e) if e.is_falsification() => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
