//! Command-line front end. Exit codes: 0 success, 1 a check failed,
//! 2 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::borel::{
    borel_closure_generators, borel_minimalize, ek_betti, minimal_generators, random_borel_minimal,
    BorelIdeal,
};
use crate::builders::Builder;
use crate::complex::LabeledComplex;
use crate::error::{Error, Result};
use crate::io::{import_json, report_json, to_json_string};
use crate::koszul::betti_via_koszul_lattice;
use crate::lattice::{LcmLattice, DEFAULT_CHAIN_BUDGET};
use crate::linalg::Field;
use crate::monomial::{canonical_cmp, Monomial, VarRange};
use crate::resolution::{betti_from_cells, verify_resolution, BettiTable, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "borelcell",
    version,
    about = "Cellular resolutions of Borel fixed ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the minimal generators of an ideal.
    Gen(GenArgs),
    /// Print the Borel-minimal generators of the Borel ideal spanned by the input.
    Min(IdealArgs),
    /// Build a labeled cell complex.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Check that a complex supports a minimal free resolution.
    Verify(VerifyArgs),
    /// Betti numbers by cells, by Koszul homology, or by the Eliahou-Kervaire formula.
    Betti(BettiArgs),
    /// Inspect the lcm-lattice.
    Lattice(LatticeArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
struct IdealArgs {
    /// Number of variables.
    #[arg(long)]
    vars: usize,
    /// Borel generators, e.g. "ab,c^2" or "x1*x2,x3^2".
    #[arg(long, conflicts_with = "mono")]
    borel: Option<String>,
    /// Explicit monomial generators.
    #[arg(long)]
    mono: Option<String>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    vars: usize,
    #[arg(long, conflicts_with_all = ["mono", "random"])]
    borel: Option<String>,
    #[arg(long, conflicts_with = "random")]
    mono: Option<String>,
    /// Draw this many random degree-d monomials and keep the Borel-minimal ones.
    #[arg(long, requires = "degree")]
    random: Option<usize>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    /// P_d on all variables.
    #[command(name = "P", alias = "p")]
    P {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Q(I) for a Borel ideal generated in one degree.
    #[command(name = "Q", alias = "q")]
    Q {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_enum, default_value_t = QMethod::Recursive)]
        method: QMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum QMethod {
    Recursive,
    Extract,
    Both,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Complex in JSON form.
    #[arg(long)]
    complex: PathBuf,
    /// Ideal to check against; defaults to the ideal of the vertex labels.
    #[arg(long, conflicts_with = "mono")]
    borel: Option<String>,
    #[arg(long)]
    mono: Option<String>,
    /// `q` or `p:<prime>`.
    #[arg(long, env = "BORELCELL_FIELD", default_value = "q")]
    field: Field,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum BettiMethod {
    Cellular,
    Koszul,
    Ek,
    All,
}

#[derive(Args, Debug)]
struct BettiArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    #[arg(long, value_enum, default_value_t = BettiMethod::All)]
    method: BettiMethod,
    #[arg(long, env = "BORELCELL_FIELD", default_value = "q")]
    field: Field,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum LatticeCheck {
    Ranked,
    Labels,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    #[arg(long, value_enum)]
    check: Option<LatticeCheck>,
    /// Interval `m..n` for the label check; defaults to the whole lattice.
    #[arg(long)]
    interval: Option<String>,
    /// Maximal chains enumerated before giving up.
    #[arg(long, default_value_t = DEFAULT_CHAIN_BUDGET)]
    budget: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Normalized run parameters. Output paths and thread counts are left out,
/// so equal configurations hash equally wherever their artifacts go.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    command: String,
    params: Value,
}

impl RunConfig {
    fn new(command: &str, params: Value) -> Self {
        RunConfig {
            command: command.to_string(),
            params,
        }
    }

    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("serializable");
        Sha256::digest(&bytes)
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn envelope(&self, result: Value) -> Value {
        json!({
            "tool": "borelcell",
            "version": env!("CARGO_PKG_VERSION"),
            "config_hash": self.hash(),
            "config": self,
            "result": result,
        })
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Min(a) => cmd_min(a, out),
        Command::Complex(c) => cmd_complex(c, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Betti(a) => cmd_betti(a, out),
        Command::Lattice(a) => cmd_lattice(a, out),
    }
}

fn parse_list(text: &str, n: usize) -> Result<Vec<Monomial>> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Error::EmptyInput("generator list"));
    }
    items.into_iter().map(|t| Monomial::parse(t, n)).collect()
}

fn check_vars(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parse("--vars must be at least 1".into()));
    }
    Ok(())
}

impl IdealArgs {
    fn borel_ideal(&self) -> Result<BorelIdeal> {
        check_vars(self.vars)?;
        match (&self.borel, &self.mono) {
            (Some(b), _) => BorelIdeal::from_borel_gens(&parse_list(b, self.vars)?),
            (None, Some(m)) => BorelIdeal::from_generators(&parse_list(m, self.vars)?),
            (None, None) => Err(Error::EmptyInput("--borel or --mono")),
        }
    }

    /// Minimal generators, allowing mixed degrees.
    fn generators(&self) -> Result<Vec<Monomial>> {
        check_vars(self.vars)?;
        let mut g = match (&self.borel, &self.mono) {
            (Some(b), _) => borel_closure_generators(&parse_list(b, self.vars)?)?,
            (None, Some(m)) => minimal_generators(parse_list(m, self.vars)?),
            (None, None) => return Err(Error::EmptyInput("--borel or --mono")),
        };
        g.sort_by(canonical_cmp);
        g.dedup();
        Ok(g)
    }
}

fn canon(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(Monomial::canonical).collect()
}

fn show(ms: &[Monomial]) -> String {
    ms.iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_artifact(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, text)?;
    }
    Ok(())
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<i32> {
    check_vars(a.vars)?;
    let (borel, gens) = if let Some(s) = a.random {
        let d = a.degree.expect("clap enforces --degree");
        let ideal = random_borel_minimal(a.vars, d, s, a.seed)?;
        (ideal.borel_gens().to_vec(), ideal.generators().to_vec())
    } else {
        let ideal = IdealArgs {
            vars: a.vars,
            borel: a.borel.clone(),
            mono: a.mono.clone(),
        };
        let gens = ideal.generators()?;
        let borel = match &a.borel {
            Some(b) => parse_list(b, a.vars)?,
            None => Vec::new(),
        };
        (borel, gens)
    };
    if a.random.is_some() {
        writeln!(out, "# borel: {}", show(&borel))?;
    }
    for g in &gens {
        writeln!(out, "{g}")?;
    }
    let cfg = RunConfig::new(
        "gen",
        json!({"vars": a.vars, "borel": a.borel, "mono": a.mono, "random": a.random,
               "degree": a.degree, "seed": a.seed}),
    );
    let result = json!({"borel": canon(&borel), "generators": canon(&gens)});
    write_artifact(&a.out, &report_json(&cfg.envelope(result)))?;
    Ok(EXIT_OK)
}

fn cmd_min(a: IdealArgs, out: &mut dyn Write) -> Result<i32> {
    check_vars(a.vars)?;
    let text = a
        .borel
        .as_ref()
        .or(a.mono.as_ref())
        .ok_or(Error::EmptyInput("--borel or --mono"))?;
    let gens = parse_list(text, a.vars)?;
    for m in borel_minimalize(&gens)? {
        writeln!(out, "{m}")?;
    }
    Ok(EXIT_OK)
}

fn summarize_complex(x: &LabeledComplex, out: &mut dyn Write) -> Result<()> {
    let f: Vec<String> = x.f_vector().iter().map(|c| c.to_string()).collect();
    writeln!(out, "vertices: {}", x.vertex_labels().len())?;
    writeln!(out, "f-vector: ({})", f.join(", "))?;
    Ok(())
}

fn cmd_complex(c: ComplexCmd, out: &mut dyn Write) -> Result<i32> {
    match c {
        ComplexCmd::P {
            vars,
            degree,
            out: path,
        } => {
            check_vars(vars)?;
            let x = Builder::new().build_p(vars, VarRange::new(1, vars, vars)?, degree)?;
            summarize_complex(&x, out)?;
            write_artifact(&path, &to_json_string(&x))?;
            Ok(EXIT_OK)
        }
        ComplexCmd::Q {
            ideal,
            method,
            out: path,
        } => {
            let i = ideal.borel_ideal()?;
            let mut b = Builder::new();
            let x = match method {
                QMethod::Recursive => b.build_q_union(&i)?,
                QMethod::Extract => b.extract_q(&i)?,
                QMethod::Both => {
                    let r = b.build_q_union(&i)?;
                    let e = b.extract_q(&i)?;
                    summarize_complex(&r, out)?;
                    let same = r == e;
                    writeln!(
                        out,
                        "recursive = extract: {}",
                        if same { "yes" } else { "no" }
                    )?;
                    write_artifact(&path, &to_json_string(&r))?;
                    return Ok(if same { EXIT_OK } else { EXIT_FAILED });
                }
            };
            summarize_complex(&x, out)?;
            write_artifact(&path, &to_json_string(&x))?;
            Ok(EXIT_OK)
        }
    }
}

fn print_report(r: &VerificationReport, out: &mut dyn Write) -> Result<()> {
    let f: Vec<String> = r.f_vector.iter().map(|c| c.to_string()).collect();
    writeln!(out, "f-vector: ({})", f.join(", "))?;
    writeln!(out, "field: {}", r.field)?;
    writeln!(out, "lattice degrees: {}", r.lattice_degrees)?;
    for c in &r.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        match &c.witness {
            None => writeln!(out, "{}: {status}", c.name)?,
            Some(w) => {
                let mut detail = String::new();
                if let Some(d) = &w.degree {
                    detail.push_str(&format!(" at {d}"));
                }
                if let Some(id) = w.cell {
                    detail.push_str(&format!(" (cell {id})"));
                }
                if let Some(h) = &w.homology {
                    let nz: Vec<String> = h
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(j, v)| format!("H~_{} = {v}", j as isize - 1))
                        .collect();
                    detail.push_str(&format!(" [{}]", nz.join(", ")));
                }
                writeln!(out, "{}: {status}{detail}", c.name)?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let x = import_json(&a.complex)?;
    let gens = match (&a.borel, &a.mono) {
        (None, None) => x.vertex_labels().to_vec(),
        _ => IdealArgs {
            vars: x.n(),
            borel: a.borel.clone(),
            mono: a.mono.clone(),
        }
        .generators()?,
    };
    let r = verify_resolution(&x, &gens, a.field, a.jobs)?;
    print_report(&r, out)?;
    let cfg = RunConfig::new(
        "verify",
        json!({"complex_digest": r.complex_digest, "generators": canon(&gens),
               "field": a.field.to_string()}),
    );
    write_artifact(
        &a.report,
        &report_json(&cfg.envelope(serde_json::to_value(&r)?)),
    )?;
    Ok(if r.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn totals_or_empty(t: &Option<Vec<u64>>, i: usize) -> String {
    t.as_ref()
        .map_or("-".into(), |v| v.get(i).copied().unwrap_or(0).to_string())
}

fn cmd_betti(a: BettiArgs, out: &mut dyn Write) -> Result<i32> {
    let want = |m: BettiMethod| a.method == m || a.method == BettiMethod::All;
    let mut cellular: Option<BettiTable> = None;
    let mut koszul: Option<BettiTable> = None;
    let mut ek: Option<Vec<u64>> = None;
    let mut failed = false;
    if want(BettiMethod::Cellular) || want(BettiMethod::Ek) {
        let ideal = a.ideal.borel_ideal()?;
        if want(BettiMethod::Ek) {
            ek = Some(ek_betti(&ideal));
        }
        if want(BettiMethod::Cellular) {
            let x = Builder::new().build_q_union(&ideal)?;
            let r = verify_resolution(&x, ideal.generators(), a.field, a.jobs)?;
            match betti_from_cells(&x, &r) {
                Ok(t) => cellular = Some(t),
                Err(e) => {
                    writeln!(out, "cellular: {e}")?;
                    failed = true;
                }
            }
        }
    }
    if want(BettiMethod::Koszul) {
        koszul = Some(betti_via_koszul_lattice(&a.ideal.generators()?, a.field)?);
    }

    let ct = cellular.as_ref().map(BettiTable::totals);
    let kt = koszul.as_ref().map(BettiTable::totals);
    let len = [&ct, &kt, &ek]
        .iter()
        .filter_map(|t| t.as_ref().map(Vec::len))
        .max()
        .unwrap_or(0);
    let mut header = vec!["i"];
    let cols: Vec<(&str, &Option<Vec<u64>>)> = [("cellular", &ct), ("koszul", &kt), ("ek", &ek)]
        .into_iter()
        .filter(|(name, _)| match *name {
            "cellular" => want(BettiMethod::Cellular),
            "koszul" => want(BettiMethod::Koszul),
            _ => want(BettiMethod::Ek),
        })
        .collect();
    header.extend(cols.iter().map(|c| c.0));
    writeln!(out, "{}", header.join("\t"))?;
    for i in 0..len {
        let row: Vec<String> = std::iter::once(i.to_string())
            .chain(cols.iter().map(|c| totals_or_empty(c.1, i)))
            .collect();
        writeln!(out, "{}", row.join("\t"))?;
    }
    let present: Vec<&Vec<u64>> = cols.iter().filter_map(|c| c.1.as_ref()).collect();
    let mut agree = present.windows(2).all(|w| w[0] == w[1]);
    if let (Some(c), Some(k)) = (&cellular, &koszul) {
        agree &= c == k;
    }
    if a.method == BettiMethod::All {
        writeln!(
            out,
            "agree: {}",
            if agree && !failed { "yes" } else { "no" }
        )?;
    }

    let cfg = RunConfig::new(
        "betti",
        json!({"ideal": a.ideal, "method": a.method, "field": a.field.to_string()}),
    );
    let result = json!({
        "cellular": cellular.as_ref().map(BettiTable::to_json),
        "koszul": koszul.as_ref().map(BettiTable::to_json),
        "totals": {"cellular": ct, "koszul": kt, "ek": ek},
        "agree": agree && !failed,
    });
    write_artifact(&a.out, &report_json(&cfg.envelope(result)))?;
    Ok(if agree && !failed {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_lattice(a: LatticeArgs, out: &mut dyn Write) -> Result<i32> {
    let gens = a.ideal.generators()?;
    let l = LcmLattice::build(&gens)?;
    writeln!(out, "generators: {}", gens.len())?;
    writeln!(out, "elements: {}", l.len())?;
    writeln!(out, "covers: {}", l.cover_pairs().len())?;
    let mut code = EXIT_OK;
    let mut check = Value::Null;
    match a.check {
        None => {}
        Some(LatticeCheck::Ranked) => {
            let r = l.is_ranked();
            writeln!(out, "ranked: {}", if r.ranked { "yes" } else { "no" })?;
            if let Some(dc) = &r.degree_criterion {
                writeln!(
                    out,
                    "degree criterion: {}",
                    if dc.holds { "holds" } else { "fails" }
                )?;
            }
            if let Some(w) = &r.witness {
                writeln!(out, "witness element: {}", w.element)?;
                writeln!(out, "short chain: {}", w.short_chain.join(" < "))?;
                writeln!(out, "long chain: {}", w.long_chain.join(" < "))?;
                if let Some((m, n)) = &w.jump_cover {
                    writeln!(out, "jump cover: {m} -> {n}")?;
                }
                code = EXIT_FAILED;
            }
            check = serde_json::to_value(&r)?;
        }
        Some(LatticeCheck::Labels) => {
            let (lo, hi) = match &a.interval {
                None => (l.bottom().clone(), l.top().clone()),
                Some(s) => {
                    let (x, y) = s
                        .split_once("..")
                        .ok_or_else(|| Error::Parse(format!("interval {s:?} is not m..n")))?;
                    (
                        Monomial::parse(x, a.ideal.vars)?,
                        Monomial::parse(y, a.ideal.vars)?,
                    )
                }
            };
            let r = l.natural_label_check(&lo, &hi, a.budget)?;
            writeln!(out, "interval: [{lo}, {hi}]")?;
            writeln!(out, "maximal chains: {}", r.chains)?;
            writeln!(out, "rising label chains: {}", r.rising)?;
            writeln!(out, "falling label chains: {}", r.falling)?;
            for (name, c) in [("rising", &r.first_rising), ("falling", &r.first_falling)] {
                if let Some(c) = c {
                    let labels: Vec<String> = c.labels.iter().map(|x| x.to_string()).collect();
                    writeln!(
                        out,
                        "first {name}: {} ({})",
                        c.elements.join(" < "),
                        labels.join(",")
                    )?;
                }
            }
            check = serde_json::to_value(&r)?;
        }
    }
    let cfg = RunConfig::new(
        "lattice",
        json!({"ideal": a.ideal, "check": a.check, "interval": a.interval, "budget": a.budget}),
    );
    let result = json!({"lattice": l.to_json(), "check": check});
    write_artifact(&a.out, &report_json(&cfg.envelope(result)))?;
    Ok(code)
}
