//! Command-line configuration, dispatch and report output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::SparseOp;
use crate::io::{dump_op, form_json, load_form, load_forms};
use crate::lefschetz::{
    bracket_table, build_basis, hodge_check, root_records, root_system, structure_records, su2_check, weight_decompose,
    weight_records, OpName, OperatorBasis,
};
use crate::quaternionic::{rational_sphere_point, standard_triple, Quaternion, SpherePoint};
use crate::replib::random::{distinct_sphere_points, rng, SeededRng};
use crate::replib::{
    ao_invariants_check, c_equivariance_records, c_operator, c_power_det, central_constant_check, fix_locus,
    fix_locus_bound_check, general_type_scan, gm_invariants, highest_weight_check, invariance_type_check,
    random::random_combination, sphere_json, theorem21_check, theorem21_random, FixLocus,
};
use crate::report::{CheckRecord, Report};
use crate::scalar::parse_rational;

/// Largest `q` accepted without `--allow-large`.
pub const Q_GUARD: usize = 3;

pub const SEED_ENV: &str = "HK_SEED";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "hk", version, about = "Exact checks of the Lefschetz so(5) action on forms over flat R^{4q}")]
pub struct Cli {
    /// Quaternionic dimension; the fiber is R^{4q}.
    #[arg(long, global = true, default_value_t = 1)]
    pub q: usize,
    /// Seed for every random draw. HK_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Permit q above the memory guard.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// su(2) relations, Hodge operator, bracket table and root system.
    Verify,
    /// Root system of the operator algebra and the highest-weight property of det.
    Roots,
    /// H on each degree and the joint (degree, adI) eigenspace table.
    Hodge,
    /// Invariant basis in one degree, and invariance vs (p,p)-type on random forms.
    Invariants {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 50)]
        forms: usize,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Invariant part of the submodule generated by det.
    Ao,
    /// Top-degree identity for invariant forms.
    Thm21 {
        /// Check the primitive multiple of C^k(det).
        #[arg(long, conflicts_with = "random_invariant")]
        k: Option<usize>,
        #[arg(long, requires = "degree")]
        random_invariant: bool,
        #[arg(long, requires = "random_invariant")]
        degree: Option<usize>,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Fix locus of one form, or the bound on random non-invariant forms.
    Fixlocus {
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
    /// Per-class fix loci and general-type witnesses among sampled structures.
    Scan {
        #[arg(long)]
        classes: PathBuf,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Extra sample point in stereographic coordinates, rationals as "p/q".
        #[arg(long, num_args = 2, value_names = ["U", "V"], allow_hyphen_values = true, action = clap::ArgAction::Append)]
        point: Vec<String>,
        /// Also sample ±I, ±J, ±K.
        #[arg(long)]
        include_axes: bool,
    },
    /// Write one operator as a sparse JSON column file.
    DumpOp {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A validated run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub q: usize,
    pub command: Command,
    pub seed: u64,
    pub threads: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub allow_large: bool,
}

impl RunConfig {
    pub fn new(q: usize, command: Command) -> Self {
        RunConfig { q, command, seed: 0, threads: 1, output: None, format: Format::Json, allow_large: false }
    }

    /// Builds the config from parsed arguments; `env_seed` (the value of
    /// `HK_SEED`, if set) takes precedence over `--seed`.
    pub fn from_cli(cli: Cli, env_seed: Option<String>) -> Result<Self> {
        let seed = match env_seed {
            Some(s) => s.trim().parse().map_err(|_| Error::Input(format!("{SEED_ENV}={s:?} is not a seed")))?,
            None => cli.seed,
        };
        let cfg = RunConfig {
            q: cli.q,
            command: cli.command,
            seed,
            threads: cli.threads,
            output: cli.output,
            format: cli.format,
            allow_large: cli.allow_large,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(Error::Input("q must be at least 1".into()));
        }
        if self.q > Q_GUARD && !self.allow_large {
            return Err(Error::Input(format!("q = {} exceeds {Q_GUARD}; pass --allow-large", self.q)));
        }
        if self.threads == 0 {
            return Err(Error::Input("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// The part of the config echoed into reports. Thread count and output
    /// location are left out so they cannot change the report bytes.
    pub fn echo(&self) -> Value {
        json!({ "q": self.q, "seed": self.seed, "run": self.command })
    }
}

/// Runs the command and returns its report with the exit code (0 all pass, 1 some check failed).
/// Errors carry their own exit code via [`Error::exit_code`].
pub fn run(cfg: &RunConfig) -> Result<(Report, i32)> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    let records = pool.install(|| dispatch(cfg))?;
    let report = Report::new(cfg.echo(), records);
    let code = if report.passed() { 0 } else { 1 };
    Ok((report, code))
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    }
}

/// Entry point for the binary: parse, run, write, and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = RunConfig::from_cli(cli, std::env::var(SEED_ENV).ok())
        .and_then(|cfg| run(&cfg).map(|r| (cfg, r)))
        .and_then(|(cfg, (report, code))| {
            let text = render(&report, cfg.format);
            match &cfg.output {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(code)
        });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let b = build_basis(&standard_triple(cfg.q)?)?;
    let mut rng = rng(cfg.seed);
    match &cfg.command {
        Command::Verify => verify(&b),
        Command::Roots => roots(&b),
        Command::Hodge => {
            let mut out = hodge_check(&b)?;
            let tbl = weight_decompose(&b, 0..=b.dim())?;
            out.extend(weight_records(&b, &tbl));
            Ok(out)
        }
        Command::Invariants { degree, forms, points } => invariants(&b, *degree, *forms, *points, &mut rng),
        Command::Ao => ao(&b),
        Command::Thm21 { k, random_invariant, degree, count } => {
            thm21(&b, *k, random_invariant.then_some(*degree).flatten(), *count, &mut rng)
        }
        Command::Fixlocus { form, random } => fixlocus(&b, form.as_deref(), *random, &mut rng),
        Command::Scan { classes, samples, point, include_axes } => {
            scan(&b, classes, *samples, point, *include_axes, &mut rng)
        }
        Command::DumpOp { name, out } => dump(&b, name, out),
    }
}

fn verify(b: &OperatorBasis) -> Result<Vec<CheckRecord>> {
    let mut out = su2_check(b)?;
    out.extend(hodge_check(b)?);
    let tbl = bracket_table(b)?;
    out.extend(structure_records(&tbl));
    out.extend(root_records(&root_system(&tbl)?));
    Ok(out)
}

fn roots(b: &OperatorBasis) -> Result<Vec<CheckRecord>> {
    let rs = root_system(&bracket_table(b)?)?;
    let mut out = root_records(&rs);
    out.extend(highest_weight_check(b, &rs, &b.det())?);
    Ok(out)
}

fn check_degree(b: &OperatorBasis, degree: usize) -> Result<()> {
    if degree > b.dim() {
        return Err(Error::Input(format!("degree {degree} exceeds {}", b.dim())));
    }
    Ok(())
}

fn invariants(
    b: &OperatorBasis,
    degree: usize,
    forms: usize,
    points: usize,
    rng: &mut SeededRng,
) -> Result<Vec<CheckRecord>> {
    check_degree(b, degree)?;
    if points == 0 {
        return Err(Error::Input("need at least one sample point".into()));
    }
    let basis = gm_invariants(b, degree)?.slice(degree);
    Ok(vec![
        CheckRecord::new(
            format!("invariants: degree {degree}"),
            true,
            Value::Null,
            json!({
                "degree": degree,
                "dim": basis.len(),
                "basis": basis.iter().map(form_json).collect::<Vec<_>>(),
            }),
        ),
        invariance_type_check(b, degree, forms, points, rng)?,
    ])
}

fn ao(b: &OperatorBasis) -> Result<Vec<CheckRecord>> {
    let c = c_operator(b)?;
    let mut out = c_equivariance_records(b, &c)?;
    out.extend(ao_invariants_check(b)?);
    let rs = root_system(&bracket_table(b)?)?;
    out.extend(highest_weight_check(b, &rs, &b.det())?);
    Ok(out)
}

fn thm21(
    b: &OperatorBasis,
    k: Option<usize>,
    degree: Option<usize>,
    count: usize,
    rng: &mut SeededRng,
) -> Result<Vec<CheckRecord>> {
    let q = b.triple().q;
    let c = c_operator(b)?;
    let checks = |alpha: &crate::Form, tag: String| -> Result<Vec<CheckRecord>> {
        let mut out = vec![theorem21_check(b, alpha)?];
        out.extend(central_constant_check(b, alpha)?);
        for rec in &mut out {
            rec.check = format!("{} [{tag}]", rec.check);
            rec.data["alpha"] = form_json(alpha);
        }
        Ok(out)
    };
    let c_power = |k: usize| -> Result<Vec<CheckRecord>> {
        checks(&c_power_det(b, &c, k)?.primitive(), format!("alpha = C^{k}(det), primitive"))
    };
    match (k, degree) {
        (Some(k), _) => {
            if k > q {
                return Err(Error::Input(format!("C^{k}(det) vanishes for k > q = {q}")));
            }
            c_power(k)
        }
        (None, Some(d)) => {
            check_degree(b, d)?;
            let basis = gm_invariants(b, d)?.slice(d);
            if basis.is_empty() {
                return Err(Error::Input(format!("no invariant forms of degree {d}")));
            }
            let mut out = Vec::with_capacity(count);
            for n in 0..count {
                let alpha = random_combination(rng, &basis).expect("nonempty basis");
                out.extend(checks(&alpha, format!("random invariant #{n}"))?);
            }
            Ok(out)
        }
        (None, None) => {
            let mut out = Vec::new();
            for k in 0..=q {
                out.extend(c_power(k)?);
            }
            out.extend(theorem21_random(b, count, rng)?);
            Ok(out)
        }
    }
}

fn fixlocus(b: &OperatorBasis, form: Option<&Path>, random: usize, rng: &mut SeededRng) -> Result<Vec<CheckRecord>> {
    match form {
        Some(path) => {
            let alpha = load_form(path)?;
            let locus = fix_locus(b, &alpha)?;
            Ok(vec![CheckRecord::new(
                format!("fixlocus: {}", locus.label()),
                true,
                Value::Null,
                json!({ "form": form_json(&alpha), "fix_locus": locus.to_json() }),
            )])
        }
        None => {
            let mut out = vec![fix_locus_bound_check(b, random, rng)?];
            let locus = fix_locus(b, &b.kaehler(Quaternion::I))?;
            let axis = SpherePoint::from_ints(1, 0, 0)?;
            out.push(CheckRecord::new(
                "fixlocus: omega_I is fixed exactly along ±I",
                matches!(locus, FixLocus::AntipodalPair(_)) && locus.contains(&axis),
                Value::Null,
                locus.to_json(),
            ));
            Ok(out)
        }
    }
}

fn scan(
    b: &OperatorBasis,
    classes: &Path,
    samples: usize,
    points: &[String],
    include_axes: bool,
    rng: &mut SeededRng,
) -> Result<Vec<CheckRecord>> {
    let classes = load_forms(classes)?;
    let mut pts = Vec::new();
    for uv in points.chunks(2) {
        let [u, v] = uv else { return Err(Error::Input("--point takes two rationals".into())) };
        pts.push(rational_sphere_point(&parse_rational(u)?, &parse_rational(v)?));
    }
    if include_axes {
        for (x, y, z) in [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)] {
            pts.push(SpherePoint::from_ints(x, y, z)?);
        }
    }
    for p in distinct_sphere_points(rng, samples) {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut out = general_type_scan(b, &classes, &pts)?;
    if let Some(last) = out.last_mut() {
        last.data["sample_points"] = json!(pts.iter().map(sphere_json).collect::<Vec<_>>());
    }
    Ok(out)
}

/// The operator called `name`: one of the ten basis operators, or `C`.
pub fn named_operator(b: &OperatorBasis, name: &str) -> Result<SparseOp> {
    if name.eq_ignore_ascii_case("c") {
        return c_operator(b);
    }
    OpName::parse(name).map(|n| b.op(n).clone()).ok_or_else(|| Error::Input(format!("unknown operator {name:?}")))
}

fn dump(b: &OperatorBasis, name: &str, out: &Path) -> Result<Vec<CheckRecord>> {
    let op = named_operator(b, name)?;
    dump_op(out, name, &op)?;
    let max_terms = op.columns().values().map(|f| f.len()).max().unwrap_or(0);
    Ok(vec![CheckRecord::new(
        format!("dump-op: {name}"),
        true,
        Value::Null,
        json!({
            "name": name,
            "dim": op.dim(),
            "columns": 1usize << op.dim(),
            "nonzero_columns": op.columns().len(),
            "max_terms_per_column": max_terms,
            "path": out.display().to_string(),
        }),
    )])
}
