//! Command-line front end for `hcsuper`.
//!
//! Every verb prints one JSON document to stdout or to `--out`. Exit codes are
//! 0 on success, 1 when a verification fails and 2 on usage or parameter errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hcsuper::combinatorics::{count_standard_tableaux, enumerate_multipartitions, enumerate_standard_tableaux};
use hcsuper::cyclo::{irreducibility_check, predicted_dim, semisimplicity_census};
use hcsuper::oracle::oracle_report;
use hcsuper::{CycloModule, Exec, Flavor, Multipartition, ParameterSet, Precision, Variant};

#[derive(Parser, Debug)]
#[command(name = "hcsuper", version, about = "Simple modules of cyclotomic Hecke-Clifford superalgebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// nondeg or deg
    #[arg(long, global = true, default_value = "nondeg")]
    variant: String,
    /// zero, s or ss
    #[arg(long, global = true, default_value = "zero")]
    flavor: String,
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true)]
    q: Option<String>,
    /// Comma-separated cyclotomic parameters
    #[arg(long = "Q", global = true)]
    big_q: Option<String>,
    /// Comparison tolerance; also the residual bound for verify
    #[arg(long, global = true)]
    tol: Option<String>,
    #[arg(long, global = true)]
    prec_bits: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs sequentially, 0 uses every core
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// List multipartitions with dimensions and types
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Also list every standard tableau
        #[arg(long)]
        tableaux: bool,
    },
    /// Evaluate the separability polynomial
    Poly {
        #[arg(long)]
        n: usize,
    },
    /// Build D(lambda) and write its dump
    Build {
        /// Components as nested JSON lists, strict components first
        #[arg(long)]
        lambda: String,
    },
    /// Check a module dump against every defining relation
    Verify { file: PathBuf },
    /// Sum-of-squares census over all shapes
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Trace-form rank of the brute-force regular representation
    Oracle {
        #[arg(long)]
        n: usize,
    },
}

/// Default residual bound for `verify` at the given precision.
fn default_residual_tol(bits: u32) -> f64 {
    1e-25f64.max(2f64.powi(-(bits as i32) / 3))
}

impl Opts {
    fn tol(&self) -> Result<Option<f64>> {
        self.tol
            .as_deref()
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad --tol {s:?}")))
            .transpose()
    }

    fn precision(&self) -> Result<Precision> {
        let bits = self.prec_bits.unwrap_or(hcsuper::scalar::DEFAULT_BITS);
        let p = match (self.tol()?, self.prec_bits) {
            (Some(t), _) => Precision::new(bits, t)?,
            (None, None) => Precision::default(),
            (None, Some(b)) => Precision::with_bits(b)?,
        };
        Ok(p)
    }

    fn variant(&self) -> Result<Variant> {
        Ok(Variant::parse(&self.variant)?)
    }

    fn flavor(&self) -> Result<Flavor> {
        Ok(Flavor::parse(&self.flavor)?)
    }

    fn qs(&self) -> Vec<&str> {
        match self.big_q.as_deref() {
            Some(s) if !s.trim().is_empty() => s.split(',').map(str::trim).collect(),
            _ => Vec::new(),
        }
    }

    fn m(&self) -> Result<usize> {
        let given = self.qs().len();
        match self.m {
            Some(m) if self.big_q.is_some() && m != given => bail!("--m {m} but --Q lists {given} values"),
            Some(m) => Ok(m),
            None => Ok(given),
        }
    }

    fn params(&self) -> Result<ParameterSet> {
        let variant = self.variant()?;
        if self.m()? != self.qs().len() {
            bail!("--Q must list {} values", self.m()?);
        }
        let q = match (variant, self.q.as_deref()) {
            (Variant::Degenerate, _) => "1",
            (Variant::Nondegenerate, Some(q)) => q,
            (Variant::Nondegenerate, None) => bail!("--q is required for the nondegenerate variant"),
        };
        Ok(ParameterSet::parse(variant, self.flavor()?, q, &self.qs(), self.precision()?)?)
    }

    fn exec(&self) -> Result<(Exec, Option<rayon::ThreadPool>)> {
        if self.jobs == 1 {
            return Ok((Exec::Sequential, None));
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build()?;
        Ok((Exec::Parallel, Some(pool)))
    }
}

fn shape_entry(shape: &Multipartition, tableaux: bool) -> Value {
    let (dim, ty) = predicted_dim(shape);
    let mut v = json!({
        "shape": shape,
        "label": shape.to_string(),
        "n_diagonal": shape.n_diagonal(),
        "std_count": count_standard_tableaux(shape).to_string(),
        "dim": dim.to_string(),
        "type": ty.name(),
    });
    if tableaux {
        let rows: Vec<_> = enumerate_standard_tableaux(shape).iter().map(|t| t.to_rows()).collect();
        v["tableaux"] = json!(rows);
    }
    v
}

/// Runs one verb and returns its JSON and whether it passed.
fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let o = &cli.opts;
    match &cli.verb {
        Verb::Enumerate { n, tableaux } => {
            let (flavor, m) = (o.flavor()?, o.m()?);
            let shapes = enumerate_multipartitions(flavor, m, *n);
            let entries: Vec<Value> = shapes.iter().map(|s| shape_entry(s, *tableaux)).collect();
            Ok((json!({"flavor": flavor, "m": m, "n": n, "count": entries.len(), "shapes": entries}), true))
        }
        Verb::Poly { n } => {
            let p = o.params()?;
            let value = p.separability_polynomial(*n);
            let eps = p.precision.epsilon;
            Ok((json!({"P": value.display_snapped(30, eps), "separate": !p.separability_vanishes(*n)}), true))
        }
        Verb::Build { lambda } => {
            let p = o.params()?;
            let comps: Vec<Vec<usize>> = serde_json::from_str(lambda).with_context(|| format!("bad --lambda {lambda:?}"))?;
            let shape = Multipartition::from_nested(p.flavor, comps)?;
            if shape.m() != p.m() {
                bail!("shape has {} ordinary components but m = {}", shape.m(), p.m());
            }
            Ok((CycloModule::build(&shape, &p)?.dump(), true))
        }
        Verb::Verify { file } => {
            let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
            let dump: Value = serde_json::from_str(&text).with_context(|| format!("{} is not JSON", file.display()))?;
            let module = CycloModule::load(&dump)?;
            let tol = o.tol()?.unwrap_or_else(|| default_residual_tol(module.params.bits()));
            let relations = module.verify_relations(tol);
            let (dim, ty) = predicted_dim(&module.shape);
            let dim_ok = dim == module.total_dim as u128 && ty == module.module_type;
            let irr = irreducibility_check(&module.gens, &module.params, 3, o.seed);
            let pass = relations.pass && dim_ok && irr.pass;
            let out = json!({
                "relations": relations,
                "dimension": {"expected": dim.to_string(), "built": module.total_dim, "type": module.module_type.name(), "pass": dim_ok},
                "irreducibility": irr,
                "pass": pass,
            });
            Ok((out, pass))
        }
        Verb::Census { n } => {
            let p = o.params()?;
            let (exec, pool) = o.exec()?;
            let run = || semisimplicity_census(&p, *n, true, exec);
            let report = match pool {
                Some(pool) => pool.install(run),
                None => run(),
            }?;
            let pass = report.pass;
            Ok((serde_json::to_value(report)?, pass))
        }
        Verb::Oracle { n } => {
            let p = o.params()?;
            let report = oracle_report(&p, *n)?;
            let predicted = !p.separability_vanishes(*n);
            let pass = report.semisimple == predicted;
            let mut v = serde_json::to_value(report)?;
            v["predicted_semisimple"] = json!(predicted);
            v["pass"] = json!(pass);
            Ok((v, pass))
        }
    }
}

/// Parses `argv` (program name first), runs the verb and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli).and_then(|(value, pass)| {
        let text = serde_json::to_string_pretty(&value)?;
        match &cli.opts.out {
            Some(path) => fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?,
            None => println!("{text}"),
        }
        Ok(pass)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
