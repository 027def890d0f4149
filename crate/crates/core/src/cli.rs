//! Command-line front end. [`run`] executes a parsed command and returns
//! the exit code with everything to be printed, so it can be driven from
//! tests as well as from the binary.
//!
//! Elements are named on the command line by label or as `#k` for index
//! `k`. Sets are comma separated (`a,b,1`), pairs are written `x=y` (`b=c`
//! pairs an element of the lower algebra with one of the upper algebra).
//!
//! Exit codes: 0 when the checked property holds or the construction
//! succeeds, 1 when a precondition or compatibility check fails, 2 on
//! unreadable or malformed input, 3 on an internal invariant breach.

use crate::algebra::io::{from_text, parse_doc, to_text};
use crate::algebra::morphism::are_isomorphic;
use crate::algebra::{verify_axioms, FiniteRL};
use crate::amalgam::{check_amalgam, VFormation};
use crate::enumerate::{enumerate, AlgebraClass};
use crate::error::{Error, Result};
use crate::filters::{all_congruence_filters, check_lower_pair_mode, check_upper_pair};
use crate::gl2::{
    brute_force_gl2_amalgam, default_search_bound, gl2_amalgam_decide, gl2_generate, recognize_gl2,
    AmalgamDecision,
};
use crate::gluing::{check_embeddings, glue, GluingSpec};
use crate::partial::{extract_lower_triple, extract_upper_triple, validate_partial, PartialRL};
use crate::quadruple::{check_quadruple, QuadrupleInput};
use crate::rotations::{
    generalized_rotation, identity_nucleus, n_rotation, rotation_quadruple, term_nucleus,
};
use crate::set::ElemSet;
use crate::terms::{eval_equation, named, parse_equation_file, parse_term};
use crate::varieties::is_subdirectly_irreducible;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "resglue",
    version,
    about = "Gluings, rotations and amalgams of finite residuated lattices"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Re-check every construction by exhaustive search.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    OneSum,
    F,
    Fi,
    PartialTau,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the residuated-lattice axioms (or the partial laws).
    Verify { file: PathBuf },
    /// Glue two algebras.
    Glue {
        #[arg(long, value_enum)]
        mode: Mode,
        lower: PathBuf,
        upper: PathBuf,
        /// Filter pairs `b=c` (modes f, fi) or the filter of the lower
        /// algebra as a set (mode partial-tau).
        #[arg(long)]
        filter: Option<String>,
        /// Ideal pairs `b=c` (mode fi) or the ideal of the upper algebra as
        /// a set (mode partial-tau).
        #[arg(long)]
        ideal: Option<String>,
        /// Ideal of the lower triple, as elements of the lower algebra
        /// (mode partial-tau).
        #[arg(long)]
        lower_ideal: Option<String>,
        /// Accept weakly compatible quadruples (mode fi).
        #[arg(long)]
        non_strict: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generalized n-rotation, or the disconnected rotation without `--n`.
    Rotate {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        /// One-variable term, or `identity`.
        #[arg(long, default_value = "identity")]
        nucleus: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Congruence filters and their lattice.
    Filters { file: PathBuf },
    /// Check a lower pair (filter) and/or an upper pair (ideal).
    CheckPair {
        file: PathBuf,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        non_strict: bool,
    },
    /// Check the compatibility conditions of a gluing quadruple.
    CheckQuadruple {
        lower: PathBuf,
        upper: PathBuf,
        #[arg(long)]
        filter: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        non_strict: bool,
    },
    /// Evaluate equations, one `lhs = rhs` per line, or a named set.
    CheckEq {
        file: PathBuf,
        #[arg(long, conflicts_with = "named")]
        equations: Option<PathBuf>,
        /// comm, sl, prel, div, gl2 or pot<n>.
        #[arg(long)]
        named: Option<String>,
    },
    /// Recognize a GL2 chain; with `--seed`, the generated subalgebra.
    Gl2 {
        file: PathBuf,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Decide amalgamation of a V-formation of GL2 chains (first
    /// embeddings of A into B and C).
    Amalgamate {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        /// Size bound for the `--oracle` search.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List algebras of a class up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum)]
        class: AlgebraClass,
        /// Print only the counts per size.
        #[arg(long)]
        count_only: bool,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::Internal(_) => 3,
        _ => 1,
    }
}

/// A report under construction: text lines and a JSON object in parallel.
struct Report {
    text: String,
    json: serde_json::Map<String, Value>,
    ok: bool,
    algebra: Option<(FiniteRL, Option<PathBuf>)>,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut json = serde_json::Map::new();
        json.insert("command".into(), json!(command));
        Report {
            text: String::new(),
            json,
            ok: true,
            algebra: None,
        }
    }
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
    fn field(&mut self, key: &str, text: impl std::fmt::Display, value: Value) {
        self.line(format!("{key}: {text}"));
        self.json.insert(key.replace(' ', "_"), value);
    }
    fn fail(&mut self) {
        self.ok = false;
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<FiniteRL> {
    from_text(&read(path)?)
}

fn perr(message: String) -> Error {
    Error::Parse { line: 0, message }
}

/// An element given as `#k` (index `k`) or by label. A bare number that is
/// not a label is read as an index.
pub fn element(a: &FiniteRL, token: &str) -> Result<usize> {
    let t = token.trim();
    let index = |k: &str| k.parse::<usize>().ok().filter(|&x| x < a.n());
    if let Some(k) = t.strip_prefix('#') {
        return index(k).ok_or_else(|| perr(format!("no element with index `{k}`")));
    }
    a.elements()
        .find(|&x| a.label(x) == t)
        .or_else(|| index(t))
        .ok_or_else(|| perr(format!("unknown element `{t}`")))
}

pub fn element_set(a: &FiniteRL, text: &str) -> Result<ElemSet> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| element(a, t))
        .collect()
}

pub fn element_pairs(b: &FiniteRL, c: &FiniteRL, text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (x, y) = t
                .split_once('=')
                .ok_or_else(|| perr(format!("pair `{t}` lacks `=`")))?;
            Ok((element(b, x)?, element(c, y)?))
        })
        .collect()
}

fn labels_of(a: &FiniteRL, s: ElemSet) -> Vec<String> {
    s.iter().map(|x| a.label(x)).collect()
}

fn show_set(a: &FiniteRL, s: ElemSet) -> String {
    format!("{{{}}}", labels_of(a, s).join(", "))
}

/// Hasse diagram as indented text: one line per element, sorted by
/// (height, index), indented by height, listing the elements it covers.
pub fn hasse_diagram(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    label: impl Fn(usize) -> String,
) -> String {
    let below = |x: usize, y: usize| x != y && leq(x, y);
    let covers = |y: usize| -> Vec<usize> {
        (0..n)
            .filter(|&x| below(x, y) && !(0..n).any(|z| below(x, z) && below(z, y)))
            .collect()
    };
    let mut height = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| below(y, x)).count());
    for &x in &order {
        height[x] = covers(x).iter().map(|&c| height[c] + 1).max().unwrap_or(0);
    }
    let mut rows: Vec<usize> = (0..n).collect();
    rows.sort_by_key(|&x| (height[x], x));
    let mut out = String::new();
    for x in rows {
        let cov: Vec<String> = covers(x).into_iter().map(&label).collect();
        let _ = write!(out, "{}{}", "  ".repeat(height[x]), label(x));
        if !cov.is_empty() {
            let _ = write!(out, " > {}", cov.join(", "));
        }
        out.push('\n');
    }
    out
}

fn algebra_hasse(a: &FiniteRL) -> String {
    hasse_diagram(a.n(), |x, y| a.leq(x, y), |x| a.label(x))
}

fn summary(r: &mut Report, key: &str, a: &FiniteRL) {
    r.line(format!(
        "{key}: {} elements, unit {}, zero {}",
        a.n(),
        a.label(a.unit()),
        a.zero().map_or("none".into(), |z| a.label(z))
    ));
    r.json.insert(
        key.into(),
        json!({
            "size": a.n(),
            "unit": a.label(a.unit()),
            "zero": a.zero().map(|z| a.label(z)),
            "chain": a.is_chain(),
            "commutative": a.is_commutative(),
        }),
    );
}

/// Runs a command. Never panics on bad input; errors become exit codes.
pub fn run(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let mut report = Report::new(name);
    let result = dispatch(cli, &mut report);
    let mut stderr = String::new();
    let code = match result {
        Ok(()) => i32::from(!report.ok),
        Err(e) => {
            let code = exit_code(&e);
            report.field("error", &e, json!(e.to_string()));
            report.json.insert("exit_code".into(), json!(code));
            code
        }
    };
    let mut algebra_text = None;
    if code == 0 || report.algebra.is_some() {
        if let Some((a, path)) = &report.algebra {
            let text = to_text(a);
            match path {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &text) {
                        return Outcome {
                            code: 1,
                            stdout: String::new(),
                            stderr: format!("cannot write {}: {e}\n", p.display()),
                        };
                    }
                    report.line(format!("wrote {}", p.display()));
                }
                None => algebra_text = Some(text),
            }
        }
    }
    report.json.insert("ok".into(), json!(code == 0));
    let stdout = match cli.format {
        Format::Structured => {
            if let Some(t) = &algebra_text {
                report.json.insert("algebra".into(), json!(t));
            }
            serde_json::to_string_pretty(&Value::Object(report.json))
                .expect("JSON values serialize")
                + "\n"
        }
        Format::Text => match algebra_text {
            // the algebra goes to stdout so that it can be redirected
            Some(t) => {
                stderr = report.text;
                t
            }
            None => report.text,
        },
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Glue { .. } => "glue",
        Command::Rotate { .. } => "rotate",
        Command::Filters { .. } => "filters",
        Command::CheckPair { .. } => "check-pair",
        Command::CheckQuadruple { .. } => "check-quadruple",
        Command::CheckEq { .. } => "check-eq",
        Command::Gl2 { .. } => "gl2",
        Command::Amalgamate { .. } => "amalgamate",
        Command::Enumerate { .. } => "enumerate",
    }
}

fn dispatch(cli: &Cli, r: &mut Report) -> Result<()> {
    match &cli.command {
        Command::Verify { file } => verify(file, r),
        Command::Glue {
            mode,
            lower,
            upper,
            filter,
            ideal,
            lower_ideal,
            non_strict,
            output,
        } => {
            let b = load(lower)?;
            let c = load(upper)?;
            let spec = gluing_spec(
                *mode,
                &b,
                &c,
                filter.as_deref(),
                ideal.as_deref(),
                lower_ideal.as_deref(),
                !non_strict,
            )?;
            let g = glue(&spec)?;
            summary(r, "glued", &g.algebra);
            r.field(
                "provenance",
                format!("{:?}", g.provenance.mode),
                json!(g.provenance),
            );
            if cli.oracle {
                let violations = verify_axioms(&g.algebra);
                let broken = if matches!(mode, Mode::PartialTau) {
                    Vec::new()
                } else {
                    check_embeddings(&g, &b, &c)
                };
                r.field("oracle axioms", violations.len(), json!(violations.len()));
                r.field(
                    "oracle embeddings broken",
                    broken.len(),
                    json!(broken.len()),
                );
                if !violations.is_empty() || !broken.is_empty() {
                    return Err(Error::Internal("gluing failed its exhaustive check".into()));
                }
            }
            r.algebra = Some((g.algebra, output.clone()));
            Ok(())
        }
        Command::Rotate {
            file,
            n,
            nucleus,
            output,
        } => {
            let a = load(file)?;
            let delta = if nucleus.trim() == "identity" {
                identity_nucleus(&a)
            } else {
                let (term, vars) = parse_term(nucleus)?;
                if vars.len() > 1 {
                    return Err(perr(format!(
                        "nucleus `{nucleus}` has more than one variable"
                    )));
                }
                term_nucleus(&a, &term)?
            };
            let rot = match n {
                Some(n) => n_rotation(&a, &delta, *n)?,
                None => generalized_rotation(&a, &delta)?,
            };
            summary(r, "rotation", &rot.algebra);
            if let (true, Some(n)) = (cli.oracle, n) {
                let q = rotation_quadruple(&a, &delta, *n)?;
                let glued = glue(&GluingSpec::Fi {
                    input: q,
                    strict: true,
                })?;
                let iso = are_isomorphic(&rot.algebra, &glued.algebra).is_some();
                r.field("oracle gluing isomorphic", iso, json!(iso));
                if !iso || !verify_axioms(&rot.algebra).is_empty() {
                    return Err(Error::Internal(
                        "rotation differs from its gluing presentation".into(),
                    ));
                }
            }
            r.algebra = Some((rot.algebra, output.clone()));
            Ok(())
        }
        Command::Filters { file } => {
            let a = load(file)?;
            let lat = all_congruence_filters(&a);
            let names: Vec<String> = lat.filters.iter().map(|&f| show_set(&a, f)).collect();
            r.field(
                "filters",
                lat.len(),
                json!(lat
                    .filters
                    .iter()
                    .map(|&f| labels_of(&a, f))
                    .collect::<Vec<_>>()),
            );
            let order = lat.order();
            r.line("lattice:");
            let h = hasse_diagram(lat.len(), |x, y| order[x][y], |x| names[x].clone());
            r.text.push_str(&h);
            let sdi = is_subdirectly_irreducible(&a);
            r.field("subdirectly irreducible", sdi, json!(sdi));
            Ok(())
        }
        Command::CheckPair {
            file,
            filter,
            ideal,
            non_strict,
        } => {
            let a = load(file)?;
            if filter.is_none() && ideal.is_none() {
                return Err(Error::Precondition("give --filter and/or --ideal".into()));
            }
            if let Some(f) = filter {
                let rep = check_lower_pair_mode(&a, element_set(&a, f)?, !non_strict)?;
                r.field("lower pair", format!("{:?}", rep.kind), json!(rep));
                if rep.kind == crate::filters::PairKind::Incompatible {
                    r.fail();
                }
            }
            if let Some(i) = ideal {
                let rep = check_upper_pair(&a, element_set(&a, i)?, !non_strict)?;
                r.field("upper pair compatible", rep.compatible, json!(rep));
                if !rep.compatible {
                    r.fail();
                }
            }
            Ok(())
        }
        Command::CheckQuadruple {
            lower,
            upper,
            filter,
            ideal,
            non_strict,
        } => {
            let b = load(lower)?;
            let c = load(upper)?;
            let q = QuadrupleInput::new(
                b.clone(),
                c.clone(),
                &element_pairs(&b, &c, filter)?,
                &element_pairs(&b, &c, ideal)?,
            )?;
            let verdict = check_quadruple(&q, !non_strict)?;
            let report = verdict.report();
            r.field(
                "compatible",
                report.is_compatible(),
                json!(report.is_compatible()),
            );
            for f in &report.failures {
                r.line(format!("  {:?}: {}", f.condition, f.detail));
            }
            r.json.insert("report".into(), json!(report));
            if !report.is_compatible() {
                r.fail();
            }
            Ok(())
        }
        Command::CheckEq {
            file,
            equations,
            named: set,
        } => {
            let a = load(file)?;
            let eqs = match (equations, set) {
                (Some(p), None) => parse_equation_file(&read(p)?)?,
                (None, Some(name)) => named(name)?,
                _ => return Err(Error::Precondition("give --equations or --named".into())),
            };
            let mut rows = Vec::new();
            for eq in &eqs {
                let cex = eval_equation(&a, eq)?;
                let text = match &cex {
                    None => format!("holds  {eq}"),
                    Some(c) => {
                        let asg: Vec<String> = c
                            .assignment
                            .iter()
                            .map(|(v, x)| format!("{v}={}", a.label(*x)))
                            .collect();
                        format!(
                            "fails  {eq}  at {} ({} vs {})",
                            asg.join(" "),
                            a.label(c.lhs),
                            a.label(c.rhs)
                        )
                    }
                };
                r.line(text);
                rows.push(json!({
                    "equation": eq.to_string(),
                    "holds": cex.is_none(),
                    "counterexample": cex.as_ref().map(|c| c.assignment.iter().map(|(v, x)| (v.clone(), a.label(*x))).collect::<Vec<_>>()),
                }));
                if cex.is_some() {
                    r.fail();
                }
            }
            r.json.insert("equations".into(), Value::Array(rows));
            Ok(())
        }
        Command::Gl2 { file, seed } => {
            let a = load(file)?;
            let g = recognize_gl2(&a)?;
            let blocks: Vec<Vec<String>> = g
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| a.label(x)).collect())
                .collect();
            r.line("blocks (bottom first):");
            for b in &blocks {
                r.line(format!("  {{{}}}", b.join(", ")));
            }
            r.line("  {1}");
            r.json.insert("blocks".into(), json!(blocks));
            r.field("godel", g.is_godel(), json!(g.is_godel()));
            let coatom = g.coatom().map(|c| a.label(c));
            r.field(
                "coatom",
                coatom.clone().unwrap_or_else(|| "none".into()),
                json!(coatom),
            );
            if let Some(s) = seed {
                let gen = gl2_generate(&g, element_set(&a, s)?)?;
                r.field(
                    "generated",
                    show_set(&a, gen.fixpoint),
                    json!(labels_of(&a, gen.fixpoint)),
                );
                r.field("case", format!("{:?}", gen.case), json!(gen.case));
                r.field("closed form agrees", gen.agrees(), json!(gen.agrees()));
                r.field(
                    "within 3|X|+3",
                    gen.within_bound(),
                    json!(gen.within_bound()),
                );
                if !gen.agrees() || !gen.within_bound() {
                    return Err(Error::Internal("generation lemma violated".into()));
                }
            }
            Ok(())
        }
        Command::Amalgamate {
            a,
            b,
            c,
            bound,
            output,
        } => {
            let v = VFormation::with_first_embeddings(load(a)?, load(b)?, load(c)?)?;
            let decision = gl2_amalgam_decide(&v)?;
            let limit = bound.unwrap_or_else(|| default_search_bound(&v));
            match &decision {
                AmalgamDecision::Amalgam { amalgam, strong } => {
                    summary(r, "amalgam", &amalgam.d);
                    r.field("strong", strong, json!(strong));
                    let check = check_amalgam(&v, amalgam);
                    r.json.insert("check".into(), json!(check));
                    r.algebra = Some((amalgam.d.clone(), output.clone()));
                }
                AmalgamDecision::Impossible {
                    witness,
                    obstruction,
                } => {
                    r.field("amalgam", "none", Value::Null);
                    r.field("witness", v.a.label(*witness), json!(v.a.label(*witness)));
                    r.field(
                        "obstruction",
                        format!("{obstruction:?}"),
                        json!(obstruction),
                    );
                    r.fail();
                }
            }
            if cli.oracle {
                let found = brute_force_gl2_amalgam(&v, limit).is_some();
                r.field("oracle search bound", limit, json!(limit));
                r.field("oracle amalgam found", found, json!(found));
                if found != decision.exists() {
                    return Err(Error::Internal(
                        "decision disagrees with exhaustive search".into(),
                    ));
                }
            }
            Ok(())
        }
        Command::Enumerate {
            max_size,
            class,
            count_only,
        } => {
            if *max_size > 8 {
                return Err(Error::Precondition(
                    "enumeration is limited to 8 elements".into(),
                ));
            }
            let algebras = enumerate(*class, *max_size);
            let mut counts = vec![0usize; max_size + 1];
            for a in &algebras {
                counts[a.n()] += 1;
            }
            for (n, k) in counts.iter().enumerate().skip(1) {
                r.line(format!("size {n}: {k}"));
            }
            r.json.insert("counts".into(), json!(counts));
            if !count_only {
                let mut texts = Vec::new();
                for (i, a) in algebras.iter().enumerate() {
                    r.line(format!("# algebra {i}"));
                    let t = to_text(a);
                    r.text.push_str(&t);
                    texts.push(t);
                }
                r.json.insert("algebras".into(), json!(texts));
            }
            Ok(())
        }
    }
}

fn verify(file: &Path, r: &mut Report) -> Result<()> {
    let text = read(file)?;
    if parse_doc(&text)?.partial {
        let p = PartialRL::from_text(&text)?;
        let rep = validate_partial(&p);
        r.field("partial", p.n(), json!(p.n()));
        r.field("valid", rep.is_valid(), json!(rep.is_valid()));
        for v in &rep.violations {
            r.line(format!("  {:?} at {:?}", v.rule, v.witness));
        }
        r.json.insert("report".into(), json!(rep));
        if !rep.is_valid() {
            r.fail();
        }
        return Ok(());
    }
    let a = from_text(&text)?;
    summary(r, "algebra", &a);
    let violations = verify_axioms(&a);
    r.field("valid", violations.is_empty(), json!(violations.is_empty()));
    for v in &violations {
        r.line(format!("  {v}"));
    }
    r.json.insert(
        "violations".into(),
        json!(violations.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    );
    r.line("hasse:");
    let h = algebra_hasse(&a);
    r.text.push_str(&h);
    r.json.insert("hasse".into(), json!(h));
    if !violations.is_empty() {
        r.fail();
    }
    Ok(())
}

fn gluing_spec(
    mode: Mode,
    b: &FiniteRL,
    c: &FiniteRL,
    filter: Option<&str>,
    ideal: Option<&str>,
    lower_ideal: Option<&str>,
    strict: bool,
) -> Result<GluingSpec> {
    fn need<'s>(x: Option<&'s str>, flag: &str) -> Result<&'s str> {
        x.ok_or_else(|| Error::Precondition(format!("mode needs --{flag}")))
    }
    Ok(match mode {
        Mode::OneSum => GluingSpec::OneSum {
            lower: b.clone(),
            upper: c.clone(),
        },
        Mode::F => GluingSpec::F {
            lower: b.clone(),
            upper: c.clone(),
            filter_pairs: element_pairs(b, c, need(filter, "filter")?)?,
        },
        Mode::Fi => GluingSpec::Fi {
            input: QuadrupleInput::new(
                b.clone(),
                c.clone(),
                &element_pairs(b, c, need(filter, "filter")?)?,
                &element_pairs(b, c, need(ideal, "ideal")?)?,
            )?,
            strict,
        },
        Mode::PartialTau => {
            let lower = extract_lower_triple(b, element_set(b, need(filter, "filter")?)?)?;
            let upper = match ideal {
                Some(i) => extract_upper_triple(c, element_set(c, i)?)?.triple,
                None => extract_upper_triple(c, ElemSet::new())?.triple,
            };
            let k_ideal = match lower_ideal {
                Some(text) => {
                    let s = element_set(b, text)?;
                    let mut out = ElemSet::new();
                    for x in s.iter() {
                        let pos = lower.origin.iter().position(|&o| o == x).ok_or_else(|| {
                            Error::Precondition(format!(
                                "{} is not in the lower triple",
                                b.label(x)
                            ))
                        })?;
                        out.insert(pos);
                    }
                    Some(out)
                }
                None => None,
            };
            GluingSpec::PartialTau {
                lower: lower.triple,
                ideal: k_ideal,
                upper,
            }
        }
    })
}
