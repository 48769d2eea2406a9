//! The `stringy` command line: load a model, group or cocycle, run a
//! computation or a verification suite, and print a JSON document or a
//! plain-text report.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails (the witness is in the report), 2 for unreadable input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stringy::catalog;
use stringy::classes::{
    age, chen_hu_character, chen_hu_obstruction, cover_genus, eichler_h1, obstruction_class, rep_magic_rhs, s_class,
    LinearGAction, MonodromyDatum,
};
use stringy::character::ClassFunction;
use stringy::euler::{dhvw_coefficient, stringy_euler, sym_orbifold_euler};
use stringy::frobenius::{check_axioms, familiar_trace_axiom, AxiomReport};
use stringy::geometry::{load_cocycle, load_group, load_table_model, useful_mix_failures, Backend, GeometricModel};
use stringy::report::{document, q_json};
use stringy::ring::{
    apply_twist, build_stringy_chow, build_stringy_k, grading_report, ring_json, ring_table, stringy_chern,
    take_invariants, traces_agree, untwisted_is_ordinary, StringyRing,
};
use stringy::group::split_list;
use stringy::{Error, FiniteGroup};

/// Where model names are looked up when they are not paths.
pub const CATALOG_ENV: &str = "STRINGY_CATALOG_DIR";

#[derive(Debug, Parser)]
#[command(name = "stringy", version, about = "Stringy Chow rings, stringy K-theory and their G-Frobenius axioms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include the full ring in verification reports.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Chow,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Axioms,
    Cch,
    Obstruction,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a stringy ring and print its structure constants and gradings.
    Ring {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = Kind::Chow)]
        kind: Kind,
        /// Print the ring of G-invariants instead.
        #[arg(long)]
        invariants: bool,
    },
    /// Run the axiom, grading, trace and Chern character checks.
    Verify {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Ages, S_m and the obstruction bundles of a linear action.
    Obstruction {
        /// A linear model file, or a catalog action such as `z3_sl2`.
        #[arg(long)]
        model: String,
    },
    /// Compare the Eichler trace formula with the representation-theoretic side.
    Eichler {
        #[arg(long)]
        group: String,
        /// Branch monodromy as element labels, e.g. `w,w,w` or `(0 1),(0 1)`.
        #[arg(long, default_value = "")]
        monodromy: String,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        /// Handle pairs `a:b`, one per unit of genus.
        #[arg(long, default_value = "")]
        handles: String,
    },
    /// Stringy Euler characteristic of a model, or of Sym^n of a surface.
    Euler {
        #[arg(long, conflicts_with_all = ["chi", "n"])]
        model: Option<String>,
        #[arg(long, requires = "n", allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long, requires = "chi")]
        n: Option<usize>,
    },
    /// Twist both rings by a 2-cocycle and re-run the checks.
    Twist {
        #[arg(long)]
        model: String,
        #[arg(long)]
        cocycle: String,
    },
}

/// A finished command: its document and whether every check passed.
pub struct Outcome {
    pub kind: &'static str,
    pub json: Value,
    pub table: String,
    pub passed: bool,
}

fn catalog_dir() -> PathBuf {
    std::env::var_os(CATALOG_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog"))
}

/// A path as given, else `name`, `name.toml` or the bare file name in the
/// catalog directory.
pub fn resolve(arg: &str, subdir: &str) -> Option<PathBuf> {
    let given = Path::new(arg);
    if given.is_file() {
        return Some(given.to_path_buf());
    }
    let dir = catalog_dir().join(subdir);
    let file = given.file_name().map(PathBuf::from).unwrap_or_default();
    [PathBuf::from(arg), PathBuf::from(format!("{arg}.toml")), file]
        .into_iter()
        .map(|p| dir.join(p))
        .find(|p| p.is_file())
}

fn load_model(arg: &str) -> Result<GeometricModel, Error> {
    let path = resolve(arg, "").ok_or_else(|| Error::Io(format!("no model file `{arg}`")))?;
    load_table_model(&path)
}

fn load_action(arg: &str) -> Result<LinearGAction, Error> {
    if let Some(path) = resolve(arg, "") {
        return match load_table_model(&path)?.backend {
            Backend::Linear(a) => Ok(a),
            _ => Err(Error::NotApplicable(format!("{} is not a linear action", path.display()))),
        };
    }
    catalog::action_by_name(arg)
}

fn load_group_arg(arg: &str) -> Result<Arc<FiniteGroup>, Error> {
    match catalog::group_by_name(arg) {
        Ok(g) => Ok(g),
        Err(_) => {
            let path = resolve(arg, "groups").ok_or_else(|| Error::Io(format!("no group `{arg}`")))?;
            load_group(&path)
        }
    }
}

fn class_values(f: &ClassFunction) -> Value {
    let g = f.group();
    Value::Object(
        g.conjugacy_classes()
            .iter()
            .map(|c| (g.label(c.representative).to_string(), Value::String(f.value(c.representative).to_string())))
            .collect(),
    )
}

fn class_line(f: &ClassFunction) -> String {
    let g = f.group();
    g.conjugacy_classes()
        .iter()
        .map(|c| format!("{}: {}", g.label(c.representative), f.value(c.representative)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn axiom_lines(r: &AxiomReport) -> String {
    let mut out = format!("axioms for {}\n", r.algebra);
    for a in &r.results {
        let status = serde_json::to_value(a.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out.push_str(&format!("  {:<24} {status}", a.axiom));
        if let Some(w) = &a.witness {
            out.push_str(&format!("  ({w})"));
        }
        out.push('\n');
    }
    out
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn build(model: &GeometricModel, kind: Kind) -> Result<StringyRing, Error> {
    match kind {
        Kind::Chow => build_stringy_chow(model),
        Kind::K => build_stringy_k(model),
    }
}

fn ring(model: &str, kind: Kind, invariants: bool) -> Result<Outcome, Error> {
    let model = load_model(model)?;
    let ring = build(&model, kind)?;
    let algebra = if invariants { take_invariants(&ring)? } else { ring.algebra.clone() };
    let axioms = check_axioms(&algebra)?;
    let cch = stringy_chern(&model)?;
    let mut json = ring_json(&algebra);
    json["pairing_degree"] = q_json(&ring.pairing_degree);
    json["axiom_report"] = axioms.to_json();
    json["cch_report"] = serde_json::to_value(&cch).expect("serializable");
    let mut table = ring_table(&algebra);
    table.push_str(&format!("axioms: {}\n", pass(axioms.passed())));
    Ok(Outcome { kind: "ring", json, table, passed: axioms.passed() })
}

fn verify(model: &str, suite: Suite, verbose: bool) -> Result<Outcome, Error> {
    let model = load_model(model)?;
    let mut json = json!({ "model": model.name, "group": model.group.name(), "proper": model.proper });
    let mut table = format!("model {} ({}, {})\n", model.name, model.group.name(), if model.proper { "proper" } else { "not proper" });
    let mut passed = true;
    let run = |s: Suite| suite == Suite::All || suite == s;
    if run(Suite::Axioms) {
        let mut reports = serde_json::Map::new();
        for kind in [Kind::Chow, Kind::K] {
            let ring = build(&model, kind)?;
            let a = &ring.algebra;
            let axioms = check_axioms(a)?;
            let trace = model.proper.then(|| familiar_trace_axiom(a).map_err(|w| format!("{w:?}")));
            let agree = traces_agree(&ring);
            let graded = a.sectors.iter().all(|s| s.degrees.is_some());
            let grading = if graded { Some(grading_report(&ring)?) } else { None };
            let ordinary = untwisted_is_ordinary(&model, &ring);
            let ok = axioms.passed()
                && !matches!(trace, Some(Err(_)))
                && !matches!(agree, Some(Err(_)))
                && grading.as_ref().is_none_or(|g| g.passed())
                && ordinary;
            passed &= ok;
            table.push_str(&axiom_lines(&axioms));
            if let Some(t) = &trace {
                table.push_str(&format!("  trace axiom              {}\n", pass(t.is_ok())));
            }
            if let Some(t) = &agree {
                table.push_str(&format!("  geometric trace          {}\n", pass(t.is_ok())));
            }
            if let Some(g) = &grading {
                table.push_str(&format!("  grading                  {}\n", pass(g.passed())));
            }
            table.push_str(&format!("  untwisted sector         {}\n", pass(ordinary)));
            let key = if kind == Kind::Chow { "chow" } else { "k" };
            let mut entry = json!({
                "axiom_report": axioms.to_json(),
                "trace_axiom": trace.map(|t| t.err()),
                "traces_agree": agree.map(|t| t.err()),
                "grading": grading,
                "untwisted_is_ordinary": ordinary,
                "passed": ok,
            });
            if verbose {
                entry["ring"] = ring_json(a);
            }
            reports.insert(key.into(), entry);
        }
        json["axioms"] = Value::Object(reports);
    }
    if run(Suite::Cch) {
        let cch = stringy_chern(&model)?;
        passed &= cch.allometric();
        table.push_str(&format!(
            "Chern character: homomorphism {}, allometric {}, strictly allometric {}\n",
            cch.homomorphism,
            cch.allometric(),
            cch.strictly_allometric()
        ));
        json["cch_report"] = serde_json::to_value(&cch).expect("serializable");
        json["cch_report"]["allometric"] = Value::Bool(cch.allometric());
        json["cch_report"]["strictly_allometric"] = Value::Bool(cch.strictly_allometric());
    }
    if run(Suite::Obstruction) {
        let failures = useful_mix_failures(&model)?;
        let bundles = model.registered_bundles()?.len();
        let mut ok = failures.is_empty();
        let mut dishonest = Vec::new();
        if let Backend::Linear(action) = &model.backend {
            for (t, ob) in triples(action)? {
                if !ob.honest() {
                    dishonest.push(triple_label(action.group(), t));
                }
            }
            ok &= dishonest.is_empty();
        }
        passed &= ok;
        table.push_str(&format!("obstruction bundles: {bundles} checked, {}\n", pass(ok)));
        json["obstruction"] = json!({
            "bundles": bundles,
            "useful_mix_failures": failures,
            "dishonest_triples": dishonest,
            "passed": ok,
        });
    }
    json["passed"] = Value::Bool(passed);
    table.push_str(&format!("overall: {}\n", pass(passed)));
    Ok(Outcome { kind: "verify", json, table, passed })
}

type Triple = [usize; 3];

fn triples(action: &LinearGAction) -> Result<Vec<(Triple, stringy::classes::Obstruction)>, Error> {
    let g = action.group();
    let mut out = Vec::new();
    for m1 in g.elements() {
        for m2 in g.elements() {
            let t = [m1, m2, g.inv(g.mul(m1, m2))];
            out.push((t, obstruction_class(action, t)?));
        }
    }
    Ok(out)
}

fn triple_label(g: &FiniteGroup, t: Triple) -> String {
    format!("({}, {}, {})", g.label(t[0]), g.label(t[1]), g.label(t[2]))
}

fn obstruction(model: &str) -> Result<Outcome, Error> {
    let action = load_action(model)?;
    let g = action.group().clone();
    let mut table = format!("{} on C^{} ({})\n", action.name(), action.dim(), g.name());
    let sectors: Vec<Value> = g
        .elements()
        .map(|m| {
            let s = s_class(&action, m);
            table.push_str(&format!("  {}: age {}, rank S = {}\n", g.label(m), age(&action, m), s.rank));
            json!({
                "element": g.label(m),
                "age": q_json(&age(&action, m)),
                "s_rank": q_json(&s.rank),
                "s_character": class_values(&s.character),
            })
        })
        .collect();
    let mut passed = true;
    let mut rows = Vec::new();
    for (t, ob) in triples(&action)? {
        let chen_hu = match chen_hu_obstruction(&action, t) {
            Ok(lines) => Some(chen_hu_character(&action, t, &lines) == ob.character),
            Err(Error::NotAbelian) => None,
            Err(e) => return Err(e),
        };
        let ok = ob.honest() && chen_hu != Some(false);
        passed &= ok;
        table.push_str(&format!(
            "  R{}: rank {} (expected {}), {}{}\n",
            triple_label(&g, t),
            ob.rank,
            ob.expected_rank,
            if ob.honest() { "honest" } else { "NOT honest" },
            match chen_hu {
                Some(true) => ", joint eigenlines agree",
                Some(false) => ", joint eigenlines DISAGREE",
                None => "",
            }
        ));
        rows.push(json!({
            "triple": t.map(|m| g.label(m).to_string()),
            "rank": q_json(&ob.rank),
            "expected_rank": q_json(&ob.expected_rank),
            "character": class_values(&ob.character),
            "centralizer_order": ob.centralizer.order(),
            "cyclic_checks": ob.cyclic_checks,
            "irreducible_terms": ob.irreducible_terms,
            "honest": ob.honest(),
            "chen_hu_agrees": chen_hu,
        }));
    }
    let json = json!({
        "action": action.name(),
        "group": g.name(),
        "dimension": action.dim(),
        "sectors": sectors,
        "obstructions": rows,
        "passed": passed,
    });
    Ok(Outcome { kind: "obstruction", json, table, passed })
}

fn eichler(group: &str, monodromy: &str, genus: usize, handles: &str) -> Result<Outcome, Error> {
    let g = load_group_arg(group)?;
    let branch = g.parse_elements(monodromy)?;
    let mut pairs = Vec::new();
    for h in split_list(handles) {
        let (a, b) = h.split_once(':').ok_or_else(|| Error::Parse(format!("handle `{h}` is not of the form a:b")))?;
        pairs.push((g.parse_element(a)?, g.parse_element(b)?));
    }
    let datum = if pairs.is_empty() && genus > 0 {
        MonodromyDatum::with_handles(genus, branch, vec![(0, 0); genus])
    } else {
        MonodromyDatum::with_handles(genus.max(pairs.len()), branch, pairs)
    };
    let cover = cover_genus(&datum, &g)?;
    let lhs = eichler_h1(&datum, &g)?;
    let rhs = rep_magic_rhs(&datum, &g)?;
    let equal = lhs == rhs;
    let labels = |xs: &[usize]| xs.iter().map(|&x| g.label(x).to_string()).collect::<Vec<_>>();
    let json = json!({
        "group": g.name(),
        "genus": datum.genus,
        "branch": labels(&datum.branch),
        "handles": datum.handles.iter().map(|&(a, b)| [g.label(a), g.label(b)]).collect::<Vec<_>>(),
        "cover": cover,
        "eichler": class_values(&lhs),
        "representation_side": class_values(&rhs),
        "equal": equal,
    });
    let table = format!(
        "{}-cover of a genus {} curve: {} component(s) of genus {}\nEichler:        {}\nrepresentation: {}\nequal: {equal}\n",
        g.name(),
        datum.genus,
        cover.components,
        cover.genus,
        class_line(&lhs),
        class_line(&rhs)
    );
    Ok(Outcome { kind: "eichler", json, table, passed: equal })
}

fn euler(model: Option<&str>, chi: Option<i64>, n: Option<usize>) -> Result<Outcome, Error> {
    if let Some(model) = model {
        let report = stringy_euler(&load_model(model)?)?;
        let mut table = format!("{}\n", report.model);
        for t in &report.pairs {
            table.push_str(&format!("  chi(X^<{}, {}>) = {}\n", t.a, t.b, t.chi));
        }
        table.push_str(&format!("stringy Euler characteristic: {}\n", report.total));
        let json = serde_json::to_value(&report).expect("serializable");
        return Ok(Outcome { kind: "euler", json, table, passed: true });
    }
    let (Some(chi), Some(n)) = (chi, n) else {
        return Err(Error::Parse("give --model, or both --chi and --n".into()));
    };
    let stringy = sym_orbifold_euler(chi, n)?;
    let dhvw = dhvw_coefficient(chi, n)?;
    let equal = stringy == dhvw;
    let json = json!({ "n": n, "chi": chi, "stringy": q_json(&stringy), "dhvw": q_json(&dhvw), "equal": equal });
    let table = format!("Sym^{n} of a surface with chi = {chi}\nstringy: {stringy}\nDHVW:    {dhvw}\nequal: {equal}\n");
    Ok(Outcome { kind: "euler", json, table, passed: equal })
}

fn twist(model: &str, cocycle: &str) -> Result<Outcome, Error> {
    let model = load_model(model)?;
    let path = resolve(cocycle, "cocycles").ok_or_else(|| Error::Io(format!("no cocycle file `{cocycle}`")))?;
    let alpha = load_cocycle(&path, &model.group)?;
    let report = apply_twist(&model, &alpha)?;
    let g = &model.group;
    let beta = alpha.is_coboundary();
    let values: Vec<Value> = g
        .elements()
        .flat_map(|a| g.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| *alpha.get(a, b) != stringy::q(1))
        .map(|(a, b)| json!([g.label(a), g.label(b), q_json(alpha.get(a, b))]))
        .collect();
    let passed = report.passed();
    let json = json!({
        "model": model.name,
        "cocycle": values,
        "coboundary": beta.as_ref().map(|b| b.iter().map(q_json).collect::<Vec<_>>()),
        "chow": ring_json(&report.chow),
        "k": ring_json(&report.k),
        "axiom_report": { "chow": report.chow_axioms.to_json(), "k": report.k_axioms.to_json() },
        "cch_report": report.cch,
        "passed": passed,
    });
    let mut table = ring_table(&report.chow);
    table.push_str(&axiom_lines(&report.chow_axioms));
    table.push_str(&axiom_lines(&report.k_axioms));
    table.push_str(&format!(
        "cocycle is {}a coboundary\nChern character allometric: {}\noverall: {}\n",
        if beta.is_some() { "" } else { "not " },
        report.cch.is_allometric(),
        pass(passed)
    ));
    Ok(Outcome { kind: "twist", json, table, passed })
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Ring { model, kind, invariants } => ring(model, *kind, *invariants),
        Command::Verify { model, suite } => verify(model, *suite, cli.verbose > 0),
        Command::Obstruction { model } => obstruction(model),
        Command::Eichler { group, monodromy, genus, handles } => eichler(group, monodromy, *genus, handles),
        Command::Euler { model, chi, n } => euler(model.as_deref(), *chi, *n),
        Command::Twist { model, cocycle } => twist(model, cocycle),
    }
}

/// Parses `argv`, prints the report to `out` and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let text = match cli.format {
                Format::Json => {
                    let doc = document(o.kind, o.json);
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                Format::Table => o.table,
            };
            let _ = out.write_all(text.as_bytes());
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
