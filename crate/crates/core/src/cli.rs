//! The `kst` command line.
//!
//! Exit codes: 0 on success, 1 for unreadable or invalid input, 2 when an
//! internal consistency check fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{self, ClassificationReport, Criterion};
use crate::delineation::{delineate, DelineationResult, DEFAULT_MAX_COMPETENCIES};
use crate::distributed::{self, MergeMode};
use crate::error::{Error, Result};
use crate::io::{self, Document};
use crate::itemset::ItemSet;
use crate::multimap::FuzzySkillMultimap;
use crate::structure::KnowledgeStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "kst", version, about = "Knowledge structures delineated by fuzzy skill multimaps")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Refuse to enumerate joins of more distinct competencies than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COMPETENCIES)]
    max_competencies: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StructureSource {
    /// A multimap or structure document.
    file: Option<PathBuf>,
    /// A structure document.
    #[arg(long)]
    structure: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a multimap document.
    Validate { file: PathBuf },
    /// List the delineated states with one witness profile each.
    Delineate { file: PathBuf },
    /// Structural properties and their multimap-side criteria.
    Classify { file: PathBuf },
    /// Separability of items and its multimap-side criteria.
    Separability { file: PathBuf },
    /// Merge items with identical state memberships.
    Quotient {
        #[command(flatten)]
        source: StructureSource,
    },
    /// Inner and outer fringe of a state.
    Fringes {
        #[command(flatten)]
        source: StructureSource,
        /// Comma-separated items of the state; empty for the empty state.
        #[arg(long, allow_hyphen_values = true)]
        state: String,
    },
    /// Merge component multimaps into one document.
    Merge {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Accept parts with comparable competencies.
        #[arg(long)]
        permissive: bool,
    },
    /// Compare a parent structure with part structures.
    Mesh {
        #[arg(long)]
        parent: PathBuf,
        #[arg(long = "part", required = true)]
        parts: Vec<PathBuf>,
    },
    /// Restrict a multimap to some skills or some items.
    Restrict {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', conflicts_with = "items", required_unless_present = "items")]
        skills: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        items: Vec<String>,
    },
    /// Everything about one multimap, as JSON.
    Report { file: PathBuf },
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Invariant(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn load_multimap(path: &Path) -> Result<FuzzySkillMultimap> {
    io::parse_multimap(&io::read_text(path)?)
}

fn delineated(mm: &FuzzySkillMultimap, limit: usize) -> Result<DelineationResult> {
    let dr = delineate(mm, limit)?;
    dr.check_witnesses(mm)?;
    Ok(dr)
}

enum Source {
    Multimap(FuzzySkillMultimap, DelineationResult),
    Structure(KnowledgeStructure),
}

impl Source {
    fn structure(&self) -> &KnowledgeStructure {
        match self {
            Source::Multimap(_, dr) => &dr.structure,
            Source::Structure(ks) => ks,
        }
    }
}

fn load_source(src: &StructureSource, limit: usize) -> Result<Source> {
    if let Some(path) = &src.structure {
        return Ok(Source::Structure(io::parse_structure(&io::read_text(path)?)?));
    }
    let path = src.file.as_ref().expect("clap requires a source");
    load_any(path, limit)
}

fn load_any(path: &Path, limit: usize) -> Result<Source> {
    match io::parse_any(&io::read_text(path)?)? {
        Document::Structure(ks) => Ok(Source::Structure(ks)),
        Document::Multimap(mm) => {
            let dr = delineated(&mm, limit)?;
            Ok(Source::Multimap(mm, dr))
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn set_str(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn states_json(ks: &KnowledgeStructure) -> Value {
    json!(ks.named_states())
}

fn structure_properties(ks: &KnowledgeStructure) -> Vec<(&'static str, bool)> {
    vec![
        ("union_closed", ks.is_union_closed()),
        ("intersection_closed", ks.is_intersection_closed()),
        ("quasi_ordinal", ks.is_quasi_ordinal()),
        ("well_graded", ks.is_well_graded()),
        ("accessible", ks.is_accessible()),
        ("learning_space", ks.is_learning_space()),
        ("discriminative", ks.is_discriminative()),
        ("bi_discriminative", ks.is_bi_discriminative()),
    ]
}

fn properties_json(props: &[(&str, bool)]) -> Value {
    Value::Object(props.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn criterion_json(c: &Criterion) -> Value {
    json!({
        "id": c.id,
        "relation": c.relation.to_string(),
        "hypothesis_met": c.hypothesis_met,
        "holds": c.holds,
        "oracle": c.oracle,
        "consistent": c.consistent(),
        "witness": c.witness.as_ref().map(ToString::to_string),
    })
}

fn report_json(r: &ClassificationReport) -> Value {
    Value::Array(r.records.iter().map(criterion_json).collect())
}

fn properties_table(out: &mut String, props: &[(&str, bool)]) {
    for (k, v) in props {
        let _ = writeln!(out, "{k:<22} {v}");
    }
}

fn report_table(out: &mut String, r: &ClassificationReport) {
    let show = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    for c in &r.records {
        let status = if c.consistent() { "ok" } else { "VIOLATED" };
        let _ = write!(
            out,
            "{:<55} {:<7} condition={:<5} property={:<5} {}",
            c.id,
            c.relation,
            show(c.holds),
            c.oracle,
            status
        );
        if let Some(w) = &c.witness {
            let _ = write!(out, "  [{w}]");
        }
        out.push('\n');
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let limit = cli.max_competencies;
    let json = cli.format == Format::Json;
    let mut out = String::new();
    match &cli.command {
        Command::Validate { file } => {
            let mm = load_multimap(file)?;
            let pool = mm.competency_pool().len();
            let v = json!({
                "valid": true,
                "items": mm.len(),
                "skills": mm.domain().len(),
                "distinct_competencies": pool,
                "skill_function": mm.is_fuzzy_skill_function(),
                "disjunctive": mm.is_disjunctive(),
                "conjunctive": mm.is_conjunctive(),
            });
            if json {
                return Ok(to_json(&v));
            }
            let _ = writeln!(out, "valid: {} items, {} skills, {pool} distinct competencies", mm.len(), mm.domain().len());
            let _ = writeln!(out, "skill function: {}", mm.is_fuzzy_skill_function());
            let _ = writeln!(out, "disjunctive: {}", mm.is_disjunctive());
            let _ = writeln!(out, "conjunctive: {}", mm.is_conjunctive());
        }
        Command::Delineate { file } => {
            let mm = load_multimap(file)?;
            let dr = delineated(&mm, limit)?;
            let ks = &dr.structure;
            if json {
                let witnesses: Vec<Value> = ks
                    .sorted_states()
                    .iter()
                    .map(|s| {
                        json!({
                            "state": ks.names(s),
                            "profile": io::competency_document(dr.witness(s).expect("every state has a witness")),
                        })
                    })
                    .collect();
                return Ok(to_json(&json!({
                    "items": ks.items(),
                    "states": states_json(ks),
                    "witnesses": witnesses,
                })));
            }
            let _ = writeln!(out, "{} states", ks.len());
            for s in ks.sorted_states() {
                let w = dr.witness(&s).expect("every state has a witness");
                let _ = writeln!(out, "{:<24} <- {w}", set_str(&ks.names(&s)));
            }
        }
        Command::Classify { file } => {
            let mm = load_multimap(file)?;
            let dr = delineated(&mm, limit)?;
            let props = structure_properties(&dr.structure);
            let report = classify::classify(&mm, &dr);
            if json {
                return Ok(to_json(&json!({
                    "states": states_json(&dr.structure),
                    "properties": properties_json(&props),
                    "criteria": report_json(&report),
                })));
            }
            properties_table(&mut out, &props);
            out.push('\n');
            report_table(&mut out, &report);
        }
        Command::Separability { file } => {
            let mm = load_multimap(file)?;
            let dr = delineated(&mm, limit)?;
            let ks = &dr.structure;
            let props = vec![
                ("discriminative", ks.is_discriminative()),
                ("bi_discriminative", ks.is_bi_discriminative()),
            ];
            let report = classify::separability(&mm, &dr);
            if json {
                return Ok(to_json(&json!({
                    "properties": properties_json(&props),
                    "criteria": report_json(&report),
                })));
            }
            properties_table(&mut out, &props);
            out.push('\n');
            report_table(&mut out, &report);
        }
        Command::Quotient { source } => {
            let src = load_source(source, limit)?;
            let q = src.structure().quotient();
            let classes: Vec<Vec<String>> = q.classes.iter().map(|c| src.structure().names(c)).collect();
            if json {
                return Ok(to_json(&json!({
                    "classes": classes,
                    "items": q.structure.items(),
                    "states": states_json(&q.structure),
                    "discriminative": q.structure.is_discriminative(),
                })));
            }
            for c in &classes {
                let _ = writeln!(out, "class {}", set_str(c));
            }
            for s in q.structure.named_states() {
                let _ = writeln!(out, "state {}", set_str(&s));
            }
        }
        Command::Fringes { source, state } => {
            let src = load_source(source, limit)?;
            let ks = src.structure();
            let names: Vec<&str> = state.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let k = ks.item_set(&names)?;
            let f = ks.fringes(&k)?;
            let mut witnesses = serde_json::Map::new();
            if let Source::Multimap(mm, dr) = &src {
                if classify::cond_ks_molecule(mm) {
                    fringe_witnesses(mm, dr, &k, &f.inner, &f.outer, &mut witnesses)?;
                }
            }
            if json {
                return Ok(to_json(&json!({
                    "state": ks.names(&f.state),
                    "inner": ks.names(&f.inner),
                    "outer": ks.names(&f.outer),
                    "fringe": ks.names(&f.fringe),
                    "witnesses": witnesses,
                })));
            }
            let _ = writeln!(out, "state  {}", set_str(&ks.names(&f.state)));
            let _ = writeln!(out, "inner  {}", set_str(&ks.names(&f.inner)));
            let _ = writeln!(out, "outer  {}", set_str(&ks.names(&f.outer)));
            let _ = writeln!(out, "fringe {}", set_str(&ks.names(&f.fringe)));
            for (q, w) in &witnesses {
                let _ = writeln!(out, "witness {q}: {w}");
            }
        }
        Command::Merge { files, permissive } => {
            let parts = files.iter().map(|f| load_multimap(f)).collect::<Result<Vec<_>>>()?;
            let mode = if *permissive { MergeMode::Permissive } else { MergeMode::Strict };
            let mr = distributed::merge(&parts, mode)?;
            if !mr.is_skill_function {
                eprintln!("warning: the merged multimap is not a fuzzy skill function");
            }
            return Ok(multimap_output(&mr.merged, json));
        }
        Command::Mesh { parent, parts } => {
            let parent = load_any(parent, limit)?;
            let parts = parts.iter().map(|p| load_any(p, limit)).collect::<Result<Vec<_>>>()?;
            let part_structures: Vec<KnowledgeStructure> = parts.iter().map(|p| p.structure().clone()).collect();
            let r = distributed::mesh_report(parent.structure(), &part_structures);
            if json {
                return Ok(to_json(&json!({
                    "mesh": r.is_mesh(),
                    "covers": r.covers,
                    "first_mismatch": r.first_mismatch,
                })));
            }
            let _ = writeln!(out, "mesh   {}", r.is_mesh());
            let _ = writeln!(out, "covers {}", r.covers);
            if let Some(i) = r.first_mismatch {
                let _ = writeln!(out, "part {i} differs from the trace of the parent");
            }
        }
        Command::Restrict { file, skills, items } => {
            let mm = load_multimap(file)?;
            let restricted = if items.is_empty() {
                let r = distributed::zero_restrict(&mm, skills)?;
                if r.zeroed > 0 {
                    eprintln!("warning: {} competencies vanished on the chosen skills", r.zeroed);
                }
                r.multimap
            } else {
                distributed::submultimap(&mm, items)?
            };
            return Ok(multimap_output(&restricted, json));
        }
        Command::Report { file } => {
            let mm = load_multimap(file)?;
            let dr = delineated(&mm, limit)?;
            let ks = &dr.structure;
            let q = ks.quotient();
            return Ok(to_json(&json!({
                "multimap": io::MultimapDocument::from_multimap(&mm),
                "skill_function": mm.is_fuzzy_skill_function(),
                "disjunctive": mm.is_disjunctive(),
                "conjunctive": mm.is_conjunctive(),
                "states": states_json(ks),
                "properties": properties_json(&structure_properties(ks)),
                "criteria": report_json(&classify::classify(&mm, &dr)),
                "separability": report_json(&classify::separability(&mm, &dr)),
                "quotient": {
                    "classes": q.classes.iter().map(|c| ks.names(c)).collect::<Vec<_>>(),
                    "states": states_json(&q.structure),
                },
            })));
        }
    }
    Ok(out)
}

fn multimap_output(mm: &FuzzySkillMultimap, json: bool) -> String {
    if json {
        return io::serialize_multimap(mm);
    }
    let mut out = String::new();
    for (q, fam) in mm.items().iter().zip(mm.families()) {
        let fam: Vec<String> = fam.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{q}: {}", fam.join(" "));
    }
    out
}

fn fringe_witnesses(
    mm: &FuzzySkillMultimap,
    dr: &DelineationResult,
    k: &ItemSet,
    inner: &ItemSet,
    outer: &ItemSet,
    out: &mut serde_json::Map<String, Value>,
) -> Result<()> {
    let items = mm.items();
    for q in outer.iter() {
        let w = classify::outer_fringe_witness(mm, dr, k, q)?
            .ok_or_else(|| Error::Invariant(format!("outer fringe item {} has no witness", items[q])))?;
        out.insert(items[q].clone(), json!(w.to_string()));
    }
    for r in inner.iter() {
        let w = classify::inner_fringe_witness(mm, dr, k, r)?
            .ok_or_else(|| Error::Invariant(format!("inner fringe item {} has no witness", items[r])))?;
        let shown: Vec<String> = w.iter().map(|(q, t)| format!("{q}:{t}")).collect();
        out.insert(items[r].clone(), json!(shown.join(" ")));
    }
    Ok(())
}
