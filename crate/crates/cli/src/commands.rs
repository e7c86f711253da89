use std::path::Path;

use bisem_core::boolean::{check_bis_with, BisFailure, BisOptions, BooleanInverseSemigroup};
use bisem_core::congruence::{classify, mu};
use bisem_core::graph::{
    graph_inverse_semigroup_with, graph_monoid, path_count_matrix, tight_booleanization_with, verify_graph_theorem,
    DirectedGraph, GraphTheoremReport,
};
use bisem_core::io::{self, InputKind};
use bisem_core::rook::{grm_semigroup_with, verify_d_lemmas, verify_delta_embedding, verify_type_theorem};
use bisem_core::structure::{atom_groupoid, decompose_with};
use bisem_core::typemonoid::{certify_free, decide_equal, typ, MonoidPresentation, NVec, WordBudget, WordVerdict};
use bisem_core::{Error, InverseSemigroup};

use crate::report::{Report, Section};

/// Budgets shared by every verb.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub elements: usize,
    pub words: WordBudget,
}

/// What a command failed with: bad input (exit 1) or a failed check (exit 2).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::BadVector(_) | Error::Invalid(_) => Failure::Usage(e.to_string()),
            Error::ClosureBudgetExceeded { .. } | Error::SizeBudgetExceeded { .. } => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

pub enum Input {
    Semigroup {
        kind: &'static str,
        semigroup: InverseSemigroup,
    },
    Graph(DirectedGraph),
    Presentation(MonoidPresentation),
}

pub fn load(path: &Path, budgets: Budgets) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(match io::detect(&text)? {
        InputKind::Cayley => Input::Semigroup {
            kind: "cayley table",
            semigroup: io::parse_cayley(&text)?.semigroup,
        },
        InputKind::Generators => Input::Semigroup {
            kind: "generators",
            semigroup: io::parse_generators(&text)?.generate(budgets.elements)?.0,
        },
        InputKind::Graph => Input::Graph(io::parse_graph(&text)?),
        InputKind::Presentation => Input::Presentation(io::parse_presentation(&text)?),
        InputKind::Congruence => return Err(Failure::Usage("a congruence file needs a semigroup".into())),
    })
}

fn input_section(path: &Path, kind: &str, size: usize) -> Section {
    Section::new("input", format!("{} ({kind}, {size} elements)", path.display()))
        .field("path", path.display())
        .field("kind", kind)
        .field("size", size)
}

fn certify(s: &InverseSemigroup, report: &mut Report) -> Option<BooleanInverseSemigroup> {
    let verified = s.verify();
    if !verified.is_valid() {
        let first = verified.violations[0].to_string();
        report.fail(
            Section::new("inverse", format!("FAIL {first}"))
                .field("valid", false)
                .field("violations", verified.violations.len())
                .field("first", first),
        );
        return None;
    }
    report.push(
        Section::new("inverse", "OK")
            .field("valid", true)
            .field("associativity_checked", verified.associativity_checked),
    );
    match check_bis_with(s, BisOptions::default()) {
        Ok(b) => {
            report.push(Section::new("boolean", "OK").field("verdict", "ok"));
            Some(b)
        }
        Err(BisFailure::Bis2 { a, b, upper_bounds }) => {
            let bounds: Vec<&str> = upper_bounds.iter().map(|&u| s.label(u)).collect();
            report.fail(
                Section::new("boolean", format!("FAIL (BIS2) witness {},{}", s.label(a), s.label(b)))
                    .field("verdict", "fail")
                    .field("axiom", "BIS2")
                    .field("witness", format!("{},{}", s.label(a), s.label(b)))
                    .field("minimal_upper_bounds", bounds.join(",")),
            );
            None
        }
        Err(BisFailure::Bis1(g)) => {
            report.fail(
                Section::new("boolean", format!("FAIL (BIS1) {g}"))
                    .field("verdict", "fail")
                    .field("axiom", "BIS1")
                    .field("reason", g),
            );
            None
        }
        Err(other) => {
            report.fail(
                Section::new("boolean", format!("FAIL {other}"))
                    .field("verdict", "fail")
                    .field("reason", other),
            );
            None
        }
    }
}

fn typ_summary(pres: &MonoidPresentation) -> (String, Option<usize>) {
    match certify_free(pres) {
        Some(cert) => {
            let r = cert.rank();
            let noun = if r == 1 { "generator" } else { "generators" };
            (format!("free on {r} {noun}"), Some(r))
        }
        None => (pres.to_string(), None),
    }
}

/// Full pipeline on a semigroup: axioms, Boolean certificate, μ and
/// classification, decomposition, `Int` and `Typ`.
fn analyze_semigroup(s: &InverseSemigroup, budgets: Budgets, report: &mut Report) -> Result<(), Failure> {
    let m = mu(s)?;
    let nontrivial = m.classes().iter().filter(|c| c.len() > 1).count();
    let Some(b) = certify(s, report) else {
        report.push(
            Section::new(
                "mu",
                if m.is_identity() {
                    "trivial".to_string()
                } else {
                    format!(
                        "{nontrivial} nontrivial {}",
                        if nontrivial == 1 { "class" } else { "classes" }
                    )
                },
            )
            .field("classes", m.num_classes()),
        );
        return Ok(());
    };
    let flags = classify(&b)?;
    let simple = flags.simple.map_or("unknown".to_string(), |x| x.to_string());
    report.push(
        Section::new(
            "classify",
            format!(
                "fundamental={} additively-0-simple={} simple={simple}",
                flags.fundamental, flags.additively_0_simple
            ),
        )
        .field("fundamental", flags.fundamental)
        .field("additively_0_simple", flags.additively_0_simple)
        .field("simple", &simple)
        .field("mu_classes", m.num_classes()),
    );
    let d = decompose_with(&b, budgets.elements)?;
    report.push(
        Section::new("decompose", d.to_string())
            .field("blocks", d.blocks.len())
            .field("signature", d.to_string())
            .field("fundamental", d.fundamental),
    );
    let t = typ(&b)?;
    report.push(
        Section::new("int", format!("{} classes", t.int.pcm.size()))
            .field("classes", t.int.pcm.size())
            .field("labels", t.int.pcm.labels().join(" ")),
    );
    let (summary, rank) = typ_summary(&t.presentation);
    report.push(
        Section::new("typ", summary)
            .field("free", rank.is_some())
            .field("rank", rank.map_or("-".to_string(), |r| r.to_string()))
            .field("presentation", &t.presentation),
    );
    Ok(())
}

fn graph_sections(g: &DirectedGraph, report: &mut Report) -> Result<(), Failure> {
    let sinks: Vec<&str> = g.sinks().iter().map(|&v| g.vertices()[v].as_str()).collect();
    report.push(
        Section::new(
            "graph",
            format!(
                "{} vertices, {} edges, sinks {{{}}}",
                g.num_vertices(),
                g.num_edges(),
                sinks.join(",")
            ),
        )
        .field("vertices", g.num_vertices())
        .field("edges", g.num_edges())
        .field("sinks", sinks.join(","))
        .field("acyclic", g.is_acyclic()),
    );
    let gm = graph_monoid(g)?;
    let mut section = Section::new("graph_monoid", gm.presentation.to_string()).field("presentation", &gm.presentation);
    if let Some(nf) = &gm.normal_form {
        for (v, row) in nf.iter().enumerate() {
            let vec = GraphTheoremReport::render_vector(row);
            section = section.detail(format!("a_{} = {vec}", g.vertices()[v]));
            section = section.field(&format!("a_{}", g.vertices()[v]), vec);
        }
    }
    report.push(section);
    Ok(())
}

pub fn analyze(path: &Path, budgets: Budgets, graph_theorem: bool) -> Outcome {
    let mut report = Report::default();
    match load(path, budgets)? {
        Input::Semigroup { kind, semigroup } => {
            if graph_theorem {
                return Err(Failure::Usage("--verify-graph-theorem needs a graph file".into()));
            }
            report.push(input_section(path, kind, semigroup.size()));
            analyze_semigroup(&semigroup, budgets, &mut report)?;
        }
        Input::Graph(g) => {
            graph_sections(&g, &mut report)?;
            if !g.is_acyclic() {
                report.push(Section::new("tight", "skipped (graph has a cycle)"));
                return Ok(report);
            }
            let gis = graph_inverse_semigroup_with(&g, budgets.elements)?;
            report.push(
                Section::new("gis", format!("{} elements", gis.semigroup.size())).field("size", gis.semigroup.size()),
            );
            let tb = tight_booleanization_with(&g, budgets.elements)?;
            let s = tb.bis().base().clone();
            report.push(input_section(path, "tight booleanization", s.size()));
            analyze_semigroup(&s, budgets, &mut report)?;
            if graph_theorem {
                theorem_section(&g, budgets, &mut report);
            }
        }
        Input::Presentation(_) => return Err(Failure::Usage("analyze needs a semigroup or graph file".into())),
    }
    Ok(report)
}

fn theorem_section(g: &DirectedGraph, budgets: Budgets, report: &mut Report) {
    match verify_graph_theorem(g, budgets.words) {
        Ok(r) => {
            let line = r.to_string();
            let summary = line.strip_prefix("theorem: ").unwrap_or(&line).to_string();
            let mut section = Section::new("theorem", summary)
                .field("verdict", "verified")
                .field("monoid", r.monoid_name())
                .field("tight_size", r.tight_size);
            for (v, img) in r.images.iter().enumerate() {
                section = section.field(&format!("a_{}", r.vertices[v]), GraphTheoremReport::render_vector(img));
            }
            report.push(section);
        }
        Err(e) => report.fail(
            Section::new("theorem", format!("FAILED ({e})"))
                .field("verdict", "failed")
                .field("reason", e),
        ),
    }
}

pub fn verify_graph(path: &Path, budgets: Budgets) -> Outcome {
    let Input::Graph(g) = load(path, budgets)? else {
        return Err(Failure::Usage("verify-graph needs a graph file".into()));
    };
    let mut report = Report::default();
    graph_sections(&g, &mut report)?;
    theorem_section(&g, budgets, &mut report);
    Ok(report)
}

pub fn graph(path: &Path, budgets: Budgets) -> Outcome {
    let Input::Graph(g) = load(path, budgets)? else {
        return Err(Failure::Usage("graph needs a graph file".into()));
    };
    let mut report = Report::default();
    graph_sections(&g, &mut report)?;
    if g.is_acyclic() {
        let counts = path_count_matrix(&g)?;
        let mut section = Section::new("paths", format!("{} paths", g.paths()?.len()));
        for (v, row) in counts.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            section = section.detail(format!("N({}, ·) = {}", g.vertices()[v], cells.join(" ")));
            section = section.field(&format!("N_{}", g.vertices()[v]), cells.join(" "));
        }
        report.push(section);
        let gis = graph_inverse_semigroup_with(&g, budgets.elements)?;
        report.push(
            Section::new("gis", format!("{} elements", gis.semigroup.size())).field("size", gis.semigroup.size()),
        );
    }
    Ok(report)
}

fn boolean_input(
    path: &Path,
    budgets: Budgets,
    report: &mut Report,
) -> Result<Option<BooleanInverseSemigroup>, Failure> {
    let s = match load(path, budgets)? {
        Input::Semigroup { kind, semigroup } => {
            report.push(input_section(path, kind, semigroup.size()));
            semigroup
        }
        Input::Graph(g) => {
            let tb = tight_booleanization_with(&g, budgets.elements)?;
            report.push(input_section(path, "tight booleanization", tb.bis().size()));
            tb.bis().base().clone()
        }
        Input::Presentation(_) => return Err(Failure::Usage("expected a semigroup or graph file".into())),
    };
    Ok(certify(&s, report))
}

pub fn decompose(path: &Path, budgets: Budgets) -> Outcome {
    let mut report = Report::default();
    let Some(b) = boolean_input(path, budgets, &mut report)? else {
        return Ok(report);
    };
    let d = decompose_with(&b, budgets.elements)?;
    let mut section = Section::new("decompose", d.to_string())
        .field("signature", d.to_string())
        .field("fundamental", d.fundamental);
    for (i, block) in d.blocks.iter().enumerate() {
        let objects: Vec<&str> = block.objects.iter().map(|&e| b.base().label(e)).collect();
        let line = format!(
            "M_{}({}⁰) on {{{}}}",
            block.n,
            block.group.describe(),
            objects.join(",")
        );
        section = section.detail(line.clone()).field(&format!("block{}", i + 1), line);
    }
    report.push(section);
    Ok(report)
}

pub fn parse_vector(text: &str) -> Result<NVec, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Failure::Usage(format!("bad vector entry `{t}` in `{text}`")))
        })
        .collect()
}

pub fn typ_cmd(path: &Path, budgets: Budgets, words: &[String]) -> Outcome {
    let mut report = Report::default();
    let pres = match load(path, budgets)? {
        Input::Presentation(p) => p,
        Input::Graph(g) => graph_monoid(&g)?.presentation,
        Input::Semigroup { kind, semigroup } => {
            report.push(input_section(path, kind, semigroup.size()));
            let Some(b) = certify(&semigroup, &mut report) else {
                return Ok(report);
            };
            typ(&b)?.presentation
        }
    };
    let (summary, rank) = typ_summary(&pres);
    report.push(
        Section::new("typ", summary)
            .field("free", rank.is_some())
            .field("generators", pres.labels().join(" "))
            .field("presentation", &pres),
    );
    match words {
        [] => {}
        [u, v] => {
            let (u, v) = (parse_vector(u)?, parse_vector(v)?);
            pres.check_vector(&u)?;
            pres.check_vector(&v)?;
            report.push(word_section(&pres, &u, &v, budgets.words)?);
        }
        _ => return Err(Failure::Usage("--word must be given exactly twice".into())),
    }
    Ok(report)
}

fn word_section(pres: &MonoidPresentation, u: &[u32], v: &[u32], budget: WordBudget) -> Result<Section, Failure> {
    let (ru, rv) = (pres.render(u), pres.render(v));
    Ok(match decide_equal(pres, u, v, budget)? {
        WordVerdict::Equal { trace } => {
            let mut s = Section::new(
                "word",
                format!(
                    "equal ({} {})",
                    trace.len(),
                    if trace.len() == 1 { "step" } else { "steps" }
                ),
            )
            .field("verdict", "equal")
            .field("steps", trace.len());
            let mut current = ru.clone();
            for (i, step) in trace.iter().enumerate() {
                let next = pres.render(&step.result);
                let dir = if step.forward { "→" } else { "←" };
                s = s.detail(format!("{current} = {next}  (relation {} {dir})", step.relation + 1));
                s = s.field(&format!("step{}", i + 1), format!("{} {dir} {next}", step.relation + 1));
                current = next;
            }
            s
        }
        WordVerdict::Distinct { class } => Section::new(
            "word",
            format!(
                "distinct (class of {ru} has {} {}, excludes {rv})",
                class.len(),
                if class.len() == 1 { "element" } else { "elements" }
            ),
        )
        .field("verdict", "distinct")
        .field("class_size", class.len()),
        WordVerdict::Unknown { explored } => Section::new("word", format!("unknown after {explored} vectors"))
            .field("verdict", "unknown")
            .field("explored", explored),
    })
}

pub fn export_dot(path: &Path, budgets: Budgets, target: Option<&str>) -> Result<String, Failure> {
    match (load(path, budgets)?, target) {
        (Input::Graph(g), Some("graph")) => Ok(g.to_dot("graph")),
        (Input::Graph(g), None | Some("boundary")) => {
            let tb = tight_booleanization_with(&g, budgets.elements)?;
            Ok(tb.groupoid.to_dot("boundary"))
        }
        (Input::Semigroup { semigroup, .. }, None | Some("atoms")) => {
            let b = check_bis_with(&semigroup, BisOptions::default())
                .map_err(|f| Failure::Check(format!("not a Boolean inverse semigroup: {f}")))?;
            Ok(atom_groupoid(&b)?.groupoid.to_dot("atoms"))
        }
        (_, Some(t)) => Err(Failure::Usage(format!("target `{t}` does not apply to this input"))),
        (Input::Presentation(_), None) => Err(Failure::Usage("presentations have no DOT form".into())),
    }
}

/// Largest dimension allowed for semigroups with more than seven elements.
const MAX_DIM_LARGE: usize = 3;

pub fn verify_rook(path: &Path, budgets: Budgets, dim: usize) -> Outcome {
    let mut report = Report::default();
    let Some(b) = boolean_input(path, budgets, &mut report)? else {
        return Ok(report);
    };
    if dim == 0 || (b.size() > 7 && dim > MAX_DIM_LARGE) {
        return Err(Failure::Usage(format!(
            "--dim {dim} is out of range (1..={MAX_DIM_LARGE} for semigroups with more than 7 elements)"
        )));
    }
    let m = grm_semigroup_with(&b, dim, budgets.elements)?;
    report.push(
        Section::new("matrices", format!("M_{dim}(S) has {} elements", m.size()))
            .field("dim", dim)
            .field("size", m.size()),
    );
    verify_delta_embedding(&m)?;
    report.push(Section::new("delta", "additive embedding OK").field("verdict", "ok"));
    let lemmas = verify_d_lemmas(&m)?;
    report.push(
        Section::new("d_lemmas", "OK")
            .field("diagonal_to_delta", lemmas.diagonal_to_delta)
            .field("same_entries", lemmas.same_entries)
            .field("entrywise_d", lemmas.entrywise_d)
            .field("sums", lemmas.sums),
    );
    let t = verify_type_theorem(&m, budgets.words)?;
    let section = |summary: String| {
        Section::new("type_theorem", summary)
            .field("relations_witnessed", t.relations_witnessed)
            .field("pairs_compared", t.pairs_compared)
            .field("mismatches", t.mismatches.len())
    };
    if t.passed() {
        report.push(section(format!(
            "VERIFIED at k={dim} ({} relations witnessed, {} pairs compared)",
            t.relations_witnessed, t.pairs_compared
        )));
    } else {
        let mut s = section(format!("FAILED at k={dim} ({} mismatches)", t.mismatches.len()));
        for m in &t.mismatches {
            s = s.detail(m.clone());
        }
        report.fail(s);
    }
    Ok(report)
}
