//! Text formats: Cayley tables, partial-permutation generators, graphs,
//! monoid presentations and congruences. `#` starts a comment everywhere.

use std::fmt::Write as _;

use crate::boolean::{check_bis, BooleanInverseSemigroup};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::pperm::{generate, PartialPerm, DEFAULT_ELEMENT_CAP};
use crate::semigroup::{InverseSemigroup, ZERO};
use crate::typemonoid::MonoidPresentation;

/// A whitespace-separated token with its 1-based position.
#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-empty lines with comments stripped, as token lists.
fn lines(input: &str) -> Vec<Vec<Token<'_>>> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &text[s..pos],
                            line: i + 1,
                            column: text[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(tokens)
        })
        .collect()
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn at(t: &Token<'_>, message: impl Into<String>) -> Error {
    parse_err(t.line, t.column, message)
}

fn end_of_input(input: &str, message: &str) -> Error {
    parse_err(
        input.lines().count().max(1),
        1,
        format!("unexpected end of input: {message}"),
    )
}

fn number<T: std::str::FromStr>(t: &Token<'_>) -> Result<T> {
    t.text
        .parse()
        .map_err(|_| at(t, format!("expected a number, found `{}`", t.text)))
}

fn keyword(t: &Token<'_>, word: &str) -> Result<()> {
    if t.text == word {
        Ok(())
    } else {
        Err(at(t, format!("expected `{word}`, found `{}`", t.text)))
    }
}

/// The kind of an input file, judged by its first keyword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Cayley,
    Generators,
    Graph,
    Presentation,
    Congruence,
}

pub fn detect(input: &str) -> Result<InputKind> {
    let all = lines(input);
    let first = all
        .first()
        .and_then(|l| l.first())
        .ok_or_else(|| end_of_input(input, "empty file"))?;
    match first.text {
        "semigroup" | "boolean" => Ok(InputKind::Cayley),
        "points" => Ok(InputKind::Generators),
        "vertex" | "edge" => Ok(InputKind::Graph),
        "monoid" => Ok(InputKind::Presentation),
        "congruence" => Ok(InputKind::Congruence),
        other => Err(at(first, format!("unknown file type `{other}`"))),
    }
}

/// A parsed Cayley file.
#[derive(Clone, Debug)]
pub struct CayleyFile {
    pub semigroup: InverseSemigroup,
    /// Present when the file carried the `boolean certified` header; the
    /// certificate is re-checked on parsing.
    pub certified: Option<BooleanInverseSemigroup>,
}

/// Parses the Cayley format. A zero at index `z ≠ 0` is swapped to index 0.
/// An optional `labels` line names the elements.
pub fn parse_cayley(input: &str) -> Result<CayleyFile> {
    let all = lines(input);
    let mut it = all.iter().peekable();
    let mut certified = false;
    if let Some(l) = it.peek() {
        if l[0].text == "boolean" {
            if l.len() != 2 || l[1].text != "certified" {
                return Err(at(&l[0], "expected `boolean certified`"));
            }
            certified = true;
            it.next();
        }
    }
    let head = it
        .next()
        .ok_or_else(|| end_of_input(input, "missing `semigroup` line"))?;
    keyword(&head[0], "semigroup")?;
    let n: usize = number(head.get(1).ok_or_else(|| at(&head[0], "missing size"))?)?;
    if n == 0 {
        return Err(at(&head[1], "size must be positive"));
    }
    let zl = it.next().ok_or_else(|| end_of_input(input, "missing `zero` line"))?;
    keyword(&zl[0], "zero")?;
    let zt = zl.get(1).ok_or_else(|| at(&zl[0], "missing zero index"))?;
    let zero: usize = number(zt)?;
    if zero >= n {
        return Err(at(zt, format!("zero index {zero} out of range")));
    }
    let read_index = |t: &Token<'_>| -> Result<usize> {
        let x: usize = number(t)?;
        if x >= n {
            return Err(at(t, format!("index {x} out of range")));
        }
        Ok(x)
    };
    let mut mul = Vec::with_capacity(n * n);
    for row in 0..n {
        let l = it
            .next()
            .ok_or_else(|| end_of_input(input, &format!("missing table row {}", row + 1)))?;
        if l.len() != n {
            return Err(at(&l[0], format!("table row has {} entries, expected {n}", l.len())));
        }
        for t in l {
            mul.push(read_index(t)?);
        }
    }
    let il = it.next().ok_or_else(|| end_of_input(input, "missing `inv` line"))?;
    keyword(&il[0], "inv")?;
    let mut inv_tokens: Vec<&Token<'_>> = il[1..].iter().collect();
    if inv_tokens.is_empty() {
        let l = it
            .next()
            .ok_or_else(|| end_of_input(input, "missing inverse indices"))?;
        inv_tokens = l.iter().collect();
    }
    if inv_tokens.len() != n {
        return Err(at(
            &il[0],
            format!("{} inverse entries, expected {n}", inv_tokens.len()),
        ));
    }
    let mut inv = Vec::with_capacity(n);
    for t in inv_tokens {
        inv.push(read_index(t)?);
    }
    let mut labels = None;
    if let Some(l) = it.next() {
        keyword(&l[0], "labels")?;
        if l.len() != n + 1 {
            return Err(at(&l[0], format!("{} labels, expected {n}", l.len() - 1)));
        }
        labels = Some(l[1..].iter().map(|t| t.text.to_string()).collect::<Vec<_>>());
    }
    if let Some(extra) = it.next() {
        return Err(at(&extra[0], "unexpected content after the table"));
    }
    // relabel so that the zero sits at index 0
    let swap = |x: usize| {
        if x == zero {
            0
        } else if x == 0 {
            zero
        } else {
            x
        }
    };
    let mul2: Vec<usize> = (0..n * n).map(|i| swap(mul[swap(i / n) * n + swap(i % n)])).collect();
    let inv2: Vec<usize> = (0..n).map(|i| swap(inv[swap(i)])).collect();
    let labels2 = labels.map(|l| (0..n).map(|i| l[swap(i)].clone()).collect());
    let semigroup = InverseSemigroup::from_table(mul2, inv2, labels2)?;
    if (0..n).any(|a| semigroup.mul(ZERO, a) != ZERO || semigroup.mul(a, ZERO) != ZERO) {
        return Err(at(zt, format!("element {zero} is not a zero")));
    }
    let certified = if certified {
        Some(check_bis(&semigroup).map_err(|f| Error::NotBoolean(f.to_string()))?)
    } else {
        None
    };
    Ok(CayleyFile { semigroup, certified })
}

pub fn write_cayley(s: &InverseSemigroup) -> String {
    write_cayley_impl(s, false)
}

pub fn write_certified(b: &BooleanInverseSemigroup) -> String {
    write_cayley_impl(b.base(), true)
}

fn write_cayley_impl(s: &InverseSemigroup, certified: bool) -> String {
    let n = s.size();
    let mut out = String::new();
    if certified {
        out += "boolean certified\n";
    }
    let _ = writeln!(out, "semigroup {n}");
    out += "zero 0\n";
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| s.mul(a, b).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let inv: Vec<String> = (0..n).map(|a| s.inv(a).to_string()).collect();
    let _ = writeln!(out, "inv {}", inv.join(" "));
    if s.labels()
        .iter()
        .all(|l| !l.is_empty() && !l.contains(char::is_whitespace) && !l.contains('#'))
    {
        let _ = writeln!(out, "labels {}", s.labels().join(" "));
    }
    out
}

/// Parsed generator file: the generators and their closure.
#[derive(Clone, Debug)]
pub struct GeneratorFile {
    pub degree: usize,
    pub names: Vec<String>,
    pub generators: Vec<PartialPerm>,
}

impl GeneratorFile {
    pub fn generate(&self, cap: usize) -> Result<(InverseSemigroup, Vec<PartialPerm>)> {
        generate(&self.generators, cap)
    }
}

/// `points <n>` followed by lines `name: a->b a->b ...` with 1-based points.
pub fn parse_generators(input: &str) -> Result<GeneratorFile> {
    let all = lines(input);
    let mut it = all.iter();
    let head = it.next().ok_or_else(|| end_of_input(input, "missing `points` line"))?;
    keyword(&head[0], "points")?;
    let nt = head.get(1).ok_or_else(|| at(&head[0], "missing point count"))?;
    let degree: usize = number(nt)?;
    let mut names = Vec::new();
    let mut generators = Vec::new();
    for l in it {
        let name = l[0]
            .text
            .strip_suffix(':')
            .ok_or_else(|| at(&l[0], "expected `name:`"))?;
        let mut pairs = Vec::new();
        for t in &l[1..] {
            let (a, b) = t.text.split_once("->").ok_or_else(|| at(t, "expected `a->b`"))?;
            let point = |s: &str| -> Result<usize> {
                let p: usize = s.parse().map_err(|_| at(t, format!("bad point `{s}`")))?;
                if p == 0 || p > degree {
                    return Err(at(t, format!("point {p} outside 1..{degree}")));
                }
                Ok(p - 1)
            };
            pairs.push((point(a)?, point(b)?));
        }
        let g = PartialPerm::new(degree, &pairs).map_err(|e| at(&l[0], e.to_string()))?;
        names.push(name.to_string());
        generators.push(g);
    }
    if generators.is_empty() {
        return Err(end_of_input(input, "no generators"));
    }
    Ok(GeneratorFile {
        degree,
        names,
        generators,
    })
}

pub fn write_generators(file: &GeneratorFile) -> String {
    let mut out = format!("points {}\n", file.degree);
    for (name, g) in file.names.iter().zip(&file.generators) {
        let pairs: Vec<String> = (0..g.degree())
            .filter_map(|x| g.apply(x).map(|y| format!("{}->{}", x + 1, y + 1)))
            .collect();
        let _ = writeln!(out, "{name}: {}", pairs.join(" "));
    }
    out
}

/// Lines `vertex <name>` and `edge <name>: <src> -> <rng>`.
pub fn parse_graph(input: &str) -> Result<DirectedGraph> {
    let mut g = DirectedGraph::new();
    for l in lines(input) {
        match l[0].text {
            "vertex" => {
                if l.len() != 2 {
                    return Err(at(&l[0], "expected `vertex <name>`"));
                }
                g.add_vertex(l[1].text).map_err(|e| at(&l[1], e.to_string()))?;
            }
            "edge" => {
                let shape_ok = l.len() == 5 && l[1].text.ends_with(':') && l[1].text.len() > 1 && l[3].text == "->";
                if !shape_ok {
                    return Err(at(&l[0], "expected `edge <name>: <src> -> <rng>`"));
                }
                let name = l[1].text.trim_end_matches(':');
                g.add_edge(name, l[2].text, l[4].text)
                    .map_err(|e| at(&l[1], e.to_string()))?;
            }
            other => return Err(at(&l[0], format!("expected `vertex` or `edge`, found `{other}`"))),
        }
    }
    Ok(g)
}

pub fn write_graph(g: &DirectedGraph) -> String {
    g.to_string()
}

/// `monoid <k>`, a line of generator labels, then relations
/// `a1 .. ak = b1 .. bk`.
pub fn parse_presentation(input: &str) -> Result<MonoidPresentation> {
    let all = lines(input);
    let mut it = all.iter();
    let head = it.next().ok_or_else(|| end_of_input(input, "missing `monoid` line"))?;
    keyword(&head[0], "monoid")?;
    let kt = head.get(1).ok_or_else(|| at(&head[0], "missing generator count"))?;
    let k: usize = number(kt)?;
    let labels: Vec<String> = if k == 0 {
        Vec::new()
    } else {
        let l = it
            .next()
            .ok_or_else(|| end_of_input(input, "missing generator labels"))?;
        if l.len() != k {
            return Err(at(&l[0], format!("{} labels, expected {k}", l.len())));
        }
        l.iter().map(|t| t.text.to_string()).collect()
    };
    let mut relations = Vec::new();
    for l in it {
        let eq = l
            .iter()
            .position(|t| t.text == "=")
            .ok_or_else(|| at(&l[0], "expected `=`"))?;
        let (lhs, rhs) = (&l[..eq], &l[eq + 1..]);
        if lhs.len() != k || rhs.len() != k {
            return Err(at(&l[0], format!("each side needs {k} entries")));
        }
        let side = |ts: &[Token<'_>]| ts.iter().map(number::<u32>).collect::<Result<Vec<_>>>();
        let (a, b) = (side(lhs)?, side(rhs)?);
        if a == b {
            return Err(at(&l[0], "relation has equal sides"));
        }
        relations.push((a, b));
    }
    MonoidPresentation::new(labels, relations)
}

pub fn write_presentation(p: &MonoidPresentation) -> String {
    let mut out = format!("monoid {}\n", p.rank());
    if p.rank() > 0 {
        let _ = writeln!(out, "{}", p.labels().join(" "));
    }
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    for (l, r) in p.relations() {
        let _ = writeln!(out, "{} = {}", join(l), join(r));
    }
    out
}

/// `congruence` then one line per class.
pub fn parse_congruence(input: &str, s: &InverseSemigroup) -> Result<Congruence> {
    let all = lines(input);
    let mut it = all.iter();
    let head = it
        .next()
        .ok_or_else(|| end_of_input(input, "missing `congruence` line"))?;
    keyword(&head[0], "congruence")?;
    let mut classes = Vec::new();
    for l in it {
        let class = l
            .iter()
            .map(|t| {
                let x: usize = number(t)?;
                if x >= s.size() {
                    return Err(at(t, format!("index {x} out of range")));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>>>()?;
        classes.push(class);
    }
    Congruence::from_classes(s, &classes)
}

pub fn write_congruence(c: &Congruence) -> String {
    let mut out = String::from("congruence\n");
    for class in c.classes() {
        let _ = writeln!(
            out,
            "{}",
            class.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        );
    }
    out
}

/// Reads a Cayley or generator file into a semigroup.
pub fn parse_semigroup(input: &str) -> Result<InverseSemigroup> {
    parse_semigroup_with(input, DEFAULT_ELEMENT_CAP)
}

pub fn parse_semigroup_with(input: &str, cap: usize) -> Result<InverseSemigroup> {
    match detect(input)? {
        InputKind::Cayley => Ok(parse_cayley(input)?.semigroup),
        InputKind::Generators => Ok(parse_generators(input)?.generate(cap)?.0),
        other => Err(Error::Invalid(format!("expected a semigroup, found a {other:?} file"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::example_non_join;
    use crate::graph::examples::fork;
    use crate::pperm::symmetric_inverse_semigroup;

    #[test]
    fn cayley_round_trip() {
        let s = symmetric_inverse_semigroup(2);
        let text = write_cayley(&s);
        let back = parse_cayley(&text).unwrap().semigroup;
        assert_eq!(back, s);
        let b = check_bis(&s).unwrap();
        let certified = parse_cayley(&write_certified(&b)).unwrap();
        assert!(certified.certified.is_some());
    }

    #[test]
    fn cayley_zero_swap() {
        // {1, 0} under multiplication with the zero written at index 1
        let text = "semigroup 2\nzero 1\n0 1\n1 1\ninv\n0 1\n";
        let s = parse_cayley(text).unwrap().semigroup;
        assert_eq!(s.mul(1, 1), 1);
        assert_eq!(s.mul(0, 1), 0);
    }

    #[test]
    fn cayley_errors() {
        let err = parse_cayley("semigroup 2\nzero 0\n0 0\n0 7\ninv 0 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                column: 3,
                message: "index 7 out of range".into()
            }
        );
        assert!(matches!(parse_cayley("# nothing\n"), Err(Error::Parse { .. })));
        let not_boolean = format!("boolean certified\n{}", write_cayley(&example_non_join()));
        assert!(matches!(parse_cayley(&not_boolean), Err(Error::NotBoolean(_))));
    }

    #[test]
    fn generators() {
        let text = "points 2\n# I_2\nswap: 1->2 2->1\nfix: 1->1\n";
        let file = parse_generators(text).unwrap();
        assert_eq!(write_generators(&file), "points 2\nswap: 1->2 2->1\nfix: 1->1\n");
        let (s, _) = file.generate(100).unwrap();
        assert_eq!(s.size(), 7);
        assert!(matches!(
            parse_generators("points 2\ng: 1->3\n"),
            Err(Error::Parse { line: 2, column: 4, .. })
        ));
    }

    #[test]
    fn graphs() {
        let g = fork();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let g = parse_graph("edge e: v -> w  # implicit vertices\n").unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert!(matches!(
            parse_graph("edge e v -> w\n"),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
    }

    #[test]
    fn presentations() {
        let text = "monoid 3\ng1 g2 g3\n2 0 0 = 0 1 0\n1 1 0 = 0 0 1\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relations().len(), 2);
        assert_eq!(write_presentation(&p), text);
        assert!(parse_presentation("monoid 1\ng\n1 = 1\n").is_err());
    }

    #[test]
    fn congruences() {
        let s = example_non_join();
        let c = Congruence::from_classes(&s, &[vec![0], vec![1], vec![2], vec![3, 4]]).unwrap();
        let text = write_congruence(&c);
        assert_eq!(parse_congruence(&text, &s).unwrap(), c);
    }

    #[test]
    fn detection() {
        assert_eq!(detect("# c\nsemigroup 1\n").unwrap(), InputKind::Cayley);
        assert_eq!(detect("points 3\n").unwrap(), InputKind::Generators);
        assert_eq!(detect("vertex v\n").unwrap(), InputKind::Graph);
        assert_eq!(detect("monoid 0\n").unwrap(), InputKind::Presentation);
    }
}
