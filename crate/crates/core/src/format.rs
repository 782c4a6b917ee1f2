//! Text and JSON file formats for solutions and presentations.
//!
//! Solution files are line based; `#` starts a comment:
//!
//! ```text
//! n = 5
//! g1 = (1,2,3,4)(5)
//! f1 = 2 3 4 1 5
//! ...
//! ```
//!
//! with one `g<i>` and one `f<i>` line per point, or the shorthand
//! `perm_g = ...` / `perm_f = ...` for a permutation solution. A permutation
//! is either a 1-based image table (spaces or commas, optional brackets) or
//! cycle notation. Presentation files hold an optional `n = <k>` header and
//! one `x<i> x<j> = x<k> x<l>` line per relation.
//!
//! Files starting with `{` are read as the JSON documents emitted by
//! `--format machine`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{ConditionViolation, Error, Result};
use crate::perm::Permutation;
use crate::permutation_solution::PermutationSolution;
use crate::presentation::{Relation, TableauPresentation};
use crate::solution::SetSolution;
use crate::word::Word;

/// A parsed solution file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolutionSpec {
    General(SetSolution),
    Permutation(PermutationSolution),
}

impl SolutionSpec {
    pub fn solution(&self) -> SetSolution {
        match self {
            SolutionSpec::General(s) => s.clone(),
            SolutionSpec::Permutation(p) => p.lift(),
        }
    }

    /// The permutation solution, if the file used the shorthand or every
    /// `g_i` (and every `f_j`) is the same permutation.
    pub fn as_permutation(&self) -> Option<PermutationSolution> {
        match self {
            SolutionSpec::Permutation(p) => Some(p.clone()),
            SolutionSpec::General(s) => {
                let (f, g) = (s.f(0), s.g(0));
                let uniform = s.f_family().iter().all(|p| p == f) && s.g_family().iter().all(|p| p == g);
                uniform.then(|| PermutationSolution::new(f.clone(), g.clone()).expect("same degree"))
            }
        }
    }
}

/// JSON form of a solution file.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm_f: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm_g: Option<Vec<usize>>,
}

impl SolutionDoc {
    pub fn from_solution(sol: &SetSolution) -> Self {
        let tables = |fam: &[Permutation]| fam.iter().map(Permutation::one_based).collect();
        SolutionDoc {
            n: sol.n(),
            f: Some(tables(sol.f_family())),
            g: Some(tables(sol.g_family())),
            perm_f: None,
            perm_g: None,
        }
    }

    pub fn from_permutation(ps: &PermutationSolution) -> Self {
        SolutionDoc {
            n: ps.n(),
            f: None,
            g: None,
            perm_f: Some(ps.f().one_based()),
            perm_g: Some(ps.g().one_based()),
        }
    }

    pub fn to_spec(&self) -> Result<SolutionSpec> {
        let check_len = |len: usize, what: &str| {
            if len == self.n {
                Ok(())
            } else {
                Err(Error::Input(format!("{what} has {len} entries, expected {}", self.n)))
            }
        };
        match (&self.f, &self.g, &self.perm_f, &self.perm_g) {
            (Some(f), Some(g), None, None) => {
                check_len(f.len(), "f")?;
                check_len(g.len(), "g")?;
                Ok(SolutionSpec::General(SetSolution::from_tables(f, g)?))
            }
            (None, None, Some(pf), Some(pg)) => {
                check_len(pf.len(), "perm_f")?;
                check_len(pg.len(), "perm_g")?;
                Ok(SolutionSpec::Permutation(PermutationSolution::new(
                    Permutation::from_one_based(pf)?,
                    Permutation::from_one_based(pg)?,
                )?))
            }
            _ => Err(Error::Input(
                "a solution needs either both f and g or both perm_f and perm_g".into(),
            )),
        }
    }
}

/// JSON form of a presentation file.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub n: usize,
    pub relations: Vec<String>,
}

impl PresentationDoc {
    pub fn from_presentation(p: &TableauPresentation) -> Self {
        PresentationDoc {
            n: p.n(),
            relations: p.relations().iter().map(Relation::to_string).collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<TableauPresentation> {
        let mut text = format!("n = {}\n", self.n);
        for r in &self.relations {
            text.push_str(r);
            text.push('\n');
        }
        parse_presentation_text(&text)
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

/// Parses a solution file in text or JSON form.
pub fn parse_solution(text: &str) -> Result<SolutionSpec> {
    if looks_like_json(text) {
        let doc: SolutionDoc = serde_json::from_str(text).map_err(json_error)?;
        return doc.to_spec();
    }
    parse_solution_text(text)
}

/// Parses a presentation file in text or JSON form.
pub fn parse_presentation(text: &str) -> Result<TableauPresentation> {
    if looks_like_json(text) {
        let doc: PresentationDoc = serde_json::from_str(text).map_err(json_error)?;
        return doc.to_presentation();
    }
    parse_presentation_text(text)
}

/// A non-empty, non-comment line split at `=`: the key, and the value with
/// the 1-based column where it starts.
struct Line<'a> {
    number: usize,
    key: &'a str,
    key_col: usize,
    value: &'a str,
    value_col: usize,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        (!body.trim().is_empty()).then_some((k + 1, body))
    })
}

fn col_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

fn split_assignment(number: usize, body: &str) -> Result<Line<'_>> {
    let Some(eq) = body.find('=') else {
        let start = body.trim_start();
        return Err(Error::parse(number, col_of(body, start), "expected `key = value`"));
    };
    let key = body[..eq].trim();
    let value = body[eq + 1..].trim();
    if key.is_empty() {
        return Err(Error::parse(number, eq + 1, "missing key before `=`"));
    }
    Ok(Line {
        number,
        key,
        key_col: col_of(body, key),
        value,
        value_col: if value.is_empty() { eq + 2 } else { col_of(body, value) },
    })
}

fn parse_count(line: &Line) -> Result<usize> {
    line.value
        .parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::parse(line.number, line.value_col, "n must be a positive integer"))
}

/// Parses a permutation of degree `n` given as an image table or cycles.
fn parse_permutation(line: &Line, n: usize) -> Result<Permutation> {
    let err = |col: usize, msg: String| Error::parse(line.number, col, msg);
    let mut numbers: Vec<(usize, usize)> = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let cyclic = line.value.starts_with('(');
    let mut open = false;
    let mut chars = line.value.char_indices().peekable();
    while let Some((off, c)) = chars.next() {
        let col = line.value_col + line.value[..off].chars().count();
        match c {
            '0'..='9' => {
                let mut end = off + 1;
                while let Some(&(o, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = o + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v: usize = line.value[off..end]
                    .parse()
                    .map_err(|_| err(col, "number too large".into()))?;
                if v == 0 || v > n {
                    return Err(err(col, format!("entry {v} out of range 1..{n}")));
                }
                if cyclic {
                    if !open {
                        return Err(err(col, "entry outside parentheses".into()));
                    }
                    cycles.last_mut().expect("open cycle").push(v);
                } else {
                    numbers.push((v, col));
                }
            }
            '(' if cyclic => {
                if open {
                    return Err(err(col, "nested `(`".into()));
                }
                open = true;
                cycles.push(Vec::new());
            }
            ')' if cyclic => {
                if !open {
                    return Err(err(col, "unmatched `)`".into()));
                }
                open = false;
            }
            '[' | ']' if !cyclic => {}
            ',' => {}
            c if c.is_whitespace() => {}
            c => return Err(err(col, format!("unexpected character `{c}`"))),
        }
    }
    if open {
        return Err(err(line.value_col, "unclosed `(`".into()));
    }
    if cyclic {
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        return Permutation::from_cycles(n, &refs).map_err(|e| err(line.value_col, strip(e)));
    }
    if numbers.len() != n {
        return Err(err(
            line.value_col,
            format!("image table has {} entries, expected {n}", numbers.len()),
        ));
    }
    let mut seen = vec![false; n + 1];
    for &(v, col) in &numbers {
        if std::mem::replace(&mut seen[v], true) {
            return Err(err(col, format!("value {v} repeated; not a permutation")));
        }
    }
    Permutation::from_one_based(&numbers.iter().map(|&(v, _)| v).collect::<Vec<_>>())
        .map_err(|e| err(line.value_col, strip(e)))
}

fn strip(e: Error) -> String {
    match e {
        Error::Input(m) => m,
        other => other.to_string(),
    }
}

fn parse_solution_text(text: &str) -> Result<SolutionSpec> {
    let lines = content_lines(text)
        .map(|(k, body)| split_assignment(k, body))
        .collect::<Result<Vec<_>>>()?;
    let n_line = lines.iter().find(|l| l.key == "n").ok_or_else(|| {
        Error::Input("solution file has no `n = <count>` line".into())
    })?;
    let n = parse_count(n_line)?;
    let mut f: Vec<Option<Permutation>> = vec![None; n];
    let mut g: Vec<Option<Permutation>> = vec![None; n];
    let mut perm_f = None;
    let mut perm_g = None;
    let mut seen_n = false;
    for line in &lines {
        let dup = || Error::parse(line.number, line.key_col, format!("`{}` given twice", line.key));
        match line.key {
            "n" => {
                if std::mem::replace(&mut seen_n, true) {
                    return Err(dup());
                }
            }
            "perm_f" | "perm_g" => {
                let slot = if line.key == "perm_f" { &mut perm_f } else { &mut perm_g };
                if slot.replace(parse_permutation(line, n)?).is_some() {
                    return Err(dup());
                }
            }
            key => {
                let (family, index) = match key.split_at(1) {
                    ("f", rest) => (&mut f, rest),
                    ("g", rest) => (&mut g, rest),
                    _ => return Err(Error::parse(line.number, line.key_col, format!("unknown key `{key}`"))),
                };
                let i: usize = index
                    .parse()
                    .ok()
                    .filter(|&i| i >= 1 && i <= n)
                    .ok_or_else(|| {
                        Error::parse(line.number, line.key_col, format!("unknown key `{key}` for n = {n}"))
                    })?;
                if family[i - 1].replace(parse_permutation(line, n)?).is_some() {
                    return Err(dup());
                }
            }
        }
    }
    let any_general = f.iter().chain(&g).any(Option::is_some);
    match (perm_f, perm_g) {
        (None, None) => {
            let collect = |fam: Vec<Option<Permutation>>, name: char| {
                fam.into_iter()
                    .enumerate()
                    .map(|(i, p)| p.ok_or_else(|| Error::Input(format!("missing line `{name}{}`", i + 1))))
                    .collect::<Result<Vec<_>>>()
            };
            let g = collect(g, 'g')?;
            let f = collect(f, 'f')?;
            Ok(SolutionSpec::General(SetSolution::new(f, g)?))
        }
        (Some(pf), Some(pg)) if !any_general => {
            Ok(SolutionSpec::Permutation(PermutationSolution::new(pf, pg)?))
        }
        (Some(_), Some(_)) => Err(Error::Input(
            "perm_f/perm_g cannot be mixed with f<i>/g<i> lines".into(),
        )),
        _ => Err(Error::Input("perm_f and perm_g must be given together".into())),
    }
}

fn parse_side(number: usize, line: &str, side: &str, n: usize) -> Result<Vec<usize>> {
    let col = col_of(line, side);
    let word = Word::parse(side, usize::MAX).map_err(|e| Error::parse(number, col, strip(e)))?;
    if let Some(&x) = word.iter().find(|&&x| x >= n) {
        return Err(Error::parse(
            number,
            col,
            format!("generator x{} out of range for n = {n}", x + 1),
        ));
    }
    Ok(word.into_letters())
}

fn parse_presentation_text(text: &str) -> Result<TableauPresentation> {
    let mut n = None;
    let mut raw: Vec<(usize, &str, &str, &str)> = Vec::new();
    for (number, body) in content_lines(text) {
        let line = split_assignment(number, body)?;
        if line.key == "n" {
            if n.is_some() || !raw.is_empty() {
                return Err(Error::parse(number, line.key_col, "`n = ...` must be the first line, once"));
            }
            n = Some(parse_count(&line)?);
            continue;
        }
        if line.value.contains('=') {
            return Err(Error::parse(number, line.value_col, "a relation has exactly one `=`"));
        }
        raw.push((number, body, line.key, line.value));
    }
    let n = match n {
        Some(n) => n,
        None => {
            let mut max = 0;
            for &(number, body, l, r) in &raw {
                for side in [l, r] {
                    let w = parse_side(number, body, side, usize::MAX)?;
                    max = max.max(w.iter().map(|&x| x + 1).max().unwrap_or(0));
                }
            }
            if max == 0 {
                return Err(Error::Input("empty presentation without an `n = ...` header".into()));
            }
            max
        }
    };
    let mut relations = Vec::with_capacity(raw.len());
    for &(number, body, l, r) in &raw {
        let mut pairs = [(0, 0); 2];
        for (slot, side) in pairs.iter_mut().zip([l, r]) {
            let w = parse_side(number, body, side, n)?;
            if w.len() != 2 {
                return Err(ConditionViolation::SideLength {
                    side: side.to_string(),
                }
                .into());
            }
            *slot = (w[0], w[1]);
        }
        let rel = Relation::new(pairs[0], pairs[1])
            .ok_or_else(|| Error::parse(number, col_of(body, l), "trivial relation `w = w`"))?;
        relations.push(rel);
    }
    TableauPresentation::new(n, relations)
}

/// Text form of a general solution.
pub fn write_solution(sol: &SetSolution) -> String {
    let mut out = format!("n = {}\n", sol.n());
    for (i, p) in sol.g_family().iter().enumerate() {
        let _ = writeln!(out, "g{} = {}", i + 1, table(p));
    }
    for (i, p) in sol.f_family().iter().enumerate() {
        let _ = writeln!(out, "f{} = {}", i + 1, table(p));
    }
    out
}

/// Text form of a permutation solution, using the shorthand keys.
pub fn write_permutation_solution(ps: &PermutationSolution) -> String {
    format!(
        "n = {}\nperm_g = {}\nperm_f = {}\n",
        ps.n(),
        table(ps.g()),
        table(ps.f())
    )
}

fn table(p: &Permutation) -> String {
    p.one_based()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::presentation::presentation_of;

    const EXAMPLE1: &str = "\
# five points
n = 5
g1 = (1,2,3,4)(5)
g2 = (1,4,3,2)
g3 = 2 3 4 1 5
g4 = [4, 1, 2, 3, 5]
g5 = 1 2 3 4 5
f1 = (1,2,3,4)
f2 = (1,4,3,2)
f3 = (1,2,3,4)
f4 = (1,4,3,2)
f5 = ()
";

    #[test]
    fn reads_mixed_notation() {
        let spec = parse_solution(EXAMPLE1).unwrap();
        assert_eq!(spec.solution(), examples::example1());
        assert_eq!(spec.as_permutation(), None);
    }

    #[test]
    fn text_round_trip() {
        let sol = examples::example1();
        let text = write_solution(&sol);
        assert_eq!(parse_solution(&text).unwrap().solution(), sol);
        let ps = examples::quotient_example();
        let text = write_permutation_solution(&ps);
        assert_eq!(parse_solution(&text).unwrap(), SolutionSpec::Permutation(ps));
    }

    #[test]
    fn json_round_trip() {
        let sol = examples::example2();
        let json = serde_json::to_string(&SolutionDoc::from_solution(&sol)).unwrap();
        assert_eq!(parse_solution(&json).unwrap().solution(), sol);
        let p = presentation_of(&sol);
        let json = serde_json::to_string(&PresentationDoc::from_presentation(&p)).unwrap();
        assert_eq!(parse_presentation(&json).unwrap(), p);
    }

    #[test]
    fn shorthand_is_detected_from_full_tables() {
        let ps = examples::quotient_example();
        let text = write_solution(&ps.lift());
        assert_eq!(parse_solution(&text).unwrap().as_permutation(), Some(ps));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_solution("n = 2\ng1 = 1 2\ng2 = 1 3\n").unwrap_err();
        assert_eq!(e, Error::parse(3, 8, "entry 3 out of range 1..2"));
        let e = parse_solution("n = 2\ng1 = 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 8, .. }), "{e}");
        let e = parse_solution("n = 2\nh1 = 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }));
        let e = parse_solution("n = 2\ng1 = 1 2\ng2 = 1 2\nf1 = 1 2\n").unwrap_err();
        assert_eq!(e, Error::Input("missing line `f2`".into()));
        assert!(parse_solution("g1 = 1").is_err());
        assert!(parse_solution("{\"n\": 2}").unwrap_err().is_input_error());
        assert!(matches!(parse_solution("{\"n\": "), Err(Error::Parse { .. })));
    }

    #[test]
    fn presentation_text() {
        let p = parse_presentation("n = 3\nx1 x1 = x2 x3\nx2 x2 = x3 x1\n3 3 = 1 2\n").unwrap();
        assert_eq!(p, presentation_of(&examples::example2()));
        let q = parse_presentation("x1 x2 = x2 x1\n").unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(
            parse_presentation("x1 x2 x3 = x2 x1"),
            Err(Error::Condition(ConditionViolation::SideLength {
                side: "x1 x2 x3".into()
            }))
        );
        assert!(matches!(
            parse_presentation("n = 2\nx1 x2 = x1 x2\n"),
            Err(Error::Parse { line: 2, column: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("n = 2\nx1 x2 = x3 x1\n"),
            Err(Error::Parse { line: 2, column: 9, .. })
        ));
    }
}
