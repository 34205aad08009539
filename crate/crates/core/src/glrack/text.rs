//! The GL-rack text format.
//!
//! ```text
//! glrack
//! n 3
//! star
//! 2 2 2
//! 3 3 3
//! 1 1 1
//! u 1 2 3
//! d 3 1 2
//! ```
//!
//! Whitespace-tokenized, 1-based. Blank lines and lines starting with `#` are
//! ignored. Several records may be concatenated with `---` separator lines.

use std::fmt::Write as _;

use super::{validate, GlRack, RackError};
use crate::permutation::Permutation;
use crate::ParseError;

pub const SEPARATOR: &str = "---";

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, first_line: usize) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + first_line, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Self {
            inner,
            pos: 0,
            last_line: first_line,
        }
    }

    fn next(&mut self, expected: &str) -> Result<TokenLine<'a>, ParseError> {
        let Some(&(line, text)) = self.inner.get(self.pos) else {
            return Err(ParseError::new(
                self.last_line,
                1,
                format!("unexpected end of input, expected {expected}"),
            ));
        };
        self.pos += 1;
        self.last_line = line;
        Ok((line, tokens(text)))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.inner.get(self.pos) {
            Some(&(line, _)) => Err(ParseError::new(line, 1, "trailing content after record")),
            None => Ok(()),
        }
    }
}

/// Whitespace tokens with their 1-based starting column.
/// A line number with its column-tagged tokens.
pub(crate) type TokenLine<'a> = (usize, Vec<(usize, &'a str)>);

pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

fn element(line: usize, col: usize, tok: &str, n: usize) -> Result<usize, ParseError> {
    let v: usize = tok
        .parse()
        .map_err(|_| ParseError::new(line, col, format!("expected an element, found '{tok}'")))?;
    if v == 0 || v > n {
        return Err(ParseError::new(
            line,
            col,
            format!("element {v} out of range 1..={n}"),
        ));
    }
    Ok(v - 1)
}

fn keyword(line: usize, toks: &[(usize, &str)], word: &str) -> Result<(), ParseError> {
    match toks.first() {
        Some(&(_, t)) if t == word => Ok(()),
        Some(&(col, t)) => Err(ParseError::new(
            line,
            col,
            format!("expected '{word}', found '{t}'"),
        )),
        None => Err(ParseError::new(line, 1, format!("expected '{word}'"))),
    }
}

fn map_row(
    lines: &mut Lines<'_>,
    name: &str,
    n: usize,
) -> Result<(usize, Vec<usize>), ParseError> {
    let (line, toks) = lines.next(name)?;
    keyword(line, &toks, name)?;
    if toks.len() != n + 1 {
        return Err(ParseError::new(
            line,
            1,
            format!("'{name}' needs {n} images, found {}", toks.len() - 1),
        ));
    }
    let mut seen = vec![false; n];
    let mut images = Vec::with_capacity(n);
    for &(col, tok) in &toks[1..] {
        let v = element(line, col, tok, n)?;
        if seen[v] {
            return Err(ParseError::new(
                line,
                col,
                format!("duplicate value {} in '{name}'", v + 1),
            ));
        }
        seen[v] = true;
        images.push(v);
    }
    Ok((line, images))
}

/// The raw `(table, u, d)` of a record, checked for shape but not for axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGlRack {
    pub table: Vec<Vec<usize>>,
    pub u: Permutation,
    pub d: Permutation,
}

impl RawGlRack {
    pub fn validate(&self) -> super::ValidationReport {
        validate(&self.table, self.u.images(), self.d.images())
            .expect("parser only produces well-shaped tables")
    }

    pub fn into_rack(self) -> Result<GlRack, RackError> {
        GlRack::new(self.table, self.u, self.d)
    }
}

fn parse_record(text: &str, first_line: usize) -> Result<RawGlRack, ParseError> {
    let mut lines = Lines::new(text, first_line);
    let (line, toks) = lines.next("'glrack'")?;
    keyword(line, &toks, "glrack")?;

    let (line, toks) = lines.next("'n <order>'")?;
    keyword(line, &toks, "n")?;
    let n = match toks.get(1) {
        Some(&(col, t)) => match t.parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(ParseError::new(line, col, format!("bad order '{t}'"))),
        },
        None => return Err(ParseError::new(line, 1, "missing order")),
    };
    if let Some(&(col, _)) = toks.get(2) {
        return Err(ParseError::new(line, col, "unexpected token"));
    }

    let (line, toks) = lines.next("'star'")?;
    keyword(line, &toks, "star")?;

    let mut table = Vec::with_capacity(n);
    for x in 0..n {
        let (line, toks) = lines.next(&format!("table row {}", x + 1))?;
        if toks.len() != n {
            return Err(ParseError::new(
                line,
                1,
                format!("table row {} has {} entries, expected {n}", x + 1, toks.len()),
            ));
        }
        let row = toks
            .iter()
            .map(|&(col, t)| element(line, col, t, n))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let (_, u) = map_row(&mut lines, "u", n)?;
    let (_, d) = map_row(&mut lines, "d", n)?;
    lines.finish()?;
    Ok(RawGlRack {
        table,
        u: Permutation::from_images(u).expect("checked for duplicates"),
        d: Permutation::from_images(d).expect("checked for duplicates"),
    })
}

/// Parses a single record without checking axioms.
pub fn parse_raw(text: &str) -> Result<RawGlRack, ParseError> {
    parse_record(text, 1)
}

/// Parses a single record and validates it as a GL-rack.
pub fn parse(text: &str) -> Result<GlRack, ParseError> {
    let raw = parse_raw(text)?;
    raw.into_rack().map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// Parses `---`-separated records, skipping census summary lines.
pub fn parse_many(text: &str) -> Result<Vec<RawGlRack>, ParseError> {
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut chunk_start = 1;
    for (i, line) in text.lines().enumerate() {
        if line.trim() == SEPARATOR {
            if has_content(&chunk) {
                out.push(parse_record(&chunk, chunk_start)?);
            }
            chunk.clear();
            chunk_start = i + 2;
        } else if line.starts_with("order ") {
            // census summary line
            chunk.push('\n');
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    if has_content(&chunk) {
        out.push(parse_record(&chunk, chunk_start)?);
    }
    Ok(out)
}

fn has_content(chunk: &str) -> bool {
    chunk.lines().any(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

pub(crate) fn one_based_rows(rack: &GlRack) -> Vec<Vec<usize>> {
    (0..rack.order())
        .map(|x| rack.row(x).iter().map(|v| v + 1).collect())
        .collect()
}

pub fn serialize(rack: &GlRack) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "glrack");
    let _ = writeln!(s, "n {}", rack.order());
    let _ = writeln!(s, "star");
    for row in one_based_rows(rack) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    let _ = writeln!(s, "u {}", rack.u());
    let _ = writeln!(s, "d {}", rack.d());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    const PERM3: &str = "glrack\nn 3\nstar\n2 2 2\n3 3 3\n1 1 1\nu 1 2 3\nd 3 1 2\n";

    #[test]
    fn parses_permutation3() {
        let r = parse(PERM3).unwrap();
        assert_eq!(r, examples::permutation3());
        assert_eq!(serialize(&r), PERM3);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# permutation rack on 3 points\nglrack\n\nn 3\nstar\n2 2 2\n3 3 3\n1 1 1\nu 1 2 3\nd 3 1 2\n";
        assert_eq!(parse(text).unwrap(), examples::permutation3());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let bad = "glrack\nn 3\nstar\n2 2 2\n3 4 3\n1 1 1\nu 1 2 3\nd 3 1 2\n";
        let e = parse_raw(bad).unwrap_err();
        assert_eq!((e.line, e.column), (5, 3));

        let dup = "glrack\nn 3\nstar\n2 2 2\n3 3 3\n1 1 1\nu 1 2 2\nd 3 1 2\n";
        let e = parse_raw(dup).unwrap_err();
        assert_eq!((e.line, e.column), (7, 7));
        assert!(e.message.contains("duplicate"));

        let short = "glrack\nn 3\nstar\n2 2 2\n3 3\n";
        let e = parse_raw(short).unwrap_err();
        assert_eq!(e.line, 5);

        let missing = "glrack\nn 3\nstar\n2 2 2\n3 3 3\n1 1 1\nu 1 2 3\n";
        assert!(parse_raw(missing).unwrap_err().message.contains("end of input"));
    }

    #[test]
    fn invalid_axioms_are_reported_after_parsing() {
        let text = "glrack\nn 3\nstar\n2 2 2\n3 3 3\n1 1 1\nu 1 2 3\nd 1 2 3\n";
        let raw = parse_raw(text).unwrap();
        assert!(!raw.validate().is_valid());
        assert!(parse(text).is_err());
    }

    #[test]
    fn many_records() {
        let both = format!("{}{SEPARATOR}\n{}\norder 3: 1 racks, 1 gl-racks, 1 classes\n", PERM3, serialize(&examples::mixed6()));
        let recs = parse_many(&both).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].clone().into_rack().unwrap(), examples::mixed6());
    }

    #[test]
    fn token_columns() {
        assert_eq!(tokens("  ab c"), vec![(3, "ab"), (6, "c")]);
    }
}
