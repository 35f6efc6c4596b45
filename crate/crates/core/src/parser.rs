//! Text formats for reaction networks.
//!
//! One model is a sequence of lines, each a chain of complexes joined by
//! `<=>`:
//!
//! ```text
//! # comment
//! A + B <=> C <=> A + 2 D
//! 3 B <=>[kf][kb] 2 C + A
//! X <=> 0
//! ```
//!
//! A chain of `m` complexes yields `m - 1` reactions. Complexes are numbered
//! 1, 2, ... in order of appearance over the whole model, and a reaction
//! between complexes `i` and `j` gets the labels `k{i}{j}` / `k{j}{i}` unless
//! labels are given in brackets after the arrow. When either index has more
//! than one digit the generated label is `k{i}_{j}`.
//!
//! Irreversible arrows `->` are rejected unless
//! [`ParseOptions::assume_reversible`] is set, in which case they become
//! reversible reactions with a free backward rate constant.
//!
//! A batch is either a directory of `*.crn` files or a single file whose
//! models are separated by `=== name ===` header lines.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::error::{CorpusError, ModelLoadError, ParseError};
use crate::network::{Complex, ReactionNetwork, ReversibleReaction, SpeciesId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    pub assume_reversible: bool,
}

/// Parses one model with default options.
pub fn parse_network(text: &str) -> Result<ReactionNetwork, ParseError> {
    parse_network_with(text, ParseOptions::default())
}

pub fn parse_network_with(text: &str, opts: ParseOptions) -> Result<ReactionNetwork, ParseError> {
    parse_model(text, 0, opts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Name(String),
    Plus,
    Reversible,
    Irreversible,
    Label(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '+' {
            out.push(Spanned { tok: Tok::Plus, col });
            i += 1;
        } else if line_starts_with(&chars, i, "<=>") {
            out.push(Spanned { tok: Tok::Reversible, col });
            i += 3;
        } else if line_starts_with(&chars, i, "->") {
            out.push(Spanned { tok: Tok::Irreversible, col });
            i += 2;
        } else if c == '[' {
            let start = i + 1;
            let end = chars[start..]
                .iter()
                .position(|&ch| ch == ']')
                .map(|p| start + p)
                .ok_or_else(|| ParseError::new(lineno, col, "unterminated rate label"))?;
            let label: String = chars[start..end].iter().collect::<String>().trim().to_string();
            if label.is_empty() || !label.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
            {
                return Err(ParseError::new(lineno, col, format!("invalid rate label `{label}`")));
            }
            out.push(Spanned { tok: Tok::Label(label), col });
            i = end + 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits
                .parse::<u64>()
                .ok()
                .filter(|&v| v <= u64::from(u32::MAX))
                .ok_or_else(|| {
                    ParseError::new(lineno, col, format!("coefficient {digits} exceeds u32 range"))
                })?;
            out.push(Spanned { tok: Tok::Int(value), col });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Name(chars[start..i].iter().collect()), col });
        } else {
            return Err(ParseError::new(lineno, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn line_starts_with(chars: &[char], at: usize, pat: &str) -> bool {
    pat.chars().enumerate().all(|(i, p)| chars.get(at + i) == Some(&p))
}

/// A complex as written, before species are interned.
struct RawComplex {
    terms: Vec<(String, u32)>,
    col: usize,
}

struct RawArrow {
    reversible: bool,
    labels: Vec<String>,
    col: usize,
}

struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    eol_col: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eol_col, |s| s.col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn complex(&mut self) -> Result<RawComplex, ParseError> {
        let col = self.col();
        if let (Some(Tok::Int(0)), next) = (self.peek(), self.toks.get(self.pos + 1).map(|s| &s.tok))
        {
            if !matches!(next, Some(Tok::Name(_))) {
                self.pos += 1;
                return Ok(RawComplex { terms: vec![], col });
            }
        }
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(RawComplex { terms, col })
    }

    fn term(&mut self) -> Result<(String, u32), ParseError> {
        let coeff = match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v as u32;
                self.pos += 1;
                v
            }
            _ => 1,
        };
        match self.peek() {
            Some(Tok::Name(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok((name, coeff))
            }
            _ => Err(self.err("expected species name")),
        }
    }

    fn arrow(&mut self) -> Result<Option<RawArrow>, ParseError> {
        let col = self.col();
        let reversible = match self.peek() {
            Some(Tok::Reversible) => true,
            Some(Tok::Irreversible) => false,
            None => return Ok(None),
            Some(_) => return Err(self.err("expected `<=>`, `+` or end of line")),
        };
        self.pos += 1;
        let mut labels = Vec::new();
        while let Some(Tok::Label(l)) = self.peek() {
            labels.push(l.clone());
            self.pos += 1;
        }
        let max = if reversible { 2 } else { 1 };
        if !labels.is_empty() && labels.len() != max {
            return Err(ParseError::new(
                self.line,
                col,
                format!("arrow takes {max} rate label(s), found {}", labels.len()),
            ));
        }
        Ok(Some(RawArrow { reversible, labels, col }))
    }
}

fn complex_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("k{i}{j}")
    } else {
        format!("k{i}_{j}")
    }
}

/// Parses one model; `line_offset` shifts reported line numbers.
fn parse_model(text: &str, line_offset: usize, opts: ParseOptions) -> Result<ReactionNetwork, ParseError> {
    let mut species: Vec<String> = Vec::new();
    let mut index: HashMap<String, SpeciesId> = HashMap::new();
    let mut reactions = Vec::new();
    // (label, line, col) of every label, for the uniqueness check
    let mut label_sites: Vec<(String, usize, usize)> = Vec::new();
    let mut complex_counter = 0usize;

    let mut intern = |name: &str, species: &mut Vec<String>| -> SpeciesId {
        if let Some(&id) = index.get(name) {
            return id;
        }
        let id = SpeciesId(species.len());
        species.push(name.to_string());
        index.insert(name.to_string(), id);
        id
    };

    for (k, raw_line) in text.lines().enumerate() {
        let lineno = line_offset + k + 1;
        let toks = tokenize(raw_line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line: lineno, eol_col: raw_line.chars().count() + 1 };
        let mut complexes = vec![cur.complex()?];
        let mut arrows = Vec::new();
        while let Some(arrow) = cur.arrow()? {
            arrows.push(arrow);
            complexes.push(cur.complex()?);
        }
        if arrows.is_empty() {
            return Err(ParseError::new(lineno, complexes[0].col, "a reaction line needs at least one `<=>`"));
        }

        // Intern species in order of first appearance.
        let mut interned = Vec::with_capacity(complexes.len());
        for raw in &complexes {
            let mut terms = Vec::new();
            for (name, coeff) in &raw.terms {
                if *coeff == 0 {
                    continue;
                }
                terms.push((intern(name, &mut species), *coeff));
            }
            let cx = Complex::from_terms(terms).ok_or_else(|| {
                ParseError::new(lineno, raw.col, "stoichiometric coefficient overflows u32")
            })?;
            interned.push(cx);
        }

        let first = complex_counter + 1;
        complex_counter += complexes.len();
        for (a, arrow) in arrows.iter().enumerate() {
            if !arrow.reversible && !opts.assume_reversible {
                return Err(ParseError::new(
                    lineno,
                    arrow.col,
                    "irreversible reaction; only reversible networks are supported (use --assume-reversible)",
                ));
            }
            let (i, j) = (first + a, first + a + 1);
            let forward_label = arrow.labels.first().cloned().unwrap_or_else(|| complex_label(i, j));
            let backward_label = arrow.labels.get(1).cloned().unwrap_or_else(|| complex_label(j, i));
            label_sites.push((forward_label.clone(), lineno, arrow.col));
            label_sites.push((backward_label.clone(), lineno, arrow.col));
            reactions.push(ReversibleReaction {
                index: reactions.len(),
                reactant: interned[a].clone(),
                product: interned[a + 1].clone(),
                forward_label,
                backward_label,
            });
        }
    }

    let mut seen = HashSet::new();
    for (label, line, col) in &label_sites {
        if !seen.insert(label.as_str()) {
            return Err(ParseError::new(*line, *col, format!("rate-constant label `{label}` used more than once")));
        }
    }
    if reactions.is_empty() {
        return Err(ParseError::new(line_offset + 1, 1, "model contains no reactions"));
    }
    ReactionNetwork::new(species, reactions)
        .map_err(|e| ParseError::new(line_offset + 1, 1, e.to_string()))
}

/// Models loaded from a batch source, in source order, plus the models that
/// failed to parse.
#[derive(Clone, Debug, Default)]
pub struct Batch {
    pub models: Vec<(String, ReactionNetwork)>,
    pub errors: Vec<ModelLoadError>,
}

fn header_name(line: &str) -> Option<&str> {
    let t = line.trim();
    let inner = t.strip_prefix("===")?.strip_suffix("===")?;
    let name = inner.trim();
    (!name.is_empty() && t.len() >= 6).then_some(name)
}

/// Splits a batch text on `=== name ===` headers. Text before the first
/// header, if it holds anything besides comments and blank lines, becomes a
/// model named `default_name`.
pub fn parse_batch_str(text: &str, default_name: &str, opts: ParseOptions) -> Batch {
    let mut sections: Vec<(String, usize, String)> = Vec::new();
    let mut current = (default_name.to_string(), 0usize, String::new());
    let mut has_header = false;
    for (k, line) in text.lines().enumerate() {
        if let Some(name) = header_name(line) {
            let done = std::mem::replace(&mut current, (name.to_string(), k + 1, String::new()));
            if has_header || !is_blank_model(&done.2) {
                sections.push(done);
            }
            has_header = true;
        } else {
            current.2.push_str(line);
            current.2.push('\n');
        }
    }
    if has_header || !is_blank_model(&current.2) {
        sections.push(current);
    }

    let mut batch = Batch::default();
    for (name, offset, body) in sections {
        match parse_model(&body, offset, opts) {
            Ok(net) => batch.models.push((name, net)),
            Err(error) => batch.errors.push(ModelLoadError { model: name, error }),
        }
    }
    batch
}

fn is_blank_model(body: &str) -> bool {
    body.lines().all(|l| {
        let l = l.trim();
        l.is_empty() || l.starts_with('#')
    })
}

/// Loads a batch from a single file or from every `*.crn` file of a
/// directory (sorted by file name, models named by file stem).
pub fn parse_batch(path: &Path, opts: ParseOptions) -> Result<Batch, CorpusError> {
    let io_err = |p: &Path, source| CorpusError::Io { path: p.to_path_buf(), source };
    if path.is_dir() {
        let mut files: Vec<_> = fs::read_dir(path)
            .map_err(|e| io_err(path, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "crn"))
            .collect();
        files.sort();
        let mut batch = Batch::default();
        for file in files {
            let text = fs::read_to_string(&file).map_err(|e| io_err(&file, e))?;
            let part = parse_batch_str(&text, &stem(&file), opts);
            batch.models.extend(part.models);
            batch.errors.extend(part.errors);
        }
        Ok(batch)
    } else {
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Ok(parse_batch_str(&text, &stem(path), opts))
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "model".to_string(), |s| s.to_string_lossy().into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(net: &ReactionNetwork, c: &Complex) -> Vec<(String, u32)> {
        c.iter().map(|(s, k)| (net.species_name(s).to_string(), k)).collect()
    }

    fn pairs(v: &[(&str, u32)]) -> Vec<(String, u32)> {
        v.iter().map(|&(s, k)| (s.to_string(), k)).collect()
    }

    #[test]
    fn intro_chain() {
        let net = parse_network("A + B <=> C <=> A + 2 D").unwrap();
        assert_eq!(net.species_names(), ["A", "B", "C", "D"]);
        assert_eq!(net.num_reactions(), 2);
        let r = net.reactions();
        assert_eq!(coeffs(&net, &r[0].reactant), pairs(&[("A", 1), ("B", 1)]));
        assert_eq!(coeffs(&net, &r[0].product), pairs(&[("C", 1)]));
        assert_eq!(coeffs(&net, &r[1].reactant), pairs(&[("C", 1)]));
        assert_eq!(coeffs(&net, &r[1].product), pairs(&[("A", 1), ("D", 2)]));
        assert_eq!(
            net.rate_labels(),
            ["k12", "k21", "k23", "k32"].map(String::from).to_vec()
        );
    }

    #[test]
    fn zero_term_dropped_and_degenerate_flagged() {
        let net = parse_network("A <=> A + 0 B").unwrap();
        assert_eq!(net.species_names(), ["A"]);
        let rx = &net.reactions()[0];
        assert_eq!(coeffs(&net, &rx.reactant), pairs(&[("A", 1)]));
        assert_eq!(coeffs(&net, &rx.product), pairs(&[("A", 1)]));
        assert!(rx.is_degenerate());
        assert_eq!(net.degenerate_reactions().count(), 1);
    }

    #[test]
    fn example3_cycle() {
        let net = parse_network("3 B <=> 2 C + A <=> 2 D + 2 B <=> 3 B").unwrap();
        assert_eq!(net.species_names(), ["B", "C", "A", "D"]);
        assert_eq!(net.num_reactions(), 3);
        assert_eq!(coeffs(&net, &net.reactions()[2].product), pairs(&[("B", 3)]));
    }

    #[test]
    fn compact_coefficients_comments_and_lines() {
        let net = parse_network("# header\n2A + B <=> C # trailing\n\nC <=> 0\n").unwrap();
        assert_eq!(net.species_names(), ["A", "B", "C"]);
        assert_eq!(net.num_reactions(), 2);
        assert!(net.reactions()[1].product.is_empty());
        // complexes are numbered across lines
        assert_eq!(net.reactions()[1].forward_label, "k34");
    }

    #[test]
    fn duplicate_terms_are_summed() {
        let net = parse_network("A + A + 2 A <=> B").unwrap();
        assert_eq!(net.reactions()[0].reactant.coefficient(SpeciesId(0)), 4);
    }

    #[test]
    fn explicit_labels() {
        let net = parse_network("A <=>[kf][kb] B").unwrap();
        assert_eq!(net.reactions()[0].forward_label, "kf");
        assert_eq!(net.reactions()[0].backward_label, "kb");
        let err = parse_network("A <=>[k][k] B").unwrap_err();
        assert!(err.message.contains("more than once"));
        let err = parse_network("A <=>[k1] B").unwrap_err();
        assert!(err.message.contains("2 rate label"));
    }

    #[test]
    fn long_chain_labels_are_unambiguous() {
        let text = (0..12).map(|i| format!("X{i}")).collect::<Vec<_>>().join(" <=> ");
        let net = parse_network(&text).unwrap();
        assert_eq!(net.reactions()[8].forward_label, "k9_10");
        assert_eq!(net.reactions()[10].backward_label, "k12_11");
    }

    #[test]
    fn syntax_errors_report_positions() {
        let err = parse_network("A + <=> B").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        let err = parse_network("A <=> B\nA B <=> C").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = parse_network("A <=> B $").unwrap_err();
        assert_eq!(err.column, 9);
        let err = parse_network("A + B").unwrap_err();
        assert!(err.message.contains("<=>"));
        let err = parse_network("A <=>").unwrap_err();
        assert_eq!(err.column, 6);
        assert!(parse_network("").is_err());
        assert!(parse_network("# only a comment").is_err());
    }

    #[test]
    fn coefficient_overflow() {
        let err = parse_network("4294967296 A <=> B").unwrap_err();
        assert!(err.message.contains("u32"));
        assert!(parse_network("4294967295 A <=> B").is_ok());
        let err = parse_network("4294967295 A + A <=> B").unwrap_err();
        assert!(err.message.contains("overflow"));
    }

    #[test]
    fn irreversible_requires_flag() {
        let err = parse_network("A -> B").unwrap_err();
        assert!(err.message.contains("assume-reversible"));
        let opts = ParseOptions { assume_reversible: true };
        let net = parse_network_with("A -> B\nB ->[kx] C", opts).unwrap();
        assert_eq!(net.rate_labels(), ["k12", "k21", "kx", "k43"].map(String::from).to_vec());
    }

    #[test]
    fn batch_sections() {
        let text = "=== one ===\nA <=> B\n=== two ===\nC <=> 2 D\n";
        let b = parse_batch_str(text, "f", ParseOptions::default());
        assert_eq!(b.models.len(), 2);
        assert_eq!(b.models[0].0, "one");
        assert_eq!(b.models[1].0, "two");
        assert!(b.errors.is_empty());
    }

    #[test]
    fn batch_collects_failures() {
        let text = "=== good ===\nA <=> B\n=== bad ===\nA + <=> B\n";
        let b = parse_batch_str(text, "f", ParseOptions::default());
        assert_eq!(b.models.len(), 1);
        assert_eq!(b.errors.len(), 1);
        assert_eq!(b.errors[0].model, "bad");
        // positions are relative to the whole file
        assert_eq!(b.errors[0].error.line, 4);
    }

    #[test]
    fn batch_empty_and_headerless() {
        let b = parse_batch_str("", "f", ParseOptions::default());
        assert!(b.models.is_empty() && b.errors.is_empty());
        let b = parse_batch_str("# nothing\n\n", "f", ParseOptions::default());
        assert!(b.models.is_empty() && b.errors.is_empty());
        let b = parse_batch_str("A <=> B\n", "single", ParseOptions::default());
        assert_eq!(b.models[0].0, "single");
    }
}
