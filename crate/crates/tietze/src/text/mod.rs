//! Line-oriented text formats.
//!
//! One value per block, every block closed by `end`, comments starting
//! with `#`. Words are whitespace-separated generator names with `1` for
//! the empty word. Parsing produces raw blocks — name references are
//! resolved by the caller (the CLI workspace), since presentations with
//! pullback relation sets and the morphisms they reference are mutually
//! recursive. Rendering is canonical: `render(parse(text))` is
//! byte-identical for canonical files.

use crate::calculus::step::TietzeStep;
use crate::calculus::trace::{SegmentDirection, TietzeTrace, TietzeZigzag};
use crate::core::monoid::MonoidTable;
use crate::core::presentation::{Presentation, RelSet, Relation};
use crate::core::word::Word;
use crate::rewriting::derivation::{Derivation, Direction};
use crate::rewriting::kb::RewriteSystem;
use crate::rewriting::verdict::HomCertificate;

/// The leading version comment every rendered file carries.
pub const FORMAT_HEADER: &str = "# tietze-format 1";

/// A parse failure with its position (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

// ---------------------------------------------------------------------
// Raw blocks
// ---------------------------------------------------------------------

/// A word as written: letter names, empty for the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawWord(pub Vec<String>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawRelPart {
    Explicit(RawWord, RawWord),
    Diagonal,
    Pullback(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPresentation {
    pub name: String,
    pub gens: Vec<String>,
    pub rels: Vec<RawRelPart>,
    pub reflexive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMorphism {
    pub name: String,
    pub from: String,
    pub to: String,
    pub map: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawStep {
    pub left: RawWord,
    pub lhs: RawWord,
    pub rhs: RawWord,
    pub right: RawWord,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDerivation {
    pub name: String,
    /// Ambient presentation, when stated; trace witnesses resolve against
    /// the intermediate presentation instead.
    pub over: Option<String>,
    pub from: RawWord,
    pub to: RawWord,
    pub steps: Vec<RawStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMonoid {
    pub name: String,
    pub size: usize,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
    pub elems: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawTietzeStep {
    Tgen { fresh: String, word: RawWord },
    Trel { lhs: RawWord, rhs: RawWord, witness: String },
    Trefl { word: RawWord },
    Tsym { lhs: RawWord, rhs: RawWord },
    Ttrans { first: (RawWord, RawWord), second: (RawWord, RawWord) },
    Tctxt { rel: (RawWord, RawWord), left: RawWord, right: RawWord },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTrace {
    pub from: String,
    pub steps: Vec<RawTietzeStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawZigzag {
    pub from: String,
    pub to: String,
    pub segments: Vec<(bool, Vec<RawTietzeStep>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRules {
    pub over: String,
    pub rules: Vec<(RawWord, RawWord)>,
    pub convergent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRefutation {
    pub name: String,
    pub over: Option<String>,
    pub size: usize,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
    pub assign: Vec<(String, usize)>,
    pub left: RawWord,
    pub right: RawWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawBlock {
    Presentation(RawPresentation),
    Morphism(RawMorphism),
    Derivation(RawDerivation),
    Monoid(RawMonoid),
    Trace(RawTrace),
    Zigzag(RawZigzag),
    Rules(RawRules),
    Refutation(RawRefutation),
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied();
        self.pos += 1;
        item
    }
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> ParseResult<T> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

fn token_col(line: &str, token_index: usize) -> usize {
    let mut col = 1;
    let mut seen = 0;
    let mut chars = line.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        if seen == token_index {
            return i + 1;
        }
        seen += 1;
        // skip the rest of the token
        while let Some(&(_, c2)) = chars.peek() {
            if c2.is_whitespace() {
                break;
            }
            chars.next();
        }
        col = i + 1;
    }
    col
}

fn parse_raw_word(tokens: &[&str]) -> RawWord {
    if tokens.len() == 1 && tokens[0] == "1" {
        RawWord(Vec::new())
    } else {
        RawWord(tokens.iter().map(|s| s.to_string()).collect())
    }
}

/// Splits `tokens` at the single occurrence of `sep`.
fn split_once_token<'a>(
    tokens: &'a [&'a str],
    sep: &str,
    line_no: usize,
    line: &str,
) -> ParseResult<(&'a [&'a str], &'a [&'a str])> {
    let positions: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| **t == sep)
        .map(|(i, _)| i)
        .collect();
    match positions[..] {
        [i] => Ok((&tokens[..i], &tokens[i + 1..])),
        [] => err(line_no, 1, format!("expected `{sep}` in `{line}`")),
        _ => err(
            line_no,
            token_col(line, positions[1]),
            format!("multiple `{sep}` in `{line}`"),
        ),
    }
}

/// Extracts the parenthesized groups and bare tokens of a step line; names
/// never contain parentheses.
fn paren_groups(line: &str, line_no: usize) -> ParseResult<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut buf = String::new();
    for (i, c) in line.char_indices() {
        match c {
            '(' => {
                if depth > 0 {
                    return err(line_no, i + 1, "nested parentheses");
                }
                if !buf.trim().is_empty() {
                    out.push((false, buf.trim().to_string()));
                }
                buf.clear();
                depth = 1;
            }
            ')' => {
                if depth == 0 {
                    return err(line_no, i + 1, "unbalanced `)`");
                }
                out.push((true, buf.trim().to_string()));
                buf.clear();
                depth = 0;
            }
            _ => buf.push(c),
        }
    }
    if depth > 0 {
        return err(line_no, line.len(), "unbalanced `(`");
    }
    if !buf.trim().is_empty() {
        out.push((false, buf.trim().to_string()));
    }
    Ok(out)
}

fn parse_rel_text(text: &str, line_no: usize) -> ParseResult<(RawWord, RawWord)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let (l, r) = split_once_token(&tokens, "->", line_no, text)?;
    if l.is_empty() || r.is_empty() {
        return err(line_no, 1, format!("incomplete relation `{text}`"));
    }
    Ok((parse_raw_word(l), parse_raw_word(r)))
}

fn parse_tietze_step(line_no: usize, line: &str) -> ParseResult<RawTietzeStep> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    match tokens.first().copied() {
        Some("tgen") => {
            // tgen <a> := <u>
            let (head, word) = split_once_token(&tokens[1..], ":=", line_no, line)?;
            if head.len() != 1 || word.is_empty() {
                return err(line_no, 1, "expected `tgen <a> := <u>`");
            }
            Ok(RawTietzeStep::Tgen {
                fresh: head[0].to_string(),
                word: parse_raw_word(word),
            })
        }
        Some("trel") => {
            // trel <u> -> <v> witness <ref>
            let (body, wit) = split_once_token(&tokens[1..], "witness", line_no, line)?;
            if wit.len() != 1 {
                return err(line_no, 1, "expected `witness <derivation-ref>`");
            }
            let (l, r) = split_once_token(body, "->", line_no, line)?;
            if l.is_empty() || r.is_empty() {
                return err(line_no, 1, "expected `trel <u> -> <v> witness <ref>`");
            }
            Ok(RawTietzeStep::Trel {
                lhs: parse_raw_word(l),
                rhs: parse_raw_word(r),
                witness: wit[0].to_string(),
            })
        }
        Some("trefl") => {
            if tokens.len() < 2 {
                return err(line_no, 1, "expected `trefl <u>`");
            }
            Ok(RawTietzeStep::Trefl {
                word: parse_raw_word(&tokens[1..]),
            })
        }
        Some("tsym") => {
            let (l, r) = split_once_token(&tokens[1..], "->", line_no, line)?;
            if l.is_empty() || r.is_empty() {
                return err(line_no, 1, "expected `tsym <u> -> <v>`");
            }
            Ok(RawTietzeStep::Tsym {
                lhs: parse_raw_word(l),
                rhs: parse_raw_word(r),
            })
        }
        Some("ttrans") => {
            // ttrans (<u> -> <v>) (<v> -> <w>)
            let groups = paren_groups(line, line_no)?;
            let rels: Vec<&String> = groups
                .iter()
                .filter(|(is_group, _)| *is_group)
                .map(|(_, s)| s)
                .collect();
            if rels.len() != 2 {
                return err(line_no, 1, "expected `ttrans (<u> -> <v>) (<v> -> <w>)`");
            }
            Ok(RawTietzeStep::Ttrans {
                first: parse_rel_text(rels[0], line_no)?,
                second: parse_rel_text(rels[1], line_no)?,
            })
        }
        Some("tctxt") => {
            // tctxt (<u> -> <v>) in <w> _ <w'>
            let groups = paren_groups(line, line_no)?;
            let mut rel = None;
            let mut tail = String::new();
            for (is_group, text) in &groups {
                if *is_group {
                    if rel.is_some() {
                        return err(line_no, 1, "expected one parenthesized relation");
                    }
                    rel = Some(parse_rel_text(text, line_no)?);
                } else if text != "tctxt" {
                    tail = text.clone();
                }
            }
            let rel = match rel {
                Some(r) => r,
                None => return err(line_no, 1, "expected `tctxt (<u> -> <v>) in <w> _ <w'>`"),
            };
            let tail_tokens: Vec<&str> = tail.split_whitespace().collect();
            if tail_tokens.first() != Some(&"in") {
                return err(line_no, 1, "expected `in <w> _ <w'>`");
            }
            let (l, r) = split_once_token(&tail_tokens[1..], "_", line_no, line)?;
            if l.is_empty() || r.is_empty() {
                return err(line_no, 1, "expected `in <w> _ <w'>`");
            }
            Ok(RawTietzeStep::Tctxt {
                rel,
                left: parse_raw_word(l),
                right: parse_raw_word(r),
            })
        }
        _ => err(line_no, 1, format!("unknown step `{line}`")),
    }
}

/// Parses a whole file into raw blocks.
pub fn parse_blocks(text: &str) -> ParseResult<Vec<RawBlock>> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("presentation") => {
                if tokens.len() != 2 {
                    return err(line_no, 1, "expected `presentation <name>`");
                }
                out.push(RawBlock::Presentation(parse_presentation_body(
                    tokens[1], &mut lines,
                )?));
            }
            Some("morphism") => {
                if tokens.len() != 2 {
                    return err(line_no, 1, "expected `morphism <name>`");
                }
                out.push(RawBlock::Morphism(parse_morphism_body(
                    tokens[1], &mut lines,
                )?));
            }
            Some("derivation") => {
                if tokens.len() != 2 {
                    return err(line_no, 1, "expected `derivation <name>`");
                }
                out.push(RawBlock::Derivation(parse_derivation_body(
                    tokens[1], &mut lines,
                )?));
            }
            Some("monoid") => {
                // monoid <name> size <n>
                if tokens.len() != 4 || tokens[2] != "size" {
                    return err(line_no, 1, "expected `monoid <name> size <n>`");
                }
                let size: usize = tokens[3]
                    .parse()
                    .map_err(|_| ParseError {
                        line: line_no,
                        col: token_col(line, 3),
                        msg: "size must be a number".into(),
                    })?;
                out.push(RawBlock::Monoid(parse_monoid_body(
                    tokens[1], size, &mut lines,
                )?));
            }
            Some("trace") => {
                // trace from <presentation-name>
                if tokens.len() != 3 || tokens[1] != "from" {
                    return err(line_no, 1, "expected `trace from <presentation>`");
                }
                out.push(RawBlock::Trace(parse_trace_body(tokens[2], &mut lines)?));
            }
            Some("zigzag") => {
                if tokens.len() != 5 || tokens[1] != "from" || tokens[3] != "to" {
                    return err(line_no, 1, "expected `zigzag from <P> to <Q>`");
                }
                out.push(RawBlock::Zigzag(parse_zigzag_body(
                    tokens[2], tokens[4], &mut lines,
                )?));
            }
            Some("rules") => {
                if tokens.len() != 3 || tokens[1] != "for" {
                    return err(line_no, 1, "expected `rules for <presentation>`");
                }
                out.push(RawBlock::Rules(parse_rules_body(tokens[2], &mut lines)?));
            }
            Some("refutation") => {
                if tokens.len() != 2 {
                    return err(line_no, 1, "expected `refutation <name>`");
                }
                out.push(RawBlock::Refutation(parse_refutation_body(
                    tokens[1], &mut lines,
                )?));
            }
            _ => return err(line_no, 1, format!("unknown block `{line}`")),
        }
    }
    Ok(out)
}

fn parse_presentation_body(name: &str, lines: &mut Lines) -> ParseResult<RawPresentation> {
    let mut p = RawPresentation {
        name: name.to_string(),
        gens: Vec::new(),
        rels: Vec::new(),
        reflexive: false,
    };
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("end") => return Ok(p),
            Some("gens") => {
                p.gens = tokens[1..].iter().map(|s| s.to_string()).collect();
            }
            Some("rel") => {
                let (l, r) = split_once_token(&tokens[1..], "->", line_no, line)?;
                if l.is_empty() || r.is_empty() {
                    return err(
                        line_no,
                        token_col(line, tokens.len().saturating_sub(1)),
                        format!("incomplete relation `{line}`"),
                    );
                }
                p.rels
                    .push(RawRelPart::Explicit(parse_raw_word(l), parse_raw_word(r)));
            }
            Some("rel*") => match tokens.get(1).copied() {
                Some("diagonal") => p.rels.push(RawRelPart::Diagonal),
                Some("pullback") => {
                    if tokens.len() != 3 {
                        return err(line_no, 1, "expected `rel* pullback <morphism>`");
                    }
                    p.rels.push(RawRelPart::Pullback(tokens[2].to_string()));
                }
                _ => return err(line_no, 1, "expected `rel* diagonal` or `rel* pullback`"),
            },
            Some("reflexive") => p.reflexive = true,
            _ => return err(line_no, 1, format!("unknown presentation line `{line}`")),
        }
    }
    err(0, 1, "unexpected end of file inside a presentation block")
}

fn parse_morphism_body(name: &str, lines: &mut Lines) -> ParseResult<RawMorphism> {
    let mut m = RawMorphism {
        name: name.to_string(),
        from: String::new(),
        to: String::new(),
        map: Vec::new(),
    };
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("end") => return Ok(m),
            Some("from") if tokens.len() == 2 => m.from = tokens[1].to_string(),
            Some("to") if tokens.len() == 2 => m.to = tokens[1].to_string(),
            Some("map") => {
                let (l, r) = split_once_token(&tokens[1..], "->", line_no, line)?;
                if l.len() != 1 || r.len() != 1 {
                    return err(line_no, 1, "expected `map <a> -> <b>`");
                }
                m.map.push((l[0].to_string(), r[0].to_string()));
            }
            _ => return err(line_no, 1, format!("unknown morphism line `{line}`")),
        }
    }
    err(0, 1, "unexpected end of file inside a morphism block")
}

fn parse_derivation_body(name: &str, lines: &mut Lines) -> ParseResult<RawDerivation> {
    let mut d = RawDerivation {
        name: name.to_string(),
        over: None,
        from: RawWord(Vec::new()),
        to: RawWord(Vec::new()),
        steps: Vec::new(),
    };
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("end") => return Ok(d),
            Some("over") if tokens.len() == 2 => d.over = Some(tokens[1].to_string()),
            Some("from") => d.from = parse_raw_word(&tokens[1..]),
            Some("to") => d.to = parse_raw_word(&tokens[1..]),
            Some("step") => {
                // step <w> | <lhs> -> <rhs> | <w'> fwd|bwd
                let body = line.trim().strip_prefix("step").unwrap_or("").trim();
                let parts: Vec<&str> = body.split('|').collect();
                if parts.len() != 3 {
                    return err(line_no, 1, "expected `step <w> | <l> -> <r> | <w'> fwd|bwd`");
                }
                let left: Vec<&str> = parts[0].split_whitespace().collect();
                let (lhs, rhs) = parse_rel_text(parts[1], line_no)?;
                let mut tail: Vec<&str> = parts[2].split_whitespace().collect();
                let dir = match tail.pop() {
                    Some("fwd") => true,
                    Some("bwd") => false,
                    _ => return err(line_no, 1, "step must end with `fwd` or `bwd`"),
                };
                if left.is_empty() || tail.is_empty() {
                    return err(line_no, 1, "step contexts must be words (`1` for empty)");
                }
                d.steps.push(RawStep {
                    left: parse_raw_word(&left),
                    lhs,
                    rhs,
                    right: parse_raw_word(&tail),
                    forward: dir,
                });
            }
            _ => return err(line_no, 1, format!("unknown derivation line `{line}`")),
        }
    }
    err(0, 1, "unexpected end of file inside a derivation block")
}

fn parse_monoid_body(name: &str, size: usize, lines: &mut Lines) -> ParseResult<RawMonoid> {
    let mut m = RawMonoid {
        name: name.to_string(),
        size,
        unit: 0,
        mul: vec![Vec::new(); size],
        elems: None,
    };
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("end") => return Ok(m),
            Some("unit") if tokens.len() == 2 => {
                m.unit = tokens[1].parse().map_err(|_| ParseError {
                    line: line_no,
                    col: token_col(line, 1),
                    msg: "unit must be an index".into(),
                })?;
            }
            Some("elems") => {
                m.elems = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            Some("mul") => {
                // mul i: j k ...
                if tokens.len() < 2 || !tokens[1].ends_with(':') {
                    return err(line_no, 1, "expected `mul <i>: <j> <k> ...`");
                }
                let row: usize = tokens[1]
                    .trim_end_matches(':')
                    .parse()
                    .map_err(|_| ParseError {
                        line: line_no,
                        col: token_col(line, 1),
                        msg: "row must be an index".into(),
                    })?;
                if row >= size {
                    return err(line_no, token_col(line, 1), "row index out of range");
                }
                let mut entries = Vec::with_capacity(size);
                for (i, t) in tokens[2..].iter().enumerate() {
                    entries.push(t.parse().map_err(|_| ParseError {
                        line: line_no,
                        col: token_col(line, 2 + i),
                        msg: "entries must be indices".into(),
                    })?);
                }
                m.mul[row] = entries;
            }
            _ => return err(line_no, 1, format!("unknown monoid line `{line}`")),
        }
    }
    err(0, 1, "unexpected end of file inside a monoid block")
}

fn parse_trace_body(from: &str, lines: &mut Lines) -> ParseResult<RawTrace> {
    let mut t = RawTrace {
        from: from.to_string(),
        steps: Vec::new(),
    };
    while let Some((line_no, line)) = lines.next() {
        if line.trim() == "end" {
            return Ok(t);
        }
        t.steps.push(parse_tietze_step(line_no, line.trim())?);
    }
    err(0, 1, "unexpected end of file inside a trace block")
}

fn parse_zigzag_body(from: &str, to: &str, lines: &mut Lines) -> ParseResult<RawZigzag> {
    let mut z = RawZigzag {
        from: from.to_string(),
        to: to.to_string(),
        segments: Vec::new(),
    };
    while let Some((line_no, line)) = lines.next() {
        match line.trim() {
            "end" => return Ok(z),
            "forward" => z.segments.push((true, Vec::new())),
            "backward" => z.segments.push((false, Vec::new())),
            step_line => {
                let Some(last) = z.segments.last_mut() else {
                    return err(line_no, 1, "steps must follow a `forward`/`backward` header");
                };
                last.1.push(parse_tietze_step(line_no, step_line)?);
            }
        }
    }
    err(0, 1, "unexpected end of file inside a zigzag block")
}

fn parse_rules_body(over: &str, lines: &mut Lines) -> ParseResult<RawRules> {
    let mut r = RawRules {
        over: over.to_string(),
        rules: Vec::new(),
        convergent: false,
    };
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("end") => return Ok(r),
            Some("rule") => {
                let (l, rr) = split_once_token(&tokens[1..], "->", line_no, line)?;
                if l.is_empty() || rr.is_empty() {
                    return err(line_no, 1, format!("incomplete rule `{line}`"));
                }
                r.rules.push((parse_raw_word(l), parse_raw_word(rr)));
            }
            Some("convergent") => r.convergent = true,
            _ => return err(line_no, 1, format!("unknown rules line `{line}`")),
        }
    }
    err(0, 1, "unexpected end of file inside a rules block")
}

fn parse_refutation_body(name: &str, lines: &mut Lines) -> ParseResult<RawRefutation> {
    let mut r = RawRefutation {
        name: name.to_string(),
        over: None,
        size: 0,
        unit: 0,
        mul: Vec::new(),
        assign: Vec::new(),
        left: RawWord(Vec::new()),
        right: RawWord(Vec::new()),
    };
    while let Some((line_no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first().copied() {
            Some("end") => return Ok(r),
            Some("over") if tokens.len() == 2 => r.over = Some(tokens[1].to_string()),
            Some("size") if tokens.len() == 2 => {
                r.size = tokens[1].parse().map_err(|_| ParseError {
                    line: line_no,
                    col: token_col(line, 1),
                    msg: "size must be a number".into(),
                })?;
                r.mul = vec![Vec::new(); r.size];
            }
            Some("unit") if tokens.len() == 2 => {
                r.unit = tokens[1].parse().map_err(|_| ParseError {
                    line: line_no,
                    col: token_col(line, 1),
                    msg: "unit must be an index".into(),
                })?;
            }
            Some("mul") => {
                if tokens.len() < 2 || !tokens[1].ends_with(':') {
                    return err(line_no, 1, "expected `mul <i>: <j> <k> ...`");
                }
                let row: usize = tokens[1]
                    .trim_end_matches(':')
                    .parse()
                    .map_err(|_| ParseError {
                        line: line_no,
                        col: token_col(line, 1),
                        msg: "row must be an index".into(),
                    })?;
                if row >= r.mul.len() {
                    return err(line_no, token_col(line, 1), "row index out of range");
                }
                let mut entries = Vec::new();
                for (i, t) in tokens[2..].iter().enumerate() {
                    entries.push(t.parse().map_err(|_| ParseError {
                        line: line_no,
                        col: token_col(line, 2 + i),
                        msg: "entries must be indices".into(),
                    })?);
                }
                r.mul[row] = entries;
            }
            Some("assign") => {
                let (l, rr) = split_once_token(&tokens[1..], "->", line_no, line)?;
                if l.len() != 1 || rr.len() != 1 {
                    return err(line_no, 1, "expected `assign <gen> -> <element>`");
                }
                let elem: usize = rr[0].parse().map_err(|_| ParseError {
                    line: line_no,
                    col: token_col(line, 3),
                    msg: "element must be an index".into(),
                })?;
                r.assign.push((l[0].to_string(), elem));
            }
            Some("left") => r.left = parse_raw_word(&tokens[1..]),
            Some("right") => r.right = parse_raw_word(&tokens[1..]),
            _ => return err(line_no, 1, format!("unknown refutation line `{line}`")),
        }
    }
    err(0, 1, "unexpected end of file inside a refutation block")
}

// ---------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------

fn push_line(out: &mut String, line: &str) {
    out.push_str(line);
    out.push('\n');
}

fn render_word(p: &Presentation, w: &Word) -> String {
    p.render_word(w)
}

fn render_relset(out: &mut String, p: &Presentation, rels: &RelSet, pullback_names: &mut Vec<String>) {
    match rels {
        RelSet::Explicit(set) => {
            for rel in set {
                push_line(
                    out,
                    &format!("rel {} -> {}", render_word(p, &rel.lhs), render_word(p, &rel.rhs)),
                );
            }
        }
        RelSet::Diagonal => push_line(out, "rel* diagonal"),
        RelSet::Pullback { .. } => {
            let name = if pullback_names.is_empty() {
                "q".to_string()
            } else {
                pullback_names.remove(0)
            };
            push_line(out, &format!("rel* pullback {name}"));
        }
        RelSet::Union(parts) => {
            for part in parts {
                render_relset(out, p, part, pullback_names);
            }
        }
    }
}

/// Renders a presentation block. Pullback parts reference morphisms by the
/// supplied names (defaulting to `q`).
pub fn render_presentation_block_with(
    name: &str,
    p: &Presentation,
    pullback_names: &[String],
) -> String {
    let mut out = String::new();
    push_line(&mut out, &format!("presentation {name}"));
    push_line(&mut out, &format!("gens {}", p.gen_names().join(" ")).trim_end());
    let mut names = pullback_names.to_vec();
    render_relset(&mut out, p, p.rels(), &mut names);
    if p.is_reflexive() {
        push_line(&mut out, "reflexive");
    }
    push_line(&mut out, "end");
    out
}

pub fn render_presentation_block(name: &str, p: &Presentation) -> String {
    render_presentation_block_with(name, p, &[])
}

pub fn render_morphism_block(
    name: &str,
    from: &str,
    to: &str,
    m: &crate::core::morphism::Morphism,
) -> String {
    let mut out = String::new();
    push_line(&mut out, &format!("morphism {name}"));
    push_line(&mut out, &format!("from {from}"));
    push_line(&mut out, &format!("to {to}"));
    for a in m.src().gen_ids() {
        push_line(
            &mut out,
            &format!(
                "map {} -> {}",
                m.src().gen_name(a),
                m.tgt().gen_name(m.apply_gen(a))
            ),
        );
    }
    push_line(&mut out, "end");
    out
}

pub fn render_derivation_block(
    name: &str,
    over: Option<&str>,
    p: &Presentation,
    d: &Derivation,
) -> String {
    let mut out = String::new();
    push_line(&mut out, &format!("derivation {name}"));
    if let Some(over) = over {
        push_line(&mut out, &format!("over {over}"));
    }
    push_line(&mut out, &format!("from {}", render_word(p, &d.start)));
    push_line(&mut out, &format!("to {}", render_word(p, &d.end)));
    for step in &d.steps {
        push_line(
            &mut out,
            &format!(
                "step {} | {} -> {} | {} {}",
                render_word(p, &step.left),
                render_word(p, &step.relation.lhs),
                render_word(p, &step.relation.rhs),
                render_word(p, &step.right),
                match step.direction {
                    Direction::Forward => "fwd",
                    Direction::Backward => "bwd",
                }
            ),
        );
    }
    push_line(&mut out, "end");
    out
}

pub fn render_monoid_block(m: &MonoidTable) -> String {
    let mut out = String::new();
    push_line(&mut out, &format!("monoid {} size {}", m.name, m.size));
    push_line(&mut out, &format!("elems {}", m.elems.join(" ")));
    push_line(&mut out, &format!("unit {}", m.unit));
    for (i, row) in m.mul.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        push_line(&mut out, &format!("mul {i}: {}", cells.join(" ")));
    }
    push_line(&mut out, "end");
    out
}

pub fn render_refutation_block(
    name: &str,
    over: Option<&str>,
    p: &Presentation,
    cert: &HomCertificate,
) -> String {
    let mut out = String::new();
    push_line(&mut out, &format!("refutation {name}"));
    if let Some(over) = over {
        push_line(&mut out, &format!("over {over}"));
    }
    push_line(&mut out, &format!("size {}", cert.table.size));
    push_line(&mut out, &format!("unit {}", cert.table.unit));
    for (i, row) in cert.table.mul.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        push_line(&mut out, &format!("mul {i}: {}", cells.join(" ")));
    }
    for a in p.gen_ids() {
        push_line(
            &mut out,
            &format!("assign {} -> {}", p.gen_name(a), cert.assignment[a.index()]),
        );
    }
    push_line(&mut out, &format!("left {}", render_word(p, &cert.left)));
    push_line(&mut out, &format!("right {}", render_word(p, &cert.right)));
    push_line(&mut out, "end");
    out
}

fn render_step_line(p: &Presentation, step: &TietzeStep, witness_ref: Option<&str>) -> String {
    match step {
        TietzeStep::Tgen { word, fresh } => {
            format!("tgen {fresh} := {}", render_word(p, word))
        }
        TietzeStep::Trel { lhs, rhs, .. } => format!(
            "trel {} -> {} witness {}",
            render_word(p, lhs),
            render_word(p, rhs),
            witness_ref.unwrap_or("?")
        ),
        TietzeStep::Trefl { word } => format!("trefl {}", render_word(p, word)),
        TietzeStep::Tsym { relation } => format!(
            "tsym {} -> {}",
            render_word(p, &relation.lhs),
            render_word(p, &relation.rhs)
        ),
        TietzeStep::Ttrans { first, second } => format!(
            "ttrans ({} -> {}) ({} -> {})",
            render_word(p, &first.lhs),
            render_word(p, &first.rhs),
            render_word(p, &second.lhs),
            render_word(p, &second.rhs)
        ),
        TietzeStep::Tctxt {
            relation,
            left,
            right,
        } => format!(
            "tctxt ({} -> {}) in {} _ {}",
            render_word(p, &relation.lhs),
            render_word(p, &relation.rhs),
            render_word(p, left),
            render_word(p, right)
        ),
    }
}

/// Renders a trace block plus the derivation blocks its witnessed steps
/// reference. Witness names are `<prefix>_w0`, `<prefix>_w1`, …
pub fn render_trace_blocks(prefix: &str, from: &str, trace: &TietzeTrace) -> String {
    let states = trace
        .intermediates()
        .expect("stored traces replay");
    let mut derivations = String::new();
    let mut body = String::new();
    let mut wit = 0usize;
    for (i, step) in trace.steps().iter().enumerate() {
        let state = &states[i];
        let reference = if let TietzeStep::Trel { witness, .. } = step {
            let name = format!("{prefix}_w{wit}");
            wit += 1;
            derivations.push_str(&render_derivation_block(&name, None, state, witness));
            Some(name)
        } else {
            None
        };
        push_line(&mut body, &render_step_line(state, step, reference.as_deref()));
    }
    let mut out = derivations;
    push_line(&mut out, &format!("trace from {from}"));
    out.push_str(&body);
    push_line(&mut out, "end");
    out
}

/// Renders a zig-zag with its segment headers; backward segments are
/// rendered from their own starting end.
pub fn render_zigzag_blocks(prefix: &str, from: &str, to: &str, z: &TietzeZigzag) -> String {
    let mut derivations = String::new();
    let mut body = String::new();
    let mut wit = 0usize;
    for (dir, trace) in z.segments() {
        push_line(
            &mut body,
            match dir {
                SegmentDirection::Forward => "forward",
                SegmentDirection::Backward => "backward",
            },
        );
        let states = trace.intermediates().expect("stored traces replay");
        for (i, step) in trace.steps().iter().enumerate() {
            let state = &states[i];
            let reference = if let TietzeStep::Trel { witness, .. } = step {
                let name = format!("{prefix}_w{wit}");
                wit += 1;
                derivations.push_str(&render_derivation_block(&name, None, state, witness));
                Some(name)
            } else {
                None
            };
            push_line(&mut body, &render_step_line(state, step, reference.as_deref()));
        }
    }
    let mut out = derivations;
    push_line(&mut out, &format!("zigzag from {from} to {to}"));
    out.push_str(&body);
    push_line(&mut out, "end");
    out
}

pub fn render_rules_block(over: &str, p: &Presentation, system: &RewriteSystem) -> String {
    let mut out = String::new();
    push_line(&mut out, &format!("rules for {over}"));
    for rule in system.rules() {
        push_line(
            &mut out,
            &format!(
                "rule {} -> {}",
                render_word(p, &rule.lhs),
                render_word(p, &rule.rhs)
            ),
        );
    }
    if system.is_convergent() {
        push_line(&mut out, "convergent");
    }
    push_line(&mut out, "end");
    out
}

// ---------------------------------------------------------------------
// Raw → typed resolution helpers
// ---------------------------------------------------------------------

/// Resolves a raw word against a presentation.
pub fn resolve_word(p: &Presentation, w: &RawWord) -> crate::error::Result<Word> {
    let mut letters = Vec::with_capacity(w.0.len());
    for name in &w.0 {
        let id = p
            .gen_id(name)
            .ok_or_else(|| crate::error::Error::UnknownLetter(name.clone()))?;
        letters.push(id);
    }
    Ok(Word(letters))
}

/// Resolves a raw derivation against a presentation.
pub fn resolve_derivation(p: &Presentation, d: &RawDerivation) -> crate::error::Result<Derivation> {
    let start = resolve_word(p, &d.from)?;
    let end = resolve_word(p, &d.to)?;
    let mut steps = Vec::with_capacity(d.steps.len());
    for s in &d.steps {
        steps.push(crate::rewriting::derivation::DerivationStep {
            left: resolve_word(p, &s.left)?,
            relation: Relation::new(resolve_word(p, &s.lhs)?, resolve_word(p, &s.rhs)?),
            direction: if s.forward {
                Direction::Forward
            } else {
                Direction::Backward
            },
            right: resolve_word(p, &s.right)?,
        });
    }
    Ok(Derivation { start, steps, end })
}
