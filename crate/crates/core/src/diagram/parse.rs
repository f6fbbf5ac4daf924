//! Text formats: `.gauss`, `.shadow`, `.arc` and `.curve`.
//!
//! `.gauss`, `.shadow` and `.arc` files hold one diagram per line and allow
//! `#` comments. Crossing ids are renumbered `1..=n` in order of first
//! appearance. Lines and columns in errors are 1-based.

use super::curve::{BasedPlanarCurve, Chirality, Dart, PlanarCurve, Side};
use super::{normalize_ids, ArcDiagram, CrossingId, DiagramError, DiagramResult, GaussDiagram, Passage, Shadow, Strand};

/// A parsed item with the (1-based) line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numbered<T> {
    pub line: usize,
    pub value: T,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let line = strip_comment(line);
    let mut out = Vec::new();
    let mut start = None;
    for (col, (idx, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((idx, col)),
            (true, Some((s, c))) => {
                out.push(Token { text: &line[s..idx], column: c + 1 });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, c)) = start {
        out.push(Token { text: &line[s..], column: c + 1 });
    }
    out
}

fn syntax(line: usize, tok: &Token<'_>) -> DiagramError {
    DiagramError::Syntax { line, column: tok.column, token: tok.text.to_string() }
}

fn parse_id(line: usize, tok: &Token<'_>, digits: &str) -> DiagramResult<CrossingId> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, tok));
    }
    match digits.parse::<CrossingId>() {
        Ok(id) if id > 0 => Ok(id),
        _ => Err(syntax(line, tok)),
    }
}

fn parse_passage_line(line: usize, text: &str) -> DiagramResult<Vec<Passage>> {
    let toks = tokens(text);
    let mut raw = Vec::with_capacity(toks.len());
    for tok in &toks {
        let strand = match tok.text.as_bytes()[0] {
            b'O' | b'o' => Strand::Over,
            b'U' | b'u' => Strand::Under,
            _ => return Err(syntax(line, tok)),
        };
        raw.push((parse_id(line, tok, &tok.text[1..])?, strand));
    }
    let ids: Vec<CrossingId> = raw.iter().map(|&(id, _)| id).collect();
    let renamed = normalize_ids(&ids);
    let mut seen: std::collections::HashMap<CrossingId, (usize, usize)> = Default::default();
    for &(id, strand) in &raw {
        let entry = seen.entry(id).or_default();
        match strand {
            Strand::Over => entry.0 += 1,
            Strand::Under => entry.1 += 1,
        }
    }
    let mut bad: Vec<_> = seen.iter().filter(|(_, &(o, u))| (o, u) != (1, 1)).collect();
    bad.sort();
    if let Some((&id, &(o, u))) = bad.first() {
        return Err(DiagramError::Validation {
            line,
            message: format!(
                "crossing {id} has {o} over and {u} under passages (expected exactly one of each)"
            ),
        });
    }
    Ok(raw
        .iter()
        .zip(renamed)
        .map(|(&(_, strand), crossing)| Passage { crossing, strand })
        .collect())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !strip_comment(l).trim().is_empty())
}

fn single<T>(mut items: Vec<Numbered<T>>, empty: T) -> DiagramResult<T> {
    match items.len() {
        0 => Ok(empty),
        1 => Ok(items.pop().unwrap().value),
        _ => Err(DiagramError::Validation {
            line: items[1].line,
            message: "expected a single diagram".into(),
        }),
    }
}

/// Parses every diagram of a `.gauss` file.
pub fn parse_gauss_file(text: &str) -> DiagramResult<Vec<Numbered<GaussDiagram>>> {
    content_lines(text)
        .map(|(line, l)| {
            let passages = parse_passage_line(line, l)?;
            let value = GaussDiagram::new(passages)
                .map_err(|e| DiagramError::Validation { line, message: e.to_string() })?;
            Ok(Numbered { line, value })
        })
        .collect()
}

/// Parses a single Gauss code such as `O1 U2 O3 U1 O2 U3`. Empty input is the circle.
pub fn parse_gauss_code(text: &str) -> DiagramResult<GaussDiagram> {
    single(parse_gauss_file(text)?, GaussDiagram::unknot())
}

/// Parses every arc of an `.arc` file.
pub fn parse_arc_file(text: &str) -> DiagramResult<Vec<Numbered<ArcDiagram>>> {
    content_lines(text)
        .map(|(line, l)| {
            let passages = parse_passage_line(line, l)?;
            let value = ArcDiagram::new(passages)
                .map_err(|e| DiagramError::Validation { line, message: e.to_string() })?;
            Ok(Numbered { line, value })
        })
        .collect()
}

pub fn parse_arc(text: &str) -> DiagramResult<ArcDiagram> {
    let empty = ArcDiagram::new(Vec::new()).expect("empty arc is valid");
    single(parse_arc_file(text)?, empty)
}

/// Parses every shadow of a `.shadow` file.
pub fn parse_shadow_file(text: &str) -> DiagramResult<Vec<Numbered<Shadow>>> {
    content_lines(text)
        .map(|(line, l)| {
            let toks = tokens(l);
            let ids = toks
                .iter()
                .map(|tok| parse_id(line, tok, tok.text))
                .collect::<DiagramResult<Vec<_>>>()?;
            let mut counts: std::collections::BTreeMap<CrossingId, usize> = Default::default();
            for &id in &ids {
                *counts.entry(id).or_default() += 1;
            }
            if let Some((id, k)) = counts.iter().find(|(_, &k)| k != 2) {
                return Err(DiagramError::Validation {
                    line,
                    message: format!("crossing {id} appears {k} times (expected 2)"),
                });
            }
            let value = Shadow::new(normalize_ids(&ids))
                .map_err(|e| DiagramError::Validation { line, message: e.to_string() })?;
            Ok(Numbered { line, value })
        })
        .collect()
}

pub fn parse_shadow(text: &str) -> DiagramResult<Shadow> {
    let empty = Shadow::new(Vec::new()).expect("empty shadow is valid");
    single(parse_shadow_file(text)?, empty)
}

/// Parses a `.curve` file, returning the curve and the optional `BASE` edge.
///
/// The chirality flag may sit on either visit of a crossing but must appear
/// exactly once; it always describes the second visit.
pub fn parse_curve_file(text: &str) -> DiagramResult<(PlanarCurve, Option<usize>)> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .collect();
    // the sequence line may be empty (crossing-free circle), so locate OUTER first
    let outer_at = lines
        .iter()
        .position(|(_, l)| l.trim_start().starts_with("OUTER"))
        .ok_or(DiagramError::Validation { line: lines.len().max(1), message: "missing OUTER line".into() })?;
    let seq_lines: Vec<&(usize, &str)> =
        lines[..outer_at].iter().filter(|(_, l)| !l.trim().is_empty()).collect();
    if seq_lines.len() > 1 {
        return Err(DiagramError::Validation {
            line: seq_lines[1].0,
            message: "expected a single sequence line before OUTER".into(),
        });
    }

    let mut raw_ids = Vec::new();
    let mut flags: Vec<Option<Chirality>> = Vec::new();
    if let Some(&&(line, l)) = seq_lines.first() {
        for tok in tokens(l) {
            let (digits, flag) = match tok.text.as_bytes()[tok.text.len() - 1] {
                b'L' | b'l' => (&tok.text[..tok.text.len() - 1], Some(Chirality::L)),
                b'R' | b'r' => (&tok.text[..tok.text.len() - 1], Some(Chirality::R)),
                _ => (tok.text, None),
            };
            raw_ids.push(parse_id(line, &tok, digits)?);
            flags.push(flag);
        }
    }
    let seq_line = seq_lines.first().map_or(1, |(l, _)| *l);
    let seq = normalize_ids(&raw_ids);
    let n = seq.iter().copied().max().unwrap_or(0) as usize;
    let mut chirality: Vec<Option<Chirality>> = vec![None; n];
    let mut visits = vec![0usize; n];
    for (&c, flag) in seq.iter().zip(&flags) {
        let idx = c as usize - 1;
        visits[idx] += 1;
        if let Some(f) = flag {
            if chirality[idx].replace(*f).is_some() {
                return Err(DiagramError::Validation {
                    line: seq_line,
                    message: format!("crossing {} carries two chirality flags", raw_id(&raw_ids, &seq, c)),
                });
            }
        }
    }
    for (idx, (&k, flag)) in visits.iter().zip(&chirality).enumerate() {
        let c = raw_id(&raw_ids, &seq, idx as CrossingId + 1);
        if k != 2 {
            return Err(DiagramError::Validation {
                line: seq_line,
                message: format!("crossing {c} appears {k} times (expected 2)"),
            });
        }
        if flag.is_none() {
            return Err(DiagramError::Validation {
                line: seq_line,
                message: format!("crossing {c} has no chirality flag"),
            });
        }
    }
    let chirality: Vec<Chirality> = chirality.into_iter().map(Option::unwrap).collect();

    let (outer_line, outer_text) = lines[outer_at];
    let outer_toks = tokens(outer_text);
    if outer_toks.len() != 3 {
        return Err(DiagramError::Validation {
            line: outer_line,
            message: "expected `OUTER <edge> <LEFT|RIGHT>`".into(),
        });
    }
    let edge = parse_index(outer_line, &outer_toks[1])?;
    let side = match outer_toks[2].text {
        "LEFT" => Side::Left,
        "RIGHT" => Side::Right,
        _ => return Err(syntax(outer_line, &outer_toks[2])),
    };

    let mut base = None;
    for &(line, l) in &lines[outer_at + 1..] {
        let toks = tokens(l);
        if toks.is_empty() {
            continue;
        }
        if toks[0].text != "BASE" || toks.len() != 2 || base.is_some() {
            return Err(syntax(line, &toks[0]));
        }
        base = Some(parse_index(line, &toks[1])?);
    }

    let curve = PlanarCurve::new(seq, chirality, Dart::new(edge, side))?;
    if let Some(b) = base {
        curve.check_edge(b).map_err(|_| DiagramError::BadBaseEdge { edge: b, edges: curve.edge_count() })?;
    }
    Ok((curve, base))
}

fn raw_id(raw: &[CrossingId], normalized: &[CrossingId], c: CrossingId) -> CrossingId {
    normalized.iter().position(|&x| x == c).map_or(c, |i| raw[i])
}

fn parse_index(line: usize, tok: &Token<'_>) -> DiagramResult<usize> {
    tok.text.parse().map_err(|_| syntax(line, tok))
}

/// Parses a `.curve` file, ignoring (but validating) any `BASE` line.
pub fn parse_planar_curve(text: &str) -> DiagramResult<PlanarCurve> {
    parse_curve_file(text).map(|(c, _)| c)
}

/// Parses a `.curve` file that must carry a `BASE` line.
pub fn parse_based_planar_curve(text: &str) -> DiagramResult<BasedPlanarCurve> {
    let (curve, base) = parse_curve_file(text)?;
    let base = base.ok_or(DiagramError::Validation {
        line: text.lines().count().max(1),
        message: "missing BASE line".into(),
    })?;
    BasedPlanarCurve::new(curve, base)
}
