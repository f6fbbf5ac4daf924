//! Embedding-free knot diagrams: Gauss diagrams, shadows and arc diagrams,
//! plus plane curves carrying enough chirality data to pin their embedding.
//!
//! Edge `i` of a closed diagram is the segment immediately following
//! passage `i`, taken cyclically, so a diagram with `n` crossings has `2n`
//! edges. The crossing-free circle is treated as having a single edge.

mod curve;
mod parse;


use std::fmt;

use thiserror::Error;

pub use curve::{BasedPlanarCurve, Chirality, Dart, FaceStructure, PlanarCurve, Side};
pub use parse::{
    parse_arc, parse_arc_file, parse_based_planar_curve, parse_curve_file, parse_gauss_code,
    parse_gauss_file, parse_planar_curve, parse_shadow, parse_shadow_file, Numbered,
};
pub(crate) use curve::{crossing_half_edges, traced_face_count};

pub type CrossingId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}, column {column}: bad token {token:?}")]
    Syntax { line: usize, column: usize, token: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("expected {expected} state bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("crossing {0} does not exist")]
    UnknownCrossing(CrossingId),
    #[error("edge {edge} out of range (diagram has {edges} edges)")]
    IndexOutOfRange { edge: usize, edges: usize },
    #[error("curve is not planar: {faces} faces traced, expected {expected}")]
    NotPlanar { faces: usize, expected: usize },
    #[error("outer face marker refers to edge {edge}, curve has {edges} edges")]
    BadOuterFace { edge: usize, edges: usize },
    #[error("base edge {edge} out of range (curve has {edges} edges)")]
    BadBaseEdge { edge: usize, edges: usize },
}

pub type DiagramResult<T> = Result<T, DiagramError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flip(self) -> Self {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }

    pub fn is_over(self) -> bool {
        self == Strand::Over
    }
}

/// One encounter of a crossing while travelling along the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passage {
    pub crossing: CrossingId,
    pub strand: Strand,
}

impl Passage {
    pub fn over(crossing: CrossingId) -> Self {
        Self { crossing, strand: Strand::Over }
    }

    pub fn under(crossing: CrossingId) -> Self {
        Self { crossing, strand: Strand::Under }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.strand.is_over() { 'O' } else { 'U' };
        write!(f, "{tag}{}", self.crossing)
    }
}

/// Number of edges of a closed diagram with `len` passages.
pub fn closed_edge_count(len: usize) -> usize {
    len.max(1)
}

/// Checks that `passages` uses every id in `1..=n` exactly once Over and once Under.
/// Returns the Over and Under positions indexed by `id - 1`.
fn over_under_positions(passages: &[Passage]) -> DiagramResult<(Vec<usize>, Vec<usize>)> {
    if !passages.len().is_multiple_of(2) {
        return Err(DiagramError::Invalid(format!(
            "odd number of passages ({})",
            passages.len()
        )));
    }
    let n = passages.len() / 2;
    let mut over = vec![usize::MAX; n];
    let mut under = vec![usize::MAX; n];
    for (pos, p) in passages.iter().enumerate() {
        let id = p.crossing as usize;
        if id == 0 || id > n {
            return Err(DiagramError::Invalid(format!(
                "crossing id {id} outside 1..={n}"
            )));
        }
        let slot = match p.strand {
            Strand::Over => &mut over[id - 1],
            Strand::Under => &mut under[id - 1],
        };
        if *slot != usize::MAX {
            return Err(DiagramError::Invalid(format!(
                "crossing {id} has two {:?} passages",
                p.strand
            )));
        }
        *slot = pos;
    }
    Ok((over, under))
}

/// Oriented knot diagram as a cyclic sequence of `2n` over/under passages.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    passages: Vec<Passage>,
    over_pos: Vec<usize>,
    under_pos: Vec<usize>,
}

impl GaussDiagram {
    pub fn new(passages: Vec<Passage>) -> DiagramResult<Self> {
        let (over_pos, under_pos) = over_under_positions(&passages)?;
        Ok(Self { passages, over_pos, under_pos })
    }

    /// The crossing-free circle.
    pub fn unknot() -> Self {
        Self { passages: Vec::new(), over_pos: Vec::new(), under_pos: Vec::new() }
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn crossing_count(&self) -> usize {
        self.over_pos.len()
    }

    pub fn edge_count(&self) -> usize {
        closed_edge_count(self.passages.len())
    }

    pub fn crossings(&self) -> impl Iterator<Item = CrossingId> {
        1..=self.crossing_count() as CrossingId
    }

    fn check_crossing(&self, c: CrossingId) -> DiagramResult<usize> {
        let idx = (c as usize).wrapping_sub(1);
        if idx < self.crossing_count() {
            Ok(idx)
        } else {
            Err(DiagramError::UnknownCrossing(c))
        }
    }

    pub fn over_position(&self, c: CrossingId) -> DiagramResult<usize> {
        Ok(self.over_pos[self.check_crossing(c)?])
    }

    pub fn under_position(&self, c: CrossingId) -> DiagramResult<usize> {
        Ok(self.under_pos[self.check_crossing(c)?])
    }

    /// Orientation reversal. Edge `i` of `self` becomes edge `2n-2-i` (mod `2n`).
    pub fn reverse(&self) -> Self {
        let passages = self.passages.iter().rev().copied().collect();
        Self::new(passages).expect("reversal preserves validity")
    }

    /// Mirror image: every crossing changed.
    pub fn mirror(&self) -> Self {
        let passages = self
            .passages
            .iter()
            .map(|p| Passage { crossing: p.crossing, strand: p.strand.flip() })
            .collect();
        Self::new(passages).expect("mirror preserves validity")
    }

    pub fn shadow(&self) -> Shadow {
        Shadow::new(self.passages.iter().map(|p| p.crossing).collect())
            .expect("a valid diagram has a valid shadow")
    }

    pub fn crossing_change(&self, c: CrossingId) -> DiagramResult<Self> {
        self.check_crossing(c)?;
        let passages = self
            .passages
            .iter()
            .map(|p| {
                if p.crossing == c {
                    Passage { crossing: c, strand: p.strand.flip() }
                } else {
                    *p
                }
            })
            .collect();
        Ok(Self::new(passages).expect("crossing change preserves validity"))
    }

    /// One bit per crossing: set when the crossing's first passage is Over.
    /// Inverse of [`Shadow::assign_state`].
    pub fn state_bits(&self) -> Vec<bool> {
        (0..self.crossing_count())
            .map(|i| self.over_pos[i] < self.under_pos[i])
            .collect()
    }

    /// Rotates the base of the cyclic sequence: passage `r` becomes passage 0.
    pub fn rotate(&self, r: usize) -> Self {
        if self.passages.is_empty() {
            return self.clone();
        }
        let len = self.passages.len();
        let passages = (0..len).map(|i| self.passages[(i + r) % len]).collect();
        Self::new(passages).expect("rotation preserves validity")
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.passages)
    }
}

impl fmt::Debug for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussDiagram({self})")
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Knot projection: a Gauss sequence without over/under data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shadow {
    seq: Vec<CrossingId>,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Shadow {
    pub fn new(seq: Vec<CrossingId>) -> DiagramResult<Self> {
        let (first, second) = visit_positions(&seq)?;
        Ok(Self { seq, first, second })
    }

    pub fn sequence(&self) -> &[CrossingId] {
        &self.seq
    }

    pub fn crossing_count(&self) -> usize {
        self.first.len()
    }

    pub fn edge_count(&self) -> usize {
        closed_edge_count(self.seq.len())
    }

    /// Positions of the first and second visit of crossing `c`.
    pub fn visits(&self, c: CrossingId) -> DiagramResult<(usize, usize)> {
        let idx = (c as usize).wrapping_sub(1);
        if idx < self.crossing_count() {
            Ok((self.first[idx], self.second[idx]))
        } else {
            Err(DiagramError::UnknownCrossing(c))
        }
    }

    pub(crate) fn first_positions(&self) -> &[usize] {
        &self.first
    }

    pub(crate) fn second_positions(&self) -> &[usize] {
        &self.second
    }

    /// State for `choice`: crossing `k`'s first visit is Over when `choice[k-1]` is set.
    pub fn assign_state(&self, choice: &[bool]) -> DiagramResult<GaussDiagram> {
        if choice.len() != self.crossing_count() {
            return Err(DiagramError::LengthMismatch {
                expected: self.crossing_count(),
                got: choice.len(),
            });
        }
        let passages = self
            .seq
            .iter()
            .enumerate()
            .map(|(pos, &c)| {
                let idx = c as usize - 1;
                let first_over = choice[idx];
                let over = if pos == self.first[idx] { first_over } else { !first_over };
                if over {
                    Passage::over(c)
                } else {
                    Passage::under(c)
                }
            })
            .collect();
        Ok(GaussDiagram::new(passages).expect("states of a valid shadow are valid"))
    }

    /// [`Shadow::assign_state`] with the choice packed into a bit mask (bit `k-1` for crossing `k`).
    pub fn assign_state_mask(&self, mask: u64) -> GaussDiagram {
        let choice: Vec<bool> = (0..self.crossing_count()).map(|i| mask >> i & 1 == 1).collect();
        self.assign_state(&choice).expect("mask covers every crossing")
    }

    /// Relabels crossings `1..=n` in order of first appearance.
    pub fn normalized(&self) -> Self {
        Self::new(normalize_ids(&self.seq)).expect("relabelling preserves validity")
    }

    pub fn rotate(&self, r: usize) -> Self {
        if self.seq.is_empty() {
            return self.clone();
        }
        let len = self.seq.len();
        Self::new((0..len).map(|i| self.seq[(i + r) % len]).collect())
            .expect("rotation preserves validity")
    }
}

impl fmt::Display for Shadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.seq)
    }
}

impl fmt::Debug for Shadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shadow({self})")
    }
}

/// First and second visit positions, validating that ids are `1..=n`, each twice.
fn visit_positions(seq: &[CrossingId]) -> DiagramResult<(Vec<usize>, Vec<usize>)> {
    if !seq.len().is_multiple_of(2) {
        return Err(DiagramError::Invalid(format!("odd sequence length {}", seq.len())));
    }
    let n = seq.len() / 2;
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    for (pos, &c) in seq.iter().enumerate() {
        let id = c as usize;
        if id == 0 || id > n {
            return Err(DiagramError::Invalid(format!("crossing id {id} outside 1..={n}")));
        }
        if first[id - 1] == usize::MAX {
            first[id - 1] = pos;
        } else if second[id - 1] == usize::MAX {
            second[id - 1] = pos;
        } else {
            return Err(DiagramError::Invalid(format!("crossing {id} appears more than twice")));
        }
    }
    Ok((first, second))
}

/// Map of ids to `1..` in order of first appearance.
pub(crate) fn normalize_ids(seq: &[CrossingId]) -> Vec<CrossingId> {
    let max = seq.iter().copied().max().unwrap_or(0) as usize;
    let mut map = vec![0 as CrossingId; max + 1];
    let mut next = 0;
    seq.iter()
        .map(|&c| {
            let slot = &mut map[c as usize];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            *slot
        })
        .collect()
}

/// Diagram of a spatial arc: a linear (non-cyclic) passage sequence with `2n+1` edges.
///
/// Edge `j` is the segment just before passage `j`; edge `2n` follows the last passage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    passages: Vec<Passage>,
    over_pos: Vec<usize>,
    under_pos: Vec<usize>,
}

impl ArcDiagram {
    pub fn new(passages: Vec<Passage>) -> DiagramResult<Self> {
        let (over_pos, under_pos) = over_under_positions(&passages)?;
        Ok(Self { passages, over_pos, under_pos })
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn crossing_count(&self) -> usize {
        self.over_pos.len()
    }

    pub fn edge_count(&self) -> usize {
        self.passages.len() + 1
    }

    pub fn over_position(&self, c: CrossingId) -> DiagramResult<usize> {
        let idx = (c as usize).wrapping_sub(1);
        self.over_pos.get(idx).copied().ok_or(DiagramError::UnknownCrossing(c))
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.passages)
    }
}

impl fmt::Debug for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcDiagram({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(s: &str) -> GaussDiagram {
        parse_gauss_code(s).unwrap()
    }

    fn raw(s: &str) -> GaussDiagram {
        let passages = s
            .split_whitespace()
            .map(|tok| {
                let id = tok[1..].parse().unwrap();
                if tok.starts_with('O') { Passage::over(id) } else { Passage::under(id) }
            })
            .collect();
        GaussDiagram::new(passages).unwrap()
    }

    #[test]
    fn reverse_keeps_flags() {
        let d = raw("O1 O2 O3 U1 U2 U3");
        assert_eq!(d.reverse().to_string(), "U3 U2 U1 O3 O2 O1");
        assert_eq!(d.reverse().reverse(), d);
        assert_eq!(GaussDiagram::unknot().reverse(), GaussDiagram::unknot());
    }

    #[test]
    fn mirror_flips_flags() {
        let d = raw("O1 U2 O3 U1 O2 U3");
        assert_eq!(d.mirror().to_string(), "U1 O2 U3 O1 U2 O3");
        assert_eq!(d.mirror().mirror(), d);
    }

    #[test]
    fn shadow_forgets_strands() {
        let d = raw("O1 U2 O3 U1 O2 U3");
        assert_eq!(d.shadow().to_string(), "1 2 3 1 2 3");
        assert_eq!(d.mirror().shadow(), d.shadow());
        assert_eq!(GaussDiagram::unknot().shadow().crossing_count(), 0);
    }

    #[test]
    fn states_of_two_crossing_shadow() {
        let p = Shadow::new(vec![1, 2, 1, 2]).unwrap();
        let all_over = p.assign_state(&[true, true]).unwrap();
        assert_eq!(all_over.to_string(), "O1 O2 U1 U2");
        let all_under = p.assign_state(&[false, false]).unwrap();
        assert_eq!(all_under.to_string(), "U1 U2 O1 O2");
        assert_eq!(all_under, all_over.mirror());
        let states: std::collections::HashSet<_> = (0..4).map(|m| p.assign_state_mask(m)).collect();
        assert_eq!(states.len(), 4);
        assert_eq!(
            p.assign_state(&[true]),
            Err(DiagramError::LengthMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn state_bits_invert_assign_state() {
        for d in [raw("O1 U2 O3 U1 O2 U3"), raw("U1 O2 O3 O1 U2 U3"), gauss("O1 U1")] {
            assert_eq!(d.shadow().assign_state(&d.state_bits()).unwrap(), d);
        }
    }

    #[test]
    fn crossing_change_swaps_one_crossing() {
        let d = raw("O1 O2 O3 U1 U2 U3");
        assert_eq!(d.crossing_change(1).unwrap().to_string(), "U1 O2 O3 O1 U2 U3");
        assert_eq!(d.crossing_change(2).unwrap().crossing_change(2).unwrap(), d);
        let all = d.crossings().fold(d.clone(), |acc, c| acc.crossing_change(c).unwrap());
        assert_eq!(all, d.mirror());
        assert_eq!(d.crossing_change(4), Err(DiagramError::UnknownCrossing(4)));
        assert_eq!(d.crossing_change(0), Err(DiagramError::UnknownCrossing(0)));
    }

    #[test]
    fn rejects_bad_pairings() {
        assert!(GaussDiagram::new(vec![Passage::over(1), Passage::over(1)]).is_err());
        assert!(GaussDiagram::new(vec![Passage::over(1), Passage::under(2)]).is_err());
        assert!(Shadow::new(vec![1, 1, 1, 2]).is_err());
        assert!(ArcDiagram::new(vec![Passage::over(1)]).is_err());
    }
}
