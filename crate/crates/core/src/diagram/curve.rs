//! Closed plane curves encoded as chirality-signed Gauss sequences.
//!
//! Every crossing carries one chirality flag describing how its second visit
//! crosses its first visit. Together with the sequence this fixes the cyclic
//! order of the four half-edges at each crossing, i.e. a rotation system, and
//! the faces of the curve are the orbits of the usual face-tracing
//! permutation. A sequence with `n` crossings encodes a curve on the sphere
//! exactly when it traces `n + 2` faces.
//!
//! Half-edges are indexed `2e` (tail of edge `e`, leaving passage `e`) and
//! `2e + 1` (head of edge `e`, entering passage `e + 1`). Darts `(e, side)`
//! share that indexing: `(e, Left)` is `2e` and `(e, Right)` is `2e + 1`.

use std::collections::BTreeSet;
use std::fmt;

use super::{closed_edge_count, visit_positions, CrossingId, DiagramError, DiagramResult, Shadow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "LEFT",
            Side::Right => "RIGHT",
        })
    }
}

/// How the second visit of a crossing passes the first-visit strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    /// From the left side of the first strand to its right side.
    L,
    /// From the right side of the first strand to its left side.
    R,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::L => Chirality::R,
            Chirality::R => Chirality::L,
        }
    }
}

/// One side of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub side: Side,
}

impl Dart {
    pub fn new(edge: usize, side: Side) -> Self {
        Self { edge, side }
    }

    pub(crate) fn index(self) -> usize {
        2 * self.edge + (self.side == Side::Right) as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        let side = if i.is_multiple_of(2) { Side::Left } else { Side::Right };
        Self { edge: i / 2, side }
    }
}

/// Faces of a plane curve, each a cyclic list of darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    faces: Vec<Vec<Dart>>,
    dart_face: Vec<usize>,
    outer_face: usize,
    adjacency: Vec<BTreeSet<usize>>,
}

impl FaceStructure {
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn face_of(&self, dart: Dart) -> usize {
        self.dart_face[dart.index()]
    }

    /// Faces sharing at least one edge with `face`.
    pub fn neighbors(&self, face: usize) -> &BTreeSet<usize> {
        &self.adjacency[face]
    }

    /// Face occupying the sector that follows half-edge `he` counterclockwise.
    pub(crate) fn sector_after(&self, he: usize) -> usize {
        self.dart_face[he]
    }
}

/// Rotation system of a chirality-signed Gauss sequence: the clockwise
/// successor of every half-edge around its crossing.
fn clockwise_successors(
    first: &[usize],
    second: &[usize],
    chirality: &[Chirality],
    m: usize,
) -> Vec<usize> {
    let mut cw = vec![usize::MAX; 2 * m];
    for i in 0..first.len() {
        let [a_in, a_out, b_in, b_out] = crossing_half_edges(first[i], second[i], m);
        let ccw = match chirality[i] {
            Chirality::L => [a_out, b_in, a_in, b_out],
            Chirality::R => [a_out, b_out, a_in, b_in],
        };
        for k in 0..4 {
            cw[ccw[(k + 1) % 4]] = ccw[k];
        }
    }
    cw
}

/// `[a_in, a_out, b_in, b_out]` for a crossing visited first at `p1`, then at `p2`.
pub(crate) fn crossing_half_edges(p1: usize, p2: usize, m: usize) -> [usize; 4] {
    let head_before = |p: usize| 2 * ((p + m - 1) % m) + 1;
    [head_before(p1), 2 * p1, head_before(p2), 2 * p2]
}

/// Orbits of the face permutation `dart -> cw(arrival half-edge)`.
fn trace_faces(
    first: &[usize],
    second: &[usize],
    chirality: &[Chirality],
    edges: usize,
) -> (Vec<Vec<Dart>>, Vec<usize>) {
    let darts = 2 * edges;
    let cw = if first.is_empty() {
        // a lone circle: each side of its single edge closes up on itself
        vec![1, 0]
    } else {
        clockwise_successors(first, second, chirality, edges)
    };
    let mut dart_face = vec![usize::MAX; darts];
    let mut faces = Vec::new();
    for start in 0..darts {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut face = Vec::new();
        let mut d = start;
        while dart_face[d] == usize::MAX {
            dart_face[d] = id;
            face.push(Dart::from_index(d));
            d = cw[d ^ 1];
        }
        faces.push(face);
    }
    (faces, dart_face)
}

/// Number of faces traced by a chirality-signed sequence; `n + 2` iff it is a plane curve.
pub(crate) fn traced_face_count(seq: &[CrossingId], chirality: &[Chirality]) -> DiagramResult<usize> {
    let (first, second) = visit_positions(seq)?;
    Ok(trace_faces(&first, &second, chirality, closed_edge_count(seq.len())).0.len())
}

/// Closed transversely intersecting curve in the plane.
///
/// The passage order fixes a reference orientation; the `outer` dart marks
/// which side of which edge borders the unbounded region.
#[derive(Clone, PartialEq, Eq)]
pub struct PlanarCurve {
    seq: Vec<CrossingId>,
    chirality: Vec<Chirality>,
    first: Vec<usize>,
    second: Vec<usize>,
    outer: Dart,
    faces: FaceStructure,
}

impl PlanarCurve {
    pub fn new(seq: Vec<CrossingId>, chirality: Vec<Chirality>, outer: Dart) -> DiagramResult<Self> {
        let (first, second) = visit_positions(&seq)?;
        let n = first.len();
        if chirality.len() != n {
            return Err(DiagramError::LengthMismatch { expected: n, got: chirality.len() });
        }
        let edges = closed_edge_count(seq.len());
        if outer.edge >= edges {
            return Err(DiagramError::BadOuterFace { edge: outer.edge, edges });
        }
        let (faces, dart_face) = trace_faces(&first, &second, &chirality, edges);
        if faces.len() != n + 2 {
            return Err(DiagramError::NotPlanar { faces: faces.len(), expected: n + 2 });
        }
        let mut adjacency = vec![BTreeSet::new(); faces.len()];
        for e in 0..edges {
            let l = dart_face[2 * e];
            let r = dart_face[2 * e + 1];
            adjacency[l].insert(r);
            adjacency[r].insert(l);
        }
        let outer_face = dart_face[outer.index()];
        let faces = FaceStructure { faces, dart_face, outer_face, adjacency };
        Ok(Self { seq, chirality, first, second, outer, faces })
    }

    /// The embedded circle with the unbounded region on the given side.
    pub fn circle(outer_side: Side) -> Self {
        Self::new(Vec::new(), Vec::new(), Dart::new(0, outer_side)).expect("circle is planar")
    }

    pub fn sequence(&self) -> &[CrossingId] {
        &self.seq
    }

    pub fn chiralities(&self) -> &[Chirality] {
        &self.chirality
    }

    pub fn crossing_count(&self) -> usize {
        self.first.len()
    }

    pub fn edge_count(&self) -> usize {
        closed_edge_count(self.seq.len())
    }

    pub fn outer(&self) -> Dart {
        self.outer
    }

    pub fn faces(&self) -> &FaceStructure {
        &self.faces
    }

    pub fn chirality(&self, c: CrossingId) -> DiagramResult<Chirality> {
        self.chirality
            .get((c as usize).wrapping_sub(1))
            .copied()
            .ok_or(DiagramError::UnknownCrossing(c))
    }

    /// Positions of the first and second visit of `c`.
    pub fn visits(&self, c: CrossingId) -> DiagramResult<(usize, usize)> {
        let idx = (c as usize).wrapping_sub(1);
        if idx < self.crossing_count() {
            Ok((self.first[idx], self.second[idx]))
        } else {
            Err(DiagramError::UnknownCrossing(c))
        }
    }

    pub fn check_edge(&self, edge: usize) -> DiagramResult<()> {
        if edge < self.edge_count() {
            Ok(())
        } else {
            Err(DiagramError::IndexOutOfRange { edge, edges: self.edge_count() })
        }
    }

    pub fn face_left(&self, edge: usize) -> usize {
        self.faces.face_of(Dart::new(edge, Side::Left))
    }

    pub fn face_right(&self, edge: usize) -> usize {
        self.faces.face_of(Dart::new(edge, Side::Right))
    }

    pub fn shadow(&self) -> Shadow {
        Shadow::new(self.seq.clone()).expect("curve sequence is a valid shadow")
    }

    /// Same curve with a different unbounded region.
    pub fn with_outer(&self, outer: Dart) -> DiagramResult<Self> {
        Self::new(self.seq.clone(), self.chirality.clone(), outer)
    }

    /// Edge of the reversed curve that runs along edge `edge` of this one.
    pub fn reversed_edge(&self, edge: usize) -> usize {
        let m = self.edge_count();
        (2 * m - 2 - edge) % m
    }

    /// The same curve traversed backwards.
    ///
    /// Passage order is reversed, every chirality flag flips (the visit
    /// order at each crossing swaps), and sides of edges swap.
    pub fn reversed(&self) -> Self {
        let seq = self.seq.iter().rev().copied().collect();
        let chirality = self.chirality.iter().map(|c| c.flip()).collect();
        let outer = Dart::new(self.reversed_edge(self.outer.edge), self.outer.side.flip());
        Self::new(seq, chirality, outer).expect("reversal preserves planarity")
    }

    /// Cyclic shift of the sequence start: passage `r` becomes passage 0.
    pub fn rotated(&self, r: usize) -> Self {
        if self.seq.is_empty() {
            return self.clone();
        }
        let m = self.seq.len();
        let r = r % m;
        let seq = (0..m).map(|i| self.seq[(i + r) % m]).collect();
        let chirality = (0..self.crossing_count())
            .map(|i| {
                let q1 = (self.first[i] + m - r) % m;
                let q2 = (self.second[i] + m - r) % m;
                if q1 > q2 {
                    self.chirality[i].flip()
                } else {
                    self.chirality[i]
                }
            })
            .collect();
        let outer = Dart::new((self.outer.edge + m - r) % m, self.outer.side);
        Self::new(seq, chirality, outer).expect("rotation preserves planarity")
    }

    /// Relabels crossings by `perm`, where crossing `c` becomes `perm[c - 1]`.
    pub fn relabeled(&self, perm: &[CrossingId]) -> DiagramResult<Self> {
        if perm.len() != self.crossing_count() {
            return Err(DiagramError::LengthMismatch {
                expected: self.crossing_count(),
                got: perm.len(),
            });
        }
        let seq = self.seq.iter().map(|&c| perm[c as usize - 1]).collect();
        let mut chirality = vec![Chirality::L; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            let slot = (p as usize).wrapping_sub(1);
            if slot >= perm.len() {
                return Err(DiagramError::UnknownCrossing(p));
            }
            chirality[slot] = self.chirality[i];
        }
        Self::new(seq, chirality, self.outer)
    }

    /// Relabels crossings `1..=n` in order of first appearance.
    pub fn normalized(&self) -> Self {
        let mut perm = vec![0; self.crossing_count()];
        let mut next = 0;
        for &c in &self.seq {
            let slot = &mut perm[c as usize - 1];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
        }
        self.relabeled(&perm).expect("first-appearance order is a permutation")
    }

    /// Sequence line of the `.curve` format, e.g. `1 2 3 1L 2R 3L`.
    pub fn sequence_text(&self) -> String {
        self.seq
            .iter()
            .enumerate()
            .map(|(pos, &c)| {
                let idx = c as usize - 1;
                if pos == self.second[idx] {
                    let flag = match self.chirality[idx] {
                        Chirality::L => 'L',
                        Chirality::R => 'R',
                    };
                    format!("{c}{flag}")
                } else {
                    c.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `.curve` text without a `BASE` line.
impl fmt::Display for PlanarCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.sequence_text())?;
        writeln!(f, "OUTER {} {}", self.outer.edge, self.outer.side)
    }
}

impl fmt::Debug for PlanarCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PlanarCurve({} | OUTER {} {})",
            self.sequence_text(),
            self.outer.edge,
            self.outer.side
        )
    }
}

/// Plane curve with a base point on one of its edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasedPlanarCurve {
    curve: PlanarCurve,
    base_edge: usize,
}

impl BasedPlanarCurve {
    pub fn new(curve: PlanarCurve, base_edge: usize) -> DiagramResult<Self> {
        if base_edge >= curve.edge_count() {
            return Err(DiagramError::BadBaseEdge { edge: base_edge, edges: curve.edge_count() });
        }
        Ok(Self { curve, base_edge })
    }

    pub fn curve(&self) -> &PlanarCurve {
        &self.curve
    }

    pub fn base_edge(&self) -> usize {
        self.base_edge
    }

    pub fn reversed(&self) -> Self {
        let base_edge = self.curve.reversed_edge(self.base_edge);
        Self { curve: self.curve.reversed(), base_edge }
    }

    pub fn rotated(&self, r: usize) -> Self {
        let m = self.curve.edge_count();
        let base_edge = if self.curve.crossing_count() == 0 {
            self.base_edge
        } else {
            (self.base_edge + m - r % m) % m
        };
        Self { curve: self.curve.rotated(r), base_edge }
    }
}

impl fmt::Display for BasedPlanarCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.curve)?;
        writeln!(f, "BASE {}", self.base_edge)
    }
}
