//! Plane-curve machinery: checkerboard colorings, the induced alternating
//! diagram, winding numbers, Seifert circles and rotation numbers, positive
//! kinks, and the canonical orientations of even and based odd curves.
//!
//! Orientations are reported relative to a curve's reference orientation
//! (its passage order). Everything computed for the reversed orientation is
//! computed on [`PlanarCurve::reversed`].

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::diagram::{
    crossing_half_edges, BasedPlanarCurve, Chirality, CrossingId, Dart, DiagramError,
    FaceStructure, GaussDiagram, Passage, PlanarCurve, Side,
};
use crate::warping;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("face adjacency graph is not bipartite")]
    NotBipartite,
    #[error("curve has no crossings")]
    NoCrossings,
    #[error("method needs an even number of crossings, curve has {0}")]
    OddCrossingNumber(usize),
    #[error("method needs an odd number of crossings, curve has {0}")]
    EvenCrossingNumber(usize),
    #[error("warping degrees tie: d(D) = d(-D) = {0}")]
    TieBreak(usize),
    #[error("rotation number is zero")]
    ZeroRotation,
    #[error("no side of edge {0} borders a black face")]
    NoBlackSide(usize),
    #[error("diagram {0} is not a state of the curve")]
    ShadowMismatch(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type PlanarResult<T> = Result<T, PlanarError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A proper 2-coloring of the faces of a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkerboard {
    colors: Vec<Color>,
}

impl Checkerboard {
    pub fn color(&self, face: usize) -> Color {
        self.colors[face]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn black_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Black).count()
    }

    pub fn white_count(&self) -> usize {
        self.colors.len() - self.black_count()
    }

    /// Whether faces sharing an edge always differ in color.
    pub fn is_proper(&self, faces: &FaceStructure) -> bool {
        (0..faces.face_count())
            .all(|f| faces.neighbors(f).iter().all(|&g| self.colors[f] != self.colors[g]))
    }
}

/// Orientation of a curve relative to its reference orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Reference,
    Reversed,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Reference => 1,
            Orientation::Reversed => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Reference => Orientation::Reversed,
            Orientation::Reversed => Orientation::Reference,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrientationMethod {
    /// Even curves: the induced alternating diagram has `d(D) < d(-D)`.
    Warping,
    /// Even curves: positive rotation number.
    Rotation,
    /// Based odd curves: warping selection after a positive kink at the base point.
    WarpingKink,
    /// Based odd curves: the black face lies on the right at the base point.
    BlackRight,
}

impl fmt::Display for OrientationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientationMethod::Warping | OrientationMethod::WarpingKink => "warping",
            OrientationMethod::Rotation => "rotation",
            OrientationMethod::BlackRight => "black-right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationChoice {
    pub orientation: Orientation,
    pub method: OrientationMethod,
}

impl OrientationChoice {
    pub fn sign(&self) -> i32 {
        self.orientation.sign()
    }
}

/// Which strand of a crossing the induced alternating diagram puts on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverStrandRule {
    /// The over strand, turned slightly counterclockwise, sweeps the black sectors.
    SweepsBlackCounterclockwise,
    /// Mirror convention: it sweeps the white sectors.
    SweepsWhiteCounterclockwise,
}

/// Convention used by [`induced_alternating`]. Positive kinks placed in black
/// faces keep the induced diagram alternating under this rule.
pub const OVER_STRAND_RULE: OverStrandRule = OverStrandRule::SweepsBlackCounterclockwise;

pub fn compute_faces(c: &PlanarCurve) -> FaceStructure {
    c.faces().clone()
}

/// Propagates colors across edges starting from `root`.
fn two_color(faces: &FaceStructure, root: usize, root_color: Color) -> PlanarResult<Checkerboard> {
    let mut colors: Vec<Option<Color>> = vec![None; faces.face_count()];
    colors[root] = Some(root_color);
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let here = colors[f].expect("queued faces are colored");
        for &g in faces.neighbors(f) {
            match colors[g] {
                None => {
                    colors[g] = Some(here.other());
                    queue.push_back(g);
                }
                Some(c) if c == here => return Err(PlanarError::NotBipartite),
                Some(_) => {}
            }
        }
    }
    let colors = colors
        .into_iter()
        .map(|c| c.ok_or_else(|| PlanarError::InternalInconsistency("face graph disconnected".into())))
        .collect::<PlanarResult<Vec<_>>>()?;
    Ok(Checkerboard { colors })
}

/// Checkerboard coloring with the unbounded face white.
pub fn checkerboard(c: &PlanarCurve) -> PlanarResult<Checkerboard> {
    two_color(c.faces(), c.faces().outer_face(), Color::White)
}

/// Of the two colorings on the sphere, the one with more black faces.
pub fn sphere_black_majority_coloring(c: &PlanarCurve) -> PlanarResult<Checkerboard> {
    let n = c.crossing_count();
    if n.is_multiple_of(2) {
        return Err(PlanarError::EvenCrossingNumber(n));
    }
    let coloring = two_color(c.faces(), 0, Color::Black)?;
    if coloring.black_count() > coloring.white_count() {
        Ok(coloring)
    } else {
        Ok(Checkerboard { colors: coloring.colors.iter().map(|c| c.other()).collect() })
    }
}

/// The alternating diagram determined by the checkerboard coloring, with
/// the curve's reference orientation.
pub fn induced_alternating(c: &PlanarCurve) -> PlanarResult<GaussDiagram> {
    induced_alternating_with(c, OVER_STRAND_RULE)
}

pub fn induced_alternating_with(c: &PlanarCurve, rule: OverStrandRule) -> PlanarResult<GaussDiagram> {
    let n = c.crossing_count();
    if n == 0 {
        return Err(PlanarError::NoCrossings);
    }
    let board = checkerboard(c)?;
    let faces = c.faces();
    let m = c.edge_count();
    let mut first_over = vec![false; n];
    for k in 1..=n as CrossingId {
        let (p1, p2) = c.visits(k)?;
        let [a_in, a_out, _, _] = crossing_half_edges(p1, p2, m);
        // the first strand sweeps the sectors just counterclockwise of its two half-edges
        let ahead = board.color(faces.sector_after(a_out));
        if ahead != board.color(faces.sector_after(a_in)) {
            return Err(PlanarError::InternalInconsistency(format!(
                "opposite sectors at crossing {k} differ in color"
            )));
        }
        let swept = match rule {
            OverStrandRule::SweepsBlackCounterclockwise => Color::Black,
            OverStrandRule::SweepsWhiteCounterclockwise => Color::White,
        };
        first_over[k as usize - 1] = ahead == swept;
    }
    Ok(c.shadow().assign_state(&first_over)?)
}

fn check_state_of(c: &PlanarCurve, d: &GaussDiagram) -> PlanarResult<()> {
    let same = d.passages().len() == c.sequence().len()
        && d.passages().iter().zip(c.sequence()).all(|(p, &k)| p.crossing == k);
    if same {
        Ok(())
    } else {
        Err(PlanarError::ShadowMismatch(d.to_string()))
    }
}

/// Right-hand sign of crossing `k` of the state `d` of `c`: +1 when the
/// under strand passes from the right of the over strand to its left.
pub fn crossing_sign(
    c: &PlanarCurve,
    orientation: Orientation,
    d: &GaussDiagram,
    k: CrossingId,
) -> PlanarResult<i32> {
    check_state_of(c, d)?;
    let (c, d) = match orientation {
        Orientation::Reference => (c.clone(), d.clone()),
        Orientation::Reversed => (c.reversed(), d.reverse()),
    };
    let (p1, _) = c.visits(k)?;
    let first_over = d.over_position(k)? == p1;
    // L: the second strand goes left-to-right across the first
    let sign = match (c.chirality(k)?, first_over) {
        (Chirality::L, true) | (Chirality::R, false) => -1,
        (Chirality::L, false) | (Chirality::R, true) => 1,
    };
    Ok(sign)
}

/// Winding number of the curve around each face, indexed by face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingLabels {
    labels: Vec<i64>,
}

impl WindingLabels {
    pub fn label(&self, face: usize) -> i64 {
        self.labels[face]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }
}

/// Outer face 0; crossing an edge from its right to its left adds 1.
pub fn winding_labels(c: &PlanarCurve) -> PlanarResult<WindingLabels> {
    let faces = c.faces();
    let mut labels: Vec<Option<i64>> = vec![None; faces.face_count()];
    labels[faces.outer_face()] = Some(0);
    let mut queue = VecDeque::from([faces.outer_face()]);
    while let Some(f) = queue.pop_front() {
        let here = labels[f].expect("queued faces are labelled");
        for dart in &faces.faces()[f] {
            let across = faces.face_of(Dart::new(dart.edge, dart.side.flip()));
            let there = match dart.side {
                Side::Left => here - 1,
                Side::Right => here + 1,
            };
            match labels[across] {
                None => {
                    labels[across] = Some(there);
                    queue.push_back(across);
                }
                Some(l) if l != there => {
                    return Err(PlanarError::InternalInconsistency(format!(
                        "winding label of face {across} is path dependent"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let labels = labels
        .into_iter()
        .map(|l| l.ok_or_else(|| PlanarError::InternalInconsistency("unlabelled face".into())))
        .collect::<PlanarResult<Vec<_>>>()?;
    Ok(WindingLabels { labels })
}

/// A circle of the orientation-respecting smoothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertCircle {
    /// Edges of the curve traversed by the circle, in order.
    pub edges: Vec<usize>,
    /// +1 for counterclockwise, -1 for clockwise.
    pub sign: i32,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Seifert circles of `c` with the reference orientation.
///
/// Smoothing merges, at every crossing, the two opposite sectors not hugged
/// by the smoothed arcs. The resulting regions and circles form a tree on
/// the sphere; a circle is counterclockwise when its left region lies
/// farther from the unbounded region than its right region.
pub fn seifert_circles(c: &PlanarCurve) -> PlanarResult<Vec<SeifertCircle>> {
    let faces = c.faces();
    let labels = winding_labels(c)?;
    let m = c.edge_count();
    let n = c.crossing_count();

    let mut regions = UnionFind::new(faces.face_count());
    for k in 1..=n as CrossingId {
        let (p1, p2) = c.visits(k)?;
        let [a_in, a_out, b_in, b_out] = crossing_half_edges(p1, p2, m);
        let (x, y) = match c.chirality(k)? {
            Chirality::L => (faces.sector_after(b_in), faces.sector_after(b_out)),
            Chirality::R => (faces.sector_after(a_out), faces.sector_after(a_in)),
        };
        if labels.label(x) != labels.label(y) {
            return Err(PlanarError::InternalInconsistency(format!(
                "smoothing at crossing {k} merges faces with different winding numbers"
            )));
        }
        regions.union(x, y);
    }

    // circles: leaving passage q continue along the other visit of the same crossing
    let mut circles: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; m];
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut edges = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            edges.push(e);
            if n == 0 {
                break;
            }
            let q = (e + 1) % m;
            let (p1, p2) = c.visits(c.sequence()[q])?;
            e = if q == p1 { p2 } else { p1 };
        }
        circles.push(edges);
    }

    let mut sides = Vec::with_capacity(circles.len());
    for edges in &circles {
        let left = regions.find(c.face_left(edges[0]));
        let right = regions.find(c.face_right(edges[0]));
        for &e in edges {
            if regions.find(c.face_left(e)) != left || regions.find(c.face_right(e)) != right {
                return Err(PlanarError::InternalInconsistency(format!(
                    "circle through edge {} does not bound a single region on each side",
                    edges[0]
                )));
            }
        }
        sides.push((left, right));
    }

    // depth of every region in the region/circle tree
    let root = regions.find(faces.outer_face());
    let mut depth = vec![usize::MAX; faces.face_count()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut region_count = 1;
    while let Some(r) = queue.pop_front() {
        for &(l, rr) in &sides {
            let next = if l == r { rr } else if rr == r { l } else { continue };
            if depth[next] == usize::MAX {
                depth[next] = depth[r] + 1;
                region_count += 1;
                queue.push_back(next);
            }
        }
    }
    if region_count != circles.len() + 1 {
        return Err(PlanarError::InternalInconsistency(format!(
            "{} circles bound {region_count} regions",
            circles.len()
        )));
    }

    circles
        .into_iter()
        .zip(sides)
        .map(|(edges, (l, r))| {
            let sign = match depth[l].cmp(&depth[r]) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => {
                    return Err(PlanarError::InternalInconsistency(
                        "circle with equal-depth sides".into(),
                    ))
                }
            };
            Ok(SeifertCircle { edges, sign })
        })
        .collect()
}

/// Winding labels and rotation number `l+ - l-` for the given orientation.
pub fn winding_and_rotation(
    c: &PlanarCurve,
    orientation: Orientation,
) -> PlanarResult<(WindingLabels, i64)> {
    let oriented = match orientation {
        Orientation::Reference => c.clone(),
        Orientation::Reversed => c.reversed(),
    };
    let labels = winding_labels(&oriented)?;
    let rot = seifert_circles(&oriented)?.iter().map(|s| s.sign as i64).sum();
    Ok((labels, rot))
}

pub fn rotation_number(c: &PlanarCurve) -> PlanarResult<i64> {
    Ok(winding_and_rotation(c, Orientation::Reference)?.1)
}

/// Inserts a one-crossing curl on `edge`, its lobe in the black face beside
/// the edge, signed so the new crossing is positive. The new crossing gets
/// id `n + 1` and occupies passages `edge + 1` and `edge + 2`.
pub fn insert_positive_kink(
    c: &PlanarCurve,
    d: &GaussDiagram,
    edge: usize,
) -> PlanarResult<(PlanarCurve, GaussDiagram)> {
    let n = c.crossing_count();
    if n == 0 {
        return Err(PlanarError::NoCrossings);
    }
    c.check_edge(edge)?;
    check_state_of(c, d)?;
    let board = checkerboard(c)?;
    let lobe_side = if board.color(c.face_left(edge)) == Color::Black {
        Side::Left
    } else if board.color(c.face_right(edge)) == Color::Black {
        Side::Right
    } else {
        return Err(PlanarError::NoBlackSide(edge));
    };
    let k = n as CrossingId + 1;
    // a lobe on the left turns counterclockwise: the second visit crosses left to right
    let (chirality, first, second) = match lobe_side {
        Side::Left => (Chirality::L, Passage::under(k), Passage::over(k)),
        Side::Right => (Chirality::R, Passage::over(k), Passage::under(k)),
    };

    let mut seq = c.sequence().to_vec();
    seq.splice(edge + 1..edge + 1, [k, k]);
    let mut chiralities = c.chiralities().to_vec();
    chiralities.push(chirality);
    let outer = c.outer();
    let outer = if outer.edge > edge { Dart::new(outer.edge + 2, outer.side) } else { outer };
    let kinked = PlanarCurve::new(seq, chiralities, outer)?;

    let mut passages = d.passages().to_vec();
    passages.splice(edge + 1..edge + 1, [first, second]);
    let kinked_d = GaussDiagram::new(passages)?;

    if crossing_sign(&kinked, Orientation::Reference, &kinked_d, k)? != 1 {
        return Err(PlanarError::InternalInconsistency("inserted kink is not positive".into()));
    }
    let new_board = checkerboard(&kinked)?;
    let lobe = kinked.faces().face_of(Dart::new(edge + 1, lobe_side));
    let beside = kinked.faces().face_of(Dart::new(edge, lobe_side));
    if new_board.color(lobe) != Color::White || new_board.color(beside) != Color::Black {
        return Err(PlanarError::InternalInconsistency("kink lobe is not inside the black face".into()));
    }
    Ok((kinked, kinked_d))
}

/// The orientation of `d` (reference or reversed) with the strictly smaller warping degree.
pub fn warping_orientation(d: &GaussDiagram) -> PlanarResult<Orientation> {
    let forward = warping::diagram_warping_degree(d);
    let backward = warping::diagram_warping_degree(&d.reverse());
    match forward.cmp(&backward) {
        std::cmp::Ordering::Less => Ok(Orientation::Reference),
        std::cmp::Ordering::Greater => Ok(Orientation::Reversed),
        std::cmp::Ordering::Equal => Err(PlanarError::TieBreak(forward)),
    }
}

pub fn orient_even_warping(c: &PlanarCurve) -> PlanarResult<OrientationChoice> {
    let n = c.crossing_count();
    if n % 2 == 1 {
        return Err(PlanarError::OddCrossingNumber(n));
    }
    if n == 0 {
        return Err(PlanarError::NoCrossings);
    }
    let d = induced_alternating(c)?;
    Ok(OrientationChoice { orientation: warping_orientation(&d)?, method: OrientationMethod::Warping })
}

pub fn orient_even_rotation(c: &PlanarCurve) -> PlanarResult<OrientationChoice> {
    let n = c.crossing_count();
    if n % 2 == 1 {
        return Err(PlanarError::OddCrossingNumber(n));
    }
    let orientation = match rotation_number(c)? {
        0 => return Err(PlanarError::ZeroRotation),
        r if r > 0 => Orientation::Reference,
        _ => Orientation::Reversed,
    };
    Ok(OrientationChoice { orientation, method: OrientationMethod::Rotation })
}

pub fn orient_odd_warping(cb: &BasedPlanarCurve) -> PlanarResult<OrientationChoice> {
    let c = cb.curve();
    let n = c.crossing_count();
    if n.is_multiple_of(2) {
        return Err(PlanarError::EvenCrossingNumber(n));
    }
    let d = induced_alternating(c)?;
    let (_, kinked) = insert_positive_kink(c, &d, cb.base_edge())?;
    if !warping::classify(&kinked).map(|k| k.alternating).unwrap_or(false) {
        return Err(PlanarError::InternalInconsistency(
            "kinked induced diagram is not alternating".into(),
        ));
    }
    Ok(OrientationChoice {
        orientation: warping_orientation(&kinked)?,
        method: OrientationMethod::WarpingKink,
    })
}

pub fn orient_odd_black_right(cb: &BasedPlanarCurve) -> PlanarResult<OrientationChoice> {
    let c = cb.curve();
    let n = c.crossing_count();
    if n.is_multiple_of(2) {
        return Err(PlanarError::EvenCrossingNumber(n));
    }
    let board = checkerboard(c)?;
    let right = board.color(c.face_right(cb.base_edge()));
    let left = board.color(c.face_left(cb.base_edge()));
    let orientation = match (left, right) {
        (Color::White, Color::Black) => Orientation::Reference,
        (Color::Black, Color::White) => Orientation::Reversed,
        _ => return Err(PlanarError::NotBipartite),
    };
    Ok(OrientationChoice { orientation, method: OrientationMethod::BlackRight })
}
