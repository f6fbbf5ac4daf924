//! Warping degrees and the two warping polynomials.
//!
//! The warping degree of an edge counts the crossings met first as an
//! under-crossing when walking once around the diagram from that edge. It
//! changes by exactly one between consecutive edges: moving the base point
//! past an over-passage makes that crossing warping (+1), moving it past an
//! under-passage makes it non-warping (-1). [`edge_degrees`] uses this rule
//! after a single full walk; [`warping_degree_at`] is the direct walk.

use std::collections::HashSet;

use thiserror::Error;

use crate::corpus;
use crate::diagram::{ArcDiagram, CrossingId, DiagramError, GaussDiagram, Passage, Strand};
use crate::poly::{IntPolynomial, TermCounter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WarpingError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram has no crossings")]
    EmptyDiagram,
    #[error("no diagram with {n} crossings has X = {poly}")]
    NotFound { poly: IntPolynomial, n: usize },
    #[error("search needs {n} crossings, above the bound {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error("{0} is not of the form m_0 t^d + ... + m_s t^(d+s) with every m_i >= 1")]
    NotRealizable(IntPolynomial),
}

/// Warping degree `d(e)` of every edge, indexed by edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeDegreeProfile {
    degrees: Vec<usize>,
}

impl EdgeDegreeProfile {
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn min(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Sum of `t^d(e)`.
    pub fn polynomial(&self) -> IntPolynomial {
        let mut acc = TermCounter::with_capacity(self.max() + 1);
        for &d in &self.degrees {
            acc.add(d, 1);
        }
        acc.into_poly()
    }
}

/// Counts crossings whose first passage after position `start` (walking
/// forward through all passages, cyclically) is an under-passage.
fn walk_count(passages: &[Passage], start: usize) -> usize {
    let len = passages.len();
    let max_id = passages.iter().map(|p| p.crossing as usize).max().unwrap_or(0);
    let mut seen = vec![false; max_id + 1];
    let mut count = 0;
    for k in 1..=len {
        let p = passages[(start + k) % len];
        let slot = &mut seen[p.crossing as usize];
        if !*slot {
            *slot = true;
            if p.strand == Strand::Under {
                count += 1;
            }
        }
    }
    count
}

/// Edge degrees of a raw cyclic passage sequence. Does not require the
/// sequence to be a valid diagram.
pub(crate) fn degrees_of(passages: &[Passage]) -> Vec<usize> {
    if passages.is_empty() {
        return vec![0];
    }
    let mut degrees = Vec::with_capacity(passages.len());
    let mut d = walk_count(passages, 0) as isize;
    degrees.push(d as usize);
    for p in &passages[1..] {
        d += if p.strand == Strand::Over { 1 } else { -1 };
        degrees.push(d.max(0) as usize);
    }
    degrees
}

/// Warping polynomial of a raw cyclic passage sequence.
pub(crate) fn raw_warping_polynomial(passages: &[Passage]) -> IntPolynomial {
    EdgeDegreeProfile { degrees: degrees_of(passages) }.polynomial()
}

/// `d(e)` for the edge following passage `edge`, by walking the diagram once.
pub fn warping_degree_at(d: &GaussDiagram, edge: usize) -> Result<usize, WarpingError> {
    if edge >= d.edge_count() {
        return Err(DiagramError::IndexOutOfRange { edge, edges: d.edge_count() }.into());
    }
    if d.crossing_count() == 0 {
        return Ok(0);
    }
    Ok(walk_count(d.passages(), edge))
}

pub fn edge_degrees(d: &GaussDiagram) -> EdgeDegreeProfile {
    EdgeDegreeProfile { degrees: degrees_of(d.passages()) }
}

/// `W_D(t)`: sum of `t^d(e)` over all edges.
pub fn warping_polynomial(d: &GaussDiagram) -> IntPolynomial {
    edge_degrees(d).polynomial()
}

/// Edge whose terminal passage is the over-passage of `c`.
fn edge_before_over(d: &GaussDiagram, c: CrossingId) -> Result<usize, DiagramError> {
    let pos = d.over_position(c)?;
    let len = d.passages().len();
    Ok((pos + len - 1) % len)
}

/// Exponent `d(c)` of each crossing weight, indexed by `c - 1`.
pub fn crossing_weight_exponents(d: &GaussDiagram) -> Vec<usize> {
    let profile = edge_degrees(d);
    d.crossings()
        .map(|c| profile.degrees[edge_before_over(d, c).expect("crossing exists")])
        .collect()
}

/// `X_c(t) = t^d(c)` with the base point just before the over-passage of `c`.
pub fn crossing_weight(d: &GaussDiagram, c: CrossingId) -> Result<IntPolynomial, WarpingError> {
    let e = edge_before_over(d, c)?;
    Ok(IntPolynomial::monomial(1, warping_degree_at(d, e)?))
}

/// `X_D(t)`: sum of the crossing weights.
pub fn warping_crossing_polynomial(d: &GaussDiagram) -> IntPolynomial {
    let mut acc = TermCounter::with_capacity(d.crossing_count());
    for exp in crossing_weight_exponents(d) {
        acc.add(exp, 1);
    }
    acc.into_poly()
}

/// `d(D)`: the minimum warping degree over all base points.
pub fn diagram_warping_degree(d: &GaussDiagram) -> usize {
    edge_degrees(d).min()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub alternating: bool,
    pub bridge_count: usize,
    pub one_bridge: bool,
}

/// Alternation and bridge count. A bridge is a maximal cyclic run of over-passages.
pub fn classify(d: &GaussDiagram) -> Result<Classification, WarpingError> {
    let ps = d.passages();
    if ps.is_empty() {
        return Err(WarpingError::EmptyDiagram);
    }
    let len = ps.len();
    let alternating = (0..len).all(|i| ps[i].strand != ps[(i + 1) % len].strand);
    // a run starts at an Over passage preceded by an Under passage
    let bridge_count = (0..len)
        .filter(|&i| ps[i].strand == Strand::Over && ps[(i + len - 1) % len].strand == Strand::Under)
        .count();
    Ok(Classification { alternating, bridge_count, one_bridge: bridge_count == 1 })
}

/// The polynomials `A` and `B` of the crossing-change identity at `p`.
///
/// `A` sums `t^d(e)` over the edges from the one leaving the under-passage
/// of `p` through the one entering its over-passage; `B` sums `t^(d(e)-1)`
/// over the remaining edges. Then `(1+t) X_D = A + tB`.
pub fn crossing_change_partition(
    d: &GaussDiagram,
    p: CrossingId,
) -> Result<(IntPolynomial, IntPolynomial), WarpingError> {
    let over = d.over_position(p)?;
    let under = d.under_position(p)?;
    let len = d.passages().len();
    let profile = edge_degrees(d);
    let mut a = TermCounter::with_capacity(d.crossing_count() + 1);
    let mut b = TermCounter::with_capacity(d.crossing_count() + 1);
    let mut e = under;
    while e != (over + len - 1) % len {
        a.add(profile.degrees[e], 1);
        e = (e + 1) % len;
    }
    a.add(profile.degrees[e], 1);
    e = over;
    loop {
        // p itself is warping on these edges, so d(e) >= 1
        b.add(profile.degrees[e] - 1, 1);
        if e == (under + len - 1) % len {
            break;
        }
        e = (e + 1) % len;
    }
    Ok((a.into_poly(), b.into_poly()))
}

/// Whether `f = m_0 t^d + ... + m_s t^(d+s)` with every `m_i >= 1`, `sum m_i = n >= 1`
/// and `d + s <= n - 1`.
///
/// The degree bound holds for every diagram since a crossing is never
/// warping from the base point just before its own over-passage.
pub fn realizability_check(f: &IntPolynomial) -> bool {
    let (Some(lo), Some(hi)) = (f.lowest_degree(), f.degree()) else {
        return false;
    };
    let block = &f.coeffs()[lo..=hi];
    if block.iter().any(|&c| c < 1) {
        return false;
    }
    let n: i64 = block.iter().sum();
    (hi as i64) < n
}

/// Same shape as [`realizability_check`] but without the degree bound.
pub fn has_contiguous_positive_support(f: &IntPolynomial) -> bool {
    match (f.lowest_degree(), f.degree()) {
        (Some(lo), Some(hi)) => f.coeffs()[lo..=hi].iter().all(|&c| c >= 1),
        _ => false,
    }
}

/// Exhaustively searches diagrams with `f(1)` crossings for one with `X_D = f`.
pub fn realize_search(f: &IntPolynomial, max_n: usize) -> Result<GaussDiagram, WarpingError> {
    if !has_contiguous_positive_support(f) {
        return Err(WarpingError::NotRealizable(f.clone()));
    }
    let n = f.coefficient_sum() as usize;
    if n > max_n {
        return Err(WarpingError::TooLarge { n, max_n });
    }
    if f.degree().unwrap_or(0) >= n {
        return Err(WarpingError::NotFound { poly: f.clone(), n });
    }
    corpus::shadows_up_to_rotation(n)
        .iter()
        .flat_map(|s| (0..1u64 << n).map(move |mask| s.assign_state_mask(mask)))
        .find(|d| &warping_crossing_polynomial(d) == f)
        .ok_or_else(|| WarpingError::NotFound { poly: f.clone(), n })
}

/// All distinct `X_D` over diagrams with exactly `n` crossings.
pub fn realizable_polynomials(n: usize) -> HashSet<IntPolynomial> {
    corpus::shadows_up_to_rotation(n)
        .iter()
        .flat_map(|s| (0..1u64 << n).map(move |mask| s.assign_state_mask(mask)))
        .map(|d| warping_crossing_polynomial(&d))
        .collect()
}

/// Warping degrees of the `2n+1` edges of an arc diagram.
///
/// `d(e)` counts crossings that still have a passage ahead of `e` and whose
/// first such passage is an under-passage.
pub fn arc_edge_degrees(s: &ArcDiagram) -> Vec<usize> {
    let ps = s.passages();
    let n = s.crossing_count();
    let mut degrees = vec![0; ps.len() + 1];
    let mut d = 0usize;
    // walk backwards: the first passage after edge j is the latest one seen so far
    let mut first_ahead: Vec<Option<Strand>> = vec![None; n + 1];
    for j in (0..ps.len()).rev() {
        let p = ps[j];
        let c = p.crossing as usize;
        if let Some(Strand::Under) = first_ahead[c] {
            d -= 1;
        }
        first_ahead[c] = Some(p.strand);
        if p.strand == Strand::Under {
            d += 1;
        }
        degrees[j] = d;
    }
    degrees
}

/// `W_S` and `X_S` of a spatial arc diagram.
pub fn arc_polynomials(s: &ArcDiagram) -> (IntPolynomial, IntPolynomial) {
    let degrees = arc_edge_degrees(s);
    let mut w = TermCounter::with_capacity(s.crossing_count() + 1);
    for &d in &degrees {
        w.add(d, 1);
    }
    let mut x = TermCounter::with_capacity(s.crossing_count() + 1);
    for c in 1..=s.crossing_count() as CrossingId {
        let pos = s.over_position(c).expect("crossing exists");
        x.add(degrees[pos], 1);
    }
    (w.into_poly(), x.into_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_arc, parse_gauss_code};

    fn g(s: &str) -> GaussDiagram {
        parse_gauss_code(s).unwrap()
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    /// Edge just before passage 0.
    fn last_edge(d: &GaussDiagram) -> usize {
        d.edge_count() - 1
    }

    #[test]
    fn degree_walks() {
        let one_bridge = g("O1 O2 O3 U1 U2 U3");
        assert_eq!(warping_degree_at(&one_bridge, last_edge(&one_bridge)), Ok(0));
        let alt = g("O1 U2 O3 U1 O2 U3");
        assert_eq!(warping_degree_at(&alt, last_edge(&alt)), Ok(1));
        assert!(matches!(
            warping_degree_at(&alt, 6),
            Err(WarpingError::Diagram(DiagramError::IndexOutOfRange { .. }))
        ));
        assert_eq!(warping_degree_at(&GaussDiagram::unknot(), 0), Ok(0));
    }

    #[test]
    fn profiles() {
        // listed from edge 0 (after O1); the edge before O1 is edge 5
        assert_eq!(edge_degrees(&g("O1 O2 O3 U1 U2 U3")).degrees(), &[1, 2, 3, 2, 1, 0]);
        assert_eq!(edge_degrees(&g("O1 U2 O3 U1 O2 U3")).degrees(), &[2, 1, 2, 1, 2, 1]);
        assert_eq!(edge_degrees(&GaussDiagram::unknot()).degrees(), &[0]);
    }

    #[test]
    fn polynomials_of_the_trefoils() {
        let one_bridge = g("O1 O2 O3 U1 U2 U3");
        assert_eq!(warping_polynomial(&one_bridge), p(&[1, 2, 2, 1]));
        assert_eq!(warping_crossing_polynomial(&one_bridge), p(&[1, 1, 1]));
        let alt = g("O1 U2 O3 U1 O2 U3");
        assert_eq!(warping_polynomial(&alt), p(&[0, 3, 3]));
        assert_eq!(warping_crossing_polynomial(&alt), p(&[0, 3]));
        assert_eq!(warping_polynomial(&GaussDiagram::unknot()), p(&[1]));
        assert!(warping_crossing_polynomial(&GaussDiagram::unknot()).is_zero());
    }

    #[test]
    fn crossing_weights() {
        let one_bridge = g("O1 O2 O3 U1 U2 U3");
        let w: Vec<_> = (1..=3).map(|c| crossing_weight(&one_bridge, c).unwrap()).collect();
        assert_eq!(w, vec![p(&[1]), p(&[0, 1]), p(&[0, 0, 1])]);
        let alt = g("O1 U2 O3 U1 O2 U3");
        for c in 1..=3 {
            assert_eq!(crossing_weight(&alt, c).unwrap(), p(&[0, 1]));
        }
        assert!(crossing_weight(&alt, 4).is_err());
    }

    #[test]
    fn warping_degree_of_diagram() {
        assert_eq!(diagram_warping_degree(&g("O1 O2 O3 U1 U2 U3")), 0);
        let alt = g("O1 U2 O3 U1 O2 U3");
        assert_eq!(diagram_warping_degree(&alt), 1);
        assert_eq!(diagram_warping_degree(&alt.reverse()), 1);
        assert_eq!(diagram_warping_degree(&GaussDiagram::unknot()), 0);
    }

    #[test]
    fn classification() {
        let c = classify(&g("O1 U2 O3 U1 O2 U3")).unwrap();
        assert!(c.alternating);
        assert_eq!(c.bridge_count, 3);
        let c = classify(&g("O1 O2 O3 U1 U2 U3")).unwrap();
        assert!(!c.alternating && c.one_bridge);
        assert_eq!(classify(&g("O1 O2 U1 U2 O3 U3")).unwrap().bridge_count, 2);
        assert_eq!(classify(&GaussDiagram::unknot()), Err(WarpingError::EmptyDiagram));
    }

    #[test]
    fn partition_of_one_bridge_trefoil() {
        let d = g("O1 O2 O3 U1 U2 U3");
        let (a, b) = crossing_change_partition(&d, 1).unwrap();
        assert_eq!(a, p(&[1, 1, 1]));
        let changed = d.crossing_change(1).unwrap();
        let x = warping_crossing_polynomial(&d);
        let x2 = warping_crossing_polynomial(&changed);
        assert_eq!(x2, p(&[1, 1, 1]));
        let one_minus_t = p(&[1, -1]);
        assert_eq!(&x - &x2.shift(1), &one_minus_t * &a);
        assert_eq!(&x2 - &x.shift(1), &one_minus_t * &b);
        assert_eq!(&x + &x2, &a + &b);
        assert!(crossing_change_partition(&d, 9).is_err());
    }

    #[test]
    fn realizability_shapes() {
        assert!(!realizability_check(&p(&[1, 0, 2])));
        assert!(realizability_check(&p(&[0, 3])));
        assert!(!realizability_check(&IntPolynomial::zero()));
        assert!(!realizability_check(&p(&[0, 1])));
        assert!(!realizability_check(&p(&[1, -1, 1])));
        assert!(realizability_check(&p(&[2, 1])));
    }

    #[test]
    fn realize_small_polynomials() {
        for f in [p(&[1, 1, 1]), p(&[0, 3]), p(&[2, 1])] {
            let d = realize_search(&f, 5).unwrap();
            assert_eq!(warping_crossing_polynomial(&d), f);
        }
        let alt = realize_search(&p(&[0, 3]), 5).unwrap();
        assert!(classify(&alt).unwrap().alternating);
        assert!(matches!(realize_search(&p(&[1, 0, 1]), 5), Err(WarpingError::NotRealizable(_))));
        assert!(matches!(realize_search(&p(&[9]), 5), Err(WarpingError::TooLarge { n: 9, max_n: 5 })));
        assert!(matches!(realize_search(&p(&[0, 1]), 5), Err(WarpingError::NotFound { .. })));
    }

    #[test]
    fn arcs() {
        let (w, x) = arc_polynomials(&parse_arc("O1 U1").unwrap());
        assert_eq!((w, x), (p(&[2, 1]), p(&[1])));
        let (w, x) = arc_polynomials(&parse_arc("U1 O1").unwrap());
        assert_eq!((w, x), (p(&[2, 1]), p(&[1])));
        let (w, x) = arc_polynomials(&parse_arc("").unwrap());
        assert_eq!((w, x), (p(&[1]), IntPolynomial::zero()));
    }
}
