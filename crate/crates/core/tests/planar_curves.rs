use std::collections::HashSet;

use warpknot::diagram::parse_planar_curve;
use warpknot::planar::{self, Color, Orientation, OrientationMethod, PlanarError};
use warpknot::{corpus, warping, BasedPlanarCurve, Dart, PlanarCurve, Side};

fn curve(text: &str) -> PlanarCurve {
    parse_planar_curve(text).unwrap()
}

fn figure_eight() -> PlanarCurve {
    curve("1 2 3 1L 4 3R 2L 4L\nOUTER 0 RIGHT\n")
}

/// Rotation number by Whitney's face-sum formula, from winding numbers
/// assigned by an independent breadth-first walk over edges.
fn whitney_rotation(c: &PlanarCurve) -> i64 {
    let faces = c.faces();
    let m = c.edge_count();
    let mut w: Vec<Option<i64>> = vec![None; faces.face_count()];
    w[faces.outer_face()] = Some(0);
    let mut changed = true;
    while changed {
        changed = false;
        for e in 0..m {
            let (l, r) = (c.face_left(e), c.face_right(e));
            match (w[l], w[r]) {
                (Some(a), None) => {
                    w[r] = Some(a - 1);
                    changed = true;
                }
                (None, Some(b)) => {
                    w[l] = Some(b + 1);
                    changed = true;
                }
                (Some(a), Some(b)) => assert_eq!(a, b + 1, "{c:?}"),
                (None, None) => {}
            }
        }
    }
    let w: Vec<i64> = w.into_iter().map(Option::unwrap).collect();
    let mut corners = 0;
    for k in 1..=c.crossing_count() as u32 {
        let (p1, p2) = c.visits(k).unwrap();
        for p in [p1, p2] {
            corners += w[c.face_left(p)] + w[c.face_right((p + m - 1) % m)];
        }
    }
    assert_eq!(corners % 4, 0);
    w.iter().sum::<i64>() - corners / 4
}

#[test]
fn small_curve_face_counts() {
    let trefoil = curve("1 2 3 1L 2R 3L\nOUTER 0 LEFT\n");
    assert_eq!(planar::compute_faces(&trefoil).face_count(), 5);
    assert_eq!(planar::compute_faces(&curve("1 1R\nOUTER 0 LEFT\n")).face_count(), 3);
    assert_eq!(planar::compute_faces(&PlanarCurve::circle(Side::Left)).face_count(), 2);
}

#[test]
fn every_dart_lies_in_one_face() {
    for n in 0..=4 {
        for c in corpus::plane_curves(n) {
            let mut seen = HashSet::new();
            for face in c.faces().faces() {
                for d in face {
                    assert!(seen.insert(*d), "{c:?}");
                }
            }
            assert_eq!(seen.len(), 2 * c.edge_count());
            assert_eq!(c.faces().face_count(), n + 2);
        }
    }
}

#[test]
fn trefoil_coloring_has_black_petals() {
    let base = curve("1 2 3 1L 2R 3L\nOUTER 0 LEFT\n");
    // find the face bounded by three edges that touches every other face except one
    for face in base.faces().faces() {
        let c = base.with_outer(face[0]).unwrap();
        let board = planar::checkerboard(&c).unwrap();
        if board.black_count() == 3 {
            let outer = c.faces().outer_face();
            assert_eq!(board.color(outer), Color::White);
            let white_inner: Vec<usize> =
                (0..5).filter(|&f| f != outer && board.color(f) == Color::White).collect();
            assert_eq!(white_inner.len(), 1);
            let center = white_inner[0];
            for f in 0..5 {
                if board.color(f) == Color::Black {
                    assert!(c.faces().neighbors(f).contains(&center));
                    assert!(c.faces().neighbors(f).contains(&outer));
                }
            }
        }
    }
}

#[test]
fn checkerboards_are_proper_across_every_edge() {
    for n in 0..=5 {
        for c in corpus::plane_curves(n) {
            let board = planar::checkerboard(&c).unwrap();
            assert_eq!(board.color(c.faces().outer_face()), Color::White);
            for e in 0..c.edge_count() {
                assert_ne!(board.color(c.face_left(e)), board.color(c.face_right(e)), "{c:?}");
            }
        }
    }
}

#[test]
fn induced_diagrams_alternate() {
    for n in 1..=5 {
        for c in corpus::plane_curves(n) {
            let d = planar::induced_alternating(&c).unwrap();
            let ps = d.passages();
            assert!((0..ps.len()).all(|i| ps[i].strand != ps[(i + 1) % ps.len()].strand), "{c:?}");
            let mirrored =
                planar::induced_alternating_with(&c, planar::OverStrandRule::SweepsWhiteCounterclockwise)
                    .unwrap();
            assert_eq!(mirrored, d.mirror());
        }
    }
}

#[test]
fn rotation_matches_face_sum_formula() {
    assert_eq!(planar::rotation_number(&PlanarCurve::circle(Side::Right)).unwrap(), 1);
    for n in 0..=5 {
        for c in corpus::plane_curves(n) {
            let rot = planar::rotation_number(&c).unwrap();
            assert_eq!(rot, whitney_rotation(&c), "{c:?}");
            assert_eq!((rot - n as i64 - 1).rem_euclid(2), 0);
            let (labels, rev) = planar::winding_and_rotation(&c, Orientation::Reversed).unwrap();
            assert_eq!(rev, -rot);
            assert_eq!(labels.label(c.reversed().faces().outer_face()), 0);
            let circles = planar::seifert_circles(&c).unwrap();
            let covered: usize = circles.iter().map(|s| s.edges.len()).sum();
            assert_eq!(covered, c.edge_count());
        }
    }
}

#[test]
fn figure_eight_orientations() {
    let c = figure_eight();
    let d = planar::induced_alternating(&c).unwrap();
    let degrees = (warping::diagram_warping_degree(&d), warping::diagram_warping_degree(&d.reverse()));
    assert_eq!(degrees.0 + degrees.1, 3);
    let expected = if degrees.0 < degrees.1 { Orientation::Reference } else { Orientation::Reversed };
    let w = planar::orient_even_warping(&c).unwrap();
    assert_eq!(w.orientation, expected);
    assert_eq!(w.method, OrientationMethod::Warping);
    let rot = planar::rotation_number(&c).unwrap();
    assert_eq!(rot.rem_euclid(2), 1);
    let r = planar::orient_even_rotation(&c).unwrap();
    assert_eq!(r.sign() as i64, rot.signum());
    assert_eq!(planar::orient_even_rotation(&c.reversed()).unwrap().sign(), -r.sign());
}

#[test]
fn lemniscate_black_right() {
    let c = curve("1 1L\nOUTER 0 RIGHT\n");
    let board = planar::checkerboard(&c).unwrap();
    for e in 0..c.edge_count() {
        let cb = BasedPlanarCurve::new(c.clone(), e).unwrap();
        let choice = planar::orient_odd_black_right(&cb).unwrap();
        let right = match choice.orientation {
            Orientation::Reference => c.face_right(e),
            Orientation::Reversed => c.face_left(e),
        };
        assert_eq!(board.color(right), Color::Black);
    }
}

#[test]
fn kinks_are_positive_and_keep_alternation() {
    for n in [1, 3] {
        for c in corpus::plane_curves(n) {
            let d = planar::induced_alternating(&c).unwrap();
            for e in 0..c.edge_count() {
                let (kc, kd) = planar::insert_positive_kink(&c, &d, e).unwrap();
                assert_eq!(kc.faces().face_count(), n + 3);
                assert!(warping::classify(&kd).unwrap().alternating);
                let k = n as u32 + 1;
                assert_eq!(planar::crossing_sign(&kc, Orientation::Reference, &kd, k).unwrap(), 1);
                assert_eq!(planar::crossing_sign(&kc, Orientation::Reversed, &kd, k).unwrap(), 1);
                assert_eq!(planar::crossing_sign(&kc, Orientation::Reference, &kd.mirror(), k).unwrap(), -1);
            }
        }
    }
    let circle = PlanarCurve::circle(Side::Left);
    let unknot = warpknot::GaussDiagram::unknot();
    assert_eq!(planar::insert_positive_kink(&circle, &unknot, 0), Err(PlanarError::NoCrossings));
}

#[test]
fn orientation_procedures_are_encoding_independent() {
    for n in [2, 4] {
        for c in corpus::plane_curves(n) {
            let w = planar::orient_even_warping(&c).unwrap();
            let r = planar::orient_even_rotation(&c).unwrap();
            for shift in 0..c.edge_count() {
                let moved = c.rotated(shift);
                assert_eq!(planar::orient_even_warping(&moved).unwrap(), w);
                assert_eq!(planar::orient_even_rotation(&moved).unwrap(), r);
            }
            let perm: Vec<u32> = (1..=n as u32).rev().collect();
            let relabeled = c.relabeled(&perm).unwrap();
            assert_eq!(planar::orient_even_warping(&relabeled).unwrap(), w);
        }
    }
    for c in corpus::plane_curves(3) {
        for e in 0..c.edge_count() {
            let cb = BasedPlanarCurve::new(c.clone(), e).unwrap();
            let w = planar::orient_odd_warping(&cb).unwrap();
            let b = planar::orient_odd_black_right(&cb).unwrap();
            for shift in 0..c.edge_count() {
                assert_eq!(planar::orient_odd_warping(&cb.rotated(shift)).unwrap(), w);
                assert_eq!(planar::orient_odd_black_right(&cb.rotated(shift)).unwrap(), b);
            }
            assert_eq!(planar::orient_odd_warping(&cb.reversed()).unwrap().sign(), -w.sign());
        }
    }
}

#[test]
fn sphere_coloring_prefers_black() {
    let trefoil = curve("1 2 3 1L 2R 3L\nOUTER 0 LEFT\n");
    let sphere = planar::sphere_black_majority_coloring(&trefoil).unwrap();
    assert_eq!((sphere.black_count(), sphere.white_count()), (3, 2));
    let lemniscate = curve("1 1L\nOUTER 0 RIGHT\n");
    assert_eq!(planar::sphere_black_majority_coloring(&lemniscate).unwrap().black_count(), 2);
    assert_eq!(
        planar::sphere_black_majority_coloring(&figure_eight()),
        Err(PlanarError::EvenCrossingNumber(4))
    );
}

#[test]
fn outer_face_choice_changes_rotation_not_sphere_data() {
    let c = figure_eight();
    let rotations: HashSet<i64> = c
        .faces()
        .faces()
        .iter()
        .map(|f| planar::rotation_number(&c.with_outer(f[0]).unwrap()).unwrap())
        .collect();
    assert!(rotations.len() > 1);
    let moved = c.with_outer(Dart::new(1, Side::Left)).unwrap();
    assert_eq!(moved.faces().face_count(), c.faces().face_count());
}
