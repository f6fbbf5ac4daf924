//! Deterministic generators for the exhaustive and random test universes:
//! abstract Gauss pairings up to rotation, their states, random diagrams,
//! and plane curves obtained by filtering chirality-signed sequences through
//! the face-count planarity gate.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{
    normalize_ids, traced_face_count, Chirality, CrossingId, Dart, GaussDiagram, PlanarCurve, Shadow, Side,
};

/// Every perfect matching of `2n` positions, as a sequence with ids in order of first appearance.
pub fn all_pairings(n: usize) -> Vec<Vec<CrossingId>> {
    fn extend(seq: &mut Vec<CrossingId>, next_id: CrossingId, n: usize, out: &mut Vec<Vec<CrossingId>>) {
        let Some(free) = seq.iter().position(|&c| c == 0) else {
            out.push(seq.clone());
            return;
        };
        seq[free] = next_id;
        for partner in free + 1..2 * n {
            if seq[partner] == 0 {
                seq[partner] = next_id;
                extend(seq, next_id + 1, n, out);
                seq[partner] = 0;
            }
        }
        seq[free] = 0;
    }
    let mut out = Vec::new();
    extend(&mut vec![0; 2 * n], 1, n, &mut out);
    out
}

fn rotate_normalized(seq: &[CrossingId], r: usize) -> Vec<CrossingId> {
    let len = seq.len();
    let rotated: Vec<CrossingId> = (0..len).map(|i| seq[(i + r) % len]).collect();
    normalize_ids(&rotated)
}

/// Shadows with `n` crossings, one representative per cyclic-rotation class.
pub fn shadows_up_to_rotation(n: usize) -> Vec<Shadow> {
    all_pairings(n)
        .into_iter()
        .filter(|seq| (1..seq.len()).all(|r| *seq <= rotate_normalized(seq, r)))
        .map(|seq| Shadow::new(seq).expect("pairings are valid shadows"))
        .collect()
}

/// Every state of every shadow in [`shadows_up_to_rotation`].
pub fn gauss_diagrams(n: usize) -> Vec<GaussDiagram> {
    shadows_up_to_rotation(n)
        .iter()
        .flat_map(|s| (0..1u64 << n).map(move |mask| s.assign_state_mask(mask)))
        .collect()
}

pub fn random_shadow<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Shadow {
    let mut positions: Vec<usize> = (0..2 * n).collect();
    positions.shuffle(rng);
    let mut seq = vec![0; 2 * n];
    for (k, pair) in positions.chunks(2).enumerate() {
        seq[pair[0]] = k as CrossingId + 1;
        seq[pair[1]] = k as CrossingId + 1;
    }
    Shadow::new(normalize_ids(&seq)).expect("random pairing is a valid shadow")
}

pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GaussDiagram {
    let shadow = random_shadow(rng, n);
    let mask = if n == 0 { 0 } else { rng.gen::<u64>() & ((1u64 << n) - 1) };
    shadow.assign_state_mask(mask)
}

fn chirality_from_mask(n: usize, mask: u64) -> Vec<Chirality> {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { Chirality::R } else { Chirality::L })
        .collect()
}

/// Chirality assignments under which `shadow` is a plane curve.
pub fn planar_chiralities(shadow: &Shadow) -> Vec<Vec<Chirality>> {
    let n = shadow.crossing_count();
    (0..1u64 << n)
        .map(|mask| chirality_from_mask(n, mask))
        .filter(|chir| traced_face_count(shadow.sequence(), chir) == Ok(n + 2))
        .collect()
}

/// Whether some chirality assignment embeds `shadow` in the sphere.
pub fn is_planar_shadow(shadow: &Shadow) -> bool {
    let n = shadow.crossing_count();
    (0..1u64 << n).any(|mask| {
        traced_face_count(shadow.sequence(), &chirality_from_mask(n, mask)) == Ok(n + 2)
    })
}

type CurveKey = (Vec<CrossingId>, Vec<Chirality>, usize);

/// Canonical form up to rotation of the sequence and relabelling of crossings.
/// The last component identifies the outer face by its smallest dart.
fn curve_key(c: &PlanarCurve) -> CurveKey {
    let m = c.sequence().len().max(1);
    (0..m)
        .map(|r| {
            let rc = c.rotated(r).normalized();
            let faces = rc.faces();
            let outer = faces.faces()[faces.outer_face()]
                .iter()
                .map(|d| 2 * d.edge + (d.side == Side::Right) as usize)
                .min()
                .expect("faces are nonempty");
            (rc.sequence().to_vec(), rc.chiralities().to_vec(), outer)
        })
        .min()
        .expect("at least one rotation")
}

/// Curves on the sphere with `n` crossings, up to rotation and relabelling.
/// The outer marker of each is `(0, Left)`.
pub fn sphere_curves(n: usize) -> Vec<PlanarCurve> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for shadow in shadows_up_to_rotation(n) {
        for chir in planar_chiralities(&shadow) {
            let c = PlanarCurve::new(shadow.sequence().to_vec(), chir, Dart::new(0, Side::Left))
                .expect("filtered by face count");
            let (seq, chir, _) = curve_key(&c);
            if seen.insert((seq, chir)) {
                out.push(c);
            }
        }
    }
    out
}

/// Plane curves with `n` crossings: every sphere curve with every choice of
/// unbounded face, deduplicated up to rotation and relabelling.
pub fn plane_curves(n: usize) -> Vec<PlanarCurve> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for sphere in sphere_curves(n) {
        for face in sphere.faces().faces() {
            let c = sphere.with_outer(face[0]).expect("dart of an existing face");
            if seen.insert(curve_key(&c)) {
                out.push(c);
            }
        }
    }
    out
}
