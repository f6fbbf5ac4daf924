//! Batch verification of every identity and invariant the toolkit relies on.
//!
//! Each check sweeps a deterministic corpus (exhaustive for small crossing
//! numbers, seeded random samples beyond) and stops at the first failure,
//! which it reports as a serialized counterexample.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus;
use crate::diagram::{
    parse_gauss_code, BasedPlanarCurve, CrossingId, GaussDiagram, Passage, PlanarCurve, Shadow,
};
use crate::planar::{self, Color, Orientation};
use crate::poly::IntPolynomial;
use crate::statesum;
use crate::warping;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Exhaustive bound for the division and polynomial-shape sweeps.
    pub max_exhaustive_n: usize,
    /// Random diagrams for the division sweep.
    pub random_samples: usize,
    pub random_max_n: usize,
    pub seed: u64,
    pub statesum_limit: usize,
    /// Exhaustive bound for crossing changes, warping-degree bounds, state
    /// sums, edge distributions and the plane-curve corpus.
    pub deep_exhaustive_n: usize,
    pub statesum_random_per_n: usize,
    pub statesum_random_max_n: usize,
    /// Corrupts one diagram inside the division sweep.
    pub inject_mutant: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_exhaustive_n: 5,
            random_samples: 10_000,
            random_max_n: 12,
            seed: 0,
            statesum_limit: statesum::DEFAULT_CROSSING_LIMIT,
            deep_exhaustive_n: 6,
            statesum_random_per_n: 100,
            statesum_random_max_n: 16,
            inject_mutant: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub criterion: Option<u8>,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
    /// Notable observations that do not affect the verdict.
    pub findings: Vec<String>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases, {:.2?})", self.name, self.cases, self.elapsed)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        for finding in &self.findings {
            write!(f, "\n  finding: {finding}")?;
        }
        Ok(())
    }
}

/// What a check produced before timing is attached.
#[derive(Debug, Default)]
struct Outcome {
    cases: u64,
    counterexample: Option<String>,
    findings: Vec<String>,
}

impl Outcome {
    fn new(cases: usize, counterexample: Option<String>) -> Self {
        Self { cases: cases as u64, counterexample, findings: Vec::new() }
    }
}

fn timed(name: &'static str, criterion: Option<u8>, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let out = f();
    CheckResult {
        name,
        criterion,
        passed: out.counterexample.is_none(),
        cases: out.cases,
        counterexample: out.counterexample,
        findings: out.findings,
        elapsed: start.elapsed(),
    }
}

fn first_failure<T, F>(items: &[T], f: F) -> Option<String>
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    items.par_iter().find_map_first(f)
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    cond.then(msg)
}

/// All abstract Gauss diagrams with `1 <= n <= max_n` crossings, up to rotation.
pub fn diagram_corpus(max_n: usize) -> Vec<GaussDiagram> {
    (1..=max_n).flat_map(corpus::gauss_diagrams).collect()
}

/// Every check, in order.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let shallow = diagram_corpus(config.max_exhaustive_n);
    let deep = diagram_corpus(config.deep_exhaustive_n);
    let curves: Vec<PlanarCurve> =
        (0..=config.deep_exhaustive_n).flat_map(corpus::plane_curves).collect();
    let checks = vec![
        check_trefoil_example(),
        check_state_sums(config),
        check_division(config, &shallow),
        check_edge_profile_oracle(&shallow),
        check_proof_structure(&shallow),
        check_crossing_change(&deep),
        check_span_bound(&deep),
        check_polynomial_shapes(&shallow),
        check_realizability(config),
        check_warping_degree_bound(&deep),
        check_planar_pipeline(&curves),
        check_independence(&curves),
        check_edge_distribution(config),
    ];
    VerifyReport { seed: config.seed, checks }
}

pub fn check_trefoil_example() -> CheckResult {
    timed("one-bridge-trefoil", Some(1), || {
        let d = parse_gauss_code("O1 O2 O3 U1 U2 U3").expect("valid code");
        let x = warping::warping_crossing_polynomial(&d);
        let w = warping::warping_polynomial(&d);
        let one_bridge = warping::classify(&d).map(|c| c.one_bridge).unwrap_or(false);
        let ok = x == IntPolynomial::new(vec![1, 1, 1])
            && w == IntPolynomial::new(vec![1, 2, 2, 1])
            && one_bridge;
        Outcome::new(1, fail_if(!ok, || format!("{d}: X = {x}, W = {w}")))
    })
}

fn state_sum_failure(p: &Shadow, limit: usize) -> Option<String> {
    let n = p.crossing_count();
    match statesum::state_sum_with_limit(p, limit) {
        Err(e) => Some(format!("{p}: {e}")),
        Ok(r) => {
            let palindromic = r.z.reciprocal_transform(n).as_ref() == Ok(&r.z);
            fail_if(
                !r.closed_form_ok
                    || r.w_total != r.z.mul_by_one_plus_t()
                    || !palindromic
                    || r.states_enumerated != 1u64 << n,
                || format!("{p}: Z = {}, W_total = {}", r.z, r.w_total),
            )
        }
    }
}

pub fn check_state_sums(config: &VerifyConfig) -> CheckResult {
    timed("state-sum-closed-form", Some(2), || {
        let limit = config.statesum_limit;
        let four = Shadow::new(vec![1, 2, 3, 1, 4, 3, 2, 4]).expect("valid shadow");
        if let Ok(r) = statesum::state_sum_with_limit(&four, limit) {
            if r.z != IntPolynomial::one_plus_t_pow(8, 3) {
                return Outcome::new(1, Some(format!("{four}: Z = {}", r.z)));
            }
        }
        let exhaustive: Vec<Shadow> =
            (1..=config.deep_exhaustive_n).flat_map(corpus::shadows_up_to_rotation).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let random: Vec<Shadow> = (config.deep_exhaustive_n + 1..=config.statesum_random_max_n)
            .flat_map(|n| {
                (0..config.statesum_random_per_n)
                    .map(|_| corpus::random_shadow(&mut rng, n))
                    .collect::<Vec<_>>()
            })
            .collect();
        let failure = first_failure(&exhaustive, |p| state_sum_failure(p, limit))
            .or_else(|| random.iter().find_map(|p| state_sum_failure(p, limit)));
        Outcome::new(exhaustive.len() + random.len() + 1, failure)
    })
}

fn division_failure(d: &GaussDiagram) -> Option<String> {
    let w = warping::warping_polynomial(d);
    let x = warping::warping_crossing_polynomial(d);
    let divided = w.div_exact_one_plus_t();
    fail_if(w != x.mul_by_one_plus_t() || divided.as_ref() != Ok(&x), || {
        format!("{d}: W = {w}, X = {x}")
    })
}

/// The diagram with its second passage switched, which is no longer a valid code.
fn mutate(d: &GaussDiagram) -> Vec<Passage> {
    let mut ps = d.passages().to_vec();
    ps[1].strand = ps[1].strand.flip();
    ps
}

pub fn check_division(config: &VerifyConfig, exhaustive: &[GaussDiagram]) -> CheckResult {
    timed("warping-division", Some(3), || {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
        let random: Vec<GaussDiagram> = (0..config.random_samples)
            .map(|_| {
                let n = rng.gen_range(1..=config.random_max_n.max(1));
                corpus::random_diagram(&mut rng, n)
            })
            .collect();
        let mutant = if config.inject_mutant {
            exhaustive.get(exhaustive.len() / 2).and_then(|d| {
                let ps = mutate(d);
                let w = warping::raw_warping_polynomial(&ps);
                let x = warping::warping_crossing_polynomial(d);
                let text: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                fail_if(w != x.mul_by_one_plus_t(), || {
                    format!("{} (mutated from {d}): W = {w}, X = {x}", text.join(" "))
                })
            })
        } else {
            None
        };
        let failure = mutant
            .or_else(|| first_failure(exhaustive, division_failure))
            .or_else(|| first_failure(&random, division_failure));
        Outcome::new(exhaustive.len() + random.len(), failure)
    })
}

pub fn check_edge_profile_oracle(diagrams: &[GaussDiagram]) -> CheckResult {
    timed("edge-profile-oracle", None, || {
        let failure = first_failure(diagrams, |d| {
            let profile = warping::edge_degrees(d);
            (0..d.edge_count()).find_map(|e| {
                let walked = warping::warping_degree_at(d, e).ok()?;
                fail_if(walked != profile.degrees()[e], || {
                    format!("{d}: edge {e} steps to {} but walks to {walked}", profile.degrees()[e])
                })
            })
        });
        Outcome::new(diagrams.len(), failure)
    })
}

pub fn check_proof_structure(diagrams: &[GaussDiagram]) -> CheckResult {
    timed("proof-structure", None, || {
        let failure = first_failure(diagrams, |d| {
            let degrees = warping::edge_degrees(d);
            let len = d.passages().len();
            let mut weights = warping::crossing_weight_exponents(d);
            let mut ending_over = Vec::new();
            let mut ending_under = Vec::new();
            for (e, &deg) in degrees.degrees().iter().enumerate() {
                // edge e ends at passage e + 1
                if d.passages()[(e + 1) % len].strand.is_over() {
                    ending_over.push(deg);
                } else {
                    ending_under.push(deg);
                }
            }
            weights.sort_unstable();
            ending_over.sort_unstable();
            ending_under.sort_unstable();
            let shifted: Vec<usize> = weights.iter().map(|w| w + 1).collect();
            fail_if(ending_over != weights || ending_under != shifted, || {
                format!("{d}: weights {weights:?}, over-ending {ending_over:?}, under-ending {ending_under:?}")
            })
        });
        Outcome::new(diagrams.len(), failure)
    })
}

pub fn check_crossing_change(diagrams: &[GaussDiagram]) -> CheckResult {
    timed("crossing-change-identities", Some(4), || {
        let one_minus_t = IntPolynomial::new(vec![1, -1]);
        let t = IntPolynomial::monomial(1, 1);
        let failure = first_failure(diagrams, |d| {
            let x = warping::warping_crossing_polynomial(d);
            d.crossings().find_map(|c| {
                let changed = d.crossing_change(c).ok()?;
                let x2 = warping::warping_crossing_polynomial(&changed);
                let (a, b) = match warping::crossing_change_partition(d, c) {
                    Ok(ab) => ab,
                    Err(e) => return Some(format!("{d}, crossing {c}: {e}")),
                };
                let ok = &x - &(&t * &x2) == &one_minus_t * &a
                    && &x2 - &(&t * &x) == &one_minus_t * &b
                    && &x + &x2 == &a + &b;
                fail_if(!ok, || format!("{d}, crossing {c}: X = {x}, X' = {x2}, A = {a}, B = {b}"))
            })
        });
        Outcome::new(diagrams.len(), failure)
    })
}

pub fn check_span_bound(diagrams: &[GaussDiagram]) -> CheckResult {
    timed("span-bound", Some(5), || {
        let spans = |d: &GaussDiagram| warping::warping_crossing_polynomial(d).span().unwrap_or(0);
        let results: Vec<(Option<String>, Option<String>)> = diagrams
            .par_iter()
            .map(|d| {
                let s = spans(d);
                let mut witness = None;
                for c in d.crossings() {
                    let changed = d.crossing_change(c).expect("crossing exists");
                    let s2 = spans(&changed);
                    let gap = s.abs_diff(s2);
                    if gap > 2 {
                        return (Some(format!("{d}, crossing {c}: spans {s} and {s2}")), None);
                    }
                    if gap == 2 && witness.is_none() {
                        witness = Some(format!("{d}, crossing {c}: spans {s} and {s2}"));
                    }
                }
                (None, witness)
            })
            .collect();
        let violation = results.iter().find_map(|r| r.0.clone());
        let witness = results.iter().find_map(|r| r.1.clone());
        let failure = violation.or_else(|| {
            fail_if(witness.is_none(), || "no crossing change attains a span difference of 2".into())
        });
        let mut out = Outcome::new(diagrams.len(), failure);
        if let Some(w) = witness {
            out.findings.push(format!("bound attained: {w}"));
        }
        out
    })
}

fn shape_failure(d: &GaussDiagram) -> Option<String> {
    let n = d.crossing_count();
    let x = warping::warping_crossing_polynomial(d);
    let reciprocal = x.reciprocal_transform(n).ok();
    let x_rev = warping::warping_crossing_polynomial(&d.reverse());
    let x_mir = warping::warping_crossing_polynomial(&d.mirror());
    if reciprocal.as_ref() != Some(&x_rev) || x_rev != x_mir {
        return Some(format!("{d}: X = {x}, X(-D) = {x_rev}, X(D*) = {x_mir}"));
    }
    let class = warping::classify(d).ok()?;
    let monomial = x.lowest_degree() == x.degree() && x.coefficient_sum() == n as i64;
    let full_run = x == IntPolynomial::new(vec![1; n]);
    let mut weights = warping::crossing_weight_exponents(d);
    weights.sort_unstable();
    let all_equal = weights.windows(2).all(|w| w[0] == w[1]);
    let all_distinct = weights.windows(2).all(|w| w[0] != w[1]);
    let ok = class.alternating == monomial
        && class.one_bridge == full_run
        && (!class.alternating || all_equal)
        && (!class.one_bridge || all_distinct);
    fail_if(!ok, || format!("{d}: X = {x}, {class:?}"))
}

pub fn check_polynomial_shapes(diagrams: &[GaussDiagram]) -> CheckResult {
    timed("polynomial-shapes", Some(6), || {
        Outcome::new(diagrams.len(), first_failure(diagrams, shape_failure))
    })
}

/// Polynomials with non-negative coefficients, coefficient sum `n` and degree at most `n`.
fn candidate_polynomials(n: usize) -> Vec<IntPolynomial> {
    fn fill(slots: &mut Vec<i64>, left: i64, out: &mut Vec<IntPolynomial>) {
        if slots.len() == slots.capacity() {
            if left == 0 {
                out.push(IntPolynomial::new(slots.clone()));
            }
            return;
        }
        for c in 0..=left {
            slots.push(c);
            fill(slots, left - c, out);
            slots.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(n + 1), n as i64, &mut out);
    out
}

pub fn check_realizability(config: &VerifyConfig) -> CheckResult {
    timed("realizability-round-trip", Some(7), || {
        let max_n = config.max_exhaustive_n;
        let mut cases = 0;
        let mut realized = 0;
        let mut rejected = 0;
        for n in 1..=max_n {
            let exhaustive = warping::realizable_polynomials(n);
            for f in candidate_polynomials(n) {
                cases += 1;
                let failure = if warping::realizability_check(&f) {
                    realized += 1;
                    match warping::realize_search(&f, max_n) {
                        Ok(d) if warping::warping_crossing_polynomial(&d) == f => None,
                        Ok(d) => Some(format!("{f}: search returned {d}")),
                        Err(e) => Some(format!("{f}: {e}")),
                    }
                } else {
                    rejected += 1;
                    fail_if(exhaustive.contains(&f), || format!("{f}: rejected but realizable"))
                };
                if failure.is_some() {
                    return Outcome::new(cases, failure);
                }
            }
        }
        let mut out = Outcome::new(cases, None);
        out.findings.push(format!("{realized} realized, {rejected} confirmed unrealizable"));
        out
    })
}

pub fn check_warping_degree_bound(diagrams: &[GaussDiagram]) -> CheckResult {
    timed("warping-degree-bound", Some(8), || {
        let violations: Vec<(bool, String)> = diagrams
            .par_iter()
            .filter_map(|d| {
                let n = d.crossing_count();
                let sum = warping::diagram_warping_degree(d) + warping::diagram_warping_degree(&d.reverse());
                let alternating = warping::classify(d).ok()?.alternating;
                let holds = sum < n && ((sum + 1 == n) == alternating);
                if holds {
                    None
                } else {
                    let planar = corpus::is_planar_shadow(&d.shadow());
                    Some((planar, format!("{d}: d(D) + d(-D) = {sum}, alternating = {alternating}")))
                }
            })
            .collect();
        let failure = violations.iter().find(|v| v.0).map(|v| v.1.clone());
        let mut out = Outcome::new(diagrams.len(), failure);
        let abstract_only: Vec<&String> = violations.iter().filter(|v| !v.0).map(|v| &v.1).collect();
        out.findings.push(format!(
            "{} violations on non-realizable abstract codes",
            abstract_only.len()
        ));
        out.findings.extend(abstract_only.into_iter().take(5).map(|s| format!("abstract code: {s}")));
        out
    })
}

fn one_line(text: String) -> String {
    text.trim_end().replace('\n', " | ")
}

fn curve_text(c: &PlanarCurve) -> String {
    one_line(c.to_string())
}

fn based_text(c: &BasedPlanarCurve) -> String {
    one_line(c.to_string())
}

/// Whitney's formula: the rotation number is the sum of face winding numbers
/// minus the average winding number around each crossing.
pub fn rotation_by_face_sum(c: &PlanarCurve) -> Option<i64> {
    let labels = planar::winding_labels(c).ok()?;
    let m = c.edge_count();
    let faces: i64 = labels.labels().iter().sum();
    let mut corners = 0;
    for k in 1..=c.crossing_count() as CrossingId {
        let (p1, p2) = c.visits(k).ok()?;
        for p in [p1, p2] {
            corners += labels.label(c.face_left(p)) + labels.label(c.face_right((p + m - 1) % m));
        }
    }
    (corners % 4 == 0).then(|| faces - corners / 4)
}

fn planar_failure(c: &PlanarCurve) -> Option<String> {
    let n = c.crossing_count();
    let text = || curve_text(c);
    let err = |what: &str, e: &dyn fmt::Display| Some(format!("{}: {what}: {e}", text()));

    if c.faces().face_count() != n + 2 {
        return Some(format!("{}: {} faces", text(), c.faces().face_count()));
    }
    let board = match planar::checkerboard(c) {
        Ok(b) => b,
        Err(e) => return err("checkerboard", &e),
    };
    if !board.is_proper(c.faces()) || board.color(c.faces().outer_face()) != Color::White {
        return Some(format!("{}: bad checkerboard {:?}", text(), board.colors()));
    }
    if n >= 1 {
        match planar::induced_alternating(c) {
            Ok(d) if warping::classify(&d).map(|k| k.alternating).unwrap_or(false) => {}
            Ok(d) => return Some(format!("{}: induced {d} not alternating", text())),
            Err(e) => return err("induced", &e),
        }
    }
    let labels = match planar::winding_labels(c) {
        Ok(l) => l,
        Err(e) => return err("winding", &e),
    };
    let consistent = labels.label(c.faces().outer_face()) == 0
        && (0..c.edge_count()).all(|e| labels.label(c.face_left(e)) == labels.label(c.face_right(e)) + 1);
    if !consistent {
        return Some(format!("{}: winding labels {:?}", text(), labels.labels()));
    }
    let (rot, rot_rev) = match (planar::rotation_number(c), planar::rotation_number(&c.reversed())) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return err("rotation", &e),
    };
    if (rot - n as i64 - 1).rem_euclid(2) != 0 || rot_rev != -rot || rotation_by_face_sum(c) != Some(rot) {
        return Some(format!("{}: rot = {rot}, reversed rot = {rot_rev}", text()));
    }

    let relabel: Vec<CrossingId> = (1..=n as CrossingId).rev().collect();
    let variants = || -> Vec<PlanarCurve> {
        let mut v = vec![c.rotated(1 % c.edge_count())];
        if let Ok(r) = c.relabeled(&relabel) {
            v.push(r);
        }
        v
    };

    type Proc<'a> = (&'a str, fn(&PlanarCurve) -> planar::PlanarResult<planar::OrientationChoice>);
    let mut procedures: Vec<Proc> = Vec::new();
    if n.is_multiple_of(2) {
        procedures.push(("rotation", planar::orient_even_rotation));
        if n >= 2 {
            procedures.push(("warping", planar::orient_even_warping));
        }
    }
    for (name, f) in procedures {
        let first = match f(c) {
            Ok(o) => o,
            Err(e) => return err(name, &e),
        };
        let again = f(c).ok();
        let reversed = f(&c.reversed()).ok();
        if again != Some(first) || reversed.map(|o| o.orientation) != Some(first.orientation.flip()) {
            return Some(format!("{}: {name} orientation not deterministic or not equivariant", text()));
        }
        if variants().iter().any(|v| f(v).ok() != Some(first)) {
            return Some(format!("{}: {name} orientation depends on the encoding", text()));
        }
        if name == "warping" {
            let d = planar::induced_alternating(c).ok()?;
            let oriented = match first.orientation {
                Orientation::Reference => d,
                Orientation::Reversed => d.reverse(),
            };
            let forward = warping::diagram_warping_degree(&oriented);
            let backward = warping::diagram_warping_degree(&oriented.reverse());
            if forward >= backward || forward + backward + 1 != n {
                return Some(format!("{}: chosen d = {forward}, reverse d = {backward}", text()));
            }
        }
    }

    if n % 2 == 1 {
        let sphere = match planar::sphere_black_majority_coloring(c) {
            Ok(s) => s,
            Err(e) => return err("sphere coloring", &e),
        };
        if sphere.black_count() <= sphere.white_count() || !sphere.is_proper(c.faces()) {
            return Some(format!("{}: sphere coloring {:?}", text(), sphere.colors()));
        }
        type BasedProc<'a> =
            (&'a str, fn(&BasedPlanarCurve) -> planar::PlanarResult<planar::OrientationChoice>);
        let procedures: [BasedProc; 2] = [
            ("warping", planar::orient_odd_warping),
            ("black-right", planar::orient_odd_black_right),
        ];
        for base in 0..c.edge_count() {
            let cb = BasedPlanarCurve::new(c.clone(), base).ok()?;
            for (name, f) in procedures {
                let first = match f(&cb) {
                    Ok(o) => o,
                    Err(e) => return Some(format!("{}: {name}: {e}", based_text(&cb))),
                };
                let again = f(&cb).ok();
                let reversed = f(&cb.reversed()).ok().map(|o| o.orientation);
                let rotated = f(&cb.rotated(1)).ok();
                if again != Some(first) || reversed != Some(first.orientation.flip()) || rotated != Some(first) {
                    return Some(format!(
                        "{}: {name} orientation not deterministic, equivariant or encoding independent",
                        based_text(&cb)
                    ));
                }
            }
        }
    }
    None
}

pub fn check_planar_pipeline(curves: &[PlanarCurve]) -> CheckResult {
    timed("planar-pipeline", Some(9), || {
        Outcome::new(curves.len(), first_failure(curves, planar_failure))
    })
}

pub fn check_independence(curves: &[PlanarCurve]) -> CheckResult {
    timed("independence-witnesses", Some(10), || {
        let even = curves.par_iter().find_map_first(|c| {
            let n = c.crossing_count();
            if n < 2 || n % 2 == 1 {
                return None;
            }
            let w = planar::orient_even_warping(c).ok()?;
            let r = planar::orient_even_rotation(c).ok()?;
            (w.sign() != r.sign()).then(|| curve_text(c))
        });
        let based: Vec<BasedPlanarCurve> = curves
            .iter()
            .filter(|c| c.crossing_count() % 2 == 1)
            .flat_map(|c| (0..c.edge_count()).filter_map(|e| BasedPlanarCurve::new(c.clone(), e).ok()))
            .collect();
        let odd = based.par_iter().find_map_first(|cb| {
            let w = planar::orient_odd_warping(cb).ok()?;
            let b = planar::orient_odd_black_right(cb).ok()?;
            (w.sign() != b.sign()).then(|| based_text(cb))
        });
        let base_dependent = curves.par_iter().find_map_first(|c| {
            if c.crossing_count() % 2 == 0 {
                return None;
            }
            let signs: Vec<i32> = (0..c.edge_count())
                .filter_map(|e| BasedPlanarCurve::new(c.clone(), e).ok())
                .filter_map(|cb| planar::orient_odd_warping(&cb).ok().map(|o| o.sign()))
                .collect();
            signs.iter().any(|&s| s != signs[0]).then(|| curve_text(c))
        });
        let failure = match (&even, &odd) {
            (Some(_), Some(_)) => None,
            (None, _) => Some("no even curve separates the warping and rotation orientations".into()),
            (_, None) => Some("no based odd curve separates the warping and black-right orientations".into()),
        };
        let mut out = Outcome::new(curves.len() + based.len(), failure);
        out.findings.extend(even.map(|w| format!("even witness: {w}")));
        out.findings.extend(odd.map(|w| format!("odd witness: {w}")));
        out.findings.extend(base_dependent.map(|w| format!("base point matters: {w}")));
        out
    })
}

fn binomial_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

pub fn check_edge_distribution(config: &VerifyConfig) -> CheckResult {
    timed("edge-degree-distribution", Some(11), || {
        let shadows: Vec<Shadow> =
            (1..=config.deep_exhaustive_n).flat_map(corpus::shadows_up_to_rotation).collect();
        let failure = first_failure(&shadows, |p| {
            let expected = binomial_row(p.crossing_count());
            (0..p.edge_count()).find_map(|e| match statesum::edge_degree_distribution(p, e) {
                Ok(counts) if counts == expected => None,
                Ok(counts) => Some(format!("{p}, edge {e}: {counts:?}")),
                Err(err) => Some(format!("{p}, edge {e}: {err}")),
            })
        });
        Outcome::new(shadows.len(), failure)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_exhaustive_n: 3,
            random_samples: 50,
            random_max_n: 6,
            deep_exhaustive_n: 4,
            statesum_random_per_n: 2,
            statesum_random_max_n: 8,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_run_passes() {
        let report = run(&small());
        for c in &report.checks {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn mutant_is_caught() {
        let config = VerifyConfig { inject_mutant: true, ..small() };
        let diagrams = diagram_corpus(config.max_exhaustive_n);
        let r = check_division(&config, &diagrams);
        assert!(!r.passed);
        assert!(r.counterexample.unwrap().contains("mutated from"));
    }

    #[test]
    fn candidates_cover_compositions() {
        // weak compositions of n into n + 1 parts
        assert_eq!(candidate_polynomials(1).len(), 2);
        assert_eq!(candidate_polynomials(3).len(), 20);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_row(4), vec![1, 4, 6, 4, 1]);
    }
}
