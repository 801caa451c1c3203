//! Relabelling one half of an edge-rooted ball so that a half-tree far from
//! the edge carries only `e` labels.

use thiserror::Error;

use super::Diagram;
use crate::groupspec::{satisfies_windows, Filler, GroupSpec, SignedSet, SpecError};
use crate::tree_core::{Ball, BallKind};

#[derive(Debug, Error)]
pub enum HalfTreeError {
    #[error("half-tree labelling needs a spec without stars, got {0}")]
    Starred(String),
    #[error("half-tree labelling needs an edge-rooted ball")]
    NotEdgeRooted,
    #[error("both degrees must be at least 4")]
    SmallDegree,
    #[error("depth {depth} is below 2M = {min}")]
    TooShallow { depth: usize, min: usize },
    #[error("seed diagram violates {0}")]
    SeedViolates(String),
    #[error("verification failed: {0}")]
    Verification(&'static str),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// The relabelled diagram with the path `s_0, ..., s_M` (vertex ids).
#[derive(Debug, Clone)]
pub struct HalfTree {
    pub m: usize,
    pub diagram: Diagram,
    pub path: Vec<usize>,
}

impl HalfTree {
    pub fn s_m(&self) -> usize {
        *self.path.last().unwrap()
    }
}

/// `M = max(max Y0, max Y1) + 1`, with `max ∅ = 0`.
fn m_of(spec: &GroupSpec) -> Result<usize, HalfTreeError> {
    match spec {
        GroupSpec::TypePreserving(y0, y1) if !y0.is_starred() && !y1.is_starred() => {
            let mx = |y: &SignedSet| y.max().unwrap_or(0) as usize;
            Ok(mx(y0).max(mx(y1)) + 1)
        }
        _ => Err(HalfTreeError::Starred(spec.to_string())),
    }
}

fn ball_around(ball: &Ball, c: usize, r: usize) -> Vec<usize> {
    let mut out = vec![c];
    let mut frontier = vec![(c, usize::MAX)];
    for _ in 0..r {
        let mut next = Vec::new();
        for &(v, from) in &frontier {
            for w in ball.neighbors(v) {
                if w != from {
                    out.push(w);
                    next.push((w, v));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Keeps the seed on side 0 (the half-tree `T_{v,w}`) and on side 1 up to
/// depth `M-1`, then relabels side 1 level by level: a window needing odd
/// parity gets its `o` at the end of the all-slot-0 path, everything else is
/// `e`. The path `s_j` leaves the first `e` vertex of side-1 depth `M`
/// through slot 1 at each step.
pub fn half_tree_labelling(spec: &GroupSpec, ball: &Ball, seed: &Diagram) -> Result<HalfTree, HalfTreeError> {
    let m = m_of(spec)?;
    if ball.kind() != BallKind::EdgeRooted {
        return Err(HalfTreeError::NotEdgeRooted);
    }
    if ball.shape().d0() < 4 || ball.shape().d1() < 4 {
        return Err(HalfTreeError::SmallDegree);
    }
    let n = ball.depth();
    if n < 2 * m {
        return Err(HalfTreeError::TooShallow { depth: n, min: 2 * m });
    }
    if seed.key() != ball.key() {
        return Err(SpecError::BallMismatch.into());
    }
    if !satisfies_windows(spec, ball, seed.labels(), n, false)? {
        return Err(HalfTreeError::SeedViolates(spec.to_string()));
    }

    let mut labels = seed.labels().clone();
    let mut filler = Filler::new(spec, ball, &labels, None, false)?;
    for k in m..=n {
        filler.fill_level(&mut labels, k, Some(1), &mut || false, &mut |_, r| r.start);
    }
    let diagram = Diagram::new(ball, labels, false);

    let s0 = ball
        .level(m)
        .find(|&v| ball.side(v) == 1 && !diagram.is_odd(v))
        .ok_or(HalfTreeError::Verification("no e vertex at distance M from w"))?;
    let mut path = vec![s0];
    for _ in 0..m {
        let last = *path.last().unwrap();
        path.push(ball.child(last, 1));
    }
    let out = HalfTree { m, diagram, path };
    verify(spec, ball, &out)?;
    Ok(out)
}

fn verify(spec: &GroupSpec, ball: &Ball, h: &HalfTree) -> Result<(), HalfTreeError> {
    let d = &h.diagram;
    if !satisfies_windows(spec, ball, d.labels(), ball.depth(), false)? {
        return Err(HalfTreeError::Verification("a contained window is violated"));
    }
    if ball_around(ball, h.s_m(), h.m).iter().any(|&v| d.is_odd(v)) {
        return Err(HalfTreeError::Verification("B(s_M, M) has an o label"));
    }
    let sm = h.s_m();
    if (ball.prefix_len(ball.vertex_depth(sm))..ball.len()).any(|v| d.is_odd(v) && ball.is_descendant(v, sm)) {
        return Err(HalfTreeError::Verification("the half-tree beyond s_M has an o label"));
    }
    Ok(())
}
