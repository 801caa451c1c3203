//! The invariant profile `(c, K, K', f)` of a spec.

use std::collections::BTreeSet;
use std::fmt;

use super::alpha::{alpha_sequence, sequence_shape, AlphaSymbol, BallCache};
use super::{fmt_level, Level};
use crate::gf2::{span_rref, BitVec};
use crate::groupspec::{compile, GroupSpec, SpecError};
use crate::tree_core::Ball;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("alpha sequence for type {t} fits no shape: {seq}")]
    NoShape { t: u8, seq: String },
    #[error("diagram of depth {0} has no extension in the set")]
    NoExtension(usize),
    #[error("profile does not have c = (2, 2) with K(0) = K(1)")]
    NotC2,
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileOptions {
    /// Largest `k` for which `α_k` is computed; defaults to `max X + 2`.
    pub kmax: Option<usize>,
    pub with_f: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { kmax: None, with_f: true }
    }
}

/// Values of `f^t_v` on the canonical basis of its domain.
///
/// The domain is the depth-`(K-1)` diagram set at a vertex of type
/// `(t + K) mod 2`, stored as the rows of its reduced echelon basis. For
/// `c = 3` the values are normalised to have `E` in the first coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FTable {
    pub c: u8,
    pub k: usize,
    pub domain: Vec<BitVec>,
    pub values: Vec<Vec<bool>>,
}

/// Closed form of `f^t_v` when `K(t) <= K(1-t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FDescriptor {
    C1 { a: BTreeSet<usize> },
    C2 { a: BTreeSet<usize>, b: BTreeSet<usize> },
    C3 { a: BTreeSet<usize> },
}

impl FDescriptor {
    /// For `c = 1`, the set `A ∪ {K}`: the radii of the window that `f`
    /// closes at depth `K`.
    pub fn window_set(&self, k: usize) -> Option<BTreeSet<usize>> {
        match self {
            FDescriptor::C1 { a } => {
                let mut s = a.clone();
                s.insert(k);
                Some(s)
            }
            _ => None,
        }
    }
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl fmt::Display for FDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FDescriptor::C1 { a } => write!(f, "A={}", fmt_set(a)),
            FDescriptor::C2 { a, b } => write!(f, "A={} B={}", fmt_set(a), fmt_set(b)),
            FDescriptor::C3 { a } => write!(f, "A={}", fmt_set(a)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InvariantProfile {
    pub c: [u8; 2],
    pub k: [Level; 2],
    pub k_prime: [Level; 2],
    pub alphas: [Vec<AlphaSymbol>; 2],
    pub f: [Option<FTable>; 2],
    pub descriptors: [Option<FDescriptor>; 2],
}

impl InvariantProfile {
    /// `(c(0), c(1), K'(0), K'(1))`.
    pub fn numeric(&self) -> (u8, u8, Level, Level) {
        (self.c[0], self.c[1], self.k_prime[0], self.k_prime[1])
    }

    /// Equality of `c`, `K` and the `f` tables.
    pub fn same_invariants(&self, other: &InvariantProfile) -> bool {
        self.c == other.c && self.k == other.k && self.f == other.f
    }

    /// `key=value` record block.
    pub fn to_record(&self) -> String {
        let mut s = String::new();
        for t in 0..2 {
            s.push_str(&format!("c{t}={}\n", self.c[t]));
            s.push_str(&format!("K{t}={}\n", fmt_level(self.k[t])));
            s.push_str(&format!("Kp{t}={}\n", fmt_level(self.k_prime[t])));
            let a: Vec<String> = self.alphas[t].iter().map(|a| a.to_string()).collect();
            s.push_str(&format!("alpha{t}={}\n", a.join(",")));
            if let Some(d) = &self.descriptors[t] {
                s.push_str(&format!("f{t}={d}\n"));
            } else if let Some(tab) = &self.f[t] {
                s.push_str(&format!("f{t}=table(dim={})\n", tab.domain.len()));
            }
        }
        s
    }
}

/// Leaf parities per branch of a depth-1 vertex.
fn branch_parities(ball: &Ball, k: usize, x: &BitVec) -> Vec<bool> {
    let level = ball.level(k);
    let nb = ball.num_children(0);
    let per = level.len() / nb;
    (0..nb)
        .map(|b| (level.start + b * per..level.start + (b + 1) * per).fold(false, |acc, v| acc ^ x.get(v)))
        .collect()
}

fn f_value(c: u8, parities: Vec<bool>) -> Vec<bool> {
    match c {
        1 => vec![parities.iter().fold(false, |a, &b| a ^ b)],
        2 => parities,
        _ => {
            let flip = parities[0];
            parities.into_iter().map(|p| p ^ flip).collect()
        }
    }
}

struct FContext<'a> {
    spec: &'a GroupSpec,
    ball: &'a Ball,
    c: u8,
    k: usize,
}

impl FContext<'_> {
    fn values(&self, domain: &[BitVec]) -> Result<Vec<Vec<bool>>, ProfileError> {
        let full = compile(self.spec, self.ball, self.k)?;
        let solver = full.system.prefix_solver(self.ball.prefix_len(self.k - 1));
        domain
            .iter()
            .map(|d| {
                let x = solver.solve(d, || false).ok_or(ProfileError::NoExtension(self.k - 1))?;
                Ok(f_value(self.c, branch_parities(self.ball, self.k, &x)))
            })
            .collect()
    }

    fn raw_values(&self, domain: &[BitVec]) -> Result<Vec<Vec<bool>>, ProfileError> {
        let full = compile(self.spec, self.ball, self.k)?;
        let solver = full.system.prefix_solver(self.ball.prefix_len(self.k - 1));
        domain
            .iter()
            .map(|d| {
                let x = solver.solve(d, || false).ok_or(ProfileError::NoExtension(self.k - 1))?;
                Ok(branch_parities(self.ball, self.k, &x))
            })
            .collect()
    }
}

fn f_table(spec: &GroupSpec, cache: &BallCache, t: u8, c: u8, k: usize) -> Result<FTable, ProfileError> {
    if k == 0 {
        return Ok(FTable { c, k, domain: Vec::new(), values: Vec::new() });
    }
    let ball = cache.get(((t as usize + k) % 2) as u8, k);
    let n = ball.prefix_len(k - 1);
    let dom = compile(spec, ball, k - 1)?;
    let basis = span_rref(n, dom.rref().nullspace_basis().into_iter().map(|v| v.truncated(n)).collect());
    let domain: Vec<BitVec> = basis.rows().to_vec();
    let values = FContext { spec, ball, c, k }.values(&domain)?;
    Ok(FTable { c, k, domain, values })
}

/// Generator diagrams `δ_r`: one `o` at the least vertex of `S(v, r)` in
/// the first branch.
fn generator(ball: &Ball, k: usize, r: usize) -> BitVec {
    let v = (0..r).fold(0, |v, _| ball.child(v, 0));
    BitVec::from_indices(ball.prefix_len(k - 1), [v])
}

fn descriptor(spec: &GroupSpec, cache: &BallCache, t: u8, c: u8, k: usize) -> Result<Option<FDescriptor>, ProfileError> {
    if k == 0 {
        return Ok(Some(match c {
            1 => FDescriptor::C1 { a: BTreeSet::new() },
            2 => FDescriptor::C2 { a: BTreeSet::new(), b: BTreeSet::new() },
            _ => FDescriptor::C3 { a: BTreeSet::new() },
        }));
    }
    let ball = cache.get(((t as usize + k) % 2) as u8, k);
    if compile(spec, ball, k - 1)?.dimension() != ball.prefix_len(k - 1) {
        return Ok(None);
    }
    let gens: Vec<BitVec> = (0..k).map(|r| generator(ball, k, r)).collect();
    let ctx = FContext { spec, ball, c, k };
    let raw = ctx.raw_values(&gens)?;
    let d = match c {
        1 => FDescriptor::C1 {
            a: (0..k).filter(|&r| raw[r].iter().fold(false, |a, &b| a ^ b)).collect(),
        },
        _ => {
            let mut a = BTreeSet::new();
            let mut b = BTreeSet::new();
            for (r, p) in raw.iter().enumerate() {
                let (x, rest) = (p[0], &p[1..]);
                let y = rest[0];
                if rest.iter().any(|&q| q != y) || (r == 0 && x != y) {
                    return Ok(None);
                }
                if c == 2 {
                    if r >= 1 && x {
                        a.insert(r);
                    }
                    if y {
                        b.insert(r);
                    }
                } else if r >= 1 && x != y {
                    a.insert(r);
                }
            }
            if c == 2 {
                FDescriptor::C2 { a, b }
            } else {
                FDescriptor::C3 { a }
            }
        }
    };
    Ok(Some(d))
}

fn le(a: Level, b: Level) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

pub fn invariant_profile(
    spec: &GroupSpec,
    cache: &BallCache,
    opts: ProfileOptions,
) -> Result<InvariantProfile, ProfileError> {
    let kmax = opts.kmax.unwrap_or(spec.layout().max_radius() + 2).max(1);
    let mut c = [0u8; 2];
    let mut k = [None; 2];
    let mut k_prime = [None; 2];
    let mut alphas: [Vec<AlphaSymbol>; 2] = [Vec::new(), Vec::new()];
    for t in 0..2u8 {
        let seq = alpha_sequence(spec, cache, t, kmax);
        let shape = sequence_shape(&seq).ok_or_else(|| ProfileError::NoShape {
            t,
            seq: seq.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","),
        })?;
        c[t as usize] = shape.case;
        k[t as usize] = shape.k;
        k_prime[t as usize] = shape.k_prime();
        alphas[t as usize] = seq;
    }
    let mut f = [None, None];
    let mut descriptors = [None, None];
    if opts.with_f {
        for t in 0..2u8 {
            let ti = t as usize;
            let Some(kt) = k[ti] else { continue };
            f[ti] = Some(f_table(spec, cache, t, c[ti], kt)?);
            if le(k[ti], k[1 - ti]) {
                descriptors[ti] = descriptor(spec, cache, t, c[ti], kt)?;
            }
        }
    }
    Ok(InvariantProfile { c, k, k_prime, alphas, f, descriptors })
}

/// The relations between the `c = 2` descriptors of the two types:
/// `K-1 ∈ B_t`, and `r ∈ B_t` iff `r+1 ∈ A_{1-t}` for `r <= K-2`.
pub fn check_c2_relations(p: &InvariantProfile) -> Result<bool, ProfileError> {
    if p.c != [2, 2] || p.k[0] != p.k[1] {
        return Err(ProfileError::NotC2);
    }
    let kk = p.k[0].ok_or(ProfileError::NotC2)?;
    let get = |t: usize| match &p.descriptors[t] {
        Some(FDescriptor::C2 { a, b }) => Ok((a.clone(), b.clone())),
        _ => Err(ProfileError::NotC2),
    };
    let ab = [get(0)?, get(1)?];
    Ok((0..2).all(|t| {
        let (_, b) = &ab[t];
        let (a_other, _) = &ab[1 - t];
        b.contains(&(kk - 1)) && (0..kk.saturating_sub(1)).all(|r| b.contains(&r) == a_other.contains(&(r + 1)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupspec::parse_spec;
    use crate::tree_core::TreeShape;

    fn cache() -> BallCache {
        BallCache::new(TreeShape::new(6, 6).unwrap(), 7)
    }

    #[test]
    fn examples() {
        let c = cache();
        let p = invariant_profile(&parse_spec("G+(X0={0,2}; X1=empty)").unwrap(), &c, Default::default()).unwrap();
        assert_eq!(p.numeric(), (1, 0, Some(2), None));
        let d = p.descriptors[0].clone().unwrap();
        assert_eq!(d, FDescriptor::C1 { a: [0].into() });
        assert_eq!(d.window_set(2).unwrap(), [0, 2].into());

        let p = invariant_profile(&parse_spec("G+(X0={0,1}; X1={1})").unwrap(), &c, Default::default()).unwrap();
        assert_eq!(p.numeric(), (1, 1, Some(1), Some(1)));

        let p = invariant_profile(&parse_spec("Gc*(X0={1}; X1={1})").unwrap(), &c, Default::default()).unwrap();
        assert_eq!(p.numeric(), (2, 2, Some(1), Some(1)));
        assert!(check_c2_relations(&p).unwrap());
    }
}
