//! The set Θ of degrees `m >= 6` at which every 2-transitive group contains
//! the alternating group, via its closed form.

use std::fmt;

use thiserror::Error;

/// Largest `n` accepted by the sieve.
pub const MAX_SIEVE: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("m must be at least 1")]
    Zero,
    #[error("sieve bound {0} exceeds {MAX_SIEVE}")]
    TooLarge(u64),
}

/// Why an integer is not in Θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaExclusion {
    TooSmall,
    /// `p^d`.
    PrimePower { p: u64, d: u32 },
    /// `(q^r - 1) / (q - 1)` with `q = p^d`.
    ProjectiveCount { p: u64, d: u32, r: u32 },
    /// `2^(2d-1) + 2^(d-1)` when `plus`, else `2^(2d-1) - 2^(d-1)`.
    PowerOfTwoForm { d: u32, plus: bool },
    Sporadic(u64),
}

impl ThetaExclusion {
    /// The integer the formula evaluates to (`None` for `TooSmall`).
    pub fn value(&self) -> Option<u64> {
        match *self {
            ThetaExclusion::TooSmall => None,
            ThetaExclusion::PrimePower { p, d } => p.checked_pow(d),
            ThetaExclusion::ProjectiveCount { p, d, r } => {
                let q = p.checked_pow(d)?;
                Some((q.checked_pow(r)? - 1) / (q - 1))
            }
            ThetaExclusion::PowerOfTwoForm { d, plus } => {
                let (a, b) = (1u64 << (2 * d - 1), 1u64 << (d - 1));
                Some(if plus { a + b } else { a - b })
            }
            ThetaExclusion::Sporadic(m) => Some(m),
        }
    }

    /// Whether this exclusion applies to `m`.
    pub fn certifies(&self, m: u64) -> bool {
        match self {
            ThetaExclusion::TooSmall => m < 6,
            _ => self.value() == Some(m),
        }
    }
}

impl fmt::Display for ThetaExclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaExclusion::TooSmall => write!(f, "TooSmall"),
            ThetaExclusion::PrimePower { p, d } => write!(f, "PrimePower({p},{d})"),
            ThetaExclusion::ProjectiveCount { p, d, r } => write!(f, "ProjectiveCount({p},{d},{r})"),
            ThetaExclusion::PowerOfTwoForm { d, plus } => write!(f, "PowerOfTwoForm({d},{})", if *plus { '+' } else { '-' }),
            ThetaExclusion::Sporadic(m) => write!(f, "Sporadic({m})"),
        }
    }
}

pub const SPORADIC: [u64; 3] = [22, 176, 276];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Exclusions with base prime `p` that evaluate to `m`, in family order.
fn exclusion_at_prime(m: u64, p: u64) -> Option<ThetaExclusion> {
    let mut q = p;
    let mut d = 1;
    while q <= m {
        if q == m {
            return Some(ThetaExclusion::PrimePower { p, d });
        }
        q = q.checked_mul(p)?;
        d += 1;
    }
    let (mut q, mut d) = (p, 1u32);
    while 1 + q <= m {
        let (mut sum, mut pw, mut r) = (1 + q, q, 2u32);
        while sum < m {
            pw = match pw.checked_mul(q) {
                Some(x) => x,
                None => break,
            };
            sum += pw;
            r += 1;
        }
        if sum == m {
            return Some(ThetaExclusion::ProjectiveCount { p, d, r });
        }
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
        d += 1;
    }
    if p == 2 {
        let mut d = 3;
        while (1u64 << (2 * d - 1)) - (1u64 << (d - 1)) <= m {
            for plus in [true, false] {
                let e = ThetaExclusion::PowerOfTwoForm { d, plus };
                if e.value() == Some(m) {
                    return Some(e);
                }
            }
            d += 1;
        }
    }
    None
}

/// Membership of `m` in Θ, with the exclusion found first when `m` is out:
/// smallest base prime first, then prime powers, projective counts and the
/// power-of-two forms; the sporadic values last.
pub fn is_in_theta(m: u64) -> Result<(bool, Option<ThetaExclusion>), ThetaError> {
    if m == 0 {
        return Err(ThetaError::Zero);
    }
    if m < 6 {
        return Ok((false, Some(ThetaExclusion::TooSmall)));
    }
    for p in (2..=m).filter(|&p| is_prime(p)) {
        if let Some(e) = exclusion_at_prime(m, p) {
            return Ok((false, Some(e)));
        }
    }
    if SPORADIC.contains(&m) {
        return Ok((false, Some(ThetaExclusion::Sporadic(m))));
    }
    Ok((true, None))
}

/// Θ ∩ [1, n] as a bitset, built from a prime sieve.
pub struct ThetaSieve {
    n: u64,
    member: Vec<u64>,
}

impl ThetaSieve {
    pub fn new(n: u64) -> Result<ThetaSieve, ThetaError> {
        if n > MAX_SIEVE {
            return Err(ThetaError::TooLarge(n));
        }
        let len = n as usize + 1;
        let mut composite = vec![false; len];
        let mut excluded = vec![false; len];
        for m in 0..len.min(6) {
            excluded[m] = true;
        }
        for p in 2..len {
            if composite[p] {
                continue;
            }
            let mut j = p * p;
            while j < len {
                composite[j] = true;
                j += p;
            }
            let p = p as u64;
            let mut q = p;
            while q <= n {
                excluded[q as usize] = true;
                // Projective counts 1 + q + ... + q^(r-1), r >= 2.
                let (mut sum, mut pw) = (1 + q, q);
                while sum <= n {
                    excluded[sum as usize] = true;
                    pw = match pw.checked_mul(q) {
                        Some(x) => x,
                        None => break,
                    };
                    sum = match sum.checked_add(pw) {
                        Some(x) => x,
                        None => break,
                    };
                }
                q = match q.checked_mul(p) {
                    Some(x) => x,
                    None => break,
                };
            }
        }
        let mut d = 3;
        while (1u64 << (2 * d - 1)) - (1u64 << (d - 1)) <= n {
            for v in [(1u64 << (2 * d - 1)) + (1u64 << (d - 1)), (1u64 << (2 * d - 1)) - (1u64 << (d - 1))] {
                if v <= n {
                    excluded[v as usize] = true;
                }
            }
            d += 1;
        }
        for s in SPORADIC {
            if s <= n {
                excluded[s as usize] = true;
            }
        }
        let mut member = vec![0u64; len.div_ceil(64)];
        for (m, &x) in excluded.iter().enumerate() {
            if !x {
                member[m / 64] |= 1 << (m % 64);
            }
        }
        Ok(ThetaSieve { n, member })
    }

    pub fn bound(&self) -> u64 {
        self.n
    }

    pub fn contains(&self, m: u64) -> bool {
        m <= self.n && self.member[m as usize / 64] >> (m % 64) & 1 == 1
    }

    /// `|Θ ∩ [1, m]|` for `m <= bound`.
    pub fn count_upto(&self, m: u64) -> u64 {
        assert!(m <= self.n);
        let full = (m as usize + 1) / 64;
        let mut c: u64 = self.member[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rem = (m as usize + 1) % 64;
        if rem > 0 {
            c += (self.member[full] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        c
    }

    pub fn list(&self) -> Vec<u64> {
        (1..=self.n).filter(|&m| self.contains(m)).collect()
    }

    pub fn density(&self, m: u64) -> Density {
        Density { count: self.count_upto(m), n: m }
    }
}

/// `count / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub count: u64,
    pub n: u64,
}

impl Density {
    pub fn value(&self) -> f64 {
        self.count as f64 / self.n as f64
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.n)
    }
}

/// Θ ∩ [1, n] in ascending order.
pub fn theta_list(n: u64) -> Result<Vec<u64>, ThetaError> {
    Ok(ThetaSieve::new(n)?.list())
}

/// `|Θ ∩ [1, n]| / n`.
pub fn theta_density(n: u64) -> Result<Density, ThetaError> {
    if n == 0 {
        return Err(ThetaError::Zero);
    }
    Ok(ThetaSieve::new(n)?.density(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_ten() {
        assert_eq!(theta_list(58).unwrap(), vec![34, 35, 39, 45, 46, 51, 52, 55, 56, 58]);
    }

    #[test]
    fn witnesses() {
        assert_eq!(is_in_theta(32).unwrap(), (false, Some(ThetaExclusion::PrimePower { p: 2, d: 5 })));
        assert_eq!(is_in_theta(31).unwrap(), (false, Some(ThetaExclusion::ProjectiveCount { p: 2, d: 1, r: 5 })));
        assert_eq!(is_in_theta(36).unwrap(), (false, Some(ThetaExclusion::PowerOfTwoForm { d: 3, plus: true })));
        assert_eq!(is_in_theta(22).unwrap(), (false, Some(ThetaExclusion::Sporadic(22))));
        assert_eq!(is_in_theta(3).unwrap(), (false, Some(ThetaExclusion::TooSmall)));
        assert_eq!(is_in_theta(34).unwrap(), (true, None));
        assert!(is_in_theta(0).is_err());
    }

    #[test]
    fn sieve_matches_search() {
        let s = ThetaSieve::new(3000).unwrap();
        for m in 1..=3000 {
            let (inside, why) = is_in_theta(m).unwrap();
            assert_eq!(s.contains(m), inside, "m = {m}");
            if let Some(e) = why {
                assert!(e.certifies(m), "{e} does not give {m}");
            }
        }
    }

    #[test]
    fn small_densities() {
        assert_eq!(theta_density(1000).unwrap().count, 590);
        assert_eq!(theta_density(10_000).unwrap().count, 7384);
    }
}
