//! Partially shattering families of `[n]` built from lex-permutations.

use serde::{Deserialize, Serialize};

use super::order::{build_pi, Direction, LexFamily, PiOrder};
use super::point::cube_size;
use super::shattering::{build_k_lex_random, LexCertificate, Strength};
use crate::combinatorics::ceil_log2;
use crate::config::BuildConfig;
use crate::error::{Error, Result};
use crate::perm::{OrderFamily, PermFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Loglog,
    Sqrtlog,
}

/// A lex family on `[b]^d` (plus, for the sqrt-log construction, the `4d`
/// orders `π_{i,σ,τ}`) acting on `[n]` through the base-`b` encoding.
#[derive(Debug, Clone)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub n: u64,
    pub k: usize,
    pub b: u32,
    pub d: usize,
    pub lex: LexFamily,
    pub extra: Vec<PiOrder>,
    pub lex_certificate: LexCertificate,
    pub rounds: usize,
}

impl Construction {
    /// Every k-subset of `[n]` is shattered at least this many times.
    pub fn guaranteed_t(&self) -> u64 {
        let h = 1u64 << ceil_log2(self.k as u64);
        match self.kind {
            ConstructionKind::Loglog => h,
            ConstructionKind::Sqrtlog => (2 * self.k as u64).min(h + 4),
        }
    }

    pub fn to_perm_family(&self, cap: u64) -> Result<PermFamily> {
        PermFamily::from_order_family(self, cap)
    }
}

impl OrderFamily for Construction {
    fn ground_size(&self) -> u64 {
        self.n
    }

    fn len(&self) -> usize {
        self.lex.len() + self.extra.len()
    }

    #[inline]
    fn key(&self, member: usize, x: u64) -> u64 {
        match self.lex.members().get(member) {
            Some(rho) => rho.element_key(x),
            None => self.extra[member - self.lex.len()].element_key(x),
        }
    }
}

/// `b = 2`, `d = ⌈log₂ n⌉`.
pub fn loglog_dims(n: u64) -> Result<(u32, usize)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    Ok((2, ceil_log2(n) as usize))
}

/// Least `d` with `d² >= ⌈log₂ n⌉`, and `b = 2^d`.
pub fn sqrtlog_dims(n: u64) -> Result<(u32, usize)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let bits = ceil_log2(n) as usize;
    let d = (1..).find(|d| d * d >= bits).expect("unbounded search");
    let b = 1u32 << d;
    if cube_size(b, d).is_none() {
        return Err(Error::InvalidParameter(format!(
            "n = {n} needs a cube [{b}]^{d} beyond 2^64 points"
        )));
    }
    Ok((b, d))
}

pub fn build_loglog_family(
    n: u64,
    k: usize,
    seed: u64,
    config: &BuildConfig,
) -> Result<Construction> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    let (b, d) = loglog_dims(n)?;
    let build = build_k_lex_random(b, d, k, seed, Strength::Full, config)?;
    Ok(Construction {
        kind: ConstructionKind::Loglog,
        n,
        k,
        b,
        d,
        lex: build.family,
        extra: Vec::new(),
        lex_certificate: build.certificate,
        rounds: build.rounds,
    })
}

pub fn build_sqrtlog_family(
    n: u64,
    k: usize,
    seed: u64,
    config: &BuildConfig,
) -> Result<Construction> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("need k >= 4, got {k}")));
    }
    let h = ceil_log2(k as u64) as usize;
    if k - 1 <= h {
        return Err(Error::Precondition(format!(
            "k - 1 = {} must exceed ⌈log₂ k⌉ = {h}",
            k - 1
        )));
    }
    let (b, d) = sqrtlog_dims(n)?;
    let build = build_k_lex_random(b, d, k, seed, Strength::SliceTree, config)?;
    let mut extra = Vec::with_capacity(4 * d);
    for i in 1..=d {
        for sigma in Direction::BOTH {
            for tau in Direction::BOTH {
                extra.push(build_pi(i, sigma, tau, b, d)?);
            }
        }
    }
    Ok(Construction {
        kind: ConstructionKind::Sqrtlog,
        n,
        k,
        b,
        d,
        lex: build.family,
        extra,
        lex_certificate: build.certificate,
        rounds: build.rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{count_induced, min_shatter};

    #[test]
    fn dimensions() {
        assert_eq!(loglog_dims(64).unwrap(), (2, 6));
        assert_eq!(loglog_dims(65).unwrap(), (2, 7));
        assert_eq!(loglog_dims(2).unwrap(), (2, 1));
        assert_eq!(sqrtlog_dims(16).unwrap(), (4, 2));
        assert_eq!(sqrtlog_dims(1 << 16).unwrap(), (16, 4));
        assert_eq!(sqrtlog_dims(1 << 36).unwrap(), (64, 6));
        assert_eq!(sqrtlog_dims(17).unwrap(), (8, 3));
        assert!(loglog_dims(1).is_err());
    }

    #[test]
    fn parameter_checks() {
        let cfg = BuildConfig::default();
        assert!(build_loglog_family(64, 2, 0, &cfg).is_err());
        assert!(build_sqrtlog_family(16, 3, 0, &cfg).is_err());
    }

    #[test]
    fn loglog_family_k3_is_four_shattering() {
        let c = build_loglog_family(64, 3, 5, &BuildConfig::default()).unwrap();
        assert_eq!(c.guaranteed_t(), 4);
        assert!(c.lex_certificate.passed);
        assert!(min_shatter(&c, 3, u64::MAX).unwrap().0 >= 4);
    }

    #[test]
    fn sqrtlog_family_counts_members() {
        let c = build_sqrtlog_family(16, 4, 1, &BuildConfig::default()).unwrap();
        assert_eq!(c.len(), c.lex.len() + 8);
        assert_eq!(c.guaranteed_t(), 8);
        let fam = c.to_perm_family(1 << 20).unwrap();
        assert_eq!(fam.len(), c.len());
        for subset in [[1, 2, 3, 4], [1, 6, 11, 16], [2, 5, 9, 15]] {
            assert_eq!(
                count_induced(&fam, &subset).unwrap(),
                count_induced(&c, &subset).unwrap()
            );
        }
    }

    #[test]
    fn restriction_to_n_below_cube() {
        let c = build_loglog_family(50, 4, 2, &BuildConfig::default()).unwrap();
        assert_eq!(c.ground_size(), 50);
        let fam = c.to_perm_family(1 << 20).unwrap();
        assert_eq!(fam.n(), 50);
        assert!(min_shatter(&fam, 4, u64::MAX).unwrap().0 >= 4);
    }
}
