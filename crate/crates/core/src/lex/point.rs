use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the cube `[b]^d`; coordinates are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>, b: u32) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|&c| c == 0 || c > b) {
            return Err(Error::InvalidPoint { b });
        }
        Ok(Self(coords))
    }

    #[cfg(test)]
    /// Unchecked constructor for callers that already hold valid coordinates.
    pub(crate) fn from_coords(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// First (1-based) position where `x` and `y` differ.
pub fn first_diff(x: &Point, y: &Point) -> Result<usize> {
    if x.dim() != y.dim() {
        return Err(Error::InvalidParameter(format!(
            "dimensions {} and {} differ",
            x.dim(),
            y.dim()
        )));
    }
    x.0.iter()
        .zip(&y.0)
        .position(|(a, b)| a != b)
        .map(|i| i + 1)
        .ok_or(Error::EqualPoints)
}

/// `b^d` if it fits in a `u64`.
pub fn cube_size(b: u32, d: usize) -> Option<u64> {
    (b as u64).checked_pow(u32::try_from(d).ok()?)
}

/// Element `x ∈ [n]` as the point whose coordinates are the base-`b` digits
/// of `x - 1`, most significant first, each shifted up by one. The standard
/// lex order on points then agrees with the natural order on `[n]`.
pub fn encode(n: u64, b: u32, d: usize, x: u64) -> Result<Point> {
    if b < 2 || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "need b >= 2 and d >= 1, got b = {b}, d = {d}"
        )));
    }
    if cube_size(b, d).is_some_and(|size| n > size) {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds {b}^{d}")));
    }
    if x == 0 || x > n {
        return Err(Error::ElementOutOfRange { element: x, n });
    }
    Ok(Point(digits(b, d, x - 1)))
}

pub(crate) fn digits(b: u32, d: usize, mut rest: u64) -> Vec<u32> {
    let mut coords = vec![1u32; d];
    for slot in coords.iter_mut().rev() {
        *slot = (rest % b as u64) as u32 + 1;
        rest /= b as u64;
    }
    coords
}

/// Inverse of [`encode`].
pub fn decode(b: u32, point: &Point) -> Result<u64> {
    let mut acc: u128 = 0;
    for &c in point.coords() {
        if c == 0 || c > b {
            return Err(Error::InvalidPoint { b });
        }
        acc = acc * b as u128 + (c - 1) as u128;
    }
    u64::try_from(acc + 1).map_err(|_| Error::InvalidParameter("point index exceeds u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[u32]) -> Point {
        Point(c.to_vec())
    }

    #[test]
    fn first_diff_examples() {
        assert_eq!(first_diff(&p(&[1, 2, 1]), &p(&[1, 1, 2])), Ok(2));
        assert_eq!(first_diff(&p(&[2, 2]), &p(&[1, 2])), Ok(1));
        assert_eq!(
            first_diff(&p(&[2, 2]), &p(&[2, 2])),
            Err(Error::EqualPoints)
        );
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(4, 2, 2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(encode(4, 2, 2, 4).unwrap(), p(&[2, 2]));
        assert_eq!(encode(10, 3, 3, 10).unwrap(), p(&[2, 1, 1]));
        assert!(encode(5, 2, 2, 1).is_err());
        assert_eq!(
            encode(4, 2, 2, 5),
            Err(Error::ElementOutOfRange { element: 5, n: 4 })
        );
        assert_eq!(
            encode(4, 2, 2, 0),
            Err(Error::ElementOutOfRange { element: 0, n: 4 })
        );
    }

    #[test]
    fn point_validation() {
        assert!(Point::new(vec![1, 3], 3).is_ok());
        assert!(Point::new(vec![0, 1], 3).is_err());
        assert!(Point::new(vec![4, 1], 3).is_err());
        assert!(Point::new(vec![], 3).is_err());
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(b in 2u32..6, d in 1usize..6, seed in any::<u64>()) {
            let size = cube_size(b, d).unwrap();
            let n = 1 + seed % size;
            for x in [1, n, 1 + (seed / 7) % n] {
                let point = encode(n, b, d, x).unwrap();
                prop_assert_eq!(decode(b, &point).unwrap(), x);
            }
        }

        #[test]
        fn encoding_is_order_preserving(b in 2u32..5, d in 1usize..5, seed in any::<u64>()) {
            let size = cube_size(b, d).unwrap();
            let x = 1 + seed % size;
            let y = 1 + (seed / 13) % size;
            let (px, py) = (encode(size, b, d, x).unwrap(), encode(size, b, d, y).unwrap());
            prop_assert_eq!(px.cmp(&py), x.cmp(&y));
        }
    }
}
