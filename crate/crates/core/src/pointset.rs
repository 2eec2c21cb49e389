//! Fixed-width point subsets.
//!
//! Points are indexed `0..width` and stored in a single `u64` word, so the
//! widest supported structure has 64 points. Hyperplane enumeration has its
//! own (lower) cap on top of that.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_WIDTH: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    bits: u64,
    width: u8,
}

#[inline]
fn full_mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl PointSet {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "point set width {width} exceeds {MAX_WIDTH}");
        Self { bits: 0, width: width as u8 }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        s.bits = full_mask(width);
        s
    }

    /// Builds a set from raw bits; bits at or above `width` are rejected.
    pub fn from_bits(width: usize, bits: u64) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::InvalidParameter(format!("width {width} exceeds {MAX_WIDTH}")));
        }
        if bits & !full_mask(width) != 0 {
            return Err(Error::InvalidParameter(format!("bits {bits:#x} exceed width {width}")));
        }
        Ok(Self { bits, width: width as u8 })
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(width: usize, points: I) -> Result<Self> {
        let mut s = Self::empty(width);
        for p in points {
            if p >= width {
                return Err(Error::InvalidParameter(format!("point {p} out of range for width {width}")));
            }
            s.bits |= 1 << p;
        }
        Ok(s)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.width())
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        p < self.width() && (self.bits >> p) & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Self { bits: !self.bits & full_mask(self.width()), width: self.width }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self { bits: self.bits & other.bits, width: self.width }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self { bits: self.bits | other.bits, width: self.width }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self { bits: self.bits ^ other.bits, width: self.width }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Ascending point indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(p)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical hyperplane order: fewer points first, then the ascending
    /// point lists compared lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // Lexicographic comparison of ascending lists. At the first
            // differing point the set holding the smaller point wins.
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else {
                let first = diff.trailing_zeros();
                if (self.bits >> first) & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(width: usize, pts: &[usize]) -> PointSet {
        PointSet::from_points(width, pts.iter().copied()).unwrap()
    }

    #[test]
    fn complement_respects_width() {
        let s = set(5, &[0, 2]);
        assert_eq!(s.complement().to_vec(), vec![1, 3, 4]);
        assert!(PointSet::full(64).complement().is_empty());
    }

    #[test]
    fn out_of_range_point_rejected() {
        assert!(PointSet::from_points(3, [3]).is_err());
        assert!(PointSet::from_bits(3, 0b1000).is_err());
    }

    #[test]
    fn canonical_order_examples() {
        // cardinality first
        assert_eq!(set(8, &[2, 3, 5]).canonical_cmp(&set(8, &[0, 1, 3, 5])), Ordering::Less);
        // then smallest point
        assert_eq!(set(8, &[0, 1, 3, 5]).canonical_cmp(&set(8, &[0, 2, 3, 5])), Ordering::Less);
        assert_eq!(set(8, &[2, 4, 5]).canonical_cmp(&set(8, &[2, 3, 5])), Ordering::Greater);
        assert_eq!(set(8, &[1, 2]).canonical_cmp(&set(8, &[1, 2])), Ordering::Equal);
    }

    #[test]
    fn display_lists_points() {
        assert_eq!(set(5, &[0, 2, 4]).to_string(), "{0,2,4}");
        assert_eq!(PointSet::empty(3).to_string(), "{}");
    }
}
