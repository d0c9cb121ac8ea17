//! Exponent vectors `(a_-1, .., a_-n; a_1, .., a_n)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Largest supported rank. Every rank used by the verification suites is ≤ 3.
pub const MAX_RANK: usize = 4;

/// Exponent vector in `Z^{2n}`, stored inline so that it is `Copy`.
///
/// Positions are addressed by a signed index `i ∈ {±1, .., ±n}`;
/// the negative positions come first, matching `(a_-1, .., a_-n, a_1, .., a_n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    rank: u8,
    c: [i16; 2 * MAX_RANK],
}

impl MultiIndex {
    /// Builds an index from its `2n` components in storage order.
    ///
    /// Panics on odd length or a rank above [`MAX_RANK`].
    pub fn new(components: &[i64]) -> MultiIndex {
        assert!(components.len().is_multiple_of(2) && !components.is_empty(), "need 2n components");
        let n = components.len() / 2;
        assert!(n <= MAX_RANK, "rank {n} exceeds MAX_RANK");
        let mut c = [0i16; 2 * MAX_RANK];
        for (dst, &v) in c.iter_mut().zip(components) {
            *dst = i16::try_from(v).expect("exponent out of range");
        }
        MultiIndex { rank: n as u8, c }
    }

    pub fn zero(n: usize) -> MultiIndex {
        assert!((1..=MAX_RANK).contains(&n));
        MultiIndex { rank: n as u8, c: [0; 2 * MAX_RANK] }
    }

    /// The unit vector `ε_i` for a signed position `i`.
    pub fn epsilon(n: usize, i: i32) -> MultiIndex {
        let mut m = MultiIndex::zero(n);
        m.set(i, 1);
        m
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn components(&self) -> &[i16] {
        &self.c[..2 * self.rank as usize]
    }

    fn slot(&self, i: i32) -> usize {
        let n = self.rank as i32;
        assert!(i != 0 && i.abs() <= n, "signed position {i} out of range for rank {n}");
        if i < 0 {
            (-i - 1) as usize
        } else {
            (n + i - 1) as usize
        }
    }

    /// Component at signed position `i`.
    pub fn get(&self, i: i32) -> i64 {
        self.c[self.slot(i)] as i64
    }

    pub fn set(&mut self, i: i32, v: i64) {
        let s = self.slot(i);
        self.c[s] = i16::try_from(v).expect("exponent out of range");
    }

    pub fn with(mut self, i: i32, delta: i64) -> MultiIndex {
        let v = self.get(i) + delta;
        self.set(i, v);
        self
    }

    /// `|α|`, the sum of all components.
    pub fn degree(&self) -> i64 {
        self.components().iter().map(|&v| v as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|&v| v == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.components().iter().all(|&v| v >= 0)
    }

    /// Every component in `0..bound`.
    pub fn below(&self, bound: i64) -> bool {
        self.components().iter().all(|&v| v >= 0 && (v as i64) < bound)
    }

    /// Signed positions `-1, .., -n, 1, .., n` in storage order.
    pub fn positions(n: usize) -> impl Iterator<Item = i32> {
        let n = n as i32;
        (1..=n).map(|i| -i).chain(1..=n)
    }

    /// `α!`, the product of component factorials. Requires a nonnegative index.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.components()
            .iter()
            .map(|&v| crate::scalar::factorial(v as u64))
            .product()
    }

    /// Every index with components in `0..=max`, in canonical order.
    pub fn all_below(n: usize, max: i64) -> Vec<MultiIndex> {
        let mut out = vec![];
        let total = 2 * n;
        let mut cur = vec![0i64; total];
        loop {
            out.push(MultiIndex::new(&cur));
            let mut pos = 0;
            loop {
                if pos == total {
                    out.sort();
                    return out;
                }
                if cur[pos] < max {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 0;
                pos += 1;
            }
        }
    }

    /// All indices with `Σ|α_j| ≤ bound`.
    pub fn all_with_abs_degree(n: usize, bound: i64, nonnegative: bool) -> Vec<MultiIndex> {
        let lo = if nonnegative { 0 } else { -bound };
        let mut out = vec![];
        let total = 2 * n;
        let mut cur = vec![lo; total];
        loop {
            if cur.iter().map(|v| v.abs()).sum::<i64>() <= bound {
                out.push(MultiIndex::new(&cur));
            }
            let mut pos = 0;
            loop {
                if pos == total {
                    out.sort();
                    return out;
                }
                if cur[pos] < bound {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = lo;
                pos += 1;
            }
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.components().cmp(other.components()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for MultiIndex {
    type Output = MultiIndex;
    fn add(mut self, o: MultiIndex) -> MultiIndex {
        assert_eq!(self.rank, o.rank);
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a += b;
        }
        self
    }
}

impl Sub for MultiIndex {
    type Output = MultiIndex;
    fn sub(mut self, o: MultiIndex) -> MultiIndex {
        assert_eq!(self.rank, o.rank);
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a -= b;
        }
        self
    }
}

impl Mul<MultiIndex> for i64 {
    type Output = MultiIndex;
    fn mul(self, mut m: MultiIndex) -> MultiIndex {
        for a in m.c.iter_mut() {
            *a = i16::try_from(*a as i64 * self).expect("exponent out of range");
        }
        m
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank as usize;
        let c = self.components();
        write!(f, "[")?;
        for (j, v) in c[..n].iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";")?;
        for (j, v) in c[n..].iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_accessors_follow_epsilon_convention() {
        let n = 3;
        for i in MultiIndex::positions(n) {
            let e = MultiIndex::epsilon(n, i);
            for j in MultiIndex::positions(n) {
                assert_eq!(e.get(j), (i == j) as i64);
            }
        }
        let a = MultiIndex::new(&[1, 2, 3, 4]);
        assert_eq!(a.get(-1), 1);
        assert_eq!(a.get(-2), 2);
        assert_eq!(a.get(1), 3);
        assert_eq!(a.get(2), 4);
        assert_eq!(a.components().len(), 4);
    }

    #[test]
    fn graded_order() {
        let a = MultiIndex::new(&[0, 2]);
        let b = MultiIndex::new(&[1, 0]);
        assert!(b < a);
        let c = MultiIndex::new(&[2, 0]);
        assert!(a < c);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_below(1, 2).len(), 9);
        assert_eq!(MultiIndex::all_below(2, 2).len(), 81);
        // |a|+|b| <= 1 in Z^2: 0 and four unit vectors
        assert_eq!(MultiIndex::all_with_abs_degree(1, 1, false).len(), 5);
    }

    #[test]
    fn display() {
        assert_eq!(MultiIndex::new(&[1, 0, 2, 3]).to_string(), "[1,0;2,3]");
    }
}
