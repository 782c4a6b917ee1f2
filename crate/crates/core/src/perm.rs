//! Permutations of `{0, .., n-1}`.
//!
//! Internally points are 0-based. The `Display` impl and the 1-based
//! constructors speak the usual `1..n` notation used in the file formats.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &im) in images.iter().enumerate() {
            if im >= n {
                return Err(Error::Input(format!(
                    "image {} of point {} is out of range 1..{}",
                    im + 1,
                    i + 1,
                    n
                )));
            }
            if std::mem::replace(&mut seen[im], true) {
                return Err(Error::Input(format!(
                    "value {} appears twice in image table",
                    im + 1
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from a 1-based image table.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero = images
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::Input("image tables are 1-based; found 0".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(zero)
    }

    /// Builds a permutation of degree `n` from 1-based disjoint cycles,
    /// e.g. `&[&[1, 2, 3, 4], &[5]]` for `(1,2,3,4)(5)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::Input(format!(
                        "cycle entry {p} out of range 1..{n}"
                    )));
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(Error::Input(format!("point {p} appears in two cycles")));
                }
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > n {
                    return Err(Error::Input(format!(
                        "cycle entry {next} out of range 1..{n}"
                    )));
                }
                images[p - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based image table, as written in solution files.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// `self^k`; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Disjoint cycles including fixed points, each starting at its smallest
    /// element, sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted list of cycle lengths (fixed points count as length 1).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points written out, e.g. `(1,2,3,4)(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All permutations of degree `n` in lexicographic order of image tables.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    use itertools::Itertools;
    (0..n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_of_paper_notation() {
        let p = Permutation::from_cycles(5, &[&[1, 2, 3, 4], &[5]]).unwrap();
        assert_eq!(p.one_based(), vec![2, 3, 4, 1, 5]);
        assert_eq!(p.to_string(), "(1,2,3,4)(5)");
        assert_eq!(p.inverse().to_string(), "(1,4,3,2)(5)");
        assert_eq!(p.order(), 4);
        assert_eq!(p.cycle_type(), vec![1, 4]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let f = Permutation::from_cycles(4, &[&[1, 4], &[2, 3]]).unwrap();
        let g = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        // f(g(1)) = f(2) = 3
        assert_eq!(f.compose(&g).apply(0), 2);
        assert_eq!(f.compose(&g).to_string(), "(1,3)(2,4)");
        assert_eq!(f.pow(2), Permutation::identity(4));
        assert_eq!(g.pow(-3), g.inverse());
    }

    #[test]
    fn enumerates_lexicographically() {
        let all = all_permutations(3);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_identity());
    }
}
