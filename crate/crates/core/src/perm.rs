//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `p * q` applies `p` first and then `q`, so `i^(pq) = (i^p)^q`. This is the
//! convention of right cosets `Hg` and of coset tables, and it is the one the
//! cycle notation below is read in.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} outside degree {degree}",
                        a.max(b) + 1
                    )));
                }
                if touched[a as usize] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears in more than one cycle",
                        a + 1
                    )));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation with 1-based points, e.g. `(3,6)(4,7)(5,9)`.
    ///
    /// Whitespace is ignored; points inside a cycle may be separated by commas
    /// or spaces. `()` is the identity. When `degree` is `None` the largest
    /// point mentioned is used.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let max_point = cycles
            .iter()
            .flatten()
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0);
        let degree = match degree {
            Some(d) if d < max_point => {
                return Err(Error::InvalidPermutation(format!(
                    "point {max_point} exceeds declared degree {d}"
                )))
            }
            Some(d) => d,
            None => max_point,
        };
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of `point` under this permutation.
    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Self {
        other.inverse().then(self).then(other)
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let mut base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &x)| self.images[x as usize] == i as u32)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// The same permutation on a larger domain, fixing the new points.
    pub fn extend(&self, degree: usize) -> Self {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Action on the disjoint union of the two domains (`self` on the first
    /// block, `other` shifted onto the second).
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Permutation { images }
    }

    /// Cycle notation with 1-based points; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Permutation[{}]{}",
            self.degree(),
            self.to_cycle_string()
        )
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let chars = text.chars();
    let mut current: Option<Vec<u32>> = None;
    let mut number = String::new();

    let flush = |number: &mut String, current: &mut Option<Vec<u32>>| -> Result<()> {
        if number.is_empty() {
            return Ok(());
        }
        let value: u32 = number
            .parse()
            .map_err(|_| Error::InvalidPermutation(format!("bad point `{number}`")))?;
        if value == 0 {
            return Err(Error::InvalidPermutation(
                "points are 1-based; found 0".to_string(),
            ));
        }
        match current {
            Some(c) => c.push(value - 1),
            None => {
                return Err(Error::InvalidPermutation(format!(
                    "point {value} outside a cycle"
                )))
            }
        }
        number.clear();
        Ok(())
    };

    for c in chars {
        match c {
            '(' => {
                if current.is_some() {
                    return Err(Error::InvalidPermutation("nested `(`".to_string()));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut number, &mut current)?;
                let cycle = current
                    .take()
                    .ok_or_else(|| Error::InvalidPermutation("unmatched `)`".to_string()))?;
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != cycle.len() {
                    return Err(Error::InvalidPermutation(
                        "repeated point inside a cycle".to_string(),
                    ));
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            ',' => flush(&mut number, &mut current)?,
            w if w.is_whitespace() => flush(&mut number, &mut current)?,
            d if d.is_ascii_digit() => number.push(d),
            other => {
                return Err(Error::InvalidPermutation(format!(
                    "unexpected character `{other}`"
                )))
            }
        }
    }
    if current.is_some() {
        return Err(Error::InvalidPermutation("unterminated cycle".to_string()));
    }
    Ok(cycles)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
