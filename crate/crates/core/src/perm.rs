//! Permutations of `{0, …, n-1}` stored as image arrays.
//!
//! # Conventions
//!
//! Permutations act on the **right**. `p.then(&q)` (also [`compose`]) is the
//! permutation that applies `p` first and `q` second, so
//! `p.then(&q).apply(i) == q.apply(p.apply(i))`. A written product such as
//! `(1 2)(1 3)…(1 r)` is therefore evaluated left to right.
//!
//! Conjugation is `p^g = g⁻¹·p·g` in the same convention, which makes it a
//! right action: `(p^g)^h = p^(g·h)`.
//!
//! Points are 0-based in memory and 1-based in cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported permutation degree.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from an image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, max: MAX_DEGREE });
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::PointOutOfRange { point: img + 1, degree: n });
            }
            if seen[img] {
                return Err(Error::RepeatedPoint { point: img + 1 });
            }
            seen[img] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &pt in *cycle {
                if pt >= degree {
                    return Err(Error::PointOutOfRange { point: pt + 1, degree });
                }
                if touched[pt] {
                    return Err(Error::RepeatedPoint { point: pt + 1 });
                }
                touched[pt] = true;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Self { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// Apply `self`, then `other`. Panics on a degree mismatch; use
    /// [`compose`] for the checked form.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹·self·g`. Panics on a degree mismatch.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch");
        // i ↦ g(self(g⁻¹(i))), written pointwise: g(i) ↦ g(self(i)).
        let mut images = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[img as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point.
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
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths (fixed points included), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn is_transposition(&self) -> bool {
        let cycles = self.cycles();
        cycles.len() == 1 && cycles[0].len() == 2
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i as u32 != img)
            .map(|(i, _)| i)
    }
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn num_lcm(a: u64, b: u64) -> u64 {
    a / num_gcd(a, b) * b
}

/// Apply `p` first, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    check_degrees(p, q)?;
    Ok(p.then(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

/// Right conjugation `p^g = g⁻¹·p·g`.
pub fn conjugate(p: &Permutation, g: &Permutation) -> Result<Permutation> {
    check_degrees(p, g)?;
    Ok(p.conjugate_by(g))
}

pub(crate) fn check_degrees(p: &Permutation, q: &Permutation) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(())
}

/// Parses 1-based disjoint-cycle notation such as `"(1 2)(3 4 5)"`.
/// `"()"` and the empty string denote the identity. Points may be separated
/// by whitespace or commas.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    if degree == 0 {
        return Err(Error::MalformedCycle {
            offset: 0,
            reason: "degree must be positive".into(),
        });
    }
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree, max: MAX_DEGREE });
    }
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let bytes = text.as_bytes();
    let mut pos = 0;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(Error::MalformedCycle {
                offset: pos,
                reason: format!("expected '(' but found {:?}", char_at(text, pos)),
            });
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(Error::MalformedCycle {
                    offset: pos,
                    reason: "unterminated cycle".into(),
                });
            }
            match bytes[pos] {
                b')' => {
                    pos += 1;
                    break;
                }
                b',' => pos += 1,
                b'0'..=b'9' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let point: usize = text[start..pos].parse().map_err(|_| Error::MalformedCycle {
                        offset: start,
                        reason: "point number too large".into(),
                    })?;
                    if point == 0 || point > degree {
                        return Err(Error::PointOutOfRange { point, degree });
                    }
                    if used[point - 1] {
                        return Err(Error::RepeatedPoint { point });
                    }
                    used[point - 1] = true;
                    cycle.push(point - 1);
                }
                _ => {
                    return Err(Error::MalformedCycle {
                        offset: pos,
                        reason: format!("unexpected character {:?}", char_at(text, pos)),
                    })
                }
            }
        }
        for (k, &pt) in cycle.iter().enumerate() {
            images[pt] = cycle[(k + 1) % cycle.len()] as u32;
        }
    }
    Ok(Permutation { images })
}

fn char_at(text: &str, pos: usize) -> char {
    text.get(pos..).and_then(|s| s.chars().next()).unwrap_or('?')
}

/// 1-based cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}
