//! Permutations of `{0, …, n-1}` stored as image sequences.
//!
//! Points are 0-indexed internally; all textual I/O (cycle notation) is
//! 1-indexed. Actions are right actions throughout: `compose(p, q)` applies
//! `p` first, then `q`, so that `a.apply_through(&[p, q]) = q(p(a))`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, degree-1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from an image sequence, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n || seen[i] {
                return Err(Error::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// `self` followed by `other` (right action: points move through `self` first).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&m| other.images[m as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Conjugate `g^-1 * self * g`, i.e. the action of `self` relabelled by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g^-1 self g)(a) = g(self(g^-1(a))); build directly to skip one pass.
        let mut images = vec![0u32; self.degree()];
        for (a, &ga) in g.images.iter().enumerate() {
            images[ga as usize] = g.images[self.images[a] as usize];
        }
        Permutation { images }
    }

    pub fn power(&self, mut e: i64) -> Permutation {
        let mut base = if e < 0 {
            e = -e;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Points fixed by this permutation (0-indexed).
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i as u32 == im)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn fix_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i as u32 == im)
            .count()
    }

    /// Cycle decomposition, fixed points omitted, each cycle starting at its
    /// least point, cycles sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    /// Number of cycles on all points, counting fixed points as 1-cycles.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
            }
        }
        count
    }

    /// Multiset of cycle lengths ≥ 2, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }

    /// Element order (lcm of cycle lengths). Errors on u64 overflow, which is
    /// unreachable at the degrees this crate caps at.
    pub fn element_order(&self) -> Result<u64> {
        let mut ord: u64 = 1;
        for c in self.cycle_type() {
            let l = c as u64;
            let g = gcd_u64(ord, l);
            ord = ord
                .checked_mul(l / g)
                .ok_or(Error::Overflow("element order"))?;
        }
        Ok(ord)
    }

    /// Parity: true for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Builds from disjoint-cycle notation with 1-indexed points, e.g.
    /// `(1,2,3)(4,5)`. The empty string and `()` denote the identity.
    pub fn from_cycles_str(s: &str, degree: usize) -> Result<Permutation> {
        let cycles = parse_cycles(s)?;
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in &cycles {
            for (k, &pt) in cyc.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::Parse(format!(
                        "point {pt} out of range 1..={degree}"
                    )));
                }
                let from = pt - 1;
                if touched[from] {
                    return Err(Error::Parse(format!("point {pt} repeated in cycles")));
                }
                touched[from] = true;
                let to = cyc[(k + 1) % cyc.len()] - 1;
                images[from] = to as u32;
            }
        }
        Permutation::from_images(images)
    }

    /// Canonical cycle-notation string with 1-indexed points; `()` for identity.
    pub fn to_cycles_str(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for cyc in cycles {
            s.push('(');
            for (k, p) in cyc.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }

    /// Compact byte key for hashing and canonical ordering in element sets.
    pub fn packed(&self) -> Box<[u8]> {
        let n = self.degree();
        if n <= 1 << 8 {
            self.images.iter().map(|&x| x as u8).collect()
        } else if n <= 1 << 16 {
            let mut v = Vec::with_capacity(2 * n);
            for &x in &self.images {
                v.extend_from_slice(&(x as u16).to_le_bytes());
            }
            v.into_boxed_slice()
        } else {
            let mut v = Vec::with_capacity(4 * n);
            for &x in &self.images {
                v.extend_from_slice(&x.to_le_bytes());
            }
            v.into_boxed_slice()
        }
    }

    pub fn from_packed(bytes: &[u8], degree: usize) -> Permutation {
        let images = if degree <= 1 << 8 {
            bytes.iter().map(|&b| b as u32).collect()
        } else if degree <= 1 << 16 {
            bytes
                .chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                .collect()
        } else {
            bytes
                .chunks_exact(4)
                .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect()
        };
        Permutation { images }
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images.cmp(&other.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles_str())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.to_cycles_str())
    }
}

/// Parses `(1,2,3)(4,5)` into 1-indexed cycles. Whitespace is ignored.
fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        if c != '(' {
            return Err(Error::Parse(format!("expected '(' in cycles, found {c:?}")));
        }
        let mut cyc = Vec::new();
        let mut num = String::new();
        loop {
            match chars.next() {
                Some(d) if d.is_ascii_digit() => num.push(d),
                Some(',') => {
                    if num.is_empty() {
                        return Err(Error::Parse("empty entry in cycle".into()));
                    }
                    cyc.push(num.parse::<usize>().unwrap());
                    num.clear();
                }
                Some(')') => {
                    if !num.is_empty() {
                        cyc.push(num.parse::<usize>().unwrap());
                    }
                    break;
                }
                Some(d) => {
                    return Err(Error::Parse(format!("unexpected {d:?} in cycle")));
                }
                None => return Err(Error::Parse("unterminated cycle".into())),
            }
        }
        if cyc.len() == 1 {
            return Err(Error::Parse("cycles of length 1 are not allowed".into()));
        }
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
    }
    Ok(cycles)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
