use super::moebius::IntMatrix;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Letter of the alphabet `{A, A⁻¹, B, B⁻¹}`, printed as `A a B b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A = 0,
    AInv = 1,
    B = 2,
    BInv = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::AInv => 'a',
            Letter::B => 'B',
            Letter::BInv => 'b',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'A' => Some(Letter::A),
            'a' => Some(Letter::AInv),
            'B' => Some(Letter::B),
            'b' => Some(Letter::BInv),
            _ => None,
        }
    }
}

/// Word in the free group on two generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        Word::new(v).freely_reduced()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && (self.letters.len() < 2
                || self.letters[0] != self.letters[self.letters.len() - 1].inverse())
    }

    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word::new(out)
    }

    /// Freely and cyclically reduced form (a conjugate of `self`).
    pub fn cyclically_reduced(&self) -> Word {
        let w = self.freely_reduced().letters;
        let (mut i, mut j) = (0usize, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word::new(w[i..j].to_vec())
    }

    /// Lexicographically least cyclic rotation.
    pub fn least_rotation(&self) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let mut best = 0usize;
        for s in 1..n {
            if cmp_rotations(&self.letters, s, best) == Ordering::Less {
                best = s;
            }
        }
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.letters[best..]);
        v.extend_from_slice(&self.letters[..best]);
        Word::new(v)
    }

    /// Canonical representative of the non-oriented conjugacy class: the least
    /// cyclic rotation of the cyclic reduction of `self` or of its inverse.
    pub fn canonical(&self) -> Word {
        let r = self.cyclically_reduced();
        let a = r.least_rotation();
        let b = r.inverse().least_rotation();
        a.min(b)
    }

    /// Whether a cyclically reduced word already is its own canonical form.
    pub fn is_canonical(&self) -> bool {
        let n = self.letters.len();
        let l = &self.letters;
        for s in 1..n {
            if cmp_rotations(l, s, 0) == Ordering::Less {
                return false;
            }
        }
        let inv = self.inverse();
        for s in 0..n {
            match cmp_rotations_between(&inv.letters, s, l) {
                Ordering::Less => return false,
                _ => continue,
            }
        }
        true
    }

    /// Shortest `v` with `self = v^k`; returns `(v, k)`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.letters.len();
        for d in 1..=n / 2 {
            if n.is_multiple_of(d) && (d..n).all(|i| self.letters[i] == self.letters[i - d]) {
                return (Word::new(self.letters[..d].to_vec()), n / d);
            }
        }
        (self.clone(), 1)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.letters);
        }
        Word::new(v).freely_reduced()
    }

    /// Exact image under the generator pair.
    pub fn evaluate(&self, gens: &[IntMatrix; 2]) -> IntMatrix {
        let ginv = [gens[0].inverse(), gens[1].inverse()];
        let mut m = IntMatrix::IDENTITY;
        for &l in &self.letters {
            let g = match l {
                Letter::A => &gens[0],
                Letter::AInv => &ginv[0],
                Letter::B => &gens[1],
                Letter::BInv => &ginv[1],
            };
            m = m.mul(g);
        }
        m
    }
}

fn cmp_rotations(l: &[Letter], s: usize, t: usize) -> Ordering {
    let n = l.len();
    for i in 0..n {
        let o = l[(s + i) % n].cmp(&l[(t + i) % n]);
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn cmp_rotations_between(a: &[Letter], s: usize, b: &[Letter]) -> Ordering {
    let n = a.len();
    for i in 0..n {
        let o = a[(s + i) % n].cmp(&b[i]);
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| {
                Letter::from_char(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad letter `{c}` in word")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reductions() {
        assert_eq!(w("AaB").freely_reduced(), w("B"));
        assert_eq!(w("bABAB").cyclically_reduced(), w("ABA"));
        assert!(w("AB").is_cyclically_reduced());
        assert!(!w("ABa").is_cyclically_reduced());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(w("BA").canonical(), w("AB"));
        // (AB)^{-1} = ba, rotations ab, ba; AB < ab.
        assert_eq!(w("ba").canonical(), w("AB"));
        assert!(w("AB").is_canonical());
        assert!(!w("BA").is_canonical());
        assert!(!w("ba").is_canonical());
    }

    #[test]
    fn primitive_root() {
        assert_eq!(w("ABAB").primitive_root(), (w("AB"), 2));
        assert_eq!(w("AAb").primitive_root(), (w("AAb"), 1));
    }
}
