//! Certified enumeration of the primitive length spectrum of the level-2
//! congruence group `⟨A, B⟩ = Γ(2)/±1` by trace.
//!
//! Every hyperbolic class of `PSL(2, Z)` contains a positive word in
//! `R = [[1,1],[0,1]]`, `L = [[1,0],[1,1]]`, unique up to cyclic rotation,
//! and the trace of a positive product never decreases when a letter is
//! appended. Classes of `Γ(2)` are the `PSL(2, Z)` classes of elements of
//! `Γ(2)` split by conjugation with the six coset representatives of
//! `Γ(2) \ PSL(2, Z)`. Each element is then written as a word in `A, B`.

use super::moebius::{length_from_trace, IntMatrix};
use super::spectrum::{GroupPreset, LengthSpectrum, RawClass};
use super::word::{Letter, Word};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashSet;

const R: IntMatrix = IntMatrix::new(1, 1, 0, 1);
const L: IntMatrix = IntMatrix::new(1, 0, 1, 1);

fn coset_reps() -> [IntMatrix; 6] {
    let s = IntMatrix::new(0, -1, 1, 0);
    [IntMatrix::IDENTITY, R, L, R.mul(&L), L.mul(&R), s]
}

fn in_gamma2(m: &IntMatrix) -> bool {
    m.b.rem_euclid(2) == 0 && m.c.rem_euclid(2) == 0
}

/// Writes `m ∈ Γ(2)` (either sign) as a word in `A = [[1,2],[0,1]]`,
/// `B = [[1,0],[2,1]]`.
pub fn gamma2_word(m: &IntMatrix) -> Result<Word> {
    if !in_gamma2(m) || m.det() != 1 {
        return Err(Error::InvalidArgument(format!("{m:?} is not in Γ(2)")));
    }
    // Pick the sign lying in the free group: a ≡ 1 (mod 4).
    let mut cur = if m.a.rem_euclid(4) == 1 { *m } else { m.neg() };
    let mut letters = Vec::new();
    let push_pow = |letters: &mut Vec<Letter>, pos: Letter, k: i128| {
        let l = if k > 0 { pos } else { pos.inverse() };
        for _ in 0..k.unsigned_abs() {
            letters.push(l);
        }
    };
    while cur.c != 0 {
        if cur.a.abs() > cur.c.abs() {
            // cur = A^k cur', cur' = A^{-k} cur; reduce |a - 2kc| below |c|.
            let k = nearest_div(cur.a, 2 * cur.c);
            cur = IntMatrix::new(cur.a - 2 * k * cur.c, cur.b - 2 * k * cur.d, cur.c, cur.d);
            push_pow(&mut letters, Letter::A, k);
        } else {
            let k = nearest_div(cur.c, 2 * cur.a);
            cur = IntMatrix::new(cur.a, cur.b, cur.c - 2 * k * cur.a, cur.d - 2 * k * cur.b);
            push_pow(&mut letters, Letter::B, k);
        }
    }
    debug_assert_eq!(cur.a, 1);
    push_pow(&mut letters, Letter::A, cur.b / 2);
    let w = Word::new(letters).freely_reduced();
    debug_assert!({
        let back = w.evaluate(&GroupPreset::ThricePuncturedSphere.int_generators());
        back == *m || back == m.neg()
    });
    Ok(w)
}

fn nearest_div(p: i128, q: i128) -> i128 {
    let f = p as f64 / q as f64;
    f.round() as i128
}

/// Positive `R`/`L` products with trace at most `t_max`, containing both
/// letters and lying in `Γ(2)`, one per cyclic rotation class.
fn positive_words(t_max: i128) -> Vec<(Vec<bool>, IntMatrix)> {
    fn rec(
        word: &mut Vec<bool>,
        m: IntMatrix,
        t_max: i128,
        out: &mut Vec<(Vec<bool>, IntMatrix)>,
    ) {
        for &is_r in &[true, false] {
            let next = m.mul(if is_r { &R } else { &L });
            if next.trace() > t_max {
                continue;
            }
            word.push(is_r);
            // A pure power R^n or L^n has trace 2; appending the other letter
            // gives trace n + 2.
            if word.len() as i128 > t_max && word.iter().all(|&x| x == is_r) {
                word.pop();
                continue;
            }
            let has_both = word.iter().any(|&x| x) && word.iter().any(|&x| !x);
            if has_both && in_gamma2(&next) && is_least_rotation(word) {
                out.push((word.clone(), next));
            }
            rec(word, next, t_max, out);
            word.pop();
        }
    }
    // Shard on the first two letters.
    let starts: Vec<Vec<bool>> = vec![vec![true, true], vec![true, false], vec![false, true], vec![false, false]];
    starts
        .par_iter()
        .map(|start| {
            let mut m = IntMatrix::IDENTITY;
            for &x in start {
                m = m.mul(if x { &R } else { &L });
            }
            let mut out = Vec::new();
            if m.trace() > t_max {
                return out;
            }
            let mut w = start.clone();
            if w[0] != w[1] && in_gamma2(&m) && is_least_rotation(&w) {
                out.push((w.clone(), m));
            }
            rec(&mut w, m, t_max, &mut out);
            out
        })
        .flatten()
        .collect()
}

fn is_least_rotation(w: &[bool]) -> bool {
    let n = w.len();
    // `true` (R) sorts before `false` (L).
    let key = |x: bool| if x { 0u8 } else { 1u8 };
    'outer: for s in 1..n {
        for i in 0..n {
            let a = key(w[(s + i) % n]);
            let b = key(w[i]);
            if a < b {
                return false;
            }
            if a > b {
                continue 'outer;
            }
        }
    }
    true
}

/// Complete primitive non-oriented length spectrum up to `cutoff`. Only the
/// thrice-punctured sphere preset is supported.
pub fn enumerate_by_trace(group: GroupPreset, cutoff: f64) -> Result<LengthSpectrum> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidArgument(format!("cutoff must be positive, got {cutoff}")));
    }
    if group != GroupPreset::ThricePuncturedSphere {
        return Err(Error::InvalidArgument(format!(
            "trace enumeration is only available for thrice_punctured_sphere, not {group}"
        )));
    }
    let raw = raw_classes_by_trace(cutoff)?;
    Ok(LengthSpectrum::from_raw(raw, cutoff, group, true))
}

pub(crate) fn raw_classes_by_trace(cutoff: f64) -> Result<Vec<RawClass>> {
    let t_max = (2.0 * (cutoff / 2.0).cosh() * (1.0 + 1e-12)).floor() as i128;
    let reps = coset_reps();
    let reps_inv: Vec<IntMatrix> = reps.iter().map(|g| g.inverse()).collect();
    let words = positive_words(t_max);
    let candidates: Vec<(Word, i128)> = words
        .par_iter()
        .flat_map_iter(|(_, m)| {
            reps.iter().zip(&reps_inv).map(move |(g, gi)| {
                let c = g.mul(m).mul(gi);
                let w = gamma2_word(&c).expect("conjugate stays in Γ(2)");
                (w.canonical(), m.trace())
            })
        })
        .collect();
    let mut seen = HashSet::new();
    let mut raw = Vec::new();
    for (w, tr) in candidates {
        if !w.is_primitive() || !seen.insert(w.clone()) {
            continue;
        }
        let length = length_from_trace(tr as f64)?;
        if length <= cutoff {
            raw.push(RawClass {
                word: w,
                trace: tr,
                length,
            });
        }
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::enumerate_length_spectrum;

    #[test]
    fn words_roundtrip() {
        let g = GroupPreset::ThricePuncturedSphere.int_generators();
        for s in ["AB", "AAb", "ABaBBa", "bbbA", "aaaaBAb"] {
            let w: Word = s.parse().unwrap();
            let m = w.evaluate(&g);
            assert_eq!(gamma2_word(&m).unwrap(), w);
        }
    }

    #[test]
    fn matches_word_enumeration_when_that_is_complete() {
        let a = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, 4.0).unwrap();
        let b = enumerate_length_spectrum(GroupPreset::ThricePuncturedSphere, 4.0, 8).unwrap();
        assert!(b.complete);
        assert_eq!(a.classes, b.classes);
    }

    #[test]
    fn systole_multiplicity() {
        let s = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, 6.0).unwrap();
        assert_eq!(s.classes[0].multiplicity, 3);
        assert_eq!(s.classes[0].trace, 6.0);
    }
}
