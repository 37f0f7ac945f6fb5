use cusped_spectra::hyperbolic::*;
use std::collections::BTreeMap;

type M = [i64; 4];

fn mul(x: &M, y: &M) -> M {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

// letters 0 = A, 1 = A⁻¹, 2 = B, 3 = B⁻¹
const GENS: [M; 4] = [[1, 2, 0, 1], [1, -2, 0, 1], [1, 0, 2, 1], [1, 0, -2, 1]];

fn inv(l: u8) -> u8 {
    l ^ 1
}

/// Every cyclically reduced word of at most `max_len` letters whose trace has
/// absolute value in `(2, max_trace]`, grouped by that trace.
fn candidates(max_len: usize, max_trace: i64) -> BTreeMap<i64, Vec<Vec<u8>>> {
    fn rec(w: &mut Vec<u8>, m: M, max_len: usize, max_trace: i64, out: &mut BTreeMap<i64, Vec<Vec<u8>>>) {
        let n = w.len();
        if n > 0 && (n < 2 || w[0] != inv(w[n - 1])) {
            let t = (m[0] + m[3]).abs();
            if t > 2 && t <= max_trace {
                out.entry(t).or_default().push(w.clone());
            }
        }
        if n == max_len {
            return;
        }
        for l in 0..4u8 {
            if n > 0 && l == inv(w[n - 1]) {
                continue;
            }
            w.push(l);
            rec(w, mul(&m, &GENS[l as usize]), max_len, max_trace, out);
            w.pop();
        }
    }
    let mut out = BTreeMap::new();
    rec(&mut Vec::new(), [1, 0, 0, 1], max_len, max_trace, &mut out);
    out
}

fn rotations(w: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    (0..w.len()).map(move |s| w[s..].iter().chain(&w[..s]).copied().collect())
}

fn inverse_word(w: &[u8]) -> Vec<u8> {
    w.iter().rev().map(|&l| inv(l)).collect()
}

/// Cyclically reduced words are conjugate exactly when they are rotations of
/// each other; `w` and `w⁻¹` give the same unoriented geodesic.
fn same_class(u: &[u8], v: &[u8]) -> bool {
    u.len() == v.len() && {
        let vi = inverse_word(v);
        rotations(u).any(|r| r == v || r == vi)
    }
}

fn is_proper_power(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).any(|d| n.is_multiple_of(d) && (0..n).all(|i| w[i] == w[(i + d) % n]))
}

fn dedup_count(words: Vec<Vec<u8>>) -> usize {
    let mut reps: Vec<Vec<u8>> = Vec::new();
    for w in words {
        if is_proper_power(&w) {
            continue;
        }
        if !reps.iter().any(|r| same_class(r, &w)) {
            reps.push(w);
        }
    }
    reps.len()
}

/// Primitive unoriented classes per trace among words of at most `max_len` letters.
fn brute_force_words(max_len: usize, max_trace: i64) -> BTreeMap<i64, usize> {
    candidates(max_len, max_trace)
        .into_iter()
        .map(|(t, words)| (t, dedup_count(words)))
        .collect()
}

fn eval(w: &[u8]) -> M {
    w.iter().fold([1, 0, 0, 1], |m, &l| mul(&m, &GENS[l as usize]))
}

/// Word in `A, B` for `±m ∈ Γ(2)` by the Euclidean algorithm on the first column.
fn to_word(m: M) -> Vec<u8> {
    let mut cur = if m[0].rem_euclid(4) == 1 { m } else { m.map(|x| -x) };
    let mut out = Vec::new();
    let push = |out: &mut Vec<u8>, pos: u8, k: i64| {
        for _ in 0..k.abs() {
            out.push(if k > 0 { pos } else { pos + 1 });
        }
    };
    while cur[2] != 0 {
        if cur[0].abs() > cur[2].abs() {
            let k = (cur[0] as f64 / (2 * cur[2]) as f64).round() as i64;
            cur = [cur[0] - 2 * k * cur[2], cur[1] - 2 * k * cur[3], cur[2], cur[3]];
            push(&mut out, 0, k);
        } else {
            let k = (cur[2] as f64 / (2 * cur[0]) as f64).round() as i64;
            cur = [cur[0], cur[1], cur[2] - 2 * k * cur[0], cur[3] - 2 * k * cur[1]];
            push(&mut out, 2, k);
        }
    }
    assert_eq!((cur[0], cur[3]), (1, 1));
    push(&mut out, 0, cur[1] / 2);
    // free and cyclic reduction
    let mut red: Vec<u8> = Vec::new();
    for l in out {
        if red.last() == Some(&inv(l)) {
            red.pop();
        } else {
            red.push(l);
        }
    }
    while red.len() >= 2 && red[0] == inv(red[red.len() - 1]) {
        red.pop();
        red.remove(0);
    }
    red
}

/// Primitive unoriented classes of `Γ(2)` per trace: every hyperbolic class of
/// `PSL(2, Z)` contains a matrix with nonnegative entries, and the `Γ(2)`
/// classes inside it are its conjugates by the six cosets.
fn brute_force_matrices(max_trace: i64) -> BTreeMap<i64, usize> {
    let cosets: [M; 6] = [[1, 0, 0, 1], [1, 1, 0, 1], [1, 0, 1, 1], [2, 1, 1, 1], [1, 1, 1, 2], [0, -1, 1, 0]];
    let inverse = |g: &M| [g[3], -g[1], -g[2], g[0]];
    let mut out = BTreeMap::new();
    for t in 3..=max_trace {
        let mut words = Vec::new();
        for a in 1..t {
            let d = t - a;
            let bc = a * d - 1;
            for b in 1..=bc {
                if bc % b != 0 {
                    continue;
                }
                let m = [a, b, bc / b, d];
                if m[1] % 2 != 0 || m[2] % 2 != 0 {
                    continue;
                }
                for g in &cosets {
                    let c = mul(&mul(g, &m), &inverse(g));
                    let w = to_word(c);
                    let back = eval(&w);
                    assert_eq!((back[0] + back[3]).abs(), t);
                    words.push(w);
                }
            }
        }
        let n = dedup_count(words);
        if n > 0 {
            out.insert(t, n);
        }
    }
    out
}

fn counts_by_trace(s: &LengthSpectrum) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for c in &s.classes {
        *out.entry(c.trace.round() as i64).or_insert(0) += c.multiplicity as usize;
    }
    out
}

const L: f64 = 8.0;

fn trace_bound(l: f64) -> i64 {
    (2.0 * (l / 2.0).cosh()).floor() as i64
}

#[test]
fn word_enumeration_matches_brute_force_words() {
    let oracle = brute_force_words(12, trace_bound(L));
    let by_words = enumerate_length_spectrum(GroupPreset::ThricePuncturedSphere, L, 12).unwrap();
    assert_eq!(counts_by_trace(&by_words), oracle);
    // words of 12 letters do not reach every class of length 8
    assert!(!by_words.complete);
}

#[test]
fn class_counts_match_matrix_brute_force() {
    let oracle = brute_force_matrices(trace_bound(L));
    let by_trace = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, L).unwrap();
    assert!(by_trace.complete);
    assert_eq!(counts_by_trace(&by_trace), oracle);
    let total: usize = oracle.values().sum();
    assert_eq!(by_trace.class_count(), total as u64);
    let short = brute_force_words(12, trace_bound(L));
    assert!(short.values().sum::<usize>() < total);
}

#[test]
fn word_enumeration_certifies_small_cutoffs() {
    let a = enumerate_length_spectrum(GroupPreset::ThricePuncturedSphere, 6.0, 10).unwrap();
    let b = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, 6.0).unwrap();
    assert!(a.complete);
    assert_eq!(counts_by_trace(&a), counts_by_trace(&b));
    assert_eq!(counts_by_trace(&b), brute_force_matrices(trace_bound(6.0)));
}

#[test]
fn systole() {
    let s = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, L).unwrap();
    let want = 2.0 * 3f64.acosh();
    assert!((s.systole().unwrap() - want).abs() < 1e-12);
    assert_eq!(s.classes[0].multiplicity, 3);
}

#[test]
fn parabolic_classes_never_appear() {
    for s in [
        enumerate_by_trace(GroupPreset::ThricePuncturedSphere, L).unwrap(),
        enumerate_length_spectrum(GroupPreset::ThricePuncturedSphere, 6.0, 10).unwrap(),
        enumerate_length_spectrum(GroupPreset::OncePuncturedTorus, 6.0, 8).unwrap(),
    ] {
        assert!(s.classes.iter().all(|c| c.trace > 2.0 && c.length > 0.0));
    }
    let [a, b] = GroupPreset::ThricePuncturedSphere.int_generators();
    for m in [a, b, a.mul(&b.inverse())] {
        assert_eq!(classify_trace(m.trace() as f64, false), Classification::Parabolic);
    }
}

#[test]
fn truncation_is_prefix() {
    let s = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, L).unwrap();
    let t = s.truncated(6.0);
    assert_eq!(t.class_count(), s.count_up_to(6.0));
    assert!(t.classes.iter().all(|c| c.length <= 6.0));
}

#[test]
fn representatives_evaluate_to_their_trace() {
    let s = enumerate_by_trace(GroupPreset::ThricePuncturedSphere, 6.0).unwrap();
    let gens = GroupPreset::ThricePuncturedSphere.int_generators();
    for c in &s.classes {
        let m = c.representative.evaluate(&gens);
        assert_eq!(m.trace().abs() as f64, c.trace);
        assert!((length_from_trace(c.trace).unwrap() - c.length).abs() < 1e-12);
    }
}
