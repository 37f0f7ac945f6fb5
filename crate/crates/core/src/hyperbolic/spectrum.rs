use super::moebius::{length_from_trace, IntMatrix, Moebius};
use super::word::{Letter, Word};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// Tolerance under which two lengths count as the same length.
pub const LENGTH_MERGE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupPreset {
    ThricePuncturedSphere,
    OncePuncturedTorus,
}

impl GroupPreset {
    pub fn id(&self) -> &'static str {
        match self {
            GroupPreset::ThricePuncturedSphere => "thrice_punctured_sphere",
            GroupPreset::OncePuncturedTorus => "once_punctured_torus",
        }
    }

    /// Integer generators `A`, `B`.
    pub fn int_generators(&self) -> [IntMatrix; 2] {
        match self {
            GroupPreset::ThricePuncturedSphere => {
                [IntMatrix::new(1, 2, 0, 1), IntMatrix::new(1, 0, 2, 1)]
            }
            GroupPreset::OncePuncturedTorus => {
                [IntMatrix::new(1, 1, 1, 2), IntMatrix::new(1, -1, -1, 2)]
            }
        }
    }
}

impl fmt::Display for GroupPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for GroupPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thrice_punctured_sphere" => Ok(GroupPreset::ThricePuncturedSphere),
            "once_punctured_torus" => Ok(GroupPreset::OncePuncturedTorus),
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }
}

/// Generator pair of a preset group.
pub fn preset_group(id: &str) -> Result<[Moebius; 2]> {
    let g: GroupPreset = id.parse()?;
    let [a, b] = g.int_generators();
    Ok([a.to_moebius(), b.to_moebius()])
}

/// One length of the primitive length spectrum together with the number of
/// non-oriented primitive classes realising it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicClass {
    pub representative: Word,
    pub trace: f64,
    pub length: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrum {
    pub classes: Vec<GeodesicClass>,
    pub cutoff: f64,
    pub group_id: String,
    pub complete: bool,
}

/// A single primitive class before merging by length.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RawClass {
    pub word: Word,
    pub trace: i128,
    pub length: f64,
}

impl LengthSpectrum {
    pub fn empty(cutoff: f64, group_id: &str, complete: bool) -> Self {
        LengthSpectrum {
            classes: Vec::new(),
            cutoff,
            group_id: group_id.to_string(),
            complete,
        }
    }

    /// Builds a spectrum from explicit `(length, multiplicity)` pairs; used for
    /// synthetic inputs.
    pub fn from_lengths(lengths: &[(f64, u32)], cutoff: f64, complete: bool) -> Result<Self> {
        let mut classes = Vec::new();
        for &(l, m) in lengths {
            if !(l > 0.0) || m == 0 {
                return Err(Error::InvalidArgument(format!(
                    "length {l} with multiplicity {m} is not admissible"
                )));
            }
            if l > cutoff {
                continue;
            }
            classes.push(GeodesicClass {
                representative: Word::default(),
                trace: 2.0 * (l / 2.0).cosh(),
                length: l,
                multiplicity: m,
            });
        }
        classes.sort_by(|a, b| a.length.total_cmp(&b.length));
        Ok(LengthSpectrum {
            classes,
            cutoff,
            group_id: "custom".to_string(),
            complete,
        })
    }

    /// Total number of primitive non-oriented classes.
    pub fn class_count(&self) -> u64 {
        self.classes.iter().map(|c| c.multiplicity as u64).sum()
    }

    /// Number of classes of length at most `l`.
    pub fn count_up_to(&self, l: f64) -> u64 {
        self.classes
            .iter()
            .take_while(|c| c.length <= l)
            .map(|c| c.multiplicity as u64)
            .sum()
    }

    pub fn systole(&self) -> Option<f64> {
        self.classes.first().map(|c| c.length)
    }

    /// Restriction to lengths `<= cutoff`.
    pub fn truncated(&self, cutoff: f64) -> LengthSpectrum {
        LengthSpectrum {
            classes: self
                .classes
                .iter()
                .filter(|c| c.length <= cutoff)
                .cloned()
                .collect(),
            cutoff: cutoff.min(self.cutoff),
            group_id: self.group_id.clone(),
            complete: self.complete,
        }
    }

    /// Writes `word,trace,length,multiplicity` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "word,trace,length,multiplicity")?;
        for c in &self.classes {
            writeln!(
                out,
                "{},{},{:.16e},{}",
                c.representative, c.trace, c.length, c.multiplicity
            )?;
        }
        Ok(())
    }

    pub(crate) fn from_raw(
        mut raw: Vec<RawClass>,
        cutoff: f64,
        group: GroupPreset,
        complete: bool,
    ) -> Self {
        raw.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.word.cmp(&b.word)));
        let mut classes: Vec<GeodesicClass> = Vec::new();
        for r in raw {
            match classes.last_mut() {
                Some(last) if (r.length - last.length).abs() <= LENGTH_MERGE_TOL => {
                    last.multiplicity += 1;
                }
                _ => classes.push(GeodesicClass {
                    representative: r.word,
                    trace: r.trace.abs() as f64,
                    length: r.length,
                    multiplicity: 1,
                }),
            }
        }
        LengthSpectrum {
            classes,
            cutoff,
            group_id: group.id().to_string(),
            complete,
        }
    }
}

/// Calls `f` on every cyclically reduced word of length `n` starting with `first`.
fn for_each_cyclic_word(n: usize, first: Letter, f: &mut impl FnMut(&[Letter])) {
    fn rec(buf: &mut Vec<Letter>, n: usize, f: &mut impl FnMut(&[Letter])) {
        if buf.len() == n {
            if n < 2 || buf[0] != buf[n - 1].inverse() {
                f(buf);
            }
            return;
        }
        let last = *buf.last().unwrap();
        for l in Letter::ALL {
            if l != last.inverse() {
                buf.push(l);
                rec(buf, n, f);
                buf.pop();
            }
        }
    }
    let mut buf = Vec::with_capacity(n);
    buf.push(first);
    rec(&mut buf, n, f);
}

struct LengthShard {
    classes: Vec<RawClass>,
    min_hyperbolic_trace: Option<i128>,
}

fn enumerate_shard(gens: &[IntMatrix; 2], n: usize, first: Letter, cutoff: f64) -> LengthShard {
    let mut classes = Vec::new();
    let mut min_tr: Option<i128> = None;
    for_each_cyclic_word(n, first, &mut |letters| {
        let w = Word::new(letters.to_vec());
        let tr = w.evaluate(gens).trace().abs();
        if tr <= 2 {
            return;
        }
        min_tr = Some(min_tr.map_or(tr, |m| m.min(tr)));
        if !w.is_canonical() || !w.is_primitive() {
            return;
        }
        let length = length_from_trace(tr as f64).expect("hyperbolic trace");
        if length <= cutoff {
            classes.push(RawClass {
                word: w,
                trace: tr,
                length,
            });
        }
    });
    LengthShard {
        classes,
        min_hyperbolic_trace: min_tr,
    }
}

/// Primitive non-oriented hyperbolic classes represented by cyclically reduced
/// words of at most `word_bound` letters and length at most `cutoff`.
///
/// `complete` is only set when it is certified:
///
/// * for the thrice-punctured sphere, by comparing with the trace enumeration
///   (every class below `cutoff` has a cyclically reduced word of at most
///   `word_bound` letters), as long as the trace bound stays moderate;
/// * otherwise, when the smallest hyperbolic trace seen at each word length is
///   non-decreasing up to `word_bound + 1` and the length it gives at
///   `word_bound + 1` already exceeds `cutoff`.
pub fn enumerate_length_spectrum(
    group: GroupPreset,
    cutoff: f64,
    word_bound: usize,
) -> Result<LengthSpectrum> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidArgument(format!("cutoff must be positive, got {cutoff}")));
    }
    if word_bound == 0 {
        return Err(Error::InvalidArgument("word_bound must be positive".into()));
    }
    let gens = group.int_generators();
    let jobs: Vec<(usize, Letter)> = (1..=word_bound + 1)
        .flat_map(|n| Letter::ALL.into_iter().map(move |l| (n, l)))
        .collect();
    let shards: Vec<(usize, LengthShard)> = jobs
        .par_iter()
        .map(|&(n, first)| {
            let c = if n <= word_bound { cutoff } else { -1.0 };
            (n, enumerate_shard(&gens, n, first, c))
        })
        .collect();

    let mut raw = Vec::new();
    let mut minima: Vec<Option<i128>> = vec![None; word_bound + 2];
    for (n, shard) in shards {
        raw.extend(shard.classes);
        if let Some(t) = shard.min_hyperbolic_trace {
            minima[n] = Some(minima[n].map_or(t, |m| m.min(t)));
        }
    }
    let observed: Vec<i128> = minima.iter().flatten().copied().collect();
    let monotone = observed.windows(2).all(|w| w[0] <= w[1]);
    let by_minima = match minima[word_bound + 1] {
        Some(t) => monotone && length_from_trace(t as f64).is_ok_and(|l| l > cutoff),
        None => false,
    };
    let complete = by_minima || certified_by_trace(group, cutoff, word_bound);
    Ok(LengthSpectrum::from_raw(raw, cutoff, group, complete))
}

/// Largest trace for which the trace enumeration is used as a certificate.
const CERTIFY_TRACE_LIMIT: f64 = 2000.0;

fn certified_by_trace(group: GroupPreset, cutoff: f64, word_bound: usize) -> bool {
    if group != GroupPreset::ThricePuncturedSphere || 2.0 * (cutoff / 2.0).cosh() > CERTIFY_TRACE_LIMIT {
        return false;
    }
    match super::trace_enum::raw_classes_by_trace(cutoff) {
        Ok(raw) => raw.iter().all(|r| r.word.len() <= word_bound),
        Err(_) => false,
    }
}
