//! `SL(2, R)` group algebra, words in rank-2 free groups and primitive
//! geodesic length spectra of the preset Fuchsian groups.

mod moebius;
mod spectrum;
mod trace_enum;
mod word;

pub use moebius::{classify_trace, geodesic_length, length_from_trace, Classification, IntMatrix, Moebius};
pub use spectrum::{
    enumerate_length_spectrum, preset_group, GeodesicClass, GroupPreset, LengthSpectrum,
    LENGTH_MERGE_TOL,
};
pub use trace_enum::{enumerate_by_trace, gamma2_word};
pub use word::{Letter, Word};

/// Classification of a matrix by its trace.
pub fn classify(m: &Moebius) -> Classification {
    m.classify()
}
