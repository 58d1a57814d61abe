//! Homometric pairs: the Eisenstein norm form, the `Z_6` classifier and generator, the `Z_30`
//! lift, and an exhaustive search used as an independent oracle.

mod norm_form;
mod search;
mod z30;
mod z6;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::{rational_serde, Cyclotomic, Rational};
use crate::spectral::Signal;

pub use norm_form::{
    divisor_count, factorize, norm_form_solutions, predicted_solution_count, Eisenstein,
    NormFormSolution,
};
pub use search::{brute_force_search, SearchPair, SearchResult, SEARCH_GUARD};
pub use z30::{lift_signal_z30, lift_to_z30};
pub use z6::{classify_z6_pair, generate_z6_pairs, generate_z6_pairs_with, Conditions, HomometryVerdict};

/// Where a generated pair came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// The integer `r` passed to the generator, absent for direct lifts.
    pub r: Option<u64>,
    /// `|z_f|^2 = |z_g|^2` before denominators are cleared.
    #[serde(with = "rational_serde")]
    pub norm: Rational,
    pub z_f: Cyclotomic,
    pub z_g: Cyclotomic,
    /// Both signals were multiplied by this to make them integral.
    #[serde(serialize_with = "display_bigint")]
    pub multiplier: BigInt,
    #[serde(with = "rational_serde")]
    pub e0: Rational,
}

fn display_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedPair {
    pub f: Signal,
    pub g: Signal,
    pub provenance: Provenance,
    /// `g` is a translate of `f`.
    pub translates: bool,
    /// `g` is a translate of the reflection `x ↦ f(-x)`.
    pub reflection: bool,
    /// `"z6"` for the complete `Z_6` construction, `"z30-family"` for the partial `Z_30` one.
    pub family: &'static str,
}

/// `lcm` of the denominators of both signals.
pub(crate) fn joint_multiplier(f: &Signal, g: &Signal) -> BigInt {
    use num_integer::Integer;
    f.denominator_lcm().lcm(&g.denominator_lcm())
}

pub(crate) fn finish_pair(
    f: Signal,
    g: Signal,
    provenance: impl FnOnce(BigInt) -> Provenance,
    family: &'static str,
) -> GeneratedPair {
    let m = joint_multiplier(&f, &g);
    let factor = Rational::from_integer(m.clone());
    let (f, g) = (f.scale(&factor), g.scale(&factor));
    let translates = crate::autocorr::is_translate(&f, &g).is_some();
    let reflection = crate::autocorr::is_translate(&f.reflect(), &g).is_some();
    GeneratedPair {
        f,
        g,
        provenance: provenance(m),
        translates,
        reflection,
        family,
    }
}
