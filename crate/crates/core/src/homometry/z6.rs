use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::norm_form::{factorize, norm_form_solutions, Eisenstein};
use super::{finish_pair, GeneratedPair, Provenance};
use crate::abelian::{Character, Group};
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Rational};
use crate::spectral::{fourier, inverse_fourier, Inverse, Signal, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `f^(e_0) = g^(e_0)`.
    pub e0_match: bool,
    /// Both transforms vanish at `e_2`, `e_3` and `e_4`.
    pub vanishing: bool,
    /// `|f^(e_1)| = |g^(e_1)|`.
    pub modulus_match: bool,
    /// `f^(e_1)^6 ≠ g^(e_1)^6`.
    pub sixth_powers_differ: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.e0_match && self.vanishing && self.modulus_match && self.sixth_powers_differ
    }
}

/// Whether a pair on `Z_6` agrees through order 5 and differs at order 6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomometryVerdict {
    pub homometric_through_5: bool,
    pub conditions: Conditions,
    pub f_e0: Cyclotomic,
    pub g_e0: Cyclotomic,
    pub f_e1: Cyclotomic,
    pub g_e1: Cyclotomic,
    /// `f^(e_1)` written as `a + b√-3`.
    pub f_e1_text: Option<String>,
    pub g_e1_text: Option<String>,
    /// Characters among `e_2, e_3, e_4` where either transform is nonzero.
    pub nonvanishing: Vec<Character>,
}

fn z6_group() -> Group {
    Group::cyclic(6).expect("valid modulus")
}

/// Evaluates the four spectral conditions that characterize such pairs on `Z_6`.
pub fn classify_z6_pair(f: &Signal, g: &Signal) -> Result<HomometryVerdict> {
    let z6 = z6_group();
    for s in [f, g] {
        if s.group() != &z6 {
            return Err(Error::GroupMismatch(z6.factors().to_vec(), s.group().factors().to_vec()));
        }
    }
    let (sf, sg) = (fourier(f), fourier(g));
    let e = |k: usize| Character(vec![k]);
    let nonvanishing: Vec<Character> = (2..=4)
        .map(e)
        .filter(|c| !sf.get(c).is_zero() || !sg.get(c).is_zero())
        .collect();
    let (f1, g1) = (sf.get(&e(1)).clone(), sg.get(&e(1)).clone());
    let conditions = Conditions {
        e0_match: sf.get(&e(0)) == sg.get(&e(0)),
        vanishing: nonvanishing.is_empty(),
        modulus_match: f1.norm() == g1.norm(),
        sixth_powers_differ: f1.pow(6) != g1.pow(6),
    };
    Ok(HomometryVerdict {
        homometric_through_5: conditions.all(),
        conditions,
        f_e0: sf.get(&e(0)).clone(),
        g_e0: sg.get(&e(0)).clone(),
        f_e1_text: f1.to_sqrt_minus3(),
        g_e1_text: g1.to_sqrt_minus3(),
        f_e1: f1,
        g_e1: g1,
        nonvanishing,
    })
}

/// The signal on `Z_6` with `f^(e_0) = e0`, `f^(e_1) = z`, `f^(e_5) = conj(z)` and zero elsewhere.
pub(crate) fn z6_signal(z: &Cyclotomic, e0: &Rational) -> Signal {
    let group = z6_group();
    let spec = Spectrum::from_entries(
        group,
        [
            (Character(vec![0]), Cyclotomic::from_rational(6, e0.clone())),
            (Character(vec![1]), z.clone()),
            (Character(vec![5]), z.conjugate()),
        ],
    )
    .expect("values live in Q(zeta_6)");
    match inverse_fourier(&spec) {
        Inverse::Rational(s) => s,
        Inverse::NonRational { .. } => unreachable!("conjugate-symmetric spectrum"),
    }
}

/// [`generate_z6_pairs_with`] with `f^(e_0) = g^(e_0) = 0`.
pub fn generate_z6_pairs(r: u64) -> Result<Vec<GeneratedPair>> {
    generate_z6_pairs_with(r, &Rational::zero())
}

/// Pairs on `Z_6` built from Eisenstein integers of norm `r` and of norm `r²`.
///
/// At each norm the solutions split into sixth-power classes; every two distinct classes give a
/// pair. `g` takes the real representative when the pair has one.
pub fn generate_z6_pairs_with(r: u64, e0: &Rational) -> Result<Vec<GeneratedPair>> {
    if r <= 1 {
        return Err(Error::Precondition(format!("r must exceed 1, got {r}")));
    }
    let factors = factorize(r);
    if let Some(&(p, k)) = factors.iter().find(|&&(p, k)| p % 3 == 2 && k % 2 == 1) {
        return Err(Error::NoSolutions(format!(
            "{r} has the prime {p} = 2 mod 3 to the odd power {k}"
        )));
    }
    if factors.iter().all(|&(p, _)| p == 3) {
        return Err(Error::OnlyTrivialOrbit(r));
    }
    let mut levels = vec![r];
    if let Some(sq) = r.checked_mul(r) {
        levels.push(sq);
    }
    let mut out = Vec::new();
    for level in levels {
        let classes: Vec<Eisenstein> = norm_form_solutions(level)
            .iter()
            .map(|s| s.eisenstein().canonical())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for (i, &a) in classes.iter().enumerate() {
            for &b in &classes[i + 1..] {
                let (zf, zg) = if a.is_real() { (b, a) } else { (a, b) };
                let (cf, cg) = (zf.to_cyclotomic(), zg.to_cyclotomic());
                let f = z6_signal(&cf, e0);
                let g = z6_signal(&cg, e0);
                out.push(finish_pair(
                    f,
                    g,
                    |multiplier| Provenance {
                        r: Some(r),
                        norm: Rational::from_integer(level.into()),
                        z_f: cf.clone(),
                        z_g: cg.clone(),
                        multiplier,
                        e0: e0.clone(),
                    },
                    "z6",
                ));
            }
        }
    }
    Ok(out)
}
