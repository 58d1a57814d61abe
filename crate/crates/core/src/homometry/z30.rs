use num_traits::Zero;

use super::{finish_pair, GeneratedPair, Provenance};
use crate::abelian::{Character, Group};
use crate::error::{Error, Result};
use crate::exact::{units_mod, Cyclotomic, GaloisAuto, Rational};
use crate::spectral::{inverse_fourier, Inverse, Signal, Spectrum};

fn in_q_zeta6(z: &Cyclotomic) -> Result<Cyclotomic> {
    use num_integer::Integer;
    z.lift(z.conductor().lcm(&6))
        .ok()
        .and_then(|w| w.descend(6))
        .ok_or_else(|| Error::Precondition(format!("{z} does not lie in Q(zeta_6)")))
}

/// The rational signal on `Z_30` whose transform is `σ_u(z)` at each unit character `e_u`
/// and zero elsewhere: `z` on `u ≡ 1 (mod 6)` and `conj(z)` on `u ≡ 5 (mod 6)`.
pub fn lift_signal_z30(z: &Cyclotomic) -> Result<Signal> {
    let z = in_q_zeta6(z)?.lift(30)?;
    let group = Group::cyclic(30).expect("valid modulus");
    let entries = units_mod(30)
        .into_iter()
        .map(|u| {
            let value = z.galois(&GaloisAuto::new(30, u as i64)?)?;
            Ok((Character(vec![u]), value))
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = Spectrum::from_entries(group, entries)?;
    match inverse_fourier(&spec) {
        Inverse::Rational(s) => Ok(s),
        Inverse::NonRational { .. } => unreachable!("Galois-equivariant spectrum"),
    }
}

/// Lifts a pair of values in `Q(ζ_6)` to integer signals on `Z_30` supported on the unit
/// characters. This produces one family of such pairs, not a classification.
pub fn lift_to_z30(z_f: &Cyclotomic, z_g: &Cyclotomic) -> Result<GeneratedPair> {
    let (zf, zg) = (in_q_zeta6(z_f)?, in_q_zeta6(z_g)?);
    if zf.norm() != zg.norm() {
        return Err(Error::Precondition(format!(
            "|z_f|^2 = {} differs from |z_g|^2 = {}",
            zf.norm(),
            zg.norm()
        )));
    }
    if zf.pow(6) == zg.pow(6) {
        return Err(Error::Precondition("z_f^6 = z_g^6".into()));
    }
    let f = lift_signal_z30(&zf)?;
    let g = lift_signal_z30(&zg)?;
    let norm = zf.norm();
    Ok(finish_pair(
        f,
        g,
        |multiplier| Provenance {
            r: None,
            norm,
            z_f: zf,
            z_g: zg,
            multiplier,
            e0: Rational::zero(),
        },
        "z30-family",
    ))
}
