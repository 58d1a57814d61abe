//! JSON files and command-line argument formats.
//!
//! A signal file is `{"group": [N_1, ...], "values": ["p/q", ...]}` with values in row-major
//! element order, last coordinate fastest. A spectrum file is
//! `{"group": [...], "values": {"k_1,k_2": {"conductor": M, "coeffs": [...]}, ...}}`.

use std::collections::BTreeSet;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::abelian::{Character, Group};
use crate::error::{Error, Result};
use crate::spectral::{Signal, Spectrum};

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = to_json(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Pretty-printed JSON.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_signal(path: impl AsRef<Path>) -> Result<Signal> {
    read_json(path)
}

pub fn write_signal(path: impl AsRef<Path>, signal: &Signal) -> Result<()> {
    write_json(path, signal)
}

pub fn read_spectrum(path: impl AsRef<Path>) -> Result<Spectrum> {
    read_json(path)
}

/// Either kind of file, told apart by the shape of `values`.
#[derive(Clone, Debug)]
pub enum Transformable {
    Signal(Signal),
    Spectrum(Spectrum),
}

pub fn read_signal_or_spectrum(path: impl AsRef<Path>) -> Result<Transformable> {
    let raw: serde_json::Value = read_json(path.as_ref())?;
    let parse_err = |e: serde_json::Error| Error::Parse(format!("{}: {e}", path.as_ref().display()));
    match raw.get("values") {
        Some(serde_json::Value::Object(_)) => {
            Ok(Transformable::Spectrum(serde_json::from_value(raw).map_err(parse_err)?))
        }
        _ => Ok(Transformable::Signal(serde_json::from_value(raw).map_err(parse_err)?)),
    }
}

/// `"2,6"` or `"6"`.
pub fn parse_factors(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad modulus {t:?} in {text:?}")))
        })
        .collect()
}

/// Characters separated by `;`, coordinates by `,`. For cyclic factor lists `,` also separates
/// characters, so `"1,5"` on `Z_6` means `{e_1, e_5}`. Negative coordinates are reduced.
pub fn parse_support(group: &Group, text: &str) -> Result<BTreeSet<Character>> {
    let rank = group.factors().len();
    let mut out = BTreeSet::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let nums = chunk
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        if rank == 1 {
            for n in nums {
                out.insert(Character(group.reduce_coords(&[n])?));
            }
        } else {
            out.insert(Character(group.reduce_coords(&nums)?));
        }
    }
    Ok(out)
}
