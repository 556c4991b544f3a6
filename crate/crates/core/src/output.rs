//! Number formatting and atomic file output shared by the reports and the CLI.

use std::io::Write;
use std::path::Path;

use serde::Serializer;
use serde_json::value::RawValue;

use crate::error::{Error, Result};

/// Decimal rendering with 17 significant digits, `%.17g` style: fixed
/// notation for exponents in `-5..17`, scientific otherwise, trailing zeros
/// dropped.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// serde helper: write an `f64` as a JSON number with [`fmt_num`]; non-finite
/// values become `null`.
pub fn sig17<S: Serializer>(x: &f64, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return serializer.serialize_none();
    }
    let raw = RawValue::from_string(fmt_num(*x)).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, serializer)
}

pub fn sig17_vec<S: Serializer>(xs: &[f64], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Sig17(*x))?;
    }
    seq.end()
}

/// Newtype carrying the [`sig17`] representation.
#[derive(Clone, Copy, Debug)]
pub struct Sig17(pub f64);

impl serde::Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        sig17(&self.0, serializer)
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialisation");
    s.push('\n');
    s
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so the target is either untouched or complete.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats_like_printf_g() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1), "0.10000000000000001");
        assert_eq!(fmt_num(-2.5), "-2.5");
        assert_eq!(fmt_num(1e-7), "9.9999999999999995e-8");
        assert_eq!(fmt_num(1e20), "1e20");
        assert_eq!(fmt_num(123456.0), "123456");
    }

    #[test]
    fn json_numbers_use_fixed_digits() {
        #[derive(serde::Serialize)]
        struct R {
            #[serde(serialize_with = "sig17")]
            x: f64,
            #[serde(serialize_with = "sig17")]
            y: f64,
        }
        let s = serde_json::to_string(&R { x: 0.1, y: f64::NAN }).unwrap();
        assert_eq!(s, r#"{"x":0.10000000000000001,"y":null}"#);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/x.txt"), b"x").is_err());
    }

    proptest! {
        #[test]
        fn round_trips(x in prop::num::f64::NORMAL) {
            let s = fmt_num(x);
            prop_assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
