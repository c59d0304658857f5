//! Exact rational exponents and lossless decimal parsing.
//!
//! Every exponent on `q` and `log q` in the bound formulas is an exact
//! rational; this module keeps them exact until the final directed
//! conversion to `f64`.

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{BoundError, Result};

pub type Rat = Rational64;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// Directed conversion: the returned pair `(lo, hi)` brackets the exact
/// rational, `lo <= r <= hi`, with `hi - lo` at most one ulp.
pub fn rat_to_f64_enclosure(r: Rat) -> (f64, f64) {
    let n = *r.numer() as f64; // exact: |numer| < 2^53 in this artifact
    let d = *r.denom() as f64;
    let q = n / d;
    // residual of the division, sign-exact via fused multiply-add
    let rem = q.mul_add(d, -n);
    if rem == 0.0 {
        (q, q)
    } else if rem > 0.0 {
        // q*d > n, so q overestimates n/d
        (q.next_down(), q)
    } else {
        (q, q.next_up())
    }
}

/// Nearest-f64 value of the rational (used where direction is irrelevant,
/// e.g. grid coordinates).
pub fn rat_to_f64(r: Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse a numeric flag losslessly: decimal strings ("0.5", "-1.25", "3"),
/// or explicit fractions ("2/3", "-7/16").
pub fn parse_exact(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(BoundError::Input("empty numeric string".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| BoundError::Input(format!("bad fraction numerator in {s:?}")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| BoundError::Input(format!("bad fraction denominator in {s:?}")))?;
        if d == 0 {
            return Err(BoundError::Input(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(BoundError::Input(format!("not a number: {s:?}")));
    }
    if frac_part.len() > 18 {
        return Err(BoundError::Input(format!(
            "decimal {s:?} has more than 18 fractional digits"
        )));
    }
    let int_val: i64 = if int_part.is_empty() {
        0
    } else {
        int_part
            .parse()
            .map_err(|_| BoundError::Input(format!("bad integer part in {s:?}")))?
    };
    let mut num = int_val as i128;
    let mut den = 1i128;
    for ch in frac_part.chars() {
        let d = ch
            .to_digit(10)
            .ok_or_else(|| BoundError::Input(format!("bad digit in {s:?}")))? as i128;
        num = num * 10 + d;
        den *= 10;
    }
    let num64 = i64::try_from(num)
        .map_err(|_| BoundError::Input(format!("decimal {s:?} out of range")))?;
    let den64 = i64::try_from(den)
        .map_err(|_| BoundError::Input(format!("decimal {s:?} out of range")))?;
    Ok(Rat::new(sign * num64, den64))
}

/// Canonical lossless string form, `"-3/16"` or `"2"`.
pub fn rat_to_string(r: Rat) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_negative(r: Rat) -> bool {
    r.is_negative()
}

pub fn is_zero(r: Rat) -> bool {
    r.is_zero()
}

/// Serde helpers storing a `Rat` as its canonical string.
pub mod rat_string {
    use super::{parse_exact, rat_to_string, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_to_string(*r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_exact(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde helpers for `Option<Rat>`.
pub mod rat_string_opt {
    use super::{parse_exact, rat_to_string, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rat>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(v) => ser.serialize_some(&rat_to_string(*v)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Rat>, D::Error> {
        let s: Option<String> = Option::deserialize(de)?;
        match s {
            Some(s) => parse_exact(&s).map(Some).map_err(serde::de::Error::custom),
            None => Ok(None),
        }
    }
}
