//! Directed-rounding real arithmetic.
//!
//! Every bound formula in this crate is evaluated so that the emitted
//! number is guaranteed on the safe side of the exact real value: upward
//! for upper bounds, downward for the magnitudes of subtracted terms.
//!
//! The representation is a native `f64` plus a direction tag. After each
//! primitive the result is nudged outward only when the operation was
//! inexact: for `+`, `*`, `/` and `sqrt` the IEEE residual is recovered
//! exactly (two-sum / fused multiply-add), so exact results stay exact
//! and inexact ones move by a single ulp. Transcendentals (`ln`, `powf`,
//! `hypot`) are not assumed correctly rounded and get a two-ulp guard.

use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};
use crate::exponents::{rat_to_f64_enclosure, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Up,
    Down,
}

impl Mode {
    pub fn flip(self) -> Mode {
        match self {
            Mode::Up => Mode::Down,
            Mode::Down => Mode::Up,
        }
    }
}

#[inline]
fn nudge(x: f64, mode: Mode) -> f64 {
    match mode {
        Mode::Up => x.next_up(),
        Mode::Down => x.next_down(),
    }
}

#[inline]
fn nudge2(x: f64, mode: Mode) -> f64 {
    nudge(nudge(x, mode), mode)
}

/// Directed sum. Exact when the IEEE sum is exact (two-sum residual zero).
pub fn fadd(a: f64, b: f64, mode: Mode) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    // two-sum: recover the exact rounding error of a + b
    let bv = s - a;
    let av = s - bv;
    let err = (a - av) + (b - bv);
    match mode {
        Mode::Up if err > 0.0 => s.next_up(),
        Mode::Down if err < 0.0 => s.next_down(),
        _ => s,
    }
}

pub fn fsub(a: f64, b: f64, mode: Mode) -> f64 {
    fadd(a, -b, mode)
}

/// Directed product via the exact fused-multiply-add residual.
pub fn fmul(a: f64, b: f64, mode: Mode) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    let err = a.mul_add(b, -p);
    match mode {
        Mode::Up if err > 0.0 => p.next_up(),
        Mode::Down if err < 0.0 => p.next_down(),
        _ => p,
    }
}

/// Directed quotient; the fma residual `q*b - a` decides the nudge.
pub fn fdiv(a: f64, b: f64, mode: Mode) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    let rem = q.mul_add(b, -a);
    let over = if b > 0.0 { rem > 0.0 } else { rem < 0.0 };
    let under = if b > 0.0 { rem < 0.0 } else { rem > 0.0 };
    match mode {
        Mode::Up if under => q.next_up(),
        Mode::Down if over => q.next_down(),
        _ => q,
    }
}

pub fn fsqrt(x: f64, mode: Mode) -> f64 {
    let s = x.sqrt();
    if !s.is_finite() {
        return s;
    }
    let rem = s.mul_add(s, -x);
    match mode {
        Mode::Up if rem < 0.0 => s.next_up(),
        Mode::Down if rem > 0.0 => s.next_down(),
        _ => s,
    }
}

/// Directed natural log, two-ulp guard. Caller guarantees `x > 0`.
pub fn fln(x: f64, mode: Mode) -> f64 {
    debug_assert!(x > 0.0);
    nudge2(x.ln(), mode)
}

/// Directed power, two-ulp guard. Caller guarantees `base > 0` and passes
/// a base already rounded in the direction that is monotone for `exp`
/// (for an Up result: base rounded up when `exp >= 0`, down when `exp < 0`).
pub fn fpow(base: f64, exp: f64, mode: Mode) -> f64 {
    debug_assert!(base > 0.0 || (base == 0.0 && exp > 0.0));
    if base == 1.0 || exp == 0.0 {
        return 1.0;
    }
    if exp == 1.0 {
        return base;
    }
    nudge2(base.powf(exp), mode)
}

/// Directed power with an exact rational exponent. The exponent itself is
/// converted with the rounding that is monotone for the given base.
pub fn fpow_rat(base: f64, exp: Rat, mode: Mode) -> f64 {
    let (lo, hi) = rat_to_f64_enclosure(exp);
    // base^e is increasing in e for base > 1, decreasing for base < 1
    let e = match (mode, base >= 1.0) {
        (Mode::Up, true) | (Mode::Down, false) => hi,
        (Mode::Up, false) | (Mode::Down, true) => lo,
    };
    fpow(base, e, mode)
}

/// Directed `sqrt(a^2 + b^2)`, two-ulp guard.
pub fn fhypot(a: f64, b: f64, mode: Mode) -> f64 {
    nudge2(a.hypot(b), mode)
}

/// Directed conversion of an integer (exact below 2^53).
pub fn from_u64(x: u64, mode: Mode) -> f64 {
    let f = x as f64;
    if f as u64 == x && f.fract() == 0.0 {
        f
    } else {
        nudge(f, mode)
    }
}

/// A real number carrying a certified rounding direction: with mode `Up`
/// the stored value is `>= ` the exact value of the expression it stands
/// for, with `Down` it is `<=`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperReal {
    value: f64,
    mode: Mode,
}

impl UpperReal {
    /// Wrap a value that is already certified in the given direction.
    pub fn new(value: f64, mode: Mode) -> UpperReal {
        UpperReal { value, mode }
    }

    /// An exactly representable value is a valid bound in either direction.
    pub fn exact(value: f64, mode: Mode) -> UpperReal {
        UpperReal { value, mode }
    }

    pub fn zero(mode: Mode) -> UpperReal {
        UpperReal { value: 0.0, mode }
    }

    pub fn one(mode: Mode) -> UpperReal {
        UpperReal { value: 1.0, mode }
    }

    /// Parse a decimal literal as a certified bound in the given direction.
    /// `f64` parsing is correctly rounded, so a one-ulp outward nudge covers
    /// the decimal exactly; dyadic decimals stay exact.
    pub fn from_decimal(s: &str, mode: Mode) -> Result<UpperReal> {
        let v: f64 = s
            .parse()
            .map_err(|_| BoundError::Input(format!("bad decimal literal {s:?}")))?;
        let r = crate::exponents::parse_exact(s)?;
        let (lo, hi) = rat_to_f64_enclosure(r);
        let value = match mode {
            Mode::Up => hi,
            Mode::Down => lo,
        };
        debug_assert!((value - v).abs() <= v.abs() * 1e-15 + f64::MIN_POSITIVE);
        Ok(UpperReal { value, mode })
    }

    pub fn from_integer(x: u64, mode: Mode) -> UpperReal {
        UpperReal {
            value: from_u64(x, mode),
            mode,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn require_same(&self, other: &UpperReal, op: &str) -> Result<()> {
        if self.mode != other.mode {
            return Err(BoundError::ModeMismatch(format!(
                "{op} requires both operands {:?}, got {:?}",
                self.mode, other.mode
            )));
        }
        Ok(())
    }

    fn require_opposite(&self, other: &UpperReal, op: &str) -> Result<()> {
        if self.mode == other.mode {
            return Err(BoundError::ModeMismatch(format!(
                "{op} requires the second operand rounded {:?}, got {:?}",
                self.mode.flip(),
                other.mode
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &UpperReal) -> Result<UpperReal> {
        self.require_same(other, "add")?;
        Ok(UpperReal {
            value: fadd(self.value, other.value, self.mode),
            mode: self.mode,
        })
    }

    pub fn mul(&self, other: &UpperReal) -> Result<UpperReal> {
        self.require_same(other, "mul")?;
        if self.value < 0.0 || other.value < 0.0 {
            return Err(BoundError::Domain(
                "mul on directed values requires nonnegative operands; split signs first".into(),
            ));
        }
        Ok(UpperReal {
            value: fmul(self.value, other.value, self.mode),
            mode: self.mode,
        })
    }

    /// `self - other`: subtracting an oppositely-rounded value keeps the
    /// result certified on `self`'s side.
    pub fn sub(&self, other: &UpperReal) -> Result<UpperReal> {
        self.require_opposite(other, "sub")?;
        Ok(UpperReal {
            value: fsub(self.value, other.value, self.mode),
            mode: self.mode,
        })
    }

    /// `self / other` with `other > 0`; the divisor must carry the opposite
    /// rounding mode.
    pub fn div(&self, other: &UpperReal) -> Result<UpperReal> {
        self.require_opposite(other, "div")?;
        if other.value <= 0.0 {
            return Err(BoundError::Domain("division by a nonpositive bound".into()));
        }
        Ok(UpperReal {
            value: fdiv(self.value, other.value, self.mode),
            mode: self.mode,
        })
    }

    /// Directed power. A negative exponent flips the certified direction,
    /// so an Up result from a negative exponent consumes a Down operand.
    pub fn powf(&self, exp: f64) -> Result<UpperReal> {
        if self.value < 0.0 && exp.fract() != 0.0 {
            return Err(BoundError::Domain(
                "pow of negative base with non-integer exponent".into(),
            ));
        }
        if self.value <= 0.0 && exp < 0.0 {
            return Err(BoundError::Domain("pow of nonpositive base with negative exponent".into()));
        }
        if self.value < 0.0 {
            return Err(BoundError::Domain("pow of negative base".into()));
        }
        let mode = if exp < 0.0 { self.mode.flip() } else { self.mode };
        Ok(UpperReal {
            value: fpow(self.value, exp, mode),
            mode,
        })
    }

    pub fn pow_rat(&self, exp: Rat) -> Result<UpperReal> {
        if self.value < 0.0 {
            return Err(BoundError::Domain("pow of negative base".into()));
        }
        if self.value == 0.0 && crate::exponents::is_negative(exp) {
            return Err(BoundError::Domain("pow of zero base with negative exponent".into()));
        }
        let mode = if crate::exponents::is_negative(exp) {
            self.mode.flip()
        } else {
            self.mode
        };
        Ok(UpperReal {
            value: fpow_rat(self.value, exp, mode),
            mode,
        })
    }

    pub fn ln(&self) -> Result<UpperReal> {
        if self.value <= 0.0 {
            return Err(BoundError::Domain("log of nonpositive value".into()));
        }
        Ok(UpperReal {
            value: fln(self.value, self.mode),
            mode: self.mode,
        })
    }

    pub fn sqrt(&self) -> Result<UpperReal> {
        if self.value < 0.0 {
            return Err(BoundError::Domain("sqrt of negative value".into()));
        }
        Ok(UpperReal {
            value: fsqrt(self.value, self.mode),
            mode: self.mode,
        })
    }
}

/// Convenience constructors for the common case.
pub fn up(value: f64) -> UpperReal {
    UpperReal::new(value, Mode::Up)
}

pub fn down(value: f64) -> UpperReal {
    UpperReal::new(value, Mode::Down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn additive_identity_is_exact() {
        let z = up(0.0).add(&up(0.0)).unwrap();
        assert_eq!(z.value(), 0.0);
    }

    #[test]
    fn exact_dyadic_sum_stays_exact() {
        let two = up(1.0).add(&up(1.0)).unwrap();
        assert_eq!(two.value(), 2.0);
        let two_dn = down(1.0).add(&down(1.0)).unwrap();
        assert_eq!(two_dn.value(), 2.0);
    }

    #[test]
    fn pow_identity_base() {
        for t in [-3.5, 0.0, 0.1875, 2.0, 117.0] {
            assert_eq!(up(1.0).powf(t).unwrap().value(), 1.0);
        }
    }

    #[test]
    fn log_e_is_one_within_tolerance() {
        let l = up(std::f64::consts::E).ln().unwrap();
        assert!(l.value() >= 1.0);
        assert!(l.value() - 1.0 < 1e-9);
    }

    #[test]
    fn mode_mixing_is_rejected() {
        assert!(matches!(
            up(1.0).add(&down(1.0)),
            Err(BoundError::ModeMismatch(_))
        ));
        assert!(matches!(
            up(1.0).sub(&up(1.0)),
            Err(BoundError::ModeMismatch(_))
        ));
        assert!(matches!(
            up(1.0).div(&up(2.0)),
            Err(BoundError::ModeMismatch(_))
        ));
    }

    #[test]
    fn negative_exponent_flips_mode() {
        let d = down(2.0).powf(-1.0).unwrap();
        assert_eq!(d.mode(), Mode::Up);
        assert!(d.value() >= 0.5);
        let u = up(2.0).powf(-1.0).unwrap();
        assert_eq!(u.mode(), Mode::Down);
        assert!(u.value() <= 0.5);
    }

    #[test]
    fn domain_errors() {
        assert!(up(-1.0).ln().is_err());
        assert!(up(0.0).ln().is_err());
        assert!(up(-2.0).powf(0.5).is_err());
        assert!(up(-1.0).mul(&up(2.0)).is_err());
    }

    #[test]
    fn decimal_constants_bracket() {
        let u = UpperReal::from_decimal("1.520", Mode::Up).unwrap();
        let d = UpperReal::from_decimal("1.520", Mode::Down).unwrap();
        assert!(d.value() <= 1.52 && 1.52 <= u.value());
        assert!(u.value() - d.value() <= f64::EPSILON * 2.0);
        // dyadic decimals stay exact in both directions
        let e = UpperReal::from_decimal("0.25", Mode::Up).unwrap();
        assert_eq!(e.value(), 0.25);
    }

    proptest! {
        #[test]
        fn add_brackets_exact_sum(a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
            let s_up = fadd(a, b, Mode::Up);
            let s_dn = fadd(a, b, Mode::Down);
            // two-sum gives the exact error of the nearest-rounded sum
            let s = a + b;
            let bv = s - a;
            let err = (a - (s - bv)) + (b - bv);
            prop_assert!(s_up >= s || err <= 0.0);
            prop_assert!(s_dn <= s || err >= 0.0);
            prop_assert!(s_dn <= s_up);
            prop_assert!((s_up - s_dn) <= 4.0 * f64::EPSILON * s.abs());
        }

        #[test]
        fn mul_div_round_outward(a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
            prop_assert!(fmul(a, b, Mode::Up) >= fmul(a, b, Mode::Down));
            prop_assert!(fdiv(a, b, Mode::Up) >= fdiv(a, b, Mode::Down));
            let p = fmul(a, b, Mode::Up);
            prop_assert!(p >= a * b || a.mul_add(b, -(a*b)) <= 0.0);
        }
    }
}
