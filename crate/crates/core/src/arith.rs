//! Configurable-precision real and complex scalars.
//!
//! Thin wrappers over [`astro_float::BigFloat`]. Every operation rounds to
//! the precision carried by a [`Ctx`], which also owns the constants cache
//! needed by transcendental functions. A `Ctx` is cheap to create, so each
//! public operation of the library builds its own; nothing is shared
//! mutably across threads.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Smallest supported significand size, matching IEEE binary64.
pub const MIN_PRECISION_BITS: u32 = 53;
/// Default significand size used throughout the library.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Hard ceiling to keep allocations sane.
pub const MAX_PRECISION_BITS: u32 = 16_384;

/// Working precision in significand bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        if !(MIN_PRECISION_BITS..=MAX_PRECISION_BITS).contains(&bits) {
            return Err(Error::Domain(format!(
                "precision must be in [{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}] bits, got {bits}"
            )));
        }
        Ok(Self { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            bits: DEFAULT_PRECISION_BITS,
        }
    }
}

/// Evaluation context: target precision, rounding mode, constants cache.
pub struct Ctx {
    p: usize,
    rm: RoundingMode,
    cc: RefCell<Consts>,
}

impl Ctx {
    pub fn new(prec: Precision) -> Self {
        Self::with_bits(prec.bits())
    }

    /// Context at an explicit bit count, used internally for guard digits.
    pub(crate) fn with_bits(bits: u32) -> Self {
        Ctx {
            p: bits as usize,
            rm: RoundingMode::ToEven,
            cc: RefCell::new(Consts::new().expect("constants cache allocation")),
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.p as u32
    }

    /// The constant pi at context precision.
    pub fn pi(&self) -> Real {
        Real(self.cc.borrow_mut().pi(self.p, self.rm))
    }
}

/// A real scalar at context-selected precision.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real(BigFloat::from_i8(0, 64))
    }

    pub fn from_f64(x: f64, ctx: &Ctx) -> Self {
        Real(BigFloat::from_f64(x, ctx.p))
    }

    pub fn from_u64(x: u64, ctx: &Ctx) -> Self {
        Real(BigFloat::from_u64(x, ctx.p))
    }

    pub fn from_i64(x: i64, ctx: &Ctx) -> Self {
        Real(BigFloat::from_i64(x, ctx.p))
    }

    /// Exact conversion from a big integer (parsed at enough bits to be
    /// lossless, independent of the context precision).
    pub fn from_bigint(x: &BigInt, ctx: &Ctx) -> Self {
        let bits = x.bits().max(1) as usize + 64;
        let p = bits.max(ctx.p);
        let s = x.to_string();
        Real(BigFloat::parse(
            &s,
            Radix::Dec,
            p,
            ctx.rm,
            &mut ctx.cc.borrow_mut(),
        ))
    }

    /// Rounded conversion from an exact rational.
    pub fn from_rational(x: &BigRational, ctx: &Ctx) -> Self {
        let n = Real::from_bigint(x.numer(), ctx);
        let d = Real::from_bigint(x.denom(), ctx);
        n.div(&d, ctx)
    }

    pub fn add(&self, rhs: &Real, ctx: &Ctx) -> Real {
        Real(self.0.add(&rhs.0, ctx.p, ctx.rm))
    }

    pub fn sub(&self, rhs: &Real, ctx: &Ctx) -> Real {
        Real(self.0.sub(&rhs.0, ctx.p, ctx.rm))
    }

    pub fn mul(&self, rhs: &Real, ctx: &Ctx) -> Real {
        Real(self.0.mul(&rhs.0, ctx.p, ctx.rm))
    }

    pub fn div(&self, rhs: &Real, ctx: &Ctx) -> Real {
        Real(self.0.div(&rhs.0, ctx.p, ctx.rm))
    }

    pub fn recip(&self, ctx: &Ctx) -> Real {
        Real(self.0.reciprocal(ctx.p, ctx.rm))
    }

    pub fn neg(&self) -> Real {
        Real(self.0.neg())
    }

    pub fn abs(&self) -> Real {
        Real(self.0.abs())
    }

    /// Integer power with nonnegative exponent.
    pub fn powi(&self, n: u32, ctx: &Ctx) -> Real {
        Real(self.0.powi(n as usize, ctx.p, ctx.rm))
    }

    pub fn sqrt(&self, ctx: &Ctx) -> Real {
        Real(self.0.sqrt(ctx.p, ctx.rm))
    }

    pub fn exp(&self, ctx: &Ctx) -> Real {
        Real(self.0.exp(ctx.p, ctx.rm, &mut ctx.cc.borrow_mut()))
    }

    pub fn ln(&self, ctx: &Ctx) -> Real {
        Real(self.0.ln(ctx.p, ctx.rm, &mut ctx.cc.borrow_mut()))
    }

    pub fn sin(&self, ctx: &Ctx) -> Real {
        Real(self.0.sin(ctx.p, ctx.rm, &mut ctx.cc.borrow_mut()))
    }

    pub fn cos(&self, ctx: &Ctx) -> Real {
        Real(self.0.cos(ctx.p, ctx.rm, &mut ctx.cc.borrow_mut()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Total order; panics on NaN, which no supported input produces.
    pub fn cmp(&self, rhs: &Real) -> Ordering {
        let c = self.0.cmp(&rhs.0).expect("NaN in comparison");
        c.cmp(&0)
    }

    pub fn lt(&self, rhs: &Real) -> bool {
        self.cmp(rhs) == Ordering::Less
    }

    pub fn le(&self, rhs: &Real) -> bool {
        self.cmp(rhs) != Ordering::Greater
    }

    pub fn max_with(&self, rhs: &Real) -> Real {
        if self.lt(rhs) {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    /// Nearest binary64 value (round toward zero in the last carried bit).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _n, sign, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let word_bits = (core::mem::size_of::<astro_float::Word>() * 8) as i64;
        // value = 0.mantissa * 2^e with mantissa words little-endian
        let mut acc = 0.0_f64;
        let mut shift = e as i64;
        let take = (128 / word_bits) as usize + 1;
        for w in words.iter().rev().take(take) {
            shift -= word_bits;
            acc += pow2(shift) * u64::from(*w) as f64;
        }
        if sign == Sign::Neg {
            -acc
        } else {
            acc
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn pow2(e: i64) -> f64 {
    if e >= 1024 {
        f64::INFINITY
    } else if e < -1150 {
        0.0
    } else {
        (e as f64).exp2()
    }
}

/// A complex scalar built from two [`Real`] parts.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex {
            re: Real::zero(),
            im: Real::zero(),
        }
    }

    pub fn from_real(re: Real) -> Self {
        Complex {
            re,
            im: Real::zero(),
        }
    }

    pub fn from_f64_pair(re: f64, im: f64, ctx: &Ctx) -> Self {
        Complex {
            re: Real::from_f64(re, ctx),
            im: Real::from_f64(im, ctx),
        }
    }

    pub fn add(&self, rhs: &Complex, ctx: &Ctx) -> Complex {
        Complex {
            re: self.re.add(&rhs.re, ctx),
            im: self.im.add(&rhs.im, ctx),
        }
    }

    pub fn sub(&self, rhs: &Complex, ctx: &Ctx) -> Complex {
        Complex {
            re: self.re.sub(&rhs.re, ctx),
            im: self.im.sub(&rhs.im, ctx),
        }
    }

    pub fn mul(&self, rhs: &Complex, ctx: &Ctx) -> Complex {
        let ac = self.re.mul(&rhs.re, ctx);
        let bd = self.im.mul(&rhs.im, ctx);
        let ad = self.re.mul(&rhs.im, ctx);
        let bc = self.im.mul(&rhs.re, ctx);
        Complex {
            re: ac.sub(&bd, ctx),
            im: ad.add(&bc, ctx),
        }
    }

    pub fn div(&self, rhs: &Complex, ctx: &Ctx) -> Complex {
        let den = rhs
            .re
            .mul(&rhs.re, ctx)
            .add(&rhs.im.mul(&rhs.im, ctx), ctx);
        let num = self.mul(&rhs.conj(), ctx);
        Complex {
            re: num.re.div(&den, ctx),
            im: num.im.div(&den, ctx),
        }
    }

    pub fn mul_real(&self, rhs: &Real, ctx: &Ctx) -> Complex {
        Complex {
            re: self.re.mul(rhs, ctx),
            im: self.im.mul(rhs, ctx),
        }
    }

    pub fn div_real(&self, rhs: &Real, ctx: &Ctx) -> Complex {
        Complex {
            re: self.re.div(rhs, ctx),
            im: self.im.div(rhs, ctx),
        }
    }

    pub fn neg(&self) -> Complex {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn abs(&self, ctx: &Ctx) -> Real {
        self.re
            .mul(&self.re, ctx)
            .add(&self.im.mul(&self.im, ctx), ctx)
            .sqrt(ctx)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `base^self` for a positive real base, via exp(self * ln base).
    ///
    /// This is the only complex-power route in the library; negative
    /// arguments are always reduced to positive ones by symmetry first,
    /// so no branch cut is ever crossed.
    pub fn pow_of(base: &Real, exponent: &Complex, ctx: &Ctx) -> Complex {
        debug_assert!(!base.is_negative() && !base.is_zero());
        let l = base.ln(ctx);
        let a = exponent.re.mul(&l, ctx);
        let b = exponent.im.mul(&l, ctx);
        let m = a.exp(ctx);
        if b.is_zero() {
            Complex::from_real(m)
        } else {
            Complex {
                re: m.mul(&b.cos(ctx), ctx),
                im: m.mul(&b.sin(ctx), ctx),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trips_through_real() {
        let ctx = Ctx::new(Precision::default());
        for &x in &[0.0, 1.0, -1.5, 0.0625, 1.0823232337111382, -4.0e-12] {
            let r = Real::from_f64(x, &ctx);
            assert_eq!(r.to_f64(), x);
        }
    }

    #[test]
    fn bigint_conversion_is_exact() {
        let ctx = Ctx::new(Precision::default());
        let big: BigInt = BigInt::from(12u32).pow(26);
        let r = Real::from_bigint(&big, &ctx);
        let back = r
            .sub(&Real::from_f64(1.0, &ctx), &ctx)
            .add(&Real::from_f64(1.0, &ctx), &ctx);
        // 12^26 needs 94 bits; conversion must not round it away
        assert_eq!(format!("{}", r.sub(&back, &ctx).to_f64()), "0");
    }

    #[test]
    fn complex_pow_matches_real_power() {
        let ctx = Ctx::new(Precision::default());
        let two = Real::from_u64(2, &ctx);
        let minus_four = Complex::from_f64_pair(-4.0, 0.0, &ctx);
        let v = Complex::pow_of(&two, &minus_four, &ctx);
        assert!((v.re.to_f64() - 0.0625).abs() < 1e-30);
        assert_eq!(v.im.to_f64(), 0.0);
    }

    #[test]
    fn complex_pow_with_imaginary_exponent() {
        let ctx = Ctx::new(Precision::default());
        // 2^(-(4+i)) = 2^-4 * e^(-i ln 2)
        let two = Real::from_u64(2, &ctx);
        let e = Complex::from_f64_pair(-4.0, -1.0, &ctx);
        let v = Complex::pow_of(&two, &e, &ctx).to_c64();
        let l2 = std::f64::consts::LN_2;
        assert!((v.re - 0.0625 * l2.cos()).abs() < 1e-15);
        assert!((v.im + 0.0625 * l2.sin()).abs() < 1e-15);
    }

    #[test]
    fn precision_bounds_are_enforced() {
        assert!(Precision::new(52).is_err());
        assert!(Precision::new(53).is_ok());
        assert!(Precision::new(1 << 20).is_err());
    }
}
