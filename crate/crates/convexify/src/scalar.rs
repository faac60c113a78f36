//! Exact rational scalars. All set coordinates and volumes are carried as
//! `BigRational`; floats appear only where irrational values are unavoidable
//! (Euclidean norms, enclosing balls, gauge norms of round balls).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Scalar = BigRational;

pub fn rat(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses "p/q", an integer, or a finite decimal ("0.25") exactly.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int = BigInt::from_str(if int.is_empty() { "0" } else { int })
            .map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_int = BigInt::from_str(frac).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let abs = int.abs() * &scale + frac_int;
        let signed = if neg { -abs } else { abs };
        return Ok(BigRational::new(signed, scale));
    }
    let p = BigInt::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))?;
    Ok(BigRational::from_integer(p))
}

/// Exact decimal floats convert losslessly: f64 is a dyadic rational.
pub fn from_f64_exact(x: f64) -> Option<Scalar> {
    BigRational::from_float(x)
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rational approximation of sqrt(x) with |err| <= tol, via Newton iteration.
/// Used where an LP needs a Euclidean norm coefficient at controlled accuracy.
pub fn sqrt_approx(x: &Scalar, tol: &Scalar) -> Scalar {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Scalar::zero();
    }
    let mut guess = from_f64_exact(to_f64(x).sqrt().max(f64::MIN_POSITIVE))
        .unwrap_or_else(|| x.clone() + Scalar::one());
    if guess.is_zero() || guess.is_negative() {
        guess = Scalar::one();
    }
    for _ in 0..64 {
        let next = (&guess + x / &guess) / rat(2);
        // Newton from above: guess^2 - x bounds the error by (guess^2-x)/(2*guess).
        let err = (&next * &next - x) / (rat(2) * &next);
        guess = next;
        if err.abs() <= *tol {
            break;
        }
    }
    guess
}
