//! Exact rational scalars.
//!
//! Every structure constant in this crate is a `Rat`: an arbitrary-precision
//! fraction kept in canonical reduced form. No floating point enters any
//! algebraic computation; floats appear only in the spectral heuristic of
//! [`crate::representations::irreducible_dims`], whose output is re-certified
//! by integer checksums.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

pub fn rat_usize(n: usize) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}

/// Parses `"p/q"` or `"p"` with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let q: BigInt = den
        .parse()
        .map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

/// Canonical text form: `"p"` when the denominator is one, else `"p/q"`.
pub fn show_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
