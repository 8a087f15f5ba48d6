//! Rational scalars and dense rational vectors.

use num::{BigInt, BigRational, One, Zero};

/// Exact rational scalar. Always normalized (lowest terms, positive denominator).
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed != s {
        return Err(format!("invalid rational literal {s:?}"));
    }
    match trimmed.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| format!("invalid numerator in {s:?}"))?;
            let d: BigInt = d.parse().map_err(|_| format!("invalid denominator in {s:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = trimmed.parse().map_err(|_| format!("invalid integer literal {s:?}"))?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Formats as `"n"` when the denominator is one, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn zeros(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn from_ints(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn vneg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vadd_assign(a: &mut [Rat], b: &[Rat]) {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// `a += c * b`
pub fn vaxpy(a: &mut [Rat], c: &Rat, b: &[Rat]) {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn concat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v
}

pub fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3").unwrap(), int(3));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(format_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rat(&rat(8, 4)), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat(" 1").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
