//! Exact rationals backed by `num-rational`, with the `"num/den"` text form
//! used in every report.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `"num/den"`, always including the denominator.
pub fn to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(big(s.parse().ok()?)),
    }
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

pub fn vec_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_string).collect()
}

pub fn matrix_to_strings(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| vec_to_strings(r)).collect()
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let sel = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, sel);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let c = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= &c * p;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    mat_mul(&[v.to_vec()], m).remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let r = frac(-6, 4);
        assert_eq!(to_string(&r), "-3/2");
        assert_eq!(parse("-3/2"), Some(r));
        assert_eq!(to_string(&int(7)), "7/1");
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn denominators_stay_positive_and_reduced() {
        let r = frac(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn inversion() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
