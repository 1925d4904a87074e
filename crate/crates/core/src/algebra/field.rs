//! Small finite fields GF(p^h) with precomputed operation tables.
//!
//! Elements are stored as `u8` in `0..q`. An element encodes the polynomial
//! `c_0 + c_1 x + ... + c_{h-1} x^{h-1}` through its base-`p` digits, so
//! the prime subfield is `0..p` and every reduction polynomial is fixed
//! in [`CONWAY_POLYNOMIALS`]. Canonical forms built on top of these
//! encodings are therefore identical across runs and machines.

use crate::error::{Error, Result};

/// Largest field order the tables are built for.
pub const MAX_ORDER: u32 = 32;

/// Conway polynomials `x^h + c_{h-1} x^{h-1} + ... + c_0` for every
/// non-prime order up to [`MAX_ORDER`], stored as `(p, h, [c_0, ..., c_{h-1}])`.
pub const CONWAY_POLYNOMIALS: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 4]),
];

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Finite field GF(q), q = p^h, with add/mul/inverse tables.
///
/// When `h` is even the field carries the involution `x -> x^r`,
/// `r = p^(h/2)`, used as conjugation by Hermitian forms.
#[derive(Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u8,
    h: u8,
    q: u8,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    conj: Option<Vec<u8>>,
}

impl std::fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.h)
    }
}

impl GaloisField {
    /// Builds GF(p^h). Fails for non-prime `p` or when no reduction
    /// polynomial is tabulated (q above [`MAX_ORDER`]).
    pub fn new(p: u32, h: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let unsupported = |reason: &str| Error::UnsupportedField { p, h, reason: reason.into() };
        if h == 0 {
            return Err(unsupported("extension degree must be at least 1"));
        }
        let q = p.checked_pow(h).filter(|&q| q <= MAX_ORDER).ok_or_else(|| unsupported("order too large"))?;
        let modulus: Vec<u8> = if h == 1 {
            vec![]
        } else {
            CONWAY_POLYNOMIALS
                .iter()
                .find(|&&(pp, hh, _)| pp == p && hh == h)
                .map(|&(_, _, c)| c.to_vec())
                .ok_or_else(|| unsupported("no tabulated reduction polynomial"))?
        };

        let (p8, h8, q8) = (p as u8, h as u8, q as u8);
        let qs = q as usize;
        let digits = |mut a: u8| -> Vec<u8> {
            let mut d = vec![0u8; h as usize];
            for c in d.iter_mut() {
                *c = a % p8;
                a /= p8;
            }
            d
        };
        let undigits = |d: &[u8]| -> u8 { d.iter().rev().fold(0u8, |acc, &c| acc * p8 + c) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q8 {
            let da = digits(a);
            for b in 0..q8 {
                let db = digits(b);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p8).collect();
                add[a as usize * qs + b as usize] = undigits(&sum);

                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * h as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
                    }
                }
                for deg in (h as usize..2 * h as usize).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (k, &m) in modulus.iter().enumerate() {
                        let idx = deg - h as usize + k;
                        prod[idx] = (prod[idx] + c * (p - m as u32)) % p;
                    }
                }
                let red: Vec<u8> = prod[..h as usize].iter().map(|&c| c as u8).collect();
                mul[a as usize * qs + b as usize] = undigits(&red);
            }
        }

        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..q8).find(|&b| add[a * qs + b as usize] == 0).expect("additive inverse");
            if a != 0 {
                inv[a] = (1..q8)
                    .find(|&b| mul[a * qs + b as usize] == 1)
                    .ok_or_else(|| Error::Consistency(format!("GF({q}): {a} has no inverse")))?;
            }
        }

        let mut field = GaloisField { p: p8, h: h8, q: q8, modulus, add, mul, neg, inv, conj: None };
        if h % 2 == 0 {
            let r = p.pow(h / 2);
            let conj = (0..q8).map(|a| field.pow(a, r)).collect();
            field.conj = Some(conj);
        }
        Ok(field)
    }

    /// Builds GF(q) from its order.
    pub fn from_order(q: u32) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or(Error::UnsupportedField {
            p: q,
            h: 1,
            reason: "not a prime power".into(),
        })?;
        Self::new(p, h)
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h as u32
    }

    /// Reduction polynomial coefficients `[c_0, ..., c_{h-1}]` (monic, implicit leading 1).
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// `p^(h/2)` when the field has a conjugation.
    pub fn sqrt_order(&self) -> Option<u32> {
        self.conj.as_ref().map(|_| (self.p as u32).pow(self.h as u32 / 2))
    }

    pub fn has_conjugation(&self) -> bool {
        self.conj.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Conjugation `x -> x^sqrt(q)`; identity when the field has none.
    #[inline]
    pub fn conj(&self, a: u8) -> u8 {
        match &self.conj {
            Some(t) => t[a as usize],
            None => a,
        }
    }

    pub fn pow(&self, a: u8, mut k: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u8 {
        n.rem_euclid(self.p as i64) as u8
    }

    pub fn is_square(&self, a: u8) -> bool {
        a == 0 || self.elements().any(|x| self.mul(x, x) == a)
    }

    /// Square root in characteristic 2 (Frobenius is bijective).
    pub fn sqrt_char2(&self, a: u8) -> u8 {
        debug_assert_eq!(self.p, 2);
        self.pow(a, self.q as u32 / 2)
    }

    /// Dot product `sum x_i * y_i`.
    #[inline]
    pub fn dot(&self, x: &[u8], y: &[u8]) -> u8 {
        x.iter().zip(y).fold(0u8, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// `a*x + b*y` componentwise.
    pub fn lin_comb(&self, a: u8, x: &[u8], b: u8, y: &[u8]) -> Vec<u8> {
        x.iter().zip(y).map(|(&u, &v)| self.add(self.mul(a, u), self.mul(b, v))).collect()
    }

    pub fn scale(&self, a: u8, x: &[u8]) -> Vec<u8> {
        x.iter().map(|&u| self.mul(a, u)).collect()
    }

    /// Scales so that the first nonzero coordinate is 1. Returns `None` for
    /// the zero vector.
    pub fn normalize(&self, x: &[u8]) -> Option<Vec<u8>> {
        let lead = *x.iter().find(|&&c| c != 0)?;
        let s = self.inv(lead).expect("nonzero");
        Some(self.scale(s, x))
    }

    /// Every normalized nonzero vector of `GF(q)^dim` in lexicographic order,
    /// i.e. one representative per projective point.
    pub fn projective_points(&self, dim: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for lead in 0..dim {
            let tail = dim - lead - 1;
            let count = (self.q as usize).pow(tail as u32);
            for mut idx in 0..count {
                let mut v = vec![0u8; dim];
                v[lead] = 1;
                for c in v[lead + 1..].iter_mut().rev() {
                    *c = (idx % self.q as usize) as u8;
                    idx /= self.q as usize;
                }
                out.push(v);
            }
        }
        out.sort();
        out
    }
}

/// Decomposes `q = p^h`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut h = 0;
    while rest % p == 0 {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}
