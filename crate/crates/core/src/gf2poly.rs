//! Dense polynomials over F2.
//!
//! A [`Poly2`] stores coefficient `k` (the coefficient of `z^k`) at bit `k` of
//! a little-endian sequence of 64-bit words. Packet payloads use the same
//! layout, so the first bit of a packet is the constant term and a right shift
//! of a packet by `t` positions is multiplication by `z^t`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A polynomial over F2 in canonical form (no trailing zero words).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly2 {
    words: Vec<u64>,
}

fn normalize(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// `dst ^= src << shift`, growing `dst` as needed.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    if src.is_empty() {
        return;
    }
    let ws = shift / WORD;
    let bs = shift % WORD;
    let need = ws + src.len() + usize::from(bs != 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (d, s) in dst[ws..].iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[ws + i] ^= w << bs;
            dst[ws + i + 1] ^= w >> (WORD - bs);
        }
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / WORD + 1];
        words[k / WORD] = 1 << (k % WORD);
        Self { words }
    }

    /// Builds a polynomial from a coefficient mask (bit 0 = constant term).
    pub fn from_mask(mask: u64) -> Self {
        let mut words = vec![mask];
        normalize(&mut words);
        Self { words }
    }

    /// The coefficient mask, if the degree is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        normalize(&mut words);
        Self { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        for (k, b) in bits.into_iter().enumerate() {
            if k % WORD == 0 {
                words.push(0);
            }
            if b {
                words[k / WORD] |= 1 << (k % WORD);
            }
        }
        Self::from_words(words)
    }

    /// Coefficients `0..len` as booleans.
    pub fn to_bits(&self, len: usize) -> Vec<bool> {
        (0..len).map(|k| self.coeff(k)).collect()
    }

    /// Reads bytes LSB-first: bit `j` of byte `i` is the coefficient of `z^(8i+j)`.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let words = bytes
            .chunks(8)
            .map(|c| {
                let mut buf = [0u8; 8];
                buf[..c.len()].copy_from_slice(c);
                u64::from_le_bytes(buf)
            })
            .collect();
        Self::from_words(words)
    }

    /// Writes the first `nbytes * 8` coefficients LSB-first. Higher
    /// coefficients are dropped.
    pub fn to_bytes(&self, nbytes: usize) -> Vec<u8> {
        let mut out: Vec<u8> = self.words.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.resize(nbytes, 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    /// Number of coefficients up to and including the leading one.
    pub fn bit_len(&self) -> usize {
        self.degree().map_or(0, |d| d + 1)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / WORD)
            .is_some_and(|w| (w >> (k % WORD)) & 1 == 1)
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    /// Index of the lowest nonzero coefficient.
    pub fn lowest_term(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * WORD + self.words[i].trailing_zeros() as usize)
    }

    /// A polynomial is a monomial when it has exactly one term.
    pub fn is_monomial(&self) -> bool {
        self.weight() == 1
    }

    /// `z^t * self`.
    pub fn shl(&self, t: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut words = Vec::with_capacity(self.words.len() + t / WORD + 1);
        xor_shifted(&mut words, &self.words, t);
        Self::from_words(words)
    }

    /// Drops the `t` lowest coefficients (exact division by `z^t` when they are zero).
    pub fn shr(&self, t: usize) -> Self {
        let ws = t / WORD;
        let bs = t % WORD;
        if ws >= self.words.len() {
            return Self::zero();
        }
        let src = &self.words[ws..];
        let words = if bs == 0 {
            src.to_vec()
        } else {
            (0..src.len())
                .map(|i| {
                    let hi = src.get(i + 1).map_or(0, |w| w << (WORD - bs));
                    (src[i] >> bs) | hi
                })
                .collect()
        };
        Self::from_words(words)
    }

    /// Keeps coefficients `0..len`.
    pub fn truncated(&self, len: usize) -> Self {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .take(len.div_ceil(WORD))
            .copied()
            .collect();
        if !len.is_multiple_of(WORD) {
            if let Some(w) = words.get_mut(len / WORD) {
                *w &= (1u64 << (len % WORD)) - 1;
            }
        }
        Self::from_words(words)
    }

    /// `self += z^shift * other`.
    pub fn add_shifted(&mut self, other: &Poly2, shift: usize) {
        xor_shifted(&mut self.words, &other.words, shift);
        normalize(&mut self.words);
    }

    /// Schoolbook shift-and-XOR product.
    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        // iterate over the sparser operand
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Vec::with_capacity(self.words.len() + other.words.len());
        for t in sparse.terms() {
            xor_shifted(&mut acc, &dense.words, t);
        }
        Poly2::from_words(acc)
    }

    /// Long division: `self = q * divisor + r` with `deg(r) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly2) -> Result<(Poly2, Poly2)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.words.clone();
        let mut q = Vec::new();
        loop {
            normalize(&mut r);
            let Some(dr) = Poly2::degree_of(&r) else {
                break;
            };
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            if q.len() <= shift / WORD {
                q.resize(shift / WORD + 1, 0);
            }
            q[shift / WORD] |= 1 << (shift % WORD);
            xor_shifted(&mut r, &divisor.words, shift);
        }
        Ok((Poly2::from_words(q), Poly2::from_words(r)))
    }

    /// Remainder modulo `divisor`, written `<a>` for the reduced representative.
    pub fn rem(&self, divisor: &Poly2) -> Result<Poly2> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Greatest common divisor (Euclid). `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    fn degree_of(words: &[u64]) -> Option<usize> {
        let last = *words.last()?;
        Some((words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    /// Solves `self = h * s` for `s`, lowest coefficient first.
    ///
    /// This is the software form of a feedback filter: each quotient bit is
    /// fixed by the lowest uncancelled bit of the running remainder, so the
    /// result is produced in stream order. `h(0)` must be 1. Fails with
    /// [`Error::InconsistentDivision`] when `h` does not divide `self` and with
    /// [`Error::TrailingBits`] when the quotient is longer than `out_len` bits.
    pub fn exact_div_low(&self, h: &Poly2, out_len: usize) -> Result<Poly2> {
        let dh = h.degree().ok_or(Error::DivisionByZero)?;
        if !h.coeff(0) {
            return Err(Error::NonUnitConstant);
        }
        let Some(top) = self.degree() else {
            return Ok(Poly2::zero());
        };
        if dh == 0 {
            return self.check_len(out_len).map(|_| self.clone());
        }
        let mut r = self.words.clone();
        let mut q = vec![0u64; r.len()];
        let mut wi = 0;
        while wi < r.len() {
            let w = r[wi];
            if w == 0 {
                wi += 1;
                continue;
            }
            let k = wi * WORD + w.trailing_zeros() as usize;
            if k + dh > top {
                return Err(Error::InconsistentDivision);
            }
            q[k / WORD] |= 1 << (k % WORD);
            xor_shifted(&mut r, &h.words, k);
        }
        let q = Poly2::from_words(q);
        q.check_len(out_len)?;
        Ok(q)
    }

    fn check_len(&self, limit: usize) -> Result<()> {
        if self.bit_len() > limit {
            Err(Error::TrailingBits { limit })
        } else {
            Ok(())
        }
    }

    /// Splits `self = z^t * h` with `h(0) = 1`.
    pub fn split_zt(&self) -> Result<(usize, Poly2)> {
        let t = self.lowest_term().ok_or(Error::ZeroPolynomial)?;
        Ok((t, self.shr(t)))
    }

    /// Hex coefficient mask, LSB = constant term, no prefix. Zero is `"0"`.
    pub fn to_hex(&self) -> String {
        let Some(last) = self.words.last() else {
            return "0".to_string();
        };
        let mut s = format!("{last:x}");
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    /// Parses a hex coefficient mask, with or without a `0x` prefix.
    pub fn from_hex(s: &str) -> Result<Poly2> {
        let t = s.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        if digits.is_empty() {
            return Err(Error::ParsePoly(s.to_string()));
        }
        let mut words = Vec::with_capacity(digits.len() / 16 + 1);
        let bytes = digits.as_bytes();
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).expect("ascii slice");
            let w = u64::from_str_radix(chunk, 16).map_err(|_| Error::ParsePoly(s.to_string()))?;
            words.push(w);
            end = start;
        }
        Ok(Poly2::from_words(words))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        xor_shifted(&mut self.words, &rhs.words, 0);
        normalize(&mut self.words);
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        Poly2::mul(self, rhs)
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        Poly2::mul(&self, &rhs)
    }
}

impl fmt::Display for Poly2 {
    /// Human form, highest degree first: `z^2+z+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<usize> = self.terms().collect();
        for (n, &k) in terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str("+")?;
            }
            match k {
                0 => f.write_str("1")?,
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    /// Parses the human form. Repeated terms cancel.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::ParsePoly(s.to_string()));
        }
        if compact == "0" {
            return Ok(Poly2::zero());
        }
        let mut p = Poly2::zero();
        for term in compact.split('+') {
            let k = match term {
                "1" => 0,
                "z" => 1,
                _ => term
                    .strip_prefix("z^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| Error::ParsePoly(s.to_string()))?,
            };
            p += &Poly2::monomial(k);
        }
        Ok(p)
    }
}
