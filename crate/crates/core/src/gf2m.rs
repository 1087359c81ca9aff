//! GF(2^m) arithmetic modulo a primitive polynomial `g(z)`.
//!
//! Elements are reduced coefficient masks of degree `< m`; all arithmetic
//! goes through a validated [`FieldCtx`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2poly::Poly2;

pub const MAX_DEGREE: u32 = 16;

/// Built-in primitive moduli for `m = 1..=16`, as coefficient masks.
const DEFAULT_MODULI: [u32; 16] = [
    0x3,     // z+1
    0x7,     // z^2+z+1
    0xB,     // z^3+z+1
    0x13,    // z^4+z+1
    0x25,    // z^5+z^2+1
    0x43,    // z^6+z+1
    0x89,    // z^7+z^3+1
    0x11D,   // z^8+z^4+z^3+z^2+1
    0x211,   // z^9+z^4+1
    0x409,   // z^10+z^3+1
    0x805,   // z^11+z^2+1
    0x1053,  // z^12+z^6+z^4+z+1
    0x201B,  // z^13+z^4+z^3+z+1
    0x4443,  // z^14+z^10+z^6+z+1
    0x8003,  // z^15+z+1
    0x1100B, // z^16+z^12+z^3+z+1
];

/// The built-in modulus for extension degree `m`.
pub fn default_modulus(m: u32) -> Result<Poly2> {
    if !(1..=MAX_DEGREE).contains(&m) {
        return Err(Error::UnsupportedDegree(m));
    }
    Ok(Poly2::from_mask(u64::from(DEFAULT_MODULI[m as usize - 1])))
}

/// Smallest `m` with `n <= 2^m - 1`.
pub fn degree_for_length(n: usize) -> u32 {
    let mut m = 1;
    while (1usize << m) - 1 < n {
        m += 1;
    }
    m
}

fn mul_mod(a: u32, b: u32, m: u32, g: u32) -> u32 {
    let top = 1u32 << m;
    let (mut a, mut b, mut r) = (a, b, 0u32);
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= g;
        }
    }
    r
}

/// True iff `g` has degree `m`, `g(0) = 1`, and `z` has multiplicative order
/// `2^m - 1` modulo `g`. Checked by walking the powers of `z`.
pub fn is_primitive(g: &Poly2, m: u32) -> bool {
    if !(1..=MAX_DEGREE).contains(&m) || g.degree() != Some(m as usize) || !g.coeff(0) {
        return false;
    }
    let mask = g.to_mask().expect("degree <= 16") as u32;
    let order = (1u32 << m) - 1;
    let z = if m == 1 { 1 } else { 2 };
    let mut x = 1u32;
    for i in 1..=order {
        x = mul_mod(x, z, m, mask);
        if x == 1 {
            return i == order;
        }
    }
    false
}

/// An element of GF(2^m): a reduced coefficient mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_poly(self) -> Poly2 {
        Poly2::from_mask(u64::from(self.0))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A validated field context: extension degree and primitive modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    m: u32,
    g: u32,
}

impl FieldCtx {
    /// Validates `g` as a primitive polynomial of degree `m`.
    pub fn new(m: u32, g: &Poly2) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        if !is_primitive(g, m) {
            return Err(Error::NotPrimitive {
                g: g.to_string(),
                m,
            });
        }
        Ok(Self {
            m,
            g: g.to_mask().expect("degree <= 16") as u32,
        })
    }

    /// Context whose degree is taken from the modulus.
    pub fn from_modulus(g: &Poly2) -> Result<Self> {
        let m = g.degree().ok_or(Error::ZeroPolynomial)?;
        let m = u32::try_from(m).map_err(|_| Error::UnsupportedDegree(u32::MAX))?;
        Self::new(m, g)
    }

    pub fn with_default(m: u32) -> Result<Self> {
        Self::new(m, &default_modulus(m)?)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative group order `2^m - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    pub fn modulus(&self) -> Poly2 {
        Poly2::from_mask(u64::from(self.g))
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Reduces an arbitrary polynomial to its representative `<p>`.
    pub fn elem(&self, p: &Poly2) -> FieldElem {
        let r = p.rem(&self.modulus()).expect("modulus is nonzero");
        FieldElem(r.to_mask().expect("reduced below degree m") as u32)
    }

    /// Element from a mask that must already be reduced.
    pub fn from_bits(&self, bits: u32) -> Option<FieldElem> {
        (bits >> self.m == 0).then_some(FieldElem(bits))
    }

    /// Every element, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..1u32 << self.m).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(mul_mod(a.0, b.0, self.m, self.g))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        let mut base = a;
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `<z^e>`; the exponent is reduced modulo `2^m - 1`.
    pub fn pow_z(&self, e: u64) -> FieldElem {
        let z = self.elem(&Poly2::monomial(1));
        self.pow(z, e % self.order())
    }

    /// Inverse via `a^(2^m - 2)`.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 1))
    }

    /// Discrete log base `z`, by search. Used for display only.
    pub fn log_z(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let z = self.pow_z(1);
        let mut x = self.one();
        for e in 0..self.order() {
            if x == a {
                return Some(e);
            }
            x = self.mul(x, z);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    fn gf8() -> FieldCtx {
        FieldCtx::new(3, &p("z^3+z+1")).unwrap()
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&p("z^3+z+1"), 3));
        assert!(is_primitive(&p("z^3+z^2+1"), 3));
        assert!(!is_primitive(&p("z^2"), 2));
        // irreducible but not primitive: z^4+z^3+z^2+z+1 has order 5
        assert!(!is_primitive(&p("z^4+z^3+z^2+z+1"), 4));
        // reducible
        assert!(!is_primitive(&p("z^4+1"), 4));
        assert!(matches!(
            FieldCtx::new(4, &p("z^4+1")),
            Err(Error::NotPrimitive { .. })
        ));
    }

    #[test]
    fn builtin_moduli_are_primitive() {
        for m in 1..=MAX_DEGREE {
            let g = default_modulus(m).unwrap();
            assert!(is_primitive(&g, m), "m = {m}: {g}");
        }
        assert!(default_modulus(17).is_err());
    }

    #[test]
    fn mul_examples() {
        let f = gf8();
        let z = f.elem(&p("z"));
        let z2 = f.elem(&p("z^2"));
        assert_eq!(f.mul(z, z2).to_poly(), p("z+1"));
        assert_eq!(f.mul(z2, f.one()), z2);
        let z3 = f.pow_z(3);
        assert_eq!(f.mul(z3, z3).to_poly(), p("z^2+1"));
    }

    #[test]
    fn pow_examples() {
        let f = gf8();
        assert_eq!(f.pow_z(0), f.one());
        assert_eq!(f.pow_z(4).to_poly(), p("z^2+z"));
        assert_eq!(f.pow_z(7), f.one());
        for e in 0..50u64 {
            assert_eq!(f.pow_z(e), f.pow_z(e % 7));
        }
    }

    #[test]
    fn inverse_examples() {
        let f = gf8();
        assert_eq!(f.inv(f.one()).unwrap(), f.one());
        assert_eq!(f.inv(f.elem(&p("z"))).unwrap().to_poly(), p("z^2+1"));
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        assert!(matches!(f.inv(f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    fn degree_for_length_examples() {
        assert_eq!(degree_for_length(3), 2);
        assert_eq!(degree_for_length(7), 3);
        assert_eq!(degree_for_length(8), 4);
        assert_eq!(degree_for_length(15), 4);
    }

    #[test]
    fn log_round_trip() {
        let f = gf8();
        for e in 0..7 {
            assert_eq!(f.log_z(f.pow_z(e)), Some(e));
        }
        assert_eq!(f.log_z(f.zero()), None);
    }
}
