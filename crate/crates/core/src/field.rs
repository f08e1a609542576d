//! Arithmetic in GF(2^k) for 1 <= k <= 16.
//!
//! Elements are polynomials over GF(2) packed into a `u16`, bit `i` being the
//! coefficient of `x^i`. Addition is XOR and does not need the field context,
//! so [`Scalar`] implements `Add` directly. Multiplication goes through the
//! log/exp tables held by a [`Field`].

use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of GF(2^k), stored as its polynomial bits.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Scalar(pub u16);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for Scalar {
    type Output = Scalar;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 ^ rhs.0)
    }
}

impl AddAssign for Scalar {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 ^ rhs.0)
    }
}

impl SubAssign for Scalar {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The parameters identifying a field: extension degree and modulus bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub k: u32,
    pub modulus: u32,
}

struct Tables {
    spec: FieldSpec,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so products of logs never need a reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
}

/// A finite field GF(2^k). Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}; modulus {:#b})",
            self.0.spec.k, self.0.spec.modulus
        )
    }
}

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

fn poly_mulmod(a: u32, b: u32, m: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if degree(a) >= degree(m) {
            a ^= m;
        }
    }
    acc
}

/// Irreducibility over GF(2) by trial division by every polynomial of degree
/// at most `deg(p) / 2`.
pub fn is_irreducible(p: u32) -> bool {
    let d = degree(p);
    if d < 1 {
        return false;
    }
    let half = d / 2;
    (2u32..(1u32 << (half + 1))).all(|q| poly_mod(p, q) != 0)
}

/// The smallest irreducible polynomial of degree `k`, read as an integer.
pub fn default_modulus(k: u32) -> u32 {
    ((1u32 << k)..(1u32 << (k + 1)))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// GF(2^k) with the given modulus, or the default one when `None`.
    /// For `k = 1` the modulus is ignored.
    pub fn new(k: u32, modulus: Option<u32>) -> Result<Field> {
        if !(1..=16).contains(&k) {
            return Err(Error::InvalidField(format!(
                "k must lie in 1..=16, got {k}"
            )));
        }
        let modulus = if k == 1 {
            0b11
        } else {
            match modulus {
                None => default_modulus(k),
                Some(m) => {
                    if degree(m) != k as i32 {
                        return Err(Error::InvalidField(format!(
                            "modulus {m:#b} does not have degree {k}"
                        )));
                    }
                    if !is_irreducible(m) {
                        return Err(Error::InvalidField(format!("modulus {m:#b} is reducible")));
                    }
                    m
                }
            }
        };
        let q = 1usize << k;
        let order = q - 1;
        // The multiplicative group is cyclic; find a generator by brute force.
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u32; q];
        for g in 1..q as u32 {
            let mut x = 1u32;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().take(order).enumerate() {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x as u16;
                x = poly_mulmod(x, g, modulus);
            }
            if ok && x == 1 {
                break;
            }
        }
        for i in 0..order {
            exp[order + i] = exp[i];
            log[exp[i] as usize] = i as u32;
        }
        Ok(Field(Arc::new(Tables {
            spec: FieldSpec { k, modulus },
            exp,
            log,
        })))
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        Field::new(spec.k, Some(spec.modulus))
    }

    /// GF(2).
    pub fn gf2() -> Field {
        Field::new(1, None).expect("GF(2) is valid")
    }

    /// GF(4) with modulus x^2 + x + 1.
    pub fn gf4() -> Field {
        Field::new(2, None).expect("GF(4) is valid")
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    pub fn k(&self) -> u32 {
        self.0.spec.k
    }

    /// Number of elements, `2^k`.
    pub fn size(&self) -> usize {
        1usize << self.0.spec.k
    }

    pub fn contains(&self, raw: u32) -> bool {
        (raw as usize) < self.size()
    }

    pub fn element(&self, raw: u32) -> Result<Scalar> {
        if self.contains(raw) {
            Ok(Scalar(raw as u16))
        } else {
            Err(Error::InvalidInput(format!(
                "scalar {raw} out of range for GF(2^{})",
                self.k()
            )))
        }
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.size() as u32).map(|v| Scalar(v as u16))
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let t = &*self.0;
        Scalar(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    #[inline]
    pub fn square(&self, a: Scalar) -> Scalar {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.0;
        let order = self.size() - 1;
        let l = t.log[a.0 as usize] as usize;
        Ok(Scalar(t.exp[(order - l) % order]))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }
}
