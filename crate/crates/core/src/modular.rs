//! Arithmetic on `Z_N = {0, .., N-1}` and on the least absolute remainders
//! `Z_{N,±} = [-⌊(N-1)/2⌋, ⌊N/2⌋]`.
//!
//! [`Zn`] and [`SignedIndex`] are distinct types. Moving between them always
//! goes through [`Zn::phi`] and [`SignedIndex::phi_inv`]. Binary operations on
//! elements of different moduli panic: the modulus is part of the element's
//! type in the mathematical sense, so mixing them is a programming error.

use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_MODULUS: u32 = 1 << 16;

/// The modulus `N` (3 <= N <= 2^16).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Result<Self> {
        if (3..=MAX_MODULUS).contains(&n) {
            Ok(Modulus(n))
        } else {
            Err(Error::InvalidModulus(n))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `ℓ = -⌊(N-1)/2⌋`, the least element of `Z_{N,±}`.
    #[inline]
    pub fn least(self) -> i32 {
        -(((self.0 - 1) / 2) as i32)
    }

    /// `g = ⌊N/2⌋`, the greatest element of `Z_{N,±}`.
    #[inline]
    pub fn greatest(self) -> i32 {
        (self.0 / 2) as i32
    }

    pub fn elem(self, value: u32) -> Result<Zn> {
        if value < self.0 {
            Ok(Zn {
                value,
                modulus: self,
            })
        } else {
            Err(Error::OutOfRange {
                value: value as i64,
                n: self.0,
            })
        }
    }

    /// `⟨value⟩_N`, the residue of an arbitrary integer.
    pub fn reduce(self, value: i64) -> Zn {
        Zn {
            value: value.rem_euclid(self.0 as i64) as u32,
            modulus: self,
        }
    }

    pub fn signed(self, value: i32) -> Result<SignedIndex> {
        if (self.least()..=self.greatest()).contains(&value) {
            Ok(SignedIndex {
                value,
                modulus: self,
            })
        } else {
            Err(Error::OutOfRange {
                value: value as i64,
                n: self.0,
            })
        }
    }

    pub fn elements(self) -> impl Iterator<Item = Zn> {
        (0..self.0).map(move |value| Zn {
            value,
            modulus: self,
        })
    }

    pub fn signed_elements(self) -> impl Iterator<Item = SignedIndex> {
        (self.least()..=self.greatest()).map(move |value| SignedIndex {
            value,
            modulus: self,
        })
    }

    // Unchecked kernels on raw residues. Callers guarantee `a, b < N`.

    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub(crate) fn av_raw(self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.sub_raw(b, a) / 2)
    }

    #[inline]
    pub(crate) fn phi_raw(self, k: u32) -> i32 {
        if k <= self.0 / 2 {
            k as i32
        } else {
            k as i32 - self.0 as i32
        }
    }

    #[inline]
    pub(crate) fn phi_inv_raw(self, j: i32) -> u32 {
        (j as i64).rem_euclid(self.0 as i64) as u32
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which endpoints an interval in `Z_N` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    /// `[a, b]`
    Closed,
    /// `[a, b)`
    HalfOpenRight,
    /// `(a, b]`
    HalfOpenLeft,
}

/// A residue in `Z_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zn {
    value: u32,
    modulus: Modulus,
}

fn same_modulus(left: Modulus, right: Modulus) {
    assert_eq!(left, right, "operands belong to different moduli");
}

impl Zn {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    /// `a +_N b`
    pub fn add_mod(self, other: Zn) -> Zn {
        same_modulus(self.modulus, other.modulus);
        Zn {
            value: self.modulus.add_raw(self.value, other.value),
            modulus: self.modulus,
        }
    }

    /// `a -_N b`
    pub fn sub_mod(self, other: Zn) -> Zn {
        same_modulus(self.modulus, other.modulus);
        Zn {
            value: self.modulus.sub_raw(self.value, other.value),
            modulus: self.modulus,
        }
    }

    /// Directed distance from `self` to `to`, i.e. `to -_N self`.
    pub fn distance(self, to: Zn) -> u32 {
        to.sub_mod(self).value
    }

    /// The wrap-around interval from `self` to `end`, in cyclic order.
    pub fn interval(self, end: Zn, kind: IntervalKind) -> Vec<Zn> {
        same_modulus(self.modulus, end.modulus);
        let n = self.modulus.0;
        let span = self.distance(end);
        let (skip, len) = match kind {
            IntervalKind::Closed => (0, span + 1),
            IntervalKind::HalfOpenRight => (0, span),
            IntervalKind::HalfOpenLeft => (1, span),
        };
        (skip..skip + len)
            .map(|k| Zn {
                value: ((self.value as u64 + k as u64) % n as u64) as u32,
                modulus: self.modulus,
            })
            .collect()
    }

    /// The discrete average `a +_N ⌊(b -_N a)/2⌋`.
    pub fn av(self, other: Zn) -> Zn {
        same_modulus(self.modulus, other.modulus);
        Zn {
            value: self.modulus.av_raw(self.value, other.value),
            modulus: self.modulus,
        }
    }

    /// Closed form of [`Zn::av`] by cases on `a <= b`; kept as an independent
    /// route for cross-checking.
    pub fn av_oracle(self, other: Zn) -> Zn {
        same_modulus(self.modulus, other.modulus);
        let (a, b, n) = (self.value as u64, other.value as u64, self.modulus.0 as u64);
        let value = if a <= b {
            (a + b) / 2
        } else {
            ((a + b + n) / 2) % n
        };
        Zn {
            value: value as u32,
            modulus: self.modulus,
        }
    }

    /// The least absolute remainder `φ_N(k)`.
    pub fn phi(self) -> SignedIndex {
        SignedIndex {
            value: self.modulus.phi_raw(self.value),
            modulus: self.modulus,
        }
    }
}

impl Add for Zn {
    type Output = Zn;
    fn add(self, rhs: Zn) -> Zn {
        self.add_mod(rhs)
    }
}

impl Sub for Zn {
    type Output = Zn;
    fn sub(self, rhs: Zn) -> Zn {
        self.sub_mod(rhs)
    }
}

impl fmt::Display for Zn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A least absolute remainder in `Z_{N,±}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedIndex {
    value: i32,
    modulus: Modulus,
}

impl SignedIndex {
    #[inline]
    pub fn value(self) -> i32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    /// The residue in `Z_N` congruent to `self`.
    pub fn phi_inv(self) -> Zn {
        Zn {
            value: self.modulus.phi_inv_raw(self.value),
            modulus: self.modulus,
        }
    }

    /// `φ(av(φ⁻¹(a), φ⁻¹(b)))`
    pub fn av(self, other: SignedIndex) -> SignedIndex {
        same_modulus(self.modulus, other.modulus);
        self.phi_inv().av(other.phi_inv()).phi()
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
