//! Boolean vectors of length `N` and the Boolean average.
//!
//! A vector is packed into a `u64`, so `N <= 64`. Under the non-negative
//! convention bit `i` holds the coordinate with index `i ∈ Z_N`; under the
//! signed convention bit `j - ℓ` holds the coordinate with index
//! `j ∈ Z_{N,±} = [ℓ, g]`. Conversions between the two are explicit.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::literal::{format_tuple, parse_tuple};
use crate::modular::Modulus;
use crate::rhythm::{IncreasingRhythm, Rhythm, SignedRhythm};

/// Largest `N` a packed vector can hold.
pub const MAX_BITS: u32 = 64;

/// Index set of a vector or polynomial: `Z_N` or `Z_{N,±}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    NonNeg,
    Signed,
}

impl Convention {
    /// Bit position of `index`, if it belongs to this index set.
    pub fn position(self, modulus: Modulus, index: i32) -> Option<usize> {
        let (lo, hi) = self.range(modulus);
        (lo..=hi).contains(&index).then(|| (index - lo) as usize)
    }

    /// Index stored at bit `pos`.
    pub fn index(self, modulus: Modulus, pos: usize) -> i32 {
        self.range(modulus).0 + pos as i32
    }

    /// Inclusive index range.
    pub fn range(self, modulus: Modulus) -> (i32, i32) {
        match self {
            Convention::NonNeg => (0, modulus.get() as i32 - 1),
            Convention::Signed => (modulus.least(), modulus.greatest()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::NonNeg => "nonneg",
            Convention::Signed => "signed",
        }
    }
}

pub(crate) fn check_width(modulus: Modulus) -> Result<()> {
    if modulus.get() > MAX_BITS {
        Err(Error::TooWide(modulus.get()))
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn full_mask(modulus: Modulus) -> u64 {
    u64::MAX >> (64 - modulus.get())
}

/// Moves bits from the non-negative layout to the signed layout.
pub(crate) fn nonneg_to_signed_bits(modulus: Modulus, bits: u64) -> u64 {
    // signed position p holds index ℓ + p, i.e. residue ⟨ℓ + p⟩_N; this is a
    // rotation of the word by -ℓ
    let n = modulus.get();
    let shift = (-modulus.least()) as u32;
    rotate_within(bits, n, (n - shift) % n)
}

pub(crate) fn signed_to_nonneg_bits(modulus: Modulus, bits: u64) -> u64 {
    let n = modulus.get();
    let shift = (-modulus.least()) as u32;
    rotate_within(bits, n, shift)
}

/// Rotates an `n`-bit word so that bit `(i + shift) mod n` moves to bit `i`.
#[inline]
fn rotate_within(bits: u64, n: u32, shift: u32) -> u64 {
    if shift == 0 {
        return bits;
    }
    let mask = u64::MAX >> (64 - n);
    ((bits >> shift) | (bits << (n - shift))) & mask
}

/// Boolean average of a packed non-negative vector.
#[inline]
pub(crate) fn bav_bits(modulus: Modulus, bits: u64) -> u64 {
    if bits.count_ones() < 2 {
        return bits;
    }
    let first = bits.trailing_zeros();
    let mut out = 0u64;
    let mut rest = bits & (bits - 1);
    let mut prev = first;
    while rest != 0 {
        let next = rest.trailing_zeros();
        out |= 1 << modulus.av_raw(prev, next);
        prev = next;
        rest &= rest - 1;
    }
    out | 1 << modulus.av_raw(prev, first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoolVec {
    bits: u64,
    convention: Convention,
    modulus: Modulus,
}

impl BoolVec {
    pub fn zero(modulus: Modulus, convention: Convention) -> Result<Self> {
        Self::from_bits(modulus, convention, 0)
    }

    pub fn ones(modulus: Modulus, convention: Convention) -> Result<Self> {
        check_width(modulus)?;
        Ok(BoolVec {
            bits: full_mask(modulus),
            convention,
            modulus,
        })
    }

    /// Wraps a packed word; bits above `N` must be clear.
    pub fn from_bits(modulus: Modulus, convention: Convention, bits: u64) -> Result<Self> {
        check_width(modulus)?;
        if bits & !full_mask(modulus) != 0 {
            return Err(Error::OutOfRange {
                value: (63 - bits.leading_zeros()) as i64,
                n: modulus.get(),
            });
        }
        Ok(BoolVec {
            bits,
            convention,
            modulus,
        })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(modulus: Modulus, convention: Convention, bits: u64) -> Self {
        BoolVec {
            bits,
            convention,
            modulus,
        }
    }

    /// Builds a vector from the coordinates listed in index order.
    pub fn from_coordinates(
        modulus: Modulus,
        convention: Convention,
        coords: &[bool],
    ) -> Result<Self> {
        check_width(modulus)?;
        if coords.len() != modulus.get() as usize {
            return Err(Error::LengthMismatch {
                expected: modulus.get() as usize,
                found: coords.len(),
            });
        }
        let bits = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Ok(BoolVec {
            bits,
            convention,
            modulus,
        })
    }

    /// Every vector of `B_N` in order of its packed word.
    pub fn all(modulus: Modulus, convention: Convention) -> Result<impl Iterator<Item = BoolVec>> {
        check_width(modulus)?;
        let end = full_mask(modulus);
        Ok((0..=end).map(move |bits| BoolVec {
            bits,
            convention,
            modulus,
        }))
    }

    /// Parses `(0,0,1,1,0,0,0,1)`; coordinates are listed in index order.
    pub fn parse(modulus: Modulus, convention: Convention, text: &str) -> Result<Self> {
        let coords = parse_tuple(text)?
            .into_iter()
            .map(|x| match x {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Parse(format!("bit must be 0 or 1, got {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coordinates(modulus, convention, &coords)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn convention(&self) -> Convention {
        self.convention
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.modulus.get() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn get(&self, index: i32) -> Result<bool> {
        let pos = self.position(index)?;
        Ok(self.bits >> pos & 1 == 1)
    }

    pub fn with(&self, index: i32, value: bool) -> Result<BoolVec> {
        let pos = self.position(index)?;
        let bits = (self.bits & !(1 << pos)) | (value as u64) << pos;
        Ok(BoolVec { bits, ..*self })
    }

    fn position(&self, index: i32) -> Result<usize> {
        self.convention
            .position(self.modulus, index)
            .ok_or(Error::OutOfRange {
                value: index as i64,
                n: self.modulus.get(),
            })
    }

    /// Coordinates in index order.
    pub fn coordinates(&self) -> Vec<bool> {
        (0..self.len()).map(|p| self.bits >> p & 1 == 1).collect()
    }

    /// Indices of the non-zero coordinates, increasing.
    pub fn supp(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        let mut rest = self.bits;
        while rest != 0 {
            out.push(
                self.convention
                    .index(self.modulus, rest.trailing_zeros() as usize),
            );
            rest &= rest - 1;
        }
        out
    }

    pub fn complement(&self) -> BoolVec {
        BoolVec {
            bits: !self.bits & full_mask(self.modulus),
            ..*self
        }
    }

    pub fn to_convention(&self, target: Convention) -> BoolVec {
        let bits = match (self.convention, target) {
            (Convention::NonNeg, Convention::Signed) => {
                nonneg_to_signed_bits(self.modulus, self.bits)
            }
            (Convention::Signed, Convention::NonNeg) => {
                signed_to_nonneg_bits(self.modulus, self.bits)
            }
            _ => self.bits,
        };
        BoolVec {
            bits,
            convention: target,
            modulus: self.modulus,
        }
    }

    /// Characteristic vector of a rhythm (order of onsets is forgotten).
    pub fn from_rhythm(rhythm: &Rhythm) -> Result<Self> {
        let m = rhythm.modulus();
        check_width(m)?;
        let bits = rhythm.values().iter().fold(0u64, |acc, &a| acc | 1 << a);
        Ok(BoolVec {
            bits,
            convention: Convention::NonNeg,
            modulus: m,
        })
    }

    pub fn from_increasing(rhythm: &IncreasingRhythm) -> Result<Self> {
        Self::from_rhythm(rhythm)
    }

    /// Characteristic vector, indexed by `Z_{N,±}`, of a signed rhythm.
    pub fn from_signed_rhythm(rhythm: &SignedRhythm) -> Result<Self> {
        let m = rhythm.modulus();
        check_width(m)?;
        let bits = rhythm.values().iter().fold(0u64, |acc, &j| {
            acc | 1 << Convention::Signed.position(m, j).expect("validated onset")
        });
        Ok(BoolVec {
            bits,
            convention: Convention::Signed,
            modulus: m,
        })
    }

    /// The support in increasing order, as a rhythm.
    pub fn btoi(&self) -> Result<IncreasingRhythm> {
        if self.convention != Convention::NonNeg {
            return Err(Error::ConventionMismatch);
        }
        let onsets = self.supp().into_iter().map(|i| i as u32).collect();
        Ok(IncreasingRhythm::from_sorted_unchecked(
            self.modulus,
            onsets,
        ))
    }

    /// The support in increasing order, as a signed rhythm.
    pub fn btoi_signed(&self) -> Result<SignedRhythm> {
        if self.convention != Convention::Signed {
            return Err(Error::ConventionMismatch);
        }
        Ok(SignedRhythm::from_sorted_unchecked(
            self.modulus,
            self.supp(),
        ))
    }

    /// Cyclic shift `(v_{N-1}, v_0, .., v_{N-2})`, i.e. index `i` moves to `i +_N 1`.
    pub fn btr(&self) -> BoolVec {
        let n = self.modulus.get();
        // a cyclic index shift looks the same in either layout
        BoolVec {
            bits: rotate_within(self.bits, n, n - 1),
            ..*self
        }
    }

    /// The Boolean average `ItoB ∘ Iav ∘ BtoI`. Signed vectors are averaged by
    /// conjugating with `φ`.
    pub fn bav(&self) -> BoolVec {
        match self.convention {
            Convention::NonNeg => BoolVec {
                bits: bav_bits(self.modulus, self.bits),
                ..*self
            },
            Convention::Signed => self
                .to_convention(Convention::NonNeg)
                .bav()
                .to_convention(Convention::Signed),
        }
    }

    /// Coordinate `index` of `bav(self)`.
    pub fn bav_component(&self, index: i32) -> Result<bool> {
        self.bav().get(index)
    }

    pub fn to_json(&self) -> Value {
        let coords = self.coordinates();
        let bits = match self.convention {
            Convention::NonNeg => Value::Array(coords.iter().map(|&b| json!(b as u8)).collect()),
            Convention::Signed => {
                let mut map = Map::new();
                for (p, &b) in coords.iter().enumerate() {
                    map.insert(
                        Convention::Signed.index(self.modulus, p).to_string(),
                        json!(b as u8),
                    );
                }
                Value::Object(map)
            }
        };
        json!({ "n": self.modulus.get(), "convention": self.convention, "bits": bits })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("bool vector JSON: {what}"));
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing n"))?;
        let modulus = Modulus::new(u32::try_from(n).map_err(|_| bad("n too large"))?)?;
        let convention: Convention =
            serde_json::from_value(value.get("convention").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("convention must be \"nonneg\" or \"signed\""))?;
        let bit = |v: &Value| match v.as_u64() {
            Some(0) => Ok(false),
            Some(1) => Ok(true),
            _ => Err(bad("bits must be 0 or 1")),
        };
        let mut out = BoolVec::zero(modulus, convention)?;
        match (convention, value.get("bits")) {
            (Convention::NonNeg, Some(Value::Array(items))) => {
                let coords = items.iter().map(bit).collect::<Result<Vec<_>>>()?;
                out = BoolVec::from_coordinates(modulus, convention, &coords)?;
            }
            (Convention::Signed, Some(Value::Object(map))) => {
                if map.len() != modulus.get() as usize {
                    return Err(Error::LengthMismatch {
                        expected: modulus.get() as usize,
                        found: map.len(),
                    });
                }
                for (key, v) in map {
                    let index: i32 = key
                        .parse()
                        .map_err(|_| bad("index keys must be integers"))?;
                    out = out.with(index, bit(v)?)?;
                }
            }
            _ => return Err(bad("bits has the wrong shape for the convention")),
        }
        Ok(out)
    }
}

impl fmt::Display for BoolVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(
            self.coordinates().into_iter().map(|b| b as u8),
        ))
    }
}
