//! Rhythms modulo `N` and the maps acting on them.
//!
//! A rhythm with `n >= 2` onsets is a tuple of distinct residues whose cyclic
//! gaps `a_{i+1} -_N a_i` sum to exactly `N`, i.e. the tuple winds around the
//! cycle once. The empty tuple and singletons are rhythms as well. Every
//! constructor validates, so the operations below never re-check membership.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::literal::{format_tuple, parse_tuple};
use crate::modular::{Modulus, Zn};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rhythm {
    onsets: Vec<u32>,
    modulus: Modulus,
}

impl Rhythm {
    pub fn empty(modulus: Modulus) -> Self {
        Rhythm {
            onsets: Vec::new(),
            modulus,
        }
    }

    /// Validates a tuple of residues.
    pub fn new(modulus: Modulus, onsets: &[Zn]) -> Result<Self> {
        if let Some(bad) = onsets.iter().find(|x| x.modulus() != modulus) {
            return Err(Error::ModulusMismatch {
                left: modulus.get(),
                right: bad.modulus().get(),
            });
        }
        let values: Vec<u32> = onsets.iter().map(|x| x.value()).collect();
        Self::from_values(modulus, &values)
    }

    pub fn from_values(modulus: Modulus, onsets: &[u32]) -> Result<Self> {
        let n = modulus.get();
        if let Some(&bad) = onsets.iter().find(|&&x| x >= n) {
            return Err(Error::OutOfRange {
                value: bad as i64,
                n,
            });
        }
        let mut seen = vec![false; n as usize];
        for &x in onsets {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::DuplicateOnset(x as i64));
            }
        }
        if onsets.len() >= 2 {
            let sum: u64 = cyclic_pairs(onsets)
                .map(|(a, b)| modulus.sub_raw(b, a) as u64)
                .sum();
            if sum != n as u64 {
                return Err(Error::WrapSumViolation { sum, n });
            }
        }
        Ok(Rhythm {
            onsets: onsets.to_vec(),
            modulus,
        })
    }

    /// Parses a literal such as `(2,3,7)` or `()`.
    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let values = parse_tuple(text)?
            .into_iter()
            .map(|v| {
                u32::try_from(v)
                    .ok()
                    .filter(|&x| x < modulus.get())
                    .ok_or(Error::OutOfRange {
                        value: v,
                        n: modulus.get(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(modulus, &values)
    }

    pub(crate) fn from_values_unchecked(modulus: Modulus, onsets: Vec<u32>) -> Self {
        debug_assert!(Self::from_values(modulus, &onsets).is_ok());
        Rhythm { onsets, modulus }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.onsets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.onsets.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[u32] {
        &self.onsets
    }

    pub fn onsets(&self) -> Vec<Zn> {
        self.onsets.iter().map(|&v| self.zn(v)).collect()
    }

    pub fn contains(&self, x: Zn) -> bool {
        x.modulus() == self.modulus && self.onsets.contains(&x.value())
    }

    fn zn(&self, v: u32) -> Zn {
        self.modulus.elem(v).expect("onsets are validated")
    }

    /// The discrete average: each onset is replaced by the average of itself
    /// and its cyclic successor. Identity on rhythms with fewer than two onsets.
    pub fn rav(&self) -> Rhythm {
        if self.len() < 2 {
            return self.clone();
        }
        let m = self.modulus;
        let onsets = cyclic_pairs(&self.onsets)
            .map(|(a, b)| m.av_raw(a, b))
            .collect();
        Rhythm::from_values_unchecked(m, onsets)
    }

    /// Right cyclic shift `(a_{n-1}, a_0, .., a_{n-2})`.
    pub fn rot(&self) -> Rhythm {
        self.rot_by(1)
    }

    pub fn rot_by(&self, times: usize) -> Rhythm {
        let mut onsets = self.onsets.clone();
        if !onsets.is_empty() {
            let k = times % onsets.len();
            onsets.rotate_right(k);
        }
        Rhythm {
            onsets,
            modulus: self.modulus,
        }
    }

    /// Translation by one: every onset moves to `a +_N 1`.
    pub fn tr(&self) -> Rhythm {
        let m = self.modulus;
        let onsets = self.onsets.iter().map(|&a| m.add_raw(a, 1)).collect();
        Rhythm { onsets, modulus: m }
    }

    /// The unique position `j` with `a_{j-1} > a_j` (indices mod `n`).
    pub fn jumping_number(&self) -> Result<usize> {
        let n = self.len();
        match n {
            0 => Err(Error::EmptyRhythm),
            1 => Ok(0),
            _ => Ok((0..n)
                .find(|&j| self.onsets[(j + n - 1) % n] > self.onsets[j])
                .expect("a rhythm with two or more onsets has exactly one descent")),
        }
    }

    pub fn is_increasing(&self) -> bool {
        self.onsets.windows(2).all(|w| w[0] < w[1])
    }

    /// Rotates into the increasing representative of the rotation class.
    pub fn pr_i(&self) -> IncreasingRhythm {
        let rotated = match self.jumping_number() {
            Err(_) => self.clone(),
            Ok(j) => {
                let n = self.len();
                self.rot_by((n - j) % n)
            }
        };
        debug_assert!(rotated.is_increasing());
        IncreasingRhythm(rotated)
    }
}

impl fmt::Display for Rhythm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(&self.onsets))
    }
}

fn cyclic_pairs<T: Copy>(xs: &[T]) -> impl Iterator<Item = (T, T)> + '_ {
    let n = xs.len();
    (0..n).map(move |i| (xs[i], xs[(i + 1) % n]))
}

/// A rhythm whose onsets are strictly increasing (jumping number 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncreasingRhythm(Rhythm);

impl IncreasingRhythm {
    pub fn new(rhythm: Rhythm) -> Result<Self> {
        if rhythm.is_increasing() {
            Ok(IncreasingRhythm(rhythm))
        } else {
            Err(Error::NotIncreasing)
        }
    }

    pub fn from_values(modulus: Modulus, onsets: &[u32]) -> Result<Self> {
        Self::new(Rhythm::from_values(modulus, onsets)?)
    }

    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        Self::new(Rhythm::parse(modulus, text)?)
    }

    pub(crate) fn from_sorted_unchecked(modulus: Modulus, onsets: Vec<u32>) -> Self {
        IncreasingRhythm(Rhythm::from_values_unchecked(modulus, onsets))
    }

    pub fn into_rhythm(self) -> Rhythm {
        self.0
    }

    /// `N - a_{n-1} > a_0`. Defined for two or more onsets.
    pub fn is_proper(&self) -> Result<bool> {
        let a = self.values();
        if a.len() < 2 {
            return Err(Error::TooFewOnsets {
                needed: 2,
                found: a.len(),
            });
        }
        Ok(self.modulus().get() - a[a.len() - 1] > a[0])
    }

    /// `Rav` followed by one rotation when the rhythm is improper, so the
    /// result is again increasing.
    pub fn iav(&self) -> IncreasingRhythm {
        let averaged = self.0.rav();
        match self.is_proper() {
            Ok(false) => IncreasingRhythm(averaged.rot()),
            _ => IncreasingRhythm(averaged),
        }
    }
}

impl Deref for IncreasingRhythm {
    type Target = Rhythm;
    fn deref(&self) -> &Rhythm {
        &self.0
    }
}

impl fmt::Display for IncreasingRhythm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The image of a rhythm under `φ_N` applied to every onset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedRhythm {
    onsets: Vec<i32>,
    modulus: Modulus,
}

impl SignedRhythm {
    pub fn new(modulus: Modulus, onsets: &[i32]) -> Result<Self> {
        let (lo, hi) = (modulus.least(), modulus.greatest());
        if let Some(&bad) = onsets.iter().find(|&&x| x < lo || x > hi) {
            return Err(Error::OutOfRange {
                value: bad as i64,
                n: modulus.get(),
            });
        }
        let values: Vec<u32> = onsets.iter().map(|&j| modulus.phi_inv_raw(j)).collect();
        Ok(Self::from_rhythm(&Rhythm::from_values(modulus, &values)?))
    }

    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let values = parse_tuple(text)?
            .into_iter()
            .map(|v| {
                i32::try_from(v).map_err(|_| Error::OutOfRange {
                    value: v,
                    n: modulus.get(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, &values)
    }

    pub fn from_rhythm(rhythm: &Rhythm) -> Self {
        let m = rhythm.modulus();
        SignedRhythm {
            onsets: rhythm.values().iter().map(|&k| m.phi_raw(k)).collect(),
            modulus: m,
        }
    }

    pub fn to_rhythm(&self) -> Rhythm {
        let m = self.modulus;
        Rhythm::from_values_unchecked(m, self.onsets.iter().map(|&j| m.phi_inv_raw(j)).collect())
    }

    pub(crate) fn from_sorted_unchecked(modulus: Modulus, onsets: Vec<i32>) -> Self {
        SignedRhythm { onsets, modulus }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn values(&self) -> &[i32] {
        &self.onsets
    }

    pub fn len(&self) -> usize {
        self.onsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.onsets.is_empty()
    }

    pub fn contains(&self, j: i32) -> bool {
        self.onsets.contains(&j)
    }

    pub fn is_increasing(&self) -> bool {
        self.onsets.windows(2).all(|w| w[0] < w[1])
    }

    /// `φ ∘ Rav ∘ φ⁻¹`
    pub fn rav(&self) -> SignedRhythm {
        SignedRhythm::from_rhythm(&self.to_rhythm().rav())
    }
}

impl fmt::Display for SignedRhythm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(&self.onsets))
    }
}

/// All increasing rhythms with `n` onsets, i.e. the `n`-subsets of `Z_N` in
/// lexicographic order.
pub fn increasing_rhythms(modulus: Modulus, n: usize) -> impl Iterator<Item = IncreasingRhythm> {
    let size = modulus.get() as usize;
    let mut current: Option<Vec<u32>> = (n <= size).then(|| (0..n as u32).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        // advance to the next combination
        let mut next = out.clone();
        let mut i = n;
        while i > 0 {
            i -= 1;
            if (next[i] as usize) < size - n + i {
                next[i] += 1;
                for k in i + 1..n {
                    next[k] = next[k - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(IncreasingRhythm::from_sorted_unchecked(modulus, out))
    })
}

/// Every rhythm in `R_N^n`: each increasing rhythm together with its `n`
/// rotations.
pub fn rhythms_with_onsets(modulus: Modulus, n: usize) -> impl Iterator<Item = Rhythm> {
    increasing_rhythms(modulus, n).flat_map(move |r| {
        let base = r.into_rhythm();
        (0..n.max(1)).map(move |k| base.rot_by(k))
    })
}

/// Every rhythm in `R_N = ⋃_n R_N^n`.
pub fn all_rhythms(modulus: Modulus) -> impl Iterator<Item = Rhythm> {
    (0..=modulus.get() as usize).flat_map(move |n| rhythms_with_onsets(modulus, n))
}
