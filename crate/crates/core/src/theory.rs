//! Parental pairs of zero, their ancestor families, and the rhythm polynomial
//! `Bav_N^0` in closed form and by recurrence.
//!
//! All polynomials here live in the `y` basis over `Z_{N,±}`. A `y` polynomial
//! describes a function of a Boolean vector `v` through `y = v + 1`; use
//! [`AnfPoly::value_at_vector`] to evaluate it on vectors.

use serde::Serialize;
use serde_json::{json, Value};

use crate::anf::{AnfPoly, Basis, EXHAUSTIVE_BOUND};
use crate::boolvec::{check_width, BoolVec, Convention};
use crate::error::{Error, Result};
use crate::modular::{Modulus, SignedIndex};

/// Largest `N` for which `Bav_N^0` is derived from its truth table.
pub const ENUMERATE_BOUND: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// `(-k, k)`
    Par0,
    /// `(-k, k + 1)`
    Par1,
}

/// A pair `(a, b)` in `Z_{N,±}` whose signed average is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParentalPair {
    a: SignedIndex,
    b: SignedIndex,
    kind: PairKind,
}

impl ParentalPair {
    pub fn new(modulus: Modulus, a: i32, b: i32) -> Result<Self> {
        let not_parental = || Error::NotParental {
            a: a as i64,
            b: b as i64,
            n: modulus.get(),
        };
        let (sa, sb) = (
            modulus.signed(a).map_err(|_| not_parental())?,
            modulus.signed(b).map_err(|_| not_parental())?,
        );
        if sa.av(sb).value() != 0 {
            return Err(not_parental());
        }
        let kind = if b == -a {
            PairKind::Par0
        } else if b == -a + 1 {
            PairKind::Par1
        } else {
            return Err(not_parental());
        };
        Ok(ParentalPair { a: sa, b: sb, kind })
    }

    pub fn a(&self) -> i32 {
        self.a.value()
    }

    pub fn b(&self) -> i32 {
        self.b.value()
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn modulus(&self) -> Modulus {
        self.a.modulus()
    }

    /// `b - a`
    pub fn width(&self) -> u32 {
        (self.b() - self.a()) as u32
    }

    pub fn is_zero_pair(&self) -> bool {
        self.a() == 0 && self.b() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": self.a(), "b": self.b() })
    }

    pub fn from_json(modulus: Modulus, value: &Value) -> Result<Self> {
        let field = |k: &str| {
            value
                .get(k)
                .and_then(Value::as_i64)
                .and_then(|x| i32::try_from(x).ok())
                .ok_or_else(|| Error::Parse(format!("parental pair JSON needs integer {k:?}")))
        };
        Self::new(modulus, field("a")?, field("b")?)
    }
}

impl std::fmt::Display for ParentalPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a(), self.b())
    }
}

/// `Par_N`, ordered by interval width: (0,0), (0,1), (-1,1), (-1,2), ...
pub fn parental_pairs(modulus: Modulus) -> Vec<ParentalPair> {
    (0..modulus.get() as i32)
        .map(|width| {
            let k = width / 2;
            let (a, b, kind) = if width % 2 == 0 {
                (-k, k, PairKind::Par0)
            } else {
                (-k, k + 1, PairKind::Par1)
            };
            let pair = ParentalPair {
                a: modulus.signed(a).expect("a lies in Z_{N,±}"),
                b: modulus.signed(b).expect("b lies in Z_{N,±}"),
                kind,
            };
            debug_assert_eq!(pair.a.av(pair.b).value(), 0);
            pair
        })
        .collect()
}

fn y_var(modulus: Modulus, index: i32) -> Result<AnfPoly> {
    AnfPoly::variable(modulus, Basis::Y, index)
}

fn y_plus_one(modulus: Modulus, index: i32) -> Result<AnfPoly> {
    AnfPoly::negated_variable(modulus, Basis::Y, index)
}

fn y_product(modulus: Modulus, indices: impl IntoIterator<Item = i32>) -> Result<AnfPoly> {
    let vars = indices
        .into_iter()
        .map(|k| y_var(modulus, k))
        .collect::<Result<Vec<_>>>()?;
    AnfPoly::product(modulus, Basis::Y, &vars)
}

/// `f_{[a,b]} = (y_a + 1) (∏_{a<k<b} y_k) (y_b + 1)`
pub fn f_interval(pair: &ParentalPair) -> Result<AnfPoly> {
    if pair.is_zero_pair() {
        return Err(Error::ZeroPair);
    }
    let m = pair.modulus();
    let (a, b) = (pair.a(), pair.b());
    y_plus_one(m, a)?
        .multiply(&y_product(m, a + 1..b)?)?
        .multiply(&y_plus_one(m, b)?)
}

/// `f_{[0,0]}^N = (y_0 + 1) ∏_{k ≠ 0} y_k`
pub fn f_zero(modulus: Modulus) -> Result<AnfPoly> {
    check_width(modulus)?;
    let others = (modulus.least()..=modulus.greatest()).filter(|&k| k != 0);
    y_plus_one(modulus, 0)?.multiply(&y_product(modulus, others)?)
}

/// `Bav_N^0` as the sum of the interval polynomials of `Par_N \ {(0,0)}` and
/// the singleton polynomial.
pub fn closed_form_bav0(modulus: Modulus) -> Result<AnfPoly> {
    let mut acc = f_zero(modulus)?;
    for pair in parental_pairs(modulus).iter().filter(|p| !p.is_zero_pair()) {
        acc = acc.add(&f_interval(pair)?)?;
    }
    Ok(acc)
}

/// Term added to `Bav_{N-1}^0` to obtain `Bav_N^0`.
pub fn recurrence_increment(modulus: Modulus) -> Result<AnfPoly> {
    let n = modulus.get() as i32;
    if n < 4 {
        return Err(Error::InvalidModulus(modulus.get()));
    }
    let half = n / 2;
    let (negatives, tail, pair_left, pair_right) = if n % 2 == 0 {
        // y_{-m+2}..y_{-1} y_1..y_{m-1} (y_m + 1)(y_0 + y_{-m+1})
        (-half + 2..0, y_plus_one(modulus, half)?, 0, -half + 1)
    } else {
        // y_{-m+1}..y_{-1} y_1..y_{m-1} (y_{-m} + 1)(y_0 + y_m)
        (-half + 1..0, y_plus_one(modulus, -half)?, 0, half)
    };
    let core = y_product(modulus, negatives.chain(1..half))?;
    let sum = y_var(modulus, pair_left)?.add(&y_var(modulus, pair_right)?)?;
    core.multiply(&tail)?.multiply(&sum)
}

/// One step of the recurrence: `Bav_{N-1}^0 ↦ Bav_N^0`.
pub fn recurrence_step(prev: &AnfPoly) -> Result<AnfPoly> {
    if prev.basis() != Basis::Y {
        return Err(Error::InvalidPolynomial(
            "recurrence input must be in the y basis".into(),
        ));
    }
    let target = Modulus::new(prev.modulus().get() + 1)?;
    check_width(target)?;
    prev.embed(target)?.add(&recurrence_increment(target)?)
}

/// `Bav_N^0` in the `v` basis, derived from the truth table of the 0-th
/// coordinate of the Boolean average.
pub fn enumerated_bav0(modulus: Modulus) -> Result<AnfPoly> {
    if modulus.get() > ENUMERATE_BOUND {
        return Err(Error::BoundExceeded {
            n: modulus.get(),
            bound: ENUMERATE_BOUND,
        });
    }
    AnfPoly::from_truth_table(modulus, Basis::V, |v| {
        v.bav_component(0).expect("index 0 exists")
    })
}

/// Iterates the recurrence from the enumerated `Bav_3^0` up to `N`.
pub fn recurrence_chain(modulus: Modulus) -> Result<Vec<AnfPoly>> {
    check_width(modulus)?;
    let mut current = enumerated_bav0(Modulus::new(3)?)?.to_basis(Basis::Y)?;
    let mut chain = vec![current.clone()];
    while current.modulus() != modulus {
        current = recurrence_step(&current)?;
        chain.push(current.clone());
    }
    Ok(chain)
}

/// `|Anc_{(a,b)}|`: `2^{N-1-(b-a)}`, or 1 for `(0,0)`.
pub fn ancestor_count(pair: &ParentalPair, modulus: Modulus) -> Result<u64> {
    let pair = if pair.modulus() == modulus {
        *pair
    } else {
        ParentalPair::new(modulus, pair.a(), pair.b())?
    };
    if pair.is_zero_pair() {
        Ok(1)
    } else {
        Ok(1u64 << (modulus.get() - 1 - pair.width()))
    }
}

/// The Boolean ancestors of zero generated by one parental pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AncestorFamily {
    pair: ParentalPair,
}

impl AncestorFamily {
    pub fn new(pair: ParentalPair) -> Self {
        AncestorFamily { pair }
    }

    pub fn pair(&self) -> &ParentalPair {
        &self.pair
    }

    pub fn count(&self) -> u64 {
        ancestor_count(&self.pair, self.pair.modulus())
            .expect("pair is parental for its own modulus")
    }

    /// (mask, pattern) on signed bit positions: the family is every vector
    /// agreeing with `pattern` on `mask`.
    fn constraint(&self) -> (u64, u64) {
        let m = self.pair.modulus();
        let pos = |j: i32| {
            Convention::Signed
                .position(m, j)
                .expect("pair indices lie in Z_{N,±}")
        };
        if self.pair.is_zero_pair() {
            let full = u64::MAX >> (64 - m.get());
            return (full, 1 << pos(0));
        }
        let (a, b) = (self.pair.a(), self.pair.b());
        let mask = (a..=b).fold(0u64, |acc, j| acc | 1 << pos(j));
        (mask, 1 << pos(a) | 1 << pos(b))
    }

    pub fn contains(&self, v: &BoolVec) -> Result<bool> {
        let m = self.pair.modulus();
        check_width(m)?;
        if v.modulus() != m {
            return Err(Error::ModulusMismatch {
                left: m.get(),
                right: v.modulus().get(),
            });
        }
        let (mask, pattern) = self.constraint();
        Ok(v.to_convention(Convention::Signed).bits() & mask == pattern)
    }

    /// Every member, as signed vectors in increasing order of packed word.
    pub fn enumerate(&self) -> Result<Vec<BoolVec>> {
        let m = self.pair.modulus();
        if m.get() > EXHAUSTIVE_BOUND {
            return Err(Error::BoundExceeded {
                n: m.get(),
                bound: EXHAUSTIVE_BOUND,
            });
        }
        let (mask, pattern) = self.constraint();
        let free = !mask & (u64::MAX >> (64 - m.get()));
        let mut out = Vec::with_capacity(1usize << free.count_ones());
        let mut sub = 0u64;
        loop {
            out.push(BoolVec::from_bits(m, Convention::Signed, pattern | sub)?);
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
        Ok(out)
    }

    /// The indicator polynomial of the family.
    pub fn indicator(&self) -> Result<AnfPoly> {
        if self.pair.is_zero_pair() {
            f_zero(self.pair.modulus())
        } else {
            f_interval(&self.pair)
        }
    }
}

/// Lists the members of the `(a,b)` family for `pair`; see [`AncestorFamily`].
pub fn enumerate_ancestors(pair: &ParentalPair) -> Result<Vec<BoolVec>> {
    AncestorFamily::new(*pair).enumerate()
}
