//! Multilinear Boolean polynomials over `F_2` (algebraic normal form).
//!
//! A polynomial is a set of monomials; a monomial is a set of variables
//! packed into a `u64` with the same bit layout as [`BoolVec`]. Because
//! `x^2 = x` and `2 = 0`, products are unions of variable sets and sums are
//! symmetric differences of monomial sets.
//!
//! The variable basis only affects naming and which index set is in use:
//! `v` and `w` are indexed by `Z_N`, `y` by `Z_{N,±}`. `w_i = v_i + 1` and
//! `y_{φ(i)} = w_i`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::boolvec::{
    check_width, full_mask, nonneg_to_signed_bits, signed_to_nonneg_bits, BoolVec, Convention,
};
use crate::error::{Error, Result};
use crate::modular::Modulus;

/// Largest `N` for which truth tables are materialised.
pub const EXHAUSTIVE_BOUND: u32 = 24;

/// Largest `N` accepted by the normal-form expansion in
/// [`AnfPoly::from_truth_table_dnf`].
pub const DNF_BOUND: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    V,
    W,
    Y,
}

impl Basis {
    pub fn convention(self) -> Convention {
        match self {
            Basis::V | Basis::W => Convention::NonNeg,
            Basis::Y => Convention::Signed,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Basis::V => 'v',
            Basis::W => 'w',
            Basis::Y => 'y',
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "v" => Ok(Basis::V),
            "w" => Ok(Basis::W),
            "y" => Ok(Basis::Y),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }
}

/// A product of distinct variables; the empty product is the constant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// Indices of the variables, increasing.
    pub fn indices(self, modulus: Modulus, convention: Convention) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        let mut rest = self.0;
        while rest != 0 {
            out.push(convention.index(modulus, rest.trailing_zeros() as usize));
            rest &= rest - 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnfPoly {
    terms: BTreeSet<u64>,
    modulus: Modulus,
    basis: Basis,
}

impl AnfPoly {
    pub fn zero(modulus: Modulus, basis: Basis) -> Result<Self> {
        check_width(modulus)?;
        Ok(AnfPoly {
            terms: BTreeSet::new(),
            modulus,
            basis,
        })
    }

    pub fn one(modulus: Modulus, basis: Basis) -> Result<Self> {
        let mut p = Self::zero(modulus, basis)?;
        p.terms.insert(0);
        Ok(p)
    }

    pub fn variable(modulus: Modulus, basis: Basis, index: i32) -> Result<Self> {
        Self::from_terms(modulus, basis, &[vec![index]])
    }

    /// `x_index + 1`
    pub fn negated_variable(modulus: Modulus, basis: Basis, index: i32) -> Result<Self> {
        Self::from_terms(modulus, basis, &[vec![index], vec![]])
    }

    /// Builds a polynomial from monomials given as index lists. Repeated
    /// indices inside a monomial collapse; repeated monomials cancel in pairs.
    pub fn from_terms(modulus: Modulus, basis: Basis, terms: &[Vec<i32>]) -> Result<Self> {
        let mut p = Self::zero(modulus, basis)?;
        for term in terms {
            let mask = term.iter().try_fold(0u64, |acc, &i| {
                basis
                    .convention()
                    .position(modulus, i)
                    .map(|pos| acc | 1 << pos)
                    .ok_or(Error::OutOfRange {
                        value: i as i64,
                        n: modulus.get(),
                    })
            })?;
            p.toggle(mask);
        }
        Ok(p)
    }

    fn from_dense(modulus: Modulus, basis: Basis, coeffs: &[bool]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(m, _)| m as u64)
            .collect();
        AnfPoly {
            terms,
            modulus,
            basis,
        }
    }

    fn toggle(&mut self, mask: u64) {
        if !self.terms.remove(&mask) {
            self.terms.insert(mask);
        }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn basis(&self) -> Basis {
        self.basis
    }

    #[inline]
    pub fn index_set(&self) -> Convention {
        self.basis.convention()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|&m| Monomial(m))
    }

    /// Monomials as index lists in canonical order: by degree, then
    /// lexicographically on the increasing index tuples.
    pub fn terms(&self) -> Vec<Vec<i32>> {
        let conv = self.index_set();
        let mut out: Vec<Vec<i32>> = self
            .monomials()
            .map(|m| m.indices(self.modulus, conv))
            .collect();
        out.sort_by(canonical_order);
        out
    }

    /// The monomials as a set of index lists, for order-free comparison.
    pub fn term_set(&self) -> BTreeSet<Vec<i32>> {
        self.terms().into_iter().collect()
    }

    fn check_compatible(&self, other: &AnfPoly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.basis != other.basis {
            return Err(Error::ConventionMismatch);
        }
        Ok(())
    }

    /// Value at a packed assignment in this polynomial's bit layout.
    #[inline]
    pub fn eval_bits(&self, assignment: u64) -> bool {
        self.terms.iter().filter(|&&m| m & !assignment == 0).count() % 2 == 1
    }

    pub fn evaluate(&self, assignment: &BoolVec) -> Result<bool> {
        if assignment.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: assignment.modulus().get(),
            });
        }
        if assignment.convention() != self.index_set() {
            return Err(Error::ConventionMismatch);
        }
        Ok(self.eval_bits(assignment.bits()))
    }

    /// Value of the function this polynomial describes at the vector `v`:
    /// `v` itself for the `v` basis, `v + 1` for `w` and `y`.
    pub fn value_at_vector(&self, v: &BoolVec) -> Result<bool> {
        let v = v.to_convention(self.index_set());
        match self.basis {
            Basis::V => self.evaluate(&v),
            Basis::W | Basis::Y => self.evaluate(&v.complement()),
        }
    }

    pub fn add(&self, other: &AnfPoly) -> Result<AnfPoly> {
        self.check_compatible(other)?;
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .copied()
            .collect();
        Ok(AnfPoly { terms, ..*self })
    }

    pub fn multiply(&self, other: &AnfPoly) -> Result<AnfPoly> {
        self.check_compatible(other)?;
        let mut out = AnfPoly {
            terms: BTreeSet::new(),
            ..*self
        };
        for &a in &self.terms {
            for &b in &other.terms {
                out.toggle(a | b);
            }
        }
        Ok(out)
    }

    /// Product of the given factors; the empty product is 1.
    pub fn product<'a>(
        modulus: Modulus,
        basis: Basis,
        factors: impl IntoIterator<Item = &'a AnfPoly>,
    ) -> Result<Self> {
        factors
            .into_iter()
            .try_fold(Self::one(modulus, basis)?, |acc, f| acc.multiply(f))
    }

    fn check_exhaustive(modulus: Modulus, bound: u32) -> Result<()> {
        if modulus.get() > bound {
            Err(Error::BoundExceeded {
                n: modulus.get(),
                bound,
            })
        } else {
            Ok(())
        }
    }

    /// The unique polynomial agreeing with `f` on every vector, computed by
    /// the in-place Möbius butterfly over the subset lattice.
    pub fn from_truth_table(
        modulus: Modulus,
        basis: Basis,
        f: impl Fn(BoolVec) -> bool + Sync,
    ) -> Result<Self> {
        Self::check_exhaustive(modulus, EXHAUSTIVE_BOUND)?;
        let conv = basis.convention();
        let size = 1usize << modulus.get();
        let table: Vec<bool> = (0..size as u64)
            .into_par_iter()
            .map(|x| f(BoolVec::from_bits_unchecked(modulus, conv, x)))
            .collect();
        Self::from_truth_table_bits(modulus, basis, table)
    }

    /// Same as [`AnfPoly::from_truth_table`], from `table[x] = f(x)` indexed by
    /// packed assignment.
    pub fn from_truth_table_bits(
        modulus: Modulus,
        basis: Basis,
        mut table: Vec<bool>,
    ) -> Result<Self> {
        Self::check_exhaustive(modulus, EXHAUSTIVE_BOUND)?;
        let expected = 1usize << modulus.get();
        if table.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: table.len(),
            });
        }
        mobius_in_place(&mut table);
        Ok(Self::from_dense(modulus, basis, &table))
    }

    /// Normal-form route: every true row contributes the product of `x_i` for
    /// its ones and `1 + x_i` for its zeros, and the expanded products are
    /// summed mod 2. Quadratic-exponential; intended for cross-checking.
    pub fn from_truth_table_dnf(modulus: Modulus, basis: Basis, table: &[bool]) -> Result<Self> {
        Self::check_exhaustive(modulus, DNF_BOUND)?;
        let expected = 1usize << modulus.get();
        if table.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: table.len(),
            });
        }
        let full = full_mask(modulus);
        let mut coeffs = vec![false; expected];
        for (row, _) in table.iter().enumerate().filter(|(_, &t)| t) {
            let ones = row as u64;
            let zeros = !ones & full;
            // ∏_{i ∈ zeros} (1 + x_i) expands to the sum over all submasks
            let mut sub = zeros;
            loop {
                coeffs[(ones | sub) as usize] ^= true;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & zeros;
            }
        }
        Ok(Self::from_dense(modulus, basis, &coeffs))
    }

    /// All `2^N` values, indexed by packed assignment.
    pub fn truth_table(&self) -> Result<Vec<bool>> {
        Self::check_exhaustive(self.modulus, EXHAUSTIVE_BOUND)?;
        let size = 1usize << self.modulus.get();
        let mut table = vec![false; size];
        for &m in &self.terms {
            table[m as usize] = true;
        }
        // Möbius over F_2 is an involution: coefficients back to values
        mobius_in_place(&mut table);
        Ok(table)
    }

    /// Substitutes `x ↦ x + 1` for every variable. Switches between the `v`
    /// and `w` bases; a `y` polynomial stays in `y`.
    pub fn negate_variables(&self) -> AnfPoly {
        let basis = match self.basis {
            Basis::V => Basis::W,
            Basis::W => Basis::V,
            Basis::Y => Basis::Y,
        };
        let n = self.modulus.get();
        let sparse_work: u64 = self
            .terms
            .iter()
            .map(|m| 1u64 << m.count_ones().min(63))
            .fold(0, u64::saturating_add);
        if n <= EXHAUSTIVE_BOUND && sparse_work > (n as u64) << n {
            // coefficient of s becomes the parity of the coefficients of all t ⊇ s
            let mut coeffs = vec![false; 1usize << n];
            for &m in &self.terms {
                coeffs[m as usize] = true;
            }
            for bit in 0..n {
                let step = 1usize << bit;
                for x in 0..coeffs.len() {
                    if x & step == 0 {
                        coeffs[x] ^= coeffs[x | step];
                    }
                }
            }
            return Self::from_dense(self.modulus, basis, &coeffs);
        }
        let mut acc: HashSet<u64> = HashSet::new();
        for &m in &self.terms {
            let mut sub = m;
            loop {
                if !acc.remove(&sub) {
                    acc.insert(sub);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        AnfPoly {
            terms: acc.into_iter().collect(),
            modulus: self.modulus,
            basis,
        }
    }

    /// Renames `w_i` to `y_{φ(i)}`.
    pub fn relabel_signed(&self) -> Result<AnfPoly> {
        if self.basis != Basis::W {
            return Err(Error::ConventionMismatch);
        }
        let m = self.modulus;
        let terms = self
            .terms
            .iter()
            .map(|&t| nonneg_to_signed_bits(m, t))
            .collect();
        Ok(AnfPoly {
            terms,
            modulus: m,
            basis: Basis::Y,
        })
    }

    /// Renames `y_j` to `w_{φ⁻¹(j)}`.
    pub fn relabel_nonneg(&self) -> Result<AnfPoly> {
        if self.basis != Basis::Y {
            return Err(Error::ConventionMismatch);
        }
        let m = self.modulus;
        let terms = self
            .terms
            .iter()
            .map(|&t| signed_to_nonneg_bits(m, t))
            .collect();
        Ok(AnfPoly {
            terms,
            modulus: m,
            basis: Basis::W,
        })
    }

    /// Re-expresses the polynomial in `target` (`v`, `w` or `y`).
    pub fn to_basis(&self, target: Basis) -> Result<AnfPoly> {
        match (self.basis, target) {
            (a, b) if a == b => Ok(self.clone()),
            (Basis::V, Basis::W) | (Basis::W, Basis::V) => Ok(self.negate_variables()),
            (Basis::W, Basis::Y) => self.relabel_signed(),
            (Basis::Y, Basis::W) => self.relabel_nonneg(),
            (Basis::V, Basis::Y) => self.negate_variables().relabel_signed(),
            (Basis::Y, Basis::V) => Ok(self.relabel_nonneg()?.negate_variables()),
            _ => unreachable!(),
        }
    }

    /// Moves a `y` polynomial into a larger modulus, keeping every index.
    pub fn embed(&self, target: Modulus) -> Result<AnfPoly> {
        if self.basis != Basis::Y {
            return Err(Error::ConventionMismatch);
        }
        Self::from_terms(target, Basis::Y, &self.terms())
    }

    /// Number of assignments where the polynomial is 1, by exhaustive
    /// evaluation.
    pub fn ones_count(&self) -> Result<u64> {
        Self::check_exhaustive(self.modulus, EXHAUSTIVE_BOUND)?;
        if self.terms.len() > 64 {
            return Ok(self.truth_table()?.iter().filter(|&&b| b).count() as u64);
        }
        let size = 1u64 << self.modulus.get();
        Ok((0..size)
            .into_par_iter()
            .filter(|&x| self.eval_bits(x))
            .count() as u64)
    }

    pub fn is_balanced(&self) -> Result<bool> {
        Ok(self.ones_count()? == 1u64 << (self.modulus.get() - 1))
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let letter = self.basis.letter();
        let rendered: Vec<String> = self
            .terms()
            .iter()
            .map(|term| {
                if term.is_empty() {
                    "1".to_string()
                } else {
                    term.iter().map(|&i| variable_name(letter, i)).collect()
                }
            })
            .collect();
        rendered.join("+")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.modulus.get(),
            "index_set": self.index_set(),
            "basis": self.basis,
            "terms": self.terms(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidPolynomial(what.to_string());
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing n"))?;
        let modulus = Modulus::new(u32::try_from(n).map_err(|_| bad("n too large"))?)?;
        let basis: Basis =
            serde_json::from_value(value.get("basis").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("basis must be v, w or y"))?;
        let index_set: Convention =
            serde_json::from_value(value.get("index_set").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("index_set must be nonneg or signed"))?;
        if index_set != basis.convention() {
            return Err(bad("basis does not match index_set"));
        }
        let terms: Vec<Vec<i32>> =
            serde_json::from_value(value.get("terms").cloned().unwrap_or(Value::Null))
                .map_err(|_| bad("terms must be a list of index lists"))?;
        Self::from_terms(modulus, basis, &terms)
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn canonical_order(a: &Vec<i32>, b: &Vec<i32>) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn variable_name(letter: char, index: i32) -> String {
    if (0..10).contains(&index) {
        format!("{letter}_{index}")
    } else {
        format!("{letter}_{{{index}}}")
    }
}

/// Möbius transform over `F_2` on a table of length `2^k`.
fn mobius_in_place(table: &mut [bool]) {
    let mut step = 1;
    while step < table.len() {
        for block in table.chunks_mut(2 * step) {
            let (lo, hi) = block.split_at_mut(step);
            for (h, &l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= l;
            }
        }
        step *= 2;
    }
}
