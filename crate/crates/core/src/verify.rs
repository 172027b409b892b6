//! Exhaustive verification sweeps, one report per check and modulus.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::anf::{AnfPoly, Basis, EXHAUSTIVE_BOUND};
use crate::boolvec::{BoolVec, Convention, MAX_BITS};
use crate::error::{Error, Result};
use crate::modular::Modulus;
use crate::rhythm::{all_rhythms, increasing_rhythms, IncreasingRhythm, Rhythm};
use crate::theory::{self, ENUMERATE_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Balanced,
    Cyclicity,
    ClosedForm,
    Recurrence,
    Parental,
    Closure,
    Commute,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Balanced,
        Check::Cyclicity,
        Check::ClosedForm,
        Check::Recurrence,
        Check::Parental,
        Check::Closure,
        Check::Commute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Balanced => "balanced",
            Check::Cyclicity => "cyclicity",
            Check::ClosedForm => "closed-form",
            Check::Recurrence => "recurrence",
            Check::Parental => "parental",
            Check::Closure => "closure",
            Check::Commute => "commute",
        }
    }

    /// Largest modulus the check accepts.
    pub fn bound(self) -> u32 {
        match self {
            Check::Balanced => EXHAUSTIVE_BOUND,
            Check::Cyclicity => 16,
            Check::ClosedForm => ENUMERATE_BOUND,
            Check::Recurrence => MAX_BITS,
            Check::Parental => 1024,
            Check::Closure | Check::Commute => 10,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: Check,
    pub n: u32,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

struct Outcome {
    counterexample: Option<String>,
    counts: BTreeMap<String, u64>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            counterexample: None,
            counts: BTreeMap::new(),
        }
    }

    fn count(mut self, key: &str, value: u64) -> Self {
        self.counts.insert(key.to_string(), value);
        self
    }

    fn fail_with(mut self, counterexample: Option<String>) -> Self {
        if self.counterexample.is_none() {
            self.counterexample = counterexample;
        }
        self
    }
}

/// Runs one check at one modulus.
pub fn run(check: Check, modulus: Modulus) -> Result<VerificationReport> {
    if modulus.get() > check.bound() {
        return Err(Error::BoundExceeded {
            n: modulus.get(),
            bound: check.bound(),
        });
    }
    let start = Instant::now();
    let outcome = match check {
        Check::Balanced => balanced(modulus)?,
        Check::Cyclicity => cyclicity(modulus)?,
        Check::ClosedForm => closed_form(modulus)?,
        Check::Recurrence => recurrence(modulus)?,
        Check::Parental => parental(modulus),
        Check::Closure => closure(modulus),
        Check::Commute => commute(modulus)?,
    };
    Ok(VerificationReport {
        check,
        n: modulus.get(),
        passed: outcome.counterexample.is_none(),
        counterexample: outcome.counterexample,
        counts: outcome.counts,
        elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Runs every `(check, N)` combination; reports are sorted by `N`, then by
/// check name, whatever order the work finishes in.
pub fn run_all(checks: &[Check], moduli: &[Modulus]) -> Result<Vec<VerificationReport>> {
    for &check in checks {
        if let Some(m) = moduli.iter().find(|m| m.get() > check.bound()) {
            return Err(Error::BoundExceeded {
                n: m.get(),
                bound: check.bound(),
            });
        }
    }
    let jobs: Vec<(Check, Modulus)> = moduli
        .iter()
        .flat_map(|&m| checks.iter().map(move |&c| (c, m)))
        .collect();
    let mut reports = jobs
        .into_par_iter()
        .map(|(c, m)| run(c, m))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|x, y| {
        x.n.cmp(&y.n)
            .then_with(|| x.check.name().cmp(y.check.name()))
    });
    Ok(reports)
}

/// A vector `v` at which the functions described by `p` and `q` differ.
///
/// A monomial of least degree in `p + q` has no proper submonomial in the
/// sum, so the sum is 1 at that monomial's indicator.
pub fn distinguishing_vector(p: &AnfPoly, q: &AnfPoly) -> Result<Option<BoolVec>> {
    let diff = p.add(q)?;
    let Some(least) = diff.monomials().min_by_key(|m| (m.degree(), m.mask())) else {
        return Ok(None);
    };
    let at = BoolVec::from_bits(diff.modulus(), diff.index_set(), least.mask())?;
    debug_assert!(diff.evaluate(&at)?);
    let v = match diff.basis() {
        Basis::V => at,
        Basis::W | Basis::Y => at.complement(),
    };
    Ok(Some(v))
}

fn nonneg_vectors(modulus: Modulus) -> Result<impl ParallelIterator<Item = BoolVec>> {
    let size = 1u64 << modulus.get();
    BoolVec::zero(modulus, Convention::NonNeg)?;
    Ok((0..size)
        .into_par_iter()
        .map(move |bits| BoolVec::from_bits(modulus, Convention::NonNeg, bits).expect("bits fit")))
}

fn balanced(modulus: Modulus) -> Result<Outcome> {
    let poly = theory::closed_form_bav0(modulus)?;
    let ones = poly.ones_count()?;
    let expected = 1u64 << (modulus.get() - 1);
    let outcome = Outcome::new()
        .count("ones", ones)
        .count("expected", expected)
        .count("inputs", 1u64 << modulus.get());
    if ones == expected {
        return Ok(outcome);
    }
    let mismatch = nonneg_vectors(modulus)?.find_map_first(|v| {
        let closed = poly.value_at_vector(&v).expect("same modulus");
        let direct = v.bav_component(0).expect("index 0 exists");
        (closed != direct)
            .then(|| format!("v={v} closed-form={} bav={}", closed as u8, direct as u8))
    });
    let fallback = format!("ones-count {ones} differs from {expected}");
    Ok(outcome.fail_with(Some(mismatch.unwrap_or(fallback))))
}

fn cyclicity(modulus: Modulus) -> Result<Outcome> {
    let n = modulus.get() as i32;
    let bad = nonneg_vectors(modulus)?.find_map_first(|v| {
        let shifted = v.btr();
        if shifted.bav() != v.bav().btr() {
            return Some(format!("v={v}: Bav(Btr v) != Btr(Bav v)"));
        }
        (0..n).find_map(|i| {
            let lhs = shifted.bav_component(i).expect("index in range");
            let rhs = v.bav_component((i + n - 1) % n).expect("index in range");
            (lhs != rhs).then(|| format!("v={v} i={i}: Bav^i(Btr v) != Bav^(i-1)(v)"))
        })
    });
    let vectors = 1u64 << modulus.get();
    Ok(Outcome::new()
        .count("vectors", vectors)
        .count("coordinates", vectors * n as u64)
        .fail_with(bad))
}

fn closed_form(modulus: Modulus) -> Result<Outcome> {
    let enumerated_v = theory::enumerated_bav0(modulus)?;
    let enumerated_y = enumerated_v.to_basis(Basis::Y)?;
    let closed = theory::closed_form_bav0(modulus)?;
    let outcome = Outcome::new()
        .count("terms_v", enumerated_v.term_count() as u64)
        .count("terms_y", enumerated_y.term_count() as u64)
        .count("terms_closed_form", closed.term_count() as u64);
    let bad = distinguishing_vector(&enumerated_y, &closed)?.map(|v| {
        let e = enumerated_y.value_at_vector(&v).expect("same modulus") as u8;
        let c = closed.value_at_vector(&v).expect("same modulus") as u8;
        format!("v={v} enumerated={e} closed-form={c}")
    });
    Ok(outcome.fail_with(bad))
}

fn recurrence(modulus: Modulus) -> Result<Outcome> {
    let chain = theory::recurrence_chain(modulus)?;
    let last = chain.last().expect("chain starts at N=3");
    let closed = theory::closed_form_bav0(modulus)?;
    let outcome = Outcome::new()
        .count("steps", chain.len() as u64 - 1)
        .count("terms", last.term_count() as u64);
    let bad = distinguishing_vector(last, &closed)?.map(|v| {
        let r = last.value_at_vector(&v).expect("same modulus") as u8;
        let c = closed.value_at_vector(&v).expect("same modulus") as u8;
        format!("v={v} recurrence={r} closed-form={c}")
    });
    Ok(outcome.fail_with(bad))
}

fn parental(modulus: Modulus) -> Outcome {
    let listed: Vec<(i32, i32)> = theory::parental_pairs(modulus)
        .iter()
        .map(|p| (p.a(), p.b()))
        .collect();
    let brute: BTreeSet<(i32, i32)> = modulus
        .signed_elements()
        .flat_map(|a| modulus.signed_elements().map(move |b| (a, b)))
        .filter(|(a, b)| a.av(*b).value() == 0)
        .map(|(a, b)| (a.value(), b.value()))
        .collect();
    let listed_set: BTreeSet<(i32, i32)> = listed.iter().copied().collect();
    let mut outcome = Outcome::new()
        .count("pairs", listed.len() as u64)
        .count("brute_force", brute.len() as u64);
    if modulus.get() < MAX_BITS {
        let total: u64 = theory::parental_pairs(modulus)
            .iter()
            .map(|p| theory::ancestor_count(p, modulus).expect("pair is parental"))
            .sum();
        outcome = outcome.count("ancestors", total);
        if total != 1u64 << (modulus.get() - 1) {
            outcome = outcome.fail_with(Some(format!("ancestor counts sum to {total}")));
        }
    }
    let bad = listed_set
        .symmetric_difference(&brute)
        .next()
        .map(|(a, b)| {
            let side = if listed_set.contains(&(*a, *b)) {
                "listed but not zero-average"
            } else {
                "zero-average but not listed"
            };
            format!("pair ({a},{b}) {side}")
        });
    let bad = bad.or_else(|| {
        (listed.len() != listed_set.len()).then(|| "listing repeats a pair".to_string())
    });
    outcome.fail_with(bad)
}

fn closure(modulus: Modulus) -> Outcome {
    let rhythms: Vec<Rhythm> = all_rhythms(modulus).collect();
    let bad = rhythms.par_iter().find_map_first(|r| {
        let averaged = r.rav();
        let valid =
            averaged.len() == r.len() && Rhythm::from_values(modulus, averaged.values()).is_ok();
        (!valid).then(|| {
            format!(
                "r={r}: Rav(r)={averaged} is not a rhythm with {} onsets",
                r.len()
            )
        })
    });
    let increasing: Vec<IncreasingRhythm> = (0..=modulus.get() as usize)
        .flat_map(|n| increasing_rhythms(modulus, n))
        .collect();
    let bad = bad.or_else(|| {
        increasing.par_iter().find_map_first(|r| {
            let image = r.iav();
            let valid = image.len() == r.len()
                && image.is_increasing()
                && Rhythm::from_values(modulus, image.values()).is_ok();
            (!valid).then(|| format!("r={r}: Iav(r)={image} is not increasing"))
        })
    });
    Outcome::new()
        .count("rhythms", rhythms.len() as u64)
        .count("increasing", increasing.len() as u64)
        .fail_with(bad)
}

fn commute(modulus: Modulus) -> Result<Outcome> {
    let rhythms: Vec<Rhythm> = all_rhythms(modulus).collect();
    let bad = rhythms
        .par_iter()
        .find_map_first(|r| commute_one(r).expect("rhythm fits a word"));
    Ok(Outcome::new()
        .count("rhythms", rhythms.len() as u64)
        .fail_with(bad))
}

fn commute_one(r: &Rhythm) -> Result<Option<String>> {
    let n = r.len();
    if n >= 1 {
        let (j, j_rot) = (r.jumping_number()?, r.rot().jumping_number()?);
        if j_rot != (j + 1) % n {
            return Ok(Some(format!("r={r}: j(rot r)={j_rot}, j(r)={j}")));
        }
    }
    if r.rot().rav() != r.rav().rot() {
        return Ok(Some(format!("r={r}: Rav(rot r) != rot(Rav r)")));
    }
    if r.tr().rav() != r.rav().tr() {
        return Ok(Some(format!("r={r}: Rav(tr r) != tr(Rav r)")));
    }
    if r.pr_i().iav() != r.rav().pr_i() {
        return Ok(Some(format!("r={r}: Iav(pr_I r) != pr_I(Rav r)")));
    }
    let b = BoolVec::from_rhythm(r)?;
    if BoolVec::from_rhythm(&r.rot())? != b {
        return Ok(Some(format!("r={r}: RtoB(rot r) != RtoB(r)")));
    }
    if b.btr() != BoolVec::from_rhythm(&r.tr())? {
        return Ok(Some(format!("r={r}: Btr(RtoB r) != RtoB(tr r)")));
    }
    Ok(None)
}
