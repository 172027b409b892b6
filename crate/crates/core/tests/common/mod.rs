//! Oracles written directly from the definitions, sharing no code with the
//! library's fast paths.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rhythmbool::{AnfPoly, Modulus};

/// Floor midpoint by the two-case formula.
pub fn av_cases(a: u64, b: u64, n: u64) -> u64 {
    if a <= b {
        (a + b) / 2
    } else {
        ((a + b + n) / 2) % n
    }
}

/// Boolean average straight from the definition: read the onsets in
/// increasing order, average cyclic neighbours, rotate once if improper,
/// write the characteristic vector.
pub fn bav_oracle(v: &[bool]) -> Vec<bool> {
    let n = v.len() as u64;
    let onsets: Vec<u64> = (0..n).filter(|&i| v[i as usize]).collect();
    let k = onsets.len();
    let image: Vec<u64> = if k < 2 {
        onsets.clone()
    } else {
        let mut avg: Vec<u64> = (0..k)
            .map(|i| av_cases(onsets[i], onsets[(i + 1) % k], n))
            .collect();
        if n - onsets[k - 1] <= onsets[0] {
            avg.rotate_right(1);
        }
        avg
    };
    let mut out = vec![false; n as usize];
    for x in image {
        out[x as usize] = true;
    }
    out
}

/// Coordinates of the nonneg word `bits` for modulus `n`.
pub fn coords(bits: u64, n: u32) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

/// ANF by the defining sum: the coefficient of `x^S` is the XOR of `f(T)`
/// over all `T ⊆ S`. Monomials returned as bit masks.
pub fn anf_naive(table: &[bool]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for s in 0..table.len() as u64 {
        let mut parity = false;
        for t in 0..=s {
            if t & !s == 0 {
                parity ^= table[t as usize];
            }
        }
        if parity {
            out.insert(s);
        }
    }
    out
}

pub fn modulus(n: u32) -> Modulus {
    Modulus::new(n).unwrap()
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

pub fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn golden_poly(name: &str) -> AnfPoly {
    let value: serde_json::Value = serde_json::from_str(&golden_text(name)).unwrap();
    AnfPoly::from_json(&value).unwrap()
}

/// Runs the command line in-process.
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rhythmbool").chain(args.iter().copied());
    let code = rhythmbool::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
