//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on failure.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{bav_oracle, coords, golden_poly, modulus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhythmbool::rhythm::{all_rhythms, increasing_rhythms};
use rhythmbool::tables::{self, TableId};
use rhythmbool::theory::{
    ancestor_count, closed_form_bav0, enumerate_ancestors, parental_pairs, recurrence_chain,
    recurrence_step,
};
use rhythmbool::{AnfPoly, Basis, BoolVec, Convention, IncreasingRhythm, Rhythm};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool")
        .install(f)
}

fn ac1_worked_example() -> Outcome {
    let m = modulus(8);
    let v =
        BoolVec::parse(m, Convention::NonNeg, "(0,0,1,1,0,0,0,1)").map_err(|e| e.to_string())?;
    let iav = v.btoi().map_err(|e| e.to_string())?.iav();
    ensure(iav.values() == [0, 2, 5], || format!("Iav = {iav}"))?;
    let image = v.bav();
    ensure(image.to_string() == "(1,0,1,0,0,1,0,0)", || {
        format!("Bav = {image}")
    })?;
    let mut times: Vec<Duration> = (0..101)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(std::hint::black_box(&v).bav());
            start.elapsed()
        })
        .collect();
    times.sort();
    let median = times[50];
    ensure(median < Duration::from_millis(1), || {
        format!("median {median:?} >= 1 ms")
    })?;
    Ok(format!(
        "Iav(2,3,7)=(0,2,5), Bav=(1,0,1,0,0,1,0,0), median {median:?}"
    ))
}

fn ac2_boolean_average_table() -> Outcome {
    let expected = [
        ("(0,0,0)", "()", "()", "(0,0,0)"),
        ("(0,0,1)", "(2)", "(2)", "(0,0,1)"),
        ("(0,1,0)", "(1)", "(1)", "(0,1,0)"),
        ("(0,1,1)", "(1,2)", "(0,1)", "(1,1,0)"),
        ("(1,0,0)", "(0)", "(0)", "(1,0,0)"),
        ("(1,0,1)", "(0,2)", "(1,2)", "(0,1,1)"),
        ("(1,1,0)", "(0,1)", "(0,2)", "(1,0,1)"),
        ("(1,1,1)", "(0,1,2)", "(0,1,2)", "(1,1,1)"),
    ];
    let table = tables::build(TableId::BooleanAverages).map_err(|e| e.to_string())?;
    ensure(table.rows.len() == 8, || {
        format!("{} rows", table.rows.len())
    })?;
    for (row, want) in table.rows.iter().zip(expected) {
        let got = (
            row[0].text.as_str(),
            row[1].text.as_str(),
            row[2].text.as_str(),
            row[3].text.as_str(),
        );
        ensure(got == want, || format!("row {got:?}, expected {want:?}"))?;
    }
    Ok("8 of 8 rows".into())
}

fn ac3_reference_polynomials() -> Outcome {
    let mut checked = 0;
    let cases: [(Basis, &str, &[u32]); 3] = [
        (Basis::V, "v", &[3, 4, 5]),
        (Basis::W, "w", &[3, 4, 5, 6]),
        (Basis::Y, "y", &[3, 4, 5]),
    ];
    for (basis, letter, ns) in cases {
        for &n in ns {
            let want = golden_poly(&format!("bav0_{letter}_{n}.json")).term_set();
            let got = rhythmbool::theory::enumerated_bav0(modulus(n))
                .and_then(|p| p.to_basis(basis))
                .map_err(|e| e.to_string())?
                .term_set();
            ensure(got == want, || format!("{letter}-basis N={n} differs"))?;
            checked += 1;
        }
    }
    let y6 = rhythmbool::theory::enumerated_bav0(modulus(6))
        .and_then(|p| p.to_basis(Basis::Y))
        .map_err(|e| e.to_string())?;
    let closed6 = closed_form_bav0(modulus(6)).map_err(|e| e.to_string())?;
    ensure(y6.term_set() == closed6.term_set(), || {
        "y-basis N=6 differs from closed form".into()
    })?;
    Ok(format!(
        "{checked} reference rows as term sets, y-basis N=6 against closed form"
    ))
}

fn ac4_closed_form_identity() -> Outcome {
    let start = Instant::now();
    single_threaded(|| -> Result<(), String> {
        for n in 3..=12u32 {
            let table = AnfPoly::from_truth_table(modulus(n), Basis::V, |v| {
                bav_oracle(&coords(v.bits(), n))[0]
            })
            .map_err(|e| e.to_string())?;
            let derived = table
                .negate_variables()
                .relabel_signed()
                .map_err(|e| e.to_string())?;
            let closed = closed_form_bav0(modulus(n)).map_err(|e| e.to_string())?;
            ensure(derived == closed, || format!("N={n} differs"))?;
        }
        Ok(())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(30), || {
        format!("took {elapsed:?} > 30 s")
    })?;
    Ok(format!("N=3..12 single-threaded in {elapsed:?}"))
}

fn ac5_recurrence() -> Outcome {
    let chain = recurrence_chain(modulus(12)).map_err(|e| e.to_string())?;
    for p in &chain {
        let closed = closed_form_bav0(p.modulus()).map_err(|e| e.to_string())?;
        ensure(p == &closed, || format!("N={} differs", p.modulus()))?;
    }
    ensure(chain.len() == 10, || {
        format!("chain has {} entries", chain.len())
    })?;
    let bav3 = closed_form_bav0(modulus(3)).map_err(|e| e.to_string())?;
    let bav4 = recurrence_step(&bav3).map_err(|e| e.to_string())?;
    let bav5 = recurrence_step(&bav4).map_err(|e| e.to_string())?;
    ensure(
        bav4.terms() == golden_poly("example_5_3.json").terms(),
        || format!("N=4 step gives {bav4}"),
    )?;
    ensure(
        bav5.terms() == golden_poly("example_5_4.json").terms(),
        || format!("N=5 step gives {bav5}"),
    )?;
    Ok("chain N=4..12 equals closed form, N=4 and N=5 steps term-for-term".into())
}

fn ac6_balanced() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 3..=16u32 {
        let start = Instant::now();
        let ones = closed_form_bav0(modulus(n))
            .and_then(|p| p.ones_count())
            .map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        ensure(ones == 1 << (n - 1), || format!("N={n}: ones-count {ones}"))?;
    }
    ensure(slowest <= Duration::from_secs(60), || {
        format!("slowest N took {slowest:?} > 60 s")
    })?;
    Ok(format!(
        "ones-count 2^(N-1) for N=3..16, slowest {slowest:?}"
    ))
}

fn ac7_parental_pairs() -> Outcome {
    for n in 3..=32u32 {
        let m = modulus(n);
        let pairs = parental_pairs(m);
        ensure(pairs.len() == n as usize, || {
            format!("N={n}: {} pairs", pairs.len())
        })?;
        let listed: BTreeSet<(i32, i32)> = pairs.iter().map(|p| (p.a(), p.b())).collect();
        let brute: BTreeSet<(i32, i32)> = (m.least()..=m.greatest())
            .flat_map(|a| (m.least()..=m.greatest()).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                common::av_cases(
                    a.rem_euclid(n as i32) as u64,
                    b.rem_euclid(n as i32) as u64,
                    n as u64,
                ) == 0
            })
            .collect();
        ensure(listed == brute, || {
            format!("N={n}: listing differs from brute force")
        })?;
    }
    let table = [
        "(0,0), (0,1), (-1,1)",
        "(0,0), (0,1), (-1,1), (-1,2)",
        "(0,0), (0,1), (-1,1), (-1,2), (-2,2)",
        "(0,0), (0,1), (-1,1), (-1,2), (-2,2), (-2,3)",
    ];
    for (n, want) in (3..=6u32).zip(table) {
        let got: Vec<String> = parental_pairs(modulus(n))
            .iter()
            .map(|p| p.to_string())
            .collect();
        ensure(got.join(", ") == want, || {
            format!("N={n}: {}", got.join(", "))
        })?;
    }
    Ok("N elements, brute force agrees for N<=32, rows N=3..6 match".into())
}

fn ac8_ancestor_families() -> Outcome {
    let six = modulus(6);
    let pairs = parental_pairs(six);
    let order: Vec<_> = pairs.iter().skip(1).rev().chain(pairs.first()).collect();
    let mut counts = Vec::new();
    for p in &order {
        let c = enumerate_ancestors(p).map_err(|e| e.to_string())?.len() as u64;
        ensure(
            c == ancestor_count(p, six).map_err(|e| e.to_string())?,
            || format!("{p}: count mismatch"),
        )?;
        counts.push(c);
    }
    ensure(counts == [1, 2, 4, 8, 16, 1], || {
        format!("N=6 counts {counts:?}")
    })?;
    ensure(counts.iter().sum::<u64>() == 32, || {
        "N=6 total is not 32".into()
    })?;
    for n in 3..=12u32 {
        let mut seen = HashSet::new();
        for p in parental_pairs(modulus(n)) {
            for v in enumerate_ancestors(&p).map_err(|e| e.to_string())? {
                let rav = v.btoi_signed().map_err(|e| e.to_string())?.rav();
                ensure(rav.contains(0), || format!("N={n}: {v} is not an ancestor"))?;
                ensure(seen.insert(v.bits()), || {
                    format!("N={n}: {v} lies in two families")
                })?;
            }
        }
    }
    Ok("N=6 counts (1,2,4,8,16,1) total 32; ancestors and disjoint for N<=12".into())
}

fn ac9_cyclicity() -> Outcome {
    for n in 3..=8i32 {
        let m = modulus(n as u32);
        for v in BoolVec::all(m, Convention::NonNeg).map_err(|e| e.to_string())? {
            let shifted = v.btr();
            ensure(shifted.bav() == v.bav().btr(), || {
                format!("N={n}: Bav∘Btr differs at {v}")
            })?;
            for i in 0..n {
                let lhs = shifted.bav_component(i).map_err(|e| e.to_string())?;
                let rhs = v
                    .bav_component((i + n - 1) % n)
                    .map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("N={n}: coordinate {i} at {v}"))?;
            }
        }
    }
    Ok("commutation and coordinate shift on all of B_N, N=3..8".into())
}

fn ac10_structural_sweeps() -> Outcome {
    let start = Instant::now();
    let mut states = 0u64;
    for n in 3..=10u32 {
        let m = modulus(n);
        for r in all_rhythms(m) {
            states += 1;
            let image = r.rav();
            ensure(
                image.len() == r.len() && Rhythm::from_values(m, image.values()).is_ok(),
                || format!("N={n}: Rav({r}) = {image} is not a rhythm"),
            )?;
            if !r.is_empty() {
                let (j, jr) = (
                    r.jumping_number().unwrap(),
                    r.rot().jumping_number().unwrap(),
                );
                ensure(jr == (j + 1) % r.len(), || {
                    format!("N={n}: j(rot {r}) = {jr}, j = {j}")
                })?;
            }
            ensure(r.pr_i().iav() == image.pr_i(), || {
                format!("N={n}: Iav∘pr_I differs at {r}")
            })?;
            ensure(r.tr().rav() == image.tr(), || {
                format!("N={n}: tr and Rav differ at {r}")
            })?;
            let b = BoolVec::from_rhythm(&r).map_err(|e| e.to_string())?;
            ensure(
                BoolVec::from_rhythm(&r.rot()).map_err(|e| e.to_string())? == b,
                || format!("N={n}: RtoB∘rot at {r}"),
            )?;
        }
        for k in 0..=n as usize {
            for r in increasing_rhythms(m, k) {
                let image = r.iav();
                ensure(
                    IncreasingRhythm::from_values(m, image.values()).is_ok(),
                    || format!("N={n}: Iav({r}) = {image}"),
                )?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(120), || {
        format!("took {elapsed:?} > 120 s")
    })?;
    Ok(format!("{states} rhythms over N=3..10 in {elapsed:?}"))
}

fn ac11_anf_engine() -> Outcome {
    let m3 = modulus(3);
    let f = |v: BoolVec| {
        let c = v.coordinates();
        (c[0] || c[1]) && (c[1] || c[2])
    };
    let example = AnfPoly::from_truth_table(m3, Basis::V, f).map_err(|e| e.to_string())?;
    let xyz = AnfPoly::from_terms(m3, Basis::V, &[vec![0, 1, 2], vec![0, 2], vec![1]])
        .map_err(|e| e.to_string())?;
    ensure(example == xyz, || format!("example gives {example}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for n in 3..=10u32 {
        for _ in 0..1000 {
            let table: Vec<bool> = (0..1usize << n).map(|_| rng.gen()).collect();
            let fast = AnfPoly::from_truth_table_bits(modulus(n), Basis::V, table.clone())
                .map_err(|e| e.to_string())?;
            let slow = AnfPoly::from_truth_table_dnf(modulus(n), Basis::V, &table)
                .map_err(|e| e.to_string())?;
            ensure(fast == slow, || {
                format!("N={n}: butterfly and expansion differ")
            })?;
        }
    }
    for n in 3..=12u32 {
        for basis in [Basis::V, Basis::W, Basis::Y] {
            for _ in 0..20 {
                let m = modulus(n);
                let conv = basis.convention();
                let terms: Vec<Vec<i32>> = (0..rng.gen_range(0..40))
                    .map(|_| {
                        let mask: u64 = rng.gen_range(0..1u64 << n);
                        (0..n as usize)
                            .filter(|&p| mask >> p & 1 == 1)
                            .map(|p| conv.index(m, p))
                            .collect()
                    })
                    .collect();
                let p = AnfPoly::from_terms(m, basis, &terms).map_err(|e| e.to_string())?;
                let back = AnfPoly::from_truth_table(m, basis, |v| p.evaluate(&v).unwrap())
                    .map_err(|e| e.to_string())?;
                ensure(back == p, || format!("N={n}: round trip changed {p}"))?;
            }
        }
    }
    Ok("example xyz+xz+y; 8000 random tables agree; round trip identity N<=12".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC1 worked example end to end", ac1_worked_example),
        ("AC2 Boolean averages on B_3", ac2_boolean_average_table),
        (
            "AC3 reference polynomials in v, w, y",
            ac3_reference_polynomials,
        ),
        (
            "AC4 closed form equals truth table",
            ac4_closed_form_identity,
        ),
        ("AC5 recurrence chain", ac5_recurrence),
        ("AC6 balancedness", ac6_balanced),
        ("AC7 parental pairs", ac7_parental_pairs),
        ("AC8 ancestor families", ac8_ancestor_families),
        ("AC9 cyclicity", ac9_cyclicity),
        ("AC10 structural sweeps", ac10_structural_sweeps),
        ("AC11 normal form engine", ac11_anf_engine),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
