//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the binary exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use nsimplex::baser::{
    apply_G, apply_H, hstar_coeff_via_comps, hstar_nasc, hstar_sections, section_sequence,
    symmetric_decomposition, BaseRSimplex,
};
use nsimplex::numsys::{decode, encode, NumeralSystemSpec};
use nsimplex::oracle::{is_ehrhart_positive, EhrhartTable};
use nsimplex::poly::IntPolynomial;
use nsimplex::reflexive::{
    check_divisor_system, mixed_radix_candidates, mixed_radix_divisor_system, omega_recursive,
    q_from_divisors, DivisorPrefix,
};
use nsimplex::simplex::{self, is_reflexive, omega, QSimplex};
use nsimplex::stats::{
    descent_stats, digit_stats, eulerian_poly, maxdes_poly, maxdes_poly_closed_form,
    maxdes_poly_enumerated, maxdes_poly_recursive, perm_of_lex_rank,
};

type Outcome = Result<(), String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn binomial_row(n: usize) -> IntPolynomial {
    p(&[1, 1]).pow(n as u32)
}

fn golden_base4() -> Outcome {
    let want = p(&[1, 19, 34, 10]);
    let s = BaseRSimplex::new(4, 3).map_err(|e| e.to_string())?;
    let by_omega = simplex::hstar(s.q());
    let by_nasc = hstar_nasc(4, 3).map_err(|e| e.to_string())?;
    let by_sections = hstar_sections(4, 3).map_err(|e| e.to_string())?;
    check!(by_omega == want, "omega route gave {by_omega}");
    check!(by_nasc == want, "nasc route gave {by_nasc}");
    check!(by_sections == want, "section route gave {by_sections}");
    let (a, b) = symmetric_decomposition(4, 3).map_err(|e| e.to_string())?;
    check!(
        a == p(&[1, 10, 10, 1]) && b == p(&[9, 24, 9]),
        "decomposition gave a = {a}, b = {b}"
    );
    Ok(())
}

/// `(b, support, [(place, height numerator, height denominator)], nasc)`
type HeightRow = (u64, &'static [usize], &'static [(usize, i64, i64)], usize);

fn height_table() -> Outcome {
    let rows: [HeightRow; 3] = [
        (19, &[0, 2], &[(0, 1, 1), (2, 1, 1)], 2),
        (22, &[0, 1, 2], &[(0, 1, 1), (1, -1, 1), (2, -1, 2)], 1),
        (31, &[0, 1, 2], &[(0, 1, 1), (1, 0, 1), (2, -5, 1)], 2),
    ];
    for (b, support, heights, nasc) in rows {
        let s = digit_stats(&big(b), 4, 3).map_err(|e| e.to_string())?;
        let want_support: BTreeSet<usize> = support.iter().copied().collect();
        let want_heights: BTreeMap<usize, BigRational> =
            heights.iter().map(|&(i, n, d)| (i, rat(n, d))).collect();
        check!(
            s.support == want_support,
            "b = {b}: support {:?}",
            s.support
        );
        check!(
            s.heights == want_heights,
            "b = {b}: heights {:?}",
            s.heights
        );
        check!(s.nasc() == nasc, "b = {b}: nasc {}", s.nasc());
    }
    Ok(())
}

fn binary_theorem() -> Outcome {
    let binary = NumeralSystemSpec::base(2).unwrap();
    for n in 1..=16usize {
        let q = QSimplex::from_u64s(&(0..n).map(|i| 1u64 << i).collect::<Vec<_>>()).unwrap();
        let h = simplex::hstar(&q);
        check!(h == binomial_row(n), "n = {n}: h* = {h}");
    }
    let dp = mixed_radix_divisor_system(&binary, 12)
        .map_err(|e| e.to_string())?
        .ok_or("no binary divisor system")?;
    for n in 1..=12usize {
        let q = q_from_divisors(&dp, n).map_err(|e| e.to_string())?;
        for b in 0..(1u64 << n) {
            let supp = b.count_ones() as u64;
            let w = omega(&q, &big(b)).map_err(|e| e.to_string())?;
            check!(
                w == big(supp),
                "n = {n}, b = {b}: omega = {w}, supp = {supp}"
            );
            if n == 12 {
                let wr = omega_recursive(&dp, n, &big(b)).map_err(|e| e.to_string())?;
                check!(wr == w, "n = {n}, b = {b}: recursive omega = {wr}");
            }
        }
    }
    Ok(())
}

fn eulerian_theorem() -> Outcome {
    let fact = NumeralSystemSpec::factoradic();
    let dp = mixed_radix_divisor_system(&fact, 6)
        .map_err(|e| e.to_string())?
        .ok_or("no factoradic divisor system")?;
    for n in 1..=6usize {
        let q = q_from_divisors(&dp, n).map_err(|e| e.to_string())?;
        let a = eulerian_poly(n + 1).map_err(|e| e.to_string())?;
        let h = simplex::hstar(&q);
        check!(h == a, "n = {n}: h* = {h}, A = {a}");
        for b in 0..factorial(n as u64 + 1) {
            let w = omega(&q, &big(b)).map_err(|e| e.to_string())?;
            let perm = perm_of_lex_rank(n + 1, &big(b)).map_err(|e| e.to_string())?;
            let des = descent_stats(&perm).des;
            check!(
                w == big(des as u64),
                "n = {n}, b = {b}: omega = {w}, des({perm}) = {des}"
            );
        }
    }
    Ok(())
}

fn numeral_example() -> Outcome {
    let systems = [
        (NumeralSystemSpec::base(2).unwrap(), "1100110"),
        (NumeralSystemSpec::base(3).unwrap(), "10210"),
        (NumeralSystemSpec::fibonacci(), "1000100000"),
    ];
    for (s, want) in &systems {
        let num = encode(s, &big(102), None).map_err(|e| e.to_string())?;
        check!(num.to_string() == *want, "{s}: 102 encodes as {num}");
        check!(
            decode(&num).map_err(|e| e.to_string())? == big(102),
            "{s}: decode failed"
        );
        for b in 0..1_000_000u64 {
            let b = big(b);
            let num = encode(s, &b, None).map_err(|e| e.to_string())?;
            let back = decode(&num).map_err(|e| e.to_string())?;
            check!(back == b, "{s}: {b} round-trips to {back}");
        }
    }
    Ok(())
}

fn divisor_systems() -> Outcome {
    let binary = NumeralSystemSpec::base(2).unwrap();
    let bin = DivisorPrefix::new(binary.clone(), (1..=8).map(|i| big(1 << i)).collect())
        .map_err(|e| e.to_string())?;
    check!(
        check_divisor_system(&bin, 8).map_err(|e| e.to_string())?,
        "binary prefix fails"
    );
    let derived = mixed_radix_divisor_system(&binary, 8).map_err(|e| e.to_string())?;
    check!(
        derived.as_ref() == Some(&bin),
        "binary formula gave {derived:?}"
    );

    let fact = NumeralSystemSpec::factoradic();
    let want: Vec<BigUint> = (0..8u64)
        .map(|k| big(factorial(k + 1) + factorial(k)))
        .collect();
    check!(
        want[..5] == [2u64, 3, 8, 30, 144].map(big),
        "factoradic prefix starts {:?}",
        &want[..5]
    );
    let fd = DivisorPrefix::new(fact.clone(), want).map_err(|e| e.to_string())?;
    check!(
        check_divisor_system(&fd, 8).map_err(|e| e.to_string())?,
        "factoradic prefix fails"
    );
    let derived = mixed_radix_divisor_system(&fact, 8).map_err(|e| e.to_string())?;
    check!(
        derived.as_ref() == Some(&fd),
        "factoradic formula gave {derived:?}"
    );

    let hyper = NumeralSystemSpec::mixed_radix([1u64, 2, 4, 6, 8].map(big).to_vec()).unwrap();
    let found = mixed_radix_divisor_system(&hyper, 3).map_err(|e| e.to_string())?;
    check!(found.is_none(), "hyperoctahedral radices gave {found:?}");
    let cands = mixed_radix_candidates(&hyper, 3).map_err(|e| e.to_string())?;
    check!(cands[2] == rat(48, 5), "candidate at n = 2 is {}", cands[2]);
    // the candidate at n = 1 (8/3) is already non-integral
    check!(!cands[1].is_integer(), "candidate at n = 1 is {}", cands[1]);
    Ok(())
}

fn triple_agreement() -> Outcome {
    for r in 2..=6u32 {
        for n in 1..=8usize {
            if (r as u64).pow(n as u32) > 2_000_000 {
                continue;
            }
            let omega_route = simplex::hstar(BaseRSimplex::new(r, n).unwrap().q());
            let nasc_route = hstar_nasc(r, n).map_err(|e| e.to_string())?;
            let section_route = hstar_sections(r, n).map_err(|e| e.to_string())?;
            check!(
                omega_route == nasc_route && nasc_route == section_route,
                "(r, n) = ({r}, {n}): {omega_route} / {nasc_route} / {section_route}"
            );
        }
    }
    Ok(())
}

fn real_rootedness() -> Outcome {
    for r in 2..=6u32 {
        for n in 1..=8usize {
            let h = hstar_sections(r, n).map_err(|e| e.to_string())?;
            check!(
                h.is_real_rooted().map_err(|e| e.to_string())?,
                "({r}, {n}): {h} not real-rooted"
            );
            check!(
                h.is_unimodal().map_err(|e| e.to_string())?,
                "({r}, {n}): {h} not unimodal"
            );
            check!(
                h.is_log_concave().map_err(|e| e.to_string())?,
                "({r}, {n}): {h} not log-concave"
            );
        }
    }
    Ok(())
}

fn interlacing() -> Outcome {
    for r in 3..=5u32 {
        for n in 1..=6usize {
            let seq = section_sequence(r, n).map_err(|e| e.to_string())?;
            for (i, j, ok) in seq.interlacing_pairs().map_err(|e| e.to_string())? {
                check!(
                    ok,
                    "({r}, {n}): section {i} does not strictly interlace section {j}"
                );
            }
        }
    }
    for r in 2..=6u32 {
        for n in 1..=8usize {
            let seq = section_sequence(r, n).map_err(|e| e.to_string())?;
            if n >= 2 {
                let prev = section_sequence(r, n - 1).map_err(|e| e.to_string())?;
                let mapped = apply_G(r, prev.polys()).map_err(|e| e.to_string())?;
                check!(mapped == seq.polys(), "({r}, {n}): G recursion fails");
            }
            let h = apply_H(r, seq.polys()).map_err(|e| e.to_string())?;
            let want = hstar_sections(r, n).map_err(|e| e.to_string())?;
            check!(
                h.last() == Some(&want),
                "({r}, {n}): H gives {:?}",
                h.last()
            );
        }
    }
    Ok(())
}

fn weakly_increasing(n: usize, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mut prefix in weakly_increasing(n - 1, max) {
        let lo = prefix.last().copied().unwrap_or(1);
        for x in lo..=max {
            prefix.push(x);
            out.push(prefix.clone());
            prefix.pop();
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut battery: Vec<QSimplex> = (1..=3)
        .flat_map(|n| weakly_increasing(n, 6))
        .map(|q| QSimplex::from_u64s(&q).unwrap())
        .collect();
    for r in 2..=4 {
        for n in 1..=3 {
            battery.push(BaseRSimplex::new(r, n).unwrap().q().clone());
        }
    }
    for q in &battery {
        let table = EhrhartTable::compute_default(q).map_err(|e| format!("{q}: {e}"))?;
        let formula = simplex::hstar(q);
        check!(
            table.hstar == formula,
            "{q}: oracle {} vs formula {formula}",
            table.hstar
        );
        let palindromic = table
            .hstar
            .is_symmetric(q.dim())
            .map_err(|e| e.to_string())?;
        check!(
            palindromic == is_reflexive(q),
            "{q}: palindromic {palindromic}, reflexive {}",
            is_reflexive(q)
        );
        let h1 = table.hstar.coeff(1);
        let expected = num_bigint::BigInt::from(table.counts[1].clone()) - q.dim() as i64 - 1;
        check!(
            h1 == expected,
            "{q}: h*_1 = {h1}, |P ∩ Z^n| - n - 1 = {expected}"
        );
    }
    Ok(())
}

fn corollary_coefficients() -> Outcome {
    for r in 2..=5u32 {
        for n in 1..=6usize {
            let h = hstar_sections(r, n).map_err(|e| e.to_string())?;
            for k in 0..=n {
                let c = hstar_coeff_via_comps(r, n, k).map_err(|e| e.to_string())?;
                check!(
                    num_bigint::BigInt::from(c.clone()) == h.coeff(k),
                    "({r}, {n}, {k}): compositions give {c}, h* has {}",
                    h.coeff(k)
                );
            }
        }
    }
    let c = hstar_coeff_via_comps(4, 3, 1).map_err(|e| e.to_string())?;
    check!(c == big(19), "(4, 3, 1) gives {c}");
    Ok(())
}

fn maxdes_lemma() -> Outcome {
    for n in 1..=8usize {
        let closed = maxdes_poly_closed_form(n);
        let coeffs = maxdes_poly(n);
        let recursive = maxdes_poly_recursive(n);
        let enumerated = maxdes_poly_enumerated(n, 8).map_err(|e| e.to_string())?;
        check!(
            closed == recursive,
            "n = {n}: closed {closed}, recursive {recursive}"
        );
        check!(
            closed == coeffs,
            "n = {n}: closed {closed}, coefficient formula {coeffs}"
        );
        check!(
            closed == enumerated,
            "n = {n}: closed {closed}, enumerated {enumerated}"
        );
        let total = closed.at_one();
        check!(
            total == factorial(n as u64).into(),
            "n = {n}: coefficients sum to {total}"
        );
    }
    Ok(())
}

fn ehrhart_positivity() -> Outcome {
    for r in 2..=4u32 {
        for n in 1..=3usize {
            let s = BaseRSimplex::new(r, n).unwrap();
            let table = EhrhartTable::compute_default(s.q()).map_err(|e| e.to_string())?;
            check!(
                is_ehrhart_positive(&table),
                "({r}, {n}): coefficients {:?}",
                table
                    .ehrhart_coeffs
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            );
            check!(
                !table.ehrhart_coeffs.iter().any(Zero::is_zero),
                "({r}, {n}): zero coefficient"
            );
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // libtest arguments such as --list or filters are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "base-4 golden example by three routes",
            limit: secs(1),
            run: golden_base4,
        },
        Criterion {
            id: 2,
            name: "height table at r = 4, width 3",
            limit: None,
            run: height_table,
        },
        Criterion {
            id: 3,
            name: "binary simplex h* = (1+z)^n and omega = supp",
            limit: secs(10),
            run: binary_theorem,
        },
        Criterion {
            id: 4,
            name: "factoradic simplex h* = Eulerian polynomial",
            limit: secs(10),
            run: eulerian_theorem,
        },
        Criterion {
            id: 5,
            name: "encoding 102 and round trips below 10^6",
            limit: None,
            run: numeral_example,
        },
        Criterion {
            id: 6,
            name: "divisor system prefixes",
            limit: None,
            run: divisor_systems,
        },
        Criterion {
            id: 7,
            name: "nasc = sections = omega for r^n <= 2e6",
            limit: secs(60),
            run: triple_agreement,
        },
        Criterion {
            id: 8,
            name: "real-rootedness of base-r h*",
            limit: None,
            run: real_rootedness,
        },
        Criterion {
            id: 9,
            name: "strict interlacing, G recursion and H map",
            limit: None,
            run: interlacing,
        },
        Criterion {
            id: 10,
            name: "lattice-point oracle equals formula h*",
            limit: secs(120),
            run: oracle_equivalence,
        },
        Criterion {
            id: 11,
            name: "composition-count coefficients",
            limit: None,
            run: corollary_coefficients,
        },
        Criterion {
            id: 12,
            name: "max-descent polynomial routes agree",
            limit: None,
            run: maxdes_lemma,
        },
        Criterion {
            id: 13,
            name: "Ehrhart positivity of base-r simplices",
            limit: None,
            run: ehrhart_positivity,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => Err(format!(
                "took {:.2}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )),
            (o, _) => o,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:2} PASS ({secs:.2}s) {}", c.id, c.name),
            Err(e) => {
                failures += 1;
                println!("criterion {:2} FAIL ({secs:.2}s) {}: {e}", c.id, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
