//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Run with `cargo test -p qset-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use qset_core::clifford::{beta_chevalley, beta_literal, spinor_apply, CliffordElement, SeedSpace};
use qset_core::error::QsetError;
use qset_core::grassmann::{wedge_monomials, Element, Monomial};
use qset_core::hfs::{enumerate_rank, hexp, tier_range, Hfs};
use qset_core::interchange::{element_from_json, element_to_json, render_table};
use qset_core::palev::{closure_check, contraction_residual};
use qset_core::quantify::{quantify, OneBodyOperator};
use qset_core::syntax::{parse_element, print_canonical};
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    check(
        elapsed < Duration::from_secs(limit_secs),
        format!("took {elapsed:.2?}, limit {limit_secs} s"),
    )
}

fn table_and_bijection() -> Outcome {
    let start = Instant::now();
    let golden = include_str!("data/table1.txt");
    let rendered = render_table(24);
    check(rendered == golden, "rendered table differs from golden file")?;
    for line in golden.lines() {
        let mut cols = line.split('\t');
        let n: u64 = cols.next().unwrap().parse().unwrap();
        let _rank = cols.next();
        let text = cols.next().unwrap();
        let x = Hfs::from_serial_u64(n);
        check(x.to_string() == text, format!("serial {n} decodes to {x}, want {text}"))?;
    }
    for n in 0..65536u64 {
        let big = BigUint::from(n);
        let x = Hfs::from_serial(&big);
        check(x.serial().ok() == Some(big), format!("serial {n} does not round trip"))?;
        check(x.rank() <= 4, format!("serial {n} has rank {}", x.rank()))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 10)?;
    Ok(format!("25 golden rows, 65536 serials round trip in {elapsed:.2?}"))
}

fn counting() -> Outcome {
    let mut sizes = Vec::new();
    for r in 0..=4u32 {
        let h = hexp(r).unwrap().to_usize().unwrap();
        let all: Vec<Hfs> = enumerate_rank(r).unwrap().collect();
        check(all.len() == h, format!("rank {r}: {} sets, want {h}", all.len()))?;
        check(
            all.windows(2).all(|w| w[0] < w[1]),
            format!("rank {r} enumeration not strictly ascending"),
        )?;
        let tier = all.iter().filter(|x| x.rank() == r).count();
        let below = if r == 0 { 0 } else { hexp(r - 1).unwrap().to_usize().unwrap() };
        let want = if r == 0 { 1 } else { h - below };
        check(tier == want, format!("tier {r}: {tier} sets, want {want}"))?;
        let (lo, hi) = tier_range(r).unwrap();
        check(
            (&hi - &lo).to_usize() == Some(want),
            format!("tier_range({r}) has the wrong width"),
        )?;
        sizes.push(h);
    }
    Ok(format!("sizes {sizes:?}"))
}

fn serial_additivity() -> Outcome {
    let basis: Vec<Monomial> = (0..16u64).map(|n| Monomial::from_hfs(Hfs::from_serial_u64(n))).collect();
    let mut pairs = 0;
    for a in &basis {
        for b in &basis {
            let sa = a.as_hfs().small_serial().unwrap();
            let sb = b.as_hfs().small_serial().unwrap();
            let wedge = wedge_monomials(a, b);
            if sa & sb != 0 {
                check(wedge.is_none(), format!("overlapping {sa}, {sb} did not vanish"))?;
                continue;
            }
            pairs += 1;
            let (sign, m) = wedge.ok_or(format!("disjoint {sa}, {sb} vanished"))?;
            check(
                m.as_hfs().small_serial() == Some(sa + sb),
                format!("serial of {sa}∧{sb} is not {}", sa + sb),
            )?;
            let concat: Vec<u64> = a
                .factors()
                .iter()
                .chain(b.factors())
                .map(|f| f.small_serial().unwrap())
                .collect();
            check(
                sign == descending_parity(&concat),
                format!("sign of {sa}∧{sb} disagrees with permutation parity"),
            )?;
            let via_element = Element::monomial(a.clone()).wedge(&Element::monomial(b.clone()));
            check(
                via_element.coefficient(&m) == q(sign as i64),
                format!("element wedge of {sa}∧{sb} disagrees"),
            )?;
        }
    }
    Ok(format!("{pairs} disjoint pairs exact"))
}

fn car_suite() -> Outcome {
    for d in 1..=4usize {
        let seed = SeedSpace::first(d).unwrap();
        let gens: Vec<CliffordElement> = (1..=2 * d).map(|i| CliffordElement::generator(d, i).unwrap()).collect();
        for m in seed.spinor_basis() {
            let psi = Element::monomial(m);
            for a in 1..=2 * d {
                for b in 1..=2 * d {
                    let ab = spinor_apply(&gens[a - 1], &spinor_apply(&gens[b - 1], &psi, &seed).unwrap(), &seed).unwrap();
                    let ba = spinor_apply(&gens[b - 1], &spinor_apply(&gens[a - 1], &psi, &seed).unwrap(), &seed).unwrap();
                    let want = if a.abs_diff(b) == d { psi.clone() } else { Element::zero() };
                    check(&ab + &ba == want, format!("d={d}: {{v{a}, v{b}}} wrong on {psi:?}"))?;
                }
            }
        }
    }
    let mut products = 0;
    for d in 1..=3usize {
        let blades = 1u32 << (2 * d);
        let mats: Vec<IntMatrix> = (0..blades).map(|m| jordan_wigner_blade(d, m)).collect();
        for a in 0..blades {
            for b in 0..blades {
                let prod = CliffordElement::blade(d, a, q(1))
                    .unwrap()
                    .mul(&CliffordElement::blade(d, b, q(1)).unwrap())
                    .unwrap();
                let n = 1usize << d;
                let mut got = vec![vec![0i64; n]; n];
                for (mask, c) in prod.terms() {
                    let c = c.to_integer().to_i64().ok_or("non-integer product coefficient")?;
                    for i in 0..n {
                        for j in 0..n {
                            got[i][j] += c * mats[mask as usize][i][j];
                        }
                    }
                }
                let want = int_mul(&mats[a as usize], &mats[b as usize]);
                check(got == want, format!("d={d}: blade {a:b}·{b:b} disagrees with matrix oracle"))?;
                products += 1;
            }
        }
    }
    Ok(format!("anticommutators exhaustive d≤4, {products} blade products match"))
}

fn leibniz_and_derivation() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(5);
    for _ in 0..200 {
        let a = random_element(&mut rng, 65536, 4);
        let b = random_element(&mut rng, 65536, 4);
        let lhs = a.wedge(&b).grade_op();
        let rhs = &a.grade_op().wedge(&b) + &a.wedge(&b.grade_op());
        check(lhs == rhs, format!("grade Leibniz fails for {a:?}, {b:?}"))?;
    }
    let pool: Vec<Hfs> = (0..16u64).map(Hfs::from_serial_u64).collect();
    for _ in 0..200 {
        let d = rng.gen_range(1..=4);
        let labels: Vec<Hfs> = pool.choose_multiple(&mut rng, d).cloned().collect();
        let seed = SeedSpace::new(labels.clone()).unwrap();
        let matrix = (0..d)
            .map(|_| (0..d).map(|_| if rng.gen_bool(0.6) { random_rational(&mut rng) } else { q(0) }).collect())
            .collect();
        let h = OneBodyOperator::new(seed, matrix).unwrap();
        let sh = quantify(&h).map_err(|e| e.to_string())?;
        let a = random_spinor(&mut rng, &labels, 3);
        let b = random_spinor(&mut rng, &labels, 3);
        let lhs = sh.apply(&a.wedge(&b)).map_err(|e| e.to_string())?;
        let rhs = &sh.apply(&a).unwrap().wedge(&b) + &a.wedge(&sh.apply(&b).unwrap());
        check(lhs == rhs, format!("quantified operator is not a derivation on {a:?}, {b:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 5)?;
    Ok(format!("200 + 200 instances in {elapsed:.2?}"))
}

fn beta_forms() -> Outcome {
    for d in 1..=3usize {
        let seed = SeedSpace::first(d).unwrap();
        let basis = seed.spinor_basis();
        for a in &basis {
            for b in &basis {
                let v = beta_literal(&Element::monomial(a.clone()), &Element::monomial(b.clone()), &seed).unwrap();
                check(v.is_zero(), format!("literal form nonzero at d={d}"))?;
            }
        }
    }
    let mut ranks = Vec::new();
    for d in 1..=4usize {
        let seed = SeedSpace::first(d).unwrap();
        let basis = seed.spinor_basis();
        let mut mat = Vec::new();
        for a in &basis {
            let mut row = Vec::new();
            for b in &basis {
                let v = beta_chevalley(&Element::monomial(a.clone()), &Element::monomial(b.clone()), &seed).unwrap();
                if a.grade() + b.grade() != d {
                    check(v.is_zero(), format!("d={d}: form nonzero off complementary grades"))?;
                }
                row.push(v);
            }
            mat.push(row);
        }
        let rank = rational_rank(mat);
        check(rank == basis.len(), format!("d={d}: Chevalley matrix rank {rank} < {}", basis.len()))?;
        ranks.push(rank);
    }
    Ok(format!("literal ≡ 0 for d≤3; Chevalley full rank {ranks:?}"))
}

fn palev_closure() -> Outcome {
    let mut sizes = Vec::new();
    for d in 1..=3usize {
        let t = match closure_check(d) {
            Ok(t) => t,
            Err(e @ QsetError::ClosureViolation { .. }) => return Err(format!("d={d}: {e}")),
            Err(e) => return Err(e.to_string()),
        };
        check(t.size() == d * (2 * d - 1), format!("d={d}: basis size {}", t.size()))?;
        check(t.is_antisymmetric(), format!("d={d}: not antisymmetric"))?;
        check(t.satisfies_jacobi(), format!("d={d}: Jacobi fails"))?;
        sizes.push(t.size());
    }
    Ok(format!("closed, antisymmetric, Jacobi for dims {sizes:?}"))
}

fn bose_contraction() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for k in 1..=3u64 {
        let mut prev: Option<f64> = None;
        for j in [4u64, 8, 16, 32, 64] {
            let r = contraction_residual(j, k).map_err(|e| e.to_string())?;
            let err = (r - k as f64 / j as f64).abs();
            worst = worst.max(err);
            check(err <= 1e-12, format!("j={j}, k={k}: residual {r}, off by {err:e}"))?;
            if let Some(p) = prev {
                check((p / r - 2.0).abs() < 1e-9, format!("j={j}, k={k}: residual did not halve"))?;
            }
            prev = Some(r);
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 5)?;
    Ok(format!("max deviation {worst:e} in {elapsed:.2?}"))
}

fn round_trip() -> Outcome {
    let mut elements: Vec<Element> = (0..16u64).map(Element::basis).collect();
    let mut rng = rng(9);
    for _ in 0..500 {
        elements.push(random_element(&mut rng, 65536, 5));
    }
    for a in &elements {
        let text = print_canonical(a);
        let back = parse_element(&text, 5).map_err(|e| format!("{text:?}: {e}"))?;
        check(&back == a, format!("{text:?} parsed to a different element"))?;
        let json = element_to_json(a).map_err(|e| e.to_string())?;
        let back = element_from_json(&json).map_err(|e| format!("{json}: {e}"))?;
        check(&back == a, format!("{json} re-ingested to a different element"))?;
    }
    Ok(format!("{} elements through text and JSON", elements.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("serial table and bijection", table_and_bijection),
        ("rank counting", counting),
        ("serial additivity", serial_additivity),
        ("anticommutation relations", car_suite),
        ("Leibniz and derivation", leibniz_and_derivation),
        ("spinor forms", beta_forms),
        ("bivector closure", palev_closure),
        ("Bose contraction", bose_contraction),
        ("parse and JSON round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
