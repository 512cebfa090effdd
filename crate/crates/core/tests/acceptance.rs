use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

use fermatreg::cyclo::{self, CycElt};
use fermatreg::ffield::{is_prime, FiniteField};
use fermatreg::hyperg::{f3f2_at1, f_val};
use fermatreg::index::h_set;
use fermatreg::jacobi::{
    dirichlet_coeffs, hecke_check, jacobi_sum, jacobi_sum_in, local_factor, local_factor_from, splitting,
};
use fermatreg::lattice::period_det;
use fermatreg::lfunc::{l_star_zero, LFunction};
use fermatreg::numeric::bits_for_digits;
use fermatreg::regulator::r_value;
use fermatreg::tables::{character_table, reference_rows};
use fermatreg::verify::{rational_recognize, table_run, verify_case, RunConfig};
use fermatreg::{Error, FermatIndex};

type Outcome = (bool, String);

fn idx(n: u32, a: i64, b: i64) -> FermatIndex {
    FermatIndex::new(n, a, b).unwrap()
}

fn parse(s: &str, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(s).unwrap())
}

fn rel_err(x: &Float, want: &Float) -> f64 {
    let p = x.prec().max(want.prec());
    (Float::with_val(p, x - want) / want).abs().to_f64()
}

fn c1_regulator_reference() -> Outcome {
    let t = Instant::now();
    let prec = bits_for_digits(35) + 16;
    let want = parse("3.3173289967638281780989923863189664030737625416964", 256);
    let r = r_value(&idx(4, 1, 1), prec).unwrap();
    let err = rel_err(&r, &want);
    let el = t.elapsed();
    (err < 1e-30 && el < Duration::from_secs(60), format!("rel err {err:.1e}, {:.2}s", el.as_secs_f64()))
}

fn c2_l_value_reference() -> Outcome {
    let t = Instant::now();
    let prec = bits_for_digits(15) + 16;
    let want = parse("1.65866449838191408904949619315948", 256);
    let l = l_star_zero(&idx(4, 1, 1), prec).unwrap();
    let err = rel_err(&l, &want);
    let el = t.elapsed();
    (err < 1e-10 && el < Duration::from_secs(300), format!("rel err {err:.1e}, {:.2}s", el.as_secs_f64()))
}

fn c3_table() -> Outcome {
    let run = table_run(&RunConfig::default()).unwrap();
    let mut bad = Vec::new();
    for row in &run.rows {
        let budget = match row.idx.g() {
            1 => 60.0,
            2 => 600.0,
            _ => 2700.0,
        };
        let ok = match &row.result {
            Ok(r) => {
                r.recognized.as_ref() == Some(&row.expected)
                    && r.residual.as_ref().is_some_and(|x| *x < 1e-8)
                    && r.timings.total < budget
            }
            Err(_) => false,
        };
        if !ok {
            let got = match &row.result {
                Ok(r) => r.recognized.as_ref().map_or("none".to_string(), |q| q.to_string()),
                Err(e) => e.to_string(),
            };
            bad.push(format!("{} want {} got {}", row.idx, row.expected, got));
        }
    }
    let mut msg = format!("{}/{} rows match", run.matched(), run.rows.len());
    if !bad.is_empty() {
        msg += &format!("; {}", bad.join("; "));
    }
    (bad.is_empty(), msg)
}

fn c4_period_dets() -> Outcome {
    let prec = bits_for_digits(30) + 16;
    let mut bad = Vec::new();
    for row in reference_rows() {
        let d = period_det(&row.index(), prec).unwrap();
        let want = row.period_det.to_float(prec);
        let err = Float::with_val(prec, &d - &want).abs();
        if err >= 1e-25 {
            bad.push(format!("{} got {} want {}", row.index(), d.to_string_radix(10, Some(8)), want.to_string_radix(10, Some(8))));
        }
    }
    (bad.is_empty(), format!("{}/18 rows within 1e-25; {}", 18 - bad.len(), bad.join("; ")))
}

fn c5_exact_identities() -> Outcome {
    let alpha = &CycElt::one(4) - &CycElt::zeta(4).scale(&Rational::from(2));
    let j4 = hecke_check(&idx(4, 1, 1), &alpha, &CycElt::one(4)).unwrap().jacobi;
    let j5 = jacobi_sum(&idx(5, 1, 1), 2).unwrap();
    let mut bad = Vec::new();
    let table = character_table();
    for c in &table {
        let chk = hecke_check(&idx(c.n, c.a as i64, c.b as i64), &c.alpha, &c.phi).unwrap();
        if chk.jacobi != chk.predicted {
            bad.push(format!("({},{},{}) at {}", c.n, c.a, c.b, c.alpha));
        }
    }
    let ok = j4 == alpha && j5 == CycElt::from_int(5, -4) && bad.is_empty();
    (ok, format!("j4 = {j4}, j5 = {j5}, {}/{} character values exact {}", table.len() - bad.len(), table.len(), bad.join(" ")))
}

fn c6_properties() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        notes.push(format!("({name}) {}{detail}", if pass { "ok" } else { "FAIL " }));
    };

    // (a) Weil's identity on random admissible indices and primes
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let levels = [3u32, 4, 5, 6, 7, 8, 9, 10, 12, 15];
    let mut done = 0;
    let mut fails = 0;
    while done < 50 {
        let n = levels[rng.gen_range(0..levels.len())];
        let (a, b) = (rng.gen_range(1..n as i64), rng.gen_range(1..n as i64));
        let Ok(i) = FermatIndex::new(n, a, b) else { continue };
        let p = rng.gen_range(2..400u64);
        if !is_prime(p) || n as u64 % p == 0 {
            continue;
        }
        let f = splitting(n, p).unwrap().f;
        if (p as u128).pow(f) > 1 << 20 {
            continue;
        }
        let j = jacobi_sum(&i, p).unwrap();
        if &j * &j.conj() != CycElt::from_int(n, (p as i64).pow(f)) {
            fails += 1;
        }
        done += 1;
    }
    check("a", fails == 0, format!(" {done} samples"));

    // (b) integral local factors, independent of the field generator
    let mut fails = 0;
    for (n, a, b, p) in [(7, 1, 2, 2), (5, 1, 1, 3), (12, 1, 2, 5), (9, 1, 2, 7), (10, 1, 4, 3), (3, 1, 1, 13), (6, 1, 3, 11)] {
        let i = idx(n, a, b);
        let split = splitting(n, p).unwrap();
        let f1 = FiniteField::new(p, split.f as usize);
        let f2 = FiniteField::with_generator_rank(p, split.f as usize, 1);
        let l1 = local_factor_from(&i, &split, &jacobi_sum_in(&f1, &i)).unwrap();
        let l2 = local_factor_from(&i, &split, &jacobi_sum_in(&f2, &i)).unwrap();
        let lf = local_factor(&i, p).unwrap();
        if l1 != l2 || lf != l1 || lf.poly[0] != 1 {
            fails += 1;
        }
    }
    check("b", fails == 0, String::new());

    // (c) multiplicativity
    let mut fails = 0;
    for row in reference_rows() {
        let c = dirichlet_coeffs(&row.index(), 10_000).unwrap();
        for m in 1..=100usize {
            for k in 1..=100usize {
                if cyclo::gcd(m as u64, k as u64) == 1 && c[m * k] != c[m] * c[k] {
                    fails += 1;
                }
            }
        }
    }
    check("c", fails == 0, String::new());

    // (d) sign of F at every unit against H
    let mut fails = 0;
    for row in reference_rows() {
        let i = row.index();
        let hs = h_set(&i);
        for h in cyclo::units(i.n()) {
            let v = f_val(&i.scaled(h as i64).unwrap(), 96);
            if (v > 0) != hs.contains(&h) {
                fails += 1;
            }
        }
    }
    check("d", fails == 0, String::new());

    // (e, f) approximate functional equation against the Dirichlet series at s = 3, root numbers
    let prec = bits_for_digits(15) + 16;
    let mut worst = 0f64;
    let mut eps_dev = 0f64;
    for i in [idx(3, 1, 1), idx(4, 1, 1), idx(5, 1, 1), idx(12, 1, 2), idx(7, 1, 2)] {
        let mut lf = LFunction::compute(&i, prec).unwrap();
        let e = lf.epsilon_value().unwrap().to_f64();
        eps_dev = eps_dev.max((e * e - 1.0).abs());
        let afe = lf.l_value(&Float::with_val(prec, 3)).unwrap().to_f64();
        let c = dirichlet_coeffs(&i, 100_000).unwrap();
        let direct: f64 = c.iter().enumerate().skip(1).map(|(n, &a)| a as f64 / (n as f64).powi(3)).sum();
        worst = worst.max((afe - direct).abs());
    }
    check("e", worst < 1e-5, format!(" max diff {worst:.1e}"));
    check("f", eps_dev < 1e-5, format!(" max |eps^2-1| {eps_dev:.1e}"));

    // (g) the terminating case
    let mut fails = 0;
    for (p, q) in [(1, 3), (1, 2), (3, 7), (2, 5), (5, 12)] {
        let a = Rational::from((p, q));
        let b = Rational::from(1) - &a;
        if f3f2_at1(&a, &b, 128) != 1 {
            fails += 1;
        }
    }
    check("g", fails == 0, String::new());
    (ok, notes.join(", "))
}

fn c7_proven_equalities() -> Outcome {
    let prec = bits_for_digits(20) + 16;
    let tol = Float::with_val(prec, 1e-12);
    let mut ok = true;
    let mut notes = Vec::new();
    for (i, want) in [(idx(3, 1, 1), 3), (idx(4, 1, 2), 2)] {
        let ratio = r_value(&i, prec).unwrap() / l_star_zero(&i, prec).unwrap();
        let got = rational_recognize(&ratio, 1_000_000, &tol);
        let residual = got.as_ref().map(|q| Float::with_val(prec, &ratio - q).abs().to_f64());
        ok &= got == Some(Rational::from(want)) && residual.is_some_and(|r| r < 1e-12);
        notes.push(format!("{i}: R/L* = {}", ratio.to_string_radix(10, Some(22))));
    }
    (ok, notes.join(", "))
}

fn c8_degenerate_cases() -> Outcome {
    let c = RunConfig::default();
    let mut bad = Vec::new();
    for (n, a, b) in [(8, 1, 2), (8, 1, 4), (7, 1, 1), (9, 1, 1), (12, 1, 4)] {
        if !matches!(verify_case(n, a, b, &c), Err(Error::InsufficientElements { .. })) {
            bad.push(format!("({n},{a},{b})"));
        }
    }
    (bad.is_empty(), format!("5 indices rejected {}", bad.join(" ")))
}

fn c9_relations() -> Outcome {
    let prec = bits_for_digits(30) + 16;
    let f = |n, a, b| f_val(&idx(n, a, b), prec);
    let r = |n, a, b| r_value(&idx(n, a, b), prec).unwrap();
    let d1 = Float::with_val(prec, f(6, 1, 2) - f(6, 2, 3) * 6u32).abs().to_f64();
    let d2 = Float::with_val(prec, r(10, 1, 4) - r(10, 2, 5) * 4u32).abs().to_f64();
    let d3 = Float::with_val(prec, r(12, 1, 2) - r(12, 2, 3) * 2u32).abs().to_f64();
    let ok = d1 < 1e-12 && d2 < 1e-10 && d3 < 1e-10;
    (ok, format!("|F6(1,2)-6F6(2,3)| = {d1:.1e}, |R10(1,4)-4R10(2,5)| = {d2:.1e}, |R12(1,2)-2R12(2,3)| = {d3:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("regulator reference value r(4,1,1)", c1_regulator_reference),
        ("L*(0) reference value for (4,1,1)", c2_l_value_reference),
        ("ratio table, 18 rows", c3_table),
        ("period determinants", c4_period_dets),
        ("exact Jacobi sum identities", c5_exact_identities),
        ("property suites", c6_properties),
        ("R/L* for (3,1,1) and (4,1,2)", c7_proven_equalities),
        ("degenerate indices", c8_degenerate_cases),
        ("hypergeometric and regulator relations", c9_relations),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = run();
        failed += usize::from(!ok);
        println!(
            "{} criterion {} {name} [{:.1}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
