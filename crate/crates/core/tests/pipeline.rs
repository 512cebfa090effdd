use rug::Rational;

use fermatreg::verify::{table_run, verify_case, RunConfig, RunStatus};

fn q(p: i64, d: u32) -> Option<Rational> {
    Some(Rational::from((p, d)))
}

#[test]
fn genus_three_and_two_examples() {
    let c = RunConfig::default();
    assert_eq!(verify_case(7, 1, 2, &c).unwrap().recognized, q(2744, 1));
    assert_eq!(verify_case(5, 1, 1, &c).unwrap().recognized, q(100, 1));
}

#[test]
fn ten_one_two_example() {
    let r = verify_case(10, 1, 2, &RunConfig::default()).unwrap();
    assert_eq!(r.recognized, q(1, 2), "ratio {}", r.ratio);
}

#[test]
fn more_digits_keep_the_rational_and_shrink_the_residual() {
    for (n, a, b) in [(3, 1, 1), (6, 1, 1), (5, 1, 1)] {
        let lo = verify_case(n, a, b, &RunConfig::with_digits(15)).unwrap();
        let hi = verify_case(n, a, b, &RunConfig::with_digits(25)).unwrap();
        assert!(lo.recognized.is_some());
        assert_eq!(lo.recognized, hi.recognized, "({n},{a},{b})");
        assert!(hi.residual.unwrap() <= lo.residual.unwrap());
    }
}

#[test]
fn table_signs_and_structure() {
    let run = table_run(&RunConfig { parallelism: Some(2), ..RunConfig::default() }).unwrap();
    assert_eq!(run.rows.len(), 18);
    assert!(run.status() != RunStatus::Structural);
    for row in &run.rows {
        let r = row.result.as_ref().unwrap();
        let negative = [(6, 1, 1), (12, 1, 6)].contains(&(r.idx.n(), r.idx.a(), r.idx.b()));
        assert_eq!(r.ratio < 0, negative, "{}", r.idx);
        assert_eq!(r.epsilon * r.epsilon, 1);
        assert_eq!(r.elements.len(), r.g());
    }
    let rec = |n, a, b| {
        run.rows.iter().find(|r| (r.idx.n(), r.idx.a(), r.idx.b()) == (n, a, b)).unwrap().result.as_ref().unwrap().recognized.clone()
    };
    assert_eq!(rec(6, 1, 1), q(-1, 1));
    assert_eq!(rec(9, 1, 2), q(72, 1));
}
