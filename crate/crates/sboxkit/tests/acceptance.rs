//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success; cargo
//! shows them automatically on failure).
//!
//! Criterion 4 is expected to fail: the published boomerang value for the
//! w^2*x^2+w row at n=6 is 12, while the function computes 10 by three
//! independent algorithms. The golden data keeps the published value and
//! this suite asserts it literally; see the repository notes for the
//! analysis.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sboxkit::constructions::{
    self, apn_piecewise, corollary1, verify_h3, verify_lemma1, verify_lemma4k, verify_row_bounds,
    verify_shifted_gold_bounds, SubfieldFn,
};
use sboxkit::equivalence::{distinguish, profile, Distinguish};
use sboxkit::funcrep::{
    random_affine_permutation, random_function, random_permutation, AffineMap, Lut,
};
use sboxkit::gf2n::Field;
use sboxkit::spectra::{
    bct, bct_naive, boomerang_case_bounds, ddt, ddt_naive, nl_lower_bound, walsh, walsh_naive,
};
use sboxkit::tables::{table_pieces, TableId};

fn report(id: u32, pass: bool, detail: &str, elapsed: Duration, budget: Duration) {
    let timing_ok = elapsed <= budget;
    println!(
        "criterion {id:2}: {} ({detail}; {:.2?} of {:.0?} budget)",
        if pass && timing_ok { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(pass, "criterion {id} value check failed: {detail}");
    assert!(
        timing_ok,
        "criterion {id} exceeded its runtime budget: {elapsed:.2?} > {budget:.2?}"
    );
}

fn table_triples(id: TableId) -> Vec<(u32, u32, u32)> {
    table_pieces(id)
        .unwrap()
        .iter()
        .map(|p| {
            let lut = p.materialize().unwrap();
            (
                lut.algebraic_degree().unwrap(),
                walsh(&lut).unwrap().nonlinearity,
                ddt(&lut).unwrap().uniformity,
            )
        })
        .collect()
}

fn table_betas(id: TableId) -> Vec<u32> {
    table_pieces(id)
        .unwrap()
        .iter()
        .map(|p| bct(&p.materialize().unwrap()).unwrap().uniformity)
        .collect()
}

/// Triples for the same family with an alternate Gold exponent; recorded
/// (printed) alongside criteria 1 and 2, never asserted.
fn alt_gold_triples(n: u32, k: u32) -> Vec<(u32, u32, u32)> {
    let field = Arc::new(Field::new(n, None, Some(2)).unwrap());
    let id = AffineMap::identity(&field, 2).unwrap();
    let w = field.omega().unwrap();
    let w2 = field.mul(w, w);
    [
        (vec![1, 0], 0),
        (vec![1, 0], w),
        (vec![0, w], w),
        (vec![w, 0], 0),
        (vec![0, w2], w),
    ]
    .into_iter()
    .map(|(linear, constant)| {
        let a = AffineMap::new(&field, 2, linear, constant).unwrap();
        let lut = corollary1(&field, 2, k, &a, &id)
            .unwrap()
            .materialize()
            .unwrap();
        (
            lut.algebraic_degree().unwrap(),
            walsh(&lut).unwrap().nonlinearity,
            ddt(&lut).unwrap().uniformity,
        )
    })
    .collect()
}

#[test]
fn criterion_01_table2() {
    let start = Instant::now();
    let got = table_triples(TableId::T2);
    let want = vec![(2, 24, 4), (4, 20, 6), (5, 20, 6), (5, 22, 6), (5, 22, 6)];
    let elapsed = start.elapsed();
    let same_for_k4 = alt_gold_triples(6, 4) == want;
    println!("  note: alternate Gold exponent k=4 at n=6 reproduces the same triples: {same_for_k4}");
    report(
        1,
        got == want,
        &format!("table T2 triples {got:?}"),
        elapsed,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_table3() {
    let start = Instant::now();
    let got = table_triples(TableId::T3);
    let want = vec![
        (2, 480, 4),
        (8, 476, 6),
        (9, 476, 6),
        (9, 478, 6),
        (9, 478, 6),
    ];
    let elapsed = start.elapsed();
    for k in [4u32, 6, 8] {
        let same = alt_gold_triples(10, k) == want;
        println!("  note: alternate Gold exponent k={k} at n=10 reproduces the same triples: {same}");
    }
    report(
        2,
        got == want,
        &format!("table T3 triples {got:?}"),
        elapsed,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_03_table4() {
    let start = Instant::now();
    let got = table_triples(TableId::T4);
    let want = vec![
        (3, 1984, 4),
        (8, 1976, 6),
        (11, 1976, 6),
        (11, 1978, 6),
        (11, 1980, 6),
    ];
    report(
        3,
        got == want,
        &format!("table T4 triples {got:?}"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_04_table5_boomerang() {
    let start = Instant::now();
    let got = table_betas(TableId::T5);
    let want = vec![4, 12, 12, 16, 12];
    let elapsed = start.elapsed();
    report(
        4,
        got == want,
        &format!(
            "table T5 betas {got:?} vs published {want:?} — the w^2*x^2+w row computes 10 by \
             bucket-pair, literal-definition and quartic brute-force enumeration alike, and the \
             value is representation-independent; the published 12 appears to belong to another \
             member of the same CCZ class"
        ),
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_05_table6_boomerang() {
    let start = Instant::now();
    let got = table_betas(TableId::T6);
    let want = vec![4, 8, 8, 8, 8];
    report(
        5,
        got == want,
        &format!("table T6 betas {got:?}"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_06_nonlinearity_bound() {
    let start = Instant::now();
    let mut pass = nl_lower_bound(6, 2).unwrap() == 20
        && nl_lower_bound(10, 2).unwrap() == 476
        && nl_lower_bound(12, 4).unwrap() == 1976;
    let mut worst = i64::MAX;
    for id in [TableId::T2, TableId::T3, TableId::T4] {
        let (n, s) = {
            let (n, s, _) = sboxkit::tables::table_shape(id);
            (n, s)
        };
        let bound = nl_lower_bound(n, s).unwrap();
        for piece in table_pieces(id).unwrap() {
            let nl = walsh(&piece.materialize().unwrap()).unwrap().nonlinearity as i64;
            worst = worst.min(nl - bound);
            pass &= nl >= bound;
        }
    }
    report(
        6,
        pass,
        &format!("bounds 20/476/1976; min NL slack over all table functions = {worst}"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_07_lemma_suites() {
    let budget = Duration::from_secs(1);
    let f6 = Arc::new(Field::new(6, None, Some(2)).unwrap());
    let f10 = Arc::new(Field::new(10, None, Some(2)).unwrap());
    let f12 = Arc::new(Field::new(12, None, Some(4)).unwrap());

    type Check<'a> = (&'a str, Box<dyn Fn() -> bool + 'a>);
    let checks: Vec<Check> = vec![
        ("lemma1(6,2,2)", Box::new(|| verify_lemma1(&f6, 2, 2).unwrap().holds)),
        ("lemma1(10,2,2)", Box::new(|| verify_lemma1(&f10, 2, 2).unwrap().holds)),
        ("lemma4k(12,4,3)", Box::new(|| verify_lemma4k(&f12, 4, 3).unwrap().holds)),
        (
            "h3(x^5, n=6, s=2)",
            Box::new(|| verify_h3(&constructions::gold(&f6, 2).unwrap(), 2).unwrap().holds),
        ),
        (
            "h3(x^5, n=10, s=2)",
            Box::new(|| verify_h3(&constructions::gold(&f10, 2).unwrap(), 2).unwrap().holds),
        ),
        (
            "h3(x^73, n=12, s=4)",
            Box::new(|| {
                verify_h3(&constructions::bracken_leander(&f12, 3).unwrap(), 4)
                    .unwrap()
                    .holds
            }),
        ),
    ];
    let mut all = true;
    let mut slowest = Duration::ZERO;
    let start = Instant::now();
    for (label, check) in checks {
        let t = Instant::now();
        let holds = check();
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        all &= holds && dt <= budget;
        println!("  {label}: {} in {dt:.2?}", if holds { "holds" } else { "FAILS" });
    }
    report(
        7,
        all,
        &format!("six lemma/hypothesis checks, slowest {slowest:.2?} (each budgeted 1s)"),
        start.elapsed(),
        Duration::from_secs(6),
    );
}

#[test]
fn criterion_08_piecewise_row_bounds() {
    let start = Instant::now();
    let mut pass = true;
    let mut count = 0;
    for id in [TableId::T2, TableId::T3, TableId::T4] {
        for piece in table_pieces(id).unwrap() {
            let lut = piece.materialize().unwrap();
            match verify_row_bounds(&piece, &lut) {
                Ok(r) => pass &= r.min_slack_in >= 0 && r.min_slack_out >= 0,
                Err(e) => {
                    println!("  {}: {e}", piece.provenance());
                    pass = false;
                }
            }
            count += 1;
        }
    }
    report(
        8,
        pass && count == 15,
        &format!("row-wise differential bounds on {count} piecewise functions"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_09_boomerang_case_bounds() {
    let start = Instant::now();
    let mut pass = true;
    for piece in table_pieces(TableId::T2).unwrap() {
        let lut = piece.materialize().unwrap();
        match boomerang_case_bounds(&piece, &lut) {
            Ok(r) => {
                for case in &r.cases {
                    pass &= case.min_slack >= 0;
                }
            }
            Err(e) => {
                println!("  {}: {e}", piece.provenance());
                pass = false;
            }
        }
    }
    let f6 = Arc::new(Field::new(6, None, Some(2)).unwrap());
    let shifted = verify_shifted_gold_bounds(&f6, 2, 2);
    let shifted_ok = match &shifted {
        Ok(r) => r.max_mixed <= 4 && r.max_outside <= 22,
        Err(e) => {
            println!("  shifted-Gold: {e}");
            false
        }
    };
    report(
        9,
        pass && shifted_ok,
        "entrywise case bounds on the five n=6 piecewise functions and the shifted Gold function",
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_10_apn_piecewise() {
    let start = Instant::now();
    let field = Arc::new(Field::new(9, None, Some(3)).unwrap());
    let f = SubfieldFn::from_fn(&field, 3, |x| field.pow(x, 5)).unwrap();
    let g = Lut::monomial(field.clone(), 3);
    let lut = apn_piecewise(&field, 3, f, g).unwrap();
    let d = ddt(&lut).unwrap().uniformity;
    report(
        10,
        lut.is_permutation() && d <= 4,
        &format!("n=9, s=3, f=x^5, g=x^3: permutation with uniformity {d}"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_11_oracle_equivalence() {
    let start = Instant::now();
    let mut pass = true;
    let mut checks = 0;
    let mut run = |lut: &Lut| {
        let ok = ddt(lut).unwrap() == ddt_naive(lut).unwrap()
            && walsh(lut).unwrap() == walsh_naive(lut).unwrap()
            && bct(lut).unwrap() == bct_naive(lut).unwrap();
        pass &= ok;
        checks += 1;
    };
    for piece in table_pieces(TableId::T2).unwrap() {
        run(&piece.materialize().unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for n in [4u32, 6, 8] {
        let field = Arc::new(Field::new(n, None, None).unwrap());
        for _ in 0..3 {
            run(&random_permutation(field.clone(), &mut rng));
        }
    }
    report(
        11,
        pass && checks == 14,
        &format!("fast vs literal spectra identical on {checks} functions"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_12_degree_laws() {
    let start = Instant::now();
    let mut pass = true;
    let mut inverses = 0;
    for id in [TableId::T2, TableId::T3, TableId::T4] {
        let (n, _, _) = sboxkit::tables::table_shape(id);
        for piece in table_pieces(id).unwrap() {
            let lut = piece.materialize().unwrap();
            if lut.algebraic_degree().unwrap() != n - 1 {
                continue;
            }
            inverses += 1;
            pass &= lut.invert().unwrap().algebraic_degree().unwrap() == n - 1;
        }
    }

    let field = Arc::new(Field::new(6, None, None).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0xde612);
    let mut agreements = 0;
    for _ in 0..100 {
        let f = random_function(field.clone(), &mut rng);
        let witness = f.has_degree_witness().unwrap();
        let has_term = f.interpolate().has_term_of_weight(5);
        if witness == has_term {
            agreements += 1;
        }
    }
    report(
        12,
        pass && inverses == 9 && agreements == 100,
        &format!(
            "{inverses} maximal-degree table functions keep degree n-1 under inversion; \
             witness test agreed on {agreements}/100 random functions"
        ),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_13_invariance_and_distinguish() {
    let start = Instant::now();
    let mut pass = true;

    let mut rng = ChaCha8Rng::seed_from_u64(0x1337);
    for piece in table_pieces(TableId::T2).unwrap() {
        let lut = piece.materialize().unwrap();
        let base = profile(&lut).unwrap().fingerprint;
        for _ in 0..10 {
            let l1 = random_affine_permutation(lut.field().clone(), &mut rng);
            let l2 = random_affine_permutation(lut.field().clone(), &mut rng);
            let composed = l1.compose(&lut).unwrap().compose(&l2).unwrap();
            pass &= profile(&composed).unwrap().fingerprint == base;
        }
    }

    let mut distinguished = 0;
    for id in [TableId::T2, TableId::T3, TableId::T4] {
        for piece in table_pieces(id).unwrap() {
            let lut = piece.materialize().unwrap();
            let inv = lut.invert().unwrap();
            if distinguish(&lut, &inv).unwrap() != Distinguish::Unknown {
                pass = false;
                distinguished += 1;
            }
        }
    }
    report(
        13,
        pass,
        &format!(
            "fingerprints stable under 50 two-sided affine compositions; \
             distinguish(F, F^-1) wrongly separated {distinguished} of 15 table functions"
        ),
        start.elapsed(),
        Duration::from_secs(600),
    );
}
