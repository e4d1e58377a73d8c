//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{
    differential, random_code_mixed, random_disjoint, random_operation, random_repr, repr, rng,
    single_error, with_zero_column, Shape,
};
use polyindex::correspondence::{
    build_polymatroid, check_condition_a, check_condition_b, check_condition_c, condition_c_holds,
    extract_code, RepresentedProblem,
};
use polyindex::indexcode::{
    brute_force_cost, brute_force_verify, check_receiver_pattern, error_patterns,
    search_min_length, verify_differential_ecic, IndexCode, IndexCodingProblem,
};
use polyindex::linalg::{FieldMatrix, IndexSet, PrimeField};
use polyindex::polymatroid::{
    basis_vectors, check_axioms, contract, contract_commutes_check, contract_representation,
    ingleton_check, IngletonVerdict, RankTable, ReprPolymatroid, TABLE_CAP,
};
use polyindex::sim::{run_exhaustive, run_random_trials, WeightPolicy};
use polyindex::Budget;
use rand::Rng;

const VERIFY_LIMIT: Duration = Duration::from_secs(5);
const BRUTE_LIMIT: Duration = Duration::from_secs(1);
const SEARCH_LIMIT: Duration = Duration::from_secs(10);
const ORACLE_INSTANCES: usize = 200;
const CROSS_ROUTE_INSTANCES: usize = 100;
const OP_SEQUENCES: usize = 100;
const COMMUTE_INSTANCES: usize = 50;
const ROW_CONTRACTION_INSTANCES: usize = 50;
const RANDOM_TRIALS: u64 = 10_000;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn table_from(ground: usize, rank: impl Fn(&[usize]) -> u32) -> RankTable {
    RankTable::from_fn(ground, |mask| {
        let set: Vec<usize> = (0..ground).filter(|i| mask >> i & 1 == 1).collect();
        rank(&set)
    })
    .unwrap()
}

fn differential_reproduction() -> Outcome {
    let code = differential();
    ensure(
        code.matrix().rows() == 6 && code.len() == 13,
        "L is not 6x13",
    )?;
    let deltas: Vec<usize> = code.problem().receivers().iter().map(|r| r.delta).collect();
    ensure(deltas == [2, 1, 1], format!("deltas {deltas:?}"))?;
    let (v, t) = timed(|| verify_differential_ecic(&code));
    ensure(v.is_valid(), format!("verdict {v:?}"))?;
    ensure(t < VERIFY_LIMIT, format!("took {t:?}"))?;
    Ok(format!("valid in {t:.2?} (limit {VERIFY_LIMIT:?})"))
}

fn single_error_reproduction() -> Outcome {
    let code = single_error();
    ensure(
        verify_differential_ecic(&code).is_valid(),
        "span test rejects",
    )?;
    // only the unknown block varies: 2^4 messages, against a radius-2 ball in GF(2)^6
    let per_receiver = 4 * (1 + 6 + 15);
    ensure(
        brute_force_cost(&code) == 3 * per_receiver,
        format!("cost {}", brute_force_cost(&code)),
    )?;
    let (v, t) = timed(|| brute_force_verify(&code, Budget::DEFAULT).unwrap());
    ensure(v.is_valid(), format!("brute force {v:?}"))?;
    ensure(t < BRUTE_LIMIT, format!("took {t:?}"))?;
    Ok(format!(
        "valid on both routes, brute force {t:.2?} (limit {BRUTE_LIMIT:?})"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut summary = Vec::new();
    for (k, (q, max_delta)) in [(2, 0), (2, 1), (3, 0), (3, 1)].into_iter().enumerate() {
        let shape = Shape {
            max_delta,
            ..Shape::over(q)
        };
        let mut r = rng(1000 + k as u64);
        let (mut valid, mut invalid) = (0, 0);
        for n in 0..ORACLE_INSTANCES {
            let code = random_code_mixed(&mut r, shape);
            let fast = verify_differential_ecic(&code);
            let slow = brute_force_verify(&code, Budget::DEFAULT).map_err(|e| e.to_string())?;
            ensure(
                fast == slow,
                format!("q={q} delta<={max_delta} instance {n}: {fast:?} vs {slow:?}"),
            )?;
            if fast.is_valid() {
                valid += 1;
            } else {
                invalid += 1;
            }
        }
        ensure(
            valid > 0 && invalid > 0,
            format!("q={q} delta<={max_delta}: degenerate sample"),
        )?;
        summary.push(format!("q={q},d<={max_delta}: {valid}v/{invalid}i"));
    }
    Ok(format!(
        "{ORACLE_INSTANCES} per configuration, all agree ({})",
        summary.join(", ")
    ))
}

fn forward_correspondence() -> Outcome {
    for (name, code) in [
        ("differential", differential()),
        ("single-error", single_error()),
    ] {
        let inst = build_polymatroid(&code);
        let ground = code.problem().messages() + 2 * code.len();
        ensure(
            inst.repr().ground_size() == ground,
            format!("{name}: ground {}", inst.repr().ground_size()),
        )?;
        ensure(check_condition_a(&inst), format!("{name}: A fails"))?;
        ensure(check_condition_b(&inst), format!("{name}: B fails"))?;
        ensure(
            check_condition_c(&inst).is_valid(),
            format!("{name}: C fails"),
        )?;
    }
    let base = single_error();
    for j in 0..base.len() {
        let broken = with_zero_column(&base, j);
        let v = verify_differential_ecic(&broken);
        let c = check_condition_c(&build_polymatroid(&broken));
        ensure(
            !v.is_valid(),
            format!("column {} zeroed: still valid", j + 1),
        )?;
        ensure(v == c, format!("column {} zeroed: {v:?} vs {c:?}", j + 1))?;
    }
    Ok(format!(
        "A, B, C hold on both examples; all {} zeroed-column variants fail with equal witnesses",
        base.len()
    ))
}

fn reverse_correspondence() -> Outcome {
    for (name, code) in [
        ("differential", differential()),
        ("single-error", single_error()),
    ] {
        let back = extract_code(&build_polymatroid(&code)).map_err(|e| e.to_string())?;
        ensure(
            back.matrix().as_slice() == code.matrix().as_slice(),
            format!("{name}: round trip differs"),
        )?;
    }
    let f3 = PrimeField::new(3).unwrap();
    let base = single_error();
    let p = base.problem();
    let problem3 =
        IndexCodingProblem::new(f3, p.messages(), p.block_len(), p.receivers().to_vec()).unwrap();
    let l3 = FieldMatrix::from_columns(
        f3,
        p.message_len(),
        &base.matrix().columns().collect::<Vec<_>>(),
    )
    .unwrap();
    let code3 = IndexCode::new(problem3.clone(), l3).unwrap();
    ensure(
        verify_differential_ecic(&code3).is_valid(),
        "GF(3) code is not valid",
    )?;
    let inst = build_polymatroid(&code3);
    let (m, c, mn) = (p.messages(), code3.len(), p.message_len());
    let mut matrices = inst.repr().matrices().to_vec();
    for i in 0..c {
        matrices[m + c + i] = matrices[m + c + i].scale_row(mn + i, 2).unwrap();
    }
    let scaled = RepresentedProblem::new(
        problem3,
        ReprPolymatroid::new(f3, mn + c, matrices).unwrap(),
    )
    .unwrap();
    ensure(
        check_condition_a(&scaled) && check_condition_b(&scaled),
        "scaled instance fails A or B",
    )?;
    ensure(
        check_condition_c(&scaled).is_valid(),
        "scaled instance fails C",
    )?;
    let extracted = extract_code(&scaled).map_err(|e| e.to_string())?;
    ensure(
        verify_differential_ecic(&extracted).is_valid(),
        "extracted GF(3) code is invalid",
    )?;
    Ok("both round trips byte-exact; K = 2I over GF(3) extracts a valid code".into())
}

fn cross_route_agreement() -> Outcome {
    let mut r = rng(2024);
    let mut pairs = 0usize;
    for n in 0..CROSS_ROUTE_INSTANCES {
        let q = if n % 2 == 0 { 2 } else { 3 };
        let code = random_code_mixed(&mut r, Shape::over(q));
        let inst = build_polymatroid(&code);
        for (i, rcv) in code.problem().receivers().iter().enumerate() {
            for pat in error_patterns(code.len(), rcv.pattern_size(code.len())) {
                let a = condition_c_holds(&inst, i, &pat).map_err(|e| e.to_string())?;
                let b = check_receiver_pattern(&code, i, &pat).map_err(|e| e.to_string())?;
                ensure(
                    a == b,
                    format!(
                        "instance {n}, receiver {}, pattern {:?}",
                        i + 1,
                        pat.one_based()
                    ),
                )?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{CROSS_ROUTE_INSTANCES} instances, {pairs} (receiver, pattern) pairs agree"
    ))
}

fn polymatroid_goldens() -> Outcome {
    let three = table_from(3, |s| match s {
        [] => 0,
        [0] | [1] | [1, 2] => 2,
        [2] => 1,
        _ => 3,
    });
    let basis: Vec<Vec<u32>> = basis_vectors(&three)
        .unwrap()
        .into_iter()
        .map(|b| b.0)
        .collect();
    let expected = vec![vec![1, 1, 1], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]];
    ensure(basis == expected, format!("basis {basis:?}"))?;
    ensure(
        repr("three_element_repr.json").to_table(TABLE_CAP).unwrap() == three,
        "representation table differs",
    )?;

    let c = contract(&three, &IndexSet::singleton(2)).unwrap();
    ensure(
        c.rank_of(&[1]) == Ok(1) && c.rank_of(&[0]) == Ok(2) && c.rank_of(&[0, 1]) == Ok(2),
        "contraction by {3}",
    )?;

    let four = repr("four_element_repr.json");
    let four_table = four.to_table(TABLE_CAP).unwrap();
    let by3 = contract(&four_table, &IndexSet::singleton(2)).unwrap();
    let expect3 = table_from(3, |s| match s {
        [] => 0,
        [0] | [1] => 1,
        _ => 2,
    });
    ensure(
        by3 == expect3,
        "contraction by {3} of the four-element example",
    )?;
    let by4 = contract(&four_table, &IndexSet::singleton(3)).unwrap();
    let expect4 = table_from(3, |s| match s {
        [] | [0] => 0,
        _ => 1,
    });
    ensure(
        by4 == expect4,
        "contraction by {4} of the four-element example",
    )?;
    ensure(
        contract_representation(&four, 2)
            .unwrap()
            .to_table(TABLE_CAP)
            .unwrap()
            == expect3,
        "row contraction by {3}",
    )?;
    ensure(
        contract_representation(&four, 3)
            .unwrap()
            .to_table(TABLE_CAP)
            .unwrap()
            == expect4,
        "row contraction by {4}",
    )?;
    Ok("basis, induced table and all four contractions match".into())
}

fn representation_invariance_suite() -> Outcome {
    let mut r = rng(77);
    for n in 0..OP_SEQUENCES {
        let q = if n % 2 == 0 { 2 } else { 3 };
        let repr = random_repr(&mut r, q, 5, 6);
        let before = repr.to_table(TABLE_CAP).unwrap();
        let mut concat = repr.concatenation();
        for _ in 0..r.gen_range(1..15) {
            concat = random_operation(&mut r, &concat);
        }
        let after = repr
            .with_concatenation(&concat)
            .unwrap()
            .to_table(TABLE_CAP)
            .unwrap();
        ensure(
            before == after,
            format!("operation sequence {n} changed the table"),
        )?;
    }
    for n in 0..COMMUTE_INSTANCES {
        let t = random_repr(&mut r, 2 + (n % 2) as u32, 5, 6)
            .to_table(TABLE_CAP)
            .unwrap();
        let (t1, t2) = random_disjoint(&mut r, t.ground_size());
        ensure(
            contract_commutes_check(&t, &t1, &t2).unwrap(),
            format!("commutation instance {n}"),
        )?;
    }
    for n in 0..ROW_CONTRACTION_INSTANCES {
        let repr = random_repr(&mut r, 2 + (n % 2) as u32, 5, 6);
        let t = repr.to_table(TABLE_CAP).unwrap();
        for e in 0..repr.ground_size() {
            let rows = contract_representation(&repr, e)
                .unwrap()
                .to_table(TABLE_CAP)
                .unwrap();
            ensure(
                rows == contract(&t, &IndexSet::singleton(e)).unwrap(),
                format!("instance {n}, element {}", e + 1),
            )?;
        }
    }
    Ok(format!(
        "{OP_SEQUENCES} operation sequences, {COMMUTE_INSTANCES} commutations, {ROW_CONTRACTION_INSTANCES} row contractions"
    ))
}

fn ingleton() -> Outcome {
    let t = table_from(4, |s| match s.len() {
        0 => 0,
        1 => 2,
        2 if s == [2, 3] => 4,
        2 => 3,
        _ => 4,
    });
    ensure(check_axioms(&t).is_ok(), "table is not a polymatroid")?;
    // both sides from the definition, singletons {1},{2},{3},{4}
    let r = |s: &[usize]| t.rank_of(s).unwrap() as u64;
    let lhs = r(&[0, 1]) + r(&[0, 2]) + r(&[0, 3]) + r(&[1, 2]) + r(&[1, 3]);
    let rhs = r(&[0]) + r(&[1]) + r(&[2, 3]) + r(&[0, 1, 2]) + r(&[0, 1, 3]);
    ensure((lhs, rhs) == (15, 16), format!("recomputed {lhs} vs {rhs}"))?;
    let IngletonVerdict::Violation(v) = ingleton_check(&t).unwrap() else {
        return Err("not flagged".into());
    };
    let singles: Vec<IndexSet> = (0..4).map(IndexSet::singleton).collect();
    ensure(
        v.sets.to_vec() == singles && (v.lhs, v.rhs) == (lhs, rhs),
        format!("violation {v:?}"),
    )?;

    let mut r = rng(9);
    let mut count = 0;
    for n in 0..100 {
        let t = random_repr(&mut r, 2 + (n % 2) as u32, 6, 6)
            .to_table(TABLE_CAP)
            .unwrap();
        ensure(
            ingleton_check(&t).unwrap().passes(),
            format!("representable instance {n} flagged"),
        )?;
        count += 1;
    }
    for name in ["three_element_repr.json", "four_element_repr.json"] {
        ensure(
            ingleton_check(&repr(name).to_table(TABLE_CAP).unwrap())
                .unwrap()
                .passes(),
            format!("{name} flagged"),
        )?;
    }
    Ok(format!(
        "flagged with {lhs} < {rhs}; {count} random representable tables pass"
    ))
}

fn simulation() -> Outcome {
    let r = run_exhaustive(&single_error(), Budget::DEFAULT).map_err(|e| e.to_string())?;
    ensure(r.trials == 64, format!("{} messages", r.trials))?;
    ensure(r.checks == 64 * 3 * (1 + 6), format!("{} checks", r.checks))?;
    ensure(
        r.per_receiver.iter().all(|s| s.failures == 0),
        format!("exhaustive failures {:?}", r.per_receiver),
    )?;

    let code = differential();
    let a = run_random_trials(&code, RANDOM_TRIALS, 1, WeightPolicy::Max, Budget::DEFAULT)
        .map_err(|e| e.to_string())?;
    let b = run_random_trials(&code, RANDOM_TRIALS, 1, WeightPolicy::Max, Budget::DEFAULT)
        .map_err(|e| e.to_string())?;
    ensure(
        a.per_receiver.iter().all(|s| s.failures == 0),
        format!("random failures {:?}", a.per_receiver),
    )?;
    let (ja, jb) = (
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap(),
    );
    ensure(ja == jb, "reports differ between runs")?;
    Ok(format!(
        "exhaustive {} decodes clean; {RANDOM_TRIALS} seeded trials clean and identical",
        r.checks
    ))
}

fn search() -> Outcome {
    let f = PrimeField::binary();
    let mut found = Vec::new();
    for (delta, expected) in [(0, 1), (1, 3)] {
        let p = IndexCodingProblem::with_uniform_delta(
            f,
            2,
            1,
            vec![(0, vec![1]), (1, vec![0])],
            delta,
        )
        .unwrap();
        let (res, t) = timed(|| search_min_length(&p, 4, Budget::default()));
        let res = res.map_err(|e| e.to_string())?.ok_or("no code found")?;
        ensure(
            res.length == expected,
            format!("delta={delta}: c*={}", res.length),
        )?;
        ensure(t < SEARCH_LIMIT, format!("delta={delta}: took {t:?}"))?;
        found.push(format!("delta={delta}: c*={} in {t:.2?}", res.length));
    }
    Ok(found.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("differential example verifies", differential_reproduction),
        (
            "single-error example verifies on both routes",
            single_error_reproduction,
        ),
        ("span test and brute force agree", oracle_equivalence),
        ("code to polymatroid meets A, B, C", forward_correspondence),
        ("polymatroid to code and round trip", reverse_correspondence),
        ("condition C agrees with span test", cross_route_agreement),
        ("polymatroid goldens", polymatroid_goldens),
        (
            "operation, commutation and row-contraction properties",
            representation_invariance_suite,
        ),
        ("Ingleton screen", ingleton),
        ("simulation", simulation),
        ("minimum-length search", search),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", n + 1);
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
