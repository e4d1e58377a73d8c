#![allow(dead_code)]

use std::path::PathBuf;

use polyindex::indexcode::{IndexCode, IndexCodingProblem, Receiver};
use polyindex::io::{parse_matrix, parse_polymatroid, parse_problem, Polymatroid};
use polyindex::linalg::{FieldMatrix, IndexSet, PrimeField};
use polyindex::polymatroid::ReprPolymatroid;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn problem(name: &str) -> IndexCodingProblem {
    parse_problem(&read_fixture(name)).unwrap()
}

pub fn code(problem_name: &str, code_name: &str) -> IndexCode {
    IndexCode::new(
        problem(problem_name),
        parse_matrix(&read_fixture(code_name)).unwrap(),
    )
    .unwrap()
}

pub fn differential() -> IndexCode {
    code("differential_problem.json", "differential_code.txt")
}

pub fn single_error() -> IndexCode {
    code("single_error_problem.json", "single_error_code.txt")
}

pub fn dpm(name: &str) -> Polymatroid {
    parse_polymatroid(&read_fixture(name)).unwrap()
}

pub fn repr(name: &str) -> ReprPolymatroid {
    match dpm(name) {
        Polymatroid::Repr(r) => r,
        Polymatroid::Table(_) => panic!("{name} is a table"),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, f: PrimeField, rows: usize, cols: usize) -> FieldMatrix {
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(0..f.order() as u32))
        .collect();
    FieldMatrix::from_vec(f, rows, cols, data).unwrap()
}

pub fn random_invertible(rng: &mut impl Rng, f: PrimeField, n: usize) -> FieldMatrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Bounds for random problems and codes.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub q: u32,
    pub max_messages: usize,
    pub max_block: usize,
    pub max_len: usize,
    pub max_delta: usize,
}

impl Shape {
    pub const SMALL: Shape = Shape {
        q: 2,
        max_messages: 3,
        max_block: 2,
        max_len: 6,
        max_delta: 1,
    };

    pub fn over(q: u32) -> Shape {
        Shape { q, ..Shape::SMALL }
    }
}

pub fn random_problem(rng: &mut impl Rng, shape: Shape) -> IndexCodingProblem {
    let f = PrimeField::new(shape.q).unwrap();
    let m = rng.gen_range(1..=shape.max_messages);
    let n = rng.gen_range(1..=shape.max_block);
    let count = rng.gen_range(1..=m);
    let mut demands: Vec<usize> = (0..m).collect();
    demands.shuffle(rng);
    let receivers = demands[..count]
        .iter()
        .map(|&d| {
            let side = (0..m).filter(|&k| k != d && rng.gen_bool(0.6)).collect();
            Receiver::new(d, side, rng.gen_range(0..=shape.max_delta))
        })
        .collect();
    IndexCodingProblem::new(f, m, n, receivers).unwrap()
}

pub fn random_code(rng: &mut impl Rng, shape: Shape) -> IndexCode {
    let p = random_problem(rng, shape);
    let c = rng.gen_range(0..=shape.max_len);
    let l = random_matrix(rng, p.field(), p.message_len(), c);
    IndexCode::new(p, l).unwrap()
}

/// Half the time, a code that repeats every message symbol `2 delta + 1`
/// times (valid by construction) plus random columns, within `max_len`.
pub fn random_code_mixed(rng: &mut impl Rng, shape: Shape) -> IndexCode {
    let p = random_problem(rng, shape);
    let f = p.field();
    let mn = p.message_len();
    let reps = 2 * shape.max_delta + 1;
    if rng.gen_bool(0.5) || mn * reps > shape.max_len {
        let c = rng.gen_range(0..=shape.max_len);
        let l = random_matrix(rng, f, mn, c);
        return IndexCode::new(p, l).unwrap();
    }
    let extra = rng.gen_range(0..=shape.max_len - mn * reps);
    let mut cols: Vec<Vec<u8>> = Vec::new();
    for _ in 0..reps {
        for row in 0..mn {
            let mut v = vec![0u8; mn];
            v[row] = 1;
            cols.push(v);
        }
    }
    for _ in 0..extra {
        cols.push((0..mn).map(|_| rng.gen_range(0..f.order())).collect());
    }
    cols.shuffle(rng);
    let l = FieldMatrix::from_columns(f, mn, &cols).unwrap();
    IndexCode::new(p, l).unwrap()
}

pub fn random_repr(
    rng: &mut impl Rng,
    q: u32,
    max_elements: usize,
    max_dim: usize,
) -> ReprPolymatroid {
    let f = PrimeField::new(q).unwrap();
    let m = rng.gen_range(1..=max_elements);
    let d = rng.gen_range(1..=max_dim);
    let matrices = (0..m)
        .map(|_| {
            let cols = rng.gen_range(0..=3);
            random_matrix(rng, f, d, cols)
        })
        .collect();
    ReprPolymatroid::new(f, d, matrices).unwrap()
}

pub fn with_zero_column(code: &IndexCode, j: usize) -> IndexCode {
    let l = code.matrix();
    let cols: Vec<Vec<u8>> = l
        .columns()
        .enumerate()
        .map(|(k, col)| if k == j { vec![0; l.rows()] } else { col })
        .collect();
    IndexCode::new(
        code.problem().clone(),
        FieldMatrix::from_columns(l.field(), l.rows(), &cols).unwrap(),
    )
    .unwrap()
}

/// One of the rank-preserving operations on the concatenated matrix.
pub fn random_operation(r: &mut impl Rng, a: &FieldMatrix) -> FieldMatrix {
    let f = a.field();
    let q = f.order();
    let rows = a.rows();
    loop {
        match r.gen_range(0..5) {
            0 => {
                return a
                    .swap_rows(r.gen_range(0..rows), r.gen_range(0..rows))
                    .unwrap()
            }
            1 => {
                return a
                    .scale_row(r.gen_range(0..rows), r.gen_range(1..q))
                    .unwrap()
            }
            2 if rows > 1 => {
                let t = r.gen_range(0..rows);
                let s = (t + r.gen_range(1..rows)) % rows;
                return a.add_row(t, s).unwrap();
            }
            3 if rows > 1 => {
                if let Some(z) = (0..rows).find(|&i| a.row(i).iter().all(|&x| x == 0)) {
                    return a.delete_zero_row(z).unwrap();
                }
            }
            4 if a.cols() > 0 => {
                return a
                    .scale_col(r.gen_range(0..a.cols()), r.gen_range(1..q))
                    .unwrap()
            }
            _ => {}
        }
    }
}

pub fn random_disjoint(r: &mut impl Rng, ground: usize) -> (IndexSet, IndexSet) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for e in 0..ground {
        match r.gen_range(0..3) {
            0 => a.push(e),
            1 => b.push(e),
            _ => {}
        }
    }
    (
        IndexSet::new(a, ground).unwrap(),
        IndexSet::new(b, ground).unwrap(),
    )
}
