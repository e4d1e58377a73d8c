//! File formats. Every index in a file is 1-based; the library is 0-based.
//!
//! - Matrix text: a `rows cols q` header line, then `rows` lines of `cols`
//!   space-separated entries in `[0, q)`. Blank lines and lines starting with
//!   `#` are ignored.
//! - Problem JSON: `{"q", "n", "m", "receivers": [{"demand", "side_info", "delta"}]}`.
//! - Polymatroid JSON: `{"kind": "table", "ground", "ranks": {"<bitmask>": r}}`
//!   where bit `i` stands for element `i + 1`, or
//!   `{"kind": "repr", "q", "matrices": ["<matrix text>", ...]}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indexcode::{IndexCodingProblem, Receiver};
use crate::linalg::{FieldMatrix, PrimeField};
use crate::polymatroid::{RankTable, ReprPolymatroid};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses the matrix text format, with line numbers in diagnostics.
pub fn parse_matrix(text: &str) -> Result<FieldMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err("empty matrix file"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols, q] = dims.as_slice() else {
        return Err(parse_err(format!(
            "line {hline}: header must be `rows cols q`"
        )));
    };
    let num = |s: &str, what: &str| {
        s.parse::<usize>().map_err(|_| {
            parse_err(format!(
                "line {hline}: {what} `{s}` is not a non-negative integer"
            ))
        })
    };
    let (rows, cols, q) = (num(rows, "rows")?, num(cols, "cols")?, num(q, "q")?);
    let field = PrimeField::new(q as u32).map_err(|e| parse_err(format!("line {hline}: {e}")))?;

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (lno, line) in lines {
        seen += 1;
        if seen > rows {
            return Err(parse_err(format!("line {lno}: more than {rows} rows")));
        }
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != cols {
            return Err(parse_err(format!(
                "line {lno}: expected {cols} entries, found {}",
                entries.len()
            )));
        }
        for (j, e) in entries.iter().enumerate() {
            let v: u32 = e.parse().map_err(|_| {
                parse_err(format!(
                    "line {lno}, entry {}: `{e}` is not an integer",
                    j + 1
                ))
            })?;
            if !field.contains(v) {
                return Err(parse_err(format!(
                    "line {lno}, entry {}: {v} is not in GF({q})",
                    j + 1
                )));
            }
            data.push(v);
        }
    }
    // rows of a zero-column matrix are empty lines, which are skipped
    if cols > 0 && seen != rows {
        return Err(parse_err(format!("expected {rows} rows, found {seen}")));
    }
    FieldMatrix::from_vec(field, rows, cols, if cols == 0 { Vec::new() } else { data })
}

/// Byte-stable writer for the matrix text format.
pub fn format_matrix(m: &FieldMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.field().order());
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(u8::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReceiverFile {
    demand: usize,
    side_info: Vec<usize>,
    delta: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    q: u32,
    n: usize,
    m: usize,
    receivers: Vec<ReceiverFile>,
}

pub fn parse_problem(text: &str) -> Result<IndexCodingProblem> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| parse_err(format!("problem: {e}")))?;
    let field = PrimeField::new(file.q).map_err(|e| parse_err(format!("q: {e}")))?;
    let mut receivers = Vec::with_capacity(file.receivers.len());
    for (i, r) in file.receivers.iter().enumerate() {
        let in_range = |v: usize| (1..=file.m).contains(&v);
        if !in_range(r.demand) {
            return Err(parse_err(format!(
                "receivers[{i}].demand: {} is not in 1..={}",
                r.demand, file.m
            )));
        }
        if let Some((j, v)) = r.side_info.iter().enumerate().find(|(_, &v)| !in_range(v)) {
            return Err(parse_err(format!(
                "receivers[{i}].side_info[{j}]: {v} is not in 1..={}",
                file.m
            )));
        }
        receivers.push(Receiver::new(
            r.demand - 1,
            r.side_info.iter().map(|v| v - 1).collect(),
            r.delta,
        ));
    }
    IndexCodingProblem::new(field, file.m, file.n, receivers)
        .map_err(|e| parse_err(format!("problem: {e}")))
}

pub fn format_problem(p: &IndexCodingProblem) -> String {
    let file = ProblemFile {
        q: p.field().order() as u32,
        n: p.block_len(),
        m: p.messages(),
        receivers: p
            .receivers()
            .iter()
            .map(|r| ReceiverFile {
                demand: r.demand + 1,
                side_info: r.side_info.one_based(),
                delta: r.delta,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable") + "\n"
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    kind: String,
    ground: usize,
    ranks: BTreeMap<u64, u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReprFile {
    kind: String,
    q: u32,
    matrices: Vec<String>,
}

/// Either polymatroid form, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polymatroid {
    Table(RankTable),
    Repr(ReprPolymatroid),
}

impl Polymatroid {
    pub fn ground_size(&self) -> usize {
        match self {
            Polymatroid::Table(t) => t.ground_size(),
            Polymatroid::Repr(r) => r.ground_size(),
        }
    }

    /// The table form, materializing representations up to `cap` elements.
    pub fn to_table(&self, cap: usize) -> Result<RankTable> {
        match self {
            Polymatroid::Table(t) => Ok(t.clone()),
            Polymatroid::Repr(r) => r.to_table(cap),
        }
    }
}

pub fn parse_polymatroid(text: &str) -> Result<Polymatroid> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("polymatroid: {e}")))?;
    let invalid = |e: serde_json::Error| parse_err(format!("polymatroid: {e}"));
    match value.get("kind").and_then(serde_json::Value::as_str) {
        Some("table") => {
            let TableFile { ground, ranks, .. } = serde_json::from_value(value).map_err(invalid)?;
            RankTable::from_entries(ground, ranks)
                .map(Polymatroid::Table)
                .map_err(|e| match e {
                    Error::CapExceeded { .. } => e,
                    e => parse_err(format!("ranks: {e}")),
                })
        }
        Some("repr") => {
            let ReprFile { q, matrices, .. } = serde_json::from_value(value).map_err(invalid)?;
            let field = PrimeField::new(q).map_err(|e| parse_err(format!("q: {e}")))?;
            let blocks = matrices
                .iter()
                .enumerate()
                .map(|(i, t)| parse_matrix(t).map_err(|e| parse_err(format!("matrices[{i}]: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            ReprPolymatroid::from_matrices(field, blocks)
                .map(Polymatroid::Repr)
                .map_err(|e| parse_err(format!("matrices: {e}")))
        }
        _ => Err(parse_err("kind: expected \"table\" or \"repr\"")),
    }
}

pub fn format_polymatroid(p: &Polymatroid) -> String {
    let text = match p {
        Polymatroid::Table(t) => serde_json::to_string_pretty(&TableFile {
            kind: "table".into(),
            ground: t.ground_size(),
            ranks: t
                .ranks()
                .iter()
                .enumerate()
                .map(|(m, &r)| (m as u64, r))
                .collect(),
        }),
        Polymatroid::Repr(r) => serde_json::to_string_pretty(&ReprFile {
            kind: "repr".into(),
            q: r.field().order() as u32,
            matrices: r.matrices().iter().map(format_matrix).collect(),
        }),
    };
    text.expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let text = "2 3 3\n0 1 2\n2 2 0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.get(1, 0), 2);
        assert_eq!(format_matrix(&m), text);
        let padded = "# comment\n\n 2 3 3 \n0 1 2\n\n2 2 0";
        assert_eq!(parse_matrix(padded).unwrap(), m);
    }

    #[test]
    fn zero_column_matrix() {
        let m = FieldMatrix::zeros(PrimeField::binary(), 4, 0);
        let text = format_matrix(&m);
        assert_eq!(text, "4 0 2\n\n\n\n\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn matrix_diagnostics() {
        let cases = [
            ("", "empty"),
            ("2 2\n", "line 1"),
            ("1 2 4\n0 1\n", "line 1"),
            ("1 2 2\n0\n", "line 2: expected 2 entries"),
            ("1 2 2\n0 2\n", "line 2, entry 2"),
            ("1 2 2\n0 x\n", "line 2, entry 2"),
            ("2 1 2\n1\n", "expected 2 rows"),
            ("1 1 2\n1\n0\n", "line 3"),
        ];
        for (text, needle) in cases {
            let Err(Error::Parse(msg)) = parse_matrix(text) else {
                panic!("{text:?} parsed")
            };
            assert!(msg.contains(needle), "{text:?}: {msg}");
        }
    }

    #[test]
    fn problem_round_trip_and_diagnostics() {
        let text = r#"{"q":2,"n":1,"m":2,"receivers":[{"demand":1,"side_info":[2],"delta":1}]}"#;
        let p = parse_problem(text).unwrap();
        assert_eq!(p.receivers()[0].demand, 0);
        assert_eq!(p.receivers()[0].side_info.as_slice(), &[1]);
        assert_eq!(parse_problem(&format_problem(&p)).unwrap(), p);

        let bad = r#"{"q":2,"n":1,"m":2,"receivers":[{"demand":3,"side_info":[],"delta":0}]}"#;
        let Err(Error::Parse(msg)) = parse_problem(bad) else {
            panic!()
        };
        assert!(msg.starts_with("receivers[0].demand"), "{msg}");
        let bad = r#"{"q":2,"n":1,"m":2,"receivers":[{"demand":1,"side_info":[2,0],"delta":0}]}"#;
        let Err(Error::Parse(msg)) = parse_problem(bad) else {
            panic!()
        };
        assert!(msg.starts_with("receivers[0].side_info[1]"), "{msg}");
        let Err(Error::Parse(msg)) = parse_problem("{\"q\": 2,") else {
            panic!()
        };
        assert!(msg.contains("line 1"), "{msg}");
        assert!(parse_problem(r#"{"q":4,"n":1,"m":1,"receivers":[]}"#).is_err());
    }

    #[test]
    fn polymatroid_round_trips() {
        let text = r#"{"kind":"table","ground":2,"ranks":{"0":0,"1":1,"2":1,"3":2}}"#;
        let p = parse_polymatroid(text).unwrap();
        assert_eq!(p.to_table(20).unwrap().ranks(), &[0, 1, 1, 2]);
        assert_eq!(parse_polymatroid(&format_polymatroid(&p)).unwrap(), p);

        let text = r#"{"kind":"repr","q":2,"matrices":["2 1 2\n1\n0\n","2 1 2\n1\n1\n"]}"#;
        let p = parse_polymatroid(text).unwrap();
        assert_eq!(p.ground_size(), 2);
        assert_eq!(p.to_table(20).unwrap().ranks(), &[0, 1, 1, 2]);
        assert_eq!(parse_polymatroid(&format_polymatroid(&p)).unwrap(), p);

        let missing = r#"{"kind":"table","ground":2,"ranks":{"0":0,"1":1,"2":1}}"#;
        assert!(matches!(parse_polymatroid(missing), Err(Error::Parse(_))));
        let ragged = r#"{"kind":"repr","q":2,"matrices":["2 1 2\n1\n0\n","1 1 2\n1\n"]}"#;
        assert!(matches!(parse_polymatroid(ragged), Err(Error::Parse(_))));
        assert!(parse_polymatroid(r#"{"kind":"graph"}"#).is_err());
    }
}
