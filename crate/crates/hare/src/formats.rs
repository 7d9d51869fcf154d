//! Text formats: MQLib Max-Cut, the native Ising format and a QUBO format.
//!
//! All formats are line based with 1-based indices; blank lines and lines
//! starting with `#` are ignored and CRLF line ends are accepted.
//!
//! ```text
//! # max-cut            # ising             # qubo
//! 3 2                  ising 2             qubo 2
//! 1 2 5                h 1 1               q 1 1 -3
//! 2 3 -1               j 1 2 3             q 1 2 2
//! ```

use std::collections::BTreeSet;
use std::fmt::Write;

use hare_core::model::{IsingHamiltonian, QuboInstance};

use crate::error::ParseError;

/// Coupling sign applied to Max-Cut edge weights: `J_uv = −w_uv`, so that
/// `cut(s) = (W − H(s)) / 2` and the maximum cut is `(W − min H) / 2`.
pub const MAXCUT_COUPLING_SIGN: i64 = -1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    Mqlib,
    Ising,
    Qubo,
}

impl Format {
    /// Guesses the format from the first meaningful line.
    pub fn detect(text: &str) -> Format {
        match lines(text).next().and_then(|(_, t)| t.first().copied()) {
            Some("ising") => Format::Ising,
            Some("qubo") => Format::Qubo,
            _ => Format::Mqlib,
        }
    }
}

/// Meaningful lines as (1-based line number, tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

fn count(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::at(line, format!("expected {what}, found {tok:?}")))
}

/// 1-based index in `1..=n`, returned 0-based.
fn index(tok: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    let i = count(tok, line, "an index")?;
    if i == 0 || i > n {
        return Err(ParseError::at(line, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn weight(tok: &str, line: usize) -> Result<i64, ParseError> {
    tok.parse().map_err(|_| {
        if tok.parse::<f64>().is_ok() {
            ParseError::DecimalWeight {
                line,
                token: tok.to_string(),
            }
        } else {
            ParseError::at(line, format!("expected an integer weight, found {tok:?}"))
        }
    })
}

fn arity(tokens: &[&str], expected: usize, line: usize) -> Result<(), ParseError> {
    if tokens.len() != expected {
        return Err(ParseError::at(
            line,
            format!("expected {expected} fields, found {}", tokens.len()),
        ));
    }
    Ok(())
}

fn core(line: usize) -> impl Fn(hare_core::Error) -> ParseError {
    move |source| ParseError::Instance { line, source }
}

/// Parses any supported format into an Ising Hamiltonian. QUBO input yields
/// its 4× scaled Ising form.
pub fn parse(text: &str, format: Format) -> Result<IsingHamiltonian, ParseError> {
    match format {
        Format::Mqlib => parse_maxcut(text),
        Format::Ising => parse_ising(text),
        Format::Qubo => Ok(parse_qubo(text)?.to_ising().map_err(core(0))?.0),
    }
}

/// Max-Cut instance as a coupling-only Hamiltonian (see [`MAXCUT_COUPLING_SIGN`]).
/// Repeated edges are aggregated.
pub fn parse_maxcut(text: &str) -> Result<IsingHamiltonian, ParseError> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| ParseError::at(1, "missing header"))?;
    arity(&header, 2, hl)?;
    let n = count(header[0], hl, "a node count")?;
    let m = count(header[1], hl, "an edge count")?;
    let mut h = IsingHamiltonian::new(n);
    for k in 0..m {
        let (line, t) = it
            .next()
            .ok_or_else(|| ParseError::at(hl, format!("header promises {m} edges, found {k}")))?;
        arity(&t, 3, line)?;
        let u = index(t[0], n, line)?;
        let v = index(t[1], n, line)?;
        let w = weight(t[2], line)?;
        if u == v {
            return Err(ParseError::at(line, format!("self-loop on node {}", u + 1)));
        }
        let j = w.checked_mul(MAXCUT_COUPLING_SIGN).ok_or_else(|| ParseError::at(line, "weight overflow"))?;
        h.add_coupling(u, v, j).map_err(core(line))?;
    }
    if let Some((line, _)) = it.next() {
        return Err(ParseError::at(line, "unexpected content after the last edge"));
    }
    Ok(h)
}

/// Header `<keyword> n`.
fn header<'a>(
    it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
) -> Result<usize, ParseError> {
    let (line, t) = it
        .next()
        .ok_or_else(|| ParseError::at(1, format!("missing \"{keyword} n\" header")))?;
    if t.first() != Some(&keyword) {
        return Err(ParseError::at(line, format!("expected \"{keyword} n\" header")));
    }
    arity(&t, 2, line)?;
    count(t[1], line, "a spin count")
}

pub fn parse_ising(text: &str) -> Result<IsingHamiltonian, ParseError> {
    let mut it = lines(text);
    let n = header(&mut it, "ising")?;
    let mut h = IsingHamiltonian::new(n);
    let mut seen_h = BTreeSet::new();
    let mut seen_j = BTreeSet::new();
    for (line, t) in it {
        match t[0] {
            "h" => {
                arity(&t, 3, line)?;
                let i = index(t[1], n, line)?;
                if !seen_h.insert(i) {
                    return Err(ParseError::at(line, format!("duplicate field on spin {}", i + 1)));
                }
                h.add_field(i, weight(t[2], line)?).map_err(core(line))?;
            }
            "j" => {
                arity(&t, 4, line)?;
                let i = index(t[1], n, line)?;
                let k = index(t[2], n, line)?;
                if !seen_j.insert((i.min(k), i.max(k))) {
                    return Err(ParseError::at(
                        line,
                        format!("duplicate coupling between spins {} and {}", i + 1, k + 1),
                    ));
                }
                h.add_coupling(i, k, weight(t[3], line)?).map_err(core(line))?;
            }
            other => return Err(ParseError::at(line, format!("unknown record {other:?}"))),
        }
    }
    Ok(h)
}

pub fn write_ising(h: &IsingHamiltonian) -> String {
    let mut out = format!("ising {}\n", h.num_spins());
    for (i, v) in h.fields() {
        writeln!(out, "h {} {v}", i + 1).unwrap();
    }
    for (i, k, v) in h.couplings() {
        writeln!(out, "j {} {} {v}", i + 1, k + 1).unwrap();
    }
    out
}

pub fn parse_qubo(text: &str) -> Result<QuboInstance, ParseError> {
    let mut it = lines(text);
    let n = header(&mut it, "qubo")?;
    let mut q = QuboInstance::new(n);
    let mut seen = BTreeSet::new();
    for (line, t) in it {
        if t[0] != "q" {
            return Err(ParseError::at(line, format!("unknown record {:?}", t[0])));
        }
        arity(&t, 4, line)?;
        let i = index(t[1], n, line)?;
        let j = index(t[2], n, line)?;
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(ParseError::at(line, format!("duplicate term ({}, {})", i + 1, j + 1)));
        }
        q.add(i, j, weight(t[3], line)?).map_err(core(line))?;
    }
    Ok(q)
}

pub fn write_qubo(q: &QuboInstance) -> String {
    let mut out = format!("qubo {}\n", q.num_vars());
    for (i, j, v) in q.terms() {
        writeln!(out, "q {} {} {v}", i + 1, j + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hare_core::oracle;

    #[test]
    fn maxcut_examples() {
        let h = parse_maxcut("2 1\n1 2 5").unwrap();
        assert_eq!(h.coupling(0, 1), -5);
        let h = parse_maxcut("3 0\n").unwrap();
        assert_eq!((h.num_spins(), h.num_couplings()), (3, 0));
    }

    #[test]
    fn maxcut_sign_on_triangle() {
        let h = parse_maxcut("3 3\n1 2 1\n1 3 1\n2 3 1\n").unwrap();
        let w = 3;
        let min_h = oracle::ground_energy(&h).unwrap();
        assert_eq!((w - min_h) / 2, 2);
    }

    #[test]
    fn maxcut_errors() {
        assert!(matches!(parse_maxcut("2"), Err(ParseError::Malformed { line: 1, .. })));
        assert!(matches!(parse_maxcut("2 1\n1 3 1"), Err(ParseError::Malformed { line: 2, .. })));
        assert_eq!(
            parse_maxcut("2 1\n1 2 0.5"),
            Err(ParseError::DecimalWeight {
                line: 2,
                token: "0.5".into()
            })
        );
        assert!(parse_maxcut("2 1\n1 2 1\n2 1 1").is_err());
        assert!(parse_maxcut("2 2\n1 2 1").is_err());
        assert!(parse_maxcut("2 1\n1 2 x").is_err());
    }

    #[test]
    fn maxcut_duplicates_aggregate() {
        let h = parse_maxcut("2 2\r\n# note\r\n1 2 1\r\n2 1 4\r\n").unwrap();
        assert_eq!(h.coupling(0, 1), -5);
    }

    #[test]
    fn ising_running_example() {
        let h = parse_ising("ising 2\nh 1 1\nj 1 2 3").unwrap();
        assert_eq!((h.field(0), h.coupling(0, 1)), (1, 3));
        assert_eq!(write_ising(&h), "ising 2\nh 1 1\nj 1 2 3\n");
        assert!(parse_ising("ising 3\n").unwrap().is_zero());
    }

    #[test]
    fn ising_rejections() {
        assert!(parse_ising("ising 2\nh 1 1\nh 1 2").is_err());
        assert!(parse_ising("ising 2\nj 1 2 1\nj 2 1 1").is_err());
        assert!(parse_ising("ising 2\nj 1 1 1").is_err());
        assert!(parse_ising("ising 2\nh 1 1 extra").is_err());
        assert!(parse_ising("ising 2\nx 1 1").is_err());
        assert!(parse_ising("qubo 2\n").is_err());
    }

    #[test]
    fn qubo_round_trip_and_detection() {
        let text = "qubo 2\nq 1 1 -3\nq 1 2 2\n";
        let q = parse_qubo(text).unwrap();
        assert_eq!(write_qubo(&q), text);
        assert!(parse_qubo("qubo 2\nq 1 2 1\nq 2 1 1").is_err());
        assert_eq!(Format::detect(text), Format::Qubo);
        assert_eq!(Format::detect("# c\nising 1\n"), Format::Ising);
        assert_eq!(Format::detect("3 0"), Format::Mqlib);
    }
}
