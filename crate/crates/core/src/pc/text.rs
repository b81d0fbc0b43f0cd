//! Line-based presentation format:
//!
//! ```text
//! p 3
//! gens 3
//! comm 2 1 = u 1
//! comm 3 1 = u 2
//! comm 3 2 = u 3
//! pow 1 = u 1 u 2^2
//! ```
//!
//! Missing `comm`/`pow` lines mean the trivial element. The number of central
//! generators is the largest `u` index used, unless a `central r` line says more.

use super::presentation::{pair_index, pairs, PcPresentation};
use crate::error::{Error, Result};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

/// `u a^e` factors as `(a, e)`, 1-based `a`.
fn parse_factors(toks: &[&str], line: usize) -> Result<Vec<(usize, i64)>> {
    if toks == ["1"] {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut it = toks.iter();
    while let Some(&tok) = it.next() {
        if tok != "u" {
            return Err(perr(line, format!("expected `u`, found `{tok}`")));
        }
        let spec = it.next().ok_or_else(|| perr(line, "missing index after `u`"))?;
        let (idx, exp) = match spec.split_once('^') {
            Some((i, e)) => (i, e.parse::<i64>().map_err(|_| perr(line, "bad exponent"))?),
            None => (*spec, 1),
        };
        let idx: usize = idx.parse().map_err(|_| perr(line, "bad central index"))?;
        if idx == 0 {
            return Err(perr(line, "central indices start at 1"));
        }
        out.push((idx, exp));
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<PcPresentation> {
    let mut p: Option<u32> = None;
    let mut d: Option<usize> = None;
    let mut central: Option<usize> = None;
    let mut comms: Vec<(usize, usize, usize, Vec<(usize, i64)>)> = Vec::new();
    let mut pows: Vec<(usize, usize, Vec<(usize, i64)>)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = match line.split_once('=') {
            Some((l, r)) => (l, Some(r)),
            None => (line, None),
        };
        let head: Vec<&str> = lhs.split_whitespace().collect();
        let rhs_toks: Vec<&str> = rhs.map(|r| r.split_whitespace().collect()).unwrap_or_default();
        match (head.first().copied().unwrap_or(""), rhs) {
            ("p", None) if head.len() == 2 => {
                if p.replace(parse_num(head.get(1).copied(), line_no, "prime")?).is_some() {
                    return Err(perr(line_no, "duplicate `p` line"));
                }
            }
            ("gens", None) if head.len() == 2 => {
                if d.replace(parse_num(head.get(1).copied(), line_no, "generator count")?).is_some() {
                    return Err(perr(line_no, "duplicate `gens` line"));
                }
            }
            ("central", None) if head.len() == 2 => {
                central = Some(parse_num(head.get(1).copied(), line_no, "central rank")?);
            }
            ("comm", Some(_)) if head.len() == 3 => {
                let i: usize = parse_num(head.get(1).copied(), line_no, "generator index")?;
                let j: usize = parse_num(head.get(2).copied(), line_no, "generator index")?;
                comms.push((line_no, i, j, parse_factors(&rhs_toks, line_no)?));
            }
            ("pow", Some(_)) if head.len() == 2 => {
                let i: usize = parse_num(head.get(1).copied(), line_no, "generator index")?;
                pows.push((line_no, i, parse_factors(&rhs_toks, line_no)?));
            }
            _ => return Err(perr(line_no, format!("unrecognised line `{line}`"))),
        }
    }
    let p = p.ok_or_else(|| perr(0, "missing `p` line"))?;
    let d = d.ok_or_else(|| perr(0, "missing `gens` line"))?;
    if !super::presentation::is_prime(p) {
        return Err(perr(0, format!("{p} is not prime")));
    }
    let used = comms
        .iter()
        .flat_map(|c| c.3.iter())
        .chain(pows.iter().flat_map(|w| w.2.iter()))
        .map(|&(a, _)| a)
        .max()
        .unwrap_or(0);
    let r = match central {
        Some(r) if r < used => return Err(perr(0, format!("`central {r}` but u{used} is used"))),
        Some(r) => r,
        None => used,
    };
    let vec_of = |factors: &[(usize, i64)]| {
        let mut v = vec![0u32; r];
        for &(a, e) in factors {
            v[a - 1] = ((v[a - 1] as i64 + e).rem_euclid(p as i64)) as u32;
        }
        v
    };
    let mut comm = vec![vec![0u32; r]; d * d.saturating_sub(1) / 2];
    let mut seen = vec![false; comm.len()];
    for (line, i, j, f) in &comms {
        let (i, j) = (*i, *j);
        if i == 0 || j == 0 || i > d || j > d || i == j {
            return Err(perr(*line, format!("no commutator slot ({i},{j}) with {d} generators")));
        }
        let mut v = vec_of(f);
        let k = if i > j {
            pair_index(i - 1, j - 1)
        } else {
            v.iter_mut().for_each(|x| *x = (p - *x) % p);
            pair_index(j - 1, i - 1)
        };
        if std::mem::replace(&mut seen[k], true) {
            return Err(perr(*line, "commutator given twice"));
        }
        comm[k] = v;
    }
    let mut pow = vec![vec![0u32; r]; d];
    let mut seen = vec![false; d];
    for (line, i, f) in &pows {
        if *i == 0 || *i > d {
            return Err(perr(*line, format!("no generator {i}")));
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(perr(*line, "power given twice"));
        }
        pow[i - 1] = vec_of(f);
    }
    PcPresentation::new(p, d, r, comm, pow)
}

fn factors(v: &[u32]) -> String {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(a, &e)| if e == 1 { format!("u {}", a + 1) } else { format!("u {}^{e}", a + 1) })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn emit(pres: &PcPresentation) -> String {
    let mut out = format!("p {}\ngens {}\n", pres.p(), pres.d());
    let used = pres
        .comm_table()
        .iter()
        .chain(pres.pow_table())
        .filter_map(|v| v.iter().rposition(|&x| x != 0))
        .max()
        .map_or(0, |k| k + 1);
    if used < pres.r() {
        out.push_str(&format!("central {}\n", pres.r()));
    }
    for (i, j) in pairs(pres.d()) {
        let v = &pres.comm_table()[pair_index(i, j)];
        if v.iter().any(|&x| x != 0) {
            out.push_str(&format!("comm {} {} = {}\n", i + 1, j + 1, factors(v)));
        }
    }
    for i in 0..pres.d() {
        let v = pres.pow(i);
        if v.iter().any(|&x| x != 0) {
            out.push_str(&format!("pow {} = {}\n", i + 1, factors(v)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "p 3\ngens 3\ncomm 2 1 = u 1\ncomm 3 1 = u 2\ncomm 3 2 = u 3\npow 1 = u 1\n";

    #[test]
    fn parses_sample() {
        let g = parse(SAMPLE).unwrap();
        assert_eq!((g.p(), g.d(), g.r()), (3, 3, 3));
        assert_eq!(g.pow(0), &[1, 0, 0]);
        assert_eq!(emit(&g), SAMPLE);
    }

    #[test]
    fn comments_exponents_and_reversed_pairs() {
        let g = parse("# test\np 5\ngens 2\ncomm 1 2 = u 1^2 # inverse order\npow 2 = u 1^-1\n").unwrap();
        assert_eq!(g.comm(1, 0), vec![3]);
        assert_eq!(g.pow(1), &[4]);
        let back = parse(&emit(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse("p 3\ngens 2\ncomm 3 1 = u 1\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("p 3\ngens 2\nbogus\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("p 4\ngens 1\n").is_err());
    }

    #[test]
    fn central_line_for_unused_generators() {
        let g = PcPresentation::new(3, 2, 2, vec![vec![1, 0]], vec![vec![0, 0]; 2]).unwrap();
        let text = emit(&g);
        assert!(text.contains("central 2"));
        assert_eq!(parse(&text).unwrap(), g);
    }
}
