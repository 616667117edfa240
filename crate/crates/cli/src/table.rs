//! `table`: one CSV row per Brieskorn tuple.

use std::io::Write;
use std::ops::RangeInclusive;

use singeta_core::eta::eta_brieskorn_fast_par;
use singeta_core::milnor::{brieskorn_basis, brieskorn_weights, check_exponents};
use singeta_core::poly::rational_to_string;
use singeta_core::spectral::{signature_of_b, variation_structure};
use singeta_core::Error;

use crate::report::round15;

/// Parses `2..6,2..6` (inclusive ends) or single values such as `3`.
pub fn parse_ranges(text: &str) -> Result<Vec<RangeInclusive<u32>>, String> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let (lo, hi) = match part.split_once("..") {
                Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
                None => (part, part),
            };
            let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range bound in {part:?}"))?;
            let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range bound in {part:?}"))?;
            if lo > hi {
                return Err(format!("empty range {part:?}"));
            }
            Ok(lo..=hi)
        })
        .collect()
}

/// All tuples in lexicographic order.
pub fn tuples(ranges: &[RangeInclusive<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|t| {
                r.clone().map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn header(k: usize) -> String {
    let mut cols: Vec<String> = (1..=k).map(|i| format!("a_{i}")).collect();
    cols.extend(["mu", "signature", "r0", "r1", "eta_float"].map(String::from));
    cols.join(",")
}

pub fn row(a: &[u32], threads: usize) -> Result<String, Error> {
    check_exponents(a)?;
    let basis = brieskorn_basis(a)?;
    let n = a.len() - 1;
    let vs = variation_structure(&basis, &brieskorn_weights(a), n);
    let eta = eta_brieskorn_fast_par(a, threads)?;
    let mut cols: Vec<String> = a.iter().map(u32::to_string).collect();
    cols.push(basis.milnor_number.to_string());
    cols.push(signature_of_b(&vs).to_string());
    cols.push(rational_to_string(&eta.r0));
    cols.push(rational_to_string(&eta.r1));
    cols.push(format!("{}", round15(eta.to_float())));
    Ok(cols.join(","))
}

pub fn write_table(
    ranges: &[RangeInclusive<u32>],
    threads: usize,
    out: &mut dyn Write,
) -> Result<usize, Box<dyn std::error::Error>> {
    writeln!(out, "{}", header(ranges.len()))?;
    let rows = tuples(ranges);
    for a in &rows {
        writeln!(out, "{}", row(a, threads)?)?;
    }
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_tuples() {
        let r = parse_ranges("2..4,2..4").unwrap();
        let t = tuples(&r);
        assert_eq!(t.len(), 9);
        assert_eq!(t[0], vec![2, 2]);
        assert_eq!(t[1], vec![2, 3]);
        assert_eq!(t[8], vec![4, 4]);
        assert!(parse_ranges("5..2").is_err());
        assert_eq!(parse_ranges("3").unwrap(), vec![3..=3]);
    }

    #[test]
    fn table_rows() {
        let mut buf = Vec::new();
        let n = write_table(&parse_ranges("2..4,2..4").unwrap(), 1, &mut buf).unwrap();
        assert_eq!(n, 9);
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a_1,a_2,mu,signature,r0,r1,eta_float");
        assert_eq!(lines.len(), 10);
        assert!(lines.contains(&"3,2,2,0,4/3,0/1,1.33333333333333"));
    }

    #[test]
    fn even_n_rows_vanish() {
        let mut buf = Vec::new();
        write_table(&parse_ranges("2..4,2..3,2..3").unwrap(), 1, &mut buf).unwrap();
        for line in String::from_utf8(buf).unwrap().lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(&cols[5..7], &["0/1", "0/1"], "{line}");
        }
    }
}
