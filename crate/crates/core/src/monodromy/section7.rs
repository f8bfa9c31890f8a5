//! The m = 3 worked example: α_0, α_1 integral, λ_2 = s, λ_3 = s^{-1},
//! λ_4 = u, λ_5 = u^{-1}, ι = identity, together with its printed table of
//! circuit matrices.

use crate::exactfield::{parse_ratfunc, parse_monomial, RatMatrix};
use crate::homology::{validate_params, AlphaEntry, ParameterSystem};
use crate::report::{Check, VerificationReport};

use super::{Generator, Representation};

pub fn section7_system() -> ParameterSystem {
    let sym = |s: &str| AlphaEntry::symbolic(parse_monomial(s).expect("literal"));
    validate_params(
        3,
        vec![AlphaEntry::Integral(0), AlphaEntry::Integral(0), sym("s"), sym("s^-1"), sym("u"), sym("u^-1")],
        Some(vec![0, 1, 2, 3, 4, 5]),
    )
    .expect("valid literal system")
}

type Table = [[&'static str; 4]; 4];

const I4: Table = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]];

/// (p, q, M, N) with L2, L3, L4 standing for λ_2, λ_3, λ_4.
const GOLDEN: [(usize, usize, Table, Table); 9] = [
    (0, 1, I4, I4),
    (
        0,
        2,
        [["L2", "0", "1-L2", "0"], I4[1], I4[2], I4[3]],
        [["1/L2", "0", "(L2-1)/L2", "0"], I4[1], I4[2], I4[3]],
    ),
    (
        0,
        3,
        [["L3", "0", "0", "1-L3"], I4[1], I4[2], I4[3]],
        [["1/L3", "0", "(L2-1)*(L3-1)/(L2*L3)", "(L3-1)/L3"], I4[1], I4[2], I4[3]],
    ),
    (
        1,
        2,
        [I4[0], ["0", "L2", "1-L2", "0"], I4[2], I4[3]],
        [I4[0], ["0", "1/L2", "(L2-1)/L2", "0"], I4[2], I4[3]],
    ),
    (
        1,
        3,
        [I4[0], ["0", "L3", "0", "1-L3"], I4[2], I4[3]],
        [I4[0], ["0", "1/L3", "(L2-1)*(L3-1)/(L2*L3)", "(L3-1)/L3"], I4[2], I4[3]],
    ),
    (
        1,
        4,
        [I4[0], ["0", "L4", "0", "0"], I4[2], I4[3]],
        [I4[0], ["0", "1/L4", "(1-L2)/(L2*L4)", "(1-L3)/(L3*L4)"], I4[2], I4[3]],
    ),
    (
        2,
        3,
        [I4[0], I4[1], ["0", "0", "2-L2", "L2-1"], ["0", "0", "1-L2", "L2"]],
        [I4[0], I4[1], ["0", "0", "(2*L2-1)/L2", "1-L2"], ["0", "0", "(L2-1)/L2^2", "1/L2"]],
    ),
    (
        2,
        4,
        [["1", "0", "L2-1", "0"], ["0", "1", "L2-1", "0"], ["0", "0", "L2*L4", "0"], ["0", "0", "L4*(L2-1)", "1"]],
        [I4[0], I4[1], ["0", "0", "1/(L2*L4)", "(1-L3)/(L3*L4)"], I4[3]],
    ),
    (
        3,
        4,
        [["1", "0", "0", "L3-1"], ["0", "1", "0", "L3-1"], ["0", "0", "1", "L3-1"], ["0", "0", "0", "L3*L4"]],
        [I4[0], I4[1], I4[2], ["0", "0", "(1-L2)/L2", "1/(L3*L4)"]],
    ),
];

fn build(t: &Table) -> RatMatrix {
    let rows = t
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| {
                    let text = cell.replace("L2", "(s)").replace("L3", "(s^-1)").replace("L4", "(u)");
                    parse_ratfunc(&text).expect("golden literal")
                })
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).expect("4x4")
}

/// The printed table as exact matrices: (generator, M, N).
pub fn section7_golden() -> Vec<(Generator, RatMatrix, RatMatrix)> {
    GOLDEN
        .iter()
        .map(|(p, q, m, n)| (Generator { p: *p, q: *q }, build(m), build(n)))
        .collect()
}

/// Compares all 18 computed matrices with the table, entry by entry.
pub fn section7_report(rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::new();
    for (g, m, n) in section7_golden() {
        let pair = rep.pair(g);
        for (label, got, want) in [("M", &pair.m, &m), ("N", &pair.n, &n)] {
            let mut bad = Vec::new();
            for i in 0..4 {
                for j in 0..4 {
                    if got.get(i, j) != want.get(i, j) {
                        bad.push(format!("[{i}][{j}]: computed {}, table {}", got.get(i, j), want.get(i, j)));
                    }
                }
            }
            report.push(Check::from_bool(format!("{label}{g} matches table"), bad.is_empty(), || bad.join("; ")));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_reproduced() {
        let rep = Representation::new(&section7_system()).unwrap();
        let report = section7_report(&rep);
        let fails: Vec<_> = report.failures().collect();
        assert!(fails.is_empty(), "{fails:#?}");
        assert_eq!(report.checks.len(), 18);
    }
}
