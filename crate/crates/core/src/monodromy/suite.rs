use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::homology::ParameterSystem;
use crate::report::{Check, VerificationReport};

use super::{
    invariant_block_report, orthogonality_check, reflection_equiv, verify_basis, verify_degenerate,
    verify_determinants, verify_eigen, verify_h_conjugation, verify_words, CircuitPair, MonodromyError,
    Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Eigen,
    Blocks,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identities" => Ok(Suite::Identities),
            "eigen" => Ok(Suite::Eigen),
            "blocks" => Ok(Suite::Blocks),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}`")),
        }
    }
}

/// Runs the exact checks of one suite on a parameter system.
pub fn run_suite(ps: &ParameterSystem, suite: Suite, seed: u64) -> Result<VerificationReport, MonodromyError> {
    let rep = Representation::new(ps)?;
    let mut report = VerificationReport::with_header(format!("seed = {seed}"));
    if matches!(suite, Suite::Identities | Suite::All) {
        report.extend(verify_basis(&rep));
        report.extend(verify_h_conjugation(&rep, seed));
        report.extend(verify_determinants(&rep));
        report.extend(verify_degenerate(&rep));
        report.extend(verify_words(&rep, seed));
    }
    if matches!(suite, Suite::Eigen | Suite::All) {
        for g in rep.generators().collect::<Vec<_>>() {
            report.extend(verify_eigen(&rep, g));
            match reflection_equiv(&rep, g) {
                Ok(r) => report.extend(r),
                Err(MonodromyError::HypothesisViolated { .. }) => {
                    report.push(Check::pass(format!("reflection {g}")).with_note("skipped: lambda_p lambda_q = 1"))
                }
                Err(e) => return Err(e),
            }
            report.extend(orthogonality_check(&rep, g));
        }
    }
    if matches!(suite, Suite::Blocks | Suite::All) {
        report.extend(invariant_block_report(&rep));
    }
    Ok(report)
}

/// JSON form of one circuit pair; entries are printed rational functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatricesJson {
    pub pair: [usize; 2],
    #[serde(rename = "M")]
    pub m: Vec<Vec<String>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<String>>,
}

impl From<&CircuitPair> for MatricesJson {
    fn from(c: &CircuitPair) -> Self {
        let strings = |m: &crate::exactfield::RatMatrix| {
            m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
        };
        MatricesJson {
            pair: [c.generator.p, c.generator.q],
            m: strings(&c.m),
            n: strings(&c.n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_ratfunc;
    use crate::monodromy::{section7_system, Generator};

    #[test]
    fn all_suites_pass_on_section7() {
        let r = run_suite(&section7_system(), Suite::All, 7).unwrap();
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.header.as_deref(), Some("seed = 7"));
    }

    #[test]
    fn matrices_json_round_trip() {
        let rep = Representation::new(&section7_system()).unwrap();
        let pair = rep.pair(Generator { p: 0, q: 2 });
        let js = serde_json::to_string(&MatricesJson::from(pair)).unwrap();
        let back: MatricesJson = serde_json::from_str(&js).unwrap();
        for (i, row) in back.m.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                assert_eq!(&parse_ratfunc(cell).unwrap(), pair.m.get(i, j));
            }
        }
    }
}
