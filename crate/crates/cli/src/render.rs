use clap::ValueEnum;
use fdmono_core::{Generator, RatMatrix, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn pair_text(g: Generator, m: &RatMatrix, n: &RatMatrix) -> String {
    format!("M{g} =\n{m}\nN{g} =\n{n}\n")
}

/// One line per check, then a summary line.
pub fn render_report(out: &mut String, report: &VerificationReport, format: Format) {
    if format == Format::Json {
        out.push_str(&serde_json::to_string_pretty(report).expect("serializable"));
        out.push('\n');
        return;
    }
    if let Some(h) = &report.header {
        out.push_str(&format!("# {h}\n"));
    }
    for c in &report.checks {
        out.push_str(if c.pass { "PASS " } else { "FAIL " });
        out.push_str(&c.name);
        if let Some(r) = c.residual {
            out.push_str(&format!(" (residual {r:.3e})"));
        }
        if let Some(w) = &c.witness {
            out.push_str(&format!(": {w}"));
        }
        out.push('\n');
    }
    let failed = report.failures().count();
    out.push_str(&format!(
        "{}: {} checks, {failed} failed\n",
        if report.passed() { "pass" } else { "fail" },
        report.checks.len()
    ));
}
