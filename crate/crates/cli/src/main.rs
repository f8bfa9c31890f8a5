use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fdmono_core::monodromy::{run_suite, section7_report, section7_system, MatricesJson, Representation, Side, Suite};
use fdmono_core::numeric::{euler_integral_check_with, verify_monodromy_numeric, MonodromyOptions, NumericScene, QuadConfig};
use fdmono_core::{Generator, ParameterSystem, VerificationReport, Word};
use num_complex::Complex64;

mod render;

use render::{render_report, Format};

const QUAD_TOL_VAR: &str = "FDMONO_QUAD_TOL";
const EULER_TOL: f64 = 1e-8;

/// Circuit matrices and monodromy checks for Lauricella's F_D.
#[derive(Parser, Debug)]
#[command(name = "fdmono", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print M and N for one generator.
    Matrices {
        #[arg(long)]
        params: PathBuf,
        /// Generator indices `P,Q`.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the matrix of a word in the generators.
    Word {
        #[arg(long)]
        params: PathBuf,
        /// Comma-separated letters such as `02,13^-1`.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run exact verification suites.
    Verify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the m = 3 example matrices and compare them with the table.
    Section7 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Continue period vectors numerically and compare with the circuit matrices.
    NumericVerify {
        #[arg(long)]
        config: PathBuf,
        /// `all` or a generator `P,Q`.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the F_D series with its Euler integral.
    EulerCheck {
        #[arg(long)]
        a: f64,
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        b: Vec<f64>,
        #[arg(long)]
        c: f64,
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    #[value(name = "M")]
    M,
    #[value(name = "N")]
    N,
}

fn read_params(path: &Path) -> Result<ParameterSystem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ParameterSystem::from_json(&text).with_context(|| format!("parameter file {}", path.display()))
}

fn parse_pair(text: &str, m: usize) -> Result<Generator> {
    let Some((a, b)) = text.split_once(',') else {
        bail!("pair `{text}` must be `P,Q`");
    };
    let a: usize = a.trim().parse().with_context(|| format!("pair `{text}`"))?;
    let b: usize = b.trim().parse().with_context(|| format!("pair `{text}`"))?;
    Ok(Generator::new(a, b, m)?)
}

fn quad_tol_override() -> Result<Option<f64>> {
    match std::env::var(QUAD_TOL_VAR) {
        Ok(v) => {
            let tol: f64 = v.trim().parse().with_context(|| format!("{QUAD_TOL_VAR}=`{v}`"))?;
            if !(tol > 0.0 && tol.is_finite()) {
                bail!("{QUAD_TOL_VAR} must be a positive number, got `{v}`");
            }
            Ok(Some(tol))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => bail!("{QUAD_TOL_VAR}: {e}"),
    }
}

fn emit_json<T: serde::Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
    out.push('\n');
}

/// Ok(pass) for a completed run, Err for an input error.
fn run(cli: Cli, out: &mut String) -> Result<bool> {
    match cli.command {
        Command::Matrices { params, pair, format } => {
            let ps = read_params(&params)?;
            let g = parse_pair(&pair, ps.m())?;
            let rep = Representation::new(&ps)?;
            let pair = rep.pair(g);
            match format {
                Format::Json => emit_json(out, &MatricesJson::from(pair)),
                Format::Text => out.push_str(&render::pair_text(g, &pair.m, &pair.n)),
            }
            Ok(true)
        }
        Command::Word { params, word, side, format } => {
            let ps = read_params(&params)?;
            let w = Word::parse(&word, ps.m())?;
            let rep = Representation::new(&ps)?;
            let side = match side {
                SideArg::M => Side::M,
                SideArg::N => Side::N,
            };
            let mat = rep.word_matrix(&w, side)?;
            match format {
                Format::Json => {
                    let rows: Vec<Vec<String>> = mat.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                    emit_json(out, &serde_json::json!({ "word": w.to_string(), "side": format!("{side:?}"), "matrix": rows }));
                }
                Format::Text => out.push_str(&format!("{side:?}({w}) =\n{mat}\n")),
            }
            Ok(true)
        }
        Command::Verify { params, suite, seed, format } => {
            let ps = read_params(&params)?;
            let suite: Suite = suite.parse().map_err(anyhow::Error::msg)?;
            let report = run_suite(&ps, suite, seed)?;
            render_report(out, &report, format);
            Ok(report.passed())
        }
        Command::Section7 { format } => {
            let rep = Representation::new(&section7_system())?;
            let report = section7_report(&rep);
            match format {
                Format::Json => {
                    let pairs: Vec<MatricesJson> = rep.pairs().map(MatricesJson::from).collect();
                    emit_json(out, &serde_json::json!({ "matrices": pairs, "report": report }));
                }
                Format::Text => {
                    for pair in rep.pairs() {
                        out.push_str(&render::pair_text(pair.generator, &pair.m, &pair.n));
                        out.push('\n');
                    }
                    render_report(out, &report, format);
                }
            }
            Ok(report.passed())
        }
        Command::NumericVerify { config, pairs, tol, steps, format } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut scene = NumericScene::from_json(&text).with_context(|| format!("numeric config {}", config.display()))?;
            if let Some(t) = quad_tol_override()? {
                scene.quad = scene.quad.with_tol(t);
                scene.quad.validate()?;
            }
            let mut opts = MonodromyOptions {
                closure: true,
                ..MonodromyOptions::default()
            };
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    bail!("--tol must be positive, got {t}");
                }
                opts.tol = t;
            }
            let gens = match pairs.as_deref() {
                Some("all") => Generator::all(scene.m()),
                Some(p) => vec![parse_pair(p, scene.m())?],
                None => match scene.loop_config {
                    Some(lc) => {
                        opts.steps = Some(lc.steps);
                        opts.radius = lc.radius;
                        vec![Generator::new(lc.pair[0], lc.pair[1], scene.m())?]
                    }
                    None => Generator::all(scene.m()),
                },
            };
            if steps.is_some() {
                opts.steps = steps;
            }
            let mut report = verify_monodromy_numeric(&scene, &gens, &opts)?;
            report.header = Some(format!(
                "shift = {:?}, tol = {:e}, quad tol = {:e}",
                scene.shift(),
                opts.tol,
                scene.quad.tol
            ));
            render_report(out, &report, format);
            Ok(report.passed())
        }
        Command::EulerCheck { a, b, c, x, format } => {
            let quad = QuadConfig {
                tol: quad_tol_override()?.unwrap_or(1e-13),
                max_level: 12,
            };
            let bs: Vec<Complex64> = b.iter().map(|&v| Complex64::from(v)).collect();
            let cmp = euler_integral_check_with(Complex64::from(a), &bs, Complex64::from(c), &x, &quad)?;
            let mut report = VerificationReport::with_header(format!("tol = {EULER_TOL:e}"));
            report.push(cmp.check(EULER_TOL));
            match format {
                Format::Json => emit_json(out, &serde_json::json!({ "comparison": cmp, "report": report })),
                Format::Text => {
                    out.push_str(&format!(
                        "series   = {:+.15e} {:+.15e}i\nintegral = {:+.15e} {:+.15e}i\nrelative error = {:.3e}\n",
                        cmp.series.re, cmp.series.im, cmp.integral.re, cmp.integral.im, cmp.rel_error
                    ));
                    render_report(out, &report, format);
                }
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(pass) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
