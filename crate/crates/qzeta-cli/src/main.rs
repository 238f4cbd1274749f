//! `qzeta`: compute q-zeta series values, verify telescoping certificates
//! and numeric identities, benchmark term counts, and run the per-row
//! kernel solver. All arithmetic below the rendering layer is exact.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num::{Signed, Zero};

use qzeta_core::accel::{
    bbb_rhs, bbb_rhs_series, t2_rhs, terms_to_tolerance, zeta3_accel, zeta3_amdeberhan,
    AccelTag, AcceleratedSeriesId, SeriesId, Zeta3Variant,
};
use qzeta_core::qcore::{parse_rational, ten_pow_neg, to_decimal_string};
use qzeta_core::qzeta::{genfunc_lhs_numeric, genfunc_lhs_series, zeta3_alt_naive, zeta_q_naive};
use qzeta_core::wz::{
    bbb_pair, step_solve, sum_formula_i, sum_formula_ii, sum_formula_s, telescope_residual,
    zeta3_pair, KernelSpec, Zeta3Init,
};
use qzeta_core::{ExactRational, QContext, QzError, SumResult};

use report::{Report, Row};

const EXIT_PRECONDITION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "qzeta", version, about = "Exact q-analogues of zeta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one series to a digit target.
    Compute {
        /// Series id: zeta-q | zeta3-alt | genfunc | bbb-t1 | bbb-t2 | z31 | z32 | amdeberhan
        series: String,
        #[arg(long, value_name = "p/r")]
        q: String,
        #[arg(long, value_name = "p/r")]
        a: Option<String>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify a telescoping certificate or a numeric identity.
    Verify {
        /// Target: bbb-pair | zeta3-pair-v1 | zeta3-pair-v2 | genfunc-coeffs | prop-i | prop-ii | prop-s
        target: String,
        #[arg(long, value_name = "p/r")]
        q: String,
        #[arg(long, value_name = "p/r")]
        a: Option<String>,
        #[arg(long, default_value_t = 10)]
        grid: u64,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_name = "K", default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        s: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Report terms-to-tolerance for matched naive/accelerated series.
    Bench {
        #[arg(long, value_name = "p/r")]
        q: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Solve the per-row telescoping system for a built-in kernel.
    Solve {
        /// Kernel id: bbb | zeta3
        kernel: String,
        #[arg(long, value_name = "p/r")]
        q: String,
        #[arg(long, value_name = "p/r")]
        a: Option<String>,
        #[arg(long, default_value_t = 0)]
        l1: usize,
        #[arg(long, default_value_t = 1)]
        l2: usize,
        /// Comma-separated rationals for the multiplier at n = 0.
        #[arg(long)]
        init: String,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
}

fn exit_code_for(err: &QzError) -> u8 {
    match err {
        QzError::MaxTermsExhausted { .. } | QzError::TableExceeded { .. } => EXIT_BUDGET,
        QzError::InconsistentSystem { .. } | QzError::RankDeficient { .. } => EXIT_VERIFICATION,
        _ => EXIT_PRECONDITION,
    }
}

fn fail(err: &QzError) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::json!({ "error": err.to_string(), "exit_code": exit_code_for(err) })
    );
    ExitCode::from(exit_code_for(err))
}

fn ctx_for(q_str: &str, digits: u32) -> qzeta_core::Result<QContext> {
    QContext::new(parse_rational(q_str)?, digits, 1_000_000)
}

fn need_a(a: &Option<String>, series: &str) -> qzeta_core::Result<ExactRational> {
    match a {
        Some(s) => parse_rational(s),
        None => Err(QzError::Precondition(format!("{series} requires --a p/r"))),
    }
}

fn sum_row(id: &str, res: &SumResult, digits: u32) -> Row {
    Row {
        id: id.to_string(),
        value: Some(to_decimal_string(&res.value, digits)),
        terms: Some(res.terms_used),
        residual: None,
        pass: None,
    }
}

fn run_compute(
    series: &str,
    q: &str,
    a: &Option<String>,
    s: Option<u32>,
    digits: u32,
) -> qzeta_core::Result<Report> {
    let ctx = ctx_for(q, digits + 2)?;
    let res = match series {
        "zeta-q" => {
            let s = s.ok_or_else(|| QzError::Precondition("zeta-q requires --s".into()))?;
            zeta_q_naive(s, &ctx)?
        }
        "zeta3-alt" => zeta3_alt_naive(&ctx)?,
        "genfunc" => genfunc_lhs_numeric(&need_a(a, series)?, &ctx)?,
        "bbb-t1" => bbb_rhs(&need_a(a, series)?, &ctx)?,
        "bbb-t2" => t2_rhs(&need_a(a, series)?, &ctx)?,
        "z31" => zeta3_accel(Zeta3Variant::V1, &ctx)?,
        "z32" => zeta3_accel(Zeta3Variant::V2, &ctx)?,
        "amdeberhan" => zeta3_amdeberhan(&ctx)?,
        other => {
            return Err(QzError::Precondition(format!("unknown series '{other}'")));
        }
    };
    let mut report = Report::new("compute");
    report.param("series", series);
    report.param("q", q);
    if let Some(a) = a {
        report.param("a", a.as_str());
    }
    if let Some(s) = s {
        report.param("s", s);
    }
    report.param("digits", digits);
    report.push(sum_row(series, &res, digits));
    report.push(Row {
        id: format!("{series}.tail_bound"),
        value: Some(to_decimal_string(&res.tail_bound, digits)),
        terms: None,
        residual: None,
        pass: None,
    });
    Ok(report)
}

fn residual_row(target: &str, residual: &ExactRational) -> Row {
    Row {
        id: target.to_string(),
        value: None,
        terms: None,
        residual: Some(if residual.is_zero() {
            "0".to_string()
        } else {
            residual.to_string()
        }),
        pass: Some(residual.is_zero()),
    }
}

fn run_verify(
    target: &str,
    q: &str,
    a: &Option<String>,
    grid: u64,
    digits: u32,
    k_order: usize,
    s: u64,
) -> qzeta_core::Result<(Report, bool)> {
    let ctx = ctx_for(q, digits)?;
    let mut report = Report::new("verify");
    report.param("target", target);
    report.param("q", q);
    if let Some(a) = a {
        report.param("a", a.as_str());
    }
    report.param("grid", grid);
    report.param("digits", digits);

    let mut all_pass = true;
    match target {
        "bbb-pair" | "zeta3-pair-v1" | "zeta3-pair-v2" => {
            let pair = match target {
                "bbb-pair" => bbb_pair(&need_a(a, target)?, &ctx, grid + 1)?,
                "zeta3-pair-v1" => zeta3_pair(Zeta3Init::First.values(), &ctx, grid + 1)?,
                _ => zeta3_pair(Zeta3Init::Second.values(), &ctx, grid + 1)?,
            };
            let r = telescope_residual(&pair, grid, grid, &ctx)?;
            all_pass &= r.is_zero();
            report.push(residual_row(target, &r));
        }
        "genfunc-coeffs" => {
            let tol = ten_pow_neg(digits);
            let check_ctx = ctx.with_digits(digits + 2);
            let lhs = genfunc_lhs_series(k_order, &check_ctx)?;
            let rhs = bbb_rhs_series(k_order, &check_ctx)?;
            for k in 0..=k_order {
                let diff = (lhs.series.coeff(k) - rhs.series.coeff(k)).abs();
                let ok = diff < tol;
                all_pass &= ok;
                report.push(Row {
                    id: format!("coeff[a^{}]", 2 * k),
                    value: Some(to_decimal_string(rhs.series.coeff(k), digits)),
                    terms: None,
                    residual: Some(to_decimal_string(&diff, digits)),
                    pass: Some(ok),
                });
            }
        }
        "prop-i" | "prop-ii" | "prop-s" => {
            // the summation formulas touch row 0 plus a band near the
            // diagonal truncation frontier; a thin table suffices
            let rows = digits as u64 + 80;
            let pair = match a {
                Some(a) => bbb_pair(&parse_rational(a)?, &ctx, rows)?,
                None => zeta3_pair(Zeta3Init::First.values(), &ctx, rows)?,
            };
            let (lhs, rhs) = match target {
                "prop-i" => sum_formula_i(&pair, &ctx)?,
                "prop-ii" => sum_formula_ii(&pair, &ctx)?,
                _ => sum_formula_s(&pair, s, &ctx)?,
            };
            let diff = (&lhs.value - &rhs.value).abs();
            let budget = &lhs.tail_bound + &rhs.tail_bound;
            let ok = diff <= budget;
            all_pass &= ok;
            report.push(sum_row(&format!("{target}.lhs"), &lhs, digits));
            report.push(sum_row(&format!("{target}.rhs"), &rhs, digits));
            report.push(Row {
                id: format!("{target}.gap"),
                value: None,
                terms: None,
                residual: Some(to_decimal_string(&diff, digits)),
                pass: Some(ok),
            });
        }
        other => {
            return Err(QzError::Precondition(format!("unknown target '{other}'")));
        }
    }
    Ok((report, all_pass))
}

fn run_bench(q: &str, digits: u32) -> qzeta_core::Result<Report> {
    if digits < 5 {
        return Err(QzError::Precondition("bench requires --digits >= 5".into()));
    }
    let ctx = ctx_for(q, digits + 2)?;
    let eps = ten_pow_neg(digits);
    let a = parse_rational("1/5")?;
    let accel = |tag, a: Option<ExactRational>| {
        AcceleratedSeriesId::new(tag, a).map(SeriesId::Accel)
    };
    let rows: Vec<(String, SeriesId)> = vec![
        ("zeta-q(3) naive".into(), SeriesId::ZetaQNaive { s: 3 }),
        ("z31".into(), accel(AccelTag::Z3V1, None)?),
        ("zeta3-alt naive".into(), SeriesId::Zeta3AltNaive),
        ("z32".into(), accel(AccelTag::Z3V2, None)?),
        ("amdeberhan".into(), accel(AccelTag::Z3Amdeberhan, None)?),
        ("genfunc a=1/5".into(), SeriesId::GenfuncLhs { a: a.clone() }),
        ("bbb-t1 a=1/5".into(), accel(AccelTag::BbbT1, Some(a.clone()))?),
        ("bbb-t2 a=1/5".into(), accel(AccelTag::BbbT2, Some(a.clone()))?),
    ];
    let mut report = Report::new("bench");
    report.param("q", q);
    report.param("digits", digits);
    for (label, id) in &rows {
        match terms_to_tolerance(id, &eps, &ctx) {
            Ok(n) => report.push(Row {
                id: label.clone(),
                value: None,
                terms: Some(n),
                residual: None,
                pass: Some(true),
            }),
            Err(QzError::MaxTermsExhausted { terms, .. }) => report.push(Row {
                id: label.clone(),
                value: None,
                terms: Some(terms),
                residual: Some("budget exhausted".into()),
                pass: Some(false),
            }),
            Err(e) => return Err(e),
        }
    }
    // sum_formula_s invariance rows for s in {1,2,3}
    let pair = bbb_pair(&a, &ctx, digits as u64 + 80)?;
    for s in [1u64, 2, 3] {
        let (_, rhs) = sum_formula_s(&pair, s, &ctx)?;
        report.push(Row {
            id: format!("sum-formula s={s}"),
            value: Some(to_decimal_string(&rhs.value, digits)),
            terms: Some(rhs.terms_used),
            residual: None,
            pass: Some(true),
        });
    }
    Ok(report)
}

fn run_solve(
    kernel_id: &str,
    q: &str,
    a: &Option<String>,
    l1: usize,
    l2: usize,
    init: &str,
    n_max: u64,
    digits: u32,
) -> qzeta_core::Result<(Report, bool)> {
    if l2 == 0 {
        return Err(QzError::Precondition(
            "the mate numerator needs degree >= 1 (--l2 >= 1)".into(),
        ));
    }
    let ctx = ctx_for(q, digits)?;
    let kernel = match kernel_id {
        "bbb" => KernelSpec::bbb(&need_a(a, "bbb kernel")?, &ctx)?,
        "zeta3" => KernelSpec::zeta3(&ctx)?,
        other => {
            return Err(QzError::Precondition(format!("unknown kernel '{other}'")));
        }
    };
    let init: Vec<ExactRational> = init
        .split(',')
        .map(parse_rational)
        .collect::<qzeta_core::Result<_>>()?;
    if init.len() != l1 + 1 {
        return Err(QzError::Precondition(format!(
            "--init must list {} coefficients for --l1 {l1}",
            l1 + 1
        )));
    }
    let solved = step_solve(&kernel, l1, l2, &init, &ctx, n_max)?;
    let mut report = Report::new("solve");
    report.param("kernel", kernel_id);
    report.param("q", q);
    if let Some(a) = a {
        report.param("a", a.as_str());
    }
    report.param("l1", l1 as u64);
    report.param("l2", l2 as u64);
    report.param("n_max", n_max);
    for (n, row) in solved.p_coeffs.iter().enumerate() {
        report.push(Row {
            id: format!("p[{n}]"),
            value: Some(
                row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            ),
            terms: None,
            residual: None,
            pass: None,
        });
    }
    for (n, row) in solved.g_coeffs.iter().enumerate() {
        report.push(Row {
            id: format!("g[{n}]"),
            value: Some(
                row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            ),
            terms: None,
            residual: None,
            pass: None,
        });
    }
    let pair = solved.into_pair(kernel);
    let check = n_max.saturating_sub(1).min(8);
    let residual = telescope_residual(&pair, check, check, &ctx)?;
    let ok = residual.is_zero();
    report.push(residual_row("solved-pair", &residual));
    Ok((report, ok))
}

fn emit(report: &mut Report, start: Instant, format: Format, out: &Option<String>) -> u8 {
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    let rendered = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("cannot write {path}: {e}");
                return EXIT_PRECONDITION;
            }
        }
        None => println!("{rendered}"),
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match cli.command {
        Command::Compute { series, q, a, s, digits, format, out } => {
            match run_compute(&series, &q, &a, s, digits) {
                Ok(mut report) => ExitCode::from(emit(&mut report, start, format, &out)),
                Err(e) => fail(&e),
            }
        }
        Command::Verify { target, q, a, grid, digits, k, s, format, out } => {
            match run_verify(&target, &q, &a, grid, digits, k, s) {
                Ok((mut report, pass)) => {
                    let code = emit(&mut report, start, format, &out);
                    if code != 0 {
                        ExitCode::from(code)
                    } else if pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFICATION)
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Command::Bench { q, digits, format, out } => match run_bench(&q, digits) {
            Ok(mut report) => ExitCode::from(emit(&mut report, start, format, &out)),
            Err(e) => fail(&e),
        },
        Command::Solve { kernel, q, a, l1, l2, init, n_max, digits, format, out } => {
            match run_solve(&kernel, &q, &a, l1, l2, &init, n_max, digits) {
                Ok((mut report, pass)) => {
                    let code = emit(&mut report, start, format, &out);
                    if code != 0 {
                        ExitCode::from(code)
                    } else if pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFICATION)
                    }
                }
                Err(e) => fail(&e),
            }
        }
    }
}
