use ellipmono_core::coeff::{CoefficientTable, PValue};
use ellipmono_core::elliptic::{agm_k, alpha, beta, exp_k_agm, g_funcs_with, h_value};
use ellipmono_core::exact::{
    parse_decimal, parse_exact_with, parse_rational, BigRational, ExactValue, PiExpression, Sign,
};
use ellipmono_core::verify::{
    certify_sequence, default_grid, default_x_grid, grid_verify_with, h_monotonicity_with,
    j_truncation_check, sharpness_probe, BoundSpec, Certificate, Claim, Family, PrecisionPolicy, Status,
    Threshold,
};
use ellipmono_core::{Error, Result};

use crate::config::{Cli, Command, Format};
use crate::output::{self, CoeffRow, ConstantRow, EvalRow};

const EXTRA_CLAIMS: [&str; 2] = ["h_monotonic", "j_truncation"];

fn digits(precision: u32) -> usize {
    (precision as usize * 30103 / 100_000).max(6)
}

fn policy(cli: &Cli) -> Result<PrecisionPolicy> {
    PrecisionPolicy::new(cli.precision(), cli.max_bits())
}

fn parse_point(s: &str) -> Result<BigRational> {
    let s = s.trim();
    parse_rational(s)
        .or_else(|_| parse_decimal(s))
        .map_err(|_| Error::Domain(format!("--x: cannot parse `{s}` as a rational or decimal")))
}

fn pick(name: &Option<String>, flag: &Option<String>, what: &str) -> Result<String> {
    name.clone()
        .or_else(|| flag.clone())
        .ok_or_else(|| Error::Domain(format!("missing --{what}")))
}

/// Exit status for a certificate: 0 when the expected status was reached.
fn exit_for(cert: &Certificate, expected: Status) -> u8 {
    if cert.status == expected {
        0
    } else {
        1
    }
}

fn emit_certificate(cli: &Cli, cert: Certificate) -> Result<()> {
    let cert = if cli.no_timestamp { cert.without_timestamp() } else { cert };
    let text = output::certificate(&cert, cli.format.unwrap_or(Format::Json))?;
    output::emit(&text, cli.out.as_deref())
}

fn emit_table<T: serde::Serialize>(cli: &Cli, rows: &[T]) -> Result<()> {
    let text = output::table(rows, cli.format.unwrap_or(Format::Csv))?;
    output::emit(&text, cli.out.as_deref())
}

fn threshold(p: &Option<String>, table: &mut CoefficientTable) -> Result<Option<Threshold>> {
    match p.as_deref().map(str::trim) {
        None => Ok(None),
        Some("beta") => Ok(Some(Threshold::Beta {
            shift: BigRational::from_integer(0.into()),
        })),
        Some(s) => Ok(Some(Threshold::Exact(
            parse_exact_with(s, table).map_err(|e| Error::Domain(format!("--p: {e}")))?,
        ))),
    }
}

fn bound_spec(family: &str, m: u64, p: &Option<String>, table: &mut CoefficientTable) -> Result<BoundSpec> {
    let family: Family = family.parse()?;
    let m = m as usize;
    match threshold(p, table)? {
        Some(t) => BoundSpec::new(family, m, Some(t)),
        None => BoundSpec::sharp(family, m, table),
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Coeffs => coeffs(cli).map(|_| 0),
        Command::Constants => constants(cli).map(|_| 0),
        Command::Eval { x } => eval(cli, x).map(|_| 0),
        Command::Certify { name, claim, lo, p } => {
            let name = pick(name, claim, "claim")?;
            certify(cli, &name, *lo, p)
        }
        Command::Verify { name, family, m, p } => {
            let family = pick(name, family, "family")?;
            let mut table = CoefficientTable::new();
            let spec = bound_spec(&family, *m, p, &mut table)?;
            let policy = policy(cli)?;
            let grid = default_grid(spec.family, cli.grid_density());
            let cert = grid_verify_with(&spec, &grid, &policy, &mut table)?;
            let code = exit_for(&cert, Status::Certified);
            emit_certificate(cli, cert)?;
            Ok(code)
        }
        Command::Sharpness {
            name,
            family,
            m,
            p,
            epsilon,
        } => {
            let family = pick(name, family, "family")?;
            let mut table = CoefficientTable::new();
            let spec = bound_spec(&family, *m, p, &mut table)?;
            let eps = parse_rational(epsilon)
                .or_else(|_| parse_decimal(epsilon))
                .map_err(|e| Error::Domain(format!("--epsilon: {e}")))?;
            let cert = sharpness_probe(&spec, &eps, &policy(cli)?)?;
            let code = exit_for(&cert, Status::Refuted);
            emit_certificate(cli, cert)?;
            Ok(code)
        }
    }
}

fn certify(cli: &Cli, name: &str, lo: Option<u64>, p: &Option<String>) -> Result<u8> {
    let policy = policy(cli)?;
    let cert = match name {
        "h_monotonic" => {
            let half = BigRational::new(1.into(), 2.into());
            let grid: Vec<_> = default_x_grid(cli.grid_density())
                .into_iter()
                .filter(|x| x != &half)
                .collect();
            h_monotonicity_with(&grid, &policy)?
        }
        "j_truncation" => j_truncation_check(cli.n_max(), cli.precision())?,
        _ => {
            let mut table = CoefficientTable::new();
            let pv = match p {
                Some(s) => Some(PValue::Exact(
                    parse_exact_with(s, &mut table).map_err(|e| Error::Domain(format!("--p: {e}")))?,
                )),
                None => None,
            };
            let claim = Claim::parse(name, pv).map_err(|e| match e {
                Error::Domain(m) if m.starts_with("unknown claim") => {
                    Error::Domain(format!("{m}; also {}", EXTRA_CLAIMS.join(", ")))
                }
                other => other,
            })?;
            let lo = lo.map(|l| l as usize).unwrap_or(claim.min_index());
            certify_sequence(&claim, lo, cli.n_max(), &policy, &mut table)?
        }
    };
    let code = exit_for(&cert, Status::Certified);
    emit_certificate(cli, cert)?;
    Ok(code)
}

fn coeffs(cli: &Cli) -> Result<()> {
    let prec = cli.precision();
    let n_max = cli.n_max();
    let d = digits(prec);
    let mut table = CoefficientTable::new();
    table.prepare(n_max, prec)?;
    let four = PValue::Exact(ExactValue::from_integer(4));
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let exact = if n <= table.exact_limit() {
            table.b(n).to_string()
        } else {
            String::new()
        };
        let sign = match table.c_coeff(n, &four, prec)?.sign() {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Undecided => "?",
        };
        rows.push(CoeffRow {
            n,
            w_n: table.wallis(n).to_string(),
            b_n_exact: exact,
            b_n: table.b_enclosure(n, prec)?.to_decimal(d),
            ratio: table.ratio(n, prec)?.to_decimal(d),
            c_n_4_sign: sign.into(),
        });
    }
    emit_table(cli, &rows)
}

fn eval(cli: &Cli, xs: &[String]) -> Result<()> {
    let prec = cli.precision();
    let d = digits(prec);
    let mut table = CoefficientTable::new();
    let mut rows = Vec::new();
    for s in xs {
        let x = parse_point(s)?;
        let g = g_funcs_with(&x, prec, &mut table)
            .map_err(|e| Error::Domain(format!("--x {s}: {e}")))?;
        rows.push(EvalRow {
            x: x.to_string(),
            k: agm_k(&x, prec)?.to_decimal(d),
            exp_k: exp_k_agm(&x, prec)?.to_decimal(d),
            g: g.g.to_decimal(d),
            big_g: g.big_g.to_decimal(d),
            big_g_prime: g.big_g_prime.to_decimal(d),
            h: h_value(&x, prec)
                .map_err(|e| Error::Domain(format!("--x {s}: {e}")))?
                .to_decimal(d),
        });
    }
    emit_table(cli, &rows)
}

fn constants(cli: &Cli) -> Result<()> {
    let prec = cli.precision();
    let d = digits(prec);
    let mut table = CoefficientTable::new();
    let ratio1 = table.ratio_exact(1);
    let ratio2 = table.ratio_exact(2);
    let rows = vec![
        ConstantRow {
            name: "ratio_1",
            expression: "pi*exp_half_pi/4",
            value: ratio1.evaluate(prec)?.to_decimal(d),
        },
        ConstantRow {
            name: "exp_half_pi",
            expression: "exp_half_pi",
            value: PiExpression::exp_half_pi().evaluate(prec)?.to_decimal(d),
        },
        ConstantRow {
            name: "ratio_2",
            expression: "pi*(pi+9)*exp_half_pi/48",
            value: ratio2.evaluate(prec)?.to_decimal(d),
        },
        ConstantRow {
            name: "four",
            expression: "4",
            value: "4".into(),
        },
        ConstantRow {
            name: "alpha",
            expression: "exp_half_pi - 4",
            value: alpha(prec)?.to_decimal(d),
        },
        ConstantRow {
            name: "beta",
            expression: "4*sqrt(2) - Gamma(3/4)^2/sqrt(pi)*exp(Gamma(1/4)^2/(4*sqrt(pi)))",
            value: beta(prec)?.to_decimal(d),
        },
    ];
    emit_table(cli, &rows)
}
