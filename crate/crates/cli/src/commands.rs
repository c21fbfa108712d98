use anyhow::Result;
use hardy_sphere::certify::{
    find_n_lambda, rayleigh_certify, tau_min, CertificateVerdict, Precision,
};
use hardy_sphere::lab::{b_lambda, bd_constant, erratum_counterexample, heat_limits, prop1_family};
use hardy_sphere::sequences::SequenceTable;
use hardy_sphere::suites::Suite;
use rayon::prelude::*;
use rug::Rational;
use serde_json::{json, Map, Value};

use crate::config::{Command, RunConfig};
use crate::report::{Num, Report, Source, SCHEMA};

pub fn run(cfg: &RunConfig) -> Result<(Report, i32)> {
    match cfg.command {
        Command::Constants => constants(cfg),
        Command::Certify => certify(cfg),
        Command::Verify => verify(cfg),
        Command::Table => table(cfg),
        Command::Heat => heat(cfg),
        Command::Erratum => erratum(cfg),
    }
}

fn precision_name(p: Precision) -> String {
    match p {
        Precision::Float64 => "float64".into(),
        Precision::BigFloat(bits) => format!("bigfloat:{bits}-bits"),
        Precision::Exact => "exact".into(),
    }
}

fn config_json(cfg: &RunConfig) -> Value {
    let mut m = Map::new();
    if let Some(l) = &cfg.lambda {
        let shown = l.rational.as_ref().map_or_else(|| l.value.to_string(), |r| r.to_string());
        m.insert("lambda".into(), json!(shown));
        if let Some(d) = l.dim {
            m.insert("dim".into(), json!(d.to_string()));
        }
    }
    m.insert("seed".into(), json!(cfg.seed.to_string()));
    Value::Object(m)
}

fn envelope(cfg: &RunConfig, body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(cfg.command.name()));
    m.insert("config".into(), config_json(cfg));
    m.extend(body);
    Value::Object(m)
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

struct Entry {
    name: &'static str,
    statement: &'static str,
    num: Num,
}

fn entry(name: &'static str, statement: &'static str, num: Num) -> Entry {
    Entry {
        name,
        statement,
        num,
    }
}

fn closed_rational(r: &Rational) -> Num {
    Num {
        source: Source::ClosedForm,
        ..Num::rational(r)
    }
}

fn constants(cfg: &RunConfig) -> Result<(Report, i32)> {
    let l = cfg.lambda();
    let lam = l.value;
    let prec = cfg.scan_precision();
    let exact = prec == Precision::Exact;
    let mut values = vec![];

    let beta_inf = match &l.rational {
        Some(r) => {
            let t = Rational::from(r * 2u32) - 1u32;
            closed_rational(&(Rational::from(&t * &t) / 8u32))
        }
        None => Num::closed((2.0 * lam - 1.0).powi(2) / 8.0),
    };
    let critical = lam == 0.5;
    let c_lambda = if critical {
        Num::closed(f64::INFINITY)
    } else {
        match &l.rational {
            Some(r) => {
                let t = Rational::from(r * 2u32) - 1u32;
                closed_rational(&(Rational::from(8) / Rational::from(&t * &t)))
            }
            None => Num::closed(8.0 / (2.0 * lam - 1.0).powi(2)),
        }
    };
    values.push(entry(
        "C_lambda",
        "optimal Hardy-Rellich constant 8/(2λ-1)² on the class with f̂_n = 0 for n <= n(λ)",
        c_lambda,
    ));
    values.push(entry("beta_inf", "limit (2λ-1)²/8 of β_λ(n)", beta_inf));

    let n_lambda = find_n_lambda(lam, prec)?;
    let src = if exact { Source::ExactRational } else { Source::CertifiedNumeric };
    values.push(entry(
        "n_lambda",
        "smallest n₀ with β_λ(n) >= β_∞ for all n >= max(n₀, 1)",
        Num::int(n_lambda.n0, src),
    ));

    let tau = tau_min(lam, prec)?;
    let tau_num = match &tau.exact {
        Some(r) => Num::rational(r),
        None => Num::numeric(tau.value),
    };
    values.push(entry("tau", "inf over n >= 1 of β_λ(n); τ_d when λ = (d-2)/2", tau_num));
    if let Some(n) = tau.argmin {
        values.push(entry("tau_argmin", "index attaining τ", Num::int(n, src)));
    }
    let zero_mean = match &tau.exact {
        Some(r) if *r != 0 => Num::rational(&(Rational::from(1) / r)),
        _ => Num::numeric(1.0 / tau.value),
    };
    values.push(entry(
        "zero_mean_constant",
        "1/τ, Hardy-Rellich constant on all zero-mean functions",
        zero_mean,
    ));

    let b_l = b_lambda(lam)?;
    values.push(entry(
        "B_lambda",
        "zonal uncertainty constant",
        if critical { Num::closed(b_l) } else { Num::numeric(b_l) },
    ));
    let dim = l.dim.or_else(|| {
        let d = 2.0 * lam + 2.0;
        (d.fract() == 0.0 && d >= 2.0).then_some(d as usize)
    });
    if let Some(d) = dim {
        let b = bd_constant(d)?;
        values.push(entry("B_d", "uncertainty constant (d-1)(1-2/√(d+3)); 1/8 for d = 2", Num::closed(b.value)));
        values.push(entry("B_d_t_star", "root of (d-1)/4·(1-t)²/(2-t) = t", Num::closed(b.t_star)));
        values.push(entry("B_d_lower", "(d-3)²/8", Num::closed(b.lower)));
        values.push(entry("B_d_upper", "(d-1)²/8", Num::closed(b.upper)));
    }

    let verdict = if critical {
        "no finite constant: the Hardy-Rellich inequality fails in dimension three"
    } else {
        "finite"
    };
    let mut body = Map::new();
    body.insert("precision".into(), json!(precision_name(prec)));
    body.insert("verdict".into(), json!(verdict));
    body.insert(
        "values".into(),
        Value::Array(
            values
                .iter()
                .map(|e| {
                    let mut v = to_value(&e.num);
                    v["name"] = json!(e.name);
                    v["statement"] = json!(e.statement);
                    v
                })
                .collect(),
        ),
    );
    let csv_rows = values
        .iter()
        .map(|e| {
            let [v, s, x] = e.num.csv_fields();
            vec![e.name.to_string(), v, s, x, e.statement.to_string()]
        })
        .collect();
    Ok((
        Report {
            json: vec![envelope(cfg, body)],
            csv_header: ["name", "value", "source", "exact", "statement"].map(String::from).to_vec(),
            csv_rows,
            json_lines: false,
        },
        0,
    ))
}

fn certify(cfg: &RunConfig) -> Result<(Report, i32)> {
    let lam = cfg.lambda().value;
    let n0 = match cfg.n0 {
        Some(n) => n,
        None => find_n_lambda(lam, Precision::Float64)?.n0,
    };
    let r = rayleigh_certify(lam, n0, &cfg.sizes)?;
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "size": Num::int(row.size, Source::ClosedForm),
                "mu": Num::numeric(row.mu),
                "constant": Num::numeric(row.constant),
            })
        })
        .collect();
    let verdict = match r.verdict {
        CertificateVerdict::Converging { limit_constant } => json!({
            "kind": "converging",
            "limit_constant": Num::closed(limit_constant),
        }),
        CertificateVerdict::Diverging => json!({ "kind": "diverging" }),
    };
    let mut body = Map::new();
    body.insert("n0".into(), to_value(Num::int(n0, Source::ClosedForm)));
    body.insert("n_lambda".into(), to_value(Num::int(r.n_lambda, Source::CertifiedNumeric)));
    body.insert("beta_inf".into(), to_value(Num::closed(r.beta_inf)));
    body.insert("monotone".into(), json!(r.monotone));
    body.insert("bound_ok".into(), json!(r.bound_ok));
    body.insert(
        "log_fit".into(),
        json!({ "intercept": Num::numeric(r.log_fit.0), "slope": Num::numeric(r.log_fit.1) }),
    );
    body.insert("verdict".into(), verdict);
    body.insert("rows".into(), Value::Array(rows));
    let csv_rows = r
        .rows
        .iter()
        .map(|row| {
            let [mu, s, _] = Num::numeric(row.mu).csv_fields();
            let [c, _, _] = Num::numeric(row.constant).csv_fields();
            vec![row.size.to_string(), mu, c, s]
        })
        .collect();
    Ok((
        Report {
            json: vec![envelope(cfg, body)],
            csv_header: ["size", "mu", "constant", "source"].map(String::from).to_vec(),
            csv_rows,
            json_lines: false,
        },
        i32::from(r.violated()),
    ))
}

fn verify(cfg: &RunConfig) -> Result<(Report, i32)> {
    let suites = Suite::parse(&cfg.suite).expect("suite name checked in from_cli");
    let seed = cfg.seed;
    let checks: Vec<_> = suites
        .par_iter()
        .map(|s| s.run(seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut json = vec![];
    for c in &checks {
        let mut v = to_value(c);
        v["schema"] = json!(SCHEMA);
        json.push(v);
    }
    json.push(json!({
        "schema": SCHEMA,
        "summary": {
            "passed": Num::int(checks.len() - failed, Source::ClosedForm),
            "failed": Num::int(failed, Source::ClosedForm),
        }
    }));
    let csv_rows = checks
        .iter()
        .map(|c| {
            vec![
                c.suite.to_string(),
                c.check.clone(),
                c.pass.to_string(),
                c.detail.clone(),
                c.anchor.to_string(),
            ]
        })
        .collect();
    Ok((
        Report {
            json,
            csv_header: ["suite", "check", "pass", "detail", "anchor"].map(String::from).to_vec(),
            csv_rows,
            json_lines: true,
        },
        i32::from(failed > 0),
    ))
}

fn table(cfg: &RunConfig) -> Result<(Report, i32)> {
    let lam = cfg.lambda().value;
    let prec = cfg.scan_precision();
    let t = SequenceTable::build(lam, cfg.n_max, prec == Precision::Exact)?;
    let rows: Vec<[Num; 6]> = t
        .rows
        .par_iter()
        .map(|r| {
            let (a, b) = match (&r.exact, prec) {
                (Some((a, b)), _) => (Num::rational(a), Num::rational(b)),
                (None, Precision::BigFloat(bits)) => (
                    Num::numeric(hardy_sphere::bigfloat::alpha_sq(r.n, lam, bits).to_f64()),
                    Num::numeric(hardy_sphere::bigfloat::beta(r.n, lam, bits).to_f64()),
                ),
                _ => (Num::numeric(r.alpha_sq), Num::numeric(r.beta)),
            };
            let psi = match &r.exact {
                Some((_, b)) => Num::rational(&(Rational::from(b) / 4u32)),
                None => Num::numeric(b.value.unwrap_or(f64::NAN) / 4.0),
            };
            [
                a,
                b,
                psi,
                Num::closed(r.gamma_nn),
                Num::closed(r.gamma_lower),
                Num::closed(r.x_n),
            ]
        })
        .collect();
    let names = ["alpha_sq", "beta", "psi_half", "gamma_nn", "gamma_lower", "x_n"];
    let json_rows: Vec<Value> = t
        .rows
        .iter()
        .zip(&rows)
        .map(|(r, nums)| {
            let mut m = Map::new();
            m.insert("n".into(), to_value(Num::int(r.n, Source::ClosedForm)));
            for (name, num) in names.iter().zip(nums) {
                m.insert((*name).into(), to_value(num));
            }
            Value::Object(m)
        })
        .collect();
    let mut body = Map::new();
    body.insert("precision".into(), json!(precision_name(prec)));
    body.insert("rows".into(), Value::Array(json_rows));
    let mut header = vec!["n".to_string()];
    for name in names {
        header.push(name.into());
        header.push(format!("{name}_source"));
        header.push(format!("{name}_exact"));
    }
    let csv_rows = t
        .rows
        .iter()
        .zip(&rows)
        .map(|(r, nums)| {
            let mut v = vec![r.n.to_string()];
            for num in nums {
                v.extend(num.csv_fields());
            }
            v
        })
        .collect();
    Ok((
        Report {
            json: vec![envelope(cfg, body)],
            csv_header: header,
            csv_rows,
            json_lines: false,
        },
        0,
    ))
}

fn heat(cfg: &RunConfig) -> Result<(Report, i32)> {
    let lam = cfg.lambda().value;
    let h = heat_limits(lam, &cfg.t_list)?;
    let cols = |r: &hardy_sphere::lab::HeatRow| {
        [
            r.localization,
            r.gradient,
            r.product,
            r.localization_scaled,
            r.gradient_scaled,
            r.tau_ratio,
        ]
    };
    let names = [
        "localization",
        "gradient",
        "product",
        "localization_scaled",
        "gradient_scaled",
        "tau_ratio",
    ];
    let rows: Vec<Value> = h
        .rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("t".into(), to_value(Num::closed(r.t)));
            for (name, v) in names.iter().zip(cols(r)) {
                m.insert((*name).into(), to_value(Num::numeric(v)));
            }
            Value::Object(m)
        })
        .collect();
    let mut body = Map::new();
    body.insert("rows".into(), Value::Array(rows));
    body.insert(
        "limits".into(),
        json!({
            "localization_scaled": Num::closed(h.limit_localization),
            "gradient_scaled": Num::closed(h.limit_gradient),
            "product": Num::closed(h.limit_product),
            "tau_ratio": Num::closed(1.0),
        }),
    );
    if let Some((a, b, c)) = h.extrapolated {
        body.insert(
            "extrapolated".into(),
            json!({
                "localization_scaled": Num::numeric(a),
                "gradient_scaled": Num::numeric(b),
                "product": Num::numeric(c),
            }),
        );
    }
    let b = b_lambda(lam)?;
    body.insert(
        "B_lambda".into(),
        to_value(if lam == 0.5 { Num::closed(b) } else { Num::numeric(b) }),
    );
    let mut header = vec!["t".to_string()];
    header.extend(names.iter().map(|s| s.to_string()));
    let csv_rows = h
        .rows
        .iter()
        .map(|r| {
            let mut v = vec![r.t.to_string()];
            v.extend(cols(r).iter().map(|x| x.to_string()));
            v
        })
        .collect();
    Ok((
        Report {
            json: vec![envelope(cfg, body)],
            csv_header: header,
            csv_rows,
            json_lines: false,
        },
        0,
    ))
}

fn erratum(cfg: &RunConfig) -> Result<(Report, i32)> {
    let rows = erratum_counterexample(&cfg.eps_list)?;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let e = r.eps;
            json!({
                "eps": Num::closed(e),
                "tau": [Num::numeric(r.tau[0]), Num::numeric(r.tau[1])],
                "tau_closed_form": [Num::closed(0.0), Num::closed(e / (1.0 + e * e / 2.0))],
                "grad_sq": Num::numeric(r.grad_sq),
                "grad_sq_closed_form": Num::closed((e * e / 2.0) / (1.0 + e * e / 2.0)),
                "ratio": Num::numeric(r.ratio),
                "ratio_over_eps": Num::numeric(r.ratio_over_eps),
                "weak_lhs": Num::numeric(r.weak.0),
                "weak_rhs": Num::numeric(r.weak.1),
            })
        })
        .collect();
    let lam = cfg
        .lambda
        .as_ref()
        .and_then(|l| l.rational.clone())
        .unwrap_or_else(|| Rational::from((1, 2)));
    let fam = prop1_family(&lam, 4, 2)?;
    let mut body = Map::new();
    body.insert("circle".into(), Value::Array(json_rows));
    body.insert(
        "vanishing_family".into(),
        json!({
            "description": "C_4^λ(x₁) + x₁², coefficients in exact arithmetic",
            "lambda": Num::rational(&fam.lambda),
            "first_moment": Num::rational(&fam.first_moment),
            "norm_sq": Num::rational(&fam.norm_sq),
            "grad_sq": Num::rational(&fam.grad_sq),
            "mean": Num::rational(&fam.mean),
            "tau_vanishes": fam.first_moment == 0,
        }),
    );
    let csv_rows = rows
        .iter()
        .map(|r| {
            [
                r.eps,
                r.tau[0],
                r.tau[1],
                r.grad_sq,
                r.ratio,
                r.ratio_over_eps,
                r.weak.0,
                r.weak.1,
            ]
            .iter()
            .map(|x| x.to_string())
            .collect()
        })
        .collect();
    Ok((
        Report {
            json: vec![envelope(cfg, body)],
            csv_header: [
                "eps",
                "tau1",
                "tau2",
                "grad_sq",
                "ratio",
                "ratio_over_eps",
                "weak_lhs",
                "weak_rhs",
            ]
            .map(String::from)
            .to_vec(),
            csv_rows,
            json_lines: false,
        },
        0,
    ))
}
