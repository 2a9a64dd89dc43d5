//! Text and JSON renderings of a certificate and its oracle appendix.

use std::fmt::Write;

use pdcert_core::certify::{Certificate, CheckRecord};
use pdcert_core::ivreal::format_hex;
use pdcert_core::Interval;
use serde_json::{json, Value};

use crate::oracle::CrossCheck;

pub fn text(cert: &Certificate, oracle: Option<&CrossCheck>) -> String {
    let mut out = cert.render_text();
    if let Some(x) = oracle {
        let p = &x.params;
        let _ = writeln!(
            out,
            "# oracle nx={} ny={} samples={} rho={} iterations={} residual={:e}",
            p.nx, p.ny, p.samples, p.rho, x.iterations, x.residual
        );
        for l in &x.lines {
            let _ = writeln!(
                out,
                "{} {} value={:.15e} target={}",
                l.name,
                if l.pass { "PASS" } else { "FAIL" },
                l.value,
                l.target
            );
        }
        let _ = writeln!(out, "oracle {}", if x.all_pass() { "PASS" } else { "FAIL" });
    }
    out
}

fn interval(i: &Interval) -> Value {
    json!({ "lo": format_hex(i.lo()), "hi": format_hex(i.hi()) })
}

fn opt_interval(i: &Option<Interval>) -> Value {
    i.as_ref().map(interval).unwrap_or(Value::Null)
}

fn check(c: &CheckRecord) -> Value {
    json!({
        "name": c.name,
        "kind": c.kind.name(),
        "status": c.status.name(),
        "computed": opt_interval(&c.computed),
        "target": c.target,
        "anchor": c.anchor,
        "strict_pass": c.strict_pass,
        "soft_pass": c.soft_pass,
        "note": c.note,
    })
}

pub fn structured_value(cert: &Certificate, oracle: Option<&CrossCheck>) -> Value {
    let m = &cert.meta;
    let c = &cert.config;
    let mut v = json!({
        "meta": {
            "tool": m.tool,
            "version": m.version,
            "backend": m.backend,
            "timestamp": m.timestamp,
        },
        "config": {
            "rho": interval(&c.rho),
            "r": interval(&c.r),
            "delta": interval(&c.delta),
            "eps_ball": interval(&c.eps_ball),
            "eps_prime": opt_interval(&c.eps_prime),
            "eps_prime_used": opt_interval(&c.eps_prime_used),
            "kappa": interval(&c.kappa),
            "kappa_corollary": opt_interval(&c.kappa_corollary),
            "shift_p": interval(&c.shift),
            "table": c.table_source,
            "table_sha256": c.table_hash,
            "soft_slack": c.soft_slack,
            "radicand": c.radicand,
            "lambda_radius": c.lambda_radius,
            "t_override": opt_interval(&c.t_override),
        },
        "checks": cert.checks.iter().map(check).collect::<Vec<_>>(),
        "overall": {
            "pass": cert.overall_pass(),
            "verdict": cert.verdict().name(),
            "exit_code": cert.verdict().exit_code(),
        },
    });
    if let Some(x) = oracle {
        let p = &x.params;
        v["oracle"] = json!({
            "nx": p.nx,
            "ny": p.ny,
            "samples": p.samples,
            "rho": p.rho,
            "iterations": x.iterations,
            "residual": x.residual,
            "checks": x.lines.iter().map(|l| json!({
                "name": l.name,
                "value": l.value,
                "target": l.target,
                "pass": l.pass,
            })).collect::<Vec<_>>(),
            "pass": x.all_pass(),
        });
    }
    v
}

pub fn structured(cert: &Certificate, oracle: Option<&CrossCheck>) -> String {
    let mut s = serde_json::to_string_pretty(&structured_value(cert, oracle)).expect("json values serialize");
    s.push('\n');
    s
}
