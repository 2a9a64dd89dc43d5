//! The full certification pipeline and its certificate.
//!
//! Stages run in data order: seed, midpoint, contraction, scalings,
//! compactness. A stage error is recorded as a failed check and every
//! check that needs its output is marked skipped, so a certificate is
//! always produced for a valid configuration.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::compactness::{certify_compactness, CompactnessBounds, CompactnessInput};
use crate::contraction::{cauchy_radii, cmp_rhs, dc0_and_m, eps_n_bound, i123_bounds};
use crate::error::{Error, Result};
use crate::ivreal::{dec, Interval};
use crate::midpoint::{
    f1f2_bounds, radicand_center, radicand_error, split_abc, z0_analytic_check, z0_at_origin, z0_sup_bound,
    RadicandBound,
};
use crate::scalings::{direct_c_bound, lambda_enclosure, mu_enclosure, LambdaBounds, PerturbationRadius};
use crate::seedmap::{GeneratingSeed, SeedTable};

pub const BACKEND: &str = "binary64 outward widening (TwoSum/TwoProduct)";

/// Published constants the certified bounds are compared against.
pub mod targets {
    pub const T_SUP: &str = "1.562789916992188";
    pub const M_BAR: &str = "1.0430755615234375";
    pub const EPS_N: &str = "0.0137615203857422";
    pub const D_BAR: &str = "0.0125999450683594";
    pub const LAMBDA: (&str, &str) = ("-0.276069164276123", "-0.222213745117188");
    pub const MU: (&str, &str) = ("0.000406771898269653", "0.120654106140137");
    /// Absolute slack on the scaling enclosures.
    pub const SCALING_SLACK: f64 = 1e-4;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub rho: Interval,
    pub r: Interval,
    pub delta: Interval,
    pub eps_ball: Interval,
    pub kappa: Interval,
    /// Second inflation factor, certified alongside `kappa`.
    pub kappa_corollary: Option<Interval>,
    /// `None` derives `eps'` from the two-pass rule.
    pub eps_prime: Option<Interval>,
    pub shift: Interval,
    pub table: SeedTable,
    /// Label echoed for the table source (`builtin` or a path).
    pub table_source: String,
    /// Relative slack on the soft targets.
    pub soft_slack: f64,
    pub radicand: RadicandBound,
    pub lambda_radius: PerturbationRadius,
    /// Replaces the certified midpoint bound by a larger one.
    pub t_override: Option<Interval>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            rho: dec("1.75"),
            r: dec("0.483119964599609"),
            delta: dec("0.00405550003051758"),
            eps_ball: dec("0.01465"),
            kappa: dec("1.0699996948242188"),
            kappa_corollary: Some(dec("1.0699462890625")),
            eps_prime: None,
            shift: Interval::ZERO,
            table: SeedTable::builtin(),
            table_source: String::from("builtin"),
            soft_slack: 1e-3,
            radicand: RadicandBound::Joint,
            lambda_radius: PerturbationRadius::Single,
            t_override: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(String::from(m)));
        if !self.rho.is_positive() {
            return bad("rho must be positive");
        }
        if self.r.lo() < 0.0 {
            return bad("r must be nonnegative");
        }
        if self.delta.lo() < 0.0 {
            return bad("delta must be nonnegative");
        }
        if !self.eps_ball.is_positive() {
            return bad("eps-ball must be positive");
        }
        for k in core::iter::once(&self.kappa).chain(self.kappa_corollary.iter()) {
            if k.lo() < 1.0 {
                return bad("kappa must be at least 1");
            }
        }
        if let Some(e) = self.eps_prime {
            if !e.is_positive() {
                return bad("eps-prime must be positive");
            }
        }
        if !(self.soft_slack >= 0.0 && self.soft_slack.is_finite()) {
            return bad("soft-slack must be a nonnegative number");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Part of the overall verdict.
    Mandatory,
    /// Compared with a published constant.
    Target,
    /// Recorded for inspection only.
    Info,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Mandatory => "mandatory",
            CheckKind::Target => "target",
            CheckKind::Info => "info",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub kind: CheckKind,
    pub anchor: &'static str,
    pub computed: Option<Interval>,
    pub target: String,
    pub strict_pass: bool,
    pub soft_pass: bool,
    pub status: Status,
    /// Error text when the bound could not be computed.
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every mandatory and target check passes strictly.
    Strict,
    /// Mandatory checks pass; some target needs its slack or misses.
    Soft,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Strict => 0,
            Verdict::Soft => 1,
            Verdict::Fail => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Strict => "PASS",
            Verdict::Soft => "SOFT",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub backend: String,
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigEcho {
    pub rho: Interval,
    pub r: Interval,
    pub delta: Interval,
    pub eps_ball: Interval,
    /// `None` when derived automatically.
    pub eps_prime: Option<Interval>,
    pub eps_prime_used: Option<Interval>,
    pub kappa: Interval,
    pub kappa_corollary: Option<Interval>,
    pub shift: Interval,
    pub table_source: String,
    pub table_hash: Option<String>,
    pub soft_slack: f64,
    pub radicand: &'static str,
    pub lambda_radius: &'static str,
    pub t_override: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub meta: Meta,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
}

/// The checks whose strict conjunction is the overall result.
pub const MANDATORY: [&str; 10] = [
    "z0_analytic",
    "z0_sup",
    "dc0_lt_1",
    "cmp_holds",
    "lambda_in_range",
    "mu_in_range",
    "k0_lt_1",
    "epsPrime_consistent",
    "lambda_domain",
    "compactness_final",
];

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.kind == CheckKind::Mandatory).all(|c| c.strict_pass)
    }

    pub fn verdict(&self) -> Verdict {
        if !self.overall_pass() {
            return Verdict::Fail;
        }
        let targets_strict = self.checks.iter().filter(|c| c.kind == CheckKind::Target).all(|c| c.strict_pass);
        if targets_strict {
            Verdict::Strict
        } else {
            Verdict::Soft
        }
    }

    /// Line-oriented rendering; identical inputs give identical bytes.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let m = &self.meta;
        let _ = writeln!(out, "# {} {} backend=\"{}\"", m.tool, m.version, m.backend);
        if let Some(ts) = &m.timestamp {
            let _ = writeln!(out, "# timestamp {ts}");
        }
        let c = &self.config;
        let opt = |v: &Option<Interval>| v.map(|i| i.to_string()).unwrap_or_else(|| String::from("auto"));
        let _ = writeln!(
            out,
            "# config rho={} r={} delta={} eps={} eps_prime={} kappa={} kappa_corollary={} p={}",
            c.rho,
            c.r,
            c.delta,
            c.eps_ball,
            opt(&c.eps_prime),
            c.kappa,
            c.kappa_corollary.map(|k| k.to_string()).unwrap_or_else(|| String::from("none")),
            c.shift
        );
        let _ = writeln!(
            out,
            "# config table={} table_sha256={} soft_slack={} radicand={} lambda_radius={}{}",
            c.table_source,
            c.table_hash.as_deref().unwrap_or("none"),
            c.soft_slack,
            c.radicand,
            c.lambda_radius,
            c.t_override.map(|t| format!(" t_override={t}")).unwrap_or_default()
        );
        for ch in &self.checks {
            let computed = ch.computed.map(|i| i.to_string()).unwrap_or_else(|| String::from("none"));
            let _ = write!(
                out,
                "{} {} computed={} target={} anchor=\"{}\"",
                ch.name,
                ch.status.name(),
                computed,
                ch.target,
                ch.anchor
            );
            if ch.kind != CheckKind::Mandatory {
                let _ = write!(out, " kind={}", ch.kind.name());
            }
            if ch.kind == CheckKind::Target && ch.status != Status::Skip {
                let _ = write!(out, " soft={}", if ch.soft_pass { "PASS" } else { "FAIL" });
            }
            if let Some(n) = &ch.note {
                let _ = write!(out, " note=\"{n}\"");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "overall {}", self.verdict().name());
        out
    }
}

fn hex(x: f64) -> String {
    crate::ivreal::format_hex(x)
}

/// Adds `rel` relative slack to `x`, rounding away from zero.
fn inflate_rel(x: f64, rel: f64) -> f64 {
    let y = x * (1.0 + rel);
    if y >= 0.0 {
        y.next_up()
    } else {
        y.next_down()
    }
}

struct Recorder {
    checks: Vec<CheckRecord>,
    slack: f64,
}

impl Recorder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        name: &str,
        kind: CheckKind,
        anchor: &'static str,
        computed: Option<Interval>,
        target: String,
        strict: bool,
        soft: bool,
    ) {
        self.checks.push(CheckRecord {
            name: String::from(name),
            kind,
            anchor,
            computed,
            target,
            strict_pass: strict,
            soft_pass: soft,
            status: if strict { Status::Pass } else { Status::Fail },
            note: None,
        });
    }

    fn fail(&mut self, name: &str, kind: CheckKind, anchor: &'static str, target: String, err: &Error) {
        self.push(name, kind, anchor, None, target, false, false);
        self.checks.last_mut().unwrap().note = Some(err.to_string());
    }

    fn skip(&mut self, name: &str, kind: CheckKind, anchor: &'static str, target: String) {
        self.push(name, kind, anchor, None, target, false, false);
        self.checks.last_mut().unwrap().status = Status::Skip;
    }

    /// `computed.hi < bound` (or `<=`), soft with relative slack on the bound.
    fn upper(
        &mut self,
        name: &str,
        kind: CheckKind,
        anchor: &'static str,
        v: Result<Interval>,
        bound: &str,
        strict_lt: bool,
    ) {
        let b = dec(bound);
        let desc = format!("{}{}", if strict_lt { "<" } else { "<=" }, bound);
        match v {
            Ok(x) => {
                let strict = if strict_lt { x.hi() < b.lo() } else { x.hi() <= b.lo() };
                let soft = match kind {
                    CheckKind::Target => x.hi() <= inflate_rel(b.hi(), self.slack),
                    _ => strict,
                };
                self.push(name, kind, anchor, Some(x), desc, strict, soft);
            }
            Err(e) => self.fail(name, kind, anchor, desc, &e),
        }
    }

    /// `computed.hi < bound` against a computed bound.
    #[allow(clippy::too_many_arguments)]
    fn below(
        &mut self,
        name: &str,
        kind: CheckKind,
        anchor: &'static str,
        v: Result<Interval>,
        bound: Result<Interval>,
        what: &str,
        strict_lt: bool,
    ) {
        match (v, bound) {
            (Ok(x), Ok(b)) => {
                let strict = if strict_lt { x.hi() < b.lo() } else { x.hi() <= b.lo() };
                let desc = format!("{}{}={}", if strict_lt { "<" } else { "<=" }, what, hex(b.lo()));
                self.push(name, kind, anchor, Some(x), desc, strict, strict);
            }
            (Err(e), _) | (_, Err(e)) => self.fail(name, kind, anchor, format!("<{what}"), &e),
        }
    }

    /// `computed.lo > 0`.
    fn positive(&mut self, name: &str, kind: CheckKind, anchor: &'static str, v: Result<Interval>, extra: bool) {
        let desc = String::from(">0");
        match v {
            Ok(x) => {
                let ok = x.is_positive() && extra;
                self.push(name, kind, anchor, Some(x), desc, ok, ok);
            }
            Err(e) => self.fail(name, kind, anchor, desc, &e),
        }
    }

    /// `computed` inside `(lo, hi)` open.
    fn open_range(&mut self, name: &str, kind: CheckKind, anchor: &'static str, v: Result<Interval>, lo: f64, hi: f64) {
        let desc = format!("in({lo},{hi})");
        match v {
            Ok(x) => {
                let ok = x.lo() > lo && x.hi() < hi;
                self.push(name, kind, anchor, Some(x), desc, ok, ok);
            }
            Err(e) => self.fail(name, kind, anchor, desc, &e),
        }
    }

    /// `computed` inside `[lo, hi]`, soft with absolute slack.
    fn within(
        &mut self,
        name: &str,
        kind: CheckKind,
        anchor: &'static str,
        v: Result<Interval>,
        range: (&str, &str),
        slack: f64,
    ) {
        let (lo, hi) = (dec(range.0), dec(range.1));
        let desc = format!("subset[{},{}]", range.0, range.1);
        match v {
            Ok(x) => {
                let strict = x.lo() >= lo.hi() && x.hi() <= hi.lo();
                let soft = x.lo() >= (lo.lo() - slack).next_down() && x.hi() <= (hi.hi() + slack).next_up();
                self.push(name, kind, anchor, Some(x), desc, strict, soft);
            }
            Err(e) => self.fail(name, kind, anchor, desc, &e),
        }
    }

    fn info(&mut self, name: &str, anchor: &'static str, v: Result<Interval>) {
        match v {
            Ok(x) => self.push(name, CheckKind::Info, anchor, Some(x), String::from("record"), true, true),
            Err(e) => self.fail(name, CheckKind::Info, anchor, String::from("record"), &e),
        }
    }
}

use CheckKind::{Info, Mandatory, Target};

const A_ANALYTIC: &str = "midpoint quadratic root is analytic on the r-bidisk";
const A_SUP: &str = "sup of the midpoint root on the r-bidisk";
const A_DC0: &str = "derivative of the Newton map at the midpoint root";
const A_CMP: &str = "contraction mapping condition on the eps-ball";
const A_M: &str = "inverse bound of the linearized midpoint operator";
const A_EPSN: &str = "first Newton increment over the delta-ball";
const A_DN: &str = "derivative of the Newton map on the eps-ball";
const A_LAMBDA: &str = "spatial scaling enclosure over the delta-ball";
const A_MU: &str = "normalization scaling enclosure over the delta-ball";
const A_K0: &str = "increment contraction factor on the inflated bidisk";
const A_EPSP: &str = "a posteriori increment sum against eps-prime";
const A_LDOM: &str = "scaled domain stays inside the rho-bidisk";
const A_FINAL: &str = "inflated midpoint reach stays inside the rho-bidisk";

struct Midpoint {
    t: Interval,
    z00: Interval,
}

fn midpoint_stage(rec: &mut Recorder, seed: &GeneratingSeed, cfg: &Config) -> Option<Midpoint> {
    let split = match split_abc(seed) {
        Ok(s) => s,
        Err(e) => {
            rec.fail("z0_analytic", Mandatory, A_ANALYTIC, String::from(">0"), &e);
            rec.skip("z0_sup", Mandatory, A_SUP, format!("<{}", targets::T_SUP));
            return None;
        }
    };
    let r = &cfg.r;
    let margin = radicand_error(&split, r, cfg.radicand).and_then(|f| Ok(radicand_center(&split)?.sub(&f)?));
    let analytic = z0_analytic_check(&split, r, cfg.radicand);
    rec.positive("z0_analytic", Mandatory, A_ANALYTIC, margin, analytic);
    let t = z0_sup_bound(&split, r, cfg.radicand);
    let t_ok = t.as_ref().ok().copied();
    rec.upper("z0_sup", Mandatory, A_SUP, t, targets::T_SUP, true);

    let split_margin = f1f2_bounds(&split, r).and_then(|(a, b)| Ok(radicand_center(&split)?.sub(&a.add(&b)?)?));
    rec.info("radicand_split_margin", "radicand margin with the two parts bounded separately", split_margin);
    let z00 = z0_at_origin(&split);
    let z00_ok = z00.as_ref().ok().copied();
    rec.info("z00", "midpoint root at the origin", z00);
    if let Some(z) = z00_ok {
        let round = seed.tau(&z).and_then(|u| seed.nu(&u));
        rec.info("nu_tau_z00", "inverse branch applied to tau at the midpoint root", round);
    }

    if !analytic {
        return None;
    }
    let mut t = t_ok?;
    if let Some(o) = cfg.t_override {
        if o.lo() < t.hi() {
            rec.fail(
                "t_override",
                Info,
                "override of the midpoint bound",
                String::from(">=t"),
                &Error::Config(String::from("t override below the certified bound")),
            );
            return None;
        }
        t = o;
    }
    Some(Midpoint { t, z00: z00_ok? })
}

struct Contraction {
    mbar: Interval,
}

fn contraction_stage(
    rec: &mut Recorder,
    seed: &GeneratingSeed,
    cfg: &Config,
    mp: Option<&Midpoint>,
) -> Option<Contraction> {
    let names: [(&str, CheckKind, &'static str, String); 5] = [
        ("dc0_lt_1", Mandatory, A_DC0, String::from("<1")),
        ("cmp_holds", Mandatory, A_CMP, String::from("<(1-Dbar)eps/Mbar")),
        ("m_bound", Target, A_M, format!("<={}", targets::M_BAR)),
        ("eps_n", Target, A_EPSN, format!("<={}", targets::EPS_N)),
        ("dn_bound", Target, A_DN, format!("<={}", targets::D_BAR)),
    ];
    let Some(mp) = mp else {
        for (n, k, a, d) in names {
            rec.skip(n, k, a, d);
        }
        return None;
    };
    let (r, t, delta, eps) = (&cfg.r, &mp.t, &cfg.delta, &cfg.eps_ball);
    let (dc0, mbar) = match dc0_and_m(seed, r, t) {
        Ok(v) => v,
        Err(e) => {
            let mut it = names.into_iter();
            let (n, k, a, d) = it.next().unwrap();
            rec.fail(n, k, a, d, &e);
            for (n, k, a, d) in it {
                rec.skip(n, k, a, d);
            }
            return None;
        }
    };
    rec.upper("dc0_lt_1", Mandatory, A_DC0, Ok(dc0), "1", true);
    let eps_n = eps_n_bound(seed, delta, r, t);
    let deriv = i123_bounds(seed, delta, r, t, eps, &mbar);
    let dbar = deriv.as_ref().map(|d| d.dbar).map_err(|e| e.clone());
    let rhs = dbar.clone().and_then(|d| cmp_rhs(&d, &mbar, eps));
    let dbar_lt_1 = dbar.as_ref().map(|d| d.hi() < 1.0).unwrap_or(false);
    rec.below("cmp_holds", Mandatory, A_CMP, eps_n.clone(), rhs.clone(), "(1-Dbar)eps/Mbar", true);
    if !dbar_lt_1 {
        let last = rec.checks.last_mut().unwrap();
        last.strict_pass = false;
        last.soft_pass = false;
        last.status = Status::Fail;
    }
    rec.upper("m_bound", Target, A_M, Ok(mbar), targets::M_BAR, false);
    rec.upper("eps_n", Target, A_EPSN, eps_n.clone(), targets::EPS_N, false);
    rec.upper("dn_bound", Target, A_DN, dbar, targets::D_BAR, false);

    if let Ok(d) = &deriv {
        rec.info("s_shadow", "shadow radius t + Mbar eps", Ok(d.cauchy.s));
        rec.info("i1", "first derivative term", Ok(d.i1));
        rec.info("i2", "second derivative term", Ok(d.i2));
        rec.info("i3", "third derivative term", Ok(d.i3));
    }
    match cauchy_radii(seed, delta, r, t, eps, &mbar) {
        Ok(cr) => {
            rec.info("cauchy_radius_r", "Cauchy disk radius for the first term", Ok(cr.r));
            rec.info("cauchy_radius_r_tilde", "Cauchy disk radius for the second term", Ok(cr.r_tilde));
            rec.info("cauchy_radius_r_hat", "Cauchy disk radius for the third term", Ok(cr.r_hat));
        }
        Err(e) => {
            rec.fail("cauchy_radius_r", Info, "Cauchy disk radius for the first term", String::from("record"), &e)
        }
    }
    let holds = rec.check_passed("cmp_holds");
    holds.then_some(Contraction { mbar })
}

impl Recorder {
    fn check_passed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && c.strict_pass)
    }
}

fn scalings_stage(
    rec: &mut Recorder,
    seed: &GeneratingSeed,
    cfg: &Config,
    mp: Option<&Midpoint>,
    ct: Option<&Contraction>,
) -> Option<LambdaBounds> {
    let lb = lambda_enclosure(seed, &cfg.delta, cfg.lambda_radius);
    let lam = lb.as_ref().map(|l| l.lambda).map_err(|e| e.clone());
    rec.open_range("lambda_in_range", Mandatory, A_LAMBDA, lam.clone(), -1.0, 0.0);
    let mu_target = (String::from(">0"), format!("subset[{},{}]", targets::MU.0, targets::MU.1));
    let mu = match (mp, ct) {
        (Some(mp), Some(ct)) => Some(mu_enclosure(seed, &cfg.delta, &ct.mbar, &cfg.eps_ball, &mp.z00)),
        _ => None,
    };
    match &mu {
        Some(m) => rec.positive("mu_in_range", Mandatory, A_MU, m.clone(), true),
        None => rec.skip("mu_in_range", Mandatory, A_MU, mu_target.0.clone()),
    }
    rec.within("lambda_published", Target, A_LAMBDA, lam, targets::LAMBDA, targets::SCALING_SLACK);
    match mu {
        Some(m) => rec.within("mu_published", Target, A_MU, m, targets::MU, targets::SCALING_SLACK),
        None => rec.skip("mu_published", Target, A_MU, mu_target.1),
    }
    if let Ok(l) = &lb {
        rec.info("lambda_truncated", "root of the truncated scaling quadratic", Ok(l.lambda_s1));
        rec.info("delta_tilde", "truncation norm plus delta", Ok(l.delta_tilde));
        rec.info("lambda_shift", "shift of the scaling root over the ball", Ok(l.shift));
    }
    rec.info("direct_c_bound", "direct bound on the shift equation constant", direct_c_bound(seed, &cfg.delta));
    let ok = rec.check_passed("lambda_in_range");
    lb.ok().filter(|_| ok)
}

fn compactness_stage(
    rec: &mut Recorder,
    seed: &GeneratingSeed,
    cfg: &Config,
    kappa: &Interval,
    suffix: &str,
    kind: CheckKind,
    ready: Option<&LambdaBounds>,
) -> Option<CompactnessBounds> {
    let n = |base: &str| format!("{base}{suffix}");
    let rho_desc = |op: &str| format!("{op}{}", hex(cfg.rho.lo()));
    let Some(lb) = ready else {
        rec.skip(&n("k0_lt_1"), kind, A_K0, String::from("<1"));
        rec.skip(&n("epsPrime_consistent"), kind, A_EPSP, String::from("<=eps'"));
        rec.skip(&n("lambda_domain"), kind, A_LDOM, rho_desc("<="));
        rec.skip(&n("compactness_final"), kind, A_FINAL, rho_desc("<"));
        return None;
    };
    let input = CompactnessInput {
        seed,
        kappa: *kappa,
        r: cfg.r,
        delta: cfg.delta,
        lambda: lb.lambda,
        method: cfg.radicand,
        eps_prime: cfg.eps_prime,
    };
    let cb = match certify_compactness(&input) {
        Ok(cb) => cb,
        Err(e) => {
            rec.fail(&n("k0_lt_1"), kind, A_K0, String::from("<1"), &e);
            rec.skip(&n("epsPrime_consistent"), kind, A_EPSP, String::from("<=eps'"));
            let ldom = lb.lambda.mag_interval().mul(&kappa.mul(&seed.rho).unwrap_or(Interval::ZERO));
            rec.below(&n("lambda_domain"), kind, A_LDOM, ldom.map_err(Error::from), Ok(cfg.rho), "rho", false);
            rec.skip(&n("compactness_final"), kind, A_FINAL, rho_desc("<"));
            return None;
        }
    };
    rec.upper(&n("k0_lt_1"), kind, A_K0, Ok(cb.displacement.k0), "1", true);
    rec.below(&n("epsPrime_consistent"), kind, A_EPSP, Ok(cb.displacement.sigma), Ok(cb.eps_prime), "eps'", false);
    let ldom = lb.lambda.mag_interval().mul(&cb.primed.rho_prime).map_err(Error::from);
    rec.below(&n("lambda_domain"), kind, A_LDOM, ldom, Ok(cfg.rho), "rho", false);
    let reach = cb.primed.t_prime.add(&cb.displacement.gamma_prime).map_err(Error::from);
    rec.below(&n("compactness_final"), kind, A_FINAL, reach, Ok(cfg.rho), "rho", true);
    if !cb.holds {
        let last = rec.checks.last_mut().unwrap();
        last.strict_pass = false;
        last.soft_pass = false;
        last.status = Status::Fail;
    }
    rec.info(&n("r_prime"), "inflated inner radius", Ok(cb.primed.r_prime));
    rec.info(&n("t_prime"), "midpoint sup on the inflated bidisk", Ok(cb.primed.t_prime));
    rec.info(&n("m_bar_prime"), "operator inverse bound on the inflated bidisk", Ok(cb.mbar));
    rec.info(&n("eps_prime"), "a priori increment bound", Ok(cb.eps_prime));
    rec.info(&n("dz0"), "first increment on the inflated bidisk", Ok(cb.constants.dz0));
    rec.info(&n("c1"), "quadratic increment constant", Ok(cb.constants.c1));
    rec.info(&n("c2"), "linear increment constant", Ok(cb.constants.c2));
    rec.info(&n("gamma_prime"), "total displacement times Mbar", Ok(cb.displacement.gamma_prime));
    Some(cb)
}

/// Runs every stage; only configuration and seed errors abort.
pub fn run_pipeline(cfg: &Config) -> Result<Certificate> {
    cfg.validate()?;
    let seed = GeneratingSeed::load(cfg.table.clone(), cfg.rho, cfg.shift)?;
    let mut rec = Recorder { checks: Vec::new(), slack: cfg.soft_slack };

    let mp = midpoint_stage(&mut rec, &seed, cfg);
    let ct = contraction_stage(&mut rec, &seed, cfg, mp.as_ref());
    let lb = scalings_stage(&mut rec, &seed, cfg, mp.as_ref(), ct.as_ref());
    // compactness needs the midpoint fixed point from the contraction stage
    let ready = if ct.is_some() { lb.as_ref() } else { None };
    let main = compactness_stage(&mut rec, &seed, cfg, &cfg.kappa, "", Mandatory, ready);
    if let Some(k2) = &cfg.kappa_corollary {
        compactness_stage(&mut rec, &seed, cfg, k2, "_corollary", Target, ready);
    }

    Ok(Certificate {
        meta: Meta {
            tool: String::from("pdcert"),
            version: String::from(env!("CARGO_PKG_VERSION")),
            backend: String::from(BACKEND),
            timestamp: None,
        },
        config: ConfigEcho {
            rho: cfg.rho,
            r: cfg.r,
            delta: cfg.delta,
            eps_ball: cfg.eps_ball,
            eps_prime: cfg.eps_prime,
            eps_prime_used: main.map(|m| m.eps_prime),
            kappa: cfg.kappa,
            kappa_corollary: cfg.kappa_corollary,
            shift: cfg.shift,
            table_source: cfg.table_source.clone(),
            table_hash: None,
            soft_slack: cfg.soft_slack,
            radicand: cfg.radicand.name(),
            lambda_radius: cfg.lambda_radius.name(),
            t_override: cfg.t_override,
        },
        checks: rec.checks,
    })
}
