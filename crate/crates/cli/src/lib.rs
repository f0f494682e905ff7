//! Command-line surface of `gabinv-core`.
//!
//! [`run`] parses an argument vector and returns a [`CommandResult`]; the
//! binary prints it as JSON on stdout, a short summary on stderr, and exits
//! with [`CommandResult::exit_code`]. Every subcommand's document is described
//! by a JSON schema under `schemas/`.

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use gabinv_core::abgroups::FiniteAbelianGroup;
use gabinv_core::arith::{primes_up_to, PrimePower};
use gabinv_core::curves::{self, CurveModel};
use gabinv_core::extensions::{self, TruncatedExtensionSpec, MAX_REALIZED_ORDER};
use gabinv_core::literal::{parse_group, parse_orders, parse_prime_power};
use gabinv_core::profinite::{self, GabInvariant, TqProfile};
use gabinv_core::{abgroups::MAX_SUBGROUP_ENUMERATION, Error};

/// Largest `--l-max` accepted.
pub const MAX_L_MAX: u64 = 10_000_000;

/// Integers beyond this are emitted as decimal strings.
const JSON_SAFE: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Bad flags or unparsable literals; exit code 2.
    Usage,
    /// A violated mathematical or size precondition; exit code 1.
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error { kind: ErrorKind, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    /// `null` when the command failed before producing anything.
    pub outputs: Value,
    pub status: Status,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match &self.status {
            Status::Ok => 0,
            Status::Error {
                kind: ErrorKind::Domain,
                ..
            } => 1,
            Status::Error {
                kind: ErrorKind::Usage,
                ..
            } => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("values are plain JSON")
    }

    /// One line per scalar output, for humans.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: ", self.command);
        match &self.status {
            Status::Ok => out.push_str("ok\n"),
            Status::Error { message, .. } => {
                out.push_str(&format!("failed (exit {}): {message}\n", self.exit_code()))
            }
        }
        if let Value::Object(map) = &self.outputs {
            for (k, v) in map {
                match v {
                    Value::Array(a) if a.len() > 8 || a.iter().any(Value::is_object) => {
                        out.push_str(&format!("  {k}: {} entries\n", a.len()))
                    }
                    Value::Object(_) => {}
                    v => out.push_str(&format!("  {k}: {v}\n")),
                }
            }
        }
        out
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gabinv",
    version,
    about = "Invariants of abelianized Galois groups of global function fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-prime thresholds of T_q.
    TqProfile {
        #[arg(long)]
        q: String,
        #[arg(long = "l-max")]
        l_max: u64,
    },
    /// d_q and p★.
    Dk {
        #[arg(long)]
        q: String,
    },
    /// Whether T_{q1} and T_{q2} are isomorphic.
    CompareTq {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
    },
    /// Whether G^ab of two function fields are isomorphic.
    CompareGab {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        cl1: String,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        cl2: String,
    },
    /// Recover (p, d, class group) from the profile.
    Reconstruct {
        #[arg(long)]
        q: String,
        #[arg(long)]
        cl: String,
        #[arg(long = "l-max", default_value_t = 50)]
        l_max: u64,
    },
    /// Primes l with N_q(l) > 1.
    Exceptional {
        #[arg(long)]
        q: String,
        #[arg(long = "l-max")]
        l_max: u64,
    },
    /// L-polynomial and class number of a curve file.
    Zeta {
        #[arg(long)]
        curve: String,
        #[arg(long = "check-extra")]
        check_extra: bool,
    },
    /// Check every entry of a corpus file.
    CorpusVerify {
        #[arg(long)]
        file: String,
    },
    /// An elliptic curve with exactly q points.
    Waterhouse {
        #[arg(long)]
        q: String,
    },
    /// The family y² = D_1···D_m and its 2-rank check.
    TwoRankFamily {
        #[arg(long)]
        q: String,
        #[arg(long)]
        m: u32,
    },
    /// Build a truncated extension B and test it.
    Extension {
        #[arg(long)]
        l: u64,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        orders: String,
        #[arg(long)]
        reorder: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::TqProfile { .. } => "tq-profile",
            Command::Dk { .. } => "dk",
            Command::CompareTq { .. } => "compare-tq",
            Command::CompareGab { .. } => "compare-gab",
            Command::Reconstruct { .. } => "reconstruct",
            Command::Exceptional { .. } => "exceptional",
            Command::Zeta { .. } => "zeta",
            Command::CorpusVerify { .. } => "corpus-verify",
            Command::Waterhouse { .. } => "waterhouse",
            Command::TwoRankFamily { .. } => "two-rank-family",
            Command::Extension { .. } => "extension",
        }
    }

    fn inputs(&self) -> Value {
        match self {
            Command::TqProfile { q, l_max } | Command::Exceptional { q, l_max } => {
                json!({"q": q, "l_max": l_max})
            }
            Command::Dk { q } | Command::Waterhouse { q } => json!({"q": q}),
            Command::CompareTq { q1, q2 } => json!({"q1": q1, "q2": q2}),
            Command::CompareGab { q1, cl1, q2, cl2 } => {
                json!({"q1": q1, "cl1": cl1, "q2": q2, "cl2": cl2})
            }
            Command::Reconstruct { q, cl, l_max } => json!({"q": q, "cl": cl, "l_max": l_max}),
            Command::Zeta { curve, check_extra } => {
                json!({"curve": curve, "check_extra": check_extra})
            }
            Command::CorpusVerify { file } => json!({"file": file}),
            Command::TwoRankFamily { q, m } => json!({"q": q, "m": m}),
            Command::Extension {
                l,
                a,
                orders,
                reorder,
            } => json!({"l": l, "A": a, "orders": orders, "reorder": reorder}),
        }
    }
}

/// A failure inside a subcommand, with the outputs produced so far.
struct Failure {
    kind: ErrorKind,
    message: String,
    outputs: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: ErrorKind::Domain,
            message: e.to_string(),
            outputs: Value::Null,
        }
    }
}

fn usage(e: Error) -> Failure {
    Failure {
        kind: ErrorKind::Usage,
        message: format!("invalid argument: {}", e.detail()),
        outputs: Value::Null,
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let shown = matches!(e.kind(), K::DisplayHelp | K::DisplayVersion);
            let text = e.render().to_string();
            return CommandResult {
                command: if shown { "help" } else { "gabinv" }.to_string(),
                inputs: Value::Null,
                outputs: if shown { json!({"text": text}) } else { Value::Null },
                status: if shown {
                    Status::Ok
                } else {
                    Status::Error {
                        kind: ErrorKind::Usage,
                        message: text.trim_end().to_string(),
                    }
                },
            };
        }
    };
    let command = cli.command.name().to_string();
    let inputs = cli.command.inputs();
    let (outputs, status) = match dispatch(&cli.command) {
        Ok(v) => (v, Status::Ok),
        Err(f) => (
            f.outputs,
            Status::Error {
                kind: f.kind,
                message: f.message,
            },
        ),
    };
    CommandResult {
        command,
        inputs,
        outputs,
        status,
    }
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::TqProfile { q, l_max } => tq_profile(q, *l_max),
        Command::Dk { q } => dk(q),
        Command::CompareTq { q1, q2 } => compare_tq(q1, q2),
        Command::CompareGab { q1, cl1, q2, cl2 } => compare_gab(q1, cl1, q2, cl2),
        Command::Reconstruct { q, cl, l_max } => reconstruct(q, cl, *l_max),
        Command::Exceptional { q, l_max } => exceptional(q, *l_max),
        Command::Zeta { curve, check_extra } => zeta(curve, *check_extra),
        Command::CorpusVerify { file } => corpus_verify(file),
        Command::Waterhouse { q } => waterhouse(q),
        Command::TwoRankFamily { q, m } => two_rank_family(q, *m),
        Command::Extension {
            l,
            a,
            orders,
            reorder,
        } => extension(*l, a, orders, *reorder),
    }
}

fn q_arg(s: &str) -> std::result::Result<PrimePower, Failure> {
    parse_prime_power(s).map_err(usage)
}

fn group_arg(s: &str) -> std::result::Result<FiniteAbelianGroup, Failure> {
    parse_group(s).map_err(usage)
}

fn l_max_arg(l_max: u64) -> std::result::Result<u64, Failure> {
    if l_max > MAX_L_MAX {
        return Err(usage(Error::Input(format!(
            "--l-max {l_max} exceeds the limit {MAX_L_MAX}"
        ))));
    }
    Ok(l_max)
}

fn int(x: u64) -> Value {
    if x > JSON_SAFE {
        Value::String(x.to_string())
    } else {
        json!(x)
    }
}

fn signed(x: i64) -> Value {
    if x.unsigned_abs() > JSON_SAFE {
        Value::String(x.to_string())
    } else {
        json!(x)
    }
}

fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => signed(v),
        None => Value::String(x.to_string()),
    }
}

fn big_u(x: &BigUint) -> Value {
    big(&BigInt::from(x.clone()))
}

fn field(q: PrimePower) -> Value {
    json!({"p": int(q.p()), "n": q.n(), "q": int(q.q())})
}

fn group(g: &FiniteAbelianGroup) -> Value {
    json!({
        "literal": g.to_string(),
        "factors": g.factors().iter().map(|&k| int(k)).collect::<Vec<_>>(),
    })
}

fn tq_profile(q: &str, l_max: u64) -> Outcome {
    let q = q_arg(q)?;
    let l_max = l_max_arg(l_max)?;
    let prof = TqProfile::new(q);
    let mut rows = Vec::new();
    for l in primes_up_to(l_max) {
        let at = prof.at(l)?;
        let exceptional = match at.threshold {
            Some(n) => n > 1 && !at.extra_m1,
            None => false,
        };
        rows.push(json!({
            "l": int(l),
            "threshold": at.threshold.map(int),
            "s_l": at.least_level().map(int),
            "extra_m1": at.extra_m1,
            "exceptional": exceptional,
        }));
    }
    Ok(json!({"field": field(q), "d": int(profinite::d_of(q).value()), "rows": rows}))
}

fn dk(q: &str) -> Outcome {
    let q = q_arg(q)?;
    Ok(json!({
        "field": field(q),
        "d": int(profinite::d_of(q).value()),
        "p_star": signed(profinite::p_star(q).value()),
    }))
}

/// Profiles are compared prime by prime up to this bound.
const PROFILE_WITNESS_BOUND: u64 = 1000;

fn compare_tq(q1: &str, q2: &str) -> Outcome {
    let (q1, q2) = (q_arg(q1)?, q_arg(q2)?);
    let (p1, p2) = (TqProfile::new(q1), TqProfile::new(q2));
    let mut first_difference = None;
    for l in primes_up_to(PROFILE_WITNESS_BOUND) {
        if p1.at(l)? != p2.at(l)? {
            first_difference = Some(l);
            break;
        }
    }
    let side = |q: PrimePower| json!({"p": int(q.p()), "d": int(profinite::d_of(q).value())});
    Ok(json!({
        "isomorphic": profinite::tq_isomorphic(q1, q2),
        "invariants": [side(q1), side(q2)],
        "first_differing_prime": first_difference.map(int),
        "profile_bound": int(PROFILE_WITNESS_BOUND),
    }))
}

fn invariant(inv: &GabInvariant) -> Value {
    json!({
        "p": int(inv.p()),
        "d": int(inv.d().value()),
        "cl_non_p": group(inv.recover_cl_non_p()),
    })
}

fn compare_gab(q1: &str, cl1: &str, q2: &str, cl2: &str) -> Outcome {
    let a = GabInvariant::new(q_arg(q1)?, &group_arg(cl1)?);
    let b = GabInvariant::new(q_arg(q2)?, &group_arg(cl2)?);
    let c = profinite::gab_compare(&a, &b);
    Ok(json!({
        "isomorphic": c.isomorphic(),
        "conditions": {
            "same_characteristic": c.same_characteristic,
            "same_d": c.same_d,
            "same_cl_non_p": c.same_cl_non_p,
        },
        "invariants": [invariant(&a), invariant(&b)],
    }))
}

fn reconstruct(q: &str, cl: &str, l_max: u64) -> Outcome {
    let q = q_arg(q)?;
    let l_max = l_max_arg(l_max)?;
    let inv = GabInvariant::new(q, &group_arg(cl)?);
    let r = profinite::reconstruct(q, &inv, l_max)?;
    let vals: Vec<Value> = r
        .valuations
        .iter()
        .map(|v| {
            json!({"l": int(v.l), "s_l": int(v.s_l), "ord_l_d": int(v.ord_l_d), "expected": int(v.expected)})
        })
        .collect();
    Ok(json!({
        "p": int(r.p),
        "d": int(inv.d().value()),
        "d_recovered": int(r.d_recovered),
        "valuations": vals,
        "cl_non_p": group(&r.cl_non_p),
        "consistent": r.consistent(&inv),
    }))
}

fn exceptional(q: &str, l_max: u64) -> Outcome {
    let q = q_arg(q)?;
    let l_max = l_max_arg(l_max)?;
    let primes = profinite::exceptional_scan(q, l_max)?;
    // q ≡ 3 (mod 4): a_{2,1} is infinite on its own and 2 is reported separately
    let two_anomalous = q.p() != 2 && q.q() % 4 == 3 && l_max >= 2;
    Ok(json!({
        "primes": primes.into_iter().map(int).collect::<Vec<_>>(),
        "two_anomalous": two_anomalous,
    }))
}

fn read_file(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        kind: ErrorKind::Usage,
        message: format!("cannot read {path}: {e}"),
        outputs: Value::Null,
    })
}

fn curve_value(c: &CurveModel) -> Value {
    serde_json::to_value(c).expect("curve models serialize")
}

fn zeta(path: &str, check_extra: bool) -> Outcome {
    let text = read_file(path)?;
    let curve: CurveModel =
        serde_json::from_str(&text).map_err(|e| Failure::from(Error::Input(e.to_string())))?;
    let r = curves::zeta_report(&curve, check_extra)?;
    let extra = match (&r.extra, check_extra) {
        (Some(x), _) => json!({
            "degree": x.degree,
            "predicted": signed(x.predicted),
            "counted": int(x.counted),
            "ok": x.ok,
        }),
        (None, true) => json!({"skipped": "q^(g+1) exceeds the counting cap"}),
        (None, false) => Value::Null,
    };
    Ok(json!({
        "family": curve.family().name(),
        "field": field(curve.field()),
        "genus": curve.genus(),
        "counts": r.counts.iter().map(|&n| int(n)).collect::<Vec<_>>(),
        "l_polynomial": r.l_polynomial.coeffs().iter().map(big).collect::<Vec<_>>(),
        "class_number": big(&r.class_number),
        "functional_equation": r.functional_equation,
        "weil_bound": r.weil_bound,
        "extra": extra,
    }))
}

fn corpus_verify(path: &str) -> Outcome {
    let text = read_file(path)?;
    let entries = curves::parse_corpus(&text)?;
    let mut rows = Vec::with_capacity(entries.len());
    let mut failed = 0;
    for e in &entries {
        let h = curves::class_number(&e.curve)?;
        let pass = h == BigUint::from(e.expected_h);
        failed += !pass as usize;
        rows.push(json!({
            "label": e.label,
            "family": e.curve.family().name(),
            "field": field(e.curve.field()),
            "genus": e.curve.genus(),
            "class_number": big_u(&h),
            "expected_h": int(e.expected_h),
            "pass": pass,
        }));
    }
    let outputs = json!({"entries": rows, "all_pass": failed == 0});
    if failed > 0 {
        return Err(Failure {
            kind: ErrorKind::Domain,
            message: format!("{failed} of {} entries have h ≠ expected_h", entries.len()),
            outputs,
        });
    }
    Ok(outputs)
}

fn waterhouse(q: &str) -> Outcome {
    let q = q_arg(q)?;
    let curve = curves::waterhouse_search(q)?;
    let structure = curves::elliptic_group_structure(&curve)?;
    let points = curves::count_points(&curve, 1)?;
    let h = curves::class_number(&curve)?;
    Ok(json!({
        "field": field(q),
        "curve": curve_value(&curve),
        "points": int(points),
        "trace": signed(q.q() as i64 + 1 - points as i64),
        "group": group(&structure),
        "class_number": big_u(&h),
    }))
}

fn two_rank_family(q: &str, m: u32) -> Outcome {
    let q = q_arg(q)?;
    let fam = curves::two_rank_family(q, m)?;
    Ok(json!({
        "field": field(q),
        "m": m,
        "degrees": fam.degrees,
        "genus": fam.curve.genus(),
        "curve": curve_value(&fam.curve),
        "class_number": big_u(&fam.class_number),
        "divisor": int(fam.divisor),
        "check": fam.check,
    }))
}

fn extension(l: u64, a: &str, orders: &str, reorder: Option<u64>) -> Outcome {
    let a = group_arg(a)?;
    let orders = parse_orders(orders).map_err(usage)?;
    let spec = TruncatedExtensionSpec::new(l, a, orders)?;
    let b = extensions::construct_b(&spec)?;
    let seed = reorder.unwrap_or(0);
    let alt = spec.reordered(seed);
    let demo = extensions::uniqueness_demo(&spec, &alt)?;
    let order = b.order_big();
    let small = order <= BigUint::from(MAX_REALIZED_ORDER);
    let (direct, dual) = if order <= BigUint::from(MAX_SUBGROUP_ENUMERATION) {
        let r = extensions::realize(&spec)?;
        (
            Some(extensions::is_totally_non_split(&r.table, &r.a)?),
            Some(r.dual_is_totally_non_split()?),
        )
    } else {
        (None, None)
    };
    let core = if small {
        let r = extensions::realize(&spec)?;
        let c = extensions::divisible_core(&r.table, l, spec.covered_level())?;
        Some(json!({
            "structure": group(&r.table.subgroup_structure(&c)?),
            "contains_a": r.a.elements.iter().all(|&x| c.contains(x)),
        }))
    } else {
        None
    };
    let assignment = |s: &TruncatedExtensionSpec| -> Value {
        s.assignment()
            .iter()
            .map(|x| x.iter().map(|&c| int(c)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into()
    };
    Ok(json!({
        "l": int(l),
        "A": group(spec.a()),
        "orders": spec.orders().iter().map(|&k| int(k)).collect::<Vec<_>>(),
        "assignment": assignment(&spec),
        "covered_level": spec.covered_level(),
        "valid": spec.is_valid(),
        "B": group(&b),
        "order": big_u(&order),
        "totally_non_split": {"dual": dual, "direct": direct},
        "divisible_core": core,
        "uniqueness": {
            "seed": int(seed),
            "alternative_assignment": assignment(&alt),
            "B_alt": group(&demo.b_alt),
            "isomorphic": demo.isomorphic,
        },
    }))
}
