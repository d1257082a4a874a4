//! Command-line front end.
//!
//! Exit codes: `0` member or success, `1` non-member (or predicate false),
//! `2` usage, parse or parameter error.

pub mod render;

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::conditions::{
    bridc_timeline, cc_bdc, cc_bridc, cc_bridc_disjuncts, cc_witness, check_bdc, check_bridc,
    check_dridc_form, check_fdc, check_ridc, nzc, solve_dridc, BdcParams, BridcParams,
    CheckReport, DridcForm, RidcParams,
};
use crate::elements::{
    chain_apply, compose_chain, membership, ride_composition_counterexample, sample,
    DelayElement, ElementKind,
};
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::syntax::{
    format_chain, format_signal, parse_chain, parse_element, parse_intervals, parse_signals,
    ParamLiteral,
};
use crate::time::TimePoint;

#[derive(Parser, Debug)]
#[command(name = "delaycalc", version, about = "Exact delay calculus for binary signals")]
pub struct Cli {
    /// Seed for the randomised commands; 0 selects the minimum solution.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Re-check results before printing them.
    #[arg(long, global = true)]
    pub verify: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Data,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether X is an admissible output for input U.
    Check {
        /// `bdc(..)`, `ridc(..)`, `bridc(..;..)` or an element literal.
        params: String,
        /// Signal file or inline interval list.
        u: String,
        /// Candidate output, same syntax as U.
        x: String,
        /// Check one of the six deterministic inertial systems (a..f)
        /// instead of the bounded condition; needs `bdc(..)` or `dride(..)`.
        #[arg(long)]
        form: Option<DridcForm>,
    },
    /// Print the output of an element for input U.
    Solve { element: String, u: String },
    /// Thread U through a `;`-separated chain of elements.
    Compose { chain: String, u: String },
    /// Evaluate the parameter predicate of a literal.
    Cc { params: String },
    /// Draw waveforms.
    Render {
        signals: Vec<String>,
        #[arg(long, default_value = "1")]
        step: TimePoint,
        #[arg(long, default_value_t = 40)]
        width: usize,
        #[arg(long)]
        svg: bool,
        /// Bundled demo instead of signal arguments (`bridc-timeline`).
        #[arg(long)]
        demo: Option<String>,
    },
    /// Reproduce a bundled counterexample (`ride-composition`).
    Counterexample { name: String },
}

impl clap::builder::ValueParserFactory for TimePoint {
    type Parser = fn(&str) -> std::result::Result<TimePoint, String>;
    fn value_parser() -> Self::Parser {
        |s| s.parse::<TimePoint>().map_err(|e| e.to_string())
    }
}

impl clap::builder::ValueParserFactory for DridcForm {
    type Parser = fn(&str) -> std::result::Result<DridcForm, String>;
    fn value_parser() -> Self::Parser {
        |s| s.parse::<DridcForm>().map_err(|e| e.to_string())
    }
}

/// Command outcome: text for humans, a JSON document for tools, and the
/// exit status.
struct Outcome {
    text: String,
    data: serde_json::Value,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Data => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.data).expect("plain JSON values")
                ),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { params, u, x, form } => cmd_check(params, u, x, *form),
        Command::Solve { element, u } => cmd_solve(element, u, cli.seed, cli.verify),
        Command::Compose { chain, u } => cmd_compose(chain, u, cli.seed),
        Command::Cc { params } => cmd_cc(params),
        Command::Render {
            signals,
            step,
            width,
            svg,
            demo,
        } => cmd_render(signals, step, *width, *svg, demo.as_deref()),
        Command::Counterexample { name } => cmd_counterexample(name),
    }
}

/// Signals named by `arg`: the contents of a file if one exists at that
/// path, otherwise an inline `NAME := ...` line or bare interval list.
fn load_signals(arg: &str, default_name: &str) -> Result<Vec<(String, Signal)>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?;
        let signals = parse_signals(&text)?;
        if signals.is_empty() {
            return Err(Error::Parse(format!("{arg} contains no signal")));
        }
        return Ok(signals);
    }
    if arg.contains(":=") {
        return parse_signals(arg);
    }
    let signal = crate::signal::make_signal(&parse_intervals(arg)?)?;
    Ok(vec![(default_name.to_string(), signal)])
}

fn load_one(arg: &str, default_name: &str) -> Result<Signal> {
    let mut signals = load_signals(arg, default_name)?;
    if signals.len() != 1 {
        return Err(Error::Parse(format!(
            "{arg}: expected one signal, found {}",
            signals.len()
        )));
    }
    Ok(signals.remove(0).1)
}

fn verdict_code(r: &CheckReport) -> i32 {
    if r.verdict {
        0
    } else {
        1
    }
}

fn require_nzc(p: &RidcParams) -> Result<()> {
    if nzc(p).holds {
        Ok(())
    } else {
        Err(Error::NonZenonessViolated(format!(
            "{p}: need delta_r - mu_r <= delta_f and delta_f - mu_f <= delta_r"
        )))
    }
}

fn require_bridc_cc(p: &BridcParams) -> Result<()> {
    if cc_bridc(p) {
        Ok(())
    } else {
        Err(Error::ConsistencyViolated(format!(
            "{p} satisfies none of the four parameter chains"
        )))
    }
}

fn cmd_check(params: &str, u: &str, x: &str, form: Option<DridcForm>) -> Result<Outcome> {
    let u = load_one(u, "u")?;
    let x = load_one(x, "x")?;
    let (label, report) = match params.parse::<ParamLiteral>() {
        Ok(lit) => {
            let report = match (&lit, form) {
                (ParamLiteral::Bdc(p), Some(f)) => check_dridc_form(&u, p, &x, f)?,
                (ParamLiteral::Bdc(p), None) => {
                    crate::conditions::require_cc(p)?;
                    check_bdc(&u, p, &x)
                }
                (ParamLiteral::Ridc(p), None) => {
                    require_nzc(p)?;
                    check_ridc(&u, p, &x)
                }
                (ParamLiteral::Bridc(p), None) => {
                    require_bridc_cc(p)?;
                    check_bridc(&u, p, &x)
                }
                (_, Some(_)) => {
                    return Err(Error::InvalidParams("--form needs bdc(..) or dride(..)".into()))
                }
            };
            (lit.to_string(), report)
        }
        Err(_) => {
            let e = parse_element(params)?;
            let report = match (e.kind(), form) {
                (ElementKind::Dride(p), Some(f)) => check_dridc_form(&u, p, &x, f)?,
                (_, Some(_)) => {
                    return Err(Error::InvalidParams("--form needs bdc(..) or dride(..)".into()))
                }
                (_, None) => membership(&e, &u, &x),
            };
            (e.to_string(), report)
        }
    };
    let label = match form {
        Some(f) => format!("{label} form {}", f.letter()),
        None => label,
    };
    Ok(Outcome {
        text: format!("{label}: {report}\n"),
        data: json!({
            "params": label,
            "u": u,
            "x": x,
            "verdict": report.verdict,
            "witness": report.witness,
        }),
        code: verdict_code(&report),
    })
}

fn cmd_solve(element: &str, u: &str, seed: u64, verify: bool) -> Result<Outcome> {
    let e = parse_element(element)?;
    let u = load_one(u, "u")?;
    let x = sample(&e, &u, seed)?;
    let mut checks = Vec::new();
    if verify {
        match e.kind() {
            ElementKind::Dride(p) => {
                for f in DridcForm::ALL {
                    checks.push((format!("form {}", f.letter()), check_dridc_form(&u, p, &x, f)?));
                }
            }
            ElementKind::Fixed(d) => checks.push(("fixed".to_string(), check_fdc(&u, d, &x)?)),
            _ => checks.push(("membership".to_string(), membership(&e, &u, &x))),
        }
    }
    if let Some((name, r)) = checks.iter().find(|(_, r)| !r.verdict) {
        return Err(Error::PreconditionFailed(format!("verification of {name} failed: {r}")));
    }
    let mut text = String::new();
    for (name, r) in &checks {
        text.push_str(&format!("# {name}: {r}\n"));
    }
    text.push_str(&format_signal("x", &x));
    text.push('\n');
    let verified: Vec<_> = checks
        .iter()
        .map(|(name, r)| json!({"check": name, "verdict": r.verdict}))
        .collect();
    Ok(Outcome {
        text,
        data: json!({"element": e, "u": u, "x": x, "verified": verified}),
        code: 0,
    })
}

fn cmd_compose(chain: &str, u: &str, seed: u64) -> Result<Outcome> {
    let elements = parse_chain(chain)?;
    let u = load_one(u, "u")?;
    let report = chain_apply(&elements, &u, seed)?;
    let composed = compose_chain(&elements);

    let mut text = format!("chain: {}\n{}\n", format_chain(&elements), format_signal("u", &u));
    for (i, stage) in report.stages.iter().enumerate() {
        text.push_str(&format!(
            "{}  # stage {} {}: {}\n",
            format_signal(&format!("x{}", i + 1), &stage.output),
            i + 1,
            stage.element,
            stage.membership
        ));
    }
    let (equivalent, closed, envelope, note) = match &composed {
        Ok(e) => {
            text.push_str(&format!("equivalent: {e}\n"));
            (Some(e.to_string()), true, None, None)
        }
        Err(Error::NotClosed { envelope }) => {
            let env = envelope
                .as_ref()
                .map(|p| DelayElement::full_bde((**p).clone()).expect("sums keep consistency").to_string());
            text.push_str("NOT CLOSED");
            if let Some(env) = &env {
                text.push_str(&format!(": bounded envelope {env}"));
            }
            text.push('\n');
            (None, false, env, None)
        }
        Err(e) => {
            text.push_str(&format!("no single-element equivalent: {e}\n"));
            (None, true, None, Some(e.to_string()))
        }
    };
    Ok(Outcome {
        text,
        data: json!({
            "chain": format_chain(&elements),
            "u": report.input,
            "stages": report.stages,
            "output": report.output,
            "equivalent": equivalent,
            "closed": closed,
            "envelope": envelope,
            "note": note,
        }),
        code: 0,
    })
}

fn cmd_cc(params: &str) -> Result<Outcome> {
    let lit: ParamLiteral = params.parse()?;
    let (holds, text, data) = match &lit {
        ParamLiteral::Bdc(p) => {
            let holds = cc_bdc(p);
            let mut text = format!("{p}: CC {}\n", if holds { "holds" } else { "violated" });
            let mut data = json!({"params": p.to_string(), "cc": holds});
            if let Some(w) = cc_witness(p) {
                text.push_str(&format!(
                    "{}  # no solution: bounds cross at t = {}\n",
                    format_signal("u", &w.input),
                    w.time
                ));
                data["witness"] = json!({"u": w.input, "time": w.time});
            }
            (holds, text, data)
        }
        ParamLiteral::Ridc(p) => {
            let r = nzc(p);
            let state = match (r.holds, r.trivial) {
                (true, true) => "holds (trivially)",
                (true, false) => "holds",
                _ => "violated",
            };
            (
                r.holds,
                format!("{p}: NZC {state}\n"),
                json!({"params": p.to_string(), "nzc": r.holds, "trivial": r.trivial}),
            )
        }
        ParamLiteral::Bridc(p) => {
            let d = cc_bridc_disjuncts(p);
            let which: Vec<String> = ["a", "b", "c", "d"]
                .iter()
                .zip(d)
                .filter(|(_, h)| *h)
                .map(|(n, _)| n.to_string())
                .collect();
            let holds = !which.is_empty();
            let text = if holds {
                format!("{p}: CC holds via {}\n", which.join(", "))
            } else {
                format!("{p}: CC violated\n")
            };
            (holds, text, json!({"params": p.to_string(), "cc": holds, "disjuncts": d}))
        }
    };
    Ok(Outcome {
        text,
        data,
        code: if holds { 0 } else { 1 },
    })
}

fn cmd_render(
    args: &[String],
    step: &TimePoint,
    width: usize,
    svg: bool,
    demo: Option<&str>,
) -> Result<Outcome> {
    if width < 10 {
        return Err(Error::InvalidParams(format!("width must be at least 10, got {width}")));
    }
    if let Some(name) = demo {
        if !args.is_empty() {
            return Err(Error::InvalidParams("--demo takes no signal arguments".into()));
        }
        return match name {
            "bridc-timeline" => render_timeline_demo(step, width, svg),
            other => Err(Error::InvalidParams(format!("unknown demo `{other}`"))),
        };
    }
    if args.is_empty() {
        return Err(Error::InvalidParams("nothing to render".into()));
    }
    let mut signals = Vec::new();
    for (i, a) in args.iter().enumerate() {
        signals.extend(load_signals(a, &format!("s{}", i + 1))?);
    }
    render_signals(&signals, step, width, svg, json!({}), String::new())
}

fn render_signals(
    signals: &[(String, Signal)],
    step: &TimePoint,
    width: usize,
    svg: bool,
    mut data: serde_json::Value,
    preamble: String,
) -> Result<Outcome> {
    render::check_grid(signals, step)?;
    let rows = render::rows(signals, step, width);
    let text = if svg {
        render::svg(signals, step, width)
    } else {
        preamble + &render::ascii_block(&rows, step, width)
    };
    data["step"] = json!(step);
    data["width"] = json!(width);
    data["rows"] = json!(rows);
    Ok(Outcome { text, data, code: 0 })
}

#[derive(Serialize)]
struct DemoSignal {
    name: &'static str,
    source: String,
    signal: Signal,
    member: bool,
}

fn render_timeline_demo(step: &TimePoint, width: usize, svg: bool) -> Result<Outcome> {
    let bounds = BdcParams::new(4, 6, 4, 6)?;
    let inertia = RidcParams::new(2, 5, 2, 5)?;
    let p = BridcParams::new(bounds.clone(), inertia.clone());
    let tau = TimePoint::from_integer(10);
    let phases = bridc_timeline(&p, &tau)?;
    let u = Signal::from_pairs([(TimePoint::zero(), tau.clone())])?;

    let mut demo = Vec::new();
    for (name, q) in [("slow", &bounds), ("fast", &inertia.as_bdc())] {
        let x = solve_dridc(&u, q)?;
        demo.push(DemoSignal {
            name,
            source: DelayElement::dride(q.clone())?.to_string(),
            member: check_bridc(&u, &p, &x).verdict,
            signal: x,
        });
    }

    let mut preamble = format!("{p}, u = chi[0,{tau})\n");
    for ph in &phases {
        let (l, r) = (if ph.start_closed { '[' } else { '(' }, if ph.end_closed { ']' } else { ')' });
        let interval = format!("{l}{},{}{r}", ph.start, ph.end);
        preamble.push_str(&format!("  {interval:<10} {}\n", ph.label));
    }
    for d in &demo {
        preamble.push_str(&format!(
            "{}  # {}: {}\n",
            format_signal(d.name, &d.signal),
            d.source,
            if d.member { "member" } else { "not a member" }
        ));
    }
    let mut signals = vec![("u".to_string(), u.clone())];
    signals.extend(demo.iter().map(|d| (d.name.to_string(), d.signal.clone())));
    let data = json!({
        "params": p.to_string(),
        "tau": tau,
        "u": u,
        "phases": phases,
        "solutions": demo,
    });
    render_signals(&signals, step, width, svg, data, preamble)
}

fn cmd_counterexample(name: &str) -> Result<Outcome> {
    if name != "ride-composition" {
        return Err(Error::InvalidParams(format!(
            "unknown counterexample `{name}` (available: ride-composition)"
        )));
    }
    let r = ride_composition_counterexample();
    let mut text = String::new();
    text.push_str(&format!("{}\n", format_signal("u", &r.input)));
    text.push_str(&format!(
        "{}  # {} (membership: {})\n",
        format_signal("x", &r.intermediate),
        r.first,
        if r.first_stage_member { "member" } else { "not a member" }
    ));
    text.push_str(&format!("{}  # {}\n", format_signal("y", &r.output), r.second));
    for e in &r.edges {
        text.push_str(&format!(
            "t = {}: {} {}\n",
            e.time,
            e.expected,
            if e.holds { "confirmed" } else { "NOT found" }
        ));
    }
    text.push_str(&format!(
        "single-stage model dride(mu,{0},mu,{0}) requires:\n",
        r.model_delay
    ));
    for b in &r.bounds {
        text.push_str(&format!("  {b}\n"));
    }
    text.push_str(&format!(
        "bounds {}\n",
        if r.contradiction { "contradict each other" } else { "are compatible" }
    ));
    for s in &r.sweep {
        text.push_str(&format!(
            "  mu = {}: form a {}\n",
            s.mu,
            if s.reproduces { "holds" } else { "fails" }
        ));
    }
    text.push_str(&format!("verdict: {}\n", r.verdict));
    Ok(Outcome {
        text,
        data: serde_json::to_value(&r).expect("plain data"),
        code: if r.confirmed { 0 } else { 1 },
    })
}
