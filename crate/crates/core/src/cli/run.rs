//! Command evaluation and output.

use rayon::prelude::*;
use serde::Serialize;

use super::parse::{Command, Object, Session};
use crate::analysis::{
    center_of_end, has_free_summand, hw_trace_check, is_balanced, verify_free_summand_theorems,
    verify_rigidity_theorem, verify_theorem_main, verify_theorem_main2, verify_trace_properties, Status,
    VerificationReport,
};
use crate::error::Result;
use crate::fpmod::{dual, hom_module, is_faithful, is_reflexive, FPModule};
use crate::homology::{depth_module, ext, free_resolution, is_rigid};
use crate::ring::grade;
use crate::trace::trace_ideal;

/// Result of one command.
#[derive(Clone, Debug)]
pub enum Outcome {
    Text(String),
    Report(VerificationReport),
    Error(String),
}

/// A module as the script would define it: `0`, `free g` or `coker [...]`
/// on a Tietze-reduced presentation.
pub fn format_module(m: &std::sync::Arc<FPModule>) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let (small, _) = m.minimized();
    let a = small.presentation();
    if a.ncols() == 0 {
        format!("free {}", small.ngens())
    } else {
        format!("coker {}", small.ring().format_matrix(a))
    }
}

fn yes(b: bool) -> String {
    b.to_string()
}

fn eval(session: &Session, cmd: &Command) -> Result<Outcome> {
    let a = &cmd.args;
    let module = |i: usize| session.module(&a[i]).expect("checked by the parser");
    let count = |i: usize| a[i].parse::<usize>().expect("checked by the parser");
    let text = match cmd.verb.as_str() {
        "trace" => trace_ideal(module(0)).to_string(),
        "dual" => format_module(dual(module(0)).module()),
        "hom" => format_module(hom_module(module(0), module(1)).module()),
        "end" => {
            let e = hom_module(module(0), module(0));
            format!("{}\ncommutative: {}", format_module(e.module()), e.is_commutative())
        }
        "center" => {
            let c = center_of_end(module(0));
            let ring = module(0).ring();
            let mut lines: Vec<String> = c.generators.iter().map(|f| ring.format_matrix(f.matrix())).collect();
            if lines.is_empty() {
                lines.push("0".into());
            }
            lines.push(format!("scalar: {}", c.scalar));
            lines.join("\n")
        }
        "grade" => grade(session.ideal(&a[0]).expect("checked by the parser")).to_string(),
        "depth" => match session.get(&a[0]) {
            Some(Object::Ring(r)) => r.depth().to_string(),
            _ => depth_module(module(0))?.to_string(),
        },
        "dim" => session.ring(&a[0]).expect("checked by the parser").krull_dimension().to_string(),
        "gorenstein" => yes(session.ring(&a[0]).expect("checked by the parser").is_gorenstein()),
        "ext" => format_module(&ext(count(0), module(1), module(2))),
        "resolve" => {
            let m = module(0);
            let res = free_resolution(m, count(1));
            let mut lines = vec![format!("ranks: {:?}", res.ranks())];
            for (i, d) in res.differentials().iter().enumerate() {
                lines.push(format!("d{}: {}", i + 1, m.ring().format_matrix(d)));
            }
            lines.join("\n")
        }
        "is-reflexive" => yes(is_reflexive(module(0))?),
        "is-rigid" => yes(is_rigid(module(0))),
        "is-balanced" => yes(is_balanced(module(0))),
        "has-free-summand" => yes(has_free_summand(module(0))),
        "verify" => {
            let report = match a[0].as_str() {
                "main" => verify_theorem_main(module(1))?,
                "main2" => verify_theorem_main2(module(1))?,
                "trace-props" => verify_trace_properties(module(1), module(2))?,
                "free-summand" => verify_free_summand_theorems(module(1))?,
                "rigidity" => verify_rigidity_theorem(module(1))?,
                _ => hw_trace_check(session.ideal(&a[1]).expect("checked by the parser"))?,
            };
            return Ok(Outcome::Report(report));
        }
        "report" => match session.get(&a[0]) {
            Some(Object::Hom(f)) => [
                format!("well-defined: {}", f.is_well_defined()),
                format!("injective: {}", f.kernel_is_zero()),
                format!("surjective: {}", f.cokernel_is_zero()),
            ]
            .join("\n"),
            _ => {
                let m = module(0);
                [
                    format!("module: {}", format_module(m)),
                    format!("minimal generators: {}", m.minimal_generators()),
                    format!("trace: {}", trace_ideal(m)),
                    format!("faithful: {}", is_faithful(m)),
                    format!("reflexive: {}", is_reflexive(m)?),
                    format!("rigid: {}", is_rigid(m)),
                    format!("balanced: {}", is_balanced(m)),
                    format!("free summand: {}", has_free_summand(m)),
                ]
                .join("\n")
            }
        },
        other => unreachable!("verb {other} passed the parser"),
    };
    Ok(Outcome::Text(text))
}

pub fn run_command(session: &Session, cmd: &Command) -> Outcome {
    eval(session, cmd).unwrap_or_else(|e| Outcome::Error(e.to_string()))
}

/// Runs every command, concurrently on `threads` workers, keeping script order.
pub fn run_all(session: &Session, threads: usize) -> Vec<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| session.commands.par_iter().map(|c| run_command(session, c)).collect())
}

#[derive(Serialize)]
struct JsonLine<'a> {
    command: String,
    line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

/// Renders outcomes as text blocks (`> command` then the answer) or as one
/// JSON object per line.
pub fn render(session: &Session, outcomes: &[Outcome], json: bool) -> String {
    let mut out = String::new();
    for (cmd, o) in session.commands.iter().zip(outcomes) {
        if json {
            let mut line = JsonLine {
                command: cmd.text(),
                line: cmd.line,
                output: None,
                report: None,
                error: None,
            };
            match o {
                Outcome::Text(t) => line.output = Some(t),
                Outcome::Report(r) => line.report = Some(r),
                Outcome::Error(e) => line.error = Some(e),
            }
            out.push_str(&serde_json::to_string(&line).expect("serializable"));
            out.push('\n');
        } else {
            out.push_str(&format!("> {}\n", cmd.text()));
            match o {
                Outcome::Text(t) => out.push_str(t),
                Outcome::Report(r) => out.push_str(r.to_string().trim_end()),
                Outcome::Error(e) => out.push_str(&format!("error: {e}")),
            }
            out.push('\n');
        }
    }
    out
}

/// 3 if any report failed, else 1 on any command error, else 2 if some
/// report's hypotheses were not met, else 0.
pub fn exit_code(outcomes: &[Outcome]) -> i32 {
    let status = |s: Status| outcomes.iter().any(|o| matches!(o, Outcome::Report(r) if r.status == s));
    if status(Status::Fail) {
        3
    } else if outcomes.iter().any(|o| matches!(o, Outcome::Error(_))) {
        1
    } else if status(Status::HypothesesNotMet) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_session;

    const SECTION5: &str = "
ring S = F32003[x,y,z] / (y^2 - x*z, x^2*y - z^2, x^3 - y*z) domain;
module M = coker [[-z,-y,x^2],[y,x,-z]] over S;
trace M;
";

    #[test]
    fn trace_of_the_semigroup_module() {
        let s = parse_session(SECTION5, 0).unwrap();
        let out = run_all(&s, 1);
        assert_eq!(render(&s, &out, false), "> trace M\n(x, y, z)\n");
    }

    #[test]
    fn node_session() {
        let text = "
ring R = F32003[x,y] / (x*y);
module M = coker [[x]] over R;
ideal I = (x) over R;
ext 1 M M;
is-rigid M;
is-balanced M;
verify main2 M;
verify hw I;
";
        let s = parse_session(text, 0).unwrap();
        let out = run_all(&s, 2);
        let t = render(&s, &out, false);
        assert!(t.starts_with("> ext 1 M M\n0\n> is-rigid M\ntrue\n> is-balanced M\nfalse\n"), "{t}");
        assert_eq!(exit_code(&out), 2);
        let j = render(&s, &out, true);
        assert_eq!(j.lines().count(), 5);
        assert!(j.contains("\"status\":\"HYPOTHESES_NOT_MET\""));
    }

    #[test]
    fn errors_are_reported_per_command() {
        let text = "
ring R = F32003[x,y] / (x*y);
module M = coker [[x]] over R;
depth M;
module Z = free 0 over R;
depth Z;
";
        let s = parse_session(text, 0).unwrap();
        let out = run_all(&s, 1);
        assert!(matches!(out[1], Outcome::Error(_)));
        assert_eq!(exit_code(&out), 1);
    }
}
