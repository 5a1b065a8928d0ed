//! The script interface: parse a session, run its commands, render answers.

mod parse;
mod run;

pub use parse::{parse_session, Command, Object, Session, VERIFY_TAGS};
pub use run::{exit_code, format_module, render, run_all, run_command, Outcome};
