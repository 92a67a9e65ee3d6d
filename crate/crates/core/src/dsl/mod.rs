//! The `.obd` bench description language.
//!
//! ```text
//! bench demo
//! param xi = 22.5
//! node L : laser(amplitude=1)
//! node P : polarizer(angle_param=xi)
//! link L.out -> P.in
//! detector d on P.out
//! ```

mod diag;
mod lexer;
mod parser;
mod serialize;
mod validate;

pub use diag::{Diagnostic, Severity};
pub use lexer::{tokenize, tokenize_lenient, BenchSource, Keyword, Token, TokenKind};
pub use parser::{parse, parse_source, parse_with};
pub use serialize::serialize;
pub use validate::{is_identifier, validate, validate_with};

use crate::error::{Error, Result};
use crate::optics::BenchGraph;

/// Parses and validates; any diagnostic of error severity fails the load.
pub fn load(src: &BenchSource) -> Result<BenchGraph> {
    let (graph, mut diags) = parse_source(src);
    if diags.iter().all(|d| d.severity == Severity::Warning) {
        diags.extend(validate(&graph));
    }
    if diags.iter().any(|d| d.severity == Severity::Error) {
        Err(Error::InvalidBench(diags))
    } else {
        Ok(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn parsing_is_total(text in "\\PC{0,200}") {
            let n_lines = text.lines().count().max(1);
            let (_, diags) = parse_source(&BenchSource::new("fuzz", text.clone()));
            for d in diags {
                prop_assert!(d.line >= 1 && d.line <= n_lines);
                prop_assert!(d.column >= 1);
            }
        }

        #[test]
        fn token_soup_is_total(words in prop::collection::vec(
            prop::sample::select(vec!["bench", "param", "node", "link", "detector", "on", "x", "A", "in", "out",
                "1", "-2.5e3", ":", "(", ")", "=", ",", ".", "->", "\n", "#", "mirror", "bs"]), 0..60)) {
            let text = words.join(" ");
            let n_lines = text.lines().count().max(1);
            let (g, diags) = parse_source(&BenchSource::new("soup", text));
            for d in diags.iter().chain(validate(&g).iter()) {
                prop_assert!(d.line >= 1 && d.line <= n_lines, "{d}");
            }
        }
    }

    #[test]
    fn load_rejects_invalid() {
        assert!(load(&BenchSource::new("x", "bench x\nnode A : mirror()\n")).is_err());
        assert!(load(&BenchSource::new("x", "bench x\n")).is_ok());
    }
}
