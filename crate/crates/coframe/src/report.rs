//! Plain-text reports, one fact per line.

use std::fmt::Write;

use coframe_core::CartanReport;

pub fn cartan(report: &CartanReport, verbose: bool) -> String {
    let mut out = String::new();
    let n = report.c.len();
    if verbose {
        for e in &report.equations {
            writeln!(out, "equation: {e}=0").unwrap();
        }
        for (j, forms) in report.polar.iter().enumerate() {
            for f in forms {
                writeln!(out, "polar_{j}: {f}").unwrap();
            }
        }
    }
    for (j, c) in report.c.iter().enumerate() {
        writeln!(out, "c_{j}={c}").unwrap();
    }
    writeln!(out, "codim(V_{n})={}", report.codim).unwrap();
    if !report.consistent {
        writeln!(out, "INCONSISTENT").unwrap();
    } else if report.involutive {
        writeln!(out, "INVOLUTIVE").unwrap();
    } else {
        writeln!(out, "NOT INVOLUTIVE (at this flag)").unwrap();
    }
    out
}

/// `(a,b,c)` with each entry printed in canonical form.
pub fn tuple<T: std::fmt::Display>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(","))
}
