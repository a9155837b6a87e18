use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

/// Every CLI invocation with a golden stdout file.
pub const CASES: &[Case] = &[
    Case { name: "example-nilpotent-torsion", args: &["example", "nilpotent-torsion"], exit: 0 },
    Case { name: "example-su2-spinor", args: &["example", "su2-spinor"], exit: 0 },
    Case { name: "example-bilagrangian", args: &["example", "bilagrangian"], exit: 0 },
    Case { name: "example-iwasawa", args: &["example", "iwasawa"], exit: 0 },
    Case { name: "example-g2", args: &["example", "g2"], exit: 0 },
    Case { name: "eds-g2", args: &["eds", "--dim", "7", "--ideal-file", "@data/g2.ideal"], exit: 0 },
    Case { name: "eds-area2", args: &["eds", "--dim", "2", "--ideal-file", "@data/area2.ideal"], exit: 0 },
    Case {
        name: "eds-theta2-omega11",
        args: &["eds", "--dim", "2", "--ideal-file", "@data/theta2-omega11.ideal"],
        exit: 0,
    },
    Case {
        name: "eds-theta2-omega11-flag21",
        args: &["eds", "--dim", "2", "--ideal-file", "@data/theta2-omega11.ideal", "--flag", "2,1"],
        exit: 0,
    },
    Case {
        name: "eds-theta2-omega11-verbose",
        args: &["eds", "--dim", "2", "--ideal-file", "@data/theta2-omega11.ideal", "--verbose"],
        exit: 0,
    },
    Case { name: "eds-empty", args: &["eds", "--dim", "3", "--ideal-file", "@data/empty.ideal"], exit: 0 },
    Case { name: "eds-nonlinear", args: &["eds", "--dim", "2", "--ideal-file", "@data/nonlinear2.ideal"], exit: 2 },
    Case { name: "eds-malformed", args: &["eds", "--dim", "2", "--ideal-file", "@data/malformed.ideal"], exit: 1 },
    Case {
        name: "eds-bad-flag",
        args: &["eds", "--dim", "2", "--ideal-file", "@data/area2.ideal", "--flag", "1,1"],
        exit: 1,
    },
    Case { name: "dform-nilpotent-4", args: &["dform", "--manifold-file", "@data/nilpotent.manifold", "4"], exit: 0 },
    Case { name: "dform-iwasawa-45", args: &["dform", "--manifold-file", "@data/iwasawa.manifold", "45"], exit: 0 },
    Case { name: "dform-empty-form", args: &["dform", "--manifold-file", "@data/iwasawa.manifold", ""], exit: 1 },
    Case { name: "dform-bad-index", args: &["dform", "--manifold-file", "@data/bad-index.manifold", "1"], exit: 1 },
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn golden_path(case: &Case) -> PathBuf {
    tests_dir().join("golden").join(format!("{}.txt", case.name))
}

/// Runs the binary; `@` arguments are paths relative to the tests directory.
pub fn run(case: &Case) -> (Vec<u8>, i32) {
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(rel) => tests_dir().join(rel).display().to_string(),
            None => (*a).to_string(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_coframe")).args(&args).output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}
