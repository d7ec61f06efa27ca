use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn wittkit(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittkit")).args(args).output().expect("run wittkit")
}

/// One committed invocation: argv (one argument per line) and expected stdout.
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub expected: Vec<u8>,
}

pub fn cases() -> Vec<Case> {
    let dir = golden_dir();
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .expect("golden dir")
        .filter_map(|e| {
            let path = e.ok()?.path();
            (path.extension()? == "args").then(|| path.file_stem()?.to_str().map(str::to_string))?
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let args = std::fs::read_to_string(dir.join(format!("{name}.args"))).expect("args file");
            let expected = std::fs::read(dir.join(format!("{name}.out"))).expect("out file");
            Case { args: args.lines().map(str::to_string).collect(), expected, name }
        })
        .collect()
}

/// `None` on a byte-identical match, else a description of the mismatch.
pub fn mismatch(case: &Case) -> Option<String> {
    let out = wittkit(&case.args);
    if !out.status.success() {
        return Some(format!("{}: exit {:?}: {}", case.name, out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    (out.stdout != case.expected).then(|| {
        format!(
            "{}: expected\n{}\ngot\n{}",
            case.name,
            String::from_utf8_lossy(&case.expected),
            String::from_utf8_lossy(&out.stdout)
        )
    })
}
