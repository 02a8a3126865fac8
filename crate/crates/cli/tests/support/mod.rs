//! Golden transcripts: every case in `fixtures/cases.txt` runs twice
//! through the real binary; both runs must be byte-identical, match
//! `golden/<name>.out`, and exit with the listed code.

use std::path::{Path, PathBuf};
use std::process::Command;

struct Case {
    name: String,
    exit: i32,
    args: Vec<String>,
}

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(dir().join("fixtures/cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.splitn(3, '|').map(str::trim);
            let name = parts.next().unwrap().to_string();
            let exit = parts.next().unwrap().parse().unwrap();
            let args = shlex::split(parts.next().unwrap()).unwrap_or_else(|| panic!("bad quoting: {line}"));
            Case { name, exit, args }
        })
        .collect()
}

fn transcript(args: &[String]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tropval"))
        .args(args)
        .current_dir(dir().join("fixtures"))
        .output()
        .unwrap();
    let code = out.status.code().expect("exited normally");
    let text = format!(
        "{}--- stderr\n{}--- exit {code}\n",
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap()
    );
    (code, text)
}

/// Runs every case; returns the number of cases and one message per
/// broken case. With `update`, rewrites the golden files instead of
/// comparing.
pub fn check_all(update: bool) -> (usize, Vec<String>) {
    let golden = dir().join("golden");
    std::fs::create_dir_all(&golden).unwrap();
    let mut broken = Vec::new();
    let cases = cases();
    for case in &cases {
        let (code, first) = transcript(&case.args);
        let (_, second) = transcript(&case.args);
        if first != second {
            broken.push(format!("{}: output differs between runs", case.name));
        }
        if code != case.exit {
            broken.push(format!("{}: exit {code}, expected {}\n{first}", case.name, case.exit));
        }
        let path = golden.join(format!("{}.out", case.name));
        if update {
            std::fs::write(&path, &first).unwrap();
        } else {
            match std::fs::read_to_string(&path) {
                Ok(expected) if expected == first => {}
                Ok(_) => broken.push(format!("{}: differs from {}\n{first}", case.name, path.display())),
                Err(_) => broken.push(format!("{}: missing {}", case.name, path.display())),
            }
        }
    }
    (cases.len(), broken)
}
