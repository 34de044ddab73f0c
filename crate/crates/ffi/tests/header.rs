use std::path::Path;
use std::process::Command;

const PROGRAM: &str = r#"
#include "subdiv.h"

int main(void) {
    SubdivScheme *s = NULL;
    SubdivRegularity r;
    if (subdiv_scheme_from_catalog("binary-siddiqi-4pt", &s) != SUBDIV_STATUS_OK) {
        return 1;
    }
    if (subdiv_holder(s, &r) != SUBDIV_STATUS_OK) {
        return 2;
    }
    subdiv_scheme_free(s);
    return r.smoothing_order == 5 ? 0 : 3;
}
"#;

#[test]
fn header_compiles_as_c99() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("subdiv.h").exists());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = match Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Wextra",
            "-pedantic",
            "-Werror",
            "-fsyntax-only",
            "-I",
        ])
        .arg(&include)
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(e) => {
            eprintln!("skipping: no C compiler ({e})");
            return;
        }
    };
    assert!(status.success());
}

#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(Path::parent).unwrap().to_path_buf();
    if !lib_dir.join("libsubdiv_ffi.so").exists() {
        eprintln!(
            "skipping: shared library not found in {}",
            lib_dir.display()
        );
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    let bin = dir.path().join("probe");
    std::fs::write(&src, PROGRAM).unwrap();
    let compiled = match Command::new("cc")
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg("-o")
        .arg(&bin)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lsubdiv_ffi")
        .status()
    {
        Ok(s) => s,
        Err(e) => {
            eprintln!("skipping: no C compiler ({e})");
            return;
        }
    };
    assert!(compiled.success());
    let run = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .status()
        .unwrap();
    assert_eq!(run.code(), Some(0));
}
