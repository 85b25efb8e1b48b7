//! Compiles a small C program against the generated header and the static
//! library. Skipped when no C compiler or static archive is available.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "lyaprof.h"

int main(void) {
    LpRunConfig c;
    if (lp_config_default(&c) != LP_STATUS_OK) return 10;
    c.rule = 150; c.width = 201; c.steps = 100; c.seed = 1;
    LpRun *run = NULL;
    if (lp_run_new(&c, &run) != LP_STATUS_OK) return 11;
    double buf[201];
    size_t n = 0;
    if (lp_run_normalized(run, buf, 201, &n) != LP_STATUS_OK || n != 201) return 12;
    if (fabs(buf[100] - 1.0) > 1e-12) return 13;
    lp_run_free(run);
    c.rule = 999;
    if (lp_run_new(&c, &run) != LP_STATUS_OUT_OF_RANGE) return 14;
    printf("%s\n", lp_last_error_message());
    return 0;
}
"#;

fn target_dir() -> Option<PathBuf> {
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().ok()?;
    Some(exe.parent()?.parent()?.to_path_buf())
}

#[test]
fn c_program_links_and_runs() {
    let Some(dir) = target_dir() else { return };
    let archive = dir.join("liblyaprof_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !archive.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {} missing", archive.display());
        return;
    }
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("client.c");
    let bin = work.path().join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C client exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("999"));
}
