//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "lconvex.h"

int main(void) {
    LcCurve *c = NULL;
    if (lc_curve_nu(2.0, &c) != LC_STATUS_OK) return 10;
    LcComponent k;
    if (lc_curve_classify(c, &k) != LC_STATUS_OK || k != LC_COMPONENT_PLUS) return 11;
    double q[4];
    if (lc_curve_phi(c, q) != LC_STATUS_OK || q[0] < 0.999999) return 12;
    lc_curve_free(c);
    if (lc_curve_nu(0.0, &c) != LC_STATUS_NON_POSITIVE_SPEED) return 13;
    if (lc_last_error_message() == NULL) return 14;
    printf("%s\n", lc_version());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests/<crate> binaries live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler `{cc}`; skipping");
        return;
    }
    let lib = target_dir().join("liblconvex_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = std::env::temp_dir().join(format!("lconvex-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let bin = dir.join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I", include])
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "cc failed: {}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "client exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), env!("CARGO_PKG_VERSION"));
    let _ = std::fs::remove_dir_all(&dir);
}
