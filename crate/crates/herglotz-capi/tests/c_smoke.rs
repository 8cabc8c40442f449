//! Compiles and runs `c_smoke.c` against the generated header and the
//! static library, proving the shipped interface is what C sees.

use std::path::PathBuf;
use std::process::Command;

fn static_lib() -> PathBuf {
    // Tests run from target/<profile>/deps/<name>; the staticlib sits in
    // the profile directory or next to the test binary.
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap().to_path_buf();
    let profile = deps.parent().unwrap().to_path_buf();
    for dir in [&profile, &deps] {
        let candidate = dir.join("libherglotz_capi.a");
        if candidate.exists() {
            return candidate;
        }
    }
    panic!("libherglotz_capi.a not found under {}", profile.display());
}

#[test]
fn c_program_links_and_passes() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let source = manifest.join("tests/c_smoke.c");
    let out_dir = std::env::temp_dir().join(format!("herglotz-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("c_smoke");

    let compile = Command::new("cc")
        .arg(&source)
        .arg(static_lib())
        .arg(format!("-I{}", include.display()))
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&binary)
        .args(["-lm", "-lpthread", "-ldl"])
        .output()
        .expect("cc must be available to verify the C interface");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().unwrap();
    assert!(
        run.status.success(),
        "c smoke test failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    std::fs::remove_dir_all(&out_dir).ok();
}
