//! Keeps the committed C header in sync with the generated one and checks
//! that it actually compiles as C.

use std::path::Path;
use std::process::Command;

const COMMITTED: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/include/sboxkit.h");

#[test]
fn committed_header_matches_generated() {
    let generated = env!("SBOXKIT_GENERATED_HEADER");
    let generated = std::fs::read_to_string(generated).expect("build script wrote the header");
    let committed = std::fs::read_to_string(COMMITTED).expect("include/sboxkit.h is committed");
    assert_eq!(
        committed, generated,
        "include/sboxkit.h is stale; copy the generated header over it"
    );
}

#[test]
fn header_compiles_as_c() {
    let cc = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok());
    let Some(cc) = cc else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = std::env::temp_dir().join(format!("sboxkit-hdr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        r#"
#include "sboxkit.h"
#include <stdio.h>

int main(void) {
    SbkField *field = NULL;
    if (sbk_field_new(6, 0, 2, &field) != SBK_STATUS_OK) return 1;
    SbkFunction *f = NULL;
    if (sbk_function_from_recipe(field, "gold(k=2)", &f) != SBK_STATUS_OK) return 1;
    uint32_t delta = 0;
    if (sbk_differential_uniformity(f, &delta) != SBK_STATUS_OK) return 1;
    printf("%u\n", delta);
    sbk_function_free(f);
    sbk_field_free(field);
    return 0;
}
"#,
    )
    .unwrap();
    let include_dir = Path::new(COMMITTED).parent().unwrap();
    let status = Command::new(cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg(format!("-I{}", include_dir.display()))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header failed C compilation");
    let _ = std::fs::remove_dir_all(&dir);
}
