use std::path::Path;

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let out = Path::new(&std::env::var("OUT_DIR").unwrap()).join("sboxkit.h");
    cbindgen::generate(&crate_dir)
        .expect("header generation failed")
        .write_to_file(&out);
    println!("cargo:rustc-env=SBOXKIT_GENERATED_HEADER={}", out.display());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
