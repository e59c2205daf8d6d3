// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo"));
    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("valid cbindgen.toml");
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        // write_to_file only touches the header when its content changes
        Ok(bindings) => {
            bindings.write_to_file(crate_dir.join("include").join("symdepol.h"));
        }
        Err(e) => println!("cargo:warning=header not regenerated: {e}"),
    }
}
