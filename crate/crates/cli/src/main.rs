// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(edjcm_cli::run_cli(std::env::args_os()));
}
