//! Write pulse schedules to their JSON wire format and read them back.
//!
//! The format is a bare array of {"axis", "levels", "angle"} objects in
//! time order -- the same shape `ququart compile --output` writes and
//! `ququart verify` consumes. Angles survive bit-exactly, and reversed
//! level pairs normalize to the same operator on load.
//!
//! Run with: cargo run -p ququart --example schedule_files

use ququart::gates::{compile, Gate};
use ququart::io::{load_schedule, save_schedule, schedule_from_json, schedule_to_json};
use ququart::linalg::phase_distance;

fn main() {
    println!("schedule files");
    println!("==============\n");

    let compiled = compile(Gate::HadamardA).expect("hadamard-a is tabulated");
    let json = schedule_to_json(compiled.schedule());
    println!("hadamard-a line as JSON:\n{json}\n");

    let path = std::env::temp_dir().join(format!("ququart-example-{}.json", std::process::id()));
    save_schedule(compiled.schedule(), &path).expect("temp dir is writable");
    let loaded = load_schedule(&path).expect("the file just written loads");
    let distance = phase_distance(&loaded.unitary(), &compiled.schedule().unitary());
    println!(
        "round trip through {}: {} pulses back, distance {distance:.3e}",
        path.display(),
        loaded.len()
    );
    let _ = std::fs::remove_file(&path);

    // Level order in the file is cosmetic for x pulses and a sign
    // convention for y pulses: [3,1] means the rotation generated on the
    // (1,3) pair with the opposite orientation.
    let reversed = r#"[
        { "axis": "y", "levels": [3, 1], "angle": 0.5 }
    ]"#;
    let schedule = schedule_from_json(reversed).expect("reversed levels are legal");
    println!("\n[3,1] y pulse loads as: {}", schedule.pulses()[0]);

    // Malformed files fail with positioned errors instead of half-loaded
    // schedules.
    for (label, text) in [
        (
            "axis typo",
            r#"[{ "axis": "z", "levels": [0, 1], "angle": 1.0 }]"#,
        ),
        (
            "level out of range",
            r#"[{ "axis": "x", "levels": [0, 4], "angle": 1.0 }]"#,
        ),
        (
            "degenerate pair",
            r#"[{ "axis": "x", "levels": [2, 2], "angle": 1.0 }]"#,
        ),
        (
            "non-finite angle",
            r#"[{ "axis": "x", "levels": [0, 1], "angle": 1e999 }]"#,
        ),
    ] {
        match schedule_from_json(text) {
            Ok(_) => unreachable!("malformed input must not load"),
            Err(error) => println!("{label:<19} -> {error}"),
        }
    }
}
