//! Prepare chosen single-qubit states on both virtual qubits of the
//! four-level register and compare closed-form predictions against a full
//! simulation of the nine-pulse schedule.
//!
//! Run with: cargo run -p ququart --example prepare_state

use ququart::prep::{solve_angles, PrepTarget};
use ququart::state::BlochVector;

fn show(label: &str, b: BlochVector) {
    println!(
        "  {label:<22} ({:+.6}, {:+.6}, {:+.6})  r = {:.6}",
        b.x,
        b.y,
        b.z,
        b.norm()
    );
}

fn main() {
    println!("virtual-qubit state preparation");
    println!("===============================\n");

    // Two different directions sharing one Bloch radius: an entangling
    // pulse fixes the radius for both qubits at once, local stages pick the
    // directions.
    let target = PrepTarget::new(
        BlochVector::new(0.48, -0.36, 0.0),
        BlochVector::new(0.0, 0.6, 0.0),
    )
    .expect("radii match");
    let angles = solve_angles(&target);
    println!("solved angles (radians):");
    println!("  entangling   {:+.6}", angles.entangling);
    println!(
        "  x stage      A {:+.6}  B {:+.6}",
        angles.x_rotation_a, angles.x_rotation_b
    );
    println!(
        "  y stage      A {:+.6}  B {:+.6}",
        angles.y_rotation_a, angles.y_rotation_b
    );

    println!(
        "\nschedule ({} pulses, {} after lowering):",
        angles.schedule().len(),
        angles.schedule().lowered().len()
    );
    for pulse in angles.schedule().pulses() {
        println!("  {pulse}");
    }

    let rho = angles.prepare().density();
    let (sigma_a, sigma_b) = (rho.reduce_a(), rho.reduce_b());
    let (predicted_a, predicted_b) = angles.predicted_bloch();
    println!("\nqubit A:");
    show("target", target.bloch_a());
    show("closed form", predicted_a);
    show("simulated", sigma_a.bloch());
    println!("\nqubit B:");
    show("target", target.bloch_b());
    show("closed form", predicted_b);
    show("simulated", sigma_b.bloch());
    println!(
        "\npurities: A {:.9}, B {:.9} (always equal: both inherit 1/2 (1 + cos^2 theta0))",
        sigma_a.purity(),
        sigma_b.purity()
    );

    // The radius knob alone interpolates from pure states to the maximally
    // mixed point at the center of the ball.
    println!("\nradius sweep along +x:");
    for radius in [1.0, 0.75, 0.5, 0.25, 0.0] {
        let target = PrepTarget::identical(BlochVector::new(radius, 0.0, 0.0))
            .expect("targets inside the ball are feasible");
        let angles = solve_angles(&target);
        let rho = angles.prepare().density();
        let bloch = rho.reduce_a().bloch();
        println!(
            "  r = {radius:.2}: entangling angle {:+.4}, simulated marginal ({:+.4}, {:+.4}, {:+.4})",
            angles.entangling, bloch.x, bloch.y, bloch.z
        );
    }
}
