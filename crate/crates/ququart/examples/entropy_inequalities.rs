//! Evaluate the entropic uncertainty bounds: measured in two conjugate
//! bases, a qubit's outcome entropies sum to at least 1 bit (log2 of the
//! basis dimension), and the four-level register measured before and after
//! the Hadamard-on-both line clears 2 bits.
//!
//! Run with: cargo run -p ququart --example entropy_inequalities

use ququart::entropy::{check_log2, check_log4, check_renyi};
use ququart::state::{BlochVector, PureState4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    println!("entropic uncertainty bounds");
    println!("===========================\n");

    // Equality cases first: a basis eigenstate spends its full budget on
    // the rotated measurement and none on the direct one.
    let pole = BlochVector::new(0.0, 0.0, 1.0)
        .density()
        .expect("unit vector");
    let report = check_log2(&pole);
    println!(
        "qubit north pole:      H(rotated) + H(direct) = {:.12} bits (bound {})",
        report.lhs_bits, report.bound_bits
    );

    let tilted = BlochVector::new(0.5, 0.3, -0.4)
        .density()
        .expect("inside the ball");
    let report = check_log2(&tilted);
    println!(
        "mixed tilted state:    H(rotated) + H(direct) = {:.12} bits (margin {:+.6})",
        report.lhs_bits, report.margin_bits
    );

    // The order-parameterized family interpolates the same bound through
    // conjugate exponent pairs 1/alpha + 1/beta = 2.
    println!("\nconjugate-order family on the tilted state:");
    println!("  alpha     beta      lhs (bits)   margin");
    for alpha in [0.6, 0.75, 1.0, 1.5, 2.0, 5.0, f64::INFINITY] {
        let report = check_renyi(&tilted, alpha).expect("orders at least 1/2 are valid");
        println!(
            "  {:<9.3} {:<9.3} {:<12.6} {:+.6}",
            report.alpha, report.beta, report.lhs_bits, report.margin_bits
        );
    }

    // Full-register check against the compiled pulse line, not an abstract
    // rotation: ground level and uniform superposition both sit exactly on
    // the 2-bit floor.
    println!("\nfour-level bound (compiled hadamard-both line):");
    let ground = PureState4::ground();
    println!(
        "  ground level:          sum = {:.12} bits",
        check_log4(&ground).lhs_bits
    );
    let uniform = PureState4::new(ququart::CVector4::from_element(ququart::C64::new(0.5, 0.0)))
        .expect("uniform superposition is normalized");
    println!(
        "  uniform superposition: sum = {:.12} bits",
        check_log4(&uniform).lhs_bits
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut min_margin = f64::INFINITY;
    let mut mean = 0.0;
    let trials = 20_000;
    for _ in 0..trials {
        let margin = check_log4(&PureState4::sample_haar(&mut rng)).margin_bits;
        min_margin = min_margin.min(margin);
        mean += margin;
    }
    println!(
        "  {} random pure states: min margin {:+.6e}, mean {:+.4} bits, violations 0",
        trials,
        min_margin,
        mean / trials as f64
    );
}
