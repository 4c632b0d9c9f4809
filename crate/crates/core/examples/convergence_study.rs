//! Truncation convergence study: how the interior unitarity defect and the
//! forward matrix elements of the phase operator behave as the truncation
//! grows. The numbers printed here are the source of the frozen bounds in
//! `phasekit::tol`.
//!
//! Run with `cargo run --release -p phasekit --example convergence_study`.

use phasekit::basis::FockIndex;
use phasekit::fock::build_basis;
use phasekit::phase::{phase_operator, phase_sequence, selection_rule_violation};
use phasekit::special::SQRT_PI_OVER_4;

fn main() {
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>12} {:>12}",
        "n_max", "dim", "unitarity", "kernel law", "d(sqrtpi/4)", "selection"
    );
    for n_max in [20u32, 30, 40] {
        let basis = build_basis(n_max);
        let e = phase_operator(&basis, 1.0, 1e-12).unwrap();
        let unitarity = (&e.adjoint() * &e).interior_max_abs_vs_identity(n_max / 2);
        let law = 1.0 / (n_max as f64 / 2.0 + 1.0);
        let first_dropped = e
            .entry(
                basis.index_of(FockIndex::new(1, 1)).unwrap(),
                basis.index_of(FockIndex::new(1, 0)).unwrap(),
            )
            .re;
        println!(
            "{:>6} {:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            n_max,
            basis.len(),
            unitarity,
            law,
            (first_dropped - SQRT_PI_OVER_4).abs(),
            selection_rule_violation(&e, &basis),
        );
    }
    println!();
    println!("forward element convergence |<(n,0)|E|(n+1,0)> - a_n| at n = 0:");
    for n_max in [20u32, 30, 40] {
        let basis = build_basis(n_max);
        let e = phase_operator(&basis, 1.0, 1e-12).unwrap();
        let got = e
            .entry(
                basis.index_of(FockIndex::new(0, 0)).unwrap(),
                basis.index_of(FockIndex::new(1, 0)).unwrap(),
            )
            .re;
        println!("  n_max = {n_max}: {:.4e}", (got - phase_sequence(0)).abs());
    }
}
