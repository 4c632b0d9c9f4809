//! Central numeric tolerances with their origins. Tests and the acceptance
//! suite pin against these constants; no ad-hoc magic numbers elsewhere.

/// Entrywise agreement of operator identities on the truncation interior
/// (finite compositions of exact ladder matrices; rounding only).
pub const ENTRYWISE_INTERIOR: f64 = 1e-12;

/// Quadrature-exact integrals: the rule integrates the target polynomial
/// class exactly, so only summation rounding (~order x eps) remains.
pub const ORACLE_EXACT: f64 = 1e-13;

/// Entries forbidden by the selection rule are exact zeros by construction;
/// the bound only allows for assembly rounding.
pub const SELECTION_RULE: f64 = 1e-12;

/// The phase operator is independent of the wave number up to the rounding
/// of two eigendecompositions at different scalings.
pub const K_INDEPENDENCE: f64 = 1e-10;

/// Closed-form versus recurrence evaluation of the correction sequence.
/// The recurrence takes ~5 roundings per step; over 1e4 steps the random
/// walk stays one order below this bound.
pub const SEQUENCE_ROUTES: f64 = 1e-13;

/// Defining property of the Hermitian inverse square root on random
/// positive input of small dimension.
pub const INV_SQRT_DEFINING: f64 = 1e-10;

/// Interior deviation of `E† E` from the identity at even `n_max`,
/// margin `n_max/2`. The convergence study over `n_max` in {20, 30, 40}
/// measured 9.0909e-2 / 6.2500e-2 / 4.7619e-2 — exactly `1/(n_max/2 + 1)`
/// each time. That number is structural, not rounding: the `m = 0` block
/// of the truncated space is one dimension larger than the `m = -1` block
/// it maps into, and the two branches of the amplitude operator carry
/// equal weights there, so the truncated map has a perfectly delocalized
/// alternating kernel vector whose projector weight `1/(n_max/2 + 1)`
/// shows up at every interior entry. The shipped bound is the measured
/// law plus 2% rounding headroom.
pub fn interior_unitarity_bound(n_max: u32) -> f64 {
    assert!(n_max.is_multiple_of(2), "the study law is calibrated for even n_max");
    1.02 / (n_max as f64 / 2.0 + 1.0)
}

/// Interior deviation at the `n_max = 40`, margin 20 study point.
pub const INTERIOR_UNITARITY_N40: f64 = 1.02 / 21.0;

/// Documented target for the agreement of interior matrix elements of the
/// full operator with the exact forward values at `n_max = 40`. The
/// convergence study measured 3.055e-3 / 1.698e-3 / 1.115e-3 over
/// `n_max` in {20, 30, 40} for the first dropped element — a clean fit to
/// `0.029 exp(-0.52 sqrt(n_max))`, which crosses 1e-3 only near
/// `n_max = 43`. The target is therefore unmet at `n_max = 40` by ~11%
/// and the acceptance test for it is expected to fail; see the element
/// convergence notes in the acceptance suite.
pub const FORWARD_ELEMENT_N40: f64 = 1e-3;

/// Oracle versus operator algebra over the whole margin-`n_max/2`
/// interior at `n_max = 40` (measured 1.96e-2; the worst rows sit at the
/// interior boundary, deepest elements are ~1e-3).
pub const ORACLE_OPERATOR_INTERIOR_N40: f64 = 2.5e-2;

/// Sign-convention agreement between quadrature elements and operator
/// algebra for all states with total occupation <= 4 at `n_max = 30`.
/// Measured worst deviation 9.63e-3 (the backward-lowering blocks carry
/// the slow structural convergence); a flipped sign convention would show
/// up as ~0.9, three orders above this bound.
pub const SIGN_CONSISTENCY_N30: f64 = 1.5e-2;

/// Window-state variance against its ideal `(2m-1)/m^2` limit at
/// `l = 200, m = 10`: the correction deficit is ~1/(8*201) per term.
pub const WINDOW_VARIANCE_LIMIT: f64 = 1e-2;

/// Trajectory modulus against `(m-1)/m` for the same window.
pub const TRAJECTORY_MODULUS: f64 = 2e-3;

/// Phase advance of the trajectory per unit time (pure rounding).
pub const PHASE_ADVANCE: f64 = 1e-12;

/// Agreement of the two expected-field routes (position operators versus
/// the complex amplitude expectation).
pub const FIELD_DUAL_ROUTE: f64 = 1e-12;

/// Rotated field versus translated field on a dense position grid.
pub const FIELD_TRANSLATION: f64 = 1e-10;

/// Time-invariance of the trajectory modulus (unit phases only).
pub const MODULUS_DRIFT: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::assertions_on_constants)]
    fn tolerances_are_positive_and_ordered() {
        assert!(ORACLE_EXACT < ENTRYWISE_INTERIOR);
        assert!(ENTRYWISE_INTERIOR < K_INDEPENDENCE);
        assert!((interior_unitarity_bound(40) - INTERIOR_UNITARITY_N40).abs() < 1e-15);
        assert!(interior_unitarity_bound(40) < interior_unitarity_bound(20));
        for t in [
            ENTRYWISE_INTERIOR,
            ORACLE_EXACT,
            SELECTION_RULE,
            K_INDEPENDENCE,
            SEQUENCE_ROUTES,
            INV_SQRT_DEFINING,
            INTERIOR_UNITARITY_N40,
            FORWARD_ELEMENT_N40,
            WINDOW_VARIANCE_LIMIT,
            TRAJECTORY_MODULUS,
            PHASE_ADVANCE,
            FIELD_DUAL_ROUTE,
            FIELD_TRANSLATION,
            MODULUS_DRIFT,
        ] {
            assert!(t > 0.0);
        }
    }
}
