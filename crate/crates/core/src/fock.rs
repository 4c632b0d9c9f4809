//! Elementary operators on the truncated two-mode Fock space.
//!
//! Ladder operators act in the standard way,
//!
//! ```text
//! a |n>  = sqrt(n)   |n-1>
//! a†|n>  = sqrt(n+1) |n+1>
//! ```
//!
//! with the projector convention at the truncation edge: raising out of the
//! basis silently drops the amplitude. Identities of the untruncated space
//! therefore hold only on the interior; one ladder product costs one unit of
//! margin, two products cost two.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::basis::{FockIndex, TwoModeBasis};
use crate::operator::{ComplexOperator, StateVector};
use crate::{Error, Result};

/// Which mode of the pair a ladder operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fwd,
    Bwd,
}

/// Lowering or raising.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Lower,
    Raise,
}

/// The two rotated ladder combinations `a_cos = (a_fwd + a_bwd)/√2` and
/// `a_sin = i (a_fwd - a_bwd)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformedMode {
    Cos,
    Sin,
}

/// Hamiltonian construction route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianForm {
    /// Diagonal `k (n_fwd + n_bwd + 1)`.
    Planewave,
    /// `k (a_cos† a_cos + a_sin† a_sin + 1)` from transformed ladders.
    CosSin,
}

/// Builds the basis with total occupation up to `n_max`.
pub fn build_basis(n_max: u32) -> TwoModeBasis {
    TwoModeBasis::new(n_max)
}

/// Single-mode ladder operator as a dense matrix on `basis`.
pub fn ladder_matrix(basis: &TwoModeBasis, mode: Mode, kind: LadderKind) -> ComplexOperator {
    let dim = basis.len();
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, idx) in basis.states().iter().enumerate() {
        let n = match mode {
            Mode::Fwd => idx.n_fwd,
            Mode::Bwd => idx.n_bwd,
        };
        let (target, amp) = match kind {
            LadderKind::Lower => {
                if n == 0 {
                    continue;
                }
                let t = match mode {
                    Mode::Fwd => FockIndex::new(idx.n_fwd - 1, idx.n_bwd),
                    Mode::Bwd => FockIndex::new(idx.n_fwd, idx.n_bwd - 1),
                };
                (t, (n as f64).sqrt())
            }
            LadderKind::Raise => {
                let t = match mode {
                    Mode::Fwd => FockIndex::new(idx.n_fwd + 1, idx.n_bwd),
                    Mode::Bwd => FockIndex::new(idx.n_fwd, idx.n_bwd + 1),
                };
                (t, (n as f64 + 1.0).sqrt())
            }
        };
        // Raising out of the truncation drops the column contribution.
        if let Some(row) = basis.index_of(target) {
            mat[(row, col)] = Complex64::new(amp, 0.0);
        }
    }
    ComplexOperator::from_matrix(basis.tag(), mat)
}

/// Rotated ladder operator `a_cos` or `a_sin`.
pub fn transformed_ladder(basis: &TwoModeBasis, which: TransformedMode) -> ComplexOperator {
    let fwd = ladder_matrix(basis, Mode::Fwd, LadderKind::Lower);
    let bwd = ladder_matrix(basis, Mode::Bwd, LadderKind::Lower);
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match which {
        TransformedMode::Cos => (&fwd + &bwd).scale(inv_sqrt2),
        TransformedMode::Sin => (&fwd - &bwd).scale(inv_sqrt2 * Complex64::i()),
    }
}

/// Number operator of one mode, `a† a`, built diagonally (exact at every
/// entry, including the edge).
pub fn number_operator(basis: &TwoModeBasis, mode: Mode) -> ComplexOperator {
    let diag = DVector::from_iterator(
        basis.len(),
        basis.states().iter().map(|idx| {
            let n = match mode {
                Mode::Fwd => idx.n_fwd,
                Mode::Bwd => idx.n_bwd,
            };
            Complex64::new(n as f64, 0.0)
        }),
    );
    ComplexOperator::from_matrix(basis.tag(), DMatrix::from_diagonal(&diag))
}

/// Free Hamiltonian of the mode pair.
pub fn hamiltonian(basis: &TwoModeBasis, k: f64, form: HamiltonianForm) -> Result<ComplexOperator> {
    if k <= 0.0 {
        return Err(Error::NonPositiveWaveNumber(k));
    }
    let op = match form {
        HamiltonianForm::Planewave => {
            let diag = DVector::from_iterator(
                basis.len(),
                basis
                    .states()
                    .iter()
                    .map(|idx| Complex64::new(k * (idx.total() as f64 + 1.0), 0.0)),
            );
            ComplexOperator::from_matrix(basis.tag(), DMatrix::from_diagonal(&diag))
        }
        HamiltonianForm::CosSin => {
            let a_cos = transformed_ladder(basis, TransformedMode::Cos);
            let a_sin = transformed_ladder(basis, TransformedMode::Sin);
            let id = ComplexOperator::identity(basis.tag());
            (&(&(&a_cos.adjoint() * &a_cos) + &(&a_sin.adjoint() * &a_sin)) + &id)
                .scale(Complex64::new(k, 0.0))
        }
    };
    Ok(op)
}

/// Rotation generator in the position-pair plane, diagonal with eigenvalue
/// `m = n_fwd - n_bwd`; the mode-pair momentum is `k` times this operator.
pub fn angular_momentum(basis: &TwoModeBasis) -> ComplexOperator {
    let diag = DVector::from_iterator(
        basis.len(),
        basis
            .states()
            .iter()
            .map(|idx| Complex64::new(idx.m() as f64, 0.0)),
    );
    ComplexOperator::from_matrix(basis.tag(), DMatrix::from_diagonal(&diag))
}

/// The same generator built from the rotated ladders,
/// `i (a_cos a_sin† - a_cos† a_sin)`; matches [`angular_momentum`] on the
/// truncation interior.
pub fn angular_momentum_from_ladders(basis: &TwoModeBasis) -> ComplexOperator {
    let a_cos = transformed_ladder(basis, TransformedMode::Cos);
    let a_sin = transformed_ladder(basis, TransformedMode::Sin);
    (&(&a_cos * &a_sin.adjoint()) - &(&a_cos.adjoint() * &a_sin)).scale(Complex64::i())
}

/// Amplitude ("position") operator of one rotated mode,
/// `(a + a†)/√(2k)`.
pub fn position_operator(
    basis: &TwoModeBasis,
    which: TransformedMode,
    k: f64,
) -> Result<ComplexOperator> {
    if k <= 0.0 {
        return Err(Error::NonPositiveWaveNumber(k));
    }
    let a = transformed_ladder(basis, which);
    Ok((&a + &a.adjoint()).scale(Complex64::new(1.0 / (2.0 * k).sqrt(), 0.0)))
}

/// Conjugate momentum of one rotated mode, `-i sqrt(k/2) (a - a†)`.
pub fn momentum_operator(
    basis: &TwoModeBasis,
    which: TransformedMode,
    k: f64,
) -> Result<ComplexOperator> {
    if k <= 0.0 {
        return Err(Error::NonPositiveWaveNumber(k));
    }
    let a = transformed_ladder(basis, which);
    Ok((&a - &a.adjoint()).scale(Complex64::new(0.0, -(k / 2.0).sqrt())))
}

/// Unit basis vector for the pair `idx`.
pub fn fock_state(basis: &TwoModeBasis, idx: FockIndex) -> Result<StateVector> {
    let pos = basis.require_index(idx)?;
    let mut coeffs = DVector::<Complex64>::zeros(basis.len());
    coeffs[pos] = Complex64::new(1.0, 0.0);
    Ok(StateVector::new(basis.tag(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisTag;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn entry(
        op: &ComplexOperator,
        basis: &TwoModeBasis,
        row: (u32, u32),
        col: (u32, u32),
    ) -> Complex64 {
        let r = basis.index_of(FockIndex::new(row.0, row.1)).unwrap();
        let c = basis.index_of(FockIndex::new(col.0, col.1)).unwrap();
        op.entry(r, c)
    }

    #[test]
    fn ladder_elements() {
        let basis = build_basis(4);
        let a = ladder_matrix(&basis, Mode::Fwd, LadderKind::Lower);
        let adag = ladder_matrix(&basis, Mode::Fwd, LadderKind::Raise);
        assert_eq!(entry(&a, &basis, (0, 0), (1, 0)), c(1.0));
        assert_abs_diff_eq!(
            entry(&adag, &basis, (2, 0), (1, 0)).re,
            2.0_f64.sqrt(),
            epsilon = 0.0
        );
        // Raise is the adjoint of lower.
        assert_eq!(adag, a.adjoint());
    }

    #[test]
    fn lowering_annihilates_vacuum() {
        let basis = build_basis(3);
        let a = ladder_matrix(&basis, Mode::Fwd, LadderKind::Lower);
        let vac = fock_state(&basis, FockIndex::new(0, 0)).unwrap();
        assert_eq!(vac.apply(&a).norm(), 0.0);
    }

    #[test]
    fn transformed_ladder_on_single_photon() {
        let basis = build_basis(3);
        let a_cos = transformed_ladder(&basis, TransformedMode::Cos);
        let a_sin = transformed_ladder(&basis, TransformedMode::Sin);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let got_cos = entry(&a_cos, &basis, (0, 0), (1, 0));
        let got_sin = entry(&a_sin, &basis, (0, 0), (1, 0));
        assert_abs_diff_eq!(got_cos.re, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(got_cos.im, 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(got_sin.im, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(got_sin.re, 0.0, epsilon = 0.0);
    }

    #[test]
    fn transformed_commutator_is_identity_on_interior() {
        let basis = build_basis(6);
        for which in [TransformedMode::Cos, TransformedMode::Sin] {
            let a = transformed_ladder(&basis, which);
            let comm = a.commutator(&a.adjoint());
            let id = ComplexOperator::identity(basis.tag());
            assert!((&comm - &id).interior_max_abs(1) < 1e-14);
        }
    }

    #[test]
    fn cross_mode_commutators_vanish() {
        let basis = build_basis(5);
        let a_f = ladder_matrix(&basis, Mode::Fwd, LadderKind::Lower);
        let a_b = ladder_matrix(&basis, Mode::Bwd, LadderKind::Lower);
        // Both lower, so no truncation loss: exact zero at every entry.
        assert_eq!(a_f.commutator(&a_b).max_abs(), 0.0);
        let a_cos = transformed_ladder(&basis, TransformedMode::Cos);
        let a_sin = transformed_ladder(&basis, TransformedMode::Sin);
        assert!(a_cos.commutator(&a_sin).max_abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_zero_point_and_spacing() {
        let basis = build_basis(4);
        let k = 0.75;
        let h = hamiltonian(&basis, k, HamiltonianForm::Planewave).unwrap();
        assert_abs_diff_eq!(entry(&h, &basis, (0, 0), (0, 0)).re, k, epsilon = 0.0);
        assert_abs_diff_eq!(
            entry(&h, &basis, (1, 0), (1, 0)).re,
            2.0 * k,
            epsilon = 0.0
        );
    }

    #[test]
    fn hamiltonian_forms_agree_on_interior() {
        let basis = build_basis(8);
        let k = 1.3;
        let plane = hamiltonian(&basis, k, HamiltonianForm::Planewave).unwrap();
        let cossin = hamiltonian(&basis, k, HamiltonianForm::CosSin).unwrap();
        assert!((&plane - &cossin).interior_max_abs(1) < 1e-12);
    }

    #[test]
    fn hamiltonian_rejects_nonpositive_k() {
        let basis = build_basis(2);
        assert!(matches!(
            hamiltonian(&basis, 0.0, HamiltonianForm::Planewave),
            Err(Error::NonPositiveWaveNumber(_))
        ));
        assert!(hamiltonian(&basis, -1.0, HamiltonianForm::CosSin).is_err());
    }

    #[test]
    fn angular_momentum_eigenvalues() {
        let basis = build_basis(4);
        let l = angular_momentum(&basis);
        for (idx, want) in [((1, 0), 1.0), ((0, 1), -1.0), ((1, 1), 0.0)] {
            let s = fock_state(&basis, FockIndex::new(idx.0, idx.1)).unwrap();
            assert_abs_diff_eq!(s.expectation(&l).re, want, epsilon = 0.0);
        }
    }

    #[test]
    fn angular_momentum_ladder_form_matches_on_interior() {
        let basis = build_basis(7);
        let diag = angular_momentum(&basis);
        let ladder = angular_momentum_from_ladders(&basis);
        assert!((&diag - &ladder).interior_max_abs(1) < 1e-13);
    }

    #[test]
    fn number_operator_relations() {
        // a† a of each plane-wave mode in terms of the rotated ladders.
        let basis = build_basis(8);
        let a_cos = transformed_ladder(&basis, TransformedMode::Cos);
        let a_sin = transformed_ladder(&basis, TransformedMode::Sin);
        let half = Complex64::new(0.5, 0.0);
        let i = Complex64::i();

        let cc = &a_cos.adjoint() * &a_cos;
        let ss = &a_sin.adjoint() * &a_sin;
        let cs = (&a_cos.adjoint() * &a_sin).scale(i);
        let sc = (&a_cos * &a_sin.adjoint()).scale(i);

        let n_fwd_built = (&(&(&cc + &ss) - &cs) + &sc).scale(half);
        let n_bwd_built = (&(&(&cc + &ss) + &cs) - &sc).scale(half);

        let n_fwd = number_operator(&basis, Mode::Fwd);
        let n_bwd = number_operator(&basis, Mode::Bwd);
        assert!((&n_fwd - &n_fwd_built).interior_max_abs(2) < 1e-12);
        assert!((&n_bwd - &n_bwd_built).interior_max_abs(2) < 1e-12);
    }

    #[test]
    fn hamiltonian_commutes_with_angular_momentum() {
        let basis = build_basis(6);
        let l = angular_momentum(&basis);
        for form in [HamiltonianForm::Planewave, HamiltonianForm::CosSin] {
            let h = hamiltonian(&basis, 1.0, form).unwrap();
            assert!(h.commutator(&l).interior_max_abs(2) < 1e-13);
        }
    }

    #[test]
    fn fock_state_is_unit_and_rejects_out_of_range() {
        let basis = build_basis(3);
        let s = fock_state(&basis, FockIndex::new(1, 0)).unwrap();
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 0.0);
        assert_eq!(
            s.coeff(basis.index_of(FockIndex::new(1, 0)).unwrap()),
            c(1.0)
        );
        assert!(matches!(
            fock_state(&basis, FockIndex::new(3, 1)),
            Err(Error::OccupationOutOfRange { .. })
        ));
    }

    #[test]
    fn fock_state_matches_ladder_construction() {
        // (a_fwd†)^2 (a_bwd†)^1 |0> / sqrt(2! 1!) reproduces |(2,1)>.
        let basis = build_basis(5);
        let raise_f = ladder_matrix(&basis, Mode::Fwd, LadderKind::Raise);
        let raise_b = ladder_matrix(&basis, Mode::Bwd, LadderKind::Raise);
        let vac = fock_state(&basis, FockIndex::new(0, 0)).unwrap();
        let built = vac
            .apply(&raise_b)
            .apply(&raise_f)
            .apply(&raise_f)
            .phase_multiplied(|_| Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0));
        let direct = fock_state(&basis, FockIndex::new(2, 1)).unwrap();
        let diff = (built.coeffs() - direct.coeffs()).norm();
        assert!(diff < 1e-12, "ladder construction deviates by {diff}");
    }

    #[test]
    fn position_momentum_reject_nonpositive_k() {
        let basis = build_basis(2);
        assert!(position_operator(&basis, TransformedMode::Cos, 0.0).is_err());
        assert!(momentum_operator(&basis, TransformedMode::Sin, -2.0).is_err());
    }

    #[test]
    fn hamiltonian_from_positions_and_momenta() {
        // H = (p_cos^2 + p_sin^2 + k^2 A_cos^2 + k^2 A_sin^2) / 2 on the
        // interior (two ladder products per square).
        let basis = build_basis(9);
        let k = 2.0;
        let a_cos = position_operator(&basis, TransformedMode::Cos, k).unwrap();
        let a_sin = position_operator(&basis, TransformedMode::Sin, k).unwrap();
        let p_cos = momentum_operator(&basis, TransformedMode::Cos, k).unwrap();
        let p_sin = momentum_operator(&basis, TransformedMode::Sin, k).unwrap();
        let k2 = Complex64::new(k * k, 0.0);
        let built = (&(&(&p_cos * &p_cos) + &(&p_sin * &p_sin))
            + &(&(&a_cos * &a_cos) + &(&a_sin * &a_sin)).scale(k2))
            .scale(Complex64::new(0.5, 0.0));
        let h = hamiltonian(&basis, k, HamiltonianForm::Planewave).unwrap();
        assert!((&built - &h).interior_max_abs(2) < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

        #[test]
        fn ladder_commutator_identity_on_interior(n_max in 2u32..9) {
            let basis = build_basis(n_max);
            let a = ladder_matrix(&basis, Mode::Fwd, LadderKind::Lower);
            let comm = a.commutator(&a.adjoint());
            let id = ComplexOperator::identity(BasisTag::TwoMode { n_max });
            prop_assert!((&comm - &id).interior_max_abs(1) < 1e-14);
        }

        #[test]
        fn basis_serialization_is_stable(n_max in 0u32..12) {
            let basis = build_basis(n_max);
            let op = ComplexOperator::identity(basis.tag());
            prop_assert_eq!(op.to_json_string().unwrap(), op.to_json_string().unwrap());
        }
    }
}
