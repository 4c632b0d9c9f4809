//! The complex amplitude operator, the unitary phase operator built from it,
//! the forward-sector restriction with its correction sequence, and the
//! plain superdiagonal comparator.
//!
//! The phase operator represents `exp(-i phi)` on the position-pair plane
//! and is assembled as `E = (A A†)^(-1/2) A` with
//! `A = (a_fwd + a_bwd†)/√(2k)`. Two truncation facts shape the code:
//!
//! * `A A†` must be the truncation of the exact product, i.e. the
//!   normal-ordered `(N_fwd + N_bwd + 1 + a_fwd a_bwd + h.c.)/(2k)`. The
//!   product of the two truncated factors is singular (each momentum block
//!   maps into a strictly smaller one, so kernels appear), while the exact
//!   truncation is strictly positive definite.
//! * `A A†` commutes with the rotation generator, so it is block diagonal
//!   in the momentum quantum number `m`; the inverse square root is taken
//!   block by block, which is algebraically identical to the dense route
//!   and keeps large truncations cheap.
//!
//! Edge rows and columns (total occupation at the truncation) are retained
//! in every matrix but are untrusted; assertions about unitarity and
//! element values are made on the interior only.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::basis::{BasisTag, TwoModeBasis};
use crate::fock::{ladder_matrix, LadderKind, Mode};
use crate::operator::ComplexOperator;
use crate::special::{ln_gamma_half_shift, SQRT_PI_OVER_2};
use crate::{Error, Result};

/// Complex amplitude operator `A = (a_fwd + a_bwd†)/√(2k)`: annihilates a
/// forward photon or creates a backward one. Its adjoint is
/// `(a_fwd† + a_bwd)/√(2k)`.
pub fn amplitude_operator(basis: &TwoModeBasis, k: f64) -> Result<ComplexOperator> {
    if k <= 0.0 {
        return Err(Error::NonPositiveWaveNumber(k));
    }
    let a_fwd = ladder_matrix(basis, Mode::Fwd, LadderKind::Lower);
    let raise_bwd = ladder_matrix(basis, Mode::Bwd, LadderKind::Raise);
    Ok((&a_fwd + &raise_bwd).scale(Complex64::new(1.0 / (2.0 * k).sqrt(), 0.0)))
}

/// Truncation of the exact `A A†`:
/// `(N_fwd + N_bwd + 1 + a_fwd a_bwd + (a_fwd a_bwd)†)/(2k)`.
///
/// Both lowering factors keep every state inside the basis, so the product
/// of truncated matrices here *is* the truncated product; the assembled
/// matrix is Hermitian, block diagonal in `m` and strictly positive
/// definite.
pub fn amplitude_gram(basis: &TwoModeBasis, k: f64) -> Result<ComplexOperator> {
    if k <= 0.0 {
        return Err(Error::NonPositiveWaveNumber(k));
    }
    let a_fwd = ladder_matrix(basis, Mode::Fwd, LadderKind::Lower);
    let a_bwd = ladder_matrix(basis, Mode::Bwd, LadderKind::Lower);
    let lower_pair = &a_fwd * &a_bwd;
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        basis.len(),
        basis
            .states()
            .iter()
            .map(|idx| Complex64::new(idx.total() as f64 + 1.0, 0.0)),
    ));
    let number_part = ComplexOperator::from_matrix(basis.tag(), diag);
    Ok((&(&number_part + &lower_pair) + &lower_pair.adjoint())
        .scale(Complex64::new(1.0 / (2.0 * k), 0.0)))
}

/// Inverse square root of a Hermitian positive-definite operator by
/// eigendecomposition: `M = U Λ U†` gives `U Λ^(-1/2) U†`.
///
/// The input is symmetrized as `(M + M†)/2` first. Any eigenvalue at or
/// below `rel_floor` times the largest one is an error — a near-zero
/// eigenvalue of an operator that should be strictly positive signals an
/// over-aggressive truncation or the wrong matrix, so nothing is clamped.
pub fn herm_inv_sqrt(m: &ComplexOperator, rel_floor: f64) -> Result<ComplexOperator> {
    assert!(rel_floor > 0.0, "rel_floor must be positive");
    let mat = herm_inv_sqrt_matrix(m.hermitized().matrix(), rel_floor)?;
    Ok(ComplexOperator::from_matrix(m.tag(), mat))
}

fn herm_inv_sqrt_matrix(mat: &DMatrix<Complex64>, rel_floor: f64) -> Result<DMatrix<Complex64>> {
    let eigen = mat.clone().symmetric_eigen();
    let lambda_max = eigen.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
    let floor = rel_floor * lambda_max;
    let lambda_min = eigen.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
    if lambda_min <= floor {
        return Err(Error::NonPositiveSpectrum {
            min_eigenvalue: lambda_min,
            floor,
        });
    }
    let inv_roots = DVector::from_iterator(
        eigen.eigenvalues.len(),
        eigen
            .eigenvalues
            .iter()
            .map(|&l| Complex64::new(1.0 / l.sqrt(), 0.0)),
    );
    let u = &eigen.eigenvectors;
    let scaled = u * DMatrix::from_diagonal(&inv_roots);
    Ok(&scaled * u.adjoint())
}

/// The phase operator `E = (A A†)^(-1/2) A` on the truncated basis.
///
/// `A` scales as `1/√k` and the inverse root as `√k`, so the result is
/// independent of `k` up to rounding. The gram matrix is block diagonal in
/// `m`, so the inverse square root is computed per block; `E` then connects
/// each `m` block to the `m - 1` block and every other entry is exactly
/// zero.
pub fn phase_operator(basis: &TwoModeBasis, k: f64, rel_floor: f64) -> Result<ComplexOperator> {
    let amp = amplitude_operator(basis, k)?;
    let gram = amplitude_gram(basis, k)?;
    let blocks = basis.m_blocks();

    let dim = basis.len();
    let mut result = DMatrix::<Complex64>::zeros(dim, dim);
    for window in blocks.windows(2) {
        let (_, ref col_idx) = window[1]; // momentum m
        let (_, ref row_idx) = window[0]; // momentum m - 1
        if col_idx.is_empty() || row_idx.is_empty() {
            continue;
        }
        let gram_block = extract_block(gram.matrix(), row_idx, row_idx);
        let inv_root = herm_inv_sqrt_matrix(&gram_block, rel_floor)?;
        let amp_block = extract_block(amp.matrix(), row_idx, col_idx);
        let product = &inv_root * &amp_block;
        for (bc, &c) in col_idx.iter().enumerate() {
            for (br, &r) in row_idx.iter().enumerate() {
                result[(r, c)] = product[(br, bc)];
            }
        }
    }
    Ok(ComplexOperator::from_matrix(basis.tag(), result))
}

fn extract_block(
    mat: &DMatrix<Complex64>,
    rows: &[usize],
    cols: &[usize],
) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| mat[(rows[i], cols[j])])
}

/// Largest entry magnitude on pairs that violate the selection rule
/// `m_row = m_col - 1`.
pub fn selection_rule_violation(e: &ComplexOperator, basis: &TwoModeBasis) -> f64 {
    assert_eq!(e.tag(), basis.tag(), "basis mismatch");
    let ms: Vec<i64> = basis.states().iter().map(|idx| idx.m()).collect();
    let mut worst = 0.0_f64;
    for col in 0..basis.len() {
        for row in 0..basis.len() {
            if ms[row] != ms[col] - 1 {
                worst = worst.max(e.entry(row, col).norm());
            }
        }
    }
    worst
}

/// Restriction of `E` to the forward sector: a `(n_keep+1)`-dimensional
/// matrix whose only nonzero entries are
/// `(n, n+1) = <(n,0)| E |(n+1,0)>`.
pub fn restrict_forward(
    e: &ComplexOperator,
    basis: &TwoModeBasis,
    n_keep: usize,
) -> Result<ComplexOperator> {
    assert_eq!(e.tag(), basis.tag(), "basis mismatch");
    if n_keep + 1 > basis.n_max() as usize {
        return Err(Error::ForwardSectorTooLarge {
            n_keep,
            n_max: basis.n_max(),
        });
    }
    let dim = n_keep + 1;
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..n_keep {
        let row = crate::basis::FockIndex::new(n as u32, 0).position();
        let col = crate::basis::FockIndex::new(n as u32 + 1, 0).position();
        mat[(n, n + 1)] = e.entry(row, col);
    }
    Ok(ComplexOperator::from_matrix(BasisTag::Forward { dim }, mat))
}

/// Forward phase operator built directly from the correction sequence:
/// entries `a_n` on the first superdiagonal. This is the exact infinite-
/// space restriction, free of truncation-edge contamination, and is what
/// the physics layer uses for large window states.
pub fn forward_phase_operator(n_keep: usize) -> ComplexOperator {
    let dim = n_keep + 1;
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..n_keep {
        mat[(n, n + 1)] = Complex64::new(phase_sequence(n), 0.0);
    }
    ComplexOperator::from_matrix(BasisTag::Forward { dim }, mat)
}

/// The classic superdiagonal-of-ones comparator on the forward sector.
/// Satisfies `S† S = I - |0><0|` exactly, which is why it cannot be
/// unitary.
pub fn sg_operator(n_keep: usize) -> ComplexOperator {
    assert!(n_keep >= 1, "need at least one superdiagonal entry");
    let dim = n_keep + 1;
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..n_keep {
        mat[(n, n + 1)] = Complex64::new(1.0, 0.0);
    }
    ComplexOperator::from_matrix(BasisTag::Forward { dim }, mat)
}

/// Correction sequence `a_n = Γ(n + 3/2) / (n! sqrt(n+1))`, evaluated in
/// closed form.
///
/// Small `n` uses the exact ratio product; larger `n` goes through
/// `ln Γ(n+3/2) - ln Γ(n+1)` in the cancellation-free combined form (the
/// `ln(n+1)/2` term cancels against the normalization exactly), keeping the
/// result at a few ulp for all `n`. The sequence starts at `sqrt(pi)/2`,
/// increases strictly and approaches 1 from below like `1 - 1/(8(n+1))`.
pub fn phase_sequence(n: usize) -> f64 {
    let x = (n + 1) as f64;
    if n < 20 {
        let mut r = SQRT_PI_OVER_2;
        for j in 1..=n {
            r *= (j as f64 + 0.5) / j as f64;
        }
        r / x.sqrt()
    } else {
        // a_n = exp(lnΓ(x+1/2) - lnΓ(x) - ln(x)/2); the shift already
        // carries a +ln(x)/2 term, so only the x-dependent remainder is
        // exponentiated.
        (ln_gamma_half_shift(x) - 0.5 * x.ln()).exp()
    }
}

/// The correction sequence generated by its exact algebraic recurrence
/// `a_{n+1} = a_n (n + 3/2)/(n + 1) sqrt((n+1)/(n+2))` from
/// `a_0 = sqrt(pi)/2`. Second evaluation route for [`phase_sequence`].
#[derive(Debug, Clone)]
pub struct PhaseSequence {
    values: Vec<f64>,
}

impl PhaseSequence {
    /// Generates `len` values by the recurrence.
    pub fn by_recurrence(len: usize) -> Self {
        let mut values = Vec::with_capacity(len);
        if len == 0 {
            return Self { values };
        }
        let mut a = SQRT_PI_OVER_2;
        values.push(a);
        for n in 0..len - 1 {
            let nf = n as f64;
            a *= (nf + 1.5) / (nf + 1.0) * ((nf + 1.0) / (nf + 2.0)).sqrt();
            values.push(a);
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// CSV serialization: header `n,a_n`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_n\n");
        for (n, a) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{:.16e}\n", n, a));
        }
        out
    }
}
