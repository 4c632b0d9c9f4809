//! Dense complex operators and state vectors tagged with the basis they act
//! on, plus the JSON serialization used for operator dumps.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::BasisTag;
use crate::{Error, Result};

/// Dense complex square matrix acting on a tagged basis.
///
/// Adjoint, sums, products and commutators are defined only between
/// operators with equal tags; mixing tags is a programming error and
/// panics, mirroring the dimension checks of the underlying matrix type.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexOperator {
    tag: BasisTag,
    mat: DMatrix<Complex64>,
}

impl ComplexOperator {
    pub fn from_matrix(tag: BasisTag, mat: DMatrix<Complex64>) -> Self {
        assert_eq!(
            mat.nrows(),
            tag.dim(),
            "matrix dimension does not match the tagged basis"
        );
        assert!(mat.is_square(), "operators are square");
        Self { tag, mat }
    }

    pub fn zeros(tag: BasisTag) -> Self {
        let d = tag.dim();
        Self {
            tag,
            mat: DMatrix::zeros(d, d),
        }
    }

    pub fn identity(tag: BasisTag) -> Self {
        let d = tag.dim();
        Self {
            tag,
            mat: DMatrix::identity(d, d),
        }
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Complex64) {
        self.mat[(row, col)] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self {
            tag: self.tag,
            mat: self.mat.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            tag: self.tag,
            mat: &self.mat * factor,
        }
    }

    /// Hermitian part `(M + M†)/2`.
    pub fn hermitized(&self) -> Self {
        Self {
            tag: self.tag,
            mat: (&self.mat + self.mat.adjoint()).scale(0.5),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.mat - self.mat.adjoint())
            .iter()
            .all(|c| c.norm() <= tol)
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.mat.iter().fold(0.0, |acc, c| acc.max(c.norm()))
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.tag, other.tag, "basis mismatch");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .fold(0.0, |acc, (a, b)| acc.max((a - b).norm()))
    }

    /// Largest entry magnitude over rows and columns whose occupation stays
    /// at least `margin` below the truncation. Operator identities of the
    /// untruncated space hold only on this interior; the edge rows and
    /// columns are retained in the matrix but are untrusted.
    pub fn interior_max_abs(&self, margin: u32) -> f64 {
        let cutoff = self.tag.max_occupation().saturating_sub(margin);
        let keep: Vec<bool> = (0..self.dim())
            .map(|pos| self.tag.occupation(pos) <= cutoff)
            .collect();
        let mut acc = 0.0_f64;
        for (col, &keep_col) in keep.iter().enumerate() {
            if !keep_col {
                continue;
            }
            for (row, &keep_row) in keep.iter().enumerate() {
                if keep_row {
                    acc = acc.max(self.mat[(row, col)].norm());
                }
            }
        }
        acc
    }

    /// Largest entry magnitude of `self - identity` on the interior defined
    /// by `margin`.
    pub fn interior_max_abs_vs_identity(&self, margin: u32) -> f64 {
        let id = Self::identity(self.tag);
        (self - &id).interior_max_abs(margin)
    }

    /// Serializes to the canonical JSON object
    /// `{basis: {n_max, ordering: "total-then-nfwd"}, shape, entries}` with
    /// row-major `[re, im]` entry pairs. Only two-mode operators have a
    /// serialized form.
    pub fn to_json_string(&self) -> Result<String> {
        let BasisTag::TwoMode { n_max } = self.tag else {
            return Err(Error::InvalidSerialization(
                "only two-mode operators serialize to JSON".into(),
            ));
        };
        let dto = OperatorJson {
            basis: BasisDescriptor::new(n_max),
            shape: [self.dim(), self.dim()],
            entries: row_major_entries(&self.mat),
        };
        serde_json::to_string(&dto).map_err(|e| Error::InvalidSerialization(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let dto: OperatorJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidSerialization(e.to_string()))?;
        dto.basis.validate()?;
        let tag = BasisTag::TwoMode {
            n_max: dto.basis.n_max,
        };
        let dim = tag.dim();
        if dto.shape != [dim, dim] || dto.entries.len() != dim * dim {
            return Err(Error::InvalidSerialization(format!(
                "shape {:?} does not match n_max = {}",
                dto.shape, dto.basis.n_max
            )));
        }
        let mat = DMatrix::from_fn(dim, dim, |r, c| {
            let [re, im] = dto.entries[r * dim + c];
            Complex64::new(re, im)
        });
        Ok(Self { tag, mat })
    }
}

macro_rules! impl_operator_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &ComplexOperator {
            type Output = ComplexOperator;
            fn $method(self, rhs: &ComplexOperator) -> ComplexOperator {
                assert_eq!(self.tag, rhs.tag, "basis mismatch");
                ComplexOperator {
                    tag: self.tag,
                    mat: &self.mat $op &rhs.mat,
                }
            }
        }
    };
}

impl_operator_binop!(Add, add, +);
impl_operator_binop!(Sub, sub, -);
impl_operator_binop!(Mul, mul, *);

/// Complex coefficient vector over a tagged basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    tag: BasisTag,
    coeffs: DVector<Complex64>,
}

impl StateVector {
    pub fn new(tag: BasisTag, coeffs: DVector<Complex64>) -> Self {
        assert_eq!(
            coeffs.len(),
            tag.dim(),
            "coefficient count does not match the tagged basis"
        );
        Self { tag, coeffs }
    }

    /// Forward-sector state from plain coefficients.
    pub fn forward(coeffs: Vec<Complex64>) -> Self {
        let dim = coeffs.len();
        Self {
            tag: BasisTag::Forward { dim },
            coeffs: DVector::from_vec(coeffs),
        }
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, pos: usize) -> Complex64 {
        self.coeffs[pos]
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn normalized(&self) -> Self {
        Self {
            tag: self.tag,
            coeffs: self.coeffs.normalize(),
        }
    }

    /// `<self|other>` with the left factor conjugated.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.tag, other.tag, "basis mismatch");
        self.coeffs.dotc(&other.coeffs)
    }

    /// `<self|op|self>`; checked variant used by the physics layer.
    pub fn try_expectation(&self, op: &ComplexOperator) -> Result<Complex64> {
        if self.tag != op.tag() {
            return Err(Error::BasisMismatch {
                left: self.tag,
                right: op.tag(),
            });
        }
        Ok(self.coeffs.dotc(&(op.matrix() * &self.coeffs)))
    }

    /// `<self|op|self>`; panics on mismatched tags.
    pub fn expectation(&self, op: &ComplexOperator) -> Complex64 {
        self.try_expectation(op).expect("basis mismatch")
    }

    /// Applies `op` to the state.
    pub fn apply(&self, op: &ComplexOperator) -> Self {
        assert_eq!(self.tag, op.tag(), "basis mismatch");
        Self {
            tag: self.tag,
            coeffs: op.matrix() * &self.coeffs,
        }
    }

    /// Coefficient-wise product with unit-magnitude phases, used for
    /// diagonal evolution and rotation operators.
    pub fn phase_multiplied(&self, phase_at: impl Fn(usize) -> Complex64) -> Self {
        let coeffs = DVector::from_fn(self.coeffs.len(), |i, _| self.coeffs[i] * phase_at(i));
        Self {
            tag: self.tag,
            coeffs,
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        let BasisTag::TwoMode { n_max } = self.tag else {
            return Err(Error::InvalidSerialization(
                "only two-mode states serialize to JSON".into(),
            ));
        };
        let dto = StateJson {
            basis: BasisDescriptor::new(n_max),
            shape: [self.dim()],
            entries: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        };
        serde_json::to_string(&dto).map_err(|e| Error::InvalidSerialization(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let dto: StateJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidSerialization(e.to_string()))?;
        dto.basis.validate()?;
        let tag = BasisTag::TwoMode {
            n_max: dto.basis.n_max,
        };
        if dto.shape != [tag.dim()] || dto.entries.len() != tag.dim() {
            return Err(Error::InvalidSerialization(format!(
                "shape {:?} does not match n_max = {}",
                dto.shape, dto.basis.n_max
            )));
        }
        let coeffs = DVector::from_iterator(
            tag.dim(),
            dto.entries.iter().map(|&[re, im]| Complex64::new(re, im)),
        );
        Ok(Self { tag, coeffs })
    }
}

pub(crate) const CANONICAL_ORDERING: &str = "total-then-nfwd";

#[derive(Serialize, Deserialize)]
struct BasisDescriptor {
    n_max: u32,
    ordering: String,
}

impl BasisDescriptor {
    fn new(n_max: u32) -> Self {
        Self {
            n_max,
            ordering: CANONICAL_ORDERING.to_string(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.ordering != CANONICAL_ORDERING {
            return Err(Error::InvalidSerialization(format!(
                "unknown basis ordering {:?}",
                self.ordering
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    basis: BasisDescriptor,
    shape: [usize; 2],
    entries: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    basis: BasisDescriptor,
    shape: [usize; 1],
    entries: Vec<[f64; 2]>,
}

fn row_major_entries(mat: &DMatrix<Complex64>) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(mat.nrows() * mat.ncols());
    for r in 0..mat.nrows() {
        for c in 0..mat.ncols() {
            let v = mat[(r, c)];
            out.push([v.re, v.im]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag3() -> BasisTag {
        // n_max = 1 gives dimension 3.
        BasisTag::TwoMode { n_max: 1 }
    }

    #[test]
    fn adjoint_product_commutator() {
        let a = ComplexOperator::from_matrix(
            tag3(),
            DMatrix::from_row_slice(
                3,
                3,
                &[
                    Complex64::new(0.0, 0.0),
                    Complex64::new(1.0, 0.5),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(2.0, 0.0),
                    Complex64::new(0.0, -1.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                ],
            ),
        );
        let id = ComplexOperator::identity(tag3());
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!((&a * &id), a);
        let comm = a.commutator(&id);
        assert_eq!(comm.max_abs(), 0.0);
    }

    #[test]
    #[should_panic(expected = "basis mismatch")]
    fn mixed_tags_panic() {
        let a = ComplexOperator::identity(tag3());
        let b = ComplexOperator::identity(BasisTag::Forward { dim: 3 });
        let _ = &a * &b;
    }

    #[test]
    fn interior_mask_drops_edge() {
        // n_max = 1: positions 0 (total 0), 1 and 2 (total 1).
        let mut op = ComplexOperator::zeros(tag3());
        op.set_entry(0, 0, Complex64::new(0.25, 0.0));
        op.set_entry(2, 1, Complex64::new(9.0, 0.0));
        assert_eq!(op.interior_max_abs(0), 9.0);
        assert_eq!(op.interior_max_abs(1), 0.25);
    }

    #[test]
    fn operator_json_round_trip_and_stability() {
        let mut op = ComplexOperator::zeros(tag3());
        op.set_entry(0, 2, Complex64::new(0.5, -0.125));
        let one = op.to_json_string().unwrap();
        let two = op.to_json_string().unwrap();
        assert_eq!(one, two, "serialization must be byte-stable");
        let back = ComplexOperator::from_json_str(&one).unwrap();
        assert_eq!(back, op);
        assert!(one.contains("total-then-nfwd"));
    }

    #[test]
    fn state_json_round_trip() {
        let s = StateVector::new(
            tag3(),
            DVector::from_vec(vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.0, 0.8),
                Complex64::new(0.0, 0.0),
            ]),
        );
        let text = s.to_json_string().unwrap();
        let back = StateVector::from_json_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn forward_operators_do_not_serialize() {
        let op = ComplexOperator::identity(BasisTag::Forward { dim: 2 });
        assert!(op.to_json_string().is_err());
    }
}
