//! Truncated two-mode Fock space: occupation pairs, canonical ordering and
//! the basis tag that every operator and state carries.

use crate::{Error, Result};

/// Occupation numbers of one `(+k, -k)` mode pair.
///
/// `n_fwd` counts photons moving along `+k`, `n_bwd` photons moving along
/// `-k`. The total occupation is `n_fwd + n_bwd` and the momentum quantum
/// number (the rotation eigenvalue in the position-pair plane) is
/// `m = n_fwd - n_bwd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockIndex {
    pub n_fwd: u32,
    pub n_bwd: u32,
}

impl FockIndex {
    pub fn new(n_fwd: u32, n_bwd: u32) -> Self {
        Self { n_fwd, n_bwd }
    }

    /// Total occupation `n_fwd + n_bwd`.
    pub fn total(&self) -> u32 {
        self.n_fwd + self.n_bwd
    }

    /// Momentum quantum number `m = n_fwd - n_bwd`.
    pub fn m(&self) -> i64 {
        self.n_fwd as i64 - self.n_bwd as i64
    }

    /// Radial quantum number `min(n_fwd, n_bwd)` of the polar wavefunction.
    pub fn n_radial(&self) -> u32 {
        self.n_fwd.min(self.n_bwd)
    }

    /// Inverse of the canonical position formula: recovers the pair stored
    /// at `pos` in any basis ordered by ascending total, then ascending
    /// `n_fwd`.
    pub fn from_position(pos: usize) -> Self {
        // Largest t with t(t+1)/2 <= pos; float estimate then exact fix-up.
        let mut t = (((8 * pos + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
        while (t + 1) * (t + 2) / 2 <= pos {
            t += 1;
        }
        while t * (t + 1) / 2 > pos {
            t -= 1;
        }
        let n_fwd = (pos - t * (t + 1) / 2) as u32;
        Self::new(n_fwd, t as u32 - n_fwd)
    }

    /// Canonical position of this pair: `total*(total+1)/2 + n_fwd`.
    pub fn position(&self) -> usize {
        let t = self.total() as usize;
        t * (t + 1) / 2 + self.n_fwd as usize
    }
}

/// Identifies the space an operator or state acts on. Algebraic operations
/// are only defined between objects carrying equal tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Two-mode space truncated at total occupation `n_max`.
    TwoMode { n_max: u32 },
    /// Forward sector spanned by `|0>..|dim-1>` (zero backward photons).
    Forward { dim: usize },
}

impl BasisTag {
    /// Matrix dimension of the tagged space.
    pub fn dim(&self) -> usize {
        match *self {
            BasisTag::TwoMode { n_max } => {
                let n = n_max as usize;
                (n + 1) * (n + 2) / 2
            }
            BasisTag::Forward { dim } => dim,
        }
    }

    /// Occupation-style grading of basis position `pos`: the total photon
    /// number for a two-mode space, the Fock index for the forward sector.
    /// Interior/edge distinctions are made against this number.
    pub fn occupation(&self, pos: usize) -> u32 {
        match *self {
            BasisTag::TwoMode { .. } => FockIndex::from_position(pos).total(),
            BasisTag::Forward { .. } => pos as u32,
        }
    }

    /// Largest occupation present in the tagged space.
    pub fn max_occupation(&self) -> u32 {
        match *self {
            BasisTag::TwoMode { n_max } => n_max,
            BasisTag::Forward { dim } => dim.saturating_sub(1) as u32,
        }
    }
}

/// Ordered enumeration of every [`FockIndex`] with total occupation
/// `<= n_max`.
///
/// The ordering is canonical and reproducible: ascending total occupation,
/// ties broken by ascending `n_fwd`. Its size is
/// `(n_max+1)(n_max+2)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoModeBasis {
    n_max: u32,
    states: Vec<FockIndex>,
}

impl TwoModeBasis {
    /// Builds the basis for total occupation up to `n_max`.
    pub fn new(n_max: u32) -> Self {
        let mut states = Vec::with_capacity(BasisTag::TwoMode { n_max }.dim());
        for total in 0..=n_max {
            for n_fwd in 0..=total {
                states.push(FockIndex::new(n_fwd, total - n_fwd));
            }
        }
        Self { n_max, states }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn tag(&self) -> BasisTag {
        BasisTag::TwoMode { n_max: self.n_max }
    }

    /// The pair stored at `pos`. Panics if `pos` is out of range.
    pub fn state(&self, pos: usize) -> FockIndex {
        self.states[pos]
    }

    pub fn states(&self) -> &[FockIndex] {
        &self.states
    }

    /// Position of `idx`, or `None` when its total exceeds the truncation.
    pub fn index_of(&self, idx: FockIndex) -> Option<usize> {
        (idx.total() <= self.n_max).then(|| idx.position())
    }

    /// Like [`Self::index_of`] but reports the violation as an error.
    pub fn require_index(&self, idx: FockIndex) -> Result<usize> {
        self.index_of(idx).ok_or(Error::OccupationOutOfRange {
            n_fwd: idx.n_fwd,
            n_bwd: idx.n_bwd,
            n_max: self.n_max,
        })
    }

    /// Basis positions grouped by momentum quantum number, ascending in `m`.
    /// Within one block the positions keep the canonical order (ascending
    /// total).
    pub fn m_blocks(&self) -> Vec<(i64, Vec<usize>)> {
        let mut blocks: Vec<(i64, Vec<usize>)> = (-(self.n_max as i64)..=self.n_max as i64)
            .map(|m| (m, Vec::new()))
            .collect();
        for (pos, idx) in self.states.iter().enumerate() {
            let slot = (idx.m() + self.n_max as i64) as usize;
            blocks[slot].1.push(pos);
        }
        blocks
    }
}
