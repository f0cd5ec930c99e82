//! Fusion rings: the based-ring data structure and everything computed from it.

mod action;
pub mod catalog;
mod construct;
mod dims;
mod factor;
mod grading;
pub mod group;
mod iso;
mod subring;

pub use action::{fixed_point_subgroup, invertibles, orbit_decomposition, InvertibleGroup, Orbits};
pub use construct::{construct_group_ring, construct_near_group, construct_rmn, direct_product};
pub use dims::{fpdim_basis, FpDims};
pub use factor::{factor_pointed, PointedFactorization};
pub use grading::{dimensional_grading, universal_grading, GradingStructure};
pub use group::FiniteGroup;
pub use iso::{grothendieck_iso, IsoSearch};
pub use subring::{adjoint_subring, subring_generated, Subring};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("malformed tensor: {0}")]
    MalformedTensor(String),
    #[error("fusion ring axioms fail: {0}")]
    Axioms(AxiomReport),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a generalized near-group ring: {0}")]
    NotGeneralizedNearGroup(String),
    #[error("exact dimensions unavailable: {0}")]
    ExactUnavailable(String),
    #[error("grading inconsistent: product of components {left} and {right} spans several components")]
    GradingInconsistent { left: usize, right: usize },
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
}

/// A finite based `Z≥0`-ring with a distinguished unit at index 0.
///
/// `N[i][j][k]` is the multiplicity of basis element `k` in `b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionRing {
    name: String,
    labels: Vec<String>,
    dual: Vec<usize>,
    tensor: Vec<u32>,
}

/// A single failed axiom, with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Unit { i: usize, j: usize, k: usize, found: u32 },
    DualNotInvolution { i: usize },
    DualOfUnit,
    Duality { i: usize, j: usize, found: u32 },
    Associativity { i: usize, j: usize, k: usize, l: usize, left: u64, right: u64 },
    AntiInvolution { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unit { i, j, k, found } => {
                write!(f, "unit law: N[{i}][{j}][{k}] = {found}")
            }
            Violation::DualNotInvolution { i } => write!(f, "dual is not an involution at {i}"),
            Violation::DualOfUnit => write!(f, "dual(0) != 0"),
            Violation::Duality { i, j, found } => {
                write!(f, "duality: N[{i}][{j}][0] = {found}")
            }
            Violation::Associativity { i, j, k, l, left, right } => write!(
                f,
                "associativity at ({i},{j},{k},{l}): {left} != {right}"
            ),
            Violation::AntiInvolution { i, j, k } => {
                write!(f, "anti-involution: N[{i}][{j}][{k}] != N[{j}*][{i}*][{k}*]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// True when violations were dropped after [`AxiomReport::LIMIT`].
    pub truncated: bool,
}

impl AxiomReport {
    pub const LIMIT: usize = 256;

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, v: Violation) -> bool {
        if self.violations.len() >= Self::LIMIT {
            self.truncated = true;
            return false;
        }
        self.violations.push(v);
        true
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        let shown: Vec<String> = self.violations.iter().take(4).map(|v| v.to_string()).collect();
        write!(f, "{} violation(s): {}", self.violations.len(), shown.join("; "))?;
        if self.violations.len() > 4 || self.truncated {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

impl FusionRing {
    /// Builds a ring from a dense tensor, checking only shapes and index ranges.
    /// Use [`FusionRing::verify_axioms`] (or [`FusionRing::validated`]) for the axioms.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        dual: Vec<usize>,
        tensor: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, RingError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(RingError::MalformedTensor("rank must be positive".into()));
        }
        if dual.len() != rank {
            return Err(RingError::MalformedTensor(format!(
                "dual has length {}, expected {rank}",
                dual.len()
            )));
        }
        if let Some(bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(RingError::MalformedTensor(format!("dual index {bad} out of range")));
        }
        if tensor.len() != rank {
            return Err(RingError::MalformedTensor(format!(
                "N has {} slices, expected {rank}",
                tensor.len()
            )));
        }
        let mut flat = Vec::with_capacity(rank * rank * rank);
        for (i, slice) in tensor.iter().enumerate() {
            if slice.len() != rank {
                return Err(RingError::MalformedTensor(format!("N[{i}] has {} rows", slice.len())));
            }
            for (j, row) in slice.iter().enumerate() {
                if row.len() != rank {
                    return Err(RingError::MalformedTensor(format!(
                        "N[{i}][{j}] has {} entries",
                        row.len()
                    )));
                }
                flat.extend_from_slice(row);
            }
        }
        Ok(Self::from_flat(name, labels, dual, flat))
    }

    pub(crate) fn from_flat(
        name: impl Into<String>,
        labels: Vec<String>,
        dual: Vec<usize>,
        tensor: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(tensor.len(), labels.len().pow(3));
        FusionRing {
            name: name.into(),
            labels,
            dual,
            tensor,
        }
    }

    /// [`FusionRing::new`] followed by a full axiom check.
    pub fn validated(
        name: impl Into<String>,
        labels: Vec<String>,
        dual: Vec<usize>,
        tensor: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, RingError> {
        let ring = Self::new(name, labels, dual, tensor)?;
        let report = ring.verify_axioms();
        if report.is_pass() {
            Ok(ring)
        } else {
            Err(RingError::Axioms(report))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.tensor[(i * r + j) * r + k]
    }

    pub(crate) fn n_mut(&mut self, i: usize, j: usize, k: usize) -> &mut u32 {
        let r = self.rank();
        &mut self.tensor[(i * r + j) * r + k]
    }

    /// Returns a copy with a single structure constant replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, value: u32) -> Self {
        let mut out = self.clone();
        *out.n_mut(i, j, k) = value;
        out
    }

    pub fn flat_tensor(&self) -> &[u32] {
        &self.tensor
    }

    /// Dense `N[i][j][k]`.
    pub fn tensor(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.n(i, j, k)).collect()).collect())
            .collect()
    }

    /// Nonzero terms of `b_i · b_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        (0..self.rank())
            .filter_map(|k| {
                let c = self.n(i, j, k);
                (c > 0).then_some((k, c))
            })
            .collect()
    }

    pub fn support(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&k| self.n(i, j, k) > 0)
    }

    /// Checks unit, duality, associativity and anti-involution laws.
    pub fn verify_axioms(&self) -> AxiomReport {
        let r = self.rank();
        let mut rep = AxiomReport::default();

        if self.dual[0] != 0 {
            rep.push(Violation::DualOfUnit);
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                rep.push(Violation::DualNotInvolution { i });
            }
        }
        for a in 0..r {
            for b in 0..r {
                let want = u32::from(a == b);
                let left = self.n(0, a, b);
                if left != want {
                    rep.push(Violation::Unit { i: 0, j: a, k: b, found: left });
                }
                let right = self.n(a, 0, b);
                if right != want && a != 0 {
                    rep.push(Violation::Unit { i: a, j: 0, k: b, found: right });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let want = u32::from(j == self.dual[i]);
                let got = self.n(i, j, 0);
                if got != want {
                    rep.push(Violation::Duality { i, j, found: got });
                }
            }
        }
        let dual_ok = (0..r).all(|i| self.dual[self.dual[i]] == i);
        if dual_ok {
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        if self.n(i, j, k) != self.n(self.dual[j], self.dual[i], self.dual[k]) {
                            rep.push(Violation::AntiInvolution { i, j, k });
                        }
                    }
                }
            }
        }
        // (b_i b_j) b_k versus b_i (b_j b_k), using sparse products.
        let supports: Vec<Vec<(usize, u32)>> = (0..r * r).map(|ij| self.product(ij / r, ij % r)).collect();
        let mut left = vec![0u64; r];
        let mut right = vec![0u64; r];
        'outer: for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    left.iter_mut().for_each(|x| *x = 0);
                    right.iter_mut().for_each(|x| *x = 0);
                    for &(m, c) in &supports[i * r + j] {
                        for &(l, c2) in &supports[m * r + k] {
                            left[l] += c as u64 * c2 as u64;
                        }
                    }
                    for &(m, c) in &supports[j * r + k] {
                        for &(l, c2) in &supports[i * r + m] {
                            right[l] += c as u64 * c2 as u64;
                        }
                    }
                    for l in 0..r {
                        if left[l] != right[l]
                            && !rep.push(Violation::Associativity {
                                i,
                                j,
                                k,
                                l,
                                left: left[l],
                                right: right[l],
                            })
                        {
                            break 'outer;
                        }
                    }
                }
            }
        }
        rep
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| self.n(i, j, k) == self.n(j, i, k))))
    }

    /// Left multiplication matrix: `M[k][j] = N[x][j][k]`.
    pub fn left_matrix(&self, x: usize) -> Vec<Vec<u32>> {
        let r = self.rank();
        (0..r).map(|k| (0..r).map(|j| self.n(x, j, k)).collect()).collect()
    }

    /// Restricts the tensor to a product-closed index set containing 0.
    pub(crate) fn restrict(&self, name: &str, indices: &[usize]) -> Self {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let pos = |x: usize| indices.iter().position(|&y| y == x).expect("set not dual-closed");
        let dual = indices.iter().map(|&i| pos(self.dual[i])).collect();
        let mut tensor = Vec::with_capacity(indices.len().pow(3));
        for &i in indices {
            for &j in indices {
                for &k in indices {
                    tensor.push(self.n(i, j, k));
                }
            }
        }
        Self::from_flat(name, labels, dual, tensor)
    }

    /// Relabels the basis by a permutation with `perm[0] = 0`; new index `perm[i]` holds old `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let r = self.rank();
        let mut inv = vec![0; r];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let labels = (0..r).map(|p| self.labels[inv[p]].clone()).collect();
        let dual = (0..r).map(|p| perm[self.dual[inv[p]]]).collect();
        let mut tensor = vec![0; r * r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    tensor[(perm[i] * r + perm[j]) * r + perm[k]] = self.n(i, j, k);
                }
            }
        }
        Self::from_flat(self.name.clone(), labels, dual, tensor)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 1
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (rank {})", self.name, self.rank())?;
        for i in 1..self.rank() {
            for j in 1..self.rank() {
                if j < i && self.is_commutative() {
                    continue;
                }
                let terms: Vec<String> = self
                    .product(i, j)
                    .into_iter()
                    .map(|(k, c)| {
                        if c == 1 {
                            self.labels[k].clone()
                        } else {
                            format!("{c}{}", self.labels[k])
                        }
                    })
                    .collect();
                writeln!(f, "  {}·{} = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
            }
        }
        Ok(())
    }
}
