use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraDescriptor;
use crate::error::{domain, structural, Result};
use crate::linalg::{c, CMatrix, CVector};

/// Orthonormality tolerance for basis matrices.
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Tolerance on `Σ_a w_a = 1/d`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// An orthonormal basis of `C^d`; column `j` is the basis vector `|e_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    matrix: CMatrix,
}

impl Basis {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return structural(format!("basis matrix must be square, got {}x{}", matrix.nrows(), matrix.ncols()));
        }
        let defect = crate::linalg::unitarity_defect(&matrix);
        if defect > ORTHONORMAL_TOL {
            return domain(format!("columns are not orthonormal (max defect {defect:e})"));
        }
        Ok(Self { matrix })
    }

    pub fn standard(d: usize) -> Self {
        Self { matrix: CMatrix::identity(d, d) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn vector(&self, j: usize) -> CVector {
        self.matrix.column(j).into_owned()
    }

    /// Each column rescaled by a phase so that its first entry of modulus
    /// above `1e-12` is real and positive. Idempotent.
    pub fn canonical(&self) -> Basis {
        let mut m = self.matrix.clone();
        for j in 0..m.ncols() {
            if let Some(i) = (0..m.nrows()).find(|&i| m[(i, j)].norm() > 1e-12) {
                let z = m[(i, j)];
                let phase = z.conj() / z.norm();
                for r in 0..m.nrows() {
                    m[(r, j)] *= phase;
                }
                m[(i, j)] = c(z.norm(), 0.0);
            }
        }
        Basis { matrix: m }
    }

    /// Whether both bases consist of the same lines: every column of `self`
    /// has a column of `other` with `|⟨u|v⟩|^2 ≥ 1 - tol`.
    pub fn same_lines(&self, other: &Basis, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let overlaps = self.matrix.adjoint() * &other.matrix;
        let d = self.dim();
        let mut used = vec![false; d];
        for j in 0..d {
            match (0..d).find(|&k| !used[k] && overlaps[(j, k)].norm_sqr() >= 1.0 - tol) {
                Some(k) => used[k] = true,
                None => return false,
            }
        }
        true
    }
}

/// A positive basis weight with an optional exact rational value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weight {
    pub value: f64,
    pub exact: Option<Ratio<u64>>,
}

impl Weight {
    pub fn exact(num: u64, den: u64) -> Self {
        let r = Ratio::new(num, den);
        Self {
            value: *r.numer() as f64 / *r.denom() as f64,
            exact: Some(r),
        }
    }

    pub fn approx(value: f64) -> Self {
        Self { value, exact: None }
    }

    fn merge(self, other: Weight) -> Weight {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => {
                let r = a + b;
                Weight {
                    value: *r.numer() as f64 / *r.denom() as f64,
                    exact: Some(r),
                }
            }
            _ => Weight::approx(self.value + other.value),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{:.6}", self.value),
        }
    }
}

/// Where a family came from; carried into the design file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function_table: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Provenance {
    pub fn named(construction: impl Into<String>) -> Self {
        Self {
            construction: construction.into(),
            ..Default::default()
        }
    }
}

/// `m` orthonormal bases of `C^d` with positive weights summing to `1/d`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedBasisFamily {
    dim: usize,
    bases: Vec<Basis>,
    weights: Vec<Weight>,
    provenance: Provenance,
}

impl WeightedBasisFamily {
    pub fn new(bases: Vec<Basis>, weights: Vec<Weight>, provenance: Provenance) -> Result<Self> {
        if bases.is_empty() {
            return domain("a family needs at least one basis");
        }
        if bases.len() != weights.len() {
            return structural(format!("{} bases but {} weights", bases.len(), weights.len()));
        }
        let d = bases[0].dim();
        if let Some(b) = bases.iter().find(|b| b.dim() != d) {
            return structural(format!("mixed dimensions {d} and {}", b.dim()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.value > 0.0)) {
            return domain(format!("weights must be positive, got {}", w.value));
        }
        let total: f64 = weights.iter().map(|w| w.value).sum();
        if (total - 1.0 / d as f64).abs() > WEIGHT_SUM_TOL {
            return domain(format!("weights sum to {total}, expected 1/{d}"));
        }
        Ok(Self {
            dim: d,
            bases,
            weights,
            provenance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_values(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.value).collect()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &Weight)> {
        self.bases.iter().zip(&self.weights)
    }

    /// Merges bases that coincide as sets of lines, adding their weights.
    /// The first occurrence keeps its position.
    pub fn dedupe(&self, tol: f64) -> WeightedBasisFamily {
        let mut bases: Vec<Basis> = Vec::new();
        let mut weights: Vec<Weight> = Vec::new();
        for (b, w) in self.iter() {
            match bases.iter().position(|kept| kept.same_lines(b, tol)) {
                Some(i) => weights[i] = weights[i].merge(*w),
                None => {
                    bases.push(b.clone());
                    weights.push(*w);
                }
            }
        }
        let mut provenance = self.provenance.clone();
        if bases.len() != self.bases.len() {
            provenance
                .notes
                .push(format!("deduplicated: {} bases merged into {}", self.bases.len(), bases.len()));
        }
        WeightedBasisFamily {
            dim: self.dim,
            bases,
            weights,
            provenance,
        }
    }
}

pub fn dedupe(family: &WeightedBasisFamily, tol: f64) -> WeightedBasisFamily {
    family.dedupe(tol)
}

/// Two standard bases, each with weight `1/(2d)`.
pub fn doubled_standard(d: usize) -> WeightedBasisFamily {
    let w = Weight::exact(1, 2 * d as u64);
    WeightedBasisFamily::new(vec![Basis::standard(d), Basis::standard(d)], vec![w, w], Provenance::named("doubled-standard"))
        .expect("valid family")
}

/// The standard basis alone with weight `1/d`.
pub fn single_standard(d: usize) -> WeightedBasisFamily {
    WeightedBasisFamily::new(vec![Basis::standard(d)], vec![Weight::exact(1, d as u64)], Provenance::named("standard"))
        .expect("valid family")
}
