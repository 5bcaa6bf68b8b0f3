use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::Mat;
use super::rational::Rat;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The echelon basis is canonical, so two subspaces are equal exactly when
/// their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Mat::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Mat::identity(ambient_dim) }
    }

    /// The span of the given vectors (which need not be independent).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        let m = Mat::from_rows(vectors.to_vec(), ambient_dim)?;
        Ok(Self::row_space(&m))
    }

    /// The span of the rows of `m`.
    pub fn row_space(m: &Mat) -> Self {
        let (r, rank) = m.rref();
        let rows = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: m.ncols(),
            basis: Mat::from_rows(rows, m.ncols()).expect("rows come from a matrix"),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in Q^{}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        let m = Mat::from_rows(rows, self.ambient_dim)?;
        Ok(m.rank() == self.dim())
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Solve a*A = b*B: kernel of [A^T | -B^T].
        let n = self.ambient_dim;
        let mut m = Mat::zeros(n, da + db);
        for k in 0..da {
            for j in 0..n {
                m.set(j, k, self.basis.get(k, j).clone());
            }
        }
        for k in 0..db {
            for j in 0..n {
                m.set(j, da + k, -other.basis.get(k, j).clone());
            }
        }
        let ker = kernel_basis(&m);
        let vectors: Vec<Vec<Rat>> = ker
            .basis_vectors()
            .iter()
            .map(|coeffs| {
                let mut v = vec![Rat::zero(); n];
                for (k, c) in coeffs[..da].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, x) in self.basis.row(k).iter().enumerate() {
                        v[j] += c * x;
                    }
                }
                v
            })
            .collect();
        Subspace::span(n, &vectors)
    }

    /// Image of this subspace under `map` (a `codomain x ambient` matrix).
    pub fn image(&self, map: &Mat) -> Result<Subspace> {
        if map.ncols() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "map with {} columns applied to a subspace of Q^{}",
                map.ncols(),
                self.ambient_dim
            )));
        }
        let images = self
            .basis_vectors()
            .iter()
            .map(|v| map.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(map.nrows(), &images)
    }

    /// Picks vectors from this subspace's canonical basis, in order of
    /// increasing pivot column, until together with `sub` they span `self`.
    /// Returns the chosen vectors; `sub` must be contained in `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Result<Vec<Vec<Rat>>> {
        if !self.contains(sub)? {
            return Err(Error::Dimension("complement of a non-subspace".into()));
        }
        let mut current = sub.clone();
        let mut chosen = Vec::new();
        for v in self.basis_vectors() {
            if current.dim() == self.dim() {
                break;
            }
            if !current.contains_vector(&v)? {
                let mut rows = current.basis_vectors();
                rows.push(v.clone());
                current = Subspace::span(self.ambient_dim, &rows)?;
                chosen.push(v);
            }
        }
        Ok(chosen)
    }
}

/// Kernel of `m` as a subspace of its domain `Q^{cols}`.
pub fn kernel_basis(m: &Mat) -> Subspace {
    let n = m.ncols();
    let (r, _, pivots) = m.rref_with_pivots();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rat>> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have the domain length")
}

/// Sum, intersection and the two containment flags of a subspace pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspacePair {
    #[serde(skip)]
    pub sum: Subspace,
    #[serde(skip)]
    pub intersection: Subspace,
    /// `b` is contained in `a`.
    pub contains: bool,
    /// `a + b` is direct.
    pub direct_sum: bool,
}

pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspacePair> {
    let sum = a.sum(b)?;
    let intersection = a.intersection(b)?;
    Ok(SubspacePair {
        contains: sum.dim() == a.dim(),
        direct_sum: intersection.is_zero(),
        sum,
        intersection,
    })
}
