//! Limit linear series on a two-component nodal curve, presented as
//! explicit linear-algebra data over the rationals.
//!
//! Level `i` carries an ambient space `Gamma_i = Q^{N_i}` with marked
//! subspaces `Y0_i` (sections vanishing on Y) and `Z0_i` (sections vanishing
//! on Z), the chosen `(r+1)`-dimensional `V_i`, and linking maps
//! `up_i: Gamma_i -> Gamma_{i+1}` and `down_i: Gamma_{i+1} -> Gamma_i`.

mod generate;
mod io;

pub use generate::{generate_exact, minimal_fixture, non_exact_fixture};
pub use io::{SeriesDoc, FORMAT_TAG};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, rational, Mat, Rat, Subspace};
use crate::oracle::Verdict;
use crate::schemes::{make_union_spec, MinorScheme, UnionSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitLimitSeries {
    d: usize,
    r: usize,
    ambient_dims: Vec<usize>,
    up: Vec<Mat>,
    down: Vec<Mat>,
    y0: Vec<Subspace>,
    z0: Vec<Subspace>,
    v: Vec<Subspace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `dim V_i != r + 1`.
    Dimension,
    /// A linking map does not carry `V` into `V`.
    Linkage,
    /// A composite of linking maps is nonzero.
    Composition,
    /// A linking map has the wrong kernel.
    Kernel,
    /// A linking map has image outside the marked subspace.
    Image,
    /// `Y0_i` and `Z0_i` meet.
    Overlap,
    /// `V_0` meets `Y0_0`, or `V_d` meets `Z0_d`.
    Endpoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub level: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Sections adapted to an exact series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagonalization {
    /// `i_0 <= ... <= i_r`.
    pub jump_indices: Vec<usize>,
    /// `s_j` lies in `V_{i_j}`.
    #[serde(serialize_with = "serialize_vectors")]
    pub sections: Vec<Vec<Rat>>,
    /// Distinct jump values, increasing.
    pub jump_values: Vec<usize>,
    /// `m_l + 1` is the number of sections at the `l`-th jump value.
    pub mults: Vec<usize>,
}

fn serialize_vectors<S: serde::Serializer>(vs: &[Vec<Rat>], ser: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = vs.iter().map(|v| v.iter().map(rational::format_rat).collect()).collect();
    rows.serialize(ser)
}

fn column_space(m: &Mat) -> Subspace {
    Subspace::full(m.ncols()).image(m).expect("matrix acts on its own domain")
}

impl ExplicitLimitSeries {
    /// Assembles a series after checking that all shapes fit together.
    /// Mathematical invariants are checked separately by [`Self::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: usize,
        r: usize,
        ambient_dims: Vec<usize>,
        up: Vec<Mat>,
        down: Vec<Mat>,
        y0: Vec<Subspace>,
        z0: Vec<Subspace>,
        v: Vec<Subspace>,
    ) -> Result<Self> {
        let levels = d + 1;
        let count = |name: &str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(Error::Dimension(format!("{name}: {got} entries, expected {want}")))
            }
        };
        count("ambient_dims", ambient_dims.len(), levels)?;
        count("up", up.len(), d)?;
        count("down", down.len(), d)?;
        count("y0", y0.len(), levels)?;
        count("z0", z0.len(), levels)?;
        count("v", v.len(), levels)?;
        for i in 0..d {
            let (a, b) = (ambient_dims[i], ambient_dims[i + 1]);
            if (up[i].nrows(), up[i].ncols()) != (b, a) {
                return Err(Error::Dimension(format!("up[{i}] must be {b}x{a}")));
            }
            if (down[i].nrows(), down[i].ncols()) != (a, b) {
                return Err(Error::Dimension(format!("down[{i}] must be {a}x{b}")));
            }
        }
        for i in 0..levels {
            for (name, sub) in [("y0", &y0[i]), ("z0", &z0[i]), ("v", &v[i])] {
                if sub.ambient_dim() != ambient_dims[i] {
                    return Err(Error::Dimension(format!(
                        "{name}[{i}] lives in Q^{} but level {i} has dimension {}",
                        sub.ambient_dim(),
                        ambient_dims[i]
                    )));
                }
            }
        }
        Ok(ExplicitLimitSeries { d, r, ambient_dims, up, down, y0, z0, v })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ambient_dims(&self) -> &[usize] {
        &self.ambient_dims
    }

    pub fn up(&self, i: usize) -> &Mat {
        &self.up[i]
    }

    pub fn down(&self, i: usize) -> &Mat {
        &self.down[i]
    }

    pub fn y0(&self, i: usize) -> &Subspace {
        &self.y0[i]
    }

    pub fn z0(&self, i: usize) -> &Subspace {
        &self.z0[i]
    }

    pub fn v(&self, i: usize) -> &Subspace {
        &self.v[i]
    }

    /// The same series with `V_i` replaced.
    pub fn with_v(&self, i: usize, sub: Subspace) -> Result<Self> {
        self.check_level(i)?;
        let mut v = self.v.clone();
        v[i] = sub;
        Self::new(
            self.d,
            self.r,
            self.ambient_dims.clone(),
            self.up.clone(),
            self.down.clone(),
            self.y0.clone(),
            self.z0.clone(),
            v,
        )
    }

    fn check_level(&self, i: usize) -> Result<()> {
        if i > self.d {
            return Err(Error::Input(format!("level {i} is outside 0..={}", self.d)));
        }
        Ok(())
    }

    /// Checks every invariant and lists all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let mut push = |kind, level, detail: String| out.push(Violation { kind, level, detail });
        let ok = |r: Result<bool>| r.expect("shapes checked at construction");
        let r1 = self.r + 1;

        for i in 0..=self.d {
            if self.v[i].dim() != r1 {
                push(ViolationKind::Dimension, i, format!("dim V_{i} = {}, expected {r1}", self.v[i].dim()));
            }
            if !self.y0[i].intersection(&self.z0[i]).expect("same ambient").is_zero() {
                push(ViolationKind::Overlap, i, format!("Y0_{i} and Z0_{i} intersect"));
            }
        }
        if !self.v_y(0).is_zero() {
            push(ViolationKind::Endpoint, 0, "V_0 contains sections vanishing on Y".into());
        }
        if !self.v_z(self.d).is_zero() {
            push(ViolationKind::Endpoint, self.d, format!("V_{} contains sections vanishing on Z", self.d));
        }

        for i in 0..self.d {
            let (up, down) = (&self.up[i], &self.down[i]);
            let up_v = self.v[i].image(up).expect("shape");
            if !ok(self.v[i + 1].contains(&up_v)) {
                push(ViolationKind::Linkage, i, format!("up_{i}(V_{i}) is not inside V_{}", i + 1));
            }
            let down_v = self.v[i + 1].image(down).expect("shape");
            if !ok(self.v[i].contains(&down_v)) {
                push(ViolationKind::Linkage, i, format!("down_{i}(V_{}) is not inside V_{i}", i + 1));
            }
            if !down.mul(up).expect("shape").is_zero() {
                push(ViolationKind::Composition, i, format!("down_{i} up_{i} is nonzero"));
            }
            if !up.mul(down).expect("shape").is_zero() {
                push(ViolationKind::Composition, i, format!("up_{i} down_{i} is nonzero"));
            }
            if kernel_basis(up) != self.z0[i] {
                push(ViolationKind::Kernel, i, format!("ker up_{i} differs from Z0_{i}"));
            }
            if kernel_basis(down) != self.y0[i + 1] {
                push(ViolationKind::Kernel, i, format!("ker down_{i} differs from Y0_{}", i + 1));
            }
            if !ok(self.y0[i + 1].contains(&column_space(up))) {
                push(ViolationKind::Image, i, format!("image of up_{i} is not inside Y0_{}", i + 1));
            }
            if !ok(self.z0[i].contains(&column_space(down))) {
                push(ViolationKind::Image, i, format!("image of down_{i} is not inside Z0_{i}"));
            }
        }
        ValidationReport {
            verdict: if out.is_empty() { Verdict::Pass } else { Verdict::Fail },
            violations: out,
        }
    }

    fn v_y(&self, i: usize) -> Subspace {
        self.v[i].intersection(&self.y0[i]).expect("same ambient")
    }

    fn v_z(&self, i: usize) -> Subspace {
        self.v[i].intersection(&self.z0[i]).expect("same ambient")
    }

    /// `(V_i^{Y,0}, V_i^{Z,0})`.
    pub fn boundary_subspaces(&self, i: usize) -> Result<(Subspace, Subspace)> {
        self.check_level(i)?;
        Ok((self.v_y(i), self.v_z(i)))
    }

    /// Exactness via subspace equalities:
    /// `up_i(V_i) = V_{i+1}^{Y,0}` and `down_i(V_{i+1}) = V_i^{Z,0}`.
    pub fn exact_by_subspaces(&self) -> bool {
        (0..self.d).all(|i| {
            self.v[i].image(&self.up[i]).expect("shape") == self.v_y(i + 1)
                && self.v[i + 1].image(&self.down[i]).expect("shape") == self.v_z(i)
        })
    }

    /// Exactness via dimension counts: `(r+1) - dim V_i^{Z,0} = dim V_{i+1}^{Y,0}`.
    pub fn exact_by_dimensions(&self) -> bool {
        (0..self.d).all(|i| self.r + 1 == self.v_z(i).dim() + self.v_y(i + 1).dim())
    }

    /// Whether the series is exact. Both criteria are evaluated; a
    /// disagreement is an invariant error.
    pub fn is_exact(&self) -> Result<bool> {
        let (a, b) = (self.exact_by_subspaces(), self.exact_by_dimensions());
        if a != b {
            return Err(Error::Invariant(format!(
                "subspace test says {a} but dimension test says {b}"
            )));
        }
        Ok(a)
    }

    fn require_exact(&self) -> Result<()> {
        if self.is_exact()? {
            Ok(())
        } else {
            Err(Error::ExactnessRequired)
        }
    }

    /// Image of `s in Gamma_from` in `Gamma_to` under the composite linking maps.
    pub fn transport(&self, s: &[Rat], from: usize, to: usize) -> Result<Vec<Rat>> {
        self.check_level(from)?;
        self.check_level(to)?;
        let mut cur = s.to_vec();
        if to >= from {
            for i in from..to {
                cur = self.up[i].apply(&cur)?;
            }
        } else {
            for i in (to..from).rev() {
                cur = self.down[i].apply(&cur)?;
            }
        }
        Ok(cur)
    }

    /// Jump indices and adapted sections. At each level the sections
    /// complete `V_i^{Y,0} + V_i^{Z,0}` to `V_i`, taken from the canonical
    /// basis of `V_i` lowest pivot first.
    pub fn diagonalize(&self) -> Result<Diagonalization> {
        self.require_exact()?;
        let mut jump_indices = Vec::new();
        let mut sections = Vec::new();
        for i in 0..=self.d {
            let boundary = self.v_y(i).sum(&self.v_z(i))?;
            for s in self.v[i].complement_of(&boundary)? {
                jump_indices.push(i);
                sections.push(s);
            }
        }
        if sections.len() != self.r + 1 {
            return Err(Error::Invariant(format!(
                "{} sections found for r = {}",
                sections.len(),
                self.r
            )));
        }
        for level in 0..=self.d {
            let images = sections
                .iter()
                .zip(&jump_indices)
                .map(|(s, &i)| self.transport(s, i, level))
                .collect::<Result<Vec<_>>>()?;
            if Subspace::span(self.ambient_dims[level], &images)? != self.v[level] {
                return Err(Error::Invariant(format!(
                    "iterated images do not form a basis of V_{level}"
                )));
            }
        }
        let mut jump_values: Vec<usize> = Vec::new();
        let mut mults: Vec<usize> = Vec::new();
        for &i in &jump_indices {
            if jump_values.last() == Some(&i) {
                *mults.last_mut().expect("nonempty") += 1;
            } else {
                jump_values.push(i);
                mults.push(0);
            }
        }
        Ok(Diagonalization { jump_indices, sections, jump_values, mults })
    }

    /// The levels where `V_i` is neither `V_i^{Y,0}` nor `V_i^{Z,0}`, as an
    /// inclusive range.
    pub fn empty_range(&self) -> Result<(usize, usize)> {
        let live: Vec<usize> = (0..=self.d)
            .filter(|&i| self.v[i] != self.v_y(i) && self.v[i] != self.v_z(i))
            .collect();
        let (Some(&lo), Some(&hi)) = (live.first(), live.last()) else {
            return Err(Error::DegenerateSeries("every V_i equals one of its boundary subspaces".into()));
        };
        if hi - lo + 1 != live.len() {
            return Err(Error::DegenerateSeries(format!("levels {live:?} do not form a range")));
        }
        Ok((lo, hi))
    }

    /// Descriptor of the closure of divisors of sections in `V_i`:
    /// `Q_{p,q,m}` with `p = dim V_i^{Y,0}`, `q = dim V_i^{Z,0}`,
    /// `m = r - p - q`; `m = -1` is a full product.
    pub fn pg_component(&self, i: usize) -> Result<MinorScheme> {
        self.check_level(i)?;
        self.require_exact()?;
        let (y, z) = (self.v_y(i), self.v_z(i));
        if self.v[i] == y || self.v[i] == z {
            return Err(Error::EmptyStratum(i));
        }
        let (p, q) = (y.dim(), z.dim());
        MinorScheme::new(p, q, self.r as i64 - p as i64 - q as i64)
    }

    /// The union of the components at the jump values.
    pub fn pg_union(&self) -> Result<UnionSpec> {
        let diag = self.diagonalize()?;
        let spec = make_union_spec(self.r, &diag.mults)?;
        if !spec.is_full() {
            return Err(Error::Invariant(format!("union {spec} from an exact series is not full")));
        }
        Ok(spec)
    }
}

/// Whether `v` is the zero vector.
pub fn is_zero_vector(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}
