//! Based root data of split reductive groups.
//!
//! Characters `X` and cocharacters `X^∨` are both identified with `Z^r`
//! through a fixed pair of dual bases, so the pairing is the dot product.
//! Sublattices are given by generator rows and every membership or torsion
//! question is answered by [`snf::smith_normal_form`].

mod catalog;
pub mod snf;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub use catalog::builtin;

/// Default bound on the reflection closure.
pub const DEFAULT_ROOT_BOUND: usize = 10_000;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    name: Option<String>,
    /// Rows: the cocharacter basis written in an ambient `Z^m`, when the
    /// torus was cut out of a bigger diagonal torus.
    #[serde(skip_serializing_if = "Option::is_none")]
    ambient_cochar_basis: Option<Vec<Vec<i64>>>,
}

impl RootDatum {
    /// Validates and builds a root datum. Checks the pairing, linear
    /// independence and that the reflection closure is finite.
    pub fn new(
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let rd = RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            name: None,
            ambient_cochar_basis: None,
        };
        rd.validate()?;
        Ok(rd)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub(crate) fn with_ambient(mut self, basis: Vec<Vec<i64>>) -> Self {
        self.ambient_cochar_basis = Some(basis);
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidRootDatum(msg));
        if self.rank == 0 {
            return bad("rank must be positive".into());
        }
        if self.simple_roots.len() != self.simple_coroots.len() {
            return bad(format!(
                "{} simple roots but {} simple coroots",
                self.simple_roots.len(),
                self.simple_coroots.len()
            ));
        }
        for (i, v) in self
            .simple_roots
            .iter()
            .chain(&self.simple_coroots)
            .enumerate()
        {
            if v.len() != self.rank {
                return bad(format!(
                    "vector #{i} has length {}, expected {}",
                    v.len(),
                    self.rank
                ));
            }
        }
        for i in 0..self.semisimple_rank() {
            let p = dot(&self.simple_roots[i], &self.simple_coroots[i]);
            if p != 2 {
                return bad(format!(
                    "<alpha_{}, alpha_{}^vee> = {p}, expected 2",
                    i + 1,
                    i + 1
                ));
            }
        }
        let n = self.semisimple_rank();
        if snf::rank(&self.simple_roots, self.rank) != n {
            return bad("simple roots are linearly dependent".into());
        }
        if snf::rank(&self.simple_coroots, self.rank) != n {
            return bad("simple coroots are linearly dependent".into());
        }
        let cartan = self.cartan_matrix();
        for i in 0..n {
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return bad(format!(
                        "({}, {}) entry of the Cartan matrix is not admissible",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
        if let Some(b) = &self.ambient_cochar_basis {
            if b.len() != self.rank {
                return bad("ambient cocharacter basis has the wrong size".into());
            }
        }
        self.generate_roots()?;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|Δ|`.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn simple_root(&self, i: usize) -> Result<&[i64]> {
        self.check_index(i)?;
        Ok(&self.simple_roots[i])
    }

    pub fn simple_coroot(&self, i: usize) -> Result<&[i64]> {
        self.check_index(i)?;
        Ok(&self.simple_coroots[i])
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ambient_cochar_basis(&self) -> Option<&[Vec<i64>]> {
        self.ambient_cochar_basis.as_deref()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.semisimple_rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.semisimple_rank(),
            })
        }
    }

    /// `C[i][j] = <α_j, α_i^∨>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_coroots
            .iter()
            .map(|c| self.simple_roots.iter().map(|r| dot(r, c)).collect())
            .collect()
    }

    /// Direct sum of two root data (product of groups).
    pub fn product(&self, other: &RootDatum) -> RootDatum {
        let r = self.rank + other.rank;
        let pad = |v: &[i64], before: usize, after: usize| {
            let mut out = vec![0; before];
            out.extend_from_slice(v);
            out.extend(std::iter::repeat_n(0, after));
            out
        };
        let roots = self
            .simple_roots
            .iter()
            .map(|v| pad(v, 0, other.rank))
            .chain(other.simple_roots.iter().map(|v| pad(v, self.rank, 0)))
            .collect();
        let coroots = self
            .simple_coroots
            .iter()
            .map(|v| pad(v, 0, other.rank))
            .chain(other.simple_coroots.iter().map(|v| pad(v, self.rank, 0)))
            .collect();
        let ambient = match (&self.ambient_cochar_basis, &other.ambient_cochar_basis) {
            (None, None) => None,
            (a, b) => {
                let left = a
                    .clone()
                    .unwrap_or_else(|| snf::IntMatrix::identity(self.rank).to_rows());
                let right = b
                    .clone()
                    .unwrap_or_else(|| snf::IntMatrix::identity(other.rank).to_rows());
                let (lm, rm) = (left[0].len(), right[0].len());
                Some(
                    left.iter()
                        .map(|v| pad(v, 0, rm))
                        .chain(right.iter().map(|v| pad(v, lm, 0)))
                        .collect(),
                )
            }
        };
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        RootDatum {
            rank: r,
            simple_roots: roots,
            simple_coroots: coroots,
            name,
            ambient_cochar_basis: ambient,
        }
    }

    /// Reflection closure of `Δ` with the default bound.
    pub fn generate_roots(&self) -> Result<RootSystem> {
        self.generate_roots_bounded(DEFAULT_ROOT_BOUND)
    }

    /// Breadth-first closure of `Δ` under the simple reflections, working on
    /// coefficient vectors over `Δ`. Fails once more than `bound` roots appear.
    pub fn generate_roots_bounded(&self, bound: usize) -> Result<RootSystem> {
        let n = self.semisimple_rank();
        let cartan = self.cartan_matrix();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut all: Vec<Vec<i64>> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), all.len());
            all.push(e.clone());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..n {
                // s_i(β) = β - <β, α_i^∨> α_i
                let pairing: i64 = (0..n).map(|j| c[j] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut next = c.clone();
                next[i] -= pairing;
                if !seen.contains_key(&next) {
                    if all.len() >= bound {
                        return Err(Error::NonFiniteType { bound });
                    }
                    seen.insert(next.clone(), all.len());
                    all.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = all
            .into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect();
        // height, then coefficients; simple roots come first in Δ order
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let vectors = positive
            .iter()
            .map(|c| self.root_from_coefficients(c))
            .collect();
        Ok(RootSystem::new(positive, vectors))
    }

    fn root_from_coefficients(&self, c: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for (k, &ck) in c.iter().enumerate() {
            for (vi, a) in v.iter_mut().zip(&self.simple_roots[k]) {
                *vi += ck * a;
            }
        }
        v
    }

    /// Invariant factors of the torsion of `X / <S>`: the component group of
    /// `∩_{α ∈ S} ker α`. Empty means connected.
    pub fn center_component_group(&self, subset: &[usize]) -> Result<Vec<i64>> {
        let mut rows = Vec::with_capacity(subset.len());
        for &i in subset {
            rows.push(self.simple_root(i)?.to_vec());
        }
        Ok(snf::quotient_torsion(&rows, self.rank))
    }

    pub fn is_center_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.semisimple_rank()).collect();
        self.center_component_group(&all)
            .map(|f| f.is_empty())
            .unwrap_or(false)
    }

    /// Type of the derived group of the Levi attached to `α_i` (modulo its
    /// central torus factor).
    ///
    /// `PGL2` iff `α^∨ ∈ 2X^∨`; otherwise with `Y' = ker <α, ->` it is `GL2`
    /// iff `α^∨ ∈ Y' + 2X^∨`, else `SL2`.
    pub fn classify_rank_one(&self, i: usize) -> Result<RankOneClass> {
        let alpha = self.simple_root(i)?;
        let coroot = self.simple_coroot(i)?;
        let r = self.rank;
        let doubled: Vec<Vec<i64>> = (0..r)
            .map(|k| {
                let mut e = vec![0; r];
                e[k] = 2;
                e
            })
            .collect();
        if snf::in_span(&doubled, coroot) {
            return Ok(RankOneClass::PGL2);
        }
        let alpha_row = vec![alpha.to_vec()];
        let mut gens = snf::kernel_basis(&alpha_row, r);
        gens.extend(doubled);
        if snf::in_span(&gens, coroot) {
            Ok(RankOneClass::GL2)
        } else {
            Ok(RankOneClass::SL2)
        }
    }

    /// Restricts a vector on the ambient torus `Z^m` to the cocharacter basis:
    /// entry `j` is the pairing with basis vector `j`.
    pub fn restrict_ambient(&self, ambient: &[i64]) -> Option<Vec<i64>> {
        let basis = self.ambient_cochar_basis.as_ref()?;
        if basis.first().map(|b| b.len()) != Some(ambient.len()) {
            return None;
        }
        Some(basis.iter().map(|b| dot(b, ambient)).collect())
    }
}

/// `dim_{F_p} Hom(⊕ Z/d_i, μ_p)`: the number of factors divisible by `p`.
pub fn mu_p_hom_dimension(factors: &[i64], p: u64) -> usize {
    factors
        .iter()
        .filter(|&&d| d != 0 && (d as u64).is_multiple_of(p))
        .count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RankOneClass {
    SL2,
    GL2,
    PGL2,
}

impl std::fmt::Display for RankOneClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RankOneClass::SL2 => "SL2",
            RankOneClass::GL2 => "GL2",
            RankOneClass::PGL2 => "PGL2",
        })
    }
}

/// Positive roots, both as coefficient vectors over `Δ` and as vectors of `X`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    coefficients: Vec<Vec<i64>>,
    vectors: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, isize>,
}

impl RootSystem {
    fn new(coefficients: Vec<Vec<i64>>, vectors: Vec<Vec<i64>>) -> Self {
        let mut index = HashMap::new();
        for (i, v) in vectors.iter().enumerate() {
            index.insert(v.clone(), i as isize + 1);
            index.insert(v.iter().map(|x| -x).collect(), -(i as isize + 1));
        }
        RootSystem {
            coefficients,
            vectors,
            index,
        }
    }

    /// `d = |Φ⁺|`.
    pub fn num_positive(&self) -> usize {
        self.vectors.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn positive_coefficients(&self) -> &[Vec<i64>] {
        &self.coefficients
    }

    /// `Some(true)` for a positive root, `Some(false)` for a negative one,
    /// `None` for a vector that is not a root.
    pub fn sign(&self, v: &[i64]) -> Option<bool> {
        self.index.get(v).map(|&i| i > 0)
    }

    /// Every root, positive ones first.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.vectors.clone();
        out.extend(
            self.vectors
                .iter()
                .map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        out
    }
}

/// A standard parabolic `P ⊇ B` (through `Δ_L`) together with a standard
/// parabolic `Q` of its Levi (through `Δ_{L_Q} ⊆ Δ_L`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParabolicData {
    levi: Vec<usize>,
    inner: Vec<usize>,
}

impl ParabolicData {
    pub fn new(rd: &RootDatum, levi: &[usize], inner: &[usize]) -> Result<Self> {
        let norm = |s: &[usize]| -> Result<Vec<usize>> {
            let mut v = s.to_vec();
            v.sort_unstable();
            v.dedup();
            for &i in &v {
                rd.check_index(i).map_err(|_| {
                    Error::InvalidParabolic(format!("simple root index {} out of range", i + 1))
                })?;
            }
            Ok(v)
        };
        let levi = norm(levi)?;
        let inner = norm(inner)?;
        if let Some(i) = inner.iter().find(|i| !levi.contains(i)) {
            return Err(Error::InvalidParabolic(format!(
                "inner parabolic root {} is not in the Levi",
                i + 1
            )));
        }
        Ok(ParabolicData { levi, inner })
    }

    /// `P = B`, `Q = T`: the principal-series case.
    pub fn borel() -> Self {
        ParabolicData {
            levi: Vec::new(),
            inner: Vec::new(),
        }
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    /// `σ = St`.
    pub fn is_steinberg(&self) -> bool {
        self.inner.is_empty()
    }

    /// `Some(α)` when `σ = Sp_α`.
    pub fn special_root(&self) -> Option<usize> {
        match self.inner.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    /// Every inner parabolic of the same Levi, in subset-bitmask order.
    pub fn all_inner(rd: &RootDatum, levi: &[usize]) -> Result<Vec<ParabolicData>> {
        let base = ParabolicData::new(rd, levi, &[])?;
        let k = base.levi.len();
        Ok((0u64..1 << k)
            .map(|mask| {
                let inner = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| base.levi[b])
                    .collect();
                ParabolicData {
                    levi: base.levi.clone(),
                    inner,
                }
            })
            .collect())
    }
}
