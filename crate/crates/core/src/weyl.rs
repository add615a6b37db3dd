//! The finite Weyl group and its coset combinatorics.
//!
//! Elements are enumerated breadth-first by length from the identity; the
//! first word reaching an element is its lexicographically least reduced
//! word, and elements come out sorted by (length, word).

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::snf::IntMatrix;
use crate::root_datum::{ParabolicData, RootDatum, RootSystem};

pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    action: IntMatrix,
    char_action: IntMatrix,
    word: Vec<usize>,
}

impl WeylElement {
    /// Action on `X^∨` (column vectors in the fixed basis).
    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    /// Action on `X`; the contragredient of [`Self::action`].
    pub fn char_action(&self) -> &IntMatrix {
        &self.char_action
    }

    /// Canonical (lexicographically least) reduced word, 0-based indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `s1 s2 s1`, or `1` for the identity; indices printed 1-based.
    pub fn word_label(&self) -> String {
        if self.word.is_empty() {
            "1".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// Label for a subset of simple roots, e.g. `{α1, α3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialRepLabel {
    pub parabolic: ParabolicData,
}

impl SpecialRepLabel {
    pub fn new(parabolic: ParabolicData) -> Self {
        SpecialRepLabel { parabolic }
    }
}

impl std::fmt::Display for SpecialRepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.parabolic.is_steinberg(), self.parabolic.special_root()) {
            (true, _) => f.write_str("St"),
            (_, Some(a)) => write!(f, "Sp_α{}", a + 1),
            _ => {
                let roots: Vec<String> = self
                    .parabolic
                    .inner()
                    .iter()
                    .map(|a| format!("α{}", a + 1))
                    .collect();
                write!(f, "Sp_Q{{{}}}", roots.join(","))
            }
        }
    }
}

fn simple_reflections(rd: &RootDatum) -> Vec<(IntMatrix, IntMatrix)> {
    let r = rd.rank();
    (0..rd.semisimple_rank())
        .map(|i| {
            let root = &rd.simple_roots()[i];
            let coroot = &rd.simple_coroots()[i];
            let mut on_cochar = IntMatrix::identity(r);
            let mut on_char = IntMatrix::identity(r);
            for a in 0..r {
                for b in 0..r {
                    on_cochar[(a, b)] -= coroot[a] * root[b];
                    on_char[(a, b)] -= root[a] * coroot[b];
                }
            }
            (on_cochar, on_char)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    roots: RootSystem,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    /// Bit `β` set iff `ℓ(s_β w) < ℓ(w)`.
    left_descents: Vec<u64>,
    longest: usize,
}

impl WeylGroup {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        Self::with_bound(rd, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(rd: &RootDatum, max_order: usize) -> Result<Self> {
        let roots = rd.generate_roots()?;
        if rd.semisimple_rank() > 64 {
            return Err(Error::GroupTooLarge { bound: max_order });
        }
        let gens = simple_reflections(rd);
        let r = rd.rank();
        let identity = WeylElement {
            action: IntMatrix::identity(r),
            char_action: IntMatrix::identity(r),
            word: vec![],
        };
        let mut index = HashMap::new();
        index.insert(identity.action.clone(), 0);
        let mut elements = vec![identity];
        let mut level_start = 0;
        while level_start < elements.len() {
            let level_end = elements.len();
            for w in level_start..level_end {
                for (i, (s_cochar, s_char)) in gens.iter().enumerate() {
                    let action = elements[w].action.mul(s_cochar);
                    if index.contains_key(&action) {
                        continue;
                    }
                    if elements.len() >= max_order {
                        return Err(Error::GroupTooLarge { bound: max_order });
                    }
                    let char_action = elements[w].char_action.mul(s_char);
                    let mut word = elements[w].word.clone();
                    word.push(i);
                    index.insert(action.clone(), elements.len());
                    elements.push(WeylElement {
                        action,
                        char_action,
                        word,
                    });
                }
            }
            level_start = level_end;
        }
        let left_descents = elements
            .par_iter()
            .map(|w| {
                // w^{-1} acts on X through the transpose of the action on X^∨
                let inv_on_char = w.action.transpose();
                rd.simple_roots()
                    .iter()
                    .enumerate()
                    .fold(0u64, |mask, (b, beta)| {
                        let image = inv_on_char.apply(beta);
                        if roots.sign(&image) == Some(false) {
                            mask | 1 << b
                        } else {
                            mask
                        }
                    })
            })
            .collect();
        let longest = elements.len() - 1;
        Ok(WeylGroup {
            datum: rd.clone(),
            roots,
            elements,
            index,
            left_descents,
            longest,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `w₀`. It is the unique element of maximal length, hence last.
    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length()
    }

    /// Index of the element with the given action on `X^∨`.
    pub fn lookup(&self, action: &IntMatrix) -> Option<usize> {
        self.index.get(action).copied()
    }

    pub fn simple_reflection(&self, i: usize) -> Result<usize> {
        self.datum.check_index(i)?;
        Ok(self.from_word(&[i]).expect("generators are in the group"))
    }

    /// Element represented by an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Option<usize> {
        let gens = simple_reflections(&self.datum);
        let mut m = IntMatrix::identity(self.datum.rank());
        for &i in word {
            m = m.mul(&gens.get(i)?.0);
        }
        self.lookup(&m)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].action.mul(&self.elements[b].action);
        self.lookup(&m).expect("group is closed")
    }

    pub fn inverse(&self, w: usize) -> usize {
        // contragredient: A_{X^∨}(w^{-1}) = A_X(w)^T
        self.lookup(&self.elements[w].char_action.transpose())
            .expect("group is closed")
    }

    /// `w(x)` for `x ∈ X`.
    pub fn act_on_character(&self, w: usize, x: &[i64]) -> Vec<i64> {
        self.elements[w].char_action.apply(x)
    }

    /// `|{β ∈ Φ⁺ : w(β) ∈ Φ⁻}|`, computed from the action rather than the word.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.roots
            .positive_roots()
            .iter()
            .filter(|b| self.roots.sign(&self.act_on_character(w, b)) == Some(false))
            .count()
    }

    /// Simple roots `β` with `ℓ(s_β w) < ℓ(w)`, as a bitmask.
    pub fn left_descent_mask(&self, w: usize) -> u64 {
        self.left_descents[w]
    }

    /// Elements of maximal length in their coset `W_{L_Q} w`:
    /// `{w : ℓ(s_β w) < ℓ(w) for all β ∈ Δ_{L_Q}}`.
    pub fn w_bq(&self, pd: &ParabolicData) -> Vec<usize> {
        self.w_bq_mask(mask_of(pd.inner()))
    }

    fn w_bq_mask(&self, inner: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&w| self.left_descents[w] & inner == inner)
            .collect()
    }

    /// `W_σ = W_{BQ} - ∪_{Q ⊊ Q' ⊆ L} W_{BQ'}`.
    ///
    /// `W_{BQ'}` shrinks as `Q'` grows, so the union only needs the parabolics
    /// obtained by adding one root of `Δ_L - Δ_{L_Q}`.
    pub fn w_sigma(&self, pd: &ParabolicData) -> Vec<usize> {
        let inner = mask_of(pd.inner());
        let mut excluded = vec![false; self.len()];
        for &extra in pd.levi().iter().filter(|a| !pd.inner().contains(a)) {
            for w in self.w_bq_mask(inner | 1 << extra) {
                excluded[w] = true;
            }
        }
        self.w_bq_mask(inner)
            .into_iter()
            .filter(|&w| !excluded[w])
            .collect()
    }

    /// `α_w`: sum of the positive roots `β` with `w₀ w (β) > 0`, the weight of
    /// `T` on `det Lie(N_{w₀ w})`.
    pub fn alpha_w(&self, w: usize) -> Vec<i64> {
        let w0w = self.multiply(self.longest, w);
        let mut sum = vec![0; self.datum.rank()];
        for beta in self.roots.positive_roots() {
            if self.roots.sign(&self.act_on_character(w0w, beta)) == Some(true) {
                for (s, b) in sum.iter_mut().zip(beta) {
                    *s += b;
                }
            }
        }
        sum
    }

    /// `dim N_w = |Φ⁺ ∩ w^{-1} Φ⁺|`.
    pub fn n_w_dimension(&self, w: usize) -> usize {
        self.roots
            .positive_roots()
            .iter()
            .filter(|b| self.roots.sign(&self.act_on_character(w, b)) == Some(true))
            .count()
    }

    /// Number of elements of each length `0..=ℓ(w₀)`.
    pub fn length_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.length(self.longest) + 1];
        for e in &self.elements {
            profile[e.length()] += 1;
        }
        profile
    }
}

pub(crate) fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// All elements of `W` with canonical words, ordered by length then word.
pub fn enumerate_weyl(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::new(rd)?.elements)
}

pub fn longest_element(rd: &RootDatum) -> Result<WeylElement> {
    let w = WeylGroup::new(rd)?;
    Ok(w.elements[w.longest].clone())
}
