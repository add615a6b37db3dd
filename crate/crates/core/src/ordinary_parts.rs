//! Bruhat filtration pieces and derived ordinary parts of `Ind_{P⁻}(σ ⊗ χ)`
//! with `σ = Sp_Q`.
//!
//! In degree `n` the derived ordinary part is the sum over `w ∈ W_σ` with
//! `[F:Q_p]·ℓ(w) = n` of the characters `w⁻¹(χ) · (ω⁻¹ ∘ α_w)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{CoefficientMode, TorusCharacter};
use crate::error::{Error, Result};
use crate::root_datum::{ParabolicData, RootDatum};
use crate::weyl::{WeylElement, WeylGroup};

/// `Ind_{P⁻}(Sp_Q ⊗ χ)` with `χ` a character of `L(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinaryRepDescriptor {
    parabolic: ParabolicData,
    chi: TorusCharacter,
}

impl OrdinaryRepDescriptor {
    pub fn new(rd: &RootDatum, parabolic: ParabolicData, chi: TorusCharacter) -> Result<Self> {
        chi.check_rank(rd)?;
        if let Some(a) = chi.first_non_l_root(rd, parabolic.levi())? {
            return Err(Error::NotLCharacter { root: a + 1 });
        }
        Ok(OrdinaryRepDescriptor { parabolic, chi })
    }

    /// The principal series `Ind_{B⁻} χ`.
    pub fn principal_series(rd: &RootDatum, chi: TorusCharacter) -> Result<Self> {
        Self::new(rd, ParabolicData::borel(), chi)
    }

    pub fn parabolic(&self) -> &ParabolicData {
        &self.parabolic
    }

    pub fn chi(&self) -> &TorusCharacter {
        &self.chi
    }
}

/// Whether a result lies inside the range where the closed formula is proven.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Validity {
    Proven,
    /// Evaluated outside the proven range at the caller's request.
    Overridden,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: usize,
    /// One character per witness, in the canonical order of the witnesses.
    pub characters: Vec<TorusCharacter>,
    #[serde(skip)]
    pub witnesses: Vec<WeylElement>,
    pub validity: Validity,
}

impl GradedPiece {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HordOptions {
    /// Evaluate degrees `n >= 2` for non-residue-field coefficients anyway.
    pub override_validity: bool,
}

/// Elements `w ∈ W_σ` of length `r`, each with `dim N_w`.
pub fn bruhat_graded(weyl: &WeylGroup, parabolic: &ParabolicData, r: usize) -> Vec<(usize, usize)> {
    weyl.w_sigma(parabolic)
        .into_iter()
        .filter(|&w| weyl.length(w) == r)
        .map(|w| (w, weyl.n_w_dimension(w)))
        .collect()
}

/// `H^n Ord_B(Ind_{P⁻}(σ ⊗ χ))` as a multiset of characters of `T(F)`.
///
/// Continuous unitary coefficients are treated like a general artinian
/// coefficient ring: the formula is proven there only for `n <= 1`, so higher
/// degrees fail with [`Error::ValidityDomain`] unless overridden.
pub fn hord(
    weyl: &WeylGroup,
    rep: &OrdinaryRepDescriptor,
    n: usize,
    opts: HordOptions,
) -> Result<GradedPiece> {
    let group = rep.chi.group();
    let validity = if group.mode() == CoefficientMode::ContinuousUnitary && n >= 2 {
        if !opts.override_validity {
            return Err(Error::ValidityDomain { degree: n });
        }
        Validity::Overridden
    } else {
        Validity::Proven
    };
    let f = group.field().degree() as usize;
    let mut piece = GradedPiece {
        degree: n,
        characters: Vec::new(),
        witnesses: Vec::new(),
        validity,
    };
    if !n.is_multiple_of(f) {
        return Ok(piece);
    }
    let ws: Vec<usize> = weyl
        .w_sigma(&rep.parabolic)
        .into_iter()
        .filter(|&w| weyl.length(w) == n / f)
        .collect();
    let cyc_inv = group.inv(&group.cyclotomic());
    piece.characters = ws
        .par_iter()
        .map(|&w| {
            rep.chi
                .weyl_twist(weyl, weyl.inverse(w))
                .twist_by_root_char(&cyc_inv, &weyl.alpha_w(w))
        })
        .collect();
    piece.witnesses = ws.iter().map(|&w| weyl.element(w).clone()).collect();
    Ok(piece)
}

/// [`hord`] for the principal series `Ind_{B⁻} χ`.
pub fn hord_principal_series(
    weyl: &WeylGroup,
    chi: &TorusCharacter,
    n: usize,
    opts: HordOptions,
) -> Result<GradedPiece> {
    let rep = OrdinaryRepDescriptor::principal_series(weyl.datum(), chi.clone())?;
    hord(weyl, &rep, n, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{CharacterGroup, FieldData};
    use crate::root_datum::builtin;

    fn setup(name: &str, degree: u32, mode: CoefficientMode) -> (WeylGroup, CharacterGroup) {
        let rd = builtin(name).unwrap();
        let field = FieldData::new(5, degree, 5).unwrap();
        (
            WeylGroup::new(&rd).unwrap(),
            CharacterGroup::new(field, mode),
        )
    }

    fn generic(g: CharacterGroup, r: usize) -> TorusCharacter {
        let coords = (0..r)
            .map(|i| g.unramified_symbol(&format!("a{i}")))
            .collect();
        TorusCharacter::new(g, coords).unwrap()
    }

    #[test]
    fn bruhat_pieces_on_gl3() {
        let (w, _) = setup("GL3", 1, CoefficientMode::SmoothModP);
        let rd = w.datum().clone();
        let st = ParabolicData::new(&rd, &[0, 1], &[]).unwrap();
        assert_eq!(bruhat_graded(&w, &st, 0), vec![(w.identity(), 3)]);
        let sp = ParabolicData::new(&rd, &[0, 1], &[0]).unwrap();
        assert!(bruhat_graded(&w, &sp, 0).is_empty());
        let top = ParabolicData::new(&rd, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(bruhat_graded(&w, &top, 3), vec![(w.longest(), 0)]);
    }

    #[test]
    fn principal_series_degrees() {
        let (w, g) = setup("GL3", 1, CoefficientMode::SmoothModP);
        let chi = generic(g, 3);
        let h0 = hord_principal_series(&w, &chi, 0, HordOptions::default()).unwrap();
        assert_eq!(h0.characters, vec![chi.clone()]);
        let h1 = hord_principal_series(&w, &chi, 1, HordOptions::default()).unwrap();
        assert_eq!(h1.len(), 2);
        let rd = w.datum();
        for (b, c) in h1.characters.iter().enumerate() {
            let expected = chi
                .reflect(rd, b)
                .unwrap()
                .twist_by_root_char(&g.inv(&g.omega()), rd.simple_root(b).unwrap());
            assert_eq!(*c, expected);
        }
        let words: Vec<_> = h1.witnesses.iter().map(|e| e.word().to_vec()).collect();
        assert_eq!(words, vec![vec![0], vec![1]]);
    }

    #[test]
    fn quadratic_field_has_no_degree_one() {
        let (w, g) = setup("GL3", 2, CoefficientMode::SmoothModP);
        let chi = generic(g, 3);
        assert!(hord_principal_series(&w, &chi, 1, HordOptions::default())
            .unwrap()
            .is_empty());
        assert_eq!(
            hord_principal_series(&w, &chi, 2, HordOptions::default())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn validity_domain() {
        let (w, g) = setup("GL3", 1, CoefficientMode::ContinuousUnitary);
        let chi = generic(g, 3);
        assert_eq!(
            hord_principal_series(&w, &chi, 2, HordOptions::default()).unwrap_err(),
            Error::ValidityDomain { degree: 2 }
        );
        let forced = hord_principal_series(
            &w,
            &chi,
            2,
            HordOptions {
                override_validity: true,
            },
        )
        .unwrap();
        assert_eq!(forced.validity, Validity::Overridden);
        assert_eq!(forced.len(), 2);
        let (w, g) = setup("GL3", 1, CoefficientMode::SmoothModP);
        let ok = hord_principal_series(&w, &generic(g, 3), 3, HordOptions::default()).unwrap();
        assert_eq!(ok.validity, Validity::Proven);
    }

    #[test]
    fn rejects_non_l_characters() {
        let (w, g) = setup("GL2", 1, CoefficientMode::SmoothModP);
        let rd = w.datum();
        let pd = ParabolicData::new(rd, &[0], &[]).unwrap();
        let chi = TorusCharacter::new(g, vec![g.unramified_symbol("a"), g.trivial()]).unwrap();
        assert_eq!(
            OrdinaryRepDescriptor::new(rd, pd, chi).unwrap_err(),
            Error::NotLCharacter { root: 1 }
        );
    }
}
