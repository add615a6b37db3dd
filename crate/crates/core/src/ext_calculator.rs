//! Dimensions of `Ext¹` between principal series and ordinary representations.
//!
//! Results are exact when a theorem pins them down, intervals (with the value
//! expected to be attained) when only bounds are known, and symbolic in the
//! torus term `[dimExt¹_T]` when `F ≠ Q_p` and no value was supplied.

use std::fmt;

use serde::Serialize;

use crate::characters::{CharacterGroup, CoefficientMode, PadicCharacter, TorusCharacter};
use crate::error::{Error, Result};
use crate::ordinary_parts::OrdinaryRepDescriptor;
use crate::root_datum::{mu_p_hom_dimension, RankOneClass, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ExtValue {
    Exact {
        dim: u64,
    },
    /// Proven bounds; `expected` is the conjectured value.
    Interval {
        low: u64,
        high: u64,
        expected: u64,
    },
    /// `constant + torus_coefficient · [dimExt¹_T]`.
    Symbolic {
        constant: u64,
        torus_coefficient: u64,
    },
}

impl ExtValue {
    pub fn exact(&self) -> Option<u64> {
        match self {
            ExtValue::Exact { dim } => Some(*dim),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exact() == Some(0)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Exact { dim } => write!(f, "exact {dim}"),
            ExtValue::Interval {
                low,
                high,
                expected,
            } => {
                write!(f, "interval [{low}, {high}], expected {expected}")
            }
            ExtValue::Symbolic {
                constant,
                torus_coefficient,
            } => {
                let term = match torus_coefficient {
                    1 => "[dimExt1_T]".to_string(),
                    k => format!("{k}*[dimExt1_T]"),
                };
                if *constant == 0 {
                    write!(f, "symbolic {term}")
                } else {
                    write!(f, "symbolic {constant} + {term}")
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// Computed from the root datum.
    pub center_connected: bool,
    pub p_odd: bool,
    /// `None` when genericity plays no role in the case reached.
    pub generic: Option<bool>,
    pub mode: CoefficientMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub value: ExtValue,
    /// 0-based simple root indices.
    pub delta_prime: Vec<usize>,
    pub delta_doubleprime: Vec<usize>,
    pub case_label: String,
    pub hypotheses: Hypotheses,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExtOptions {
    /// Value of `dim Ext¹_T(χ, χ)` to use when `F ≠ Q_p`.
    pub torus_ext_dim: Option<u64>,
}

fn hypotheses(rd: &RootDatum, group: CharacterGroup, generic: Option<bool>) -> Hypotheses {
    Hypotheses {
        center_connected: rd.is_center_connected(),
        p_odd: group.field().p() != 2,
        generic,
        mode: group.mode(),
    }
}

fn report(rd: &RootDatum, group: CharacterGroup, value: ExtValue, case: &str) -> ExtReport {
    ExtReport {
        value,
        delta_prime: Vec::new(),
        delta_doubleprime: Vec::new(),
        case_label: case.to_string(),
        hypotheses: hypotheses(rd, group, None),
    }
}

/// `s_α(χ) · (c⁻¹ ∘ α)` with `c` the cyclotomic character of the mode.
pub fn cyclotomic_reflection(
    rd: &RootDatum,
    chi: &TorusCharacter,
    a: usize,
) -> Result<TorusCharacter> {
    let g = chi.group();
    Ok(chi
        .reflect(rd, a)?
        .twist_by_root_char(&g.inv(&g.cyclotomic()), rd.simple_root(a)?))
}

/// `Δ′ = {α ∈ Δ : χ′ = s_α(χ) · (c⁻¹ ∘ α)}`.
pub fn delta_prime(
    rd: &RootDatum,
    chi: &TorusCharacter,
    chi_prime: &TorusCharacter,
) -> Result<Vec<usize>> {
    chi.check_rank(rd)?;
    let mut out = Vec::new();
    for a in 0..rd.semisimple_rank() {
        if cyclotomic_reflection(rd, chi, a)?.try_eq(chi_prime)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// `Δ″ = {α ∈ Δ′ : χ ∘ α^∨ = c⁻¹}`.
pub fn delta_doubleprime(
    rd: &RootDatum,
    chi: &TorusCharacter,
    delta_prime: &[usize],
) -> Result<Vec<usize>> {
    let g = chi.group();
    let target = g.inv(&g.cyclotomic());
    let mut out = Vec::new();
    for &a in delta_prime {
        if chi.pullback_cochar(rd.simple_coroot(a)?) == target {
            out.push(a);
        }
    }
    Ok(out)
}

/// One factor of `Q_p^× ≅ p^Z × μ × U`, with `U` the torsion-free part of the
/// principal units.
enum UnitFactor {
    Free,
    Cyclic(u64),
    ProP,
}

fn qp_units(p: u64) -> Vec<UnitFactor> {
    if p == 2 {
        // Z_2^× = {±1} × (1 + 4Z_2)
        vec![UnitFactor::Free, UnitFactor::Cyclic(2), UnitFactor::ProP]
    } else {
        vec![
            UnitFactor::Free,
            UnitFactor::Cyclic(p - 1),
            UnitFactor::ProP,
        ]
    }
}

/// `dim Hom_cont(Q_p^×, A)` for `A = k_E` (characteristic `p`) or `A = E`.
///
/// `Z` and `Z_p` each contribute a line; a finite cyclic group of order `m`
/// contributes one exactly when the coefficients have characteristic dividing
/// `m`.
pub fn qp_hom_dimension(p: u64, mode: CoefficientMode) -> u64 {
    qp_units(p)
        .iter()
        .map(|f| match f {
            UnitFactor::Free | UnitFactor::ProP => 1,
            UnitFactor::Cyclic(m) => u64::from(mode == CoefficientMode::SmoothModP && m % p == 0),
        })
        .sum()
}

/// `dim Ext¹_T(χ, χ)` for `T ≅ G_m^r`, as an [`ExtValue`].
fn torus_self_dim(
    rd: &RootDatum,
    group: CharacterGroup,
    opts: &ExtOptions,
) -> (ExtValue, &'static str) {
    let field = group.field();
    if field.is_qp() {
        let d = rd.rank() as u64 * qp_hom_dimension(field.p(), group.mode());
        (ExtValue::Exact { dim: d }, "torus, computed")
    } else if let Some(d) = opts.torus_ext_dim {
        (ExtValue::Exact { dim: d }, "torus, supplied")
    } else {
        (
            ExtValue::Symbolic {
                constant: 0,
                torus_coefficient: 1,
            },
            "torus, symbolic",
        )
    }
}

/// `dim Ext¹_{T(F)}(χ′, χ)`.
pub fn dim_ext1_torus(
    rd: &RootDatum,
    chi: &TorusCharacter,
    chi_prime: &TorusCharacter,
    opts: &ExtOptions,
) -> Result<ExtReport> {
    chi.check_rank(rd)?;
    let group = chi.group();
    if !chi.try_eq(chi_prime)? {
        return Ok(report(
            rd,
            group,
            ExtValue::Exact { dim: 0 },
            "torus, distinct characters",
        ));
    }
    let (value, case) = torus_self_dim(rd, group, opts);
    Ok(report(rd, group, value, case))
}

fn interval_or_exact(low: u64, high: u64, expected: u64) -> ExtValue {
    if low == high {
        ExtValue::Exact { dim: low }
    } else {
        ExtValue::Interval {
            low,
            high,
            expected,
        }
    }
}

/// `dim Ext¹_G(Ind χ′, Ind χ)`.
pub fn dim_ext1_principal_series(
    rd: &RootDatum,
    chi_prime: &TorusCharacter,
    chi: &TorusCharacter,
    opts: &ExtOptions,
) -> Result<ExtReport> {
    chi.check_rank(rd)?;
    let group = chi.group();
    let equal = chi.try_eq(chi_prime)?;
    if !group.field().is_qp() {
        let mut r = dim_ext1_torus(rd, chi, chi_prime, opts)?;
        r.case_label = format!("F ≠ Qp: extensions come from the torus ({})", r.case_label);
        return Ok(r);
    }
    if equal && group.mode() == CoefficientMode::SmoothModP {
        return autoext_modp(rd, chi);
    }
    let dp = delta_prime(rd, chi, chi_prime)?;
    let ddp = if equal {
        delta_doubleprime(rd, chi, &dp)?
    } else {
        Vec::new()
    };
    let mut hyp = hypotheses(rd, group, None);
    let (value, case) = if !equal {
        (
            ExtValue::Exact {
                dim: dp.len() as u64,
            },
            "distinct characters: |Δ′|",
        )
    } else {
        hyp.generic = Some(dp.is_empty());
        let (dim_t, _) = torus_self_dim(rd, group, opts);
        let dim_t = dim_t.exact().expect("F = Qp");
        if dp.is_empty() {
            (
                ExtValue::Exact { dim: dim_t },
                "self-extensions, generic: dim Ext¹_T",
            )
        } else if hyp.center_connected && hyp.p_odd {
            (
                ExtValue::Exact { dim: dim_t },
                "self-extensions, connected center and p odd: dim Ext¹_T",
            )
        } else {
            let low = dim_t + (dp.len() - ddp.len()) as u64;
            let high = dim_t + dp.len() as u64;
            (
                interval_or_exact(low, high, low),
                "self-extensions, non-generic: bounds",
            )
        }
    };
    Ok(ExtReport {
        value,
        delta_prime: dp,
        delta_doubleprime: ddp,
        case_label: case.to_string(),
        hypotheses: hyp,
    })
}

/// `dim Ext¹_G(Ind χ, Ind χ)` with smooth mod `p` coefficients over `Q_p`.
pub fn autoext_modp(rd: &RootDatum, chi: &TorusCharacter) -> Result<ExtReport> {
    chi.check_rank(rd)?;
    let group = chi.group();
    if group.mode() != CoefficientMode::SmoothModP {
        return Err(Error::ModeMismatch);
    }
    if !group.field().is_qp() {
        return Err(Error::InvalidField(
            "self-extensions mod p are computed over Qp only".into(),
        ));
    }
    let p = group.field().p();
    let dim_t = rd.rank() as u64 * qp_hom_dimension(p, group.mode());
    let dp = delta_prime(rd, chi, chi)?;
    let ddp = delta_doubleprime(rd, chi, &dp)?;
    let mut hyp = hypotheses(rd, group, Some(dp.is_empty()));
    hyp.generic = Some(dp.is_empty());
    let (value, case) = if p == 2 {
        let fixed = (0..rd.semisimple_rank())
            .map(|a| chi.reflect(rd, a).map(|s| s == *chi))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&b| b)
            .count() as u64;
        (
            ExtValue::Exact { dim: dim_t + fixed },
            "p = 2: dim Ext¹_T + |{α : s_α(χ) = χ}|",
        )
    } else if hyp.center_connected {
        (
            ExtValue::Exact { dim: dim_t },
            "connected center, p odd: dim Ext¹_T",
        )
    } else {
        let low = dim_t + (dp.len() - ddp.len()) as u64;
        let high = dim_t + dp.len() as u64;
        let h = mu_p_hom_dimension(&rd.center_component_group(&ddp)?, p) as u64;
        (
            interval_or_exact(low, high, low + h),
            "non-connected center, p odd: bounds",
        )
    };
    Ok(ExtReport {
        value,
        delta_prime: dp,
        delta_doubleprime: ddp,
        case_label: case.to_string(),
        hypotheses: hyp,
    })
}

/// `dim Ext¹_G(Ind χ′, Ind_{P⁻}(σ ⊗ χ))`.
pub fn ext_ordinary(
    rd: &RootDatum,
    chi_prime: &TorusCharacter,
    rep: &OrdinaryRepDescriptor,
    opts: &ExtOptions,
) -> Result<ExtReport> {
    let chi = rep.chi();
    let group = chi.group();
    let pd = rep.parabolic();
    let equal = chi.try_eq(chi_prime)?;
    let zero = ExtValue::Exact { dim: 0 };
    if !group.field().is_qp() {
        if pd.is_steinberg() && equal {
            let (value, _) = torus_self_dim(rd, group, opts);
            return Ok(report(
                rd,
                group,
                value,
                "F ≠ Qp, σ = St, χ′ = χ: dim Ext¹_T",
            ));
        }
        return Ok(report(
            rd,
            group,
            zero,
            "F ≠ Qp: vanishes unless σ = St and χ′ = χ",
        ));
    }
    if let Some(a) = pd.special_root() {
        let target = chi.twist_by_root_char(&group.inv(&group.cyclotomic()), rd.simple_root(a)?);
        let hit = target.try_eq(chi_prime)?;
        let (value, case) = if hit {
            (ExtValue::Exact { dim: 1 }, "σ = Sp_α, χ′ = χ·(ε⁻¹∘α)")
        } else {
            (zero, "σ = Sp_α, χ′ ≠ χ·(ε⁻¹∘α)")
        };
        return Ok(report(rd, group, value, case));
    }
    if !pd.is_steinberg() {
        return Ok(report(rd, group, zero, "σ is neither St nor Sp_α"));
    }
    let outside: Vec<usize> = (0..rd.semisimple_rank())
        .filter(|a| !pd.levi().contains(a))
        .collect();
    let dp: Vec<usize> = delta_prime(rd, chi, chi_prime)?
        .into_iter()
        .filter(|a| outside.contains(a))
        .collect();
    let mut hyp = hypotheses(rd, group, None);
    if !equal {
        let value = ExtValue::Exact {
            dim: dp.len() as u64,
        };
        return Ok(ExtReport {
            value,
            delta_prime: dp,
            delta_doubleprime: Vec::new(),
            case_label: "σ = St, χ′ ≠ χ: |(Δ − Δ_L) ∩ Δ′|".into(),
            hypotheses: hyp,
        });
    }
    let ddp = delta_doubleprime(rd, chi, &dp)?;
    hyp.generic = Some(dp.is_empty());
    let (dim_t, _) = torus_self_dim(rd, group, opts);
    let dim_t = dim_t.exact().expect("F = Qp");
    let (value, case) = if dp.is_empty() {
        (
            ExtValue::Exact { dim: dim_t },
            "σ = St, χ′ = χ, generic: dim Ext¹_T",
        )
    } else if hyp.center_connected && hyp.p_odd {
        (
            ExtValue::Exact { dim: dim_t },
            "σ = St, χ′ = χ, connected center and p odd: dim Ext¹_T",
        )
    } else {
        let low = dim_t + (dp.len() - ddp.len()) as u64;
        let high = dim_t + dp.len() as u64;
        (
            interval_or_exact(low, high, low),
            "σ = St, χ′ = χ, non-generic: bounds",
        )
    };
    Ok(ExtReport {
        value,
        delta_prime: dp,
        delta_doubleprime: ddp,
        case_label: case.to_string(),
        hypotheses: hyp,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Irregularity {
    /// `s_α(χ) · (η ∘ α) = χ`
    pub twist_fixed: bool,
    /// `χ ∘ α^∨ = η`
    pub pullback_equal: bool,
    /// `G_α` of type `SL2` and `(χ ∘ α^∨) · η⁻¹` of order exactly 2.
    pub exceptional: bool,
}

pub fn classify_irregular(
    rd: &RootDatum,
    chi: &TorusCharacter,
    eta: &PadicCharacter,
    a: usize,
) -> Result<Irregularity> {
    chi.check_rank(rd)?;
    let g = chi.group();
    let pulled = chi.pullback_cochar(rd.simple_coroot(a)?);
    let twisted = chi
        .reflect(rd, a)?
        .twist_by_root_char(eta, rd.simple_root(a)?);
    let ratio = g.mul(&pulled, &g.inv(eta));
    Ok(Irregularity {
        twist_fixed: twisted == *chi,
        pullback_equal: pulled == *eta,
        exceptional: rd.classify_rank_one(a)? == RankOneClass::SL2 && g.order(&ratio) == Some(2),
    })
}
