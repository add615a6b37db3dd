//! TOML query configuration and its resolution into library objects.

use std::collections::{BTreeMap, BTreeSet};

use ordinext::characters::{
    CharacterGroup, CoefficientMode, FieldData, PadicCharacter, TorusCharacter,
};
use ordinext::root_datum::{builtin, RootDatum};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub mode: Mode,
    pub group: GroupConfig,
    pub field: FieldConfig,
    #[serde(default)]
    pub characters: BTreeMap<String, CharacterConfig>,
    pub query: QueryConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    SmoothModP,
    ContinuousUnitary,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub name: Option<String>,
    pub rank: Option<usize>,
    pub simple_roots: Option<Vec<Vec<i64>>>,
    pub simple_coroots: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: u64,
    #[serde(default = "one")]
    pub degree: u32,
    pub residue_card: Option<u64>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterConfig {
    /// One entry per basis vector of `X^∨`, or per ambient coordinate.
    pub coords: Option<Vec<CoordConfig>>,
    #[serde(default)]
    pub ambient: bool,
    /// Derive from another named character.
    pub from: Option<String>,
    /// Apply `s_α` (1-based root index).
    pub reflect: Option<usize>,
    /// Multiply by `η ∘ α` with `η = twist`, `α = twist_root`.
    pub twist: Option<String>,
    pub twist_root: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CoordConfig {
    Expr(String),
    Parts(CoordParts),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordParts {
    /// A root of unity `a/b` or a symbol name.
    pub unramified: Option<String>,
    #[serde(default)]
    pub tame: i64,
    /// `canonical` for the wild part of `ε`, any other key is a named symbol.
    #[serde(default)]
    pub wild: BTreeMap<String, i64>,
    #[serde(default)]
    pub sign2: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryKind {
    Roots,
    Weyl,
    Wsigma,
    Hord,
    ExtPs,
    Autoext,
    ExtOrd,
    Irregular,
}

impl QueryKind {
    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Roots => "roots",
            QueryKind::Weyl => "weyl",
            QueryKind::Wsigma => "wsigma",
            QueryKind::Hord => "hord",
            QueryKind::ExtPs => "ext-ps",
            QueryKind::Autoext => "autoext",
            QueryKind::ExtOrd => "ext-ord",
            QueryKind::Irregular => "irregular",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            QueryKind::Roots,
            QueryKind::Weyl,
            QueryKind::Wsigma,
            QueryKind::Hord,
            QueryKind::ExtPs,
            QueryKind::Autoext,
            QueryKind::ExtOrd,
            QueryKind::Irregular,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryConfig {
    pub kind: QueryKind,
    /// 1-based simple root indices.
    #[serde(default)]
    pub levi: Vec<usize>,
    #[serde(default)]
    pub inner: Vec<usize>,
    pub degree: Option<usize>,
    pub chi: Option<String>,
    pub chi_prime: Option<String>,
    pub eta: Option<String>,
    pub root: Option<usize>,
}

pub fn parse(text: &str) -> Result<Config, CliError> {
    toml::from_str(text).map_err(|e| CliError::Parse(e.to_string().trim_end().to_string()))
}

/// Everything a query needs, validated.
pub struct Setup {
    pub datum: RootDatum,
    pub group: CharacterGroup,
    pub characters: BTreeMap<String, TorusCharacter>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn resolve(cfg: &Config) -> Result<Setup, CliError> {
    let datum = resolve_group(&cfg.group)?;
    let field = FieldData::new(
        cfg.field.p,
        cfg.field.degree,
        cfg.field.residue_card.unwrap_or(cfg.field.p),
    )
    .map_err(|e| invalid(format!("field: {e}")))?;
    let mode = match cfg.mode {
        Mode::SmoothModP => CoefficientMode::SmoothModP,
        Mode::ContinuousUnitary => CoefficientMode::ContinuousUnitary,
    };
    let group = CharacterGroup::new(field, mode);
    let mut characters = BTreeMap::new();
    for name in cfg.characters.keys() {
        resolve_character(
            cfg,
            &datum,
            group,
            name,
            &mut characters,
            &mut BTreeSet::new(),
        )?;
    }
    Ok(Setup {
        datum,
        group,
        characters,
    })
}

fn resolve_group(g: &GroupConfig) -> Result<RootDatum, CliError> {
    match (&g.name, g.rank, &g.simple_roots, &g.simple_coroots) {
        (Some(name), None, None, None) => {
            builtin(name).map_err(|e| invalid(format!("group.name: {e}")))
        }
        (None, Some(rank), Some(roots), Some(coroots)) => {
            if roots.iter().chain(coroots).any(|v| v.len() != rank) {
                return Err(invalid(format!(
                    "group: every root and coroot must have {rank} entries"
                )));
            }
            RootDatum::new(rank, roots.clone(), coroots.clone())
                .map_err(|e| invalid(format!("group: {e}")))
        }
        _ => Err(invalid(
            "group: give either `name` or all of `rank`, `simple_roots`, `simple_coroots`",
        )),
    }
}

pub fn root_index(rd: &RootDatum, key: &str, k: usize) -> Result<usize, CliError> {
    if k == 0 || k > rd.semisimple_rank() {
        Err(invalid(format!(
            "{key}: simple root {k} out of range 1..={}",
            rd.semisimple_rank()
        )))
    } else {
        Ok(k - 1)
    }
}

fn resolve_character(
    cfg: &Config,
    rd: &RootDatum,
    group: CharacterGroup,
    name: &str,
    done: &mut BTreeMap<String, TorusCharacter>,
    visiting: &mut BTreeSet<String>,
) -> Result<TorusCharacter, CliError> {
    if let Some(c) = done.get(name) {
        return Ok(c.clone());
    }
    let key = format!("characters.{name}");
    let entry = cfg
        .characters
        .get(name)
        .ok_or_else(|| invalid(format!("unknown character `{name}`")))?;
    if !visiting.insert(name.to_string()) {
        return Err(invalid(format!("{key}: cyclic definition")));
    }
    let base = match (&entry.coords, &entry.from) {
        (Some(coords), None) => {
            let parsed = coords
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    coordinate(group, c).map_err(|e| invalid(format!("{key}.coords[{i}]: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let chi = if entry.ambient {
                if rd.ambient_cochar_basis().is_none() {
                    return Err(invalid(format!("{key}: this group has no ambient torus")));
                }
                TorusCharacter::from_ambient(rd, group, parsed)
            } else {
                TorusCharacter::new(group, parsed).and_then(|c| c.check_rank(rd).map(|_| c))
            };
            chi.map_err(|e| invalid(format!("{key}: {e}")))?
        }
        (None, Some(from)) => resolve_character(cfg, rd, group, from, done, visiting)?,
        _ => {
            return Err(invalid(format!(
                "{key}: give exactly one of `coords` or `from`"
            )))
        }
    };
    let mut chi = base;
    if let Some(k) = entry.reflect {
        let a = root_index(rd, &format!("{key}.reflect"), k)?;
        chi = chi
            .reflect(rd, a)
            .map_err(|e| invalid(format!("{key}: {e}")))?;
    }
    match (&entry.twist, entry.twist_root) {
        (Some(eta), Some(k)) => {
            let a = root_index(rd, &format!("{key}.twist_root"), k)?;
            let eta = group
                .parse(eta)
                .map_err(|e| invalid(format!("{key}.twist: {e}")))?;
            chi = chi.twist_by_root_char(&eta, rd.simple_root(a).expect("checked index"));
        }
        (None, None) => {}
        _ => {
            return Err(invalid(format!(
                "{key}: `twist` and `twist_root` go together"
            )))
        }
    }
    visiting.remove(name);
    done.insert(name.to_string(), chi.clone());
    Ok(chi)
}

fn coordinate(group: CharacterGroup, c: &CoordConfig) -> ordinext::Result<PadicCharacter> {
    match c {
        CoordConfig::Expr(s) => group.parse(s),
        CoordConfig::Parts(parts) => {
            let mut out = PadicCharacter::default();
            if let Some(u) = &parts.unramified {
                out = group.parse(&format!("unr({u})"))?;
            }
            let m = group.field().residue_card() as i64 - 1;
            out.tame = parts.tame.rem_euclid(m.max(1)) as u64;
            for (k, &e) in &parts.wild {
                if k == "canonical" {
                    out.wild.canonical = e;
                } else if e != 0 {
                    out.wild.symbols.insert(k.clone(), e);
                }
            }
            out.sign2 = parts.sign2;
            group.check(&out)?;
            Ok(group.reduce(out))
        }
    }
}
