//! Query evaluation and the two output formats.

use std::fmt::Write as _;

use ordinext::characters::{CharacterGroup, PadicCharacter, TorusCharacter};
use ordinext::ext_calculator::{self, ExtOptions, ExtReport, ExtValue, Irregularity};
use ordinext::ordinary_parts::{hord, HordOptions, OrdinaryRepDescriptor, Validity};
use ordinext::root_datum::{ParabolicData, RootDatum};
use ordinext::weyl::{SpecialRepLabel, WeylGroup};
use ordinext::Error;
use serde::Serialize;

use crate::config::{root_index, QueryConfig, QueryKind, Setup};
use crate::CliError;

pub struct RunOptions {
    pub override_validity: bool,
    pub torus_ext_dim: Option<u64>,
    pub max_weyl: usize,
}

#[derive(Serialize)]
pub struct Report {
    pub query: String,
    pub group: GroupEcho,
    pub field: FieldEcho,
    pub mode: String,
    pub inputs: Vec<NamedCharacter>,
    pub result: Body,
}

#[derive(Serialize)]
pub struct GroupEcho {
    pub name: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct FieldEcho {
    pub p: u64,
    pub degree: u32,
    pub residue_card: u64,
}

#[derive(Serialize)]
pub struct NamedCharacter {
    pub role: String,
    pub name: String,
    pub value: String,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Body {
    Roots(RootsBody),
    Weyl(WeylBody),
    Wsigma(WsigmaBody),
    Hord(HordBody),
    Ext(ExtBody),
    Irregular(IrregularBody),
}

#[derive(Serialize)]
pub struct RootsBody {
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub center_component_group: Vec<i64>,
    pub center_connected: bool,
    pub rank_one_types: Vec<String>,
}

#[derive(Serialize)]
pub struct ElementEcho {
    pub word: String,
    pub length: usize,
    pub n_w_dimension: usize,
    pub alpha_w: Vec<i64>,
}

#[derive(Serialize)]
pub struct WeylBody {
    pub order: usize,
    pub length_profile: Vec<usize>,
    pub longest: String,
    pub elements: Vec<ElementEcho>,
}

#[derive(Serialize)]
pub struct WsigmaBody {
    pub levi: Vec<usize>,
    pub inner: Vec<usize>,
    pub special: String,
    pub w_bq_size: usize,
    pub elements: Vec<ElementEcho>,
}

#[derive(Serialize)]
pub struct HordTerm {
    pub witness: String,
    pub character: String,
}

#[derive(Serialize)]
pub struct HordBody {
    pub levi: Vec<usize>,
    pub inner: Vec<usize>,
    pub special: String,
    pub degree: usize,
    pub validity: Validity,
    pub terms: Vec<HordTerm>,
}

#[derive(Serialize)]
pub struct ExtBody {
    pub levi: Option<Vec<usize>>,
    pub inner: Option<Vec<usize>>,
    pub special: Option<String>,
    pub value: ExtValue,
    pub delta_prime: Vec<usize>,
    pub delta_doubleprime: Vec<usize>,
    pub case: String,
    pub center_connected: bool,
    pub p_odd: bool,
    pub generic: Option<bool>,
}

#[derive(Serialize)]
pub struct IrregularBody {
    pub root: usize,
    pub eta: String,
    pub rank_one_type: String,
    #[serde(flatten)]
    pub record: Irregularity,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn lib_error(e: Error) -> CliError {
    match e {
        Error::ValidityDomain { .. } => CliError::Validity(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

struct Ctx<'a> {
    setup: &'a Setup,
    q: &'a QueryConfig,
    inputs: Vec<NamedCharacter>,
}

impl Ctx<'_> {
    fn character(&mut self, role: &str, name: Option<&String>) -> Result<TorusCharacter, CliError> {
        let name = name.ok_or_else(|| {
            CliError::Validation(format!("query.{role}: required for this query"))
        })?;
        let chi = self
            .setup
            .characters
            .get(name)
            .ok_or_else(|| {
                CliError::Validation(format!("query.{role}: unknown character `{name}`"))
            })?
            .clone();
        self.inputs.push(NamedCharacter {
            role: role.into(),
            name: name.clone(),
            value: chi.to_string(),
        });
        Ok(chi)
    }

    fn parabolic(&self) -> Result<ParabolicData, CliError> {
        let rd = &self.setup.datum;
        let levi = self
            .q
            .levi
            .iter()
            .map(|&k| root_index(rd, "query.levi", k))
            .collect::<Result<Vec<_>, _>>()?;
        let inner = self
            .q
            .inner
            .iter()
            .map(|&k| root_index(rd, "query.inner", k))
            .collect::<Result<Vec<_>, _>>()?;
        ParabolicData::new(rd, &levi, &inner)
            .map_err(|e| CliError::Validation(format!("query: {e}")))
    }
}

fn element_echo(w: &WeylGroup, x: usize) -> ElementEcho {
    ElementEcho {
        word: w.element(x).word_label(),
        length: w.length(x),
        n_w_dimension: w.n_w_dimension(x),
        alpha_w: w.alpha_w(x),
    }
}

fn weyl_group(rd: &RootDatum, opts: &RunOptions) -> Result<WeylGroup, CliError> {
    WeylGroup::with_bound(rd, opts.max_weyl).map_err(lib_error)
}

fn ext_body(r: ExtReport, pd: Option<&ParabolicData>) -> Body {
    Body::Ext(ExtBody {
        levi: pd.map(|p| one_based(p.levi())),
        inner: pd.map(|p| one_based(p.inner())),
        special: pd.map(|p| SpecialRepLabel::new(p.clone()).to_string()),
        value: r.value,
        delta_prime: one_based(&r.delta_prime),
        delta_doubleprime: one_based(&r.delta_doubleprime),
        case: r.case_label,
        center_connected: r.hypotheses.center_connected,
        p_odd: r.hypotheses.p_odd,
        generic: r.hypotheses.generic,
    })
}

fn parse_eta(group: CharacterGroup, eta: Option<&String>) -> Result<PadicCharacter, CliError> {
    match eta {
        None => Ok(group.trivial()),
        Some(s) => group
            .parse(s)
            .map_err(|e| CliError::Validation(format!("query.eta: {e}"))),
    }
}

pub fn run(
    setup: &Setup,
    q: &QueryConfig,
    kind: QueryKind,
    opts: &RunOptions,
) -> Result<Report, CliError> {
    let rd = &setup.datum;
    let ext_opts = ExtOptions {
        torus_ext_dim: opts.torus_ext_dim,
    };
    let mut ctx = Ctx {
        setup,
        q,
        inputs: Vec::new(),
    };
    let body = match kind {
        QueryKind::Roots => {
            let roots = rd.generate_roots().map_err(lib_error)?;
            let all: Vec<usize> = (0..rd.semisimple_rank()).collect();
            Body::Roots(RootsBody {
                cartan_matrix: rd.cartan_matrix(),
                positive_roots: roots.positive_roots().to_vec(),
                center_component_group: rd.center_component_group(&all).map_err(lib_error)?,
                center_connected: rd.is_center_connected(),
                rank_one_types: all
                    .iter()
                    .map(|&i| rd.classify_rank_one(i).map(|c| c.to_string()))
                    .collect::<Result<_, _>>()
                    .map_err(lib_error)?,
            })
        }
        QueryKind::Weyl => {
            let w = weyl_group(rd, opts)?;
            Body::Weyl(WeylBody {
                order: w.len(),
                length_profile: w.length_profile(),
                longest: w.element(w.longest()).word_label(),
                elements: (0..w.len()).map(|x| element_echo(&w, x)).collect(),
            })
        }
        QueryKind::Wsigma => {
            let pd = ctx.parabolic()?;
            let w = weyl_group(rd, opts)?;
            Body::Wsigma(WsigmaBody {
                levi: one_based(pd.levi()),
                inner: one_based(pd.inner()),
                special: SpecialRepLabel::new(pd.clone()).to_string(),
                w_bq_size: w.w_bq(&pd).len(),
                elements: w
                    .w_sigma(&pd)
                    .into_iter()
                    .map(|x| element_echo(&w, x))
                    .collect(),
            })
        }
        QueryKind::Hord => {
            let pd = ctx.parabolic()?;
            let chi = ctx.character("chi", q.chi.as_ref())?;
            let degree = q
                .degree
                .ok_or_else(|| CliError::Validation("query.degree: required for hord".into()))?;
            let w = weyl_group(rd, opts)?;
            let rep = OrdinaryRepDescriptor::new(rd, pd.clone(), chi).map_err(lib_error)?;
            let piece = hord(
                &w,
                &rep,
                degree,
                HordOptions {
                    override_validity: opts.override_validity,
                },
            )
            .map_err(lib_error)?;
            Body::Hord(HordBody {
                levi: one_based(pd.levi()),
                inner: one_based(pd.inner()),
                special: SpecialRepLabel::new(pd).to_string(),
                degree,
                validity: piece.validity,
                terms: piece
                    .witnesses
                    .iter()
                    .zip(&piece.characters)
                    .map(|(w, c)| HordTerm {
                        witness: w.word_label(),
                        character: c.to_string(),
                    })
                    .collect(),
            })
        }
        QueryKind::ExtPs => {
            let chi = ctx.character("chi", q.chi.as_ref())?;
            let chi_prime = ctx.character("chi_prime", q.chi_prime.as_ref())?;
            let r = ext_calculator::dim_ext1_principal_series(rd, &chi_prime, &chi, &ext_opts)
                .map_err(lib_error)?;
            ext_body(r, None)
        }
        QueryKind::Autoext => {
            let chi = ctx.character("chi", q.chi.as_ref())?;
            ext_body(
                ext_calculator::autoext_modp(rd, &chi).map_err(lib_error)?,
                None,
            )
        }
        QueryKind::ExtOrd => {
            let pd = ctx.parabolic()?;
            let chi = ctx.character("chi", q.chi.as_ref())?;
            let chi_prime = ctx.character("chi_prime", q.chi_prime.as_ref())?;
            let rep = OrdinaryRepDescriptor::new(rd, pd.clone(), chi).map_err(lib_error)?;
            let r =
                ext_calculator::ext_ordinary(rd, &chi_prime, &rep, &ext_opts).map_err(lib_error)?;
            ext_body(r, Some(&pd))
        }
        QueryKind::Irregular => {
            let chi = ctx.character("chi", q.chi.as_ref())?;
            let k = q
                .root
                .ok_or_else(|| CliError::Validation("query.root: required for irregular".into()))?;
            let a = root_index(rd, "query.root", k)?;
            let eta = parse_eta(setup.group, q.eta.as_ref())?;
            let record =
                ext_calculator::classify_irregular(rd, &chi, &eta, a).map_err(lib_error)?;
            Body::Irregular(IrregularBody {
                root: k,
                eta: eta.to_string(),
                rank_one_type: rd.classify_rank_one(a).map_err(lib_error)?.to_string(),
                record,
            })
        }
    };
    let field = setup.group.field();
    Ok(Report {
        query: kind.name().to_string(),
        group: GroupEcho {
            name: rd.name().unwrap_or("custom").to_string(),
            rank: rd.rank(),
            simple_roots: rd.simple_roots().to_vec(),
            simple_coroots: rd.simple_coroots().to_vec(),
        },
        field: FieldEcho {
            p: field.p(),
            degree: field.degree(),
            residue_card: field.residue_card(),
        },
        mode: setup.group.mode().to_string(),
        inputs: ctx.inputs,
        result: body,
    })
}

fn roots_label(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| format!("α{i}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn opt_flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn elements_table(out: &mut String, elements: &[ElementEcho]) {
    for e in elements {
        let _ = writeln!(
            out,
            "  {:<16} length {}  dim N_w {}  alpha_w {}",
            e.word,
            e.length,
            e.n_w_dimension,
            vector(&e.alpha_w)
        );
    }
}

pub fn human(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "query: {}", r.query);
    let _ = writeln!(
        out,
        "group: {} (rank {}, |Δ| = {})",
        r.group.name,
        r.group.rank,
        r.group.simple_roots.len()
    );
    let _ = writeln!(
        out,
        "field: p = {}, [F:Qp] = {}, q = {}",
        r.field.p, r.field.degree, r.field.residue_card
    );
    let _ = writeln!(out, "mode: {}", r.mode);
    for c in &r.inputs {
        let _ = writeln!(out, "{} = {}: {}", c.role, c.name, c.value);
    }
    match &r.result {
        Body::Roots(b) => {
            let rows: Vec<String> = b.cartan_matrix.iter().map(|row| vector(row)).collect();
            let _ = writeln!(out, "cartan matrix: [{}]", rows.join(", "));
            let _ = writeln!(out, "positive roots: {}", b.positive_roots.len());
            for v in &b.positive_roots {
                let _ = writeln!(out, "  {}", vector(v));
            }
            let _ = writeln!(
                out,
                "center component group: {}",
                vector(&b.center_component_group)
            );
            let _ = writeln!(out, "center connected: {}", b.center_connected);
            for (i, t) in b.rank_one_types.iter().enumerate() {
                let _ = writeln!(out, "G_α{}: {}", i + 1, t);
            }
        }
        Body::Weyl(b) => {
            let _ = writeln!(out, "order: {}", b.order);
            let profile: Vec<String> = b.length_profile.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "length profile: {}", profile.join(" "));
            let _ = writeln!(out, "longest element: {}", b.longest);
            let _ = writeln!(out, "elements:");
            elements_table(&mut out, &b.elements);
        }
        Body::Wsigma(b) => {
            let _ = writeln!(
                out,
                "levi: {}  inner: {}  σ = {}",
                roots_label(&b.levi),
                roots_label(&b.inner),
                b.special
            );
            let _ = writeln!(out, "|W_BQ| = {}", b.w_bq_size);
            let _ = writeln!(out, "|W_σ| = {}", b.elements.len());
            elements_table(&mut out, &b.elements);
        }
        Body::Hord(b) => {
            let _ = writeln!(
                out,
                "levi: {}  inner: {}  σ = {}",
                roots_label(&b.levi),
                roots_label(&b.inner),
                b.special
            );
            let validity = match b.validity {
                Validity::Proven => "proven",
                Validity::Overridden => "overridden (outside the proven range)",
            };
            let _ = writeln!(out, "degree: {}  validity: {}", b.degree, validity);
            let _ = writeln!(out, "characters: {}", b.terms.len());
            for t in &b.terms {
                let _ = writeln!(out, "  [{}] {}", t.witness, t.character);
            }
        }
        Body::Ext(b) => {
            if let (Some(l), Some(i), Some(s)) = (&b.levi, &b.inner, &b.special) {
                let _ = writeln!(
                    out,
                    "levi: {}  inner: {}  σ = {}",
                    roots_label(l),
                    roots_label(i),
                    s
                );
            }
            let _ = writeln!(out, "result: {}", b.value);
            let _ = writeln!(out, "Δ′: {}", roots_label(&b.delta_prime));
            let _ = writeln!(out, "Δ″: {}", roots_label(&b.delta_doubleprime));
            let _ = writeln!(out, "case: {}", b.case);
            let _ = writeln!(
                out,
                "hypotheses: center connected {}, p odd {}, generic {}",
                b.center_connected,
                b.p_odd,
                opt_flag(b.generic)
            );
        }
        Body::Irregular(b) => {
            let _ = writeln!(
                out,
                "root: α{}  η: {}  G_α type: {}",
                b.root, b.eta, b.rank_one_type
            );
            let _ = writeln!(out, "twist fixed: {}", b.record.twist_fixed);
            let _ = writeln!(out, "pullback equal: {}", b.record.pullback_equal);
            let _ = writeln!(out, "exceptional: {}", b.record.exceptional);
        }
    }
    out
}

pub fn machine(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}
