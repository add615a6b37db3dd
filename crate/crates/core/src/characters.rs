//! Exact symbolic characters of `F^×` and of `T(F)`.
//!
//! A character of `F^× ≅ ϖ^Z × μ_{q-1} × U_1` is recorded by
//!
//! * its value at the uniformizer: a root of unity (an element of `Q/Z`)
//!   times a word in named free symbols,
//! * its tame part: an exponent of the Teichmüller character in `Z/(q-1)`,
//! * its wild part: a multiple of the canonical wild character (the wild
//!   part of `ε`) plus a word in named free symbols,
//! * for `p = 2` with continuous coefficients, the `{±1}` component.
//!
//! With smooth mod `p` coefficients the pro-`p` parts vanish: the wild part
//! and the sign are dropped and roots of unity are projected to their
//! prime-to-`p` part. Symbols are free generators, so two different symbols
//! never compare equal.
//!
//! A character of `T(F)` is an element of `X ⊗ (characters of F^×)`, stored
//! as one coordinate per basis vector of `X^∨`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::{snf::gcd, RootDatum};
use crate::weyl::WeylGroup;

/// Reserved unramified symbol for `ε(ϖ)` when `F/Q_p` is ramified.
pub const EPS_UNIFORMIZER_SYMBOL: &str = "eps_unif";

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a as i64, b as i64) as u64 * b
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // m is small; extended Euclid on i128
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "not invertible");
    t0.rem_euclid(m as i128) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldData {
    p: u64,
    degree: u32,
    residue_degree: u32,
}

impl FieldData {
    pub fn new(p: u64, degree: u32, residue_card: u64) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidField(m));
        if !is_prime(p) {
            return bad(format!("p = {p} is not prime"));
        }
        if degree == 0 {
            return bad("degree must be at least 1".into());
        }
        let mut f = 0u32;
        let mut q = 1u64;
        while q < residue_card {
            q = match q.checked_mul(p) {
                Some(q) => q,
                None => return bad(format!("residue cardinality {residue_card} is too large")),
            };
            f += 1;
        }
        if q != residue_card || f == 0 {
            return bad(format!(
                "residue cardinality {residue_card} is not a power of {p}"
            ));
        }
        if !degree.is_multiple_of(f) {
            return bad(format!(
                "residue degree {f} does not divide [F:Qp] = {degree}"
            ));
        }
        Ok(FieldData {
            p,
            degree,
            residue_degree: f,
        })
    }

    pub fn qp(p: u64) -> Result<Self> {
        Self::new(p, 1, p)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `[F : Q_p]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn residue_degree(&self) -> u32 {
        self.residue_degree
    }

    pub fn residue_card(&self) -> u64 {
        self.p.pow(self.residue_degree)
    }

    pub fn ramification_index(&self) -> u32 {
        self.degree / self.residue_degree
    }

    pub fn is_qp(&self) -> bool {
        self.degree == 1
    }

    fn tame_modulus(&self) -> u64 {
        self.residue_card() - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoefficientMode {
    /// Smooth characters with values in a finite field of characteristic `p`.
    SmoothModP,
    /// Continuous unitary characters with values in `O_E^×`.
    ContinuousUnitary,
}

impl fmt::Display for CoefficientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientMode::SmoothModP => "smooth-mod-p",
            CoefficientMode::ContinuousUnitary => "continuous-unitary",
        })
    }
}

/// An element `num/den` of `Q/Z`, stored reduced with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl Default for RootOfUnity {
    fn default() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = gcd(n as i64, den as i64).max(1) as u64;
        let (n, d) = (n / g, den / g);
        if n == 0 {
            RootOfUnity::default()
        } else {
            RootOfUnity { num: n, den: d }
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_trivial(&self) -> bool {
        self.num == 0
    }

    pub fn order(&self) -> u64 {
        self.den
    }

    fn add(self, o: RootOfUnity) -> RootOfUnity {
        let den = lcm(self.den, o.den);
        let num = (self.num * (den / self.den) + o.num * (den / o.den)) as i64;
        RootOfUnity::new(num, den)
    }

    fn scale(self, k: i64) -> RootOfUnity {
        let k = k.rem_euclid(self.den as i64);
        RootOfUnity::new((self.num as i64) * k, self.den)
    }

    /// Projection of `Q/Z` onto its prime-to-`p` part.
    fn prime_to(self, p: u64) -> RootOfUnity {
        let mut pk = 1u64;
        let mut rest = self.den;
        while rest.is_multiple_of(p) {
            rest /= p;
            pk *= p;
        }
        if rest == 1 {
            return RootOfUnity::default();
        }
        let y = (self.num % rest) * mod_inverse(pk % rest, rest) % rest;
        RootOfUnity::new(y as i64, rest)
    }
}

fn add_words(a: &mut BTreeMap<String, i64>, b: &BTreeMap<String, i64>, k: i64) {
    for (s, e) in b {
        let v = a.entry(s.clone()).or_insert(0);
        *v += k * e;
    }
    a.retain(|_, v| *v != 0);
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnramifiedValue {
    pub root: RootOfUnity,
    pub symbols: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WildPart {
    /// Exponent of the wild part of `ε`.
    pub canonical: i64,
    pub symbols: BTreeMap<String, i64>,
}

/// A character of `F^×`. Only meaningful together with a [`CharacterGroup`],
/// which fixes the field and coefficient mode and keeps values normalized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PadicCharacter {
    pub unramified: UnramifiedValue,
    pub tame: u64,
    pub wild: WildPart,
    pub sign2: u8,
}

impl PadicCharacter {
    pub fn is_trivial(&self) -> bool {
        *self == PadicCharacter::default()
    }
}

impl fmt::Display for PadicCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(base: String, e: i64) -> String {
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        }
        let mut factors = Vec::new();
        let u = &self.unramified;
        if !u.root.is_trivial() {
            factors.push(format!("unr({}/{})", u.root.num, u.root.den));
        }
        for (s, &e) in &u.symbols {
            factors.push(power(format!("unr({s})"), e));
        }
        if self.tame != 0 {
            factors.push(power("teich".into(), self.tame as i64));
        }
        if self.wild.canonical != 0 {
            factors.push(power("wild".into(), self.wild.canonical));
        }
        for (s, &e) in &self.wild.symbols {
            factors.push(power(format!("wild({s})"), e));
        }
        if self.sign2 != 0 {
            factors.push("sign".into());
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// The group of characters of `F^×` for a fixed field and coefficient mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharacterGroup {
    field: FieldData,
    mode: CoefficientMode,
}

impl CharacterGroup {
    pub fn new(field: FieldData, mode: CoefficientMode) -> Self {
        CharacterGroup { field, mode }
    }

    pub fn field(&self) -> FieldData {
        self.field
    }

    pub fn mode(&self) -> CoefficientMode {
        self.mode
    }

    fn has_sign_component(&self) -> bool {
        self.field.p == 2 && self.mode == CoefficientMode::ContinuousUnitary
    }

    /// Brings a character into normal form for this group; in mod `p` mode this
    /// is reduction modulo `p`.
    pub fn reduce(&self, mut c: PadicCharacter) -> PadicCharacter {
        let m = self.field.tame_modulus();
        c.tame %= m;
        c.unramified.symbols.retain(|_, v| *v != 0);
        c.wild.symbols.retain(|_, v| *v != 0);
        if !self.has_sign_component() {
            c.sign2 = 0;
        }
        c.sign2 %= 2;
        if self.mode == CoefficientMode::SmoothModP {
            c.wild = WildPart::default();
            c.unramified.root = c.unramified.root.prime_to(self.field.p);
        }
        c
    }

    /// Rejects data that does not exist in this mode instead of reducing it.
    pub fn check(&self, c: &PadicCharacter) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidCharacter(m.to_string()));
        if c.tame >= self.field.tame_modulus() {
            return bad("tame exponent must lie in [0, q-1)");
        }
        if c.sign2 > 1 {
            return bad("sign component must be 0 or 1");
        }
        if c.sign2 != 0 && !self.has_sign_component() {
            return bad("a sign component only exists for p = 2 with continuous coefficients");
        }
        if self.mode == CoefficientMode::SmoothModP {
            if c.wild != WildPart::default() {
                return bad("smooth mod p characters have trivial wild part");
            }
            if c.unramified.root.den.is_multiple_of(self.field.p) {
                return bad(
                    "roots of unity of order divisible by p do not exist in characteristic p",
                );
            }
        }
        Ok(())
    }

    pub fn trivial(&self) -> PadicCharacter {
        PadicCharacter::default()
    }

    pub fn unramified_root(&self, num: i64, den: u64) -> PadicCharacter {
        let mut c = PadicCharacter::default();
        c.unramified.root = RootOfUnity::new(num, den);
        self.reduce(c)
    }

    pub fn unramified_symbol(&self, name: &str) -> PadicCharacter {
        let mut c = PadicCharacter::default();
        c.unramified.symbols.insert(name.to_string(), 1);
        c
    }

    /// Power of the Teichmüller character on `μ_{q-1}`.
    pub fn teichmuller(&self, k: i64) -> PadicCharacter {
        let m = self.field.tame_modulus() as i64;
        PadicCharacter {
            tame: k.rem_euclid(m) as u64,
            ..Default::default()
        }
    }

    pub fn wild_canonical(&self, k: i64) -> PadicCharacter {
        let mut c = PadicCharacter::default();
        c.wild.canonical = k;
        self.reduce(c)
    }

    pub fn wild_symbol(&self, name: &str) -> PadicCharacter {
        let mut c = PadicCharacter::default();
        c.wild.symbols.insert(name.to_string(), 1);
        self.reduce(c)
    }

    pub fn sign(&self) -> PadicCharacter {
        self.reduce(PadicCharacter {
            sign2: 1,
            ..Default::default()
        })
    }

    /// The cyclotomic character `ε(x) = N(x)|N(x)|_p`, reduced to this mode.
    ///
    /// On `μ_{q-1}` the norm is `ζ ↦ ζ^{e(q-1)/(p-1)}`; at the uniformizer it is
    /// trivial when `F/Q_p` is unramified and the reserved symbol otherwise.
    pub fn eps(&self) -> PadicCharacter {
        let f = &self.field;
        let e = f.ramification_index() as u64;
        let m = f.tame_modulus();
        let mut c = PadicCharacter {
            tame: if m == 0 { 0 } else { (e * (m / (f.p - 1))) % m },
            ..Default::default()
        };
        if e != 1 {
            c.unramified
                .symbols
                .insert(EPS_UNIFORMIZER_SYMBOL.to_string(), 1);
        }
        c.wild.canonical = 1;
        c.sign2 = (f.degree % 2) as u8;
        self.reduce(c)
    }

    /// `ω`, the reduction of `ε` modulo `p`.
    pub fn omega(&self) -> PadicCharacter {
        CharacterGroup::new(self.field, CoefficientMode::SmoothModP).reduce(self.eps())
    }

    /// `ε` in continuous mode, `ω` in mod `p` mode.
    pub fn cyclotomic(&self) -> PadicCharacter {
        self.eps()
    }

    pub fn mul(&self, a: &PadicCharacter, b: &PadicCharacter) -> PadicCharacter {
        self.mul_pow(a, b, 1)
    }

    /// `a · b^k`
    fn mul_pow(&self, a: &PadicCharacter, b: &PadicCharacter, k: i64) -> PadicCharacter {
        let m = self.field.tame_modulus() as i64;
        let mut c = a.clone();
        c.unramified.root = a.unramified.root.add(b.unramified.root.scale(k));
        add_words(&mut c.unramified.symbols, &b.unramified.symbols, k);
        c.tame = (a.tame as i64 + k.rem_euclid(m) * (b.tame as i64 % m)).rem_euclid(m) as u64;
        c.wild.canonical += k * b.wild.canonical;
        add_words(&mut c.wild.symbols, &b.wild.symbols, k);
        c.sign2 = ((a.sign2 as i64 + k * b.sign2 as i64).rem_euclid(2)) as u8;
        self.reduce(c)
    }

    pub fn pow(&self, a: &PadicCharacter, k: i64) -> PadicCharacter {
        self.mul_pow(&self.trivial(), a, k)
    }

    pub fn inv(&self, a: &PadicCharacter) -> PadicCharacter {
        self.pow(a, -1)
    }

    /// Multiplicative order, `None` when infinite or unknown (symbols present).
    pub fn order(&self, a: &PadicCharacter) -> Option<u64> {
        if !a.unramified.symbols.is_empty() || a.wild != WildPart::default() {
            return None;
        }
        let m = self.field.tame_modulus();
        let tame_order = m / gcd(a.tame as i64, m as i64).max(1) as u64;
        let sign_order = if a.sign2 == 0 { 1 } else { 2 };
        Some(lcm(
            lcm(a.unramified.root.order(), tame_order.max(1)),
            sign_order,
        ))
    }

    /// Every smooth character with trivial wild part whose unramified value has
    /// order dividing `bound`; roots of order divisible by `p` do not exist in
    /// characteristic `p`, so only the prime-to-`p` part of `bound` counts.
    /// Ordered by unramified value, then tame exponent.
    pub fn enumerate_finite(&self, bound: u64) -> Result<Vec<PadicCharacter>> {
        if self.mode != CoefficientMode::SmoothModP {
            return Err(Error::InvalidCharacter(
                "finite enumeration is only available for smooth mod p characters".into(),
            ));
        }
        let mut b = bound.max(1);
        while b.is_multiple_of(self.field.p) {
            b /= self.field.p;
        }
        let m = self.field.tame_modulus();
        let mut out = Vec::with_capacity((b * m) as usize);
        for k in 0..b {
            for t in 0..m {
                let mut c = self.unramified_root(k as i64, b);
                c.tame = t;
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Parses a product expression such as `unr(1/2)*eps^-3*wild(x)^2`.
    ///
    /// Factors: `1`, `eps`, `omega` (mod `p` only), `teich`, `wild`, `sign`,
    /// `unr(a/b)`, `unr(name)`, `wild(name)`, each optionally raised to an
    /// integer power with `^`.
    pub fn parse(&self, s: &str) -> Result<PadicCharacter> {
        let err = |m: String| Error::InvalidCharacter(m);
        let mut acc = self.trivial();
        let s = s.trim();
        if s.is_empty() {
            return Err(err("empty character expression".into()));
        }
        for raw in s.split('*') {
            let factor = raw.trim();
            let (base, exp) =
                split_power(factor).ok_or_else(|| err(format!("bad factor `{factor}`")))?;
            let value = if let Some(arg) =
                base.strip_prefix("unr(").and_then(|r| r.strip_suffix(')'))
            {
                if let Some((n, d)) = arg.split_once('/') {
                    let n: i64 = n
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad numerator in `{factor}`")))?;
                    let d: u64 = d
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad denominator in `{factor}`")))?;
                    if d == 0 {
                        return Err(err(format!("zero denominator in `{factor}`")));
                    }
                    let root = RootOfUnity::new(n, d);
                    if self.mode == CoefficientMode::SmoothModP
                        && root.den.is_multiple_of(self.field.p)
                    {
                        return Err(err(format!(
                            "`{factor}`: no root of unity of order {} in characteristic {}",
                            root.den, self.field.p
                        )));
                    }
                    self.unramified_root(n, d)
                } else {
                    self.unramified_symbol(check_symbol(arg.trim())?)
                }
            } else if let Some(arg) = base.strip_prefix("wild(").and_then(|r| r.strip_suffix(')')) {
                self.require_continuous(factor)?;
                self.wild_symbol(check_symbol(arg.trim())?)
            } else {
                match base {
                    "1" => self.trivial(),
                    "eps" => self.eps(),
                    "omega" => {
                        if self.mode != CoefficientMode::SmoothModP {
                            return Err(err(
                                "`omega` is a mod p character; use `eps` or `teich`".into()
                            ));
                        }
                        self.omega()
                    }
                    "teich" => self.teichmuller(1),
                    "wild" => {
                        self.require_continuous(factor)?;
                        self.wild_canonical(1)
                    }
                    "sign" => {
                        if !self.has_sign_component() {
                            return Err(err(
                                "`sign` needs p = 2 and continuous coefficients".into()
                            ));
                        }
                        self.sign()
                    }
                    _ => return Err(err(format!("unknown factor `{factor}`"))),
                }
            };
            acc = self.mul_pow(&acc, &value, exp);
        }
        Ok(acc)
    }

    fn require_continuous(&self, factor: &str) -> Result<()> {
        if self.mode == CoefficientMode::SmoothModP {
            Err(Error::InvalidCharacter(format!(
                "`{factor}`: smooth mod p characters have trivial wild part"
            )))
        } else {
            Ok(())
        }
    }
}

fn split_power(factor: &str) -> Option<(&str, i64)> {
    match factor.rsplit_once('^') {
        Some((base, e)) if !base.ends_with('(') => Some((base.trim(), e.trim().parse().ok()?)),
        _ => Some((factor, 1)),
    }
}

fn check_symbol(name: &str) -> Result<&str> {
    let ok = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(name)
    } else {
        Err(Error::InvalidCharacter(format!("bad symbol name `{name}`")))
    }
}

/// A character of `T(F)`: coordinates on the basis of `X^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusCharacter {
    group: CharacterGroup,
    coords: Vec<PadicCharacter>,
}

impl TorusCharacter {
    pub fn new(group: CharacterGroup, coords: Vec<PadicCharacter>) -> Result<Self> {
        for c in &coords {
            group.check(c)?;
        }
        Ok(TorusCharacter { group, coords })
    }

    pub fn trivial(group: CharacterGroup, rank: usize) -> Self {
        TorusCharacter {
            group,
            coords: vec![group.trivial(); rank],
        }
    }

    /// Restricts a character of an ambient diagonal torus `Z^m` along the
    /// datum's cocharacter basis. Without an ambient basis the coordinates are
    /// taken as they are.
    pub fn from_ambient(
        rd: &RootDatum,
        group: CharacterGroup,
        ambient: Vec<PadicCharacter>,
    ) -> Result<Self> {
        let Some(basis) = rd.ambient_cochar_basis() else {
            return Self::new(group, ambient).and_then(|c| c.check_rank(rd).map(|_| c));
        };
        if basis.first().map(|b| b.len()) != Some(ambient.len()) {
            return Err(Error::InvalidCharacter(format!(
                "ambient character has {} coordinates, the ambient torus has rank {}",
                ambient.len(),
                basis.first().map_or(0, |b| b.len())
            )));
        }
        let amb = TorusCharacter::new(group, ambient)?;
        let coords = basis.iter().map(|b| amb.pullback_cochar(b)).collect();
        Ok(TorusCharacter { group, coords })
    }

    pub fn group(&self) -> CharacterGroup {
        self.group
    }

    pub fn coords(&self) -> &[PadicCharacter] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn check_rank(&self, rd: &RootDatum) -> Result<()> {
        if self.rank() == rd.rank() {
            Ok(())
        } else {
            Err(Error::InvalidCharacter(format!(
                "character has {} coordinates, the torus has rank {}",
                self.rank(),
                rd.rank()
            )))
        }
    }

    fn compatible(&self, other: &TorusCharacter) -> Result<()> {
        if self.group.field != other.group.field {
            return Err(Error::FieldMismatch);
        }
        if self.group != other.group || self.rank() != other.rank() {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &TorusCharacter) -> Result<TorusCharacter> {
        self.compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| self.group.mul(a, b))
            .collect();
        Ok(TorusCharacter {
            group: self.group,
            coords,
        })
    }

    pub fn inv(&self) -> TorusCharacter {
        let coords = self.coords.iter().map(|a| self.group.inv(a)).collect();
        TorusCharacter {
            group: self.group,
            coords,
        }
    }

    /// Equality that refuses to compare characters from different groups.
    pub fn try_eq(&self, other: &TorusCharacter) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.coords == other.coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(PadicCharacter::is_trivial)
    }

    /// `χ ∘ λ = Π χ_i^{λ_i}`.
    pub fn pullback_cochar(&self, lambda: &[i64]) -> PadicCharacter {
        assert_eq!(lambda.len(), self.rank(), "cocharacter has the wrong rank");
        self.coords
            .iter()
            .zip(lambda)
            .fold(self.group.trivial(), |acc, (c, &k)| {
                self.group.mul_pow(&acc, c, k)
            })
    }

    /// `χ · (η ∘ α)` for `α ∈ X`.
    pub fn twist_by_root_char(&self, eta: &PadicCharacter, alpha: &[i64]) -> TorusCharacter {
        assert_eq!(alpha.len(), self.rank(), "character has the wrong rank");
        let coords = self
            .coords
            .iter()
            .zip(alpha)
            .map(|(c, &k)| self.group.mul_pow(c, eta, k))
            .collect();
        TorusCharacter {
            group: self.group,
            coords,
        }
    }

    /// `(w·χ)(λ) = χ(w^{-1} λ)`: `w` acts on the coordinate vector through its
    /// action on `X`.
    pub fn weyl_twist(&self, weyl: &WeylGroup, w: usize) -> TorusCharacter {
        let m = weyl.element(w).char_action();
        let coords = (0..self.rank())
            .map(|j| {
                self.coords
                    .iter()
                    .enumerate()
                    .fold(self.group.trivial(), |acc, (i, c)| {
                        self.group.mul_pow(&acc, c, m[(j, i)])
                    })
            })
            .collect();
        TorusCharacter {
            group: self.group,
            coords,
        }
    }

    /// `s_α(χ) = χ · ((χ ∘ α^∨)^{-1} ∘ α)`, straight from the reflection
    /// formula without the Weyl group.
    pub fn reflect(&self, rd: &RootDatum, i: usize) -> Result<TorusCharacter> {
        let coroot = rd.simple_coroot(i)?;
        let root = rd.simple_root(i)?;
        let pulled = self.group.inv(&self.pullback_cochar(coroot));
        Ok(self.twist_by_root_char(&pulled, root))
    }

    /// Trivial on `im α^∨` for every `α ∈ Δ_L`; such characters are the
    /// restrictions of characters of `L(F)`.
    pub fn is_l_character(&self, rd: &RootDatum, levi: &[usize]) -> Result<bool> {
        Ok(self.first_non_l_root(rd, levi)?.is_none())
    }

    pub(crate) fn first_non_l_root(&self, rd: &RootDatum, levi: &[usize]) -> Result<Option<usize>> {
        for &a in levi {
            if !self.pullback_cochar(rd.simple_coroot(a)?).is_trivial() {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::builtin;

    fn modp(p: u64) -> CharacterGroup {
        CharacterGroup::new(FieldData::qp(p).unwrap(), CoefficientMode::SmoothModP)
    }

    fn cont(p: u64) -> CharacterGroup {
        CharacterGroup::new(
            FieldData::qp(p).unwrap(),
            CoefficientMode::ContinuousUnitary,
        )
    }

    #[test]
    fn field_validation() {
        assert!(FieldData::new(4, 1, 4).is_err());
        assert!(FieldData::new(3, 1, 9).is_err());
        assert!(FieldData::new(3, 2, 6).is_err());
        let f = FieldData::new(3, 4, 9).unwrap();
        assert_eq!(
            (f.residue_degree(), f.ramification_index(), f.residue_card()),
            (2, 2, 9)
        );
    }

    #[test]
    fn cyclotomic_characters() {
        let g = cont(5);
        let eps = g.eps();
        assert!(eps.unramified.root.is_trivial() && eps.unramified.symbols.is_empty());
        assert_eq!(eps.tame, 1);
        assert_eq!(eps.wild.canonical, 1);
        // the image of ε in mod p coefficients is ω
        assert_eq!(modp(5).reduce(eps), modp(5).eps());
        assert_eq!(modp(5).omega(), modp(5).eps());
        assert_eq!(modp(5).omega().tame, 1);
        // ω is trivial for p = 2
        assert!(modp(2).omega().is_trivial());
        assert_eq!(cont(2).eps().sign2, 1);
    }

    #[test]
    fn cyclotomic_over_extensions() {
        // unramified quadratic extension of Q_3: norm on μ_8 is ζ ↦ ζ^4
        let g = CharacterGroup::new(
            FieldData::new(3, 2, 9).unwrap(),
            CoefficientMode::SmoothModP,
        );
        let w = g.omega();
        assert_eq!(w.tame, 4);
        assert!(w.unramified.symbols.is_empty());
        // ramified quadratic extension of Q_3
        let g = CharacterGroup::new(
            FieldData::new(3, 2, 3).unwrap(),
            CoefficientMode::ContinuousUnitary,
        );
        let e = g.eps();
        assert_eq!(e.tame, 0);
        assert_eq!(e.unramified.symbols.get(EPS_UNIFORMIZER_SYMBOL), Some(&1));
    }

    #[test]
    fn group_law() {
        let g = cont(7);
        let a = g.parse("unr(1/3)*teich^2*wild(x)*unr(u)^2").unwrap();
        assert!(g.mul(&a, &g.inv(&a)).is_trivial());
        assert_eq!(g.pow(&a, 3), g.parse("teich^6*wild(x)^3*unr(u)^6").unwrap());
        assert_ne!(g.wild_symbol("x"), g.wild_symbol("y"));
    }

    #[test]
    fn orders() {
        let g = modp(5);
        assert_eq!(g.order(&g.unramified_root(1, 2)), Some(2));
        assert_eq!(g.order(&g.teichmuller(2)), Some(2));
        assert_eq!(g.order(&g.parse("unr(1/3)*teich").unwrap()), Some(12));
        assert_eq!(g.order(&g.unramified_symbol("a")), None);
        assert_eq!(g.order(&g.trivial()), Some(1));
        assert_eq!(cont(2).order(&cont(2).sign()), Some(2));
    }

    #[test]
    fn parse_display_round_trip() {
        let g = cont(2);
        for s in [
            "1",
            "unr(1/2)*wild^-3",
            "unr(a)^-1*wild(x)^2*sign",
            "unr(3/4)",
        ] {
            let c = g.parse(s).unwrap();
            assert_eq!(c.to_string(), s);
            assert_eq!(g.parse(&c.to_string()).unwrap(), c);
        }
        assert_eq!(g.parse("eps^-1").unwrap().to_string(), "wild^-1*sign");
        // μ_1 is trivial for q = 2
        assert!(g.parse("teich^5").unwrap().is_trivial());
        let g = cont(7);
        assert_eq!(
            g.parse("teich^-1*unr(2/6)").unwrap().to_string(),
            "unr(1/3)*teich^5"
        );
    }

    #[test]
    fn parse_rejects_mode_violations() {
        assert!(modp(2).parse("unr(1/2)").is_err());
        assert!(modp(3).parse("wild").is_err());
        assert!(modp(3).parse("sign").is_err());
        assert!(cont(3).parse("omega").is_err());
        assert!(cont(3).parse("unr(1/0)").is_err());
        assert!(cont(3).parse("unr(9x)").is_err());
        assert!(cont(3).parse("foo").is_err());
        assert!(modp(3).parse("unr(1/2)*omega^-1").is_ok());
    }

    #[test]
    fn modp_reduction_projects_roots() {
        // 1/6 = 1/2 + (-1/3)... prime-to-2 part of 1/6 is 2/3
        assert_eq!(RootOfUnity::new(1, 6).prime_to(2), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::new(1, 4).prime_to(2), RootOfUnity::default());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(modp(3).enumerate_finite(2).unwrap().len(), 4);
        assert_eq!(modp(2).enumerate_finite(1).unwrap().len(), 1);
        assert_eq!(modp(5).enumerate_finite(4).unwrap().len(), 16);
        assert!(cont(5).enumerate_finite(4).is_err());
        let all = modp(5).enumerate_finite(4).unwrap();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn torus_operations_on_gl2() {
        let rd = builtin("GL2").unwrap();
        let w = WeylGroup::new(&rd).unwrap();
        let g = cont(5);
        let (e1, e2) = (g.unramified_symbol("a"), g.unramified_symbol("b"));
        let chi = TorusCharacter::new(g, vec![e1.clone(), e2.clone()]).unwrap();
        assert!(chi.mul(&chi.inv()).unwrap().is_trivial());
        assert!(chi.pullback_cochar(&[0, 0]).is_trivial());
        assert_eq!(chi.pullback_cochar(&[1, -1]), g.mul(&e1, &g.inv(&e2)));
        let s = w.simple_reflection(0).unwrap();
        assert_eq!(chi.weyl_twist(&w, s).coords(), &[e2.clone(), e1.clone()]);
        assert_eq!(chi.weyl_twist(&w, w.identity()), chi);
        assert_eq!(chi.reflect(&rd, 0).unwrap(), chi.weyl_twist(&w, s));
        let eta = g.unramified_symbol("h");
        let t = TorusCharacter::trivial(g, 2).twist_by_root_char(&eta, &[1, -1]);
        assert_eq!(t.coords(), &[eta.clone(), g.inv(&eta)]);
        assert!(TorusCharacter::new(g, vec![e1.clone(), e1.clone()])
            .unwrap()
            .is_l_character(&rd, &[0])
            .unwrap());
        assert!(!TorusCharacter::new(g, vec![e1, g.trivial()])
            .unwrap()
            .is_l_character(&rd, &[0])
            .unwrap());
        assert!(TorusCharacter::trivial(g, 2)
            .is_l_character(&rd, &[0])
            .unwrap());
    }

    #[test]
    fn sl2_root_twist_squares() {
        let rd = builtin("SL2").unwrap();
        let g = cont(5);
        let eta = g.unramified_symbol("h");
        let t = TorusCharacter::trivial(g, 1).twist_by_root_char(&eta, rd.simple_root(0).unwrap());
        assert_eq!(t.coords(), &[g.pow(&eta, 2)]);
    }

    #[test]
    fn weyl_twist_composition_on_gl3() {
        let rd = builtin("GL3").unwrap();
        let w = WeylGroup::new(&rd).unwrap();
        let g = cont(7);
        let chi = TorusCharacter::new(
            g,
            vec![
                g.unramified_symbol("a"),
                g.parse("teich^2").unwrap(),
                g.wild_symbol("z"),
            ],
        )
        .unwrap();
        let (s1, s2) = (
            w.simple_reflection(0).unwrap(),
            w.simple_reflection(1).unwrap(),
        );
        let s1s2 = w.multiply(s1, s2);
        assert_eq!(
            chi.weyl_twist(&w, s1s2),
            chi.weyl_twist(&w, s2).weyl_twist(&w, s1)
        );
    }

    #[test]
    fn mismatched_groups() {
        let a = TorusCharacter::trivial(cont(5), 2);
        let b = TorusCharacter::trivial(modp(5), 2);
        let c = TorusCharacter::trivial(cont(7), 2);
        assert_eq!(a.mul(&b).unwrap_err(), Error::ModeMismatch);
        assert_eq!(a.try_eq(&c).unwrap_err(), Error::FieldMismatch);
        assert_eq!(
            a.mul(&TorusCharacter::trivial(cont(5), 3)).unwrap_err(),
            Error::ModeMismatch
        );
    }
}
