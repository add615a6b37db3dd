//! Builtin root data: `GL_n`, `SL_n`, `PGL_n`, `Sp_2n`, the block group
//! `ExampleCard(n)` and products of these.

use super::RootDatum;
use crate::error::{Error, Result};

fn unit(r: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = c;
    v
}

fn diff(r: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v[j] = -1;
    v
}

/// Cartan matrix of type `A_{n-1}`.
fn cartan_a(k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

pub fn gl(n: usize) -> Result<RootDatum> {
    if n < 1 {
        return Err(Error::UnknownName(format!("GL{n}")));
    }
    let roots: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
    Ok(RootDatum::new(n, roots.clone(), roots)?.with_name(format!("GL{n}")))
}

/// Simply connected: coroots are the standard basis of `X^∨`, roots are the
/// columns of the Cartan matrix in the fundamental-weight basis.
pub fn sl(n: usize) -> Result<RootDatum> {
    if n < 2 {
        return Err(Error::UnknownName(format!("SL{n}")));
    }
    let k = n - 1;
    let c = cartan_a(k);
    let roots = (0..k).map(|j| (0..k).map(|i| c[i][j]).collect()).collect();
    let coroots = (0..k).map(|i| unit(k, i, 1)).collect();
    Ok(RootDatum::new(k, roots, coroots)?.with_name(format!("SL{n}")))
}

/// Adjoint: roots are the standard basis of `X`.
pub fn pgl(n: usize) -> Result<RootDatum> {
    if n < 2 {
        return Err(Error::UnknownName(format!("PGL{n}")));
    }
    let k = n - 1;
    let c = cartan_a(k);
    let roots = (0..k).map(|i| unit(k, i, 1)).collect();
    let coroots = (0..k).map(|j| c[j].clone()).collect();
    Ok(RootDatum::new(k, roots, coroots)?.with_name(format!("PGL{n}")))
}

/// `Sp_{2m}` on `X = Z^m`: `e_i - e_{i+1}` and `2 e_m`.
pub fn sp(two_m: usize) -> Result<RootDatum> {
    if two_m < 2 || !two_m.is_multiple_of(2) {
        return Err(Error::UnknownName(format!("Sp{two_m}")));
    }
    let m = two_m / 2;
    let mut roots: Vec<_> = (0..m - 1).map(|i| diff(m, i, i + 1)).collect();
    let mut coroots = roots.clone();
    roots.push(unit(m, m - 1, 2));
    coroots.push(unit(m, m - 1, 1));
    Ok(RootDatum::new(m, roots, coroots)?.with_name(format!("Sp{two_m}")))
}

/// Block-diagonal `GL_2^n ⊂ GL_{2n}` cut out by `det(g_k) det(g_{k+1}) = 1`.
///
/// Cocharacters `λ ∈ Z^{2n}` satisfy `λ_{2k-1} + λ_{2k} = (-1)^{k-1} t` for a
/// common `t`, so a basis is `v = Σ_k (-1)^{k-1} e_{2k-1}` followed by the
/// coroots `e_{2k-1} - e_{2k}`.
pub fn example_card(n: usize) -> Result<RootDatum> {
    if n < 1 {
        return Err(Error::UnknownName(format!("ExampleCard({n})")));
    }
    let m = 2 * n;
    let mut basis = vec![vec![0; m]];
    for k in 0..n {
        basis[0][2 * k] = if k % 2 == 0 { 1 } else { -1 };
    }
    for k in 0..n {
        basis.push(diff(m, 2 * k, 2 * k + 1));
    }
    let r = n + 1;
    let roots = (0..n)
        .map(|k| {
            let ambient = diff(m, 2 * k, 2 * k + 1);
            basis.iter().map(|b| super::dot(b, &ambient)).collect()
        })
        .collect();
    let coroots = (0..n).map(|k| unit(r, k + 1, 1)).collect();
    Ok(RootDatum::new(r, roots, coroots)?
        .with_name(format!("ExampleCard({n})"))
        .with_ambient(basis))
}

fn parse_factor(s: &str) -> Result<(RootDatum, usize)> {
    let unknown = || Error::UnknownName(s.to_string());
    for (prefix, ctor) in [
        (
            "ExampleCard",
            example_card as fn(usize) -> Result<RootDatum>,
        ),
        ("PGL", pgl),
        ("GL", gl),
        ("SL", sl),
        ("Sp", sp),
    ] {
        let Some(rest) = s.strip_prefix(prefix) else {
            continue;
        };
        let bytes = rest.as_bytes();
        let (mut i, close) = match bytes.first() {
            Some(b'(') => (1, true),
            Some(b'_') => (1, false),
            _ => (0, false),
        };
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return Err(unknown());
        }
        let n: usize = rest[start..i].parse().map_err(|_| unknown())?;
        if close {
            if bytes.get(i) != Some(&b')') {
                return Err(unknown());
            }
            i += 1;
        }
        let rd = ctor(n).map_err(|_| unknown())?;
        return Ok((rd, prefix.len() + i));
    }
    Err(unknown())
}

/// Looks up a builtin root datum by name, e.g. `GL3`, `SL_2`, `Sp4`,
/// `ExampleCard(3)` or a product such as `GL2xSL2` (separators `x`, `×`, `*`).
pub fn builtin(name: &str) -> Result<RootDatum> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut acc: Option<RootDatum> = None;
    loop {
        let (rd, used) = parse_factor(rest).map_err(|_| Error::UnknownName(name.to_string()))?;
        acc = Some(match acc {
            None => rd,
            Some(a) => a.product(&rd),
        });
        rest = &rest[used..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix('x')
            .or_else(|| rest.strip_prefix('×'))
            .or_else(|| rest.strip_prefix('*'))
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    }
    Ok(acc.expect("at least one factor"))
}
