//! Typed fixtures and their loaders. Loading is all-or-nothing: the first
//! schema or invariant violation aborts the load with a descriptive error
//! naming the offending record. Wire formats are documented in
//! docs/formats.md.

use crate::FixtureError;
use e6_core::omega::{InfChar, Involution};
use e6_core::rat::{parse_rat, Rat};
use e6_core::root_datum::KTypeWeight;
use e6_core::spin::BranchList;
use e6_core::weyl::WeylElement;
use e6_core::Engine;
use num::{BigInt, Zero};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::Path;

fn read(path: &Path) -> Result<String, FixtureError> {
    std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_rat_list(s: &str, n: usize, path: &str, record: &str) -> Result<Vec<Rat>, FixtureError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(FixtureError::invariant(
            path,
            record,
            format!("expected {n} comma-separated rationals, got {}", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|p| {
            parse_rat(p).ok_or_else(|| {
                FixtureError::invariant(path, record, format!("bad rational {p:?}"))
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Involution fixture

#[derive(Deserialize)]
struct RawInvolution {
    kgb_index: u32,
    support: Vec<usize>,
    /// 8×8 rational matrix, row-major, entries as "p" or "p/q" strings.
    matrix: Vec<String>,
}

pub fn load_involutions(engine: &Engine, path: &Path) -> Result<Vec<Involution>, FixtureError> {
    let text = read(path)?;
    let pstr = path.display().to_string();
    let raw: Vec<RawInvolution> =
        serde_json::from_str(&text).map_err(|source| FixtureError::Json {
            path: pstr.clone(),
            source,
        })?;
    if raw.is_empty() {
        return Err(FixtureError::schema(&pstr, "no involutions"));
    }
    let mut out = Vec::with_capacity(raw.len());
    for r in raw {
        let record = format!("kgb_index {}", r.kgb_index);
        if r.matrix.len() != 64 {
            return Err(FixtureError::invariant(
                &pstr,
                &record,
                format!("matrix must have 64 entries, got {}", r.matrix.len()),
            ));
        }
        let mut m = [[Rat::zero(); 8]; 8];
        for (k, entry) in r.matrix.iter().enumerate() {
            m[k / 8][k % 8] = parse_rat(entry).ok_or_else(|| {
                FixtureError::invariant(&pstr, &record, format!("bad matrix entry {entry:?}"))
            })?;
        }
        let matrix = WeylElement::from_rational(&m).ok_or_else(|| {
            FixtureError::invariant(&pstr, &record, "matrix entries must be quarter-integers")
        })?;
        let inv = Involution {
            kgb_index: r.kgb_index,
            support: r.support.iter().copied().collect::<BTreeSet<usize>>(),
            matrix,
        };
        inv.validate(engine)
            .map_err(|e| FixtureError::invariant(&pstr, &record, e.to_string()))?;
        out.push(inv);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Scattered / integral parameter tables

#[derive(Debug, Clone)]
pub struct ScatteredRow {
    pub x: u32,
    pub lambda: [Rat; 6],
    pub nu: [Rat; 6],
    pub infchar: InfChar,
    pub spin_lkts: Vec<KTypeWeight>,
}

#[derive(Debug, Clone)]
pub struct FsIntegralRow {
    pub x: u32,
    pub lambda: [Rat; 6],
    pub nu: [Rat; 6],
    pub infchar: InfChar,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_param_fields<'a>(
    fields: &[&'a str],
    want: usize,
    pstr: &str,
    record: &str,
) -> Result<(u32, [Rat; 6], [Rat; 6], InfChar), FixtureError> {
    if fields.len() != want {
        return Err(FixtureError::invariant(
            pstr,
            record,
            format!("expected {want} tab-separated fields, got {}", fields.len()),
        ));
    }
    let x: u32 = fields[0]
        .parse()
        .map_err(|_| FixtureError::invariant(pstr, record, "bad index field"))?;
    let lambda: [Rat; 6] = parse_rat_list(fields[1], 6, pstr, record)?
        .try_into()
        .unwrap();
    let nu: [Rat; 6] = parse_rat_list(fields[2], 6, pstr, record)?
        .try_into()
        .unwrap();
    let infchar = InfChar::parse_bracket(fields[3])
        .ok_or_else(|| FixtureError::invariant(pstr, record, "bad infinitesimal character"))?;
    Ok((x, lambda, nu, infchar))
}

pub fn load_scattered(engine: &Engine, path: &Path) -> Result<Vec<ScatteredRow>, FixtureError> {
    let text = read(path)?;
    let pstr = path.display().to_string();
    let mut rows = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let record = format!("line {lineno}");
        let fields: Vec<&str> = line.split('\t').collect();
        let (x, lambda, nu, infchar) = parse_param_fields(&fields, 5, &pstr, &record)?;
        let mut spin_lkts = Vec::new();
        for part in fields[4].split(';') {
            let mu = KTypeWeight::parse_bracket(part).ok_or_else(|| {
                FixtureError::invariant(&pstr, &record, format!("bad K-type {part:?}"))
            })?;
            if !engine.datum.is_ktype_weight(&mu) {
                return Err(FixtureError::invariant(
                    &pstr,
                    &record,
                    format!("{part:?} is not a valid K-type highest weight"),
                ));
            }
            spin_lkts.push(mu);
        }
        if spin_lkts.is_empty() {
            return Err(FixtureError::invariant(&pstr, &record, "no spin LKTs"));
        }
        rows.push(ScatteredRow {
            x,
            lambda,
            nu,
            infchar,
            spin_lkts,
        });
    }
    if rows.is_empty() {
        return Err(FixtureError::schema(&pstr, "no rows"));
    }
    Ok(rows)
}

pub fn load_fs_integral(path: &Path) -> Result<Vec<FsIntegralRow>, FixtureError> {
    let text = read(path)?;
    let pstr = path.display().to_string();
    let mut rows = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let record = format!("line {lineno}");
        let fields: Vec<&str> = line.split('\t').collect();
        let (x, lambda, nu, infchar) = parse_param_fields(&fields, 4, &pstr, &record)?;
        rows.push(FsIntegralRow {
            x,
            lambda,
            nu,
            infchar,
        });
    }
    if rows.is_empty() {
        return Err(FixtureError::schema(&pstr, "no rows"));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Tempered rows: affine maps Z^6 -> K-type weight plus constraint DSL

/// Affine-linear expression in the six parameters a..f.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: [i64; 6],
    pub constant: i64,
}

impl Affine {
    pub fn eval(&self, p: &[i64; 6]) -> i64 {
        self.constant + self.coeffs.iter().zip(p.iter()).map(|(c, v)| c * v).sum::<i64>()
    }

    /// Parse e.g. "a+2c+e-f+3" or "-2a-3b-4c-6d-5e-4f-24".
    pub fn parse(s: &str) -> Option<Affine> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut coeffs = [0i64; 6];
        let mut constant = 0i64;
        let mut chars = s.chars().peekable();
        let mut sign = 1i64;
        if chars.peek() == Some(&'-') {
            sign = -1;
            chars.next();
        } else if chars.peek() == Some(&'+') {
            chars.next();
        }
        loop {
            // one term: [digits][var] | digits
            let mut digits = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                digits.push(chars.next().unwrap());
            }
            let magnitude: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().ok()?
            };
            match chars.peek() {
                Some(&v @ 'a'..='f') => {
                    chars.next();
                    coeffs[(v as u8 - b'a') as usize] += sign * magnitude;
                }
                _ => {
                    if digits.is_empty() {
                        return None;
                    }
                    constant += sign * magnitude;
                }
            }
            match chars.next() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(_) => return None,
            }
        }
        Some(Affine { coeffs, constant })
    }
}

/// One atomic constraint of a tempered row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// expr >= 1
    AtLeastOne(Affine),
    /// variable = 0
    ZeroVar(usize),
}

impl Atom {
    pub fn holds(&self, p: &[i64; 6]) -> bool {
        match self {
            Atom::AtLeastOne(a) => a.eval(p) >= 1,
            Atom::ZeroVar(i) => p[*i] == 0,
        }
    }

    fn parse(s: &str) -> Option<Atom> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((lhs, rhs)) = s.split_once(">=") {
            if rhs != "1" {
                return None;
            }
            return Some(Atom::AtLeastOne(Affine::parse(lhs)?));
        }
        if let Some((lhs, rhs)) = s.split_once('=') {
            if rhs != "0" || lhs.len() != 1 {
                return None;
            }
            let v = lhs.bytes().next()?;
            if !(b'a'..=b'f').contains(&v) {
                return None;
            }
            return Some(Atom::ZeroVar((v - b'a') as usize));
        }
        None
    }
}

#[derive(Debug, Clone)]
pub struct TemperedRow {
    pub x: u32,
    pub mu_formula: [Affine; 6],
    /// Disjunction of conjunctions.
    pub constraints: Vec<Vec<Atom>>,
}

impl TemperedRow {
    pub fn constraints_hold(&self, p: &[i64; 6]) -> bool {
        self.constraints
            .iter()
            .any(|conj| conj.iter().all(|a| a.holds(p)))
    }

    pub fn mu(&self, p: &[i64; 6]) -> KTypeWeight {
        KTypeWeight::from_i64(std::array::from_fn(|i| self.mu_formula[i].eval(p)))
    }
}

pub fn load_tempered(path: &Path) -> Result<Vec<TemperedRow>, FixtureError> {
    let text = read(path)?;
    let pstr = path.display().to_string();
    let mut rows = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let record = format!("line {lineno}");
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(FixtureError::invariant(
                &pstr,
                &record,
                "expected `x | formula | constraints`",
            ));
        }
        let x: u32 = fields[0]
            .parse()
            .map_err(|_| FixtureError::invariant(&pstr, &record, "bad index field"))?;
        let exprs: Vec<Affine> = fields[1]
            .split(',')
            .map(|e| {
                Affine::parse(e).ok_or_else(|| {
                    FixtureError::invariant(&pstr, &record, format!("ambiguous expression {e:?}"))
                })
            })
            .collect::<Result<_, _>>()?;
        let mu_formula: [Affine; 6] = exprs.try_into().map_err(|_| {
            FixtureError::invariant(&pstr, &record, "formula must have six expressions")
        })?;
        // Everything after the first `|` separator that follows the formula
        // is the constraint field; "||" inside it separates alternatives.
        let constraint_text = fields[2..].join("|");
        let mut constraints = Vec::new();
        for group in constraint_text.split("||") {
            let group = group.trim();
            let group = group.strip_prefix("or").map(str::trim).unwrap_or(group);
            let atoms: Vec<Atom> = group
                .split(',')
                .map(|a| {
                    Atom::parse(a).ok_or_else(|| {
                        FixtureError::invariant(
                            &pstr,
                            &record,
                            format!("ambiguous constraint {a:?}"),
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            constraints.push(atoms);
        }
        rows.push(TemperedRow {
            x,
            mu_formula,
            constraints,
        });
    }
    if rows.is_empty() {
        return Err(FixtureError::schema(&pstr, "no rows"));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Branching fixtures

#[derive(Deserialize)]
struct RawBranchEntry {
    weight: String,
    multiplicity: u64,
    /// Optional cross-checks recorded by the exporter. Dimensions are
    /// decimal strings since they can exceed 64 bits.
    dim: Option<String>,
    height: Option<i64>,
}

#[derive(Deserialize)]
struct RawSourceParameter {
    x: u32,
    lambda: [String; 6],
    nu: [String; 6],
}

#[derive(Deserialize)]
struct RawBranch {
    height_bound: i64,
    source_parameter: Option<RawSourceParameter>,
    ktypes: Vec<RawBranchEntry>,
}

pub fn load_branch(engine: &Engine, path: &Path) -> Result<BranchList, FixtureError> {
    let text = read(path)?;
    let pstr = path.display().to_string();
    let raw: RawBranch = serde_json::from_str(&text).map_err(|source| FixtureError::Json {
        path: pstr.clone(),
        source,
    })?;
    let mut ktypes = Vec::with_capacity(raw.ktypes.len());
    for e in &raw.ktypes {
        let record = e.weight.clone();
        let mu = KTypeWeight::parse_bracket(&e.weight)
            .ok_or_else(|| FixtureError::invariant(&pstr, &record, "bad K-type weight"))?;
        if !engine.datum.is_ktype_weight(&mu) {
            return Err(FixtureError::invariant(
                &pstr,
                &record,
                "not a valid K-type highest weight",
            ));
        }
        if let Some(dim_str) = &e.dim {
            let dim: BigInt = dim_str
                .parse()
                .map_err(|_| FixtureError::invariant(&pstr, &record, "bad dim field"))?;
            let actual = engine
                .datum
                .dim_ktype(&mu)
                .map_err(|err| FixtureError::invariant(&pstr, &record, err.to_string()))?;
            if actual != dim {
                return Err(FixtureError::invariant(
                    &pstr,
                    &record,
                    format!("recorded dim {dim} but computed {actual}"),
                ));
            }
        }
        if let Some(height) = e.height {
            let actual = engine.lambda_stats(&mu).height;
            if actual != height {
                return Err(FixtureError::invariant(
                    &pstr,
                    &record,
                    format!("recorded height {height} but computed {actual}"),
                ));
            }
        }
        ktypes.push((mu, e.multiplicity));
    }
    let source_parameter = match raw.source_parameter {
        None => None,
        Some(sp) => {
            let conv = |a: &[String; 6], what: &str| -> Result<[Rat; 6], FixtureError> {
                let v: Vec<Rat> = a
                    .iter()
                    .map(|s| {
                        parse_rat(s).ok_or_else(|| {
                            FixtureError::invariant(&pstr, what, format!("bad rational {s:?}"))
                        })
                    })
                    .collect::<Result<_, _>>()?;
                Ok(v.try_into().unwrap())
            };
            Some((
                sp.x,
                conv(&sp.lambda, "source lambda")?,
                conv(&sp.nu, "source nu")?,
            ))
        }
    };
    Ok(BranchList {
        ktypes,
        height_bound: raw.height_bound,
        source_parameter,
    })
}

// ---------------------------------------------------------------------------
// Dirac-inequality failure fixture

#[derive(Debug, Clone)]
pub struct FailureFixture {
    pub infchar: InfChar,
    pub lkts: Vec<KTypeWeight>,
}

#[derive(Deserialize)]
struct RawFailure {
    infchar: String,
    lkts: Vec<String>,
    /// Raw exporter coordinates, retained for provenance only.
    #[allow(dead_code)]
    exporter_coords: Option<Vec<Vec<i64>>>,
}

pub fn load_failure(engine: &Engine, path: &Path) -> Result<FailureFixture, FixtureError> {
    let text = read(path)?;
    let pstr = path.display().to_string();
    let raw: RawFailure = serde_json::from_str(&text).map_err(|source| FixtureError::Json {
        path: pstr.clone(),
        source,
    })?;
    let infchar = InfChar::parse_bracket(&raw.infchar)
        .ok_or_else(|| FixtureError::schema(&pstr, "bad infinitesimal character"))?;
    let mut lkts = Vec::new();
    for s in &raw.lkts {
        let mu = KTypeWeight::parse_bracket(s)
            .ok_or_else(|| FixtureError::invariant(&pstr, s.clone(), "bad K-type weight"))?;
        if !engine.datum.is_ktype_weight(&mu) {
            return Err(FixtureError::invariant(
                &pstr,
                s.clone(),
                "not a valid K-type highest weight",
            ));
        }
        lkts.push(mu);
    }
    Ok(FailureFixture { infchar, lkts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_parser() {
        let a = Affine::parse("a+2c+e-f+3").unwrap();
        assert_eq!(a.coeffs, [1, 0, 2, 0, 1, -1]);
        assert_eq!(a.constant, 3);
        assert_eq!(a.eval(&[1, 1, 1, 1, 1, 1]), 6);
        let b = Affine::parse("-2a-3b-4c-6d-5e-4f-24").unwrap();
        assert_eq!(b.coeffs, [-2, -3, -4, -6, -5, -4]);
        assert_eq!(b.constant, -24);
        assert_eq!(Affine::parse("4a").unwrap().coeffs[0], 4);
        assert!(Affine::parse("").is_none());
        assert!(Affine::parse("a+").is_none());
        assert!(Affine::parse("2g").is_none());
    }

    #[test]
    fn atom_parser() {
        assert_eq!(
            Atom::parse("c+d>=1"),
            Some(Atom::AtLeastOne(Affine::parse("c+d").unwrap()))
        );
        assert_eq!(Atom::parse("d=0"), Some(Atom::ZeroVar(3)));
        assert!(Atom::parse("c+d>=2").is_none());
        assert!(Atom::parse("g=0").is_none());
    }
}
