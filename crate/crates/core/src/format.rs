//! Text grammar and versioned JSON for polynomials, Drinfeld data and reports.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cartan::CartanData;
use crate::characters::{CharacterReport, Decomposition, KernelWitness};
use crate::drinfeld::DrinfeldTuple;
use crate::error::{Error, Result};
use crate::params::{Mode, RootOfUnityData, SpectralParameter};
use crate::ypoly::{Var, YMonomial, YPolynomial};

pub const SCHEMA: &str = "qchar/1";

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_factor(text: &str, mode: Mode) -> Result<(Var, i64)> {
    let t = text.trim();
    let body = t
        .strip_prefix("Y[")
        .ok_or_else(|| perr(format!("expected `Y[...]` in `{t}`")))?;
    let close = body
        .find(']')
        .ok_or_else(|| perr(format!("missing `]` in `{t}`")))?;
    let inner = &body[..close];
    let rest = body[close + 1..].trim();
    let e = if rest.is_empty() {
        1
    } else {
        let x = rest
            .strip_prefix('^')
            .ok_or_else(|| perr(format!("unexpected `{rest}` after `{}`", &t[..close + 3])))?
            .trim();
        let x = x
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .unwrap_or(x);
        x.trim()
            .parse::<i64>()
            .map_err(|_| perr(format!("bad exponent `{x}`")))?
    };
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let (node, param) = match parts.as_slice() {
        [i, base, k] => {
            let k: i64 = k.parse().map_err(|_| perr(format!("bad exponent of eps `{k}`")))?;
            (*i, crate::params::parse_param(&format!("{base}@{k}"), mode)?)
        }
        [i, p] => (*i, crate::params::parse_param(p, mode)?),
        _ => return Err(perr(format!("expected `Y[i,base,k]`, got `{t}`"))),
    };
    let node: usize = node.parse().map_err(|_| perr(format!("bad node `{node}`")))?;
    if node == 0 {
        return Err(perr("nodes are numbered from 1"));
    }
    Ok((Var::new(node - 1, param), e))
}

/// `Y[i,base,k]^e` factors joined by `*`; `1` is the empty monomial.
pub fn parse_monomial(text: &str, mode: Mode) -> Result<YMonomial> {
    let t = text.trim();
    if t == "1" {
        return Ok(YMonomial::one());
    }
    if t.is_empty() {
        return Err(perr("empty monomial"));
    }
    let factors = t
        .split('*')
        .map(|f| parse_factor(f, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(YMonomial::from_factors(factors))
}

/// Splits at top-level `+`/`-` that are not exponent signs.
fn split_terms(text: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev = ' ';
    for ch in text.chars() {
        match ch {
            '[' | '{' => depth += 1,
            ']' | '}' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && prev != '^' {
            if !cur.trim().is_empty() {
                out.push((negative, cur.trim().to_string()));
            }
            cur.clear();
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    if !cur.trim().is_empty() {
        out.push((negative, cur.trim().to_string()));
    }
    out
}

/// `c1*m1 + c2*m2 - ...`; `0` is the zero polynomial.
pub fn parse_polynomial(text: &str, mode: Mode) -> Result<YPolynomial> {
    let t = text.trim();
    if t == "0" {
        return Ok(YPolynomial::zero(mode));
    }
    if t.is_empty() {
        return Err(perr("empty polynomial"));
    }
    let mut terms = Vec::new();
    for (neg, term) in split_terms(t) {
        let (coeff, mono) = match term.split_once('*') {
            Some((c, rest)) if c.trim().parse::<BigInt>().is_ok() => {
                (c.trim().parse::<BigInt>().expect("checked"), rest.to_string())
            }
            _ => match term.parse::<BigInt>() {
                Ok(c) => (c, "1".to_string()),
                Err(_) => (BigInt::from(1), term.clone()),
            },
        };
        let coeff = if neg { -coeff } else { coeff };
        terms.push((parse_monomial(&mono, mode)?, coeff));
    }
    YPolynomial::from_terms(mode, terms)
}

pub fn mode_to_json(mode: Mode) -> Value {
    match mode {
        Mode::Generic => json!("generic"),
        Mode::RootOfUnity(s) => json!({ "s": s }),
    }
}

pub fn mode_from_json(v: &Value) -> Result<Mode> {
    match v {
        Value::String(s) => s.parse(),
        Value::Object(o) => {
            let s = o
                .get("s")
                .and_then(Value::as_i64)
                .ok_or_else(|| perr("mode object needs an integer `s`"))?;
            Mode::root_of_unity(s)
        }
        _ => Err(perr("mode must be \"generic\" or {\"s\": N}")),
    }
}

fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| perr(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| perr(format!("bad coefficient `{s}`"))),
        _ => Err(perr("coefficient must be an integer or a decimal string")),
    }
}

pub fn monomial_to_json(m: &YMonomial) -> Value {
    Value::Array(
        m.factors()
            .iter()
            .map(|(v, e)| {
                json!({
                    "i": v.node + 1,
                    "base": v.param.base(),
                    "k": v.param.k(),
                    "e": e,
                })
            })
            .collect(),
    )
}

pub fn monomial_from_json(v: &Value, mode: Mode) -> Result<YMonomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr("factors must be an array"))?;
    let mut factors = Vec::new();
    for f in arr {
        let i = f
            .get("i")
            .and_then(Value::as_u64)
            .ok_or_else(|| perr("factor needs a positive integer `i`"))?;
        if i == 0 {
            return Err(perr("nodes are numbered from 1"));
        }
        let base = f
            .get("base")
            .and_then(Value::as_str)
            .ok_or_else(|| perr("factor needs a string `base`"))?;
        let k = f
            .get("k")
            .and_then(Value::as_i64)
            .ok_or_else(|| perr("factor needs an integer `k`"))?;
        let e = f.get("e").map_or(Some(1), Value::as_i64).ok_or_else(|| perr("bad `e`"))?;
        let p = crate::params::parse_param(&format!("{base}@{k}"), mode)?;
        factors.push((Var::new(i as usize - 1, p), e));
    }
    Ok(YMonomial::from_factors(factors))
}

pub fn polynomial_to_json(p: &YPolynomial) -> Value {
    json!({
        "schema": SCHEMA,
        "mode": mode_to_json(p.mode()),
        "terms": p.terms().map(|(m, c)| json!({
            "coeff": bigint_to_json(c),
            "factors": monomial_to_json(m),
        })).collect::<Vec<_>>(),
    })
}

fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => Err(perr(format!("unsupported schema {other}"))),
    }
}

/// Reads a polynomial document; a report document is accepted through its `character`.
pub fn polynomial_from_json(v: &Value) -> Result<YPolynomial> {
    check_schema(v)?;
    if let Some(ch) = v.get("character") {
        return polynomial_from_json(ch);
    }
    let mode = mode_from_json(v.get("mode").ok_or_else(|| perr("missing `mode`"))?)?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("missing `terms` array"))?;
    let mut out = Vec::new();
    for t in terms {
        let c = bigint_from_json(t.get("coeff").ok_or_else(|| perr("term needs `coeff`"))?)?;
        let m = monomial_from_json(t.get("factors").unwrap_or(&json!([])), mode)?;
        out.push((m, c));
    }
    YPolynomial::from_terms(mode, out)
}

pub fn drinfeld_to_json(d: &DrinfeldTuple) -> Value {
    json!({
        "mode": mode_to_json(d.mode()),
        "text": d.to_string(),
        "roots": (0..d.rank()).map(|i| d.roots(i).iter().map(|(p, m)| json!({
            "base": p.base(), "k": p.k(), "mult": m,
        })).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn param_to_json(p: &SpectralParameter) -> Value {
    json!({ "base": p.base(), "k": p.k() })
}

pub fn report_to_json(r: &CharacterReport) -> Value {
    let mut o = Map::new();
    o.insert("schema".into(), json!(SCHEMA));
    o.insert("status".into(), json!(r.status.to_string()));
    o.insert("highest_monomial".into(), json!(r.highest_monomial.to_string()));
    o.insert("monomials".into(), json!(r.character.len()));
    o.insert("dimension".into(), bigint_to_json(&r.character.total_mass()));
    o.insert(
        "certificates".into(),
        Value::Array(
            r.certificates
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect(),
        ),
    );
    o.insert("iterations".into(), json!(r.iterations));
    if let Some(n) = &r.note {
        o.insert("note".into(), json!(n));
    }
    o.insert("text".into(), json!(r.character.to_string()));
    o.insert("character".into(), polynomial_to_json(&r.character));
    Value::Object(o)
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    json!({
        "schema": SCHEMA,
        "constituents": d.constituents.iter().map(|c| json!({
            "drinfeld": drinfeld_to_json(&c.drinfeld),
            "highest_monomial": c.highest_monomial.to_string(),
            "multiplicity": bigint_to_json(&c.multiplicity),
        })).collect::<Vec<_>>(),
    })
}

pub fn kernel_witness_to_json(w: &KernelWitness) -> Value {
    json!({
        "node": w.node + 1,
        "member": w.member,
        "nonnegative": w.is_nonnegative(),
        "decomposition": w.decomposition.iter().map(|(m, c)| json!({
            "top": m.to_string(), "coeff": bigint_to_json(c),
        })).collect::<Vec<_>>(),
    })
}

pub fn lattice_to_json(r: &RootOfUnityData) -> Value {
    json!({
        "schema": SCHEMA,
        "s": r.s,
        "l": r.l,
        "l_i": r.l_per_node,
        "eps_i_order": (0..r.r.len()).map(|i| r.eps_i_order(i)).collect::<Vec<_>>(),
        "eps_star": r.eps_star.value(),
        "coprime": r.coprime_flag,
    })
}

pub fn cartan_to_json(cd: &CartanData) -> Value {
    json!({
        "schema": SCHEMA,
        "type": cd.lie_type.to_string(),
        "rank": cd.rank,
        "cartan_matrix": cd.cartan_matrix,
        "r": cd.r,
        "r_vee": cd.r_vee,
        "o": cd.o_sign,
        "psi": cd.psi_sign,
        "theta": cd.theta,
    })
}

pub fn param_json(p: &SpectralParameter) -> Value {
    param_to_json(p)
}
