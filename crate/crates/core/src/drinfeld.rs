//! Drinfeld data as root multisets, acyclicity, the `P = P0 P1` splitting and
//! the eigenvalue rational functions.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::params::{parse_param, Mode, RootOfUnityData, SpectralParameter};
use crate::ypoly::{Var, YMonomial};

/// Multiset of roots: `P(u) = prod (1 - p u)^mult`.
pub type RootMultiset = BTreeMap<SpectralParameter, u32>;

/// One root multiset per node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DrinfeldTuple {
    mode: Mode,
    roots: Vec<RootMultiset>,
}

impl DrinfeldTuple {
    pub fn trivial(rank: usize, mode: Mode) -> Self {
        DrinfeldTuple {
            mode,
            roots: vec![BTreeMap::new(); rank],
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self, i: usize) -> &RootMultiset {
        &self.roots[i]
    }

    pub fn add_root(&mut self, i: usize, p: SpectralParameter, mult: u32) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::NodeOutOfRange {
                node: i,
                rank: self.rank(),
            });
        }
        if p.mode() != self.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: p.mode(),
            });
        }
        if mult > 0 {
            *self.roots[i].entry(p).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Removes one copy of each listed root; returns false if one is missing.
    fn remove_roots(&mut self, i: usize, ps: &[SpectralParameter]) -> bool {
        for p in ps {
            match self.roots[i].get_mut(p) {
                Some(m) if *m > 0 => {
                    *m -= 1;
                    if *m == 0 {
                        self.roots[i].remove(p);
                    }
                }
                _ => return false,
            }
        }
        true
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.roots[i].values().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.roots.iter().all(|r| r.is_empty())
    }

    /// Multiset sum (Drinfeld data of a tensor product's head).
    pub fn union(&self, other: &DrinfeldTuple) -> Result<DrinfeldTuple> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            });
        }
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let mut out = self.clone();
        for (i, rs) in other.roots.iter().enumerate() {
            for (p, m) in rs {
                out.add_root(i, p.clone(), *m)?;
            }
        }
        Ok(out)
    }

    pub fn map_params(
        &self,
        mode: Mode,
        f: impl Fn(usize, &SpectralParameter) -> SpectralParameter,
    ) -> DrinfeldTuple {
        let mut out = DrinfeldTuple::trivial(self.rank(), mode);
        for (i, rs) in self.roots.iter().enumerate() {
            for (p, m) in rs {
                *out.roots[i].entry(f(i, p)).or_insert(0) += m;
            }
        }
        out
    }
}

impl fmt::Display for DrinfeldTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rs) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}:", i + 1)?;
            for (n, (p, m)) in rs.iter().enumerate() {
                if n > 0 {
                    write!(f, ",")?;
                }
                write!(f, "({p})")?;
                if *m != 1 {
                    write!(f, "^{m}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses `1:(a@0),(c@0)^2; 2:` (nodes 1-based, omitted nodes trivial).
pub fn parse_drinfeld(text: &str, rank: usize, mode: Mode) -> Result<DrinfeldTuple> {
    let mut d = DrinfeldTuple::trivial(rank, mode);
    for chunk in text.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (node, rest) = chunk
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `node: roots` in `{chunk}`")))?;
        let node: usize = node
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad node index `{}`", node.trim())))?;
        if node == 0 || node > rank {
            return Err(Error::NodeOutOfRange { node, rank });
        }
        for item in rest.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (body, mult) = match item.rsplit_once('^') {
                Some((b, m)) if b.ends_with(')') => {
                    let m: u32 = m
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in `{item}`")))?;
                    (b, m)
                }
                _ => (item, 1),
            };
            let body = body.trim();
            let inner = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(body);
            let p = parse_param(inner.trim(), mode)?;
            d.add_root(node - 1, p, mult)?;
        }
    }
    Ok(d)
}

/// Dominant monomial to Drinfeld data: exponent of `Y_{i,p}` = multiplicity of `p`.
pub fn monomial_to_drinfeld(m: &YMonomial, rank: usize, mode: Mode) -> Result<DrinfeldTuple> {
    if !m.is_dominant() {
        return Err(Error::NotDominant(m.to_string()));
    }
    let mut d = DrinfeldTuple::trivial(rank, mode);
    for (v, e) in m.factors() {
        d.add_root(v.node, v.param.clone(), *e as u32)?;
    }
    Ok(d)
}

pub fn drinfeld_to_monomial(d: &DrinfeldTuple) -> YMonomial {
    YMonomial::from_factors(d.roots.iter().enumerate().flat_map(|(i, rs)| {
        rs.iter()
            .map(move |(p, m)| (Var::new(i, p.clone()), *m as i64))
    }))
}

/// The `eps_i^2`-string of length `l_i` through `p`.
pub fn orbit(p: &SpectralParameter, l_i: u32, step: i64) -> Vec<SpectralParameter> {
    (0..l_i as i64).map(|j| p.shift(step * j)).collect()
}

fn full_orbit_at(roots: &RootMultiset, l_i: u32, step: i64) -> Option<Vec<SpectralParameter>> {
    roots.keys().find_map(|p| {
        let o = orbit(p, l_i, step);
        o.iter().all(|q| roots.contains_key(q)).then_some(o)
    })
}

/// True iff no full `eps_i^2`-orbit is contained in `roots`.
pub fn is_l_acyclic(roots: &RootMultiset, l_i: u32, step: i64) -> bool {
    if roots.keys().any(|p| p.mode() == Mode::Generic) {
        return true;
    }
    full_orbit_at(roots, l_i, step).is_none()
}

/// `D = D0 * D1` with `D0` acyclic and `D1` a union of full orbits.
pub fn split_drinfeld(
    d: &DrinfeldTuple,
    r: &RootOfUnityData,
) -> Result<(DrinfeldTuple, DrinfeldTuple)> {
    r.require_coprime()?;
    if d.mode() != r.mode() {
        return Err(Error::ModeMismatch {
            left: d.mode(),
            right: r.mode(),
        });
    }
    let mut d0 = d.clone();
    let mut d1 = DrinfeldTuple::trivial(d.rank(), d.mode());
    for i in 0..d.rank() {
        while let Some(o) = full_orbit_at(&d0.roots[i], r.l_i(i), r.step(i)) {
            if !d0.remove_roots(i, &o) {
                return Err(Error::Internal("orbit removal failed".into()));
            }
            for p in o {
                d1.add_root(i, p, 1)?;
            }
        }
    }
    Ok((d0, d1))
}

/// Full orbits of `d1` per node, each given by its member with the least exponent.
pub fn orbit_representatives(
    d1: &DrinfeldTuple,
    r: &RootOfUnityData,
) -> Result<Vec<(usize, SpectralParameter)>> {
    let mut out = Vec::new();
    for i in 0..d1.rank() {
        let mut rest = d1.clone();
        while let Some(o) = full_orbit_at(&rest.roots[i], r.l_i(i), r.step(i)) {
            rest.remove_roots(i, &o);
            let rep = o
                .iter()
                .min_by_key(|p| p.k())
                .cloned()
                .expect("orbit nonempty");
            out.push((i, rep));
        }
        if !rest.roots[i].is_empty() {
            return Err(Error::Internal(format!(
                "node {} of periodic part is not a union of full orbits",
                i + 1
            )));
        }
    }
    Ok(out)
}

/// `sign * eps^eps_exp * prod(1 - p u) / prod(1 - q u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalEigenvalue {
    pub mode: Mode,
    pub numerator: RootMultiset,
    pub denominator: RootMultiset,
    pub sign: i8,
    pub eps_exp: i64,
}

impl RationalEigenvalue {
    pub fn one(mode: Mode) -> Self {
        RationalEigenvalue {
            mode,
            numerator: BTreeMap::new(),
            denominator: BTreeMap::new(),
            sign: 1,
            eps_exp: 0,
        }
    }

    fn canonical(mut self) -> Self {
        let common: Vec<(SpectralParameter, u32)> = self
            .numerator
            .iter()
            .filter_map(|(p, m)| self.denominator.get(p).map(|n| (p.clone(), *m.min(n))))
            .collect();
        for (p, c) in common {
            for side in [&mut self.numerator, &mut self.denominator] {
                let e = side.get_mut(&p).expect("present");
                *e -= c;
                if *e == 0 {
                    side.remove(&p);
                }
            }
        }
        self.eps_exp = self.mode.reduce(self.eps_exp);
        self
    }

    pub fn is_one(&self) -> bool {
        self.numerator.is_empty()
            && self.denominator.is_empty()
            && self.sign == 1
            && self.eps_exp == 0
    }

    /// True when the root part (ignoring the scalar) is 1.
    pub fn root_part_is_one(&self) -> bool {
        self.numerator.is_empty() && self.denominator.is_empty()
    }

    pub fn mul(&self, other: &RationalEigenvalue) -> RationalEigenvalue {
        let mut out = self.clone();
        for (p, m) in &other.numerator {
            *out.numerator.entry(p.clone()).or_insert(0) += m;
        }
        for (p, m) in &other.denominator {
            *out.denominator.entry(p.clone()).or_insert(0) += m;
        }
        out.sign *= other.sign;
        out.eps_exp += other.eps_exp;
        out.canonical()
    }

    /// The function `u -> f(u eps^d)`: every root shifted by `d`.
    pub fn substitute_shift(&self, d: i64) -> RationalEigenvalue {
        let shift = |rs: &RootMultiset| rs.iter().map(|(p, m)| (p.shift(d), *m)).collect();
        RationalEigenvalue {
            mode: self.mode,
            numerator: shift(&self.numerator),
            denominator: shift(&self.denominator),
            sign: self.sign,
            eps_exp: self.eps_exp,
        }
        .canonical()
    }

    /// Drops the scalar factor.
    pub fn normalized(&self) -> RationalEigenvalue {
        RationalEigenvalue {
            sign: 1,
            eps_exp: 0,
            ..self.clone()
        }
    }
}

impl fmt::Display for RationalEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |rs: &RootMultiset| -> String {
            if rs.is_empty() {
                return "1".into();
            }
            rs.iter()
                .map(|(p, m)| {
                    if *m == 1 {
                        format!("(1-[{p}]u)")
                    } else {
                        format!("(1-[{p}]u)^{m}")
                    }
                })
                .collect::<Vec<_>>()
                .join("")
        };
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.eps_exp != 0 {
            write!(f, "eps^{}*", self.eps_exp)?;
        }
        write!(f, "{}", side(&self.numerator))?;
        if !self.denominator.is_empty() {
            write!(f, "/{}", side(&self.denominator))?;
        }
        Ok(())
    }
}

/// `Psi_i = gamma eps_i^{deg P} P(u eps_i^{-1}) / P(u eps_i)`.
pub fn psi_from_drinfeld(
    roots: &RootMultiset,
    i: usize,
    r: &RootOfUnityData,
    gamma: i8,
) -> Result<RationalEigenvalue> {
    if gamma != 1 && gamma != -1 {
        return Err(Error::Parse(format!("gamma must be +1 or -1, got {gamma}")));
    }
    if gamma == -1 && r.eps_i_order(i).is_odd() {
        return Err(Error::InvalidGamma { node: i + 1 });
    }
    let ri = r.r[i] as i64;
    let deg: u32 = roots.values().sum();
    let shift = |d: i64| roots.iter().map(|(p, m)| (p.shift(d), *m)).collect();
    Ok(RationalEigenvalue {
        mode: r.mode(),
        numerator: shift(-ri),
        denominator: shift(ri),
        sign: gamma,
        eps_exp: ri * deg as i64,
    }
    .canonical())
}

/// `prod_{j < l_i} f(u eps_i^{2j})`.
pub fn proper_product(f: &RationalEigenvalue, i: usize, r: &RootOfUnityData) -> RationalEigenvalue {
    (0..r.l_i(i) as i64).fold(RationalEigenvalue::one(f.mode), |acc, j| {
        acc.mul(&f.substitute_shift(r.step(i) * j))
    })
}

/// `Gamma_i^+` of a monomial and the exponent of its `k_i`-eigenvalue.
pub fn gamma_from_monomial(m: &YMonomial, i: usize, mode: Mode) -> (RationalEigenvalue, i64) {
    let mut g = RationalEigenvalue::one(mode);
    let mut k = 0;
    for (p, e) in m.node_part(i) {
        k += e;
        let side = if e > 0 {
            &mut g.numerator
        } else {
            &mut g.denominator
        };
        *side.entry(p).or_insert(0) += e.unsigned_abs() as u32;
    }
    (g, k)
}
