//! The character ring `Z[Y_{i,p}^{±1}]` and the ring maps used on it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::params::{Mode, RootOfUnityData, SpectralParameter};

/// The variable `Y_{node, param}` (node zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub node: usize,
    pub param: SpectralParameter,
}

impl Var {
    pub fn new(node: usize, param: SpectralParameter) -> Self {
        Var { node, param }
    }
}

/// Laurent monomial: sorted factors, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YMonomial {
    factors: Vec<(Var, i64)>,
}

impl YMonomial {
    pub fn one() -> Self {
        YMonomial::default()
    }

    pub fn var(node: usize, param: SpectralParameter) -> Self {
        Self::var_pow(node, param, 1)
    }

    pub fn var_pow(node: usize, param: SpectralParameter, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        YMonomial {
            factors: vec![(Var::new(node, param), e)],
        }
    }

    pub fn from_factors<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (Var, i64)>,
    {
        let mut map: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        YMonomial {
            factors: map.into_iter().filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Var, i64)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, node: usize, param: &SpectralParameter) -> i64 {
        self.factors
            .iter()
            .find(|(v, _)| v.node == node && &v.param == param)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        YMonomial { factors: out }
    }

    pub fn inv(&self) -> YMonomial {
        self.pow(-1)
    }

    pub fn pow(&self, e: i64) -> YMonomial {
        if e == 0 {
            return YMonomial::one();
        }
        YMonomial {
            factors: self.factors.iter().map(|(v, x)| (v.clone(), x * e)).collect(),
        }
    }

    pub fn div(&self, other: &YMonomial) -> YMonomial {
        self.mul(&other.inv())
    }

    /// No negative exponents.
    pub fn is_dominant(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e > 0)
    }

    /// No negative exponents at node `i`.
    pub fn is_i_dominant(&self, i: usize) -> bool {
        self.factors.iter().all(|(v, e)| v.node != i || *e > 0)
    }

    /// Sum of the exponents at node `i`.
    pub fn i_weight(&self, i: usize) -> i64 {
        self.factors
            .iter()
            .filter(|(v, _)| v.node == i)
            .map(|(_, e)| e)
            .sum()
    }

    /// The image under `Y_{i,p} -> y_i`, as an exponent vector.
    pub fn weight(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0; rank];
        for (v, e) in &self.factors {
            if v.node < rank {
                w[v.node] += e;
            }
        }
        w
    }

    /// Parameters and exponents at node `i`.
    pub fn node_part(&self, i: usize) -> Vec<(SpectralParameter, i64)> {
        self.factors
            .iter()
            .filter(|(v, _)| v.node == i)
            .map(|(v, e)| (v.param.clone(), *e))
            .collect()
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> YMonomial {
        YMonomial {
            factors: self
                .factors
                .iter()
                .filter(|(v, _)| keep(v.node))
                .cloned()
                .collect(),
        }
    }

    /// Applies `f` to every variable, re-normalizing.
    pub fn map_vars(&self, f: impl Fn(&Var) -> Var) -> YMonomial {
        YMonomial::from_factors(self.factors.iter().map(|(v, e)| (f(v), *e)))
    }

    pub fn shift(&self, d: i64) -> YMonomial {
        self.map_vars(|v| Var::new(v.node, v.param.shift(d)))
    }

    pub fn max_node(&self) -> Option<usize> {
        self.factors.iter().map(|(v, _)| v.node).max()
    }

    pub fn modes(&self) -> BTreeSet<Mode> {
        self.factors.iter().map(|(v, _)| v.param.mode()).collect()
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.factors.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            write!(f, "Y[{},{},{}]", v.node + 1, v.param.base(), v.param.k())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `is_dominant` as a free function.
pub fn is_dominant(m: &YMonomial) -> bool {
    m.is_dominant()
}

/// Integer-coefficient Laurent polynomial in the `Y` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YPolynomial {
    mode: Mode,
    terms: BTreeMap<YMonomial, BigInt>,
}

impl YPolynomial {
    pub fn zero(mode: Mode) -> Self {
        YPolynomial {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_monomial(YMonomial::one(), mode)
    }

    pub fn constant(c: impl Into<BigInt>, mode: Mode) -> Self {
        let mut p = Self::zero(mode);
        p.add_term(YMonomial::one(), c.into());
        p
    }

    pub fn from_monomial(m: YMonomial, mode: Mode) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        YPolynomial { mode, terms }
    }

    /// Builds a polynomial, checking every parameter against `mode`.
    pub fn from_terms<I>(mode: Mode, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (YMonomial, BigInt)>,
    {
        let mut p = Self::zero(mode);
        for (m, c) in terms {
            if let Some(bad) = m.modes().into_iter().find(|&x| x != mode) {
                return Err(Error::ModeMismatch {
                    left: mode,
                    right: bad,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &YMonomial> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &YMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: YMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_mode(&self, other: &YPolynomial) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            })
        }
    }

    pub fn add(&self, other: &YPolynomial) -> Result<YPolynomial> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &YPolynomial) -> Result<YPolynomial> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> YPolynomial {
        let mut out = YPolynomial::zero(self.mode);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), c * d);
        }
        out
    }

    pub fn mul(&self, other: &YPolynomial) -> Result<YPolynomial> {
        self.check_mode(other)?;
        let mut out = YPolynomial::zero(self.mode);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> YPolynomial {
        let mut out = YPolynomial::one(self.mode);
        for _ in 0..e {
            out = out.mul(self).expect("same mode");
        }
        out
    }

    /// Sum of coefficients.
    pub fn total_mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn dominant_monomials(&self) -> Vec<&YMonomial> {
        self.terms.keys().filter(|m| m.is_dominant()).collect()
    }

    /// Applies a monomial map to every term and re-collects.
    pub fn map_monomials(&self, mode: Mode, f: impl Fn(&YMonomial) -> YMonomial) -> YPolynomial {
        let mut out = YPolynomial::zero(mode);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Exact product of two polynomials of the same mode.
pub fn poly_mul(p: &YPolynomial, q: &YPolynomial) -> Result<YPolynomial> {
    p.mul(q)
}

/// `A_{i,p}`: the monomial attached to the simple root `alpha_i` at `p`.
pub fn a_monomial(i: usize, p: &SpectralParameter, cd: &CartanData) -> Result<YMonomial> {
    cd.check_node(i)?;
    let ri = cd.r[i] as i64;
    let mut factors = vec![
        (Var::new(i, p.shift(-ri)), 1),
        (Var::new(i, p.shift(ri)), 1),
    ];
    for j in cd.nodes() {
        if j == i {
            continue;
        }
        let shifts: &[i64] = match cd.cartan_matrix[j][i] {
            0 => &[],
            -1 => &[0],
            -2 => &[-1, 1],
            -3 => &[-2, 0, 2],
            other => {
                return Err(Error::Internal(format!("unexpected Cartan entry {other}")));
            }
        };
        for &d in shifts {
            factors.push((Var::new(j, p.shift(d)), -1));
        }
    }
    Ok(YMonomial::from_factors(factors))
}

/// `bold Y_{i,p} = prod_{j < l_i} Y_{i, p eps_i^{2j}}`.
pub fn bold_y(i: usize, p: &SpectralParameter, r: &RootOfUnityData) -> YMonomial {
    let step = r.step(i);
    YMonomial::from_factors(
        (0..r.l_i(i) as i64).map(|j| (Var::new(i, p.shift(step * j)), 1)),
    )
}

/// Laurent polynomial in `y_1..y_rank` (the target of the weight map).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPolynomial {
    pub rank: usize,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl WeightPolynomial {
    pub fn zero(rank: usize) -> Self {
        WeightPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, w: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn mul(&self, other: &WeightPolynomial) -> WeightPolynomial {
        let mut out = WeightPolynomial::zero(self.rank);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let w = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(w, c * d);
            }
        }
        out
    }

    /// `y_i -> y_i^k` for every node.
    pub fn dilate(&self, k: i64) -> WeightPolynomial {
        let mut out = WeightPolynomial::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(|x| x * k).collect(), c.clone());
        }
        out
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*y^{w:?}")?;
        }
        Ok(())
    }
}

/// `beta`: collapses every spectral parameter, `Y_{i,p} -> y_i`.
pub fn weight_map(p: &YPolynomial, cd: &CartanData) -> WeightPolynomial {
    let mut out = WeightPolynomial::zero(cd.rank);
    for (m, c) in p.terms() {
        out.add_term(m.weight(cd.rank), c.clone());
    }
    out
}

/// `beta_J`: kills the variables at nodes outside `nodes`.
pub fn restrict_nodes(p: &YPolynomial, nodes: &[usize]) -> YPolynomial {
    let keep: BTreeSet<usize> = nodes.iter().copied().collect();
    p.map_monomials(p.mode(), |m| m.restrict(|i| keep.contains(&i)))
}

/// Pullback along `tau_{eps^d}`: every parameter multiplied by `eps^d`.
pub fn tau_shift(p: &YPolynomial, d: i64) -> YPolynomial {
    p.map_monomials(p.mode(), |m| m.shift(d))
}

/// Canonical representative of the image in `Z[Y] / (bold Y_{i,b} - 1)`:
/// per node and `eps^2`-orbit, the exponent pattern is shifted so its minimum is 0.
pub fn pi_reduce(p: &YPolynomial, r: &RootOfUnityData) -> Result<YPolynomial> {
    r.require_coprime()?;
    if p.mode() != r.mode() {
        return Err(Error::ModeMismatch {
            left: p.mode(),
            right: r.mode(),
        });
    }
    Ok(p.map_monomials(p.mode(), |m| pi_reduce_monomial(m, r)))
}

fn pi_reduce_monomial(m: &YMonomial, r: &RootOfUnityData) -> YMonomial {
    let s = r.s as i64;
    let l = r.l as i64;
    let classes = if s % 2 == 0 { 2 } else { 1 };
    // (node, base, class) -> exponents indexed by position j in p = base * eps^(class + 2j)
    let mut orbits: BTreeMap<(usize, String, i64), Vec<i64>> = BTreeMap::new();
    let mode = r.mode();
    for (v, e) in m.factors() {
        let k = v.param.k();
        let class = k.rem_euclid(classes);
        let pos = if classes == 2 {
            (k - class) / 2
        } else {
            // s odd: eps^2 generates Z/s; solve 2j = k mod s.
            (k * ((s + 1) / 2)).rem_euclid(s)
        };
        let entry = orbits
            .entry((v.node, v.param.base().to_string(), class))
            .or_insert_with(|| vec![0; l as usize]);
        entry[pos as usize] += e;
    }
    let mut factors = Vec::new();
    for ((node, base, class), exps) in orbits {
        let min = *exps.iter().min().expect("l >= 1");
        for (j, e) in exps.iter().enumerate() {
            let e = e - min;
            if e != 0 {
                let p = SpectralParameter::new(&base, class + 2 * j as i64, mode);
                factors.push((Var::new(node, p), e));
            }
        }
    }
    YMonomial::from_factors(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, LieType};
    use crate::params::lattice_data;

    fn y(node: usize, base: &str, k: i64, mode: Mode) -> YMonomial {
        YMonomial::var(node - 1, SpectralParameter::new(base, k, mode))
    }

    fn poly(mode: Mode, terms: &[(i64, YMonomial)]) -> YPolynomial {
        YPolynomial::from_terms(mode, terms.iter().map(|(c, m)| (m.clone(), BigInt::from(*c))))
            .unwrap()
    }

    #[test]
    fn binomial_square() {
        let g = Mode::Generic;
        let a0 = y(1, "a", 0, g);
        let a2inv = y(1, "a", 2, g).inv();
        let p = poly(g, &[(1, a0.clone()), (1, a2inv.clone())]);
        let sq = poly_mul(&p, &p).unwrap();
        let expected = poly(
            g,
            &[
                (1, a0.pow(2)),
                (2, a0.mul(&a2inv)),
                (1, a2inv.pow(2)),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(poly_mul(&p, &YPolynomial::one(g)).unwrap(), p);
    }

    #[test]
    fn exponents_reduce_mod_s() {
        let m = Mode::RootOfUnity(3);
        let p = YPolynomial::from_monomial(y(1, "a", 2, m), m);
        let q = YPolynomial::from_monomial(y(1, "a", 5, m), m);
        assert_eq!(
            poly_mul(&p, &q).unwrap(),
            YPolynomial::from_monomial(y(1, "a", 2, m).pow(2), m)
        );
        let g = YPolynomial::one(Mode::Generic);
        assert!(matches!(poly_mul(&p, &g), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn a_monomials() {
        let g = Mode::Generic;
        let p = SpectralParameter::generic("a", 0);
        let a1 = build_cartan(LieType::A, 1).unwrap();
        assert_eq!(
            a_monomial(0, &p, &a1).unwrap(),
            y(1, "a", -1, g).mul(&y(1, "a", 1, g))
        );
        let a2 = build_cartan(LieType::A, 2).unwrap();
        assert_eq!(
            a_monomial(0, &p, &a2).unwrap(),
            y(1, "a", -1, g).mul(&y(1, "a", 1, g)).mul(&y(2, "a", 0, g).inv())
        );
        let b2 = build_cartan(LieType::B, 2).unwrap();
        let expected = y(1, "a", -2, g)
            .mul(&y(1, "a", 2, g))
            .mul(&y(2, "a", -1, g).inv())
            .mul(&y(2, "a", 1, g).inv());
        assert_eq!(a_monomial(0, &p, &b2).unwrap(), expected);
        assert!(a_monomial(2, &p, &b2).is_err());
    }

    #[test]
    fn a_monomial_weight_is_simple_root() {
        for (t, n) in crate::cartan::all_types_up_to(4) {
            let cd = build_cartan(t, n).unwrap();
            for i in cd.nodes() {
                let a = a_monomial(i, &SpectralParameter::generic("b", 3), &cd).unwrap();
                assert_eq!(a.weight(n), cd.simple_root(i).0, "{t}{n} node {i}");
            }
        }
    }

    #[test]
    fn weight_map_examples() {
        let g = Mode::Generic;
        let a2 = build_cartan(LieType::A, 2).unwrap();
        let p = YPolynomial::from_monomial(y(1, "a", 0, g).mul(&y(1, "b", 3, g)), g);
        let w = weight_map(&p, &a2);
        assert_eq!(w.terms.get(&vec![2, 0]), Some(&BigInt::one()));
        let a = a_monomial(0, &SpectralParameter::generic("a", 0), &a2).unwrap();
        let w = weight_map(&YPolynomial::from_monomial(a, g), &a2);
        assert_eq!(w.terms.keys().collect::<Vec<_>>(), vec![&vec![2, -1]]);
        let w = weight_map(&YPolynomial::one(g), &a2);
        assert_eq!(w.terms.get(&vec![0, 0]), Some(&BigInt::one()));
    }

    #[test]
    fn restriction_examples() {
        let g = Mode::Generic;
        let p = poly(
            g,
            &[
                (1, y(1, "a", 0, g)),
                (1, y(1, "a", 2, g).inv().mul(&y(2, "a", 1, g))),
                (1, y(2, "a", 3, g).inv()),
            ],
        );
        let expected = poly(
            g,
            &[
                (1, y(1, "a", 0, g)),
                (1, y(1, "a", 2, g).inv()),
                (1, YMonomial::one()),
            ],
        );
        assert_eq!(restrict_nodes(&p, &[0]), expected);
        assert_eq!(restrict_nodes(&p, &[0, 1]), p);
        assert_eq!(restrict_nodes(&p, &[]), YPolynomial::constant(3, g));
    }

    #[test]
    fn tau_examples() {
        let m = Mode::RootOfUnity(6);
        let p = YPolynomial::from_monomial(y(1, "a", 5, m), m);
        assert_eq!(tau_shift(&p, 0), p);
        assert_eq!(
            tau_shift(&p, 2),
            YPolynomial::from_monomial(y(1, "a", 1, m), m)
        );
        assert_eq!(tau_shift(&p, 6), p);
    }

    #[test]
    fn dominance() {
        let g = Mode::Generic;
        assert!(is_dominant(&y(1, "a", 0, g).mul(&y(2, "b", 1, g))));
        assert!(!is_dominant(&y(1, "a", 0, g).mul(&y(1, "a", 2, g).inv())));
        assert!(is_dominant(&YMonomial::one()));
    }

    #[test]
    fn pi_examples() {
        let a1 = build_cartan(LieType::A, 1).unwrap();
        let r = lattice_data(3, &a1).unwrap();
        let m = r.mode();
        let full = y(1, "a", 0, m).mul(&y(1, "a", 2, m)).mul(&y(1, "a", 4, m));
        assert_eq!(
            pi_reduce(&YPolynomial::from_monomial(full, m), &r).unwrap(),
            YPolynomial::one(m)
        );
        let single = YPolynomial::from_monomial(y(1, "a", 0, m), m);
        assert_eq!(pi_reduce(&single, &r).unwrap(), single);
        let inv = YPolynomial::from_monomial(y(1, "a", 0, m).inv(), m);
        assert_eq!(
            pi_reduce(&inv, &r).unwrap(),
            YPolynomial::from_monomial(y(1, "a", 1, m).mul(&y(1, "a", 2, m)), m)
        );
        // even s: two orbits per base, reduced independently
        let r6 = lattice_data(6, &a1).unwrap();
        let m6 = r6.mode();
        let odd = bold_y(0, &SpectralParameter::new("a", 1, m6), &r6);
        let p = YPolynomial::from_monomial(odd.mul(&y(1, "a", 0, m6)), m6);
        assert_eq!(
            pi_reduce(&p, &r6).unwrap(),
            YPolynomial::from_monomial(y(1, "a", 0, m6), m6)
        );
        let b2 = build_cartan(LieType::B, 2).unwrap();
        let r8 = lattice_data(8, &b2).unwrap();
        assert_eq!(pi_reduce(&YPolynomial::one(r8.mode()), &r8), Err(Error::TwistedTarget));
    }

    #[test]
    fn display_grammar() {
        let g = Mode::Generic;
        let p = poly(
            g,
            &[(2, y(1, "a", 0, g).pow(2)), (-1, y(2, "b", -1, g).inv()), (3, YMonomial::one())],
        );
        assert_eq!(p.to_string(), "3 + 2*Y[1,a,0]^2 - Y[2,b,-1]^-1");
        assert_eq!(YPolynomial::zero(g).to_string(), "0");
    }
}
