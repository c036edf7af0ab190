//! q- and eps-characters: sl2 strings, the FM closure, specialization,
//! screening-kernel certification and Grothendieck decomposition.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cartan::{build_cartan, weight_leq, CartanData, LieType, WeightVector};
use crate::classical::{irr_epschar, Strategy};
use crate::drinfeld::{monomial_to_drinfeld, orbit, DrinfeldTuple};
use crate::error::{Error, Result};
use crate::params::{lattice_data, Mode, RootOfUnityData, SpectralParameter};
use crate::ypoly::{a_monomial, weight_map, YMonomial, YPolynomial};

pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Certified,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Certified => write!(f, "certified"),
            Status::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Certificate {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Certificate {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterReport {
    pub character: YPolynomial,
    pub highest_monomial: YMonomial,
    pub status: Status,
    pub certificates: Vec<Certificate>,
    /// Monomial expansions performed (FM runs only).
    pub iterations: usize,
    pub note: Option<String>,
}

impl CharacterReport {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    pub(crate) fn finish(mut self) -> Self {
        let ok = self.certificates.iter().all(|c| c.passed) && self.note.is_none();
        self.status = if ok {
            Status::Certified
        } else {
            Status::Inconclusive
        };
        self
    }
}

/// A local sl2 character written as `m * sum_t coeff_t * prod_{c in list_t} A_{i,c}^{-1}`.
pub(crate) type AForm = Vec<(BigInt, Vec<SpectralParameter>)>;

fn string_a_form(a: &SpectralParameter, k: u32, r: i64) -> AForm {
    let mut out = vec![(BigInt::one(), Vec::new())];
    let mut list = Vec::new();
    for j in 1..=k as i64 {
        list.push(a.shift(r * (2 * (k as i64 - j) + 1)));
        out.push((BigInt::one(), list.clone()));
    }
    out
}

/// `m` stacked full orbits through `a`: the pullback of the `(m+1)`-dimensional
/// evaluation module, `sum_j boldY^{m-2j}`.
fn orbit_a_form(a: &SpectralParameter, mult: u32, r: i64, l_i: u32) -> AForm {
    let block: Vec<SpectralParameter> = (0..l_i as i64).map(|j| a.shift(r * (2 * j + 1))).collect();
    (0..=mult as usize)
        .map(|j| (BigInt::one(), block.iter().cycle().take(j * block.len()).cloned().collect()))
        .collect()
}

fn a_form_product(left: AForm, right: AForm) -> AForm {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for (c, l) in &left {
        for (d, m) in &right {
            let mut list = l.clone();
            list.extend(m.iter().cloned());
            out.push((c * d, list));
        }
    }
    out
}

/// Splits an `i`-part into stacked full orbits (root-of-unity mode only) and
/// maximal strings, longest first.
pub(crate) fn segment_decomposition(
    part: &[(SpectralParameter, i64)],
    step: i64,
    l_i: Option<u32>,
) -> (Vec<(SpectralParameter, u32)>, Vec<(SpectralParameter, u32)>) {
    let mut counts: BTreeMap<SpectralParameter, u32> = BTreeMap::new();
    for (p, e) in part {
        if *e > 0 {
            *counts.entry(p.clone()).or_insert(0) += *e as u32;
        }
    }
    let remove = |counts: &mut BTreeMap<SpectralParameter, u32>, p: &SpectralParameter, n: u32| {
        let c = counts.get_mut(p).expect("present");
        *c -= n;
        if *c == 0 {
            counts.remove(p);
        }
    };
    let mut orbits = Vec::new();
    if let Some(l) = l_i {
        let keys: Vec<SpectralParameter> = counts.keys().cloned().collect();
        for p in keys {
            let o = orbit(&p, l, step);
            let n = o.iter().map(|q| counts.get(q).copied().unwrap_or(0)).min().unwrap_or(0);
            if n > 0 {
                for q in &o {
                    remove(&mut counts, q, n);
                }
                let rep = o.iter().min_by_key(|q| q.k()).cloned().expect("nonempty");
                orbits.push((rep, n));
            }
        }
    }
    let cap = l_i.map_or(u32::MAX, |l| l.saturating_sub(1).max(1));
    let mut strings = Vec::new();
    while !counts.is_empty() {
        let mut best: Option<(u32, SpectralParameter)> = None;
        for p in counts.keys() {
            let mut len = 1;
            while len < cap && counts.contains_key(&p.shift(step * len as i64)) {
                len += 1;
            }
            if best.as_ref().map_or(true, |(b, _)| len > *b) {
                best = Some((len, p.clone()));
            }
        }
        let (len, start) = best.expect("nonempty");
        for j in 0..len as i64 {
            remove(&mut counts, &start.shift(step * j), 1);
        }
        strings.push((start, len));
    }
    (orbits, strings)
}

/// Root-of-unity data when `mode` needs it.
pub(crate) fn lattice_for(mode: Mode, cd: &CartanData) -> Result<Option<RootOfUnityData>> {
    match mode {
        Mode::Generic => Ok(None),
        Mode::RootOfUnity(s) => lattice_data(s as i64, cd).map(Some),
    }
}

/// Monomial lifter with cached `A^{-1}`.
pub(crate) struct Lifter<'a> {
    cd: &'a CartanData,
    lattice: Option<RootOfUnityData>,
    cache: HashMap<(usize, SpectralParameter), YMonomial>,
}

impl<'a> Lifter<'a> {
    pub(crate) fn new(cd: &'a CartanData, mode: Mode) -> Result<Self> {
        Ok(Lifter {
            cd,
            lattice: lattice_for(mode, cd)?,
            cache: HashMap::new(),
        })
    }

    fn a_inv(&mut self, i: usize, c: &SpectralParameter) -> Result<YMonomial> {
        if let Some(m) = self.cache.get(&(i, c.clone())) {
            return Ok(m.clone());
        }
        let m = a_monomial(i, c, self.cd)?.inv();
        self.cache.insert((i, c.clone()), m.clone());
        Ok(m)
    }

    /// The irreducible local sl2 character at node `i` with top monomial `m`.
    pub(crate) fn local_a_form(&self, m: &YMonomial, i: usize) -> AForm {
        let r = self.cd.r[i] as i64;
        let l_i = self.lattice.as_ref().map(|x| x.l_i(i));
        let (orbits, strings) = segment_decomposition(&m.node_part(i), 2 * r, l_i);
        let mut form: AForm = vec![(BigInt::one(), Vec::new())];
        for (a, n) in orbits {
            form = a_form_product(form, orbit_a_form(&a, n, r, l_i.expect("orbits need l")));
        }
        for (a, k) in strings {
            form = a_form_product(form, string_a_form(&a, k, r));
        }
        form
    }

    /// `L_i(m)` as monomials with coefficients and depths (number of `A^{-1}`).
    pub(crate) fn local_terms(
        &mut self,
        m: &YMonomial,
        i: usize,
    ) -> Result<BTreeMap<YMonomial, (BigInt, usize)>> {
        let mut out: BTreeMap<YMonomial, (BigInt, usize)> = BTreeMap::new();
        for (c, list) in self.local_a_form(m, i) {
            let mut n = m.clone();
            for p in &list {
                n = n.mul(&self.a_inv(i, p)?);
            }
            let e = out.entry(n).or_insert((BigInt::zero(), list.len()));
            e.0 += c;
        }
        out.retain(|_, (c, _)| !c.is_zero());
        Ok(out)
    }

    pub(crate) fn local_char(&mut self, m: &YMonomial, i: usize, mode: Mode) -> Result<YPolynomial> {
        let terms = self.local_terms(m, i)?;
        YPolynomial::from_terms(mode, terms.into_iter().map(|(n, (c, _))| (n, c)))
    }
}

fn a1() -> CartanData {
    build_cartan(LieType::A, 1).expect("A1 is valid")
}

/// The sl2 string character of length `k` starting at `a`.
pub fn sl2_string_char(a: &SpectralParameter, k: u32) -> Result<YPolynomial> {
    let mode = a.mode();
    if let Mode::RootOfUnity(s) = mode {
        let l = if s % 2 == 1 { s } else { s / 2 };
        if k >= l {
            return Err(Error::WrongMode(format!(
                "a string of length {k} >= l = {l} is not an irreducible character at s = {s}"
            )));
        }
    }
    let cd = a1();
    let top = YMonomial::from_factors(
        (0..k as i64).map(|m| (crate::ypoly::Var::new(0, a.shift(2 * m)), 1)),
    );
    let mut lifter = Lifter {
        cd: &cd,
        lattice: None,
        cache: HashMap::new(),
    };
    let mut out = YPolynomial::zero(mode);
    for (c, list) in string_a_form(a, k, 1) {
        let mut n = top.clone();
        for p in &list {
            n = n.mul(&lifter.a_inv(0, p)?);
        }
        out.add_term(n, c);
    }
    Ok(out)
}

/// Result of a screening-kernel membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelWitness {
    pub node: usize,
    pub member: bool,
    /// `P = sum coeff * L_i(m)` when `member`.
    pub decomposition: Vec<(YMonomial, BigInt)>,
    /// What was left when the greedy subtraction got stuck.
    pub residue: Option<YPolynomial>,
}

impl KernelWitness {
    pub fn is_nonnegative(&self) -> bool {
        self.decomposition.iter().all(|(_, c)| !c.is_negative())
    }
}

/// Decides `P in K_i` by greedy subtraction of local sl2 characters.
pub fn kernel_membership(p: &YPolynomial, i: usize, cd: &CartanData) -> Result<KernelWitness> {
    cd.check_node(i)?;
    let mut lifter = Lifter::new(cd, p.mode())?;
    let mut rest = p.clone();
    let mut decomposition = Vec::new();
    while !rest.is_zero() {
        let top_weight = rest
            .monomials()
            .map(|m| m.i_weight(i))
            .max()
            .expect("nonzero");
        let (m, c) = rest
            .terms()
            .find(|(m, _)| m.i_weight(i) == top_weight)
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("exists");
        if !m.is_i_dominant(i) {
            return Ok(KernelWitness {
                node: i,
                member: false,
                decomposition,
                residue: Some(rest),
            });
        }
        let local = lifter.local_char(&m, i, p.mode())?;
        rest = rest.sub(&local.scale(&c))?;
        decomposition.push((m, c));
    }
    Ok(KernelWitness {
        node: i,
        member: true,
        decomposition,
        residue: None,
    })
}

/// `2 * height(lambda)`: the largest number of `A^{-1}` a weight of `V(lambda)` can carry.
fn depth_bound(lambda: &WeightVector, cd: &CartanData) -> Result<usize> {
    let n = cd.weight_to_root_coords(lambda)?;
    let h: num_rational::Ratio<i64> = n.iter().sum();
    Ok((h * 2).floor().to_integer().max(0) as usize)
}

fn check_mode_of_monomial(m: &YMonomial, mode: Mode) -> Result<()> {
    match m.modes().into_iter().find(|&x| x != mode) {
        Some(bad) => Err(Error::ModeMismatch {
            left: mode,
            right: bad,
        }),
        None => Ok(()),
    }
}

struct FmEntry {
    depth: usize,
    colored: Vec<BigInt>,
}

/// The FM closure starting from `m_plus`.
pub fn fm_qcharacter(
    m_plus: &YMonomial,
    cd: &CartanData,
    mode: Mode,
    max_iterations: usize,
) -> Result<CharacterReport> {
    if !m_plus.is_dominant() {
        return Err(Error::NotDominant(m_plus.to_string()));
    }
    if let Some(n) = m_plus.max_node() {
        cd.check_node(n)?;
    }
    check_mode_of_monomial(m_plus, mode)?;
    if let Mode::RootOfUnity(s) = mode {
        if s <= 2 {
            return Err(Error::WrongMode(format!(
                "direct closure at a root of unity needs s > 2 (got s = {s})"
            )));
        }
    }
    let rank = cd.rank;
    let lambda = WeightVector(m_plus.weight(rank));
    let bound = depth_bound(&lambda, cd)?;
    let mut lifter = Lifter::new(cd, mode)?;

    let mut entries: HashMap<YMonomial, FmEntry> = HashMap::new();
    let mut layers: BTreeMap<usize, BTreeSet<YMonomial>> = BTreeMap::new();
    entries.insert(
        m_plus.clone(),
        FmEntry {
            depth: 0,
            colored: vec![BigInt::zero(); rank],
        },
    );
    layers.entry(0).or_default().insert(m_plus.clone());

    let mut character = YPolynomial::zero(mode);
    let mut iterations = 0usize;
    let mut note = None;

    'outer: while let Some((depth, layer)) = layers.pop_first() {
        for m in layer {
            iterations += 1;
            if iterations > max_iterations {
                note = Some(format!("iteration limit {max_iterations} exceeded"));
                break 'outer;
            }
            let colored = entries[&m].colored.clone();
            let s = if m == *m_plus {
                BigInt::one()
            } else {
                colored.iter().max().cloned().unwrap_or_default()
            };
            if m != *m_plus && m.is_dominant() {
                note = Some(format!("closure produced a second dominant monomial {m}"));
                character.add_term(m, s);
                break 'outer;
            }
            character.add_term(m.clone(), s.clone());
            for i in 0..rank {
                if !m.is_i_dominant(i) {
                    if colored[i] != s {
                        note = Some(format!(
                            "monomial {m} is not {}-dominant but its node-{} coloring is incomplete",
                            i + 1,
                            i + 1
                        ));
                        break 'outer;
                    }
                    continue;
                }
                let delta = &s - &colored[i];
                if delta.is_zero() {
                    continue;
                }
                if delta.is_negative() {
                    return Err(Error::Internal("negative coloring defect".into()));
                }
                for (n, (c, len)) in lifter.local_terms(&m, i)? {
                    if len == 0 {
                        continue;
                    }
                    let d = depth + len;
                    if d > bound {
                        note = Some(format!("monomial {n} lies below the lowest weight"));
                        break 'outer;
                    }
                    let entry = entries.entry(n.clone()).or_insert_with(|| FmEntry {
                        depth: d,
                        colored: vec![BigInt::zero(); rank],
                    });
                    if entry.depth != d {
                        return Err(Error::Internal(format!("inconsistent depth at {n}")));
                    }
                    entry.colored[i] += &delta * c;
                    layers.entry(d).or_default().insert(n);
                }
            }
        }
    }

    let mut certificates = Vec::new();
    if note.is_none() {
        certificates = certify(&character, m_plus, cd)?;
    }
    Ok(CharacterReport {
        character,
        highest_monomial: m_plus.clone(),
        status: Status::Inconclusive,
        certificates,
        iterations,
        note,
    }
    .finish())
}

/// Kernel membership on every node, unique dominant monomial, Weyl symmetry of
/// the weight diagram, and (generic mode) the `A`-lattice decomposition.
pub fn certify(character: &YPolynomial, m_plus: &YMonomial, cd: &CartanData) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    for i in cd.nodes() {
        let w = kernel_membership(character, i, cd)?;
        let detail = if w.member {
            format!("{} local characters", w.decomposition.len())
        } else {
            format!("residue {}", w.residue.as_ref().map_or(0, |r| r.len()))
        };
        out.push(Certificate::new(format!("kernel[{}]", i + 1), w.member, detail));
    }
    let dominant = character.dominant_monomials();
    let unique = dominant.len() == 1 && dominant[0] == m_plus && character.coeff(m_plus).is_one();
    out.push(Certificate::new(
        "unique_dominant",
        unique,
        format!("{} dominant monomials", dominant.len()),
    ));
    let sym = weyl_symmetric(character, cd);
    out.push(Certificate::new("weyl_symmetry", sym, ""));
    if character.mode() == Mode::Generic {
        let bad = character
            .monomials()
            .filter(|n| a_lattice_solve(m_plus, n, cd).is_err())
            .count();
        out.push(Certificate::new(
            "a_lattice",
            bad == 0,
            format!("{bad} monomials off the lattice"),
        ));
    }
    Ok(out)
}

/// The weight multiset of `P` is invariant under every simple reflection.
pub fn weyl_symmetric(p: &YPolynomial, cd: &CartanData) -> bool {
    let w = weight_map(p, cd);
    cd.nodes().all(|i| {
        w.terms.iter().all(|(mu, c)| {
            let t = cd.reflect(&WeightVector(mu.clone()), i);
            w.terms.get(&t.0) == Some(c)
        })
    })
}

/// Writes `m_plus / n` as `prod A_{i,p}^{e}` with `e > 0` (generic mode).
pub fn a_lattice_solve(
    m_plus: &YMonomial,
    n: &YMonomial,
    cd: &CartanData,
) -> Result<Vec<(usize, SpectralParameter, u32)>> {
    let mut q = m_plus.div(n);
    if q.modes().iter().any(|m| *m != Mode::Generic) {
        return Err(Error::WrongMode("A-lattice solving needs generic mode".into()));
    }
    let mut out = Vec::new();
    let limit = 4 * q.factors().iter().map(|(_, e)| e.unsigned_abs() as usize).sum::<usize>() + 16;
    for _ in 0..limit {
        if q.is_one() {
            return Ok(out);
        }
        let (v, e) = q
            .factors()
            .iter()
            .min_by(|(a, _), (b, _)| {
                (a.param.base(), a.param.k()).cmp(&(b.param.base(), b.param.k()))
            })
            .cloned()
            .expect("nonempty");
        if e < 0 {
            break;
        }
        let c = v.param.shift(cd.r[v.node] as i64);
        q = q.div(&a_monomial(v.node, &c, cd)?.pow(e));
        out.push((v.node, c, e as u32));
    }
    Err(Error::NotACharacter(format!(
        "{n} is not m_+ times a product of A^-1"
    )))
}

/// `q -> eps`: every exponent reduced mod `s`.
pub fn specialize(p: &YPolynomial, s: i64) -> Result<YPolynomial> {
    if p.mode() != Mode::Generic {
        return Err(Error::WrongMode(format!(
            "specialize expects a generic-mode polynomial, got {}",
            p.mode()
        )));
    }
    let mode = Mode::root_of_unity(s)?;
    Ok(p.map_monomials(mode, |m| {
        m.map_vars(|v| crate::ypoly::Var::new(v.node, v.param.with_mode(mode)))
    }))
}

/// One step of a Grothendieck decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    pub drinfeld: DrinfeldTuple,
    pub highest_monomial: YMonomial,
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub constituents: Vec<Constituent>,
}

impl Decomposition {
    pub fn multiplicity_of(&self, d: &DrinfeldTuple) -> BigInt {
        self.constituents
            .iter()
            .filter(|c| &c.drinfeld == d)
            .map(|c| c.multiplicity.clone())
            .sum()
    }
}

/// Greedy triangular subtraction of irreducible eps-characters.
pub fn decompose_character(
    p: &YPolynomial,
    r: &RootOfUnityData,
    cd: &CartanData,
) -> Result<Decomposition> {
    decompose_with(p, r, cd, Strategy::Auto, DEFAULT_MAX_ITERATIONS)
}

pub fn decompose_with(
    p: &YPolynomial,
    r: &RootOfUnityData,
    cd: &CartanData,
    strategy: Strategy,
    max_iterations: usize,
) -> Result<Decomposition> {
    if p.mode() != r.mode() {
        return Err(Error::ModeMismatch {
            left: p.mode(),
            right: r.mode(),
        });
    }
    let rank = cd.rank;
    let mut rest = p.clone();
    let mut constituents: Vec<Constituent> = Vec::new();
    while !rest.is_zero() {
        if !rest.is_nonnegative() {
            return Err(Error::NotACharacter(format!("negative remainder {rest}")));
        }
        let dominant: Vec<&YMonomial> = rest.dominant_monomials();
        let weights: Vec<WeightVector> = dominant.iter().map(|m| WeightVector(m.weight(rank))).collect();
        let mut pick = None;
        'cand: for (a, wa) in weights.iter().enumerate() {
            for (b, wb) in weights.iter().enumerate() {
                if a != b && wa != wb && weight_leq(wa, wb, cd)? {
                    continue 'cand;
                }
            }
            pick = Some(a);
            break;
        }
        let Some(a) = pick else {
            return Err(Error::NotACharacter(format!(
                "remainder has no dominant monomial: {rest}"
            )));
        };
        let m = dominant[a].clone();
        let c = rest.coeff(&m);
        let d = monomial_to_drinfeld(&m, rank, p.mode())?;
        let report = irr_epschar(&d, r, cd, strategy, max_iterations)?;
        if !report.is_certified() {
            return Err(Error::Inconclusive(format!(
                "constituent {d}: {}",
                report.note.unwrap_or_else(|| "not certified".into())
            )));
        }
        rest = rest.sub(&report.character.scale(&c))?;
        constituents.push(Constituent {
            drinfeld: d,
            highest_monomial: m,
            multiplicity: c,
        });
        if constituents.len() > max_iterations {
            return Err(Error::Inconclusive("decomposition did not terminate".into()));
        }
    }
    Ok(Decomposition { constituents })
}

/// Sum of coefficients, as an `i64` when it fits.
pub fn dimension(p: &YPolynomial) -> Option<i64> {
    p.total_mass().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ypoly::poly_mul;

    fn y(node: usize, base: &str, k: i64, mode: Mode) -> YMonomial {
        YMonomial::var(node - 1, SpectralParameter::new(base, k, mode))
    }

    fn gp(k: i64) -> SpectralParameter {
        SpectralParameter::generic("a", k)
    }

    #[test]
    fn string_examples() {
        let g = Mode::Generic;
        assert_eq!(sl2_string_char(&gp(0), 0).unwrap(), YPolynomial::one(g));
        let k1 = sl2_string_char(&gp(0), 1).unwrap();
        let mut expected = YPolynomial::from_monomial(y(1, "a", 0, g), g);
        expected.add_term(y(1, "a", 2, g).inv(), BigInt::one());
        assert_eq!(k1, expected);
        let k3 = sl2_string_char(&gp(0), 3).unwrap();
        assert_eq!(k3.len(), 4);
        let lowest = y(1, "a", 2, g).mul(&y(1, "a", 4, g)).mul(&y(1, "a", 6, g)).inv();
        assert!(k3.coeff(&lowest).is_one());
        let eps = SpectralParameter::new("a", 0, Mode::RootOfUnity(3));
        assert!(sl2_string_char(&eps, 3).is_err());
        assert_eq!(sl2_string_char(&eps, 2).unwrap().len(), 3);
    }

    #[test]
    fn fm_examples() {
        let g = Mode::Generic;
        let a1 = build_cartan(LieType::A, 1).unwrap();
        let rep = fm_qcharacter(&y(1, "a", 0, g), &a1, g, DEFAULT_MAX_ITERATIONS).unwrap();
        assert!(rep.is_certified());
        assert_eq!(rep.character, sl2_string_char(&gp(0), 1).unwrap());

        let a2 = build_cartan(LieType::A, 2).unwrap();
        let rep = fm_qcharacter(&y(1, "a", 0, g), &a2, g, DEFAULT_MAX_ITERATIONS).unwrap();
        assert!(rep.is_certified(), "{:?}", rep.certificates);
        let mut expected = YPolynomial::from_monomial(y(1, "a", 0, g), g);
        expected.add_term(y(1, "a", 2, g).inv().mul(&y(2, "a", 1, g)), BigInt::one());
        expected.add_term(y(2, "a", 3, g).inv(), BigInt::one());
        assert_eq!(rep.character, expected);

        let two = y(1, "a", 0, g).mul(&y(1, "a", 4, g));
        let rep = fm_qcharacter(&two, &a1, g, DEFAULT_MAX_ITERATIONS).unwrap();
        assert!(rep.is_certified());
        let prod = poly_mul(
            &sl2_string_char(&gp(0), 1).unwrap(),
            &sl2_string_char(&gp(4), 1).unwrap(),
        )
        .unwrap();
        assert_eq!(rep.character, prod);
        assert_eq!(rep.character.len(), 4);
    }

    #[test]
    fn fm_rejects_bad_input() {
        let g = Mode::Generic;
        let a1 = build_cartan(LieType::A, 1).unwrap();
        assert!(fm_qcharacter(&y(1, "a", 0, g).inv(), &a1, g, 10).is_err());
        let s2 = Mode::RootOfUnity(2);
        assert!(fm_qcharacter(&y(1, "a", 0, s2), &a1, s2, 10).is_err());
        let rep = fm_qcharacter(&y(1, "a", 0, g).pow(3), &a1, g, 2).unwrap();
        assert_eq!(rep.status, Status::Inconclusive);
    }

    #[test]
    fn specialize_examples() {
        let g = Mode::Generic;
        let a2 = build_cartan(LieType::A, 2).unwrap();
        let ch = fm_qcharacter(&y(1, "a", 0, g), &a2, g, DEFAULT_MAX_ITERATIONS)
            .unwrap()
            .character;
        let s3 = Mode::RootOfUnity(3);
        let sp = specialize(&ch, 3).unwrap();
        let mut expected = YPolynomial::from_monomial(y(1, "a", 0, s3), s3);
        expected.add_term(y(1, "a", 2, s3).inv().mul(&y(2, "a", 1, s3)), BigInt::one());
        expected.add_term(y(2, "a", 0, s3).inv(), BigInt::one());
        assert_eq!(sp, expected);

        let big = specialize(&ch, 1000).unwrap();
        assert_eq!(big.len(), ch.len());

        let k3 = specialize(&sl2_string_char(&gp(0), 3).unwrap(), 3).unwrap();
        let bold = y(1, "a", 0, s3).mul(&y(1, "a", 1, s3)).mul(&y(1, "a", 2, s3));
        let mut expected = YPolynomial::from_monomial(bold.clone(), s3);
        expected.add_term(y(1, "a", 2, s3), BigInt::one());
        expected.add_term(y(1, "a", 1, s3).inv(), BigInt::one());
        expected.add_term(bold.inv(), BigInt::one());
        assert_eq!(k3, expected);
        assert!(specialize(&ch, 0).is_err());
        assert!(specialize(&k3, 3).is_err());
    }

    #[test]
    fn kernel_examples() {
        let g = Mode::Generic;
        let a1 = build_cartan(LieType::A, 1).unwrap();
        let k1 = sl2_string_char(&gp(0), 1).unwrap();
        let w = kernel_membership(&k1, 0, &a1).unwrap();
        assert!(w.member && w.is_nonnegative());
        let single = YPolynomial::from_monomial(y(1, "a", 0, g), g);
        let w = kernel_membership(&single, 0, &a1).unwrap();
        assert!(!w.member);
        assert!(w.residue.is_some());
        let a2 = build_cartan(LieType::A, 2).unwrap();
        let ch = fm_qcharacter(&y(1, "a", 0, g), &a2, g, DEFAULT_MAX_ITERATIONS)
            .unwrap()
            .character;
        assert!(kernel_membership(&ch, 0, &a2).unwrap().member);
        assert!(kernel_membership(&ch, 1, &a2).unwrap().member);
    }

    #[test]
    fn segments_longest_first() {
        let g = Mode::Generic;
        let part: Vec<(SpectralParameter, i64)> =
            vec![(gp(0), 1), (gp(2), 2), (gp(4), 1), (gp(10), 1)];
        let (orbits, strings) = segment_decomposition(&part, 2, None);
        assert!(orbits.is_empty());
        assert_eq!(strings, vec![(gp(0), 3), (gp(2), 1), (gp(10), 1)]);
        let _ = g;

        let m = Mode::RootOfUnity(3);
        let p = |k| SpectralParameter::new("a", k, m);
        let part = vec![(p(0), 2), (p(1), 1), (p(2), 1)];
        let (orbits, strings) = segment_decomposition(&part, 2, Some(3));
        assert_eq!(orbits, vec![(p(0), 1)]);
        assert_eq!(strings, vec![(p(0), 1)]);
    }

    #[test]
    fn a_lattice_examples() {
        let g = Mode::Generic;
        let a2 = build_cartan(LieType::A, 2).unwrap();
        let mp = y(1, "a", 0, g);
        let low = y(2, "a", 3, g).inv();
        let sol = a_lattice_solve(&mp, &low, &a2).unwrap();
        assert_eq!(sol.len(), 2);
        assert!(a_lattice_solve(&mp, &y(1, "a", 5, g), &a2).is_err());
    }
}
