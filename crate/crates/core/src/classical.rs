//! Ordinary characters, evaluation eps*-characters, Frobenius pullback and the
//! irreducible eps-character assembler.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cartan::{CartanData, WeightVector};
use crate::characters::{
    certify, fm_qcharacter, kernel_membership, specialize, Certificate, CharacterReport, Lifter,
    Status,
};
use crate::drinfeld::{
    drinfeld_to_monomial, monomial_to_drinfeld, orbit, orbit_representatives, split_drinfeld,
    DrinfeldTuple,
};
use crate::error::{Error, Result};
use crate::params::{
    frobenius_param_map_named, FrobeniusDirection, Mode, RootOfUnityData, SpectralParameter,
    StarSign,
};
use crate::ypoly::{bold_y, Var, WeightPolynomial, YMonomial, YPolynomial};

/// Weight multiplicities of an irreducible finite-dimensional module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCharacter {
    pub highest: WeightVector,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl ClassicalCharacter {
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, mu: &[i64]) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn to_weight_polynomial(&self) -> WeightPolynomial {
        let mut w = WeightPolynomial::zero(self.highest.rank());
        for (mu, c) in &self.terms {
            w.add_term(mu.clone(), c.clone());
        }
        w
    }
}

/// `dim V_lambda = prod_{beta > 0} (lambda + rho, beta) / (rho, beta)`.
pub fn weyl_dimension(lambda: &WeightVector, cd: &CartanData) -> Result<BigInt> {
    cd.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NonDominantWeight(lambda.0.clone()));
    }
    let shifted: Vec<i64> = lambda.0.iter().map(|x| x + 1).collect();
    let rho = vec![1; cd.rank];
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for beta in cd.positive_roots() {
        num *= cd.pair_with_root(&shifted, &beta);
        den *= cd.pair_with_root(&rho, &beta);
    }
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal("Weyl dimension is not an integer".into()));
    }
    Ok(q)
}

/// Freudenthal's recursion, level by level below `lambda`.
pub fn freudenthal_char(lambda: &WeightVector, cd: &CartanData) -> Result<ClassicalCharacter> {
    cd.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NonDominantWeight(lambda.0.clone()));
    }
    let n = cd.rank;
    let roots = cd.positive_roots();
    let weight_of = |depth: &[i64]| -> Vec<i64> {
        let d = cd.root_coords_to_weight(depth);
        lambda.0.iter().zip(&d.0).map(|(a, b)| a - b).collect()
    };
    // keyed by root coordinates of lambda - mu
    let mut mult: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    mult.insert(vec![0; n], BigInt::one());
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; n]]);
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for m in &level {
            for j in 0..n {
                let mut c = m.clone();
                c[j] += 1;
                next.insert(c);
            }
        }
        let mut kept = BTreeSet::new();
        for m in next {
            let mu = weight_of(&m);
            let lam_mu_rho: Vec<i64> = (0..n).map(|j| lambda.0[j] + mu[j] + 2).collect();
            let den: i64 = (0..n).map(|j| m[j] * cd.r[j] as i64 * lam_mu_rho[j]).sum();
            let mut num = BigInt::zero();
            for beta in &roots {
                let mut k = 1;
                loop {
                    let up: Vec<i64> = (0..n).map(|j| m[j] - k * beta[j]).collect();
                    if up.iter().any(|x| *x < 0) {
                        break;
                    }
                    if let Some(c) = mult.get(&up) {
                        num += c * cd.pair_with_root(&weight_of(&up), beta);
                    }
                    k += 1;
                }
            }
            num *= 2;
            if num.is_zero() {
                continue;
            }
            if den <= 0 {
                return Err(Error::Internal("Freudenthal denominator vanished".into()));
            }
            let (q, rem) = num.div_rem(&BigInt::from(den));
            if !rem.is_zero() {
                return Err(Error::Internal(format!("non-integral multiplicity at {mu:?}")));
            }
            if !q.is_zero() {
                mult.insert(m.clone(), q);
                kept.insert(m);
            }
        }
        level = kept;
    }
    let terms: BTreeMap<Vec<i64>, BigInt> = mult.into_iter().map(|(m, c)| (weight_of(&m), c)).collect();
    let ch = ClassicalCharacter {
        highest: lambda.clone(),
        terms,
    };
    let dim = weyl_dimension(lambda, cd)?;
    if ch.dimension() != dim {
        return Err(Error::Internal(format!(
            "Freudenthal total {} disagrees with Weyl dimension {dim}",
            ch.dimension()
        )));
    }
    Ok(ch)
}

/// Sign-lattice offset of node `i` inside an evaluation module.
fn node_offset(i: usize, eps_star: StarSign, cd: &CartanData) -> i64 {
    match eps_star {
        StarSign::Plus => 0,
        StarSign::Minus => ((1 - cd.psi_sign[i] as i64) / 2).rem_euclid(2),
    }
}

/// `chi(V_lambda)` with `y_i -> Ybar_{i, a}` (`eps* = 1`) or `Ybar_{i, a psi(i)}` (`eps* = -1`).
pub fn evaluation_epschar(
    lambda: &WeightVector,
    a: &SpectralParameter,
    eps_star: StarSign,
    cd: &CartanData,
) -> Result<YPolynomial> {
    let ch = freudenthal_char(lambda, cd)?;
    let mode = a.mode();
    let vars: Vec<Var> = cd
        .nodes()
        .map(|i| Var::new(i, a.shift(node_offset(i, eps_star, cd))))
        .collect();
    let mut out = YPolynomial::zero(mode);
    for (mu, c) in &ch.terms {
        let m = YMonomial::from_factors(mu.iter().enumerate().map(|(i, e)| (vars[i].clone(), *e)));
        out.add_term(m, c.clone());
    }
    Ok(out)
}

/// Splits a dominant sign-lattice monomial into parts supported at one point each.
pub fn support_factorize(
    m: &YMonomial,
    eps_star: StarSign,
    cd: &CartanData,
) -> Result<Vec<(SpectralParameter, YMonomial)>> {
    if !m.is_dominant() {
        return Err(Error::NotDominant(m.to_string()));
    }
    let mut parts: BTreeMap<SpectralParameter, Vec<(Var, i64)>> = BTreeMap::new();
    for (v, e) in m.factors() {
        cd.check_node(v.node)?;
        let key = v.param.shift(node_offset(v.node, eps_star, cd));
        parts.entry(key).or_default().push((v.clone(), *e));
    }
    Ok(parts
        .into_iter()
        .map(|(k, f)| (k, YMonomial::from_factors(f)))
        .collect())
}

/// Irreducible sign-lattice character with highest monomial `m`: a product of
/// evaluation characters over the support.
pub fn star_irreducible_char(
    m: &YMonomial,
    mode: Mode,
    eps_star: StarSign,
    cd: &CartanData,
) -> Result<YPolynomial> {
    let mut out = YPolynomial::one(mode);
    for (a, part) in support_factorize(m, eps_star, cd)? {
        let lambda = WeightVector(part.weight(cd.rank));
        let ev = evaluation_epschar(&lambda, &a, eps_star, cd)?;
        if ev.coeff(&part) != BigInt::one() {
            return Err(Error::Internal(format!("support part {part} is not a highest monomial")));
        }
        out = out.mul(&ev)?;
    }
    Ok(out)
}

fn pullback_shift(i: usize, theta: &[u8], r: &RootOfUnityData) -> i64 {
    if r.l_is_odd() {
        0
    } else {
        theta[i] as i64
    }
}

fn root_with(
    p: &SpectralParameter,
    r: &RootOfUnityData,
    root_name: Option<&str>,
) -> Result<SpectralParameter> {
    frobenius_param_map_named(p, r, FrobeniusDirection::Root, root_name)
}

fn single_base_for_override(bases: &BTreeSet<String>, root_name: Option<&str>) -> Result<()> {
    if root_name.is_some() && bases.len() > 1 {
        return Err(Error::Parse(format!(
            "a root-name override needs a single base, found {}",
            bases.iter().cloned().collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(())
}

/// Drinfeld data of `Fr*(V(Dbar))`: each root `b` becomes the full orbit of
/// `b^{1/l} eps^{theta(i) [l even]}`.
pub fn frobenius_drinfeld(
    dbar: &DrinfeldTuple,
    r: &RootOfUnityData,
    cd: &CartanData,
    root_name: Option<&str>,
) -> Result<DrinfeldTuple> {
    r.require_coprime()?;
    if dbar.mode() != r.star_mode() {
        return Err(Error::ModeMismatch {
            left: dbar.mode(),
            right: r.star_mode(),
        });
    }
    let bases: BTreeSet<String> = (0..dbar.rank())
        .flat_map(|i| dbar.roots(i).keys().map(|p| p.base().to_string()))
        .collect();
    single_base_for_override(&bases, root_name)?;
    let mut out = DrinfeldTuple::trivial(dbar.rank(), r.mode());
    for i in 0..dbar.rank() {
        for (p, m) in dbar.roots(i) {
            let c = root_with(p, r, root_name)?.shift(pullback_shift(i, &cd.theta, r));
            for q in orbit(&c, r.l_i(i), r.step(i)) {
                out.add_root(i, q, *m)?;
            }
        }
    }
    Ok(out)
}

/// Inverse of [`frobenius_drinfeld`] on a union of full orbits.
pub fn frobenius_descent(
    d1: &DrinfeldTuple,
    r: &RootOfUnityData,
    cd: &CartanData,
) -> Result<DrinfeldTuple> {
    r.require_coprime()?;
    let mut out = DrinfeldTuple::trivial(d1.rank(), r.star_mode());
    for (i, rep) in orbit_representatives(d1, r)? {
        let c = rep.shift(-pullback_shift(i, &cd.theta, r));
        let b = frobenius_param_map_named(&c, r, FrobeniusDirection::Power, None)?;
        out.add_root(i, b, 1)?;
    }
    Ok(out)
}

/// What to pull back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PullbackInput {
    /// The evaluation module `V_lambda(a)` on the sign lattice.
    Evaluation {
        lambda: WeightVector,
        base: SpectralParameter,
    },
    /// An explicit sign-lattice character.
    Character(YPolynomial),
}

/// `Ybar_{i,b}^e -> boldY_{i, b^{1/l} eps^{theta_i [l even]}}^e`, with an explicit `theta`.
pub fn pullback_with_theta(
    chi_bar: &YPolynomial,
    r: &RootOfUnityData,
    theta: &[u8],
    root_name: Option<&str>,
) -> Result<YPolynomial> {
    r.require_coprime()?;
    if chi_bar.mode() != r.star_mode() {
        return Err(Error::ModeMismatch {
            left: chi_bar.mode(),
            right: r.star_mode(),
        });
    }
    let bases: BTreeSet<String> = chi_bar
        .monomials()
        .flat_map(|m| m.factors().iter().map(|(v, _)| v.param.base().to_string()))
        .collect();
    single_base_for_override(&bases, root_name)?;
    let mut out = YPolynomial::zero(r.mode());
    for (m, c) in chi_bar.terms() {
        let mut n = YMonomial::one();
        for (v, e) in m.factors() {
            if v.node >= theta.len() {
                return Err(Error::NodeOutOfRange {
                    node: v.node,
                    rank: theta.len(),
                });
            }
            let root = root_with(&v.param, r, root_name)?.shift(pullback_shift(v.node, theta, r));
            n = n.mul(&bold_y(v.node, &root, r).pow(*e));
        }
        out.add_term(n, c.clone());
    }
    Ok(out)
}

pub fn frobenius_pullback_char(
    input: &PullbackInput,
    r: &RootOfUnityData,
    cd: &CartanData,
    root_name: Option<&str>,
) -> Result<YPolynomial> {
    r.require_coprime()?;
    let chi_bar = match input {
        PullbackInput::Evaluation { lambda, base } => {
            if base.mode() != r.star_mode() {
                return Err(Error::ModeMismatch {
                    left: base.mode(),
                    right: r.star_mode(),
                });
            }
            let ev = evaluation_epschar(lambda, base, r.eps_star, cd)?;
            // evaluation characters are supported at a single point
            let top = ev
                .monomials()
                .find(|m| m.weight(cd.rank) == lambda.0)
                .cloned()
                .unwrap_or_default();
            let parts = support_factorize(&top, r.eps_star, cd)?;
            if parts.len() > 1 {
                return Err(Error::Internal("evaluation monomial with split support".into()));
            }
            ev
        }
        PullbackInput::Character(p) => p.clone(),
    };
    pullback_with_theta(&chi_bar, r, &cd.theta, root_name)
}

/// `Ybar_{i,b} -> Ybar_{i, b (-1)^d}` on the sign lattice.
pub fn sign_shift(chi_bar: &YPolynomial, d: i64) -> YPolynomial {
    crate::ypoly::tau_shift(chi_bar, d)
}

/// Multiplication of every sign-lattice parameter by `eps*`.
pub fn eps_star_shift(chi_bar: &YPolynomial, r: &RootOfUnityData) -> YPolynomial {
    sign_shift(chi_bar, r.eps_star_step())
}

/// How `irr_epschar` obtains the acyclic part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Closed sl2 form, then direct closure at eps, then the lift fallback.
    #[default]
    Auto,
    /// Only the lift-specialize fallback.
    FallbackOnly,
    /// Only the direct closure at eps.
    FmOnly,
}

const MAX_LIFT_VARIANTS: usize = 64;

/// Acyclic part through lifting to generic `q`, closing there, specializing,
/// and keeping a lift whose specialization is irreducible.
fn acyclic_by_lifting(
    m0: &YMonomial,
    r: &RootOfUnityData,
    cd: &CartanData,
    max_iterations: usize,
) -> Result<Option<YPolynomial>> {
    let s = r.s as i64;
    let roots: Vec<(usize, SpectralParameter)> = m0
        .factors()
        .iter()
        .flat_map(|(v, e)| std::iter::repeat((v.node, v.param.clone())).take(*e as usize))
        .collect();
    let variants = 1usize
        .checked_shl(roots.len() as u32)
        .unwrap_or(usize::MAX)
        .min(MAX_LIFT_VARIANTS);
    for mask in 0..variants {
        let lifted = YMonomial::from_factors(roots.iter().enumerate().map(|(n, (i, p))| {
            let k = p.k() + if mask >> n & 1 == 1 { s } else { 0 };
            (Var::new(*i, SpectralParameter::generic(p.base(), k)), 1)
        }));
        let rep = fm_qcharacter(&lifted, cd, Mode::Generic, max_iterations)?;
        if !rep.is_certified() {
            continue;
        }
        let sp = specialize(&rep.character, s)?;
        let dominant = sp.dominant_monomials();
        if dominant.len() != 1 || dominant[0] != m0 || !sp.coeff(m0).is_one() {
            continue;
        }
        let mut kernel_ok = true;
        for i in cd.nodes() {
            if !kernel_membership(&sp, i, cd)?.member {
                kernel_ok = false;
                break;
            }
        }
        if kernel_ok {
            return Ok(Some(sp));
        }
    }
    Ok(None)
}

fn unique_dominant(p: &YPolynomial, m: &YMonomial) -> bool {
    let d = p.dominant_monomials();
    d.len() == 1 && d[0] == m && p.coeff(m).is_one()
}

fn kernel_everywhere(p: &YPolynomial, cd: &CartanData) -> Result<bool> {
    for i in cd.nodes() {
        if !kernel_membership(p, i, cd)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Character of the irreducible module with acyclic Drinfeld data `m0`.
fn acyclic_char(
    m0: &YMonomial,
    r: &RootOfUnityData,
    cd: &CartanData,
    strategy: Strategy,
    max_iterations: usize,
) -> Result<(Option<YPolynomial>, String)> {
    let mode = r.mode();
    if m0.is_one() {
        return Ok((Some(YPolynomial::one(mode)), "trivial".into()));
    }
    let mut tried = Vec::new();
    if strategy == Strategy::Auto && cd.rank == 1 {
        let mut lifter = Lifter::new(cd, mode)?;
        let p = lifter.local_char(m0, 0, mode)?;
        if unique_dominant(&p, m0) && kernel_everywhere(&p, cd)? {
            return Ok((Some(p), "sl2 closed form".into()));
        }
        tried.push("sl2 closed form");
    }
    if matches!(strategy, Strategy::Auto | Strategy::FmOnly) {
        if r.s > 2 {
            let rep = fm_qcharacter(m0, cd, mode, max_iterations)?;
            if rep.is_certified() {
                return Ok((Some(rep.character), "closure at eps".into()));
            }
        }
        tried.push("closure at eps");
    }
    if matches!(strategy, Strategy::Auto | Strategy::FallbackOnly) {
        if let Some(p) = acyclic_by_lifting(m0, r, cd, max_iterations)? {
            return Ok((Some(p), "lift and specialize".into()));
        }
        tried.push("lift and specialize");
    }
    Ok((None, format!("no certified path ({})", tried.join(", "))))
}

/// `chi_eps(V(D)) = chi(V(D0)) * Fr*(chi(V(Dbar1)))`.
pub fn irr_epschar(
    d: &DrinfeldTuple,
    r: &RootOfUnityData,
    cd: &CartanData,
    strategy: Strategy,
    max_iterations: usize,
) -> Result<CharacterReport> {
    r.require_coprime()?;
    if d.rank() != cd.rank {
        return Err(Error::RankMismatch {
            expected: cd.rank,
            found: d.rank(),
        });
    }
    let mode = r.mode();
    if d.mode() != mode {
        return Err(Error::ModeMismatch {
            left: d.mode(),
            right: mode,
        });
    }
    let highest = drinfeld_to_monomial(d);
    let (d0, d1) = split_drinfeld(d, r)?;
    let m0 = drinfeld_to_monomial(&d0);

    let dbar = frobenius_descent(&d1, r, cd)?;
    let mbar = drinfeld_to_monomial(&dbar);
    let chi_bar = star_irreducible_char(&mbar, r.star_mode(), r.eps_star, cd)?;
    let chi1 = pullback_with_theta(&chi_bar, r, &cd.theta, None)?;
    let back = frobenius_drinfeld(&dbar, r, cd, None)?;

    let (chi0, path) = acyclic_char(&m0, r, cd, strategy, max_iterations)?;
    let mut certificates = vec![
        Certificate::new("periodic_part", back == d1, format!("{dbar}")),
        Certificate::new("acyclic_part", chi0.is_some(), path.clone()),
    ];
    let Some(chi0) = chi0 else {
        return Ok(CharacterReport {
            character: chi1,
            highest_monomial: highest,
            status: Status::Inconclusive,
            certificates,
            iterations: 0,
            note: Some(path),
        });
    };
    let character = chi0.mul(&chi1)?;
    for c in certify(&character, &highest, cd)? {
        if c.name.starts_with("kernel") {
            certificates.push(c);
        }
    }
    let top_ok = character.coeff(&highest).is_one();
    let lambda = highest.weight(cd.rank);
    let maximal = character
        .monomials()
        .all(|n| n == &highest || n.weight(cd.rank) != lambda);
    certificates.push(Certificate::new("highest_monomial", top_ok && maximal, ""));
    Ok(CharacterReport {
        character,
        highest_monomial: highest,
        status: Status::Inconclusive,
        certificates,
        iterations: 0,
        note: None,
    }
    .finish())
}

/// `chi(V(D0))` alone (for comparisons between strategies).
pub fn acyclic_epschar(
    d0: &DrinfeldTuple,
    r: &RootOfUnityData,
    cd: &CartanData,
    strategy: Strategy,
    max_iterations: usize,
) -> Result<Option<YPolynomial>> {
    let m0 = drinfeld_to_monomial(d0);
    Ok(acyclic_char(&m0, r, cd, strategy, max_iterations)?.0)
}

/// Drinfeld data of a dominant monomial, for convenience at the CLI.
pub fn drinfeld_of(m: &YMonomial, rank: usize, mode: Mode) -> Result<DrinfeldTuple> {
    monomial_to_drinfeld(m, rank, mode)
}
