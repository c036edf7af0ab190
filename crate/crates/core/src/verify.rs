//! Randomized invariant suite, shared by the `verify` command and the tests.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartan::{all_types_up_to, build_cartan, CartanData, LieType, WeightVector};
use crate::characters::{fm_qcharacter, kernel_membership, specialize, weyl_symmetric, DEFAULT_MAX_ITERATIONS};
use crate::classical::{
    eps_star_shift, freudenthal_char, frobenius_pullback_char, pullback_with_theta, sign_shift,
    weyl_dimension, PullbackInput,
};
use crate::drinfeld::{
    drinfeld_to_monomial, gamma_from_monomial, is_l_acyclic, monomial_to_drinfeld,
    proper_product, psi_from_drinfeld, split_drinfeld, DrinfeldTuple, RootMultiset,
};
use crate::error::Result;
use crate::params::{lattice_data, Mode, RootOfUnityData, SpectralParameter};
use crate::ypoly::{
    a_monomial, pi_reduce, restrict_nodes, tau_shift, weight_map, Var, WeightPolynomial,
    YMonomial, YPolynomial,
};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

const BASES: [&str; 2] = ["a", "b"];

pub fn random_param(rng: &mut Rng64, mode: Mode) -> SpectralParameter {
    let base = BASES[rng.gen_range(0..BASES.len())];
    let k = match mode {
        Mode::Generic => rng.gen_range(-4..=4),
        Mode::RootOfUnity(s) => rng.gen_range(0..s as i64),
    };
    SpectralParameter::new(base, k, mode)
}

pub fn random_monomial(rng: &mut Rng64, rank: usize, mode: Mode, dominant: bool) -> YMonomial {
    let n = rng.gen_range(0..=3);
    YMonomial::from_factors((0..n).map(|_| {
        let e = if dominant {
            rng.gen_range(1..=2)
        } else {
            *[-2, -1, 1, 2].get(rng.gen_range(0..4)).expect("in range")
        };
        (Var::new(rng.gen_range(0..rank), random_param(rng, mode)), e)
    }))
}

pub fn random_polynomial(rng: &mut Rng64, rank: usize, mode: Mode) -> YPolynomial {
    let mut p = YPolynomial::zero(mode);
    for _ in 0..rng.gen_range(1..=4) {
        let c = *[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).expect("in range");
        p.add_term(random_monomial(rng, rank, mode, false), BigInt::from(c));
    }
    p
}

pub fn random_roots(rng: &mut Rng64, mode: Mode, max: usize) -> RootMultiset {
    let mut out = RootMultiset::new();
    for _ in 0..rng.gen_range(0..=max) {
        *out.entry(random_param(rng, mode)).or_insert(0) += 1;
    }
    out
}

/// A random dominant weight with coordinates at most `max`.
pub fn random_weight(rng: &mut Rng64, rank: usize, max: i64) -> WeightVector {
    WeightVector((0..rank).map(|_| rng.gen_range(0..=max)).collect())
}

/// A random evaluation character on the sign lattice of `r`.
pub fn random_evaluation(
    rng: &mut Rng64,
    cd: &CartanData,
    r: &RootOfUnityData,
    max: i64,
) -> (WeightVector, SpectralParameter) {
    let lambda = random_weight(rng, cd.rank, max);
    let allowed = r.allowed_star_exponents();
    let t = allowed[rng.gen_range(0..allowed.len())];
    let base = BASES[rng.gen_range(0..BASES.len())];
    (lambda, SpectralParameter::new(base, t, r.star_mode()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, failures: Vec<String>, total: usize) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{total} cases"),
            Some(f) => format!("{} of {total} failed; first: {f}", failures.len()),
        },
    }
}

pub fn weight_add(a: &WeightPolynomial, b: &WeightPolynomial) -> WeightPolynomial {
    let mut out = a.clone();
    for (w, c) in &b.terms {
        out.add_term(w.clone(), c.clone());
    }
    out
}

/// `f(PQ) = f(P) f(Q)` and `f(P+Q) = f(P) + f(Q)` for the structural ring maps.
pub fn ring_map_laws(rng: &mut Rng64, cases: usize) -> Result<Vec<Check>> {
    let a2 = build_cartan(LieType::A, 2)?;
    let mut weight_fail = Vec::new();
    let mut restrict_fail = Vec::new();
    let mut tau_fail = Vec::new();
    let mut pi_fail = Vec::new();
    for n in 0..cases {
        let s = [3u32, 5, 6, 9][n % 4];
        let mode = if n % 2 == 0 { Mode::Generic } else { Mode::RootOfUnity(s) };
        let p = random_polynomial(rng, 2, mode);
        let q = random_polynomial(rng, 2, mode);
        let pq = p.mul(&q)?;
        let sum = p.add(&q)?;
        let (wp, wq) = (weight_map(&p, &a2), weight_map(&q, &a2));
        if weight_map(&pq, &a2) != wp.mul(&wq) || weight_map(&sum, &a2) != weight_add(&wp, &wq) {
            weight_fail.push(format!("{p} ; {q}"));
        }
        let j = [vec![0], vec![1], vec![0, 1], vec![]][n % 4].clone();
        let (rp, rq) = (restrict_nodes(&p, &j), restrict_nodes(&q, &j));
        if restrict_nodes(&pq, &j) != rp.mul(&rq)? || restrict_nodes(&sum, &j) != rp.add(&rq)? {
            restrict_fail.push(format!("{p} ; {q} ; J={j:?}"));
        }
        let d = rng.gen_range(-7..=7);
        if tau_shift(&pq, d) != tau_shift(&p, d).mul(&tau_shift(&q, d))?
            || tau_shift(&sum, d) != tau_shift(&p, d).add(&tau_shift(&q, d))?
        {
            tau_fail.push(format!("{p} ; {q} ; d={d}"));
        }
        if let Mode::RootOfUnity(s) = mode {
            if tau_shift(&p, s as i64) != p {
                tau_fail.push(format!("tau_s({p}) != {p}"));
            }
            let r = lattice_data(s as i64, &a2)?;
            let (pp, pq_) = (pi_reduce(&p, &r)?, pi_reduce(&q, &r)?);
            let ok = pi_reduce(&pq, &r)? == pi_reduce(&pp.mul(&pq_)?, &r)?
                && pi_reduce(&sum, &r)? == pi_reduce(&pp.add(&pq_)?, &r)?
                && pi_reduce(&pp, &r)? == pp;
            if !ok {
                pi_fail.push(format!("{p} ; {q} ; s={s}"));
            }
        }
    }
    Ok(vec![
        check("ypoly: weight_map is a ring map", weight_fail, cases),
        check("ypoly: restrict_nodes is a ring map", restrict_fail, cases),
        check("ypoly: tau_shift is a ring automorphism", tau_fail, cases),
        check("ypoly: pi_reduce is a ring map and idempotent", pi_fail, cases / 2),
    ])
}

/// `beta(A_{i,p})` is the `i`-th simple root, and `A` commutes with shifts.
pub fn a_monomial_laws(rng: &mut Rng64) -> Result<Check> {
    let mut fails = Vec::new();
    let mut total = 0;
    for (t, n) in all_types_up_to(4) {
        let cd = build_cartan(t, n)?;
        for i in cd.nodes() {
            total += 1;
            let mode = Mode::RootOfUnity(rng.gen_range(3..=12));
            let p = random_param(rng, mode);
            let d = rng.gen_range(-5..=5);
            let a = a_monomial(i, &p, &cd)?;
            if a.weight(n) != cd.simple_root(i).0 {
                fails.push(format!("{t}{n} node {}: weight", i + 1));
            }
            if a_monomial(i, &p.shift(d), &cd)? != a.shift(d) {
                fails.push(format!("{t}{n} node {}: shift {d}", i + 1));
            }
        }
    }
    Ok(check("ypoly: A monomials have simple-root weight, commute with tau", fails, total))
}

pub fn drinfeld_laws(rng: &mut Rng64, cases: usize) -> Result<Vec<Check>> {
    let a2 = build_cartan(LieType::A, 2)?;
    let mut round = Vec::new();
    let mut split = Vec::new();
    let mut proper = Vec::new();
    let mut gamma = Vec::new();
    for n in 0..cases {
        let s = 3 + (n % 10) as i64;
        let r = lattice_data(s, &a2)?;
        let mode = r.mode();
        let m = random_monomial(rng, 2, mode, true);
        let d = monomial_to_drinfeld(&m, 2, mode)?;
        if drinfeld_to_monomial(&d) != m {
            round.push(m.to_string());
        }
        let mut d = DrinfeldTuple::trivial(2, mode);
        for i in 0..2 {
            for (p, k) in random_roots(rng, mode, 2 * r.l as usize + 2) {
                d.add_root(i, p, k)?;
            }
            // plant a full orbit half of the time
            if rng.gen_bool(0.5) {
                let p = random_param(rng, mode);
                for q in crate::drinfeld::orbit(&p, r.l_i(i), r.step(i)) {
                    d.add_root(i, q, 1)?;
                }
            }
        }
        let (d0, d1) = split_drinfeld(&d, &r)?;
        let ok = (0..2).all(|i| is_l_acyclic(d0.roots(i), r.l_i(i), r.step(i)))
            && d0.union(&d1)? == d
            && crate::drinfeld::orbit_representatives(&d1, &r).is_ok();
        if !ok {
            split.push(format!("{d} at s={s}"));
        }
        let roots = random_roots(rng, mode, 4);
        let i = n % 2;
        let psi = psi_from_drinfeld(&roots, i, &r, 1)?;
        if !proper_product(&psi.normalized(), i, &r).is_one() {
            proper.push(format!("{roots:?} at s={s}"));
        }
        let (m1, m2) = (random_monomial(rng, 2, mode, false), random_monomial(rng, 2, mode, false));
        let (g1, k1) = gamma_from_monomial(&m1, i, mode);
        let (g2, k2) = gamma_from_monomial(&m2, i, mode);
        let (g12, k12) = gamma_from_monomial(&m1.mul(&m2), i, mode);
        if g12 != g1.mul(&g2) || k12 != k1 + k2 {
            gamma.push(format!("{m1} ; {m2}"));
        }
    }
    Ok(vec![
        check("drinfeld: monomial round trip", round, cases),
        check("drinfeld: split gives acyclic part and full orbits", split, cases),
        check("drinfeld: normalized proper product is 1", proper, cases),
        check("drinfeld: Gamma is multiplicative", gamma, cases),
    ])
}

pub fn specialization_laws(rng: &mut Rng64, cases: usize) -> Result<Check> {
    let mut fails = Vec::new();
    for n in 0..cases {
        let s = 3 + (n % 8) as i64;
        let p = random_polynomial(rng, 2, Mode::Generic);
        let q = random_polynomial(rng, 2, Mode::Generic);
        let d = rng.gen_range(-9..=9);
        let ok = specialize(&p.mul(&q)?, s)? == specialize(&p, s)?.mul(&specialize(&q, s)?)?
            && specialize(&p.add(&q)?, s)? == specialize(&p, s)?.add(&specialize(&q, s)?)?
            && specialize(&tau_shift(&p, d), s)? == tau_shift(&specialize(&p, s)?, d.rem_euclid(s));
        if !ok {
            fails.push(format!("{p} ; {q} ; s={s}"));
        }
    }
    Ok(check("characters: specialize is a ring map commuting with tau", fails, cases))
}

/// Every type of rank at most 3.
pub fn desk_types() -> Vec<(LieType, usize)> {
    all_types_up_to(3)
}

pub fn freudenthal_vs_weyl(max_coord: i64) -> Result<Check> {
    let mut fails = Vec::new();
    let mut total = 0;
    for (t, n) in desk_types() {
        let cd = build_cartan(t, n)?;
        let bound = if n <= 2 { max_coord } else { max_coord.min(2) };
        let mut lam = vec![0i64; n];
        loop {
            total += 1;
            let w = WeightVector(lam.clone());
            match freudenthal_char(&w, &cd) {
                Ok(ch) if ch.dimension() == weyl_dimension(&w, &cd)? => {}
                Ok(ch) => fails.push(format!("{t}{n} {lam:?}: {}", ch.dimension())),
                Err(e) => fails.push(format!("{t}{n} {lam:?}: {e}")),
            }
            let mut j = 0;
            while j < n && lam[j] == bound {
                lam[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
            lam[j] += 1;
        }
    }
    Ok(check("classical: Freudenthal totals match Weyl dimensions", fails, total))
}

/// Fundamental q-characters certify, with Weyl-symmetric weight diagrams.
pub fn fundamental_certification(types: &[(LieType, usize)]) -> Result<Check> {
    let mut fails = Vec::new();
    let mut total = 0;
    for &(t, n) in types {
        let cd = build_cartan(t, n)?;
        for i in cd.nodes() {
            total += 1;
            let m = YMonomial::var(i, SpectralParameter::generic("a", 0));
            let rep = fm_qcharacter(&m, &cd, Mode::Generic, DEFAULT_MAX_ITERATIONS)?;
            let dim = weyl_dimension(&WeightVector::fundamental(n, i), &cd)?;
            if !rep.is_certified() || !weyl_symmetric(&rep.character, &cd) {
                fails.push(format!("{t}{n} node {}: {:?}", i + 1, rep.note));
            } else if rep.character.total_mass() < dim {
                fails.push(format!("{t}{n} node {}: dimension below Weyl", i + 1));
            }
        }
    }
    Ok(check("characters: fundamental closures certify", fails, total))
}

/// Pullback laws: ring map, tau-equivariance, weight dilation, trivial pi image.
pub fn pullback_laws(rng: &mut Rng64, cases: usize) -> Result<Vec<Check>> {
    let mut mult = Vec::new();
    let mut tau = Vec::new();
    let mut dil = Vec::new();
    let mut pi = Vec::new();
    let mut kernel = Vec::new();
    let types = [(LieType::A, 1), (LieType::A, 2)];
    for n in 0..cases {
        let (t, rank) = types[n % 2];
        let cd = build_cartan(t, rank)?;
        let s = [3i64, 5, 6, 8][(n / 2) % 4];
        let r = lattice_data(s, &cd)?;
        let (l1, b1) = random_evaluation(rng, &cd, &r, 2);
        let (l2, b2) = random_evaluation(rng, &cd, &r, 1);
        let e1 = crate::classical::evaluation_epschar(&l1, &b1, r.eps_star, &cd)?;
        let e2 = crate::classical::evaluation_epschar(&l2, &b2, r.eps_star, &cd)?;
        let fr = |p: &YPolynomial| {
            frobenius_pullback_char(&PullbackInput::Character(p.clone()), &r, &cd, None)
        };
        let (f1, f2) = (fr(&e1)?, fr(&e2)?);
        if fr(&e1.mul(&e2)?)? != f1.mul(&f2)? {
            mult.push(format!("{t}{rank} s={s} {l1:?}@{b1} * {l2:?}@{b2}"));
        }
        let shifted = fr(&eps_star_shift(&e1, &r))?;
        let mut ok = shifted == tau_shift(&f1, r.l as i64);
        if !r.l_is_odd() {
            ok &= fr(&sign_shift(&e1, 1))? == tau_shift(&f1, 1);
        }
        if !ok {
            tau.push(format!("{t}{rank} s={s} {l1:?}@{b1}"));
        }
        let expected = freudenthal_char(&l1, &cd)?.to_weight_polynomial().dilate(r.l as i64);
        if weight_map(&f1, &cd) != expected {
            dil.push(format!("{t}{rank} s={s} {l1:?}"));
        }
        let dim = weyl_dimension(&l1, &cd)?;
        if pi_reduce(&f1, &r)? != YPolynomial::constant(dim, r.mode()) {
            pi.push(format!("{t}{rank} s={s} {l1:?}"));
        }
        if n < cases / 4 {
            for i in cd.nodes() {
                if !kernel_membership(&f1, i, &cd)?.member {
                    kernel.push(format!("{t}{rank} s={s} {l1:?} node {}", i + 1));
                }
            }
        }
    }
    Ok(vec![
        check("classical: pullback is multiplicative", mult, cases),
        check("classical: pullback intertwines eps*-shift with tau_l", tau, cases),
        check("classical: weight_map of pullback is the dilated character", dil, cases),
        check("classical: pi_reduce of pullback is dim V", pi, cases),
        check("classical: pullbacks lie in every screening kernel", kernel, cases / 4),
    ])
}

/// Connected node subsets.
pub fn connected_subsets(cd: &CartanData) -> Vec<Vec<usize>> {
    let n = cd.rank;
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let nodes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut seen = vec![nodes[0]];
        let mut idx = 0;
        while idx < seen.len() {
            let i = seen[idx];
            for &j in &nodes {
                if !seen.contains(&j) && cd.cartan_matrix[i][j] != 0 {
                    seen.push(j);
                }
            }
            idx += 1;
        }
        if seen.len() == nodes.len() {
            out.push(nodes);
        }
    }
    out
}

/// `beta_J(Fr*(chi)) = Fr*_J(beta_J(chi))`, with the sign shift exactly when `o`
/// and the subdiagram convention disagree at even `l`.
pub fn restriction_law(rng: &mut Rng64, cases: usize) -> Result<Check> {
    let mut fails = Vec::new();
    let mut total = 0;
    let setups = [(LieType::A, 3, 8i64), (LieType::A, 2, 8), (LieType::A, 3, 5), (LieType::G, 2, 8), (LieType::C, 3, 6)];
    for n in 0..cases {
        let (t, rank, s) = setups[n % setups.len()];
        let cd = build_cartan(t, rank)?;
        let r = lattice_data(s, &cd)?;
        if !r.coprime_flag {
            continue;
        }
        let (lam, b) = random_evaluation(rng, &cd, &r, 1);
        let chi = crate::classical::evaluation_epschar(&lam, &b, r.eps_star, &cd)?;
        let full = frobenius_pullback_char(&PullbackInput::Character(chi.clone()), &r, &cd, None)?;
        for j in connected_subsets(&cd) {
            total += 1;
            let o_j = cd.sub_diagram_o_sign(&j);
            let theta_j: Vec<u8> = o_j.iter().map(|&o| ((1 - o) / 2) as u8).collect();
            let mut restricted = restrict_nodes(&chi, &j);
            if !r.l_is_odd() && !cd.o_sign_matches_sub_diagram(&j) {
                restricted = sign_shift(&restricted, 1);
            }
            let rhs = pullback_with_theta(&restricted, &r, &theta_j, None)?;
            if restrict_nodes(&full, &j) != rhs {
                fails.push(format!("{t}{rank} s={s} {lam:?}@{b} J={j:?}"));
            }
        }
    }
    Ok(check("classical: pullback commutes with restriction to subdiagrams", fails, total))
}

/// Runs every suite with a fixed seed.
pub fn run_suite(seed: u64, cases: usize) -> Result<Vec<Check>> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    out.extend(ring_map_laws(&mut rng, cases)?);
    out.push(a_monomial_laws(&mut rng)?);
    out.extend(drinfeld_laws(&mut rng, cases)?);
    out.push(specialization_laws(&mut rng, cases)?);
    out.push(freudenthal_vs_weyl(2)?);
    out.push(fundamental_certification(&[
        (LieType::A, 1),
        (LieType::A, 2),
        (LieType::A, 3),
        (LieType::B, 2),
        (LieType::C, 2),
        (LieType::G, 2),
    ])?);
    out.extend(pullback_laws(&mut rng, cases)?);
    out.push(restriction_law(&mut rng, cases.min(20))?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let rows = run_suite(7, 24).unwrap();
        for row in &rows {
            assert!(row.passed, "{}: {}", row.name, row.detail);
        }
    }

    #[test]
    fn connected_subsets_of_a3() {
        let a3 = build_cartan(LieType::A, 3).unwrap();
        assert_eq!(connected_subsets(&a3).len(), 6);
    }
}
