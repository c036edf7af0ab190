//! Root-of-unity lattice data and formal spectral parameters.
//!
//! A spectral parameter is a formal point `a * eps^k`: a named base orbit and
//! an integer exponent. Distinct base names are treated as multiplicatively
//! independent, so equality is decidable without evaluating anything.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::error::{Error, Result};

/// Generic `q`, or a primitive root of unity of order `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Generic,
    RootOfUnity(u32),
}

impl Mode {
    pub fn root_of_unity(s: i64) -> Result<Mode> {
        if s < 1 || s > u32::MAX as i64 {
            return Err(Error::InvalidOrder(s));
        }
        Ok(Mode::RootOfUnity(s as u32))
    }

    pub fn order(self) -> Option<u32> {
        match self {
            Mode::Generic => None,
            Mode::RootOfUnity(s) => Some(s),
        }
    }

    pub fn reduce(self, k: i64) -> i64 {
        match self {
            Mode::Generic => k,
            Mode::RootOfUnity(s) => k.rem_euclid(s as i64),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Generic => write!(f, "generic"),
            Mode::RootOfUnity(s) => write!(f, "s={s}"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("generic") {
            return Ok(Mode::Generic);
        }
        let digits = t.strip_prefix("s=").unwrap_or(t);
        let n: i64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad mode '{s}' (expected 'generic' or s=N)")))?;
        Mode::root_of_unity(n)
    }
}

/// The formal point `base * eps^k` (or `base * q^k` in generic mode).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpectralParameter {
    base: Arc<str>,
    k: i64,
    mode: Mode,
}

impl SpectralParameter {
    pub fn new(base: impl AsRef<str>, k: i64, mode: Mode) -> Self {
        SpectralParameter {
            base: Arc::from(base.as_ref()),
            k: mode.reduce(k),
            mode,
        }
    }

    pub fn generic(base: impl AsRef<str>, k: i64) -> Self {
        Self::new(base, k, Mode::Generic)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Multiplication by `eps^d`.
    pub fn shift(&self, d: i64) -> Self {
        SpectralParameter {
            base: self.base.clone(),
            k: self.mode.reduce(self.k + d),
            mode: self.mode,
        }
    }

    /// Same point viewed in another mode (exponent reduced if needed).
    pub fn with_mode(&self, mode: Mode) -> Self {
        SpectralParameter {
            base: self.base.clone(),
            k: mode.reduce(self.k),
            mode,
        }
    }

    pub fn with_base(&self, base: impl AsRef<str>) -> Self {
        SpectralParameter::new(base, self.k, self.mode)
    }

    pub fn same_base(&self, other: &SpectralParameter) -> bool {
        self.base == other.base
    }
}

impl Ord for SpectralParameter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.k.cmp(&other.k))
            .then(self.mode.cmp(&other.mode))
    }
}

impl PartialOrd for SpectralParameter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SpectralParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.base, self.k)
    }
}

/// Parses `base@k` (or a bare `base`, meaning `k = 0`).
pub fn parse_param(text: &str, mode: Mode) -> Result<SpectralParameter> {
    let t = text.trim();
    let (base, k) = match t.rfind('@') {
        Some(pos) => {
            let k: i64 = t[pos + 1..]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in parameter '{t}'")))?;
            (t[..pos].trim(), k)
        }
        None => (t, 0),
    };
    validate_base(base)?;
    Ok(SpectralParameter::new(base, k, mode))
}

pub(crate) fn validate_base(base: &str) -> Result<()> {
    if base.is_empty() {
        return Err(Error::Parse("empty base name".into()));
    }
    if base
        .chars()
        .any(|c| c.is_whitespace() || matches!(c, ',' | '@' | '[' | ']' | '(' | ')' | '*' | ';' | ':'))
    {
        return Err(Error::Parse(format!("invalid character in base name '{base}'")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StarSign {
    Plus,
    Minus,
}

impl StarSign {
    pub fn value(self) -> i8 {
        match self {
            StarSign::Plus => 1,
            StarSign::Minus => -1,
        }
    }
}

/// Lattice data attached to a primitive `s`-th root of unity `eps`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnityData {
    pub s: u32,
    /// Order of `eps^2`.
    pub l: u32,
    /// Order of `eps_i^2 = eps^(2 r_i)`.
    pub l_per_node: Vec<u32>,
    pub eps_star: StarSign,
    /// `gcd(l, r^vee) == 1`.
    pub coprime_flag: bool,
    pub r: Vec<u32>,
}

pub fn lattice_data(s: i64, cd: &CartanData) -> Result<RootOfUnityData> {
    if s < 1 || s > u32::MAX as i64 {
        return Err(Error::InvalidOrder(s));
    }
    let s = s as u64;
    let l = if s % 2 == 1 { s } else { s / 2 };
    let l_per_node = cd
        .r
        .iter()
        .map(|&ri| (s / (2 * ri as u64).gcd(&s)) as u32)
        .collect();
    let eps_star = if (l * l) % s == 0 {
        StarSign::Plus
    } else {
        StarSign::Minus
    };
    Ok(RootOfUnityData {
        s: s as u32,
        l: l as u32,
        l_per_node,
        eps_star,
        coprime_flag: (l as u32).gcd(&cd.r_vee) == 1,
        r: cd.r.clone(),
    })
}

impl RootOfUnityData {
    pub fn mode(&self) -> Mode {
        Mode::RootOfUnity(self.s)
    }

    /// Mode of the target lattice of the Frobenius power map: points
    /// `b * (-1)^t`, `t in {0, 1}`. When `eps* = -1` this is exactly the
    /// `eps*`-lattice; when `eps* = +1` the second point is `-b`.
    pub fn star_mode(&self) -> Mode {
        Mode::RootOfUnity(2)
    }

    pub fn l_i(&self, i: usize) -> u32 {
        self.l_per_node[i]
    }

    /// Exponent step of an `eps_i^2`-orbit.
    pub fn step(&self, i: usize) -> i64 {
        2 * self.r[i] as i64
    }

    /// Order of `eps_i = eps^(r_i)`.
    pub fn eps_i_order(&self, i: usize) -> u32 {
        self.s / self.s.gcd(&self.r[i])
    }

    pub fn l_is_odd(&self) -> bool {
        self.l % 2 == 1
    }

    pub fn require_coprime(&self) -> Result<()> {
        if self.coprime_flag {
            Ok(())
        } else {
            Err(Error::TwistedTarget)
        }
    }

    /// Sign-lattice exponents that have an `l`-th root on the `eps`-lattice.
    pub fn allowed_star_exponents(&self) -> &'static [i64] {
        if self.s % 2 == 0 {
            &[0, 1]
        } else {
            &[0]
        }
    }

    /// Shift on the sign lattice that corresponds to multiplication by `eps*`.
    pub fn eps_star_step(&self) -> i64 {
        match self.eps_star {
            StarSign::Plus => 0,
            StarSign::Minus => 1,
        }
    }
}

/// Multiplication by `eps^d`.
pub fn param_shift(p: &SpectralParameter, d: i64) -> SpectralParameter {
    p.shift(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusDirection {
    /// `a * eps^k  ->  (a^l) * (eps^k)^l` on the sign lattice.
    Power,
    /// `b * (-1)^t  ->  b^(1/l) * eps^e` with `(eps^e)^l = (-1)^t`.
    Root,
}

pub fn power_name(base: &str, l: u32) -> String {
    let suffix = format!("^{{1/{l}}}");
    match base.strip_suffix(&suffix) {
        Some(stem) if !stem.is_empty() => stem.to_string(),
        _ => format!("{base}^{l}"),
    }
}

pub fn root_name(base: &str, l: u32) -> String {
    let suffix = format!("^{l}");
    match base.strip_suffix(&suffix) {
        Some(stem) if !stem.is_empty() && !stem.ends_with('^') => stem.to_string(),
        _ => format!("{base}^{{1/{l}}}"),
    }
}

/// Formal `l`-th power / `l`-th root of a spectral parameter.
pub fn frobenius_param_map(
    p: &SpectralParameter,
    r: &RootOfUnityData,
    direction: FrobeniusDirection,
) -> Result<SpectralParameter> {
    frobenius_param_map_named(p, r, direction, None)
}

/// As [`frobenius_param_map`], with an explicit name for the resulting base.
pub fn frobenius_param_map_named(
    p: &SpectralParameter,
    r: &RootOfUnityData,
    direction: FrobeniusDirection,
    name: Option<&str>,
) -> Result<SpectralParameter> {
    r.require_coprime()?;
    match direction {
        FrobeniusDirection::Power => {
            if p.mode() != r.mode() {
                return Err(Error::ModeMismatch {
                    left: p.mode(),
                    right: r.mode(),
                });
            }
            // (eps^k)^l = (-1)^k when s = 2l, and 1 when s = l.
            let t = if r.s % 2 == 0 { p.k().rem_euclid(2) } else { 0 };
            let base = name.map(str::to_string).unwrap_or_else(|| power_name(p.base(), r.l));
            Ok(SpectralParameter::new(base, t, r.star_mode()))
        }
        FrobeniusDirection::Root => {
            if p.mode() != r.star_mode() {
                return Err(Error::ModeMismatch {
                    left: p.mode(),
                    right: r.star_mode(),
                });
            }
            let t = p.k();
            if !r.allowed_star_exponents().contains(&t) {
                return Err(Error::MalformedStarExponent {
                    t,
                    allowed: format!("{:?}", r.allowed_star_exponents()),
                });
            }
            let e = if r.l_is_odd() { r.l as i64 * t } else { t };
            let base = name.map(str::to_string).unwrap_or_else(|| root_name(p.base(), r.l));
            Ok(SpectralParameter::new(base, e, r.mode()))
        }
    }
}
