//! Characters of the subgroups `D_a^× = ϖ^{aZ} O_D^×` and irreducible
//! representations `Ind_{D_a^×}^{D^×}(χ ⊗ κ)`.
//!
//! A character is stored by its level `a`, its value `α` at `ϖ^a` as an
//! element of the prime-to-`p` part of `Q/Z`, and its effective exponent `M`:
//! on `k_D^×` it acts by `x ↦ x^M`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem, Params};
use crate::numth::{divisors, gcd, lcm, modulo, mul_mod, pow_mod};

/// `u/n ∈ Q/Z`, kept reduced with `0 ≤ u < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const TRIVIAL: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    pub fn new(u: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("root of unity with denominator 0".into()));
        }
        let num = modulo(u as i128, n);
        let g = gcd(num, n);
        Ok(RootOfUnity { num: num / g, den: n / g })
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// The multiplicative order.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_trivial(&self) -> bool {
        self.num == 0
    }

    pub fn is_prime_to(&self, p: u64) -> bool {
        gcd(self.den, p) == 1
    }

    pub fn add(&self, other: &RootOfUnity) -> RootOfUnity {
        let n = lcm(self.den, other.den);
        let u = self.num as u128 * (n / self.den) as u128 + other.num as u128 * (n / other.den) as u128;
        Self::reduced((u % n as u128) as u64, n)
    }

    pub fn neg(&self) -> RootOfUnity {
        Self::reduced((self.den - self.num) % self.den, self.den)
    }

    pub fn mul_int(&self, k: i64) -> RootOfUnity {
        let u = modulo(self.num as i128 * k as i128, self.den);
        Self::reduced(u, self.den)
    }

    /// The canonical `a`-th root `u/(an)`.
    pub fn root(&self, a: u64) -> RootOfUnity {
        Self::reduced(self.num, self.den * a)
    }

    fn reduced(num: u64, den: u64) -> RootOfUnity {
        let g = gcd(num, den);
        RootOfUnity { num: num / g, den: den / g }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a fraction u/n, got {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((u, n)) => {
                let u: i64 = u.trim().parse().map_err(|_| bad())?;
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                RootOfUnity::new(u, n)
            }
            None => {
                let u: i64 = s.parse().map_err(|_| bad())?;
                RootOfUnity::new(u, 1)
            }
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A smooth character of `D_a^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Character {
    params: Params,
    a: u32,
    alpha: RootOfUnity,
    m_eff: u64,
}

/// Outcome of [`Character::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validity {
    pub valid: bool,
    pub reason: Option<String>,
}

/// `(q^d - 1)/(q^a - 1)`.
fn norm_exponent(params: &Params, a: u32) -> u64 {
    (params.residue_order() - 1) / (params.q().pow(a) - 1)
}

impl Character {
    /// Builds without checking well-definedness; see [`Character::validate`].
    pub fn raw(params: Params, a: u32, alpha: RootOfUnity, m_eff: u64) -> Self {
        Character { params, a, alpha, m_eff: m_eff % params.unit_order() }
    }

    pub fn new(params: Params, a: u32, alpha: RootOfUnity, m_eff: u64) -> Result<Self> {
        let c = Self::raw(params, a, alpha, m_eff);
        match c.validate() {
            Validity { valid: true, .. } => Ok(c),
            Validity { reason, .. } => Err(Error::Precondition(reason.unwrap_or_default())),
        }
    }

    /// `χ_{a,α,m}`: `x ↦ Nm_{k_D/F_{q^a}}(x)^m` on `k_D^×`.
    pub fn from_surface(params: Params, a: u32, alpha: RootOfUnity, m: i64) -> Result<Self> {
        if a == 0 || params.d % a != 0 {
            return Err(Error::NotDivisor { a, d: params.d });
        }
        let big = modulo(m as i128, params.q().pow(a) - 1);
        let m_eff = mul_mod(big, norm_exponent(&params, a), params.unit_order());
        Self::new(params, a, alpha, m_eff)
    }

    pub fn trivial(params: Params, a: u32) -> Self {
        Self::raw(params, a, RootOfUnity::TRIVIAL, 0)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn level(&self) -> u32 {
        self.a
    }

    pub fn alpha(&self) -> RootOfUnity {
        self.alpha
    }

    /// Effective exponent `M mod q^d - 1`.
    pub fn exponent(&self) -> u64 {
        self.m_eff
    }

    /// Surface exponent `m mod q^a - 1` with `M = m (q^d-1)/(q^a-1)`.
    pub fn surface(&self) -> u64 {
        (self.m_eff / norm_exponent(&self.params, self.a)) % (self.params.q().pow(self.a) - 1)
    }

    pub fn validate(&self) -> Validity {
        let bad = |reason: String| Validity { valid: false, reason: Some(reason) };
        let d = self.params.d;
        if self.a == 0 || d % self.a != 0 {
            return bad(format!("level {} does not divide d = {d}", self.a));
        }
        if !self.alpha.is_prime_to(self.params.p) {
            return bad(format!("alpha = {} has order divisible by p = {}", self.alpha, self.params.p));
        }
        let e = norm_exponent(&self.params, self.a);
        if self.m_eff % e != 0 {
            return bad(format!("(q^d-1)/(q^a-1) = {e} does not divide M = {}", self.m_eff));
        }
        Validity { valid: true, reason: None }
    }

    pub fn is_trivial(&self) -> bool {
        self.m_eff == 0 && self.alpha.is_trivial()
    }

    /// Restriction to `D_{a'}^×` for `a | a' | d`.
    pub fn restrict(&self, a2: u32) -> Result<Character> {
        if a2 == 0 || a2 % self.a != 0 || self.params.d % a2 != 0 {
            return Err(Error::NotDivisor { a: a2, d: self.params.d });
        }
        Ok(Character {
            a: a2,
            alpha: self.alpha.mul_int((a2 / self.a) as i64),
            ..*self
        })
    }

    /// `χ^s` for `s = ϖ^i`: `M ↦ M q^{r(d-1)i}`.
    pub fn conjugate(&self, i: i64) -> Character {
        let d = self.params.d as i64;
        let k = self.params.r as u64 * (d as u64 - 1) * i.rem_euclid(d) as u64;
        let n = self.params.unit_order();
        Character { m_eff: mul_mod(self.m_eff, pow_mod(self.params.q(), k, n), n), ..*self }
    }

    pub fn tensor(&self, other: &Character) -> Result<Character> {
        if self.a != other.a {
            return Err(Error::LevelMismatch(self.a, other.a));
        }
        let n = self.params.unit_order();
        Ok(Character {
            alpha: self.alpha.add(&other.alpha),
            m_eff: (self.m_eff + other.m_eff) % n,
            ..*self
        })
    }

    pub fn dual(&self) -> Character {
        let n = self.params.unit_order();
        Character { alpha: self.alpha.neg(), m_eff: (n - self.m_eff) % n, ..*self }
    }

    /// Value at `ϖ^{an}[x]`, as an element of `Q/Z`.
    pub fn evaluate(&self, k: &FieldSpec, n: i64, x: FqElem) -> Result<RootOfUnity> {
        let order = self.params.unit_order();
        let l = k.dlog(x)?;
        let kd = RootOfUnity::new(mul_mod(self.m_eff, l, order) as i64, order)?;
        Ok(self.alpha.mul_int(n).add(&kd))
    }

    /// Least `a' | d` with `M q^{ra'} ≡ M`.
    pub fn order(&self) -> u32 {
        exponent_order(&self.params, self.m_eff)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "alpha": self.alpha.to_string(),
            "m": self.surface(),
            "M": self.m_eff,
        })
    }

    /// Accepts either `"M"` or the surface `"m"`; `"alpha"` defaults to trivial.
    pub fn from_json(params: Params, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("character: {what}"));
        let a = v.get("a").and_then(Value::as_u64).ok_or_else(|| bad("missing level \"a\""))? as u32;
        let alpha = match v.get("alpha") {
            None | Some(Value::Null) => RootOfUnity::TRIVIAL,
            Some(Value::String(s)) => s.parse()?,
            Some(Value::Number(n)) => RootOfUnity::new(n.as_i64().ok_or_else(|| bad("alpha"))?, 1)?,
            Some(_) => return Err(bad("alpha must be a string u/n")),
        };
        if let Some(m_eff) = v.get("M") {
            let m_eff = m_eff.as_i64().ok_or_else(|| bad("\"M\" must be an integer"))?;
            let c = Self::new(params, a, alpha, modulo(m_eff as i128, params.unit_order()))?;
            if let Some(m) = v.get("m").and_then(Value::as_i64) {
                let mm = modulo(m as i128, params.q().pow(a) - 1);
                if mm != c.surface() {
                    return Err(bad("\"m\" and \"M\" disagree"));
                }
            }
            return Ok(c);
        }
        let m = v.get("m").and_then(Value::as_i64).ok_or_else(|| bad("need \"M\" or \"m\""))?;
        Self::from_surface(params, a, alpha, m)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ[a={}, α={}, m={}, M={}]", self.a, self.alpha, self.surface(), self.m_eff)
    }
}

/// Least `a | d` with `M q^{ra} ≡ M mod q^d - 1`.
pub fn exponent_order(params: &Params, m_eff: u64) -> u32 {
    let n = params.unit_order();
    let q = params.q();
    divisors(params.d)
        .into_iter()
        .find(|&a| mul_mod(m_eff, pow_mod(q, (params.r * a) as u64, n), n) == m_eff % n)
        .unwrap_or(params.d)
}

/// Level-`d` character extended from `x ↦ (σ(x)/x)^{p^i}`, or from
/// `x ↦ (x/σ(x))^{p^i}` when dualized.
pub fn eta_character(params: Params, i: i64, dualized: bool) -> Character {
    let n = params.unit_order();
    let df = params.degree() as i64;
    let pi = pow_mod(params.p, i.rem_euclid(df) as u64, n);
    let base = (pow_mod(params.q(), params.r as u64, n) + n - 1) % n;
    let m_eff = mul_mod(pi, base, n);
    let c = Character::raw(params, params.d, RootOfUnity::TRIVIAL, m_eff);
    if dualized {
        c.dual()
    } else {
        c
    }
}

/// Exponents `i` with `s = ϖ^i` running over `D_{a'}^× \ D^× / D_a^×`.
pub fn double_cosets(a: u32, a2: u32) -> Vec<u32> {
    (0..gcd(a, a2)).collect()
}

/// Every valid level-`a` exponent `M`, in increasing order.
pub fn level_exponents(params: &Params, a: u32) -> Vec<u64> {
    let e = norm_exponent(params, a);
    (0..params.q().pow(a) - 1).map(|m| m * e).collect()
}

/// `Ind_{D_a^×}^{D^×}(χ ⊗ κ)` with `χ` of order exactly `a` on `k_D^×` and
/// trivial at `ϖ^a`, and `κ = χ_{a,α,0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Irrep {
    chi: Character,
    kappa: Character,
}

impl Irrep {
    pub fn new(chi: Character, kappa: Character) -> Result<Self> {
        if chi.level() != kappa.level() {
            return Err(Error::LevelMismatch(chi.level(), kappa.level()));
        }
        for c in [&chi, &kappa] {
            if let Validity { valid: false, reason } = c.validate() {
                return Err(Error::Precondition(reason.unwrap_or_default()));
            }
        }
        if kappa.exponent() != 0 {
            return Err(Error::Precondition("κ must be trivial on k_D^×".into()));
        }
        if !chi.alpha().is_trivial() {
            return Err(Error::Precondition("χ must be trivial at ϖ^a; put α into κ".into()));
        }
        if chi.order() != chi.level() {
            return Err(Error::Precondition(format!(
                "χ has order {} on k_D^×, expected the level {}",
                chi.order(),
                chi.level()
            )));
        }
        Ok(Irrep { chi, kappa })
    }

    /// From `(a, M, α)` with `χ = x ↦ x^M` and `κ = χ_{a,α,0}`.
    pub fn from_parts(params: Params, a: u32, m_eff: u64, alpha: RootOfUnity) -> Result<Self> {
        let chi = Character::new(params, a, RootOfUnity::TRIVIAL, m_eff)?;
        let kappa = Character::new(params, a, alpha, 0)?;
        Irrep::new(chi, kappa)
    }

    pub fn trivial(params: Params) -> Self {
        Irrep { chi: Character::trivial(params, 1), kappa: Character::trivial(params, 1) }
    }

    pub fn level(&self) -> u32 {
        self.chi.level()
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn kappa(&self) -> &Character {
        &self.kappa
    }

    /// `χ ⊗ κ` as a character of `D_a^×`.
    pub fn inducing_character(&self) -> Character {
        self.chi.tensor(&self.kappa).expect("same level")
    }

    /// Dimension `[D^× : D_a^×] = a`.
    pub fn dim(&self) -> u32 {
        self.level()
    }

    /// `M` replaced by the least element of its `q^r`-orbit.
    pub fn canonical(&self) -> Irrep {
        let c = &self.chi;
        let best = (0..c.level() as i64).map(|i| c.conjugate(i).exponent()).min().unwrap_or(0);
        Irrep { chi: Character { m_eff: best, ..*c }, kappa: self.kappa }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// `π ⊗ ρ` for a character `ρ` of `D^×`.
    pub fn twist(&self, rho: &Character) -> Result<Irrep> {
        if rho.level() != 1 {
            return Err(Error::Precondition("twists are characters of D^× (level 1)".into()));
        }
        let r = rho.restrict(self.level())?;
        let n = self.chi.params.unit_order();
        let chi = Character { m_eff: (self.chi.m_eff + r.m_eff) % n, ..self.chi };
        let kappa = Character { alpha: self.kappa.alpha.add(&r.alpha), ..self.kappa };
        Irrep::new(chi, kappa)
    }

    /// The contragredient `Ind(χ* ⊗ κ*)`.
    pub fn dual(&self) -> Irrep {
        Irrep { chi: self.chi.dual(), kappa: self.kappa.dual() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.level(),
            "chi": self.chi.to_json(),
            "kappa": self.kappa.to_json(),
            "canonical": self.is_canonical(),
        })
    }

    pub fn from_json(params: Params, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("irrep: {what}"));
        // Flat form `{"a", "M" or "m", "alpha"}`: χ from the exponent, κ from α.
        let Some(chi) = v.get("chi") else {
            let c = Character::from_json(params, v)?;
            return Irrep::from_parts(params, c.level(), c.exponent(), c.alpha());
        };
        let chi = Character::from_json(params, chi)?;
        let kappa = match v.get("kappa") {
            Some(k) => Character::from_json(params, k)?,
            None => Character::trivial(params, chi.level()),
        };
        if let Some(a) = v.get("a").and_then(Value::as_u64) {
            if a as u32 != chi.level() {
                return Err(bad("\"a\" disagrees with the level of \"chi\""));
            }
        }
        Irrep::new(chi, kappa)
    }
}

impl Serialize for Irrep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `V_{χ,κ} ≅ V_{χ',κ'}`.
pub fn irrep_iso(pi: &Irrep, pi2: &Irrep) -> bool {
    pi.canonical() == pi2.canonical()
}

/// One entry per double coset `s = ϖ^i`: the level-`lcm(a,a')` character
/// `Res(χ'κ') ⊗ (Res(χκ)^s)^*`.
pub fn reduce_pair(pi: &Irrep, pi2: &Irrep) -> Vec<(u32, u32, Character)> {
    let l = lcm(pi.level(), pi2.level());
    let src = pi.inducing_character().restrict(l).expect("lcm divides d");
    let dst = pi2.inducing_character().restrict(l).expect("lcm divides d");
    double_cosets(pi.level(), pi2.level())
        .into_iter()
        .map(|i| (i, l, dst.tensor(&src.conjugate(i as i64).dual()).expect("same level")))
        .collect()
}

/// Every canonical irrep with `κ`'s `α` drawn from `alphas`.
pub fn canonical_irreps(params: Params, alphas: &[RootOfUnity]) -> Result<Vec<Irrep>> {
    let mut out = Vec::new();
    for a in divisors(params.d) {
        for m_eff in level_exponents(&params, a) {
            if exponent_order(&params, m_eff) != a {
                continue;
            }
            for &alpha in alphas {
                let pi = Irrep::from_parts(params, a, m_eff, alpha)?;
                if pi.is_canonical() {
                    out.push(pi);
                }
            }
        }
    }
    Ok(out)
}

/// Every valid character of level `a` with `α` of order dividing one of `orders`.
pub fn level_characters(params: Params, a: u32, orders: &[u64]) -> Result<Vec<Character>> {
    let mut alphas: Vec<RootOfUnity> = Vec::new();
    for &n in orders {
        if gcd(n, params.p) != 1 {
            continue;
        }
        for u in 0..n {
            let z = RootOfUnity::new(u as i64, n)?;
            if !alphas.contains(&z) {
                alphas.push(z);
            }
        }
    }
    alphas.sort();
    let mut out = Vec::new();
    for m_eff in level_exponents(&params, a) {
        for &alpha in &alphas {
            out.push(Character::new(params, a, alpha, m_eff)?);
        }
    }
    Ok(out)
}
