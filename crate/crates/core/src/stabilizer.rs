//! Stabilizer codes from symplectic self-orthogonal additive codes.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::additive::{self, AdditiveCode, SymplecticVector};
use crate::distance::{Certificate, Distance, DistanceBudget, MinWeight};
use crate::error::CodeError;
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("generators {first} and {second} do not commute: ({u}) * ({v}) = {value}")]
    NotSelfOrthogonal { first: usize, second: usize, u: SymplecticVector, v: SymplecticVector, value: u32 },
    #[error("the code space is one-dimensional (K = 1); distance and parameters are undefined")]
    TrivialDimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    Exact,
    LowerBound,
    /// Taken from an external claim, not computed.
    Claimed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamDistance {
    pub value: usize,
    pub kind: DistanceKind,
}

impl ParamDistance {
    pub fn exact(value: usize) -> Self {
        ParamDistance { value, kind: DistanceKind::Exact }
    }

    pub fn at_least(value: usize) -> Self {
        ParamDistance { value, kind: DistanceKind::LowerBound }
    }

    pub fn claimed(value: usize) -> Self {
        ParamDistance { value, kind: DistanceKind::Claimed }
    }

    /// The same kind with a new value; claims become bounds once any rule
    /// has been applied to them.
    pub fn derived(&self, value: usize) -> Self {
        let kind = match self.kind {
            DistanceKind::Exact => DistanceKind::Exact,
            _ => DistanceKind::LowerBound,
        };
        ParamDistance { value, kind }
    }

    pub fn weakened(&self, value: usize) -> Self {
        ParamDistance { value, kind: DistanceKind::LowerBound }
    }

    pub fn certificate(&self) -> &'static str {
        match self.kind {
            DistanceKind::Exact => "exact",
            DistanceKind::LowerBound => "lower-bound",
            DistanceKind::Claimed => "claimed",
        }
    }
}

impl From<Distance> for ParamDistance {
    fn from(d: Distance) -> Self {
        match d.certificate {
            Certificate::Exact => ParamDistance::exact(d.value),
            Certificate::LowerBound => ParamDistance::at_least(d.value),
        }
    }
}

impl fmt::Display for ParamDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DistanceKind::Exact => write!(f, "{}", self.value),
            DistanceKind::LowerBound => write!(f, ">={}", self.value),
            DistanceKind::Claimed => write!(f, "{}*", self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Purity {
    /// `d = d_min(C*)`.
    Pure,
    /// `d_min(C*)` is at least the recorded distance (the two agree as
    /// bounds), which is all shortening needs.
    PureBound,
    Impure,
    Unknown,
}

impl Purity {
    pub fn allows_shortening(&self) -> bool {
        matches!(self, Purity::Pure | Purity::PureBound)
    }

    fn token(&self) -> &'static str {
        match self {
            Purity::Pure => "true",
            Purity::PureBound => "bound",
            Purity::Impure => "false",
            Purity::Unknown => "unknown",
        }
    }
}

/// `((n, K, d))_q` with purity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuantumParams {
    pub n: usize,
    pub q: u32,
    pub dimension: BigUint,
    /// The true dimension is at least `dimension`.
    pub dimension_bound: bool,
    pub distance: ParamDistance,
    pub purity: Purity,
}

impl QuantumParams {
    pub fn new(n: usize, q: u32, dimension: BigUint, distance: ParamDistance, purity: Purity) -> Self {
        QuantumParams { n, q, dimension, dimension_bound: false, distance, purity }
    }

    /// `[[n,k,d]]_q`
    pub fn linear(n: usize, q: u32, k: u32, distance: ParamDistance, purity: Purity) -> Self {
        Self::new(n, q, BigUint::from(q).pow(k), distance, purity)
    }

    /// `k` with `K = q^k`, when `K` is an exact power of `q`.
    pub fn k(&self) -> Option<u32> {
        let q = BigUint::from(self.q);
        let mut acc = BigUint::one();
        let mut k = 0;
        while acc < self.dimension {
            acc *= &q;
            k += 1;
        }
        (acc == self.dimension).then_some(k)
    }

    pub fn notation(&self) -> String {
        let d = self.distance;
        let bound = if self.dimension_bound { ">=" } else { "" };
        match self.k() {
            Some(k) if !self.dimension_bound => format!("[[{},{},{}]]_{}", self.n, k, d, self.q),
            _ => format!("(({},{bound}{},{}))_{}", self.n, self.dimension, d, self.q),
        }
    }

    /// `n=.. q=.. K=.. d=.. pure=..`
    pub fn key_values(&self) -> String {
        let bound = if self.dimension_bound { ">=" } else { "" };
        format!(
            "n={} q={} K={bound}{} d={} pure={}",
            self.n,
            self.q,
            self.dimension,
            self.distance.value,
            self.purity.token()
        )
    }

    pub fn dimension_u64(&self) -> Option<u64> {
        self.dimension.to_u64()
    }
}

impl fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let purity = match self.purity {
            Purity::Pure => " pure",
            Purity::PureBound => " pure-bound",
            Purity::Impure => " impure",
            Purity::Unknown => "",
        };
        write!(f, "{}{purity}", self.notation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "cannot parse parameters '{0}': expected [[n,k,d]]_q or ((n,K,d))_q, optionally followed by pure|pure-bound|impure"
)]
pub struct ParamsParseError(pub String);

impl FromStr for QuantumParams {
    type Err = ParamsParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParamsParseError(s.to_string());
        let mut parts = s.split_whitespace();
        let body = parts.next().ok_or_else(err)?;
        let purity = match parts.next() {
            None => Purity::Unknown,
            Some("pure") => Purity::Pure,
            Some("pure-bound") => Purity::PureBound,
            Some("impure") => Purity::Impure,
            Some(_) => return Err(err()),
        };
        if parts.next().is_some() {
            return Err(err());
        }
        let (inner, q, linear) = if let Some(rest) = body.strip_prefix("[[") {
            let (inner, q) = rest.split_once("]]_").ok_or_else(err)?;
            (inner, q, true)
        } else if let Some(rest) = body.strip_prefix("((") {
            let (inner, q) = rest.split_once("))_").ok_or_else(err)?;
            (inner, q, false)
        } else {
            return Err(err());
        };
        let q: u32 = q.parse().map_err(|_| err())?;
        let fields: Vec<&str> = inner.split(',').collect();
        let [n, k, d] = fields[..] else {
            return Err(err());
        };
        let n: usize = n.parse().map_err(|_| err())?;
        let (k, dimension_bound) = match k.strip_prefix(">=") {
            Some(rest) => (rest, true),
            None => (k, false),
        };
        let dimension = if linear {
            BigUint::from(q).pow(k.parse::<u32>().map_err(|_| err())?)
        } else {
            k.parse::<BigUint>().map_err(|_| err())?
        };
        let distance = if let Some(rest) = d.strip_prefix(">=") {
            ParamDistance::at_least(rest.parse().map_err(|_| err())?)
        } else if let Some(rest) = d.strip_suffix('*') {
            ParamDistance::claimed(rest.parse().map_err(|_| err())?)
        } else {
            ParamDistance::exact(d.parse().map_err(|_| err())?)
        };
        Ok(QuantumParams { n, q, dimension, dimension_bound, distance, purity })
    }
}

/// The two distances behind a stabilizer code's parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerDistance {
    /// Minimum weight over `C* \ C`.
    pub distance: Distance,
    /// A word of `C* \ C` of weight `distance`, when exact.
    pub witness: Option<SymplecticVector>,
    /// Minimum weight over `C* \ {0}`.
    pub normalizer: Distance,
    pub purity: Purity,
}

/// A stabilizer code given by its classical stabilizer code `C ⊆ C*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    code: AdditiveCode,
    normalizer: AdditiveCode,
}

impl StabilizerCode {
    pub fn from_classical(code: AdditiveCode) -> Result<Self, StabilizerError> {
        if let Err((i, j)) = code.self_orthogonality() {
            let gens = code.generators();
            let value = additive::symplectic_form(code.field(), &gens[i], &gens[j])?;
            return Err(StabilizerError::NotSelfOrthogonal {
                first: i,
                second: j,
                u: gens[i].clone(),
                v: gens[j].clone(),
                value,
            });
        }
        let normalizer = code.symplectic_dual();
        Ok(StabilizerCode { code, normalizer })
    }

    pub fn code(&self) -> &AdditiveCode {
        &self.code
    }

    pub fn normalizer(&self) -> &AdditiveCode {
        &self.normalizer
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.code.field()
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// `K = q^n / p^kappa`
    pub fn dimension(&self) -> BigUint {
        let f = self.field();
        let total = BigUint::from(f.order()).pow(self.len() as u32);
        total / self.code.size()
    }

    pub fn distances(&self, budget: &DistanceBudget) -> Result<StabilizerDistance, StabilizerError> {
        let split =
            self.normalizer.block_code().min_weight_split(self.code.expanded(), budget).map_err(CodeError::from)?;
        let normalizer = split.all.distance;
        let outside: MinWeight = split.outside.ok_or(StabilizerError::TrivialDimension)?;
        let distance = outside.distance;
        let witness = outside.witness.map(|d| additive::collapse(self.field(), &d));
        let purity = match (distance.is_exact(), normalizer.is_exact()) {
            (true, true) if distance.value == normalizer.value => Purity::Pure,
            (true, true) => Purity::Impure,
            (false, false) => Purity::PureBound,
            // some normalizer word is below the certified reach, none outside C
            (false, true) => Purity::Impure,
            (true, false) => unreachable!("outside words are a subset of all words"),
        };
        Ok(StabilizerDistance { distance, witness, normalizer, purity })
    }

    pub fn params(&self, budget: &DistanceBudget) -> Result<QuantumParams, StabilizerError> {
        let dimension = self.dimension();
        if dimension.is_one() {
            return Err(StabilizerError::TrivialDimension);
        }
        let d = self.distances(budget)?;
        Ok(QuantumParams::new(self.len(), self.field().order(), dimension, d.distance.into(), d.purity))
    }

    /// `(e * s_1, ..., e * s_kappa)` over the canonical generators.
    pub fn syndrome(&self, e: &SymplecticVector) -> Result<Vec<u32>, StabilizerError> {
        let f = self.field();
        let gens = self.code.generators();
        let mut out = Vec::with_capacity(gens.len());
        for s in &gens {
            out.push(additive::symplectic_form(f, e, s)?);
        }
        Ok(out)
    }

    /// True when `e ∈ C* \ C`: undetected and acting nontrivially.
    pub fn is_undetectable(&self, e: &SymplecticVector) -> Result<bool, StabilizerError> {
        Ok(self.normalizer.contains(e)? && !self.code.contains(e)?)
    }
}
