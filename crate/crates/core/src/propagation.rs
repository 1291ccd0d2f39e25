//! Propagation rules on quantum code parameters, an append-only ledger of
//! derivations, and the constructive shortening of stabilizer codes.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::distance::DistanceBudget;
use crate::field::prime_power;
use crate::stabilizer::{
    DistanceKind, ParamDistance, ParamsParseError, Purity, QuantumParams, StabilizerCode, StabilizerError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("new dimension {new} must satisfy 1 < K' <= {old}")]
    SubcodeDimension { new: BigUint, old: BigUint },
    #[error("rule needs distance > 1, found {0}")]
    DistanceTooSmall(usize),
    #[error("new length {new} is smaller than {old}")]
    ShorterLength { new: usize, old: usize },
    #[error("alphabet sizes differ: {0} and {1}")]
    AlphabetMismatch(u32, u32),
    #[error("alphabet {q} is not an m-th power with m = {m} > 1")]
    NotExpandable { q: u32, m: u32 },
    #[error("shortening needs a pure code (purity is {0:?})")]
    NotPure(Purity),
    #[error("cannot shorten {s} positions of a length-{n} code")]
    TooManyPositions { s: usize, n: usize },
    #[error("no puncture-code word of weight {0} is certified")]
    NoPunctureWord(usize),
    #[error("record {0} does not exist")]
    UnknownRecord(usize),
    #[error("rule {rule} takes {expected} parent(s), got {found}")]
    Parents { rule: String, expected: usize, found: usize },
    #[error("record {id} does not replay: stored {stored}, recomputed {recomputed}")]
    Replay { id: usize, stored: String, recomputed: String },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error("ledger line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// `((n,K,d)) → ((n,K',d))` for `1 < K' ≤ K`.
pub fn subcode_rule(r: &QuantumParams, k_new: &BigUint) -> Result<QuantumParams, RuleError> {
    if *k_new <= BigUint::one() || *k_new > r.dimension {
        return Err(RuleError::SubcodeDimension { new: k_new.clone(), old: r.dimension.clone() });
    }
    if r.distance.value <= 1 {
        return Err(RuleError::DistanceTooSmall(r.distance.value));
    }
    if *k_new == r.dimension {
        return Ok(r.clone());
    }
    // a larger stabilizer has a smaller normalizer, so d_min(C*) can only grow
    let purity = if r.purity.allows_shortening() { Purity::PureBound } else { Purity::Unknown };
    Ok(QuantumParams { dimension: k_new.clone(), distance: r.distance.derived(r.distance.value), purity, ..r.clone() })
}

/// `((n,K,d)) → ((n',K,d))` for `n' ≥ n`; the result is impure.
pub fn lengthen_rule(r: &QuantumParams, n_new: usize) -> Result<QuantumParams, RuleError> {
    if n_new < r.n {
        return Err(RuleError::ShorterLength { new: n_new, old: r.n });
    }
    if n_new == r.n {
        return Ok(r.clone());
    }
    Ok(QuantumParams { n: n_new, distance: r.distance.derived(r.distance.value), purity: Purity::Impure, ..r.clone() })
}

/// `((n,K,d)) → ((n−1,K,d−1))`
pub fn puncture_rule(r: &QuantumParams) -> Result<QuantumParams, RuleError> {
    if r.distance.value <= 1 {
        return Err(RuleError::DistanceTooSmall(r.distance.value));
    }
    Ok(QuantumParams {
        n: r.n - 1,
        distance: r.distance.derived(r.distance.value - 1),
        purity: Purity::Unknown,
        ..r.clone()
    })
}

/// `((n_1,K_1,d_1)) ⊗ ((n_2,K_2,d_2)) → ((n_1+n_2, K_1K_2, min(d_1,d_2)))`
pub fn tensor_rule(r1: &QuantumParams, r2: &QuantumParams) -> Result<QuantumParams, RuleError> {
    if r1.q != r2.q {
        return Err(RuleError::AlphabetMismatch(r1.q, r2.q));
    }
    let d = r1.distance.value.min(r2.distance.value);
    let kind = if r1.distance.kind == DistanceKind::Exact && r2.distance.kind == DistanceKind::Exact {
        DistanceKind::Exact
    } else {
        DistanceKind::LowerBound
    };
    let purity = match (r1.purity, r2.purity) {
        (Purity::Pure, Purity::Pure) => Purity::Pure,
        (a, b) if a.allows_shortening() && b.allows_shortening() => Purity::PureBound,
        _ => Purity::Unknown,
    };
    Ok(QuantumParams {
        n: r1.n + r2.n,
        q: r1.q,
        dimension: &r1.dimension * &r2.dimension,
        dimension_bound: r1.dimension_bound || r2.dimension_bound,
        distance: ParamDistance { value: d, kind },
        purity,
    })
}

/// `((n,K,d))_{r^m} → ((mn,K,≥d))_r`
pub fn expand_field_rule(r: &QuantumParams, m: u32) -> Result<QuantumParams, RuleError> {
    let bad = || RuleError::NotExpandable { q: r.q, m };
    if m <= 1 {
        return Err(bad());
    }
    let (p, e) = prime_power(r.q).ok_or_else(bad)?;
    if e % m != 0 {
        return Err(bad());
    }
    Ok(QuantumParams {
        n: r.n * m as usize,
        q: p.pow(e / m),
        distance: ParamDistance::at_least(r.distance.value),
        purity: Purity::Unknown,
        ..r.clone()
    })
}

/// `((n,K,d)) → ((n−1,qK,d−1))` for pure codes with `d > 1`.
pub fn shorten_stabilizer_rule(r: &QuantumParams) -> Result<QuantumParams, RuleError> {
    if !r.purity.allows_shortening() {
        return Err(RuleError::NotPure(r.purity));
    }
    if r.distance.value <= 1 {
        return Err(RuleError::DistanceTooSmall(r.distance.value));
    }
    Ok(QuantumParams {
        n: r.n - 1,
        dimension: &r.dimension * BigUint::from(r.q),
        distance: r.distance.weakened(r.distance.value - 1),
        purity: Purity::PureBound,
        ..r.clone()
    })
}

/// Shortens the classical stabilizer code at `pos`. The input must be pure
/// with `d > 1` (checked with `budget`); the result has dimension `qK`.
pub fn shorten_stabilizer(
    code: &StabilizerCode,
    pos: usize,
    budget: &DistanceBudget,
) -> Result<StabilizerCode, RuleError> {
    let d = code.distances(budget)?;
    if !d.purity.allows_shortening() {
        return Err(RuleError::NotPure(d.purity));
    }
    if d.distance.value <= 1 {
        return Err(RuleError::DistanceTooSmall(d.distance.value));
    }
    let shortened = code.code().shorten_at(&[pos]).map_err(StabilizerError::from)?;
    Ok(StabilizerCode::from_classical(shortened)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Root,
    Subcode {
        dimension: BigUint,
    },
    Lengthen {
        n: usize,
    },
    Puncture,
    Tensor,
    ExpandField {
        m: u32,
    },
    ShortenStabilizer,
    /// Shortening through a certified puncture-code word of weight `n − s`.
    ShortenPuncture {
        s: usize,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Root => "root",
            Rule::Subcode { .. } => "subcode",
            Rule::Lengthen { .. } => "lengthen",
            Rule::Puncture => "puncture",
            Rule::Tensor => "tensor",
            Rule::ExpandField { .. } => "expand-field",
            Rule::ShortenStabilizer => "shorten-stabilizer",
            Rule::ShortenPuncture { .. } => "shorten-puncture",
        }
    }

    fn parents(&self) -> usize {
        match self {
            Rule::Root => 0,
            Rule::Tensor => 2,
            _ => 1,
        }
    }

    /// What the rule states, for the ledger's reference column.
    pub fn reference(&self) -> &'static str {
        match self {
            Rule::Root => "seed parameters",
            Rule::Subcode { .. } => "subcode: ((n,K,d)) gives ((n,K',d)) for 1<K'<=K",
            Rule::Lengthen { .. } => "lengthening: ((n,K,d)) gives an impure ((n',K,d)) for n'>=n",
            Rule::Puncture => "puncturing: ((n,K,d)) gives ((n-1,K,d-1))",
            Rule::Tensor => "tensor product: distances combine by minimum",
            Rule::ExpandField { .. } => "field expansion: error weight does not decrease",
            Rule::ShortenStabilizer => "shortening a pure stabilizer code: ((n-1,qK,d-1)), n+k preserved",
            Rule::ShortenPuncture { .. } => "puncture-code word of weight n-s: ((n-s,>=K/q^s,d))",
        }
    }

    pub fn apply(&self, parents: &[&QuantumParams]) -> Result<QuantumParams, RuleError> {
        if parents.len() != self.parents() || matches!(self, Rule::Root) {
            return Err(RuleError::Parents {
                rule: self.name().to_string(),
                expected: self.parents(),
                found: parents.len(),
            });
        }
        let r = parents[0];
        match self {
            Rule::Root => unreachable!(),
            Rule::Subcode { dimension } => subcode_rule(r, dimension),
            Rule::Lengthen { n } => lengthen_rule(r, *n),
            Rule::Puncture => puncture_rule(r),
            Rule::Tensor => tensor_rule(r, parents[1]),
            Rule::ExpandField { m } => expand_field_rule(r, *m),
            Rule::ShortenStabilizer => shorten_stabilizer_rule(r),
            Rule::ShortenPuncture { s } => crate::puncture::shorten_params(r, *s, true),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Subcode { dimension } => write!(f, "subcode(K={dimension})"),
            Rule::Lengthen { n } => write!(f, "lengthen(n={n})"),
            Rule::ExpandField { m } => write!(f, "expand-field(m={m})"),
            Rule::ShortenPuncture { s } => write!(f, "shorten-puncture(s={s})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, arg) = match s.split_once('(') {
            Some((name, rest)) => {
                let arg = rest.strip_suffix(')').ok_or_else(|| format!("unbalanced parenthesis in '{s}'"))?;
                let (_, v) = arg.split_once('=').ok_or_else(|| format!("expected key=value in '{s}'"))?;
                (name, Some(v.trim()))
            }
            None => (s, None),
        };
        let need = || arg.ok_or_else(|| format!("rule '{name}' needs an argument"));
        let num = |v: &str| v.parse::<usize>().map_err(|_| format!("bad number '{v}'"));
        Ok(match name {
            "root" => Rule::Root,
            "subcode" => Rule::Subcode { dimension: need()?.parse().map_err(|_| format!("bad dimension in '{s}'"))? },
            "lengthen" => Rule::Lengthen { n: num(need()?)? },
            "puncture" => Rule::Puncture,
            "tensor" => Rule::Tensor,
            "expand-field" => Rule::ExpandField { m: num(need()?)? as u32 },
            "shorten-stabilizer" => Rule::ShortenStabilizer,
            "shorten-puncture" => Rule::ShortenPuncture { s: num(need()?)? },
            _ => return Err(format!("unknown rule '{name}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRecord {
    pub id: usize,
    pub params: QuantumParams,
    pub rule: Rule,
    pub parents: Vec<usize>,
    pub reference: String,
}

impl fmt::Display for ParamRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parents = if self.parents.is_empty() {
            "-".to_string()
        } else {
            self.parents.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        };
        write!(f, "{} | {} | {} | {} | {}", self.id, self.params, self.rule, parents, self.reference)
    }
}

/// Append-only store of parameter records. Appends serialize on a write
/// lock; reads run concurrently.
#[derive(Debug, Default)]
pub struct Ledger {
    records: RwLock<Vec<ParamRecord>>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn root(&self, params: QuantumParams, reference: &str) -> usize {
        let mut recs = self.records.write().expect("ledger lock");
        let id = recs.len();
        recs.push(ParamRecord { id, params, rule: Rule::Root, parents: Vec::new(), reference: reference.to_string() });
        id
    }

    pub fn apply(&self, rule: Rule, parents: &[usize]) -> Result<usize, RuleError> {
        let mut recs = self.records.write().expect("ledger lock");
        let ps: Vec<&QuantumParams> = parents
            .iter()
            .map(|&p| recs.get(p).map(|r| &r.params).ok_or(RuleError::UnknownRecord(p)))
            .collect::<Result<_, _>>()?;
        let params = rule.apply(&ps)?;
        let id = recs.len();
        let reference = rule.reference().to_string();
        recs.push(ParamRecord { id, params, rule, parents: parents.to_vec(), reference });
        Ok(id)
    }

    pub fn get(&self, id: usize) -> Option<ParamRecord> {
        self.records.read().expect("ledger lock").get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.records.read().expect("ledger lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn records(&self) -> Vec<ParamRecord> {
        self.records.read().expect("ledger lock").clone()
    }

    /// Recomputes every derived record from its parents.
    pub fn replay(&self) -> Result<(), RuleError> {
        let recs = self.records.read().expect("ledger lock");
        for r in recs.iter().filter(|r| r.rule != Rule::Root) {
            let ps: Vec<&QuantumParams> = r
                .parents
                .iter()
                .map(|&p| if p < r.id { Ok(&recs[p].params) } else { Err(RuleError::UnknownRecord(p)) })
                .collect::<Result<_, _>>()?;
            let again = r.rule.apply(&ps)?;
            if again != r.params {
                return Err(RuleError::Replay {
                    id: r.id,
                    stored: r.params.to_string(),
                    recomputed: again.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.records().iter().map(|r| format!("{r}\n")).collect()
    }

    /// Parses ledger lines; derived records are replayed before returning.
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let mut recs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: String| RuleError::Parse { line: i + 1, message };
            let cols: Vec<&str> = line.splitn(5, '|').map(str::trim).collect();
            let [id, params, rule, parents, reference] = cols[..] else {
                return Err(perr("expected 5 columns".into()));
            };
            let id: usize = id.parse().map_err(|_| perr(format!("bad id '{id}'")))?;
            if id != recs.len() {
                return Err(perr(format!("ids must be consecutive from 0, found {id}")));
            }
            let params: QuantumParams = params.parse().map_err(|e: ParamsParseError| perr(e.to_string()))?;
            let rule: Rule = rule.parse().map_err(perr)?;
            let parents: Vec<usize> = if parents == "-" {
                Vec::new()
            } else {
                parents
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| perr(format!("bad parent '{p}'"))))
                    .collect::<Result<_, _>>()?
            };
            recs.push(ParamRecord { id, params, rule, parents, reference: reference.to_string() });
        }
        let ledger = Ledger { records: RwLock::new(recs) };
        ledger.replay()?;
        Ok(ledger)
    }
}
