//! Continuous t-norms on `[0,1]`, their residuals, and grid tables.

use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::audit::Audit;
use crate::value::{Frac, GridChain, Value, ValueError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("segment [{lo}, {hi}] is empty or inverted")]
    EmptySegment { lo: Value, hi: Value },
    #[error("segments [{0}] and [{1}] overlap")]
    Overlap(String, String),
    #[error("grid Q_{n} is not closed under {op}: {op}({u}, {v}) = {result}")]
    GridNotClosed {
        n: u32,
        op: &'static str,
        u: Value,
        v: Value,
        result: Value,
    },
    #[error("grid size {0} is outside the supported range 1..=254")]
    GridSize(u32),
}

/// One summand `(lo, hi, inner)` of an ordinal sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    lo: Value,
    hi: Value,
    inner: Box<TNorm>,
}

impl Segment {
    pub fn new(lo: Value, hi: Value, inner: TNorm) -> Result<Segment, QuantaleError> {
        if lo >= hi {
            return Err(QuantaleError::EmptySegment { lo, hi });
        }
        Ok(Segment {
            lo,
            hi,
            inner: Box::new(inner),
        })
    }

    pub fn lo(&self) -> Value {
        self.lo
    }

    pub fn hi(&self) -> Value {
        self.hi
    }

    pub fn inner(&self) -> &TNorm {
        &self.inner
    }

    fn contains(&self, x: Value) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn squeeze(&self, x: Value) -> Value {
        let width = Frac::from(self.hi).sub(Frac::from(self.lo));
        Frac::from(x).sub(Frac::from(self.lo)).div(width).into_value()
    }

    fn stretch(&self, t: Value) -> Value {
        let width = Frac::from(self.hi).sub(Frac::from(self.lo));
        Frac::from(self.lo).add(width.mul(Frac::from(t))).into_value()
    }

    fn label(&self) -> String {
        format!("{}..{}={}", self.lo, self.hi, self.inner)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
    OrdinalSum(Vec<Segment>),
}

impl TNorm {
    /// Builds an ordinal sum; segments are sorted and must not overlap
    /// except at endpoints.
    pub fn ordinal_sum(mut segments: Vec<Segment>) -> Result<TNorm, QuantaleError> {
        segments.sort_by_key(|s| s.lo);
        for w in segments.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(QuantaleError::Overlap(w[0].label(), w[1].label()));
            }
        }
        Ok(TNorm::OrdinalSum(segments))
    }

    pub fn tensor(&self, x: Value, y: Value) -> Value {
        match self {
            TNorm::Minimum => x.min(y),
            TNorm::Product => x.product(y),
            TNorm::Lukasiewicz => x.lukasiewicz(y),
            TNorm::OrdinalSum(segs) => {
                match segs.iter().find(|s| s.contains(x) && s.contains(y)) {
                    Some(s) => s.stretch(s.inner.tensor(s.squeeze(x), s.squeeze(y))),
                    None => x.min(y),
                }
            }
        }
    }

    /// The residual: the largest `z` with `x ⊗ z <= y`.
    pub fn hom(&self, x: Value, y: Value) -> Value {
        if x <= y {
            return Value::ONE;
        }
        match self {
            TNorm::Minimum => y,
            TNorm::Product => y.div_capped(x),
            TNorm::Lukasiewicz => x.lukasiewicz_residual(y),
            TNorm::OrdinalSum(segs) => {
                match segs.iter().find(|s| s.contains(x) && s.contains(y)) {
                    Some(s) => s.stretch(s.inner.hom(s.squeeze(x), s.squeeze(y))),
                    None => y,
                }
            }
        }
    }

    /// Whether some nonzero element has a vanishing power.
    pub fn has_nilpotents(&self) -> bool {
        match self {
            TNorm::Minimum | TNorm::Product => false,
            TNorm::Lukasiewicz => true,
            TNorm::OrdinalSum(segs) => segs
                .first()
                .is_some_and(|s| s.lo.is_zero() && s.inner.has_nilpotents()),
        }
    }

    fn nilpotency(&self, u: Value) -> Option<u32> {
        if u.is_zero() {
            return Some(1);
        }
        match self {
            TNorm::Minimum | TNorm::Product => None,
            TNorm::Lukasiewicz => {
                let bound = 2 * u.denom() + 2;
                let mut power = u;
                for k in 1..=bound {
                    if power.is_zero() {
                        return Some(k as u32);
                    }
                    power = power.lukasiewicz(u);
                }
                None
            }
            TNorm::OrdinalSum(segs) => {
                let s = segs.iter().find(|s| s.lo < u && u < s.hi)?;
                if !s.lo.is_zero() {
                    return None;
                }
                s.inner.nilpotency(s.squeeze(u))
            }
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TNorm::Minimum => write!(f, "min"),
            TNorm::Product => write!(f, "product"),
            TNorm::Lukasiewicz => write!(f, "lukasiewicz"),
            TNorm::OrdinalSum(segs) => {
                let parts: Vec<String> = segs.iter().map(Segment::label).collect();
                write!(f, "ordinal:{}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TNormParseError {
    #[error("unknown t-norm `{0}`")]
    Unknown(String),
    #[error("malformed ordinal segment `{0}`, expected lo..hi=inner")]
    Segment(String),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
}

impl FromStr for TNorm {
    type Err = TNormParseError;

    /// Accepts `min`, `product`, `lukasiewicz`, or
    /// `ordinal:lo..hi=inner,...` with a basic inner t-norm.
    fn from_str(s: &str) -> Result<TNorm, TNormParseError> {
        match s.trim() {
            "min" | "minimum" => Ok(TNorm::Minimum),
            "product" => Ok(TNorm::Product),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => {
                let body = other
                    .strip_prefix("ordinal:")
                    .ok_or_else(|| TNormParseError::Unknown(other.to_string()))?;
                let segments = body
                    .split(',')
                    .map(|part| {
                        let (range, inner) = part
                            .split_once('=')
                            .ok_or_else(|| TNormParseError::Segment(part.to_string()))?;
                        let (lo, hi) = range
                            .split_once("..")
                            .ok_or_else(|| TNormParseError::Segment(part.to_string()))?;
                        let inner: TNorm = inner.parse()?;
                        if matches!(inner, TNorm::OrdinalSum(_)) {
                            return Err(TNormParseError::Segment(part.to_string()));
                        }
                        Ok(Segment::new(lo.trim().parse()?, hi.trim().parse()?, inner)?)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(TNorm::ordinal_sum(segments)?)
            }
        }
    }
}

/// A binary operation with a residual, possibly violating the quantale laws.
///
/// [`verify_quantale_axioms`] audits any implementor, which lets tests feed
/// deliberately broken tables through the same checker.
pub trait Residuated {
    fn tensor(&self, u: Value, v: Value) -> Value;
    fn hom(&self, u: Value, v: Value) -> Value;
}

/// The quantale `([0,1], ⊗, 1)` induced by a continuous t-norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quantale {
    tnorm: TNorm,
}

impl Quantale {
    pub fn new(tnorm: TNorm) -> Quantale {
        Quantale { tnorm }
    }

    pub fn lukasiewicz() -> Quantale {
        Quantale::new(TNorm::Lukasiewicz)
    }

    pub fn minimum() -> Quantale {
        Quantale::new(TNorm::Minimum)
    }

    pub fn product() -> Quantale {
        Quantale::new(TNorm::Product)
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn unit(&self) -> Value {
        Value::ONE
    }

    pub fn bottom(&self) -> Value {
        Value::ZERO
    }

    pub fn tensor(&self, u: Value, v: Value) -> Value {
        self.tnorm.tensor(u, v)
    }

    pub fn hom(&self, u: Value, v: Value) -> Value {
        self.tnorm.hom(u, v)
    }

    pub fn truncated_minus(&self, u: Value, v: Value) -> Value {
        u.truncated_minus(v)
    }

    pub fn is_idempotent(&self, u: Value) -> bool {
        self.tensor(u, u) == u
    }

    /// Least `k >= 1` with `u^k = 0`, searched up to `2·den(u) + 2`.
    pub fn nilpotency(&self, u: Value) -> Option<u32> {
        self.tnorm.nilpotency(u)
    }

    pub fn has_nilpotents(&self) -> bool {
        self.tnorm.has_nilpotents()
    }

    pub fn grid_closed(&self, n: u32) -> bool {
        self.grid_algebra(n).is_ok()
    }

    /// Lookup tables for the operations restricted to `Q_n`.
    pub fn grid_algebra(&self, n: u32) -> Result<GridAlgebra, QuantaleError> {
        if n == 0 || n > 254 {
            return Err(QuantaleError::GridSize(n));
        }
        let grid = GridChain::new(n);
        let size = grid.len();
        let values: Vec<Value> = grid.values().collect();
        let mut tensor = vec![0u8; size * size];
        let mut hom = vec![0u8; size * size];
        let mut minus = vec![0u8; size * size];
        for (i, &u) in values.iter().enumerate() {
            for (j, &v) in values.iter().enumerate() {
                let ops: [(&'static str, Value, &mut Vec<u8>); 3] = [
                    ("tensor", self.tensor(u, v), &mut tensor),
                    ("hom", self.hom(u, v), &mut hom),
                    ("truncated minus", u.truncated_minus(v), &mut minus),
                ];
                for (op, result, table) in ops {
                    let k = grid.index_of(result).ok_or(QuantaleError::GridNotClosed {
                        n,
                        op,
                        u,
                        v,
                        result,
                    })?;
                    table[i * size + j] = k as u8;
                }
            }
        }
        Ok(GridAlgebra {
            n,
            values,
            tensor,
            hom,
            minus,
        })
    }
}

impl Residuated for Quantale {
    fn tensor(&self, u: Value, v: Value) -> Value {
        Quantale::tensor(self, u, v)
    }

    fn hom(&self, u: Value, v: Value) -> Value {
        Quantale::hom(self, u, v)
    }
}

impl fmt::Display for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tnorm.fmt(f)
    }
}

/// Grid point index into `Q_n`.
pub type Level = u8;

/// The operations of a quantale restricted to a closed grid `Q_n`,
/// tabulated on grid indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridAlgebra {
    n: u32,
    values: Vec<Value>,
    tensor: Vec<u8>,
    hom: Vec<u8>,
    minus: Vec<u8>,
}

impl GridAlgebra {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> Level {
        self.n as Level
    }

    pub fn value(&self, k: Level) -> Value {
        self.values[k as usize]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn levels(&self) -> impl Iterator<Item = Level> {
        0..=self.n as Level
    }

    pub fn level_of(&self, v: Value) -> Option<Level> {
        GridChain::new(self.n).index_of(v).map(|k| k as Level)
    }

    #[inline]
    pub fn tensor(&self, a: Level, b: Level) -> Level {
        self.tensor[a as usize * self.values.len() + b as usize]
    }

    #[inline]
    pub fn hom(&self, a: Level, b: Level) -> Level {
        self.hom[a as usize * self.values.len() + b as usize]
    }

    #[inline]
    pub fn minus(&self, a: Level, b: Level) -> Level {
        self.minus[a as usize * self.values.len() + b as usize]
    }
}

/// Where the quantale laws are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomDomain {
    /// Every pair and triple of `Q_n`.
    Grid(u32),
    /// `count` seeded random tuples with denominators up to `max_den`.
    Sample { seed: u64, count: usize, max_den: u64 },
}

impl AxiomDomain {
    fn points(self) -> Points {
        match self {
            AxiomDomain::Grid(n) => Points::Grid(GridChain::new(n).values().collect()),
            AxiomDomain::Sample {
                seed,
                count,
                max_den,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let triples = (0..count)
                    .map(|_| {
                        [
                            random_value(&mut rng, max_den),
                            random_value(&mut rng, max_den),
                            random_value(&mut rng, max_den),
                        ]
                    })
                    .collect();
                Points::Sample(triples)
            }
        }
    }
}

enum Points {
    Grid(Vec<Value>),
    Sample(Vec<[Value; 3]>),
}

impl Points {
    fn singles(&self) -> Vec<Value> {
        match self {
            Points::Grid(vs) => vs.clone(),
            Points::Sample(ts) => ts.iter().map(|t| t[0]).collect(),
        }
    }

    fn pairs(&self) -> Vec<(Value, Value)> {
        match self {
            Points::Grid(vs) => vs
                .iter()
                .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
                .collect(),
            Points::Sample(ts) => ts.iter().map(|t| (t[0], t[1])).collect(),
        }
    }

    fn triples(&self) -> Vec<[Value; 3]> {
        match self {
            Points::Grid(vs) => {
                let mut out = Vec::with_capacity(vs.len().pow(3));
                for &u in vs {
                    for &v in vs {
                        for &w in vs {
                            out.push([u, v, w]);
                        }
                    }
                }
                out
            }
            Points::Sample(ts) => ts.clone(),
        }
    }
}

/// A uniformly drawn denominator, then a uniformly drawn numerator.
pub fn random_value(rng: &mut impl RngExt, max_den: u64) -> Value {
    let den = rng.random_range(1..=max_den.max(1));
    let num = rng.random_range(0..=den);
    Value::new(num, den).expect("sampled value in range")
}

/// Checks unit, bottom, commutativity, associativity, monotonicity,
/// preservation of binary joins, and the tensor-hom adjunction.
pub fn verify_quantale_axioms<R: Residuated + ?Sized>(q: &R, domain: AxiomDomain) -> Audit {
    let mut audit = Audit::new("quantale axioms");
    let points = domain.points();
    for u in points.singles() {
        let l = q.tensor(Value::ONE, u);
        let r = q.tensor(u, Value::ONE);
        audit.check(l == u && r == u, "unit", || {
            format!("(1, {u}): 1⊗{u} = {l}, {u}⊗1 = {r}")
        });
        let z = q.tensor(Value::ZERO, u);
        audit.check(z.is_zero(), "bottom", || format!("(0, {u}): 0⊗{u} = {z}"));
    }
    for (u, v) in points.pairs() {
        let uv = q.tensor(u, v);
        let vu = q.tensor(v, u);
        audit.check(uv == vu, "commutativity", || {
            format!("({u}, {v}): {uv} vs {vu}")
        });
    }
    for [u, v, w] in points.triples() {
        let left = q.tensor(q.tensor(u, v), w);
        let right = q.tensor(u, q.tensor(v, w));
        audit.check(left == right, "associativity", || {
            format!("({u}, {v}, {w}): {left} vs {right}")
        });
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        let (a, b) = (q.tensor(lo, w), q.tensor(hi, w));
        audit.check(a <= b, "monotonicity", || {
            format!("({lo}, {hi}, {w}): {a} > {b}")
        });
        let joined = q.tensor(u, v.max(w));
        let split = q.tensor(u, v).max(q.tensor(u, w));
        audit.check(joined == split, "join preservation", || {
            format!("({u}, {v}, {w}): {joined} vs {split}")
        });
        let below = q.tensor(u, v) <= w;
        let h = q.hom(u, w);
        audit.check(below == (v <= h), "adjunction", || {
            format!("({u}, {v}, {w}): u⊗v <= w is {below}, hom(u,w) = {h}")
        });
    }
    audit
}

/// Every pair with `u ⊗ v = 0` must have `u = 0` or `v` nilpotent.
pub fn no_zero_divisor_audit(q: &Quantale, domain: AxiomDomain) -> Audit {
    let mut audit = Audit::new("no zero divisors");
    let points = domain.points();
    let mut witnessed = std::collections::BTreeMap::new();
    for (u, v) in points.pairs() {
        if !q.tensor(u, v).is_zero() || u.is_zero() {
            audit.checked += 1;
            continue;
        }
        match q.nilpotency(v) {
            Some(k) => {
                audit.checked += 1;
                witnessed.entry(v).or_insert(k);
            }
            None => audit.fail(
                "zero divisor",
                format!("({u}, {v}): product is 0 but {v} is not nilpotent"),
            ),
        }
    }
    for (v, k) in witnessed {
        audit.note(format!("{v}^{k} = 0"));
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn tnorm_parsing_roundtrips() {
        for text in ["min", "product", "lukasiewicz", "ordinal:0..1/2=lukasiewicz,1/2..1=product"] {
            let t: TNorm = text.parse().unwrap();
            assert_eq!(t.to_string(), text);
        }
        assert!(matches!("foo".parse::<TNorm>(), Err(TNormParseError::Unknown(_))));
        assert!(matches!("ordinal:0-1=min".parse::<TNorm>(), Err(TNormParseError::Segment(_))));
        assert!(matches!(
            "ordinal:0..3/4=min,1/2..1=min".parse::<TNorm>(),
            Err(TNormParseError::Quantale(QuantaleError::Overlap(..)))
        ));
    }

    fn ordinal_luk_middle() -> Quantale {
        let seg = Segment::new(v("1/4"), v("3/4"), TNorm::Lukasiewicz).unwrap();
        Quantale::new(TNorm::ordinal_sum(vec![seg]).unwrap())
    }

    #[test]
    fn lukasiewicz_examples() {
        let q = Quantale::lukasiewicz();
        assert_eq!(q.tensor(v("7/10"), v("6/10")), v("3/10"));
        assert_eq!(q.hom(v("7/10"), v("3/10")), v("3/5"));
        assert_eq!(q.nilpotency(v("1/2")), Some(2));
        assert_eq!(q.nilpotency(v("2/3")), Some(3));
        assert_eq!(q.nilpotency(Value::ONE), None);
    }

    #[test]
    fn product_and_minimum() {
        let p = Quantale::product();
        assert_eq!(p.tensor(v("1/2"), v("1/3")), v("1/6"));
        assert_eq!(p.hom(v("1/2"), v("1/4")), v("1/2"));
        assert_eq!(p.hom(Value::ZERO, Value::ZERO), Value::ONE);
        assert_eq!(p.nilpotency(v("999/1000")), None);
        let m = Quantale::minimum();
        assert_eq!(m.hom(v("1/2"), v("1/3")), v("1/3"));
        assert!(m.is_idempotent(v("2/7")));
    }

    #[test]
    fn ordinal_sum_rescales() {
        let q = ordinal_luk_middle();
        assert_eq!(q.tensor(v("1/2"), v("5/8")), v("3/8"));
        assert_eq!(q.tensor(v("1/8"), v("5/8")), v("1/8"));
        assert_eq!(q.tensor(v("7/8"), v("7/8")), v("7/8"));
        assert_eq!(q.hom(v("5/8"), v("1/2")), v("5/8"));
        assert_eq!(q.hom(v("7/8"), v("1/2")), v("1/2"));
        assert!(!q.has_nilpotents());
        assert_eq!(q.nilpotency(v("1/2")), None);
    }

    #[test]
    fn ordinal_overlap_rejected() {
        let a = Segment::new(v("0"), v("1/2"), TNorm::Lukasiewicz).unwrap();
        let b = Segment::new(v("1/3"), v("1"), TNorm::Product).unwrap();
        assert!(matches!(
            TNorm::ordinal_sum(vec![a, b]),
            Err(QuantaleError::Overlap(..))
        ));
        assert!(Segment::new(v("1/2"), v("1/2"), TNorm::Minimum).is_err());
    }

    #[test]
    fn grid_closure() {
        assert!(Quantale::lukasiewicz().grid_closed(7));
        assert!(Quantale::minimum().grid_closed(3));
        match Quantale::product().grid_algebra(2) {
            Err(QuantaleError::GridNotClosed { op, u, v, .. }) => {
                assert_eq!(op, "tensor");
                assert_eq!((u, v), (Value::HALF, Value::HALF));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ordinal_luk_middle().grid_closed(4));
        assert!(!ordinal_luk_middle().grid_closed(2));
    }

    #[test]
    fn grid_tables_match_exact_ops() {
        let q = Quantale::lukasiewicz();
        let g = q.grid_algebra(5).unwrap();
        for a in g.levels() {
            for b in g.levels() {
                assert_eq!(g.value(g.tensor(a, b)), q.tensor(g.value(a), g.value(b)));
                assert_eq!(g.value(g.hom(a, b)), q.hom(g.value(a), g.value(b)));
                assert_eq!(
                    g.value(g.minus(a, b)),
                    g.value(a).truncated_minus(g.value(b))
                );
            }
        }
    }

    struct ShiftedUnit;

    impl Residuated for ShiftedUnit {
        fn tensor(&self, u: Value, v: Value) -> Value {
            if u == Value::HALF {
                v
            } else if v == Value::HALF {
                u
            } else {
                u.min(v)
            }
        }

        fn hom(&self, u: Value, v: Value) -> Value {
            Quantale::minimum().hom(u, v)
        }
    }

    #[test]
    fn corrupted_unit_is_caught() {
        let audit = verify_quantale_axioms(&ShiftedUnit, AxiomDomain::Grid(2));
        assert!(!audit.passed());
        let first = &audit.failures[0];
        assert_eq!(first.check, "unit");
        assert!(first.detail.starts_with("(1, 1/2)"), "{}", first.detail);
    }

    #[test]
    fn axioms_hold_on_small_grids() {
        for n in 1..=4 {
            assert!(verify_quantale_axioms(&Quantale::lukasiewicz(), AxiomDomain::Grid(n)).passed());
            assert!(verify_quantale_axioms(&Quantale::minimum(), AxiomDomain::Grid(n)).passed());
        }
    }

    #[test]
    fn sampled_axioms() {
        let d = AxiomDomain::Sample {
            seed: 7,
            count: 300,
            max_den: 24,
        };
        assert!(verify_quantale_axioms(&Quantale::product(), d).passed());
        assert!(verify_quantale_axioms(&ordinal_luk_middle(), d).passed());
    }

    #[test]
    fn zero_divisors() {
        let a = no_zero_divisor_audit(&Quantale::lukasiewicz(), AxiomDomain::Grid(6));
        assert!(a.passed());
        assert!(a.notes.iter().any(|n| n == "1/2^2 = 0"));
    }
}
