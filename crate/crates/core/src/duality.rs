//! Grid-valued function spaces over finite posets and the functionals on
//! them.
//!
//! A [`FunctionSpace`] enumerates every map `ψ: X -> Q_n` compatible with a
//! structure on `X`, in lexicographic order of `(ψ(0), ψ(1), ...)`. For a
//! poset these are the antitone maps. A [`Functional`] assigns a grid level
//! to every member of the space, aligned with that order.

use std::collections::BTreeSet;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::audit::Audit;
use crate::poset::{FinPoset, Subset};
use crate::quantale::{GridAlgebra, Level, Quantale, QuantaleError};
use crate::value::Value;
use crate::vcat::VCategory;
use crate::poset::all_posets;
use crate::vietoris::{all_kleisli_morphisms, is_irreducible, kleisli_compose, random_kleisli, KleisliMorphism};

/// Largest number of functionals scanned exhaustively.
pub const EXHAUSTIVE_CAP: u64 = 2_000_000;

const LOOKUP_CAP: usize = 1 << 24;
const TABLE_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error("{0} candidate tables exceed the enumeration limit")]
    TooLarge(u128),
    #[error("hom-value {0} is not on the grid")]
    OffGrid(Value),
    #[error("function space and distributor sizes disagree")]
    Shape,
    #[error("result leaves the function space")]
    OutsideSpace,
}

struct Tables {
    join: Vec<u32>,
    tensor: Vec<u32>,
}

/// The maps `X -> Q_n` compatible with a structure on `X`.
pub struct FunctionSpace {
    algebra: GridAlgebra,
    points: usize,
    order: Vec<Vec<bool>>,
    funcs: Vec<Level>,
    lookup: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for FunctionSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpace")
            .field("n", &self.algebra.n())
            .field("points", &self.points)
            .field("len", &self.len())
            .finish()
    }
}

impl FunctionSpace {
    /// All antitone maps from a poset: `x <= y` implies `ψ(x) >= ψ(y)`.
    pub fn antitone(p: &FinPoset, q: &Quantale, n: u32) -> Result<FunctionSpace, DualityError> {
        let algebra = q.grid_algebra(n)?;
        let order = p.leq_matrix();
        let ord = order.clone();
        FunctionSpace::enumerate(algebra, order, move |x, y, vx, vy| {
            !ord[x][y] || vx >= vy
        })
    }

    /// All `ψ` with `a(x,y) <= hom(ψ(y), ψ(x))`, filtered with exact
    /// arithmetic on the structure values.
    pub fn enriched(x: &VCategory, n: u32) -> Result<FunctionSpace, DualityError> {
        let q = x.quantale().clone();
        let algebra = q.grid_algebra(n)?;
        for i in 0..x.size() {
            for j in 0..x.size() {
                if algebra.level_of(x.a(i, j)).is_none() {
                    return Err(DualityError::OffGrid(x.a(i, j)));
                }
            }
        }
        let values = algebra.values().to_vec();
        let order = x.natural_order();
        let cat = x.clone();
        FunctionSpace::enumerate(algebra, order, move |i, j, vi, vj| {
            cat.a(i, j) <= q.hom(values[vj as usize], values[vi as usize])
        })
    }

    fn enumerate(
        algebra: GridAlgebra,
        order: Vec<Vec<bool>>,
        allowed: impl Fn(usize, usize, Level, Level) -> bool,
    ) -> Result<FunctionSpace, DualityError> {
        let points = order.len();
        let base = algebra.len() as u128;
        let total = base.pow(points as u32);
        if total > LOOKUP_CAP as u128 {
            return Err(DualityError::TooLarge(total));
        }
        let mut funcs = Vec::new();
        let mut cur: Vec<Level> = Vec::with_capacity(points);
        fn go(
            cur: &mut Vec<Level>,
            points: usize,
            top: Level,
            allowed: &dyn Fn(usize, usize, Level, Level) -> bool,
            out: &mut Vec<Level>,
        ) {
            let k = cur.len();
            if k == points {
                out.extend_from_slice(cur);
                return;
            }
            for v in 0..=top {
                let ok = (0..k).all(|j| allowed(j, k, cur[j], v) && allowed(k, j, v, cur[j]))
                    && allowed(k, k, v, v);
                if ok {
                    cur.push(v);
                    go(cur, points, top, allowed, out);
                    cur.pop();
                }
            }
        }
        go(&mut cur, points, algebra.top(), &allowed, &mut funcs);
        let mut space = FunctionSpace {
            lookup: vec![u32::MAX; total as usize],
            algebra,
            points,
            order,
            funcs,
            tables: None,
        };
        for i in 0..space.len() {
            let code = space.code(space.get(i));
            space.lookup[code] = i as u32;
        }
        if space.len() <= TABLE_CAP {
            space.tables = Some(space.build_tables());
        }
        Ok(space)
    }

    fn build_tables(&self) -> Tables {
        let m = self.len();
        let mut join = vec![0u32; m * m];
        let mut tensor = vec![u32::MAX; m * m];
        for i in 0..m {
            for j in 0..m {
                join[i * m + j] = self.pointwise(i, j, |a, b| a.max(b)).map_or(u32::MAX, |k| k as u32);
                tensor[i * m + j] = self
                    .pointwise(i, j, |a, b| self.algebra.tensor(a, b))
                    .map_or(u32::MAX, |k| k as u32);
            }
        }
        Tables { join, tensor }
    }

    fn code(&self, f: &[Level]) -> usize {
        let base = self.algebra.len();
        f.iter().fold(0usize, |c, &v| c * base + v as usize)
    }

    pub fn algebra(&self) -> &GridAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> u32 {
        self.algebra.n()
    }

    /// Number of points of the base.
    pub fn points(&self) -> usize {
        self.points
    }

    /// `x <= y` in the natural order of the base.
    pub fn base_leq(&self, x: usize, y: usize) -> bool {
        self.order[x][y]
    }

    pub fn len(&self) -> usize {
        self.funcs.len().checked_div(self.points).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[Level] {
        &self.funcs[i * self.points..(i + 1) * self.points]
    }

    pub fn values_of(&self, i: usize) -> Vec<Value> {
        self.get(i).iter().map(|&k| self.algebra.value(k)).collect()
    }

    pub fn index_of(&self, f: &[Level]) -> Option<usize> {
        if f.len() != self.points || f.iter().any(|&v| v > self.algebra.top()) {
            return None;
        }
        match self.lookup[self.code(f)] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn index_of_values(&self, f: &[Value]) -> Option<usize> {
        let levels: Option<Vec<Level>> = f.iter().map(|&v| self.algebra.level_of(v)).collect();
        self.index_of(&levels?)
    }

    pub fn constant(&self, k: Level) -> Option<usize> {
        self.index_of(&vec![k; self.points])
    }

    pub fn one(&self) -> usize {
        self.constant(self.algebra.top()).expect("constant 1 is always a member")
    }

    pub fn zero(&self) -> usize {
        self.constant(0).expect("constant 0 is always a member")
    }

    fn pointwise(&self, i: usize, j: usize, op: impl Fn(Level, Level) -> Level) -> Option<usize> {
        let f: Vec<Level> = self
            .get(i)
            .iter()
            .zip(self.get(j))
            .map(|(&a, &b)| op(a, b))
            .collect();
        self.index_of(&f)
    }

    fn scaled(&self, i: usize, op: impl Fn(Level) -> Level) -> Option<usize> {
        let f: Vec<Level> = self.get(i).iter().map(|&a| op(a)).collect();
        self.index_of(&f)
    }

    /// `ψ₁ ∨ ψ₂`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some(t) => t.join[i * self.len() + j] as usize,
            None => self
                .pointwise(i, j, |a, b| a.max(b))
                .expect("function spaces are closed under binary joins"),
        }
    }

    /// `ψ₁ ⊗ ψ₂`, when it stays in the space.
    pub fn tensor(&self, i: usize, j: usize) -> Option<usize> {
        match &self.tables {
            Some(t) => match t.tensor[i * self.len() + j] {
                u32::MAX => None,
                k => Some(k as usize),
            },
            None => self.pointwise(i, j, |a, b| self.algebra.tensor(a, b)),
        }
    }

    /// `u ⊗ ψ`.
    pub fn act(&self, u: Level, i: usize) -> Option<usize> {
        self.scaled(i, |a| self.algebra.tensor(u, a))
    }

    /// `ψ ⊖ u`.
    pub fn minus(&self, i: usize, u: Level) -> Option<usize> {
        self.scaled(i, |a| self.algebra.minus(a, u))
    }

    /// `hom(u, ψ)`.
    pub fn power(&self, u: Level, i: usize) -> Option<usize> {
        self.scaled(i, |a| self.algebra.hom(u, a))
    }

    /// Pointwise order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.get(i).iter().zip(self.get(j)).all(|(a, b)| a <= b)
    }

    /// `min_x hom(ψ₁(x), ψ₂(x))`.
    pub fn distance(&self, i: usize, j: usize) -> Level {
        self.get(i)
            .iter()
            .zip(self.get(j))
            .map(|(&a, &b)| self.algebra.hom(a, b))
            .min()
            .unwrap_or(self.algebra.top())
    }

    /// The points where `ψ` vanishes.
    pub fn zero_points(&self, i: usize) -> Subset {
        Subset::from_elements(self.points, (0..self.points).filter(|&x| self.get(i)[x] == 0))
    }

    /// The indicator of `↓x`, which is antitone.
    pub fn downset_indicator(&self, x: usize) -> Option<usize> {
        let top = self.algebra.top();
        let f: Vec<Level> = (0..self.points)
            .map(|y| if self.order[y][x] { top } else { 0 })
            .collect();
        self.index_of(&f)
    }

    /// Renders member `i` as `(v0,v1,...)`.
    pub fn render(&self, i: usize) -> String {
        let parts: Vec<String> = self.values_of(i).iter().map(Value::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// A map from a function space to `Q_n`, stored as levels aligned with the
/// space's enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional(Vec<Level>);

impl Functional {
    pub fn new(levels: Vec<Level>) -> Functional {
        Functional(levels)
    }

    pub fn constant(cx: &FunctionSpace, k: Level) -> Functional {
        Functional(vec![k; cx.len()])
    }

    #[inline]
    pub fn at(&self, i: usize) -> Level {
        self.0[i]
    }

    pub fn levels(&self) -> &[Level] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self, cx: &FunctionSpace) -> Vec<Value> {
        self.0.iter().map(|&k| cx.algebra().value(k)).collect()
    }

    pub fn render(&self, cx: &FunctionSpace) -> String {
        let parts: Vec<String> = self.values(cx).iter().map(Value::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

/// `Φ_A(ψ) = max_{x ∈ A} ψ(x)`, zero for empty `A`.
pub fn phi_of(cx: &FunctionSpace, a: &Subset) -> Functional {
    Functional(
        (0..cx.len())
            .map(|i| a.iter().map(|x| cx.get(i)[x]).max().unwrap_or(0))
            .collect(),
    )
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Mon,
    Act,
    Sup,
    TenLax,
    Ten,
    Top,
    Min,
    A,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::Mon,
        Condition::Act,
        Condition::Sup,
        Condition::TenLax,
        Condition::Ten,
        Condition::Top,
        Condition::Min,
        Condition::A,
    ];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Mon => "Mon",
            Condition::Act => "Act",
            Condition::Sup => "Sup",
            Condition::TenLax => "TenLax",
            Condition::Ten => "Ten",
            Condition::Top => "Top",
            Condition::Min => "Min",
            Condition::A => "A",
        };
        f.write_str(s)
    }
}

/// A counterexample to one condition, in terms of space indices and levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionWitness {
    Pair { first: usize, second: usize },
    Scaled { psi: usize, level: Level },
    Top,
    Point { psi: usize, point: usize },
}

impl ConditionWitness {
    pub fn render(&self, cx: &FunctionSpace) -> String {
        match *self {
            ConditionWitness::Pair { first, second } => {
                format!("ψ₁ = {}, ψ₂ = {}", cx.render(first), cx.render(second))
            }
            ConditionWitness::Scaled { psi, level } => {
                format!("ψ = {}, u = {}", cx.render(psi), cx.algebra().value(level))
            }
            ConditionWitness::Top => "Φ(1) < 1".to_string(),
            ConditionWitness::Point { psi, point } => {
                format!("ψ = {}, x = {point}", cx.render(psi))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConditionReport {
    results: [Option<ConditionWitness>; 8],
}

impl ConditionReport {
    pub fn passes(&self, c: Condition) -> bool {
        self.results[c.slot()].is_none()
    }

    pub fn passes_all(&self, cs: &[Condition]) -> bool {
        cs.iter().all(|&c| self.passes(c))
    }

    pub fn witness(&self, c: Condition) -> Option<&ConditionWitness> {
        self.results[c.slot()].as_ref()
    }

    pub fn failed(&self) -> Vec<Condition> {
        Condition::ALL.into_iter().filter(|&c| !self.passes(c)).collect()
    }
}

/// Checks one condition exhaustively over the space and the grid.
pub fn check_condition(cx: &FunctionSpace, phi: &Functional, c: Condition) -> Option<ConditionWitness> {
    let g = cx.algebra();
    let m = cx.len();
    match c {
        Condition::Mon => (0..m).find_map(|i| {
            (0..m)
                .find(|&j| phi.at(i) > phi.at(j) && cx.leq(i, j))
                .map(|j| ConditionWitness::Pair { first: i, second: j })
        }),
        Condition::Sup => (0..m).find_map(|i| {
            (i..m)
                .find(|&j| phi.at(cx.join(i, j)) != phi.at(i).max(phi.at(j)))
                .map(|j| ConditionWitness::Pair { first: i, second: j })
        }),
        Condition::TenLax | Condition::Ten => (0..m).find_map(|i| {
            (i..m)
                .find(|&j| {
                    let Some(t) = cx.tensor(i, j) else { return false };
                    let rhs = g.tensor(phi.at(i), phi.at(j));
                    if c == Condition::Ten {
                        phi.at(t) != rhs
                    } else {
                        phi.at(t) > rhs
                    }
                })
                .map(|j| ConditionWitness::Pair { first: i, second: j })
        }),
        Condition::Act => g.levels().find_map(|u| {
            (0..m)
                .find(|&i| {
                    cx.act(u, i)
                        .is_some_and(|k| phi.at(k) != g.tensor(u, phi.at(i)))
                })
                .map(|i| ConditionWitness::Scaled { psi: i, level: u })
        }),
        Condition::Min => g.levels().find_map(|u| {
            (0..m)
                .find(|&i| {
                    cx.minus(i, u)
                        .is_some_and(|k| phi.at(k) != g.minus(phi.at(i), u))
                })
                .map(|i| ConditionWitness::Scaled { psi: i, level: u })
        }),
        Condition::Top => (phi.at(cx.one()) != g.top()).then_some(ConditionWitness::Top),
        Condition::A => {
            let rescued: Vec<bool> = (0..cx.points())
                .map(|x| (0..m).any(|k| cx.get(k)[x] == g.top() && phi.at(k) == 0))
                .collect();
            (0..m).find_map(|i| {
                if phi.at(i) != 0 {
                    return None;
                }
                (0..cx.points())
                    .find(|&x| cx.get(i)[x] > 0 && !rescued[x])
                    .map(|x| ConditionWitness::Point { psi: i, point: x })
            })
        }
    }
}

pub fn check_conditions(cx: &FunctionSpace, phi: &Functional) -> ConditionReport {
    let mut report = ConditionReport::default();
    for c in Condition::ALL {
        report.results[c.slot()] = check_condition(cx, phi, c);
    }
    report
}

/// Re-evaluates a witness; `true` when it still exhibits a violation.
pub fn replay_witness(cx: &FunctionSpace, phi: &Functional, c: Condition, w: &ConditionWitness) -> bool {
    let g = cx.algebra();
    match (c, w) {
        (Condition::Mon, &ConditionWitness::Pair { first, second }) => {
            cx.leq(first, second) && phi.at(first) > phi.at(second)
        }
        (Condition::Sup, &ConditionWitness::Pair { first, second }) => {
            phi.at(cx.join(first, second)) != phi.at(first).max(phi.at(second))
        }
        (Condition::TenLax, &ConditionWitness::Pair { first, second }) => cx
            .tensor(first, second)
            .is_some_and(|t| phi.at(t) > g.tensor(phi.at(first), phi.at(second))),
        (Condition::Ten, &ConditionWitness::Pair { first, second }) => cx
            .tensor(first, second)
            .is_some_and(|t| phi.at(t) != g.tensor(phi.at(first), phi.at(second))),
        (Condition::Act, &ConditionWitness::Scaled { psi, level }) => cx
            .act(level, psi)
            .is_some_and(|k| phi.at(k) != g.tensor(level, phi.at(psi))),
        (Condition::Min, &ConditionWitness::Scaled { psi, level }) => cx
            .minus(psi, level)
            .is_some_and(|k| phi.at(k) != g.minus(phi.at(psi), level)),
        (Condition::Top, ConditionWitness::Top) => phi.at(cx.one()) != g.top(),
        (Condition::A, &ConditionWitness::Point { psi, point }) => {
            phi.at(psi) == 0
                && cx.get(psi)[point] > 0
                && !(0..cx.len()).any(|k| cx.get(k)[point] == g.top() && phi.at(k) == 0)
        }
        _ => false,
    }
}

/// `⋂ {Zero(ψ) : Φ(ψ) = 0}`, the whole carrier when no `ψ` qualifies.
pub fn zero_set(cx: &FunctionSpace, phi: &Functional) -> Subset {
    let mut out = Subset::full(cx.points());
    for i in 0..cx.len() {
        if phi.at(i) == 0 {
            out.intersect_with(&cx.zero_points(i));
        }
    }
    out
}

/// `⋂_ψ {x : ψ(x) <= Φ(ψ)}`.
pub fn anti_set(cx: &FunctionSpace, phi: &Functional) -> Subset {
    let mut out = Subset::full(cx.points());
    for i in 0..cx.len() {
        for (x, &level) in cx.get(i).iter().enumerate() {
            if level > phi.at(i) {
                out.remove(x);
            }
        }
    }
    out
}

/// `Cφ(ψ)(x) = max_{x φ y} ψ(y)`, as a map of indices `CY -> CX`.
pub fn c_of_distributor(
    phi: &KleisliMorphism,
    cy: &FunctionSpace,
    cx: &FunctionSpace,
) -> Result<Vec<usize>, DualityError> {
    if phi.src_size() != cx.points() || phi.dst_size() != cy.points() {
        return Err(DualityError::Shape);
    }
    (0..cy.len())
        .map(|j| {
            let psi = cy.get(j);
            let f: Vec<Level> = (0..cx.points())
                .map(|x| phi.row(x).iter().map(|y| psi[y]).max().unwrap_or(0))
                .collect();
            cx.index_of(&f).ok_or(DualityError::OutsideSpace)
        })
        .collect()
}

/// The condition cut used for representability.
pub fn required_conditions(q: &Quantale) -> Vec<Condition> {
    let mut cs = vec![Condition::Mon, Condition::Act, Condition::Sup];
    if q.has_nilpotents() {
        cs.push(Condition::TenLax);
    }
    cs.push(Condition::Min);
    cs
}

/// Where functionals come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corpus {
    /// Every table, if at most [`EXHAUSTIVE_CAP`]; otherwise a seeded sample.
    Exhaustive { fallback_seed: u64, fallback_size: usize },
    /// Uniform and repaired tables plus all representables.
    Sampled { seed: u64, size: usize },
    /// Exactly the `Φ_A`.
    Representables,
}

#[derive(Clone, Debug, Default)]
pub struct RepresentabilityReport {
    pub audit: Audit,
    pub mode: String,
    pub scanned: u64,
    pub passing: Vec<Functional>,
    pub representable: u64,
    pub max_gap: u32,
}

/// Visits every table `CX -> Q_n` in lexicographic order.
pub fn for_each_table(cx: &FunctionSpace, mut f: impl FnMut(&Functional)) {
    let m = cx.len();
    let top = cx.algebra().top();
    let mut table = Functional(vec![0; m]);
    loop {
        f(&table);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if table.0[i] < top {
                table.0[i] += 1;
                break;
            }
            table.0[i] = 0;
        }
    }
}

/// Raises a table until it satisfies monotonicity, binary joins and
/// `Φ(u⊗ψ) >= u⊗Φ(ψ)`.
pub fn repair(cx: &FunctionSpace, phi: &mut Functional) {
    let g = cx.algebra();
    let m = cx.len();
    loop {
        let mut changed = false;
        for i in 0..m {
            for j in 0..m {
                let k = cx.join(i, j);
                let want = phi.0[i].max(phi.0[j]);
                if phi.0[k] < want {
                    phi.0[k] = want;
                    changed = true;
                }
            }
            for u in g.levels() {
                if let Some(k) = cx.act(u, i) {
                    let want = g.tensor(u, phi.0[i]);
                    if phi.0[k] < want {
                        phi.0[k] = want;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Seeded corpus: half uniform tables, half repaired ones.
pub fn sample_corpus(cx: &FunctionSpace, seed: u64, size: usize) -> Vec<Functional> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = cx.algebra().top();
    (0..size)
        .map(|k| {
            let mut phi = Functional((0..cx.len()).map(|_| rng.random_range(0..=top)).collect());
            if k % 2 == 1 {
                repair(cx, &mut phi);
            }
            phi
        })
        .collect()
}

/// For every functional passing `required`, checks `Φ = Φ_{Zero(Φ)}` and
/// `Zero(Φ) = Anti(Φ)`. Deviations are findings; the implications
/// `Mon∧Act∧TenLax ⇒ (A)` (or `Mon∧Act ⇒ (A)` without nilpotents) and the
/// sandwich `Φ_{Anti(Φ)} <= Φ <= Φ_{Zero(Φ)}` are hard checks.
pub fn representability_audit(
    p: &FinPoset,
    q: &Quantale,
    cx: &FunctionSpace,
    required: &[Condition],
    corpus: Corpus,
) -> RepresentabilityReport {
    let mut report = RepresentabilityReport {
        audit: Audit::new("representability"),
        ..Default::default()
    };
    let uppers = p.upper_sets();
    let reps: BTreeSet<Functional> = uppers.iter().map(|a| phi_of(cx, a)).collect();
    let nilpotent = q.has_nilpotents();
    let visit = |phi: &Functional, report: &mut RepresentabilityReport| {
        report.scanned += 1;
        let r = check_conditions(cx, phi);
        let a_premise = if nilpotent {
            r.passes_all(&[Condition::Mon, Condition::Act, Condition::TenLax])
        } else {
            r.passes_all(&[Condition::Mon, Condition::Act])
        };
        report.audit.check(!a_premise || r.passes(Condition::A), "premises imply (A)", || {
            phi.render(cx)
        });
        let anti = anti_set(cx, phi);
        let lower = phi_of(cx, &anti);
        report.audit.check(
            (0..cx.len()).all(|i| lower.at(i) <= phi.at(i)),
            "Φ_Anti <= Φ",
            || phi.render(cx),
        );
        let zero = zero_set(cx, phi);
        if r.passes_all(&[Condition::Mon, Condition::Act, Condition::Sup, Condition::A]) {
            let upper = phi_of(cx, &zero);
            report.audit.check(
                (0..cx.len()).all(|i| phi.at(i) <= upper.at(i)),
                "Φ <= Φ_Zero",
                || phi.render(cx),
            );
        }
        if !r.passes_all(required) {
            return;
        }
        report.passing.push(phi.clone());
        let rebuilt = phi_of(cx, &zero);
        let gap = (0..cx.len())
            .map(|i| phi.at(i).abs_diff(rebuilt.at(i)) as u32)
            .max()
            .unwrap_or(0);
        report.max_gap = report.max_gap.max(gap);
        if gap > 0 {
            report.audit.finding(
                "Φ = Φ_Zero(Φ)",
                format!("{} differs from Φ_{} by {gap} grid steps", phi.render(cx), zero),
            );
        }
        if zero != anti {
            report.audit.finding(
                "Zero = Anti",
                format!("{}: Zero = {zero}, Anti = {anti}", phi.render(cx)),
            );
        }
        if reps.contains(phi) {
            report.representable += 1;
        }
    };
    let total = (cx.algebra().len() as u128).checked_pow(cx.len() as u32);
    let corpus = match corpus {
        Corpus::Exhaustive {
            fallback_seed,
            fallback_size,
        } => match total {
            Some(t) if t <= EXHAUSTIVE_CAP as u128 => {
                report.mode = format!("exhaustive ({t} tables)");
                for_each_table(cx, |phi| visit(phi, &mut report));
                None
            }
            _ => {
                report.mode = format!(
                    "corpus (exhaustive cap {EXHAUSTIVE_CAP} exceeded; seed {fallback_seed}, {fallback_size} tables)"
                );
                Some(sample_corpus(cx, fallback_seed, fallback_size))
            }
        },
        Corpus::Sampled { seed, size } => {
            report.mode = format!("corpus (seed {seed}, {size} tables plus representables)");
            let mut c = sample_corpus(cx, seed, size);
            c.extend(reps.iter().cloned());
            Some(c)
        }
        Corpus::Representables => {
            report.mode = "representables".to_string();
            Some(reps.iter().cloned().collect())
        }
    };
    if let Some(list) = corpus {
        for phi in &list {
            visit(phi, &mut report);
        }
    }
    report.audit.note(report.mode.clone());
    report
}

/// The `Φ_A` table: Mon/Act/Sup/TenLax/Min always, Top iff `A ≠ ∅`,
/// Ten iff `A` is irreducible, and `Zero(Φ_A) = A = Anti(Φ_A)`.
pub fn representable_table_audit(p: &FinPoset, cx: &FunctionSpace) -> Audit {
    let mut audit = Audit::new("Φ_A conditions");
    let always = [
        Condition::Mon,
        Condition::Act,
        Condition::Sup,
        Condition::TenLax,
        Condition::Min,
    ];
    for a in p.upper_sets() {
        let phi = phi_of(cx, &a);
        let r = check_conditions(cx, &phi);
        for c in always {
            audit.check(r.passes(c), &c.to_string(), || format!("A = {a}"));
        }
        audit.check(r.passes(Condition::Top) == !a.is_empty(), "Top iff A nonempty", || {
            format!("A = {a}")
        });
        audit.check(
            r.passes(Condition::Ten) == is_irreducible(p, &a),
            "Ten iff A irreducible",
            || format!("A = {a}"),
        );
        audit.check(zero_set(cx, &phi) == a, "Zero(Φ_A) = A", || format!("A = {a}"));
        audit.check(anti_set(cx, &phi) == a, "Anti(Φ_A) = A", || format!("A = {a}"));
    }
    audit
}

/// `φ` total iff `Cφ(1) = 1`; `φ` deterministic iff `Cφ` preserves `⊗`.
pub fn total_partial_audit(
    phi: &KleisliMorphism,
    y: &FinPoset,
    cx: &FunctionSpace,
    cy: &FunctionSpace,
) -> Audit {
    let mut audit = Audit::new("total and partial functions");
    let c = match c_of_distributor(phi, cy, cx) {
        Ok(c) => c,
        Err(e) => {
            audit.fail("Cφ", e.to_string());
            return audit;
        }
    };
    let keeps_top = c[cy.one()] == cx.one();
    audit.check(phi.is_total() == keeps_top, "total iff Cφ(1) = 1", || {
        format!("rows {:?}", render_rows(phi))
    });
    let m = cy.len();
    let preserves = (0..m).all(|i| {
        (i..m).all(|j| match cy.tensor(i, j) {
            Some(t) => cx.tensor(c[i], c[j]) == Some(c[t]),
            None => true,
        })
    });
    audit.check(
        phi.is_deterministic(y) == preserves,
        "deterministic iff Cφ preserves ⊗",
        || format!("rows {:?}", render_rows(phi)),
    );
    audit
}

/// `C(φ'·φ) = Cφ ∘ Cφ'` for `φ: X ⇸ Y`, `φ': Y ⇸ Z`.
pub fn functoriality_check(
    first: &KleisliMorphism,
    second: &KleisliMorphism,
    cx: &FunctionSpace,
    cy: &FunctionSpace,
    cz: &FunctionSpace,
) -> Result<bool, DualityError> {
    let composite = c_of_distributor(&kleisli_compose(second, first), cz, cx)?;
    let c1 = c_of_distributor(first, cy, cx)?;
    let c2 = c_of_distributor(second, cz, cy)?;
    Ok((0..cz.len()).all(|k| composite[k] == c1[c2[k]]))
}

fn spaces_by_size(q: &Quantale, n: u32, max_size: usize) -> Result<Vec<Vec<(FinPoset, FunctionSpace)>>, DualityError> {
    (1..=max_size)
        .map(|size| {
            all_posets(size)
                .into_iter()
                .map(|p| FunctionSpace::antitone(&p, q, n).map(|cx| (p, cx)))
                .collect()
        })
        .collect()
}

/// Functoriality on every composable triple of posets of size
/// `1..=max_size`, plus `C(id) = id`.
pub fn functoriality_exhaustive_audit(q: &Quantale, n: u32, max_size: usize) -> Result<Audit, DualityError> {
    let mut audit = Audit::new("functoriality (exhaustive)");
    let spaces: Vec<(FinPoset, FunctionSpace)> = spaces_by_size(q, n, max_size)?.into_iter().flatten().collect();
    for (x, cx) in &spaces {
        let id = c_of_distributor(&KleisliMorphism::identity(x), cx, cx)?;
        audit.check(id.iter().enumerate().all(|(i, &k)| i == k), "C(id) = id", || format!("|X| = {}", x.size()));
    }
    for (x, cx) in &spaces {
        for (y, cy) in &spaces {
            let firsts = all_kleisli_morphisms(x, y);
            for (z, cz) in &spaces {
                let seconds = all_kleisli_morphisms(y, z);
                for f in &firsts {
                    for g in &seconds {
                        let ok = functoriality_check(f, g, cx, cy, cz)?;
                        audit.check(ok, "C(φ'·φ) = Cφ ∘ Cφ'", || {
                            format!("φ rows {:?}, φ' rows {:?}", render_rows(f), render_rows(g))
                        });
                    }
                }
            }
        }
    }
    Ok(audit)
}

/// Functoriality on `count` seeded composable pairs over posets of size
/// `1..=max_size`.
pub fn functoriality_sample_audit(
    q: &Quantale,
    n: u32,
    max_size: usize,
    seed: u64,
    count: usize,
) -> Result<Audit, DualityError> {
    let mut audit = Audit::new("functoriality (sampled)");
    let spaces = spaces_by_size(q, n, max_size)?;
    let uppers: Vec<Vec<Vec<Subset>>> = spaces
        .iter()
        .map(|row| row.iter().map(|(p, _)| p.upper_sets()).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| {
        let s = rng.random_range(0..spaces.len());
        (s, rng.random_range(0..spaces[s].len()))
    };
    for _ in 0..count {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (x, cx) = &spaces[a.0][a.1];
        let (y, cy) = &spaces[b.0][b.1];
        let (z, cz) = &spaces[c.0][c.1];
        let f = random_kleisli(x, y, &uppers[b.0][b.1], &mut rng);
        let g = random_kleisli(y, z, &uppers[c.0][c.1], &mut rng);
        let ok = functoriality_check(&f, &g, cx, cy, cz)?;
        audit.check(ok, "C(φ'·φ) = Cφ ∘ Cφ'", || {
            format!("φ rows {:?}, φ' rows {:?}", render_rows(&f), render_rows(&g))
        });
    }
    audit.note(format!("{count} sampled pairs, seed {seed}"));
    Ok(audit)
}

/// Total and deterministic equivalences over every 0/1 distributor between
/// posets of size `1..=max_size`.
pub fn total_partial_sweep(q: &Quantale, n: u32, max_size: usize) -> Result<Audit, DualityError> {
    let mut audit = Audit::new("total and partial functions");
    let spaces: Vec<(FinPoset, FunctionSpace)> = spaces_by_size(q, n, max_size)?.into_iter().flatten().collect();
    for (x, cx) in &spaces {
        for (y, cy) in &spaces {
            for f in all_kleisli_morphisms(x, y) {
                audit.absorb(total_partial_audit(&f, y, cx, cy));
            }
        }
    }
    Ok(audit)
}

fn render_rows(k: &KleisliMorphism) -> Vec<String> {
    k.rows().iter().map(Subset::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn luk_chain() -> (FinPoset, FunctionSpace) {
        let p = FinPoset::chain(2);
        let cx = FunctionSpace::antitone(&p, &Quantale::lukasiewicz(), 2).unwrap();
        (p, cx)
    }

    fn levels(cx: &FunctionSpace) -> Vec<Vec<Level>> {
        (0..cx.len()).map(|i| cx.get(i).to_vec()).collect()
    }

    #[test]
    fn space_sizes_and_order() {
        let (_, cx) = luk_chain();
        assert_eq!(
            levels(&cx),
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1], vec![2, 2]]
        );
        let q = Quantale::lukasiewicz();
        assert_eq!(FunctionSpace::antitone(&FinPoset::chain(1), &q, 2).unwrap().len(), 3);
        assert_eq!(FunctionSpace::antitone(&FinPoset::antichain(2), &q, 1).unwrap().len(), 4);
        let empty = FunctionSpace::antitone(&FinPoset::chain(0), &q, 2).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(matches!(
            FunctionSpace::antitone(&FinPoset::chain(1), &Quantale::product(), 2),
            Err(DualityError::Quantale(_))
        ));
    }

    #[test]
    fn phi_examples() {
        let (p, cx) = luk_chain();
        let b = Subset::from_elements(2, [1]);
        let psi = cx.index_of(&[2, 1]).unwrap();
        assert_eq!(phi_of(&cx, &b).at(psi), 1);
        assert_eq!(phi_of(&cx, &Subset::full(2)).at(psi), 2);
        assert!(phi_of(&cx, &Subset::empty(2)).levels().iter().all(|&k| k == 0));
        assert_eq!(zero_set(&cx, &phi_of(&cx, &b)), b);
        assert_eq!(zero_set(&cx, &phi_of(&cx, &Subset::empty(2))), Subset::empty(2));
        let one = Functional::constant(&cx, 2);
        assert_eq!(zero_set(&cx, &one), Subset::full(2));
        assert_eq!(anti_set(&cx, &one), Subset::full(2));
        let a = representable_table_audit(&p, &cx);
        assert!(a.passed(), "{a}");
    }

    #[test]
    fn meet_counterexample() {
        let p = FinPoset::chain(1);
        let cx = FunctionSpace::antitone(&p, &Quantale::minimum(), 2).unwrap();
        let phi = Functional::new(vec![0, 1, 1]);
        let r = check_conditions(&cx, &phi);
        assert!(r.passes_all(&[Condition::Mon, Condition::Act, Condition::Sup]));
        assert_eq!(
            r.witness(Condition::Min),
            Some(&ConditionWitness::Scaled { psi: 2, level: 1 })
        );
        for c in r.failed() {
            assert!(replay_witness(&cx, &phi, c, r.witness(c).unwrap()));
        }
        assert_eq!(zero_set(&cx, &phi), Subset::full(1));
        assert_eq!(anti_set(&cx, &phi), Subset::empty(1));
        assert!(p.upper_sets().iter().all(|a| phi_of(&cx, a) != phi));
    }

    #[test]
    fn flagship_oracle() {
        let (p, cx) = luk_chain();
        let q = Quantale::lukasiewicz();
        let rep = representability_audit(
            &p,
            &q,
            &cx,
            &required_conditions(&q),
            Corpus::Exhaustive {
                fallback_seed: 0,
                fallback_size: 0,
            },
        );
        assert_eq!(rep.scanned, 729);
        let expected: Vec<Vec<Level>> = vec![
            vec![0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 1, 2],
            vec![0, 1, 1, 2, 2, 2],
        ];
        let got: Vec<Vec<Level>> = rep.passing.iter().map(|f| f.levels().to_vec()).collect();
        assert_eq!(got, expected);
        assert_eq!(rep.representable, 3);
        assert!(rep.audit.passed() && rep.audit.found == 0);
    }

    #[test]
    fn identity_distributor_is_identity() {
        let (p, cx) = luk_chain();
        let c = c_of_distributor(&KleisliMorphism::identity(&p), &cx, &cx).unwrap();
        assert_eq!(c, (0..cx.len()).collect::<Vec<_>>());
        let empty = KleisliMorphism::new(&p, &p, vec![Subset::empty(2), Subset::empty(2)]).unwrap();
        let c = c_of_distributor(&empty, &cx, &cx).unwrap();
        assert!(c.iter().all(|&k| k == cx.zero()));
    }

    #[test]
    fn functoriality_small() {
        let q = Quantale::lukasiewicz();
        let ps = all_posets(2);
        for x in &ps {
            for y in &ps {
                let (cx, cy) = (
                    FunctionSpace::antitone(x, &q, 2).unwrap(),
                    FunctionSpace::antitone(y, &q, 2).unwrap(),
                );
                for f in all_kleisli_morphisms(x, y) {
                    for g in all_kleisli_morphisms(y, x) {
                        assert!(functoriality_check(&f, &g, &cx, &cy, &cx).unwrap());
                    }
                    assert!(total_partial_audit(&f, y, &cx, &cy).passed());
                }
            }
        }
    }

    #[test]
    fn representables_are_distinct_and_order_reflecting() {
        let q = Quantale::lukasiewicz();
        for p in all_posets(3) {
            let cx = FunctionSpace::antitone(&p, &q, 2).unwrap();
            let ups = p.upper_sets();
            let phis: Vec<Functional> = ups.iter().map(|a| phi_of(&cx, a)).collect();
            for (a, fa) in ups.iter().zip(&phis) {
                for (b, fb) in ups.iter().zip(&phis) {
                    let pointwise = (0..cx.len()).all(|i| fb.at(i) <= fa.at(i));
                    assert_eq!(pointwise, b.is_subset(a));
                }
            }
        }
    }

    #[test]
    fn sweeps_small() {
        let q = Quantale::lukasiewicz();
        assert!(functoriality_exhaustive_audit(&q, 2, 2).unwrap().passed());
        let a = functoriality_sample_audit(&q, 2, 3, 5, 50).unwrap();
        assert!(a.passed() && a.checked == 50);
        assert!(total_partial_sweep(&q, 2, 2).unwrap().passed());
    }

    #[test]
    fn sampled_corpus_is_deterministic() {
        let (p, cx) = luk_chain();
        let a = sample_corpus(&cx, 11, 20);
        let b = sample_corpus(&cx, 11, 20);
        assert_eq!(a, b);
        let q = Quantale::lukasiewicz();
        let r = representability_audit(&p, &q, &cx, &required_conditions(&q), Corpus::Sampled { seed: 3, size: 50 });
        assert!(r.audit.passed());
        assert_eq!(r.max_gap, 0);
    }
}
