//! Sub-structures of a function space generated under pointwise
//! operations, the separation condition, and graded density.
//!
//! On a finite carrier every subset of `CX` is closed, so approximation is
//! measured by [`density_at_level`]: `ψ` is `u`-approximated by `φ` when
//! both `d(ψ,φ)` and `d(φ,ψ)` are at least `u`.

use std::collections::VecDeque;
use std::fmt;

use crate::audit::Audit;
use crate::duality::FunctionSpace;
use crate::poset::{FinPoset, Subset};
use crate::quantale::{Level, Quantale};

/// Which pointwise operations a sub-structure must be closed under.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub struct OpSet {
    pub join: bool,
    pub tensor: bool,
    pub act: bool,
    pub power: bool,
    pub minus: bool,
    pub constants: bool,
}

impl OpSet {
    /// Finite suprema, the monoid structure and the action.
    pub const STONE: OpSet = OpSet {
        join: true,
        tensor: true,
        act: true,
        power: false,
        minus: false,
        constants: true,
    };

    pub const ALL: OpSet = OpSet {
        join: true,
        tensor: true,
        act: true,
        power: true,
        minus: true,
        constants: true,
    };
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Generator,
    Constant(Level),
    Join(usize, usize),
    Tensor(usize, usize),
    Act(Level, usize),
    Power(Level, usize),
    Minus(usize, Level),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Op::Generator => write!(f, "gen"),
            Op::Constant(k) => write!(f, "const {k}"),
            Op::Join(a, b) => write!(f, "#{a} ∨ #{b}"),
            Op::Tensor(a, b) => write!(f, "#{a} ⊗ #{b}"),
            Op::Act(u, a) => write!(f, "level {u} ⊗ #{a}"),
            Op::Power(u, a) => write!(f, "hom(level {u}, #{a})"),
            Op::Minus(a, u) => write!(f, "#{a} ⊖ level {u}"),
        }
    }
}

/// One step of a closure computation: how member `result` first appeared.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub op: Op,
    pub result: usize,
}

#[derive(Clone, Debug)]
pub struct SubStructure {
    pub members: Subset,
    pub trace: Vec<TraceStep>,
}

impl SubStructure {
    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_everything(&self, cx: &FunctionSpace) -> bool {
        self.len() == cx.len()
    }
}

/// Least subset of `cx` containing `generators` (and the constants `0`, `1`
/// when selected) closed under the chosen operations.
pub fn generate_closure(cx: &FunctionSpace, generators: &[usize], ops: OpSet) -> SubStructure {
    let mut members = Subset::empty(cx.len());
    let mut order: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut queue = VecDeque::new();
    let mut add = |k: usize, op: Op, members: &mut Subset, queue: &mut VecDeque<usize>| {
        if !members.contains(k) {
            members.insert(k);
            trace.push(TraceStep { op, result: k });
            queue.push_back(k);
        }
    };
    for &g in generators {
        add(g, Op::Generator, &mut members, &mut queue);
    }
    if ops.constants {
        add(cx.zero(), Op::Constant(0), &mut members, &mut queue);
        let top = cx.algebra().top();
        add(cx.one(), Op::Constant(top), &mut members, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for u in cx.algebra().levels() {
            if ops.act {
                if let Some(k) = cx.act(u, i) {
                    add(k, Op::Act(u, i), &mut members, &mut queue);
                }
            }
            if ops.power {
                if let Some(k) = cx.power(u, i) {
                    add(k, Op::Power(u, i), &mut members, &mut queue);
                }
            }
            if ops.minus {
                if let Some(k) = cx.minus(i, u) {
                    add(k, Op::Minus(i, u), &mut members, &mut queue);
                }
            }
        }
        for &j in &order {
            if ops.join {
                add(cx.join(i, j), Op::Join(j, i), &mut members, &mut queue);
            }
            if ops.tensor {
                if let Some(k) = cx.tensor(i, j) {
                    add(k, Op::Tensor(j, i), &mut members, &mut queue);
                }
            }
        }
    }
    SubStructure { members, trace }
}

/// The subset itself, with no closure applied.
pub fn substructure_of(cx: &FunctionSpace, members: &[usize]) -> SubStructure {
    SubStructure {
        members: Subset::from_elements(cx.len(), members.iter().copied()),
        trace: members.iter().map(|&k| TraceStep { op: Op::Generator, result: k }).collect(),
    }
}

/// Indicators of the principal down-sets `↓x`.
pub fn downset_indicators(cx: &FunctionSpace) -> Vec<usize> {
    (0..cx.points())
        .filter_map(|x| cx.downset_indicator(x))
        .collect()
}

/// A pair `(x, y)` with `x ≱ y` that no member separates.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SepFailure {
    pub x: usize,
    pub y: usize,
}

/// For every `x ≱ y`, some member with `ψ(x) = 1` and `ψ(y) = 0`.
/// Returns one witness index per separated pair.
pub fn check_sep(cx: &FunctionSpace, l: &SubStructure) -> Result<Vec<(usize, usize, usize)>, SepFailure> {
    let top = cx.algebra().top();
    let mut witnesses = Vec::new();
    for x in 0..cx.points() {
        for y in 0..cx.points() {
            if cx.base_leq(y, x) {
                continue;
            }
            let w = l.iter().find(|&k| cx.get(k)[x] == top && cx.get(k)[y] == 0);
            match w {
                Some(k) => witnesses.push((x, y, k)),
                None => return Err(SepFailure { x, y }),
            }
        }
    }
    Ok(witnesses)
}

/// Every `ψ` has a member `φ` with `u <= d(ψ,φ)` and `u <= d(φ,ψ)`.
/// Returns the approximant of each `ψ`, or the first `ψ` without one.
pub fn density_at_level(cx: &FunctionSpace, l: &SubStructure, u: Level) -> Result<Vec<usize>, usize> {
    (0..cx.len())
        .map(|psi| {
            if l.contains(psi) {
                return Ok(psi);
            }
            l.iter()
                .find(|&phi| cx.distance(psi, phi) >= u && cx.distance(phi, psi) >= u)
                .ok_or(psi)
        })
        .collect()
}

/// Which lemma's premises to test before asserting separation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SepLemma {
    /// Closed under `⊗`, `1` and `u`-powers, with an initial cone.
    MonoidPowers,
    /// Closed under `u`-powers and `- ⊖ u`, with an initial cone.
    PowersMinus,
}

/// `x >= y` iff every member has `ψ(x) <= ψ(y)`.
pub fn is_initial_cone(cx: &FunctionSpace, l: &SubStructure) -> bool {
    (0..cx.points()).all(|x| {
        (0..cx.points()).all(|y| {
            let below = l.iter().all(|k| cx.get(k)[x] <= cx.get(k)[y]);
            below == cx.base_leq(y, x)
        })
    })
}

fn closed_under(cx: &FunctionSpace, l: &SubStructure, lemma: SepLemma) -> bool {
    let levels: Vec<Level> = cx.algebra().levels().collect();
    let unary_ok = |f: &dyn Fn(Level, usize) -> Option<usize>| {
        l.iter()
            .all(|i| levels.iter().all(|&u| f(u, i).is_none_or(|k| l.contains(k))))
    };
    let powers = unary_ok(&|u, i| cx.power(u, i));
    match lemma {
        SepLemma::MonoidPowers => {
            powers
                && l.contains(cx.one())
                && l.iter().all(|i| {
                    l.iter()
                        .all(|j| cx.tensor(i, j).is_none_or(|k| l.contains(k)))
                })
        }
        SepLemma::PowersMinus => powers && unary_ok(&|u, i| cx.minus(i, u)),
    }
}

/// Checks "premises ⇒ Sep" for one sub-structure. A failed premise makes
/// the implication vacuous and is recorded as a note.
pub fn sep_premise_audit(cx: &FunctionSpace, l: &SubStructure, lemma: SepLemma) -> Audit {
    let mut audit = Audit::new("separation premises");
    let closed = closed_under(cx, l, lemma);
    let initial = is_initial_cone(cx, l);
    let sep = check_sep(cx, l);
    if !closed {
        audit.note(format!("premise failed: not closed under the {lemma:?} operations; implication vacuous"));
    }
    if !initial {
        audit.note("premise failed: cone is not initial; implication vacuous");
    }
    if closed && initial {
        audit.check(sep.is_ok(), "premises imply Sep", || match sep {
            Err(SepFailure { x, y }) => format!("pair ({x}, {y}) not separated"),
            Ok(_) => String::new(),
        });
    }
    audit
}

#[derive(Clone, Debug)]
pub struct SwReport {
    pub audit: Audit,
    pub closure: SubStructure,
    pub sep_holds: bool,
    pub exact: bool,
}

/// Closure of the generators (down-set indicators by default) under
/// `OpSet::STONE`, then Sep, then density at level `(n-1)/n`.
pub fn sw_audit(p: &FinPoset, q: &Quantale, n: u32, generators: Option<&[usize]>) -> Result<SwReport, crate::duality::DualityError> {
    let cx = FunctionSpace::antitone(p, q, n)?;
    Ok(sw_audit_on(&cx, generators))
}

pub fn sw_audit_on(cx: &FunctionSpace, generators: Option<&[usize]>) -> SwReport {
    let mut audit = Audit::new("Stone-Weierstrass");
    audit.note("hom-continuity hypothesis is vacuous on a finite grid");
    audit.note("every subset of a finite CX is closed; density is checked at a fixed level instead");
    let default_gens = downset_indicators(cx);
    let gens = generators.unwrap_or(&default_gens);
    let closure = generate_closure(cx, gens, OpSet::STONE);
    let sep = check_sep(cx, &closure);
    let exact = closure.is_everything(cx);
    match sep {
        Err(SepFailure { x, y }) => {
            audit.note(format!("hypothesis failed: Sep fails at ({x}, {y}); density not asserted"));
        }
        Ok(_) => {
            let level = cx.algebra().top().saturating_sub(1);
            let dense = density_at_level(cx, &closure, level);
            audit.check(dense.is_ok(), "density at level (n-1)/n", || match dense {
                Err(psi) => format!("no approximant for {}", cx.render(psi)),
                Ok(_) => String::new(),
            });
        }
    }
    audit.note(format!(
        "closure has {} of {} members{}",
        closure.len(),
        cx.len(),
        if exact { " (exact equality)" } else { "" }
    ));
    SwReport {
        audit,
        closure,
        sep_holds: sep.is_ok(),
        exact,
    }
}
