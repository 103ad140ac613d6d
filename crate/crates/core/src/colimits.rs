//! Copowers, powers, weighted colimits and finite cocompleteness.
//!
//! All searches scan the carrier for an element satisfying the defining
//! equation; a missing colimit is reported as `None`, never as an error.

use thiserror::Error;

use crate::audit::{Audit, Witness};
use crate::poset::Subset;
use crate::quantale::GridAlgebra;
use crate::value::{GridChain, Value};
use crate::vcat::VCategory;
use crate::vrel::{check_adjoint, VRelation};

fn find(x: &VCategory, pred: impl Fn(usize) -> bool) -> Option<usize> {
    (0..x.size()).find(|&z| pred(z))
}

/// `p ⊗ u`: the element `z` with `a(z,w) = hom(u, a(p,w))` for every `w`.
pub fn copower(x: &VCategory, p: usize, u: Value) -> Option<usize> {
    let q = x.quantale();
    find(x, |z| (0..x.size()).all(|w| x.a(z, w) == q.hom(u, x.a(p, w))))
}

/// `p ⋔ u`: the element `z` with `a(w,z) = hom(u, a(w,p))` for every `w`.
pub fn upower(x: &VCategory, p: usize, u: Value) -> Option<usize> {
    let q = x.quantale();
    find(x, |z| (0..x.size()).all(|w| x.a(w, z) == q.hom(u, x.a(w, p))))
}

/// An element with `a(z,w) = 1` for every `w`.
pub fn bottom(x: &VCategory) -> Option<usize> {
    find(x, |z| (0..x.size()).all(|w| x.a(z, w).is_one()))
}

/// The conical supremum: `a(z,w) = a(p,w) ∧ a(r,w)` for every `w`.
pub fn conical_join(x: &VCategory, p: usize, r: usize) -> Option<usize> {
    find(x, |z| {
        (0..x.size()).all(|w| x.a(z, w) == x.a(p, w).min(x.a(r, w)))
    })
}

/// A least upper bound of `p` and `r` in the natural order.
pub fn order_join(x: &VCategory, p: usize, r: usize) -> Option<usize> {
    let n = x.size();
    let bounds: Vec<usize> = (0..n)
        .filter(|&z| x.a(p, z).is_one() && x.a(r, z).is_one())
        .collect();
    bounds
        .iter()
        .copied()
        .find(|&z| bounds.iter().all(|&b| x.a(z, b).is_one()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arrows do not form a V-functor into the target")]
    NotFunctor,
    #[error("weight is not a distributor")]
    NotDistributor,
    #[error("{0} arrows or weights for a shape of size {1}")]
    Shape(usize, usize),
}

/// A diagram `h: A -> X` with weight `ψ: A ⇸ G`.
#[derive(Clone, Debug)]
pub struct WeightedDiagram {
    shape: VCategory,
    arrows: Vec<usize>,
    weight: Vec<Value>,
}

impl WeightedDiagram {
    pub fn new(
        shape: VCategory,
        arrows: Vec<usize>,
        weight: Vec<Value>,
        target: &VCategory,
    ) -> Result<WeightedDiagram, DiagramError> {
        let n = shape.size();
        if arrows.len() != n || weight.len() != n {
            return Err(DiagramError::Shape(arrows.len().max(weight.len()), n));
        }
        if !shape.is_vfunctor(&arrows, target) {
            return Err(DiagramError::NotFunctor);
        }
        if !is_weight(&shape, &weight) {
            return Err(DiagramError::NotDistributor);
        }
        Ok(WeightedDiagram {
            shape,
            arrows,
            weight,
        })
    }

    pub fn shape(&self) -> &VCategory {
        &self.shape
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn weight(&self) -> &[Value] {
        &self.weight
    }
}

/// `ψ(z') ⊗ a(z,z') <= ψ(z)`: `ψ` is a distributor `A ⇸ G`.
pub fn is_weight(shape: &VCategory, weight: &[Value]) -> bool {
    let q = shape.quantale();
    let n = shape.size();
    (0..n).all(|z| (0..n).all(|w| q.tensor(shape.a(z, w), weight[w]) <= weight[z]))
}

/// An element `c` with `a(c,x) = min_z hom(ψ(z), a(h(z),x))` for every `x`.
pub fn weighted_colimit(x: &VCategory, d: &WeightedDiagram) -> Option<usize> {
    let q = x.quantale();
    let target: Vec<Value> = (0..x.size())
        .map(|w| {
            d.arrows
                .iter()
                .zip(&d.weight)
                .map(|(&h, &psi)| q.hom(psi, x.a(h, w)))
                .min()
                .unwrap_or(Value::ONE)
        })
        .collect();
    find(x, |c| (0..x.size()).all(|w| x.a(c, w) == target[w]))
}

/// `⋁_z h(z) ⊗ ψ(z)` built from copowers and conical joins, if they exist.
pub fn colimit_candidate(x: &VCategory, d: &WeightedDiagram) -> Option<usize> {
    let mut acc = bottom(x)?;
    for (&h, &psi) in d.arrows.iter().zip(&d.weight) {
        let c = copower(x, h, psi)?;
        acc = conical_join(x, acc, c)?;
    }
    Some(acc)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinSupAudit {
    pub has_bottom: bool,
    pub has_binary_joins: bool,
    pub joins_preserved_by_homming: bool,
    pub has_all_copowers: bool,
    pub witnesses: Vec<Witness>,
}

impl FinSupAudit {
    pub fn passed(&self) -> bool {
        self.has_bottom && self.has_binary_joins && self.joins_preserved_by_homming && self.has_all_copowers
    }
}

/// Bottom, binary joins preserved by every `a(-,w)`, and all `Q_n` copowers.
pub fn is_finitely_cocomplete(x: &VCategory, n: u32) -> FinSupAudit {
    let mut audit = FinSupAudit {
        has_bottom: bottom(x).is_some(),
        has_binary_joins: true,
        joins_preserved_by_homming: true,
        has_all_copowers: true,
        witnesses: Vec::new(),
    };
    if !audit.has_bottom {
        audit.witnesses.push(Witness::new("bottom", "no element below every other"));
    }
    let size = x.size();
    'joins: for p in 0..size {
        for r in p..size {
            match order_join(x, p, r) {
                None => {
                    audit.has_binary_joins = false;
                    audit.witnesses.push(Witness::new(
                        "binary join",
                        format!("{} and {} have no least upper bound", x.label(p), x.label(r)),
                    ));
                    break 'joins;
                }
                Some(z) => {
                    let bad = (0..size).find(|&w| x.a(z, w) != x.a(p, w).min(x.a(r, w)));
                    if let Some(w) = bad {
                        audit.joins_preserved_by_homming = false;
                        audit.witnesses.push(Witness::new(
                            "join preservation",
                            format!(
                                "a({}∨{}, {}) = {} but a(-,{}) gives {}",
                                x.label(p),
                                x.label(r),
                                x.label(w),
                                x.a(z, w),
                                x.label(w),
                                x.a(p, w).min(x.a(r, w))
                            ),
                        ));
                        break 'joins;
                    }
                }
            }
        }
    }
    'copowers: for p in 0..size {
        for u in GridChain::new(n).values() {
            if copower(x, p, u).is_none() {
                audit.has_all_copowers = false;
                audit
                    .witnesses
                    .push(Witness::new("copower", format!("{} ⊗ {u} is missing", x.label(p))));
                break 'copowers;
            }
        }
    }
    audit
}

/// V-functoriality plus preservation of bottom, binary joins and `Q_n`
/// copowers, each tested through the defining equations in the target.
pub fn is_finsup_morphism(f: &[usize], x: &VCategory, y: &VCategory, n: u32) -> Result<(), Witness> {
    if !x.is_vfunctor(f, y) {
        return Err(Witness::new("functor", "map is not a V-functor"));
    }
    let q = y.quantale();
    let m = y.size();
    if let Some(b) = bottom(x) {
        if let Some(w) = (0..m).find(|&w| !y.a(f[b], w).is_one()) {
            return Err(Witness::new(
                "bottom",
                format!("f(⊥) = {} is not below {}", y.label(f[b]), y.label(w)),
            ));
        }
    }
    for p in 0..x.size() {
        for r in p..x.size() {
            let Some(j) = conical_join(x, p, r) else { continue };
            if let Some(w) = (0..m).find(|&w| y.a(f[j], w) != y.a(f[p], w).min(y.a(f[r], w))) {
                return Err(Witness::new(
                    "join",
                    format!("f({}∨{}) differs from f({})∨f({}) at {}", x.label(p), x.label(r), x.label(p), x.label(r), y.label(w)),
                ));
            }
        }
        for u in GridChain::new(n).values() {
            let Some(c) = copower(x, p, u) else { continue };
            if let Some(w) = (0..m).find(|&w| y.a(f[c], w) != q.hom(u, y.a(f[p], w))) {
                return Err(Witness::new(
                    "copower",
                    format!("f({}⊗{u}) differs from f({})⊗{u} at {}", x.label(p), x.label(p), y.label(w)),
                ));
            }
        }
    }
    Ok(())
}

/// `1 <= max_{z ∈ M} a(p,z) ⊗ a(z,p)`.
pub fn closure_membership(x: &VCategory, m: &Subset, p: usize) -> bool {
    let q = x.quantale();
    m.iter().any(|z| q.tensor(x.a(p, z), x.a(z, p)).is_one())
}

pub fn closure(x: &VCategory, m: &Subset) -> Subset {
    Subset::from_elements(x.size(), (0..x.size()).filter(|&p| closure_membership(x, m, p)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TablesError {
    #[error("category is not separated")]
    NotSeparated,
    #[error("category is not finitely cocomplete")]
    NotCocomplete,
}

/// Operation tables `(⊥, ∨, ⊗u)` of a finitely cocomplete category,
/// with `u` ranging over a closed grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSupTables {
    size: usize,
    bottom: usize,
    join: Vec<usize>,
    act: Vec<usize>,
    algebra: GridAlgebra,
}

impl FinSupTables {
    pub fn from_category(x: &VCategory, algebra: &GridAlgebra) -> Result<FinSupTables, TablesError> {
        if !x.is_separated() {
            return Err(TablesError::NotSeparated);
        }
        let size = x.size();
        let bottom = bottom(x).ok_or(TablesError::NotCocomplete)?;
        let mut join = vec![0; size * size];
        for p in 0..size {
            for r in 0..size {
                join[p * size + r] = conical_join(x, p, r).ok_or(TablesError::NotCocomplete)?;
            }
        }
        let levels = algebra.len();
        let mut act = vec![0; size * levels];
        for p in 0..size {
            for k in algebra.levels() {
                act[p * levels + k as usize] =
                    copower(x, p, algebra.value(k)).ok_or(TablesError::NotCocomplete)?;
            }
        }
        Ok(FinSupTables {
            size,
            bottom,
            join,
            act,
            algebra: algebra.clone(),
        })
    }

    pub fn join(&self, p: usize, r: usize) -> usize {
        self.join[p * self.size + r]
    }

    pub fn act(&self, p: usize, k: u8) -> usize {
        self.act[p * self.algebra.len() + k as usize]
    }

    /// Overwrites one copower entry.
    pub fn set_act(&mut self, p: usize, k: u8, value: usize) {
        let levels = self.algebra.len();
        self.act[p * levels + k as usize] = value;
    }

    fn leq(&self, p: usize, r: usize) -> bool {
        self.join(p, r) == r
    }
}

/// The equational presentation of finitely cocomplete categories, plus the
/// grid-restricted sup-continuity of the action.
pub fn quasivariety_audit(t: &FinSupTables) -> Audit {
    let mut audit = Audit::new("quasivariety");
    let g = &t.algebra;
    let n = t.size;
    let one = g.top();
    for x in 0..n {
        audit.check(t.join(x, x) == x, "x∨x = x", || format!("x = {x}"));
        audit.check(t.join(x, t.bottom) == x, "x∨⊥ = x", || format!("x = {x}"));
        audit.check(t.act(x, one) == x, "x⊗1 = x", || format!("x = {x}"));
        for y in 0..n {
            audit.check(t.join(x, y) == t.join(y, x), "x∨y = y∨x", || format!("({x}, {y})"));
            for z in 0..n {
                audit.check(
                    t.join(t.join(x, y), z) == t.join(x, t.join(y, z)),
                    "(x∨y)∨z = x∨(y∨z)",
                    || format!("({x}, {y}, {z})"),
                );
            }
        }
    }
    for u in g.levels() {
        audit.check(t.act(t.bottom, u) == t.bottom, "⊥⊗u = ⊥", || {
            format!("u = {}", g.value(u))
        });
        for x in 0..n {
            for v in g.levels() {
                audit.check(
                    t.act(t.act(x, u), v) == t.act(x, g.tensor(u, v)),
                    "(x⊗u)⊗v = x⊗(u⊗v)",
                    || format!("x = {x}, u = {}, v = {}", g.value(u), g.value(v)),
                );
            }
            for y in 0..n {
                audit.check(
                    t.act(t.join(x, y), u) == t.join(t.act(x, u), t.act(y, u)),
                    "(x∨y)⊗u = (x⊗u)∨(y⊗u)",
                    || format!("x = {x}, y = {y}, u = {}", g.value(u)),
                );
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for v in g.levels() {
                let premise = (0..=v).all(|u| t.leq(t.act(x, u), y));
                let conclusion = t.leq(t.act(x, v), y);
                audit.check(!premise || conclusion, "sup-continuity", || {
                    format!("x = {x}, y = {y}, v = {}", g.value(v))
                });
            }
        }
    }
    audit
}

/// For every sub-category `A` with at most `max_shape` objects, every
/// `Q_n`-valued weight `ψ: A ⇸ G` with a `Q_n`-valued left adjoint must
/// have a colimit along the inclusion.
pub fn is_cauchy_complete_desk(x: &VCategory, n: u32, max_shape: usize) -> Audit {
    let mut audit = Audit::new("Cauchy completeness");
    let q = x.quantale().clone();
    let grid: Vec<Value> = GridChain::new(n).values().collect();
    let unit = VCategory::unit(q.clone());
    for k in 1..=max_shape.min(x.size()) {
        for subset in combinations(x.size(), k) {
            let shape = VCategory::new(
                q.clone(),
                crate::vcat::Matrix::from_fn(k, k, |i, j| x.a(subset[i], subset[j])),
            )
            .expect("square");
            for weight in tuples(&grid, k) {
                if !is_weight(&shape, &weight) {
                    continue;
                }
                let right = VRelation::from_fn(k, 1, |z, _| weight[z]);
                let has_left = tuples(&grid, k).any(|left| {
                    let left = VRelation::from_fn(1, k, |_, z| left[z]);
                    check_adjoint(&left, &right, &unit, &shape).is_ok()
                });
                if !has_left {
                    continue;
                }
                let d = WeightedDiagram {
                    shape: shape.clone(),
                    arrows: subset.clone(),
                    weight: weight.clone(),
                };
                audit.check(weighted_colimit(x, &d).is_some(), "Cauchy colimit", || {
                    let w: Vec<String> = weight.iter().map(Value::to_string).collect();
                    format!("objects {subset:?}, weight ({})", w.join(", "))
                });
            }
        }
    }
    audit
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn tuples(values: &[Value], len: usize) -> impl Iterator<Item = Vec<Value>> + '_ {
    let total = values.len().pow(len as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![Value::ZERO; len];
        for slot in t.iter_mut().rev() {
            *slot = values[code % values.len()];
            code /= values.len();
        }
        t
    })
}
