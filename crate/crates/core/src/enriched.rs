//! Finite separated `[0,1]`-categories and their function spaces.
//!
//! For such an `X`, `CX` holds every `ψ: X -> Q_n` with
//! `a(x,y) <= hom(ψ(y), ψ(x))`. A grid distributor `φ: 1 ⇸ X` induces
//! `Φ(ψ) = max_x ψ(x) ⊗ φ(x)`, and [`retract_phi`] recovers `φ` from `Φ`.

use std::collections::HashMap;

use thiserror::Error;

use crate::audit::Audit;
use crate::duality::{
    check_condition, for_each_table, sample_corpus, Condition, DualityError, Functional, FunctionSpace,
    EXHAUSTIVE_CAP,
};
use crate::quantale::{Level, Quantale};
use crate::value::{GridChain, Value};
use crate::vcat::{all_grid_categories, CategoryViolation, VCategory};
use crate::vrel::{compose, is_distributor, VRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnrichedError {
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Invalid(#[from] CategoryViolation),
    #[error("category is not separated")]
    NotSeparated,
    #[error("category is not order-based")]
    NotPoset,
    #[error("value {0} is not on the grid")]
    OffGrid(Value),
    #[error("element is not in the function space")]
    NotMember,
}

/// Validates `x` and enumerates its function space.
pub fn enumerate_cx(x: &VCategory, n: u32) -> Result<FunctionSpace, EnrichedError> {
    x.validate()?;
    if !x.is_separated() {
        return Err(EnrichedError::NotSeparated);
    }
    Ok(FunctionSpace::enriched(x, n)?)
}

/// The representable `a(-, x)` as a member of `cx`.
pub fn representable(x: &VCategory, cx: &FunctionSpace, point: usize) -> Option<usize> {
    let f: Vec<Value> = (0..x.size()).map(|y| x.a(y, point)).collect();
    cx.index_of_values(&f)
}

/// Representables are members, and the space is closed under `∨`, `u ⊗ -`,
/// `- ⊖ u` and `hom(u, -)`.
pub fn cx_structure_audit(x: &VCategory, cx: &FunctionSpace) -> Audit {
    let mut audit = Audit::new("function space structure");
    for p in 0..x.size() {
        audit.check(representable(x, cx, p).is_some(), "representable", || format!("a(-, {p})"));
    }
    for i in 0..cx.len() {
        for j in i..cx.len() {
            cx.join(i, j);
        }
        for u in cx.algebra().levels() {
            audit.check(cx.act(u, i).is_some(), "closed under u ⊗ -", || cx.render(i));
            audit.check(cx.minus(i, u).is_some(), "closed under - ⊖ u", || cx.render(i));
            audit.check(cx.power(u, i).is_some(), "closed under hom(u, -)", || cx.render(i));
        }
    }
    audit
}

/// First pair `(x, y)` where `a(x,y) != min_ψ hom(ψ(y), ψ(x))` over the
/// selected members.
pub fn cogeneration_gap(
    x: &VCategory,
    cx: &FunctionSpace,
    member: impl Fn(usize) -> bool,
) -> Option<(usize, usize)> {
    let g = cx.algebra();
    for p in 0..x.size() {
        for q in 0..x.size() {
            let best = (0..cx.len())
                .filter(|&k| member(k))
                .map(|k| g.hom(cx.get(k)[q], cx.get(k)[p]))
                .min()
                .unwrap_or(g.top());
            if g.value(best) != x.a(p, q) {
                return Some((p, q));
            }
        }
    }
    None
}

pub fn is_cogenerated(x: &VCategory, cx: &FunctionSpace) -> bool {
    cogeneration_gap(x, cx, |_| true).is_none()
}

fn grid_tables(len: usize, n: u32) -> impl Iterator<Item = Vec<Value>> {
    let grid: Vec<Value> = GridChain::new(n).values().collect();
    let base = grid.len();
    let total = base.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut out = vec![Value::ZERO; len];
        for slot in out.iter_mut().rev() {
            *slot = grid[code % base];
            code /= base;
        }
        out
    })
}

/// All distributors `X ⇸ Y` with entries on `Q_n`.
pub fn grid_distributors(x: &VCategory, y: &VCategory, n: u32) -> Vec<VRelation> {
    let (rows, cols) = (x.size(), y.size());
    grid_tables(rows * cols, n)
        .map(|t| VRelation::from_fn(rows, cols, |i, j| t[i * cols + j]))
        .filter(|r| is_distributor(r, x, y))
        .collect()
}

/// All distributors `1 ⇸ X` with entries on `Q_n`.
pub fn grid_weights(x: &VCategory, n: u32) -> Vec<VRelation> {
    grid_distributors(&VCategory::unit(x.quantale().clone()), x, n)
}

fn levels_of(cx: &FunctionSpace, r: &VRelation) -> Result<Vec<Vec<Level>>, EnrichedError> {
    (0..r.src())
        .map(|i| {
            (0..r.dst())
                .map(|j| cx.algebra().level_of(r.get(i, j)).ok_or(EnrichedError::OffGrid(r.get(i, j))))
                .collect()
        })
        .collect()
}

/// `Φ(ψ) = max_x ψ(x) ⊗ φ(x)` for `φ: 1 ⇸ X`.
pub fn enriched_c(cx: &FunctionSpace, phi: &VRelation) -> Result<Functional, EnrichedError> {
    let w = levels_of(cx, phi)?.remove(0);
    let g = cx.algebra();
    Ok(Functional::new(
        (0..cx.len())
            .map(|k| {
                let psi = cx.get(k);
                (0..cx.points()).map(|p| g.tensor(psi[p], w[p])).max().unwrap_or(0)
            })
            .collect(),
    ))
}

/// `Cφ(ψ)(x) = max_y φ(x,y) ⊗ ψ(y)` for `φ: X ⇸ Y`, as indices `CY -> CX`.
pub fn enriched_c_map(phi: &VRelation, cy: &FunctionSpace, cx: &FunctionSpace) -> Result<Vec<usize>, EnrichedError> {
    if phi.src() != cx.points() || phi.dst() != cy.points() {
        return Err(DualityError::Shape.into());
    }
    let m = levels_of(cx, phi)?;
    let g = cx.algebra();
    (0..cy.len())
        .map(|k| {
            let psi = cy.get(k);
            let f: Vec<Level> = m
                .iter()
                .map(|row| row.iter().zip(psi).map(|(&a, &b)| g.tensor(a, b)).max().unwrap_or(0))
                .collect();
            cx.index_of(&f).ok_or(EnrichedError::NotMember)
        })
        .collect()
}

/// Both retraction formulas: `min_ψ hom(ψ(x), Φ(ψ))` and
/// `min_{ψ(x)=1} Φ(ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub general: VRelation,
    pub simplified: VRelation,
}

pub fn retract_phi(cx: &FunctionSpace, big_phi: &Functional) -> Retraction {
    let g = cx.algebra();
    let general: Vec<Level> = (0..cx.points())
        .map(|p| {
            (0..cx.len())
                .map(|k| g.hom(cx.get(k)[p], big_phi.at(k)))
                .min()
                .unwrap_or(g.top())
        })
        .collect();
    let simplified: Vec<Level> = (0..cx.points())
        .map(|p| {
            (0..cx.len())
                .filter(|&k| cx.get(k)[p] == g.top())
                .map(|k| big_phi.at(k))
                .min()
                .unwrap_or(g.top())
        })
        .collect();
    let row = |v: &[Level]| VRelation::from_fn(1, cx.points(), |_, p| g.value(v[p]));
    Retraction {
        general: row(&general),
        simplified: row(&simplified),
    }
}

fn weight_levels(cx: &FunctionSpace, r: &VRelation) -> Vec<Level> {
    (0..r.dst())
        .map(|p| cx.algebra().level_of(r.get(0, p)).expect("retractions stay on the grid"))
        .collect()
}

/// Corpus settings for functionals that are not of the form `Cφ`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub size: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { seed: 0, size: 2000 }
    }
}

#[derive(Clone, Debug)]
pub struct AdjunctionReport {
    pub audit: Audit,
    pub weights: usize,
    pub functionals: u64,
    pub max_gap: u32,
}

/// `retract(Cφ) = φ` for every grid weight, both formulas agreeing and
/// landing in distributors; and `C(retract Φ) <= Φ` for functionals that
/// preserve order, the action and binary joins, with equality logged.
pub fn adjunction_audit(x: &VCategory, cx: &FunctionSpace, corpus: CorpusConfig) -> AdjunctionReport {
    let mut audit = Audit::new("adjunction");
    let unit = VCategory::unit(x.quantale().clone());
    let weights = grid_weights(x, cx.n());
    let mut images = Vec::with_capacity(weights.len());
    for phi in &weights {
        let big = match enriched_c(cx, phi) {
            Ok(b) => b,
            Err(e) => {
                audit.fail("Cφ", e.to_string());
                continue;
            }
        };
        let r = retract_phi(cx, &big);
        audit.check(r.general == r.simplified, "retraction formulas agree", || big.render(cx));
        audit.check(phi.leq(&r.general), "φ <= retract(Cφ)", || format!("{:?}", phi.matrix()));
        audit.check(r.general == *phi, "retract(Cφ) = φ", || {
            format!("{:?} -> {:?}", phi.matrix(), r.general.matrix())
        });
        audit.check(is_distributor(&r.general, &unit, x), "retraction is a distributor", || {
            big.render(cx)
        });
        images.push(big);
    }
    let mut functionals = 0u64;
    let mut max_gap = 0u32;
    let mut visit = |big: &Functional, audit: &mut Audit| {
        let finsup = [Condition::Mon, Condition::Act, Condition::Sup]
            .iter()
            .all(|&c| check_condition(cx, big, c).is_none());
        if !finsup {
            return;
        }
        functionals += 1;
        let r = retract_phi(cx, big);
        audit.check(r.general == r.simplified, "retraction formulas agree", || big.render(cx));
        let w = weight_levels(cx, &r.general);
        let g = cx.algebra();
        let back: Vec<Level> = (0..cx.len())
            .map(|k| (0..cx.points()).map(|p| g.tensor(cx.get(k)[p], w[p])).max().unwrap_or(0))
            .collect();
        audit.check(
            (0..cx.len()).all(|k| back[k] <= big.at(k)),
            "C(retract Φ) <= Φ",
            || big.render(cx),
        );
        let gap = (0..cx.len()).map(|k| big.at(k).abs_diff(back[k]) as u32).max().unwrap_or(0);
        if gap > 0 {
            max_gap = max_gap.max(gap);
            audit.finding("C(retract Φ) = Φ", format!("{} differs by {gap} grid steps", big.render(cx)));
        }
    };
    for big in &images {
        visit(big, &mut audit);
    }
    let total = (cx.algebra().len() as u128).checked_pow(cx.len() as u32);
    match total {
        Some(t) if t <= EXHAUSTIVE_CAP as u128 => {
            audit.note(format!("functional corpus: exhaustive ({t} tables)"));
            for_each_table(cx, |big| visit(big, &mut audit));
        }
        _ => {
            audit.note(format!(
                "functional corpus: seed {}, {} tables plus all Cφ",
                corpus.seed, corpus.size
            ));
            for big in sample_corpus(cx, corpus.seed, corpus.size) {
                visit(&big, &mut audit);
            }
        }
    }
    AdjunctionReport {
        audit,
        weights: weights.len(),
        functionals,
        max_gap,
    }
}

/// `a(y,x) = min_{ψ(x)=1} ψ(y)` for every pair.
pub fn lemma1_audit(x: &VCategory, cx: &FunctionSpace) -> Audit {
    let mut audit = Audit::new("lemma1");
    let g = cx.algebra();
    for p in 0..x.size() {
        for q in 0..x.size() {
            let best = (0..cx.len())
                .filter(|&k| cx.get(k)[p] == g.top())
                .map(|k| cx.get(k)[q])
                .min()
                .unwrap_or(g.top());
            audit.check(g.value(best) == x.a(q, p), "a(y,x) = min_{ψ(x)=1} ψ(y)", || {
                format!("x = {p}, y = {q}: a = {}, min = {}", x.a(q, p), g.value(best))
            });
        }
    }
    audit
}

/// Distinct grid weights give distinct `Cφ`.
pub fn pointsep_extension_audit(x: &VCategory, cx: &FunctionSpace) -> Audit {
    let mut audit = Audit::new("point separation");
    let mut seen: HashMap<Functional, VRelation> = HashMap::new();
    for phi in grid_weights(x, cx.n()) {
        let big = match enriched_c(cx, &phi) {
            Ok(b) => b,
            Err(e) => {
                audit.fail("Cφ", e.to_string());
                continue;
            }
        };
        let clash = seen.get(&big).cloned();
        audit.check(clash.is_none(), "distinct weights separated", || {
            format!("{:?} and {:?}", clash.as_ref().map(|c| c.matrix().clone()), phi.matrix())
        });
        seen.insert(big, phi);
    }
    audit
}

/// On an order-based `X`: `φ` is 0/1-valued iff `Cφ` satisfies TenLax.
pub fn twovalued_audit(x: &VCategory, cx: &FunctionSpace) -> Result<Audit, EnrichedError> {
    if !x.is_crisp() {
        return Err(EnrichedError::NotPoset);
    }
    let mut audit = Audit::new("twovalued");
    for phi in grid_weights(x, cx.n()) {
        let crisp = phi.matrix().is_crisp();
        let big = enriched_c(cx, &phi)?;
        let w = check_condition(cx, &big, Condition::TenLax);
        audit.check(crisp == w.is_none(), "0/1-valued iff TenLax", || {
            let shown = w.as_ref().map_or(String::from("holds"), |w| w.render(cx));
            format!("φ = {:?}, TenLax: {shown}", phi.matrix())
        });
    }
    Ok(audit)
}

#[derive(Clone, Debug)]
pub struct TensorMaxReport {
    pub audit: Audit,
    pub candidates: usize,
    pub survivors: usize,
}

/// Among `Cφ` for grid distributors `X ⇸ X`, those with `Φ(1) <= ψ₀` and
/// `Φ(ψ) <= ψ` are all below `ψ₀ ⊗ -`, which itself survives.
pub fn tensor_maximality_audit(x: &VCategory, cx: &FunctionSpace, psi0: usize) -> Result<TensorMaxReport, EnrichedError> {
    if !x.is_crisp() {
        return Err(EnrichedError::NotPoset);
    }
    let mut audit = Audit::new("tensor maximality");
    let target: Vec<usize> = (0..cx.len())
        .map(|k| cx.tensor(psi0, k).ok_or(EnrichedError::NotMember))
        .collect::<Result<_, _>>()?;
    let dists = grid_distributors(x, x, cx.n());
    let mut survivors = 0;
    let mut target_survives = false;
    for phi in &dists {
        let map = enriched_c_map(phi, cx, cx)?;
        let ok = cx.leq(map[cx.one()], psi0) && (0..cx.len()).all(|k| cx.leq(map[k], k));
        if !ok {
            continue;
        }
        survivors += 1;
        target_survives |= map == target;
        audit.check(
            (0..cx.len()).all(|k| cx.leq(map[k], target[k])),
            "survivor below ψ₀ ⊗ -",
            || format!("φ = {:?}", phi.matrix()),
        );
    }
    audit.check(target_survives, "ψ₀ ⊗ - survives", || cx.render(psi0));
    Ok(TensorMaxReport {
        audit,
        candidates: dists.len(),
        survivors,
    })
}

/// Over every separated grid category of size `1..=max_size`: cogeneration
/// count, and for cogenerated ones the roundtrip, lemma1 and point
/// separation.
pub fn enriched_roundtrip_sweep(q: &Quantale, n: u32, max_size: usize, corpus: CorpusConfig) -> Result<Audit, EnrichedError> {
    let mut audit = Audit::new("enriched roundtrip");
    let half = Value::new(1, 2).expect("valid");
    let mut non_poset_half = 0usize;
    for size in 1..=max_size {
        let cats: Vec<VCategory> = all_grid_categories(q, n, size)
            .into_iter()
            .filter(|c| c.is_separated())
            .collect();
        let mut cogenerated = 0;
        for x in &cats {
            let cx = enumerate_cx(x, n)?;
            if !is_cogenerated(x, &cx) {
                continue;
            }
            cogenerated += 1;
            if !x.is_crisp() && (0..size).any(|i| (0..size).any(|j| x.a(i, j) == half)) {
                non_poset_half += 1;
            }
            audit.absorb(adjunction_audit(x, &cx, corpus).audit);
            audit.absorb(lemma1_audit(x, &cx));
            audit.absorb(pointsep_extension_audit(x, &cx));
        }
        audit.note(format!(
            "size {size}: {} separated, {cogenerated} cogenerated",
            cats.len()
        ));
    }
    audit.note(format!("{non_poset_half} cogenerated instances are not order-based and use 1/2"));
    Ok(audit)
}

/// `C(φ'·φ) = Cφ ∘ Cφ'` for `φ: X ⇸ Y`, `φ': Y ⇸ Z`.
pub fn enriched_functoriality(
    q: &Quantale,
    first: &VRelation,
    second: &VRelation,
    cx: &FunctionSpace,
    cy: &FunctionSpace,
    cz: &FunctionSpace,
) -> Result<bool, EnrichedError> {
    let comp = compose(q, second, first).map_err(|_| DualityError::Shape)?;
    let whole = enriched_c_map(&comp, cz, cx)?;
    let c1 = enriched_c_map(first, cy, cx)?;
    let c2 = enriched_c_map(second, cz, cy)?;
    Ok((0..cz.len()).all(|k| whole[k] == c1[c2[k]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{c_of_distributor, phi_of};
    use crate::poset::{all_posets, FinPoset};
    use crate::vcat::Matrix;
    use crate::vietoris::all_kleisli_morphisms;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    fn two_point() -> VCategory {
        let m = Matrix::from_rows(vec![vec![v("1"), v("1/2")], vec![v("0"), v("1")]]).unwrap();
        VCategory::new(Quantale::lukasiewicz(), m).unwrap()
    }

    #[test]
    fn enumerations() {
        let q = Quantale::lukasiewicz();
        assert_eq!(enumerate_cx(&VCategory::unit(q.clone()), 2).unwrap().len(), 3);
        let x = two_point();
        let cx = enumerate_cx(&x, 2).unwrap();
        assert_eq!(cx.len(), 8);
        assert!(cx.index_of(&[0, 2]).is_none());
        assert!(cx_structure_audit(&x, &cx).passed());
        assert!(is_cogenerated(&x, &cx));
        for p in all_posets(3) {
            let ordered = FunctionSpace::antitone(&p, &q, 2).unwrap();
            let enriched = enumerate_cx(&VCategory::from_poset(q.clone(), &p), 2).unwrap();
            assert_eq!(ordered.len(), enriched.len());
            assert!((0..ordered.len()).all(|i| ordered.get(i) == enriched.get(i)));
        }
    }

    #[test]
    fn truncated_space_is_not_cogenerating() {
        let x = two_point();
        let cx = enumerate_cx(&x, 2).unwrap();
        let constants: Vec<usize> = (0..=2).filter_map(|k| cx.constant(k)).collect();
        assert_eq!(cogeneration_gap(&x, &cx, |k| constants.contains(&k)), Some((0, 1)));
    }

    #[test]
    fn single_point_examples() {
        let q = Quantale::lukasiewicz();
        let one = VCategory::unit(q.clone());
        let cx = enumerate_cx(&one, 2).unwrap();
        let phi = VRelation::from_fn(1, 1, |_, _| v("1/2"));
        let big = enriched_c(&cx, &phi).unwrap();
        assert_eq!(big.levels(), &[0, 0, 1]);
        assert_eq!(retract_phi(&cx, &big).general, phi);
        let zero = Functional::constant(&cx, 0);
        assert!(retract_phi(&cx, &zero).general.get(0, 0).is_zero());
        let zphi = VRelation::from_fn(1, 1, |_, _| Value::ZERO);
        let zero_big = enriched_c(&cx, &zphi).unwrap();
        assert_eq!(zero_big, zero);
        let a = pointsep_extension_audit(&one, &cx);
        assert!(a.passed() && a.checked == 3);
    }

    #[test]
    fn two_point_audits() {
        let x = two_point();
        let cx = enumerate_cx(&x, 2).unwrap();
        let r = adjunction_audit(&x, &cx, CorpusConfig::default());
        assert!(r.audit.passed(), "{}", r.audit);
        assert_eq!(r.max_gap, 0);
        assert!(lemma1_audit(&x, &cx).passed());
        assert!(pointsep_extension_audit(&x, &cx).passed());
        assert_eq!(twovalued_audit(&x, &cx).unwrap_err(), EnrichedError::NotPoset);
    }

    #[test]
    fn chain_cross_checks() {
        let q = Quantale::lukasiewicz();
        let p = FinPoset::chain(2);
        let x = VCategory::from_poset(q.clone(), &p);
        let cx = enumerate_cx(&x, 2).unwrap();
        // Crisp weights are the representables of the ordered theory.
        for a in p.upper_sets() {
            let w = VRelation::from_fn(1, 2, |_, y| if a.contains(y) { Value::ONE } else { Value::ZERO });
            let big = enriched_c(&cx, &w).unwrap();
            assert_eq!(big, phi_of(&cx, &a));
            assert_eq!(retract_phi(&cx, &big).general, w);
        }
        for k in all_kleisli_morphisms(&p, &p) {
            assert_eq!(enriched_c_map(&k.to_vrelation(), &cx, &cx).unwrap(), c_of_distributor(&k, &cx, &cx).unwrap());
        }
        let id = enriched_c_map(&VRelation::identity(&x), &cx, &cx).unwrap();
        assert_eq!(id, (0..cx.len()).collect::<Vec<_>>());
        let a = twovalued_audit(&x, &cx).unwrap();
        assert!(a.passed() && a.checked == 6, "{a}");
        let lemma = lemma1_audit(&x, &cx);
        assert!(lemma.passed());
    }

    #[test]
    fn tensor_maximality_examples() {
        let q = Quantale::lukasiewicz();
        let x = VCategory::from_poset(q, &FinPoset::chain(2));
        let cx = enumerate_cx(&x, 2).unwrap();
        let psi0 = cx.index_of(&[2, 1]).unwrap();
        let r = tensor_maximality_audit(&x, &cx, psi0).unwrap();
        assert!(r.audit.passed(), "{}", r.audit);
        assert_eq!((r.candidates, r.survivors), (20, 11));
        for k in [cx.one(), cx.zero()] {
            assert!(tensor_maximality_audit(&x, &cx, k).unwrap().audit.passed());
        }
    }

    #[test]
    fn functoriality_on_grid_distributors() {
        let q = Quantale::lukasiewicz();
        let x = two_point();
        let one = VCategory::unit(q.clone());
        let cx = enumerate_cx(&x, 2).unwrap();
        let c1 = enumerate_cx(&one, 2).unwrap();
        for f in grid_distributors(&one, &x, 2) {
            for g in grid_distributors(&x, &x, 2).iter().step_by(7) {
                assert!(enriched_functoriality(&q, &f, g, &c1, &cx, &cx).unwrap());
            }
        }
    }

    #[test]
    fn cogenerated_counts() {
        let q = Quantale::lukasiewicz();
        let count = |n: u32, size: usize| {
            all_grid_categories(&q, n, size)
                .into_iter()
                .filter(|c| c.is_separated())
                .filter(|c| is_cogenerated(c, &enumerate_cx(c, n).unwrap()))
                .count()
        };
        assert_eq!((count(1, 1), count(1, 2), count(1, 3)), (1, 3, 19));
        assert_eq!((count(2, 1), count(2, 2)), (1, 8));
    }
}
