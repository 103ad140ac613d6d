//! The lower Vietoris monad on finite posets and its Kleisli category.
//!
//! On a finite discrete space every subset is closed, so `VX` is the set of
//! upper sets ordered by `⊇`, with unit `x ↦ ↑x` and multiplication given
//! by union.

use std::collections::HashMap;

use rand::RngExt;
use thiserror::Error;

use crate::audit::Audit;
use crate::poset::{FinPoset, Subset};
use crate::value::Value;
use crate::vrel::VRelation;

/// Elements of `VVVX` enumerated before falling back to reachable ones.
pub const ENUMERATION_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VietorisError {
    #[error("map is not monotone")]
    NotMonotone,
    #[error("row {0} is not an upper set of the target")]
    RowNotUpper(usize),
    #[error("rows {0} and {1} violate down-closure in the source")]
    NotDownClosed(usize, usize),
    #[error("relation has {0} rows for a source of size {1}")]
    Shape(usize, usize),
}

/// `VP`: the upper sets of `P` in canonical order, as a poset under `⊇`.
#[derive(Clone, Debug)]
pub struct VietorisSpace {
    base_size: usize,
    elements: Vec<Subset>,
    index: HashMap<Subset, usize>,
    poset: FinPoset,
}

impl VietorisSpace {
    pub fn new(p: &FinPoset) -> VietorisSpace {
        VietorisSpace::from_elements(p.size(), p.upper_sets())
    }

    fn from_elements(base_size: usize, elements: Vec<Subset>) -> VietorisSpace {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let leq: Vec<Vec<bool>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| b.is_subset(a)).collect())
            .collect();
        let poset = FinPoset::from_leq(&leq).expect("reverse inclusion is a partial order");
        VietorisSpace {
            base_size,
            elements,
            index,
            poset,
        }
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn element(&self, i: usize) -> &Subset {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Subset] {
        &self.elements
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.index.get(s).copied()
    }
}

pub fn vietoris(p: &FinPoset) -> VietorisSpace {
    VietorisSpace::new(p)
}

/// `Vf(A) = ↑f[A]`.
pub fn vietoris_map(
    f: &[usize],
    p: &FinPoset,
    r: &FinPoset,
    vp: &VietorisSpace,
    vr: &VietorisSpace,
) -> Result<Vec<usize>, VietorisError> {
    if !p.is_monotone(f, r) {
        return Err(VietorisError::NotMonotone);
    }
    Ok(vp
        .elements
        .iter()
        .map(|a| {
            let image = Subset::from_elements(r.size(), a.iter().map(|x| f[x]));
            vr.index_of(&r.up_closure(&image)).expect("up-closure is upper")
        })
        .collect())
}

/// `e(x) = ↑x`.
pub fn unit(p: &FinPoset, vp: &VietorisSpace) -> Vec<usize> {
    (0..p.size())
        .map(|x| vp.index_of(p.principal_up(x)).expect("principal up-set"))
        .collect()
}

/// Union of a family of subsets of a carrier of size `len`.
pub type UnionFn<'a> = &'a dyn Fn(&[&Subset], usize) -> Subset;

pub fn union_of(family: &[&Subset], len: usize) -> Subset {
    let mut out = Subset::empty(len);
    for s in family {
        out.union_with(s);
    }
    out
}

/// `m(𝒜) = ⋃𝒜`, as a map `VVP -> VP`.
pub fn mult(vp: &VietorisSpace, vvp: &VietorisSpace) -> Vec<usize> {
    mult_with(vp, vvp, &union_of)
}

fn mult_with(vp: &VietorisSpace, vvp: &VietorisSpace, union: UnionFn) -> Vec<usize> {
    vvp.elements
        .iter()
        .map(|family| flatten(vp, family, union))
        .collect()
}

fn flatten(vp: &VietorisSpace, family: &Subset, union: UnionFn) -> usize {
    let members: Vec<&Subset> = family.iter().map(|i| vp.element(i)).collect();
    let u = union(&members, vp.base_size());
    // A corrupted union may leave VP; map it to an impossible index.
    vp.index_of(&u).unwrap_or(usize::MAX)
}

pub fn verify_monad_laws(p: &FinPoset) -> Audit {
    verify_monad_laws_with(p, &union_of)
}

/// Unit and associativity laws with `union` standing in for multiplication.
///
/// `VVVX` is enumerated exhaustively when it has at most
/// [`ENUMERATION_CAP`] elements; otherwise associativity is checked on the
/// empty family, every principal family, and pairwise unions of principal
/// families.
pub fn verify_monad_laws_with(p: &FinPoset, union: UnionFn) -> Audit {
    let mut audit = Audit::new("Vietoris monad laws");
    let v1 = vietoris(p);
    let v2 = vietoris(v1.poset());
    let m1 = mult_with(&v1, &v2, union);
    let e_v = unit(v1.poset(), &v2);
    let e_p = unit(p, &v1);
    let ve = vietoris_map(&e_p, p, v1.poset(), &v1, &v2).expect("unit is monotone");
    for a in 0..v1.len() {
        audit.check(m1[e_v[a]] == a, "m·eV = id", || format!("A = {}", v1.element(a)));
        audit.check(m1[ve[a]] == a, "m·Ve = id", || format!("A = {}", v1.element(a)));
    }
    let families: Vec<Subset> = match v2.poset().upper_sets_capped(ENUMERATION_CAP) {
        Some(all) => {
            audit.note(format!("VVVX enumerated exhaustively: {} elements", all.len()));
            all
        }
        None => {
            let q = v2.poset();
            let principal: Vec<Subset> = (0..v2.len()).map(|i| q.principal_up(i).clone()).collect();
            let mut reached = vec![Subset::empty(v2.len())];
            reached.extend(principal.iter().cloned());
            for i in 0..principal.len() {
                for j in i + 1..principal.len() {
                    reached.push(principal[i].union(&principal[j]));
                }
            }
            audit.note(format!(
                "VVVX exceeds {ENUMERATION_CAP}; checked {} reached elements",
                reached.len()
            ));
            reached
        }
    };
    for fam in &families {
        let inner = flatten(&v2, fam, union);
        let left = if inner == usize::MAX { usize::MAX } else { m1[inner] };
        let images = Subset::from_elements(
            v1.len(),
            fam.iter().map(|i| m1[i]).filter(|&i| i != usize::MAX),
        );
        let pushed = v1.poset().up_closure(&images);
        let right = v2.index_of(&pushed).map_or(usize::MAX, |i| m1[i]);
        audit.check(left == right && left != usize::MAX, "m·mV = m·Vm", || {
            format!("family of {} elements of VVX", fam.count())
        });
    }
    audit
}

/// `∅` or a principal upper set.
pub fn is_irreducible(p: &FinPoset, a: &Subset) -> bool {
    a.is_empty() || p.minimal_elements(a).len() == 1
}

/// Direct check: no decomposition `A = A₁ ∪ A₂` into proper upper subsets.
pub fn is_irreducible_by_decomposition(p: &FinPoset, a: &Subset) -> bool {
    let uppers: Vec<Subset> = p
        .upper_sets()
        .into_iter()
        .filter(|s| s.is_subset(a) && s != a)
        .collect();
    !uppers
        .iter()
        .any(|s| uppers.iter().any(|t| &s.union(t) == a))
}

/// A 0/1 distributor between finite posets: row `x` lists the `y` with
/// `x φ y`; rows are upper sets and shrink as `x` grows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KleisliMorphism {
    rows: Vec<Subset>,
    dst: usize,
}

impl KleisliMorphism {
    pub fn new(src: &FinPoset, dst: &FinPoset, rows: Vec<Subset>) -> Result<KleisliMorphism, VietorisError> {
        if rows.len() != src.size() {
            return Err(VietorisError::Shape(rows.len(), src.size()));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.universe() != dst.size() || !dst.is_upper(row) {
                return Err(VietorisError::RowNotUpper(x));
            }
        }
        for x in 0..src.size() {
            for y in src.principal_up(x).iter() {
                if !rows[y].is_subset(&rows[x]) {
                    return Err(VietorisError::NotDownClosed(x, y));
                }
            }
        }
        Ok(KleisliMorphism {
            rows,
            dst: dst.size(),
        })
    }

    /// The order relation, which is the Kleisli identity.
    pub fn identity(p: &FinPoset) -> KleisliMorphism {
        KleisliMorphism {
            rows: (0..p.size()).map(|x| p.principal_up(x).clone()).collect(),
            dst: p.size(),
        }
    }

    /// `x φ y` iff `f(x) <= y`.
    pub fn graph(f: &[usize], src: &FinPoset, dst: &FinPoset) -> Result<KleisliMorphism, VietorisError> {
        if !src.is_monotone(f, dst) {
            return Err(VietorisError::NotMonotone);
        }
        Ok(KleisliMorphism {
            rows: f.iter().map(|&fx| dst.principal_up(fx).clone()).collect(),
            dst: dst.size(),
        })
    }

    pub fn src_size(&self) -> usize {
        self.rows.len()
    }

    pub fn dst_size(&self) -> usize {
        self.dst
    }

    pub fn row(&self, x: usize) -> &Subset {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Every `x` is related to something.
    pub fn is_total(&self) -> bool {
        self.rows.iter().all(|r| !r.is_empty())
    }

    /// Every row is empty or principal.
    pub fn is_deterministic(&self, dst: &FinPoset) -> bool {
        self.rows.iter().all(|r| is_irreducible(dst, r))
    }

    pub fn to_vrelation(&self) -> VRelation {
        VRelation::from_fn(self.src_size(), self.dst, |x, y| {
            if self.relates(x, y) {
                Value::ONE
            } else {
                Value::ZERO
            }
        })
    }
}

/// `φ' · φ` for `φ: X ⇸ Y` and `φ': Y ⇸ Z`: relational composition.
pub fn kleisli_compose(second: &KleisliMorphism, first: &KleisliMorphism) -> KleisliMorphism {
    let rows = first
        .rows
        .iter()
        .map(|row| {
            let mut out = Subset::empty(second.dst);
            for y in row.iter() {
                out.union_with(&second.rows[y]);
            }
            out
        })
        .collect();
    KleisliMorphism {
        rows,
        dst: second.dst,
    }
}

/// A random 0/1 distributor: each row is a drawn upper set of `y` joined
/// with the rows above it. `uppers` must list the upper sets of `y`.
pub fn random_kleisli(x: &FinPoset, y: &FinPoset, uppers: &[Subset], rng: &mut impl RngExt) -> KleisliMorphism {
    let mut order: Vec<usize> = (0..x.size()).collect();
    order.sort_by_key(|&p| x.principal_up(p).count());
    let mut rows = vec![Subset::empty(y.size()); x.size()];
    for p in order {
        let mut row = uppers[rng.random_range(0..uppers.len())].clone();
        for above in x.principal_up(p).iter().filter(|&a| a != p) {
            row.union_with(&rows[above]);
        }
        rows[p] = row;
    }
    KleisliMorphism { rows, dst: y.size() }
}

/// Every 0/1 distributor `X ⇸ Y`.
pub fn all_kleisli_morphisms(x: &FinPoset, y: &FinPoset) -> Vec<KleisliMorphism> {
    let uppers = y.upper_sets();
    let mut out = Vec::new();
    let mut rows: Vec<Subset> = Vec::with_capacity(x.size());
    fn go(
        x: &FinPoset,
        uppers: &[Subset],
        dst: usize,
        rows: &mut Vec<Subset>,
        out: &mut Vec<KleisliMorphism>,
    ) {
        let k = rows.len();
        if k == x.size() {
            out.push(KleisliMorphism {
                rows: rows.clone(),
                dst,
            });
            return;
        }
        for u in uppers {
            let fits = (0..k).all(|j| {
                (!x.leq(j, k) || u.is_subset(&rows[j])) && (!x.leq(k, j) || rows[j].is_subset(u))
            });
            if fits {
                rows.push(u.clone());
                go(x, uppers, dst, rows, out);
                rows.pop();
            }
        }
    }
    go(x, &uppers, y.size(), &mut rows, &mut out);
    out
}
