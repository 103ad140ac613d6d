use std::collections::HashMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use qcat_core::colimits::{closure, colimit_candidate, copower, upower, weighted_colimit, WeightedDiagram};
use qcat_core::poset::all_posets;
use qcat_core::vcat::all_grid_categories;
use qcat_core::vietoris::{
    all_kleisli_morphisms, is_irreducible, is_irreducible_by_decomposition, kleisli_compose, mult, unit, vietoris,
    vietoris_map, KleisliMorphism,
};
use qcat_core::{FinPoset, Quantale, Subset, VCategory, Value};

/// Every Łukasiewicz category on at most three points over `Q_2`.
fn categories() -> &'static [VCategory] {
    static CATS: OnceLock<Vec<VCategory>> = OnceLock::new();
    CATS.get_or_init(|| {
        let q = Quantale::lukasiewicz();
        (1..=3).flat_map(|k| all_grid_categories(&q, 2, k)).collect()
    })
}

fn posets() -> &'static [FinPoset] {
    static POSETS: OnceLock<Vec<FinPoset>> = OnceLock::new();
    POSETS.get_or_init(|| (1..=3).flat_map(all_posets).collect())
}

/// All maps `{0..n} -> {0..m}`, as lookup tables.
fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32))
        .map(|code| (0..n).map(|i| code / m.pow(i as u32) % m).collect())
        .collect()
}

fn monotone_maps(p: &FinPoset, r: &FinPoset) -> Vec<Vec<usize>> {
    all_maps(p.size(), r.size())
        .into_iter()
        .filter(|f| p.is_monotone(f, r))
        .collect()
}

fn grid_value() -> impl Strategy<Value = Value> {
    (0u32..=2).prop_map(|k| Value::grid(k, 2))
}

proptest! {
    #[test]
    fn natural_order_is_a_preorder(i in any::<Index>()) {
        let x = i.get(categories());
        prop_assert!(x.validate().is_ok());
        let o = x.natural_order();
        let n = x.size();
        for a in 0..n {
            prop_assert!(o[a][a]);
            for b in 0..n {
                for c in 0..n {
                    prop_assert!(!(o[a][b] && o[b][c]) || o[a][c]);
                }
            }
        }
    }

    #[test]
    fn vfunctors_are_monotone(i in any::<Index>(), j in any::<Index>(), f in any::<Index>()) {
        let x = i.get(categories());
        let y = j.get(categories());
        let f = f.get(&all_maps(x.size(), y.size())).clone();
        if x.is_vfunctor(&f, y) {
            let (ox, oy) = (x.natural_order(), y.natural_order());
            for a in 0..x.size() {
                for b in 0..x.size() {
                    prop_assert!(!ox[a][b] || oy[f[a]][f[b]]);
                }
            }
        }
    }

    #[test]
    fn vfunctors_lax_preserve_powers(i in any::<Index>(), j in any::<Index>(), f in any::<Index>(), u in grid_value()) {
        let x = i.get(categories());
        let y = j.get(categories());
        let f = f.get(&all_maps(x.size(), y.size())).clone();
        prop_assume!(x.is_vfunctor(&f, y));
        for p in 0..x.size() {
            if let (Some(xp), Some(yp)) = (upower(x, p, u), upower(y, f[p], u)) {
                prop_assert!(y.a(f[xp], yp).is_one());
            }
        }
    }

    #[test]
    fn weighted_colimit_matches_sup_formula(
        i in any::<Index>(),
        arrows in prop::collection::vec(any::<Index>(), 1..=3),
        weight in prop::collection::vec(grid_value(), 3),
    ) {
        let x = i.get(categories());
        let q = x.quantale().clone();
        let k = arrows.len();
        let shape = VCategory::new(q.clone(), qcat_core::Matrix::from_fn(k, k, |a, b| if a == b { Value::ONE } else { Value::ZERO })).unwrap();
        let h: Vec<usize> = arrows.iter().map(|ix| ix.index(x.size())).collect();
        let d = WeightedDiagram::new(shape, h, weight[..k].to_vec(), x).unwrap();
        if let (Some(c), Some(s)) = (weighted_colimit(x, &d), colimit_candidate(x, &d)) {
            prop_assert!(x.a(c, s).is_one() && x.a(s, c).is_one());
        }
    }

    #[test]
    fn copowers_and_powers_satisfy_their_equations(n in 1u32..=4, p in any::<Index>(), k in 0u32..=4) {
        let q = Quantale::lukasiewicz();
        let x = VCategory::grid_chain(q.clone(), n);
        let p = p.index(x.size());
        let u = Value::grid(k.min(n), n);
        let c = copower(&x, p, u).expect("grid chains have copowers");
        let w = upower(&x, p, u).expect("grid chains have powers");
        for y in 0..x.size() {
            prop_assert_eq!(x.a(c, y), q.hom(u, x.a(p, y)));
            prop_assert_eq!(x.a(y, w), q.hom(u, x.a(y, p)));
        }
    }

    #[test]
    fn closure_is_discrete_on_separated_categories(i in any::<Index>(), mask in 0u64..8) {
        let x = i.get(categories());
        prop_assume!(x.is_separated());
        let m = Subset::from_mask(x.size(), mask);
        prop_assert_eq!(closure(x, &m), m);
    }

    #[test]
    fn vietoris_is_a_functor(pi in any::<Index>(), ri in any::<Index>(), si in any::<Index>(), fi in any::<Index>(), gi in any::<Index>()) {
        let (p, r, s) = (pi.get(posets()), ri.get(posets()), si.get(posets()));
        let (vp, vr, vs) = (vietoris(p), vietoris(r), vietoris(s));
        let id: Vec<usize> = (0..p.size()).collect();
        prop_assert_eq!(vietoris_map(&id, p, p, &vp, &vp).unwrap(), (0..vp.len()).collect::<Vec<_>>());
        let f = fi.get(&monotone_maps(p, r)).clone();
        let g = gi.get(&monotone_maps(r, s)).clone();
        let gf: Vec<usize> = f.iter().map(|&y| g[y]).collect();
        let vf = vietoris_map(&f, p, r, &vp, &vr).unwrap();
        let vg = vietoris_map(&g, r, s, &vr, &vs).unwrap();
        let composed: Vec<usize> = vf.iter().map(|&a| vg[a]).collect();
        prop_assert_eq!(vietoris_map(&gf, p, s, &vp, &vs).unwrap(), composed);
    }

    #[test]
    fn unit_and_multiplication_are_natural(pi in any::<Index>(), ri in any::<Index>(), fi in any::<Index>()) {
        let (p, r) = (pi.get(posets()), ri.get(posets()));
        let f = fi.get(&monotone_maps(p, r)).clone();
        let (vp, vr) = (vietoris(p), vietoris(r));
        let (vvp, vvr) = (vietoris(vp.poset()), vietoris(vr.poset()));
        let vf = vietoris_map(&f, p, r, &vp, &vr).unwrap();
        let vvf = vietoris_map(&vf, vp.poset(), vr.poset(), &vvp, &vvr).unwrap();
        let (ep, er) = (unit(p, &vp), unit(r, &vr));
        for x in 0..p.size() {
            prop_assert_eq!(vf[ep[x]], er[f[x]]);
        }
        let (mp, mr) = (mult(&vp, &vvp), mult(&vr, &vvr));
        for fam in 0..vvp.len() {
            prop_assert_eq!(mr[vvf[fam]], vf[mp[fam]]);
        }
    }
}

#[test]
fn vietoris_of_antichains_is_the_powerset() {
    for n in 1..=5 {
        let vp = vietoris(&FinPoset::antichain(n));
        assert_eq!(vp.len(), 1 << n);
        assert_eq!(vp.poset().size(), 1 << n);
    }
}

#[test]
fn from_poset_and_power_space_are_categories() {
    for q in [Quantale::lukasiewicz(), Quantale::minimum(), Quantale::product()] {
        for p in posets() {
            assert!(VCategory::from_poset(q.clone(), p).validate().is_ok());
        }
        for (s, n) in [(1, 3), (2, 2), (3, 1), (2, 3)] {
            let (x, funcs) = VCategory::power_space(q.clone(), s, n);
            assert!(x.validate().is_ok() && x.is_separated());
            let o = x.natural_order();
            for (i, f) in funcs.iter().enumerate() {
                for (j, g) in funcs.iter().enumerate() {
                    assert_eq!(o[i][j], f.iter().zip(g).all(|(a, b)| a <= b));
                }
            }
        }
    }
}

#[test]
fn kleisli_composition_is_associative_up_to_three_points() {
    for size in 1..=3 {
        for p in all_posets(size) {
            let ks = all_kleisli_morphisms(&p, &p);
            let index: HashMap<&KleisliMorphism, usize> = ks.iter().enumerate().map(|(i, k)| (k, i)).collect();
            let table: Vec<Vec<usize>> = ks
                .iter()
                .map(|g| ks.iter().map(|f| index[&kleisli_compose(g, f)]).collect())
                .collect();
            for f in 0..ks.len() {
                for g in 0..ks.len() {
                    let gf = table[g][f];
                    for h in 0..ks.len() {
                        assert_eq!(table[h][gf], table[table[h][g]][f]);
                    }
                }
            }
        }
    }
}

#[test]
fn irreducibility_characterizations_agree_up_to_five_points() {
    for size in 1..=5 {
        for p in all_posets(size) {
            for a in p.upper_sets() {
                assert_eq!(is_irreducible(&p, &a), is_irreducible_by_decomposition(&p, &a));
            }
        }
    }
}
