//! Property tests for the structural invariants of complexes, stratum
//! orders, transport, and barcodes.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use costrata::complex::{build_complex, OpenComplex, Simplex};
use costrata::cosheaf::{open_from_generators, EntranceWord, WordStep};
use costrata::field::{rat, Rat};
use costrata::fixtures;
use costrata::omega::{Omega, SetOmega};
use costrata::zigzag::{decompose, recompose, Barcode, Interval, ZigzagModule};

fn sx(name: &str) -> Simplex {
    Simplex::parse(name).unwrap()
}

// ---------------------------------------------------------------------------
// Random open complexes
// ---------------------------------------------------------------------------

/// Up to four maximal simplices on six vertices, with a removed closed part
/// chosen so the removal stays legal.
fn arb_complex() -> impl Strategy<Value = OpenComplex> {
    let vertex = prop::sample::select(vec!["a", "b", "c", "d", "e", "f"]);
    let simplex = prop::collection::btree_set(vertex, 1..=3);
    let maximal = prop::collection::vec(simplex, 1..=4);
    (maximal, any::<u64>()).prop_map(|(maximal, pick)| {
        let maximal: Vec<Vec<String>> = maximal
            .into_iter()
            .map(|s| s.into_iter().map(String::from).collect())
            .collect();
        let full = build_complex(&maximal, &[]).expect("maximal lists are valid");
        // Candidates for removal: ambient simplices with no listed maximal
        // simplex among their cofaces' faces, i.e. not above a listed one.
        let listed: Vec<Simplex> = maximal
            .iter()
            .map(|vs| Simplex::new(vs.iter().cloned()).unwrap())
            .collect();
        let candidates: Vec<&Simplex> = full
            .ambient()
            .iter()
            .filter(|s| !listed.iter().any(|m| m.is_face_of(s)))
            .collect();
        let removed: Vec<Vec<String>> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| pick & (1 << (i % 64)) != 0)
            .map(|(_, s)| s.vertices().to_vec())
            .collect();
        build_complex(&maximal, &removed).expect("removal candidates are closed away from kept")
    })
}

proptest! {
    #[test]
    fn star_and_closure_bracket_every_cell(complex in arb_complex()) {
        for cell in complex.cells() {
            let star = complex.star(cell);
            let closure = complex.closure(cell);
            prop_assert!(star.contains(cell));
            prop_assert!(closure.contains(cell));
            // Stars are upward closed, closures downward closed.
            for t in &star {
                for coface in complex.cells() {
                    if t.is_face_of(coface) {
                        prop_assert!(star.contains(coface));
                    }
                }
            }
            for g in &closure {
                for face in g.strict_faces() {
                    if complex.is_cell(&face) {
                        prop_assert!(closure.contains(&face));
                    }
                }
            }
        }
    }

    #[test]
    fn star_containment_reverses_the_face_order(complex in arb_complex()) {
        for tau in complex.cells() {
            for sigma in complex.cells() {
                if sigma.is_face_of(tau) {
                    let st_tau = complex.star(tau);
                    let st_sigma = complex.star(sigma);
                    prop_assert!(st_tau.is_subset(&st_sigma));
                }
            }
        }
    }

    #[test]
    fn covering_relations_are_codimension_one(complex in arb_complex()) {
        // A covering pair in the cell poset: a strict face relation with no
        // surviving cell strictly between.
        for (tau, sigma) in complex.strict_face_pairs() {
            let covering = !complex.cells().iter().any(|rho| {
                *rho != tau
                    && *rho != sigma
                    && sigma.is_face_of(rho)
                    && rho.is_face_of(&tau)
            });
            if covering {
                prop_assert_eq!(sigma.dimension() + 1, tau.dimension());
            }
        }
    }

    #[test]
    fn star_cover_intersections_are_members_or_empty(complex in arb_complex()) {
        let stars: Vec<BTreeSet<Simplex>> =
            complex.cells().iter().map(|c| complex.star(c)).collect();
        for a in &stars {
            for b in &stars {
                let meet: BTreeSet<Simplex> = a.intersection(b).cloned().collect();
                if !meet.is_empty() {
                    prop_assert!(stars.contains(&meet));
                }
            }
        }
    }

    #[test]
    fn derived_stratum_order_is_antisymmetric(complex in arb_complex()) {
        // The cell-wise stratification always validates; its derived order
        // must be a partial order.
        let strat = costrata::complex::StratifiedComplex::cellwise(complex);
        for (a, b) in strat.order() {
            if a != b {
                prop_assert!(!strat.leq(b, a));
            }
        }
        for (a, b) in strat.order() {
            for (c, d) in strat.order() {
                if b == c {
                    prop_assert!(strat.leq(a, d));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Barcode properties
// ---------------------------------------------------------------------------

fn arb_barcode() -> impl Strategy<Value = (Barcode, usize)> {
    (0usize..=4).prop_flat_map(|n| {
        let length = 2 * n + 1;
        let bar = (0..length, 0..length, 1usize..=3).prop_map(move |(a, b, m)| Interval {
            lo: a.min(b),
            hi: a.max(b),
            multiplicity: m,
        });
        prop::collection::vec(bar, 0..=4).prop_map(move |mut bars| {
            bars.sort();
            // Merge duplicate windows into one multiplicity.
            let mut merged: Vec<Interval> = Vec::new();
            for bar in bars {
                match merged.last_mut() {
                    Some(last) if last.lo == bar.lo && last.hi == bar.hi => {
                        last.multiplicity += bar.multiplicity
                    }
                    _ => merged.push(bar),
                }
            }
            (Barcode { bars: merged }, length)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompose_inverts_recompose((barcode, length) in arb_barcode()) {
        let module: ZigzagModule<Rat> = recompose(&barcode, length);
        let again = decompose(&module).unwrap();
        prop_assert_eq!(&again.bars, &barcode.bars);
        for p in 0..length {
            prop_assert_eq!(barcode.dimension_at(p), module.spaces()[p]);
        }
    }

    #[test]
    fn generalized_rank_is_additive_over_bars((barcode, length) in arb_barcode()) {
        let module: ZigzagModule<Rat> = recompose(&barcode, length);
        for lo in 0..length {
            for hi in lo..length {
                let expected: usize = barcode
                    .bars
                    .iter()
                    .filter(|b| b.lo <= lo && hi <= b.hi)
                    .map(|b| b.multiplicity)
                    .sum();
                prop_assert_eq!(module.generalized_rank(lo, hi).unwrap(), expected);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Transport and constructibility on a fixed nontrivial fixture
// ---------------------------------------------------------------------------

#[test]
fn transport_is_invariant_under_diamond_moves() {
    let c = fixtures::zn_cosheaf(3);
    // Two routes from a triangle into the origin through different edges.
    let via_a = EntranceWord {
        start: sx("a|b|o"),
        steps: vec![
            WordStep::entrance(sx("a|b|o"), sx("a|o")),
            WordStep::entrance(sx("a|o"), sx("o")),
        ],
    };
    let via_b = EntranceWord {
        start: sx("a|b|o"),
        steps: vec![
            WordStep::entrance(sx("a|b|o"), sx("b|o")),
            WordStep::entrance(sx("b|o"), sx("o")),
        ],
    };
    assert_eq!(c.transport(&via_a).unwrap(), c.transport(&via_b).unwrap());
}

#[test]
fn in_stratum_star_inclusions_evaluate_to_isomorphisms() {
    let c = fixtures::zn_cosheaf(2);
    for (tau, sigma) in c.base().complex().incidences() {
        if !c.base().same_stratum(&tau, &sigma) {
            continue;
        }
        let inner = open_from_generators(c.base(), std::slice::from_ref(&tau)).unwrap();
        let outer = open_from_generators(c.base(), std::slice::from_ref(&sigma)).unwrap();
        let induced = c.induced_map(&inner, &outer).unwrap();
        let a = c.evaluate(&inner).unwrap();
        let b = c.evaluate(&outer).unwrap();
        assert!(
            SetOmega::iso_witness(&induced, &a, &b).is_none(),
            "in-stratum inclusion st {tau} into st {sigma} must evaluate to an isomorphism"
        );
    }
}

#[test]
fn linearized_colimits_count_set_colimits() {
    for cosheaf in [
        fixtures::line1_constant_set(),
        fixtures::tripod_cosheaf(),
        fixtures::zn_cosheaf(3),
    ] {
        let lin = costrata::cosheaf::linearize(&cosheaf, rat(1));
        let opens: Vec<Vec<Simplex>> = cosheaf
            .base()
            .complex()
            .cells()
            .iter()
            .map(|c| vec![c.clone()])
            .collect();
        for generators in opens {
            let open = open_from_generators(cosheaf.base(), &generators).unwrap();
            let card = cosheaf.evaluate(&open).unwrap().len();
            let dim = lin.evaluate(&open).unwrap();
            assert_eq!(card, dim);
        }
    }
}

#[test]
fn one_edge_star_cover_example() {
    let complex = build_complex(&[vec!["a".into(), "b".into()]], &[]).unwrap();
    let strat = costrata::complex::StratifiedComplex::cellwise(complex);
    let cover = strat.star_cover();
    assert_eq!(cover.len(), 3);
    let star: BTreeMap<String, BTreeSet<Simplex>> = strat
        .complex()
        .cells()
        .iter()
        .map(|c| (c.name(), strat.complex().star(c)))
        .collect();
    let meet: BTreeSet<Simplex> = star["a"].intersection(&star["b"]).cloned().collect();
    assert_eq!(meet, star["a|b"]);
}
