//! Named model inputs used by the test suites and materializable through the
//! command line: the stratified open line, the punctured disk with its cyclic
//! covers, height functions on circles, and the cusp map model.

use std::collections::BTreeMap;

use crate::complex::{build_complex, build_stratification, Simplex, StratifiedComplex};
use crate::cosheaf::{
    build_cosheaf, constant_set_cosheaf, Cosheaf, CosheafOptions, EntranceWord, WordStep,
};
use crate::field::Rat;
use crate::ingest::{build_map, SimplicialMap};
use crate::linalg::Matrix;
use crate::omega::{Omega, SetMap, SetOmega, SetValue, VectOmega};

fn sx(name: &str) -> Simplex {
    Simplex::parse(name).unwrap()
}

fn vs(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn q(n: i64) -> Rat {
    Rat::from(num::BigInt::from(n))
}

/// Open line with one interior vertex: cells `p|q`, `q`, `q|r` with the
/// endpoints removed; strata `S0 < E1, E2`.
pub fn line1_strat() -> StratifiedComplex {
    let complex = build_complex(&[vs(&["p", "q"]), vs(&["q", "r"])], &[vs(&["p"]), vs(&["r"])])
        .unwrap();
    let assignment: BTreeMap<Simplex, String> = [
        (sx("q"), "S0".to_string()),
        (sx("p|q"), "E1".to_string()),
        (sx("q|r"), "E2".to_string()),
    ]
    .into_iter()
    .collect();
    build_stratification(complex, &assignment).unwrap()
}

/// The constant singleton cosheaf on the line fixture.
pub fn line1_constant_set() -> Cosheaf<SetOmega> {
    constant_set_cosheaf(line1_strat(), "*").unwrap()
}

/// Dimensions (1, 1, 2) on (p|q, q, q|r) with maps [1] and [1 1].
pub fn line1_vect() -> Cosheaf<VectOmega<Rat>> {
    let strat = line1_strat();
    let values: BTreeMap<Simplex, usize> = [(sx("p|q"), 1), (sx("q"), 1), (sx("q|r"), 2)]
        .into_iter()
        .collect();
    let maps: BTreeMap<(Simplex, Simplex), Matrix<Rat>> = [
        ((sx("p|q"), sx("q")), Matrix::from_rows(vec![vec![q(1)]])),
        (
            (sx("q|r"), sx("q")),
            Matrix::from_rows(vec![vec![q(1), q(1)]]),
        ),
    ]
    .into_iter()
    .collect();
    build_cosheaf(strat, values, maps, CosheafOptions::default()).unwrap()
}

/// Dimensions (1, 0, 1): nothing can pass through the middle vertex.
pub fn line1_k0k() -> Cosheaf<VectOmega<Rat>> {
    let strat = line1_strat();
    let values: BTreeMap<Simplex, usize> = [(sx("p|q"), 1), (sx("q"), 0), (sx("q|r"), 1)]
        .into_iter()
        .collect();
    let maps: BTreeMap<(Simplex, Simplex), Matrix<Rat>> = [
        ((sx("p|q"), sx("q")), Matrix::zeros(0, 1)),
        ((sx("q|r"), sx("q")), Matrix::zeros(0, 1)),
    ]
    .into_iter()
    .collect();
    build_cosheaf(strat, values, maps, CosheafOptions::default()).unwrap()
}

/// The punctured disk: three triangles around the origin with the outer
/// boundary removed; strata `origin < bulk`.
pub fn punctured_disk_strat() -> StratifiedComplex {
    let complex = build_complex(
        &[vs(&["o", "a", "b"]), vs(&["o", "b", "c"]), vs(&["o", "c", "a"])],
        &[vs(&["a", "b"]), vs(&["b", "c"]), vs(&["c", "a"])],
    )
    .unwrap();
    let assignment: BTreeMap<Simplex, String> = complex
        .cells()
        .iter()
        .map(|c| {
            let s = if c.name() == "o" { "origin" } else { "bulk" };
            (c.clone(), s.to_string())
        })
        .collect();
    build_stratification(complex, &assignment).unwrap()
}

fn cyclic_shift(n: usize) -> SetMap {
    SetMap::new(
        (0..n)
            .map(|i| (i.to_string(), ((i + 1) % n).to_string()))
            .collect(),
    )
}

fn fiber(n: usize) -> SetValue {
    SetValue::new((0..n).map(|i| i.to_string()).collect()).unwrap()
}

/// The degree-`n` cyclic cover of the punctured disk as a set cosheaf:
/// `n` sheets over every bulk cell, a point over the origin, and the cyclic
/// shift on the single incidence `a|c|o -> a|o`.
pub fn zn_cosheaf(n: usize) -> Cosheaf<SetOmega> {
    assert!(n >= 1);
    let strat = punctured_disk_strat();
    let values: BTreeMap<Simplex, SetValue> = strat
        .complex()
        .cells()
        .iter()
        .map(|c| {
            let v = if c.name() == "o" {
                SetValue::singleton("*")
            } else {
                fiber(n)
            };
            (c.clone(), v)
        })
        .collect();
    let constant = SetMap::new((0..n).map(|i| (i.to_string(), "*".to_string())).collect());
    let maps: BTreeMap<(Simplex, Simplex), SetMap> = strat
        .complex()
        .incidences()
        .into_iter()
        .map(|(tau, sigma)| {
            let m = if sigma.name() == "o" {
                constant.clone()
            } else if tau.name() == "a|c|o" && sigma.name() == "a|o" {
                cyclic_shift(n)
            } else {
                SetOmega::identity(&fiber(n))
            };
            ((tau, sigma), m)
        })
        .collect();
    build_cosheaf(strat, values, maps, CosheafOptions::default()).unwrap()
}

/// Trivial-monodromy variant of the cyclic cover: identity on every bulk
/// incidence. With `fused` the origin carries a single point, otherwise an
/// `n`-point fiber with identity vertex maps (disjoint sheets).
pub fn zn_trivial_cosheaf(n: usize, fused: bool) -> Cosheaf<SetOmega> {
    let strat = punctured_disk_strat();
    let origin_value = if fused { SetValue::singleton("*") } else { fiber(n) };
    let values: BTreeMap<Simplex, SetValue> = strat
        .complex()
        .cells()
        .iter()
        .map(|c| {
            let v = if c.name() == "o" {
                origin_value.clone()
            } else {
                fiber(n)
            };
            (c.clone(), v)
        })
        .collect();
    let to_origin = if fused {
        SetMap::new((0..n).map(|i| (i.to_string(), "*".to_string())).collect())
    } else {
        SetOmega::identity(&fiber(n))
    };
    let maps: BTreeMap<(Simplex, Simplex), SetMap> = strat
        .complex()
        .incidences()
        .into_iter()
        .map(|(tau, sigma)| {
            let m = if sigma.name() == "o" {
                to_origin.clone()
            } else {
                SetOmega::identity(&fiber(n))
            };
            ((tau, sigma), m)
        })
        .collect();
    build_cosheaf(strat, values, maps, CosheafOptions::default()).unwrap()
}

/// The loop around the origin starting and ending at `a|o`, with inverse
/// steps where the path climbs into a triangle.
pub fn zn_loop_word() -> EntranceWord {
    EntranceWord {
        start: sx("a|o"),
        steps: vec![
            WordStep::inverse(sx("a|o"), sx("a|b|o")),
            WordStep::entrance(sx("a|b|o"), sx("b|o")),
            WordStep::inverse(sx("b|o"), sx("b|c|o")),
            WordStep::entrance(sx("b|c|o"), sx("c|o")),
            WordStep::inverse(sx("c|o"), sx("a|c|o")),
            WordStep::entrance(sx("a|c|o"), sx("a|o")),
        ],
    }
}

/// Two sheets over one edge and one over the other, glued over the vertex:
/// the cover is a tripod.
pub fn tripod_cosheaf() -> Cosheaf<SetOmega> {
    let strat = line1_strat();
    let values: BTreeMap<Simplex, SetValue> = [
        (sx("p|q"), SetValue::new(vec!["a".into(), "b".into()]).unwrap()),
        (sx("q"), SetValue::singleton("*")),
        (sx("q|r"), SetValue::singleton("c")),
    ]
    .into_iter()
    .collect();
    let maps: BTreeMap<(Simplex, Simplex), SetMap> = [
        (
            (sx("p|q"), sx("q")),
            SetMap::new(
                [("a".to_string(), "*".to_string()), ("b".to_string(), "*".to_string())]
                    .into_iter()
                    .collect(),
            ),
        ),
        (
            (sx("q|r"), sx("q")),
            SetMap::new([("c".to_string(), "*".to_string())].into_iter().collect()),
        ),
    ]
    .into_iter()
    .collect();
    build_cosheaf(strat, values, maps, CosheafOptions::default()).unwrap()
}

/// A closed path stratified cell by cell, for use as the base of height maps.
fn closed_path_strat(vertices: &[&str]) -> StratifiedComplex {
    let maximal: Vec<Vec<String>> = vertices
        .windows(2)
        .map(|w| vs(&[w[0], w[1]]))
        .collect();
    StratifiedComplex::cellwise(build_complex(&maximal, &[]).unwrap())
}

/// Height on the square cycle `N, E, S, W` mapped onto the three-vertex path
/// `u0 - u1 - u2`: the bottom vertex at `u0`, the sides at `u1`, the top at
/// `u2`.
pub fn circle_height_map() -> SimplicialMap {
    let source = build_complex(
        &[vs(&["N", "E"]), vs(&["E", "S"]), vs(&["S", "W"]), vs(&["W", "N"])],
        &[],
    )
    .unwrap();
    let target = closed_path_strat(&["u0", "u1", "u2"]);
    let vertex_map: BTreeMap<String, String> = [
        ("S", "u0"),
        ("E", "u1"),
        ("W", "u1"),
        ("N", "u2"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    build_map(source, None, target, vertex_map).unwrap()
}

/// A circle whose height wiggles on one side: critical values `m0 < m1 <
/// m2 < m3` with an extra local maximum at `m2` and local minimum at `m1`.
pub fn wiggly_circle_map() -> SimplicialMap {
    let source = build_complex(
        &[
            vs(&["B", "a1"]),
            vs(&["a1", "a2"]),
            vs(&["a2", "T"]),
            vs(&["T", "c4"]),
            vs(&["c4", "c3"]),
            vs(&["c3", "c2"]),
            vs(&["c2", "c1"]),
            vs(&["c1", "B"]),
        ],
        &[],
    )
    .unwrap();
    let target = closed_path_strat(&["m0", "m1", "m2", "m3"]);
    let vertex_map: BTreeMap<String, String> = [
        ("B", "m0"),
        ("a1", "m1"),
        ("a2", "m2"),
        ("T", "m3"),
        ("c4", "m2"),
        ("c3", "m1"),
        ("c2", "m2"),
        ("c1", "m1"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    build_map(source, None, target, vertex_map).unwrap()
}

/// The identity of a single closed edge, the smallest Reeb input.
pub fn segment_identity_map() -> SimplicialMap {
    let source = build_complex(&[vs(&["u", "v"])], &[]).unwrap();
    let target = closed_path_strat(&["u", "v"]);
    let vertex_map: BTreeMap<String, String> = [("u", "u"), ("v", "v")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    build_map(source, None, target, vertex_map).unwrap()
}

/// The five-stratum base of the cusp model: a disk around the cusp vertex
/// `c` with fold rays toward `fr` and `fl`, the inner region between them,
/// and the outer region through `w`.
pub fn whitney_cusp_base() -> StratifiedComplex {
    let complex = build_complex(
        &[vs(&["c", "fr", "fl"]), vs(&["c", "fl", "w"]), vs(&["c", "w", "fr"])],
        &[],
    )
    .unwrap();
    let stratum = |cell: &Simplex| -> &'static str {
        match cell.name().as_str() {
            "c" => "cusp",
            "fr" | "c|fr" => "foldR",
            "fl" | "c|fl" => "foldL",
            "fl|fr" | "c|fl|fr" => "inner",
            _ => "outer",
        }
    };
    let assignment: BTreeMap<Simplex, String> = complex
        .cells()
        .iter()
        .map(|c| (c.clone(), stratum(c).to_string()))
        .collect();
    build_stratification(complex, &assignment).unwrap()
}

/// A simplicial model of the plane-to-plane cusp map over
/// [`whitney_cusp_base`]: three sheets over the inner region that merge in
/// pairs over the folds and completely over the cusp, and one outer sheet
/// attached to the sheet surviving each fold.
///
/// Source vertex names are chosen so that the sorted component
/// representatives list the sheets bottom to top.
pub fn whitney_cusp_map() -> SimplicialMap {
    let source = build_complex(
        &[
            // the three inner sheets, fanned around the single cusp point
            vs(&["cc", "fla", "fra"]),
            vs(&["cc", "fla", "frb"]),
            vs(&["cc", "flb", "frb"]),
            // the outer sheet
            vs(&["cc", "flb", "ww"]),
            vs(&["cc", "ww", "fra"]),
        ],
        &[],
    )
    .unwrap();
    let target = whitney_cusp_base();
    let vertex_map: BTreeMap<String, String> = [
        ("cc", "c"),
        ("fra", "fr"),
        ("frb", "fr"),
        ("fla", "fl"),
        ("flb", "fl"),
        ("ww", "w"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    build_map(source, None, target, vertex_map).unwrap()
}

/// Renders a named fixture as its set of files, `(file name, contents)`.
/// Names: `line1`, `punctured-disk`, `zn:N`, `circle-height`, `wiggly-circle`,
/// `whitney-cusp`.
pub fn materialize(name: &str) -> Option<Vec<(String, String)>> {
    use crate::io::{
        base_bundle, complex_to_file, cosheaf_to_file, strata_map, to_pretty_json, AnyCosheaf,
        MapFile, StrataFile,
    };
    let complex_and_strata = |strat: &StratifiedComplex| -> Vec<(String, String)> {
        vec![
            (
                "complex.json".to_string(),
                to_pretty_json(&complex_to_file(strat.complex())),
            ),
            (
                "strata.json".to_string(),
                to_pretty_json(&StrataFile {
                    strata: strata_map(strat),
                }),
            ),
        ]
    };
    let map_bundle = |map: &SimplicialMap| -> MapFile {
        MapFile {
            vertex_map: map.vertex_map().clone(),
            source: Some(complex_to_file(map.source())),
        }
    };
    if let Some(n) = name.strip_prefix("zn:") {
        let n: usize = n.parse().ok().filter(|&n| n >= 1)?;
        let cosheaf = zn_cosheaf(n);
        let mut files = complex_and_strata(cosheaf.base());
        files.push((
            "cosheaf.json".to_string(),
            to_pretty_json(&cosheaf_to_file(&AnyCosheaf::Set(cosheaf))),
        ));
        return Some(files);
    }
    match name {
        "line1" => {
            let mut files = complex_and_strata(&line1_strat());
            files.push((
                "cosheaf_set.json".to_string(),
                to_pretty_json(&cosheaf_to_file(&AnyCosheaf::Set(line1_constant_set()))),
            ));
            files.push((
                "cosheaf_vect.json".to_string(),
                to_pretty_json(&cosheaf_to_file(&AnyCosheaf::Rational(line1_vect()))),
            ));
            files.push((
                "cosheaf_k0k.json".to_string(),
                to_pretty_json(&cosheaf_to_file(&AnyCosheaf::Rational(line1_k0k()))),
            ));
            Some(files)
        }
        "punctured-disk" => Some(complex_and_strata(&punctured_disk_strat())),
        "circle-height" => {
            let map = circle_height_map();
            Some(vec![
                ("circle.json".to_string(), to_pretty_json(&map_bundle(&map))),
                (
                    "path.json".to_string(),
                    to_pretty_json(&base_bundle(map.target())),
                ),
            ])
        }
        "wiggly-circle" => {
            let map = wiggly_circle_map();
            Some(vec![
                ("wiggly.json".to_string(), to_pretty_json(&map_bundle(&map))),
                (
                    "path.json".to_string(),
                    to_pretty_json(&base_bundle(map.target())),
                ),
            ])
        }
        "whitney-cusp" => {
            let map = whitney_cusp_map();
            Some(vec![
                ("cusp.json".to_string(), to_pretty_json(&map_bundle(&map))),
                (
                    "base.json".to_string(),
                    to_pretty_json(&base_bundle(map.target())),
                ),
            ])
        }
        _ => None,
    }
}

/// The fixture names `materialize` accepts, with `zn:N` shown generically.
pub const FIXTURE_NAMES: &[&str] = &[
    "line1",
    "punctured-disk",
    "zn:N",
    "circle-height",
    "wiggly-circle",
    "whitney-cusp",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::pushforward_cosheaf_vect;

    #[test]
    fn fixtures_build() {
        line1_constant_set();
        line1_vect();
        line1_k0k();
        for n in 1..=5 {
            zn_cosheaf(n);
        }
        tripod_cosheaf();
        circle_height_map();
        wiggly_circle_map();
        whitney_cusp_map();
    }

    #[test]
    fn whitney_cusp_costalk_dimensions() {
        let push = pushforward_cosheaf_vect(&whitney_cusp_map(), q(1)).unwrap();
        let dim = |name: &str| *push.value_of(&sx(name));
        assert_eq!(dim("c|fl|fr"), 3);
        assert_eq!(dim("fl|fr"), 3);
        assert_eq!(dim("c|fr"), 2);
        assert_eq!(dim("fr"), 2);
        assert_eq!(dim("c|fl"), 2);
        assert_eq!(dim("fl"), 2);
        assert_eq!(dim("c"), 1);
        for outer in ["w", "c|w", "fl|w", "fr|w", "c|fl|w", "c|fr|w"] {
            assert_eq!(dim(outer), 1, "outer cell {outer}");
        }
    }

    #[test]
    fn whitney_cusp_fold_maps_merge_the_right_sheets() {
        let push = pushforward_cosheaf_vect(&whitney_cusp_map(), q(1)).unwrap();
        // Right fold merges the two upper sheets, left fold the two lower.
        let right = push.map_of(&sx("c|fl|fr"), &sx("c|fr"));
        assert_eq!(
            *right,
            Matrix::from_rows(vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(1)]])
        );
        let left = push.map_of(&sx("c|fl|fr"), &sx("c|fl"));
        assert_eq!(
            *left,
            Matrix::from_rows(vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]])
        );
        // Both routes to the cusp collapse everything.
        let via_right = push.map_of(&sx("c|fr"), &sx("c")).mul(right);
        let via_left = push.map_of(&sx("c|fl"), &sx("c")).mul(left);
        assert_eq!(via_right, via_left);
        assert_eq!(
            via_right,
            Matrix::from_rows(vec![vec![q(1), q(1), q(1)]])
        );
    }
}
