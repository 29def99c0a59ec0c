//! Finite simplicial complexes with a removed closed subcomplex, incidence
//! queries, and validated stratifications.
//!
//! An [`OpenComplex`] is a pair `K - L`: an ambient complex `K` closed under
//! taking faces, minus a closed subcomplex `L`. The surviving simplices are the
//! *cells* that carry every structure in this crate. Closures and links are
//! computed as if `L` were still present and then intersected with the cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Characters with delimiter duties in file formats and reports.
const RESERVED: &[char] = &['|', ',', ':', '<', '>', '-'];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate vertex in simplex [{0}]")]
    DuplicateVertexInSimplex(String),
    #[error("bad vertex name {0:?}: names are non-empty and exclude `| , : < > -` and whitespace")]
    BadVertexName(String),
    #[error("removed simplex {0} is not part of the ambient complex")]
    RemovedNotSubcomplex(String),
    #[error("removal of the closed subcomplex would delete kept simplex {0}")]
    KeptCellRemoved(String),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("stratum assignment is not a partition of the cells: {0}")]
    NotAPartition(String),
    #[error("stratum {0} is disconnected in the face-incidence graph")]
    StratumDisconnected(String),
    #[error("frontier violation: stratum {lower} meets the closure of stratum {upper} but cell {witness} does not lie in it")]
    FrontierViolation {
        lower: String,
        upper: String,
        witness: String,
    },
    #[error("cells {0} do not arise as a complex minus a closed subcomplex (face {1} of a removed simplex is kept)")]
    NotAnOpenComplex(String, String),
}

impl ComplexError {
    pub fn name(&self) -> &'static str {
        match self {
            ComplexError::DuplicateVertexInSimplex(_) => "DuplicateVertexInSimplex",
            ComplexError::BadVertexName(_) => "BadVertexName",
            ComplexError::RemovedNotSubcomplex(_) => "RemovedNotSubcomplex",
            ComplexError::KeptCellRemoved(_) => "KeptCellRemoved",
            ComplexError::UnknownCell(_) => "UnknownCell",
            ComplexError::NotAPartition(_) => "NotAPartition",
            ComplexError::StratumDisconnected(_) => "StratumDisconnected",
            ComplexError::FrontierViolation { .. } => "FrontierViolation",
            ComplexError::NotAnOpenComplex(..) => "NotAnOpenComplex",
        }
    }
}

/// A simplex identified by its strictly sorted, non-empty list of vertex names.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<String>,
}

impl Simplex {
    pub fn new<I, S>(vertices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for v in &vs {
            if v.is_empty() || v.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(ComplexError::BadVertexName(v.clone()));
            }
        }
        vs.sort();
        let joined = vs.join("|");
        if vs.is_empty() || vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertexInSimplex(joined));
        }
        Ok(Simplex { vertices: vs })
    }

    pub fn parse(name: &str) -> Result<Self, ComplexError> {
        Simplex::new(name.split('|'))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Canonical name: sorted vertex names joined by `|`.
    pub fn name(&self) -> String {
        self.vertices.join("|")
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.vertices.contains(v))
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|skip| {
                let vs: Vec<String> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                Simplex { vertices: vs }
            })
            .collect()
    }

    /// All proper faces, every dimension down to the vertices.
    pub fn strict_faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        (1..n)
            .flat_map(|k| {
                self.vertices
                    .iter()
                    .cloned()
                    .combinations(k)
                    .map(|vs| Simplex { vertices: vs })
            })
            .collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A subset of the cells of one [`OpenComplex`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellSet {
    pub cells: BTreeSet<Simplex>,
}

impl CellSet {
    pub fn names(&self) -> Vec<String> {
        self.cells.iter().map(Simplex::name).collect()
    }
}

/// Which incidence query to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncidenceKind {
    Star,
    Closure,
    Link,
}

/// Finite complex `K` minus a closed subcomplex `L`; the cells are `K - L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenComplex {
    ambient: BTreeSet<Simplex>,
    removed: BTreeSet<Simplex>,
    cells: BTreeSet<Simplex>,
}

fn face_closure(of: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
    let mut out = of.clone();
    for s in of {
        out.extend(s.strict_faces());
    }
    out
}

/// Builds the face-closed complex on `maximal_simplices` and removes the
/// downward closure of `removed`.
pub fn build_complex(
    maximal_simplices: &[Vec<String>],
    removed: &[Vec<String>],
) -> Result<OpenComplex, ComplexError> {
    let maximal: BTreeSet<Simplex> = maximal_simplices
        .iter()
        .map(|vs| Simplex::new(vs.iter().cloned()))
        .collect::<Result<_, _>>()?;
    let ambient = face_closure(&maximal);
    let removed_listed: BTreeSet<Simplex> = removed
        .iter()
        .map(|vs| Simplex::new(vs.iter().cloned()))
        .collect::<Result<_, _>>()?;
    for s in &removed_listed {
        if !ambient.contains(s) {
            return Err(ComplexError::RemovedNotSubcomplex(s.name()));
        }
    }
    let removed_closed = face_closure(&removed_listed);
    if let Some(kept) = maximal.iter().find(|s| removed_closed.contains(s)) {
        return Err(ComplexError::KeptCellRemoved(kept.name()));
    }
    let cells = ambient.difference(&removed_closed).cloned().collect();
    Ok(OpenComplex {
        ambient,
        removed: removed_closed,
        cells,
    })
}

impl OpenComplex {
    /// Reconstructs the open complex whose cell set is exactly `cells`, taking
    /// the ambient complex to be their face closure. Fails when the complement
    /// is not closed, i.e. the cells are not of the form `K - L`.
    pub fn from_cells(cells: BTreeSet<Simplex>) -> Result<Self, ComplexError> {
        let ambient = face_closure(&cells);
        let removed: BTreeSet<Simplex> = ambient.difference(&cells).cloned().collect();
        for s in &removed {
            for f in s.facets() {
                if cells.contains(&f) {
                    return Err(ComplexError::NotAnOpenComplex(s.name(), f.name()));
                }
            }
        }
        Ok(OpenComplex {
            ambient,
            removed,
            cells,
        })
    }

    pub fn cells(&self) -> &BTreeSet<Simplex> {
        &self.cells
    }

    pub fn ambient(&self) -> &BTreeSet<Simplex> {
        &self.ambient
    }

    pub fn removed(&self) -> &BTreeSet<Simplex> {
        &self.removed
    }

    pub fn is_cell(&self, s: &Simplex) -> bool {
        self.cells.contains(s)
    }

    pub fn require_cell(&self, s: &Simplex) -> Result<(), ComplexError> {
        if self.is_cell(s) {
            Ok(())
        } else {
            Err(ComplexError::UnknownCell(s.name()))
        }
    }

    /// Open star among the cells: all surviving cofaces of `s`.
    pub fn star(&self, s: &Simplex) -> BTreeSet<Simplex> {
        self.cells
            .iter()
            .filter(|t| s.is_face_of(t))
            .cloned()
            .collect()
    }

    /// Faces of `s` in the ambient complex, then intersected with the cells.
    pub fn closure(&self, s: &Simplex) -> BTreeSet<Simplex> {
        let mut cl: BTreeSet<Simplex> = s.strict_faces().into_iter().collect();
        cl.insert(s.clone());
        cl.intersection(&self.cells).cloned().collect()
    }

    /// `cl st s - st cl s`, computed in the ambient complex and intersected
    /// with the cells.
    pub fn link(&self, s: &Simplex) -> BTreeSet<Simplex> {
        let star_ambient: BTreeSet<Simplex> = self
            .ambient
            .iter()
            .filter(|t| s.is_face_of(t))
            .cloned()
            .collect();
        let cl_star = face_closure(&star_ambient);
        let mut cl_s: BTreeSet<Simplex> = s.strict_faces().into_iter().collect();
        cl_s.insert(s.clone());
        let st_cl: BTreeSet<Simplex> = self
            .ambient
            .iter()
            .filter(|t| cl_s.iter().any(|g| g.is_face_of(t)))
            .cloned()
            .collect();
        cl_star
            .difference(&st_cl)
            .filter(|t| self.cells.contains(t))
            .cloned()
            .collect()
    }

    /// Codimension-one incidences `(tau, sigma)` with `sigma` a facet of `tau`,
    /// both surviving. These are exactly the covering relations of the cell
    /// poset: any removed intermediate face would drag `sigma` down with it.
    pub fn incidences(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for tau in &self.cells {
            for sigma in tau.facets() {
                if self.cells.contains(&sigma) {
                    out.push((tau.clone(), sigma.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// All strict face relations `(tau, sigma)` with `sigma < tau`, both cells.
    pub fn strict_face_pairs(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for tau in &self.cells {
            for sigma in tau.strict_faces() {
                if self.cells.contains(&sigma) {
                    out.push((tau.clone(), sigma.clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Length-two descents `tau > rho > sigma` with a dimension gap of two
    /// between `tau` and `sigma`; the raw material of commutativity checks.
    pub fn two_chains(&self) -> Vec<(Simplex, Simplex, Simplex)> {
        let mut out = Vec::new();
        for tau in &self.cells {
            for rho in tau.facets() {
                if !self.cells.contains(&rho) {
                    continue;
                }
                for sigma in rho.facets() {
                    if self.cells.contains(&sigma) {
                        out.push((tau.clone(), rho.clone(), sigma.clone()));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// `incidence` query: star, closure, or link of a cell.
pub fn incidence(
    complex: &OpenComplex,
    s: &Simplex,
    kind: IncidenceKind,
) -> Result<CellSet, ComplexError> {
    complex.require_cell(s)?;
    let cells = match kind {
        IncidenceKind::Star => complex.star(s),
        IncidenceKind::Closure => complex.closure(s),
        IncidenceKind::Link => complex.link(s),
    };
    Ok(CellSet { cells })
}

/// Cells partitioned into connected strata satisfying the frontier condition,
/// with the stratum order derived from closure containment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedComplex {
    complex: OpenComplex,
    stratum_of: BTreeMap<Simplex, String>,
    strata: BTreeMap<String, BTreeSet<Simplex>>,
    /// Reflexive-transitive order: `(s, t)` present iff `s <= t`.
    order: BTreeSet<(String, String)>,
}

/// Validates a total stratum assignment and derives the stratum poset.
pub fn build_stratification(
    complex: OpenComplex,
    assignment: &BTreeMap<Simplex, String>,
) -> Result<StratifiedComplex, ComplexError> {
    for cell in assignment.keys() {
        if !complex.is_cell(cell) {
            return Err(ComplexError::NotAPartition(format!(
                "assignment names {} which is not a cell",
                cell.name()
            )));
        }
    }
    for cell in complex.cells() {
        if !assignment.contains_key(cell) {
            return Err(ComplexError::NotAPartition(format!(
                "cell {} has no stratum",
                cell.name()
            )));
        }
    }

    let mut strata: BTreeMap<String, BTreeSet<Simplex>> = BTreeMap::new();
    for (cell, stratum) in assignment {
        strata
            .entry(stratum.clone())
            .or_default()
            .insert(cell.clone());
    }

    // Connectivity inside each stratum, through codimension-one incidences
    // whose endpoints share the stratum.
    for (name, members) in &strata {
        let items: Vec<&Simplex> = members.iter().collect();
        let mut parent: Vec<usize> = (0..items.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, tau) in items.iter().enumerate() {
            for sigma in tau.facets() {
                if let Ok(j) = items.binary_search(&&sigma) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let roots: BTreeSet<usize> = (0..items.len()).map(|i| find(&mut parent, i)).collect();
        if roots.len() > 1 {
            return Err(ComplexError::StratumDisconnected(name.clone()));
        }
    }

    // Frontier condition: a stratum meeting the closure of another must lie
    // entirely inside it. The passing pairs are the derived order.
    let mut closures: BTreeMap<&String, BTreeSet<Simplex>> = BTreeMap::new();
    for (name, members) in &strata {
        let mut cl = BTreeSet::new();
        for cell in members {
            cl.extend(complex.closure(cell));
        }
        closures.insert(name, cl);
    }
    let mut order: BTreeSet<(String, String)> = BTreeSet::new();
    for (upper, upper_cl) in &closures {
        for (lower, members) in &strata {
            if lower == *upper {
                continue;
            }
            let meets = members.iter().any(|c| upper_cl.contains(c));
            if !meets {
                continue;
            }
            if let Some(outside) = members.iter().find(|c| !upper_cl.contains(c)) {
                return Err(ComplexError::FrontierViolation {
                    lower: lower.clone(),
                    upper: (*upper).clone(),
                    witness: outside.name(),
                });
            }
            order.insert((lower.clone(), (*upper).clone()));
        }
    }
    for name in strata.keys() {
        order.insert((name.clone(), name.clone()));
    }
    debug_assert!(
        order
            .iter()
            .all(|(a, b)| a == b || !order.contains(&(b.clone(), a.clone()))),
        "derived stratum order is not antisymmetric"
    );

    Ok(StratifiedComplex {
        complex,
        stratum_of: assignment.clone(),
        strata,
        order,
    })
}

impl StratifiedComplex {
    /// Stratifies every cell as its own stratum, named by the cell.
    pub fn cellwise(complex: OpenComplex) -> Self {
        let assignment: BTreeMap<Simplex, String> = complex
            .cells()
            .iter()
            .map(|c| (c.clone(), c.name()))
            .collect();
        build_stratification(complex, &assignment).expect("cellwise stratification is always valid")
    }

    pub fn complex(&self) -> &OpenComplex {
        &self.complex
    }

    pub fn stratum_of(&self, cell: &Simplex) -> &str {
        &self.stratum_of[cell]
    }

    pub fn same_stratum(&self, a: &Simplex, b: &Simplex) -> bool {
        self.stratum_of[a] == self.stratum_of[b]
    }

    pub fn strata(&self) -> &BTreeMap<String, BTreeSet<Simplex>> {
        &self.strata
    }

    pub fn leq(&self, lower: &str, upper: &str) -> bool {
        self.order
            .contains(&(lower.to_string(), upper.to_string()))
    }

    pub fn order(&self) -> &BTreeSet<(String, String)> {
        &self.order
    }

    /// The basic cover by open stars, one per cell.
    pub fn star_cover(&self) -> Vec<CellSet> {
        self.complex
            .cells()
            .iter()
            .map(|c| CellSet {
                cells: self.complex.star(c),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sx(name: &str) -> Simplex {
        Simplex::parse(name).unwrap()
    }

    fn line_fixture() -> OpenComplex {
        build_complex(
            &[
                vec!["p".into(), "q".into()],
                vec!["q".into(), "r".into()],
            ],
            &[vec!["p".into()], vec!["r".into()]],
        )
        .unwrap()
    }

    fn punctured_disk() -> OpenComplex {
        build_complex(
            &[
                vec!["o".into(), "a".into(), "b".into()],
                vec!["o".into(), "b".into(), "c".into()],
                vec!["o".into(), "c".into(), "a".into()],
            ],
            &[
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
                vec!["c".into(), "a".into()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn one_edge_complex() {
        let k = build_complex(&[vec!["a".into(), "b".into()]], &[]).unwrap();
        let names: Vec<String> = k.cells().iter().map(Simplex::name).collect();
        assert_eq!(names, vec!["a", "a|b", "b"]);
    }

    #[test]
    fn punctured_disk_has_seven_cells() {
        let k = punctured_disk();
        let names: Vec<String> = k.cells().iter().map(Simplex::name).collect();
        assert_eq!(
            names,
            vec!["a|b|o", "a|o", "b|c|o", "b|o", "a|c|o", "c|o", "o"]
                .into_iter()
                .map(String::from)
                .sorted()
                .collect::<Vec<_>>()
        );
        assert_eq!(k.cells().len(), 7);
    }

    #[test]
    fn line_fixture_cells() {
        let k = line_fixture();
        let names: Vec<String> = k.cells().iter().map(Simplex::name).collect();
        assert_eq!(names, vec!["p|q", "q", "q|r"]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            build_complex(&[vec!["a".into(), "a".into()]], &[]),
            Err(ComplexError::DuplicateVertexInSimplex(_))
        ));
        assert!(matches!(
            build_complex(&[vec!["a".into(), "b".into()]], &[vec!["z".into()]]),
            Err(ComplexError::RemovedNotSubcomplex(_))
        ));
        assert!(matches!(
            build_complex(
                &[vec!["a".into(), "b".into()]],
                &[vec!["a".into(), "b".into()]]
            ),
            Err(ComplexError::KeptCellRemoved(_))
        ));
        assert!(matches!(
            Simplex::new(["a|b"]),
            Err(ComplexError::BadVertexName(_))
        ));
    }

    #[test]
    fn star_closure_link_on_fixtures() {
        let line = line_fixture();
        let st_q = incidence(&line, &sx("q"), IncidenceKind::Star).unwrap();
        assert_eq!(st_q.names(), vec!["p|q", "q", "q|r"]);
        let cl_pq = incidence(&line, &sx("p|q"), IncidenceKind::Closure).unwrap();
        assert_eq!(cl_pq.names(), vec!["p|q", "q"]);

        let disk = punctured_disk();
        let st_oa = incidence(&disk, &sx("a|o"), IncidenceKind::Star).unwrap();
        assert_eq!(st_oa.names(), vec!["a|b|o", "a|c|o", "a|o"]);

        // Link of o in the punctured disk: the boundary triangle was removed.
        let link_o = incidence(&disk, &sx("o"), IncidenceKind::Link).unwrap();
        assert!(link_o.cells.is_empty());

        assert!(matches!(
            incidence(&line, &sx("p"), IncidenceKind::Star),
            Err(ComplexError::UnknownCell(_))
        ));
    }

    #[test]
    fn link_in_closed_complex() {
        let k = build_complex(
            &[vec!["a".into(), "b".into(), "c".into()]],
            &[],
        )
        .unwrap();
        let link_a = incidence(&k, &sx("a"), IncidenceKind::Link).unwrap();
        assert_eq!(link_a.names(), vec!["b", "b|c", "c"]);
    }

    fn line_strata() -> BTreeMap<Simplex, String> {
        [
            (sx("q"), "S0".to_string()),
            (sx("p|q"), "E1".to_string()),
            (sx("q|r"), "E2".to_string()),
        ]
        .into_iter()
        .collect()
    }

    #[test]
    fn line_stratification_order() {
        let strat = build_stratification(line_fixture(), &line_strata()).unwrap();
        assert!(strat.leq("S0", "E1"));
        assert!(strat.leq("S0", "E2"));
        assert!(!strat.leq("E1", "E2"));
        assert!(!strat.leq("E1", "S0"));
    }

    #[test]
    fn disk_stratification_order() {
        let disk = punctured_disk();
        let assignment: BTreeMap<Simplex, String> = disk
            .cells()
            .iter()
            .map(|c| {
                let s = if c.name() == "o" { "origin" } else { "bulk" };
                (c.clone(), s.to_string())
            })
            .collect();
        let strat = build_stratification(disk, &assignment).unwrap();
        assert!(strat.leq("origin", "bulk"));
        assert!(!strat.leq("bulk", "origin"));
    }

    #[test]
    fn frontier_violation_detected() {
        let assignment: BTreeMap<Simplex, String> = [
            (sx("q"), "A".to_string()),
            (sx("p|q"), "A".to_string()),
            (sx("q|r"), "B".to_string()),
        ]
        .into_iter()
        .collect();
        let err = build_stratification(line_fixture(), &assignment).unwrap_err();
        assert!(matches!(err, ComplexError::FrontierViolation { .. }));
    }

    #[test]
    fn disconnected_stratum_detected() {
        let assignment: BTreeMap<Simplex, String> = [
            (sx("q"), "M".to_string()),
            (sx("p|q"), "E".to_string()),
            (sx("q|r"), "E".to_string()),
        ]
        .into_iter()
        .collect();
        let err = build_stratification(line_fixture(), &assignment).unwrap_err();
        assert_eq!(err, ComplexError::StratumDisconnected("E".to_string()));
    }

    #[test]
    fn partition_errors() {
        let assignment: BTreeMap<Simplex, String> =
            [(sx("q"), "S".to_string())].into_iter().collect();
        assert!(matches!(
            build_stratification(line_fixture(), &assignment),
            Err(ComplexError::NotAPartition(_))
        ));
    }

    #[test]
    fn star_cover_intersections_are_members_or_empty() {
        let disk = punctured_disk();
        let assignment: BTreeMap<Simplex, String> = disk
            .cells()
            .iter()
            .map(|c| {
                let s = if c.name() == "o" { "origin" } else { "bulk" };
                (c.clone(), s.to_string())
            })
            .collect();
        let strat = build_stratification(disk, &assignment).unwrap();
        let cover = strat.star_cover();
        assert_eq!(cover.len(), 7);
        for a in &cover {
            for b in &cover {
                let inter: BTreeSet<Simplex> =
                    a.cells.intersection(&b.cells).cloned().collect();
                if !inter.is_empty() {
                    assert!(
                        cover.iter().any(|m| m.cells == inter),
                        "intersection of stars must be a star"
                    );
                }
            }
        }
        // st(oa) and st(ob) meet exactly in st(oab).
        let st = |n: &str| strat.complex().star(&sx(n));
        let meet: BTreeSet<Simplex> =
            st("a|o").intersection(&st("b|o")).cloned().collect();
        assert_eq!(meet, st("a|b|o"));
    }

    #[test]
    fn from_cells_round_trip_and_rejection() {
        let line = line_fixture();
        let rebuilt = OpenComplex::from_cells(line.cells().clone()).unwrap();
        assert_eq!(rebuilt.cells(), line.cells());

        // Keeping a triangle and one of its vertices but not the spanning
        // edges is not of the form K - L.
        let bad: BTreeSet<Simplex> = [sx("a|b|c"), sx("a")].into_iter().collect();
        assert!(matches!(
            OpenComplex::from_cells(bad),
            Err(ComplexError::NotAnOpenComplex(..))
        ));
    }
}
