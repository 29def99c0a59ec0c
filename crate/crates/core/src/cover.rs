//! The glued space of a set-valued cosheaf and its projection to the base,
//! plus the checks that make the projection a stratified covering.
//!
//! Cover cells are pairs `(base cell, element)`; the face under an incidence
//! `sigma < tau` of `(tau, y)` is `(sigma, m(y))` for the incidence map `m`.
//! The result is a cell structure rather than a simplicial complex: two cover
//! cells may share all of their faces, which genuinely happens for cyclic
//! covers. Upstairs strata are the connected components of the preimages of
//! base strata, labelled by their least member.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{Simplex, StratifiedComplex};
use crate::cosheaf::{Cosheaf, CosheafError, OpenSet};
use crate::ingest::{pushforward_cosheaf_set, IngestError, Partition, SimplicialMap};
use crate::omega::SetOmega;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Cosheaf(#[from] CosheafError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("the base must be one-dimensional to produce a graph, found cell {0}")]
    BaseNotOneDimensional(String),
}

impl CoverError {
    pub fn name(&self) -> &'static str {
        match self {
            CoverError::Cosheaf(e) => e.name(),
            CoverError::Ingest(e) => e.name(),
            CoverError::BaseNotOneDimensional(_) => "BaseNotOneDimensional",
        }
    }
}

/// A cell of the cover: a base cell with a fiber label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverCell {
    pub base: Simplex,
    pub label: String,
}

impl CoverCell {
    pub fn name(&self) -> String {
        format!("{}:{}", self.base.name(), self.label)
    }
}

/// The total space of a cover with its projection (recorded per cell) and the
/// derived upstairs stratification.
#[derive(Clone, Debug)]
pub struct CoverComplex {
    base: StratifiedComplex,
    cells: Vec<CoverCell>,
    /// Per cell: one face entry per base facet incidence; duplicates allowed.
    faces: Vec<Vec<usize>>,
    stratum: Vec<String>,
}

/// Builds the cover of a set-valued cosheaf: one cell per (base cell, element)
/// pair, glued along the incidence maps.
pub fn build_cover(cosheaf: &Cosheaf<SetOmega>) -> CoverComplex {
    let base = cosheaf.base().clone();
    let mut cells: Vec<CoverCell> = Vec::new();
    for (cell, value) in cosheaf.values() {
        for e in value.elements() {
            cells.push(CoverCell {
                base: cell.clone(),
                label: e.clone(),
            });
        }
    }
    cells.sort();
    let index: BTreeMap<CoverCell, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let mut faces: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (i, cell) in cells.iter().enumerate() {
        for (tau, sigma) in base.complex().incidences() {
            if tau != cell.base {
                continue;
            }
            let m = cosheaf.map_of(&tau, &sigma);
            let image = m.apply(&cell.label).expect("incidence maps are total");
            let face = CoverCell {
                base: sigma,
                label: image.to_string(),
            };
            faces[i].push(index[&face]);
        }
        faces[i].sort();
    }
    CoverComplex::assemble(base, cells, faces)
}

impl CoverComplex {
    /// A cover from explicit raw data: cells and their face lists, given by
    /// name pairs. Projection sanity (faces sit over base facets) is left to
    /// `validate_covering`.
    pub fn from_raw(
        base: StratifiedComplex,
        raw: BTreeMap<(Simplex, String), Vec<(Simplex, String)>>,
    ) -> CoverComplex {
        let mut cells: Vec<CoverCell> = raw
            .keys()
            .map(|(b, l)| CoverCell {
                base: b.clone(),
                label: l.clone(),
            })
            .collect();
        cells.sort();
        let index: BTreeMap<CoverCell, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let mut faces: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        for ((b, l), fs) in &raw {
            let i = index[&CoverCell {
                base: b.clone(),
                label: l.clone(),
            }];
            for (fb, fl) in fs {
                let fc = CoverCell {
                    base: fb.clone(),
                    label: fl.clone(),
                };
                faces[i].push(*index.get(&fc).unwrap_or_else(|| {
                    panic!("face {} missing from the cover", fc.name())
                }));
            }
            faces[i].sort();
        }
        CoverComplex::assemble(base, cells, faces)
    }

    /// The identity cover: one cell over each base cell.
    pub fn identity(base: StratifiedComplex) -> CoverComplex {
        let constant = crate::cosheaf::constant_set_cosheaf(base, "*")
            .expect("constant data is always valid");
        build_cover(&constant)
    }

    fn assemble(
        base: StratifiedComplex,
        cells: Vec<CoverCell>,
        faces: Vec<Vec<usize>>,
    ) -> CoverComplex {
        // Upstairs strata: components of each base stratum's preimage.
        let mut stratum = vec![String::new(); cells.len()];
        for name in base.strata().keys() {
            let member_ids: Vec<usize> = (0..cells.len())
                .filter(|&i| base.stratum_of(&cells[i].base) == name)
                .collect();
            if member_ids.is_empty() {
                continue;
            }
            let mut part = Partition::new(member_ids.iter().map(|&i| cells[i].name()));
            for &i in &member_ids {
                for &f in &faces[i] {
                    if base.stratum_of(&cells[f].base) == name {
                        part.merge(&cells[i].name(), &cells[f].name());
                    }
                }
            }
            for &i in &member_ids {
                stratum[i] = format!("{}/{}", name, part.rep_of(&cells[i].name()));
            }
        }
        CoverComplex {
            base,
            cells,
            faces,
            stratum,
        }
    }

    pub fn base(&self) -> &StratifiedComplex {
        &self.base
    }

    pub fn cells(&self) -> &[CoverCell] {
        &self.cells
    }

    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn stratum_of(&self, i: usize) -> &str {
        &self.stratum[i]
    }

    /// Cell indices in the fiber over a base cell.
    pub fn fiber(&self, base_cell: &Simplex) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].base == *base_cell)
            .collect()
    }

    /// Upward closure of a cell in the cover's face order.
    pub fn star_of(&self, cell: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut queue = vec![cell];
        while let Some(c) = queue.pop() {
            if !out.insert(c) {
                continue;
            }
            for i in 0..self.cells.len() {
                if self.faces[i].contains(&c) && !out.contains(&i) {
                    queue.push(i);
                }
            }
        }
        out
    }

    /// Connected components of a set of cover cells through face incidences
    /// that stay inside the set.
    fn components_within(&self, cells: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let ids: Vec<usize> = cells.iter().copied().collect();
        let mut part = Partition::new(ids.iter().map(|&i| self.cells[i].name()));
        for &i in &ids {
            for &f in &self.faces[i] {
                if cells.contains(&f) {
                    part.merge(&self.cells[i].name(), &self.cells[f].name());
                }
            }
        }
        let by_name: BTreeMap<String, usize> = ids
            .iter()
            .map(|&i| (self.cells[i].name(), i))
            .collect();
        part.classes()
            .into_values()
            .map(|class| class.iter().map(|n| by_name[n]).collect())
            .collect()
    }

    /// Partition of all cover cells into connected components.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        self.components_within(&(0..self.cells.len()).collect())
    }

    /// Component count of the part of the cover sitting over an open set.
    pub fn component_count_over(&self, open: &OpenSet) -> usize {
        let over: BTreeSet<usize> = (0..self.cells.len())
            .filter(|&i| open.contains(&self.cells[i].base))
            .collect();
        self.components_within(&over).len()
    }

    /// `(b0, b1)` when every cell has dimension at most one.
    pub fn graph_betti(&self) -> Result<(usize, usize), CoverError> {
        if let Some(c) = self.cells.iter().find(|c| c.base.dimension() > 1) {
            return Err(CoverError::BaseNotOneDimensional(c.base.name()));
        }
        let v = self
            .cells
            .iter()
            .filter(|c| c.base.dimension() == 0)
            .count();
        let e = self.cells.len() - v;
        let b0 = self.components().len();
        Ok((b0, e + b0 - v))
    }

    /// DOT rendering for one-dimensional covers. Vertices are `base:label`
    /// names; each edge cell with both endpoints present becomes an edge.
    pub fn to_dot(&self) -> Result<String, CoverError> {
        if let Some(c) = self.cells.iter().find(|c| c.base.dimension() > 1) {
            return Err(CoverError::BaseNotOneDimensional(c.base.name()));
        }
        let mut out = String::from("graph {\n");
        for c in self.cells.iter().filter(|c| c.base.dimension() == 0) {
            writeln!(out, "  \"{}\";", c.name()).unwrap();
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.base.dimension() != 1 {
                continue;
            }
            match self.faces[i].as_slice() {
                [a, b] => {
                    writeln!(
                        out,
                        "  \"{}\" -- \"{}\";",
                        self.cells[*a].name(),
                        self.cells[*b].name()
                    )
                    .unwrap();
                }
                [a] => {
                    // Half-open edge: record the dangling end as a comment.
                    writeln!(
                        out,
                        "  \"{}\"; // open edge {}",
                        self.cells[*a].name(),
                        c.name()
                    )
                    .unwrap();
                }
                _ => {
                    writeln!(out, "  // open edge {}", c.name()).unwrap();
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// One failed check of `validate_covering`.
#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Checks the covering conditions: the projection respects faces and strata,
/// restricts to a local bijection of stars inside each stratum with constant
/// fiber size, lifts frontier relations downward, and pulls basic stars back
/// to disjoint unions of upstairs stars.
pub fn validate_covering(cover: &CoverComplex) -> CoveringReport {
    let mut failures = Vec::new();
    let base = cover.base();

    // Projection respects the face structure.
    for (i, cell) in cover.cells().iter().enumerate() {
        for &f in cover.faces_of(i) {
            let fb = &cover.cells()[f].base;
            if !fb.is_face_of(&cell.base) || fb.dimension() + 1 != cell.base.dimension() {
                failures.push(format!(
                    "face {} of {} does not sit over a facet of its base",
                    cover.cells()[f].name(),
                    cell.name()
                ));
            }
        }
    }

    // Local bijectivity of stars within each stratum, and constant fibers.
    for (stratum, members) in base.strata() {
        let mut fiber_size: Option<usize> = None;
        for member in members {
            let size = cover.fiber(member).len();
            match fiber_size {
                None => fiber_size = Some(size),
                Some(s) if s != size => {
                    failures.push(format!(
                        "fiber size over stratum {stratum} is not constant ({s} vs {size} at {})",
                        member.name()
                    ));
                    break;
                }
                _ => {}
            }
        }
        for member in members {
            let base_star: Vec<Simplex> = base
                .complex()
                .star(member)
                .into_iter()
                .filter(|t| base.stratum_of(t) == stratum)
                .collect();
            for up in cover.fiber(member) {
                let up_star: Vec<usize> = cover
                    .star_of(up)
                    .into_iter()
                    .filter(|&d| base.stratum_of(&cover.cells()[d].base) == stratum)
                    .collect();
                let mut images: Vec<Simplex> = up_star
                    .iter()
                    .map(|&d| cover.cells()[d].base.clone())
                    .collect();
                images.sort();
                let has_duplicates = images.windows(2).any(|w| w[0] == w[1]);
                if has_duplicates || images != base_star {
                    failures.push(format!(
                        "star of {} does not map bijectively onto the star of {} within stratum {stratum}",
                        cover.cells()[up].name(),
                        member.name()
                    ));
                }
            }
        }
    }

    // Frontier lifting: upstairs strata must reach down over every smaller
    // base stratum.
    let upstairs_order = upstairs_stratum_order(cover);
    let upstairs_strata: BTreeMap<String, String> = (0..cover.cells().len())
        .map(|i| {
            (
                cover.stratum_of(i).to_string(),
                base.stratum_of(&cover.cells()[i].base).to_string(),
            )
        })
        .collect();
    for (upper, base_upper) in &upstairs_strata {
        for base_lower in base.strata().keys() {
            if base_lower == base_upper || !base.leq(base_lower, base_upper) {
                continue;
            }
            let lifted = upstairs_strata.iter().any(|(lower, bl)| {
                lower != upper
                    && bl == base_lower
                    && upstairs_order.contains(&(lower.clone(), upper.clone()))
            });
            if !lifted {
                failures.push(format!(
                    "no upstairs stratum below {upper} lies over {base_lower}"
                ));
            }
        }
    }

    // Preimages of basic stars decompose into upstairs stars.
    for cell in base.complex().cells() {
        let star = base.complex().star(cell);
        let preimage: BTreeSet<usize> = (0..cover.cells().len())
            .filter(|&i| star.contains(&cover.cells()[i].base))
            .collect();
        let components = cover.components_within(&preimage);
        let fiber_stars: Vec<BTreeSet<usize>> = cover
            .fiber(cell)
            .into_iter()
            .map(|up| cover.star_of(up))
            .collect();
        for (a, sa) in fiber_stars.iter().enumerate() {
            for sb in fiber_stars.iter().skip(a + 1) {
                if sa.intersection(sb).next().is_some() {
                    failures.push(format!(
                        "upstairs stars over {} are not disjoint",
                        cell.name()
                    ));
                }
            }
        }
        let union: BTreeSet<usize> = fiber_stars.iter().flatten().copied().collect();
        if union != preimage
            || !components
                .iter()
                .all(|comp| fiber_stars.iter().any(|s| s == comp))
        {
            failures.push(format!(
                "preimage of the star of {} is not the disjoint union of upstairs stars",
                cell.name()
            ));
        }
    }

    CoveringReport {
        passed: failures.is_empty(),
        failures,
    }
}

/// Reflexive-transitive order on upstairs strata generated by face relations.
fn upstairs_stratum_order(cover: &CoverComplex) -> BTreeSet<(String, String)> {
    let mut order: BTreeSet<(String, String)> = BTreeSet::new();
    for i in 0..cover.cells().len() {
        order.insert((
            cover.stratum_of(i).to_string(),
            cover.stratum_of(i).to_string(),
        ));
        for &f in cover.faces_of(i) {
            order.insert((
                cover.stratum_of(f).to_string(),
                cover.stratum_of(i).to_string(),
            ));
        }
    }
    // Transitive closure over the finitely many labels.
    loop {
        let mut grew = false;
        let pairs: Vec<(String, String)> = order.iter().cloned().collect();
        for (a, b) in &pairs {
            for (c, d) in &pairs {
                if b == c && order.insert((a.clone(), d.clone())) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    order
}

/// The Reeb construction: components of the fibers of a map onto a
/// one-dimensional base, glued into a graph over it.
pub fn reeb_pipeline(map: &SimplicialMap) -> Result<CoverComplex, CoverError> {
    if let Some(c) = map
        .target()
        .complex()
        .cells()
        .iter()
        .find(|c| c.dimension() > 1)
    {
        return Err(CoverError::BaseNotOneDimensional(c.name()));
    }
    let pushed = pushforward_cosheaf_set(map)?;
    Ok(build_cover(&pushed))
}
