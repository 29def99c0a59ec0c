//! Stratum-preserving simplicial maps and their pushforward cosheaves.
//!
//! The value of the pushforward on a target cell is the set of connected
//! components of the preimage of its open star; maps between values come from
//! inclusions of stars. Components are named by their least member cell, so
//! every value and map here is canonical. Failures of the fibration-like
//! behaviour the construction assumes are not detected here; they surface as
//! `InvertibilityFailure` when the resulting data is validated.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{CellSet, ComplexError, OpenComplex, Simplex, StratifiedComplex};
use crate::cosheaf::{build_cosheaf, Cosheaf, CosheafError, CosheafOptions, OpenSet};
use crate::field::Field;
use crate::omega::{linearize_map, SetMap, SetOmega, SetValue, VectOmega};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cosheaf(#[from] CosheafError),
    #[error("vertex {0} has no image")]
    MissingVertexImage(String),
    #[error("cell {cell} maps to {image}, which is not a cell of the target")]
    NotSimplicial { cell: String, image: String },
    #[error("source stratum {stratum} maps into several target strata ({a} and {b})")]
    NotStratumPreserving {
        stratum: String,
        a: String,
        b: String,
    },
}

impl IngestError {
    pub fn name(&self) -> &'static str {
        match self {
            IngestError::Complex(e) => e.name(),
            IngestError::Cosheaf(e) => e.name(),
            IngestError::MissingVertexImage(_) => "MissingVertexImage",
            IngestError::NotSimplicial { .. } => "NotSimplicial",
            IngestError::NotStratumPreserving { .. } => "NotStratumPreserving",
        }
    }
}

/// Union-find over a finite set of string labels; the representative of a
/// class is its least label.
#[derive(Clone, Debug)]
pub struct Partition {
    labels: Vec<String>,
    parent: Vec<usize>,
    least: Vec<usize>,
}

impl Partition {
    pub fn new<I: IntoIterator<Item = String>>(labels: I) -> Self {
        let labels: Vec<String> = {
            let set: BTreeSet<String> = labels.into_iter().collect();
            set.into_iter().collect()
        };
        let n = labels.len();
        Partition {
            labels,
            parent: (0..n).collect(),
            least: (0..n).collect(),
        }
    }

    fn index(&self, label: &str) -> usize {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .unwrap_or_else(|_| panic!("unknown label {label}"))
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    pub fn merge(&mut self, a: &str, b: &str) {
        let (ra, rb) = (self.find(self.index(a)), self.find(self.index(b)));
        if ra == rb {
            return;
        }
        self.parent[ra] = rb;
        if self.least[ra] < self.least[rb] {
            self.least[rb] = self.least[ra];
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_count(&self) -> usize {
        (0..self.labels.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }

    /// The least label in the class of `label`.
    pub fn rep_of(&self, label: &str) -> &str {
        &self.labels[self.least[self.find(self.index(label))]]
    }

    pub fn reps(&self) -> Vec<String> {
        let mut out: Vec<String> = (0..self.labels.len())
            .filter(|&i| self.find(i) == i)
            .map(|i| self.labels[self.least[i]].clone())
            .collect();
        out.sort();
        out
    }

    pub fn classes(&self) -> BTreeMap<String, BTreeSet<String>> {
        let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (i, label) in self.labels.iter().enumerate() {
            let rep = self.labels[self.least[self.find(i)]].clone();
            out.entry(rep).or_default().insert(label.clone());
        }
        out
    }
}

/// Components of the face-incidence graph restricted to a cell set. Two cells
/// are joined whenever one is a face of the other inside the set.
pub fn pi0(complex: &OpenComplex, cellset: &CellSet) -> Result<Partition, ComplexError> {
    for c in &cellset.cells {
        complex.require_cell(c)?;
    }
    let mut partition = Partition::new(cellset.cells.iter().map(Simplex::name));
    for tau in &cellset.cells {
        for sigma in tau.strict_faces() {
            if cellset.cells.contains(&sigma) {
                partition.merge(&tau.name(), &sigma.name());
            }
        }
    }
    Ok(partition)
}

/// A simplicial map into a stratified target, given on vertices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: OpenComplex,
    source_strata: Option<StratifiedComplex>,
    target: StratifiedComplex,
    vertex_map: BTreeMap<String, String>,
}

/// Validates a vertex map: total on source vertices, simplicial into the
/// target cells, and stratum-preserving when the source is stratified.
pub fn build_map(
    source: OpenComplex,
    source_strata: Option<StratifiedComplex>,
    target: StratifiedComplex,
    vertex_map: BTreeMap<String, String>,
) -> Result<SimplicialMap, IngestError> {
    if let Some(ss) = &source_strata {
        assert_eq!(
            ss.complex(),
            &source,
            "stratification must be of the source complex"
        );
    }
    let map = SimplicialMap {
        source,
        source_strata,
        target,
        vertex_map,
    };
    for s in map.source.ambient() {
        for v in s.vertices() {
            if !map.vertex_map.contains_key(v) {
                return Err(IngestError::MissingVertexImage(v.clone()));
            }
        }
    }
    for cell in map.source.cells() {
        let image = map.image_cell(cell);
        if !map.target.complex().is_cell(&image) {
            return Err(IngestError::NotSimplicial {
                cell: cell.name(),
                image: image.name(),
            });
        }
    }
    if let Some(ss) = &map.source_strata {
        for (stratum, members) in ss.strata() {
            let mut seen: Option<String> = None;
            for cell in members {
                let target_stratum = map
                    .target
                    .stratum_of(&map.image_cell(cell))
                    .to_string();
                match &seen {
                    None => seen = Some(target_stratum),
                    Some(s) if *s != target_stratum => {
                        return Err(IngestError::NotStratumPreserving {
                            stratum: stratum.clone(),
                            a: s.clone(),
                            b: target_stratum,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(map)
}

impl SimplicialMap {
    pub fn source(&self) -> &OpenComplex {
        &self.source
    }

    pub fn target(&self) -> &StratifiedComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<String, String> {
        &self.vertex_map
    }

    /// Image of a source simplex: the simplex spanned by the mapped vertices.
    pub fn image_cell(&self, s: &Simplex) -> Simplex {
        let vs: BTreeSet<String> = s
            .vertices()
            .iter()
            .map(|v| self.vertex_map[v].clone())
            .collect();
        Simplex::new(vs).expect("image vertex names are valid")
    }

    /// Source cells whose image lies in the given set of target cells.
    pub fn preimage_of(&self, target_cells: &BTreeSet<Simplex>) -> CellSet {
        CellSet {
            cells: self
                .source
                .cells()
                .iter()
                .filter(|c| target_cells.contains(&self.image_cell(c)))
                .cloned()
                .collect(),
        }
    }

    /// Preimage of an open set of the target.
    pub fn preimage_of_open(&self, open: &OpenSet) -> CellSet {
        self.preimage_of(open.cells())
    }
}

/// The component cosheaf of a map: on each target cell, the components of the
/// preimage of its star; on each incidence, the component inclusion.
pub fn pushforward_cosheaf_set(map: &SimplicialMap) -> Result<Cosheaf<SetOmega>, IngestError> {
    let target = map.target.clone();
    let mut partitions: BTreeMap<Simplex, Partition> = BTreeMap::new();
    for cell in target.complex().cells() {
        let star = target.complex().star(cell);
        let pre = map.preimage_of(&star);
        partitions.insert(cell.clone(), pi0(&map.source, &pre)?);
    }
    let values: BTreeMap<Simplex, SetValue> = partitions
        .iter()
        .map(|(c, p)| {
            let v = SetValue::new(p.reps()).expect("representatives are distinct");
            (c.clone(), v)
        })
        .collect();
    let maps: BTreeMap<(Simplex, Simplex), SetMap> = target
        .complex()
        .incidences()
        .into_iter()
        .map(|(tau, sigma)| {
            // st(tau) sits inside st(sigma), so each component of the smaller
            // preimage lands in a unique component of the larger one.
            let entries = partitions[&tau]
                .reps()
                .into_iter()
                .map(|rep| {
                    let image = partitions[&sigma].rep_of(&rep).to_string();
                    (rep, image)
                })
                .collect();
            ((tau, sigma), SetMap::new(entries))
        })
        .collect();
    Ok(build_cosheaf(
        target,
        values,
        maps,
        CosheafOptions::default(),
    )?)
}

/// The free linearization of the component cosheaf; `one` pins the scalars.
pub fn pushforward_cosheaf_vect<F: Field>(
    map: &SimplicialMap,
    one: F,
) -> Result<Cosheaf<VectOmega<F>>, IngestError> {
    let set = pushforward_cosheaf_set(map)?;
    let values: BTreeMap<Simplex, usize> = set
        .values()
        .iter()
        .map(|(c, v)| (c.clone(), v.len()))
        .collect();
    let maps = set
        .maps()
        .iter()
        .map(|((tau, sigma), m)| {
            let mat = linearize_map(m, set.value_of(tau), set.value_of(sigma), &one);
            ((tau.clone(), sigma.clone()), mat)
        })
        .collect();
    Ok(build_cosheaf(
        set.base().clone(),
        values,
        maps,
        CosheafOptions::default(),
    )?)
}
