//! Zigzag modules over a stratified open line and their barcode
//! decomposition.
//!
//! Positions along the path alternate edge, vertex, ..., edge (even indices
//! are edges, odd are vertices) and every map points toward the vertex.
//! Interval multiplicities come from inclusion-exclusion over the generalized
//! rank, the rank of the canonical map from the limit to the colimit of the
//! restriction to a window. `recompose` builds the direct sum of interval
//! modules back and doubles as the oracle for `decompose`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{OpenComplex, Simplex, StratifiedComplex};
use crate::cosheaf::Cosheaf;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::omega::{vect_limit, Diagram, Omega, VectOmega};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("base is not an open path: {0}")]
    NotAPath(String),
    #[error("cell {0} has dimension above one")]
    WrongDimension(String),
    #[error("position {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("negative multiplicity at window [{lo}, {hi}]")]
    NegativeMultiplicity { lo: usize, hi: usize },
}

impl ZigzagError {
    pub fn name(&self) -> &'static str {
        match self {
            ZigzagError::NotAPath(_) => "NotAPath",
            ZigzagError::WrongDimension(_) => "WrongDimension",
            ZigzagError::IndexOutOfRange { .. } => "IndexOutOfRange",
            ZigzagError::NegativeMultiplicity { .. } => "NegativeMultiplicity",
        }
    }
}

/// A representation of the alternating path category: an odd number of spaces
/// with maps pointing into the odd (vertex) positions.
#[derive(Clone, Debug, PartialEq)]
pub struct ZigzagModule<F: Field> {
    spaces: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> ZigzagModule<F> {
    /// `maps[i]` sits between positions `i` and `i + 1`: for even `i` it maps
    /// `i -> i+1`, for odd `i` it maps `i+1 -> i`.
    pub fn new(spaces: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        assert!(spaces.len() % 2 == 1, "a zigzag has an odd number of spaces");
        assert_eq!(maps.len() + 1, spaces.len());
        for (i, m) in maps.iter().enumerate() {
            let (tgt, src) = if i % 2 == 0 {
                (spaces[i + 1], spaces[i])
            } else {
                (spaces[i], spaces[i + 1])
            };
            assert_eq!(
                (m.rows(), m.cols()),
                (tgt, src),
                "map {i} has the wrong shape"
            );
        }
        ZigzagModule { spaces, maps }
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is at least one by construction
    }

    pub fn spaces(&self) -> &[usize] {
        &self.spaces
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    fn window_diagram(&self, lo: usize, hi: usize) -> Diagram<VectOmega<F>> {
        let nodes = (lo..=hi)
            .map(|p| (p.to_string(), self.spaces[p]))
            .collect();
        let mut arrows = Vec::new();
        for i in lo..hi {
            let m = self.maps[i].clone();
            if i % 2 == 0 {
                arrows.push((i - lo, i + 1 - lo, m));
            } else {
                arrows.push((i + 1 - lo, i - lo, m));
            }
        }
        Diagram { nodes, arrows }
    }

    /// Rank of the canonical map from the limit to the colimit of the
    /// restriction to positions `lo..=hi`; well defined because the window is
    /// connected.
    pub fn generalized_rank(&self, lo: usize, hi: usize) -> Result<usize, ZigzagError> {
        if lo > hi || hi >= self.len() {
            return Err(ZigzagError::IndexOutOfRange {
                index: hi.max(lo),
                len: self.len(),
            });
        }
        let diagram = self.window_diagram(lo, hi);
        let (_, cones) = vect_limit(&diagram);
        let colim = VectOmega::<F>::colimit(&diagram);
        let canonical = VectOmega::<F>::cocone(&colim, 0).mul(&cones[0]);
        Ok(canonical.rank())
    }

    /// The full table of generalized ranks, `table[lo][hi - lo]`.
    pub fn rank_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|lo| {
                (lo..self.len())
                    .map(|hi| self.generalized_rank(lo, hi).expect("in range"))
                    .collect()
            })
            .collect()
    }
}

/// A window `lo..=hi` of positions carried with a multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub multiplicity: usize,
}

/// The topological flavour of an interval, read off endpoint parities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    Closed,
    Open,
    LeftOpen,
    RightOpen,
}

impl IntervalKind {
    pub fn label(self) -> &'static str {
        match self {
            IntervalKind::Closed => "closed",
            IntervalKind::Open => "open",
            IntervalKind::LeftOpen => "left-open",
            IntervalKind::RightOpen => "right-open",
        }
    }
}

/// Multiset of intervals, sorted by `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barcode {
    pub bars: Vec<Interval>,
}

impl Barcode {
    /// Total multiplicity covering a position.
    pub fn dimension_at(&self, pos: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| b.lo <= pos && pos <= b.hi)
            .map(|b| b.multiplicity)
            .sum()
    }
}

/// Interval multiplicities by inclusion-exclusion over the generalized rank.
pub fn decompose<F: Field>(module: &ZigzagModule<F>) -> Result<Barcode, ZigzagError> {
    let n = module.len();
    let table = module.rank_table();
    let r = |lo: isize, hi: isize| -> usize {
        if lo < 0 || hi >= n as isize || lo > hi {
            0
        } else {
            table[lo as usize][(hi - lo) as usize]
        }
    };
    let mut bars = Vec::new();
    for lo in 0..n {
        for hi in lo..n {
            let (l, h) = (lo as isize, hi as isize);
            let with_signs = r(l, h) as isize - r(l - 1, h) as isize - r(l, h + 1) as isize
                + r(l - 1, h + 1) as isize;
            if with_signs < 0 {
                return Err(ZigzagError::NegativeMultiplicity { lo, hi });
            }
            if with_signs > 0 {
                bars.push(Interval {
                    lo,
                    hi,
                    multiplicity: with_signs as usize,
                });
            }
        }
    }
    let barcode = Barcode { bars };
    debug_assert!(
        (0..n).all(|p| barcode.dimension_at(p) == module.spaces()[p]),
        "barcode must reproduce the pointwise dimensions"
    );
    Ok(barcode)
}

/// Direct sum of interval modules: identities inside each bar, zero outside.
pub fn recompose<F: Field>(barcode: &Barcode, length: usize) -> ZigzagModule<F> {
    assert!(length % 2 == 1, "a zigzag has an odd number of positions");
    assert!(
        barcode.bars.iter().all(|b| b.lo <= b.hi && b.hi < length),
        "bars must fit the length"
    );
    let mut bars = barcode.bars.clone();
    bars.sort();
    // Copy index layout: position p hosts one coordinate per (bar, copy)
    // covering p, in bar order.
    let spaces: Vec<usize> = (0..length).map(|p| barcode.dimension_at(p)).collect();
    let coords_at = |p: usize| -> Vec<usize> {
        // bar index per coordinate
        let mut out = Vec::new();
        for (bi, b) in bars.iter().enumerate() {
            if b.lo <= p && p <= b.hi {
                for _ in 0..b.multiplicity {
                    out.push(bi);
                }
            }
        }
        out
    };
    let maps = (0..length - 1)
        .map(|i| {
            let (src, tgt) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
            let src_coords = coords_at(src);
            let tgt_coords = coords_at(tgt);
            let mut m: Matrix<F> = Matrix::zeros(tgt_coords.len(), src_coords.len());
            // Match copies of the same bar across the two positions; copies of
            // one bar appear in the same order on both sides.
            let mut used = vec![false; tgt_coords.len()];
            for (c, bar) in src_coords.iter().enumerate() {
                if let Some(r) = (0..tgt_coords.len())
                    .find(|&r| !used[r] && tgt_coords[r] == *bar)
                {
                    used[r] = true;
                    *m.at_mut(r, c) = F::one();
                }
            }
            m
        })
        .collect();
    ZigzagModule::new(spaces, maps)
}

/// Checks that the base is an open path (edge, vertex, ..., edge) and returns
/// its cells in path order, oriented from the lesser end edge.
pub fn path_order(complex: &OpenComplex) -> Result<Vec<Simplex>, ZigzagError> {
    if let Some(c) = complex.cells().iter().find(|c| c.dimension() > 1) {
        return Err(ZigzagError::WrongDimension(c.name()));
    }
    let edges: Vec<&Simplex> = complex.cells().iter().filter(|c| c.dimension() == 1).collect();
    let vertices: Vec<&Simplex> = complex.cells().iter().filter(|c| c.dimension() == 0).collect();
    if edges.is_empty() {
        return Err(ZigzagError::NotAPath("no edges".into()));
    }
    for v in &vertices {
        if complex.star(v).len() != 3 {
            // the star of an interior vertex is itself plus two edges
            return Err(ZigzagError::NotAPath(format!(
                "vertex {} does not join exactly two edges",
                v.name()
            )));
        }
    }
    let surviving_vertices = |e: &Simplex| -> Vec<Simplex> {
        e.facets()
            .into_iter()
            .filter(|f| complex.is_cell(f))
            .collect()
    };
    if edges.len() == 1 && vertices.is_empty() {
        if surviving_vertices(edges[0]).is_empty() {
            return Ok(vec![edges[0].clone()]);
        }
        return Err(ZigzagError::NotAPath(
            "single edge with a surviving endpoint".into(),
        ));
    }
    let mut ends: Vec<&Simplex> = edges
        .iter()
        .copied()
        .filter(|e| surviving_vertices(e).len() == 1)
        .collect();
    if ends.len() != 2 || edges.iter().any(|e| surviving_vertices(e).is_empty()) {
        return Err(ZigzagError::NotAPath(
            "cells do not form one open path".into(),
        ));
    }
    ends.sort();
    let mut order: Vec<Simplex> = vec![ends[0].clone()];
    let mut seen: BTreeSet<Simplex> = order.iter().cloned().collect();
    let mut current_vertex = surviving_vertices(ends[0]).pop();
    while let Some(v) = current_vertex.take() {
        if !seen.insert(v.clone()) {
            return Err(ZigzagError::NotAPath("path revisits a vertex".into()));
        }
        let next_edge = complex
            .star(&v)
            .into_iter()
            .find(|c| c.dimension() == 1 && !seen.contains(c));
        let Some(e) = next_edge else {
            return Err(ZigzagError::NotAPath("path breaks at a vertex".into()));
        };
        order.push(v);
        seen.insert(e.clone());
        order.push(e.clone());
        current_vertex = surviving_vertices(&e).into_iter().find(|w| !seen.contains(w));
    }
    if order.len() != complex.cells().len() {
        return Err(ZigzagError::NotAPath("cells are disconnected".into()));
    }
    Ok(order)
}

/// Reads a cosheaf over an open-path base off as a zigzag module, together
/// with the path order used.
pub fn zigzag_extract<F: Field>(
    cosheaf: &Cosheaf<VectOmega<F>>,
) -> Result<(ZigzagModule<F>, Vec<Simplex>), ZigzagError> {
    let order = path_order(cosheaf.base().complex())?;
    let spaces: Vec<usize> = order.iter().map(|c| *cosheaf.value_of(c)).collect();
    let maps = (0..order.len() - 1)
        .map(|i| {
            // Maps point from the edge into the vertex, matching the stored
            // incidence direction.
            let (edge, vertex) = if i % 2 == 0 {
                (&order[i], &order[i + 1])
            } else {
                (&order[i + 1], &order[i])
            };
            cosheaf.map_of(edge, vertex).clone()
        })
        .collect();
    Ok((ZigzagModule::new(spaces, maps), order))
}

/// Endpoint parities decide the topological kind; the cells of the window
/// describe the underlying interval.
pub fn interval_topology(
    interval: &Interval,
    base: &StratifiedComplex,
) -> Result<(IntervalKind, Vec<Simplex>), ZigzagError> {
    let order = path_order(base.complex())?;
    if interval.hi >= order.len() {
        return Err(ZigzagError::IndexOutOfRange {
            index: interval.hi,
            len: order.len(),
        });
    }
    let odd = |p: usize| p % 2 == 1;
    let kind = match (odd(interval.lo), odd(interval.hi)) {
        (true, true) => IntervalKind::Closed,
        (false, false) => IntervalKind::Open,
        (false, true) => IntervalKind::LeftOpen,
        (true, false) => IntervalKind::RightOpen,
    };
    Ok((kind, order[interval.lo..=interval.hi].to_vec()))
}
