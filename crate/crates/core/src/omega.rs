//! Value categories for cosheaf data: finite sets and finite-dimensional
//! vector spaces over an exact scalar field.
//!
//! The [`Omega`] trait packages exactly the categorical operations the engine
//! needs: identities, composition, inversion, finite colimits of poset
//! diagrams, maps induced between colimits by diagram inclusions, and
//! universal maps out of a colimit. Set colimits run on union-find; vector
//! space colimits are cokernel presentations computed by exact elimination.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;

use crate::field::Field;
use crate::linalg::Matrix;

/// A finite diagram: labelled nodes carrying values, and arrows between them.
/// Node labels are unique; they seed canonical element names in set colimits.
pub struct Diagram<O: Omega> {
    pub nodes: Vec<(String, O::Value)>,
    /// `(from, to, map)` with `map : value(from) -> value(to)`.
    pub arrows: Vec<(usize, usize, O::Map)>,
}

/// Operations of the value category.
pub trait Omega: Sized {
    type Value: Clone + PartialEq + Debug;
    type Map: Clone + PartialEq + Debug;
    /// A computed colimit: the value plus enough presentation data to produce
    /// cocone legs and induced maps.
    type Colim;

    fn identity(v: &Self::Value) -> Self::Map;
    /// `later` after `first`.
    fn compose(later: &Self::Map, first: &Self::Map) -> Self::Map;
    fn map_fits(m: &Self::Map, src: &Self::Value, tgt: &Self::Value) -> Result<(), String>;
    fn invert(m: &Self::Map, src: &Self::Value, tgt: &Self::Value) -> Option<Self::Map>;
    /// Cardinality or dimension; equality of sizes is isomorphy here.
    fn size(v: &Self::Value) -> usize;
    fn describe(v: &Self::Value) -> String;
    /// Hook for the empty-set acceptance policy; vector spaces never trip it.
    fn is_empty_set(_v: &Self::Value) -> bool {
        false
    }

    fn colimit(d: &Diagram<Self>) -> Self::Colim;
    fn colim_value(c: &Self::Colim) -> &Self::Value;
    fn cocone(c: &Self::Colim, node: usize) -> Self::Map;
    /// Map between colimits induced by an inclusion of diagrams. `node_map[i]`
    /// is the index in `b`'s diagram of node `i` of `a`'s diagram.
    fn induced(a: &Self::Colim, b: &Self::Colim, node_map: &[usize]) -> Self::Map;
    /// The universal map out of a colimit determined by a compatible cocone;
    /// errors with a witness when the legs are not compatible.
    fn universal(
        c: &Self::Colim,
        legs: &[Self::Map],
        target: &Self::Value,
    ) -> Result<Self::Map, String>;
    /// `None` when `m` is an isomorphism, otherwise a readable witness.
    fn iso_witness(m: &Self::Map, src: &Self::Value, tgt: &Self::Value) -> Option<String>;
}

// ---------------------------------------------------------------------------
// Finite sets
// ---------------------------------------------------------------------------

/// A finite set given by its sorted list of distinct element names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetValue(Vec<String>);

impl SetValue {
    /// Sorts and rejects duplicates; returns the offending name on failure.
    pub fn new(mut elements: Vec<String>) -> Result<Self, String> {
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(w[0].clone());
        }
        Ok(SetValue(elements))
    }

    pub fn singleton(name: &str) -> Self {
        SetValue(vec![name.to_string()])
    }

    pub fn elements(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &str) -> bool {
        self.0.binary_search_by(|x| x.as_str().cmp(e)).is_ok()
    }

    pub fn index_of(&self, e: &str) -> Option<usize> {
        self.0.binary_search_by(|x| x.as_str().cmp(e)).ok()
    }
}

/// A total map of finite sets, keyed by source element name.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetMap(BTreeMap<String, String>);

impl SetMap {
    pub fn new(entries: BTreeMap<String, String>) -> Self {
        SetMap(entries)
    }

    pub fn apply(&self, e: &str) -> Option<&str> {
        self.0.get(e).map(String::as_str)
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.0
    }
}

/// The category of finite sets.
#[derive(Debug)]
pub struct SetOmega;

/// Colimit of a set diagram: classes of the equivalence generated by the
/// arrows, named after their least `(node label, element)` member.
pub struct SetColim {
    value: SetValue,
    /// Per node: element name -> class name.
    node_class: Vec<BTreeMap<String, String>>,
    /// Class name -> the (node, element) pair that named it.
    reps: BTreeMap<String, (usize, String)>,
}

impl Omega for SetOmega {
    type Value = SetValue;
    type Map = SetMap;
    type Colim = SetColim;

    fn identity(v: &Self::Value) -> Self::Map {
        SetMap(v.elements().iter().map(|e| (e.clone(), e.clone())).collect())
    }

    fn compose(later: &Self::Map, first: &Self::Map) -> Self::Map {
        SetMap(
            first
                .0
                .iter()
                .map(|(k, mid)| {
                    let v = later
                        .apply(mid)
                        .unwrap_or_else(|| panic!("composition undefined at {mid}"));
                    (k.clone(), v.to_string())
                })
                .collect(),
        )
    }

    fn map_fits(m: &Self::Map, src: &Self::Value, tgt: &Self::Value) -> Result<(), String> {
        for e in src.elements() {
            match m.apply(e) {
                None => return Err(format!("no image for element {e}")),
                Some(img) if !tgt.contains(img) => {
                    return Err(format!("element {e} maps to {img} outside the target"))
                }
                _ => {}
            }
        }
        if let Some(extra) = m.0.keys().find(|k| !src.contains(k)) {
            return Err(format!("map defined on {extra} outside the source"));
        }
        Ok(())
    }

    fn invert(m: &Self::Map, src: &Self::Value, tgt: &Self::Value) -> Option<Self::Map> {
        if src.len() != tgt.len() {
            return None;
        }
        let mut inv = BTreeMap::new();
        for e in src.elements() {
            let img = m.apply(e)?;
            if inv.insert(img.to_string(), e.clone()).is_some() {
                return None;
            }
        }
        if inv.len() != tgt.len() {
            return None;
        }
        Some(SetMap(inv))
    }

    fn size(v: &Self::Value) -> usize {
        v.len()
    }

    fn describe(v: &Self::Value) -> String {
        format!("{} element(s) [{}]", v.len(), v.elements().join(", "))
    }

    fn is_empty_set(v: &Self::Value) -> bool {
        v.is_empty()
    }

    fn colimit(d: &Diagram<Self>) -> SetColim {
        let mut owners: Vec<(usize, String)> = Vec::new();
        let mut index: BTreeMap<(usize, String), usize> = BTreeMap::new();
        for (i, (_, v)) in d.nodes.iter().enumerate() {
            for e in v.elements() {
                index.insert((i, e.clone()), owners.len());
                owners.push((i, e.clone()));
            }
        }
        let mut parent: Vec<usize> = (0..owners.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (from, to, m) in &d.arrows {
            for e in d.nodes[*from].1.elements() {
                let img = m.apply(e).expect("arrow map is total");
                let a = index[&(*from, e.clone())];
                let b = index[&(*to, img.to_string())];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        // Least (label, element) pair names each class.
        let mut least: BTreeMap<usize, usize> = BTreeMap::new();
        for g in 0..owners.len() {
            let root = find(&mut parent, g);
            let better = |cand: usize, cur: usize| {
                let (ci, ce) = &owners[cand];
                let (bi, be) = &owners[cur];
                (&d.nodes[*ci].0, ce) < (&d.nodes[*bi].0, be)
            };
            least
                .entry(root)
                .and_modify(|cur| {
                    if better(g, *cur) {
                        *cur = g;
                    }
                })
                .or_insert(g);
        }
        let class_name = |g: usize| -> String {
            let (i, e) = &owners[g];
            format!("{}:{}", d.nodes[*i].0, e)
        };
        let mut node_class: Vec<BTreeMap<String, String>> =
            vec![BTreeMap::new(); d.nodes.len()];
        let mut reps: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for g in 0..owners.len() {
            let root = find(&mut parent, g);
            let name = class_name(least[&root]);
            let (i, e) = &owners[g];
            node_class[*i].insert(e.clone(), name.clone());
            let (ri, re) = &owners[least[&root]];
            reps.entry(name).or_insert((*ri, re.clone()));
        }
        let value = SetValue::new(reps.keys().cloned().collect()).expect("class names distinct");
        SetColim {
            value,
            node_class,
            reps,
        }
    }

    fn colim_value(c: &SetColim) -> &SetValue {
        &c.value
    }

    fn cocone(c: &SetColim, node: usize) -> SetMap {
        SetMap(c.node_class[node].clone())
    }

    fn induced(a: &SetColim, b: &SetColim, node_map: &[usize]) -> SetMap {
        SetMap(
            a.reps
                .iter()
                .map(|(class, (node, elem))| {
                    let target_class = b.node_class[node_map[*node]][elem].clone();
                    (class.clone(), target_class)
                })
                .collect(),
        )
    }

    fn universal(c: &SetColim, legs: &[SetMap], _target: &SetValue) -> Result<SetMap, String> {
        let mut out: BTreeMap<String, String> = BTreeMap::new();
        for (node, classes) in c.node_class.iter().enumerate() {
            for (elem, class) in classes {
                let img = legs[node]
                    .apply(elem)
                    .ok_or_else(|| format!("leg at node {node} undefined on {elem}"))?;
                if let Some(prev) = out.get(class) {
                    if prev != img {
                        return Err(format!(
                            "legs disagree on class {class}: {prev} vs {img}"
                        ));
                    }
                } else {
                    out.insert(class.clone(), img.to_string());
                }
            }
        }
        Ok(SetMap(out))
    }

    fn iso_witness(m: &SetMap, src: &SetValue, tgt: &SetValue) -> Option<String> {
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        for e in src.elements() {
            let img = match m.apply(e) {
                Some(i) => i,
                None => return Some(format!("no image for {e}")),
            };
            if let Some(prev) = seen.insert(img, e) {
                return Some(format!("{prev} and {e} are identified (both map to {img})"));
            }
        }
        if let Some(unhit) = tgt.elements().iter().find(|t| !seen.contains_key(t.as_str())) {
            return Some(format!("{unhit} is not hit"));
        }
        None
    }
}

// ---------------------------------------------------------------------------
// Finite-dimensional vector spaces
// ---------------------------------------------------------------------------

/// Finite-dimensional vector spaces over the exact field `F`. A value is a
/// dimension; a map is a `target x source` matrix.
#[derive(Debug)]
pub struct VectOmega<F: Field>(PhantomData<F>);

/// Cokernel presentation of a vector-space colimit: `proj` is a surjection
/// from the direct sum of all node spaces whose kernel is spanned by the
/// arrow relations.
pub struct VectColim<F: Field> {
    dim: usize,
    proj: Matrix<F>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
}

fn block_offsets(dims: &[usize]) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(dims.len());
    let mut total = 0;
    for d in dims {
        offsets.push(total);
        total += d;
    }
    (offsets, total)
}

impl<F: Field> Omega for VectOmega<F> {
    type Value = usize;
    type Map = Matrix<F>;
    type Colim = VectColim<F>;

    fn identity(v: &usize) -> Matrix<F> {
        Matrix::identity(*v)
    }

    fn compose(later: &Matrix<F>, first: &Matrix<F>) -> Matrix<F> {
        later.mul(first)
    }

    fn map_fits(m: &Matrix<F>, src: &usize, tgt: &usize) -> Result<(), String> {
        if m.rows() == *tgt && m.cols() == *src {
            Ok(())
        } else {
            Err(format!(
                "matrix is {}x{} but the incidence needs {}x{}",
                m.rows(),
                m.cols(),
                tgt,
                src
            ))
        }
    }

    fn invert(m: &Matrix<F>, _src: &usize, _tgt: &usize) -> Option<Matrix<F>> {
        m.inverse()
    }

    fn size(v: &usize) -> usize {
        *v
    }

    fn describe(v: &usize) -> String {
        format!("dimension {v}")
    }

    fn colimit(d: &Diagram<Self>) -> VectColim<F> {
        let dims: Vec<usize> = d.nodes.iter().map(|(_, v)| *v).collect();
        let (offsets, total) = block_offsets(&dims);
        let arrow_width: usize = d.arrows.iter().map(|(f, _, _)| dims[*f]).sum();
        let mut relations: Matrix<F> = Matrix::zeros(total, arrow_width);
        let mut col = 0;
        for (from, to, m) in &d.arrows {
            // Relation per source basis vector: its image minus itself.
            for k in 0..dims[*from] {
                for r in 0..dims[*to] {
                    *relations.at_mut(offsets[*to] + r, col) = m.at(r, k).clone();
                }
                let t = relations.at(offsets[*from] + k, col).clone() - F::one();
                *relations.at_mut(offsets[*from] + k, col) = t;
                col += 1;
            }
        }
        let proj = relations.left_kernel_basis();
        VectColim {
            dim: proj.rows(),
            proj,
            offsets,
            dims,
        }
    }

    fn colim_value(c: &VectColim<F>) -> &usize {
        &c.dim
    }

    fn cocone(c: &VectColim<F>, node: usize) -> Matrix<F> {
        c.proj.columns(c.offsets[node], c.dims[node])
    }

    fn induced(a: &VectColim<F>, b: &VectColim<F>, node_map: &[usize]) -> Matrix<F> {
        // Solve L . proj_a = proj_b . inclusion; the kernel of proj_a consists
        // of relations of the smaller diagram, which hold in the larger one,
        // so the system is consistent.
        let mut rhs: Matrix<F> = Matrix::zeros(b.dim, a.proj.cols());
        for (i, &bi) in node_map.iter().enumerate() {
            rhs.paste(0, a.offsets[i], &b.proj.columns(b.offsets[bi], b.dims[bi]));
        }
        a.proj
            .solve_left(&rhs)
            .expect("induced map exists for diagram inclusions")
    }

    fn universal(
        c: &VectColim<F>,
        legs: &[Matrix<F>],
        target: &usize,
    ) -> Result<Matrix<F>, String> {
        let mut rhs: Matrix<F> = Matrix::zeros(*target, c.proj.cols());
        for (i, leg) in legs.iter().enumerate() {
            rhs.paste(0, c.offsets[i], leg);
        }
        c.proj
            .solve_left(&rhs)
            .ok_or_else(|| "legs are not a cocone: no factorization through the colimit".into())
    }

    fn iso_witness(m: &Matrix<F>, src: &usize, tgt: &usize) -> Option<String> {
        if src != tgt {
            return Some(format!("dimension {src} != {tgt}"));
        }
        if m.is_invertible() {
            return None;
        }
        let k = m.kernel_basis();
        let v: Vec<String> = (0..k.rows()).map(|r| k.at(r, 0).to_string()).collect();
        Some(format!("kernel vector ({})", v.join(", ")))
    }
}

/// Limit of a vector-space diagram: the subspace of compatible tuples in the
/// direct sum. Returns the dimension and the projection cone, one matrix per
/// node.
pub fn vect_limit<F: Field>(d: &Diagram<VectOmega<F>>) -> (usize, Vec<Matrix<F>>) {
    let dims: Vec<usize> = d.nodes.iter().map(|(_, v)| *v).collect();
    let (offsets, total) = block_offsets(&dims);
    let constraint_rows: usize = d.arrows.iter().map(|(_, t, _)| dims[*t]).sum();
    let mut constraints: Matrix<F> = Matrix::zeros(constraint_rows, total);
    let mut row = 0;
    for (from, to, m) in &d.arrows {
        // v_to - m . v_from = 0
        for r in 0..dims[*to] {
            *constraints.at_mut(row + r, offsets[*to] + r) = F::one();
            for k in 0..dims[*from] {
                *constraints.at_mut(row + r, offsets[*from] + k) = -m.at(r, k).clone();
            }
        }
        row += dims[*to];
    }
    let basis = constraints.kernel_basis(); // total x l
    let l = basis.cols();
    let cones = (0..dims.len())
        .map(|i| basis.rows_slice(offsets[i], dims[i]))
        .collect();
    (l, cones)
}

/// The free linearization of a set map: a 0/1 matrix with a single `one` per
/// column, using the sorted element lists as ordered bases.
pub fn linearize_map<F: Field>(
    m: &SetMap,
    src: &SetValue,
    tgt: &SetValue,
    one: &F,
) -> Matrix<F> {
    let mut out: Matrix<F> = Matrix::zeros(tgt.len(), src.len());
    for (c, e) in src.elements().iter().enumerate() {
        let img = m.apply(e).expect("set map is total");
        let r = tgt.index_of(img).expect("image inside target");
        *out.at_mut(r, c) = one.clone();
    }
    out
}

/// Element-name policy for values read from files or built by callers:
/// non-empty, no whitespace, no `:`.
pub fn validate_element_name(name: &str) -> Result<(), String> {
    if name.is_empty() {
        return Err("empty element name".into());
    }
    if name.chars().any(|c| c.is_whitespace() || c == ':') {
        return Err(format!("element name {name:?} contains whitespace or `:`"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn sv(names: &[&str]) -> SetValue {
        SetValue::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn sm(pairs: &[(&str, &str)]) -> SetMap {
        SetMap::new(
            pairs
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
    }

    fn q(n: i64) -> Rat {
        Rat::from(num::BigInt::from(n))
    }

    #[test]
    fn set_colimit_of_a_span() {
        // b <- a -> c with a two-element middle collapsing on the left.
        let d: Diagram<SetOmega> = Diagram {
            nodes: vec![
                ("a".into(), sv(&["x", "y"])),
                ("b".into(), sv(&["u"])),
                ("c".into(), sv(&["v", "w"])),
            ],
            arrows: vec![
                (0, 1, sm(&[("x", "u"), ("y", "u")])),
                (0, 2, sm(&[("x", "v"), ("y", "w")])),
            ],
        };
        let col = SetOmega::colimit(&d);
        // x ~ u ~ y, x ~ v, y ~ w: everything collapses to one class.
        assert_eq!(SetOmega::colim_value(&col).len(), 1);
        assert_eq!(SetOmega::colim_value(&col).elements(), ["a:x"]);
        let leg = SetOmega::cocone(&col, 2);
        assert_eq!(leg.apply("v"), Some("a:x"));
    }

    #[test]
    fn set_colimit_no_arrows_is_disjoint_union() {
        let d: Diagram<SetOmega> = Diagram {
            nodes: vec![("a".into(), sv(&["x"])), ("b".into(), sv(&["x"]))],
            arrows: vec![],
        };
        let col = SetOmega::colimit(&d);
        assert_eq!(SetOmega::colim_value(&col).elements(), ["a:x", "b:x"]);
    }

    #[test]
    fn vect_colimit_coequalizes() {
        // k -> k <- k with identity maps: pushout over nothing, dim 1.
        let d: Diagram<VectOmega<Rat>> = Diagram {
            nodes: vec![("0".into(), 1), ("1".into(), 1), ("2".into(), 1)],
            arrows: vec![
                (0, 1, Matrix::from_rows(vec![vec![q(1)]])),
                (2, 1, Matrix::from_rows(vec![vec![q(1)]])),
            ],
        };
        let col = VectOmega::<Rat>::colimit(&d);
        assert_eq!(*VectOmega::<Rat>::colim_value(&col), 1);
        // Cocone legs commute with the arrows.
        let leg0 = VectOmega::<Rat>::cocone(&col, 0);
        let leg1 = VectOmega::<Rat>::cocone(&col, 1);
        assert_eq!(leg1.mul(&Matrix::from_rows(vec![vec![q(1)]])), leg0);
    }

    #[test]
    fn vect_colimit_through_zero() {
        // k -> 0 <- k: the colimit is zero.
        let d: Diagram<VectOmega<Rat>> = Diagram {
            nodes: vec![("0".into(), 1), ("1".into(), 0), ("2".into(), 1)],
            arrows: vec![
                (0, 1, Matrix::zeros(0, 1)),
                (2, 1, Matrix::zeros(0, 1)),
            ],
        };
        let col = VectOmega::<Rat>::colimit(&d);
        assert_eq!(*VectOmega::<Rat>::colim_value(&col), 0);
        let (l, _) = vect_limit(&d);
        assert_eq!(l, 2);
    }

    #[test]
    fn vect_limit_of_line_diagram() {
        // dims (1,1,2), maps [1] and [1 1] into the middle node.
        let d: Diagram<VectOmega<Rat>> = Diagram {
            nodes: vec![("0".into(), 1), ("1".into(), 1), ("2".into(), 2)],
            arrows: vec![
                (0, 1, Matrix::from_rows(vec![vec![q(1)]])),
                (2, 1, Matrix::from_rows(vec![vec![q(1), q(1)]])),
            ],
        };
        let (l, cones) = vect_limit(&d);
        assert_eq!(l, 2);
        let col = VectOmega::<Rat>::colimit(&d);
        assert_eq!(*VectOmega::<Rat>::colim_value(&col), 1);
        // Cone legs satisfy the arrow constraints.
        let m01 = Matrix::from_rows(vec![vec![q(1)]]);
        assert_eq!(m01.mul(&cones[0]), cones[1]);
    }

    #[test]
    fn linearization_matches_cardinality() {
        let src = sv(&["x", "y"]);
        let tgt = sv(&["u"]);
        let m = linearize_map(&sm(&[("x", "u"), ("y", "u")]), &src, &tgt, &q(1));
        assert_eq!(m.rows(), 1);
        assert_eq!(m.cols(), 2);
        assert_eq!(*m.at(0, 0), q(1));
    }

    #[test]
    fn set_iso_witnesses() {
        let a = sv(&["x", "y"]);
        let b = sv(&["u", "v"]);
        assert!(SetOmega::iso_witness(&sm(&[("x", "u"), ("y", "v")]), &a, &b).is_none());
        assert!(SetOmega::iso_witness(&sm(&[("x", "u"), ("y", "u")]), &a, &b).is_some());
        let inv = SetOmega::invert(&sm(&[("x", "v"), ("y", "u")]), &a, &b).unwrap();
        assert_eq!(inv.apply("u"), Some("y"));
    }
}
