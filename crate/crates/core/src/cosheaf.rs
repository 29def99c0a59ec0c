//! Cosheaf data on the cells of a stratified complex and its calculus:
//! evaluation on open sets via colimits, costalks, transport along entrance
//! words, and the gluing check against basic covers.
//!
//! Data lives on cells and on codimension-one incidences only, with the map of
//! an incidence `sigma < tau` pointing `F(tau) -> F(sigma)` (the entrance
//! direction). Longer face relations are reached by composing facet steps; the
//! diamond condition validated at build time makes every such composite
//! independent of the chosen chain. Incidences inside a single stratum must
//! carry isomorphisms; those are the arrows that transport may run backwards.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{ComplexError, Simplex, StratifiedComplex};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::omega::{
    linearize_map, validate_element_name, vect_limit, Diagram, Omega, SetOmega, SetValue,
    VectOmega,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosheafError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("missing value on cell {0}")]
    MissingValue(String),
    #[error("missing map for incidence {tau}->{sigma}")]
    MissingMap { tau: String, sigma: String },
    #[error("map given for {tau}->{sigma}, which is not a codimension-one incidence")]
    UnknownIncidence { tau: String, sigma: String },
    #[error("bad value on cell {cell}: {detail}")]
    BadValue { cell: String, detail: String },
    #[error("empty value on cell {0} (empty values are disabled here)")]
    EmptyValue(String),
    #[error("map {tau}->{sigma} does not fit its endpoints: {detail}")]
    MapShapeMismatch {
        tau: String,
        sigma: String,
        detail: String,
    },
    #[error("diamond failure at {tau} over {sigma}: routes through {rho_a} and {rho_b} disagree")]
    DiamondFailure {
        tau: String,
        rho_a: String,
        rho_b: String,
        sigma: String,
    },
    #[error("invertibility failure at {tau}->{sigma}: cells share stratum {stratum} but the map is not invertible")]
    InvertibilityFailure {
        tau: String,
        sigma: String,
        stratum: String,
    },
    #[error("open set is empty")]
    EmptyOpen,
    #[error("entrance word does not compose: {0}")]
    NonComposableWord(String),
    #[error("illegal inverse step {sigma}->{tau}: the cells lie in different strata")]
    IllegalInverse { tau: String, sigma: String },
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("operation needs {expected} coefficients")]
    WrongCoefficients { expected: String },
}

impl CosheafError {
    pub fn name(&self) -> &'static str {
        match self {
            CosheafError::Complex(e) => e.name(),
            CosheafError::MissingValue(_) => "MissingValue",
            CosheafError::MissingMap { .. } => "MissingMap",
            CosheafError::UnknownIncidence { .. } => "UnknownIncidence",
            CosheafError::BadValue { .. } => "BadValue",
            CosheafError::EmptyValue(_) => "EmptyValue",
            CosheafError::MapShapeMismatch { .. } => "MapShapeMismatch",
            CosheafError::DiamondFailure { .. } => "DiamondFailure",
            CosheafError::InvertibilityFailure { .. } => "InvertibilityFailure",
            CosheafError::EmptyOpen => "EmptyOpen",
            CosheafError::NonComposableWord(_) => "NonComposableWord",
            CosheafError::IllegalInverse { .. } => "IllegalInverse",
            CosheafError::NotACover(_) => "NotACover",
            CosheafError::WrongCoefficients { .. } => "WrongCoefficients",
        }
    }
}

/// Build-time policy knobs.
#[derive(Clone, Copy, Debug)]
pub struct CosheafOptions {
    /// Accept empty set values (fibers may then be empty over some cells).
    pub allow_empty_set_values: bool,
}

impl Default for CosheafOptions {
    fn default() -> Self {
        CosheafOptions {
            allow_empty_set_values: true,
        }
    }
}

/// Sizes reported by validation: strict face relations, two-step descents
/// checked for commutativity, and in-stratum incidences checked invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationStats {
    pub incidences: usize,
    pub diamonds: usize,
    pub invertibility_checks: usize,
}

/// An upward-closed set of cells, generated by the stars of some cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSet {
    cells: BTreeSet<Simplex>,
}

impl OpenSet {
    pub fn cells(&self) -> &BTreeSet<Simplex> {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.cells.contains(s)
    }

    /// The whole complex as an open set.
    pub fn whole(strat: &StratifiedComplex) -> OpenSet {
        OpenSet {
            cells: strat.complex().cells().clone(),
        }
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            cells: self.cells.union(&other.cells).cloned().collect(),
        }
    }
}

/// Union of the stars of the generators.
pub fn open_from_generators(
    strat: &StratifiedComplex,
    generators: &[Simplex],
) -> Result<OpenSet, CosheafError> {
    let mut cells = BTreeSet::new();
    for g in generators {
        strat.complex().require_cell(g)?;
        cells.extend(strat.complex().star(g));
    }
    Ok(OpenSet { cells })
}

/// One facet step of an entrance word. `Entrance` walks `upper -> lower`
/// (into the face); `Inverse` walks `lower -> upper` and is legal only inside
/// a stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepDirection {
    Entrance,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordStep {
    pub upper: Simplex,
    pub lower: Simplex,
    pub direction: StepDirection,
}

impl WordStep {
    pub fn entrance(upper: Simplex, lower: Simplex) -> Self {
        WordStep {
            upper,
            lower,
            direction: StepDirection::Entrance,
        }
    }

    pub fn inverse(lower: Simplex, upper: Simplex) -> Self {
        WordStep {
            upper,
            lower,
            direction: StepDirection::Inverse,
        }
    }

    pub fn start(&self) -> &Simplex {
        match self.direction {
            StepDirection::Entrance => &self.upper,
            StepDirection::Inverse => &self.lower,
        }
    }

    pub fn end(&self) -> &Simplex {
        match self.direction {
            StepDirection::Entrance => &self.lower,
            StepDirection::Inverse => &self.upper,
        }
    }
}

/// A composable sequence of facet steps with a fixed start cell; the empty
/// word is the identity at `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntranceWord {
    pub start: Simplex,
    pub steps: Vec<WordStep>,
}

impl EntranceWord {
    pub fn identity(at: Simplex) -> Self {
        EntranceWord {
            start: at,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> &Simplex {
        self.steps.last().map_or(&self.start, WordStep::end)
    }
}

/// The cocone legs of a colimit, one map per cell of the open set.
pub type CoconeLegs<O> = BTreeMap<Simplex, <O as Omega>::Map>;

type CompositeRoutes<O> = BTreeMap<(Simplex, Simplex), Vec<(Simplex, <O as Omega>::Map)>>;

/// Cosheaf data over a stratified complex with values in `O`.
#[derive(Clone, Debug)]
pub struct Cosheaf<O: Omega> {
    base: StratifiedComplex,
    values: BTreeMap<Simplex, O::Value>,
    maps: BTreeMap<(Simplex, Simplex), O::Map>,
}

/// Validates totality, shapes, diamond commutativity, and in-stratum
/// invertibility, and returns the cosheaf.
pub fn build_cosheaf<O: Omega>(
    base: StratifiedComplex,
    values: BTreeMap<Simplex, O::Value>,
    maps: BTreeMap<(Simplex, Simplex), O::Map>,
    options: CosheafOptions,
) -> Result<Cosheaf<O>, CosheafError> {
    for cell in values.keys() {
        base.complex().require_cell(cell)?;
    }
    for cell in base.complex().cells() {
        let v = values
            .get(cell)
            .ok_or_else(|| CosheafError::MissingValue(cell.name()))?;
        if !options.allow_empty_set_values && O::is_empty_set(v) {
            return Err(CosheafError::EmptyValue(cell.name()));
        }
    }

    let incidences = base.complex().incidences();
    let incidence_set: BTreeSet<(Simplex, Simplex)> = incidences.iter().cloned().collect();
    for key in maps.keys() {
        if !incidence_set.contains(key) {
            return Err(CosheafError::UnknownIncidence {
                tau: key.0.name(),
                sigma: key.1.name(),
            });
        }
    }
    for (tau, sigma) in &incidences {
        let m = maps
            .get(&(tau.clone(), sigma.clone()))
            .ok_or_else(|| CosheafError::MissingMap {
                tau: tau.name(),
                sigma: sigma.name(),
            })?;
        O::map_fits(m, &values[tau], &values[sigma]).map_err(|detail| {
            CosheafError::MapShapeMismatch {
                tau: tau.name(),
                sigma: sigma.name(),
                detail,
            }
        })?;
    }

    let cosheaf = Cosheaf { base, values, maps };
    cosheaf.check_diamonds()?;
    cosheaf.check_invertibility()?;
    Ok(cosheaf)
}

impl<O: Omega> Cosheaf<O> {
    pub fn base(&self) -> &StratifiedComplex {
        &self.base
    }

    pub fn value_of(&self, cell: &Simplex) -> &O::Value {
        &self.values[cell]
    }

    pub fn values(&self) -> &BTreeMap<Simplex, O::Value> {
        &self.values
    }

    pub fn map_of(&self, tau: &Simplex, sigma: &Simplex) -> &O::Map {
        &self.maps[&(tau.clone(), sigma.clone())]
    }

    pub fn maps(&self) -> &BTreeMap<(Simplex, Simplex), O::Map> {
        &self.maps
    }

    fn check_diamonds(&self) -> Result<(), CosheafError> {
        // Group the two-step descents by their endpoints and compare all
        // composite routes pairwise.
        let mut routes: CompositeRoutes<O> = BTreeMap::new();
        for (tau, rho, sigma) in self.base.complex().two_chains() {
            let composite = O::compose(self.map_of(&rho, &sigma), self.map_of(&tau, &rho));
            routes
                .entry((tau, sigma))
                .or_default()
                .push((rho, composite));
        }
        for ((tau, sigma), rs) in &routes {
            for pair in rs.windows(2) {
                if pair[0].1 != pair[1].1 {
                    return Err(CosheafError::DiamondFailure {
                        tau: tau.name(),
                        rho_a: pair[0].0.name(),
                        rho_b: pair[1].0.name(),
                        sigma: sigma.name(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_invertibility(&self) -> Result<(), CosheafError> {
        for (tau, sigma) in self.base.complex().incidences() {
            if !self.base.same_stratum(&tau, &sigma) {
                continue;
            }
            let m = self.map_of(&tau, &sigma);
            if O::invert(m, &self.values[&tau], &self.values[&sigma]).is_none() {
                return Err(CosheafError::InvertibilityFailure {
                    tau: tau.name(),
                    sigma: sigma.name(),
                    stratum: self.base.stratum_of(&tau).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> ValidationStats {
        let complex = self.base.complex();
        ValidationStats {
            incidences: complex.strict_face_pairs().len(),
            diamonds: complex.two_chains().len(),
            invertibility_checks: complex
                .incidences()
                .iter()
                .filter(|(t, s)| self.base.same_stratum(t, s))
                .count(),
        }
    }

    /// The diagram of an open set: its cells and the incidences between them.
    fn diagram(&self, cells: &BTreeSet<Simplex>) -> (Vec<Simplex>, Diagram<O>) {
        let order: Vec<Simplex> = cells.iter().cloned().collect();
        let index: BTreeMap<&Simplex, usize> =
            order.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let nodes = order
            .iter()
            .map(|s| (s.name(), self.values[s].clone()))
            .collect();
        let mut arrows = Vec::new();
        for (tau, sigma) in self.base.complex().incidences() {
            if let (Some(&f), Some(&t)) = (index.get(&tau), index.get(&sigma)) {
                arrows.push((f, t, self.map_of(&tau, &sigma).clone()));
            }
        }
        (order, Diagram { nodes, arrows })
    }

    /// Colimit presentation over an open set, with the node order used.
    pub fn open_colim(&self, open: &OpenSet) -> Result<(Vec<Simplex>, O::Colim), CosheafError> {
        if open.is_empty() {
            return Err(CosheafError::EmptyOpen);
        }
        let (order, diagram) = self.diagram(open.cells());
        Ok((order, O::colimit(&diagram)))
    }

    /// Colimit value plus the cocone leg for every cell of the open set.
    pub fn colimit(
        &self,
        open: &OpenSet,
    ) -> Result<(O::Value, CoconeLegs<O>), CosheafError> {
        let (order, colim) = self.open_colim(open)?;
        let legs = order
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), O::cocone(&colim, i)))
            .collect();
        Ok((O::colim_value(&colim).clone(), legs))
    }

    /// The cosheaf's value on an open set.
    pub fn evaluate(&self, open: &OpenSet) -> Result<O::Value, CosheafError> {
        Ok(self.colimit(open)?.0)
    }

    /// The costalk at a cell: its value together with the canonical map into
    /// the evaluation of its star (always an isomorphism).
    pub fn costalk(&self, cell: &Simplex) -> Result<(O::Value, O::Map), CosheafError> {
        self.base.complex().require_cell(cell)?;
        let star = open_from_generators(&self.base, std::slice::from_ref(cell))?;
        let (order, colim) = self.open_colim(&star)?;
        let idx = order.iter().position(|s| s == cell).expect("cell in its star");
        Ok((self.values[cell].clone(), O::cocone(&colim, idx)))
    }

    /// Composes the step maps of a word, inverting where flagged.
    pub fn transport(&self, word: &EntranceWord) -> Result<O::Map, CosheafError> {
        self.base.complex().require_cell(&word.start)?;
        let mut at = word.start.clone();
        let mut acc = O::identity(&self.values[&word.start]);
        for step in &word.steps {
            if *step.start() != at {
                return Err(CosheafError::NonComposableWord(format!(
                    "step starts at {} but the word is at {}",
                    step.start().name(),
                    at.name()
                )));
            }
            let key = (step.upper.clone(), step.lower.clone());
            let Some(m) = self.maps.get(&key) else {
                return Err(CosheafError::NonComposableWord(format!(
                    "{}->{} is not a codimension-one incidence",
                    step.upper.name(),
                    step.lower.name()
                )));
            };
            let step_map = match step.direction {
                StepDirection::Entrance => m.clone(),
                StepDirection::Inverse => {
                    if !self.base.same_stratum(&step.upper, &step.lower) {
                        return Err(CosheafError::IllegalInverse {
                            tau: step.upper.name(),
                            sigma: step.lower.name(),
                        });
                    }
                    O::invert(m, &self.values[&step.upper], &self.values[&step.lower])
                        .expect("in-stratum maps are invertible by the build invariant")
                }
            };
            acc = O::compose(&step_map, &acc);
            at = step.end().clone();
        }
        Ok(acc)
    }

    /// The map `evaluate(inner) -> evaluate(outer)` induced by an inclusion of
    /// open sets.
    pub fn induced_map(&self, inner: &OpenSet, outer: &OpenSet) -> Result<O::Map, CosheafError> {
        let (inner_order, inner_colim) = self.open_colim(inner)?;
        let (outer_order, outer_colim) = self.open_colim(outer)?;
        let node_map = embed_order(&inner_order, &outer_order);
        Ok(O::induced(&inner_colim, &outer_colim, &node_map))
    }

    /// Verifies the gluing axiom on `open` against a cover by open stars.
    pub fn check_gluing(
        &self,
        open: &OpenSet,
        cover: &[OpenSet],
    ) -> Result<GluingReport, CosheafError> {
        // Every member must be a star and the members must cover the open.
        let mut generators = Vec::new();
        for member in cover {
            let gen = member
                .cells()
                .iter()
                .find(|g| self.base.complex().star(g) == *member.cells())
                .ok_or_else(|| {
                    CosheafError::NotACover("cover member is not an open star".into())
                })?;
            generators.push(gen.clone());
        }
        let mut union = BTreeSet::new();
        for member in cover {
            union.extend(member.cells().iter().cloned());
        }
        if union != *open.cells() {
            return Err(CosheafError::NotACover(
                "the union of the cover is not the open set".into(),
            ));
        }
        if cover.is_empty() {
            return Err(CosheafError::NotACover("empty cover".into()));
        }

        let (open_order, open_colim) = self.open_colim(open)?;
        let member_data: Vec<(Vec<Simplex>, O::Colim)> = cover
            .iter()
            .map(|m| self.open_colim(m))
            .collect::<Result<_, _>>()?;

        // The diagram of cover members ordered by inclusion.
        let nodes: Vec<(String, O::Value)> = generators
            .iter()
            .zip(&member_data)
            .map(|(g, (_, colim))| (format!("st {}", g.name()), O::colim_value(colim).clone()))
            .collect();
        let mut arrows = Vec::new();
        for (i, a) in cover.iter().enumerate() {
            for (j, b) in cover.iter().enumerate() {
                if i != j && a.cells().is_subset(b.cells()) {
                    let node_map = embed_order(&member_data[i].0, &member_data[j].0);
                    arrows.push((
                        i,
                        j,
                        O::induced(&member_data[i].1, &member_data[j].1, &node_map),
                    ));
                }
            }
        }
        let cover_colim = O::colimit(&Diagram { nodes, arrows });

        // Legs: each member's evaluation includes into the open's evaluation.
        let legs: Vec<O::Map> = member_data
            .iter()
            .map(|(order, colim)| {
                let node_map = embed_order(order, &open_order);
                O::induced(colim, &open_colim, &node_map)
            })
            .collect();
        let open_value = O::colim_value(&open_colim);
        let colim_value = O::colim_value(&cover_colim);
        let (passed, witness) =
            match O::universal(&cover_colim, &legs, open_value) {
                Err(w) => (false, Some(w)),
                Ok(universal) => match O::iso_witness(&universal, colim_value, open_value) {
                    Some(w) => (false, Some(w)),
                    None => (true, None),
                },
            };
        Ok(GluingReport {
            passed,
            cover_size: cover.len(),
            colim_desc: O::describe(colim_value),
            open_desc: O::describe(open_value),
            witness,
        })
    }

    /// Rebuilds cell data from star evaluations: value `evaluate(st sigma)`
    /// per cell, the induced map per incidence, and the canonical comparison
    /// maps from the original values.
    pub fn star_rebuild(&self) -> StarRebuild<O> {
        let cells: Vec<Simplex> = self.base.complex().cells().iter().cloned().collect();
        let star_colims: BTreeMap<Simplex, (Vec<Simplex>, O::Colim)> = cells
            .iter()
            .map(|c| {
                let star = open_from_generators(&self.base, std::slice::from_ref(c))
                    .expect("cells exist");
                (c.clone(), self.open_colim(&star).expect("stars are non-empty"))
            })
            .collect();
        let values = star_colims
            .iter()
            .map(|(c, (_, colim))| (c.clone(), O::colim_value(colim).clone()))
            .collect();
        let canonical = star_colims
            .iter()
            .map(|(c, (order, colim))| {
                let idx = order.iter().position(|s| s == c).expect("cell in its star");
                (c.clone(), O::cocone(colim, idx))
            })
            .collect();
        let maps = self
            .base
            .complex()
            .incidences()
            .into_iter()
            .map(|(tau, sigma)| {
                let (tau_order, tau_colim) = &star_colims[&tau];
                let (sigma_order, sigma_colim) = &star_colims[&sigma];
                let node_map = embed_order(tau_order, sigma_order);
                let induced = O::induced(tau_colim, sigma_colim, &node_map);
                ((tau, sigma), induced)
            })
            .collect();
        StarRebuild {
            values,
            maps,
            canonical,
        }
    }
}

impl<F: Field> Cosheaf<VectOmega<F>> {
    /// Limit over an open set: dimension of the compatible-tuple space and
    /// the cone projection to every cell.
    pub fn limit(
        &self,
        open: &OpenSet,
    ) -> Result<(usize, BTreeMap<Simplex, Matrix<F>>), CosheafError> {
        if open.is_empty() {
            return Err(CosheafError::EmptyOpen);
        }
        let (order, diagram) = self.diagram(open.cells());
        let (dim, cones) = vect_limit(&diagram);
        Ok((
            dim,
            order.into_iter().zip(cones).collect(),
        ))
    }
}

/// `evaluate(st sigma)` data for every cell, as rebuilt from open sets alone.
pub struct StarRebuild<O: Omega> {
    pub values: BTreeMap<Simplex, O::Value>,
    pub maps: BTreeMap<(Simplex, Simplex), O::Map>,
    /// Per cell: the cocone map `value_of(sigma) -> evaluate(st sigma)`.
    pub canonical: BTreeMap<Simplex, O::Map>,
}

/// Outcome of a gluing check.
#[derive(Clone, Debug)]
pub struct GluingReport {
    pub passed: bool,
    pub cover_size: usize,
    pub colim_desc: String,
    pub open_desc: String,
    pub witness: Option<String>,
}

fn embed_order(inner: &[Simplex], outer: &[Simplex]) -> Vec<usize> {
    inner
        .iter()
        .map(|s| {
            outer
                .binary_search(s)
                .expect("inner diagram is part of the outer one")
        })
        .collect()
}

/// A cosheaf with the same singleton value on every cell and constant maps.
pub fn constant_set_cosheaf(
    base: StratifiedComplex,
    element: &str,
) -> Result<Cosheaf<SetOmega>, CosheafError> {
    let values: BTreeMap<Simplex, SetValue> = base
        .complex()
        .cells()
        .iter()
        .map(|c| (c.clone(), SetValue::singleton(element)))
        .collect();
    let maps = base
        .complex()
        .incidences()
        .into_iter()
        .map(|key| {
            let m = SetOmega::identity(&SetValue::singleton(element));
            (key, m)
        })
        .collect();
    build_cosheaf(base, values, maps, CosheafOptions::default())
}

/// Checks the element-name policy on every value of a set cosheaf candidate.
pub fn validate_set_values(
    values: &BTreeMap<Simplex, SetValue>,
) -> Result<(), CosheafError> {
    for (cell, v) in values {
        for e in v.elements() {
            validate_element_name(e).map_err(|detail| CosheafError::BadValue {
                cell: cell.name(),
                detail,
            })?;
        }
    }
    Ok(())
}

/// Free linearization: cardinalities become dimensions, set maps become 0/1
/// matrices over the sorted element bases. `one` pins the scalar field.
pub fn linearize<F: Field>(
    cosheaf: &Cosheaf<SetOmega>,
    one: F,
) -> Cosheaf<VectOmega<F>> {
    let values: BTreeMap<Simplex, usize> = cosheaf
        .values
        .iter()
        .map(|(c, v)| (c.clone(), v.len()))
        .collect();
    let maps = cosheaf
        .maps
        .iter()
        .map(|((tau, sigma), m)| {
            let mat = linearize_map(m, &cosheaf.values[tau], &cosheaf.values[sigma], &one);
            ((tau.clone(), sigma.clone()), mat)
        })
        .collect();
    build_cosheaf(cosheaf.base.clone(), values, maps, CosheafOptions::default())
        .expect("linearization preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, build_stratification};
    use crate::field::Rat;
    use crate::fixtures;
    use crate::omega::SetMap;

    fn sx(name: &str) -> Simplex {
        Simplex::parse(name).unwrap()
    }

    fn q(n: i64) -> Rat {
        Rat::from(num::BigInt::from(n))
    }

    #[test]
    fn constant_cosheaf_evaluates_to_singletons() {
        let c = fixtures::line1_constant_set();
        let whole = OpenSet::whole(c.base());
        let v = c.evaluate(&whole).unwrap();
        assert_eq!(v.len(), 1);
        let st_pq = open_from_generators(c.base(), &[sx("p|q")]).unwrap();
        assert_eq!(c.evaluate(&st_pq).unwrap().len(), 1);
    }

    #[test]
    fn open_from_generators_matches_fixture_expectations() {
        let strat = fixtures::line1_strat();
        let o = open_from_generators(&strat, &[sx("q")]).unwrap();
        assert_eq!(
            o.cells().iter().map(Simplex::name).collect::<Vec<_>>(),
            vec!["p|q", "q", "q|r"]
        );
        let o = open_from_generators(&strat, &[sx("p|q"), sx("q|r")]).unwrap();
        assert_eq!(
            o.cells().iter().map(Simplex::name).collect::<Vec<_>>(),
            vec!["p|q", "q|r"]
        );
        assert!(open_from_generators(&strat, &[sx("p")]).is_err());
    }

    #[test]
    fn line_vect_cosheaf_colimit_and_limit() {
        let c = fixtures::line1_vect();
        let whole = OpenSet::whole(c.base());
        // One relation identifies the two generators through the vertex.
        assert_eq!(c.evaluate(&whole).unwrap(), 1);
        let (l, _) = c.limit(&whole).unwrap();
        assert_eq!(l, 2);
    }

    #[test]
    fn k0k_colimit_is_zero_and_limit_is_two() {
        let c = fixtures::line1_k0k();
        let whole = OpenSet::whole(c.base());
        assert_eq!(c.evaluate(&whole).unwrap(), 0);
        assert_eq!(c.limit(&whole).unwrap().0, 2);
    }

    #[test]
    fn z2_cosheaf_global_sections() {
        let c = fixtures::zn_cosheaf(2);
        let whole = OpenSet::whole(c.base());
        // The double cover is connected.
        assert_eq!(c.evaluate(&whole).unwrap().len(), 1);
        let st_oa = open_from_generators(c.base(), &[sx("a|o")]).unwrap();
        assert_eq!(c.evaluate(&st_oa).unwrap().len(), 2);
    }

    #[test]
    fn z2_stats_match_the_disk() {
        let c = fixtures::zn_cosheaf(2);
        let stats = c.stats();
        assert_eq!(stats.incidences, 12);
        assert_eq!(stats.diamonds, 6);
        assert_eq!(stats.invertibility_checks, 6);
    }

    #[test]
    fn costalk_is_iso_onto_star_evaluation() {
        let c = fixtures::zn_cosheaf(2);
        for cell in c.base().complex().cells().clone() {
            let (value, canonical) = c.costalk(&cell).unwrap();
            let star = open_from_generators(c.base(), std::slice::from_ref(&cell)).unwrap();
            let ev = c.evaluate(&star).unwrap();
            assert!(
                SetOmega::iso_witness(&canonical, &value, &ev).is_none(),
                "costalk at {cell} must be an isomorphism"
            );
        }
    }

    #[test]
    fn z2_loop_transport_is_the_swap() {
        let c = fixtures::zn_cosheaf(2);
        let word = fixtures::zn_loop_word();
        let t = c.transport(&word).unwrap();
        assert_eq!(t.apply("0"), Some("1"));
        assert_eq!(t.apply("1"), Some("0"));

        // Loop followed by entering the origin equals entering directly.
        let mut enter = word.clone();
        enter
            .steps
            .push(WordStep::entrance(sx("a|o"), sx("o")));
        let via_loop = c.transport(&enter).unwrap();
        let direct = c
            .transport(&EntranceWord {
                start: sx("a|o"),
                steps: vec![WordStep::entrance(sx("a|o"), sx("o"))],
            })
            .unwrap();
        assert_eq!(via_loop, direct);
    }

    #[test]
    fn empty_word_is_identity() {
        let c = fixtures::line1_constant_set();
        let t = c.transport(&EntranceWord::identity(sx("q"))).unwrap();
        assert_eq!(t, SetOmega::identity(c.value_of(&sx("q"))));
    }

    #[test]
    fn illegal_inverse_across_strata() {
        let c = fixtures::zn_cosheaf(2);
        let word = EntranceWord {
            start: sx("o"),
            steps: vec![WordStep::inverse(sx("o"), sx("a|o"))],
        };
        assert!(matches!(
            c.transport(&word),
            Err(CosheafError::IllegalInverse { .. })
        ));
    }

    #[test]
    fn gluing_passes_on_fixtures() {
        let set = fixtures::line1_constant_set();
        let whole = OpenSet::whole(set.base());
        let cover: Vec<OpenSet> = set
            .base()
            .star_cover()
            .into_iter()
            .map(|cs| OpenSet { cells: cs.cells })
            .collect();
        let report = set.check_gluing(&whole, &cover).unwrap();
        assert!(report.passed, "witness: {:?}", report.witness);

        let z2 = fixtures::zn_cosheaf(2);
        let whole = OpenSet::whole(z2.base());
        let cover: Vec<OpenSet> = z2
            .base()
            .star_cover()
            .into_iter()
            .map(|cs| OpenSet { cells: cs.cells })
            .collect();
        let report = z2.check_gluing(&whole, &cover).unwrap();
        assert!(report.passed, "witness: {:?}", report.witness);
    }

    #[test]
    fn gluing_rejects_non_covers() {
        let c = fixtures::line1_constant_set();
        let whole = OpenSet::whole(c.base());
        let partial = vec![open_from_generators(c.base(), &[sx("p|q")]).unwrap()];
        assert!(matches!(
            c.check_gluing(&whole, &partial),
            Err(CosheafError::NotACover(_))
        ));
        let not_star = vec![open_from_generators(c.base(), &[sx("p|q"), sx("q|r")]).unwrap()];
        assert!(matches!(
            c.check_gluing(&whole, &not_star),
            Err(CosheafError::NotACover(_))
        ));
    }

    #[test]
    fn build_rejects_broken_data() {
        let strat = fixtures::line1_strat();
        // Missing value.
        let err = build_cosheaf::<SetOmega>(
            strat.clone(),
            BTreeMap::new(),
            BTreeMap::new(),
            CosheafOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CosheafError::MissingValue(_)));

        // Missing map.
        let values: BTreeMap<Simplex, SetValue> = strat
            .complex()
            .cells()
            .iter()
            .map(|c| (c.clone(), SetValue::singleton("x")))
            .collect();
        let err = build_cosheaf::<SetOmega>(
            strat.clone(),
            values.clone(),
            BTreeMap::new(),
            CosheafOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CosheafError::MissingMap { .. }));

        // Map on a non-incidence.
        let mut maps: BTreeMap<(Simplex, Simplex), SetMap> = BTreeMap::new();
        maps.insert(
            (sx("p|q"), sx("q|r")),
            SetOmega::identity(&SetValue::singleton("x")),
        );
        let err =
            build_cosheaf::<SetOmega>(strat, values, maps, CosheafOptions::default()).unwrap_err();
        assert!(matches!(err, CosheafError::UnknownIncidence { .. }));
    }

    #[test]
    fn invertibility_failure_detected() {
        // Two cells in one stratum with a non-bijective map between them.
        let complex = build_complex(&[vec!["a".into(), "b".into()]], &[vec!["a".into()]]).unwrap();
        let assignment: BTreeMap<Simplex, String> = [
            (sx("b"), "S".to_string()),
            (sx("a|b"), "S".to_string()),
        ]
        .into_iter()
        .collect();
        let strat = build_stratification(complex, &assignment).unwrap();
        let values: BTreeMap<Simplex, SetValue> = [
            (sx("b"), SetValue::singleton("u")),
            (
                sx("a|b"),
                SetValue::new(vec!["x".into(), "y".into()]).unwrap(),
            ),
        ]
        .into_iter()
        .collect();
        let maps: BTreeMap<(Simplex, Simplex), SetMap> = [(
            (sx("a|b"), sx("b")),
            SetMap::new(
                [("x".to_string(), "u".to_string()), ("y".to_string(), "u".to_string())]
                    .into_iter()
                    .collect(),
            ),
        )]
        .into_iter()
        .collect();
        let err =
            build_cosheaf::<SetOmega>(strat, values, maps, CosheafOptions::default()).unwrap_err();
        assert!(matches!(err, CosheafError::InvertibilityFailure { .. }));
    }

    #[test]
    fn diamond_failure_detected() {
        // Punctured disk with one vertex map flipped so the two routes from a
        // triangle to the origin disagree.
        let strat = fixtures::punctured_disk_strat();
        let two = SetValue::new(vec!["0".into(), "1".into()]).unwrap();
        let values: BTreeMap<Simplex, SetValue> = strat
            .complex()
            .cells()
            .iter()
            .map(|c| (c.clone(), two.clone()))
            .collect();
        let ident = SetOmega::identity(&two);
        let swap = SetMap::new(
            [("0".to_string(), "1".to_string()), ("1".to_string(), "0".to_string())]
                .into_iter()
                .collect(),
        );
        let maps: BTreeMap<(Simplex, Simplex), SetMap> = strat
            .complex()
            .incidences()
            .into_iter()
            .map(|(tau, sigma)| {
                let m = if sigma.name() == "o" && tau.name() == "a|o" {
                    swap.clone()
                } else {
                    ident.clone()
                };
                ((tau, sigma), m)
            })
            .collect();
        let err =
            build_cosheaf::<SetOmega>(strat, values, maps, CosheafOptions::default()).unwrap_err();
        assert!(matches!(err, CosheafError::DiamondFailure { .. }));
    }

    #[test]
    fn empty_values_policy() {
        let strat = fixtures::line1_strat();
        let mut values: BTreeMap<Simplex, SetValue> = strat
            .complex()
            .cells()
            .iter()
            .map(|c| (c.clone(), SetValue::singleton("x")))
            .collect();
        values.insert(sx("q|r"), SetValue::new(vec![]).unwrap());
        let maps: BTreeMap<(Simplex, Simplex), SetMap> = strat
            .complex()
            .incidences()
            .into_iter()
            .map(|(tau, sigma)| {
                let m = if tau.name() == "q|r" {
                    SetMap::new(BTreeMap::new())
                } else {
                    SetOmega::identity(&SetValue::singleton("x"))
                };
                ((tau, sigma), m)
            })
            .collect();
        assert!(build_cosheaf::<SetOmega>(
            strat.clone(),
            values.clone(),
            maps.clone(),
            CosheafOptions::default()
        )
        .is_ok());
        let strict = CosheafOptions {
            allow_empty_set_values: false,
        };
        assert!(matches!(
            build_cosheaf::<SetOmega>(strat, values, maps, strict),
            Err(CosheafError::EmptyValue(_))
        ));
    }

    #[test]
    fn linearize_matches_set_cardinalities() {
        let z2 = fixtures::zn_cosheaf(2);
        let lin = linearize(&z2, q(1));
        let whole = OpenSet::whole(z2.base());
        let set_card = z2.evaluate(&whole).unwrap().len();
        let dim = lin.evaluate(&whole).unwrap();
        assert_eq!(set_card, dim);
        for cell in z2.base().complex().cells() {
            assert_eq!(z2.value_of(cell).len(), *lin.value_of(cell));
        }
    }

    #[test]
    fn star_rebuild_round_trip_on_z2() {
        let c = fixtures::zn_cosheaf(2);
        let rebuilt = c.star_rebuild();
        for cell in c.base().complex().cells() {
            assert_eq!(c.value_of(cell).len(), rebuilt.values[cell].len());
        }
        for (tau, sigma) in c.base().complex().incidences() {
            let lhs = SetOmega::compose(&rebuilt.canonical[&sigma], c.map_of(&tau, &sigma));
            let rhs = SetOmega::compose(
                &rebuilt.maps[&(tau.clone(), sigma.clone())],
                &rebuilt.canonical[&tau],
            );
            assert_eq!(lhs, rhs, "square at {tau}->{sigma} must commute");
        }
    }
}
