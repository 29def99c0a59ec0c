//! JSON file formats and the bridge from parsed files to typed values.
//!
//! Cells are serialized as sorted vertex arrays (in stratification files) or
//! as canonical `a|b` names (as keys in cosheaf files); incidence keys read
//! `TAU->SIGMA`. Coefficients select the runtime branch: finite sets, exact
//! rationals, or a prime field.

use std::collections::{BTreeMap, BTreeSet};

use num::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{build_complex, build_stratification, OpenComplex, Simplex, StratifiedComplex};
use crate::cosheaf::{build_cosheaf, validate_set_values, Cosheaf, CosheafError, CosheafOptions};
use crate::field::{is_prime, parse_rational, Fp, Rat};
use crate::ingest::{build_map, IngestError, SimplicialMap};
use crate::linalg::Matrix;
use crate::omega::{SetMap, SetOmega, SetValue, VectOmega};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

// ---------------------------------------------------------------------------
// Wire structs
// ---------------------------------------------------------------------------

/// Complex file; `strata` makes it a self-contained stratified base bundle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrataFile {
    pub strata: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime { p: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Kind(String),
    Field { field: FieldSpec },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Dimension(u64),
    Elements(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Names(BTreeMap<String, String>),
    Rows(Vec<Vec<EntrySpec>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosheafFile {
    pub coefficients: CoeffSpec,
    pub values: BTreeMap<String, ValueSpec>,
    pub maps: BTreeMap<String, MapSpec>,
}

/// Map file; `source` makes it a self-contained bundle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub vertex_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<ComplexFile>,
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    FiniteSet,
    Rational,
    PrimeField(u64),
}

impl Coefficients {
    pub fn from_spec(spec: &CoeffSpec) -> Result<Self, FormatError> {
        match spec {
            CoeffSpec::Kind(k) if k == "set" => Ok(Coefficients::FiniteSet),
            CoeffSpec::Kind(k) => Err(schema(format!("unknown coefficient kind {k:?}"))),
            CoeffSpec::Field { field: FieldSpec::Name(n) } if n == "q" => {
                Ok(Coefficients::Rational)
            }
            CoeffSpec::Field { field: FieldSpec::Name(n) } => {
                Err(schema(format!("unknown field {n:?}")))
            }
            CoeffSpec::Field { field: FieldSpec::Prime { p } } => {
                if is_prime(*p) {
                    Ok(Coefficients::PrimeField(*p))
                } else {
                    Err(schema(format!("{p} is not prime")))
                }
            }
        }
    }

    pub fn to_spec(self) -> CoeffSpec {
        match self {
            Coefficients::FiniteSet => CoeffSpec::Kind("set".into()),
            Coefficients::Rational => CoeffSpec::Field {
                field: FieldSpec::Name("q".into()),
            },
            Coefficients::PrimeField(p) => CoeffSpec::Field {
                field: FieldSpec::Prime { p },
            },
        }
    }

    /// Parses the command-line spelling `q` or `p:PRIME`.
    pub fn parse_flag(text: &str) -> Result<Self, FormatError> {
        if text == "q" {
            return Ok(Coefficients::Rational);
        }
        if text == "set" {
            return Ok(Coefficients::FiniteSet);
        }
        if let Some(p) = text.strip_prefix("p:") {
            let p: u64 = p
                .parse()
                .map_err(|_| schema(format!("bad prime in field spec {text:?}")))?;
            if !is_prime(p) {
                return Err(schema(format!("{p} is not prime")));
            }
            return Ok(Coefficients::PrimeField(p));
        }
        Err(schema(format!(
            "bad field spec {text:?}: expected q or p:PRIME"
        )))
    }
}

/// A cosheaf with its coefficient branch chosen at run time.
#[derive(Debug)]
pub enum AnyCosheaf {
    Set(Cosheaf<SetOmega>),
    Rational(Cosheaf<VectOmega<Rat>>),
    Prime(Cosheaf<VectOmega<Fp>>, u64),
}

impl AnyCosheaf {
    pub fn base(&self) -> &StratifiedComplex {
        match self {
            AnyCosheaf::Set(c) => c.base(),
            AnyCosheaf::Rational(c) => c.base(),
            AnyCosheaf::Prime(c, _) => c.base(),
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        match self {
            AnyCosheaf::Set(_) => Coefficients::FiniteSet,
            AnyCosheaf::Rational(_) => Coefficients::Rational,
            AnyCosheaf::Prime(_, p) => Coefficients::PrimeField(*p),
        }
    }

    pub fn as_set(&self) -> Result<&Cosheaf<SetOmega>, CosheafError> {
        match self {
            AnyCosheaf::Set(c) => Ok(c),
            _ => Err(CosheafError::WrongCoefficients {
                expected: "finite set".into(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing (wire -> domain)
// ---------------------------------------------------------------------------

pub fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn complex_from_file(file: &ComplexFile) -> Result<OpenComplex, crate::complex::ComplexError> {
    build_complex(&file.maximal_simplices, &file.removed)
}

fn assignment_from_strata(
    strata: &BTreeMap<String, Vec<Vec<String>>>,
) -> Result<BTreeMap<Simplex, String>, FormatError> {
    let mut assignment: BTreeMap<Simplex, String> = BTreeMap::new();
    for (stratum, cells) in strata {
        for vs in cells {
            let cell = Simplex::new(vs.iter().cloned())
                .map_err(|e| schema(format!("bad cell in stratum {stratum}: {e}")))?;
            if let Some(prev) = assignment.insert(cell.clone(), stratum.clone()) {
                if prev != *stratum {
                    return Err(schema(format!(
                        "cell {} listed in strata {prev} and {stratum}",
                        cell.name()
                    )));
                }
            }
        }
    }
    Ok(assignment)
}

pub fn stratification_from_files(
    complex_file: &ComplexFile,
    strata: Option<&BTreeMap<String, Vec<Vec<String>>>>,
) -> Result<StratifiedComplex, LoadError> {
    let complex = complex_from_file(complex_file)?;
    let strata = strata.or(complex_file.strata.as_ref());
    match strata {
        Some(s) => {
            let assignment = assignment_from_strata(s)?;
            Ok(build_stratification(complex, &assignment)?)
        }
        None => Ok(StratifiedComplex::cellwise(complex)),
    }
}

/// Errors from turning parsed files into validated values: schema problems
/// keep their own class so callers can distinguish bad input files from
/// semantically invalid data.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
    #[error(transparent)]
    Cosheaf(#[from] CosheafError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
}

impl LoadError {
    pub fn name(&self) -> &'static str {
        match self {
            LoadError::Format(_) => "ParseError",
            LoadError::Complex(e) => e.name(),
            LoadError::Cosheaf(e) => e.name(),
            LoadError::Ingest(e) => e.name(),
        }
    }
}

fn parse_incidence_key(key: &str) -> Result<(Simplex, Simplex), FormatError> {
    let (tau, sigma) = key
        .split_once("->")
        .ok_or_else(|| schema(format!("map key {key:?} is not of the form TAU->SIGMA")))?;
    let tau = Simplex::parse(tau).map_err(|e| schema(format!("bad map key {key:?}: {e}")))?;
    let sigma = Simplex::parse(sigma).map_err(|e| schema(format!("bad map key {key:?}: {e}")))?;
    Ok((tau, sigma))
}

fn rational_entry(e: &EntrySpec) -> Result<Rat, FormatError> {
    match e {
        EntrySpec::Int(i) => Ok(Rat::from(BigInt::from(*i))),
        EntrySpec::Text(t) => {
            parse_rational(t).ok_or_else(|| schema(format!("bad rational entry {t:?}")))
        }
    }
}

fn prime_entry(e: &EntrySpec, p: u64) -> Result<Fp, FormatError> {
    let r = rational_entry(e)?;
    let to_fp = |n: &BigInt| -> Result<Fp, FormatError> {
        let m = BigInt::from(p);
        let reduced = ((n % &m) + &m) % &m;
        Ok(Fp::new(
            reduced.to_i64().expect("reduced residue fits"),
            p,
        ))
    };
    let numer = to_fp(r.numer())?;
    let denom = to_fp(r.denom())?;
    if denom.is_zero() {
        return Err(schema(format!("entry {e:?} has zero denominator mod {p}")));
    }
    Ok(numer / denom)
}

fn matrix_from_rows<F, G>(
    rows: &[Vec<EntrySpec>],
    tgt: usize,
    src: usize,
    key: &str,
    entry: G,
) -> Result<Matrix<F>, FormatError>
where
    F: crate::field::Field,
    G: Fn(&EntrySpec) -> Result<F, FormatError>,
{
    if rows.len() != tgt || rows.iter().any(|r| r.len() != src) {
        return Err(schema(format!(
            "matrix for {key} must be {tgt} rows of {src} entries"
        )));
    }
    let mut m = Matrix::zeros(tgt, src);
    for (r, row) in rows.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            *m.at_mut(r, c) = entry(e)?;
        }
    }
    Ok(m)
}

fn vect_cosheaf_from_file<F, G>(
    base: StratifiedComplex,
    file: &CosheafFile,
    entry: G,
) -> Result<Cosheaf<VectOmega<F>>, LoadError>
where
    F: crate::field::Field,
    G: Fn(&EntrySpec) -> Result<F, FormatError>,
{
    let mut values: BTreeMap<Simplex, usize> = BTreeMap::new();
    for (name, v) in &file.values {
        let cell = Simplex::parse(name).map_err(FormatError::from_complex)?;
        let ValueSpec::Dimension(d) = v else {
            return Err(schema(format!("value of {name} must be a dimension")).into());
        };
        values.insert(cell, *d as usize);
    }
    let mut maps: BTreeMap<(Simplex, Simplex), Matrix<F>> = BTreeMap::new();
    for (key, spec) in &file.maps {
        let (tau, sigma) = parse_incidence_key(key)?;
        let MapSpec::Rows(rows) = spec else {
            return Err(schema(format!("map {key} must be a matrix")).into());
        };
        let (tgt, src) = match (values.get(&sigma), values.get(&tau)) {
            (Some(t), Some(s)) => (*t, *s),
            _ => {
                return Err(schema(format!("map {key} references cells without values")).into())
            }
        };
        maps.insert((tau, sigma), matrix_from_rows(rows, tgt, src, key, &entry)?);
    }
    Ok(build_cosheaf(
        base,
        values,
        maps,
        CosheafOptions::default(),
    )?)
}

impl FormatError {
    fn from_complex(e: crate::complex::ComplexError) -> FormatError {
        schema(format!("bad cell name: {e}"))
    }
}

pub fn cosheaf_from_file(
    base: StratifiedComplex,
    file: &CosheafFile,
) -> Result<AnyCosheaf, LoadError> {
    match Coefficients::from_spec(&file.coefficients)? {
        Coefficients::FiniteSet => {
            let mut values: BTreeMap<Simplex, SetValue> = BTreeMap::new();
            for (name, v) in &file.values {
                let cell = Simplex::parse(name).map_err(FormatError::from_complex)?;
                let ValueSpec::Elements(elems) = v else {
                    return Err(
                        schema(format!("value of {name} must be an array of names")).into()
                    );
                };
                let value = SetValue::new(elems.clone()).map_err(|dup| {
                    schema(format!("duplicate element {dup:?} on cell {name}"))
                })?;
                values.insert(cell, value);
            }
            validate_set_values(&values)?;
            let mut maps: BTreeMap<(Simplex, Simplex), SetMap> = BTreeMap::new();
            for (key, spec) in &file.maps {
                let (tau, sigma) = parse_incidence_key(key)?;
                let MapSpec::Names(entries) = spec else {
                    return Err(schema(format!("map {key} must be a name map")).into());
                };
                maps.insert((tau, sigma), SetMap::new(entries.clone()));
            }
            Ok(AnyCosheaf::Set(build_cosheaf(
                base,
                values,
                maps,
                CosheafOptions::default(),
            )?))
        }
        Coefficients::Rational => Ok(AnyCosheaf::Rational(vect_cosheaf_from_file(
            base,
            file,
            rational_entry,
        )?)),
        Coefficients::PrimeField(p) => Ok(AnyCosheaf::Prime(
            vect_cosheaf_from_file(base, file, |e| prime_entry(e, p))?,
            p,
        )),
    }
}

pub fn map_from_files(
    map_file: &MapFile,
    source: Option<&ComplexFile>,
    target: StratifiedComplex,
) -> Result<SimplicialMap, LoadError> {
    let source_file = source
        .or(map_file.source.as_ref())
        .ok_or_else(|| schema("no source complex given for the map"))?;
    let source_complex = complex_from_file(source_file)?;
    let source_strata = match &source_file.strata {
        Some(s) => Some(build_stratification(
            source_complex.clone(),
            &assignment_from_strata(s)?,
        )?),
        None => None,
    };
    Ok(build_map(
        source_complex,
        source_strata,
        target,
        map_file.vertex_map.clone(),
    )?)
}

// ---------------------------------------------------------------------------
// Serialization (domain -> wire)
// ---------------------------------------------------------------------------

pub fn complex_to_file(complex: &OpenComplex) -> ComplexFile {
    let maximal: Vec<Vec<String>> = complex
        .ambient()
        .iter()
        .filter(|s| {
            !complex
                .ambient()
                .iter()
                .any(|t| *s != t && s.is_face_of(t))
        })
        .map(|s| s.vertices().to_vec())
        .collect();
    let removed: Vec<Vec<String>> = complex
        .removed()
        .iter()
        .filter(|s| {
            !complex
                .removed()
                .iter()
                .any(|t| *s != t && s.is_face_of(t))
        })
        .map(|s| s.vertices().to_vec())
        .collect();
    ComplexFile {
        maximal_simplices: maximal,
        removed,
        strata: None,
    }
}

pub fn strata_map(strat: &StratifiedComplex) -> BTreeMap<String, Vec<Vec<String>>> {
    strat
        .strata()
        .iter()
        .map(|(name, cells)| {
            (
                name.clone(),
                cells.iter().map(|c| c.vertices().to_vec()).collect(),
            )
        })
        .collect()
}

/// A complex file carrying its stratification.
pub fn base_bundle(strat: &StratifiedComplex) -> ComplexFile {
    let mut file = complex_to_file(strat.complex());
    file.strata = Some(strata_map(strat));
    file
}

fn rational_to_entry(r: &Rat) -> EntrySpec {
    if r.denom().is_one() {
        if let Some(i) = r.numer().to_i64() {
            return EntrySpec::Int(i);
        }
    }
    EntrySpec::Text(if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    })
}

pub fn cosheaf_to_file(cosheaf: &AnyCosheaf) -> CosheafFile {
    let coefficients = cosheaf.coefficients().to_spec();
    match cosheaf {
        AnyCosheaf::Set(c) => CosheafFile {
            coefficients,
            values: c
                .values()
                .iter()
                .map(|(cell, v)| (cell.name(), ValueSpec::Elements(v.elements().to_vec())))
                .collect(),
            maps: c
                .maps()
                .iter()
                .map(|((tau, sigma), m)| {
                    (
                        format!("{}->{}", tau.name(), sigma.name()),
                        MapSpec::Names(m.entries().clone()),
                    )
                })
                .collect(),
        },
        AnyCosheaf::Rational(c) => CosheafFile {
            coefficients,
            values: c
                .values()
                .iter()
                .map(|(cell, v)| (cell.name(), ValueSpec::Dimension(*v as u64)))
                .collect(),
            maps: c
                .maps()
                .iter()
                .map(|((tau, sigma), m)| {
                    let rows = (0..m.rows())
                        .map(|r| (0..m.cols()).map(|c| rational_to_entry(m.at(r, c))).collect())
                        .collect();
                    (
                        format!("{}->{}", tau.name(), sigma.name()),
                        MapSpec::Rows(rows),
                    )
                })
                .collect(),
        },
        AnyCosheaf::Prime(c, _) => CosheafFile {
            coefficients,
            values: c
                .values()
                .iter()
                .map(|(cell, v)| (cell.name(), ValueSpec::Dimension(*v as u64)))
                .collect(),
            maps: c
                .maps()
                .iter()
                .map(|((tau, sigma), m)| {
                    let rows = (0..m.rows())
                        .map(|r| {
                            (0..m.cols())
                                .map(|c| EntrySpec::Int(m.at(r, c).residue()))
                                .collect()
                        })
                        .collect();
                    (
                        format!("{}->{}", tau.name(), sigma.name()),
                        MapSpec::Rows(rows),
                    )
                })
                .collect(),
        },
    }
}

/// Reconstructs an open complex from the cells a cosheaf file names, for use
/// when no complex file accompanies it.
pub fn complex_from_value_cells(file: &CosheafFile) -> Result<OpenComplex, LoadError> {
    let cells: BTreeSet<Simplex> = file
        .values
        .keys()
        .map(|n| Simplex::parse(n).map_err(FormatError::from_complex))
        .collect::<Result<_, _>>()?;
    Ok(OpenComplex::from_cells(cells)?)
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosheaf::OpenSet;
    use crate::fixtures;

    #[test]
    fn complex_file_round_trip() {
        let strat = fixtures::punctured_disk_strat();
        let file = complex_to_file(strat.complex());
        let rebuilt = complex_from_file(&file).unwrap();
        assert_eq!(rebuilt.cells(), strat.complex().cells());
    }

    #[test]
    fn strata_file_round_trip() {
        let strat = fixtures::line1_strat();
        let bundle = base_bundle(&strat);
        let rebuilt = stratification_from_files(&bundle, None).unwrap();
        assert_eq!(rebuilt.strata(), strat.strata());
        assert_eq!(rebuilt.order(), strat.order());
    }

    #[test]
    fn cosheaf_file_round_trips() {
        for any in [
            AnyCosheaf::Set(fixtures::zn_cosheaf(2)),
            AnyCosheaf::Rational(fixtures::line1_vect()),
        ] {
            let file = cosheaf_to_file(&any);
            let text = to_pretty_json(&file);
            let parsed: CosheafFile = parse_json(&text).unwrap();
            let rebuilt = cosheaf_from_file(any.base().clone(), &parsed).unwrap();
            match (&any, &rebuilt) {
                (AnyCosheaf::Set(a), AnyCosheaf::Set(b)) => {
                    assert_eq!(a.values(), b.values());
                    assert_eq!(a.maps(), b.maps());
                }
                (AnyCosheaf::Rational(a), AnyCosheaf::Rational(b)) => {
                    assert_eq!(a.values(), b.values());
                    assert_eq!(a.maps(), b.maps());
                }
                _ => panic!("coefficient branch changed in the round trip"),
            }
        }
    }

    #[test]
    fn prime_field_cosheaf_parses() {
        let text = r#"{
            "coefficients": {"field": {"p": 5}},
            "values": {"p|q": 1, "q": 1, "q|r": 1},
            "maps": {"p|q->q": [[3]], "q|r->q": [["1/2"]]}
        }"#;
        let file: CosheafFile = parse_json(text).unwrap();
        let base = fixtures::line1_strat();
        let any = cosheaf_from_file(base, &file).unwrap();
        let AnyCosheaf::Prime(c, 5) = any else {
            panic!("expected a prime-field cosheaf")
        };
        // 1/2 = 3 mod 5
        let m = c.map_of(
            &Simplex::parse("q|r").unwrap(),
            &Simplex::parse("q").unwrap(),
        );
        assert_eq!(*m.at(0, 0), Fp::new(3, 5));
        assert_eq!(c.evaluate(&OpenSet::whole(c.base())).unwrap(), 1);
    }

    #[test]
    fn schema_errors_are_reported() {
        assert!(parse_json::<CosheafFile>("{").is_err());
        let text = r#"{
            "coefficients": "set",
            "values": {"p|q": ["x", "x"]},
            "maps": {}
        }"#;
        let file: CosheafFile = parse_json(text).unwrap();
        let err = cosheaf_from_file(fixtures::line1_strat(), &file).unwrap_err();
        assert!(matches!(err, LoadError::Format(FormatError::Schema(_))));
    }

    #[test]
    fn reconstructed_complex_from_cosheaf_cells() {
        let file = cosheaf_to_file(&AnyCosheaf::Rational(fixtures::line1_k0k()));
        let complex = complex_from_value_cells(&file).unwrap();
        assert_eq!(
            complex.cells(),
            fixtures::line1_strat().complex().cells()
        );
    }

    #[test]
    fn coefficient_flag_parsing() {
        assert_eq!(
            Coefficients::parse_flag("q").unwrap(),
            Coefficients::Rational
        );
        assert_eq!(
            Coefficients::parse_flag("p:7").unwrap(),
            Coefficients::PrimeField(7)
        );
        assert!(Coefficients::parse_flag("p:6").is_err());
        assert!(Coefficients::parse_flag("r").is_err());
    }
}
