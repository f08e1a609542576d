//! The JSON input document and conversions to and from library types.
//!
//! Scalars are written as integers holding the polynomial bits of a field
//! element. Indices are 0-based. Bracket entries are given for `i < j` only.
//! Matrices are lists of rows, so a derivation matrix has `D e_a` in column
//! `a`; square tables list `e_a^[2]` as row `a`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{ResLieDerPair, RestrictedLieAlgebra, RestrictedRepresentation};
use crate::cochain::{increasing_tuples, PairCochainJson};
use crate::deformation::{DeformationTerm, TruncatedDeformation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub dim: usize,
    pub rho: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(default)]
    pub mu: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<u32>>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<u32>>>,
}

/// `terms` lists orders `1..=order`, or `0..=order` when it has one more entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationJson {
    pub order: usize,
    pub terms: Vec<TermJson>,
}

/// Either an inline document or a path relative to the referencing file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DocOrPath {
    Path(String),
    Doc(Box<InputDocument>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub g: DocOrPath,
    pub h: DocOrPath,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<PairCochainJson>,
    /// Second cocycle, compared with the first by `central-ext iso`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle2: Option<PairCochainJson>,
    /// `(N+H) x N` section used by `central-ext extract`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: FieldJson,
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionJson>,
}

fn bad(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{path}: {msg}"))
}

fn scalar(field: &Field, raw: u32, path: &str) -> Result<Scalar> {
    field.element(raw).map_err(|_| {
        bad(
            path,
            format!("scalar {raw} out of range for GF(2^{})", field.k()),
        )
    })
}

fn vector(field: &Field, raw: &[u32], len: usize, path: &str) -> Result<Vector> {
    if raw.len() != len {
        return Err(bad(
            path,
            format!("expected {len} entries, found {}", raw.len()),
        ));
    }
    raw.iter()
        .enumerate()
        .map(|(i, &v)| scalar(field, v, &format!("{path}[{i}]")))
        .collect()
}

fn matrix(field: &Field, raw: &[Vec<u32>], rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    if raw.len() != rows {
        return Err(bad(
            path,
            format!("expected {rows} rows, found {}", raw.len()),
        ));
    }
    let rows_v: Vec<Vector> = raw
        .iter()
        .enumerate()
        .map(|(i, r)| vector(field, r, cols, &format!("{path}[{i}]")))
        .collect::<Result<_>>()?;
    Matrix::from_rows_with_cols(field, &rows_v, cols)
}

fn table(field: &Field, raw: &[Vec<u32>], n: usize, path: &str) -> Result<Vec<Vector>> {
    Ok(matrix(field, raw, n, n, path)?.to_rows())
}

fn sparse_bracket(
    field: &Field,
    entries: &[BracketEntry],
    n: usize,
    path: &str,
) -> Result<Vec<Vector>> {
    let mut out = vec![vec![Scalar::ZERO; n]; n * n];
    let mut seen = vec![false; n * n];
    for (k, e) in entries.iter().enumerate() {
        let p = format!("{path}[{k}]");
        if e.i == e.j {
            return Err(bad(
                &p,
                "diagonal entries are not allowed (the bracket is alternating)",
            ));
        }
        if e.i > e.j {
            return Err(bad(&p, "entries must have i < j"));
        }
        if e.j >= n {
            return Err(bad(
                &p,
                format!("index {} out of range for dimension {n}", e.j),
            ));
        }
        if seen[e.i * n + e.j] {
            return Err(bad(&p, format!("duplicate entry for ({}, {})", e.i, e.j)));
        }
        seen[e.i * n + e.j] = true;
        let v = vector(field, &e.value, n, &format!("{p}.value"))?;
        out[e.i * n + e.j] = v.clone();
        out[e.j * n + e.i] = v;
    }
    Ok(out)
}

fn raw_vec(v: &[Scalar]) -> Vec<u32> {
    v.iter().map(|s| s.0 as u32).collect()
}

fn raw_matrix(m: &Matrix) -> Vec<Vec<u32>> {
    m.to_rows().iter().map(|r| raw_vec(r)).collect()
}

fn bracket_entries(table: &[Vector], n: usize) -> Vec<BracketEntry> {
    increasing_tuples(n, 2)
        .into_iter()
        .filter(|t| table[t[0] * n + t[1]].iter().any(|s| !s.is_zero()))
        .map(|t| BracketEntry {
            i: t[0],
            j: t[1],
            value: raw_vec(&table[t[0] * n + t[1]]),
        })
        .collect()
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::InvalidInput(format!("{path}: {}", e.into_inner()))
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.field.k, self.field.modulus).map_err(|e| bad("field", e))
    }

    pub fn algebra(&self) -> Result<RestrictedLieAlgebra> {
        let f = self.field()?;
        let n = self.dim;
        let bracket = sparse_bracket(&f, &self.bracket, n, "bracket")?;
        let square = match &self.square {
            Some(s) => table(&f, s, n, "square")?,
            None => vec![vec![Scalar::ZERO; n]; n],
        };
        RestrictedLieAlgebra::new(&f, n, bracket, square)
    }

    pub fn pair(&self) -> Result<ResLieDerPair> {
        let alg = self.algebra()?;
        let n = self.dim;
        let d = match &self.derivation {
            Some(d) => matrix(alg.field(), d, n, n, "derivation")?,
            None => Matrix::zeros(alg.field(), n, n),
        };
        ResLieDerPair::new(alg, d)
    }

    pub fn representation(&self, pair: &ResLieDerPair) -> Result<Option<RestrictedRepresentation>> {
        let Some(r) = &self.representation else {
            return Ok(None);
        };
        let f = pair.field();
        if r.rho.len() != pair.dim() {
            return Err(bad(
                "representation.rho",
                format!("expected {} matrices, found {}", pair.dim(), r.rho.len()),
            ));
        }
        let rho = r
            .rho
            .iter()
            .enumerate()
            .map(|(a, m)| matrix(f, m, r.dim, r.dim, &format!("representation.rho[{a}]")))
            .collect::<Result<Vec<_>>>()?;
        let eta = match &r.eta {
            Some(e) => matrix(f, e, r.dim, r.dim, "representation.eta")?,
            None => Matrix::zeros(f, r.dim, r.dim),
        };
        Ok(Some(RestrictedRepresentation::new(r.dim, rho, eta)?))
    }

    pub fn deformation(&self, pair: &ResLieDerPair) -> Result<Option<TruncatedDeformation>> {
        let Some(d) = &self.deformation else {
            return Ok(None);
        };
        let f = pair.field();
        let n = pair.dim();
        let with_zero = match d.terms.len() {
            l if l == d.order => false,
            l if l == d.order + 1 => true,
            l => {
                return Err(bad(
                    "deformation.terms",
                    format!(
                        "order {} needs {} or {} terms, found {l}",
                        d.order,
                        d.order,
                        d.order + 1
                    ),
                ))
            }
        };
        let terms = d
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let p = format!("deformation.terms[{i}]");
                Ok(DeformationTerm {
                    mu: sparse_bracket(f, &t.mu, n, &format!("{p}.mu"))?,
                    sigma: match &t.sigma {
                        Some(s) => table(f, s, n, &format!("{p}.sigma"))?,
                        None => vec![vec![Scalar::ZERO; n]; n],
                    },
                    derivation: match &t.d {
                        Some(m) => matrix(f, m, n, n, &format!("{p}.D"))?,
                        None => Matrix::zeros(f, n, n),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if with_zero {
            TruncatedDeformation::from_all_terms(pair, terms)
                .map(Some)
                .map_err(|e| bad("deformation.terms[0]", e))
        } else {
            TruncatedDeformation::from_higher_terms(pair, terms).map(Some)
        }
    }

    /// Writes a pair (and optionally a representation) as a document.
    pub fn from_pair(pair: &ResLieDerPair, rep: Option<&RestrictedRepresentation>) -> Self {
        let spec = pair.field().spec();
        let n = pair.dim();
        InputDocument {
            field: FieldJson {
                k: spec.k,
                modulus: (spec.k > 1).then_some(spec.modulus),
            },
            dim: n,
            bracket: bracket_entries(pair.algebra.bracket_table(), n),
            square: Some(
                pair.algebra
                    .square_table()
                    .iter()
                    .map(|v| raw_vec(v))
                    .collect(),
            ),
            derivation: Some(raw_matrix(&pair.derivation)),
            representation: rep.map(|r| RepresentationJson {
                dim: r.dim,
                rho: r.rho.iter().map(raw_matrix).collect(),
                eta: Some(raw_matrix(&r.eta)),
            }),
            deformation: None,
            extension: None,
        }
    }

    /// Attaches a deformation (terms of orders `1..=n`).
    pub fn with_deformation(mut self, d: &TruncatedDeformation) -> Self {
        let n = d.dim();
        self.deformation = Some(DeformationJson {
            order: d.order(),
            terms: d.terms[1..]
                .iter()
                .map(|t| TermJson {
                    mu: bracket_entries(&t.mu, n),
                    sigma: Some(t.sigma.iter().map(|v| raw_vec(v)).collect()),
                    d: Some(raw_matrix(&t.derivation)),
                })
                .collect(),
        });
        self
    }
}

/// Resolves an inline-or-path reference, reading paths relative to `base_dir`.
pub fn resolve(doc: &DocOrPath, base_dir: &Path, what: &str) -> Result<InputDocument> {
    match doc {
        DocOrPath::Doc(d) => Ok((**d).clone()),
        DocOrPath::Path(p) => {
            let path: PathBuf = base_dir.join(p);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| bad(what, format!("cannot read {}: {e}", path.display())))?;
            InputDocument::parse(&text).map_err(|e| bad(what, e))
        }
    }
}

/// Parses a matrix given as rows of raw scalars.
pub fn parse_matrix(
    field: &Field,
    raw: &[Vec<u32>],
    rows: usize,
    cols: usize,
    path: &str,
) -> Result<Matrix> {
    matrix(field, raw, rows, cols, path)
}

pub fn matrix_to_raw(m: &Matrix) -> Vec<Vec<u32>> {
    raw_matrix(m)
}
