//! JSON input documents.
//!
//! Tensors are sparse lists of `[index, ..., "value"]` entries with values
//! written as rational strings (`"3"`, `"-1/2"`); omitted entries are zero.
//! Conventions:
//!
//! - `product`: `[i, j, k, v]` means the `e_k` coefficient of `e_i e_j` is `v`;
//! - `action`: `[p, r, c, v]` is entry `(r, c)` of the matrix of `a_p`;
//! - `anchor`: `[i, r, c, v]` is entry `(r, c)` of the anchor of `e_i` on `A`;
//! - `rho`, `mu`: `[i, r, c, v]` is entry `(r, c)` of the operator of `e_i`;
//! - matrices: `[r, c, v]`.
//!
//! A missing base algebra means the ground field; a missing action is only
//! allowed over the ground field, where it defaults to the identity.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{AnchoredAlgebra, LsrAlgebra, MorphismPair, StructureAlgebra, Subspace, SubstructureKind};
use crate::deformation::{FormalAutomorphism, TruncatedDeformation};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::representation::{RepKind, RepresentationBundle};
use crate::tensor::Bilinear;

pub type TensorEntry = (usize, usize, usize, String);
pub type MatrixEntry = (usize, usize, String);

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_algebra: Option<BaseDoc>,
    pub lsr: LsrDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepresentationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operators: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub module_maps: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub deformations: BTreeMap<String, DeformationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub automorphisms: BTreeMap<String, AutomorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subspaces: BTreeMap<String, SubspaceDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub dim: usize,
    #[serde(default)]
    pub product: Vec<TensorEntry>,
    /// Index of the basis element that is the unit, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LsrDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<TensorEntry>>,
    #[serde(default)]
    pub product: Vec<TensorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchor: Vec<TensorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub kind: RepKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<TensorEntry>>,
    #[serde(default)]
    pub rho: Vec<TensorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<TensorEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    /// Defaults to the dimension of `L`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    #[serde(default)]
    pub entries: Vec<MatrixEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDoc {
    pub terms: Vec<Vec<TensorEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismDoc {
    pub maps: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub kind: SubstructureKind,
    pub basis: Vec<Vec<String>>,
}

/// An endomorphism of the document's algebra; `g` defaults to the identity of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub f: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<MatrixDoc>,
}

fn value(location: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::parse(location, e))
}

/// Dense values of a sparse three-index list, rejecting out-of-range and
/// repeated coordinates.
fn fill3(location: &str, entries: &[TensorEntry], dims: [usize; 3]) -> Result<Vec<([usize; 3], Rational)>> {
    let mut seen = HashSet::new();
    entries
        .iter()
        .enumerate()
        .map(|(n, (i, j, k, v))| {
            let at = format!("{location}[{n}]");
            let idx = [*i, *j, *k];
            if idx.iter().zip(&dims).any(|(x, d)| x >= d) {
                return Err(Error::parse(at, format!("index ({i}, {j}, {k}) out of range for dimensions {dims:?}")));
            }
            if !seen.insert(idx) {
                return Err(Error::parse(at, format!("duplicate entry at ({i}, {j}, {k})")));
            }
            Ok((idx, value(&at, v)?))
        })
        .collect()
}

fn bilinear(location: &str, entries: &[TensorEntry], l: usize, r: usize, o: usize) -> Result<Bilinear> {
    let mut b = Bilinear::zeros(l, r, o);
    for ([i, j, k], v) in fill3(location, entries, [l, r, o])? {
        b.set(i, j, k, v);
    }
    Ok(b)
}

fn matrices(location: &str, entries: &[TensorEntry], count: usize, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    let mut out = vec![Matrix::zeros(rows, cols); count];
    for ([p, r, c], v) in fill3(location, entries, [count, rows, cols])? {
        out[p].set(r, c, v);
    }
    Ok(out)
}

fn action(location: &str, entries: Option<&Vec<TensorEntry>>, base: &StructureAlgebra, dim: usize) -> Result<Vec<Matrix>> {
    match entries {
        Some(e) => matrices(location, e, base.dim(), dim, dim),
        None if base.dim() == 1 => Ok(vec![Matrix::identity(dim)]),
        None => Err(Error::parse(location, "required when the base algebra is not the ground field")),
    }
}

impl MatrixDoc {
    pub fn to_matrix(&self, location: &str, default_dim: usize) -> Result<Matrix> {
        let (rows, cols) = (self.rows.unwrap_or(default_dim), self.cols.unwrap_or(default_dim));
        let mut m = Matrix::zeros(rows, cols);
        let mut seen = HashSet::new();
        for (n, (r, c, v)) in self.entries.iter().enumerate() {
            let at = format!("{location}.entries[{n}]");
            if *r >= rows || *c >= cols {
                return Err(Error::parse(at, format!("index ({r}, {c}) out of range for a {rows}x{cols} matrix")));
            }
            if !seen.insert((*r, *c)) {
                return Err(Error::parse(at, format!("duplicate entry at ({r}, {c})")));
            }
            m.set(*r, *c, value(&at, v)?);
        }
        Ok(m)
    }

    /// Sparse form; the shape is written out unless it is square of `default_dim`.
    pub fn from_matrix(m: &Matrix, default_dim: usize) -> Self {
        let square = m.rows() == default_dim && m.cols() == default_dim;
        MatrixDoc {
            rows: (!square).then_some(m.rows()),
            cols: (!square).then_some(m.cols()),
            entries: (0..m.rows())
                .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
                .filter(|&(r, c)| !num_traits::Zero::is_zero(m.get(r, c)))
                .map(|(r, c)| (r, c, format_rational(m.get(r, c))))
                .collect(),
        }
    }
}

/// Sparse entries of a bilinear map.
pub fn tensor_entries(b: &Bilinear) -> Vec<TensorEntry> {
    b.nonzero_entries().into_iter().map(|(i, j, k, v)| (i, j, k, format_rational(&v))).collect()
}

/// Sparse entries of an indexed family of matrices.
pub fn family_entries(mats: &[Matrix]) -> Vec<TensorEntry> {
    let mut out = Vec::new();
    for (p, m) in mats.iter().enumerate() {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !num_traits::Zero::is_zero(m.get(r, c)) {
                    out.push((p, r, c, format_rational(m.get(r, c))));
                }
            }
        }
    }
    out
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e))
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        serde_json::to_string_pretty(&value).expect("documents serialize")
    }

    pub fn base(&self) -> Result<StructureAlgebra> {
        let Some(b) = &self.base_algebra else {
            return Ok(StructureAlgebra::ground());
        };
        if b.dim == 0 {
            return Err(Error::parse("base_algebra.dim", "must be at least 1"));
        }
        let product = bilinear("base_algebra.product", &b.product, b.dim, b.dim, b.dim)?;
        StructureAlgebra::new(product, b.unit)
    }

    pub fn algebra(&self) -> Result<LsrAlgebra> {
        let base = self.base()?;
        let (d, da) = (self.lsr.dim, base.dim());
        let act = action("lsr.action", self.lsr.action.as_ref(), &base, d)?;
        let product = bilinear("lsr.product", &self.lsr.product, d, d, d)?;
        let anchor = matrices("lsr.anchor", &self.lsr.anchor, d, da, da)?;
        LsrAlgebra::new(base, act, product, anchor)
    }

    pub fn representation(&self, name: &str) -> Result<RepresentationBundle> {
        let r = self
            .representations
            .get(name)
            .ok_or_else(|| Error::parse("representations", format!("no representation named {name:?}")))?;
        let base = self.base()?;
        let at = format!("representations.{name}");
        let act = action(&format!("{at}.action"), r.action.as_ref(), &base, r.dim)?;
        let rho = matrices(&format!("{at}.rho"), &r.rho, self.lsr.dim, r.dim, r.dim)?;
        match (r.kind, &r.mu) {
            (RepKind::LsrPair, mu) => {
                let mu = matrices(&format!("{at}.mu"), mu.as_deref().unwrap_or_default(), self.lsr.dim, r.dim, r.dim)?;
                RepresentationBundle::lsr_pair(r.dim, act, rho, mu)
            }
            (RepKind::LieModule, None) => RepresentationBundle::lie_module(r.dim, act, rho),
            (RepKind::LieModule, Some(_)) => Err(Error::parse(format!("{at}.mu"), "a Lie module has no mu")),
        }
    }

    pub fn operator(&self, name: &str) -> Result<Matrix> {
        self.operators
            .get(name)
            .ok_or_else(|| Error::parse("operators", format!("no operator named {name:?}")))?
            .to_matrix(&format!("operators.{name}"), self.lsr.dim)
    }

    pub fn module_map(&self, name: &str) -> Result<Matrix> {
        self.module_maps
            .get(name)
            .ok_or_else(|| Error::parse("module_maps", format!("no module map named {name:?}")))?
            .to_matrix(&format!("module_maps.{name}"), self.lsr.dim)
    }

    pub fn deformation(&self, name: &str) -> Result<TruncatedDeformation> {
        let doc = self
            .deformations
            .get(name)
            .ok_or_else(|| Error::parse("deformations", format!("no deformation named {name:?}")))?;
        let d = self.lsr.dim;
        let terms = doc
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| bilinear(&format!("deformations.{name}.terms[{i}]"), t, d, d, d))
            .collect::<Result<_>>()?;
        TruncatedDeformation::new(self.algebra()?, terms)
    }

    pub fn automorphism(&self, name: &str) -> Result<FormalAutomorphism> {
        let doc = self
            .automorphisms
            .get(name)
            .ok_or_else(|| Error::parse("automorphisms", format!("no automorphism named {name:?}")))?;
        let maps = doc
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_matrix(&format!("automorphisms.{name}.maps[{i}]"), self.lsr.dim))
            .collect::<Result<_>>()?;
        FormalAutomorphism::new(maps)
    }

    pub fn subspace(&self, name: &str) -> Result<(Subspace, SubstructureKind)> {
        let doc = self
            .subspaces
            .get(name)
            .ok_or_else(|| Error::parse("subspaces", format!("no subspace named {name:?}")))?;
        let basis = doc
            .basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let at = format!("subspaces.{name}.basis[{i}]");
                if v.len() != self.lsr.dim {
                    return Err(Error::parse(at, format!("expected {} coordinates, found {}", self.lsr.dim, v.len())));
                }
                v.iter().map(|s| value(&at, s)).collect()
            })
            .collect::<Result<_>>()?;
        Ok((Subspace::new(basis)?, doc.kind))
    }

    pub fn morphism(&self, name: &str) -> Result<MorphismPair> {
        let doc = self
            .morphisms
            .get(name)
            .ok_or_else(|| Error::parse("morphisms", format!("no morphism named {name:?}")))?;
        let f = doc.f.to_matrix(&format!("morphisms.{name}.f"), self.lsr.dim)?;
        let da = self.base()?.dim();
        let g = match &doc.g {
            Some(g) => g.to_matrix(&format!("morphisms.{name}.g"), da)?,
            None => Matrix::identity(da),
        };
        Ok(MorphismPair { f, g })
    }

    /// Document holding just an algebra.
    pub fn from_algebra(l: &LsrAlgebra) -> Self {
        let base = l.base();
        let ground = *base == StructureAlgebra::ground();
        let base_algebra = (!ground).then(|| BaseDoc {
            dim: base.dim(),
            product: tensor_entries(base.product()),
            unit: base.unit(),
        });
        let default_action = ground && l.action()[0].is_identity();
        InputDocument {
            base_algebra,
            lsr: LsrDoc {
                dim: l.dim(),
                action: (!default_action).then(|| family_entries(l.action())),
                product: tensor_entries(l.product()),
                anchor: family_entries(l.anchor()),
            },
            ..Default::default()
        }
    }

    pub fn representation_doc(rep: &RepresentationBundle) -> RepresentationDoc {
        RepresentationDoc {
            kind: rep.kind(),
            dim: rep.dim(),
            action: Some(family_entries(rep.module_action())),
            rho: family_entries(rep.rho()),
            mu: rep.mu().map(family_entries),
        }
    }

    pub fn deformation_doc(d: &TruncatedDeformation) -> DeformationDoc {
        DeformationDoc { terms: d.terms().iter().map(tensor_entries).collect() }
    }
}
