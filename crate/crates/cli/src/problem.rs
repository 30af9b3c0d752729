//! Problem documents: parsing, validation and resolution against the core library.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;
use syzlab_core::field::Cyclotomic;
use syzlab_core::group::{generate_group, FiniteGroup, Generators, IrrepCatalog, Representation};
use syzlab_core::{builtin, GeneratorMode, InvariantRing, Limits, Matrix};

use crate::error::{CliError, Result};

type MatrixDoc = Vec<Vec<Cyclotomic>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GroupField {
    Name(String),
    Spec(GroupObject),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupObject {
    /// One-line notation on the points `1..=N`.
    permutation_generators: Option<Vec<Vec<usize>>>,
    matrix_generators: Option<Vec<MatrixDoc>>,
    conductor: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepObject {
    multiplicities: Option<Vec<usize>>,
    generator_images: Option<Vec<MatrixDoc>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IrrepObject {
    generator_images: Vec<MatrixDoc>,
}

/// The input document as written.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    group: Option<GroupField>,
    rep: Option<RepObject>,
    /// Irreducible representations for a user-supplied group.
    irreps: Option<Vec<IrrepObject>>,
    pub task: Option<String>,
    pub p: Option<usize>,
    pub p_max: Option<usize>,
    pub mode: Option<GeneratorMode>,
    pub max_degree: Option<usize>,
    pub g_max: Option<usize>,
    /// Multiplicity vectors compared against `W_p` by the schur task.
    pub samples: Option<Vec<Vec<usize>>>,
    /// `[λ, μ, ν]` triples for Littlewood–Richardson coefficients.
    pub lr: Option<Vec<[Vec<usize>; 3]>>,
    /// `[λ, μ]` pairs for Kostka numbers.
    pub kostka: Option<Vec<[Vec<usize>; 2]>>,
}

#[derive(Debug, Clone)]
pub enum RepChoice {
    Multiplicities(Vec<usize>),
    Explicit(Representation),
}

/// A validated problem with its group, optional catalog and representation.
#[derive(Debug, Clone)]
pub struct Problem {
    pub doc: ProblemDoc,
    /// Sorted-key compact JSON of the document.
    pub canonical: String,
    pub setting: Option<GroupSetting>,
}

#[derive(Debug, Clone)]
pub struct GroupSetting {
    pub source: String,
    pub group: Arc<FiniteGroup>,
    pub catalog: Option<IrrepCatalog>,
    pub rep: RepChoice,
}

impl GroupSetting {
    pub fn representation(&self) -> Result<Representation> {
        match &self.rep {
            RepChoice::Explicit(r) => Ok(r.clone()),
            RepChoice::Multiplicities(ks) => Ok(self.require_catalog()?.universal_rep(ks)?),
        }
    }

    pub fn ring(&self, limits: &Limits) -> Result<InvariantRing> {
        Ok(match &self.rep {
            RepChoice::Explicit(r) => InvariantRing::plain(r.clone(), limits.basis_limit)?,
            RepChoice::Multiplicities(ks) => InvariantRing::isotypic(self.require_catalog()?, ks, limits.basis_limit)?,
        })
    }

    pub fn require_catalog(&self) -> Result<&IrrepCatalog> {
        self.catalog
            .as_ref()
            .ok_or_else(|| CliError::Schema("this task needs an irrep catalog: use a builtin group or supply \"irreps\"".into()))
    }

    pub fn multiplicities(&self) -> Option<&[usize]> {
        match &self.rep {
            RepChoice::Multiplicities(ks) => Some(ks),
            RepChoice::Explicit(_) => None,
        }
    }
}

fn to_matrix(doc: &MatrixDoc, what: &str) -> Result<Matrix<Cyclotomic>> {
    let n = doc.len();
    if n == 0 || doc.iter().any(|row| row.len() != n) {
        return Err(CliError::Schema(format!("{what}: matrices must be square and nonempty")));
    }
    Ok(Matrix::from_rows(doc.clone(), n))
}

fn check_conductors(mats: &[MatrixDoc], declared: Option<u32>, limit: u32) -> Result<()> {
    for entry in mats.iter().flatten().flatten() {
        let c = entry.conductor();
        if c > limit {
            return Err(syzlab_core::Error::limit(format!("conductor {c} exceeds limit {limit}")).into());
        }
        if let Some(n) = declared {
            if n % c != 0 {
                return Err(CliError::Schema(format!("entry with conductor {c} does not lie in Q(ζ_{n})")));
            }
        }
    }
    Ok(())
}

fn representation(group: &Arc<FiniteGroup>, images: &[MatrixDoc], what: &str) -> Result<Representation> {
    let gens = group.generators().len();
    if images.len() != gens {
        return Err(CliError::Schema(format!("{what}: {} generator images given, group has {gens} generators", images.len())));
    }
    let mats = images.iter().map(|m| to_matrix(m, what)).collect::<Result<Vec<_>>>()?;
    let degree = mats.first().map_or(0, Matrix::rows);
    if mats.iter().any(|m| m.rows() != degree) {
        return Err(CliError::Schema(format!("{what}: generator images have different sizes")));
    }
    Ok(Representation::from_generator_images(group.clone(), degree, mats)?)
}

pub fn parse_problem(text: &str, limits: &Limits) -> Result<Problem> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    let doc: ProblemDoc = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    let canonical = serde_json::to_string(&value).expect("JSON values serialize");
    let setting = doc.group.as_ref().map(|g| resolve(g, &doc, limits)).transpose()?;
    if setting.is_none() && (doc.rep.is_some() || doc.irreps.is_some()) {
        return Err(CliError::Schema("\"rep\" and \"irreps\" need a \"group\"".into()));
    }
    Ok(Problem { doc, canonical, setting })
}

fn resolve(field: &GroupField, doc: &ProblemDoc, limits: &Limits) -> Result<GroupSetting> {
    let (source, group, builtin_catalog, natural) = match field {
        GroupField::Name(name) => {
            if doc.irreps.is_some() {
                return Err(CliError::Schema("\"irreps\" cannot be combined with a builtin group".into()));
            }
            let b = builtin(name)?;
            if b.group.order() > limits.order_limit {
                return Err(syzlab_core::Error::limit(format!("group order {} exceeds limit {}", b.group.order(), limits.order_limit)).into());
            }
            (name.clone(), b.group, Some(b.catalog), b.natural)
        }
        GroupField::Spec(spec) => {
            let generators = match (&spec.permutation_generators, &spec.matrix_generators) {
                (Some(perms), None) => {
                    if spec.conductor.is_some() {
                        return Err(CliError::Schema("\"conductor\" applies to matrix generators only".into()));
                    }
                    let zero_based = perms
                        .iter()
                        .map(|p| {
                            p.iter()
                                .map(|&x| x.checked_sub(1).ok_or_else(|| CliError::Schema("permutation points are numbered from 1".into())))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Generators::Permutations(zero_based)
                }
                (None, Some(mats)) => {
                    check_conductors(mats, spec.conductor, limits.conductor_limit)?;
                    Generators::Matrices(mats.iter().map(|m| to_matrix(m, "matrix_generators")).collect::<Result<_>>()?)
                }
                _ => return Err(CliError::Schema("group needs exactly one of permutation_generators, matrix_generators".into())),
            };
            let generated = generate_group(&generators, limits.order_limit)?;
            (String::from("user"), generated.group, None, generated.natural)
        }
    };
    let catalog = match (&doc.irreps, builtin_catalog) {
        (Some(irreps), _) => {
            let reps = irreps
                .iter()
                .enumerate()
                .map(|(i, ir)| {
                    check_conductors(&ir.generator_images, None, limits.conductor_limit)?;
                    representation(&group, &ir.generator_images, &format!("irreps[{i}]"))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(IrrepCatalog::validated(group.clone(), reps)?)
        }
        (None, c) => c,
    };
    let rep = match &doc.rep {
        None => RepChoice::Explicit(natural),
        Some(RepObject { multiplicities: Some(ks), generator_images: None }) => {
            let cat = catalog.as_ref().ok_or_else(|| CliError::Schema("multiplicities need an irrep catalog".into()))?;
            if ks.len() != cat.len() {
                return Err(CliError::Schema(format!("multiplicity vector has length {}, catalog has {} irreps", ks.len(), cat.len())));
            }
            RepChoice::Multiplicities(ks.clone())
        }
        Some(RepObject { multiplicities: None, generator_images: Some(images) }) => {
            check_conductors(images, None, limits.conductor_limit)?;
            RepChoice::Explicit(representation(&group, images, "rep.generator_images")?)
        }
        Some(_) => return Err(CliError::Schema("rep needs exactly one of multiplicities, generator_images".into())),
    };
    Ok(GroupSetting { source, group, catalog, rep })
}
