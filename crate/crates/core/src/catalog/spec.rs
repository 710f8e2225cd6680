//! JSON presentations of algebras and morphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cdga::{parse_polynomial, AlgebraKind, AlgebraMorphism, DGAlgebra, Generator};
use crate::error::{Error, Result};
use crate::hochschild::MorphismSetup;
use crate::linalg::scalar::{format_scalar, parse_scalar};
use crate::poincare::{DualityData, PdStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i32,
}

/// `epsilon(volume_monomial) = value`, zero on the rest of the top degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationSpec {
    pub degree: i32,
    pub volume_monomial: String,
    pub value: ScalarSpec,
}

/// A rational number written either as a JSON integer or as a string like `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindSpec {
    Sullivan,
    Finite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SullivanModelSpec {
    pub algebra: Box<AlgebraSpec>,
    /// Images of the model's generators in the algebra.
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<OrientationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<KindSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sullivan_model: Option<SullivanModelSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub algebras: BTreeMap<String, AlgebraSpec>,
    pub morphism: MorphismSpec,
}

/// Contents of an input file: one algebra, or two algebras and a morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    Morphism(PairSpec),
    Algebra(AlgebraSpec),
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let is_pair = value.get("morphism").is_some() || value.get("algebras").is_some();
        let parsed = if is_pair {
            serde_json::from_value(value).map(SpecFile::Morphism)
        } else {
            serde_json::from_value(value).map(SpecFile::Algebra)
        };
        parsed.map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn build(&self, default_name: &str) -> Result<Subject> {
        match self {
            SpecFile::Algebra(a) => Ok(Subject::Algebra(a.build(default_name)?)),
            SpecFile::Morphism(p) => p.build(),
        }
    }
}

impl ScalarSpec {
    fn value(&self) -> Result<crate::linalg::Scalar> {
        match self {
            ScalarSpec::Int(n) => Ok(crate::linalg::scalar::int(*n)),
            ScalarSpec::Text(s) => parse_scalar(s),
        }
    }
}

/// A finite-dimensional algebra with its duality data and Sullivan model,
/// when given.
#[derive(Debug)]
pub struct PdAlgebra {
    pub algebra: Arc<DGAlgebra>,
    pub duality: Option<Arc<DualityData>>,
    pub model: Option<Arc<AlgebraMorphism>>,
}

impl PdAlgebra {
    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn duality(&self) -> Result<&Arc<DualityData>> {
        self.duality
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("{} has no orientation", self.name())))
    }

    pub fn model(&self) -> Result<&Arc<AlgebraMorphism>> {
        self.model
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("{} has no Sullivan model", self.name())))
    }
}

/// What a command operates on.
#[derive(Debug)]
pub enum Subject {
    Algebra(PdAlgebra),
    Morphism { source: PdAlgebra, target: PdAlgebra, f: Arc<AlgebraMorphism> },
}

impl Subject {
    /// The algebra, or the source of the morphism.
    pub fn primary(&self) -> &PdAlgebra {
        match self {
            Subject::Algebra(a) => a,
            Subject::Morphism { source, .. } => source,
        }
    }

    pub fn morphism(&self) -> Option<&Arc<AlgebraMorphism>> {
        match self {
            Subject::Algebra(_) => None,
            Subject::Morphism { f, .. } => Some(f),
        }
    }

    pub fn setup(&self) -> Result<MorphismSetup> {
        match self {
            Subject::Algebra(a) => Err(Error::Hypothesis(format!("{} is an algebra, not a morphism", a.name()))),
            Subject::Morphism { source, target, f } => MorphismSetup::new(
                f.clone(),
                source.model()?.clone(),
                source.duality()?.clone(),
                target.duality()?.clone(),
            ),
        }
    }
}

fn images_in_order(src: &DGAlgebra, images: &BTreeMap<String, String>) -> Result<Vec<(String, String)>> {
    for g in images.keys() {
        if src.generator_index(g).is_none() {
            return Err(Error::UnknownGenerator(g.clone()));
        }
    }
    Ok(src
        .generators()
        .iter()
        .map(|g| (g.name.clone(), images.get(&g.name).cloned().unwrap_or_else(|| "0".into())))
        .collect())
}

fn build_morphism(src: Arc<DGAlgebra>, tgt: Arc<DGAlgebra>, images: &BTreeMap<String, String>) -> Result<AlgebraMorphism> {
    let pairs = images_in_order(&src, images)?;
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    AlgebraMorphism::from_strings(src, tgt, &refs)
}

impl AlgebraSpec {
    /// The bare algebra, without orientation or model.
    pub fn build_algebra(&self, default_name: &str) -> Result<DGAlgebra> {
        let name = self.name.clone().unwrap_or_else(|| default_name.to_string());
        let gens: Vec<Generator> = self.generators.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
        let lookup = |s: &str| gens.iter().position(|g| g.name == s);
        let relations = self.relations.iter().map(|r| parse_polynomial(r, &lookup)).collect::<Result<Vec<_>>>()?;
        let mut differential = vec![Vec::new(); gens.len()];
        for (g, v) in &self.differential {
            let i = lookup(g).ok_or_else(|| Error::UnknownGenerator(g.clone()))?;
            differential[i] = parse_polynomial(v, &lookup)?;
        }
        let kind = self.kind.map(|k| match k {
            KindSpec::Sullivan => AlgebraKind::Sullivan,
            KindSpec::Finite => AlgebraKind::FiniteDimensional,
        });
        DGAlgebra::new(name, gens, relations, differential, kind)
    }

    pub fn build(&self, default_name: &str) -> Result<PdAlgebra> {
        let algebra = Arc::new(self.build_algebra(default_name)?);
        let duality = match &self.orientation {
            None => None,
            Some(o) => {
                let volume = algebra.parse(&o.volume_monomial)?;
                match algebra.degree_of(&volume)? {
                    Some(d) if d == o.degree => {}
                    _ => {
                        return Err(Error::Parse(format!(
                            "orientation monomial {} does not have degree {}",
                            o.volume_monomial, o.degree
                        )))
                    }
                }
                let pd = PdStructure::from_volume(algebra.clone(), &volume, o.value.value()?)?;
                Some(Arc::new(DualityData::new(pd)?))
            }
        };
        let model = match &self.sullivan_model {
            None => None,
            Some(s) => {
                let base = Arc::new(s.algebra.build_algebra(&format!("{}_model", algebra.name()))?);
                if base.kind() != AlgebraKind::Sullivan {
                    return Err(Error::Parse(format!("the model of {} is not a Sullivan algebra", algebra.name())));
                }
                Some(Arc::new(build_morphism(base, algebra.clone(), &s.images)?))
            }
        };
        Ok(PdAlgebra { algebra, duality, model })
    }

    /// Reads off a spec from built data, writing the differential and
    /// relations in normal form.
    pub fn describe(pd: &PdAlgebra) -> Self {
        let mut spec = Self::describe_algebra(&pd.algebra);
        spec.orientation = pd.duality.as_ref().map(|dd| {
            let a = dd.algebra();
            let n = dd.formal_dim();
            let basis = a.basis(n);
            let (j, c) = &dd.pd().orientation().entries()[0];
            OrientationSpec {
                degree: n,
                volume_monomial: a.format_monomial(&basis.monomials[*j]),
                value: ScalarSpec::Text(format_scalar(c)),
            }
        });
        spec.sullivan_model = pd.model.as_ref().map(|m| SullivanModelSpec {
            algebra: Box::new(Self::describe_algebra(m.source())),
            images: m
                .source()
                .generators()
                .iter()
                .zip(m.images())
                .filter(|(_, e)| !e.is_zero())
                .map(|(g, e)| (g.name.clone(), m.target().format(e)))
                .collect(),
        });
        spec
    }

    fn describe_algebra(a: &DGAlgebra) -> Self {
        AlgebraSpec {
            name: Some(a.name().to_string()),
            generators: a.generators().iter().map(|g| GeneratorSpec { name: g.name.clone(), degree: g.degree }).collect(),
            relations: a.relations().iter().map(|r| a.format(r)).collect(),
            differential: (0..a.n_generators())
                .filter(|&i| !a.differential_of(i).is_zero())
                .map(|i| (a.generators()[i].name.clone(), a.format(a.differential_of(i))))
                .collect(),
            orientation: None,
            kind: Some(match a.kind() {
                AlgebraKind::Sullivan => KindSpec::Sullivan,
                AlgebraKind::FiniteDimensional => KindSpec::Finite,
            }),
            sullivan_model: None,
        }
    }
}

impl PairSpec {
    pub fn build(&self) -> Result<Subject> {
        let get = |key: &str| {
            self.algebras
                .get(key)
                .ok_or_else(|| Error::Parse(format!("morphism refers to unknown algebra `{key}`")))
        };
        let source = get(&self.morphism.source)?.build(&self.morphism.source)?;
        let target = get(&self.morphism.target)?.build(&self.morphism.target)?;
        let f = Arc::new(build_morphism(source.algebra.clone(), target.algebra.clone(), &self.morphism.images)?);
        Ok(Subject::Morphism { source, target, f })
    }

    pub fn describe(source_key: &str, target_key: &str, subject: &Subject) -> Option<Self> {
        let Subject::Morphism { source, target, f } = subject else { return None };
        let algebras =
            BTreeMap::from([(source_key.to_string(), AlgebraSpec::describe(source)), (target_key.to_string(), AlgebraSpec::describe(target))]);
        let images = f
            .source()
            .generators()
            .iter()
            .zip(f.images())
            .filter(|(_, e)| !e.is_zero())
            .map(|(g, e)| (g.name.clone(), f.target().format(e)))
            .collect();
        Some(PairSpec {
            algebras,
            morphism: MorphismSpec { source: source_key.into(), target: target_key.into(), images },
        })
    }
}
