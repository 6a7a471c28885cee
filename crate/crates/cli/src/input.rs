//! Input documents. All are JSON objects; unknown fields are rejected.

use std::fs;
use std::path::Path;

use fuzzyrel::{
    Composition, RuleTrainingInstance, SystemProblem, TrainingSet, UnitMatrix, UnitVector,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    #[serde(default)]
    pub kind: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainingFile {
    pub inputs: Vec<Vec<f64>>,
    pub outputs: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceBlock {
    pub gamma: Vec<Vec<f64>>,
    pub target: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RulesFile {
    Wrapped { instances: Vec<InstanceBlock> },
    Bare(Vec<InstanceBlock>),
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_unit(field: &str, values: &[f64]) -> Result<(), String> {
    for (i, &v) in values.iter().enumerate() {
        if UnitVector::new(vec![v]).is_err() {
            return Err(format!("{field}[{i}]: value {v} is outside [0, 1]"));
        }
    }
    Ok(())
}

pub fn matrix(field: &str, rows: &[Vec<f64>]) -> Result<UnitMatrix, String> {
    let first = rows
        .first()
        .ok_or_else(|| format!("{field}: must have at least one row"))?;
    if first.is_empty() {
        return Err(format!("{field}: rows must not be empty"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != first.len() {
            return Err(format!(
                "{field}: row {i} has {} entries, expected {}",
                row.len(),
                first.len()
            ));
        }
        check_unit(&format!("{field}[{i}]"), row)?;
    }
    UnitMatrix::from_rows(rows).map_err(|e| format!("{field}: {e}"))
}

pub fn vector(field: &str, values: &[f64]) -> Result<UnitVector, String> {
    if values.is_empty() {
        return Err(format!("{field}: must not be empty"));
    }
    check_unit(field, values)?;
    UnitVector::from_slice(values).map_err(|e| format!("{field}: {e}"))
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<SystemProblem, String> {
        read_json::<ProblemFile>(path)?.into_problem()
    }

    pub fn into_problem(self) -> Result<SystemProblem, String> {
        let kind = match self.kind.as_deref() {
            None | Some("maxmin") => Composition::MaxMin,
            Some("minmax") => Composition::MinMax,
            Some(other) => {
                return Err(format!(
                    "kind: expected \"maxmin\" or \"minmax\", found \"{other}\""
                ))
            }
        };
        let matrix = matrix("matrix", &self.matrix)?;
        let rhs = vector("rhs", &self.rhs)?;
        if rhs.len() != matrix.rows() {
            return Err(format!(
                "rhs: length {} does not match the {} matrix rows",
                rhs.len(),
                matrix.rows()
            ));
        }
        SystemProblem::new(matrix, rhs, kind).map_err(|e| e.to_string())
    }
}

impl TrainingFile {
    pub fn load(path: &Path) -> Result<TrainingSet, String> {
        read_json::<TrainingFile>(path)?.into_training_set()
    }

    pub fn into_training_set(self) -> Result<TrainingSet, String> {
        let inputs = matrix("inputs", &self.inputs)?;
        let outputs = matrix("outputs", &self.outputs)?;
        if inputs.rows() != outputs.rows() {
            return Err(format!(
                "outputs: {} rows, but inputs has {}",
                outputs.rows(),
                inputs.rows()
            ));
        }
        TrainingSet::new(
            (0..inputs.rows()).map(|i| inputs.row_vector(i)).collect(),
            (0..outputs.rows()).map(|i| outputs.row_vector(i)).collect(),
        )
        .map_err(|e| e.to_string())
    }
}

impl RulesFile {
    pub fn load(path: &Path) -> Result<Vec<RuleTrainingInstance>, String> {
        read_json::<RulesFile>(path)?.into_instances()
    }

    pub fn into_instances(self) -> Result<Vec<RuleTrainingInstance>, String> {
        let blocks = match self {
            RulesFile::Wrapped { instances } => instances,
            RulesFile::Bare(instances) => instances,
        };
        if blocks.is_empty() {
            return Err("instances: the instance list is empty".into());
        }
        let mut out = Vec::with_capacity(blocks.len());
        let mut columns = None;
        for (k, block) in blocks.into_iter().enumerate() {
            let gamma = matrix(&format!("instances[{k}].gamma"), &block.gamma)?;
            let target = vector(&format!("instances[{k}].target"), &block.target)?;
            if target.len() != gamma.rows() {
                return Err(format!(
                    "instances[{k}].target: length {} does not match the {} gamma rows",
                    target.len(),
                    gamma.rows()
                ));
            }
            match columns {
                Some(p) if p != gamma.cols() => {
                    return Err(format!(
                        "instances[{k}].gamma: {} columns, but earlier instances have {p}",
                        gamma.cols()
                    ))
                }
                _ => columns = Some(gamma.cols()),
            }
            out.push(RuleTrainingInstance::new(gamma, target).map_err(|e| e.to_string())?);
        }
        Ok(out)
    }
}
