//! File formats: complex numbers as `[re, im]`, quaternions as `[x0, x1, x2, x3]`,
//! matrices as row-major nested arrays, metrics as signature lists.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::indefinite::Metric;
use crate::linalg::{re, CMat, C64};
use crate::poly::Poly;
use crate::schur::{Colligation, FiniteModelSpace, RandomShape};
use crate::suites::{Suite, SuiteConfig};
use crate::unified::{AbPair, Region};

/// Row-major complex matrix.
pub type Rows = Vec<Vec<C64>>;

pub fn to_rows(m: &CMat) -> Rows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Rebuild a matrix; `cols` fixes the width when there are no rows.
pub fn from_rows(name: &str, rows: &Rows, cols: usize) -> Result<CMat, CliError> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(CliError::Input(format!(
            "{name}: row of length {} where {cols} was expected",
            r.len()
        )));
    }
    Ok(CMat::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

/// Which identities `verify-identities` runs, and at what size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    #[serde(default = "all_suites")]
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub config: SuiteConfig,
}

fn all_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

impl Default for SuiteFile {
    fn default() -> Self {
        Self {
            suites: all_suites(),
            config: SuiteConfig::default(),
        }
    }
}

/// Shape of a random colligation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShapeFile {
    /// `[dim P, ind_-(P)]`.
    pub state: (usize, usize),
    /// `[dim C, ind_-(C)]`.
    pub output: (usize, usize),
    pub extra_input: usize,
    pub spread: f64,
    pub alpha: C64,
}

impl Default for ShapeFile {
    fn default() -> Self {
        let s = RandomShape::scalar(3, 1);
        Self {
            state: s.state,
            output: s.output,
            extra_input: s.extra_input,
            spread: s.spread,
            alpha: s.alpha,
        }
    }
}

impl ShapeFile {
    pub fn to_shape(&self) -> Result<RandomShape, CliError> {
        if self.state.1 > self.state.0 || self.output.1 > self.output.0 {
            return Err(CliError::Input("negative index exceeds dimension".into()));
        }
        if self.state.0 + self.output.0 + self.extra_input > 64 {
            return Err(CliError::Input(
                "colligations are limited to 64 x 64 blocks".into(),
            ));
        }
        if !(self.spread > 0.0 && self.spread.is_finite()) {
            return Err(CliError::Input(format!(
                "spread {} must be positive",
                self.spread
            )));
        }
        Ok(RandomShape {
            state: self.state,
            output: self.output,
            extra_input: self.extra_input,
            spread: self.spread,
            alpha: self.alpha,
        })
    }
}

/// A colligation `[[T, F], [G, H]]` with its metrics and base point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColligationFile {
    pub t: Rows,
    pub f: Rows,
    pub g: Rows,
    pub h: Rows,
    pub p: Metric,
    pub d: Metric,
    pub c: Metric,
    #[serde(default = "one")]
    pub alpha: C64,
}

fn one() -> C64 {
    re(1.0)
}

impl ColligationFile {
    pub fn from_colligation(col: &Colligation) -> Self {
        Self {
            t: to_rows(&col.t),
            f: to_rows(&col.f),
            g: to_rows(&col.g),
            h: to_rows(&col.h),
            p: col.p.clone(),
            d: col.d.clone(),
            c: col.c.clone(),
            alpha: col.alpha,
        }
    }

    pub fn to_colligation(&self, tol: f64) -> Result<Colligation, CliError> {
        let (np, nd) = (self.p.dim(), self.d.dim());
        Colligation::new(
            from_rows("t", &self.t, np)?,
            from_rows("f", &self.f, nd)?,
            from_rows("g", &self.g, np)?,
            from_rows("h", &self.h, nd)?,
            self.p.clone(),
            self.d.clone(),
            self.c.clone(),
            self.alpha,
            tol,
        )
        .map_err(|e| CliError::Input(format!("colligation: {e}")))
    }
}

/// An `(a, b)` pair; coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbPairFile {
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    pub domain: Region,
}

impl AbPairFile {
    pub fn to_pair(&self) -> Result<AbPair, CliError> {
        AbPair::new(
            Poly::new(self.a.clone()),
            Poly::new(self.b.clone()),
            self.domain,
        )
        .map_err(|e| CliError::Input(format!("(a, b) pair: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SettingFile {
    Disk,
    HalfPlane,
    Ab(AbPairFile),
}

/// Input of `kernel-report`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelJobFile {
    pub colligation: ColligationFile,
    pub setting: SettingFile,
    /// Evaluation points; seeded regular points are drawn when absent.
    #[serde(default)]
    pub points: Option<Vec<C64>>,
    /// Number of points to draw when `points` is absent.
    #[serde(default = "default_point_count")]
    pub point_count: usize,
}

fn default_point_count() -> usize {
    8
}

/// Input of `construct-schur`.
///
/// The model space is given either by `gram`, `a_alpha` and `e_alpha`, or by
/// `blaschke_zeros` (half-plane kernel sections at the zeros). When zeros are
/// present they also serve as the reference for the kernel-match check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub alpha: C64,
    #[serde(default = "scalar_metric")]
    pub coeff_metric: Metric,
    #[serde(default = "half_plane")]
    pub setting: SettingFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_alpha: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_alpha: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blaschke_zeros: Option<Vec<C64>>,
}

fn scalar_metric() -> Metric {
    Metric::euclidean(1)
}

fn half_plane() -> SettingFile {
    SettingFile::HalfPlane
}

impl ModelFile {
    /// The explicit matrices, when all three are present.
    pub fn explicit_space(&self) -> Result<Option<FiniteModelSpace>, CliError> {
        match (&self.gram, &self.a_alpha, &self.e_alpha) {
            (Some(p), Some(a), Some(e)) => {
                let n = p.len();
                let gram = from_rows("gram", p, n)?;
                let a = from_rows("a_alpha", a, n)?;
                let e = from_rows("e_alpha", e, n)?;
                FiniteModelSpace::new(gram, a, e, self.coeff_metric.clone(), self.alpha)
                    .map(Some)
                    .map_err(|e| CliError::Input(format!("model space: {e}")))
            }
            (None, None, None) => Ok(None),
            _ => Err(CliError::Input(
                "gram, a_alpha and e_alpha must be given together".into(),
            )),
        }
    }

    pub fn with_space(&self, m: &FiniteModelSpace) -> Self {
        Self {
            gram: Some(to_rows(&m.gram)),
            a_alpha: Some(to_rows(&m.a_alpha)),
            e_alpha: Some(to_rows(&m.e_alpha)),
            ..self.clone()
        }
    }
}

/// Input of `classify-region`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJobFile {
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    pub domain: Region,
    /// Points to classify; the domain grid is summarized when absent.
    #[serde(default)]
    pub points: Option<Vec<C64>>,
}

impl RegionJobFile {
    pub fn pair(&self) -> AbPairFile {
        AbPairFile {
            a: self.a.clone(),
            b: self.b.clone(),
            domain: self.domain,
        }
    }
}
