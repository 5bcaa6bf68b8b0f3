use serde::{Deserialize, Serialize};

use super::ExplicitLimitSeries;
use crate::error::{Error, Result};
use crate::exactmath::{parse_rat, Mat, Subspace};

pub const FORMAT_TAG: &str = "llab/1";

/// On-disk form of a series. Matrices are row-major arrays of rational
/// strings; subspaces are given by basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub format: String,
    pub d: usize,
    pub r: usize,
    pub ambient_dims: Vec<usize>,
    pub up: Vec<Vec<Vec<String>>>,
    pub down: Vec<Vec<Vec<String>>>,
    pub y0: Vec<Vec<Vec<String>>>,
    pub z0: Vec<Vec<Vec<String>>>,
    pub v: Vec<Vec<Vec<String>>>,
}

impl From<&ExplicitLimitSeries> for SeriesDoc {
    fn from(s: &ExplicitLimitSeries) -> Self {
        let subs = |xs: &[Subspace]| xs.iter().map(|x| x.basis().to_string_rows()).collect();
        SeriesDoc {
            format: FORMAT_TAG.into(),
            d: s.d,
            r: s.r,
            ambient_dims: s.ambient_dims.clone(),
            up: s.up.iter().map(Mat::to_string_rows).collect(),
            down: s.down.iter().map(Mat::to_string_rows).collect(),
            y0: subs(&s.y0),
            z0: subs(&s.z0),
            v: subs(&s.v),
        }
    }
}

fn field(name: &str, i: usize, e: Error) -> Error {
    Error::Input(format!("{name}[{i}]: {e}"))
}

impl TryFrom<SeriesDoc> for ExplicitLimitSeries {
    type Error = Error;

    fn try_from(doc: SeriesDoc) -> Result<Self> {
        if doc.format != FORMAT_TAG {
            return Err(Error::Input(format!("format is {:?}, expected {FORMAT_TAG:?}", doc.format)));
        }
        let dims = &doc.ambient_dims;
        let dim = |name: &str, i: usize| {
            dims.get(i)
                .copied()
                .ok_or_else(|| Error::Input(format!("{name}[{i}]: no ambient dimension for level {i}")))
        };
        let maps = |name: &str, ms: &[Vec<Vec<String>>], domain_shift: usize| {
            ms.iter()
                .enumerate()
                .map(|(i, rows)| {
                    let cols = dim(name, i + domain_shift)?;
                    Mat::from_string_rows(rows, cols).map_err(|e| field(name, i, e))
                })
                .collect::<Result<Vec<_>>>()
        };
        let subs = |name: &str, xs: &[Vec<Vec<String>>]| {
            xs.iter()
                .enumerate()
                .map(|(i, rows)| {
                    let n = dim(name, i)?;
                    let vecs = rows
                        .iter()
                        .map(|row| row.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| field(name, i, e))?;
                    Subspace::span(n, &vecs).map_err(|e| field(name, i, e))
                })
                .collect::<Result<Vec<_>>>()
        };
        let up = maps("up", &doc.up, 0)?;
        let down = maps("down", &doc.down, 1)?;
        let y0 = subs("y0", &doc.y0)?;
        let z0 = subs("z0", &doc.z0)?;
        let v = subs("v", &doc.v)?;
        ExplicitLimitSeries::new(doc.d, doc.r, doc.ambient_dims, up, down, y0, z0, v)
            .map_err(|e| Error::Input(e.to_string()))
    }
}

impl ExplicitLimitSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SeriesDoc::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        doc.try_into()
    }
}
