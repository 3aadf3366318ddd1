use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyMat;
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, parse_rat, Mat};

/// Wire form: `coeffs[e][i][j]` is entry `(i, j)` of the coefficient of `z^e`, as `"p/q"`.
#[derive(Serialize, Deserialize)]
struct PolyMatJson {
    m: usize,
    n: usize,
    grade: usize,
    coeffs: Vec<Vec<Vec<String>>>,
}

impl PolyMat {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<PolyMat> {
        Ok(serde_json::from_str(s)?)
    }

    fn from_wire(w: PolyMatJson) -> Result<PolyMat> {
        if w.coeffs.len() != w.grade + 1 {
            return Err(Error::Parse(format!(
                "grade {} needs {} coefficient matrices, found {}",
                w.grade,
                w.grade + 1,
                w.coeffs.len()
            )));
        }
        let mut mats = Vec::with_capacity(w.coeffs.len());
        for (e, c) in w.coeffs.iter().enumerate() {
            if c.len() != w.m || c.iter().any(|r| r.len() != w.n) {
                return Err(Error::Parse(format!(
                    "coefficient {e} is not {}x{}",
                    w.m, w.n
                )));
            }
            let rows = c
                .iter()
                .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            mats.push(Mat::from_rows(rows, w.n));
        }
        if w.m == 0 || w.n == 0 {
            return Err(Error::Parse("empty matrix polynomial".into()));
        }
        PolyMat::new(mats)
    }
}

impl Serialize for PolyMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs()
            .iter()
            .map(|c| {
                (0..c.rows())
                    .map(|i| c.row(i).iter().map(fmt_rat).collect())
                    .collect()
            })
            .collect();
        PolyMatJson {
            m: self.rows(),
            n: self.cols(),
            grade: self.grade(),
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyMatJson::deserialize(d)?;
        PolyMat::from_wire(w).map_err(serde::de::Error::custom)
    }
}
