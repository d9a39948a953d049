//! The design file: a JSON document holding the bases, their weights, the
//! provenance of the family and an optional verification stamp.
//!
//! Matrix entries are written as `[re, im]` pairs with 17 significant digits,
//! so parsing a written file reproduces every entry bit for bit.

use std::io;
use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};

use super::family::{Basis, Provenance, Weight, WeightedBasisFamily};
use super::verify::DesignReport;

pub const FORMAT_VERSION: &str = "basis-design/1";

#[derive(Serialize, Deserialize)]
struct BasisRecord {
    /// `"num/den"` when the weight is known exactly.
    weight: Option<String>,
    weight_decimal: f64,
    /// Row-major; `matrix[i][j]` is component `i` of basis vector `j`.
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct DesignRecord {
    format: String,
    dimension: usize,
    bases: Vec<BasisRecord>,
    provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    verification: Option<DesignReport>,
}

/// A parsed design file.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignFile {
    pub family: WeightedBasisFamily,
    pub verification: Option<DesignReport>,
}

/// Pretty printing with every float in `{:.16e}` form.
struct Precise(PrettyFormatter<'static>);

impl Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Writes `value` as pretty JSON with 17-digit floats.
pub(crate) fn to_precise_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Precise(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("in-memory serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn serialize_design(family: &WeightedBasisFamily, verification: Option<&DesignReport>) -> String {
    let d = family.dim();
    let bases = family
        .iter()
        .map(|(b, w)| BasisRecord {
            weight: w.exact.map(|r| format!("{}/{}", r.numer(), r.denom())),
            weight_decimal: w.value,
            matrix: (0..d)
                .map(|i| (0..d).map(|j| [b.matrix()[(i, j)].re, b.matrix()[(i, j)].im]).collect())
                .collect(),
        })
        .collect();
    to_precise_json(&DesignRecord {
        format: FORMAT_VERSION.into(),
        dimension: d,
        bases,
        provenance: family.provenance().clone(),
        verification: verification.cloned(),
    })
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::Parse(format!("weight {s:?} is not of the form num/den"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    let d: u64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

pub fn parse_design(text: &str) -> Result<DesignFile> {
    let record: DesignRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if record.format != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format {:?}", record.format)));
    }
    let d = record.dimension;
    let mut bases = Vec::with_capacity(record.bases.len());
    let mut weights = Vec::with_capacity(record.bases.len());
    for (a, b) in record.bases.into_iter().enumerate() {
        if b.matrix.len() != d || b.matrix.iter().any(|row| row.len() != d) {
            return Err(Error::Parse(format!("basis {a} is not a {d}x{d} matrix")));
        }
        let m = CMatrix::from_fn(d, d, |i, j| c(b.matrix[i][j][0], b.matrix[i][j][1]));
        bases.push(Basis::new(m)?);
        weights.push(match b.weight {
            Some(s) => {
                let r = parse_ratio(&s)?;
                Weight::exact(*r.numer(), *r.denom())
            }
            None => Weight::approx(b.weight_decimal),
        });
    }
    Ok(DesignFile {
        family: WeightedBasisFamily::new(bases, weights, record.provenance)?,
        verification: record.verification,
    })
}

pub fn write_design(path: &Path, family: &WeightedBasisFamily, verification: Option<&DesignReport>) -> Result<()> {
    std::fs::write(path, serialize_design(family, verification))?;
    Ok(())
}

pub fn read_design(path: &Path) -> Result<DesignFile> {
    parse_design(&std::fs::read_to_string(path)?)
}
