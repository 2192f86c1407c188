//! CSV and JSON forms of step functions, spectra and Cesàro tables.
//!
//! CSV rows are `index,re,im` (`j,A_j` for Cesàro tables) with floats printed
//! to 17 significant digits. JSON documents are
//! `{"radices": [...], "level": N, "values": [[re, im], ...]}`.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cesaro::CesaroTable;
use crate::error::{Error, Result};
use crate::group::RadixStructure;
use crate::transform::{Spectrum, StepFunction};

/// Round-trip float formatting: 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GridDocument {
    pub radices: Vec<usize>,
    pub level: usize,
    pub values: Vec<[f64; 2]>,
}

impl GridDocument {
    fn new(structure: &RadixStructure, values: &[Complex64]) -> Self {
        GridDocument {
            radices: structure.radices().to_vec(),
            level: structure.level(),
            values: values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }

    fn into_parts(self) -> Result<(RadixStructure, Vec<Complex64>)> {
        if self.level != self.radices.len() {
            return Err(Error::LengthMismatch {
                expected: self.radices.len(),
                found: self.level,
            });
        }
        let structure = RadixStructure::new(self.radices)?;
        let values = self
            .values
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        Ok((structure, values))
    }
}

fn write_complex_csv<W: Write>(values: &[Complex64], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["index", "re", "im"])?;
    for (i, v) in values.iter().enumerate() {
        w.write_record([i.to_string(), format_float(v.re), format_float(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

fn read_complex_csv<R: Read>(reader: R) -> Result<Vec<Complex64>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut values = Vec::new();
    for (row, record) in r.deserialize::<(usize, f64, f64)>().enumerate() {
        let (index, re, im) = record?;
        if index != row {
            return Err(Error::Parse(format!("row {row} carries index {index}")));
        }
        values.push(Complex64::new(re, im));
    }
    Ok(values)
}

impl StepFunction {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        write_complex_csv(self.values(), writer)
    }

    /// CSV carries no radices; the structure is supplied by the caller.
    pub fn read_csv<R: Read>(structure: &RadixStructure, reader: R) -> Result<Self> {
        StepFunction::new(structure.clone(), read_complex_csv(reader)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&GridDocument::new(
            self.structure(),
            self.values(),
        ))?)
    }

    pub fn from_json<R: Read>(reader: R) -> Result<Self> {
        let doc: GridDocument = serde_json::from_reader(reader)?;
        let (structure, values) = doc.into_parts()?;
        StepFunction::new(structure, values)
    }
}

impl Spectrum {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        write_complex_csv(self.coeffs(), writer)
    }

    pub fn read_csv<R: Read>(structure: &RadixStructure, reader: R) -> Result<Self> {
        Spectrum::new(structure.clone(), read_complex_csv(reader)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&GridDocument::new(
            self.structure(),
            self.coeffs(),
        ))?)
    }

    pub fn from_json<R: Read>(reader: R) -> Result<Self> {
        let doc: GridDocument = serde_json::from_reader(reader)?;
        let (structure, values) = doc.into_parts()?;
        Spectrum::new(structure, values)
    }
}

impl CesaroTable {
    /// Columns `j, A_j`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["j", "A_j"])?;
        for (j, v) in self.values().iter().enumerate() {
            w.write_record([j.to_string(), format_float(*v)])?;
        }
        w.flush()?;
        Ok(())
    }
}
