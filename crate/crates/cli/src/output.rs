//! Long-form CSV shared by sweeps and grids.
//!
//! Floats are written as the shortest decimal that parses back to the same
//! `f64`; a missing oracle value is an empty field.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str =
    "omega,Omega,T,ln_T,convention,energy,passive_energy,ergotropy,partition,oracle_min_energy";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub omega: f64,
    #[serde(rename = "Omega")]
    pub coupling: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "ln_T")]
    pub ln_temperature: f64,
    pub convention: String,
    pub energy: f64,
    pub passive_energy: f64,
    pub ergotropy: f64,
    pub partition: f64,
    pub oracle_min_energy: Option<f64>,
}

pub fn write_csv<W: Write>(out: W, records: &[OutputRecord]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    if records.is_empty() {
        wtr.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[OutputRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<OutputRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
