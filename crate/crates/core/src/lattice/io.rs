//! Field import/export.
//!
//! CSV files start with a `# {json header}` line followed by a column header
//! `x1,…,xd,component,re,im` and one row per `(site, component)`. The JSON
//! form carries the same header next to a flat `[[re, im], …]` array in the
//! lattice's flat index order.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LatticeField, LatticeGrid};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub dim: usize,
    pub side: usize,
    pub spacing: f64,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub header: FieldHeader,
    pub values: Vec<[f64; 2]>,
}

impl LatticeField {
    pub fn header(&self) -> FieldHeader {
        FieldHeader {
            dim: self.grid().dim(),
            side: self.grid().side(),
            spacing: self.grid().spacing(),
            components: self.components(),
        }
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            header: self.header(),
            values: self.values().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_json(doc: &FieldJson) -> Result<Self> {
        let h = &doc.header;
        let grid = LatticeGrid::new(h.dim, h.side, h.spacing)?;
        let values = doc.values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        Self::new(grid, h.components, values)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# {}", serde_json::to_string(&self.header())?)?;
        let mut w = csv::Writer::from_writer(out);
        let d = self.grid().dim();
        let mut head: Vec<String> = (1..=d).map(|k| format!("x{k}")).collect();
        head.extend(["component", "re", "im"].map(String::from));
        w.write_record(&head)?;
        for site in 0..self.grid().sites() {
            let coords = self.grid().coords(site);
            for comp in 0..self.components() {
                let v = self.get(site, comp);
                let mut rec: Vec<String> = coords.iter().map(usize::to_string).collect();
                rec.push(comp.to_string());
                rec.push(v.re.to_string());
                rec.push(v.im.to_string());
                w.write_record(&rec)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: BufRead>(mut input: R) -> Result<Self> {
        let mut first = String::new();
        input.read_line(&mut first)?;
        let header: FieldHeader = serde_json::from_str(
            first
                .trim()
                .strip_prefix('#')
                .ok_or_else(|| Error::arg("field CSV must start with a '# {header}' line"))?
                .trim(),
        )?;
        let grid = LatticeGrid::new(header.dim, header.side, header.spacing)?;
        let mut field = LatticeField::zeros(grid, header.components);
        let mut seen = vec![false; field.values().len()];
        let mut rdr = csv::Reader::from_reader(input);
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() != header.dim + 3 {
                return Err(Error::arg("field CSV row has the wrong number of columns"));
            }
            let parse_idx = |s: &str| s.trim().parse::<usize>().map_err(|e| Error::arg(e.to_string()));
            let parse_f = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::arg(e.to_string()));
            let coords = (0..header.dim)
                .map(|k| parse_idx(&rec[k]))
                .collect::<Result<Vec<_>>>()?;
            if coords.iter().any(|&x| x >= header.side) {
                return Err(Error::arg("site coordinate outside the lattice"));
            }
            let comp = parse_idx(&rec[header.dim])?;
            if comp >= header.components {
                return Err(Error::arg("component index out of range"));
            }
            let v = Complex64::new(parse_f(&rec[header.dim + 1])?, parse_f(&rec[header.dim + 2])?);
            let site = grid.site(&coords);
            seen[site * header.components + comp] = true;
            field.set(site, comp, v);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::arg("field CSV does not cover every site and component"));
        }
        Ok(field)
    }
}
