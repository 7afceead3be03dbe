//! Summary of the tensor checks for one `m`, as served by the command line.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::algebra::{canonical_connection, product_connection, InvariantConnection};
use super::graded::{graded_components, TableRow};
use super::matrix::{format_rational, rational, Matrix};
use super::tensors::{tensors, weyl_trace};
use super::ConnectionError;

/// Number of fixed shifts `ξ` the table check runs through.
pub const TABLE_SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tensor: String,
    pub index: Vec<usize>,
    /// Exact value as `p/q`.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub row: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub m: usize,
    pub product_abelian: usize,
    pub torsion_zero: bool,
    pub weyl_zero: bool,
    pub ricci_zero: bool,
    pub weyl_trace_zero: bool,
    pub product_weyl_zero: bool,
    pub product_formulas_hold: bool,
    /// Every tabulated `f1'` closed form matched for every sample shift.
    pub f_table_ok: bool,
    pub f_table_rows: Vec<RowCheck>,
    /// Some table entry was nonzero for every sample shift.
    pub f1_nonvanishing: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Deterministic trace-free rational shifts for the table check.
pub fn sample_shifts(m: usize, count: usize) -> Vec<Matrix> {
    (0..count)
        .map(|s| {
            let mut xi = Matrix::from_fn(m, |p, q| {
                let numer = ((p * 7 + q * 11 + s * 13) % 17) as i64 - 8;
                let denom = 1 + ((p + 2 * q + s) % 5) as i64;
                rational(numer, denom)
            });
            let tr = xi.trace();
            xi[(m - 1, m - 1)] -= tr;
            xi
        })
        .collect()
}

pub fn geometry_report(
    m: usize,
    product_abelian: usize,
) -> Result<GeometryReport, ConnectionError> {
    let conn = canonical_connection(m)?;
    let set = tensors(&conn)?;
    let flat = InvariantConnection::flat_abelian(product_abelian);
    let product = product_connection(&flat, &conn);
    let product_set = tensors(&product)?;
    let check = super::tensors::check_product_formulas(&flat, &conn, &product_set)?;

    let hom = graded_components(m)?;
    let shifts = sample_shifts(m, TABLE_SAMPLES);
    let mut f_table_rows = Vec::new();
    for row in TableRow::ALL {
        let matches = shifts.iter().all(|xi| {
            let g = hom
                .clone()
                .with_shift(xi.clone())
                .expect("samples are trace-free");
            (0..m - 1).all(|i| {
                let (x, y) = row.matrices(m, i);
                g.f1_shifted(&x, &y) == row.tabulated(xi, i)
            })
        });
        f_table_rows.push(RowCheck {
            row: row.number(),
            matches,
        });
    }
    let f1_nonvanishing = shifts.iter().all(|xi| {
        hom.clone()
            .with_shift(xi.clone())
            .expect("samples are trace-free")
            .nonvanishing_witness()
            .is_some()
    });

    let witness = set.ricci.first_nonzero().map(|(idx, v)| Witness {
        tensor: "ricci".into(),
        index: idx.to_vec(),
        value: format_rational(v),
    });
    Ok(GeometryReport {
        m,
        product_abelian,
        torsion_zero: set.torsion.is_zero(),
        weyl_zero: set.weyl.is_zero(),
        ricci_zero: set.ricci.is_zero(),
        weyl_trace_zero: weyl_trace(&set.weyl).iter().all(|(_, v)| v.is_zero()),
        product_weyl_zero: product_set.weyl.is_zero(),
        product_formulas_hold: check.formulas_hold(),
        f_table_ok: f_table_rows.iter().all(|r| r.matches),
        f_table_rows,
        f1_nonvanishing,
        witness,
    })
}

impl GeometryReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "m={} torsion_zero={} weyl_zero={} ricci_zero={} weyl_trace_zero={}\n",
            self.m, self.torsion_zero, self.weyl_zero, self.ricci_zero, self.weyl_trace_zero
        );
        out += &format!(
            "product_abelian={} product_weyl_zero={} product_formulas_hold={}\n",
            self.product_abelian, self.product_weyl_zero, self.product_formulas_hold
        );
        let rows: Vec<String> = self
            .f_table_rows
            .iter()
            .map(|r| format!("{}:{}", r.row, if r.matches { "ok" } else { "mismatch" }))
            .collect();
        out += &format!(
            "f_table_ok={} rows={} f1_nonvanishing={}\n",
            self.f_table_ok,
            rows.join(","),
            self.f1_nonvanishing
        );
        if let Some(w) = &self.witness {
            let idx: Vec<String> = w.index.iter().map(usize::to_string).collect();
            out += &format!("witness {}[{}]={}\n", w.tensor, idx.join(","), w.value);
        }
        out
    }
}
