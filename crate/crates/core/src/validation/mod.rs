//! Reproduction of published tables as pass/fail reports.
//!
//! Every expected number comes from the [`Expectations`] file; nothing is
//! hard-coded here except which rows are known misprints.

mod bound;
mod expectations;
mod overlap;
mod report;
mod tables;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::GridSettings;

pub use bound::{calibrate, cutoff_scan, ground_level, reproduce_bound_states, ETA_FLOOR, SCAN_POINTS, SCAN_R_MIN};
pub use expectations::{Expectations, Printed};
pub use overlap::overlap;
pub use report::{ComparisonReport, Row, ScanPoint, Status};
pub use tables::{
    analytic_overlaps, linear_fit, reproduce_linearity, reproduce_polynomials, reproduce_table1, reproduce_table2,
    reproduce_table3, reproduce_table4, LISTED_ROOT, SPECTRUM_OMEGA,
};

/// Selectable report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Roots,
    Polynomials,
    Coulomb,
    Frequencies,
    Potentials,
    Bound,
    Linearity,
    Overlap,
}

impl Table {
    pub const ALL: [Table; 8] = [
        Table::Roots,
        Table::Polynomials,
        Table::Coulomb,
        Table::Frequencies,
        Table::Potentials,
        Table::Bound,
        Table::Linearity,
        Table::Overlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Table::Roots => "1",
            Table::Polynomials => "poly",
            Table::Coulomb => "2",
            Table::Frequencies => "3",
            Table::Potentials => "4",
            Table::Bound => "bound",
            Table::Linearity => "linearity",
            Table::Overlap => "overlap",
        }
    }

    pub fn run(self, exp: &Expectations, settings: &GridSettings) -> Result<ComparisonReport> {
        match self {
            Table::Roots => reproduce_table1(exp),
            Table::Polynomials => reproduce_polynomials(exp),
            Table::Coulomb => reproduce_table2(exp, settings),
            Table::Frequencies => reproduce_table3(exp, settings),
            Table::Potentials => reproduce_table4(exp, settings),
            Table::Bound => reproduce_bound_states(exp, settings),
            Table::Linearity => reproduce_linearity(settings),
            Table::Overlap => analytic_overlaps(exp, settings),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Table::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown table `{s}`")))
    }
}

/// Reports in the order given; reports are independent, so they run one
/// after the other and each parallelises internally.
pub fn run_all(tables: &[Table], exp: &Expectations, settings: &GridSettings) -> Result<Vec<ComparisonReport>> {
    tables.iter().map(|t| t.run(exp, settings)).collect()
}
