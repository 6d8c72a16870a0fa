//! Tables built from solver results.

use qdot_core::heun::{AdmissibleRoots, HeunSolution};
use qdot_core::validation::{ComparisonReport, Status};
use qdot_core::{InnerBoundary, NumericalEigenstate, RadialProblem, RadialWaveFunction};

use crate::output::{round12, RecordKind, Table, Value};

fn with_problem(table: Table, p: &RadialProblem) -> Table {
    table
        .meta("potential", p.potential)
        .meta("omega", p.omega)
        .meta("l", p.l)
        .meta("grid", format!("r_min={} r_max={} steps={}", p.r_min, p.r_max, p.steps))
        .meta(
            "inner_boundary",
            match p.inner {
                InnerBoundary::Regular => "regular",
                InnerBoundary::CutoffSeed => "cutoff-seed",
            },
        )
}

pub fn eigenvalues(problem: &RadialProblem, states: &[NumericalEigenstate]) -> Table {
    let mut t = with_problem(Table::new(RecordKind::Eigenvalue), problem).meta("units", "eta in Ha");
    for (i, s) in states.iter().enumerate() {
        t.push(vec![
            Value::text(problem.potential.name()),
            Value::real(problem.omega),
            Value::int(problem.l),
            Value::int(i),
            Value::int(s.nodes),
            Value::real(s.eta),
        ]);
    }
    t
}

/// Every `stride`-th sample of each wavefunction; `state` is the index into
/// the accompanying eigenvalue table.
pub fn wavefunctions<'a>(
    problem: &RadialProblem,
    waves: impl IntoIterator<Item = (usize, &'a RadialWaveFunction)>,
    stride: usize,
) -> Table {
    let mut t = with_problem(Table::new(RecordKind::WavefunctionSample), problem)
        .meta("units", "r in Bohr, u normalised to integral u^2 dr = 1")
        .meta("stride", stride);
    for (state, wave) in waves {
        for (r, u) in wave.grid.iter().zip(&wave.values).step_by(stride.max(1)) {
            t.push(vec![Value::int(state), Value::real(*r), Value::real(*u)]);
        }
    }
    t
}

pub fn heun_roots(n: u32, l: u32, roots: &AdmissibleRoots, solutions: &[HeunSolution]) -> Table {
    let mut t = Table::new(RecordKind::HeunRoot)
        .meta("n", n)
        .meta("l", l)
        .meta("units", "t = 1/sqrt(omega); omega, eta in Ha");
    if roots.asymptotic {
        t = t.meta(
            "asymptotic",
            "t = 0 is also a root (omega -> infinity): the non-interacting Laguerre solution",
        );
    }
    for s in solutions {
        t.push(vec![
            Value::int(s.n),
            Value::int(s.l),
            Value::int(s.root_index),
            Value::real(s.t),
            Value::real(s.omega),
            Value::real(s.eta),
            Value::real(s.exponent()),
        ]);
    }
    t
}

pub fn y_coefficients(s: &HeunSolution) -> Table {
    let mut t = Table::new(RecordKind::YCoefficient)
        .meta("polynomial", "y(r) = sum coefficient * r^power")
        .meta("u", format!("r^(l+1/2) exp(-{} r^2) y(r)", round12(s.exponent())));
    for (p, c) in s.y_coeffs.iter().enumerate() {
        t.push(vec![
            Value::int(s.n),
            Value::int(s.l),
            Value::int(s.root_index),
            Value::int(p),
            Value::real(*c),
        ]);
    }
    t
}

pub fn report(r: &ComparisonReport) -> Vec<Table> {
    let status = match &r.status {
        Status::Conclusive => "conclusive".to_string(),
        Status::Inconclusive(why) => format!("inconclusive: {why}"),
    };
    let mut t = Table::new(RecordKind::ReportRow)
        .meta("report", &r.label)
        .meta("status", status)
        .meta("passed", r.passed());
    for row in &r.rows {
        t.push(vec![
            Value::text(&r.label),
            Value::text(&row.key),
            Value::text(&row.quantity),
            Value::real(row.expected),
            Value::real(row.computed),
            Value::real(row.rel_error),
            Value::real(row.tolerance),
            Value::Bool(row.pass),
            Value::text(row.annotation.clone().unwrap_or_default()),
        ]);
    }
    let mut tables = vec![t];
    if !r.scan.is_empty() {
        let mut scan = Table::new(RecordKind::CutoffScan).meta("report", &r.label).meta(
            "units",
            "r_min in Bohr, nodeless negative eta in Ha (blank: none above the floor)",
        );
        for p in &r.scan {
            let cell = |v: Option<f64>| v.map_or(Value::Missing, Value::real);
            scan.push(vec![Value::real(p.r_min), cell(p.coulomb), cell(p.log)]);
        }
        tables.push(scan);
    }
    tables
}
