//! Parameter sweeps and figure presets rendered as CSV or JSON tables.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::correlations::{g2_a_from_moments, g2_ab_from_moments, g2_b_from_moments};
use crate::error::{FopaError, Result};
use crate::estimation::{
    qcrb_single, qcrb_two_ideal, qcrb_two_loss_from_moments, qfi_single_loss, EstimationConfig, Moments,
    MAX_SUBTRACTION,
};
use crate::par;
use crate::transfer::{transfer_coefficients, FopaParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweptParam {
    R,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "eta")]
    Eta,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::R => "R",
            SweptParam::G => "g",
            SweptParam::Alpha => "alpha",
            SweptParam::Eta => "eta",
        }
    }
}

impl fmt::Display for SweptParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweptParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "R" | "r" => Ok(SweptParam::R),
            "g" => Ok(SweptParam::G),
            "alpha" => Ok(SweptParam::Alpha),
            "eta" => Ok(SweptParam::Eta),
            other => Err(format!("unknown parameter {other:?}; expected R, g, alpha or eta")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    QcrbSingleIdeal,
    QcrbSingleLoss,
    QcrbTwoIdeal,
    QcrbTwoLoss,
    PhotonNumber,
    G2a,
    G2b,
    G2ab,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Quantity::QcrbSingleIdeal,
        Quantity::QcrbSingleLoss,
        Quantity::QcrbTwoIdeal,
        Quantity::QcrbTwoLoss,
        Quantity::PhotonNumber,
        Quantity::G2a,
        Quantity::G2b,
        Quantity::G2ab,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::QcrbSingleIdeal => "qcrb-single-ideal",
            Quantity::QcrbSingleLoss => "qcrb-single-loss",
            Quantity::QcrbTwoIdeal => "qcrb-two-ideal",
            Quantity::QcrbTwoLoss => "qcrb-two-loss",
            Quantity::PhotonNumber => "photon-number",
            Quantity::G2a => "g2a",
            Quantity::G2b => "g2b",
            Quantity::G2ab => "g2ab",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Quantity::ALL.into_iter().find(|q| q.name() == s).ok_or_else(|| format!("unknown quantity {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected csv or json")),
        }
    }
}

/// Values of the physical parameters at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub g: f64,
    pub r: f64,
    pub alpha: f64,
    pub eta: f64,
    pub m: u32,
    pub n: u32,
    pub v: u32,
}

/// A one-dimensional sweep. Every field has a default, so a JSON
/// configuration only needs to name what differs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub param: SweptParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub g: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub alpha: f64,
    pub eta: f64,
    pub m: u32,
    pub n: u32,
    pub v: u32,
    pub quantity: Quantity,
    pub out: Option<String>,
    pub format: OutputFormat,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            param: SweptParam::R,
            from: 0.0,
            to: 0.9,
            steps: 181,
            g: 1.0,
            r: 0.0,
            alpha: 2.0,
            eta: 1.0,
            m: 0,
            n: 0,
            v: 1,
            quantity: Quantity::QcrbSingleIdeal,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

fn check_domain(param: SweptParam, value: f64) -> Result<()> {
    let ok = match param {
        SweptParam::R | SweptParam::Eta => (0.0..=1.0).contains(&value),
        SweptParam::G => value.is_finite() && value >= 0.0,
        SweptParam::Alpha => value.is_finite(),
    };
    if ok {
        Ok(())
    } else {
        Err(FopaError::InvalidParameter(format!("{param} = {value} is outside its domain")))
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.from.is_finite() && self.to.is_finite()) || self.from > self.to {
            return Err(FopaError::InvalidParameter(format!(
                "sweep range needs finite from <= to, got {} .. {}",
                self.from, self.to
            )));
        }
        if self.steps < 2 {
            return Err(FopaError::InvalidParameter(format!("steps = {} must be >= 2", self.steps)));
        }
        check_domain(self.param, self.from)?;
        check_domain(self.param, self.to)?;
        check_domain(SweptParam::G, self.g)?;
        check_domain(SweptParam::R, self.r)?;
        check_domain(SweptParam::Alpha, self.alpha)?;
        check_domain(SweptParam::Eta, self.eta)?;
        if self.v == 0 {
            return Err(FopaError::InvalidParameter("v must be >= 1".into()));
        }
        if self.m + self.n > MAX_SUBTRACTION {
            return Err(FopaError::InvalidParameter(format!("m + n must be <= {MAX_SUBTRACTION}")));
        }
        Ok(())
    }

    /// Grid values, the last one exactly `to`.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| if i == last { self.to } else { self.from + (self.to - self.from) * i as f64 / last as f64 })
            .collect()
    }

    pub fn point(&self, x: f64) -> Point {
        let fixed = Point { g: self.g, r: self.r, alpha: self.alpha, eta: self.eta, m: self.m, n: self.n, v: self.v };
        with_value(fixed, self.param, x)
    }
}

fn with_value(mut p: Point, param: SweptParam, x: f64) -> Point {
    match param {
        SweptParam::R => p.r = x,
        SweptParam::G => p.g = x,
        SweptParam::Alpha => p.alpha = x,
        SweptParam::Eta => p.eta = x,
    }
    p
}

/// Value of `quantity` at `point`, plus the optimal `λ` for
/// [`Quantity::QcrbTwoLoss`].
pub fn evaluate(quantity: Quantity, point: &Point) -> Result<(f64, Option<f64>)> {
    let coeffs = transfer_coefficients(&FopaParams::symmetric(point.g, point.r)?)?;
    let cfg = EstimationConfig::with_repetitions(point.m, point.n, Complex64::new(point.alpha, 0.0), point.v)?;
    let moments = Moments::from_gamma(&cfg, &coeffs)?;
    let fisher_a = 4.0 * moments.variance_a();
    let value = match quantity {
        Quantity::QcrbSingleIdeal => qcrb_single(fisher_a, point.v)?,
        Quantity::QcrbSingleLoss => qcrb_single(qfi_single_loss(fisher_a, moments.n_a, point.eta)?, point.v)?,
        Quantity::QcrbTwoIdeal => qcrb_two_ideal(&moments.qfim(), point.v)?,
        Quantity::QcrbTwoLoss => {
            let lossy = qcrb_two_loss_from_moments(&moments, point.eta, point.v)?;
            return Ok((lossy.bound, Some(lossy.lambda)));
        }
        Quantity::PhotonNumber => moments.total_photons(),
        Quantity::G2a => g2_a_from_moments(&moments)?,
        Quantity::G2b => g2_b_from_moments(&moments)?,
        Quantity::G2ab => g2_ab_from_moments(&moments)?,
    };
    Ok((value, None))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Number(x) => format!("{x}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Number(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Cell::Number(x) => Some(*x),
            _ => None,
        }
    }
}

impl From<Result<f64>> for Cell {
    fn from(r: Result<f64>) -> Self {
        match r {
            Ok(x) => Cell::Number(x),
            Err(e) => Cell::Text(e.status().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::csv_field))?;
        }
        writer.flush()
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(object)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        out.write_all(b"\n")
    }

    pub fn write<W: Write>(&self, format: OutputFormat, out: W) -> io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut buf = Vec::new();
        self.write(format, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("tables are UTF-8")
    }
}

/// Evaluates a sweep; failing points become status strings and never abort
/// the sweep. Columns are `<param>,<quantity>[,lambda_star],status`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let with_lambda = spec.quantity == Quantity::QcrbTwoLoss;
    let grid = spec.grid();
    let rows = par::map(&grid, |&x| {
        let result = evaluate(spec.quantity, &spec.point(x));
        let mut row = vec![Cell::Number(x)];
        match result {
            Ok((value, lambda)) => {
                row.push(Cell::Number(value));
                if with_lambda {
                    row.push(lambda.map_or(Cell::Empty, Cell::Number));
                }
                row.push(Cell::Text("ok".into()));
            }
            Err(e) => {
                row.push(Cell::Empty);
                if with_lambda {
                    row.push(Cell::Empty);
                }
                row.push(Cell::Text(e.status().into()));
            }
        }
        row
    });
    let mut columns = vec![spec.param.name().to_string(), spec.quantity.name().to_string()];
    if with_lambda {
        columns.push("lambda_star".into());
    }
    columns.push("status".into());
    Ok(Table { columns, rows })
}

pub const FIGURE_IDS: [&str; 17] = [
    "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig10", "fig11", "fig12", "fig13", "fig14", "fig16", "fig17",
    "fig18a", "fig18b", "fig19", "fig18",
];

/// Options of the `figure` presets. `m`/`n` select the sub-figure of the
/// per-order figures (7, 8, 13, 14); `steps` overrides the grid density.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FigureOptions {
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub steps: Option<usize>,
}

struct Curve {
    name: String,
    quantity: Quantity,
    base: Point,
    /// `false` for flat reference lines evaluated once.
    follows_x: bool,
}

const BASELINE: Point = Point { g: 1.0, r: 0.0, alpha: 2.0, eta: 1.0, m: 0, n: 0, v: 1 };
const FEEDBACK_R: f64 = 0.17;
const ORDERS: [u32; 4] = [0, 1, 2, 3];

fn order_curves(quantity: Quantity, prefix: &str) -> Vec<Curve> {
    ORDERS
        .iter()
        .map(|&k| Curve {
            name: format!("{prefix}m{k}n{k}"),
            quantity,
            base: Point { m: k, n: k, ..BASELINE },
            follows_x: true,
        })
        .collect()
}

fn versus_r(quantity: Quantity, prefix: &str) -> Vec<Curve> {
    let mut curves = order_curves(quantity, prefix);
    curves.push(Curve { name: format!("{prefix}topa"), quantity, base: BASELINE, follows_x: false });
    curves
}

fn feedback_pairs(quantity: Quantity, prefix: &str) -> Vec<Curve> {
    [0.0, FEEDBACK_R]
        .iter()
        .flat_map(|&r| {
            order_curves(quantity, &format!("{prefix}R{r}_")).into_iter().map(move |mut c| {
                c.base.r = r;
                c
            })
        })
        .collect()
}

fn figure_definition(id: &str, opts: &FigureOptions) -> Result<(SweptParam, f64, f64, usize, Vec<Curve>)> {
    let sub = Point { m: opts.m.unwrap_or(0), n: opts.n.unwrap_or(0), ..BASELINE };
    let per_r = |quantity| -> Vec<Curve> {
        [0.0, FEEDBACK_R, 0.3, 0.4]
            .iter()
            .map(|&r| Curve { name: format!("R{r}"), quantity, base: Point { r, ..sub }, follows_x: true })
            .collect()
    };
    let per_eta = |quantity| -> Vec<Curve> {
        [0.7, 0.8, 0.9, 1.0]
            .iter()
            .map(|&eta| Curve { name: format!("eta{eta}"), quantity, base: Point { eta, ..sub }, follows_x: true })
            .collect()
    };
    let r_axis = (SweptParam::R, 0.0, 0.9, 181);
    let g_axis = (SweptParam::G, 0.0, 2.0, 101);
    let alpha_axis = (SweptParam::Alpha, 0.0, 3.0, 121);
    let eta_axis = (SweptParam::Eta, 0.0, 1.0, 101);
    let ((param, from, to, steps), curves) = match id {
        "fig3" => (r_axis, versus_r(Quantity::QcrbSingleIdeal, "")),
        "fig4" => (r_axis, versus_r(Quantity::PhotonNumber, "")),
        "fig5" => (g_axis, feedback_pairs(Quantity::QcrbSingleIdeal, "")),
        "fig6" => (alpha_axis, feedback_pairs(Quantity::QcrbSingleIdeal, "")),
        "fig7" => (eta_axis, per_r(Quantity::QcrbSingleLoss)),
        "fig8" => (r_axis, per_eta(Quantity::QcrbSingleLoss)),
        "fig10" => (r_axis, versus_r(Quantity::QcrbTwoIdeal, "")),
        "fig11" => (g_axis, feedback_pairs(Quantity::QcrbTwoIdeal, "")),
        "fig12" => (alpha_axis, feedback_pairs(Quantity::QcrbTwoIdeal, "")),
        "fig13" => (eta_axis, per_r(Quantity::QcrbTwoLoss)),
        "fig14" => (r_axis, per_eta(Quantity::QcrbTwoLoss)),
        "fig16" => {
            let mut c = feedback_pairs(Quantity::G2a, "g2a_");
            c.extend(feedback_pairs(Quantity::G2b, "g2b_"));
            (g_axis, c)
        }
        "fig17" => {
            let mut c = feedback_pairs(Quantity::G2a, "g2a_");
            c.extend(feedback_pairs(Quantity::G2b, "g2b_"));
            (alpha_axis, c)
        }
        "fig18a" => (g_axis, feedback_pairs(Quantity::G2ab, "")),
        "fig18b" => (alpha_axis, feedback_pairs(Quantity::G2ab, "")),
        "fig19" => {
            let mut c = versus_r(Quantity::G2a, "g2a_");
            c.extend(versus_r(Quantity::G2b, "g2b_"));
            c.extend(versus_r(Quantity::G2ab, "g2ab_"));
            (r_axis, c)
        }
        "fig18" => {
            return Err(FopaError::InvalidParameter(
                "fig18 has two panels with different axes; use fig18a (vs g) or fig18b (vs alpha)".into(),
            ))
        }
        other => {
            return Err(FopaError::InvalidParameter(format!(
                "unknown figure {other:?}; known: {}",
                FIGURE_IDS.join(", ")
            )))
        }
    };
    let steps = opts.steps.unwrap_or(steps);
    if steps < 2 {
        return Err(FopaError::InvalidParameter(format!("steps = {steps} must be >= 2")));
    }
    if sub.m + sub.n > MAX_SUBTRACTION {
        return Err(FopaError::InvalidParameter(format!("m + n must be <= {MAX_SUBTRACTION}")));
    }
    Ok((param, from, to, steps, curves))
}

/// Data table for a figure preset: the swept variable followed by
/// one column per curve. Cells hold a number or an error status.
pub fn figure(id: &str, opts: &FigureOptions) -> Result<Table> {
    let (param, from, to, steps, curves) = figure_definition(id, opts)?;
    let axis = SweepSpec { param, from, to, steps, ..SweepSpec::default() };
    let grid = axis.grid();
    let flat: Vec<(usize, f64)> = curves
        .iter()
        .enumerate()
        .flat_map(|(c, curve)| {
            let points = if curve.follows_x { grid.clone() } else { vec![f64::NAN] };
            points.into_iter().map(move |x| (c, x))
        })
        .collect();
    let values = par::map(&flat, |&(c, x)| {
        let curve = &curves[c];
        let point = if curve.follows_x { with_value(curve.base, param, x) } else { curve.base };
        Cell::from(evaluate(curve.quantity, &point).map(|(v, _)| v))
    });
    let mut columns: Vec<Vec<Cell>> = curves.iter().map(|_| Vec::with_capacity(steps)).collect();
    for (&(c, _), value) in flat.iter().zip(values) {
        columns[c].push(value);
    }
    let rows = (0..steps)
        .map(|i| {
            let mut row = vec![Cell::Number(grid[i])];
            row.extend(columns.iter().map(|col| if col.len() == 1 { col[0].clone() } else { col[i].clone() }));
            row
        })
        .collect();
    let mut names = vec![param.name().to_string()];
    names.extend(curves.iter().map(|c| c.name.clone()));
    Ok(Table { columns: names, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_ends() {
        let spec = SweepSpec { from: 0.0, to: 0.9, steps: 181, ..SweepSpec::default() };
        let g = spec.grid();
        assert_eq!(g.len(), 181);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[180], 0.9);
        assert!((g[1] - 0.005).abs() < 1e-15);
    }

    #[test]
    fn names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
            assert_eq!(serde_json::to_string(&q).unwrap(), format!("\"{}\"", q.name()));
        }
        for p in [SweptParam::R, SweptParam::G, SweptParam::Alpha, SweptParam::Eta] {
            assert_eq!(p.name().parse::<SweptParam>().unwrap(), p);
        }
    }

    #[test]
    fn config_fills_defaults() {
        let spec: SweepSpec = serde_json::from_str(r#"{"param": "eta", "R": 0.3, "quantity": "g2ab"}"#).unwrap();
        assert_eq!(spec.param, SweptParam::Eta);
        assert_eq!(spec.r, 0.3);
        assert_eq!(spec.steps, 181);
        assert!(serde_json::from_str::<SweepSpec>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        let bad = [
            SweepSpec { from: 0.5, to: 0.1, ..SweepSpec::default() },
            SweepSpec { steps: 1, ..SweepSpec::default() },
            SweepSpec { to: 1.5, ..SweepSpec::default() },
            SweepSpec { param: SweptParam::G, from: -1.0, to: 1.0, ..SweepSpec::default() },
            SweepSpec { eta: 2.0, ..SweepSpec::default() },
            SweepSpec { v: 0, ..SweepSpec::default() },
        ];
        for spec in bad {
            assert!(run_sweep(&spec).is_err(), "{spec:?}");
        }
    }

    #[test]
    fn sweep_matches_single_point_evaluation() {
        let table = run_sweep(&SweepSpec::default()).unwrap();
        assert_eq!(table.columns, ["R", "qcrb-single-ideal", "status"]);
        assert_eq!(table.rows.len(), 181);
        let first = table.rows[0][1].as_number().unwrap();
        assert!((first - 1.0 / 104f64.sqrt()).abs() < 1e-12);
        for row in &table.rows {
            assert_eq!(row[2], Cell::Text("ok".into()));
        }
    }

    #[test]
    fn failing_points_keep_their_row() {
        let spec = SweepSpec { param: SweptParam::G, from: 0.0, to: 1.0, steps: 3, n: 1, ..SweepSpec::default() };
        let table = run_sweep(&spec).unwrap();
        assert_eq!(table.rows[0][1], Cell::Empty);
        assert_eq!(table.rows[0][2], Cell::Text("ZeroNormalization".into()));
        assert_eq!(table.rows[2][2], Cell::Text("ok".into()));
    }

    #[test]
    fn infinite_bound_at_zero_transmission() {
        let spec = SweepSpec {
            param: SweptParam::Eta,
            from: 0.0,
            to: 0.0,
            steps: 3,
            quantity: Quantity::QcrbTwoLoss,
            ..SweepSpec::default()
        };
        let csv = run_sweep(&spec).unwrap().render(OutputFormat::Csv);
        assert_eq!(
            csv,
            "eta,qcrb-two-loss,lambda_star,status\n0,,,InfiniteBound\n0,,,InfiniteBound\n0,,,InfiniteBound\n"
        );
    }

    #[test]
    fn json_rows_are_objects() {
        let spec = SweepSpec { steps: 2, to: 0.1, ..SweepSpec::default() };
        let rows: Vec<Value> = serde_json::from_str(&run_sweep(&spec).unwrap().render(OutputFormat::Json)).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1]["R"], 0.1);
        assert_eq!(rows[1]["status"], "ok");
        assert!(rows[1]["qcrb-single-ideal"].is_f64());
    }

    #[test]
    fn figure_shapes() {
        let opts = FigureOptions { steps: Some(5), ..FigureOptions::default() };
        let t = figure("fig3", &opts).unwrap();
        assert_eq!(t.columns, ["R", "m0n0", "m1n1", "m2n2", "m3n3", "topa"]);
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.rows[0][5], t.rows[4][5]);
        assert_eq!(t.rows[0][1], t.rows[0][5]);
        let t = figure("fig13", &FigureOptions { m: Some(1), n: Some(1), steps: Some(3) }).unwrap();
        assert_eq!(t.columns, ["eta", "R0", "R0.17", "R0.3", "R0.4"]);
        assert_eq!(t.rows[0][1], Cell::Text("InfiniteBound".into()));
        assert_eq!(figure("fig16", &opts).unwrap().columns.len(), 17);
        assert!(figure("fig18", &opts).is_err());
        assert!(figure("fig9", &opts).is_err());
    }
}
