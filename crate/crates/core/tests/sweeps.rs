use fopa_core::sweep::{figure, run_sweep, Cell, FigureOptions, OutputFormat, Quantity, SweepSpec, SweptParam};
use fopa_core::transfer::r_opt;

#[test]
fn identical_specs_give_identical_bytes() {
    let spec = SweepSpec { quantity: Quantity::QcrbTwoLoss, eta: 0.8, m: 1, n: 1, steps: 40, ..SweepSpec::default() };
    let first = run_sweep(&spec).unwrap();
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        assert_eq!(first.render(format), run_sweep(&spec).unwrap().render(format));
    }
}

#[test]
fn rows_follow_the_grid_order() {
    let spec = SweepSpec { param: SweptParam::Alpha, from: 0.0, to: 3.0, steps: 31, ..SweepSpec::default() };
    let table = run_sweep(&spec).unwrap();
    let xs: Vec<f64> = table.rows.iter().map(|r| r[0].as_number().unwrap()).collect();
    assert!(xs.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(xs[30], 3.0);
}

#[test]
fn exact_pole_is_a_status_row() {
    let ro = r_opt(1.0);
    let spec =
        SweepSpec { from: ro, to: ro + 0.01, steps: 2, quantity: Quantity::PhotonNumber, ..SweepSpec::default() };
    let csv = run_sweep(&spec).unwrap().render(OutputFormat::Csv);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "R,photon-number,status");
    assert!(lines[1].ends_with(",,PoleProximity"), "{}", lines[1]);
    assert!(lines[2].ends_with(",ok"));
}

#[test]
fn shortest_round_trip_numbers() {
    let spec = SweepSpec { from: 0.0, to: 0.1, steps: 2, ..SweepSpec::default() };
    let csv = run_sweep(&spec).unwrap().render(OutputFormat::Csv);
    for field in csv.lines().skip(1).flat_map(|l| l.split(',').take(2).collect::<Vec<_>>()) {
        let x: f64 = field.parse().unwrap();
        assert_eq!(format!("{x}"), field);
    }
    assert!(csv.lines().nth(2).unwrap().starts_with("0.1,"));
}

#[test]
fn figure_presets_share_the_sweep_engine() {
    let fig = figure("fig10", &FigureOptions { steps: Some(10), ..FigureOptions::default() }).unwrap();
    let spec = SweepSpec { quantity: Quantity::QcrbTwoIdeal, m: 2, n: 2, steps: 10, ..SweepSpec::default() };
    let sweep = run_sweep(&spec).unwrap();
    let col = fig.column("m2n2").unwrap();
    for (cell, row) in col.iter().zip(&sweep.rows) {
        assert_eq!(**cell, row[1]);
    }
    let fig8 = figure("fig8", &FigureOptions { m: Some(1), n: Some(1), steps: Some(4) }).unwrap();
    assert_eq!(fig8.columns, ["R", "eta0.7", "eta0.8", "eta0.9", "eta1"]);
    assert!(fig8.rows.iter().all(|r| r.iter().all(|c| matches!(c, Cell::Number(_)))));
}
