//! The report behind `selmer analyze`, built from the library.

use cubic_selmer::cli_report::{analyze, parse_curve, render_analysis, AnalyzeOptions};

fn main() -> cubic_selmer::Result<()> {
    let e = parse_curve("x^3 - x^2 - 54x + 169")?.with_label("106276.a1");
    let report = analyze(
        &e,
        &AnalyzeOptions {
            root_number: Some(-1),
        },
        None,
    )?;
    print!("{}", render_analysis(&report));
    std::process::exit(report.outcome().exit_code());
}
