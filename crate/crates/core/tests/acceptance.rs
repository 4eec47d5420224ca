//! Runs every acceptance criterion at its stated bounds and prints one
//! pass/fail line per criterion.

use std::time::Instant;

use slarc::verify::{verify_all, Bounds, Report, Status, Suite};
use slarc::{PrimeField, Rationals};

fn suite_passes(report: &Report, suite: Suite) -> (bool, usize) {
    let prefix = format!("{}/", suite.name());
    let checks: Vec<_> = report.checks.iter().filter(|c| c.id.starts_with(&prefix)).collect();
    let ok = !checks.is_empty() && checks.iter().all(|c| c.status == Status::Pass);
    (ok, checks.len())
}

#[test]
fn acceptance() {
    let bounds = Bounds::full();
    let start = Instant::now();
    let report = verify_all(&bounds, &Rationals);
    let first_run = start.elapsed();

    let criteria: [(&str, &[Suite]); 14] = [
        ("basis counts", &[Suite::Basis]),
        ("algebra laws", &[Suite::Algebra]),
        ("module dimensions", &[Suite::Modules]),
        ("standard resolutions", &[Suite::Resolutions]),
        ("resolutions of simples by standards", &[Suite::SimpleResolutions]),
        ("bicomplex", &[Suite::Bicomplex]),
        ("ext tables", &[Suite::Ext]),
        ("bgg reciprocity and cartan matrix", &[Suite::Bgg]),
        ("functors", &[Suite::Functors]),
        ("cabling", &[Suite::Cabling]),
        ("monoidal structure", &[Suite::Monoidal]),
        ("grothendieck group", &[Suite::K0]),
        ("plus algebra", &[Suite::Aplus]),
        ("koszul linearity", &[Suite::Linearity]),
    ];

    let mut all_ok = true;
    for (i, (name, suites)) in criteria.iter().enumerate() {
        let mut ok = true;
        let mut count = 0;
        for s in *suites {
            let (p, n) = suite_passes(&report, *s);
            ok &= p;
            count += n;
        }
        all_ok &= ok;
        println!("criterion {:>2}: {} ({name}, {count} checks)", i + 1, if ok { "pass" } else { "FAIL" });
        if !ok {
            for s in *suites {
                let prefix = format!("{}/", s.name());
                for c in report.failures().filter(|c| c.id.starts_with(&prefix)) {
                    println!("    {}: expected {} got {}", c.id, c.expected, c.actual);
                }
            }
        }
    }

    let again = verify_all(&bounds, &Rationals);
    let prime = verify_all(&bounds, &PrimeField::default());
    let identical_json = report.to_json() == again.to_json();
    let same_dims = report.dimension_table() == prime.dimension_table();
    let ok = identical_json && same_dims;
    all_ok &= ok;
    println!(
        "criterion 15: {} (determinism: identical json {identical_json}, rational and prime tables agree {same_dims})",
        if ok { "pass" } else { "FAIL" }
    );
    println!(
        "{} checks per run, first run {:.1}s, total {:.1}s",
        report.summary.total,
        first_run.as_secs_f64(),
        start.elapsed().as_secs_f64()
    );
    assert!(all_ok, "some acceptance criteria failed");
}
