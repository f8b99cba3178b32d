//! Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use gravcat_verify::CRITERIA;

fn main() {
    let mut failed = 0;
    for (name, check) in CRITERIA {
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag}: {}", v.detail);
        for f in &v.findings {
            println!("    {f}");
        }
        if !v.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
