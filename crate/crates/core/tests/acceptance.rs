//! Runs the ten acceptance checks in order, one line each, and exits
//! nonzero if any fails.

use plumbkit::verify;

fn main() {
    let mut failed = Vec::new();
    for id in 1..=10 {
        let r = verify::run(id);
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
