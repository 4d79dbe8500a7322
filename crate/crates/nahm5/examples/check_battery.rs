//! Run the twistor and identity batteries on a small pool and print a table.

use nahm5::cli::battery;

fn main() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().expect("pool");
    let mut jobs = battery::twistor_battery(7, 30);
    jobs.extend(battery::identity_battery(4));
    jobs.extend(battery::bundle_battery(&battery::STANDARD_TRIPLES, 7, 20));
    let reports = battery::run_jobs(&pool, jobs);
    for r in &reports {
        println!("{:<34} {:<9} {:.2e}", r.check, format!("{:?}", r.status), r.max_error);
    }
    let table = nahm5::cli::Table::new("example", reports);
    println!("all pass: {}", table.pass);
}
