//! Scans the built-in corpus and prints the tightness table.
//!
//! cargo run --release --example corpus_scan

use hallbound::commands::{scan_manifest, ScanOptions};
use hallbound::corpus::Manifest;

fn main() {
    let manifest = Manifest::builtin().unwrap();
    let report = scan_manifest(&manifest, ScanOptions { jobs: 4, max_order: None, suite_max_order: 0 }).unwrap();
    println!(
        "{} groups, {} instances, {} violations, {} over caps",
        report.scanned,
        report.instances,
        report.violations,
        report.cap_skipped.len()
    );
    println!("  c  d  bound  best class  tight witnesses");
    for row in &report.sharpness.rows {
        let mut witnesses: Vec<&str> = row.witnesses.iter().map(|w| w.group.as_str()).collect();
        witnesses.dedup();
        witnesses.truncate(4);
        println!("  {}  {}  {:>5}  {:>10}  {}", row.c, row.d, row.bound, row.max_class_e, witnesses.join(", "));
    }
}
