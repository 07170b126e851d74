//! Replay every bundled audit case and print one verdict line per entry.

use liext::audit::run_entry;
use liext::sample::DEFAULT_SEED;

fn main() {
    let mut totals = [0usize; 4];
    for case in liext::cases() {
        println!("{}  ({})", case.id, case.title);
        for entry in case.entries() {
            let finding = run_entry(&entry, DEFAULT_SEED);
            let idx = match finding.verdict {
                liext::Verdict::Confirmed => 0,
                liext::Verdict::Corrected => 1,
                liext::Verdict::Flagged => 2,
                liext::Verdict::Failed => 3,
            };
            totals[idx] += 1;
            println!("  [{:<9}] {:<16} {}", finding.verdict.as_str(), finding.id, finding.summary);
            for (key, value) in &finding.data {
                println!("      {key} = {value}");
            }
        }
        println!();
    }
    println!(
        "total: {} confirmed, {} corrected, {} flagged, {} failed",
        totals[0], totals[1], totals[2], totals[3]
    );
}
