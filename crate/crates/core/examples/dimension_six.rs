//! The 8-basis weighted 2-design in dimension 6, checked up to t = 3.

use basis_designs::design::{dim6_design, verify_design};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = dim6_design();
    let weights: Vec<String> = fam.weights().iter().map(|w| w.to_string()).collect();
    println!("weights: {}", weights.join(" "));
    let report = verify_design(&fam, 3, 1e-9)?;
    for l in &report.levels {
        println!("t={}: welch sum {:.12}  bound {:.12}  design {}", l.t, l.welch_sum, l.bound, l.is_design);
    }
    println!(
        "unbiased pairs {}/{}, cross overlaps in [{:.4}, {:.4}]",
        report.mub_pairs,
        report.total_pairs,
        report.min_cross_overlap.unwrap_or(f64::NAN),
        report.max_cross_overlap.unwrap_or(f64::NAN)
    );
    Ok(())
}
