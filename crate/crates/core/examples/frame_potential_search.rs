//! Minimizes the frame potential for `m` bases in `C^d` and certifies the result.
//!
//! cargo run --example frame_potential_search -- 3 4

use basis_designs::search::{certify, minimize, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (d, m) = match args[..] {
        [d, m] => (d, m),
        _ => (2, 3),
    };
    let mut config = SearchConfig::new(d, m);
    config.tol = 1e-8;
    let start = std::time::Instant::now();
    let result = minimize(&config)?;
    println!(
        "d={d} m={m}: potential {:.12} bound {:.12} gap {:.3e} restart {} ({} log rows, {:.2?})",
        result.potential,
        result.bound,
        result.gap,
        result.restart,
        result.log.len(),
        start.elapsed()
    );
    let report = certify(&result.point, config.tol)?;
    println!("certified: {} (design check: {})", result.certified, report.is_design(2));
    Ok(())
}
