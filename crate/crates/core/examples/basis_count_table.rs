//! Smallest known number of bases forming a weighted 2-design, d = 2..=dmax.
//!
//! cargo run --example basis_count_table -- 50

use basis_designs::design::bound_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dmax: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(50);
    for row in bound_table(dmax)? {
        let mark = if row.bases == row.d as u64 + 1 { "" } else { "  *" };
        println!("{:>3} {:>5}  {}{mark}", row.d, row.bases, row.recipe);
    }
    Ok(())
}
