//! Writes a design file, reads it back and re-verifies it.

use basis_designs::design::{build_design, read_design, verify_design, write_design};
use basis_designs::nonlinear::exp_function;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = build_design(&exp_function(10, 1)?)?;
    let report = verify_design(&fam, 2, 1e-9)?;
    let path = std::env::temp_dir().join("exp10.design.json");
    write_design(&path, &fam, Some(&report))?;
    println!("wrote {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());

    let back = read_design(&path)?;
    let same = back.family.bases().iter().zip(fam.bases()).all(|(a, b)| a.matrix() == b.matrix());
    println!("bases identical after round trip: {same}");
    println!("provenance: {}", back.family.provenance().construction);
    println!("still a 2-design: {}", verify_design(&back.family, 2, 1e-9)?.is_design(2));
    std::fs::remove_file(path)?;
    Ok(())
}
