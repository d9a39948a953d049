//! The Galois ring GR(4^n) and its Teichmuller set.
//!
//! cargo run --example galois_ring -- 3

use basis_designs::algebra::GaloisRing;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(3);
    let ring = GaloisRing::new(n)?;
    println!("GR(4^{n}): {} elements, modulus {:?}", ring.order(), ring.modulus());
    println!("residue field modulus {:?}", ring.residue_field().modulus());

    let q = 1u64 << n;
    for xi in ring.teichmuller_set() {
        let fixed = ring.pow(&xi, q) == xi;
        println!("{:?} -> {:?}  xi^{q} = xi: {fixed}", xi.coefficients(), ring.reduce(&xi).coefficients());
    }
    Ok(())
}
