//! Arithmetic in GF(p^n): modulus, primitive element, traces and characters.
//!
//! cargo run --example finite_fields -- 3 2

use basis_designs::algebra::{additive_character, FiniteField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (p, n) = match args[..] {
        [p, n] => (p, n as usize),
        _ => (3, 2),
    };
    let f = FiniteField::new(p, n)?;
    println!("GF({}): modulus coefficients (constant first) {:?}", f.order(), f.modulus());
    let y = f.primitive_element().clone();
    println!("primitive element {:?}, order {}", y.coefficients(), f.multiplicative_order(&y));

    for (i, x) in f.elements().enumerate().take(6) {
        let inv = if x.is_zero() { "-".to_string() } else { format!("{:?}", f.inv(&x)?.coefficients()) };
        println!(
            "x{i} = {:?}  x^-1 = {inv}  frob = {:?}  tr = {}  chi_y(x) = {:.4}",
            x.coefficients(),
            f.frobenius(&x).coefficients(),
            f.trace(&x),
            additive_character(&f, &y, &x)?
        );
    }
    Ok(())
}
