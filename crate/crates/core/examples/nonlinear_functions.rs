//! Checks differential 1-uniformity for catalog maps and a few failures.

use basis_designs::algebra::{AbelianGroup, FiniteField};
use basis_designs::nonlinear::{
    binomial_function, example_z5_z6, exp_function, pn_square, teichmuller_function, NonlinearFunction,
};

fn show(f: &NonlinearFunction) -> Result<(), basis_designs::Error> {
    let check = f.verify_one_uniform()?;
    let g = f.domain().order() as u64;
    print!("{:<28} |G|={:<3} |H|={:<3} quadruples {:>5} (1-uniform needs {:>5})", f.provenance(), g, f.codomain().order(), f.quadruple_count()?, g * (2 * g - 1));
    match check.witness {
        None => println!("  ok"),
        Some(w) => println!("  fails: {w}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show(&example_z5_z6())?;
    show(&pn_square(&FiniteField::new(5, 1)?)?)?;
    show(&exp_function(6, 1)?)?;
    show(&exp_function(14, 2)?)?;
    show(&binomial_function(5, 12)?)?;
    show(&teichmuller_function(2)?)?;

    let identity = NonlinearFunction::new(AbelianGroup::cyclic(5), AbelianGroup::cyclic(5), (0..5).collect(), "identity")?;
    show(&identity)?;
    let constant = NonlinearFunction::new(AbelianGroup::cyclic(4), AbelianGroup::cyclic(3), vec![0; 4], "constant")?;
    show(&constant)?;
    Ok(())
}
