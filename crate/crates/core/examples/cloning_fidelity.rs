//! Measure-and-prepare fidelity: constant 2/(d+1) for a 2-design, state
//! dependent for anything less.

use basis_designs::design::{build_design, single_standard};
use basis_designs::nonlinear::exp_function;
use basis_designs::tomography::{povm_from_family, worst_case_fidelity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [4u64, 6, 10] {
        let povm = povm_from_family(&build_design(&exp_function(d, 1)?)?);
        let (worst, _) = worst_case_fidelity(&povm, 200, 0);
        println!("design  d={d:<2} worst fidelity {worst:.9}  2/(d+1) = {:.9}", 2.0 / (d + 1) as f64);
    }
    let povm = povm_from_family(&single_standard(4));
    let (worst, psi) = worst_case_fidelity(&povm, 200, 0);
    let amps: Vec<String> = psi.iter().map(|z| format!("{:.3}", z.norm())).collect();
    println!("one basis d=4  worst fidelity {worst:.6} at |amplitudes| [{}]", amps.join(", "));
    Ok(())
}
