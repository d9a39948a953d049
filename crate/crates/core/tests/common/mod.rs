#![allow(dead_code)]

use basis_designs::algebra::FiniteField;
use basis_designs::design::{build_design, dim6_design, standard_mub_family, WeightedBasisFamily};
use basis_designs::nonlinear::{
    binomial_function, direct_sum, embed_cyclic, example_z5_z6, exp_function, pn_square, teichmuller_function,
};

pub fn field(p: u64, n: usize) -> FiniteField {
    FiniteField::new(p, n).unwrap()
}

/// Complete MUB family for a prime power `d`.
pub fn mubs(d: u64) -> WeightedBasisFamily {
    let (p, n) = basis_designs::algebra::arith::prime_power(d).unwrap();
    standard_mub_family(&field(p, n as usize)).unwrap()
}

/// Verified 2-designs used across the integration tests.
pub fn corpus() -> Vec<(String, WeightedBasisFamily)> {
    let mut out: Vec<(String, WeightedBasisFamily)> = [2, 3, 4, 5, 7, 8, 9]
        .into_iter()
        .map(|d| (format!("mubs(d={d})"), mubs(d)))
        .collect();
    out.push(("dim6".into(), dim6_design()));
    for (d, k) in [(4, 1), (10, 1), (12, 1), (14, 2)] {
        out.push((format!("exp(d={d},k={k})"), build_design(&exp_function(d, k).unwrap()).unwrap()));
    }
    out.push(("binomial(5,12)".into(), build_design(&binomial_function(5, 12).unwrap()).unwrap()));
    out.push(("teichmuller(2) undeduplicated".into(), build_design(&teichmuller_function(2).unwrap()).unwrap()));
    out.push(("embed(Z5->Z11)".into(), build_design(&embed_cyclic(&example_z5_z6(), 11).unwrap()).unwrap()));
    out.push((
        "sum(table, table)".into(),
        build_design(&direct_sum(&example_z5_z6(), &example_z5_z6()).unwrap()).unwrap(),
    ));
    out.push(("square(F9)".into(), build_design(&pn_square(&field(3, 2)).unwrap()).unwrap()));
    out
}
