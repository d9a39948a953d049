use crate::algebra::{unit_phase, FiniteField};
use crate::error::{domain, Error, Result};
use crate::linalg::{c, CMatrix};
use crate::nonlinear::{pn_square, teichmuller_function, NonlinearFunction};

use super::family::{Basis, Provenance, Weight, WeightedBasisFamily};

/// Largest dimension accepted by [`build_design`].
pub const MAX_DIMENSION: usize = 64;

/// Tolerance used when merging repeated bases of the `GR(4^n)` construction.
const DEDUPE_TOL: f64 = 1e-9;

/// The weighted basis family induced by a 1-uniform `f: G → H`.
///
/// Entry 0 is the standard basis with weight `1/(d(d+1))`. Entry `1 + i`
/// belongs to the codomain element with index `i` (index 0 is the identity)
/// and has weight `1/(|H|(d+1))`; its column `j` is
/// `d^{-1/2} Σ_x χ_j(x) ψ_a(f(x)) |x⟩` with `χ`, `ψ` the characters of `G`, `H`.
pub fn build_design(f: &NonlinearFunction) -> Result<WeightedBasisFamily> {
    let (g, h) = (f.domain(), f.codomain());
    let d = g.order();
    if d > MAX_DIMENSION {
        return Err(Error::Capacity {
            what: "dimension",
            got: d,
            limit: MAX_DIMENSION,
        });
    }
    if let Some(w) = f.verify_one_uniform()?.witness {
        return domain(format!("{} is not differentially 1-uniform: {w}", f.provenance()));
    }
    let scale = 1.0 / (d as f64).sqrt();
    let elems: Vec<_> = g.elements().collect();
    let images: Vec<_> = f.table().iter().map(|&i| h.from_index(i)).collect();

    let hn = h.order() as u64;
    let dn = d as u64;
    let mut bases = vec![Basis::standard(d)];
    let mut weights = vec![Weight::exact(1, dn * (dn + 1))];
    for a in h.elements() {
        let m = CMatrix::from_fn(d, d, |x, j| {
            let theta = (g.character_phase(&elems[j], &elems[x]) + h.character_phase(&a, &images[x])).fract();
            unit_phase(theta) * c(scale, 0.0)
        });
        bases.push(Basis::new(m)?.canonical());
        weights.push(Weight::exact(1, hn * (dn + 1)));
    }

    let provenance = Provenance {
        construction: f.provenance().to_string(),
        parameters: vec![("d".into(), d.to_string()), ("bases".into(), (hn + 1).to_string())],
        domain: Some(g.factors().to_vec()),
        codomain: Some(h.factors().to_vec()),
        algebra: f.algebra().cloned(),
        function_table: Some(f.table().to_vec()),
        notes: vec![
            "basis 0 is the standard basis; basis 1+i uses the character of the codomain element with mixed-radix index i (index 0 is the identity)".into(),
        ],
    };
    WeightedBasisFamily::new(bases, weights, provenance)
}

/// A complete set of `d + 1` mutually unbiased bases for `d = p^n`.
///
/// Odd characteristic uses `x ↦ x^2`; characteristic 2 uses the
/// Teichmüller map into `GR(4^n)` and merges its `d`-fold repeated bases.
pub fn standard_mub_family(field: &FiniteField) -> Result<WeightedBasisFamily> {
    let family = if field.characteristic() == 2 {
        build_design(&teichmuller_function(field.degree())?)?.dedupe(DEDUPE_TOL)
    } else {
        build_design(&pn_square(field)?)?
    };
    let mut provenance = family.provenance().clone();
    provenance.construction = format!("mub(p={},n={}) via {}", field.characteristic(), field.degree(), provenance.construction);
    Ok(family.with_provenance(provenance))
}

/// The 8-basis weighted 2-design in dimension 6: the standard basis with
/// weight 1/42, and for `a = 1..7` the bases
/// `e_j^a = 6^{-1/2} Σ_k e^{2πi jk/6} e^{2πi a 3^k/7} |k⟩` with weight 1/49.
pub fn dim6_design() -> WeightedBasisFamily {
    let d = 6usize;
    let scale = 1.0 / (d as f64).sqrt();
    let mut bases = vec![Basis::standard(d)];
    let mut weights = vec![Weight::exact(1, 42)];
    let pow3: Vec<u64> = (0..d as u32).map(|k| 3u64.pow(k) % 7).collect();
    for a in 1..=7u64 {
        let m = CMatrix::from_fn(d, d, |k, j| {
            let theta = ((j * k) % d) as f64 / d as f64 + ((a * pow3[k]) % 7) as f64 / 7.0;
            unit_phase(theta.fract()) * c(scale, 0.0)
        });
        bases.push(Basis::new(m).expect("character bases are orthonormal").canonical());
        weights.push(Weight::exact(1, 49));
    }
    let provenance = Provenance {
        construction: "dim6".into(),
        parameters: vec![("d".into(), "6".into()), ("bases".into(), "8".into())],
        ..Default::default()
    };
    WeightedBasisFamily::new(bases, weights, provenance).expect("weights sum to 1/6")
}
