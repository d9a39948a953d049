use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};

/// A finite abelian group presented as a product of cyclic factors
/// `Z_{n_1} × … × Z_{n_r}`.
///
/// Elements are enumerated in mixed-radix order with the last factor varying
/// fastest; that index is the canonical integer encoding of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// An element of an [`AbelianGroup`], one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn components(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    /// The empty factor list is the trivial group.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::Domain("cyclic factor orders must be >= 1".into()));
        }
        Ok(Self { factors })
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic group order must be >= 1");
        Self { factors: vec![n] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// Direct product `self × other`, factors concatenated.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianGroup { factors }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn element(&self, components: Vec<u64>) -> Result<GroupElement> {
        let g = GroupElement(components);
        self.check(&g)?;
        Ok(g)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(c, n)| c < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            structural(format!("element {g} does not belong to {self}"))
        }
    }

    pub fn from_index(&self, mut idx: usize) -> GroupElement {
        let mut comps = vec![0u64; self.factors.len()];
        for (c, &n) in comps.iter_mut().zip(&self.factors).rev() {
            *c = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        GroupElement(comps)
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        ))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.add(g, &self.neg(h)?)
    }

    /// Index-level addition; both indices must be `< order()`.
    pub(crate) fn add_index(&self, i: usize, j: usize) -> usize {
        self.combine_index(i, j, |a, b, n| (a + b) % n)
    }

    pub(crate) fn sub_index(&self, i: usize, j: usize) -> usize {
        self.combine_index(i, j, |a, b, n| (a + n - b) % n)
    }

    fn combine_index(&self, mut i: usize, mut j: usize, op: impl Fn(u64, u64, u64) -> u64) -> usize {
        let mut out = 0usize;
        let mut place = 1usize;
        for &n in self.factors.iter().rev() {
            let nn = n as usize;
            let c = op((i % nn) as u64, (j % nn) as u64, n);
            out += c as usize * place;
            place *= nn;
            i /= nn;
            j /= nn;
        }
        out
    }

    /// Phase `θ ∈ [0,1)` of the character value `χ_j(k) = exp(2πiθ)`,
    /// with `θ = Σ_i j_i k_i / n_i mod 1`.
    pub(crate) fn character_phase(&self, j: &GroupElement, k: &GroupElement) -> f64 {
        let mut theta = 0.0;
        for ((&a, &b), &n) in j.0.iter().zip(&k.0).zip(&self.factors) {
            theta += ((a * b) % n) as f64 / n as f64;
        }
        theta.fract()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z_1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

/// `exp(2πiθ)` with `θ` already reduced to `[0,1)`.
pub(crate) fn unit_phase(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * theta)
}

pub fn group_add(group: &AbelianGroup, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    group.add(g, h)
}

/// The character `χ_j(k) = ∏_i exp(2πi j_i k_i / n_i)` of a cyclic-product group.
pub fn cyclic_character(group: &AbelianGroup, j: &GroupElement, k: &GroupElement) -> Result<Complex64> {
    group.check(j)?;
    group.check(k)?;
    Ok(unit_phase(group.character_phase(j, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n)
    }

    #[test]
    fn modular_addition() {
        let g = z(5);
        let s = g.add(&g.element(vec![3]).unwrap(), &g.element(vec![4]).unwrap()).unwrap();
        assert_eq!(s.components(), &[2]);

        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        let x = g.element(vec![1, 2]).unwrap();
        assert_eq!(g.add(&x, &x).unwrap().components(), &[0, 1]);
    }

    #[test]
    fn identity_on_random_elements() {
        let g = z(6);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = g.from_index(rng.random_range(0..6));
            assert_eq!(g.add(&x, &g.zero()).unwrap(), x);
        }
    }

    #[test]
    fn mismatched_group_is_structural() {
        let g = z(5);
        let h = AbelianGroup::new(vec![2, 3]).unwrap();
        let x = h.element(vec![1, 1]).unwrap();
        assert!(matches!(g.add(&x, &g.zero()), Err(Error::Structural(_))));
    }

    #[test]
    fn index_round_trip_and_arithmetic() {
        let g = AbelianGroup::new(vec![2, 3, 4]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.from_index(i)), i);
            for j in 0..g.order() {
                let (x, y) = (g.from_index(i), g.from_index(j));
                assert_eq!(g.add_index(i, j), g.index_of(&g.add(&x, &y).unwrap()));
                assert_eq!(g.sub_index(i, j), g.index_of(&g.sub(&x, &y).unwrap()));
            }
        }
        // last factor varies fastest
        assert_eq!(g.from_index(1).components(), &[0, 0, 1]);
        assert_eq!(g.from_index(4).components(), &[0, 1, 0]);
    }

    #[test]
    fn character_values() {
        let g = z(6);
        let v = cyclic_character(&g, &g.from_index(1), &g.from_index(3)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        for k in 0..6 {
            let v = cyclic_character(&g, &g.zero(), &g.from_index(k)).unwrap();
            assert_eq!(v, Complex64::new(1.0, 0.0));
        }
        let g = z(5);
        let s: Complex64 = (0..5)
            .map(|k| cyclic_character(&g, &g.from_index(1), &g.from_index(k)).unwrap())
            .sum();
        assert!(s.norm() < 1e-12);
    }

    #[test]
    fn character_orthogonality_exhaustive() {
        for factors in [vec![5], vec![2, 3], vec![2, 2, 2], vec![4, 4], vec![3, 3], vec![32]] {
            let g = AbelianGroup::new(factors).unwrap();
            let n = g.order();
            for j in 0..n {
                for k in 0..n {
                    let (cj, ck) = (g.from_index(j), g.from_index(k));
                    let s: Complex64 = g
                        .elements()
                        .map(|x| {
                            cyclic_character(&g, &cj, &x).unwrap() * cyclic_character(&g, &ck, &x).unwrap().conj()
                        })
                        .sum();
                    let expect = if j == k { n as f64 } else { 0.0 };
                    assert!((s - Complex64::new(expect, 0.0)).norm() < 1e-10, "{g} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn character_homomorphism_and_index_laws() {
        let g = AbelianGroup::new(vec![3, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let j = g.from_index(rng.random_range(0..12));
            let k = g.from_index(rng.random_range(0..12));
            let x = g.from_index(rng.random_range(0..12));
            let y = g.from_index(rng.random_range(0..12));
            let chi = |a: &GroupElement, b: &GroupElement| cyclic_character(&g, a, b).unwrap();
            let lhs = chi(&j, &g.add(&x, &y).unwrap());
            assert!((lhs - chi(&j, &x) * chi(&j, &y)).norm() < 1e-12);
            // χ_j χ_k = χ_{j+k}, conj χ_j = χ_{-j}
            assert!((chi(&j, &x) * chi(&k, &x) - chi(&g.add(&j, &k).unwrap(), &x)).norm() < 1e-12);
            assert!((chi(&j, &x).conj() - chi(&g.neg(&j).unwrap(), &x)).norm() < 1e-12);
        }
    }
}
