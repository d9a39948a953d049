use std::fmt;

use super::field::{FieldElement, FiniteField};
use super::group::{AbelianGroup, GroupElement};
use super::poly;
use crate::error::{structural, Result};

/// The Galois ring `GR(4^n) = Z_4[x]/(g(x))`, where `g` is the Hensel lift of
/// the modulus of `F_{2^n}` that divides `x^{2^n - 1} - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    field: FiniteField,
    modulus: Vec<u64>,
}

/// Coefficients mod 4, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl GaloisRing {
    pub fn new(n: usize) -> Result<Self> {
        Self::over(FiniteField::new(2, n)?)
    }

    /// The Galois ring whose residue field is `field`.
    pub fn over(field: FiniteField) -> Result<Self> {
        if field.characteristic() != 2 {
            return structural("Galois rings of characteristic 4 need a residue field of characteristic 2");
        }
        let modulus = graeffe_lift(field.modulus());
        Ok(Self { field, modulus })
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn order(&self) -> u64 {
        4u64.pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.field
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![0; self.degree()] }
    }

    pub fn one(&self) -> RingElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = 1;
        RingElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<RingElement> {
        if coeffs.len() != self.degree() || coeffs.iter().any(|&c| c >= 4) {
            return structural(format!("{coeffs:?} is not an element of GR(4^{})", self.degree()));
        }
        Ok(RingElement { coeffs })
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % 4).collect(),
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let prod = poly::mul(&a.coeffs, &b.coeffs, 4);
        RingElement {
            coeffs: poly::pad(poly::rem_monic(&prod, &self.modulus, 4), self.degree()),
        }
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn reduce(&self, a: &RingElement) -> FieldElement {
        self.field
            .element(a.coeffs.iter().map(|c| c % 2).collect())
            .expect("residues mod 2 form a field element")
    }

    /// The unique Teichmüller representative congruent to `x` mod 2.
    ///
    /// Any lift `a` satisfies `a^{2^n} = x̂`; the loop repeats the
    /// `2^n`-th power until it is stable.
    pub fn teichmuller_lift(&self, x: &FieldElement) -> Result<RingElement> {
        if !self.field.contains(x) {
            return structural(format!("{x} is not an element of the residue field of GR(4^{})", self.degree()));
        }
        let q = 1u64 << self.degree();
        let mut cur = RingElement { coeffs: x.coefficients().to_vec() };
        loop {
            let next = self.pow(&cur, q);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `{0} ∪ {ξ^i}`, in the index order of the residue field.
    pub fn teichmuller_set(&self) -> Vec<RingElement> {
        self.field
            .elements()
            .map(|x| self.teichmuller_lift(&x).expect("residue field element"))
            .collect()
    }

    /// `(Z_4)^n` through coefficient vectors.
    pub fn additive_group(&self) -> AbelianGroup {
        AbelianGroup::new(vec![4; self.degree()]).expect("4 >= 1")
    }

    pub fn to_group_element(&self, a: &RingElement) -> GroupElement {
        self.additive_group().element(a.coeffs.clone()).expect("coefficients are residues mod 4")
    }
}

/// Graeffe root-squaring lift: writing `h(x) = e(x) + o(x)` with even and odd
/// parts, `g(x^2) = ±(e(x)^2 - o(x)^2) mod 4`.
fn graeffe_lift(h: &[u64]) -> Vec<u64> {
    let n = h.len() - 1;
    let even: Vec<u64> = h.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 0 }).collect();
    let odd: Vec<u64> = h.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { c } else { 0 }).collect();
    let e2 = poly::pad(poly::mul(&even, &even, 4), 2 * n + 1);
    let o2 = poly::pad(poly::mul(&odd, &odd, 4), 2 * n + 1);
    let diff: Vec<u64> = e2.iter().zip(&o2).map(|(a, b)| (a + 4 - b) % 4).collect();
    let sign = if diff[2 * n] == 1 { 1 } else { 3 };
    (0..=n).map(|i| (diff[2 * i] * sign) % 4).collect()
}

pub fn teichmuller_lift(ring: &GaloisRing, x: &FieldElement) -> Result<RingElement> {
    ring.teichmuller_lift(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn known_lifts() {
        assert_eq!(GaloisRing::new(2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisRing::new(3).unwrap().modulus(), &[3, 2, 3, 1]);
        assert_eq!(graeffe_lift(&[1, 1, 0, 1]), vec![3, 1, 2, 1]);
    }

    #[test]
    fn modulus_reduces_to_field_modulus() {
        for n in 1..=6 {
            let r = GaloisRing::new(n).unwrap();
            let reduced: Vec<u64> = r.modulus().iter().map(|c| c % 2).collect();
            assert_eq!(reduced, r.residue_field().modulus());
        }
    }

    #[test]
    fn idempotent_lifts() {
        let r = GaloisRing::new(3).unwrap();
        let f = r.residue_field().clone();
        assert_eq!(r.teichmuller_lift(&f.zero()).unwrap(), r.zero());
        assert_eq!(r.teichmuller_lift(&f.one()).unwrap(), r.one());
        let r1 = GaloisRing::new(1).unwrap();
        let lifts: Vec<_> = r1.teichmuller_set().iter().map(|a| a.coefficients()[0]).collect();
        assert_eq!(lifts, vec![0, 1]);
    }

    #[test]
    fn teichmuller_set_properties() {
        for n in 1..=5 {
            let r = GaloisRing::new(n).unwrap();
            let f = r.residue_field();
            let set = r.teichmuller_set();
            assert_eq!(set.len(), 1 << n);
            let q = 1u64 << n;
            for (x, t) in f.elements().zip(&set) {
                assert_eq!(&r.pow(t, q), t);
                assert_eq!(r.reduce(t), x);
            }
            let mut distinct = set.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), set.len());
            // nonzero part is generated by a single element of order 2^n - 1
            let xi = r.teichmuller_lift(f.primitive_element()).unwrap();
            let mut powers: Vec<_> = (0..q - 1).map(|i| r.pow(&xi, i)).collect();
            assert_eq!(r.pow(&xi, q - 1), r.one());
            powers.push(r.zero());
            powers.sort();
            distinct.sort();
            assert_eq!(powers, distinct);
        }
    }

    #[test]
    fn mismatched_field_is_structural() {
        let r = GaloisRing::new(2).unwrap();
        let f8 = FiniteField::new(2, 3).unwrap();
        assert!(matches!(r.teichmuller_lift(&f8.one()), Err(Error::Structural(_))));
        assert!(matches!(GaloisRing::over(FiniteField::new(3, 1).unwrap()), Err(Error::Structural(_))));
    }
}
