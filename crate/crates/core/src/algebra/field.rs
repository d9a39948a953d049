use std::fmt;

use num_complex::Complex64;

use super::arith::{factorize, is_prime, prime_power};
use super::group::{unit_phase, AbelianGroup, GroupElement};
use super::poly;
use crate::error::{domain, structural, Error, Result};

/// Largest field order accepted. Irreducibility testing and order
/// computations are brute force.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// The finite field `F_{p^n} = Z_p[x]/(m(x))`.
///
/// The modulus is the lexicographically smallest monic irreducible of degree
/// `n` (coefficient sequences compared constant term first), and the
/// distinguished primitive element is the smallest generator in the same
/// order. Both choices are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
    primitive: FieldElement,
}

/// Polynomial-basis representation, `n` coefficients mod `p`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FiniteField {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("characteristic {p} is not prime"));
        }
        if n == 0 {
            return domain("field degree must be >= 1");
        }
        check_order(p, n)?;
        let modulus = poly::monic_of_degree(p, n)
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");
        Self::build(p, n, modulus)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((p, n)) => Self::new(p, n as usize),
            None => domain(format!("{q} is not a prime power")),
        }
    }

    /// Field with an explicit monic modulus (constant term first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("characteristic {p} is not prime"));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return domain("modulus must be a monic polynomial of degree >= 1 over Z_p");
        }
        let n = modulus.len() - 1;
        check_order(p, n)?;
        if !poly::is_irreducible(&modulus, p) {
            return domain(format!("modulus {modulus:?} is reducible over Z_{p}"));
        }
        Self::build(p, n, modulus)
    }

    fn build(p: u64, n: usize, modulus: Vec<u64>) -> Result<Self> {
        let mut field = FiniteField {
            p,
            n,
            modulus,
            primitive: FieldElement { coeffs: vec![0; n] },
        };
        let group_order = field.order() - 1;
        let primitive = (1..field.order() as usize)
            .map(|i| field.from_index(i))
            .find(|a| field.multiplicative_order(a) == group_order)
            .expect("the multiplicative group of a finite field is cyclic");
        field.primitive = primitive;
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p) {
            return structural(format!("{coeffs:?} is not an element of F_{}", self.order()));
        }
        Ok(FieldElement { coeffs })
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.n && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            structural(format!("{a} is not an element of F_{}", self.order()))
        }
    }

    /// Integer encoding shared with [`FiniteField::additive_group`]:
    /// `Σ c_i p^{n-1-i}`.
    pub fn index_of(&self, a: &FieldElement) -> usize {
        a.coeffs.iter().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn from_index(&self, mut idx: usize) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        for c in coeffs.iter_mut().rev() {
            *c = (idx % self.p as usize) as u64;
            idx /= self.p as usize;
        }
        FieldElement { coeffs }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order() as usize).map(|i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly::mul(&a.coeffs, &b.coeffs, self.p);
        FieldElement {
            coeffs: poly::pad(poly::rem_monic(&prod, &self.modulus, self.p), self.n),
        }
    }

    pub fn scale(&self, c: u64, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| (x * (c % self.p)) % self.p).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
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

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return domain("zero has no multiplicative inverse");
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Absolute trace `x + x^p + … + x^{p^{n-1}}`, an element of `Z_p`.
    pub fn trace(&self, a: &FieldElement) -> u64 {
        let mut acc = self.zero();
        let mut conj = a.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &conj);
            conj = self.frobenius(&conj);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut ord = self.order() - 1;
        for (r, _) in factorize(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    pub fn primitive_element(&self) -> &FieldElement {
        &self.primitive
    }

    /// `primitive^((q-1)/d)`, an element of multiplicative order exactly `d`.
    pub fn element_of_order(&self, d: u64) -> Result<FieldElement> {
        let group = self.order() - 1;
        if d == 0 || group % d != 0 {
            return domain(format!("{d} does not divide the multiplicative group order {group}"));
        }
        Ok(self.pow(&self.primitive, group / d))
    }

    /// `(Z_p)^n`, matched to field elements through coefficient vectors.
    pub fn additive_group(&self) -> AbelianGroup {
        AbelianGroup::new(vec![self.p; self.n]).expect("p >= 2")
    }

    pub fn to_group_element(&self, a: &FieldElement) -> GroupElement {
        self.additive_group().element(a.coeffs.clone()).expect("field element coefficients are residues")
    }

    pub fn from_group_element(&self, g: &GroupElement) -> Result<FieldElement> {
        self.element(g.components().to_vec())
    }
}

fn check_order(p: u64, n: usize) -> Result<()> {
    let order = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if order > MAX_FIELD_ORDER as u128 {
        return Err(Error::Capacity {
            what: "field order",
            got: order.min(usize::MAX as u128) as usize,
            limit: MAX_FIELD_ORDER as usize,
        });
    }
    Ok(())
}

/// The additive character `ψ_a(x) = exp(2πi tr(ax)/p)`.
pub fn additive_character(field: &FiniteField, a: &FieldElement, x: &FieldElement) -> Result<Complex64> {
    field.check(a)?;
    field.check(x)?;
    let t = field.trace(&field.mul(a, x));
    Ok(unit_phase(t as f64 / field.characteristic() as f64))
}

pub fn primitive_element(field: &FiniteField) -> FieldElement {
    field.primitive_element().clone()
}

pub fn element_of_order(field: &FiniteField, d: u64) -> Result<FieldElement> {
    field.element_of_order(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SMALL: [(u64, usize); 10] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)];

    #[test]
    fn f9_multiplication() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let x = f.element(vec![0, 1]).unwrap();
        assert_eq!(f.mul(&x, &x), f.element(vec![2, 0]).unwrap());
    }

    #[test]
    fn inverses_and_frobenius_fixed_points() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        for a in f.elements() {
            assert_eq!(f.pow(&a, 9), a);
        }
        assert!(matches!(f.inv(&f.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, n) in SMALL {
            let f = FiniteField::new(p, n).unwrap();
            let els: Vec<_> = f.elements().collect();
            for a in &els {
                for b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius is additive and multiplicative
                    assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
                    assert_eq!(f.frobenius(&f.mul(a, b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
                    for c in els.iter().step_by(3) {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(a, &f.mul(b, c)), f.mul(&f.mul(a, b), c));
                    }
                }
            }
            // Frobenius is a bijection
            let mut images: Vec<_> = els.iter().map(|a| f.frobenius(a)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), els.len());
        }
    }

    #[test]
    fn traces() {
        let f = FiniteField::new(7, 1).unwrap();
        for a in f.elements() {
            assert_eq!(f.trace(&a), a.coefficients()[0]);
        }
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.trace(&f4.zero()), 0);
        let traces: Vec<u64> = f4.elements().map(|a| f4.trace(&a)).collect();
        // elements 0, x, 1, 1+x in index order; subfield {0,1} has trace 0
        assert_eq!(traces, vec![0, 1, 0, 1]);
    }

    #[test]
    fn trace_is_linear() {
        let f = FiniteField::new(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = f.from_index(rng.random_range(0..27));
            let b = f.from_index(rng.random_range(0..27));
            let c = rng.random_range(0..3);
            assert_eq!(f.trace(&f.add(&f.scale(c, &a), &b)), (c * f.trace(&a) + f.trace(&b)) % 3);
        }
    }

    #[test]
    fn additive_characters() {
        let f = FiniteField::new(7, 1).unwrap();
        for x in f.elements() {
            assert_eq!(additive_character(&f, &f.zero(), &x).unwrap(), Complex64::new(1.0, 0.0));
        }
        let v = additive_character(&f, &f.one(), &f.one()).unwrap();
        let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 7.0);
        assert!((v - expect).norm() < 1e-15);

        let f11 = FiniteField::new(11, 1).unwrap();
        for a in f11.elements().skip(1) {
            let s: Complex64 = f11.elements().map(|x| additive_character(&f11, &a, &x).unwrap()).sum();
            assert!(s.norm() < 1e-12);
        }
    }

    #[test]
    fn additive_character_orthogonality_and_homomorphism() {
        for (p, n) in SMALL.into_iter().filter(|&(p, n)| p.pow(n as u32) <= 32) {
            let f = FiniteField::new(p, n).unwrap();
            let q = f.order() as f64;
            for a in f.elements() {
                for b in f.elements() {
                    let s: Complex64 = f
                        .elements()
                        .map(|x| additive_character(&f, &a, &x).unwrap() * additive_character(&f, &b, &x).unwrap().conj())
                        .sum();
                    let expect = if a == b { q } else { 0.0 };
                    assert!((s - Complex64::new(expect, 0.0)).norm() < 1e-10);
                }
                for x in f.elements().step_by(2) {
                    for y in f.elements().step_by(3) {
                        let lhs = additive_character(&f, &a, &f.add(&x, &y)).unwrap();
                        let rhs = additive_character(&f, &a, &x).unwrap() * additive_character(&f, &a, &y).unwrap();
                        assert!((lhs - rhs).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(FiniteField::new(7, 1).unwrap().primitive_element().coefficients(), &[3]);
        assert_eq!(FiniteField::new(2, 1).unwrap().primitive_element().coefficients(), &[1]);
        assert_eq!(FiniteField::new(5, 1).unwrap().primitive_element().coefficients(), &[2]);
        for (p, n) in SMALL {
            let f = FiniteField::new(p, n).unwrap();
            assert_eq!(f.multiplicative_order(f.primitive_element()), f.order() - 1);
            // reproducible
            assert_eq!(FiniteField::new(p, n).unwrap(), f);
        }
    }

    #[test]
    fn elements_of_given_order() {
        let f = FiniteField::new(11, 1).unwrap();
        let y = f.element_of_order(5).unwrap();
        assert_eq!(f.pow(&y, 5), f.one());
        for j in 1..5 {
            assert_ne!(f.pow(&y, j), f.one());
        }
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(&f7.element_of_order(6).unwrap(), f7.primitive_element());
        assert!(matches!(f7.element_of_order(4), Err(Error::Domain(_))));
    }

    #[test]
    fn additive_group_bijection() {
        assert_eq!(FiniteField::new(7, 1).unwrap().additive_group().factors(), &[7]);
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.additive_group();
        assert_eq!(g.factors(), &[3, 3]);
        for a in f.elements() {
            let ga = f.to_group_element(&a);
            assert_eq!(f.from_group_element(&ga).unwrap(), a);
            assert_eq!(g.index_of(&ga), f.index_of(&a));
            for b in f.elements() {
                let sum = g.add(&ga, &f.to_group_element(&b)).unwrap();
                assert_eq!(f.from_group_element(&sum).unwrap(), f.add(&a, &b));
            }
        }
    }

    #[test]
    fn explicit_modulus_is_checked() {
        assert!(FiniteField::with_modulus(3, vec![1, 0, 1]).is_ok());
        assert!(matches!(FiniteField::with_modulus(2, vec![1, 0, 1]), Err(Error::Domain(_))));
        assert!(matches!(FiniteField::new(4, 1), Err(Error::Domain(_))));
        assert!(matches!(FiniteField::of_order(51), Err(Error::Domain(_))));
        assert!(matches!(FiniteField::new(2, 30), Err(Error::Capacity { .. })));
    }
}
