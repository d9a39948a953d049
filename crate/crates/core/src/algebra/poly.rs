//! Dense polynomial arithmetic over Z_m, coefficients stored low degree first.

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % m;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a monic polynomial.
pub(crate) fn rem_monic(a: &[u64], modulus: &[u64], m: u64) -> Vec<u64> {
    let deg = modulus.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > deg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg;
        for (i, &c) in modulus.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (m - (lead * c) % m)) % m;
        }
        r = trim(r);
    }
    r
}

/// Pads or checks a reduced polynomial to exactly `n` coefficients.
pub(crate) fn pad(mut a: Vec<u64>, n: usize) -> Vec<u64> {
    a.resize(n, 0);
    a
}

/// Enumerates monic polynomials of degree `deg` over Z_p in lexicographic
/// order of their coefficient sequence, constant term most significant.
pub(crate) fn monic_of_degree(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u64; deg + 1];
        for i in (0..deg).rev() {
            coeffs[i] = idx % p;
            idx /= p;
        }
        coeffs[deg] = 1;
        coeffs
    })
}

/// Irreducibility over Z_p by trial division against all monic polynomials
/// of degree at most half of `f`'s.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for k in 1..=deg / 2 {
        for g in monic_of_degree(p, k) {
            if rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}
