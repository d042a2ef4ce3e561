//! Helpers shared by the integration targets: the family corpus, an
//! unpruned brute-force enumerator and random graded basis changes.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superleib::families::{corpus, standard_grid};
use superleib::{FamilyId, Matrix, Scalar, SuperAlgebra};

pub fn family_corpus() -> Vec<(FamilyId, SuperAlgebra)> {
    corpus(&standard_grid(), 4, 200, 0)
        .expect("corpus ids")
        .into_iter()
        .map(|id| {
            let a = id.build().expect("corpus member builds");
            (id, a)
        })
        .collect()
}

/// Dense integer table `t[(a*d + b)*d + c]` of an algebra with integer
/// structure constants.
pub fn integer_table(a: &SuperAlgebra) -> Vec<i64> {
    let d = a.dim();
    let mut t = vec![0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            if let Some(p) = a.product_flat(i, j) {
                for (k, c) in p.iter().enumerate() {
                    t[(i * d + j) * d + k] = c.to_string().parse().expect("integer structure constant");
                }
            }
        }
    }
    t
}

fn parity(k: usize, n: usize) -> usize {
    usize::from(k >= n)
}

fn bracket(t: &[i64], d: usize, u: &[i64], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; d];
    for (i, &ui) in u.iter().enumerate().filter(|p| *p.1 != 0) {
        for (j, &vj) in v.iter().enumerate().filter(|p| *p.1 != 0) {
            for k in 0..d {
                out[k] += ui * vj * t[(i * d + j) * d + k];
            }
        }
    }
    out
}

/// Graded Leibniz identity on basis triples, evaluated directly on a dense
/// integer table.
pub fn satisfies_identity(t: &[i64], n: usize, m: usize) -> bool {
    let d = n + m;
    let unit = |i: usize| {
        let mut e = vec![0; d];
        e[i] = 1;
        e
    };
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let (ex, ey, ez) = (unit(x), unit(y), unit(z));
                let lhs = bracket(t, d, &ex, &bracket(t, d, &ey, &ez));
                let r1 = bracket(t, d, &bracket(t, d, &ex, &ey), &ez);
                let r2 = bracket(t, d, &bracket(t, d, &ex, &ez), &ey);
                let sign = if parity(y, n) * parity(z, n) == 1 { -1 } else { 1 };
                if (0..d).any(|k| lhs[k] - r1[k] + sign * r2[k] != 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every graded table with entries in `coeffs` satisfying the identity,
/// found by trying all assignments.
pub fn brute_force(n: usize, m: usize, coeffs: &[i64]) -> BTreeSet<Vec<i64>> {
    let d = n + m;
    let slots: Vec<usize> = (0..d * d * d)
        .filter(|s| {
            let (a, b, c) = (s / (d * d), (s / d) % d, s % d);
            parity(a, n) ^ parity(b, n) == parity(c, n)
        })
        .collect();
    let total = coeffs.len().pow(slots.len() as u32);
    let mut found = BTreeSet::new();
    let mut t = vec![0; d * d * d];
    for mut code in 0..total {
        for &s in &slots {
            t[s] = coeffs[code % coeffs.len()];
            code /= coeffs.len();
        }
        if satisfies_identity(&t, n, m) {
            found.insert(t.clone());
        }
    }
    found
}

fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> Matrix {
    loop {
        let rows = (0..k).map(|_| (0..k).map(|_| Scalar::from_integer(rng.gen_range(-2..=2))).collect()).collect();
        let p = Matrix::from_rows(k, rows).expect("square rows");
        if p.rank() == k {
            return p;
        }
    }
}

/// A seeded random invertible graded basis change applied to `a`.
pub fn random_basis_change(a: &SuperAlgebra, seed: u64) -> SuperAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m) = a.dims();
    let p0 = random_invertible(&mut rng, n);
    let p1 = random_invertible(&mut rng, m);
    a.change_basis(&p0, &p1).expect("invertible change")
}
