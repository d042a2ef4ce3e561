//! Graded structure-constant tables and the Leibniz superidentity.

mod element;

use crate::error::{Error, Result};
use crate::linalg::{GradedSubspace, Matrix};
use crate::scalar::Scalar;

pub use element::{Basis, Element, Parity};

/// A basis triple `(x, y, z)` on which
/// `[x,[y,z]] - [[x,y],z] + (-1)^{|y||z|}[[x,z],y]` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub x: Basis,
    pub y: Basis,
    pub z: Basis,
    pub residual: Element,
}

/// Finite-dimensional superalgebra `L = L₀ ⊕ L₁` with `dim L₀ = n`,
/// `dim L₁ = m`, given by the products of basis vectors.
///
/// Every stored product lies in the component of parity `|a| + |b|`; this is
/// checked on construction, so a value of this type is always graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    n: usize,
    m: usize,
    /// `products[a * d + b]` is `[e_a, e_b]` in flat coordinates, `None` for zero.
    products: Vec<Option<Box<[Scalar]>>>,
}

/// Accumulates bracket definitions and validates them.
#[derive(Clone, Debug)]
pub struct TableBuilder {
    alg: SuperAlgebra,
    defined: Vec<bool>,
}

impl TableBuilder {
    pub fn new(n: usize, m: usize) -> Self {
        let d = n + m;
        TableBuilder { alg: SuperAlgebra::abelian(n, m), defined: vec![false; d * d] }
    }

    /// Defines `[a, b] = Σ c·t`. Repeated target tokens are summed; zero
    /// results are still recorded so that defining `[a, b]` twice is an error.
    pub fn set(&mut self, a: Basis, b: Basis, terms: &[(Scalar, Basis)]) -> Result<&mut Self> {
        let (n, m) = (self.alg.n, self.alg.m);
        let ka = a.flat(n, m)?;
        let kb = b.flat(n, m)?;
        let d = n + m;
        if self.defined[ka * d + kb] {
            return Err(Error::DuplicateProduct { a, b });
        }
        let target = a.parity + b.parity;
        let mut v = vec![Scalar::zero(); d];
        for (c, t) in terms {
            let kt = t.flat(n, m)?;
            if c.is_zero() {
                continue;
            }
            if t.parity != target {
                return Err(Error::GradingViolation { a, b, component: *t });
            }
            v[kt] += c;
        }
        self.defined[ka * d + kb] = true;
        self.alg.store(ka, kb, v);
        Ok(self)
    }

    /// Shorthand for `[a, b] = t`.
    pub fn unit(&mut self, a: Basis, b: Basis, t: Basis) -> Result<&mut Self> {
        self.set(a, b, &[(Scalar::one(), t)])
    }

    pub fn build(self) -> SuperAlgebra {
        self.alg
    }
}

impl SuperAlgebra {
    pub fn abelian(n: usize, m: usize) -> Self {
        let d = n + m;
        SuperAlgebra { n, m, products: vec![None; d * d] }
    }

    /// Builds from `(a, b, [a,b])` entries; absent pairs are zero.
    pub fn from_table(n: usize, m: usize, table: impl IntoIterator<Item = (Basis, Basis, Element)>) -> Result<Self> {
        let mut builder = TableBuilder::new(n, m);
        for (a, b, v) in table {
            if v.dims() != (n, m) {
                return Err(Error::DimensionMismatch { expected: format!("({n}|{m})"), found: format!("{:?}", v.dims()) });
            }
            let terms: Vec<(Scalar, Basis)> = v.terms().map(|(c, t)| (c.clone(), t)).collect();
            builder.set(a, b, &terms)?;
        }
        Ok(builder.build())
    }

    /// Builds from flat product vectors, validating the grading.
    pub(crate) fn from_flat_products(n: usize, m: usize, products: Vec<Option<Vec<Scalar>>>) -> Result<Self> {
        let d = n + m;
        assert_eq!(products.len(), d * d);
        let mut alg = SuperAlgebra::abelian(n, m);
        for (idx, p) in products.into_iter().enumerate() {
            let Some(v) = p else { continue };
            let (a, b) = (Basis::from_flat(idx / d.max(1), n), Basis::from_flat(idx % d.max(1), n));
            let target = a.parity + b.parity;
            for (k, c) in v.iter().enumerate() {
                let t = Basis::from_flat(k, n);
                if !c.is_zero() && t.parity != target {
                    return Err(Error::GradingViolation { a, b, component: t });
                }
            }
            alg.store(idx / d, idx % d, v);
        }
        Ok(alg)
    }

    fn store(&mut self, ka: usize, kb: usize, v: Vec<Scalar>) {
        let d = self.dim();
        self.products[ka * d + kb] = if v.iter().all(Scalar::is_zero) { None } else { Some(v.into_boxed_slice()) };
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn basis(&self) -> impl Iterator<Item = Basis> {
        let n = self.n;
        (0..self.dim()).map(move |k| Basis::from_flat(k, n))
    }

    pub fn parity_of_flat(&self, k: usize) -> Parity {
        if k < self.n {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `[e_a, e_b]` in flat coordinates, `None` when zero.
    pub fn product_flat(&self, a: usize, b: usize) -> Option<&[Scalar]> {
        self.products[a * self.dim() + b].as_deref()
    }

    pub fn product(&self, a: Basis, b: Basis) -> Result<Element> {
        let ka = a.flat(self.n, self.m)?;
        let kb = b.flat(self.n, self.m)?;
        Ok(match self.product_flat(ka, kb) {
            Some(v) => Element::from_flat(self.n, v.to_vec()),
            None => Element::zero(self.n, self.m),
        })
    }

    /// Nonzero products in canonical order: even-even, even-odd, odd-even,
    /// odd-odd, each block lexicographic in the two indices.
    pub fn entries(&self) -> Vec<(Basis, Basis, Element)> {
        let d = self.dim();
        let mut out: Vec<(Basis, Basis, Element)> = (0..d * d)
            .filter_map(|idx| {
                let v = self.products[idx].as_ref()?;
                Some((Basis::from_flat(idx / d, self.n), Basis::from_flat(idx % d, self.n), Element::from_flat(self.n, v.to_vec())))
            })
            .collect();
        out.sort_by_key(|(a, b, _)| (a.parity, b.parity, a.index, b.index));
        out
    }

    fn check(&self, e: &Element) -> Result<()> {
        if e.dims() != self.dims() {
            return Err(Error::DimensionMismatch { expected: format!("{:?}", self.dims()), found: format!("{:?}", e.dims()) });
        }
        Ok(())
    }

    fn mul_flat(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                if let Some(p) = self.product_flat(i, j) {
                    let c = ai * bj;
                    for (o, pk) in out.iter_mut().zip(p.iter()) {
                        if !pk.is_zero() {
                            *o += &(&c * pk);
                        }
                    }
                }
            }
        }
        out
    }

    /// Bilinear extension of the basis products.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element::from_flat(self.n, self.mul_flat(a.coords(), b.coords())))
    }

    /// `out += c · Σ_k v_k · row(k)`.
    fn accumulate<'a>(&'a self, out: &mut [Scalar], c: &Scalar, v: Option<&[Scalar]>, row: impl Fn(usize) -> Option<&'a [Scalar]>) {
        let Some(v) = v else { return };
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            if let Some(p) = row(k) {
                let ck = c * vk;
                for (o, pk) in out.iter_mut().zip(p.iter()) {
                    if !pk.is_zero() {
                        *o += &(&ck * pk);
                    }
                }
            }
        }
    }

    fn residual_flat(&self, x: usize, y: usize, z: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        let sign = Scalar::from_integer(self.parity_of_flat(y).sign(self.parity_of_flat(z)));
        self.accumulate(&mut out, &Scalar::one(), self.product_flat(y, z), |k| self.product_flat(x, k));
        self.accumulate(&mut out, &Scalar::from_integer(-1), self.product_flat(x, y), |k| self.product_flat(k, z));
        self.accumulate(&mut out, &sign, self.product_flat(x, z), |k| self.product_flat(k, y));
        out
    }

    /// Residual of the superidentity on a basis triple.
    pub fn superidentity_residual(&self, x: Basis, y: Basis, z: Basis) -> Result<Element> {
        let (n, m) = self.dims();
        Ok(Element::from_flat(n, self.residual_flat(x.flat(n, m)?, y.flat(n, m)?, z.flat(n, m)?)))
    }

    /// All basis triples with a nonzero superidentity residual; empty exactly
    /// when the algebra is a Leibniz superalgebra.
    pub fn superidentity_violations(&self) -> Vec<Violation> {
        let d = self.dim();
        let mut out = Vec::new();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let r = self.residual_flat(x, y, z);
                    if r.iter().any(|c| !c.is_zero()) {
                        out.push(Violation {
                            x: Basis::from_flat(x, self.n),
                            y: Basis::from_flat(y, self.n),
                            z: Basis::from_flat(z, self.n),
                            residual: Element::from_flat(self.n, r),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_leibniz(&self) -> bool {
        let d = self.dim();
        (0..d).all(|x| (0..d).all(|y| (0..d).all(|z| self.residual_flat(x, y, z).iter().all(Scalar::is_zero))))
    }

    /// `[a,b] + (-1)^{|a||b|}[b,a]` for basis indices.
    pub fn supersymmetrised_flat(&self, a: usize, b: usize) -> Vec<Scalar> {
        let sign = Scalar::from_integer(self.parity_of_flat(a).sign(self.parity_of_flat(b)));
        let d = self.dim();
        let zero = vec![Scalar::zero(); d];
        let ab = self.product_flat(a, b).map_or(zero.clone(), <[Scalar]>::to_vec);
        let ba = self.product_flat(b, a).map_or(zero, <[Scalar]>::to_vec);
        ab.iter().zip(&ba).map(|(u, v)| u + &(&sign * v)).collect()
    }

    /// Graded antisymmetry `[a,b] = -(-1)^{|a||b|}[b,a]` on all basis pairs.
    pub fn is_lie(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| (a..d).all(|b| self.supersymmetrised_flat(a, b).iter().all(Scalar::is_zero)))
    }

    /// `{z : [L, z] = 0}`, solved separately on each homogeneous component.
    pub fn right_annihilator(&self) -> GradedSubspace {
        let (n, m) = self.dims();
        let d = self.dim();
        let component = |range: std::ops::Range<usize>| -> Vec<Vec<Scalar>> {
            let width = range.len();
            if width == 0 {
                return Vec::new();
            }
            // one equation per (left factor b, output coordinate t)
            let mut rows = Vec::new();
            for b in 0..d {
                for t in 0..d {
                    let row: Vec<Scalar> = range.clone().map(|z| self.product_flat(b, z).map_or(Scalar::zero(), |p| p[t].clone())).collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            Matrix::from_rows(width, rows).expect("row width").nullspace()
        };
        GradedSubspace::span(n, m, component(0..n), component(n..d)).expect("component widths")
    }

    /// Transports the structure through the graded change of basis whose new
    /// basis vectors are the columns of `p_even` and `p_odd`.
    pub fn change_basis(&self, p_even: &Matrix, p_odd: &Matrix) -> Result<SuperAlgebra> {
        let (n, m) = self.dims();
        if p_even.rows() != n || p_even.cols() != n || p_odd.rows() != m || p_odd.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n} and {m}x{m}"),
                found: format!("{}x{} and {}x{}", p_even.rows(), p_even.cols(), p_odd.rows(), p_odd.cols()),
            });
        }
        let d = self.dim();
        let mut p = Matrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = p_even[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                p[(n + i, n + j)] = p_odd[(i, j)].clone();
            }
        }
        let p_inv = p.inverse()?;
        let columns: Vec<Vec<Scalar>> = (0..d).map(|j| p.column(j)).collect();
        let mut products = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let old = self.mul_flat(&columns[a], &columns[b]);
                let new = p_inv.mul_vec(&old);
                products.push(if new.iter().all(Scalar::is_zero) { None } else { Some(new) });
            }
        }
        SuperAlgebra::from_flat_products(n, m, products)
    }

    /// The Leibniz algebra `L₀` (restriction to even-even products).
    pub fn even_part(&self) -> SuperAlgebra {
        let n = self.n;
        let mut alg = SuperAlgebra::abelian(n, 0);
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = self.product_flat(a, b) {
                    alg.store(a, b, v[..n].to_vec());
                }
            }
        }
        alg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leib22_a() -> SuperAlgebra {
        let mut t = TableBuilder::new(2, 2);
        t.unit(Basis::y(1), Basis::x(1), Basis::y(2)).unwrap();
        t.set(Basis::x(1), Basis::y(1), &[(Scalar::ratio(1, 2), Basis::y(2))]).unwrap();
        t.unit(Basis::x(2), Basis::y(1), Basis::y(2)).unwrap();
        t.set(Basis::y(1), Basis::x(2), &[(Scalar::from_integer(2), Basis::y(2))]).unwrap();
        t.unit(Basis::y(1), Basis::y(1), Basis::x(2)).unwrap();
        t.build()
    }

    fn el(n: usize, m: usize, terms: &[(i64, Basis)]) -> Element {
        let mut e = Element::zero(n, m);
        for &(c, b) in terms {
            e = e.add(&Element::basis(n, m, b).unwrap().scale(&Scalar::from_integer(c)));
        }
        e
    }

    #[test]
    fn construction_checks_grading() {
        let mut t = TableBuilder::new(2, 0);
        t.unit(Basis::x(1), Basis::x(1), Basis::x(2)).unwrap();
        assert!(t.build().superidentity_violations().is_empty());
        let mut t = TableBuilder::new(1, 1);
        assert!(matches!(t.unit(Basis::y(1), Basis::y(1), Basis::y(1)), Err(Error::GradingViolation { .. })));
        assert!(matches!(t.unit(Basis::y(2), Basis::y(1), Basis::x(1)), Err(Error::IndexOutOfRange { .. })));
        t.unit(Basis::y(1), Basis::y(1), Basis::x(1)).unwrap();
        assert!(matches!(t.unit(Basis::y(1), Basis::y(1), Basis::x(1)), Err(Error::DuplicateProduct { .. })));
        assert!(leib22_a().superidentity_violations().is_empty());
    }

    #[test]
    fn multiplication() {
        let a = leib22_a();
        let y1 = el(2, 2, &[(1, Basis::y(1))]);
        let x2 = el(2, 2, &[(1, Basis::x(2))]);
        assert!(a.multiply(&Element::zero(2, 2), &y1).unwrap().is_zero());
        assert_eq!(a.multiply(&y1, &x2).unwrap(), el(2, 2, &[(2, Basis::y(2))]));
        // [y1 + x2, y1] = [y1,y1] + [x2,y1] = x2 + y2
        let lhs = y1.add(&x2);
        assert_eq!(a.multiply(&lhs, &y1).unwrap(), el(2, 2, &[(1, Basis::x(2)), (1, Basis::y(2))]));
    }

    #[test]
    fn superidentity_detects_non_leibniz() {
        let mut t = TableBuilder::new(1, 0);
        t.unit(Basis::x(1), Basis::x(1), Basis::x(1)).unwrap();
        let v = t.build().superidentity_violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].residual, el(1, 0, &[(1, Basis::x(1))]));
        assert!(SuperAlgebra::abelian(2, 3).superidentity_violations().is_empty());
    }

    #[test]
    fn annihilators() {
        assert_eq!(SuperAlgebra::abelian(2, 1).right_annihilator(), GradedSubspace::whole(2, 1));
        // null-filiform of dim 3: [x1,z] = z_1 x2 and [x2,z] = z_1 x3, so R(L) = {z_1 = 0}
        let mut t = TableBuilder::new(3, 0);
        t.unit(Basis::x(1), Basis::x(1), Basis::x(2)).unwrap();
        t.unit(Basis::x(2), Basis::x(1), Basis::x(3)).unwrap();
        let r = t.build().right_annihilator();
        assert_eq!(r.dims(), (2, 0));
        assert!(r.contains_vector(&el(3, 0, &[(1, Basis::x(3))]).coords()[..3], &[]).unwrap());
        assert!(r.contains_vector(&el(3, 0, &[(1, Basis::x(2))]).coords()[..3], &[]).unwrap());
        assert!(!r.contains_vector(&el(3, 0, &[(1, Basis::x(1))]).coords()[..3], &[]).unwrap());
    }

    #[test]
    fn lie_flag() {
        assert!(SuperAlgebra::abelian(1, 1).is_lie());
        let mut t = TableBuilder::new(2, 0);
        t.unit(Basis::x(1), Basis::x(1), Basis::x(2)).unwrap();
        assert!(!t.build().is_lie());
        // odd-odd products must be symmetric in a Lie superalgebra
        let mut t = TableBuilder::new(1, 1);
        t.unit(Basis::y(1), Basis::y(1), Basis::x(1)).unwrap();
        assert!(t.build().is_lie());
    }

    #[test]
    fn basis_change() {
        let a = leib22_a();
        assert_eq!(a.change_basis(&Matrix::identity(2), &Matrix::identity(2)).unwrap(), a);
        let p = Matrix::from_integers(&[&[1, 1], &[0, 1]]);
        let q = Matrix::from_integers(&[&[2, 0], &[1, 1]]);
        let b = a.change_basis(&p, &q).unwrap();
        assert!(b.superidentity_violations().is_empty());
        let back = b.change_basis(&p.inverse().unwrap(), &q.inverse().unwrap()).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.change_basis(&Matrix::zeros(2, 2), &q), Err(Error::SingularMatrix));

        // Leib_{1,2} with x1 scaled by 2: [y1, 2x1] = 2y2
        let mut t = TableBuilder::new(1, 2);
        t.unit(Basis::y(1), Basis::x(1), Basis::y(2)).unwrap();
        let l12 = t.build();
        let scaled = l12.change_basis(&Matrix::from_integers(&[&[2]]), &Matrix::identity(2)).unwrap();
        assert_eq!(scaled.product(Basis::y(1), Basis::x(1)).unwrap(), el(1, 2, &[(2, Basis::y(2))]));
    }
}
