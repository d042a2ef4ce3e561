//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`Scalar`] is stored in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` of the
//! smallest field it was built in. Binary operations embed both operands into
//! `Q(ζ_lcm)`; purely rational values always collapse back to `N = 1`, so the
//! common all-rational case never carries a cyclotomic vector around.

mod cyclotomic;
pub(crate) mod literal;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_polynomial, totient};
use cyclotomic::{lcm, phi_poly, reduce};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("root index must be positive")]
    ZeroRootIndex,
    #[error("cannot embed Q(z({from})) into Q(z({to}))")]
    Embedding { from: u32, to: u32 },
    #[error("column {column}: {message}")]
    Literal { column: usize, message: String },
}

#[derive(Clone, Debug)]
enum Repr {
    Rational(Rational),
    /// `coeffs.len() == totient(order)`, some non-constant coefficient is nonzero.
    Cyclotomic {
        order: u32,
        coeffs: Vec<Rational>,
    },
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

fn rzero() -> Rational {
    Rational::zero()
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rational(rzero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rational(Rational::one()))
    }

    pub fn from_integer(value: i64) -> Self {
        Scalar(Repr::Rational(Rational::from_integer(value.into())))
    }

    /// `numer / denom`; panics when `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar(Repr::Rational(Rational::new(numer.into(), denom.into())))
    }

    pub fn from_rational(value: Rational) -> Self {
        Scalar(Repr::Rational(value))
    }

    fn from_coeffs(order: u32, mut coeffs: Vec<Rational>) -> Self {
        if order <= 2 || coeffs[1..].iter().all(Zero::is_zero) {
            let c0 = if coeffs.is_empty() { rzero() } else { coeffs.swap_remove(0) };
            return Scalar(Repr::Rational(c0));
        }
        Scalar(Repr::Cyclotomic { order, coeffs })
    }

    /// `ζ_t^m`, the root `cos 2πm/t + i sin 2πm/t`. Panics when `t == 0`.
    pub fn root_of_unity(t: u32, m: i64) -> Self {
        assert!(t >= 1, "root of unity of order 0");
        let k = m.rem_euclid(t as i64) as usize;
        match t {
            1 => Scalar::one(),
            2 => Scalar::from_integer(if k == 0 { 1 } else { -1 }),
            _ => {
                let mut poly = vec![rzero(); k + 1];
                poly[k] = Rational::one();
                Scalar::from_coeffs(t, reduce(poly, t))
            }
        }
    }

    /// `δ · r` where `r` is the fixed `j`-th root of `δ^exponent`: `r = 1` when
    /// the radicand is `1` and `r = ζ_{2j}` when it is `-1`.
    pub fn jth_root_of_sign(delta: i64, j: u32, exponent: i64) -> Result<Self, ScalarError> {
        if delta != 1 && delta != -1 {
            return Err(ScalarError::InvalidSign(delta));
        }
        if j == 0 {
            return Err(ScalarError::ZeroRootIndex);
        }
        let radicand_negative = delta == -1 && exponent.rem_euclid(2) == 1;
        let root = if radicand_negative { Scalar::root_of_unity(2 * j, 1) } else { Scalar::one() };
        Ok(if delta == 1 { root } else { -root })
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Cyclotomic { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_one())
    }

    /// The order `N` of the field this value is currently represented in.
    pub fn order(&self) -> u32 {
        match &self.0 {
            Repr::Rational(_) => 1,
            Repr::Cyclotomic { order, .. } => *order,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Cyclotomic { .. } => None,
        }
    }

    /// Power-basis coordinates in `Q(ζ_order)`; `order` must be a multiple of
    /// [`Scalar::order`].
    pub fn coefficients_in(&self, order: u32) -> Result<Vec<Rational>, ScalarError> {
        let own = self.order();
        if order == 0 || !order.is_multiple_of(own) {
            return Err(ScalarError::Embedding { from: own, to: order });
        }
        Ok(self.embed(order))
    }

    fn embed(&self, order: u32) -> Vec<Rational> {
        let phi = totient(order);
        match &self.0 {
            Repr::Rational(r) => {
                let mut v = vec![rzero(); phi];
                v[0] = r.clone();
                v
            }
            Repr::Cyclotomic { order: own, coeffs } if *own == order => coeffs.clone(),
            Repr::Cyclotomic { order: own, coeffs } => {
                let step = (order / own) as usize;
                let mut poly = vec![rzero(); (coeffs.len() - 1) * step + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    poly[i * step] = c.clone();
                }
                reduce(poly, order)
            }
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match &self.0 {
            Repr::Rational(r) if r.is_zero() => Err(ScalarError::DivisionByZero),
            Repr::Rational(r) => Ok(Scalar(Repr::Rational(r.recip()))),
            Repr::Cyclotomic { order, coeffs } => Ok(Scalar::from_coeffs(*order, invert(*order, coeffs))),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exponent: i64) -> Result<Self, ScalarError> {
        let base = if exponent < 0 { self.inv()? } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The same value expressed in the smallest cyclotomic field containing it.
    pub fn canonical(&self) -> Scalar {
        let Repr::Cyclotomic { order, coeffs } = &self.0 else {
            return self.clone();
        };
        let order = *order;
        for d in (3..order).filter(|d| order % d == 0 && d % 4 != 2) {
            if let Some(sub) = express_in_subfield(order, coeffs, d) {
                return Scalar::from_coeffs(d, sub);
            }
        }
        self.clone()
    }
}

/// Inverse of a nonzero element of `Q(ζ_order)` by solving `a · b = 1` as a
/// linear system on power-basis coordinates.
fn invert(order: u32, coeffs: &[Rational]) -> Vec<Rational> {
    let phi = coeffs.len();
    // column j holds a · ζ^j
    let mut columns = Vec::with_capacity(phi);
    let mut cur = coeffs.to_vec();
    for _ in 0..phi {
        columns.push(cur.clone());
        let mut shifted = vec![rzero()];
        shifted.extend(cur);
        cur = reduce(shifted, order);
    }
    let mut rhs = vec![rzero(); phi];
    rhs[0] = Rational::one();
    solve(&columns, &rhs).expect("nonzero cyclotomic element is invertible")
}

/// Solves `Σ_j x_j · columns[j] = rhs` exactly; `None` when inconsistent.
/// Columns must be linearly independent.
#[allow(clippy::needless_range_loop)]
fn solve(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].recip();
        for v in aug[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=cols {
                    let delta = &f * &aug[pivot_row][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![rzero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

fn express_in_subfield(order: u32, coeffs: &[Rational], sub: u32) -> Option<Vec<Rational>> {
    let z = Scalar::root_of_unity(sub, 1);
    let mut basis = Vec::new();
    let mut cur = Scalar::one();
    for _ in 0..totient(sub) {
        basis.push(cur.embed(order));
        cur = &cur * &z;
    }
    solve(&basis, coeffs)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_integer(v)
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::from_rational(v)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (Repr::Rational(_), _) | (_, Repr::Rational(_)) => false,
            (Repr::Cyclotomic { order: a, .. }, Repr::Cyclotomic { order: b, .. }) => {
                let l = lcm(*a, *b);
                self.embed(l) == other.embed(l)
            }
        }
    }
}

impl Eq for Scalar {}

fn combine(a: &Scalar, b: &Scalar, op: impl Fn(&mut Rational, &Rational)) -> Scalar {
    let l = lcm(a.order(), b.order());
    let mut x = a.embed(l);
    for (xi, yi) in x.iter_mut().zip(b.embed(l).iter()) {
        op(xi, yi);
    }
    Scalar::from_coeffs(l, x)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            _ => combine(self, rhs, |x, y| *x += y),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a - b)),
            _ => combine(self, rhs, |x, y| *x -= y),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Rational(r), Repr::Cyclotomic { order, coeffs }) | (Repr::Cyclotomic { order, coeffs }, Repr::Rational(r)) => {
                if r.is_zero() {
                    return Scalar::zero();
                }
                Scalar(Repr::Cyclotomic { order: *order, coeffs: coeffs.iter().map(|c| c * r).collect() })
            }
            (Repr::Cyclotomic { order: a, .. }, Repr::Cyclotomic { order: b, .. }) => {
                let l = lcm(*a, *b);
                let x = self.embed(l);
                let y = rhs.embed(l);
                let mut prod = vec![rzero(); x.len() + y.len() - 1];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        if !yj.is_zero() {
                            prod[i + j] += xi * yj;
                        }
                    }
                }
                Scalar::from_coeffs(l, reduce(prod, l))
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(-r)),
            Repr::Cyclotomic { order, coeffs } => Scalar(Repr::Cyclotomic { order: *order, coeffs: coeffs.iter().map(|c| -c).collect() }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&mut self.0, &rhs.0) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&mut self.0, &rhs.0) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        if let (Repr::Rational(a), Repr::Rational(b)) = (&mut self.0, &rhs.0) {
            *a *= b;
            return;
        }
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// True when the canonical literal is a single signed monomial, i.e. it
    /// can be written in front of a basis token without parentheses.
    pub(crate) fn is_monomial(&self) -> bool {
        match &self.canonical().0 {
            Repr::Rational(_) => true,
            Repr::Cyclotomic { coeffs, .. } => coeffs.iter().filter(|c| !c.is_zero()).count() == 1,
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical literal: `p/q`, `c*z(N)^k` terms joined by ` + ` / ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        let (order, coeffs) = match &canon.0 {
            Repr::Rational(r) => return f.write_str(&fmt_rational(r)),
            Repr::Cyclotomic { order, coeffs } => (*order, coeffs),
        };
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if k == 0 {
                fmt_rational(&mag)
            } else if mag.is_one() {
                format!("z({order})^{k}")
            } else {
                format!("{}*z({order})^{k}", fmt_rational(&mag))
            };
            match (first, negative) {
                (true, false) => f.write_str(&body)?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses `p/q`, `p`, `z(N)^k`, products with `*` and sums with `+`/`-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        literal::parse_scalar(s).map_err(|e| ScalarError::Literal { column: e.column, message: e.message })
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from_rational(Rational::from_integer(v))
    }
}

/// Evaluates the integer polynomial `Φ_order` at `x`.
pub fn evaluate_cyclotomic(order: u32, x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for &c in phi_poly(order).iter().rev() {
        acc = &(&acc * x) + &Scalar::from_integer(c);
    }
    acc
}
