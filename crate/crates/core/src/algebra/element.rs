use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^{αβ}` as `±1`.
    pub fn sign(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

/// Parity of a product: the grading is additive mod 2.
impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit((self.bit() + other.bit()) % 2)
    }
}

/// A homogeneous basis vector `x_i` (even) or `y_j` (odd), 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub parity: Parity,
    pub index: usize,
}

impl Basis {
    pub fn x(index: usize) -> Self {
        Basis { parity: Parity::Even, index }
    }

    pub fn y(index: usize) -> Self {
        Basis { parity: Parity::Odd, index }
    }

    /// Position in the flat coordinate vector `x_1..x_n, y_1..y_m`.
    pub fn flat(self, n: usize, m: usize) -> Result<usize> {
        let bound = match self.parity {
            Parity::Even => n,
            Parity::Odd => m,
        };
        if self.index == 0 || self.index > bound {
            return Err(Error::IndexOutOfRange { basis: self.to_string(), n, m });
        }
        Ok(match self.parity {
            Parity::Even => self.index - 1,
            Parity::Odd => n + self.index - 1,
        })
    }

    pub fn from_flat(k: usize, n: usize) -> Self {
        if k < n {
            Basis::x(k + 1)
        } else {
            Basis::y(k - n + 1)
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Parity::Even => write!(f, "x{}", self.index),
            Parity::Odd => write!(f, "y{}", self.index),
        }
    }
}

impl serde::Serialize for Basis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A vector of `L = L₀ ⊕ L₁` in coordinates `x_1..x_n, y_1..y_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    n: usize,
    coords: Vec<Scalar>,
}

impl Element {
    pub fn zero(n: usize, m: usize) -> Self {
        Element { n, coords: vec![Scalar::zero(); n + m] }
    }

    pub fn basis(n: usize, m: usize, b: Basis) -> Result<Self> {
        let mut e = Element::zero(n, m);
        e.coords[b.flat(n, m)?] = Scalar::one();
        Ok(e)
    }

    pub fn from_parts(even: Vec<Scalar>, odd: Vec<Scalar>) -> Self {
        let n = even.len();
        let mut coords = even;
        coords.extend(odd);
        Element { n, coords }
    }

    pub(crate) fn from_flat(n: usize, coords: Vec<Scalar>) -> Self {
        Element { n, coords }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.coords.len() - self.n)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn even(&self) -> &[Scalar] {
        &self.coords[..self.n]
    }

    pub fn odd(&self) -> &[Scalar] {
        &self.coords[self.n..]
    }

    pub fn coefficient(&self, b: Basis) -> Result<&Scalar> {
        let (n, m) = self.dims();
        Ok(&self.coords[b.flat(n, m)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// `Some(parity)` when all nonzero coordinates share one parity; zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let even = self.even().iter().any(|c| !c.is_zero());
        let odd = self.odd().iter().any(|c| !c.is_zero());
        match (even, odd) {
            (true, true) => None,
            (false, true) => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { n: self.n, coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.dims(), other.dims(), "element dims");
        Element { n: self.n, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.dims(), other.dims(), "element dims");
        Element { n: self.n, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    /// Nonzero `(coefficient, basis)` terms in coordinate order.
    pub fn terms(&self) -> impl Iterator<Item = (&Scalar, Basis)> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c, Basis::from_flat(k, self.n)))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::write_linear_combination(f, self.terms())
    }
}
