//! Constructors for the classified superalgebras and the operators that
//! normalise their parameters.

mod normal_forms;

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Basis, SuperAlgebra, TableBuilder};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use normal_forms::{canonical_list, op_v, op_w, s_root, CanonicalEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    NullFiliform,
    MixedSingleGenerated,
    Leib1M,
    LeibN1,
    Leib22A,
    Leib22B,
    Leib2MA,
    Leib2MB,
    L,
    G,
    M,
    H,
    EOdd,
    EEven,
    F,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 15] = [
        FamilyTag::NullFiliform,
        FamilyTag::MixedSingleGenerated,
        FamilyTag::Leib1M,
        FamilyTag::LeibN1,
        FamilyTag::Leib22A,
        FamilyTag::Leib22B,
        FamilyTag::Leib2MA,
        FamilyTag::Leib2MB,
        FamilyTag::L,
        FamilyTag::G,
        FamilyTag::M,
        FamilyTag::H,
        FamilyTag::EOdd,
        FamilyTag::EEven,
        FamilyTag::F,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::NullFiliform => "NULL_FILIFORM",
            FamilyTag::MixedSingleGenerated => "MIXED_SINGLE_GENERATED",
            FamilyTag::Leib1M => "LEIB_1M",
            FamilyTag::LeibN1 => "LEIB_N1",
            FamilyTag::Leib22A => "LEIB_22_A",
            FamilyTag::Leib22B => "LEIB_22_B",
            FamilyTag::Leib2MA => "LEIB_2M_A",
            FamilyTag::Leib2MB => "LEIB_2M_B",
            FamilyTag::L => "L",
            FamilyTag::G => "G",
            FamilyTag::M => "M",
            FamilyTag::H => "H",
            FamilyTag::EOdd => "E_ODD",
            FamilyTag::EEven => "E_EVEN",
            FamilyTag::F => "F",
        }
    }

    /// `m` as a function of `n` for the single-parameter dimension families.
    pub fn odd_dim(self, n: usize) -> Option<usize> {
        match self {
            FamilyTag::NullFiliform => Some(0),
            FamilyTag::LeibN1 => Some(1),
            FamilyTag::L | FamilyTag::G => n.checked_sub(1),
            FamilyTag::M | FamilyTag::H => Some(n),
            FamilyTag::EOdd | FamilyTag::EEven => Some(n + 1),
            FamilyTag::F => Some(n + 2),
            FamilyTag::Leib22A | FamilyTag::Leib22B => Some(2),
            _ => None,
        }
    }

    /// Checks the dimension constraints and returns the parameter count.
    pub fn arity(self, n: usize, m: usize) -> Result<usize> {
        let bad = |why: &str| Err(Error::Family(format!("{} at (n,m)=({n},{m}): {why}", self.name())));
        match self {
            FamilyTag::NullFiliform if m != 0 || n < 1 => bad("needs n ≥ 1 and m = 0"),
            FamilyTag::MixedSingleGenerated if !(m == n || m == n + 1) || n + m == 0 => bad("needs m = n or m = n+1"),
            FamilyTag::Leib1M if n != 1 || m < 1 => bad("needs n = 1 and m ≥ 1"),
            FamilyTag::LeibN1 if m != 1 || n < 1 => bad("needs n ≥ 1 and m = 1"),
            FamilyTag::LeibN1 => Ok(1),
            FamilyTag::Leib22A | FamilyTag::Leib22B if (n, m) != (2, 2) => bad("needs (n,m) = (2,2)"),
            FamilyTag::Leib2MA if n != 2 || m < 3 || m.is_multiple_of(2) => bad("needs n = 2 and odd m ≥ 3"),
            FamilyTag::Leib2MB if n != 2 || m.is_multiple_of(2) => bad("needs n = 2 and odd m"),
            FamilyTag::L | FamilyTag::G | FamilyTag::M | FamilyTag::H if n < 3 => bad("needs n ≥ 3"),
            FamilyTag::L | FamilyTag::G if m + 1 != n => bad("needs m = n-1"),
            FamilyTag::M | FamilyTag::H if m != n => bad("needs m = n"),
            FamilyTag::L | FamilyTag::G => Ok(n - 2),
            FamilyTag::M | FamilyTag::H => Ok(n - 1),
            FamilyTag::EOdd if n < 3 || n.is_multiple_of(2) || m != n + 1 => bad("needs odd n ≥ 3 and m = n+1"),
            FamilyTag::EEven if n < 2 || n % 2 == 1 || m != n + 1 => bad("needs even n ≥ 2 and m = n+1"),
            FamilyTag::EOdd | FamilyTag::EEven => Ok(n + 1 - e_low(n) + 2),
            FamilyTag::F if n < 2 || m != n + 2 => bad("needs n ≥ 2 and m = n+2"),
            FamilyTag::F => Ok(n + 2 - f_low(n)),
            _ => Ok(0),
        }
    }

    /// Parameter names in order, for help output.
    pub fn parameter_names(self, n: usize) -> Vec<String> {
        let range = |p: &str, lo: usize, hi: usize| (lo..=hi).map(|k| format!("{p}{k}")).collect::<Vec<_>>();
        let mut names = match self {
            FamilyTag::LeibN1 => vec!["alpha".into()],
            FamilyTag::L | FamilyTag::M => range("alpha", 4, n),
            FamilyTag::G | FamilyTag::H => range("beta", 4, n),
            FamilyTag::EOdd | FamilyTag::EEven => {
                let mut v = vec!["gamma".to_string()];
                v.extend(range("beta", e_low(n), n));
                v
            }
            FamilyTag::F => range("beta", f_low(n), n + 1),
            _ => Vec::new(),
        };
        match self {
            FamilyTag::L => names.push("theta".into()),
            FamilyTag::G => names.push("gamma".into()),
            FamilyTag::M => names.extend(["theta".into(), "tau".into()]),
            FamilyTag::H => names.extend(["delta".into(), "gamma".into()]),
            FamilyTag::EOdd | FamilyTag::EEven => names.push("beta".into()),
            _ => {}
        }
        names
    }
}

/// Lowest β index of family E, `⌊(n+4)/2⌋`.
pub(crate) fn e_low(n: usize) -> usize {
    (n + 4) / 2
}

/// Lowest β index of family F, `⌊(n+5)/2⌋`.
pub(crate) fn f_low(n: usize) -> usize {
    (n + 5) / 2
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase().replace('-', "_");
        FamilyTag::ALL.into_iter().find(|t| t.name() == up).ok_or_else(|| Error::Family(format!("unknown family tag '{s}'")))
    }
}

impl serde::Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A family member: tag, dims and parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyId {
    pub tag: FamilyTag,
    pub n: usize,
    pub m: usize,
    pub params: Vec<Scalar>,
}

impl FamilyId {
    pub fn new(tag: FamilyTag, n: usize, m: usize, params: Vec<Scalar>) -> Result<Self> {
        let arity = tag.arity(n, m)?;
        if params.len() != arity {
            return Err(Error::Family(format!("{tag} at (n,m)=({n},{m}) takes {arity} parameters, got {}", params.len())));
        }
        Ok(FamilyId { tag, n, m, params })
    }

    pub fn build(&self) -> Result<SuperAlgebra> {
        let (n, m, p) = (self.n, self.m, &self.params[..]);
        match self.tag {
            FamilyTag::NullFiliform => null_filiform(n),
            FamilyTag::MixedSingleGenerated => mixed_single_generated(n, m),
            FamilyTag::Leib1M => leib_1m(m),
            FamilyTag::LeibN1 => leib_n1(n, &p[0]),
            FamilyTag::Leib22A => leib_22_a(),
            FamilyTag::Leib22B => leib_22_b(),
            FamilyTag::Leib2MA => leib_2m_a(m),
            FamilyTag::Leib2MB => leib_2m_b(m),
            FamilyTag::L => family_l(n, &p[..n - 3], &p[n - 3]),
            FamilyTag::G => family_g(n, &p[..n - 3], &p[n - 3]),
            FamilyTag::M => family_m(n, &p[..n - 3], &p[n - 3], &p[n - 2]),
            FamilyTag::H => family_h(n, &p[..n - 3], &p[n - 3], &p[n - 2]),
            FamilyTag::EOdd | FamilyTag::EEven => {
                let k = p.len();
                family_e(n, &p[0], &p[1..k - 1], &p[k - 1])
            }
            FamilyTag::F => family_f(n, p),
        }
    }
}

impl FamilyId {
    /// `n+m+1` for the single-generated models, `n+m` for the others.
    pub fn expected_nilindex(&self) -> usize {
        let d = self.n + self.m;
        match self.tag {
            FamilyTag::NullFiliform | FamilyTag::MixedSingleGenerated => d + 1,
            FamilyTag::LeibN1 if self.n == 1 && self.params[0].is_one() => d + 1,
            _ => d,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        write!(f, "{}[{},{}]({})", self.tag, self.n, self.m, params.join(", "))
    }
}

impl serde::Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FamilyId", 4)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        let params: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        st.serialize_field("params", &params)?;
        st.end()
    }
}

/// Sweep of a family over a value grid: the full product grid when the
/// arity is at most `full_arity`, else `samples` seeded draws from it.
/// `LEIB_N1` only accepts `0` and `1`, so other grid values are dropped there.
pub fn parameter_sweep(tag: FamilyTag, n: usize, m: usize, grid: &[Scalar], full_arity: usize, samples: usize, seed: u64) -> Result<Vec<FamilyId>> {
    use rand::{Rng, SeedableRng};
    let arity = tag.arity(n, m)?;
    let grid: Vec<Scalar> = match tag {
        FamilyTag::LeibN1 => grid.iter().filter(|v| v.is_zero() || v.is_one()).cloned().collect(),
        _ => grid.to_vec(),
    };
    if grid.is_empty() && arity > 0 {
        return Err(Error::Family("empty parameter grid".into()));
    }
    let mut out = Vec::new();
    if arity <= full_arity {
        let total = grid.len().pow(arity as u32);
        for mut code in 0..total {
            let mut params = Vec::with_capacity(arity);
            for _ in 0..arity {
                params.push(grid[code % grid.len()].clone());
                code /= grid.len();
            }
            out.push(FamilyId::new(tag, n, m, params)?);
        }
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let params = (0..arity).map(|_| grid[rng.gen_range(0..grid.len())].clone()).collect();
            out.push(FamilyId::new(tag, n, m, params)?);
        }
    }
    Ok(out)
}

/// Dimension pairs at which each family is swept by default.
pub fn sweep_dims(tag: FamilyTag) -> Vec<(usize, usize)> {
    let along = |ns: &[usize]| ns.iter().filter_map(|&n| tag.odd_dim(n).map(|m| (n, m))).collect();
    match tag {
        FamilyTag::L | FamilyTag::G | FamilyTag::M | FamilyTag::H => along(&[3, 4, 5, 6]),
        FamilyTag::EOdd => along(&[3, 5]),
        FamilyTag::EEven => along(&[2, 4]),
        FamilyTag::F => along(&[2, 3, 4, 5]),
        FamilyTag::NullFiliform => along(&[1, 2, 3, 4, 5, 6]),
        FamilyTag::LeibN1 => along(&[1, 2, 3, 4, 5]),
        FamilyTag::Leib22A | FamilyTag::Leib22B => vec![(2, 2)],
        FamilyTag::Leib1M => (1..=5).map(|m| (1, m)).collect(),
        FamilyTag::Leib2MA => vec![(2, 3), (2, 5)],
        FamilyTag::Leib2MB => vec![(2, 1), (2, 3), (2, 5)],
        FamilyTag::MixedSingleGenerated => vec![(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4)],
    }
}

/// Every family swept over `grid` at its [`sweep_dims`].
pub fn corpus(grid: &[Scalar], full_arity: usize, samples: usize, seed: u64) -> Result<Vec<FamilyId>> {
    let mut out = Vec::new();
    for tag in FamilyTag::ALL {
        for (n, m) in sweep_dims(tag) {
            out.extend(parameter_sweep(tag, n, m, grid, full_arity, samples, seed)?);
        }
    }
    Ok(out)
}

/// The value grid `{0, 1, -1, 1/2}`.
pub fn standard_grid() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::one(), Scalar::from_integer(-1), Scalar::ratio(1, 2)]
}

fn x(i: usize) -> Basis {
    Basis::x(i)
}

fn y(j: usize) -> Basis {
    Basis::y(j)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

/// `Σ_k c(k) · t(k)` over an index range.
fn sum(range: impl Iterator<Item = usize>, mut term: impl FnMut(usize) -> (Scalar, Basis)) -> Vec<(Scalar, Basis)> {
    range.map(&mut term).collect()
}

/// Wraps a constructor failure with the family name, so that an index-range
/// inconsistency in a table surfaces with its origin.
fn bracket_error(family: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Family(format!("{family}: {e}"))
}

/// `[e_i, e_1] = e_{i+1}`, `m = 0`.
pub fn null_filiform(n: usize) -> Result<SuperAlgebra> {
    FamilyTag::NullFiliform.arity(n, 0)?;
    let mut t = TableBuilder::new(n, 0);
    for i in 1..n {
        t.unit(x(i), x(1), x(i + 1))?;
    }
    Ok(t.build())
}

/// Basis vector `e_i` of the mixed single-generated algebra: odd index means
/// odd parity.
fn mixed_basis(i: usize) -> Basis {
    if i % 2 == 1 {
        y(i.div_ceil(2))
    } else {
        x(i / 2)
    }
}

/// `[e_i, e_1] = e_{i+1}`, `[e_i, e_2] = 2 e_{i+2}` with `e_1` odd.
pub fn mixed_single_generated(n: usize, m: usize) -> Result<SuperAlgebra> {
    FamilyTag::MixedSingleGenerated.arity(n, m)?;
    let d = n + m;
    let mut t = TableBuilder::new(n, m);
    for i in 1..d {
        t.unit(mixed_basis(i), mixed_basis(1), mixed_basis(i + 1))?;
    }
    for i in 1..d.saturating_sub(1) {
        t.set(mixed_basis(i), mixed_basis(2), &[(Scalar::from_integer(2), mixed_basis(i + 2))])?;
    }
    Ok(t.build())
}

pub fn leib_1m(m: usize) -> Result<SuperAlgebra> {
    FamilyTag::Leib1M.arity(1, m)?;
    let mut t = TableBuilder::new(1, m);
    for i in 1..m {
        t.unit(y(i), x(1), y(i + 1))?;
    }
    Ok(t.build())
}

/// `α` must be 0 or 1.
pub fn leib_n1(n: usize, alpha: &Scalar) -> Result<SuperAlgebra> {
    FamilyTag::LeibN1.arity(n, 1)?;
    if !(alpha.is_zero() || alpha.is_one()) {
        return Err(Error::Family(format!("LEIB_N1 needs alpha in {{0, 1}}, got {alpha}")));
    }
    let mut t = TableBuilder::new(n, 1);
    for i in 1..n {
        t.unit(x(i), x(1), x(i + 1))?;
    }
    t.set(y(1), y(1), &[(alpha.clone(), x(n))])?;
    Ok(t.build())
}

/// The first `(2|2)` table, with `[x1, y1] = 1/2 y2`.
pub fn leib_22_a() -> Result<SuperAlgebra> {
    let mut t = TableBuilder::new(2, 2);
    t.unit(y(1), x(1), y(2))?;
    t.set(x(1), y(1), &[(half(), y(2))])?;
    t.unit(x(2), y(1), y(2))?;
    t.set(y(1), x(2), &[(Scalar::from_integer(2), y(2))])?;
    t.unit(y(1), y(1), x(2))?;
    Ok(t.build())
}

/// The second `(2|2)` table, without `[x1, y1]`.
pub fn leib_22_b() -> Result<SuperAlgebra> {
    let mut t = TableBuilder::new(2, 2);
    t.unit(y(1), x(1), y(2))?;
    t.unit(x(2), y(1), y(2))?;
    t.set(y(1), x(2), &[(Scalar::from_integer(2), y(2))])?;
    t.unit(y(1), y(1), x(2))?;
    Ok(t.build())
}

fn alternating(i: usize) -> Scalar {
    Scalar::from_integer(if i % 2 == 1 { 1 } else { -1 })
}

/// `[x1,x1] = x2`, `[y_i,x1] = y_{i+1}`, `[x1,y_i] = -y_{i+1}`,
/// `[y_i, y_{m+1-i}] = (-1)^{i+1} x2` for every `1 ≤ i ≤ m`.
pub fn leib_2m_a(m: usize) -> Result<SuperAlgebra> {
    FamilyTag::Leib2MA.arity(2, m)?;
    let mut t = TableBuilder::new(2, m);
    t.unit(x(1), x(1), x(2))?;
    for i in 1..m {
        t.unit(y(i), x(1), y(i + 1))?;
        t.set(x(1), y(i), &[(Scalar::from_integer(-1), y(i + 1))])?;
    }
    for i in 1..=m {
        t.set(y(i), y(m + 1 - i), &[(alternating(i), x(2))])?;
    }
    Ok(t.build())
}

/// `[y_i,x1] = -y_{i+1}`, `[x1,y_i] = y_{i+1}`,
/// `[y_{m+1-i}, y_i] = (-1)^{i+1} x2` for every `1 ≤ i ≤ m`.
pub fn leib_2m_b(m: usize) -> Result<SuperAlgebra> {
    FamilyTag::Leib2MB.arity(2, m)?;
    let mut t = TableBuilder::new(2, m);
    for i in 1..m {
        t.set(y(i), x(1), &[(Scalar::from_integer(-1), y(i + 1))])?;
        t.unit(x(1), y(i), y(i + 1))?;
    }
    for i in 1..=m {
        t.set(y(m + 1 - i), y(i), &[(alternating(i), x(2))])?;
    }
    Ok(t.build())
}

fn check_params(tag: FamilyTag, n: usize, m: usize, got: usize) -> Result<()> {
    let arity = tag.arity(n, m)?;
    if got != arity {
        return Err(Error::Family(format!("{tag} at n={n} takes {arity} parameters, got {got}")));
    }
    Ok(())
}

/// Family `L(α₄, …, α_n, θ)` in dims `(n | n-1)`; `alpha[0]` is `α₄`.
pub fn family_l(n: usize, alpha: &[Scalar], theta: &Scalar) -> Result<SuperAlgebra> {
    check_params(FamilyTag::L, n, n.wrapping_sub(1), alpha.len() + 1)?;
    let a = |k: usize| alpha[k - 4].clone();
    let build = || -> Result<SuperAlgebra> {
        let mut t = TableBuilder::new(n, n - 1);
        t.unit(x(1), x(1), x(3))?;
        for i in 2..=n - 1 {
            t.unit(x(i), x(1), x(i + 1))?;
        }
        for j in 1..=n - 2 {
            t.unit(y(j), x(1), y(j + 1))?;
        }
        t.set(x(1), y(1), &[(half(), y(2))])?;
        for i in 2..=n - 1 {
            t.set(x(i), y(1), &[(half(), y(i))])?;
        }
        t.unit(y(1), y(1), x(1))?;
        for j in 2..=n - 1 {
            t.unit(y(j), y(1), x(j + 1))?;
        }
        let mut v = sum(4..n, |k| (a(k), x(k)));
        v.push((theta.clone(), x(n)));
        t.set(x(1), x(2), &v)?;
        for j in 2..=n - 2 {
            t.set(x(j), x(2), &sum(4..=n + 2 - j, |k| (a(k), x(k + j - 2))))?;
        }
        let mut v = sum(4..n, |k| (a(k), y(k - 1)));
        v.push((theta.clone(), y(n - 1)));
        t.set(y(1), x(2), &v)?;
        for j in 2..=n.saturating_sub(3) {
            t.set(y(j), x(2), &sum(4..=n + 1 - j, |k| (a(k), y(k + j - 2))))?;
        }
        Ok(t.build())
    };
    build().map_err(bracket_error("L"))
}

/// Family `G(β₄, …, β_n, γ)` in dims `(n | n-1)`.
pub fn family_g(n: usize, beta: &[Scalar], gamma: &Scalar) -> Result<SuperAlgebra> {
    check_params(FamilyTag::G, n, n.wrapping_sub(1), beta.len() + 1)?;
    let b = |k: usize| beta[k - 4].clone();
    let build = || -> Result<SuperAlgebra> {
        let mut t = TableBuilder::new(n, n - 1);
        t.unit(x(1), x(1), x(3))?;
        for i in 3..=n - 1 {
            t.unit(x(i), x(1), x(i + 1))?;
        }
        for j in 1..=n - 2 {
            t.unit(y(j), x(1), y(j + 1))?;
        }
        t.set(x(1), x(2), &sum(4..=n, |k| (b(k), x(k))))?;
        t.set(x(2), x(2), &[(gamma.clone(), x(n))])?;
        for j in 3..=n - 2 {
            t.set(x(j), x(2), &sum(4..=n + 2 - j, |k| (b(k), x(k + j - 2))))?;
        }
        t.unit(y(1), y(1), x(1))?;
        for j in 2..=n - 1 {
            t.unit(y(j), y(1), x(j + 1))?;
        }
        t.set(x(1), y(1), &[(half(), y(2))])?;
        for i in 3..=n - 1 {
            t.set(x(i), y(1), &[(half(), y(i))])?;
        }
        for j in 1..=n - 3 {
            t.set(y(j), x(2), &sum(4..=n + 1 - j, |k| (b(k), y(k + j - 2))))?;
        }
        Ok(t.build())
    };
    build().map_err(bracket_error("G"))
}

/// Family `M(α₄, …, α_n, θ, τ)` in dims `(n | n)`.
///
/// `[x2, x2]` carries the same coefficients as `[y2, x2]`
/// (`α₄x₄ + … + α_{n-1}x_{n-1} + θx_n`); the superidentity on
/// `(x2, x2, y1)` leaves no other choice.
pub fn family_m(n: usize, alpha: &[Scalar], theta: &Scalar, tau: &Scalar) -> Result<SuperAlgebra> {
    check_params(FamilyTag::M, n, n, alpha.len() + 2)?;
    let a = |k: usize| alpha[k - 4].clone();
    let build = || -> Result<SuperAlgebra> {
        let mut t = TableBuilder::new(n, n);
        t.unit(x(1), x(1), x(3))?;
        for i in 2..=n - 1 {
            t.unit(x(i), x(1), x(i + 1))?;
        }
        for j in 1..=n - 1 {
            t.unit(y(j), x(1), y(j + 1))?;
        }
        t.set(x(1), y(1), &[(half(), y(2))])?;
        for i in 2..=n {
            t.set(x(i), y(1), &[(half(), y(i))])?;
        }
        t.unit(y(1), y(1), x(1))?;
        for j in 2..=n - 1 {
            t.unit(y(j), y(1), x(j + 1))?;
        }
        let mut v = sum(4..n, |k| (a(k), x(k)));
        v.push((theta.clone(), x(n)));
        t.set(x(1), x(2), &v)?;
        t.set(x(2), x(2), &v)?;
        for j in 3..=n - 2 {
            t.set(x(j), x(2), &sum(4..=n + 2 - j, |k| (a(k), x(k + j - 2))))?;
        }
        let mut v = sum(4..n, |k| (a(k), y(k - 1)));
        v.push((theta.clone(), y(n - 1)));
        v.push((tau.clone(), y(n)));
        t.set(y(1), x(2), &v)?;
        let mut v = sum(4..n, |k| (a(k), y(k)));
        v.push((theta.clone(), y(n)));
        t.set(y(2), x(2), &v)?;
        for j in 3..=n - 2 {
            t.set(y(j), x(2), &sum(4..=n + 2 - j, |k| (a(k), y(k + j - 2))))?;
        }
        Ok(t.build())
    };
    build().map_err(bracket_error("M"))
}

/// Family `H(β₄, …, β_n, δ, γ)` in dims `(n | n)`.
///
/// `[y_j, x1] = y_{j+1}` runs up to `j = n-1` and `[x_i, y1] = 1/2 y_i` up to
/// `i = n`; with the shorter ranges `[y_{n-1}, x1] = 2[x_n, y1]` fails.
pub fn family_h(n: usize, beta: &[Scalar], delta: &Scalar, gamma: &Scalar) -> Result<SuperAlgebra> {
    check_params(FamilyTag::H, n, n, beta.len() + 2)?;
    let b = |k: usize| beta[k - 4].clone();
    let build = || -> Result<SuperAlgebra> {
        let mut t = TableBuilder::new(n, n);
        t.unit(x(1), x(1), x(3))?;
        for i in 3..=n - 1 {
            t.unit(x(i), x(1), x(i + 1))?;
        }
        for j in 1..=n - 1 {
            t.unit(y(j), x(1), y(j + 1))?;
        }
        t.set(x(1), x(2), &sum(4..=n, |k| (b(k), x(k))))?;
        t.set(x(2), x(2), &[(gamma.clone(), x(n))])?;
        for j in 3..=n - 2 {
            t.set(x(j), x(2), &sum(4..=n + 2 - j, |k| (b(k), x(k + j - 2))))?;
        }
        t.unit(y(1), y(1), x(1))?;
        for j in 2..=n - 1 {
            t.unit(y(j), y(1), x(j + 1))?;
        }
        t.set(x(1), y(1), &[(half(), y(2))])?;
        for i in 3..=n {
            t.set(x(i), y(1), &[(half(), y(i))])?;
        }
        let mut v = sum(4..=n, |k| (b(k), y(k - 1)));
        v.push((delta.clone(), y(n)));
        t.set(y(1), x(2), &v)?;
        for j in 2..=n - 2 {
            t.set(y(j), x(2), &sum(4..=n + 2 - j, |k| (b(k), y(k + j - 2))))?;
        }
        Ok(t.build())
    };
    build().map_err(bracket_error("H"))
}

/// Family `E(γ, β_{⌊(n+4)/2⌋}, …, β_n, β)` in dims `(n | n+1)`.
pub fn family_e(n: usize, gamma: &Scalar, betas: &[Scalar], beta: &Scalar) -> Result<SuperAlgebra> {
    let tag = if n % 2 == 1 { FamilyTag::EOdd } else { FamilyTag::EEven };
    check_params(tag, n, n + 1, betas.len() + 2)?;
    let lo = e_low(n);
    let b = |k: usize| betas[k - lo].clone();
    let minus2 = Scalar::from_integer(-2);
    let build = || -> Result<SuperAlgebra> {
        let mut t = TableBuilder::new(n, n + 1);
        for i in 1..=n - 1 {
            t.unit(x(i), x(1), x(i + 1))?;
        }
        for j in 1..=n - 1 {
            t.unit(y(j), x(1), y(j + 1))?;
        }
        for i in 1..=n - 1 {
            t.set(x(i), y(1), &[(half(), y(i + 1))])?;
        }
        for j in 1..=n {
            t.unit(y(j), y(1), x(j))?;
        }
        t.set(y(n + 1), y(n + 1), &[(gamma.clone(), x(n))])?;
        for i in 1..=(n - 1) / 2 {
            t.set(x(i), y(n + 1), &sum(lo..=n + 1 - i, |k| (b(k), y(k - 1 + i))))?;
        }
        let mut v = sum(lo..=n, |k| (&minus2 * &b(k), x(k - 1)));
        v.push((beta.clone(), x(n)));
        t.set(y(1), y(n + 1), &v)?;
        for j in 2..=n.div_ceil(2) {
            t.set(y(j), y(n + 1), &sum(lo..=n + 2 - j, |k| (&minus2 * &b(k), x(k - 2 + j))))?;
        }
        Ok(t.build())
    };
    build().map_err(bracket_error("E"))
}

/// Family `F(β_{⌊(n+5)/2⌋}, …, β_{n+1})` in dims `(n | n+2)`.
pub fn family_f(n: usize, betas: &[Scalar]) -> Result<SuperAlgebra> {
    check_params(FamilyTag::F, n, n + 2, betas.len())?;
    let lo = f_low(n);
    let b = |k: usize| betas[k - lo].clone();
    let minus2 = Scalar::from_integer(-2);
    let build = || -> Result<SuperAlgebra> {
        let mut t = TableBuilder::new(n, n + 2);
        for i in 1..=n - 1 {
            t.unit(x(i), x(1), x(i + 1))?;
        }
        for j in 1..=n {
            t.unit(y(j), x(1), y(j + 1))?;
        }
        for i in 1..=n {
            t.set(x(i), y(1), &[(half(), y(i + 1))])?;
        }
        for j in 1..=n {
            t.unit(y(j), y(1), x(j))?;
        }
        for i in 1..=n / 2 {
            t.set(x(i), y(n + 2), &sum(lo..=n + 2 - i, |k| (b(k), y(k - 1 + i))))?;
        }
        for j in 1..=n / 2 {
            t.set(y(j), y(n + 2), &sum(lo..=n + 2 - j, |k| (&minus2 * &b(k), x(k - 2 + j))))?;
        }
        Ok(t.build())
    };
    build().map_err(bracket_error("F"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{characteristic_sequence, generator_dims, nilindex, CharSeq, CharSeqPolicy};

    fn zeros(k: usize) -> Vec<Scalar> {
        vec![Scalar::zero(); k]
    }

    fn valid(a: &SuperAlgebra) -> bool {
        a.superidentity_violations().is_empty()
    }

    #[test]
    fn single_generated_models() {
        assert_eq!(null_filiform(1).unwrap(), SuperAlgebra::abelian(1, 0));
        assert_eq!(nilindex(&null_filiform(3).unwrap()).unwrap(), 4);
        let m22 = mixed_single_generated(2, 2).unwrap();
        assert!(valid(&m22));
        assert_eq!(nilindex(&m22).unwrap(), 5);
        let m23 = mixed_single_generated(2, 3).unwrap();
        assert!(valid(&m23));
        assert_eq!(nilindex(&m23).unwrap(), 6);
        assert_eq!(generator_dims(&m23), (0, 1));
        assert!(mixed_single_generated(3, 2).is_err());
    }

    #[test]
    fn small_tables() {
        assert_eq!(nilindex(&leib_1m(4).unwrap()).unwrap(), 5);
        assert!(valid(&leib_n1(3, &Scalar::one()).unwrap()));
        assert!(leib_n1(3, &Scalar::from_integer(2)).is_err());
        for a in [leib_22_a().unwrap(), leib_22_b().unwrap()] {
            assert!(valid(&a));
            assert_eq!(nilindex(&a).unwrap(), 4);
        }
        for m in [3, 5, 7] {
            let a = leib_2m_a(m).unwrap();
            assert!(valid(&a), "2m_a {m}");
            assert_eq!(nilindex(&a).unwrap(), m + 2);
        }
        for m in [1, 3, 5] {
            let b = leib_2m_b(m).unwrap();
            assert!(valid(&b), "2m_b {m}");
            assert!(b.is_lie());
            assert_eq!(nilindex(&b).unwrap(), m + 2);
        }
        assert!(leib_2m_a(1).is_err());
        assert!(leib_2m_a(4).is_err());
    }

    #[test]
    fn families_at_zero_parameters() {
        let p = CharSeqPolicy::default();
        let l = family_l(4, &zeros(1), &Scalar::zero()).unwrap();
        assert!(valid(&l));
        assert_eq!(nilindex(&l).unwrap(), 7);
        let l5 = family_l(5, &zeros(2), &Scalar::zero()).unwrap();
        assert_eq!(characteristic_sequence(&l5, p).unwrap(), CharSeq::new(vec![4, 1], vec![4]));
        let e = family_e(3, &Scalar::zero(), &zeros(1), &Scalar::zero()).unwrap();
        assert!(valid(&e));
        assert_eq!(nilindex(&e).unwrap(), 7);
        let e4 = family_e(4, &Scalar::zero(), &zeros(1), &Scalar::zero()).unwrap();
        assert_eq!(characteristic_sequence(&e4, p).unwrap(), CharSeq::new(vec![4], vec![4, 1]));
        let m = family_m(4, &[Scalar::one()], &Scalar::one(), &Scalar::zero()).unwrap();
        assert!(valid(&m));
        let f = family_f(3, &zeros(1)).unwrap();
        assert_eq!(nilindex(&f).unwrap(), 8);
    }

    #[test]
    fn h_gamma_is_not_leibniz() {
        let h = family_h(4, &zeros(1), &Scalar::zero(), &Scalar::one()).unwrap();
        let v = h.superidentity_violations();
        assert!(v.iter().any(|w| (w.x, w.y, w.z) == (x(2), x(2), y(1))));
        assert!(valid(&family_h(4, &[Scalar::one()], &Scalar::one(), &Scalar::zero()).unwrap()));
    }

    #[test]
    fn arity_is_checked() {
        assert!(family_l(4, &zeros(2), &Scalar::zero()).is_err());
        assert!(FamilyId::new(FamilyTag::M, 4, 4, zeros(4)).is_err());
        assert_eq!(FamilyTag::M.arity(5, 5).unwrap(), 4);
        assert_eq!(FamilyTag::EOdd.arity(3, 4).unwrap(), 3);
        assert_eq!(FamilyTag::EEven.arity(2, 3).unwrap(), 2);
        assert_eq!(FamilyTag::F.arity(4, 6).unwrap(), 2);
        assert_eq!(FamilyTag::H.parameter_names(4), vec!["beta4", "delta", "gamma"]);
        assert_eq!("e_odd".parse::<FamilyTag>().unwrap(), FamilyTag::EOdd);
    }
}
