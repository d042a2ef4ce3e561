//! Central series, nilindex, characteristic sequence, natural gradation and
//! the fingerprint built from them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{jordan_partition, GradedSubspace, Matrix, Partition};
use crate::scalar::Scalar;

/// `L¹ ⊇ L² ⊇ …`, ending with the first term that is zero or repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<GradedSubspace>,
}

impl CentralSeries {
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.terms.iter().map(GradedSubspace::dims).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.terms.last().is_some_and(GradedSubspace::is_zero)
    }

    /// Minimal `s` with `L^s = 0`.
    pub fn nilindex(&self) -> Option<usize> {
        self.is_nilpotent().then_some(self.terms.len())
    }

    /// `L^k` for `k ≥ 1`; terms past the end repeat the last one.
    pub fn term(&self, k: usize) -> &GradedSubspace {
        assert!(k >= 1);
        &self.terms[(k - 1).min(self.terms.len() - 1)]
    }
}

/// Homogeneous basis vectors of a graded subspace as elements.
pub(crate) fn basis_elements(s: &GradedSubspace) -> Vec<Element> {
    let (n, m) = s.ambient();
    let even = s.even_basis().row_vectors().into_iter().map(|v| Element::from_parts(v, vec![Scalar::zero(); m]));
    let odd = s.odd_basis().row_vectors().into_iter().map(|v| Element::from_parts(vec![Scalar::zero(); n], v));
    even.chain(odd).collect()
}

/// `[U, V]` for graded subspaces `U`, `V`.
pub fn bracket_subspaces(a: &SuperAlgebra, u: &GradedSubspace, v: &GradedSubspace) -> GradedSubspace {
    let (n, m) = a.dims();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let vb = basis_elements(v);
    for x in basis_elements(u) {
        for y in &vb {
            let p = a.multiply(&x, y).expect("ambient dims");
            if p.is_zero() {
                continue;
            }
            even.push(p.even().to_vec());
            odd.push(p.odd().to_vec());
        }
    }
    GradedSubspace::span(n, m, even, odd).expect("ambient dims")
}

pub fn central_series(a: &SuperAlgebra) -> CentralSeries {
    let (n, m) = a.dims();
    let whole = GradedSubspace::whole(n, m);
    let mut terms = vec![whole.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = bracket_subspaces(a, last, &whole);
        let repeats = &next == last;
        if !repeats {
            terms.push(next);
        }
        if repeats {
            break;
        }
    }
    CentralSeries { terms }
}

pub fn nilindex(a: &SuperAlgebra) -> Result<usize> {
    let s = central_series(a);
    match s.nilindex() {
        Some(k) => Ok(k),
        None => {
            let (e, o) = s.terms.last().unwrap().dims();
            Err(Error::NotNilpotentAlgebra(e, o))
        }
    }
}

/// Graded dims of `L / L²`.
pub fn generator_dims(a: &SuperAlgebra) -> (usize, usize) {
    let (n, m) = a.dims();
    let sq = bracket_subspaces(a, &GradedSubspace::whole(n, m), &GradedSubspace::whole(n, m));
    let (e, o) = sq.dims();
    (n - e, m - o)
}

/// Matrices of `R_x : b ↦ [b, x]` on `L₀` and on `L₁` (column `j` is the image
/// of the `j`-th basis vector).
pub fn right_mult_matrices(a: &SuperAlgebra, x: &Element) -> Result<(Matrix, Matrix)> {
    let (n, m) = a.dims();
    if x.dims() != (n, m) {
        return Err(Error::DimensionMismatch { expected: format!("({n}|{m})"), found: format!("{:?}", x.dims()) });
    }
    if x.odd().iter().any(|c| !c.is_zero()) {
        return Err(Error::NotEven);
    }
    let mut m0 = Matrix::zeros(n, n);
    let mut m1 = Matrix::zeros(m, m);
    for b in 0..n + m {
        let mut unit = vec![Scalar::zero(); n + m];
        unit[b] = Scalar::one();
        let img = a.multiply(&Element::from_flat(n, unit), x)?;
        if b < n {
            for (t, c) in img.even().iter().enumerate() {
                m0[(t, b)] = c.clone();
            }
        } else {
            for (t, c) in img.odd().iter().enumerate() {
                m1[(t, b - n)] = c.clone();
            }
        }
    }
    Ok((m0, m1))
}

/// `(C₀ | C₁)`, each compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
pub struct CharSeq {
    pub even: Partition,
    pub odd: Partition,
}

impl CharSeq {
    pub fn new(even: Vec<usize>, odd: Vec<usize>) -> Self {
        CharSeq { even: Partition::new(even), odd: Partition::new(odd) }
    }
}

impl fmt::Display for CharSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// Which even elements are tried when maximising over `L₀ ∖ L₀²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharSeqPolicy {
    /// Seeded random combinations of all even basis vectors, on top of the
    /// basis vectors themselves.
    pub trials: usize,
    pub seed: u64,
}

impl Default for CharSeqPolicy {
    fn default() -> Self {
        CharSeqPolicy { trials: 8, seed: 0 }
    }
}

/// `L₀² = [L₀, L₀]` as a subspace of `K^n`.
fn even_square(a: &SuperAlgebra) -> GradedSubspace {
    let n = a.n();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(p) = a.product_flat(i, j) {
                rows.push(p[..n].to_vec());
            }
        }
    }
    GradedSubspace::span(n, 0, rows, Vec::new()).expect("widths")
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Scalar {
    let p: i64 = rng.gen_range(-9..=9);
    let q: i64 = rng.gen_range(1..=3);
    Scalar::ratio(p, q)
}

/// Candidate even elements outside `L₀²`, in evaluation order.
pub fn charseq_candidates(a: &SuperAlgebra, policy: CharSeqPolicy) -> Result<Vec<Vec<Scalar>>> {
    let n = a.n();
    if n == 0 {
        return Err(Error::Undefined("characteristic sequence needs n ≥ 1".into()));
    }
    let sq = even_square(a);
    let outside = |v: &[Scalar]| !sq.contains_vector(v, &[]).expect("width");
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let basis_outside: Vec<Vec<Scalar>> = (0..n).map(unit).filter(|v| outside(v)).collect();
    let Some(fallback) = basis_outside.first().cloned() else {
        return Err(Error::Undefined("L₀ = L₀², so L₀ ∖ L₀² has no element of a nilpotent L₀".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut out = basis_outside;
    for _ in 0..policy.trials {
        let mut v: Vec<Scalar> = (0..n).map(|_| random_coefficient(&mut rng)).collect();
        if !outside(&v) {
            for (vi, fi) in v.iter_mut().zip(&fallback) {
                *vi += fi;
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Lexicographic maxima of the Jordan types of `R_x` on `L₀` and on `L₁`
/// over the candidate set of `policy`; the two maxima are taken separately.
pub fn characteristic_sequence(a: &SuperAlgebra, policy: CharSeqPolicy) -> Result<CharSeq> {
    let (n, m) = a.dims();
    let mut best: Option<CharSeq> = None;
    for v in charseq_candidates(a, policy)? {
        let x = Element::from_parts(v, vec![Scalar::zero(); m]);
        let (m0, m1) = right_mult_matrices(a, &x)?;
        let c0 = jordan_partition(&m0, n)?;
        let c1 = jordan_partition(&m1, m)?;
        best = Some(match best {
            None => CharSeq { even: c0, odd: c1 },
            Some(b) => CharSeq { even: b.even.max(c0), odd: b.odd.max(c1) },
        });
    }
    Ok(best.expect("at least one candidate"))
}

/// The graded algebra `gr(A) = ⊕ A^i / A^{i+1}` of a nilpotent Leibniz
/// algebra (`m = 0`), together with the degree of each new basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalGradation {
    pub algebra: SuperAlgebra,
    /// `degrees[k]` is the degree of `x_{k+1}` in `algebra`; non-decreasing.
    pub degrees: Vec<usize>,
    /// Column `k` is the representative in `A` of `x_{k+1}`.
    pub representatives: Matrix,
}

impl NaturalGradation {
    pub fn component_dims(&self) -> Vec<usize> {
        let top = self.degrees.last().copied().unwrap_or(0);
        (1..=top).map(|i| self.degrees.iter().filter(|&&d| d == i).count()).collect()
    }
}

/// Rows of `upper` (RREF) reduced modulo the RREF rows of `lower ⊆ upper`,
/// giving an echelon complement of `lower` in `upper`.
fn echelon_complement(upper: &Matrix, lower: &Matrix) -> Vec<Vec<Scalar>> {
    let cols = upper.cols();
    let lower_pivots: Vec<usize> = (0..lower.rows()).map(|r| (0..cols).find(|&c| !lower[(r, c)].is_zero()).expect("rref rows are nonzero")).collect();
    let mut reduced = Vec::new();
    for row in upper.row_vectors() {
        let mut v = row;
        for (r, &p) in lower_pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for c in 0..cols {
                let d = &f * &lower[(r, c)];
                v[c] -= &d;
            }
        }
        reduced.push(v);
    }
    let mut m = Matrix::from_rows(cols, reduced).expect("widths");
    let rank = m.rref_in_place().len();
    m.truncate_rows(rank);
    m.row_vectors()
}

pub fn natural_gradation(a: &SuperAlgebra) -> Result<NaturalGradation> {
    let n = a.n();
    if a.m() != 0 {
        return Err(Error::Undefined("natural gradation is defined for the even part only (m = 0)".into()));
    }
    let series = central_series(a);
    if !series.is_nilpotent() {
        let (e, o) = series.terms.last().unwrap().dims();
        return Err(Error::NotNilpotentAlgebra(e, o));
    }
    let mut reps: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for (i, w) in series.terms.windows(2).enumerate() {
        for v in echelon_complement(w[0].even_basis(), w[1].even_basis()) {
            reps.push(v);
            degrees.push(i + 1);
        }
    }
    debug_assert_eq!(reps.len(), n);
    let p = Matrix::from_rows(n, reps).expect("widths").transpose();
    let p_inv = p.inverse().expect("graded representatives form a basis");
    let mut products = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let target = degrees[u] + degrees[v];
            let raw = a.multiply(&Element::from_parts(p.column(u), vec![]), &Element::from_parts(p.column(v), vec![]))?;
            let coords = p_inv.mul_vec(raw.coords());
            let projected: Vec<Scalar> = coords.into_iter().zip(&degrees).map(|(c, &d)| if d == target { c } else { Scalar::zero() }).collect();
            products.push(if projected.iter().all(Scalar::is_zero) { None } else { Some(projected) });
        }
    }
    let algebra = SuperAlgebra::from_flat_products(n, 0, products)?;
    Ok(NaturalGradation { algebra, degrees, representatives: p })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CharSeqOutcome {
    Ok { value: CharSeq },
    Undefined,
    NotNilpotent,
}

impl fmt::Display for CharSeqOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSeqOutcome::Ok { value } => value.fmt(f),
            CharSeqOutcome::Undefined => f.write_str("undefined"),
            CharSeqOutcome::NotNilpotent => f.write_str("not-nilpotent"),
        }
    }
}

/// Isomorphism-invariant summary. Field order is the serialisation order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    /// Graded dims of the nonzero terms `L¹, L², …`.
    pub series: Vec<(usize, usize)>,
    pub nilindex: Option<usize>,
    pub charseq: CharSeqOutcome,
    pub annihilator: (usize, usize),
    pub lie: bool,
    pub generators: (usize, usize),
}

fn pair(p: (usize, usize)) -> String {
    format!("({}|{})", p.0, p.1)
}

impl Fingerprint {
    pub fn of(a: &SuperAlgebra) -> Self {
        Fingerprint::with_policy(a, CharSeqPolicy::default())
    }

    pub fn with_policy(a: &SuperAlgebra, policy: CharSeqPolicy) -> Self {
        let series = central_series(a);
        let charseq = match characteristic_sequence(a, policy) {
            Ok(value) => CharSeqOutcome::Ok { value },
            Err(Error::NotNilpotent(_)) => CharSeqOutcome::NotNilpotent,
            Err(_) => CharSeqOutcome::Undefined,
        };
        Fingerprint {
            series: series.terms.iter().filter(|t| !t.is_zero()).map(GradedSubspace::dims).collect(),
            nilindex: series.nilindex(),
            charseq,
            annihilator: a.right_annihilator().dims(),
            lie: a.is_lie(),
            generators: generator_dims(a),
        }
    }

    /// Canonical one-line form; equal fingerprints give equal strings.
    pub fn canonical(&self) -> String {
        let series: Vec<String> = self.series.iter().map(|&p| pair(p)).collect();
        format!(
            "series={};nilindex={};charseq={};ann={};lie={};gens={}",
            series.join(","),
            self.nilindex.map_or("none".to_string(), |k| k.to_string()),
            self.charseq,
            pair(self.annihilator),
            self.lie,
            pair(self.generators),
        )
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}
