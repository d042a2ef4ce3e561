//! Exhaustive enumeration of structure-constant tables over a finite
//! coefficient set, pruned by the superidentity.
//!
//! Variables are the coefficients `c(a, b, t)` of `[e_a, e_b] = Σ c(a,b,t) e_t`
//! allowed by the grading. They are assigned even-even first, then even-odd,
//! odd-even and odd-odd, each block ordered by `(a, b, t)`. Each coordinate of
//! each superidentity residual is a quadratic polynomial in the variables;
//! it is checked as soon as its last variable is assigned.
//!
//! The tree is cut at a fixed prefix depth that only depends on the search
//! space, and the subtrees are processed in parallel and concatenated in
//! prefix order, so the output does not depend on the worker count.

mod census;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Basis, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::invariants::CharSeqPolicy;
use crate::scalar::Scalar;

pub use census::{
    census, check_cube_bound, nilindex_bound_holds, Attainer, CensusReport, CubeBoundOutcome, CubeBoundSection, CubeBoundSkip, HistogramRow,
    MaximalNilindexSection, NilindexBoundSection, Witness,
};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Subtrees below this many prefixes are not worth splitting further.
const PREFIX_TARGET: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Every coefficient allowed by the grading is free.
    #[default]
    Full,
    /// Only `[e_a, e_b] ∋ e_t` with `t` after both `a` and `b` in the order
    /// `x1 < … < xn < y1 < … < ym`; every such table is nilpotent.
    Triangular,
}

impl std::str::FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Shape::Full),
            "triangular" => Ok(Shape::Triangular),
            _ => Err(Error::Search(format!("unknown shape '{s}' (expected full or triangular)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub n: usize,
    pub m: usize,
    pub coefficients: Vec<Scalar>,
    pub shape: Shape,
    pub jobs: usize,
    /// Prefix (coefficient indices) of the first subtree to visit.
    pub resume: Option<Vec<usize>>,
    /// Stop after this many prefix subtrees and report where to resume.
    pub max_prefixes: Option<usize>,
    pub budget: u64,
    pub force: bool,
    pub policy: CharSeqPolicy,
}

impl SearchSpec {
    pub fn new(n: usize, m: usize, coefficients: Vec<Scalar>) -> Self {
        SearchSpec {
            n,
            m,
            coefficients,
            shape: Shape::Full,
            jobs: 1,
            resume: None,
            max_prefixes: None,
            budget: DEFAULT_BUDGET,
            force: false,
            policy: CharSeqPolicy::default(),
        }
    }

    /// `{0, 1, -1}`.
    pub fn signs(n: usize, m: usize) -> Self {
        SearchSpec::new(n, m, vec![Scalar::zero(), Scalar::one(), Scalar::from_integer(-1)])
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        self.shape = shape;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    fn validate(&self) -> Result<()> {
        let c = &self.coefficients;
        if c.is_empty() {
            return Err(Error::Search("coefficient set is empty".into()));
        }
        if !c.iter().any(Scalar::is_zero) {
            return Err(Error::Search("coefficient set must contain 0".into()));
        }
        for (i, a) in c.iter().enumerate() {
            if c[..i].contains(a) {
                return Err(Error::Search(format!("coefficient {a} is listed twice")));
            }
        }
        if self.jobs == 0 {
            return Err(Error::Search("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Free coefficients in assignment order.
    pub fn variables(&self) -> Vec<Variable> {
        let (n, m) = (self.n, self.m);
        let d = n + m;
        let parity = |k: usize| if k < n { Parity::Even } else { Parity::Odd };
        let mut out = Vec::new();
        for (pa, pb) in [(Parity::Even, Parity::Even), (Parity::Even, Parity::Odd), (Parity::Odd, Parity::Even), (Parity::Odd, Parity::Odd)] {
            for a in (0..d).filter(|&k| parity(k) == pa) {
                for b in (0..d).filter(|&k| parity(k) == pb) {
                    for t in (0..d).filter(|&k| parity(k) == pa + pb) {
                        if self.shape == Shape::Triangular && t <= a.max(b) {
                            continue;
                        }
                        out.push(Variable { a, b, t });
                    }
                }
            }
        }
        out
    }

    /// `|coefficients|^free`, the size of the unpruned search space.
    pub fn estimate(&self) -> BigUint {
        BigUint::from(self.coefficients.len()).pow(self.variables().len() as u32)
    }
}

/// The coefficient of `e_t` (flat index) in `[e_a, e_b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variable {
    pub a: usize,
    pub b: usize,
    pub t: usize,
}

/// `Σ coef · v[u] · v[w] = 0`.
#[derive(Clone, Debug)]
struct Equation {
    terms: Vec<(i64, usize, usize)>,
}

/// Residual coordinates grouped by the variable that closes them.
fn equations(n: usize, m: usize, vars: &[Variable]) -> Vec<Vec<Equation>> {
    let d = n + m;
    let mut index = vec![None; d * d * d];
    for (i, v) in vars.iter().enumerate() {
        index[(v.a * d + v.b) * d + v.t] = Some(i);
    }
    let var = |a: usize, b: usize, t: usize| index[(a * d + b) * d + t];
    let odd = |k: usize| k >= n;
    let mut closing: Vec<Vec<Equation>> = vec![Vec::new(); vars.len()];
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let sign = if odd(y) && odd(z) { -1 } else { 1 };
                for k in 0..d {
                    if odd(k) != (odd(x) ^ odd(y) ^ odd(z)) {
                        continue;
                    }
                    let mut terms: BTreeMap<(usize, usize), i64> = BTreeMap::new();
                    let mut add = |c: i64, u: Option<usize>, w: Option<usize>| {
                        if let (Some(u), Some(w)) = (u, w) {
                            *terms.entry((u.min(w), u.max(w))).or_insert(0) += c;
                        }
                    };
                    for p in 0..d {
                        add(1, var(y, z, p), var(x, p, k));
                        add(-1, var(x, y, p), var(p, z, k));
                        add(sign, var(x, z, p), var(p, y, k));
                    }
                    let terms: Vec<(i64, usize, usize)> = terms.into_iter().filter(|&(_, c)| c != 0).map(|((u, w), c)| (c, u, w)).collect();
                    if let Some(close) = terms.iter().map(|&(_, _, w)| w).max() {
                        closing[close].push(Equation { terms });
                    }
                }
            }
        }
    }
    closing
}

enum Values {
    Int(Vec<i64>),
    Exact(Vec<Scalar>),
}

impl Values {
    fn new(coefficients: &[Scalar]) -> Self {
        let ints: Option<Vec<i64>> = coefficients
            .iter()
            .map(|c| c.as_rational().filter(|r| r.is_integer()).and_then(|r| num_traits::ToPrimitive::to_i64(r.numer())))
            .map(|v| v.filter(|x| x.unsigned_abs() < 1 << 30))
            .collect();
        match ints {
            Some(v) => Values::Int(v),
            None => Values::Exact(coefficients.to_vec()),
        }
    }

    fn holds(&self, eq: &Equation, assign: &[u8]) -> bool {
        match self {
            Values::Int(v) => {
                let mut acc: i128 = 0;
                for &(c, u, w) in &eq.terms {
                    acc += c as i128 * v[assign[u] as usize] as i128 * v[assign[w] as usize] as i128;
                }
                acc == 0
            }
            Values::Exact(v) => {
                let mut acc = Scalar::zero();
                for &(c, u, w) in &eq.terms {
                    let (p, q) = (&v[assign[u] as usize], &v[assign[w] as usize]);
                    if p.is_zero() || q.is_zero() {
                        continue;
                    }
                    acc += &(&Scalar::from_integer(c) * &(p * q));
                }
                acc.is_zero()
            }
        }
    }
}

struct Engine {
    n: usize,
    m: usize,
    vars: Vec<Variable>,
    closing: Vec<Vec<Equation>>,
    values: Values,
    coefficients: Vec<Scalar>,
}

impl Engine {
    fn new(spec: &SearchSpec) -> Self {
        let vars = spec.variables();
        let closing = equations(spec.n, spec.m, &vars);
        Engine { n: spec.n, m: spec.m, vars, closing, values: Values::new(&spec.coefficients), coefficients: spec.coefficients.clone() }
    }

    fn base(&self) -> usize {
        self.coefficients.len()
    }

    /// Depth-first walk below `assign` down to `stop`, collecting surviving
    /// assignments of length `stop` in lexicographic order.
    fn walk(&self, assign: &mut Vec<u8>, stop: usize, out: &mut Vec<Vec<u8>>, nodes: &mut u64) {
        let depth = assign.len();
        if depth == stop {
            out.push(assign.clone());
            return;
        }
        for c in 0..self.base() {
            *nodes += 1;
            assign.push(c as u8);
            if self.closing[depth].iter().all(|eq| self.values.holds(eq, assign)) {
                self.walk(assign, stop, out, nodes);
            }
            assign.pop();
        }
    }

    fn table(&self, assign: &[u8]) -> SuperAlgebra {
        let d = self.n + self.m;
        let mut products: Vec<Option<Vec<Scalar>>> = vec![None; d * d];
        for (v, &c) in self.vars.iter().zip(assign) {
            let value = &self.coefficients[c as usize];
            if value.is_zero() {
                continue;
            }
            products[v.a * d + v.b].get_or_insert_with(|| vec![Scalar::zero(); d])[v.t] = value.clone();
        }
        SuperAlgebra::from_flat_products(self.n, self.m, products).expect("variables respect the grading")
    }
}

/// Result of [`enumerate`]: the surviving tables in tree order.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub algebras: Vec<SuperAlgebra>,
    pub free: usize,
    pub nodes_visited: u64,
    pub prefix_depth: usize,
    pub prefixes_visited: usize,
    pub next_cursor: Option<Vec<usize>>,
}

fn check_budget(spec: &SearchSpec) -> Result<()> {
    let estimate = spec.estimate();
    if !spec.force && estimate > BigUint::from(spec.budget) {
        return Err(Error::BudgetExceeded {
            estimate: estimate.to_string(),
            base: spec.coefficients.len(),
            free: spec.variables().len(),
            budget: spec.budget,
        });
    }
    Ok(())
}

pub fn enumerate(spec: &SearchSpec) -> Result<Enumeration> {
    spec.validate()?;
    check_budget(spec)?;
    if spec.coefficients.len() > u8::MAX as usize {
        return Err(Error::Search("at most 255 coefficients are supported".into()));
    }
    let engine = Engine::new(spec);
    let free = engine.vars.len();
    let mut depth = 0;
    while depth < free && engine.base().pow(depth as u32) < PREFIX_TARGET {
        depth += 1;
    }
    let mut nodes = 0u64;
    let mut prefixes = Vec::new();
    engine.walk(&mut Vec::new(), depth, &mut prefixes, &mut nodes);

    let start = match &spec.resume {
        None => 0,
        Some(cursor) => {
            if cursor.len() != depth || cursor.iter().any(|&c| c >= engine.base()) {
                return Err(Error::Search(format!("resume cursor must list {depth} coefficient indices below {}", engine.base())));
            }
            let cursor: Vec<u8> = cursor.iter().map(|&c| c as u8).collect();
            prefixes.partition_point(|p| *p < cursor)
        }
    };
    let end = match spec.max_prefixes {
        Some(k) => (start + k).min(prefixes.len()),
        None => prefixes.len(),
    };
    let next_cursor = prefixes.get(end).map(|p| p.iter().map(|&c| c as usize).collect());

    let pool = rayon::ThreadPoolBuilder::new().num_threads(spec.jobs).build().map_err(|e| Error::Search(format!("thread pool: {e}")))?;
    let chunks: Vec<(Vec<SuperAlgebra>, u64)> = pool.install(|| {
        prefixes[start..end]
            .par_iter()
            .map(|prefix| {
                let mut out = Vec::new();
                let mut count = 0u64;
                engine.walk(&mut prefix.clone(), free, &mut out, &mut count);
                (out.iter().map(|a| engine.table(a)).collect(), count)
            })
            .collect()
    });
    let mut algebras = Vec::new();
    for (list, count) in chunks {
        nodes += count;
        algebras.extend(list);
    }
    Ok(Enumeration { algebras, free, nodes_visited: nodes, prefix_depth: depth, prefixes_visited: end - start, next_cursor })
}

/// Basis labels of a variable, for diagnostics.
pub fn describe(spec: &SearchSpec, v: Variable) -> String {
    let b = |k: usize| Basis::from_flat(k, spec.n);
    format!("[{}, {}] -> {}", b(v.a), b(v.b), b(v.t))
}
