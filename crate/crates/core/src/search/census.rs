//! Census reports over an enumeration, and the theorem checks run on them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate, SearchSpec, Shape};
use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::families::{mixed_single_generated, null_filiform, FamilyId, FamilyTag};
use crate::format::serialize_lsa;
use crate::invariants::{
    central_series, characteristic_sequence, generator_dims, natural_gradation, CharSeq, CharSeqOutcome, CharSeqPolicy, Fingerprint,
};
use crate::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeBoundSkip {
    NotNilpotent,
    SingleGenerated,
    NilindexNotBelowDim,
    LieGradation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CubeBoundOutcome {
    NotApplicable { reason: CubeBoundSkip },
    Holds { cube_dim: usize },
    Fails { cube_dim: usize },
}

/// `dim A³ ≤ n - 4` for a nilpotent Leibniz algebra `A` (`m = 0`) of nilindex
/// below `n` that is not single-generated and whose natural gradation is not
/// Lie; any other input is reported as not applicable.
pub fn check_cube_bound(a0: &SuperAlgebra) -> Result<CubeBoundOutcome> {
    let n = a0.n();
    if a0.m() != 0 {
        return Err(Error::Undefined("the cube bound is stated for Leibniz algebras (m = 0)".into()));
    }
    let skip = |reason| Ok(CubeBoundOutcome::NotApplicable { reason });
    let series = central_series(a0);
    let Some(l) = series.nilindex() else {
        return skip(CubeBoundSkip::NotNilpotent);
    };
    let (g0, g1) = generator_dims(a0);
    if g0 + g1 == 1 {
        return skip(CubeBoundSkip::SingleGenerated);
    }
    if l >= n {
        return skip(CubeBoundSkip::NilindexNotBelowDim);
    }
    if natural_gradation(a0)?.algebra.is_lie() {
        return skip(CubeBoundSkip::LieGradation);
    }
    let cube_dim = if series.terms.len() > 2 { series.terms[2].dim() } else { 0 };
    Ok(if cube_dim as i64 <= n as i64 - 4 { CubeBoundOutcome::Holds { cube_dim } } else { CubeBoundOutcome::Fails { cube_dim } })
}

/// For nilindex exactly `n+m`: `n₁ ≥ n-1` or `m₁ = m`. `None` when the
/// nilindex is different or the sequence is unavailable.
pub fn nilindex_bound_holds(a: &SuperAlgebra, policy: CharSeqPolicy) -> Result<Option<bool>> {
    let (n, m) = a.dims();
    if central_series(a).nilindex() != Some(n + m) || n == 0 {
        return Ok(None);
    }
    let c = characteristic_sequence(a, policy)?;
    Ok(Some(disjunction(&c, n, m)))
}

fn disjunction(c: &CharSeq, n: usize, m: usize) -> bool {
    c.even.largest() + 1 >= n || c.odd.largest() == m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramRow {
    pub nilindex: usize,
    pub charseq: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attainer {
    pub nilindex: usize,
    pub table: String,
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub table: String,
    pub reason: String,
}

/// Algebras of nilindex `n+m+1`: single-generated, only at `m ∈ {0, n, n+1}`,
/// and matching the single-generated model there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalNilindexSection {
    pub nilindex: usize,
    pub attainers: usize,
    pub dims_admit_attainers: bool,
    pub model: Option<String>,
    pub model_fingerprint: Option<String>,
    pub not_single_generated: Vec<String>,
    pub unexpected_dims: Vec<String>,
    pub fingerprint_mismatches: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilindexBoundSection {
    pub nilindex: usize,
    pub checked: usize,
    pub counterexamples: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeBoundSection {
    pub applicable: usize,
    pub not_applicable: BTreeMap<String, usize>,
    pub counterexamples: Vec<String>,
    pub holds: bool,
}

/// Field order is the JSON order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub n: usize,
    pub m: usize,
    pub coefficients: Vec<String>,
    pub shape: Shape,
    pub charseq_policy: CharSeqPolicy,
    pub free_coefficients: usize,
    pub prefix_depth: usize,
    pub resume_from: Option<Vec<usize>>,
    pub next_cursor: Option<Vec<usize>>,
    pub nodes_visited: u64,
    pub valid: usize,
    pub nilpotent: usize,
    pub non_nilpotent: usize,
    pub histogram: Vec<HistogramRow>,
    pub attainers: Vec<Attainer>,
    pub maximal_nilindex: MaximalNilindexSection,
    pub nilindex_bound: NilindexBoundSection,
    pub cube_bound: CubeBoundSection,
    pub witnesses: Vec<Witness>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// All theorem sections hold and no yield failed re-validation.
    pub fn all_hold(&self) -> bool {
        self.maximal_nilindex.holds && self.nilindex_bound.holds && self.cube_bound.holds && self.witnesses.is_empty()
    }
}

struct Analysis {
    nilindex: Option<usize>,
    charseq: Option<CharSeqOutcome>,
    generators: (usize, usize),
    cube_bound: CubeBoundOutcome,
    leibniz: bool,
}

fn charseq_outcome(a: &SuperAlgebra, policy: CharSeqPolicy) -> CharSeqOutcome {
    match characteristic_sequence(a, policy) {
        Ok(value) => CharSeqOutcome::Ok { value },
        Err(Error::NotNilpotent(_)) => CharSeqOutcome::NotNilpotent,
        Err(_) => CharSeqOutcome::Undefined,
    }
}

fn analyse(a: &SuperAlgebra, policy: CharSeqPolicy) -> Result<Analysis> {
    let nilindex = central_series(a).nilindex();
    Ok(Analysis {
        nilindex,
        charseq: nilindex.map(|_| charseq_outcome(a, policy)),
        generators: generator_dims(a),
        cube_bound: check_cube_bound(&a.even_part())?,
        leibniz: a.is_leibniz(),
    })
}

/// The single-generated model at `(n, m)`, when one exists.
fn maximal_model(n: usize, m: usize) -> Option<FamilyId> {
    match m {
        0 if n >= 1 => FamilyId::new(FamilyTag::NullFiliform, n, 0, Vec::new()).ok(),
        _ if m == n || m == n + 1 => FamilyId::new(FamilyTag::MixedSingleGenerated, n, m, Vec::new()).ok(),
        _ => None,
    }
}

fn model_algebra(id: &FamilyId) -> Result<SuperAlgebra> {
    match id.tag {
        FamilyTag::NullFiliform => null_filiform(id.n),
        _ => mixed_single_generated(id.n, id.m),
    }
}

pub fn census(spec: &SearchSpec) -> Result<CensusReport> {
    let (n, m) = (spec.n, spec.m);
    let e = enumerate(spec)?;
    let policy = spec.policy;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(spec.jobs).build().map_err(|err| Error::Search(format!("thread pool: {err}")))?;
    let analyses: Vec<Analysis> = pool.install(|| e.algebras.par_iter().map(|a| analyse(a, policy)).collect::<Result<_>>())?;

    let top = n + m + 1;
    let model = maximal_model(n, m);
    let model_fp = model.as_ref().map(|id| model_algebra(id).map(|a| Fingerprint::with_policy(&a, policy).canonical())).transpose()?;

    let mut histogram: BTreeMap<(usize, String), usize> = BTreeMap::new();
    let mut attainers = Vec::new();
    let mut witnesses = Vec::new();
    let mut maximal = MaximalNilindexSection {
        nilindex: top,
        attainers: 0,
        dims_admit_attainers: model.is_some() || n + m == 0,
        model: model.as_ref().map(ToString::to_string),
        model_fingerprint: model_fp.clone(),
        not_single_generated: Vec::new(),
        unexpected_dims: Vec::new(),
        fingerprint_mismatches: Vec::new(),
        holds: true,
    };
    let mut bound = NilindexBoundSection { nilindex: n + m, checked: 0, counterexamples: Vec::new(), holds: true };
    let mut cube_bound = CubeBoundSection { applicable: 0, not_applicable: BTreeMap::new(), counterexamples: Vec::new(), holds: true };
    let mut nilpotent = 0;

    for (a, an) in e.algebras.iter().zip(&analyses) {
        if !an.leibniz {
            witnesses.push(Witness { table: serialize_lsa(a), reason: "superidentity fails on re-validation".into() });
        }
        match &an.cube_bound {
            CubeBoundOutcome::NotApplicable { reason } => {
                let key = serde_json::to_value(reason).expect("enum").as_str().unwrap_or_default().to_string();
                *cube_bound.not_applicable.entry(key).or_insert(0) += 1;
            }
            CubeBoundOutcome::Holds { .. } => cube_bound.applicable += 1,
            CubeBoundOutcome::Fails { .. } => {
                cube_bound.applicable += 1;
                cube_bound.counterexamples.push(serialize_lsa(&a.even_part()));
            }
        }
        let Some(l) = an.nilindex else { continue };
        nilpotent += 1;
        let cs = an.charseq.as_ref().expect("nilpotent algebras carry a charseq");
        *histogram.entry((l, cs.to_string())).or_insert(0) += 1;
        if l >= n + m {
            let fp = Fingerprint::with_policy(a, policy).canonical();
            if l == top {
                maximal.attainers += 1;
                let table = serialize_lsa(a);
                if an.generators.0 + an.generators.1 != 1 {
                    maximal.not_single_generated.push(table.clone());
                }
                if !maximal.dims_admit_attainers {
                    maximal.unexpected_dims.push(table.clone());
                }
                if model_fp.as_ref().is_some_and(|mf| *mf != fp) {
                    maximal.fingerprint_mismatches.push(table);
                }
            }
            attainers.push(Attainer { nilindex: l, table: serialize_lsa(a), fingerprint: fp });
        }
        if l == n + m && n >= 1 {
            bound.checked += 1;
            let ok = match cs {
                CharSeqOutcome::Ok { value } => disjunction(value, n, m),
                _ => false,
            };
            if !ok {
                bound.counterexamples.push(serialize_lsa(a));
            }
        }
    }
    maximal.holds = maximal.not_single_generated.is_empty() && maximal.unexpected_dims.is_empty() && maximal.fingerprint_mismatches.is_empty();
    bound.holds = bound.counterexamples.is_empty();
    cube_bound.holds = cube_bound.counterexamples.is_empty();

    Ok(CensusReport {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        coefficients: spec.coefficients.iter().map(ToString::to_string).collect(),
        shape: spec.shape,
        charseq_policy: policy,
        free_coefficients: e.free,
        prefix_depth: e.prefix_depth,
        resume_from: spec.resume.clone(),
        next_cursor: e.next_cursor,
        nodes_visited: e.nodes_visited,
        valid: e.algebras.len(),
        nilpotent,
        non_nilpotent: e.algebras.len() - nilpotent,
        histogram: histogram.into_iter().map(|((nilindex, charseq), count)| HistogramRow { nilindex, charseq, count }).collect(),
        attainers,
        maximal_nilindex: maximal,
        nilindex_bound: bound,
        cube_bound,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Basis, TableBuilder};

    #[test]
    fn two_one_has_no_maximal_attainer() {
        let r = census(&SearchSpec::signs(2, 1)).unwrap();
        assert_eq!(r.maximal_nilindex.attainers, 0);
        assert!(!r.maximal_nilindex.dims_admit_attainers);
        assert_eq!(r.histogram.iter().map(|h| h.count).sum::<usize>(), r.nilpotent);
        assert!(r.all_hold());
    }

    #[test]
    fn one_one_attainers_match_the_model() {
        let r = census(&SearchSpec::signs(1, 1)).unwrap();
        assert!(r.maximal_nilindex.attainers > 0);
        assert!(r.maximal_nilindex.holds);
        let r = census(&SearchSpec::signs(2, 0)).unwrap();
        assert!(r.maximal_nilindex.attainers > 0);
        assert_eq!(r.maximal_nilindex.model.as_deref(), Some("NULL_FILIFORM[2,0]()"));
        assert!(r.maximal_nilindex.holds);
    }

    #[test]
    fn cube_bound_applicability() {
        assert_eq!(check_cube_bound(&null_filiform(4).unwrap()).unwrap(), CubeBoundOutcome::NotApplicable { reason: CubeBoundSkip::SingleGenerated });
        // Heisenberg-type Lie algebra ⊕ K: gr is Lie
        let mut t = TableBuilder::new(4, 0);
        t.unit(Basis::x(1), Basis::x(2), Basis::x(3)).unwrap();
        t.set(Basis::x(2), Basis::x(1), &[(crate::Scalar::from_integer(-1), Basis::x(3))]).unwrap();
        assert_eq!(check_cube_bound(&t.build()).unwrap(), CubeBoundOutcome::NotApplicable { reason: CubeBoundSkip::LieGradation });
        // [x1,x1] = x3 with x2, x4 central: non-Lie gradation, A³ = 0
        let mut t = TableBuilder::new(4, 0);
        t.unit(Basis::x(1), Basis::x(1), Basis::x(3)).unwrap();
        assert_eq!(check_cube_bound(&t.build()).unwrap(), CubeBoundOutcome::Holds { cube_dim: 0 });
    }
}
