//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false`. The process exits nonzero when a criterion
//! fails that is not listed in `KNOWN_UNATTAINABLE`, or when a listed one
//! unexpectedly passes (so the list cannot go stale silently).

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use superleib::families::{canonical_list, mixed_single_generated, null_filiform, sweep_dims};
use superleib::invariants::{bracket_subspaces, central_series, characteristic_sequence, generator_dims};
use superleib::search::{census, check_cube_bound, enumerate, nilindex_bound_holds, CensusReport, CubeBoundOutcome, SearchSpec, Shape};
use superleib::{CharSeq, CharSeqPolicy, FamilyId, FamilyTag, Fingerprint, GradedSubspace, Scalar, SuperAlgebra};

/// Criterion 1 fails on family H with a nonzero last parameter: the
/// displayed table violates the superidentity at `(x2, x2, y1)`.
const KNOWN_UNATTAINABLE: &[u8] = &[1];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

struct Ctx {
    corpus: Vec<(FamilyId, SuperAlgebra)>,
    valid: Vec<bool>,
    censuses: BTreeMap<(usize, usize), (Vec<SuperAlgebra>, CensusReport)>,
}

impl Ctx {
    fn leibniz_corpus(&self) -> impl Iterator<Item = &(FamilyId, SuperAlgebra)> {
        self.corpus.iter().zip(&self.valid).filter(|(_, v)| **v).map(|(e, _)| e)
    }

    fn invalid_count(&self) -> usize {
        self.valid.iter().filter(|v| !**v).count()
    }
}

fn signs() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::one(), Scalar::from_integer(-1)]
}

/// The yield is kept only for `Shape::Full`; the triangular runs are large.
fn run_census(n: usize, m: usize, shape: Shape) -> (Vec<SuperAlgebra>, CensusReport) {
    let spec = SearchSpec::new(n, m, signs()).with_shape(shape).with_jobs(4);
    let algebras = if shape == Shape::Full { enumerate(&spec).expect("census within budget").algebras } else { Vec::new() };
    (algebras, census(&spec).expect("census"))
}

fn first<T: ToString>(items: &[T]) -> String {
    items.iter().take(3).map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

const GEN_FAMILIES: [FamilyTag; 6] = [FamilyTag::L, FamilyTag::G, FamilyTag::M, FamilyTag::H, FamilyTag::EOdd, FamilyTag::EEven];

fn criterion_1(ctx: &Ctx) -> Outcome {
    let mut bad: BTreeMap<FamilyTag, usize> = BTreeMap::new();
    let mut examples = Vec::new();
    let relevant = ctx.corpus.iter().zip(&ctx.valid).filter(|((id, _), _)| GEN_FAMILIES.contains(&id.tag) || id.tag == FamilyTag::F);
    let mut checked = 0;
    for ((id, _), ok) in relevant {
        checked += 1;
        if !ok {
            *bad.entry(id.tag).or_default() += 1;
            examples.push(id.to_string());
        }
    }
    let summary: Vec<String> = bad.iter().map(|(t, c)| format!("{t}: {c}")).collect();
    if bad.is_empty() {
        Outcome::new(true, format!("{checked} family members satisfy the superidentity"))
    } else {
        Outcome::new(false, format!("{} of {checked} members violate it [{}], e.g. {}", examples.len(), summary.join(", "), first(&examples)))
    }
}

fn zero_member(tag: FamilyTag, n: usize, m: usize) -> SuperAlgebra {
    let arity = tag.arity(n, m).unwrap();
    FamilyId::new(tag, n, m, vec![Scalar::zero(); arity]).unwrap().build().unwrap()
}

fn criterion_2(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    let mut check = |label: String, a: &SuperAlgebra, expected: usize| {
        checked += 1;
        let got = central_series(a).nilindex();
        if got != Some(expected) {
            wrong.push(format!("{label}: {got:?} != {expected}"));
        }
    };
    for (id, a) in &ctx.corpus {
        check(id.to_string(), a, id.expected_nilindex());
    }
    let mut dims = BTreeSet::new();
    for tag in [FamilyTag::L, FamilyTag::M, FamilyTag::EOdd, FamilyTag::EEven, FamilyTag::F] {
        dims.extend(sweep_dims(tag));
    }
    let sample = [Scalar::one(), Scalar::from_integer(-1), Scalar::ratio(1, 2)];
    for (n, m) in dims {
        for entry in canonical_list(n, m, &sample).expect("list") {
            let a = entry.id.build().expect("list member");
            check(entry.description.clone(), &a, n + m);
        }
    }
    for (label, a, l) in [
        ("family L at (4,3)", zero_member(FamilyTag::L, 4, 3), 7),
        ("family F at (3,5)", zero_member(FamilyTag::F, 3, 5), 8),
        ("null-filiform(5)", null_filiform(5).unwrap(), 6),
        ("mixed model (2,2)", mixed_single_generated(2, 2).unwrap(), 5),
        ("mixed model (2,3)", mixed_single_generated(2, 3).unwrap(), 6),
    ] {
        check(label.to_string(), &a, l);
    }
    Outcome::new(
        wrong.is_empty(),
        if wrong.is_empty() { format!("{checked} nilindices as expected") } else { format!("{} wrong: {}", wrong.len(), first(&wrong)) },
    )
}

fn criterion_3(ctx: &Ctx) -> Outcome {
    let policy = CharSeqPolicy::default();
    let mut checked = 0;
    let mut wrong = Vec::new();
    for (id, a) in ctx.corpus.iter().filter(|(id, _)| GEN_FAMILIES.contains(&id.tag) || id.tag == FamilyTag::F) {
        let (n, m) = (id.n, id.m);
        let expected = match id.tag {
            FamilyTag::L | FamilyTag::G | FamilyTag::M | FamilyTag::H => CharSeq::new(vec![n - 1, 1], vec![m]),
            _ => CharSeq::new(vec![n], vec![m - 1, 1]),
        };
        checked += 1;
        match characteristic_sequence(a, policy) {
            Ok(c) if c == expected => {}
            got => wrong.push(format!("{id}: {got:?} != {expected}")),
        }
    }
    Outcome::new(
        wrong.is_empty(),
        if wrong.is_empty() { format!("{checked} sequences as expected") } else { format!("{} wrong: {}", wrong.len(), first(&wrong)) },
    )
}

fn criterion_4(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    let mut check = |label: String, a: &SuperAlgebra| {
        let (n, m) = a.dims();
        let Some(l) = central_series(a).nilindex() else { return };
        checked += 1;
        let (g0, g1) = generator_dims(a);
        if (l == n + m + 1) != (g0 + g1 == 1) {
            wrong.push(format!("{label}: nilindex {l}, generators ({g0}|{g1})"));
        }
    };
    for (id, a) in ctx.leibniz_corpus() {
        check(id.to_string(), a);
    }
    for dims in [(1, 0), (2, 0), (1, 1), (2, 1), (1, 2)] {
        for a in &ctx.censuses[&dims].0 {
            check(format!("census {dims:?}"), a);
        }
    }
    let skipped = ctx.invalid_count();
    Outcome::new(
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{checked} nilpotent algebras agree ({skipped} non-Leibniz corpus members excluded)")
        } else {
            format!("{} disagree: {}", wrong.len(), first(&wrong))
        },
    )
}

fn criterion_5(ctx: &Ctx) -> Outcome {
    let attaining = |dims: (usize, usize)| -> Vec<&SuperAlgebra> {
        ctx.censuses[&dims].0.iter().filter(|a| central_series(a).nilindex() == Some(dims.0 + dims.1 + 1)).collect()
    };
    let mut problems = Vec::new();
    let at21 = attaining((2, 1)).len();
    if at21 != 0 || ctx.censuses[&(2, 1)].1.maximal_nilindex.attainers != 0 {
        problems.push(format!("(2,1) has {at21} algebras of nilindex 4"));
    }
    let mut matched = Vec::new();
    for (n, m) in [(1, 1), (1, 2)] {
        let model = Fingerprint::of(&mixed_single_generated(n, m).unwrap());
        let found = attaining((n, m));
        let off = found.iter().filter(|a| Fingerprint::of(a) != model).count();
        if off > 0 || ctx.censuses[&(n, m)].1.maximal_nilindex.attainers != found.len() {
            problems.push(format!("({n},{m}): {off} of {} attainers differ from the model", found.len()));
        }
        matched.push(format!("({n},{m}) {}", found.len()));
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() { format!("(2,1) has none; attainers matching the model: {}", matched.join(", ")) } else { problems.join("; ") },
    )
}

fn criterion_6(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    for (dims, (_, r)) in &ctx.censuses {
        checked += r.nilindex_bound.checked;
        if !r.nilindex_bound.holds {
            wrong.push(format!("census {dims:?}: {}", first(&r.nilindex_bound.counterexamples)));
        }
    }
    for (id, a) in ctx.leibniz_corpus() {
        match nilindex_bound_holds(a, CharSeqPolicy::default()) {
            Ok(None) => {}
            Ok(Some(true)) => checked += 1,
            Ok(Some(false)) => wrong.push(id.to_string()),
            Err(e) => wrong.push(format!("{id}: {e}")),
        }
    }
    Outcome::new(
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{checked} algebras of nilindex n+m, no counterexample")
        } else {
            format!("counterexamples: {}", first(&wrong))
        },
    )
}

fn criterion_7(ctx: &Ctx) -> Outcome {
    let pool: Vec<&(FamilyId, SuperAlgebra)> = ctx.leibniz_corpus().filter(|(id, _)| id.n > 0 && id.m > 0).collect();
    let step = pool.len() / 10;
    let mut changed = Vec::new();
    let mut done = 0;
    for (id, a) in pool.iter().step_by(step.max(1)).take(10) {
        let reference = Fingerprint::of(a);
        for seed in 0..50 {
            let b = common::random_basis_change(a, seed);
            if Fingerprint::of(&b) != reference {
                changed.push(format!("{id} seed {seed}"));
            }
            done += 1;
        }
    }
    Outcome::new(
        changed.is_empty(),
        if changed.is_empty() {
            format!("{done} basis changes keep the fingerprint")
        } else {
            format!("{} changed: {}", changed.len(), first(&changed))
        },
    )
}

fn annihilator_problems(a: &SuperAlgebra) -> Option<String> {
    let r = a.right_annihilator();
    let (n, m) = a.dims();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let s = a.supersymmetrised_flat(i, j);
            if !r.contains_vector(&s[..n], &s[n..]).unwrap() {
                return Some(format!("supersymmetrised product of e{i}, e{j} outside R(L)"));
            }
        }
    }
    let whole = GradedSubspace::whole(n, m);
    if !r.contains(&bracket_subspaces(a, &whole, &r)).unwrap() {
        return Some("[L, R(L)] not in R(L)".into());
    }
    if !r.contains(&bracket_subspaces(a, &r, &whole)).unwrap() {
        return Some("[R(L), L] not in R(L)".into());
    }
    None
}

fn criterion_8(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    for (id, a) in ctx.leibniz_corpus() {
        checked += 1;
        if let Some(p) = annihilator_problems(a) {
            wrong.push(format!("{id}: {p}"));
        }
    }
    let skipped = ctx.invalid_count();
    Outcome::new(
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{checked} members, R(L) an ideal containing the supersymmetrised products ({skipped} non-Leibniz excluded)")
        } else {
            format!("{} fail: {}", wrong.len(), first(&wrong))
        },
    )
}

fn criterion_9(_ctx: &Ctx) -> Outcome {
    let mut problems = Vec::new();
    let mut sizes = Vec::new();
    for (n, m) in [(1, 0), (0, 1), (1, 1), (2, 0)] {
        let pruned: BTreeSet<Vec<i64>> = enumerate(&SearchSpec::new(n, m, signs())).unwrap().algebras.iter().map(common::integer_table).collect();
        let brute = common::brute_force(n, m, &[0, 1, -1]);
        sizes.push(format!("({n}|{m}) {}", brute.len()));
        if pruned != brute {
            problems.push(format!("({n}|{m}): pruned {} vs brute force {}", pruned.len(), brute.len()));
        }
    }
    for (n, m) in [(1, 0), (0, 1), (2, 0), (1, 1), (2, 1), (1, 2)] {
        let reports: Vec<String> = [1, 2, 8].iter().map(|&j| census(&SearchSpec::new(n, m, signs()).with_jobs(j)).unwrap().to_json()).collect();
        if reports.iter().any(|r| r != &reports[0]) {
            problems.push(format!("({n}|{m}) report depends on the worker count"));
        }
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() {
            format!("yields match brute force [{}]; reports identical at 1/2/8 workers", sizes.join(", "))
        } else {
            problems.join("; ")
        },
    )
}

fn criterion_10(ctx: &Ctx) -> Outcome {
    let mut applicable = 0;
    let mut skipped: BTreeMap<String, usize> = BTreeMap::new();
    let mut wrong = Vec::new();
    for (dims, (_, r)) in &ctx.censuses {
        applicable += r.cube_bound.applicable;
        for (k, v) in &r.cube_bound.not_applicable {
            *skipped.entry(k.clone()).or_default() += v;
        }
        if !r.cube_bound.holds {
            wrong.push(format!("census {dims:?}: {}", first(&r.cube_bound.counterexamples)));
        }
    }
    for (id, a) in ctx.leibniz_corpus().filter(|(id, _)| id.n > 0) {
        match check_cube_bound(&a.even_part()) {
            Ok(CubeBoundOutcome::Holds { .. }) => applicable += 1,
            Ok(CubeBoundOutcome::Fails { cube_dim }) => wrong.push(format!("{id}: dim A^3 = {cube_dim}")),
            Ok(CubeBoundOutcome::NotApplicable { reason }) => {
                *skipped.entry(serde_json::to_value(reason).unwrap().as_str().unwrap().to_string()).or_default() += 1
            }
            Err(e) => wrong.push(format!("{id}: {e}")),
        }
    }
    let skipped: Vec<String> = skipped.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Outcome::new(
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{applicable} applicable, all hold; not applicable: {}", skipped.join(", "))
        } else {
            format!("counterexamples: {}", first(&wrong))
        },
    )
}

/// Number, name, check and optional time limit in seconds.
type Criterion = (u8, &'static str, fn(&Ctx) -> Outcome, Option<u64>);

fn main() {
    let start = Instant::now();
    let corpus = common::family_corpus();
    let valid = corpus.iter().map(|(_, a)| a.is_leibniz()).collect();
    let mut censuses = BTreeMap::new();
    for (n, m) in [(1, 0), (0, 1), (2, 0), (1, 1), (2, 1), (1, 2)] {
        censuses.insert((n, m), run_census(n, m, Shape::Full));
    }
    for n in [3, 4] {
        censuses.insert((n, 0), run_census(n, 0, Shape::Triangular));
    }
    let ctx = Ctx { corpus, valid, censuses };
    println!("setup: {} corpus members, {} censuses [{:.1}s]", ctx.corpus.len(), ctx.censuses.len(), start.elapsed().as_secs_f64());

    let criteria: [Criterion; 10] = [
        (1, "superidentity suite", criterion_1, Some(60)),
        (2, "nilindex reproduction", criterion_2, None),
        (3, "characteristic sequences", criterion_3, Some(30)),
        (4, "single-generated iff maximal nilindex", criterion_4, None),
        (5, "dims of maximal-nilindex algebras", criterion_5, None),
        (6, "nilindex n+m bound", criterion_6, None),
        (7, "isomorphism invariance", criterion_7, Some(60)),
        (8, "right annihilator", criterion_8, None),
        (9, "pruning soundness and determinism", criterion_9, None),
        (10, "cube bound on even parts", criterion_10, None),
    ];
    let mut unexpected = Vec::new();
    for (k, name, run, limit) in criteria {
        let t = Instant::now();
        let mut out = run(&ctx);
        let elapsed = t.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(secs) {
                out.pass = false;
                out.detail.push_str(&format!("; over the {secs}s limit"));
            }
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k} ({name}): {} [{:.1}s]", out.detail, elapsed.as_secs_f64());
        if out.pass == KNOWN_UNATTAINABLE.contains(&k) {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
