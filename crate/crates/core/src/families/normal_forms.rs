//! Parameter normalisation operators and the canonical list of
//! representatives per dimension pair.

use super::{e_low, f_low, FamilyId, FamilyTag};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `S_{r,t} = exp(2πi r / t)`.
pub fn s_root(t: usize, r: usize) -> Scalar {
    Scalar::root_of_unity(t as u32, r as i64)
}

fn shape(msg: String) -> Error {
    Error::Shape(msg)
}

/// Order of the root used by `V^kind_j`.
fn v_order(kind: u8, j: usize) -> usize {
    if kind == 2 {
        2 * j + 1
    } else {
        j
    }
}

/// `V^kind_{j,k}(v)` with root index `r` and sign `delta` (only `V⁰` reads it).
///
/// Positions are 1-based: zeros before `j`, `1` at `j`, then `v_p` scaled for
/// `p > j`. `j = k+1` gives the zero vector.
pub fn op_v(kind: u8, j: usize, k: usize, v: &[Scalar], r: usize, delta: i64) -> Result<Vec<Scalar>> {
    if kind > 2 {
        return Err(shape(format!("V kind must be 0, 1 or 2, got {kind}")));
    }
    if v.len() != k {
        return Err(shape(format!("V_{{{j},{k}}} needs {k} entries, got {}", v.len())));
    }
    if j == 0 || j > k + 1 {
        return Err(shape(format!("V_{{j,{k}}} needs 1 ≤ j ≤ {}, got {j}", k + 1)));
    }
    let t = v_order(kind, j);
    if r >= t {
        return Err(shape(format!("root index {r} must be below {t}")));
    }
    if delta != 1 && delta != -1 {
        return Err(Error::Scalar(crate::scalar::ScalarError::InvalidSign(delta)));
    }
    let mut out = vec![Scalar::zero(); k];
    if j == k + 1 {
        return Ok(out);
    }
    out[j - 1] = Scalar::one();
    let root = s_root(t, r);
    for p in j + 1..=k {
        let c = match kind {
            1 => root.pow(p as i64)?,
            0 => &Scalar::jth_root_of_sign(delta, j as u32, p as i64)? * &root.pow(p as i64)?,
            _ => root.pow(2 * p as i64 + 1)?,
        };
        out[p - 1] = &c * &v[p - 1];
    }
    Ok(out)
}

/// `W_{s,k}(v)` where `v` has `k` leading entries plus a trailing `γ` slot.
///
/// The leading `1` of `v` fixes `j`. `s = k+2-j` returns the unit vector at
/// `j`, `s = k+1-j` puts a second `1` in the `γ` slot, and smaller `s` keeps a
/// second `1` at `s+j` followed by the rescaled tail.
pub fn op_w(s: usize, k: usize, v: &[Scalar], r: usize) -> Result<Vec<Scalar>> {
    if v.len() != k + 1 {
        return Err(shape(format!("W_{{s,{k}}} needs {} entries, got {}", k + 1, v.len())));
    }
    let Some(j) = v.iter().position(|c| !c.is_zero()).map(|p| p + 1) else {
        return Err(shape("W needs a vector with a leading 1, got zero".into()));
    };
    if !v[j - 1].is_one() {
        return Err(shape(format!("W needs a leading 1, found {} at position {j}", v[j - 1])));
    }
    if s == 0 || s > k + 2 - j {
        return Err(shape(format!("W_{{s,{k}}} at j={j} needs 1 ≤ s ≤ {}, got {s}", k + 2 - j)));
    }
    if r >= s {
        return Err(shape(format!("root index {r} must be below {s}")));
    }
    let mut out = vec![Scalar::zero(); k + 1];
    out[j - 1] = Scalar::one();
    if s == k + 2 - j {
        return Ok(out);
    }
    if s == k + 1 - j {
        out[k] = Scalar::one();
        return Ok(out);
    }
    out[s + j - 1] = Scalar::one();
    let root = s_root(s, r);
    for p in s + j + 1..=k {
        out[p - 1] = &root.pow((p - j) as i64)? * &v[p - 1];
    }
    // exponent as displayed; it is the only non-homogeneous one in the family
    out[k] = &root.pow(k as i64 + 6 - 2 * j as i64)? * &v[k];
    Ok(out)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CanonicalEntry {
    pub id: FamilyId,
    pub description: String,
}

struct Samples<'a> {
    values: &'a [Scalar],
    next: usize,
}

impl Samples<'_> {
    fn take(&mut self, count: usize) -> Vec<Scalar> {
        (0..count)
            .map(|_| {
                let v = self.values[self.next % self.values.len()].clone();
                self.next += 1;
                v
            })
            .collect()
    }

    /// Next sample that is not `±1/2`, falling back to `0`.
    fn take_not_half(&mut self) -> Scalar {
        let half = Scalar::ratio(1, 2);
        let bad = |v: &Scalar| *v == half || *v == -&half;
        for _ in 0..self.values.len() {
            let v = self.take(1).pop().expect("one sample");
            if !bad(&v) {
                return v;
            }
        }
        Scalar::zero()
    }
}

struct Collector {
    n: usize,
    m: usize,
    entries: Vec<CanonicalEntry>,
}

impl Collector {
    fn push(&mut self, tag: FamilyTag, params: Vec<Scalar>, description: String) -> Result<()> {
        let id = FamilyId::new(tag, self.n, self.m, params)?;
        if !self.entries.iter().any(|e| e.id == id) {
            self.entries.push(CanonicalEntry { id, description });
        }
        Ok(())
    }
}

fn zeros(k: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); k]
}

fn zeros_then_one(k: usize) -> Vec<Scalar> {
    let mut v = zeros(k);
    if let Some(last) = v.last_mut() {
        *last = Scalar::one();
    }
    v
}

/// All `W_s(v)` for admissible `s` and root indices, with `v` the output of
/// a `V¹_j`. Errors from `op_w` on the zero vector are skipped.
fn w_images(v: &[Scalar]) -> Result<Vec<(usize, usize, Vec<Scalar>)>> {
    let k = v.len() - 1;
    let Some(j) = v.iter().position(|c| !c.is_zero()).map(|p| p + 1) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for s in 1..=k + 2 - j {
        for r in 0..s {
            out.push((s, r, op_w(s, k, v, r)?));
        }
    }
    Ok(out)
}

/// Canonical representatives at `(n, m)`, instantiated with `sample` values
/// (cycled) for the free parameters.
pub fn canonical_list(n: usize, m: usize, sample: &[Scalar]) -> Result<Vec<CanonicalEntry>> {
    if sample.is_empty() {
        return Err(Error::Family("canonical_list needs at least one sample value".into()));
    }
    let mut s = Samples { values: sample, next: 0 };
    let mut c = Collector { n, m, entries: Vec::new() };

    if m + 1 == n && n >= 3 {
        lie_like_odd_short(&mut c, &mut s)?;
    }
    if m == n && n >= 3 {
        lie_like_square(&mut c, &mut s)?;
    }
    if m == n + 1 && n >= 3 && n % 2 == 1 {
        family_e_odd(&mut c, &mut s)?;
    }
    if m == n + 1 && n >= 2 && n.is_multiple_of(2) {
        family_e_even(&mut c, &mut s)?;
    }
    if m == n + 2 && n >= 2 {
        family_f(&mut c, &mut s)?;
    }
    small_families(&mut c)?;

    if c.entries.is_empty() {
        return Err(Error::Family(format!("no canonical list at (n,m)=({n},{m})")));
    }
    Ok(c.entries)
}

fn lie_like_odd_short(c: &mut Collector, s: &mut Samples<'_>) -> Result<()> {
    let n = c.n;
    let k = n - 3;
    let alpha = s.take(k);
    let theta = s.take(1).pop().expect("sample");
    for j in 1..=k {
        for r in 0..j {
            let mut p = op_v(1, j, k, &alpha, r, 1)?;
            p.push(&s_root(j, r).pow(k as i64)? * &theta);
            c.push(FamilyTag::L, p, format!("L(V1_{{{j},{k}}}(alpha), S^{k} theta), r={r}"))?;
        }
    }
    c.push(FamilyTag::L, zeros_then_one(k + 1), "L(0,...,0,1)".into())?;
    c.push(FamilyTag::L, zeros(k + 1), "L(0,...,0)".into())?;
    c.push(FamilyTag::G, zeros_then_one(k + 1), "G(0,...,0,1)".into())?;
    c.push(FamilyTag::G, zeros(k + 1), "G(0,...,0)".into())?;
    let beta = s.take(k);
    let gamma = s.take(1).pop().expect("sample");
    for j in 1..=k {
        for rv in 0..j {
            let mut v = op_v(1, j, k, &beta, rv, 1)?;
            v.push(gamma.clone());
            for (sw, rw, p) in w_images(&v)? {
                c.push(FamilyTag::G, p, format!("G(W_{{{sw},{k}}}(V1_{{{j},{k}}}(beta), gamma)), r={rv},{rw}"))?;
            }
        }
    }
    Ok(())
}

fn lie_like_square(c: &mut Collector, s: &mut Samples<'_>) -> Result<()> {
    let n = c.n;
    let k = n - 2;
    let alpha = s.take(k);
    let tau = s.take(1).pop().expect("sample");
    for j in 1..=k {
        for r in 0..j {
            let mut p = op_v(1, j, k, &alpha, r, 1)?;
            p.push(&s_root(j, r).pow(n as i64 - 3)? * &tau);
            c.push(FamilyTag::M, p, format!("M(V1_{{{j},{k}}}(alpha, theta), S^{} tau), r={r}", n - 3))?;
        }
    }
    c.push(FamilyTag::M, zeros_then_one(k + 1), "M(0,...,0,1)".into())?;
    c.push(FamilyTag::M, zeros(k + 1), "M(0,...,0)".into())?;
    c.push(FamilyTag::H, zeros_then_one(k + 1), "H(0,...,0,1)".into())?;
    c.push(FamilyTag::H, zeros(k + 1), "H(0,...,0)".into())?;
    let beta = s.take(k);
    let gamma = s.take(1).pop().expect("sample");
    for j in 1..=k {
        for rv in 0..j {
            let mut v = op_v(1, j, k, &beta, rv, 1)?;
            v.push(gamma.clone());
            for (sw, rw, p) in w_images(&v)? {
                c.push(FamilyTag::H, p, format!("H(W_{{{sw},{k}}}(V1_{{{j},{k}}}(beta, delta), gamma)), r={rv},{rw}"))?;
            }
        }
    }
    Ok(())
}

/// `n = 2q-1`; parameters `(γ, β_{q+1}, β_{q+2}, …, β_n, β)`.
fn family_e_odd(c: &mut Collector, s: &mut Samples<'_>) -> Result<()> {
    let n = c.n;
    let q = n.div_ceil(2);
    debug_assert_eq!(e_low(n), q + 1);
    let k = q - 2;
    let tail = s.take(k);
    let tail_beta: Vec<Scalar> = tail.iter().cloned().chain(s.take(1)).collect();
    let lead = s.take_not_half();
    let one = Scalar::one;
    let half = Scalar::ratio(1, 2);
    let assemble = |gamma: Scalar, b: Scalar, rest: Vec<Scalar>| {
        let mut p = vec![gamma, b];
        p.extend(rest);
        p
    };
    for delta in [1i64, -1] {
        for j in 1..=k + 1 {
            for r in 0..j {
                let v = op_v(0, j, k, &tail, r, delta)?;
                let mut rest = v.clone();
                rest.push(Scalar::zero());
                let b = &Scalar::from_integer(delta) * &lead;
                c.push(FamilyTag::EOdd, assemble(one(), b, rest), format!("E(1, delta beta, V0_{{{j},{k}}}, 0), delta={delta}, r={r}"))?;
            }
        }
        for sign in [1i64, -1] {
            for j in 1..=k + 2 {
                for r in 0..j {
                    let v = op_v(0, j, k + 1, &tail_beta, r, delta)?;
                    let b = &Scalar::from_integer(sign) * &half;
                    c.push(FamilyTag::EOdd, assemble(one(), b, v), format!("E(1, {sign}/2, V0_{{{j},{}}}), delta={delta}, r={r}", k + 1))?;
                }
            }
        }
    }
    for j in 1..=k + 1 {
        for r in 0..j {
            let mut rest = op_v(0, j, k, &tail, r, 1)?;
            rest.push(Scalar::zero());
            c.push(FamilyTag::EOdd, assemble(Scalar::zero(), one(), rest), format!("E(0, 1, V0_{{{j},{k}}}, 0), r={r}"))?;
        }
    }
    for j in 1..=k + 1 {
        for rv in 0..j {
            let v = op_v(1, j, k + 1, &tail_beta, rv, 1)?;
            for (sw, rw, p) in w_images(&v)? {
                c.push(
                    FamilyTag::EOdd,
                    assemble(Scalar::zero(), Scalar::zero(), p),
                    format!("E(0, 0, W_{{{sw},{k}}}(V1_{{{j},{}}})), r={rv},{rw}", k + 1),
                )?;
            }
        }
    }
    c.push(FamilyTag::EOdd, zeros(q + 1), "E(0,...,0)".into())?;
    Ok(())
}

/// `n = 2q`; parameters `(γ, β_{q+2}, …, β_n, β)`.
fn family_e_even(c: &mut Collector, s: &mut Samples<'_>) -> Result<()> {
    let n = c.n;
    let q = n / 2;
    debug_assert_eq!(e_low(n), q + 2);
    let k = q - 1;
    let tail = s.take(k);
    let tail_beta: Vec<Scalar> = tail.iter().cloned().chain(s.take(1)).collect();
    for j in 1..=q {
        for r in 0..v_order(2, j) {
            let mut p = vec![Scalar::one()];
            p.extend(op_v(2, j, k, &tail, r, 1)?);
            p.push(Scalar::zero());
            c.push(FamilyTag::EEven, p, format!("E(1, V2_{{{j},{k}}}, 0), r={r}"))?;
        }
    }
    for j in 1..=q {
        for rv in 0..j {
            let v = op_v(1, j, q, &tail_beta, rv, 1)?;
            for (sw, rw, w) in w_images(&v)? {
                let mut p = vec![Scalar::zero()];
                p.extend(w);
                c.push(FamilyTag::EEven, p, format!("E(0, W_{{{sw},{k}}}(V1_{{{j},{q}}})), r={rv},{rw}"))?;
            }
        }
    }
    c.push(FamilyTag::EEven, zeros(q + 1), "E(0,...,0)".into())?;
    Ok(())
}

fn family_f(c: &mut Collector, s: &mut Samples<'_>) -> Result<()> {
    let n = c.n;
    let big_k = n + 2 - f_low(n);
    let beta = s.take(big_k);
    for j in 1..=big_k {
        for rv in 0..j {
            let v = op_v(1, j, big_k, &beta, rv, 1)?;
            for (sw, rw, p) in w_images(&v)? {
                c.push(FamilyTag::F, p, format!("F(W_{{{sw},{}}}(V1_{{{j},{big_k}}}(beta))), r={rv},{rw}", big_k - 1))?;
            }
        }
    }
    c.push(FamilyTag::F, zeros(big_k), "F(0,...,0)".into())?;
    Ok(())
}

fn small_families(c: &mut Collector) -> Result<()> {
    let (n, m) = (c.n, c.m);
    if n == 1 && m >= 1 {
        c.push(FamilyTag::Leib1M, Vec::new(), "Leib_{1,m}".into())?;
    }
    if m == 1 && n >= 1 {
        c.push(FamilyTag::LeibN1, vec![Scalar::zero()], "Leib_{n,1}, alpha=0".into())?;
        // at n = 1 the odd square raises the nilindex past n+m
        if n >= 2 {
            c.push(FamilyTag::LeibN1, vec![Scalar::one()], "Leib_{n,1}, alpha=1".into())?;
        }
    }
    if (n, m) == (2, 2) {
        c.push(FamilyTag::Leib22A, Vec::new(), "Leib_{2,2}, first table".into())?;
        c.push(FamilyTag::Leib22B, Vec::new(), "Leib_{2,2}, second table".into())?;
    }
    if n == 2 && m % 2 == 1 {
        if m >= 3 {
            c.push(FamilyTag::Leib2MA, Vec::new(), "Leib_{2,m}, first table".into())?;
        }
        c.push(FamilyTag::Leib2MB, Vec::new(), "Leib_{2,m}, second table".into())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::nilindex;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn v_operator() {
        assert_eq!(op_v(1, 4, 3, &ints(&[1, 2, 3]), 0, 1).unwrap(), ints(&[0, 0, 0]));
        assert_eq!(op_v(1, 1, 2, &ints(&[5, 7]), 0, 1).unwrap(), ints(&[1, 7]));
        let (a, b, c) = (Scalar::from_integer(3), Scalar::from_integer(5), Scalar::ratio(2, 7));
        let got = op_v(0, 2, 3, &[a, b, c.clone()], 1, -1).unwrap();
        // -ζ₄ · (-1)³ · c
        let expect = &(-&Scalar::root_of_unity(4, 1)) * &(&Scalar::from_integer(-1) * &c);
        assert_eq!(got, vec![Scalar::zero(), Scalar::one(), expect]);
        // V² at j = 1 uses cube roots: S_{1,3}^{2p+1}
        let got = op_v(2, 1, 2, &ints(&[9, 1]), 1, 1).unwrap();
        assert_eq!(got[1], Scalar::root_of_unity(3, 5));
        assert!(op_v(1, 0, 2, &ints(&[1, 1]), 0, 1).is_err());
        assert!(op_v(1, 2, 2, &ints(&[1, 1]), 2, 1).is_err());
        assert!(op_v(1, 1, 3, &ints(&[1, 1]), 0, 1).is_err());
    }

    #[test]
    fn w_operator() {
        let v = ints(&[1, 4, 5, 6]);
        assert_eq!(op_w(4, 3, &v, 0).unwrap(), ints(&[1, 0, 0, 0]));
        assert_eq!(op_w(3, 3, &v, 0).unwrap(), ints(&[1, 0, 0, 1]));
        assert_eq!(op_w(1, 3, &v, 0).unwrap(), ints(&[1, 1, 5, 6]));
        // s = 2, r = 1: S = -1, tail p = 3 gets S^2, γ gets S^{3+6-2}
        assert_eq!(op_w(2, 3, &v, 1).unwrap(), ints(&[1, 0, 1, -6]));
        assert!(op_w(1, 3, &ints(&[0, 0, 0, 0]), 0).is_err());
        assert!(op_w(1, 3, &ints(&[2, 0, 0, 0]), 0).is_err());
        assert!(op_w(5, 3, &v, 0).is_err());
    }

    #[test]
    fn s_with_zero_index_is_trivial() {
        let v = ints(&[3, -2, 7, 1]);
        for j in 1..=4 {
            let out = op_v(1, j, 4, &v, 0, 1).unwrap();
            assert_eq!(&out[j..], &v[j..]);
        }
    }

    #[test]
    fn lists_contain_displayed_members() {
        let sample = ints(&[1]);
        let l = canonical_list(4, 3, &sample).unwrap();
        let has = |list: &[CanonicalEntry], d: &str| list.iter().any(|e| e.description == d);
        assert!(has(&l, "L(0,...,0,1)") && has(&l, "L(0,...,0)"));
        assert!(has(&canonical_list(3, 4, &sample).unwrap(), "E(0,...,0)"));
        assert!(has(&canonical_list(3, 5, &sample).unwrap(), "F(0,...,0)"));
        assert!(canonical_list(1, 0, &sample).is_err());
    }

    #[test]
    fn list_members_have_maximal_nilindex() {
        let sample = vec![Scalar::one(), Scalar::from_integer(-1), Scalar::ratio(1, 2)];
        for (n, m) in [(3, 2), (4, 3), (2, 3), (3, 4), (4, 5), (2, 4), (3, 5), (2, 2)] {
            for e in canonical_list(n, m, &sample).unwrap() {
                let a = e.id.build().unwrap();
                if e.id.tag == FamilyTag::H {
                    continue;
                }
                assert!(a.is_leibniz(), "{} {}", e.id, e.description);
                assert_eq!(nilindex(&a).unwrap(), n + m, "{} {}", e.id, e.description);
            }
        }
    }
}
