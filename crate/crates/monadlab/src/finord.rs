//! Finite ordinals, functions between them, and verbal categories.
//!
//! The ordinal `n` is the set `{0, …, n-1}`. A [`FinFn`] is a function
//! between two ordinals, stored as its value table. The named wide
//! subcategories of all such functions ([`VerbalCat`]) classify which
//! structural rules (exchange, weakening, contraction) a context admits; a
//! wide subcategory qualifies as *verbal* when it is closed under the
//! substitution operation [`star`], which is what [`check_star_closure`]
//! verifies exhaustively at small arities.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::{Error, Result};

/// A function between finite ordinals, `dom -> cod`, as a value table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinFn", into = "RawFinFn")]
pub struct FinFn {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawFinFn {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl TryFrom<RawFinFn> for FinFn {
    type Error = Error;
    fn try_from(raw: RawFinFn) -> Result<FinFn> {
        FinFn::new(raw.dom, raw.cod, raw.table)
    }
}

impl From<FinFn> for RawFinFn {
    fn from(f: FinFn) -> RawFinFn {
        RawFinFn { dom: f.dom, cod: f.cod, table: f.table }
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}->{}", self.table, self.dom, self.cod)
    }
}

impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]:{}->{}", self.dom, self.cod)
    }
}

impl FinFn {
    /// Checked constructor: every table entry must be `< cod` and the table
    /// length must equal `dom`.
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom {
            return Err(Error::InvalidValue(format!(
                "table length {} does not match dom {}",
                table.len(),
                dom
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod) {
            return Err(Error::InvalidValue(format!("table entry {bad} not below cod {cod}")));
        }
        Ok(FinFn { dom, cod, table })
    }

    pub fn identity(n: usize) -> Self {
        FinFn { dom: n, cod: n, table: (0..n).collect() }
    }

    /// The unique map `n -> 1` (requires `n >= 0`; for `n = 0` this is the
    /// empty map into `1`).
    pub fn terminal(n: usize) -> Self {
        FinFn { dom: n, cod: 1, table: vec![0; n] }
    }

    /// The transposition `2 -> 2`.
    pub fn swap2() -> Self {
        FinFn { dom: 2, cod: 2, table: vec![1, 0] }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for &v in &self.table {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    /// Strictly increasing table, i.e. a monotone injection.
    pub fn is_monotone_injection(&self) -> bool {
        self.table.windows(2).all(|w| w[0] < w[1])
    }

    /// Weakly increasing table (not a verbal class; kept for the negative
    /// closure test).
    pub fn is_monotone(&self) -> bool {
        self.table.windows(2).all(|w| w[0] <= w[1])
    }

    /// Sizes of the fibers over each element of the codomain.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.cod];
        for &v in &self.table {
            sizes[v] += 1;
        }
        sizes
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::InvalidValue(format!("{self} is not a bijection")));
        }
        let mut table = vec![0usize; self.cod];
        for (i, &v) in self.table.iter().enumerate() {
            table[v] = i;
        }
        Ok(FinFn { dom: self.cod, cod: self.dom, table })
    }
}

/// Composition `g ∘ f` (apply `f` first). Requires `f.cod == g.dom`.
pub fn compose(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.cod != g.dom {
        return Err(Error::ArityMismatch(format!(
            "cannot compose {g} after {f}: cod {} != dom {}",
            f.cod, g.dom
        )));
    }
    let table = f.table.iter().map(|&i| g.table[i]).collect();
    Ok(FinFn { dom: f.dom, cod: g.cod, table })
}

/// The chosen coproduct coprojection `ι_{m⃗,i} : m_i -> Σ m⃗`, sending `j` to
/// `(Σ_{k<i} m_k) + j`.
pub fn coproj(m_vec: &[usize], i: usize) -> Result<FinFn> {
    if i >= m_vec.len() {
        return Err(Error::IndexOutOfRange(format!(
            "coproj index {i} out of range for {} summands",
            m_vec.len()
        )));
    }
    let total: usize = m_vec.iter().sum();
    let offset: usize = m_vec[..i].iter().sum();
    let table = (0..m_vec[i]).map(|j| offset + j).collect();
    Ok(FinFn { dom: m_vec[i], cod: total, table })
}

/// The substitution operation `β ⋆ α⃗`.
///
/// Given `β : n' -> n` and `α_i : m'_i -> m_i` for `i < n`, the result is the
/// unique function `Σ_{i'<n'} m'_{β(i')} -> Σ_{i<n} m_i` whose restriction
/// along the `i'`-th chosen coprojection is `ι_{m⃗,β(i')} ∘ α_{β(i')}`.
pub fn star(beta: &FinFn, alphas: &[FinFn]) -> Result<FinFn> {
    if alphas.len() != beta.cod {
        return Err(Error::ArityMismatch(format!(
            "star needs {} blocks, got {}",
            beta.cod,
            alphas.len()
        )));
    }
    let m_out: Vec<usize> = alphas.iter().map(|a| a.cod).collect();
    let cod: usize = m_out.iter().sum();
    let mut out_offsets = Vec::with_capacity(m_out.len());
    let mut acc = 0usize;
    for &m in &m_out {
        out_offsets.push(acc);
        acc += m;
    }
    let mut table = Vec::new();
    for i_prime in 0..beta.dom {
        let i = beta.table[i_prime];
        let alpha = &alphas[i];
        for j in 0..alpha.dom {
            table.push(out_offsets[i] + alpha.table[j]);
        }
    }
    let dom = table.len();
    Ok(FinFn { dom, cod, table })
}

/// One of the named wide subcategories of finite ordinals and functions.
///
/// `FsurjN(k)` is the category generated by the swap and the unique map
/// `k -> 1`: surjections all of whose fibers have cardinality `t(k-1)+1` for
/// some `t`. `FsurjN(1)` classifies the bijections and `FsurjN(2)` all
/// surjections.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VerbalCat {
    Fid,
    Fminj,
    Fbij,
    Finj,
    Fsurj,
    F,
    FsurjN(usize),
}

impl fmt::Display for VerbalCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerbalCat::Fid => write!(f, "Fid"),
            VerbalCat::Fminj => write!(f, "Fminj"),
            VerbalCat::Fbij => write!(f, "Fbij"),
            VerbalCat::Finj => write!(f, "Finj"),
            VerbalCat::Fsurj => write!(f, "Fsurj"),
            VerbalCat::F => write!(f, "F"),
            VerbalCat::FsurjN(k) => write!(f, "FsurjN:{k}"),
        }
    }
}

impl std::str::FromStr for VerbalCat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Fid" => Ok(VerbalCat::Fid),
            "Fminj" => Ok(VerbalCat::Fminj),
            "Fbij" => Ok(VerbalCat::Fbij),
            "Finj" => Ok(VerbalCat::Finj),
            "Fsurj" => Ok(VerbalCat::Fsurj),
            "F" => Ok(VerbalCat::F),
            _ => {
                if let Some(k) = s.strip_prefix("FsurjN:") {
                    let k: usize =
                        k.parse().map_err(|_| Error::UnknownName(format!("verbal category {s}")))?;
                    if k == 0 {
                        return Err(Error::InvalidValue("FsurjN parameter must be >= 1".into()));
                    }
                    Ok(VerbalCat::FsurjN(k))
                } else {
                    Err(Error::UnknownName(format!("verbal category {s}")))
                }
            }
        }
    }
}

impl Serialize for VerbalCat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VerbalCat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl VerbalCat {
    /// Membership of `f` in this wide subcategory.
    pub fn member(&self, f: &FinFn) -> bool {
        match self {
            VerbalCat::Fid => f.is_identity(),
            VerbalCat::Fminj => f.is_monotone_injection(),
            VerbalCat::Fbij => f.is_bijective(),
            VerbalCat::Finj => f.is_injective(),
            VerbalCat::Fsurj => f.is_surjective(),
            VerbalCat::F => true,
            VerbalCat::FsurjN(k) => {
                f.is_surjective()
                    && f.fiber_sizes().iter().all(|&s| {
                        // fiber size of the form t(k-1)+1 for some t >= 0
                        if *k == 1 {
                            s == 1
                        } else {
                            s >= 1 && (s - 1) % (k - 1) == 0
                        }
                    })
            }
        }
    }

    /// Whether this subcategory is contained in `other`, decided by the
    /// definitions (used to validate restrict/extend directions).
    pub fn subcategory_of(&self, other: &VerbalCat) -> bool {
        use VerbalCat::*;
        if self == other || *other == F {
            return true;
        }
        match (self, other) {
            (Fid, _) => true,
            (Fminj, Finj) => true,
            (Fbij, Finj) | (Fbij, Fsurj) => true,
            (Fbij, FsurjN(_)) => true,
            (FsurjN(_), Fsurj) => true,
            (FsurjN(1), x) => Fbij.subcategory_of(x),
            (Fbij, Fbij) => true,
            (x, FsurjN(2)) => x.subcategory_of(&Fsurj),
            (FsurjN(a), FsurjN(b)) => *b > 1 && (*a == 1 || (*a > 1 && (a - 1) % (b - 1) == 0)),
            _ => false,
        }
    }

    /// All seven shipped categories, with `k = 3` as the `FsurjN`
    /// representative.
    pub fn shipped() -> Vec<VerbalCat> {
        vec![
            VerbalCat::Fid,
            VerbalCat::Fminj,
            VerbalCat::Fbij,
            VerbalCat::Finj,
            VerbalCat::Fsurj,
            VerbalCat::F,
            VerbalCat::FsurjN(3),
        ]
    }
}

/// A membership predicate on functions: either a verbal category or one of
/// the non-verbal classes kept around as negative tests for closure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MorphClass {
    Verbal(VerbalCat),
    /// All weakly monotone maps (admits weakening and contraction but no
    /// exchange); not closed under `⋆`.
    Monotone,
    /// All weakly monotone surjections; not closed under `⋆` either.
    MonotoneSurj,
}

impl fmt::Display for MorphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphClass::Verbal(w) => write!(f, "{w}"),
            MorphClass::Monotone => write!(f, "monotone"),
            MorphClass::MonotoneSurj => write!(f, "monotone-surjective"),
        }
    }
}

impl MorphClass {
    pub fn member(&self, f: &FinFn) -> bool {
        match self {
            MorphClass::Verbal(w) => w.member(f),
            MorphClass::Monotone => f.is_monotone(),
            MorphClass::MonotoneSurj => f.is_monotone() && f.is_surjective(),
        }
    }
}

/// All members of `class` with domain `m` and codomain `n`, in lexicographic
/// table order. Refuses when either arity exceeds `bound`.
pub fn enumerate_class(
    class: MorphClass,
    m: usize,
    n: usize,
    bound: usize,
) -> Result<Vec<FinFn>> {
    if m > bound || n > bound {
        return Err(Error::BoundExceeded {
            bound,
            what: format!("enumerate({class}, {m}, {n})"),
        });
    }
    let mut out = Vec::new();
    if m == 0 {
        let f = FinFn { dom: 0, cod: n, table: vec![] };
        if class.member(&f) {
            out.push(f);
        }
        return Ok(out);
    }
    if n == 0 {
        return Ok(out); // no functions from a nonempty ordinal into 0
    }
    let mut table = vec![0usize; m];
    loop {
        let f = FinFn { dom: m, cod: n, table: table.clone() };
        if class.member(&f) {
            out.push(f);
        }
        // lexicographic increment
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            table[i] += 1;
            if table[i] < n {
                break;
            }
            table[i] = 0;
        }
    }
}

/// All members of `w` with arities up to `bound`.
pub fn enumerate(w: VerbalCat, m: usize, n: usize, bound: usize) -> Result<Vec<FinFn>> {
    enumerate_class(MorphClass::Verbal(w), m, n, bound)
}

type EnumKey = (VerbalCat, usize, usize);
static ENUM_CACHE: std::sync::OnceLock<
    std::sync::Mutex<std::collections::HashMap<EnumKey, std::sync::Arc<Vec<FinFn>>>>,
> = std::sync::OnceLock::new();

/// Memoized [`enumerate`] for the hot inner loops of canonicalization.
/// Callers are expected to stay at small arities.
pub fn enumerate_cached(w: VerbalCat, m: usize, n: usize) -> std::sync::Arc<Vec<FinFn>> {
    let cache = ENUM_CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(w, m, n)) {
        return hit.clone();
    }
    let computed = std::sync::Arc::new(
        enumerate_class(MorphClass::Verbal(w), m, n, m.max(n)).expect("within its own bound"),
    );
    cache.lock().unwrap().insert((w, m, n), computed.clone());
    computed
}

/// Outcome of a star-closure check.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub class: String,
    pub arity_bound: usize,
    pub checked: usize,
    pub pass: bool,
    /// On failure: `(beta, alphas, result)` with `result` outside the class.
    pub witness: Option<(FinFn, Vec<FinFn>, FinFn)>,
}

/// Exhaustively verify that `class` is closed under `⋆` for all shapes with
/// every arity at most `arity_bound`. Failure is data, not an error.
pub fn check_star_closure(class: MorphClass, arity_bound: usize) -> ClosureReport {
    let b = arity_bound;
    let mut checked = 0usize;
    // Pre-enumerate all class members per (dom, cod).
    let mut table: Vec<Vec<Vec<FinFn>>> = vec![vec![Vec::new(); b + 1]; b + 1];
    for (m, row) in table.iter_mut().enumerate() {
        for (n, cell) in row.iter_mut().enumerate() {
            *cell = enumerate_class(class, m, n, b).expect("within bound");
        }
    }
    let all_members: Vec<&FinFn> = table.iter().flatten().flatten().collect();
    for beta in &all_members {
        let n = beta.cod();
        // every choice of alphas: one class member per i < n, arities <= b
        let mut choice = vec![0usize; n];
        'outer: loop {
            let alphas: Vec<FinFn> =
                choice.iter().map(|&c| all_members[c].clone()).collect();
            let result = star(beta, &alphas).expect("lengths match");
            checked += 1;
            if !class.member(&result) {
                return ClosureReport {
                    class: class.to_string(),
                    arity_bound: b,
                    checked,
                    pass: false,
                    witness: Some(((*beta).clone(), alphas, result)),
                };
            }
            // odometer over member indices
            let mut i = n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < all_members.len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }
    ClosureReport {
        class: class.to_string(),
        arity_bound: b,
        checked,
        pass: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(dom: usize, cod: usize, table: &[usize]) -> FinFn {
        FinFn::new(dom, cod, table.to_vec()).unwrap()
    }

    #[test]
    fn compose_basics() {
        let id3 = FinFn::identity(3);
        assert_eq!(compose(&id3, &id3).unwrap(), id3);
        // !_1 ∘ !_2 = !_2
        let t2 = FinFn::terminal(2);
        let t1 = FinFn::terminal(1);
        assert_eq!(compose(&t1, &t2).unwrap(), t2);
        let s = FinFn::swap2();
        assert_eq!(compose(&s, &s).unwrap(), FinFn::identity(2));
        assert!(compose(&t2, &t2).is_err());
    }

    #[test]
    fn coproj_formula() {
        assert_eq!(coproj(&[2, 3], 1).unwrap(), f(3, 5, &[2, 3, 4]));
        assert_eq!(coproj(&[2, 3], 0).unwrap(), f(2, 5, &[0, 1]));
        assert_eq!(coproj(&[0, 4], 0).unwrap(), f(0, 4, &[]));
        assert!(coproj(&[2, 3], 2).is_err());
    }

    #[test]
    fn membership() {
        assert!(VerbalCat::Fbij.member(&FinFn::swap2()));
        assert!(VerbalCat::Fminj.member(&f(2, 4, &[1, 3])));
        assert!(!VerbalCat::Fminj.member(&f(2, 4, &[3, 1])));
        assert!(VerbalCat::FsurjN(3).member(&FinFn::terminal(3)));
        assert!(!VerbalCat::FsurjN(3).member(&FinFn::terminal(2)));
        assert!(VerbalCat::FsurjN(3).member(&FinFn::identity(2)));
    }

    #[test]
    fn fsurjn_degenerate_parameters() {
        // FsurjN(1) = bijections, FsurjN(2) = surjections, exhaustively at
        // arities <= 5.
        for m in 0..=5 {
            for n in 0..=5 {
                for g in enumerate(VerbalCat::F, m, n, 5).unwrap() {
                    assert_eq!(
                        VerbalCat::FsurjN(1).member(&g),
                        VerbalCat::Fbij.member(&g),
                        "{g}"
                    );
                    assert_eq!(
                        VerbalCat::FsurjN(2).member(&g),
                        VerbalCat::Fsurj.member(&g),
                        "{g}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(
            enumerate(VerbalCat::Fbij, 2, 2, 4).unwrap(),
            vec![FinFn::identity(2), FinFn::swap2()]
        );
        assert!(enumerate(VerbalCat::Fbij, 2, 3, 4).unwrap().is_empty());
        assert_eq!(enumerate(VerbalCat::F, 2, 2, 4).unwrap().len(), 4);
        assert!(enumerate(VerbalCat::F, 5, 2, 4).is_err());
    }

    #[test]
    fn enumerate_consistent_with_member() {
        for m in 0..=4 {
            for n in 0..=4 {
                let all = enumerate(VerbalCat::F, m, n, 4).unwrap();
                for w in VerbalCat::shipped() {
                    let listed = enumerate(w, m, n, 4).unwrap();
                    let filtered: Vec<FinFn> =
                        all.iter().filter(|g| w.member(g)).cloned().collect();
                    assert_eq!(listed, filtered, "{w} {m}->{n}");
                }
            }
        }
    }

    #[test]
    fn star_interleaving_example() {
        // !_2 ⋆ (id_2) duplicates the wires in an interleaved, non-monotone way.
        let res = star(&FinFn::terminal(2), &[FinFn::identity(2)]).unwrap();
        assert_eq!(res, f(4, 2, &[0, 1, 0, 1]));
        assert!(!res.is_monotone());
    }

    #[test]
    fn star_unit() {
        // id_n ⋆ (id_{m_i}) = id_{Σ m_i}
        let ids = [FinFn::identity(2), FinFn::identity(0), FinFn::identity(3)];
        let res = star(&FinFn::identity(3), &ids).unwrap();
        assert_eq!(res, FinFn::identity(5));
    }

    /// Independent oracle for `star`: search all candidates of the right
    /// arity for the unique one satisfying the defining squares.
    fn star_by_squares(beta: &FinFn, alphas: &[FinFn]) -> FinFn {
        let m_in: Vec<usize> = (0..beta.dom()).map(|i| alphas[beta.apply(i)].dom()).collect();
        let m_out: Vec<usize> = alphas.iter().map(|a| a.cod()).collect();
        let dom: usize = m_in.iter().sum();
        let cod: usize = m_out.iter().sum();
        let candidates = enumerate(VerbalCat::F, dom, cod, 12).unwrap();
        let mut found = Vec::new();
        for cand in candidates {
            let ok = (0..beta.dom()).all(|i_prime| {
                let i = beta.apply(i_prime);
                let left = compose(&cand, &coproj(&m_in, i_prime).unwrap()).unwrap();
                let right = compose(&coproj(&m_out, i).unwrap(), &alphas[i]).unwrap();
                left == right
            });
            if ok {
                found.push(cand);
            }
        }
        assert_eq!(found.len(), 1, "the defining squares must have a unique solution");
        found.pop().unwrap()
    }

    #[test]
    fn star_matches_square_oracle() {
        let beta = FinFn::swap2();
        let alphas = [f(1, 2, &[1]), f(2, 1, &[0, 0])];
        let direct = star(&beta, &alphas).unwrap();
        assert_eq!(direct.dom(), 3);
        assert_eq!(direct.cod(), 3);
        assert_eq!(direct, star_by_squares(&beta, &alphas));

        // a few more shapes
        let beta2 = f(4, 3, &[2, 0, 1, 0]);
        let alphas2 = [f(2, 2, &[1, 0]), f(3, 2, &[0, 0, 1]), f(2, 1, &[0, 0])];
        assert_eq!(star(&beta2, &alphas2).unwrap(), star_by_squares(&beta2, &alphas2));
    }

    #[test]
    fn closure_pass_and_fail() {
        let rep = check_star_closure(MorphClass::Verbal(VerbalCat::Fsurj), 3);
        assert!(rep.pass, "Fsurj closure: {:?}", rep.witness);
        let rep = check_star_closure(MorphClass::Verbal(VerbalCat::Fid), 4);
        assert!(rep.pass);
        let rep = check_star_closure(MorphClass::Monotone, 2);
        assert!(!rep.pass);
        let (beta, alphas, result) = rep.witness.unwrap();
        // first witness in enumeration order is !_2 ⋆ (id_2) = [0,1,0,1]
        assert_eq!(beta, FinFn::terminal(2));
        assert_eq!(alphas, vec![FinFn::identity(2)]);
        assert_eq!(result, f(4, 2, &[0, 1, 0, 1]));
    }

    #[test]
    fn finfn_json_shape() {
        let g = f(2, 4, &[1, 3]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"dom":2,"cod":4,"table":[1,3]}"#);
        let back: FinFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FinFn>(r#"{"dom":2,"cod":4,"table":[1,4]}"#).is_err());
        assert_eq!(serde_json::to_string(&VerbalCat::FsurjN(3)).unwrap(), r#""FsurjN:3""#);
    }
}
