//! Operads graded over a verbal category: the data interface, the shipped
//! instances, the exhaustive axiom checker, change of base (restriction and
//! extension), and the endomorphism operad in a Kleisli category.
//!
//! An operad here is arity-truncated at `amax`: axiom instances that would
//! need a higher arity are counted as untested, never as passed.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Monoid, MonoidWithZero, Scalar, Semiring};
use crate::finord::{compose, coproj, enumerate, enumerate_cached, star, FinFn, VerbalCat};
use crate::monads::{psi_n, power_components, ApplyOpts, Carrier, MonadSpec, Val};
use crate::report::{CheckReport, LawLine, Mode, Verdict};
use crate::sample::Rng;
use crate::{Error, Result};

/// An element of some `O_n`. Which variants may appear depends on the operad.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OpElem {
    /// The unique element of a terminal operad.
    Unit,
    /// A constant of the exception operad.
    Tag(u32),
    /// A monoid element (writer operad, unary part of others).
    Scal(Scalar),
    /// A coefficient row (monoid-action, full-support families).
    Row(Vec<Scalar>),
    /// A word: a map into the arity (operads of monoid words).
    Word(FinFn),
    /// A canonical class of an extension: inner element plus a map out of
    /// its arity.
    Ext(Box<OpElem>, FinFn),
    /// An element of `S n` for an operad restricted from a monad `S`.
    MElem(Box<Val>),
    /// A tabulated function `X^n -> T X` (Kleisli endomorphism operad),
    /// row-major over the lexicographic tuples of the carrier.
    Table(Vec<Val>),
}

impl fmt::Display for OpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpElem::Unit => write!(f, "*"),
            OpElem::Tag(c) => write!(f, "#{c}"),
            OpElem::Scal(s) => write!(f, "{s}"),
            OpElem::Row(r) => {
                write!(f, "(")?;
                for (i, s) in r.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
            OpElem::Word(w) => write!(f, "w{w}"),
            OpElem::Ext(p, al) => write!(f, "[{p}, {al}]"),
            OpElem::MElem(v) => write!(f, "{v}"),
            OpElem::Table(t) => {
                write!(f, "tab[")?;
                for (i, v) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl Serialize for OpElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The elements of one arity, with the enumeration's completeness flag.
#[derive(Clone, Debug)]
pub struct ElemSet {
    pub elems: Vec<OpElem>,
    pub exhaustive: bool,
}

#[derive(Clone)]
enum OperadKind {
    Terminal,
    ExceptionOps(usize),
    WriterOps(Arc<Monoid>),
    MonAction(Arc<Monoid>),
    Mon0Action { p: Arc<MonoidWithZero>, pad_with_unit: bool },
    /// Rows of nonzero coefficients over `Fsurj`; `affine` adds the mass-one
    /// constraint (the distribution operad). `denom` bounds the denominators
    /// enumerated for rational coefficients.
    FullSupport { sr: Arc<Semiring>, affine: bool, denom: i64 },
    /// Words in a verbal category: `O_n` holds the maps `n' -> n` with
    /// `min_len <= n' <= inner_bound`. Substitution is the `star` operation.
    MonoidWords { min_len: usize, inner_bound: usize },
    /// The operadicity non-uniqueness witness: `O_0` empty, `O_1` a monoid,
    /// all higher arities singletons.
    NonUniq(Arc<Monoid>),
    Restrict(Box<OperadSpec>),
    Extend(Box<OperadSpec>),
    /// The operad underlying a monad, restricted to finite ordinals.
    FromMonad { s: Arc<MonadSpec>, opts: ApplyOpts },
    /// The endomorphism operad of a carrier in the Kleisli category of `t`.
    KleisliEnd { t: Arc<MonadSpec>, x: Carrier, tx: Carrier },
}

/// A (possibly arity-truncated, possibly sampled) operad over a verbal
/// category. Element sets and extension canonical forms are memoized; clones
/// share the memo.
#[derive(Clone)]
pub struct OperadSpec {
    pub name: String,
    pub w: VerbalCat,
    pub amax: usize,
    kind: OperadKind,
    elems_cache: Arc<std::sync::Mutex<std::collections::HashMap<usize, ElemSet>>>,
    ext_cache: Arc<std::sync::Mutex<std::collections::HashMap<(OpElem, FinFn), OpElem>>>,
}

fn mk_operad(name: String, w: VerbalCat, amax: usize, kind: OperadKind) -> OperadSpec {
    OperadSpec {
        name,
        w,
        amax,
        kind,
        elems_cache: Arc::new(std::sync::Mutex::new(std::collections::HashMap::new())),
        ext_cache: Arc::new(std::sync::Mutex::new(std::collections::HashMap::new())),
    }
}

impl fmt::Debug for OperadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperadSpec({} over {})", self.name, self.w)
    }
}

pub fn terminal_operad(w: VerbalCat, amax: usize) -> OperadSpec {
    mk_operad(format!("terminal:{w}"), w, amax, OperadKind::Terminal)
}

/// `O_0 = C`, `O_1 = {ido}`, nothing above.
pub fn exception_operad(k: usize, amax: usize) -> OperadSpec {
    mk_operad(format!("exception:{k}"), VerbalCat::Fid, amax, OperadKind::ExceptionOps(k))
}

/// `O_1 = M`, nothing else.
pub fn writer_operad(m: Monoid, amax: usize) -> OperadSpec {
    mk_operad(format!("writer:{}", m.name), VerbalCat::Fid, amax, OperadKind::WriterOps(Arc::new(m)))
}

/// `O_n = M^n` with componentwise multiplication, over bijections.
pub fn monoid_action_operad(m: Monoid, amax: usize) -> OperadSpec {
    mk_operad(format!("monoid-action:{}", m.name), VerbalCat::Fbij, amax, OperadKind::MonAction(Arc::new(m)))
}

/// `O_n = P^n` over injections, padding with the zero of `P`.
pub fn monoid0_action_operad(p: MonoidWithZero, amax: usize) -> OperadSpec {
    mk_operad(format!("monoid0-action:{}", p.monoid.name), VerbalCat::Finj, amax, OperadKind::Mon0Action { p: Arc::new(p), pad_with_unit: false })
}

/// The deliberately wrong variant of [`monoid0_action_operad`] that pads with
/// the unit instead of the zero; its action is still functorial but the
/// compatibility axiom fails.
pub fn broken_monoid0_operad(p: MonoidWithZero, amax: usize) -> OperadSpec {
    mk_operad(format!("broken-monoid0-action:{}", p.monoid.name), VerbalCat::Finj, amax, OperadKind::Mon0Action { p: Arc::new(p), pad_with_unit: true })
}

/// Full-support rows over a semiring whose nonzero elements are closed under
/// addition and multiplication, over surjections.
pub fn full_support_operad(sr: Semiring, affine: bool, denom: i64, amax: usize) -> OperadSpec {
    let tag = if affine { "distribution" } else { "full-support" };
    mk_operad(format!("{tag}:{}", sr.name), VerbalCat::Fsurj, amax, OperadKind::FullSupport { sr: Arc::new(sr), affine, denom })
}

/// The distribution operad: full-support probability rows over the
/// nonnegative rationals.
pub fn distribution_operad(denom: i64, amax: usize) -> OperadSpec {
    full_support_operad(crate::algebra::qnonneg_semiring(), true, denom, amax)
}

/// The operad of monoid words over `w`: substitution is `star`.
pub fn monoid_operad(w: VerbalCat, inner_bound: usize, amax: usize) -> OperadSpec {
    mk_operad(format!("monoid:{w}"), w, amax, OperadKind::MonoidWords { min_len: 0, inner_bound })
}

/// Nonempty monoid words: the operad for semigroups over `w`.
pub fn semigroup_operad(w: VerbalCat, inner_bound: usize, amax: usize) -> OperadSpec {
    mk_operad(format!("semigroup:{w}"), w, amax, OperadKind::MonoidWords { min_len: 1, inner_bound })
}

/// The non-uniqueness witness over injections: distinct monoids give
/// literally different operads inducing the same monad.
pub fn nonuniqueness_operad(m: Monoid, amax: usize) -> OperadSpec {
    mk_operad(format!("nonuniq:{}", m.name), VerbalCat::Finj, amax, OperadKind::NonUniq(Arc::new(m)))
}

/// Restrict an operad along an inclusion of verbal categories. The data is
/// unchanged; only the action's domain narrows.
pub fn restrict(o: &OperadSpec, w: VerbalCat) -> Result<OperadSpec> {
    if !w.subcategory_of(&o.w) {
        return Err(Error::Refusal(format!("{w} is not a subcategory of {}", o.w)));
    }
    // empirical cross-check of the inclusion at small arities
    for m in 0..=3usize {
        for n in 0..=3usize {
            for f in enumerate(w, m, n, 3)? {
                if !o.w.member(&f) {
                    return Err(Error::Refusal(format!(
                        "inclusion violated: {f} is in {w} but not in {}",
                        o.w
                    )));
                }
            }
        }
    }
    Ok(mk_operad(
        format!("restrict:{}:{w}", o.name),
        w,
        o.amax,
        OperadKind::Restrict(Box::new(o.clone())),
    ))
}

/// Extend an operad along an inclusion into a larger verbal category, as
/// canonical classes of pairs (inner element, map out of its arity).
pub fn extend(o: &OperadSpec, w_big: VerbalCat) -> Result<OperadSpec> {
    if !o.w.subcategory_of(&w_big) {
        return Err(Error::Refusal(format!("{} is not a subcategory of {w_big}", o.w)));
    }
    Ok(mk_operad(
        format!("extend:{}:{w_big}", o.name),
        w_big,
        o.amax,
        OperadKind::Extend(Box::new(o.clone())),
    ))
}

/// The operad underlying a monad: `O_n = S n`, with the monad's functorial
/// action and a substitution computed through the multiplication.
pub fn monad_to_operad(s: &MonadSpec, w: VerbalCat, amax: usize) -> OperadSpec {
    let opts = ApplyOpts { samples: 40, seed: 1013, ..Default::default() };
    mk_operad(
        format!("from-monad:{}:{w}", s.name),
        w,
        amax,
        OperadKind::FromMonad { s: Arc::new(s.clone()), opts },
    )
}

/// The endomorphism operad of `x` in the Kleisli category of `t`:
/// `O_n = Set(X^n, T X)`. Requires `t` to be commutative and `w`-commutative;
/// pass `check_preconditions = false` to ship the negative test.
pub fn kleisli_end_operad(
    t: &MonadSpec,
    x: &Carrier,
    w: VerbalCat,
    amax: usize,
    check_preconditions: bool,
) -> Result<OperadSpec> {
    if check_preconditions {
        let pre = crate::wcomm::kleisli_preconditions(t, x, w, amax.min(3));
        if let Some(reason) = pre {
            return Err(Error::Refusal(format!(
                "endomorphism operad needs a commutative, {w}-commutative monad: {reason}"
            )));
        }
    }
    let tx = t.apply(x, &ApplyOpts { seed: 509, ..Default::default() });
    Ok(mk_operad(format!("endo:{}:{}", t.name, x.name), w, amax, OperadKind::KleisliEnd { t: Arc::new(t.clone()), x: x.clone(), tx }))
}

/// All tuples of carrier elements of the given length, lexicographic in the
/// carrier's element order.
pub fn carrier_tuples(x: &Carrier, n: usize) -> Vec<Vec<Val>> {
    let mut out = Vec::new();
    if x.is_empty() && n > 0 {
        return out;
    }
    let mut idx = vec![0usize; n];
    loop {
        out.push(idx.iter().map(|&i| x.elems[i].clone()).collect());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < x.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

fn tuple_index(x: &Carrier, tup: &[Val]) -> usize {
    let mut acc = 0usize;
    for v in tup {
        let i = x.elems.iter().position(|e| e == v).expect("tuple entry in carrier");
        acc = acc * x.len() + i;
    }
    acc
}

impl OperadSpec {
    pub fn ido(&self) -> OpElem {
        match &self.kind {
            OperadKind::Terminal => OpElem::Unit,
            OperadKind::ExceptionOps(_) => OpElem::Unit,
            OperadKind::WriterOps(m) => OpElem::Scal(m.unit.clone()),
            OperadKind::MonAction(m) => OpElem::Row(vec![m.unit.clone()]),
            OperadKind::Mon0Action { p, .. } => OpElem::Row(vec![p.monoid.unit.clone()]),
            OperadKind::FullSupport { sr, .. } => OpElem::Row(vec![sr.one.clone()]),
            OperadKind::MonoidWords { .. } => OpElem::Word(FinFn::identity(1)),
            OperadKind::NonUniq(m) => OpElem::Scal(m.unit.clone()),
            OperadKind::Restrict(inner) => inner.ido(),
            OperadKind::Extend(inner) => {
                self.canon_ext(1, &inner.ido(), &FinFn::identity(1)).expect("identity in bound")
            }
            OperadKind::FromMonad { s, .. } => OpElem::MElem(Box::new(s.unit(&Val::atom(0)))),
            OperadKind::KleisliEnd { t, x, .. } => {
                OpElem::Table(x.elems.iter().map(|v| t.unit(v)).collect())
            }
        }
    }

    /// The elements of `O_n`. Refuses above the arity bound.
    pub fn elems(&self, n: usize) -> Result<ElemSet> {
        if n > self.amax {
            return Err(Error::BoundExceeded { bound: self.amax, what: format!("{}_{}", self.name, n) });
        }
        if let Some(hit) = self.elems_cache.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let computed = self.elems_uncached(n)?;
        self.elems_cache.lock().unwrap().insert(n, computed.clone());
        Ok(computed)
    }

    fn elems_uncached(&self, n: usize) -> Result<ElemSet> {
        Ok(match &self.kind {
            OperadKind::Terminal => ElemSet { elems: vec![OpElem::Unit], exhaustive: true },
            OperadKind::ExceptionOps(k) => match n {
                0 => ElemSet {
                    elems: (0..*k).map(|c| OpElem::Tag(c as u32)).collect(),
                    exhaustive: true,
                },
                1 => ElemSet { elems: vec![OpElem::Unit], exhaustive: true },
                _ => ElemSet { elems: vec![], exhaustive: true },
            },
            OperadKind::WriterOps(m) => match n {
                1 => ElemSet {
                    elems: m.sample_elems().into_iter().map(OpElem::Scal).collect(),
                    exhaustive: m.is_finite(),
                },
                _ => ElemSet { elems: vec![], exhaustive: true },
            },
            OperadKind::MonAction(m) => rows_over(&m.sample_elems(), n, m.is_finite()),
            OperadKind::Mon0Action { p, .. } => {
                rows_over(&p.monoid.sample_elems(), n, p.monoid.is_finite())
            }
            OperadKind::FullSupport { sr, affine, denom } => {
                full_support_rows(sr, *affine, *denom, n)
            }
            OperadKind::MonoidWords { min_len, inner_bound } => {
                let mut elems = Vec::new();
                for len in *min_len..=*inner_bound {
                    for f in enumerate(self.w, len, n, (*inner_bound).max(n))? {
                        elems.push(OpElem::Word(f));
                    }
                }
                ElemSet { elems, exhaustive: true }
            }
            OperadKind::NonUniq(m) => match n {
                0 => ElemSet { elems: vec![], exhaustive: true },
                1 => ElemSet {
                    elems: m.sample_elems().into_iter().map(OpElem::Scal).collect(),
                    exhaustive: m.is_finite(),
                },
                _ => ElemSet { elems: vec![OpElem::Unit], exhaustive: true },
            },
            OperadKind::Restrict(inner) => inner.elems(n)?,
            OperadKind::Extend(inner) => {
                let mut elems = Vec::new();
                let mut exhaustive = true;
                for m in 0..=self.amax {
                    let es = inner.elems(m)?;
                    exhaustive &= es.exhaustive;
                    for al in enumerate(self.w, m, n, self.amax)? {
                        for p in &es.elems {
                            elems.push(self.canon_ext(m, p, &al)?);
                        }
                    }
                }
                elems.sort();
                elems.dedup();
                ElemSet { elems, exhaustive }
            }
            OperadKind::FromMonad { s, opts } => {
                let o = ApplyOpts { seed: opts.seed.wrapping_add(n as u64), ..*opts };
                let sn = s.apply(&Carrier::ordinal(n), &o);
                ElemSet {
                    elems: sn.elems.into_iter().map(|v| OpElem::MElem(Box::new(v))).collect(),
                    exhaustive: sn.exhaustive,
                }
            }
            OperadKind::KleisliEnd { t: _, x, tx } => {
                let slots = x.len().checked_pow(n as u32).unwrap_or(usize::MAX);
                let total = (tx.len() as u128).checked_pow(slots as u32);
                match total {
                    Some(tot) if tot <= 4096 => {
                        let mut elems = Vec::new();
                        let mut idx = vec![0usize; slots];
                        loop {
                            elems.push(OpElem::Table(
                                idx.iter().map(|&i| tx.elems[i].clone()).collect(),
                            ));
                            let mut i = slots;
                            loop {
                                if i == 0 {
                                    return Ok(ElemSet { elems, exhaustive: tx.exhaustive });
                                }
                                i -= 1;
                                idx[i] += 1;
                                if idx[i] < tx.len() {
                                    break;
                                }
                                idx[i] = 0;
                            }
                        }
                    }
                    _ => {
                        let mut rng = Rng::seeded(977 + n as u64);
                        let elems = (0..40)
                            .map(|_| {
                                OpElem::Table(
                                    (0..slots).map(|_| rng.choose(&tx.elems).clone()).collect(),
                                )
                            })
                            .collect();
                        ElemSet { elems, exhaustive: false }
                    }
                }
            }
        })
    }

    /// Functorial action along `alpha` in the operad's verbal category:
    /// `O_m -> O_n` for `alpha : m -> n`.
    pub fn act(&self, alpha: &FinFn, p: &OpElem) -> Result<OpElem> {
        if !self.w.member(alpha) {
            return Err(Error::InvalidValue(format!("{alpha} is not in {}", self.w)));
        }
        let n = alpha.cod();
        if n > self.amax {
            return Err(Error::BoundExceeded { bound: self.amax, what: format!("act along {alpha}") });
        }
        Ok(match (&self.kind, p) {
            (OperadKind::Terminal, OpElem::Unit) => OpElem::Unit,
            (OperadKind::ExceptionOps(_), p) => p.clone(), // only identities in Fid
            (OperadKind::WriterOps(_), p) => p.clone(),
            (OperadKind::MonAction(_), OpElem::Row(r)) => {
                let mut out = vec![Scalar::Int(0); n];
                for (i, s) in r.iter().enumerate() {
                    out[alpha.apply(i)] = s.clone();
                }
                OpElem::Row(out)
            }
            (OperadKind::Mon0Action { p: mz, pad_with_unit }, OpElem::Row(r)) => {
                let pad = if *pad_with_unit { mz.monoid.unit.clone() } else { mz.zero.clone() };
                let mut out = vec![pad; n];
                for (i, s) in r.iter().enumerate() {
                    out[alpha.apply(i)] = s.clone();
                }
                OpElem::Row(out)
            }
            (OperadKind::FullSupport { sr, .. }, OpElem::Row(r)) => {
                let mut out = vec![sr.zero.clone(); n];
                for (i, s) in r.iter().enumerate() {
                    let j = alpha.apply(i);
                    out[j] = sr.add(&out[j], s);
                }
                OpElem::Row(out)
            }
            (OperadKind::MonoidWords { .. }, OpElem::Word(f)) => OpElem::Word(compose(alpha, f)?),
            (OperadKind::NonUniq(_), p) => {
                if n == 1 {
                    p.clone() // alpha is the identity on 1
                } else if alpha.dom() == 0 {
                    return Err(Error::InvalidValue("no elements of arity 0".into()));
                } else {
                    OpElem::Unit
                }
            }
            (OperadKind::Restrict(inner), p) => inner.act(alpha, p)?,
            (OperadKind::Extend(_), OpElem::Ext(q, gamma)) => {
                self.canon_ext(gamma.dom(), q, &compose(alpha, gamma)?)?
            }
            (OperadKind::FromMonad { s, .. }, OpElem::MElem(v)) => {
                let relabel = |val: &Val| match val {
                    Val::Atom(i) => Val::atom(alpha.apply(*i as usize)),
                    other => panic!("ordinal carrier holds atoms, got {other}"),
                };
                OpElem::MElem(Box::new(s.map(&mut { relabel }, v)))
            }
            (OperadKind::KleisliEnd { x, .. }, OpElem::Table(tab)) => {
                let tuples = carrier_tuples(x, n);
                let mut out = Vec::with_capacity(tuples.len());
                for tup in tuples {
                    let pre: Vec<Val> =
                        (0..alpha.dom()).map(|i| tup[alpha.apply(i)].clone()).collect();
                    out.push(tab[tuple_index(x, &pre)].clone());
                }
                OpElem::Table(out)
            }
            (_, p) => {
                return Err(Error::InvalidValue(format!("{}: act on malformed element {p}", self.name)))
            }
        })
    }

    /// Substitution: `q` of arity `args.len()` composed with `args[i]` of the
    /// recorded arities. The result has arity `sum of arities`.
    pub fn subst(&self, q: &OpElem, args: &[(usize, OpElem)]) -> Result<OpElem> {
        let n = args.len();
        let m_total: usize = args.iter().map(|(m, _)| m).sum();
        if m_total > self.amax {
            return Err(Error::BoundExceeded {
                bound: self.amax,
                what: format!("subst result arity {m_total} in {}", self.name),
            });
        }
        Ok(match (&self.kind, q) {
            (OperadKind::Terminal, OpElem::Unit) => OpElem::Unit,
            (OperadKind::ExceptionOps(_), q) => match n {
                0 => q.clone(),
                1 => args[0].1.clone(),
                _ => {
                    return Err(Error::InvalidValue(format!(
                        "exception operad has no elements of arity {n}"
                    )))
                }
            },
            (OperadKind::WriterOps(m), OpElem::Scal(a)) => match args {
                [(1, OpElem::Scal(b))] => OpElem::Scal(m.op(a, b)),
                _ => return Err(Error::InvalidValue("writer operad subst shape".into())),
            },
            (OperadKind::MonAction(m), OpElem::Row(qs)) => {
                let mut out = Vec::with_capacity(m_total);
                for (i, (_, p)) in args.iter().enumerate() {
                    match p {
                        OpElem::Row(ps) => {
                            out.extend(ps.iter().map(|x| m.op(&qs[i], x)));
                        }
                        _ => return Err(Error::InvalidValue("row expected".into())),
                    }
                }
                OpElem::Row(out)
            }
            (OperadKind::Mon0Action { p: mz, .. }, OpElem::Row(qs)) => {
                let mut out = Vec::with_capacity(m_total);
                for (i, (_, p)) in args.iter().enumerate() {
                    match p {
                        OpElem::Row(ps) => {
                            out.extend(ps.iter().map(|x| mz.monoid.op(&qs[i], x)));
                        }
                        _ => return Err(Error::InvalidValue("row expected".into())),
                    }
                }
                OpElem::Row(out)
            }
            (OperadKind::FullSupport { sr, .. }, OpElem::Row(qs)) => {
                let mut out = Vec::with_capacity(m_total);
                for (i, (_, p)) in args.iter().enumerate() {
                    match p {
                        OpElem::Row(ps) => {
                            out.extend(ps.iter().map(|x| sr.mul(&qs[i], x)));
                        }
                        _ => return Err(Error::InvalidValue("row expected".into())),
                    }
                }
                OpElem::Row(out)
            }
            (OperadKind::MonoidWords { inner_bound, .. }, OpElem::Word(beta)) => {
                let alphas: Vec<FinFn> = args
                    .iter()
                    .map(|(_, p)| match p {
                        OpElem::Word(f) => Ok(f.clone()),
                        _ => Err(Error::InvalidValue("word expected".into())),
                    })
                    .collect::<Result<_>>()?;
                let composite = star(beta, &alphas)?;
                if composite.dom() > *inner_bound {
                    return Err(Error::Refusal(format!(
                        "word length {} of {composite} exceeds the inner bound {inner_bound}",
                        composite.dom()
                    )));
                }
                OpElem::Word(composite)
            }
            (OperadKind::NonUniq(m), q) => {
                if m_total >= 2 {
                    OpElem::Unit
                } else if m_total == 1 {
                    // only shape: unary into unary
                    match (q, args) {
                        (OpElem::Scal(a), [(1, OpElem::Scal(b))]) => OpElem::Scal(m.op(a, b)),
                        _ => {
                            return Err(Error::InvalidValue(
                                "non-uniqueness operad subst shape".into(),
                            ))
                        }
                    }
                } else {
                    return Err(Error::InvalidValue("no arity-0 elements".into()));
                }
            }
            (OperadKind::Restrict(inner), q) => inner.subst(q, args)?,
            (OperadKind::Extend(inner), OpElem::Ext(qi, beta)) => {
                // inner substitution reindexed along beta, combined with star
                let alphas: Vec<FinFn> = args
                    .iter()
                    .map(|(m, p)| match p {
                        OpElem::Ext(_, al) => {
                            debug_assert_eq!(al.cod(), *m);
                            Ok(al.clone())
                        }
                        _ => Err(Error::InvalidValue("extension element expected".into())),
                    })
                    .collect::<Result<_>>()?;
                let inner_args: Vec<(usize, OpElem)> = (0..beta.dom())
                    .map(|i| {
                        let (_, p) = &args[beta.apply(i)];
                        match p {
                            OpElem::Ext(pi, al) => Ok((al.dom(), (**pi).clone())),
                            _ => unreachable!(),
                        }
                    })
                    .collect::<Result<_>>()?;
                let q_new = inner.subst(qi, &inner_args)?;
                let map_new = star(beta, &alphas)?;
                self.canon_ext(map_new.dom(), &q_new, &map_new)?
            }
            (OperadKind::FromMonad { s, .. }, OpElem::MElem(qv)) => {
                let m_vec: Vec<usize> = args.iter().map(|(m, _)| *m).collect();
                // embed each argument into S m along the chosen coprojection
                let mut embedded = Vec::with_capacity(n);
                for (i, (_, p)) in args.iter().enumerate() {
                    let iota = coproj(&m_vec, i)?;
                    match p {
                        OpElem::MElem(pv) => {
                            let shifted = s.map(
                                &mut |val: &Val| match val {
                                    Val::Atom(j) => Val::atom(iota.apply(*j as usize)),
                                    other => panic!("ordinal carrier holds atoms, got {other}"),
                                },
                                pv,
                            );
                            embedded.push(shifted);
                        }
                        _ => return Err(Error::InvalidValue("monad element expected".into())),
                    }
                }
                // S(p̄)(q) then multiplication
                let stacked = s.map(
                    &mut |val: &Val| match val {
                        Val::Atom(i) => embedded[*i as usize].clone(),
                        other => panic!("ordinal carrier holds atoms, got {other}"),
                    },
                    qv,
                );
                OpElem::MElem(Box::new(s.join(&stacked)?))
            }
            (OperadKind::KleisliEnd { t, x, .. }, OpElem::Table(g)) => {
                let tuples = carrier_tuples(x, m_total);
                let mut out = Vec::with_capacity(tuples.len());
                for tup in tuples {
                    // split the input tuple into blocks and feed each argument
                    let mut offset = 0usize;
                    let mut ts = Vec::with_capacity(n);
                    for (m_i, p) in args {
                        let block = &tup[offset..offset + m_i];
                        offset += m_i;
                        match p {
                            OpElem::Table(tab) => {
                                ts.push(tab[tuple_index(x, block)].clone());
                            }
                            _ => return Err(Error::InvalidValue("table expected".into())),
                        }
                    }
                    let combined = psi_n(t, &ts)?;
                    let applied = t.map(
                        &mut |v: &Val| {
                            let parts = power_components(v, n);
                            g[tuple_index(x, &parts)].clone()
                        },
                        &combined,
                    );
                    out.push(t.join(&applied)?);
                }
                OpElem::Table(out)
            }
            (_, q) => {
                return Err(Error::InvalidValue(format!(
                    "{}: subst on malformed element {q}",
                    self.name
                )))
            }
        })
    }

    /// Positions whose entries are droppable along an injection, together
    /// with the element left after dropping them all. Available for the
    /// multiset-like operads, where a position is droppable exactly when its
    /// coefficient is the zero.
    pub fn zero_drop(&self, n: usize, p: &OpElem) -> Option<(Vec<usize>, OpElem)> {
        match (&self.kind, p) {
            (OperadKind::Mon0Action { p: mz, pad_with_unit: false }, OpElem::Row(r)) => {
                let kept: Vec<usize> =
                    (0..n).filter(|&i| r[i] != mz.zero).collect();
                let row = kept.iter().map(|&i| r[i].clone()).collect();
                Some((kept, OpElem::Row(row)))
            }
            (OperadKind::FromMonad { s, .. }, OpElem::MElem(v)) => {
                let sr = s.semiring()?;
                match &**v {
                    Val::Weighted(ps) => {
                        let mut kept = Vec::new();
                        for (val, c) in ps {
                            if !sr.is_zero(c) {
                                match val {
                                    Val::Atom(i) => kept.push(*i as usize),
                                    _ => return None,
                                }
                            }
                        }
                        kept.sort_unstable();
                        // relabel the kept atoms consecutively
                        let reindex: std::collections::HashMap<usize, usize> =
                            kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
                        let dropped = Val::Weighted(
                            match &**v {
                                Val::Weighted(ps) => ps
                                    .iter()
                                    .filter(|(_, c)| !sr.is_zero(c))
                                    .map(|(val, c)| match val {
                                        Val::Atom(i) => {
                                            (Val::atom(reindex[&(*i as usize)]), c.clone())
                                        }
                                        _ => unreachable!(),
                                    })
                                    .collect(),
                                _ => unreachable!(),
                            },
                        );
                        Some((kept, OpElem::MElem(Box::new(dropped))))
                    }
                    _ => None,
                }
            }
            (OperadKind::Restrict(inner), p) => inner.zero_drop(n, p),
            _ => None,
        }
    }

    /// Canonicalize an extension pair by breadth-first closure of the
    /// relation `(act(beta) p, alpha) ~ (p, alpha ∘ beta)` within the bound.
    fn canon_ext(&self, m: usize, p: &OpElem, gamma: &FinFn) -> Result<OpElem> {
        debug_assert_eq!(gamma.dom(), m);
        let key = (p.clone(), gamma.clone());
        if let Some(hit) = self.ext_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let inner = match &self.kind {
            OperadKind::Extend(inner) => inner,
            _ => unreachable!("canon_ext on a non-extension operad"),
        };
        let n_out = gamma.cod();
        let start = (p.clone(), gamma.clone());
        let mut seen = std::collections::BTreeSet::new();
        seen.insert((m, start.clone()));
        let mut queue = vec![(m, start)];
        while let Some((k, (q, g))) = queue.pop() {
            // forward: factor g = a ∘ b with b in the inner category
            for mid in 0..=self.amax {
                for b in enumerate_cached(inner.w, k, mid).iter() {
                    for a in enumerate_cached(self.w, mid, n_out).iter() {
                        if compose(a, b)? == g {
                            let node = (inner.act(b, &q)?, a.clone());
                            if seen.insert((mid, node.clone())) {
                                queue.push((mid, node));
                            }
                        }
                    }
                }
            }
            // backward: preimages of q along the inner action
            for mid in 0..=self.amax {
                let es = inner.elems(mid)?;
                for b in enumerate_cached(inner.w, mid, k).iter() {
                    for cand in &es.elems {
                        if inner.act(b, cand)? == q {
                            let node = (cand.clone(), compose(&g, b)?);
                            if seen.insert((mid, node.clone())) {
                                queue.push((mid, node));
                            }
                        }
                    }
                }
            }
        }
        let (_, (q, g)) = seen.into_iter().next().expect("at least the start node");
        let canonical = OpElem::Ext(Box::new(q), g);
        self.ext_cache.lock().unwrap().insert(key, canonical.clone());
        Ok(canonical)
    }

    /// Inner operad of a change-of-base wrapper, when there is one.
    pub fn inner(&self) -> Option<&OperadSpec> {
        match &self.kind {
            OperadKind::Restrict(i) | OperadKind::Extend(i) => Some(i),
            _ => None,
        }
    }

    /// Embed an inner element into this extension (the unit of change of
    /// base). Only valid on extension operads.
    pub fn ext_of(&self, m: usize, p: &OpElem) -> Result<OpElem> {
        match &self.kind {
            OperadKind::Extend(_) => self.canon_ext(m, p, &FinFn::identity(m)),
            _ => Err(Error::InvalidValue("not an extension operad".into())),
        }
    }

    /// Whether enumerating canonical classes at arities up to `|X|`-many
    /// positions is known to cover the whole induced monad on a carrier of
    /// the given size.
    pub fn truncation_complete(&self, carrier_size: usize) -> bool {
        match &self.kind {
            OperadKind::Terminal => match self.w {
                // classes collapse onto supports
                VerbalCat::Fsurj | VerbalCat::F => carrier_size <= self.amax,
                _ => false,
            },
            OperadKind::ExceptionOps(_) | OperadKind::WriterOps(_) => true, // nothing above arity 1
            OperadKind::FullSupport { .. } => carrier_size <= self.amax,
            OperadKind::Restrict(i) | OperadKind::Extend(i) => {
                // extensions of arity-<=1 operads stay arity-bounded in
                // essential arity
                matches!(
                    i.kind,
                    OperadKind::ExceptionOps(_) | OperadKind::WriterOps(_)
                ) && (self.w == VerbalCat::Fid
                    || self.w == VerbalCat::Fminj
                    || self.w == VerbalCat::Fbij
                    || self.w == VerbalCat::Finj
                    || carrier_size <= self.amax)
            }
            _ => false,
        }
    }
}

fn rows_over(base: &[Scalar], n: usize, exhaustive: bool) -> ElemSet {
    let total = (base.len() as u128).checked_pow(n as u32);
    match total {
        Some(t) if t <= 4096 => {
            let mut elems = Vec::new();
            if base.is_empty() && n > 0 {
                return ElemSet { elems, exhaustive };
            }
            let mut idx = vec![0usize; n];
            loop {
                elems.push(OpElem::Row(idx.iter().map(|&i| base[i].clone()).collect()));
                let mut i = n;
                loop {
                    if i == 0 {
                        return ElemSet { elems, exhaustive };
                    }
                    i -= 1;
                    idx[i] += 1;
                    if idx[i] < base.len() {
                        break;
                    }
                    idx[i] = 0;
                }
            }
        }
        _ => {
            let mut rng = Rng::seeded(31 + n as u64);
            let elems = (0..48)
                .map(|_| OpElem::Row((0..n).map(|_| rng.choose(base).clone()).collect()))
                .collect();
            ElemSet { elems, exhaustive: false }
        }
    }
}

/// Full-support rows: every entry nonzero, and of total mass one in the
/// affine case. For rational coefficients, enumerate numerators over the
/// fixed denominator.
fn full_support_rows(sr: &Semiring, affine: bool, denom: i64, n: usize) -> ElemSet {
    use num_rational::Rational64;
    if sr.name == "bool" {
        // the only nonzero coefficient is 1
        if affine && n == 0 {
            return ElemSet { elems: vec![], exhaustive: true };
        }
        return ElemSet { elems: vec![OpElem::Row(vec![sr.one.clone(); n])], exhaustive: true };
    }
    if sr.name == "qnonneg" && affine {
        // compositions of `denom` into n positive parts, scaled by 1/denom
        if n == 0 {
            return ElemSet { elems: vec![], exhaustive: true };
        }
        let mut elems = Vec::new();
        let mut parts = vec![1i64; n];
        parts[n - 1] = denom - (n as i64 - 1);
        if parts[n - 1] < 1 {
            return ElemSet { elems: vec![], exhaustive: false };
        }
        // enumerate all compositions of denom into n positive parts
        fn rec(remaining: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if slots == 1 {
                if remaining >= 1 {
                    cur.push(remaining);
                    out.push(cur.clone());
                    cur.pop();
                }
                return;
            }
            for k in 1..=(remaining - (slots as i64 - 1)) {
                cur.push(k);
                rec(remaining - k, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut comps = Vec::new();
        rec(denom, n, &mut Vec::new(), &mut comps);
        for comp in comps {
            elems.push(OpElem::Row(
                comp.into_iter().map(|k| Scalar::Rat(Rational64::new(k, denom))).collect(),
            ));
        }
        // exhaustive only relative to the chosen denominator
        return ElemSet { elems, exhaustive: false };
    }
    // generic: rows of nonzero pool coefficients
    let base = sr.nonzero_pool();
    if affine {
        let mut set = rows_over(&base, n, false);
        set.elems.retain(|e| match e {
            OpElem::Row(r) => {
                let total = r.iter().fold(sr.zero.clone(), |acc, c| sr.add(&acc, c));
                total == sr.one
            }
            _ => false,
        });
        set
    } else {
        rows_over(&base, n, false)
    }
}

/// Per-shape element sampling budget for the axiom checker.
const SHAPE_BUDGET: usize = 24;

fn pick_elems<'a>(es: &'a ElemSet, rng: &mut Rng, budget: usize) -> Vec<&'a OpElem> {
    if es.elems.len() <= budget {
        es.elems.iter().collect()
    } else {
        (0..budget).map(|_| &es.elems[rng.below(es.elems.len())]).collect()
    }
}

/// Verify functoriality of the action, the substitution/action
/// compatibility, the unit laws, and the associativity law, for all shapes
/// with arities at most `bound`.
pub fn check_operad(o: &OperadSpec, bound: usize, seed: u64) -> Result<CheckReport> {
    let bound = bound.min(o.amax);
    let mut rng = Rng::seeded(seed);
    let mut exhaustive = true;
    let mut untested = 0usize;

    let mut elem_sets: Vec<ElemSet> = Vec::new();
    for n in 0..=bound {
        let es = o.elems(n)?;
        exhaustive &= es.exhaustive;
        elem_sets.push(es);
    }

    let mut lines: Vec<LawLine> = Vec::new();

    // functoriality: identities
    let mut checked = 0usize;
    let mut witness = None;
    'fid: for (n, es) in elem_sets.iter().enumerate() {
        let id = FinFn::identity(n);
        for p in &es.elems {
            checked += 1;
            let q = o.act(&id, p)?;
            if q != *p {
                witness = Some(format!("act(id_{n}, {p}) = {q}"));
                break 'fid;
            }
        }
    }
    lines.push(law_line("operad.act_id", checked, witness));

    // functoriality: composition
    let mut checked = 0usize;
    let mut witness = None;
    'fcomp: for m in 0..=bound {
        for k in 0..=bound {
            for n in 0..=bound {
                for al in enumerate(o.w, m, k, bound)? {
                    for be in enumerate(o.w, k, n, bound)? {
                        let both = compose(&be, &al)?;
                        for p in pick_elems(&elem_sets[m], &mut rng, SHAPE_BUDGET) {
                            checked += 1;
                            let two_step = o.act(&be, &o.act(&al, p)?)?;
                            let one_step = o.act(&both, p)?;
                            if two_step != one_step {
                                witness = Some(format!(
                                    "act({be}, act({al}, {p})) = {two_step} but act({both}, {p}) = {one_step}"
                                ));
                                break 'fcomp;
                            }
                        }
                    }
                }
            }
        }
    }
    lines.push(law_line("operad.act_compose", checked, witness));

    // compatibility of subst with the action
    let mut checked = 0usize;
    let mut witness = None;
    'compat: for n_p in 0..=bound {
        for n in 0..=bound {
            for beta in enumerate(o.w, n_p, n, bound)? {
                // choose arities m'_i -> m_i and morphisms alpha_i for i < n
                let shapes = alpha_shapes(o.w, n, bound)?;
                for alphas in shapes {
                    let m_in: Vec<usize> = alphas.iter().map(|a| a.dom()).collect();
                    let m_out: Vec<usize> = alphas.iter().map(|a| a.cod()).collect();
                    let m_prime: usize = (0..n_p).map(|i| m_in[beta.apply(i)]).sum();
                    let m: usize = m_out.iter().sum();
                    if m_prime > o.amax || m > o.amax {
                        untested += 1;
                        continue;
                    }
                    let glue = star(&beta, &alphas)?;
                    // elements: q in O_{n_p}, p_i in O_{m_in[i]}
                    let qs = pick_elems(&elem_sets[n_p], &mut rng, SHAPE_BUDGET.min(6));
                    let mut arg_choices: Vec<Vec<&OpElem>> = Vec::new();
                    for &mi in &m_in {
                        arg_choices.push(pick_elems(&elem_sets[mi], &mut rng, 3));
                    }
                    for q in qs {
                        for args in cartesian(&arg_choices) {
                            checked += 1;
                            // top path: reindex args along beta, subst, then act
                            let top_args: Vec<(usize, OpElem)> = (0..n_p)
                                .map(|i| {
                                    let j = beta.apply(i);
                                    (m_in[j], args[j].clone())
                                })
                                .collect();
                            let top = match o.subst(q, &top_args) {
                                Ok(t) => o.act(&glue, &t)?,
                                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                                    untested += 1;
                                    continue;
                                }
                                Err(e) => return Err(e),
                            };
                            // bottom path: act on everything, then subst
                            let q_acted = o.act(&beta, q)?;
                            let bot_args: Vec<(usize, OpElem)> = (0..n)
                                .map(|i| -> Result<(usize, OpElem)> {
                                    Ok((m_out[i], o.act(&alphas[i], args[i])?))
                                })
                                .collect::<Result<_>>()?;
                            let bot = match o.subst(&q_acted, &bot_args) {
                                Ok(b) => b,
                                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                                    untested += 1;
                                    continue;
                                }
                                Err(e) => return Err(e),
                            };
                            if top != bot {
                                witness = Some(format!(
                                    "beta={beta}, alphas={alphas:?}, q={q}, args={args:?}: top {top} != bottom {bot}"
                                ));
                                break 'compat;
                            }
                        }
                    }
                }
            }
        }
    }
    lines.push(law_line("operad.compat", checked, witness));

    // unit laws
    let ido = o.ido();
    let mut checked = 0usize;
    let mut witness = None;
    'unit: for (m, es) in elem_sets.iter().enumerate() {
        for p in &es.elems {
            checked += 1;
            let left = match o.subst(&ido, &[(m, p.clone())]) {
                Ok(v) => v,
                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                    untested += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if left != *p {
                witness = Some(format!("subst(ido, {p}) = {left}"));
                break 'unit;
            }
            let ids: Vec<(usize, OpElem)> = (0..m).map(|_| (1, ido.clone())).collect();
            let right = match o.subst(p, &ids) {
                Ok(v) => v,
                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                    untested += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if right != *p {
                witness = Some(format!("subst({p}, ido^0..{m}) = {right}"));
                break 'unit;
            }
        }
    }
    lines.push(law_line("operad.unit", checked, witness));

    // associativity
    let mut checked = 0usize;
    let mut witness = None;
    'assoc: for n in 0..=bound {
        for m_vec in compositions_upto(n, bound) {
            let m: usize = m_vec.iter().sum();
            if m > o.amax {
                untested += 1;
                continue;
            }
            for l_vecs in nested_compositions(&m_vec, bound) {
                let total: usize = l_vecs.iter().flatten().sum();
                if total > o.amax {
                    untested += 1;
                    continue;
                }
                let rs = pick_elems(&elem_sets[n], &mut rng, 4);
                let mut q_choices: Vec<Vec<&OpElem>> = Vec::new();
                for &mj in &m_vec {
                    q_choices.push(pick_elems(&elem_sets[mj], &mut rng, 3));
                }
                let mut p_choices: Vec<Vec<&OpElem>> = Vec::new();
                for lv in l_vecs.iter().flatten() {
                    p_choices.push(pick_elems(&elem_sets[*lv], &mut rng, 2));
                }
                for r in rs {
                    for q_sel in cartesian(&q_choices) {
                        for p_sel in cartesian(&p_choices) {
                            checked += 1;
                            // left: substitute p into q first
                            let mut inner_results: Vec<(usize, OpElem)> = Vec::new();
                            let mut flat_idx = 0usize;
                            let mut refused = false;
                            for (j, &mj) in m_vec.iter().enumerate() {
                                let l_slice = &l_vecs[j];
                                let args: Vec<(usize, OpElem)> = (0..mj)
                                    .map(|i| (l_slice[i], p_sel[flat_idx + i].clone()))
                                    .collect();
                                flat_idx += mj;
                                match o.subst(&q_sel[j], &args) {
                                    Ok(v) => {
                                        inner_results.push((l_slice.iter().sum(), v));
                                    }
                                    Err(Error::Refusal(_))
                                    | Err(Error::BoundExceeded { .. }) => {
                                        refused = true;
                                        break;
                                    }
                                    Err(e) => return Err(e),
                                }
                            }
                            if refused {
                                untested += 1;
                                continue;
                            }
                            let lhs = match o.subst(r, &inner_results) {
                                Ok(v) => v,
                                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                                    untested += 1;
                                    continue;
                                }
                                Err(e) => return Err(e),
                            };
                            // right: substitute q into r first
                            let q_args: Vec<(usize, OpElem)> = m_vec
                                .iter()
                                .zip(q_sel.iter())
                                .map(|(&mj, q)| (mj, (*q).clone()))
                                .collect();
                            let rq = match o.subst(r, &q_args) {
                                Ok(v) => v,
                                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                                    untested += 1;
                                    continue;
                                }
                                Err(e) => return Err(e),
                            };
                            let flat_args: Vec<(usize, OpElem)> = l_vecs
                                .iter()
                                .flatten()
                                .zip(p_sel.iter())
                                .map(|(&l, p)| (l, (*p).clone()))
                                .collect();
                            let rhs = match o.subst(&rq, &flat_args) {
                                Ok(v) => v,
                                Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }) => {
                                    untested += 1;
                                    continue;
                                }
                                Err(e) => return Err(e),
                            };
                            if lhs != rhs {
                                witness = Some(format!(
                                    "r={r}, q={q_sel:?}, p={p_sel:?}, m⃗={m_vec:?}, ℓ⃗={l_vecs:?}: {lhs} != {rhs}"
                                ));
                                break 'assoc;
                            }
                        }
                    }
                }
            }
        }
    }
    lines.push(law_line("operad.assoc", checked, witness));

    if untested > 0 {
        lines.push(LawLine {
            law: "operad.untested_above_bound".into(),
            verdict: Verdict::Untested,
            checked: untested,
            witness: None,
        });
    }

    let mode = if exhaustive {
        Mode::Exhaustive
    } else {
        Mode::Sampled { samples: SHAPE_BUDGET, seed }
    };
    Ok(CheckReport { subject: format!("{} over {}", o.name, o.w), mode, lines })
}

fn law_line(law: &str, checked: usize, witness: Option<String>) -> LawLine {
    LawLine {
        law: law.into(),
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        checked,
        witness,
    }
}

/// All choices of `n` morphisms of `w` with both arities at most `bound`.
/// Capped to keep axiom sweeps tractable; the cap is deterministic.
fn alpha_shapes(w: VerbalCat, n: usize, bound: usize) -> Result<Vec<Vec<FinFn>>> {
    let mut all: Vec<FinFn> = Vec::new();
    for m in 0..=bound {
        for k in 0..=bound {
            all.extend(enumerate(w, m, k, bound)?);
        }
    }
    let mut out: Vec<Vec<FinFn>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for a in &all {
                let mut p = prefix.clone();
                p.push(a.clone());
                next.push(p);
            }
        }
        out = next;
        if out.len() > 4000 {
            // deterministic thinning: keep every k-th tuple
            let step = out.len() / 2000 + 1;
            out = out.into_iter().step_by(step).collect();
        }
    }
    Ok(out)
}

fn cartesian<'a>(choices: &'a [Vec<&'a OpElem>]) -> Vec<Vec<&'a OpElem>> {
    let mut out: Vec<Vec<&OpElem>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &out {
            for x in c {
                let mut p = prefix.clone();
                p.push(*x);
                next.push(p);
            }
        }
        out = next;
        if out.is_empty() {
            return out;
        }
    }
    out
}

/// All tuples of naturals of length `n` with entries `<= bound` and sum
/// `<= bound`.
fn compositions_upto(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, bound: usize, cur: &mut Vec<usize>, sum: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=(bound - sum) {
            cur.push(k);
            rec(n, bound, cur, sum + k, out);
            cur.pop();
        }
    }
    rec(n, bound, &mut Vec::new(), 0, &mut out);
    out
}

/// For each entry `m_j` of `m_vec`, a composition of length `m_j`; total sum
/// bounded.
fn nested_compositions(m_vec: &[usize], bound: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    let mut used = vec![0usize];
    for &mj in m_vec {
        let mut next = Vec::new();
        let mut next_used = Vec::new();
        for (prefix, &u) in out.iter().zip(used.iter()) {
            for comp in compositions_upto(mj, bound.saturating_sub(u)) {
                let s: usize = comp.iter().sum();
                let mut p = prefix.clone();
                p.push(comp);
                next.push(p);
                next_used.push(u + s);
            }
        }
        out = next;
        used = next_used;
        if out.len() > 3000 {
            let step = out.len() / 1500 + 1;
            out = out.into_iter().step_by(step).collect();
            used = used.into_iter().step_by(step).collect();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_monoid, builtin_monoid0};
    use crate::monads::builtin_monad;

    #[test]
    fn terminal_passes_for_every_shipped_w() {
        for w in VerbalCat::shipped() {
            let o = terminal_operad(w, 4);
            let rep = check_operad(&o, 3, 5).unwrap();
            assert!(rep.pass(), "{w}: {:?}", rep.first_failure());
        }
    }

    #[test]
    fn exception_and_writer_pass() {
        let o = exception_operad(2, 4);
        assert!(check_operad(&o, 3, 5).unwrap().pass());
        let o = writer_operad(builtin_monoid("leftzero").unwrap(), 4);
        assert!(check_operad(&o, 3, 5).unwrap().pass());
    }

    #[test]
    fn monoid_action_subst_formula() {
        // componentwise multiplication: subst((u,v), ((x),(y,z))) = (ux,vy,vz)
        let m = builtin_monoid("cyclic3").unwrap();
        let o = monoid_action_operad(m.clone(), 4);
        let q = OpElem::Row(vec![Scalar::Int(1), Scalar::Int(2)]);
        let p0 = OpElem::Row(vec![Scalar::Int(2)]);
        let p1 = OpElem::Row(vec![Scalar::Int(0), Scalar::Int(1)]);
        let got = o.subst(&q, &[(1, p0), (2, p1)]).unwrap();
        assert_eq!(got, OpElem::Row(vec![Scalar::Int(0), Scalar::Int(2), Scalar::Int(0)]));
        let rep = check_operad(&o, 3, 5).unwrap();
        assert!(rep.pass(), "{:?}", rep.first_failure());
    }

    #[test]
    fn monoid_action_mult2_exhaustive() {
        let o = monoid_action_operad(builtin_monoid("mult2").unwrap(), 4);
        let rep = check_operad(&o, 3, 5).unwrap();
        assert!(rep.pass(), "{:?}", rep.first_failure());
        assert_eq!(rep.mode, Mode::Exhaustive);
    }

    #[test]
    fn monoid0_action_and_broken_variant() {
        // action example: alpha(0)=2, alpha(1)=0 maps (p0,p1) to (p1,0,p0)
        let p = builtin_monoid0("mult2-0").unwrap();
        let o = monoid0_action_operad(p.clone(), 4);
        let alpha = FinFn::new(2, 3, vec![2, 0]).unwrap();
        let row = OpElem::Row(vec![Scalar::Int(1), Scalar::Int(1)]);
        assert_eq!(
            o.act(&alpha, &row).unwrap(),
            OpElem::Row(vec![Scalar::Int(1), Scalar::Int(0), Scalar::Int(1)])
        );
        let rep = check_operad(&o, 3, 5).unwrap();
        assert!(rep.pass(), "{:?}", rep.first_failure());

        // padding with the unit keeps functoriality but breaks compatibility
        let bad = broken_monoid0_operad(p, 4);
        let rep = check_operad(&bad, 3, 5).unwrap();
        assert!(!rep.pass());
        let failing = rep.first_failure().unwrap();
        assert_eq!(failing.law, "operad.compat");
    }

    #[test]
    fn distribution_operad_passes() {
        let o = distribution_operad(6, 4);
        let e2 = o.elems(2).unwrap();
        assert_eq!(e2.elems.len(), 5); // compositions of 6 into 2 positive parts
        let rep = check_operad(&o, 3, 5).unwrap();
        assert!(rep.pass(), "{:?}", rep.first_failure());
    }

    #[test]
    fn monoid_words_subst_is_star() {
        let o = monoid_operad(VerbalCat::Fsurj, 3, 4);
        for n_p in 0..=2usize {
            for n in 0..=2usize {
                for beta in enumerate(VerbalCat::Fsurj, n_p, n, 3).unwrap() {
                    // args: words alpha_i : m'_i -> m_i
                    for alphas in alpha_shapes(VerbalCat::Fsurj, n, 2).unwrap() {
                        if alphas.iter().any(|a| a.dom() > 3) {
                            continue;
                        }
                        let args: Vec<(usize, OpElem)> =
                            alphas.iter().map(|a| (a.cod(), OpElem::Word(a.clone()))).collect();
                        let direct = star(&beta, &alphas).unwrap();
                        if direct.dom() > 3 || direct.cod() > 4 {
                            continue;
                        }
                        let via = o.subst(&OpElem::Word(beta.clone()), &args).unwrap();
                        assert_eq!(via, OpElem::Word(direct));
                    }
                }
            }
        }
        assert_eq!(o.ido(), OpElem::Word(FinFn::identity(1)));
        let rep = check_operad(&o, 3, 5).unwrap();
        assert!(rep.pass(), "{:?}", rep.first_failure());
    }

    #[test]
    fn monoid_words_overflow_refuses() {
        let o = monoid_operad(VerbalCat::Fid, 2, 6);
        // three letters of length 2 overflow an inner bound of 2
        let q = OpElem::Word(FinFn::identity(2));
        let args =
            vec![(1, OpElem::Word(FinFn::terminal(2))), (1, OpElem::Word(FinFn::terminal(2)))];
        match o.subst(&q, &args) {
            Err(Error::Refusal(msg)) => assert!(msg.contains("inner bound")),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn nonuniqueness_operad_passes() {
        for m in ["cyclic2", "cyclic3"] {
            let o = nonuniqueness_operad(builtin_monoid(m).unwrap(), 4);
            let rep = check_operad(&o, 3, 5).unwrap();
            assert!(rep.pass(), "{m}: {:?}", rep.first_failure());
        }
    }

    #[test]
    fn restrict_agrees_with_inner() {
        let o = terminal_operad(VerbalCat::F, 4);
        let r = restrict(&o, VerbalCat::Fbij).unwrap();
        assert!(check_operad(&r, 3, 5).unwrap().pass());
        for al in enumerate(VerbalCat::Fbij, 2, 2, 3).unwrap() {
            assert_eq!(r.act(&al, &OpElem::Unit).unwrap(), o.act(&al, &OpElem::Unit).unwrap());
        }
        assert!(restrict(&terminal_operad(VerbalCat::Fbij, 4), VerbalCat::F).is_err());
    }

    #[test]
    fn extend_monoid_words_matches() {
        // extension of the terminal identity-operad is the operad of words
        let base = terminal_operad(VerbalCat::Fid, 3);
        for w in [VerbalCat::Fbij, VerbalCat::Fsurj] {
            let ext = extend(&base, w).unwrap();
            let words = monoid_operad(w, 3, 3);
            for n in 0..=3usize {
                let a = ext.elems(n).unwrap().elems.len();
                let b = words.elems(n).unwrap().elems.len();
                assert_eq!(a, b, "{w} arity {n}");
            }
            let rep = check_operad(&ext, 2, 5).unwrap();
            assert!(rep.pass(), "{w}: {:?}", rep.first_failure());
        }
    }

    #[test]
    fn extend_orbit_count() {
        // classes of the extension of the terminal bijection-operad to all
        // functions at arity 2: orbits of maps n' -> 2 under precomposition
        // by bijections, n' <= 3
        let base = terminal_operad(VerbalCat::Fbij, 3);
        let ext = extend(&base, VerbalCat::F).unwrap();
        let got = ext.elems(2).unwrap().elems.len();
        // brute-force orbit count
        let mut reps = std::collections::BTreeSet::new();
        for n_p in 0..=3usize {
            for f in enumerate(VerbalCat::F, n_p, 2, 3).unwrap() {
                let mut best: Option<FinFn> = None;
                for s in enumerate(VerbalCat::Fbij, n_p, n_p, 3).unwrap() {
                    let g = compose(&f, &s).unwrap();
                    if best.as_ref().map(|b| g < *b).unwrap_or(true) {
                        best = Some(g);
                    }
                }
                reps.insert(best.unwrap());
            }
        }
        assert_eq!(got, reps.len());
    }

    #[test]
    fn from_monad_operad_passes() {
        for (name, w) in
            [("pfin", VerbalCat::Fbij), ("pfin", VerbalCat::Finj), ("multiset", VerbalCat::Fbij)]
        {
            let s = builtin_monad(name).unwrap();
            let o = monad_to_operad(&s, w, 3);
            let rep = check_operad(&o, 3, 5).unwrap();
            assert!(rep.pass(), "{name} over {w}: {:?}", rep.first_failure());
        }
    }

    #[test]
    fn from_monad_ido_is_unit() {
        let s = builtin_monad("pfin").unwrap();
        let o = monad_to_operad(&s, VerbalCat::Fbij, 3);
        assert_eq!(o.ido(), OpElem::MElem(Box::new(s.unit(&Val::atom(0)))));
    }

    #[test]
    fn kleisli_end_passes_for_commutative() {
        let t = builtin_monad("pfin").unwrap();
        let x = Carrier::of_size(2);
        let o = kleisli_end_operad(&t, &x, VerbalCat::Fbij, 2, true).unwrap();
        // ido is the tabulated unit
        assert_eq!(o.ido(), OpElem::Table(x.elems.iter().map(|v| t.unit(v)).collect()));
        // subst of units reproduces the table
        let g = o.elems(2).unwrap().elems[7].clone();
        let units: Vec<(usize, OpElem)> = vec![(1, o.ido()), (1, o.ido())];
        assert_eq!(o.subst(&g, &units).unwrap(), g);
        let rep = check_operad(&o, 2, 5).unwrap();
        assert!(rep.pass(), "{:?}", rep.first_failure());
    }

    #[test]
    fn kleisli_end_refuses_noncommutative() {
        let t = builtin_monad("list").unwrap();
        let x = Carrier::of_size(2);
        match kleisli_end_operad(&t, &x, VerbalCat::Fbij, 2, true) {
            Err(Error::Refusal(msg)) => assert!(msg.contains("commutative")),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn kleisli_end_assoc_fails_without_commutativity() {
        // hand-built witness over the list monad: effect order differs
        let t = builtin_monad("list").unwrap();
        let x = Carrier::of_size(2);
        let o = kleisli_end_operad(&t, &x, VerbalCat::Fid, 4, false).unwrap();
        let a = || x.elems[0].clone();
        let b = || x.elems[1].clone();
        let g = OpElem::Table(
            carrier_tuples(&x, 2)
                .into_iter()
                .map(|tup| Val::Seq(vec![tup[0].clone(), tup[1].clone()]))
                .collect(),
        );
        let f0 = OpElem::Table(vec![Val::Seq(vec![a(), b()]); 2]); // constant [a,b]
        let f1 = OpElem::Table(vec![t.unit(&a()), t.unit(&b())]); // the unit
        let h0 = OpElem::Table(vec![t.unit(&a()); 2]); // constant unit a
        let h1 = OpElem::Table(vec![Val::Seq(vec![a(), b()]); 2]); // constant [a,b]

        // left: subst(g, (subst(f0,(h0)), subst(f1,(h1))))
        let left_inner0 = o.subst(&f0, &[(1, h0.clone())]).unwrap();
        let left_inner1 = o.subst(&f1, &[(1, h1.clone())]).unwrap();
        let lhs = o.subst(&g, &[(1, left_inner0), (1, left_inner1)]).unwrap();
        // right: subst(subst(g,(f0,f1)), (h0,h1))
        let gq = o.subst(&g, &[(1, f0), (1, f1)]).unwrap();
        let rhs = o.subst(&gq, &[(1, h0), (1, h1)]).unwrap();
        assert_ne!(lhs, rhs, "list-monad endomorphism operad must break associativity");
    }

    #[test]
    fn zero_drop_positions() {
        let p = builtin_monoid0("mult2-0").unwrap();
        let o = monoid0_action_operad(p, 4);
        let row = OpElem::Row(vec![Scalar::Int(1), Scalar::Int(0), Scalar::Int(1)]);
        let (kept, dropped) = o.zero_drop(3, &row).unwrap();
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(dropped, OpElem::Row(vec![Scalar::Int(1), Scalar::Int(1)]));
    }
}
