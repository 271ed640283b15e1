//! Computable monads on finite carriers, together with the strength `tau`,
//! the lax monoidal structure `psi`, and its n-ary form `psi_n`.
//!
//! Elements of `T X` are [`Val`]s; since a carrier may itself hold monad
//! elements, towers like `T T X` need no special machinery. All finite
//! products are flat tuples, so the structure isomorphisms (unitors,
//! associators) are identities and pairing splices tuples.

use serde::Serialize;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{builtin_monoid, builtin_semiring, Monoid, Scalar, Semiring};
use crate::coend::{CoendMonad, CoendVal};
use crate::report::{CheckReport, LawLine, Mode, Verdict};
use crate::sample::Rng;
use crate::{Error, Result};

/// A value: an atom of some named finite carrier, a flat tuple, or a monad
/// element. The monad-element variants let elements of `T X` populate
/// carriers, which is what makes `T T X` (and deeper towers) representable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Val {
    Atom(u32),
    Tuple(Vec<Val>),
    /// Exception monad: a raised error `c`.
    Exc(u32),
    /// Exception monad: an ordinary value.
    Pure(Box<Val>),
    /// Reader tables and list elements.
    Seq(Vec<Val>),
    /// Writer elements `(m, x)`.
    Pair(Scalar, Box<Val>),
    /// Multiset-family elements: sorted by value, zero coefficients dropped.
    Weighted(Vec<(Val, Scalar)>),
    /// Elements of operad-induced monads, in canonical form.
    Coend(Box<CoendVal>),
}

impl Val {
    pub fn atom(i: usize) -> Val {
        Val::Atom(i as u32)
    }

    pub fn unit_tuple() -> Val {
        Val::Tuple(vec![])
    }

    /// Canonical multiset-family element: merged with the semiring addition,
    /// sorted, zero coefficients dropped.
    pub fn weighted(pairs: Vec<(Val, Scalar)>, sr: &Semiring) -> Val {
        let mut pairs = pairs;
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Val, Scalar)> = Vec::with_capacity(pairs.len());
        for (v, c) in pairs {
            match merged.last_mut() {
                Some((w, d)) if *w == v => *d = sr.add(d, &c),
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|(_, c)| !sr.is_zero(c));
        Val::Weighted(merged)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Atom(i) => write!(f, "x{i}"),
            Val::Tuple(vs) => {
                write!(f, "(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Val::Exc(c) => write!(f, "err{c}"),
            Val::Pure(v) => write!(f, "ok({v})"),
            Val::Seq(vs) => {
                write!(f, "[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Val::Pair(m, v) => write!(f, "<{m},{v}>"),
            Val::Weighted(ps) => {
                write!(f, "{{")?;
                for (i, (v, c)) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·{v}")?;
                }
                write!(f, "}}")
            }
            Val::Coend(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Splice-aware pairing: tuples concatenate, so `(X × Y) × Z` and
/// `X × (Y × Z)` coincide as flat tuples and the associator is the identity.
pub fn pair_vals(x: &Val, y: &Val) -> Val {
    let mut parts = components(x);
    parts.extend(components(y));
    tuple_of(parts)
}

fn components(v: &Val) -> Vec<Val> {
    match v {
        Val::Tuple(vs) => vs.clone(),
        other => vec![other.clone()],
    }
}

/// A flat tuple, with 1-tuples identified with their entry.
pub fn tuple_of(mut parts: Vec<Val>) -> Val {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Val::Tuple(parts)
    }
}

/// Read a value of `X^n` back as its `n` components. Carrier elements must
/// not themselves be tuples for this to be unambiguous; the zoo's carriers
/// hold atoms and monad payloads only.
pub fn power_components(v: &Val, n: usize) -> Vec<Val> {
    match n {
        0 => {
            debug_assert_eq!(*v, Val::Tuple(vec![]));
            vec![]
        }
        1 => vec![v.clone()],
        _ => match v {
            Val::Tuple(vs) => {
                debug_assert_eq!(vs.len(), n);
                vs.clone()
            }
            other => panic!("expected a {n}-tuple, got {other}"),
        },
    }
}

/// A named finite carrier, or a finite seeded sample of an infinite one.
#[derive(Clone, Debug)]
pub struct Carrier {
    pub name: String,
    pub elems: Vec<Val>,
    pub exhaustive: bool,
}

impl Carrier {
    pub fn new(name: impl Into<String>, mut elems: Vec<Val>, exhaustive: bool) -> Carrier {
        elems.sort();
        elems.dedup();
        Carrier { name: name.into(), elems, exhaustive }
    }

    /// The carrier of atoms `{x0, …, x_{n-1}}`.
    pub fn of_size(n: usize) -> Carrier {
        Carrier::new(format!("X{n}"), (0..n).map(Val::atom).collect(), true)
    }

    /// Same as [`Carrier::of_size`]; spelled for use as an ordinal.
    pub fn ordinal(n: usize) -> Carrier {
        Carrier::new(format!("ord{n}"), (0..n).map(Val::atom).collect(), true)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// Enumeration/sampling policy for `apply`.
#[derive(Clone, Copy, Debug)]
pub struct ApplyOpts {
    /// Enumerate exhaustively when the result has at most this many elements.
    pub cap: usize,
    /// Number of seeded draws otherwise.
    pub samples: usize,
    pub seed: u64,
    /// Maximum support size for multiset-family samplers.
    pub max_support: usize,
    /// Maximum length for list samplers.
    pub max_len: usize,
}

impl Default for ApplyOpts {
    fn default() -> Self {
        ApplyOpts { cap: 4096, samples: 150, seed: 17, max_support: 3, max_len: 2 }
    }
}

#[derive(Clone)]
pub enum MonadKind {
    Exception(usize),
    Reader(usize),
    Writer(Arc<Monoid>),
    Multiset(Arc<Semiring>),
    Affine(Arc<Semiring>),
    List,
    Induced(Arc<CoendMonad>),
}

/// A computable monad on finite carriers: the functor on objects (possibly
/// sampler-backed), `map`, `unit`, `join`, and a canonical form.
#[derive(Clone)]
pub struct MonadSpec {
    pub name: String,
    pub kind: MonadKind,
}

impl fmt::Debug for MonadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonadSpec({})", self.name)
    }
}

/// Build a zoo monad by name: `pfin`, `pfin+`, `dist`, `valuation`, `list`,
/// `maybe`, `multiset:<semiring>`, `affine:<semiring>`, `exception:<k>`,
/// `reader:<k>`, `writer:<monoid>`.
pub fn builtin_monad(name: &str) -> Result<MonadSpec> {
    let kind = match name {
        "pfin" => MonadKind::Multiset(Arc::new(builtin_semiring("bool")?)),
        "pfin+" => MonadKind::Affine(Arc::new(builtin_semiring("bool")?)),
        "dist" => MonadKind::Affine(Arc::new(builtin_semiring("qnonneg")?)),
        "valuation" => MonadKind::Multiset(Arc::new(builtin_semiring("qnonneg")?)),
        "multiset" => MonadKind::Multiset(Arc::new(builtin_semiring("nat")?)),
        // indexed valuations: multisets of (positive coefficient, value) pairs
        "iv" => MonadKind::Multiset(Arc::new(builtin_semiring("contracted:qnonneg-mult0")?)),
        "list" => MonadKind::List,
        "maybe" => MonadKind::Exception(1),
        _ => {
            if let Some(s) = name.strip_prefix("multiset:") {
                MonadKind::Multiset(Arc::new(builtin_semiring(s)?))
            } else if let Some(s) = name.strip_prefix("affine:") {
                MonadKind::Affine(Arc::new(builtin_semiring(s)?))
            } else if let Some(k) = name.strip_prefix("exception:") {
                MonadKind::Exception(
                    k.parse().map_err(|_| Error::UnknownName(format!("monad {name}")))?,
                )
            } else if let Some(k) = name.strip_prefix("reader:") {
                MonadKind::Reader(
                    k.parse().map_err(|_| Error::UnknownName(format!("monad {name}")))?,
                )
            } else if let Some(m) = name.strip_prefix("writer:") {
                MonadKind::Writer(Arc::new(builtin_monoid(m)?))
            } else {
                return Err(Error::UnknownName(format!("monad {name}")));
            }
        }
    };
    Ok(MonadSpec { name: name.to_string(), kind })
}

impl MonadSpec {
    pub fn induced(cm: CoendMonad) -> MonadSpec {
        MonadSpec { name: cm.name.clone(), kind: MonadKind::Induced(Arc::new(cm)) }
    }

    /// The coefficient semiring, for the multiset family.
    pub fn semiring(&self) -> Option<&Semiring> {
        match &self.kind {
            MonadKind::Multiset(s) | MonadKind::Affine(s) => Some(s),
            _ => None,
        }
    }

    /// `T X` on a finite carrier, enumerated exhaustively when small enough
    /// and sampled otherwise.
    pub fn apply(&self, x: &Carrier, opts: &ApplyOpts) -> Carrier {
        let name = format!("{}({})", self.name, x.name);
        match &self.kind {
            MonadKind::Exception(k) => {
                let mut elems: Vec<Val> = (0..*k).map(|c| Val::Exc(c as u32)).collect();
                elems.extend(x.elems.iter().map(|v| Val::Pure(Box::new(v.clone()))));
                Carrier::new(name, elems, x.exhaustive)
            }
            MonadKind::Reader(k) => {
                let total = (x.len() as u128).checked_pow(*k as u32);
                match total {
                    Some(t) if t <= opts.cap as u128 => {
                        let mut elems = Vec::new();
                        let mut idx = vec![0usize; *k];
                        if x.is_empty() && *k > 0 {
                            return Carrier::new(name, elems, x.exhaustive);
                        }
                        loop {
                            elems.push(Val::Seq(idx.iter().map(|&i| x.elems[i].clone()).collect()));
                            let mut i = *k;
                            loop {
                                if i == 0 {
                                    return Carrier::new(name, elems, x.exhaustive);
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
                    _ => {
                        let mut rng = Rng::seeded(opts.seed);
                        let elems = (0..opts.samples)
                            .map(|_| {
                                Val::Seq((0..*k).map(|_| rng.choose(&x.elems).clone()).collect())
                            })
                            .collect();
                        Carrier::new(name, elems, false)
                    }
                }
            }
            MonadKind::Writer(m) => {
                let ms = m.sample_elems();
                let mut elems = Vec::new();
                for mv in &ms {
                    for v in &x.elems {
                        elems.push(Val::Pair(mv.clone(), Box::new(v.clone())));
                    }
                }
                Carrier::new(name, elems, x.exhaustive && m.is_finite())
            }
            MonadKind::Multiset(sr) | MonadKind::Affine(sr) => {
                let affine = matches!(self.kind, MonadKind::Affine(_));
                self.apply_multiset(x, sr, affine, opts, name)
            }
            MonadKind::List => {
                // all lists of length <= max_len; never exhaustive (lists are
                // unbounded)
                let mut elems = vec![Val::Seq(vec![])];
                let mut layer: Vec<Vec<Val>> = vec![vec![]];
                for _ in 0..opts.max_len {
                    let mut next = Vec::new();
                    for l in &layer {
                        for v in &x.elems {
                            let mut l2 = l.clone();
                            l2.push(v.clone());
                            elems.push(Val::Seq(l2.clone()));
                            next.push(l2);
                        }
                    }
                    layer = next;
                    if elems.len() > opts.cap {
                        break;
                    }
                }
                Carrier::new(name, elems, false)
            }
            MonadKind::Induced(cm) => cm.apply(x, opts),
        }
    }

    fn apply_multiset(
        &self,
        x: &Carrier,
        sr: &Semiring,
        affine: bool,
        opts: &ApplyOpts,
        name: String,
    ) -> Carrier {
        if sr.is_finite() {
            // enumerate coefficient assignments over the whole carrier when
            // small enough
            let coeffs = sr.elems.clone().unwrap();
            let total = (coeffs.len() as u128).checked_pow(x.len() as u32);
            if let Some(t) = total {
                if t <= opts.cap as u128 {
                    let mut elems = Vec::new();
                    let mut idx = vec![0usize; x.len()];
                    loop {
                        let pairs: Vec<(Val, Scalar)> = x
                            .elems
                            .iter()
                            .zip(idx.iter())
                            .map(|(v, &i)| (v.clone(), coeffs[i].clone()))
                            .collect();
                        let val = Val::weighted(pairs, sr);
                        if !affine || self.affine_ok(&val, sr) {
                            elems.push(val);
                        }
                        let mut i = x.len();
                        loop {
                            if i == 0 {
                                return Carrier::new(name, elems, x.exhaustive);
                            }
                            i -= 1;
                            idx[i] += 1;
                            if idx[i] < coeffs.len() {
                                break;
                            }
                            idx[i] = 0;
                        }
                    }
                }
            }
        }
        // sampled: draw supports and nonzero pool coefficients
        let mut rng = Rng::seeded(opts.seed);
        let pool = sr.nonzero_pool();
        let mut elems = Vec::new();
        if !affine {
            elems.push(Val::Weighted(vec![])); // the zero combination
        }
        for v in &x.elems {
            elems.push(self.canon_weighted(
                vec![(v.clone(), sr.one.clone())],
                sr,
                affine,
            ));
        }
        let mut budget = opts.samples * 8;
        while elems.len() < opts.samples && budget > 0 {
            budget -= 1;
            if x.is_empty() {
                break;
            }
            let s = 1 + rng.below(opts.max_support.min(x.len()));
            let support = rng.distinct_indices(x.len(), s);
            let mut pairs: Vec<(Val, Scalar)> = support
                .iter()
                .map(|&i| (x.elems[i].clone(), rng.choose(&pool).clone()))
                .collect();
            if affine {
                // normalize to total mass one (exact rational arithmetic)
                let total = pairs
                    .iter()
                    .fold(sr.zero.clone(), |acc, (_, c)| sr.add(&acc, c));
                if sr.is_zero(&total) {
                    continue;
                }
                if let Some(tq) = total.as_rat() {
                    for (_, c) in pairs.iter_mut() {
                        let q = c.as_rat().expect("rational coefficients");
                        *c = Scalar::Rat(q / tq);
                    }
                } else if total != sr.one {
                    continue; // non-rational semiring: keep only mass-one draws
                }
            }
            let val = Val::weighted(pairs, sr);
            if affine && !self.affine_ok(&val, sr) {
                continue;
            }
            elems.push(val);
        }
        Carrier::new(name, elems, false)
    }

    fn canon_weighted(&self, pairs: Vec<(Val, Scalar)>, sr: &Semiring, affine: bool) -> Val {
        let v = Val::weighted(pairs, sr);
        debug_assert!(!affine || self.affine_ok(&v, sr));
        v
    }

    fn affine_ok(&self, v: &Val, sr: &Semiring) -> bool {
        match v {
            Val::Weighted(ps) => {
                let total = ps.iter().fold(sr.zero.clone(), |acc, (_, c)| sr.add(&acc, c));
                total == sr.one
            }
            _ => false,
        }
    }

    pub fn map(&self, f: &mut dyn FnMut(&Val) -> Val, e: &Val) -> Val {
        match (&self.kind, e) {
            (MonadKind::Exception(_), Val::Exc(c)) => Val::Exc(*c),
            (MonadKind::Exception(_), Val::Pure(v)) => Val::Pure(Box::new(f(v))),
            (MonadKind::Reader(_), Val::Seq(vs)) => Val::Seq(vs.iter().map(|v| f(v)).collect()),
            (MonadKind::Writer(_), Val::Pair(m, v)) => Val::Pair(m.clone(), Box::new(f(v))),
            (MonadKind::Multiset(sr), Val::Weighted(ps))
            | (MonadKind::Affine(sr), Val::Weighted(ps)) => Val::weighted(
                ps.iter().map(|(v, c)| (f(v), c.clone())).collect(),
                sr,
            ),
            (MonadKind::List, Val::Seq(vs)) => Val::Seq(vs.iter().map(|v| f(v)).collect()),
            (MonadKind::Induced(cm), Val::Coend(cv)) => cm.map(f, cv),
            _ => panic!("{}: map on malformed element {e}", self.name),
        }
    }

    pub fn unit(&self, x: &Val) -> Val {
        match &self.kind {
            MonadKind::Exception(_) => Val::Pure(Box::new(x.clone())),
            MonadKind::Reader(k) => Val::Seq(vec![x.clone(); *k]),
            MonadKind::Writer(m) => Val::Pair(m.unit.clone(), Box::new(x.clone())),
            MonadKind::Multiset(sr) | MonadKind::Affine(sr) => {
                Val::Weighted(vec![(x.clone(), sr.one.clone())])
            }
            MonadKind::List => Val::Seq(vec![x.clone()]),
            MonadKind::Induced(cm) => cm.unit(x),
        }
    }

    /// Flatten an element of `T T X` whose inner payloads are `T X` elements.
    pub fn join(&self, e: &Val) -> Result<Val> {
        match (&self.kind, e) {
            (MonadKind::Exception(_), Val::Exc(c)) => Ok(Val::Exc(*c)),
            (MonadKind::Exception(_), Val::Pure(v)) => Ok((**v).clone()),
            (MonadKind::Reader(k), Val::Seq(vs)) => {
                let mut out = Vec::with_capacity(*k);
                for (c, v) in vs.iter().enumerate() {
                    match v {
                        Val::Seq(inner) => out.push(inner[c].clone()),
                        other => {
                            return Err(Error::InvalidValue(format!(
                                "reader join on non-table {other}"
                            )))
                        }
                    }
                }
                Ok(Val::Seq(out))
            }
            (MonadKind::Writer(m), Val::Pair(a, v)) => match &**v {
                Val::Pair(b, x) => Ok(Val::Pair(m.op(a, b), x.clone())),
                other => Err(Error::InvalidValue(format!("writer join on {other}"))),
            },
            (MonadKind::Multiset(sr), Val::Weighted(ps))
            | (MonadKind::Affine(sr), Val::Weighted(ps)) => {
                let mut pairs = Vec::new();
                for (inner, c) in ps {
                    match inner {
                        Val::Weighted(qs) => {
                            for (v, d) in qs {
                                pairs.push((v.clone(), sr.mul(c, d)));
                            }
                        }
                        other => {
                            return Err(Error::InvalidValue(format!(
                                "multiset join on inner {other}"
                            )))
                        }
                    }
                }
                Ok(Val::weighted(pairs, sr))
            }
            (MonadKind::List, Val::Seq(vs)) => {
                let mut out = Vec::new();
                for v in vs {
                    match v {
                        Val::Seq(inner) => out.extend(inner.iter().cloned()),
                        other => {
                            return Err(Error::InvalidValue(format!("list join on inner {other}")))
                        }
                    }
                }
                Ok(Val::Seq(out))
            }
            (MonadKind::Induced(cm), Val::Coend(cv)) => cm.join(cv),
            _ => Err(Error::InvalidValue(format!("{}: join on malformed element {e}", self.name))),
        }
    }

    /// Canonical form. Constructors already keep values canonical; for the
    /// affine family the mass-one invariant is asserted, never repaired.
    pub fn canon(&self, e: &Val) -> Val {
        match (&self.kind, e) {
            (MonadKind::Affine(sr), v @ Val::Weighted(_)) => {
                debug_assert!(self.affine_ok(v, sr), "affine element with mass != 1: {v}");
                v.clone()
            }
            (MonadKind::Induced(cm), Val::Coend(cv)) => cm.canon(cv),
            (_, v) => v.clone(),
        }
    }
}

/// Map a fallible function through a monad's functor action, propagating the
/// first error.
pub fn try_map(
    t: &MonadSpec,
    e: &Val,
    mut f: impl FnMut(&Val) -> Result<Val>,
) -> Result<Val> {
    let mut err: Option<Error> = None;
    let out = t.map(
        &mut |v| match f(v) {
            Ok(r) => r,
            Err(e) => {
                if err.is_none() {
                    err = Some(e);
                }
                Val::unit_tuple()
            }
        },
        e,
    );
    match err {
        None => Ok(out),
        Some(e) => Err(e),
    }
}

/// The left strength `tau : X × TY -> T(X×Y)`, determined by mapping the
/// pairing-with-`x` function through `T`.
pub fn tau(t: &MonadSpec, x: &Val, e: &Val) -> Val {
    t.map(&mut |y| pair_vals(x, y), e)
}

/// The right strength `tau' : TX × Y -> T(X×Y)`.
pub fn tau_r(t: &MonadSpec, e: &Val, y: &Val) -> Val {
    t.map(&mut |x| pair_vals(x, y), e)
}

/// The lax monoidal structure `psi : TX × TY -> T(X×Y)`, pulling the left
/// factor out first.
pub fn psi(t: &MonadSpec, a: &Val, b: &Val) -> Result<Val> {
    let mut err = None;
    let nested = t.map(&mut |x| tau(t, x, b), a);
    let res = t.join(&nested);
    if let Err(e) = &res {
        err = Some(e.clone());
    }
    match err {
        None => res,
        Some(e) => Err(e),
    }
}

/// The other canonical lax monoidal structure, pulling the right factor out
/// first. Agrees with [`psi`] exactly when the monad is commutative.
pub fn psi_prime(t: &MonadSpec, a: &Val, b: &Val) -> Result<Val> {
    let nested = t.map(&mut |y| tau_r(t, a, y), b);
    t.join(&nested)
}

/// Which of the two canonical structures to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PsiSide {
    Left,
    Right,
}

pub fn psi_side(t: &MonadSpec, side: PsiSide, a: &Val, b: &Val) -> Result<Val> {
    match side {
        PsiSide::Left => psi(t, a, b),
        PsiSide::Right => psi_prime(t, a, b),
    }
}

/// The n-ary lax monoidal map `(TX_0 × … × TX_{n-1}) -> T(X_0 × … × X_{n-1})`
/// as a right-nested fold of `psi`, with tuple flattening. For `n = 0` this
/// is the unit at the empty tuple; for `n = 1` the identity.
pub fn psi_n(t: &MonadSpec, elems: &[Val]) -> Result<Val> {
    psi_n_side(t, PsiSide::Left, elems)
}

pub fn psi_n_side(t: &MonadSpec, side: PsiSide, elems: &[Val]) -> Result<Val> {
    match elems.len() {
        0 => Ok(t.unit(&Val::unit_tuple())),
        1 => Ok(elems[0].clone()),
        _ => {
            let rest = psi_n_side(t, side, &elems[1..])?;
            psi_side(t, side, &elems[0], &rest)
        }
    }
}

/// Check the monad laws on (samples of) `T X`, `T T X`, and `T T T X`.
pub fn check_monad_laws(t: &MonadSpec, x: &Carrier, opts: &ApplyOpts) -> CheckReport {
    let tx = t.apply(x, opts);
    let o2 = ApplyOpts { seed: opts.seed.wrapping_add(1), ..*opts };
    let ttx = t.apply(&tx, &o2);
    let o3 = ApplyOpts { seed: opts.seed.wrapping_add(2), samples: opts.samples.min(120), ..*opts };
    let tttx = t.apply(&ttx, &o3);
    let exhaustive = tx.exhaustive && ttx.exhaustive && tttx.exhaustive;
    let mode = if exhaustive {
        Mode::Exhaustive
    } else {
        Mode::Sampled { samples: tx.len() + ttx.len() + tttx.len(), seed: opts.seed }
    };

    let mut lines = Vec::new();
    let mut push = |law: &str, checked: usize, witness: Option<String>| {
        lines.push(LawLine {
            law: law.into(),
            verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
            checked,
            witness,
        });
    };

    // join ∘ map(unit) = id = join ∘ unit
    let mut w = None;
    for e in &tx.elems {
        let lhs = t.join(&t.map(&mut |v| t.unit(v), e));
        let rhs = t.join(&t.unit(e));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                if l != *e || r != *e {
                    w = Some(format!("unit laws at {e}: map-side {l}, unit-side {r}"));
                    break;
                }
            }
            (Err(err), _) | (_, Err(err)) => {
                w = Some(format!("refusal at {e}: {err}"));
                break;
            }
        }
    }
    push("monad.unit", tx.len(), w);

    // join ∘ map(join) = join ∘ join; instances whose joins overflow an
    // arity bound are counted as untested
    let mut w = None;
    let mut untested = 0usize;
    let mut checked = 0usize;
    for e in &tttx.elems {
        let lhs = try_map(t, e, |v| t.join(v)).and_then(|m| t.join(&m));
        let rhs = t.join(e).and_then(|j| t.join(&j));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                checked += 1;
                if l != r {
                    w = Some(format!("associativity at {e}: {l} vs {r}"));
                    break;
                }
            }
            (Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. }), _)
            | (_, Err(Error::Refusal(_)) | Err(Error::BoundExceeded { .. })) => {
                untested += 1;
            }
            (Err(err), _) | (_, Err(err)) => {
                w = Some(format!("malformed element {e}: {err}"));
                break;
            }
        }
    }
    push("monad.assoc", checked, w);
    if untested > 0 {
        lines.push(LawLine {
            law: "monad.untested_above_bound".into(),
            verdict: Verdict::Untested,
            checked: untested,
            witness: None,
        });
    }

    CheckReport { subject: format!("{} on {}", t.name, x.name), mode, lines }
}
