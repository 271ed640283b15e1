//! Substructural commutativity of monads: the per-morphism power diagram,
//! its heterogeneous variant, and the classical affine / commutative /
//! relevant / hyperaffine predicates together with their cross-checks.

use serde::Serialize;

use crate::finord::{enumerate, FinFn, VerbalCat};
use crate::monads::{
    pair_vals, power_components, psi, psi_n_side, psi_side, tuple_of, ApplyOpts, Carrier,
    MonadSpec, PsiSide, Val,
};
use crate::report::{Mode, Verdict};
use crate::sample::{index_tuples, Rng};
use crate::Result;

/// Result of one commutativity-style check.
#[derive(Clone, Debug, Serialize)]
pub struct CommReport {
    pub monad: String,
    pub verbal: String,
    pub arity_bound: usize,
    pub carrier: String,
    pub mode: Mode,
    pub verdict: Verdict,
    pub checked: usize,
    /// On failure: the morphism, the input tuple, and the two sides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CommWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommWitness {
    pub alpha: FinFn,
    pub inputs: Vec<Val>,
    pub lhs: Val,
    pub rhs: Val,
}

impl CommReport {
    pub fn pass(&self) -> bool {
        self.verdict.passed()
    }
}

/// Options for the commutativity sweeps.
#[derive(Clone, Copy, Debug)]
pub struct CommOpts {
    /// Enumerate input tuples exhaustively up to this many per morphism.
    pub tuple_cap: usize,
    /// Seeded samples per morphism beyond the cap.
    pub samples: usize,
    pub seed: u64,
    pub side: PsiSide,
    pub apply: ApplyOpts,
}

impl Default for CommOpts {
    fn default() -> Self {
        CommOpts {
            tuple_cap: 4096,
            samples: 200,
            seed: 23,
            side: PsiSide::Left,
            apply: ApplyOpts::default(),
        }
    }
}

/// Precompose the components of a value of `X^n` along `alpha : m -> n`.
fn precompose(v: &Val, n: usize, alpha: &FinFn) -> Val {
    let comps = power_components(v, n);
    tuple_of((0..alpha.dom()).map(|i| comps[alpha.apply(i)].clone()).collect())
}

/// Check the power diagram of one morphism on given input tuples. Returns a
/// witness on the first inequality.
fn check_alpha(
    t: &MonadSpec,
    alpha: &FinFn,
    tuples: &[Vec<Val>],
    side: PsiSide,
) -> Result<Option<CommWitness>> {
    let m = alpha.dom();
    let n = alpha.cod();
    for tup in tuples {
        let pulled: Vec<Val> = (0..m).map(|i| tup[alpha.apply(i)].clone()).collect();
        let lhs = psi_n_side(t, side, &pulled)?;
        let whole = psi_n_side(t, side, tup)?;
        let rhs = t.map(&mut |v| precompose(v, n, alpha), &whole);
        if lhs != rhs {
            return Ok(Some(CommWitness {
                alpha: alpha.clone(),
                inputs: tup.clone(),
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

/// Decide whether every power diagram for morphisms of `w` with arities at
/// most `arity_bound` commutes over the carrier `x`.
pub fn check_w_commutative(
    t: &MonadSpec,
    w: VerbalCat,
    x: &Carrier,
    arity_bound: usize,
    opts: &CommOpts,
) -> Result<CommReport> {
    let tx = t.apply(x, &opts.apply);
    let mut exhaustive = tx.exhaustive;
    let mut rng = Rng::seeded(opts.seed);
    let mut checked = 0usize;
    let mut witness = None;
    'outer: for m in 0..=arity_bound {
        for n in 0..=arity_bound {
            for alpha in enumerate(w, m, n, arity_bound)? {
                let (idx_tuples, exh) =
                    index_tuples(tx.len(), n, opts.tuple_cap, opts.samples, &mut rng);
                exhaustive &= exh;
                let tuples: Vec<Vec<Val>> = idx_tuples
                    .into_iter()
                    .map(|idx| idx.into_iter().map(|i| tx.elems[i].clone()).collect())
                    .collect();
                checked += tuples.len();
                if let Some(wit) = check_alpha(t, &alpha, &tuples, opts.side)? {
                    witness = Some(wit);
                    break 'outer;
                }
            }
        }
    }
    // a reported witness must replay
    if let Some(wit) = &witness {
        debug_assert!(check_alpha(t, &wit.alpha, &[wit.inputs.clone()], opts.side)?.is_some());
    }
    Ok(CommReport {
        monad: t.name.clone(),
        verbal: w.to_string(),
        arity_bound,
        carrier: x.name.clone(),
        mode: if exhaustive {
            Mode::Exhaustive
        } else {
            Mode::Sampled { samples: opts.samples, seed: opts.seed }
        },
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        checked,
        witness,
    })
}

/// The heterogeneous variant: distinct carriers per position. Morphisms
/// `alpha : m -> n` act by selecting carriers, so the input tuple lives in
/// `T X_0 × … × T X_{n-1}`.
pub fn check_w_commutative_multi(
    t: &MonadSpec,
    w: VerbalCat,
    carriers: &[Carrier],
    arity_bound: usize,
    opts: &CommOpts,
) -> Result<CommReport> {
    let n = carriers.len();
    let txs: Vec<Carrier> = carriers.iter().map(|x| t.apply(x, &opts.apply)).collect();
    let mut exhaustive = txs.iter().all(|c| c.exhaustive);
    let mut rng = Rng::seeded(opts.seed);
    let mut checked = 0usize;
    let mut witness = None;
    // all tuples over the product of the T X_j
    let total: u128 = txs.iter().map(|c| c.len() as u128).product();
    let tuples: Vec<Vec<Val>> = if total <= opts.tuple_cap as u128 {
        let mut out: Vec<Vec<Val>> = vec![vec![]];
        for tx in &txs {
            let mut next = Vec::new();
            for prefix in &out {
                for v in &tx.elems {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out
    } else {
        exhaustive = false;
        (0..opts.samples)
            .map(|_| txs.iter().map(|tx| rng.choose(&tx.elems).clone()).collect())
            .collect()
    };
    'outer: for m in 0..=arity_bound {
        for alpha in enumerate(w, m, n, arity_bound.max(n))? {
            checked += tuples.len();
            if let Some(wit) = check_alpha(t, &alpha, &tuples, opts.side)? {
                witness = Some(wit);
                break 'outer;
            }
        }
    }
    Ok(CommReport {
        monad: t.name.clone(),
        verbal: w.to_string(),
        arity_bound,
        carrier: carriers.iter().map(|c| c.name.clone()).collect::<Vec<_>>().join("×"),
        mode: if exhaustive {
            Mode::Exhaustive
        } else {
            Mode::Sampled { samples: opts.samples, seed: opts.seed }
        },
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        checked,
        witness,
    })
}

fn predicate_report(
    t: &MonadSpec,
    x: &Carrier,
    name: &str,
    exhaustive: bool,
    samples: usize,
    seed: u64,
    checked: usize,
    witness: Option<CommWitness>,
) -> CommReport {
    CommReport {
        monad: t.name.clone(),
        verbal: name.to_string(),
        arity_bound: 0,
        carrier: x.name.clone(),
        mode: if exhaustive { Mode::Exhaustive } else { Mode::Sampled { samples, seed } },
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        checked,
        witness,
    }
}

/// Affinity: discarding all structure through `T` of the terminal map equals
/// the unit at the point.
pub fn predicate_affine(t: &MonadSpec, x: &Carrier, opts: &CommOpts) -> Result<CommReport> {
    let tx = t.apply(x, &opts.apply);
    let point = Val::unit_tuple();
    let target = t.unit(&point);
    let mut witness = None;
    for e in &tx.elems {
        let got = t.map(&mut |_| point.clone(), e);
        if got != target {
            witness = Some(CommWitness {
                alpha: FinFn::terminal(1),
                inputs: vec![e.clone()],
                lhs: got,
                rhs: target.clone(),
            });
            break;
        }
    }
    Ok(predicate_report(t, x, "affine", tx.exhaustive, tx.len(), opts.seed, tx.len(), witness))
}

/// Ordinary commutativity: the symmetry of the lax monoidal structure.
pub fn predicate_commutative(t: &MonadSpec, x: &Carrier, opts: &CommOpts) -> Result<CommReport> {
    let tx = t.apply(x, &opts.apply);
    let mut rng = Rng::seeded(opts.seed);
    let (idx, exh) = index_tuples(tx.len(), 2, opts.tuple_cap, opts.samples, &mut rng);
    let mut witness = None;
    let mut checked = 0;
    for pair in idx {
        checked += 1;
        let (av, bv) = (&tx.elems[pair[0]], &tx.elems[pair[1]]);
        let lhs = psi_side(t, opts.side, bv, av)?;
        let rhs = t.map(
            &mut |v| {
                let c = power_components(v, 2);
                pair_vals(&c[1], &c[0])
            },
            &psi_side(t, opts.side, av, bv)?,
        );
        if lhs != rhs {
            witness = Some(CommWitness {
                alpha: FinFn::swap2(),
                inputs: vec![av.clone(), bv.clone()],
                lhs,
                rhs,
            });
            break;
        }
    }
    Ok(predicate_report(
        t,
        x,
        "commutative",
        tx.exhaustive && exh,
        opts.samples,
        opts.seed,
        checked,
        witness,
    ))
}

/// Relevance: duplicating through the monoidal structure equals duplicating
/// underneath.
pub fn predicate_relevant(t: &MonadSpec, x: &Carrier, opts: &CommOpts) -> Result<CommReport> {
    let tx = t.apply(x, &opts.apply);
    let mut witness = None;
    for e in &tx.elems {
        let lhs = psi(t, e, e)?;
        let rhs = t.map(&mut |v| pair_vals(v, v), e);
        if lhs != rhs {
            witness = Some(CommWitness {
                alpha: FinFn::terminal(2),
                inputs: vec![e.clone()],
                lhs,
                rhs,
            });
            break;
        }
    }
    Ok(predicate_report(t, x, "relevant", tx.exhaustive, tx.len(), opts.seed, tx.len(), witness))
}

/// Hyperaffinity, decided as affine together with relevant.
pub fn predicate_hyperaffine(t: &MonadSpec, x: &Carrier, opts: &CommOpts) -> Result<CommReport> {
    let aff = predicate_affine(t, x, opts)?;
    if !aff.pass() {
        return Ok(CommReport { verbal: "hyperaffine".into(), ..aff });
    }
    let rel = predicate_relevant(t, x, opts)?;
    Ok(CommReport { verbal: "hyperaffine".into(), ..rel })
}

/// n-ary relevance: the `n`-fold diagonal.
pub fn predicate_n_relevant(
    t: &MonadSpec,
    x: &Carrier,
    n: usize,
    opts: &CommOpts,
) -> Result<CommReport> {
    let tx = t.apply(x, &opts.apply);
    let mut witness = None;
    for e in &tx.elems {
        let copies = vec![e.clone(); n];
        let lhs = psi_n_side(t, opts.side, &copies)?;
        let rhs = t.map(&mut |v| tuple_of(vec![v.clone(); n]), e);
        if lhs != rhs {
            witness = Some(CommWitness {
                alpha: FinFn::terminal(n),
                inputs: vec![e.clone()],
                lhs,
                rhs,
            });
            break;
        }
    }
    Ok(predicate_report(
        t,
        x,
        &format!("{n}-relevant"),
        tx.exhaustive,
        tx.len(),
        opts.seed,
        tx.len(),
        witness,
    ))
}

/// The seven equivalences between substructural commutativity and the
/// classical predicates, evaluated on both sides.
#[derive(Clone, Debug, Serialize)]
pub struct Prop36Row {
    pub verbal: String,
    pub w_commutative: bool,
    pub predicate: String,
    pub predicate_holds: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop36Table {
    pub monad: String,
    pub carrier: String,
    pub rows: Vec<Prop36Row>,
    pub all_agree: bool,
}

/// Evaluate both sides of each characterization and report disagreements;
/// any disagreement is a defect in one of the two implementations.
pub fn crosscheck_characterizations(
    t: &MonadSpec,
    x: &Carrier,
    arity_bound: usize,
    opts: &CommOpts,
) -> Result<Prop36Table> {
    let aff = predicate_affine(t, x, opts)?.pass();
    let comm = predicate_commutative(t, x, opts)?.pass();
    let rel = predicate_relevant(t, x, opts)?.pass();
    let hyper = predicate_hyperaffine(t, x, opts)?.pass();
    let rel3 = predicate_n_relevant(t, x, 3, opts)?.pass();

    let cases: Vec<(VerbalCat, String, bool)> = vec![
        (VerbalCat::Fid, "always".into(), true),
        (VerbalCat::Fminj, "affine".into(), aff),
        (VerbalCat::Fbij, "commutative".into(), comm),
        (VerbalCat::Finj, "commutative ∧ affine".into(), comm && aff),
        (VerbalCat::Fsurj, "commutative ∧ relevant".into(), comm && rel),
        (VerbalCat::F, "hyperaffine".into(), hyper),
        (VerbalCat::FsurjN(3), "commutative ∧ 3-relevant".into(), comm && rel3),
    ];
    let mut rows = Vec::new();
    for (w, pred_name, pred_holds) in cases {
        // the k-ary contraction generator only appears at arity k
        let bound = match w {
            VerbalCat::FsurjN(k) => arity_bound.max(k),
            _ => arity_bound,
        };
        let rep = check_w_commutative(t, w, x, bound, opts)?;
        rows.push(Prop36Row {
            verbal: w.to_string(),
            w_commutative: rep.pass(),
            predicate: pred_name,
            predicate_holds: pred_holds,
            agree: rep.pass() == pred_holds,
        });
    }
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(Prop36Table { monad: t.name.clone(), carrier: x.name.clone(), rows, all_agree })
}

/// Preconditions for the Kleisli endomorphism operad: commutativity and
/// substructural commutativity of the monad. Returns a failure description,
/// or `None` when both hold.
pub fn kleisli_preconditions(
    t: &MonadSpec,
    x: &Carrier,
    w: VerbalCat,
    arity_bound: usize,
) -> Option<String> {
    let opts = CommOpts { samples: 60, ..Default::default() };
    match predicate_commutative(t, x, &opts) {
        Ok(rep) if !rep.pass() => {
            return Some(format!("{} is not commutative on {}", t.name, x.name))
        }
        Err(e) => return Some(format!("commutativity check failed: {e}")),
        _ => {}
    }
    match check_w_commutative(t, w, x, arity_bound, &opts) {
        Ok(rep) if !rep.pass() => {
            Some(format!("{} is not {w}-commutative on {}", t.name, x.name))
        }
        Err(e) => Some(format!("{w}-commutativity check failed: {e}")),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::monads::builtin_monad;

    fn small() -> CommOpts {
        CommOpts { samples: 80, ..Default::default() }
    }

    fn a(i: usize) -> Val {
        Val::atom(i)
    }

    #[test]
    fn any_monad_is_fid_commutative() {
        for name in ["pfin", "dist", "list", "exception:2", "reader:2", "writer:leftzero"] {
            let t = builtin_monad(name).unwrap();
            let rep =
                check_w_commutative(&t, VerbalCat::Fid, &Carrier::of_size(2), 3, &small()).unwrap();
            assert!(rep.pass(), "{name}");
        }
    }

    #[test]
    fn dist_is_finj_but_not_fsurj_commutative() {
        let d = builtin_monad("dist").unwrap();
        let x = Carrier::of_size(2);
        let rep = check_w_commutative(&d, VerbalCat::Finj, &x, 3, &small()).unwrap();
        assert!(rep.pass());
        let rep = check_w_commutative(&d, VerbalCat::Fsurj, &x, 2, &small()).unwrap();
        assert!(!rep.pass());
        // the fair-coin square is the canonical witness: check it replays
        let sr = d.semiring().unwrap().clone();
        let coin = Val::weighted(
            vec![(a(0), Scalar::rat(1, 2)), (a(1), Scalar::rat(1, 2))],
            &sr,
        );
        let wit = check_alpha(&d, &FinFn::terminal(2), &[vec![coin]], PsiSide::Left)
            .unwrap()
            .expect("diagonal of a fair coin fails relevance");
        // lhs: the product measure; rhs: the diagonal push
        let pairs = |v: &Val, w: &Val| Val::Tuple(vec![v.clone(), w.clone()]);
        let quarter = Scalar::rat(1, 4);
        let half = Scalar::rat(1, 2);
        assert_eq!(
            wit.lhs,
            Val::weighted(
                vec![
                    (pairs(&a(0), &a(0)), quarter.clone()),
                    (pairs(&a(0), &a(1)), quarter.clone()),
                    (pairs(&a(1), &a(0)), quarter.clone()),
                    (pairs(&a(1), &a(1)), quarter),
                ],
                &sr
            )
        );
        assert_eq!(
            wit.rhs,
            Val::weighted(
                vec![(pairs(&a(0), &a(0)), half.clone()), (pairs(&a(1), &a(1)), half)],
                &sr
            )
        );
    }

    #[test]
    fn predicate_table_matches_known_classifications() {
        let opts = small();
        let x = Carrier::of_size(2);
        let table: Vec<(&str, bool, bool, bool)> = vec![
            // (monad, affine, commutative, relevant)
            ("pfin", false, true, false),
            ("pfin+", true, true, false),
            ("dist", true, true, false),
            ("multiset", false, true, false),
            ("exception:2", false, false, true),
            ("maybe", false, true, true),
            ("reader:2", true, true, true),
            ("writer:cyclic2", false, true, false),
            ("writer:or2", false, true, true),
            // the left-zero monoid is idempotent but not commutative
            ("writer:leftzero", false, false, true),
            ("list", false, false, false),
        ];
        for (name, aff, comm, rel) in table {
            let t = builtin_monad(name).unwrap();
            assert_eq!(predicate_affine(&t, &x, &opts).unwrap().pass(), aff, "{name} affine");
            assert_eq!(
                predicate_commutative(&t, &x, &opts).unwrap().pass(),
                comm,
                "{name} commutative"
            );
            assert_eq!(predicate_relevant(&t, &x, &opts).unwrap().pass(), rel, "{name} relevant");
        }
        // the reader monad is hyperaffine
        let r = builtin_monad("reader:2").unwrap();
        assert!(predicate_hyperaffine(&r, &x, &opts).unwrap().pass());
    }

    #[test]
    fn writer_idempotent_iff_or2_is_3_relevant() {
        let opts = small();
        let x = Carrier::of_size(2);
        let w_or = builtin_monad("writer:or2").unwrap();
        assert!(predicate_n_relevant(&w_or, &x, 3, &opts).unwrap().pass());
        let w_c2 = builtin_monad("writer:cyclic2").unwrap();
        assert!(!predicate_n_relevant(&w_c2, &x, 2, &opts).unwrap().pass());
        // cyclic3 under addition: x+x+x = x, so 3-relevant without being
        // 2-relevant
        let w_c3 = builtin_monad("writer:cyclic3").unwrap();
        assert!(!predicate_n_relevant(&w_c3, &x, 2, &opts).unwrap().pass());
        // 3-relevance needs x·x·x = x... in cyclic3 additive: 3x = 0 != x, so
        // it fails too
        assert!(!predicate_n_relevant(&w_c3, &x, 3, &opts).unwrap().pass());
    }

    #[test]
    fn crosscheck_agrees_over_zoo() {
        let opts = CommOpts { samples: 50, ..Default::default() };
        for name in ["pfin", "pfin+", "dist", "maybe", "exception:2", "reader:2", "writer:or2"] {
            let t = builtin_monad(name).unwrap();
            let table = crosscheck_characterizations(&t, &Carrier::of_size(2), 2, &opts).unwrap();
            assert!(table.all_agree, "{name}: {:#?}", table.rows);
        }
    }

    #[test]
    fn multi_carrier_agrees_with_single() {
        let opts = small();
        let xs = [Carrier::of_size(2), Carrier::of_size(1)];
        for (name, w, expect) in [
            ("pfin", VerbalCat::Fbij, true),
            ("exception:2", VerbalCat::Fbij, false),
            ("dist", VerbalCat::Finj, true),
        ] {
            let t = builtin_monad(name).unwrap();
            let multi = check_w_commutative_multi(&t, w, &xs, 3, &opts).unwrap();
            assert_eq!(multi.pass(), expect, "{name} over {w} (multi)");
            let single = check_w_commutative(&t, w, &Carrier::of_size(2), 2, &opts).unwrap();
            assert_eq!(single.pass(), expect, "{name} over {w} (single)");
        }
    }

    #[test]
    fn psi_prime_gives_identical_verdicts() {
        let mut left = small();
        left.side = PsiSide::Left;
        let mut right = small();
        right.side = PsiSide::Right;
        let x = Carrier::of_size(2);
        for name in ["pfin", "dist", "exception:2", "list", "writer:leftzero"] {
            let t = builtin_monad(name).unwrap();
            for w in [VerbalCat::Fbij, VerbalCat::Fsurj, VerbalCat::Fminj] {
                let l = check_w_commutative(&t, w, &x, 2, &left).unwrap();
                let r = check_w_commutative(&t, w, &x, 2, &right).unwrap();
                assert_eq!(l.pass(), r.pass(), "{name} over {w}");
            }
        }
    }

    #[test]
    fn monotone_in_the_lattice() {
        // pass at a larger category implies pass at any smaller one
        let opts = CommOpts { samples: 40, ..Default::default() };
        let x = Carrier::of_size(2);
        let lattice: Vec<(VerbalCat, VerbalCat)> = vec![
            (VerbalCat::Fid, VerbalCat::Fbij),
            (VerbalCat::Fbij, VerbalCat::Finj),
            (VerbalCat::Fbij, VerbalCat::Fsurj),
            (VerbalCat::Finj, VerbalCat::F),
            (VerbalCat::Fsurj, VerbalCat::F),
            (VerbalCat::Fid, VerbalCat::Fminj),
            (VerbalCat::Fminj, VerbalCat::Finj),
            (VerbalCat::Fbij, VerbalCat::FsurjN(3)),
            (VerbalCat::FsurjN(3), VerbalCat::Fsurj),
        ];
        for name in ["pfin", "pfin+", "dist", "maybe", "reader:2", "exception:2"] {
            let t = builtin_monad(name).unwrap();
            let verdict = |w: VerbalCat| check_w_commutative(&t, w, &x, 2, &opts).unwrap().pass();
            for (small_cat, big_cat) in &lattice {
                if verdict(*big_cat) {
                    assert!(
                        verdict(*small_cat),
                        "{name}: passes {big_cat} but fails {small_cat}"
                    );
                }
            }
        }
    }
}
