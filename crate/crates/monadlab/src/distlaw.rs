//! The canonical distributive law between an operadically presented monad
//! and a substructurally commutative monad: synthesis, verification of all
//! four compatibility axioms, change-of-base invariance, and the
//! intersection diagnosis with operadic refinement as the repair.

use std::sync::Arc;

use serde::Serialize;

use crate::coend::{embed_into_extension, refine, CoendMonad};
use crate::finord::VerbalCat;
use crate::monads::{
    builtin_monad, power_components, psi_n, try_map, ApplyOpts, Carrier, MonadKind, MonadSpec,
    Val,
};
use crate::operads::{
    distribution_operad, exception_operad, extend, full_support_operad, monad_to_operad,
    monoid_action_operad, monoid0_action_operad, terminal_operad, writer_operad, OperadSpec,
};
use crate::report::{LawLine, Mode, Verdict};
use crate::sample::Rng;
use crate::wcomm::{check_w_commutative, predicate_commutative, CommOpts};
use crate::{Error, Result};

/// A synthesized distributive-law candidate `delta : S T -> T S` where `S`
/// is induced by an operad and `T` is a monad.
pub struct Delta {
    pub w: VerbalCat,
    pub s: MonadSpec,
    pub cm: Arc<CoendMonad>,
    pub t: MonadSpec,
}

/// Options for synthesis and verification.
#[derive(Clone, Copy, Debug)]
pub struct DistOpts {
    /// Points sampled per diagram when a carrier is too large to enumerate.
    pub points: usize,
    pub seed: u64,
    pub apply: ApplyOpts,
    /// Representatives evaluated per class in the well-definedness check.
    pub reps: usize,
}

impl Default for DistOpts {
    fn default() -> Self {
        DistOpts { points: 200, seed: 41, apply: ApplyOpts::default(), reps: 4 }
    }
}

/// Build `delta` for an operad and a monad, checking the substructural
/// commutativity precondition on the given carrier first.
pub fn synth_delta(
    o: &OperadSpec,
    t: &MonadSpec,
    x: &Carrier,
    check_precondition: bool,
) -> Result<Delta> {
    let w = o.w;
    if check_precondition {
        let opts = CommOpts { samples: 80, ..Default::default() };
        let rep = check_w_commutative(t, w, x, o.amax.min(3), &opts)?;
        if !rep.pass() {
            let wit = rep
                .witness
                .map(|cw| format!(" (witness: alpha={}, inputs={:?})", cw.alpha, cw.inputs))
                .unwrap_or_default();
            return Err(Error::Refusal(format!(
                "{} is not {w}-commutative on {}{wit}",
                t.name, x.name
            )));
        }
    }
    let cm = Arc::new(CoendMonad::new(o.clone(), o.amax)?);
    let s = MonadSpec { name: cm.name.clone(), kind: MonadKind::Induced(cm.clone()) };
    Ok(Delta { w, s, cm, t: t.clone() })
}

impl Delta {
    /// Evaluate the law on one element of `S T X`: combine the tuple of
    /// `T`-elements through the n-ary monoidal map, then push the canonical
    /// class formation under `T`.
    pub fn eval(&self, v: &Val) -> Result<Val> {
        match v {
            Val::Coend(cv) => {
                let n = cv.arity();
                let combined = psi_n(&self.t, &cv.args)?;
                try_map(&self.t, &combined, |xs| {
                    let parts = power_components(xs, n);
                    Ok(Val::Coend(Box::new(self.cm.canonicalize(&cv.op, &parts)?)))
                })
            }
            other => Err(Error::InvalidValue(format!("delta expects a coend element, got {other}"))),
        }
    }

    /// Evaluate on several representatives of the class and demand equal
    /// outputs.
    pub fn eval_all_representatives(&self, v: &Val, reps: usize) -> Result<Vec<Val>> {
        match v {
            Val::Coend(cv) => {
                let members = self.cm.class_members(cv, reps.max(1))?;
                members
                    .into_iter()
                    .map(|m| self.eval(&Val::Coend(Box::new(m))))
                    .collect()
            }
            other => Err(Error::InvalidValue(format!("not a coend element: {other}"))),
        }
    }
}

/// Verdicts of the four compatibility squares plus well-definedness.
#[derive(Clone, Debug, Serialize)]
pub struct DistLawReport {
    pub verbal: String,
    pub operad: String,
    pub monad_s: String,
    pub monad_t: String,
    pub carrier: String,
    /// Which assumption backs compatibility with the second monad's
    /// multiplication: "commutative", "small-operad", or "none".
    pub side_condition: String,
    pub mode: Mode,
    pub lines: Vec<LawLine>,
    pub untested: usize,
}

impl DistLawReport {
    pub fn verdict(&self) -> Verdict {
        self.lines.iter().fold(Verdict::Pass, |acc, l| acc.and(l.verdict))
    }

    pub fn pass(&self) -> bool {
        self.verdict().passed()
    }

    pub fn line(&self, law: &str) -> Option<&LawLine> {
        self.lines.iter().find(|l| l.law == law)
    }
}

fn val_size(v: &Val) -> usize {
    match v {
        Val::Atom(_) | Val::Exc(_) => 1,
        Val::Tuple(vs) | Val::Seq(vs) => 1 + vs.iter().map(val_size).sum::<usize>(),
        Val::Pure(b) => 1 + val_size(b),
        Val::Pair(_, b) => 2 + val_size(b),
        Val::Weighted(ps) => 1 + ps.iter().map(|(v, _)| 1 + val_size(v)).sum::<usize>(),
        Val::Coend(cv) => 1 + cv.args.iter().map(val_size).sum::<usize>(),
    }
}

/// Order inputs small-first so the first counterexample found is already the
/// greedily minimized one; the order is deterministic.
fn sorted_inputs(carrier: &Carrier, points: usize, seed: u64) -> Vec<Val> {
    let mut elems = carrier.elems.clone();
    elems.sort_by(|a, b| val_size(a).cmp(&val_size(b)).then(a.cmp(b)));
    if elems.len() > points {
        // keep a deterministic spread biased towards small elements
        let mut rng = Rng::seeded(seed);
        let mut kept: Vec<Val> = elems.iter().take(points / 2).cloned().collect();
        while kept.len() < points {
            kept.push(elems[rng.below(elems.len())].clone());
        }
        kept.sort_by(|a, b| val_size(a).cmp(&val_size(b)).then(a.cmp(b)));
        kept.dedup();
        kept
    } else {
        elems
    }
}

/// Total arity of the inner elements of a coend-over-coend value; joining it
/// stays within `bound` exactly when this does.
fn inner_arity_total(v: &Val) -> Option<usize> {
    match v {
        Val::Coend(cv) => {
            let mut total = 0usize;
            for a in &cv.args {
                match a {
                    Val::Coend(inner) => total += inner.arity(),
                    _ => return None,
                }
            }
            Some(total)
        }
        _ => None,
    }
}

/// Verify the four compatibility squares of the candidate law pointwise, and
/// its independence from the choice of class representatives.
pub fn verify_beck(delta: &Delta, x: &Carrier, opts: &DistOpts) -> Result<DistLawReport> {
    let s = &delta.s;
    let t = &delta.t;
    let ap = |seed: u64| ApplyOpts { seed, ..opts.apply };

    let tx = t.apply(x, &ap(opts.seed));
    let stx = s.apply(&tx, &ap(opts.seed + 1));
    let sx = s.apply(x, &ap(opts.seed + 2));
    let ttx = t.apply(&tx, &ap(opts.seed + 3));
    let sstx = s.apply(&stx, &ap(opts.seed + 4));
    let sttx = s.apply(&ttx, &ap(opts.seed + 5));
    let exhaustive = [&tx, &stx, &sx, &ttx, &sstx, &sttx].iter().all(|c| c.exhaustive);

    let mut untested = 0usize;
    let mut lines = Vec::new();

    // well-definedness: every representative of a class maps to the same
    // output
    let mut witness = None;
    let mut checked = 0usize;
    for v in sorted_inputs(&stx, opts.points, opts.seed + 6) {
        checked += 1;
        let outs = delta.eval_all_representatives(&v, opts.reps)?;
        if outs.windows(2).any(|w| w[0] != w[1]) {
            witness = Some(format!("class {v} has representative-dependent outputs {outs:?}"));
            break;
        }
    }
    lines.push(line("delta.well_defined", checked, witness));

    // compatibility with the unit of S: delta(unit_S(e)) = T(unit_S)(e)
    let mut witness = None;
    let mut checked = 0usize;
    for e in sorted_inputs(&tx, opts.points, opts.seed + 7) {
        checked += 1;
        let lhs = delta.eval(&s.unit(&e))?;
        let rhs = t.map(&mut |v| s.unit(v), &e);
        if lhs != rhs {
            witness = Some(format!("at {e}: {lhs} vs {rhs}"));
            break;
        }
    }
    lines.push(line("beck.eta_s", checked, witness));

    // compatibility with the multiplication of S
    let mut witness = None;
    let mut checked = 0usize;
    for phi in sorted_inputs(&sstx, opts.points, opts.seed + 8) {
        match inner_arity_total(&phi) {
            Some(total) if total <= delta.cm.bound => {}
            _ => {
                untested += 1;
                continue;
            }
        }
        checked += 1;
        let lhs = delta.eval(&s.join(&phi)?)?;
        let pushed = try_map(s, &phi, |inner| delta.eval(inner))?;
        let outer = delta.eval(&pushed)?;
        let rhs = try_map(t, &outer, |ss| s.join(ss))?;
        if lhs != rhs {
            witness = Some(format!("at {phi}: {lhs} vs {rhs}"));
            break;
        }
    }
    lines.push(line("beck.mu_s", checked, witness));

    // compatibility with the unit of T: delta(S(unit_T)(e)) = unit_T(e)
    let mut witness = None;
    let mut checked = 0usize;
    for e in sorted_inputs(&sx, opts.points, opts.seed + 9) {
        checked += 1;
        let lifted = s.map(&mut |v| t.unit(v), &e);
        let lhs = delta.eval(&lifted)?;
        let rhs = t.unit(&e);
        if lhs != rhs {
            witness = Some(format!("at {e}: {lhs} vs {rhs}"));
            break;
        }
    }
    lines.push(line("beck.eta_t", checked, witness));

    // compatibility with the multiplication of T
    let mut witness = None;
    let mut checked = 0usize;
    for psi_elem in sorted_inputs(&sttx, opts.points, opts.seed + 10) {
        checked += 1;
        let joined = try_map(s, &psi_elem, |tt| t.join(tt))?;
        let lhs = delta.eval(&joined)?;
        let step = delta.eval(&psi_elem)?; // in T S T X
        let pushed = try_map(t, &step, |st| delta.eval(st))?; // in T T S X
        let rhs = t.join(&pushed)?;
        if lhs != rhs {
            witness = Some(format!("at {psi_elem}: {lhs} vs {rhs}"));
            break;
        }
    }
    lines.push(line("beck.mu_t", checked, witness));

    // which assumption backs the last square
    let comm =
        predicate_commutative(t, x, &CommOpts { samples: 60, ..Default::default() })?.pass();
    let small = {
        let mut small = true;
        for n in 2..=delta.cm.bound {
            match delta.cm.op.elems(n) {
                Ok(es) => {
                    if !es.elems.is_empty() || !es.exhaustive {
                        small = false;
                        break;
                    }
                }
                Err(_) => break,
            }
        }
        small
    };
    let side_condition =
        if comm { "commutative" } else if small { "small-operad" } else { "none" }.to_string();

    Ok(DistLawReport {
        verbal: delta.w.to_string(),
        operad: delta.cm.op.name.clone(),
        monad_s: s.name.clone(),
        monad_t: t.name.clone(),
        carrier: x.name.clone(),
        side_condition,
        mode: if exhaustive {
            Mode::Exhaustive
        } else {
            Mode::Sampled { samples: opts.points, seed: opts.seed }
        },
        lines,
        untested,
    })
}

fn line(law: &str, checked: usize, witness: Option<String>) -> LawLine {
    LawLine {
        law: law.into(),
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        checked,
        witness,
    }
}

/// Change-of-base invariance: the law built over the small category equals,
/// through the canonical embedding of induced monads, the law built from the
/// extended operad over the large category.
pub fn verify_invariance(
    o: &OperadSpec,
    w_big: VerbalCat,
    t: &MonadSpec,
    x: &Carrier,
    opts: &DistOpts,
) -> Result<LawLine> {
    let ext = extend(o, w_big)?;
    let d_small = synth_delta(o, t, x, true)?;
    let d_big = synth_delta(&ext, t, x, true)?;
    let tx = t.apply(x, &opts.apply);
    let stx = d_small.s.apply(&tx, &ApplyOpts { seed: opts.seed + 1, ..opts.apply });
    let mut witness = None;
    let mut checked = 0usize;
    for v in sorted_inputs(&stx, opts.points, opts.seed + 2) {
        checked += 1;
        let lhs_small = d_small.eval(&v)?;
        // push the result into the extension-induced monad under T
        let lhs = try_map(t, &lhs_small, |sv| embed_into_extension(&d_big.cm, sv))?;
        let v_big = embed_into_extension(&d_big.cm, &v)?;
        let rhs = d_big.eval(&v_big)?;
        if lhs != rhs {
            witness = Some(format!("at {v}: {lhs} vs {rhs}"));
            break;
        }
    }
    Ok(line("delta.base_invariance", checked, witness))
}

/// The four verbal categories the diagnosis ranges over, smallest first.
pub fn diamond() -> Vec<VerbalCat> {
    vec![VerbalCat::Fbij, VerbalCat::Finj, VerbalCat::Fsurj, VerbalCat::F]
}

fn diamond_leq(a: VerbalCat, b: VerbalCat) -> bool {
    a.subcategory_of(&b)
}

/// A constructive operadicity witness for a zoo monad at a verbal category,
/// when the library has one. `None` means "no witness in the library",
/// never "not operadic".
pub fn operadicity_witness(monad: &str, w: VerbalCat, amax: usize) -> Option<OperadSpec> {
    let base: Option<OperadSpec> = match monad {
        "pfin" => Some(terminal_operad(VerbalCat::Fsurj, amax)),
        "pfin+" => {
            Some(full_support_operad(crate::algebra::builtin_semiring("bool").ok()?, true, 6, amax))
        }
        "dist" => Some(distribution_operad(6, amax)),
        "valuation" => {
            Some(full_support_operad(crate::algebra::builtin_semiring("qnonneg").ok()?, false, 6, amax))
        }
        "multiset" => Some(terminal_operad(VerbalCat::Fbij, amax)),
        "iv" => Some(monoid0_action_operad(
            crate::algebra::builtin_monoid0("qnonneg-mult0").ok()?,
            amax,
        )),
        "list" => Some(terminal_operad(VerbalCat::Fid, amax)),
        "maybe" => Some(exception_operad(1, amax)),
        _ => {
            if let Some(k) = monad.strip_prefix("exception:") {
                Some(exception_operad(k.parse().ok()?, amax))
            } else if let Some(m) = monad.strip_prefix("writer:") {
                Some(writer_operad(crate::algebra::builtin_monoid(m).ok()?, amax))
            } else if let Some(m) = monad.strip_prefix("multiset:monoid-semiring:") {
                Some(monoid_action_operad(crate::algebra::builtin_monoid(m).ok()?, amax))
            } else if let Some(k) = monad.strip_prefix("reader:") {
                let s = builtin_monad(&format!("reader:{k}")).ok()?;
                if w == VerbalCat::F {
                    return Some(monad_to_operad(&s, VerbalCat::F, amax));
                }
                None
            } else {
                None
            }
        }
    };
    let base = base?;
    if base.w == w {
        Some(base)
    } else if base.w.subcategory_of(&w) {
        extend(&base, w).ok()
    } else if monad == "iv" && w == VerbalCat::Fbij {
        // indexed valuations happen to be presentable over bijections too
        Some(monoid_action_operad(crate::algebra::builtin_monoid("qpos-mult").ok()?, amax))
    } else {
        None
    }
}

/// One row of the diagnosis diamond.
#[derive(Clone, Debug, Serialize)]
pub struct DiamondEntry {
    pub verbal: String,
    /// Name of the witnessing operad, when the library has one.
    pub operadicity: Option<String>,
    pub t_commutative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagnosisReport {
    pub monad_s: String,
    pub monad_t: String,
    pub entries: Vec<DiamondEntry>,
    pub intersection: Vec<String>,
    /// Consistency of the evidence across the diamond: operadicity upward,
    /// commutativity downward.
    pub consistent: bool,
    pub suggestion: Option<String>,
    /// Verification of the law (direct or refined) when one was synthesized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<DistLawReport>,
}

/// Fill the diamond for a pair of monads, report the intersection, and when
/// it is empty propose (and optionally verify) refining the first monad at
/// the largest category where the second is still commutative.
pub fn diagnose(
    s: &MonadSpec,
    t: &MonadSpec,
    x: &Carrier,
    amax: usize,
    apply_suggestion: bool,
    opts: &DistOpts,
) -> Result<DiagnosisReport> {
    let comm_opts = CommOpts { samples: 100, seed: opts.seed, ..Default::default() };
    let mut entries = Vec::new();
    let mut witnesses: Vec<Option<OperadSpec>> = Vec::new();
    let mut comm: Vec<bool> = Vec::new();
    for w in diamond() {
        let wit = operadicity_witness(&s.name, w, amax);
        let c = check_w_commutative(t, w, x, 2, &comm_opts)?.pass();
        entries.push(DiamondEntry {
            verbal: w.to_string(),
            operadicity: wit.as_ref().map(|o| o.name.clone()),
            t_commutative: c,
        });
        witnesses.push(wit);
        comm.push(c);
    }
    // consistency across the diamond
    let ws = diamond();
    let mut consistent = true;
    for i in 0..ws.len() {
        for j in 0..ws.len() {
            if diamond_leq(ws[i], ws[j]) {
                if witnesses[i].is_some() && witnesses[j].is_none() {
                    consistent = false; // operadicity must be upward-closed
                }
                if comm[j] && !comm[i] {
                    consistent = false; // commutativity must be downward-closed
                }
            }
        }
    }
    let intersection: Vec<String> = ws
        .iter()
        .zip(witnesses.iter().zip(comm.iter()))
        .filter(|(_, (wit, c))| wit.is_some() && **c)
        .map(|(w, _)| w.to_string())
        .collect();

    let mut suggestion = None;
    let mut law = None;
    if intersection.is_empty() {
        // the largest diamond element where T is still commutative
        let best = ws
            .iter()
            .zip(comm.iter())
            .filter(|(_, c)| **c)
            .map(|(w, _)| *w)
            .fold(None::<VerbalCat>, |acc, w| match acc {
                None => Some(w),
                Some(prev) => {
                    if diamond_leq(prev, w) {
                        Some(w)
                    } else {
                        Some(prev)
                    }
                }
            });
        match best {
            Some(wstar) => {
                suggestion = Some(format!("refine {} at {wstar}", s.name));
                if apply_suggestion {
                    let refined_op = monad_to_operad(s, wstar, amax);
                    let delta = synth_delta(&refined_op, t, x, true)?;
                    law = Some(verify_beck(&delta, x, opts)?);
                }
            }
            None => {
                suggestion = None;
            }
        }
    } else if apply_suggestion {
        // synthesize the direct law at the smallest member of the
        // intersection
        let w = ws
            .iter()
            .zip(witnesses.iter().zip(comm.iter()))
            .find(|(_, (wit, c))| wit.is_some() && **c)
            .map(|(w, _)| *w)
            .unwrap();
        let o = operadicity_witness(&s.name, w, amax).unwrap();
        let delta = synth_delta(&o, t, x, true)?;
        law = Some(verify_beck(&delta, x, opts)?);
    }

    Ok(DiagnosisReport {
        monad_s: s.name.clone(),
        monad_t: t.name.clone(),
        entries,
        intersection,
        consistent,
        suggestion,
        law,
    })
}

/// Pointwise check of the writer-effect law over the bijection-refined
/// powerset: the law must multiply out all written values, used or not, and
/// keep the process count.
pub fn check_refined_writer_law(
    monoid_name: &str,
    x: &Carrier,
    opts: &DistOpts,
) -> Result<LawLine> {
    let m = crate::algebra::builtin_monoid(monoid_name)?;
    let pfin = builtin_monad("pfin")?;
    let t = builtin_monad(&format!("writer:{monoid_name}"))?;
    let s = refine(&pfin, VerbalCat::Fbij, 4)?;
    let cm = match &s.kind {
        MonadKind::Induced(cm) => cm.clone(),
        _ => unreachable!(),
    };
    let delta = Delta { w: VerbalCat::Fbij, s: s.clone(), cm, t: t.clone() };
    let tx = t.apply(x, &opts.apply);
    let stx = s.apply(&tx, &ApplyOpts { seed: opts.seed + 3, ..opts.apply });
    let mut checked = 0usize;
    let mut witness = None;
    for v in sorted_inputs(&stx, opts.points, opts.seed + 4) {
        checked += 1;
        let got = delta.eval(&v)?;
        // expected per the closed form: collect the written values in tuple
        // order, multiply, and strip them from the class
        let expected = match &v {
            Val::Coend(cv) => {
                let mut acc = m.unit.clone();
                let mut stripped = Vec::with_capacity(cv.arity());
                for a in &cv.args {
                    match a {
                        Val::Pair(mv, xv) => {
                            acc = m.op(&acc, mv);
                            stripped.push((**xv).clone());
                        }
                        other => {
                            return Err(Error::InvalidValue(format!(
                                "writer element expected, got {other}"
                            )))
                        }
                    }
                }
                let class = delta.cm.canonicalize(&cv.op, &stripped)?;
                Val::Pair(acc, Box::new(Val::Coend(Box::new(class))))
            }
            _ => unreachable!(),
        };
        if got != expected {
            witness = Some(format!("at {v}: {got} vs {expected}"));
            break;
        }
    }
    Ok(line("delta.refined_writer_closed_form", checked, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::coend::CoendVal;
    use crate::operads::monoid_operad;

    fn a(i: usize) -> Val {
        Val::atom(i)
    }

    fn opts_small() -> DistOpts {
        DistOpts { points: 60, ..Default::default() }
    }

    #[test]
    fn delta_on_units_is_trivial() {
        // (writer operad, any T) via the strength: delta(unit_S(e)) = T eta
        let o = writer_operad(crate::algebra::builtin_monoid("cyclic2").unwrap(), 4);
        let t = builtin_monad("pfin").unwrap();
        let x = Carrier::of_size(2);
        let d = synth_delta(&o, &t, &x, true).unwrap();
        let tx = t.apply(&x, &ApplyOpts::default());
        for e in &tx.elems {
            let lhs = d.eval(&d.s.unit(e)).unwrap();
            let rhs = t.map(&mut |v| d.s.unit(v), e);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn archetypal_ring_distribution() {
        // S = lists presented over bijections, T = integer combinations:
        // (v+2w)(x+3y+z) distributes to vx+3vy+vz+2wx+6wy+2wz
        let o = extend(&terminal_operad(VerbalCat::Fid, 4), VerbalCat::Fbij).unwrap();
        let t = builtin_monad("multiset:int").unwrap();
        let sr = t.semiring().unwrap().clone();
        let x = Carrier::of_size(5); // v, w, x, y, z as atoms 0..4
        let d = synth_delta(&o, &t, &x, true).unwrap();
        let (v, w, xx, y, z) = (a(0), a(1), a(2), a(3), a(4));
        let t0 = Val::weighted(
            vec![(v.clone(), Scalar::Int(1)), (w.clone(), Scalar::Int(2))],
            &sr,
        );
        let t1 = Val::weighted(
            vec![(xx.clone(), Scalar::Int(1)), (y.clone(), Scalar::Int(3)), (z.clone(), Scalar::Int(1))],
            &sr,
        );
        // the binary word applied to (t0, t1)
        let p2 = d.cm.op.ext_of(2, &crate::operads::OpElem::Unit).unwrap();
        let input = Val::Coend(Box::new(CoendVal { op: p2.clone(), args: vec![t0, t1] }));
        let got = d.eval(&input).unwrap();
        let lst = |u: &Val, vv: &Val| {
            Val::Coend(Box::new(
                d.cm.canonicalize(&p2, &[u.clone(), vv.clone()]).unwrap(),
            ))
        };
        let expected = Val::weighted(
            vec![
                (lst(&v, &xx), Scalar::Int(1)),
                (lst(&v, &y), Scalar::Int(3)),
                (lst(&v, &z), Scalar::Int(1)),
                (lst(&w, &xx), Scalar::Int(2)),
                (lst(&w, &y), Scalar::Int(6)),
                (lst(&w, &z), Scalar::Int(2)),
            ],
            &sr,
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn beck_positive_writer_over_pfin() {
        // side condition: operations of arity <= 1 only
        let o = writer_operad(crate::algebra::builtin_monoid("leftzero").unwrap(), 4);
        let t = builtin_monad("pfin").unwrap();
        let x = Carrier::of_size(2);
        let d = synth_delta(&o, &t, &x, true).unwrap();
        let rep = verify_beck(&d, &x, &opts_small()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.lines);
        assert_eq!(rep.side_condition, "small-operad");
    }

    #[test]
    fn beck_positive_multiset_over_dist() {
        let o = extend(&terminal_operad(VerbalCat::Fbij, 3), VerbalCat::Finj).unwrap();
        let t = builtin_monad("dist").unwrap();
        let x = Carrier::of_size(2);
        let d = synth_delta(&o, &t, &x, true).unwrap();
        let rep = verify_beck(&d, &x, &DistOpts { points: 40, ..Default::default() }).unwrap();
        assert!(rep.pass(), "{:#?}", rep.lines);
        assert_eq!(rep.side_condition, "commutative");
    }

    #[test]
    fn beck_negative_list_over_list() {
        // eta_s, mu_s, eta_t hold; mu_t fails with a small witness
        let o = terminal_operad(VerbalCat::Fid, 4);
        let t = builtin_monad("list").unwrap();
        let x = Carrier::of_size(2);
        let d = synth_delta(&o, &t, &x, true).unwrap();
        let rep = verify_beck(&d, &x, &DistOpts { points: 400, ..Default::default() }).unwrap();
        assert_eq!(rep.side_condition, "none");
        for law in ["delta.well_defined", "beck.eta_s", "beck.mu_s", "beck.eta_t"] {
            assert_eq!(rep.line(law).unwrap().verdict, Verdict::Pass, "{law}");
        }
        let mu_t = rep.line("beck.mu_t").unwrap();
        assert_eq!(mu_t.verdict, Verdict::Fail, "no law of lists over lists");
    }

    #[test]
    fn invariance_under_change_of_base() {
        let o = terminal_operad(VerbalCat::Fbij, 3);
        let t = builtin_monad("dist").unwrap();
        let x = Carrier::of_size(2);
        let line =
            verify_invariance(&o, VerbalCat::Finj, &t, &x, &DistOpts { points: 40, ..Default::default() })
                .unwrap();
        assert_eq!(line.verdict, Verdict::Pass, "{:?}", line.witness);
    }

    #[test]
    fn diagnosis_dist_over_pfin_is_empty() {
        let s = builtin_monad("dist").unwrap();
        let t = builtin_monad("pfin").unwrap();
        let x = Carrier::of_size(2);
        let rep = diagnose(&s, &t, &x, 3, false, &opts_small()).unwrap();
        assert!(rep.intersection.is_empty());
        assert!(rep.consistent);
        assert_eq!(rep.suggestion.as_deref(), Some("refine dist at Fbij"));
        // the diamond: dist has witnesses at Fsurj and F only; pfin is
        // commutative at Fbij only
        let by_w: std::collections::HashMap<&str, &DiamondEntry> =
            rep.entries.iter().map(|e| (e.verbal.as_str(), e)).collect();
        assert!(by_w["Fbij"].operadicity.is_none());
        assert!(by_w["Fsurj"].operadicity.is_some());
        assert!(by_w["F"].operadicity.is_some());
        assert!(by_w["Fbij"].t_commutative);
        assert!(!by_w["Finj"].t_commutative);
    }

    #[test]
    fn diagnosis_iv_over_pfin_plus_is_nonempty() {
        let s = builtin_monad("iv").unwrap();
        let t = builtin_monad("pfin+").unwrap();
        let x = Carrier::of_size(2);
        let rep = diagnose(&s, &t, &x, 3, false, &opts_small()).unwrap();
        assert!(rep.intersection.contains(&"Finj".to_string()), "{:?}", rep.intersection);
    }

    #[test]
    fn monoid_operad_delta_over_reader() {
        // a words operad over all functions, against the reader monad
        let o = monoid_operad(VerbalCat::F, 2, 3);
        let t = builtin_monad("reader:2").unwrap();
        let x = Carrier::of_size(2);
        let d = synth_delta(&o, &t, &x, true).unwrap();
        let rep = verify_beck(&d, &x, &DistOpts { points: 25, ..Default::default() }).unwrap();
        assert!(rep.pass(), "{:#?}", rep.lines);
    }
}
