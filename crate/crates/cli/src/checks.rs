//! Named verification checks over the alternating-sum machinery.
//!
//! Each check is a pure function of a [`SampleSpec`]; randomized checks
//! draw from a ChaCha stream salted with the check name, so results are
//! reproducible for a given seed regardless of selection or ordering.
//! Checks that demonstrate a *predicted* breakdown return
//! [`Verdict::ExpectedFail`] when the breakdown reproduces — that counts
//! as a pass for the suite.

use std::time::Instant;

use crate::parse::{parse_field, parse_op, parse_poly};
use crate::report::{CheckReport, RawOutcome};
use crate::sample::{self, Domain, SampleSpec};
use ncomm_core::diffop::{d12, potential, DiffOp, VField};
use ncomm_core::formulas::{pr2_s3, pr2_s4, pr2_s5, s5_closed, s6_closed, s6_div_decomposition};
use ncomm_core::grading::{escort_of, support_tuples, vanishing_bound, EscortTable};
use ncomm_core::identities::{
    coboundary, homotopical_sum, left_commutativity_sum, leibniz_gap, scan_first_order_witness,
};
use ncomm_core::poly::Poly;
use ncomm_core::rat::Rat;
use ncomm_core::skewsum::{
    adjoint_skewsum, s_k, s_k_cup_split, s_k_fields, s_k_naive, sign_of_indices, EvalStrategy,
    ProductMode,
};
use ncomm_core::superdiff::{OddDerivation, SuperPoly};
use ncomm_core::tensor::{coproduct_mixed_term, pair_key, split_tensor_sum};
use rand_chacha::ChaCha8Rng;

/// A named check with a one-line description.
pub struct CheckDef {
    pub name: &'static str,
    pub about: &'static str,
    pub run: fn(&SampleSpec) -> RawOutcome,
}

/// Run a check and wrap its outcome with wall time.
pub fn run_check(def: &CheckDef, spec: &SampleSpec) -> CheckReport {
    let start = Instant::now();
    let raw = (def.run)(spec);
    CheckReport::from_raw(def.name, raw, start.elapsed().as_millis())
}

pub fn find(name: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|d| d.name == name)
}

pub fn registry() -> &'static [CheckDef] {
    REGISTRY
}

// ---------------------------------------------------------------------------
// small helpers

fn fld(text: &str) -> VField {
    parse_field(text, Some(2)).expect("fixture field")
}

fn op(text: &str) -> DiffOp {
    parse_op(text, Some(2)).expect("fixture operator")
}

fn as_ops(fields: &[VField]) -> Vec<DiffOp> {
    fields.iter().map(VField::as_op).collect()
}

fn dp(fields: &[VField]) -> DiffOp {
    s_k_fields(fields, EvalStrategy::SubsetDp)
}

fn rsym(fields: &[VField]) -> DiffOp {
    s_k(&as_ops(fields), ProductMode::RsymLeftNormed, EvalStrategy::RsymRecursion)
}

fn show_tuple(fields: &[VField]) -> String {
    let parts: Vec<String> = fields.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join("; "))
}

/// Sample count scaled off the spec baseline with a structural floor.
fn scaled(spec: &SampleSpec, num: usize, den: usize, min: usize) -> usize {
    (spec.samples * num / den).max(min)
}

fn vect_tuple(rng: &mut ChaCha8Rng, k: usize, n: usize, deg: usize) -> Vec<VField> {
    sample::tuple(rng, k, |r| sample::rand_field(r, n, deg))
}

fn divfree_tuple(rng: &mut ChaCha8Rng, k: usize, deg: usize) -> Vec<VField> {
    sample::tuple(rng, k, |r| sample::rand_divfree(r, deg))
}

// ---------------------------------------------------------------------------
// evaluation and closed forms

fn chk_worked_example(_spec: &SampleSpec) -> RawOutcome {
    let tup: Vec<VField> = ["d1", "d2", "x1*d2", "x1*d1-x2*d2", "x2^2*d1"]
        .iter()
        .map(|t| fld(t))
        .collect();
    let want = op("6*d1");
    let naive = s_k_fields(&tup, EvalStrategy::NaivePermutations);
    if naive != want {
        return RawOutcome::fail(1, format!("permutation sum gave {naive}"));
    }
    let rec = rsym(&tup);
    if rec != want {
        return RawOutcome::fail(2, format!("right-symmetric recursion gave {rec}"));
    }
    let us: Vec<Poly> = tup.iter().map(|x| potential(x).expect("divergence-free")).collect();
    let det = s5_closed(&[us[0].clone(), us[1].clone(), us[2].clone(), us[3].clone(), us[4].clone()]);
    if det.as_op() != want {
        return RawOutcome::fail(3, format!("determinant route gave {det}"));
    }
    RawOutcome::pass(3)
        .with_notes("permutation sum, right-symmetric recursion, and determinant route all return 6*d1".into())
}

fn chk_commutator_arity_two(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("commutator-arity-two");
    let count = spec.count(10);
    for i in 0..count {
        let x = sample::rand_field(&mut rng, spec.n, spec.deg);
        let y = sample::rand_field(&mut rng, spec.n, spec.deg);
        let s2 = dp(&[x.clone(), y.clone()]);
        if s2 != x.as_op().commutator(&y.as_op()) || s2 != x.bracket(&y).as_op() {
            return RawOutcome::fail(i + 1, format!("arity-2 sum is not the commutator on {}", show_tuple(&[x, y])));
        }
    }
    RawOutcome::pass(count)
}

fn chk_hamiltonian_correspondence(spec: &SampleSpec) -> RawOutcome {
    if d12(&parse_poly("x2", Some(2)).unwrap()) != fld("-d1") {
        return RawOutcome::fail(1, "d12(x2) != -d1".into());
    }
    if potential(&fld("d1")) != Ok(parse_poly("-x2", Some(2)).unwrap()) {
        return RawOutcome::fail(2, "potential(d1) != -x2".into());
    }
    if potential(&fld("x2^2*d1")) != Ok(parse_poly("-1/3*x2^3", Some(2)).unwrap()) {
        return RawOutcome::fail(3, "potential(x2^2*d1) != -1/3*x2^3".into());
    }
    let mut rng = spec.rng("hamiltonian-correspondence");
    let count = spec.count(25);
    for i in 0..count {
        let x = sample::rand_divfree(&mut rng, spec.deg);
        let u = match potential(&x) {
            Ok(u) => u,
            Err(e) => return RawOutcome::fail(i + 4, format!("potential failed on {x}: {e:?}")),
        };
        if d12(&u) != x {
            return RawOutcome::fail(i + 4, format!("d12(potential({x})) != {x}"));
        }
    }
    RawOutcome::pass(count + 3)
}

fn chk_s5_well_defined(spec: &SampleSpec) -> RawOutcome {
    // On the divergence-free subalgebra the alternating 5-fold sum is a
    // first-order operator; on all planar fields it picks up a second-order
    // part, with a specific quadratic residual on a linear 5-tuple.
    let gl_tuple: Vec<VField> =
        ["d1", "d2", "x1*d1", "x2*d1", "x1*d2"].iter().map(|t| fld(t)).collect();
    let residual = op("-d1*d2");
    let vect_value = dp(&gl_tuple);
    let vect_breaks = vect_value == residual && !vect_value.is_first_order();

    match spec.domain {
        Some(Domain::Vect) => {
            if vect_breaks {
                RawOutcome::expected_fail(
                    1,
                    format!(
                        "s5{} = {vect_value}, second order; with the divergence correction the residual is -3*d1*d2",
                        show_tuple(&gl_tuple)
                    ),
                )
            } else {
                RawOutcome::fail(1, format!("expected the second-order residual -d1*d2, got {vect_value}"))
            }
        }
        _ => {
            let mut rng = spec.rng("s5-well-defined");
            let count = spec.count(50);
            for i in 0..count {
                let tup = divfree_tuple(&mut rng, 5, spec.deg);
                let v = dp(&tup);
                if !v.is_first_order() {
                    return RawOutcome::fail(
                        i + 1,
                        format!("non-first-order value {v} on divergence-free tuple {}", show_tuple(&tup)),
                    );
                }
            }
            if spec.domain.is_none() && !vect_breaks {
                return RawOutcome::fail(
                    count,
                    format!("expected the unrestricted counterexample -d1*d2, got {vect_value}"),
                );
            }
            RawOutcome::pass(count).with_notes(
                "first-order on divergence-free tuples; on all planar fields the linear 5-tuple (d1; d2; x1*d1; x2*d1; x1*d2) leaves the second-order residual -d1*d2".into(),
            )
        }
    }
}

fn chk_s6_well_defined(spec: &SampleSpec) -> RawOutcome {
    let witness: Vec<VField> =
        ["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x1^2*d1"].iter().map(|t| fld(t)).collect();
    if dp(&witness) != op("-2*d2") {
        return RawOutcome::fail(1, format!("witness sextuple gave {}", dp(&witness)));
    }
    let mut rng = spec.rng("s6-well-defined");
    let count = spec.count(50);
    for i in 0..count {
        let tup = vect_tuple(&mut rng, 6, 2, spec.deg);
        let v = dp(&tup);
        if !v.is_first_order() {
            return RawOutcome::fail(i + 1, format!("non-first-order value {v} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count + 1)
        .with_notes("first-order on all planar sextuples; nonzero witness value -2*d2".into())
}

/// Shared body for the identically-zero checks: exhaustive sweep over the
/// graded support representatives plus random tuples.
fn zero_identity(spec: &SampleSpec, k: usize, divfree: bool, salt: &str) -> RawOutcome {
    let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
    let table = match escort_of(&psi, k, 2, divfree) {
        Ok(t) => t,
        Err(e) => return RawOutcome::fail(0, format!("support sweep hit a non-graded value: {e:?}")),
    };
    if let Some((keys, value)) = table.entries.iter().next() {
        let names: Vec<String> = keys.iter().map(|b| format!("{b}")).collect();
        return RawOutcome::fail(0, format!("nonzero value {value} on ({})", names.join("; ")));
    }
    let swept = support_tuples(k, 2, divfree, true).1.len();
    let mut rng = spec.rng(salt);
    let count = scaled(spec, 2, 1, 100);
    // the permutation count, not the coefficient degree, is what these
    // arities stress; taper degree so arity 8 stays affordable
    let deg = if k >= 8 { spec.deg.min(2) } else { spec.deg.min(3) };
    for i in 0..count {
        let tup = if divfree {
            divfree_tuple(&mut rng, k, deg)
        } else {
            vect_tuple(&mut rng, k, 2, deg)
        };
        let v = dp(&tup);
        if !v.is_zero() {
            return RawOutcome::fail(i + 1, format!("nonzero value {v} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(swept + count)
        .with_notes(format!("{swept} support representatives swept exhaustively; {count} random tuples"))
}

fn chk_s6_zero_divfree(spec: &SampleSpec) -> RawOutcome {
    zero_identity(spec, 6, true, "s6-zero-divfree")
}

fn chk_s7_zero(spec: &SampleSpec) -> RawOutcome {
    zero_identity(spec, 7, false, "s7-zero")
}

fn chk_s8_zero(spec: &SampleSpec) -> RawOutcome {
    zero_identity(spec, 8, false, "s8-zero")
}

fn chk_closed_s5(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("closed-s5");
    let count = scaled(spec, 2, 1, 100);
    let pdeg = spec.deg.min(4) + 1;
    for i in 0..count {
        let us: Vec<Poly> = (0..5).map(|_| sample::rand_poly_rich(&mut rng, 2, pdeg, 2)).collect();
        let fields: Vec<VField> = us.iter().map(d12).collect();
        let want = s_k_fields(&fields, EvalStrategy::NaivePermutations);
        let arr = [us[0].clone(), us[1].clone(), us[2].clone(), us[3].clone(), us[4].clone()];
        let got = s5_closed(&arr).as_op();
        if got != want || dp(&fields) != want {
            return RawOutcome::fail(
                i + 1,
                format!("determinant form gave {got}, permutation sum {want} on {}", show_tuple(&fields)),
            );
        }
    }
    RawOutcome::pass(count).with_notes(format!("potentials of degree <= {pdeg}"))
}

fn chk_closed_s6(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("closed-s6");
    let count = scaled(spec, 2, 1, 100);
    let deg = spec.deg.min(2);
    let mut nonzero = 0usize;
    for i in 0..count {
        // weight toward the graded sector with nonzero values; the k!
        // reference makes generic degree-2 tuples 10x more expensive
        let tup = if i % 5 == 4 {
            sample::tuple(&mut rng, 6, |r| sample::rand_field_lean(r, 2, deg))
        } else {
            sample::rand_sextuple_weighted(&mut rng)
        };
        let want = s_k_fields(&tup, EvalStrategy::NaivePermutations);
        let arr: [VField; 6] = core::array::from_fn(|j| tup[j].clone());
        let got = s6_closed(&arr).as_op();
        if got != want || dp(&tup) != want {
            return RawOutcome::fail(i + 1, format!("determinant form gave {got}, permutation sum {want} on {}", show_tuple(&tup)));
        }
        if !want.is_zero() {
            nonzero += 1;
        }
    }
    RawOutcome::pass(count)
        .with_notes(format!("nonzero values on {nonzero} of {count} sextuples"))
}

fn chk_div_decomposition(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("div-decomposition");
    let count = scaled(spec, 2, 1, 100);
    let deg = spec.deg.min(2);
    for i in 0..count {
        let tup = if i % 5 == 4 {
            sample::tuple(&mut rng, 6, |r| sample::rand_field_lean(r, 2, deg))
        } else {
            sample::rand_sextuple_weighted(&mut rng)
        };
        let arr: [VField; 6] = core::array::from_fn(|j| tup[j].clone());
        let got = s6_div_decomposition(&arr).as_op();
        let want = s_k_fields(&tup, EvalStrategy::NaivePermutations);
        if got != want {
            return RawOutcome::fail(i + 1, format!("divergence decomposition gave {got}, permutation sum {want} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
}

fn chk_residual_control(_spec: &SampleSpec) -> RawOutcome {
    let a = dp(&["d1", "d2", "x1*d1", "x2*d1", "x1*d2"].map(fld));
    if a != op("-d1*d2") {
        return RawOutcome::fail(1, format!("5-fold sum on the linear tuple gave {a}"));
    }
    let s4_swapped = dp(&["d1", "d2", "x2*d1", "x2*d2"].map(fld));
    if !s4_swapped.is_zero() {
        return RawOutcome::fail(2, format!("s4(d1;d2;x2*d1;x2*d2) = {s4_swapped}, expected 0"));
    }
    let s4 = dp(&["d1", "d2", "x2*d1", "x1*d2"].map(fld));
    if s4 != op("2*d1*d2") {
        return RawOutcome::fail(3, format!("s4(d1;d2;x2*d1;x1*d2) = {s4}, expected 2*d1*d2"));
    }
    let div = fld("x1*d1").divergence();
    let corrected = &a - &s4.pscale(&div);
    if corrected != op("-3*d1*d2") {
        return RawOutcome::fail(4, format!("corrected residual = {corrected}, expected -3*d1*d2"));
    }
    let literal = &a - &s4_swapped.pscale(&div);
    if literal != op("-d1*d2") {
        return RawOutcome::fail(5, format!("uncorrected residual = {literal}"));
    }
    RawOutcome::pass(5).with_notes(
        "with the 4-tuple (d1; d2; x2*d1; x1*d2) the divergence-weighted difference is exactly -3*d1*d2; replacing the last entry by x2*d2 kills the 4-fold sum and leaves -d1*d2".into(),
    )
}

fn pr2_check(
    spec: &SampleSpec,
    k: usize,
    salt: &str,
    f: fn(&[VField]) -> DiffOp,
) -> RawOutcome {
    let mut rng = spec.rng(salt);
    let count = scaled(spec, 2, 1, 100);
    let deg = if k >= 5 { spec.deg.min(2) } else { spec.deg.min(3) };
    for i in 0..count {
        let tup = vect_tuple(&mut rng, k, 2, deg);
        let got = f(&tup);
        let want = s_k_fields(&tup, EvalStrategy::NaivePermutations).pr(2);
        if got != want {
            return RawOutcome::fail(i + 1, format!("second-order projection formula gave {got}, direct value {want} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
}

fn chk_pr2_s3(spec: &SampleSpec) -> RawOutcome {
    pr2_check(spec, 3, "pr2-s3", |t| pr2_s3(&[t[0].clone(), t[1].clone(), t[2].clone()]))
}

fn chk_pr2_s4(spec: &SampleSpec) -> RawOutcome {
    pr2_check(spec, 4, "pr2-s4", |t| {
        pr2_s4(&[t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone()])
    })
}

fn chk_pr2_s5(spec: &SampleSpec) -> RawOutcome {
    pr2_check(spec, 5, "pr2-s5", |t| {
        pr2_s5(&[t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone(), t[4].clone()])
    })
}

// ---------------------------------------------------------------------------
// product-mode comparisons

fn chk_rsym_equality_s5_divfree(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("rsym-equality-s5-divfree");
    let count = spec.count(50);
    for i in 0..count {
        let tup = divfree_tuple(&mut rng, 5, spec.deg);
        if dp(&tup) != rsym(&tup) {
            return RawOutcome::fail(i + 1, format!("modes disagree on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
}

fn chk_rsym_equality_s6(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("rsym-equality-s6");
    let count = spec.count(50);
    for i in 0..count {
        let tup = vect_tuple(&mut rng, 6, 2, spec.deg);
        if dp(&tup) != rsym(&tup) {
            return RawOutcome::fail(i + 1, format!("modes disagree on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
}

fn chk_rsym_s5_quadratic_gap(spec: &SampleSpec) -> RawOutcome {
    // On unrestricted planar quintuples the two modes differ, but only from
    // order two upward.
    let gl_tuple: Vec<VField> =
        ["d1", "d2", "x1*d1", "x2*d1", "x1*d2"].iter().map(|t| fld(t)).collect();
    let a = dp(&gl_tuple);
    let b = rsym(&gl_tuple);
    if a == b {
        return RawOutcome::fail(1, "expected the modes to differ on the linear quintuple".into());
    }
    let mut rng = spec.rng("rsym-s5-quadratic-gap");
    let count = scaled(spec, 2, 5, 20);
    let mut differing = 1usize;
    for i in 0..count {
        let tup = vect_tuple(&mut rng, 5, 2, spec.deg);
        let a = dp(&tup);
        let b = rsym(&tup);
        if a.pr(0) != b.pr(0) || a.pr(1) != b.pr(1) {
            return RawOutcome::fail(i + 2, format!("low-order parts disagree on {}", show_tuple(&tup)));
        }
        if a != b {
            differing += 1;
        }
    }
    RawOutcome::pass(count + 1).with_notes(format!(
        "orders 0 and 1 agree everywhere; full values differed on {differing} of {} tuples",
        count + 1
    ))
}

// ---------------------------------------------------------------------------
// derivation rules

fn chk_leibniz_composition(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("leibniz-composition");
    let count = spec.count(50);
    for i in 0..count {
        // force the quadratic-coefficient case first: the rule needs no
        // affineness restriction in composition mode
        let x = if i == 0 { fld("x1^2*d1") } else { sample::rand_field(&mut rng, 2, spec.deg) };
        let k = 3 + (i % 3);
        let tup = vect_tuple(&mut rng, k, 2, spec.deg);
        let gap = leibniz_gap(&x, &tup, ProductMode::Composition);
        if !gap.is_zero() {
            return RawOutcome::fail(i + 1, format!("gap {gap} for X = {x} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
        .with_notes("the bracket acts as a derivation of the full alternating sum for arbitrary X, quadratic coefficients included".into())
}

fn chk_leibniz_rsym_affine(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("leibniz-rsym-affine");
    let count = spec.count(50);
    for i in 0..count {
        let x = sample::rand_affine(&mut rng, 2);
        let k = 3 + (i % 3);
        let tup = vect_tuple(&mut rng, k, 2, spec.deg);
        let gap = leibniz_gap(&x, &tup, ProductMode::RsymLeftNormed);
        if !gap.is_zero() {
            return RawOutcome::fail(i + 1, format!("gap {gap} for affine X = {x} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
}

fn chk_leibniz_rsym_nonaffine(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("leibniz-rsym-nonaffine");
    let x = fld("x1^2*d1");
    let count = scaled(spec, 2, 5, 20);
    for i in 0..count {
        let tup = vect_tuple(&mut rng, 4, 2, spec.deg);
        let gap = leibniz_gap(&x, &tup, ProductMode::RsymLeftNormed);
        if !gap.is_zero() {
            return RawOutcome::expected_fail(
                i + 1,
                format!("X = x1^2*d1: derivation gap {gap} on {}", show_tuple(&tup)),
            );
        }
    }
    RawOutcome::fail(
        count,
        "the right-symmetric derivation rule held for quadratic X on every sample; a breakdown was predicted".into(),
    )
}

// ---------------------------------------------------------------------------
// adjoint sums

fn chk_ad_s5(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("ad-s5");
    let count = spec.count(50);
    let deg = spec.deg.max(2);
    let mut nonzero = 0usize;
    for i in 0..count {
        let x0 = sample::rand_divfree(&mut rng, deg);
        let tup = divfree_tuple(&mut rng, 5, deg);
        let lhs = adjoint_skewsum(&x0, &tup);
        let s5 = match VField::from_op(&dp(&tup)) {
            Some(v) => v,
            None => return RawOutcome::fail(i + 1, format!("5-fold sum not first order on {}", show_tuple(&tup))),
        };
        if lhs != x0.bracket(&s5) {
            return RawOutcome::fail(
                i + 1,
                format!("iterated-bracket sum {} != [X0, s5] for X0 = {x0} on {}", lhs, show_tuple(&tup)),
            );
        }
        if !lhs.is_zero() {
            nonzero += 1;
        }
    }
    if nonzero == 0 {
        return RawOutcome::fail(count, "all samples were trivially zero — sampler degenerate".into());
    }
    RawOutcome::pass(count)
        .with_notes(format!("iterated-bracket sum equals the bracket against the 5-fold value; nonzero on {nonzero} of {count} samples"))
}

fn basis5() -> Vec<VField> {
    ["d1", "d2", "x2*d1", "x1*d1-x2*d2", "x1*d2"].iter().map(|t| fld(t)).collect()
}

fn basis6() -> Vec<VField> {
    ["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x2*d2"].iter().map(|t| fld(t)).collect()
}

fn chk_f5_closed_form(spec: &SampleSpec) -> RawOutcome {
    let basis = basis5();
    let mut rng = spec.rng("f5-closed-form");
    let count = spec.count(30);
    for i in 0..count {
        let x0 = if i % 4 == 0 {
            sample::rand_divfree(&mut rng, spec.deg)
        } else {
            sample::rand_field_rich(&mut rng, 2, spec.deg)
        };
        let got = adjoint_skewsum(&x0, &basis);
        let want = d12(&x0.divergence()).scale(&Rat::int(-6));
        if got != want {
            return fail_adjoint(i, &x0, &got, &want);
        }
    }
    RawOutcome::pass(count).with_notes(
        "over the quadratic divergence-free basis the adjoint quintuple sum is -6 times the Hamiltonian field of the divergence; in particular it vanishes on divergence-free arguments".into(),
    )
}

fn fail_adjoint(i: usize, x0: &VField, got: &VField, want: &VField) -> RawOutcome {
    RawOutcome::fail(i + 1, format!("adjoint sum on X0 = {x0} gave {got}, expected {want}"))
}

fn chk_f6_obstruction(spec: &SampleSpec) -> RawOutcome {
    let basis = basis6();
    let mut rng = spec.rng("f6-obstruction");
    let count = spec.count(30);
    for i in 0..count {
        let x0 = if i % 3 == 0 {
            sample::rand_affine(&mut rng, 2)
        } else {
            sample::rand_field_rich(&mut rng, 2, spec.deg)
        };
        let got = adjoint_skewsum(&x0, &basis);
        let want = d12(&x0.divergence()).scale(&Rat::int(-6));
        if got != want {
            return fail_adjoint(i, &x0, &got, &want);
        }
    }
    let pinned = adjoint_skewsum(&fld("x1^2*x2*d1"), &basis);
    if pinned != fld("12*x1*d1-12*x2*d2") {
        return RawOutcome::fail(count + 1, format!("obstruction witness gave {pinned}"));
    }
    RawOutcome::pass(count + 1).with_notes(
        "the adjoint sextuple sum over the affine basis equals -6 times the Hamiltonian field of the divergence — a second-order operator in the argument's coefficients: it kills every affine field yet sends x1^2*x2*d1 to 12*x1*d1-12*x2*d2".into(),
    )
}

// ---------------------------------------------------------------------------
// nested alternating sums and coboundaries

fn chk_left_comm_s5(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("left-comm-s5");
    let count = scaled(spec, 2, 5, 20);
    let deg = spec.deg.min(2);
    let mut inner_nonzero = 0usize;
    for i in 0..count {
        let tup = sample::tuple(&mut rng, 9, |r| sample::rand_divfree_lean(r, deg));
        let v = left_commutativity_sum(5, &as_ops(&tup));
        if !v.is_zero() {
            return RawOutcome::fail(i + 1, format!("nonzero nested sum {v} on {}", show_tuple(&tup)));
        }
        if !dp(&tup[..5]).is_zero() {
            inner_nonzero += 1;
        }
    }
    if inner_nonzero == 0 {
        return RawOutcome::fail(count, "every inner 5-fold value sampled was zero — the identity was never exercised".into());
    }
    RawOutcome::pass(count).with_notes(format!(
        "70-term shuffle-reduced outer sum over 9 divergence-free arguments; nonzero inner values on {inner_nonzero} of {count} samples"
    ))
}

fn chk_left_comm_s6(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("left-comm-s6");
    let count = scaled(spec, 1, 5, 10);
    let deg = spec.deg.min(2);
    let mut inner_nonzero = 0usize;
    for i in 0..count {
        let tup = sample::tuple(&mut rng, 11, |r| sample::rand_field_lean(r, 2, deg));
        let v = left_commutativity_sum(6, &as_ops(&tup));
        if !v.is_zero() {
            return RawOutcome::fail(i + 1, format!("nonzero nested sum {v} on {}", show_tuple(&tup)));
        }
        if !dp(&tup[..6]).is_zero() {
            inner_nonzero += 1;
        }
    }
    if inner_nonzero == 0 {
        return RawOutcome::fail(count, "every inner 6-fold value sampled was zero — the identity was never exercised".into());
    }
    RawOutcome::pass(count).with_notes(format!(
        "252-term shuffle-reduced outer sum over 11 planar arguments; nonzero inner values on {inner_nonzero} of {count} samples"
    ))
}

fn chk_homotopical_jacobi(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("homotopical-jacobi");
    let count = spec.count(50);
    for i in 0..count {
        let tup = vect_tuple(&mut rng, 3, spec.n, spec.deg);
        let v = homotopical_sum(2, &as_ops(&tup));
        if !v.is_zero() {
            return RawOutcome::fail(i + 1, format!("Jacobi-type sum {v} on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(count)
}

fn chk_cocycle_s5(spec: &SampleSpec) -> RawOutcome {
    let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
    let mut rng = spec.rng("cocycle-s5");
    let count = scaled(spec, 2, 5, 20);
    for i in 0..count {
        let args = divfree_tuple(&mut rng, 6, spec.deg.min(3));
        let parts = coboundary(&psi, &args);
        if !parts.bracket_part.is_zero() || !parts.action_part.is_zero() {
            return RawOutcome::fail(i + 1, format!("coboundary parts nonzero on {}", show_tuple(&args)));
        }
    }
    RawOutcome::pass(count)
        .with_notes("both the pairwise-bracket half and the action half vanish separately on divergence-free arguments".into())
}

fn chk_cocycle_s6(spec: &SampleSpec) -> RawOutcome {
    let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
    let mut rng = spec.rng("cocycle-s6");
    let count = scaled(spec, 2, 5, 20);
    for i in 0..count {
        let args = vect_tuple(&mut rng, 7, 2, spec.deg.min(2));
        let parts = coboundary(&psi, &args);
        if !parts.bracket_part.is_zero() || !parts.action_part.is_zero() {
            return RawOutcome::fail(i + 1, format!("coboundary parts nonzero on {}", show_tuple(&args)));
        }
        if !parts.combination(2, 1).is_zero() || !parts.total().is_zero() {
            return RawOutcome::fail(i + 1, "combined coboundaries nonzero".into());
        }
    }
    RawOutcome::pass(count).with_notes(
        "both halves vanish separately on planar 7-tuples, hence so do the total and the (2,1)-weighted combination".into(),
    )
}

fn chk_rsym_coboundary_ladder(spec: &SampleSpec) -> RawOutcome {
    let psi4 = |fs: &[VField]| s_k(&as_ops(fs), ProductMode::RsymLeftNormed, EvalStrategy::RsymRecursion);
    let mut rng = spec.rng("rsym-coboundary-ladder");
    let count = scaled(spec, 2, 5, 20);
    for i in 0..count {
        let args5 = vect_tuple(&mut rng, 5, 2, spec.deg.min(3));
        let even = coboundary(&psi4, &args5).bracket_part;
        if !even.is_zero() {
            return RawOutcome::fail(i + 1, format!("even-arity bracket coboundary nonzero: {even}"));
        }
        let args6 = vect_tuple(&mut rng, 6, 2, spec.deg.min(3));
        let odd = coboundary(&psi4, &args6).bracket_part;
        let next = rsym(&args6);
        if &odd + &next != DiffOp::zero(2) {
            return RawOutcome::fail(i + 1, format!("bracket coboundary of the 5-sum is not minus the 6-sum on {}", show_tuple(&args6)));
        }
    }
    RawOutcome::pass(count * 2).with_notes(
        "in right-symmetric mode the pairwise-bracket coboundary kills the even-arity sum and sends the odd-arity sum to minus the next one".into(),
    )
}

// ---------------------------------------------------------------------------
// tensor-square structure

fn g5_tuple() -> Vec<VField> {
    ["d1", "d2", "x1*d1-x2*d2", "x2*d1", "x1*d2"].iter().map(|t| fld(t)).collect()
}

fn chk_primitivity_g5(_spec: &SampleSpec) -> RawOutcome {
    let g = split_tensor_sum(&g5_tuple());
    let expect: [(&[u8], &[u8], &[u8], &[u8], i64); 10] = [
        (&[1, 0], &[0, 0], &[0, 1], &[0, 0], -4),
        (&[0, 1], &[0, 0], &[1, 0], &[0, 0], -4),
        (&[0, 1], &[0, 0], &[2, 0], &[1, 0], -2),
        (&[0, 1], &[0, 0], &[1, 1], &[0, 1], -4),
        (&[1, 1], &[0, 0], &[1, 0], &[1, 0], 4),
        (&[1, 1], &[0, 0], &[0, 1], &[0, 1], -4),
        (&[1, 0], &[1, 0], &[1, 1], &[0, 0], 4),
        (&[2, 0], &[1, 0], &[0, 1], &[0, 0], -2),
        (&[0, 1], &[0, 1], &[1, 1], &[0, 0], -4),
        (&[1, 1], &[0, 1], &[0, 1], &[0, 0], -4),
    ];
    if g.num_terms() != 10 {
        return RawOutcome::fail(1, format!("split tensor sum has {} terms, expected 10", g.num_terms()));
    }
    for (da, ea, db, eb, c) in expect {
        if g.coeff(&pair_key(da, ea, db, eb)) != Rat::int(c) {
            return RawOutcome::fail(1, format!("split tensor sum disagrees with the 10-term fixture:\n{g}"));
        }
    }
    let mixed = coproduct_mixed_term(&g5_tuple());
    let all_pm6 = mixed.terms().all(|(_, c)| c.abs() == Rat::int(6));
    if mixed.num_terms() != 16 || !all_pm6 || mixed.flip() != mixed {
        return RawOutcome::fail(2, format!("direct coproduct mixed term malformed:\n{mixed}"));
    }
    RawOutcome::pass(2).with_notes(
        "unsigned subset-split sum matches the 10-term fixture; the direct coproduct mixed term is a different tensor: 16 terms, all coefficients ±6, symmetric under swapping legs".into(),
    )
}

fn chk_primitivity_g6(_spec: &SampleSpec) -> RawOutcome {
    let tup: Vec<VField> =
        ["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x1^2*d1"].iter().map(|t| fld(t)).collect();
    let g = split_tensor_sum(&tup);
    if g.coeff(&pair_key(&[1, 1], &[0, 0], &[2, 0], &[3, 0])) != Rat::int(1) {
        return RawOutcome::fail(1, format!("coefficient of d1*d2 (x) x1^3*d1^2 is {}, expected 1", g.coeff(&pair_key(&[1, 1], &[0, 0], &[2, 0], &[3, 0]))));
    }
    if g.num_terms() != 36 {
        return RawOutcome::fail(2, format!("split tensor sum has {} terms, expected 36", g.num_terms()));
    }
    let mixed = coproduct_mixed_term(&tup);
    RawOutcome::pass(2).with_notes(format!(
        "subset-split sum has 36 terms with the marked coefficient 1; the direct coproduct mixed term has {} terms",
        mixed.num_terms()
    ))
}

// ---------------------------------------------------------------------------
// graded support tables

type EscortFixture = (&'static [&'static str], &'static str);

const ESCORT5: &[EscortFixture] = &[
    (&["d1", "d2", "x2*d1", "x1*d1-x2*d2", "x1^2*d2"], "6*d2"),
    (&["d1", "d2", "x2*d1", "x1*d1-x2*d2", "x1^2*d1-2*x1*x2*d2"], "6*d1"),
    (&["d1", "d2", "x2*d1", "x1*d2", "x1^2*d1-2*x1*x2*d2"], "-6*d2"),
    (&["d1", "d2", "x2*d1", "x1*d2", "x2^2*d2-2*x1*x2*d1"], "-6*d1"),
    (&["d1", "d2", "x1*d1-x2*d2", "x1*d2", "x2^2*d2-2*x1*x2*d1"], "-6*d2"),
    (&["d1", "d2", "x1*d1-x2*d2", "x1*d2", "x2^2*d1"], "-6*d1"),
];

const ESCORT6: &[EscortFixture] = &[
    (&["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x1^2*d1"], "-2*d2"),
    (&["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x1*x2*d1"], "2*d1"),
    (&["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x1*x2*d2"], "2*d2"),
    (&["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x2^2*d2"], "-2*d1"),
    (&["d1", "d2", "x2*d2", "x2*d1", "x1*d2", "x1^2*d1"], "-2*d2"),
    (&["d1", "d2", "x2*d2", "x2*d1", "x1*d2", "x1*x2*d1"], "2*d1"),
    (&["d1", "d2", "x2*d2", "x2*d1", "x1*d2", "x1*x2*d2"], "2*d2"),
    (&["d1", "d2", "x2*d2", "x2*d1", "x1*d2", "x2^2*d2"], "-2*d1"),
    (&["d1", "d2", "x1*d1", "x2*d1", "x2*d2", "x1^2*d1"], "-2*d1"),
    (&["d1", "d2", "x1*d1", "x2*d1", "x2*d2", "x1*x2*d2"], "2*d1"),
    (&["d1", "d2", "x1*d1", "x2*d1", "x2*d2", "x1^2*d2"], "-6*d2"),
    (&["d1", "d2", "x1*d1", "x1*d2", "x2*d2", "x1*x2*d1"], "2*d2"),
    (&["d1", "d2", "x1*d1", "x1*d2", "x2*d2", "x2^2*d1"], "-6*d1"),
    (&["d1", "d2", "x1*d1", "x1*d2", "x2*d2", "x2^2*d2"], "-2*d2"),
];

/// Compare a computed support table against a fixed list of (tuple, value)
/// pairs, matching tuples as unordered sets and adjusting the value's sign
/// by the permutation between the stored and listed orders.
fn compare_escort(table: &EscortTable, fixture: &[EscortFixture]) -> Result<(), String> {
    if table.entries.len() != fixture.len() {
        return Err(format!("table has {} entries, expected {}", table.entries.len(), fixture.len()));
    }
    let entries: Vec<(Vec<VField>, VField)> = table
        .entries
        .iter()
        .map(|(keys, value)| {
            let fields = keys
                .iter()
                .map(|k| k.field(table.dim).expect("support keys denote fields"))
                .collect();
            (fields, value.clone())
        })
        .collect();
    let mut used = vec![false; entries.len()];
    for (texts, value_text) in fixture {
        let expect_fields: Vec<VField> = texts.iter().map(|t| fld(t)).collect();
        let expect_value = fld(value_text);
        let mut found = false;
        'entries: for (pos, (fields, value)) in entries.iter().enumerate() {
            if used[pos] || fields.len() != expect_fields.len() {
                continue;
            }
            // match as a set, recording the permutation
            let mut perm = Vec::with_capacity(fields.len());
            for f in fields {
                match expect_fields.iter().position(|e| e == f) {
                    Some(j) if !perm.contains(&j) => perm.push(j),
                    _ => continue 'entries,
                }
            }
            let sign = sign_of_indices(&perm);
            if *value != expect_value.scale(&Rat::int(sign)) {
                return Err(format!(
                    "value mismatch on ({}): computed {value}, listed {expect_value} with reordering sign {sign}",
                    texts.join("; ")
                ));
            }
            used[pos] = true;
            found = true;
            break;
        }
        if !found {
            return Err(format!("listed tuple ({}) missing from the computed table", texts.join("; ")));
        }
    }
    Ok(())
}

fn chk_escort_s5(spec: &SampleSpec) -> RawOutcome {
    let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
    let table = match escort_of(&psi, 5, 2, true) {
        Ok(t) => t,
        Err(e) => return RawOutcome::fail(0, format!("{e:?}")),
    };
    if let Err(msg) = compare_escort(&table, ESCORT5) {
        return RawOutcome::fail(ESCORT5.len(), msg);
    }
    let swept = support_tuples(5, 2, true, true).1.len();
    let mut rng = spec.rng("escort-s5");
    let count = spec.count(10).min(25);
    for i in 0..count {
        let tup = divfree_tuple(&mut rng, 5, spec.deg);
        if table.reconstruct(&tup).as_op() != dp(&tup) {
            return RawOutcome::fail(i + 1, format!("table reconstruction disagrees on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(swept + count).with_notes(format!(
        "all {swept} support representatives evaluated; exactly the 6 listed entries are nonzero and reconstruction matches direct evaluation"
    ))
}

fn chk_escort_s6(spec: &SampleSpec) -> RawOutcome {
    let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
    let table = match escort_of(&psi, 6, 2, false) {
        Ok(t) => t,
        Err(e) => return RawOutcome::fail(0, format!("{e:?}")),
    };
    if let Err(msg) = compare_escort(&table, ESCORT6) {
        return RawOutcome::fail(ESCORT6.len(), msg);
    }
    let swept = support_tuples(6, 2, false, true).1.len();
    let mut rng = spec.rng("escort-s6");
    let count = spec.count(10).min(25);
    for i in 0..count {
        let tup = vect_tuple(&mut rng, 6, 2, spec.deg);
        if table.reconstruct(&tup).as_op() != dp(&tup) {
            return RawOutcome::fail(i + 1, format!("table reconstruction disagrees on {}", show_tuple(&tup)));
        }
    }
    RawOutcome::pass(swept + count).with_notes(format!(
        "all {swept} support representatives evaluated; exactly the 14 listed entries are nonzero and reconstruction matches direct evaluation"
    ))
}

fn chk_vanishing_bounds(_spec: &SampleSpec) -> RawOutcome {
    let cases: Vec<(&str, Vec<u32>, u32, i64, u32, (i32, i64, i64))> = vec![
        ("divergence-free nested-5 arity", vec![2, 3, 4], 9, -1, 8, (0, 8, 9)),
        ("planar nested-6 arity", vec![2, 4, 6], 11, -1, 10, (0, 10, 12)),
    ];
    let mut samples = 0usize;
    for (what, dims, k, q, r, want) in cases {
        let b = match vanishing_bound(&dims, k, q, r) {
            Some(b) => b,
            None => return RawOutcome::fail(samples, format!("{what}: skew count not covered")),
        };
        if (b.i0, b.lhs, b.rhs, b.vanishes) != (want.0, want.1, want.2, true) {
            return RawOutcome::fail(
                samples,
                format!("{what}: got i0={} lhs={} rhs={} vanishes={}", b.i0, b.lhs, b.rhs, b.vanishes),
            );
        }
        samples += 1;
    }
    for n in 2u32..=5 {
        let k = n * n + 2 * n;
        let dims = [n, n * n, n * n * (n + 1) / 2];
        let b = match vanishing_bound(&dims, k, -1, k) {
            Some(b) => b,
            None => return RawOutcome::fail(samples, format!("n={n}: skew count not covered")),
        };
        let want_rhs = (k as i64) * 2 - 2 * n as i64 - (n * n) as i64;
        if (b.i0, b.lhs, b.rhs, b.vanishes) != (0, k as i64 - 1, want_rhs, true) {
            return RawOutcome::fail(
                samples,
                format!("n={n}: got i0={} lhs={} rhs={} vanishes={}", b.i0, b.lhs, b.rhs, b.vanishes),
            );
        }
        samples += 1;
    }
    RawOutcome::pass(samples).with_notes(
        "8 < 9 and 10 < 12 for the nested-sum arities; k-1 < k at the critical arity k = n^2+2n for n = 2..5".into(),
    )
}

// ---------------------------------------------------------------------------
// odd-derivation nilpotency

fn rand_odd_coefficient(rng: &mut ChaCha8Rng, n: usize, gens: usize, deg: usize) -> SuperPoly {
    loop {
        let mut u = SuperPoly::zero(n);
        for j in 0..gens {
            if rand::Rng::gen_bool(rng, 0.4) {
                let p = sample::rand_poly(rng, n, deg, 2);
                u = &u + &(&SuperPoly::from_poly(&p) * &SuperPoly::odd_gen(n, j));
            }
        }
        if !u.is_zero() {
            return u;
        }
    }
}

fn chk_nilpotency_d7(spec: &SampleSpec) -> RawOutcome {
    // deterministic witness: the polarized support sextuple drives a rank-6
    // power that is nonzero exactly once more than its rank-7 power
    let witness: Vec<VField> =
        ["d1", "d2", "x1*d1", "x2*d1", "x1*d2", "x1^2*d1"].iter().map(|t| fld(t)).collect();
    let d = OddDerivation::polarized(&witness);
    let f = SuperPoly::var(2, 1);
    let d6 = d.power_apply(6, &f);
    let mut expect = SuperPoly::constant(2, Rat::int(2));
    for j in 0..6 {
        expect = &expect * &SuperPoly::odd_gen(2, j);
    }
    if d6 != expect {
        return RawOutcome::fail(1, format!("sixth power on x2 gave {d6}, expected {expect}"));
    }
    if !d.power_apply(7, &f).is_zero() {
        return RawOutcome::fail(1, "seventh power nonzero on the witness".into());
    }
    // randomized seventh-power vanishing with eight odd generators
    let mut rng = spec.rng("nilpotency-d7");
    let count = scaled(spec, 2, 1, 100);
    let mut sixth_nonzero = 0usize;
    for i in 0..count {
        let coeffs = vec![
            rand_odd_coefficient(&mut rng, 2, 8, spec.deg.min(2)),
            rand_odd_coefficient(&mut rng, 2, 8, spec.deg.min(2)),
        ];
        let d = OddDerivation::new(coeffs);
        let f = SuperPoly::from_poly(&sample::rand_poly(&mut rng, 2, 3, 3));
        if !d.power_apply(7, &f).is_zero() {
            return RawOutcome::fail(i + 2, "seventh power nonzero on a random odd derivation".into());
        }
        if !d.power_apply(6, &f).is_zero() {
            sixth_nonzero += 1;
        }
    }
    RawOutcome::pass(count + 1).with_notes(format!(
        "seventh powers vanish on all {count} random odd derivations (8 generators, coefficient degree <= {}); sixth power nonzero on the deterministic witness and {sixth_nonzero} random samples",
        spec.deg.min(2)
    ))
}

fn chk_nilpotency_n1(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("nilpotency-n1");
    let count = spec.count(20);
    let mut two_gen_nonzero = 0usize;
    for i in 0..count {
        // one odd generator on the line: the square annihilates everything
        let u1 = loop {
            let p = sample::rand_poly(&mut rng, 1, 3, 2);
            if !p.is_zero() {
                break &SuperPoly::from_poly(&p) * &SuperPoly::odd_gen(1, 0);
            }
        };
        let d1 = OddDerivation::new(vec![u1]);
        let f = SuperPoly::from_poly(&sample::rand_poly(&mut rng, 1, 4, 2));
        if !d1.power_apply(2, &f).is_zero() {
            return RawOutcome::fail(i + 1, "square nonzero with a single generator on the line".into());
        }
        // two generators: squares are generically nonzero
        let u2 = rand_odd_coefficient(&mut rng, 1, 2, 3);
        let d2 = OddDerivation::new(vec![u2]);
        let x1 = SuperPoly::var(1, 0);
        if !d2.power_apply(2, &(&x1 * &x1)).is_zero() {
            two_gen_nonzero += 1;
        }
    }
    if two_gen_nonzero == 0 {
        return RawOutcome::fail(count, "no two-generator sample had a nonzero square — sampler degenerate".into());
    }
    RawOutcome::pass(count).with_notes(format!(
        "on the line the square of an odd derivation vanishes with one generator but not in general: nonzero on {two_gen_nonzero} of {count} two-generator samples"
    ))
}

// ---------------------------------------------------------------------------
// strategies and scans

fn chk_strategy_agreement(spec: &SampleSpec) -> RawOutcome {
    let mut rng = spec.rng("strategy-agreement");
    let per_k = scaled(spec, 1, 10, 3);
    let mut samples = 0usize;
    for k in 2..=7usize {
        // k! reference evaluations explode in both count and coefficient
        // size; taper degree and tuple count so the high arities stay honest
        // but affordable
        let (deg, reps, with_naive) = match k {
            _ if k <= 5 => (spec.deg.min(3), per_k, true),
            6 => (2, per_k.min(3), true),
            _ => (2, per_k.min(2), false),
        };
        for _ in 0..reps {
            let tup = vect_tuple(&mut rng, k, 2, deg);
            let ops = as_ops(&tup);
            let dp_v = s_k(&ops, ProductMode::Composition, EvalStrategy::SubsetDp);
            let cup_v = s_k_cup_split(&ops, (k / 2).max(1));
            if dp_v != cup_v {
                return RawOutcome::fail(samples + 1, format!("subset DP and shuffle split disagree at arity {k} on {}", show_tuple(&tup)));
            }
            if with_naive {
                let naive = s_k_naive(&ops, ProductMode::Composition);
                if naive != dp_v {
                    return RawOutcome::fail(samples + 1, format!("permutation sum and subset DP disagree at arity {k} on {}", show_tuple(&tup)));
                }
                let rn = s_k_naive(&ops, ProductMode::RsymLeftNormed);
                let rr = s_k(&ops, ProductMode::RsymLeftNormed, EvalStrategy::RsymRecursion);
                if rn != rr {
                    return RawOutcome::fail(samples + 1, format!("right-symmetric strategies disagree at arity {k} on {}", show_tuple(&tup)));
                }
            }
            samples += 1;
        }
    }
    RawOutcome::pass(samples).with_notes(
        "permutation sum == subset DP == shuffle split (naive reference through arity 6) and recursive right-symmetric == its permutation sum; arity 7 compares the polynomial-time strategies".into(),
    )
}

fn chk_conjecture_scan_n3(_spec: &SampleSpec) -> RawOutcome {
    let report = scan_first_order_witness(3, 13, false, 600);
    let witness = match report.witness {
        Some(w) => w,
        None => {
            return RawOutcome::fail(
                report.examined,
                format!("no witness among {} candidates (truncated: {})", report.examined, report.truncated),
            )
        }
    };
    if witness.value.is_zero() || !witness.value.is_first_order() {
        return RawOutcome::fail(report.examined, format!("witness value malformed: {}", witness.value));
    }
    if witness.value.coeff_degree() != Some(0) {
        return RawOutcome::fail(report.examined, format!("witness value has non-constant coefficients: {}", witness.value));
    }
    let ops = as_ops(&witness.fields);
    if s_k_cup_split(&ops, 6) != witness.value {
        return RawOutcome::fail(report.examined, "shuffle-split cross-check disagrees on the witness tuple".into());
    }
    let keys: Vec<String> = witness.keys.iter().map(|k| format!("{k}")).collect();
    RawOutcome::pass(report.examined).with_notes(format!(
        "13-fold alternating sum in three variables is nonzero: value {} on ({}) after {} candidates; shuffle-split evaluation agrees",
        witness.value,
        keys.join("; "),
        report.examined
    ))
}

fn chk_scan_sanity(_spec: &SampleSpec) -> RawOutcome {
    let planar = scan_first_order_witness(2, 6, false, 500);
    let witness = match planar.witness {
        Some(w) => w,
        None => return RawOutcome::fail(planar.examined, "no planar sextuple witness found".into()),
    };
    if witness.value != s_k_naive(&as_ops(&witness.fields), ProductMode::Composition) {
        return RawOutcome::fail(planar.examined, "witness value disagrees with the permutation sum".into());
    }
    let beyond = scan_first_order_witness(3, 15, false, 10);
    if beyond.examined != 0 || beyond.witness.is_some() || beyond.truncated {
        return RawOutcome::fail(
            planar.examined + beyond.examined,
            "expected zero candidates at arity 15 in three variables".into(),
        );
    }
    RawOutcome::pass(planar.examined).with_notes(format!(
        "planar arity-6 witness found after {} candidates; arity-15 enumeration in three variables is empty by grade bookkeeping",
        planar.examined
    ))
}

// ---------------------------------------------------------------------------

static REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: "worked-example",
        about: "the 5-fold alternating sum of a pinned quintuple equals 6*d1 by three evaluation routes",
        run: chk_worked_example,
    },
    CheckDef {
        name: "commutator-arity-two",
        about: "the arity-2 sum is the operator commutator and the field bracket",
        run: chk_commutator_arity_two,
    },
    CheckDef {
        name: "hamiltonian-correspondence",
        about: "divergence-free planar fields correspond to potentials: pinned values and round-trips",
        run: chk_hamiltonian_correspondence,
    },
    CheckDef {
        name: "s5-well-defined",
        about: "arity 5 stays first order on divergence-free tuples; unrestricted planar tuples break it (--domain vect shows the counterexample)",
        run: chk_s5_well_defined,
    },
    CheckDef {
        name: "s6-well-defined",
        about: "arity 6 stays first order on all planar tuples, with a nonzero pinned witness",
        run: chk_s6_well_defined,
    },
    CheckDef {
        name: "s6-zero-divfree",
        about: "arity 6 vanishes identically on divergence-free planar fields",
        run: chk_s6_zero_divfree,
    },
    CheckDef {
        name: "s7-zero",
        about: "arity 7 vanishes identically on planar fields",
        run: chk_s7_zero,
    },
    CheckDef {
        name: "s8-zero",
        about: "arity 8 vanishes identically on planar fields",
        run: chk_s8_zero,
    },
    CheckDef {
        name: "closed-s5",
        about: "determinant formula for arity 5 on potentials matches direct evaluation",
        run: chk_closed_s5,
    },
    CheckDef {
        name: "closed-s6",
        about: "fourteen-determinant formula for arity 6 matches direct evaluation",
        run: chk_closed_s6,
    },
    CheckDef {
        name: "div-decomposition",
        about: "divergence-weighted decomposition of the arity-6 sum matches direct evaluation",
        run: chk_div_decomposition,
    },
    CheckDef {
        name: "residual-control",
        about: "pinned second-order residual: the divergence-corrected linear quintuple leaves exactly -3*d1*d2",
        run: chk_residual_control,
    },
    CheckDef {
        name: "pr2-s3",
        about: "second-order projection formula for arity 3",
        run: chk_pr2_s3,
    },
    CheckDef {
        name: "pr2-s4",
        about: "second-order projection formula for arity 4",
        run: chk_pr2_s4,
    },
    CheckDef {
        name: "pr2-s5",
        about: "second-order projection formula for arity 5",
        run: chk_pr2_s5,
    },
    CheckDef {
        name: "rsym-equality-s5-divfree",
        about: "composition and right-symmetric modes agree at arity 5 on divergence-free tuples",
        run: chk_rsym_equality_s5_divfree,
    },
    CheckDef {
        name: "rsym-equality-s6",
        about: "composition and right-symmetric modes agree at arity 6 on planar tuples",
        run: chk_rsym_equality_s6,
    },
    CheckDef {
        name: "rsym-s5-quadratic-gap",
        about: "at arity 5 on unrestricted tuples the modes differ only from order 2 upward",
        run: chk_rsym_s5_quadratic_gap,
    },
    CheckDef {
        name: "leibniz-composition",
        about: "bracketing acts as a derivation of the composition-mode sum for arbitrary X",
        run: chk_leibniz_composition,
    },
    CheckDef {
        name: "leibniz-rsym-affine",
        about: "bracketing acts as a derivation of the right-symmetric sum for affine X",
        run: chk_leibniz_rsym_affine,
    },
    CheckDef {
        name: "leibniz-rsym-nonaffine",
        about: "the right-symmetric derivation rule breaks for quadratic X (predicted failure)",
        run: chk_leibniz_rsym_nonaffine,
    },
    CheckDef {
        name: "ad-s5",
        about: "iterated-bracket quintuple sum equals the bracket against the arity-5 value on divergence-free fields",
        run: chk_ad_s5,
    },
    CheckDef {
        name: "f5-closed-form",
        about: "adjoint quintuple sum over the quadratic divergence-free basis is -6 x Hamiltonian(divergence)",
        run: chk_f5_closed_form,
    },
    CheckDef {
        name: "f6-obstruction",
        about: "adjoint sextuple sum over the affine basis is a nonzero second-order operator in the argument",
        run: chk_f6_obstruction,
    },
    CheckDef {
        name: "left-comm-s5",
        about: "nested arity-5 alternating sums vanish over 9 divergence-free arguments",
        run: chk_left_comm_s5,
    },
    CheckDef {
        name: "left-comm-s6",
        about: "nested arity-6 alternating sums vanish over 11 planar arguments",
        run: chk_left_comm_s6,
    },
    CheckDef {
        name: "homotopical-jacobi",
        about: "the arity-2 nested alternation over 3 arguments is the Jacobi identity",
        run: chk_homotopical_jacobi,
    },
    CheckDef {
        name: "cocycle-s5",
        about: "both coboundary halves of the arity-5 sum vanish on divergence-free arguments",
        run: chk_cocycle_s5,
    },
    CheckDef {
        name: "cocycle-s6",
        about: "both coboundary halves of the arity-6 sum vanish on planar arguments",
        run: chk_cocycle_s6,
    },
    CheckDef {
        name: "rsym-coboundary-ladder",
        about: "bracket coboundary kills even right-symmetric sums and steps odd ones to minus the next",
        run: chk_rsym_coboundary_ladder,
    },
    CheckDef {
        name: "primitivity-g5",
        about: "subset-split tensor sum of the pinned quintuple matches the 10-term fixture; direct mixed term reported",
        run: chk_primitivity_g5,
    },
    CheckDef {
        name: "primitivity-g6",
        about: "subset-split tensor sum of the pinned sextuple carries d1*d2 (x) x1^3*d1^2 with coefficient 1",
        run: chk_primitivity_g6,
    },
    CheckDef {
        name: "escort-s5-divfree",
        about: "the six nonzero support values of the divergence-free arity-5 sum, entry for entry",
        run: chk_escort_s5,
    },
    CheckDef {
        name: "escort-s6",
        about: "the fourteen nonzero support values of the planar arity-6 sum, entry for entry",
        run: chk_escort_s6,
    },
    CheckDef {
        name: "vanishing-bounds",
        about: "grade-counting inequality instances: 8 < 9, 10 < 12, and the critical arity for n = 2..5",
        run: chk_vanishing_bounds,
    },
    CheckDef {
        name: "nilpotency-d7",
        about: "seventh powers of odd planar derivations vanish; sixth powers do not",
        run: chk_nilpotency_d7,
    },
    CheckDef {
        name: "nilpotency-n1",
        about: "on the line the square vanishes with one odd generator but not with two",
        run: chk_nilpotency_n1,
    },
    CheckDef {
        name: "strategy-agreement",
        about: "permutation sum, subset DP, shuffle split, and right-symmetric recursion agree for arities 2..7",
        run: chk_strategy_agreement,
    },
    CheckDef {
        name: "conjecture-scan-n3",
        about: "graded scan finds a nonzero first-order 13-fold value in three variables",
        run: chk_conjecture_scan_n3,
    },
    CheckDef {
        name: "scan-sanity",
        about: "the scan finds the planar arity-6 witness and sees no candidates at arity 15 in three variables",
        run: chk_scan_sanity,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_findable() {
        for (i, d) in REGISTRY.iter().enumerate() {
            assert!(find(d.name).is_some());
            for other in &REGISTRY[i + 1..] {
                assert_ne!(d.name, other.name);
            }
        }
        assert!(find("no-such-check").is_none());
    }

    #[test]
    fn cheap_fixture_checks_pass() {
        let spec = SampleSpec { samples: 5, ..SampleSpec::default() };
        for name in ["worked-example", "residual-control", "vanishing-bounds", "primitivity-g5", "primitivity-g6"] {
            let rep = run_check(find(name).unwrap(), &spec);
            assert!(rep.pass, "{name}: {:?}", rep.counterexample);
        }
    }

    #[test]
    fn domain_override_reproduces_the_predicted_failure() {
        let spec = SampleSpec { domain: Some(Domain::Vect), ..SampleSpec::default() };
        let rep = run_check(find("s5-well-defined").unwrap(), &spec);
        assert!(rep.pass);
        assert_eq!(rep.verdict, crate::report::Verdict::ExpectedFail);
        assert!(rep.counterexample.unwrap().contains("-3*d1*d2"));
    }
}
