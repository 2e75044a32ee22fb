//! Structural identities of the alternating operator sums: derivation-rule
//! gaps, left-commutativity sums, Chevalley–Eilenberg-style coboundaries,
//! and a basis scan for first-order values in higher dimension.
//!
//! Everything here is exact and deterministic; randomized sampling drivers
//! live in the companion command-line crate.

use alloc::vec::Vec;

use crate::diffop::{DiffOp, VField};
use crate::grading::{for_each_support_tuple, basis_upto, BasisKey};
use crate::rat::Rat;
use crate::skewsum::{
    for_each_combination, for_each_permutation, s_k_rsym_recursive, s_k_subset_dp,
    sign_of_indices, ProductMode,
};

fn s_k_in_mode(ops: &[DiffOp], mode: ProductMode) -> DiffOp {
    match mode {
        ProductMode::Composition => s_k_subset_dp(ops),
        ProductMode::RsymLeftNormed => s_k_rsym_recursive(ops),
    }
}

/// Defect of the derivation rule for the action of `x` on a k-tuple:
///
/// `[x, s_k(t₁,…,t_k)] − Σᵢ s_k(t₁,…,[x,tᵢ],…,t_k)`.
///
/// In composition mode this vanishes identically.  In the reduced
/// (symbol-truncated) mode it vanishes whenever `x` has affine
/// coefficients but not in general.
pub fn leibniz_gap(x: &VField, tuple: &[VField], mode: ProductMode) -> DiffOp {
    let ops: Vec<DiffOp> = tuple.iter().map(VField::as_op).collect();
    let s = s_k_in_mode(&ops, mode);
    let lhs = x.as_op().commutator(&s);
    let mut rhs = DiffOp::zero(s.dim());
    for i in 0..tuple.len() {
        let mut slot = ops.clone();
        slot[i] = x.bracket(&tuple[i]).as_op();
        rhs = &rhs + &s_k_in_mode(&slot, mode);
    }
    &lhs - &rhs
}

/// Shuffle-reduced left-commutativity sum for an alternating map of the
/// given arity `m + 1` applied to `2m + 1` operator arguments:
///
/// `Σ_S sign(S, S̄) · s(args_S, s(args_S̄, a_{2m+1}))`,
///
/// where S runs over the ascending m-element subsets of the first 2m
/// arguments.  Grouping the full sum over Sym_{2m} by the block partition
/// shows it equals this reduced sum times the positive factor (m!)², so
/// vanishing of one is vanishing of the other.
pub fn left_commutativity_sum(arity: usize, ops: &[DiffOp]) -> DiffOp {
    assert!(arity >= 2, "arity must be at least 2");
    let m = arity - 1;
    assert_eq!(ops.len(), 2 * m + 1, "need 2*(arity-1)+1 arguments");
    let dim = ops[0].dim();
    let mut total = DiffOp::zero(dim);
    for_each_combination(2 * m, m, |sel| {
        let rest: Vec<usize> = (0..2 * m).filter(|i| !sel.contains(i)).collect();
        let mut shuffled: Vec<usize> = sel.to_vec();
        shuffled.extend_from_slice(&rest);
        let sign = sign_of_indices(&shuffled);

        let mut inner_args: Vec<DiffOp> = rest.iter().map(|&i| ops[i].clone()).collect();
        inner_args.push(ops[2 * m].clone());
        let inner = s_k_subset_dp(&inner_args);

        let mut outer_args: Vec<DiffOp> = sel.iter().map(|&i| ops[i].clone()).collect();
        outer_args.push(inner);
        total = &total + &s_k_subset_dp(&outer_args).scale(&Rat::int(sign));
    });
    total
}

/// Fully antisymmetrized variant of [`left_commutativity_sum`]: the sum runs
/// over all of Sym_{2m+1}, with the last `m + 1` slots fed to the inner map.
/// At arity 2 this is (a multiple of) the Jacobi sum, hence zero on fields.
pub fn homotopical_sum(arity: usize, ops: &[DiffOp]) -> DiffOp {
    assert!(arity >= 2, "arity must be at least 2");
    let m = arity - 1;
    assert_eq!(ops.len(), 2 * m + 1, "need 2*(arity-1)+1 arguments");
    let dim = ops[0].dim();
    let mut total = DiffOp::zero(dim);
    for_each_permutation(2 * m + 1, |perm, sign| {
        let inner_args: Vec<DiffOp> = perm[m..].iter().map(|&i| ops[i].clone()).collect();
        let inner = s_k_subset_dp(&inner_args);
        let mut outer_args: Vec<DiffOp> = perm[..m].iter().map(|&i| ops[i].clone()).collect();
        outer_args.push(inner);
        total = &total + &s_k_subset_dp(&outer_args).scale(&Rat::int(sign));
    });
    total
}

/// The two halves of the Lie-algebra cochain differential of an alternating
/// k-linear operator-valued map ψ, evaluated on k+1 fields.
#[derive(Clone, Debug)]
pub struct CoboundaryParts {
    /// Σ_{i<j} (−1)^{i+j} ψ([Xᵢ,Xⱼ], X₀,…,X̂ᵢ,…,X̂ⱼ,…,X_k)  (0-based signs)
    pub bracket_part: DiffOp,
    /// Σ_i (−1)^i [Xᵢ, ψ(X₀,…,X̂ᵢ,…,X_k)]
    pub action_part: DiffOp,
}

impl CoboundaryParts {
    /// `a · bracket_part + b · action_part`.
    pub fn combination(&self, a: i64, b: i64) -> DiffOp {
        &self.bracket_part.scale(&Rat::int(a)) + &self.action_part.scale(&Rat::int(b))
    }

    /// The full differential `bracket_part + action_part`.
    pub fn total(&self) -> DiffOp {
        self.combination(1, 1)
    }
}

/// Evaluate both halves of the cochain differential of ψ on `args`
/// (ψ has arity `args.len() − 1`).
pub fn coboundary(psi: &dyn Fn(&[VField]) -> DiffOp, args: &[VField]) -> CoboundaryParts {
    assert!(args.len() >= 2, "need at least two fields");
    let dim = args[0].dim();
    let last = args.len() - 1;

    let mut bracket_part = DiffOp::zero(dim);
    for i in 0..=last {
        for j in (i + 1)..=last {
            let mut slot: Vec<VField> = Vec::with_capacity(last);
            slot.push(args[i].bracket(&args[j]));
            for (t, a) in args.iter().enumerate() {
                if t != i && t != j {
                    slot.push(a.clone());
                }
            }
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            bracket_part = &bracket_part + &psi(&slot).scale(&Rat::int(sign));
        }
    }

    let mut action_part = DiffOp::zero(dim);
    for i in 0..=last {
        let slot: Vec<VField> = args
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != i)
            .map(|(_, a)| a.clone())
            .collect();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        action_part = &action_part + &args[i].as_op().commutator(&psi(&slot)).scale(&Rat::int(sign));
    }

    CoboundaryParts { bracket_part, action_part }
}

/// A tuple of graded basis fields on which the alternating k-fold sum takes
/// a nonzero first-order value.
#[derive(Clone, Debug)]
pub struct ScanWitness {
    pub keys: Vec<BasisKey>,
    pub fields: Vec<VField>,
    pub value: DiffOp,
}

/// Outcome of [`scan_first_order_witness`].
#[derive(Clone, Debug)]
pub struct ScanReport {
    /// Number of candidate tuples actually evaluated.
    pub examined: usize,
    /// True when the enumeration was cut short by the candidate budget.
    pub truncated: bool,
    pub witness: Option<ScanWitness>,
}

/// Scan ascending tuples of graded basis fields of Vect(n) (or its
/// divergence-free subalgebra) for a nonzero value of the alternating
/// k-fold sum.  Only tuples whose grades sum to −1 and whose weight roots
/// sum to −εⱼ are candidates — on every other tuple the value either
/// vanishes or cannot be first order with constant coefficients — so the
/// enumeration is restricted to those.  Stops at the first witness or
/// after `max_candidates` evaluations.
pub fn scan_first_order_witness(
    n: usize,
    k: usize,
    divfree: bool,
    max_candidates: usize,
) -> ScanReport {
    let basis = basis_upto(n, k as i32 - 2, divfree);
    let mut examined = 0usize;
    let mut truncated = false;
    let mut witness: Option<ScanWitness> = None;
    for_each_support_tuple(&basis, k, true, |idx| {
        if examined == max_candidates {
            truncated = true;
            return false;
        }
        examined += 1;
        let fields: Vec<VField> = idx.iter().map(|&i| basis[i].field.clone()).collect();
        let ops: Vec<DiffOp> = fields.iter().map(VField::as_op).collect();
        let value = s_k_subset_dp(&ops);
        if value.is_zero() {
            return true;
        }
        witness = Some(ScanWitness {
            keys: idx.iter().map(|&i| basis[i].key.clone()).collect(),
            fields,
            value,
        });
        false
    });
    ScanReport { examined, truncated, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::skewsum::{s_k, EvalStrategy};

    fn pvar(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn planar(u: Poly, v: Poly) -> VField {
        VField::new(alloc::vec![u, v])
    }

    /// A fixed, not specially symmetric test tuple.
    fn mixed_tuple(k: usize) -> Vec<VField> {
        let mut out = Vec::new();
        let x1 = pvar(0);
        let x2 = pvar(1);
        let pool = [
            planar(Poly::one(2), Poly::zero(2)),
            planar(&x1 * &x2, x2.clone()),
            planar(x2.clone(), &x1 + &x2),
            planar(&x1 * &x1, Poly::one(2)),
            planar(x1.clone(), &x2 * &x2),
            planar(&(&x1 * &x1) * &x2, x1.clone()),
            planar(x2.clone(), &x2 * &x2),
        ];
        for i in 0..k {
            out.push(pool[i % pool.len()].clone());
        }
        out
    }

    #[test]
    fn composition_mode_satisfies_derivation_rule() {
        let x = planar(&pvar(0) * &pvar(0), pvar(1));
        let gap = leibniz_gap(&x, &mixed_tuple(4), ProductMode::Composition);
        assert!(gap.is_zero());
    }

    #[test]
    fn reduced_mode_derivation_rule_needs_affine_coefficients() {
        let affine = planar(&pvar(1) + &Poly::one(2), pvar(0));
        let tuple = mixed_tuple(4);
        assert!(leibniz_gap(&affine, &tuple, ProductMode::RsymLeftNormed).is_zero());
        let quadratic = planar(&pvar(0) * &pvar(0), Poly::zero(2));
        assert!(!leibniz_gap(&quadratic, &tuple, ProductMode::RsymLeftNormed).is_zero());
    }

    #[test]
    fn homotopical_arity_two_is_jacobi() {
        let ops: Vec<DiffOp> = mixed_tuple(3).iter().map(VField::as_op).collect();
        assert!(homotopical_sum(2, &ops).is_zero());
    }

    #[test]
    fn strict_arity_two_sum_is_an_iterated_bracket() {
        // with a₂ = a₃ the S = {1} term is the only survivor, leaving
        // −[a₂, [a₁, a₂]] = [[a₁, a₂], a₂], generally nonzero
        let a1 = VField::partial(2, 0).as_op();
        let a2 = VField::term(0, pvar(0)).as_op();
        let ops = alloc::vec![a1.clone(), a2.clone(), a2.clone()];
        let strict = left_commutativity_sum(2, &ops);
        let expect = a1.commutator(&a2).commutator(&a2);
        assert_eq!(strict, expect);
        assert!(!strict.is_zero());
    }

    #[test]
    fn bracket_half_of_differential_links_consecutive_sums() {
        // for the reduced products, the bracket half of the differential of
        // the 5-fold sum is minus the 6-fold sum
        let tuple = mixed_tuple(6);
        let psi = |args: &[VField]| {
            let ops: Vec<DiffOp> = args.iter().map(VField::as_op).collect();
            s_k_rsym_recursive(&ops)
        };
        let parts = coboundary(&psi, &tuple);
        let ops: Vec<DiffOp> = tuple.iter().map(VField::as_op).collect();
        let s6 = s_k_rsym_recursive(&ops);
        assert_eq!(parts.bracket_part, s6.scale(&Rat::int(-1)));
    }

    #[test]
    fn planar_scan_finds_sextuple_witness() {
        let report = scan_first_order_witness(2, 6, false, 5000);
        let w = report.witness.expect("expected a witness");
        assert!(w.value.is_first_order());
        assert!(!w.value.is_zero());
        // cross-check the witness value with the naive evaluator
        let ops: Vec<DiffOp> = w.fields.iter().map(VField::as_op).collect();
        assert_eq!(s_k(&ops, ProductMode::Composition, EvalStrategy::NaivePermutations), w.value);
    }

    #[test]
    fn no_candidates_beyond_the_vanishing_arity() {
        // n = 3, k = 15 = n² + 2n: the grade/root filter leaves nothing
        let report = scan_first_order_witness(3, 15, false, 100_000);
        assert_eq!(report.examined, 0);
        assert!(!report.truncated);
        assert!(report.witness.is_none());
    }
}
