//! Alternating-sum evaluators: the standard skew-symmetric polynomial
//! s_k(t₁..t_k) = Σ_σ sign σ · t_{σ(1)}···t_{σ(k)} under either product,
//! with naive, dynamic-programming, recursive, and cup-split strategies.

use alloc::vec::Vec;

use crate::diffop::{DiffOp, VField};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// Associative operator product, left factor acting first.
    Composition,
    /// Right-symmetric product with left-normed bracketing (((t₁∘t₂)∘t₃)...).
    RsymLeftNormed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalStrategy {
    /// Full k! permutation sum.
    NaivePermutations,
    /// Subset dynamic program, O(2^k · k) products. Composition mode only.
    SubsetDp,
    /// One-step peeling recursion with subset memoization. Rsym mode only.
    RsymRecursion,
    /// Shuffle split s_{k+l} = s_k ⌣ s_l. Composition mode only.
    CupSplit(usize, usize),
}

fn mode_product(mode: ProductMode, a: &DiffOp, b: &DiffOp) -> DiffOp {
    match mode {
        ProductMode::Composition => a.compose(b),
        ProductMode::RsymLeftNormed => a.rsym(b),
    }
}

/// Visits every permutation of 0..k with its sign (Heap's algorithm).
pub fn for_each_permutation<F: FnMut(&[usize], i64)>(k: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = alloc::vec![0usize; k];
    let mut sign = 1i64;
    f(&perm, sign);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Visits every ascending k-subset of 0..n.
pub fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // lexicographic successor
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sign of the permutation sorting `perm` ascending (inversion parity).
pub fn sign_of_indices(perm: &[usize]) -> i64 {
    let mut s = 1i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

fn check_args(ops: &[DiffOp]) -> usize {
    assert!(!ops.is_empty(), "empty argument list");
    let dim = ops[0].dim();
    for op in ops {
        assert_eq!(op.dim(), dim, "dimension mismatch");
    }
    dim
}

pub fn s_k_naive(ops: &[DiffOp], mode: ProductMode) -> DiffOp {
    let dim = check_args(ops);
    let mut total = DiffOp::zero(dim);
    for_each_permutation(ops.len(), |perm, sign| {
        let mut acc = ops[perm[0]].clone();
        for &i in &perm[1..] {
            acc = mode_product(mode, &acc, &ops[i]);
        }
        total = &total + &acc.scale(&Rat::int(sign));
    });
    total
}

/// Memo table of s_|S| over every subset S of the arguments.
///
/// Entry `m` holds s applied to the arguments whose bits are set in `m`,
/// computed by peeling the last factor: for S = {j₁ < … < j_m},
/// T(S) = Σ_t (−1)^{m+t} · T(S∖{j_t}) · X_{j_t}.
pub fn subset_table(ops: &[DiffOp], mode: ProductMode) -> Vec<DiffOp> {
    let dim = check_args(ops);
    let k = ops.len();
    assert!(k <= 20, "subset table would be too large");
    let mut memo: Vec<DiffOp> = alloc::vec![DiffOp::zero(dim); 1 << k];
    for (i, op) in ops.iter().enumerate() {
        memo[1 << i] = op.clone();
    }
    for mask in 1usize..(1 << k) {
        let m = mask.count_ones() as usize;
        if m < 2 {
            continue;
        }
        let mut acc = DiffOp::zero(dim);
        let mut t = 0usize;
        for i in 0..k {
            if mask >> i & 1 == 0 {
                continue;
            }
            t += 1;
            let term = mode_product(mode, &memo[mask & !(1 << i)], &ops[i]);
            let sign = if (m + t) % 2 == 0 { 1 } else { -1 };
            acc = &acc + &term.scale(&Rat::int(sign));
        }
        memo[mask] = acc;
    }
    memo
}

pub fn s_k_subset_dp(ops: &[DiffOp]) -> DiffOp {
    let mut memo = subset_table(ops, ProductMode::Composition);
    memo.pop().unwrap()
}

pub fn s_k_rsym_recursive(ops: &[DiffOp]) -> DiffOp {
    let mut memo = subset_table(ops, ProductMode::RsymLeftNormed);
    memo.pop().unwrap()
}

/// Cup product of two polylinear maps: Σ over (k,l)-shuffles of
/// sign σ · product(psi(block), phi(block)).
pub fn cup(
    k: usize,
    l: usize,
    psi: &dyn Fn(&[DiffOp]) -> DiffOp,
    phi: &dyn Fn(&[DiffOp]) -> DiffOp,
    mode: ProductMode,
    args: &[DiffOp],
) -> DiffOp {
    assert_eq!(args.len(), k + l, "arity mismatch");
    let dim = check_args(args);
    let mut total = DiffOp::zero(dim);
    for_each_combination(k + l, k, |chosen| {
        let rest: Vec<usize> = (0..k + l).filter(|i| !chosen.contains(i)).collect();
        let mut perm = chosen.to_vec();
        perm.extend_from_slice(&rest);
        let sign = sign_of_indices(&perm);
        let a: Vec<DiffOp> = chosen.iter().map(|&i| args[i].clone()).collect();
        let b: Vec<DiffOp> = rest.iter().map(|&i| args[i].clone()).collect();
        let prod = mode_product(mode, &psi(&a), &phi(&b));
        total = &total + &prod.scale(&Rat::int(sign));
    });
    total
}

/// s_{k1+k2} evaluated as s_{k1} ⌣ s_{k2} under composition, reusing one
/// subset table for both factors.
pub fn s_k_cup_split(ops: &[DiffOp], k1: usize) -> DiffOp {
    let k = ops.len();
    assert!(k1 >= 1 && k1 < k, "cup split needs 1 <= k1 < arity");
    let dim = check_args(ops);
    let memo = subset_table(ops, ProductMode::Composition);
    let full = (1usize << k) - 1;
    let mut total = DiffOp::zero(dim);
    for_each_combination(k, k1, |chosen| {
        let mask: usize = chosen.iter().map(|&i| 1usize << i).sum();
        let rest: Vec<usize> = (0..k).filter(|i| !chosen.contains(i)).collect();
        let mut perm = chosen.to_vec();
        perm.extend_from_slice(&rest);
        let sign = sign_of_indices(&perm);
        let prod = memo[mask].compose(&memo[full & !mask]);
        total = &total + &prod.scale(&Rat::int(sign));
    });
    total
}

/// Unified entry point; every strategy computes the same alternating sum.
pub fn s_k(ops: &[DiffOp], mode: ProductMode, strategy: EvalStrategy) -> DiffOp {
    match (mode, strategy) {
        (mode, EvalStrategy::NaivePermutations) => s_k_naive(ops, mode),
        (ProductMode::Composition, EvalStrategy::SubsetDp) => s_k_subset_dp(ops),
        (ProductMode::RsymLeftNormed, EvalStrategy::RsymRecursion) => {
            s_k_rsym_recursive(ops)
        }
        (ProductMode::Composition, EvalStrategy::CupSplit(k1, k2)) => {
            assert_eq!(k1 + k2, ops.len(), "cup split arities must sum to k");
            s_k_cup_split(ops, k1)
        }
        (mode, strategy) => {
            panic!("strategy {strategy:?} not defined for mode {mode:?}")
        }
    }
}

/// Convenience wrapper for vector-field arguments (composition mode).
pub fn s_k_fields(fields: &[VField], strategy: EvalStrategy) -> DiffOp {
    let ops: Vec<DiffOp> = fields.iter().map(VField::as_op).collect();
    s_k(&ops, ProductMode::Composition, strategy)
}

/// Σ_σ sign σ · [[..[X0, X_{σ(1)}], X_{σ(2)}]..., X_{σ(k)}]: the alternating
/// sum with every argument acting by commutator on X0.
pub fn adjoint_skewsum(x0: &VField, fields: &[VField]) -> VField {
    let dim = x0.dim();
    for f in fields {
        assert_eq!(f.dim(), dim, "dimension mismatch");
    }
    let mut total = VField::zero(dim);
    for_each_permutation(fields.len(), |perm, sign| {
        let mut acc = x0.clone();
        for &i in perm {
            acc = acc.bracket(&fields[i]);
        }
        total = &total + &acc.scale(&Rat::int(sign));
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn dd(i: usize) -> VField {
        VField::partial(2, i)
    }

    #[test]
    fn permutation_count_and_signs() {
        let mut count = 0;
        let mut signed = 0i64;
        for_each_permutation(4, |_, s| {
            count += 1;
            signed += s;
        });
        assert_eq!(count, 24);
        assert_eq!(signed, 0);
    }

    #[test]
    fn combinations_enumerate() {
        let mut seen = alloc::vec![];
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], alloc::vec![0, 1]);
        assert_eq!(seen[5], alloc::vec![2, 3]);
    }

    #[test]
    fn s2_is_commutator() {
        let a = VField::term(0, &x(0) * &x(1)).as_op();
        let b = VField::term(1, &x(1) * &x(1)).as_op();
        let s2 = s_k_naive(&[a.clone(), b.clone()], ProductMode::Composition);
        assert_eq!(s2, a.commutator(&b));
        assert_eq!(s_k_subset_dp(&[a.clone(), b.clone()]), s2);
    }

    #[test]
    fn repeated_argument_vanishes() {
        let a = VField::term(0, x(0)).as_op();
        let b = dd(1).as_op();
        let s = s_k_naive(
            &[a.clone(), b, a],
            ProductMode::Composition,
        );
        assert!(s.is_zero());
    }

    #[test]
    fn worked_quintuple() {
        let h = &VField::term(0, x(0)) - &VField::term(1, x(1));
        let tuple = [
            dd(0).as_op(),
            dd(1).as_op(),
            VField::term(1, x(0)).as_op(),
            h.as_op(),
            VField::term(0, &x(1) * &x(1)).as_op(),
        ];
        let expected = dd(0).as_op().scale(&Rat::int(6));
        assert_eq!(s_k_subset_dp(&tuple), expected);
        assert_eq!(s_k_naive(&tuple, ProductMode::Composition), expected);
        assert_eq!(s_k_rsym_recursive(&tuple), expected);
        assert_eq!(s_k_cup_split(&tuple, 2), expected);
        assert_eq!(s_k_cup_split(&tuple, 3), expected);
    }

    #[test]
    fn cup_generic_matches_split() {
        let args = [
            dd(0).as_op(),
            dd(1).as_op(),
            VField::term(0, x(1)).as_op(),
        ];
        let s1 = |ops: &[DiffOp]| ops[0].clone();
        let s2 = |ops: &[DiffOp]| s_k_naive(ops, ProductMode::Composition);
        let got = cup(2, 1, &s2, &s1, ProductMode::Composition, &args);
        assert_eq!(got, s_k_naive(&args, ProductMode::Composition));
    }

    #[test]
    fn adjoint_single() {
        let x0 = VField::term(0, &x(0) * &x(0));
        let y = VField::term(1, x(0));
        assert_eq!(adjoint_skewsum(&x0, &[y.clone()]), x0.bracket(&y));
    }
}
