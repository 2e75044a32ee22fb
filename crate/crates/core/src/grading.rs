//! Weight grading of the polynomial vector-field algebras: graded bases,
//! dual coefficient functionals, escort tables of alternating polylinear
//! maps, reconstruction from a table, and the dimension-counting vanishing
//! criterion.
//!
//! A monomial field x^α·∂ᵢ has weight root α − εᵢ and grade |α| − 1; a
//! field is grade −1 exactly when its coefficients are constant.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;


use crate::diffop::{d12, potential, DiffOp, VField};
use crate::formulas::det;
use crate::poly::{expo_factorial, expo_zero, Expo, Poly};
use crate::rat::Rat;

pub type Root = Vec<i32>;

/// Label of a graded basis element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisKey {
    /// x^α ∂_{j+1} in the full algebra (j is 0-based).
    Mono { alpha: Expo, j: usize },
    /// Planar divergence-free element normalized to the conventional basis:
    /// γ_m · (∂₁(x^m)∂₂ − ∂₂(x^m)∂₁).
    Ham { m: Expo },
    /// Opaque member of a divergence-kernel basis (dim ≥ 3).
    Span { grade: i32, index: u32 },
}

/// Normalization constants making the planar divergence-free basis match
/// the conventional element list (∂₁, ∂₂, x₁∂₂, x₁∂₁−x₂∂₂, x₂∂₁, ...).
fn ham_gamma(m: &Expo) -> Rat {
    match (m[0], m[1]) {
        (0, 1) => Rat::int(-1),
        (1, 0) => Rat::ONE,
        (0, 2) => Rat::new(-1, 2),
        (1, 1) => Rat::int(-1),
        (2, 0) => Rat::new(1, 2),
        (0, 3) => Rat::new(-1, 3),
        (2, 1) => Rat::int(-1),
        (1, 2) => Rat::ONE,
        (3, 0) => Rat::new(1, 3),
        _ => Rat::ONE,
    }
}

impl BasisKey {
    /// The field this key denotes; None for opaque kernel labels.
    pub fn field(&self, n: usize) -> Option<VField> {
        match self {
            BasisKey::Mono { alpha, j } => {
                Some(VField::term(*j, Poly::monomial(n, alpha.clone(), Rat::ONE)))
            }
            BasisKey::Ham { m } => {
                let u = Poly::monomial(2, m.clone(), Rat::ONE);
                Some(d12(&u).scale(&ham_gamma(m)))
            }
            BasisKey::Span { .. } => None,
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Mono { alpha, .. } => {
                let n = alpha.len();
                write!(f, "{}", self.field(n).unwrap())
            }
            BasisKey::Ham { .. } => write!(f, "{}", self.field(2).unwrap()),
            BasisKey::Span { grade, index } => write!(f, "ker{grade}.{index}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedElement {
    pub key: BasisKey,
    pub field: VField,
    pub grade: i32,
    pub root: Root,
}

fn monomials_of_degree(n: usize, d: usize) -> Vec<Expo> {
    let mut out = Vec::new();
    let mut cur = expo_zero(n);
    fn rec(n: usize, slot: usize, left: usize, cur: &mut Expo, out: &mut Vec<Expo>) {
        if slot + 1 == n {
            cur[slot] = left as u8;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[slot] = v as u8;
            rec(n, slot + 1, left - v, cur, out);
        }
    }
    rec(n, 0, d, &mut cur, &mut out);
    out
}

fn mono_root(alpha: &Expo, j: usize) -> Root {
    let mut r: Root = alpha.iter().map(|&a| a as i32).collect();
    r[j] -= 1;
    r
}

/// Basis of the grade-s component: monomial fields x^α∂ⱼ with |α| = s+1,
/// or the divergence-free subspace of that component.
pub fn graded_basis(n: usize, s: i32, divfree: bool) -> Vec<GradedElement> {
    assert!(s >= -1, "grades start at -1");
    assert!(n >= 1, "dimension must be positive");
    let deg = (s + 1) as usize;
    let mut out = Vec::new();
    if !divfree {
        for alpha in monomials_of_degree(n, deg) {
            for j in 0..n {
                let key = BasisKey::Mono { alpha: alpha.clone(), j };
                let field = key.field(n).unwrap();
                out.push(GradedElement {
                    key,
                    field,
                    grade: s,
                    root: mono_root(&alpha, j),
                });
            }
        }
    } else if n == 2 {
        for m in monomials_of_degree(2, deg + 1) {
            let key = BasisKey::Ham { m: m.clone() };
            let field = key.field(2).unwrap();
            let root = alloc::vec![m[0] as i32 - 1, m[1] as i32 - 1];
            out.push(GradedElement { key, field, grade: s, root });
        }
    } else {
        // Per weight root: if the root has a −1 entry only one monomial
        // field carries it and its divergence already vanishes; otherwise
        // the kernel of Σ cᵢ(ρᵢ+1) is spanned by n−1 pair combinations.
        let mut index: u32 = 0;
        let mut push = |field: VField, root: Root, index: &mut u32| {
            out.push(GradedElement {
                key: BasisKey::Span { grade: s, index: *index },
                field,
                grade: s,
                root,
            });
            *index += 1;
        };
        let mut roots: Vec<Root> = Vec::new();
        for alpha in monomials_of_degree(n, deg) {
            for j in 0..n {
                let r = mono_root(&alpha, j);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        roots.sort();
        for rho in roots {
            if rho.iter().any(|&e| e < 0) {
                let j = rho.iter().position(|&e| e < 0).unwrap();
                let alpha: Expo = rho
                    .iter()
                    .enumerate()
                    .map(|(t, &e)| if t == j { (e + 1) as u8 } else { e as u8 })
                    .collect();
                let field = VField::term(j, Poly::monomial(n, alpha, Rat::ONE));
                debug_assert!(field.divergence().is_zero());
                push(field, rho.clone(), &mut index);
            } else {
                let member = |t: usize| {
                    let alpha: Expo = rho
                        .iter()
                        .enumerate()
                        .map(|(s2, &e)| if s2 == t { (e + 1) as u8 } else { e as u8 })
                        .collect();
                    VField::term(t, Poly::monomial(n, alpha, Rat::ONE))
                };
                for t in 1..n {
                    let c0 = Rat::int(rho[t] as i64 + 1);
                    let ct = Rat::int(-(rho[0] as i64 + 1));
                    let field = &member(0).pscale(&Poly::constant(n, c0))
                        + &member(t).pscale(&Poly::constant(n, ct));
                    debug_assert!(field.divergence().is_zero());
                    push(field, rho.clone(), &mut index);
                }
            }
        }
    }
    out
}

/// All graded basis elements with grades −1..=smax, sorted by grade then key.
pub fn basis_upto(n: usize, smax: i32, divfree: bool) -> Vec<GradedElement> {
    let mut out = Vec::new();
    for s in -1..=smax {
        out.extend(graded_basis(n, s, divfree));
    }
    out
}

/// Coefficient functional dual to a graded basis element.
///
/// For x^α∂ⱼ this is ∂^α of the j-th component divided by α!. For the
/// planar divergence-free basis it reads the same data off the potential,
/// so the argument must be divergence-free.
pub fn e_functional(key: &BasisKey, x: &VField) -> Poly {
    match key {
        BasisKey::Mono { alpha, j } => {
            assert_eq!(alpha.len(), x.dim(), "dimension mismatch");
            x.component(*j)
                .partial_multi(alpha)
                .scale(&Rat::int(expo_factorial(alpha)).recip())
        }
        BasisKey::Ham { m } => {
            let u = potential(x).expect("dual functional needs a divergence-free field");
            let denom = &Rat::int(expo_factorial(m)) * &ham_gamma(m);
            u.partial_multi(m).scale(&denom.recip())
        }
        BasisKey::Span { .. } => panic!("kernel labels carry no dual functional"),
    }
}

/// Position of the single −1 entry if the sum is −εⱼ for some j.
fn root_target(sum: &[i32]) -> Option<usize> {
    let mut neg = None;
    for (i, &e) in sum.iter().enumerate() {
        match e {
            0 => {}
            -1 if neg.is_none() => neg = Some(i),
            _ => return None,
        }
    }
    neg
}

/// Visits index tuples into `basis` (ascending when `skew`, nondecreasing
/// otherwise) whose grades sum to −1 and whose roots sum to −εⱼ. The basis
/// must be sorted by grade ascending. Return false from the callback to
/// stop the enumeration.
pub fn for_each_support_tuple<F: FnMut(&[usize]) -> bool>(
    basis: &[GradedElement],
    k: usize,
    skew: bool,
    mut f: F,
) {
    assert!(k >= 1, "arity must be positive");
    for w in basis.windows(2) {
        assert!(w[0].grade <= w[1].grade, "basis must be sorted by grade");
    }
    let n = if basis.is_empty() { return } else { basis[0].root.len() };
    let mut idx: Vec<usize> = Vec::with_capacity(k);
    let mut root_sum: Root = alloc::vec![0; n];
    fn rec<F: FnMut(&[usize]) -> bool>(
        basis: &[GradedElement],
        k: usize,
        skew: bool,
        start: usize,
        grade_sum: i32,
        idx: &mut Vec<usize>,
        root_sum: &mut Root,
        f: &mut F,
    ) -> bool {
        if idx.len() == k {
            if grade_sum == -1 && root_target(root_sum).is_some() {
                return f(idx);
            }
            return true;
        }
        let left = (k - idx.len()) as i32;
        for i in start..basis.len() {
            let g = basis[i].grade;
            // grades ascend, so once even all-minimal later picks overshoot
            // the target the branch is dead
            if grade_sum + left * g > -1 {
                break;
            }
            idx.push(i);
            for (t, e) in basis[i].root.iter().enumerate() {
                root_sum[t] += e;
            }
            let next = if skew { i + 1 } else { i };
            let keep = rec(basis, k, skew, next, grade_sum + g, idx, root_sum, f);
            idx.pop();
            for (t, e) in basis[i].root.iter().enumerate() {
                root_sum[t] -= e;
            }
            if !keep {
                return false;
            }
        }
        true
    }
    rec(basis, k, skew, 0, 0, &mut idx, &mut root_sum, &mut f);
}

/// Materialized support representatives over the standard graded basis.
pub fn support_tuples(
    k: usize,
    n: usize,
    divfree: bool,
    skew: bool,
) -> (Vec<GradedElement>, Vec<Vec<usize>>) {
    let basis = basis_upto(n, k as i32 - 2, divfree);
    let mut reps = Vec::new();
    for_each_support_tuple(&basis, k, skew, |idx| {
        reps.push(idx.to_vec());
        true
    });
    (basis, reps)
}

/// Values of an alternating polylinear map on its support representatives.
#[derive(Clone, Debug)]
pub struct EscortTable {
    pub arity: usize,
    pub dim: usize,
    pub divfree: bool,
    pub entries: BTreeMap<Vec<BasisKey>, VField>,
}

#[derive(Clone, Debug)]
pub enum EscortError {
    /// A value was not a constant-coefficient first-order field: the map is
    /// not graded the way the table construction assumes.
    UngradedValue { tuple: String, value: String },
    /// Dual functionals for divergence-free bases exist only in dimension 2.
    Unsupported,
}

impl fmt::Display for EscortError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EscortError::UngradedValue { tuple, value } => {
                write!(f, "value on ({tuple}) is not grade -1: {value}")
            }
            EscortError::Unsupported => {
                write!(f, "divergence-free tables are planar-only")
            }
        }
    }
}

fn is_grade_minus_one(x: &VField) -> bool {
    x.components()
        .iter()
        .map(|p| p.total_degree().unwrap_or(0))
        .max()
        .unwrap_or(0)
        == 0
}

/// Evaluates an alternating map on every support representative and keeps
/// the nonzero values; each value is checked to be a grade −1 field.
pub fn escort_of(
    psi: &dyn Fn(&[VField]) -> DiffOp,
    k: usize,
    n: usize,
    divfree: bool,
) -> Result<EscortTable, EscortError> {
    if divfree && n != 2 {
        return Err(EscortError::Unsupported);
    }
    let (basis, reps) = support_tuples(k, n, divfree, true);
    let mut entries = BTreeMap::new();
    for rep in reps {
        let fields: Vec<VField> = rep.iter().map(|&i| basis[i].field.clone()).collect();
        let op = psi(&fields);
        if op.is_zero() {
            continue;
        }
        let keys: Vec<BasisKey> = rep.iter().map(|&i| basis[i].key.clone()).collect();
        let value = VField::from_op(&op).filter(is_grade_minus_one).ok_or_else(|| {
            let mut tuple = String::new();
            for (t, key) in keys.iter().enumerate() {
                if t > 0 {
                    tuple.push_str(", ");
                }
                use core::fmt::Write;
                let _ = write!(tuple, "{key}");
            }
            EscortError::UngradedValue { tuple, value: alloc::format!("{op}") }
        })?;
        entries.insert(keys, value);
    }
    Ok(EscortTable { arity: k, dim: n, divfree, entries })
}

impl EscortTable {
    /// Rebuilds the map's value from the table:
    /// Σ over entries of det[E_{aᵢ}(Xⱼ)] · value(a₁..a_k).
    pub fn reconstruct(&self, fields: &[VField]) -> VField {
        assert_eq!(fields.len(), self.arity, "arity mismatch");
        for x in fields {
            assert_eq!(x.dim(), self.dim, "dimension mismatch");
        }
        let mut total = VField::zero(self.dim);
        for (keys, value) in &self.entries {
            let m: Vec<Vec<Poly>> = keys
                .iter()
                .map(|key| fields.iter().map(|x| e_functional(key, x)).collect())
                .collect();
            let w = det(&m);
            if !w.is_zero() {
                total = &total + &value.pscale(&w);
            }
        }
        total
    }
}

/// Outcome of the dimension-counting criterion for a map with r skew
/// arguments out of k on a graded algebra with the given component
/// dimensions (`dims[t]` is dim A_{t−1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VanishingBound {
    pub vanishes: bool,
    pub i0: i32,
    pub lhs: i64,
    pub rhs: i64,
}

/// Checks k+q < r(i₀+2) − Σ_{i=−1..i₀}(i₀+1−i)·dim Aᵢ, where i₀ is fixed
/// by Σ_{i≤i₀} dim Aᵢ ≤ r < Σ_{i≤i₀+1} dim Aᵢ. When it holds, every
/// invariant 0-graded polylinear map with these data is identically zero.
/// Returns None when r is not covered by the supplied dimensions.
pub fn vanishing_bound(dims: &[u32], k: u32, q: i64, r: u32) -> Option<VanishingBound> {
    assert!(r >= 1 && r <= k, "need 1 <= r <= k");
    let mut cum = 0u64;
    let mut j = None;
    for (t, &d) in dims.iter().enumerate() {
        cum += d as u64;
        if (r as u64) < cum {
            j = Some(t);
            break;
        }
    }
    let j = j?;
    let i0 = j as i32 - 2;
    let mut penalty: i64 = 0;
    for (t, &d) in dims.iter().enumerate().take(j) {
        let i = t as i32 - 1;
        penalty += (i0 as i64 + 1 - i as i64) * d as i64;
    }
    let rhs = r as i64 * (i0 as i64 + 2) - penalty;
    let lhs = k as i64 + q;
    Some(VanishingBound { vanishes: lhs < rhs, i0, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;
    use crate::skewsum::{s_k_fields, EvalStrategy};

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn dd(i: usize) -> VField {
        VField::partial(2, i)
    }

    #[test]
    fn basis_dims() {
        assert_eq!(graded_basis(2, -1, false).len(), 2);
        assert_eq!(graded_basis(2, 0, false).len(), 4);
        assert_eq!(graded_basis(2, 1, false).len(), 6);
        assert_eq!(graded_basis(2, -1, true).len(), 2);
        assert_eq!(graded_basis(2, 0, true).len(), 3);
        assert_eq!(graded_basis(2, 1, true).len(), 4);
        assert_eq!(graded_basis(3, -1, false).len(), 3);
        assert_eq!(graded_basis(3, 0, false).len(), 9);
        for el in graded_basis(3, 1, true) {
            assert!(el.field.divergence().is_zero());
        }
        // kernel dims: n·C(n+s, s+1) minus rank of divergence
        assert_eq!(graded_basis(3, 0, true).len(), 8);
    }

    #[test]
    fn planar_divfree_basis_is_conventional() {
        let a0: Vec<VField> =
            graded_basis(2, 0, true).into_iter().map(|e| e.field).collect();
        let h = &VField::term(0, x(0)) - &VField::term(1, x(1));
        assert!(a0.contains(&VField::term(1, x(0))));
        assert!(a0.contains(&h));
        assert!(a0.contains(&VField::term(0, x(1))));

        let a1: Vec<VField> =
            graded_basis(2, 1, true).into_iter().map(|e| e.field).collect();
        let e2 = &VField::term(0, &x(0) * &x(0))
            - &VField::term(1, (&x(0) * &x(1)).scale(&Rat::int(2)));
        assert!(a1.contains(&VField::term(0, &x(1) * &x(1))));
        assert!(a1.contains(&e2));

        let am: Vec<VField> =
            graded_basis(2, -1, true).into_iter().map(|e| e.field).collect();
        assert_eq!(am, alloc::vec![dd(0), dd(1)]);
    }

    #[test]
    fn e_functional_examples() {
        let key = BasisKey::Mono { alpha: smallvec![0, 0], j: 0 };
        let v = VField::term(0, &x(0) * &x(1));
        assert_eq!(e_functional(&key, &v), &x(0) * &x(1));

        let key = BasisKey::Mono { alpha: smallvec![1, 0], j: 0 };
        assert_eq!(
            e_functional(&key, &VField::term(0, &x(0) * &x(0))),
            x(0).scale(&Rat::int(2))
        );
        assert!(e_functional(&key, &VField::term(1, x(0))).is_zero());
    }

    #[test]
    fn dual_pairing_is_identity() {
        for divfree in [false, true] {
            let basis = basis_upto(2, 1, divfree);
            for a in &basis {
                for b in &basis {
                    if a.grade != b.grade {
                        continue;
                    }
                    let v = e_functional(&a.key, &b.field);
                    if a.key == b.key {
                        assert_eq!(v, Poly::one(2), "{} on {}", a.key, b.key);
                    } else {
                        assert!(v.is_zero(), "{} on {} gave {}", a.key, b.key, v);
                    }
                }
            }
        }
    }

    #[test]
    fn quintuple_escort_roundtrip() {
        let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
        let table = escort_of(&psi, 5, 2, true).unwrap();
        assert_eq!(table.entries.len(), 6);
        // potentials of the worked tuple
        let us = [
            -x(1),
            x(0),
            (&x(0) * &x(0)).scale(&Rat::new(1, 2)),
            -(&x(0) * &x(1)),
            (&(&x(1) * &x(1)) * &x(1)).scale(&Rat::new(-1, 3)),
        ];
        let fields: Vec<VField> = us.iter().map(d12).collect();
        assert_eq!(table.reconstruct(&fields), dd(0).scale(&Rat::int(6)));
    }

    #[test]
    fn sextuple_escort_roundtrip() {
        let psi = |fs: &[VField]| s_k_fields(fs, EvalStrategy::SubsetDp);
        let table = escort_of(&psi, 6, 2, false).unwrap();
        assert_eq!(table.entries.len(), 14);
        let tuple = [
            dd(0),
            dd(1),
            VField::term(0, x(0)),
            VField::term(0, x(1)),
            VField::term(1, x(0)),
            VField::term(0, &x(0) * &x(0)),
        ];
        let got = table.reconstruct(&tuple);
        assert_eq!(got, dd(1).scale(&Rat::int(-2)));
        assert_eq!(got.as_op(), s_k_fields(&tuple, EvalStrategy::SubsetDp));
    }

    #[test]
    fn bound_arithmetic() {
        let b = vanishing_bound(&[2, 3, 4], 9, -1, 8).unwrap();
        assert_eq!((b.i0, b.lhs, b.rhs, b.vanishes), (0, 8, 9, true));
        let b = vanishing_bound(&[2, 4, 6], 11, -1, 10).unwrap();
        assert_eq!((b.i0, b.lhs, b.rhs, b.vanishes), (0, 10, 12, true));
        assert!(vanishing_bound(&[2, 3, 4], 10, -1, 10).is_none());
    }
}
