//! Polynomial-coefficient differential operators and vector fields.
//!
//! Operators act on the right: `(f)(X*Y) = ((f)X)Y`, so the left factor of a
//! composition is applied first. All arithmetic is exact.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::poly::{
    expo_add, expo_below, expo_binom, expo_total, expo_unit, expo_zero, join_signed_terms,
    term_string, Expo, Poly,
};
use crate::rat::Rat;

/// Linear differential operator Σ_α u_α ∂^α with polynomial coefficients.
///
/// Canonical form: no zero coefficient polynomials are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    dim: usize,
    terms: BTreeMap<Expo, Poly>,
}

impl DiffOp {
    pub fn zero(dim: usize) -> DiffOp {
        DiffOp { dim, terms: BTreeMap::new() }
    }

    /// The order-zero operator with coefficient 1 (multiplication identity).
    pub fn unit(dim: usize) -> DiffOp {
        DiffOp::term(expo_zero(dim), Poly::one(dim))
    }

    /// u·∂^a as an operator.
    pub fn term(dexp: Expo, coeff: Poly) -> DiffOp {
        let dim = coeff.dim();
        assert_eq!(dexp.len(), dim, "derivative index length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(dexp, coeff);
        }
        DiffOp { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dexp: &Expo) -> Poly {
        self.terms.get(dexp).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn add_term(&mut self, dexp: Expo, coeff: Poly) {
        assert_eq!(dexp.len(), self.dim, "derivative index length mismatch");
        assert_eq!(coeff.dim(), self.dim, "coefficient dimension mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(dexp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(self.dim);
        }
        DiffOp {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, p)| (e.clone(), p.scale(c))).collect(),
        }
    }

    /// Left-multiplication of the coefficients by a polynomial.
    pub fn pscale(&self, p: &Poly) -> DiffOp {
        assert_eq!(p.dim(), self.dim, "dimension mismatch");
        let mut out = DiffOp::zero(self.dim);
        for (e, u) in &self.terms {
            out.add_term(e.clone(), p * u);
        }
        out
    }

    /// Action on a polynomial: (f)X = Σ u_α · ∂^α(f).
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(f.dim(), self.dim, "dimension mismatch");
        let mut out = Poly::zero(self.dim);
        for (a, u) in &self.terms {
            let df = f.partial_multi(a);
            if !df.is_zero() {
                out = &out + &(u * &df);
            }
        }
        out
    }

    /// Associative product; `apply(x.compose(y), f) == apply(y, apply(x, f))`.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = DiffOp::zero(self.dim);
        for (a, u) in &self.terms {
            for (b, v) in &rhs.terms {
                for g in expo_below(b) {
                    let du = u.partial_multi(&g);
                    if du.is_zero() {
                        continue;
                    }
                    let c = Rat::int(expo_binom(b, &g));
                    let mut dexp = expo_add(a, b);
                    for (i, gi) in g.iter().enumerate() {
                        dexp[i] -= gi;
                    }
                    out.add_term(dexp, (v * &du).scale(&c));
                }
            }
        }
        out
    }

    /// Right-symmetric product: u∂^a ∘ v∂^b = v·∂^b(u)·∂^a.
    pub fn rsym(&self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = DiffOp::zero(self.dim);
        for (a, u) in &self.terms {
            for (b, v) in &rhs.terms {
                let du = u.partial_multi(b);
                if !du.is_zero() {
                    out.add_term(a.clone(), v * &du);
                }
            }
        }
        out
    }

    /// Order-raising remainder: compose == rsym + bullet.
    pub fn bullet(&self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = DiffOp::zero(self.dim);
        for (a, u) in &self.terms {
            for (b, v) in &rhs.terms {
                for g in expo_below(b) {
                    if g == *b {
                        continue;
                    }
                    let du = u.partial_multi(&g);
                    if du.is_zero() {
                        continue;
                    }
                    let c = Rat::int(expo_binom(b, &g));
                    let mut dexp = expo_add(a, b);
                    for (i, gi) in g.iter().enumerate() {
                        dexp[i] -= gi;
                    }
                    out.add_term(dexp, (v * &du).scale(&c));
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &DiffOp) -> DiffOp {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// Terms whose derivative multi-index has total order exactly s.
    pub fn pr(&self, s: usize) -> DiffOp {
        DiffOp {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| expo_total(e) == s)
                .map(|(e, p)| (e.clone(), p.clone()))
                .collect(),
        }
    }

    pub fn ord_min(&self) -> Option<usize> {
        self.terms.keys().map(expo_total).min()
    }

    pub fn ord_max(&self) -> Option<usize> {
        self.terms.keys().map(expo_total).max()
    }

    /// Max coefficient degree over stored terms; None on the zero operator.
    pub fn coeff_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(|p| p.total_degree()).max()
    }

    pub fn is_first_order(&self) -> bool {
        self.terms.keys().all(|e| expo_total(e) == 1)
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, p) in &rhs.terms {
            out.add_term(e.clone(), p.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, p) in &rhs.terms {
            out.add_term(e.clone(), -p.clone());
        }
        out
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&Rat::int(-1))
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

fn dmono_string(e: &Expo) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, &ei) in e.iter().enumerate() {
        if ei == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        if ei == 1 {
            let _ = write!(out, "d{}", i + 1);
        } else {
            let _ = write!(out, "d{}^{}", i + 1, ei);
        }
    }
    out
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Expo> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            expo_total(b).cmp(&expo_total(a)).then_with(|| b.cmp(a))
        });
        let mut parts: Vec<(bool, String)> = Vec::new();
        for dexp in keys {
            let dmono = dmono_string(dexp);
            let trailing = if dmono.is_empty() { None } else { Some(dmono.as_str()) };
            for (e, c) in self.terms[dexp].sorted_terms() {
                parts.push(term_string(e, c, trailing));
            }
        }
        write!(f, "{}", join_signed_terms(parts))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// First-order operator Σ uᵢ∂ᵢ, stored by components.
#[derive(Clone, PartialEq, Eq)]
pub struct VField {
    comps: Vec<Poly>,
}

impl VField {
    pub fn new(comps: Vec<Poly>) -> VField {
        let dim = comps.len();
        assert!(dim > 0, "empty component list");
        for c in &comps {
            assert_eq!(c.dim(), dim, "component dimension mismatch");
        }
        VField { comps }
    }

    pub fn zero(dim: usize) -> VField {
        VField::new((0..dim).map(|_| Poly::zero(dim)).collect())
    }

    /// The coordinate field ∂_{i+1} (0-based index).
    pub fn partial(dim: usize, i: usize) -> VField {
        let mut v = VField::zero(dim);
        v.comps[i] = Poly::one(dim);
        v
    }

    /// u·∂_{i+1} (0-based index).
    pub fn term(i: usize, u: Poly) -> VField {
        let mut v = VField::zero(u.dim());
        v.comps[i] = u;
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn as_op(&self) -> DiffOp {
        let dim = self.dim();
        let mut out = DiffOp::zero(dim);
        for (i, u) in self.comps.iter().enumerate() {
            out.add_term(expo_unit(dim, i), u.clone());
        }
        out
    }

    /// Reinterprets a first-order operator; None if any term has order ≠ 1.
    pub fn from_op(op: &DiffOp) -> Option<VField> {
        if !op.is_first_order() {
            return None;
        }
        let dim = op.dim();
        let mut v = VField::zero(dim);
        for (e, p) in op.terms() {
            let i = e.iter().position(|&x| x == 1).unwrap();
            v.comps[i] = p.clone();
        }
        Some(v)
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (i, u) in self.comps.iter().enumerate() {
            if !u.is_zero() {
                out = &out + &(u * &f.partial(i));
            }
        }
        out
    }

    /// Operator commutator of two fields; closed on first-order operators.
    pub fn bracket(&self, rhs: &VField) -> VField {
        VField::new(
            self.comps
                .iter()
                .zip(rhs.comps.iter())
                .map(|(u, v)| &rhs.apply(u) - &self.apply(v))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> VField {
        VField::new(self.comps.iter().map(|p| p.scale(c)).collect())
    }

    /// Componentwise multiplication by a polynomial.
    pub fn pscale(&self, p: &Poly) -> VField {
        assert_eq!(p.dim(), self.dim(), "dimension mismatch");
        VField::new(self.comps.iter().map(|u| p * u).collect())
    }

    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (i, u) in self.comps.iter().enumerate() {
            out = &out + &u.partial(i);
        }
        out
    }
}

impl Add for &VField {
    type Output = VField;
    fn add(self, rhs: &VField) -> VField {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        VField::new(
            self.comps
                .iter()
                .zip(rhs.comps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &VField {
    type Output = VField;
    fn sub(self, rhs: &VField) -> VField {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        VField::new(
            self.comps
                .iter()
                .zip(rhs.comps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        self.scale(&Rat::int(-1))
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.as_op(), f)
    }
}

impl fmt::Debug for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The planar Hamiltonian field ∂₁(u)∂₂ − ∂₂(u)∂₁.
pub fn d12(u: &Poly) -> VField {
    assert_eq!(u.dim(), 2, "d12 requires two variables");
    VField::new(alloc::vec![-u.partial(1), u.partial(0)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialError {
    NotPlanar,
    NotDivergenceFree,
}

impl fmt::Display for PotentialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialError::NotPlanar => write!(f, "potential requires two variables"),
            PotentialError::NotDivergenceFree => {
                write!(f, "field has nonzero divergence")
            }
        }
    }
}

/// Inverse of [`d12`] normalized by u(0,0) = 0.
pub fn potential(x: &VField) -> Result<Poly, PotentialError> {
    if x.dim() != 2 {
        return Err(PotentialError::NotPlanar);
    }
    if !x.divergence().is_zero() {
        return Err(PotentialError::NotDivergenceFree);
    }
    // x = d1(u)·d2 − d2(u)·d1, so integrate the d2 component in x1 and fix
    // the pure-x2 part from the d1 component.
    let v1 = x.component(0);
    let v2 = x.component(1);
    let mut u = v2.integrate(0);
    let rem = &(-v1.clone()) - &u.partial(1);
    debug_assert!(rem.independent_of(0));
    u = &u + &rem.integrate(1);
    debug_assert!(u.eval_at_zero().is_zero());
    debug_assert_eq!(d12(&u), *x);
    Ok(u)
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
    fn apply_examples() {
        let x1d1 = VField::term(0, x(0));
        assert_eq!(x1d1.apply(&(&x(0) * &x(0))), (&x(0) * &x(0)).scale(&Rat::int(2)));
        assert!(dd(0).apply(&x(1)).is_zero());
    }

    #[test]
    fn compose_convention() {
        let x1d1 = VField::term(0, x(0)).as_op();
        let d1 = dd(0).as_op();
        let left = d1.compose(&x1d1);
        let right = x1d1.compose(&d1);
        assert_eq!(&right - &left, d1);
        assert_eq!(d1.commutator(&x1d1), -&d1);
    }

    #[test]
    fn bracket_is_operator_commutator() {
        let a = VField::new(alloc::vec![&x(0) * &x(0), &x(0) * &x(1)]);
        let b = VField::new(alloc::vec![x(1), &x(1) * &x(1)]);
        assert_eq!(
            a.bracket(&b).as_op(),
            a.as_op().commutator(&b.as_op())
        );
        assert_eq!(dd(0).bracket(&VField::term(0, x(0))), -&dd(0));
    }

    #[test]
    fn apply_matches_compose() {
        let a = VField::term(0, &x(0) + &x(1)).as_op();
        let b = DiffOp::term(smallvec::smallvec![1, 1], x(1));
        let f = &(&x(0) * &x(0)) * &x(1);
        assert_eq!(a.compose(&b).apply(&f), b.apply(&a.apply(&f)));
    }

    #[test]
    fn rsym_bullet_split() {
        let a = VField::term(0, &x(0) * &x(1)).as_op();
        let b = DiffOp::term(smallvec::smallvec![0, 2], x(0));
        assert_eq!(&a.rsym(&b) + &a.bullet(&b), a.compose(&b));
        let ord = a.bullet(&b).ord_min();
        assert!(ord.is_none() || ord.unwrap() > a.ord_min().unwrap());
    }

    #[test]
    fn hamiltonian_roundtrip() {
        let u = &(&x(0) * &x(0)) * &x(1);
        let f = d12(&u);
        assert!(f.divergence().is_zero());
        assert_eq!(potential(&f).unwrap(), u);

        let w = VField::term(0, &x(1) * &x(1));
        let p = potential(&w).unwrap();
        let expected = Poly::monomial(2, smallvec::smallvec![0, 3], Rat::new(-1, 3));
        assert_eq!(p, expected);

        assert_eq!(d12(&x(1)), -&dd(0));
        assert_eq!(
            potential(&VField::term(0, Poly::one(2))).unwrap(),
            -x(1)
        );
        assert_eq!(
            potential(&VField::term(0, x(0))),
            Err(PotentialError::NotDivergenceFree)
        );
    }

    #[test]
    fn projections() {
        let mut op = DiffOp::term(smallvec::smallvec![2, 0], x(0));
        op.add_term(smallvec::smallvec![0, 1], Poly::one(2));
        assert_eq!(op.pr(1), dd(1).as_op());
        assert_eq!(op.ord_min(), Some(1));
        assert_eq!(op.ord_max(), Some(2));
        assert_eq!(&op.pr(1) + &op.pr(2), op);
        assert_eq!(alloc::format!("{op}"), "x1*d1^2 + d2");
    }
}
