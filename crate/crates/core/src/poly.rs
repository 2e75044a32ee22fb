//! Sparse multivariate polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::rat::Rat;

/// Multi-index of exponents, one entry per variable.
pub type Expo = SmallVec<[u8; 6]>;

pub fn expo_zero(dim: usize) -> Expo {
    SmallVec::from_elem(0, dim)
}

pub fn expo_unit(dim: usize, i: usize) -> Expo {
    let mut e = expo_zero(dim);
    e[i] = 1;
    e
}

pub fn expo_add(a: &Expo, b: &Expo) -> Expo {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

pub fn expo_total(a: &Expo) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

/// true iff a ≤ b componentwise
pub fn expo_le(a: &Expo, b: &Expo) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// Iterate all γ with 0 ≤ γ ≤ b componentwise.
pub fn expo_below(b: &Expo) -> Vec<Expo> {
    let mut out: Vec<Expo> = Vec::with_capacity(
        b.iter().map(|&x| x as usize + 1).product(),
    );
    out.push(expo_zero(b.len()));
    for (i, &bi) in b.iter().enumerate() {
        let prev = core::mem::take(&mut out);
        for e in prev {
            for v in 0..=bi {
                let mut e2 = e.clone();
                e2[i] = v;
                out.push(e2);
            }
        }
    }
    out
}

/// Π binom(b_i, g_i) as an exact integer
pub fn expo_binom(b: &Expo, g: &Expo) -> i64 {
    fn binom(n: u8, k: u8) -> i64 {
        let mut acc: i64 = 1;
        for j in 0..k as i64 {
            acc = acc * (n as i64 - j) / (j + 1);
        }
        acc
    }
    b.iter().zip(g.iter()).map(|(&bi, &gi)| binom(bi, gi)).product()
}

/// Π (a_i)! as an exact integer
pub fn expo_factorial(a: &Expo) -> i64 {
    a.iter()
        .map(|&ai| (1..=ai as i64).product::<i64>())
        .product()
}

/// Sparse polynomial in `dim` variables with rational coefficients.
///
/// Canonical form: the term map never stores zero coefficients, so equality
/// of maps is equality of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Expo, Rat>,
}

impl Poly {
    pub fn zero(dim: usize) -> Poly {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rat) -> Poly {
        Poly::monomial(dim, expo_zero(dim), c)
    }

    pub fn one(dim: usize) -> Poly {
        Poly::constant(dim, Rat::ONE)
    }

    pub fn monomial(dim: usize, e: Expo, c: Rat) -> Poly {
        assert_eq!(e.len(), dim, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { dim, terms }
    }

    /// The variable x_{i+1} (0-based index).
    pub fn var(dim: usize, i: usize) -> Poly {
        Poly::monomial(dim, expo_unit(dim, i), Rat::ONE)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Expo) -> Rat {
        self.terms.get(e).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn add_term(&mut self, e: Expo, c: Rat) {
        assert_eq!(e.len(), self.dim, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative in variable i (0-based).
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.dim, "variable index out of range");
        let mut out = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &Rat::int(e[i] as i64));
        }
        out
    }

    /// ∂^a applied to self, divided by a! when `scaled` (Taylor coefficient form).
    pub fn partial_multi(&self, a: &Expo) -> Poly {
        let mut p = self.clone();
        for (i, &ai) in a.iter().enumerate() {
            for _ in 0..ai {
                p = p.partial(i);
                if p.is_zero() {
                    return p;
                }
            }
        }
        p
    }

    /// Antiderivative in variable i with zero constant of integration.
    pub fn integrate(&self, i: usize) -> Poly {
        assert!(i < self.dim, "variable index out of range");
        let mut out = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] += 1;
            let den = Rat::int(e2[i] as i64);
            out.add_term(e2, c / &den);
        }
        out
    }

    /// Max total degree over stored terms; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(expo_total).max()
    }

    /// true when every term is free of variable i
    pub fn independent_of(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] == 0)
    }

    pub fn eval_at_zero(&self) -> Rat {
        self.coeff(&expo_zero(self.dim))
    }

    /// Terms in graded-lex order (degree descending, then lex descending),
    /// the order used for printing.
    pub fn sorted_terms(&self) -> Vec<(&Expo, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(ea, _), (eb, _)| {
            expo_total(eb)
                .cmp(&expo_total(ea))
                .then_with(|| eb.cmp(ea))
        });
        v
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Poly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(expo_add(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::int(-1))
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(out: &mut String, e: &Expo) {
    use core::fmt::Write;
    for (i, &ei) in e.iter().enumerate() {
        if ei == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        if ei == 1 {
            let _ = write!(out, "x{}", i + 1);
        } else {
            let _ = write!(out, "x{}^{}", i + 1, ei);
        }
    }
}

/// Renders one term as (sign, body) where body omits the leading sign.
pub(crate) fn term_string(e: &Expo, c: &Rat, trailing: Option<&str>) -> (bool, String) {
    use core::fmt::Write;
    let neg = c.is_negative();
    let ca = c.abs();
    let mut mono = String::new();
    write_monomial(&mut mono, e);
    let mut body = String::new();
    match (ca.is_one(), mono.is_empty(), trailing) {
        (true, true, None) => body.push('1'),
        (true, true, Some(t)) => body.push_str(t),
        (true, false, None) => body.push_str(&mono),
        (true, false, Some(t)) => {
            let _ = write!(body, "{mono}*{t}");
        }
        (false, true, None) => {
            let _ = write!(body, "{ca}");
        }
        (false, true, Some(t)) => {
            let _ = write!(body, "{ca}*{t}");
        }
        (false, false, None) => {
            let _ = write!(body, "{ca}*{mono}");
        }
        (false, false, Some(t)) => {
            let _ = write!(body, "{ca}*{mono}*{t}");
        }
    }
    (neg, body)
}

pub(crate) fn join_signed_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else if *neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| term_string(e, c, None))
            .collect();
        write!(f, "{}", join_signed_terms(parts))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
