//! Polynomials with Grassmann (odd) generators and odd derivations.
//!
//! A super-polynomial is a linear combination of monomials
//! `x^e · ξ_{j₁}···ξ_{j_r}` with `j₁ < … < j_r`: the even variables commute
//! with everything, the odd generators anticommute pairwise and square to
//! zero.  Products pick up the Koszul sign of the merge that re-sorts the
//! odd word.
//!
//! An [`OddDerivation`] is `D = Σᵢ uᵢ · ∂/∂xᵢ` with odd coefficients `uᵢ`;
//! it shifts parity and obeys the graded Leibniz rule
//! `D(fg) = D(f)·g + (−1)^{|f|} f·D(g)`.  Powers of `D` are where the
//! alternating operator sums reappear: polarizing a field tuple (X₁,…,X_m)
//! into `uᵢ = Σⱼ ξⱼ·(Xⱼ)ᵢ` makes the coefficient of `ξ₁···ξ_m` in `D^m`
//! the m-fold alternating sum of the tuple, so nilpotency degrees of odd
//! derivations mirror the vanishing arities of those sums.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use smallvec::SmallVec;

use crate::diffop::VField;
use crate::poly::{expo_zero, expo_unit, Expo, Poly};
use crate::rat::Rat;

/// Strictly increasing word of odd-generator indices (0-based).
pub type OddWord = SmallVec<[u8; 8]>;

/// Koszul merge of two sorted odd words: `None` on a repeated index,
/// otherwise the sign of the interleaving and the merged word.
fn merge_odd(a: &OddWord, b: &OddWord) -> Option<(i64, OddWord)> {
    let mut out = OddWord::new();
    let mut sign = 1i64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] moves left past the a[i..] tail
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((sign, out))
}

/// Polynomial in `dim` commuting variables and finitely many anticommuting
/// generators, kept in canonical form (sorted odd words, no zero terms).
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPoly {
    dim: usize,
    terms: BTreeMap<(Expo, OddWord), Rat>,
}

impl SuperPoly {
    pub fn zero(dim: usize) -> SuperPoly {
        SuperPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rat) -> SuperPoly {
        let mut out = SuperPoly::zero(dim);
        out.add_term((expo_zero(dim), OddWord::new()), c);
        out
    }

    pub fn one(dim: usize) -> SuperPoly {
        SuperPoly::constant(dim, Rat::int(1))
    }

    /// The even variable xᵢ (0-based).
    pub fn var(dim: usize, i: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(dim);
        out.add_term((expo_unit(dim, i), OddWord::new()), Rat::int(1));
        out
    }

    /// The odd generator ξⱼ (0-based).
    pub fn odd_gen(dim: usize, j: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(dim);
        let mut w = OddWord::new();
        w.push(j as u8);
        out.add_term((expo_zero(dim), w), Rat::int(1));
        out
    }

    /// Embed an ordinary polynomial as an even super-polynomial.
    pub fn from_poly(p: &Poly) -> SuperPoly {
        let mut out = SuperPoly::zero(p.dim());
        for (e, c) in p.terms() {
            out.add_term((e.clone(), OddWord::new()), c.clone());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Expo, OddWord), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &(Expo, OddWord)) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(|| Rat::int(0))
    }

    pub fn add_term(&mut self, key: (Expo, OddWord), c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(key.1.windows(2).all(|w| w[0] < w[1]), "odd word not sorted");
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (key, v) in self.terms() {
            out.terms.insert(key.clone(), v * c);
        }
        out
    }

    /// Derivative in the even variable xᵢ.
    pub fn partial(&self, i: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        for ((e, w), c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term((e2, w.clone()), c * &Rat::int(e[i] as i64));
        }
        out
    }

    /// `Some(0)` / `Some(1)` when every term has even / odd Grassmann degree,
    /// `None` for mixed parity (the zero polynomial counts as even).
    pub fn parity(&self) -> Option<usize> {
        let mut seen: Option<usize> = if self.is_zero() { Some(0) } else { None };
        for ((_, w), _) in self.terms() {
            let p = w.len() % 2;
            match seen {
                None => seen = Some(p),
                Some(q) if q == p => {}
                _ => return None,
            }
        }
        seen
    }
}

impl core::ops::Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (key, c) in rhs.terms() {
            out.add_term(key.clone(), c.clone());
        }
        out
    }
}

impl core::ops::Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self + &rhs.scale(&Rat::int(-1))
    }
}

impl core::ops::Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = SuperPoly::zero(self.dim);
        for ((ea, wa), ca) in self.terms() {
            for ((eb, wb), cb) in rhs.terms() {
                if let Some((sign, w)) = merge_odd(wa, wb) {
                    let mut e = ea.clone();
                    for (t, &v) in eb.iter().enumerate() {
                        e[t] += v;
                    }
                    out.add_term((e, w), &(ca * cb) * &Rat::int(sign));
                }
            }
        }
        out
    }
}

impl core::ops::Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(&Rat::int(-1))
    }
}

fn super_mono_string(e: &Expo, w: &OddWord) -> String {
    use core::fmt::Write;
    let mut parts: Vec<String> = Vec::new();
    for (i, &p) in e.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let mut s = String::new();
        let _ = write!(s, "x{}", i + 1);
        if p > 1 {
            let _ = write!(s, "^{p}");
        }
        parts.push(s);
    }
    for &j in w.iter() {
        let mut s = String::new();
        let _ = write!(s, "xi{}", j + 1);
        parts.push(s);
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("*")
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e, w), c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let body = super_mono_string(e, w);
            if mag.is_one() && body != "1" {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An odd derivation `D = Σᵢ uᵢ · ∂/∂xᵢ` of the super-polynomial algebra,
/// with each coefficient `uᵢ` of odd parity.
#[derive(Clone, Debug)]
pub struct OddDerivation {
    dim: usize,
    coeffs: Vec<SuperPoly>,
}

impl OddDerivation {
    pub fn new(coeffs: Vec<SuperPoly>) -> OddDerivation {
        assert!(!coeffs.is_empty(), "need at least one coefficient");
        let dim = coeffs[0].dim();
        assert_eq!(coeffs.len(), dim, "one coefficient per even variable");
        for u in &coeffs {
            assert_eq!(u.dim(), dim, "dimension mismatch");
            // zero lies in the odd subspace even though parity() grades it even
            assert!(
                u.is_zero() || u.parity() == Some(1),
                "coefficients must be odd"
            );
        }
        OddDerivation { dim, coeffs }
    }

    /// Polarize a field tuple: `uᵢ = Σⱼ ξⱼ · (Xⱼ)ᵢ`, one odd generator per
    /// field.  The coefficient of `ξ₁···ξ_m` in `D^m(f)` then recovers the
    /// m-fold alternating sum of the tuple applied to `f`.
    pub fn polarized(fields: &[VField]) -> OddDerivation {
        assert!(!fields.is_empty(), "need at least one field");
        let dim = fields[0].dim();
        let mut coeffs = alloc::vec![SuperPoly::zero(dim); dim];
        for (j, x) in fields.iter().enumerate() {
            assert_eq!(x.dim(), dim, "dimension mismatch");
            let xi = SuperPoly::odd_gen(dim, j);
            for i in 0..dim {
                let comp = SuperPoly::from_poly(x.component(i));
                coeffs[i] = &coeffs[i] + &(&xi * &comp);
            }
        }
        OddDerivation::new(coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[SuperPoly] {
        &self.coeffs
    }

    /// `D(f) = Σᵢ uᵢ · ∂f/∂xᵢ`.
    pub fn apply(&self, f: &SuperPoly) -> SuperPoly {
        assert_eq!(f.dim(), self.dim, "dimension mismatch");
        let mut out = SuperPoly::zero(self.dim);
        for (i, u) in self.coeffs.iter().enumerate() {
            out = &out + &(u * &f.partial(i));
        }
        out
    }

    /// `D^p(f)`.
    pub fn power_apply(&self, p: usize, f: &SuperPoly) -> SuperPoly {
        let mut cur = f.clone();
        for _ in 0..p {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur);
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_generators_anticommute_and_square_to_zero() {
        let a = SuperPoly::odd_gen(2, 0);
        let b = SuperPoly::odd_gen(2, 1);
        assert_eq!(&a * &b, -&(&b * &a));
        assert!((&a * &a).is_zero());
        // associativity across a sign-bearing merge
        let c = SuperPoly::odd_gen(2, 2);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn graded_leibniz_rule() {
        let x1 = SuperPoly::var(2, 0);
        let x2 = SuperPoly::var(2, 1);
        let xi = |j| SuperPoly::odd_gen(2, j);
        // D with odd coefficients u1 = x2 ξ1 + ξ2 ξ3 ξ4, u2 = x1² ξ2
        let u1 = &(&x2 * &xi(0)) + &(&(&xi(1) * &xi(2)) * &xi(3));
        let u2 = &(&x1 * &x1) * &xi(1);
        let d = OddDerivation::new(alloc::vec![u1, u2]);
        // even f, odd g
        let f = &(&x1 * &x1) + &(&(&x2 * &xi(0)) * &xi(2));
        let g = &(&x2 * &xi(3)) + &(&(&(&x1 * &xi(0)) * &xi(1)) * &xi(2));
        assert_eq!(f.parity(), Some(0));
        assert_eq!(g.parity(), Some(1));
        // D(fg) = D(f) g + f D(g)        (f even)
        let fg = &f * &g;
        assert_eq!(d.apply(&fg), &(&d.apply(&f) * &g) + &(&f * &d.apply(&g)));
        // D(gf) = D(g) f − g D(f)        (g odd)
        let gf = &g * &f;
        assert_eq!(d.apply(&gf), &(&d.apply(&g) * &f) - &(&g * &d.apply(&f)));
    }

    #[test]
    fn polarized_sextuple_is_nilpotent_of_order_seven() {
        let x1 = Poly::var(2, 0);
        let x2 = Poly::var(2, 1);
        let fields = alloc::vec![
            VField::partial(2, 0),
            VField::partial(2, 1),
            VField::term(0, x1.clone()),
            VField::term(0, x2.clone()),
            VField::term(1, x1.clone()),
            VField::term(0, &x1 * &x1),
        ];
        let d = OddDerivation::polarized(&fields);
        let f = SuperPoly::var(2, 1); // x2
        let d6 = d.power_apply(6, &f);
        // single term 2·ξ1···ξ6
        let mut word = OddWord::new();
        word.extend_from_slice(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(d6.num_terms(), 1);
        assert_eq!(d6.coeff(&(expo_zero(2), word)), Rat::int(2));
        assert!(d.apply(&d6).is_zero());
        // and the seventh power kills every even quadratic
        for seed in [&x1 * &x1, &x1 * &x2, &x2 * &x2] {
            assert!(d.power_apply(7, &SuperPoly::from_poly(&seed)).is_zero());
        }
    }

    #[test]
    fn one_variable_square_depends_on_generator_count() {
        // u1 = 2ξ1 + 3x1ξ2: two generators, D² generically nonzero
        let x1 = SuperPoly::var(1, 0);
        let u = &SuperPoly::odd_gen(1, 0).scale(&Rat::int(2))
            + &(&x1 * &SuperPoly::odd_gen(1, 1)).scale(&Rat::int(3));
        let d = OddDerivation::new(alloc::vec![u]);
        let f = &x1 * &x1;
        assert!(!d.power_apply(2, &f).is_zero());
        // u1 = 2x1ξ1: one generator, D² = 0 since ξ1² = 0
        let u1 = (&x1 * &SuperPoly::odd_gen(1, 0)).scale(&Rat::int(2));
        let d1 = OddDerivation::new(alloc::vec![u1]);
        assert!(d1.power_apply(2, &f).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let x1 = SuperPoly::var(2, 0);
        let t = &(&x1 * &x1).scale(&Rat::new(3, 2)) - &(&x1 * &SuperPoly::odd_gen(2, 0));
        assert_eq!(alloc::format!("{t}"), "-x1*xi1 + 3/2*x1^2");
    }
}
