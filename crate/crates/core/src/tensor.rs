//! Tensor squares of operator algebras.
//!
//! An element of the tensor square is a finite linear combination of pairs
//! of operator monomials `x^e d^a ⊗ x^f d^b`.  Multiplication acts leg by
//! leg: `(A ⊗ B)(C ⊗ D) = AC ⊗ BD` with composition in each leg, so the
//! alternating sums from [`crate::skewsum`] make sense here unchanged.
//!
//! Two expansions of an alternating sum over two legs are provided:
//!
//! * [`split_tensor_sum`] — the plain (unsigned) sum of `s_l(S) ⊗ s_{k−l}(S̄)`
//!   over all proper nonempty argument subsets S, listed in ascending index
//!   order.  For k-tuples whose alternating sum lands in first order, this is
//!   the cross term that obstructs primitivity, in its fully expanded form.
//! * [`coproduct_mixed_term`] — the same obstruction computed directly: each
//!   argument X is lifted to `X ⊗ 1 + 1 ⊗ X`, the alternating sum is taken in
//!   the tensor square, and `s_k ⊗ 1 + 1 ⊗ s_k` is subtracted.  Unlike the
//!   split form, this is manifestly alternating in the arguments.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diffop::{DiffOp, VField};
use crate::poly::{expo_total, Expo, Poly};
use crate::rat::Rat;
use crate::skewsum::{subset_table, ProductMode};

/// A single operator monomial `x^cexp * d^dexp`, stored as
/// (derivative exponent, coefficient exponent).
pub type OpMono = (Expo, Expo);

/// An element of the tensor square of the operator algebra, kept in canonical
/// form: zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorOp {
    dim: usize,
    terms: BTreeMap<(OpMono, OpMono), Rat>,
}

impl TensorOp {
    pub fn zero(dim: usize) -> TensorOp {
        TensorOp { dim, terms: BTreeMap::new() }
    }

    /// `1 ⊗ 1`.
    pub fn unit(dim: usize) -> TensorOp {
        TensorOp::from_pair(&DiffOp::unit(dim), &DiffOp::unit(dim))
    }

    /// Expansion of `a ⊗ b` into monomial pairs.
    pub fn from_pair(a: &DiffOp, b: &DiffOp) -> TensorOp {
        assert_eq!(a.dim(), b.dim(), "dimension mismatch");
        let mut out = TensorOp::zero(a.dim());
        for (da, pa) in a.terms() {
            for (ea, ca) in pa.terms() {
                for (db, pb) in b.terms() {
                    for (eb, cb) in pb.terms() {
                        let key = ((da.clone(), ea.clone()), (db.clone(), eb.clone()));
                        out.add_term(key, ca * cb);
                    }
                }
            }
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

    pub fn terms(&self) -> impl Iterator<Item = (&(OpMono, OpMono), &Rat)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial pair `x^ea d^da ⊗ x^eb d^db`.
    pub fn coeff(&self, key: &(OpMono, OpMono)) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(|| Rat::int(0))
    }

    pub fn add_term(&mut self, key: (OpMono, OpMono), c: Rat) {
        if c.is_zero() {
            return;
        }
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

    pub fn add_assign(&mut self, rhs: &TensorOp) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (key, c) in rhs.terms() {
            self.add_term(key.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rat) -> TensorOp {
        let mut out = TensorOp::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (key, v) in self.terms() {
            out.terms.insert(key.clone(), v * c);
        }
        out
    }

    /// Leg-wise composition: `(A ⊗ B)(C ⊗ D) = AC ⊗ BD`.
    pub fn compose(&self, rhs: &TensorOp) -> TensorOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let dim = self.dim;
        let mono = |d: &Expo, e: &Expo| {
            DiffOp::term(d.clone(), Poly::monomial(dim, e.clone(), Rat::int(1)))
        };
        let mut out = TensorOp::zero(dim);
        for (((da1, ea1), (db1, eb1)), c1) in self.terms() {
            let a1 = mono(da1, ea1);
            let b1 = mono(db1, eb1);
            for (((da2, ea2), (db2, eb2)), c2) in rhs.terms() {
                let a2 = mono(da2, ea2);
                let b2 = mono(db2, eb2);
                let prod = TensorOp::from_pair(&a1.compose(&a2), &b1.compose(&b2));
                out.add_assign(&prod.scale(&(c1 * c2)));
            }
        }
        out
    }

    /// Swap the two legs.
    pub fn flip(&self) -> TensorOp {
        let mut out = TensorOp::zero(self.dim);
        for ((a, b), c) in self.terms() {
            out.add_term((b.clone(), a.clone()), c.clone());
        }
        out
    }
}

fn mono_op_string(dexp: &Expo, cexp: &Expo) -> String {
    use core::fmt::Write;
    let mut parts: Vec<String> = Vec::new();
    for (i, &e) in cexp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut s = String::new();
        let _ = write!(s, "x{}", i + 1);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
        parts.push(s);
    }
    for (i, &e) in dexp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut s = String::new();
        let _ = write!(s, "d{}", i + 1);
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
        parts.push(s);
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("*")
    }
}

impl core::fmt::Display for TensorOp {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (((da, ea), (db, eb)), c) in self.terms() {
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
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{} (x) {}", mono_op_string(da, ea), mono_op_string(db, eb))?;
        }
        Ok(())
    }
}

impl core::fmt::Debug for TensorOp {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(self, f)
    }
}

/// Unsigned split sum Σ_{∅ ≠ S ⊊ {1..k}} s_|S|(S) ⊗ s_{k−|S|}(S̄), arguments
/// inside each block kept in ascending index order.
pub fn split_tensor_sum(fields: &[VField]) -> TensorOp {
    let ops: Vec<DiffOp> = fields.iter().map(VField::as_op).collect();
    let dim = ops[0].dim();
    let table = subset_table(&ops, ProductMode::Composition);
    let full = (1usize << ops.len()) - 1;
    let mut out = TensorOp::zero(dim);
    for mask in 1..full {
        out.add_assign(&TensorOp::from_pair(&table[mask], &table[full & !mask]));
    }
    out
}

/// Alternating sum of a lifted argument tuple inside the tensor square,
/// evaluated by the same subset recurrence as [`subset_table`].
fn s_k_tensor(lifted: &[TensorOp]) -> TensorOp {
    let k = lifted.len();
    assert!(k >= 1 && k <= 16, "unsupported arity");
    let dim = lifted[0].dim();
    let mut memo: Vec<TensorOp> = alloc::vec![TensorOp::zero(dim); 1 << k];
    for (i, t) in lifted.iter().enumerate() {
        memo[1 << i] = t.clone();
    }
    for mask in 1usize..(1 << k) {
        let m = mask.count_ones() as usize;
        if m < 2 {
            continue;
        }
        let mut acc = TensorOp::zero(dim);
        let mut t = 0usize;
        for i in 0..k {
            if mask >> i & 1 == 0 {
                continue;
            }
            t += 1;
            let term = memo[mask & !(1 << i)].compose(&lifted[i]);
            let sign = if (m + t) % 2 == 0 { 1 } else { -1 };
            acc.add_assign(&term.scale(&Rat::int(sign)));
        }
        memo[mask] = acc;
    }
    memo.pop().unwrap()
}

/// Mixed term of the coproduct: lift each argument X to `X ⊗ 1 + 1 ⊗ X`,
/// evaluate the alternating sum in the tensor square, and subtract
/// `s_k ⊗ 1 + 1 ⊗ s_k`.  Zero exactly when the alternating sum is primitive
/// on the given tuple; alternating in the arguments by construction.
pub fn coproduct_mixed_term(fields: &[VField]) -> TensorOp {
    assert!(!fields.is_empty(), "empty argument list");
    let ops: Vec<DiffOp> = fields.iter().map(VField::as_op).collect();
    let dim = ops[0].dim();
    let unit = DiffOp::unit(dim);
    let lifted: Vec<TensorOp> = ops
        .iter()
        .map(|x| {
            let mut t = TensorOp::from_pair(x, &unit);
            t.add_assign(&TensorOp::from_pair(&unit, x));
            t
        })
        .collect();
    let mut out = s_k_tensor(&lifted);
    let mut table = subset_table(&ops, ProductMode::Composition);
    let s = table.pop().unwrap();
    out.add_assign(&TensorOp::from_pair(&s, &unit).scale(&Rat::int(-1)));
    out.add_assign(&TensorOp::from_pair(&unit, &s).scale(&Rat::int(-1)));
    out
}

/// Total polynomial-plus-derivative degree of the heaviest monomial pair,
/// handy for quick looks at how far a mixed term spreads.
pub fn top_weight(t: &TensorOp) -> usize {
    t.terms()
        .map(|(((da, ea), (db, eb)), _)| {
            expo_total(da) + expo_total(ea) + expo_total(db) + expo_total(eb)
        })
        .max()
        .unwrap_or(0)
}

/// Convenience for building monomial-pair keys in fixtures: `x^e d^d` per leg.
pub fn pair_key(da: &[u8], ea: &[u8], db: &[u8], eb: &[u8]) -> (OpMono, OpMono) {
    let mk = |v: &[u8]| -> Expo { Expo::from_slice(v) };
    ((mk(da), mk(ea)), (mk(db), mk(eb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::expo_unit;

    fn pvar(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn quintuple() -> Vec<VField> {
        // d1, d2, x1 d1 - x2 d2, x2 d1, x1 d2
        let h = VField::new(alloc::vec![pvar(0), -&pvar(1)]);
        alloc::vec![
            VField::partial(2, 0),
            VField::partial(2, 1),
            h,
            VField::term(0, pvar(1)),
            VField::term(1, pvar(0)),
        ]
    }

    #[test]
    fn split_sum_quintuple_matches_fixture() {
        let g = split_tensor_sum(&quintuple());
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
        assert_eq!(g.num_terms(), 10);
        for (da, ea, db, eb, c) in expect {
            assert_eq!(g.coeff(&pair_key(da, ea, db, eb)), Rat::int(c));
        }
    }

    #[test]
    fn split_sum_sextuple_top_coefficient() {
        // d1, d2, x1 d1, x2 d1, x1 d2, x1^2 d1
        let fields = alloc::vec![
            VField::partial(2, 0),
            VField::partial(2, 1),
            VField::term(0, pvar(0)),
            VField::term(0, pvar(1)),
            VField::term(1, pvar(0)),
            VField::term(0, &pvar(0) * &pvar(0)),
        ];
        let g = split_tensor_sum(&fields);
        assert!(!g.is_zero());
        assert_eq!(g.num_terms(), 36);
        // coefficient of d1d2 (x) x1^3 d1^2
        assert_eq!(
            g.coeff(&pair_key(&[1, 1], &[0, 0], &[2, 0], &[3, 0])),
            Rat::int(1)
        );
    }

    #[test]
    fn mixed_term_quintuple_matches_fixture() {
        let m = coproduct_mixed_term(&quintuple());
        let expect: [(&[u8], &[u8], &[u8], &[u8], i64); 16] = [
            (&[0, 1], &[0, 0], &[1, 1], &[0, 1], 6),
            (&[0, 1], &[0, 0], &[2, 0], &[1, 0], 6),
            (&[0, 1], &[0, 1], &[1, 1], &[0, 0], -6),
            (&[0, 1], &[1, 0], &[2, 0], &[0, 0], -6),
            (&[0, 2], &[0, 0], &[1, 0], &[0, 1], 6),
            (&[0, 2], &[0, 1], &[1, 0], &[0, 0], -6),
            (&[1, 0], &[0, 0], &[0, 2], &[0, 1], -6),
            (&[1, 0], &[0, 0], &[1, 1], &[1, 0], -6),
            (&[1, 0], &[0, 1], &[0, 2], &[0, 0], 6),
            (&[1, 0], &[1, 0], &[1, 1], &[0, 0], 6),
            (&[1, 1], &[0, 0], &[0, 1], &[0, 1], -6),
            (&[1, 1], &[0, 0], &[1, 0], &[1, 0], 6),
            (&[1, 1], &[0, 1], &[0, 1], &[0, 0], 6),
            (&[1, 1], &[1, 0], &[1, 0], &[0, 0], -6),
            (&[2, 0], &[0, 0], &[0, 1], &[1, 0], -6),
            (&[2, 0], &[1, 0], &[0, 1], &[0, 0], 6),
        ];
        assert_eq!(m.num_terms(), 16);
        for (da, ea, db, eb, c) in expect {
            assert_eq!(m.coeff(&pair_key(da, ea, db, eb)), Rat::int(c));
        }
        // the coproduct is cocommutative, so the mixed term is leg-symmetric
        assert_eq!(m.flip(), m);
    }

    #[test]
    fn mixed_term_vanishes_on_repeated_argument() {
        let mut fields = quintuple();
        fields[3] = fields[0].clone();
        assert!(coproduct_mixed_term(&fields).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let a = DiffOp::term(Expo::from_slice(&[1, 0]), Poly::constant(2, Rat::int(1)));
        let b = DiffOp::term(
            Expo::from_slice(&[0, 1]),
            Poly::monomial(2, expo_unit(2, 0), Rat::int(-2)),
        );
        let t = TensorOp::from_pair(&a, &b);
        assert_eq!(alloc::format!("{t}"), "-2*d1 (x) x1*d2");
        assert_eq!(alloc::format!("{}", TensorOp::zero(2)), "0");
    }
}
