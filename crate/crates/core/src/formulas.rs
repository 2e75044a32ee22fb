//! Closed determinant formulas for low-arity alternating sums on planar
//! vector fields: the quintuple bracket, the fourteen-determinant sextuple
//! formula, order-two projections, and the divergence decomposition.

use alloc::vec::Vec;

use smallvec::smallvec;

use crate::diffop::{d12, DiffOp, VField};
use crate::poly::{Expo, Poly};
use crate::rat::Rat;
use crate::skewsum::{subset_table, ProductMode};

/// Exact determinant of a square matrix of polynomials, by cofactor
/// expansion along the first column (entries are sparse; sizes stay ≤ 6).
pub fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n > 0, "empty matrix");
    let dim = m[0][0].dim();
    for row in m {
        assert_eq!(row.len(), n, "matrix not square");
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(dim);
    for (r, row) in m.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, rr)| rr[1..].to_vec())
            .collect();
        let cof = &row[0] * &det(&minor);
        if r % 2 == 0 {
            acc = &acc + &cof;
        } else {
            acc = &acc - &cof;
        }
    }
    acc
}

fn e2(a: u8, b: u8) -> Expo {
    smallvec![a, b]
}

/// The 5×5 determinant with rows ∂₁u, ∂₂u, ∂₁²u, ∂₁∂₂u, ∂₂²u applied to
/// the five arguments columnwise.
pub fn bracket5(us: &[Poly; 5]) -> Poly {
    for u in us {
        assert_eq!(u.dim(), 2, "bracket5 requires two variables");
    }
    let rows: [Expo; 5] = [e2(1, 0), e2(0, 1), e2(2, 0), e2(1, 1), e2(0, 2)];
    let m: Vec<Vec<Poly>> = rows
        .iter()
        .map(|a| us.iter().map(|u| u.partial_multi(a)).collect())
        .collect();
    det(&m)
}

/// Closed form of the alternating quintuple sum on Hamiltonian fields:
/// s₅(D₁₂(u₁),...,D₁₂(u₅)) = −3·D₁₂(bracket5(u₁..u₅)).
pub fn s5_closed(us: &[Poly; 5]) -> VField {
    d12(&bracket5(us)).scale(&Rat::int(-3))
}

/// Lower four rows of each ∂₁-part block: (derivative, component) applied
/// to the six arguments columnwise, under the top rows u_{j,1}, u_{j,2}.
/// The ∂₂ part uses the same weights with indices 1 and 2 exchanged.
const SEXTUPLE_BLOCKS: [(i64, [((u8, u8), usize); 4]); 7] = [
    (-1, [((0, 1), 0), ((1, 0), 1), ((0, 1), 1), ((0, 2), 1)]),
    (-1, [((1, 0), 0), ((0, 1), 0), ((0, 1), 1), ((2, 0), 0)]),
    (-1, [((1, 0), 0), ((0, 1), 0), ((1, 0), 1), ((0, 2), 1)]),
    (2, [((0, 1), 0), ((1, 0), 1), ((0, 1), 1), ((1, 1), 0)]),
    (2, [((1, 0), 0), ((0, 1), 0), ((1, 0), 1), ((1, 1), 0)]),
    (2, [((1, 0), 0), ((0, 1), 0), ((0, 1), 1), ((1, 1), 1)]),
    (-3, [((1, 0), 0), ((1, 0), 1), ((0, 1), 1), ((0, 2), 0)]),
];

fn sextuple_block_det(fields: &[VField], rows: &[((u8, u8), usize); 4], swap: bool) -> Poly {
    let top: [usize; 2] = if swap { [1, 0] } else { [0, 1] };
    let mut m: Vec<Vec<Poly>> = Vec::with_capacity(6);
    for comp in top {
        m.push(fields.iter().map(|x| x.component(comp).clone()).collect());
    }
    for &((a, b), comp) in rows {
        let (de, cc) = if swap {
            (e2(b, a), 1 - comp)
        } else {
            (e2(a, b), comp)
        };
        m.push(
            fields
                .iter()
                .map(|x| x.component(cc).partial_multi(&de))
                .collect(),
        );
    }
    det(&m)
}

/// Fourteen-determinant closed form of the alternating sextuple sum on
/// planar fields; agrees with the naive evaluation everywhere.
pub fn s6_closed(fields: &[VField; 6]) -> VField {
    for x in fields.iter() {
        assert_eq!(x.dim(), 2, "s6_closed requires two variables");
    }
    let mut p1 = Poly::zero(2);
    let mut p2 = Poly::zero(2);
    for (lam, rows) in &SEXTUPLE_BLOCKS {
        let c = Rat::int(*lam);
        p1 = &p1 + &sextuple_block_det(fields, rows, false).scale(&c);
        p2 = &p2 + &sextuple_block_det(fields, rows, true).scale(&c);
    }
    VField::new(alloc::vec![p1, p2])
}

struct ComponentRows {
    r1: Vec<Poly>,
    r2: Vec<Poly>,
}

impl ComponentRows {
    fn new(fields: &[VField]) -> ComponentRows {
        for x in fields {
            assert_eq!(x.dim(), 2, "quadratic projections require two variables");
        }
        ComponentRows {
            r1: fields.iter().map(|x| x.component(0).clone()).collect(),
            r2: fields.iter().map(|x| x.component(1).clone()).collect(),
        }
    }

    fn d(&self, comp: usize, i: usize) -> Vec<Poly> {
        let row = if comp == 0 { &self.r1 } else { &self.r2 };
        row.iter().map(|p| p.partial(i)).collect()
    }

    fn div(&self) -> Vec<Poly> {
        self.r1
            .iter()
            .zip(self.r2.iter())
            .map(|(a, b)| &a.partial(0) + &b.partial(1))
            .collect()
    }
}

/// Order-two part of the alternating triple sum, as three 3×3 determinants.
pub fn pr2_s3(fields: &[VField; 3]) -> DiffOp {
    let rows = ComponentRows::new(fields);
    let (r1, r2) = (&rows.r1, &rows.r2);
    let mut out = DiffOp::zero(2);
    out.add_term(e2(2, 0), -det(&[r1.clone(), r2.clone(), rows.d(0, 1)]));
    out.add_term(e2(1, 1), det(&[r1.clone(), r2.clone(), rows.d(0, 0)]));
    out.add_term(e2(1, 1), -det(&[r1.clone(), r2.clone(), rows.d(1, 1)]));
    out.add_term(e2(0, 2), det(&[r1.clone(), r2.clone(), rows.d(1, 0)]));
    out
}

/// Order-two part of the alternating quadruple sum.
pub fn pr2_s4(fields: &[VField; 4]) -> DiffOp {
    let rows = ComponentRows::new(fields);
    let (r1, r2) = (&rows.r1, &rows.r2);
    let m2 = Rat::int(-2);
    let mut out = DiffOp::zero(2);
    out.add_term(
        e2(2, 0),
        det(&[r1.clone(), r2.clone(), rows.d(0, 0), rows.d(0, 1)]).scale(&m2),
    );
    out.add_term(
        e2(1, 1),
        det(&[r1.clone(), r2.clone(), rows.d(0, 0), rows.d(1, 1)]).scale(&m2),
    );
    out.add_term(
        e2(1, 1),
        det(&[r1.clone(), r2.clone(), rows.d(1, 0), rows.d(0, 1)]).scale(&m2),
    );
    out.add_term(
        e2(0, 2),
        det(&[r1.clone(), r2.clone(), rows.d(1, 0), rows.d(1, 1)]).scale(&m2),
    );
    out
}

/// Order-two part of the alternating quintuple sum; the middle determinant
/// carries the divergence row.
pub fn pr2_s5(fields: &[VField; 5]) -> DiffOp {
    let rows = ComponentRows::new(fields);
    let (r1, r2) = (&rows.r1, &rows.r2);
    let mut out = DiffOp::zero(2);
    out.add_term(
        e2(2, 0),
        -det(&[r1.clone(), r2.clone(), rows.d(0, 0), rows.d(1, 1), rows.d(0, 1)]),
    );
    out.add_term(
        e2(1, 1),
        -det(&[r1.clone(), r2.clone(), rows.div(), rows.d(0, 1), rows.d(1, 0)]),
    );
    out.add_term(
        e2(0, 2),
        -det(&[r1.clone(), r2.clone(), rows.d(0, 0), rows.d(1, 1), rows.d(1, 0)]),
    );
    out
}

/// Σᵢ (−1)^{i+1} Div(Xᵢ) · s₅(X₁,..,omit i,..,X₆): equals the alternating
/// sextuple sum; the order-two parts of the five-fold sums cancel.
pub fn s6_div_decomposition(fields: &[VField; 6]) -> VField {
    for x in fields.iter() {
        assert_eq!(x.dim(), 2, "decomposition requires two variables");
    }
    let ops: Vec<DiffOp> = fields.iter().map(VField::as_op).collect();
    let memo = subset_table(&ops, ProductMode::Composition);
    let full = (1usize << 6) - 1;
    let mut total = DiffOp::zero(2);
    for i in 0..6 {
        let dv = fields[i].divergence();
        if dv.is_zero() {
            continue;
        }
        let s5 = &memo[full & !(1 << i)];
        let signed = if i % 2 == 0 { dv } else { -dv };
        total = &total + &s5.pscale(&signed);
    }
    assert!(
        total.is_zero() || total.is_first_order(),
        "order-two parts failed to cancel"
    );
    VField::from_op(&total).unwrap_or_else(|| VField::zero(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewsum::{s_k_fields, EvalStrategy};

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn dd(i: usize) -> VField {
        VField::partial(2, i)
    }

    #[test]
    fn det_small() {
        let id: Vec<Vec<Poly>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| if i == j { Poly::one(2) } else { Poly::zero(2) })
                    .collect()
            })
            .collect();
        assert_eq!(det(&id), Poly::one(2));

        let rep = alloc::vec![
            alloc::vec![x(0), x(0)],
            alloc::vec![x(1), x(1)],
        ];
        assert!(det(&rep).is_zero());
    }

    #[test]
    fn bracket5_example() {
        let us = [
            x(0),
            x(1),
            &x(0) * &x(0),
            &x(0) * &x(1),
            &(&x(1) * &x(1)) * &x(1),
        ];
        assert_eq!(bracket5(&us), x(1).scale(&Rat::int(12)));
        let rep = [x(0), x(0), x(1), &x(0) * &x(1), &x(1) * &x(1)];
        assert!(bracket5(&rep).is_zero());
        let cst = [x(0), x(1), &x(0) * &x(0), &x(0) * &x(1), Poly::one(2)];
        assert!(bracket5(&cst).is_zero());
    }

    #[test]
    fn quintuple_closed_matches_naive() {
        // potentials of (d1, d2, x1*d2, x1*d1 - x2*d2, x2^2*d1)
        let us = [
            -x(1),
            x(0),
            (&x(0) * &x(0)).scale(&Rat::new(1, 2)),
            -(&x(0) * &x(1)),
            (&(&x(1) * &x(1)) * &x(1)).scale(&Rat::new(-1, 3)),
        ];
        let fields: Vec<VField> = us.iter().map(d12).collect();
        let closed = s5_closed(&us);
        assert_eq!(closed, dd(0).scale(&Rat::int(6)));
        assert_eq!(
            s_k_fields(&fields, EvalStrategy::SubsetDp),
            closed.as_op()
        );
    }

    #[test]
    fn sextuple_closed_examples() {
        let tuple = [
            dd(0),
            dd(1),
            VField::term(0, x(0)),
            VField::term(0, x(1)),
            VField::term(1, x(0)),
            VField::term(0, &x(0) * &x(0)),
        ];
        let got = s6_closed(&tuple);
        assert_eq!(got, dd(1).scale(&Rat::int(-2)));
        assert_eq!(s_k_fields(&tuple, EvalStrategy::SubsetDp), got.as_op());
        assert_eq!(s6_div_decomposition(&tuple), got);

        let tuple2 = [
            dd(0),
            dd(1),
            VField::term(0, x(0)),
            VField::term(0, x(1)),
            VField::term(1, x(1)),
            VField::term(1, &x(0) * &x(0)),
        ];
        assert_eq!(s6_closed(&tuple2), dd(1).scale(&Rat::int(-6)));
    }

    #[test]
    fn quadratic_projections_match() {
        let t3 = [dd(0), VField::term(0, x(0)), VField::term(1, &x(0) * &x(1))];
        assert_eq!(pr2_s3(&t3), s_k_fields(&t3, EvalStrategy::SubsetDp).pr(2));

        let t4 = [
            dd(0),
            VField::term(0, x(1)),
            VField::term(1, x(0)),
            VField::term(1, &x(1) * &x(1)),
        ];
        assert_eq!(pr2_s4(&t4), s_k_fields(&t4, EvalStrategy::SubsetDp).pr(2));

        let t5 = [
            dd(0),
            dd(1),
            VField::term(0, x(0)),
            VField::term(0, x(1)),
            VField::term(1, x(0)),
        ];
        let got = pr2_s5(&t5);
        assert_eq!(got, s_k_fields(&t5, EvalStrategy::SubsetDp).pr(2));
        let mut expected = DiffOp::zero(2);
        expected.add_term(e2(1, 1), Poly::constant(2, Rat::int(-1)));
        assert_eq!(got, expected);
    }
}
