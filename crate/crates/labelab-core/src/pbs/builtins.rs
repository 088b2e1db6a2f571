//! Built-in systems for dot-product, disk and segment intersection graphs.
//! Labels are rational; sides of each comparison have non-negative
//! coefficients, with subtraction moved to the other side.

use super::{BoolExpr, Connective, Pbs, Polynomial};

fn expr_system(nvars: usize, polys: Vec<Polynomial>, expr: BoolExpr) -> Pbs {
    let l = polys.len();
    Pbs::new(nvars, polys, Connective::Expr { arity: l * l, expr }).expect("built-in system is well formed")
}

/// `k`-dot product: `u ~ v` iff `Σ x_i y_i ≥ 1`, i.e. `p1 = Σ x_i y_i`,
/// `p2 = 1`, edge iff `¬[p1 < p2]`.
pub fn dot_product_pbs(k: usize) -> Pbs {
    let nv = 2 * k;
    let dot = (0..k).fold(Polynomial::zero(nv), |acc, i| &acc + &Polynomial::product(nv, 1, &[i, k + i]));
    let one = Polynomial::constant(nv, 1);
    expr_system(nv, vec![dot, one], BoolExpr::not(BoolExpr::cmp(2, 0, 1)))
}

/// Disks `(cx, cy, r)`: `u ~ v` iff `(cx-cx')² + (cy-cy')² ≤ (r+r')²`, with
/// `p1 = cx² + cx'² + cy² + cy'²`, `p2 = r² + 2rr' + r'² + 2cx·cx' + 2cy·cy'`
/// and edge iff `¬[p2 < p1]`.
pub fn disk_pbs() -> Pbs {
    let nv = 6;
    let (cx, cy, r, cx2, cy2, r2) = (0, 1, 2, 3, 4, 5);
    let sq = |v| Polynomial::product(nv, 1, &[v, v]);
    let lhs = [sq(cx), sq(cx2), sq(cy), sq(cy2)].iter().fold(Polynomial::zero(nv), |a, p| &a + p);
    let rhs = [
        sq(r),
        Polynomial::product(nv, 2, &[r, r2]),
        sq(r2),
        Polynomial::product(nv, 2, &[cx, cx2]),
        Polynomial::product(nv, 2, &[cy, cy2]),
    ]
    .iter()
    .fold(Polynomial::zero(nv), |a, p| &a + p);
    expr_system(nv, vec![lhs, rhs], BoolExpr::not(BoolExpr::cmp(2, 1, 0)))
}

/// Closed segments `A B` (first label) and `C D` (second label), variables
/// `(ax, ay, bx, by | cx, cy, dx, dy)`.
///
/// Polynomials `2i`, `2i+1` (i < 4) are the positive and negative parts of the
/// orientations `(A,B,C)`, `(A,B,D)`, `(C,D,A)`, `(C,D,B)`; polynomials
/// `8 + 2i`, `9 + 2i` are the two sides of "point R lies within the bounding
/// box of P Q", `(R-P)·(R-Q) ≤ 0`, for the same four triples. The segments
/// meet iff the orientations show a proper crossing, or some endpoint is
/// collinear with and within the other segment.
pub fn segment_pbs() -> Pbs {
    let nv = 8;
    type Pt = (usize, usize);
    let (a, b, c, d): (Pt, Pt, Pt, Pt) = ((0, 1), (2, 3), (4, 5), (6, 7));
    let m = |u: usize, v: usize| Polynomial::product(nv, 1, &[u, v]);
    let sum = |ps: &[Polynomial]| ps.iter().fold(Polynomial::zero(nv), |acc, p| &acc + p);
    // orient(P, Q, R) = (qx - px)(ry - py) - (qy - py)(rx - px).
    let orient = |p: Pt, q: Pt, r: Pt| {
        let pos = sum(&[m(q.0, r.1), m(p.0, q.1), m(p.1, r.0)]);
        let neg = sum(&[m(q.0, p.1), m(p.0, r.1), m(q.1, r.0)]);
        (pos, neg)
    };
    // (rx - px)(rx - qx) + (ry - py)(ry - qy) ≤ 0.
    let within = |r: Pt, p: Pt, q: Pt| {
        let lhs = sum(&[m(r.0, r.0), m(p.0, q.0), m(r.1, r.1), m(p.1, q.1)]);
        let rhs = sum(&[m(r.0, q.0), m(p.0, r.0), m(r.1, q.1), m(p.1, r.1)]);
        (lhs, rhs)
    };
    let triples = [(a, b, c), (a, b, d), (c, d, a), (c, d, b)];
    let mut polys = Vec::new();
    for &(p, q, r) in &triples {
        let (pos, neg) = orient(p, q, r);
        polys.push(pos);
        polys.push(neg);
    }
    for &(p, q, r) in &triples {
        let (lhs, rhs) = within(r, p, q);
        polys.push(lhs);
        polys.push(rhs);
    }
    let l = polys.len();
    let positive = |i: usize| BoolExpr::cmp(l, 2 * i + 1, 2 * i);
    let negative = |i: usize| BoolExpr::cmp(l, 2 * i, 2 * i + 1);
    let zero = |i: usize| BoolExpr::And(vec![BoolExpr::not(positive(i)), BoolExpr::not(negative(i))]);
    let opposite = |i: usize, j: usize| {
        BoolExpr::Or(vec![
            BoolExpr::And(vec![positive(i), negative(j)]),
            BoolExpr::And(vec![negative(i), positive(j)]),
        ])
    };
    let on = |i: usize| BoolExpr::And(vec![zero(i), BoolExpr::not(BoolExpr::cmp(l, 9 + 2 * i, 8 + 2 * i))]);
    let expr = BoolExpr::Or(vec![
        BoolExpr::And(vec![opposite(0, 1), opposite(2, 3)]),
        on(0),
        on(1),
        on(2),
        on(3),
    ]);
    expr_system(nv, polys, expr)
}
