//! Algebraic invariants on random inputs.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use orthoinv::{ExactScalar, FieldKind, Monomial, MultiPoly, Parity, Ring, RingMat, TMonomial, TSeries, VarTable, WeightIndex};
use proptest::prelude::*;

const FIELDS: [FieldKind; 3] = [FieldKind::Rational, FieldKind::Gaussian, FieldKind::Prime(101)];

fn scalar(field: FieldKind, re: i64, im: i64, den: i64) -> ExactScalar {
    let r = field.from_int(re);
    let r = match field {
        FieldKind::Prime(_) => r,
        _ => r.checked_div(&field.from_int(den)).unwrap(),
    };
    match field.imaginary_unit() {
        Some(i) if field == FieldKind::Gaussian => r.add(&field.from_int(im).mul(&i)),
        _ => r,
    }
}

fn vars() -> Arc<VarTable> {
    VarTable::new(["a", "b", "c"]).unwrap()
}

fn poly(field: FieldKind, terms: &[(u32, u32, u32, i64)]) -> MultiPoly {
    let v = vars();
    terms.iter().fold(MultiPoly::zero(&v, field), |acc, &(x, y, z, c)| {
        acc.add(&MultiPoly::monomial(&v, Monomial::from_exponents(&[x, y, z]), field.from_int(c)))
    })
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -6i64..=6), 0..5)
}

fn skew(field: FieldKind, n: usize, vals: &[i64]) -> RingMat<ExactScalar> {
    let upper: Vec<ExactScalar> = vals.iter().take(n * (n - 1) / 2).map(|&v| field.from_int(v)).collect();
    RingMat::skew_from_upper(n, &upper, &field.one()).unwrap()
}

fn square(field: FieldKind, n: usize, vals: &[i64]) -> RingMat<ExactScalar> {
    RingMat::from_fn(n, &field.one(), |i, j| field.from_int(vals[i * n + j]))
}

fn weights() -> Vec<WeightIndex> {
    [[2u16, 0], [1, 1], [0, 2], [4, 0]]
        .iter()
        .map(|w| WeightIndex::new(w).unwrap())
        .collect()
}

/// A series with constant term 1 over `Q`, built from up to four
/// monomials in the even weights above.
fn series(trunc: u32, spec: &[(usize, usize, i64)]) -> TSeries<ExactScalar> {
    let one = FieldKind::Rational.one();
    let ws = weights();
    let mut s = TSeries::one(&one, trunc, Parity::Even);
    for &(a, b, c) in spec {
        let m = TMonomial::var(ws[a].clone()).mul(&TMonomial::var(ws[b].clone()));
        let m = if c % 2 == 0 { TMonomial::var(ws[a].clone()) } else { m };
        s = s.add(&TSeries::monomial(m, FieldKind::Rational.from_int(c), trunc, Parity::Even));
    }
    s
}

fn series_spec() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -4i64..=4), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(fi in 0usize..3, a in (-9i64..=9, -9i64..=9, 1i64..=5), b in (-9i64..=9, -9i64..=9, 1i64..=5), c in (-9i64..=9, -9i64..=9, 1i64..=5)) {
        let f = FIELDS[fi];
        let (x, y, z) = (scalar(f, a.0, a.1, a.2), scalar(f, b.0, b.1, b.2), scalar(f, c.0, c.1, c.2));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.sub(&x), f.zero());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.checked_inv().unwrap()), f.one());
        }
        prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn polynomial_ring_axioms(fi in 0usize..3, p in terms(), q in terms(), r in terms()) {
        let f = FIELDS[fi];
        let (p, q, r) = (poly(f, &p), poly(f, &q), poly(f, &r));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(MultiPoly::parse(&p.to_string(), &vars(), f).unwrap(), p.clone());
        if !q.is_zero() {
            prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(p in terms(), q in terms(), s in terms(), t in terms()) {
        let f = FieldKind::Rational;
        let (p, q) = (poly(f, &p), poly(f, &q));
        let v = vars();
        let bindings: HashMap<String, MultiPoly> =
            [("a".to_string(), poly(f, &s)), ("b".to_string(), poly(f, &t))].into();
        let sub = |x: &MultiPoly| x.substitute(&bindings, &v).unwrap();
        prop_assert_eq!(sub(&p.mul(&q)), sub(&p).mul(&sub(&q)));
        prop_assert_eq!(sub(&p.add(&q)), sub(&p).add(&sub(&q)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in terms(), q in terms(), pt in (-5i64..=5, -5i64..=5, -5i64..=5)) {
        let f = FieldKind::Rational;
        let (p, q) = (poly(f, &p), poly(f, &q));
        let at: HashMap<String, ExactScalar> = [("a", pt.0), ("b", pt.1), ("c", pt.2)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), f.from_int(v)))
            .collect();
        let ev = |x: &MultiPoly| x.evaluate(&at).unwrap();
        prop_assert_eq!(ev(&p.mul(&q)), ev(&p).mul(&ev(&q)));
    }

    #[test]
    fn series_sqrt_is_sound_and_unique(g in series_spec(), f in series_spec(), trunc in 1u32..5) {
        let g = series(trunc, &g);
        let root = g.sqrt().unwrap();
        prop_assert_eq!(root.mul(&root), g);
        let f = series(trunc, &f);
        prop_assert_eq!(f.mul(&f).sqrt().unwrap(), f);
    }

    #[test]
    fn series_inverse(g in series_spec(), trunc in 1u32..5) {
        let g = series(trunc, &g);
        let inv = g.try_inverse().unwrap();
        prop_assert_eq!(g.mul(&inv), g.one_like());
    }

    #[test]
    fn series_evaluation_respects_products(a in series_spec(), b in series_spec(), pt in prop::collection::vec(-3i64..=3, 4)) {
        // degrees stay within the truncation so nothing is cut off
        let (a, b) = (series(2, &a), series(2, &b));
        let (a4, b4) = (a.with_trunc(4), b.with_trunc(4));
        let point: BTreeMap<WeightIndex, ExactScalar> = weights()
            .into_iter()
            .zip(&pt)
            .map(|(w, &v)| (w, FieldKind::Rational.from_int(v)))
            .collect();
        let prod = a4.mul(&b4);
        prop_assert_eq!(prod.eval(&point).unwrap(), a.eval(&point).unwrap().mul(&b.eval(&point).unwrap()));
        prop_assert_eq!(a4.add(&b4).eval(&point).unwrap(), a.eval(&point).unwrap().add(&b.eval(&point).unwrap()));
    }

    #[test]
    fn extracting_a_power_inverts_multiplication(spec in series_spec(), k in 0u32..4, p in terms()) {
        let v = VarTable::new(["y", "a"]).unwrap();
        let f = FieldKind::Rational;
        let one = MultiPoly::from_int(&v, f, 1);
        let y = MultiPoly::var(&v, f, "y").unwrap();
        let a = MultiPoly::var(&v, f, "a").unwrap();
        let extra: MultiPoly = p.iter().fold(one.zero_like(), |acc, &(e0, e1, _, c)| {
            acc.add(&y.pow(e0).mul(&a.pow(e1)).mul_int(c))
        });
        let s = series(3, &spec).map_coeffs(&one, |c| MultiPoly::constant(&v, c.clone()).add(&extra));
        let shifted = s.map_coeffs(&one, |c| c.mul(&y.pow(k)));
        prop_assert_eq!(shifted.extract_power("y", k).unwrap(), s);
    }

    #[test]
    fn pfaffian_squares_to_determinant(fi in 0usize..3, half in 1usize..5, vals in prop::collection::vec(-9i64..=9, 28)) {
        let m = skew(FIELDS[fi], 2 * half, &vals);
        let pf = m.pf().unwrap();
        prop_assert_eq!(pf.mul(&pf), m.det());
        prop_assert_eq!(m.pf_matchings().unwrap(), pf);
    }

    #[test]
    fn pfaffian_under_congruence(fi in 0usize..3, half in 1usize..4, b in prop::collection::vec(-6i64..=6, 15), a in prop::collection::vec(-4i64..=4, 36)) {
        let f = FIELDS[fi];
        let n = 2 * half;
        let bm = skew(f, n, &b);
        let am = square(f, n, &a);
        let abat = am.mul(&bm).unwrap().mul(&am.transpose()).unwrap().mark_skew().unwrap();
        prop_assert_eq!(abat.pf().unwrap(), am.det().mul(&bm.pf().unwrap()));
    }

    #[test]
    fn determinant_is_multiplicative(fi in 0usize..3, n in 1usize..6, a in prop::collection::vec(-5i64..=5, 25), b in prop::collection::vec(-5i64..=5, 25)) {
        let f = FIELDS[fi];
        let (am, bm) = (square(f, n, &a), square(f, n, &b));
        prop_assert_eq!(am.mul(&bm).unwrap().det(), am.det().mul(&bm.det()));
        prop_assert_eq!(am.det_bareiss(), am.det_cofactor());
    }

    #[test]
    fn polynomial_determinants_agree(n in 1usize..4, entries in prop::collection::vec(terms(), 9)) {
        let f = FieldKind::Rational;
        let one = MultiPoly::from_int(&vars(), f, 1);
        let m = RingMat::from_fn(n, &one, |i, j| poly(f, &entries[i * n + j]));
        prop_assert_eq!(m.det_bareiss(), m.det_cofactor());
    }
}
