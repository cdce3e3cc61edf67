//! Small closed-form instances checked through the public API.

use std::collections::HashMap;

use orthoinv::cartan::{cartan_embed, n_t_series, GroupKind, GroupTag};
use orthoinv::identities::{check_example_four, enumerate_set_partitions};
use orthoinv::witness::{build_mt, check_detmt_expansion, h_value, mt_vars, solve_pfaffian_system};
use orthoinv::commfam::random_conjugated_cartan;
use orthoinv::{FieldKind, MultiPoly, Parity, Ring, RingMat, TMonomial, TSeries, VarTable, WeightIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn generic_skew(n: usize) -> (RingMat<MultiPoly>, std::sync::Arc<VarTable>) {
    let names: Vec<String> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| format!("t{i}{j}")))
        .collect();
    let vars = VarTable::new(names.clone()).unwrap();
    let upper: Vec<MultiPoly> = names
        .iter()
        .map(|v| MultiPoly::var(&vars, FieldKind::Rational, v).unwrap())
        .collect();
    let one = MultiPoly::from_int(&vars, FieldKind::Rational, 1);
    (RingMat::skew_from_upper(n, &upper, &one).unwrap(), vars)
}

#[test]
fn generic_four_by_four_pfaffian() {
    let (t, vars) = generic_skew(4);
    let expected = MultiPoly::parse("t12*t34 - t13*t24 + t14*t23", &vars, FieldKind::Rational).unwrap();
    assert_eq!(t.pf().unwrap(), expected);
    assert_eq!(t.pf_matchings().unwrap(), expected);
}

#[test]
fn h4_of_generic_five_by_five() {
    let (t, vars) = generic_skew(5);
    let h4 = h_value(&t, &[4]).unwrap();
    let expected = MultiPoly::parse("t12*t35 - t13*t25 + t15*t23", &vars, FieldKind::Rational).unwrap();
    assert_eq!(h4, expected);
    assert_eq!(h4.degree_in(&["t12"]).unwrap(), Some(1));
    // deletion is a set operation
    assert_eq!(t.minor_delete(&[0, 2, 3]).unwrap(), t.minor_delete(&[3, 0, 2]).unwrap());
}

#[test]
fn top_pfaffian_is_affine_in_t12() {
    for d in 1..=2 {
        let (t, _) = generic_skew(2 * d + 3);
        let h = h_value(&t, &[2 * d + 2]).unwrap();
        assert_eq!(h.degree_in(&["t12"]).unwrap(), Some(1));
        let alpha = h.coeff_of(&[("t12", 1)]).unwrap();
        let expected = h_value(&t, &[1, 2, 2 * d + 2]).unwrap();
        // h_{1,2,2d+2} lives in the same table, with t12 absent
        assert_eq!(alpha, expected);
    }
}

#[test]
fn cartan_embeddings() {
    let qi = FieldKind::Gaussian;
    let vars = VarTable::new(["x1", "x2"]).unwrap();
    let x1 = MultiPoly::var(&vars, qi, "x1").unwrap();
    let x2 = MultiPoly::var(&vars, qi, "x2").unwrap();
    let one = x1.one_like();
    let i = one.imaginary_unit_like().unwrap();
    let o2 = cartan_embed(GroupKind::new(GroupTag::O, 2).unwrap(), std::slice::from_ref(&x1), &one).unwrap();
    assert_eq!(*o2.get(0, 1), x1.mul(&i));
    assert_eq!(*o2.get(1, 0), x1.mul(&i).neg());
    assert!(o2.get(0, 0).is_zero());

    let sp4 = cartan_embed(GroupKind::new(GroupTag::Sp, 4).unwrap(), &[x1.clone(), x2.clone()], &one).unwrap();
    let diag = RingMat::diagonal(&[x1.clone(), x2.clone(), x1.neg(), x2.neg()], &one);
    assert_eq!(sp4, diag);
}

#[test]
fn n_t_for_small_groups() {
    let q = FieldKind::Gaussian;
    let kind = GroupKind::new(GroupTag::O, 2).unwrap();
    let n = n_t_series(kind, 1, 2, 2, q).unwrap();
    let one = n.ring_one().clone();
    let x11 = MultiPoly::var(one.vars(), q, "x11").unwrap();
    let w2 = WeightIndex::new(&[2]).unwrap();
    let mut expected = TSeries::one(&one, 2, Parity::Even);
    expected.insert(TMonomial::var(w2.clone()), x11.mul(&x11));
    assert_eq!(n, expected);

    let kind = GroupKind::new(GroupTag::O, 4).unwrap();
    let n = n_t_series(kind, 1, 2, 1, q).unwrap();
    let vars = n.ring_one().vars().clone();
    let sum = MultiPoly::parse("x11^2 + x21^2", &vars, q).unwrap();
    assert_eq!(n.coefficient(&TMonomial::var(w2)), sum);
    assert_eq!(n.num_terms(), 2);
}

#[test]
fn partitions_of_three() {
    let shown: Vec<String> = enumerate_set_partitions(3).iter().map(|p| p.to_string()).collect();
    assert_eq!(shown, ["{123}", "{12|3}", "{13|2}", "{1|23}", "{1|2|3}"]);
    let bell: Vec<usize> = (1..=6).map(|m| enumerate_set_partitions(m).len()).collect();
    assert_eq!(bell, [1, 2, 5, 15, 52, 203]);
}

#[test]
fn size_four_trace_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let t = random_conjugated_cartan(4, 3, FieldKind::Rational, &mut rng).unwrap();
        assert!(check_example_four(&t).unwrap().pass);
    }
}

#[test]
fn bordered_matrix_at_the_origin() {
    let w = solve_pfaffian_system(1, 0, 100).unwrap();
    let mt = build_mt(&w).unwrap();
    let zero: HashMap<String, _> = [("y".to_string(), FieldKind::Rational.zero())].into();
    let at_origin = mt.map(mt.ring_one(), |e| e.evaluate_partial(&zero).unwrap());
    let vars = mt_vars(1);
    for i in 0..5 {
        for j in 0..5 {
            assert_eq!(*at_origin.get(i, j), MultiPoly::constant(&vars, w.t.get(i, j).clone()));
        }
    }
    let border: Vec<String> = (0..6).map(|i| at_origin.get(i, 5).to_string()).collect();
    assert_eq!(border, ["0", "0", "0", "1", "0", "0"]);
}

#[test]
fn quadratic_part_of_bordered_determinant() {
    let w = solve_pfaffian_system(1, 0, 100).unwrap();
    let det = build_mt(&w).unwrap().det();
    let y2 = det.coeff_of(&[("y", 2)]).unwrap();
    let x0sq = y2.coeff_of(&[("x0", 2), ("x1", 0), ("x2", 0)]).unwrap();
    assert_eq!(x0sq.as_constant().unwrap(), w.h_last.mul(&w.h_last));
    let cross = y2.coeff_of(&[("x0", 0), ("x1", 1), ("x2", 1)]).unwrap();
    assert_eq!(cross.as_constant().unwrap(), *w.a.get(0, 1));
    assert!(det.coeff_of(&[("y", 1)]).unwrap().is_zero());
    assert!(check_detmt_expansion(&w).unwrap().pass);
}
