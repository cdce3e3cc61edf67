//! Rational witnesses for the Pfaffian system `h_{2d+2} = 0`,
//! `h_{2d+3}·det A ≠ 0`, the bordered matrix `M(T)` built from them, and
//! the expansion checks around it.
//!
//! Throughout, `h_{i1,...,ik}` is the Pfaffian of `T` with rows and columns
//! `i1, ..., ik` (1-based, as a set) removed; it is zero when the remaining
//! size is odd.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cartan::tuple_pencil;
use crate::commfam::CommutingTuple;
use crate::error::{AlgebraError, Result};
use crate::format::matrix_json;
use crate::identities::{Counterexample, SuiteReport};
use crate::matrix::RingMat;
use crate::poly::{MultiPoly, VarTable};
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};
use crate::series::{Parity, TMonomial, TSeries, WeightIndex};

pub const DEFAULT_ENTRY_BOUND: i64 = 20;

/// `h_{indices}` of `t` by the last-column recursion.
pub fn h_value<R: Ring>(t: &RingMat<R>, indices: &[usize]) -> Result<R> {
    let zero_based: Vec<usize> = indices.iter().map(|&i| i - 1).collect();
    t.minor_delete(&zero_based)?.pf()
}

/// `h_{indices}` of `t` by the matchings sum.
pub fn h_value_oracle<R: Ring>(t: &RingMat<R>, indices: &[usize]) -> Result<R> {
    let zero_based: Vec<usize> = indices.iter().map(|&i| i - 1).collect();
    t.minor_delete(&zero_based)?.pf_matchings()
}

type HFn<'a> = dyn Fn(&RingMat<ExactScalar>, &[usize]) -> Result<ExactScalar> + 'a;

/// `A(i,j) = h²_{i,j,2d+2} + h²_{i,2d+1,2d+2} + h²_{j,2d+1,2d+2}`.
fn a_matrix(t: &RingMat<ExactScalar>, d: usize, h: &HFn<'_>) -> Result<RingMat<ExactScalar>> {
    let (p, q) = (2 * d + 1, 2 * d + 2);
    let one = t.ring_one().clone();
    let side: Vec<ExactScalar> = (1..=2 * d)
        .map(|i| h(t, &[i, p, q]).map(|v| v.mul(&v)))
        .collect::<Result<_>>()?;
    let mut rows = vec![Vec::with_capacity(2 * d); 2 * d];
    for i in 1..=2 * d {
        for j in 1..=2 * d {
            let hij = h(t, &[i, j, q])?;
            rows[i - 1].push(hij.mul(&hij).add(&side[i - 1]).add(&side[j - 1]));
        }
    }
    RingMat::from_rows(rows, &one)
}

#[derive(Clone, Debug)]
pub struct PfaffianSystemWitness {
    pub d: usize,
    pub seed: u64,
    pub attempts: usize,
    pub t: RingMat<ExactScalar>,
    /// `h_{2d+2}`, zero by construction.
    pub h_top: ExactScalar,
    /// `h_{2d+3}`.
    pub h_last: ExactScalar,
    pub a: RingMat<ExactScalar>,
    pub det_a: ExactScalar,
}

impl PfaffianSystemWitness {
    pub fn size(&self) -> usize {
        2 * self.d + 3
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "seed": self.seed,
            "attempts": self.attempts,
            "T": {"n": self.size(), "ring": "q", "rows": matrix_json(&self.t), "skew": true},
            "h_2d+2": self.h_top.to_string(),
            "h_2d+3": self.h_last.to_string(),
            "A": {"n": 2 * self.d, "ring": "q", "rows": matrix_json(&self.a), "skew": false},
            "det_A": self.det_a.to_string(),
        })
    }
}

/// Searches for a witness: random entries in `[-bound, bound]` except
/// `t12`, which is solved for from the affine equation `h_{2d+2} = α t12 + β`.
pub fn solve_pfaffian_system(d: usize, seed: u64, budget: usize) -> Result<PfaffianSystemWitness> {
    solve_pfaffian_system_with_bound(d, seed, budget, DEFAULT_ENTRY_BOUND)
}

pub fn solve_pfaffian_system_with_bound(
    d: usize,
    seed: u64,
    budget: usize,
    bound: i64,
) -> Result<PfaffianSystemWitness> {
    search(d, seed, budget, bound, true)
}

/// Same search, accepting any `T` with `h_{2d+2} = 0` and `h_{2d+3} ≠ 0`
/// regardless of `det A`. For `d ≥ 2`, `A` has rank at most 3 on
/// `h_{2d+2} = 0`, so this is the only form in which such matrices exist;
/// the expansion of `det M(T)` does not depend on `det A`.
pub fn solve_partial_system(d: usize, seed: u64, budget: usize) -> Result<PfaffianSystemWitness> {
    search(d, seed, budget, DEFAULT_ENTRY_BOUND, false)
}

fn search(
    d: usize,
    seed: u64,
    budget: usize,
    bound: i64,
    nondegenerate: bool,
) -> Result<PfaffianSystemWitness> {
    if d == 0 {
        return Err(AlgebraError::Precondition("d must be at least 1".into()));
    }
    let size = 2 * d + 3;
    let field = FieldKind::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarTable::new(["t12"])?;
    let t12 = MultiPoly::var(&vars, field, "t12")?;
    let pone = t12.one_like();
    for attempt in 1..=budget {
        let upper: Vec<i64> = (0..size * (size - 1) / 2)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect();
        let symbolic: Vec<MultiPoly> = upper
            .iter()
            .enumerate()
            .map(|(k, &v)| if k == 0 { t12.clone() } else { pone.mul_int(v) })
            .collect();
        let ts = RingMat::skew_from_upper(size, &symbolic, &pone)?;
        let h_top = h_value(&ts, &[2 * d + 2])?;
        let alpha = h_top.coeff_of(&[("t12", 1)])?.as_constant().expect("affine in t12");
        let beta = h_top.coeff_of(&[("t12", 0)])?.as_constant().expect("affine in t12");
        if alpha.is_zero() {
            continue;
        }
        let solved = beta.neg().checked_div(&alpha)?;
        let mut entries: Vec<ExactScalar> = upper.iter().map(|&v| field.from_int(v)).collect();
        entries[0] = solved;
        let t = RingMat::skew_from_upper(size, &entries, &field.one())?;
        let h_top = h_value(&t, &[2 * d + 2])?;
        let h_last = h_value(&t, &[2 * d + 3])?;
        let a = a_matrix(&t, d, &h_value)?;
        let det_a = a.det();
        if !h_top.is_zero() {
            return Err(AlgebraError::Inconsistent(format!(
                "solved t12 leaves h_{} = {h_top}",
                2 * d + 2
            )));
        }
        if h_last.is_zero() || (nondegenerate && det_a.is_zero()) {
            continue;
        }
        return Ok(PfaffianSystemWitness {
            d,
            seed,
            attempts: attempt,
            t,
            h_top,
            h_last,
            a,
            det_a,
        });
    }
    Err(AlgebraError::AttemptsExhausted {
        d,
        attempts: budget,
        seed,
    })
}

fn witness_cell(w: &PfaffianSystemWitness) -> Value {
    json!({"d": w.d, "seed": w.seed})
}

/// Recomputes every `h` value and `A` with the matchings sum.
pub fn verify_witness(w: &PfaffianSystemWitness) -> Result<SuiteReport> {
    let d = w.d;
    let top = h_value_oracle(&w.t, &[2 * d + 2])?;
    let last = h_value_oracle(&w.t, &[2 * d + 3])?;
    let a = a_matrix(&w.t, d, &h_value_oracle)?;
    let det_a = a.det_cofactor();
    let cell = witness_cell(w);
    let inputs = w.to_json();
    let checks = [
        ("h_2d+2", top.clone(), w.h_top.clone()),
        ("h_2d+2 = 0", top, w.t.ring_one().zero_like()),
        ("h_2d+3", last.clone(), w.h_last.clone()),
        ("det A", det_a.clone(), w.det_a.clone()),
    ];
    for (name, lhs, rhs) in checks {
        if lhs != rhs {
            return Ok(SuiteReport::failed(
                "witness",
                cell,
                Counterexample {
                    inputs,
                    lhs: format!("{name}: {lhs}"),
                    rhs: rhs.to_string(),
                },
            ));
        }
    }
    if a != w.a || a != a.transpose() || last.mul(&det_a).is_zero() {
        return Ok(SuiteReport::failed(
            "witness",
            cell,
            Counterexample {
                inputs,
                lhs: "A or nondegeneracy".into(),
                rhs: "symmetric A with h_2d+3 det A != 0".into(),
            },
        ));
    }
    Ok(SuiteReport::passed("witness", cell))
}

/// For `d = 1`: `h4 = t12 t35 − t13 t25 + t15 t23` and
/// `det A = −(t35² + (t25 + t15)²)(t35² + (t25 − t15)²)` at the witness.
pub fn check_closed_forms_d1(w: &PfaffianSystemWitness) -> Result<SuiteReport> {
    if w.d != 1 {
        return Err(AlgebraError::Precondition("closed forms are for d = 1".into()));
    }
    let t = |i: usize, j: usize| w.t.get(i - 1, j - 1).clone();
    let h4 = t(1, 2).mul(&t(3, 5)).sub(&t(1, 3).mul(&t(2, 5))).add(&t(1, 5).mul(&t(2, 3)));
    let sq = |x: ExactScalar| x.mul(&x);
    let det_a = sq(t(3, 5))
        .add(&sq(t(2, 5).add(&t(1, 5))))
        .mul(&sq(t(3, 5)).add(&sq(t(2, 5).sub(&t(1, 5)))))
        .neg();
    let cell = witness_cell(w);
    let r = SuiteReport::compare("witness-closed-forms", cell.clone(), w.to_json(), &h4, &w.h_top);
    if !r.pass {
        return Ok(r);
    }
    Ok(SuiteReport::compare("witness-closed-forms", cell, w.to_json(), &det_a, &w.det_a))
}

/// Variables `y, x0, x1, ..., x_{2d}`.
pub fn mt_vars(d: usize) -> Arc<VarTable> {
    let names: Vec<String> = ["y".to_string()]
        .into_iter()
        .chain((0..=2 * d).map(|i| format!("x{i}")))
        .collect();
    VarTable::new(names).expect("distinct names")
}

/// `M(T) = [[B(T), vᵗ], [−v, 0]]` with
/// `B(T) = diag(y x1, ..., y x_{2d}, Σ y x_i, 0, 0) + T` and
/// `v = (0, ..., 0, 1, y x0)`. The diagonal of `B(T)` makes `M(T)` not
/// skew-symmetric, so no skew flag is set.
pub fn build_mt(w: &PfaffianSystemWitness) -> Result<RingMat<MultiPoly>> {
    let d = w.d;
    let size = 2 * d + 3;
    let vars = mt_vars(d);
    let field = FieldKind::Rational;
    let v = |name: &str| MultiPoly::var(&vars, field, name);
    let one = MultiPoly::from_int(&vars, field, 1);
    let y = v("y")?;
    let xs: Vec<MultiPoly> = (1..=2 * d).map(|i| v(&format!("x{i}"))).collect::<Result<_>>()?;
    let mut diag: Vec<MultiPoly> = xs.iter().map(|x| y.mul(x)).collect();
    diag.push(diag.iter().fold(one.zero_like(), |acc, e| acc.add(e)));
    let border: Vec<MultiPoly> = (0..size)
        .map(|i| {
            if i == size - 2 {
                Ok(one.clone())
            } else if i == size - 1 {
                Ok(y.mul(&v("x0")?))
            } else {
                Ok(one.zero_like())
            }
        })
        .collect::<Result<_>>()?;
    Ok(RingMat::from_fn(size + 1, &one, |i, j| {
        if i < size && j < size {
            let mut e = MultiPoly::constant(&vars, w.t.get(i, j).clone());
            if i == j && i < diag.len() {
                e = e.add(&diag[i]);
            }
            e
        } else if i < size {
            border[i].clone()
        } else if j < size {
            border[j].neg()
        } else {
            one.zero_like()
        }
    }))
}

/// Checks the expansion of `det M(T)`: no terms below `y²`; the `y²` part
/// is `h²_{2d+3} x0² + ½ Σ a_ij x_i x_j`; every term of `y`-degree ≥ 3 has
/// positive degree in `x1, ..., x_{2d}`. Also checks that at `x_i = 0`
/// (`i ≥ 1`) `M(T)` is skew with Pfaffian `y x0 h_{2d+3} − h_{2d+2}`.
pub fn check_detmt_expansion(w: &PfaffianSystemWitness) -> Result<SuiteReport> {
    let d = w.d;
    let mt = build_mt(w)?;
    let det = mt.det();
    let vars = mt_vars(d);
    let field = FieldKind::Rational;
    let cell = witness_cell(w);
    let fail = |lhs: String, rhs: String| {
        Ok(SuiteReport::failed(
            "detmt-expansion",
            cell.clone(),
            Counterexample {
                inputs: w.to_json(),
                lhs,
                rhs,
            },
        ))
    };
    let xs: Vec<String> = (1..=2 * d).map(|i| format!("x{i}")).collect();
    for k in 0..2 {
        let low = det.coeff_of(&[("y", k)])?;
        if !low.is_zero() {
            return fail(format!("coefficient of y^{k}: {low}"), "0".into());
        }
    }
    let y2 = det.coeff_of(&[("y", 2)])?;
    let x0 = MultiPoly::var(&vars, field, "x0")?;
    let mut expected = x0.mul(&x0).scale(&w.h_last.mul(&w.h_last));
    let half = field.from_int(2).checked_inv()?;
    for i in 0..2 * d {
        for j in 0..2 * d {
            let xi = MultiPoly::var(&vars, field, &xs[i])?;
            let xj = MultiPoly::var(&vars, field, &xs[j])?;
            expected = expected.add(&xi.mul(&xj).scale(&w.a.get(i, j).mul(&half)));
        }
    }
    if y2 != expected {
        return fail(format!("y^2 part: {y2}"), expected.to_string());
    }
    for (mono, c) in det.terms() {
        let e = mono.exponents();
        if e[0] >= 3 && e[2..].iter().all(|&k| k == 0) {
            return fail(
                format!("term {c} with exponents {e:?} outside (x1..x{})", 2 * d),
                "terms of y-degree >= 3 in the ideal".into(),
            );
        }
    }
    let zero_x: HashMap<String, ExactScalar> = xs.iter().map(|x| (x.clone(), field.zero())).collect();
    let at_zero = mt.map(&x0.one_like(), |e| e.evaluate_partial(&zero_x).expect("known variables"));
    let at_zero = match at_zero.mark_skew() {
        Ok(m) => m,
        Err(_) => return fail("M(T) at x_i = 0 is not skew".into(), "skew".into()),
    };
    let pf = at_zero.pf()?;
    let y = MultiPoly::var(&vars, field, "y")?;
    let expected_pf = y
        .mul(&x0)
        .scale(&w.h_last)
        .sub(&MultiPoly::constant(&vars, w.h_top.clone()));
    if pf != expected_pf {
        return fail(format!("Pf at x_i = 0: {pf}"), expected_pf.to_string());
    }
    if pf.mul(&pf) != at_zero.det() {
        return fail("Pf^2 at x_i = 0".into(), "det".into());
    }
    Ok(SuiteReport::passed("detmt-expansion", cell))
}

/// For a skew `T` of size `2n` with `t_{i,2n} = 0` (`i ≤ 2n−3`): the
/// expansion of `det(T + diag(x1, ..., x_{2n−3}, 0, 0, 0))` has no
/// odd-degree parts, and its degree-0 and degree-2 parts match the closed
/// forms in Pfaffians of `T` (computed by the matchings sum).
pub fn check_lemma_5_6(t: &RingMat<ExactScalar>) -> Result<SuiteReport> {
    let size = t.n();
    if size % 2 == 1 || size < 4 || !t.satisfies_skew() {
        return Err(AlgebraError::Precondition(format!(
            "need an even skew matrix of size >= 4, got size {size}"
        )));
    }
    let nx = size - 3;
    for i in 1..=nx {
        if !t.get(i - 1, size - 1).is_zero() {
            return Err(AlgebraError::Precondition(format!(
                "zero pattern violated: t_{{{i},{size}}} = {}",
                t.get(i - 1, size - 1)
            )));
        }
    }
    let field = t.ring_one().field();
    let names: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let vars = VarTable::new(names.clone())?;
    let one = MultiPoly::from_int(&vars, field, 1);
    let m = RingMat::from_fn(size, &one, |i, j| {
        let mut e = MultiPoly::constant(&vars, t.get(i, j).clone());
        if i == j && i < nx {
            e = e.add(&MultiPoly::var(&vars, field, &names[i]).expect("known"));
        }
        e
    });
    let det = m.det();
    let cell = json!({"size": size});
    let inputs = json!({"T": matrix_json(t)});
    let fail = |lhs: String, rhs: String| {
        Ok(SuiteReport::failed("pfaffian-expansion", cell.clone(), Counterexample { inputs: inputs.clone(), lhs, rhs }))
    };
    for (mono, c) in det.terms() {
        if mono.degree() % 2 == 1 {
            return fail(format!("odd-degree term {c} {:?}", mono.exponents()), "0".into());
        }
    }
    let n2 = size;
    let tt = |i: usize, j: usize| t.get(i - 1, j - 1).clone();
    let h = |idx: &[usize]| h_value_oracle(t, idx);
    let form = |extra: &[usize]| -> Result<ExactScalar> {
        let mut a: Vec<usize> = extra.to_vec();
        a.extend([n2 - 2, n2]);
        let mut b: Vec<usize> = extra.to_vec();
        b.extend([n2 - 1, n2]);
        let v = h(&a)?.mul(&tt(n2 - 2, n2)).sub(&h(&b)?.mul(&tt(n2 - 1, n2)));
        Ok(v.mul(&v))
    };
    let c0 = det.as_constant().unwrap_or_else(|| {
        det.terms()
            .filter(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .next()
            .unwrap_or_else(|| field.zero())
    });
    let e0 = form(&[])?;
    if c0 != e0 {
        return fail(format!("degree-0 part {c0}"), e0.to_string());
    }
    let all: Vec<&str> = names.iter().map(String::as_str).collect();
    let deg2 = det.homogeneous_part_in(&all, 2)?;
    let mut expected = one.zero_like();
    for i in 1..=nx {
        for j in i + 1..=nx {
            let coef = form(&[i, j])?;
            let mono = MultiPoly::var(&vars, field, &names[i - 1])?.mul(&MultiPoly::var(&vars, field, &names[j - 1])?);
            expected = expected.add(&mono.scale(&coef));
        }
    }
    if deg2 != expected {
        return fail(format!("degree-2 part {deg2}"), expected.to_string());
    }
    Ok(SuiteReport::passed("pfaffian-expansion", cell))
}

/// Random integer skew matrix of size `2n` with the zero pattern
/// `t_{i,2n} = 0` for `i ≤ 2n−3`.
pub fn random_zero_pattern<G: rand::Rng>(n: usize, bound: i64, rng: &mut G) -> RingMat<ExactScalar> {
    let size = 2 * n;
    let field = FieldKind::Rational;
    let mut upper = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            if j == size - 1 && i < size - 3 {
                upper.push(field.zero());
            } else {
                upper.push(field.from_int(rng.gen_range(-bound..=bound)));
            }
        }
    }
    RingMat::skew_from_upper(size, &upper, &field.one()).expect("sizes agree")
}

fn lift_tuple(t: &CommutingTuple<ExactScalar>, vars: &Arc<VarTable>) -> Vec<RingMat<MultiPoly>> {
    let field = t.mats()[0].ring_one().field();
    let one = MultiPoly::from_int(vars, field, 1);
    t.mats()
        .iter()
        .map(|m| m.map(&one, |e| MultiPoly::constant(vars, e.clone())))
        .collect()
}

/// With `D(T0) = det(T0² I + Σ X^w T_w)` over `K[T0]`: `D(1) = F`,
/// `√D(1)` has degree at most `⌊n/2⌋`, `D(T = 0) = T0^{2n}`, and `D` is
/// weighted homogeneous of degree `2n` for `deg T0 = 1`, `deg T_w = 2`
/// (checked with a fresh variable `lam`).
pub fn check_ntilde_specialization(t: &CommutingTuple<ExactScalar>, cap: u32, trunc: u32) -> Result<SuiteReport> {
    let n = t.n();
    let bound = (n / 2) as u32;
    if trunc <= bound {
        return Err(AlgebraError::Precondition(format!(
            "truncation {trunc} must exceed {bound}"
        )));
    }
    let field = t.mats()[0].ring_one().field();
    let vars = VarTable::new(["T0", "lam"])?;
    let one = MultiPoly::from_int(&vars, field, 1);
    let t0 = MultiPoly::var(&vars, field, "T0")?;
    let lam = MultiPoly::var(&vars, field, "lam")?;
    let lifted = lift_tuple(t, &vars);
    let d_series = tuple_pencil(&lifted, cap, Parity::Even)?.det_shifted(&t0.mul(&t0), trunc)?;
    let cell = json!({"n": n, "d": t.d(), "cap": cap, "trunc": trunc});
    let fail = |lhs: String, rhs: String| {
        Ok(SuiteReport::failed(
            "ntilde",
            cell.clone(),
            Counterexample {
                inputs: json!({"provenance": t.provenance().to_string(), "matrices": t.mats().iter().map(matrix_json).collect::<Vec<_>>()}),
                lhs,
                rhs,
            },
        ))
    };

    let at_zero = d_series.constant_term();
    let t0_2n = t0.pow(2 * n as u32);
    if at_zero != t0_2n {
        return fail(format!("D(T = 0) = {at_zero}"), t0_2n.to_string());
    }

    let t0_one: HashMap<String, ExactScalar> = [("T0".to_string(), field.one())].into();
    let d_one = d_series.try_map_coeffs(&one, |c| c.evaluate_partial(&t0_one))?;
    let f = tuple_pencil(&lifted, cap, Parity::Even)?.det_one_plus(trunc)?;
    if d_one != f {
        return fail("D(1)".into(), "F".into());
    }
    let root = d_one.sqrt()?;
    if root.degree() > bound {
        return fail(format!("sqrt D(1) has degree {}", root.degree()), format!("<= {bound}"));
    }

    let scale_t0: HashMap<String, MultiPoly> = [("T0".to_string(), lam.mul(&t0))].into();
    let mut scaled = TSeries::zero(&one, trunc, d_series.parity());
    for (m, c) in d_series.terms() {
        let c = c.substitute(&scale_t0, &vars)?.mul(&lam.pow(2 * m.degree()));
        scaled.insert(m.clone(), c);
    }
    let expected = d_series.scale(&lam.pow(2 * n as u32));
    if scaled != expected {
        return fail("D(lam T0, lam^2 T)".into(), "lam^(2n) D".into());
    }
    Ok(SuiteReport::passed("ntilde", cell).with_observed(json!(root.degree())))
}

/// The `n = 2` instance of the matrix substitution into `M(T)`: `x0 ↦ T0·I`,
/// `x_i ↦ s_i·J` with `J = [[0,1],[−1,0]]` and `s_i` linear in the `T_w`,
/// constants `a ↦ a·I`. The result `M̃` is skew; `Pf(M̃)` is divisible by
/// `y²`, and the quotient at `y = 0` squares to
/// `det(h²_{2d+3} T0² I + ½ Σ a_ij Z_i Z_j)`.
pub fn check_qtilde_extraction(w: &PfaffianSystemWitness, seed: u64, trunc: u32) -> Result<SuiteReport> {
    let d = w.d;
    let field = FieldKind::Rational;
    let cvars = VarTable::new(["y", "T0"])?;
    let cone = MultiPoly::from_int(&cvars, field, 1);
    let weights = [WeightIndex::new(&[2])?, WeightIndex::new(&[4])?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s: Vec<TSeries<MultiPoly>> = (0..2 * d)
        .map(|_| {
            let mut ser = TSeries::zero(&cone, trunc, Parity::Even);
            for wi in &weights {
                ser.insert(TMonomial::var(wi.clone()), cone.mul_int(rng.gen_range(-3..=3)));
            }
            ser
        })
        .collect();
    let sone = TSeries::one(&cone, trunc, Parity::Even);
    let j = RingMat::from_rows(
        vec![vec![sone.zero_like(), sone.clone()], vec![sone.neg(), sone.zero_like()]],
        &sone,
    )?;
    let z: Vec<RingMat<TSeries<MultiPoly>>> = s.iter().map(|si| j.scalar_mul(si)).collect();
    let id = RingMat::identity(2, &sone);
    let lift = |p: &MultiPoly| -> RingMat<TSeries<MultiPoly>> {
        let mut acc = RingMat::zero(2, &sone);
        for (mono, c) in p.terms() {
            let e = mono.exponents();
            // exponents: y, x0, x1..x2d
            let mut coeff = MultiPoly::constant(&cvars, c.clone());
            coeff = coeff.mul(&MultiPoly::var(&cvars, field, "y").expect("y").pow(e[0]));
            coeff = coeff.mul(&MultiPoly::var(&cvars, field, "T0").expect("T0").pow(e[1]));
            let mut block = id.scalar_mul(&TSeries::constant(coeff, trunc, Parity::Even));
            for (zi, &k) in z.iter().zip(&e[2..]) {
                for _ in 0..k {
                    block = block.mul(zi).expect("2x2");
                }
            }
            acc = acc.add(&block).expect("2x2");
        }
        acc
    };
    let mt = build_mt(w)?;
    let big = mt.n() * 2;
    let blocks: Vec<Vec<RingMat<TSeries<MultiPoly>>>> = (0..mt.n())
        .map(|r| (0..mt.n()).map(|c| lift(mt.get(r, c))).collect())
        .collect();
    let m_tilde = RingMat::assemble(&blocks)?;
    let cell = json!({"d": d, "seed": w.seed, "n": 2, "trunc": trunc});
    let m_tilde = match m_tilde.mark_skew() {
        Ok(m) => m,
        Err(_) => {
            return Ok(SuiteReport::failed(
                "qtilde",
                cell,
                Counterexample {
                    inputs: w.to_json(),
                    lhs: format!("substituted {big}x{big} matrix is not skew"),
                    rhs: "skew".into(),
                },
            ))
        }
    };
    let q_tilde = m_tilde.pf()?;
    let n_y = match q_tilde.extract_power("y", 2) {
        Ok(v) => v,
        Err(e) => {
            return Ok(SuiteReport::failed(
                "qtilde",
                cell,
                Counterexample {
                    inputs: w.to_json(),
                    lhs: e.to_string(),
                    rhs: "divisible by y^2".into(),
                },
            ))
        }
    };
    let y_zero: HashMap<String, ExactScalar> = [("y".to_string(), field.zero())].into();
    let n0 = n_y.try_map_coeffs(&cone, |c| c.evaluate_partial(&y_zero))?;
    let t0 = MultiPoly::var(&cvars, field, "T0")?;
    let mut quad = id.scalar_mul(&TSeries::constant(
        t0.mul(&t0).scale(&w.h_last.mul(&w.h_last)),
        trunc,
        Parity::Even,
    ));
    let half = field.from_int(2).checked_inv()?;
    for a in 0..2 * d {
        for b in 0..2 * d {
            let c = MultiPoly::constant(&cvars, w.a.get(a, b).mul(&half));
            let term = z[a].mul(&z[b])?.scalar_mul(&TSeries::constant(c, trunc, Parity::Even));
            quad = quad.add(&term)?;
        }
    }
    let rhs = quad.det_cofactor();
    Ok(SuiteReport::compare(
        "qtilde",
        cell,
        w.to_json(),
        &n0.mul(&n0),
        &rhs,
    ))
}
