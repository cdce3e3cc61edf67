//! Identity suites evaluated at concrete commuting tuples: the degree bound
//! on `√F`, vanishing determinants in odd size, multiplicativity of the
//! Pfaffian on commuting triples, the trace identity over set partitions
//! and conjugation invariance.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan::{matrix_pow, tuple_pencil};
use crate::commfam::{is_orthogonal, CommutingTuple};
use crate::error::{AlgebraError, Result};
use crate::format::matrix_json;
use crate::matrix::RingMat;
use crate::poly::MultiPoly;
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};
use crate::series::Parity;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: Value,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite over one parameter cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cell: Value,
    pub cases: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<Value>,
}

impl SuiteReport {
    pub fn passed(suite: &str, cell: Value) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cell,
            cases: 1,
            pass: true,
            counterexample: None,
            seed: None,
            skipped: None,
            observed: None,
        }
    }

    pub fn failed(suite: &str, cell: Value, counterexample: Counterexample) -> Self {
        SuiteReport {
            pass: false,
            counterexample: Some(counterexample),
            ..SuiteReport::passed(suite, cell)
        }
    }

    /// A record for a cell that was deliberately not run.
    pub fn skipped(suite: &str, cell: Value, reason: &str) -> Self {
        SuiteReport {
            cases: 0,
            skipped: Some(reason.to_string()),
            ..SuiteReport::passed(suite, cell)
        }
    }

    /// Pass iff `lhs == rhs`.
    pub fn compare<R: fmt::Display + PartialEq>(suite: &str, cell: Value, inputs: Value, lhs: &R, rhs: &R) -> Self {
        if lhs == rhs {
            SuiteReport::passed(suite, cell)
        } else {
            SuiteReport::failed(
                suite,
                cell,
                Counterexample {
                    inputs,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                },
            )
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_observed(mut self, v: Value) -> Self {
        self.observed = Some(v);
        self
    }

    /// Folds per-case reports into one report for the cell: case counts
    /// add up, the first counterexample is kept, numeric observations are
    /// reduced to their maximum.
    pub fn merge(suite: &str, cell: Value, seed: Option<u64>, parts: Vec<SuiteReport>) -> Self {
        let mut out = SuiteReport {
            cases: 0,
            seed,
            ..SuiteReport::passed(suite, cell)
        };
        let mut max_obs: Option<u64> = None;
        for p in parts {
            out.cases += p.cases;
            if !p.pass && out.pass {
                out.pass = false;
                out.counterexample = p.counterexample;
            }
            if let Some(v) = p.observed.as_ref().and_then(Value::as_u64) {
                max_obs = Some(max_obs.map_or(v, |m| m.max(v)));
            }
        }
        out.observed = max_obs.map(Value::from);
        out
    }
}

fn tuple_json<R: Ring>(t: &CommutingTuple<R>) -> Value {
    json!({
        "provenance": t.provenance().to_string(),
        "matrices": t.mats().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

/// Computes `√det(I + Σ_{w∈S} X^w T_w)` and checks that it has no terms
/// above degree `⌊n/2⌋`. The observed degree is recorded.
pub fn check_sqrt_degree_bound<R: Ring>(t: &CommutingTuple<R>, cap: u32, trunc: u32) -> Result<SuiteReport> {
    let n = t.n();
    let bound = (n / 2) as u32;
    if trunc <= bound {
        return Err(AlgebraError::Precondition(format!(
            "truncation {trunc} must exceed the bound {bound}"
        )));
    }
    let cell = json!({"n": n, "d": t.d(), "cap": cap, "trunc": trunc});
    let f = tuple_pencil(t.mats(), cap, Parity::Even)?.det_one_plus(trunc)?;
    let root = f.sqrt()?;
    let deg = root.degree();
    let report = if deg <= bound {
        SuiteReport::passed("degree-bound", cell)
    } else {
        let high: Vec<String> = root
            .terms()
            .filter(|(m, _)| m.degree() > bound)
            .take(3)
            .map(|(m, c)| format!("{c} * {m}"))
            .collect();
        SuiteReport::failed(
            "degree-bound",
            cell,
            Counterexample {
                inputs: tuple_json(t),
                lhs: format!("degree {deg}: {}", high.join(" + ")),
                rhs: format!("degree <= {bound}"),
            },
        )
    };
    Ok(report.with_observed(json!(deg)))
}

/// Moves a scalar into `field` (rationals embed everywhere).
pub fn cast_scalar(c: &ExactScalar, field: FieldKind) -> Result<ExactScalar> {
    if c.field() == field {
        return Ok(c.clone());
    }
    match c.as_rational() {
        Some(q) => field.from_rational(q),
        None => Err(AlgebraError::FieldMismatch {
            left: c.field().to_string(),
            right: field.to_string(),
        }),
    }
}

/// `f(X_1, ..., X_d)` with the variables of `f`'s table bound to the tuple
/// in order; monomials are multiplied in ascending variable order.
pub fn eval_matrix_poly(f: &MultiPoly, mats: &[RingMat<ExactScalar>]) -> Result<RingMat<ExactScalar>> {
    if f.vars().len() != mats.len() {
        return Err(AlgebraError::Dimension(format!(
            "{} variables for {} matrices",
            f.vars().len(),
            mats.len()
        )));
    }
    let one = mats[0].ring_one().clone();
    let field = one.field();
    let n = mats[0].n();
    let mut acc = RingMat::zero(n, &one);
    for (mono, c) in f.terms() {
        let mut term = RingMat::identity(n, &one).scalar_mul(&cast_scalar(c, field)?);
        for (x, &e) in mats.iter().zip(mono.exponents()) {
            if e > 0 {
                term = term.mul(&matrix_pow(x, e))?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// For odd `n` and `f(0) = 0`: `det f(X_1, ..., X_d) = 0`.
pub fn check_det_vanishing_odd(t: &CommutingTuple<ExactScalar>, f: &MultiPoly) -> Result<SuiteReport> {
    let n = t.n();
    if n.is_multiple_of(2) {
        return Err(AlgebraError::Precondition(format!("size {n} is not odd")));
    }
    if !f.coefficient(&vec![0; f.vars().len()]).is_zero() {
        return Err(AlgebraError::Precondition(format!("{f} has a nonzero constant term")));
    }
    let det = eval_matrix_poly(f, t.mats())?.det();
    let inputs = json!({"tuple": tuple_json(t), "f": f.to_string()});
    Ok(SuiteReport::compare(
        "det-vanishing-odd",
        json!({"n": n, "d": t.d()}),
        inputs,
        &det,
        &det.zero_like(),
    ))
}

/// `Pf(X_1 X_2 X_3) = (−1)^{n/2} Pf(X_1) Pf(X_2) Pf(X_3)` for commuting
/// skew matrices of even size. Both sides use the last-column recursion;
/// the matchings sum cross-checks the left side up to size 8.
pub fn check_pf_multiplicative<R: Ring>(x: [&RingMat<R>; 3]) -> Result<SuiteReport> {
    let n = x[0].n();
    if n % 2 == 1 {
        return Err(AlgebraError::Precondition(format!("size {n} is not even")));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if !x[i].commutes_with(x[j])? {
            return Err(AlgebraError::Precondition(format!(
                "X{} and X{} do not commute",
                i + 1,
                j + 1
            )));
        }
    }
    let skew = |m: &RingMat<R>| m.clone().mark_skew();
    let product = skew(&x[0].mul(x[1])?.mul(x[2])?)
        .map_err(|_| AlgebraError::Inconsistent("product of the triple is not skew".into()))?;
    let lhs = product.pf()?;
    let mut rhs = skew(x[0])?.pf()?.mul(&skew(x[1])?.pf()?).mul(&skew(x[2])?.pf()?);
    if (n / 2) % 2 == 1 {
        rhs = rhs.neg();
    }
    let cell = json!({"n": n});
    let inputs = json!(x.iter().map(|m| matrix_json(m)).collect::<Vec<_>>());
    if n <= 8 {
        let oracle = product.pf_matchings()?;
        if oracle != lhs {
            return Ok(SuiteReport::failed(
                "pf-multiplicative",
                cell,
                Counterexample {
                    inputs,
                    lhs: format!("recursion {lhs}"),
                    rhs: format!("matchings {oracle}"),
                },
            ));
        }
    }
    Ok(SuiteReport::compare("pf-multiplicative", cell, inputs, &lhs, &rhs))
}

/// A partition of `{1, ..., m}` with blocks sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.blocks.iter().flatten().any(|&e| e >= 10);
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let e: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                e.join(if wide { "," } else { "" })
            })
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

/// All partitions of `{1, ..., m}`, ordered by number of blocks and then by
/// restricted growth string.
pub fn enumerate_set_partitions(m: usize) -> Vec<SetPartition> {
    let mut rgs_list: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; m];
    fn rec(pos: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[pos] = b;
            rec(pos + 1, max.max(b), cur, out);
        }
    }
    if m > 0 {
        // the first element always opens block 0
        rec(1, 0, &mut cur, &mut rgs_list);
    }
    let mut parts: Vec<(usize, Vec<usize>, SetPartition)> = rgs_list
        .into_iter()
        .map(|rgs| {
            let h = rgs.iter().max().map_or(0, |&x| x + 1);
            let mut blocks = vec![Vec::new(); h];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i + 1);
            }
            (h, rgs, SetPartition { blocks })
        })
        .collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    parts.into_iter().map(|(_, _, p)| p).collect()
}

/// `Σ_{λ∈P_m} (−1/2)^{h(λ)} Π_i (|λ_i|−1)! tr(Π_{s∈λ_i} Y_s)`.
pub fn trace_identity_sum<R: Ring>(ys: &[RingMat<R>]) -> Result<R> {
    let m = ys.len();
    let one = ys[0].ring_one().clone();
    let minus_half = one
        .div_int(-2)
        .ok_or_else(|| AlgebraError::Precondition("2 is not invertible".into()))?;
    let mut block_trace: HashMap<Vec<usize>, R> = HashMap::new();
    let mut total = one.zero_like();
    for part in enumerate_set_partitions(m) {
        let mut term = minus_half.pow(part.len() as u32);
        for block in part.blocks() {
            let tr = match block_trace.get(block) {
                Some(v) => v.clone(),
                None => {
                    let mut prod = ys[block[0] - 1].clone();
                    for &s in &block[1..] {
                        prod = prod.mul(&ys[s - 1])?;
                    }
                    let v = prod.trace();
                    block_trace.insert(block.clone(), v.clone());
                    v
                }
            };
            let fact: i64 = (1..block.len() as i64).product();
            term = term.mul(&tr).mul_int(fact);
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// The trace identity with `m = ⌊n/2⌋ + 1` and `Y_j = Π_i X_i^{a[i][j]}`.
/// Over `F_p` the cell is skipped unless `p > m`.
pub fn check_trace_identity(t: &CommutingTuple<ExactScalar>, a: &[Vec<u32>]) -> Result<SuiteReport> {
    let n = t.n();
    let m = n / 2 + 1;
    let cell = json!({"n": n, "d": t.d(), "m": m});
    if a.len() != t.d() || a.iter().any(|row| row.len() != m) {
        return Err(AlgebraError::Dimension(format!(
            "exponents must be a {}×{m} array",
            t.d()
        )));
    }
    for j in 0..m {
        let s: u32 = a.iter().map(|row| row[j]).sum();
        if s == 0 || s % 2 == 1 {
            return Err(AlgebraError::Precondition(format!(
                "column {} of the exponents sums to {s}, which is not positive and even",
                j + 1
            )));
        }
    }
    let field = t.mats()[0].ring_one().field();
    if let FieldKind::Prime(p) = field {
        if p as usize <= m {
            return Ok(SuiteReport::skipped(
                "trace-identity",
                cell,
                &format!("p <= m ({p} <= {m}): factorials vanish"),
            ));
        }
    }
    let ys: Vec<RingMat<ExactScalar>> = (0..m)
        .map(|j| {
            let mut y = RingMat::identity(n, &field.one());
            for (x, row) in t.mats().iter().zip(a) {
                if row[j] > 0 {
                    y = y.mul(&matrix_pow(x, row[j]))?;
                }
            }
            Ok(y)
        })
        .collect::<Result<_>>()?;
    let sum = trace_identity_sum(&ys)?;
    let inputs = json!({"tuple": tuple_json(t), "exponents": a});
    Ok(SuiteReport::compare("trace-identity", cell, inputs, &sum, &sum.zero_like()))
}

/// The `n = 4`, `Y_i = X_i²` instance written out:
/// `2tr(X1²)tr(X2²X3²) + 2tr(X2²)tr(X1²X3²) + 2tr(X3²)tr(X1²X2²)
///  = 8tr(X1²X2²X3²) + tr(X1²)tr(X2²)tr(X3²)`.
pub fn check_example_four(t: &CommutingTuple<ExactScalar>) -> Result<SuiteReport> {
    if t.n() != 4 || t.d() < 3 {
        return Err(AlgebraError::Precondition("needs a triple of 4×4 matrices".into()));
    }
    let sq: Vec<RingMat<ExactScalar>> = t.mats()[..3]
        .iter()
        .map(|x| x.mul(x))
        .collect::<Result<_>>()?;
    let tr = |m: &RingMat<ExactScalar>| m.trace();
    let pair = |i: usize, j: usize| -> Result<ExactScalar> { Ok(tr(&sq[i].mul(&sq[j])?)) };
    let lhs = tr(&sq[0])
        .mul(&pair(1, 2)?)
        .add(&tr(&sq[1]).mul(&pair(0, 2)?))
        .add(&tr(&sq[2]).mul(&pair(0, 1)?))
        .mul_int(2);
    let triple = tr(&sq[0].mul(&sq[1])?.mul(&sq[2])?);
    let rhs = triple
        .mul_int(8)
        .add(&tr(&sq[0]).mul(&tr(&sq[1])).mul(&tr(&sq[2])));
    Ok(SuiteReport::compare(
        "trace-identity-example",
        json!({"n": 4, "d": 3}),
        tuple_json(t),
        &lhs,
        &rhs,
    ))
}

/// `F` of the conjugated tuple equals `F` of the tuple; for even `n`, `H`
/// of the conjugated tuple is `det(Q)` times `H`.
pub fn check_conjugation_invariance<R: Ring>(
    t: &CommutingTuple<R>,
    q: &RingMat<R>,
    cap: u32,
    trunc: u32,
) -> Result<SuiteReport> {
    if !is_orthogonal(q) {
        return Err(AlgebraError::Precondition("conjugator is not orthogonal".into()));
    }
    let n = t.n();
    let cell = json!({"n": n, "d": t.d(), "cap": cap, "trunc": trunc});
    let conj = t.conjugate(q)?;
    let inputs = json!({"tuple": tuple_json(t), "q": matrix_json(q)});
    let f0 = tuple_pencil(t.mats(), cap, Parity::Even)?.det_one_plus(trunc)?;
    let f1 = tuple_pencil(conj.mats(), cap, Parity::Even)?.det_one_plus(trunc)?;
    let report = SuiteReport::compare("conjugation-invariance", cell.clone(), inputs.clone(), &f1, &f0);
    if !report.pass || n % 2 == 1 {
        return Ok(report);
    }
    let h0 = tuple_pencil(t.mats(), cap, Parity::Odd)?.pfaffian(trunc)?;
    let h1 = tuple_pencil(conj.mats(), cap, Parity::Odd)?.pfaffian(trunc)?;
    let expected = h0.scale(&q.det());
    Ok(SuiteReport::compare("conjugation-invariance", cell, inputs, &h1, &expected))
}
