//! Dispatch of `verify` configurations to the library suites.

use anyhow::Result;
use orthoinv::cartan::{f_t_determinant, h_t_closed_form, h_t_pfaffian, invariant_basis_check, n_t_series, GroupKind, GroupTag};
use orthoinv::commfam::{cayley_transform, random_conjugated_cartan, random_nilpotent_isotropic, random_skew, CommutingTuple};
use orthoinv::grid::{random_exponents, DEFAULT_WITNESS_ATTEMPTS};
use orthoinv::identities::{
    check_conjugation_invariance, check_det_vanishing_odd, check_example_four, check_pf_multiplicative,
    check_sqrt_degree_bound, check_trace_identity, Counterexample, SuiteReport,
};
use orthoinv::witness::{
    check_closed_forms_d1, check_detmt_expansion, check_lemma_5_6, check_ntilde_specialization, random_zero_pattern,
    solve_partial_system, solve_pfaffian_system, verify_witness,
};
use orthoinv::{AlgebraError, ExactScalar, FieldKind, MultiPoly, Ring, VarTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{RunConfig, Suite};

pub const DEFAULT_ATTEMPTS: usize = DEFAULT_WITNESS_ATTEMPTS;

fn failed_with(suite: &str, cell: Value, e: AlgebraError) -> SuiteReport {
    SuiteReport::failed(
        suite,
        cell,
        Counterexample {
            inputs: Value::Null,
            lhs: e.to_string(),
            rhs: "no error".into(),
        },
    )
}

fn settle(suite: &str, cell: &Value, r: orthoinv::Result<SuiteReport>) -> SuiteReport {
    r.unwrap_or_else(|e| failed_with(suite, cell.clone(), e))
}

/// Applies `check` to every case, in parallel when asked; the result order
/// is the case order either way.
fn each<T, F>(cases: &[T], parallel: bool, check: F) -> Vec<SuiteReport>
where
    T: Sync,
    F: Fn(&T) -> SuiteReport + Sync + Send,
{
    if parallel {
        cases.par_iter().map(check).collect()
    } else {
        cases.iter().map(check).collect()
    }
}

fn tuples(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> orthoinv::Result<Vec<CommutingTuple<ExactScalar>>> {
    let mut out = Vec::new();
    for _ in 0..cfg.samples {
        out.push(random_conjugated_cartan(cfg.n, cfg.d, cfg.field, rng)?);
    }
    if cfg.field.imaginary_unit().is_some() && cfg.n.is_multiple_of(2) && cfg.n >= 4 {
        for _ in 0..cfg.samples.div_ceil(2) {
            out.push(random_nilpotent_isotropic(cfg.n, cfg.d, cfg.field, rng)?);
        }
    }
    Ok(out)
}

fn base_cell(cfg: &RunConfig) -> Value {
    json!({
        "kind": cfg.kind.to_string(),
        "n": cfg.n,
        "d": cfg.d,
        "wmax": cfg.wmax,
        "trunc": cfg.trunc(),
        "field": cfg.field.to_string(),
        "samples": cfg.samples,
    })
}

/// Runs one `verify` configuration; every report carries the seed.
pub fn run_verify(cfg: &RunConfig) -> Result<Vec<SuiteReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let suite = cfg.suite.to_string();
    let cell = base_cell(cfg);
    let (wmax, trunc) = (cfg.wmax, cfg.trunc());
    let reports = match cfg.suite {
        Suite::DegreeBound => {
            let ts = tuples(cfg, &mut rng)?;
            each(&ts, cfg.parallel, |t| settle(&suite, &cell, check_sqrt_degree_bound(t, wmax, trunc)))
        }
        Suite::Ntilde => {
            let ts = tuples(cfg, &mut rng)?;
            each(&ts, cfg.parallel, |t| settle(&suite, &cell, check_ntilde_specialization(t, wmax, trunc)))
        }
        Suite::ConjugationInvariance => {
            let ts = tuples(cfg, &mut rng)?;
            let qs = (0..ts.len())
                .map(|_| random_orthogonal(cfg.n, cfg.field, &mut rng))
                .collect::<orthoinv::Result<Vec<_>>>()?;
            let cases: Vec<_> = ts.iter().zip(&qs).collect();
            each(&cases, cfg.parallel, |(t, q)| {
                settle(&suite, &cell, check_conjugation_invariance(t, q, wmax, trunc))
            })
        }
        Suite::FEqualsNSquared => {
            let kind = cfg.group()?;
            let f = f_t_determinant(kind, cfg.d, wmax, trunc, cfg.field)?;
            let n = n_t_series(kind, cfg.d, wmax, trunc, cfg.field)?;
            let mut out = vec![SuiteReport::compare(&suite, cell.clone(), Value::Null, &f, &n.mul(&n))];
            out.push(basis(kind, cfg, &cell)?);
            out
        }
        Suite::HClosedForm => {
            let pf = h_t_pfaffian(cfg.n, cfg.d, wmax, trunc, cfg.field)?;
            let closed = h_t_closed_form(cfg.n, cfg.d, wmax, trunc, cfg.field)?;
            let kind = GroupKind::new(GroupTag::SoEven, cfg.n)?;
            vec![
                SuiteReport::compare(&suite, cell.clone(), Value::Null, &pf, &closed),
                basis(kind, cfg, &cell)?,
            ]
        }
        Suite::DetVanishingOdd => {
            let names: Vec<String> = (1..=cfg.d).map(|i| format!("X{i}")).collect();
            let vars = VarTable::new(names)?;
            let mut cases = Vec::new();
            for _ in 0..cfg.samples {
                let t = random_conjugated_cartan(cfg.n, cfg.d, cfg.field, &mut rng)?;
                cases.push((t, random_poly(&vars, cfg.field, &mut rng)));
            }
            each(&cases, cfg.parallel, |(t, f)| settle(&suite, &cell, check_det_vanishing_odd(t, f)))
        }
        Suite::PfMultiplicative => {
            let mut cases = Vec::new();
            for _ in 0..cfg.samples {
                cases.push(random_conjugated_cartan(cfg.n, 3, cfg.field, &mut rng)?);
            }
            each(&cases, cfg.parallel, |t| {
                let m = t.mats();
                settle(&suite, &cell, check_pf_multiplicative([&m[0], &m[1], &m[2]]))
            })
        }
        Suite::TraceIdentity => {
            let m = cfg.n / 2 + 1;
            let mut cases = Vec::new();
            for _ in 0..cfg.samples {
                let t = random_conjugated_cartan(cfg.n, cfg.d, cfg.field, &mut rng)?;
                cases.push((t, random_exponents(cfg.d, m, &mut rng)));
            }
            let mut out = each(&cases, cfg.parallel, |(t, a)| settle(&suite, &cell, check_trace_identity(t, a)));
            if cfg.n == 4 && cfg.d >= 3 && !out.iter().any(|r| r.skipped.is_some()) {
                let t = random_conjugated_cartan(4, 3, cfg.field, &mut rng)?;
                out.push(settle("trace-identity-example", &cell, check_example_four(&t)));
            }
            out
        }
        Suite::Witness => {
            let cell = json!({"d": cfg.d, "attempts": cfg.attempts});
            match solve_pfaffian_system(cfg.d, cfg.seed, cfg.attempts) {
                Ok(w) => {
                    let mut out = vec![verify_witness(&w)?];
                    if cfg.d == 1 {
                        out.push(check_closed_forms_d1(&w)?);
                    }
                    out.push(check_detmt_expansion(&w)?);
                    out
                }
                Err(e) => {
                    let mut out = vec![failed_with(&suite, cell, e)];
                    if let Ok(w) = solve_partial_system(cfg.d, cfg.seed, cfg.attempts) {
                        out.push(check_detmt_expansion(&w)?);
                    }
                    out
                }
            }
        }
        Suite::PfaffianExpansion => {
            let size_half = cfg.n;
            let cases: Vec<_> = (0..cfg.samples)
                .map(|_| random_zero_pattern(size_half, 10, &mut rng))
                .collect();
            each(&cases, cfg.parallel, |t| settle(&suite, &cell, check_lemma_5_6(t)))
        }
    };
    Ok(reports.into_iter().map(|r| r.with_seed(cfg.seed)).collect())
}

fn basis(kind: GroupKind, cfg: &RunConfig, cell: &Value) -> Result<SuiteReport> {
    let b = invariant_basis_check(kind, cfg.d, cfg.wmax, cfg.trunc(), cfg.field)?;
    let mut r = if b.pass() {
        SuiteReport::passed("basis", cell.clone())
    } else {
        SuiteReport::failed(
            "basis",
            cell.clone(),
            Counterexample {
                inputs: Value::Null,
                lhs: b.failures.join("; "),
                rhs: "coefficients equal orbit sums".into(),
            },
        )
    };
    r.cases = b.rows.len() + b.odd_rows.len();
    Ok(r)
}

pub fn random_orthogonal(
    n: usize,
    field: FieldKind,
    rng: &mut ChaCha8Rng,
) -> orthoinv::Result<orthoinv::RingMat<ExactScalar>> {
    for _ in 0..100 {
        match cayley_transform(&random_skew(n, 3, field, rng)) {
            Err(AlgebraError::Singular) => continue,
            other => return other,
        }
    }
    Err(AlgebraError::Precondition(format!("no invertible Cayley seed over {field}")))
}

fn random_poly(vars: &std::sync::Arc<VarTable>, field: FieldKind, rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let mut f = MultiPoly::zero(vars, field);
        for name in vars.names() {
            let x = MultiPoly::var(vars, field, name).expect("known");
            let e = rng.gen_range(0..=2u32);
            let c = field.from_int(rng.gen_range(-5..=5));
            if e > 0 {
                f = f.add(&x.pow(e).scale(&c));
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}
