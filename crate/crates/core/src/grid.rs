//! The acceptance grid: every criterion as a list of parameter cells, each
//! producing one merged [`SuiteReport`]. Shared by the acceptance tests and
//! the `all` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan::{
    f_t_determinant, h_t_closed_form, h_t_pfaffian, invariant_basis_check, n_t_series, GroupKind, GroupTag,
};
use crate::commfam::{
    conjugated_cartan_tuple, random_conjugated_cartan, random_nilpotent_isotropic, random_skew, CommutingTuple,
};
use crate::dual::DualNumber;
use crate::error::{AlgebraError, Result};
use crate::identities::{
    check_det_vanishing_odd, check_example_four, check_pf_multiplicative, check_sqrt_degree_bound,
    check_trace_identity, Counterexample, SuiteReport,
};
use crate::matrix::RingMat;
use crate::poly::{Monomial, MultiPoly, VarTable};
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};
use crate::witness::{
    check_closed_forms_d1, check_detmt_expansion, check_lemma_5_6, check_ntilde_specialization,
    check_qtilde_extraction, random_zero_pattern, solve_partial_system, solve_pfaffian_system, verify_witness,
};

pub const DEFAULT_WITNESS_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct GridOptions {
    pub seed: u64,
    pub parallel: bool,
    pub witness_attempts: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            seed: 0,
            parallel: false,
            witness_attempts: DEFAULT_WITNESS_ATTEMPTS,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub criterion: u8,
    pub title: &'static str,
    pub pass: bool,
    pub cases: usize,
    pub reports: Vec<SuiteReport>,
}

impl CriterionOutcome {
    fn new(criterion: u8, reports: Vec<SuiteReport>) -> Self {
        CriterionOutcome {
            criterion,
            title: TITLES[criterion as usize - 1],
            pass: reports.iter().all(|r| r.pass),
            cases: reports.iter().map(|r| r.cases).sum(),
            reports,
        }
    }

    /// First failing report, if any.
    pub fn first_failure(&self) -> Option<&SuiteReport> {
        self.reports.iter().find(|r| !r.pass)
    }
}

pub const TITLES: [&str; 11] = [
    "Pfaffian soundness",
    "F_t = N_t^2",
    "basis correspondence",
    "type-D closed form for H_t",
    "degree bound at specializations",
    "odd-size determinants vanish",
    "Pfaffian of commuting triples",
    "trace identity",
    "Pfaffian system witness and det M(T) expansion",
    "zero-pattern Pfaffian expansion",
    "T0-homogenized determinant",
];

/// Seed for one cell, mixed from the run seed and the cell coordinates.
pub fn cell_seed(seed: u64, criterion: u8, cell: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(criterion as u64 + 1))
        .wrapping_add(cell.wrapping_mul(0xd1b5_4a32_d192_ed03));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn map_cells<T, F>(cells: Vec<T>, parallel: bool, f: F) -> Vec<SuiteReport>
where
    T: Send + Sync,
    F: Fn(&T) -> SuiteReport + Send + Sync,
{
    if parallel {
        cells.par_iter().map(f).collect()
    } else {
        cells.iter().map(f).collect()
    }
}

/// An error inside a case is a failure of that case.
fn or_failed(suite: &str, cell: Value, r: Result<SuiteReport>) -> SuiteReport {
    r.unwrap_or_else(|e| {
        SuiteReport::failed(
            suite,
            cell,
            Counterexample {
                inputs: Value::Null,
                lhs: e.to_string(),
                rhs: "no error".into(),
            },
        )
    })
}

fn field_name(f: FieldKind) -> String {
    f.to_string()
}

pub fn criterion_1(o: &GridOptions) -> CriterionOutcome {
    let mut cells = Vec::new();
    for n in [2usize, 4, 6, 8, 10] {
        for field in [FieldKind::Rational, FieldKind::Prime(101)] {
            cells.push((n, field));
        }
    }
    let reports = map_cells(cells, o.parallel, |&(n, field)| {
        let seed = cell_seed(o.seed, 1, (n as u64) << 8 | field_tag(field));
        let cell = json!({"n": n, "field": field_name(field), "samples": 200});
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = (0..200)
            .map(|_| {
                let m = random_skew(n, 10, field, &mut rng);
                or_failed("pfaffian-soundness", cell.clone(), pf_soundness(&m, cell.clone()))
            })
            .collect();
        SuiteReport::merge("pfaffian-soundness", cell, Some(seed), parts)
    });
    CriterionOutcome::new(1, reports)
}

fn field_tag(f: FieldKind) -> u64 {
    match f {
        FieldKind::Rational => 0,
        FieldKind::Gaussian => 1,
        FieldKind::Prime(p) => 2 + p,
    }
}

fn pf_soundness(m: &RingMat<ExactScalar>, cell: Value) -> Result<SuiteReport> {
    let pf = m.pf()?;
    let inputs = json!({"matrix": crate::format::matrix_json(m)});
    let r = SuiteReport::compare("pfaffian-soundness", cell.clone(), inputs.clone(), &pf.mul(&pf), &m.det());
    if !r.pass || m.n() > 8 {
        return Ok(r);
    }
    Ok(SuiteReport::compare("pfaffian-soundness", cell, inputs, &m.pf_matchings()?, &pf))
}

/// The kinds of the `F_t = N_t²` grid with the field their Cartan
/// embedding lives in.
pub fn cartan_cells() -> Vec<(GroupKind, usize)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let mut tags = vec![GroupTag::O];
        tags.push(if n % 2 == 1 { GroupTag::SoOdd } else { GroupTag::Sp });
        for tag in tags {
            for d in 1..=2 {
                out.push((GroupKind::new(tag, n).expect("valid"), d));
            }
        }
    }
    out
}

pub fn embedding_field(kind: GroupKind) -> FieldKind {
    if kind.is_symplectic() {
        FieldKind::Rational
    } else {
        FieldKind::Gaussian
    }
}

pub fn criterion_2(o: &GridOptions) -> CriterionOutcome {
    let (cap, trunc) = (4, 3);
    let reports = map_cells(cartan_cells(), o.parallel, |&(kind, d)| {
        let field = embedding_field(kind);
        let cell = json!({"kind": kind.to_string(), "d": d, "cap": cap, "trunc": trunc, "field": field_name(field)});
        let run = || -> Result<SuiteReport> {
            let f = f_t_determinant(kind, d, cap, trunc, field)?;
            let n = n_t_series(kind, d, cap, trunc, field)?;
            Ok(SuiteReport::compare("f-equals-n-squared", cell.clone(), Value::Null, &f, &n.mul(&n)))
        };
        or_failed("f-equals-n-squared", cell.clone(), run())
    });
    CriterionOutcome::new(2, reports)
}

fn basis_report(kind: GroupKind, d: usize, cap: u32, trunc: u32, field: FieldKind) -> SuiteReport {
    let cell = json!({"kind": kind.to_string(), "d": d, "cap": cap, "trunc": trunc, "field": field_name(field)});
    let run = || -> Result<SuiteReport> {
        let b = invariant_basis_check(kind, d, cap, trunc, field)?;
        let cases = b.rows.len() + b.odd_rows.len();
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
        r.cases = cases;
        Ok(r)
    };
    or_failed("basis", cell.clone(), run())
}

pub fn criterion_3(o: &GridOptions) -> CriterionOutcome {
    let reports = map_cells(cartan_cells(), o.parallel, |&(kind, d)| {
        basis_report(kind, d, 4, 3, embedding_field(kind))
    });
    CriterionOutcome::new(3, reports)
}

pub fn criterion_4(o: &GridOptions) -> CriterionOutcome {
    let (cap, trunc) = (3, 3);
    let field = FieldKind::Gaussian;
    let mut cells = Vec::new();
    for n in [2usize, 4, 6] {
        for d in 1..=2 {
            cells.push((n, d));
        }
    }
    let reports = map_cells(cells, o.parallel, |&(n, d)| {
        let cell = json!({"n": n, "d": d, "cap": cap, "trunc": trunc});
        let run = || -> Result<SuiteReport> {
            let pf = h_t_pfaffian(n, d, cap, trunc, field)?;
            let closed = h_t_closed_form(n, d, cap, trunc, field)?;
            let r = SuiteReport::compare("h-closed-form", cell.clone(), Value::Null, &pf, &closed);
            if !r.pass {
                return Ok(r);
            }
            let kind = GroupKind::new(GroupTag::SoEven, n)?;
            let b = basis_report(kind, d, cap, trunc, field);
            Ok(SuiteReport::merge("h-closed-form", cell.clone(), None, vec![r, b]))
        };
        or_failed("h-closed-form", cell.clone(), run())
    });
    CriterionOutcome::new(4, reports)
}

pub fn specialization_cells() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=7 {
        for d in 1..=2 {
            out.push((n, d));
        }
    }
    out
}

/// The tuples of one `(n, d)` cell of the degree-bound grid: 10 conjugated
/// Cartan tuples over `Q` and, for even `n ≥ 4`, 5 nilpotent tuples over `Q(i)`.
pub fn cell_tuples(n: usize, d: usize, seed: u64) -> Result<Vec<CommutingTuple<ExactScalar>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..10 {
        out.push(random_conjugated_cartan(n, d, FieldKind::Rational, &mut rng)?);
    }
    if n.is_multiple_of(2) && n >= 4 {
        for _ in 0..5 {
            out.push(random_nilpotent_isotropic(n, d, FieldKind::Gaussian, &mut rng)?);
        }
    }
    Ok(out)
}

fn tuple_grid<F>(o: &GridOptions, suite: &str, check: F) -> Vec<SuiteReport>
where
    F: Fn(&CommutingTuple<ExactScalar>, u32, u32) -> Result<SuiteReport> + Send + Sync,
{
    let cap = 4;
    map_cells(specialization_cells(), o.parallel, |&(n, d)| {
        let trunc = (n / 2) as u32 + 2;
        // both grids draw the same tuples
        let seed = cell_seed(o.seed, 5, (n * 10 + d) as u64);
        let cell = json!({"n": n, "d": d, "cap": cap, "trunc": trunc});
        let run = || -> Result<SuiteReport> {
            let parts = cell_tuples(n, d, seed)?
                .iter()
                .map(|t| or_failed(suite, cell.clone(), check(t, cap, trunc)))
                .collect();
            Ok(SuiteReport::merge(suite, cell.clone(), Some(seed), parts))
        };
        or_failed(suite, cell.clone(), run()).with_seed(seed)
    })
}

pub fn criterion_5(o: &GridOptions) -> CriterionOutcome {
    CriterionOutcome::new(5, tuple_grid(o, "degree-bound", check_sqrt_degree_bound))
}

fn random_poly_without_constant<G: Rng>(vars: &std::sync::Arc<VarTable>, rng: &mut G) -> MultiPoly {
    let field = FieldKind::Rational;
    let d = vars.len();
    loop {
        let mut f = MultiPoly::zero(vars, field);
        for _ in 0..rng.gen_range(1..=4) {
            let exps: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=2)).collect();
            if exps.iter().all(|&e| e == 0) {
                continue;
            }
            let c = field.from_int(rng.gen_range(-5..=5));
            f = f.add(&MultiPoly::monomial(vars, Monomial::from_exponents(&exps), c));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn criterion_6(o: &GridOptions) -> CriterionOutcome {
    let reports = map_cells(vec![3usize, 5], o.parallel, |&n| {
        let seed = cell_seed(o.seed, 6, n as u64);
        let cell = json!({"n": n, "samples": 50});
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = (0..50)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                let names: Vec<String> = (1..=d).map(|i| format!("X{i}")).collect();
                let vars = VarTable::new(names).expect("distinct");
                let run = |rng: &mut ChaCha8Rng| -> Result<SuiteReport> {
                    let t = random_conjugated_cartan(n, d, FieldKind::Rational, rng)?;
                    let f = random_poly_without_constant(&vars, rng);
                    check_det_vanishing_odd(&t, &f)
                };
                or_failed("det-vanishing-odd", cell.clone(), run(&mut rng))
            })
            .collect();
        SuiteReport::merge("det-vanishing-odd", cell, Some(seed), parts)
    });
    CriterionOutcome::new(6, reports)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleRing {
    Field(FieldKind),
    Dual,
}

impl TripleRing {
    fn name(self) -> String {
        match self {
            TripleRing::Field(f) => f.to_string(),
            TripleRing::Dual => "dual:q".into(),
        }
    }
}

fn dual_triple<G: Rng>(n: usize, rng: &mut G) -> Result<CommutingTuple<DualNumber<ExactScalar>>> {
    let f = FieldKind::Rational;
    let dn = |rng: &mut G, b: i64| DualNumber::new(f.from_int(rng.gen_range(-b..=b)), f.from_int(rng.gen_range(-b..=b)));
    let params: Vec<Vec<DualNumber<ExactScalar>>> = (0..3).map(|_| (0..n / 2).map(|_| dn(rng, 5)).collect()).collect();
    let one = DualNumber::constant(f.one());
    for _ in 0..100 {
        let upper: Vec<DualNumber<ExactScalar>> = (0..n * (n - 1) / 2).map(|_| dn(rng, 3)).collect();
        let a = RingMat::skew_from_upper(n, &upper, &one)?;
        match conjugated_cartan_tuple(n, &params, &a) {
            Err(AlgebraError::Singular) => continue,
            other => return other,
        }
    }
    Err(AlgebraError::Precondition("no invertible Cayley seed found".into()))
}

pub fn criterion_7(o: &GridOptions) -> CriterionOutcome {
    let mut cells = Vec::new();
    for n in [2usize, 4, 6] {
        for ring in [
            TripleRing::Field(FieldKind::Rational),
            TripleRing::Field(FieldKind::Prime(101)),
            TripleRing::Dual,
        ] {
            cells.push((n, ring));
        }
    }
    let reports = map_cells(cells, o.parallel, |&(n, ring)| {
        let tag = match ring {
            TripleRing::Field(f) => field_tag(f),
            TripleRing::Dual => 1000,
        };
        let seed = cell_seed(o.seed, 7, (n as u64) << 16 | tag);
        let cell = json!({"n": n, "ring": ring.name(), "samples": 50});
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = (0..50)
            .map(|_| {
                let r = match ring {
                    TripleRing::Field(f) => random_conjugated_cartan(n, 3, f, &mut rng).and_then(|t| {
                        let m = t.mats();
                        check_pf_multiplicative([&m[0], &m[1], &m[2]])
                    }),
                    TripleRing::Dual => dual_triple(n, &mut rng).and_then(|t| {
                        let m = t.mats();
                        check_pf_multiplicative([&m[0], &m[1], &m[2]])
                    }),
                };
                or_failed("pf-multiplicative", cell.clone(), r)
            })
            .collect();
        SuiteReport::merge("pf-multiplicative", cell, Some(seed), parts)
    });
    CriterionOutcome::new(7, reports)
}

/// Random `d × m` exponents with positive even column sums.
pub fn random_exponents<G: Rng>(d: usize, m: usize, rng: &mut G) -> Vec<Vec<u32>> {
    loop {
        let a: Vec<Vec<u32>> = (0..d).map(|_| (0..m).map(|_| rng.gen_range(0..=2)).collect()).collect();
        let ok = (0..m).all(|j| {
            let s: u32 = a.iter().map(|r| r[j]).sum();
            s > 0 && s.is_multiple_of(2)
        });
        if ok {
            return a;
        }
    }
}

pub fn criterion_8(o: &GridOptions) -> CriterionOutcome {
    let mut reports = map_cells(vec![2usize, 3, 4, 5], o.parallel, |&n| {
        let seed = cell_seed(o.seed, 8, n as u64);
        let cell = json!({"n": n, "d": 3, "samples": 25});
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = (0..25)
            .map(|_| {
                let r = random_conjugated_cartan(n, 3, FieldKind::Rational, &mut rng).and_then(|t| {
                    let a = random_exponents(3, n / 2 + 1, &mut rng);
                    check_trace_identity(&t, &a)
                });
                or_failed("trace-identity", cell.clone(), r)
            })
            .collect();
        SuiteReport::merge("trace-identity", cell, Some(seed), parts)
    });
    let seed = cell_seed(o.seed, 8, 99);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let example = random_conjugated_cartan(4, 3, FieldKind::Rational, &mut rng).and_then(|t| check_example_four(&t));
    reports.push(or_failed("trace-identity-example", json!({"n": 4, "d": 3}), example).with_seed(seed));
    CriterionOutcome::new(8, reports)
}

pub fn criterion_9(o: &GridOptions) -> CriterionOutcome {
    let mut reports = Vec::new();
    let solved = map_cells(vec![1usize, 2, 3], o.parallel, |&d| {
        let cell = json!({"d": d, "attempts": o.witness_attempts});
        let r = solve_pfaffian_system(d, o.seed, o.witness_attempts).and_then(|w| {
            let mut checks = vec![verify_witness(&w)?];
            if d == 1 {
                checks.push(check_closed_forms_d1(&w)?);
                checks.push(check_qtilde_extraction(&w, o.seed, 2)?);
            }
            Ok(SuiteReport::merge("witness", cell.clone(), Some(o.seed), checks)
                .with_observed(json!(w.attempts)))
        });
        or_failed("witness", cell.clone(), r).with_seed(o.seed)
    });
    reports.extend(solved);
    for d in 1..=2usize {
        let cell = json!({"d": d});
        // the expansion does not involve det A, so fall back to a matrix
        // with only h_{2d+2} = 0 and h_{2d+3} != 0 when no witness exists
        let r = solve_pfaffian_system(d, o.seed, o.witness_attempts)
            .or_else(|_| solve_partial_system(d, o.seed, o.witness_attempts))
            .and_then(|w| check_detmt_expansion(&w));
        reports.push(or_failed("detmt-expansion", cell, r).with_seed(o.seed));
    }
    CriterionOutcome::new(9, reports)
}

pub fn criterion_10(o: &GridOptions) -> CriterionOutcome {
    let reports = map_cells(vec![2usize, 3], o.parallel, |&n| {
        let seed = cell_seed(o.seed, 10, n as u64);
        let cell = json!({"size": 2 * n, "samples": 20});
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = (0..20)
            .map(|_| {
                let t = random_zero_pattern(n, 10, &mut rng);
                or_failed("pfaffian-expansion", cell.clone(), check_lemma_5_6(&t))
            })
            .collect();
        SuiteReport::merge("pfaffian-expansion", cell, Some(seed), parts)
    });
    CriterionOutcome::new(10, reports)
}

pub fn criterion_11(o: &GridOptions) -> CriterionOutcome {
    CriterionOutcome::new(11, tuple_grid(o, "ntilde", check_ntilde_specialization))
}

pub fn run_criterion(k: u8, o: &GridOptions) -> Result<CriterionOutcome> {
    Ok(match k {
        1 => criterion_1(o),
        2 => criterion_2(o),
        3 => criterion_3(o),
        4 => criterion_4(o),
        5 => criterion_5(o),
        6 => criterion_6(o),
        7 => criterion_7(o),
        8 => criterion_8(o),
        9 => criterion_9(o),
        10 => criterion_10(o),
        11 => criterion_11(o),
        _ => return Err(AlgebraError::Precondition(format!("no criterion {k}; expected 1..=11"))),
    })
}

pub fn run_all(o: &GridOptions) -> Vec<CriterionOutcome> {
    (1..=11).map(|k| run_criterion(k, o).expect("in range")).collect()
}
