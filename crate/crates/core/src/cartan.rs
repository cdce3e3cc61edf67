//! Cartan embeddings for the orthogonal and symplectic groups, the row
//! permutation action on weight matrices, orbit-sum invariants and the
//! closed forms of the series `N_t`, `F_t` and `H_t`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::matrix::{permutations, RingMat};
use crate::pencil::Pencil;
use crate::poly::{Monomial, MultiPoly, VarTable};
use crate::ring::Ring;
use crate::scalar::FieldKind;
use crate::series::{alphabet, Parity, TMonomial, TSeries, WeightIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupTag {
    /// The full orthogonal group `O_n`, any `n`.
    O,
    /// `SO_n` with `n` odd.
    SoOdd,
    /// `Sp_n` with `n` even.
    Sp,
    /// `SO_n` with `n` even.
    SoEven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKind {
    tag: GroupTag,
    n: usize,
}

impl GroupKind {
    pub fn new(tag: GroupTag, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::Precondition(format!("n = {n} must be at least 2")));
        }
        let ok = match tag {
            GroupTag::O => true,
            GroupTag::SoOdd => n % 2 == 1,
            GroupTag::Sp | GroupTag::SoEven => n.is_multiple_of(2),
        };
        if !ok {
            return Err(AlgebraError::Precondition(format!(
                "{} is not defined for n = {n}",
                tag_name(tag)
            )));
        }
        Ok(GroupKind { tag, n })
    }

    pub fn tag(self) -> GroupTag {
        self.tag
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Rank `m = ⌊n/2⌋`.
    pub fn m(self) -> usize {
        self.n / 2
    }

    pub fn is_symplectic(self) -> bool {
        self.tag == GroupTag::Sp
    }
}

fn tag_name(tag: GroupTag) -> &'static str {
    match tag {
        GroupTag::O => "O",
        GroupTag::SoOdd => "SO-odd",
        GroupTag::Sp => "Sp",
        GroupTag::SoEven => "SO-even",
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.tag {
            GroupTag::O => "O",
            GroupTag::SoOdd | GroupTag::SoEven => "SO",
            GroupTag::Sp => "Sp",
        };
        write!(f, "{name}_{}", self.n)
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::O => "o",
            GroupTag::SoOdd => "so-odd",
            GroupTag::Sp => "sp",
            GroupTag::SoEven => "so-even",
        })
    }
}

impl FromStr for GroupTag {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "o" => Ok(GroupTag::O),
            "so-odd" => Ok(GroupTag::SoOdd),
            "sp" => Ok(GroupTag::Sp),
            "so-even" => Ok(GroupTag::SoEven),
            _ => Err(AlgebraError::Parse {
                what: "group kind",
                input: s.to_string(),
            }),
        }
    }
}

/// Variables `x_{kj}` (slot `k = 1..m`, matrix index `j = 1..d`).
pub fn cartan_var_name(k: usize, j: usize) -> String {
    if k < 10 && j < 10 {
        format!("x{k}{j}")
    } else {
        format!("x{k}_{j}")
    }
}

pub fn cartan_vars(m: usize, d: usize) -> Arc<VarTable> {
    let names: Vec<String> = (1..=m)
        .flat_map(|k| (1..=d).map(move |j| cartan_var_name(k, j)))
        .collect();
    VarTable::new(names).expect("distinct names")
}

/// The Cartan element with coordinates `x` (length `⌊n/2⌋`): the skew
/// `SK(x)` blocks `[[0, i·x_p], [−i·x_p, 0]]` for orthogonal kinds (zero
/// padding for odd `n`), `diag(x, −x)` for `Sp`.
pub fn cartan_embed<R: Ring>(kind: GroupKind, x: &[R], one: &R) -> Result<RingMat<R>> {
    let m = kind.m();
    if x.len() != m {
        return Err(AlgebraError::Dimension(format!(
            "{} coordinates for rank {m}",
            x.len()
        )));
    }
    let n = kind.n();
    if kind.is_symplectic() {
        let diag: Vec<R> = x.iter().cloned().chain(x.iter().map(Ring::neg)).collect();
        return Ok(RingMat::diagonal(&diag, one));
    }
    let i = one.imaginary_unit_like().ok_or_else(|| {
        AlgebraError::Precondition("coefficient field has no square root of -1".into())
    })?;
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for r in 0..n {
        for c in r + 1..n {
            if r % 2 == 0 && c == r + 1 && r / 2 < m {
                upper.push(i.mul(&x[r / 2]));
            } else {
                upper.push(one.zero_like());
            }
        }
    }
    RingMat::skew_from_upper(n, &upper, one)
}

/// The generic Cartan tuple `(Y(1), ..., Y(d))` over `field[x_{kj}]`.
pub fn generic_cartan_tuple(kind: GroupKind, d: usize, field: FieldKind) -> Result<Vec<RingMat<MultiPoly>>> {
    let vars = cartan_vars(kind.m(), d);
    let one = MultiPoly::from_int(&vars, field, 1);
    (1..=d)
        .map(|j| {
            let x: Vec<MultiPoly> = (1..=kind.m())
                .map(|k| MultiPoly::var(&vars, field, &cartan_var_name(k, j)))
                .collect::<Result<_>>()?;
            cartan_embed(kind, &x, &one)
        })
        .collect()
}

/// `Π_j Y(j)^{w_j}`.
pub fn tuple_monomial<R: Ring>(tuple: &[RingMat<R>], w: &WeightIndex) -> Result<RingMat<R>> {
    if tuple.len() != w.d() {
        return Err(AlgebraError::Dimension(format!(
            "weight of length {} for a {}-tuple",
            w.d(),
            tuple.len()
        )));
    }
    let first = &tuple[0];
    let mut acc = RingMat::identity(first.n(), first.ring_one());
    for (x, &e) in tuple.iter().zip(w.entries()) {
        if e > 0 {
            acc = acc.mul(&matrix_pow(x, e as u32))?;
        }
    }
    Ok(acc)
}

/// Matrix power by repeated squaring.
pub fn matrix_pow<R: Ring>(x: &RingMat<R>, mut e: u32) -> RingMat<R> {
    let mut base = x.clone();
    let mut acc = RingMat::identity(x.n(), x.ring_one());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).expect("same size");
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).expect("same size");
        }
    }
    acc
}

/// The pencil `Σ_{w} Π_j X_j^{w_j} T_w` over the alphabet of the given
/// parity and weight cap.
pub fn tuple_pencil<R: Ring>(
    tuple: &[RingMat<R>],
    cap: u32,
    parity: Parity,
) -> Result<Pencil<R>> {
    let first = tuple
        .first()
        .ok_or_else(|| AlgebraError::Dimension("empty tuple".into()))?;
    let terms = alphabet(tuple.len(), cap, parity)
        .into_iter()
        .map(|w| Ok((w.clone(), tuple_monomial(tuple, &w)?)))
        .collect::<Result<Vec<_>>>()?;
    Pencil::new(first.n(), first.ring_one(), terms)
}

/// An `m×d` matrix of non-negative integers, not identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaMatrix {
    rows: Vec<SmallVec<[u16; 4]>>,
    d: usize,
}

impl LambdaMatrix {
    pub fn new(rows: Vec<Vec<u16>>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(AlgebraError::Dimension("weight matrix must be a nonempty m×d array".into()));
        }
        if rows.iter().all(|r| r.iter().all(|&e| e == 0)) {
            return Err(AlgebraError::Precondition("weight matrix must be nonzero".into()));
        }
        Ok(LambdaMatrix {
            rows: rows.into_iter().map(SmallVec::from_vec).collect(),
            d,
        })
    }

    /// Reads off the matrix of a `T`-monomial with at most `m` factors
    /// (counted with multiplicity), padding with zero rows.
    pub fn from_t_monomial(t: &TMonomial, m: usize) -> Option<Self> {
        if t.degree() as usize > m || t.is_one() {
            return None;
        }
        let d = t.factors()[0].0.d();
        let mut rows: Vec<Vec<u16>> = Vec::with_capacity(m);
        for (w, k) in t.factors() {
            for _ in 0..*k {
                rows.push(w.entries().to_vec());
            }
        }
        rows.resize(m, vec![0; d]);
        LambdaMatrix::new(rows).ok().map(|l| l.normal_form())
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u16]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    fn row_weight(r: &[u16]) -> u32 {
        r.iter().map(|&e| e as u32).sum()
    }

    /// `Even` if every row sum is even, `Odd` if every row sum is odd.
    pub fn parity(&self) -> Parity {
        let even = self.rows.iter().all(|r| Self::row_weight(r) % 2 == 0);
        let odd = self.rows.iter().all(|r| Self::row_weight(r) % 2 == 1);
        match (even, odd) {
            (true, _) => Parity::Even,
            (_, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.rows.windows(2).all(|p| p[0] >= p[1])
    }

    /// Rows sorted non-increasing lexicographically.
    pub fn normal_form(&self) -> Self {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| b.cmp(a));
        LambdaMatrix { rows, d: self.d }
    }

    /// `T_λ = Π_k T_{λ_k}` with `T_0 = 1`.
    pub fn t_monomial(&self) -> TMonomial {
        TMonomial::from_factors(
            self.rows
                .iter()
                .filter_map(|r| WeightIndex::new(r).ok())
                .map(|w| (w, 1)),
        )
    }

    /// Exponent vector of `x^λ` over [`cartan_vars`]`(m, d)`.
    pub fn x_monomial(&self) -> Monomial {
        let exps: Vec<u32> = self.rows.iter().flat_map(|r| r.iter().map(|&e| e as u32)).collect();
        Monomial::from_exponents(&exps)
    }
}

impl fmt::Display for LambdaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("({})", e.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// The orbit of `λ` under row permutations.
pub fn weyl_orbit(lambda: &LambdaMatrix) -> BTreeSet<LambdaMatrix> {
    permutations(lambda.m())
        .into_iter()
        .map(|(p, _)| LambdaMatrix {
            rows: p.iter().map(|&i| lambda.rows[i].clone()).collect(),
            d: lambda.d,
        })
        .collect()
}

/// Normal forms with every row weight at most `cap` and every row sum of
/// the given parity (zero rows count as even). Ordered by total weight,
/// then lexicographically.
pub fn enumerate_lambda_plus(m: usize, d: usize, parity: Parity, cap: u32) -> Vec<LambdaMatrix> {
    let mut candidates: Vec<Vec<u16>> = alphabet(d, cap, parity)
        .into_iter()
        .map(|w| w.entries().to_vec())
        .collect();
    if parity == Parity::Even {
        candidates.push(vec![0; d]);
    }
    candidates.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        start: usize,
        m: usize,
        cur: &mut Vec<usize>,
        cand: &[Vec<u16>],
        out: &mut Vec<LambdaMatrix>,
    ) {
        if cur.len() == m {
            if let Ok(l) = LambdaMatrix::new(cur.iter().map(|&i| cand[i].clone()).collect()) {
                out.push(l);
            }
            return;
        }
        for i in start..cand.len() {
            cur.push(i);
            rec(i, m, cur, cand, out);
            cur.pop();
        }
    }
    rec(0, m, &mut cur, &candidates, &mut out);
    out.sort_by(|a, b| {
        let wa: u32 = a.rows().map(LambdaMatrix::row_weight).sum();
        let wb: u32 = b.rows().map(LambdaMatrix::row_weight).sum();
        wa.cmp(&wb).then_with(|| a.cmp(b))
    });
    out
}

/// `a_λ = Σ_{μ ∈ S_m·λ} x^μ` over [`cartan_vars`]`(m, d)`.
pub fn orbit_sum(lambda: &LambdaMatrix, field: FieldKind) -> MultiPoly {
    let vars = cartan_vars(lambda.m(), lambda.d());
    MultiPoly::from_terms(
        &vars,
        field,
        weyl_orbit(lambda)
            .iter()
            .map(|mu| (mu.x_monomial().exponents().to_vec(), field.one())),
    )
}

fn poly_one(kind: GroupKind, d: usize, field: FieldKind) -> MultiPoly {
    MultiPoly::from_int(&cartan_vars(kind.m(), d), field, 1)
}

/// `N_t` from the product `Π_k (1 + Σ_{w∈S} x_k^w T_w)`.
pub fn n_t_product(kind: GroupKind, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let one = poly_one(kind, d, field);
    let vars = one.vars().clone();
    let mut acc = TSeries::one(&one, trunc, Parity::Even);
    for k in 1..=kind.m() {
        let mut factor = TSeries::one(&one, trunc, Parity::Even);
        for w in alphabet(d, cap, Parity::Even) {
            let mut coeff = one.clone();
            for (j, &e) in w.entries().iter().enumerate() {
                coeff = coeff.mul(&MultiPoly::var(&vars, field, &cartan_var_name(k, j + 1))?.pow(e as u32));
            }
            factor.insert(TMonomial::var(w), coeff);
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// `N_t` from the orbit sums, `1 + Σ_{λ∈Λ⁺_even} a_λ T_λ`.
pub fn n_t_orbit_form(kind: GroupKind, d: usize, cap: u32, trunc: u32, field: FieldKind) -> TSeries<MultiPoly> {
    let one = poly_one(kind, d, field);
    let mut acc = TSeries::one(&one, trunc, Parity::Even);
    for lambda in enumerate_lambda_plus(kind.m(), d, Parity::Even, cap) {
        acc.insert(lambda.t_monomial(), orbit_sum(&lambda, field));
    }
    acc
}

/// `N_t`, computed both ways; disagreement is an internal error.
pub fn n_t_series(kind: GroupKind, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let product = n_t_product(kind, d, cap, trunc, field)?;
    let orbit = n_t_orbit_form(kind, d, cap, trunc, field);
    if product != orbit {
        return Err(AlgebraError::Inconsistent(format!(
            "N_t product form and orbit form differ for {kind}, d = {d}"
        )));
    }
    Ok(product)
}

/// `F_t = det(I + Σ_{w∈S} Y^w T_w)` at the generic Cartan tuple.
pub fn f_t_determinant(kind: GroupKind, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let tuple = generic_cartan_tuple(kind, d, field)?;
    tuple_pencil(&tuple, cap, Parity::Even)?.det_one_plus(trunc)
}

/// `F_t`, checked against `N_t²`.
pub fn f_t_series(kind: GroupKind, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let f = f_t_determinant(kind, d, cap, trunc, field)?;
    let n = n_t_series(kind, d, cap, trunc, field)?;
    if f != n.mul(&n) {
        return Err(AlgebraError::Inconsistent(format!(
            "F_t differs from N_t^2 for {kind}, d = {d}"
        )));
    }
    Ok(f)
}

fn require_even_orthogonal(n: usize) -> Result<GroupKind> {
    if !n.is_multiple_of(2) {
        return Err(AlgebraError::Precondition(format!("H_t needs even n, got {n}")));
    }
    GroupKind::new(GroupTag::SoEven, n)
}

/// `H_t = Pf(Σ_{w∈S′} Y^w T_w)` at the generic Cartan tuple.
pub fn h_t_pfaffian(n: usize, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let kind = require_even_orthogonal(n)?;
    let tuple = generic_cartan_tuple(kind, d, field)?;
    tuple_pencil(&tuple, cap, Parity::Odd)?.pfaffian(trunc)
}

/// `i^m Σ_{λ∈Λ⁺_odd} a_λ T_λ`.
pub fn h_t_closed_form(n: usize, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let kind = require_even_orthogonal(n)?;
    let one = poly_one(kind, d, field);
    let i = one.imaginary_unit_like().ok_or_else(|| {
        AlgebraError::Precondition("coefficient field has no square root of -1".into())
    })?;
    let scale = i.pow(kind.m() as u32);
    let mut acc = TSeries::zero(&one, trunc, Parity::Odd);
    for lambda in enumerate_lambda_plus(kind.m(), d, Parity::Odd, cap) {
        acc.insert(lambda.t_monomial(), orbit_sum(&lambda, field).mul(&scale));
    }
    Ok(acc)
}

/// `H_t`, computed both ways; disagreement is an internal error.
pub fn h_t_series(n: usize, d: usize, cap: u32, trunc: u32, field: FieldKind) -> Result<TSeries<MultiPoly>> {
    let pf = h_t_pfaffian(n, d, cap, trunc, field)?;
    let closed = h_t_closed_form(n, d, cap, trunc, field)?;
    if pf != closed {
        return Err(AlgebraError::Inconsistent(format!(
            "H_t Pfaffian and closed form differ for n = {n}, d = {d}"
        )));
    }
    Ok(pf)
}

/// Signed-permutation action on polynomials in the `x_{kj}`.
#[derive(Clone, Debug)]
pub enum WeylGenerator {
    /// Swap slots `k` and `k+1` (0-based).
    Swap(usize),
    /// `x_{k·} ↦ −x_{k·}` for every listed slot.
    Flip(Vec<usize>),
}

impl fmt::Display for WeylGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylGenerator::Swap(k) => write!(f, "swap({},{})", k + 1, k + 2),
            WeylGenerator::Flip(ks) => {
                let s: Vec<String> = ks.iter().map(|k| (k + 1).to_string()).collect();
                write!(f, "flip({})", s.join(","))
            }
        }
    }
}

impl WeylGenerator {
    pub fn apply(&self, p: &MultiPoly, m: usize, d: usize) -> MultiPoly {
        match self {
            WeylGenerator::Swap(k) => {
                let mut perm: Vec<usize> = (0..m * d).collect();
                for j in 0..d {
                    perm[k * d + j] = (k + 1) * d + j;
                    perm[(k + 1) * d + j] = k * d + j;
                }
                p.permute_vars(&perm)
            }
            WeylGenerator::Flip(ks) => p.map_terms(|mono, c| {
                let e = mono.exponents();
                let total: u32 = ks.iter().flat_map(|&k| e[k * d..(k + 1) * d].iter()).sum();
                if total.is_multiple_of(2) {
                    c.clone()
                } else {
                    c.neg()
                }
            }),
        }
    }
}

/// Generators of the signed permutations of `m` slots; with `even_flips`
/// only products of two sign changes are used (the index-two subgroup).
pub fn weyl_generators(m: usize, even_flips: bool) -> Vec<WeylGenerator> {
    let mut gens: Vec<WeylGenerator> = (0..m.saturating_sub(1)).map(WeylGenerator::Swap).collect();
    if even_flips {
        for a in 0..m {
            for b in a + 1..m {
                gens.push(WeylGenerator::Flip(vec![a, b]));
            }
        }
    } else {
        gens.extend((0..m).map(|k| WeylGenerator::Flip(vec![k])));
    }
    gens
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisRow {
    pub lambda: String,
    pub t_monomial: String,
    pub orbit_sum: String,
    pub coefficient: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub kind: String,
    pub d: usize,
    pub cap: u32,
    pub trunc: u32,
    pub rows: Vec<BasisRow>,
    pub odd_rows: Vec<BasisRow>,
    pub failures: Vec<String>,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// `lambda,T_monomial,orbit_sum_poly` with every field quoted.
    pub fn to_csv(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        let mut out = String::from("lambda,T_monomial,orbit_sum_poly\n");
        for r in self.rows.iter().chain(&self.odd_rows) {
            out.push_str(&format!(
                "{},{},{}\n",
                quote(&r.lambda),
                quote(&r.t_monomial),
                quote(&r.orbit_sum)
            ));
        }
        out
    }
}

/// Compares the coefficients of `√F_t` with the orbit sums and checks the
/// Weyl-group action on them; for even `SO_n` also checks `H_t`'s
/// coefficients against `i^m a_λ` and their sign behavior.
pub fn invariant_basis_check(
    kind: GroupKind,
    d: usize,
    cap: u32,
    trunc: u32,
    field: FieldKind,
) -> Result<BasisReport> {
    let m = kind.m();
    let type_d = kind.tag() == GroupTag::SoEven;
    let mut report = BasisReport {
        kind: kind.to_string(),
        d,
        cap,
        trunc,
        rows: Vec::new(),
        odd_rows: Vec::new(),
        failures: Vec::new(),
    };
    let root = f_t_determinant(kind, d, cap, trunc, field)?.sqrt()?;
    let lambdas = enumerate_lambda_plus(m, d, Parity::Even, cap);
    let expected: HashMap<TMonomial, &LambdaMatrix> =
        lambdas.iter().map(|l| (l.t_monomial(), l)).collect();
    for (t, c) in root.terms() {
        if !t.is_one() && !expected.contains_key(t) {
            report
                .failures
                .push(format!("coefficient of {t} is {c} but no weight matrix matches"));
        }
    }
    let gens = weyl_generators(m, type_d);
    let mut supports: HashSet<Monomial> = HashSet::new();
    for lambda in &lambdas {
        let t = lambda.t_monomial();
        let a = orbit_sum(lambda, field);
        for (mono, _) in a.terms() {
            if !supports.insert(mono.clone()) {
                report
                    .failures
                    .push(format!("orbit sum of {lambda} shares a monomial with another"));
            }
        }
        if t.degree() > trunc {
            continue;
        }
        let c = root.coefficient(&t);
        let matches = c == a;
        if !matches {
            report
                .failures
                .push(format!("coefficient of {t} is {c}, expected {a}"));
        }
        for g in &gens {
            if g.apply(&c, m, d) != c {
                report.failures.push(format!("coefficient of {t} not fixed by {g}"));
            }
        }
        report.rows.push(BasisRow {
            lambda: lambda.to_string(),
            t_monomial: t.to_string(),
            orbit_sum: a.to_string(),
            coefficient: c.to_string(),
            matches,
        });
    }
    if type_d {
        let h = h_t_pfaffian(kind.n(), d, cap, trunc, field)?;
        let i_m = h.ring_one().imaginary_unit_like().expect("field has i").pow(m as u32);
        let odd = enumerate_lambda_plus(m, d, Parity::Odd, cap);
        let expected: HashSet<TMonomial> = odd.iter().map(LambdaMatrix::t_monomial).collect();
        for (t, c) in h.terms() {
            if !expected.contains(t) {
                report
                    .failures
                    .push(format!("H_t coefficient of {t} is {c} but no weight matrix matches"));
            }
        }
        let flip_one = WeylGenerator::Flip(vec![0]);
        for lambda in &odd {
            let t = lambda.t_monomial();
            if t.degree() > trunc {
                continue;
            }
            let a = orbit_sum(lambda, field).mul(&i_m);
            let c = h.coefficient(&t);
            let matches = c == a;
            if !matches {
                report
                    .failures
                    .push(format!("H_t coefficient of {t} is {c}, expected {a}"));
            }
            for g in &gens {
                if g.apply(&c, m, d) != c {
                    report.failures.push(format!("H_t coefficient of {t} not fixed by {g}"));
                }
            }
            if flip_one.apply(&c, m, d) != c.neg() {
                report
                    .failures
                    .push(format!("H_t coefficient of {t} not negated by {flip_one}"));
            }
            report.odd_rows.push(BasisRow {
                lambda: lambda.to_string(),
                t_monomial: t.to_string(),
                orbit_sum: a.to_string(),
                coefficient: c.to_string(),
                matches,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(rows: &[&[u16]]) -> LambdaMatrix {
        LambdaMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn kind(tag: GroupTag, n: usize) -> GroupKind {
        GroupKind::new(tag, n).unwrap()
    }

    fn poly(s: &str, m: usize, d: usize, field: FieldKind) -> MultiPoly {
        MultiPoly::parse(s, &cartan_vars(m, d), field).unwrap()
    }

    fn w(e: &[u16]) -> WeightIndex {
        WeightIndex::new(e).unwrap()
    }

    #[test]
    fn kind_validation() {
        assert!(GroupKind::new(GroupTag::Sp, 3).is_err());
        assert!(GroupKind::new(GroupTag::SoOdd, 4).is_err());
        assert!(GroupKind::new(GroupTag::SoEven, 4).is_ok());
        assert!(GroupKind::new(GroupTag::O, 1).is_err());
    }

    #[test]
    fn embeddings() {
        let qi = FieldKind::Gaussian;
        let y = generic_cartan_tuple(kind(GroupTag::O, 2), 1, qi).unwrap();
        assert!(y[0].is_skew());
        assert_eq!(y[0].get(0, 1).to_string(), "(0+1 i)*x11");
        assert_eq!(y[0].get(1, 0).to_string(), "(0-1 i)*x11");

        let sp = generic_cartan_tuple(kind(GroupTag::Sp, 4), 1, FieldKind::Rational).unwrap();
        let diag: Vec<String> = (0..4).map(|i| sp[0].get(i, i).to_string()).collect();
        assert_eq!(diag, ["x11", "x21", "-x11", "-x21"]);

        let o3 = generic_cartan_tuple(kind(GroupTag::O, 3), 1, qi).unwrap();
        assert!((0..3).all(|i| o3[0].get(2, i).is_zero() && o3[0].get(i, 2).is_zero()));

        let x = vec![FieldKind::Rational.one()];
        assert!(cartan_embed(kind(GroupTag::O, 2), &x, &x[0]).is_err());
    }

    #[test]
    fn orbits() {
        assert_eq!(weyl_orbit(&lam(&[&[2], &[2]])).len(), 1);
        assert_eq!(weyl_orbit(&lam(&[&[2, 0], &[0, 2]])).len(), 2);
        assert_eq!(weyl_orbit(&lam(&[&[2], &[2], &[4]])).len(), 3);
        for l in weyl_orbit(&lam(&[&[2], &[2], &[4]])) {
            assert_eq!(l.normal_form(), lam(&[&[4], &[2], &[2]]));
        }
    }

    #[test]
    fn lambda_plus_enumeration() {
        let l = enumerate_lambda_plus(1, 1, Parity::Even, 4);
        assert_eq!(l, vec![lam(&[&[2]]), lam(&[&[4]])]);
        let l = enumerate_lambda_plus(1, 2, Parity::Odd, 1);
        assert_eq!(l.len(), 2);
        assert!(l.contains(&lam(&[&[1, 0]])) && l.contains(&lam(&[&[0, 1]])));
        let l = enumerate_lambda_plus(2, 1, Parity::Even, 2);
        assert_eq!(l, vec![lam(&[&[2], &[0]]), lam(&[&[2], &[2]])]);
        assert!(l.iter().all(LambdaMatrix::is_normal));
    }

    #[test]
    fn orbit_sums() {
        let q = FieldKind::Rational;
        assert_eq!(orbit_sum(&lam(&[&[2]]), q), poly("x11^2", 1, 1, q));
        assert_eq!(orbit_sum(&lam(&[&[2], &[0]]), q), poly("x11^2 + x21^2", 2, 1, q));
        assert_eq!(
            orbit_sum(&lam(&[&[1, 1], &[1, 1]]), q),
            poly("x11*x12*x21*x22", 2, 2, q)
        );
    }

    #[test]
    fn n_t_examples() {
        let q = FieldKind::Rational;
        let n2 = n_t_series(kind(GroupTag::O, 2), 1, 2, 2, q).unwrap();
        assert_eq!(n2.num_terms(), 2);
        assert_eq!(n2.coefficient(&TMonomial::var(w(&[2]))), poly("x11^2", 1, 1, q));
        let n4 = n_t_series(kind(GroupTag::O, 4), 1, 2, 1, q).unwrap();
        assert_eq!(n4.num_terms(), 2);
        assert_eq!(
            n4.coefficient(&TMonomial::var(w(&[2]))),
            poly("x11^2 + x21^2", 2, 1, q)
        );
        assert!(n4.constant_term().is_one());
    }

    #[test]
    fn f_t_examples() {
        let qi = FieldKind::Gaussian;
        let f2 = f_t_series(kind(GroupTag::O, 2), 1, 2, 2, qi).unwrap();
        let t = TMonomial::var(w(&[2]));
        assert_eq!(f2.coefficient(&t), poly("2*x11^2", 1, 1, qi));
        assert_eq!(f2.coefficient(&t.mul(&t)), poly("x11^4", 1, 1, qi));
        assert_eq!(f2.num_terms(), 3);
        let f3 = f_t_series(kind(GroupTag::O, 3), 1, 2, 2, qi).unwrap();
        assert_eq!(f3, f2);
        // the odd embedding pads a zero row, so rank and series agree
        for d in 1..=2 {
            assert_eq!(
                f_t_determinant(kind(GroupTag::SoOdd, 5), d, 2, 2, qi).unwrap(),
                f_t_determinant(kind(GroupTag::O, 4), d, 2, 2, qi).unwrap()
            );
        }
        f_t_series(kind(GroupTag::Sp, 4), 2, 2, 2, FieldKind::Rational).unwrap();
    }

    #[test]
    fn h_t_examples() {
        let qi = FieldKind::Gaussian;
        let h = h_t_series(2, 1, 1, 1, qi).unwrap();
        assert_eq!(h.num_terms(), 1);
        assert_eq!(h.coefficient(&TMonomial::var(w(&[1]))), poly("(0+1 i)*x11", 1, 1, qi));
        let h2 = h_t_series(2, 2, 1, 1, qi).unwrap();
        assert_eq!(h2.coefficient(&TMonomial::var(w(&[1, 0]))), poly("(0+1 i)*x11", 1, 2, qi));
        assert_eq!(h2.coefficient(&TMonomial::var(w(&[0, 1]))), poly("(0+1 i)*x12", 1, 2, qi));
        assert!(h2.eval(&Default::default()).unwrap().is_zero());
        h_t_series(4, 2, 3, 2, qi).unwrap();
        assert!(h_t_series(3, 1, 1, 1, qi).is_err());
    }

    #[test]
    fn basis_reports() {
        let qi = FieldKind::Gaussian;
        let r = invariant_basis_check(kind(GroupTag::O, 2), 1, 4, 3, qi).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        assert_eq!(r.rows[0].coefficient, "x11^2");
        let r = invariant_basis_check(kind(GroupTag::O, 4), 1, 2, 3, qi).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        assert_eq!(r.rows[0].orbit_sum, "x11^2 + x21^2");
        let r = invariant_basis_check(kind(GroupTag::SoEven, 4), 2, 3, 2, qi).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        assert!(!r.odd_rows.is_empty());
        assert!(r.to_csv().starts_with("lambda,T_monomial,orbit_sum_poly\n\"["));
    }

    #[test]
    fn sign_flip_fixes_even_orbit_sums() {
        let q = FieldKind::Rational;
        let a = orbit_sum(&lam(&[&[2]]), q);
        assert_eq!(WeylGenerator::Flip(vec![0]).apply(&a, 1, 1), a);
        let b = orbit_sum(&lam(&[&[1], &[1]]), q);
        assert_eq!(WeylGenerator::Flip(vec![0]).apply(&b, 2, 1), b.neg());
        assert_eq!(WeylGenerator::Flip(vec![0, 1]).apply(&b, 2, 1), b);
    }
}
