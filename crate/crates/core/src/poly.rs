//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are keyed by exponent vectors over a fixed [`VarTable`] and ordered
//! graded-lexicographically (total degree first, then lexicographic in
//! table order). The canonical text form lists terms from the largest down,
//! e.g. `1/2*x1^2*x2 - 3*x2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};

/// An ordered list of variable names.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || index.insert(name.clone(), i).is_some() {
                return Err(AlgebraError::Precondition(format!(
                    "bad or duplicate variable name {name:?}"
                )));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per variable of the table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with coefficients in `field` over the variables of `vars`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<VarTable>,
    field: FieldKind,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &Arc<VarTable>, field: FieldKind) -> Self {
        MultiPoly {
            vars: vars.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: ExactScalar) -> Self {
        let mut p = MultiPoly::zero(vars, c.field());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Arc<VarTable>, field: FieldKind, k: i64) -> Self {
        MultiPoly::constant(vars, field.from_int(k))
    }

    pub fn var(vars: &Arc<VarTable>, field: FieldKind, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        let mut m = Monomial::one(vars.len());
        m.0[i] = 1;
        Ok(MultiPoly::monomial(vars, m, field.one()))
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: ExactScalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = MultiPoly::zero(vars, c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(vars: &Arc<VarTable>, field: FieldKind, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, ExactScalar)>,
    {
        let mut p = MultiPoly::zero(vars, field);
        for (e, c) in terms {
            p.add_term(Monomial::from_exponents(&e), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> ExactScalar {
        self.terms
            .get(&Monomial::from_exponents(exps))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_table(&self.vars, &other.vars) {
            return Err(AlgebraError::TableMismatch);
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(&self.vars, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars, self.field);
        }
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    fn var_indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.vars
                    .index_of(n)
                    .ok_or_else(|| AlgebraError::UnknownVariable(n.to_string()))
            })
            .collect()
    }

    /// Maximum total exponent over the variables in `subset`; `None` stands
    /// for the degree of the zero polynomial (−∞).
    pub fn degree_in(&self, subset: &[&str]) -> Result<Option<u32>> {
        let idx = self.var_indices(subset)?;
        Ok(self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum())
            .max())
    }

    /// The coefficient of the partial exponent pattern: all terms whose
    /// exponents match `pattern` on the named variables, with those
    /// variables removed.
    pub fn coeff_of(&self, pattern: &[(&str, u32)]) -> Result<Self> {
        let names: Vec<&str> = pattern.iter().map(|(n, _)| *n).collect();
        let idx = self.var_indices(&names)?;
        let mut out = MultiPoly::zero(&self.vars, self.field);
        for (m, c) in &self.terms {
            if idx.iter().zip(pattern).all(|(&i, &(_, e))| m.0[i] == e) {
                let mut r = m.clone();
                for &i in &idx {
                    r.0[i] = 0;
                }
                out.add_term(r, c.clone());
            }
        }
        Ok(out)
    }

    /// The part of total degree `k` in the variables of `subset`.
    pub fn homogeneous_part_in(&self, subset: &[&str], k: u32) -> Result<Self> {
        let idx = self.var_indices(subset)?;
        let mut out = MultiPoly::zero(&self.vars, self.field);
        for (m, c) in &self.terms {
            if idx.iter().map(|&i| m.0[i]).sum::<u32>() == k {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Composes `self` with `bindings` (variable name to polynomial over
    /// `target`). Unbound variables are kept when `target` has a variable
    /// of the same name.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, MultiPoly>,
        target: &Arc<VarTable>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let img = match bindings.get(name) {
                Some(p) => {
                    if !same_table(p.vars(), target) {
                        return Err(AlgebraError::TableMismatch);
                    }
                    if p.field != self.field {
                        return Err(AlgebraError::FieldMismatch {
                            left: self.field.to_string(),
                            right: p.field.to_string(),
                        });
                    }
                    p.clone()
                }
                None => match target.index_of(name) {
                    Some(_) => MultiPoly::var(target, self.field, name)?,
                    None => {
                        // only an error if the variable actually occurs
                        let i = self.vars.index_of(name).unwrap();
                        if self.terms.keys().any(|m| m.0[i] > 0) {
                            return Err(AlgebraError::UnknownVariable(name.clone()));
                        }
                        MultiPoly::zero(target, self.field)
                    }
                },
            };
            images.push(img);
        }
        let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                term = term.mul(&pw);
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitutes scalars for the named variables, keeping the table.
    pub fn evaluate_partial(&self, values: &HashMap<String, ExactScalar>) -> Result<Self> {
        let mut bindings = HashMap::new();
        for (k, v) in values {
            if self.vars.index_of(k).is_none() {
                return Err(AlgebraError::UnknownVariable(k.clone()));
            }
            bindings.insert(k.clone(), MultiPoly::constant(&self.vars, v.clone()));
        }
        self.substitute(&bindings, &self.vars)
    }

    /// Full evaluation to a scalar. Every occurring variable must be bound.
    pub fn evaluate(&self, values: &HashMap<String, ExactScalar>) -> Result<ExactScalar> {
        let p = self.evaluate_partial(values)?;
        p.as_constant()
            .ok_or_else(|| AlgebraError::Precondition("evaluation left free variables".into()))
    }

    /// Re-expresses the polynomial over a larger table containing all of
    /// its variables.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| AlgebraError::UnknownVariable(n.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.len());
            for (i, &k) in m.0.iter().enumerate() {
                e.0[map[i]] += k;
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Exact division by a nonzero polynomial; `None` unless `d` divides
    /// `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<Self> {
        let (lm, lc) = d.terms.iter().next_back()?;
        let lc_inv = lc.checked_inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars, self.field);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = c.mul(&lc_inv);
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&qm), dc.mul(&qc).neg());
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Applies a map to every coefficient (used for sign-flip actions and
    /// similar substitutions that only rescale terms).
    pub fn map_terms<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Monomial, &ExactScalar) -> ExactScalar,
    {
        let mut out = MultiPoly::zero(&self.vars, self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }

    /// Renames variables by a permutation of table indices:
    /// the exponent of variable `i` moves to variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = MultiPoly::zero(&self.vars, self.field);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(self.vars.len());
            for (i, &k) in m.0.iter().enumerate() {
                e.0[perm[i]] = k;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Parses the canonical text form (and small variations of spacing).
    pub fn parse(text: &str, vars: &Arc<VarTable>, field: FieldKind) -> Result<Self> {
        let err = || AlgebraError::Parse {
            what: "polynomial",
            input: text.to_string(),
        };
        let mut out = MultiPoly::zero(vars, field);
        for (negative, term) in split_terms(text).ok_or_else(err)? {
            let mut coeff = field.one();
            let mut mono = Monomial::one(vars.len());
            for factor in split_factors(&term).ok_or_else(err)? {
                let f = factor.trim();
                if let Some(inner) = f.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                    coeff = coeff.mul(&field.parse_scalar(inner)?);
                } else if f.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff = coeff.mul(&field.parse_scalar(f)?);
                } else {
                    let (name, exp) = match f.split_once('^') {
                        Some((n, e)) => (n.trim(), e.trim().parse::<u32>().map_err(|_| err())?),
                        None => (f, 1),
                    };
                    let i = vars
                        .index_of(name)
                        .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
                    mono.0[i] += exp;
                }
            }
            if negative {
                coeff = coeff.neg();
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

/// Splits a sum into signed terms at top-level `+`/`-`.
fn split_terms(text: &str) -> Option<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut buf = String::new();
    let mut negative = false;
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                buf.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
                buf.push(c);
            }
            '+' | '-' if depth == 0 => {
                let trimmed = buf.trim();
                let last = trimmed.chars().last();
                if trimmed.is_empty() {
                    if c == '-' {
                        negative = !negative;
                    }
                } else if matches!(last, Some('*') | Some('^') | Some('/')) {
                    buf.push(c);
                } else {
                    out.push((negative, trimmed.to_string()));
                    buf.clear();
                    negative = c == '-';
                }
            }
            _ => buf.push(c),
        }
    }
    if depth != 0 {
        return None;
    }
    let trimmed = buf.trim();
    if trimmed.is_empty() {
        return if out.is_empty() { None } else { Some(out) };
    }
    out.push((negative, trimmed.to_string()));
    Some(out)
}

fn split_factors(term: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut buf = String::new();
    for c in term.chars() {
        match c {
            '(' => {
                depth += 1;
                buf.push(c);
            }
            ')' => {
                depth -= 1;
                buf.push(c);
            }
            '*' if depth == 0 => {
                if buf.trim().is_empty() {
                    return None;
                }
                out.push(std::mem::take(&mut buf));
            }
            _ => buf.push(c),
        }
    }
    if buf.trim().is_empty() {
        return None;
    }
    out.push(buf);
    Some(out)
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.vars, self.field)
    }

    fn one_like(&self) -> Self {
        MultiPoly::from_int(&self.vars, self.field, 1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn from_int_like(&self, k: i64) -> Self {
        MultiPoly::from_int(&self.vars, self.field, k)
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        let inv = self.field.from_int(k).checked_inv().ok()?;
        Some(self.scale(&inv))
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() || self.check_compatible(rhs).is_err() {
            return None;
        }
        self.div_exact(rhs)
    }

    fn is_integral_domain(&self) -> bool {
        true
    }

    fn imaginary_unit_like(&self) -> Option<Self> {
        self.field
            .imaginary_unit()
            .map(|i| MultiPoly::constant(&self.vars, i))
    }
}

fn fmt_monomial(vars: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(&self.vars, m);
            let (negative, body) = match c {
                ExactScalar::Rational(q) => {
                    let abs = ExactScalar::Rational(q.abs());
                    let coeff = abs.to_string();
                    let body = if mono.is_empty() {
                        coeff
                    } else if coeff == "1" {
                        mono
                    } else {
                        format!("{coeff}*{mono}")
                    };
                    (q.is_negative(), body)
                }
                other => {
                    let body = if mono.is_empty() {
                        format!("({other})")
                    } else if other.is_one() {
                        mono
                    } else {
                        format!("({other})*{mono}")
                    };
                    (false, body)
                }
            };
            match (k, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> Arc<VarTable> {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn p(s: &str, vars: &Arc<VarTable>) -> MultiPoly {
        MultiPoly::parse(s, vars, FieldKind::Rational).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = table(&["x"]);
        assert_eq!(p("x + 1", &v).mul(&p("x - 1", &v)), p("x^2 - 1", &v));
        let q = p("3*x^2 - x", &v);
        assert!(q.add(&q.neg()).is_zero());
    }

    #[test]
    fn canonical_text() {
        let v = table(&["x1", "x2"]);
        let q = p("-3*x2 + 1/2*x1^2*x2", &v);
        assert_eq!(q.to_string(), "1/2*x1^2*x2 - 3*x2");
        assert_eq!(p(&q.to_string(), &v), q);
        assert_eq!(p("-x1 - 1", &v).to_string(), "-x1 - 1");
        let g = MultiPoly::parse("(1/2+1 i)*x1 - x2", &v, FieldKind::Gaussian).unwrap();
        assert_eq!(g.to_string(), "(1/2+1 i)*x1 + (-1+0 i)*x2");
        assert_eq!(
            MultiPoly::parse(&g.to_string(), &v, FieldKind::Gaussian).unwrap(),
            g
        );
    }

    #[test]
    fn square_of_h4_has_six_terms() {
        let v = table(&["t12", "t13", "t15", "t23", "t25", "t35"]);
        let h4 = p("t12*t35 - t13*t25 + t15*t23", &v);
        let sq = h4.mul(&h4);
        assert_eq!(sq.num_terms(), 6);
        assert!(sq.terms().all(|(m, _)| m.degree() == 4));
        let mut coeffs: Vec<String> = sq.terms().map(|(_, c)| c.to_string()).collect();
        coeffs.sort();
        let mut expected = vec!["1", "1", "1", "-2", "2", "-2"];
        expected.sort();
        assert_eq!(coeffs, expected);
    }

    #[test]
    fn substitution() {
        let v = table(&["x", "y"]);
        let q = p("x^2 + y", &v);
        let values: HashMap<String, ExactScalar> = [
            ("x".to_string(), ExactScalar::rational(2, 1)),
            ("y".to_string(), ExactScalar::rational(3, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(q.evaluate(&values).unwrap(), ExactScalar::rational(7, 1));

        let x = p("x", &v);
        let ident: HashMap<String, MultiPoly> = [("x".to_string(), x.clone())].into();
        assert_eq!(x.substitute(&ident, &v).unwrap(), x);

        let h = table(&["t12", "t13", "t15", "t23", "t25", "t35"]);
        let h4 = p("t12*t35 - t13*t25 + t15*t23", &h);
        let point: HashMap<String, ExactScalar> = [
            ("t12", 1),
            ("t35", 1),
            ("t13", 1),
            ("t25", 1),
            ("t15", 0),
            ("t23", 0),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), ExactScalar::rational(v, 1)))
        .collect();
        assert!(h4.evaluate(&point).unwrap().is_zero());
    }

    #[test]
    fn substitution_into_other_table_and_unknowns() {
        let v = table(&["x", "y"]);
        let w = table(&["s", "y"]);
        let q = p("x*y + x", &v);
        let b: HashMap<String, MultiPoly> = [("x".to_string(), p("s + 1", &w))].into();
        let r = q.substitute(&b, &w).unwrap();
        assert_eq!(r, p("s*y + y + s + 1", &w));
        let u = table(&["s"]);
        assert!(matches!(
            q.substitute(&HashMap::new(), &u),
            Err(AlgebraError::UnknownVariable(_))
        ));
    }

    #[test]
    fn coefficient_extraction() {
        let v = table(&["a", "b", "c", "x"]);
        let q = p("a*x^2 + b*x + c", &v);
        assert_eq!(q.coeff_of(&[("x", 2)]).unwrap(), p("a", &v));
        let w = table(&["x", "y"]);
        assert_eq!(p("x^2*y + y", &w).coeff_of(&[("x", 0)]).unwrap(), p("y", &w));
    }

    #[test]
    fn partial_degrees() {
        let v = table(&["x", "y"]);
        assert_eq!(p("x^2*y + x", &v).degree_in(&["x"]).unwrap(), Some(2));
        assert_eq!(p("5", &v).degree_in(&["x"]).unwrap(), Some(0));
        assert_eq!(MultiPoly::zero(&v, FieldKind::Rational).degree_in(&["x"]).unwrap(), None);
        let h = table(&["t12", "t13", "t15", "t23", "t25", "t35"]);
        let h4 = p("t12*t35 - t13*t25 + t15*t23", &h);
        assert_eq!(h4.degree_in(&["t12"]).unwrap(), Some(1));
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = p("x", &table(&["x"]));
        let b = p("x", &table(&["x", "y"]));
        assert_eq!(a.checked_add(&b), Err(AlgebraError::TableMismatch));
    }

    #[test]
    fn exact_division() {
        let v = table(&["x", "y"]);
        let a = p("x^2 - y^2", &v);
        assert_eq!(a.div_exact(&p("x - y", &v)).unwrap(), p("x + y", &v));
        assert!(a.div_exact(&p("x + 2*y", &v)).is_none());
    }
}
