//! Truncated formal power series in the variables `T_w`, where `w` ranges
//! over nonzero weight vectors `(i1, ..., id)` of one parity class.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::poly::MultiPoly;
use crate::ring::Ring;

/// Parity of the weight sum `i1 + ... + id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    fn join(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Result<Parity> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            "mixed" => Ok(Parity::Mixed),
            _ => Err(AlgebraError::Parse {
                what: "parity",
                input: s.to_string(),
            }),
        }
    }
}

/// A nonzero weight vector `(i1, ..., id)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightIndex(SmallVec<[u16; 4]>);

impl WeightIndex {
    pub fn new(entries: &[u16]) -> Result<Self> {
        if entries.is_empty() || entries.iter().all(|&e| e == 0) {
            return Err(AlgebraError::Precondition(format!(
                "weight index {entries:?} must be a nonzero vector"
            )));
        }
        Ok(WeightIndex(SmallVec::from_slice(entries)))
    }

    pub fn entries(&self) -> &[u16] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn parity(&self) -> Parity {
        if self.weight().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for WeightIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "T({})", parts.join(","))
    }
}

/// All weight vectors of length `d` with weight in `1..=cap` and the given
/// parity (`Mixed` keeps both classes), in increasing order.
pub fn alphabet(d: usize, cap: u32, parity: Parity) -> Vec<WeightIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; d];
    fn rec(
        pos: usize,
        left: u32,
        cur: &mut Vec<u16>,
        parity: Parity,
        out: &mut Vec<WeightIndex>,
    ) {
        if pos == cur.len() {
            if let Ok(w) = WeightIndex::new(cur) {
                if parity == Parity::Mixed || w.parity() == parity {
                    out.push(w);
                }
            }
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, cur, parity, out);
        }
        cur[pos] = 0;
    }
    if d > 0 {
        rec(0, cap, &mut cur, parity, &mut out);
    }
    out.sort();
    out
}

/// A monomial in the `T_w`: weight indices with positive multiplicities.
/// The empty monomial is `1`. Ordered by degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TMonomial {
    degree: u32,
    factors: SmallVec<[(WeightIndex, u32); 4]>,
}

impl TMonomial {
    pub fn one() -> Self {
        TMonomial {
            degree: 0,
            factors: SmallVec::new(),
        }
    }

    pub fn var(w: WeightIndex) -> Self {
        TMonomial {
            degree: 1,
            factors: smallvec::smallvec![(w, 1)],
        }
    }

    pub fn from_factors<I>(factors: I) -> Self
    where
        I: IntoIterator<Item = (WeightIndex, u32)>,
    {
        let mut map: BTreeMap<WeightIndex, u32> = BTreeMap::new();
        for (w, m) in factors {
            if m > 0 {
                *map.entry(w).or_default() += m;
            }
        }
        TMonomial {
            degree: map.values().sum(),
            factors: map.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(WeightIndex, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &TMonomial) -> TMonomial {
        let mut factors = SmallVec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    factors.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend(a[i..].iter().cloned());
        factors.extend(b[j..].iter().cloned());
        TMonomial {
            degree: self.degree + other.degree,
            factors,
        }
    }

    pub fn parity(&self) -> Option<Parity> {
        self.factors
            .iter()
            .map(|(w, _)| w.parity())
            .reduce(Parity::join)
    }
}

impl fmt::Display for TMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(w, m)| if *m == 1 { w.to_string() } else { format!("{w}^{m}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A power series truncated above degree `trunc`, with coefficients in `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<R> {
    trunc: u32,
    parity: Parity,
    one: R,
    terms: BTreeMap<TMonomial, R>,
}

impl<R: Ring> TSeries<R> {
    pub fn zero(one: &R, trunc: u32, parity: Parity) -> Self {
        TSeries {
            trunc,
            parity,
            one: one.one_like(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R, trunc: u32, parity: Parity) -> Self {
        let mut s = TSeries::zero(&c, trunc, parity);
        s.insert(TMonomial::one(), c);
        s
    }

    pub fn one(one: &R, trunc: u32, parity: Parity) -> Self {
        TSeries::constant(one.one_like(), trunc, parity)
    }

    /// `c · m`, or zero when `m` exceeds the truncation degree.
    pub fn monomial(m: TMonomial, c: R, trunc: u32, parity: Parity) -> Self {
        let mut s = TSeries::zero(&c, trunc, parity);
        s.insert(m, c);
        s
    }

    pub fn var(w: WeightIndex, one: &R, trunc: u32) -> Self {
        let parity = w.parity();
        TSeries::monomial(TMonomial::var(w), one.one_like(), trunc, parity)
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn ring_one(&self) -> &R {
        &self.one
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TMonomial, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &TMonomial) -> R {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.one.zero_like())
    }

    pub fn constant_term(&self) -> R {
        self.coefficient(&TMonomial::one())
    }

    /// Adds `c · m` in place; terms above the truncation are dropped.
    pub fn insert(&mut self, m: TMonomial, c: R) {
        if m.degree > self.trunc || c.is_zero() {
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

    /// Observed degree: largest degree of a stored monomial, 0 for
    /// constants and for zero.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, TMonomial::degree)
    }

    pub fn with_trunc(&self, trunc: u32) -> Self {
        let mut s = TSeries::zero(&self.one, trunc, self.parity);
        for (m, c) in &self.terms {
            s.insert(m.clone(), c.clone());
        }
        s
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut s = TSeries::zero(&self.one, self.trunc, self.parity);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree == k) {
            s.terms.insert(m.clone(), c.clone());
        }
        s
    }

    pub fn map_coeffs<S: Ring, F: FnMut(&R) -> S>(&self, one: &S, mut f: F) -> TSeries<S> {
        let mut s = TSeries::zero(one, self.trunc, self.parity);
        for (m, c) in &self.terms {
            s.insert(m.clone(), f(c));
        }
        s
    }

    pub fn try_map_coeffs<S: Ring, F: FnMut(&R) -> Result<S>>(
        &self,
        one: &S,
        mut f: F,
    ) -> Result<TSeries<S>> {
        let mut s = TSeries::zero(one, self.trunc, self.parity);
        for (m, c) in &self.terms {
            s.insert(m.clone(), f(c)?);
        }
        Ok(s)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(&self.one, |a| a.mul(c))
    }

    fn binary_shape(&self, rhs: &Self) -> (u32, Parity) {
        (self.trunc.min(rhs.trunc), self.parity.join(rhs.parity))
    }

    pub fn series_add(&self, rhs: &Self) -> Self {
        let (trunc, parity) = self.binary_shape(rhs);
        let mut s = if trunc == self.trunc {
            let mut s = self.clone();
            s.parity = parity;
            s
        } else {
            let mut s = self.with_trunc(trunc);
            s.parity = parity;
            s
        };
        for (m, c) in &rhs.terms {
            s.insert(m.clone(), c.clone());
        }
        s
    }

    pub fn series_mul(&self, rhs: &Self) -> Self {
        let (trunc, parity) = self.binary_shape(rhs);
        let mut out = TSeries::zero(&self.one, trunc, parity);
        for (m1, c1) in &self.terms {
            if m1.degree > trunc {
                break;
            }
            let room = trunc - m1.degree;
            for (m2, c2) in &rhs.terms {
                if m2.degree > room {
                    break;
                }
                out.insert(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    /// The square root with constant coefficient 1, computed degree by
    /// degree: `f_k = (g_k − Σ_{0<i<k} f_i f_{k−i}) / 2`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(AlgebraError::Precondition(format!(
                "square root needs constant coefficient 1, found {}",
                self.constant_term()
            )));
        }
        let not_halvable = || AlgebraError::Precondition("2 is not invertible".into());
        let mut comps: Vec<TSeries<R>> = vec![TSeries::one(&self.one, self.trunc, self.parity)];
        let mut root = comps[0].clone();
        for k in 1..=self.trunc {
            let mut s = self.homogeneous_part(k);
            for i in 1..k {
                if i > k - i {
                    break;
                }
                let prod = comps[i as usize].series_mul(&comps[(k - i) as usize]);
                let prod = if i == k - i {
                    prod
                } else {
                    prod.map_coeffs(&self.one, |c| c.mul_int(2))
                };
                s = s.series_add(&prod.neg_series());
            }
            let fk = s.try_map_coeffs(&self.one, |c| c.div_int(2).ok_or_else(not_halvable))?;
            root = root.series_add(&fk);
            comps.push(fk);
        }
        Ok(root)
    }

    pub fn neg_series(&self) -> Self {
        self.map_coeffs(&self.one, |c| c.neg())
    }

    /// Multiplicative inverse, defined when the constant coefficient is a
    /// unit of `R`.
    pub fn try_inverse(&self) -> Option<Self> {
        let c_inv = self.constant_term().try_inv()?;
        let mut h = self.scale(&c_inv);
        h.terms.remove(&TMonomial::one());
        let minus_h = h.neg_series();
        let mut acc = TSeries::one(&self.one, self.trunc, self.parity);
        let mut power = acc.clone();
        for _ in 0..self.trunc {
            power = power.series_mul(&minus_h);
            if power.terms.is_empty() {
                break;
            }
            acc = acc.series_add(&power);
        }
        Some(acc.scale(&c_inv))
    }

    /// Evaluates at `T_w -> point[w]` (missing weights are zero).
    pub fn eval(&self, point: &BTreeMap<WeightIndex, R>) -> Result<R> {
        for w in point.keys() {
            if self.parity != Parity::Mixed && w.parity() != self.parity {
                return Err(AlgebraError::Precondition(format!(
                    "{w} is outside the {} index class",
                    self.parity.as_str()
                )));
            }
        }
        let mut acc = self.one.zero_like();
        'terms: for (m, c) in &self.terms {
            let mut t = c.clone();
            for (w, e) in &m.factors {
                match point.get(w) {
                    Some(v) => t = t.mul(&v.pow(*e)),
                    None => continue 'terms,
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl TSeries<MultiPoly> {
    /// Divides every coefficient by `y^n`.
    pub fn extract_power(&self, y: &str, n: u32) -> Result<Self> {
        let vars = self.one.vars().clone();
        let yi = vars
            .index_of(y)
            .ok_or_else(|| AlgebraError::UnknownVariable(y.to_string()))?;
        let mut out = TSeries::zero(&self.one, self.trunc, self.parity);
        for (m, c) in &self.terms {
            let mut q = Vec::with_capacity(c.num_terms());
            for (pm, pc) in c.terms() {
                let mut e = pm.exponents().to_vec();
                if e[yi] < n {
                    return Err(AlgebraError::NotDivisible {
                        monomial: m.to_string(),
                        divisor: format!("{y}^{n}"),
                    });
                }
                e[yi] -= n;
                q.push((e, pc.clone()));
            }
            out.insert(m.clone(), MultiPoly::from_terms(&vars, c.field(), q));
        }
        Ok(out)
    }
}

impl<R: Ring> TSeries<R> {
    /// `{"trunc", "parity", "terms": [{"monomial": [[[i..], mult]..], "coeff"}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<Value> = m
                    .factors
                    .iter()
                    .map(|(w, k)| json!([w.entries(), k]))
                    .collect();
                json!({"monomial": mono, "coeff": c.to_string()})
            })
            .collect();
        json!({"trunc": self.trunc, "parity": self.parity.as_str(), "terms": terms})
    }

    pub fn from_json<F>(v: &Value, one: &R, parse_coeff: F) -> Result<Self>
    where
        F: Fn(&str) -> Result<R>,
    {
        let bad = || AlgebraError::Parse {
            what: "series",
            input: v.to_string(),
        };
        let trunc = v["trunc"].as_u64().ok_or_else(bad)? as u32;
        let parity = Parity::parse(v["parity"].as_str().ok_or_else(bad)?)?;
        let mut s = TSeries::zero(one, trunc, parity);
        for t in v["terms"].as_array().ok_or_else(bad)? {
            let mut factors = Vec::new();
            for f in t["monomial"].as_array().ok_or_else(bad)? {
                let idx: Vec<u16> = f[0]
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|e| e.as_u64().map(|e| e as u16).ok_or_else(bad))
                    .collect::<Result<_>>()?;
                let mult = f[1].as_u64().ok_or_else(bad)? as u32;
                factors.push((WeightIndex::new(&idx)?, mult));
            }
            let c = parse_coeff(t["coeff"].as_str().ok_or_else(bad)?)?;
            s.insert(TMonomial::from_factors(factors), c);
        }
        Ok(s)
    }
}

impl<R: Ring> fmt::Display for TSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for TSeries<R> {
    fn zero_like(&self) -> Self {
        TSeries::zero(&self.one, self.trunc, self.parity)
    }

    fn one_like(&self) -> Self {
        TSeries::one(&self.one, self.trunc, self.parity)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.series_add(rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.series_add(&rhs.neg_series())
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.series_mul(rhs)
    }

    fn neg(&self) -> Self {
        self.neg_series()
    }

    fn from_int_like(&self, k: i64) -> Self {
        TSeries::constant(self.one.from_int_like(k), self.trunc, self.parity)
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        let inv = self.one.div_int(k)?;
        Some(self.scale(&inv))
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        Some(self.series_mul(&rhs.try_inverse()?))
    }

    fn is_integral_domain(&self) -> bool {
        false
    }

    fn imaginary_unit_like(&self) -> Option<Self> {
        let i = self.one.imaginary_unit_like()?;
        Some(TSeries::constant(i, self.trunc, self.parity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;
    use crate::scalar::{ExactScalar, FieldKind};

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d)
    }

    fn w(e: &[u16]) -> WeightIndex {
        WeightIndex::new(e).unwrap()
    }

    fn one() -> ExactScalar {
        FieldKind::Rational.one()
    }

    #[test]
    fn truncated_products() {
        let a = TSeries::var(w(&[2]), &one(), 2);
        let b = TSeries::var(w(&[4]), &one(), 1);
        let u = TSeries::one(&one(), 2, Parity::Even);
        let p = u.add(&a).mul(&u.sub(&a));
        let expected = u.sub(&a.mul(&a));
        assert_eq!(p, expected);
        let ub = TSeries::one(&one(), 1, Parity::Even);
        let r = ub.add(&a.with_trunc(1)).mul(&ub.add(&b));
        assert_eq!(r.num_terms(), 3);
        assert_eq!(r.trunc(), 1);
    }

    #[test]
    fn square_root_of_one_plus_t() {
        let g = TSeries::one(&one(), 3, Parity::Even).add(&TSeries::var(w(&[2]), &one(), 3));
        let f = g.sqrt().unwrap();
        let t = TMonomial::var(w(&[2]));
        let t2 = t.mul(&t);
        let t3 = t2.mul(&t);
        assert_eq!(f.coefficient(&TMonomial::one()), q(1, 1));
        assert_eq!(f.coefficient(&t), q(1, 2));
        assert_eq!(f.coefficient(&t2), q(-1, 8));
        assert_eq!(f.coefficient(&t3), q(1, 16));
        assert_eq!(f.mul(&f), g);
    }

    #[test]
    fn square_root_of_a_square() {
        let a = TSeries::var(w(&[1, 1]), &one(), 4);
        let f = TSeries::one(&one(), 4, Parity::Even).add(&a);
        assert_eq!(f.mul(&f).sqrt().unwrap(), f);
        let u = TSeries::one(&one(), 4, Parity::Even);
        assert_eq!(u.sqrt().unwrap(), u);
    }

    #[test]
    fn square_root_needs_unit_constant() {
        let g = TSeries::constant(q(4, 1), 2, Parity::Even);
        assert!(matches!(g.sqrt(), Err(AlgebraError::Precondition(_))));
    }

    #[test]
    fn degree_and_evaluation() {
        let vars = VarTable::new(["x"]).unwrap();
        let x = MultiPoly::var(&vars, FieldKind::Rational, "x").unwrap();
        let po = x.one_like();
        assert_eq!(TSeries::one(&po, 3, Parity::Even).degree(), 0);
        let ab = TMonomial::var(w(&[2])).mul(&TMonomial::var(w(&[4])));
        let f = TSeries::one(&po, 3, Parity::Even).add(&TSeries::monomial(ab, x, 3, Parity::Even));
        assert_eq!(f.degree(), 2);

        let g = TSeries::one(&one(), 3, Parity::Even).add(&TSeries::monomial(
            TMonomial::var(w(&[2])).mul(&TMonomial::var(w(&[4]))),
            one(),
            3,
            Parity::Even,
        ));
        let point: BTreeMap<_, _> = [(w(&[2]), q(2, 1)), (w(&[4]), q(3, 1))].into();
        assert_eq!(g.eval(&point).unwrap(), q(7, 1));
        assert_eq!(g.eval(&BTreeMap::new()).unwrap(), q(1, 1));
        let odd: BTreeMap<_, _> = [(w(&[1]), q(1, 1))].into();
        assert!(g.eval(&odd).is_err());
    }

    #[test]
    fn power_extraction() {
        let vars = VarTable::new(["y"]).unwrap();
        let y = MultiPoly::var(&vars, FieldKind::Rational, "y").unwrap();
        let po = y.one_like();
        let base = TSeries::one(&po, 2, Parity::Even).add(&TSeries::var(w(&[2]), &po, 2));
        let f = base.scale(&y.mul(&y));
        assert_eq!(f.extract_power("y", 2).unwrap(), base);
        let g = TSeries::constant(y, 2, Parity::Even).add(&TSeries::var(w(&[2]), &po, 2));
        match g.extract_power("y", 1) {
            Err(AlgebraError::NotDivisible { monomial, .. }) => assert_eq!(monomial, "T(2)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_and_json() {
        let g = TSeries::one(&one(), 4, Parity::Odd)
            .add(&TSeries::var(w(&[1, 0]), &one(), 4))
            .add(&TSeries::var(w(&[0, 3]), &one(), 4).scale(&q(-2, 3)));
        let inv = g.try_inverse().unwrap();
        assert_eq!(inv.mul(&g), g.one_like());
        let text = g.to_json();
        let back = TSeries::from_json(&text, &one(), |s| FieldKind::Rational.parse_scalar(s)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn alphabets() {
        let even = alphabet(2, 2, Parity::Even);
        assert_eq!(even, vec![w(&[0, 2]), w(&[1, 1]), w(&[2, 0])]);
        assert_eq!(alphabet(1, 4, Parity::Odd), vec![w(&[1]), w(&[3])]);
        assert!(WeightIndex::new(&[0, 0]).is_err());
    }
}
