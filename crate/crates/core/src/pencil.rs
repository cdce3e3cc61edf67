//! Linear matrix pencils `A = Σ_w M_w T_w` and the series `det(I + A)`,
//! `det(s·I + A)` and `Pf(A)`.

use crate::error::{AlgebraError, Result};
use crate::matrix::RingMat;
use crate::ring::Ring;
use crate::series::{Parity, TMonomial, TSeries, WeightIndex};

#[derive(Clone, Debug)]
pub struct Pencil<R> {
    n: usize,
    one: R,
    terms: Vec<(WeightIndex, RingMat<R>)>,
}

impl<R: Ring> Pencil<R> {
    pub fn new(n: usize, one: &R, terms: Vec<(WeightIndex, RingMat<R>)>) -> Result<Self> {
        if let Some((w, m)) = terms.iter().find(|(_, m)| m.n() != n) {
            return Err(AlgebraError::Dimension(format!(
                "coefficient of {w} has size {}, expected {n}",
                m.n()
            )));
        }
        let terms = terms.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(Pencil {
            n,
            one: one.one_like(),
            terms,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(WeightIndex, RingMat<R>)] {
        &self.terms
    }

    pub fn parity(&self) -> Parity {
        let mut it = self.terms.iter().map(|(w, _)| w.parity());
        match it.next() {
            None => Parity::Even,
            Some(first) => {
                if it.all(|p| p == first) {
                    first
                } else {
                    Parity::Mixed
                }
            }
        }
    }

    /// `A` as a matrix with series entries.
    pub fn series_matrix(&self, trunc: u32) -> RingMat<TSeries<R>> {
        let parity = self.parity();
        let zero = TSeries::zero(&self.one, trunc, parity);
        let mut entries = vec![vec![zero.clone(); self.n]; self.n];
        for (w, mw) in &self.terms {
            let t = TMonomial::var(w.clone());
            for (i, row) in entries.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    e.insert(t.clone(), mw.get(i, j).clone());
                }
            }
        }
        RingMat::from_rows(entries, &zero.one_like()).expect("square")
    }

    /// Whether all coefficient matrices commute pairwise.
    pub fn coefficients_commute(&self) -> bool {
        let t = &self.terms;
        (0..t.len()).all(|i| (i + 1..t.len()).all(|j| t[i].1.commutes_with(&t[j].1).unwrap_or(false)))
    }

    /// Power traces `tr(A^j)` for `j = 1..=trunc`.
    pub fn power_traces(&self, trunc: u32) -> Vec<TSeries<R>> {
        if self.coefficients_commute() {
            self.power_traces_commuting(trunc)
        } else {
            self.power_traces_by_products(trunc)
        }
    }

    /// With commuting coefficients, `tr(A^j)` is the sum over multisets
    /// `k` of size `j` of `multinomial(j; k) · tr(Π M_w^{k_w}) · T^k`.
    pub fn power_traces_commuting(&self, trunc: u32) -> Vec<TSeries<R>> {
        let parity = self.parity();
        let mut out = vec![TSeries::zero(&self.one, trunc, parity); trunc as usize];
        if trunc > 0 {
            let id = RingMat::identity(self.n, &self.one);
            self.walk_multisets(0, 0, 0, 1, &id, &TMonomial::one(), trunc, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_multisets(
        &self,
        start: usize,
        depth: u32,
        run: u32,
        multinomial: i64,
        prod: &RingMat<R>,
        mono: &TMonomial,
        trunc: u32,
        out: &mut [TSeries<R>],
    ) {
        for idx in start..self.terms.len() {
            let (w, m) = &self.terms[idx];
            // letters are nondecreasing, so repeats of `idx` are consecutive
            let count = if depth > 0 && idx == start { run + 1 } else { 1 };
            let j = depth + 1;
            let mult = multinomial * j as i64 / count as i64;
            let p = prod.mul(m).expect("same size");
            let t = mono.mul(&TMonomial::var(w.clone()));
            out[depth as usize].insert(t.clone(), p.trace().mul_int(mult));
            if j < trunc {
                self.walk_multisets(idx, j, count, mult, &p, &t, trunc, out);
            }
        }
    }

    /// `tr(A^j)` from repeated products of the series matrix.
    pub fn power_traces_by_products(&self, trunc: u32) -> Vec<TSeries<R>> {
        let a = self.series_matrix(trunc);
        let mut out = Vec::with_capacity(trunc as usize);
        let mut power = a.clone();
        for j in 1..=trunc {
            if j > 1 {
                power = power.mul(&a).expect("same size");
            }
            out.push(power.trace());
        }
        out
    }

    /// Elementary symmetric functions `e_0, ..., e_K` of the eigenvalues of
    /// `A` (`K = min(n, trunc)`), from Newton's identities. Needs `1..=K` to
    /// be invertible in `R`.
    pub fn elementary(&self, trunc: u32) -> Result<Vec<TSeries<R>>> {
        let top = (self.n as u32).min(trunc);
        let p = self.power_traces(top);
        let mut e = vec![TSeries::one(&self.one, trunc, self.parity())];
        for k in 1..=top {
            let mut acc = e[0].zero_like();
            for i in 1..=k {
                let term = e[(k - i) as usize].mul(&p[(i - 1) as usize]);
                acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            }
            let ek = acc.div_int(k as i64).ok_or_else(|| {
                AlgebraError::Precondition(format!("{k} is not invertible in the coefficient ring"))
            })?;
            e.push(ek.with_trunc(trunc));
        }
        Ok(e)
    }

    /// `det(s·I + A) = Σ_k s^(n−k) e_k`, truncated at `trunc`.
    pub fn det_shifted(&self, s: &R, trunc: u32) -> Result<TSeries<R>> {
        let e = self.elementary(trunc)?;
        let mut out = TSeries::zero(&self.one, trunc, self.parity());
        for (k, ek) in e.iter().enumerate() {
            out = out.add(&ek.scale(&s.pow((self.n - k) as u32)));
        }
        Ok(out)
    }

    /// `det(I + A)`; Newton's identities when they apply, elimination
    /// otherwise (small characteristic).
    pub fn det_one_plus(&self, trunc: u32) -> Result<TSeries<R>> {
        match self.det_shifted(&self.one, trunc) {
            Ok(d) => Ok(d),
            Err(AlgebraError::Precondition(_)) => self.det_one_plus_elimination(trunc),
            Err(e) => Err(e),
        }
    }

    /// `det(I + A)` by Gaussian elimination over the series ring. Every
    /// pivot has constant term 1, so no pivot search is needed.
    pub fn det_one_plus_elimination(&self, trunc: u32) -> Result<TSeries<R>> {
        let a = self.series_matrix(trunc);
        let n = self.n;
        let mut m: Vec<Vec<TSeries<R>>> = a.rows().map(|r| r.to_vec()).collect();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].add(&row[i].one_like());
        }
        let mut det = TSeries::one(&self.one, trunc, self.parity());
        for k in 0..n {
            let piv_inv = m[k][k]
                .try_inverse()
                .ok_or_else(|| AlgebraError::Inconsistent("pivot is not a unit".into()))?;
            det = det.mul(&m[k][k]);
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom {
                if row[k].is_zero() {
                    continue;
                }
                let f = row[k].mul(&piv_inv);
                for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        Ok(det)
    }

    /// `Pf(A)`; every coefficient matrix must be skew-symmetric.
    pub fn pfaffian(&self, trunc: u32) -> Result<TSeries<R>> {
        let a = self.series_matrix(trunc).mark_skew().map_err(|_| {
            AlgebraError::Precondition("Pfaffian of a pencil needs skew coefficient matrices".into())
        })?;
        a.pf()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactScalar, FieldKind};

    fn q(n: i64) -> ExactScalar {
        ExactScalar::rational(n, 1)
    }

    fn mat(one: &ExactScalar, rows: &[&[i64]]) -> RingMat<ExactScalar> {
        let f = one.field();
        let rows = rows.iter().map(|r| r.iter().map(|&v| f.from_int(v)).collect()).collect();
        RingMat::from_rows(rows, one).unwrap()
    }

    fn w(e: &[u16]) -> WeightIndex {
        WeightIndex::new(e).unwrap()
    }

    fn sample(one: &ExactScalar) -> Pencil<ExactScalar> {
        Pencil::new(
            3,
            one,
            vec![
                (w(&[2]), mat(one, &[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]])),
                (w(&[4]), mat(one, &[&[0, 1, 1], &[2, 0, -1], &[1, 1, 1]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn commuting_traces_match_products() {
        let one = q(1);
        let x = mat(&one, &[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]]);
        let x2 = x.mul(&x).unwrap();
        let p = Pencil::new(3, &one, vec![(w(&[2]), x.clone()), (w(&[4]), x2), (w(&[1, 1]), x.scalar_mul(&q(-2)))]).unwrap();
        assert!(p.coefficients_commute());
        assert_eq!(p.power_traces_commuting(5), p.power_traces_by_products(5));
        assert!(!sample(&one).coefficients_commute());
    }

    #[test]
    fn newton_matches_elimination() {
        let p = sample(&q(1));
        for trunc in 0..5 {
            assert_eq!(
                p.det_one_plus(trunc).unwrap(),
                p.det_one_plus_elimination(trunc).unwrap()
            );
        }
    }

    #[test]
    fn small_characteristic_falls_back() {
        let one = FieldKind::prime(3).unwrap().one();
        let p = sample(&one);
        assert!(p.elementary(4).is_err());
        let d = p.det_one_plus(4).unwrap();
        assert_eq!(d, p.det_one_plus_elimination(4).unwrap());
    }

    #[test]
    fn evaluation_matches_scalar_determinant() {
        let one = q(1);
        let p = sample(&one);
        let d = p.det_one_plus(3).unwrap();
        // at T(2) = 1, T(4) = 0 the truncation at degree 3 is exact
        let point = [(w(&[2]), q(1))].into();
        let direct = mat(&one, &[&[2, 2, 0], &[0, 0, 3], &[4, 0, 3]]).det();
        assert_eq!(d.eval(&point).unwrap(), direct);
    }

    #[test]
    fn shifted_determinant_at_one() {
        let p = sample(&q(1));
        assert_eq!(p.det_shifted(&q(1), 4).unwrap(), p.det_one_plus(4).unwrap());
        let s2 = p.det_shifted(&q(2), 3).unwrap();
        assert_eq!(s2.constant_term(), q(8));
    }

    #[test]
    fn pencil_pfaffian() {
        let one = q(1);
        let a = RingMat::skew_from_upper(2, &[q(3)], &one).unwrap();
        let b = RingMat::skew_from_upper(2, &[q(-1)], &one).unwrap();
        let p = Pencil::new(2, &one, vec![(w(&[1]), a), (w(&[3]), b)]).unwrap();
        let pf = p.pfaffian(2).unwrap();
        assert_eq!(pf.coefficient(&TMonomial::var(w(&[1]))), q(3));
        assert_eq!(pf.coefficient(&TMonomial::var(w(&[3]))), q(-1));
        assert_eq!(pf.num_terms(), 2);
        assert!(sample(&one).pfaffian(2).is_err());
    }
}
