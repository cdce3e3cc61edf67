//! Dense square matrices over a commutative ring: determinants, Pfaffians,
//! principal minors and the determinant of a block matrix with commuting
//! blocks.

use std::collections::HashMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::ring::Ring;

/// A square matrix stored row-major, with an optional checked skew flag.
#[derive(Clone, Debug)]
pub struct RingMat<R> {
    n: usize,
    entries: Vec<R>,
    skew: bool,
    one: R,
}

impl<R: Ring> PartialEq for RingMat<R> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<R: Ring> RingMat<R> {
    pub fn from_rows(rows: Vec<Vec<R>>, one: &R) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Dimension(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(RingMat {
            n,
            entries,
            skew: false,
            one: one.one_like(),
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(n: usize, one: &R, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RingMat {
            n,
            entries,
            skew: false,
            one: one.one_like(),
        }
    }

    pub fn zero(n: usize, one: &R) -> Self {
        let z = one.zero_like();
        RingMat::from_fn(n, one, |_, _| z.clone())
    }

    pub fn identity(n: usize, one: &R) -> Self {
        let (z, o) = (one.zero_like(), one.one_like());
        RingMat::from_fn(n, one, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn diagonal(diag: &[R], one: &R) -> Self {
        let z = one.zero_like();
        RingMat::from_fn(diag.len(), one, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                z.clone()
            }
        })
    }

    /// Builds a skew-symmetric matrix from its strict upper triangle,
    /// given row by row: `(0,1), (0,2), ..., (1,2), ...`.
    pub fn skew_from_upper(n: usize, upper: &[R], one: &R) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(AlgebraError::Dimension(format!(
                "{} upper entries for size {n}",
                upper.len()
            )));
        }
        let mut m = RingMat::zero(n, one);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.entries[i * n + j] = upper[k].clone();
                m.entries[j * n + i] = upper[k].neg();
                k += 1;
            }
        }
        m.skew = true;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring_one(&self) -> &R {
        &self.one
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    /// Overwrites an entry. Clears the skew flag; call [`RingMat::mark_skew`]
    /// again if needed.
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.n + j] = v;
        self.skew = false;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn satisfies_skew(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            self.get(i, i).is_zero()
                && (i + 1..n).all(|j| self.get(i, j).add(self.get(j, i)).is_zero())
        })
    }

    /// Sets the skew flag after checking `M(i,j) = −M(j,i)` and `M(i,i) = 0`.
    pub fn mark_skew(mut self) -> Result<Self> {
        if !self.satisfies_skew() {
            return Err(AlgebraError::Precondition(
                "matrix is not skew-symmetric".into(),
            ));
        }
        self.skew = true;
        Ok(self)
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, one: &S, f: F) -> RingMat<S> {
        RingMat {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
            skew: self.skew,
            one: one.one_like(),
        }
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(AlgebraError::Dimension(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(RingMat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
            skew: self.skew && other.skew,
            one: self.one.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingMat {
            n: self.n,
            entries: self.entries.iter().map(Ring::neg).collect(),
            skew: self.skew,
            one: self.one.clone(),
        }
    }

    pub fn scalar_mul(&self, c: &R) -> Self {
        RingMat {
            n: self.n,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
            skew: self.skew,
            one: self.one.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.one.zero_like();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(RingMat {
            n,
            entries,
            skew: false,
            one: self.one.clone(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RingMat::identity(self.n, &self.one);
        for _ in 0..e {
            acc = acc.mul(self).expect("same size");
        }
        acc
    }

    /// Transposition keeps skew matrices skew (`Mᵗ = −M`).
    pub fn transpose(&self) -> Self {
        let mut t = RingMat::from_fn(self.n, &self.one, |i, j| self.get(j, i).clone());
        t.skew = self.skew;
        t
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(self.one.zero_like(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Deletes the rows and columns in `indices` (a set; repeats are
    /// ignored). The skew flag is preserved.
    pub fn minor_delete(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(AlgebraError::Dimension(format!(
                "index {bad} out of range for size {}",
                self.n
            )));
        }
        let keep: Vec<usize> = (0..self.n).filter(|i| !indices.contains(i)).collect();
        let mut m = RingMat::from_fn(keep.len(), &self.one, |i, j| {
            self.get(keep[i], keep[j]).clone()
        });
        m.skew = self.skew;
        Ok(m)
    }

    /// The principal submatrix on the given rows/columns, in that order.
    pub fn principal(&self, keep: &[usize]) -> Self {
        let mut m = RingMat::from_fn(keep.len(), &self.one, |i, j| {
            self.get(keep[i], keep[j]).clone()
        });
        m.skew = self.skew;
        m
    }

    /// Fraction-free elimination for integral domains, cofactor expansion
    /// otherwise.
    pub fn det(&self) -> R {
        if self.one.is_integral_domain() {
            self.det_bareiss()
        } else {
            self.det_cofactor()
        }
    }

    /// Bareiss elimination with row pivoting. Every division is exact in an
    /// integral domain.
    pub fn det_bareiss(&self) -> R {
        let n = self.n;
        if n == 0 {
            return self.one.clone();
        }
        let mut a: Vec<Vec<R>> = self.rows().map(|r| r.to_vec()).collect();
        let mut prev = self.one.clone();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return self.one.zero_like();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .try_div(&prev)
                        .expect("fraction-free step divides exactly in a domain");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }

    /// Laplace expansion along rows, memoized on the set of used columns.
    /// Division-free, so valid over any commutative ring.
    pub fn det_cofactor(&self) -> R {
        let n = self.n;
        assert!(n < 64, "cofactor expansion limited to sizes below 64");
        let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let mut memo: HashMap<u64, R> = HashMap::new();
        self.cofactor_rec(0, full, &mut memo)
    }

    fn cofactor_rec(&self, used: u64, full: u64, memo: &mut HashMap<u64, R>) -> R {
        if used == full {
            return self.one.clone();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let row = used.count_ones() as usize;
        let mut acc = self.one.zero_like();
        let mut free_before = 0;
        for j in 0..self.n {
            if used & (1 << j) != 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let sub = self.cofactor_rec(used | (1 << j), full, memo);
                let term = a.mul(&sub);
                acc = if free_before % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    fn require_skew(&self) -> Result<()> {
        if self.skew {
            Ok(())
        } else {
            Err(AlgebraError::Precondition(
                "Pfaffian needs a matrix flagged skew-symmetric".into(),
            ))
        }
    }

    /// Pfaffian by expansion along the last column,
    /// `Pf A = Σ_i (−1)^(i+1) a_{i,2m} Pf A(î, 2m̂)`, memoized on index
    /// subsets. Odd sizes give 0.
    pub fn pf(&self) -> Result<R> {
        self.require_skew()?;
        let n = self.n;
        if n % 2 == 1 {
            return Ok(self.one.zero_like());
        }
        assert!(n < 64, "Pfaffian limited to sizes below 64");
        let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        Ok(self.pf_rec(full, &mut memo))
    }

    fn pf_rec(&self, set: u64, memo: &mut HashMap<u64, R>) -> R {
        if set == 0 {
            return self.one.clone();
        }
        if let Some(v) = memo.get(&set) {
            return v.clone();
        }
        let last = 63 - set.leading_zeros() as usize;
        let rest = set & !(1 << last);
        let mut acc = self.one.zero_like();
        let mut pos = 0;
        for i in 0..last {
            if rest & (1 << i) == 0 {
                continue;
            }
            pos += 1;
            let a = self.get(i, last);
            if a.is_zero() {
                continue;
            }
            let term = a.mul(&self.pf_rec(rest & !(1 << i), memo));
            acc = if pos % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        memo.insert(set, acc.clone());
        acc
    }

    /// Pfaffian as a signed sum over all perfect matchings. Exponential;
    /// meant as an independent check of [`RingMat::pf`].
    pub fn pf_matchings(&self) -> Result<R> {
        self.require_skew()?;
        if self.n % 2 == 1 {
            return Ok(self.one.zero_like());
        }
        let mut total = self.one.zero_like();
        let mut pairs = Vec::new();
        let remaining: Vec<usize> = (0..self.n).collect();
        self.matchings(&remaining, &mut pairs, &mut total);
        Ok(total)
    }

    fn matchings(&self, remaining: &[usize], pairs: &mut Vec<(usize, usize)>, total: &mut R) {
        let Some((&first, rest)) = remaining.split_first() else {
            let word: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            let inversions = (0..word.len())
                .flat_map(|i| (i + 1..word.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| word[i] > word[j])
                .count();
            let prod = pairs
                .iter()
                .fold(self.one.clone(), |acc, &(a, b)| acc.mul(self.get(a, b)));
            *total = if inversions % 2 == 0 {
                total.add(&prod)
            } else {
                total.sub(&prod)
            };
            return;
        };
        for (k, &partner) in rest.iter().enumerate() {
            let next: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &v)| v)
                .collect();
            pairs.push((first, partner));
            self.matchings(&next, pairs, total);
            pairs.pop();
        }
    }

    /// Inverse by Gauss–Jordan elimination; needs every nonzero pivot to be
    /// a unit (true over fields).
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a: Vec<Vec<R>> = self.rows().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<R>> = RingMat::identity(n, &self.one)
            .rows()
            .map(|r| r.to_vec())
            .collect();
        for k in 0..n {
            let (p, piv_inv) = (k..n)
                .find_map(|r| a[r][k].try_inv().map(|v| (r, v)))
                .ok_or(AlgebraError::Singular)?;
            a.swap(p, k);
            inv.swap(p, k);
            for j in 0..n {
                a[k][j] = a[k][j].mul(&piv_inv);
                inv[k][j] = inv[k][j].mul(&piv_inv);
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
                }
            }
        }
        RingMat::from_rows(inv, &self.one)
    }

    /// Assembles a `k×k` array of `l×l` blocks into one `kl×kl` matrix.
    pub fn assemble(blocks: &[Vec<RingMat<R>>]) -> Result<Self> {
        let k = blocks.len();
        let first = blocks
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| AlgebraError::Dimension("empty block array".into()))?;
        let l = first.n;
        for row in blocks {
            if row.len() != k || row.iter().any(|b| b.n != l) {
                return Err(AlgebraError::Dimension("ragged block array".into()));
            }
        }
        Ok(RingMat::from_fn(k * l, &first.one, |i, j| {
            blocks[i / l][j / l].get(i % l, j % l).clone()
        }))
    }
}

/// `det` of a block matrix whose blocks commute pairwise, computed as
/// `det(Σ_σ sgn σ · X_{1σ(1)} ⋯ X_{kσ(k)})`. With `check`, commutation of
/// every pair is verified first.
pub fn block_det_commuting<R: Ring>(blocks: &[Vec<RingMat<R>>], check: bool) -> Result<R> {
    let k = blocks.len();
    let first = blocks
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| AlgebraError::Dimension("empty block array".into()))?;
    let (l, one) = (first.n(), first.ring_one().clone());
    for row in blocks {
        if row.len() != k || row.iter().any(|b| b.n() != l) {
            return Err(AlgebraError::Dimension("ragged block array".into()));
        }
    }
    if check {
        let flat: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        for (a, &(i1, j1)) in flat.iter().enumerate() {
            for &(i2, j2) in &flat[a + 1..] {
                if !blocks[i1][j1].commutes_with(&blocks[i2][j2])? {
                    return Err(AlgebraError::Precondition(format!(
                        "blocks ({i1},{j1}) and ({i2},{j2}) do not commute"
                    )));
                }
            }
        }
    }
    let mut sum = RingMat::zero(l, &one);
    for (perm, sign) in permutations(k) {
        let mut prod = RingMat::identity(l, &one);
        for (row, &col) in perm.iter().enumerate() {
            prod = prod.mul(&blocks[row][col])?;
        }
        sum = if sign { sum.add(&prod)? } else { sum.sub(&prod)? };
    }
    Ok(sum.det())
}

/// All permutations of `0..k` with their parity (`true` = even).
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn rec(pos: usize, cur: &mut Vec<usize>, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if pos == cur.len() {
            out.push((cur.clone(), even));
            return;
        }
        for i in pos..cur.len() {
            cur.swap(pos, i);
            rec(pos + 1, cur, if i == pos { even } else { !even }, out);
            cur.swap(pos, i);
        }
    }
    rec(0, &mut cur, true, &mut out);
    out
}

impl<R: Ring> fmt::Display for RingMat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MultiPoly, VarTable};
    use crate::scalar::{ExactScalar, FieldKind};

    fn q(n: i64) -> ExactScalar {
        ExactScalar::rational(n, 1)
    }

    fn qmat(rows: &[&[i64]]) -> RingMat<ExactScalar> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        RingMat::from_rows(rows, &q(1)).unwrap()
    }

    fn generic_skew(n: usize) -> RingMat<MultiPoly> {
        let names: Vec<String> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| format!("t{i}{j}")))
            .collect();
        let vars = VarTable::new(names.clone()).unwrap();
        let upper: Vec<MultiPoly> = names
            .iter()
            .map(|v| MultiPoly::var(&vars, FieldKind::Rational, v).unwrap())
            .collect();
        RingMat::skew_from_upper(n, &upper, &upper[0].one_like()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(RingMat::identity(4, &q(1)).det(), q(1));
        let vars = VarTable::new(["a", "b", "c", "d"]).unwrap();
        let v = |s| MultiPoly::var(&vars, FieldKind::Rational, s).unwrap();
        let m = RingMat::from_rows(vec![vec![v("a"), v("b")], vec![v("c"), v("d")]], &v("a").one_like())
            .unwrap();
        assert_eq!(m.det().to_string(), "a*d - b*c");
        assert!(generic_skew(5).det().is_zero());
        assert_eq!(qmat(&[&[0, 1], &[1, 0]]).det(), q(-1));
    }

    #[test]
    fn pfaffians_of_generic_matrices() {
        let a = generic_skew(2);
        assert_eq!(a.pf().unwrap().to_string(), "t12");
        let b = generic_skew(4);
        assert_eq!(b.pf().unwrap().to_string(), "t12*t34 - t13*t24 + t14*t23");
        assert_eq!(b.pf_matchings().unwrap(), b.pf().unwrap());
        let t = generic_skew(5);
        let h4 = t.minor_delete(&[3]).unwrap().pf().unwrap();
        assert_eq!(h4.to_string(), "t12*t35 - t13*t25 + t15*t23");
        assert!(t.pf().unwrap().is_zero());
        assert!(qmat(&[&[1]]).pf().is_err());
    }

    #[test]
    fn pfaffian_squares_to_determinant_generically() {
        let t = generic_skew(6);
        let pf = t.pf().unwrap();
        assert_eq!(pf.mul(&pf), t.det());
        assert_eq!(t.pf_matchings().unwrap(), pf);
    }

    #[test]
    fn deletion_is_a_set_operation() {
        let i3 = RingMat::identity(3, &q(1));
        assert_eq!(i3.minor_delete(&[0]).unwrap(), RingMat::identity(2, &q(1)));
        let t = generic_skew(5);
        assert_eq!(
            t.minor_delete(&[0, 2, 4]).unwrap(),
            t.minor_delete(&[4, 0, 2, 0]).unwrap()
        );
        assert!(t.minor_delete(&[1]).unwrap().is_skew());
        assert!(t.minor_delete(&[5]).is_err());
    }

    #[test]
    fn commuting_block_determinants() {
        let a = qmat(&[&[1, 2], &[0, 1]]);
        let b = qmat(&[&[3, 1], &[0, 3]]);
        let c = qmat(&[&[2, 0], &[0, 2]]);
        let d = qmat(&[&[5, -1], &[0, 5]]);
        let blocks = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        let direct = RingMat::assemble(&blocks).unwrap().det();
        let via = block_det_commuting(&blocks, true).unwrap();
        assert_eq!(via, direct);
        assert_eq!(via, a.mul(&d).unwrap().sub(&b.mul(&c).unwrap()).unwrap().det());

        let e = qmat(&[&[0, 1], &[1, 0]]);
        let bad = vec![vec![a.clone(), e], vec![c, d]];
        match block_det_commuting(&bad, true) {
            Err(AlgebraError::Precondition(msg)) => assert!(msg.contains("(0,0) and (0,1)")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diagonal_blocks_reduce_to_scalar_determinants() {
        let vals = [[2, 1, 0], [1, 3, 1], [0, 1, 4]];
        let vals2 = [[1, -1, 2], [0, 5, 1], [3, 0, 1]];
        let blocks: Vec<Vec<_>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| RingMat::diagonal(&[q(vals[i][j]), q(vals2[i][j])], &q(1)))
                    .collect()
            })
            .collect();
        let s1 = qmat(&[&vals[0], &vals[1], &vals[2]]).det();
        let s2 = qmat(&[&vals2[0], &vals2[1], &vals2[2]]).det();
        assert_eq!(block_det_commuting(&blocks, true).unwrap(), s1.mul(&s2));
    }

    #[test]
    fn trace_transpose_inverse() {
        assert_eq!(RingMat::identity(4, &q(1)).trace(), q(4));
        let a = qmat(&[&[1, 2, 0], &[3, -1, 4], &[0, 2, 2]]);
        let b = qmat(&[&[0, 1, 1], &[2, 2, -3], &[1, 0, 5]]);
        assert_eq!(
            a.mul(&b).unwrap().transpose(),
            b.transpose().mul(&a.transpose()).unwrap()
        );
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RingMat::identity(3, &q(1)));
        assert_eq!(qmat(&[&[1, 2], &[2, 4]]).inverse(), Err(AlgebraError::Singular));
    }

    #[test]
    fn sk_block_squares_to_scalar() {
        let vars = VarTable::new(["x"]).unwrap();
        let f = FieldKind::Gaussian;
        let x = MultiPoly::var(&vars, f, "x").unwrap();
        let ix = x.mul(&x.imaginary_unit_like().unwrap());
        let y = RingMat::skew_from_upper(2, &[ix], &x.one_like()).unwrap();
        let sq = y.mul(&y).unwrap();
        assert_eq!(sq, RingMat::diagonal(&[x.mul(&x), x.mul(&x)], &x.one_like()));
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|(_, even)| *even).count(), 3);
        for (p, even) in perms {
            let inv = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            assert_eq!(inv % 2 == 0, even);
        }
    }
}
