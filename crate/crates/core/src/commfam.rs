//! Concrete tuples of pairwise commuting skew-symmetric matrices: conjugated
//! Cartan elements and nilpotent tuples built from isotropic vectors.

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::matrix::RingMat;
use crate::ring::Ring;
use crate::scalar::{ExactScalar, FieldKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ConjugatedCartan,
    NilpotentIsotropic,
    Handcrafted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ConjugatedCartan => "conjugated-cartan",
            Provenance::NilpotentIsotropic => "nilpotent-isotropic",
            Provenance::Handcrafted => "handcrafted",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CommutingTuple<R> {
    mats: Vec<RingMat<R>>,
    provenance: Provenance,
    conjugator: Option<RingMat<R>>,
}

impl<R: Ring> CommutingTuple<R> {
    /// Checks skew-symmetry and pairwise commutation.
    pub fn new(
        mats: Vec<RingMat<R>>,
        provenance: Provenance,
        conjugator: Option<RingMat<R>>,
    ) -> Result<Self> {
        let n = mats
            .first()
            .map(RingMat::n)
            .ok_or_else(|| AlgebraError::Dimension("empty tuple".into()))?;
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                if m.n() != n {
                    return Err(AlgebraError::Dimension(format!("member {} has size {}", k + 1, m.n())));
                }
                m.mark_skew().map_err(|_| {
                    AlgebraError::Precondition(format!("member {} is not skew-symmetric", k + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let t = CommutingTuple {
            mats,
            provenance,
            conjugator,
        };
        if let Some((i, j)) = t.first_noncommuting_pair() {
            return Err(AlgebraError::Precondition(format!(
                "members {} and {} do not commute",
                i + 1,
                j + 1
            )));
        }
        Ok(t)
    }

    pub fn mats(&self) -> &[RingMat<R>] {
        &self.mats
    }

    pub fn n(&self) -> usize {
        self.mats[0].n()
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn conjugator(&self) -> Option<&RingMat<R>> {
        self.conjugator.as_ref()
    }

    fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.mats.len() {
            for j in i + 1..self.mats.len() {
                if !self.mats[i].commutes_with(&self.mats[j]).unwrap_or(false) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `Q X_k Qᵗ` for every member; the result is re-checked.
    pub fn conjugate(&self, q: &RingMat<R>) -> Result<Self> {
        let qt = q.transpose();
        let mats = self
            .mats
            .iter()
            .map(|x| q.mul(x)?.mul(&qt))
            .collect::<Result<Vec<_>>>()?;
        CommutingTuple::new(mats, self.provenance, Some(q.clone()))
    }
}

/// True iff all pairwise commutators vanish.
pub fn verify_commuting<R: Ring>(mats: &[RingMat<R>]) -> bool {
    (0..mats.len()).all(|i| {
        (i + 1..mats.len()).all(|j| mats[i].commutes_with(&mats[j]).unwrap_or(false))
    })
}

/// Cayley transform `(I − A)(I + A)^{-1}`, orthogonal when `A` is skew.
pub fn cayley_transform<R: Ring>(a: &RingMat<R>) -> Result<RingMat<R>> {
    let id = RingMat::identity(a.n(), a.ring_one());
    id.sub(a)?.mul(&id.add(a)?.inverse()?)
}

/// The permutation matrix exchanging the first two coordinates
/// (orthogonal, determinant −1).
pub fn coordinate_swap<R: Ring>(n: usize, one: &R) -> RingMat<R> {
    let (z, o) = (one.zero_like(), one.one_like());
    RingMat::from_fn(n, one, |i, j| {
        let target = match i {
            0 => 1,
            1 => 0,
            _ => i,
        };
        if j == target {
            o.clone()
        } else {
            z.clone()
        }
    })
}

pub fn is_orthogonal<R: Ring>(q: &RingMat<R>) -> bool {
    q.mul(&q.transpose())
        .map(|p| p == RingMat::identity(q.n(), q.ring_one()))
        .unwrap_or(false)
}

/// Block-diagonal `[[0, a_p], [−a_p, 0]]` (zero padding for odd `n`).
pub fn real_cartan_element<R: Ring>(n: usize, a: &[R], one: &R) -> Result<RingMat<R>> {
    if a.len() != n / 2 {
        return Err(AlgebraError::Dimension(format!(
            "{} parameters for size {n}",
            a.len()
        )));
    }
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for r in 0..n {
        for c in r + 1..n {
            if r % 2 == 0 && c == r + 1 {
                upper.push(a[r / 2].clone());
            } else {
                upper.push(one.zero_like());
            }
        }
    }
    RingMat::skew_from_upper(n, &upper, one)
}

/// `(Q D_1 Qᵗ, …, Q D_d Qᵗ)` with `Q` the Cayley transform of the skew
/// matrix `a` and `D_k` real-form Cartan elements with parameters
/// `params[k]`.
pub fn conjugated_cartan_tuple<R: Ring>(
    n: usize,
    params: &[Vec<R>],
    a: &RingMat<R>,
) -> Result<CommutingTuple<R>> {
    if a.n() != n || !a.satisfies_skew() {
        return Err(AlgebraError::Precondition(format!(
            "conjugation seed must be a skew {n}×{n} matrix"
        )));
    }
    let one = a.ring_one().clone();
    let q = cayley_transform(a)?;
    let diag = params
        .iter()
        .map(|p| real_cartan_element(n, p, &one))
        .collect::<Result<Vec<_>>>()?;
    let base = CommutingTuple::new(diag, Provenance::ConjugatedCartan, None)?;
    base.conjugate(&q)
}

fn dot<R: Ring>(a: &[R], b: &[R]) -> R {
    a.iter()
        .zip(b)
        .fold(a[0].zero_like(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// `X_j = u v_jᵗ − v_j uᵗ` for isotropic, mutually orthogonal `u, v_j`.
pub fn nilpotent_isotropic_tuple<R: Ring>(u: &[R], vs: &[Vec<R>]) -> Result<CommutingTuple<R>> {
    let n = u.len();
    if n == 0 || vs.is_empty() || vs.iter().any(|v| v.len() != n) {
        return Err(AlgebraError::Dimension("vectors must share a positive length".into()));
    }
    let one = u[0].one_like();
    let named: Vec<(String, &[R])> = std::iter::once(("u".to_string(), u))
        .chain(vs.iter().enumerate().map(|(j, v)| (format!("v{}", j + 1), v.as_slice())))
        .collect();
    for (a, (na, va)) in named.iter().enumerate() {
        for (nb, vb) in &named[a..] {
            let p = dot(va, vb);
            if !p.is_zero() {
                return Err(AlgebraError::Precondition(format!(
                    "inner product {na}·{nb} = {p} is not zero"
                )));
            }
        }
    }
    let mats = vs
        .iter()
        .map(|v| RingMat::from_fn(n, &one, |i, j| u[i].mul(&v[j]).sub(&v[i].mul(&u[j]))))
        .collect();
    let t = CommutingTuple::new(mats, Provenance::NilpotentIsotropic, None)?;
    for (j, x) in t.mats().iter().enumerate() {
        for (k, y) in t.mats().iter().enumerate() {
            if !x.mul(y)?.is_zero() {
                return Err(AlgebraError::Inconsistent(format!(
                    "X{} X{} is not zero",
                    j + 1,
                    k + 1
                )));
            }
        }
    }
    Ok(t)
}

/// Random integer-valued skew matrix with entries in `[-bound, bound]`.
pub fn random_skew<G: rand::Rng>(n: usize, bound: i64, field: FieldKind, rng: &mut G) -> RingMat<ExactScalar> {
    let upper: Vec<ExactScalar> = (0..n * n.saturating_sub(1) / 2)
        .map(|_| field.from_int(rng.gen_range(-bound..=bound)))
        .collect();
    RingMat::skew_from_upper(n, &upper, &field.one()).expect("sizes agree")
}

/// A conjugated Cartan tuple with random parameters in `[-5, 5]` and a
/// random conjugating Cayley transform (seed entries in `[-3, 3]`);
/// seeds with `I + A` singular are redrawn.
pub fn random_conjugated_cartan<G: rand::Rng>(
    n: usize,
    d: usize,
    field: FieldKind,
    rng: &mut G,
) -> Result<CommutingTuple<ExactScalar>> {
    let params: Vec<Vec<ExactScalar>> = (0..d)
        .map(|_| (0..n / 2).map(|_| field.from_int(rng.gen_range(-5..=5))).collect())
        .collect();
    for _ in 0..100 {
        let a = random_skew(n, 3, field, rng);
        match conjugated_cartan_tuple(n, &params, &a) {
            Err(AlgebraError::Singular) => continue,
            other => return other,
        }
    }
    Err(AlgebraError::Precondition(format!(
        "no invertible Cayley seed found over {field}"
    )))
}

/// Random nilpotent tuple from integer combinations of the isotropic
/// vectors `e_{2k-1} + i·e_{2k}`. Needs `n ≥ 4` and a square root of −1.
pub fn random_nilpotent_isotropic<G: rand::Rng>(
    n: usize,
    d: usize,
    field: FieldKind,
    rng: &mut G,
) -> Result<CommutingTuple<ExactScalar>> {
    let i = field.imaginary_unit().ok_or_else(|| {
        AlgebraError::Precondition(format!("{field} has no square root of -1"))
    })?;
    if n < 4 {
        return Err(AlgebraError::Precondition(format!(
            "isotropic tuples need n >= 4, got {n}"
        )));
    }
    let m = n / 2;
    let combo = |rng: &mut G| -> Vec<ExactScalar> {
        let mut v = vec![field.zero(); n];
        for k in 0..m {
            let c = field.from_int(rng.gen_range(-3..=3));
            v[2 * k] = c.clone();
            v[2 * k + 1] = c.mul(&i);
        }
        v
    };
    let u = combo(rng);
    let vs: Vec<Vec<ExactScalar>> = (0..d).map(|_| combo(rng)).collect();
    nilpotent_isotropic_tuple(&u, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::rational(n, 1)
    }

    fn gi(re: i64, im: i64) -> ExactScalar {
        let f = FieldKind::Gaussian;
        f.from_int(re).add(&f.from_int(im).mul(&f.imaginary_unit().unwrap()))
    }

    #[test]
    fn trivial_conjugation_keeps_cartan_elements() {
        let a = RingMat::zero(4, &q(1));
        let t = conjugated_cartan_tuple(4, &[vec![q(1), q(2)], vec![q(-3), q(0)]], &a).unwrap();
        assert_eq!(t.mats()[0], real_cartan_element(4, &[q(1), q(2)], &q(1)).unwrap());
        assert_eq!(t.conjugator(), Some(&RingMat::identity(4, &q(1))));
    }

    #[test]
    fn two_by_two_cayley_transform() {
        let a = RingMat::skew_from_upper(2, &[q(1)], &q(1)).unwrap();
        let c = cayley_transform(&a).unwrap();
        assert_eq!(c, RingMat::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]], &q(1)).unwrap());
        assert!(is_orthogonal(&c));
    }

    #[test]
    fn random_tuples_commute_and_are_orthogonally_conjugated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=6 {
            let t = random_conjugated_cartan(n, 3, FieldKind::Rational, &mut rng).unwrap();
            assert!(verify_commuting(t.mats()));
            assert!(is_orthogonal(t.conjugator().unwrap()));
        }
        let s = coordinate_swap(3, &q(1));
        assert!(is_orthogonal(&s));
        assert_eq!(s.det(), q(-1));
    }

    #[test]
    fn isotropic_examples() {
        let u = vec![gi(1, 0), gi(0, 1), gi(0, 0), gi(0, 0)];
        let v1 = vec![gi(0, 0), gi(0, 0), gi(1, 0), gi(0, 1)];
        let v2 = vec![gi(0, 0), gi(0, 0), gi(0, 1), gi(-1, 0)];
        let t = nilpotent_isotropic_tuple(&u, &[v1.clone(), v2]).unwrap();
        let x = &t.mats()[0];
        assert!(x.mul(x).unwrap().is_zero());
        assert!(verify_commuting(t.mats()));
        let z = nilpotent_isotropic_tuple(&u, std::slice::from_ref(&u)).unwrap();
        assert!(z.mats()[0].is_zero());

        let bad = vec![gi(1, 0), gi(0, 0), gi(0, 0), gi(0, 0)];
        match nilpotent_isotropic_tuple(&bad, &[v1]) {
            Err(AlgebraError::Precondition(msg)) => assert!(msg.contains("u·u")),
            other => panic!("unexpected {other:?}"),
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = random_nilpotent_isotropic(5, 2, FieldKind::Gaussian, &mut rng).unwrap();
        assert_eq!(t.provenance(), Provenance::NilpotentIsotropic);
    }

    #[test]
    fn noncommuting_pair_in_so3() {
        let e = |i: usize, j: usize| {
            let mut upper = vec![q(0); 3];
            upper[[(0, 1), (0, 2), (1, 2)].iter().position(|&p| p == (i, j)).unwrap()] = q(1);
            RingMat::skew_from_upper(3, &upper, &q(1)).unwrap()
        };
        assert!(!verify_commuting(&[e(0, 1), e(0, 2)]));
        assert!(verify_commuting(&[e(0, 1)]));
        assert!(CommutingTuple::new(vec![e(0, 1), e(0, 2)], Provenance::Handcrafted, None).is_err());
    }
}
