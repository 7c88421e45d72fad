//! Integral lattices with a symmetric bilinear form.
//!
//! An [`IntLattice`] is a free Z-module of finite rank with an integer Gram
//! matrix. Operations: exact pairings (also of rational vectors), the
//! discriminant group D(L) = L^dual / L via Smith normal form, divisibility
//! div(a) with the dual class a^dual = (1/div)(a,.) in D(L), saturation of a
//! sublattice, and orthogonal complements.

use crate::mat::{hermite_normal_form, integer_kernel, smith_normal_form, Mat};
use crate::scalar::{LatticeInt, Rational};
use num_traits::{Zero};
use thiserror::Error;

/// Vector of integer coordinates in a lattice basis.
pub type LVec<I> = Vec<I>;
/// Vector of rational coordinates (element of L tensor Q).
pub type QVec<I> = Vec<Rational<I>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix must be symmetric")]
    NotSymmetric,
    #[error("gram matrix must be square of rank >= 1")]
    BadShape,
    #[error("lattice is degenerate (zero determinant)")]
    Degenerate,
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("vector does not lie in the sublattice or span")]
    OutsideSpan,
    #[error("vectors live in different lattices")]
    LatticeMismatch,
    #[error("sublattice is not hyperbolic (signature (1,1))")]
    NotHyperbolic,
    #[error("pointed vector must be primitive with positive even square")]
    BadPointedVector,
    #[error("sublattice is not of plane type")]
    NotPType,
    #[error("pointed vector is not minimal in the sublattice")]
    NotMinimal,
    #[error("vector must be primitive")]
    NonPrimitive,
    #[error("class lies outside the effective cone")]
    OutsideCone,
    #[error("binary form must be indefinite (positive discriminant)")]
    NotIndefinite,
    #[error("binary form is degenerate (zero discriminant)")]
    DegenerateForm,
    #[error("search box exceeds the configured cell cap")]
    BoxTooLarge,
    #[error("{0}")]
    Other(String),
}

/// Finite-rank free Z-module with an integral symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice<I> {
    gram: Mat<I>,
}

impl<I: LatticeInt> IntLattice<I> {
    /// Nondegenerate lattice from a symmetric Gram matrix.
    pub fn new(gram: Mat<I>) -> Result<Self, LatticeError> {
        let l = Self::new_allow_degenerate(gram)?;
        if l.gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(l)
    }

    /// Degenerate Gram matrices allowed (needed nowhere in the main pipeline).
    pub fn new_allow_degenerate(gram: Mat<I>) -> Result<Self, LatticeError> {
        if gram.rows == 0 || gram.rows != gram.cols {
            return Err(LatticeError::BadShape);
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(IntLattice { gram })
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Result<Self, LatticeError> {
        Self::new(Mat::from_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn gram(&self) -> &Mat<I> {
        &self.gram
    }

    pub fn det(&self) -> I {
        self.gram.det()
    }

    /// (positive, negative, zero) inertia of the form over Q.
    pub fn signature(&self) -> (usize, usize, usize) {
        self.gram.signature()
    }

    fn check_len(&self, v: &[impl Sized]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Integer pairing (a, b) = a^T G b.
    pub fn pair_int(&self, a: &[I], b: &[I]) -> Result<I, LatticeError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let gb = self.gram.mul_vec(b);
        Ok(a.iter()
            .zip(&gb)
            .fold(I::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
    }

    /// Exact rational pairing on L tensor Q.
    pub fn pair(&self, a: &[Rational<I>], b: &[Rational<I>]) -> Result<Rational<I>, LatticeError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let g = Rational::from_integer(self.gram[(i, j)].clone());
                acc = acc + a[i].clone() * g * b[j].clone();
            }
        }
        Ok(acc)
    }

    /// The functional vector (a, b_i) for the basis b_i, i.e. G a.
    pub fn pairing_functional(&self, a: &[I]) -> Result<Vec<I>, LatticeError> {
        self.check_len(a)?;
        Ok(self.gram.mul_vec(a))
    }

    /// Discriminant group D(L) = L^dual / L.
    pub fn discriminant_group(&self) -> Result<DiscGroup<I>, LatticeError> {
        if self.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let snf = smith_normal_form(&self.gram);
        let nontrivial: Vec<usize> = (0..snf.diag.len())
            .filter(|&i| snf.diag[i] > I::one())
            .collect();
        let factors: Vec<I> = nontrivial.iter().map(|&i| snf.diag[i].clone()).collect();
        // generator j of Z/d_j lifts to the functional U^-1 e_j in dual coordinates
        let n = self.rank();
        let lift_basis = Mat::from_rows(
            nontrivial
                .iter()
                .map(|&j| (0..n).map(|i| snf.u_inv[(i, j)].clone()).collect())
                .collect::<Vec<_>>(),
        );
        Ok(DiscGroup {
            factors,
            lift_basis,
            u: snf.u,
            full_diag: snf.diag,
        })
    }

    /// div(a), primitivity of a, and the class of a^dual = (1/div)(a,.) in D(L).
    pub fn divisibility(&self, a: &[I]) -> Result<Divisibility<I>, LatticeError> {
        self.check_len(a)?;
        if a.iter().all(|x| x.is_zero()) {
            return Err(LatticeError::ZeroVector);
        }
        let functional = self.pairing_functional(a)?;
        let div = functional
            .iter()
            .fold(I::zero(), |acc, x| acc.gcd(x));
        debug_assert!(!div.is_zero(), "nondegenerate lattice, nonzero vector");
        let primitive = a.iter().fold(I::zero(), |acc, x| acc.gcd(x)) == I::one();
        let dual: Vec<I> = functional.iter().map(|x| x.div_floor(&div)).collect();
        let group = self.discriminant_group()?;
        let dual_class = group.class_of_functional(&dual)?;
        Ok(Divisibility {
            div,
            primitive,
            dual_class,
        })
    }

    /// Basis of (span_Q(rows) intersect L), saturated. Returns the input rows
    /// unchanged when they already span a saturated sublattice.
    pub fn saturate(&self, span: &[Vec<I>]) -> Result<Vec<Vec<I>>, LatticeError> {
        if span.is_empty() {
            return Ok(Vec::new());
        }
        for v in span {
            self.check_len(v)?;
        }
        let a = Mat::from_rows(span.to_vec());
        let snf = smith_normal_form(&a);
        let rank = snf.rank();
        if rank < span.len() {
            return Err(LatticeError::DependentGenerators);
        }
        let index: I = snf.diag[..rank]
            .iter()
            .fold(I::one(), |acc, d| acc * d.clone());
        if index == I::one() {
            return Ok(span.to_vec());
        }
        // rows of V^-1 with indices < rank span the saturation
        let n = self.rank();
        let rows: Vec<Vec<I>> = (0..rank)
            .map(|i| (0..n).map(|j| snf.v_inv[(i, j)].clone()).collect())
            .collect();
        Ok(hermite_normal_form(&Mat::from_rows(rows)).to_rows())
    }

    /// Saturated basis of {x in L : (x, s) = 0 for all s in span}.
    pub fn orthogonal_complement(&self, span: &[Vec<I>]) -> Result<Vec<Vec<I>>, LatticeError> {
        for v in span {
            self.check_len(v)?;
        }
        if span.is_empty() {
            return Ok(Mat::<I>::identity(self.rank()).to_rows());
        }
        let a = Mat::from_rows(span.to_vec());
        let rank_a = smith_normal_form(&a).rank();
        if rank_a < span.len() {
            return Err(LatticeError::DependentGenerators);
        }
        // x G s^T = 0  <=>  (S G) x = 0
        let sg = a.mul(&self.gram);
        Ok(integer_kernel(&sg).to_rows())
    }

    /// Content gcd of a coordinate vector.
    pub fn content(a: &[I]) -> I {
        a.iter().fold(I::zero(), |acc, x| acc.gcd(x))
    }

    /// True iff the coordinate vector is primitive (content 1).
    pub fn is_primitive(a: &[I]) -> bool {
        Self::content(a) == I::one()
    }
}

/// Discriminant group with invariant factors d_1 | d_2 | ... (each > 1).
#[derive(Clone, Debug)]
pub struct DiscGroup<I> {
    factors: Vec<I>,
    /// Row j lifts generator j to an element of L^dual in dual coordinates.
    lift_basis: Mat<I>,
    u: Mat<I>,
    full_diag: Vec<I>,
}

impl<I: LatticeInt> DiscGroup<I> {
    pub fn invariant_factors(&self) -> &[I] {
        &self.factors
    }

    pub fn lift_basis(&self) -> &Mat<I> {
        &self.lift_basis
    }

    pub fn order(&self) -> I {
        self.factors.iter().fold(I::one(), |acc, d| acc * d.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Class of an element of L^dual given by its functional vector
    /// phi_i = phi(b_i).
    pub fn class_of_functional(&self, phi: &[I]) -> Result<DiscElement<I>, LatticeError> {
        if phi.len() != self.full_diag.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.full_diag.len(),
                got: phi.len(),
            });
        }
        let psi = self.u.mul_vec(phi);
        let residues = self
            .full_diag
            .iter()
            .zip(&psi)
            .filter(|(d, _)| *d > &I::one())
            .map(|(d, x)| x.mod_floor(d))
            .collect();
        Ok(DiscElement { residues })
    }

    /// Class of a rational vector r (coordinates in the lattice basis) that
    /// lies in L^dual, i.e. whose pairings with L are integral.
    pub fn class_of_dual_vector(
        &self,
        lattice: &IntLattice<I>,
        r: &[Rational<I>],
    ) -> Result<DiscElement<I>, LatticeError> {
        let n = lattice.rank();
        if r.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        let mut phi = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Rational::zero();
            for j in 0..n {
                let g = Rational::from_integer(lattice.gram()[(i, j)].clone());
                acc = acc + g * r[j].clone();
            }
            if !acc.denom().is_one() {
                return Err(LatticeError::OutsideSpan);
            }
            phi.push(acc.numer().clone());
        }
        self.class_of_functional(&phi)
    }

    pub fn zero_element(&self) -> DiscElement<I> {
        DiscElement {
            residues: vec![I::zero(); self.factors.len()],
        }
    }

    pub fn negate(&self, e: &DiscElement<I>) -> DiscElement<I> {
        DiscElement {
            residues: self
                .factors
                .iter()
                .zip(&e.residues)
                .map(|(d, r)| (-r.clone()).mod_floor(d))
                .collect(),
        }
    }

    /// Order of an element: lcm of d_i / gcd(r_i, d_i).
    pub fn element_order(&self, e: &DiscElement<I>) -> I {
        self.factors
            .iter()
            .zip(&e.residues)
            .map(|(d, r)| d.clone().div_floor(&d.gcd(r)))
            .fold(I::one(), |acc, k| acc.lcm(&k))
    }
}

/// Element of a discriminant group: one canonical residue per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscElement<I> {
    residues: Vec<I>,
}

impl<I: LatticeInt> DiscElement<I> {
    pub fn residues(&self) -> &[I] {
        &self.residues
    }
}

/// Result of the divisibility computation for a lattice vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility<I> {
    pub div: I,
    pub primitive: bool,
    pub dual_class: DiscElement<I>,
}

/// Convenience: integer coordinates to rational.
pub fn to_qvec<I: LatticeInt>(a: &[I]) -> QVec<I> {
    a.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Rational coordinates back to integer, if all denominators are 1.
pub fn to_lvec<I: LatticeInt>(a: &[Rational<I>]) -> Option<LVec<I>> {
    a.iter()
        .map(|x| x.denom().is_one().then(|| x.numer().clone()))
        .collect()
}

/// a + k*b componentwise.
pub fn vec_add_mul<I: LatticeInt>(a: &[I], k: &I, b: &[I]) -> Vec<I> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + k.clone() * y.clone())
        .collect()
}

pub fn vec_neg<I: LatticeInt>(a: &[I]) -> Vec<I> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_sub<I: LatticeInt>(a: &[I], b: &[I]) -> Vec<I> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_is_zero<I: LatticeInt>(a: &[I]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Lexicographically positive representative: negate if the first nonzero
/// coordinate is negative.
pub fn lex_positive<I: LatticeInt>(a: &[I]) -> Vec<I> {
    match a.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => vec_neg(a),
        _ => a.to_vec(),
    }
}

/// Integer coordinate vector from i64 literals (test and CLI convenience).
pub fn bigvec(v: &[i64]) -> Vec<num_bigint::BigInt> {
    v.iter().map(|&x| num_bigint::BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    use crate::mat::testsupport::XorShift;
    use crate::scalar::{ratio, ratio_of};
    use num_bigint::BigInt;

    fn lat(rows: &[&[i64]]) -> IntLattice<BigInt> {
        IntLattice::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn qv(v: &[(i64, i64)]) -> QVec<BigInt> {
        v.iter()
            .map(|&(n, d)| ratio_of(BigInt::from(n), BigInt::from(d)))
            .collect()
    }

    #[test]
    fn pair_examples() {
        let l = lat(&[&[2, 0], &[0, -2]]);
        // diagonal read-off
        assert_eq!(
            l.pair(&qv(&[(1, 1), (0, 1)]), &qv(&[(1, 1), (0, 1)])).unwrap(),
            ratio(BigInt::from(2))
        );
        // R = h - (3/2) delta has R^2 = -5/2
        let r = qv(&[(1, 1), (-3, 2)]);
        assert_eq!(l.pair(&r, &r).unwrap(), ratio_of(BigInt::from(-5), BigInt::from(2)));
        // d = 11: R2 = 11h - (73/2) delta also has square -5/2
        let l11 = lat(&[&[22, 0], &[0, -2]]);
        let r2 = qv(&[(11, 1), (-73, 2)]);
        assert_eq!(
            l11.pair(&r2, &r2).unwrap(),
            ratio_of(BigInt::from(-5), BigInt::from(2))
        );
    }

    #[test]
    fn pair_dimension_mismatch() {
        let l = lat(&[&[2, 0], &[0, -2]]);
        assert!(matches!(
            l.pair(&qv(&[(1, 1)]), &qv(&[(1, 1), (0, 1)])),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_rejected_unless_flagged() {
        let gram = Mat::from_rows(vec![bigvec(&[1, 1]), bigvec(&[1, 1])]);
        assert!(matches!(
            IntLattice::new(gram.clone()),
            Err(LatticeError::Degenerate)
        ));
        assert!(IntLattice::new_allow_degenerate(gram).is_ok());
        let asym = Mat::from_rows(vec![bigvec(&[1, 2]), bigvec(&[1, 1])]);
        assert!(matches!(
            IntLattice::new(asym),
            Err(LatticeError::NotSymmetric)
        ));
    }

    #[test]
    fn discriminant_group_examples() {
        let g = lat(&[&[2, 0], &[0, -2]]).discriminant_group().unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
        let g = lat(&[&[1]]).discriminant_group().unwrap();
        assert!(g.is_trivial());
        let g = lat(&[&[2, 1], &[1, -2]]).discriminant_group().unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(5)]);
    }

    #[test]
    fn discriminant_order_matches_det_randomized() {
        let mut rng = XorShift(0x9e3779b97f4a7c15);
        let mut tested = 0;
        while tested < 60 {
            let n = 1 + (rng.below(6) as usize);
            let mut rows = vec![vec![BigInt::from(0); n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let x = BigInt::from(rng.small(10));
                    rows[i][j] = x.clone();
                    rows[j][i] = x;
                }
            }
            let gram = Mat::from_rows(rows);
            let det = gram.det();
            if det.is_zero() {
                continue;
            }
            let l = IntLattice::new(gram).unwrap();
            let g = l.discriminant_group().unwrap();
            assert_eq!(g.order(), det.abs(), "disc order != |det|");
            tested += 1;
        }
    }

    #[test]
    fn divisibility_examples() {
        let l = lat(&[&[2, 0], &[0, -2]]);
        // a = 2h - 3delta: pairings (4, 6), div 2, primitive
        let d = l.divisibility(&bigvec(&[2, -3])).unwrap();
        assert_eq!(d.div, BigInt::from(2));
        assert!(d.primitive);
        // a = delta: pairings (0, -2), div 2
        let d = l.divisibility(&bigvec(&[0, 1])).unwrap();
        assert_eq!(d.div, BigInt::from(2));
        assert!(d.primitive);
        // rank 1, a = 5e: div 5, not primitive
        let l1 = lat(&[&[1]]);
        let d = l1.divisibility(&bigvec(&[5])).unwrap();
        assert_eq!(d.div, BigInt::from(5));
        assert!(!d.primitive);
        assert!(matches!(
            l1.divisibility(&bigvec(&[0])),
            Err(LatticeError::ZeroVector)
        ));
    }

    #[test]
    fn divisibility_equals_direct_gcd_randomized() {
        let mut rng = XorShift(0xabcdef12345);
        let mut tested = 0;
        while tested < 50 {
            let n = 1 + (rng.below(5) as usize);
            let mut rows = vec![vec![BigInt::from(0); n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let x = BigInt::from(rng.small(8));
                    rows[i][j] = x.clone();
                    rows[j][i] = x;
                }
            }
            let gram = Mat::from_rows(rows);
            if gram.det().is_zero() {
                continue;
            }
            let l = IntLattice::new(gram).unwrap();
            let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.small(9))).collect();
            if a.iter().all(|x| x.is_zero()) {
                continue;
            }
            let d = l.divisibility(&a).unwrap();
            let gcd = l
                .pairing_functional(&a)
                .unwrap()
                .iter()
                .fold(BigInt::from(0), |acc, x| acc.gcd(x));
            assert_eq!(d.div, gcd);
            tested += 1;
        }
    }

    #[test]
    fn saturate_examples() {
        // content divides out
        let l3 = lat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let sat = l3
            .saturate(&[bigvec(&[2, 0, 0]), bigvec(&[0, 1, 0])])
            .unwrap();
        assert_eq!(sat, vec![bigvec(&[1, 0, 0]), bigvec(&[0, 1, 0])]);
        // already saturated: input returned unchanged
        let mukai = lat(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, 0]]);
        let span = vec![bigvec(&[1, 0, -1]), bigvec(&[2, 1, 1])];
        assert_eq!(mukai.saturate(&span).unwrap(), span);
        // index-2 overlattice recovers the full rank-2 lattice
        let l2 = lat(&[&[1, 0], &[0, 1]]);
        let sat = l2
            .saturate(&[bigvec(&[1, 1]), bigvec(&[1, -1])])
            .unwrap();
        assert_eq!(sat, vec![bigvec(&[1, 0]), bigvec(&[0, 1])]);
        // dependent generators rejected
        assert!(matches!(
            l2.saturate(&[bigvec(&[1, 1]), bigvec(&[2, 2])]),
            Err(LatticeError::DependentGenerators)
        ));
    }

    #[test]
    fn saturate_idempotent() {
        let mukai = lat(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, 0]]);
        let span = vec![bigvec(&[2, 4, -2]), bigvec(&[0, 3, 3])];
        let s1 = mukai.saturate(&span).unwrap();
        let s2 = mukai.saturate(&s1).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn orthogonal_complement_examples() {
        // d=1 Mukai lattice, complement of v = (1,0,-1)
        let mukai = lat(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, 0]]);
        let oc = mukai.orthogonal_complement(&[bigvec(&[1, 0, -1])]).unwrap();
        assert_eq!(oc.len(), 2);
        let contains = |v: &[BigInt]| {
            // membership in the row span over Z via HNF residue
            let mut rows = oc.clone();
            rows.push(v.to_vec());
            let h = hermite_normal_form(&Mat::from_rows(rows));
            h.rows == 2
        };
        assert!(contains(&bigvec(&[0, 1, 0])));
        assert!(contains(&bigvec(&[1, 0, 1])));
        // diagonal form
        let l = lat(&[&[2, 0], &[0, -2]]);
        let oc = l.orthogonal_complement(&[bigvec(&[1, 0])]).unwrap();
        assert_eq!(oc, vec![bigvec(&[0, 1])]);
        // full basis -> zero sublattice
        let oc = l
            .orthogonal_complement(&[bigvec(&[1, 0]), bigvec(&[0, 1])])
            .unwrap();
        assert!(oc.is_empty());
    }

    #[test]
    fn double_complement_contains_original() {
        let mukai = lat(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, 0]]);
        let s = vec![bigvec(&[1, 0, -1])];
        let oc = mukai.orthogonal_complement(&s).unwrap();
        let occ = mukai.orthogonal_complement(&oc).unwrap();
        // v is primitive hence saturated: double complement equals its span
        assert_eq!(occ, vec![bigvec(&[1, 0, -1])]);
    }

    #[test]
    fn pair_bilinear_symmetric_randomized() {
        let mut rng = XorShift(42);
        let l = lat(&[&[0, 0, -1], &[0, 2, 0], &[-1, 0, 0]]);
        for _ in 0..1000 {
            let rv = |rng: &mut XorShift| -> QVec<BigInt> {
                (0..3)
                    .map(|_| {
                        ratio_of(BigInt::from(rng.small(20)), BigInt::from(1 + rng.below(7) as i64))
                    })
                    .collect()
            };
            let a = rv(&mut rng);
            let b = rv(&mut rng);
            let c = rv(&mut rng);
            let s = ratio_of(BigInt::from(rng.small(5)), BigInt::from(1 + rng.below(3) as i64));
            assert_eq!(l.pair(&a, &b).unwrap(), l.pair(&b, &a).unwrap());
            let ab: QVec<BigInt> = a
                .iter()
                .zip(&b)
                .map(|(x, y)| x.clone() * s.clone() + y.clone())
                .collect();
            assert_eq!(
                l.pair(&ab, &c).unwrap(),
                s.clone() * l.pair(&a, &c).unwrap() + l.pair(&b, &c).unwrap()
            );
        }
    }

    #[test]
    fn dual_class_canonical_reduction() {
        let l = lat(&[&[2, 0], &[0, -2]]);
        let g = l.discriminant_group().unwrap();
        let d = l.divisibility(&bigvec(&[2, -3])).unwrap();
        // (Z/2)^2: residues land in {0,1}
        for r in d.dual_class.residues() {
            assert!(r == &BigInt::from(0) || r == &BigInt::from(1));
        }
        // order of the element divides the group exponent
        let ord = g.element_order(&d.dual_class);
        assert!(BigInt::from(2).mod_floor(&ord).is_zero());
    }
}
