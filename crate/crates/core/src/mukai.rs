//! Mukai vectors, the algebraic Mukai lattice, pointed periods, and
//! Hilbert-scheme presets.
//!
//! For a K3 surface with Picard lattice NS, the algebraic Mukai lattice is
//! Z e + NS + Z f with e, f isotropic, (e, f) = -1 and both orthogonal to NS;
//! a Mukai vector (r, D, s) is r e + D + s f and the pairing is
//! (a, b) = D.D' - r s' - r' s. The ideal-sheaf preset for n points on a
//! degree-2d surface is v = (1, 0, 1-n), and H^2 of the Hilbert scheme is
//! identified with v^perp, spanned by h = (0, 1, 0) and the delta lift
//! -(1, 0, n-1) with (delta, delta) = 2 - 2n.

use crate::lattice::{to_qvec, IntLattice, LVec, LatticeError, QVec};
use crate::mat::Mat;
use crate::scalar::{int, LatticeInt, Rational};
use num_traits::{Zero};

/// Neron-Severi lattice of a projective K3 surface: signature (1, rank-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Picard<I> {
    ns: IntLattice<I>,
}

impl<I: LatticeInt> K3Picard<I> {
    pub fn new(ns: IntLattice<I>) -> Result<Self, LatticeError> {
        let (pos, neg, zero) = ns.signature();
        if pos != 1 || zero != 0 || neg != ns.rank() - 1 {
            return Err(LatticeError::Other(format!(
                "Picard lattice must have signature (1, rank-1), got ({}, {}, {})",
                pos, neg, zero
            )));
        }
        Ok(K3Picard { ns })
    }

    /// Rank-one lattice Z h with h^2 = 2d.
    pub fn rank_one(d: &I) -> Result<Self, LatticeError> {
        if !d.is_positive() {
            return Err(LatticeError::Other("degree d must be positive".into()));
        }
        let two_d = int::<I>(2) * d.clone();
        Self::new(IntLattice::from_rows(vec![vec![two_d]])?)
    }

    pub fn ns(&self) -> &IntLattice<I> {
        &self.ns
    }

    pub fn rank(&self) -> usize {
        self.ns.rank()
    }
}

/// Mukai vector (r, D, s) over a fixed Picard lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector<I> {
    pub r: I,
    pub d: Vec<I>,
    pub s: I,
}

impl<I: LatticeInt> MukaiVector<I> {
    pub fn new(r: I, d: Vec<I>, s: I) -> Self {
        MukaiVector { r, d, s }
    }

    /// Coordinates in the (e, NS basis, f) ordering.
    pub fn to_coords(&self) -> Vec<I> {
        let mut v = Vec::with_capacity(self.d.len() + 2);
        v.push(self.r.clone());
        v.extend(self.d.iter().cloned());
        v.push(self.s.clone());
        v
    }

    pub fn from_coords(coords: &[I]) -> Result<Self, LatticeError> {
        if coords.len() < 3 {
            return Err(LatticeError::BadShape);
        }
        Ok(MukaiVector {
            r: coords[0].clone(),
            d: coords[1..coords.len() - 1].to_vec(),
            s: coords[coords.len() - 1].clone(),
        })
    }
}

/// (a, b) = D.D' - r s' - r' s.
pub fn mukai_pairing<I: LatticeInt>(
    picard: &K3Picard<I>,
    a: &MukaiVector<I>,
    b: &MukaiVector<I>,
) -> Result<I, LatticeError> {
    if a.d.len() != picard.rank() || b.d.len() != picard.rank() {
        return Err(LatticeError::LatticeMismatch);
    }
    let dd = picard.ns.pair_int(&a.d, &b.d)?;
    Ok(dd - a.r.clone() * b.s.clone() - b.r.clone() * a.s.clone())
}

/// The rank-(2 + rank NS) lattice Z e + NS + Z f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMukaiLattice<I> {
    picard: K3Picard<I>,
    lattice: IntLattice<I>,
}

impl<I: LatticeInt> AlgMukaiLattice<I> {
    pub fn new(picard: K3Picard<I>) -> Self {
        let k = picard.rank();
        let n = k + 2;
        let mut gram = Mat::zero(n, n);
        gram[(0, n - 1)] = -I::one();
        gram[(n - 1, 0)] = -I::one();
        for i in 0..k {
            for j in 0..k {
                gram[(1 + i, 1 + j)] = picard.ns.gram()[(i, j)].clone();
            }
        }
        let lattice = IntLattice::new(gram).expect("Mukai lattice is nondegenerate");
        AlgMukaiLattice { picard, lattice }
    }

    pub fn picard(&self) -> &K3Picard<I> {
        &self.picard
    }

    pub fn lattice(&self) -> &IntLattice<I> {
        &self.lattice
    }
}

/// A lattice with a distinguished primitive vector v of positive even square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedPeriod<I> {
    lattice: IntLattice<I>,
    v: LVec<I>,
}

impl<I: LatticeInt> PointedPeriod<I> {
    pub fn new(lattice: IntLattice<I>, v: LVec<I>) -> Result<Self, LatticeError> {
        if v.len() != lattice.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: lattice.rank(),
                got: v.len(),
            });
        }
        if !IntLattice::<I>::is_primitive(&v) {
            return Err(LatticeError::BadPointedVector);
        }
        let vv = lattice.pair_int(&v, &v)?;
        if !vv.is_positive() || !vv.mod_floor(&int::<I>(2)).is_zero() {
            return Err(LatticeError::BadPointedVector);
        }
        Ok(PointedPeriod { lattice, v })
    }

    pub fn lattice(&self) -> &IntLattice<I> {
        &self.lattice
    }

    pub fn v(&self) -> &[I] {
        &self.v
    }

    /// v^2 = 2n - 2.
    pub fn v_square(&self) -> I {
        self.lattice.pair_int(&self.v, &self.v).expect("validated")
    }

    /// Half-dimension n = v^2 / 2 + 1.
    pub fn half_dim(&self) -> I {
        self.v_square().div_floor(&int::<I>(2)) + I::one()
    }

    /// Curve class from rational coordinates; must lie in v^perp.
    pub fn curve_class(&self, coords: QVec<I>) -> Result<CurveClass<I>, LatticeError> {
        let zero = self.lattice.pair(&coords, &to_qvec(&self.v))?;
        if !zero.is_zero() {
            return Err(LatticeError::OutsideSpan);
        }
        Ok(CurveClass { coords })
    }
}

/// Orthogonal projection onto v^perp: a - ((a,v)/(v,v)) v.
pub fn theta_dual<I: LatticeInt>(
    period: &PointedPeriod<I>,
    a: &[I],
) -> Result<CurveClass<I>, LatticeError> {
    theta_dual_q(period, &to_qvec(a))
}

/// Rational-input version of [`theta_dual`].
pub fn theta_dual_q<I: LatticeInt>(
    period: &PointedPeriod<I>,
    a: &QVec<I>,
) -> Result<CurveClass<I>, LatticeError> {
    let vq = to_qvec(period.v());
    let av = period.lattice.pair(a, &vq)?;
    let vv = Rational::from_integer(period.v_square());
    let coeff = av / vv;
    let coords: QVec<I> = a
        .iter()
        .zip(&vq)
        .map(|(x, v)| x.clone() - coeff.clone() * v.clone())
        .collect();
    Ok(CurveClass { coords })
}

/// Element of H_2 presented by rational coordinates in the ambient pointed
/// lattice; always orthogonal to v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass<I: LatticeInt> {
    coords: QVec<I>,
}

impl<I: LatticeInt> CurveClass<I> {
    pub fn coords(&self) -> &QVec<I> {
        &self.coords
    }

    pub fn square(&self, period: &PointedPeriod<I>) -> Result<Rational<I>, LatticeError> {
        period.lattice.pair(&self.coords, &self.coords)
    }

    pub fn negate(&self) -> Self {
        CurveClass {
            coords: self.coords.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// 2R, when integral.
    pub fn doubled_integral(&self) -> Option<LVec<I>> {
        self.coords
            .iter()
            .map(|x| {
                let y = x.clone() * Rational::from_integer(int::<I>(2));
                y.denom().is_one().then(|| y.numer().clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

/// Hilbert scheme of n points on a degree-2d K3 surface: the rank-3 pointed
/// Mukai lattice with v = (1, 0, 1-n) and the (h, delta) basis of v^perp.
#[derive(Clone, Debug)]
pub struct HilbPreset<I> {
    pub n: I,
    pub d: I,
    mukai: AlgMukaiLattice<I>,
    period: PointedPeriod<I>,
    h_lift: LVec<I>,
    delta_lift: LVec<I>,
}

impl<I: LatticeInt> HilbPreset<I> {
    pub fn new(n: I, d: I) -> Result<Self, LatticeError> {
        if n < int(2) {
            return Err(LatticeError::Other("preset needs n >= 2".into()));
        }
        if !d.is_positive() {
            return Err(LatticeError::Other("preset needs d >= 1".into()));
        }
        let picard = K3Picard::rank_one(&d)?;
        let mukai = AlgMukaiLattice::new(picard);
        let v = vec![I::one(), I::zero(), I::one() - n.clone()];
        let period = PointedPeriod::new(mukai.lattice().clone(), v)?;
        let h_lift = vec![I::zero(), I::one(), I::zero()];
        let delta_lift = vec![-I::one(), I::zero(), I::one() - n.clone()];
        Ok(HilbPreset {
            n,
            d,
            mukai,
            period,
            h_lift,
            delta_lift,
        })
    }

    pub fn period(&self) -> &PointedPeriod<I> {
        &self.period
    }

    pub fn mukai(&self) -> &AlgMukaiLattice<I> {
        &self.mukai
    }

    pub fn v(&self) -> &[I] {
        self.period.v()
    }

    pub fn h_lift(&self) -> &[I] {
        &self.h_lift
    }

    pub fn delta_lift(&self) -> &[I] {
        &self.delta_lift
    }

    /// Gram of the (h, delta) basis of v^perp: diag(2d, 2 - 2n).
    pub fn h_delta_gram(&self) -> Mat<I> {
        let mut g = Mat::zero(2, 2);
        g[(0, 0)] = int::<I>(2) * self.d.clone();
        g[(1, 1)] = int::<I>(2) - int::<I>(2) * self.n.clone();
        g
    }

    /// Write c = alpha h + beta delta; errors when c is outside the span.
    pub fn to_h_delta(&self, c: &QVec<I>) -> Result<(Rational<I>, Rational<I>), LatticeError> {
        if c.len() != 3 {
            return Err(LatticeError::DimensionMismatch {
                expected: 3,
                got: c.len(),
            });
        }
        let alpha = c[1].clone();
        let beta = -c[0].clone();
        // consistency: c2 = (n-1) c0
        let n1 = Rational::from_integer(self.n.clone() - I::one());
        if c[2].clone() != n1 * c[0].clone() {
            return Err(LatticeError::OutsideSpan);
        }
        Ok((alpha, beta))
    }

    /// Lift alpha h + beta delta back to ambient rational coordinates.
    pub fn from_h_delta(&self, alpha: &Rational<I>, beta: &Rational<I>) -> QVec<I> {
        let n1 = Rational::from_integer(self.n.clone() - I::one());
        vec![
            -beta.clone(),
            alpha.clone(),
            -beta.clone() * n1,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::bigvec;
    use crate::scalar::{ratio, ratio_of};
    use num_bigint::BigInt;
    use num_integer::Integer;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mv(r: i64, d: i64, s: i64) -> MukaiVector<BigInt> {
        MukaiVector::new(bi(r), vec![bi(d)], bi(s))
    }

    #[test]
    fn mukai_pairing_examples() {
        let p1 = K3Picard::rank_one(&bi(1)).unwrap();
        // v = (1, 0, -1): v^2 = 2
        let v = mv(1, 0, -1);
        assert_eq!(mukai_pairing(&p1, &v, &v).unwrap(), bi(2));
        // d=1: s = (2, h, 1) has (s, v) = 1
        let s = mv(2, 1, 1);
        assert_eq!(mukai_pairing(&p1, &s, &v).unwrap(), bi(1));
        // d=2: (s, t) = -8 + 9 + 3 = 4
        let p2 = K3Picard::rank_one(&bi(2)).unwrap();
        let s = mv(1, -1, 3);
        let t = mv(-1, 2, -9);
        assert_eq!(mukai_pairing(&p2, &s, &t).unwrap(), bi(4));
        // mismatched Picard rank
        let bad = MukaiVector::new(bi(1), vec![bi(0), bi(0)], bi(0));
        assert!(matches!(
            mukai_pairing(&p1, &bad, &v),
            Err(LatticeError::LatticeMismatch)
        ));
    }

    #[test]
    fn mukai_square_is_even() {
        use crate::mat::testsupport::XorShift;
        let p = K3Picard::rank_one(&bi(3)).unwrap();
        let mut rng = XorShift(7);
        for _ in 0..200 {
            let a = mv(rng.small(9), rng.small(9), rng.small(9));
            let sq = mukai_pairing(&p, &a, &a).unwrap();
            assert!(sq.mod_floor(&bi(2)).is_zero());
        }
    }

    #[test]
    fn preset_examples() {
        let p = HilbPreset::new(bi(2), bi(1)).unwrap();
        assert_eq!(p.v(), &[bi(1), bi(0), bi(-1)]);
        assert_eq!(p.period().v_square(), bi(2));
        assert_eq!(p.delta_lift(), &[bi(-1), bi(0), bi(-1)]);
        let p = HilbPreset::new(bi(4), bi(2)).unwrap();
        assert_eq!(p.v(), &[bi(1), bi(0), bi(-3)]);
        assert_eq!(p.period().v_square(), bi(6));
        let p = HilbPreset::new(bi(2), bi(11)).unwrap();
        assert_eq!(p.v(), &[bi(1), bi(0), bi(-1)]);
        assert_eq!(p.mukai().picard().ns().gram()[(0, 0)], bi(22));
        assert!(HilbPreset::new(bi(1), bi(1)).is_err());
    }

    #[test]
    fn delta_square_general_n() {
        for (n, d) in [(2i64, 1i64), (3, 2), (4, 2), (7, 5)] {
            let p = HilbPreset::new(bi(n), bi(d)).unwrap();
            let dl = p.delta_lift().to_vec();
            let sq = p.period().lattice().pair_int(&dl, &dl).unwrap();
            assert_eq!(sq, bi(2 - 2 * n));
            let h = p.h_lift().to_vec();
            assert_eq!(p.period().lattice().pair_int(&h, &h).unwrap(), bi(2 * d));
            assert_eq!(p.period().lattice().pair_int(&h, &dl).unwrap(), bi(0));
        }
    }

    #[test]
    fn theta_dual_examples() {
        let p = HilbPreset::new(bi(2), bi(1)).unwrap();
        // a = (2, h, 1) projects to (3/2, 1, 3/2) = h - (3/2) delta
        let r = theta_dual(p.period(), &bigvec(&[2, 1, 1])).unwrap();
        assert_eq!(
            r.coords(),
            &vec![ratio_of(bi(3), bi(2)), ratio(bi(1)), ratio_of(bi(3), bi(2))]
        );
        let (alpha, beta) = p.to_h_delta(r.coords()).unwrap();
        assert_eq!(alpha, ratio(bi(1)));
        assert_eq!(beta, ratio_of(bi(-3), bi(2)));
        // anything already orthogonal to v is fixed
        let h = theta_dual(p.period(), &bigvec(&[0, 1, 0])).unwrap();
        assert_eq!(h.coords(), &vec![ratio(bi(0)), ratio(bi(1)), ratio(bi(0))]);
        // f = (0,0,1) projects to -delta/2
        let f = theta_dual(p.period(), &bigvec(&[0, 0, 1])).unwrap();
        assert_eq!(
            f.coords(),
            &vec![ratio_of(bi(1), bi(2)), ratio(bi(0)), ratio_of(bi(1), bi(2))]
        );
        let (alpha, beta) = p.to_h_delta(f.coords()).unwrap();
        assert_eq!(alpha, ratio(bi(0)));
        assert_eq!(beta, ratio_of(bi(-1), bi(2)));
    }

    #[test]
    fn to_h_delta_rejects_outside_span() {
        let p = HilbPreset::new(bi(3), bi(1)).unwrap();
        // (0, 0, 1) is not in v^perp for n = 3
        assert!(matches!(
            p.to_h_delta(&vec![ratio(bi(0)), ratio(bi(0)), ratio(bi(1))]),
            Err(LatticeError::OutsideSpan)
        ));
        // h itself
        let (a, b) = p
            .to_h_delta(&vec![ratio(bi(0)), ratio(bi(1)), ratio(bi(0))])
            .unwrap();
        assert_eq!((a, b), (ratio(bi(1)), ratio(bi(0))));
    }

    #[test]
    fn theta_dual_idempotent_and_linear() {
        use crate::mat::testsupport::XorShift;
        let p = HilbPreset::new(bi(3), bi(2)).unwrap();
        let mut rng = XorShift(99);
        for _ in 0..100 {
            let a = bigvec(&[rng.small(10), rng.small(10), rng.small(10)]);
            let b = bigvec(&[rng.small(10), rng.small(10), rng.small(10)]);
            let ra = theta_dual(p.period(), &a).unwrap();
            // idempotent on its image
            let rra = theta_dual_q(p.period(), ra.coords()).unwrap();
            assert_eq!(&rra, &ra);
            // linear
            let sum: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let rsum = theta_dual(p.period(), &sum).unwrap();
            let rb = theta_dual(p.period(), &b).unwrap();
            let manual: QVec<BigInt> = ra
                .coords()
                .iter()
                .zip(rb.coords())
                .map(|(x, y)| x.clone() + y.clone())
                .collect();
            assert_eq!(rsum.coords(), &manual);
        }
    }

    #[test]
    fn theta_is_isometry_on_v_perp() {
        use crate::mat::testsupport::XorShift;
        let mut rng = XorShift(1234);
        for (n, d) in [(2i64, 1i64), (2, 11), (3, 2), (5, 4)] {
            let p = HilbPreset::new(bi(n), bi(d)).unwrap();
            let hd_lattice = IntLattice::new(p.h_delta_gram()).unwrap();
            for _ in 0..50 {
                let (a1, b1) = (rng.small(9), rng.small(9));
                let (a2, b2) = (rng.small(9), rng.small(9));
                let lift1 = p.from_h_delta(&ratio(bi(a1)), &ratio(bi(b1)));
                let lift2 = p.from_h_delta(&ratio(bi(a2)), &ratio(bi(b2)));
                let ambient = p.period().lattice().pair(&lift1, &lift2).unwrap();
                let small = hd_lattice
                    .pair(
                        &vec![ratio(bi(a1)), ratio(bi(b1))],
                        &vec![ratio(bi(a2)), ratio(bi(b2))],
                    )
                    .unwrap();
                assert_eq!(ambient, small);
            }
        }
    }

    #[test]
    fn lemma_44_shape_on_presets() {
        // for a with (a,v) = v^2/2 and a^2 = -2: theta_dual(a)^2 = -(n+3)/2
        // and 2 theta_dual(a) is integral
        for (n, d, a) in [(2i64, 1i64, [2i64, 1, 1]), (2, 11, [4, 1, 3])] {
            let p = HilbPreset::new(bi(n), bi(d)).unwrap();
            let al = bigvec(&a);
            let aa = p.period().lattice().pair_int(&al, &al).unwrap();
            assert_eq!(aa, bi(-2));
            let av = p.period().lattice().pair_int(&al, &p.v().to_vec()).unwrap();
            assert_eq!(av, bi(n - 1));
            let r = theta_dual(p.period(), &al).unwrap();
            assert_eq!(r.square(p.period()).unwrap(), ratio_of(bi(-(n + 3)), bi(2)));
            assert!(r.doubled_integral().is_some());
        }
    }

    #[test]
    fn pointed_period_validation() {
        let l = IntLattice::from_rows(vec![bigvec(&[2, 1]), bigvec(&[1, -2])]).unwrap();
        assert!(PointedPeriod::new(l.clone(), bigvec(&[1, 0])).is_ok());
        // imprimitive
        assert!(PointedPeriod::new(l.clone(), bigvec(&[2, 0])).is_err());
        // negative square
        assert!(PointedPeriod::new(l, bigvec(&[0, 1])).is_err());
    }
}
