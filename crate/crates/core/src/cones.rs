//! Nef and movable cones of Hilbert schemes of two points, Picard rank one.
//!
//! Rays live in the (h, delta) plane with (h,h) = 2d, (delta,delta) = -2.
//! Walls through the positive cone correspond to rank-2 sublattices of the
//! Mukai lattice containing v = (1, 0, -1); with a = (r, c, s3) the wall ray
//! is (r + s3) h - 2dc delta. The four witness families reduce to Pell
//! equations in X = 2r - k, where k = (a, v):
//!
//!   spherical, k = 0:  x^2 -  d c^2 = 1   (Brill-Noether; ray x h - dc delta)
//!   spherical, k = 1:  X^2 - 4d c^2 = 5   (flop, plane type)
//!   isotropic, k = 1:  X^2 - 4d c^2 = 1   (Hilbert-Chow)
//!   isotropic, k = 2:  x^2 -  d c^2 = 1   (Li-Gieseker-Uhlenbeck, same rays
//!                                          as Brill-Noether: a_LGU = v + a_BN)
//!
//! The movable cone is bounded by h and the divisorial ray of least slope;
//! when d is a perfect square the boundary is the isotropic positive-cone
//! ray h - sqrt(d) delta instead. Flop walls of slope below the boundary
//! decompose the movable cone into nef chambers of birational models.

use crate::lattice::{LVec, LatticeError};
use crate::mukai::HilbPreset;
use crate::planes::{numeric_criteria, NumericVerdict};
use crate::quadform::{hilb2_pell_reduction, represent_pell};
use crate::scalar::{int, perfect_sqrt, ratio_of, LatticeInt, Rational};
use crate::surd::Surd;
use crate::walls::{classify_wall, line_class, PointedSublattice, WallReport};
use num_traits::{Zero};
use std::cmp::Ordering;

/// Extremal ray in (h, delta) coordinates, or an irrational positive-cone
/// boundary of the given slope (h - t delta with t a surd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ray<I: LatticeInt> {
    Lattice(LVec<I>),
    Irrational(Surd<I>),
}

impl<I: LatticeInt> Ray<I> {
    fn from_coeffs(x: I, delta_coeff: I) -> Self {
        let g = x.gcd(&delta_coeff);
        let (mut x, mut dc) = (x.div_floor(&g), delta_coeff.div_floor(&g));
        if x.is_negative() {
            x = -x;
            dc = -dc;
        }
        Ray::Lattice(vec![x, dc])
    }

    /// Slope t of the ray x h - t x delta, when rational.
    pub fn slope(&self) -> Option<Rational<I>> {
        match self {
            Ray::Lattice(v) => Some(ratio_of(-v[1].clone(), v[0].clone())),
            Ray::Irrational(_) => None,
        }
    }
}

/// One nef chamber of the movable cone, bounded away from h by `to`.
#[derive(Clone, Debug)]
pub struct Chamber<I: LatticeInt> {
    pub from: Ray<I>,
    pub to: Ray<I>,
    /// Wall kinds at the far boundary; None when that boundary is the
    /// positive-cone boundary (no lattice wall).
    pub wall: Option<WallReport<I>>,
    /// Line class at a flop boundary, as (h, delta) coefficients.
    pub line_class: Option<(Rational<I>, Rational<I>)>,
    pub line_primitive: Option<bool>,
}

/// Exact cone data for X^[2] with Pic(X) = Z h of degree 2d.
#[derive(Clone, Debug)]
pub struct ConeReport<I: LatticeInt> {
    pub d: I,
    pub movable: (Ray<I>, Ray<I>),
    pub nef: (Ray<I>, Ray<I>),
    pub chambers: Vec<Chamber<I>>,
}

/// Slope of the movable-cone boundary: rational p/q, or sqrt(d).
#[derive(Clone, Debug)]
enum BoundarySlope<I: LatticeInt> {
    Rational(Rational<I>),
    SqrtD(Surd<I>),
}

impl<I: LatticeInt> BoundarySlope<I> {
    fn exceeds(&self, t: &Rational<I>) -> bool {
        match self {
            BoundarySlope::Rational(s) => s > t,
            BoundarySlope::SqrtD(s) => s.cmp_rational(t) == Ordering::Greater,
        }
    }
}

fn divisorial_boundary<I: LatticeInt>(
    d: &I,
) -> Result<(BoundarySlope<I>, Ray<I>, Option<LVec<I>>), LatticeError> {
    if let Some(g) = perfect_sqrt(d) {
        // both divisorial Pell families are insoluble; the boundary is the
        // isotropic positive-cone ray h - sqrt(d) delta
        return Ok((
            BoundarySlope::SqrtD(Surd::sqrt_of(d.clone())),
            Ray::from_coeffs(I::one(), -g),
            None,
        ));
    }
    // Brill-Noether / LGU family: x^2 - d c^2 = 1, ray x h - dc delta
    let (xb, cb) = crate::quadform::pell_fundamental(d)?;
    let slope_bn = ratio_of(d.clone() * cb.clone(), xb.clone());
    // Hilbert-Chow family: X^2 - 4d c^2 = 1, ray X h - 2dc delta
    let four_d = int::<I>(4) * d.clone();
    let (xh, ch) = crate::quadform::pell_fundamental(&four_d)?;
    let slope_hc = ratio_of(int::<I>(2) * d.clone() * ch.clone(), xh.clone());
    if slope_bn <= slope_hc {
        // witness a = (x, c, x), spherical orthogonal to v
        Ok((
            BoundarySlope::Rational(slope_bn),
            Ray::from_coeffs(xb.clone(), -(d.clone() * cb.clone())),
            Some(vec![xb.clone(), cb, xb]),
        ))
    } else {
        // witness a = (r, c, r - 1) isotropic with (a, v) = 1, r = (X+1)/2
        let r = (xh.clone() + I::one()).div_floor(&int::<I>(2));
        Ok((
            BoundarySlope::Rational(slope_hc),
            Ray::from_coeffs(xh, -(int::<I>(2) * d.clone() * ch.clone())),
            Some(vec![r.clone(), ch, r - I::one()]),
        ))
    }
}

/// All flop-wall solutions (X, c) with X, c > 0 and slope 2dc/X strictly
/// below the boundary. Finite: solution slopes accumulate only at sqrt(d),
/// which lies strictly above every rational divisorial boundary.
fn flop_solutions<I: LatticeInt>(
    d: &I,
    boundary: &BoundarySlope<I>,
) -> Result<Vec<(I, I)>, LatticeError> {
    let (form, m) = hilb2_pell_reduction(d, &I::one(), &int::<I>(-2));
    let sols = represent_pell(&form, &m)?;
    // strict slope test 2dc q < p X as a linear functional
    let (p, q) = match boundary {
        BoundarySlope::Rational(t) => (t.numer().clone(), t.denom().clone()),
        // sqrt(d) boundary: 4 d^2 c^2 < d X^2 follows from X^2 - 4dc^2 = 5,
        // so every positive solution qualifies; encode as slope below d+1
        BoundarySlope::SqrtD(_) => (d.clone() + I::one(), I::one()),
    };
    let func_slope = (
        p.clone(),
        -int::<I>(2) * d.clone() * q.clone(),
    );
    let mut found = Vec::new();
    sols.scan_orbits(
        &[(I::one(), I::zero()), (I::zero(), I::one()), func_slope.clone()],
        &[I::zero(), I::zero(), I::zero()],
        |w| {
            let slope_ok = (func_slope.0.clone() * w.0.clone()
                + func_slope.1.clone() * w.1.clone())
            .is_positive();
            if w.0.is_positive() && w.1.is_positive() && slope_ok {
                found.push(w.clone());
            }
            true
        },
    );
    found.sort();
    found.dedup();
    Ok(found)
}

/// Exact nef and movable cones of X^[2] with all interior walls.
pub fn hilb2_cones<I: LatticeInt>(d: &I) -> Result<ConeReport<I>, LatticeError> {
    if !d.is_positive() {
        return Err(LatticeError::Other("need d >= 1".into()));
    }
    let preset = HilbPreset::new(int(2), d.clone())?;
    let h_ray: Ray<I> = Ray::Lattice(vec![I::one(), I::zero()]);
    let (boundary, movable_ray, movable_witness) = divisorial_boundary(d)?;

    // flop walls strictly inside, ordered by slope toward the boundary
    let mut flops = flop_solutions(d, &boundary)?;
    flops.sort_by(|a, b| {
        // slope 2dc/X ascending: compare 2d c1 X2 with 2d c2 X1
        (a.1.clone() * b.0.clone()).cmp(&(b.1.clone() * a.0.clone()))
    });

    let mut chambers = Vec::new();
    let mut from = h_ray.clone();
    for (x, c) in &flops {
        let r = (x.clone() + I::one()).div_floor(&int::<I>(2));
        let witness = vec![r.clone(), c.clone(), r - I::one()];
        let wall = PointedSublattice::from_span(preset.period(), &[witness])?;
        let report = classify_wall(&wall)?;
        let ray = Ray::from_coeffs(x.clone(), -(int::<I>(2) * d.clone() * c.clone()));
        let (rc, primitive) = line_class(&wall, None)?;
        let (alpha, beta) = preset.to_h_delta(rc.coords())?;
        // line classes of flop walls satisfy the numeric criteria exactly
        debug_assert!(matches!(
            numeric_criteria(&int::<I>(2), &crate::lattice::IntLattice::new(preset.h_delta_gram())?, &vec![alpha.clone(), beta.clone()])?,
            NumericVerdict::Pass
        ));
        chambers.push(Chamber {
            from: from.clone(),
            to: ray.clone(),
            wall: Some(report),
            line_class: Some((alpha, beta)),
            line_primitive: Some(primitive),
        });
        from = ray;
    }
    // last chamber reaches the movable boundary
    let boundary_wall = match &movable_witness {
        Some(w) => {
            let wall = PointedSublattice::from_span(preset.period(), &[w.clone()])?;
            Some(classify_wall(&wall)?)
        }
        None => None,
    };
    chambers.push(Chamber {
        from,
        to: movable_ray.clone(),
        wall: boundary_wall,
        line_class: None,
        line_primitive: None,
    });

    let nef_far = chambers[0].to.clone();
    Ok(ConeReport {
        d: d.clone(),
        movable: (h_ray.clone(), movable_ray),
        nef: (h_ray, nef_far),
        chambers,
    })
}

/// Does the hyperplane orthogonal to the curve class alpha h + beta delta
/// meet the interior of the movable cone of X^[2]?
pub fn wall_meets_movable<I: LatticeInt>(
    d: &I,
    alpha: &Rational<I>,
    beta: &Rational<I>,
) -> Result<bool, LatticeError> {
    if alpha.is_zero() && beta.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    if beta.is_zero() {
        return Ok(false);
    }
    // (x h - y delta, alpha h + beta delta) = 0 at slope t = y/x = -d alpha / beta
    let t = -Rational::from_integer(d.clone()) * alpha.clone() / beta.clone();
    if !t.numer().is_positive() {
        return Ok(false);
    }
    let (boundary, _, _) = divisorial_boundary(d)?;
    Ok(boundary.exceeds(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntLattice;
    use crate::scalar::{isqrt, ratio};
    use crate::walls::WallKind;
    use num_bigint::BigInt;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ray(v: &[i64]) -> Ray<BigInt> {
        Ray::Lattice(v.iter().map(|&x| bi(x)).collect())
    }

    #[test]
    fn cones_d1() {
        let rep = hilb2_cones(&bi(1)).unwrap();
        assert_eq!(rep.movable, (ray(&[1, 0]), ray(&[1, -1])));
        assert_eq!(rep.nef, (ray(&[1, 0]), ray(&[3, -2])));
        assert_eq!(rep.chambers.len(), 2);
        let flop = &rep.chambers[0];
        assert!(flop
            .wall
            .as_ref()
            .unwrap()
            .matched
            .contains(&WallKind::FlopPType));
        assert_eq!(
            flop.line_class,
            Some((ratio(bi(1)), ratio_of(bi(-3), bi(2))))
        );
        assert_eq!(flop.line_primitive, Some(true));
        // second chamber is the flop model's nef cone <3h-2delta, h-delta>
        assert_eq!(rep.chambers[1].from, ray(&[3, -2]));
        assert_eq!(rep.chambers[1].to, ray(&[1, -1]));
        // the d=1 boundary is the isotropic positive-cone ray: no wall data
        assert!(rep.chambers[1].wall.is_none());
    }

    #[test]
    fn cones_d11() {
        let rep = hilb2_cones(&bi(11)).unwrap();
        assert_eq!(rep.movable, (ray(&[1, 0]), ray(&[10, -33])));
        assert_eq!(rep.nef, (ray(&[1, 0]), ray(&[7, -22])));
        assert_eq!(rep.chambers.len(), 2);
        assert_eq!(
            rep.chambers[0].line_class,
            Some((ratio(bi(1)), ratio_of(bi(-7), bi(2))))
        );
        // the movable boundary at d=11 carries both the Brill-Noether and
        // (via a_LGU = v + a_BN) the Li-Gieseker-Uhlenbeck condition
        let wall = rep.chambers[1].wall.as_ref().unwrap();
        assert!(wall.matched.contains(&WallKind::BrillNoether));
        assert!(wall.matched.contains(&WallKind::LiGiesekerUhlenbeck));
    }

    #[test]
    fn cones_d2_regression() {
        // movable = nef = <h, 3h - 4delta>; no flop wall (X^2 - 8c^2 = 5 is
        // insoluble mod 8); boundary carries BN and HC conditions
        let rep = hilb2_cones(&bi(2)).unwrap();
        assert_eq!(rep.movable, (ray(&[1, 0]), ray(&[3, -4])));
        assert_eq!(rep.nef, (ray(&[1, 0]), ray(&[3, -4])));
        assert_eq!(rep.chambers.len(), 1);
        let wall = rep.chambers[0].wall.as_ref().unwrap();
        assert!(wall.matched.contains(&WallKind::BrillNoether));
        assert!(wall.matched.contains(&WallKind::HilbertChow));
    }

    #[test]
    fn cones_d5_regression() {
        // one flop wall h - 2delta with line class h - (5/2) delta;
        // movable boundary 9h - 20delta
        let rep = hilb2_cones(&bi(5)).unwrap();
        assert_eq!(rep.movable, (ray(&[1, 0]), ray(&[9, -20])));
        assert_eq!(rep.nef, (ray(&[1, 0]), ray(&[1, -2])));
        assert_eq!(rep.chambers.len(), 2);
        assert_eq!(
            rep.chambers[0].line_class,
            Some((ratio(bi(1)), ratio_of(bi(-5), bi(2))))
        );
    }

    #[test]
    fn cones_d4_square() {
        let rep = hilb2_cones(&bi(4)).unwrap();
        assert_eq!(rep.movable, (ray(&[1, 0]), ray(&[1, -2])));
        assert_eq!(rep.nef, (ray(&[1, 0]), ray(&[1, -2])));
        assert_eq!(rep.chambers.len(), 1);
        assert!(rep.chambers[0].wall.is_none());
    }

    #[test]
    fn meets_movable_examples() {
        // d=11: R1 = h - (7/2) delta crosses the movable interior at 22/7
        assert!(wall_meets_movable(&bi(11), &ratio(bi(1)), &ratio_of(bi(-7), bi(2))).unwrap());
        // R2 = 11h - (73/2) delta crosses at 242/73 > 33/10: outside
        assert!(
            !wall_meets_movable(&bi(11), &ratio(bi(11)), &ratio_of(bi(-73), bi(2))).unwrap()
        );
        // d=1 flop line
        assert!(wall_meets_movable(&bi(1), &ratio(bi(1)), &ratio_of(bi(-3), bi(2))).unwrap());
        // h itself: the orthogonal is the boundary ray, not interior
        assert!(!wall_meets_movable(&bi(1), &ratio(bi(0)), &ratio(bi(1))).unwrap());
        assert!(!wall_meets_movable(&bi(1), &ratio(bi(1)), &ratio(bi(0))).unwrap());
    }

    #[test]
    fn nef_boundary_nonnegative_square_d_up_to_50() {
        for d in 1i64..=50 {
            let rep = hilb2_cones(&bi(d)).unwrap();
            for r in [&rep.nef.0, &rep.nef.1] {
                if let Ray::Lattice(v) = r {
                    let sq = bi(2 * d) * v[0].clone() * v[0].clone()
                        - bi(2) * v[1].clone() * v[1].clone();
                    assert!(sq >= bi(0), "d = {}: nef ray {:?}", d, v);
                }
            }
            // every flop line class passes the numeric criteria with -5/2
            let hd = IntLattice::from_rows(vec![
                vec![bi(2 * d), bi(0)],
                vec![bi(0), bi(-2)],
            ])
            .unwrap();
            for ch in &rep.chambers {
                if let Some((alpha, beta)) = &ch.line_class {
                    let verdict = numeric_criteria(
                        &bi(2),
                        &hd,
                        &vec![alpha.clone(), beta.clone()],
                    )
                    .unwrap();
                    assert!(verdict.passed(), "d = {}", d);
                }
            }
            // movable boundary: divisorial wall witness or isotropic ray
            match (&rep.movable.1, &rep.chambers.last().unwrap().wall) {
                (Ray::Lattice(v), None) => {
                    let sq = bi(2 * d) * v[0].clone() * v[0].clone()
                        - bi(2) * v[1].clone() * v[1].clone();
                    assert_eq!(sq, bi(0), "d = {}", d);
                }
                (_, Some(w)) => {
                    assert!(
                        w.matched.contains(&WallKind::BrillNoether)
                            || w.matched.contains(&WallKind::HilbertChow)
                            || w.matched.contains(&WallKind::LiGiesekerUhlenbeck),
                        "d = {}",
                        d
                    );
                }
                _ => panic!("d = {}: inconsistent boundary", d),
            }
        }
    }

    #[test]
    fn pell_walls_match_box_scan_d_up_to_50() {
        // two-sided consistency of the Pell-derived wall set against a
        // brute-force witness scan with |c| <= 500
        let bound = 500i64;
        for d in 1i64..=50 {
            let rep = hilb2_cones(&bi(d)).unwrap();
            let t_mov = rep.movable.1.slope();
            // oracle: scan the flop family directly
            let mut oracle_rays: Vec<Vec<BigInt>> = Vec::new();
            for c in 1..=bound {
                let rhs = bi(5) + bi(4 * d) * bi(c) * bi(c);
                let x = isqrt(&rhs);
                if x.clone() * x.clone() == rhs {
                    // strict slope test against the movable boundary
                    if let Some(t) = &t_mov {
                        let slope = ratio_of(bi(2 * d) * bi(c), x.clone());
                        if &slope < t {
                            if let Ray::Lattice(v) =
                                Ray::from_coeffs(x.clone(), -(bi(2 * d) * bi(c)))
                            {
                                oracle_rays.push(v);
                            }
                        }
                    }
                }
            }
            oracle_rays.sort();
            oracle_rays.dedup();
            let pell_rays: Vec<Vec<BigInt>> = rep.chambers[..rep.chambers.len() - 1]
                .iter()
                .map(|c| match &c.to {
                    Ray::Lattice(v) => v.clone(),
                    Ray::Irrational(_) => unreachable!("flop walls are lattice rays"),
                })
                .collect();
            // every oracle wall is found by the Pell route
            for r in &oracle_rays {
                assert!(pell_rays.contains(r), "d = {}: missing {:?}", d, r);
            }
            // every Pell wall with witness inside the oracle box is found
            for (ray_vec, (_, c)) in pell_rays.iter().zip(
                flop_solutions(&bi(d), &divisorial_boundary(&bi(d)).unwrap().0)
                    .unwrap()
                    .iter(),
            ) {
                if c <= &bi(bound) {
                    assert!(oracle_rays.contains(ray_vec), "d = {}", d);
                }
            }
        }
    }
}
