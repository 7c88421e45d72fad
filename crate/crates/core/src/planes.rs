//! Numeric Lagrangian-plane criteria and certificate searches.
//!
//! A line class of a Lagrangian n-plane satisfies (R, R) = -(n+3)/2 and
//! 2R integral. The certificate search inverts the projection: the only
//! integral candidates are s = R + v/2 and v - s, and a valid s is spherical
//! with (s, v) = v^2/2, spanning the wall H = sat<v, s>.

use crate::lattice::{to_qvec, IntLattice, LVec, LatticeError, QVec};
use crate::mat::Mat;
use crate::mukai::{theta_dual, CurveClass, PointedPeriod};
use crate::scalar::{int, ratio_of, LatticeInt, Rational};
use crate::walls::{is_p_type, PTypeVerdict, PointedSublattice};
use std::collections::BTreeMap;

/// Outcome of the numeric line-class test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumericVerdict<I: LatticeInt> {
    Pass,
    FailSquare {
        got: Rational<I>,
        want: Rational<I>,
    },
    FailIntegrality,
}

impl<I: LatticeInt> NumericVerdict<I> {
    pub fn passed(&self) -> bool {
        matches!(self, NumericVerdict::Pass)
    }
}

/// (R, R) = -(n+3)/2 exactly and 2R integral.
pub fn numeric_criteria<I: LatticeInt>(
    n: &I,
    lattice: &IntLattice<I>,
    r: &QVec<I>,
) -> Result<NumericVerdict<I>, LatticeError> {
    if n < &int(2) {
        return Err(LatticeError::Other("need n >= 2".into()));
    }
    let want = ratio_of(-(n.clone() + int::<I>(3)), int::<I>(2));
    let got = lattice.pair(r, r)?;
    if got != want {
        return Ok(NumericVerdict::FailSquare { got, want });
    }
    let two = Rational::from_integer(int::<I>(2));
    let integral = r.iter().all(|x| (x.clone() * two.clone()).denom().is_one());
    if !integral {
        return Ok(NumericVerdict::FailIntegrality);
    }
    Ok(NumericVerdict::Pass)
}

/// Certificate that R is the theta-dual of a spherical class on a wall.
#[derive(Clone, Debug)]
pub struct PlaneCertificate<I: LatticeInt> {
    pub wall: PointedSublattice<I>,
    /// Spherical class with theta_dual(s) = R, ambient coordinates.
    pub s: LVec<I>,
    pub p_type: PTypeVerdict<I>,
}

/// Search for a spherical s with s^2 = -2, |(s, v)| = v^2/2 and
/// theta_dual(s) = +/- R. The only candidate lifts are R + v/2 and
/// -R + v/2 = v - (R + v/2); both are integral or neither is.
pub fn plane_line_certificate<I: LatticeInt>(
    period: &PointedPeriod<I>,
    r: &CurveClass<I>,
) -> Result<Option<PlaneCertificate<I>>, LatticeError> {
    if r.is_zero() {
        return Ok(None);
    }
    let half = Rational::from_integer(int::<I>(2)).recip();
    let vq = to_qvec(period.v());
    let cand: QVec<I> = r
        .coords()
        .iter()
        .zip(&vq)
        .map(|(x, v)| x.clone() + half.clone() * v.clone())
        .collect();
    let s = match crate::lattice::to_lvec(&cand) {
        Some(s) => s,
        None => return Ok(None),
    };
    let ss = period.lattice().pair_int(&s, &s)?;
    if ss != int::<I>(-2) {
        return Ok(None);
    }
    let sv = period.lattice().pair_int(&s, &period.v().to_vec())?;
    let half_sq = period.v_square().div_floor(&int::<I>(2));
    if sv.abs() != half_sq {
        return Ok(None);
    }
    debug_assert_eq!(theta_dual(period, &s)?, *r);
    let wall = PointedSublattice::from_span(period, &[s.clone()])?;
    let p_type = is_p_type(&wall)?;
    Ok(Some(PlaneCertificate { wall, s, p_type }))
}

/// One candidate extremal-curve generator from the Mori-cone description.
#[derive(Clone, Debug)]
pub struct MoriGenerator<I: LatticeInt> {
    /// Witness class in the ambient lattice.
    pub class: LVec<I>,
    pub curve: CurveClass<I>,
    pub spherical: bool,
    pub isotropic: bool,
    /// |(a, v)| = v^2/2: the plane-type pairing.
    pub extremal_pairing: bool,
}

/// All classes a in the coordinate box with a^2 >= -2, |(a, v)| <= v^2/2 and
/// (ample, theta_dual(a)) > 0, deduplicated up to positive scaling of the
/// projected curve class. Complete within the box only.
pub fn mori_extremal_generators<I: LatticeInt>(
    period: &PointedPeriod<I>,
    ample: &QVec<I>,
    bound: &I,
    max_cells: u64,
) -> Result<Vec<MoriGenerator<I>>, LatticeError> {
    if !bound.is_positive() {
        return Err(LatticeError::Other("box bound must be >= 1".into()));
    }
    let lattice = period.lattice();
    let rank = lattice.rank();
    if ample.len() != rank {
        return Err(LatticeError::DimensionMismatch {
            expected: rank,
            got: ample.len(),
        });
    }
    let vsq = period.v_square();
    let aq = lattice.pair(ample, ample)?;
    if !aq.numer().is_positive() {
        return Err(LatticeError::Other(
            "ample class must have positive square".into(),
        ));
    }
    // clear denominators: positive scaling does not change sign tests
    let denom_lcm = ample
        .iter()
        .fold(I::one(), |acc, x| acc.lcm(x.denom()));
    let ample_int: LVec<I> = ample
        .iter()
        .map(|x| (x.clone() * Rational::from_integer(denom_lcm.clone())).numer().clone())
        .collect();

    let func_v = lattice.pairing_functional(period.v())?;
    let func_a = lattice.pairing_functional(&ample_int)?;
    let av = lattice.pair_int(&ample_int, period.v())?;
    let half = vsq.div_floor(&int::<I>(2));

    // the coordinate with the largest |(b_j, v)| carries the pairing window
    let pivot = (0..rank)
        .max_by(|&i, &j| func_v[i].abs().cmp(&func_v[j].abs()))
        .expect("rank >= 1");
    if func_v[pivot].is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let width = bound.clone() * int::<I>(2) + I::one();
    let window: I = int::<I>(2) * half.clone() / func_v[pivot].abs() + I::one();
    let mut cells = window
        .to_u64()
        .unwrap_or(u64::MAX);
    for _ in 0..rank - 1 {
        cells = cells.saturating_mul(width.to_u64().unwrap_or(u64::MAX));
    }
    if cells > max_cells {
        return Err(LatticeError::BoxTooLarge);
    }

    let mut best: BTreeMap<LVec<I>, (u8, LVec<I>)> = BTreeMap::new();
    let mut coords = vec![-bound.clone(); rank];
    coords[pivot] = I::zero();
    'outer: loop {
        // partial pairing over non-pivot coordinates
        let mut partial = I::zero();
        for j in 0..rank {
            if j != pivot {
                partial = partial + coords[j].clone() * func_v[j].clone();
            }
        }
        // window for the pivot coordinate: |partial + g * x| <= half
        let g = &func_v[pivot];
        let lo_num = -half.clone() - partial.clone();
        let hi_num = half.clone() - partial.clone();
        let (mut x_lo, mut x_hi) = if g.is_positive() {
            (lo_num.div_ceil(g), hi_num.div_floor(g))
        } else {
            (hi_num.div_ceil(g), lo_num.div_floor(g))
        };
        if x_lo < -bound.clone() {
            x_lo = -bound.clone();
        }
        if x_hi > *bound {
            x_hi = bound.clone();
        }
        let mut x = x_lo;
        while x <= x_hi {
            coords[pivot] = x.clone();
            consider_candidate(
                lattice, period, &coords, &func_v, &func_a, &av, &vsq, &half, &mut best,
            )?;
            x = x + I::one();
        }

        // odometer over the non-pivot coordinates
        let mut j = 0;
        loop {
            if j == rank {
                break 'outer;
            }
            if j == pivot {
                j += 1;
                continue;
            }
            coords[j] = coords[j].clone() + I::one();
            if coords[j] <= *bound {
                break;
            }
            coords[j] = -bound.clone();
            j += 1;
        }
    }

    let mut out = Vec::new();
    for (_, (_, class)) in best {
        let curve = theta_dual(period, &class)?;
        let sq = lattice.pair_int(&class, &class)?;
        let pv = lattice.pair_int(&class, period.v())?;
        out.push(MoriGenerator {
            spherical: sq == int::<I>(-2),
            isotropic: sq.is_zero(),
            extremal_pairing: pv.abs() == half,
            class,
            curve,
        });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn consider_candidate<I: LatticeInt>(
    lattice: &IntLattice<I>,
    period: &PointedPeriod<I>,
    coords: &[I],
    func_v: &[I],
    func_a: &[I],
    av: &I,
    vsq: &I,
    half: &I,
    best: &mut BTreeMap<LVec<I>, (u8, LVec<I>)>,
) -> Result<(), LatticeError> {
    if coords.iter().all(|x| x.is_zero()) {
        return Ok(());
    }
    let pv: I = coords
        .iter()
        .zip(func_v)
        .fold(I::zero(), |acc, (x, f)| acc + x.clone() * f.clone());
    debug_assert!(pv.abs() <= *half);
    let sq = lattice.pair_int(coords, coords)?;
    if sq < int::<I>(-2) {
        return Ok(());
    }
    // (ample, theta_dual(a)) > 0, scaled by v^2 > 0
    let pa: I = coords
        .iter()
        .zip(func_a)
        .fold(I::zero(), |acc, (x, f)| acc + x.clone() * f.clone());
    let positivity = vsq.clone() * pa - pv.clone() * av.clone();
    if !positivity.is_positive() {
        return Ok(());
    }
    // primitive direction of theta_dual(a), scaled by v^2
    let dir: LVec<I> = coords
        .iter()
        .zip(period.v())
        .map(|(x, v)| vsq.clone() * x.clone() - pv.clone() * v.clone())
        .collect();
    if dir.iter().all(|x| x.is_zero()) {
        return Ok(());
    }
    let content = IntLattice::<I>::content(&dir);
    let key: LVec<I> = dir.into_iter().map(|x| x.div_floor(&content)).collect();
    // representative preference: spherical, then isotropic; positive pairing
    // with v before negative; then lexicographic
    let quality = if sq == int::<I>(-2) {
        0u8
    } else if sq.is_zero() {
        2
    } else {
        4
    } + if pv.is_negative() { 1 } else { 0 };
    match best.get(&key) {
        Some((q, c)) if (*q, c.as_slice()) <= (quality, coords) => {}
        _ => {
            best.insert(key, (quality, coords.to_vec()));
        }
    }
    Ok(())
}

/// A hyperbolic-plane pair inside a curve lattice: (f, f) = 0, (f, R) = 1,
/// (R, R) = -(n+3)/2, both inside the coordinate box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationSection<I: LatticeInt> {
    pub f: LVec<I>,
    pub r: LVec<I>,
    /// [[0, 1], [1, -(n+3)/2]] by construction.
    pub pair_gram: [[Rational<I>; 2]; 2],
}

/// Search a rational-formed lattice (integer coordinates, possibly
/// half-integral pairings) for the fibration-with-section sublattice.
/// Deterministic: R is oriented positively against the first basis vector
/// pairing nontrivially with it, and the lexicographically least valid
/// (R, f) pair wins.
pub fn fibration_section_search<I: LatticeInt>(
    n: &I,
    gram: &Mat<Rational<I>>,
    bound: &I,
    max_cells: u64,
) -> Result<Option<FibrationSection<I>>, LatticeError> {
    if n < &int(2) {
        return Err(LatticeError::Other("need n >= 2".into()));
    }
    if !bound.is_positive() {
        return Err(LatticeError::Other("box bound must be >= 1".into()));
    }
    let rank = gram.rows;
    if rank < 2 {
        return Ok(None);
    }
    // scale to an integer gram: pair_scaled = scale * pair
    let mut scale = I::one();
    for i in 0..rank {
        for j in 0..rank {
            scale = scale.lcm(gram[(i, j)].denom());
        }
    }
    let mut g_int = Mat::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            let x = gram[(i, j)].clone() * Rational::from_integer(scale.clone());
            g_int[(i, j)] = x.numer().clone();
        }
    }
    // target for (R, R): -(n+3)/2 * scale must be integral
    let target_r = ratio_of(
        -(n.clone() + int::<I>(3)) * scale.clone(),
        int::<I>(2),
    );
    if !target_r.denom().is_one() {
        return Ok(None);
    }
    let target_r = target_r.numer().clone();

    let width = bound.clone() * int::<I>(2) + I::one();
    let mut cells: u64 = 1;
    for _ in 0..rank {
        cells = cells.saturating_mul(width.to_u64().unwrap_or(u64::MAX));
    }
    if cells.saturating_mul(2) > max_cells {
        return Err(LatticeError::BoxTooLarge);
    }

    let pair_scaled = |a: &[I], b: &[I]| -> I {
        let gb = g_int.mul_vec(b);
        a.iter()
            .zip(&gb)
            .fold(I::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };

    // isotropic candidates
    let mut fs: Vec<LVec<I>> = Vec::new();
    scan_box(rank, bound, |v| {
        if !v.iter().all(|x| x.is_zero()) && pair_scaled(v, v).is_zero() {
            fs.push(v.to_vec());
        }
        true
    });
    let mut pairs: Vec<(LVec<I>, LVec<I>)> = Vec::new();
    for f in &fs {
        scan_box(rank, bound, |r| {
            if pair_scaled(f, r) == scale && pair_scaled(r, r) == target_r {
                pairs.push((f.clone(), r.to_vec()));
            }
            true
        });
    }
    // orient each pair and pick the canonical least
    let mut canon: Vec<(LVec<I>, LVec<I>)> = Vec::new();
    for (f, r) in pairs {
        let sign = (0..rank)
            .map(|i| {
                let e: LVec<I> = (0..rank)
                    .map(|j| if i == j { I::one() } else { I::zero() })
                    .collect();
                pair_scaled(&r, &e)
            })
            .find(|x| !x.is_zero());
        let flip = matches!(sign, Some(s) if s.is_negative());
        if flip {
            canon.push((
                f.iter().map(|x| -x.clone()).collect(),
                r.iter().map(|x| -x.clone()).collect(),
            ));
        } else {
            canon.push((f, r));
        }
    }
    canon.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    canon.dedup();
    match canon.into_iter().next() {
        None => Ok(None),
        Some((f, r)) => {
            let qpair = |a: &[I], b: &[I]| {
                ratio_of(pair_scaled(a, b), scale.clone())
            };
            let pair_gram = [
                [qpair(&f, &f), qpair(&f, &r)],
                [qpair(&r, &f), qpair(&r, &r)],
            ];
            Ok(Some(FibrationSection { f, r, pair_gram }))
        }
    }
}

/// Visit every integer vector in [-bound, bound]^rank.
fn scan_box<I: LatticeInt>(rank: usize, bound: &I, mut visit: impl FnMut(&[I]) -> bool) {
    let mut coords = vec![-bound.clone(); rank];
    loop {
        if !visit(&coords) {
            return;
        }
        let mut j = 0;
        loop {
            if j == rank {
                return;
            }
            coords[j] = coords[j].clone() + I::one();
            if coords[j] <= *bound {
                break;
            }
            coords[j] = -bound.clone();
            j += 1;
        }
    }
}
