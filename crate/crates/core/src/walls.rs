//! Pointed sublattices as potential walls.
//!
//! A wall datum is a saturated rank-2 hyperbolic sublattice H of a pointed
//! period containing the distinguished vector v. Wall kinds are read off
//! from the classes H contains: a spherical class orthogonal to v
//! (Brill-Noether), a primitive isotropic class of pairing 1 or 2 with v
//! (Hilbert-Chow / Li-Gieseker-Uhlenbeck), or a spherical class with
//! |(s,v)| = v^2/2 and none smaller (plane-type flop). One H can match
//! several kinds at once.

pub mod strata;

use crate::lattice::{lex_positive, to_qvec, vec_is_zero, IntLattice, LVec, LatticeError, QVec};
use crate::mat::Mat;
use crate::mukai::{CurveClass, PointedPeriod};
use crate::quadform::{solve_on_line, BinaryForm};
use crate::scalar::{int, isqrt, LatticeInt};
use num_traits::{Zero};
use std::collections::BTreeSet;

/// Saturated rank-2 sublattice of a pointed period, containing the pointed
/// vector, together with an effective-cone anchor ray.
#[derive(Clone, Debug)]
pub struct PointedSublattice<I: LatticeInt> {
    ambient: PointedPeriod<I>,
    basis: Vec<LVec<I>>,
    gram: Mat<I>,
    v_coords: LVec<I>,
    anchor_coords: LVec<I>,
}

impl<I: LatticeInt> PointedSublattice<I> {
    /// H = saturation of span{v, extra...}; must have rank 2.
    pub fn from_span(
        ambient: &PointedPeriod<I>,
        extra: &[LVec<I>],
    ) -> Result<Self, LatticeError> {
        let mut span = vec![ambient.v().to_vec()];
        for e in extra {
            if !span.iter().any(|s| s == e) {
                span.push(e.clone());
            }
        }
        let basis = ambient.lattice().saturate(&span)?;
        if basis.len() != 2 {
            return Err(LatticeError::BadShape);
        }
        Self::from_basis(ambient.clone(), basis)
    }

    fn from_basis(ambient: PointedPeriod<I>, basis: Vec<LVec<I>>) -> Result<Self, LatticeError> {
        let mut gram = Mat::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                gram[(i, j)] = ambient.lattice().pair_int(&basis[i], &basis[j])?;
            }
        }
        let v_coords = coords_in_basis(ambient.lattice(), &basis, ambient.v())?;
        Ok(PointedSublattice {
            ambient,
            basis,
            gram,
            anchor_coords: v_coords.clone(),
            v_coords,
        })
    }

    /// Abstract pointed rank-2 lattice: the ambient period is the lattice
    /// itself. Convention: when a sublattice is given by its Gram matrix,
    /// the pointed vector is the first basis vector unless stated otherwise.
    pub fn from_gram(gram: Mat<I>, v_coords: LVec<I>) -> Result<Self, LatticeError> {
        let lattice = IntLattice::new(gram.clone())?;
        if gram.rows != 2 {
            return Err(LatticeError::BadShape);
        }
        let ambient = PointedPeriod::new(lattice, v_coords.clone())?;
        Ok(PointedSublattice {
            ambient,
            basis: Mat::<I>::identity(2).to_rows(),
            gram,
            anchor_coords: v_coords.clone(),
            v_coords,
        })
    }

    pub fn ambient(&self) -> &PointedPeriod<I> {
        &self.ambient
    }

    pub fn basis(&self) -> &[LVec<I>] {
        &self.basis
    }

    pub fn gram(&self) -> &Mat<I> {
        &self.gram
    }

    pub fn v_coords(&self) -> &[I] {
        &self.v_coords
    }

    pub fn anchor_coords(&self) -> &[I] {
        &self.anchor_coords
    }

    /// Re-point at another vector of H (keeps the effective-cone anchor).
    pub fn with_pointed_at(&self, v_coords: LVec<I>) -> Result<Self, LatticeError> {
        let vv = self.pair_h(&v_coords, &v_coords);
        if !vv.is_positive()
            || !vv.mod_floor(&int::<I>(2)).is_zero()
            || !IntLattice::<I>::is_primitive(&v_coords)
        {
            return Err(LatticeError::BadPointedVector);
        }
        let mut out = self.clone();
        out.v_coords = v_coords;
        Ok(out)
    }

    /// Replace the effective-cone anchor (must be timelike, same cone as v).
    pub fn with_anchor(&self, anchor_coords: LVec<I>) -> Result<Self, LatticeError> {
        if !self.pair_h(&anchor_coords, &anchor_coords).is_positive()
            || !self.pair_h(&anchor_coords, &self.v_coords).is_positive()
        {
            return Err(LatticeError::Other(
                "anchor must have positive square and pair positively with v".into(),
            ));
        }
        let mut out = self.clone();
        out.anchor_coords = anchor_coords;
        Ok(out)
    }

    /// Pairing of two vectors given in H coordinates.
    pub fn pair_h(&self, a: &[I], b: &[I]) -> I {
        let gb = self.gram.mul_vec(b);
        a.iter()
            .zip(&gb)
            .fold(I::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    pub fn form(&self) -> BinaryForm<I> {
        BinaryForm::from_gram(&self.gram).expect("rank-2 wall gram is nondegenerate")
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.gram.det().is_negative()
    }

    pub fn require_hyperbolic(&self) -> Result<(), LatticeError> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(LatticeError::NotHyperbolic)
        }
    }

    pub fn v_square(&self) -> I {
        self.pair_h(&self.v_coords, &self.v_coords)
    }

    /// H coordinates to ambient coordinates.
    pub fn to_ambient(&self, h_coords: &[I]) -> LVec<I> {
        let n = self.ambient.lattice().rank();
        let mut out = vec![I::zero(); n];
        for (c, b) in h_coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }

    /// Ambient coordinates to H coordinates (errors when outside H).
    pub fn to_h_coords(&self, ambient: &[I]) -> Result<LVec<I>, LatticeError> {
        coords_in_basis(self.ambient.lattice(), &self.basis, ambient)
    }

    /// The pointed vector as an ambient vector.
    pub fn v_ambient(&self) -> LVec<I> {
        self.to_ambient(&self.v_coords)
    }

    /// Pointed period at this sublattice's pointed vector (the ambient period
    /// itself when the pointed vectors agree).
    pub fn period_at_v(&self) -> Result<PointedPeriod<I>, LatticeError> {
        let va = self.v_ambient();
        if va == self.ambient.v() {
            Ok(self.ambient.clone())
        } else {
            PointedPeriod::new(self.ambient.lattice().clone(), va)
        }
    }
}

/// Express `target` in the given basis rows; coordinates must be integral.
fn coords_in_basis<I: LatticeInt>(
    lattice: &IntLattice<I>,
    basis: &[LVec<I>],
    target: &[I],
) -> Result<LVec<I>, LatticeError> {
    let cols = Mat::from_rows(basis.to_vec()).transpose();
    let rhs = to_qvec(target);
    let sol = cols
        .solve_rational(&rhs)
        .ok_or(LatticeError::OutsideSpan)?;
    let _ = lattice;
    crate::lattice::to_lvec(&sol).ok_or(LatticeError::OutsideSpan)
}

/// All w in H with w^2 = -2 and |(w, v)| <= target, in H coordinates,
/// sorted lexicographically. Exhaustive: for each pairing value the solutions
/// lie on a line whose direction is negative definite, so a quadratic in one
/// variable decides everything.
pub fn spherical_with_pairing<I: LatticeInt>(
    h: &PointedSublattice<I>,
    target: &I,
) -> Result<Vec<LVec<I>>, LatticeError> {
    classes_with_pairing_in(h, &int::<I>(-2), target)
}

/// All w in H with w^2 = square and |(w, v)| <= target.
pub fn classes_with_pairing_in<I: LatticeInt>(
    h: &PointedSublattice<I>,
    square: &I,
    target: &I,
) -> Result<Vec<LVec<I>>, LatticeError> {
    h.require_hyperbolic()?;
    let form = h.form();
    let func = h.gram.mul_vec(&h.v_coords);
    let mut out = BTreeSet::new();
    let mut p = -target.clone();
    while &p <= target {
        for (x, y) in solve_on_line(&form, square, &func[0], &func[1], &p)? {
            out.insert(vec![x, y]);
        }
        p = p + I::one();
    }
    Ok(out.into_iter().collect())
}

/// All w in H with w^2 = square and (w, v) exactly p.
pub fn classes_with_exact_pairing<I: LatticeInt>(
    h: &PointedSublattice<I>,
    square: &I,
    p: &I,
) -> Result<Vec<LVec<I>>, LatticeError> {
    h.require_hyperbolic()?;
    let form = h.form();
    let func = h.gram.mul_vec(&h.v_coords);
    let mut sols: Vec<LVec<I>> = solve_on_line(&form, square, &func[0], &func[1], p)?
        .into_iter()
        .map(|(x, y)| vec![x, y])
        .collect();
    sols.sort();
    Ok(sols)
}

/// Wall kinds a pointed sublattice can match.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WallKind {
    BrillNoether,
    HilbertChow,
    LiGiesekerUhlenbeck,
    FlopPType,
    FlopOther,
    NoWallCondition,
}

impl WallKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WallKind::BrillNoether => "BrillNoether",
            WallKind::HilbertChow => "HilbertChow",
            WallKind::LiGiesekerUhlenbeck => "LiGiesekerUhlenbeck",
            WallKind::FlopPType => "FlopPType",
            WallKind::FlopOther => "FlopOther",
            WallKind::NoWallCondition => "NoWallCondition",
        }
    }
}

/// A class certifying one wall condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallWitness<I> {
    /// H coordinates, lexicographically positive representative.
    pub class: LVec<I>,
    pub square: I,
    pub pairing: I,
    pub kind: WallKind,
}

/// Set of matched wall kinds with certifying classes.
#[derive(Clone, Debug)]
pub struct WallReport<I> {
    pub matched: BTreeSet<WallKind>,
    pub witnesses: Vec<WallWitness<I>>,
}

/// Classify which wall conditions H satisfies.
pub fn classify_wall<I: LatticeInt>(
    h: &PointedSublattice<I>,
) -> Result<WallReport<I>, LatticeError> {
    h.require_hyperbolic()?;
    let half = h.v_square().div_floor(&int::<I>(2));
    let mut matched = BTreeSet::new();
    let mut witnesses = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |w: WallWitness<I>, matched: &mut BTreeSet<WallKind>| {
        matched.insert(w.kind);
        if seen.insert((w.kind, w.class.clone())) {
            witnesses.push(w);
        }
    };

    let sphericals = spherical_with_pairing(h, &half)?;
    for w in &sphericals {
        let p = h.pair_h(w, &h.v_coords);
        if p.is_zero() {
            push(
                WallWitness {
                    class: lex_positive(w),
                    square: int(-2),
                    pairing: I::zero(),
                    kind: WallKind::BrillNoether,
                },
                &mut matched,
            );
        }
    }

    let ptype = is_p_type(h)?;
    if ptype.is_p_type {
        if let Some(s) = &ptype.witness {
            push(
                WallWitness {
                    class: s.clone(),
                    square: int(-2),
                    pairing: h.pair_h(s, &h.v_coords),
                    kind: WallKind::FlopPType,
                },
                &mut matched,
            );
        }
    } else if let Some(s) = sphericals
        .iter()
        .find(|w| !h.pair_h(w, &h.v_coords).is_zero())
    {
        push(
            WallWitness {
                class: s.clone(),
                square: int(-2),
                pairing: h.pair_h(s, &h.v_coords),
                kind: WallKind::FlopOther,
            },
            &mut matched,
        );
    }

    for (pv, kind) in [
        (I::one(), WallKind::HilbertChow),
        (int::<I>(2), WallKind::LiGiesekerUhlenbeck),
    ] {
        for sign in [pv.clone(), -pv.clone()] {
            for w in classes_with_exact_pairing(h, &I::zero(), &sign)? {
                if vec_is_zero(&w) || !IntLattice::<I>::is_primitive(&w) {
                    continue;
                }
                push(
                    WallWitness {
                        class: lex_positive(&w),
                        square: I::zero(),
                        pairing: sign.clone(),
                        kind,
                    },
                    &mut matched,
                );
            }
        }
    }

    if matched.is_empty() {
        matched.insert(WallKind::NoWallCondition);
    }
    witnesses.sort_by(|a, b| (a.kind, &a.class).cmp(&(b.kind, &b.class)));
    Ok(WallReport { matched, witnesses })
}

/// Verdict of the plane-type test with its certificate.
#[derive(Clone, Debug)]
pub struct PTypeVerdict<I> {
    pub is_p_type: bool,
    /// Spherical class with |(s, v)| = v^2/2, when one exists.
    pub witness: Option<LVec<I>>,
    /// Spherical class with |(s', v)| < v^2/2, when one exists.
    pub violator: Option<LVec<I>>,
}

/// H is plane-type iff a spherical class pairs to exactly v^2/2 with v and
/// no spherical class pairs strictly smaller in absolute value.
pub fn is_p_type<I: LatticeInt>(
    h: &PointedSublattice<I>,
) -> Result<PTypeVerdict<I>, LatticeError> {
    h.require_hyperbolic()?;
    let half = h.v_square().div_floor(&int::<I>(2));
    let sphericals = spherical_with_pairing(h, &half)?;
    let witness = classes_with_exact_pairing(h, &int::<I>(-2), &half)?
        .first()
        .cloned();
    let mut violator = None;
    for w in &sphericals {
        let p = h.pair_h(w, &h.v_coords).abs();
        if p < half && violator.is_none() {
            violator = Some(lex_positive(w));
        }
    }
    Ok(PTypeVerdict {
        is_p_type: witness.is_some() && violator.is_none(),
        witness,
        violator,
    })
}

/// Reflection rho_s(x) = x + (x, s) s in H coordinates (s spherical).
pub fn reflect_h<I: LatticeInt>(h: &PointedSublattice<I>, x: &[I], s: &[I]) -> LVec<I> {
    debug_assert_eq!(h.pair_h(s, s), int::<I>(-2));
    let xs = h.pair_h(x, s);
    crate::lattice::vec_add_mul(x, &xs, s)
}

/// A spherical class w with (w, anchor) >= 0 (effective side) and
/// (w, v) < 0, if one exists. Complete: any separating spherical lies on the
/// compact hyperbola arc between the anchor and v hyperplanes, where
/// |(w, v)| is maximized at the anchor-orthogonal endpoint with value
/// sqrt(2/q) |(u, v)| for u a generator of anchor^perp and q = -u^2.
fn find_separating_spherical<I: LatticeInt>(
    h: &PointedSublattice<I>,
    v_cur: &[I],
) -> Result<Option<LVec<I>>, LatticeError> {
    let anchor = h.anchor_coords.clone();
    let func_anchor = h.gram.mul_vec(&anchor);
    let u = {
        let k = crate::mat::integer_kernel(&Mat::from_rows(vec![func_anchor.clone()]));
        debug_assert_eq!(k.rows, 1);
        k.to_rows().remove(0)
    };
    let q = -h.pair_h(&u, &u);
    if !q.is_positive() {
        return Err(LatticeError::NotHyperbolic);
    }
    let uv = h.pair_h(&u, v_cur);
    let bound = isqrt(&(int::<I>(2) * uv.clone() * uv / q)) + I::one();
    let form = h.form();
    let func_v = h.gram.mul_vec(v_cur);
    // deepest separating wall first: most negative pairing, then lex order
    let mut p = -bound;
    while p <= -I::one() {
        for (x, y) in solve_on_line(&form, &int::<I>(-2), &func_v[0], &func_v[1], &p)? {
            let w = vec![x, y];
            let wa = h.pair_h(&w, &anchor);
            let effective = wa.is_positive() || (wa.is_zero() && lex_positive(&w) == w);
            if effective {
                return Ok(Some(w));
            }
        }
        p = p + I::one();
    }
    Ok(None)
}

/// Minimal representative of the pointed vector under spherical reflections,
/// plus the reflection classes (ambient coordinates) whose in-order
/// application maps the minimal vector back to the input one.
pub fn minimalize<I: LatticeInt>(
    h: &PointedSublattice<I>,
) -> Result<(LVec<I>, Vec<LVec<I>>), LatticeError> {
    h.require_hyperbolic()?;
    let mut v_cur = h.v_coords.clone();
    let mut word: Vec<LVec<I>> = Vec::new();
    let mut guard = 0usize;
    while let Some(w) = find_separating_spherical(h, &v_cur)? {
        v_cur = reflect_h(h, &v_cur, &w);
        word.push(w);
        guard += 1;
        if guard > 10_000 {
            return Err(LatticeError::Other(
                "reflection reduction failed to terminate".into(),
            ));
        }
    }
    word.reverse();
    Ok((
        h.to_ambient(&v_cur),
        word.into_iter().map(|w| h.to_ambient(&w)).collect(),
    ))
}

/// True iff the pointed vector is minimal: no effective spherical class
/// pairs negatively with it.
pub fn is_minimal<I: LatticeInt>(h: &PointedSublattice<I>) -> Result<bool, LatticeError> {
    Ok(find_separating_spherical(h, &h.v_coords)?.is_none())
}

/// The two spherical classes s, t with v = s + t and
/// (s, v) = (t, v) = v^2/2, as ambient vectors. Requires plane type and a
/// minimal pointed vector; s is the candidate with the smaller first (then
/// second) H coordinate.
pub fn decompose_v<I: LatticeInt>(
    h: &PointedSublattice<I>,
) -> Result<(LVec<I>, LVec<I>), LatticeError> {
    let verdict = is_p_type(h)?;
    if !verdict.is_p_type {
        return Err(LatticeError::NotPType);
    }
    if !is_minimal(h)? {
        return Err(LatticeError::NotMinimal);
    }
    let half = h.v_square().div_floor(&int::<I>(2));
    let mut cands = classes_with_exact_pairing(h, &int::<I>(-2), &half)?;
    cands.sort();
    if cands.len() != 2 {
        return Err(LatticeError::Other(format!(
            "expected exactly two decomposition classes, found {}",
            cands.len()
        )));
    }
    let s = cands[0].clone();
    let t = cands[1].clone();
    // Lemma-shape identity: t = v - s and t^2 = v^2 - 2(s,v) - 2 = -2
    let vt: Vec<I> = h
        .v_coords
        .iter()
        .zip(&s)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    assert_eq!(vt, t, "decomposition classes must sum to v");
    assert_eq!(h.pair_h(&t, &t), int::<I>(-2));
    Ok((h.to_ambient(&s), h.to_ambient(&t)))
}

/// Line class of the plane-type wall: theta-dual projection of s, with the
/// sign fixed by pairing positively against `positive` when supplied.
/// The returned flag records primitivity: s and t generate H, equivalently
/// the parallelogram 0, s, t, v has no interior lattice point.
pub fn line_class<I: LatticeInt>(
    h: &PointedSublattice<I>,
    positive: Option<&QVec<I>>,
) -> Result<(CurveClass<I>, bool), LatticeError> {
    let (s_amb, t_amb) = decompose_v(h)?;
    let period = h.period_at_v()?;
    let mut r = crate::mukai::theta_dual(&period, &s_amb)?;
    if let Some(pos) = positive {
        let sign = period.lattice().pair(r.coords(), pos)?;
        if sign.is_zero() {
            return Err(LatticeError::Other(
                "orientation class is orthogonal to the line class".into(),
            ));
        }
        if sign.numer().is_negative() {
            r = r.negate();
        }
    }
    let s_h = h.to_h_coords(&s_amb)?;
    let t_h = h.to_h_coords(&t_amb)?;
    let det = s_h[0].clone() * t_h[1].clone() - s_h[1].clone() * t_h[0].clone();
    let primitive = det.abs() == I::one();
    // Mori-cone sanity: (R, R) >= -(n+3)/2 always holds for these classes
    let n = period.half_dim();
    let rr = r.square(&period)?;
    let lower = crate::scalar::ratio_of(-(n + int::<I>(3)), int::<I>(2));
    assert!(rr >= lower, "line class violates the extremal square bound");
    Ok((r, primitive))
}
