//! Partitions of the pointed vector and their strata.
//!
//! A partition v = sum a_i into effective-cone classes with each a_i^2 >= -2
//! corresponds to a locally closed stratum of objects with those
//! Jordan-Holder factors. For a partition into two distinct spherical
//! classes, P = [x s + y t], the stratum is a projective space when
//! x = y = 1, a Grassmannian Gr(x, (s,t)) when exactly one multiplicity is 1,
//! and the dimension bound is xy((s,t) - xy) either way.

use super::{is_minimal, is_p_type, line_class, PointedSublattice};
use crate::lattice::{LVec, LatticeError};
use crate::mukai::CurveClass;
use crate::scalar::{int, LatticeInt, Rational};
use num_traits::{Signed, Zero};

/// Multiset of parts (H coordinates) with multiplicities, summing to v.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition<I> {
    parts: Vec<(LVec<I>, usize)>,
}

impl<I: LatticeInt> Partition<I> {
    /// Canonical form: parts sorted, multiplicities merged.
    pub fn new(mut parts: Vec<(LVec<I>, usize)>) -> Self {
        parts.retain(|(_, m)| *m > 0);
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(LVec<I>, usize)> = Vec::new();
        for (p, m) in parts {
            match merged.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => merged.push((p, m)),
            }
        }
        Partition { parts: merged }
    }

    pub fn parts(&self) -> &[(LVec<I>, usize)] {
        &self.parts
    }

    pub fn total_parts(&self) -> usize {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.total_parts() == 1
    }

    pub fn sum(&self) -> LVec<I> {
        let mut acc = vec![I::zero(); 2];
        for (p, m) in &self.parts {
            let mi: I = int(*m as i64);
            for (a, b) in acc.iter_mut().zip(p) {
                *a = a.clone() + mi.clone() * b.clone();
            }
        }
        acc
    }

    pub fn to_ambient(&self, h: &PointedSublattice<I>) -> Vec<(LVec<I>, usize)> {
        self.parts
            .iter()
            .map(|(p, m)| (h.to_ambient(p), *m))
            .collect()
    }
}

/// Rational cone coordinates of x with respect to two independent rays.
fn cone_coords<I: LatticeInt>(
    rays: &(LVec<I>, LVec<I>),
    x: &[I],
) -> Option<(Rational<I>, Rational<I>)> {
    let (r1, r2) = rays;
    let det = r1[0].clone() * r2[1].clone() - r1[1].clone() * r2[0].clone();
    if det.is_zero() {
        return None;
    }
    let det = Rational::from_integer(det);
    let a = Rational::from_integer(x[0].clone() * r2[1].clone() - x[1].clone() * r2[0].clone())
        / det.clone();
    let b = Rational::from_integer(r1[0].clone() * x[1].clone() - r1[1].clone() * x[0].clone())
        / det;
    Some((a, b))
}

/// All partitions of v into nonzero classes of the closed cone spanned by
/// the two rays (H coordinates), each part of square >= -2. Exhaustive;
/// includes the trivial partition [v].
pub fn enumerate_partitions<I: LatticeInt>(
    h: &PointedSublattice<I>,
    ray1: &LVec<I>,
    ray2: &LVec<I>,
) -> Result<Vec<Partition<I>>, LatticeError> {
    let rays = (ray1.clone(), ray2.clone());
    let (av, bv) = cone_coords(&rays, h.v_coords())
        .ok_or(LatticeError::DependentGenerators)?;
    if av.is_negative() || bv.is_negative() {
        return Err(LatticeError::OutsideCone);
    }
    // lattice points of the parallelogram {alpha in [0, av], beta in [0, bv]}
    let corners: Vec<(Rational<I>, Rational<I>)> = vec![
        (Rational::zero(), Rational::zero()),
        (av.clone(), Rational::zero()),
        (Rational::zero(), bv.clone()),
        (av.clone(), bv.clone()),
    ];
    let corner_pts: Vec<Vec<Rational<I>>> = corners
        .iter()
        .map(|(a, b)| {
            (0..2)
                .map(|i| {
                    a.clone() * Rational::from_integer(rays.0[i].clone())
                        + b.clone() * Rational::from_integer(rays.1[i].clone())
                })
                .collect()
        })
        .collect();
    let bound_lo: Vec<I> = (0..2)
        .map(|i| {
            corner_pts
                .iter()
                .map(|p| p[i].floor().numer().clone())
                .min()
                .unwrap()
        })
        .collect();
    let bound_hi: Vec<I> = (0..2)
        .map(|i| {
            corner_pts
                .iter()
                .map(|p| p[i].ceil().numer().clone())
                .max()
                .unwrap()
        })
        .collect();
    let mut candidates: Vec<(LVec<I>, (Rational<I>, Rational<I>))> = Vec::new();
    let mut x = bound_lo[0].clone();
    while x <= bound_hi[0] {
        let mut y = bound_lo[1].clone();
        while y <= bound_hi[1] {
            let pt = vec![x.clone(), y.clone()];
            if !(x.is_zero() && y.is_zero()) {
                if let Some((a, b)) = cone_coords(&rays, &pt) {
                    let inside = !a.is_negative()
                        && !b.is_negative()
                        && a <= av
                        && b <= bv;
                    if inside && h.pair_h(&pt, &pt) >= int::<I>(-2) {
                        candidates.push((pt, (a, b)));
                    }
                }
            }
            y = y + I::one();
        }
        x = x + I::one();
    }
    candidates.sort_by(|p, q| p.0.cmp(&q.0));

    let mut out = Vec::new();
    let mut current: Vec<(LVec<I>, usize)> = Vec::new();
    search(
        h,
        &candidates,
        0,
        (av, bv),
        &rays,
        &mut current,
        &mut out,
    );
    out.sort();
    Ok(out)
}

fn search<I: LatticeInt>(
    h: &PointedSublattice<I>,
    candidates: &[(LVec<I>, (Rational<I>, Rational<I>))],
    from: usize,
    remaining: (Rational<I>, Rational<I>),
    rays: &(LVec<I>, LVec<I>),
    current: &mut Vec<(LVec<I>, usize)>,
    out: &mut Vec<Partition<I>>,
) {
    if remaining.0.is_zero() && remaining.1.is_zero() {
        out.push(Partition::new(current.clone()));
        return;
    }
    for i in from..candidates.len() {
        let (pt, (a, b)) = &candidates[i];
        if a > &remaining.0 || b > &remaining.1 {
            continue;
        }
        current.push((pt.clone(), 1));
        search(
            h,
            candidates,
            i,
            (remaining.0.clone() - a.clone(), remaining.1.clone() - b.clone()),
            rays,
            current,
            out,
        );
        current.pop();
    }
}

/// True iff `fine` refines `coarse`: the fine parts can be grouped so that
/// each group sums to one coarse part (respecting multiplicities).
pub fn refines<I: LatticeInt>(fine: &Partition<I>, coarse: &Partition<I>) -> bool {
    let mut targets: Vec<LVec<I>> = Vec::new();
    for (p, m) in coarse.parts() {
        for _ in 0..*m {
            targets.push(p.clone());
        }
    }
    let mut pieces: Vec<LVec<I>> = Vec::new();
    for (p, m) in fine.parts() {
        for _ in 0..*m {
            pieces.push(p.clone());
        }
    }
    if pieces.len() < targets.len() {
        return false;
    }
    let mut remaining: Vec<LVec<I>> = targets;
    assign(&mut pieces, 0, &mut remaining)
}

fn assign<I: LatticeInt>(pieces: &mut Vec<LVec<I>>, idx: usize, remaining: &mut Vec<LVec<I>>) -> bool {
    if idx == pieces.len() {
        return remaining.iter().all(|r| r.iter().all(|x| x.is_zero()));
    }
    let piece = pieces[idx].clone();
    let mut tried: Vec<LVec<I>> = Vec::new();
    for slot in 0..remaining.len() {
        if tried.contains(&remaining[slot]) {
            continue;
        }
        tried.push(remaining[slot].clone());
        let saved = remaining[slot].clone();
        let next: LVec<I> = saved
            .iter()
            .zip(&piece)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        remaining[slot] = next;
        if assign(pieces, idx + 1, remaining) {
            remaining[slot] = saved;
            return true;
        }
        remaining[slot] = saved;
    }
    false
}

/// Stratum kind for a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumKind<I> {
    Plane,
    Grassmannian { x: I, ext1: I },
    Mixed,
}

/// Classification verdict for a partition's stratum.
#[derive(Clone, Debug)]
pub struct StratumInfo<I: LatticeInt> {
    pub kind: StratumKind<I>,
    /// xy((s,t) - xy) for partitions into two distinct spherical classes;
    /// absent when a part is non-spherical (no bound is claimed there).
    pub dim_bound: Option<I>,
    pub line_class: Option<CurveClass<I>>,
    pub primitive_line: Option<bool>,
}

/// Classify the stratum attached to a partition of v.
pub fn classify_stratum<I: LatticeInt>(
    h: &PointedSublattice<I>,
    partition: &Partition<I>,
) -> Result<StratumInfo<I>, LatticeError> {
    if partition.sum() != h.v_coords().to_vec() {
        return Err(LatticeError::Other(
            "partition parts do not sum to the pointed vector".into(),
        ));
    }
    let spherical = |p: &LVec<I>| h.pair_h(p, p) == int::<I>(-2);
    let parts = partition.parts();
    if parts.len() == 2 && parts.iter().all(|(p, _)| spherical(p)) {
        let (s, x) = (&parts[0].0, parts[0].1);
        let (t, y) = (&parts[1].0, parts[1].1);
        let ext1 = h.pair_h(s, t);
        let xi: I = int(x as i64);
        let yi: I = int(y as i64);
        let dim = xi.clone() * yi.clone() * (ext1.clone() - xi.clone() * yi.clone());
        let kind = if x == 1 && y == 1 {
            StratumKind::Plane
        } else if x == 1 || y == 1 {
            StratumKind::Grassmannian {
                x: if y == 1 { xi } else { yi },
                ext1: ext1.clone(),
            }
        } else {
            StratumKind::Mixed
        };
        let (lc, prim) = if kind == StratumKind::Plane
            && is_p_type(h)?.is_p_type
            && is_minimal(h)?
        {
            let (r, p) = line_class(h, None)?;
            (Some(r), Some(p))
        } else {
            (None, None)
        };
        return Ok(StratumInfo {
            kind,
            dim_bound: Some(dim),
            line_class: lc,
            primitive_line: prim,
        });
    }
    Ok(StratumInfo {
        kind: StratumKind::Mixed,
        dim_bound: None,
        line_class: None,
        primitive_line: None,
    })
}
