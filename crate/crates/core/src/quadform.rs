//! Solving Q(x,y) = m on rank-2 lattices.
//!
//! Two independent routes: a bounded brute-force scan (the oracle) and a
//! complete Pell-equation description. For an indefinite Gram form
//! ax^2 + 2bxy + cy^2 with D = b^2 - ac > 0 nonsquare, multiplying by a gives
//! the norm form X^2 - D y^2 = am with X = ax + by, and every solution class
//! is a fundamental solution times a power of the automorph coming from the
//! Pell equation t^2 - D u^2 = 1. Fundamental solutions are located inside
//! the classical (Nagell) bounds; the automorph orbit is walked with an exact
//! escape criterion, so box enumeration is provably exhaustive.

use crate::lattice::LatticeError;
use crate::mat::Mat;
use crate::scalar::{int, isqrt, perfect_sqrt, LatticeInt};
use std::collections::BTreeSet;

/// The form ax^2 + 2bxy + cy^2, i.e. the Gram matrix [[a,b],[b,c]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<I> {
    pub a: I,
    pub b: I,
    pub c: I,
}

impl<I: LatticeInt> BinaryForm<I> {
    pub fn new(a: I, b: I, c: I) -> Result<Self, LatticeError> {
        let f = BinaryForm { a, b, c };
        if f.disc().is_zero() {
            return Err(LatticeError::DegenerateForm);
        }
        Ok(f)
    }

    pub fn from_gram(gram: &Mat<I>) -> Result<Self, LatticeError> {
        if gram.rows != 2 || gram.cols != 2 {
            return Err(LatticeError::BadShape);
        }
        Self::new(
            gram[(0, 0)].clone(),
            gram[(0, 1)].clone(),
            gram[(1, 1)].clone(),
        )
    }

    /// b^2 - ac.
    pub fn disc(&self) -> I {
        self.b.clone() * self.b.clone() - self.a.clone() * self.c.clone()
    }

    pub fn is_indefinite(&self) -> bool {
        self.disc().is_positive()
    }

    pub fn eval(&self, x: &I, y: &I) -> I {
        self.a.clone() * x.clone() * x.clone()
            + int::<I>(2) * self.b.clone() * x.clone() * y.clone()
            + self.c.clone() * y.clone() * y.clone()
    }

    pub fn bilinear(&self, v: &(I, I), w: &(I, I)) -> I {
        self.a.clone() * v.0.clone() * w.0.clone()
            + self.b.clone() * (v.0.clone() * w.1.clone() + w.0.clone() * v.1.clone())
            + self.c.clone() * v.1.clone() * w.1.clone()
    }

    fn swapped(&self) -> Self {
        BinaryForm {
            a: self.c.clone(),
            b: self.b.clone(),
            c: self.a.clone(),
        }
    }
}

/// All integer solutions of Q(x,y) = m with |x|, |y| <= bound, sorted
/// lexicographically. Exhaustive by construction; this is the oracle.
pub fn represent_bounded<I: LatticeInt>(f: &BinaryForm<I>, m: &I, bound: &I) -> Vec<(I, I)> {
    assert!(bound.is_positive(), "bound must be >= 1");
    let mut out = Vec::new();
    let mut x = -bound.clone();
    while &x <= bound {
        let mut y = -bound.clone();
        while &y <= bound {
            if &f.eval(&x, &y) == m {
                out.push((x.clone(), y.clone()));
            }
            y = y + I::one();
        }
        x = x + I::one();
    }
    out
}

/// Fundamental solution (t, u) of t^2 - D u^2 = 1 with t, u > 0 minimal,
/// via the continued fraction of sqrt(D). D must be positive and nonsquare.
pub fn pell_fundamental<I: LatticeInt>(d: &I) -> Result<(I, I), LatticeError> {
    if !d.is_positive() || perfect_sqrt(d).is_some() {
        return Err(LatticeError::Other(format!(
            "pell_fundamental needs a positive nonsquare, got {}",
            d
        )));
    }
    let a0 = isqrt(d);
    let mut m = I::zero();
    let mut den = I::one();
    let mut a = a0.clone();
    let (mut h_prev, mut h) = (I::one(), a0.clone());
    let (mut k_prev, mut k) = (I::zero(), I::one());
    loop {
        m = den.clone() * a.clone() - m;
        den = (d.clone() - m.clone() * m.clone()).div_floor(&den);
        a = (a0.clone() + m.clone()).div_floor(&den);
        let h_next = a.clone() * h.clone() + h_prev;
        let k_next = a.clone() * k.clone() + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        if h.clone() * h.clone() - d.clone() * k.clone() * k.clone() == I::one() {
            return Ok((h, k));
        }
    }
}

/// 2x2 automorph acting on column vectors (x, y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorph<I> {
    pub m: [[I; 2]; 2],
}

impl<I: LatticeInt> Automorph<I> {
    pub fn apply(&self, v: &(I, I)) -> (I, I) {
        (
            self.m[0][0].clone() * v.0.clone() + self.m[0][1].clone() * v.1.clone(),
            self.m[1][0].clone() * v.0.clone() + self.m[1][1].clone() * v.1.clone(),
        )
    }

    /// Inverse, valid because det = 1.
    pub fn inverse(&self) -> Self {
        Automorph {
            m: [
                [self.m[1][1].clone(), -self.m[0][1].clone()],
                [-self.m[1][0].clone(), self.m[0][0].clone()],
            ],
        }
    }

    fn swap_conjugate(&self) -> Self {
        Automorph {
            m: [
                [self.m[1][1].clone(), self.m[1][0].clone()],
                [self.m[0][1].clone(), self.m[0][0].clone()],
            ],
        }
    }
}

/// Complete description of the solution set of Q(x,y) = m.
#[derive(Clone, Debug)]
pub enum PellSolutions<I> {
    /// Exhaustive finite list.
    Finite(Vec<(I, I)>),
    /// All solutions are +/- A^k b for the base solutions b and the automorph A.
    Orbits {
        base: Vec<(I, I)>,
        automorph: Automorph<I>,
    },
    /// All integer multiples of the listed primitive directions (m = 0 with
    /// split form), plus the origin.
    Lines(Vec<(I, I)>),
}

impl<I: LatticeInt> PellSolutions<I> {
    pub fn is_empty(&self) -> bool {
        match self {
            PellSolutions::Finite(v) => v.is_empty(),
            PellSolutions::Orbits { base, .. } => base.is_empty(),
            PellSolutions::Lines(v) => v.is_empty(),
        }
    }

    /// All solutions with |x|, |y| <= bound, sorted lexicographically.
    /// Agrees with [`represent_bounded`] on every box.
    pub fn in_box(&self, bound: &I) -> Vec<(I, I)> {
        let mut set: BTreeSet<(I, I)> = BTreeSet::new();
        let inside = |v: &(I, I)| v.0.abs() <= *bound && v.1.abs() <= *bound;
        match self {
            PellSolutions::Finite(v) => {
                for s in v {
                    if inside(s) {
                        set.insert(s.clone());
                    }
                }
            }
            PellSolutions::Lines(dirs) => {
                set.insert((I::zero(), I::zero()));
                for d in dirs {
                    let mut k = I::one();
                    loop {
                        let p = (d.0.clone() * k.clone(), d.1.clone() * k.clone());
                        if !inside(&p) {
                            break;
                        }
                        set.insert((-p.0.clone(), -p.1.clone()));
                        set.insert(p);
                        k = k + I::one();
                    }
                }
            }
            PellSolutions::Orbits { base, automorph } => {
                let inv = automorph.inverse();
                for b in base {
                    for dir in [automorph, &inv] {
                        let mut cur = b.clone();
                        let mut guard = 0usize;
                        loop {
                            if inside(&cur) {
                                set.insert(cur.clone());
                                set.insert((-cur.0.clone(), -cur.1.clone()));
                            }
                            let next = dir.apply(&cur);
                            if orbit_escaped(&cur, &next, bound) {
                                if inside(&next) {
                                    set.insert(next.clone());
                                    set.insert((-next.0.clone(), -next.1.clone()));
                                }
                                break;
                            }
                            cur = next;
                            guard += 1;
                            assert!(guard < 100_000, "orbit scan failed to escape");
                        }
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Visit orbit elements (and their negatives) until every watched linear
    /// functional has frozen its sign with absolute value above its threshold.
    /// The visitor returns false to stop early.
    pub fn scan_orbits(
        &self,
        functionals: &[(I, I)],
        thresholds: &[I],
        mut visit: impl FnMut(&(I, I)) -> bool,
    ) {
        let eval = |f: &(I, I), v: &(I, I)| f.0.clone() * v.0.clone() + f.1.clone() * v.1.clone();
        match self {
            PellSolutions::Finite(v) => {
                for s in v {
                    if !visit(s) || !visit(&(-s.0.clone(), -s.1.clone())) {
                        return;
                    }
                }
            }
            PellSolutions::Lines(dirs) => {
                // only finitely many multiples can stay under the thresholds
                if !visit(&(I::zero(), I::zero())) {
                    return;
                }
                for d in dirs {
                    let mut k = I::one();
                    loop {
                        let p = (d.0.clone() * k.clone(), d.1.clone() * k.clone());
                        let escaped = functionals
                            .iter()
                            .zip(thresholds)
                            .all(|(f, th)| eval(f, &p).abs() > *th);
                        if !visit(&p) || !visit(&(-p.0.clone(), -p.1.clone())) {
                            return;
                        }
                        if escaped {
                            break;
                        }
                        k = k + I::one();
                    }
                }
            }
            PellSolutions::Orbits { base, automorph } => {
                let inv = automorph.inverse();
                for b in base {
                    for dir in [automorph, &inv] {
                        let mut cur = b.clone();
                        let mut guard = 0usize;
                        loop {
                            if !visit(&cur) || !visit(&(-cur.0.clone(), -cur.1.clone())) {
                                return;
                            }
                            let next = dir.apply(&cur);
                            let escaped = functionals.iter().zip(thresholds).all(|(f, th)| {
                                let hc = eval(f, &cur);
                                let hn = eval(f, &next);
                                !hc.is_zero()
                                    && !hn.is_zero()
                                    && hc.is_positive() == hn.is_positive()
                                    && hn.abs() >= hc.abs()
                                    && hn.abs() > *th
                            });
                            if escaped {
                                if !visit(&next) || !visit(&(-next.0.clone(), -next.1.clone())) {
                                    return;
                                }
                                break;
                            }
                            cur = next;
                            guard += 1;
                            assert!(guard < 100_000, "orbit scan failed to escape");
                        }
                    }
                }
            }
        }
    }
}

/// Escape test for orbit walks: once both coordinates keep their (nonzero)
/// sign, do not shrink, and exceed the bound, every later iterate stays
/// outside the box. This follows from the linear recurrence
/// h_{k+1} = tr(A) h_k - h_{k-1} with tr(A) >= 4.
fn orbit_escaped<I: LatticeInt>(cur: &(I, I), next: &(I, I), bound: &I) -> bool {
    let comp = |c: &I, n: &I| -> bool {
        !c.is_zero()
            && !n.is_zero()
            && c.is_positive() == n.is_positive()
            && n.abs() >= c.abs()
            && n.abs() > *bound
    };
    comp(&cur.0, &next.0) && comp(&cur.1, &next.1)
}

/// All integer solutions of Q(x,y) = m on the line la*x + lb*y = rhs.
/// Finite whenever Q restricted to the line direction is nonzero.
pub fn solve_on_line<I: LatticeInt>(
    f: &BinaryForm<I>,
    m: &I,
    la: &I,
    lb: &I,
    rhs: &I,
) -> Result<Vec<(I, I)>, LatticeError> {
    if la.is_zero() && lb.is_zero() {
        return Err(LatticeError::Other(
            "degenerate line constraint".to_string(),
        ));
    }
    let (g, x0, y0) = extended_gcd(la, lb);
    if !rhs.mod_floor(&g).is_zero() {
        return Ok(Vec::new());
    }
    let scale = rhs.div_floor(&g);
    let p = (x0 * scale.clone(), y0 * scale);
    let t = (lb.div_floor(&g), -la.div_floor(&g));
    let qa = f.eval(&t.0, &t.1);
    let qb = int::<I>(2) * f.bilinear(&p, &t);
    let qc = f.eval(&p.0, &p.1) - m.clone();
    let mut ks = Vec::new();
    if qa.is_zero() {
        if qb.is_zero() {
            if qc.is_zero() {
                return Err(LatticeError::Other(
                    "infinite solution family on line".to_string(),
                ));
            }
        } else if qc.mod_floor(&qb).is_zero() {
            ks.push(-qc.div_floor(&qb));
        }
    } else {
        let disc = qb.clone() * qb.clone() - int::<I>(4) * qa.clone() * qc;
        if let Some(s) = perfect_sqrt(&disc) {
            let two_a = int::<I>(2) * qa;
            for num in [-qb.clone() + s.clone(), -qb.clone() - s] {
                if num.mod_floor(&two_a).is_zero() {
                    ks.push(num.div_floor(&two_a));
                }
            }
        }
    }
    let mut out: Vec<(I, I)> = ks
        .into_iter()
        .map(|k| {
            (
                p.0.clone() + k.clone() * t.0.clone(),
                p.1.clone() + k * t.1.clone(),
            )
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// gcd(a, b) >= 0 together with Bezout coefficients.
pub fn extended_gcd<I: LatticeInt>(a: &I, b: &I) -> (I, I, I) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (I::one(), I::zero());
    let (mut t0, mut t1) = (I::zero(), I::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r = r0 - q.clone() * r1.clone();
        r0 = std::mem::replace(&mut r1, r);
        let s = s0 - q.clone() * s1.clone();
        s0 = std::mem::replace(&mut s1, s);
        let t = t0 - q * t1.clone();
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Complete solution description for Q(x,y) = m on an indefinite form.
pub fn represent_pell<I: LatticeInt>(
    f: &BinaryForm<I>,
    m: &I,
) -> Result<PellSolutions<I>, LatticeError> {
    let disc = f.disc();
    if disc.is_zero() {
        return Err(LatticeError::DegenerateForm);
    }
    if disc.is_negative() {
        return Err(LatticeError::NotIndefinite);
    }
    if f.a.is_zero() && f.c.is_zero() {
        // 2bxy = m
        if m.is_zero() {
            return Ok(PellSolutions::Lines(vec![
                (I::one(), I::zero()),
                (I::zero(), I::one()),
            ]));
        }
        let two_b = int::<I>(2) * f.b.clone();
        if !m.mod_floor(&two_b).is_zero() {
            return Ok(PellSolutions::Finite(Vec::new()));
        }
        let n = m.div_floor(&two_b);
        let mut sols = Vec::new();
        for d in divisors(&n.abs()) {
            let e = n.div_floor(&d);
            sols.push((d.clone(), e.clone()));
            sols.push((-d, -e));
        }
        sols.sort();
        sols.dedup();
        return Ok(PellSolutions::Finite(sols));
    }
    if f.a.is_zero() {
        // swap the variables so the leading coefficient is nonzero
        let sub = represent_pell(&f.swapped(), m)?;
        let swap = |v: (I, I)| (v.1, v.0);
        return Ok(match sub {
            PellSolutions::Finite(v) => {
                let mut v: Vec<_> = v.into_iter().map(swap).collect();
                v.sort();
                PellSolutions::Finite(v)
            }
            PellSolutions::Lines(v) => PellSolutions::Lines(v.into_iter().map(swap).collect()),
            PellSolutions::Orbits { base, automorph } => PellSolutions::Orbits {
                base: base.into_iter().map(swap).collect(),
                automorph: automorph.swap_conjugate(),
            },
        });
    }

    let a = f.a.clone();
    let b = f.b.clone();
    let n = a.clone() * m.clone();
    if let Some(g) = perfect_sqrt(&disc) {
        // split form: factor the norm form as (X - gy)(X + gy) = am, X = ax + by
        if m.is_zero() {
            let mut dirs = Vec::new();
            for sg in [g.clone(), -g.clone()] {
                let diff = sg - b.clone();
                let g1 = diff.gcd(&a);
                let dir = (diff.div_floor(&g1), a.div_floor(&g1));
                dirs.push(crate::lattice::lex_positive(&[dir.0, dir.1]));
            }
            dirs.sort();
            dirs.dedup();
            return Ok(PellSolutions::Lines(
                dirs.into_iter()
                    .map(|v| (v[0].clone(), v[1].clone()))
                    .collect(),
            ));
        }
        let mut sols = Vec::new();
        let two = int::<I>(2);
        for d1 in signed_divisors(&n) {
            let d2 = n.div_floor(&d1);
            let sx = d1.clone() + d2.clone();
            let sy = d2 - d1;
            if !sx.mod_floor(&two).is_zero() {
                continue;
            }
            let x_norm = sx.div_floor(&two);
            let gy2 = two.clone() * g.clone();
            if !sy.mod_floor(&gy2).is_zero() {
                continue;
            }
            let y = sy.div_floor(&gy2);
            if let Some(s) = norm_to_form_coords(&a, &b, &x_norm, &y) {
                sols.push(s);
            }
        }
        sols.sort();
        sols.dedup();
        return Ok(PellSolutions::Finite(sols));
    }

    // nonsquare discriminant
    if m.is_zero() {
        return Ok(PellSolutions::Finite(vec![(I::zero(), I::zero())]));
    }
    let (t, u) = pell_fundamental(&disc)?;
    // Nagell bounds for fundamental solutions of X^2 - D Y^2 = N
    let t_shift = if n.is_positive() {
        t.clone() + I::one()
    } else {
        t.clone() - I::one()
    };
    let y_max = isqrt(&(u.clone() * u.clone() * n.abs() / (int::<I>(2) * t_shift))) + int::<I>(2);
    let mut base = Vec::new();
    let mut y = I::zero();
    while y <= y_max {
        let rhs = n.clone() + disc.clone() * y.clone() * y.clone();
        if let Some(x_abs) = perfect_sqrt(&rhs) {
            let mut cands = vec![(x_abs.clone(), y.clone())];
            if !x_abs.is_zero() {
                cands.push((-x_abs, y.clone()));
            }
            for (xn, yn) in cands {
                if let Some(s) = norm_to_form_coords(&a, &b, &xn, &yn) {
                    base.push(s);
                }
            }
        }
        y = y + I::one();
    }
    base.sort();
    base.dedup();
    if base.is_empty() {
        return Ok(PellSolutions::Finite(Vec::new()));
    }
    let automorph = Automorph {
        m: [
            [t.clone() - b.clone() * u.clone(), -f.c.clone() * u.clone()],
            [a.clone() * u.clone(), t + b * u],
        ],
    };
    Ok(PellSolutions::Orbits { base, automorph })
}

/// Map a norm-form solution (X, y) with X = ax + by back to (x, y).
fn norm_to_form_coords<I: LatticeInt>(a: &I, b: &I, x_norm: &I, y: &I) -> Option<(I, I)> {
    let num = x_norm.clone() - b.clone() * y.clone();
    num.mod_floor(a)
        .is_zero()
        .then(|| (num.div_floor(a), y.clone()))
}

/// Positive and negative divisors of n (n != 0).
fn signed_divisors<I: LatticeInt>(n: &I) -> Vec<I> {
    let mut out = Vec::new();
    for d in divisors(&n.abs()) {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

pub(crate) fn divisors<I: LatticeInt>(n: &I) -> Vec<I> {
    assert!(!n.is_negative());
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = I::one();
    while d.clone() * d.clone() <= *n {
        if n.mod_floor(&d).is_zero() {
            out.push(d.clone());
            let e = n.div_floor(&d);
            if e != d {
                out.push(e);
            }
        }
        d = d + I::one();
    }
    out.sort();
    out
}

/// Pell reduction for Hilbert-scheme walls at n = 2: a class (r, c, s3) with
/// (a, v) = k and a^2 = sq reduces, after s3 = r - k and completing the
/// square, to X^2 - 4d c^2 = k^2 - 2*sq with X = 2r - k. The parity of X
/// matches k automatically, so r = (X + k) / 2 is always integral.
pub fn hilb2_pell_reduction<I: LatticeInt>(d: &I, pairing: &I, square: &I) -> (BinaryForm<I>, I) {
    let form = BinaryForm {
        a: I::one(),
        b: I::zero(),
        c: int::<I>(-4) * d.clone(),
    };
    let m = pairing.clone() * pairing.clone() - int::<I>(2) * square.clone();
    (form, m)
}
