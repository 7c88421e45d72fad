//! Eichler-style orbit invariants and the square-divisor orbit-count bound.
//!
//! For a primitive class a in an even lattice L, the triple
//! (a^2, div(a), [a^dual]) with a^dual = (1/div)(a, .) in D(L) classifies the
//! orbit of a under the isometries acting trivially on D(L), provided L
//! satisfies the Eichler hypothesis (it contains two hyperbolic planes).
//! That hypothesis is not verified here; equality of invariants is reported
//! as a conditional orbit certificate.

use crate::lattice::{DiscElement, Divisibility, IntLattice, LVec, LatticeError};
use crate::scalar::{int, LatticeInt};

/// Eichler invariant triple of a primitive class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInvariants<I> {
    pub square: I,
    pub div: I,
    pub dual_class: DiscElement<I>,
}

pub fn orbit_invariants<I: LatticeInt>(
    lattice: &IntLattice<I>,
    a: &LVec<I>,
) -> Result<OrbitInvariants<I>, LatticeError> {
    if !IntLattice::<I>::is_primitive(a) {
        return Err(LatticeError::NonPrimitive);
    }
    let square = lattice.pair_int(a, a)?;
    let Divisibility {
        div, dual_class, ..
    } = lattice.divisibility(a)?;
    Ok(OrbitInvariants {
        square,
        div,
        dual_class,
    })
}

/// Outcome of comparing two classes' invariants. Dual classes are compared
/// both directly and under global negation (the monodromy group contains the
/// trivially-acting isometries with index 2, so a sign flip can be absorbed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitComparison {
    pub equal_invariants: bool,
    pub square_equal: bool,
    pub div_equal: bool,
    pub dual_equal_direct: bool,
    pub dual_equal_negated: bool,
}

pub fn same_orbit<I: LatticeInt>(
    lattice: &IntLattice<I>,
    a: &LVec<I>,
    b: &LVec<I>,
) -> Result<OrbitComparison, LatticeError> {
    let ia = orbit_invariants(lattice, a)?;
    let ib = orbit_invariants(lattice, b)?;
    let group = lattice.discriminant_group()?;
    let square_equal = ia.square == ib.square;
    let div_equal = ia.div == ib.div;
    let dual_equal_direct = ia.dual_class == ib.dual_class;
    let dual_equal_negated = group.negate(&ia.dual_class) == ib.dual_class;
    Ok(OrbitComparison {
        equal_invariants: square_equal && div_equal && (dual_equal_direct || dual_equal_negated),
        square_equal,
        div_equal,
        dual_equal_direct,
        dual_equal_negated,
    })
}

/// Number of square divisors of (n+3)(n-1): an upper bound for the count of
/// monodromy orbits of line classes in dimension 2n.
pub fn orbit_count_bound<I: LatticeInt>(n: &I) -> Result<I, LatticeError> {
    if n < &int(2) {
        return Err(LatticeError::Other("need n >= 2".into()));
    }
    let m = (n.clone() + int::<I>(3)) * (n.clone() - I::one());
    // k^2 | m  <=>  k | prod p^floor(e_p / 2)
    let mut count = I::one();
    let mut rest = m;
    let mut p: I = int(2);
    while p.clone() * p.clone() <= rest {
        if rest.mod_floor(&p).is_zero() {
            let mut e = 0i64;
            while rest.mod_floor(&p).is_zero() {
                rest = rest.div_floor(&p);
                e += 1;
            }
            count = count * int::<I>(e / 2 + 1);
        }
        p = p + I::one();
    }
    // leftover prime has exponent 1: contributes nothing
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::lattice::bigvec;
    use crate::mat::testsupport::{random_unimodular, XorShift};
    use crate::mat::Mat;
    use num_bigint::BigInt;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn lat(rows: &[&[i64]]) -> IntLattice<BigInt> {
        IntLattice::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| bi(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn orbit_invariant_examples() {
        let l = lat(&[&[2, 0], &[0, -2]]);
        // a = 2h - 3delta: square -10 = -2(n+3) at n=2, div 2
        let inv = orbit_invariants(&l, &bigvec(&[2, -3])).unwrap();
        assert_eq!(inv.square, bi(-10));
        assert_eq!(inv.div, bi(2));
        // a = h
        let inv = orbit_invariants(&l, &bigvec(&[1, 0])).unwrap();
        assert_eq!(inv.square, bi(2));
        assert_eq!(inv.div, bi(2));
        // unimodular lattice: trivial dual class
        let l1 = lat(&[&[1]]);
        let inv = orbit_invariants(&l1, &bigvec(&[1])).unwrap();
        assert_eq!(inv.div, bi(1));
        assert!(inv.dual_class.residues().is_empty());
        // non-primitive rejected
        assert!(matches!(
            orbit_invariants(&l, &bigvec(&[2, -4])),
            Err(LatticeError::NonPrimitive)
        ));
    }

    #[test]
    fn same_orbit_examples() {
        let l = lat(&[&[2, 0], &[0, -2]]);
        // reflection in the (-2)-vector delta acts trivially on D(L) and
        // sends 2h - 3delta to 2h + 3delta
        let cmp = same_orbit(&l, &bigvec(&[2, -3]), &bigvec(&[2, 3])).unwrap();
        assert!(cmp.equal_invariants);
        assert!(cmp.dual_equal_direct);
        // h vs delta: squares 2 vs -2
        let cmp = same_orbit(&l, &bigvec(&[1, 0]), &bigvec(&[0, 1])).unwrap();
        assert!(!cmp.equal_invariants);
        assert!(!cmp.square_equal);
        // a vs -a in a Z/5 discriminant group: a = (2,1) has div 5 and a
        // nonzero dual class, so equality holds only via negation
        let l5 = lat(&[&[2, 1], &[1, -2]]);
        let inv = orbit_invariants(&l5, &bigvec(&[2, 1])).unwrap();
        assert_eq!(inv.div, bi(5));
        let cmp = same_orbit(&l5, &bigvec(&[2, 1]), &bigvec(&[-2, -1])).unwrap();
        assert!(cmp.equal_invariants);
        assert!(!cmp.dual_equal_direct);
        assert!(cmp.dual_equal_negated);
    }

    #[test]
    fn invariants_stable_under_unimodular_conjugation() {
        let mut rng = XorShift(0x0dd5eed);
        let mut tested = 0;
        while tested < 40 {
            let n = 2 + (rng.below(5) as usize);
            let mut rows = vec![vec![bi(0); n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let x = bi(rng.small(6));
                    rows[i][j] = x.clone();
                    rows[j][i] = x;
                }
            }
            let gram = Mat::from_rows(rows);
            if gram.det().is_zero() {
                continue;
            }
            let l = IntLattice::new(gram.clone()).unwrap();
            let a: Vec<BigInt> = (0..n).map(|_| bi(rng.small(7))).collect();
            if !IntLattice::<BigInt>::is_primitive(&a) {
                continue;
            }
            let before = orbit_invariants(&l, &a).unwrap();
            // base change: gram' = U^T G U, a' = U^-1 a
            let u: Mat<BigInt> = random_unimodular(n, rng.next_u64() | 1, 14);
            let gram2 = u.transpose().mul(&gram).mul(&u);
            let l2 = IntLattice::new(gram2).unwrap();
            let aq = u
                .solve_rational(&crate::lattice::to_qvec(&a))
                .unwrap();
            let a2: Vec<BigInt> = aq.iter().map(|x| x.numer().clone()).collect();
            let after = orbit_invariants(&l2, &a2).unwrap();
            assert_eq!(before.square, after.square);
            assert_eq!(before.div, after.div);
            // the dual class itself depends on the SNF presentation; its
            // order is basis-independent
            let ord_before = l
                .discriminant_group()
                .unwrap()
                .element_order(&before.dual_class);
            let ord_after = l2
                .discriminant_group()
                .unwrap()
                .element_order(&after.dual_class);
            assert_eq!(ord_before, ord_after);
            tested += 1;
        }
    }

    #[test]
    fn orbit_count_bound_examples() {
        assert_eq!(orbit_count_bound(&bi(2)).unwrap(), bi(1));
        assert_eq!(orbit_count_bound(&bi(5)).unwrap(), bi(3));
        assert_eq!(orbit_count_bound(&bi(13)).unwrap(), bi(4));
    }

    #[test]
    fn bound_is_one_for_squarefree_products() {
        for n in 2i64..60 {
            let m = (n + 3) * (n - 1);
            let mut squarefree = true;
            let mut k = 2i64;
            let mut rest = m;
            while k * k <= rest {
                if rest % (k * k) == 0 {
                    squarefree = false;
                    break;
                }
                if rest % k == 0 {
                    rest /= k;
                }
                k += 1;
            }
            if squarefree {
                assert_eq!(orbit_count_bound(&bi(n)).unwrap(), bi(1), "n = {}", n);
            }
        }
    }
}
