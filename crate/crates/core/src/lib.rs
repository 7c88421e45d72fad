//! Exact lattice arithmetic for Mukai lattices of K3 surfaces.
//!
//! Everything here is computed over exact integers and rationals: pairings,
//! Smith normal forms, discriminant groups, Pell equations, wall-kind
//! classification, Lagrangian-plane line classes, and the nef/movable cones
//! of Hilbert schemes of two points on a K3 surface of Picard rank one.
//!
//! The core is generic over the integer scalar type (anything implementing
//! [`LatticeInt`], e.g. `i64`, `i128`, `BigInt`). The crate-root aliases fix
//! the default arbitrary-precision instantiation used by the CLI and the
//! worked examples.

pub mod cones;
pub mod lattice;
pub mod mat;
pub mod monodromy;
pub mod mukai;
pub mod planes;
pub mod walls;
pub mod quadform;
pub mod scalar;
pub mod surd;

pub use lattice::{DiscElement, DiscGroup, Divisibility, IntLattice, LatticeError};
pub use mat::Mat;
pub use scalar::LatticeInt;

/// Default arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Default exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Concrete instantiation backing the CLI and worked examples.
pub type Lattice = IntLattice<Int>;

pub use quadform::{
    pell_fundamental, represent_bounded, represent_pell, BinaryForm, PellSolutions,
};
pub use surd::Surd;
pub use mukai::{
    mukai_pairing, theta_dual, theta_dual_q, AlgMukaiLattice, CurveClass, HilbPreset, K3Picard,
    MukaiVector, PointedPeriod,
};

/// Concrete pointed-period and preset instantiations.
pub type Period = PointedPeriod<Int>;
pub type Preset = HilbPreset<Int>;
pub type Curve = CurveClass<Int>;

pub use walls::strata::{
    classify_stratum, enumerate_partitions, refines, Partition, StratumInfo, StratumKind,
};
pub use walls::{
    classify_wall, decompose_v, is_minimal, is_p_type, line_class, minimalize,
    spherical_with_pairing, PTypeVerdict, PointedSublattice, WallKind, WallReport, WallWitness,
};

pub use cones::{hilb2_cones, wall_meets_movable, Chamber, ConeReport, Ray};
pub use monodromy::{
    orbit_count_bound, orbit_invariants, same_orbit, OrbitComparison, OrbitInvariants,
};
pub use planes::{
    fibration_section_search, mori_extremal_generators, numeric_criteria,
    plane_line_certificate, FibrationSection, MoriGenerator, NumericVerdict, PlaneCertificate,
};

/// Concrete wall instantiation.
pub type Wall = PointedSublattice<Int>;
