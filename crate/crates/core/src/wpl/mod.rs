//! Weighted projective lines: the group `L(p)`, the root lattice, the point
//! census of `P^1`, and the iHall algebra of torsion sheaves.

mod lattice;
mod torsion;

pub use lattice::{
    cartan_pairing, k0_class, lp_normal_form, point_census, points_dividing, LpElement, Point, RootClass, Sheaf, Weights,
};
pub use torsion::{Torsion, TorsionElem, TorsionKey};
