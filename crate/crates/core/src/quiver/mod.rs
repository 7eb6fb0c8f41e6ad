mod ambient;
#[allow(clippy::module_inception)]
mod quiver;
mod rep;

pub use ambient::{
    gl_order, parse_segments, render_dims, render_dims_i, render_segments, segs_from_ranks, Ambient, ClassId, ClassInfo,
    DEFAULT_BUDGET,
};
pub use quiver::{Quiver, QuiverKind, StarOrient};
pub use rep::{
    check_cap, coords_in_basis, ext1_dim, for_each_combination, hom_basis, hom_dim, hom_ext_matrix, image_bases,
    kernel_bases, offsets, quotient, rep_from_segments, subrep, ExtSpace, Morphism, Rep, Segment, DEFAULT_DIMS_CAP,
};
