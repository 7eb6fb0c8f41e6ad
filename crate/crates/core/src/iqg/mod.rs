//! Symbolic expressions in the generators `B_i`, `K_i`, `C`, braid operators,
//! root vectors and their images in iHall algebras.

mod braid;
mod drinfeld;
mod eval;
mod expr;
mod relations;
mod roots;

pub use braid::{omega_operator, omega_word, root_vector_word, root_vector_words, Braid, BraidLetter, BraidWord, OmegaOrder, Subst};
pub use drinfeld::{rotate, Drinfeld, IHallOps};
pub use eval::{Evaluator, KNorm};
pub use expr::{Coeff, NcExpr, Word};
pub use relations::{bs0_eval, bs0_word, check, idr1b, idr2, idr3a, idr3b, idr4, idr5, serre, Residual, StarFrame, RELATION_IDS};
pub use roots::RootVectors;
