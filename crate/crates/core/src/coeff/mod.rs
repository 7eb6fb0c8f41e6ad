//! Scalars: `Q(sqrt q)`, rational functions of `v`, and the `H`/`Theta` series.

mod laurent;
mod scalar;
mod series;

pub use laurent::LaurentV;
pub use scalar::{qbracket, rat, rat_int, v_power, QSqrt, Rat};
pub use series::{series_convert, LaurentOps, SeriesKind, SeriesOps, ThetaHSeries};
