//! Conversion between the `H` and `Theta` generating series
//! `1 + c * sum Theta_m u^m = exp(c * sum H_m u^m)` with `c = v - v^{-1}`.

use super::laurent::LaurentV;
use super::scalar::{rat_int, Rat};
use crate::error::{Error, Result};

/// Arithmetic needed to convert a truncated series with coefficients in `T`.
pub trait SeriesOps<T> {
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> Result<T>;
    fn scale_rat(&self, a: &T, r: &Rat) -> T;
    /// Multiply by `v - v^{-1}`.
    fn scale_c(&self, a: &T) -> T;
    fn is_zero(&self, a: &T) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    H,
    Theta,
}

/// Truncated series `coeffs[m-1]` for `m = 1..=M`.
#[derive(Clone, Debug)]
pub struct ThetaHSeries<T> {
    pub kind: SeriesKind,
    pub coeffs: Vec<T>,
}

/// Converts `coeffs` (of kind `from`) to the other series, to the same order.
///
/// Both directions use `Theta_m - H_m = (c/m) sum_{k<m} k H_k Theta_{m-k}`.
pub fn series_convert<T: Clone, O: SeriesOps<T>>(
    from: SeriesKind,
    coeffs: &[T],
    ops: &O,
    check_commuting: bool,
) -> Result<Vec<T>> {
    if check_commuting {
        for i in 0..coeffs.len() {
            for j in i + 1..coeffs.len() {
                let ab = ops.mul(&coeffs[i], &coeffs[j])?;
                let ba = ops.mul(&coeffs[j], &coeffs[i])?;
                if !ops.is_zero(&ops.sub(&ab, &ba)) {
                    return Err(Error::NonCommutingCoefficients);
                }
            }
        }
    }
    let mut h: Vec<T> = Vec::new();
    let mut th: Vec<T> = Vec::new();
    for (idx, x) in coeffs.iter().enumerate() {
        let m = idx + 1;
        let mut corr: Option<T> = None;
        for k in 1..m {
            let t = ops.mul(&h[k - 1], &th[m - k - 1])?;
            let t = ops.scale_rat(&t, &rat_int(k as i64));
            corr = Some(match corr {
                None => t,
                Some(c) => ops.add(&c, &t),
            });
        }
        let corr = corr.map(|c| ops.scale_c(&ops.scale_rat(&c, &(Rat::from_integer((m as i64).into()).recip()))));
        match from {
            SeriesKind::H => {
                let t = match &corr {
                    Some(c) => ops.add(x, c),
                    None => x.clone(),
                };
                h.push(x.clone());
                th.push(t);
            }
            SeriesKind::Theta => {
                let hm = match &corr {
                    Some(c) => ops.sub(x, c),
                    None => x.clone(),
                };
                th.push(x.clone());
                h.push(hm);
            }
        }
    }
    Ok(match from {
        SeriesKind::H => th,
        SeriesKind::Theta => h,
    })
}

impl<T: Clone> ThetaHSeries<T> {
    pub fn convert<O: SeriesOps<T>>(&self, ops: &O, check_commuting: bool) -> Result<ThetaHSeries<T>> {
        let kind = match self.kind {
            SeriesKind::H => SeriesKind::Theta,
            SeriesKind::Theta => SeriesKind::H,
        };
        Ok(ThetaHSeries { kind, coeffs: series_convert(self.kind, &self.coeffs, ops, check_commuting)? })
    }
}

/// Series arithmetic on plain rational functions of `v`.
pub struct LaurentOps;

impl SeriesOps<LaurentV> for LaurentOps {
    fn add(&self, a: &LaurentV, b: &LaurentV) -> LaurentV {
        a + b
    }
    fn sub(&self, a: &LaurentV, b: &LaurentV) -> LaurentV {
        a - b
    }
    fn mul(&self, a: &LaurentV, b: &LaurentV) -> Result<LaurentV> {
        Ok(a * b)
    }
    fn scale_rat(&self, a: &LaurentV, r: &Rat) -> LaurentV {
        a.scale(r)
    }
    fn scale_c(&self, a: &LaurentV) -> LaurentV {
        a * &(LaurentV::v_pow(1) - LaurentV::v_pow(-1))
    }
    fn is_zero(&self, a: &LaurentV) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: expand exp(c*h) as a truncated power series with formal
    /// coefficients, done independently via the power series of exp.
    fn exp_oracle(h: &[LaurentV]) -> Vec<LaurentV> {
        let m = h.len();
        let c = LaurentV::v_pow(1) - LaurentV::v_pow(-1);
        // series arrays index 0..=m
        let mut x = vec![LaurentV::zero(); m + 1];
        for k in 1..=m {
            x[k] = &c * &h[k - 1];
        }
        let mut result = vec![LaurentV::zero(); m + 1];
        result[0] = LaurentV::one();
        let mut power = result.clone();
        let mut fact = 1i64;
        for j in 1..=m {
            let mut next = vec![LaurentV::zero(); m + 1];
            for a in 0..=m {
                for b in 0..=m - a {
                    next[a + b] = &next[a + b] + &(&power[a] * &x[b]);
                }
            }
            power = next;
            fact *= j as i64;
            for k in 0..=m {
                result[k] = &result[k] + &power[k].scale(&Rat::new(1.into(), fact.into()));
            }
        }
        (1..=m).map(|k| result[k].try_div(&c).unwrap()).collect()
    }

    #[test]
    fn theta_two_from_h() {
        let h1 = LaurentV::parse("v^2 + 3").unwrap();
        let h2 = LaurentV::parse("1/(v+1)").unwrap();
        let th = series_convert(SeriesKind::H, &[h1.clone(), h2.clone()], &LaurentOps, true).unwrap();
        let c = LaurentV::v_pow(1) - LaurentV::v_pow(-1);
        let expect = &h2 + &(&c.scale(&Rat::new(1.into(), 2.into())) * &(&h1 * &h1));
        assert_eq!(th[1], expect);
    }

    #[test]
    fn matches_exp_oracle_and_roundtrips() {
        let h: Vec<LaurentV> =
            ["v", "2 - v^-1", "1/3*v^2", "(v+2)/(v^2+1)"].iter().map(|s| LaurentV::parse(s).unwrap()).collect();
        let th = series_convert(SeriesKind::H, &h, &LaurentOps, false).unwrap();
        assert_eq!(th, exp_oracle(&h));
        let back = series_convert(SeriesKind::Theta, &th, &LaurentOps, false).unwrap();
        assert_eq!(back, h);
    }
}
