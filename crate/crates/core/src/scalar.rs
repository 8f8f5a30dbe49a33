//! Exact scalar fields used for coefficients and representation matrices.
//!
//! Every computation in the crate is generic over [`Field`]. The concrete
//! instantiations are Gaussian rationals `re + i·im` backed by either
//! arbitrary-precision or machine integers.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// An exact field containing the imaginary unit, closed under conjugation.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn imag_unit() -> Self;
    fn conj(&self) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// True when the imaginary part vanishes.
    fn is_real(&self) -> bool {
        self.clone() == self.conj()
    }

    /// Canonical text, e.g. `3/2`, `-i`, `(1/2+3*i)`. Parenthesized iff
    /// both parts are nonzero.
    fn render(&self) -> String;

    /// Sign of the leading (real, else imaginary) part; used to pull a
    /// minus sign out of rendered sums.
    fn is_negative_leading(&self) -> bool;
}

fn render_ratio<I>(r: &Ratio<I>) -> String
where
    I: Integer + Clone + Display,
{
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl<I> Field for Complex<Ratio<I>>
where
    I: Integer + Signed + Clone + Display + Debug + From<i64> + Send + Sync + 'static,
{
    fn imag_unit() -> Self {
        Complex::new(Ratio::zero(), Ratio::one())
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(Ratio::new(I::from(num), I::from(den)), Ratio::zero())
    }

    fn render(&self) -> String {
        let re = &self.re;
        let im = &self.im;
        let im_part = |v: &Ratio<I>| -> String {
            if v.is_one() {
                "i".to_string()
            } else if (-v.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", render_ratio(v))
            }
        };
        match (re.is_zero(), im.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => render_ratio(re),
            (true, false) => im_part(im),
            (false, false) => {
                let sign = if im.is_negative() { "-" } else { "+" };
                format!("({}{}{})", render_ratio(re), sign, im_part(&im.abs()))
            }
        }
    }

    fn is_negative_leading(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn renders_canonical_forms() {
        assert_eq!(Scalar::from_ratio(3, 6).render(), "1/2");
        assert_eq!(Scalar::imag_unit().render(), "i");
        assert_eq!((-Scalar::imag_unit()).render(), "-i");
        let z = Scalar::from_ratio(1, 2) - Scalar::imag_unit() * Scalar::from_int(3);
        assert_eq!(z.render(), "(1/2-3*i)");
        assert!(!z.is_negative_leading());
    }

    #[test]
    fn conjugation_flips_imaginary_unit() {
        let i = Scalar::imag_unit();
        assert_eq!(i.conj(), -i.clone());
        assert_eq!(i.clone() * i, -Scalar::one());
    }
}
