use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GaussianRational;

/// A value that is exact when it can be, numeric otherwise.
///
/// Arithmetic stays exact while both operands are exact and falls back to
/// `Complex64` as soon as either side is numeric.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Numeric(Complex64),
}

impl Scalar {
    pub fn exact(v: GaussianRational) -> Self {
        Scalar::Exact(v)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(GaussianRational::from_int(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            Scalar::Exact(v) => Some(v),
            Scalar::Numeric(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(v) => v.to_complex64(),
            Scalar::Numeric(z) => *z,
        }
    }

    /// Exactly zero for exact values; `|z| == 0.0` for numeric ones.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(v) => v.is_zero(),
            Scalar::Numeric(z) => z.norm() == 0.0,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn distance(&self, other: &Scalar) -> f64 {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => (a - b).to_complex64().norm(),
            _ => (self.to_complex() - other.to_complex()).norm(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Exact(v) => Scalar::Exact(v.pow(e)),
            Scalar::Numeric(z) => Scalar::Numeric(z.powu(e)),
        }
    }

    pub fn zero() -> Self {
        Scalar::Exact(GaussianRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(GaussianRational::one())
    }

    /// Deterministic order: magnitude, then phase in `(-π, π]`, with an exact
    /// lexicographic tie-break when both sides are exact.
    pub fn display_order(&self, other: &Scalar) -> std::cmp::Ordering {
        let (a, b) = (self.to_complex(), other.to_complex());
        a.norm()
            .total_cmp(&b.norm())
            .then_with(|| a.arg().total_cmp(&b.arg()))
            .then_with(|| match (self, other) {
                (Scalar::Exact(x), Scalar::Exact(y)) => x.lex_cmp(y),
                _ => std::cmp::Ordering::Equal,
            })
    }
}

impl From<GaussianRational> for Scalar {
    fn from(v: GaussianRational) -> Self {
        Scalar::Exact(v)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Numeric(z)
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$m(b)),
                    _ => Scalar::Numeric(self.to_complex().$m(rhs.to_complex())),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

scalar_op!(Add, add);
scalar_op!(Sub, sub);
scalar_op!(Mul, mul);
scalar_op!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Numeric(z) => Scalar::Numeric(-z),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(v) => write!(f, "{v}"),
            Scalar::Numeric(z) if z.im == 0.0 => write!(f, "{}", fmt_decimal(z.re)),
            Scalar::Numeric(z) => {
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", fmt_decimal(z.re), sign, fmt_decimal(z.im.abs()))
            }
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_decimal(x: f64) -> String {
    if x == 0.0 {
        // normalizes -0.0
        return "0.0000000000000000e0".into();
    }
    format!("{x:.16e}")
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: String,
    im: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<GaussianRational>,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let z = self.to_complex();
        ScalarRepr {
            re: fmt_decimal(z.re),
            im: fmt_decimal(z.im),
            exact: self.as_exact().cloned(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        if let Some(v) = repr.exact {
            return Ok(Scalar::Exact(v));
        }
        let re = repr.re.parse::<f64>().map_err(serde::de::Error::custom)?;
        let im = repr.im.parse::<f64>().map_err(serde::de::Error::custom)?;
        Ok(Scalar::Numeric(Complex64::new(re, im)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactness_propagates() {
        let a = Scalar::from_int(3);
        let b = Scalar::Exact(GaussianRational::ratio(1, 2));
        assert_eq!(&a * &b, Scalar::Exact(GaussianRational::ratio(3, 2)));
        let c = Scalar::Numeric(Complex64::new(0.5, 0.0));
        assert!(!(&a + &c).is_exact());
        assert!(((&a + &c).to_complex() - Complex64::new(3.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn serde_keeps_exact_literal() {
        let s = Scalar::Exact(GaussianRational::from_parts(1, 3, -2, 1));
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"exact\":\"1/3-2i\""), "{json}");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), s);
        let n = Scalar::Numeric(Complex64::new(1.618033988749895, 0.0));
        let back: Scalar = serde_json::from_str(&serde_json::to_string(&n).unwrap()).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn display_order_is_magnitude_then_phase() {
        let mut v = vec![Scalar::from_int(-2), Scalar::from_int(3), Scalar::from_int(2)];
        v.sort_by(Scalar::display_order);
        assert_eq!(v, vec![Scalar::from_int(2), Scalar::from_int(-2), Scalar::from_int(3)]);
    }
}
