//! Float helpers over `libm`, since `core` has no transcendental functions.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Round to nearest, ties away from zero.
#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Complementary CDF of the unit-mean exponential, `Pr(|h|^2 >= x)`.
#[inline]
pub(crate) fn exp_ccdf(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        exp(-x)
    }
}
