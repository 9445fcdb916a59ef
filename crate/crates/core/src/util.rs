use crate::Complex64;

pub const DB_FLOOR: f64 = -120.0;

/// `10 log10(x)`, clamped at -120 dB for values below 1e-12.
pub fn to_db(x: f64) -> f64 {
    if x.is_nan() {
        f64::NAN
    } else if x < 1e-12 {
        DB_FLOOR
    } else {
        10.0 * x.log10()
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
