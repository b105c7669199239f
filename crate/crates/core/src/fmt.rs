//! Fixed-precision number formatting shared by every CSV and JSON writer.

/// Significant digits in every emitted floating point value.
pub const SIG_DIGITS: usize = 12;

/// Formats `x` like C's `%.12g`.
pub fn sig(x: f64) -> String {
    sig_digits(x, SIG_DIGITS)
}

/// Formats `x` like C's `%.{digits}g`: shortest of fixed or scientific
/// notation, trailing zeros removed.
pub fn sig_digits(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    // Exponent after rounding to `digits` significant digits.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// Rounds `x` to 12 significant digits. Serializing the result with a
/// shortest-round-trip printer yields at most 12 digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = sig(x).parse().expect("sig output parses");
    // Avoid emitting "-0".
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
