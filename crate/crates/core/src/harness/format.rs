/// Formats `x` with exactly 9 significant digits.
///
/// Magnitudes in `[1e-4, 1e9)` print in positional notation, anything else
/// in scientific notation.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    let sci = format!("{x:.8e}");
    // exponent after rounding, so 9.9999999996 counts as 1e1
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-4..9).contains(&exp) {
        format!("{:.*}", (8 - exp) as usize, x)
    } else {
        sci
    }
}
