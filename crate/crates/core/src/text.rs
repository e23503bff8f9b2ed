//! Round-trip decimal formatting shared by every text and CSV writer.

/// Formats `x` with the shortest decimal string that parses back to the same
/// `f64` (at most 17 significant digits).
///
/// Values in `[1e-5, 1e16)` use positional notation, everything else uses
/// exponent notation so tiny matrix elements do not expand into hundreds of
/// zeros.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
