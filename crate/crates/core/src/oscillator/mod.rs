//! Harmonic-oscillator eigenfunctions and their matrix elements.
//!
//! Units: `ξ = √(mω/ħ) x`, `ħω = 1`. The eigenfunctions are
//! `ψ_n(ξ) = N_n H_n(ξ) e^{−ξ²/2}`; they are evaluated with the normalized
//! three-term recursion so no raw Hermite polynomial is ever formed.
//!
//! Powers of `ξ` have closed forms. `λξ` and `λξ³` (`λ = sign ξ`) do not; they
//! are integrated numerically inside the region where quadrature anchors are
//! trusted and extrapolated outside it (see [`lambda_element`]).

pub mod quadrature;
mod table;

pub use table::{build_element_table, cached_table, ElementTable, TABLE_CACHE_ENV};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest quantum number an element table may hold.
pub const TABLE_LIMIT: usize = 500;
/// Band offset beyond which `λ` elements are extrapolated in `k`.
pub const K_EXTRAP: usize = 50;
/// `n_e = N_EXTRAP_BASE − k/2` bounds the quadrature region in `n`.
pub const N_EXTRAP_BASE: usize = 100;

const QUARTER_PI_INV: f64 = 0.751_125_544_464_942_5; // π^{-1/4}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorTag {
    Xi,
    Xi2,
    Xi3,
    Xi4,
    LambdaXi,
    LambdaXi3,
}

impl OperatorTag {
    pub const ALL: [OperatorTag; 6] = [
        OperatorTag::Xi,
        OperatorTag::Xi2,
        OperatorTag::Xi3,
        OperatorTag::Xi4,
        OperatorTag::LambdaXi,
        OperatorTag::LambdaXi3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorTag::Xi => "xi",
            OperatorTag::Xi2 => "xi2",
            OperatorTag::Xi3 => "xi3",
            OperatorTag::Xi4 => "xi4",
            OperatorTag::LambdaXi => "lxi",
            OperatorTag::LambdaXi3 => "lxi3",
        }
    }

    /// Power of `|ξ|` in the operator.
    pub fn power(self) -> u32 {
        match self {
            OperatorTag::Xi | OperatorTag::LambdaXi => 1,
            OperatorTag::Xi2 => 2,
            OperatorTag::Xi3 | OperatorTag::LambdaXi3 => 3,
            OperatorTag::Xi4 => 4,
        }
    }

    pub fn is_closed_form(self) -> bool {
        !matches!(self, OperatorTag::LambdaXi | OperatorTag::LambdaXi3)
    }
}

impl fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "xi" => OperatorTag::Xi,
            "xi2" => OperatorTag::Xi2,
            "xi3" => OperatorTag::Xi3,
            "xi4" => OperatorTag::Xi4,
            "lxi" | "lambda_xi" => OperatorTag::LambdaXi,
            "lxi3" | "lambda_xi3" => OperatorTag::LambdaXi3,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown operator {other:?}"
                )))
            }
        })
    }
}

/// Fills `out[0..=max_n]` with `ψ_n(ξ)`.
///
/// The recursion `ψ_{n+1} = (√2 ξ ψ_n − √n ψ_{n−1}) / √(n+1)` is run from an
/// unscaled start and rescaled whenever it grows large; the Gaussian factor
/// is applied per entry at the end so nothing underflows before it has to.
pub fn wavefunctions(max_n: usize, xi: f64, out: &mut Vec<f64>) {
    out.clear();
    out.resize(max_n + 1, 0.0);
    let mut log_scale = vec![0.0; max_n + 1];
    let gauss = -0.5 * xi * xi;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut scale = 0.0_f64;
    out[0] = cur;
    for n in 0..max_n {
        let next = (2f64.sqrt() * xi * cur - (n as f64).sqrt() * prev) / ((n + 1) as f64).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            cur *= 1e-150;
            prev *= 1e-150;
            scale += 150.0 * std::f64::consts::LN_10;
        }
        out[n + 1] = cur;
        log_scale[n + 1] = scale;
    }
    for (v, s) in out.iter_mut().zip(&log_scale) {
        *v = if *v == 0.0 {
            0.0
        } else {
            *v * (s + gauss).exp() * QUARTER_PI_INV
        };
    }
}

/// `ψ_n(ξ)`.
pub fn wavefunction_value(n: usize, xi: f64) -> f64 {
    let mut buf = Vec::with_capacity(n + 1);
    wavefunctions(n, xi, &mut buf);
    buf[n]
}

/// `⟨n|ξ|m⟩`.
pub fn xi_element(n: usize, m: usize) -> f64 {
    let (lo, hi) = (n.min(m), n.max(m));
    if hi == lo + 1 {
        (hi as f64 / 2.0).sqrt()
    } else {
        0.0
    }
}

/// `⟨n|ξ²|m⟩`.
pub fn xi2_element(n: usize, m: usize) -> f64 {
    let (lo, hi) = (n.min(m), n.max(m));
    let x = lo as f64;
    match hi - lo {
        0 => x + 0.5,
        2 => 0.5 * ((x + 1.0) * (x + 2.0)).sqrt(),
        _ => 0.0,
    }
}

/// `⟨n|ξ³|m⟩`.
pub fn xi3_element(n: usize, m: usize) -> f64 {
    let (lo, hi) = (n.min(m), n.max(m));
    let x = lo as f64;
    match hi - lo {
        1 => 1.5 * (x + 1.0) * ((x + 1.0) / 2.0).sqrt(),
        3 => 0.5 * ((x + 1.0) * (x + 2.0) * (x + 3.0) / 2.0).sqrt(),
        _ => 0.0,
    }
}

/// `⟨n|ξ⁴|m⟩`.
pub fn xi4_element(n: usize, m: usize) -> f64 {
    let (lo, hi) = (n.min(m), n.max(m));
    let x = lo as f64;
    match hi - lo {
        0 => 0.75 * (2.0 * x * x + 2.0 * x + 1.0),
        2 => (x + 1.5) * ((x + 1.0) * (x + 2.0)).sqrt(),
        4 => 0.25 * ((x + 1.0) * (x + 2.0) * (x + 3.0) * (x + 4.0)).sqrt(),
        _ => 0.0,
    }
}

/// Composite Gauss–Legendre scheme for the half-line integrals behind the
/// `λ` operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureScheme {
    pub points_per_panel: usize,
    pub panel_width: f64,
    /// Distance integrated past the classical turning point `√(2n+1)`.
    pub tail: f64,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self {
            points_per_panel: 24,
            panel_width: 1.0,
            tail: 8.0,
        }
    }
}

impl QuadratureScheme {
    /// Upper integration limit for the pair `(n, m)`.
    pub fn cutoff(&self, n: usize, m: usize) -> f64 {
        ((2 * n.max(m) + 1) as f64).sqrt() + self.tail
    }

    pub fn panels(&self, n: usize, m: usize) -> usize {
        (self.cutoff(n, m) / self.panel_width).ceil() as usize
    }

    /// Nodes and weights covering `[0, panels·panel_width]` for the pair.
    pub fn rule(&self, n: usize, m: usize) -> (Vec<f64>, Vec<f64>) {
        let panels = self.panels(n, m);
        quadrature::composite_rule(
            0.0,
            panels as f64 * self.panel_width,
            panels,
            self.points_per_panel,
        )
    }
}

/// Whether `(n, m)` lies where the `λ` elements come straight from
/// quadrature: band offset `k ≤ 50` and lower index `≤ 100 − k/2`.
pub fn in_quadrature_region(n: usize, m: usize) -> bool {
    let (lo, hi) = (n.min(m), n.max(m));
    let k = hi - lo;
    k <= K_EXTRAP && 2 * lo + k <= 2 * N_EXTRAP_BASE
}

/// `2 ∫₀^∞ ψ_n ψ_m ξ^p dξ` by composite quadrature, with no parity check.
pub fn half_line_moment(n: usize, m: usize, power: u32, scheme: &QuadratureScheme) -> f64 {
    let (nodes, weights) = scheme.rule(n, m);
    let top = n.max(m);
    let mut psi = Vec::with_capacity(top + 1);
    let mut sum = 0.0;
    for (&x, &w) in nodes.iter().zip(&weights) {
        wavefunctions(top, x, &mut psi);
        sum += w * x.powi(power as i32) * psi[n] * psi[m];
    }
    2.0 * sum
}

fn check_index(n: usize, m: usize) -> Result<()> {
    if n > TABLE_LIMIT || m > TABLE_LIMIT {
        Err(Error::IndexOutOfRange {
            n,
            m,
            limit: TABLE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Exponent of the `k`-decay used past `k = 50`.
fn k_decay_exponent(tag: OperatorTag, lower: usize) -> f64 {
    match tag {
        OperatorTag::LambdaXi => 1.25,
        _ => 2.5 + 0.02 * lower as f64,
    }
}

/// Exponent of the `n`-growth used past `n_e`.
fn n_growth_exponent(tag: OperatorTag) -> f64 {
    match tag {
        OperatorTag::LambdaXi => 0.5,
        _ => 1.5,
    }
}

/// Extrapolation rules shared by single-element evaluation and table
/// construction. `anchor(n, k)` must return the quadrature value of
/// `⟨n|·|n+k⟩` for any in-region pair.
pub(crate) fn extrapolate(
    tag: OperatorTag,
    lower: usize,
    k: usize,
    anchor: &mut impl FnMut(usize, usize) -> f64,
) -> f64 {
    if k > K_EXTRAP {
        let base = extrapolate(tag, lower, K_EXTRAP, anchor);
        let sign = if ((K_EXTRAP + k) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let ratio = K_EXTRAP as f64 / k as f64;
        return sign * base * ratio.powf(k_decay_exponent(tag, lower));
    }
    let n_e = N_EXTRAP_BASE - k / 2;
    if lower > n_e {
        let base = anchor(n_e, k);
        return base * (lower as f64 / n_e as f64).powf(n_growth_exponent(tag));
    }
    anchor(lower, k)
}

/// `⟨n|λξ|m⟩` or `⟨n|λξ³|m⟩`.
///
/// Zero for odd `n + m`. Inside [`in_quadrature_region`] the value is
/// `2 ∫₀^∞ ψ_n ψ_m ξ^p dξ`; past `k = 50` it decays as
/// `(−1)^{(50+k)/2} (50/k)^e` from the `k = 50` anchor (`e = 5/4` for `λξ`,
/// `5/2 + 0.02 n` for `λξ³`), and past `n_e = 100 − k/2` it grows as
/// `(n/n_e)^{1/2}` or `(n/n_e)^{3/2}` from the `n_e` anchor.
pub fn lambda_element(
    tag: OperatorTag,
    n: usize,
    m: usize,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    if tag.is_closed_form() {
        return Err(Error::InvalidArgument(format!("{tag} is not a λ operator")));
    }
    check_index(n, m)?;
    if (n + m) % 2 == 1 {
        return Ok(0.0);
    }
    let (lo, hi) = (n.min(m), n.max(m));
    let power = tag.power();
    Ok(extrapolate(tag, lo, hi - lo, &mut |a, k| {
        half_line_moment(a, a + k, power, scheme)
    }))
}

pub fn lambda_xi_element(n: usize, m: usize, scheme: &QuadratureScheme) -> Result<f64> {
    lambda_element(OperatorTag::LambdaXi, n, m, scheme)
}

pub fn lambda_xi3_element(n: usize, m: usize, scheme: &QuadratureScheme) -> Result<f64> {
    lambda_element(OperatorTag::LambdaXi3, n, m, scheme)
}

/// Any operator element; closed forms ignore `scheme`.
pub fn element(tag: OperatorTag, n: usize, m: usize, scheme: &QuadratureScheme) -> Result<f64> {
    Ok(match tag {
        OperatorTag::Xi => xi_element(n, m),
        OperatorTag::Xi2 => xi2_element(n, m),
        OperatorTag::Xi3 => xi3_element(n, m),
        OperatorTag::Xi4 => xi4_element(n, m),
        _ => lambda_element(tag, n, m, scheme)?,
    })
}

/// Normalization `N_n = π^{-1/4} (2^n n!)^{-1/2}`, via logarithms.
pub fn normalization(n: usize) -> f64 {
    let log_fact: f64 = (1..=n).map(|i| (i as f64).ln()).sum();
    (-0.25 * PI.ln() - 0.5 * (n as f64 * 2f64.ln() + log_fact)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavefunction_examples() {
        assert!((wavefunction_value(0, 0.0) - PI.powf(-0.25)).abs() < 1e-15);
        assert!((wavefunction_value(0, 0.0) - 0.751126).abs() < 1e-6);
        assert_eq!(wavefunction_value(1, 0.0), 0.0);
        let expected = 2.0 * (-0.5f64).exp() * PI.powf(-0.25) / 8f64.sqrt();
        assert!((wavefunction_value(2, 1.0) - expected).abs() < 1e-15);
        assert!((wavefunction_value(2, 1.0) - 0.322144).abs() < 1e-6);
    }

    #[test]
    fn wavefunction_matches_hermite_form() {
        // ψ_n = N_n H_n e^{-ξ²/2} with explicit H_n for small n
        let hermite = |n: usize, x: f64| -> f64 {
            let (mut h0, mut h1) = (1.0, 2.0 * x);
            if n == 0 {
                return h0;
            }
            for k in 1..n {
                let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        };
        for n in 0..15 {
            for &x in &[-2.3, -0.4, 0.0, 0.7, 1.9, 3.3] {
                let direct = normalization(n) * hermite(n, x) * (-0.5 * x * x).exp();
                let rec = wavefunction_value(n, x);
                assert!((direct - rec).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn wavefunction_large_n_is_finite_and_normalized() {
        let scheme = QuadratureScheme::default();
        for n in [125usize, 200] {
            let norm = half_line_moment(n, n, 0, &scheme);
            assert!((norm - 1.0).abs() < 1e-10, "n={n}: {norm}");
        }
        assert!(wavefunction_value(500, 30.0).is_finite());
    }

    #[test]
    fn closed_form_examples() {
        assert!((xi_element(0, 1) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((xi_element(3, 2) - 1.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(xi_element(5, 5), 0.0);
        assert_eq!(xi2_element(4, 4), 4.5);
        assert_eq!(xi4_element(0, 0), 0.75);
        assert_eq!(xi4_element(1, 1), 3.75);
        assert!((xi4_element(0, 4) - 24f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((xi3_element(0, 3) - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((xi3_element(3, 0) - 0.86603).abs() < 1e-5);
    }

    #[test]
    fn lambda_examples() {
        let s = QuadratureScheme::default();
        let v = lambda_xi3_element(0, 0, &s).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-14);
        assert_eq!(lambda_xi3_element(0, 1, &s).unwrap(), 0.0);
        let v = lambda_xi3_element(0, 2, &s).unwrap();
        assert!((v - 6.0 / (8.0 * PI).sqrt()).abs() < 1e-14, "{v}");
        // ⟨0|λξ|0⟩ = 2 π^{-1/2} ∫ ξ e^{-ξ²} = π^{-1/2}
        let v = lambda_xi_element(0, 0, &s).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn lambda_index_limit() {
        let s = QuadratureScheme::default();
        assert_eq!(
            lambda_xi3_element(501, 1, &s),
            Err(Error::IndexOutOfRange {
                n: 501,
                m: 1,
                limit: 500
            })
        );
        assert!(lambda_element(OperatorTag::Xi2, 0, 0, &s).is_err());
    }

    #[test]
    fn region_boundary() {
        assert!(in_quadrature_region(100, 100));
        assert!(!in_quadrature_region(101, 101));
        assert!(in_quadrature_region(75, 125));
        assert!(!in_quadrature_region(76, 126));
        assert!(!in_quadrature_region(0, 52));
        assert!(in_quadrature_region(0, 50));
    }

    #[test]
    fn scheme_cutoff_covers_turning_point() {
        let s = QuadratureScheme::default();
        for (n, m) in [(0, 0), (10, 30), (500, 2)] {
            let c = s.cutoff(n, m);
            assert!(c >= ((2 * n.max(m) + 1) as f64).sqrt() + 8.0);
            assert!(s.panels(n, m) as f64 * s.panel_width >= c);
        }
    }

    #[test]
    fn operator_names_round_trip() {
        for tag in OperatorTag::ALL {
            assert_eq!(tag.name().parse::<OperatorTag>().unwrap(), tag);
        }
        assert_eq!(
            "lambda_xi3".parse::<OperatorTag>().unwrap(),
            OperatorTag::LambdaXi3
        );
        assert!("xi5".parse::<OperatorTag>().is_err());
    }
}
