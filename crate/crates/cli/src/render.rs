//! Text rendering: 9-significant-digit floats and the human-readable report.

use steer_core::criteria::FullReport;
use steer_core::{DensityMatrix, SteeringVerdict};

/// Plain decimal with `sig` significant digits (margins, purities and
/// thresholds all live in [-1, 1], so no exponent form is needed).
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{:.*}", sig - 1, x);
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn verdict_word(v: &SteeringVerdict) -> &'static str {
    if v.detected {
        "detected"
    } else if v.is_boundary() {
        "boundary"
    } else {
        "not detected"
    }
}

pub fn report_text(rho: &DensityMatrix, report: &FullReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("bipartition     {} x {}", rho.dim_a(), rho.dim_b()));
    line(format!("purity joint    {}", fmt_sig(report.purities.joint, 9)));
    line(format!("purity A        {}", fmt_sig(report.purities.a, 9)));
    line(format!("purity B        {}", fmt_sig(report.purities.b, 9)));
    if let Some(v) = &report.a_to_b {
        line(format!(
            "a->b margin     {}  {}",
            fmt_sig(v.margin, 9),
            verdict_word(v)
        ));
    }
    if let Some(v) = &report.b_to_a {
        line(format!(
            "b->a margin     {}  {}",
            fmt_sig(v.margin, 9),
            verdict_word(v)
        ));
    }
    if let Some(v) = &report.pauli_correlation {
        line(format!(
            "pauli margin    {}  {}  (two-qubit correlation test)",
            fmt_sig(v.margin, 9),
            verdict_word(v)
        ));
    }
    line(format!(
        "entanglement certified: {}",
        if report.entanglement_certified { "yes" } else { "no" }
    ));
    out
}
