//! Numerical experiments: integral identities checked on single domains and
//! limit constructions checked by fitting rates over a parameter grid. Every
//! run returns a [`RateReport`].

mod identities;
mod limits;
pub mod random;
pub mod report;
mod sequences;
pub mod suite;

pub use identities::{run_divergence_identity, run_interstitial_decomposition, run_power_consistency};
pub use limits::{
    run_mollifier_limit, run_noll_check, run_tetrahedron_limit, MollifierParams, NollParams, TetrahedronParams,
};
pub use report::{loglog_fit, render_csv, render_summary, Check, CheckKind, RateReport, ReportRow, CSV_HEADER};
pub use sequences::{
    run_groove_blowup, run_wedge_limit, Expectation, GrooveParams, Pairing, WedgeDensity, WedgeParams,
};

/// `|a − b| / max(|a|, |b|, scale)`, zero when everything vanishes.
pub fn relative_error(a: f64, b: f64, scale: f64) -> f64 {
    let den = a.abs().max(b.abs()).max(scale.abs());
    if den == 0.0 {
        0.0
    } else {
        (a - b).abs() / den
    }
}
