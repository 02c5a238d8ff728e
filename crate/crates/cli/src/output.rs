//! Output schemas and formatting.
//!
//! CSV: header row, comma separators, UTF-8, LF line endings, floats at 15
//! significant digits. JSON: one object per document, lower_snake_case
//! keys, an explicit schema_version field, keys always present (undefined
//! values are null).

use serde::Serialize;

use sprt_coherent::EstimateWithCI;

pub const CLOSED_FORM_SCHEMA: &str = "sprt-coherent.closed-form.v1";
pub const OPTIMIZE_SCHEMA: &str = "sprt-coherent.optimize.v1";
pub const SIMULATE_SCHEMA: &str = "sprt-coherent.simulate-summary.v1";
pub const UNAMBIGUOUS_SCHEMA: &str = "sprt-coherent.unambiguous.v1";
pub const MANIFEST_SCHEMA: &str = "sprt-coherent.manifest.v1";

/// 15 significant digits; enough for downstream comparisons at double
/// precision without locale surprises.
pub fn g15(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn to_json_document<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output schemas always serialize");
    text.push('\n');
    text
}

#[derive(Debug, Serialize)]
pub struct GridPoint {
    pub l: u32,
    pub p0: f64,
    pub p1: f64,
    pub ps: f64,
}

#[derive(Debug, Serialize)]
pub struct ClosedFormDoc {
    pub schema_version: &'static str,
    pub n: u32,
    pub theta0: f64,
    pub theta1: f64,
    pub alpha: f64,
    pub beta: f64,
    pub points: Vec<GridPoint>,
}

pub fn grid_csv(points: &[GridPoint]) -> String {
    let mut text = String::from("l,p0,p1,ps\n");
    for point in points {
        text.push_str(&format!(
            "{},{},{},{}\n",
            point.l,
            g15(point.p0),
            g15(point.p1),
            g15(point.ps)
        ));
    }
    text
}

#[derive(Debug, Serialize)]
pub struct OptimizeDoc {
    pub schema_version: &'static str,
    pub case: String,
    pub l_argmax: u32,
    pub p_s_max: f64,
    pub p0: f64,
    pub p1: f64,
    pub l_opt_closed_form: Option<f64>,
    pub l_opt_rounded: Option<u32>,
    pub l_min: Option<f64>,
    pub l_min_rounded: Option<u32>,
    pub l_max: Option<f64>,
    pub l_max_rounded: Option<u32>,
    pub note: Option<String>,
    pub recommendation: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct EstimateDoc {
    pub point: f64,
    pub stderr: f64,
    pub n_trials: u64,
}

impl From<EstimateWithCI> for EstimateDoc {
    fn from(estimate: EstimateWithCI) -> Self {
        Self {
            point: estimate.point,
            stderr: estimate.stderr,
            n_trials: estimate.n_trials,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClosedTriple {
    pub p0: f64,
    pub p1: f64,
    pub ps: f64,
}

#[derive(Debug, Serialize)]
pub struct SimulateParams {
    pub n: u32,
    pub theta0: f64,
    pub theta1: f64,
    pub alpha: f64,
    pub beta: f64,
    pub l: u32,
    pub truth: u8,
    pub trajectories: u64,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct SimulateSummaryDoc {
    pub schema_version: &'static str,
    pub parameters: SimulateParams,
    pub horizon: usize,
    pub leftover_copies: u32,
    pub log_a: f64,
    pub log_b: f64,
    /// Closed forms at the analytic horizon n0 = N/l.
    pub closed_form: ClosedTriple,
    /// Closed forms at the simulated horizon n0 = floor(N/l); identical to
    /// `closed_form` whenever l divides N.
    pub closed_form_at_horizon: ClosedTriple,
    pub horizon_estimate: EstimateDoc,
    pub first_crossing_estimate: EstimateDoc,
}

pub fn mean_path_csv(mean_path: &[f64]) -> String {
    let mut text = String::from("n,z_mean\n");
    for (step, value) in mean_path.iter().enumerate() {
        text.push_str(&format!("{},{}\n", step + 1, g15(*value)));
    }
    text
}

#[derive(Debug, Serialize)]
pub struct UnambiguousDoc {
    pub schema_version: &'static str,
    pub overlap: f64,
    pub theta_angle: f64,
    pub n: u32,
    pub l: u32,
    pub ps_direct: f64,
    pub ps_batched: f64,
    pub equal: bool,
}

pub fn unambiguous_csv(doc: &UnambiguousDoc) -> String {
    format!(
        "overlap,n,l,ps_direct,ps_batched\n{},{},{},{},{}\n",
        g15(doc.overlap),
        doc.n,
        doc.l,
        g15(doc.ps_direct),
        g15(doc.ps_batched)
    )
}

pub fn unambiguous_text(doc: &UnambiguousDoc) -> String {
    format!(
        "overlap c = {}, N = {}, l = {}\n\
         P_S direct (1 - c^N)          = {}\n\
         P_S batched (1 - (c^l)^(N/l)) = {}\n\
         equal: {}\n",
        g15(doc.overlap),
        doc.n,
        doc.l,
        g15(doc.ps_direct),
        g15(doc.ps_batched),
        doc.equal
    )
}
