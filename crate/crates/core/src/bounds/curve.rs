use std::fmt::Write as _;

use super::closed_form::{lower_rate, upper_rate_aux_graph, upper_rate_legacy, upper_rate_refined};
use crate::error::{out_of_range, Result};

const LAMBDA_STAR: f64 = 2.0 / 9.0;

/// Exponential rates of the main bounds at one value of `λ = m/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub lambda: f64,
    pub lower_rate: f64,
    pub upper_rate_legacy: f64,
    pub upper_rate_refined: f64,
    pub upper_rate_aux_graph: f64,
    /// Above 2/9 the code size is bounded by a constant and every rate is 1.
    pub constant_regime: bool,
}

pub fn rate_row(lambda: f64) -> Result<RateRow> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(out_of_range(format!("lambda {lambda} outside [0,1]")));
    }
    if lambda > LAMBDA_STAR {
        return Ok(RateRow {
            lambda,
            lower_rate: 1.0,
            upper_rate_legacy: 1.0,
            upper_rate_refined: 1.0,
            upper_rate_aux_graph: 1.0,
            constant_regime: true,
        });
    }
    Ok(RateRow {
        lambda,
        lower_rate: lower_rate(lambda)?.rate,
        upper_rate_legacy: upper_rate_legacy(lambda)?.rate,
        upper_rate_refined: upper_rate_refined(lambda)?.rate,
        upper_rate_aux_graph: upper_rate_aux_graph(lambda)?.rate,
        constant_regime: false,
    })
}

/// CSV of [`rate_row`] at `0, step, 2·step, …` up to 1.
pub fn curve_csv(step: f64) -> Result<String> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(out_of_range(format!("grid step {step} must lie in (0,1]")));
    }
    let count = (1.0 / step + 1e-9).floor() as usize;
    let mut out = String::from("lambda,lower_rate,upper_rate_legacy,upper_rate_refined,upper_rate_aux_graph,constant_regime_flag\n");
    for i in 0..=count {
        let r = rate_row((i as f64 * step).min(1.0))?;
        writeln!(
            out,
            "{},{:.12},{:.12},{:.12},{:.12},{}",
            r.lambda, r.lower_rate, r.upper_rate_legacy, r.upper_rate_refined, r.upper_rate_aux_graph, u8::from(r.constant_regime)
        )
        .expect("writing to a String");
    }
    Ok(out)
}
