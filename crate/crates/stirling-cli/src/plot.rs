//! Normalized root clouds as CSV.
//!
//! One row per root of `p_n/x`, ordered by argument then modulus, preceded by
//! a `zero-root` row when `p_n(0) = 0`. Real and imaginary parts are printed
//! with `DIGITS` significant digits; `residual` is the scaled residual
//! `|p(z)| / sum |a_k| max(1,|z|)^k`.

use rayon::prelude::*;
use stirling_core::analysis::{format_float, normalized_root_cloud, RootCloud, RESIDUAL_LOG2_THRESHOLD};
use stirling_core::Family;

use crate::report::Outcome;
use crate::CliError;

pub const CSV_HEADER: &str = "kind,r,n,re,im,norm_re,norm_im,residual";
pub const DIGITS: usize = 30;

/// `2^l2` in decimal scientific notation, `0` for an exact zero.
pub fn pow2_scientific(l2: f64) -> String {
    if !l2.is_finite() {
        return "0".into();
    }
    let l10 = l2 * core::f64::consts::LOG10_2;
    let mut e = l10.floor();
    let mut m = 10f64.powf(l10 - e);
    if m >= 9.9995 {
        m /= 10.0;
        e += 1.0;
    }
    format!("{m:.3}e{}", e as i64)
}

pub fn cloud_rows(kind: &str, cloud: &RootCloud) -> String {
    let mut s = String::new();
    if cloud.zero_root {
        s.push_str(&format!("{kind},{},{},0,0,0,0,zero-root\n", cloud.r, cloud.n));
    }
    for rec in &cloud.records {
        s.push_str(&format!(
            "{kind},{},{},{},{},{},{},{}\n",
            rec.r,
            rec.n,
            format_float(&rec.re, DIGITS),
            format_float(&rec.im, DIGITS),
            format_float(&rec.norm_re, DIGITS),
            format_float(&rec.norm_im, DIGITS),
            pow2_scientific(rec.residual_log2)
        ));
    }
    s
}

/// Every residual below the acceptance threshold and the numeric real count
/// equal to the exact Sturm count.
pub fn check_cloud(cloud: &RootCloud) -> Outcome {
    if cloud.real_count != cloud.sturm_real_count {
        return Outcome::falsified(format!(
            "r={} n={}: {} numeric real roots, Sturm count {}",
            cloud.r, cloud.n, cloud.real_count, cloud.sturm_real_count
        ));
    }
    if let Some(rec) = cloud.records.iter().find(|x| x.residual_log2 >= RESIDUAL_LOG2_THRESHOLD) {
        return Outcome::falsified(format!(
            "r={} n={}: residual 2^{:.1} at or above 2^{}",
            cloud.r, cloud.n, rec.residual_log2, RESIDUAL_LOG2_THRESHOLD
        ));
    }
    let worst = cloud.records.iter().map(|x| x.residual_log2).fold(f64::NEG_INFINITY, f64::max);
    Outcome::verified().with_value(format!(
        "{} roots, {} real, worst residual {}, {} bits",
        cloud.records.len(),
        cloud.real_count,
        pow2_scientific(worst),
        cloud.precision_bits
    ))
}

/// Clouds for every `(r, n)`, in the order of `r_list` then `n_list`.
pub fn clouds(family: Family, r_list: &[u32], n_list: &[usize], bits: usize) -> Result<Vec<RootCloud>, CliError> {
    let jobs: Vec<(u32, usize)> = r_list.iter().flat_map(|&r| n_list.iter().map(move |&n| (r, n))).collect();
    let out: Result<Vec<Vec<RootCloud>>, CliError> = jobs
        .par_iter()
        .map(|&(r, n)| normalized_root_cloud(family, r, &[n], bits).map_err(CliError::from))
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

pub fn csv(kind: &str, clouds: &[RootCloud]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for c in clouds {
        s.push_str(&cloud_rows(kind, c));
    }
    s
}
