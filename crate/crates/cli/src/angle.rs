//! Angle arguments: plain radians or multiples of pi such as `pi`, `-pi/2`,
//! `3pi/4` or `0.5*pi`.

use std::f64::consts::PI;

use crate::CliError;

fn number(s: &str) -> Result<f64, CliError> {
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| CliError::Validation(format!("invalid angle component `{s}`")))
}

pub fn parse(text: &str) -> Result<f64, CliError> {
    let s: String = text.trim().to_ascii_lowercase().replace(['*', ' '], "");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s.as_str(), None),
    };
    let value = match num.strip_suffix("pi") {
        Some("") | Some("+") => PI,
        Some("-") => -PI,
        Some(coef) => number(coef)? * PI,
        None => number(num)?,
    };
    match den {
        Some(d) => {
            let d = number(d)?;
            if d == 0.0 {
                return Err(CliError::Validation(format!(
                    "division by zero in angle `{text}`"
                )));
            }
            Ok(value / d)
        }
        None => Ok(value),
    }
}

pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse)
        .collect()
}

/// `start, start + step, …` up to and including `end` (within rounding).
pub fn grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if step <= 0.0 {
        return Err(CliError::Validation("theta step must be positive".into()));
    }
    if end < start {
        return Err(CliError::Validation(
            "theta end precedes theta start".into(),
        ));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}
