//! Order statistics and moments shared by the index and analytics layers.

use alloc::vec::Vec;

use crate::fmath;

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().sum::<f64>() / values.len() as f64)
}

/// Population standard deviation (divides by n, not n-1): the inputs here are
/// full populations (all ratings in a cell, all cells in a column), not samples.
pub fn population_std_dev(values: &[f64]) -> Option<f64> {
    let m = mean(values)?;
    let var = values.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / values.len() as f64;
    Some(fmath::sqrt(var))
}

/// Median; for an even-length input, the mean of the two central values.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        Some(sorted[n / 2])
    } else {
        Some((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0)
    }
}

/// First and third quartiles by linear interpolation on the sorted sample
/// (the "R-7" rule: index h = (n-1)p, interpolate between floor and ceil).
pub fn quartiles(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some((
        quantile_sorted(&sorted, 0.25),
        quantile_sorted(&sorted, 0.75),
    ))
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    debug_assert!(n > 0);
    let h = (n - 1) as f64 * p;
    let lo = h as usize; // h >= 0, truncation == floor
    let frac = h - lo as f64;
    if lo + 1 < n {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

pub fn median_of_u32(values: &[u32]) -> Option<f64> {
    let as_f64: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    median(&as_f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn quartiles_match_linear_interpolation() {
        // 1..=99 plus one extreme value; hand-checked against the R-7 rule.
        let mut vals: Vec<f64> = (1..=99).map(|v| v as f64).collect();
        vals.push(10_000.0);
        let (q1, q3) = quartiles(&vals).unwrap();
        assert_eq!(q1, 25.75);
        assert_eq!(q3, 75.25);
        assert_eq!(q3 + 3.0 * (q3 - q1), 223.75);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]).unwrap(), 2.5);
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[7.0]).unwrap(), 7.0);
    }

    #[test]
    fn population_std_dev_basics() {
        assert_eq!(population_std_dev(&[2.0, 2.0, 2.0]).unwrap(), 0.0);
        let sd = population_std_dev(&[2.0, 4.0]).unwrap();
        assert!((sd - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quartiles_single_value() {
        let (q1, q3) = quartiles(&[5.0]).unwrap();
        assert_eq!((q1, q3), (5.0, 5.0));
    }

    #[test]
    fn median_of_u32_works() {
        assert_eq!(median_of_u32(&[1, 2, 3]).unwrap(), 2.0);
        assert_eq!(median_of_u32(&[1, 2]).unwrap(), 1.5);
    }
}
