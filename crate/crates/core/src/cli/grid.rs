//! `start:stop:step` grids.

use std::str::FromStr;

/// Inclusive arithmetic grid; a bare number is a one-point grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Grid values are rounded to this many decimals to hide `i * step` noise.
const DECIMALS: i32 = 12;

fn round(x: f64) -> f64 {
    let scale = 10f64.powi(DECIMALS);
    (x * scale).round() / scale
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => Ok(Grid(vec![number(single)?])),
            [start, stop, step] => {
                let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
                if !(step > 0.0) {
                    return Err(format!("grid step {step} must be > 0"));
                }
                if stop < start {
                    return Err(format!("grid stop {stop} is below start {start}"));
                }
                // endpoints count when within half a step
                let count = ((stop - start) / step + 0.5).floor() as usize + 1;
                if count > 1_000_000 {
                    return Err(format!("grid has {count} points"));
                }
                Ok(Grid((0..count).map(|i| round(start + i as f64 * step)).collect()))
            }
            _ => Err(format!("`{s}` is not `start:stop:step` or a single number")),
        }
    }
}

/// Counts written as integers or in scientific notation (`1e6`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.trim().parse::<u64>() {
        return Ok(v);
    }
    let v = number(s)?;
    if v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(v as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_endpoints() {
        let g: Grid = "0:1:0.1".parse().unwrap();
        assert_eq!(g.0.len(), 11);
        assert_eq!(g.0[3], 0.3);
        assert_eq!(*g.0.last().unwrap(), 1.0);
        let g: Grid = "10:40:5".parse().unwrap();
        assert_eq!(g.0, vec![10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0]);
        let g: Grid = "0:1:0.3".parse().unwrap();
        assert_eq!(g.0, vec![0.0, 0.3, 0.6, 0.9]);
        let g: Grid = "0:1:0.4".parse().unwrap();
        assert_eq!(g.0, vec![0.0, 0.4, 0.8, 1.2]);
        let g: Grid = "0.5".parse().unwrap();
        assert_eq!(g.0, vec![0.5]);
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in ["1:0:0.1", "0:1:0", "0:1", "a:b:c", "0:1:-1", "nan"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("250").unwrap(), 250);
        assert_eq!(parse_count("2.5E3").unwrap(), 2500);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }
}
