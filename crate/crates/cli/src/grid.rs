use hyperball::Complex64;

use crate::{parse_complex, UsageError};

/// A point given as comma-separated complex components; a single `0` is the origin.
pub fn parse_point(s: &str, n: usize, flag: &str) -> Result<Vec<Complex64>, UsageError> {
    parse_components(s, ',', n, flag)
}

fn parse_components(s: &str, sep: char, n: usize, flag: &str) -> Result<Vec<Complex64>, UsageError> {
    let parts: Vec<Complex64> = s
        .split(sep)
        .map(|c| parse_complex(c).map_err(|e| UsageError(format!("{flag}: {e}"))))
        .collect::<Result<_, _>>()?;
    if parts.len() == n {
        return Ok(parts);
    }
    if parts.len() == 1 && parts[0] == Complex64::new(0.0, 0.0) {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    Err(UsageError(format!("{flag}: expected {n} components, got {}", parts.len())))
}

/// `radial:start:stop:count` or `list:p1,p2,...` (components of a point separated by ';').
pub fn parse_grid(s: &str, n: usize) -> Result<Vec<Vec<Complex64>>, UsageError> {
    let bad = |m: &str| UsageError(format!("--w-grid: {m} in `{s}`"));
    if let Some(rest) = s.strip_prefix("radial:") {
        let f: Vec<&str> = rest.split(':').collect();
        if f.len() != 3 {
            return Err(bad("radial grids take start:stop:count"));
        }
        let a: f64 = f[0].parse().map_err(|_| bad("bad start"))?;
        let b: f64 = f[1].parse().map_err(|_| bad("bad stop"))?;
        let count: usize = f[2].parse().map_err(|_| bad("bad count"))?;
        if count == 0 {
            return Err(bad("count must be positive"));
        }
        return Ok((0..count)
            .map(|k| {
                let r = if count == 1 { a } else { a + (b - a) * k as f64 / (count - 1) as f64 };
                let mut w = vec![Complex64::new(0.0, 0.0); n];
                w[0] = Complex64::new(r, 0.0);
                w
            })
            .collect());
    }
    if let Some(rest) = s.strip_prefix("list:") {
        return rest.split(',').map(|p| parse_components(p, ';', n, "--w-grid")).collect();
    }
    Err(bad("expected `radial:` or `list:`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_and_list() {
        let g = parse_grid("radial:0:0.8:9", 1).unwrap();
        assert_eq!(g.len(), 9);
        assert!((g[8][0].re - 0.8).abs() < 1e-15);
        let g = parse_grid("list:0.1+0.2i,0.3", 1).unwrap();
        assert_eq!(g[0][0], Complex64::new(0.1, 0.2));
        let g = parse_grid("list:0.1;0.2i", 2).unwrap();
        assert_eq!(g[0], vec![Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.2)]);
        assert!(parse_grid("cube:1", 1).is_err());
        assert!(parse_grid("radial:0:1", 1).is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0", 2, "--z").unwrap().len(), 2);
        assert_eq!(parse_point("0.9+0i", 1, "--w").unwrap()[0], Complex64::new(0.9, 0.0));
        assert_eq!(parse_point("-1e-1-2e-1i", 1, "--w").unwrap()[0], Complex64::new(-0.1, -0.2));
        assert!(parse_point("0.1,0.2", 1, "--z").is_err());
    }
}
