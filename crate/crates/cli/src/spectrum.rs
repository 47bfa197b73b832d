//! Two-column spectral density files: `m  s(m)` per line, `#` comments.

use std::path::Path;

use casimir_friction::materials_spectral::SpectralDensity;

use crate::error::{CliError, CliResult};

pub fn parse_spectrum(text: &str, origin: &str) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let mut m = Vec::new();
    let mut s = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 2 {
            return Err(CliError::Config(format!("{origin}:{}: expected two columns, found {}", i + 1, cols.len())));
        }
        let parse = |c: &str| {
            c.parse::<f64>()
                .map_err(|_| CliError::Config(format!("{origin}:{}: '{c}' is not a number", i + 1)))
        };
        m.push(parse(cols[0])?);
        s.push(parse(cols[1])?);
    }
    if m.len() < 2 {
        return Err(CliError::Config(format!("{origin}: a spectrum needs at least two points")));
    }
    Ok((m, s))
}

pub fn read_spectrum(path: &Path) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read spectrum '{}': {e}", path.display())))?;
    parse_spectrum(&text, &path.display().to_string())
}

/// Builds a tabulated density, scaling the columns into reduced units.
pub fn tabulated(m: &[f64], s: &[f64], m_scale: f64, s_scale: f64) -> CliResult<SpectralDensity> {
    let m = m.iter().map(|x| x / m_scale).collect();
    let s = s.iter().map(|x| x / s_scale).collect();
    Ok(SpectralDensity::tabulated(m, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let (m, s) = parse_spectrum("# m s\n0 0\n1.0\t2.0\n2 4 # c\n", "x").unwrap();
        assert_eq!(m, vec![0.0, 1.0, 2.0]);
        assert_eq!(s, vec![0.0, 2.0, 4.0]);
        assert!(parse_spectrum("0 1 2\n", "x").is_err());
        assert!(parse_spectrum("0 a\n1 2\n", "x").unwrap_err().to_string().contains("x:1"));
        assert!(parse_spectrum("0 1\n", "x").is_err());
    }
}
