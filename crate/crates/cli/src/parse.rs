//! Argument parsers: exact fractions for characters and "a+bi" complex numbers.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use num_rational::Ratio;

pub fn fraction(text: &str) -> Result<Ratio<i64>> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: i64 = num.parse().with_context(|| format!("bad numerator in {t:?}"))?;
    let den: i64 = den.parse().with_context(|| format!("bad denominator in {t:?}"))?;
    if den == 0 {
        bail!("zero denominator in {t:?}");
    }
    Ok(Ratio::new(num, den))
}

/// Comma-separated fractions; a single entry is repeated to dimension `nu`.
pub fn alpha(text: &str, nu: usize) -> Result<Vec<Ratio<i64>>> {
    let parts: Vec<Ratio<i64>> = text.split(',').map(fraction).collect::<Result<_>>()?;
    match parts.len() {
        1 => Ok(vec![parts[0]; nu]),
        n if n == nu => Ok(parts),
        n => Err(anyhow!("alpha has {n} components, expected 1 or {nu}")),
    }
}

/// "1.5", "1.5+0.5i", "2-3i", "0.5i".
pub fn complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || anyhow!("cannot parse {text:?} as a complex number");
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    // the sign that separates the parts is the last one not starting an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(complex("1.5+0.5i").unwrap(), Complex64::new(1.5, 0.5));
        assert_eq!(complex("2-3i").unwrap(), Complex64::new(2.0, -3.0));
        assert_eq!(complex("0.5i").unwrap(), Complex64::new(0.0, 0.5));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("1e-2+2e+1i").unwrap(), Complex64::new(0.01, 20.0));
        assert!(complex("x+1i").is_err());
    }

    #[test]
    fn alpha_forms() {
        assert_eq!(alpha("1/3,0,1/2", 3).unwrap()[2], Ratio::new(1, 2));
        assert_eq!(alpha("1/4", 2).unwrap(), vec![Ratio::new(1, 4); 2]);
        assert!(alpha("1/3,0", 3).is_err());
        assert!(alpha("1/0", 1).is_err());
    }
}
