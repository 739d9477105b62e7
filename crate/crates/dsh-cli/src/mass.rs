//! Mass expressions: complex literals optionally scaled by H, such as
//! `0.3`, `1+0.5i`, `H/2`, `3H/2`, `iH/4`, `-iH` or `(1+i)H`.

use num_complex::Complex64;

use crate::error::CliError;

pub fn parse_mass(expr: &str, h: f64) -> Result<Complex64, CliError> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("cannot parse mass expression '{expr}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(pos) = s.find('H') else {
        return s.parse::<Complex64>().map_err(|_| bad());
    };
    let (coef, rest) = (&s[..pos], &s[pos + 1..]);
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let coef = match coef {
        "" | "+" => Complex64::new(1.0, 0.0),
        "-" => Complex64::new(-1.0, 0.0),
        c => {
            let inner = c
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(c);
            let (sign, inner) = match c.strip_prefix("-(") {
                Some(r) => (-1.0, r.strip_suffix(')').ok_or_else(bad)?),
                None => (1.0, inner),
            };
            sign * inner.parse::<Complex64>().map_err(|_| bad())?
        }
    };
    let denom = match rest {
        "" => 1.0,
        r => {
            let d: f64 = r.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if d == 0.0 || !d.is_finite() {
                return Err(bad());
            }
            d
        }
    };
    Ok(coef * h / denom)
}

/// m = i(H/2)(1+ℓ)
pub fn lattice_mass(ell: i32, h: f64) -> Complex64 {
    Complex64::new(0.0, 0.5 * h * (1.0 + ell as f64))
}
