//! Parsers for the comma-separated values accepted on the command line.

use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    if text.trim().is_empty() {
        return Err(Error::InvalidParameter(format!("empty {what} list")));
    }
    text.split(',')
        .map(|item| {
            item.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad {what} entry {item:?}")))
        })
        .collect()
}

/// Grid sizes such as `64,64`.
pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    parse_list(text, "dims")
}

/// Box extents such as `1,2.5`; each must be finite and positive.
pub fn parse_extents(text: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = parse_list(text, "extent")?;
    if let Some(bad) = v.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::InvalidParameter(format!("extent {bad} must be finite and positive")));
    }
    Ok(v)
}

/// Lattice frequencies such as `3,-1`.
pub fn parse_frequency(text: &str) -> Result<Vec<i64>> {
    parse_list(text, "frequency")
}

/// A complex number written `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let v: Vec<f64> = parse_list(text, "complex")?;
    let c = match v.as_slice() {
        [re] => Complex64::new(*re, 0.0),
        [re, im] => Complex64::new(*re, *im),
        _ => return Err(Error::InvalidParameter(format!("complex value {text:?} needs 1 or 2 parts"))),
    };
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(Error::InvalidParameter(format!("complex value {text:?} is not finite")))
    }
}

/// A blade written `1`, `e2` or `e13` (generator indices 1..=9, ascending).
pub fn parse_blade(text: &str, n: usize) -> Result<crate::clifford::BladeIndex> {
    let text = text.trim();
    if text == "1" {
        return crate::clifford::BladeIndex::new(0, n);
    }
    let digits = text
        .strip_prefix('e')
        .filter(|d| !d.is_empty())
        .ok_or_else(|| Error::InvalidParameter(format!("bad blade {text:?}")))?;
    let indices = digits
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidParameter(format!("bad blade {text:?}")))?;
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!("blade {text:?} must list generators in ascending order")));
    }
    crate::clifford::BladeIndex::from_indices(&indices, n)
}
