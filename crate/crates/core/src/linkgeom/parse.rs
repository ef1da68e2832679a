//! Plain-text vertex lists: one `x y z` triple per line, components separated
//! by blank lines, `#` starts a comment. Coordinates are integers, fractions
//! `p/q` or finite decimals, all read exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LinkError, Point, PolygonalCurve};
use crate::Rational;

pub fn parse_rational(token: &str) -> Option<Rational> {
    if let Some((n, d)) = token.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| Rational::new(n, d));
    }
    if let Some((int_part, frac)) = token.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().ok()?;
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = token.parse().ok()?;
    Some(Rational::new(n, BigInt::one()))
}

/// Parses every component of a link file, validating each curve.
pub fn parse_link_text(text: &str) -> Result<Vec<PolygonalCurve<Rational>>, LinkError> {
    let mut curves = Vec::new();
    let mut block: Vec<Point<Rational>> = Vec::new();
    let mut block_start = 0;
    let finish = |block: &mut Vec<Point<Rational>>,
                      curves: &mut Vec<PolygonalCurve<Rational>>,
                      line: usize|
     -> Result<(), LinkError> {
        if block.is_empty() {
            return Ok(());
        }
        let c = PolygonalCurve::new(std::mem::take(block)).map_err(|e| LinkError::Parse {
            line,
            message: e.to_string(),
        })?;
        curves.push(c);
        Ok(())
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            // Comment-only lines do not terminate a block.
            if raw.trim().is_empty() {
                finish(&mut block, &mut curves, block_start)?;
            }
            continue;
        }
        if block.is_empty() {
            block_start = line_no;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(LinkError::Parse {
                line: line_no,
                message: format!("expected 3 coordinates, found {}", tokens.len()),
            });
        }
        let mut coords = tokens.iter().map(|t| {
            parse_rational(t).ok_or_else(|| LinkError::Parse {
                line: line_no,
                message: format!("not a rational number: {t:?}"),
            })
        });
        let x = coords.next().unwrap()?;
        let y = coords.next().unwrap()?;
        let z = coords.next().unwrap()?;
        block.push(Point::new(x, y, z));
    }
    finish(&mut block, &mut curves, block_start)?;
    Ok(curves)
}
