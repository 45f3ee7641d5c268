//! Text syntax for field elements: `a` or `a/b` over ℚ, polynomials in `t`
//! with integer coefficients over GF(p^k).

use num_bigint::BigInt;

use super::{Field, FieldElem, FieldError};

pub(super) fn parse(field: &Field, literal: &str) -> Result<FieldElem, FieldError> {
    let fail = |reason: &str| FieldError::Parse {
        literal: literal.to_string(),
        field: field.to_string(),
        reason: reason.to_string(),
    };
    let text: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(fail("empty literal"));
    }
    if !field.is_finite() {
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text.as_str(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| fail("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| fail("bad denominator"))?;
        if den == BigInt::from(0) {
            return Err(FieldError::DivisionByZero);
        }
        return Ok(&field.from_bigint(&num) / &field.from_bigint(&den));
    }

    let mut acc = field.zero();
    let mut rest = text.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => return Err(fail("expected '+' or '-' between terms")),
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = parse_term(field, &rest[..end]).map_err(|r| fail(&r))?;
        acc = if negative { &acc - &term } else { &acc + &term };
        rest = &rest[end..];
    }
    Ok(acc)
}

fn parse_term(field: &Field, term: &str) -> Result<FieldElem, String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let digits_end = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
    let (coeff_text, mut var) = term.split_at(digits_end);
    let coeff = if coeff_text.is_empty() {
        field.one()
    } else {
        let c: BigInt = coeff_text.parse().map_err(|_| "bad coefficient".to_string())?;
        field.from_bigint(&c)
    };
    if var.is_empty() {
        return Ok(coeff);
    }
    if let Some(v) = var.strip_prefix('*') {
        var = v;
    }
    let Some(after_t) = var.strip_prefix('t') else {
        return Err(format!("unexpected {var:?}"));
    };
    let t = field
        .generator()
        .ok_or_else(|| format!("{field} has no generator t"))?;
    let exp: u64 = match after_t.strip_prefix('^') {
        Some(e) => e.parse().map_err(|_| format!("bad exponent {e:?}"))?,
        None if after_t.is_empty() => 1,
        None => return Err(format!("unexpected {after_t:?}")),
    };
    Ok(&coeff * &t.pow(exp))
}
