//! Complex literals on the command line: `a+bi`, `a-bi`, `a`, `bi`.
//! Plain decimals only, no spaces, no exponents.

use num_complex::Complex64;

fn decimal(s: &str) -> Option<f64> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let mut dots = 0;
    let mut digits = 0;
    for ch in body.chars() {
        match ch {
            '0'..='9' => digits += 1,
            '.' => dots += 1,
            _ => return None,
        }
    }
    if digits == 0 || dots > 1 {
        return None;
    }
    s.parse().ok()
}

/// `bi`, `+bi`, `-bi`, or a bare `i` with coefficient 1.
fn imaginary(s: &str) -> Option<f64> {
    let coef = s.strip_suffix('i')?;
    match coef {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        c => decimal(c),
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("invalid complex literal '{}' (expected a+bi, a-bi, a or bi)", s);
    if s.is_empty() {
        return Err(bad());
    }
    if !s.ends_with('i') {
        return decimal(s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    }
    // The split is at the last sign that is not the leading one.
    let split = s.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    match split {
        Some(i) => {
            let re = decimal(&s[..i]).ok_or_else(bad)?;
            let im = imaginary(&s[i..]).ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        None => imaginary(s).map(|im| Complex64::new(0.0, im)).ok_or_else(bad),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("0").unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(parse_complex("-1.5").unwrap(), Complex64::new(-1.5, 0.0));
        assert_eq!(parse_complex("0.1+0.05i").unwrap(), Complex64::new(0.1, 0.05));
        assert_eq!(parse_complex("2-3i").unwrap(), Complex64::new(2.0, -3.0));
        assert_eq!(parse_complex("-2-.5i").unwrap(), Complex64::new(-2.0, -0.5));
        assert_eq!(parse_complex("0+1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn rejected_forms() {
        for s in ["", "1 + 2i", "1e3", "0x1", "1+2", "i+1", "1.2.3", "+", "1++2i", "nan", "inf"] {
            assert!(parse_complex(s).is_err(), "{}", s);
        }
    }
}
