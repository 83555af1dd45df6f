//! Number formatting shared by text, JSON and CSV output.

use hankel_core::BigRational;

/// `v` with 17 significant digits, trailing zeros removed, in plain
/// positional notation (`0.5`, `6`, `-0.001`).
pub fn sig17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let digits = digits.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(digits);
    }
    out
}

/// `p/q`, or `p` for integers.
pub fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(0.0), "0");
        assert_eq!(sig17(1.0), "1");
        assert_eq!(sig17(6.0), "6");
        assert_eq!(sig17(0.5), "0.5");
        assert_eq!(sig17(-0.25), "-0.25");
        assert_eq!(sig17(1234.5), "1234.5");
        assert_eq!(sig17(0.001), "0.001");
        assert_eq!(sig17(0.1), "0.10000000000000001");
        assert_eq!(sig17(1e20), "100000000000000000000");
        let x = 0.777_986_938_337_456_5;
        assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn rationals() {
        use hankel_core::scalar::q;
        assert_eq!(rational(&q(17, 72)), "17/72");
        assert_eq!(rational(&q(-4, 2)), "-2");
    }
}
