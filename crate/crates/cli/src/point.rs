//! Parsing of upper half-plane points: `i`, `rho`, `x+yi`, `yi`, `(a+sqrt(-D))/c` and
//! `(a+i*sqrt(D))/c`.

use greencm::greeneval::UHPoint;

pub fn parse_point(s: &str) -> Result<UHPoint, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (x, y) = match t.as_str() {
        "i" => (0.0, 1.0),
        "rho" => (-0.5, 3f64.sqrt() / 2.0),
        _ => surd_form(&t).or_else(|| cartesian(&t)).ok_or_else(|| format!("cannot parse the point {s:?}"))?,
    };
    UHPoint::new(x, y).map_err(|e| e.to_string())
}

/// `(a±sqrt(-D))/c`, `(a±i*sqrt(D))/c`, or the same without `a` or without `/c`.
fn surd_form(t: &str) -> Option<(f64, f64)> {
    let (num, den) = match t.rsplit_once('/') {
        Some((n, d)) if t.starts_with('(') && n.ends_with(')') => (&n[1..n.len() - 1], d.parse::<f64>().ok()?),
        None => (t, 1.0),
        _ => return None,
    };
    let (a, rest) = match num.find("sqrt(").or_else(|| num.find("i*sqrt(")) {
        Some(0) => ("0", num),
        Some(k) => {
            let k = if num[..k].ends_with("i*") { k - 2 } else { k };
            let sign_pos = num[..k].rfind(['+', '-'])?;
            (&num[..sign_pos], &num[sign_pos..])
        }
        None => return None,
    };
    let a: f64 = if a.is_empty() { 0.0 } else { a.parse().ok()? };
    let (sign, body) = match rest.strip_prefix('-') {
        Some(b) => (-1.0, b),
        None => (1.0, rest.strip_prefix('+').unwrap_or(rest)),
    };
    let radicand = if let Some(b) = body.strip_prefix("i*sqrt(") {
        b.strip_suffix(')')?.parse::<f64>().ok()?
    } else {
        -body.strip_prefix("sqrt(")?.strip_suffix(')')?.parse::<f64>().ok()?
    };
    if radicand <= 0.0 {
        return None;
    }
    Some((a / den, sign * radicand.sqrt() / den))
}

/// `x+yi`, `x-yi` or `yi`.
fn cartesian(t: &str) -> Option<(f64, f64)> {
    let body = t.strip_suffix('i')?;
    let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
    match split {
        Some(k) if !body[..k].ends_with(['e', 'E']) => {
            let x = body[..k].parse().ok()?;
            let y = coefficient(&body[k..])?;
            Some((x, y))
        }
        _ => Some((0.0, coefficient(body)?)),
    }
}

fn coefficient(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => s.parse().ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: &str) -> (f64, f64) {
        let p = parse_point(s).unwrap();
        (p.x, p.y)
    }

    #[test]
    fn accepted_syntaxes() {
        assert_eq!(xy("i"), (0.0, 1.0));
        assert_eq!(xy("0.5+1.25i"), (0.5, 1.25));
        assert_eq!(xy("-0.5+2i"), (-0.5, 2.0));
        assert_eq!(xy("3i"), (0.0, 3.0));
        let r = 23f64.sqrt();
        assert_eq!(xy("(1+sqrt(-23))/2"), (0.5, r / 2.0));
        assert_eq!(xy("(-1 + sqrt(-23))/4"), (-0.25, r / 4.0));
        assert_eq!(xy("(1+i*sqrt(7))/2"), (0.5, 7f64.sqrt() / 2.0));
        assert_eq!(xy("sqrt(-2)"), (0.0, 2f64.sqrt()));
    }

    #[test]
    fn rejected_syntaxes() {
        for s in ["", "1+2", "(1-sqrt(-23))/2", "0.5-1i", "sqrt(5)", "x"] {
            assert!(parse_point(s).is_err(), "{s}");
        }
    }
}
