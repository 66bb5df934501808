//! Plain-text rendering of polynomials and rational functions.

/// Joins `(coefficient, exponent)` pairs, highest exponent first, into
/// `"x^4 - 4*x^2 - 4"`. Coefficient strings may carry a leading `-`.
pub fn join_terms(mut terms: Vec<(String, String)>) -> String {
    terms.retain(|(c, _)| c != "0");
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if !needs_parens(rest) => (true, rest.to_string()),
            _ => (false, c.clone()),
        };
        let body = if needs_parens(&body) && !mono.is_empty() {
            format!("({body})")
        } else {
            body
        };
        let term = match (body.as_str(), mono.is_empty()) {
            (b, true) => b.to_string(),
            ("1", false) => mono.clone(),
            (b, false) => format!("{b}*{mono}"),
        };
        match (i, neg) {
            (0, true) => out.push_str(&format!("-{term}")),
            (0, false) => out.push_str(&term),
            (_, true) => out.push_str(&format!(" - {term}")),
            (_, false) => out.push_str(&format!(" + {term}")),
        }
    }
    out
}

fn needs_parens(s: &str) -> bool {
    s.chars().skip(1).any(|c| c == '+' || c == '-' || c == ' ')
}

/// `var^k` with the conventions `var^0 = ""`, `var^1 = var`.
pub fn monomial(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Renders a dense coefficient list (lowest first).
pub fn dense(coeffs: &[String], var: &str) -> String {
    let terms = coeffs
        .iter()
        .enumerate()
        .rev()
        .map(|(k, c)| (c.clone(), monomial(var, k)))
        .collect();
    join_terms(terms)
}

/// `num` or `(num)/(den)`.
pub fn fraction(num: String, den: String) -> String {
    if den == "1" {
        return num;
    }
    let wrap = |s: String| {
        if s.contains([' ', '+', '-', '*', '/']) {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}/{}", wrap(num), wrap(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_units() {
        let c: Vec<String> = ["-4", "0", "-4", "0", "1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(dense(&c, "x"), "x^4 - 4*x^2 - 4");
        let c: Vec<String> = ["1", "g+1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(dense(&c, "t"), "(g+1)*t + 1");
    }
}
