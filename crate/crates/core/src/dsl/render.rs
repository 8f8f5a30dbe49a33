//! Deterministic text form of expressions, readable back by the parser.

use crate::expr::{Expression, Monomial};
use crate::scalar::Field;
use crate::symbol::Letter;

fn monomial(m: &Monomial) -> Option<String> {
    let mut parts = Vec::new();
    match m.rho {
        0 => {}
        1 => parts.push("rho".to_string()),
        k => parts.push(format!("rho^{}", k)),
    }
    for l in &m.word {
        match l {
            Letter::Gen(g) => parts.push(g.to_string()),
            Letter::Rho(1) => parts.push("rho".into()),
            Letter::Rho(k) => parts.push(format!("rho^{}", k)),
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Terms in monomial order, e.g. `rho^2 + P1*P1 - (i*hbar)*P0`.
pub fn render<T: Field>(e: &Expression<T>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in e.terms().enumerate() {
        let (neg, coeff) = c.render_parts();
        let body = match (coeff, monomial(m)) {
            (None, None) => "1".to_string(),
            (Some(c), None) => c,
            (None, Some(w)) => w,
            (Some(c), Some(w)) => format!("{}*{}", c, w),
        };
        match (idx, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}
