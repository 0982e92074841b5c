//! Expression evaluation for scenario files. Products are evaluated in
//! source order; the polynomial layer does all sign normalization.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graded::{Chart, GradedPoly, Rational};

/// A parse failure at a 1-based column of the expression's line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ExprError {
    pub column: usize,
    pub message: String,
}

fn fail<T>(column: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

/// Tokens with their 1-based columns; `offset` is the column of `src[0]`.
fn lex(src: &str, offset: usize) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .expect("digits");
            let mut value = Rational::from_integer(num);
            // `a/b` is a single literal; there is no division operator
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return fail(offset + ds, "expected denominator after `/`");
                }
                let den: BigInt = chars[ds..i].iter().collect::<String>().parse().expect("digits");
                if den.is_zero() {
                    return fail(offset + ds, "zero denominator");
                }
                value /= Rational::from_integer(den);
            }
            out.push((Tok::Num(value), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        return fail(col, format!("unexpected character `{c}`"));
    }
    Ok(out)
}

/// Name resolution for one evaluation context.
pub(crate) struct Env {
    pub chart: Chart,
    pub idents: HashMap<String, usize>,
    /// `p(name)` targets, when momenta are allowed.
    pub momenta: Option<HashMap<String, usize>>,
    /// `d(name)` targets, when differentials are allowed.
    pub differentials: Option<HashMap<String, usize>>,
    pub context: &'static str,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    env: &'a Env,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        let col = self.col();
        match self.next() {
            Some((t, _)) if t == tok => Ok(()),
            _ => fail(col, format!("expected {what}")),
        }
    }

    fn sum(&mut self) -> Result<GradedPoly, ExprError> {
        let mut acc = GradedPoly::zero(&self.env.chart);
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negative = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let term = self.product()?;
            if negative {
                acc -= &term;
            } else {
                acc += &term;
            }
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<GradedPoly, ExprError> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<GradedPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        match self.next() {
            Some((Tok::Num(e), _)) if e.is_integer() => {
                let e: u32 = e
                    .to_integer()
                    .try_into()
                    .or_else(|_| fail(col, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => fail(col, "expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<GradedPoly, ExprError> {
        let col = self.col();
        match self.next() {
            Some((Tok::Num(v), _)) => Ok(GradedPoly::constant(&self.env.chart, v)),
            Some((Tok::Minus, _)) => Ok(-self.power()?),
            Some((Tok::LParen, _)) => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((Tok::Ident(name), _)) => {
                let wrapped = (name == "p" || name == "d") && self.peek() == Some(&Tok::LParen);
                if wrapped {
                    self.pos += 1;
                    let inner_col = self.col();
                    let inner = match self.next() {
                        Some((Tok::Ident(n), _)) => n,
                        _ => return fail(inner_col, "expected a coordinate name"),
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    let (table, kind) = if name == "p" {
                        (&self.env.momenta, "momenta")
                    } else {
                        (&self.env.differentials, "differentials")
                    };
                    let Some(table) = table else {
                        return fail(col, format!("{kind} are not allowed in {}", self.env.context));
                    };
                    return match table.get(&inner) {
                        Some(&i) => Ok(GradedPoly::var(&self.env.chart, i)),
                        None => fail(inner_col, format!("unknown coordinate `{inner}`")),
                    };
                }
                match self.env.idents.get(&name) {
                    Some(&i) => Ok(GradedPoly::var(&self.env.chart, i)),
                    None => fail(col, format!("unknown coordinate `{name}`")),
                }
            }
            Some(_) => fail(col, "expected a number, coordinate or `(`"),
            None => fail(col, "unexpected end of expression"),
        }
    }
}

/// Evaluates `src`, whose first character sits at column `offset`.
pub(crate) fn evaluate(src: &str, offset: usize, env: &Env) -> Result<GradedPoly, ExprError> {
    let toks = lex(src, offset)?;
    let end_col = offset + src.chars().count();
    if toks.is_empty() {
        return fail(end_col, "empty expression");
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end_col,
        env,
    };
    let value = p.sum()?;
    if p.pos < p.toks.len() {
        return fail(p.col(), "unexpected trailing input");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{make_chart, rat};

    fn env() -> Env {
        let chart = make_chart(&[("x", 0), ("a", 1), ("b", 1)]).unwrap();
        let idents = (0..3).map(|i| (chart.coordinate(i).name.clone(), i)).collect();
        Env {
            chart,
            idents,
            momenta: None,
            differentials: None,
            context: "test",
        }
    }

    #[test]
    fn source_order_products_are_normalized() {
        let e = env();
        let ab = evaluate("a*b", 1, &e).unwrap();
        let ba = evaluate("b*a", 1, &e).unwrap();
        assert_eq!(ab, -ba);
        assert!(evaluate("a*a", 1, &e).unwrap().is_zero());
    }

    #[test]
    fn rationals_powers_and_signs() {
        let e = env();
        let p = evaluate("-1/2*x^2 + (x - 3)*x", 1, &e).unwrap();
        let x = GradedPoly::var(&e.chart, 0);
        let expected = &x.pow(2).scale(&rat(1, 2)) - &x.scale_int(3);
        assert_eq!(p, expected);
        assert_eq!(evaluate("--x", 1, &e).unwrap(), x);
    }

    #[test]
    fn errors_carry_columns() {
        let e = env();
        assert_eq!(evaluate("x + y", 5, &e).unwrap_err().column, 9);
        assert_eq!(evaluate("x + ", 1, &e).unwrap_err().column, 5);
        assert_eq!(evaluate("p(x)", 1, &e).unwrap_err().column, 1);
        assert_eq!(evaluate("x $", 1, &e).unwrap_err().column, 3);
        assert_eq!(evaluate("1/0", 1, &e).unwrap_err().column, 3);
    }
}
