//! Recursive-descent parser.
//!
//! ```text
//! sum     = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" [ "-" ] int ] ;
//! atom    = int | "i" | "hbar" | "(" sum ")"
//!         | func "(" sum { "," sum } ")"
//!         | ident [ "[" index { "," index } "]" ] ;
//! index   = ident | digit ;
//! func    = "comm" | "sym" | "div" | "adj" | "prime" | "aprime" | "conj" ;
//! ```
//!
//! Concrete shortcuts such as `P0`, `J12`, `W3`, `C2` are read as the
//! indexed symbol with literal index values.

use thiserror::Error;

use super::ast::{Func, Index, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<i64>().map_err(|_| ParseError {
                line: l,
                column: col,
                message: format!("integer literal `{}` out of range", text),
            })?;
            column += i - start;
            out.push(Token { tok: Tok::Int(n), line: l, column: col });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l, column: col });
            continue;
        }
        if "+-*/^()[],".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l, column: col });
            i += 1;
            column += 1;
            continue;
        }
        return Err(ParseError { line: l, column: col, message: format!("unexpected character `{}`", c) });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: t.line, column: t.column, message: msg.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected `{}`, found {}", c, describe(&t.tok)))
        }
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut items = vec![self.term()?];
        loop {
            if self.is_sym('+') {
                self.next();
                items.push(self.term()?);
            } else if self.is_sym('-') {
                self.next();
                items.push(Node::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Node::Sum(items) })
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut acc = self.unary()?;
        let mut factors: Vec<Node> = Vec::new();
        loop {
            if self.is_sym('*') {
                self.next();
                factors.push(acc);
                acc = self.unary()?;
            } else if self.is_sym('/') {
                self.next();
                let den = self.unary()?;
                acc = Node::Quotient(Box::new(acc), Box::new(den));
            } else {
                break;
            }
        }
        if factors.is_empty() {
            return Ok(acc);
        }
        factors.push(acc);
        Ok(Node::Product(factors))
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.is_sym('-') {
            self.next();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let neg = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match t.tok {
            Tok::Int(n) if n <= i32::MAX as i64 => {
                let n = n as i32;
                Ok(Node::Power(Box::new(base), if neg { -n } else { n }))
            }
            _ => self.err(&t, "expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Int(n) => Ok(Node::Int(n)),
            Tok::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name, &t),
            other => self.err(&t, format!("unexpected {}", describe(&other))),
        }
    }

    fn ident(&mut self, name: String, at: &Token) -> Result<Node, ParseError> {
        match name.as_str() {
            "i" => return Ok(Node::ImagUnit),
            "hbar" => return Ok(Node::Hbar),
            _ => {}
        }
        if let Some(func) = Func::from_name(&name) {
            if !self.is_sym('(') {
                return self.err(at, format!("`{}` needs an argument list", name));
            }
            self.next();
            let mut args = vec![self.sum()?];
            while self.is_sym(',') {
                self.next();
                args.push(self.sum()?);
            }
            self.expect(')')?;
            if args.len() != func.arity() {
                return self.err(
                    at,
                    format!("`{}` takes {} argument(s), got {}", name, func.arity(), args.len()),
                );
            }
            return Ok(Node::Call { func, args });
        }
        let mut indices = Vec::new();
        if self.is_sym('[') {
            self.next();
            loop {
                let t = self.next();
                match t.tok.clone() {
                    Tok::Ident(n) => indices.push(Index::Name(n)),
                    Tok::Int(v) if (0..4).contains(&v) => indices.push(Index::Value(v as u8)),
                    Tok::Int(v) => return self.err(&t, format!("index value {} outside 0..3", v)),
                    other => return self.err(&t, format!("expected index, found {}", describe(&other))),
                }
                if self.is_sym(',') {
                    self.next();
                    continue;
                }
                self.expect(']')?;
                break;
            }
            return Ok(Node::Symbol { name, indices });
        }
        Ok(split_shortcut(&name).unwrap_or(Node::Symbol { name, indices }))
    }
}

/// `P0` → `P[0]`, `J12` → `J[1,2]`.
fn split_shortcut(name: &str) -> Option<Node> {
    let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    if head.is_empty() || !digits.chars().all(|c| ('0'..='3').contains(&c)) {
        return None;
    }
    let want = match head {
        "P" | "W" | "C" | "X" | "x" => 1,
        "J" | "S" | "s" => 2,
        _ => return None,
    };
    if digits.len() != want {
        return None;
    }
    let indices = digits.bytes().map(|b| Index::Value(b - b'0')).collect();
    Some(Node::Symbol { name: head.to_string(), indices })
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{}`", n),
        Tok::Ident(s) => format!("identifier `{}`", s),
        Tok::Sym(c) => format!("`{}`", c),
        Tok::End => "end of input".into(),
    }
}

pub fn parse(src: &str) -> Result<Node, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    if p.peek().tok == Tok::End {
        let t = p.peek().clone();
        return p.err(&t, "empty expression");
    }
    let e = p.sum()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, format!("unexpected {}", describe(&t.tok)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: &str, idx: &[&str]) -> Node {
        Node::symbol(n, idx.iter().map(|s| Index::Name(s.to_string())).collect())
    }

    #[test]
    fn precedence() {
        let e = parse("a*b + c").unwrap();
        assert_eq!(
            e,
            Node::Sum(vec![Node::Product(vec![sym("a", &[]), sym("b", &[])]), sym("c", &[])])
        );
    }

    #[test]
    fn indexed_and_calls() {
        let e = parse("comm(J[mu,nu], P[rho])").unwrap();
        assert_eq!(
            e,
            Node::Call { func: Func::Comm, args: vec![sym("J", &["mu", "nu"]), sym("P", &["rho"])] }
        );
    }

    #[test]
    fn shortcuts() {
        assert_eq!(parse("J12").unwrap(), Node::symbol("J", vec![Index::Value(1), Index::Value(2)]));
        assert_eq!(parse("P[0]").unwrap(), parse("P0").unwrap());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(parse("rho^-2").unwrap(), Node::Power(Box::new(sym("rho", &[])), -2));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("P[mu] +\n  * D").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("comm(P0)").unwrap_err();
        assert!(e.message.contains("2 argument"));
        assert!(parse("P[7]").is_err());
        assert!(parse("(P0").is_err());
        assert!(parse("").is_err());
        assert!(parse("P0 $").is_err());
    }
}
