//! Syntax tree of the expression language.

use std::fmt;

/// An index slot: a named (abstract) index or a concrete component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Name(String),
    Value(u8),
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Name(n) => write!(f, "{}", n),
            Index::Value(v) => write!(f, "{}", v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Comm,
    Sym,
    Div,
    Adj,
    Prime,
    AcceleratedPrime,
    Conj,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "comm" => Func::Comm,
            "sym" => Func::Sym,
            "div" => Func::Div,
            "adj" => Func::Adj,
            "prime" => Func::Prime,
            "aprime" => Func::AcceleratedPrime,
            "conj" => Func::Conj,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Func::Comm => "comm",
            Func::Sym => "sym",
            Func::Div => "div",
            Func::Adj => "adj",
            Func::Prime => "prime",
            Func::AcceleratedPrime => "aprime",
            Func::Conj => "conj",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Func::Comm | Func::Sym | Func::Div => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Int(i64),
    ImagUnit,
    Hbar,
    /// A symbol with its index slots, e.g. `J[mu,nu]` or `gamma`.
    Symbol { name: String, indices: Vec<Index> },
    Neg(Box<Node>),
    Sum(Vec<Node>),
    /// Noncommutative product, factors in order.
    Product(Vec<Node>),
    /// Division by a scalar (numbers, `i`, `hbar`).
    Quotient(Box<Node>, Box<Node>),
    Power(Box<Node>, i32),
    Call { func: Func, args: Vec<Node> },
}

impl Node {
    pub fn symbol(name: &str, indices: Vec<Index>) -> Node {
        Node::Symbol { name: name.to_string(), indices }
    }

    /// Visits every node, parents first.
    pub fn walk(&self, f: &mut dyn FnMut(&Node)) {
        f(self);
        match self {
            Node::Neg(a) | Node::Power(a, _) => a.walk(f),
            Node::Sum(xs) | Node::Product(xs) => xs.iter().for_each(|x| x.walk(f)),
            Node::Quotient(a, b) => {
                a.walk(f);
                b.walk(f)
            }
            Node::Call { args, .. } => args.iter().for_each(|x| x.walk(f)),
            _ => {}
        }
    }

    pub fn uses_func(&self, func: Func) -> bool {
        let mut hit = false;
        self.walk(&mut |n| {
            if let Node::Call { func: g, .. } = n {
                hit |= *g == func;
            }
        });
        hit
    }

    pub fn uses_symbol(&self, pred: &dyn Fn(&str) -> bool) -> bool {
        let mut hit = false;
        self.walk(&mut |n| {
            if let Node::Symbol { name, .. } = n {
                hit |= pred(name);
            }
        });
        hit
    }
}
