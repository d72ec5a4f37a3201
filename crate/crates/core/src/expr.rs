//! A small expression language over the built-in forms, e.g.
//! `chi8 - 6*h4^2` or `(e6*phi4 - e4*phi6)/24`.
//!
//! Grammar: sums and differences of products and quotients of powers.
//! Atoms are integers, built-in names, parenthesised expressions and
//! `raise(f, x, y)` for the index raising by x + yi.

use std::fmt;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::genio::Corpus;
use crate::hjf::{Gaussian, HJForm};
use crate::hmf::HMForm;
use crate::qexp::{delta, eisenstein, QSeries};

/// Names accepted by [`Expr::eval`].
pub const BUILTINS: [&str; 16] =
    ["e2", "e4", "e6", "delta", "phi4", "phi6", "phi8", "phi10", "h4", "h6", "h8", "h10", "h12", "chi8", "f10", "f12"];

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rat),
    Q(QSeries),
    J(HJForm),
    H(HMForm),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Q(_) => "q-series",
            Value::J(_) => "Hermitian Jacobi form",
            Value::H(_) => "degree-2 Hermitian modular form",
        }
    }

    pub fn into_hjf(self) -> Result<HJForm> {
        match self {
            Value::J(f) => Ok(f),
            other => Err(Error::Expr(format!("expected a Hermitian Jacobi form, found a {}", other.kind()))),
        }
    }

    pub fn into_hmf(self) -> Result<HMForm> {
        match self {
            Value::H(f) => Ok(f),
            other => Err(Error::Expr(format!("expected a degree-2 form, found a {}", other.kind()))),
        }
    }
}

/// Truncations used for built-ins during evaluation.
pub struct Context<'a> {
    pub corpus: &'a Corpus,
    /// n-truncation of q-series and Jacobi forms.
    pub hjf_trunc: i64,
    /// Trace truncation of degree-2 forms.
    pub hmf_trunc: i64,
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(i64),
    Name(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
    Raise(Box<Node>, i64, i64),
}

/// A parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    src: String,
    root: Node,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut t = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                t.push(d);
                chars.next();
            }
            out.push(Tok::Num(t.parse().map_err(|_| Error::Expr(format!("number {t} too large")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut t = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                t.push(d);
                chars.next();
            }
            out.push(Tok::Ident(t.to_ascii_lowercase()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(Error::Expr(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct P {
    toks: Vec<Tok>,
    pos: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Expr(format!("expected '{c}' at token {}", self.pos + 1)))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { *n })
            }
            _ => Err(Error::Expr(format!("expected an integer at token {}", self.pos + 1))),
        }
    }

    fn sum(&mut self) -> Result<Node> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = Node::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat('-') {
                acc = Node::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Node> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Node::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat('/') {
                acc = Node::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int()?;
            let e = u32::try_from(e).map_err(|_| Error::Expr(format!("exponent {e} must be non-negative")))?;
            return Ok(Node::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Node::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "raise" {
                    self.expect('(')?;
                    let f = self.sum()?;
                    self.expect(',')?;
                    let x = self.int()?;
                    self.expect(',')?;
                    let y = self.int()?;
                    self.expect(')')?;
                    return Ok(Node::Raise(Box::new(f), x, y));
                }
                if !BUILTINS.contains(&name.as_str()) {
                    return Err(Error::Expr(format!("unknown name {name:?}; built-ins are {}", BUILTINS.join(" "))));
                }
                Ok(Node::Name(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(Error::Expr(format!("expected a value at token {}", self.pos + 1))),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = P { toks: lex(src)?, pos: 0 };
        if p.toks.is_empty() {
            return Err(Error::Expr("empty expression".into()));
        }
        let root = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(Error::Expr(format!("trailing input at token {}", p.pos + 1)));
        }
        Ok(Expr { src: src.trim().to_string(), root })
    }

    pub fn eval(&self, ctx: &Context) -> Result<Value> {
        eval(&self.root, ctx)
    }

    /// Names used by the expression.
    pub fn names(&self) -> Vec<String> {
        fn walk(n: &Node, out: &mut Vec<String>) {
            match n {
                Node::Num(_) => {}
                Node::Name(s) => out.push(s.clone()),
                Node::Neg(a) | Node::Pow(a, _) | Node::Raise(a, _, _) => walk(a, out),
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

fn builtin(name: &str, ctx: &Context) -> Result<Value> {
    let t = ctx.hjf_trunc;
    Ok(match name {
        "e2" => Value::Q(eisenstein(2, t)),
        "e4" => Value::Q(eisenstein(4, t)),
        "e6" => Value::Q(eisenstein(6, t)),
        "delta" => Value::Q(delta(t)),
        "phi4" | "phi6" | "phi8" | "phi10" => {
            let k: i64 = name[3..].parse().expect("builtin weight");
            let f = ctx.corpus.phi(k)?;
            if f.trunc() < t {
                return Err(Error::InsufficientTruncation { need: t, have: f.trunc() });
            }
            Value::J(f.truncate(t))
        }
        _ => Value::H((*ctx.corpus.hmf(name, ctx.hmf_trunc)?).clone()),
    })
}

fn mismatch(op: &str, a: &Value, b: &Value) -> Error {
    Error::Expr(format!("cannot {op} a {} and a {}", a.kind(), b.kind()))
}

fn eval(n: &Node, ctx: &Context) -> Result<Value> {
    Ok(match n {
        Node::Num(v) => Value::Scalar(Rat::from_int(*v)),
        Node::Name(s) => builtin(s, ctx)?,
        Node::Neg(a) => scale(eval(a, ctx)?, &Rat::from_int(-1)),
        Node::Add(a, b) | Node::Sub(a, b) => {
            let sub = matches!(n, Node::Sub(..));
            let (x, y) = (eval(a, ctx)?, eval(b, ctx)?);
            match (x, y) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if sub { x - y } else { x + y }),
                (Value::Q(x), Value::Q(y)) => Value::Q(if sub { x.sub(&y)? } else { x.add(&y)? }),
                (Value::J(x), Value::J(y)) => Value::J(if sub { x.sub(&y)? } else { x.add(&y)? }),
                (Value::H(x), Value::H(y)) => Value::H(if sub { x.sub(&y)? } else { x.add(&y)? }),
                (x, y) => return Err(mismatch(if sub { "subtract" } else { "add" }, &x, &y)),
            }
        }
        Node::Mul(a, b) => mul(eval(a, ctx)?, eval(b, ctx)?)?,
        Node::Div(a, b) => match eval(b, ctx)? {
            Value::Scalar(d) if !d.is_zero() => scale(eval(a, ctx)?, &d.recip()),
            Value::Scalar(_) => return Err(Error::Expr("division by zero".into())),
            other => return Err(Error::Expr(format!("can only divide by a scalar, not a {}", other.kind()))),
        },
        Node::Pow(a, e) => {
            let base = eval(a, ctx)?;
            if *e == 0 {
                return match base {
                    Value::Scalar(_) => Ok(Value::Scalar(Rat::one())),
                    Value::Q(q) => Ok(Value::Q(QSeries::one(q.trunc()))),
                    other => Err(Error::Expr(format!("zeroth power of a {} is not supported", other.kind()))),
                };
            }
            let mut acc = base.clone();
            for _ in 1..*e {
                acc = mul(acc, base.clone())?;
            }
            acc
        }
        Node::Raise(a, x, y) => {
            let rho = Gaussian::new(*x, *y);
            if rho.norm() == 0 {
                return Err(Error::Expr("raise needs a nonzero Gaussian integer".into()));
            }
            Value::J(eval(a, ctx)?.into_hjf()?.index_raise(rho))
        }
    })
}

fn scale(v: Value, c: &Rat) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(x * c),
        Value::Q(f) => Value::Q(f.scale(c)),
        Value::J(f) => Value::J(f.scale(c)),
        Value::H(f) => Value::H(f.scale(c)),
    }
}

fn mul(a: Value, b: Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(c), v) | (v, Value::Scalar(c)) => scale(v, &c),
        (Value::Q(x), Value::Q(y)) => Value::Q(x.mul(&y)),
        (Value::Q(x), Value::J(y)) | (Value::J(y), Value::Q(x)) => Value::J(y.mul_qseries(&x)),
        (Value::J(x), Value::J(y)) => Value::J(x.mul(&y)),
        (Value::H(x), Value::H(y)) => Value::H(x.mul(&y)),
        (x, y) => return Err(mismatch("multiply", &x, &y)),
    })
}
