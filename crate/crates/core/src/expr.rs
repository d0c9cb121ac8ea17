//! Text syntax for enveloping-algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'? factor ('*' factor)*
//! factor := number ('/' number)? | basis | '(' expr ')'
//! basis  := 'DH' '[' ints ';' ints ']' | 'DHp' '[' ints ';' ints ']' '@' number
//! ```
//!
//! Inside brackets the entries are `α_{-1},...,α_{-n}` then `α_1,...,α_n`.
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;

use crate::algebra::{UAlgebra, UElement};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(BigInt, BigInt),
    Basis { alpha: MultiIndex, prime: Option<u32> },
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    /// Rank of the basis elements, if any occur; mixed ranks are an error.
    pub fn rank(&self) -> Result<Option<usize>> {
        let mut found = None;
        let mut err = None;
        self.visit(&mut |alpha, _| match found {
            None => found = Some(alpha.rank()),
            Some(r) if r != alpha.rank() => err = Some(Error::RankMismatch(r, alpha.rank())),
            _ => {}
        });
        err.map_or(Ok(found), Err)
    }

    /// The prime named by `DHp[..]@p` terms; all of them must agree and
    /// `DH` and `DHp` cannot be mixed.
    pub fn prime(&self) -> Result<Option<u32>> {
        let mut primes = vec![];
        self.visit(&mut |_, p| primes.push(p));
        primes.dedup();
        match primes.as_slice() {
            [] => Ok(None),
            [p] => Ok(*p),
            _ => Err(Error::InvalidParameters("element mixes different characteristics".into())),
        }
    }

    /// Does any basis index have a negative entry?
    pub fn has_negative_entries(&self) -> bool {
        let mut neg = false;
        self.visit(&mut |a, _| neg |= !a.is_nonnegative());
        neg
    }

    fn visit(&self, f: &mut impl FnMut(&MultiIndex, Option<u32>)) {
        match self {
            Expr::Number(..) => {}
            Expr::Basis { alpha, prime } => f(alpha, *prime),
            Expr::Sum(v) => v.iter().for_each(|(_, e)| e.visit(f)),
            Expr::Product(v) => v.iter().for_each(|e| e.visit(f)),
            Expr::Neg(e) => e.visit(f),
        }
    }

    pub fn eval(&self, alg: &UAlgebra) -> Result<UElement> {
        Ok(match self {
            Expr::Number(num, den) => alg.scalar(scalar(alg.field(), num, den)?),
            Expr::Basis { alpha, prime } => {
                if prime.is_some_and(|p| alg.field() != Field::Prime(p)) || (prime.is_none() && alg.field() != Field::Rational) {
                    return Err(Error::ContextMismatch(format!("element {self} does not live over {}", alg.field())));
                }
                alg.generator(*alpha)?
            }
            Expr::Sum(v) => {
                let mut acc = alg.zero();
                for (neg, e) in v {
                    let x = e.eval(alg)?;
                    acc = if *neg { acc.try_add(&x.neg())? } else { acc.try_add(&x)? };
                }
                acc
            }
            Expr::Product(v) => {
                let mut acc = alg.one();
                for e in v {
                    acc = acc.try_mul(&e.eval(alg)?)?;
                }
                acc
            }
            Expr::Neg(e) => e.eval(alg)?.neg(),
        })
    }
}

fn scalar(field: Field, num: &BigInt, den: &BigInt) -> Result<Scalar> {
    let n = field.from_bigint(num);
    let d = field.from_bigint(den);
    n.try_div(&d).map_err(|_| match field {
        Field::Prime(p) => Error::NotReducible { value: format!("{num}/{den}"), p },
        Field::Rational => Error::DivisionByZero,
    })
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Number(n, d) if *d == BigInt::from(1) => write!(f, "{n}"),
            Expr::Number(n, d) => write!(f, "{n}/{d}"),
            Expr::Basis { alpha, prime } => {
                let n = alpha.rank();
                let c = alpha.components();
                let neg: Vec<String> = c[..n].iter().map(|x| x.to_string()).collect();
                let pos: Vec<String> = c[n..].iter().map(|x| x.to_string()).collect();
                match prime {
                    Some(p) => write!(f, "DHp[{};{}]@{p}", neg.join(","), pos.join(",")),
                    None => write!(f, "DH[{};{}]", neg.join(","), pos.join(",")),
                }
            }
            Expr::Sum(v) => {
                write!(f, "(")?;
                for (i, (neg, e)) in v.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-{e}")?,
                        (0, false) => write!(f, "{e}")?,
                        (_, true) => write!(f, " - {e}")?,
                        (_, false) => write!(f, " + {e}")?,
                    }
                }
                write!(f, ")")
            }
            Expr::Product(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Neg(e) => write!(f, "-{e}"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { toks, pos: 0, len: src.len() };
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    toks: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn err(&self, msg: &str) -> Error {
        let pos = self.toks.get(self.pos).map_or(self.len, |t| t.0);
        Error::Parse { pos, msg: msg.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
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
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![(false, self.term()?)];
        loop {
            if self.eat('+') {
                terms.push((false, self.term()?));
            } else if self.eat('-') {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term").1 } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let neg = self.eat('-');
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        let e = if factors.len() == 1 { factors.pop().expect("one factor") } else { Expr::Product(factors) };
        Ok(if neg { Expr::Neg(Box::new(e)) } else { e })
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let den = if self.eat('/') { self.natural()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                Ok(Expr::Number(num, den))
            }
            Some('D') => self.basis(),
            Some(_) => Err(self.err("expected a number, a basis element or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            self.pos = start;
            return Err(self.err("expected digits"));
        }
        Ok(s.parse().expect("digits parse"))
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.natural()?;
        let v: i16 = v.try_into().map_err(|_| self.err("index entry out of range"))?;
        let v = v as i64;
        Ok(if neg { -v } else { v })
    }

    fn list(&mut self, end: char) -> Result<Vec<i64>> {
        let mut out = vec![self.integer()?];
        while self.eat(',') {
            out.push(self.integer()?);
        }
        if self.peek() != Some(end) {
            return Err(self.err(&format!("expected ',' or '{end}'")));
        }
        Ok(out)
    }

    fn basis(&mut self) -> Result<Expr> {
        let start = self.pos;
        self.expect('D')?;
        self.expect('H')?;
        let modular = self.eat('p');
        self.expect('[')?;
        let neg = self.list(';')?;
        self.expect(';')?;
        let pos = self.list(']')?;
        self.expect(']')?;
        if neg.len() != pos.len() {
            let at = self.toks[start].0;
            return Err(Error::Parse { pos: at, msg: "both halves of an index need the same length".into() });
        }
        if neg.len() > crate::index::MAX_RANK {
            return Err(self.err("rank too large"));
        }
        let alpha = MultiIndex::new(&[neg, pos].concat());
        let prime = if modular {
            self.expect('@')?;
            let p = self.natural()?;
            Some(u32::try_from(p).map_err(|_| self.err("prime out of range"))?)
        } else {
            None
        };
        Ok(Expr::Basis { alpha, prime })
    }
}
