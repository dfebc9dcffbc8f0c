//! First-order formulas in the language of groups.
//!
//! Concrete syntax: variables are identifiers (`x1`, `h`, ...), parameters are
//! `@1`, `@2`, ...; terms use `*`, postfix `^-1` and the constant `1`.
//! Connectives in increasing binding strength: `->` (right associative), `|`,
//! `&`, `!`. Quantifiers `A x.` and `E x.` extend as far right as possible.
//!
//! The canonical printed form parenthesizes every binary connective, so
//! `print(parse(s)) == s` whenever `s` is canonical.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// 1-based parameter slot.
    Param(usize),
    One,
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
    Implies,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    Bin(Connective, Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn mul(self, o: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(o))
    }

    pub fn inv(self) -> Term {
        Term::Inv(Box::new(self))
    }

    /// `a^-1 b^-1 a b`.
    pub fn comm(a: Term, b: Term) -> Term {
        a.clone().inv().mul(b.clone().inv()).mul(a).mul(b)
    }

    pub fn mentions(&self, v: &str) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::Param(_) | Term::One => false,
            Term::Mul(a, b) => a.mentions(v) || b.mentions(v),
            Term::Inv(a) => a.mentions(v),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Param(_) | Term::One => {}
            Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Inv(a) => a.collect_vars(out),
        }
    }

    fn max_param(&self) -> usize {
        match self {
            Term::Param(k) => *k,
            Term::Var(_) | Term::One => 0,
            Term::Mul(a, b) => a.max_param().max(b.max_param()),
            Term::Inv(a) => a.max_param(),
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    /// `a*b=b*a`.
    pub fn commutes(a: Term, b: Term) -> Formula {
        Formula::Eq(a.clone().mul(b.clone()), b.mul(a))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(self, o: Formula) -> Formula {
        Formula::Bin(Connective::And, Box::new(self), Box::new(o))
    }

    pub fn or(self, o: Formula) -> Formula {
        Formula::Bin(Connective::Or, Box::new(self), Box::new(o))
    }

    pub fn implies(self, o: Formula) -> Formula {
        Formula::Bin(Connective::Implies, Box::new(self), Box::new(o))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Quant(Quantifier::Forall, v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Quant(Quantifier::Exists, v.to_string(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(f) => f.collect_free(out),
            Formula::Bin(_, a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Quant(_, v, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Largest parameter slot used, or 0.
    pub fn arity(&self) -> usize {
        match self {
            Formula::Eq(a, b) => a.max_param().max(b.max_param()),
            Formula::Not(f) => f.arity(),
            Formula::Bin(_, a, b) => a.arity().max(b.arity()),
            Formula::Quant(_, _, body) => body.arity(),
        }
    }

    /// Nesting depth of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::Bin(_, a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Quant(_, _, body) => 1 + body.quantifier_depth(),
        }
    }

    /// Replaces free occurrences of `v` by `t`. Bound variables of `self` must
    /// not occur in `t`.
    pub fn substitute(&self, v: &str, t: &Term) -> Formula {
        fn term(s: &Term, v: &str, t: &Term) -> Term {
            match s {
                Term::Var(w) if w == v => t.clone(),
                Term::Mul(a, b) => Term::Mul(Box::new(term(a, v, t)), Box::new(term(b, v, t))),
                Term::Inv(a) => Term::Inv(Box::new(term(a, v, t))),
                other => other.clone(),
            }
        }
        match self {
            Formula::Eq(a, b) => Formula::Eq(term(a, v, t), term(b, v, t)),
            Formula::Not(f) => Formula::not(f.substitute(v, t)),
            Formula::Bin(c, a, b) => Formula::Bin(*c, Box::new(a.substitute(v, t)), Box::new(b.substitute(v, t))),
            Formula::Quant(q, w, body) if w != v => Formula::Quant(*q, w.clone(), Box::new(body.substitute(v, t))),
            Formula::Quant(..) => self.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Param(k) => write!(f, "@{k}"),
            Term::One => f.write_str("1"),
            Term::Mul(a, b) => match **b {
                Term::Mul(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
            Term::Inv(a) => match **a {
                Term::Mul(..) => write!(f, "({a})^-1"),
                _ => write!(f, "{a}^-1"),
            },
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrapped = |g: &Formula, f: &mut fmt::Formatter<'_>| match g {
            Formula::Quant(..) => write!(f, "({g})"),
            _ => write!(f, "{g}"),
        };
        match self {
            Formula::Eq(a, b) => write!(f, "{a}={b}"),
            Formula::Not(g) => {
                f.write_str("!")?;
                wrapped(g, f)
            }
            Formula::Bin(c, a, b) => {
                let op = match c {
                    Connective::And => "&",
                    Connective::Or => "|",
                    Connective::Implies => "->",
                };
                f.write_str("(")?;
                wrapped(a, f)?;
                write!(f, " {op} {b})")
            }
            Formula::Quant(q, v, body) => {
                let k = if *q == Quantifier::Forall { "A" } else { "E" };
                write!(f, "{k} {v}. {body}")
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Param(usize),
    One,
    Star,
    Inv,
    Eq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let b = text.as_bytes();
    let err = |offset, msg: &str| Error::Parse { offset, msg: msg.to_string() };
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'*' => Tok::Star,
            b'=' => Tok::Eq,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'.' => Tok::Dot,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'^' => {
                if !text[i..].starts_with("^-1") {
                    return Err(err(i, "expected `^-1`"));
                }
                i += 2;
                Tok::Inv
            }
            b'-' => {
                if b.get(i + 1) != Some(&b'>') {
                    return Err(err(i, "expected `->`"));
                }
                i += 1;
                Tok::Arrow
            }
            b'@' => {
                let mut j = i + 1;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let k: usize = text[i + 1..j].parse().map_err(|_| err(i, "expected a parameter number"))?;
                if k == 0 {
                    return Err(err(i, "parameters are numbered from 1"));
                }
                i = j - 1;
                Tok::Param(k)
            }
            b'1' if !b.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) => Tok::One,
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_') {
                    j += 1;
                }
                let word = &text[i..j];
                i = j - 1;
                match word {
                    "A" => Tok::Forall,
                    "E" => Tok::Exists,
                    _ => Tok::Ident(word.to_string()),
                }
            }
            _ => return Err(err(i, "unexpected character")),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), msg: msg.to_string() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let q = if self.bump() == Tok::Forall { Quantifier::Forall } else { Quantifier::Exists };
                let Tok::Ident(v) = self.peek().clone() else { return self.fail("expected a variable") };
                self.bump();
                self.expect(Tok::Dot, "`.`")?;
                Ok(Formula::Quant(q, v, Box::new(self.formula()?)))
            }
            Tok::LParen => {
                let save = self.pos;
                let grouped = self.formula_in_parens();
                match grouped {
                    Ok(f) if !matches!(self.peek(), Tok::Eq | Tok::Star | Tok::Inv) => Ok(f),
                    other => {
                        self.pos = save;
                        // Report whichever reading got further.
                        self.equation().map_err(|e| match (other, &e) {
                            (Err(first @ Error::Parse { offset: a, .. }), Error::Parse { offset: b, .. }) if a > *b => {
                                first
                            }
                            _ => e,
                        })
                    }
                }
            }
            _ => self.equation(),
        }
    }

    fn formula_in_parens(&mut self) -> Result<Formula> {
        self.expect(Tok::LParen, "`(`")?;
        let f = self.formula()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(f)
    }

    fn equation(&mut self) -> Result<Formula> {
        let a = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let b = self.term()?;
        Ok(Formula::Eq(a, b))
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.postfix()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = t.mul(self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = match self.peek().clone() {
            Tok::Ident(v) => {
                self.bump();
                Term::Var(v)
            }
            Tok::Param(k) => {
                self.bump();
                Term::Param(k)
            }
            Tok::One => {
                self.bump();
                Term::One
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                t
            }
            _ => return self.fail("expected a term"),
        };
        while *self.peek() == Tok::Inv {
            self.bump();
            t = t.inv();
        }
        Ok(t)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.fail("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn double_centralizer_formula() {
        let s = "A h. (@1*h=h*@1 -> x1*h=h*x1)";
        let f = parse_formula(s).unwrap();
        assert_eq!(f.to_string(), s);
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["x1".to_string()]);
        assert_eq!(f.arity(), 1);
        let h = || Term::var("h");
        let expected = Formula::forall(
            "h",
            Formula::commutes(Term::Param(1), h()).implies(Formula::commutes(Term::var("x1"), h())),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn tautology() {
        let f = parse_formula("x1=x1").unwrap();
        assert_eq!(f, Formula::eq(Term::var("x1"), Term::var("x1")));
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_formula("A x. E"), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!(parse_formula("x1=x1 &"), Err(Error::Parse { offset: 7, .. })));
        assert!(matches!(parse_formula("x1 = @0"), Err(Error::Parse { offset: 5, .. })));
        assert!(matches!(parse_formula("x1^2=1"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_formula("(x1=x1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn precedence_and_parentheses() {
        let f = parse_formula("x=1 | y=1 & !z=1 -> w=1 -> v=1").unwrap();
        assert_eq!(f.to_string(), "((x=1 | (y=1 & !z=1)) -> (w=1 -> v=1))");
        let f = parse_formula("(x*y)^-1=y^-1*x^-1").unwrap();
        assert_eq!(f.to_string(), "(x*y)^-1=y^-1*x^-1");
        let f = parse_formula("(x)*(y*z)=((x))").unwrap();
        assert_eq!(f.to_string(), "x*(y*z)=x");
        let f = parse_formula("(A x. x=y) & !(E z. z=y)").unwrap();
        assert_eq!(f.to_string(), "((A x. x=y) & !(E z. z=y))");
        assert_eq!(f.free_vars().len(), 1);
        assert_eq!(f.quantifier_depth(), 1);
    }

    #[test]
    fn substitution_respects_binding() {
        let f = parse_formula("(x=y & A x. x=y)").unwrap();
        let g = f.substitute("x", &Term::Param(2));
        assert_eq!(g.to_string(), "(@2=y & A x. x=y)");
    }

    fn term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["x1", "x2", "h", "g"]).prop_map(Term::var),
            (1usize..4).prop_map(Term::Param),
            Just(Term::One),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![(inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)), inner.prop_map(Term::inv)]
        })
    }

    fn formula() -> impl Strategy<Value = Formula> {
        let atom = (term(), term()).prop_map(|(a, b)| Formula::Eq(a, b));
        atom.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
                (prop::sample::select(vec!["h", "g"]), inner.clone()).prop_map(|(v, f)| Formula::forall(v, f)),
                (prop::sample::select(vec!["h", "g"]), inner).prop_map(|(v, f)| Formula::exists(v, f)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in formula()) {
            let s = f.to_string();
            let g = parse_formula(&s).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), s);
        }
    }
}
