//! Quantifier-free guards over registers `x1..xk` and the input `y`.
//!
//! Concrete syntax:
//!
//! ```text
//! expr := "true" | "false" | cmp | "!" expr | expr "&&" expr | expr "||" expr | "(" expr ")"
//! cmp  := term ("==" | "!=") term
//! term := "y" | "x" <positive integer> | "bot"
//! ```
//!
//! `!` binds tighter than `&&`, which binds tighter than `||`. Binary
//! operators associate to the left.

use std::fmt;

use thiserror::Error;

use super::{AtomOrBot, EqType, Valuation};
use crate::error::Error;

/// A variable of a guard. Registers are 0-based internally and print as
/// `x1, x2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Reg(usize),
    Input,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Reg(i) => write!(f, "x{}", i + 1),
            Var::Input => f.write_str("y"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    True,
    False,
    Eq(Var, Var),
    IsBot(Var),
    Not(Box<Constraint>),
    And(Box<Constraint>, Box<Constraint>),
    Or(Box<Constraint>, Box<Constraint>),
}

impl Constraint {
    pub fn eq(a: Var, b: Var) -> Self {
        Constraint::Eq(a, b)
    }

    pub fn neq(a: Var, b: Var) -> Self {
        Constraint::Not(Box::new(Constraint::Eq(a, b)))
    }

    pub fn is_bot(v: Var) -> Self {
        Constraint::IsBot(v)
    }

    pub fn not_bot(v: Var) -> Self {
        Constraint::Not(Box::new(Constraint::IsBot(v)))
    }

    pub fn negate(self) -> Self {
        match self {
            Constraint::True => Constraint::False,
            Constraint::False => Constraint::True,
            c => Constraint::Not(Box::new(c)),
        }
    }

    /// Conjunction, folding away constant operands.
    pub fn and(self, other: Constraint) -> Self {
        match (self, other) {
            (Constraint::True, c) | (c, Constraint::True) => c,
            (Constraint::False, _) | (_, Constraint::False) => Constraint::False,
            (a, b) => Constraint::And(Box::new(a), Box::new(b)),
        }
    }

    /// Disjunction, folding away constant operands.
    pub fn or(self, other: Constraint) -> Self {
        match (self, other) {
            (Constraint::False, c) | (c, Constraint::False) => c,
            (Constraint::True, _) | (_, Constraint::True) => Constraint::True,
            (a, b) => Constraint::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn all<I: IntoIterator<Item = Constraint>>(items: I) -> Self {
        items.into_iter().fold(Constraint::True, Constraint::and)
    }

    pub fn any<I: IntoIterator<Item = Constraint>>(items: I) -> Self {
        items.into_iter().fold(Constraint::False, Constraint::or)
    }

    /// Calls `f` on every variable occurrence.
    pub fn visit_vars(&self, f: &mut impl FnMut(Var)) {
        match self {
            Constraint::True | Constraint::False => {}
            Constraint::Eq(a, b) => {
                f(*a);
                f(*b);
            }
            Constraint::IsBot(v) => f(*v),
            Constraint::Not(c) => c.visit_vars(f),
            Constraint::And(a, b) | Constraint::Or(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    pub fn mentions_input(&self) -> bool {
        let mut found = false;
        self.visit_vars(&mut |v| found |= v == Var::Input);
        found
    }

    /// Highest register index referenced, if any (0-based).
    pub fn max_register(&self) -> Option<usize> {
        let mut max = None;
        self.visit_vars(&mut |v| {
            if let Var::Reg(i) = v {
                max = Some(max.map_or(i, |m: usize| m.max(i)));
            }
        });
        max
    }

    /// Replaces every variable `v` by `f(v)`.
    pub fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Constraint {
        match self {
            Constraint::True => Constraint::True,
            Constraint::False => Constraint::False,
            Constraint::Eq(a, b) => Constraint::Eq(f(*a), f(*b)),
            Constraint::IsBot(v) => Constraint::IsBot(f(*v)),
            Constraint::Not(c) => Constraint::Not(Box::new(c.map_vars(f))),
            Constraint::And(a, b) => Constraint::And(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Constraint::Or(a, b) => Constraint::Or(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
        }
    }

    /// Evaluates the guard. Fails if a variable it mentions is unbound.
    pub fn eval(&self, v: &Valuation) -> Result<bool, Error> {
        let get = |var: Var| -> Result<AtomOrBot, Error> {
            match var {
                Var::Reg(i) => v
                    .registers()
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::UnboundVariable(var.to_string())),
                Var::Input => v
                    .input()
                    .map(Some)
                    .ok_or_else(|| Error::UnboundVariable("y".into())),
            }
        };
        Ok(match self {
            Constraint::True => true,
            Constraint::False => false,
            Constraint::Eq(a, b) => get(*a)? == get(*b)?,
            Constraint::IsBot(x) => get(*x)?.is_none(),
            Constraint::Not(c) => !c.eval(v)?,
            Constraint::And(a, b) => a.eval(v)? && b.eval(v)?,
            Constraint::Or(a, b) => a.eval(v)? || b.eval(v)?,
        })
    }

    /// Evaluates on a raw tuple: registers then, optionally, the input.
    ///
    /// Unbound variables evaluate as ⊥; callers guarantee well-formedness.
    pub fn holds(&self, regs: &[AtomOrBot], input: AtomOrBot) -> bool {
        let get = |var: Var| match var {
            Var::Reg(i) => regs.get(i).copied().flatten(),
            Var::Input => input,
        };
        match self {
            Constraint::True => true,
            Constraint::False => false,
            Constraint::Eq(a, b) => get(*a) == get(*b),
            Constraint::IsBot(x) => get(*x).is_none(),
            Constraint::Not(c) => !c.holds(regs, input),
            Constraint::And(a, b) => a.holds(regs, input) && b.holds(regs, input),
            Constraint::Or(a, b) => a.holds(regs, input) || b.holds(regs, input),
        }
    }

    /// Evaluates on the representative of a joint type of `(x1..xk, y)`.
    pub fn holds_on_type(&self, ty: &EqType, k: usize) -> bool {
        let rep = ty.representative();
        let input = if rep.len() > k { rep[k] } else { None };
        self.holds(&rep[..k.min(rep.len())], input)
    }

    fn precedence(&self) -> u8 {
        match self {
            Constraint::Or(..) => 0,
            Constraint::And(..) => 1,
            _ => 2,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Constraint::True => f.write_str("true"),
            Constraint::False => f.write_str("false"),
            Constraint::Eq(a, b) => write!(f, "{a} == {b}"),
            Constraint::IsBot(v) => write!(f, "{v} == bot"),
            Constraint::Not(c) => match c.as_ref() {
                Constraint::Eq(a, b) => write!(f, "{a} != {b}"),
                Constraint::IsBot(v) => write!(f, "{v} != bot"),
                inner => {
                    f.write_str("!")?;
                    inner.fmt_prec(f, 2)
                }
            },
            Constraint::And(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" && ")?;
                b.fmt_prec(f, 2)
            }
            Constraint::Or(a, b) => {
                a.fmt_prec(f, 0)?;
                f.write_str(" || ")?;
                b.fmt_prec(f, 1)
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("guard syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Y,
    Bot,
    Reg(usize),
    EqEq,
    NotEq,
    Bang,
    AndAnd,
    OrOr,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, message: &str| ParseError {
        pos,
        message: message.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let tok = if two("==") {
            i += 2;
            Tok::EqEq
        } else if two("!=") {
            i += 2;
            Tok::NotEq
        } else if two("&&") {
            i += 2;
            Tok::AndAnd
        } else if two("||") {
            i += 2;
            Tok::OrOr
        } else if c == b'!' {
            i += 1;
            Tok::Bang
        } else if c == b'(' {
            i += 1;
            Tok::LParen
        } else if c == b')' {
            i += 1;
            Tok::RParen
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            match &text[start..i] {
                "true" => Tok::True,
                "false" => Tok::False,
                "y" => Tok::Y,
                "bot" => Tok::Bot,
                w if w.starts_with('x') && w.len() > 1 && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    let n: usize = w[1..].parse().map_err(|_| err(start, "register index too large"))?;
                    if n == 0 || w.as_bytes()[1] == b'0' {
                        return Err(err(start, "register indices are positive integers without leading zeros"));
                    }
                    Tok::Reg(n - 1)
                }
                w => return Err(err(start, &format!("unknown identifier `{w}`"))),
            }
        } else {
            return Err(err(start, &format!("unexpected character `{}`", text[start..].chars().next().unwrap())));
        };
        out.push((start, tok));
    }
    Ok(out)
}

enum Term {
    Var(Var),
    Bot,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    registers: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.here(),
            message: message.into(),
        }
    }

    fn or(&mut self) -> Result<Constraint, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(Tok::OrOr) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Constraint::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Constraint, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(Tok::AndAnd) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Constraint::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Constraint, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Constraint::Not(Box::new(self.unary()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Constraint::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Constraint::False)
            }
            _ => self.comparison(),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let t = match self.peek() {
            Some(Tok::Y) => Term::Var(Var::Input),
            Some(Tok::Bot) => Term::Bot,
            Some(Tok::Reg(i)) => {
                if i >= self.registers {
                    return Err(self.error(format!(
                        "register index x{} out of range (automaton has {} register(s))",
                        i + 1,
                        self.registers
                    )));
                }
                Term::Var(Var::Reg(i))
            }
            _ => return Err(self.error("expected `y`, `x<n>` or `bot`")),
        };
        self.pos += 1;
        Ok(t)
    }

    fn comparison(&mut self) -> Result<Constraint, ParseError> {
        let lhs = self.term()?;
        let negated = match self.peek() {
            Some(Tok::EqEq) => false,
            Some(Tok::NotEq) => true,
            _ => return Err(self.error("expected `==` or `!=`")),
        };
        self.pos += 1;
        let rhs = self.term()?;
        let eq = match (lhs, rhs) {
            (Term::Var(a), Term::Var(b)) => Constraint::Eq(a, b),
            (Term::Var(a), Term::Bot) | (Term::Bot, Term::Var(a)) => Constraint::IsBot(a),
            (Term::Bot, Term::Bot) => Constraint::True,
        };
        Ok(if negated { Constraint::Not(Box::new(eq)) } else { eq })
    }
}

/// Parses a guard for an automaton with `k` registers.
pub fn parse_constraint(text: &str, k: usize) -> Result<Constraint, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        registers: k,
    };
    let c = p.or()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(c)
}

/// Does some valuation of `x1..xk, y` over atoms ∪ {⊥} satisfy `c`?
///
/// Guards cannot tell apart valuations in the same orbit, so it suffices to
/// test one representative per equality type.
pub fn satisfiable(c: &Constraint, k: usize) -> bool {
    EqType::enumerate(k + 1, false)
        .iter()
        .any(|t| c.holds_on_type(t, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::Atom;

    fn p(s: &str, k: usize) -> Constraint {
        parse_constraint(s, k).unwrap()
    }

    #[test]
    fn parses_simple_equality() {
        assert_eq!(p("y == x1", 1), Constraint::Eq(Var::Input, Var::Reg(0)));
    }

    #[test]
    fn parses_conjunction_with_bot() {
        assert_eq!(
            p("x1 == bot && y != x1", 1),
            Constraint::And(
                Box::new(Constraint::IsBot(Var::Reg(0))),
                Box::new(Constraint::neq(Var::Input, Var::Reg(0)))
            )
        );
    }

    #[test]
    fn rejects_out_of_range_register() {
        let e = parse_constraint("y == x2", 1).unwrap_err();
        assert!(e.message.contains("out of range"), "{e}");
        assert_eq!(e.pos, 5);
    }

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(parse_constraint("y ==", 1).unwrap_err().pos, 4);
        assert_eq!(parse_constraint("(y == x1", 1).unwrap_err().pos, 8);
        assert_eq!(parse_constraint("y = x1", 1).unwrap_err().pos, 2);
        assert!(parse_constraint("x0 == y", 1).is_err());
        assert!(parse_constraint("true true", 1).is_err());
    }

    #[test]
    fn precedence_and_printing() {
        let c = p("!y == x1 || x1 == bot && true", 1);
        assert_eq!(
            c,
            Constraint::Or(
                Box::new(Constraint::Not(Box::new(Constraint::Eq(Var::Input, Var::Reg(0))))),
                Box::new(Constraint::And(Box::new(Constraint::IsBot(Var::Reg(0))), Box::new(Constraint::True)))
            )
        );
        assert_eq!(c.to_string(), "y != x1 || x1 == bot && true");
        let nested = p("(y == x1 || y == x2) && !(x1 == x2)", 2);
        assert_eq!(nested.to_string(), "(y == x1 || y == x2) && x1 != x2");
        assert_eq!(p(&nested.to_string(), 2), nested);
        let right = p("true && (false && y == bot)", 0);
        assert_eq!(p(&right.to_string(), 0), right);
    }

    #[test]
    fn evaluation() {
        let v = Valuation::new(vec![Some(Atom(5))]).with_input(Atom(5));
        assert!(p("y == x1", 1).eval(&v).unwrap());
        let bot = Valuation::new(vec![None]);
        assert!(p("x1 == bot", 1).eval(&bot).unwrap());
        assert!(matches!(p("y == x1", 1).eval(&bot), Err(Error::UnboundVariable(_))));
        for a in 0..3 {
            let v = Valuation::new(vec![Some(Atom(a))]).with_input(Atom(1));
            assert!(!p("y == x1 && y != x1", 1).eval(&v).unwrap());
        }
    }

    #[test]
    fn bot_equals_bot() {
        let v = Valuation::new(vec![None, None]);
        assert!(p("x1 == x2", 2).eval(&v).unwrap());
    }

    #[test]
    fn satisfiability_examples() {
        assert!(!satisfiable(&p("y == x1 && y != x1", 1), 1));
        assert!(satisfiable(&p("y != x1 && y != x2 && x1 != x2", 2), 2));
        assert!(!satisfiable(&p("y == x1 && y == x2 && x1 != x2", 2), 2));
        assert!(satisfiable(&p("x1 == bot && x2 != bot", 2), 2));
    }
}
