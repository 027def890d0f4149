//! Terms and equations in the residuated-lattice signature.
//!
//! Syntax, loosest binding first: `->` (right associative, `x -> y` is
//! `x\y`), `∨`/`|`, `∧`/`&`, `\` and `/` (left associative), fusion `*`/`·`
//! or juxtaposition, postfix `^n`. Constants are `1` and `0`; brackets may
//! be `()` or `[]`. Printing is fully parenthesized.

use crate::algebra::FiniteRL;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    One,
    Zero,
    Mul(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Ldiv(Box<Term>, Box<Term>),
    Rdiv(Box<Term>, Box<Term>),
    Pow(Box<Term>, u32),
}

impl Term {
    pub fn uses_zero(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) | Term::One => false,
            Term::Pow(t, _) => t.uses_zero(),
            Term::Mul(s, t)
            | Term::Meet(s, t)
            | Term::Join(s, t)
            | Term::Ldiv(s, t)
            | Term::Rdiv(s, t) => s.uses_zero() || t.uses_zero(),
        }
    }

    /// Number of variable slots the term reads (largest index plus one).
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Zero | Term::One => 0,
            Term::Pow(t, _) => t.arity(),
            Term::Mul(s, t)
            | Term::Meet(s, t)
            | Term::Join(s, t)
            | Term::Ldiv(s, t)
            | Term::Rdiv(s, t) => s.arity().max(t.arity()),
        }
    }

    /// Whether the term uses only variables, `1` and fusion.
    pub fn is_monoid_term(&self) -> bool {
        match self {
            Term::Var(_) | Term::One => true,
            Term::Mul(s, t) => s.is_monoid_term() && t.is_monoid_term(),
            Term::Pow(t, _) => t.is_monoid_term(),
            _ => false,
        }
    }

    /// Evaluates under `env` (variable index to element). The algebra must
    /// be bounded if the term mentions `0`.
    pub fn eval(&self, a: &FiniteRL, env: &[usize]) -> usize {
        match self {
            Term::Var(i) => env[*i],
            Term::One => a.unit(),
            Term::Zero => a.zero().expect("0 evaluated in an unbounded algebra"),
            Term::Mul(s, t) => a.mul(s.eval(a, env), t.eval(a, env)),
            Term::Meet(s, t) => a.meet(s.eval(a, env), t.eval(a, env)),
            Term::Join(s, t) => a.join(s.eval(a, env), t.eval(a, env)),
            Term::Ldiv(s, t) => a.ldiv(s.eval(a, env), t.eval(a, env)),
            Term::Rdiv(s, t) => a.rdiv(s.eval(a, env), t.eval(a, env)),
            Term::Pow(t, k) => a.pow(t.eval(a, env), *k as usize),
        }
    }

    pub fn show(&self, names: &[String]) -> String {
        let bin =
            |s: &Term, sym: &str, t: &Term| format!("({} {sym} {})", s.show(names), t.show(names));
        match self {
            Term::Var(i) => names[*i].clone(),
            Term::One => "1".into(),
            Term::Zero => "0".into(),
            Term::Mul(s, t) => bin(s, "*", t),
            Term::Meet(s, t) => bin(s, "&", t),
            Term::Join(s, t) => bin(s, "|", t),
            Term::Ldiv(s, t) => bin(s, "\\", t),
            Term::Rdiv(s, t) => bin(s, "/", t),
            Term::Pow(t, k) => format!("{}^{k}", t.show(names)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Leq,
}

/// `lhs = rhs` or `lhs <= rhs` over the named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
    /// Variable names in order of first occurrence.
    pub vars: Vec<String>,
}

impl Equation {
    pub fn uses_zero(&self) -> bool {
        self.lhs.uses_zero() || self.rhs.uses_zero()
    }

    pub fn is_monoid_equation(&self) -> bool {
        self.relation == Relation::Eq && self.lhs.is_monoid_term() && self.rhs.is_monoid_term()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Leq => "<=",
        };
        write!(
            f,
            "{} {rel} {}",
            self.lhs.show(&self.vars),
            self.rhs.show(&self.vars)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Num(u32),
    Mul,
    Meet,
    Join,
    Ldiv,
    Rdiv,
    Arrow,
    Caret,
    Open,
    Close,
    Eq,
    Leq,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let err = |m: String| Error::Parse {
        line: 1,
        message: m,
    };
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        i += 1;
        match c {
            c if c.is_whitespace() => {}
            '*' | '·' => out.push(Tok::Mul),
            '&' | '∧' => out.push(Tok::Meet),
            '|' | '∨' => out.push(Tok::Join),
            '\\' => out.push(Tok::Ldiv),
            '/' => out.push(Tok::Rdiv),
            '→' => out.push(Tok::Arrow),
            '^' => out.push(Tok::Caret),
            '(' | '[' => out.push(Tok::Open),
            ')' | ']' => out.push(Tok::Close),
            '=' => out.push(Tok::Eq),
            '≤' => out.push(Tok::Leq),
            '-' if next == Some('>') => {
                i += 1;
                out.push(Tok::Arrow);
            }
            '<' if next == Some('=') => {
                i += 1;
                out.push(Tok::Leq);
            }
            c if c.is_ascii_digit() => {
                let start = i - 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v: u32 = s
                    .parse()
                    .map_err(|_| err(format!("number {s} too large")))?;
                // Digits directly after `^` are exponents; elsewhere 0 and 1
                // are constants.
                if out.last() == Some(&Tok::Caret) {
                    out.push(Tok::Num(v));
                } else {
                    match v {
                        0 => out.push(Tok::Zero),
                        1 => out.push(Tok::One),
                        _ => return Err(err(format!("unexpected number {s}"))),
                    }
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i - 1;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(err(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a mut Vec<String>,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::Parse {
            line: 1,
            message: format!("{m} at token {}", self.pos + 1),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn arrow(&mut self) -> Result<Term> {
        let lhs = self.join()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.arrow()?;
            return Ok(Term::Ldiv(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.eat(&Tok::Join) {
            t = Term::Join(Box::new(t), Box::new(self.meet()?));
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.div()?;
        while self.eat(&Tok::Meet) {
            t = Term::Meet(Box::new(t), Box::new(self.div()?));
        }
        Ok(t)
    }

    fn div(&mut self) -> Result<Term> {
        let mut t = self.mul()?;
        loop {
            if self.eat(&Tok::Ldiv) {
                t = Term::Ldiv(Box::new(t), Box::new(self.mul()?));
            } else if self.eat(&Tok::Rdiv) {
                t = Term::Rdiv(Box::new(t), Box::new(self.mul()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::One | Tok::Zero | Tok::Open)
        )
    }

    fn mul(&mut self) -> Result<Term> {
        let mut t = self.power()?;
        loop {
            if self.eat(&Tok::Mul) || self.starts_atom() {
                t = Term::Mul(Box::new(t), Box::new(self.power()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn power(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.eat(&Tok::Caret) {
            match self.peek() {
                Some(&Tok::Num(k)) => {
                    self.pos += 1;
                    t = Term::Pow(Box::new(t), k);
                }
                _ => return Err(self.err("expected exponent")),
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let idx = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::Var(idx))
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.arrow()?;
                if !self.eat(&Tok::Close) {
                    return Err(self.err("expected closing bracket"));
                }
                Ok(t)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parses a term; variables are numbered in order of first occurrence.
pub fn parse_term(text: &str) -> Result<(Term, Vec<String>)> {
    let toks = lex(text)?;
    let mut vars = Vec::new();
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: &mut vars,
    };
    let t = p.arrow()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok((t, vars))
}

/// Parses `lhs = rhs` or `lhs <= rhs`.
pub fn parse_equation(text: &str) -> Result<Equation> {
    let toks = lex(text)?;
    let mut vars = Vec::new();
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: &mut vars,
    };
    let lhs = p.arrow()?;
    let relation = if p.eat(&Tok::Eq) {
        Relation::Eq
    } else if p.eat(&Tok::Leq) {
        Relation::Leq
    } else {
        return Err(p.err("expected '=' or '<='"));
    };
    let rhs = p.arrow()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(Equation {
        lhs,
        rhs,
        relation,
        vars,
    })
}

/// Parses one equation per non-empty line; `#` starts a comment.
pub fn parse_equation_file(text: &str) -> Result<Vec<Equation>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(parse_equation(body).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                line: k + 1,
                message,
            },
            other => other,
        })?);
    }
    Ok(out)
}

/// A failing assignment with both sides' values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(String, usize)>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Counterexample {
    pub fn value_of(&self, var: &str) -> Option<usize> {
        self.assignment
            .iter()
            .find(|(v, _)| v == var)
            .map(|&(_, x)| x)
    }
}

/// Checks an equation under every assignment, in lexicographic order with
/// the first variable most significant; returns the first failure.
pub fn eval_equation(a: &FiniteRL, eq: &Equation) -> Result<Option<Counterexample>> {
    if eq.uses_zero() && !a.is_bounded() {
        return Err(Error::Precondition(format!(
            "equation '{eq}' mentions 0 but the algebra is unbounded"
        )));
    }
    let n = a.n();
    let k = eq.vars.len();
    let mut env = vec![0usize; k];
    loop {
        let l = eq.lhs.eval(a, &env);
        let r = eq.rhs.eval(a, &env);
        let holds = match eq.relation {
            Relation::Eq => l == r,
            Relation::Leq => a.leq(l, r),
        };
        if !holds {
            return Ok(Some(Counterexample {
                assignment: eq.vars.iter().cloned().zip(env.iter().copied()).collect(),
                lhs: l,
                rhs: r,
            }));
        }
        // Odometer with the last variable fastest.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            env[pos] += 1;
            if env[pos] < n {
                break;
            }
            env[pos] = 0;
        }
    }
}

/// Whether every equation holds.
pub fn satisfies(a: &FiniteRL, eqs: &[Equation]) -> Result<bool> {
    for e in eqs {
        if eval_equation(a, e)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equation source text by name: `comm`, `sl`, `prel`, `div`, `gl2`, and
/// `pot<n>` for `x^n = x^(n+1)`.
pub fn named_equations(name: &str) -> Option<Vec<&'static str>> {
    let v: Vec<&'static str> = match name {
        "comm" => vec!["x * y = y * x"],
        "sl" => vec!["[u \\ ((y \\ x) u)] | [(v (x \\ y)) / v] = 1"],
        "prel" => vec!["(y \\ x) | (x \\ y) = 1"],
        "div" => vec!["x & y = x (x \\ y)", "x & y = (y / x) x"],
        "gl2" => vec!["x | ((x * (x & y)) \\ (x & y)^2) = 1", "x^2 = x^3"],
        _ => return None,
    };
    Some(v)
}

/// Parses a named equation set, including `pot<n>`.
pub fn named(name: &str) -> Result<Vec<Equation>> {
    if let Some(k) = name.strip_prefix("pot").and_then(|s| s.parse::<u32>().ok()) {
        return Ok(vec![potency(k)]);
    }
    let src = named_equations(name).ok_or_else(|| Error::Parse {
        line: 1,
        message: format!("unknown equation name '{name}'"),
    })?;
    src.iter().map(|s| parse_equation(s)).collect()
}

/// `x^n = x^(n+1)`.
pub fn potency(n: u32) -> Equation {
    Equation {
        lhs: Term::Pow(Box::new(Term::Var(0)), n),
        rhs: Term::Pow(Box::new(Term::Var(0)), n + 1),
        relation: Relation::Eq,
        vars: vec!["x".into()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::{boolean_square, godel, lukasiewicz};

    fn holds(a: &FiniteRL, name: &str) -> bool {
        satisfies(a, &named(name).unwrap()).unwrap()
    }

    #[test]
    fn precedence_and_printing() {
        let (t, vars) = parse_term("x y \\ z & w -> 1").unwrap();
        assert_eq!(vars, ["x", "y", "z", "w"]);
        assert_eq!(t.show(&vars), "((((x * y) \\ z) & w) \\ 1)");
        let (t, vars) = parse_term("a -> b -> c").unwrap();
        assert_eq!(t.show(&vars), "(a \\ (b \\ c))");
        let (t, vars) = parse_term("x^2 · 0 ∨ [x ∧ y]").unwrap();
        assert_eq!(t.show(&vars), "((x^2 * 0) | (x & y))");
    }

    #[test]
    fn printed_terms_parse_back() {
        for src in [
            "[u\\((y\\x)u)] ∨ [(v(x\\y))/v]",
            "x | ((x * (x & y)) \\ (x & y)^2)",
            "a/b/c",
        ] {
            let (t, vars) = parse_term(src).unwrap();
            let (t2, vars2) = parse_term(&t.show(&vars)).unwrap();
            assert_eq!((t, vars), (t2, vars2));
        }
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(parse_term("x *").is_err());
        assert!(parse_term("(x").is_err());
        assert!(parse_equation("x y").is_err());
        assert!(parse_term("x ^ y").is_err());
        assert!(matches!(
            parse_equation_file("x = x\n\nx = (").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
    }

    #[test]
    fn lukasiewicz_three_is_commutative_and_divisible() {
        let l3 = lukasiewicz(3);
        assert!(holds(&l3, "comm"));
        assert!(holds(&l3, "div"));
        assert!(holds(&l3, "prel"));
        assert!(!holds(&l3, "pot1"));
        assert!(holds(&l3, "pot2"));
    }

    #[test]
    fn godel_chains_are_divisible_and_semilinear() {
        for n in 2..6 {
            let g = godel(n);
            assert!(holds(&g, "div"));
            assert!(holds(&g, "sl"));
            assert!(holds(&g, "pot1"));
            assert!(holds(&g, "gl2"));
        }
    }

    #[test]
    fn first_counterexample_is_lexicographic() {
        let l4 = lukasiewicz(4);
        let eq = parse_equation("x = x x").unwrap();
        let ce = eval_equation(&l4, &eq).unwrap().unwrap();
        // Index 0 is the bottom, which is idempotent; 1 is the first failure.
        assert_eq!(ce.assignment, vec![("x".to_string(), 1)]);
        assert!(!holds(&l4, "gl2"));
    }

    #[test]
    fn boolean_square_is_semilinear_but_not_a_chain() {
        let b = boolean_square();
        assert!(!b.is_chain());
        assert!(holds(&b, "sl"));
        assert!(holds(&b, "prel"));
    }

    #[test]
    fn zero_needs_a_bounded_algebra() {
        let t = crate::algebra::catalog::trivial_unbounded();
        let eq = parse_equation("x & 0 = 0").unwrap();
        assert!(matches!(
            eval_equation(&t, &eq),
            Err(Error::Precondition(_))
        ));
    }
}
