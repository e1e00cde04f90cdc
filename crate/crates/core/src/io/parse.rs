//! Recursive-descent parser for the observable grammar
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := nat ('/' nat)? | 'i' | 'l' | var | '(' expr ')'
//! var    := 'q'k | 'p'k | 'z'k | 'zb'k | 'yb'k
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Chart, Poly, Vars};
use crate::scalar::{GaussianRational as C, Rational, Scalar};
use crate::series::FormalSeries;
use crate::Observable;

/// What a parsed expression is allowed to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub n: usize,
    pub order: usize,
    /// Forces the chart. Needed for `Configuration`, whose variables are
    /// spelled like the phase-space `q`, and for variable-free input.
    pub chart: Option<Chart>,
}

impl Signature {
    pub fn new(n: usize, order: usize) -> Self {
        Signature { n, order, chart: None }
    }

    pub fn with_chart(n: usize, order: usize, chart: Chart) -> Self {
        Signature { n, order, chart: Some(chart) }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Nat(BigInt),
    Var { family: Family, index: usize },
    I,
    L,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Q,
    P,
    Z,
    Zb,
    Yb,
}

impl Family {
    fn chart_hint(self) -> Chart {
        match self {
            Family::Q | Family::P => Chart::PhaseSpace,
            Family::Z | Family::Zb => Chart::Holomorphic,
            Family::Yb => Chart::Fock,
        }
    }

}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    text: String,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Nat(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            word_token(&word).ok_or_else(|| match unknown_word(&word) {
                Some(e) => e,
                None => syntax(l0, c0, format!("unexpected identifier '{}'", word)),
            })?
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(syntax(l0, c0, format!("unexpected character '{}'", c))),
            }
        };
        column += i - start;
        out.push(Token { tok, line: l0, column: c0, text: chars[start..i].iter().collect() });
    }
    out.push(Token { tok: Tok::End, line, column, text: String::new() });
    Ok(out)
}

fn word_token(word: &str) -> Option<Tok> {
    match word {
        "i" => return Some(Tok::I),
        "l" => return Some(Tok::L),
        _ => {}
    }
    for (prefix, family) in [("zb", Family::Zb), ("yb", Family::Yb), ("q", Family::Q), ("p", Family::P), ("z", Family::Z)] {
        if let Some(rest) = word.strip_prefix(prefix) {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) && !rest.starts_with('0') {
                let index: usize = rest.parse().ok()?;
                return Some(Tok::Var { family, index });
            }
        }
    }
    None
}

/// Identifiers that look like variables but are not.
fn unknown_word(word: &str) -> Option<Error> {
    let looks_like_var = ["zb", "yb", "q", "p", "z"].iter().any(|p| {
        word.strip_prefix(p).is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
    });
    looks_like_var.then(|| Error::UnknownVariable(word.to_string()))
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: Vars,
    order: usize,
}

/// Parses an observable. The chart is inferred from the variables unless
/// the signature fixes it; `q`/`p` together with `z`/`zb` is a
/// [`Error::MixedChart`].
pub fn parse(src: &str, sig: Signature) -> Result<Observable> {
    let toks = lex(src)?;
    let chart = resolve_chart(&toks, sig)?;
    let vars = Vars { chart, n: sig.n };
    let mut p = Parser { toks, pos: 0, vars, order: sig.order };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.line, t.column, format!("unexpected '{}'", t.text)));
    }
    Ok(e)
}

fn resolve_chart(toks: &[Token], sig: Signature) -> Result<Chart> {
    let mut seen: Option<(Chart, &Token)> = None;
    for t in toks {
        let Tok::Var { family, index } = t.tok else { continue };
        if index > sig.n {
            return Err(Error::UnknownVariable(format!("{} (n = {})", t.text, sig.n)));
        }
        let c = family.chart_hint();
        if let Some(forced) = sig.chart {
            let ok = match forced {
                Chart::Configuration => family == Family::Q,
                other => other == c,
            };
            if !ok {
                return Err(Error::MixedChart(format!("'{}' in a {} expression", t.text, forced.name())));
            }
            continue;
        }
        match seen {
            None => seen = Some((c, t)),
            Some((prev, first)) if prev != c => {
                return Err(Error::MixedChart(format!("'{}' and '{}'", first.text, t.text)));
            }
            _ => {}
        }
    }
    Ok(sig.chart.or(seen.map(|s| s.0)).unwrap_or(Chart::PhaseSpace))
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let t = self.bump();
        if t.tok != tok {
            return Err(self.unexpected(&t, what));
        }
        Ok(())
    }

    fn unexpected(&self, t: &Token, what: &str) -> Error {
        if t.tok == Tok::End {
            syntax(t.line, t.column, format!("expected {}, found end of input", what))
        } else {
            syntax(t.line, t.column, format!("expected {}, found '{}'", what, t.text))
        }
    }

    fn expr(&mut self) -> Result<Observable> {
        let negate = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Observable> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Observable> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let Tok::Nat(e) = &t.tok else { return Err(self.unexpected(&t, "an exponent")) };
        let e: u32 = e.try_into().map_err(|_| syntax(t.line, t.column, "exponent too large"))?;
        if e >= self.order as u32 && base.terms().all(|(m, _)| m.is_one()) && base.constant_term().coeff(0).is_zero() {
            // Powers of O(λ) constants beyond the order vanish; skip the work.
            return Ok(Poly::zero(self.vars, self.order));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Observable> {
        let t = self.bump();
        let (vars, order) = (self.vars, self.order);
        let scalar = |c: C| Poly::scalar(vars, c, order);
        match t.tok {
            Tok::Nat(num) => {
                let den = if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    match d.tok {
                        Tok::Nat(d0) if !d0.is_zero() => d0,
                        Tok::Nat(_) => return Err(syntax(d.line, d.column, "zero denominator")),
                        _ => return Err(self.unexpected(&d, "a denominator")),
                    }
                } else {
                    BigInt::from(1)
                };
                Ok(scalar(C::from_rational(Rational::new(num, den))))
            }
            Tok::I => Ok(scalar(C::i())),
            Tok::L => Ok(Poly::constant(self.vars, FormalSeries::lambda(self.order))),
            Tok::Var { family, index } => {
                let n = self.vars.n;
                let slot = match family {
                    Family::Q | Family::Z | Family::Yb => index - 1,
                    Family::P | Family::Zb => n + index - 1,
                };
                Ok(Poly::var(self.vars, slot, self.order))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(self.unexpected(&t, "a number, 'i', 'l', a variable or '('")),
        }
    }
}

/// Parses a series in `l` only (no variables).
pub fn parse_series(src: &str, order: usize) -> Result<crate::Series> {
    let p = parse(src, Signature::with_chart(1, order, Chart::PhaseSpace))?;
    if p.terms().any(|(m, _)| !m.is_one()) {
        return Err(Error::SignatureMismatch("expected a series in l without variables".into()));
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::oscillator;
    use crate::poly::Monomial;

    fn sig() -> Signature {
        Signature::new(1, 4)
    }

    #[test]
    fn oscillator_parses() {
        assert_eq!(parse("1/2*(p1^2 + q1^2)", sig()).unwrap(), oscillator::<C>(1, 4));
    }

    #[test]
    fn lambda_and_constants() {
        let v = Vars::phase_space(1);
        let f = parse("q1*p1 + l", sig()).unwrap();
        let expected = &Poly::monomial(v, Monomial::new(vec![1, 1]), FormalSeries::one(4))
            + &Poly::constant(v, FormalSeries::lambda(4));
        assert_eq!(f, expected);
        assert_eq!(parse("-(-1/4)*l^2", sig()).unwrap().to_string(), "1/4*l^2");
        assert!(parse("l^7", sig()).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("q1 + z1", sig()), Err(Error::MixedChart(_))));
        assert!(matches!(parse("q2", sig()), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse("x", sig()), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse("q1 / 2", sig()), Err(Error::Syntax { line: 1, column: 4, .. })));
        assert!(matches!(parse("(q1\n  + ", sig()), Err(Error::Syntax { line: 2, column: 5, .. })));
        assert!(matches!(parse("1/0", sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse("", sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse("q1^-1", sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse("p1", Signature::with_chart(1, 4, Chart::Configuration)), Err(Error::MixedChart(_))));
    }

    #[test]
    fn charts() {
        assert_eq!(parse("z1*zb1", sig()).unwrap().vars(), Vars::holomorphic(1));
        assert_eq!(parse("yb1^2", sig()).unwrap().vars(), Vars::fock(1));
        assert_eq!(parse("3", sig()).unwrap().vars(), Vars::phase_space(1));
        assert_eq!(parse("q1", Signature::with_chart(1, 4, Chart::Configuration)).unwrap().vars(), Vars::configuration(1));
    }

    #[test]
    fn printed_text_round_trips() {
        for s in ["q1*p1 + (1/2*i)*l", "0", "(-1/4)*l^2", "(1 - 2/3*i)*q1^3*p1 + (i)*l^2", "1/2*q1^2 + 1/2*p1^2"] {
            let f = parse(s, sig()).unwrap();
            assert_eq!(f.to_string(), s);
        }
    }
}
