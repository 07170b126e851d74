use crate::error::{Error, Result};

use super::atom::{Atom, FuncAtom};
use super::Expr;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Token {
    Int(i64),
    Ident(String),
    Str(String),
    Sym(char),
}

const SYMBOLS: &str = "+-*/^(),;={}<>";

/// Shared lexer for expression text and problem scripts. `#` starts a
/// comment running to end of line.
pub(crate) struct Lexer {
    toks: Vec<(Token, usize)>,
    cur: usize,
}

impl Lexer {
    pub(crate) fn new(src: &str) -> Result<Lexer> {
        let bytes = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c == '#' {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Token::Ident(src[start..i].to_string()), start));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i].parse::<i64>().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "integer literal out of range".to_string(),
                })?;
                toks.push((Token::Int(n), start));
            } else if c == '"' {
                let start = i;
                i += 1;
                let body = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "unterminated string literal".to_string(),
                    });
                }
                toks.push((Token::Str(src[body..i].to_string()), start));
                i += 1;
            } else if SYMBOLS.contains(c) {
                toks.push((Token::Sym(c), i));
                i += 1;
            } else {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                });
            }
        }
        Ok(Lexer { toks, cur: 0 })
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.toks.get(self.cur).map(|(t, _)| t)
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> Option<&Token> {
        self.toks.get(self.cur + ahead).map(|(t, _)| t)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks
            .get(self.cur)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| self.toks.last().map(|(_, p)| p + 1).unwrap_or(0))
    }

    pub(crate) fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.cur).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cur += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.cur >= self.toks.len()
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.into() }
    }

    pub(crate) fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.cur += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Token::Ident(_)) => match self.bump() {
                Some(Token::Ident(s)) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.err("expected an identifier")),
        }
    }
}

/// Parse expression text into canonical form.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut lx = Lexer::new(src)?;
    let e = ExprParser { lx: &mut lx, derivations: false }.expr()?;
    if !lx.at_end() {
        return Err(lx.err("trailing input after expression"));
    }
    Ok(e)
}

/// Like `parse_expr`, but `d/dx` is read as a formal derivation symbol and
/// comes back as the reserved variable `d/dx`, which no identifier can
/// collide with.
pub(crate) fn parse_expr_with_derivations(lx: &mut Lexer) -> Result<Expr> {
    ExprParser { lx, derivations: true }.expr()
}

/// Expression sub-parser over an already-running lexer, used by the script
/// parser for inline expressions.
pub(crate) fn parse_expr_tokens(lx: &mut Lexer) -> Result<Expr> {
    ExprParser { lx, derivations: false }.expr()
}

struct ExprParser<'a> {
    lx: &'a mut Lexer,
    derivations: bool,
}

impl ExprParser<'_> {
    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.lx.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.lx.eat_sym('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.lx.eat_sym('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.lx.eat_sym('/') {
                acc = acc.checked_div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.lx.eat_sym('-') {
            Ok(self.factor()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if !self.lx.eat_sym('^') {
            return Ok(base);
        }
        let k = self.exponent()?;
        if base.is_zero() && k < 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(base.pow_i(k))
    }

    fn exponent(&mut self) -> Result<i64> {
        let parens = self.lx.eat_sym('(');
        let neg = self.lx.eat_sym('-');
        let n = match self.lx.peek() {
            Some(Token::Int(_)) => match self.lx.bump() {
                Some(Token::Int(n)) => n,
                _ => unreachable!(),
            },
            _ => return Err(self.lx.err("expected an integer exponent")),
        };
        if parens {
            self.lx.expect_sym(')')?;
        }
        if n > 999 {
            return Err(self.lx.err("exponent too large"));
        }
        Ok(if neg { -n } else { n })
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.lx.peek().cloned() {
            Some(Token::Int(n)) => {
                self.lx.bump();
                Ok(Expr::integer(n))
            }
            Some(Token::Sym('(')) => {
                self.lx.bump();
                let e = self.expr()?;
                self.lx.expect_sym(')')?;
                Ok(e)
            }
            Some(Token::Ident(s)) => {
                if self.derivations && s == "d" {
                    if let (Some(Token::Sym('/')), Some(Token::Ident(t))) =
                        (self.lx.peek_at(1), self.lx.peek_at(2))
                    {
                        if t.len() > 1 && t.starts_with('d') {
                            let var = t[1..].to_string();
                            self.lx.bump();
                            self.lx.bump();
                            self.lx.bump();
                            return Ok(Expr::var(&format!("d/d{var}")));
                        }
                    }
                }
                self.lx.bump();
                if s == "exp" {
                    self.lx.expect_sym('(')?;
                    let arg = self.expr()?;
                    self.lx.expect_sym(')')?;
                    return Expr::exp(arg);
                }
                if self.lx.peek() == Some(&Token::Sym('(')) {
                    self.lx.bump();
                    let mut args = Vec::new();
                    if !self.lx.eat_sym(')') {
                        args.push(self.lx.expect_ident()?);
                        while self.lx.eat_sym(',') {
                            args.push(self.lx.expect_ident()?);
                        }
                        self.lx.expect_sym(')')?;
                    }
                    return Ok(Expr::from_atom(Atom::Func(split_func_label(&s, args))));
                }
                Ok(Expr::var(&s))
            }
            Some(Token::Str(_)) => Err(self.lx.err("unexpected string literal in expression")),
            Some(Token::Sym(c)) => Err(self.lx.err(format!("unexpected '{c}'"))),
            None => Err(self.lx.err("unexpected end of input")),
        }
    }
}

/// Resolve a function label like `Phi_xy` against its argument list: the part
/// after the first underscore is read as a run of argument names (longest
/// match first). When that fails the whole label is the function's name.
fn split_func_label(label: &str, args: Vec<String>) -> FuncAtom {
    if let Some(idx) = label.find('_') {
        let name = &label[..idx];
        let suffix = &label[idx + 1..];
        if !name.is_empty() && !suffix.is_empty() {
            if let Some(mut partials) = decompose_partials(suffix, &args) {
                partials.sort();
                return FuncAtom { name: name.to_string(), args, partials };
            }
        }
    }
    FuncAtom { name: label.to_string(), args, partials: Vec::new() }
}

fn decompose_partials(suffix: &str, args: &[String]) -> Option<Vec<String>> {
    let mut by_len: Vec<&String> = args.iter().collect();
    by_len.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut rest = suffix;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let hit = by_len.iter().find(|a| rest.starts_with(a.as_str()))?;
        out.push((**hit).clone());
        rest = &rest[hit.len()..];
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> Expr {
        parse_expr(src).unwrap()
    }

    #[test]
    fn arithmetic_and_precedence() {
        assert_eq!(p("x + 2*y"), Expr::var("x").add(&Expr::integer(2).mul(&Expr::var("y"))));
        assert_eq!(p("x - y - z"), p("x - (y + z)"));
        assert_eq!(p("-x^2"), p("0 - x^2"));
        assert_eq!(p("2^3"), Expr::integer(8));
        assert_eq!(p("3/2"), Expr::rational(3, 2));
        assert_eq!(p("x^-1"), p("1/x"));
        assert_eq!(p("x^(-2)"), p("1/x^2"));
    }

    #[test]
    fn cancellation_happens_at_parse_time() {
        assert_eq!(p("(x^2 - 1)/(x - 1)"), p("x + 1"));
        assert_eq!(p("x/x"), Expr::one());
        assert_eq!(p("exp(x)*exp(y)"), p("exp(x + y)"));
        assert_eq!(p("1/exp(x)"), p("exp(-x)"));
    }

    #[test]
    fn function_labels_resolve_partials() {
        let direct = p("Phi_xy(x,y)");
        let derived = Expr::func("Phi", &["x", "y"]).diff("x").diff("y");
        assert_eq!(direct, derived);
        // Order of the suffix does not matter once sorted.
        assert_eq!(p("Phi_yx(x,y)"), derived);
        // A suffix that is not made of argument names stays part of the name.
        let odd = p("Phi_t(x,y)");
        assert_eq!(odd, Expr::func("Phi_t", &["x", "y"]));
    }

    #[test]
    fn jet_style_names_are_plain_variables() {
        let e = p("u_t^2 - u_x^2");
        let expect = Expr::var("u_t")
            .mul(&Expr::var("u_t"))
            .sub(&Expr::var("u_x").mul(&Expr::var("u_x")));
        assert_eq!(e, expect);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "x + 1",
            "x^2 - 2*x + 1",
            "(x + y)/(x - y)",
            "3/2*x^2 - 1/3",
            "exp(x + 2*y)",
            "exp(-x)",
            "(u_t^2 - u_x^2)/(u_xx + 1)",
            "Phi_xy(x,y)*exp(x)",
            "x*y*z + x^3",
            "-x - 1",
            "exp((u_y)/(u_x))",
            "R^-2*u_xx",
        ] {
            let e = p(src);
            let printed = format!("{e}");
            let back = parse_expr(&printed).unwrap();
            assert_eq!(e, back, "round trip failed: {src} printed as {printed}");
        }
    }

    #[test]
    fn comments_and_whitespace() {
        assert_eq!(p("x + # trailing words\n y"), p("x + y"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        for bad in ["x +", "(x", "x $ y", "exp", "exp x", "x ^ y", "\"str\""] {
            match parse_expr(bad) {
                Err(Error::Parse { .. }) => {}
                other => panic!("expected parse error for {bad:?}, got {other:?}"),
            }
        }
        assert!(matches!(parse_expr("1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(parse_expr("1/(x - x)"), Err(Error::DivisionByZero)));
        assert!(matches!(
            parse_expr("exp(Phi(x))"),
            Err(Error::DomainEscape(_))
        ));
    }

    #[test]
    fn derivation_symbols_only_in_operator_mode() {
        let mut lx = Lexer::new("t*d/dx + x*d/dt").unwrap();
        let e = parse_expr_with_derivations(&mut lx).unwrap();
        assert!(lx.at_end());
        let vars = e.collect_vars();
        assert!(vars.contains("d/dx") && vars.contains("d/dt"));
        // In plain mode the same text is ordinary division by a variable dx.
        let plain = p("t*d/dx");
        assert!(plain.collect_vars().contains("dx"));
    }
}
