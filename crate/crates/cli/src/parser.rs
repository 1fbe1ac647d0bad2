//! The diagram expression language.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr   := sum
//! sum    := seq ("+" seq)*
//! seq    := tensor (";" tensor)*        -- f ; g stacks g above f
//! tensor := shift ("*" shift)*
//! shift  := atom ("[" int "]")*
//! atom   := "id" nat | "cup" | "cap" | "hf" | "hfb"
//!         | "alpha0" | "alpha1" | "(" expr ")"
//! ```
//!
//! `;` reads in diagram order: the left operand is the bottom of the
//! stack. Parse errors carry the byte offset of the offending token.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    Id(usize),
    Cup,
    Cap,
    Hf,
    Hfb,
    Alpha0,
    Alpha1,
}

impl GenKind {
    pub fn name(self) -> String {
        match self {
            GenKind::Id(k) => format!("id{k}"),
            GenKind::Cup => "cup".into(),
            GenKind::Cap => "cap".into(),
            GenKind::Hf => "hf".into(),
            GenKind::Hfb => "hfb".into(),
            GenKind::Alpha0 => "alpha0".into(),
            GenKind::Alpha1 => "alpha1".into(),
        }
    }
}

/// Abstract syntax of a diagram expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Gen(GenKind),
    /// `lhs ; rhs`: `rhs` stacked above `lhs`.
    Seq(Box<Expr>, Box<Expr>),
    /// `lhs * rhs`: `lhs` to the left of `rhs`.
    Tensor(Box<Expr>, Box<Expr>),
    /// `expr [m]`.
    Shift(Box<Expr>, i64),
    /// `e1 + e2 + ...` (two or more summands).
    Sum(Vec<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Plus,
    Semi,
    Star,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Int(i64),
    Ident(String),
}

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(input: &'a str) -> Result<Vec<(usize, Token)>, ParseError> {
        let mut lex = Lexer { input: input.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lex.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.input.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.input[self.pos];
        let simple = match c {
            b'+' => Some(Token::Plus),
            b';' => Some(Token::Semi),
            b'*' => Some(Token::Star),
            b'[' => Some(Token::LBracket),
            b']' => Some(Token::RBracket),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok(Some((start, t)));
        }
        if c == b'-' || c.is_ascii_digit() {
            let mut end = self.pos + 1;
            while end < self.input.len() && self.input[end].is_ascii_digit() {
                end += 1;
            }
            let text = std::str::from_utf8(&self.input[self.pos..end]).unwrap();
            let value: i64 = text.parse().map_err(|_| ParseError {
                position: start,
                message: format!("bad integer {text:?}"),
            })?;
            self.pos = end;
            return Ok(Some((start, Token::Int(value))));
        }
        if c.is_ascii_lowercase() {
            let mut end = self.pos + 1;
            while end < self.input.len()
                && (self.input[end].is_ascii_lowercase() || self.input[end].is_ascii_digit())
            {
                end += 1;
            }
            let text = std::str::from_utf8(&self.input[self.pos..end]).unwrap().to_string();
            self.pos = end;
            return Ok(Some((start, Token::Ident(text))));
        }
        Err(ParseError { position: start, message: format!("unexpected character {:?}", c as char) })
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.input_len, |(p, _)| *p)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.index).map(|(_, t)| t.clone());
        self.index += 1;
        t
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.index += 1;
            Ok(())
        } else {
            Err(ParseError { position: self.position(), message: format!("expected {what}") })
        }
    }

    fn parse_sum(&mut self) -> Result<Expr, ParseError> {
        let first = self.parse_seq()?;
        let mut terms = vec![first];
        while self.peek() == Some(&Token::Plus) {
            self.index += 1;
            terms.push(self.parse_seq()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn parse_seq(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_tensor()?;
        while self.peek() == Some(&Token::Semi) {
            self.index += 1;
            let rhs = self.parse_tensor()?;
            acc = Expr::Seq(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_tensor(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_shift()?;
        while self.peek() == Some(&Token::Star) {
            self.index += 1;
            let rhs = self.parse_shift()?;
            acc = Expr::Tensor(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_shift(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_atom()?;
        while self.peek() == Some(&Token::LBracket) {
            self.index += 1;
            let pos = self.position();
            let Some(Token::Int(m)) = self.advance() else {
                return Err(ParseError { position: pos, message: "expected integer shift".into() });
            };
            self.expect(&Token::RBracket, "]")?;
            acc = Expr::Shift(Box::new(acc), m);
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.position();
        match self.advance() {
            Some(Token::LParen) => {
                let inner = self.parse_sum()?;
                self.expect(&Token::RParen, ")")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "cup" => Ok(Expr::Gen(GenKind::Cup)),
                "cap" => Ok(Expr::Gen(GenKind::Cap)),
                "hf" => Ok(Expr::Gen(GenKind::Hf)),
                "hfb" => Ok(Expr::Gen(GenKind::Hfb)),
                "alpha0" => Ok(Expr::Gen(GenKind::Alpha0)),
                "alpha1" => Ok(Expr::Gen(GenKind::Alpha1)),
                _ => {
                    if let Some(digits) = name.strip_prefix("id") {
                        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                            return Ok(Expr::Gen(GenKind::Id(digits.parse().map_err(|_| {
                                ParseError {
                                    position: pos,
                                    message: format!("bad strand count in {name:?}"),
                                }
                            })?)));
                        }
                    }
                    Err(ParseError { position: pos, message: format!("unknown generator {name:?}") })
                }
            },
            Some(other) => Err(ParseError {
                position: pos,
                message: format!("unexpected token {other:?}"),
            }),
            None => Err(ParseError { position: pos, message: "unexpected end of input".into() }),
        }
    }
}

/// Parses a diagram expression.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = Lexer::tokens(input)?;
    let mut parser = Parser { tokens, index: 0, input_len: input.len() };
    let expr = parser.parse_sum()?;
    if parser.index < parser.tokens.len() {
        return Err(ParseError {
            position: parser.position(),
            message: "trailing input after expression".into(),
        });
    }
    Ok(expr)
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Sum(_) => 0,
        Expr::Seq(..) => 1,
        Expr::Tensor(..) => 2,
        Expr::Shift(..) => 3,
        Expr::Gen(_) => 4,
    }
}

fn print_at(e: &Expr, min: u8, out: &mut String) {
    let needs_parens = precedence(e) < min;
    if needs_parens {
        out.push('(');
    }
    match e {
        Expr::Gen(g) => out.push_str(&g.name()),
        Expr::Seq(a, b) => {
            print_at(a, 1, out);
            out.push_str(" ; ");
            print_at(b, 2, out);
        }
        Expr::Tensor(a, b) => {
            print_at(a, 2, out);
            out.push_str(" * ");
            print_at(b, 3, out);
        }
        Expr::Shift(a, m) => {
            print_at(a, 3, out);
            out.push('[');
            out.push_str(&m.to_string());
            out.push(']');
        }
        Expr::Sum(terms) => {
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                print_at(t, 1, out);
            }
        }
    }
    if needs_parens {
        out.push(')');
    }
}

/// Prints an expression so that `parse(print(e)) == e`.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    print_at(e, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(e: &Expr) {
        let text = print(e);
        let back = parse(&text).unwrap_or_else(|err| panic!("{text:?}: {err}"));
        assert_eq!(&back, e, "{text:?}");
    }

    #[test]
    fn precedence_examples() {
        let e = parse("cup ; cap").unwrap();
        assert_eq!(
            e,
            Expr::Seq(Box::new(Expr::Gen(GenKind::Cup)), Box::new(Expr::Gen(GenKind::Cap)))
        );
        // * binds tighter than ;
        let e = parse("hf * id1 ; cap").unwrap();
        assert!(matches!(e, Expr::Seq(..)));
        // ; binds tighter than +
        let e = parse("hf ; hfb + alpha0").unwrap();
        assert!(matches!(e, Expr::Sum(ref v) if v.len() == 2));
        // postfix shift binds tightest
        let e = parse("cup[1] * id1").unwrap();
        assert!(matches!(e, Expr::Tensor(..)));
    }

    #[test]
    fn id_with_count() {
        assert_eq!(parse("id3").unwrap(), Expr::Gen(GenKind::Id(3)));
        assert!(parse("id").is_err());
        assert!(parse("idx").is_err());
    }

    #[test]
    fn negative_shift() {
        let e = parse("cup[-2]").unwrap();
        assert_eq!(e, Expr::Shift(Box::new(Expr::Gen(GenKind::Cup)), -2));
    }

    #[test]
    fn error_positions() {
        let err = parse("cup ; $").unwrap_err();
        assert_eq!(err.position, 6);
        let err = parse("cup cap").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn structured_round_trips() {
        use Expr::*;
        use GenKind::*;
        roundtrip(&Seq(
            Box::new(Seq(Box::new(Gen(Cup)), Box::new(Gen(Cap)))),
            Box::new(Gen(Alpha0)),
        ));
        roundtrip(&Seq(
            Box::new(Gen(Cup)),
            Box::new(Seq(Box::new(Gen(Cap)), Box::new(Gen(Alpha0)))),
        ));
        roundtrip(&Sum(vec![
            Gen(Hf),
            Tensor(Box::new(Gen(Id(1))), Box::new(Shift(Box::new(Gen(Cup)), -1))),
        ]));
        roundtrip(&Shift(Box::new(Sum(vec![Gen(Alpha0), Gen(Id(0))])), 2));
    }
}
