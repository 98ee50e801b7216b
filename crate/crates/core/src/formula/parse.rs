//! Recursive-descent parser for the surface syntax.
//!
//! ```text
//! phi ::= PRED "(" [var {"," var}] ")" | "true" | "false" | "~" phi
//!       | "(" phi op phi {op phi} ")"            op ∈ {&, |, ->}; chains only for & and |
//!       | "[" q "]" phi | "dia[" q "]" phi | "dep[" q "]" (var | group)
//!       | "pa(" g ")" | "paY(" g ";" g ")" | "na(" g ")" | "ca1(" g ")"
//!       | "ca2(" g ")" | "ca(" g ")" | "D(" g ";" var ")" | "DD(" g ")" phi
//! q   ::= "=" g ";" "<=" g ";" "<" g
//! g   ::= "{" [var {"," var}] "}" | "-{" ... "}"
//! ```

use thiserror::Error;

use super::{GroupExpr, MacroFormula, QueryExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Le,
    Lt,
    Eq,
    Minus,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!(
                "`{}`",
                match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Semi => ";",
                    Tok::Comma => ",",
                    Tok::Tilde => "~",
                    Tok::Amp => "&",
                    Tok::Bar => "|",
                    Tok::Arrow => "->",
                    Tok::Le => "<=",
                    Tok::Lt => "<",
                    Tok::Eq => "=",
                    Tok::Minus => "-",
                    Tok::Ident(_) | Tok::Eof => unreachable!(),
                }
            ),
        }
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Words that cannot name a predicate or player.
pub(crate) const KEYWORDS: &[&str] = &[
    "true", "false", "dia", "dep", "pa", "paY", "na", "ca1", "ca2", "ca", "D", "DD",
];

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if is_ident_char(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                s.push(c);
                bump(&mut chars);
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '=' => Tok::Eq,
                '-' if chars.peek() == Some(&'>') => {
                    bump(&mut chars);
                    Tok::Arrow
                }
                '-' => Tok::Minus,
                '<' if chars.peek() == Some(&'=') => {
                    bump(&mut chars);
                    Tok::Le
                }
                '<' => Tok::Lt,
                other => {
                    return Err(ParseError {
                        line: l,
                        col: k,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push((tok, l, k));
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (_, line, col) = self.toks[self.pos];
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            )))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.next();
                Ok(s)
            }
            other => Err(self.error(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn group(&mut self) -> Result<GroupExpr, ParseError> {
        let complement = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        self.expect(Tok::LBrace)?;
        let mut members = Vec::new();
        if *self.peek() != Tok::RBrace {
            loop {
                members.push(self.name("a player")?);
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(GroupExpr {
            complement,
            members,
        })
    }

    /// Parses `=g; <=g; <g]`, the opening bracket already consumed.
    fn query(&mut self) -> Result<QueryExpr, ParseError> {
        self.expect(Tok::Eq)?;
        let eq = self.group()?;
        self.expect(Tok::Semi)?;
        self.expect(Tok::Le)?;
        let weak = self.group()?;
        self.expect(Tok::Semi)?;
        self.expect(Tok::Lt)?;
        let strict = self.group()?;
        self.expect(Tok::RBracket)?;
        Ok(QueryExpr { eq, weak, strict })
    }

    fn formula(&mut self) -> Result<MacroFormula, ParseError> {
        use MacroFormula as M;
        match self.peek().clone() {
            Tok::Tilde => {
                self.next();
                Ok(M::not(self.formula()?))
            }
            Tok::LBracket => {
                self.next();
                let q = self.query()?;
                Ok(M::Modal(q, Box::new(self.formula()?)))
            }
            Tok::LParen => self.parenthesized(),
            Tok::Ident(word) => {
                let head_bracket = *self.peek_at(1) == Tok::LBracket;
                let head_paren = *self.peek_at(1) == Tok::LParen;
                match word.as_str() {
                    "true" => {
                        self.next();
                        Ok(M::True)
                    }
                    "false" => {
                        self.next();
                        Ok(M::False)
                    }
                    "dia" if head_bracket => {
                        self.next();
                        self.next();
                        let q = self.query()?;
                        Ok(M::Dual(q, Box::new(self.formula()?)))
                    }
                    "dep" if head_bracket => {
                        self.next();
                        self.next();
                        let q = self.query()?;
                        if matches!(self.peek(), Tok::LBrace | Tok::Minus) {
                            Ok(M::DepAll(q, self.group()?))
                        } else {
                            Ok(M::Dep(q, self.name("a player")?))
                        }
                    }
                    "pa" | "na" | "ca1" | "ca2" | "ca" | "paY" | "D" | "DD" if head_paren => {
                        self.next();
                        self.next();
                        let g = self.group()?;
                        let out = match word.as_str() {
                            "pa" => M::Pa(g),
                            "na" => M::Na(g),
                            "ca1" => M::Ca1(g),
                            "ca2" => M::Ca2(g),
                            "ca" => M::Ca(g),
                            "paY" => {
                                self.expect(Tok::Semi)?;
                                M::PaY(g, self.group()?)
                            }
                            "D" => {
                                self.expect(Tok::Semi)?;
                                M::D(g, self.name("a player")?)
                            }
                            _ => {
                                self.expect(Tok::RParen)?;
                                return Ok(M::DD(g, Box::new(self.formula()?)));
                            }
                        };
                        self.expect(Tok::RParen)?;
                        Ok(out)
                    }
                    _ if head_paren && !KEYWORDS.contains(&word.as_str()) => {
                        self.next();
                        self.next();
                        let mut args = Vec::new();
                        if *self.peek() != Tok::RParen {
                            loop {
                                args.push(self.name("a player")?);
                                if *self.peek() == Tok::Comma {
                                    self.next();
                                } else {
                                    break;
                                }
                            }
                        }
                        self.expect(Tok::RParen)?;
                        Ok(M::Atom { pred: word, args })
                    }
                    _ => Err(self.error(format!("expected a formula, found `{word}`"))),
                }
            }
            other => Err(self.error(format!("expected a formula, found {}", other.describe()))),
        }
    }

    fn parenthesized(&mut self) -> Result<MacroFormula, ParseError> {
        self.expect(Tok::LParen)?;
        let mut acc = self.formula()?;
        let op = self.peek().clone();
        match op {
            Tok::RParen => {}
            Tok::Amp | Tok::Bar => {
                while *self.peek() == op {
                    self.next();
                    let rhs = self.formula()?;
                    acc = if op == Tok::Amp {
                        MacroFormula::and(acc, rhs)
                    } else {
                        MacroFormula::or(acc, rhs)
                    };
                }
            }
            Tok::Arrow => {
                self.next();
                acc = MacroFormula::implies(acc, self.formula()?);
            }
            other => {
                return Err(self.error(format!(
                    "expected `&`, `|`, `->` or `)`, found {}",
                    other.describe()
                )))
            }
        }
        if *self.peek() != Tok::RParen && matches!(self.peek(), Tok::Amp | Tok::Bar | Tok::Arrow) {
            return Err(self.error("mixed connectives need explicit parentheses"));
        }
        self.expect(Tok::RParen)?;
        Ok(acc)
    }
}

/// Parses a surface formula. Arity and identifier checks happen at bind time.
pub fn parse(text: &str) -> Result<MacroFormula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {} after formula", p.peek().describe())));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use MacroFormula as M;

    fn lit(xs: &[&str]) -> GroupExpr {
        GroupExpr::literal(xs.iter().copied())
    }

    #[test]
    fn modality_with_empty_groups() {
        let f = parse("[={E}; <={}; <{A}] false").unwrap();
        assert_eq!(
            f,
            M::Modal(
                QueryExpr {
                    eq: lit(&["E"]),
                    weak: lit(&[]),
                    strict: lit(&["A"]),
                },
                Box::new(M::False)
            )
        );
    }

    #[test]
    fn macro_heads() {
        assert_eq!(parse("pa({1,2})").unwrap(), M::Pa(lit(&["1", "2"])));
        assert_eq!(
            parse("paY(-{1};{2})").unwrap(),
            M::PaY(GroupExpr::complement_of(["1"]), lit(&["2"]))
        );
        assert_eq!(
            parse("DD({x}) P(y)").unwrap(),
            M::DD(
                lit(&["x"]),
                Box::new(M::Atom {
                    pred: "P".into(),
                    args: vec!["y".into()]
                })
            )
        );
        assert_eq!(parse("D({x}; y)").unwrap(), M::D(lit(&["x"]), "y".into()));
    }

    #[test]
    fn dependence_atoms() {
        let q = QueryExpr {
            eq: lit(&["x"]),
            ..Default::default()
        };
        assert_eq!(parse("dep[={x}; <={}; <{}] y").unwrap(), M::Dep(q.clone(), "y".into()));
        assert_eq!(
            parse("dep[={x}; <={}; <{}] {y,z}").unwrap(),
            M::DepAll(q, lit(&["y", "z"]))
        );
    }

    #[test]
    fn chains_associate_left() {
        let f = parse("(P() & Q() & R())").unwrap();
        let atom = |p: &str| M::Atom {
            pred: p.into(),
            args: vec![],
        };
        assert_eq!(f, M::and(M::and(atom("P"), atom("Q")), atom("R")));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("(P(x) &\n  )").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse("(P(x) & Q(x) | R(x))").unwrap_err();
        assert!(e.message.contains("mixed"), "{e}");
        assert!(parse("(P(x) -> Q(x) -> R(x))").is_err());
        assert!(parse("P(x) Q(x)").is_err());
        assert!(parse("[={x}; <{}; <{}] true").is_err());
        assert!(parse("pa({true})").is_err());
        assert!(parse("#").is_err());
    }
}
