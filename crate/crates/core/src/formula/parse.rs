//! Concrete syntax for formulas.
//!
//! ```text
//! formula := or ( "->" formula )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | ("forall" | "exists") ident "." formula | atom
//! atom    := "true" | "false" | "(" formula ")"
//!          | "R" "(" ident "," ident ")" | ident "=" ident
//! ```
//!
//! Keywords are case-sensitive and cannot be used as variables; `R`
//! followed by `(` is the edge relation, anywhere else it is an ordinary
//! variable name.

use thiserror::Error;

use super::Formula;

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Tilde,
    Amp,
    Pipe,
    Arrow,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::True => "`true`".to_string(),
            Token::False => "`false`".to_string(),
            Token::Forall => "`forall`".to_string(),
            Token::Exists => "`exists`".to_string(),
            Token::LParen => "`(`".to_string(),
            Token::RParen => "`)`".to_string(),
            Token::Comma => "`,`".to_string(),
            Token::Dot => "`.`".to_string(),
            Token::Eq => "`=`".to_string(),
            Token::Tilde => "`~`".to_string(),
            Token::Amp => "`&`".to_string(),
            Token::Pipe => "`|`".to_string(),
            Token::Arrow => "`->`".to_string(),
        }
    }
}

struct Positioned {
    token: Token,
    line: usize,
    column: usize,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.pos];
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        c
    }
}

fn lex(input: &str) -> Result<Vec<Positioned>, ParseError> {
    let mut lx = Lexer {
        chars: input.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = lx.peek() {
        let (tok_line, tok_column) = (lx.line, lx.column);
        if c.is_whitespace() {
            lx.bump();
            continue;
        }
        let token = match c {
            '(' => {
                lx.bump();
                Token::LParen
            }
            ')' => {
                lx.bump();
                Token::RParen
            }
            ',' => {
                lx.bump();
                Token::Comma
            }
            '.' => {
                lx.bump();
                Token::Dot
            }
            '=' => {
                lx.bump();
                Token::Eq
            }
            '~' => {
                lx.bump();
                Token::Tilde
            }
            '&' => {
                lx.bump();
                Token::Amp
            }
            '|' => {
                lx.bump();
                Token::Pipe
            }
            '-' => {
                lx.bump();
                if lx.peek() == Some('>') {
                    lx.bump();
                    Token::Arrow
                } else {
                    return Err(ParseError {
                        line: tok_line,
                        column: tok_column,
                        message: "expected `>` after `-`".to_string(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(c) = lx.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(lx.bump());
                    } else {
                        break;
                    }
                }
                match name.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    "forall" => Token::Forall,
                    "exists" => Token::Exists,
                    _ => Token::Ident(name),
                }
            }
            other => {
                return Err(ParseError {
                    line: tok_line,
                    column: tok_column,
                    message: format!("unexpected character `{other}`"),
                });
            }
        };
        out.push(Positioned {
            token,
            line: tok_line,
            column: tok_column,
        });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Positioned>,
    pos: usize,
    end_line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|p| &p.token)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|p| (p.line, p.column))
            .unwrap_or((self.end_line, self.end_column))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn advance(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).map(|p| p.token.clone());
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, token: Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == token => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!(
                "expected {}, found {}",
                token.describe(),
                t.describe()
            ))),
            None => Err(self.error(format!("expected {}, found end of input", token.describe()))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            Some(t) => Err(self.error(format!("expected {what}, found {}", t.describe()))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.and()?];
        while self.peek() == Some(&Token::Pipe) {
            self.pos += 1;
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::Or(items)
        })
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Token::Amp) {
            self.pos += 1;
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::And(items)
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Tilde) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(Token::Forall) | Some(Token::Exists) => {
                let universal = self.peek() == Some(&Token::Forall);
                self.pos += 1;
                let name = self.ident("a variable after the quantifier")?;
                self.expect(Token::Dot)?;
                let body = self.formula()?;
                Ok(if universal {
                    Formula::Forall(name, Box::new(body))
                } else {
                    Formula::Exists(name, Box::new(body))
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.advance() {
            Some(Token::True) => Ok(Formula::True),
            Some(Token::False) => Ok(Formula::False),
            Some(Token::LParen) => {
                let inner = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                if name == "R" && self.peek() == Some(&Token::LParen) {
                    self.pos += 1;
                    let a = self.ident("a variable")?;
                    self.expect(Token::Comma)?;
                    let b = self.ident("a variable")?;
                    self.expect(Token::RParen)?;
                    return Ok(Formula::Edge(a, b));
                }
                match self.peek() {
                    Some(Token::Eq) => {
                        self.pos += 1;
                        let b = self.ident("a variable")?;
                        Ok(Formula::Equals(name, b))
                    }
                    _ => Err(self.error("expected `=` after a variable")),
                }
            }
            Some(t) => {
                self.pos -= 1;
                Err(self.error(format!("expected a formula, found {}", t.describe())))
            }
            None => Err(self.error("expected a formula, found end of input")),
        }
    }
}

/// Parses the concrete syntax described in the module docs.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let tokens = lex(input)?;
    let (end_line, end_column) = input
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_line,
        end_column,
    };
    let formula = parser.formula()?;
    if let Some(extra) = parser.peek() {
        let described = extra.describe();
        return Err(parser.error(format!("unexpected {described} after the formula")));
    }
    Ok(formula)
}
