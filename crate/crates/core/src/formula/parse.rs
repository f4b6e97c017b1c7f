use super::{Formula, Interner};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    Not,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::False => "`false`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, message: String) -> ParseError {
        ParseError {
            line,
            column,
            message,
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(c) = self.bump() else {
                out.push((Tok::End, line, column));
                return Ok(out);
            };
            let tok = match c {
                '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '#' => Tok::False,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '-' => {
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        Tok::Imp
                    } else {
                        return Err(self.error(line, column, "expected `->`".into()));
                    }
                }
                'a'..='z' => {
                    let mut name = String::from(c);
                    while let Some(&d) = self.chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            name.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    if name == "false" {
                        Tok::False
                    } else {
                        Tok::Ident(name)
                    }
                }
                other => {
                    return Err(self.error(line, column, format!("unexpected character `{other}`")))
                }
            };
            out.push((tok, line, column));
        }
    }
}

struct Parser<'i> {
    interner: &'i mut Interner,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let (tok, line, column) = &self.toks[self.pos];
        ParseError {
            line: *line,
            column: *column,
            message: format!("expected {wanted}, found {}", tok.describe()),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Imp {
            self.advance();
            let right = self.implication()?;
            return Ok(self.interner.imp(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.advance();
            let right = self.conjunction()?;
            left = self.interner.or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.advance();
            let right = self.unary()?;
            left = self.interner.and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.advance();
                let inner = self.unary()?;
                Ok(self.interner.not(inner))
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(self.interner.var(&name))
            }
            Tok::False => {
                self.advance();
                Ok(self.interner.falsum())
            }
            Tok::LParen => {
                self.advance();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.advance();
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

pub(super) fn parse(interner: &mut Interner, text: &str) -> Result<Formula, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut parser = Parser {
        interner,
        toks,
        pos: 0,
    };
    let f = parser.implication()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("end of input"));
    }
    Ok(f)
}
