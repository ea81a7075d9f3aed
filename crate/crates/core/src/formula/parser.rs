//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Binary connectives from loosest to tightest: `<->`, `->`, `|`, `&`.
//! `<->` and `->` associate to the right, `|` and `&` to the left. Unary
//! operators (`!`/`~`, `D`, `Nb`, `[]`) bind tighter than any binary one.

use super::{Formula, FormulaError, Mode};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Not,
    Delta,
    Nabla,
    Box,
    And,
    Or,
    Implies,
    Iff,
    Top,
    Bot,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
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

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn error(pos: Pos, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char, start: Pos, what: &str) -> Result<(), FormulaError> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            _ => Err(Self::error(start, format!("expected `{what}`"))),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, FormulaError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let start = self.pos();
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, start));
                return Ok(out);
            };
            let tok = match c {
                '!' | '~' => {
                    self.bump();
                    Tok::Not
                }
                '&' => {
                    self.bump();
                    Tok::And
                }
                '|' => {
                    self.bump();
                    Tok::Or
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '[' => {
                    self.bump();
                    self.expect(']', start, "[]")?;
                    Tok::Box
                }
                '-' => {
                    self.bump();
                    self.expect('>', start, "->")?;
                    Tok::Implies
                }
                '<' => {
                    self.bump();
                    self.expect('-', start, "<->")?;
                    self.expect('>', start, "<->")?;
                    Tok::Iff
                }
                c if c.is_ascii_alphabetic() => {
                    let mut word = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            word.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    match word.as_str() {
                        "D" => Tok::Delta,
                        "Nb" => Tok::Nabla,
                        "top" => Tok::Top,
                        "bot" => Tok::Bot,
                        w if w.starts_with(|c: char| c.is_ascii_lowercase()) => Tok::Atom(word),
                        _ => return Err(Self::error(start, format!("unknown operator `{word}`"))),
                    }
                }
                other => return Err(Self::error(start, format!("unexpected character `{other}`"))),
            };
            out.push((tok, start));
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, Pos)>,
    at: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn advance(&mut self) -> Tok {
        let tok = self.tokens[self.at].0.clone();
        if tok != Tok::Eof {
            self.at += 1;
        }
        tok
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        Lexer::error(self.pos(), message)
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.implication()?;
        if *self.peek() == Tok::Iff {
            self.advance();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.advance();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.advance();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.advance();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        let pos = self.pos();
        match self.peek() {
            Tok::Not => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Delta => {
                self.advance();
                Ok(Formula::delta(self.unary()?))
            }
            Tok::Nabla => {
                self.advance();
                Ok(Formula::nabla(self.unary()?))
            }
            Tok::Box => {
                if self.mode == Mode::Core {
                    return Err(FormulaError::BoxNotAllowed {
                        line: pos.line,
                        column: pos.column,
                    });
                }
                self.advance();
                Ok(Formula::nec(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, FormulaError> {
        match self.advance() {
            Tok::Atom(name) => Ok(Formula::Atom(name)),
            Tok::Top => Ok(Formula::top()),
            Tok::Bot => Ok(Formula::bot()),
            Tok::LParen => {
                let inner = self.iff()?;
                if self.advance() != Tok::RParen {
                    self.at = self.at.saturating_sub(1);
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Tok::Eof => Err(self.error("unexpected end of input")),
            other => {
                self.at -= 1;
                Err(self.error(format!("unexpected token {other:?}")))
            }
        }
    }
}

/// Parses `text` and desugars it into core nodes.
pub fn parse(text: &str, mode: Mode) -> Result<Formula, FormulaError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser {
        tokens,
        at: 0,
        mode,
    };
    let formula = parser.iff()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error("trailing input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn delta_and_negation() {
        let f = parse("D p & !q", Mode::Core).unwrap();
        assert_eq!(f, Formula::and(Formula::delta(p()), Formula::not(q())));
    }

    #[test]
    fn nabla_desugars() {
        assert_eq!(
            parse("Nb p", Mode::Core).unwrap(),
            Formula::not(Formula::delta(p()))
        );
    }

    #[test]
    fn box_rejected_in_core_mode() {
        assert_eq!(
            parse("[] p", Mode::Core),
            Err(FormulaError::BoxNotAllowed { line: 1, column: 1 })
        );
        assert_eq!(parse("[] p", Mode::Extended).unwrap(), Formula::nec(p()));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse("p -> q -> p", Mode::Core).unwrap();
        assert_eq!(f, Formula::implies(p(), Formula::implies(q(), p())));
        let g = parse("p | q & p <-> q", Mode::Core).unwrap();
        assert_eq!(
            g,
            Formula::iff(Formula::or(p(), Formula::and(q(), p())), q())
        );
        let h = parse("~D p | q", Mode::Core).unwrap();
        assert_eq!(h, Formula::or(Formula::not(Formula::delta(p())), q()));
    }

    #[test]
    fn constants() {
        assert_eq!(parse("top", Mode::Core).unwrap(), Formula::top());
        assert_eq!(parse("bot", Mode::Core).unwrap(), Formula::bot());
        assert_eq!(parse("!top", Mode::Core).unwrap(), Formula::bot());
    }

    #[test]
    fn error_positions() {
        match parse("p &\n  (q | )", Mode::Core) {
            Err(FormulaError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("_t", Mode::Core),
            Err(FormulaError::Syntax { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            parse("p q", Mode::Core),
            Err(FormulaError::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            parse("Dp", Mode::Core),
            Err(FormulaError::Syntax { .. })
        ));
        assert!(matches!(parse("(p", Mode::Core), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse("p - q", Mode::Core), Err(FormulaError::Syntax { .. })));
    }
}
