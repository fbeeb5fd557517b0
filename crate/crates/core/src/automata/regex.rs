use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::{nfa::Nfa, Dfa};
use crate::{Error, Result};

/// Regular expression over single-character symbols.
///
/// Concrete syntax, from loosest to tightest binding: `R+S` is union,
/// juxtaposition is concatenation, `R*` is Kleene star. `\0` (or `∅`) denotes
/// the empty language and `\e` (or `ε`) the empty string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Symbol(char),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    /// The literal string `word` (or ε when empty).
    pub fn word(word: &str) -> Regex {
        word.chars()
            .map(Regex::Symbol)
            .reduce(Regex::concat)
            .unwrap_or(Regex::Epsilon)
    }

    /// Union of the given expressions (∅ when there are none).
    pub fn any_of(items: impl IntoIterator<Item = Regex>) -> Regex {
        items
            .into_iter()
            .reduce(Regex::union)
            .unwrap_or(Regex::Empty)
    }

    pub fn symbols(&self, out: &mut Vec<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Symbol(c) => out.push(*c),
            Regex::Concat(a, b) | Regex::Union(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            Regex::Star(a) => a.symbols(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Regex::Empty => f.write_str("\\0"),
            Regex::Epsilon => f.write_str("\\e"),
            Regex::Symbol(c) => write!(f, "{c}"),
            Regex::Concat(a, b) => {
                a.fmt_at(f, 1)?;
                b.fmt_at(f, 2)
            }
            Regex::Union(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str("+")?;
                b.fmt_at(f, 1)
            }
            Regex::Star(a) => {
                a.fmt_at(f, 3)?;
                f.write_str("*")
            }
        }
    }
}

/// Prints the ASCII concrete syntax accepted by [`regex_parse`].
impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Empty,
    Epsilon,
    Symbol(char),
    Plus,
    Star,
    Open,
    Close,
}

fn tokenize(text: &str, alphabet: &[char]) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((pos, c)) = chars.next() {
        let token = match c {
            '+' => Token::Plus,
            '*' => Token::Star,
            '(' => Token::Open,
            ')' => Token::Close,
            '∅' => Token::Empty,
            'ε' => Token::Epsilon,
            '\\' => match chars.next() {
                Some((_, '0')) => Token::Empty,
                Some((_, 'e')) => Token::Epsilon,
                Some((p, other)) => {
                    return Err(Error::Syntax {
                        pos: p,
                        msg: format!("unknown escape \\{other}"),
                    })
                }
                None => {
                    return Err(Error::Syntax {
                        pos: pos + 1,
                        msg: "dangling escape".into(),
                    })
                }
            },
            c if alphabet.contains(&c) => Token::Symbol(c),
            c => return Err(Error::SymbolNotInAlphabet { symbol: c, pos }),
        };
        tokens.push((pos, token));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.next).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |t| t.0)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while self.peek() == Some(Token::Plus) {
            self.next += 1;
            r = Regex::union(r, self.concat()?);
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut r = self.starred()?;
        while matches!(
            self.peek(),
            Some(Token::Symbol(_) | Token::Empty | Token::Epsilon | Token::Open)
        ) {
            r = Regex::concat(r, self.starred()?);
        }
        Ok(r)
    }

    fn starred(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some(Token::Star) {
            self.next += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let pos = self.pos();
        let token = self.peek();
        self.next += 1;
        match token {
            Some(Token::Symbol(c)) => Ok(Regex::Symbol(c)),
            Some(Token::Empty) => Ok(Regex::Empty),
            Some(Token::Epsilon) => Ok(Regex::Epsilon),
            Some(Token::Open) => {
                let r = self.union()?;
                if self.peek() != Some(Token::Close) {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    });
                }
                self.next += 1;
                Ok(r)
            }
            Some(t) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses the ASCII concrete syntax over `alphabet`.
///
/// Error positions count characters from zero.
pub fn regex_parse(text: &str, alphabet: &[char]) -> Result<Regex> {
    let tokens = tokenize(text, alphabet)?;
    let mut parser = Parser {
        tokens,
        next: 0,
        end: text.chars().count(),
    };
    let r = parser.union()?;
    if parser.next < parser.tokens.len() {
        return Err(Error::Syntax {
            pos: parser.pos(),
            msg: "unexpected ')'".into(),
        });
    }
    Ok(r)
}

/// Minimal DFA over `alphabet` recognizing the language of `regex`.
pub fn regex_to_dfa(regex: &Regex, alphabet: &[char]) -> Result<Dfa> {
    let mut used = Vec::new();
    regex.symbols(&mut used);
    if let Some(&c) = used.iter().find(|c| !alphabet.contains(c)) {
        return Err(Error::AlphabetMismatch(format!(
            "symbol {c:?} is not in the alphabet"
        )));
    }
    let nfa = Nfa::thompson(regex);
    Ok(nfa.determinize(alphabet)?.minimize())
}
