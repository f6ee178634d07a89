//! Tokenizer shared by the N-Triples and Turtle-subset readers.

use super::RdfError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LiteralSuffix {
    None,
    Lang(String),
    Datatype(Box<Tok>),
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    IriRef(String),
    PName { prefix: String, local: String },
    Blank(String),
    Literal { lexical: String, suffix: LiteralSuffix },
    Dot,
    AtPrefix,
    PrefixKeyword,
    A,
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub text: String,
}

pub(crate) struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

fn syntax(line: usize, token: &str, message: impl Into<String>) -> RdfError {
    RdfError::Syntax {
        line,
        token: token.chars().take(40).collect(),
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn read_hex(&mut self, n: usize, line: usize) -> Result<char, RdfError> {
        let digits: String = self.rest().chars().take(n).collect();
        if digits.len() != n {
            return Err(syntax(line, &digits, "truncated unicode escape"));
        }
        for _ in 0..n {
            self.bump();
        }
        u32::from_str_radix(&digits, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| syntax(line, &digits, "invalid unicode escape"))
    }

    fn read_iri(&mut self, line: usize) -> Result<String, RdfError> {
        let start = self.pos;
        self.bump(); // '<'
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('>') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('u') => out.push(self.read_hex(4, line)?),
                    Some('U') => out.push(self.read_hex(8, line)?),
                    _ => return Err(syntax(line, &self.src[start..self.pos], "bad escape in IRI")),
                },
                Some(c) if c == '\n' || c == ' ' || c == '<' || c == '"' => {
                    return Err(syntax(line, &self.src[start..self.pos], "illegal character in IRI"))
                }
                Some(c) => out.push(c),
                None => return Err(syntax(line, &self.src[start..], "unterminated IRI")),
            }
        }
    }

    fn read_string(&mut self, line: usize) -> Result<String, RdfError> {
        let start = self.pos;
        self.bump(); // '"'
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('t') => out.push('\t'),
                    Some('n') => out.push('\n'),
                    Some('r') => out.push('\r'),
                    Some('b') => out.push('\u{8}'),
                    Some('f') => out.push('\u{c}'),
                    Some('"') => out.push('"'),
                    Some('\'') => out.push('\''),
                    Some('\\') => out.push('\\'),
                    Some('u') => out.push(self.read_hex(4, line)?),
                    Some('U') => out.push(self.read_hex(8, line)?),
                    _ => {
                        return Err(syntax(
                            line,
                            &self.src[start..self.pos],
                            "bad escape in string",
                        ))
                    }
                },
                Some('\n') | None => {
                    return Err(syntax(line, &self.src[start..self.pos], "unterminated string"))
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn read_word(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%') {
                self.bump();
            } else {
                break;
            }
        }
        // a trailing '.' terminates the statement rather than the name
        while self.src[start..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        &self.src[start..self.pos]
    }

    fn read_pname(&mut self, line: usize) -> Result<Tok, RdfError> {
        let word = self.read_word();
        match word.split_once(':') {
            Some((prefix, local)) => Ok(Tok::PName {
                prefix: prefix.to_owned(),
                local: local.to_owned(),
            }),
            None => Err(syntax(line, word, "expected a prefixed name")),
        }
    }

    pub fn next_token(&mut self) -> Result<Option<Spanned>, RdfError> {
        self.skip_trivia();
        let line = self.line;
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = match c {
            '<' => Tok::IriRef(self.read_iri(line)?),
            '"' => {
                let lexical = self.read_string(line)?;
                let suffix = if self.peek() == Some('@') {
                    self.bump();
                    let tag_start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '-')
                    {
                        self.bump();
                    }
                    let tag = &self.src[tag_start..self.pos];
                    if tag.is_empty() {
                        return Err(syntax(line, &self.src[start..self.pos], "empty language tag"));
                    }
                    LiteralSuffix::Lang(tag.to_owned())
                } else if self.rest().starts_with("^^") {
                    self.bump();
                    self.bump();
                    let dt = match self.peek() {
                        Some('<') => Tok::IriRef(self.read_iri(line)?),
                        Some(c) if c.is_alphabetic() => self.read_pname(line)?,
                        _ => {
                            return Err(syntax(
                                line,
                                &self.src[start..self.pos],
                                "expected datatype after ^^",
                            ))
                        }
                    };
                    LiteralSuffix::Datatype(Box::new(dt))
                } else {
                    LiteralSuffix::None
                };
                Tok::Literal { lexical, suffix }
            }
            '_' if self.rest().starts_with("_:") => {
                self.bump();
                self.bump();
                let word = self.read_word();
                if word.is_empty() || word.contains(':') {
                    return Err(syntax(line, &self.src[start..self.pos], "bad blank node label"));
                }
                Tok::Blank(word.to_owned())
            }
            '.' => {
                self.bump();
                Tok::Dot
            }
            '@' => {
                self.bump();
                let word = self.read_word();
                if word == "prefix" {
                    Tok::AtPrefix
                } else {
                    return Err(syntax(line, &self.src[start..self.pos], "unsupported directive"));
                }
            }
            c if c.is_alphanumeric() || c == ':' => {
                let word = self.read_word();
                if word == "a" {
                    Tok::A
                } else if word.eq_ignore_ascii_case("PREFIX") {
                    Tok::PrefixKeyword
                } else if let Some((prefix, local)) = word.split_once(':') {
                    Tok::PName {
                        prefix: prefix.to_owned(),
                        local: local.to_owned(),
                    }
                } else {
                    return Err(syntax(line, word, "unexpected bare word"));
                }
            }
            _ => {
                let text: String = self.rest().chars().take(1).collect();
                return Err(syntax(line, &text, "unexpected character"));
            }
        };
        Ok(Some(Spanned {
            tok,
            line,
            text: self.src[start..self.pos].to_owned(),
        }))
    }
}
