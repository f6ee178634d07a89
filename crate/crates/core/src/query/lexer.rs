use super::QueryError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Var(String),
    IriRef(String),
    PName { prefix: String, local: String },
    /// Bare word: keyword, `a`, boolean or function name.
    Word(String),
    Str(String),
    LangTag(String),
    /// Numeric literal as written.
    Integer(String),
    Decimal(String),
    Double(String),
    DoubleCaret,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Dot,
    Comma,
    Semicolon,
    Star,
    Slash,
    Plus,
    Minus,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    And,
    Or,
    Bang,
    Backtick,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Var(v) => format!("?{v}"),
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::Word(w) => w.clone(),
            Tok::Str(s) => format!("{s:?}"),
            Tok::LangTag(l) => format!("@{l}"),
            Tok::Integer(n) | Tok::Decimal(n) | Tok::Double(n) => n.clone(),
            Tok::Eof => "end of input".into(),
            other => {
                let s = match other {
                    Tok::DoubleCaret => "^^",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::Dot => ".",
                    Tok::Comma => ",",
                    Tok::Semicolon => ";",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Eq => "=",
                    Tok::Ne => "!=",
                    Tok::Lt => "<",
                    Tok::Gt => ">",
                    Tok::Le => "<=",
                    Tok::Ge => ">=",
                    Tok::And => "&&",
                    Tok::Or => "||",
                    Tok::Bang => "!",
                    _ => "`",
                };
                format!("'{s}'")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.')
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> QueryError {
        QueryError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    /// `<...>` if the text from here forms an IRI reference, else `None`.
    fn try_iri(&self) -> Option<(String, usize)> {
        let rest = &self.src[self.pos + 1..];
        for (i, c) in rest.char_indices() {
            match c {
                '>' => return Some((rest[..i].to_owned(), i + 2)),
                c if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') => return None,
                _ => {}
            }
        }
        None
    }

    /// Name characters, leaving any trailing dots unconsumed.
    fn name(&mut self) -> String {
        let rest = &self.src[self.pos..];
        let end = rest.find(|c: char| !is_name_char(c)).unwrap_or(rest.len());
        let text = rest[..end].trim_end_matches('.').to_owned();
        for _ in text.chars() {
            self.bump();
        }
        text
    }

    fn string(&mut self, quote: char, line: usize, column: usize) -> Result<String, QueryError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(self.err(line, column, "unterminated string")),
                Some(c) if c == quote => return Ok(out),
                Some('\\') => {
                    let esc = self.bump().ok_or_else(|| self.err(line, column, "unterminated string"))?;
                    match esc {
                        't' => out.push('\t'),
                        'n' => out.push('\n'),
                        'r' => out.push('\r'),
                        'b' => out.push('\u{8}'),
                        'f' => out.push('\u{c}'),
                        '"' | '\'' | '\\' => out.push(esc),
                        'u' | 'U' => {
                            let n = if esc == 'u' { 4 } else { 8 };
                            let hex: String = (0..n).filter_map(|_| self.bump()).collect();
                            let c = u32::from_str_radix(&hex, 16)
                                .ok()
                                .and_then(char::from_u32)
                                .ok_or_else(|| self.err(self.line, self.column, format!("bad escape \\{esc}{hex}")))?;
                            out.push(c);
                        }
                        other => return Err(self.err(self.line, self.column, format!("bad escape \\{other}"))),
                    }
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn number(&mut self) -> Tok {
        let mut text = self.take_while(|c| c.is_ascii_digit());
        let mut kind = 0; // 0 integer, 1 decimal, 2 double
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            text.push('.');
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
            kind = 1;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                text.push(self.bump().unwrap_or('e'));
                if sign {
                    text.push(self.bump().unwrap_or('+'));
                }
                text.push_str(&self.take_while(|c| c.is_ascii_digit()));
                kind = 2;
            }
        }
        match kind {
            0 => Tok::Integer(text),
            1 => Tok::Decimal(text),
            _ => Tok::Double(text),
        }
    }

    fn next(&mut self) -> Result<Token, QueryError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let tok = |tok| Ok(Token { tok, line, column });
        let Some(c) = self.peek() else {
            return tok(Tok::Eof);
        };
        let two = |l: &mut Self, t: Tok| {
            l.bump();
            l.bump();
            t
        };
        let one = |l: &mut Self, t: Tok| {
            l.bump();
            t
        };
        let t = match c {
            '?' | '$' => {
                self.bump();
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(self.err(line, column, "empty variable name"));
                }
                Tok::Var(name)
            }
            '<' => {
                if let Some((iri, len)) = self.try_iri() {
                    for _ in 0..self.src[self.pos..self.pos + len].chars().count() {
                        self.bump();
                    }
                    Tok::IriRef(iri)
                } else if self.peek_at(1) == Some('=') {
                    two(self, Tok::Le)
                } else {
                    one(self, Tok::Lt)
                }
            }
            '>' if self.peek_at(1) == Some('=') => two(self, Tok::Ge),
            '>' => one(self, Tok::Gt),
            '!' if self.peek_at(1) == Some('=') => two(self, Tok::Ne),
            '!' => one(self, Tok::Bang),
            '=' => one(self, Tok::Eq),
            '&' if self.peek_at(1) == Some('&') => two(self, Tok::And),
            '|' if self.peek_at(1) == Some('|') => two(self, Tok::Or),
            '^' if self.peek_at(1) == Some('^') => two(self, Tok::DoubleCaret),
            '{' => one(self, Tok::LBrace),
            '}' => one(self, Tok::RBrace),
            '(' => one(self, Tok::LParen),
            ')' => one(self, Tok::RParen),
            '.' if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => self.number(),
            '.' => one(self, Tok::Dot),
            ',' => one(self, Tok::Comma),
            ';' => one(self, Tok::Semicolon),
            '*' => one(self, Tok::Star),
            '/' => one(self, Tok::Slash),
            '+' => one(self, Tok::Plus),
            '-' => one(self, Tok::Minus),
            '`' => one(self, Tok::Backtick),
            '"' | '\'' => Tok::Str(self.string(c, line, column)?),
            '@' => {
                self.bump();
                let tag = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if tag.is_empty() {
                    return Err(self.err(line, column, "empty language tag"));
                }
                Tok::LangTag(tag)
            }
            c if c.is_ascii_digit() => self.number(),
            ':' => {
                self.bump();
                Tok::PName {
                    prefix: String::new(),
                    local: self.name(),
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let word = self.name();
                if self.peek() == Some(':') {
                    if !crate::rdf::is_valid_prefix(&word) {
                        return Err(self.err(line, column, format!("invalid prefix {word:?}")));
                    }
                    self.bump();
                    let local = self.name();
                    Tok::PName { prefix: word, local }
                } else if word.contains('.') {
                    return Err(self.err(line, column, format!("unexpected {word:?}")));
                } else {
                    Tok::Word(word)
                }
            }
            other => return Err(self.err(line, column, format!("unexpected character {other:?}"))),
        };
        tok(t)
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, QueryError> {
    let mut lexer = Lexer {
        src,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let t = lexer.next()?;
        let done = t.tok == Tok::Eof;
        out.push(t);
        if done {
            return Ok(out);
        }
    }
}
