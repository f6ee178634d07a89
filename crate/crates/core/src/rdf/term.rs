use std::fmt;
use std::sync::Arc;

use super::vocab::{RDF_LANG_STRING, XSD_DECIMAL, XSD_DOUBLE, XSD_GYEAR, XSD_INTEGER, XSD_STRING};
use super::RdfError;

/// An absolute IRI. Equality is exact string equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, RdfError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(RdfError::InvalidIri {
                value: value.to_owned(),
                reason: "empty",
            });
        }
        if value
            .chars()
            .any(|c| c.is_whitespace() || c == '<' || c == '>' || c == '"')
        {
            return Err(RdfError::InvalidIri {
                value: value.to_owned(),
                reason: "contains whitespace, quote or angle bracket",
            });
        }
        if !value.contains(':') {
            return Err(RdfError::InvalidIri {
                value: value.to_owned(),
                reason: "not absolute (no scheme)",
            });
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

/// Numeric value carried by a literal whose datatype has a numeric reading.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Numeric {
    Integer(i64),
    Decimal(f64),
    Double(f64),
}

impl Numeric {
    pub fn as_f64(self) -> f64 {
        match self {
            Numeric::Integer(i) => i as f64,
            Numeric::Decimal(d) | Numeric::Double(d) => d,
        }
    }
}

/// Canonical lexical form used for computed `xsd:decimal` values.
pub fn format_decimal(value: f64) -> String {
    if value == 0.0 {
        return "0.0".to_owned();
    }
    let text = format!("{value}");
    if text.contains('.') || text.contains('e') || text.contains("inf") || text.contains("NaN") {
        text
    } else {
        format!("{text}.0")
    }
}

/// An RDF literal: lexical form, datatype IRI and optional language tag.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    language: Option<Arc<str>>,
}

impl Literal {
    /// A plain `xsd:string` literal.
    pub fn string(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: xsd(XSD_STRING),
            language: None,
        }
    }

    /// A typed literal. Lexical forms of `xsd:gYear` and the numeric datatypes are checked.
    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Result<Self, RdfError> {
        let lexical = lexical.as_ref();
        if datatype.as_str() == RDF_LANG_STRING {
            return Err(RdfError::InvalidLiteral {
                lexical: lexical.to_owned(),
                reason: "language-tagged strings need a language tag".into(),
            });
        }
        check_lexical(lexical, datatype.as_str())?;
        Ok(Literal {
            lexical: Arc::from(lexical),
            datatype,
            language: None,
        })
    }

    pub fn lang_string(lexical: impl AsRef<str>, language: impl AsRef<str>) -> Result<Self, RdfError> {
        let language = language.as_ref();
        let valid = !language.is_empty()
            && language
                .split('-')
                .all(|part| !part.is_empty() && part.chars().all(|c| c.is_ascii_alphanumeric()));
        if !valid {
            return Err(RdfError::InvalidLiteral {
                lexical: lexical.as_ref().to_owned(),
                reason: format!("bad language tag {language:?}"),
            });
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: xsd(RDF_LANG_STRING),
            language: Some(Arc::from(language.to_ascii_lowercase().as_str())),
        })
    }

    pub fn integer(value: i64) -> Self {
        Literal {
            lexical: Arc::from(value.to_string().as_str()),
            datatype: xsd(XSD_INTEGER),
            language: None,
        }
    }

    pub fn decimal(value: f64) -> Self {
        Literal {
            lexical: Arc::from(format_decimal(value).as_str()),
            datatype: xsd(XSD_DECIMAL),
            language: None,
        }
    }

    pub fn gyear(year: i32) -> Result<Self, RdfError> {
        Literal::typed(format!("{year:04}"), xsd(XSD_GYEAR))
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_plain_string(&self) -> bool {
        self.datatype.as_str() == XSD_STRING
    }

    /// Numeric reading of the literal. `xsd:gYear` reads as an integer year.
    pub fn numeric(&self) -> Option<Numeric> {
        let lex = self.lexical.trim();
        match self.datatype.as_str() {
            XSD_INTEGER | XSD_GYEAR => lex.parse::<i64>().ok().map(Numeric::Integer),
            XSD_DECIMAL => lex.parse::<f64>().ok().map(Numeric::Decimal),
            XSD_DOUBLE => lex.parse::<f64>().ok().map(Numeric::Double),
            _ => None,
        }
    }

    /// N-Triples lexical form.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::with_capacity(self.lexical.len() + 2);
        out.push('"');
        escape_into(&self.lexical, &mut out);
        out.push('"');
        if let Some(lang) = &self.language {
            out.push('@');
            out.push_str(lang);
        } else if !self.is_plain_string() {
            out.push_str("^^");
            out.push_str(&self.datatype.to_string());
        }
        out
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

fn xsd(value: &str) -> Iri {
    Iri(Arc::from(value))
}

fn check_lexical(lexical: &str, datatype: &str) -> Result<(), RdfError> {
    let bad = |reason: &str| {
        Err(RdfError::InvalidLiteral {
            lexical: lexical.to_owned(),
            reason: reason.to_owned(),
        })
    };
    match datatype {
        XSD_GYEAR => {
            let digits = lexical.strip_prefix('-').unwrap_or(lexical);
            if digits.len() == 4 && digits.chars().all(|c| c.is_ascii_digit()) {
                Ok(())
            } else {
                bad("xsd:gYear needs a 4-digit year")
            }
        }
        XSD_INTEGER => {
            let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                Ok(())
            } else {
                bad("not an xsd:integer")
            }
        }
        XSD_DECIMAL => {
            let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
            let mut parts = digits.splitn(2, '.');
            let int = parts.next().unwrap_or("");
            let frac = parts.next().unwrap_or("");
            let ok = (!int.is_empty() || !frac.is_empty())
                && int.chars().all(|c| c.is_ascii_digit())
                && frac.chars().all(|c| c.is_ascii_digit());
            if ok {
                Ok(())
            } else {
                bad("not an xsd:decimal")
            }
        }
        XSD_DOUBLE => {
            if matches!(lexical, "INF" | "-INF" | "NaN") || lexical.parse::<f64>().is_ok() {
                Ok(())
            } else {
                bad("not an xsd:double")
            }
        }
        _ => Ok(()),
    }
}

pub(crate) fn escape_into(text: &str, out: &mut String) {
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
}

/// A blank node, identified by its label within one graph load.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(Arc<str>);

impl BlankNode {
    pub fn new(label: impl AsRef<str>) -> Result<Self, RdfError> {
        let label = label.as_ref();
        if label.is_empty()
            || !label
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
            || label.ends_with('.')
        {
            return Err(RdfError::InvalidBlankNode(label.to_owned()));
        }
        Ok(BlankNode(Arc::from(label)))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
    Blank(BlankNode),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn to_ntriples(&self) -> String {
        match self {
            Term::Iri(iri) => iri.to_string(),
            Term::Literal(lit) => lit.to_ntriples(),
            Term::Blank(b) => format!("_:{}", b.0),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<&Iri> for Term {
    fn from(iri: &Iri) -> Self {
        Term::Iri(iri.clone())
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

/// A subject-predicate-object statement. Literals never appear as subject.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, RdfError> {
        let subject = subject.into();
        if subject.is_literal() {
            return Err(RdfError::LiteralSubject(subject.to_ntriples()));
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn to_ntriples(&self) -> String {
        format!(
            "{} {} {} .",
            self.subject.to_ntriples(),
            self.predicate,
            self.object.to_ntriples()
        )
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}
