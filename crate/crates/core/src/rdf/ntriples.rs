use super::lexer::{Lexer, LiteralSuffix, Spanned, Tok};
use super::{vocab::RDF_TYPE, BlankNode, Graph, Iri, Literal, PrefixTable, RdfError, Term, Triple};

/// Canonical N-Triples: one triple per line, lines sorted lexicographically.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut lines: Vec<String> = graph.iter().map(|t| t.to_ntriples()).collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_ntriples(text: &str) -> Result<Graph, RdfError> {
    let mut graph = Graph::new();
    let mut reader = StatementReader::new(text, None);
    while let Some(triple) = reader.next_triple()? {
        graph.insert(triple)?;
    }
    Ok(graph)
}

/// Reads `s p o .` statements; with a prefix table, prefixed names, `a` and
/// prefix directives are accepted as well.
pub(crate) struct StatementReader<'a> {
    lexer: Lexer<'a>,
    prefixes: Option<PrefixTable>,
}

fn err(tok: &Spanned, message: impl Into<String>) -> RdfError {
    RdfError::Syntax {
        line: tok.line,
        token: tok.text.clone(),
        message: message.into(),
    }
}

impl<'a> StatementReader<'a> {
    pub fn new(text: &'a str, prefixes: Option<PrefixTable>) -> Self {
        StatementReader {
            lexer: Lexer::new(text),
            prefixes,
        }
    }

    pub fn into_prefixes(self) -> Option<PrefixTable> {
        self.prefixes
    }

    fn expect(&mut self, what: &str, last_line: usize) -> Result<Spanned, RdfError> {
        self.lexer.next_token()?.ok_or_else(|| RdfError::Syntax {
            line: last_line,
            token: String::new(),
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn resolve_iri(&self, tok: &Spanned) -> Result<Iri, RdfError> {
        match &tok.tok {
            Tok::IriRef(value) => Iri::new(value).map_err(|e| err(tok, e.to_string())),
            Tok::PName { prefix, local } => match &self.prefixes {
                Some(table) => table
                    .expand_curie(&format!("{prefix}:{local}"))
                    .map_err(|e| err(tok, e.to_string())),
                None => Err(err(tok, "prefixed names are not allowed in N-Triples")),
            },
            Tok::A if self.prefixes.is_some() => Ok(super::iri(RDF_TYPE)),
            _ => Err(err(tok, "expected an IRI")),
        }
    }

    fn term(&self, tok: &Spanned) -> Result<Term, RdfError> {
        match &tok.tok {
            Tok::Blank(label) => Ok(Term::Blank(
                BlankNode::new(label).map_err(|e| err(tok, e.to_string()))?,
            )),
            Tok::Literal { lexical, suffix } => {
                let lit = match suffix {
                    LiteralSuffix::None => Ok(Literal::string(lexical)),
                    LiteralSuffix::Lang(tag) => Literal::lang_string(lexical, tag),
                    LiteralSuffix::Datatype(dt) => {
                        let dt_tok = Spanned {
                            tok: (**dt).clone(),
                            line: tok.line,
                            text: tok.text.clone(),
                        };
                        Literal::typed(lexical, self.resolve_iri(&dt_tok)?)
                    }
                };
                lit.map(Term::Literal).map_err(|e| err(tok, e.to_string()))
            }
            _ => self.resolve_iri(tok).map(Term::Iri),
        }
    }

    fn prefix_directive(&mut self, first: &Spanned) -> Result<(), RdfError> {
        let name = self.expect("prefix name", first.line)?;
        let Tok::PName { prefix, local } = &name.tok else {
            return Err(err(&name, "expected `prefix:`"));
        };
        if !local.is_empty() {
            return Err(err(&name, "prefix declaration must end with ':'"));
        }
        let ns_tok = self.expect("namespace IRI", name.line)?;
        let Tok::IriRef(ns) = &ns_tok.tok else {
            return Err(err(&ns_tok, "expected namespace IRI"));
        };
        let ns = Iri::new(ns).map_err(|e| err(&ns_tok, e.to_string()))?;
        if first.tok == Tok::AtPrefix {
            let dot = self.expect("'.'", ns_tok.line)?;
            if dot.tok != Tok::Dot {
                return Err(err(&dot, "expected '.' after @prefix"));
            }
        }
        if let Some(table) = self.prefixes.as_mut() {
            table.insert(prefix, ns);
        }
        Ok(())
    }

    pub fn next_triple(&mut self) -> Result<Option<Triple>, RdfError> {
        loop {
            let Some(first) = self.lexer.next_token()? else {
                return Ok(None);
            };
            if matches!(first.tok, Tok::AtPrefix | Tok::PrefixKeyword) {
                if self.prefixes.is_none() {
                    return Err(err(&first, "prefix directives are not allowed in N-Triples"));
                }
                self.prefix_directive(&first)?;
                continue;
            }
            let subject = match first.tok {
                Tok::Literal { .. } => return Err(err(&first, "literal in subject position")),
                Tok::Dot => return Err(err(&first, "expected a subject")),
                _ => self.term(&first)?,
            };
            let p_tok = self.expect("predicate", first.line)?;
            let predicate = match p_tok.tok {
                Tok::Literal { .. } | Tok::Blank(_) => {
                    return Err(err(&p_tok, "predicate must be an IRI"))
                }
                _ => self.resolve_iri(&p_tok)?,
            };
            let o_tok = self.expect("object", p_tok.line)?;
            if o_tok.tok == Tok::Dot {
                return Err(err(&o_tok, "expected an object"));
            }
            let object = self.term(&o_tok)?;
            let dot = self.expect("'.'", o_tok.line)?;
            if dot.tok != Tok::Dot {
                return Err(err(&dot, "expected '.' to end the triple"));
            }
            return Triple::new(subject, predicate, object)
                .map(Some)
                .map_err(|e| err(&first, e.to_string()));
        }
    }
}
