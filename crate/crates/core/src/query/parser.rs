use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::QueryError;
use crate::rdf::{vocab, Iri, Literal, PrefixTable, Term};
use crate::vocabulary::default_prefixes;

const UNSUPPORTED_PATTERN_KEYWORDS: &[&str] = &["OPTIONAL", "MINUS", "BIND", "SERVICE", "GRAPH"];
const UNSUPPORTED_MODIFIERS: &[&str] = &["HAVING", "ORDER", "LIMIT", "OFFSET", "VALUES"];
const UNSUPPORTED_AGGREGATES: &[&str] = &["COUNT", "AVG", "MIN", "MAX", "SAMPLE", "GROUP_CONCAT"];

/// Parses a query in the supported subset. Prefixed names resolve against the
/// declared `PREFIX`es first and the toolkit's default prefixes second.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        prefixes: default_prefixes(),
    };
    let q = p.query()?;
    p.expect_eof()?;
    Ok(q)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: PrefixTable,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, n: usize) -> &Tok {
        &self.tokens[(self.pos + n).min(self.tokens.len() - 1)].tok
    }

    fn advance(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, token: &Token, message: impl Into<String>) -> QueryError {
        QueryError::Syntax {
            line: token.line,
            column: token.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> QueryError {
        let t = self.peek();
        let mut message = format!("expected {wanted}, found {}", t.tok.describe());
        if t.tok == Tok::Backtick {
            message.push_str(" (listing placeholders must be expanded first)");
        }
        self.syntax(t, message)
    }

    fn unsupported(&self, construct: impl Into<String>) -> QueryError {
        let t = self.peek();
        QueryError::Unsupported {
            construct: construct.into(),
            line: t.line,
            column: t.column,
        }
    }

    fn is_word(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w.eq_ignore_ascii_case(kw))
    }

    fn word_in(&self, set: &[&str]) -> Option<String> {
        match &self.peek().tok {
            Tok::Word(w) => set
                .iter()
                .find(|k| w.eq_ignore_ascii_case(k))
                .map(|k| (*k).to_owned()),
            _ => None,
        }
    }

    fn eat_word(&mut self, kw: &str) -> bool {
        let hit = self.is_word(kw);
        if hit {
            self.advance();
        }
        hit
    }

    fn expect_word(&mut self, kw: &str) -> Result<(), QueryError> {
        if self.eat_word(kw) {
            Ok(())
        } else {
            Err(self.unexpected(kw))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        let hit = &self.peek().tok == tok;
        if hit {
            self.advance();
        }
        hit
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), QueryError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_eof(&self) -> Result<(), QueryError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else if let Some(kw) = self.word_in(UNSUPPORTED_MODIFIERS) {
            Err(self.unsupported(kw))
        } else {
            Err(self.unexpected("end of query"))
        }
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        let mut declared = Vec::new();
        loop {
            if self.eat_word("PREFIX") {
                let t = self.advance();
                let prefix = match t.tok {
                    Tok::PName { prefix, local } if local.is_empty() => prefix,
                    _ => return Err(self.syntax(&t, "expected a prefix name such as ex:")),
                };
                let t = self.advance();
                let ns = match &t.tok {
                    Tok::IriRef(i) => Iri::new(i).map_err(|e| self.syntax(&t, e.to_string()))?,
                    _ => return Err(self.syntax(&t, "expected an IRI after the prefix name")),
                };
                self.prefixes.insert(&prefix, ns.clone());
                declared.retain(|(p, _): &(String, Iri)| p != &prefix);
                declared.push((prefix, ns));
            } else if self.is_word("BASE") {
                return Err(self.unsupported("BASE"));
            } else {
                break;
            }
        }
        if let Some(kw) = self.word_in(&["CONSTRUCT", "ASK", "DESCRIBE"]) {
            return Err(self.unsupported(kw));
        }
        let mut q = self.select()?;
        q.prefixes = declared;
        Ok(q)
    }

    fn select(&mut self) -> Result<Query, QueryError> {
        self.expect_word("SELECT")?;
        if self.is_word("REDUCED") {
            return Err(self.unsupported("REDUCED"));
        }
        let distinct = self.eat_word("DISTINCT");
        let mut aliases: Vec<(Variable, Token)> = Vec::new();
        let projection = if self.eat(&Tok::Star) {
            Projection::All
        } else {
            let mut items = Vec::new();
            loop {
                match &self.peek().tok {
                    Tok::Var(v) => {
                        let v = Variable::new(v);
                        self.advance();
                        items.push(SelectItem::Var(v));
                    }
                    Tok::LParen => {
                        self.advance();
                        let expr = self.expression(true)?;
                        self.expect_word("AS")?;
                        let at = self.peek().clone();
                        let alias = match &at.tok {
                            Tok::Var(v) => Variable::new(v),
                            _ => return Err(self.unexpected("a variable after AS")),
                        };
                        self.advance();
                        self.expect(&Tok::RParen)?;
                        aliases.push((alias.clone(), at));
                        items.push(SelectItem::Expr { expr, alias });
                    }
                    _ => break,
                }
            }
            if items.is_empty() {
                return Err(self.unexpected("'*', a variable or '(' in the SELECT clause"));
            }
            Projection::Items(items)
        };
        if self.is_word("FROM") {
            return Err(self.unsupported("FROM"));
        }
        self.eat_word("WHERE");
        let pattern = self.group_or_subselect()?;
        let mut group_by = Vec::new();
        if self.is_word("GROUP") {
            self.advance();
            self.expect_word("BY")?;
            while let Tok::Var(v) = &self.peek().tok {
                group_by.push(Variable::new(v));
                self.advance();
            }
            if group_by.is_empty() {
                if matches!(self.peek().tok, Tok::LParen) {
                    return Err(self.unsupported("GROUP BY expression"));
                }
                return Err(self.unexpected("a variable after GROUP BY"));
            }
        }
        if let Some(kw) = self.word_in(UNSUPPORTED_MODIFIERS) {
            return Err(self.unsupported(kw));
        }
        let q = Query {
            prefixes: Vec::new(),
            distinct,
            projection,
            pattern,
            group_by,
        };
        let in_scope = q.in_scope_variables();
        let mut seen: Vec<&Variable> = Vec::new();
        if let Projection::Items(items) = &q.projection {
            for item in items {
                if let SelectItem::Expr { alias, .. } = item {
                    let at = &aliases.iter().find(|(v, _)| v == alias).expect("alias recorded").1;
                    if in_scope.contains(alias) || seen.contains(&alias) {
                        return Err(self.syntax(at, format!("{alias} is already bound")));
                    }
                }
                seen.push(item.variable());
            }
        }
        Ok(q)
    }

    /// `{ SELECT ... }` or `{ group body }`.
    fn group_or_subselect(&mut self) -> Result<GraphPattern, QueryError> {
        self.expect(&Tok::LBrace)?;
        if self.is_word("SELECT") {
            let q = self.select()?;
            if self.peek().tok != Tok::RBrace {
                return Err(self.unexpected("'}' after a sub-select"));
            }
            self.advance();
            return Ok(GraphPattern::SubSelect(Box::new(q)));
        }
        let items = self.group_body()?;
        self.expect(&Tok::RBrace)?;
        Ok(GraphPattern::Group(items))
    }

    fn group_body(&mut self) -> Result<Vec<GraphPattern>, QueryError> {
        let mut items: Vec<GraphPattern> = Vec::new();
        // whether the last element was a triples block still open for more triples
        let mut open_bgp = false;
        loop {
            match &self.peek().tok {
                Tok::RBrace => return Ok(items),
                Tok::LBrace => {
                    let mut p = self.group_or_subselect()?;
                    while self.eat_word("UNION") {
                        let rhs = self.group_or_subselect()?;
                        p = GraphPattern::Union(Box::new(p), Box::new(rhs));
                    }
                    items.push(p);
                    self.eat(&Tok::Dot);
                    open_bgp = false;
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("FILTER") => {
                    self.advance();
                    if self.peek().tok != Tok::LParen {
                        if let Tok::Word(w) = &self.peek().tok {
                            return Err(self.unsupported(w.to_ascii_uppercase()));
                        }
                        return Err(self.unexpected("'(' after FILTER"));
                    }
                    self.advance();
                    let e = self.expression(false)?;
                    self.expect(&Tok::RParen)?;
                    items.push(GraphPattern::Filter(e));
                    self.eat(&Tok::Dot);
                    open_bgp = false;
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("VALUES") => {
                    self.advance();
                    items.push(GraphPattern::Values(self.values()?));
                    self.eat(&Tok::Dot);
                    open_bgp = false;
                }
                Tok::Word(_) if self.word_in(UNSUPPORTED_PATTERN_KEYWORDS).is_some() => {
                    let kw = self.word_in(UNSUPPORTED_PATTERN_KEYWORDS).unwrap_or_default();
                    return Err(self.unsupported(kw));
                }
                Tok::Eof => return Err(self.unexpected("'}'")),
                _ => {
                    let mut triples = Vec::new();
                    self.triples_same_subject(&mut triples)?;
                    match items.last_mut() {
                        Some(GraphPattern::Bgp(existing)) if open_bgp => existing.extend(triples),
                        _ => items.push(GraphPattern::Bgp(triples)),
                    }
                    open_bgp = self.eat(&Tok::Dot);
                    if !open_bgp && self.starts_triple() {
                        return Err(self.unexpected("'.' between triple patterns"));
                    }
                }
            }
        }
    }

    fn starts_triple(&self) -> bool {
        match &self.peek().tok {
            Tok::Var(_) | Tok::IriRef(_) | Tok::PName { .. } | Tok::Str(_) => true,
            Tok::Integer(_) | Tok::Decimal(_) | Tok::Double(_) => true,
            Tok::Word(w) => !matches!(w.to_ascii_uppercase().as_str(), "FILTER" | "VALUES" | "UNION")
                && self.word_in(UNSUPPORTED_PATTERN_KEYWORDS).is_none(),
            _ => false,
        }
    }

    fn triples_same_subject(&mut self, out: &mut Vec<TriplePattern>) -> Result<(), QueryError> {
        let subject = self.term_pattern("a subject")?;
        if let TermPattern::Term(Term::Literal(_)) = subject {
            return Err(self.syntax(&self.tokens[self.pos - 1], "a literal cannot be a subject"));
        }
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.term_pattern("an object")?;
                out.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            if !self.eat(&Tok::Semicolon) {
                return Ok(());
            }
            while self.eat(&Tok::Semicolon) {}
            if matches!(self.peek().tok, Tok::Dot | Tok::RBrace) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<TermPattern, QueryError> {
        if matches!(&self.peek().tok, Tok::Word(w) if w == "a") {
            self.advance();
            return Ok(TermPattern::Term(Term::Iri(rdf_type())));
        }
        let at = self.peek().clone();
        match self.term_pattern("a predicate")? {
            TermPattern::Term(Term::Iri(i)) => Ok(TermPattern::Term(Term::Iri(i))),
            TermPattern::Var(v) => Ok(TermPattern::Var(v)),
            TermPattern::Term(_) => Err(self.syntax(&at, "a predicate must be an IRI or a variable")),
        }
    }

    fn term_pattern(&mut self, wanted: &str) -> Result<TermPattern, QueryError> {
        if let Tok::Var(v) = &self.peek().tok {
            let v = Variable::new(v);
            self.advance();
            return Ok(TermPattern::Var(v));
        }
        Ok(TermPattern::Term(self.term(wanted)?))
    }

    fn iri_from(&self, t: &Token) -> Result<Option<Iri>, QueryError> {
        match &t.tok {
            Tok::IriRef(i) => Iri::new(i).map(Some).map_err(|e| self.syntax(t, e.to_string())),
            Tok::PName { prefix, local } => {
                let ns = self.prefixes.namespace(prefix).ok_or_else(|| QueryError::UnknownPrefix {
                    prefix: prefix.clone(),
                    line: t.line,
                    column: t.column,
                })?;
                Iri::new(format!("{}{local}", ns.as_str()))
                    .map(Some)
                    .map_err(|e| self.syntax(t, e.to_string()))
            }
            _ => Ok(None),
        }
    }

    /// An IRI or literal constant.
    fn term(&mut self, wanted: &str) -> Result<Term, QueryError> {
        let t = self.peek().clone();
        if let Some(i) = self.iri_from(&t)? {
            self.advance();
            return Ok(Term::Iri(i));
        }
        let lit = |r: Result<Literal, crate::rdf::RdfError>| {
            r.map(Term::Literal).map_err(|e| QueryError::Syntax {
                line: t.line,
                column: t.column,
                message: e.to_string(),
            })
        };
        match &t.tok {
            Tok::Str(s) => {
                self.advance();
                match self.peek().tok.clone() {
                    Tok::LangTag(lang) => {
                        self.advance();
                        lit(Literal::lang_string(s, lang))
                    }
                    Tok::DoubleCaret => {
                        self.advance();
                        let dt_tok = self.advance();
                        let dt = self
                            .iri_from(&dt_tok)?
                            .ok_or_else(|| self.syntax(&dt_tok, "expected a datatype IRI after ^^"))?;
                        lit(Literal::typed(s, dt))
                    }
                    _ => Ok(Term::Literal(Literal::string(s))),
                }
            }
            Tok::Integer(_) | Tok::Decimal(_) | Tok::Double(_) => {
                self.advance();
                lit(numeric_literal("", &t.tok))
            }
            Tok::Plus | Tok::Minus
                if matches!(self.peek_at(1), Tok::Integer(_) | Tok::Decimal(_) | Tok::Double(_)) =>
            {
                let sign = if t.tok == Tok::Minus { "-" } else { "+" };
                self.advance();
                let n = self.advance();
                lit(numeric_literal(sign, &n.tok))
            }
            Tok::Word(w) if w == "true" || w == "false" => {
                self.advance();
                lit(Literal::typed(w, xsd_iri("boolean")))
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn values(&mut self) -> Result<ValuesTable, QueryError> {
        let mut variables = Vec::new();
        let single = match &self.peek().tok {
            Tok::Var(v) => {
                variables.push(Variable::new(v));
                self.advance();
                true
            }
            Tok::LParen => {
                self.advance();
                while let Tok::Var(v) = &self.peek().tok {
                    variables.push(Variable::new(v));
                    self.advance();
                }
                self.expect(&Tok::RParen)?;
                false
            }
            _ => return Err(self.unexpected("a variable or '(' after VALUES")),
        };
        self.expect(&Tok::LBrace)?;
        let mut rows = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if single {
                rows.push(vec![self.data_value()?]);
            } else {
                let at = self.peek().clone();
                self.expect(&Tok::LParen)?;
                let mut row = Vec::new();
                while !self.eat(&Tok::RParen) {
                    row.push(self.data_value()?);
                }
                if row.len() != variables.len() {
                    return Err(self.syntax(
                        &at,
                        format!("VALUES row has {} values for {} variables", row.len(), variables.len()),
                    ));
                }
                rows.push(row);
            }
        }
        Ok(ValuesTable { variables, rows })
    }

    fn data_value(&mut self) -> Result<Option<Term>, QueryError> {
        if self.eat_word("UNDEF") {
            return Ok(None);
        }
        self.term("a value").map(Some)
    }

    fn expression(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        let mut lhs = self.and_expr(aggregates)?;
        while self.eat(&Tok::Or) {
            let rhs = self.and_expr(aggregates)?;
            lhs = Expression::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        let mut lhs = self.relational(aggregates)?;
        while self.eat(&Tok::And) {
            let rhs = self.relational(aggregates)?;
            lhs = Expression::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn relational(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        let lhs = self.additive(aggregates)?;
        let op = match self.peek().tok {
            Tok::Eq => CompareOp::Eq,
            Tok::Ne => CompareOp::Ne,
            Tok::Lt => CompareOp::Lt,
            Tok::Gt => CompareOp::Gt,
            Tok::Le => CompareOp::Le,
            Tok::Ge => CompareOp::Ge,
            _ => {
                if self.is_word("IN") || (self.is_word("NOT") && matches!(self.peek_at(1), Tok::Word(w) if w.eq_ignore_ascii_case("IN"))) {
                    return Err(self.unsupported("IN"));
                }
                return Ok(lhs);
            }
        };
        self.advance();
        let rhs = self.additive(aggregates)?;
        Ok(Expression::Compare(op, Box::new(lhs), Box::new(rhs)))
    }

    fn additive(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        let mut lhs = self.multiplicative(aggregates)?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.multiplicative(aggregates)?;
            lhs = Expression::Arith(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn multiplicative(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        let mut lhs = self.unary(aggregates)?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => ArithOp::Mul,
                Tok::Slash => ArithOp::Div,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.unary(aggregates)?;
            lhs = Expression::Arith(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        match self.peek().tok {
            Tok::Bang => {
                self.advance();
                Ok(Expression::Not(Box::new(self.unary(aggregates)?)))
            }
            Tok::Minus => {
                self.advance();
                Ok(Expression::Neg(Box::new(self.unary(aggregates)?)))
            }
            Tok::Plus => {
                self.advance();
                self.unary(aggregates)
            }
            _ => self.primary(aggregates),
        }
    }

    fn primary(&mut self, aggregates: bool) -> Result<Expression, QueryError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LParen => {
                self.advance();
                let e = self.expression(aggregates)?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Var(v) => {
                self.advance();
                Ok(Expression::Var(Variable::new(v)))
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("SUM") => {
                if !aggregates {
                    return Err(self.syntax(&t, "aggregates are only allowed in the SELECT clause"));
                }
                self.advance();
                self.expect(&Tok::LParen)?;
                let distinct = self.eat_word("DISTINCT");
                let expr = self.expression(false)?;
                self.expect(&Tok::RParen)?;
                Ok(Expression::Sum {
                    distinct,
                    expr: Box::new(expr),
                })
            }
            Tok::Word(w) if w == "true" || w == "false" => Ok(Expression::Const(self.term("a value")?)),
            Tok::Word(w) => {
                let upper = w.to_ascii_uppercase();
                if UNSUPPORTED_AGGREGATES.contains(&upper.as_str()) {
                    return Err(self.unsupported(upper));
                }
                if matches!(upper.as_str(), "EXISTS" | "NOT") {
                    return Err(self.unsupported(if upper == "NOT" { "NOT EXISTS".to_owned() } else { upper }));
                }
                if *self.peek_at(1) == Tok::LParen {
                    return Err(self.unsupported(format!("function {upper}")));
                }
                Err(self.unexpected("an expression"))
            }
            Tok::IriRef(_) | Tok::PName { .. } if *self.peek_at(1) == Tok::LParen => {
                Err(self.unsupported(format!("function {}", t.tok.describe())))
            }
            _ => Ok(Expression::Const(self.term("an expression")?)),
        }
    }
}

fn xsd_iri(local: &str) -> Iri {
    Iri::new(format!("{}{local}", vocab::XSD)).expect("xsd namespace is a valid IRI")
}

fn rdf_type() -> Iri {
    Iri::new(vocab::RDF_TYPE).expect("rdf:type is a valid IRI")
}

fn numeric_literal(sign: &str, tok: &Tok) -> Result<Literal, crate::rdf::RdfError> {
    let (text, dt) = match tok {
        Tok::Integer(n) => (n, "integer"),
        Tok::Decimal(n) => (n, "decimal"),
        Tok::Double(n) => (n, "double"),
        _ => unreachable!("numeric_literal called on a non-number"),
    };
    Literal::typed(format!("{sign}{text}"), xsd_iri(dt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Query {
        parse_query(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
    }

    #[test]
    fn basic_select() {
        let q = parse("SELECT DISTINCT ?lev WHERE { ?ev a ev-ont:ElectricVehicleProduct. ?ev rdfs:label ?lev. }");
        assert!(q.distinct);
        assert_eq!(q.projected_variables(), vec![Variable::new("lev")]);
        match &q.pattern {
            GraphPattern::Group(items) => match &items[..] {
                [GraphPattern::Bgp(tps)] => assert_eq!(tps.len(), 2),
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn predicate_object_lists() {
        let q = parse("SELECT * { ?s a ?c ; rdfs:label ?l, ?m . }");
        let GraphPattern::Group(items) = &q.pattern else { panic!() };
        let GraphPattern::Bgp(tps) = &items[0] else { panic!() };
        assert_eq!(tps.len(), 3);
        assert!(tps.iter().all(|t| t.subject == TermPattern::Var(Variable::new("s"))));
    }

    #[test]
    fn declared_prefix_overrides_default() {
        let q = parse("PREFIX evr: <http://example.org/> SELECT * WHERE { ?s ?p evr:x }");
        let GraphPattern::Group(items) = &q.pattern else { panic!() };
        let GraphPattern::Bgp(tps) = &items[0] else { panic!() };
        assert_eq!(tps[0].object.to_string(), "<http://example.org/x>");
        assert_eq!(q.prefixes.len(), 1);
    }

    #[test]
    fn unknown_prefix_position() {
        let err = parse_query("SELECT * WHERE {\n  ?s nope:p ?o }").unwrap_err();
        assert_eq!(
            err,
            QueryError::UnknownPrefix {
                prefix: "nope".into(),
                line: 2,
                column: 6
            }
        );
    }

    #[test]
    fn unsupported_constructs() {
        let cases = [
            ("SELECT * WHERE { ?s ?p ?o OPTIONAL { ?s ?q ?r } }", "OPTIONAL"),
            ("SELECT * WHERE { ?s ?p ?o } ORDER BY ?s", "ORDER"),
            ("SELECT * WHERE { ?s ?p ?o } LIMIT 3", "LIMIT"),
            ("SELECT (COUNT(?s) AS ?n) WHERE { ?s ?p ?o }", "COUNT"),
            ("SELECT * WHERE { ?s ?p ?o FILTER(regex(?o, \"x\")) }", "function REGEX"),
            ("SELECT * WHERE { ?s ?p ?o MINUS { ?s ?p 1 } }", "MINUS"),
            ("ASK { ?s ?p ?o }", "ASK"),
            ("SELECT * WHERE { ?s ?p ?o FILTER NOT EXISTS { ?s ?p 2 } }", "NOT"),
        ];
        for (text, construct) in cases {
            match parse_query(text) {
                Err(QueryError::Unsupported { construct: c, .. }) => assert_eq!(c, construct, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn syntax_errors() {
        for text in [
            "SELECT * WHERE { ?s ?p }",
            "SELECT * WHERE { ?s \"lit\" ?o }",
            "SELECT * WHERE { ?s ?p ?o ?a ?b ?c }",
            "SELECT * WHERE { ?s ?p ?o FILTER(SUM(?o) > 1) }",
            "SELECT ?x WHERE { ?s ?p ?o } GROUP BY",
            "SELECT (?o AS ?s) WHERE { ?s ?p ?o }",
            "SELECT * WHERE { ?s ?p ?o",
            "SELECT * WHERE { {``` Query from Listing 4 ```} }",
        ] {
            assert!(matches!(parse_query(text), Err(QueryError::Syntax { .. })), "{text}");
        }
    }

    #[test]
    fn values_forms() {
        let q = parse("SELECT * { VALUES ?x { 1 \"a\" UNDEF } VALUES (?a ?b) { (1 2) (UNDEF evr:x) } }");
        let GraphPattern::Group(items) = &q.pattern else { panic!() };
        let GraphPattern::Values(t) = &items[0] else { panic!() };
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.rows[2], vec![None]);
        let GraphPattern::Values(t) = &items[1] else { panic!() };
        assert_eq!(t.variables.len(), 2);
        assert_eq!(t.rows[1][0], None);
    }

    #[test]
    fn union_is_left_associative() {
        let q = parse("SELECT * { {?a ?b ?c} UNION {?d ?e ?f} UNION {?g ?h ?i} }");
        let GraphPattern::Group(items) = &q.pattern else { panic!() };
        let GraphPattern::Union(left, _) = &items[0] else { panic!() };
        assert!(matches!(**left, GraphPattern::Union(..)));
    }

    #[test]
    fn subselect_and_grouping() {
        let q = parse(
            "SELECT ?co (SUM(?n) AS ?total) ?year WHERE { SELECT DISTINCT ?co ?n ?year WHERE { ?c ?co ?n . ?c ?p ?year } } Group By ?co ?year ?stn",
        );
        assert!(matches!(q.pattern, GraphPattern::SubSelect(_)));
        assert_eq!(q.group_by.len(), 3);
        assert!(q.is_grouped());
        assert!(q.lint().is_empty());
    }

    #[test]
    fn lint_flags_non_key_projection() {
        let q = parse("SELECT ?s (SUM(?o) AS ?t) WHERE { ?s ?p ?o }");
        assert_eq!(q.lint().len(), 1);
    }

    #[test]
    fn precedence() {
        let q = parse("SELECT * { ?s ?p ?o FILTER(?a + ?b * 2 > 3 && !?c || ?d) }");
        let GraphPattern::Group(items) = &q.pattern else { panic!() };
        let GraphPattern::Filter(e) = &items[1] else { panic!() };
        let int = |n: u8| format!("\"{n}\"^^<http://www.w3.org/2001/XMLSchema#integer>");
        assert_eq!(
            e.to_string(),
            format!("((((?a + (?b * {})) > {}) && (!?c)) || ?d)", int(2), int(3))
        );
    }

    #[test]
    fn printed_form_round_trips() {
        for text in [
            "PREFIX ex: <http://example.org/> SELECT DISTINCT ?s (SUM(DISTINCT ?o) AS ?t) WHERE { ?s ex:p ?o ; a ex:C . FILTER(?o >= -2.5) { ?s ?q \"x\"@en } UNION { VALUES ?s { ex:a UNDEF } } } GROUP BY ?s",
            "SELECT * WHERE { { SELECT ?a WHERE { ?a ?b ?c } } ?a ?d 1e3 . FILTER(!(?d = true)) }",
        ] {
            let q = parse(text);
            let printed = q.to_string();
            assert_eq!(parse(&printed), q, "{printed}");
        }
    }
}
