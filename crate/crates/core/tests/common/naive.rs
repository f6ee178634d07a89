//! Reference evaluator: nested loops over the full triple list, no indexes,
//! no planning, no hashing. Slow and obviously correct is the point.

use std::cmp::Ordering;
use std::collections::HashMap;

use evkg_core::query::{
    ArithOp, CompareOp, Expression, GraphPattern, Projection, Query, SelectItem, TermPattern,
    TriplePattern, ValuesTable,
};
use evkg_core::rdf::{Graph, Iri, Literal, Term, Triple};
use evkg_core::Solutions;

type Row = HashMap<String, Term>;

const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub fn evaluate(graph: &Graph, query: &Query) -> Solutions {
    let triples: Vec<Triple> = graph.iter().collect();
    let variables = query.projected_variables();
    let rows = run_query(&triples, query)
        .into_iter()
        .map(|r| variables.iter().map(|v| r.get(v.name()).cloned()).collect())
        .collect();
    Solutions { variables, rows }
}

pub fn evaluate_text(graph: &Graph, text: &str) -> Solutions {
    evaluate(graph, &evkg_core::parse_query(text).expect("oracle query parses"))
}

fn run_query(triples: &[Triple], q: &Query) -> Vec<Row> {
    let solved = pattern(triples, &q.pattern);
    let items: Vec<SelectItem> = match &q.projection {
        Projection::Items(items) => items.clone(),
        Projection::All => Vec::new(),
    };
    let mut rows = if q.is_grouped() {
        // group rows by key with a linear search over the groups seen so far
        let mut groups: Vec<(Vec<Option<Term>>, Vec<Row>)> = Vec::new();
        if q.group_by.is_empty() {
            groups.push((Vec::new(), solved));
        } else {
            for r in solved {
                let key: Vec<Option<Term>> = q.group_by.iter().map(|v| r.get(v.name()).cloned()).collect();
                match groups.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, members)) => members.push(r),
                    None => groups.push((key, vec![r])),
                }
            }
        }
        let mut out = Vec::new();
        for (key, members) in groups {
            let mut row = Row::new();
            for (v, t) in q.group_by.iter().zip(key) {
                if let Some(t) = t {
                    row.insert(v.name().to_owned(), t);
                }
            }
            for item in &items {
                if let SelectItem::Expr { expr, alias } = item {
                    if let Some(v) = eval(expr, &row, Some(&members)) {
                        row.insert(alias.name().to_owned(), v.term());
                    }
                }
            }
            out.push(row);
        }
        out
    } else {
        let mut out = Vec::new();
        for mut row in solved {
            for item in &items {
                if let SelectItem::Expr { expr, alias } = item {
                    if let Some(v) = eval(expr, &row, None) {
                        row.insert(alias.name().to_owned(), v.term());
                    }
                }
            }
            out.push(row);
        }
        out
    };
    let keep: Vec<String> = q.projected_variables().iter().map(|v| v.name().to_owned()).collect();
    for r in rows.iter_mut() {
        r.retain(|k, _| keep.contains(k));
    }
    if q.distinct {
        let mut unique: Vec<Row> = Vec::new();
        for r in rows {
            if !unique.contains(&r) {
                unique.push(r);
            }
        }
        rows = unique;
    }
    rows
}

fn pattern(triples: &[Triple], p: &GraphPattern) -> Vec<Row> {
    match p {
        GraphPattern::Bgp(tps) => bgp(triples, tps, vec![Row::new()]),
        GraphPattern::Group(items) => group(triples, items),
        GraphPattern::Union(a, b) => {
            let mut out = pattern(triples, a);
            out.extend(pattern(triples, b));
            out
        }
        GraphPattern::Filter(e) => {
            if passes(e, &Row::new()) {
                vec![Row::new()]
            } else {
                vec![]
            }
        }
        GraphPattern::Values(t) => values(vec![Row::new()], t),
        GraphPattern::SubSelect(q) => run_query(triples, q),
    }
}

fn group(triples: &[Triple], items: &[GraphPattern]) -> Vec<Row> {
    let mut rows = vec![Row::new()];
    let mut filters = Vec::new();
    for item in items {
        match item {
            GraphPattern::Filter(e) => filters.push(e.clone()),
            GraphPattern::Group(inner)
                if !inner.is_empty() && inner.iter().all(|i| matches!(i, GraphPattern::Filter(_))) =>
            {
                for i in inner {
                    if let GraphPattern::Filter(e) = i {
                        filters.push(e.clone());
                    }
                }
            }
            GraphPattern::Bgp(tps) => rows = bgp(triples, tps, rows),
            GraphPattern::Values(t) => rows = values(rows, t),
            other => {
                let right = pattern(triples, other);
                let mut joined = Vec::new();
                for l in &rows {
                    for r in &right {
                        if l.iter().all(|(k, v)| r.get(k).is_none_or(|w| w == v)) {
                            let mut m = l.clone();
                            m.extend(r.iter().map(|(k, v)| (k.clone(), v.clone())));
                            joined.push(m);
                        }
                    }
                }
                rows = joined;
            }
        }
    }
    rows.retain(|r| filters.iter().all(|f| passes(f, r)));
    rows
}

fn values(rows: Vec<Row>, table: &ValuesTable) -> Vec<Row> {
    let mut out = Vec::new();
    for r in &rows {
        for data in &table.rows {
            let mut m = r.clone();
            let mut ok = true;
            for (v, cell) in table.variables.iter().zip(data) {
                let Some(cell) = cell else { continue };
                match r.get(v.name()) {
                    Some(t) => ok &= value_equal(t, cell),
                    None => {
                        m.insert(v.name().to_owned(), cell.clone());
                    }
                }
            }
            if ok {
                out.push(m);
            }
        }
    }
    out
}

fn value_equal(a: &Term, b: &Term) -> bool {
    if a == b {
        return true;
    }
    match (a, b) {
        (Term::Literal(x), Term::Literal(y)) if x.datatype() == y.datatype() => {
            match (Val::from_term(a).number(), Val::from_term(b).number()) {
                (Some(m), Some(n)) => num_order(m, n) == Some(Ordering::Equal),
                _ => false,
            }
        }
        _ => false,
    }
}

fn bgp(triples: &[Triple], tps: &[TriplePattern], mut rows: Vec<Row>) -> Vec<Row> {
    for tp in tps {
        let mut next = Vec::new();
        for r in &rows {
            for t in triples {
                let mut m = r.clone();
                let pred = Term::Iri(t.predicate.clone());
                if bind(&tp.subject, &t.subject, &mut m)
                    && bind(&tp.predicate, &pred, &mut m)
                    && bind(&tp.object, &t.object, &mut m)
                {
                    next.push(m);
                }
            }
        }
        rows = next;
    }
    rows
}

fn bind(p: &TermPattern, t: &Term, row: &mut Row) -> bool {
    match p {
        TermPattern::Term(c) => c == t,
        TermPattern::Var(v) => match row.get(v.name()) {
            Some(bound) => bound == t,
            None => {
                row.insert(v.name().to_owned(), t.clone());
                true
            }
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Num {
    Int(i64),
    Dec(f64),
    Dbl(f64),
}

impl Num {
    fn float(self) -> f64 {
        match self {
            Num::Int(i) => i as f64,
            Num::Dec(d) | Num::Dbl(d) => d,
        }
    }
}

#[derive(Clone, Debug)]
enum Val {
    T(Term),
    N(Num),
    B(bool),
}

fn dt(local: &str) -> Iri {
    Iri::new(format!("{XSD}{local}")).unwrap()
}

impl Val {
    fn from_term(t: &Term) -> Val {
        Val::T(t.clone())
    }

    fn number(&self) -> Option<Num> {
        match self {
            Val::N(n) => Some(*n),
            Val::T(Term::Literal(l)) => {
                let lex = l.lexical().trim();
                match l.datatype().as_str().strip_prefix(XSD)? {
                    "integer" | "gYear" => lex.parse().ok().map(Num::Int),
                    "decimal" => lex.parse().ok().map(Num::Dec),
                    "double" => lex.parse().ok().map(Num::Dbl),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    fn boolean(&self) -> Option<bool> {
        match self {
            Val::B(b) => Some(*b),
            Val::T(Term::Literal(l)) if l.datatype().as_str() == format!("{XSD}boolean") => {
                match l.lexical() {
                    "true" | "1" => Some(true),
                    "false" | "0" => Some(false),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    fn truth(&self) -> Option<bool> {
        if let Some(b) = self.boolean() {
            return Some(b);
        }
        if let Some(n) = self.number() {
            let f = n.float();
            return Some(f != 0.0 && !f.is_nan());
        }
        match self {
            Val::T(Term::Literal(l)) if l.is_plain_string() || l.language().is_some() => Some(!l.lexical().is_empty()),
            _ => None,
        }
    }

    fn term(self) -> Term {
        match self {
            Val::T(t) => t,
            Val::N(Num::Int(i)) => Term::Literal(Literal::integer(i)),
            Val::N(Num::Dec(d)) => Term::Literal(Literal::decimal(d)),
            Val::N(Num::Dbl(d)) => Term::Literal(Literal::typed(format!("{d:E}"), dt("double")).unwrap()),
            Val::B(b) => Term::Literal(Literal::typed(b.to_string(), dt("boolean")).unwrap()),
        }
    }
}

fn num_order(a: Num, b: Num) -> Option<Ordering> {
    if let (Num::Int(x), Num::Int(y)) = (a, b) {
        return Some(x.cmp(&y));
    }
    a.float().partial_cmp(&b.float())
}

fn passes(e: &Expression, row: &Row) -> bool {
    eval(e, row, None).and_then(|v| v.truth()).unwrap_or(false)
}

/// `None` is an evaluation error. `group` is the member rows in grouped mode.
fn eval(e: &Expression, row: &Row, group: Option<&[Row]>) -> Option<Val> {
    match e {
        Expression::Var(v) => row.get(v.name()).cloned().map(Val::T),
        Expression::Const(t) => Some(Val::T(t.clone())),
        Expression::Compare(op, a, b) => {
            let a = eval(a, row, group)?;
            let b = eval(b, row, group)?;
            compare(*op, &a, &b).map(Val::B)
        }
        Expression::Arith(op, a, b) => {
            let a = eval(a, row, group)?.number()?;
            let b = eval(b, row, group)?.number()?;
            arith(*op, a, b).map(Val::N)
        }
        Expression::Neg(a) => {
            let n = eval(a, row, group)?.number()?;
            arith(ArithOp::Sub, Num::Int(0), n).map(Val::N)
        }
        Expression::Not(a) => Some(Val::B(!eval(a, row, group)?.truth()?)),
        Expression::And(a, b) => {
            let x = eval(a, row, group).and_then(|v| v.truth());
            let y = eval(b, row, group).and_then(|v| v.truth());
            match (x, y) {
                (Some(false), _) | (_, Some(false)) => Some(Val::B(false)),
                (Some(true), Some(true)) => Some(Val::B(true)),
                _ => None,
            }
        }
        Expression::Or(a, b) => {
            let x = eval(a, row, group).and_then(|v| v.truth());
            let y = eval(b, row, group).and_then(|v| v.truth());
            match (x, y) {
                (Some(true), _) | (_, Some(true)) => Some(Val::B(true)),
                (Some(false), Some(false)) => Some(Val::B(false)),
                _ => None,
            }
        }
        Expression::Sum { distinct, expr } => {
            let members = group?;
            let mut total = Num::Int(0);
            let mut seen: Vec<Term> = Vec::new();
            for m in members {
                let n = eval(expr, m, None)?.number()?;
                if *distinct {
                    let key = Val::N(n).term();
                    if seen.contains(&key) {
                        continue;
                    }
                    seen.push(key);
                }
                total = arith(ArithOp::Add, total, n)?;
            }
            Some(Val::N(total))
        }
    }
}

fn compare(op: CompareOp, a: &Val, b: &Val) -> Option<bool> {
    let ord = match (a.number(), b.number(), a.boolean(), b.boolean()) {
        (Some(x), Some(y), _, _) => num_order(x, y)?,
        (_, _, Some(x), Some(y)) => x.cmp(&y),
        _ => match (a, b) {
            (Val::T(Term::Literal(x)), Val::T(Term::Literal(y))) => {
                if x.datatype() != y.datatype() || x.language() != y.language() {
                    return None;
                }
                x.lexical().cmp(y.lexical())
            }
            (Val::T(x), Val::T(y)) => {
                return match op {
                    CompareOp::Eq => Some(x == y),
                    CompareOp::Ne => Some(x != y),
                    _ => None,
                }
            }
            _ => return None,
        },
    };
    Some(match op {
        CompareOp::Eq => ord.is_eq(),
        CompareOp::Ne => ord.is_ne(),
        CompareOp::Lt => ord.is_lt(),
        CompareOp::Gt => ord.is_gt(),
        CompareOp::Le => ord.is_le(),
        CompareOp::Ge => ord.is_ge(),
    })
}

fn arith(op: ArithOp, a: Num, b: Num) -> Option<Num> {
    if let (Num::Int(x), Num::Int(y)) = (a, b) {
        return match op {
            ArithOp::Add => x.checked_add(y).map(Num::Int),
            ArithOp::Sub => x.checked_sub(y).map(Num::Int),
            ArithOp::Mul => x.checked_mul(y).map(Num::Int),
            ArithOp::Div if y == 0 => None,
            ArithOp::Div => Some(Num::Dec(x as f64 / y as f64)),
        };
    }
    let (x, y) = (a.float(), b.float());
    let v = match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div if y == 0.0 => return None,
        ArithOp::Div => x / y,
    };
    if !v.is_finite() {
        return None;
    }
    Some(if matches!(a, Num::Dbl(_)) || matches!(b, Num::Dbl(_)) {
        Num::Dbl(v)
    } else {
        Num::Dec(v)
    })
}
