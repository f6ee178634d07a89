use std::fmt;
use std::sync::Arc;

use crate::rdf::{Iri, Term};

/// A query variable, stored without its `?`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(Arc<str>);

impl Variable {
    pub fn new(name: impl AsRef<str>) -> Self {
        Variable(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermPattern {
    Var(Variable),
    Term(Term),
}

impl TermPattern {
    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            TermPattern::Var(v) => Some(v),
            TermPattern::Term(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: TermPattern,
    /// Either a variable or an IRI.
    pub predicate: TermPattern,
    pub object: TermPattern,
}

impl TriplePattern {
    pub fn positions(&self) -> [&TermPattern; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.positions().into_iter().filter_map(TermPattern::as_var)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expression {
    Var(Variable),
    Const(Term),
    Compare(CompareOp, Box<Expression>, Box<Expression>),
    Arith(ArithOp, Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    Not(Box<Expression>),
    And(Box<Expression>, Box<Expression>),
    Or(Box<Expression>, Box<Expression>),
    Sum { distinct: bool, expr: Box<Expression> },
}

impl Expression {
    pub fn contains_aggregate(&self) -> bool {
        match self {
            Expression::Sum { .. } => true,
            Expression::Var(_) | Expression::Const(_) => false,
            Expression::Neg(e) | Expression::Not(e) => e.contains_aggregate(),
            Expression::Compare(_, a, b)
            | Expression::Arith(_, a, b)
            | Expression::And(a, b)
            | Expression::Or(a, b) => a.contains_aggregate() || b.contains_aggregate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SelectItem {
    Var(Variable),
    Expr { expr: Expression, alias: Variable },
}

impl SelectItem {
    pub fn variable(&self) -> &Variable {
        match self {
            SelectItem::Var(v) => v,
            SelectItem::Expr { alias, .. } => alias,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    All,
    Items(Vec<SelectItem>),
}

/// Inline data; `None` cells are `UNDEF`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuesTable {
    pub variables: Vec<Variable>,
    pub rows: Vec<Vec<Option<Term>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphPattern {
    Bgp(Vec<TriplePattern>),
    /// `{ ... }`: elements joined left to right; its filters apply to the whole group.
    Group(Vec<GraphPattern>),
    Union(Box<GraphPattern>, Box<GraphPattern>),
    /// Only meaningful as a group element.
    Filter(Expression),
    Values(ValuesTable),
    SubSelect(Box<Query>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Query {
    /// Prefixes declared in the query text, in order.
    pub prefixes: Vec<(String, Iri)>,
    pub distinct: bool,
    pub projection: Projection,
    /// The `WHERE` clause: a group or a bare sub-select.
    pub pattern: GraphPattern,
    pub group_by: Vec<Variable>,
}

impl Query {
    /// Aggregation applies when there is a `GROUP BY` or any aggregate is projected.
    pub fn is_grouped(&self) -> bool {
        !self.group_by.is_empty()
            || matches!(&self.projection, Projection::Items(items) if items.iter().any(|i| matches!(i, SelectItem::Expr { expr, .. } if expr.contains_aggregate())))
    }

    /// Variables visible to the projection, in order of first appearance.
    pub fn in_scope_variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        collect_scope(&self.pattern, &mut out);
        out
    }

    pub fn projected_variables(&self) -> Vec<Variable> {
        match &self.projection {
            Projection::All => self.in_scope_variables(),
            Projection::Items(items) => items.iter().map(|i| i.variable().clone()).collect(),
        }
    }

    /// Warnings that do not stop evaluation: plain projected variables of a
    /// grouped query that are not group keys (they evaluate unbound).
    pub fn lint(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.is_grouped() {
            if let Projection::Items(items) = &self.projection {
                for item in items {
                    if let SelectItem::Var(v) = item {
                        if !self.group_by.contains(v) {
                            out.push(format!("{v} is projected but is not a GROUP BY key"));
                        }
                    }
                }
            }
        }
        out
    }
}

fn push_unique(out: &mut Vec<Variable>, v: &Variable) {
    if !out.contains(v) {
        out.push(v.clone());
    }
}

fn collect_scope(p: &GraphPattern, out: &mut Vec<Variable>) {
    match p {
        GraphPattern::Bgp(tps) => tps.iter().flat_map(|t| t.variables()).for_each(|v| push_unique(out, v)),
        GraphPattern::Group(items) => items.iter().for_each(|i| collect_scope(i, out)),
        GraphPattern::Union(a, b) => {
            collect_scope(a, out);
            collect_scope(b, out);
        }
        GraphPattern::Filter(_) => {}
        GraphPattern::Values(t) => t.variables.iter().for_each(|v| push_unique(out, v)),
        GraphPattern::SubSelect(q) => q.projected_variables().iter().for_each(|v| push_unique(out, v)),
    }
}

// Canonical text form. Everything prints with full IRIs and fully
// parenthesised operators, so parsing the output yields an equal AST.

impl fmt::Display for TermPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermPattern::Var(v) => write!(f, "{v}"),
            TermPattern::Term(t) => f.write_str(&t.to_ntriples()),
        }
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Var(v) => write!(f, "{v}"),
            Expression::Const(t) => f.write_str(&t.to_ntriples()),
            Expression::Compare(op, a, b) => {
                let op = match op {
                    CompareOp::Eq => "=",
                    CompareOp::Ne => "!=",
                    CompareOp::Lt => "<",
                    CompareOp::Gt => ">",
                    CompareOp::Le => "<=",
                    CompareOp::Ge => ">=",
                };
                write!(f, "({a} {op} {b})")
            }
            Expression::Arith(op, a, b) => {
                let op = match op {
                    ArithOp::Add => "+",
                    ArithOp::Sub => "-",
                    ArithOp::Mul => "*",
                    ArithOp::Div => "/",
                };
                write!(f, "({a} {op} {b})")
            }
            Expression::Neg(e) => write!(f, "(-{e})"),
            Expression::Not(e) => write!(f, "(!{e})"),
            Expression::And(a, b) => write!(f, "({a} && {b})"),
            Expression::Or(a, b) => write!(f, "({a} || {b})"),
            Expression::Sum { distinct, expr } => {
                write!(f, "SUM({}{expr})", if *distinct { "DISTINCT " } else { "" })
            }
        }
    }
}

fn indent(f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
    for _ in 0..depth {
        f.write_str("  ")?;
    }
    Ok(())
}

fn write_pattern(f: &mut fmt::Formatter<'_>, p: &GraphPattern, depth: usize) -> fmt::Result {
    match p {
        GraphPattern::Bgp(tps) => {
            for tp in tps {
                indent(f, depth)?;
                writeln!(f, "{tp} .")?;
            }
            Ok(())
        }
        GraphPattern::Group(items) => {
            indent(f, depth)?;
            f.write_str("{\n")?;
            for item in items {
                write_pattern(f, item, depth + 1)?;
            }
            indent(f, depth)?;
            f.write_str("}\n")
        }
        GraphPattern::Union(a, b) => {
            write_pattern(f, a, depth)?;
            indent(f, depth)?;
            f.write_str("UNION\n")?;
            write_pattern(f, b, depth)
        }
        GraphPattern::Filter(e) => {
            indent(f, depth)?;
            writeln!(f, "FILTER({e})")
        }
        GraphPattern::Values(t) => {
            indent(f, depth)?;
            f.write_str("VALUES (")?;
            let vars: Vec<String> = t.variables.iter().map(|v| v.to_string()).collect();
            write!(f, "{}) {{", vars.join(" "))?;
            for row in &t.rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| c.as_ref().map_or_else(|| "UNDEF".to_owned(), Term::to_ntriples))
                    .collect();
                write!(f, " ({})", cells.join(" "))?;
            }
            f.write_str(" }\n")
        }
        GraphPattern::SubSelect(q) => {
            indent(f, depth)?;
            f.write_str("{\n")?;
            write_query(f, q, depth + 1)?;
            indent(f, depth)?;
            f.write_str("}\n")
        }
    }
}

fn write_query(f: &mut fmt::Formatter<'_>, q: &Query, depth: usize) -> fmt::Result {
    for (prefix, ns) in &q.prefixes {
        indent(f, depth)?;
        writeln!(f, "PREFIX {prefix}: {ns}")?;
    }
    indent(f, depth)?;
    f.write_str("SELECT")?;
    if q.distinct {
        f.write_str(" DISTINCT")?;
    }
    match &q.projection {
        Projection::All => f.write_str(" *")?,
        Projection::Items(items) => {
            for item in items {
                match item {
                    SelectItem::Var(v) => write!(f, " {v}")?,
                    SelectItem::Expr { expr, alias } => write!(f, " ({expr} AS {alias})")?,
                }
            }
        }
    }
    f.write_str("\n")?;
    indent(f, depth)?;
    f.write_str("WHERE\n")?;
    match &q.pattern {
        GraphPattern::Group(_) => write_pattern(f, &q.pattern, depth)?,
        other => {
            indent(f, depth)?;
            f.write_str("{\n")?;
            write_pattern(f, other, depth + 1)?;
            indent(f, depth)?;
            f.write_str("}\n")?;
        }
    }
    if !q.group_by.is_empty() {
        indent(f, depth)?;
        let keys: Vec<String> = q.group_by.iter().map(|v| v.to_string()).collect();
        writeln!(f, "GROUP BY {}", keys.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_query(f, self, 0)
    }
}
