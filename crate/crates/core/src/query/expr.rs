use std::cmp::Ordering;

use super::ast::{ArithOp, CompareOp, Expression};
use super::eval::Binding;
use crate::rdf::{vocab, Iri, Literal, Numeric, Term};

/// An expression error: the enclosing filter rejects the row, a projection leaves the variable unbound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ExprError;

pub(crate) type ExprResult = Result<Value, ExprError>;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Value {
    Term(Term),
    Num(Numeric),
    Bool(bool),
}

impl Value {
    pub fn numeric(&self) -> Option<Numeric> {
        match self {
            Value::Num(n) => Some(*n),
            Value::Term(Term::Literal(l)) => l.numeric(),
            _ => None,
        }
    }

    fn boolean(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            Value::Term(Term::Literal(l)) if l.datatype().as_str() == XSD_BOOLEAN => match l.lexical() {
                "true" | "1" => Some(true),
                "false" | "0" => Some(false),
                _ => None,
            },
            _ => None,
        }
    }

    /// Effective boolean value.
    pub fn ebv(&self) -> Result<bool, ExprError> {
        if let Some(b) = self.boolean() {
            return Ok(b);
        }
        if let Some(n) = self.numeric() {
            let v = n.as_f64();
            return Ok(v != 0.0 && !v.is_nan());
        }
        match self {
            Value::Term(Term::Literal(l)) if l.is_plain_string() || l.language().is_some() => Ok(!l.lexical().is_empty()),
            _ => Err(ExprError),
        }
    }

    pub fn into_term(self) -> Term {
        match self {
            Value::Term(t) => t,
            Value::Num(Numeric::Integer(i)) => Term::Literal(Literal::integer(i)),
            Value::Num(Numeric::Decimal(d)) => Term::Literal(Literal::decimal(d)),
            Value::Num(Numeric::Double(d)) => Term::Literal(
                Literal::typed(format!("{d:E}"), xsd(vocab::XSD_DOUBLE)).expect("formatted double is valid"),
            ),
            Value::Bool(b) => Term::Literal(
                Literal::typed(if b { "true" } else { "false" }, xsd(XSD_BOOLEAN)).expect("boolean lexical is valid"),
            ),
        }
    }
}

const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

fn xsd(iri: &str) -> Iri {
    Iri::new(iri).expect("xsd IRI")
}

/// Evaluates a non-aggregate expression. `sum` supplies aggregate values in grouped mode.
pub(crate) fn eval_expr(
    e: &Expression,
    row: &Binding,
    sum: &mut dyn FnMut(bool, &Expression) -> ExprResult,
) -> ExprResult {
    match e {
        Expression::Var(v) => row.get(v).cloned().map(Value::Term).ok_or(ExprError),
        Expression::Const(t) => Ok(Value::Term(t.clone())),
        Expression::Compare(op, a, b) => {
            let a = eval_expr(a, row, sum)?;
            let b = eval_expr(b, row, sum)?;
            compare(*op, &a, &b).map(Value::Bool)
        }
        Expression::Arith(op, a, b) => {
            let a = eval_expr(a, row, sum)?.numeric().ok_or(ExprError)?;
            let b = eval_expr(b, row, sum)?.numeric().ok_or(ExprError)?;
            arith(*op, a, b).map(Value::Num)
        }
        Expression::Neg(a) => {
            let n = eval_expr(a, row, sum)?.numeric().ok_or(ExprError)?;
            arith(ArithOp::Sub, Numeric::Integer(0), n).map(Value::Num)
        }
        Expression::Not(a) => Ok(Value::Bool(!eval_expr(a, row, sum)?.ebv()?)),
        Expression::And(a, b) => {
            let a = eval_expr(a, row, sum).and_then(|v| v.ebv());
            let b = eval_expr(b, row, sum).and_then(|v| v.ebv());
            match (a, b) {
                (Ok(false), _) | (_, Ok(false)) => Ok(Value::Bool(false)),
                (Ok(true), Ok(true)) => Ok(Value::Bool(true)),
                _ => Err(ExprError),
            }
        }
        Expression::Or(a, b) => {
            let a = eval_expr(a, row, sum).and_then(|v| v.ebv());
            let b = eval_expr(b, row, sum).and_then(|v| v.ebv());
            match (a, b) {
                (Ok(true), _) | (_, Ok(true)) => Ok(Value::Bool(true)),
                (Ok(false), Ok(false)) => Ok(Value::Bool(false)),
                _ => Err(ExprError),
            }
        }
        Expression::Sum { distinct, expr } => sum(*distinct, expr),
    }
}

/// Filter semantics: errors count as false.
pub(crate) fn filter_passes(e: &Expression, row: &Binding) -> bool {
    eval_expr(e, row, &mut |_, _| Err(ExprError))
        .and_then(|v| v.ebv())
        .unwrap_or(false)
}

fn numeric_cmp(a: Numeric, b: Numeric) -> Option<Ordering> {
    match (a, b) {
        (Numeric::Integer(x), Numeric::Integer(y)) => Some(x.cmp(&y)),
        _ => a.as_f64().partial_cmp(&b.as_f64()),
    }
}

fn compare(op: CompareOp, a: &Value, b: &Value) -> Result<bool, ExprError> {
    let ord = if let (Some(x), Some(y)) = (a.numeric(), b.numeric()) {
        numeric_cmp(x, y).ok_or(ExprError)?
    } else if let (Some(x), Some(y)) = (a.boolean(), b.boolean()) {
        x.cmp(&y)
    } else {
        match (a, b) {
            (Value::Term(Term::Literal(x)), Value::Term(Term::Literal(y)))
                if x.datatype() == y.datatype() && x.language() == y.language() =>
            {
                x.lexical().cmp(y.lexical())
            }
            (Value::Term(x), Value::Term(y)) if !x.is_literal() || !y.is_literal() => {
                // IRIs and blank nodes only support (in)equality
                return match op {
                    CompareOp::Eq => Ok(x == y),
                    CompareOp::Ne => Ok(x != y),
                    _ => Err(ExprError),
                };
            }
            _ => return Err(ExprError),
        }
    };
    Ok(match op {
        CompareOp::Eq => ord == Ordering::Equal,
        CompareOp::Ne => ord != Ordering::Equal,
        CompareOp::Lt => ord == Ordering::Less,
        CompareOp::Gt => ord == Ordering::Greater,
        CompareOp::Le => ord != Ordering::Greater,
        CompareOp::Ge => ord != Ordering::Less,
    })
}

pub(crate) fn arith(op: ArithOp, a: Numeric, b: Numeric) -> Result<Numeric, ExprError> {
    use Numeric::*;
    let out = match (a, b) {
        (Integer(x), Integer(y)) => match op {
            ArithOp::Add => Integer(x.checked_add(y).ok_or(ExprError)?),
            ArithOp::Sub => Integer(x.checked_sub(y).ok_or(ExprError)?),
            ArithOp::Mul => Integer(x.checked_mul(y).ok_or(ExprError)?),
            ArithOp::Div => {
                if y == 0 {
                    return Err(ExprError);
                }
                Decimal(x as f64 / y as f64)
            }
        },
        _ => {
            let (x, y) = (a.as_f64(), b.as_f64());
            let v = match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x * y,
                ArithOp::Div => {
                    if y == 0.0 {
                        return Err(ExprError);
                    }
                    x / y
                }
            };
            if matches!(a, Double(_)) || matches!(b, Double(_)) {
                Double(v)
            } else {
                Decimal(v)
            }
        }
    };
    match out {
        Decimal(v) | Double(v) if !v.is_finite() => Err(ExprError),
        other => Ok(other),
    }
}

/// Value-aware term equality used by `VALUES`: identical terms, or literals
/// of the same datatype with equal numeric values.
pub(crate) fn same_value(a: &Term, b: &Term) -> bool {
    if a == b {
        return true;
    }
    match (a.as_literal(), b.as_literal()) {
        (Some(x), Some(y)) if x.datatype() == y.datatype() => match (x.numeric(), y.numeric()) {
            (Some(m), Some(n)) => numeric_cmp(m, n) == Some(Ordering::Equal),
            _ => false,
        },
        _ => false,
    }
}
