use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ast::*;
use super::expr::{arith, eval_expr, filter_passes, same_value, ExprError, ExprResult, Value};
use super::results::Solutions;
use crate::rdf::{Graph, Iri, Numeric, Term};

/// One solution mapping.
pub type Binding = BTreeMap<Variable, Term>;

/// Evaluates a parsed query. Data never causes an error: expression errors
/// reject rows in filters and leave projected values unbound.
pub fn evaluate(graph: &Graph, query: &Query) -> Solutions {
    let variables = query.projected_variables();
    let rows = eval_query(graph, query)
        .into_iter()
        .map(|b| variables.iter().map(|v| b.get(v).cloned()).collect())
        .collect();
    Solutions { variables, rows }
}

fn eval_query(graph: &Graph, q: &Query) -> Vec<Binding> {
    let solutions = eval_pattern(graph, &q.pattern);
    let mut out = if q.is_grouped() {
        eval_grouped(q, solutions)
    } else {
        eval_plain(q, solutions)
    };
    let keep: BTreeSet<Variable> = q.projected_variables().into_iter().collect();
    for b in &mut out {
        b.retain(|k, _| keep.contains(k));
    }
    if q.distinct {
        let mut seen = BTreeSet::new();
        out.retain(|b| seen.insert(b.clone()));
    }
    out
}

fn eval_plain(q: &Query, solutions: Vec<Binding>) -> Vec<Binding> {
    let Projection::Items(items) = &q.projection else {
        return solutions;
    };
    solutions
        .into_iter()
        .map(|mut row| {
            for item in items {
                if let SelectItem::Expr { expr, alias } = item {
                    if let Ok(v) = eval_expr(expr, &row, &mut |_, _| Err(ExprError)) {
                        row.insert(alias.clone(), v.into_term());
                    }
                }
            }
            row
        })
        .collect()
}

fn eval_grouped(q: &Query, solutions: Vec<Binding>) -> Vec<Binding> {
    let mut groups: BTreeMap<Vec<Option<Term>>, Vec<Binding>> = BTreeMap::new();
    if q.group_by.is_empty() {
        groups.insert(Vec::new(), solutions);
    } else {
        for row in solutions {
            let key = q.group_by.iter().map(|v| row.get(v).cloned()).collect();
            groups.entry(key).or_default().push(row);
        }
    }
    let items: &[SelectItem] = match &q.projection {
        Projection::Items(items) => items,
        Projection::All => &[],
    };
    groups
        .into_iter()
        .map(|(key, rows)| {
            let mut out: Binding = q
                .group_by
                .iter()
                .zip(key)
                .filter_map(|(v, t)| t.map(|t| (v.clone(), t)))
                .collect();
            for item in items {
                if let SelectItem::Expr { expr, alias } = item {
                    let mut sum = |distinct: bool, inner: &Expression| aggregate_sum(distinct, inner, &rows);
                    if let Ok(v) = eval_expr(expr, &out, &mut sum) {
                        out.insert(alias.clone(), v.into_term());
                    }
                }
            }
            out
        })
        .collect()
}

fn aggregate_sum(distinct: bool, inner: &Expression, rows: &[Binding]) -> ExprResult {
    let mut seen = BTreeSet::new();
    let mut total = Numeric::Integer(0);
    for row in rows {
        let v = eval_expr(inner, row, &mut |_, _| Err(ExprError))?;
        let n = v.numeric().ok_or(ExprError)?;
        if distinct && !seen.insert(Value::Num(n).into_term()) {
            continue;
        }
        total = arith(ArithOp::Add, total, n)?;
    }
    Ok(Value::Num(total))
}

pub(crate) fn eval_pattern(graph: &Graph, p: &GraphPattern) -> Vec<Binding> {
    match p {
        GraphPattern::Bgp(tps) => eval_bgp(graph, tps, vec![Binding::new()]),
        GraphPattern::Group(items) => eval_group(graph, items),
        GraphPattern::Union(a, b) => {
            let mut out = eval_pattern(graph, a);
            out.extend(eval_pattern(graph, b));
            out
        }
        // a filter on its own filters the single empty solution
        GraphPattern::Filter(e) => {
            let empty = Binding::new();
            if filter_passes(e, &empty) {
                vec![empty]
            } else {
                Vec::new()
            }
        }
        GraphPattern::Values(t) => join_values(vec![Binding::new()], t),
        GraphPattern::SubSelect(q) => eval_query(graph, q),
    }
}

fn is_filter_only(items: &[GraphPattern]) -> bool {
    !items.is_empty() && items.iter().all(|i| matches!(i, GraphPattern::Filter(_)))
}

fn eval_group(graph: &Graph, items: &[GraphPattern]) -> Vec<Binding> {
    let mut current = vec![Binding::new()];
    let mut filters: Vec<&Expression> = Vec::new();
    for item in items {
        match item {
            GraphPattern::Filter(e) => filters.push(e),
            // `{ FILTER(...) }` constrains the enclosing group
            GraphPattern::Group(inner) if is_filter_only(inner) => {
                filters.extend(inner.iter().filter_map(|i| match i {
                    GraphPattern::Filter(e) => Some(e),
                    _ => None,
                }));
            }
            GraphPattern::Bgp(tps) => current = eval_bgp(graph, tps, current),
            GraphPattern::Values(t) => current = join_values(current, t),
            other => {
                let rhs = eval_pattern(graph, other);
                current = join(current, rhs);
            }
        }
        if current.is_empty() {
            break;
        }
    }
    current.retain(|row| filters.iter().all(|f| filter_passes(f, row)));
    current
}

fn compatible(a: &Binding, b: &Binding) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().all(|(k, v)| large.get(k).is_none_or(|w| w == v))
}

fn merge(a: &Binding, b: &Binding) -> Binding {
    let mut out = a.clone();
    for (k, v) in b {
        out.entry(k.clone()).or_insert_with(|| v.clone());
    }
    out
}

fn always_bound(rows: &[Binding]) -> BTreeSet<Variable> {
    let mut it = rows.iter();
    let Some(first) = it.next() else {
        return BTreeSet::new();
    };
    let mut set: BTreeSet<Variable> = first.keys().cloned().collect();
    for row in it {
        set.retain(|v| row.contains_key(v));
    }
    set
}

/// Hash join on the variables bound in every row of both sides, then a full compatibility check.
pub(crate) fn join(left: Vec<Binding>, right: Vec<Binding>) -> Vec<Binding> {
    if left.is_empty() || right.is_empty() {
        return Vec::new();
    }
    let keys: Vec<Variable> = always_bound(&left)
        .intersection(&always_bound(&right))
        .cloned()
        .collect();
    let mut out = Vec::new();
    if keys.is_empty() {
        for l in &left {
            for r in &right {
                if compatible(l, r) {
                    out.push(merge(l, r));
                }
            }
        }
        return out;
    }
    let mut table: HashMap<Vec<&Term>, Vec<&Binding>> = HashMap::new();
    for r in &right {
        table.entry(keys.iter().map(|k| &r[k]).collect()).or_default().push(r);
    }
    for l in &left {
        let key: Vec<&Term> = keys.iter().map(|k| &l[k]).collect();
        if let Some(matches) = table.get(&key) {
            for r in matches {
                if compatible(l, r) {
                    out.push(merge(l, r));
                }
            }
        }
    }
    out
}

/// Joins inline data into `current`; bound values are compared by value and the data term is kept.
fn join_values(current: Vec<Binding>, table: &ValuesTable) -> Vec<Binding> {
    let mut out = Vec::new();
    for row in &current {
        'data: for data in &table.rows {
            let mut merged = row.clone();
            for (v, cell) in table.variables.iter().zip(data) {
                let Some(cell) = cell else { continue };
                match row.get(v) {
                    Some(existing) if !same_value(existing, cell) => continue 'data,
                    Some(_) => {}
                    None => {
                        merged.insert(v.clone(), cell.clone());
                    }
                }
            }
            out.push(merged);
        }
    }
    out
}

enum Slot<'a> {
    Fixed(Option<&'a Term>),
    Var(&'a Variable),
}

fn fixed<'a>(slot: &Slot<'a>) -> Option<&'a Term> {
    match slot {
        Slot::Fixed(t) => *t,
        Slot::Var(_) => None,
    }
}

fn resolve<'a>(tp: &'a TermPattern, row: &'a Binding) -> Slot<'a> {
    match tp {
        TermPattern::Term(t) => Slot::Fixed(Some(t)),
        TermPattern::Var(v) => match row.get(v) {
            Some(t) => Slot::Fixed(Some(t)),
            None => Slot::Var(v),
        },
    }
}

/// Orders patterns greedily: fewest unbound positions, then fewest matches on
/// the constant positions; variables bound by earlier picks count as bound.
fn plan<'a>(graph: &Graph, tps: &'a [TriplePattern], bound: &BTreeSet<Variable>) -> Vec<&'a TriplePattern> {
    let mut bound = bound.clone();
    let mut remaining: Vec<&TriplePattern> = tps.iter().collect();
    let mut order = Vec::with_capacity(tps.len());
    while !remaining.is_empty() {
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, tp)| {
                let unbound = tp.variables().filter(|v| !bound.contains(*v)).collect::<BTreeSet<_>>().len();
                let constant = |p: &TermPattern| match p {
                    TermPattern::Term(t) => Some(t.clone()),
                    TermPattern::Var(_) => None,
                };
                let s = constant(&tp.subject);
                let p = constant(&tp.predicate).and_then(|t| t.as_iri().cloned());
                let o = constant(&tp.object);
                let size = match (&tp.predicate, &p) {
                    (TermPattern::Term(_), None) => 0,
                    _ => graph.count(s.as_ref(), p.as_ref(), o.as_ref()),
                };
                (i, (unbound, size))
            })
            .min_by_key(|&(i, cost)| (cost, i))
            .expect("remaining is non-empty");
        let tp = remaining.remove(idx);
        bound.extend(tp.variables().cloned());
        order.push(tp);
    }
    order
}

pub(crate) fn eval_bgp(graph: &Graph, tps: &[TriplePattern], seeds: Vec<Binding>) -> Vec<Binding> {
    if tps.is_empty() {
        return seeds;
    }
    let order = plan(graph, tps, &always_bound(&seeds));
    let mut out = Vec::new();
    for seed in seeds {
        extend(graph, &order, seed, &mut out);
    }
    out
}

fn extend(graph: &Graph, order: &[&TriplePattern], row: Binding, out: &mut Vec<Binding>) {
    let Some((tp, rest)) = order.split_first() else {
        out.push(row);
        return;
    };
    let s = resolve(&tp.subject, &row);
    let p = resolve(&tp.predicate, &row);
    let o = resolve(&tp.object, &row);
    let p_iri: Option<Iri> = match &p {
        Slot::Fixed(Some(t)) => match t.as_iri() {
            Some(i) => Some(i.clone()),
            None => return,
        },
        _ => None,
    };
    let candidates: Vec<_> = graph.matches(fixed(&s), p_iri.as_ref(), fixed(&o)).collect();
    for triple in candidates {
        let mut next = row.clone();
        let mut ok = true;
        for (slot, value) in [
            (&s, triple.subject),
            (&p, Term::Iri(triple.predicate)),
            (&o, triple.object),
        ] {
            if let Slot::Var(v) = slot {
                match next.get(*v) {
                    Some(existing) if *existing != value => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        next.insert((*v).clone(), value);
                    }
                }
            }
        }
        if ok {
            extend(graph, rest, next, out);
        }
    }
}
