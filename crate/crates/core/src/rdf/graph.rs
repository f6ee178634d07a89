use std::collections::{BTreeSet, HashMap};
use std::ops::RangeInclusive;

use super::{Iri, PrefixTable, RdfError, Term, Triple};

type Key = [u32; 3];

/// An in-memory triple set with three interned access orders
/// (subject-, predicate- and object-first).
#[derive(Clone, Default)]
pub struct Graph {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    prefixes: PrefixTable,
}

fn full_range(a: u32) -> RangeInclusive<Key> {
    [a, 0, 0]..=[a, u32::MAX, u32::MAX]
}

fn pair_range(a: u32, b: u32) -> RangeInclusive<Key> {
    [a, b, 0]..=[a, b, u32::MAX]
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: PrefixTable) -> Self {
        Graph {
            prefixes,
            ..Self::default()
        }
    }

    pub fn prefixes(&self) -> &PrefixTable {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixTable {
        &mut self.prefixes
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Sizes of the three access orders; always equal to `len()`.
    pub fn index_sizes(&self) -> (usize, usize, usize) {
        (self.spo.len(), self.pos.len(), self.osp.len())
    }

    fn intern(&mut self, term: &Term) -> u32 {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = u32::try_from(self.terms.len()).expect("term dictionary overflow");
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    fn lookup(&self, term: &Term) -> Option<u32> {
        self.ids.get(term).copied()
    }

    /// Inserts a triple, returning whether it was absent before.
    pub fn insert(&mut self, triple: Triple) -> Result<bool, RdfError> {
        if triple.subject.is_literal() {
            return Err(RdfError::LiteralSubject(triple.subject.to_ntriples()));
        }
        let s = self.intern(&triple.subject);
        let p = self.intern(&Term::Iri(triple.predicate));
        let o = self.intern(&triple.object);
        if !self.spo.insert([s, p, o]) {
            return Ok(false);
        }
        self.pos.insert([p, o, s]);
        self.osp.insert([o, s, p]);
        Ok(true)
    }

    /// Convenience wrapper that builds and inserts a triple.
    pub fn add(&mut self, s: impl Into<Term>, p: &Iri, o: impl Into<Term>) -> Result<bool, RdfError> {
        self.insert(Triple::new(s, p.clone(), o)?)
    }

    /// Inserts every triple of `other`, returning how many were new.
    pub fn merge(&mut self, other: &Graph) -> usize {
        let mut added = 0;
        for t in other.iter() {
            if self.insert(t).expect("graph triples are well formed") {
                added += 1;
            }
        }
        for (prefix, ns) in other.prefixes.iter() {
            if self.prefixes.namespace(prefix).is_none() {
                self.prefixes.insert(prefix, ns.clone());
            }
        }
        added
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        let (Some(s), Some(p), Some(o)) = (
            self.lookup(&triple.subject),
            self.lookup(&Term::Iri(triple.predicate.clone())),
            self.lookup(&triple.object),
        ) else {
            return false;
        };
        self.spo.contains(&[s, p, o])
    }

    fn triple(&self, [s, p, o]: Key) -> Triple {
        let predicate = match &self.terms[p as usize] {
            Term::Iri(iri) => iri.clone(),
            other => unreachable!("non-IRI predicate {other:?} in index"),
        };
        Triple {
            subject: self.terms[s as usize].clone(),
            predicate,
            object: self.terms[o as usize].clone(),
        }
    }

    /// Every triple, in subject-first index order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&k| self.triple(k))
    }

    fn match_keys<'a>(
        &'a self,
        s: Option<&Term>,
        p: Option<&Iri>,
        o: Option<&Term>,
    ) -> Option<Box<dyn Iterator<Item = Key> + 'a>> {
        let s = match s {
            Some(t) => Some(self.lookup(t)?),
            None => None,
        };
        let p = match p {
            Some(iri) => Some(self.lookup(&Term::Iri(iri.clone()))?),
            None => None,
        };
        let o = match o {
            Some(t) => Some(self.lookup(t)?),
            None => None,
        };
        let it: Box<dyn Iterator<Item = Key> + 'a> = match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                Box::new(self.spo.contains(&[s, p, o]).then_some([s, p, o]).into_iter())
            }
            (Some(s), Some(p), None) => Box::new(self.spo.range(pair_range(s, p)).copied()),
            (Some(s), None, Some(o)) => {
                Box::new(self.osp.range(pair_range(o, s)).map(|&[o, s, p]| [s, p, o]))
            }
            (Some(s), None, None) => Box::new(self.spo.range(full_range(s)).copied()),
            (None, Some(p), Some(o)) => {
                Box::new(self.pos.range(pair_range(p, o)).map(|&[p, o, s]| [s, p, o]))
            }
            (None, Some(p), None) => {
                Box::new(self.pos.range(full_range(p)).map(|&[p, o, s]| [s, p, o]))
            }
            (None, None, Some(o)) => {
                Box::new(self.osp.range(full_range(o)).map(|&[o, s, p]| [s, p, o]))
            }
            (None, None, None) => Box::new(self.spo.iter().copied()),
        };
        Some(it)
    }

    /// Triples matching every bound position; `None` is a wildcard.
    pub fn matches<'a>(
        &'a self,
        s: Option<&Term>,
        p: Option<&Iri>,
        o: Option<&Term>,
    ) -> impl Iterator<Item = Triple> + 'a {
        self.match_keys(s, p, o)
            .into_iter()
            .flatten()
            .map(move |k| self.triple(k))
    }

    /// Number of triples matching the pattern.
    pub fn count(&self, s: Option<&Term>, p: Option<&Iri>, o: Option<&Term>) -> usize {
        self.match_keys(s, p, o).map_or(0, |it| it.count())
    }

    /// Objects of `(s, p, ?)`.
    pub fn objects<'a>(&'a self, s: &Term, p: &Iri) -> impl Iterator<Item = Term> + 'a {
        self.matches(Some(s), Some(p), None).map(|t| t.object)
    }

    /// Subjects of `(?, p, o)`.
    pub fn subjects<'a>(&'a self, p: &Iri, o: &Term) -> impl Iterator<Item = Term> + 'a {
        self.matches(None, Some(p), Some(o)).map(|t| t.subject)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("len", &self.len()).finish()
    }
}

impl PartialEq for Graph {
    /// Graphs compare as triple sets; prefix tables are presentation only.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(&t))
    }
}

impl Eq for Graph {}
