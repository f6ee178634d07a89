use std::collections::BTreeMap;

use super::{Iri, RdfError};

/// Prefix → namespace IRI map used for CURIE expansion and compaction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixTable {
    entries: BTreeMap<String, Iri>,
}

/// Whether `local` can be written as the local part of a prefixed name.
pub(crate) fn is_valid_local(local: &str) -> bool {
    if local.is_empty() {
        return true;
    }
    let first = local.chars().next().unwrap_or('.');
    local
        .chars()
        .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && first != '.'
        && first != '-'
        && !local.ends_with('.')
}

pub(crate) fn is_valid_prefix(prefix: &str) -> bool {
    prefix.is_empty()
        || (prefix.chars().next().is_some_and(|c| c.is_alphabetic())
            && prefix
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
            && !prefix.ends_with('.'))
}

impl PrefixTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, prefix: &str, namespace: Iri) -> Option<Iri> {
        self.entries.insert(prefix.to_owned(), namespace)
    }

    pub fn namespace(&self, prefix: &str) -> Option<&Iri> {
        self.entries.get(prefix)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands `prefix:local` against the table.
    pub fn expand_curie(&self, curie: &str) -> Result<Iri, RdfError> {
        let (prefix, local) = curie
            .split_once(':')
            .ok_or_else(|| RdfError::NotACurie(curie.to_owned()))?;
        let ns = self
            .entries
            .get(prefix)
            .ok_or_else(|| RdfError::UnknownPrefix(prefix.to_owned()))?;
        Iri::new(format!("{}{}", ns.as_str(), local))
    }

    /// Compacts an IRI against the longest matching namespace; falls back to `<iri>`.
    pub fn compact_iri(&self, iri: &Iri) -> String {
        self.try_compact(iri)
            .unwrap_or_else(|| format!("<{}>", iri.as_str()))
    }

    pub fn try_compact(&self, iri: &Iri) -> Option<String> {
        let value = iri.as_str();
        self.entries
            .iter()
            .filter(|(_, ns)| value.starts_with(ns.as_str()))
            .max_by_key(|(prefix, ns)| (ns.as_str().len(), std::cmp::Reverse(prefix.as_str())))
            .and_then(|(prefix, ns)| {
                let local = &value[ns.as_str().len()..];
                is_valid_local(local).then(|| format!("{prefix}:{local}"))
            })
    }
}
