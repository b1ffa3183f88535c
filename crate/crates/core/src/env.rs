//! Global environment of checked definitions.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::term::{Name, RcTerm};

#[derive(Clone, Debug)]
pub struct GlobalEntry {
    pub name: Name,
    /// Closed type.
    pub ty: RcTerm,
    /// Closed body; `None` for kernel postulates, which never unfold.
    pub body: Option<RcTerm>,
}

/// Checked top-level definitions in declaration order.
///
/// Every body checks against its type using only the entries before it.
/// Names whose declaration failed are remembered as poisoned so later
/// references report the dependency instead of "unbound identifier".
#[derive(Clone, Debug, Default)]
pub struct Environment {
    entries: Vec<Arc<GlobalEntry>>,
    index: HashMap<Name, usize>,
    poisoned: HashSet<Name>,
}

impl Environment {
    /// An environment with no definitions and no kernel postulates.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<&Arc<GlobalEntry>> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn is_poisoned(&self, name: &str) -> bool {
        self.poisoned.contains(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Arc<GlobalEntry>> {
        self.entries.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().map(|e| &e.name)
    }

    /// Add an already-checked entry.
    pub(crate) fn insert(&mut self, entry: GlobalEntry) {
        self.poisoned.remove(&entry.name);
        self.index.insert(entry.name.clone(), self.entries.len());
        self.entries.push(Arc::new(entry));
    }

    pub(crate) fn poison(&mut self, name: Name) {
        if !self.index.contains_key(&name) {
            self.poisoned.insert(name);
        }
    }
}
