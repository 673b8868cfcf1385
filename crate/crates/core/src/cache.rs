//! Process-wide memo tables for exact forms.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Memo table safe for concurrent readers. The value is computed outside the
/// lock, so recursive lookups into the same table cannot deadlock.
pub struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Self {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get_or_try<E>(&self, key: &K, compute: impl FnOnce() -> Result<V, E>) -> Result<V, E> {
        if let Some(v) = self.map.read().expect("memo lock poisoned").get(key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.map
            .write()
            .expect("memo lock poisoned")
            .entry(key.clone())
            .or_insert_with(|| v.clone());
        Ok(v)
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
