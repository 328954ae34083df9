use alloc::collections::{BTreeMap, BTreeSet};
use core::fmt;

use crate::cost::Cost;
use crate::graph::CityId;

/// Expansion priority: ascending `primary`, then `secondary`, then owner.
///
/// `primary` is `f = g + h` for A* and `K1` for LPA*/D* Lite; `secondary` is
/// `g` or `K2`. Owner ids follow name order, so the last tiebreak is
/// alphabetical and runs are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PriorityKey {
    pub primary: Cost,
    pub secondary: Cost,
    pub owner: CityId,
}

impl PriorityKey {
    pub fn new(primary: Cost, secondary: Cost, owner: CityId) -> Self {
        PriorityKey {
            primary,
            secondary,
            owner,
        }
    }

    /// The two-level key without the owner tiebreak.
    pub fn rank(&self) -> (Cost, Cost) {
        (self.primary, self.secondary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueueError {
    Empty,
    DuplicateOwner(CityId),
}

impl fmt::Display for QueueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueueError::Empty => f.write_str("pop from empty queue"),
            QueueError::DuplicateOwner(id) => write!(f, "vertex #{} already queued", id.index()),
        }
    }
}

/// Min-priority queue holding at most one key per owner.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyedQueue {
    order: BTreeSet<PriorityKey>,
    keys: BTreeMap<CityId, PriorityKey>,
}

impl KeyedQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, owner: CityId) -> bool {
        self.keys.contains_key(&owner)
    }

    pub fn key_of(&self, owner: CityId) -> Option<PriorityKey> {
        self.keys.get(&owner).copied()
    }

    pub fn peek_min(&self) -> Option<PriorityKey> {
        self.order.first().copied()
    }

    pub fn insert(&mut self, key: PriorityKey) -> Result<(), QueueError> {
        if self.keys.contains_key(&key.owner) {
            return Err(QueueError::DuplicateOwner(key.owner));
        }
        self.keys.insert(key.owner, key);
        self.order.insert(key);
        Ok(())
    }

    /// Replaces the owner's key, inserting it if absent.
    pub fn update(&mut self, key: PriorityKey) {
        if let Some(old) = self.keys.insert(key.owner, key) {
            self.order.remove(&old);
        }
        self.order.insert(key);
    }

    pub fn remove(&mut self, owner: CityId) -> Option<PriorityKey> {
        let old = self.keys.remove(&owner)?;
        self.order.remove(&old);
        Some(old)
    }

    pub fn pop_min(&mut self) -> Result<PriorityKey, QueueError> {
        let key = self.order.pop_first().ok_or(QueueError::Empty)?;
        self.keys.remove(&key.owner);
        Ok(key)
    }

    /// Keys in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = &PriorityKey> + '_ {
        self.order.iter()
    }
}
