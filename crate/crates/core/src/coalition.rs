//! Compact agent-set representation.
//!
//! A coalition is a set of agent ids stored as a fixed-width bitset. The
//! width caps instances at [`Coalition::MAX_AGENTS`] agents, which is
//! comfortably above the largest benchmark scale (150 agents).

use core::fmt;

use crate::model::AgentId;

const WORDS: usize = 4;

/// A set of agents, used as the key of coalition-value memo tables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition {
    words: [u64; WORDS],
}

impl Coalition {
    /// Largest agent id representable plus one.
    pub const MAX_AGENTS: usize = WORDS * 64;

    pub const fn empty() -> Self {
        Coalition { words: [0; WORDS] }
    }

    pub fn singleton(agent: AgentId) -> Self {
        let mut c = Self::empty();
        c.insert(agent);
        c
    }

    pub fn insert(&mut self, agent: AgentId) {
        let i = agent.0 as usize;
        debug_assert!(i < Self::MAX_AGENTS);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, agent: AgentId) {
        let i = agent.0 as usize;
        debug_assert!(i < Self::MAX_AGENTS);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, agent: AgentId) -> bool {
        let i = agent.0 as usize;
        i < Self::MAX_AGENTS && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Agent ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, w)| {
            let mut bits = *w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(AgentId((wi * 64) as u32 + b))
            })
        })
    }

    /// Raw words, ascending; used for seed derivation.
    pub fn words(&self) -> &[u64; WORDS] {
        &self.words
    }
}

impl FromIterator<AgentId> for Coalition {
    fn from_iter<T: IntoIterator<Item = AgentId>>(iter: T) -> Self {
        let mut c = Self::empty();
        for a in iter {
            c.insert(a);
        }
        c
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", a.0)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut c = Coalition::empty();
        assert!(c.is_empty());
        c.insert(AgentId(0));
        c.insert(AgentId(65));
        c.insert(AgentId(200));
        assert_eq!(c.len(), 3);
        assert!(c.contains(AgentId(65)));
        assert!(!c.contains(AgentId(64)));
        let ids: alloc::vec::Vec<u32> = c.iter().map(|a| a.0).collect();
        assert_eq!(ids, alloc::vec![0, 65, 200]);
        c.remove(AgentId(65));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn ordering_is_total_and_stable() {
        let a = Coalition::from_iter([AgentId(1)]);
        let b = Coalition::from_iter([AgentId(1), AgentId(2)]);
        assert!(a < b);
        assert_eq!(a, Coalition::singleton(AgentId(1)));
    }
}
