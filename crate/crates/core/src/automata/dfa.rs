use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A complete deterministic finite automaton.
///
/// States are `0..num_states()`; the alphabet is kept sorted and symbols are
/// addressed by their index in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<char>,
    // Row-major: delta[state * |alphabet| + symbol].
    delta: Vec<usize>,
    start: usize,
    accept: Vec<bool>,
}

impl Dfa {
    pub(crate) fn normalize_alphabet(alphabet: &[char]) -> Result<Vec<char>> {
        let mut sorted = alphabet.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alphabet.len() {
            return Err(Error::InvalidDfa("alphabet has repeated symbols".into()));
        }
        Ok(sorted)
    }

    /// Builds a DFA from a transition table whose columns follow `alphabet`.
    ///
    /// The alphabet may be given in any order; it is sorted and the columns
    /// are permuted along with it.
    pub fn new(
        alphabet: Vec<char>,
        delta: Vec<Vec<usize>>,
        start: usize,
        accept: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let sorted = Self::normalize_alphabet(&alphabet)?;
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidDfa("no states".into()));
        }
        if start >= n {
            return Err(Error::InvalidDfa(format!(
                "start state {start} out of range"
            )));
        }
        let column: Vec<usize> = sorted
            .iter()
            .map(|c| alphabet.iter().position(|a| a == c).expect("same symbols"))
            .collect();
        let mut table = Vec::with_capacity(n * sorted.len());
        for (q, row) in delta.iter().enumerate() {
            if row.len() != sorted.len() {
                return Err(Error::InvalidDfa(format!(
                    "state {q} has {} transitions for {} symbols",
                    row.len(),
                    sorted.len()
                )));
            }
            for &k in &column {
                if row[k] >= n {
                    return Err(Error::InvalidDfa(format!(
                        "transition from {q} to unknown state {}",
                        row[k]
                    )));
                }
                table.push(row[k]);
            }
        }
        let mut accepting = vec![false; n];
        for q in accept {
            if q >= n {
                return Err(Error::InvalidDfa(format!(
                    "accepting state {q} out of range"
                )));
            }
            accepting[q] = true;
        }
        Ok(Self {
            alphabet: sorted,
            delta: table,
            start,
            accept: accepting,
        })
    }

    /// The automaton with one state accepting everything (or nothing).
    pub fn trivial(alphabet: &[char], accept_all: bool) -> Result<Self> {
        let alphabet = Self::normalize_alphabet(alphabet)?;
        let k = alphabet.len();
        Ok(Self {
            alphabet,
            delta: vec![0; k],
            start: 0,
            accept: vec![accept_all],
        })
    }

    pub(crate) fn from_parts(
        alphabet: Vec<char>,
        delta: Vec<usize>,
        start: usize,
        accept: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), accept.len() * alphabet.len());
        Self {
            alphabet,
            delta,
            start,
            accept,
        }
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accept.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accept[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accept
            .iter()
            .enumerate()
            .filter_map(|(q, &a)| a.then_some(q))
    }

    /// Successor of `state` on the symbol with index `symbol`.
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.alphabet.len() + symbol]
    }

    pub fn symbol_index(&self, c: char) -> Option<usize> {
        self.alphabet.binary_search(&c).ok()
    }

    /// State reached from `state` after reading `word`.
    pub fn run_from(&self, state: usize, word: &str) -> Result<usize> {
        let mut q = state;
        for (pos, c) in word.chars().enumerate() {
            let k = self.symbol_index(c).ok_or_else(|| {
                Error::AlphabetMismatch(format!("symbol {c:?} at position {pos}"))
            })?;
            q = self.next(q, k);
        }
        Ok(q)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.is_accepting(self.run_from(self.start, word)?))
    }

    pub fn complement(&self) -> Self {
        Self {
            accept: self.accept.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// True when no string is accepted.
    pub fn is_empty(&self) -> bool {
        self.reachable()
            .iter()
            .zip(&self.accept)
            .all(|(&r, &a)| !(r && a))
    }

    /// Renumbers the reachable states in breadth-first order from the start,
    /// visiting successors in alphabet order. Unreachable states are dropped.
    pub fn canonical(&self) -> Self {
        let k = self.alphabet.len();
        let mut order = vec![usize::MAX; self.num_states()];
        let mut visit = vec![self.start];
        order[self.start] = 0;
        let mut i = 0;
        while i < visit.len() {
            let q = visit[i];
            for a in 0..k {
                let t = self.next(q, a);
                if order[t] == usize::MAX {
                    order[t] = visit.len();
                    visit.push(t);
                }
            }
            i += 1;
        }
        let delta = visit
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| order[self.next(q, a)])
            .collect();
        let accept = visit.iter().map(|&q| self.accept[q]).collect();
        Self::from_parts(self.alphabet.clone(), delta, 0, accept)
    }

    /// The unique minimal DFA for the same language, in canonical numbering.
    ///
    /// States are split by acceptance and then refined by the classes of
    /// their successors until the partition is stable.
    pub fn minimize(&self) -> Self {
        let dfa = self.canonical();
        let n = dfa.num_states();
        let k = dfa.alphabet.len();
        let mut class: Vec<usize> = dfa.accept.iter().map(|&a| a as usize).collect();
        let mut classes = if dfa.accept.iter().all(|&a| a) || dfa.accept.iter().all(|&a| !a) {
            class.iter_mut().for_each(|c| *c = 0);
            1
        } else {
            2
        };
        loop {
            let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut refined = Vec::with_capacity(n);
            for q in 0..n {
                let mut signature = Vec::with_capacity(k + 1);
                signature.push(class[q]);
                signature.extend((0..k).map(|a| class[dfa.next(q, a)]));
                let next_id = ids.len();
                refined.push(*ids.entry(signature).or_insert(next_id));
            }
            let count = ids.len();
            class = refined;
            if count == classes {
                break;
            }
            classes = count;
        }
        let mut delta = vec![0; classes * k];
        let mut accept = vec![false; classes];
        for q in 0..n {
            let c = class[q];
            accept[c] = dfa.accept[q];
            for a in 0..k {
                delta[c * k + a] = class[dfa.next(q, a)];
            }
        }
        Self::from_parts(dfa.alphabet.clone(), delta, class[dfa.start], accept).canonical()
    }

    /// Language equality, decided by emptiness of the symmetric difference.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        let xor = super::product_automaton(&[self.clone(), other.clone()], usize::MAX, |acc| {
            acc[0] != acc[1]
        })?;
        Ok(xor.is_empty())
    }

    /// Language inclusion `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        let diff = super::product_automaton(&[self.clone(), other.clone()], usize::MAX, |acc| {
            acc[0] && !acc[1]
        })?;
        Ok(diff.is_empty())
    }
}
