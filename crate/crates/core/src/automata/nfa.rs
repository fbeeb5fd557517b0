//! Thompson construction and subset construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{Dfa, Regex};
use crate::Result;

#[derive(Debug, Default)]
struct State {
    epsilon: Vec<usize>,
    on: Option<(char, usize)>,
}

#[derive(Debug)]
pub(crate) struct Nfa {
    states: Vec<State>,
    start: usize,
    accept: usize,
}

impl Nfa {
    pub(crate) fn thompson(regex: &Regex) -> Nfa {
        let mut nfa = Nfa {
            states: Vec::new(),
            start: 0,
            accept: 0,
        };
        let (start, accept) = nfa.build(regex);
        nfa.start = start;
        nfa.accept = accept;
        nfa
    }

    fn fresh(&mut self) -> usize {
        self.states.push(State::default());
        self.states.len() - 1
    }

    /// Adds a fragment for `regex`, returning its entry and exit states.
    fn build(&mut self, regex: &Regex) -> (usize, usize) {
        match regex {
            Regex::Empty => (self.fresh(), self.fresh()),
            Regex::Epsilon => {
                let (s, t) = (self.fresh(), self.fresh());
                self.states[s].epsilon.push(t);
                (s, t)
            }
            Regex::Symbol(c) => {
                let (s, t) = (self.fresh(), self.fresh());
                self.states[s].on = Some((*c, t));
                (s, t)
            }
            Regex::Concat(a, b) => {
                let (s1, t1) = self.build(a);
                let (s2, t2) = self.build(b);
                self.states[t1].epsilon.push(s2);
                (s1, t2)
            }
            Regex::Union(a, b) => {
                let s = self.fresh();
                let (s1, t1) = self.build(a);
                let (s2, t2) = self.build(b);
                let t = self.fresh();
                self.states[s].epsilon.extend([s1, s2]);
                self.states[t1].epsilon.push(t);
                self.states[t2].epsilon.push(t);
                (s, t)
            }
            Regex::Star(a) => {
                let s = self.fresh();
                let (s1, t1) = self.build(a);
                let t = self.fresh();
                self.states[s].epsilon.extend([s1, t]);
                self.states[t1].epsilon.extend([s1, t]);
                (s, t)
            }
        }
    }

    fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(q) = stack.pop() {
            if seen.insert(q) {
                stack.extend(self.states[q].epsilon.iter().copied());
            }
        }
        seen
    }

    /// Subset construction. The result is total; the empty subset becomes a
    /// sink when it is reachable.
    pub(crate) fn determinize(&self, alphabet: &[char]) -> Result<Dfa> {
        let alphabet = Dfa::normalize_alphabet(alphabet)?;
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let start = self.closure([self.start]);
        ids.insert(start.clone(), 0);
        subsets.push(start);

        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        while next < subsets.len() {
            let mut row = vec![0; alphabet.len()];
            for (k, &c) in alphabet.iter().enumerate() {
                let moved = subsets[next]
                    .iter()
                    .filter_map(|&q| match self.states[q].on {
                        Some((sym, to)) if sym == c => Some(to),
                        _ => None,
                    });
                let target = self.closure(moved);
                row[k] = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        ids.insert(target.clone(), id);
                        subsets.push(target);
                        id
                    }
                };
            }
            delta.push(row);
            next += 1;
        }
        let accept = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(&self.accept))
            .map(|(i, _)| i);
        Dfa::new(alphabet, delta, 0, accept)
    }
}
