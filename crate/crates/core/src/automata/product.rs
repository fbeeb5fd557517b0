use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::Dfa;
use crate::{Error, Result};

/// Default cap on the number of reachable product states.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Reachable part of the synchronous product of `dfas`.
///
/// A product state is the tuple of component states; it accepts when
/// `accept` holds for the tuple of component acceptance flags. The result is
/// not minimized.
pub fn product_automaton(
    dfas: &[Dfa],
    max_states: usize,
    accept: impl Fn(&[bool]) -> bool,
) -> Result<Dfa> {
    let first = dfas
        .first()
        .ok_or_else(|| Error::InvalidDfa("product of no automata".into()))?;
    let alphabet = first.alphabet().to_vec();
    if let Some((i, d)) = dfas
        .iter()
        .enumerate()
        .find(|(_, d)| d.alphabet() != alphabet)
    {
        return Err(Error::AlphabetMismatch(format!(
            "automaton {i} has alphabet {:?}, expected {:?}",
            d.alphabet(),
            alphabet
        )));
    }
    let k = alphabet.len();

    let start: Vec<usize> = dfas.iter().map(Dfa::start).collect();
    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut tuples = alloc::vec![start.clone()];
    ids.insert(start, 0);
    let mut delta = Vec::new();
    let mut flags = Vec::with_capacity(dfas.len());
    let mut accepting = Vec::new();

    let mut i = 0;
    while i < tuples.len() {
        flags.clear();
        flags.extend(dfas.iter().zip(&tuples[i]).map(|(d, &q)| d.is_accepting(q)));
        accepting.push(accept(&flags));
        for a in 0..k {
            let target: Vec<usize> = dfas
                .iter()
                .zip(&tuples[i])
                .map(|(d, &q)| d.next(q, a))
                .collect();
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    let id = tuples.len();
                    if id >= max_states {
                        return Err(Error::ProductTooLarge { limit: max_states });
                    }
                    ids.insert(target.clone(), id);
                    tuples.push(target);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    Ok(Dfa::from_parts(alphabet, delta, 0, accepting))
}

/// Minimal DFA for the strings accepted by every automaton.
pub fn intersection_language(dfas: &[Dfa], max_states: usize) -> Result<Dfa> {
    Ok(product_automaton(dfas, max_states, |acc| acc.iter().all(|&a| a))?.minimize())
}

/// Minimal DFA for the density language of a finite collection: the strings
/// accepted by strictly more than half of the automata.
pub fn majority_product(dfas: &[Dfa], max_states: usize) -> Result<Dfa> {
    let n = dfas.len();
    let product = product_automaton(dfas, max_states, |acc| {
        2 * acc.iter().filter(|&&a| a).count() > n
    })?;
    Ok(product.minimize())
}
