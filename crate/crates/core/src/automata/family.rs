use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{regex_to_dfa, Dfa, Regex};
use crate::collections::IndexedFamily;
use crate::density::{most_of_naturals, Density, EventuallyPeriodicSet};
use crate::{Error, Result};

/// An indexed family of regular languages `{L_i}` with per-string
/// certificates for the index sets `{i : w ∈ L_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageFamily {
    kind: LanguageFamilyKind,
    alphabet: Vec<char>,
    candidate_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageFamilyKind {
    /// `L_0 = {01}`, `L_{n+1} = L_n ∪ {0^{n+1} 1^{n+1}}`.
    Cumulative0n1n,
    /// `L_i = L(dfas[i mod dfas.len()])`.
    Cyclic(Vec<Dfa>),
}

impl LanguageFamily {
    /// The cumulative `0ⁿ1ⁿ` family over `{0, 1}`. Candidates for
    /// most-intersection are all strings of length at most `candidate_len`.
    pub fn cumulative_0n1n(candidate_len: usize) -> Self {
        Self {
            kind: LanguageFamilyKind::Cumulative0n1n,
            alphabet: alloc::vec!['0', '1'],
            candidate_len,
        }
    }

    pub fn cyclic(dfas: Vec<Dfa>, candidate_len: usize) -> Result<Self> {
        let first = dfas
            .first()
            .ok_or_else(|| Error::InvalidFamily("cyclic family needs an automaton".into()))?;
        let alphabet = first.alphabet().to_vec();
        if dfas.iter().any(|d| d.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch(
                "cyclic family alphabets differ".into(),
            ));
        }
        Ok(Self {
            kind: LanguageFamilyKind::Cyclic(dfas),
            alphabet,
            candidate_len,
        })
    }

    pub fn kind(&self) -> &LanguageFamilyKind {
        &self.kind
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// A DFA for the member `L_index`.
    pub fn language(&self, index: u64) -> Dfa {
        match &self.kind {
            LanguageFamilyKind::Cumulative0n1n => {
                let top = index.max(1) as usize;
                let words = (1..=top).map(|k| {
                    let mut w = "0".repeat(k);
                    w.push_str(&"1".repeat(k));
                    Regex::word(&w)
                });
                regex_to_dfa(&Regex::any_of(words), &self.alphabet).expect("binary alphabet")
            }
            LanguageFamilyKind::Cyclic(dfas) => dfas[(index % dfas.len() as u64) as usize].clone(),
        }
    }

    fn check_alphabet(&self, word: &str) -> Result<()> {
        match word
            .chars()
            .enumerate()
            .find(|(_, c)| !self.alphabet.contains(c))
        {
            Some((pos, c)) => Err(Error::AlphabetMismatch(format!(
                "symbol {c:?} at position {pos} is not in {:?}",
                self.alphabet
            ))),
            None => Ok(()),
        }
    }
}

/// `Some(k)` when `word` is `0^k 1^k` with `k ≥ 1`.
fn block_exponent(word: &str) -> Option<usize> {
    let zeros = word.chars().take_while(|&c| c == '0').count();
    let rest = &word[zeros..];
    (zeros >= 1 && rest.len() == zeros && rest.chars().all(|c| c == '1')).then_some(zeros)
}

impl IndexedFamily for LanguageFamily {
    type Element = String;

    /// All strings up to the candidate length, in length-lexicographic order.
    fn candidates(&self) -> Vec<String> {
        strings_up_to(&self.alphabet, self.candidate_len)
    }

    fn contains(&self, word: &String, index: u64) -> bool {
        match &self.kind {
            LanguageFamilyKind::Cumulative0n1n => {
                block_exponent(word).is_some_and(|k| k as u64 <= index.max(1))
            }
            LanguageFamilyKind::Cyclic(dfas) => dfas[(index % dfas.len() as u64) as usize]
                .accepts(word)
                .unwrap_or(false),
        }
    }

    fn certificate(&self, word: &String) -> Option<EventuallyPeriodicSet> {
        if self.check_alphabet(word).is_err() {
            return Some(EventuallyPeriodicSet::empty());
        }
        Some(match &self.kind {
            // 01 is in L_0 already; 0^k 1^k for k ≥ 2 first appears in L_k.
            LanguageFamilyKind::Cumulative0n1n => match block_exponent(word) {
                Some(1) => EventuallyPeriodicSet::naturals(),
                Some(k) => EventuallyPeriodicSet::at_least(k),
                None => EventuallyPeriodicSet::empty(),
            },
            LanguageFamilyKind::Cyclic(dfas) => {
                let hits = dfas
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.accepts(word).unwrap_or(false))
                    .map(|(i, _)| i);
                EventuallyPeriodicSet::new(Vec::new(), dfas.len(), hits).expect("period ≥ 1")
            }
        })
    }
}

/// Every string over `alphabet` of length at most `max_len`, shortest first
/// and lexicographic within a length.
pub fn strings_up_to(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut sorted = alphabet.to_vec();
    sorted.sort_unstable();
    let mut out = alloc::vec![String::new()];
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = out.len();
        for i in level_start..level_end {
            for &c in &sorted {
                let mut w = out[i].clone();
                w.push(c);
                out.push(w);
            }
        }
        level_start = level_end;
    }
    out
}

/// Membership of `word` in the density language, with the density of its
/// index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityMembership {
    pub member: bool,
    pub density: Density,
    pub certificate: EventuallyPeriodicSet,
}

pub fn density_language_membership(
    family: &LanguageFamily,
    word: &str,
) -> Result<DensityMembership> {
    family.check_alphabet(word)?;
    let word = String::from(word);
    let certificate = family
        .certificate(&word)
        .ok_or_else(|| Error::CertificateRequired(word.clone()))?;
    Ok(DensityMembership {
        member: !certificate.is_finite() && most_of_naturals(&certificate),
        density: certificate.density(),
        certificate,
    })
}
