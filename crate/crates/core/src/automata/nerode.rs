use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Pairwise distinguishability of a list of prefixes with respect to a
/// language, restricted to a finite list of suffixes.
///
/// Prefixes `u` and `v` are distinguished only through an explicit witness
/// `s` with `us ∈ L` and `vs ∉ L` (or the reverse). The number of classes is a
/// lower bound on the state count of any DFA recognizing `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerodeEvidence {
    pub prefixes: Vec<String>,
    pub suffixes: Vec<String>,
    /// `witnesses[i][j]` is the index of the first suffix separating prefixes
    /// `i` and `j`.
    pub witnesses: Vec<Vec<Option<usize>>>,
    /// Class of each prefix; prefixes share a class when no listed suffix
    /// separates them.
    pub classes: Vec<usize>,
    pub distinguishable: usize,
}

impl NerodeEvidence {
    pub fn witness(&self, i: usize, j: usize) -> Option<&str> {
        self.witnesses[i][j].map(|s| self.suffixes[s].as_str())
    }

    /// One prefix per class; these are pairwise distinguished.
    pub fn representatives(&self) -> Vec<&str> {
        let mut seen = alloc::vec![false; self.distinguishable];
        let mut out = Vec::new();
        for (p, &c) in self.prefixes.iter().zip(&self.classes) {
            if !seen[c] {
                seen[c] = true;
                out.push(p.as_str());
            }
        }
        out
    }
}

pub fn nerode_evidence(
    member: impl Fn(&str) -> bool,
    prefixes: &[String],
    suffixes: &[String],
) -> NerodeEvidence {
    let mut word = String::new();
    let rows: Vec<Vec<bool>> = prefixes
        .iter()
        .map(|p| {
            suffixes
                .iter()
                .map(|s| {
                    word.clear();
                    word.push_str(p);
                    word.push_str(s);
                    member(&word)
                })
                .collect()
        })
        .collect();

    let witnesses = rows
        .iter()
        .map(|u| {
            rows.iter()
                .map(|v| u.iter().zip(v).position(|(a, b)| a != b))
                .collect()
        })
        .collect();

    let mut ids: BTreeMap<&[bool], usize> = BTreeMap::new();
    let classes = rows
        .iter()
        .map(|r| {
            let next = ids.len();
            *ids.entry(r.as_slice()).or_insert(next)
        })
        .collect();

    NerodeEvidence {
        prefixes: prefixes.to_vec(),
        suffixes: suffixes.to_vec(),
        witnesses,
        classes,
        distinguishable: ids.len(),
    }
}
