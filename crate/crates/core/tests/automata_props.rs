use mostset_core::automata::{
    density_language_membership, intersection_language, majority_product, nerode_evidence,
    product_automaton, regex_parse, regex_to_dfa, strings_up_to, Dfa, LanguageFamily, Regex,
    DEFAULT_MAX_STATES,
};
use proptest::prelude::*;

const BIN: &[char] = &['0', '1'];

/// Backtracking matcher straight from the inductive definition.
fn matches(r: &Regex, s: &[char]) -> bool {
    match r {
        Regex::Empty => false,
        Regex::Epsilon => s.is_empty(),
        Regex::Symbol(c) => s.len() == 1 && s[0] == *c,
        Regex::Union(a, b) => matches(a, s) || matches(b, s),
        Regex::Concat(a, b) => (0..=s.len()).any(|k| matches(a, &s[..k]) && matches(b, &s[k..])),
        Regex::Star(a) => {
            s.is_empty() || (1..=s.len()).any(|k| matches(a, &s[..k]) && matches(r, &s[k..]))
        }
    }
}

fn regex() -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        1 => Just(Regex::Empty),
        1 => Just(Regex::Epsilon),
        3 => Just(Regex::Symbol('0')),
        3 => Just(Regex::Symbol('1')),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::concat(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::union(a, b)),
            inner.prop_map(Regex::star),
        ]
    })
}

fn dfa(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(0..n, 2), n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(delta, accept)| {
                let acc = accept
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a)
                    .map(|(q, _)| q);
                Dfa::new(BIN.to_vec(), delta, 0, acc).unwrap()
            })
    })
}

fn words(max_len: usize) -> Vec<String> {
    strings_up_to(BIN, max_len)
}

fn majority_vote(dfas: &[Dfa], w: &str) -> bool {
    2 * dfas.iter().filter(|d| d.accepts(w).unwrap()).count() > dfas.len()
}

/// `{w : |w| ≡ residue (mod modulus)}`.
fn length_class(modulus: usize, residue: usize) -> Dfa {
    let delta = (0..modulus).map(|q| vec![(q + 1) % modulus; 2]).collect();
    Dfa::new(BIN.to_vec(), delta, 0, [residue]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regex_dfa_agrees_with_matcher(r in regex()) {
        let d = regex_to_dfa(&r, BIN).unwrap();
        for w in words(8) {
            let chars: Vec<char> = w.chars().collect();
            prop_assert_eq!(d.accepts(&w).unwrap(), matches(&r, &chars), "{} on {:?}", r, w);
        }
    }

    #[test]
    fn printed_regex_reparses(r in regex()) {
        prop_assert_eq!(regex_parse(&r.to_string(), BIN).unwrap(), r);
    }

    #[test]
    fn minimization_preserves_language_and_is_idempotent(d in dfa(6)) {
        let m = d.minimize();
        prop_assert!(m.num_states() <= d.num_states());
        prop_assert!(m.equivalent(&d).unwrap());
        prop_assert_eq!(m.minimize(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn majority_product_matches_voting(ds in proptest::collection::vec(dfa(6), 3..=7)) {
        let m = majority_product(&ds, DEFAULT_MAX_STATES).unwrap();
        for w in words(8) {
            prop_assert_eq!(m.accepts(&w).unwrap(), majority_vote(&ds, &w), "{:?}", w);
        }
    }

    #[test]
    fn intersection_is_inside_majority(ds in proptest::collection::vec(dfa(5), 1..=5)) {
        let i = intersection_language(&ds, DEFAULT_MAX_STATES).unwrap();
        let m = majority_product(&ds, DEFAULT_MAX_STATES).unwrap();
        prop_assert!(i.is_subset_of(&m).unwrap());
        for w in words(6) {
            prop_assert_eq!(i.accepts(&w).unwrap(), ds.iter().all(|d| d.accepts(&w).unwrap()));
        }
    }

    #[test]
    fn identical_inputs_give_that_language(d in dfa(6), copies in 1usize..=5) {
        let m = majority_product(&vec![d.clone(); copies], DEFAULT_MAX_STATES).unwrap();
        prop_assert_eq!(m, d.minimize());
    }

    #[test]
    fn product_size_and_minimality(ds in proptest::collection::vec(dfa(4), 3..=4)) {
        let n = ds.len();
        let raw = product_automaton(&ds, DEFAULT_MAX_STATES, |acc| {
            2 * acc.iter().filter(|&&a| a).count() > n
        }).unwrap();
        let bound: usize = ds.iter().map(Dfa::num_states).product();
        prop_assert!(raw.num_states() <= bound);

        let m = majority_product(&ds, DEFAULT_MAX_STATES).unwrap();
        prop_assume!(m.num_states() <= 11);
        // Shortest access string of every state.
        let mut access = vec![None; m.num_states()];
        for w in words(m.num_states()) {
            let q = m.run_from(m.start(), &w).unwrap();
            if access[q].is_none() {
                access[q] = Some(w);
            }
        }
        let prefixes: Vec<String> = access.into_iter().map(Option::unwrap).collect();
        // Distinct states of a minimal DFA are separated by a suffix shorter
        // than the state count.
        let suffixes = words(m.num_states().saturating_sub(1));
        let ev = nerode_evidence(|w| m.accepts(w).unwrap(), &prefixes, &suffixes);
        prop_assert_eq!(ev.distinguishable, m.num_states());
    }
}

#[test]
fn disjoint_languages_have_empty_majority() {
    for modulus in 3..=6 {
        let ds: Vec<Dfa> = (0..modulus).map(|r| length_class(modulus, r)).collect();
        for (i, a) in ds.iter().enumerate() {
            assert!(!a.is_empty());
            for b in &ds[i + 1..] {
                assert!(
                    intersection_language(&[a.clone(), b.clone()], DEFAULT_MAX_STATES)
                        .unwrap()
                        .is_empty()
                );
            }
        }
        assert!(majority_product(&ds, DEFAULT_MAX_STATES)
            .unwrap()
            .is_empty());
    }
}

#[test]
fn regex_zero_star_one_star_against_hand_dfa() {
    let hand = Dfa::new(
        BIN.to_vec(),
        vec![vec![0, 1], vec![2, 1], vec![2, 2]],
        0,
        [0, 1],
    )
    .unwrap();
    let d = regex_to_dfa(&regex_parse("0*1*", BIN).unwrap(), BIN).unwrap();
    assert!(d.equivalent(&hand).unwrap());
}

fn is_block(w: &str) -> bool {
    let k = w.len() / 2;
    k >= 1
        && w.len() == 2 * k
        && w[..k].chars().all(|c| c == '0')
        && w[k..].chars().all(|c| c == '1')
}

#[test]
fn cumulative_density_language_is_the_blocks() {
    let fam = LanguageFamily::cumulative_0n1n(0);
    for w in words(14) {
        let m = density_language_membership(&fam, &w).unwrap();
        assert_eq!(m.member, is_block(&w), "{w:?}");
    }
    for a in 0..=20 {
        for b in 0..=20 {
            let w = "0".repeat(a) + &"1".repeat(b);
            assert_eq!(
                density_language_membership(&fam, &w).unwrap().member,
                a == b && a >= 1
            );
        }
    }
}

#[test]
fn cumulative_density_language_needs_many_states() {
    let fam = LanguageFamily::cumulative_0n1n(0);
    let member = |w: &str| density_language_membership(&fam, w).unwrap().member;
    let prefixes: Vec<String> = (1..=20).map(|i| "0".repeat(i)).collect();
    let suffixes: Vec<String> = (1..=20).map(|i| "1".repeat(i)).collect();
    let ev = nerode_evidence(member, &prefixes, &suffixes);
    assert_eq!(ev.distinguishable, 20);
    for i in 0..20 {
        for j in 0..20 {
            if i != j {
                let s = ev.witness(i, j).unwrap();
                assert_ne!(
                    member(&(prefixes[i].clone() + s)),
                    member(&(prefixes[j].clone() + s))
                );
            }
        }
    }
}
