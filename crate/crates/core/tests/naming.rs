use std::collections::BTreeSet;

use weave_core::catalogue::{cached_catalogue, index_is_palindrome};
use weave_core::naming::canonical_name;
use weave_core::topology::hangs_together;
use weave_core::{parse_pattern, Colour, PeriodicPattern};

const PRINTED: [u64; 9] = [341, 4433, 16709, 1109, 4373, 5141, 17477, 17489, 17669];

fn name(rows: &str) -> String {
    let p = parse_pattern(rows).unwrap();
    canonical_name(&p, !hangs_together(&p)).unwrap().to_string()
}

#[test]
fn trivial_prefabric() {
    assert_eq!(name("#"), "1-0-1*");
}

#[test]
fn doubled_plain_weave() {
    assert_eq!(name("##--\n##--\n--##\n--##"), "4-3-1");
}

fn value(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |v, &b| v << 1 | b as u64)
}

/// Least value over rotations, reversals and complements of every strand,
/// reading pale as 1.
fn least_index(d: &PeriodicPattern) -> u64 {
    let mut words: Vec<Vec<bool>> = Vec::new();
    for i in 0..d.width() {
        words.push((0..d.height()).map(|j| d.at(i, j) == Colour::Pale).collect());
    }
    for j in 0..d.height() {
        words.push((0..d.width()).map(|i| d.at(i, j) == Colour::Pale).collect());
    }
    let mut best = u64::MAX;
    for w in words {
        for rev in [false, true] {
            for comp in [false, true] {
                let mut v: Vec<bool> = w.iter().map(|&b| b != comp).collect();
                if rev {
                    v.reverse();
                }
                for _ in 0..v.len() {
                    v.rotate_left(1);
                    best = best.min(value(&v));
                }
            }
        }
    }
    best
}

fn is_palindrome(index: u64, n: usize) -> bool {
    let bits: Vec<bool> = (0..n).rev().map(|k| index >> k & 1 == 1).collect();
    let mut rev = bits.clone();
    rev.reverse();
    (0..n).any(|r| {
        let mut b = bits.clone();
        b.rotate_left(r);
        b == rev
    })
}

#[test]
fn order_twenty_indices_match_strand_words() {
    let entries = cached_catalogue(20);
    let found: BTreeSet<u64> = entries.iter().map(|e| least_index(&e.design)).collect();
    assert_eq!(found, PRINTED.into_iter().collect());
    for e in entries.iter() {
        assert_eq!(least_index(&e.design), e.name.index);
    }
}

#[test]
fn palindromic_indices() {
    let pal: BTreeSet<u64> = PRINTED.into_iter().filter(|&i| is_palindrome(i, 20)).collect();
    assert_eq!(pal, BTreeSet::from([341, 4433, 16709]));
    for i in PRINTED {
        assert_eq!(index_is_palindrome(i, 20), is_palindrome(i, 20), "{i}");
    }
}
