mod common;

use common::{admissible, compact, triple_soup, SAMPLES};
use oml_core::lattice::build_oml;
use oml_core::mmp::{dual, element_count, girth, parse_mmp, serialize_mmp, validate, Girth, ALPHABET};
use oml_core::symmetry::are_isomorphic;
use oml_core::MmpDiagram;
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Arbitrary block lists over up to 90 atoms whose highest atom is used, so
/// that the atom count survives a text round trip.
fn any_diagram() -> impl Strategy<Value = MmpDiagram> {
    (1usize..=90)
        .prop_flat_map(|n| {
            let block = prop::collection::btree_set(0..n, 1..=n.min(8));
            (Just(n), prop::collection::vec(block, 1..=12))
        })
        .prop_map(|(n, mut blocks)| {
            blocks[0].insert(n - 1);
            MmpDiagram::from_indices(n, blocks).unwrap()
        })
}

/// Loop orders found by trying every cyclic sequence of distinct blocks.
fn brute_girth(d: &MmpDiagram) -> Girth {
    let b = d.block_count();
    let share = |i: usize, j: usize| d.block(i).intersection_len(d.block(j));
    let mut best: Option<usize> = None;

    fn extend(d: &MmpDiagram, path: &mut Vec<usize>, best: &mut Option<usize>, share: &dyn Fn(usize, usize) -> usize) {
        let n = path.len();
        if n >= 3 && share(path[n - 1], path[0]) == 1 && is_loop(d, path) {
            *best = Some(best.map_or(n, |x| x.min(n)));
        }
        if best.is_some_and(|x| n >= x) {
            return;
        }
        for next in path[0] + 1..d.block_count() {
            if !path.contains(&next) && share(path[n - 1], next) == 1 {
                path.push(next);
                extend(d, path, best, share);
                path.pop();
            }
        }
    }

    fn is_loop(d: &MmpDiagram, path: &[usize]) -> bool {
        let n = path.len();
        let mut junctions = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let common = d.block(path[i]).intersection_len(d.block(path[j]));
                if adjacent != (common == 1) || (!adjacent && common != 0) {
                    return false;
                }
            }
            let next = path[(i + 1) % n];
            junctions.insert(d.block(path[i]).common_atom(d.block(next)));
        }
        junctions.len() == n
    }

    for start in 0..b {
        extend(d, &mut vec![start], &mut best, &share);
    }
    best.map_or(Girth::Infinite, Girth::Finite)
}

/// Distinct nonempty proper block subsets after identifying singletons and
/// complements of singletons across blocks, plus 0 and 1.
fn brute_element_count(d: &MmpDiagram) -> usize {
    let mut keys = BTreeSet::new();
    for (bi, b) in d.blocks().iter().enumerate() {
        let atoms: Vec<usize> = b.iter().map(|a| a.0).collect();
        let k = atoms.len();
        for mask in 1u32..(1 << k) - 1 {
            let inside: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i]).collect();
            let outside: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 0).map(|i| atoms[i]).collect();
            let key = if inside.len() == 1 {
                (0, inside[0], Vec::new())
            } else if outside.len() == 1 {
                (1, outside[0], Vec::new())
            } else {
                (2, bi, inside)
            };
            keys.insert(key);
        }
    }
    keys.len() + 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn text_round_trip(d in any_diagram()) {
        let text = serialize_mmp(&d).unwrap();
        prop_assert_eq!(parse_mmp(&text).unwrap(), d);
    }

    #[test]
    fn respelling_sorts_each_block(d in any_diagram(), seed in any::<u64>()) {
        let mut shuffled = String::new();
        for (i, b) in d.blocks().iter().enumerate() {
            if i > 0 {
                shuffled.push(',');
            }
            let mut chars: Vec<char> = b.iter().map(|a| ALPHABET[a.0] as char).collect();
            let shift = (seed as usize + i) % chars.len();
            chars.rotate_left(shift);
            if seed % 2 == 1 {
                chars.reverse();
            }
            shuffled.extend(chars);
        }
        shuffled.push('.');
        let respelled = serialize_mmp(&parse_mmp(&shuffled).unwrap()).unwrap();
        prop_assert_eq!(respelled, serialize_mmp(&d).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn condition_iii_is_linearity_for_triples(d in triple_soup(12, 8)) {
        let linear = (0..d.block_count())
            .all(|i| (i + 1..d.block_count()).all(|j| d.block(i).intersection_len(d.block(j)) <= 1));
        prop_assert_eq!(validate(&d).mmp_iii(), linear);
        prop_assert_eq!(d.is_linear(), linear);
    }

    #[test]
    fn girth_matches_cycle_enumeration(d in triple_soup(14, 8)) {
        prop_assume!(d.is_linear());
        prop_assert_eq!(girth(&d).unwrap(), brute_girth(&d));
    }

    #[test]
    fn girth_matches_with_larger_blocks(blocks in prop::collection::vec(prop::collection::btree_set(0usize..16, 3..=5), 1..=8)) {
        let d = compact(16, &blocks.into_iter().map(|b| b.into_iter().collect()).collect::<Vec<_>>());
        prop_assume!(d.is_linear());
        prop_assert_eq!(girth(&d).unwrap(), brute_girth(&d));
    }

    #[test]
    fn element_count_matches_subset_oracle(d in admissible(24, 5, 12)) {
        let n = brute_element_count(&d);
        prop_assert_eq!(element_count(&d).unwrap(), n as u128);
        prop_assert_eq!(build_oml(&d).unwrap().len(), n);
    }

    #[test]
    fn admissible_generator_is_admissible(d in admissible(20, 3, 10)) {
        let r = validate(&d);
        prop_assert!(r.greechie_admissible);
        prop_assert!(r.girth.unwrap().at_least(5));
    }
}

#[test]
fn double_dual_is_isomorphic() {
    for text in SAMPLES {
        let d = parse_mmp(text).unwrap();
        let dd = dual(&dual(&d));
        assert!(are_isomorphic(&d, &dd).is_some(), "{text}");
    }
}

#[test]
fn sample_girths() {
    let expect = [
        Girth::Infinite,
        Girth::Infinite,
        Girth::Finite(5),
        Girth::Finite(5),
        Girth::Finite(6),
        Girth::Infinite,
        Girth::Finite(5),
    ];
    for (text, g) in SAMPLES.iter().zip(expect) {
        let d = parse_mmp(text).unwrap();
        assert_eq!(girth(&d).unwrap(), g, "{text}");
        assert_eq!(brute_girth(&d), g, "{text}");
    }
}
