use std::collections::BTreeSet;

use oddcycles::generators::{blowup, complete, complete_bipartite, cut_vertex_odd_family, gnp, BlowupSpec};
use oddcycles::invariants::{bipartite_check, chromatic_number, odd_girth};
use oddcycles::oracle::{
    check_all_residues, cycle_spectrum, enumerate_cycles, spectrum, subset_spectrum, EnumerateOptions, DEFAULT_CAP,
};
use oddcycles::Graph;
use proptest::prelude::*;

/// `sum_{j>=3} C(n,j) (j-1)! / 2`.
fn complete_cycle_count(n: u64) -> u64 {
    (3..=n)
        .map(|j| {
            let choose = (0..j).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
            choose * (1..j).product::<u64>() / 2
        })
        .sum()
}

#[test]
fn complete_graphs_match_the_closed_form() {
    for n in 3..=7 {
        let s = cycle_spectrum(&complete(n as usize).unwrap());
        assert!(!s.truncated);
        assert_eq!(s.total, complete_cycle_count(n));
    }
    for n in 8..=12 {
        assert_eq!(subset_spectrum(&complete(n as usize).unwrap()).unwrap().total, complete_cycle_count(n));
    }
}

#[test]
fn complete_graphs_miss_residue_two() {
    for k in 3..=9u64 {
        let s = spectrum(&complete(k as usize + 1).unwrap(), DEFAULT_CAP);
        assert_eq!(check_all_residues(&s, k).unwrap().missing, BTreeSet::from([2]));
    }
}

#[test]
fn balanced_bipartite_graphs_miss_residue_zero() {
    for k in [5u64, 7, 9] {
        let s = spectrum(&complete_bipartite(k as usize - 1, k as usize - 1).unwrap(), DEFAULT_CAP);
        assert!(!s.truncated);
        assert!(check_all_residues(&s, k).unwrap().missing.contains(&0));
    }
}

#[test]
fn cut_vertex_family_has_one_odd_length() {
    for m in 2..=3 {
        for l in [3, 5, 7] {
            let s = cycle_spectrum(&cut_vertex_odd_family(m, l).unwrap());
            assert_eq!(s.odd_lengths(), BTreeSet::from([l]));
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree(g in arb_graph(10)) {
        let j = enumerate_cycles(&g, EnumerateOptions::default()).spectrum;
        prop_assert_eq!(subset_spectrum(&g).unwrap(), j.clone());
        let b = enumerate_cycles(&g, EnumerateOptions { max_len: Some(g.n()), ..Default::default() }).spectrum;
        prop_assert_eq!(b, j.clone());
        let listed = enumerate_cycles(&g, EnumerateOptions { collect: true, ..Default::default() });
        let cycles = listed.cycles.unwrap();
        let distinct: BTreeSet<_> = cycles.iter().collect();
        prop_assert_eq!(distinct.len() as u64, j.total);
        for len in j.lengths.keys() {
            prop_assert!(*len >= 3);
        }
    }

    #[test]
    fn bipartite_graphs_have_only_even_cycles(a in 1usize..5, b in 1usize..5, drop in any::<u64>()) {
        let full = complete_bipartite(a, b).unwrap();
        let g = full.spanning_subgraph(|u, v| (drop >> ((u * 7 + v) % 64)) & 1 == 0);
        let s = cycle_spectrum(&g);
        prop_assert!(s.lengths.keys().all(|l| l % 2 == 0));
    }

    #[test]
    fn blowups_keep_chromatic_number_and_odd_girth(base in arb_graph(6), t in 1usize..=3) {
        let g = blowup(&BlowupSpec { base: base.clone(), t }).unwrap();
        prop_assert_eq!(g.n(), base.n() * t);
        prop_assert_eq!(g.min_degree().map(|d| d / t), base.min_degree());
        prop_assert_eq!(chromatic_number(&g), chromatic_number(&base));
        prop_assert_eq!(odd_girth(&g), odd_girth(&base));
        if base.is_connected() {
            prop_assert_eq!(
                bipartite_check(&g).unwrap().is_bipartite(),
                bipartite_check(&base).unwrap().is_bipartite()
            );
        }
    }
}
