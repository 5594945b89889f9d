use proptest::collection::btree_set;
use proptest::prelude::*;
use strata::{a_sign, admissible, parity_sign, sigma, IndexSet, StrataError};

fn index_set() -> impl Strategy<Value = IndexSet> {
    btree_set(0usize..8, 0..6).prop_map(IndexSet::new)
}

/// Admissibility read directly off the definition.
fn admissible_oracle(i: &IndexSet, j: &IndexSet) -> bool {
    let Some(top) = i.indices().last() else {
        return false;
    };
    match j.indices().iter().position(|x| x == top) {
        Some(p) => j.indices()[..p].iter().all(|x| i.contains(*x)),
        None => false,
    }
}

proptest! {
    #[test]
    fn sigma_counts_smaller_indices(i in index_set(), k in 0usize..10) {
        prop_assert_eq!(sigma(&i, k), i.indices().iter().filter(|&&x| x < k).count());
    }

    #[test]
    fn restriction_signs_anticommute(i in index_set(), k in 0usize..8, l in 0usize..8) {
        prop_assume!(k != l && !i.contains(k) && !i.contains(l));
        let one = parity_sign(sigma(&i, k) + sigma(&i.with(k), l));
        let other = parity_sign(sigma(&i, l) + sigma(&i.with(l), k));
        prop_assert_eq!(one, -other);
    }

    #[test]
    fn gysin_signs_anticommute(
        (i, a, b) in btree_set(0usize..8, 2..6).prop_flat_map(|set| {
            let n = set.len();
            (Just(IndexSet::new(set)), 0..n, 1..n)
        })
    ) {
        let (k, l) = (i.indices()[a], i.indices()[(a + b) % i.len()]);
        let one = parity_sign(sigma(&i, k) + sigma(&i.without(k), l));
        let other = parity_sign(sigma(&i, l) + sigma(&i.without(l), k));
        prop_assert_eq!(one, -other);
    }

    #[test]
    fn admissibility_matches_definition(i in index_set(), j in index_set()) {
        prop_assert_eq!(admissible(&i, &j).is_some(), admissible_oracle(&i, &j));
        match admissible(&i, &j) {
            None => {
                let expected = StrataError::NotAdmissible(i.clone(), j.clone());
                prop_assert_eq!(a_sign(&i, &j), Err(expected));
            }
            Some(adm) => {
                let js = j.indices();
                prop_assert_eq!(js[adm.p], *i.indices().last().unwrap());
                prop_assert_eq!(&adm.removed[..], &js[..adm.p]);
                prop_assert_eq!(adm.k.len() + 2 * adm.p + 1, i.len() + j.len());
                prop_assert!(adm.k.is_subset(&i.union(&j)));
                prop_assert!(adm.removed.iter().all(|r| !adm.k.contains(*r)));
                let b: usize = adm.removed.iter().map(|r| i.position(*r).unwrap()).sum();
                prop_assert_eq!(a_sign(&i, &j), Ok(b + (i.len() - 1) * adm.p));
            }
        }
    }

    #[test]
    fn index_sets_are_strictly_increasing(v in proptest::collection::vec(0usize..8, 0..8)) {
        let i = IndexSet::new(v.clone());
        prop_assert!(i.indices().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(v.iter().all(|x| i.contains(*x)));
        prop_assert_eq!(IndexSet::from_strict(i.indices().to_vec()), Some(i.clone()));
    }
}
