use itertools::Itertools;

/// All subsets of `items`, by increasing size and then lexicographically by
/// position. With sorted `items` this is the lexicographic order on sets.
pub fn subsets_by_size<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0..=items.len()).flat_map(move |k| items.iter().cloned().combinations(k))
}

/// Subsets of `items` in the same order, excluding `items` itself when
/// `proper` is set.
pub fn subsets_of<T: Clone>(items: &[T], proper: bool) -> impl Iterator<Item = Vec<T>> + '_ {
    let n = items.len();
    subsets_by_size(items).filter(move |s| !proper || s.len() < n)
}
