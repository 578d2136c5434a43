//! Permutations of strand positions, stored as arrangements: `arr[p]` is the
//! starting position of the strand found at position `p`.

pub type Arrangement = Vec<usize>;

pub fn identity(n: usize) -> Arrangement {
    (0..n).collect()
}

/// Applies generators `s_i` (1-based, swapping positions `i-1, i`) in order.
pub fn apply(mut arr: Arrangement, word: &[usize]) -> Arrangement {
    for &i in word {
        arr.swap(i - 1, i);
    }
    arr
}

pub fn inversions(arr: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..arr.len() {
        for j in i + 1..arr.len() {
            if arr[i] > arr[j] {
                n += 1;
            }
        }
    }
    n
}

/// Whether appending `s_i` shortens the permutation.
pub fn is_descent(arr: &[usize], i: usize) -> bool {
    arr[i - 1] > arr[i]
}

/// A reduced word whose arrangement is `target`.
pub fn reduced_word(target: &[usize]) -> Vec<usize> {
    let mut a = target.to_vec();
    let mut swaps = Vec::new();
    while let Some(j) = (1..a.len()).find(|&j| a[j - 1] > a[j]) {
        a.swap(j - 1, j);
        swaps.push(j);
    }
    swaps.reverse();
    swaps
}

/// Position where each starting position ends up.
pub fn destination(arr: &[usize]) -> Vec<usize> {
    let mut d = vec![0; arr.len()];
    for (p, &s) in arr.iter().enumerate() {
        d[s] = p;
    }
    d
}

/// Cycles of the closure: strand starting at `k` continues at the start of
/// the position where it ends.
pub fn cycles(arr: &[usize]) -> Vec<Vec<usize>> {
    let dest = destination(arr);
    let mut seen = vec![false; arr.len()];
    let mut out = Vec::new();
    for k in 0..arr.len() {
        if seen[k] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = k;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = dest[x];
        }
        out.push(cyc);
    }
    out
}

/// Cycle lengths, largest first.
pub fn cycle_type(arr: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(arr).iter().map(Vec::len).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// Arrangement of `s_i x s_i`.
pub fn conjugate(arr: &[usize], i: usize) -> Arrangement {
    let mut start = identity(arr.len());
    start.swap(i - 1, i);
    let word = reduced_word(arr);
    apply(apply(start, &word), &[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_realize_targets() {
        let t = vec![2, 0, 3, 1];
        let w = reduced_word(&t);
        assert_eq!(w.len(), inversions(&t));
        assert_eq!(apply(identity(4), &w), t);
    }

    #[test]
    fn three_cycle() {
        let a = apply(identity(3), &[1, 2]);
        assert_eq!(cycle_type(&a), vec![3]);
        assert_eq!(cycle_type(&apply(identity(2), &[1, 1])), vec![1, 1]);
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        let a = apply(identity(4), &[1, 3, 2]);
        for i in 1..4 {
            assert_eq!(cycle_type(&conjugate(&a, i)), cycle_type(&a));
        }
    }
}
