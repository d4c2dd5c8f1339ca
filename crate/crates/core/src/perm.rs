//! Permutations of `{0..n}` as image vectors: `p[i]` is the image of `i`.

use itertools::Itertools;

pub type Perm = Vec<usize>;

/// All permutations of `{0..n}` in lexicographic order of image vectors.
pub fn all(n: usize) -> Vec<Perm> {
    (0..n).permutations(n).collect()
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `+1` for even, `-1` for odd permutations.
pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Cycle lengths, sorted decreasingly.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p = identity(n);
    p.swap(a, b);
    p
}

/// Sign of the permutation sorting `v` increasingly; `0` if `v` has repeats.
pub fn sort_sign<T: Ord>(v: &[T]) -> i64 {
    let mut s = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match v[i].cmp(&v[j]) {
                std::cmp::Ordering::Greater => s = -s,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    s
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_is_multiplicative() {
        let ps = all(4);
        for p in &ps {
            for q in &ps {
                assert_eq!(sign(&compose(p, q)), sign(p) * sign(q));
            }
            assert_eq!(compose(p, &inverse(p)), identity(4));
        }
        assert_eq!(ps.len(), 24);
    }

    #[test]
    fn sort_sign_matches_inversions() {
        assert_eq!(sort_sign(&[1, 2, 3]), 1);
        assert_eq!(sort_sign(&[2, 1, 3]), -1);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(sort_sign(&[1, 1]), 0);
    }
}
