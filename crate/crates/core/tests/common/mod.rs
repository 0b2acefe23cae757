//! Helpers shared by the integration test targets.

/// Set Cover instances up to renaming elements and reordering sets, with
/// every family a multiset of subsets (empty and repeated sets included).
pub fn canonical_set_cover_instances(max_n: usize, max_m: usize) -> Vec<(usize, Vec<u32>)> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    fn relabel(mask: u32, perm: &[usize]) -> u32 {
        perm.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, &j)| acc | 1 << j)
    }
    fn multisets(k: u32, m: usize, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in from..k {
            cur.push(x);
            multisets(k, m, x, cur, out);
            cur.pop();
        }
    }
    let mut result = Vec::new();
    for n in 1..=max_n {
        let perms = permutations(n);
        for m in 1..=max_m {
            let mut all = Vec::new();
            multisets(1 << n, m, 0, &mut Vec::new(), &mut all);
            for fam in all {
                let is_canonical = perms.iter().all(|perm| {
                    let mut img: Vec<u32> = fam.iter().map(|&s| relabel(s, perm)).collect();
                    img.sort_unstable();
                    img >= fam
                });
                if is_canonical {
                    result.push((n, fam));
                }
            }
        }
    }
    result
}

/// Expands bitmask sets over `0..n` into sorted element lists.
pub fn sets_from_masks(n: usize, family: &[u32]) -> Vec<Vec<usize>> {
    family
        .iter()
        .map(|&mask| (0..n).filter(|&j| mask >> j & 1 == 1).collect())
        .collect()
}
