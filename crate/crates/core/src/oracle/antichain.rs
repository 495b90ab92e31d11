use crate::config::{check, Budget};
use crate::Result;

fn point(mut idx: usize, m: usize, s: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(m);
    for _ in 0..m {
        p.push(idx % (s + 1));
        idx /= s + 1;
    }
    p
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if right[v].map_or(true, |w| augment(w, adj, seen, right)) {
            right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Width of `{0,…,s}^m` under the componentwise order.
///
/// By Dilworth the width equals the minimum number of chains covering the
/// poset, which is `N − ν` for `ν` a maximum matching of the strict
/// comparability graph split into a left and a right copy.
pub fn max_antichain(m: usize, s: usize, budget: &Budget) -> Result<u64> {
    let size = (s as u128 + 1).saturating_pow(m as u32);
    check("node", size, budget.nodes)?;
    let n = size as usize;
    let pts: Vec<Vec<usize>> = (0..n).map(|i| point(i, m, s)).collect();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && pts[u].iter().zip(&pts[v]).all(|(a, b)| a <= b))
                .collect()
        })
        .collect();
    let mut right = vec![None; n];
    let mut matching = 0u64;
    for u in 0..n {
        let mut seen = vec![false; n];
        if augment(u, &adj, &mut seen, &mut right) {
            matching += 1;
        }
    }
    Ok(n as u64 - matching)
}
