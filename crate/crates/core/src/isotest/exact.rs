//! Backtracking isomorphism check for small graphs, pruned by 1-WL colours.

use super::wl::wl1_colors;
use crate::error::IsoError;
use crate::graph::Graph;

pub const EXACT_NODE_CAP: usize = 12;

/// True iff an edge-preserving bijection between `ga` and `gb` exists.
pub fn exact_isomorphic(ga: &Graph, gb: &Graph) -> Result<bool, IsoError> {
    let n = ga.node_count().max(gb.node_count());
    if n > EXACT_NODE_CAP {
        return Err(IsoError::SizeCap {
            n,
            cap: EXACT_NODE_CAP,
        });
    }
    Ok(isomorphic_unchecked(ga, gb))
}

pub(crate) fn isomorphic_unchecked(ga: &Graph, gb: &Graph) -> bool {
    let n = ga.node_count();
    if n != gb.node_count() || ga.edge_count() != gb.edge_count() {
        return false;
    }
    let (ca, ra) = wl1_colors(ga);
    let (cb, rb) = wl1_colors(gb);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if ra != rb || sa != sb {
        return false;
    }

    let bits = |g: &Graph| -> Vec<u64> {
        (0..n)
            .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    };
    let adj_a = bits(ga);
    let adj_b = bits(gb);

    // smallest colour classes first, then by degree
    let class_size = |c: u64| sa.iter().filter(|&&x| x == c).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (class_size(ca[u]), usize::MAX - ga.degree(u), u));

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    extend(0, &order, &ca, &cb, &adj_a, &adj_b, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    ca: &[u64],
    cb: &[u64],
    adj_a: &[u64],
    adj_b: &[u64],
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for v in 0..cb.len() {
        if *used >> v & 1 == 1 || cb[v] != ca[u] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let a = adj_a[u] >> w & 1;
            let b = adj_b[v] >> map[w] & 1;
            a == b
        });
        if !consistent {
            continue;
        }
        map[u] = v;
        *used |= 1 << v;
        if extend(depth + 1, order, ca, cb, adj_a, adj_b, map, used) {
            return true;
        }
        *used &= !(1 << v);
        map[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, erdos_renyi, fixture_graph, random_permutation};

    #[test]
    fn permuted_copies_are_isomorphic() {
        for seed in 0..50 {
            let g = erdos_renyi(10, 0.4, seed).unwrap();
            let h = apply_permutation(&g, &random_permutation(10, seed + 1).unwrap()).unwrap();
            assert!(exact_isomorphic(&g, &h).unwrap());
        }
    }

    #[test]
    fn known_non_isomorphic_pairs() {
        let d = fixture_graph("decalin").unwrap();
        let b = fixture_graph("bicyclopentyl").unwrap();
        assert!(!exact_isomorphic(&d, &b).unwrap());
        assert!(!exact_isomorphic(&Graph::complete(3).unwrap(), &Graph::path(3).unwrap()).unwrap());
        assert!(!exact_isomorphic(
            &fixture_graph("cospectral10").unwrap(),
            &fixture_graph("regular4_10").unwrap()
        )
        .unwrap());
        // 1-WL cannot separate these, the search must
        let c6 = Graph::cycle(6).unwrap();
        let tt = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!exact_isomorphic(&c6, &tt).unwrap());
    }

    #[test]
    fn size_cap() {
        let g = fixture_graph("rook4x4").unwrap();
        assert_eq!(
            exact_isomorphic(&g, &g),
            Err(IsoError::SizeCap {
                n: 16,
                cap: EXACT_NODE_CAP
            })
        );
    }

    // brute force over all 8! bijections for a few 6-node pairs
    #[test]
    fn agrees_with_brute_force() {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = vec![];
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let all = perms(6);
        for seed in 0..60 {
            let a = erdos_renyi(6, 0.5, seed).unwrap();
            let b = erdos_renyi(6, 0.5, seed + 1000).unwrap();
            let brute = all
                .iter()
                .any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
                && a.edge_count() == b.edge_count();
            assert_eq!(exact_isomorphic(&a, &b).unwrap(), brute, "seed {seed}");
        }
    }
}
