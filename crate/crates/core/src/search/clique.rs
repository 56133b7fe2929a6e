//! Maximal clique enumeration: Bron–Kerbosch with Tomita pivoting, with the
//! outer level driven by a degeneracy ordering.

use rayon::prelude::*;

/// Vertex order that repeatedly removes a vertex of minimum remaining degree.
pub fn degeneracy_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    // reverse so that pops yield the lowest index first
    for v in (0..n).rev() {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while order.len() < n {
        d = d.min(max_deg);
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop().expect("non-empty bucket");
        if removed[v] || degree[v] != d {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
            }
        }
        d = d.saturating_sub(1);
    }
    order
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn expand(
    adj: &[Vec<usize>],
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (count_common(&p, &adj[u]), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|v| adj[pivot].binary_search(v).is_err())
        .collect();
    for v in candidates {
        r.push(v);
        expand(adj, r, intersect(&p, &adj[v]), intersect(&x, &adj[v]), out);
        r.pop();
        p.retain(|&w| w != v);
        let pos = x.binary_search(&v).unwrap_or_else(|e| e);
        x.insert(pos, v);
    }
}

/// All maximal cliques of an undirected simple graph given by sorted
/// adjacency lists. Each clique is sorted; the list is sorted.
pub fn maximal_cliques(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let order = degeneracy_order(adj);
    let mut rank = vec![0; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut cliques: Vec<Vec<usize>> = order
        .par_iter()
        .flat_map_iter(|&v| {
            let (mut p, mut x): (Vec<usize>, Vec<usize>) =
                adj[v].iter().partition(|&&w| rank[w] > rank[v]);
            p.sort_unstable();
            x.sort_unstable();
            let mut out = Vec::new();
            expand(adj, &mut vec![v], p, x, &mut out);
            out
        })
        .collect();
    cliques.sort();
    cliques
}
