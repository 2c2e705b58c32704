//! Bipartite maximum matching by augmenting paths, with a König-style
//! deficient set when the matching is not left-perfect.

/// `adj[l]` lists the right vertices adjacent to left vertex `l`, in the
/// order they should be tried.
pub struct Bipartite<'a> {
    pub right: usize,
    pub adj: &'a [Vec<usize>],
}

/// Result of [`max_matching`]: `left[l]` is the right partner of `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left.iter().flatten().count()
    }

    pub fn is_left_perfect(&self) -> bool {
        self.left.iter().all(Option::is_some)
    }
}

pub fn max_matching(b: &Bipartite) -> Matching {
    let nl = b.adj.len();
    let mut m = Matching { left: vec![None; nl], right: vec![None; b.right] };
    let mut seen = vec![usize::MAX; b.right];
    for l in 0..nl {
        augment(b, l, l, &mut seen, &mut m);
    }
    m
}

fn augment(b: &Bipartite, l: usize, stamp: usize, seen: &mut [usize], m: &mut Matching) -> bool {
    // Iterative DFS over alternating paths; `stack` holds (left vertex, next
    // adjacency index).
    let mut stack: Vec<(usize, usize)> = vec![(l, 0)];
    let mut via: Vec<usize> = Vec::new();
    while let Some(&mut (u, ref mut i)) = stack.last_mut() {
        if *i >= b.adj[u].len() {
            stack.pop();
            via.pop();
            continue;
        }
        let r = b.adj[u][*i];
        *i += 1;
        if seen[r] == stamp {
            continue;
        }
        seen[r] = stamp;
        via.push(r);
        match m.right[r] {
            None => {
                // Flip the path: stack[k].0 is matched to via[k].
                for (k, &(lu, _)) in stack.iter().enumerate() {
                    let rr = via[k];
                    m.left[lu] = Some(rr);
                    m.right[rr] = Some(lu);
                }
                return true;
            }
            Some(next) => stack.push((next, 0)),
        }
    }
    false
}

/// For a matching that is not left-perfect, the left vertices reachable by
/// alternating paths from an unmatched left vertex. Their neighbourhood is
/// exactly the reachable right side, which is strictly smaller.
pub fn deficient_set(b: &Bipartite, m: &Matching) -> Option<(Vec<usize>, usize)> {
    let start = m.left.iter().position(Option::is_none)?;
    let mut in_s = vec![false; b.adj.len()];
    let mut in_n = vec![false; b.right];
    in_s[start] = true;
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for &r in &b.adj[u] {
            if !in_n[r] {
                in_n[r] = true;
                if let Some(w) = m.right[r] {
                    if !in_s[w] {
                        in_s[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
    }
    let s: Vec<usize> = (0..b.adj.len()).filter(|&i| in_s[i]).collect();
    let nb = in_n.iter().filter(|&&x| x).count();
    debug_assert!(nb < s.len());
    Some((s, nb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_max(adj: &[Vec<usize>], right: usize) -> usize {
        fn go(adj: &[Vec<usize>], i: usize, used: &mut Vec<bool>) -> usize {
            if i == adj.len() {
                return 0;
            }
            let mut best = go(adj, i + 1, used);
            for &r in &adj[i] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(adj, i + 1, used));
                    used[r] = false;
                }
            }
            best
        }
        go(adj, 0, &mut vec![false; right])
    }

    #[test]
    fn matches_brute_force_and_certifies() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let (nl, nr) = (rng.gen_range(1..8), rng.gen_range(1..8));
            let p: f64 = rng.gen_range(0.1..0.9);
            let adj: Vec<Vec<usize>> = (0..nl).map(|_| (0..nr).filter(|_| rng.gen_bool(p)).collect()).collect();
            let b = Bipartite { right: nr, adj: &adj };
            let m = max_matching(&b);
            for (l, r) in m.left.iter().enumerate() {
                if let Some(r) = r {
                    assert!(adj[l].contains(r));
                    assert_eq!(m.right[*r], Some(l));
                }
            }
            assert_eq!(m.size(), brute_max(&adj, nr));
            match deficient_set(&b, &m) {
                None => assert!(m.is_left_perfect()),
                Some((s, nb)) => {
                    let mut nbr: Vec<usize> = s.iter().flat_map(|&l| adj[l].iter().copied()).collect();
                    nbr.sort_unstable();
                    nbr.dedup();
                    assert_eq!(nbr.len(), nb);
                    assert!(nb < s.len());
                }
            }
        }
    }
}
