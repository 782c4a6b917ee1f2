//! Brute-force oracles shared by the integration tests. They use only the
//! raw `S` map and plain collections, never the reversing engine.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use garside_ybe::perm::all_permutations;
use garside_ybe::{examples, Permutation, SetSolution, Word};

/// Every word equal to `w` in the monoid, by rewriting adjacent pairs with
/// both directions of each defining relation.
pub fn bfs_class(sol: &SetSolution, w: &[usize]) -> BTreeSet<Vec<usize>> {
    let n = sol.n();
    let mut rel: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            let t = sol.s(i, j);
            if t != (i, j) {
                rel.entry((i, j)).or_default().push(t);
                rel.entry(t).or_default().push((i, j));
            }
        }
    }
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for p in 0..cur.len().saturating_sub(1) {
            for &(a, b) in rel.get(&(cur[p], cur[p + 1])).into_iter().flatten() {
                let mut next = cur.clone();
                next[p] = a;
                next[p + 1] = b;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Class label of every word of length `len`: the least word of its class.
pub fn bfs_labels(sol: &SetSolution, len: usize) -> HashMap<Vec<usize>, Vec<usize>> {
    let mut labels = HashMap::new();
    for w in Word::all_of_length(sol.n(), len) {
        if labels.contains_key(w.letters()) {
            continue;
        }
        let class = bfs_class(sol, w.letters());
        let least = class.iter().next().unwrap().clone();
        for member in class {
            labels.insert(member, least.clone());
        }
    }
    labels
}

/// `S` as a table on pairs, 0-based.
fn s_table(f: &[Vec<usize>], g: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = f.len();
    (0..n)
        .map(|i| (0..n).map(|j| (g[i][j], f[j][i])).collect())
        .collect()
}

fn involutive_and_braided(s: &[Vec<(usize, usize)>]) -> bool {
    let n = s.len();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = s[i][j];
            if s[a][b] != (i, j) {
                return false;
            }
        }
    }
    let s12 = |(x, y, z): (usize, usize, usize)| {
        let (a, b) = s[x][y];
        (a, b, z)
    };
    let s23 = |(x, y, z): (usize, usize, usize)| {
        let (b, c) = s[y][z];
        (x, b, c)
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = (x, y, z);
                if s12(s23(s12(t))) != s23(s12(s23(t))) {
                    return false;
                }
            }
        }
    }
    true
}

pub type Tables = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// All involutive braided non-degenerate solutions on `n` points, found by
/// trying every pair of families `(f, g)` independently. Returned as
/// `(f, g)` 0-based tables.
pub fn brute_force_solutions(n: usize) -> Vec<Tables> {
    let perms: Vec<Vec<usize>> = all_permutations(n)
        .iter()
        .map(|p| p.images().to_vec())
        .collect();
    let k = perms.len();
    let total = k.pow(n as u32);
    let family = |mut code: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|_| {
                let p = perms[code % k].clone();
                code /= k;
                p
            })
            .collect()
    };
    let mut out = Vec::new();
    for gc in 0..total {
        let g = family(gc);
        for fc in 0..total {
            let f = family(fc);
            if involutive_and_braided(&s_table(&f, &g)) {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    out
}

/// Number of isomorphism classes among solutions given as tables, by taking
/// the least relabelled `S` table over all bijections.
pub fn count_up_to_relabelling(sols: &[Tables]) -> usize {
    let Some((f0, _)) = sols.first() else { return 0 };
    let n = f0.len();
    let phis: Vec<Vec<usize>> = all_permutations(n)
        .iter()
        .map(|p| p.images().to_vec())
        .collect();
    let mut classes = BTreeSet::new();
    for (f, g) in sols {
        let s = s_table(f, g);
        let best = phis
            .iter()
            .map(|phi| {
                let mut t = vec![vec![(0, 0); n]; n];
                for x in 0..n {
                    for y in 0..n {
                        let (a, b) = s[x][y];
                        t[phi[x]][phi[y]] = (phi[a], phi[b]);
                    }
                }
                t
            })
            .min()
            .unwrap();
        classes.insert(best);
    }
    classes.len()
}

/// `example1` with `g_1` replaced by `g_1∘(1 3)` and `f` re-derived from
/// involutivity: involutive, not braided.
pub fn mutant() -> SetSolution {
    let ex = examples::example1();
    let n = ex.n();
    let mut g = ex.g_family().to_vec();
    g[0] = g[0].compose(&Permutation::from_cycles(n, &[&[1, 3]]).unwrap());
    let ginv: Vec<Permutation> = g.iter().map(Permutation::inverse).collect();
    let f = (0..n)
        .map(|j| {
            Permutation::from_images((0..n).map(|i| ginv[g[i].apply(j)].apply(i)).collect()).unwrap()
        })
        .collect();
    SetSolution::new(f, g).unwrap()
}

/// Every involutive braided solution with `n <= 3`, not deduplicated.
pub fn small_corpus() -> Vec<SetSolution> {
    (1..=3)
        .flat_map(|n| garside_ybe::enumerate_solutions(n, false).unwrap())
        .collect()
}
