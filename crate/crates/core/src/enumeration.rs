//! Exhaustive search for involutive braided solutions on a few points.
//!
//! Only the `g` family is searched: involutivity forces
//! `f_j(i) = g_{g_i(j)}^{-1}(i)`, which cuts the space to `(n!)^n`
//! assignments. The search is split into shards by the choice of `g_1` and
//! merged in `g_key` order, so results do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::garside::GarsideMonoid;
use crate::perm::{all_permutations, Permutation};
use crate::presentation::{presentation_of, RelationKind};
use crate::solution::{solutions_isomorphic, SetSolution};

/// Largest `n` searched unless the caller raises the cap.
pub const DEFAULT_MAX_N: usize = 4;

/// All involutive braided solutions on `n` points, sorted by `g_key`.
/// With `up_to_iso`, only the least member of each isomorphism class is kept.
pub fn enumerate_solutions(n: usize, up_to_iso: bool) -> Result<Vec<SetSolution>> {
    enumerate_solutions_capped(n, up_to_iso, DEFAULT_MAX_N)
}

pub fn enumerate_solutions_capped(n: usize, up_to_iso: bool, max_n: usize) -> Result<Vec<SetSolution>> {
    if n == 0 || n > max_n {
        return Err(Error::Input(format!(
            "enumeration supports 1 <= n <= {max_n}, got {n}"
        )));
    }
    let perms = all_permutations(n);
    let mut found: Vec<SetSolution> = perms
        .par_iter()
        .flat_map_iter(|g1| shard(n, &perms, g1))
        .collect();
    found.sort_by_key(SetSolution::g_key);
    if up_to_iso {
        found = representatives(found);
    }
    Ok(found)
}

/// Every solution whose `g_1` is the given permutation.
fn shard(n: usize, perms: &[Permutation], g1: &Permutation) -> Vec<SetSolution> {
    let mut out = Vec::new();
    let mut choice = vec![0usize; n - 1];
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let first = perms.iter().position(|p| p == g1).expect("g1 comes from perms");
    loop {
        let idx: Vec<usize> = std::iter::once(first).chain(choice.iter().copied()).collect();
        if let Some(sol) = candidate(n, perms, &inverses, &idx) {
            out.push(sol);
        }
        // odometer over g_2..g_n
        let mut pos = n - 1;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < perms.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn candidate(n: usize, perms: &[Permutation], inverses: &[Permutation], idx: &[usize]) -> Option<SetSolution> {
    let g = |i: usize| &perms[idx[i]];
    let g_inv = |i: usize| &inverses[idx[i]];
    let mut f = Vec::with_capacity(n);
    for j in 0..n {
        let images: Vec<usize> = (0..n).map(|i| g_inv(g(i).apply(j)).apply(i)).collect();
        f.push(Permutation::from_images(images).ok()?);
    }
    let sol = SetSolution::new(f, idx.iter().map(|&k| perms[k].clone()).collect()).ok()?;
    sol.validate(true).ok().then_some(sol)
}

/// Keeps, from a `g_key`-sorted list, each solution not isomorphic to an
/// earlier kept one.
pub fn representatives(sorted: Vec<SetSolution>) -> Vec<SetSolution> {
    let mut kept: Vec<SetSolution> = Vec::new();
    for sol in sorted {
        if !kept.iter().any(|k| solutions_isomorphic(k, &sol).is_some()) {
            kept.push(sol);
        }
    }
    kept
}

/// One line of the census table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CensusRow {
    pub id: usize,
    pub n: usize,
    /// 1-based image tables of `g_1..g_n`.
    pub g: Vec<Vec<usize>>,
    pub decomposable: bool,
    pub delta_pure: bool,
    pub square_free: bool,
    pub simples: usize,
    pub exponent: usize,
    pub kinds: BTreeMap<RelationKind, usize>,
}

/// Garside summary of each solution, rows in `g_key` order.
pub fn classify(sols: &[SetSolution]) -> Result<Vec<CensusRow>> {
    let mut ordered: Vec<&SetSolution> = sols.iter().collect();
    ordered.sort_by_key(|s| s.g_key());
    ordered
        .par_iter()
        .enumerate()
        .map(|(k, sol)| {
            let m = GarsideMonoid::new(sol)?;
            Ok(CensusRow {
                id: k + 1,
                n: sol.n(),
                g: sol.g_family().iter().map(Permutation::one_based).collect(),
                decomposable: !sol.is_indecomposable(),
                delta_pure: m.is_delta_pure()?,
                square_free: sol.validate(true).square_free,
                simples: m.simples().len(),
                exponent: m.exponent()?,
                kinds: presentation_of(sol).kind_counts(),
            })
        })
        .collect()
}

const KINDS: [RelationKind; 4] = [
    RelationKind::Quad,
    RelationKind::Comm,
    RelationKind::Log,
    RelationKind::FourDiff,
];

/// Tab-separated census with a header line.
pub fn render_census(rows: &[CensusRow]) -> String {
    let mut out = String::from(
        "id\tn\tg\tdecomposable\tdelta_pure\tsquare_free\tsimples\texponent\tquad\tcomm\tlog\t4-diff\n",
    );
    for r in rows {
        let g: Vec<String> = r
            .g
            .iter()
            .map(|t| t.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        let _ = write!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.id,
            r.n,
            g.join(";"),
            r.decomposable,
            r.delta_pure,
            r.square_free,
            r.simples,
            r.exponent
        );
        for k in KINDS {
            let _ = write!(out, "\t{}", r.kinds.get(&k).copied().unwrap_or(0));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_solutions(1, false).unwrap().len(), 1);
        let two = enumerate_solutions(2, true).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0], SetSolution::trivial(2).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_solutions(0, true), Err(Error::Input(_))));
        assert!(matches!(enumerate_solutions(5, true), Err(Error::Input(_))));
        assert!(enumerate_solutions_capped(5, true, 4).is_err());
    }

    #[test]
    fn census_rows_for_reference_solutions() {
        let rows = classify(&[examples::example2()]).unwrap();
        let r = &rows[0];
        assert!(!r.decomposable && r.delta_pure && !r.square_free);
        assert_eq!((r.simples, r.exponent), (8, 1));

        let rows = classify(&[examples::example1()]).unwrap();
        assert!(rows[0].decomposable && !rows[0].delta_pure);

        let rows = classify(&[SetSolution::trivial(2).unwrap()]).unwrap();
        assert!(rows[0].decomposable && rows[0].square_free);
        assert_eq!(rows[0].simples, 4);

        let text = render_census(&rows);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "1\t2\t1,2;1,2\ttrue\tfalse\ttrue\t4\t1\t0\t1\t0\t0"
        );
    }
}
