//! Garside structure of the monoid of an involutive braided solution.
//!
//! Elements are compared with [`word_equal`]; canonical forms only fix a
//! display order. Δ is the right lcm of the generators, the simples are the
//! lcms of subsets of generators, and `Δ_x` is the lcm of the g-orbit of `x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::presentation::presentation_of;
use crate::reversing::{
    canonical_form, check_right_coherence, complement, equivalence_class, right_complement,
    right_lcm_words, word_equal,
};
use crate::solution::SetSolution;
use crate::word::Word;

/// The criteria for the monoid to be Garside with the given complement.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct GarsideConditions {
    /// Relations preserve length, so the monoid is atomic.
    pub c0: bool,
    /// Right cube condition on generators.
    pub c1: bool,
    /// Right cancellativity: left complements are total and unique, and no
    /// short counterexample to right cancellation exists.
    pub c1_tilde: bool,
    /// Right cube condition on the closure of the generators.
    pub c2: bool,
    /// The complement of two generators is a generator or ε.
    pub c3: bool,
}

impl GarsideConditions {
    pub fn all(&self) -> bool {
        self.c0 && self.c1 && self.c1_tilde && self.c2 && self.c3
    }
}

impl fmt::Display for GarsideConditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C0={} C1={} C~1={} C2={} C3={}",
            self.c0, self.c1, self.c1_tilde, self.c2, self.c3
        )
    }
}

/// Words up to this total count are used in the brute-force cancellation test.
const CANCEL_BUDGET: usize = 1 << 20;

/// Evaluates each Garside criterion for the complemented presentation of `sol`.
/// Works on any non-degenerate solution; defects show up as `false` flags.
pub fn check_garside_conditions(sol: &SetSolution) -> GarsideConditions {
    let n = sol.n();
    let pres = presentation_of(sol);
    // Both sides of every relation are pairs, so length is an invariant.
    let c0 = true;

    let mut right_tab: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut left_tab: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for r in pres.relations() {
        let ((a, b), (c, d)) = (r.lhs(), r.rhs());
        if a != c {
            right_tab.entry((a, c)).or_default().push(b);
            right_tab.entry((c, a)).or_default().push(d);
        }
        if b != d {
            left_tab.entry((b, d)).or_default().push(a);
            left_tab.entry((d, b)).or_default().push(c);
        }
    }
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j);
    let c3 = pairs().all(|(i, j)| {
        matches!(right_tab.get(&(i, j)), Some(v) if v.len() == 1 && Some(v[0]) == right_complement(sol, i, j))
    });
    let left_unique = pairs().all(|(i, j)| matches!(left_tab.get(&(i, j)), Some(v) if v.len() == 1));
    let coherent = check_right_coherence(sol).is_none();
    GarsideConditions {
        c0,
        c1: coherent,
        c1_tilde: left_unique && brute_force_right_cancellation(sol, 4),
        c2: coherent,
        c3,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind((0..size).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Class index of every word of length `len` (base-`n` code, first letter
/// most significant) under the defining relations.
fn word_classes(sol: &SetSolution, len: usize) -> Vec<usize> {
    let n = sol.n();
    let total = n.pow(len as u32);
    let mut uf = UnionFind::new(total);
    for code in 0..total {
        let mut place = 1;
        for _ in 1..len {
            // letters at positions with weights `place * n` and `place`
            let b = (code / place) % n;
            let a = (code / (place * n)) % n;
            let (c, d) = sol.s(a, b);
            let other = code - a * place * n - b * place + c * place * n + d * place;
            uf.union(code, other);
            place *= n;
        }
    }
    (0..total).map(|c| uf.find(c)).collect()
}

/// Checks `u·x = v·x ⟹ u = v` for all words with `|u·x| ≤ max_len`, shrinking
/// `max_len` until the word count fits the budget.
pub fn brute_force_right_cancellation(sol: &SetSolution, max_len: usize) -> bool {
    let n = sol.n();
    let mut len = max_len;
    while len > 1 && n.checked_pow(len as u32).is_none_or(|t| t > CANCEL_BUDGET) {
        len -= 1;
    }
    let mut shorter = word_classes(sol, 1);
    for l in 2..=len {
        let longer = word_classes(sol, l);
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (code, &cls) in longer.iter().enumerate() {
            let (u, x) = (code / n, code % n);
            let prev = *seen.entry((cls, x)).or_insert(shorter[u]);
            if prev != shorter[u] {
                return false;
            }
        }
        shorter = longer;
    }
    true
}

/// Right lcm of the given generators, by iterated reversing.
pub fn lcm_of_generators(sol: &SetSolution, gens: impl IntoIterator<Item = usize>) -> Word {
    gens.into_iter()
        .fold(Word::empty(), |acc, x| right_lcm_words(sol, &acc, &Word::letter(x)))
}

/// Δ = x1 ∨ … ∨ xn.
pub fn garside_element(sol: &SetSolution) -> Word {
    lcm_of_generators(sol, 0..sol.n())
}

/// Garside data of the structure monoid of a validated solution.
#[derive(Clone, Debug)]
pub struct GarsideMonoid<'a> {
    sol: &'a SetSolution,
    conditions: GarsideConditions,
    delta: Word,
    simples: Vec<Word>,
}

impl<'a> GarsideMonoid<'a> {
    /// Requires an involutive braided solution whose presentation passes all
    /// Garside criteria.
    pub fn new(sol: &'a SetSolution) -> Result<Self> {
        let report = sol.validate(true);
        if !report.ok() {
            return Err(Error::Precondition(format!(
                "the solution is not involutive and braided (first failure: {})",
                report
                    .failing_witness
                    .map(|w| format!("{} at {:?}", w.equation, w.indices))
                    .unwrap_or_default()
            )));
        }
        let conditions = check_garside_conditions(sol);
        if !conditions.all() {
            return Err(Error::NotGarside(conditions));
        }
        let delta = garside_element(sol);
        if delta.len() != sol.n() {
            return Err(Error::Inconsistency(format!(
                "Δ has length {}, expected {}",
                delta.len(),
                sol.n()
            )));
        }
        let simples = compute_simples(sol)?;
        Ok(GarsideMonoid {
            sol,
            conditions,
            delta,
            simples,
        })
    }

    pub fn solution(&self) -> &SetSolution {
        self.sol
    }

    pub fn conditions(&self) -> GarsideConditions {
        self.conditions
    }

    pub fn delta(&self) -> &Word {
        &self.delta
    }

    /// ε and the lcm of every nonempty set of generators, canonical words
    /// sorted by length then lexicographically.
    pub fn simples(&self) -> &[Word] {
        &self.simples
    }

    /// `Δ_x`: the lcm of the orbit of `x` under `⟨g_1, …, g_n⟩`.
    pub fn delta_sub(&self, x: usize) -> Word {
        let orbit = self
            .sol
            .g_orbits()
            .into_iter()
            .find(|o| o.contains(&x))
            .expect("orbits cover every point");
        lcm_of_generators(self.sol, orbit)
    }

    /// `Δ_x` for every generator, in index order.
    pub fn delta_subs(&self) -> Vec<Word> {
        (0..self.sol.n())
            .into_par_iter()
            .map(|x| self.delta_sub(x))
            .collect()
    }

    /// All `Δ_x` coincide. Cross-checked against the solution having a single
    /// g-orbit; a disagreement is an internal error.
    pub fn is_delta_pure(&self) -> Result<bool> {
        let subs = self.delta_subs();
        let pure = subs.windows(2).all(|w| word_equal(self.sol, &w[0], &w[1]));
        let indecomposable = self.sol.is_indecomposable();
        if pure != indecomposable {
            return Err(Error::Inconsistency(format!(
                "Δ-purity is {pure} but indecomposability is {indecomposable}"
            )));
        }
        Ok(pure)
    }

    /// `φ(s) = (s\Δ)\Δ`.
    pub fn phi(&self, s: &Word) -> Word {
        let d = &self.delta;
        complement(self.sol, &complement(self.sol, s, d), d)
    }

    /// `φ` as a permutation of [`simples`](Self::simples).
    pub fn phi_on_simples(&self) -> Result<Permutation> {
        let index: BTreeMap<&Word, usize> =
            self.simples.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let images = self
            .simples
            .iter()
            .map(|s| {
                let img = canonical_form(self.sol, &self.phi(s));
                index.get(&img).copied().ok_or_else(|| {
                    Error::Inconsistency(format!("φ({s}) = {img} is not a simple"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
            .map_err(|_| Error::Inconsistency("φ does not permute the simples".into()))
    }

    /// Order of `φ`, the lcm of its cycle lengths on the simples.
    pub fn exponent(&self) -> Result<usize> {
        Ok(self.phi_on_simples()?.order())
    }

    /// Upper bound on the (co)homological dimension of the structure group:
    /// the length of Δ, which is `n`.
    pub fn cohom_dim_bound(&self) -> usize {
        self.delta.len()
    }

    /// Canonical forms of the left divisors of `w` (prefixes of any
    /// representative), sorted by length then lexicographically.
    pub fn left_divisors(&self, w: &Word) -> Vec<Word> {
        self.divisors(w, |word, k| Word::new(word[..k].to_vec()))
    }

    /// Canonical forms of the right divisors of `w` (suffixes).
    pub fn right_divisors(&self, w: &Word) -> Vec<Word> {
        self.divisors(w, |word, k| Word::new(word[word.len() - k..].to_vec()))
    }

    fn divisors(&self, w: &Word, cut: impl Fn(&Word, usize) -> Word) -> Vec<Word> {
        let mut raw = BTreeSet::new();
        for rep in equivalence_class(self.sol, w) {
            for k in 0..=rep.len() {
                raw.insert(cut(&rep, k));
            }
        }
        sort_simples(raw.iter().map(|d| canonical_form(self.sol, d)).collect())
    }

    pub fn report(&self) -> Result<GarsideReport> {
        let left = self.left_divisors(&self.delta);
        let right = self.right_divisors(&self.delta);
        Ok(GarsideReport {
            n: self.sol.n(),
            delta: self.delta.clone(),
            simples: self.simples.clone(),
            delta_sub: self.delta_subs(),
            is_delta_pure: self.is_delta_pure()?,
            exponent: self.exponent()?,
            cohom_dim_bound: self.cohom_dim_bound(),
            divisors_balanced: left == right && left == self.simples,
            orbits: self
                .sol
                .g_orbits()
                .into_iter()
                .map(|o| o.into_iter().map(|x| x + 1).collect())
                .collect(),
            conditions: self.conditions,
        })
    }
}

fn sort_simples(mut words: Vec<Word>) -> Vec<Word> {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words.dedup();
    words
}

fn compute_simples(sol: &SetSolution) -> Result<Vec<Word>> {
    let n = sol.n();
    let lcms = (1u64..1 << n)
        .into_par_iter()
        .map(|mask| {
            let gens: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let l = lcm_of_generators(sol, gens.iter().copied());
            if l.len() != gens.len() {
                return Err(Error::Inconsistency(format!(
                    "lcm of {} generators has length {}",
                    gens.len(),
                    l.len()
                )));
            }
            Ok(canonical_form(sol, &l))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut all = lcms;
    all.push(Word::empty());
    Ok(sort_simples(all))
}

/// Summary of the Garside structure, for the CLI and golden files.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GarsideReport {
    pub n: usize,
    pub delta: Word,
    pub simples: Vec<Word>,
    /// `Δ_x` for `x = x1, …, xn`.
    pub delta_sub: Vec<Word>,
    pub is_delta_pure: bool,
    pub exponent: usize,
    pub cohom_dim_bound: usize,
    /// Left divisors, right divisors and simples of Δ coincide.
    pub divisors_balanced: bool,
    /// g-orbits, 1-based.
    pub orbits: Vec<Vec<usize>>,
    pub conditions: GarsideConditions,
}

impl fmt::Display for GarsideReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "delta: {}", self.delta)?;
        writeln!(f, "simples: {}", self.simples.len())?;
        for s in &self.simples {
            writeln!(f, "  {s}")?;
        }
        for (x, d) in self.delta_sub.iter().enumerate() {
            writeln!(f, "delta_x{}: {d}", x + 1)?;
        }
        let orbits: Vec<String> = self
            .orbits
            .iter()
            .map(|o| {
                let inner: Vec<String> = o.iter().map(usize::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        writeln!(f, "orbits: {}", orbits.join(" "))?;
        writeln!(f, "delta_pure: {}", self.is_delta_pure)?;
        writeln!(f, "exponent: {}", self.exponent)?;
        writeln!(f, "cohom_dim_bound: {}", self.cohom_dim_bound)?;
        writeln!(f, "divisors_balanced: {}", self.divisors_balanced)?;
        writeln!(f, "conditions: {}", self.conditions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn w(l: &[usize]) -> Word {
        Word::from_one_based(l)
    }

    #[test]
    fn conditions_hold_on_examples() {
        for sol in [examples::example1(), examples::example2(), SetSolution::trivial(3).unwrap()] {
            let c = check_garside_conditions(&sol);
            assert!(c.all(), "{c}");
        }
    }

    #[test]
    fn example2_values() {
        let sol = examples::example2();
        let m = GarsideMonoid::new(&sol).unwrap();
        assert_eq!(m.delta().len(), 3);
        assert!(word_equal(&sol, m.delta(), &w(&[1, 1, 1])));
        let printed = [
            &[][..],
            &[1],
            &[2],
            &[3],
            &[1, 1],
            &[2, 2],
            &[3, 3],
            &[1, 1, 1],
        ];
        assert_eq!(m.simples().len(), printed.len());
        for p in printed {
            assert!(m.simples().iter().any(|s| word_equal(&sol, s, &w(p))), "{}", w(p));
        }
        // x3 x3 = x1 x2 is a defining relation, so the lex-least word differs.
        assert!(m.simples().contains(&w(&[1, 2])));
        assert_eq!(m.exponent().unwrap(), 1);
        assert!(m.is_delta_pure().unwrap());
        assert_eq!(m.cohom_dim_bound(), 3);
        let d = m.delta().clone();
        assert!(word_equal(&sol, &complement(&sol, &w(&[1]), &d), &w(&[1, 1])));
        assert!(word_equal(&sol, &m.phi(&w(&[1])), &w(&[1])));
        assert!(word_equal(&sol, &complement(&sol, &w(&[2, 2]), &d), &w(&[2])));
        assert!(word_equal(&sol, &m.phi(&w(&[2, 2])), &w(&[2, 2])));
        for x in 0..3 {
            assert!(word_equal(&sol, &m.delta_sub(x), &d));
        }
    }

    #[test]
    fn example1_values() {
        let sol = examples::example1();
        let m = GarsideMonoid::new(&sol).unwrap();
        assert_eq!(m.delta().len(), 5);
        let reversed = lcm_of_generators(&sol, (0..5).rev());
        assert!(word_equal(&sol, m.delta(), &reversed));
        assert!(m.simples().contains(&w(&[1, 1])));
        assert!(m.simples().contains(&w(&[1, 2])));
        assert_eq!(m.delta_sub(4), w(&[5]));
        assert_eq!(m.delta_sub(0).len(), 4);
        assert!(!m.is_delta_pure().unwrap());
        assert_eq!(m.cohom_dim_bound(), 5);
        let r = m.report().unwrap();
        assert!(r.divisors_balanced);
        assert_eq!(r.simples.len(), m.simples().len());
    }

    #[test]
    fn single_generator() {
        let sol = SetSolution::trivial(1).unwrap();
        let m = GarsideMonoid::new(&sol).unwrap();
        assert_eq!(m.delta(), &w(&[1]));
        assert_eq!(m.simples(), &[Word::empty(), w(&[1])]);
        assert_eq!(m.exponent().unwrap(), 1);
        assert_eq!(m.cohom_dim_bound(), 1);
        assert!(m.is_delta_pure().unwrap());
    }

    #[test]
    fn trivial_two_generators() {
        let sol = SetSolution::trivial(2).unwrap();
        let m = GarsideMonoid::new(&sol).unwrap();
        assert_eq!(m.simples(), &[Word::empty(), w(&[1]), w(&[2]), w(&[1, 2])]);
        assert!(!m.is_delta_pure().unwrap());
    }

    #[test]
    fn rejects_non_involutive() {
        let sol = examples::quotient_example().lift();
        assert!(matches!(GarsideMonoid::new(&sol), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_round_trips_through_json() {
        let sol = examples::example2();
        let r = GarsideMonoid::new(&sol).unwrap().report().unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: GarsideReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(r.to_string().contains("exponent: 1"));
    }

    #[test]
    fn union_find_cancellation_on_trivial() {
        assert!(brute_force_right_cancellation(&SetSolution::trivial(3).unwrap(), 4));
        assert!(brute_force_right_cancellation(&examples::example1(), 4));
    }
}
