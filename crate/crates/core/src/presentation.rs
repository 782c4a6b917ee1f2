//! Tableau presentations: quadratic relations `x_i x_j = x_k x_l`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::solution::SetSolution;

/// A length-2 word `x_a x_b`, 0-based.
pub type Pair = (usize, usize);

/// A non-trivial relation between two length-2 words, stored with the
/// lexicographically smaller side first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Relation {
    lhs: Pair,
    rhs: Pair,
}

impl Relation {
    /// Returns `None` for the trivial relation `w = w`.
    pub fn new(a: Pair, b: Pair) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(Relation { lhs: a, rhs: b }),
            std::cmp::Ordering::Greater => Some(Relation { lhs: b, rhs: a }),
        }
    }

    pub fn lhs(&self) -> Pair {
        self.lhs
    }

    pub fn rhs(&self) -> Pair {
        self.rhs
    }

    pub fn map(&self, s: &Permutation) -> Relation {
        let m = |(a, b): Pair| (s.apply(a), s.apply(b));
        Relation::new(m(self.lhs), m(self.rhs)).expect("bijections keep relations non-trivial")
    }

    pub fn kind(&self) -> RelationKind {
        classify_relation(self)
    }

    /// Renders with custom generator labels.
    pub fn render_with(&self, label: &dyn Fn(usize) -> String) -> String {
        format!(
            "{} {} = {} {}",
            label(self.lhs.0),
            label(self.lhs.1),
            label(self.rhs.0),
            label(self.rhs.1)
        )
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&|x| format!("x{}", x + 1)))
    }
}

/// The four shapes a defining relation of an involutive solution can take.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `x_i² = x_j x_k`
    Quad,
    /// `x_i x_j = x_j x_i`
    Comm,
    /// `x_i x_j = x_j x_k`
    Log,
    /// `x_i x_j = x_k x_l` with `{k,l} ≠ {i,j}`
    FourDiff,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Quad => "quad",
            RelationKind::Comm => "comm",
            RelationKind::Log => "log",
            RelationKind::FourDiff => "4-diff",
        })
    }
}

/// Classifies a relation; precedence is quad, comm, log, 4-diff.
pub fn classify_relation(rel: &Relation) -> RelationKind {
    let (i, j) = rel.lhs;
    let (k, l) = rel.rhs;
    if i == j || k == l {
        RelationKind::Quad
    } else if (i, j) == (l, k) {
        RelationKind::Comm
    } else if j == k || l == i {
        RelationKind::Log
    } else {
        RelationKind::FourDiff
    }
}

/// True for the shapes `x_i x_j = x_i x_k` and `x_j x_i = x_k x_i`, which
/// only arise from non-involutive solutions.
pub fn is_cancellation_form(rel: &Relation) -> bool {
    rel.lhs.0 == rel.rhs.0 || rel.lhs.1 == rel.rhs.1
}

/// Generator count plus a set of quadratic relations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TableauPresentation {
    n: usize,
    relations: BTreeSet<Relation>,
}

impl TableauPresentation {
    pub fn new(n: usize, relations: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let relations: BTreeSet<Relation> = relations.into_iter().collect();
        for r in &relations {
            let (a, b) = r.lhs;
            let (c, d) = r.rhs;
            if let Some(&x) = [a, b, c, d].iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { index: x + 1, n });
            }
        }
        Ok(TableauPresentation { n, relations })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &BTreeSet<Relation> {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Number of occurrences of each length-2 word across all relation sides.
    pub fn word_occurrences(&self) -> BTreeMap<Pair, usize> {
        let mut occ = BTreeMap::new();
        for r in &self.relations {
            *occ.entry(r.lhs).or_insert(0) += 1;
            *occ.entry(r.rhs).or_insert(0) += 1;
        }
        occ
    }

    /// Words appearing in more than one relation side.
    pub fn duplicated_words(&self) -> Vec<Pair> {
        self.word_occurrences()
            .into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(w, _)| w)
            .collect()
    }

    pub fn kind_counts(&self) -> BTreeMap<RelationKind, usize> {
        let mut counts = BTreeMap::new();
        for r in &self.relations {
            *counts.entry(r.kind()).or_insert(0) += 1;
        }
        counts
    }

    /// Image of the presentation under a generator bijection.
    pub fn map(&self, s: &Permutation) -> TableauPresentation {
        TableauPresentation {
            n: self.n,
            relations: self.relations.iter().map(|r| r.map(s)).collect(),
        }
    }

    /// Relation lines sorted canonically, with custom generator labels.
    pub fn render_with(&self, label: &dyn Fn(usize) -> String) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&r.render_with(label));
            out.push('\n');
        }
        out
    }

    /// One `x<i> x<j> = x<k> x<l>` line per relation, canonical order.
    pub fn relation_lines(&self) -> String {
        self.render_with(&|x| format!("x{}", x + 1))
    }
}

impl fmt::Display for TableauPresentation {
    /// The presentation file format: an `n = <n>` header, then one relation
    /// per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        f.write_str(&self.relation_lines())
    }
}

/// The presentation `{ x_i x_j = x_k x_l : S(i,j) = (k,l) ≠ (i,j) }` of the
/// structure monoid.
///
/// For involutive solutions this has exactly `n(n-1)/2` relations. For
/// non-involutive inputs the same rule applies but chains of equal words may
/// share sides; see [`TableauPresentation::duplicated_words`].
pub fn presentation_of(sol: &SetSolution) -> TableauPresentation {
    let n = sol.n();
    let mut relations = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(r) = Relation::new((i, j), sol.s(i, j)) {
                relations.insert(r);
            }
        }
    }
    TableauPresentation { n, relations }
}

/// Searches for a generator bijection carrying the relations of `p` exactly
/// onto those of `q`. Candidates are tried in lexicographic order.
pub fn t_isomorphic(p: &TableauPresentation, q: &TableauPresentation) -> Option<Permutation> {
    let n = p.n;
    if n != q.n || p.len() != q.len() || p.kind_counts() != q.kind_counts() {
        return None;
    }
    let sig = |pres: &TableauPresentation| -> Vec<Vec<(RelationKind, usize)>> {
        let mut per_gen = vec![BTreeMap::new(); pres.n];
        for r in &pres.relations {
            let (a, b) = r.lhs;
            let (c, d) = r.rhs;
            for x in [a, b, c, d] {
                *per_gen[x].entry(r.kind()).or_insert(0usize) += 1;
            }
        }
        per_gen.into_iter().map(|m| m.into_iter().collect()).collect()
    };
    let sig_p = sig(p);
    let sig_q = sig(q);

    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        p: &TableauPresentation,
        q: &TableauPresentation,
        sig_p: &[Vec<(RelationKind, usize)>],
        sig_q: &[Vec<(RelationKind, usize)>],
        x: usize,
        phi: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = p.n;
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || sig_p[x] != sig_q[y] {
                continue;
            }
            phi[x] = y;
            used[y] = true;
            let ok = p.relations.iter().all(|r| {
                let (a, b) = r.lhs;
                let (c, d) = r.rhs;
                if [a, b, c, d].iter().any(|&z| z > x) {
                    return true;
                }
                let m = |(u, v): Pair| (phi[u], phi[v]);
                Relation::new(m(r.lhs), m(r.rhs)).is_some_and(|img| q.relations.contains(&img))
            });
            if ok && go(p, q, sig_p, sig_q, x + 1, phi, used) {
                return true;
            }
            used[y] = false;
            phi[x] = usize::MAX;
        }
        false
    }
    if go(p, q, &sig_p, &sig_q, 0, &mut phi, &mut used) {
        // Equal cardinalities plus injectivity of the relation map give the
        // "if and only if".
        Some(Permutation::from_images(phi).expect("backtracking builds a bijection"))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn rel(a: [usize; 2], b: [usize; 2]) -> Relation {
        Relation::new((a[0] - 1, a[1] - 1), (b[0] - 1, b[1] - 1)).unwrap()
    }

    #[test]
    fn relation_orientation_is_canonical() {
        let r = rel([3, 4], [1, 2]);
        assert_eq!(r.lhs(), (0, 1));
        assert_eq!(r.to_string(), "x1 x2 = x3 x4");
        assert_eq!(Relation::new((1, 1), (1, 1)), None);
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify_relation(&rel([1, 2], [3, 4])), RelationKind::FourDiff);
        assert_eq!(classify_relation(&rel([1, 5], [5, 1])), RelationKind::Comm);
        assert_eq!(classify_relation(&rel([1, 1], [2, 2])), RelationKind::Quad);
        assert_eq!(classify_relation(&rel([1, 1], [2, 3])), RelationKind::Quad);
        assert_eq!(classify_relation(&rel([1, 2], [2, 3])), RelationKind::Log);
        assert_eq!(classify_relation(&rel([3, 1], [1, 2])), RelationKind::Log);
        assert!(is_cancellation_form(&rel([1, 2], [1, 4])));
        assert!(!is_cancellation_form(&rel([1, 2], [3, 4])));
    }

    #[test]
    fn example1_relations() {
        let p = presentation_of(&examples::example1());
        assert_eq!(p.len(), 10);
        assert!(p.duplicated_words().is_empty());
        assert_eq!(
            p.relation_lines(),
            "x1 x1 = x2 x2\n\
             x1 x2 = x3 x4\n\
             x1 x3 = x4 x2\n\
             x1 x5 = x5 x1\n\
             x2 x1 = x4 x3\n\
             x2 x4 = x3 x1\n\
             x2 x5 = x5 x2\n\
             x3 x3 = x4 x4\n\
             x3 x5 = x5 x3\n\
             x4 x5 = x5 x4\n"
        );
    }

    #[test]
    fn example2_and_trivial_relations() {
        let p = presentation_of(&examples::example2());
        let expected = TableauPresentation::new(
            3,
            [rel([1, 1], [2, 3]), rel([2, 2], [3, 1]), rel([3, 3], [1, 2])],
        )
        .unwrap();
        assert_eq!(p, expected);

        let t = presentation_of(&SetSolution::trivial(2).unwrap());
        assert_eq!(t.relation_lines(), "x1 x2 = x2 x1\n");
    }

    #[test]
    fn non_involutive_presentation_reports_duplicates() {
        let p = presentation_of(&examples::quotient_example().lift());
        assert!(!p.duplicated_words().is_empty());
        assert!(p.relations().iter().any(is_cancellation_form));
    }

    #[test]
    fn t_isomorphism() {
        let p = presentation_of(&examples::example1());
        assert!(t_isomorphic(&p, &p).unwrap().is_identity());

        let q = presentation_of(&examples::example2());
        let triv = presentation_of(&SetSolution::trivial(3).unwrap());
        assert_eq!(t_isomorphic(&q, &triv), None);

        let c = |cyc: &[usize]| Permutation::from_cycles(3, &[cyc]).unwrap();
        let a = presentation_of(&crate::PermutationSolution::involutive(c(&[1, 2, 3])).lift());
        let b = presentation_of(&crate::PermutationSolution::involutive(c(&[1, 3, 2])).lift());
        let s = t_isomorphic(&a, &b).unwrap();
        assert_eq!(a.map(&s), b);
    }
}
