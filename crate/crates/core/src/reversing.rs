//! Word reversing on the complemented presentation of a solution.
//!
//! On letters the right complement is `x_i \ x_j = g_i^{-1}(j)` and the left
//! complement is `x_j ~\ x_i = f_i^{-1}(j)`; both are ε on the diagonal.
//! Reversing `u^{-1} v` fills a grid whose cells apply the relation
//! `a·(a\b) = b·(b\a)`, yielding `u\v` along the bottom edge and `v\u` along
//! the right edge.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::solution::SetSolution;
use crate::word::{fmt_letter, Letter, Word};

/// `x_i \ x_j`: ε if `i == j`, else `g_i^{-1}(j)`.
pub fn right_complement(sol: &SetSolution, i: usize, j: usize) -> Letter {
    if i == j {
        None
    } else {
        Some(sol.g_inv(i).apply(j))
    }
}

/// `x_j ~\ x_i`, the left multiplier `a` with `a·x_i = x_i ~∨ x_j`:
/// ε if `i == j`, else `f_i^{-1}(j)`.
pub fn left_complement(sol: &SetSolution, j: usize, i: usize) -> Letter {
    if i == j {
        None
    } else {
        Some(sol.f_inv(i).apply(j))
    }
}

/// Right complement extended to ε: `ε\b = b`, `a\ε = ε`.
pub fn letter_right(sol: &SetSolution, a: Letter, b: Letter) -> Letter {
    match (a, b) {
        (_, None) => None,
        (None, b) => b,
        (Some(a), Some(b)) => right_complement(sol, a, b),
    }
}

/// Left complement extended to ε: `ε ~\ x = ε`, `y ~\ ε = y`.
pub fn letter_left(sol: &SetSolution, y: Letter, x: Letter) -> Letter {
    match (y, x) {
        (None, _) => None,
        (y, None) => y,
        (Some(y), Some(x)) => left_complement(sol, y, x),
    }
}

/// One reversing cell: left edge `a`, top edge `b`. Returns
/// `(right edge, bottom edge) = (b\a, a\b)`.
#[inline]
fn cell(sol: &SetSolution, a: Letter, b: Letter) -> (Letter, Letter) {
    (letter_right(sol, b, a), letter_right(sol, a, b))
}

/// The full reversing diagram of `u^{-1} v`.
///
/// `u` runs down the left edge and `v` along the top. `vertical[r][c]` is the
/// downward edge in row `r` at column boundary `c` (`0..=|v|`), and
/// `horizontal[r][c]` the rightward edge on row boundary `r` (`0..=|u|`) in
/// column `c`. Storage is row-major with `None` for ε.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReversingGrid {
    pub top: Word,
    pub left: Word,
    pub vertical: Vec<Vec<Letter>>,
    pub horizontal: Vec<Vec<Letter>>,
}

impl ReversingGrid {
    /// Text rendering: rows of rightward labels (`→x`) alternate with rows
    /// of downward labels (`↓x`), as in the usual reversing diagrams.
    pub fn render(&self) -> String {
        let label = |arrow: char, l: Letter| format!("{arrow}{}", fmt_letter(l));
        let width = self
            .vertical
            .iter()
            .chain(&self.horizontal)
            .flatten()
            .map(|&l| label(' ', l).chars().count())
            .max()
            .unwrap_or(3)
            .max(3);
        let pad = |s: String| {
            let len = s.chars().count();
            format!("{s}{}", " ".repeat(width.saturating_sub(len)))
        };
        let mut out = String::new();
        for r in 0..=self.left.len() {
            let mut line = " ".repeat(width);
            for &h in &self.horizontal[r] {
                line.push_str(&pad(label('→', h)));
                line.push_str(&" ".repeat(width));
            }
            out.push_str(line.trim_end());
            out.push('\n');
            if r < self.left.len() {
                let mut line = String::new();
                for (c, &v) in self.vertical[r].iter().enumerate() {
                    if c > 0 {
                        line.push_str(&" ".repeat(width));
                    }
                    line.push_str(&pad(label('↓', v)));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for ReversingGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Result of reversing `u^{-1} v` into `(u\v)(v\u)^{-1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Reversal {
    /// `u\v`, read along the bottom edge.
    pub u_under_v: Word,
    /// `v\u`, read down the right edge.
    pub v_under_u: Word,
    pub grid: ReversingGrid,
}

fn collect(letters: impl IntoIterator<Item = Letter>) -> Word {
    letters.into_iter().flatten().collect()
}

/// Reverses `u^{-1} v` and keeps the whole diagram.
pub fn reverse(sol: &SetSolution, u: &Word, v: &Word) -> Reversal {
    let (p, q) = (u.len(), v.len());
    let mut vertical = vec![vec![None; q + 1]; p];
    let mut horizontal = vec![vec![None; q]; p + 1];
    for (r, &a) in u.iter().enumerate() {
        vertical[r][0] = Some(a);
    }
    for (c, &b) in v.iter().enumerate() {
        horizontal[0][c] = Some(b);
    }
    for r in 0..p {
        for c in 0..q {
            let (right, bottom) = cell(sol, vertical[r][c], horizontal[r][c]);
            vertical[r][c + 1] = right;
            horizontal[r + 1][c] = bottom;
        }
    }
    Reversal {
        u_under_v: collect(horizontal[p].iter().copied()),
        v_under_u: collect(vertical.iter().map(|row| row[q])),
        grid: ReversingGrid {
            top: v.clone(),
            left: u.clone(),
            vertical,
            horizontal,
        },
    }
}

/// `(u\v, v\u)` without materialising the diagram.
pub fn complements(sol: &SetSolution, u: &Word, v: &Word) -> (Word, Word) {
    let mut bottom: Vec<Letter> = v.iter().map(|&b| Some(b)).collect();
    let mut right = Vec::with_capacity(u.len());
    for &a in u.iter() {
        let mut cur = Some(a);
        for b in bottom.iter_mut() {
            let (r, d) = cell(sol, cur, *b);
            cur = r;
            *b = d;
        }
        right.push(cur);
    }
    (collect(bottom), collect(right))
}

/// `u \ v`.
pub fn complement(sol: &SetSolution, u: &Word, v: &Word) -> Word {
    complements(sol, u, v).0
}

/// `u · (u\v)`, a word for the right lcm `u ∨ v`.
pub fn right_lcm_words(sol: &SetSolution, u: &Word, v: &Word) -> Word {
    u.concat(&complement(sol, u, v))
}

/// Decides equality in the structure monoid of an involutive, braided
/// solution: equal lengths and both complements empty.
pub fn word_equal(sol: &SetSolution, u: &Word, v: &Word) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let (uv, vu) = complements(sol, u, v);
    uv.is_empty() && vu.is_empty()
}

/// `u` left-divides `v` iff `v\u = ε`.
pub fn left_divides(sol: &SetSolution, u: &Word, v: &Word) -> bool {
    u.len() <= v.len() && complement(sol, v, u).is_empty()
}

/// The lexicographically least word representing the same element as `w`.
///
/// Built greedily: the least letter `a` left-dividing the element comes
/// first, followed by the least word for `a\w`. Valid for involutive braided
/// solutions, where the monoid is cancellative.
pub fn canonical_form(sol: &SetSolution, w: &Word) -> Word {
    let mut rest = w.clone();
    let mut out = Word::empty();
    while !rest.is_empty() {
        let a = (0..sol.n())
            .find(|&a| complement(sol, &rest, &Word::letter(a)).is_empty())
            .expect("the first letter of any representative divides it");
        rest = complement(sol, &Word::letter(a), &rest);
        out.push(a);
    }
    out
}

/// All words equal to `w` in the monoid, by breadth-first application of
/// the relations `x_i x_j ↦ S(i,j)`. Only meaningful for involutive `S`,
/// where this map is its own inverse.
pub fn equivalence_class(sol: &SetSolution, w: &Word) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for p in 0..cur.len().saturating_sub(1) {
            let (a, b) = sol.s(cur[p], cur[p + 1]);
            if (a, b) == (cur[p], cur[p + 1]) {
                continue;
            }
            let mut next = cur.clone().into_letters();
            next[p] = a;
            next[p + 1] = b;
            let next = Word::new(next);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// The intermediate values of the right cube condition at `(a, b, c)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoherenceTrace {
    pub a_b: Letter,
    pub b_a: Letter,
    pub a_c: Letter,
    pub b_c: Letter,
    /// `(a\b)\(a\c)`
    pub lhs: Letter,
    /// `(b\a)\(b\c)`
    pub rhs: Letter,
    /// `lhs \ rhs`
    pub residual: Letter,
}

impl CoherenceTrace {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn right_coherence_trace(sol: &SetSolution, a: usize, b: usize, c: usize) -> CoherenceTrace {
    let (a, b, c) = (Some(a), Some(b), Some(c));
    let a_b = letter_right(sol, a, b);
    let b_a = letter_right(sol, b, a);
    let a_c = letter_right(sol, a, c);
    let b_c = letter_right(sol, b, c);
    let lhs = letter_right(sol, a_b, a_c);
    let rhs = letter_right(sol, b_a, b_c);
    CoherenceTrace {
        a_b,
        b_a,
        a_c,
        b_c,
        lhs,
        rhs,
        residual: letter_right(sol, lhs, rhs),
    }
}

/// First triple (0-based, lexicographic) violating
/// `(x_i\x_k)\(x_i\x_m) = (x_k\x_i)\(x_k\x_m)`.
pub fn check_right_coherence(sol: &SetSolution) -> Option<(usize, usize, usize)> {
    let n = sol.n();
    for i in 0..n {
        for k in 0..n {
            for m in 0..n {
                if !right_coherence_trace(sol, i, k, m).holds() {
                    return Some((i, k, m));
                }
            }
        }
    }
    None
}

/// First triple (0-based, lexicographic) violating
/// `(x_i ~\ x_j) ~\ (x_k ~\ x_j) = (x_i ~\ x_k) ~\ (x_j ~\ x_k)`.
pub fn check_left_coherence(sol: &SetSolution) -> Option<(usize, usize, usize)> {
    let n = sol.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (xi, xj, xk) = (Some(i), Some(j), Some(k));
                let lhs = letter_left(sol, letter_left(sol, xi, xj), letter_left(sol, xk, xj));
                let rhs = letter_left(sol, letter_left(sol, xi, xk), letter_left(sol, xj, xk));
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
