//! Finite set-theoretic solutions `S(i,j) = (g_i(j), f_j(i))`.
//!
//! A [`SetSolution`] is non-degenerate by construction: every `f_i` and
//! `g_i` is a [`Permutation`]. Involutivity and braidedness are properties
//! checked by [`SetSolution::validate`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetSolution {
    n: usize,
    f: Vec<Permutation>,
    g: Vec<Permutation>,
    f_inv: Vec<Permutation>,
    g_inv: Vec<Permutation>,
}

/// Identifies which defining equation a [`Witness`] violates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    /// `f_i` or `g_i` is not a bijection.
    Bijective,
    /// `g_{g_i(j)}(f_j(i)) = i`
    InvolutiveG,
    /// `f_{f_j(i)}(g_i(j)) = j`
    InvolutiveF,
    /// `g_i g_j = g_{g_i(j)} g_{f_j(i)}`, evaluated at `k`
    BraidG,
    /// `f_j f_i = f_{f_j(i)} f_{g_i(j)}`, evaluated at `k`
    BraidF,
    /// `f_{g_{f_j(i)}(k)}(g_i(j)) = g_{f_{g_j(k)}(i)}(f_k(j))`
    BraidLink,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Equation::Bijective => "bijective",
            Equation::InvolutiveG => "involutive_g",
            Equation::InvolutiveF => "involutive_f",
            Equation::BraidG => "braid_g",
            Equation::BraidF => "braid_f",
            Equation::BraidLink => "braid_link",
        };
        f.write_str(s)
    }
}

/// A failing index tuple (1-based) with the equation it violates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub equation: Equation,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub nondegenerate: bool,
    pub involutive: bool,
    /// Braidedness from the three equation families on `f`, `g`.
    pub braided: bool,
    /// Braidedness from `S¹²S²³S¹² = S²³S¹²S²³` on all triples.
    pub braided_direct: bool,
    pub square_free: bool,
    pub involutive_required: bool,
    /// First failing witness among the requested properties, if any.
    pub failing_witness: Option<Witness>,
}

impl ValidationReport {
    /// True when every requested property holds.
    pub fn ok(&self) -> bool {
        self.failing_witness.is_none()
    }

    /// Non-degenerate, involutive and braided.
    pub fn is_symmetric(&self) -> bool {
        self.nondegenerate && self.involutive && self.braided
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nondegenerate: {}", self.nondegenerate)?;
        writeln!(f, "involutive: {}", self.involutive)?;
        writeln!(f, "braided: {}", self.braided)?;
        writeln!(f, "braided_direct: {}", self.braided_direct)?;
        writeln!(f, "square_free: {}", self.square_free)?;
        match &self.failing_witness {
            Some(w) => {
                let idx: Vec<String> = w.indices.iter().map(ToString::to_string).collect();
                writeln!(f, "failing_witness: ({}) {}", idx.join(","), w.equation)
            }
            None => writeln!(f, "failing_witness: none"),
        }
    }
}

impl SetSolution {
    /// Builds a solution from the families `(f_1..f_n)` and `(g_1..g_n)`.
    pub fn new(f: Vec<Permutation>, g: Vec<Permutation>) -> Result<Self> {
        let n = f.len();
        if n == 0 {
            return Err(Error::Input("a solution needs n >= 1".into()));
        }
        if g.len() != n {
            return Err(Error::Input(format!(
                "expected {n} g-permutations, found {}",
                g.len()
            )));
        }
        for (name, family) in [("f", &f), ("g", &g)] {
            if let Some((i, p)) = family.iter().enumerate().find(|(_, p)| p.degree() != n) {
                return Err(Error::Input(format!(
                    "{name}{} has degree {}, expected {n}",
                    i + 1,
                    p.degree()
                )));
            }
        }
        let f_inv = f.iter().map(Permutation::inverse).collect();
        let g_inv = g.iter().map(Permutation::inverse).collect();
        Ok(SetSolution {
            n,
            f,
            g,
            f_inv,
            g_inv,
        })
    }

    /// Builds a solution from 1-based image tables.
    pub fn from_tables(f: &[Vec<usize>], g: &[Vec<usize>]) -> Result<Self> {
        let conv = |t: &[Vec<usize>]| {
            t.iter()
                .map(|row| Permutation::from_one_based(row))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(conv(f)?, conv(g)?)
    }

    /// The trivial solution `S(x,y) = (y,x)`: every `f_i` and `g_i` is the
    /// identity.
    pub fn trivial(n: usize) -> Result<Self> {
        let id = Permutation::identity(n);
        Self::new(vec![id.clone(); n], vec![id; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self, i: usize) -> &Permutation {
        &self.f[i]
    }

    pub fn g(&self, i: usize) -> &Permutation {
        &self.g[i]
    }

    pub fn f_inv(&self, i: usize) -> &Permutation {
        &self.f_inv[i]
    }

    pub fn g_inv(&self, i: usize) -> &Permutation {
        &self.g_inv[i]
    }

    pub fn f_family(&self) -> &[Permutation] {
        &self.f
    }

    pub fn g_family(&self) -> &[Permutation] {
        &self.g
    }

    /// `S(i,j)` without range checks (0-based).
    #[inline]
    pub fn s(&self, i: usize, j: usize) -> (usize, usize) {
        (self.g[i].apply(j), self.f[j].apply(i))
    }

    /// `S(i,j) = (g_i(j), f_j(i))`, range-checked (0-based).
    pub fn apply_s(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        for x in [i, j] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: x + 1,
                    n: self.n,
                });
            }
        }
        Ok(self.s(i, j))
    }

    /// Concatenated g image tables; the ordering key for canonical
    /// representatives.
    pub fn g_key(&self) -> Vec<usize> {
        self.g.iter().flat_map(|p| p.images().iter().copied()).collect()
    }

    /// Transports the solution along the bijection `phi`, giving the solution
    /// `S'` with `S'(φx, φy) = (φ S₁(x,y), φ S₂(x,y))`.
    pub fn relabel(&self, phi: &Permutation) -> SetSolution {
        let n = self.n;
        let mut f = vec![vec![0; n]; n];
        let mut g = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let (s1, s2) = self.s(x, y);
                g[phi.apply(x)][phi.apply(y)] = phi.apply(s1);
                f[phi.apply(y)][phi.apply(x)] = phi.apply(s2);
            }
        }
        let mk = |t: Vec<Vec<usize>>| {
            t.into_iter()
                .map(|row| Permutation::from_images(row).expect("relabelling preserves bijectivity"))
                .collect()
        };
        SetSolution::new(mk(f), mk(g)).expect("same size")
    }

    /// Checks non-degeneracy, involutivity and braidedness.
    ///
    /// Never fails on a mathematical defect; the first lexicographically
    /// smallest failing tuple among the requested properties is returned in
    /// the report.
    pub fn validate(&self, require_involutive: bool) -> ValidationReport {
        let n = self.n;
        let mut bijective_witness = None;
        for (i, (f, g)) in self.f.iter().zip(&self.g).enumerate() {
            let ok = |p: &Permutation| Permutation::from_images(p.images().to_vec()).is_ok();
            if bijective_witness.is_none() && !(ok(f) && ok(g)) {
                bijective_witness = Some(Witness {
                    indices: vec![i + 1],
                    equation: Equation::Bijective,
                });
            }
        }

        let mut involutive_witness = None;
        'inv: for i in 0..n {
            for j in 0..n {
                let (gij, fji) = self.s(i, j);
                if self.g[gij].apply(fji) != i {
                    involutive_witness = Some(Witness {
                        indices: vec![i + 1, j + 1],
                        equation: Equation::InvolutiveG,
                    });
                    break 'inv;
                }
                if self.f[fji].apply(gij) != j {
                    involutive_witness = Some(Witness {
                        indices: vec![i + 1, j + 1],
                        equation: Equation::InvolutiveF,
                    });
                    break 'inv;
                }
            }
        }

        let braid_witness = self.braid_equation_failure();
        let braided_direct = self.braid_direct_failure().is_none();
        let square_free = (0..n).all(|i| self.s(i, i) == (i, i));

        let failing_witness = bijective_witness
            .clone()
            .or(if require_involutive {
                involutive_witness.clone()
            } else {
                None
            })
            .or(braid_witness.clone());

        ValidationReport {
            nondegenerate: bijective_witness.is_none(),
            involutive: involutive_witness.is_none(),
            braided: braid_witness.is_none(),
            braided_direct,
            square_free,
            involutive_required: require_involutive,
            failing_witness,
        }
    }

    fn braid_equation_failure(&self) -> Option<Witness> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let (gij, fji) = self.s(i, j);
                for k in 0..n {
                    let witness = |equation| Witness {
                        indices: vec![i + 1, j + 1, k + 1],
                        equation,
                    };
                    if self.g[i].apply(self.g[j].apply(k)) != self.g[gij].apply(self.g[fji].apply(k))
                    {
                        return Some(witness(Equation::BraidG));
                    }
                    if self.f[j].apply(self.f[i].apply(k)) != self.f[fji].apply(self.f[gij].apply(k))
                    {
                        return Some(witness(Equation::BraidF));
                    }
                    let lhs = self.f[self.g[fji].apply(k)].apply(gij);
                    let rhs = self.g[self.f[self.g[j].apply(k)].apply(i)].apply(self.f[k].apply(j));
                    if lhs != rhs {
                        return Some(witness(Equation::BraidLink));
                    }
                }
            }
        }
        None
    }

    /// First triple (0-based) where `S¹²S²³S¹²` and `S²³S¹²S²³` differ.
    pub fn braid_direct_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // S¹² S²³ S¹²
                    let (a, b) = self.s(x, y);
                    let (b, c) = self.s(b, z);
                    let (a, b) = self.s(a, b);
                    let left = (a, b, c);
                    // S²³ S¹² S²³
                    let (b, c) = self.s(y, z);
                    let (a, b) = self.s(x, b);
                    let (b, c) = self.s(b, c);
                    if left != (a, b, c) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn require_symmetric(&self, what: &str) -> Result<()> {
        let report = self.validate(true);
        if report.ok() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} needs a non-degenerate, involutive and braided solution; failing witness {:?}",
                report.failing_witness
            )))
        }
    }

    /// The map `T(y) = f_y^{-1}(y)`.
    pub fn t_map(&self) -> Result<Permutation> {
        self.require_symmetric("the T-map")?;
        let images = (0..self.n).map(|y| self.f_inv[y].apply(y)).collect();
        Permutation::from_images(images)
            .map_err(|e| Error::Inconsistency(format!("T is not a bijection: {e}")))
    }

    /// Orbits of `{0..n-1}` under the group generated by `g_1..g_n`, each
    /// sorted, listed by smallest element.
    pub fn g_orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.n, &self.g)
    }

    pub fn is_indecomposable(&self) -> bool {
        self.g_orbits().len() == 1
    }

    /// Searches directly for a splitting `X = Y ⊔ Z` into two nonempty
    /// subsets with `S(Y×Y) ⊆ Y×Y` and `S(Z×Z) ⊆ Z×Z`. Returns the part
    /// containing 0. Exponential in `n`; intended for small solutions.
    pub fn invariant_splitting(&self) -> Option<Vec<usize>> {
        let n = self.n;
        if n > 20 {
            return None;
        }
        let invariant = |mask: u32| {
            let inside = |x: usize| mask & (1 << x) != 0;
            (0..n).filter(|&x| inside(x)).all(|x| {
                (0..n).filter(|&y| inside(y)).all(|y| {
                    let (a, b) = self.s(x, y);
                    inside(a) && inside(b)
                })
            })
        };
        let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
        // Subsets containing point 0, proper.
        (1..full)
            .filter(|m| m & 1 == 1)
            .find(|&m| invariant(m) && invariant(full & !m))
            .map(|m| (0..n).filter(|&x| m & (1 << x) != 0).collect())
    }
}

/// Orbits of a family of permutations, sorted by smallest element.
pub(crate) fn orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            for p in gens {
                let y = p.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Per-point data preserved by any isomorphism of solutions.
fn point_signature(sol: &SetSolution, x: usize, orbit_size: usize) -> (Vec<usize>, Vec<usize>, bool, usize) {
    (
        sol.g(x).cycle_type(),
        sol.f(x).cycle_type(),
        sol.s(x, x) == (x, x),
        orbit_size,
    )
}

fn signatures(sol: &SetSolution) -> Vec<(Vec<usize>, Vec<usize>, bool, usize)> {
    let mut size = vec![0; sol.n()];
    for orbit in sol.g_orbits() {
        for &x in &orbit {
            size[x] = orbit.len();
        }
    }
    (0..sol.n())
        .map(|x| point_signature(sol, x, size[x]))
        .collect()
}

/// Finds a bijection `φ` carrying `a` to `b`, i.e. with
/// `S_b(φx, φy) = (φ S₁(x,y), φ S₂(x,y))`.
///
/// Candidates are explored in lexicographic order of image tables, so the
/// result is the lexicographically least isomorphism.
pub fn solutions_isomorphic(a: &SetSolution, b: &SetSolution) -> Option<Permutation> {
    let n = a.n();
    if n != b.n() {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_isomorphism(a, b, &sig_a, &sig_b, 0, &mut phi, &mut used) {
        Some(Permutation::from_images(phi).expect("backtracking builds a bijection"))
    } else {
        None
    }
}

fn extend_isomorphism(
    a: &SetSolution,
    b: &SetSolution,
    sig_a: &[(Vec<usize>, Vec<usize>, bool, usize)],
    sig_b: &[(Vec<usize>, Vec<usize>, bool, usize)],
    x: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.n();
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] || sig_a[x] != sig_b[y] {
            continue;
        }
        phi[x] = y;
        used[y] = true;
        if consistent(a, b, x, phi) && extend_isomorphism(a, b, sig_a, sig_b, x + 1, phi, used) {
            return true;
        }
        used[y] = false;
        phi[x] = usize::MAX;
    }
    false
}

/// Checks the isomorphism condition on all pairs involving the newly
/// assigned point `x` whose images are already determined.
fn consistent(a: &SetSolution, b: &SetSolution, x: usize, phi: &[usize]) -> bool {
    let assigned = |p: usize| phi[p] != usize::MAX;
    for y in 0..=x {
        for (p, q) in [(x, y), (y, x)] {
            let (s1, s2) = a.s(p, q);
            let (t1, t2) = b.s(phi[p], phi[q]);
            if (assigned(s1) && phi[s1] != t1) || (assigned(s2) && phi[s2] != t2) {
                return false;
            }
        }
    }
    true
}
