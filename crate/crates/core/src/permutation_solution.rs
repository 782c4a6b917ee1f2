//! Permutation solutions `S(x,y) = (g(y), f(x))` and their quotient by the
//! orbits of `f∘g`.
//!
//! Such a solution is braided iff `f` and `g` commute and involutive iff
//! `g = f^{-1}`. A braided, non-involutive one collapses onto an involutive
//! solution on the orbits of `f∘g`; the structure groups of the two agree,
//! and this module checks the relation-level facts behind that.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::presentation::{presentation_of, Relation};
use crate::solution::SetSolution;
use crate::word::Word;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermutationSolution {
    f: Permutation,
    g: Permutation,
}

impl PermutationSolution {
    pub fn new(f: Permutation, g: Permutation) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::Input(format!(
                "f has degree {} but g has degree {}",
                f.degree(),
                g.degree()
            )));
        }
        if f.degree() == 0 {
            return Err(Error::Input("a solution needs n >= 1".into()));
        }
        Ok(PermutationSolution { f, g })
    }

    /// The involutive solution with the given `f` and `g = f^{-1}`.
    pub fn involutive(f: Permutation) -> Self {
        let g = f.inverse();
        PermutationSolution { f, g }
    }

    pub fn n(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &Permutation {
        &self.f
    }

    pub fn g(&self) -> &Permutation {
        &self.g
    }

    pub fn is_braided(&self) -> bool {
        self.f.compose(&self.g) == self.g.compose(&self.f)
    }

    pub fn is_involutive(&self) -> bool {
        self.f.compose(&self.g).is_identity()
    }

    /// The general solution with `g_i = g` and `f_j = f` for every index.
    pub fn lift(&self) -> SetSolution {
        let n = self.n();
        SetSolution::new(vec![self.f.clone(); n], vec![self.g.clone(); n])
            .expect("degrees checked on construction")
    }

    fn require_braided(&self) -> Result<()> {
        if self.is_braided() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "f = {} and g = {} do not commute, so the solution is not braided",
                self.f, self.g
            )))
        }
    }
}

/// `S^k(x, y)` by the closed form for commuting `f`, `g`:
/// odd `k` gives `(f^{(k-1)/2} g^{(k+1)/2}(y), f^{(k+1)/2} g^{(k-1)/2}(x))`,
/// even `k` gives `(f^{k/2} g^{k/2}(x), f^{k/2} g^{k/2}(y))`.
pub fn s_power(ps: &PermutationSolution, x: usize, y: usize, k: u32) -> Result<(usize, usize)> {
    ps.require_braided()?;
    let n = ps.n();
    for p in [x, y] {
        if p >= n {
            return Err(Error::IndexOutOfRange { index: p + 1, n });
        }
    }
    let fg = |a: u32, b: u32, p: usize| ps.f.pow(a as i64).apply(ps.g.pow(b as i64).apply(p));
    let h = k / 2;
    Ok(if k % 2 == 1 {
        (fg(h, h + 1, y), fg(h + 1, h, x))
    } else {
        (fg(h, h, x), fg(h, h, y))
    })
}

/// The orbits of `f∘g` and the induced involutive solution on them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quotient {
    /// Classes sorted by smallest member, members ascending.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each point.
    pub class_map: Vec<usize>,
    pub solution: PermutationSolution,
}

impl Quotient {
    /// Label of a class: `[xk]` with `k` its smallest member (1-based).
    pub fn label(&self, class: usize) -> String {
        format!("[x{}]", self.classes[class][0] + 1)
    }

    /// Image of a word under `x ↦ [x]`, as a word over class indices.
    pub fn project(&self, w: &Word) -> Word {
        w.iter().map(|&x| self.class_map[x]).collect()
    }
}

/// Collapses a braided permutation solution onto the orbits of `f∘g`.
pub fn quotient(ps: &PermutationSolution) -> Result<Quotient> {
    ps.require_braided()?;
    let fg = ps.f.compose(&ps.g);
    let classes: Vec<Vec<usize>> = fg
        .cycles()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    let mut class_map = vec![0; ps.n()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_map[x] = c;
        }
    }
    let induced = |p: &Permutation, name: &str| -> Result<Permutation> {
        let images = classes.iter().map(|c| class_map[p.apply(c[0])]).collect();
        for members in &classes {
            let target = class_map[p.apply(members[0])];
            if let Some(&x) = members.iter().find(|&&x| class_map[p.apply(x)] != target) {
                return Err(Error::Inconsistency(format!(
                    "{name} is not compatible with the orbit of x{}",
                    x + 1
                )));
            }
        }
        Permutation::from_images(images)
            .map_err(|e| Error::Inconsistency(format!("induced {name} is not a bijection: {e}")))
    };
    let solution = PermutationSolution::new(induced(&ps.f, "f")?, induced(&ps.g, "g")?)?;
    if !solution.is_braided() || !solution.is_involutive() {
        return Err(Error::Inconsistency(
            "the quotient solution is not involutive and braided".into(),
        ));
    }
    Ok(Quotient {
        classes,
        class_map,
        solution,
    })
}

/// A Garside word for the monoid of an involutive permutation solution: one
/// power `x_t^m` per nontrivial cycle `(t ..)` of length `m` of `f`, then the
/// fixed points of `f`, all in increasing order.
pub fn permutation_delta(ps: &PermutationSolution) -> Result<Word> {
    if !ps.is_involutive() {
        return Err(Error::Precondition(
            "the permutation solution is not involutive; take its quotient first".into(),
        ));
    }
    let cycles = ps.f.cycles();
    let (moved, fixed): (Vec<_>, Vec<_>) = cycles.iter().partition(|c| c.len() > 1);
    let mut w = Word::empty();
    for c in moved {
        for _ in 0..c.len() {
            w.push(c[0]);
        }
    }
    for c in fixed {
        w.push(c[0]);
    }
    Ok(w)
}

/// Evidence that `x·y = x'·y` in the monoid of the original solution: the
/// `S`-orbit `chain` runs from `(x, y)` to `(x', y)` and each consecutive pair
/// of entries is a defining relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CancelWitness {
    pub x: usize,
    pub x_prime: usize,
    /// Odd exponent with `S^k(x, y) = (x', y)`.
    pub k: u32,
    pub y: usize,
    pub chain: Vec<(usize, usize)>,
}

impl CancelWitness {
    /// The relation `x y = x' y` when it is a single defining relation.
    pub fn direct_relation(&self) -> Option<Relation> {
        (self.k == 1).then(|| Relation::new((self.x, self.y), (self.x_prime, self.y)))?
    }
}

/// How one quotient relation is realised upstairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftedRelation {
    /// Over class indices.
    pub quotient: Relation,
    /// Over original points.
    pub original: Relation,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConsistencyReport {
    /// For each pair `x < x'` in a common class, one or two steps of odd
    /// exponent connecting them.
    pub witnesses: Vec<(usize, usize, Vec<CancelWitness>)>,
    pub lifted: Vec<LiftedRelation>,
}

/// Checks the relation-level facts linking a braided permutation solution and
/// its quotient: points in one class become equal after right cancellation,
/// and every quotient relation is the image of an original relation.
pub fn quotient_group_consistency(ps: &PermutationSolution) -> Result<ConsistencyReport> {
    let q = quotient(ps)?;
    let mut report = ConsistencyReport::default();
    if ps.is_involutive() {
        return Ok(report);
    }
    let fg = ps.f.compose(&ps.g);
    let lifted = ps.lift();
    for class in &q.classes {
        for (a, &x) in class.iter().enumerate() {
            for &x_prime in &class[a + 1..] {
                let k = (1..=ps.n() as u32)
                    .find(|&k| fg.pow(k as i64).apply(x) == x_prime)
                    .ok_or_else(|| {
                        Error::Inconsistency(format!("x{} not in the orbit of x{}", x_prime + 1, x + 1))
                    })?;
                let steps = if k % 2 == 1 {
                    vec![cancel_witness(ps, &lifted, x, k)?]
                } else {
                    let mid = fg.pow(k as i64 - 1).apply(x);
                    vec![
                        cancel_witness(ps, &lifted, x, k - 1)?,
                        cancel_witness(ps, &lifted, mid, 1)?,
                    ]
                };
                if steps.last().map(|s| s.x_prime) != Some(x_prime) {
                    return Err(Error::Inconsistency(format!(
                        "no cancellation witness from x{} to x{}",
                        x + 1,
                        x_prime + 1
                    )));
                }
                report.witnesses.push((x, x_prime, steps));
            }
        }
    }
    let down = presentation_of(&q.solution.lift());
    for rel in down.relations() {
        let (i, j) = rel.lhs();
        let (k, l) = rel.rhs();
        let ri = q.classes[i][0];
        let rj = q.classes[j][0];
        let (s1, s2) = lifted.s(ri, rj);
        let image = (q.class_map[s1], q.class_map[s2]);
        let original = Relation::new((ri, rj), (s1, s2));
        match original {
            Some(original) if image == (k, l) => report.lifted.push(LiftedRelation {
                quotient: *rel,
                original,
            }),
            _ => {
                return Err(Error::Inconsistency(format!(
                    "quotient relation {} does not lift",
                    rel.render_with(&|c| q.label(c))
                )))
            }
        }
    }
    let up = presentation_of(&lifted);
    for rel in up.relations() {
        let p = |(a, b): (usize, usize)| (q.class_map[a], q.class_map[b]);
        let (l, r) = (p(rel.lhs()), p(rel.rhs()));
        if l != r && !down.relations().contains(&Relation::new(l, r).expect("l != r")) {
            return Err(Error::Inconsistency(format!(
                "relation {rel} does not project onto the quotient"
            )));
        }
    }
    Ok(report)
}

fn cancel_witness(ps: &PermutationSolution, lifted: &SetSolution, x: usize, k: u32) -> Result<CancelWitness> {
    let h = (k / 2) as i64;
    let y = ps.f.pow(h + 1).apply(ps.g.pow(h).apply(x));
    let (x_prime, y_back) = s_power(ps, x, y, k)?;
    let mut chain = vec![(x, y)];
    for _ in 0..k {
        let &(a, b) = chain.last().unwrap();
        chain.push(lifted.s(a, b));
    }
    if y_back != y || chain.last() != Some(&(x_prime, y)) {
        return Err(Error::Inconsistency(format!(
            "S^{k}(x{}, x{}) does not fix the second letter",
            x + 1,
            y + 1
        )));
    }
    Ok(CancelWitness {
        x,
        x_prime,
        k,
        y,
        chain,
    })
}
