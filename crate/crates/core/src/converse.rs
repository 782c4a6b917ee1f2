//! From a tableau presentation back to a solution.
//!
//! Each relation `x_i x_j = x_k x_l` sets `S(i,j) = (k,l)` and
//! `S(k,l) = (i,j)`; words in no relation are fixed by `S`. The families
//! `g_i(j) = S(i,j)_1` and `f_j(i) = S(i,j)_2` are then checked for
//! bijectivity, coherence and the Garside criteria.

use crate::error::{ConditionViolation, Error, Result};
use crate::garside::check_garside_conditions;
use crate::perm::Permutation;
use crate::presentation::TableauPresentation;
use crate::reversing::{check_left_coherence, check_right_coherence};
use crate::solution::SetSolution;

/// No relation side is a square `x_i x_i`.
pub fn is_square_free_presentation(p: &TableauPresentation) -> bool {
    p.relations()
        .iter()
        .all(|r| [r.lhs(), r.rhs()].iter().all(|&(a, b)| a != b))
}

/// Rebuilds the solution whose presentation is `p`.
///
/// Checks run in a fixed order: repeated words, relation count, bijectivity of
/// the extracted `g_i` and `f_j`, right then left cube conditions, and finally
/// the full validation and Garside criteria. Side lengths are enforced when
/// the presentation is parsed.
pub fn solution_from_presentation(p: &TableauPresentation) -> Result<SetSolution> {
    let n = p.n();
    if let Some(&(a, b)) = p.duplicated_words().first() {
        return Err(ConditionViolation::DuplicateWord(a + 1, b + 1).into());
    }
    let expected = n * (n - 1) / 2;
    if p.len() != expected {
        return Err(ConditionViolation::RelationCount {
            n,
            expected,
            found: p.len(),
        }
        .into());
    }

    let mut s: Vec<Vec<(usize, usize)>> =
        (0..n).map(|i| (0..n).map(|j| (i, j)).collect()).collect();
    for r in p.relations() {
        let ((i, j), (k, l)) = (r.lhs(), r.rhs());
        s[i][j] = (k, l);
        s[k][l] = (i, j);
    }

    let mut g = Vec::with_capacity(n);
    for i in 0..n {
        let images: Vec<usize> = (0..n).map(|j| s[i][j].0).collect();
        if let Some((a, b)) = first_collision(&images) {
            return Err(ConditionViolation::TwoRightLcms {
                left: i + 1,
                right: images[a] + 1,
                a: a + 1,
                b: b + 1,
            }
            .into());
        }
        g.push(Permutation::from_images(images)?);
    }
    let mut f = Vec::with_capacity(n);
    for j in 0..n {
        let images: Vec<usize> = (0..n).map(|i| s[i][j].1).collect();
        if let Some((a, b)) = first_collision(&images) {
            return Err(ConditionViolation::TwoLeftLcms {
                left: j + 1,
                right: images[a] + 1,
                a: a + 1,
                b: b + 1,
            }
            .into());
        }
        f.push(Permutation::from_images(images)?);
    }
    let sol = SetSolution::new(f, g)?;

    if let Some((a, b, c)) = check_right_coherence(&sol) {
        return Err(ConditionViolation::RightCoherence(a + 1, b + 1, c + 1).into());
    }
    if let Some((a, b, c)) = check_left_coherence(&sol) {
        return Err(ConditionViolation::LeftCoherence(a + 1, b + 1, c + 1).into());
    }
    let report = sol.validate(true);
    if !report.ok() {
        return Err(Error::Inconsistency(format!(
            "coherent presentation produced an invalid solution:\n{report}"
        )));
    }
    let conditions = check_garside_conditions(&sol);
    if !conditions.all() {
        return Err(Error::NotGarside(conditions));
    }
    Ok(sol)
}

/// First pair of positions `a < b` with equal values.
fn first_collision(images: &[usize]) -> Option<(usize, usize)> {
    let mut first_at = vec![None; images.len()];
    for (pos, &v) in images.iter().enumerate() {
        match first_at[v] {
            Some(a) => return Some((a, pos)),
            None => first_at[v] = Some(pos),
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::presentation::{presentation_of, Relation};

    type Pair = (usize, usize);

    fn pres(n: usize, rels: &[(Pair, Pair)]) -> TableauPresentation {
        TableauPresentation::new(
            n,
            rels.iter()
                .map(|&((a, b), (c, d))| Relation::new((a - 1, b - 1), (c - 1, d - 1)).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn recovers_example1() {
        let sol = examples::example1();
        let back = solution_from_presentation(&presentation_of(&sol)).unwrap();
        assert_eq!(back, sol);
    }

    #[test]
    fn commutative_case() {
        let p = pres(2, &[((1, 2), (2, 1))]);
        assert_eq!(
            solution_from_presentation(&p).unwrap(),
            SetSolution::trivial(2).unwrap()
        );
        assert!(is_square_free_presentation(&p));
    }

    #[test]
    fn example2_presentation() {
        let p = pres(3, &[((1, 1), (2, 3)), ((2, 2), (3, 1)), ((3, 3), (1, 2))]);
        let sol = solution_from_presentation(&p).unwrap();
        assert_eq!(sol, examples::example2());
        assert_eq!(sol.g(0).to_string(), "(1,2,3)");
        assert!(!is_square_free_presentation(&p));
        assert!(!is_square_free_presentation(&presentation_of(&examples::example1())));
    }

    #[test]
    fn rejects_in_order() {
        let dup = pres(3, &[((1, 2), (2, 1)), ((1, 2), (3, 3)), ((1, 3), (3, 1))]);
        assert_eq!(
            solution_from_presentation(&dup),
            Err(Error::Condition(ConditionViolation::DuplicateWord(1, 2)))
        );
        let short = pres(3, &[((1, 2), (2, 1))]);
        assert_eq!(
            solution_from_presentation(&short),
            Err(Error::Condition(ConditionViolation::RelationCount {
                n: 3,
                expected: 3,
                found: 1
            }))
        );
        // g_1 sends both 1 and 2 to 1.
        let bad = pres(2, &[((1, 2), (1, 1))]);
        assert!(matches!(
            solution_from_presentation(&bad),
            Err(Error::Condition(ConditionViolation::TwoRightLcms { left: 1, .. }))
        ));
        // g is fine but f_1 sends 1 and 2 to 1.
        let bad = pres(2, &[((1, 1), (2, 1))]);
        assert!(matches!(
            solution_from_presentation(&bad),
            Err(Error::Condition(ConditionViolation::TwoLeftLcms { left: 1, .. }))
        ));
    }
}
