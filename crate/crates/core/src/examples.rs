//! Reference solutions used throughout the tests and the CLI.

use crate::perm::Permutation;
use crate::permutation_solution::PermutationSolution;
use crate::solution::SetSolution;

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).expect("static cycle data")
}

/// Five points: `f_i = g_i = (1,2,3,4)` for `i = 1, 3`, `(1,4,3,2)` for
/// `i = 2, 4`, and the identity for `i = 5`. Involutive, braided,
/// decomposable, not Δ-pure.
pub fn example1() -> SetSolution {
    let a = cyc(5, &[&[1, 2, 3, 4]]);
    let b = a.inverse();
    let id = Permutation::identity(5);
    let fam = vec![a.clone(), b.clone(), a, b, id];
    SetSolution::new(fam.clone(), fam).expect("static data")
}

/// Three points: `S(x_i, x_j) = (x_{σ(j)}, x_{σ^{-1}(i)})` with
/// `σ = (1,2,3)`. Indecomposable and Δ-pure with `Δ = x1³`.
pub fn example2() -> SetSolution {
    PermutationSolution::involutive(cyc(3, &[&[1, 3, 2]])).lift()
}

/// A braided, non-involutive permutation solution on five points:
/// `f = (1,4)(2,3)`, `g = (1,2)(3,4)`.
pub fn quotient_example() -> PermutationSolution {
    PermutationSolution::new(cyc(5, &[&[1, 4], &[2, 3]]), cyc(5, &[&[1, 2], &[3, 4]]))
        .expect("static data")
}
