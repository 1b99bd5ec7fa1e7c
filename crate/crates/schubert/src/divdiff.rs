//! Divided difference operators for each family, their primed variants,
//! and application along words and group elements.

use crate::poly::{cq, Polynomial};
use crate::weyl::{Family, Generator, GroupContext, SignedPermutation};

/// One operator: a generator of the given family, optionally primed.
/// Priming negates the operators at ordinary indices and fixes the special
/// ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorSpec {
    pub family: Family,
    pub generator: Generator,
    pub primed: bool,
}

/// Apply one divided difference: (f - sf) divided by the root direction,
/// computed per monomial by the closed quotient kernels.
pub fn apply_generator(spec: OperatorSpec, f: &Polynomial) -> Polynomial {
    let n = f.n();
    match spec.generator {
        Generator::S(i) => {
            assert!(i >= 1 && i < n, "ordinary index out of range");
            let q = f.swap_quotient(i);
            if spec.primed {
                q.neg()
            } else {
                q
            }
        }
        Generator::Zero => {
            assert!(
                matches!(spec.family, Family::B | Family::C),
                "index 0 operator only in families B and C"
            );
            let q = f.flip_quotient();
            if spec.family == Family::C {
                q.scale(&cq(1, 2))
            } else {
                q
            }
        }
        Generator::Box => {
            assert_eq!(spec.family, Family::D, "box operator only in family D");
            f.double_flip_quotient()
        }
    }
}

/// Apply the composite along a word, rightmost generator first.
pub fn apply_word(
    family: Family,
    word: &[Generator],
    primed: bool,
    f: &Polynomial,
) -> Polynomial {
    let mut acc = f.clone();
    for &g in word.iter().rev() {
        if acc.is_zero() {
            return acc;
        }
        acc = apply_generator(OperatorSpec { family, generator: g, primed }, &acc);
    }
    acc
}

/// Apply the operator of a group element along its canonical reduced word.
/// Any reduced word yields the same operator; the alternate-word path
/// exists for the independence tests.
pub fn apply_element(
    ctx: &GroupContext,
    w: &SignedPermutation,
    primed: bool,
    f: &Polynomial,
) -> Polynomial {
    let word = crate::weyl::reduced_word(ctx, w);
    apply_word(ctx.family, &word, primed, f)
}
