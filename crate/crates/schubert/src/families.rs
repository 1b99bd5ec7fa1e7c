//! The four Schubert polynomial families: construction from the kernels by
//! divided differences, the closed maximal-Grassmannian sums, and the
//! positivity, Cauchy and stability decompositions.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::divdiff::{apply_generator, OperatorSpec};
use crate::kernels::{delta, full_kernel, ptilde, qtilde};
use crate::partitions::{
    dual_plus, enumerate_plus_len, enumerate_strict, f_stat, intertwine_e, intertwine_f,
    StrictPartition,
};
use crate::poly::{ci, flagged_det, Alphabet, AlphabetSlice, Coef, Polynomial};
use crate::weyl::{
    l_set, length, max_grassmannian, Family, GroupContext, SignedPermutation, WeylError,
};
use num::Signed;

/// A request naming one Schubert polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertRequest {
    pub family: Family,
    pub n: usize,
    pub element: SignedPermutation,
    pub double: bool,
}

impl SchubertRequest {
    /// Validates rank and membership; the type D parity check rejects an
    /// odd number of bars outright.
    pub fn new(
        family: Family,
        n: usize,
        element: SignedPermutation,
        double: bool,
    ) -> Result<Self, WeylError> {
        let ctx = GroupContext::new(family, n)?;
        ctx.check_member(&element)?;
        Ok(SchubertRequest { family, n, element, double })
    }
}

fn sgn(k: u32) -> Coef {
    ci(if k % 2 == 0 { 1 } else { -1 })
}

/// The polynomial of the longest element: Delta itself in type A, the
/// signed full kernel for the barred families.
fn top_polynomial(family: Family, n: usize) -> Polynomial {
    match family {
        Family::A => delta(n),
        _ => full_kernel(family, n).scale(&sgn((n * (n - 1) / 2) as u32)),
    }
}

type Key = (Family, usize, SignedPermutation);

fn cache() -> &'static Mutex<HashMap<Key, Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached double polynomial for a checked member. An ascent g splits the
/// defining operator word: the operator for w is the generator operator
/// applied after the operator for wg. Type A runs unprimed, the barred
/// families primed; either choice is word-independent for its family.
fn double_cached(ctx: &GroupContext, w: &SignedPermutation) -> Polynomial {
    let key = (ctx.family, ctx.n, w.clone());
    if let Some(p) = cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let top = ctx.longest_element();
    let value = if *w == top {
        top_polynomial(ctx.family, ctx.n)
    } else {
        let lw = length(ctx, w);
        let g = ctx
            .generators()
            .into_iter()
            .find(|&g| length(ctx, &w.right_mul(g)) > lw)
            .expect("every element below the top has an ascent");
        let parent = double_cached(ctx, &w.right_mul(g));
        let spec = OperatorSpec {
            family: ctx.family,
            generator: g,
            primed: ctx.family != Family::A,
        };
        apply_generator(spec, &parent)
    };
    cache().lock().unwrap().insert(key, value.clone());
    value
}

/// The double Schubert polynomial of the requested element.
pub fn double_schubert(req: &SchubertRequest) -> Result<Polynomial, WeylError> {
    let ctx = GroupContext::new(req.family, req.n)?;
    ctx.check_member(&req.element)?;
    Ok(double_cached(&ctx, &req.element))
}

/// The single polynomial: the double one at Y = 0.
pub fn single_schubert(req: &SchubertRequest) -> Result<Polynomial, WeylError> {
    double_schubert(req).map(|p| p.set_y_zero())
}

/// Dispatch on the request's double flag.
pub fn schubert_polynomial(req: &SchubertRequest) -> Result<Polynomial, WeylError> {
    if req.double {
        double_schubert(req)
    } else {
        single_schubert(req)
    }
}

/// Which closed maximal-Grassmannian sum to use; the second form exists
/// only in type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    I,
    II,
}

/// Closed sum for the fully barred families: rows are Q-polynomials in
/// type C and P-polynomials in type B.
fn closed_bc(family: Family, n: usize, lambda: &StrictPartition) -> Polynomial {
    let row = |parts: &StrictPartition, slice: AlphabetSlice| -> Polynomial {
        match family {
            Family::C => qtilde(n, parts.parts(), slice),
            Family::B => ptilde(n, parts.parts(), slice),
            _ => unreachable!("closed_bc serves the fully barred families"),
        }
    };
    let dual = lambda.dual(n);
    let k = dual.len();
    let bounds: Vec<usize> = dual.parts().iter().map(|&p| n - p as usize).collect();
    let dual_i64: Vec<i64> = dual.parts().iter().map(|&p| p as i64).collect();
    let mut total = Polynomial::zero(n);
    for alpha in enumerate_strict(n) {
        let mut inner = Polynomial::zero(n);
        for beta in enumerate_strict(n) {
            if beta.len() != k || !beta.contains(&dual) || !alpha.is_disjoint(&beta) {
                continue;
            }
            let e_pair = intertwine_e(&alpha, &beta).expect("disjoint by the filter");
            let union_dual = alpha.union(&beta).expect("disjoint by the filter").dual(n);
            let beta_i64: Vec<i64> = beta.parts().iter().map(|&p| p as i64).collect();
            let det = flagged_det(n, &beta_i64, &dual_i64, &bounds, Alphabet::Y);
            let term = row(&union_dual, AlphabetSlice::y(n)).mul(&det);
            inner = inner.add(&term.scale(&sgn(e_pair + beta.weight())));
        }
        if !inner.is_zero() {
            total = total.add(&row(&alpha, AlphabetSlice::x(n)).mul(&inner));
        }
    }
    total.scale(&sgn(lambda.excess() + dual.weight()))
}

/// First type D closed sum: the column index is the augmented dual of
/// declared length k, which may carry a zero part, and so may beta.
fn closed_d1(n: usize, lambda: &StrictPartition) -> Polynomial {
    let m = n - 1;
    let dual = dual_plus(lambda, n);
    let k = dual.len();
    let bounds: Vec<usize> = dual.parts().iter().map(|&p| n - 1 - p as usize).collect();
    let dual_i64: Vec<i64> = dual.parts().iter().map(|&p| p as i64).collect();
    let mut total = Polynomial::zero(n);
    for alpha in enumerate_strict(m) {
        let mut inner = Polynomial::zero(n);
        for beta in enumerate_plus_len(m, k) {
            if !beta.contains(&dual) || !alpha.is_disjoint(&beta.positive()) {
                continue;
            }
            let f_pair = intertwine_f(&alpha, &beta);
            let union_dual = alpha
                .union(&beta.positive())
                .expect("disjoint by the filter")
                .dual(m);
            let beta_i64: Vec<i64> = beta.parts().iter().map(|&p| p as i64).collect();
            let det = flagged_det(n, &beta_i64, &dual_i64, &bounds, Alphabet::Y);
            let term = ptilde(n, union_dual.parts(), AlphabetSlice::y(n)).mul(&det);
            inner = inner.add(&term.scale(&sgn(f_pair + beta.weight())));
        }
        if !inner.is_zero() {
            total = total.add(&ptilde(n, alpha.parts(), AlphabetSlice::x(n)).mul(&inner));
        }
    }
    total.scale(&sgn(f_stat(lambda, n) + dual.weight()))
}

/// Second type D closed sum: strict column index, with the last Y variable
/// negated exactly when n and the length of lambda agree mod 2.
fn closed_d2(n: usize, lambda: &StrictPartition) -> Polynomial {
    let m = n - 1;
    let dual = lambda.dual(m);
    let k = dual.len();
    let negate_last = (n % 2) == (lambda.len() % 2);
    let bounds: Vec<usize> = dual.parts().iter().map(|&p| n - 1 - p as usize).collect();
    let dual_i64: Vec<i64> = dual.parts().iter().map(|&p| p as i64).collect();
    let mut total = Polynomial::zero(n);
    for alpha in enumerate_strict(m) {
        let mut inner = Polynomial::zero(n);
        for gamma in enumerate_strict(m) {
            if gamma.len() != k || !gamma.contains(&dual) || !alpha.is_disjoint(&gamma) {
                continue;
            }
            let e_pair = intertwine_e(&alpha, &gamma).expect("disjoint by the filter");
            let union_dual = alpha.union(&gamma).expect("disjoint by the filter").dual(m);
            let gamma_i64: Vec<i64> = gamma.parts().iter().map(|&p| p as i64).collect();
            let det = flagged_det(n, &gamma_i64, &dual_i64, &bounds, Alphabet::Y);
            let mut p_y = ptilde(n, union_dual.parts(), AlphabetSlice::y(n));
            if negate_last {
                p_y = p_y.negate_single_y(n);
            }
            inner = inner.add(&p_y.mul(&det).scale(&sgn(e_pair + gamma.weight())));
        }
        if !inner.is_zero() {
            total = total.add(&ptilde(n, alpha.parts(), AlphabetSlice::x(n)).mul(&inner));
        }
    }
    total.scale(&sgn(lambda.excess() + dual.weight()))
}

/// The closed maximal-Grassmannian sum; equals the double polynomial of
/// the corresponding maximal Grassmannian element.
pub fn grassmannian_closed(
    family: Family,
    n: usize,
    lambda: &StrictPartition,
    variant: Variant,
) -> Result<Polynomial, WeylError> {
    GroupContext::new(family, n)?;
    let bound = if family == Family::D { n - 1 } else { n };
    if !lambda.fits(bound) {
        return Err(WeylError::PartitionOutOfRange(
            lambda.parts().to_vec(),
            bound as u32,
        ));
    }
    match (family, variant) {
        (Family::A, _) => Err(WeylError::Unsupported(
            "type A Grassmannian classes are indexed by plain permutations; see grassmannian_perm"
                .to_string(),
        )),
        (Family::B, Variant::I) | (Family::C, Variant::I) => Ok(closed_bc(family, n, lambda)),
        (Family::B, Variant::II) | (Family::C, Variant::II) => Err(WeylError::Unsupported(
            "the second closed form exists only in type D".to_string(),
        )),
        (Family::D, Variant::I) => Ok(closed_d1(n, lambda)),
        (Family::D, Variant::II) => Ok(closed_d2(n, lambda)),
    }
}

/// The positivity identity for a plain permutation: the family side summed
/// over one element (types B, C) or over the length slice of its even
/// sign-change coset (type D) equals a reversed type A double polynomial
/// with nonnegative coefficients.
#[derive(Debug, Clone)]
pub struct PositivityForm {
    pub type_a_side: Polynomial,
    pub summands: Vec<(SignedPermutation, Polynomial)>,
}

pub fn positivity_form(
    family: Family,
    perm: &SignedPermutation,
    n: usize,
) -> Result<PositivityForm, WeylError> {
    if family == Family::A {
        return Err(WeylError::Unsupported(
            "the positivity identity relates the barred families to type A".to_string(),
        ));
    }
    let ctx = GroupContext::new(family, n)?;
    if !perm.is_plain() {
        return Err(WeylError::Unsupported(format!(
            "the positivity form needs a plain permutation, got {perm}"
        )));
    }
    ctx.check_member(perm)?;
    let a_ctx = GroupContext::new(Family::A, n)?;
    let type_a_side = double_cached(&a_ctx, &perm.star()).reverse_x().negate_y();
    let members: Vec<SignedPermutation> = match family {
        Family::D => l_set(perm, n),
        _ => vec![perm.clone()],
    };
    let summands: Vec<(SignedPermutation, Polynomial)> = members
        .iter()
        .map(|w| (w.clone(), double_cached(&ctx, w)))
        .collect();
    let mut sum = Polynomial::zero(n);
    for (_, p) in &summands {
        sum = sum.add(p);
    }
    assert_eq!(
        sum, type_a_side,
        "positivity identity failed for {perm} in family {family}"
    );
    for (c, _) in type_a_side.terms() {
        assert!(
            c.is_integer() && !c.is_negative(),
            "negative or fractional coefficient in the positivity form of {perm}"
        );
    }
    Ok(PositivityForm { type_a_side, summands })
}

/// One term of the Cauchy expansion of the top type C polynomial.
#[derive(Debug, Clone)]
pub struct CauchyTerm {
    pub perm: SignedPermutation,
    pub lambda: StrictPartition,
    /// The X-side factor attached to (perm, lambda).
    pub left: Polynomial,
    /// The Y-side factor attached to (perm, lambda).
    pub right: Polynomial,
}

/// All quadruple terms: the sum of left * right over them reproduces the
/// top type C double polynomial.
pub fn cauchy_expansion(n: usize) -> Vec<CauchyTerm> {
    let ctx = GroupContext::new(Family::C, n).expect("positive rank");
    let a_ctx = GroupContext::new(Family::A, n).expect("positive rank");
    let w0_plain = a_ctx.longest_element();
    let mut out = Vec::new();
    for perm in a_ctx.elements() {
        let left_x = double_cached(&ctx, &perm.compose(&w0_plain))
            .set_y_zero()
            .reverse_x()
            .negate_x();
        let right_y = double_cached(&ctx, &perm).set_y_zero().x_as_reversed_y();
        for lambda in enumerate_strict(n) {
            let w_dual = max_grassmannian(&ctx, &lambda.dual(n)).expect("dual fits");
            let w_lam = max_grassmannian(&ctx, &lambda).expect("lambda fits");
            let left = left_x.mul(&double_cached(&ctx, &w_dual).set_y_zero());
            let right = right_y.mul(&double_cached(&ctx, &w_lam).set_y_zero().x_as_y());
            out.push(CauchyTerm {
                perm: perm.clone(),
                lambda: lambda.clone(),
                left,
                right,
            });
        }
    }
    out
}

/// Fold of the expansion into a single polynomial.
pub fn cauchy_sum(n: usize) -> Polynomial {
    let mut sum = Polynomial::zero(n);
    for t in cauchy_expansion(n) {
        sum = sum.add(&t.left.mul(&t.right));
    }
    sum
}

/// Set the variables of index above m to zero and drop to rank m.
pub fn restrict(f: &Polynomial, m: usize) -> Polynomial {
    f.set_tail_zero(m).restrict_rank(m)
}

/// Degree of the single type A polynomial of a plain permutation in one
/// x variable.
pub fn d_stat(perm: &SignedPermutation, i: usize) -> u32 {
    let a_ctx = GroupContext::new(Family::A, perm.n()).expect("positive rank");
    a_ctx.check_member(perm).expect("plain permutation");
    let single = double_cached(&a_ctx, perm).set_y_zero();
    single.deg_in_x(i).expect("Schubert polynomials are nonzero")
}

/// The plain permutation with values lambda_{r+1-i} + i on the first r
/// slots and the remaining values in increasing order; its single type A
/// polynomial is the Schur polynomial of lambda in x_1, ..., x_r.
pub fn grassmannian_perm(parts: &[u32], r: usize) -> SignedPermutation {
    assert!(
        parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
        "parts must be positive and weakly decreasing"
    );
    assert!((1..=r).contains(&parts.len().max(1)), "need l(lambda) <= r");
    let top = parts.first().copied().unwrap_or(0) as usize;
    let m = r + top;
    let part = |j: usize| -> u32 { parts.get(j - 1).copied().unwrap_or(0) };
    let mut entries: Vec<i32> = (1..=r).map(|i| (part(r + 1 - i) + i as u32) as i32).collect();
    let mut used = vec![false; m + 1];
    for &v in &entries {
        used[v as usize] = true;
    }
    entries.extend((1..=m as i32).filter(|&v| !used[v as usize]));
    SignedPermutation::new(entries).expect("the values form a permutation")
}
