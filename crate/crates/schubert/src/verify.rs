//! Named verification suites shared by the command line front end and the
//! acceptance checks. Each suite replays one block of identities and
//! reports one line per check; a panic inside a check counts as a failure
//! of that line only.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;

use crate::families::{
    cauchy_expansion, cauchy_sum, double_schubert, grassmannian_closed, positivity_form,
    restrict, single_schubert, SchubertRequest, Variant,
};
use crate::kernels::qtilde;
use crate::loci::{
    kempf_laksov, keylemma_check, lagrangian_class, newcor_class, ssc_class, ChernRootModel,
    ChernSeries,
};
use crate::lq1;
use crate::partitions::{enumerate_strict, rho, StrictPartition};
use crate::poly::{ci, AlphabetSlice, Polynomial};
use crate::quotient::{
    adjoint_element, curprop_check, is_n_stable, scalar_product, structure_constants,
};
use crate::weyl::{
    h_stat, l_set, length, max_grassmannian, weak_leq, Family, GroupContext, SignedPermutation,
    WeylError,
};
use num::{One, Signed};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// One verification line: what was checked and whether it held.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub label: String,
    pub passed: bool,
}

/// The outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn counts(&self) -> (usize, usize) {
        let good = self.lines.iter().filter(|l| l.passed).count();
        (good, self.lines.len())
    }

    pub fn summary(&self) -> String {
        let (good, total) = self.counts();
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        format!("{}: {} ({good}/{total} checks)", self.suite, verdict)
    }
}

type Item = (String, Box<dyn FnOnce() -> bool + Send>);

pub const SUITE_NAMES: &[&str] = &[
    "examples-n2",
    "mgras",
    "posit",
    "cauchy",
    "orth",
    "vanishing",
    "stability",
    "keylemma",
    "curprop",
    "lagcor-consistency",
    "lq1",
];

/// Run one named suite. The rank cap falls back to the suite's standard
/// sweep when absent; jobs sets the worker count for the fan-out.
pub fn run_suite(name: &str, cap: Option<usize>, jobs: usize) -> Result<SuiteReport, WeylError> {
    let items = match name {
        "examples-n2" => examples_items(),
        "mgras" => mgras_items(cap.unwrap_or(3)),
        "posit" => posit_items(cap.unwrap_or(3)),
        "cauchy" => cauchy_items(cap.unwrap_or(3)),
        "orth" => orth_items(cap.unwrap_or(3)),
        "vanishing" => vanishing_items(cap.unwrap_or(3)),
        "stability" => stability_items(),
        "keylemma" => keylemma_items(cap.unwrap_or(4)),
        "curprop" => curprop_items(cap.unwrap_or(3)),
        "lagcor-consistency" => lagcor_items(cap.unwrap_or(3)),
        "lq1" => lq1_items(),
        _ => {
            return Err(WeylError::Unsupported(format!(
                "unknown suite {name:?}; known suites: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteReport { suite: name.to_string(), lines: run_items(jobs, items) })
}

fn guarded(f: Box<dyn FnOnce() -> bool + Send>) -> bool {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(false)
}

fn run_items(jobs: usize, items: Vec<Item>) -> Vec<CheckLine> {
    let jobs = jobs.max(1);
    if jobs == 1 || items.len() <= 1 {
        return items
            .into_iter()
            .map(|(label, f)| CheckLine { passed: guarded(f), label })
            .collect();
    }
    let queue: Mutex<Vec<(usize, Item)>> =
        Mutex::new(items.into_iter().enumerate().rev().collect());
    let done: Mutex<Vec<(usize, CheckLine)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let next = queue.lock().expect("queue lock").pop();
                match next {
                    Some((idx, (label, f))) => {
                        let line = CheckLine { passed: guarded(f), label };
                        done.lock().expect("result lock").push((idx, line));
                    }
                    None => break,
                }
            });
        }
    });
    let mut rows = done.into_inner().expect("result lock");
    rows.sort_by_key(|r| r.0);
    rows.into_iter().map(|r| r.1).collect()
}

fn sp(entries: &[i32]) -> SignedPermutation {
    SignedPermutation::new(entries.to_vec()).expect("fixed element")
}

fn double(family: Family, n: usize, w: &SignedPermutation) -> Polynomial {
    let req = SchubertRequest::new(family, n, w.clone(), true).expect("valid request");
    double_schubert(&req).expect("double polynomial")
}

fn single(family: Family, n: usize, w: &SignedPermutation) -> Polynomial {
    let req = SchubertRequest::new(family, n, w.clone(), false).expect("valid request");
    single_schubert(&req).expect("single polynomial")
}

fn item(label: impl Into<String>, f: impl FnOnce() -> bool + Send + 'static) -> Item {
    (label.into(), Box::new(f))
}

/// The full rank two table of double polynomials.
fn examples_items() -> Vec<Item> {
    let n = 2;
    let x1 = Polynomial::x(n, 1);
    let x2 = Polynomial::x(n, 2);
    let y1 = Polynomial::y(n, 1);
    let y2 = Polynomial::y(n, 2);
    let row = x1.add(&x2).add(&y1).add(&y2);
    let prod = x1.mul(&x2).add(&y1.mul(&y2));
    let table: Vec<(Vec<i32>, Polynomial)> = vec![
        (vec![1, 2], Polynomial::one(n)),
        (vec![2, 1], x2.add(&y1)),
        (vec![-1, 2], row.clone()),
        (
            vec![-2, 1],
            x1.mul(&x2).add(&x1.add(&x2).mul(&y1)).add(&y1.mul(&y1)),
        ),
        (
            vec![2, -1],
            x2.mul(&x2).add(&x2.mul(&y1.add(&y2))).add(&y1.mul(&y2)),
        ),
        (
            vec![1, -2],
            x1.mul(&x1).mul(&x2).neg()
                .add(&x2.mul(&x2).sub(&y2.mul(&y2)).mul(&y1))
                .add(&x2.mul(&y1).mul(&y1)),
        ),
        (vec![-2, -1], row.mul(&prod)),
        (vec![-1, -2], y1.sub(&x1).mul(&row).mul(&prod)),
    ];
    table
        .into_iter()
        .map(|(entries, expected)| {
            let w = sp(&entries);
            item(format!("table entry {w}"), move || {
                double(Family::C, n, &w) == expected
            })
        })
        .collect()
}

/// Closed maximal-Grassmannian sums against the divided-difference
/// definition, plus the staircase convolution.
fn mgras_items(cap: usize) -> Vec<Item> {
    let mut items = Vec::new();
    for n in 1..=cap {
        for family in [Family::B, Family::C] {
            items.push(item(
                format!("type {family} closed sum matches the definition at rank {n}"),
                move || {
                    let ctx = GroupContext::new(family, n).expect("valid rank");
                    enumerate_strict(n).into_iter().all(|lambda| {
                        let w = max_grassmannian(&ctx, &lambda).expect("element exists");
                        grassmannian_closed(family, n, &lambda, Variant::I).expect("closed sum")
                            == double(family, n, &w)
                    })
                },
            ));
        }
        if n >= 2 {
            for variant in [Variant::I, Variant::II] {
                items.push(item(
                    format!("type D closed sum {variant:?} matches the definition at rank {n}"),
                    move || {
                        let ctx = GroupContext::new(Family::D, n).expect("valid rank");
                        enumerate_strict(n - 1).into_iter().all(|lambda| {
                            let w = max_grassmannian(&ctx, &lambda).expect("element exists");
                            grassmannian_closed(Family::D, n, &lambda, variant)
                                .expect("closed sum")
                                == double(Family::D, n, &w)
                        })
                    },
                ));
            }
        }
        items.push(item(
            format!("staircase convolution at rank {n}"),
            move || {
                (1..=n).all(|k| {
                    let staircase = rho(k);
                    let mut expected = Polynomial::zero(n);
                    for alpha in enumerate_strict(k) {
                        if !staircase.contains(&alpha) {
                            continue;
                        }
                        expected = expected.add(
                            &qtilde(n, alpha.parts(), AlphabetSlice::x(n)).mul(&qtilde(
                                n,
                                staircase.difference(&alpha).parts(),
                                AlphabetSlice::y(n),
                            )),
                        );
                    }
                    grassmannian_closed(Family::C, n, &staircase, Variant::I)
                        .expect("closed sum")
                        == expected
                })
            },
        ));
    }
    items
}

/// Positivity decompositions over type A doubles, with the sign-change
/// coset count in type D.
fn posit_items(cap: usize) -> Vec<Item> {
    let mut items = Vec::new();
    for n in 1..=cap {
        for family in [Family::B, Family::C, Family::D] {
            if family == Family::D && n < 2 {
                continue;
            }
            items.push(item(
                format!("type {family} positivity at rank {n}"),
                move || {
                    let a_ctx = GroupContext::new(Family::A, n).expect("valid rank");
                    a_ctx.elements().into_iter().all(|perm| {
                        let form = positivity_form(family, &perm, n).expect("plain element");
                        let mut sum = Polynomial::zero(n);
                        for (_, p) in &form.summands {
                            sum = sum.add(p);
                        }
                        sum == form.type_a_side
                            && form.type_a_side.terms().all(|(c, _)| {
                                !c.is_negative() && c.denom().is_one()
                            })
                    })
                },
            ));
        }
        if n >= 2 {
            items.push(item(
                format!("sign-change coset sizes at rank {n}"),
                move || {
                    let a_ctx = GroupContext::new(Family::A, n).expect("valid rank");
                    a_ctx
                        .elements()
                        .into_iter()
                        .all(|perm| l_set(&perm, n).len() == 1 << h_stat(&perm))
                },
            ));
        }
    }
    items
}

/// The product-kernel expansion sums to the top double polynomial.
fn cauchy_items(cap: usize) -> Vec<Item> {
    let mut items = Vec::new();
    for n in 1..=cap {
        items.push(item(
            format!("kernel expansion sums to the top polynomial at rank {n}"),
            move || {
                let ctx = GroupContext::new(Family::C, n).expect("valid rank");
                cauchy_sum(n) == double(Family::C, n, &ctx.longest_element())
            },
        ));
        items.push(item(
            format!("expansion terms are homogeneous of degree {} at rank {n}", n * n),
            move || {
                cauchy_expansion(n).into_iter().all(|t| {
                    let p = t.left.mul(&t.right);
                    p.is_zero()
                        || (p.is_homogeneous() && p.degree() == Some((n * n) as u32))
                })
            },
        ));
    }
    items
}

fn product_basis_labels(n: usize) -> Vec<(SignedPermutation, StrictPartition)> {
    let a_ctx = GroupContext::new(Family::A, n).expect("valid rank");
    let mut labels = Vec::new();
    for perm in a_ctx.elements() {
        for lambda in enumerate_strict(n) {
            labels.push((perm.clone(), lambda));
        }
    }
    labels.sort();
    labels
}

fn basis_element(n: usize, perm: &SignedPermutation, lambda: &StrictPartition) -> Polynomial {
    single(Family::C, n, perm).mul(&qtilde(n, lambda.parts(), AlphabetSlice::x(n)))
}

fn pairing(n: usize, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let ctx = GroupContext::new(Family::C, n).expect("valid rank");
    scalar_product(&ctx, f, g)
}

/// Biorthogonality of the product basis against its adjoints, and the
/// complementary-length pairing rule.
fn orth_items(cap: usize) -> Vec<Item> {
    let mut items = Vec::new();
    items.push(item(
        "biorthogonality is the identity matrix at rank 2".to_string(),
        || {
            let n = 2;
            let labels = product_basis_labels(n);
            labels.iter().all(|(u, lambda)| {
                let f = basis_element(n, u, lambda);
                labels.iter().all(|(v, mu)| {
                    let adj = adjoint_element(v, mu, n).expect("valid label");
                    let value = pairing(n, &f, &adj);
                    if u == v && lambda == mu {
                        value == Polynomial::one(n)
                    } else {
                        value.is_zero()
                    }
                })
            })
        },
    ));
    for n in 3..=cap.max(3) {
        items.push(item(
            format!("sampled biorthogonality at rank {n}"),
            move || {
                let labels = product_basis_labels(n);
                let mut rng = ChaCha8Rng::seed_from_u64(23);
                (0..50).all(|_| {
                    let a = labels.choose(&mut rng).expect("labels exist");
                    let b = labels.choose(&mut rng).expect("labels exist");
                    let f = basis_element(n, &a.0, &a.1);
                    let adj = adjoint_element(&b.0, &b.1, n).expect("valid label");
                    let value = pairing(n, &f, &adj);
                    if a == b {
                        value == Polynomial::one(n)
                    } else {
                        value.is_zero()
                    }
                })
            },
        ));
    }
    for n in 1..=cap.min(3) {
        items.push(item(
            format!("complementary pairings detect the reversal and dual at rank {n}"),
            move || {
                let a_ctx = GroupContext::new(Family::A, n).expect("valid rank");
                let w0_plain = a_ctx.longest_element();
                let half = n * (n - 1) / 2;
                a_ctx.elements().into_iter().all(|u| {
                    a_ctx
                        .elements()
                        .into_iter()
                        .filter(|v| length(&a_ctx, &u) + length(&a_ctx, v) == half)
                        .all(|v| {
                            enumerate_strict(n).into_iter().all(|lambda| {
                                enumerate_strict(n).into_iter().all(|mu| {
                                    let value = pairing(
                                        n,
                                        &basis_element(n, &u, &lambda),
                                        &basis_element(n, &v, &mu),
                                    );
                                    let hit = v == w0_plain.compose(&u)
                                        && mu == lambda.dual(n);
                                    if hit {
                                        value == Polynomial::one(n)
                                    } else {
                                        value.is_zero()
                                    }
                                })
                            })
                        })
                })
            },
        ));
    }
    items
}

/// Substituting a group image of X for Y kills the top polynomial except at
/// the plain reversal, where it takes the doubled Vandermonde value.
fn vanishing_items(cap: usize) -> Vec<Item> {
    (1..=cap)
        .map(|n| {
            item(format!("top polynomial specialization at rank {n}"), move || {
                let ctx = GroupContext::new(Family::C, n).expect("valid rank");
                let top = double(Family::C, n, &ctx.longest_element());
                let rev: Vec<i32> = (1..=n as i32).rev().collect();
                let reversal = sp(&rev);
                let mut expected = Polynomial::constant(n, ci(1 << n));
                for i in 1..=n {
                    expected = expected.mul(&Polynomial::x(n, i));
                }
                for i in 2..=n {
                    for j in 1..i {
                        let xi = Polynomial::x(n, i);
                        let xj = Polynomial::x(n, j);
                        expected = expected.mul(&xi.mul(&xi).sub(&xj.mul(&xj)));
                    }
                }
                ctx.elements().into_iter().all(|w| {
                    let value = top.sub_y_wx(&w);
                    if w == reversal {
                        value == expected
                    } else {
                        value.is_zero()
                    }
                })
            })
        })
        .collect()
}

fn stable_profile(w: &SignedPermutation) -> bool {
    let barred: Vec<i32> = w.entries().iter().filter(|&&e| e < 0).map(|&e| -e).collect();
    let unbarred: Vec<i32> = w.entries().iter().filter(|&&e| e > 0).copied().collect();
    barred.windows(2).all(|p| p[0] > p[1])
        && unbarred.windows(2).all(|p| p[0] < p[1])
        && barred.iter().all(|&b| unbarred.iter().all(|&u| b < u))
}

/// Restriction behavior under rank changes, including the recorded
/// counterexample, and the long-cycle conjugation rule in type A.
fn stability_items() -> Vec<Item> {
    let mut items = Vec::new();
    items.push(item(
        "restriction below the staircase from ranks 1 and 2".to_string(),
        || {
            (1..=2usize).all(|m| {
                let m_ctx = GroupContext::new(Family::C, m).expect("valid rank");
                m_ctx
                    .elements()
                    .into_iter()
                    .filter(stable_profile)
                    .all(|w| {
                        (m + 1..=3).all(|n| {
                            let lifted = double(Family::C, n, &w.inject(n));
                            restrict(&lifted, m) == double(Family::C, m, &w)
                        })
                    })
            })
        },
    ));
    items.push(item(
        "stable profile matches the weak order below staircase elements".to_string(),
        || {
            let ctx3 = GroupContext::new(Family::C, 3).expect("valid rank");
            let m_ctx = GroupContext::new(Family::C, 2).expect("valid rank");
            m_ctx.elements().into_iter().all(|w| {
                let lifted = w.inject(3);
                let below = (1..=3usize).any(|k| {
                    let wk = max_grassmannian(&ctx3, &rho(k)).expect("element exists");
                    weak_leq(&ctx3, &lifted, &wk)
                });
                below == stable_profile(&w)
            })
        },
    ));
    items.push(item("the recorded rank three counterexample".to_string(), || {
        let n = 2;
        let lifted = double(Family::C, 3, &sp(&[-2, 1, 3]));
        let restricted = restrict(&lifted, n);
        let x1 = Polynomial::x(n, 1);
        let x2 = Polynomial::x(n, 2);
        let y1 = Polynomial::y(n, 1);
        let y2 = Polynomial::y(n, 2);
        let expected = x1
            .mul(&x2)
            .add(&x1.add(&x2).mul(&y1.add(&y2)))
            .add(&y1.mul(&y1))
            .add(&y1.mul(&y2))
            .add(&y2.mul(&y2));
        restricted == expected && restricted != double(Family::C, n, &sp(&[-2, 1]))
    }));
    items.push(item(
        "single polynomial restriction from rank 3 to rank 2".to_string(),
        || {
            [Family::B, Family::C].into_iter().all(|family| {
                let m_ctx = GroupContext::new(family, 2).expect("valid rank");
                m_ctx.elements().into_iter().all(|w| {
                    let lifted = double(family, 3, &w.inject(3)).set_y_zero();
                    restrict(&lifted, 2) == single(family, 2, &w)
                })
            })
        },
    ));
    items.push(item(
        "long-cycle conjugation fixes shifted singles up to rank 4".to_string(),
        || {
            (2..=4usize).all(|n| {
                let ctx = GroupContext::new(Family::A, n).expect("valid rank");
                let mut tau_entries = vec![n as i32];
                tau_entries.extend(1..n as i32);
                let tau = sp(&tau_entries);
                ctx.elements()
                    .into_iter()
                    .filter(|perm| perm.entry(1) == 1)
                    .all(|perm| {
                        let left = single(Family::A, n, &perm)
                            .act(&tau)
                            .set_tail_zero(n - 1);
                        let conj = tau.compose(&perm).compose(&tau.inverse());
                        left == single(Family::A, n, &conj)
                    })
            })
        },
    ));
    items
}

/// The alternating-sum identity behind the type D closed forms.
fn keylemma_items(cap: usize) -> Vec<Item> {
    (1..=cap)
        .map(|n| {
            item(format!("alternating sum telescopes at rank {n}"), move || {
                enumerate_strict(n - 1)
                    .into_iter()
                    .all(|mu| keylemma_check(&mu, n).expect("in range"))
            })
        })
        .collect()
}

/// Structure constants: the doubled special reflection, the type A and
/// type C comparison through the star, and the rank shift.
fn curprop_items(cap: usize) -> Vec<Item> {
    let mut items = Vec::new();
    items.push(item(
        "squared special reflection expands with coefficient two".to_string(),
        || {
            let s0 = sp(&[-1, 2]);
            let e = structure_constants(Family::C, &s0, &s0, 2).expect("rank two");
            e.coefficients.len() == 1 && e.coefficient(&sp(&[-2, 1])) == ci(2)
        },
    ));
    for n in 2..=cap {
        items.push(item(
            format!("type A and type C constants agree through the star at rank {n}"),
            move || {
                let ctx = GroupContext::new(Family::A, n).expect("valid rank");
                ctx.elements().into_iter().all(|u| {
                    ctx.elements()
                        .into_iter()
                        .filter(|v| is_n_stable(&u, v, n))
                        .all(|v| curprop_check(&u, &v, n).expect("stable pair").consistent)
                })
            },
        ));
    }
    items.push(item(
        "the adjacent transposition square instance".to_string(),
        || {
            let report = curprop_check(&sp(&[2, 1, 3]), &sp(&[2, 1, 3]), 3).expect("stable");
            report.consistent
                && report.c_constants.coefficients.len() == 1
                && report.c_constants.coefficient(&sp(&[2, 3, 1])) == ci(1)
        },
    ));
    items.push(item(
        "constants survive the shift from rank 2 to rank 3".to_string(),
        || {
            let ctx = GroupContext::new(Family::A, 2).expect("valid rank");
            ctx.elements().into_iter().all(|u| {
                ctx.elements()
                    .into_iter()
                    .filter(|v| is_n_stable(&u, v, 2))
                    .all(|v| {
                        let base = structure_constants(Family::A, &u, &v, 2).expect("stable");
                        let shifted = structure_constants(
                            Family::A,
                            &u.one_times(),
                            &v.one_times(),
                            3,
                        )
                        .expect("stable");
                        base.coefficients.len() == shifted.coefficients.len()
                            && base.coefficients.iter().all(|(w, c)| {
                                shifted.coefficient(&w.one_times()) == c.clone()
                            })
                    })
            })
        },
    ));
    items
}

fn naive_det(entries: &[Vec<Polynomial>], n: usize) -> Polynomial {
    let k = entries.len();
    if k == 0 {
        return Polynomial::one(n);
    }
    if k == 1 {
        return entries[0][0].clone();
    }
    let mut total = Polynomial::zero(n);
    for (i, row) in entries.iter().enumerate() {
        let minor: Vec<Vec<Polynomial>> = entries
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let cofactor = row[0].mul(&naive_det(&minor, n));
        if i % 2 == 0 {
            total = total.add(&cofactor);
        } else {
            total = total.sub(&cofactor);
        }
    }
    total
}

/// Locus classes against the closed sums, the two specializations, and the
/// determinantal evaluator against cofactor expansion.
fn lagcor_items(cap: usize) -> Vec<Item> {
    let mut items = Vec::new();
    for n in 1..=cap {
        for family in [Family::B, Family::C] {
            items.push(item(
                format!("type {family} locus class matches the closed sum at rank {n}"),
                move || {
                    enumerate_strict(n).into_iter().all(|lambda| {
                        lagrangian_class(family, &lambda, n, Variant::I).expect("in range")
                            == grassmannian_closed(family, n, &lambda, Variant::I)
                                .expect("in range")
                    })
                },
            ));
        }
        if n >= 2 {
            for variant in [Variant::I, Variant::II] {
                items.push(item(
                    format!("type D locus class {variant:?} matches the closed sum at rank {n}"),
                    move || {
                        enumerate_strict(n - 1).into_iter().all(|lambda| {
                            lagrangian_class(Family::D, &lambda, n, variant).expect("in range")
                                == grassmannian_closed(Family::D, n, &lambda, variant)
                                    .expect("in range")
                        })
                    },
                ));
            }
        }
        items.push(item(
            format!("single-condition classes match at rank {n}"),
            move || {
                (1..=n).all(|k| {
                    let lambda = StrictPartition::new(vec![k as u32]).expect("one part");
                    ssc_class(k, n).expect("in range")
                        == lagrangian_class(Family::C, &lambda, n, Variant::I)
                            .expect("in range")
                })
            },
        ));
        items.push(item(
            format!("near-staircase classes match at rank {n}"),
            move || {
                (1..=n).all(|k| {
                    (1..=k).all(|j| {
                        let lambda = rho(k).remove_part(j as u32);
                        newcor_class(k, j, n).expect("in range")
                            == lagrangian_class(Family::C, &lambda, n, Variant::I)
                                .expect("in range")
                    })
                })
            },
        ));
    }
    items.push(item(
        "determinantal evaluator matches cofactor expansion".to_string(),
        || {
            let n = 3;
            let model = ChernRootModel::new(n);
            let q = model.e_star();
            let shapes: Vec<Vec<u32>> = vec![
                vec![1],
                vec![2],
                vec![1, 1],
                vec![3],
                vec![2, 1],
                vec![1, 1, 1],
            ];
            shapes.into_iter().all(|lambda| {
                let subs: Vec<ChernSeries> =
                    (0..lambda.len()).map(|i| model.f_star(i + 1)).collect();
                let bound = lambda[0] as usize + lambda.len();
                let rows: Vec<ChernSeries> =
                    subs.iter().map(|s| q.difference(s, bound)).collect();
                let entries: Vec<Vec<Polynomial>> = (0..lambda.len())
                    .map(|i| {
                        (0..lambda.len())
                            .map(|j| {
                                rows[i].class(lambda[i] as i64 + j as i64 - i as i64)
                            })
                            .collect()
                    })
                    .collect();
                kempf_laksov(&lambda, &q, &subs).expect("valid shape")
                    == naive_det(&entries, n)
            })
        },
    ));
    items
}

/// The counterexample ring: relations, the recorded classes, and the
/// nonzero difference.
fn lq1_items() -> Vec<Item> {
    use lq1::ChowElementLQ1;
    vec![
        item("rewrites close the relations".to_string(), || {
            let z2 = ChowElementLQ1::z().pow(2);
            z2.mul(&z2) == ChowElementLQ1::monomial(2, 2, 0, -2)
                && ChowElementLQ1::z().pow(6).is_zero()
                && ChowElementLQ1::h().pow(4).is_zero()
                && ChowElementLQ1::h().mul(&ChowElementLQ1::p().pow(2)).is_zero()
        }),
        item("first and second kernel classes".to_string(), || {
            lq1::c1_e_star().to_string() == "2*h + z + p"
                && lq1::c2_e_star().to_string() == "h^2 + h*z + h*p"
        }),
        item("product of the kernel classes".to_string(), || {
            lq1::c1_e_star().mul(&lq1::c2_e_star()).to_string()
                == "2*h^3 + 3*h^2*z + 3*h^2*p + h*z^2 + 2*h*z*p"
        }),
        item("the locus class".to_string(), || {
            lq1::locus_class().to_string() == "h^2*z + h^2*p"
        }),
        item("the difference witnesses the failure".to_string(), || {
            let report = lq1::lq1_report();
            !report.difference_is_zero
                && report.difference.text == "2*h^3 + 2*h^2*z + 2*h^2*p + h*z^2 + 2*h*z*p"
                && report.q_two_one.terms == report.c1_times_c2.terms
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("bogus", None, 1).is_err());
        assert_eq!(SUITE_NAMES.len(), 11);
    }

    #[test]
    fn cheap_suites_pass_serially() {
        for name in ["examples-n2", "lq1"] {
            let report = run_suite(name, None, 1).unwrap();
            assert!(report.passed(), "{}", report.summary());
        }
    }

    #[test]
    fn worker_pool_preserves_order_and_verdict() {
        let serial = run_suite("keylemma", Some(3), 1).unwrap();
        let fanned = run_suite("keylemma", Some(3), 4).unwrap();
        assert!(fanned.passed());
        let left: Vec<&str> = serial.lines.iter().map(|l| l.label.as_str()).collect();
        let right: Vec<&str> = fanned.lines.iter().map(|l| l.label.as_str()).collect();
        assert_eq!(left, right);
    }

    #[test]
    fn failing_check_is_reported_not_fatal() {
        let lines = run_items(
            2,
            vec![
                ("holds".to_string(), Box::new(|| true)),
                ("fails".to_string(), Box::new(|| false)),
                ("panics".to_string(), Box::new(|| panic!("boom"))),
            ],
        );
        assert_eq!(lines.len(), 3);
        assert!(lines[0].passed);
        assert!(!lines[1].passed);
        assert!(!lines[2].passed);
    }
}
