//! Degeneracy-locus classes read through Chern roots: the determinantal
//! formula for flagged quotients, the closed locus sums for the barred
//! families, the single-condition and near-staircase specializations, and
//! the alternating-sum lemma behind the type D proof.

use crate::kernels::{ptilde, qtilde};
use crate::partitions::{
    dual_plus, enumerate_plus_len, enumerate_strict, f_stat, intertwine_e, intertwine_f, rho,
    StrictPartition,
};
use crate::poly::{ci, complete, elementary, matrix_det, AlphabetSlice, Coef, Polynomial};
use crate::weyl::{Family, GroupContext, WeylError};

fn sgn(k: u32) -> Coef {
    if k % 2 == 0 {
        ci(1)
    } else {
        ci(-1)
    }
}

/// A total Chern class as a truncated series: coeffs[k] is the degree k
/// class, zero beyond the stored length. Entries live in the shared 2n-slot
/// polynomial ring so series of different bundles can be mixed.
#[derive(Debug, Clone)]
pub struct ChernSeries {
    n: usize,
    coeffs: Vec<Polynomial>,
}

impl ChernSeries {
    /// The class of a trivial bundle: c = 1.
    pub fn identity(n: usize) -> Self {
        ChernSeries { n, coeffs: vec![Polynomial::one(n)] }
    }

    /// The class of a bundle with the given roots: the product of 1 + r t,
    /// so the degree k coefficient is the k-th elementary symmetric
    /// polynomial of the roots.
    pub fn from_roots(n: usize, roots: &[Polynomial]) -> Self {
        let mut coeffs = vec![Polynomial::one(n)];
        for root in roots {
            assert_eq!(root.n(), n, "roots must live in the shared ring");
            let mut next = Vec::with_capacity(coeffs.len() + 1);
            for k in 0..=coeffs.len() {
                let mut c = Polynomial::zero(n);
                if k < coeffs.len() {
                    c = c.add(&coeffs[k]);
                }
                if k > 0 {
                    c = c.add(&coeffs[k - 1].mul(root));
                }
                next.push(c);
            }
            coeffs = next;
        }
        ChernSeries { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The degree k class; zero for negative k or beyond the stored length.
    pub fn class(&self, k: i64) -> Polynomial {
        if k < 0 || k as usize >= self.coeffs.len() {
            Polynomial::zero(self.n)
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Series product truncated at the given degree.
    pub fn product(&self, other: &ChernSeries, bound: usize) -> ChernSeries {
        assert_eq!(self.n, other.n, "series must live in the shared ring");
        let mut coeffs = Vec::with_capacity(bound + 1);
        for k in 0..=bound as i64 {
            let mut c = Polynomial::zero(self.n);
            for i in 0..=k {
                c = c.add(&self.class(i).mul(&other.class(k - i)));
            }
            coeffs.push(c);
        }
        ChernSeries { n: self.n, coeffs }
    }

    /// Series inverse truncated at the given degree; the constant term must
    /// be 1.
    pub fn inverse(&self, bound: usize) -> ChernSeries {
        assert!(
            self.class(0).sub(&Polynomial::one(self.n)).is_zero(),
            "inverse needs constant term 1"
        );
        let mut coeffs = vec![Polynomial::one(self.n)];
        for k in 1..=bound as i64 {
            let mut c = Polynomial::zero(self.n);
            for i in 1..=k {
                c = c.sub(&self.class(i).mul(&coeffs[(k - i) as usize]));
            }
            coeffs.push(c);
        }
        ChernSeries { n: self.n, coeffs }
    }

    /// The virtual difference c(E - F) = c(E) c(F)^(-1), truncated.
    pub fn difference(&self, other: &ChernSeries, bound: usize) -> ChernSeries {
        self.product(&other.inverse(bound), bound)
    }
}

/// The reading that turns locus formulas into honest polynomials: x is the
/// root alphabet of the dual kernel bundle and the flag subbundle duals
/// take prefixes of y.
#[derive(Debug, Clone, Copy)]
pub struct ChernRootModel {
    pub n: usize,
}

impl ChernRootModel {
    pub fn new(n: usize) -> Self {
        ChernRootModel { n }
    }

    /// c(E*): roots x_1, ..., x_n.
    pub fn e_star(&self) -> ChernSeries {
        let roots: Vec<Polynomial> =
            (1..=self.n).map(|i| Polynomial::x(self.n, i)).collect();
        ChernSeries::from_roots(self.n, &roots)
    }

    /// c(F*_m): roots y_1, ..., y_m.
    pub fn f_star(&self, m: usize) -> ChernSeries {
        assert!(m <= self.n, "flag prefix exceeds the rank");
        let roots: Vec<Polynomial> =
            (1..=m).map(|j| Polynomial::y(self.n, j)).collect();
        ChernSeries::from_roots(self.n, &roots)
    }
}

/// The flagged determinantal class det(c_{lambda_i + j - i}(Q - V_i)) for a
/// quotient with one flag subbundle per row of lambda. The empty partition
/// gives 1.
pub fn kempf_laksov(
    lambda: &[u32],
    quotient: &ChernSeries,
    subbundles: &[ChernSeries],
) -> Result<Polynomial, WeylError> {
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.iter().any(|&p| p == 0) {
        return Err(WeylError::Unsupported(format!(
            "row indices must be a partition with positive parts, got {lambda:?}"
        )));
    }
    if lambda.len() != subbundles.len() {
        return Err(WeylError::Unsupported(format!(
            "{} rows need {} flag series, got {}",
            lambda.len(),
            lambda.len(),
            subbundles.len()
        )));
    }
    let n = quotient.n();
    if subbundles.iter().any(|s| s.n() != n) {
        return Err(WeylError::Unsupported(
            "all series must live in the shared ring".to_string(),
        ));
    }
    let m = lambda.len();
    if m == 0 {
        return Ok(Polynomial::one(n));
    }
    let bound = lambda[0] as usize + m;
    let rows: Vec<ChernSeries> =
        subbundles.iter().map(|s| quotient.difference(s, bound)).collect();
    let entries: Vec<Vec<Polynomial>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| rows[i].class(lambda[i] as i64 + j as i64 - i as i64))
                .collect()
        })
        .collect();
    Ok(matrix_det(&entries))
}

/// Kernel family of a symmetric atom: Q rows in type C, P rows in B and D.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKernel {
    Q,
    P,
}

/// A bundle named by the display layer: the rank n source, a flag prefix of
/// the target, or the full target with its last root negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleRef {
    EStar,
    FStar(usize),
    FHatStar,
}

/// One multiplicand of a structural locus term. Det rows hold (degree, m)
/// pairs standing for the entry c_degree(F*_m).
#[derive(Debug, Clone)]
pub enum ChernFactor {
    Chern { degree: i64, bundle: BundleRef },
    Segre { degree: i64, bundle: BundleRef },
    Atom { kernel: AtomKernel, parts: StrictPartition, bundle: BundleRef },
    Det { rows: Vec<Vec<(i64, usize)>> },
}

impl ChernFactor {
    fn evaluate(&self, model: &ChernRootModel) -> Polynomial {
        let n = model.n;
        let slice_of = |bundle: &BundleRef| match bundle {
            BundleRef::EStar => AlphabetSlice::x(n),
            BundleRef::FStar(m) => AlphabetSlice::y(*m),
            BundleRef::FHatStar => AlphabetSlice::y(n),
        };
        let hat = |bundle: &BundleRef, f: Polynomial| match bundle {
            BundleRef::FHatStar => f.negate_single_y(n),
            _ => f,
        };
        match self {
            ChernFactor::Chern { degree, bundle } => {
                hat(bundle, elementary(n, *degree, slice_of(bundle)))
            }
            ChernFactor::Segre { degree, bundle } => {
                hat(bundle, complete(n, *degree, slice_of(bundle)))
            }
            ChernFactor::Atom { kernel, parts, bundle } => {
                let f = match kernel {
                    AtomKernel::Q => qtilde(n, parts.parts(), slice_of(bundle)),
                    AtomKernel::P => ptilde(n, parts.parts(), slice_of(bundle)),
                };
                hat(bundle, f)
            }
            ChernFactor::Det { rows } => {
                let entries: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|row| {
                        row.iter().map(|&(d, m)| model.f_star(m).class(d)).collect()
                    })
                    .collect();
                if entries.is_empty() {
                    Polynomial::one(n)
                } else {
                    matrix_det(&entries)
                }
            }
        }
    }
}

/// One summand of a structural locus class; an empty factor list is the
/// constant term.
#[derive(Debug, Clone)]
pub struct LocusTerm {
    pub sign: i32,
    pub factors: Vec<ChernFactor>,
}

/// A locus class kept in its structural Chern-class form; evaluate expands
/// every factor in the root model and reproduces the polynomial exactly.
#[derive(Debug, Clone)]
pub struct LocusPresentation {
    pub family: Family,
    pub n: usize,
    pub lambda: StrictPartition,
    pub terms: Vec<LocusTerm>,
}

impl LocusPresentation {
    pub fn evaluate(&self) -> Polynomial {
        let model = ChernRootModel::new(self.n);
        let mut total = Polynomial::zero(self.n);
        for term in &self.terms {
            let mut product = Polynomial::one(self.n);
            for factor in &term.factors {
                product = product.mul(&factor.evaluate(&model));
            }
            total = total.add(&product.scale(&ci(term.sign as i64)));
        }
        total
    }
}

fn atom_factor(
    kernel: AtomKernel,
    parts: &StrictPartition,
    bundle: BundleRef,
    factors: &mut Vec<ChernFactor>,
) {
    if !parts.is_empty() {
        factors.push(ChernFactor::Atom { kernel, parts: parts.clone(), bundle });
    }
}

fn det_factor(beta: &[i64], dual: &[i64], bounds: &[usize], factors: &mut Vec<ChernFactor>) {
    // beta = dual makes the matrix unitriangular, so the factor is 1.
    if beta.is_empty() || beta == dual {
        return;
    }
    let rows: Vec<Vec<(i64, usize)>> = beta
        .iter()
        .map(|&b| dual.iter().zip(bounds).map(|(&d, &m)| (b - d, m)).collect())
        .collect();
    factors.push(ChernFactor::Det { rows });
}

fn term_sign(parity: u32) -> i32 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

fn locus_terms_bc(family: Family, n: usize, lambda: &StrictPartition) -> Vec<LocusTerm> {
    let kernel = if family == Family::C { AtomKernel::Q } else { AtomKernel::P };
    let dual = lambda.dual(n);
    let k = dual.len();
    let bounds: Vec<usize> = dual.parts().iter().map(|&p| n - p as usize).collect();
    let dual_i64: Vec<i64> = dual.parts().iter().map(|&p| p as i64).collect();
    let outer = lambda.excess() + dual.weight();
    let mut terms = Vec::new();
    for alpha in enumerate_strict(n) {
        for beta in enumerate_strict(n) {
            if beta.len() != k || !beta.contains(&dual) || !alpha.is_disjoint(&beta) {
                continue;
            }
            let e_pair = intertwine_e(&alpha, &beta).expect("disjoint by the filter");
            let union_dual = alpha.union(&beta).expect("disjoint by the filter").dual(n);
            let beta_i64: Vec<i64> = beta.parts().iter().map(|&p| p as i64).collect();
            let mut factors = Vec::new();
            atom_factor(kernel, &alpha, BundleRef::EStar, &mut factors);
            atom_factor(kernel, &union_dual, BundleRef::FStar(n), &mut factors);
            det_factor(&beta_i64, &dual_i64, &bounds, &mut factors);
            terms.push(LocusTerm {
                sign: term_sign(outer + e_pair + beta.weight()),
                factors,
            });
        }
    }
    terms
}

fn locus_terms_d1(n: usize, lambda: &StrictPartition) -> Vec<LocusTerm> {
    let m = n - 1;
    let dual = dual_plus(lambda, n);
    let k = dual.len();
    let bounds: Vec<usize> = dual.parts().iter().map(|&p| n - 1 - p as usize).collect();
    let dual_i64: Vec<i64> = dual.parts().iter().map(|&p| p as i64).collect();
    let outer = f_stat(lambda, n) + dual.weight();
    let mut terms = Vec::new();
    for alpha in enumerate_strict(m) {
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
            let mut factors = Vec::new();
            atom_factor(AtomKernel::P, &alpha, BundleRef::EStar, &mut factors);
            atom_factor(AtomKernel::P, &union_dual, BundleRef::FStar(n), &mut factors);
            det_factor(&beta_i64, &dual_i64, &bounds, &mut factors);
            terms.push(LocusTerm {
                sign: term_sign(outer + f_pair + beta.weight()),
                factors,
            });
        }
    }
    terms
}

fn locus_terms_d2(n: usize, lambda: &StrictPartition) -> Vec<LocusTerm> {
    let m = n - 1;
    let dual = lambda.dual(m);
    let k = dual.len();
    let negate_last = (n % 2) == (lambda.len() % 2);
    let target = if negate_last { BundleRef::FHatStar } else { BundleRef::FStar(n) };
    let bounds: Vec<usize> = dual.parts().iter().map(|&p| n - 1 - p as usize).collect();
    let dual_i64: Vec<i64> = dual.parts().iter().map(|&p| p as i64).collect();
    let outer = lambda.excess() + dual.weight();
    let mut terms = Vec::new();
    for alpha in enumerate_strict(m) {
        for gamma in enumerate_strict(m) {
            if gamma.len() != k || !gamma.contains(&dual) || !alpha.is_disjoint(&gamma) {
                continue;
            }
            let e_pair = intertwine_e(&alpha, &gamma).expect("disjoint by the filter");
            let union_dual = alpha.union(&gamma).expect("disjoint by the filter").dual(m);
            let gamma_i64: Vec<i64> = gamma.parts().iter().map(|&p| p as i64).collect();
            let mut factors = Vec::new();
            atom_factor(AtomKernel::P, &alpha, BundleRef::EStar, &mut factors);
            atom_factor(AtomKernel::P, &union_dual, target, &mut factors);
            det_factor(&gamma_i64, &dual_i64, &bounds, &mut factors);
            terms.push(LocusTerm {
                sign: term_sign(outer + e_pair + gamma.weight()),
                factors,
            });
        }
    }
    terms
}

/// The structural Chern-class form of a maximal isotropic locus class for
/// the barred families: atoms in the two bundles against determinants of
/// flag prefix classes.
pub fn locus_presentation(
    family: Family,
    lambda: &StrictPartition,
    n: usize,
    variant: crate::families::Variant,
) -> Result<LocusPresentation, WeylError> {
    use crate::families::Variant;
    GroupContext::new(family, n)?;
    let bound = if family == Family::D { n - 1 } else { n };
    if !lambda.fits(bound) {
        return Err(WeylError::PartitionOutOfRange(
            lambda.parts().to_vec(),
            bound as u32,
        ));
    }
    let terms = match (family, variant) {
        (Family::A, _) => {
            return Err(WeylError::Unsupported(
                "type A loci follow the flagged determinantal formula; see kempf_laksov"
                    .to_string(),
            ))
        }
        (Family::B, Variant::I) | (Family::C, Variant::I) => locus_terms_bc(family, n, lambda),
        (Family::B, Variant::II) | (Family::C, Variant::II) => {
            return Err(WeylError::Unsupported(
                "the second closed form exists only in type D".to_string(),
            ))
        }
        (Family::D, Variant::I) => locus_terms_d1(n, lambda),
        (Family::D, Variant::II) => locus_terms_d2(n, lambda),
    };
    Ok(LocusPresentation { family, n, lambda: lambda.clone(), terms })
}

/// The maximal isotropic degeneracy-locus class for the barred families,
/// evaluated in the Chern root reading: the flagged determinants are built
/// from the series of the flag subbundle duals. Agrees with the closed
/// maximal-Grassmannian sum.
pub fn lagrangian_class(
    family: Family,
    lambda: &StrictPartition,
    n: usize,
    variant: crate::families::Variant,
) -> Result<Polynomial, WeylError> {
    Ok(locus_presentation(family, lambda, n, variant)?.evaluate())
}

/// The single-condition class in structural form: one term c_p(E*)
/// s_{k-p}(F*_{n+1-k}) per p, unit signs. Evaluates to ssc_class.
pub fn ssc_presentation(k: usize, n: usize) -> Result<LocusPresentation, WeylError> {
    if k == 0 || k > n {
        return Err(WeylError::Unsupported(format!(
            "the single condition needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let mut terms = Vec::new();
    for p in 0..=k {
        let mut factors = Vec::new();
        if p > 0 {
            factors.push(ChernFactor::Chern { degree: p as i64, bundle: BundleRef::EStar });
        }
        if p < k {
            factors.push(ChernFactor::Segre {
                degree: (k - p) as i64,
                bundle: BundleRef::FStar(n + 1 - k),
            });
        }
        terms.push(LocusTerm { sign: 1, factors });
    }
    Ok(LocusPresentation {
        family: Family::C,
        n,
        lambda: StrictPartition::new(vec![k as u32])?,
        terms,
    })
}

/// The single-condition class: the sum over p of c_p(E*) s_{k-p}(F*_{n+1-k}),
/// with s the complete homogeneous class of the flag prefix.
pub fn ssc_class(k: usize, n: usize) -> Result<Polynomial, WeylError> {
    if k == 0 || k > n {
        return Err(WeylError::Unsupported(format!(
            "the single condition needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let mut total = Polynomial::zero(n);
    for p in 0..=k as i64 {
        let c = elementary(n, p, AlphabetSlice::x(n));
        let s = complete(n, k as i64 - p, AlphabetSlice::y(n + 1 - k));
        total = total.add(&c.mul(&s));
    }
    Ok(total)
}

/// The near-staircase class for lambda = rho_k minus the part j: an
/// alternating sum of flag classes against products of Q-polynomials of the
/// two alphabets.
pub fn newcor_class(k: usize, j: usize, n: usize) -> Result<Polynomial, WeylError> {
    if k == 0 || k > n || j == 0 || j > k {
        return Err(WeylError::Unsupported(format!(
            "the near staircase needs 1 <= j <= k <= n, got k = {k}, j = {j}, n = {n}"
        )));
    }
    let model = ChernRootModel::new(n);
    let flag = model.f_star(n - j);
    let staircase = rho(k);
    let mut total = Polynomial::zero(n);
    for p in j..=k {
        let mut inner = Polynomial::zero(n);
        for alpha in enumerate_strict(k) {
            if alpha.has_part(p as u32) {
                continue;
            }
            let rest = staircase.difference(&alpha).remove_part(p as u32);
            let above = alpha.parts().iter().filter(|&&a| a > p as u32).count() as u32;
            let term = qtilde(n, alpha.parts(), AlphabetSlice::x(n))
                .mul(&qtilde(n, rest.parts(), AlphabetSlice::y(n)));
            inner = inner.add(&term.scale(&sgn(above)));
        }
        let c = flag.class(p as i64 - j as i64);
        total = total.add(&c.mul(&inner).scale(&sgn((k - p) as u32)));
    }
    Ok(total)
}

/// The alternating-sum identity: removing one part at a time against
/// elementary classes of the shorter alphabet telescopes to the two
/// evaluations of the full P-polynomial, one with the last variable negated.
pub fn keylemma_check(mu: &StrictPartition, n: usize) -> Result<bool, WeylError> {
    if n == 0 || !mu.fits(n - 1) {
        return Err(WeylError::PartitionOutOfRange(
            mu.parts().to_vec(),
            n.saturating_sub(1) as u32,
        ));
    }
    let r = mu.len();
    let mut lhs = Polynomial::zero(n);
    for (i, &part) in mu.parts().iter().enumerate() {
        let shorter = ptilde(n, mu.remove_part(part).parts(), AlphabetSlice::y(n));
        let e = elementary(n, part as i64, AlphabetSlice::y(n - 1));
        lhs = lhs.add(&shorter.mul(&e).scale(&sgn(i as u32)));
    }
    let full = ptilde(n, mu.parts(), AlphabetSlice::y(n));
    let rhs = full
        .scale(&sgn((r + 1) as u32))
        .add(&full.negate_single_y(n));
    Ok(lhs.sub(&rhs).is_zero())
}
