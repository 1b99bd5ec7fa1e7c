//! The Chow ring of the rank 4 Lagrangian Quot compactification times a
//! line: Z[h, z, p] / (h^4, z^4 + 2h^2z^2, p^2), held in normal form
//! h^a z^b p^c with a <= 3, b <= 3, c <= 1 and integer coefficients. The
//! top-degree locus class here is not the Q-polynomial of the kernel
//! classes, which rules out any Chern-class formula for isotropic
//! morphisms.

use serde::Serialize;
use std::fmt;

const H_SLOTS: usize = 4;
const Z_SLOTS: usize = 4;
const P_SLOTS: usize = 2;

/// An element in normal form: the coefficient of h^a z^b p^c sits at
/// [a][b][c]. The rewrites h^4 -> 0, p^2 -> 0, z^4 -> -2h^2z^2 each lower
/// (h-degree or z-degree), so reduction terminates, and a single z-chain
/// makes it confluent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElementLQ1 {
    coeffs: [[[i64; P_SLOTS]; Z_SLOTS]; H_SLOTS],
}

impl ChowElementLQ1 {
    pub fn zero() -> Self {
        ChowElementLQ1 { coeffs: [[[0; P_SLOTS]; Z_SLOTS]; H_SLOTS] }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 0, 1)
    }

    pub fn h() -> Self {
        Self::monomial(1, 0, 0, 1)
    }

    pub fn z() -> Self {
        Self::monomial(0, 1, 0, 1)
    }

    pub fn p() -> Self {
        Self::monomial(0, 0, 1, 1)
    }

    /// A single reduced monomial times an integer; exponents outside the
    /// normal-form box are rewritten first.
    pub fn monomial(a: usize, b: usize, c: usize, coef: i64) -> Self {
        let mut out = Self::zero();
        out.accumulate(a, b, c, coef);
        out
    }

    /// Pushes coef * h^a z^b p^c through the rewrites into the table.
    fn accumulate(&mut self, a: usize, mut b: usize, c: usize, mut coef: i64) {
        if coef == 0 || c >= P_SLOTS {
            return;
        }
        let mut a = a;
        while b >= Z_SLOTS {
            a += 2;
            b -= 2;
            coef = -2 * coef;
        }
        if a >= H_SLOTS {
            return;
        }
        self.coeffs[a][b][c] += coef;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|plane| plane.iter().all(|row| row.iter().all(|&c| c == 0)))
    }

    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> i64 {
        if a < H_SLOTS && b < Z_SLOTS && c < P_SLOTS {
            self.coeffs[a][b][c]
        } else {
            0
        }
    }

    /// Nonzero terms as (a, b, c, coefficient), highest monomial first.
    pub fn terms(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for a in (0..H_SLOTS).rev() {
            for b in (0..Z_SLOTS).rev() {
                for c in (0..P_SLOTS).rev() {
                    let v = self.coeffs[a][b][c];
                    if v != 0 {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out.sort_by(|l, r| {
            let dl = l.0 + l.1 + l.2;
            let dr = r.0 + r.1 + r.2;
            dr.cmp(&dl).then(r.0.cmp(&l.0)).then(r.1.cmp(&l.1))
        });
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for a in 0..H_SLOTS {
            for b in 0..Z_SLOTS {
                for c in 0..P_SLOTS {
                    out.coeffs[a][b][c] += other.coeffs[a][b][c];
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for plane in out.coeffs.iter_mut() {
            for row in plane.iter_mut() {
                for c in row.iter_mut() {
                    *c = -*c;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.clone();
        for plane in out.coeffs.iter_mut() {
            for row in plane.iter_mut() {
                for c in row.iter_mut() {
                    *c *= k;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a1, b1, c1, v1) in self.terms() {
            for (a2, b2, c2, v2) in other.terms() {
                out.accumulate(a1 + a2, b1 + b2, c1 + c2, v1 * v2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for ChowElementLQ1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (a, b, c, v)) in terms.iter().enumerate() {
            let neg = *v < 0;
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = v.abs();
            let mut vars = Vec::new();
            for (name, e) in [("h", *a), ("z", *b), ("p", *c)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let vars = vars.join("*");
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&vars);
            } else {
                out.push_str(&format!("{mag}*{vars}"));
            }
        }
        write!(f, "{out}")
    }
}

/// c_1(E*) = 2h + z + p.
pub fn c1_e_star() -> ChowElementLQ1 {
    ChowElementLQ1::h().scale(2).add(&ChowElementLQ1::z()).add(&ChowElementLQ1::p())
}

/// c_2(E*) = h^2 + hz + hp.
pub fn c2_e_star() -> ChowElementLQ1 {
    ChowElementLQ1::monomial(2, 0, 0, 1)
        .add(&ChowElementLQ1::monomial(1, 1, 0, 1))
        .add(&ChowElementLQ1::monomial(1, 0, 1, 1))
}

/// The two-row Q-polynomial of the kernel classes: c_1 c_2 - 2 c_3, and the
/// bundle has rank two, so c_3 = 0.
pub fn q_two_one_e_star() -> ChowElementLQ1 {
    c1_e_star().mul(&c2_e_star())
}

/// The fundamental class of the codimension 3 locus: h^2 z + h^2 p.
pub fn locus_class() -> ChowElementLQ1 {
    ChowElementLQ1::monomial(2, 1, 0, 1).add(&ChowElementLQ1::monomial(2, 0, 1, 1))
}

/// One class in the report: rendered text plus the normal-form terms.
#[derive(Debug, Clone, Serialize)]
pub struct Lq1Value {
    pub text: String,
    pub terms: Vec<(usize, usize, usize, i64)>,
}

impl From<&ChowElementLQ1> for Lq1Value {
    fn from(e: &ChowElementLQ1) -> Self {
        Lq1Value { text: e.to_string(), terms: e.terms() }
    }
}

/// The counterexample record: the Chern classes of the dual kernel, their
/// product, the Q-polynomial value, the actual locus class, and their
/// nonzero difference.
#[derive(Debug, Clone, Serialize)]
pub struct Lq1Report {
    pub ring: String,
    pub c1: Lq1Value,
    pub c2: Lq1Value,
    pub c1_times_c2: Lq1Value,
    pub q_two_one: Lq1Value,
    pub locus: Lq1Value,
    pub difference: Lq1Value,
    pub difference_is_zero: bool,
}

pub fn lq1_report() -> Lq1Report {
    let c1 = c1_e_star();
    let c2 = c2_e_star();
    let product = c1.mul(&c2);
    let q = q_two_one_e_star();
    let locus = locus_class();
    let difference = q.sub(&locus);
    Lq1Report {
        ring: "Z[h,z,p]/(h^4, z^4+2h^2z^2, p^2)".to_string(),
        c1: (&c1).into(),
        c2: (&c2).into(),
        c1_times_c2: (&product).into(),
        q_two_one: (&q).into(),
        locus: (&locus).into(),
        difference: (&difference).into(),
        difference_is_zero: difference.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng) -> ChowElementLQ1 {
        let mut out = ChowElementLQ1::zero();
        for _ in 0..rng.gen_range(1..6) {
            let a = rng.gen_range(0..6);
            let b = rng.gen_range(0..7);
            let c = rng.gen_range(0..3);
            let v = rng.gen_range(-4..=4);
            out = out.add(&ChowElementLQ1::monomial(a, b, c, v));
        }
        out
    }

    #[test]
    fn rewriting_relations() {
        let z2 = ChowElementLQ1::z().pow(2);
        assert_eq!(z2.mul(&z2), ChowElementLQ1::monomial(2, 2, 0, -2));
        assert!(ChowElementLQ1::z().pow(6).is_zero());
        assert!(ChowElementLQ1::h().pow(4).is_zero());
        assert!(ChowElementLQ1::h().mul(&ChowElementLQ1::p().pow(2)).is_zero());
        assert_eq!(
            ChowElementLQ1::monomial(0, 4, 0, 1),
            ChowElementLQ1::monomial(2, 2, 0, -2)
        );
        assert_eq!(ChowElementLQ1::monomial(0, 5, 0, 1).coefficient(2, 3, 0), -2);
        let top = ChowElementLQ1::monomial(3, 3, 1, 7);
        assert_eq!(top.coefficient(3, 3, 1), 7);
        assert!(!top.is_zero());
    }

    #[test]
    fn ring_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..40 {
            let a = random_element(&mut rng);
            let b = random_element(&mut rng);
            let c = random_element(&mut rng);
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&ChowElementLQ1::one()), a);
            assert!(a.sub(&a).is_zero());
        }
    }

    #[test]
    fn chern_class_values() {
        let product = c1_e_star().mul(&c2_e_star());
        let expected = ChowElementLQ1::monomial(3, 0, 0, 2)
            .add(&ChowElementLQ1::monomial(2, 1, 0, 3))
            .add(&ChowElementLQ1::monomial(2, 0, 1, 3))
            .add(&ChowElementLQ1::monomial(1, 2, 0, 1))
            .add(&ChowElementLQ1::monomial(1, 1, 1, 2));
        assert_eq!(product, expected);
        assert_eq!(product, q_two_one_e_star());
        assert_eq!(
            product.to_string(),
            "2*h^3 + 3*h^2*z + 3*h^2*p + h*z^2 + 2*h*z*p"
        );
        assert_eq!(locus_class().to_string(), "h^2*z + h^2*p");
    }

    #[test]
    fn counterexample_difference() {
        let difference = q_two_one_e_star().sub(&locus_class());
        let expected = ChowElementLQ1::monomial(3, 0, 0, 2)
            .add(&ChowElementLQ1::monomial(2, 1, 0, 2))
            .add(&ChowElementLQ1::monomial(2, 0, 1, 2))
            .add(&ChowElementLQ1::monomial(1, 2, 0, 1))
            .add(&ChowElementLQ1::monomial(1, 1, 1, 2));
        assert_eq!(difference, expected);
        assert!(!difference.is_zero());
    }

    #[test]
    fn report_round_trip() {
        let report = lq1_report();
        assert!(!report.difference_is_zero);
        let text = serde_json::to_string(&report).expect("report serializes");
        let value: serde_json::Value = serde_json::from_str(&text).expect("report parses");
        assert_eq!(value["c1"]["text"], "2*h + z + p");
        assert_eq!(value["c2"]["text"], "h^2 + h*z + h*p");
        assert_eq!(value["locus"]["text"], "h^2*z + h^2*p");
        assert_eq!(
            value["difference"]["text"],
            "2*h^3 + 2*h^2*z + 2*h^2*p + h*z^2 + 2*h*z*p"
        );
        assert_eq!(value["difference_is_zero"], false);
        assert_eq!(report.c1_times_c2.terms, report.q_two_one.terms);
    }
}
