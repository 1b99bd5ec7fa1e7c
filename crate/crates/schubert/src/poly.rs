//! Exact sparse polynomial arithmetic over the rationals in two alphabets
//! x1..xn and y1..yn, with the determinants, Pfaffians, and symmetric
//! function builders the closed formulas need.

use crate::weyl::SignedPermutation;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Coef = BigRational;

/// Integer coefficient shorthand.
pub fn ci(k: i64) -> Coef {
    BigRational::from_integer(BigInt::from(k))
}

/// Rational coefficient shorthand.
pub fn cq(num: i64, den: i64) -> Coef {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponent vector of length 2n: x1..xn then y1..yn. Ordered graded
/// lexicographically with x1 most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    X,
    Y,
}

/// A prefix of one alphabet: X_k or Y_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphabetSlice {
    pub alphabet: Alphabet,
    pub k: usize,
}

impl AlphabetSlice {
    pub fn x(k: usize) -> Self {
        AlphabetSlice { alphabet: Alphabet::X, k }
    }

    pub fn y(k: usize) -> Self {
        AlphabetSlice { alphabet: Alphabet::Y, k }
    }
}

/// Where one variable goes under a signed variable substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarImage {
    Zero,
    /// Variable at this slot index (0-based over the 2n slots).
    Pos(usize),
    Neg(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Coef>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Coef) -> Self {
        let mut p = Polynomial::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial { exps: vec![0; 2 * n].into() }, c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, Coef::one())
    }

    /// The variable x_i, 1-based.
    pub fn x(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "x index {i} out of range for rank {n}");
        Polynomial::slot(n, i - 1)
    }

    /// The variable y_j, 1-based.
    pub fn y(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j), "y index {j} out of range for rank {n}");
        Polynomial::slot(n, n + j - 1)
    }

    fn slot(n: usize, idx: usize) -> Self {
        let mut exps = vec![0u16; 2 * n];
        exps[idx] = 1;
        let mut p = Polynomial::zero(n);
        p.terms.insert(Monomial { exps: exps.into() }, Coef::one());
        p
    }

    /// Build from (coefficient, exponent vector) pairs; like terms combine.
    pub fn of(n: usize, terms: &[(i64, &[u16])]) -> Self {
        let mut p = Polynomial::zero(n);
        for &(c, exps) in terms {
            assert_eq!(exps.len(), 2 * n, "exponent vector length mismatch");
            p.add_term(Monomial { exps: exps.to_vec().into() }, ci(c));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree in one 0-based variable slot; None for the zero polynomial.
    pub fn deg_in_slot(&self, idx: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.exps[idx] as u32)
            .max()
    }

    pub fn deg_in_x(&self, i: usize) -> Option<u32> {
        self.deg_in_slot(i - 1)
    }

    pub fn constant_term(&self) -> Coef {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coef::zero)
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coef_of(&self, exps: &[u16]) -> Coef {
        assert_eq!(exps.len(), 2 * self.n);
        self.terms
            .get(&Monomial { exps: exps.to_vec().into() })
            .cloned()
            .unwrap_or_else(Coef::zero)
    }

    /// Iterate terms in ascending graded-lex order as (coef, exps).
    pub fn terms(&self) -> impl Iterator<Item = (&Coef, &[u16])> {
        self.terms.iter().map(|(m, c)| (c, &m.exps[..]))
    }

    fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "rank mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "rank mismatch in mul");
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u16> = ma
                    .exps
                    .iter()
                    .zip(mb.exps.iter())
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.add_term(Monomial { exps: exps.into() }, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient; panics if the division leaves a remainder, which
    /// signals an internal bug (every caller divides exactly).
    pub fn exact_divide(&self, g: &Polynomial) -> Polynomial {
        assert_eq!(self.n, g.n, "rank mismatch in exact_divide");
        assert!(!g.is_zero(), "division by zero polynomial");
        let (lm_g, lc_g) = g.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.n);
        while !rem.is_zero() {
            let (lm_r, lc_r) = rem.terms.iter().next_back().unwrap();
            let exps: Vec<u16> = lm_r
                .exps
                .iter()
                .zip(lm_g.exps.iter())
                .map(|(&a, &b)| {
                    a.checked_sub(b)
                        .expect("exact_divide: nonzero remainder")
                })
                .collect();
            let m = Monomial { exps: exps.into() };
            let c = lc_r / lc_g;
            let mut t = Polynomial::zero(self.n);
            t.terms.insert(m, c);
            rem = rem.sub(&t.mul(g));
            let (tm, tc) = t.terms.into_iter().next().unwrap();
            quot.add_term(tm, tc);
        }
        quot
    }

    /// (f - s_i f)/(x_i - x_{i+1}) term by term: the exponent pair (p, q)
    /// at slots i, i+1 spreads into the |p - q| monomials lying between the
    /// pair and its swap.
    pub(crate) fn swap_quotient(&self, i: usize) -> Polynomial {
        assert!(i >= 1 && i < self.n, "swap index out of range");
        let (a, b) = (i - 1, i);
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let p = m.exps[a];
            let q = m.exps[b];
            if p == q {
                continue;
            }
            let coef = if p > q { c.clone() } else { -c.clone() };
            for t in p.min(q)..p.max(q) {
                let mut exps = m.exps.to_vec();
                exps[a] = t;
                exps[b] = p + q - 1 - t;
                out.add_term(Monomial { exps: exps.into() }, coef.clone());
            }
        }
        out
    }

    /// (f - s_0 f)/x_1 for the flip x_1 -> -x_1, term by term: odd x_1
    /// powers drop one degree and double, even ones vanish.
    pub(crate) fn flip_quotient(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let p = m.exps[0];
            if p % 2 == 0 {
                continue;
            }
            let mut exps = m.exps.to_vec();
            exps[0] = p - 1;
            out.add_term(Monomial { exps: exps.into() }, c + c);
        }
        out
    }

    /// (f - s f)/(x_1 + x_2) for the reflection x_1 -> -x_2, x_2 -> -x_1,
    /// term by term with alternating signs between the exponent pair.
    pub(crate) fn double_flip_quotient(&self) -> Polynomial {
        assert!(self.n >= 2, "pair flip needs two variables");
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let p = m.exps[0];
            let q = m.exps[1];
            if p == q {
                continue;
            }
            let lo = p.min(q);
            let d = p.max(q) - lo;
            // the even-gap numerator is antisymmetric in the pair, the
            // odd-gap one symmetric
            let front = if (p + q) % 2 == 0 && p < q { -c.clone() } else { c.clone() };
            for t in 0..d {
                let mut exps = m.exps.to_vec();
                exps[0] = lo + d - 1 - t;
                exps[1] = lo + t;
                let coef = if t % 2 == 0 { front.clone() } else { -front.clone() };
                out.add_term(Monomial { exps: exps.into() }, coef);
            }
        }
        out
    }

    /// Signed variable substitution along per-slot images.
    pub fn substitute(&self, images: &[VarImage]) -> Polynomial {
        assert_eq!(images.len(), 2 * self.n, "image vector length mismatch");
        let mut out = Polynomial::zero(self.n);
        'term: for (m, c) in &self.terms {
            let mut exps = vec![0u16; 2 * self.n];
            let mut coef = c.clone();
            for (slot, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match images[slot] {
                    VarImage::Zero => continue 'term,
                    VarImage::Pos(t) => {
                        exps[t] = exps[t].checked_add(e).expect("exponent overflow");
                    }
                    VarImage::Neg(t) => {
                        exps[t] = exps[t].checked_add(e).expect("exponent overflow");
                        if e % 2 == 1 {
                            coef = -coef;
                        }
                    }
                }
            }
            out.add_term(Monomial { exps: exps.into() }, coef);
        }
        out
    }

    pub fn identity_images(&self) -> Vec<VarImage> {
        (0..2 * self.n).map(VarImage::Pos).collect()
    }

    /// The action of a signed permutation on the X alphabet:
    /// x_i goes to sign(w(i)) x_{|w(i)|}. Left action under compose.
    pub fn act(&self, w: &SignedPermutation) -> Polynomial {
        assert_eq!(w.n(), self.n, "rank mismatch in act");
        let mut images = self.identity_images();
        for i in 1..=self.n {
            let e = w.entry(i);
            let t = e.unsigned_abs() as usize - 1;
            images[i - 1] = if e > 0 { VarImage::Pos(t) } else { VarImage::Neg(t) };
        }
        self.substitute(&images)
    }

    pub fn set_y_zero(&self) -> Polynomial {
        let mut images = self.identity_images();
        for j in self.n..2 * self.n {
            images[j] = VarImage::Zero;
        }
        self.substitute(&images)
    }

    /// Kill x_{m+1}..x_n and y_{m+1}..y_n.
    pub fn set_tail_zero(&self, m: usize) -> Polynomial {
        let mut images = self.identity_images();
        for i in m..self.n {
            images[i] = VarImage::Zero;
            images[self.n + i] = VarImage::Zero;
        }
        self.substitute(&images)
    }

    pub fn negate_x(&self) -> Polynomial {
        let mut images = self.identity_images();
        for i in 0..self.n {
            images[i] = VarImage::Neg(i);
        }
        self.substitute(&images)
    }

    pub fn negate_y(&self) -> Polynomial {
        let mut images = self.identity_images();
        for j in self.n..2 * self.n {
            images[j] = VarImage::Neg(j);
        }
        self.substitute(&images)
    }

    /// Negate a single y variable (1-based).
    pub fn negate_single_y(&self, j: usize) -> Polynomial {
        let mut images = self.identity_images();
        images[self.n + j - 1] = VarImage::Neg(self.n + j - 1);
        self.substitute(&images)
    }

    /// x_i goes to x_{n+1-i}.
    pub fn reverse_x(&self) -> Polynomial {
        let mut images = self.identity_images();
        for i in 0..self.n {
            images[i] = VarImage::Pos(self.n - 1 - i);
        }
        self.substitute(&images)
    }

    /// Substitute x_i by y_i; meant for polynomials free of y-variables.
    pub fn x_as_y(&self) -> Polynomial {
        let mut images = self.identity_images();
        for i in 0..self.n {
            images[i] = VarImage::Pos(self.n + i);
        }
        self.substitute(&images)
    }

    /// Substitute x_i by y_{n+1-i}; meant for polynomials free of
    /// y-variables.
    pub fn x_as_reversed_y(&self) -> Polynomial {
        let mut images = self.identity_images();
        for i in 0..self.n {
            images[i] = VarImage::Pos(2 * self.n - 1 - i);
        }
        self.substitute(&images)
    }

    /// Substitute y_i by sign(w(i)) x_{|w(i)|}; evaluates f(X, wX).
    pub fn sub_y_wx(&self, w: &SignedPermutation) -> Polynomial {
        assert_eq!(w.n(), self.n, "rank mismatch in sub_y_wx");
        let mut images = self.identity_images();
        for i in 1..=self.n {
            let e = w.entry(i);
            let t = e.unsigned_abs() as usize - 1;
            images[self.n + i - 1] = if e > 0 { VarImage::Pos(t) } else { VarImage::Neg(t) };
        }
        self.substitute(&images)
    }

    /// Re-embed at a larger rank, preserving variable names.
    pub fn promote(&self, m: usize) -> Polynomial {
        assert!(m >= self.n, "promote target below current rank");
        let mut out = Polynomial::zero(m);
        for (mono, c) in &self.terms {
            let mut exps = vec![0u16; 2 * m];
            exps[..self.n].copy_from_slice(&mono.exps[..self.n]);
            exps[m..m + self.n].copy_from_slice(&mono.exps[self.n..]);
            out.terms.insert(Monomial { exps: exps.into() }, c.clone());
        }
        out
    }

    /// Drop to a smaller rank; panics if any dropped variable occurs.
    pub fn restrict_rank(&self, m: usize) -> Polynomial {
        assert!(m <= self.n, "restrict target above current rank");
        let mut out = Polynomial::zero(m);
        for (mono, c) in &self.terms {
            let tail_used = mono.exps[m..self.n]
                .iter()
                .chain(&mono.exps[self.n + m..])
                .any(|&e| e > 0);
            assert!(!tail_used, "restrict_rank: tail variable in use");
            let mut exps = vec![0u16; 2 * m];
            exps[..m].copy_from_slice(&mono.exps[..m]);
            exps[m..].copy_from_slice(&mono.exps[self.n..self.n + m]);
            out.terms.insert(Monomial { exps: exps.into() }, c.clone());
        }
        out
    }

    /// Keep only terms of one total degree.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Canonical text form: graded-lex descending, "p/q" coefficients.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let vars = render_vars(&m.exps, self.n, "*", false);
            if vars.is_empty() {
                out.push_str(&render_coef(&mag));
            } else if mag.is_one() {
                out.push_str(&vars);
            } else {
                out.push_str(&render_coef(&mag));
                out.push('*');
                out.push_str(&vars);
            }
        }
        out
    }

    /// LaTeX form; a common denominator larger than 1 is factored out front.
    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let den = self.denominator_lcm();
        let inner = if den.is_one() { self.clone() } else { self.scale(&Coef::from_integer(den.clone())) };
        let mut out = String::new();
        for (i, (m, c)) in inner.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            debug_assert!(mag.denom().is_one());
            let vars = render_vars(&m.exps, inner.n, " ", true);
            if vars.is_empty() {
                out.push_str(&mag.numer().to_string());
            } else if mag.is_one() {
                out.push_str(&vars);
            } else {
                out.push_str(&format!("{} {}", mag.numer(), vars));
            }
        }
        if den.is_one() {
            out
        } else {
            format!("\\frac{{1}}{{{den}}}\\left({out}\\right)")
        }
    }

    /// Terms as JSON values [{"c": [num, den], "x": [...], "y": [...]}],
    /// ascending order; coefficients must fit in i64.
    pub fn to_json_terms(&self) -> Result<serde_json::Value, String> {
        let mut arr = Vec::new();
        for (m, c) in &self.terms {
            let num = i64::try_from(c.numer().clone())
                .map_err(|_| format!("coefficient numerator {} exceeds i64", c.numer()))?;
            let den = i64::try_from(c.denom().clone())
                .map_err(|_| format!("coefficient denominator {} exceeds i64", c.denom()))?;
            let xs: Vec<u16> = m.exps[..self.n].to_vec();
            let ys: Vec<u16> = m.exps[self.n..].to_vec();
            arr.push(serde_json::json!({ "c": [num, den], "x": xs, "y": ys }));
        }
        Ok(serde_json::Value::Array(arr))
    }

    pub fn from_json_terms(n: usize, v: &serde_json::Value) -> Result<Polynomial, String> {
        let arr = v.as_array().ok_or("terms: expected an array")?;
        let mut p = Polynomial::zero(n);
        for t in arr {
            let c = t.get("c").and_then(|c| c.as_array()).ok_or("term: bad c")?;
            if c.len() != 2 {
                return Err("term: c must be [num, den]".into());
            }
            let num = c[0].as_i64().ok_or("term: bad numerator")?;
            let den = c[1].as_i64().ok_or("term: bad denominator")?;
            let read_exps = |key: &str| -> Result<Vec<u16>, String> {
                let a = t.get(key).and_then(|a| a.as_array()).ok_or("term: bad exponents")?;
                if a.len() != n {
                    return Err(format!("term: {key} exponent count {} != rank {n}", a.len()));
                }
                a.iter()
                    .map(|e| {
                        e.as_u64()
                            .and_then(|u| u16::try_from(u).ok())
                            .ok_or("term: bad exponent".to_string())
                    })
                    .collect()
            };
            let mut exps = read_exps("x")?;
            exps.extend(read_exps("y")?);
            if den == 0 {
                return Err("term: zero denominator".into());
            }
            p.add_term(Monomial { exps: exps.into() }, cq(num, den));
        }
        Ok(p)
    }
}

fn render_coef(c: &Coef) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_vars(exps: &[u16], n: usize, sep: &str, latex: bool) -> String {
    let mut parts = Vec::new();
    for (slot, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (name, idx) = if slot < n { ("x", slot + 1) } else { ("y", slot - n + 1) };
        let base = if latex { format!("{name}_{{{idx}}}") } else { format!("{name}{idx}") };
        parts.push(match (e, latex) {
            (1, _) => base,
            (_, false) => format!("{base}^{e}"),
            (_, true) => format!("{base}^{{{e}}}"),
        });
    }
    parts.join(sep)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

/// The i-th elementary symmetric polynomial of a prefix alphabet; e_0 = 1,
/// and out-of-range subscripts vanish.
pub fn elementary(n: usize, i: i64, slice: AlphabetSlice) -> Polynomial {
    assert!(slice.k <= n, "slice length exceeds rank");
    if i < 0 || i as usize > slice.k {
        return Polynomial::zero(n);
    }
    let i = i as usize;
    // row[j] accumulates e_j of the variables consumed so far.
    let mut row = vec![Polynomial::zero(n); i + 1];
    row[0] = Polynomial::one(n);
    for v in 1..=slice.k {
        let xv = match slice.alphabet {
            Alphabet::X => Polynomial::x(n, v),
            Alphabet::Y => Polynomial::y(n, v),
        };
        for j in (1..=i.min(v)).rev() {
            row[j] = row[j].add(&row[j - 1].mul(&xv));
        }
    }
    row[i].clone()
}

/// The complete homogeneous symmetric polynomial h_r of a prefix alphabet.
pub fn complete(n: usize, r: i64, slice: AlphabetSlice) -> Polynomial {
    assert!(slice.k <= n, "slice length exceeds rank");
    if r < 0 || (r > 0 && slice.k == 0) {
        return Polynomial::zero(n);
    }
    let r = r as usize;
    let mut row = vec![Polynomial::zero(n); r + 1];
    row[0] = Polynomial::one(n);
    for v in 1..=slice.k {
        let xv = match slice.alphabet {
            Alphabet::X => Polynomial::x(n, v),
            Alphabet::Y => Polynomial::y(n, v),
        };
        // Ascending j so row[j - 1] already includes this variable, which
        // is what the recurrence h_j = h_j^(old) + v * h_{j-1} needs.
        for j in 1..=r {
            let carry = row[j - 1].mul(&xv);
            row[j] = row[j].add(&carry);
        }
    }
    row[r].clone()
}

/// Determinant of a square matrix of polynomials: cofactor expansion up to
/// size 4, fraction-free elimination beyond.
pub fn matrix_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    assert!(m.iter().all(|r| r.len() == k), "determinant of non-square matrix");
    if k == 0 {
        panic!("determinant needs an ambient rank; use flagged_det for empty");
    }
    let n = m[0][0].n();
    if k <= 4 {
        return det_cofactor(m, &(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>(), n);
    }
    det_bareiss(m, n)
}

fn det_cofactor(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], n: usize) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::one(n);
    }
    let r = rows[0];
    let rest: Vec<usize> = rows[1..].to_vec();
    let mut acc = Polynomial::zero(n);
    for (t, &c) in cols.iter().enumerate() {
        let e = &m[r][c];
        if e.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let minor = det_cofactor(m, &rest, &sub_cols, n);
        let signed = if t % 2 == 0 { e.mul(&minor) } else { e.mul(&minor).neg() };
        acc = acc.add(&signed);
    }
    acc
}

fn det_bareiss(m: &[Vec<Polynomial>], n: usize) -> Polynomial {
    let k = m.len();
    let mut a: Vec<Vec<Polynomial>> = m.to_vec();
    let mut sign = false;
    let mut prev = Polynomial::one(n);
    for p in 0..k - 1 {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(n),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let t = a[p][p].mul(&a[i][j]).sub(&a[i][p].mul(&a[p][j]));
                a[i][j] = t.exact_divide(&prev);
            }
        }
        for i in p + 1..k {
            a[i][p] = Polynomial::zero(n);
        }
        prev = a[p][p].clone();
    }
    let d = a[k - 1][k - 1].clone();
    if sign { d.neg() } else { d }
}

/// The flagged determinant det(e_{beta_i - lam_j}(alphabet prefix bounds_j))
/// of size k; the empty determinant is 1.
pub fn flagged_det(
    n: usize,
    beta: &[i64],
    lam: &[i64],
    bounds: &[usize],
    alphabet: Alphabet,
) -> Polynomial {
    assert_eq!(beta.len(), lam.len(), "flagged_det: length mismatch");
    assert_eq!(beta.len(), bounds.len(), "flagged_det: length mismatch");
    let k = beta.len();
    if k == 0 {
        return Polynomial::one(n);
    }
    let m: Vec<Vec<Polynomial>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    elementary(n, beta[i] - lam[j], AlphabetSlice { alphabet, k: bounds[j] })
                })
                .collect()
        })
        .collect();
    matrix_det(&m)
}

/// Pfaffian by first-row expansion. The matrix must be antisymmetric of
/// even size; odd size or asymmetry is rejected.
pub fn pfaffian(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    assert!(k % 2 == 0, "pfaffian of odd-size matrix");
    assert!(m.iter().all(|r| r.len() == k), "pfaffian of non-square matrix");
    assert!(k > 0, "pfaffian needs an ambient rank; pad at the call site");
    let n = m[0][0].n();
    for i in 0..k {
        assert!(m[i][i].is_zero(), "pfaffian: nonzero diagonal");
        for j in i + 1..k {
            assert!(m[i][j] == m[j][i].neg(), "pfaffian: matrix not antisymmetric");
        }
    }
    let idx: Vec<usize> = (0..k).collect();
    pf_rec(m, &idx, n)
}

fn pf_rec(m: &[Vec<Polynomial>], idx: &[usize], n: usize) -> Polynomial {
    if idx.is_empty() {
        return Polynomial::one(n);
    }
    let i0 = idx[0];
    let mut acc = Polynomial::zero(n);
    for t in 1..idx.len() {
        let j = idx[t];
        let e = &m[i0][j];
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .copied()
            .filter(|&r| r != j)
            .collect();
        let sub = pf_rec(m, &rest, n);
        let signed = if t % 2 == 1 { e.mul(&sub) } else { e.mul(&sub).neg() };
        acc = acc.add(&signed);
    }
    acc
}

/// A reproducible random polynomial with small integer coefficients.
pub fn random_polynomial<R: Rng>(
    n: usize,
    max_deg: u16,
    max_terms: usize,
    include_y: bool,
    rng: &mut R,
) -> Polynomial {
    let mut p = Polynomial::zero(n);
    let slots = if include_y { 2 * n } else { n };
    for _ in 0..max_terms {
        let mut exps = vec![0u16; 2 * n];
        let mut budget = max_deg;
        for _ in 0..max_deg {
            if budget == 0 {
                break;
            }
            let s = rng.gen_range(0..slots);
            if rng.gen_bool(0.7) {
                exps[s] += 1;
                budget -= 1;
            }
        }
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-4..=4);
        }
        p.add_term(Monomial { exps: exps.into() }, ci(c));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{Family, GroupContext};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> Polynomial {
        Polynomial::x(2, i)
    }

    fn y(j: usize) -> Polynomial {
        Polynomial::y(2, j)
    }

    #[test]
    fn ring_basics() {
        assert!(x(1).add(&y(1)).mul(&Polynomial::zero(2)).is_zero());
        assert!(x(1).sub(&y(1)).add(&y(1).sub(&x(1))).is_zero());
        let sq = x(1).add(&x(2)).pow(2);
        let expect = Polynomial::of(
            2,
            &[(1, &[2, 0, 0, 0]), (2, &[1, 1, 0, 0]), (1, &[0, 2, 0, 0])],
        );
        assert_eq!(sq, expect);
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn ring_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = random_polynomial(3, 3, 4, true, &mut rng);
            let g = random_polynomial(3, 3, 4, true, &mut rng);
            let h = random_polynomial(3, 3, 4, true, &mut rng);
            assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            assert_eq!(f.mul(&g), g.mul(&f));
        }
    }

    #[test]
    fn exact_division() {
        let q = x(1).pow(2).sub(&x(2).pow(2)).exact_divide(&x(1).sub(&x(2)));
        assert_eq!(q, x(1).add(&x(2)));
        assert!(Polynomial::zero(2).exact_divide(&x(1)).is_zero());
        let f = x(1).add(&x(2));
        let g = x(1).mul(&x(2)).add(&y(1).mul(&y(2)));
        assert_eq!(f.mul(&g).exact_divide(&f), g);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let f = random_polynomial(2, 3, 4, true, &mut rng);
            let mut g = random_polynomial(2, 3, 4, true, &mut rng);
            if g.is_zero() {
                g = Polynomial::one(2);
            }
            assert_eq!(f.mul(&g).exact_divide(&g), f);
        }
    }

    #[test]
    #[should_panic(expected = "nonzero remainder")]
    fn inexact_division_panics() {
        x(1).add(&Polynomial::one(2)).exact_divide(&x(2));
    }

    #[test]
    fn quotient_kernels_match_subtract_and_divide() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let oracle = |f: &Polynomial, s: &SignedPermutation, den: &Polynomial| {
            let num = f.sub(&f.act(s));
            if num.is_zero() {
                num
            } else {
                num.exact_divide(den)
            }
        };
        for _ in 0..50 {
            let f = random_polynomial(3, 4, 5, true, &mut rng);
            let swap = SignedPermutation::new(vec![1, 3, 2]).unwrap();
            let den = Polynomial::x(3, 2).sub(&Polynomial::x(3, 3));
            assert_eq!(f.swap_quotient(2), oracle(&f, &swap, &den));
            let flip = SignedPermutation::new(vec![-1, 2, 3]).unwrap();
            assert_eq!(f.flip_quotient(), oracle(&f, &flip, &Polynomial::x(3, 1)));
            let pair = SignedPermutation::new(vec![-2, -1, 3]).unwrap();
            let den = Polynomial::x(3, 1).add(&Polynomial::x(3, 2));
            assert_eq!(f.double_flip_quotient(), oracle(&f, &pair, &den));
        }
    }

    #[test]
    fn action_examples() {
        let s0 = SignedPermutation::new(vec![-1, 2]).unwrap();
        assert_eq!(x(1).act(&s0), x(1).neg());
        let sbox = SignedPermutation::new(vec![-2, -1]).unwrap();
        assert_eq!(x(1).act(&sbox), x(2).neg());
        let w0a = SignedPermutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(Polynomial::x(3, 1).act(&w0a), Polynomial::x(3, 3));
    }

    #[test]
    fn action_is_group_action() {
        let ctx = GroupContext::new(Family::C, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = random_polynomial(2, 3, 5, true, &mut rng);
        for u in ctx.elements() {
            for v in ctx.elements() {
                assert_eq!(f.act(&v).act(&u), f.act(&u.compose(&v)));
            }
        }
    }

    #[test]
    fn specializations() {
        assert_eq!(x(2).add(&y(1)).set_y_zero(), x(2));
        assert_eq!(x(1).sub(&y(1)).negate_y(), x(1).add(&y(1)));
        assert_eq!(x(1).reverse_x(), x(2));
        assert_eq!(x(2).add(&y(2)).set_tail_zero(1), Polynomial::zero(2));
        assert_eq!(y(2).negate_single_y(2), y(2).neg());
        let w = SignedPermutation::new(vec![-2, 1]).unwrap();
        assert_eq!(y(1).sub_y_wx(&w), x(2).neg());
    }

    #[test]
    fn promote_and_restrict() {
        let f = x(1).mul(&y(2));
        let g = f.promote(4);
        assert_eq!(g.n(), 4);
        assert_eq!(g.restrict_rank(2), f);
        assert_eq!(f.promote(3).set_tail_zero(2), f.promote(3));
    }

    #[test]
    fn symmetric_builders() {
        assert_eq!(elementary(2, 1, AlphabetSlice::x(2)), x(1).add(&x(2)));
        assert!(elementary(2, 3, AlphabetSlice::x(2)).is_zero());
        assert_eq!(elementary(2, 0, AlphabetSlice::x(0)), Polynomial::one(2));
        assert!(elementary(2, -1, AlphabetSlice::x(2)).is_zero());
        assert_eq!(complete(2, 2, AlphabetSlice::y(1)), y(1).pow(2));
        assert_eq!(
            complete(2, 2, AlphabetSlice::x(2)),
            Polynomial::of(2, &[(1, &[2, 0, 0, 0]), (1, &[1, 1, 0, 0]), (1, &[0, 2, 0, 0])])
        );
        // h_r and e_r agree for a single variable.
        assert_eq!(
            complete(3, 3, AlphabetSlice::x(1)),
            Polynomial::x(3, 1).pow(3)
        );
    }

    #[test]
    fn flagged_det_examples() {
        assert_eq!(flagged_det(2, &[2], &[2], &[0], Alphabet::Y), Polynomial::one(2));
        assert_eq!(flagged_det(2, &[2], &[1], &[1], Alphabet::Y), y(1));
        assert_eq!(flagged_det(2, &[], &[], &[], Alphabet::Y), Polynomial::one(2));
    }

    #[test]
    fn determinant_matches_cofactor_and_bareiss() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for k in [2usize, 3, 5] {
            let m: Vec<Vec<Polynomial>> = (0..k)
                .map(|_| (0..k).map(|_| random_polynomial(2, 2, 2, false, &mut rng)).collect())
                .collect();
            let idx: Vec<usize> = (0..k).collect();
            let by_cofactor = det_cofactor(&m, &idx, &idx, 2);
            let by_bareiss = det_bareiss(&m, 2);
            assert_eq!(by_cofactor, by_bareiss, "size {k}");
        }
    }

    #[test]
    fn pfaffian_examples_and_det_oracle() {
        let a = x(1).add(&y(2));
        let m = vec![
            vec![Polynomial::zero(2), a.clone()],
            vec![a.neg(), Polynomial::zero(2)],
        ];
        assert_eq!(pfaffian(&m), a);
        let z = vec![
            vec![Polynomial::zero(2), Polynomial::zero(2)],
            vec![Polynomial::zero(2), Polynomial::zero(2)],
        ];
        assert!(pfaffian(&z).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for k in [2usize, 4] {
            for _ in 0..3 {
                let mut m = vec![vec![Polynomial::zero(2); k]; k];
                for i in 0..k {
                    for j in i + 1..k {
                        let e = random_polynomial(2, 2, 2, true, &mut rng);
                        m[i][j] = e.clone();
                        m[j][i] = e.neg();
                    }
                }
                let pf = pfaffian(&m);
                assert_eq!(pf.pow(2), matrix_det(&m), "size {k}");
            }
        }
    }

    #[test]
    #[should_panic(expected = "odd-size")]
    fn pfaffian_rejects_odd() {
        pfaffian(&[vec![Polynomial::zero(1)]]);
    }

    #[test]
    fn degree_queries() {
        let f = x(1).pow(2).mul(&x(2));
        assert_eq!(f.deg_in_x(1), Some(2));
        assert_eq!(x(1).deg_in_x(2), Some(0));
        assert_eq!(Polynomial::zero(2).deg_in_x(1), None);
        assert_eq!(Polynomial::zero(2).degree(), None);
    }

    #[test]
    fn rendering() {
        let f = x(1).mul(&x(2)).add(&x(1).mul(&y(1)).scale(&ci(2))).sub(&y(2).pow(2).scale(&cq(3, 2)));
        assert_eq!(f.render_text(), "x1*x2 + 2*x1*y1 - 3/2*y2^2");
        assert_eq!(Polynomial::zero(2).render_text(), "0");
        assert_eq!(Polynomial::one(2).render_text(), "1");
        assert_eq!(Polynomial::one(2).neg().render_text(), "-1");
        let half = x(1).add(&y(1)).scale(&cq(1, 2));
        assert_eq!(half.render_latex(), "\\frac{1}{2}\\left(x_{1} + y_{1}\\right)");
        assert_eq!(x(1).pow(2).render_latex(), "x_{1}^{2}");
    }

    #[test]
    fn text_order_is_graded_lex_descending() {
        let f = Polynomial::one(2)
            .add(&x(2))
            .add(&x(1))
            .add(&x(1).pow(2))
            .add(&y(1))
            .add(&x(1).mul(&x(2)));
        assert_eq!(f.render_text(), "x1^2 + x1*x2 + x1 + x2 + y1 + 1");
    }

    #[test]
    fn json_round_trip() {
        let f = x(1).mul(&y(2)).scale(&cq(-7, 4)).add(&Polynomial::one(2));
        let v = f.to_json_terms().unwrap();
        let back = Polynomial::from_json_terms(2, &v).unwrap();
        assert_eq!(back, f);
    }
}
