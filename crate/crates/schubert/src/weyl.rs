//! Signed permutations and the classical Weyl groups: composition, length,
//! reduced words, longest elements, maximal Grassmannian representatives,
//! and the embeddings into ordinary symmetric groups.

use itertools::Itertools;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("entries {0:?} are not a signed permutation of 1..={1}")]
    NotAPermutation(Vec<i32>, usize),
    #[error("rank {0} is not valid for family {1}")]
    BadRank(usize, Family),
    #[error("element {element} is not in {group}: {reason}")]
    NotInGroup {
        element: String,
        group: String,
        reason: String,
    },
    #[error("partition {0:?} is out of range for this operation (parts must be at most {1})")]
    PartitionOutOfRange(Vec<u32>, u32),
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: String },
    #[error("{0}")]
    Unsupported(String),
}

/// Root-system family. A is the symmetric group; B and C share the
/// hyperoctahedral group but differ in the special divided difference; D is
/// the even-signed subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, WeylError> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(WeylError::Parse {
                input: other.to_string(),
                expected: "a family letter A, B, C or D".to_string(),
            }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        write!(f, "{s}")
    }
}

/// Simple generator of a Weyl group. `Zero` is s_0 (families B/C), `Box` is
/// the type D generator, `S(i)` the adjacent transposition of positions
/// i, i+1 (1-based, i ranging over 1..n-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Zero,
    Box,
    S(usize),
}

impl Generator {
    /// Ordering index used by the greedy reduced word: the special generator
    /// sorts first.
    pub fn order_key(&self) -> usize {
        match self {
            Generator::Zero | Generator::Box => 0,
            Generator::S(i) => *i,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Zero => write!(f, "0"),
            Generator::Box => write!(f, "box"),
            Generator::S(i) => write!(f, "{i}"),
        }
    }
}

/// A Weyl group fixed by family and rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    pub family: Family,
    pub n: usize,
}

impl GroupContext {
    pub fn new(family: Family, n: usize) -> Result<Self, WeylError> {
        let min = if family == Family::D { 2 } else { 1 };
        if n < min {
            return Err(WeylError::BadRank(n, family));
        }
        Ok(GroupContext { family, n })
    }

    /// Generators in canonical order: the special generator (if any) first,
    /// then s_1, ..., s_{n-1}.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::with_capacity(self.n);
        match self.family {
            Family::A => {}
            Family::B | Family::C => gens.push(Generator::Zero),
            Family::D => gens.push(Generator::Box),
        }
        for i in 1..self.n {
            gens.push(Generator::S(i));
        }
        gens
    }

    pub fn check_member(&self, w: &SignedPermutation) -> Result<(), WeylError> {
        let fail = |reason: &str| {
            Err(WeylError::NotInGroup {
                element: w.to_string(),
                group: format!("{}({})", self.family, self.n),
                reason: reason.to_string(),
            })
        };
        if w.n() != self.n {
            return fail("rank mismatch");
        }
        match self.family {
            Family::A => {
                if !w.is_plain() {
                    return fail("family A elements carry no bars");
                }
            }
            Family::B | Family::C => {}
            Family::D => {
                if w.bar_count() % 2 != 0 {
                    return fail("family D requires an even number of barred entries");
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        self.check_member(w).is_ok()
    }

    /// Every element of the group, sorted by length and then by one-line
    /// entries; deterministic.
    pub fn elements(&self) -> Vec<SignedPermutation> {
        let mut all: Vec<SignedPermutation> = SignedPermutation::all_signed(self.n)
            .into_iter()
            .filter(|w| self.contains(w))
            .collect();
        all.sort_by(|a, b| {
            length(self, a)
                .cmp(&length(self, b))
                .then_with(|| a.entries().cmp(b.entries()))
        });
        all
    }

    pub fn longest_element(&self) -> SignedPermutation {
        longest_element(self)
    }

    pub fn identity(&self) -> SignedPermutation {
        SignedPermutation::identity(self.n)
    }
}

/// An element of a signed permutation group in one-line notation; a negative
/// entry is a barred value. Plain permutations have all entries positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    entries: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(entries: Vec<i32>) -> Result<Self, WeylError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let a = e.unsigned_abs() as usize;
            if e == 0 || a > n || seen[a] {
                return Err(WeylError::NotAPermutation(entries.clone(), n));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            entries: (1..=n as i32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// w(i) with i 1-based; the sign carries the bar.
    pub fn entry(&self, i: usize) -> i32 {
        self.entries[i - 1]
    }

    pub fn is_plain(&self) -> bool {
        self.entries.iter().all(|&e| e > 0)
    }

    pub fn bar_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e < 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e == i as i32 + 1)
    }

    /// (u.compose(v))(i) = sign(v(i)) * u(|v(i)|). Panics on rank mismatch,
    /// which is an internal bug in callers.
    pub fn compose(&self, v: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n(), v.n(), "rank mismatch in compose");
        let entries = v
            .entries
            .iter()
            .map(|&vi| {
                let u = self.entries[(vi.unsigned_abs() as usize) - 1];
                if vi < 0 {
                    -u
                } else {
                    u
                }
            })
            .collect();
        SignedPermutation { entries }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n();
        let mut entries = vec![0; n];
        for (i, &e) in self.entries.iter().enumerate() {
            let a = e.unsigned_abs() as usize;
            entries[a - 1] = if e < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
        }
        SignedPermutation { entries }
    }

    /// Right multiplication by a simple generator, acting on positions.
    pub fn right_mul(&self, g: Generator) -> SignedPermutation {
        let mut entries = self.entries.clone();
        match g {
            Generator::Zero => entries[0] = -entries[0],
            Generator::Box => {
                assert!(entries.len() >= 2);
                entries.swap(0, 1);
                entries[0] = -entries[0];
                entries[1] = -entries[1];
            }
            Generator::S(i) => {
                assert!(i >= 1 && i < entries.len());
                entries.swap(i - 1, i);
            }
        }
        SignedPermutation { entries }
    }

    /// The generator as a group element at rank n.
    pub fn from_generator(g: Generator, n: usize) -> SignedPermutation {
        SignedPermutation::identity(n).right_mul(g)
    }

    /// w* = longest(A) . w . longest(A), conjugation by the order-reversing
    /// permutation; an involution preserving length and plainness.
    pub fn star(&self) -> SignedPermutation {
        let n = self.n() as i32;
        let entries = (1..=n)
            .map(|i| {
                let e = self.entries[(n - i) as usize];
                let v = n + 1 - e.abs();
                if e < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        SignedPermutation { entries }
    }

    /// Natural inclusion into rank m >= n, fixing the new values.
    pub fn inject(&self, m: usize) -> SignedPermutation {
        assert!(m >= self.n());
        let mut entries = self.entries.clone();
        entries.extend(self.n() as i32 + 1..=m as i32);
        SignedPermutation { entries }
    }

    /// 1 x w: prepend a fixed point and shift all values up by one.
    pub fn one_times(&self) -> SignedPermutation {
        let mut entries = vec![1];
        entries.extend(self.entries.iter().map(|&e| if e < 0 { e - 1 } else { e + 1 }));
        SignedPermutation { entries }
    }

    /// All 2^n n! signed permutations of rank n.
    pub fn all_signed(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for perm in (1..=n as i32).permutations(n) {
            for mask in 0..(1u32 << n) {
                let entries = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask & (1 << i) != 0 { -v } else { v })
                    .collect();
                out.push(SignedPermutation { entries });
            }
        }
        out
    }

    /// Parse one-line notation like "-2,1,3".
    pub fn parse(s: &str) -> Result<SignedPermutation, WeylError> {
        let entries: Result<Vec<i32>, _> = s
            .split(',')
            .map(|t| t.trim().parse::<i32>())
            .collect();
        match entries {
            Ok(v) if !v.is_empty() => SignedPermutation::new(v),
            _ => Err(WeylError::Parse {
                input: s.to_string(),
                expected: "comma-separated signed one-line notation".to_string(),
            }),
        }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.entries.iter().map(|e| e.to_string()).join(",");
        write!(f, "{body}")
    }
}

/// Coxeter length, by the closed inversion-count formula for each family.
/// The breadth-first-search tests below are the ground truth this formula is
/// validated against.
pub fn length(ctx: &GroupContext, w: &SignedPermutation) -> usize {
    ctx.check_member(w).expect("length: element outside group");
    let e = &w.entries;
    let n = e.len();
    let mut inv = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if e[i] > e[j] {
                inv += 1;
            }
        }
    }
    let neg: usize = e
        .iter()
        .filter(|&&x| x < 0)
        .map(|&x| x.unsigned_abs() as usize)
        .sum();
    let negcount = w.bar_count();
    match ctx.family {
        Family::A => inv,
        Family::B | Family::C => inv + neg,
        Family::D => inv + neg - negcount,
    }
}

/// Greedy canonical reduced word: repeatedly strip the smallest-index
/// descent on the right. Applying the result left to right from the
/// identity rebuilds w.
pub fn reduced_word(ctx: &GroupContext, w: &SignedPermutation) -> Vec<Generator> {
    ctx.check_member(w).expect("reduced_word: element outside group");
    let gens = ctx.generators();
    let mut cur = w.clone();
    let mut len = length(ctx, &cur);
    let mut collected = Vec::with_capacity(len);
    while len > 0 {
        let mut stepped = false;
        for &g in &gens {
            let next = cur.right_mul(g);
            let nl = length(ctx, &next);
            if nl < len {
                collected.push(g);
                cur = next;
                len = nl;
                stepped = true;
                break;
            }
        }
        assert!(stepped, "no descent found on a non-identity element");
    }
    collected.reverse();
    collected
}

/// Up to `limit` distinct reduced words for w, depth-first over right
/// descents. The first word returned is the greedy canonical one.
pub fn reduced_words(ctx: &GroupContext, w: &SignedPermutation, limit: usize) -> Vec<Vec<Generator>> {
    fn go(
        ctx: &GroupContext,
        gens: &[Generator],
        cur: &SignedPermutation,
        len: usize,
        limit: usize,
        out: &mut Vec<Vec<Generator>>,
        tail: &mut Vec<Generator>,
    ) {
        if out.len() >= limit {
            return;
        }
        if len == 0 {
            let mut word = tail.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for &g in gens {
            let next = cur.right_mul(g);
            let nl = length(ctx, &next);
            if nl < len {
                tail.push(g);
                go(ctx, gens, &next, nl, limit, out, tail);
                tail.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
    let gens = ctx.generators();
    let mut out = Vec::new();
    let mut tail = Vec::new();
    go(ctx, &gens, w, length(ctx, w), limit, &mut out, &mut tail);
    out
}

/// The longest element of the group.
pub fn longest_element(ctx: &GroupContext) -> SignedPermutation {
    let n = ctx.n;
    let entries: Vec<i32> = match ctx.family {
        Family::A => (1..=n as i32).rev().collect(),
        Family::B | Family::C => (1..=n as i32).map(|i| -i).collect(),
        Family::D => (1..=n as i32)
            .map(|i| if n % 2 == 1 && i == 1 { 1 } else { -i })
            .collect(),
    };
    SignedPermutation { entries }
}

/// The maximal Grassmannian element w_lambda indexing a Schubert class on
/// the maximal isotropic Grassmannian.
pub fn max_grassmannian(
    ctx: &GroupContext,
    lambda: &crate::partitions::StrictPartition,
) -> Result<SignedPermutation, WeylError> {
    let n = ctx.n;
    match ctx.family {
        Family::A => Err(WeylError::Unsupported(
            "family A indexes Grassmannian classes by plain permutations; use grassmannian_perm"
                .to_string(),
        )),
        Family::B | Family::C => {
            let bound = n as u32;
            if lambda.parts().first().copied().unwrap_or(0) > bound {
                return Err(WeylError::PartitionOutOfRange(
                    lambda.parts().to_vec(),
                    bound,
                ));
            }
            let dual = lambda.dual(n);
            let mut entries: Vec<i32> = lambda.parts().iter().map(|&p| -(p as i32)).collect();
            entries.extend(dual.parts().iter().rev().map(|&p| p as i32));
            Ok(SignedPermutation { entries })
        }
        Family::D => {
            let bound = (n - 1) as u32;
            if lambda.parts().first().copied().unwrap_or(0) > bound {
                return Err(WeylError::PartitionOutOfRange(
                    lambda.parts().to_vec(),
                    bound,
                ));
            }
            let ell = lambda.len();
            let mut used = vec![false; n + 1];
            let mut entries: Vec<i32> = lambda
                .parts()
                .iter()
                .map(|&p| {
                    used[p as usize + 1] = true;
                    -(p as i32 + 1)
                })
                .collect();
            used[1] = true;
            entries.push(if ell % 2 == 1 { -1 } else { 1 });
            let mut rest: Vec<i32> = (2..=n as i32).filter(|&v| !used[v as usize]).collect();
            rest.sort_unstable();
            entries.extend(rest);
            Ok(SignedPermutation { entries })
        }
    }
}

/// Embedding into a plain symmetric group: rank 2n for C and D, 2n+1 for B.
/// The image commutes with the flip i -> 2n+1-i (resp. 2n+2-i).
pub fn embed(family: Family, w: &SignedPermutation) -> SignedPermutation {
    let n = w.n();
    match family {
        Family::A => w.clone(),
        Family::C => phi_embed(w),
        Family::B => {
            let m = 2 * n + 1;
            let mut entries = vec![0i32; m];
            for i in 1..=n {
                let e = w.entry(n + 1 - i);
                entries[i - 1] = if e > 0 {
                    n as i32 + 1 - e
                } else {
                    n as i32 + 1 + (-e)
                };
            }
            entries[n] = n as i32 + 1;
            for i in n + 2..=m {
                entries[i - 1] = 2 * n as i32 + 2 - entries[m - i];
            }
            SignedPermutation { entries }
        }
        Family::D => {
            let phi = phi_embed(w);
            let has_bar_one = w.entries.contains(&-1);
            if has_bar_one {
                phi
            } else {
                // Left multiplication by s_n in S_2n swaps the values n, n+1.
                let entries = phi
                    .entries
                    .iter()
                    .map(|&v| {
                        if v == n as i32 {
                            n as i32 + 1
                        } else if v == n as i32 + 1 {
                            n as i32
                        } else {
                            v
                        }
                    })
                    .collect();
                SignedPermutation { entries }
            }
        }
    }
}

fn phi_embed(w: &SignedPermutation) -> SignedPermutation {
    let n = w.n();
    let m = 2 * n;
    let mut entries = vec![0i32; m];
    for i in 1..=n {
        let e = w.entry(n + 1 - i);
        entries[i - 1] = if e > 0 { n as i32 + 1 - e } else { n as i32 + (-e) };
    }
    for i in n + 1..=m {
        entries[i - 1] = 2 * n as i32 + 1 - entries[m - i];
    }
    SignedPermutation { entries }
}

/// Right weak Bruhat order: u <= v iff some length-additive chain of right
/// multiplications leads from u to v.
pub fn weak_leq(ctx: &GroupContext, u: &SignedPermutation, v: &SignedPermutation) -> bool {
    let x = u.inverse().compose(v);
    length(ctx, u) + length(ctx, &x) == length(ctx, v)
}

/// Number of new lows of a plain permutation, counted from position 2.
pub fn h_stat(perm: &SignedPermutation) -> usize {
    let e = &perm.entries;
    let mut count = 0;
    let mut min = e[0];
    for &x in &e[1..] {
        if x < min {
            count += 1;
            min = x;
        }
    }
    count
}

/// L(perm) inside the even-signed group: the sign-flipped copies of perm
/// that keep its type D length. Its size is 2^h_stat(perm).
pub fn l_set(perm: &SignedPermutation, n: usize) -> Vec<SignedPermutation> {
    assert!(perm.is_plain() && perm.n() == n);
    let ctx = GroupContext::new(Family::D, n).expect("l_set needs rank >= 2");
    let target = length(&ctx, perm);
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        if (mask.count_ones() % 2) != 0 {
            continue;
        }
        let entries: Vec<i32> = perm
            .entries
            .iter()
            .enumerate()
            .map(|(i, &v)| if mask & (1 << i) != 0 { -v } else { v })
            .collect();
        let w = SignedPermutation { entries };
        if length(&ctx, &w) == target {
            out.push(w);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Ground truth for lengths: breadth-first search over the Cayley graph
    /// on the context's generators.
    fn bfs_lengths(ctx: &GroupContext) -> HashMap<SignedPermutation, usize> {
        let mut dist = HashMap::new();
        let id = SignedPermutation::identity(ctx.n);
        dist.insert(id.clone(), 0usize);
        let mut frontier = vec![id];
        let gens = ctx.generators();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                let d = dist[&w];
                for &g in &gens {
                    let v = w.right_mul(g);
                    if !dist.contains_key(&v) {
                        dist.insert(v.clone(), d + 1);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    fn sp(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(sp(&[2, 1]).compose(&sp(&[2, 1])), sp(&[1, 2]));
        assert_eq!(sp(&[-1, 2]).compose(&sp(&[2, 1])), sp(&[2, -1]));
        let w = sp(&[3, -1, 2]);
        assert_eq!(w.compose(&SignedPermutation::identity(3)), w);
        assert_eq!(w.compose(&w.inverse()), SignedPermutation::identity(3));
        assert_eq!(w.inverse().compose(&w), SignedPermutation::identity(3));
    }

    #[test]
    fn compose_is_associative() {
        for u in SignedPermutation::all_signed(2) {
            for v in SignedPermutation::all_signed(2) {
                for w in SignedPermutation::all_signed(2) {
                    assert_eq!(u.compose(&v).compose(&w), u.compose(&v.compose(&w)));
                }
            }
        }
    }

    #[test]
    fn length_formula_matches_bfs_up_to_rank_3() {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            let lo = if family == Family::D { 2 } else { 1 };
            for n in lo..=3 {
                let ctx = GroupContext::new(family, n).unwrap();
                let dist = bfs_lengths(&ctx);
                let expected_order: usize = match family {
                    Family::A => (1..=n).product(),
                    Family::B | Family::C => (1..=n).product::<usize>() << n,
                    Family::D => ((1..=n).product::<usize>() << n) / 2,
                };
                assert_eq!(dist.len(), expected_order);
                for (w, &d) in &dist {
                    assert_eq!(length(&ctx, w), d, "family {family} n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn length_spec_values() {
        let c2 = GroupContext::new(Family::C, 2).unwrap();
        assert_eq!(length(&c2, &sp(&[1, 2])), 0);
        assert_eq!(length(&c2, &sp(&[-1, -2])), 4);
        let a3 = GroupContext::new(Family::A, 3).unwrap();
        assert_eq!(length(&a3, &sp(&[3, 2, 1])), 3);
    }

    #[test]
    fn reduced_word_recomposes_and_is_greedy() {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            let lo = if family == Family::D { 2 } else { 1 };
            for n in lo..=3 {
                let ctx = GroupContext::new(family, n).unwrap();
                for w in ctx.elements() {
                    let word = reduced_word(&ctx, &w);
                    assert_eq!(word.len(), length(&ctx, &w));
                    let mut rebuilt = SignedPermutation::identity(n);
                    for &g in &word {
                        rebuilt = rebuilt.right_mul(g);
                    }
                    assert_eq!(rebuilt, w);
                }
            }
        }
    }

    #[test]
    fn reduced_word_spec_examples() {
        let c2 = GroupContext::new(Family::C, 2).unwrap();
        assert_eq!(reduced_word(&c2, &sp(&[-1, 2])), vec![Generator::Zero]);
        assert_eq!(reduced_word(&c2, &sp(&[-1, -2])).len(), 4);
        let d2 = GroupContext::new(Family::D, 2).unwrap();
        assert_eq!(reduced_word(&d2, &sp(&[-2, -1])), vec![Generator::Box]);
    }

    #[test]
    fn two_distinct_words_exist_for_longest_elements() {
        let c3 = GroupContext::new(Family::C, 3).unwrap();
        let words = reduced_words(&c3, &longest_element(&c3), 2);
        assert_eq!(words.len(), 2);
        assert_ne!(words[0], words[1]);
        assert_eq!(words[0], reduced_word(&c3, &longest_element(&c3)));
    }

    #[test]
    fn longest_elements() {
        assert_eq!(
            longest_element(&GroupContext::new(Family::A, 3).unwrap()),
            sp(&[3, 2, 1])
        );
        assert_eq!(
            longest_element(&GroupContext::new(Family::C, 2).unwrap()),
            sp(&[-1, -2])
        );
        assert_eq!(
            longest_element(&GroupContext::new(Family::D, 3).unwrap()),
            sp(&[1, -2, -3])
        );
        assert_eq!(
            longest_element(&GroupContext::new(Family::D, 2).unwrap()),
            sp(&[-1, -2])
        );
        // The longest element is the unique length maximum.
        for family in [Family::A, Family::B, Family::C, Family::D] {
            let lo = if family == Family::D { 2 } else { 1 };
            for n in lo..=3 {
                let ctx = GroupContext::new(family, n).unwrap();
                let w0 = longest_element(&ctx);
                let max = ctx
                    .elements()
                    .into_iter()
                    .max_by_key(|w| length(&ctx, w))
                    .unwrap();
                assert_eq!(w0, max);
            }
        }
    }

    #[test]
    fn star_examples_and_involution() {
        assert_eq!(sp(&[2, 1, 3]).star(), sp(&[1, 3, 2]));
        assert_eq!(sp(&[3, 2, 1]).star(), sp(&[3, 2, 1]));
        assert_eq!(sp(&[3, 1, 2]).star(), sp(&[2, 3, 1]));
        let c3 = GroupContext::new(Family::C, 3).unwrap();
        for w in c3.elements() {
            assert_eq!(w.star().star(), w);
            assert_eq!(w.star().is_plain(), w.is_plain());
            // Conjugation by the plain longest element preserves length on
            // the plain subgroup; barred elements change length in general.
            if w.is_plain() {
                assert_eq!(length(&c3, &w.star()), length(&c3, &w));
            }
        }
        assert_eq!(sp(&[-1, 2, 3]).star(), sp(&[1, 2, -3]));
    }

    #[test]
    fn max_grassmannian_examples() {
        use crate::partitions::StrictPartition;
        let c2 = GroupContext::new(Family::C, 2).unwrap();
        let l = |parts: &[u32]| StrictPartition::new(parts.to_vec()).unwrap();
        assert_eq!(max_grassmannian(&c2, &l(&[2])).unwrap(), sp(&[-2, 1]));
        assert_eq!(max_grassmannian(&c2, &l(&[2, 1])).unwrap(), sp(&[-2, -1]));
        assert_eq!(max_grassmannian(&c2, &l(&[1])).unwrap(), sp(&[-1, 2]));
        let d2 = GroupContext::new(Family::D, 2).unwrap();
        assert_eq!(max_grassmannian(&d2, &l(&[1])).unwrap(), sp(&[-2, -1]));
        assert_eq!(
            max_grassmannian(&d2, &StrictPartition::empty()).unwrap(),
            sp(&[1, 2])
        );
    }

    #[test]
    fn max_grassmannian_length_is_weight() {
        use crate::partitions::enumerate_strict;
        for n in 1..=4 {
            let ctx = GroupContext::new(Family::C, n).unwrap();
            for lam in enumerate_strict(n) {
                let w = max_grassmannian(&ctx, &lam).unwrap();
                assert_eq!(length(&ctx, &w), lam.weight() as usize);
            }
        }
        for n in 2..=4 {
            let ctx = GroupContext::new(Family::D, n).unwrap();
            for lam in enumerate_strict(n - 1) {
                let w = max_grassmannian(&ctx, &lam).unwrap();
                assert_eq!(length(&ctx, &w), lam.weight() as usize, "D n={n} {lam:?}");
            }
        }
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed(Family::C, &sp(&[-1, -2])), sp(&[4, 3, 2, 1]));
        assert_eq!(embed(Family::B, &sp(&[-1])), sp(&[3, 2, 1]));
        assert_eq!(embed(Family::D, &sp(&[-1, -2])), sp(&[4, 3, 2, 1]));
    }

    #[test]
    fn embed_c_is_a_homomorphism_with_centralizer_image() {
        for n in 2..=3 {
            let ctx = GroupContext::new(Family::C, n).unwrap();
            let els = ctx.elements();
            for u in &els {
                let eu = embed(Family::C, u);
                for i in 1..=2 * n {
                    let a = eu.entry(i) as usize;
                    let b = eu.entry(2 * n + 1 - i) as usize;
                    assert_eq!(a + b, 2 * n + 1);
                }
                for v in &els {
                    assert_eq!(
                        embed(Family::C, &u.compose(v)),
                        embed(Family::C, u).compose(&embed(Family::C, v))
                    );
                }
            }
        }
    }

    #[test]
    fn embed_b_is_a_homomorphism_with_middle_fixed_point() {
        let b2 = GroupContext::new(Family::B, 2).unwrap();
        for u in b2.elements() {
            let eu = embed(Family::B, &u);
            assert_eq!(eu.entry(3), 3);
            for i in 1..=5 {
                assert_eq!(eu.entry(i) + eu.entry(6 - i), 6);
            }
            for v in b2.elements() {
                assert_eq!(
                    embed(Family::B, &u.compose(&v)),
                    embed(Family::B, &u).compose(&embed(Family::B, &v))
                );
            }
        }
    }

    #[test]
    fn embed_d_is_injective_and_orders_middle_values() {
        // The modified embedding puts the value n+1 before n; it keeps the
        // centralizer condition but is not itself a homomorphism.
        for n in 2..=3 {
            let ctx = GroupContext::new(Family::D, n).unwrap();
            let mut seen = std::collections::HashSet::new();
            for w in ctx.elements() {
                let img = embed(Family::D, &w);
                assert!(seen.insert(img.clone()));
                for i in 1..=2 * n {
                    let a = img.entry(i) as usize;
                    let b = img.entry(2 * n + 1 - i) as usize;
                    assert_eq!(a + b, 2 * n + 1);
                }
                let pos_hi = img.entries().iter().position(|&v| v == n as i32 + 1);
                let pos_lo = img.entries().iter().position(|&v| v == n as i32);
                assert!(pos_hi < pos_lo, "value {} must precede {} in {img}", n + 1, n);
            }
        }
    }

    #[test]
    fn embedding_lengths_track_bars() {
        let c2 = GroupContext::new(Family::C, 2).unwrap();
        let a4 = GroupContext::new(Family::A, 4).unwrap();
        for w in c2.elements() {
            assert_eq!(
                length(&a4, &embed(Family::C, &w)),
                2 * length(&c2, &w) - w.bar_count()
            );
        }
        let b2 = GroupContext::new(Family::B, 2).unwrap();
        let a5 = GroupContext::new(Family::A, 5).unwrap();
        for w in b2.elements() {
            assert_eq!(
                length(&a5, &embed(Family::B, &w)),
                2 * length(&b2, &w) + w.bar_count()
            );
        }
    }

    #[test]
    fn weak_order_basics() {
        let c2 = GroupContext::new(Family::C, 2).unwrap();
        let id = SignedPermutation::identity(2);
        for w in c2.elements() {
            assert!(weak_leq(&c2, &id, &w));
            assert!(weak_leq(&c2, &w, &w));
            assert!(weak_leq(&c2, &w, &longest_element(&c2)));
        }
        assert!(!weak_leq(&c2, &sp(&[-1, 2]), &sp(&[2, 1])));
    }

    #[test]
    fn l_set_and_h_stat() {
        let e = l_set(&sp(&[2, 1]), 2);
        assert_eq!(e, vec![sp(&[-2, -1]), sp(&[2, 1])]);
        assert_eq!(h_stat(&sp(&[2, 1])), 1);
        for n in 2..=4 {
            let ctx = GroupContext::new(Family::A, n).unwrap();
            for p in ctx.elements() {
                assert_eq!(l_set(&p, n).len(), 1 << h_stat(&p), "perm {p}");
            }
        }
    }

    #[test]
    fn one_times_and_inject() {
        assert_eq!(sp(&[2, 1]).one_times(), sp(&[1, 3, 2]));
        assert_eq!(sp(&[-2, 1]).one_times(), sp(&[1, -3, 2]));
        assert_eq!(sp(&[-2, 1]).inject(4), sp(&[-2, 1, 3, 4]));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["-2,1,3", "1,2", "-1,-2"] {
            let w = SignedPermutation::parse(s).unwrap();
            assert_eq!(w.to_string(), s);
        }
        assert!(SignedPermutation::parse("2,2").is_err());
        assert!(SignedPermutation::parse("0,1").is_err());
        assert!(SignedPermutation::parse("").is_err());
    }

    #[test]
    fn membership_checks() {
        let d2 = GroupContext::new(Family::D, 2).unwrap();
        assert!(d2.contains(&sp(&[-2, -1])));
        assert!(!d2.contains(&sp(&[-2, 1])));
        let a2 = GroupContext::new(Family::A, 2).unwrap();
        assert!(!a2.contains(&sp(&[-1, 2])));
        assert!(GroupContext::new(Family::D, 1).is_err());
        assert_eq!(
            GroupContext::new(Family::D, 2).unwrap().elements().len(),
            4
        );
    }
}
