//! The Q- and P-polynomial families, the Vandermonde-like product Delta,
//! and the reproducing kernels that seed every Schubert family.

use crate::partitions::{enumerate_strict, StrictPartition};
use crate::poly::{cq, AlphabetSlice, Polynomial};
use crate::weyl::Family;
use num::One;
use std::collections::HashMap;
use std::path::Path;
use std::sync::{Mutex, OnceLock};

/// The one-row polynomial: elementary symmetric of the slice.
pub fn qtilde_row(n: usize, i: i64, slice: AlphabetSlice) -> Polynomial {
    crate::poly::elementary(n, i, slice)
}

/// The two-row polynomial built by the quadratic recursion.
pub fn qtilde_two(n: usize, i: i64, j: i64, slice: AlphabetSlice) -> Polynomial {
    let mut acc = qtilde_row(n, i, slice).mul(&qtilde_row(n, j, slice));
    for k in 1..=j {
        let prod = qtilde_row(n, i + k, slice).mul(&qtilde_row(n, j - k, slice));
        let signed = if k % 2 == 1 { prod.neg() } else { prod };
        acc = acc.add(&signed.scale(&crate::poly::ci(2)));
    }
    acc
}

/// Q-polynomial of a weakly decreasing partition, by Pfaffian of the
/// two-row blocks; an odd number of parts is padded with one zero part.
pub fn qtilde(n: usize, parts: &[u32], slice: AlphabetSlice) -> Polynomial {
    assert!(
        parts.windows(2).all(|w| w[0] >= w[1]),
        "qtilde needs a weakly decreasing partition"
    );
    let mut lam: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
    match lam.len() {
        0 => return Polynomial::one(n),
        1 => return qtilde_row(n, lam[0], slice),
        l if l % 2 == 1 => lam.push(0),
        _ => {}
    }
    let k = lam.len();
    let mut m = vec![vec![Polynomial::zero(n); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let e = qtilde_two(n, lam[i], lam[j], slice);
            m[i][j] = e.clone();
            m[j][i] = e.neg();
        }
    }
    crate::poly::pfaffian(&m)
}

pub fn qtilde_strict(n: usize, lam: &StrictPartition, slice: AlphabetSlice) -> Polynomial {
    qtilde(n, lam.parts(), slice)
}

/// P-polynomial: the Q-polynomial scaled by 2^(-number of nonzero parts).
pub fn ptilde(n: usize, parts: &[u32], slice: AlphabetSlice) -> Polynomial {
    let l = parts.iter().filter(|&&p| p > 0).count() as u32;
    let scale = cq(1, 1i64 << l);
    qtilde(n, parts, slice).scale(&scale)
}

/// The product of (x_i - y_j) over all pairs with i + j <= n.
pub fn delta(n: usize) -> Polynomial {
    let mut acc = Polynomial::one(n);
    for i in 1..=n {
        for j in 1..=n {
            if i + j <= n {
                acc = acc.mul(&Polynomial::x(n, i).sub(&Polynomial::y(n, j)));
            }
        }
    }
    acc
}

/// The family kernel in the full alphabets X, Y at rank n: the sum of
/// Q- or P-polynomial products over strict partitions in the staircase of
/// size n (C), n (B), or n - 1 (D); the A family has none and gets 1.
pub fn reproducing_kernel(family: Family, n: usize) -> Polynomial {
    let (k, scaled) = match family {
        Family::A => return Polynomial::one(n),
        Family::C => (n, false),
        Family::B => (n, true),
        Family::D => (n - 1, true),
    };
    let mut acc = Polynomial::zero(n);
    for lam in enumerate_strict(k) {
        let dual = lam.dual(k);
        let term = if scaled {
            ptilde(n, lam.parts(), AlphabetSlice::x(n))
                .mul(&ptilde(n, dual.parts(), AlphabetSlice::y(n)))
        } else {
            qtilde(n, lam.parts(), AlphabetSlice::x(n))
                .mul(&qtilde(n, dual.parts(), AlphabetSlice::y(n)))
        };
        acc = acc.add(&term);
    }
    acc
}

/// Delta times the family kernel; the operand every Schubert polynomial
/// definition starts from.
pub fn full_kernel(family: Family, n: usize) -> Polynomial {
    let cache = kernel_cache().lock().unwrap();
    if let Some(p) = cache.get(&(family, n)) {
        return p.clone();
    }
    drop(cache);
    let computed = if let Some(dir) = std::env::var_os("SCHUBERT_CACHE_DIR") {
        load_kernel_from(Path::new(&dir), family, n).unwrap_or_else(|| {
            let p = compute_full_kernel(family, n);
            let _ = save_kernel_to(Path::new(&dir), family, n, &p);
            p
        })
    } else {
        compute_full_kernel(family, n)
    };
    kernel_cache()
        .lock()
        .unwrap()
        .entry((family, n))
        .or_insert_with(|| computed.clone());
    computed
}

fn compute_full_kernel(family: Family, n: usize) -> Polynomial {
    delta(n).mul(&reproducing_kernel(family, n))
}

fn kernel_cache() -> &'static Mutex<HashMap<(Family, usize), Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize), Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn kernel_file(dir: &Path, family: Family, n: usize) -> std::path::PathBuf {
    dir.join(format!("kernel-{family}-{n}.json"))
}

/// Best-effort disk persistence as plain JSON; failures only disable reuse.
pub fn save_kernel_to(
    dir: &Path,
    family: Family,
    n: usize,
    p: &Polynomial,
) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let v = serde_json::json!({
        "family": family.to_string(),
        "n": n,
        "terms": p.to_json_terms()?,
    });
    std::fs::write(kernel_file(dir, family, n), v.to_string()).map_err(|e| e.to_string())
}

pub fn load_kernel_from(dir: &Path, family: Family, n: usize) -> Option<Polynomial> {
    let text = std::fs::read_to_string(kernel_file(dir, family, n)).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    if v.get("family")?.as_str()? != family.to_string() || v.get("n")?.as_u64()? != n as u64 {
        return None;
    }
    Polynomial::from_json_terms(n, v.get("terms")?).ok()
}

/// The closed form of the kernel vanishing locus: the product of
/// (x_i + x_j) over pairs with i >= j.
pub fn kernel_diagonal_product(n: usize) -> Polynomial {
    let mut acc = Polynomial::one(n);
    for i in 1..=n {
        for j in 1..=i {
            acc = acc.mul(&Polynomial::x(n, i).add(&Polynomial::x(n, j)));
        }
    }
    acc
}

/// Denominators of every coefficient must be 1 (A, C) or a power of two
/// (B, D); anything else signals a bug upstream.
pub fn denominators_in_profile(family: Family, p: &Polynomial) -> bool {
    let lcm = p.denominator_lcm();
    match family {
        Family::A | Family::C => lcm.is_one(),
        Family::B | Family::D => {
            let mut v = lcm;
            let two = num::BigInt::from(2);
            while (&v % &two) == num::BigInt::from(0) {
                v /= &two;
            }
            v.is_one()
        }
    }
}
