//! Dense polynomials over the prime field `Z/p`, coefficient lists in
//! ascending order. Only what modulus selection needs: reduction, modular
//! powering of `x` and gcd.

use super::linalg::inv_mod;

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo `f` (f nonzero).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    trim(&mut a);
    let mut f = f.to_vec();
    trim(&mut f);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    let p64 = p as u64;
    while a.len() > df {
        let top = a.len() - 1;
        let c = a[top] as u64 * lead_inv % p64;
        if c != 0 {
            let shift = top - df;
            for (j, &fj) in f.iter().enumerate() {
                let sub = c * fj as u64 % p64;
                a[shift + j] = ((a[shift + j] as u64 + p64 - sub) % p64) as u32;
            }
        }
        trim(&mut a);
    }
    a
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    rem(&out, f, p)
}

/// `x^(p^k) mod f`.
pub(crate) fn x_pow_p_pow(k: usize, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[0, 1], f, p);
    for _ in 0..k {
        // raise to the p-th power by square-and-multiply
        let mut base = acc.clone();
        let mut e = p;
        let mut r = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        acc = r;
    }
    acc
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `d` over `Z/p`:
/// `x^(p^d) = x mod f` and `gcd(x^(p^(d/r)) - x, f) = 1` for every prime `r | d`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = rem(&[0, 1], f, p);
    if x_pow_p_pow(d, f, p) != x {
        return false;
    }
    distinct_prime_factors(d).into_iter().all(|r| {
        let diff = sub(&x_pow_p_pow(d / r, f, p), &x, p);
        let g = gcd(f, &diff, p);
        g.len() == 1
    })
}
