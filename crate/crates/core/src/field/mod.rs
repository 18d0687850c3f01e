//! Exact arithmetic in the tower `F_p ⊂ F_q ⊂ F_(q^2) ⊂ F_(q^n) ⊂ F_(q^2n)`.
//!
//! The whole tower is one quotient ring `F_p[X]/(f)` with `deg f = 2nh`.
//! Subfields are never built separately: an element lies in `F_s` exactly
//! when `e^s = e`, and every membership test goes through that identity.
//!
//! Frobenius powers are precomputed as `F_p`-linear maps on the coefficient
//! space, which also gives the additive solvers for `x^q + x = c` and
//! `y^(q^2) - y = c` by plain Gaussian elimination.

mod linalg;
mod poly;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use linalg::LinearSolver;

/// Element of the full field, as `2nh` residues mod `p` in ascending powers
/// of the class of `X`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem {
    coeffs: Vec<u32>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// Which additive equation [`FieldTower::solve_additive`] solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdditiveKind {
    /// `x^q + x = c`
    AsQ,
    /// `y^(q^2) - y = c`
    AsQ2,
}

/// Serializable description of a tower: enough to rebuild it bit for bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescription {
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub primitive: Vec<u32>,
}

#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    h: u32,
    n: u32,
    degree: usize,
    modulus: Vec<u32>,
    primitive: FieldElem,
    cardinality: BigUint,
    size: u64,
    // distinct primes dividing size - 1
    order_primes: Vec<u64>,
    // frob[k][i] = (X^i)^(p^k)
    frob: Vec<Vec<Vec<u32>>>,
    as_q: LinearSolver,
    as_q2: LinearSolver,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

/// `p` prime, `h >= 1`, `n >= 3` odd.
pub fn check_params(p: u32, h: u32, n: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenOrSmallN(n));
    }
    if h == 0 {
        return Err(Error::ZeroH);
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn push_prime_factors(mut n: u64, out: &mut Vec<u64>) {
    let mut d = 2u64;
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
}

/// Distinct primes of `p^k - 1`, splitting `p^(2j) - 1 = (p^j - 1)(p^j + 1)`
/// so trial division only ever sees numbers of about half the size.
fn primes_of_p_pow_minus_one(p: u64, k: u32, out: &mut Vec<u64>) {
    if k.is_multiple_of(2) {
        primes_of_p_pow_minus_one(p, k / 2, out);
        push_prime_factors(p.pow(k / 2) + 1, out);
    } else {
        push_prime_factors(p.pow(k) - 1, out);
    }
}

// Coefficient vector whose lexicographic rank (x^0 most significant) is `index`.
fn lex_vector(index: u64, len: usize, p: u32) -> Vec<u32> {
    let mut v = vec![0u32; len];
    let mut k = index;
    for slot in v.iter_mut().rev() {
        *slot = (k % p as u64) as u32;
        k /= p as u64;
    }
    v
}

impl FieldTower {
    /// Builds the tower for `q = p^h` and odd `n >= 3`.
    ///
    /// The modulus is the lexicographically smallest monic irreducible of
    /// degree `2nh` (coefficient of `X^0` compared first) and the primitive
    /// element is the smallest generator of the multiplicative group in the
    /// same order, so the construction is reproducible.
    pub fn build(p: u32, h: u32, n: u32) -> Result<Self> {
        check_params(p, h, n)?;
        let degree = (2 * n * h) as usize;
        let size = (p as u64)
            .checked_pow(degree as u32)
            .filter(|&s| s < (1u64 << 62))
            .ok_or(Error::TowerTooLarge { p, degree })?;

        let modulus = (0..size)
            .map(|k| {
                let mut f = lex_vector(k, degree, p);
                f.push(1);
                f
            })
            .find(|f| f[0] != 0 && poly::is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");

        let mut order_primes = Vec::new();
        primes_of_p_pow_minus_one(p as u64, degree as u32, &mut order_primes);
        order_primes.sort_unstable();
        order_primes.dedup();

        let mut tower = FieldTower {
            p,
            h,
            n,
            degree,
            modulus,
            primitive: FieldElem { coeffs: vec![0; degree] },
            cardinality: BigUint::from(p).pow(degree as u32),
            size,
            order_primes,
            frob: Vec::new(),
            as_q: LinearSolver::new(&[], p),
            as_q2: LinearSolver::new(&[], p),
        };
        tower.frob = tower.frobenius_tables();
        tower.primitive = (1..size)
            .map(|k| FieldElem { coeffs: lex_vector(k, degree, p) })
            .find(|e| tower.is_generator(e))
            .expect("the multiplicative group of a finite field is cyclic");

        let q_exp = h as usize;
        let basis: Vec<FieldElem> = (0..degree).map(|i| tower.monomial(i)).collect();
        let cols_q: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| tower.add(&tower.frobenius(b, q_exp), b).coeffs)
            .collect();
        let cols_q2: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| tower.sub(&tower.frobenius(b, 2 * q_exp), b).coeffs)
            .collect();
        tower.as_q = LinearSolver::new(&cols_q, p);
        tower.as_q2 = LinearSolver::new(&cols_q2, p);
        Ok(tower)
    }

    fn frobenius_tables(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.degree;
        let x = self.monomial(1);
        let xp = self.pow_u128_raw(&x, self.p as u128);
        // images of the basis under e -> e^p
        let mut first = Vec::with_capacity(d);
        let mut acc = self.one();
        for _ in 0..d {
            first.push(acc.coeffs.clone());
            acc = self.mul(&acc, &xp);
        }
        let identity: Vec<Vec<u32>> = (0..d).map(|i| self.monomial(i).coeffs).collect();
        let mut tables = vec![identity];
        for k in 1..d {
            let prev = &tables[k - 1];
            let next: Vec<Vec<u32>> = prev.iter().map(|col| apply_linear(&first, col, self.p)).collect();
            tables.push(next);
        }
        tables
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn h(&self) -> u32 {
        self.h
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// `q = p^h`.
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.h)
    }
    /// Dimension `2nh` of the full field over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn primitive(&self) -> &FieldElem {
        &self.primitive
    }
    /// `q^(2n)` as an arbitrary-precision integer.
    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }
    /// `q^(2n)`; towers are capped well below `2^64`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn description(&self) -> TowerDescription {
        TowerDescription {
            p: self.p,
            h: self.h,
            n: self.n,
            modulus: self.modulus.clone(),
            primitive: self.primitive.coeffs.clone(),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.degree] }
    }

    pub fn one(&self) -> FieldElem {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = (c % self.p as u64) as u32;
        e
    }

    fn monomial(&self, i: usize) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[i] = 1;
        e
    }

    /// Reduces an arbitrary coefficient list (ascending) into the field.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % self.p).collect();
        let mut r = poly::rem(&reduced, &self.modulus, self.p);
        r.resize(self.degree, 0);
        FieldElem { coeffs: r }
    }

    /// The element whose coefficients are the base-`p` digits of `index`,
    /// least significant digit on `X^0`. A bijection `0..size -> field`.
    pub fn element(&self, index: u64) -> FieldElem {
        let mut coeffs = vec![0u32; self.degree];
        let mut k = index;
        for c in coeffs.iter_mut() {
            *c = (k % self.p as u64) as u32;
            k /= self.p as u64;
        }
        FieldElem { coeffs }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size).map(|k| self.element(k))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + p - y) % p).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| (p - x) % p).collect(),
        }
    }

    /// `c * a` for `c` in the prime field.
    pub fn scale(&self, a: &FieldElem, c: u64) -> FieldElem {
        let p = self.p as u64;
        let c = c % p;
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| (x as u64 * c % p) as u32).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let d = self.degree;
        let p = self.p as u64;
        let mut buf = vec![0u64; 2 * d - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                buf[i + j] += ai as u64 * bj as u64;
            }
            // keep the accumulator bounded for large p
            if p > 1 << 15 {
                for v in buf.iter_mut() {
                    *v %= p;
                }
            }
        }
        for top in (d..2 * d - 1).rev() {
            let c = buf[top] % p;
            if c == 0 {
                continue;
            }
            let shift = top - d;
            for j in 0..d {
                buf[shift + j] += (p - c) * self.modulus[j] as u64 % p;
            }
            buf[top] = 0;
        }
        FieldElem {
            coeffs: buf[..d].iter().map(|&v| (v % p) as u32).collect(),
        }
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    fn pow_u128_raw(&self, a: &FieldElem, mut exp: u128) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &FieldElem, exp: u64) -> FieldElem {
        self.pow_u128_raw(a, exp as u128)
    }

    /// Square-and-multiply with an arbitrary-precision exponent.
    pub fn pow(&self, a: &FieldElem, exp: &BigUint) -> FieldElem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(a, self.size - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `e^(p^k)`, computed as one precomputed linear map.
    pub fn frobenius(&self, e: &FieldElem, k: usize) -> FieldElem {
        let table = &self.frob[k % self.degree];
        FieldElem {
            coeffs: apply_linear(table, &e.coeffs, self.p),
        }
    }

    /// `e^(q^j)`.
    pub fn q_power(&self, e: &FieldElem, j: usize) -> FieldElem {
        self.frobenius(e, j * self.h as usize)
    }

    // Subfield orders are exactly p^k with k | degree.
    fn subfield_exponent(&self, s: u64) -> Result<usize> {
        let mut k = 0usize;
        let mut v = 1u64;
        while v < s {
            v = v.saturating_mul(self.p as u64);
            k += 1;
        }
        if v != s || k == 0 || !self.degree.is_multiple_of(k) {
            return Err(Error::BadSubfieldOrder(s));
        }
        Ok(k)
    }

    /// `e^s = e`, for `s` the order of a subfield.
    pub fn in_subfield(&self, e: &FieldElem, s: u64) -> Result<bool> {
        let k = self.subfield_exponent(s)?;
        Ok(&self.frobenius(e, k) == e)
    }

    /// The `s` elements of `F_s`: zero and the powers of
    /// `primitive^((Q-1)/(s-1))`.
    pub fn enumerate_subfield(&self, s: u64) -> Result<Vec<FieldElem>> {
        self.subfield_exponent(s)?;
        let gen = self.pow_u64(&self.primitive, (self.size - 1) / (s - 1));
        let mut out = Vec::with_capacity(s as usize);
        out.push(self.zero());
        let mut acc = self.one();
        for _ in 0..s - 1 {
            out.push(acc.clone());
            acc = self.mul(&acc, &gen);
        }
        Ok(out)
    }

    /// `Tr(e) = e^q + e` from `F_(q^2)` to `F_q`.
    pub fn trace_subfield(&self, e: &FieldElem) -> Result<FieldElem> {
        let q2 = self.q() * self.q();
        if !self.in_subfield(e, q2)? {
            return Err(Error::NotInQuadraticSubfield);
        }
        Ok(self.add(&self.q_power(e, 1), e))
    }

    /// All solutions in the full field of `x^q + x = c` or `y^(q^2) - y = c`.
    pub fn solve_additive(&self, kind: AdditiveKind, c: &FieldElem) -> Vec<FieldElem> {
        self.additive_solver(kind)
            .solve_all(&c.coeffs)
            .into_iter()
            .map(|coeffs| FieldElem { coeffs })
            .collect()
    }

    /// Number of solutions, without materializing them.
    pub fn count_additive(&self, kind: AdditiveKind, c: &FieldElem) -> u64 {
        let solver = self.additive_solver(kind);
        match solver.particular(&c.coeffs) {
            Some(_) => (self.p as u64).pow(solver.kernel_basis().len() as u32),
            None => 0,
        }
    }

    fn additive_solver(&self, kind: AdditiveKind) -> &LinearSolver {
        match kind {
            AdditiveKind::AsQ => &self.as_q,
            AdditiveKind::AsQ2 => &self.as_q2,
        }
    }

    /// Whether `z^m = c` has a solution (`m | Q-1`).
    pub fn has_kummer_root(&self, m: u64, c: &FieldElem) -> Result<bool> {
        if m == 0 || !(self.size - 1).is_multiple_of(m) {
            return Err(Error::BadExponent(m));
        }
        Ok(c.is_zero() || self.pow_u64(c, (self.size - 1) / m) == self.one())
    }

    /// All solutions of `z^m = c` for `m | Q-1`.
    pub fn solve_kummer(&self, m: u64, c: &FieldElem) -> Result<Vec<FieldElem>> {
        if !self.has_kummer_root(m, c)? {
            return Ok(Vec::new());
        }
        if c.is_zero() {
            return Ok(vec![self.zero()]);
        }
        let mut root = c.clone();
        let mut rest = m;
        let mut d = 2u64;
        while rest > 1 {
            while rest.is_multiple_of(d) {
                root = self.prime_root(&root, d);
                rest /= d;
            }
            d += 1;
        }
        let unity = self.root_of_unity(m)?;
        let mut out = Vec::with_capacity(m as usize);
        let mut acc = root;
        for _ in 0..m {
            out.push(acc.clone());
            acc = self.mul(&acc, &unity);
        }
        Ok(out)
    }

    // An l-th root of c (l prime, root known to exist). The l-Sylow part is
    // handled by a digit-by-digit discrete log against primitive^t, the
    // prime-to-l part by inverting l modulo t.
    fn prime_root(&self, c: &FieldElem, l: u64) -> FieldElem {
        let order = self.size - 1;
        let mut s = 0u32;
        let mut t = order;
        while t.is_multiple_of(l) {
            t /= l;
            s += 1;
        }
        let ls = l.pow(s) as i128;
        // a*t + b*l^s = 1
        let (g, a, b) = ext_gcd(t as i128, ls);
        debug_assert_eq!(g, 1);
        let modn = order as i128;
        let ea = (a.rem_euclid(modn) * t as i128 % modn) as u128;
        let eb = (b.rem_euclid(modn) * ls % modn) as u128;
        let c_l = self.pow_u128_raw(c, ea);
        let c_t = self.pow_u128_raw(c, eb);

        let root_t = if t == 1 {
            self.one()
        } else {
            let inv_l = ext_gcd(l as i128, t as i128).1.rem_euclid(t as i128) as u128;
            self.pow_u128_raw(&c_t, inv_l)
        };

        let gamma = self.pow_u64(&self.primitive, t);
        let gamma_inv = self.inv(&gamma).expect("generator is nonzero");
        let top = self.pow_u64(&gamma, l.pow(s - 1));
        let mut log = 0u64;
        let mut residual = c_l;
        for k in 0..s {
            let probe = self.pow_u64(&residual, l.pow(s - 1 - k));
            let digit = (0..l)
                .find(|&dgt| self.pow_u64(&top, dgt) == probe)
                .expect("element lies in the l-Sylow subgroup");
            let step = digit * l.pow(k);
            log += step;
            residual = self.mul(&residual, &self.pow_u64(&gamma_inv, step));
        }
        debug_assert_eq!(log % l, 0, "caller guarantees an l-th root exists");
        let root_l = self.pow_u64(&gamma, log / l);
        self.mul(&root_t, &root_l)
    }

    /// `primitive^((Q-1)/k)`, an element of multiplicative order exactly `k`.
    pub fn root_of_unity(&self, k: u64) -> Result<FieldElem> {
        if k == 0 || !(self.size - 1).is_multiple_of(k) {
            return Err(Error::BadOrder(k));
        }
        Ok(self.pow_u64(&self.primitive, (self.size - 1) / k))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, e: &FieldElem) -> Result<u64> {
        if e.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.size - 1;
        for &r in &self.order_primes {
            while ord.is_multiple_of(r) && self.pow_u64(e, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn is_generator(&self, e: &FieldElem) -> bool {
        if e.is_zero() {
            return false;
        }
        let one = self.one();
        let order = self.size - 1;
        self.order_primes.iter().all(|&r| self.pow_u64(e, order / r) != one)
    }

    /// `Q_full - 1` as a big integer.
    pub fn group_order(&self) -> BigUint {
        &self.cardinality - BigUint::one()
    }
}

fn apply_linear(columns: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    let d = v.len();
    let p64 = p as u64;
    let mut out = vec![0u64; d];
    for (j, &vj) in v.iter().enumerate() {
        if vj == 0 {
            continue;
        }
        for (o, &c) in out.iter_mut().zip(&columns[j]) {
            *o = (*o + vj as u64 * c as u64) % p64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}
