//! Univariate factorization over the rationals and over tower levels.
//!
//! Over the rationals we factor modulo a small prime, Hensel-lift, and
//! recombine lifted factors by exact trial division (Zassenhaus). Over an extension level
//! we use the norm method: shift until the norm is squarefree, factor the norm
//! one level down, and recover factors by gcd.

use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::scalar::{Level, Scalar, Q};
use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

/// Monic irreducible factors of a squarefree polynomial whose coefficients lie
/// in `level` (or in the rationals when `level` is `None`).
pub fn factor_over(level: Option<&Arc<Level>>, g: &[Scalar]) -> Result<Vec<UPoly>> {
    let g = upoly::monic(&upoly::trimmed(g.to_vec()));
    if g.len() <= 2 {
        return Ok(if g.len() == 2 { vec![g] } else { Vec::new() });
    }
    match level {
        None => factor_rational(&g),
        Some(l) => factor_norm(l, &g),
    }
}

fn to_integer_primitive(g: &[Scalar]) -> Result<Vec<BigInt>> {
    let mut qs = Vec::with_capacity(g.len());
    for c in g {
        qs.push(
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::Internal("irrational coefficient in rational factorization".into()))?,
        );
    }
    let mut den = BigInt::one();
    for q in &qs {
        den = den.lcm(q.denom());
    }
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * Q::from_integer(den.clone())).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return Ok(ints);
    }
    Ok(ints.iter().map(|c| c / &content).collect())
}

fn int_poly_to_scalar(p: &[BigInt]) -> UPoly {
    upoly::trimmed(p.iter().map(|c| Scalar::from_q(Q::from_integer(c.clone()))).collect())
}

fn factor_rational(g: &[Scalar]) -> Result<Vec<UPoly>> {
    let p = to_integer_primitive(g)?;
    let mut factors: Vec<UPoly> = zassenhaus(&p)?.iter().map(|f| upoly::monic(&int_poly_to_scalar(f))).collect();
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| format!("{:?}", a).cmp(&format!("{:?}", b))));
    Ok(factors)
}

const PRIMES: [u64; 12] = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093, 10099, 10103];

/// Irreducible factors over the integers of a primitive squarefree polynomial:
/// factor modulo a prime, lift the factors, and recombine by trial division.
fn zassenhaus(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut used = 0;
    for &q in &PRIMES {
        if used == 5 {
            break;
        }
        let Some(fq) = reduce_squarefree(f, q) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        let facs = fp::factor(&fq, q, &mut rng);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for g in &facs {
            let d = g.len() - 1;
            for k in (d..=n).rev() {
                if sums[k - d] {
                    sums[k] = true;
                }
            }
        }
        for k in 0..=n {
            allowed[k] &= sums[k];
        }
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((q, facs));
        }
        used += 1;
    }
    let (q, facs) = best.ok_or_else(|| Error::Internal("no prime keeps the polynomial squarefree".into()))?;
    if facs.len() == 1 || (1..n).all(|k| !allowed[k]) {
        return Ok(vec![f.to_vec()]);
    }
    // p^k > 2 · lc · 2^n · ||f||₂ bounds every factor coefficient
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * f[n].abs() * (BigInt::one() << n) * 2u32;
    let qb = BigInt::from(q);
    let mut modulus = qb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &qb;
        k += 1;
    }
    let lifted = hensel_lift(f, &facs, q, k)?;

    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut size = 1;
    let mut budget = 2_000_000u64;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for combo in (0..pool.len()).combinations(size) {
            let deg: usize = combo.iter().map(|&i| pool[i].len() - 1).sum();
            if !allowed[deg] {
                continue;
            }
            budget = budget.saturating_sub(1);
            if budget == 0 {
                return Err(Error::Internal("rational factorization exceeded its search budget".into()));
            }
            let lc = rest[rest.len() - 1].clone();
            // constant-term test before building the full product
            let c0 = combo.iter().fold(lc.clone(), |acc, &i| (acc * &pool[i][0]).mod_floor(&modulus));
            let c0 = symmetric(&c0, &modulus);
            if c0.is_zero() || !(&lc * &rest[0]).is_multiple_of(&c0) {
                continue;
            }
            let mut cand = vec![lc.clone()];
            for &i in &combo {
                cand = zpoly::mul_mod(&cand, &pool[i], &modulus);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, &modulus)).collect();
            let cand = zpoly::primitive(&cand);
            if let Some(quot) = zpoly::exact_div(&rest, &cand) {
                hit = Some((combo, cand, quot));
                break;
            }
        }
        match hit {
            Some((combo, cand, quot)) => {
                out.push(cand);
                rest = quot;
                pool = pool.into_iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    if rest.len() >= 2 {
        out.push(rest);
    }
    Ok(out)
}

fn reduce_squarefree(f: &[BigInt], q: u64) -> Option<Vec<u64>> {
    let n = f.len() - 1;
    let fq: Vec<u64> = f.iter().map(|c| c.mod_floor(&BigInt::from(q)).to_u64().unwrap()).collect();
    if fq[n] == 0 {
        return None;
    }
    let m = fp::monic(&fq, q);
    (fp::gcd(&m, &fp::derivative(&m, q), q).len() == 1).then_some(m)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c * 2u32 > *m {
        c - m
    } else {
        c
    }
}

/// Lift the monic factorization `f ≡ lc · Π g_i (mod q)` to modulus `q^k`;
/// returns monic lifts.
fn hensel_lift(f: &[BigInt], facs: &[Vec<u64>], q: u64, k: u32) -> Result<Vec<Vec<BigInt>>> {
    let qb = BigInt::from(q);
    let big = |v: &[u64]| v.iter().map(|c| BigInt::from(*c)).collect::<Vec<_>>();
    let target_mod = qb.pow(k);
    let lc = f[f.len() - 1].clone();
    // monic version of f modulo q^k
    let lc_inv_k = zpoly::inv_mod(&lc, &target_mod).ok_or_else(|| Error::Internal("leading coefficient not invertible".into()))?;
    let mut cur: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv_k).mod_floor(&target_mod)).collect();
    let mut out = Vec::new();
    for i in 0..facs.len() - 1 {
        let g = &facs[i];
        let mut h = vec![1u64];
        for o in &facs[i + 1..] {
            h = fp::mul(&h, o, q);
        }
        let (s, t) = fp::bezout(g, &h, q).ok_or_else(|| Error::Internal("modular factors are not coprime".into()))?;
        let (mut gl, mut hl) = (big(g), big(&h));
        let (sb, tb) = (big(&s), big(&t));
        let mut m = qb.clone();
        for _ in 1..k {
            // e = (cur - g h) / m  (mod q)
            let gh = zpoly::mul_mod(&gl, &hl, &(&m * &qb));
            let e: Vec<BigInt> = zpoly::sub(&cur, &gh)
                .iter()
                .map(|c| (c.mod_floor(&(&m * &qb)) / &m).mod_floor(&qb))
                .collect();
            let te = zpoly::mul_mod(&tb, &e, &qb);
            let (qq, r) = zpoly::divrem_monic(&te, &gl, &qb);
            let se = zpoly::mul_mod(&sb, &e, &qb);
            let dh = zpoly::add_mod(&se, &zpoly::mul_mod(&qq, &hl, &qb), &qb);
            let nm = &m * &qb;
            gl = zpoly::add_mod(&gl, &zpoly::scale(&r, &m), &nm);
            hl = zpoly::add_mod(&hl, &zpoly::scale(&dh, &m), &nm);
            m = nm;
        }
        out.push(gl);
        cur = hl;
    }
    out.push(cur);
    Ok(out)
}

/// Integer polynomials, lowest degree first.
mod zpoly {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out.into_iter().map(|c| c.mod_floor(m)).collect())
    }

    pub fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
    }

    pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    pub fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| x * c).collect()
    }

    /// Division by a monic polynomial modulo `m`.
    pub fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut r: Vec<BigInt> = trim(a.iter().map(|c| c.mod_floor(m)).collect());
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r[r.len() - 1].clone();
            for (i, bc) in b.iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * bc).mod_floor(m);
            }
            q[k] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
        let e = a.mod_floor(m).extended_gcd(m);
        e.gcd.is_one().then(|| e.x.mod_floor(m))
    }

    pub fn primitive(a: &[BigInt]) -> Vec<BigInt> {
        let mut g = BigInt::zero();
        for c in a {
            g = g.gcd(c);
        }
        let sign = if a.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        a.iter().map(|c| c / &g * &sign).collect()
    }

    /// `a / b` when `b` divides `a` over the integers.
    pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lb = &b[db];
        if r.len() <= db {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let (c, rem) = r[r.len() - 1].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
            q[k] = c;
            r = trim(r);
        }
        r.is_empty().then_some(q)
    }
}

/// Dense polynomials over `F_q`, lowest degree first.
mod fp {
    use rand::Rng;

    fn mulmod(a: u64, b: u64, q: u64) -> u64 {
        a * b % q
    }

    pub fn inv(a: u64, q: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % q, q - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b, q);
            }
            b = mulmod(b, b, q);
            e >>= 1;
        }
        r
    }

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn monic(a: &[u64], q: u64) -> Vec<u64> {
        let a = trim(a.to_vec());
        match a.last() {
            Some(&l) => {
                let li = inv(l, q);
                a.iter().map(|c| mulmod(*c, li, q)).collect()
            }
            None => a,
        }
    }

    pub fn derivative(a: &[u64], q: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| mulmod(*c, i as u64 % q, q)).collect())
    }

    fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let li = inv(b[db], q);
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mulmod(r[r.len() - 1], li, q);
            for (i, bc) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + q - mulmod(c, *bc, q)) % q;
            }
            r = trim(r);
        }
        r
    }

    fn divide(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let li = inv(b[db], q);
        let mut out = vec![0; r.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = mulmod(r[r.len() - 1], li, q);
            out[k] = c;
            for (i, bc) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + q - mulmod(c, *bc, q)) % q;
            }
            r.pop();
            r = trim(r);
        }
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = rem(&x, &y, q);
            x = y;
            y = r;
        }
        monic(&x, q)
    }

    pub fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(*x, *y, q)) % q;
            }
        }
        trim(out)
    }

    fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + q - b.get(i).copied().unwrap_or(0)) % q).collect())
    }

    /// `(s, t)` with `s a + t b = 1`.
    pub fn bezout(a: &[u64], b: &[u64], q: u64) -> Option<(Vec<u64>, Vec<u64>)> {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let qt = divide(&r0, &r1, q);
            let r2 = sub(&r0, &mul(&qt, &r1, q), q);
            let s2 = sub(&s0, &mul(&qt, &s1, q), q);
            let t2 = sub(&t0, &mul(&qt, &t1, q), q);
            (r0, r1, s0, s1, t0, t1) = (r1, r2, s1, s2, t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv(r0[0], q);
        let sc = |v: &[u64]| trim(v.iter().map(|x| mulmod(*x, c, q)).collect());
        Some((sc(&s0), sc(&t0)))
    }

    fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(*x, *y, q)) % q;
            }
        }
        rem(&out, m, q)
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], q: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(base, m, q);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod_poly(&r, &b, m, q);
            }
            b = mulmod_poly(&b, &b, m, q);
            e >>= 1;
        }
        r
    }

    /// Products of the irreducible factors of each degree of a monic squarefree `f`.
    fn distinct_degree(f: &[u64], q: u64) -> Vec<(Vec<u64>, usize)> {
        let mut f = f.to_vec();
        let mut out = Vec::new();
        let mut h = vec![0, 1];
        let mut d = 1;
        while 2 * d < f.len() {
            h = powmod(&h, q, &f, q);
            let mut hx = h.clone();
            hx.resize(hx.len().max(2), 0);
            hx[1] = (hx[1] + q - 1) % q;
            let g = gcd(&f, &trim(hx), q);
            if g.len() > 1 {
                f = divide(&f, &g, q);
                out.push((g, d));
                h = rem(&h, &f, q);
            }
            d += 1;
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    /// Split a product of distinct monic irreducibles of degree `d` (Cantor–Zassenhaus, odd `q`).
    fn equal_degree(f: &[u64], d: usize, q: u64, rng: &mut impl Rng) -> Vec<Vec<u64>> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let a: Vec<u64> = trim((0..n).map(|_| rng.gen_range(0..q)).collect());
            if a.len() < 2 {
                continue;
            }
            let g = gcd(f, &a, q);
            if g.len() > 1 && g.len() < f.len() {
                let mut out = equal_degree(&g, d, q, rng);
                out.extend(equal_degree(&divide(f, &g, q), d, q, rng));
                return out;
            }
            // a^((q^d - 1)/2) = (a · a^q · ... · a^(q^(d-1)))^((q - 1)/2)
            let mut t = rem(&a, f, q);
            let mut acc = t.clone();
            for _ in 1..d {
                t = powmod(&t, q, f, q);
                acc = mulmod_poly(&acc, &t, f, q);
            }
            let b = sub(&powmod(&acc, (q - 1) / 2, f, q), &[1], q);
            let g = gcd(f, &b, q);
            if g.len() > 1 && g.len() < f.len() {
                let mut out = equal_degree(&g, d, q, rng);
                out.extend(equal_degree(&divide(f, &g, q), d, q, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree `f`.
    pub fn factor(f: &[u64], q: u64, rng: &mut impl Rng) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for (g, d) in distinct_degree(f, q) {
            out.extend(equal_degree(&g, d, q, rng));
        }
        out
    }
}

/// Norm of `p(v)` (coefficients in `level`) down to the parent level.
fn norm_poly(level: &Arc<Level>, p: &[Scalar]) -> UPoly {
    let m = level.defining();
    let deg = (p.len() - 1) * level.degree();
    let nodes: Vec<Scalar> = (0..=deg as i64).map(Scalar::from_int).collect();
    let values: Vec<Scalar> = nodes
        .iter()
        .map(|v| {
            let a = upoly::eval(p, v);
            upoly::resultant(m, &a.coeffs_in(level))
        })
        .collect();
    interpolate(&nodes, &values)
}

/// Newton interpolation through `(nodes[i], values[i])`.
pub fn interpolate(nodes: &[Scalar], values: &[Scalar]) -> UPoly {
    let n = nodes.len();
    let mut dd: Vec<Scalar> = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = nodes[i].sub(&nodes[i - j]);
            dd[i] = num.div(&den);
        }
    }
    let mut out: UPoly = Vec::new();
    for i in (0..n).rev() {
        let lin = vec![nodes[i].neg(), Scalar::one()];
        out = upoly::add(&upoly::mul(&out, &lin), &[dd[i].clone()]);
    }
    out
}

fn factor_norm(level: &Arc<Level>, g: &[Scalar]) -> Result<Vec<UPoly>> {
    let alpha = Scalar::generator(level);
    for s in 0..40i64 {
        let shift = alpha.mul(&Scalar::from_int(s));
        let gs = upoly::shift(g, &shift);
        let n = norm_poly(level, &gs);
        let dn = upoly::derivative(&n);
        if upoly::gcd(&n, &dn).len() != 1 {
            continue;
        }
        let nf = factor_over(level.parent(), &n)?;
        let mut out = Vec::new();
        for h in nf {
            let f = upoly::gcd(&gs, &h);
            if f.len() >= 2 {
                out.push(upoly::shift(&f, &shift.neg()));
            }
        }
        let total: usize = out.iter().map(|f| f.len() - 1).sum();
        if total != g.len() - 1 {
            return Err(Error::Internal("norm factorization lost degree".into()));
        }
        out.sort_by_key(|f| f.len());
        return Ok(out);
    }
    Err(Error::Internal("no squarefree norm found".into()))
}

/// Whether a polynomial with coefficients in the tower is irreducible over `level`.
pub fn is_irreducible(level: Option<&Arc<Level>>, g: &[Scalar]) -> Result<bool> {
    let sf = upoly::squarefree_part(g);
    if sf.len() != upoly::trimmed(g.to_vec()).len() {
        return Ok(false);
    }
    Ok(factor_over(level, g)?.len() == 1)
}

/// Helper for tests: integer polynomial.
pub fn ipoly(v: &[i64]) -> UPoly {
    upoly::trimmed(v.iter().map(|&c| Scalar::from_int(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn cyclotomic_split_over_q() {
        // v^3 + 1 = (v + 1)(v^2 - v + 1)
        let f = factor_over(None, &ipoly(&[1, 0, 0, 1])).unwrap();
        assert_eq!(f, vec![ipoly(&[1, 1]), ipoly(&[1, -1, 1])]);
    }

    #[test]
    fn modular_factors_lift_and_recombine() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // v^4 + 1 splits into quadratics modulo 10007
        let f = fp::factor(&[1, 0, 0, 0, 1], 10007, &mut rng);
        assert_eq!(f.iter().map(|g| g.len() - 1).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(factor_over(None, &ipoly(&[1, 0, 0, 0, 1])).unwrap().len(), 1);
        let p = upoly::mul(&ipoly(&[-2, 0, 3]), &ipoly(&[-3, 0, 0, 5]));
        let f = factor_over(None, &p).unwrap();
        assert_eq!(f, vec![upoly::monic(&ipoly(&[-2, 0, 3])), upoly::monic(&ipoly(&[-3, 0, 0, 5]))]);
        // (v - 1)(v - 2)...(v - 8)
        let mut p = ipoly(&[1]);
        for r in 1..=8 {
            p = upoly::mul(&p, &ipoly(&[-r, 1]));
        }
        assert_eq!(factor_over(None, &p).unwrap().len(), 8);
    }

    #[test]
    fn irreducible_quartic() {
        let f = factor_over(None, &ipoly(&[-1, 0, 0, 0, 6])).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn quartic_splits_after_adjoining_i() {
        let i = super::super::scalar::extend_near(
            &ipoly(&[1, 0, 1]),
            Complex64::new(0.0, 1.0),
            0.5,
        )
        .unwrap();
        let l = i.level().unwrap().clone();
        // v^4 - 1 over Q(i): four linear factors
        let f = factor_over(Some(&l), &ipoly(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.len(), 4);
        // v^2 + 1 over Q(i) splits
        let f2 = factor_over(Some(&l), &ipoly(&[1, 0, 1])).unwrap();
        assert_eq!(f2.len(), 2);
        // v^2 - 11 stays irreducible over Q(i)
        let f3 = factor_over(Some(&l), &ipoly(&[-11, 0, 1])).unwrap();
        assert_eq!(f3.len(), 1);
    }
}
