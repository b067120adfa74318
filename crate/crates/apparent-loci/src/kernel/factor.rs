//! Factorization of univariate polynomials over Q.
//!
//! Classic modular approach: Yun's squarefree decomposition, Berlekamp
//! factorization modulo a small good prime, quadratic Hensel lifting of the
//! modular factors past a coefficient bound, and subset recombination. The
//! degrees that show up here (norms of function-field elements on genus 1-2
//! curves) are small, so the plain algorithms are comfortably fast, and
//! everything is deterministic: fixed prime sequence, fixed subset order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rat::Rat;

/// Monic irreducible factors of `f` with multiplicities, smallest first.
/// The constant content is dropped. Panics on zero input.
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "factor: zero polynomial");
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for q in factor_squarefree(&part) {
            out.push((q, mult));
        }
    }
    out.sort();
    out
}

/// True when `f` is irreducible over Q (constants are not).
pub fn is_irreducible(f: &Poly) -> bool {
    if f.is_constant() {
        return false;
    }
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Factors a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree(g: &Poly) -> Vec<Poly> {
    debug_assert!(g.is_squarefree());
    if g.deg() == 1 {
        return vec![g.monic()];
    }
    // Clear denominators and pass to a monic integer polynomial:
    // with P primitive of leading coefficient L, the substitution
    // F(x) = L^(n-1) P(x/L) is monic over Z; factors map back via x -> Lx.
    let (_, prim) = g.primitive_integer();
    let n = prim.len() - 1;
    let lead = prim[n].clone();
    let mut fcoeffs = vec![BigInt::zero(); n + 1];
    fcoeffs[n] = BigInt::one();
    let mut scale = BigInt::one(); // lead^(n-1-i), built from the top down
    for i in (0..n).rev() {
        fcoeffs[i] = &prim[i] * &scale;
        scale *= &lead;
    }
    let factors_z = zassenhaus_monic(&fcoeffs);
    let lead_rat = Rat::from_bigint(lead);
    factors_z
        .iter()
        .map(|q| {
            // map back through x -> L x and normalize monic
            let coeffs: Vec<Rat> = q
                .iter()
                .enumerate()
                .map(|(i, c)| Rat::from_bigint(c.clone()) * lead_rat.pow(i as i32))
                .collect();
            Poly::from_coeffs(coeffs).monic()
        })
        .collect()
}

// ---- Zassenhaus on monic squarefree integer polynomials ----

/// Input and output polynomials are coefficient vectors, lowest first,
/// monic; the output is the list of monic irreducible factors over Z.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    debug_assert!(f[n].is_one());
    if n == 1 {
        return vec![f.to_vec()];
    }

    let p = choose_prime(f);
    let modular = berlekamp(&reduce_mod(f, p), p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Coefficient bound for monic divisors (coarse Mignotte-style bound).
    let max_abs = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::one() << n) * (max_abs + 1) * (n + 1);
    let target = &bound * 2 + 1;

    let lifted = hensel_lift_tree(f, &modular, p, &target);
    let modulus = lifted.1;
    recombine(f, lifted.0, &modulus)
}

/// Smallest odd prime keeping `f` squarefree with unit leading coefficient.
fn choose_prime(f: &[BigInt]) -> u64 {
    const PRIMES: [u64; 40] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
    ];
    for &p in &PRIMES {
        let fp = reduce_mod(f, p);
        if fp.len() != f.len() {
            continue; // leading coefficient vanished
        }
        let dfp = fp_derivative(&fp, p);
        if fp_gcd(&fp, &dfp, p).len() == 1 {
            return p;
        }
    }
    panic!("factor: no good prime below 180 (discriminant too smooth)");
}

// ---- Arithmetic in F_p[x] (dense, Vec<u64>, last entry nonzero) ----

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pp = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| {
            let r = ((c % &pp) + &pp) % &pp;
            let digits = r.to_u64_digits().1;
            if digits.is_empty() {
                0
            } else {
                digits[0]
            }
        })
        .collect();
    while matches!(out.last(), Some(0)) {
        out.pop();
    }
    out
}

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while matches!(v.last(), Some(0)) {
        v.pop();
    }
    v
}

fn fp_derivative(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return Vec::new();
    }
    fp_trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (c * (i as u64 % p)) % p)
            .collect(),
    )
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    fp_trim(out)
}

fn fp_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    fp_trim(a.iter().map(|&x| (x * c) % p).collect())
}

fn fp_inv_scalar(c: u64, p: u64) -> u64 {
    // Fermat: c^(p-2) mod p
    let mut e = p - 2;
    let mut base = c % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Division with remainder; divisor must be nonzero.
fn fp_div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv_lead = fp_inv_scalar(b[b.len() - 1], p);
    let mut rem = a.to_vec();
    let mut quo = vec![0u64; a.len() - b.len() + 1];
    for i in (b.len() - 1..a.len()).rev() {
        if rem[i] == 0 {
            continue;
        }
        let q = rem[i] * inv_lead % p;
        quo[i - (b.len() - 1)] = q;
        for (j, &bc) in b.iter().enumerate() {
            let idx = i - (b.len() - 1) + j;
            rem[idx] = (rem[idx] + p - q * bc % p) % p;
        }
    }
    (fp_trim(quo), fp_trim(rem))
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = fp_div_rem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        let inv = fp_inv_scalar(a[a.len() - 1], p);
        fp_scale(&a, inv, p)
    }
}

/// Extended gcd for coprime monic a, b: returns (s, t) with s a + t b = 1.
fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_div_rem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "fp_ext_gcd: inputs not coprime");
    let inv = fp_inv_scalar(r0[0], p);
    (fp_scale(&s0, inv, p), fp_scale(&t0, inv, p))
}

// ---- Berlekamp ----

/// Factors a monic squarefree polynomial over F_p into monic irreducibles.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    // x^p mod f by square-and-multiply on exponents of x
    let mut xp = vec![0u64, 1]; // x
    let mut e = p;
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_div_rem(&fp_mul(&acc, &xp, p), f, p).1;
        }
        e >>= 1;
        if e > 0 {
            xp = fp_div_rem(&fp_mul(&xp, &xp, p), f, p).1;
        }
    }
    let xp = acc;

    // Frobenius matrix minus identity: column j holds x^(jp) mod f
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for j in 0..n {
        let mut col = vec![0u64; n];
        for (i, &c) in cur.iter().enumerate() {
            col[i] = c;
        }
        col[j] = (col[j] + p - 1) % p; // subtract identity
        cols.push(col);
        if j + 1 < n {
            cur = fp_div_rem(&fp_mul(&cur, &xp, p), f, p).1;
        }
    }
    let basis = fp_nullspace(&cols, n, p);
    let r = basis.len();
    if r == 1 {
        return vec![f.to_vec()];
    }

    // split with gcd(w, v - c) over all basis vectors and field constants
    let mut factors: Vec<Vec<u64>> = vec![f.to_vec()];
    'outer: for v in basis.iter().map(|b| fp_trim(b.clone())) {
        if v.len() <= 1 {
            continue; // the constants split nothing
        }
        let mut next: Vec<Vec<u64>> = Vec::new();
        while let Some(w) = factors.pop() {
            if w.len() <= 2 {
                next.push(w);
                continue;
            }
            let mut pieces = vec![w];
            for c in 0..p {
                let mut split_out: Vec<Vec<u64>> = Vec::new();
                for piece in pieces.drain(..) {
                    if piece.len() <= 2 {
                        split_out.push(piece);
                        continue;
                    }
                    let shifted = fp_sub(&v, &[c], p);
                    let g = fp_gcd(&piece, &shifted, p);
                    if g.len() > 1 && g.len() < piece.len() {
                        let (q, _) = fp_div_rem(&piece, &g, p);
                        split_out.push(g);
                        split_out.push(q);
                    } else {
                        split_out.push(piece);
                    }
                }
                pieces = split_out;
            }
            next.extend(pieces);
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    // make monic and sort for determinism
    let mut out: Vec<Vec<u64>> = factors
        .into_iter()
        .map(|w| {
            let inv = fp_inv_scalar(w[w.len() - 1], p);
            fp_scale(&w, inv, p)
        })
        .collect();
    out.sort();
    out
}

/// Nullspace basis of the matrix whose columns are given (n x n, mod p).
fn fp_nullspace(cols: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    // row-reduce the transpose-free way: we solve M v = 0 where M's columns
    // are `cols`; build the matrix row-major first
    let mut m = vec![vec![0u64; n]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            m[i][j] = col[i];
        }
    }
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = fp_inv_scalar(m[row][col], p);
        for j in 0..n {
            m[row][j] = m[row][j] * inv % p;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for j in 0..n {
                    m[r][j] = (m[r][j] + p - factor * m[row][j] % p) % p;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (col, pv) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pv {
                v[col] = (p - m[*r][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting ----

type ZPoly = Vec<BigInt>;

fn z_trim(mut v: ZPoly) -> ZPoly {
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
    v
}

fn z_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|c| ((c % m) + m) % m).collect())
}

fn z_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_mod(&out, m)
}

fn z_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let mut s = BigInt::zero();
        if let Some(x) = a.get(i) {
            s += x;
        }
        if let Some(y) = b.get(i) {
            s += y;
        }
        *o = s;
    }
    z_mod(&out, m)
}

fn z_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let mut s = BigInt::zero();
        if let Some(x) = a.get(i) {
            s += x;
        }
        if let Some(y) = b.get(i) {
            s -= y;
        }
        *o = s;
    }
    z_mod(&out, m)
}

/// Division with remainder modulo m by a monic divisor.
fn z_div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.last().map(|c| c.is_one()).unwrap_or(false));
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - b.len() + 1];
    for i in (b.len() - 1..a.len()).rev() {
        let q = ((&rem[i] % m) + m) % m;
        if q.is_zero() {
            rem[i] = BigInt::zero();
            continue;
        }
        quo[i - (b.len() - 1)] = q.clone();
        for (j, bc) in b.iter().enumerate() {
            let idx = i - (b.len() - 1) + j;
            let v = &rem[idx] - &q * bc;
            rem[idx] = ((v % m) + m) % m;
        }
    }
    (z_trim(quo), z_trim(rem))
}

fn fp_to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from modulus m to m^2.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = z_sub(&z_mod(f, &m2), &z_mul(g, h, &m2), &m2);
    let (q, r) = z_div_rem_monic(&z_mul(s, &e, &m2), h, &m2);
    let g_new = z_add(&z_add(g, &z_mul(t, &e, &m2), &m2), &z_mul(&q, g, &m2), &m2);
    let h_new = z_add(h, &r, &m2);
    let b = z_sub(
        &z_add(&z_mul(s, &g_new, &m2), &z_mul(t, &h_new, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = z_div_rem_monic(&z_mul(s, &b, &m2), &h_new, &m2);
    let s_new = z_sub(s, &d, &m2);
    let t_new = z_sub(&z_sub(t, &z_mul(t, &b, &m2), &m2), &z_mul(&c, &g_new, &m2), &m2);
    (g_new, h_new, s_new, t_new)
}

/// Lifts the monic factorization of monic `f` from mod p to a modulus that
/// is at least `target`. Returns the lifted factors and that modulus.
fn hensel_lift_tree(f: &[BigInt], factors_p: &[Vec<u64>], p: u64, target: &BigInt) -> (Vec<ZPoly>, BigInt) {
    if factors_p.len() == 1 {
        let mut m = BigInt::from(p);
        while &m < target {
            m = &m * &m;
        }
        return (vec![z_mod(f, &m)], m);
    }
    let half = factors_p.len() / 2;
    let (left, right) = factors_p.split_at(half);
    let mut gp = vec![1u64];
    for w in left {
        gp = fp_mul(&gp, w, p);
    }
    let mut hp = vec![1u64];
    for w in right {
        hp = fp_mul(&hp, w, p);
    }
    let (sp, tp) = fp_ext_gcd(&gp, &hp, p);

    let mut m = BigInt::from(p);
    let mut g = fp_to_z(&gp);
    let mut h = fp_to_z(&hp);
    let mut s = fp_to_z(&sp);
    let mut t = fp_to_z(&tp);
    while &m < target {
        let (gn, hn, sn, tn) = hensel_step(f, &g, &h, &s, &t, &m);
        g = gn;
        h = hn;
        s = sn;
        t = tn;
        m = &m * &m;
    }
    let (mut gs, m1) = hensel_lift_tree(&g, left, p, &m);
    debug_assert_eq!(m1, m);
    let (hs, m2) = hensel_lift_tree(&h, right, p, &m);
    debug_assert_eq!(m2, m);
    gs.extend(hs);
    (gs, m)
}

// ---- Recombination ----

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = ((c % m) + m) % m;
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn z_poly_to_rat(a: &[BigInt]) -> Poly {
    Poly::from_coeffs(a.iter().map(|c| Rat::from_bigint(c.clone())).collect())
}

/// Finds the true monic integer factors of `f` among subset products of the
/// lifted modular factors.
fn recombine(f: &[BigInt], lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut remaining_f = z_poly_to_rat(f);
    let mut pool: Vec<ZPoly> = lifted;
    let mut out: Vec<ZPoly> = Vec::new();

    let mut size = 1usize;
    'sizes: while 2 * size <= pool.len() {
        // subsets of the current pool with `size` elements, lexicographic
        let masks = subsets_of_size(pool.len(), size);
        for mask in masks {
            let mut cand = vec![BigInt::one()];
            for (i, piece) in pool.iter().enumerate() {
                if mask & (1u64 << i) != 0 {
                    cand = z_mul(&cand, piece, m);
                }
            }
            let cand_sym: ZPoly = cand.iter().map(|c| symmetric(c, m)).collect();
            let cand_poly = z_poly_to_rat(&z_trim(cand_sym.clone()));
            let (q, r) = remaining_f.div_rem(&cand_poly);
            if r.is_zero() && integer_coeffs(&q).is_some() {
                out.push(z_trim(cand_sym));
                remaining_f = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1u64 << i) == 0)
                    .map(|(_, w)| w)
                    .collect();
                continue 'sizes; // restart at the same size with smaller pool
            }
        }
        size += 1;
    }
    if remaining_f.degree().unwrap_or(0) > 0 {
        let ints = integer_coeffs(&remaining_f).expect("recombine: non-integer remainder factor");
        out.push(ints);
    }
    out.sort();
    out
}

fn integer_coeffs(p: &Poly) -> Option<ZPoly> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        if !c.is_integer() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(out)
}

/// Bitmasks of all `size`-element subsets of `0..n`, ascending.
fn subsets_of_size(n: usize, size: usize) -> Vec<u64> {
    assert!(n <= 63);
    let mut out = Vec::new();
    let mut mask: u64 = (1 << size) - 1;
    let limit: u64 = 1 << n;
    while mask < limit {
        out.push(mask);
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if c == 0 || r >= limit {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}
