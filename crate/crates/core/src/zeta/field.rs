//! Arithmetic modulo word-sized primes.

/// The Mersenne prime `2^61 - 1`.
pub const P61: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero element (Fermat).
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

/// Reduces a signed integer.
pub fn from_i64(x: i64, p: u64) -> u64 {
    let r = x.rem_euclid(p as i64);
    r as u64
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes not exceeding `2^61 - 1`, descending.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = P61;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Determinant of a square matrix over `F_p` by Gaussian elimination.
pub fn det(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut result = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            result = sub(0, result, p);
        }
        let pv = m[col][col];
        result = mul(result, pv, p);
        let pinv = inv(pv, p);
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let factor = mul(m[r][col], pinv, p);
            for c in col..n {
                let t = mul(factor, m[col][c], p);
                m[r][c] = sub(m[r][c], t, p);
            }
        }
    }
    result
}
