//! Word-size integer helpers: modular powers, primality, factoring.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, (a % m) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as (prime, exponent) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Smallest generator of (Z/pZ)^* for prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs = factorize(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&(f, _)| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("prime modulus has a primitive root")
}

/// Multiplicative order of `a` modulo `m` (gcd(a, m) = 1 assumed).
pub fn mult_order(a: u64, m: u64, group_order: u64) -> u64 {
    let mut o = group_order;
    for (p, _) in factorize(group_order) {
        while o % p == 0 && pow_mod(a, o / p, m) == 1 {
            o /= p;
        }
    }
    o
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Number of primes <= x, by a plain sieve. Intended for small x.
pub fn prime_pi(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let x = x as usize;
    let mut comp = vec![false; x + 1];
    let mut count = 0;
    for i in 2..=x {
        if !comp[i] {
            count += 1;
            let mut j = i * i;
            while j <= x {
                comp[j] = true;
                j += i;
            }
        }
    }
    count
}

/// floor(n^(1/e)) for e >= 1.
pub fn integer_root(n: u64, e: u32) -> u64 {
    if e == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / e as f64) as u64;
    while r > 0 && r.checked_pow(e).map_or(true, |v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(e).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}
