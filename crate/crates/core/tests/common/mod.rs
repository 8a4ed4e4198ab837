//! Brute-force oracles over F_2 that share no code with the library: a
//! polynomial in T is a bit mask, a polynomial in T and x a vector of masks
//! indexed by the x-degree.

#![allow(dead_code)]

use rand::Rng;
use tadic::{BiPoly, Field, UniPoly};

pub type Bits = u128;

pub fn clmul(a: Bits, b: Bits) -> Bits {
    let (mut small, big) = if a.count_ones() < b.count_ones() { (a, b) } else { (b, a) };
    let mut r = 0;
    while small != 0 {
        let i = small.trailing_zeros();
        debug_assert!(i == 0 || big.leading_zeros() >= i, "clmul overflow");
        r ^= big << i;
        small &= small - 1;
    }
    r
}

pub fn deg(a: Bits) -> Option<u32> {
    (a != 0).then(|| 127 - a.leading_zeros())
}

/// Quotient of a by b in F_2[T] when b divides a.
pub fn exact_div(mut a: Bits, b: Bits) -> Option<Bits> {
    let db = deg(b)?;
    let mut q = 0;
    while let Some(da) = deg(a) {
        if da < db {
            return None;
        }
        q |= 1 << (da - db);
        a ^= b << (da - db);
    }
    Some(q)
}

pub fn val(a: Bits) -> Option<u32> {
    (a != 0).then(|| a.trailing_zeros())
}

pub fn to_bits(f: &BiPoly) -> Vec<Bits> {
    assert_eq!(f.field().q(), 2);
    f.coeffs()
        .iter()
        .map(|a| a.coeffs().iter().enumerate().fold(0, |m, (j, c)| m | ((c.index() as Bits) << j)))
        .collect()
}

pub fn from_bits(field: Field, f: &[Bits]) -> BiPoly {
    let c = f
        .iter()
        .map(|&m| {
            let idx: Vec<u32> = (0..128).map(|j| ((m >> j) & 1) as u32).collect();
            UniPoly::from_indices(field, &idx)
        })
        .collect();
    BiPoly::from_coeffs(field, c)
}

pub fn trim(mut f: Vec<Bits>) -> Vec<Bits> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn eval(f: &[Bits], a: Bits) -> Bits {
    f.iter().rev().fold(0, |acc, &c| clmul(acc, a) ^ c)
}

pub fn derivative(f: &[Bits]) -> Vec<Bits> {
    trim((1..f.len()).map(|i| if i % 2 == 1 { f[i] } else { 0 }).collect())
}

pub fn reverse(f: &[Bits]) -> Vec<Bits> {
    trim(f.iter().rev().copied().collect())
}

pub fn mul(f: &[Bits], g: &[Bits]) -> Vec<Bits> {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut r = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            r[i + j] ^= clmul(a, b);
        }
    }
    trim(r)
}

/// f / g in F_2[T][x] when g divides f there.
pub fn div_exact(f: &[Bits], g: &[Bits]) -> Option<Vec<Bits>> {
    let (df, dg) = (f.len().checked_sub(1)?, g.len().checked_sub(1)?);
    if df < dg {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![0; df - dg + 1];
    for k in (0..=df - dg).rev() {
        let c = exact_div(r[k + dg], g[dg])?;
        q[k] = c;
        for (j, &b) in g.iter().enumerate() {
            r[k + j] ^= clmul(c, b);
        }
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

/// Roots of f in F_2[[T]] (with `positive` only those with ord > 0), found
/// as classes mod T^m. A class survives a level only if f vanishes to order
/// m on it, which every class containing a root does. At the last level a
/// class is kept when it passes Hensel's test v(f(a)) >= m + v(f'(a)) with
/// 2 v(f'(a)) < m, which for m past the root separation and past every
/// v(f'(root)) picks out exactly one class per simple root.
pub fn count_integral_roots(f: &[Bits], m: u32, positive: bool) -> usize {
    let d = derivative(f);
    let mut classes: Vec<Bits> = if positive { vec![0] } else { vec![0, 1] };
    for level in 1..m {
        classes = classes
            .into_iter()
            .filter(|&a| val(eval(f, a)).map_or(true, |v| v >= level))
            .flat_map(|a| [a, a | (1 << level)])
            .collect();
        assert!(classes.len() < 1 << 16, "oracle blew up");
    }
    classes
        .into_iter()
        .filter(|&a| {
            let Some(vd) = val(eval(&d, a)) else { return false };
            2 * vd < m && val(eval(f, a)).map_or(true, |vf| vf >= m + vd)
        })
        .count()
}

/// (ord > 0, ord = 0, ord < 0) root counts of a separable f in F_2((T)).
/// The count is taken at two depths and must agree.
pub fn root_profile(f: &[Bits]) -> (usize, usize, usize) {
    let rev = reverse(f);
    let at = |m: u32| {
        let pos = count_integral_roots(f, m, true);
        let all = count_integral_roots(f, m, false);
        let neg = count_integral_roots(&rev, m, true);
        (pos, all - pos, neg)
    };
    let (a, b) = (at(24), at(30));
    assert_eq!(a, b, "root oracle unstable for {f:?}");
    a
}

/// The irreducible factors in F_2[T][x] of a primitive f, by trial division
/// with every candidate divisor of x-degree at most deg/2. Candidates are
/// restricted by lc(g) | lc(f) and g(0) | f(0) in F_2[T].
pub fn factor_brute(f: &[Bits]) -> Vec<Vec<Bits>> {
    let n = f.len() - 1;
    if n == 0 {
        return vec![f.to_vec()];
    }
    let divisors = |c: Bits| -> Vec<Bits> {
        let d = deg(c).unwrap();
        (1..(2 as Bits) << d).filter(|&g| exact_div(c, g).is_some()).collect()
    };
    let dt = f.iter().filter_map(|&c| deg(c)).max().unwrap_or(0);
    for k in 1..=n / 2 {
        let lcs = divisors(f[n]);
        let consts: Vec<Bits> = if f[0] == 0 { (0..(2 as Bits) << dt).collect() } else { divisors(f[0]) };
        let mid = (2 as Bits) << dt;
        let mids = mid.pow(k.saturating_sub(1) as u32);
        for &l in &lcs {
            for &c in &consts {
                for mut code in 0..mids {
                    let mut g = vec![c];
                    for _ in 1..k {
                        g.push(code % mid);
                        code /= mid;
                    }
                    g.push(l);
                    if let Some(h) = div_exact(f, &g) {
                        let mut out = factor_brute(&g);
                        out.extend(factor_brute(&h));
                        return out;
                    }
                }
            }
        }
    }
    vec![f.to_vec()]
}

pub fn random_bipoly(rng: &mut impl Rng, deg_x: usize, deg_t: u32) -> Vec<Bits> {
    let mask: Bits = (1 << (deg_t + 1)) - 1;
    let mut f: Vec<Bits> = (0..=deg_x).map(|_| rng.gen::<u64>() as Bits & mask).collect();
    while f[deg_x] == 0 {
        f[deg_x] = rng.gen::<u64>() as Bits & mask;
    }
    f
}

pub fn is_primitive(f: &[Bits]) -> bool {
    let mut g: Bits = 0;
    for &c in f {
        g = gcd(g, c);
    }
    g == 1
}

pub fn gcd(mut a: Bits, mut b: Bits) -> Bits {
    while b != 0 {
        while let (Some(da), Some(db)) = (deg(a), deg(b)) {
            if da < db {
                break;
            }
            a ^= b << (da - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Library split profile against `root_profile` on `count` random
/// squarefree polynomials over F_2 with deg_x <= 4 and deg_T <= 3. Half of
/// them are products of small random factors so that roots actually occur.
/// Returns (number compared, number with at least one root).
pub fn root_oracle_suite(count: usize, seed: u64) -> Result<(usize, usize), String> {
    use rand::SeedableRng;
    let f2 = tadic::field_of_order(2).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut done, mut with_roots) = (0, 0);
    while done < count {
        let f = if rng.gen_bool(0.5) {
            {
            let (dx, dt) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
            random_bipoly(&mut rng, dx, dt)
        }
        } else {
            let mut f = vec![1];
            let (mut dx, mut dt) = (0, 0);
            loop {
                let (a, b) = (rng.gen_range(1..=2), rng.gen_range(0..=1));
                if dx + a > 4 || dt + b > 3 {
                    break;
                }
                f = mul(&f, &random_bipoly(&mut rng, a, b));
                dx += a;
                dt += b;
            }
            f
        };
        if f.len() < 2 {
            continue;
        }
        let p = from_bits(f2, &f);
        if !tadic::poly::is_squarefree(&p) {
            continue;
        }
        let lib = tadic::localfield::split_profile(&p).map_err(|e| format!("{p}: {e}"))?;
        let want = root_profile(&f);
        if (lib.r, lib.ell, lib.s) != want {
            return Err(format!("{p}: library (r, ell, s) = {:?}, oracle {want:?}", (lib.r, lib.ell, lib.s)));
        }
        done += 1;
        with_roots += usize::from(want != (0, 0, 0));
    }
    Ok((done, with_roots))
}

/// Random squarefree primitive factor over F_2 that splits in F_2((T))
/// according to the root oracle.
pub fn random_split_factor(rng: &mut impl Rng) -> Vec<Bits> {
    let f2 = tadic::field_of_order(2).unwrap();
    loop {
        let dx = rng.gen_range(1..=3);
        let dt = rng.gen_range(0..=2);
        let f = random_bipoly(rng, dx, dt);
        if !is_primitive(&f) || !tadic::poly::is_squarefree(&from_bits(f2, &f)) {
            continue;
        }
        let (a, b, c) = root_profile(&f);
        if a + b + c == dx {
            return f;
        }
    }
}

/// recombine_irreducible against trial division on `count` products of one
/// or two random split factors (each deg_x <= 3, deg_T <= 2). Returns
/// (number compared, number found irreducible).
pub fn recombination_oracle_suite(count: usize, seed: u64) -> Result<(usize, usize), String> {
    use rand::SeedableRng;
    let f2 = tadic::field_of_order(2).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut done, mut irreducible) = (0, 0);
    while done < count {
        let mut f = random_split_factor(&mut rng);
        if rng.gen_bool(0.6) {
            f = mul(&f, &random_split_factor(&mut rng));
        }
        let p = from_bits(f2, &f);
        if !tadic::poly::is_squarefree(&p) {
            continue;
        }
        let lib = tadic::factor::recombine_irreducible(&p).map_err(|e| format!("{p}: {e}"))?;
        let mut got: Vec<Vec<Bits>> = lib.factors.iter().map(to_bits).collect();
        let mut want = factor_brute(&f);
        got.sort();
        want.sort();
        if got != want || lib.irreducible != (want.len() == 1) {
            let show = |v: &[Vec<Bits>]| v.iter().map(|g| from_bits(f2, g).to_string()).collect::<Vec<_>>().join(" | ");
            return Err(format!("{p}: library [{}] (irreducible {}), oracle [{}]", show(&got), lib.irreducible, show(&want)));
        }
        done += 1;
        irreducible += usize::from(lib.irreducible);
    }
    Ok((done, irreducible))
}
