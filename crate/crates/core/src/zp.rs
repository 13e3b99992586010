//! Dense linear algebra over Z_p for small systems.

pub fn from_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Multiplicative inverse by Fermat's little theorem; `a` must be nonzero mod the prime `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Row-reduces `[a | b]` in place and returns the pivot columns of `a`.
fn eliminate(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let scale = inv(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mul(*v, scale, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..rows[i].len() {
                    let t = mul(f, rows[r][j], p);
                    rows[i][j] = sub(rows[i][j], t, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(a: &[Vec<u64>], p: u64) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    eliminate(&mut rows, cols, p).len()
}

/// Some `x` with `a·x = b` over Z_p (free variables set to zero), or `None`.
pub fn solve(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs % p);
            r
        })
        .collect();
    let pivots = eliminate(&mut rows, cols, p);
    if rows[pivots.len()..].iter().any(|r| r[cols] != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][cols];
    }
    Some(x)
}

pub fn mat_vec(a: &[Vec<u64>], x: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(0, |acc, (&r, &v)| add(acc, mul(r, v, p), p)))
        .collect()
}
