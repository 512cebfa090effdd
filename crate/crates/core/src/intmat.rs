//! Small dense integer matrices: kernels by column Hermite reduction,
//! Bareiss determinants and exact rational solves.

use rug::{Integer, Rational};

pub type IntMatrix = Vec<Vec<i64>>;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Basis of `{x in Z^n : A x = 0}` for an `m x n` matrix, as column vectors.
///
/// Column operations `A U = H` bring `A` to echelon form with unimodular `U`;
/// the columns of `U` over the zero columns of `H` span the kernel.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<i64>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let col_combine = |mat: &mut Vec<Vec<i128>>, p: usize, q: usize, (x, y, z, w): (i128, i128, i128, i128)| {
        // (col_p, col_q) <- (x col_p + y col_q, z col_p + w col_q)
        for row in mat.iter_mut() {
            let (cp, cq) = (row[p], row[q]);
            row[p] = x * cp + y * cq;
            row[q] = z * cp + w * cq;
        }
    };
    let mut piv = 0;
    for i in 0..m {
        if piv == n {
            break;
        }
        for j in piv + 1..n {
            if h[i][j] == 0 {
                continue;
            }
            let (a0, b0) = (h[i][piv], h[i][j]);
            let (g, x, y) = ext_gcd(a0, b0);
            let op = (x, y, -b0 / g, a0 / g);
            col_combine(&mut h, piv, j, op);
            col_combine(&mut u, piv, j, op);
        }
        if h[i][piv] != 0 {
            piv += 1;
        }
    }
    (piv..n)
        .map(|j| (0..n).map(|i| i64::try_from(u[i][j]).expect("kernel entry overflow")).collect())
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = b.len();
    let n = b[0].len();
    a.iter().map(|r| (0..n).map(|j| (0..k).map(|l| r[l] * b[l][j]).sum()).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// Exact determinant by fraction-free elimination.
pub fn det(a: &[Vec<Integer>]) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut m: Vec<Vec<Integer>> = a.to_vec();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = Integer::from(&m[i][j] * &m[k][k]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

/// gcd of the maximal minors of an `n x k` matrix given by its `k` columns.
pub fn maximal_minor_gcd(cols: &[Vec<i64>]) -> Integer {
    let k = cols.len();
    let n = cols.first().map_or(0, |c| c.len());
    let mut g = Integer::new();
    let mut rows: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<Integer>> = rows.iter().map(|&r| cols.iter().map(|c| Integer::from(c[r])).collect()).collect();
        g.gcd_mut(&det(&sub));
        // next k-subset of 0..n in lexicographic order
        let mut i = k;
        while i > 0 && rows[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        rows[i - 1] += 1;
        for j in i..k {
            rows[j] = rows[j - 1] + 1;
        }
    }
    g
}

/// The unique `x` with `sum_j x_j cols[j] = v`, if one exists.
pub fn solve_rational(cols: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let k = cols.len();
    let n = v.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).chain(std::iter::once(v[r].clone())).collect())
        .collect();
    let mut row = 0;
    for col in 0..k {
        let p = (row..n).find(|&r| m[r][col] != 0)?;
        m.swap(row, p);
        let inv = Rational::from(1) / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let f = m[r][col].clone();
                for c in 0..=k {
                    let t = Rational::from(&f * &m[row][c]);
                    m[r][c] -= t;
                }
            }
        }
        row += 1;
    }
    if m[row..].iter().any(|r| r[k] != 0) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}
