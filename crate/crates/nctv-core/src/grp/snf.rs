//! Smith normal form over Z: U · M · V = D with U, V unimodular and
//! D diagonal satisfying d_1 | d_2 | … . Pivoting always selects the
//! smallest nonzero absolute value in the remaining block.

use super::matrix::IntMat;

pub struct SmithDecomposition {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let n = m.dim();
    let mut d = m.clone();
    let mut u = IntMat::identity(n);
    let mut v = IntMat::identity(n);

    for k in 0..n {
        // pivot loop ends when the remaining block is zero
        while let Some((pi, pj)) = min_nonzero(&d, k) {
            if (pi, pj) != (k, k) {
                swap_rows(&mut d, &mut u, k, pi);
                swap_cols(&mut d, &mut v, k, pj);
            }
            let mut dirty = false;
            for i in k + 1..n {
                let q = div_round(d[(i, k)], d[(k, k)]);
                if q != 0 {
                    row_axpy(&mut d, &mut u, i, k, -q);
                }
                if d[(i, k)] != 0 {
                    dirty = true;
                }
            }
            for j in k + 1..n {
                let q = div_round(d[(k, j)], d[(k, k)]);
                if q != 0 {
                    col_axpy(&mut d, &mut v, j, k, -q);
                }
                if d[(k, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by d[k,k]
            let pivot = d[(k, k)];
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % pivot != 0);
            match offender {
                Some((i, _)) => {
                    // fold row i into row k and restart the pivot step
                    row_axpy(&mut d, &mut u, k, i, 1);
                }
                None => break,
            }
        }
        if d[(k, k)] < 0 {
            negate_row(&mut d, &mut u, k);
        }
    }
    SmithDecomposition { u, d, v }
}

fn min_nonzero(d: &IntMat, k: usize) -> Option<(usize, usize)> {
    let n = d.dim();
    let mut best: Option<(i64, usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            let a = d[(i, j)].abs();
            if a != 0 && best.is_none_or(|(b, _, _)| a < b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn div_round(a: i64, b: i64) -> i64 {
    // quotient minimizing |a - q b|
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + r.signum() * b.signum()
    } else {
        q
    }
}

fn swap_rows(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.dim() {
        let t = d[(a, j)];
        d[(a, j)] = d[(b, j)];
        d[(b, j)] = t;
        let t = u[(a, j)];
        u[(a, j)] = u[(b, j)];
        u[(b, j)] = t;
    }
}

fn swap_cols(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.dim() {
        let t = d[(i, a)];
        d[(i, a)] = d[(i, b)];
        d[(i, b)] = t;
        let t = v[(i, a)];
        v[(i, a)] = v[(i, b)];
        v[(i, b)] = t;
    }
}

/// row_i += c * row_k (on D and U simultaneously).
fn row_axpy(d: &mut IntMat, u: &mut IntMat, i: usize, k: usize, c: i64) {
    for j in 0..d.dim() {
        d[(i, j)] += c * d[(k, j)];
        u[(i, j)] += c * u[(k, j)];
    }
}

/// col_j += c * col_k (on D and V simultaneously).
fn col_axpy(d: &mut IntMat, v: &mut IntMat, j: usize, k: usize, c: i64) {
    for i in 0..d.dim() {
        d[(i, j)] += c * d[(i, k)];
        v[(i, j)] += c * v[(i, k)];
    }
}

fn negate_row(d: &mut IntMat, u: &mut IntMat, i: usize) {
    for j in 0..d.dim() {
        d[(i, j)] = -d[(i, j)];
        u[(i, j)] = -u[(i, j)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMat) -> SmithDecomposition {
        let s = smith_normal_form(m);
        // U M V = D
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        // unimodular transforms
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        // diagonal, nonnegative, divisibility chain
        let n = m.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
            assert!(s.d[(i, i)] >= 0);
        }
        for i in 0..n - 1 {
            let a = s.d[(i, i)];
            let b = s.d[(i + 1, i + 1)];
            if a != 0 {
                assert_eq!(b % a, 0, "divisibility broken: {a} !| {b}");
            } else {
                assert_eq!(b, 0);
            }
        }
        s
    }

    #[test]
    fn doubled_identity() {
        let s = check(&IntMat::scalar(2, 2));
        assert_eq!(s.d, IntMat::scalar(2, 2));
    }

    #[test]
    fn one_minus_quartic_rotation() {
        // 1 - N for the order-4 rotation: [[1,1],[-1,1]], 2 cosets
        let m = IntMat::from_rows(&[&[1, 1], &[-1, 1]]);
        let s = check(&m);
        assert_eq!(s.d, IntMat::from_rows(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn one_minus_cubic_rotation() {
        // 1 - N for the order-3 rotation: [[2,1],[-1,1]], 3 cosets
        let m = IntMat::from_rows(&[&[2, 1], &[-1, 1]]);
        let s = check(&m);
        assert_eq!(s.d, IntMat::from_rows(&[&[1, 0], &[0, 3]]));
    }

    #[test]
    fn singular_and_larger() {
        check(&IntMat::from_rows(&[&[1, 2], &[2, 4]]));
        check(&IntMat::from_rows(&[&[6, 4, 2], &[4, 4, 4], &[2, 4, 6]]));
        check(&IntMat::from_rows(&[&[0, 0], &[0, 0]]));
        check(&IntMat::scalar(4, 2));
    }
}
