//! Exact rational elimination on small dense matrices.

use num_integer::Integer;
use num_rational::Ratio;

pub(crate) type Q = Ratio<i128>;

/// Reduced row echelon form, pivoting on the columns listed in `column_order`
/// (earlier entries are preferred as pivots). Returns the nonzero rows and
/// the pivot column of each.
pub(crate) fn rref(mut rows: Vec<Vec<Q>>, column_order: &[usize]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut next = 0;
    for &col in column_order {
        let Some(found) = (next..rows.len()).find(|&k| !is_zero(&rows[k][col])) else {
            continue;
        };
        rows.swap(next, found);
        let pivot = rows[next][col];
        for x in rows[next].iter_mut() {
            *x /= pivot;
        }
        let pivot_row = rows[next].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == next || is_zero(&row[col]) {
                continue;
            }
            let factor = row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= factor * p;
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    (rows, pivots)
}

/// Kernel vector of an integer matrix with `cols` columns when the kernel is
/// one-dimensional, scaled to a primitive integer vector.
pub(crate) fn kernel_line(rows: &[Vec<i64>], cols: usize) -> Option<Vec<i64>> {
    let q_rows: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect();
    let order: Vec<usize> = (0..cols).collect();
    let (reduced, pivots) = rref(q_rows, &order);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Q::from_integer(0); cols];
    v[free] = Q::from_integer(1);
    for (row, &p) in reduced.iter().zip(&pivots) {
        v[p] = -row[free];
    }
    Some(primitive_integer(&v))
}

/// Clears denominators and divides by the gcd of the entries.
pub(crate) fn primitive_integer(v: &[Q]) -> Vec<i64> {
    let lcm = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    ints.iter()
        .map(|&x| i64::try_from(if g == 0 { x } else { x / g }).expect("small coefficients"))
        .collect()
}

pub(crate) fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, x| acc.gcd(x))
}

fn is_zero(x: &Q) -> bool {
    *x.numer() == 0
}
