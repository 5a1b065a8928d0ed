//! Dense linear algebra over the prime field.

use super::Fp;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<Fp>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for v in rows[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for k in 0..ncols {
                    let d = rows[r][k] * f;
                    rows[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Fp>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: i64) -> Fp {
        Fp::new(v)
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![f(1), f(2)], vec![f(2), f(4)]]), 1);
        assert_eq!(rank(&[vec![f(1), f(0)], vec![f(0), f(3)], vec![f(1), f(1)]]), 2);
    }
}
