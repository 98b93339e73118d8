//! Dense Gaussian elimination over F_{q²}.

use crate::gf::{Field, FieldElement};

pub type Matrix = Vec<Vec<FieldElement>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let s = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, s);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// `x · mat`.
pub fn vec_mul(field: &Field, x: &[FieldElement], mat: &[Vec<FieldElement>]) -> Vec<FieldElement> {
    let ncols = mat.first().map_or(0, Vec::len);
    let mut out = vec![FieldElement::ZERO; ncols];
    for (&a, row) in x.iter().zip(mat) {
        if a.is_zero() {
            continue;
        }
        for (o, &g) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(a, g));
        }
    }
    out
}

/// Finds x with `x · basis = target`, where `basis` has full row rank.
pub fn solve_in_row_space(
    field: &Field,
    basis: &[Vec<FieldElement>],
    target: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    let k = basis.len();
    // Augment basisᵀ with target as the last column and reduce.
    let ncols = target.len();
    let mut aug: Matrix = (0..ncols)
        .map(|c| {
            let mut row: Vec<FieldElement> = basis.iter().map(|b| b[c]).collect();
            row.push(target[c]);
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][k];
    }
    (vec_mul(field, &x, basis) == target).then_some(x)
}
