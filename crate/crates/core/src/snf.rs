//! Smith normal form over the integers, tracking the column transform.
//!
//! For a relation matrix `R` (rows generate a lattice `L` in `Z^k`) this
//! computes unimodular `P`, `Q` with `P R Q = D` diagonal. Only `Q` is kept:
//! the map `v -> v Q` (coordinates then reduced modulo the diagonal) is an
//! isomorphism `Z^k / L -> ⊕ Z/D_jj`.

pub(crate) struct Smith {
    pub diag: Vec<i128>,
    /// k × k column transform, row-major.
    pub q: Vec<Vec<i128>>,
}

pub(crate) fn smith(mut m: Vec<Vec<i128>>, cols: usize) -> Smith {
    let rows = m.len();
    let mut q: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let swap_cols = |m: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        if a != b {
            for row in m.iter_mut() {
                row.swap(a, b);
            }
            for row in q.iter_mut() {
                row.swap(a, b);
            }
        }
    };
    // col_dst -= f * col_src
    let sub_col = |m: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        if f != 0 {
            for row in m.iter_mut() {
                row[dst] -= f * row[src];
            }
            for row in q.iter_mut() {
                row[dst] -= f * row[src];
            }
        }
    };

    let mut diag = Vec::with_capacity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest non-zero pivot in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            swap_cols(&mut m, &mut q, t, pj);

            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let f = m[i][t] / p;
                if f != 0 {
                    for j in t..cols {
                        m[i][j] -= f * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let f = m[t][j] / p;
                sub_col(&mut m, &mut q, j, t, f);
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        if t < rows && m[t][t] < 0 {
            for v in m[t].iter_mut() {
                *v = -*v;
            }
        }
        diag.push(if t < rows { m[t][t] } else { 0 });
    }
    while diag.len() < cols {
        diag.push(0);
    }
    Smith { diag, q }
}
