//! Smith normal form over the integers, tracking column operations.
//!
//! For a relation matrix `A` (rows are relations among `r` generators) this
//! finds a unimodular `V` with `U·A·V = diag(d_1, …, d_r)`. Mapping a
//! coordinate row vector `x` to `x·V` then identifies `Z^r / rowspace(A)`
//! with `⊕ Z/d_j`.

#[derive(Debug, Clone)]
pub(crate) struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next.
    pub diagonal: Vec<i128>,
    /// `r × r` column transform.
    pub transform: Vec<Vec<i128>>,
}

pub(crate) fn smith_normal_form(mut a: Vec<Vec<i128>>, cols: usize) -> SmithForm {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let col_sub = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in a.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };

    let mut diagonal = Vec::with_capacity(cols);
    for t in 0..cols.min(rows) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            col_swap(&mut a, &mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    col_sub(&mut a, &mut v, j, t, q);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce d_t | every remaining entry
            let p = a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        if t < rows && a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(if t < rows { a[t][t] } else { 0 });
    }
    diagonal.resize(cols, 0);
    SmithForm { diagonal, transform: v }
}
