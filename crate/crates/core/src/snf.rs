//! Smith normal form of integer matrices.

/// `U * A * V = D` with `D` diagonal, each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    /// Nonzero invariant factors, positive, in divisibility order.
    pub invariants: Vec<i128>,
    /// `V^-1`; its first `invariants.len()` rows span the saturation of the row space of `A`.
    pub v_inv: Vec<Vec<i128>>,
}

pub fn smith(a: &[Vec<i128>]) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let mut v_inv: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut invariants = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let best = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                v_inv.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    // column op col_j -= q col_t, so V^-1 gets row_t += q row_j
                    for k in 0..n {
                        v_inv[t][k] += q * v_inv[j][k];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if t < m && a[t][t] != 0 {
            invariants.push(a[t][t].abs());
        } else {
            break;
        }
    }
    Smith { invariants, v_inv }
}

/// Invariant factors greater than 1: the torsion of `Z^rows / A^T Z^cols`
/// style cokernels.
pub fn torsion(a: &[Vec<i128>]) -> Vec<i128> {
    smith(a).invariants.into_iter().filter(|&d| d != 1).collect()
}

/// Integer basis of `span_Q(rows) ∩ Z^n`.
pub fn saturate(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let s = smith(rows);
    s.v_inv.into_iter().take(s.invariants.len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrices() {
        // B3 and D4 Cartan matrices
        let b3 = vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        assert_eq!(torsion(&b3), vec![2]);
        let d4 = vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]];
        assert_eq!(torsion(&d4), vec![2, 2]);
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(torsion(&a2), vec![3]);
    }

    #[test]
    fn divisibility_chain() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(smith(&m).invariants, vec![1, 6]);
        let z = vec![vec![0, 0], vec![0, 0]];
        assert!(smith(&z).invariants.is_empty());
    }

    #[test]
    fn saturation() {
        let rows = vec![vec![2, 4, 0]];
        assert_eq!(saturate(&rows).len(), 1);
        let sat = &saturate(&rows)[0];
        let g = sat.iter().fold(0i128, |g, &x| num_gcd(g, x));
        assert_eq!(g, 1);
        assert_eq!(sat[0] * 2, sat[1]);
    }

    fn num_gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            num_gcd(b, a % b)
        }
    }
}
