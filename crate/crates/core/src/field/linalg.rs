//! Linear algebra over `Z/p` for additive (F_p-linear) maps on the
//! coefficient space of the tower.

/// An F_p-linear endomorphism prepared for repeated solving.
///
/// Row reduction is done once: `transform * matrix = reduced`, with `reduced`
/// in reduced row echelon form. Solving `L x = c` then costs one
/// matrix-vector product.
#[derive(Clone, Debug)]
pub(crate) struct LinearSolver {
    p: u32,
    dim: usize,
    transform: Vec<Vec<u32>>,
    reduced: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    kernel: Vec<Vec<u32>>,
}

impl LinearSolver {
    /// `columns[j]` is the image of the j-th basis vector.
    pub(crate) fn new(columns: &[Vec<u32>], p: u32) -> Self {
        let dim = columns.len();
        let p64 = p as u64;
        let mut a: Vec<Vec<u32>> = (0..dim)
            .map(|r| (0..dim).map(|c| columns[c][r]).collect())
            .collect();
        let mut t: Vec<Vec<u32>> = (0..dim)
            .map(|r| (0..dim).map(|c| u32::from(r == c)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..dim {
            let Some(piv) = (row..dim).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, piv);
            t.swap(row, piv);
            let inv = inv_mod(a[row][col], p) as u64;
            for v in a[row].iter_mut().chain(t[row].iter_mut()) {
                *v = (*v as u64 * inv % p64) as u32;
            }
            for r in 0..dim {
                if r == row || a[r][col] == 0 {
                    continue;
                }
                let factor = a[r][col] as u64;
                for c in 0..dim {
                    a[r][c] = ((a[r][c] as u64 + p64 - factor * a[row][c] as u64 % p64) % p64) as u32;
                    t[r][c] = ((t[r][c] as u64 + p64 - factor * t[row][c] as u64 % p64) % p64) as u32;
                }
            }
            pivots.push(col);
            row += 1;
            if row == dim {
                break;
            }
        }
        let kernel = (0..dim)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u32; dim];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[r][free]) % p;
                }
                v
            })
            .collect();
        LinearSolver {
            p,
            dim,
            transform: t,
            reduced: a,
            pivots,
            kernel,
        }
    }

    pub(crate) fn kernel_basis(&self) -> &[Vec<u32>] {
        &self.kernel
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One solution of `L x = c`, or `None` when `c` is outside the image.
    pub(crate) fn particular(&self, c: &[u32]) -> Option<Vec<u32>> {
        let p64 = self.p as u64;
        let tc: Vec<u32> = self
            .transform
            .iter()
            .map(|row| {
                (row.iter()
                    .zip(c)
                    .map(|(&a, &b)| a as u64 * b as u64 % p64)
                    .sum::<u64>()
                    % p64) as u32
            })
            .collect();
        if tc[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u32; self.dim];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tc[r];
        }
        debug_assert!(self.reduced.len() == self.dim);
        Some(x)
    }

    /// Every solution of `L x = c`: the particular solution shifted by the
    /// span of the kernel.
    pub(crate) fn solve_all(&self, c: &[u32]) -> Vec<Vec<u32>> {
        let Some(base) = self.particular(c) else {
            return Vec::new();
        };
        let mut out = vec![base];
        for kv in &self.kernel {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for s in 0..self.p {
                    next.push(
                        v.iter()
                            .zip(kv)
                            .map(|(&a, &b)| ((a as u64 + s as u64 * b as u64) % self.p as u64) as u32)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_deficient_map_over_f3() {
        // columns of [[1,2],[2,1]] over F_3: second column is twice the first
        let s = LinearSolver::new(&[vec![1, 2], vec![2, 1]], 3);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.kernel_basis().len(), 1);
        assert_eq!(s.solve_all(&[1, 2]).len(), 3);
        assert!(s.solve_all(&[1, 0]).is_empty());
    }
}
