//! Coxeter matrices and the standard named families.

use serde::Deserialize;

use crate::error::{Error, Result};

/// The symmetric matrix of relation orders `m(s,t)`: diagonal 1, off-diagonal
/// at least 2. Only finite entries are accepted; an entry of 0 is the
/// conventional infinity marker in matrix files and is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

#[derive(Deserialize)]
struct MatrixFile {
    rank: usize,
    m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(rank: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::BadMatrix("rank must be positive".into()));
        }
        if rank > 63 {
            return Err(Error::BadMatrix(format!("rank {rank} exceeds 63")));
        }
        if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
            return Err(Error::BadMatrix(format!("matrix is not {rank}x{rank}")));
        }
        let mut entries = vec![0u32; rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                let m = rows[i][j];
                if m == 0 {
                    return Err(Error::BadMatrix(format!(
                        "entry m(s{i},s{j}) = 0 marks infinite order; only finite groups are supported"
                    )));
                }
                if i == j && m != 1 {
                    return Err(Error::BadMatrix(format!("diagonal entry m(s{i},s{i}) must be 1")));
                }
                if i != j && m < 2 {
                    return Err(Error::BadMatrix(format!(
                        "off-diagonal entry m(s{i},s{j}) must be at least 2"
                    )));
                }
                if rows[j][i] != m {
                    return Err(Error::BadMatrix(format!(
                        "matrix is not symmetric at (s{i},s{j})"
                    )));
                }
                entries[i * rank + j] = m;
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// Parse the JSON file format `{"rank": n, "m": [[...]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::BadMatrix(format!("bad matrix json: {e}")))?;
        Self::new(file.rank, file.m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, s: usize, t: usize) -> u32 {
        self.entries[s * self.rank + t]
    }

    /// Diagram edges `(s, t, m)` with `s < t` and `m >= 3`.
    pub fn edges(&self) -> Vec<(u8, u8, u32)> {
        let mut out = Vec::new();
        for s in 0..self.rank {
            for t in s + 1..self.rank {
                let m = self.entry(s, t);
                if m >= 3 {
                    out.push((s as u8, t as u8, m));
                }
            }
        }
        out
    }

    fn from_fn(rank: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| f(i, j)).collect())
            .collect();
        CoxeterMatrix::new(rank, rows).expect("named matrix is valid")
    }

    fn path(rank: usize, label: impl Fn(usize) -> u32) -> Self {
        Self::from_fn(rank, |i, j| {
            if i == j {
                1
            } else if i.abs_diff(j) == 1 {
                label(i.min(j))
            } else {
                2
            }
        })
    }

    /// Type `A_n` (the symmetric group `S_{n+1}`), `n >= 1`.
    pub fn type_a(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadMatrix("A_n requires n >= 1".into()));
        }
        Ok(Self::path(n, |_| 3))
    }

    /// Type `B_n` (the hyperoctahedral group), `n >= 2`.
    pub fn type_b(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadMatrix("B_n requires n >= 2".into()));
        }
        Ok(Self::path(n, |i| if i == n - 2 { 4 } else { 3 }))
    }

    /// Type `D_n`: a path on `s0..s_{n-2}` with `s_{n-1}` attached to `s_{n-3}`.
    pub fn type_d(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadMatrix("D_n requires n >= 2".into()));
        }
        Ok(Self::from_fn(n, |i, j| {
            let path_edge = i.abs_diff(j) == 1 && i.max(j) < n - 1;
            let fork_edge = i.min(j) + 3 == n && i.max(j) == n - 1;
            if i == j {
                1
            } else if path_edge || fork_edge {
                3
            } else {
                2
            }
        }))
    }

    /// Types `E6`, `E7`, `E8`: a path on `s0..s_{n-2}` with `s_{n-1}` attached to `s2`.
    pub fn type_e(n: usize) -> Result<Self> {
        if !(6..=8).contains(&n) {
            return Err(Error::BadMatrix("E_n requires n in {6,7,8}".into()));
        }
        Ok(Self::from_fn(n, |i, j| {
            let path_edge = i.abs_diff(j) == 1 && i.max(j) < n - 1;
            let branch_edge = i.min(j) == 2 && i.max(j) == n - 1;
            if i == j {
                1
            } else if path_edge || branch_edge {
                3
            } else {
                2
            }
        }))
    }

    /// Type `F4`: path with labels 3, 4, 3.
    pub fn type_f4() -> Self {
        Self::path(4, |i| if i == 1 { 4 } else { 3 })
    }

    /// Types `H3`, `H4`: path with first label 5.
    pub fn type_h(n: usize) -> Result<Self> {
        if !(3..=4).contains(&n) {
            return Err(Error::BadMatrix("H_n requires n in {3,4}".into()));
        }
        Ok(Self::path(n, |i| if i == 0 { 5 } else { 3 }))
    }

    /// The dihedral type `I2(m)`, `m >= 3`.
    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::BadMatrix("I2(m) requires m >= 3".into()));
        }
        Ok(Self::from_fn(2, |i, j| if i == j { 1 } else { m }))
    }
}
