//! Rank of sparse matrices over `F_p`, `p < 2^32`.

/// Sparse row: `(column, nonzero value < p)`, columns strictly increasing.
pub type SparseRow = Vec<(usize, u64)>;

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Incremental row echelon form. Each stored row is monic at its leading column
/// and rows are reduced one at a time into a dense scratch buffer.
pub struct Echelon {
    p: u64,
    ncols: usize,
    pivots: Vec<Option<SparseRow>>,
    rank: usize,
    scratch: Vec<u64>,
}

impl Echelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        Self { p, ncols, pivots: vec![None; ncols], rank: 0, scratch: vec![0; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` against the current pivots; returns whether it was independent.
    pub fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let Some(start) = row.iter().map(|&(c, _)| c).min() else {
            return false;
        };
        let p = self.p;
        for &(c, v) in row {
            self.scratch[c] = (self.scratch[c] + v) % p;
        }
        let mut added = false;
        for col in start..self.ncols {
            let lead = self.scratch[col];
            if lead == 0 {
                continue;
            }
            match &self.pivots[col] {
                Some(prow) => {
                    for &(c, v) in prow {
                        self.scratch[c] = (self.scratch[c] + p - lead * v % p) % p;
                    }
                }
                None => {
                    let inv = inv_mod(lead, p);
                    let new_row: SparseRow = (col..self.ncols)
                        .filter(|&c| self.scratch[c] != 0)
                        .map(|c| (c, self.scratch[c] * inv % p))
                        .collect();
                    self.pivots[col] = Some(new_row);
                    self.rank += 1;
                    added = true;
                    break;
                }
            }
        }
        self.scratch.iter_mut().for_each(|x| *x = 0);
        added
    }
}

pub fn rank_mod_p(rows: &[SparseRow], ncols: usize, p: u64) -> usize {
    let mut ech = Echelon::new(ncols, p);
    for row in rows {
        if ech.rank() == ncols {
            break;
        }
        ech.insert(row);
    }
    ech.rank()
}
