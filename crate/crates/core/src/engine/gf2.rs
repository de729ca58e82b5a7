//! Dense GF(2) linear systems with forced-variable extraction and
//! infeasibility witnesses (the set of original rows combining to 0 = 1).

#[derive(Debug, Clone)]
pub struct Gf2System {
    ncols: usize,
    words: usize,
    rows: Vec<Row>,
}

#[derive(Debug, Clone)]
struct Row {
    bits: Vec<u64>,
    rhs: bool,
    /// which original rows were combined into this one
    history: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Outcome {
    /// Rows listed by original index combine to 0 = 1.
    Infeasible { rows: Vec<usize> },
    /// Variables taking the same value in every solution.
    Feasible { forced: Vec<(usize, bool)> },
}

impl Gf2System {
    pub fn new(ncols: usize) -> Self {
        Gf2System { ncols, words: ncols.div_ceil(64), rows: Vec::new() }
    }

    pub fn add_row(&mut self, cols: impl IntoIterator<Item = usize>, rhs: bool) -> usize {
        let id = self.rows.len();
        let mut bits = vec![0u64; self.words];
        for c in cols {
            debug_assert!(c < self.ncols);
            bits[c / 64] ^= 1 << (c % 64);
        }
        let hwords = (id + 1).div_ceil(64);
        let mut history = vec![0u64; hwords];
        history[id / 64] |= 1 << (id % 64);
        self.rows.push(Row { bits, rhs, history });
        id
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form, then classify.
    pub fn solve(&self) -> Gf2Outcome {
        let mut rows = self.rows.clone();
        let hwords = self.rows.len().div_ceil(64).max(1);
        for r in &mut rows {
            r.history.resize(hwords, 0);
        }
        let mut pivot_row = 0usize;
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row)
        for col in 0..self.ncols {
            let Some(found) = (pivot_row..rows.len())
                .find(|&r| rows[r].bits[col / 64] >> (col % 64) & 1 == 1)
            else {
                continue;
            };
            rows.swap(pivot_row, found);
            let (head, tail) = rows.split_at_mut(pivot_row + 1);
            let p = &head[pivot_row];
            for r in head[..pivot_row].iter_mut().chain(tail.iter_mut()) {
                if r.bits[col / 64] >> (col % 64) & 1 == 1 {
                    for w in 0..p.bits.len() {
                        r.bits[w] ^= p.bits[w];
                    }
                    for w in 0..hwords {
                        r.history[w] ^= p.history[w];
                    }
                    r.rhs ^= p.rhs;
                }
            }
            pivots.push((col, pivot_row));
            pivot_row += 1;
        }
        // zero rows with rhs 1 witness infeasibility
        for r in &rows[pivot_row..] {
            if r.rhs {
                let mut witness = Vec::new();
                for (w, &word) in r.history.iter().enumerate() {
                    for b in 0..64 {
                        if word >> b & 1 == 1 {
                            witness.push(w * 64 + b);
                        }
                    }
                }
                return Gf2Outcome::Infeasible { rows: witness };
            }
        }
        let mut forced = Vec::new();
        for &(col, r) in &pivots {
            let ones: usize = rows[r].bits.iter().map(|w| w.count_ones() as usize).sum();
            if ones == 1 {
                forced.push((col, rows[r].rhs));
            }
        }
        forced.sort_unstable();
        Gf2Outcome::Feasible { forced }
    }

    /// Does the system entail the single-variable fact `col = value`?
    pub fn entails(&self, cols: impl IntoIterator<Item = usize>, rhs: bool) -> bool {
        let mut sys = self.clone();
        sys.add_row(cols, !rhs);
        matches!(sys.solve(), Gf2Outcome::Infeasible { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_and_free() {
        // x0 + x1 = 1, x1 = 1 => x0 = 0 forced; x2 free
        let mut sys = Gf2System::new(3);
        sys.add_row([0, 1], true);
        sys.add_row([1], true);
        match sys.solve() {
            Gf2Outcome::Feasible { forced } => {
                assert_eq!(forced, vec![(0, false), (1, true)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_witness_names_rows() {
        // rows 0,1,2 combine to 0=1; row 3 irrelevant
        let mut sys = Gf2System::new(4);
        sys.add_row([0, 1], true);
        sys.add_row([1, 2], false);
        sys.add_row([0, 2], false);
        sys.add_row([3], true);
        match sys.solve() {
            Gf2Outcome::Infeasible { rows } => assert_eq!(rows, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn entailment() {
        let mut sys = Gf2System::new(3);
        sys.add_row([0, 1], true);
        sys.add_row([1, 2], false);
        sys.add_row([2], true);
        assert!(sys.entails([0], false));
        assert!(sys.entails([1], true));
        assert!(!sys.entails([0], true));
    }
}
