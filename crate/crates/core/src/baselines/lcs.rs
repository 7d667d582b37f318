//! Longest common subsequence by dynamic programming.

/// Length of the longest common subsequence and one witness alignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcs {
    pub len: usize,
    /// Matched `(index in a, index in b)` pairs, increasing in both.
    pub pairs: Vec<(usize, usize)>,
}

impl Lcs {
    pub fn witness<T: Clone>(&self, a: &[T]) -> Vec<T> {
        self.pairs.iter().map(|&(i, _)| a[i].clone()).collect()
    }
}

/// `table[i][j]` is the LCS length of `a[i..]` and `b[j..]`.
fn suffix_table<T: PartialEq>(a: &[T], b: &[T]) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0; b.len() + 1]; a.len() + 1];
    for i in (0..a.len()).rev() {
        for j in (0..b.len()).rev() {
            table[i][j] = if a[i] == b[j] { table[i + 1][j + 1] + 1 } else { table[i + 1][j].max(table[i][j + 1]) };
        }
    }
    table
}

/// The witness takes each match as early as possible: at every step it
/// prefers matching `a[i]` with `b[j]`, then advancing in `a`.
pub fn lcs<T: PartialEq>(a: &[T], b: &[T]) -> Lcs {
    let table = suffix_table(a, b);
    let (mut i, mut j) = (0, 0);
    let mut pairs = Vec::with_capacity(table[0][0]);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] && table[i][j] == table[i + 1][j + 1] + 1 {
            pairs.push((i, j));
            i += 1;
            j += 1;
        } else if table[i + 1][j] >= table[i][j + 1] {
            i += 1;
        } else {
            j += 1;
        }
    }
    Lcs { len: table[0][0], pairs }
}

pub fn lcs_str(a: &str, b: &str) -> (usize, String) {
    let r = lcs(a.as_bytes(), b.as_bytes());
    let witness = r.witness(a.as_bytes()).into_iter().map(char::from).collect();
    (r.len, witness)
}

/// Every distinct set of `b` indices that some maximum alignment uses,
/// stopping after `limit` sets.
pub fn maximal_alignments<T: PartialEq>(a: &[T], b: &[T], limit: usize) -> Vec<Vec<usize>> {
    let table = suffix_table(a, b);
    let target = table[0][0];
    let mut out = Vec::new();
    if target == 0 {
        return out;
    }
    let mut path = Vec::new();
    walk(a, b, &table, 0, 0, &mut path, &mut out, limit);
    out.sort();
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
fn walk<T: PartialEq>(
    a: &[T],
    b: &[T],
    table: &[Vec<usize>],
    i: usize,
    j: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if table[i][j] == 0 {
        out.push(path.clone());
        return;
    }
    // Choose the next matched pair (i2, j2) with i2 >= i, j2 >= j that keeps
    // the alignment maximal.
    let need = table[i][j];
    for i2 in i..a.len() {
        if table[i2][j] < need {
            break;
        }
        for j2 in j..b.len() {
            if table[i2][j2] < need {
                break;
            }
            if a[i2] == b[j2] && table[i2 + 1][j2 + 1] + 1 == need {
                path.push(j2);
                walk(a, b, table, i2 + 1, j2 + 1, path, out, limit);
                path.pop();
            }
        }
    }
}
