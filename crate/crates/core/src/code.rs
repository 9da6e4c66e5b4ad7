//! Additive codes over GF(9) generated by `adjacency + w*I`.

use std::fmt;

use thiserror::Error;

use crate::field::{F3Vector, F9Vector, F3, F9};
use crate::graph::Graph;
use crate::packed::PackedVec;

pub const MATRIX_HEADER_SUFFIX: &str = "field=GF9 basis=1,w modulus=w2=w+1";
pub const DEFAULT_ENUMERATOR_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator must be square: {rows} rows of length {len}")]
    NotSquare { rows: usize, len: usize },
    #[error("coefficient vector has length {found}, code has {expected} generators")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge weight must be nonzero in GF(3)")]
    ZeroEdgeWeight,
    #[error("weight enumerator refused: n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("matrix file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Square generator matrix over GF(9), rows kept bit-sliced.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<PackedVec>,
}

impl fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(PackedVec::to_f9)).finish()
    }
}

impl GeneratorMatrix {
    pub fn from_rows(rows: &[F9Vector]) -> Result<Self, CodeError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(CodeError::NotSquare { rows: n, len: bad.len() });
        }
        Ok(GeneratorMatrix { rows: rows.iter().map(PackedVec::from_f9).collect() })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> F9 {
        self.rows[i].get(j)
    }

    pub fn set_entry(&mut self, i: usize, j: usize, x: F9) {
        self.rows[i].set(j, x);
    }

    pub fn row(&self, i: usize) -> F9Vector {
        self.rows[i].to_f9()
    }

    pub fn packed_rows(&self) -> &[PackedVec] {
        &self.rows
    }

    pub fn to_rows(&self) -> Vec<F9Vector> {
        self.rows.iter().map(PackedVec::to_f9).collect()
    }

    /// Serializes in the line format `n=<n> field=GF9 ...` followed by one
    /// line of space-separated tokens per row.
    pub fn to_matrix_file(&self) -> String {
        let n = self.n();
        let mut out = format!("n={n} {MATRIX_HEADER_SUFFIX}\n");
        for r in &self.rows {
            let toks: Vec<String> = (0..n).map(|j| r.get(j).to_string()).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_matrix_file(text: &str) -> Result<Self, CodeError> {
        let err = |line: usize, msg: String| CodeError::Parse { line, msg };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let rest = header
            .strip_prefix("n=")
            .and_then(|h| h.split_once(' '))
            .filter(|(_, suffix)| *suffix == MATRIX_HEADER_SUFFIX)
            .ok_or_else(|| err(1, format!("bad header {header:?}")))?;
        let n: usize = rest.0.parse().map_err(|_| err(1, format!("bad length {:?}", rest.0)))?;
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if rows.len() == n {
                return Err(err(lineno, "trailing content after last row".into()));
            }
            let row = line
                .split(' ')
                .map(F9::parse_token)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| err(lineno, e.to_string()))?;
            if row.len() != n {
                return Err(err(lineno, format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(F9Vector::new(row));
        }
        if rows.len() != n {
            return Err(err(n + 2, format!("expected {n} rows, found {}", rows.len())));
        }
        GeneratorMatrix::from_rows(&rows)
    }
}

/// Generator `edge_weight * adjacency + w*I` of the graph code.
pub fn graph_code(g: &Graph, edge_weight: F3) -> Result<GeneratorMatrix, CodeError> {
    if edge_weight.is_zero() {
        return Err(CodeError::ZeroEdgeWeight);
    }
    let n = g.order();
    let off = F9::embed(edge_weight);
    let rows = (0..n)
        .map(|i| {
            let mut r = PackedVec::zeros(n);
            r.set(i, F9::OMEGA);
            for j in g.neighbors(i).iter() {
                r.set(j, off);
            }
            r
        })
        .collect();
    Ok(GeneratorMatrix { rows })
}

/// Reduced row echelon form over GF(3) on interleaved columns `2j + plane`,
/// visiting columns in `columns` order. Returns `(row, column)` pivots; the
/// pivot rows are moved to the front of `rows`.
pub(crate) fn f3_eliminate(rows: &mut [PackedVec], columns: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in columns {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].column(col).is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r].column(col) == F3::TWO {
            rows[r] = rows[r].scaled(F3::TWO);
        }
        let pivot = rows[r].clone();
        for (i, other) in rows.iter_mut().enumerate() {
            let c = other.column(col);
            if i != r && !c.is_zero() {
                other.add_scaled(&pivot, -c);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank over GF(3) of the rows viewed as vectors of length `2n`.
pub fn f3_rank(gen: &GeneratorMatrix) -> usize {
    let mut rows = gen.rows.clone();
    let columns: Vec<usize> = (0..2 * gen.n()).collect();
    f3_eliminate(&mut rows, &columns).len()
}

/// GF(3)-linear span of the generator rows.
#[derive(Clone, Debug)]
pub struct AdditiveCode {
    gen: GeneratorMatrix,
    k3: usize,
}

impl AdditiveCode {
    pub fn new(gen: GeneratorMatrix) -> Self {
        let k3 = f3_rank(&gen);
        AdditiveCode { gen, k3 }
    }

    pub fn from_graph(g: &Graph) -> Self {
        AdditiveCode::new(graph_code(g, F3::ONE).expect("unit edge weight"))
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.n()
    }

    /// Dimension over GF(3); the code has `3^k3` codewords.
    pub fn k3(&self) -> usize {
        self.k3
    }

    pub fn rows(&self) -> &[PackedVec] {
        &self.gen.rows
    }

    /// Trace-Hermitian orthogonality to every generator, i.e. membership in the dual.
    pub fn is_orthogonal_to(&self, v: &F9Vector) -> bool {
        let p = PackedVec::from_f9(v);
        v.len() == self.n() && self.gen.rows.iter().all(|r| r.symplectic(&p).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualReport {
    pub self_dual: bool,
    pub n: usize,
    pub rank: usize,
    /// First generator pair with nonzero trace-Hermitian product.
    pub violation: Option<(usize, usize, F3)>,
}

/// Self-orthogonal with `3^n` codewords implies `C = C^perp`, since
/// `|C^perp| = 3^(2n) / |C|`.
pub fn is_self_dual(code: &AdditiveCode) -> SelfDualReport {
    let rows = code.rows();
    let mut violation = None;
    'outer: for i in 0..rows.len() {
        for j in i..rows.len() {
            let v = rows[i].symplectic(&rows[j]);
            if !v.is_zero() {
                violation = Some((i, j, v));
                break 'outer;
            }
        }
    }
    SelfDualReport { self_dual: violation.is_none() && code.k3() == code.n(), n: code.n(), rank: code.k3(), violation }
}

pub fn codeword(code: &AdditiveCode, coeffs: &F3Vector) -> Result<F9Vector, CodeError> {
    if coeffs.len() != code.n() {
        return Err(CodeError::LengthMismatch { expected: code.n(), found: coeffs.len() });
    }
    let mut acc = PackedVec::zeros(code.n());
    for (row, &a) in code.rows().iter().zip(coeffs.entries()) {
        acc.add_scaled(row, a);
    }
    Ok(acc.to_f9())
}

/// Counts codewords by weight, `A_0..A_n`, over all `3^n` coefficient vectors.
/// Linearly dependent generators are counted with multiplicity, so the
/// total is `3^n` and each codeword appears `3^(n - k3)` times.
pub fn weight_enumerator(code: &AdditiveCode, cap: usize) -> Result<Vec<u64>, CodeError> {
    let n = code.n();
    if n > cap {
        return Err(CodeError::CapExceeded { n, cap });
    }
    let rows = code.rows();
    let mut counts = vec![0u64; n + 1];
    let mut digits = vec![0u8; n];
    let mut word = PackedVec::zeros(n);
    counts[0] = 1;
    // odometer: bumping digit i adds row i; a wrap 2 -> 0 is also +row i
    'count: loop {
        let mut i = 0;
        loop {
            if i == n {
                break 'count;
            }
            word.add_assign(&rows[i]);
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        counts[word.weight()] += 1;
    }
    let dup = 3u64.pow((n - code.k3()) as u32);
    Ok(counts.into_iter().map(|c| c / dup).collect())
}

/// Code parameters `(n, 3^k3, d)` and the qutrit label `[[n, 0, d]]` for self-dual codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k3: usize,
    pub d: Option<usize>,
    pub qutrit: Option<String>,
}

impl CodeParams {
    pub fn new(report: &SelfDualReport, d: Option<usize>) -> Self {
        let qutrit = (report.self_dual && report.rank == report.n).then(|| {
            let d = d.map_or_else(|| "?".to_string(), |d| d.to_string());
            format!("[[{}, 0, {}]]_3", report.n, d)
        });
        CodeParams { n: report.n, k3: report.rank, d, qutrit }
    }

    pub fn additive_label(&self) -> String {
        match self.d {
            Some(d) => format!("({}, 3^{}, {})_9", self.n, self.k3, d),
            None => format!("({}, 3^{})_9", self.n, self.k3),
        }
    }
}
