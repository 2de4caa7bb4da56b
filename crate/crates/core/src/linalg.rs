//! Dense vectors and matrices over a built-in semiring, the Kleene star,
//! the Bellman equation `X = H ⊙ X ⊕ F` and path problems on graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::par;
use crate::report::AxiomReport;
use crate::semiring::{SemiringDescriptor, SemiringKind, SemiringValue};

#[derive(Clone, Debug, PartialEq)]
pub struct TropVector {
    d: SemiringDescriptor,
    values: Vec<SemiringValue>,
}

impl TropVector {
    pub fn new(d: SemiringDescriptor, values: Vec<SemiringValue>) -> Result<Self> {
        for &v in &values {
            d.check(v)?;
        }
        Ok(TropVector { d, values })
    }

    pub fn from_f64(d: SemiringDescriptor, xs: &[f64]) -> Result<Self> {
        let values = xs.iter().map(|&x| d.from_f64(x)).collect::<Result<_>>()?;
        Ok(TropVector { d, values })
    }

    pub fn zeros(d: SemiringDescriptor, n: usize) -> Self {
        TropVector { d, values: vec![d.zero(); n] }
    }

    pub fn ones(d: SemiringDescriptor, n: usize) -> Self {
        TropVector { d, values: vec![d.one(); n] }
    }

    /// Unit vector: `ONE` at `i`, `ZERO` elsewhere.
    pub fn unit(d: SemiringDescriptor, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(d, n);
        v.values[i] = d.one();
        v
    }

    pub fn descriptor(&self) -> SemiringDescriptor {
        self.d
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> SemiringValue {
        self.values[i]
    }

    pub fn values(&self) -> &[SemiringValue] {
        &self.values
    }

    /// Real payloads; panics on Boolean or integer carriers.
    pub fn reals(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| v.as_real().expect("real carrier"))
            .collect()
    }

    fn same_shape(&self, other: &TropVector) -> Result<()> {
        if self.d != other.d {
            return Err(Error::Shape(format!(
                "descriptor mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &TropVector, f: impl Fn(SemiringValue, SemiringValue) -> SemiringValue) -> Result<TropVector> {
        self.same_shape(other)?;
        Ok(TropVector {
            d: self.d,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// Entrywise `⊕`.
    pub fn add(&self, other: &TropVector) -> Result<TropVector> {
        self.zip(other, |a, b| self.d.plus(a, b))
    }

    /// Entrywise meet.
    pub fn meet(&self, other: &TropVector) -> Result<TropVector> {
        self.zip(other, |a, b| self.d.meet(a, b))
    }

    /// Entrywise `⊙`.
    pub fn hadamard(&self, other: &TropVector) -> Result<TropVector> {
        self.zip(other, |a, b| self.d.times(a, b))
    }

    pub fn scale(&self, k: SemiringValue) -> Result<TropVector> {
        self.d.check(k)?;
        Ok(TropVector {
            d: self.d,
            values: self.values.iter().map(|&v| self.d.times(k, v)).collect(),
        })
    }

    /// Entrywise standard order.
    pub fn leq(&self, other: &TropVector) -> bool {
        self.same_shape(other).is_ok()
            && self.values.iter().zip(&other.values).all(|(&a, &b)| self.d.leq(a, b))
    }

    /// Sum of all entries.
    pub fn total(&self) -> SemiringValue {
        self.values.iter().fold(self.d.zero(), |acc, &v| self.d.plus(acc, v))
    }

    /// Same payloads under another descriptor.
    pub fn recast(&self, d: SemiringDescriptor) -> Result<TropVector> {
        TropVector::new(d, self.values.clone())
    }
}

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn vec_scale(k: SemiringValue, x: &TropVector) -> Result<TropVector> {
    x.scale(k)
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TropMatrix {
    d: SemiringDescriptor,
    rows: usize,
    cols: usize,
    values: Vec<SemiringValue>,
}

impl TropMatrix {
    pub fn new(d: SemiringDescriptor, rows: usize, cols: usize, values: Vec<SemiringValue>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        for &v in &values {
            d.check(v)?;
        }
        Ok(TropMatrix { d, rows, cols, values })
    }

    pub fn from_rows(d: SemiringDescriptor, rows: Vec<Vec<SemiringValue>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(d, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_f64_rows(d: SemiringDescriptor, rows: &[Vec<f64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| d.from_f64(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(d, rows)
    }

    pub fn zeros(d: SemiringDescriptor, rows: usize, cols: usize) -> Self {
        TropMatrix { d, rows, cols, values: vec![d.zero(); rows * cols] }
    }

    pub fn identity(d: SemiringDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(d, n, n);
        for i in 0..n {
            m.values[i * n + i] = d.one();
        }
        m
    }

    /// Column matrix from a vector.
    pub fn column(x: &TropVector) -> Self {
        TropMatrix {
            d: x.descriptor(),
            rows: x.len(),
            cols: 1,
            values: x.values().to_vec(),
        }
    }

    pub fn descriptor(&self) -> SemiringDescriptor {
        self.d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> SemiringValue {
        self.values[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: SemiringValue) {
        self.values[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[SemiringValue] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> TropVector {
        TropVector {
            d: self.d,
            values: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    pub fn values(&self) -> &[SemiringValue] {
        &self.values
    }

    pub fn transpose(&self) -> TropMatrix {
        let mut t = TropMatrix::zeros(self.d, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise standard order.
    pub fn leq(&self, other: &TropMatrix) -> bool {
        self.d == other.d
            && self.rows == other.rows
            && self.cols == other.cols
            && self.values.iter().zip(&other.values).all(|(&a, &b)| self.d.leq(a, b))
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn mat_add(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    if a.d != b.d || a.rows != b.rows || a.cols != b.cols {
        return Err(Error::Shape(format!(
            "cannot add {}x{} {} and {}x{} {}",
            a.rows, a.cols, a.d, b.rows, b.cols, b.d
        )));
    }
    let d = a.d;
    Ok(TropMatrix {
        d,
        rows: a.rows,
        cols: a.cols,
        values: a.values.iter().zip(&b.values).map(|(&x, &y)| d.plus(x, y)).collect(),
    })
}

pub fn mat_mul(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    if a.d != b.d || a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} {} by {}x{} {}",
            a.rows, a.cols, a.d, b.rows, b.cols, b.d
        )));
    }
    let d = a.d;
    let rows = par::map_indices(a.rows, |i| {
        (0..b.cols)
            .map(|k| {
                (0..a.cols).fold(d.zero(), |acc, j| d.plus(acc, d.times(a.get(i, j), b.get(j, k))))
            })
            .collect::<Vec<_>>()
    });
    Ok(TropMatrix {
        d,
        rows: a.rows,
        cols: b.cols,
        values: rows.into_iter().flatten().collect(),
    })
}

pub fn mat_vec(a: &TropMatrix, x: &TropVector) -> Result<TropVector> {
    Ok(mat_mul(a, &TropMatrix::column(x))?.col(0))
}

fn require_square(a: &TropMatrix) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows)
    } else {
        Err(Error::Shape(format!("{}x{} matrix is not square", a.rows, a.cols)))
    }
}

/// `x* = 1 ⊕ x ⊕ x² ⊕ …` for a scalar; `None` when the series diverges.
fn scalar_star(d: SemiringDescriptor, x: SemiringValue) -> Option<SemiringValue> {
    if d.leq(x, d.one()) {
        Some(d.one())
    } else {
        d.top()
    }
}

/// `A* = I ⊕ A ⊕ A² ⊕ …`, by in-place elimination over pivots.
///
/// Over `rmin`, `rmax` and `zmax` the series diverges when some cycle has
/// weight strictly above `ONE` in the standard order (a negative cycle for
/// `rmin`); the error carries such a cycle.
pub fn kleene_star(a: &TropMatrix) -> Result<TropMatrix> {
    let n = require_square(a)?;
    let d = a.d;
    let mut m = a.clone();
    for k in 0..n {
        let Some(s) = scalar_star(d, m.get(k, k)) else {
            return Err(Error::Divergence {
                message: format!("closure diverges at node {k}"),
                cycle: improving_cycle(a).unwrap_or_else(|| vec![k, k]),
            });
        };
        let col: Vec<SemiringValue> = (0..n).map(|i| d.times(m.get(i, k), s)).collect();
        let row: Vec<SemiringValue> = m.row(k).to_vec();
        for (i, &cik) in col.iter().enumerate() {
            if d.is_zero(cik) {
                continue;
            }
            for (j, &rkj) in row.iter().enumerate() {
                let v = d.plus(m.get(i, j), d.times(cik, rkj));
                m.set(i, j, v);
            }
        }
    }
    for i in 0..n {
        let v = d.plus(m.get(i, i), d.one());
        m.set(i, i, v);
    }
    Ok(m)
}

/// Relaxation from every node at once with predecessor tracking. Returns
/// a cycle of weight strictly above `ONE` if one exists. The cycle is
/// listed as a closed walk `[v0, v1, …, v0]` along edges `A[vi][vi+1]`.
pub fn improving_cycle(a: &TropMatrix) -> Option<Vec<usize>> {
    let n = a.rows;
    let d = a.d;
    let mut best = vec![d.one(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = 0;
    for _ in 0..=n {
        let mut changed = None;
        for v in 0..n {
            for u in 0..n {
                let cand = d.times(best[u], a.get(u, v));
                if d.plus(best[v], cand) != best[v] {
                    best[v] = d.plus(best[v], cand);
                    pred[v] = Some(u);
                    changed = Some(v);
                }
            }
        }
        last = changed?;
    }
    // still improving after n+1 rounds: the predecessor chain is cyclic
    let mut v = last;
    for _ in 0..n {
        v = pred[v]?;
    }
    let mut cycle = vec![v];
    let mut u = pred[v]?;
    while u != v {
        cycle.push(u);
        u = pred[u]?;
    }
    cycle.push(v);
    cycle.reverse();
    Some(cycle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellmanMethod {
    Jacobi,
    GaussSeidel,
    Closure,
}

impl BellmanMethod {
    pub const ALL: [BellmanMethod; 3] = [BellmanMethod::Jacobi, BellmanMethod::GaussSeidel, BellmanMethod::Closure];

    pub fn name(self) -> &'static str {
        match self {
            BellmanMethod::Jacobi => "jacobi",
            BellmanMethod::GaussSeidel => "gauss_seidel",
            BellmanMethod::Closure => "closure",
        }
    }
}

impl std::str::FromStr for BellmanMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellmanMethod::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('_', "-") == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellmanSolution {
    pub x: TropMatrix,
    pub method: BellmanMethod,
    /// Sweeps until the fixpoint was observed; pivot count for `closure`.
    pub iterations: usize,
    pub converged: bool,
}

/// Least solution of `X = H ⊙ X ⊕ F`.
///
/// The iterative methods start from `F` and stop at the first sweep that
/// changes nothing; more than `n + 1` sweeps is reported as divergence.
/// `closure` returns `H* ⊙ F`.
pub fn solve_bellman(h: &TropMatrix, f: &TropMatrix, method: BellmanMethod) -> Result<BellmanSolution> {
    let n = require_square(h)?;
    if h.d != f.d || f.rows != n {
        return Err(Error::Shape(format!(
            "H is {n}x{n} {}, F is {}x{} {}",
            h.d, f.rows, f.cols, f.d
        )));
    }
    let diverged = || Error::Divergence {
        message: format!("{} iteration has no fixpoint after {} sweeps", method.name(), n + 1),
        cycle: improving_cycle(h).unwrap_or_default(),
    };
    match method {
        BellmanMethod::Closure => Ok(BellmanSolution {
            x: mat_mul(&kleene_star(h)?, f)?,
            method,
            iterations: n,
            converged: true,
        }),
        BellmanMethod::Jacobi => {
            let mut x = f.clone();
            for it in 1..=n + 1 {
                let next = mat_add(&mat_mul(h, &x)?, f)?;
                if next == x {
                    return Ok(BellmanSolution { x, method, iterations: it, converged: true });
                }
                x = next;
            }
            Err(diverged())
        }
        BellmanMethod::GaussSeidel => {
            let d = h.d;
            let mut x = f.clone();
            for it in 1..=n + 1 {
                let mut changed = false;
                for i in 0..n {
                    for c in 0..f.cols {
                        let v = (0..n).fold(f.get(i, c), |acc, j| d.plus(acc, d.times(h.get(i, j), x.get(j, c))));
                        if v != x.get(i, c) {
                            x.set(i, c, v);
                            changed = true;
                        }
                    }
                }
                if !changed {
                    return Ok(BellmanSolution { x, method, iterations: it, converged: true });
                }
            }
            Err(diverged())
        }
    }
}

/// Weighted directed edge list; node ids are `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if let Some(&(u, v, _)) = edges.iter().find(|&&(u, v, _)| u >= n || v >= n) {
            return Err(Error::Domain(format!("edge {u}->{v} leaves the {n} nodes")));
        }
        if edges.iter().any(|e| e.2.is_nan()) {
            return Err(Error::Domain("NaN edge weight".into()));
        }
        Ok(Graph { n, edges })
    }

    /// Adjacency matrix, parallel edges combined with `⊕`.
    pub fn adjacency(&self, d: SemiringDescriptor) -> Result<TropMatrix> {
        let mut a = TropMatrix::zeros(d, self.n, self.n);
        for &(u, v, w) in &self.edges {
            let w = d.from_f64(w)?;
            let cur = a.get(u, v);
            a.set(u, v, d.plus(cur, w));
        }
        Ok(a)
    }

    /// Kahn's algorithm; `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(u, v, _) in &self.edges {
            indeg[v] += 1;
            out[u].push(v);
        }
        let mut queue: std::collections::VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathResult {
    pub source: usize,
    pub dist: Vec<SemiringValue>,
    pub pred: Vec<Option<usize>>,
}

impl PathResult {
    /// Node sequence from the source to `target`, if reachable.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        if target == self.source {
            return Some(vec![target]);
        }
        let mut path = vec![target];
        let mut v = target;
        while v != self.source {
            v = self.pred[v]?;
            path.push(v);
            if path.len() > self.dist.len() {
                return None;
            }
        }
        path.reverse();
        Some(path)
    }
}

/// Single-source optimal path values: `dist = e_s ⊙ A*`.
///
/// `rmin` gives shortest paths, `rmax` longest paths (acyclic graphs
/// only) and `minmax` widest (bottleneck) paths. Predecessors are set on
/// strict improvement, taking the smallest index among tied candidates.
pub fn shortest_paths(g: &Graph, d: SemiringDescriptor, source: usize) -> Result<PathResult> {
    if source >= g.n {
        return Err(Error::Domain(format!("source {source} is not a node")));
    }
    if matches!(d.kind(), SemiringKind::RMax | SemiringKind::ZMax) && g.topological_order().is_none() {
        return Err(Error::Cyclic);
    }
    let a = g.adjacency(d)?;
    let n = g.n;
    let mut dist = TropVector::unit(d, n, source).values;
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for _ in 0..=n {
        let prev = dist.clone();
        let mut changed = false;
        for v in 0..n {
            let mut best = prev[v];
            let mut arg = None;
            for u in 0..n {
                let cand = d.times(prev[u], a.get(u, v));
                if d.plus(best, cand) != best {
                    best = d.plus(best, cand);
                    arg = Some(u);
                }
            }
            if let Some(u) = arg {
                // smallest index attaining the new value
                let u = (0..=u).find(|&w| d.times(prev[w], a.get(w, v)) == best).unwrap_or(u);
                dist[v] = best;
                pred[v] = Some(u);
                changed = true;
            }
        }
        if !changed {
            return Ok(PathResult { source, dist, pred });
        }
    }
    Err(Error::Divergence {
        message: format!("path values from {source} keep improving"),
        cycle: improving_cycle(&a).unwrap_or_default(),
    })
}

/// A scalar action on vectors together with vector addition.
pub struct SemimoduleAction<'a> {
    pub scalars: SemiringDescriptor,
    pub act: &'a dyn Fn(SemiringValue, &TropVector) -> TropVector,
    pub add: &'a dyn Fn(&TropVector, &TropVector) -> TropVector,
    pub zero: TropVector,
}

impl SemimoduleAction<'static> {
    /// The free action `k ⊙ x` with entrywise `⊕`.
    pub fn free(d: SemiringDescriptor, dim: usize) -> Self {
        SemimoduleAction {
            scalars: d,
            act: &|k, x| x.scale(k).expect("admissible scalar"),
            add: &|x, y| x.add(y).expect("matching shapes"),
            zero: TropVector::zeros(d, dim),
        }
    }
}

/// Semimodule axioms on the given samples: action associativity, both
/// distributive laws, the unit law, the zero scalar law and, for vectors
/// other than the top, meets of scalar families of size at most three.
pub fn validate_semimodule(
    action: &SemimoduleAction<'_>,
    scalars: &[SemiringValue],
    vectors: &[TropVector],
) -> AxiomReport {
    let d = action.scalars;
    let act = action.act;
    let add = action.add;
    let mut r = AxiomReport::new("semimodule");
    let show = |ks: &[SemiringValue], xs: &[&TropVector]| {
        let ks: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
        let xs: Vec<String> = xs.iter().map(|x| format!("({x})")).collect();
        format!("k=[{}] x={}", ks.join(","), xs.join(","))
    };

    let mut w = None;
    'a: for &k1 in scalars {
        for &k2 in scalars {
            for x in vectors {
                if act(d.times(k1, k2), x) != act(k1, &act(k2, x)) {
                    w = Some(show(&[k1, k2], &[x]));
                    break 'a;
                }
            }
        }
    }
    r.record("scalar associativity", w);

    let mut w = None;
    'b: for &k1 in scalars {
        for &k2 in scalars {
            for x in vectors {
                if act(d.plus(k1, k2), x) != add(&act(k1, x), &act(k2, x)) {
                    w = Some(show(&[k1, k2], &[x]));
                    break 'b;
                }
            }
        }
    }
    r.record("scalar distributivity", w);

    let mut w = None;
    'c: for &k in scalars {
        for x in vectors {
            for y in vectors {
                if act(k, &add(x, y)) != add(&act(k, x), &act(k, y)) {
                    w = Some(show(&[k], &[x, y]));
                    break 'c;
                }
            }
        }
    }
    r.record("vector distributivity", w);

    let w = vectors
        .iter()
        .find(|x| act(d.one(), x) != **x)
        .map(|x| show(&[d.one()], &[x]));
    r.record("unit scalar", w);

    let w = vectors
        .iter()
        .find(|x| act(d.zero(), x) != action.zero)
        .map(|x| show(&[d.zero()], &[x]));
    r.record("zero scalar", w);

    let mut w = None;
    let mut families: Vec<Vec<SemiringValue>> = Vec::new();
    for (i, &a) in scalars.iter().enumerate() {
        families.push(vec![a]);
        for (j, &b) in scalars.iter().enumerate().skip(i + 1) {
            families.push(vec![a, b]);
            for &c in scalars.iter().skip(j + 1) {
                families.push(vec![a, b, c]);
            }
        }
    }
    'e: for x in vectors {
        if d.top().is_some_and(|t| x.values().iter().all(|&v| v == t)) {
            continue;
        }
        for q in &families {
            let lhs = act(q.iter().skip(1).fold(q[0], |m, &k| d.meet(m, k)), x);
            let rhs = q
                .iter()
                .skip(1)
                .fold(act(q[0], x), |m, &k| m.meet(&act(k, x)).expect("matching shapes"));
            if lhs != rhs {
                w = Some(show(q, &[x]));
                break 'e;
            }
        }
    }
    r.record("standard meets", w);
    r
}

/// Closure of a subset `M` (given by a membership test) under the action
/// and under addition, on the given samples from `M`.
pub fn check_subsemimodule(
    action: &SemimoduleAction<'_>,
    member: &dyn Fn(&TropVector) -> bool,
    scalars: &[SemiringValue],
    samples: &[TropVector],
) -> AxiomReport {
    let mut r = AxiomReport::new("subsemimodule");
    let outside = samples.iter().find(|x| !member(x)).map(|x| format!("({x})"));
    r.record("samples are members", outside);
    let mut w = None;
    'a: for &k in scalars {
        for x in samples {
            if !member(&(action.act)(k, x)) {
                w = Some(format!("k={k} x=({x})"));
                break 'a;
            }
        }
    }
    r.record("closed under action", w);
    let mut w = None;
    'b: for x in samples {
        for y in samples {
            if !member(&(action.add)(x, y)) {
                w = Some(format!("x=({x}) y=({y})"));
                break 'b;
            }
        }
    }
    r.record("closed under addition", w);
    r
}
