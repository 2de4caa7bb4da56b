//! Finite ordered structures: Cayley tables, the standard order, upper and
//! lower bound sets, o-closure, the Dedekind–MacNeille completion and the
//! completion of a finite semiring.
//!
//! Subsets of a carrier are bit masks, so carriers hold at most 64 points.
//! Structures handed in by users are capped at [`MAX_ELEMENTS`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::AxiomReport;
use crate::semiring::{SemiringDescriptor, SemiringValue};

pub type Subset = u64;

pub const MAX_ELEMENTS: usize = 16;
/// Largest carrier for which homomorphism checks run over every subset.
pub const EXHAUSTIVE_LIMIT: usize = 12;
const SAMPLED_SUBSETS: usize = 4096;
const SAMPLE_SEED: u64 = 0x5eed;

pub fn full_set(n: usize) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn members(x: Subset) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| x >> i & 1 == 1)
}

pub fn singleton(i: usize) -> Subset {
    1u64 << i
}

/// A finite structure given by explicit operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyStructure {
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Option<Vec<Vec<usize>>>,
    zero: Option<usize>,
    one: Option<usize>,
}

fn check_table(n: usize, table: &[Vec<usize>], what: &str) -> Result<()> {
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("{what} table must be {n}x{n}")));
    }
    if let Some((i, j)) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| table[i][j] >= n)
    {
        return Err(Error::Domain(format!(
            "{what} table entry ({i},{j}) = {} is outside the carrier",
            table[i][j]
        )));
    }
    Ok(())
}

impl CayleyStructure {
    pub fn new(labels: Vec<String>, add: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Domain("empty carrier".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, limit: MAX_ELEMENTS });
        }
        check_table(n, &add, "add")?;
        Ok(CayleyStructure {
            labels,
            add,
            mul: None,
            zero: None,
            one: None,
        })
    }

    /// Labels `0..n`.
    pub fn unlabeled(add: Vec<Vec<usize>>) -> Result<Self> {
        Self::new((0..add.len()).map(|i| i.to_string()).collect(), add)
    }

    pub fn with_mul(mut self, mul: Vec<Vec<usize>>) -> Result<Self> {
        check_table(self.len(), &mul, "mul")?;
        self.mul = Some(mul);
        Ok(self)
    }

    pub fn with_zero(mut self, zero: usize) -> Result<Self> {
        self.check_index(zero)?;
        self.zero = Some(zero);
        Ok(self)
    }

    pub fn with_one(mut self, one: usize) -> Result<Self> {
        self.check_index(one)?;
        self.one = Some(one);
        Ok(self)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::Domain(format!("index {i} is outside the carrier")))
        }
    }

    /// Tables of a built-in semiring restricted to `values`, which must be
    /// closed under both operations.
    pub fn from_fragment(d: SemiringDescriptor, values: &[SemiringValue]) -> Result<Self> {
        let index = |v: SemiringValue| {
            values.iter().position(|&w| w == v).ok_or_else(|| {
                Error::Domain(format!("fragment is not closed: {v} is missing"))
            })
        };
        let table = |op: &dyn Fn(SemiringValue, SemiringValue) -> Result<SemiringValue>| {
            values
                .iter()
                .map(|&a| values.iter().map(|&b| index(op(a, b)?)).collect())
                .collect::<Result<Vec<Vec<usize>>>>()
        };
        let add = table(&|a, b| d.add(a, b))?;
        let mul = table(&|a, b| d.mul(a, b))?;
        let mut s = Self::new(values.iter().map(|v| v.to_string()).collect(), add)?.with_mul(mul)?;
        s.zero = values.iter().position(|&v| v == d.zero());
        s.one = values.iter().position(|&v| v == d.one());
        Ok(s)
    }

    /// The two-element Boolean semifield `{0, 1}`.
    pub fn boolean() -> Self {
        Self::from_fragment(
            SemiringDescriptor::BOOLEAN,
            &[SemiringValue::Bit(false), SemiringValue::Bit(true)],
        )
        .expect("boolean tables are closed")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> Option<&[Vec<usize>]> {
        self.mul.as_deref()
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    /// Panics when no product table is present.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul.as_ref().expect("structure has no product table")[i][j]
    }

    /// Sum of a nonempty subset; `None` for the empty set.
    pub fn sum(&self, x: Subset) -> Option<usize> {
        members(x).reduce(|a, b| self.add[a][b])
    }

    fn fmt_tuple(&self, idx: &[usize]) -> String {
        let parts: Vec<&str> = idx.iter().map(|&i| self.label(i)).collect();
        format!("({})", parts.join(","))
    }

    pub fn fmt_subset(&self, x: Subset) -> String {
        let parts: Vec<&str> = members(x).map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// Additive semigroup axioms: idempotent, commutative, associative.
pub fn validate_semigroup(s: &CayleyStructure) -> AxiomReport {
    let mut r = AxiomReport::new("semigroup");
    push_semigroup_checks(s, &mut r);
    r
}

fn push_semigroup_checks(s: &CayleyStructure, r: &mut AxiomReport) {
    let n = s.len();
    let w = (0..n)
        .find(|&a| s.add(a, a) != a)
        .map(|a| s.fmt_tuple(&[a]));
    r.record("add idempotent", w);
    let w = pairs(n)
        .find(|&(a, b)| s.add(a, b) != s.add(b, a))
        .map(|(a, b)| s.fmt_tuple(&[a, b]));
    r.record("add commutative", w);
    let w = triples(n)
        .find(|&(a, b, c)| s.add(s.add(a, b), c) != s.add(a, s.add(b, c)))
        .map(|(a, b, c)| s.fmt_tuple(&[a, b, c]));
    r.record("add associative", w);
}

/// Semigroup axioms plus the multiplicative ones: associativity, both
/// distributive laws, unit laws and the zero laws.
pub fn validate_semiring(s: &CayleyStructure) -> AxiomReport {
    let mut r = AxiomReport::new("semiring");
    push_semiring_checks(s, &mut r);
    r
}

fn push_semiring_checks(s: &CayleyStructure, r: &mut AxiomReport) {
    push_semigroup_checks(s, r);
    let n = s.len();
    let Some(mul) = s.mul.as_ref() else {
        for name in SEMIRING_MUL_AXIOMS {
            r.record(name, Some("no product table".into()));
        }
        return;
    };
    let m = |a: usize, b: usize| mul[a][b];
    let p = |a: usize, b: usize| s.add(a, b);
    let t3 = |(a, b, c): (usize, usize, usize)| s.fmt_tuple(&[a, b, c]);
    let t1 = |a: usize| s.fmt_tuple(&[a]);

    r.record(
        "mul associative",
        triples(n).find(|&(a, b, c)| m(m(a, b), c) != m(a, m(b, c))).map(t3),
    );
    r.record(
        "left distributivity",
        triples(n)
            .find(|&(a, b, c)| m(a, p(b, c)) != p(m(a, b), m(a, c)))
            .map(t3),
    );
    r.record(
        "right distributivity",
        triples(n)
            .find(|&(a, b, c)| m(p(a, b), c) != p(m(a, c), m(b, c)))
            .map(t3),
    );
    match s.one {
        Some(e) => {
            r.record("unit left", (0..n).find(|&a| m(e, a) != a).map(t1));
            r.record("unit right", (0..n).find(|&a| m(a, e) != a).map(t1));
        }
        None => {
            r.record("unit left", Some("no unit given".into()));
            r.record("unit right", Some("no unit given".into()));
        }
    }
    match s.zero {
        Some(z) => {
            r.record("zero additive-neutral", (0..n).find(|&a| p(z, a) != a).map(t1));
            r.record("zero left-absorbing", (0..n).find(|&a| m(z, a) != z).map(t1));
            r.record("zero right-absorbing", (0..n).find(|&a| m(a, z) != z).map(t1));
        }
        None => {
            for name in ["zero additive-neutral", "zero left-absorbing", "zero right-absorbing"] {
                r.record(name, Some("no zero given".into()));
            }
        }
    }
}

const SEMIRING_MUL_AXIOMS: [&str; 8] = [
    "mul associative",
    "left distributivity",
    "right distributivity",
    "unit left",
    "unit right",
    "zero additive-neutral",
    "zero left-absorbing",
    "zero right-absorbing",
];

/// Semiring axioms plus `0 ≠ 1`, commutativity of the product and
/// invertibility of every nonzero element.
pub fn validate_semifield(s: &CayleyStructure) -> AxiomReport {
    let mut r = AxiomReport::new("semifield");
    push_semiring_checks(s, &mut r);
    let n = s.len();
    let (Some(mul), Some(z), Some(e)) = (s.mul.as_ref(), s.zero, s.one) else {
        for name in ["zero distinct from one", "mul commutative", "nonzero invertible"] {
            r.record(name, Some("missing product, zero or unit".into()));
        }
        return r;
    };
    r.record("zero distinct from one", (z == e).then(|| s.fmt_tuple(&[z])));
    r.record(
        "mul commutative",
        pairs(n)
            .find(|&(a, b)| mul[a][b] != mul[b][a])
            .map(|(a, b)| s.fmt_tuple(&[a, b])),
    );
    r.record(
        "nonzero invertible",
        (0..n)
            .filter(|&a| a != z)
            .find(|&a| !(0..n).any(|b| mul[a][b] == e && mul[b][a] == e))
            .map(|a| s.fmt_tuple(&[a])),
    );
    r
}

/// Whether bounded powers force `x ≼ 1` for every element.
pub fn is_integrally_closed(s: &CayleyStructure) -> AxiomReport {
    let mut r = AxiomReport::new("integrally-closed");
    let (Some(mul), Some(e)) = (s.mul.as_ref(), s.one) else {
        r.record("integrally closed", Some("missing product or unit".into()));
        return r;
    };
    let p = match standard_order(s) {
        Ok(p) => p,
        Err(err) => {
            r.record("integrally closed", Some(err.to_string()));
            return r;
        }
    };
    let mut witness = None;
    for x in 0..s.len() {
        let mut powers: Subset = 0;
        let mut y = x;
        while powers & singleton(y) == 0 {
            powers |= singleton(y);
            y = mul[y][x];
        }
        let bounded = p.up_set(powers) != 0;
        if bounded && !p.leq(x, e) {
            witness = Some(format!("{} powers={}", s.label(x), s.fmt_subset(powers)));
            break;
        }
    }
    r.record("integrally closed", witness);
    r
}

/// A finite partial order stored as principal filters and ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    /// `up[i] = { j : i ≼ j }`
    up: Vec<Subset>,
    /// `down[i] = { j : j ≼ i }`
    down: Vec<Subset>,
}

impl FinitePoset {
    pub const MAX: usize = 64;

    /// Builds a poset from an order predicate and validates it.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n > Self::MAX {
            return Err(Error::TooLarge { n, limit: Self::MAX });
        }
        let mut up = vec![0; n];
        let mut down = vec![0; n];
        for (i, j) in pairs(n) {
            if leq(i, j) {
                up[i] |= singleton(j);
                down[j] |= singleton(i);
            }
        }
        let p = FinitePoset { n, up, down };
        if let Some(i) = (0..n).find(|&i| !p.leq(i, i)) {
            return Err(Error::AxiomViolation {
                axiom: "reflexivity".into(),
                witness: format!("({i})"),
            });
        }
        if let Some((i, j)) = pairs(n).find(|&(i, j)| i != j && p.leq(i, j) && p.leq(j, i)) {
            return Err(Error::AxiomViolation {
                axiom: "antisymmetry".into(),
                witness: format!("({i},{j})"),
            });
        }
        if let Some((i, j, k)) =
            triples(n).find(|&(i, j, k)| p.leq(i, j) && p.leq(j, k) && !p.leq(i, k))
        {
            return Err(Error::AxiomViolation {
                axiom: "transitivity".into(),
                witness: format!("({i},{j},{k})"),
            });
        }
        Ok(p)
    }

    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("order matrix must be square".into()));
        }
        Self::from_fn(n, |i, j| leq[i][j])
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn full(&self) -> Subset {
        full_set(self.n)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn principal_up(&self, i: usize) -> Subset {
        self.up[i]
    }

    pub fn principal_down(&self, i: usize) -> Subset {
        self.down[i]
    }

    /// Upper bounds of `x`; the empty set is bounded by everything.
    pub fn up_set(&self, x: Subset) -> Subset {
        members(x).fold(self.full(), |acc, i| acc & self.up[i])
    }

    /// Lower bounds of `x`.
    pub fn low_set(&self, x: Subset) -> Subset {
        members(x).fold(self.full(), |acc, i| acc & self.down[i])
    }

    /// `Low(Up(x))`.
    pub fn o_closure(&self, x: Subset) -> Subset {
        self.low_set(self.up_set(x))
    }

    /// Least element of `x`, if any.
    pub fn least(&self, x: Subset) -> Option<usize> {
        members(x).find(|&i| x & !self.up[i] == 0)
    }

    /// Greatest element of `x`, if any.
    pub fn greatest(&self, x: Subset) -> Option<usize> {
        members(x).find(|&i| x & !self.down[i] == 0)
    }

    pub fn sup(&self, x: Subset) -> Option<usize> {
        self.least(self.up_set(x))
    }

    pub fn inf(&self, x: Subset) -> Option<usize> {
        self.greatest(self.low_set(x))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least(self.full())
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest(self.full())
    }

    /// Every subset has a sup and an inf. Checked over all subsets for up
    /// to 16 points; larger posets use the finite criterion "has a bottom
    /// and all pairwise sups".
    pub fn is_complete_lattice(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        if self.n <= 16 {
            (0..=self.full()).all(|x| self.sup(x).is_some() && self.inf(x).is_some())
        } else {
            self.bottom().is_some()
                && pairs(self.n).all(|(i, j)| self.sup(singleton(i) | singleton(j)).is_some())
        }
    }

    /// Componentwise order on `self × other`; element `(i, j)` has index
    /// `i * other.len() + j`.
    pub fn product(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let m = other.n;
        FinitePoset::from_fn(self.n * m, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
    }

    /// Order-isomorphism test by brute force over permutations, for tiny
    /// posets only.
    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut c = vec![0usize; self.n];
        let ok = |perm: &[usize]| pairs(self.n).all(|(i, j)| self.leq(i, j) == other.leq(perm[i], perm[j]));
        if ok(&perm) {
            return true;
        }
        // Heap's algorithm
        let mut i = 0;
        while i < self.n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                if ok(&perm) {
                    return true;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        false
    }
}

/// The order induced by addition, `i ≼ j` iff `i ⊕ j = j`.
pub fn standard_order(s: &CayleyStructure) -> Result<FinitePoset> {
    let report = validate_semigroup(s);
    if let Some(f) = report.failures().next() {
        return Err(Error::AxiomViolation {
            axiom: f.name.clone(),
            witness: f.witness.clone().unwrap_or_default(),
        });
    }
    FinitePoset::from_fn(s.len(), |i, j| s.add(i, j) == j)
}

/// The normal completion: all cuts `Up(X)`, ordered by reverse inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutLattice {
    base: FinitePoset,
    cuts: Vec<Subset>,
    embedding: Vec<usize>,
}

pub fn macneille_completion(p: &FinitePoset) -> Result<CutLattice> {
    if p.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge { n: p.len(), limit: MAX_ELEMENTS });
    }
    // every cut is an intersection of principal filters
    let mut cuts: Vec<Subset> = vec![p.full()];
    for i in 0..p.len() {
        let f = p.principal_up(i);
        let mut fresh: Vec<Subset> = cuts.iter().map(|&c| c & f).collect();
        fresh.push(f);
        for c in fresh {
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
    }
    cuts.sort_by_key(|&c| (std::cmp::Reverse(c.count_ones()), c));
    let embedding = (0..p.len())
        .map(|i| cuts.binary_search_by_key(&(std::cmp::Reverse(p.principal_up(i).count_ones()), p.principal_up(i)), |&c| (std::cmp::Reverse(c.count_ones()), c)).expect("principal filters are cuts"))
        .collect();
    Ok(CutLattice {
        base: p.clone(),
        cuts,
        embedding,
    })
}

impl CutLattice {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn cuts(&self) -> &[Subset] {
        &self.cuts
    }

    pub fn cut(&self, k: usize) -> Subset {
        self.cuts[k]
    }

    pub fn index_of(&self, cut: Subset) -> Option<usize> {
        self.cuts.iter().position(|&c| c == cut)
    }

    /// `i(x) = Up({x})`.
    pub fn embed(&self, x: usize) -> usize {
        self.embedding[x]
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// `I₁ ≼ I₂` iff `I₁ ⊇ I₂`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.cuts[a] & self.cuts[b] == self.cuts[b]
    }

    /// `I(∅)`, the whole carrier.
    pub fn bottom(&self) -> usize {
        0
    }

    /// `Up(S)`.
    pub fn top(&self) -> usize {
        self.cuts.len() - 1
    }

    /// The cut of a subset of the base, `I(X) = Up(X)`.
    pub fn cut_of(&self, x: Subset) -> usize {
        self.index_of(self.base.up_set(x))
            .expect("upper bound sets are cuts")
    }

    /// Sup of a family of cuts: their intersection.
    pub fn sup(&self, family: &[usize]) -> usize {
        let c = family
            .iter()
            .fold(self.base.full(), |acc, &k| acc & self.cuts[k]);
        self.index_of(c).expect("cuts are closed under intersection")
    }

    /// Inf of a family of cuts: `Up(Low(∪ C))`.
    pub fn inf(&self, family: &[usize]) -> usize {
        let u = family.iter().fold(0, |acc, &k| acc | self.cuts[k]);
        self.index_of(self.base.up_set(self.base.low_set(u)))
            .expect("closure of a set is a cut")
    }

    /// Cuts majorized by an embedded element, together with `I(∅)`.
    pub fn bounded_part(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| k == self.bottom() || self.cuts[k] != 0)
            .collect()
    }

    /// The completion as a poset in its own right.
    pub fn as_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_fn(self.len(), |a, b| self.leq(a, b))
    }

    /// Display names: base labels for embedded cuts, otherwise the cut
    /// itself written as a set of base labels.
    pub fn labels(&self, base_labels: &[String]) -> Vec<String> {
        (0..self.len())
            .map(|k| match self.embedding.iter().position(|&e| e == k) {
                Some(x) => base_labels[x].clone(),
                None => {
                    let parts: Vec<&str> =
                        members(self.cuts[k]).map(|i| base_labels[i].as_str()).collect();
                    format!("cut{{{}}}", parts.join(" "))
                }
            })
            .collect()
    }
}

/// Extension of a product to the cut lattice:
/// `C₁ ⊙ C₂ = sup { i(a ⊙ b) : i(a) ≼ C₁, i(b) ≼ C₂ }`.
pub fn complete_product(lattice: &CutLattice, mul: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let p = lattice.base();
    let below = |k: usize| p.low_set(lattice.cut(k));
    (0..lattice.len())
        .map(|k1| {
            (0..lattice.len())
                .map(|k2| {
                    let mut products: Subset = 0;
                    for a in members(below(k1)) {
                        for b in members(below(k2)) {
                            products |= singleton(mul[a][b]);
                        }
                    }
                    lattice.cut_of(products)
                })
                .collect()
        })
        .collect()
}

/// Result of the homomorphism checks.
#[derive(Clone, Debug)]
pub struct HomomorphismReport {
    pub report: AxiomReport,
    /// All subsets were enumerated (otherwise a seeded sample).
    pub exhaustive: bool,
}

impl HomomorphismReport {
    fn get(&self, name: &str) -> bool {
        self.report.check(name).is_some_and(|c| c.passed)
    }

    pub fn is_homomorphism(&self) -> bool {
        self.get("homomorphism")
    }

    pub fn is_a_homomorphism(&self) -> bool {
        self.get("a-homomorphism")
    }

    pub fn is_b_homomorphism(&self) -> bool {
        self.get("b-homomorphism")
    }

    pub fn is_a_regular(&self) -> bool {
        self.get("a-regular")
    }

    pub fn preserves_zero(&self) -> bool {
        self.get("zero-preserving")
    }
}

fn subsets_to_check(n: usize) -> (Vec<Subset>, bool) {
    if n <= EXHAUSTIVE_LIMIT {
        return ((0..=full_set(n)).collect(), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut xs: Vec<Subset> = vec![0, full_set(n)];
    xs.extend((0..n).map(singleton));
    xs.extend(pairs(n).filter(|(a, b)| a < b).map(|(a, b)| singleton(a) | singleton(b)));
    while xs.len() < SAMPLED_SUBSETS {
        let k = rng.gen_range(1..=n);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        xs.push(idx[..k].iter().fold(0, |acc, &i| acc | singleton(i)));
    }
    (xs, false)
}

/// Checks `f(⊕X) = ⊕f(X)` for every subset `X` of `s` (a seeded sample of
/// subsets above [`EXHAUSTIVE_LIMIT`] points), along with the plain
/// homomorphism property, zero preservation and a-regularity.
pub fn is_a_homomorphism(
    f: &[usize],
    s: &CayleyStructure,
    t: &CayleyStructure,
) -> Result<HomomorphismReport> {
    if f.len() != s.len() {
        return Err(Error::Shape(format!(
            "map has {} entries for {} elements",
            f.len(),
            s.len()
        )));
    }
    if let Some(&y) = f.iter().find(|&&y| y >= t.len()) {
        return Err(Error::Domain(format!("map value {y} is outside the target")));
    }
    let ps = standard_order(s)?;
    let pt = standard_order(t)?;
    let image = |x: Subset| members(x).fold(0, |acc, i| acc | singleton(f[i]));
    let mut r = AxiomReport::new("homomorphism");

    let w = pairs(s.len())
        .find(|&(a, b)| f[s.add(a, b)] != t.add(f[a], f[b]))
        .map(|(a, b)| s.fmt_subset(singleton(a) | singleton(b)));
    r.record("homomorphism", w);

    let zero_witness = match (ps.bottom(), pt.bottom()) {
        (Some(z), Some(zt)) if f[z] != zt => Some(format!("{} maps to {}", s.label(z), t.label(f[z]))),
        (Some(z), None) => Some(format!("{} maps into a target without zero", s.label(z))),
        _ => None,
    };
    r.record("zero-preserving", zero_witness.clone());

    let (subsets, exhaustive) = subsets_to_check(s.len());
    if !exhaustive {
        r.note(format!(
            "{} elements exceed the exhaustive limit {EXHAUSTIVE_LIMIT}; {} seeded subsets checked",
            s.len(),
            subsets.len()
        ));
    }
    let preserves = |x: Subset| match ps.sup(x) {
        None => true,
        Some(u) => pt.sup(image(x)) == Some(f[u]),
    };
    let w = subsets
        .iter()
        .copied()
        .find(|&x| !preserves(x))
        .map(|x| s.fmt_subset(x));
    r.record("a-homomorphism", w);

    // a finite join-semilattice bounds every subset, so the bounded
    // condition runs over the same family
    let w = subsets
        .iter()
        .copied()
        .filter(|&x| ps.up_set(x) != 0)
        .find(|&x| !preserves(x))
        .map(|x| s.fmt_subset(x));
    r.record("b-homomorphism", w);

    let w = subsets
        .iter()
        .copied()
        .find(|&x| image(ps.o_closure(x)) & !pt.o_closure(image(x)) != 0)
        .map(|x| s.fmt_subset(x));
    r.record("a-regular", w);

    Ok(HomomorphismReport { report: r, exhaustive })
}

/// The completed semiring on the cut lattice of `s`.
#[derive(Clone, Debug)]
pub struct CompletedSemiring {
    pub structure: CayleyStructure,
    pub lattice: CutLattice,
}

/// Completes a finite semiring: addition becomes the lattice sup of cuts
/// and the product is extended by [`complete_product`]. Both homotheties
/// of every element must be a-homomorphisms.
pub fn complete_semiring(s: &CayleyStructure) -> Result<CompletedSemiring> {
    // zero and unit are optional: a missing zero is supplied by I(∅)
    let report = validate_semiring(s);
    let required = [
        "add idempotent",
        "add commutative",
        "add associative",
        "mul associative",
        "left distributivity",
        "right distributivity",
    ];
    if let Some(f) = report.failures().find(|c| required.contains(&c.name.as_str())) {
        return Err(Error::AxiomViolation {
            axiom: f.name.clone(),
            witness: f.witness.clone().unwrap_or_default(),
        });
    }
    let mul = s.mul_table().expect("validated");
    let n = s.len();
    for y in 0..n {
        let right: Vec<usize> = (0..n).map(|x| mul[x][y]).collect();
        let left: Vec<usize> = (0..n).map(|x| mul[y][x]).collect();
        for (side, h) in [("right", right), ("left", left)] {
            let hr = is_a_homomorphism(&h, s, s)?;
            if let Some(c) = hr.report.check("a-homomorphism").filter(|c| !c.passed) {
                return Err(Error::Regularity(format!(
                    "{side} homothety by {} fails at {}",
                    s.label(y),
                    c.witness.clone().unwrap_or_default()
                )));
            }
        }
    }
    let p = standard_order(s)?;
    let lattice = macneille_completion(&p)?;
    if lattice.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge { n: lattice.len(), limit: MAX_ELEMENTS });
    }
    let k = lattice.len();
    let add: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| lattice.sup(&[a, b])).collect())
        .collect();
    let prod = complete_product(&lattice, mul);
    let z = lattice.bottom();
    let absorbing = (0..k).all(|x| prod[z][x] == z && prod[x][z] == z);
    let mut structure = CayleyStructure::new(lattice.labels(s.labels()), add)?.with_mul(prod)?;
    if absorbing {
        structure = structure.with_zero(z)?;
    }
    if let Some(e) = s.one() {
        structure = structure.with_one(lattice.embed(e))?;
    }
    Ok(CompletedSemiring { structure, lattice })
}
