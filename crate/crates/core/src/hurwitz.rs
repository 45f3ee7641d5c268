//! Hurwitz numbers of simply branched covers of the line, counted through
//! their monodromy: tuples of transpositions in S_d whose product is the
//! identity and which generate a transitive subgroup.
//!
//! Products are taken left to right: `τ₁ τ₂ ⋯ τₙ` applies `τ₁` first.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::UnionFind;
use crate::stable_map::{riemann_hurwitz_genus, GenusError};

/// Largest degree accepted by the enumerator and the oracle.
pub const MAX_DEGREE: usize = 6;
/// Largest branch count accepted by the enumerator.
pub const MAX_BRANCH_POINTS: usize = 10;
/// Largest branch count accepted by [`convolution_oracle`].
pub const ORACLE_MAX_BRANCH_POINTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("degree {d} with {n} branch points exceeds the supported range")]
    ScaleCap { d: usize, n: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("transposition ({0} {1}) is not valid in S_{2}")]
    InvalidTransposition(usize, usize, usize),
    #[error("product of the factors is not the identity")]
    NotIdentityProduct,
    #[error("factors do not act transitively")]
    NotTransitive,
    #[error(transparent)]
    Genus(#[from] GenusError),
}

/// A transposition `(i j)` on `{0, …, d-1}` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transposition(u8, u8);

impl Transposition {
    pub fn new(i: usize, j: usize, d: usize) -> Result<Self, HurwitzError> {
        let (a, b) = (i.min(j), i.max(j));
        if a == b || b >= d || d > u8::MAX as usize {
            return Err(HurwitzError::InvalidTransposition(i, j, d));
        }
        Ok(Transposition(a as u8, b as u8))
    }

    pub fn points(&self) -> (usize, usize) {
        (self.0 as usize, self.1 as usize)
    }

    /// All transpositions of S_d in lexicographic order.
    pub fn all(d: usize) -> Vec<Transposition> {
        (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| Transposition(i as u8, j as u8)))
            .collect()
    }
}

/// Written one-based, e.g. `(12)`.
impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{})", self.0 + 1, self.1 + 1)
    }
}

impl Serialize for Transposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.0 as usize + 1, self.1 as usize + 1].serialize(serializer)
    }
}

/// A permutation of `{0, …, d-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `t`.
    pub fn then_transposition(&self, t: Transposition) -> Self {
        let mut out = self.0.clone();
        for x in &mut out {
            if *x == t.0 {
                *x = t.1;
            } else if *x == t.1 {
                *x = t.0;
            }
        }
        Permutation(out)
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Permutation(out)
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
            }
        }
        cycles
    }

    /// All permutations of S_d in lexicographic order of image vectors.
    pub fn all(d: usize) -> Vec<Permutation> {
        fn go(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x as u8);
                    go(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; d], &mut out);
        out
    }
}

/// Monodromy of a simply branched cover of P¹: transpositions with
/// identity product generating a transitive subgroup of S_d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MonodromyTuple {
    degree: usize,
    factors: Vec<Transposition>,
}

impl MonodromyTuple {
    pub fn new(degree: usize, factors: Vec<Transposition>) -> Result<Self, HurwitzError> {
        if degree == 0 {
            return Err(HurwitzError::ZeroDegree);
        }
        for t in &factors {
            let (i, j) = t.points();
            if j >= degree {
                return Err(HurwitzError::InvalidTransposition(i, j, degree));
            }
        }
        if !product(degree, &factors).is_identity() {
            return Err(HurwitzError::NotIdentityProduct);
        }
        if orbit_count(degree, &factors) != 1 {
            return Err(HurwitzError::NotTransitive);
        }
        Ok(MonodromyTuple { degree, factors })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[Transposition] {
        &self.factors
    }

    /// Conjugates every factor by `sigma`: `(i j) ↦ (σ(i) σ(j))`.
    pub fn conjugate(&self, sigma: &Permutation) -> MonodromyTuple {
        let factors = self
            .factors
            .iter()
            .map(|t| {
                let (i, j) = t.points();
                Transposition::new(sigma.apply(i), sigma.apply(j), self.degree).unwrap()
            })
            .collect();
        MonodromyTuple::new(self.degree, factors).expect("conjugation preserves the invariants")
    }
}

impl fmt::Display for MonodromyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

pub fn product(d: usize, factors: &[Transposition]) -> Permutation {
    factors
        .iter()
        .fold(Permutation::identity(d), |acc, &t| acc.then_transposition(t))
}

fn orbit_count(d: usize, factors: &[Transposition]) -> usize {
    let mut uf = UnionFind::new(d);
    let mut orbits = d;
    for t in factors {
        let (i, j) = t.points();
        if uf.union(i, j) {
            orbits -= 1;
        }
    }
    orbits
}

fn check_scale(d: usize, n: usize, max_n: usize) -> Result<(), HurwitzError> {
    if d == 0 {
        return Err(HurwitzError::ZeroDegree);
    }
    if d > MAX_DEGREE || n > max_n {
        return Err(HurwitzError::ScaleCap { d, n });
    }
    Ok(())
}

#[derive(Clone)]
struct SearchState {
    product: Permutation,
    parent: [u8; MAX_DEGREE],
    orbits: usize,
}

impl SearchState {
    fn new(d: usize) -> Self {
        let mut parent = [0; MAX_DEGREE];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        SearchState {
            product: Permutation::identity(d),
            parent,
            orbits: d,
        }
    }

    fn root(&self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn push(&self, t: Transposition) -> SearchState {
        let mut next = self.clone();
        next.product = self.product.then_transposition(t);
        let (a, b) = (self.root(t.0), self.root(t.1));
        if a != b {
            next.parent[a.max(b) as usize] = a.min(b);
            next.orbits -= 1;
        }
        next
    }

    /// Whether `remaining` more transpositions can still close the product
    /// to the identity and connect all orbits.
    fn feasible(&self, remaining: usize) -> bool {
        let d = self.product.len();
        // minimal number of transpositions expressing the current product
        let distance = d - self.product.cycle_count();
        remaining >= distance
            && (remaining - distance).is_multiple_of(2)
            && remaining + 1 >= self.orbits
    }
}

fn search(
    state: &SearchState,
    remaining: usize,
    moves: &[Transposition],
    prefix: &mut Vec<Transposition>,
    visit: &mut dyn FnMut(&[Transposition]),
) {
    if remaining == 0 {
        visit(prefix);
        return;
    }
    for &t in moves {
        let next = state.push(t);
        if next.feasible(remaining - 1) {
            prefix.push(t);
            search(&next, remaining - 1, moves, prefix, visit);
            prefix.pop();
        }
    }
}

/// Runs the pruned search in parallel by first factor; the per-branch
/// results come back in lexicographic order of that factor.
fn search_branches<T: Send>(
    d: usize,
    per_branch: impl Fn(&SearchState, Transposition) -> T + Sync,
) -> Vec<T> {
    let moves = Transposition::all(d);
    let root = SearchState::new(d);
    moves
        .par_iter()
        .map(|&t| per_branch(&root, t))
        .collect()
}

fn trivial_case(d: usize, n: usize) -> Option<Vec<MonodromyTuple>> {
    // n = 0: only the empty tuple, transitive iff d = 1.
    (n == 0).then(|| {
        if d == 1 {
            vec![MonodromyTuple {
                degree: 1,
                factors: vec![],
            }]
        } else {
            vec![]
        }
    })
}

/// All monodromy tuples of degree `d` with `n` simple branch points, in
/// lexicographic order of their factor sequences.
pub fn enumerate_simple_monodromy(d: usize, n: usize) -> Result<Vec<MonodromyTuple>, HurwitzError> {
    check_scale(d, n, MAX_BRANCH_POINTS)?;
    if let Some(out) = trivial_case(d, n) {
        return Ok(out);
    }
    let moves = Transposition::all(d);
    let branches = search_branches(d, |root, first| {
        let mut found = Vec::new();
        let state = root.push(first);
        if state.feasible(n - 1) {
            let mut prefix = vec![first];
            search(&state, n - 1, &moves, &mut prefix, &mut |tuple| {
                found.push(MonodromyTuple {
                    degree: d,
                    factors: tuple.to_vec(),
                })
            });
        }
        found
    });
    Ok(branches.into_iter().flatten().collect())
}

/// Number of tuples [`enumerate_simple_monodromy`] would return, without
/// materialising them.
pub fn count_simple_monodromy(d: usize, n: usize) -> Result<u64, HurwitzError> {
    check_scale(d, n, MAX_BRANCH_POINTS)?;
    if let Some(out) = trivial_case(d, n) {
        return Ok(out.len() as u64);
    }
    let moves = Transposition::all(d);
    let branches = search_branches(d, |root, first| {
        let mut count = 0u64;
        let state = root.push(first);
        if state.feasible(n - 1) {
            search(&state, n - 1, &moves, &mut vec![first], &mut |_| count += 1);
        }
        count
    });
    Ok(branches.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HurwitzCount {
    pub d: usize,
    pub n: usize,
    /// Number of monodromy tuples.
    pub raw: u64,
    /// `raw / d!`, serialized as text (`"4"`, `"1/2"`).
    #[serde(serialize_with = "serialize_display")]
    pub normalized: BigRational,
}

fn serialize_display<S: serde::Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn factorial(d: usize) -> u64 {
    (1..=d as u64).product()
}

/// The Hurwitz number `|tuples| / d!` together with the raw count.
pub fn hurwitz_number(d: usize, n: usize) -> Result<HurwitzCount, HurwitzError> {
    let raw = count_simple_monodromy(d, n)?;
    Ok(HurwitzCount {
        d,
        n,
        raw,
        normalized: BigRational::new(BigInt::from(raw), BigInt::from(factorial(d))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCount {
    /// n-tuples of transpositions with identity product, transitive or not.
    pub product_identity: u64,
    /// Transitive tuples after inclusion–exclusion over the orbit of 1.
    pub transitive: u64,
}

/// Identity-product counts `a[j]` for `j = 0..=n` in S_d, by iterated
/// convolution with the transposition class over the group algebra.
fn identity_product_counts(d: usize, n: usize) -> Vec<u128> {
    let perms = Permutation::all(d);
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let moves = Transposition::all(d);
    let step: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| moves.iter().map(|&t| index[&p.then_transposition(t)]).collect())
        .collect();
    let id = index[&Permutation::identity(d)];
    let mut dist = vec![0u128; perms.len()];
    dist[id] = 1;
    let mut out = vec![dist[id]];
    for _ in 0..n {
        let mut next = vec![0u128; perms.len()];
        for (i, &c) in dist.iter().enumerate() {
            if c != 0 {
                for &j in &step[i] {
                    next[j] += c;
                }
            }
        }
        dist = next;
        out.push(dist[id]);
    }
    out
}

fn binomial_table(n: usize) -> Vec<Vec<u128>> {
    let mut c = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    c
}

/// Independent count of monodromy tuples: group-algebra convolution gives
/// all identity-product tuples; removing those whose orbit through `1` is a
/// proper block (a set partition argument) leaves the transitive ones:
///
/// `a(d,n) = Σ_{m,j} C(d-1,m-1) C(n,j) T(m,j) a(d-m,n-j)`.
pub fn convolution_oracle(d: usize, n: usize) -> Result<OracleCount, HurwitzError> {
    check_scale(d, n, ORACLE_MAX_BRANCH_POINTS)?;
    // a[m][j]: identity-product j-tuples in S_m (a[0][0] = 1).
    let mut a = vec![vec![0u128; n + 1]];
    a[0][0] = 1;
    for m in 1..=d {
        a.push(identity_product_counts(m, n));
    }
    let binom = binomial_table(d.max(n));
    let mut transitive = vec![vec![0u128; n + 1]; d + 1];
    for m in 1..=d {
        for j in 0..=n {
            let mut disconnected = 0u128;
            for block in 1..m {
                for i in 0..=j {
                    disconnected += binom[m - 1][block - 1]
                        * binom[j][i]
                        * transitive[block][i]
                        * a[m - block][j - i];
                }
            }
            transitive[m][j] = a[m][j] - disconnected;
        }
    }
    Ok(OracleCount {
        product_identity: a[d][n] as u64,
        transitive: transitive[d][n] as u64,
    })
}

/// Genus of the cover encoded by `tuple`, from the Hurwitz formula with a
/// rational target.
pub fn tuple_genus(tuple: &MonodromyTuple) -> Result<i64, HurwitzError> {
    Ok(riemann_hurwitz_genus(
        tuple.degree as i64,
        0,
        tuple.factors.len() as i64,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, j: usize, d: usize) -> Transposition {
        Transposition::new(i, j, d).unwrap()
    }

    /// Plain product-and-transitivity filter over all sequences.
    fn brute_force(d: usize, n: usize) -> Vec<Vec<Transposition>> {
        let moves = Transposition::all(d);
        let total = moves.len().pow(n as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut seq = Vec::with_capacity(n);
            for _ in 0..n {
                seq.push(moves[code % moves.len()]);
                code /= moves.len();
            }
            seq.reverse();
            if product(d, &seq).is_identity() && orbit_count(d, &seq) == 1 {
                out.push(seq);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn degree_two_four_points() {
        let tuples = enumerate_simple_monodromy(2, 4).unwrap();
        assert_eq!(tuples.len(), 1);
        assert_eq!(tuples[0].to_string(), "((12),(12),(12),(12))");
        assert_eq!(
            hurwitz_number(2, 4).unwrap().normalized,
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn odd_branch_count_is_empty() {
        assert!(enumerate_simple_monodromy(2, 3).unwrap().is_empty());
        assert_eq!(convolution_oracle(2, 3).unwrap().product_identity, 0);
    }

    #[test]
    fn degree_three_four_points() {
        // 3^4 = 81 sequences checked directly
        let brute = brute_force(3, 4);
        assert_eq!(brute.len(), 24);
        let tuples = enumerate_simple_monodromy(3, 4).unwrap();
        let listed: Vec<_> = tuples.iter().map(|t| t.factors().to_vec()).collect();
        assert_eq!(listed, brute);
        let h = hurwitz_number(3, 4).unwrap();
        assert_eq!(h.raw, 24);
        assert_eq!(h.normalized, BigRational::from_integer(4.into()));
    }

    #[test]
    fn degree_two_two_points() {
        let h = hurwitz_number(2, 2).unwrap();
        assert_eq!(h.raw, 1);
        assert_eq!(h.normalized, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn enumeration_matches_brute_force_small() {
        for d in 1..=4 {
            for n in 0..=5 {
                let listed: Vec<_> = enumerate_simple_monodromy(d, n)
                    .unwrap()
                    .into_iter()
                    .map(|t| t.factors().to_vec())
                    .collect();
                if n == 0 {
                    assert_eq!(listed.len(), (d == 1) as usize);
                    continue;
                }
                assert_eq!(listed, brute_force(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            convolution_oracle(3, 4).unwrap(),
            OracleCount {
                product_identity: 27,
                transitive: 24
            }
        );
        assert_eq!(convolution_oracle(3, 2).unwrap().product_identity, 3);
        assert_eq!(convolution_oracle(3, 2).unwrap().transitive, 0);
        assert_eq!(
            convolution_oracle(2, 3).unwrap(),
            OracleCount {
                product_identity: 0,
                transitive: 0
            }
        );
    }

    #[test]
    fn scale_caps() {
        assert_eq!(
            enumerate_simple_monodromy(7, 2),
            Err(HurwitzError::ScaleCap { d: 7, n: 2 })
        );
        assert_eq!(
            count_simple_monodromy(3, 11),
            Err(HurwitzError::ScaleCap { d: 3, n: 11 })
        );
        assert!(convolution_oracle(3, 12).is_ok());
        assert!(convolution_oracle(3, 13).is_err());
        assert_eq!(hurwitz_number(0, 2), Err(HurwitzError::ZeroDegree));
    }

    #[test]
    fn tuple_validation() {
        assert_eq!(
            MonodromyTuple::new(3, vec![t(0, 1, 3), t(0, 1, 3)]),
            Err(HurwitzError::NotTransitive)
        );
        assert_eq!(
            MonodromyTuple::new(3, vec![t(0, 1, 3), t(1, 2, 3)]),
            Err(HurwitzError::NotIdentityProduct)
        );
        assert!(Transposition::new(1, 1, 3).is_err());
        assert!(Transposition::new(0, 3, 3).is_err());
    }

    #[test]
    fn genus_of_tuples() {
        let g = |d, n| tuple_genus(&enumerate_simple_monodromy(d, n).unwrap()[0]).unwrap();
        assert_eq!(g(2, 4), 1);
        assert_eq!(g(3, 4), 0);
        assert_eq!(g(2, 2), 0);
    }

    #[test]
    fn conjugation_permutes_tuples() {
        for d in 2..=4 {
            let tuples = enumerate_simple_monodromy(d, 4).unwrap();
            let set: std::collections::BTreeSet<_> = tuples.iter().cloned().collect();
            for sigma in Permutation::all(d) {
                let image: std::collections::BTreeSet<_> =
                    tuples.iter().map(|t| t.conjugate(&sigma)).collect();
                assert_eq!(image, set);
            }
        }
    }
}
