//! Commutator and twisted-commutator subspaces, and the classes of basis
//! elements identified by sliding a crossing once around the Moebius band.
//!
//! The twisted commutator is `[a, b]_t = ab - b f(a)` with `f(T_i) = T_{n-i}`.
//! Taking `a = T_i` and `b = T_w` already spans `[A, A]_t`, since
//! `[aa', b]_t = [a, a'b]_t + [a', b f(a)]_t`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{
    left_generator_on_basis, right_generator_on_basis, AlgebraElement, AlgebraParams, Preset,
};
use crate::error::{Error, Result};
use crate::linalg::{span, Rational, SparseVector, Subspace};
use crate::perm::{check_n, factorial, Permutation, Word};

fn terms_vector(
    dim: usize,
    plus: Vec<(Permutation, Rational)>,
    minus: Vec<(Permutation, Rational)>,
) -> SparseVector {
    SparseVector::from_entries(
        dim,
        plus.into_iter()
            .map(|(w, c)| (w.lex_rank(), c))
            .chain(minus.into_iter().map(|(w, c)| (w.lex_rank(), -c))),
    )
    .expect("lex rank below n!")
}

/// Generators `T_i T_w - T_w T_{n-i}` of the twisted commutator subspace.
pub fn twisted_commutator_generators(
    n: usize,
    params: &AlgebraParams,
) -> Result<Vec<SparseVector>> {
    let all = Permutation::all(n)?;
    let dim = all.len();
    let mut out = Vec::with_capacity(dim * (n - 1));
    for i in 1..n {
        for w in &all {
            out.push(terms_vector(
                dim,
                left_generator_on_basis(params, i, w),
                right_generator_on_basis(params, w, n - i),
            ));
        }
    }
    Ok(out)
}

/// Generators `T_i T_w - T_w T_i` of the commutator subspace.
pub fn commutator_generators(n: usize, params: &AlgebraParams) -> Result<Vec<SparseVector>> {
    let all = Permutation::all(n)?;
    let dim = all.len();
    let mut out = Vec::with_capacity(dim * (n - 1));
    for i in 1..n {
        for w in &all {
            out.push(terms_vector(
                dim,
                left_generator_on_basis(params, i, w),
                right_generator_on_basis(params, w, i),
            ));
        }
    }
    Ok(out)
}

/// `[A, A]_t` as a subspace of the `n!`-dimensional coordinate space.
pub fn twisted_commutator_span(n: usize, params: &AlgebraParams) -> Result<Subspace> {
    span(factorial(n), &twisted_commutator_generators(n, params)?)
}

/// `[A, A]` as a subspace of the `n!`-dimensional coordinate space.
pub fn commutator_span(n: usize, params: &AlgebraParams) -> Result<Subspace> {
    span(factorial(n), &commutator_generators(n, params)?)
}

/// Span of `T_u T_v - T_v f(T_u)` over all basis pairs. Quadratic in `n!`;
/// used to validate the generator-only construction.
pub fn full_twisted_commutator_span(n: usize, params: &AlgebraParams) -> Result<Subspace> {
    let all: Vec<_> = Permutation::all(n)?
        .iter()
        .map(|w| AlgebraElement::basis(params, w))
        .collect();
    let mut vectors = Vec::with_capacity(all.len() * all.len());
    for a in &all {
        let fa = a.involve();
        for b in &all {
            vectors.push(a.mul(b)?.sub(&b.mul(&fa)?)?.to_vector());
        }
    }
    span(factorial(n), &vectors)
}

/// `n!` minus the dimension of the (twisted) commutator span.
pub fn quotient_dim(n: usize, params: &AlgebraParams, twisted: bool) -> Result<usize> {
    let s = if twisted {
        twisted_commutator_span(n, params)?
    } else {
        commutator_span(n, params)?
    };
    Ok(s.codim())
}

/// Cycle type of `p ↦ n + 1 - w(p)`, i.e. of `w_0 ∘ w`, as a weakly
/// decreasing partition. Parts are the thicknesses of the closed components
/// on the Moebius band.
pub fn cycle_type(w: &Permutation) -> Vec<usize> {
    let n = w.n();
    let mut seen = vec![false; n + 1];
    let mut parts = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            len += 1;
            p = n + 1 - w.apply(p);
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        Self {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
    }
}

/// One equivalence class of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusClass {
    /// Shortest member, ties broken by canonical reduced word.
    pub representative: Permutation,
    /// Members sorted by length, then canonical reduced word.
    pub members: Vec<Permutation>,
}

impl MobiusClass {
    pub fn contains(&self, w: &Permutation) -> bool {
        self.members.contains(w)
    }
}

/// Partition of the basis `{T_w}` modulo the twisted-commutator relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusClasses {
    pub n: usize,
    pub params: AlgebraParams,
    /// Nonzero classes sorted by representative.
    pub classes: Vec<MobiusClass>,
    /// Basis elements identified with zero; `None` when no product vanishes.
    pub zero_class: Option<Vec<Permutation>>,
}

fn sort_key(w: &Permutation) -> (usize, Word) {
    w.shortlex_key()
}

/// The image of a basis product as a node: `None` for zero, `Some(rank)` for a
/// single basis element with coefficient one.
fn as_node(terms: Vec<(Permutation, Rational)>) -> Result<Option<usize>> {
    match terms.as_slice() {
        [] => Ok(None),
        [(w, c)] if c.is_one() => Ok(Some(w.lex_rank())),
        _ => Err(Error::UnsupportedParams(
            "Moebius classes (a generator times a basis element is not a basis element)",
        )),
    }
}

/// Union-find closure of `T_i T_w ~ T_w T_{n-i}` over all `(i, w)`, with an
/// absorbing zero node.
pub fn mobius_classes(n: usize, params: &AlgebraParams) -> Result<MobiusClasses> {
    check_n(n)?;
    let all = Permutation::all(n)?;
    let zero = all.len();
    let mut uf = UnionFind::new(all.len() + 1);
    let mut vanished = false;
    for i in 1..n {
        for w in &all {
            let left = as_node(left_generator_on_basis(params, i, w))?;
            let right = as_node(right_generator_on_basis(params, w, n - i))?;
            vanished |= left.is_none() || right.is_none();
            uf.union(left.unwrap_or(zero), right.unwrap_or(zero));
        }
    }
    let zero_root = uf.find(zero);
    let mut groups: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    let mut zero_members = Vec::new();
    for (idx, w) in all.into_iter().enumerate() {
        let root = uf.find(idx);
        if root == zero_root {
            zero_members.push(w);
        } else {
            groups.entry(root).or_default().push(w);
        }
    }
    let mut classes: Vec<MobiusClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort_by_cached_key(sort_key);
            MobiusClass {
                representative: members[0].clone(),
                members,
            }
        })
        .collect();
    classes.sort_by_key(|c| sort_key(&c.representative));
    zero_members.sort_by_cached_key(sort_key);
    Ok(MobiusClasses {
        n,
        params: params.clone(),
        classes,
        zero_class: vanished.then_some(zero_members),
    })
}

impl MobiusClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the nonzero class containing `w`.
    pub fn class_of(&self, w: &Permutation) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(w))
    }

    /// Common cycle type of a class, or `None` if members disagree.
    pub fn class_cycle_type(&self, idx: usize) -> Option<Vec<usize>> {
        let members = &self.classes[idx].members;
        let first = cycle_type(&members[0]);
        members[1..]
            .iter()
            .all(|w| cycle_type(w) == first)
            .then_some(first)
    }

    /// Common length of a class, or `None` if members disagree.
    pub fn class_length(&self, idx: usize) -> Option<usize> {
        let members = &self.classes[idx].members;
        let first = members[0].length();
        members[1..]
            .iter()
            .all(|w| w.length() == first)
            .then_some(first)
    }

    /// Serializable form; cycle type and length are only reported for the
    /// Nilcoxeter algebra.
    pub fn report(&self) -> ClassReport {
        let graded = self.params.preset() == Some(Preset::Nilcoxeter);
        ClassReport {
            n: self.n,
            algebra: self.params.name(),
            classes: self
                .classes
                .iter()
                .enumerate()
                .map(|(idx, c)| ClassEntry {
                    representative: c.representative.reduced_word(),
                    members: c.members.iter().map(Permutation::reduced_word).collect(),
                    cycle_type: if graded {
                        self.class_cycle_type(idx)
                    } else {
                        None
                    },
                    length: if graded { self.class_length(idx) } else { None },
                })
                .collect(),
            zero_class: self
                .zero_class
                .iter()
                .flatten()
                .map(Permutation::reduced_word)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub representative: Word,
    pub members: Vec<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_type: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub algebra: String,
    pub classes: Vec<ClassEntry>,
    pub zero_class: Vec<Word>,
}

/// Number of nonzero Nilcoxeter classes per cycle type.
pub fn class_census(n: usize, params: &AlgebraParams) -> Result<BTreeMap<Vec<usize>, usize>> {
    if params.preset() != Some(Preset::Nilcoxeter) {
        return Err(Error::UnsupportedParams("class census (Nilcoxeter only)"));
    }
    let classes = mobius_classes(n, params)?;
    let mut census = BTreeMap::new();
    for idx in 0..classes.len() {
        let ct = classes.class_cycle_type(idx).ok_or_else(|| {
            Error::Inconsistent(format!(
                "class of {:?} mixes cycle types",
                classes.classes[idx].representative
            ))
        })?;
        *census.entry(ct).or_insert(0) += 1;
    }
    Ok(census)
}

/// Whether every nonzero class has a single length.
pub fn classes_are_homogeneous(classes: &MobiusClasses) -> bool {
    (0..classes.len()).all(|idx| classes.class_length(idx).is_some())
}

/// `T_a - T_b` as a coordinate vector.
pub fn basis_difference(a: &Permutation, b: &Permutation) -> SparseVector {
    let dim = factorial(a.n());
    let mut v = SparseVector::zero(dim);
    v.add_at(a.lex_rank(), &Rational::one()).expect("in range");
    v.add_at(b.lex_rank(), &-Rational::one()).expect("in range");
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{expected_class_count, partitions};
    use num_bigint::BigUint;
    use std::collections::BTreeSet;

    fn w(n: usize, letters: &[usize]) -> Permutation {
        Word(letters.to_vec()).evaluate(n).unwrap()
    }

    fn presets() -> Vec<AlgebraParams> {
        Preset::ALL.iter().map(|p| p.params()).collect()
    }

    fn member_sets(c: &MobiusClasses) -> BTreeSet<BTreeSet<Permutation>> {
        c.classes
            .iter()
            .map(|cl| cl.members.iter().cloned().collect())
            .collect()
    }

    fn set(items: &[Permutation]) -> BTreeSet<Permutation> {
        items.iter().cloned().collect()
    }

    #[test]
    fn twisted_span_examples() {
        let nc = AlgebraParams::nilcoxeter();
        assert_eq!(twisted_commutator_span(3, &nc).unwrap().dim(), 3);
        assert_eq!(
            twisted_commutator_span(3, &AlgebraParams::zero_hecke())
                .unwrap()
                .dim(),
            3
        );
        for params in presets() {
            assert_eq!(twisted_commutator_span(1, &params).unwrap().dim(), 0);
            assert_eq!(commutator_span(1, &params).unwrap().dim(), 0);
        }
        let s = twisted_commutator_span(3, &nc).unwrap();
        assert!(s
            .contains(&basis_difference(&w(3, &[1]), &w(3, &[2])))
            .unwrap());
        assert!(!s
            .contains(&basis_difference(&w(3, &[]), &w(3, &[1])))
            .unwrap());
    }

    #[test]
    fn quotient_dim_examples() {
        let nc = AlgebraParams::nilcoxeter();
        assert_eq!(quotient_dim(3, &nc, true).unwrap(), 3);
        assert_eq!(quotient_dim(4, &nc, true).unwrap(), 5);
        assert_eq!(quotient_dim(6, &nc, true).unwrap(), 12);
        assert_eq!(
            quotient_dim(3, &AlgebraParams::group_algebra(), false).unwrap(),
            3
        );
    }

    #[test]
    fn group_algebra_commutator_quotient_counts_conjugacy_classes() {
        // brute force: number of conjugacy classes of S_n
        for n in 1..=5 {
            let all = Permutation::all(n).unwrap();
            let mut seen = BTreeSet::new();
            let mut classes = 0;
            for x in &all {
                if seen.contains(x) {
                    continue;
                }
                classes += 1;
                for g in &all {
                    seen.insert(g.compose(x).unwrap().compose(&g.inverse()).unwrap());
                }
            }
            assert_eq!(
                quotient_dim(n, &AlgebraParams::group_algebra(), false).unwrap(),
                classes
            );
        }
    }

    #[test]
    fn generator_span_equals_full_span() {
        for params in presets() {
            for n in 1..=4 {
                assert_eq!(
                    twisted_commutator_span(n, &params).unwrap(),
                    full_twisted_commutator_span(n, &params).unwrap()
                );
            }
        }
    }

    #[test]
    fn mobius_class_examples() {
        let nc = AlgebraParams::nilcoxeter();
        let c = mobius_classes(3, &nc).unwrap();
        let expected: BTreeSet<_> = [
            set(&[w(3, &[])]),
            set(&[w(3, &[1]), w(3, &[2])]),
            set(&[w(3, &[1, 2, 1])]),
        ]
        .into_iter()
        .collect();
        assert_eq!(member_sets(&c), expected);
        assert_eq!(
            set(c.zero_class.as_ref().unwrap()),
            set(&[w(3, &[1, 2]), w(3, &[2, 1])])
        );
        assert_eq!(c.classes[1].representative, w(3, &[1]));

        let h = mobius_classes(3, &AlgebraParams::zero_hecke()).unwrap();
        let expected: BTreeSet<_> = [
            set(&[w(3, &[])]),
            set(&[w(3, &[1]), w(3, &[2]), w(3, &[1, 2]), w(3, &[2, 1])]),
            set(&[w(3, &[1, 2, 1])]),
        ]
        .into_iter()
        .collect();
        assert_eq!(member_sets(&h), expected);
        assert!(h.zero_class.is_none());

        for params in presets() {
            let c = mobius_classes(1, &params).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(
                c.classes[0].members,
                vec![Permutation::identity(1).unwrap()]
            );
        }
        let generic = AlgebraParams::new(
            Rational::from_integer(2.into()),
            Rational::from_integer(0.into()),
        );
        assert!(matches!(
            mobius_classes(3, &generic),
            Err(Error::UnsupportedParams(_))
        ));
    }

    /// Independent closure: BFS over the relation using full algebra products.
    fn oracle_classes(
        n: usize,
        params: &AlgebraParams,
    ) -> (BTreeSet<BTreeSet<Permutation>>, BTreeSet<Permutation>) {
        let all = Permutation::all(n).unwrap();
        let mut adj: BTreeMap<Option<Permutation>, Vec<Option<Permutation>>> = BTreeMap::new();
        for x in &all {
            let tx = AlgebraElement::basis(params, x);
            for i in 1..n {
                let ti = AlgebraElement::from_word(n, params, &Word(vec![i])).unwrap();
                let tj = AlgebraElement::from_word(n, params, &Word(vec![n - i])).unwrap();
                let node = |e: AlgebraElement| e.support().next().cloned();
                let l = node(ti.mul(&tx).unwrap());
                let r = node(tx.mul(&tj).unwrap());
                adj.entry(l.clone()).or_default().push(r.clone());
                adj.entry(r).or_default().push(l);
            }
        }
        let mut seen: BTreeSet<Option<Permutation>> = BTreeSet::new();
        let mut classes = BTreeSet::new();
        let mut zero = BTreeSet::new();
        let starts: Vec<Option<Permutation>> = std::iter::once(None)
            .chain(all.iter().cloned().map(Some))
            .collect();
        for start in starts {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start.clone()];
            while let Some(x) = stack.pop() {
                if !seen.insert(x.clone()) {
                    continue;
                }
                comp.insert(x.clone());
                for y in adj.get(&x).into_iter().flatten() {
                    stack.push(y.clone());
                }
            }
            if comp.contains(&None) {
                zero = comp.into_iter().flatten().collect();
            } else {
                classes.insert(comp.into_iter().flatten().collect());
            }
        }
        (classes, zero)
    }

    #[test]
    fn classes_match_bfs_oracle() {
        for params in presets() {
            for n in 1..=5 {
                let c = mobius_classes(n, &params).unwrap();
                let (classes, zero) = oracle_classes(n, &params);
                assert_eq!(member_sets(&c), classes);
                assert_eq!(set(c.zero_class.as_deref().unwrap_or(&[])), zero);
            }
        }
    }

    #[test]
    fn class_counts_match_quotient_dim() {
        for params in presets() {
            for n in 1..=5 {
                assert_eq!(
                    mobius_classes(n, &params).unwrap().len(),
                    quotient_dim(n, &params, true).unwrap()
                );
            }
        }
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(cycle_type(&w(3, &[])), vec![2, 1]);
        assert_eq!(cycle_type(&w(3, &[1, 2, 1])), vec![1, 1, 1]);
        assert_eq!(cycle_type(&w(3, &[1])), vec![3]);
        for n in 1..=6 {
            for x in Permutation::all(n).unwrap() {
                let ct = cycle_type(&x);
                assert_eq!(ct.iter().sum::<usize>(), n);
                // inverse convention gives the same type
                assert_eq!(cycle_type(&x.inverse()), ct);
            }
        }
    }

    #[test]
    fn census_examples() {
        let nc = AlgebraParams::nilcoxeter();
        let c3 = class_census(3, &nc).unwrap();
        let expected: BTreeMap<Vec<usize>, usize> =
            [(vec![2, 1], 1), (vec![3], 1), (vec![1, 1, 1], 1)]
                .into_iter()
                .collect();
        assert_eq!(c3, expected);
        let c1 = class_census(1, &nc).unwrap();
        assert_eq!(c1, [(vec![1], 1)].into_iter().collect());
        let c6 = class_census(6, &nc).unwrap();
        assert_eq!(c6.len(), 11);
        for (parts, count) in &c6 {
            let want = if parts == &vec![4, 2] { 2 } else { 1 };
            assert_eq!(*count, want, "{parts:?}");
        }
        assert!(matches!(
            class_census(3, &AlgebraParams::zero_hecke()),
            Err(Error::UnsupportedParams(_))
        ));
    }

    #[test]
    fn census_matches_formula_up_to_6() {
        let nc = AlgebraParams::nilcoxeter();
        for n in 1..=6 {
            let census = class_census(n, &nc).unwrap();
            for lambda in partitions(n) {
                let got = census.get(&lambda.parts).copied().unwrap_or(0);
                assert_eq!(BigUint::from(got), expected_class_count(&lambda));
            }
        }
    }

    #[test]
    fn nilcoxeter_classes_homogeneous_hecke_not() {
        let nc = mobius_classes(5, &AlgebraParams::nilcoxeter()).unwrap();
        assert!(classes_are_homogeneous(&nc));
        let h = mobius_classes(3, &AlgebraParams::zero_hecke()).unwrap();
        assert!(!classes_are_homogeneous(&h));
    }

    #[test]
    fn twisted_quotients_agree_between_nc_and_hecke() {
        for n in 1..=5 {
            assert_eq!(
                quotient_dim(n, &AlgebraParams::nilcoxeter(), true).unwrap(),
                quotient_dim(n, &AlgebraParams::zero_hecke(), true).unwrap()
            );
        }
    }

    #[test]
    fn class_report_json() {
        let c = mobius_classes(3, &AlgebraParams::nilcoxeter()).unwrap();
        let json = serde_json::to_string(&c.report()).unwrap();
        assert_eq!(
            json,
            concat!(
                r#"{"n":3,"algebra":"nilcoxeter","classes":["#,
                r#"{"representative":[],"members":[[]],"cycle_type":[2,1],"length":0},"#,
                r#"{"representative":[1],"members":[[1],[2]],"cycle_type":[3],"length":1},"#,
                r#"{"representative":[1,2,1],"members":[[1,2,1]],"cycle_type":[1,1,1],"length":3}],"#,
                r#""zero_class":[[1,2],[2,1]]}"#
            )
        );
        let h = mobius_classes(3, &AlgebraParams::zero_hecke())
            .unwrap()
            .report();
        assert!(h.classes.iter().all(|c| c.cycle_type.is_none()));
        assert!(h.zero_class.is_empty());
    }
}
