//! Exact sparse linear algebra over `Q`.
//!
//! Vectors live in coordinate spaces indexed by the lexicographic rank of
//! permutations. Every subspace is stored in reduced row-echelon form, pivot
//! being the smallest index with a nonzero entry.

mod modular;
mod rational;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use modular::{is_prime_u64, random_prime_62, rank_mod_p};
pub(crate) use rational::as_string as rational_string;
pub use rational::{format_rational, parse_rational, Rational};

/// A vector with finitely many nonzero rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVector {
    dim: usize,
    entries: BTreeMap<usize, Rational>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// The standard basis vector `e_index`.
    pub fn unit(dim: usize, index: usize) -> Result<Self> {
        let mut v = Self::zero(dim);
        v.set(index, Rational::one())?;
        Ok(v)
    }

    /// Collects `(index, value)` pairs, summing duplicates and dropping zeros.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut v = Self::zero(dim);
        for (i, c) in entries {
            v.add_at(i, &c)?;
        }
        Ok(v)
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Self {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Rational {
        self.entries
            .get(&index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    /// Smallest index with a nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.dim {
            return Err(Error::IndexOutOfRange {
                index,
                max: self.dim.saturating_sub(1),
            });
        }
        Ok(())
    }

    pub fn set(&mut self, index: usize, value: Rational) -> Result<()> {
        self.check_index(index)?;
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
        Ok(())
    }

    pub fn add_at(&mut self, index: usize, value: &Rational) -> Result<()> {
        self.check_index(index)?;
        add_entry(&mut self.entries, index, value.clone());
        Ok(())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &Self) -> Result<()> {
        self.check_dim(other)?;
        self.axpy_unchecked(factor, other);
        Ok(())
    }

    fn axpy_unchecked(&mut self, factor: &Rational, other: &Self) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.entries {
            add_entry(&mut self.entries, i, factor * c);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|(&i, c)| (i, c * factor)).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Result<Rational> {
        self.check_dim(other)?;
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (i, c) in &small.entries {
            if let Some(d) = large.entries.get(i) {
                acc += c * d;
            }
        }
        Ok(acc)
    }
}

fn add_entry(entries: &mut BTreeMap<usize, Rational>, index: usize, value: Rational) {
    if value.is_zero() {
        return;
    }
    match entries.get_mut(&index) {
        Some(c) => {
            *c += value;
            if c.is_zero() {
                entries.remove(&index);
            }
        }
        None => {
            entries.insert(index, value);
        }
    }
}

fn check_shared_dim(vectors: &[SparseVector]) -> Result<Option<usize>> {
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    for v in vectors {
        first.check_dim(v)?;
    }
    Ok(Some(first.dim))
}

/// Row echelon form under construction: rows keyed by pivot, each
/// normalized to leading coefficient one.
#[derive(Clone, Debug)]
struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVector>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: BTreeMap::new(),
        }
    }

    /// Eliminates every pivot column from `v`.
    ///
    /// A row only has entries at or beyond its pivot, so one ascending sweep
    /// suffices.
    fn reduce(&self, v: &mut SparseVector) {
        let mut cursor = 0;
        while let Some((&k, c)) = v.entries.range(cursor..).next() {
            cursor = k + 1;
            if let Some(row) = self.rows.get(&k) {
                let factor = -c.clone();
                v.axpy_unchecked(&factor, row);
            }
        }
    }

    /// Adds `v` to the row space; returns whether it was independent.
    fn insert(&mut self, mut v: SparseVector) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.leading_index() else {
            return false;
        };
        let inv = v.entries[&pivot].recip();
        let v = v.scaled(&inv);
        self.rows.insert(pivot, v);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn into_subspace(mut self) -> Subspace {
        // back-substitute, highest pivot first
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (idx, &p) in pivots.iter().enumerate().rev() {
            let row_p = self.rows[&p].clone();
            for &q in &pivots[..idx] {
                let row_q = self.rows.get_mut(&q).unwrap();
                if let Some(c) = row_q.entries.get(&p) {
                    let factor = -c.clone();
                    row_q.axpy_unchecked(&factor, &row_p);
                }
            }
        }
        Subspace {
            ambient_dimension: self.dim,
            pivots,
            basis: self.rows.into_values().collect(),
        }
    }
}

/// A linear subspace stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dimension: usize,
    basis: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dimension: usize) -> Self {
        Self {
            ambient_dimension,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dimension: usize) -> Self {
        let basis = (0..ambient_dimension)
            .map(|i| SparseVector::unit(ambient_dimension, i).unwrap())
            .collect();
        Self {
            ambient_dimension,
            basis,
            pivots: (0..ambient_dimension).collect(),
        }
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient_dimension
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dimension - self.dim()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        if v.dim != self.ambient_dimension {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dimension,
                actual: v.dim,
            });
        }
        let mut residual = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.basis) {
            let c = residual.get(*p);
            if !c.is_zero() {
                residual.axpy_unchecked(&-c, row);
            }
        }
        Ok(residual.is_zero())
    }

    /// Whether both subspaces coincide (RREF bases are unique).
    pub fn same_as(&self, other: &Self) -> bool {
        self == other
    }
}

/// Reduced row-echelon basis of the span of `vectors`.
///
/// The ambient dimension cannot be inferred from an empty list, so it is
/// passed explicitly.
pub fn span(ambient_dimension: usize, vectors: &[SparseVector]) -> Result<Subspace> {
    let mut ech = Echelon::new(ambient_dimension);
    for v in vectors {
        if v.dim != ambient_dimension {
            return Err(Error::DimensionMismatch {
                expected: ambient_dimension,
                actual: v.dim,
            });
        }
        ech.insert(v.clone());
    }
    Ok(ech.into_subspace())
}

/// Dimension of the span of `vectors`.
pub fn rank(vectors: &[SparseVector]) -> Result<usize> {
    let Some(dim) = check_shared_dim(vectors)? else {
        return Ok(0);
    };
    let mut ech = Echelon::new(dim);
    for v in vectors {
        ech.insert(v.clone());
    }
    Ok(ech.rank())
}

/// Solution space of `⟨row, x⟩ = 0` for every row.
pub fn kernel(ambient_dimension: usize, rows: &[SparseVector]) -> Result<Subspace> {
    let rref = span(ambient_dimension, rows)?;
    let pivot_set: std::collections::BTreeSet<usize> = rref.pivots.iter().copied().collect();
    let mut vectors = Vec::new();
    for free in (0..ambient_dimension).filter(|c| !pivot_set.contains(c)) {
        let mut x = SparseVector::zero(ambient_dimension);
        x.entries.insert(free, Rational::one());
        for (p, row) in rref.pivots.iter().zip(&rref.basis) {
            let c = row.get(free);
            if !c.is_zero() {
                x.entries.insert(*p, -c);
            }
        }
        vectors.push(x);
    }
    span(ambient_dimension, &vectors)
}

/// Finds the unique `x = Σ c_k · unknowns_basis[k]` with
/// `⟨constraint_j, x⟩ = value_j` for all `j`.
pub fn solve_affine(
    constraints: &[(SparseVector, Rational)],
    unknowns_basis: &[SparseVector],
) -> Result<SparseVector> {
    let dim = match (unknowns_basis.first(), constraints.first()) {
        (Some(u), _) => u.dim,
        (None, Some((c, _))) => c.dim,
        (None, None) => {
            return Err(Error::Inconsistent(
                "empty system has no ambient dimension".into(),
            ))
        }
    };
    for u in unknowns_basis {
        if u.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: u.dim,
            });
        }
    }
    let k = unknowns_basis.len();
    let mut ech = Echelon::new(k + 1);
    for (g, value) in constraints {
        if g.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: g.dim,
            });
        }
        let mut row = SparseVector::zero(k + 1);
        for (j, u) in unknowns_basis.iter().enumerate() {
            let c = g.dot(u)?;
            if !c.is_zero() {
                row.entries.insert(j, c);
            }
        }
        if !value.is_zero() {
            row.entries.insert(k, value.clone());
        }
        ech.insert(row);
    }
    let rref = ech.into_subspace();
    if rref.pivots.contains(&k) {
        return Err(Error::NoSolution);
    }
    if rref.dim() < k {
        return Err(Error::NonUnique);
    }
    let mut x = SparseVector::zero(dim);
    for (j, row) in rref.basis.iter().enumerate() {
        let c = row.get(k);
        x.axpy_unchecked(&c, &unknowns_basis[j]);
    }
    Ok(x)
}

/// Coordinates of `v` in the (linearly independent) `basis`.
pub fn coordinates(basis: &[SparseVector], v: &SparseVector) -> Result<Vec<Rational>> {
    let k = basis.len();
    let mut ech = Echelon::new(k + 1);
    let dim = v.dim;
    // column j of the system is basis[j]; one equation per coordinate
    let mut rows: BTreeMap<usize, SparseVector> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        if b.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: b.dim,
            });
        }
        for (i, c) in b.iter() {
            rows.entry(i)
                .or_insert_with(|| SparseVector::zero(k + 1))
                .entries
                .insert(j, c.clone());
        }
    }
    for (i, c) in v.iter() {
        rows.entry(i)
            .or_insert_with(|| SparseVector::zero(k + 1))
            .entries
            .insert(k, c.clone());
    }
    for row in rows.into_values() {
        ech.insert(row);
    }
    let rref = ech.into_subspace();
    if rref.pivots.contains(&k) {
        return Err(Error::NoSolution);
    }
    if rref.dim() < k {
        return Err(Error::NonUnique);
    }
    Ok(rref.basis.iter().map(|row| row.get(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn vec_of(values: &[i64]) -> SparseVector {
        SparseVector::from_dense(&values.iter().map(|&v| q(v)).collect::<Vec<_>>())
    }

    /// Textbook dense Gauss-Jordan over Q; independent of the sparse path.
    fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = &row[col] / &pivot_row[col];
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn span_examples() {
        let s = span(3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        let e1 = vec_of(&[1, 0]);
        let e12 = vec_of(&[1, 1]);
        let s = span(2, &[e1, e12]).unwrap();
        assert_eq!(s, Subspace::full(2));
        assert!(matches!(
            span(2, &[vec_of(&[1, 0, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let v = vec_of(&[1, -2, 3]);
        assert_eq!(rank(&[v.clone(), v.scaled(&q(2))]).unwrap(), 1);
        let id: Vec<_> = (0..5).map(|i| SparseVector::unit(5, i).unwrap()).collect();
        assert_eq!(rank(&id).unwrap(), 5);
        assert_eq!(rank(&[]).unwrap(), 0);
        assert!(rank(&[vec_of(&[1]), vec_of(&[1, 2])]).is_err());
    }

    #[test]
    fn contains_examples() {
        let s = span(3, &[vec_of(&[1, 1, 0])]).unwrap();
        assert!(s.contains(&SparseVector::zero(3)).unwrap());
        assert!(!Subspace::zero(3).contains(&vec_of(&[1, 0, 0])).unwrap());
        assert!(s.contains(&vec_of(&[-3, -3, 0])).unwrap());
        assert!(!s.contains(&vec_of(&[1, 0, 0])).unwrap());
        assert!(s.contains(&vec_of(&[1, 0])).is_err());
    }

    #[test]
    fn rref_shape() {
        let s = span(4, &[vec_of(&[2, 4, 0, 2]), vec_of(&[1, 3, 1, 0])]).unwrap();
        assert_eq!(s.pivots(), &[0, 1]);
        for (p, row) in s.pivots().iter().zip(s.basis()) {
            assert_eq!(row.get(*p), q(1));
            for other in s.pivots().iter().filter(|o| *o != p) {
                assert!(row.get(*other).is_zero());
            }
        }
    }

    #[test]
    fn solve_affine_examples() {
        let e1 = SparseVector::unit(2, 0).unwrap();
        let x = solve_affine(&[(e1.clone(), q(1))], std::slice::from_ref(&e1)).unwrap();
        assert_eq!(x, e1);
        assert_eq!(
            solve_affine(
                &[(e1.clone(), q(1)), (e1.clone(), q(0))],
                std::slice::from_ref(&e1)
            ),
            Err(Error::NoSolution)
        );
        let e2 = SparseVector::unit(2, 1).unwrap();
        assert_eq!(
            solve_affine(&[(e1.clone(), q(1))], &[e1.clone(), e2.clone()]),
            Err(Error::NonUnique)
        );
        let x = solve_affine(
            &[(vec_of(&[1, 1]), q(3)), (vec_of(&[1, -1]), q(1))],
            &[e1, e2],
        )
        .unwrap();
        assert_eq!(x, vec_of(&[2, 1]));
    }

    #[test]
    fn kernel_and_coordinates() {
        let rows = [vec_of(&[1, 1, 0]), vec_of(&[0, 1, 1])];
        let k = kernel(3, &rows).unwrap();
        assert_eq!(k.dim(), 1);
        let v = &k.basis()[0];
        for r in &rows {
            assert!(r.dot(v).unwrap().is_zero());
        }
        let basis = [vec_of(&[1, 1, 0]), vec_of(&[0, 1, 1])];
        let c = coordinates(&basis, &vec_of(&[2, 5, 3])).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert_eq!(
            coordinates(&basis, &vec_of(&[1, 0, 0])),
            Err(Error::NoSolution)
        );
        assert_eq!(kernel(2, &[]).unwrap(), Subspace::full(2));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=8, 1usize..=8)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(m in small_matrix()) {
            let vs: Vec<_> = m.iter().map(|r| vec_of(r)).collect();
            let dense: Vec<Vec<Rational>> =
                m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            prop_assert_eq!(rank(&vs).unwrap(), dense_rank(dense));
        }

        #[test]
        fn rank_independent_of_order(m in small_matrix(), seed in any::<u64>()) {
            let mut vs: Vec<_> = m.iter().map(|r| vec_of(r)).collect();
            let r0 = rank(&vs).unwrap();
            let len = vs.len();
            for i in 0..len {
                let j = (seed as usize).wrapping_mul(i + 7) % len;
                vs.swap(i, j);
            }
            prop_assert_eq!(rank(&vs).unwrap(), r0);
        }

        #[test]
        fn span_idempotent(m in small_matrix()) {
            let dim = m[0].len();
            let vs: Vec<_> = m.iter().map(|r| vec_of(r)).collect();
            let s = span(dim, &vs).unwrap();
            let again = span(dim, s.basis()).unwrap();
            prop_assert_eq!(&again, &s);
            for v in &vs {
                prop_assert!(s.contains(v).unwrap());
            }
        }

        #[test]
        fn kernel_is_orthogonal_and_complementary(m in small_matrix()) {
            let dim = m[0].len();
            let vs: Vec<_> = m.iter().map(|r| vec_of(r)).collect();
            let k = kernel(dim, &vs).unwrap();
            prop_assert_eq!(k.dim() + rank(&vs).unwrap(), dim);
            for x in k.basis() {
                for r in &vs {
                    prop_assert!(r.dot(x).unwrap().is_zero());
                }
            }
        }
    }
}
