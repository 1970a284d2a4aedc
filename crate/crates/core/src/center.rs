//! Centers and twisted centers, the Nilcoxeter center basis built from
//! complements, dual bases obtained by solving the trace pairing against
//! Moebius classes, and the 0-Hecke support report.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    gram_rows, left_generator_on_basis, right_complements, right_generator_on_basis,
    AlgebraElement, AlgebraParams, Preset, TermJson,
};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, kernel, solve_affine, Rational, SparseVector, Subspace};
use crate::perm::{check_n, factorial, Permutation, Word};
use crate::quotients::mobius_classes;

/// Rows of the linear system `Σ_w z_w (L_w - R_w) = 0`, where the columns
/// `L_w - R_w` are given per basis element.
fn commutant<F>(n: usize, mut column: F) -> Result<Subspace>
where
    F: FnMut(usize, &Permutation) -> Vec<(Permutation, Rational)>,
{
    check_n(n)?;
    let all = Permutation::all(n)?;
    let dim = all.len();
    let mut rows: BTreeMap<(usize, usize), SparseVector> = BTreeMap::new();
    for i in 1..n {
        for w in &all {
            let col = w.lex_rank();
            for (u, c) in column(i, w) {
                rows.entry((i, u.lex_rank()))
                    .or_insert_with(|| SparseVector::zero(dim))
                    .add_at(col, &c)?;
            }
        }
    }
    let rows: Vec<_> = rows.into_values().filter(|r| !r.is_zero()).collect();
    kernel(dim, &rows)
}

fn negated(terms: Vec<(Permutation, Rational)>) -> impl Iterator<Item = (Permutation, Rational)> {
    terms.into_iter().map(|(w, c)| (w, -c))
}

/// `Z(A)`: all `z` with `T_i z = z T_i` for every generator.
pub fn center(n: usize, params: &AlgebraParams) -> Result<Subspace> {
    commutant(n, |i, w| {
        let mut terms = left_generator_on_basis(params, i, w);
        terms.extend(negated(right_generator_on_basis(params, w, i)));
        terms
    })
}

/// `TZ(A)`: all `z` with `z T_i = T_{n-i} z` for every generator.
pub fn twisted_center(n: usize, params: &AlgebraParams) -> Result<Subspace> {
    commutant(n, |i, w| {
        let mut terms = right_generator_on_basis(params, w, i);
        terms.extend(negated(left_generator_on_basis(params, n - i, w)));
        terms
    })
}

/// A center element tagged with the representative of its dual class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterElement {
    pub label: Permutation,
    pub element: AlgebraElement,
}

/// A basis of `Z(A)` indexed by Moebius classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterBasis {
    pub n: usize,
    pub params: AlgebraParams,
    pub elements: Vec<CenterElement>,
}

impl CenterBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn vectors(&self) -> Vec<SparseVector> {
        self.elements
            .iter()
            .map(|e| e.element.to_vector())
            .collect()
    }

    /// Position of the element equal to `T_e`, compared exactly.
    pub fn identity_index(&self) -> Option<usize> {
        let e = AlgebraElement::basis(&self.params, &Permutation::identity(self.n).ok()?);
        self.elements.iter().position(|z| z.element == e)
    }

    pub fn report(&self) -> CenterBasisReport {
        CenterBasisReport {
            n: self.n,
            algebra: self.params.clone(),
            elements: self
                .elements
                .iter()
                .map(|z| CenterBasisEntry {
                    label: z.label.reduced_word(),
                    degrees: z.element.degrees(),
                    element: z.element.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterBasisEntry {
    pub label: Word,
    pub degrees: Vec<usize>,
    pub element: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterBasisReport {
    pub n: usize,
    pub algebra: AlgebraParams,
    pub elements: Vec<CenterBasisEntry>,
}

/// For each nonzero Nilcoxeter class `c`, `z_c = Σ_{w ∈ c} T_{w^{-1} w_0}`.
pub fn nc_center_basis(n: usize) -> Result<CenterBasis> {
    let params = AlgebraParams::nilcoxeter();
    let classes = mobius_classes(n, &params)?;
    let w0 = Permutation::longest_element(n)?;
    let elements = classes
        .classes
        .iter()
        .map(|class| {
            let terms = class
                .members
                .iter()
                .map(|w| Ok((w.inverse().compose(&w0)?, Rational::one())))
                .collect::<Result<Vec<_>>>()?;
            Ok(CenterElement {
                label: class.representative.clone(),
                element: AlgebraElement::from_terms(n, &params, terms)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CenterBasis {
        n,
        params,
        elements,
    })
}

/// The basis of `Z(A)` dual to the Moebius classes: `z_c` is the unique
/// central element with `trace(T_w z_c) = 1` for `w ∈ c` and `0` otherwise.
pub fn dual_center_basis(n: usize, params: &AlgebraParams) -> Result<CenterBasis> {
    match params.preset() {
        Some(Preset::Nilcoxeter | Preset::ZeroHecke) => {}
        _ => {
            return Err(Error::UnsupportedParams(
                "dual center basis (Nilcoxeter or 0-Hecke only)",
            ))
        }
    }
    let classes = mobius_classes(n, params)?;
    let z = center(n, params)?;
    let gram = gram_rows(n, params)?;
    let all = Permutation::all(n)?;
    let elements = classes
        .classes
        .iter()
        .map(|class| {
            let members: BTreeSet<&Permutation> = class.members.iter().collect();
            let constraints: Vec<_> = all
                .iter()
                .zip(&gram)
                .map(|(w, row)| {
                    let value = if members.contains(w) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    (row.clone(), value)
                })
                .collect();
            let x = solve_affine(&constraints, z.basis()).map_err(|e| {
                Error::Inconsistent(format!(
                    "dual element for class of {:?} in {}: {e}",
                    class.representative, params
                ))
            })?;
            Ok(CenterElement {
                label: class.representative.clone(),
                element: AlgebraElement::from_vector(n, params, &x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CenterBasis {
        n,
        params: params.clone(),
        elements,
    })
}

/// The preferred basis of `Z(A)`: the complement basis for the Nilcoxeter
/// algebra, the dual basis for 0-Hecke, and otherwise the reduced echelon
/// basis of the commutant labeled by pivot.
pub fn center_basis(n: usize, params: &AlgebraParams) -> Result<CenterBasis> {
    match params.preset() {
        Some(Preset::Nilcoxeter) => nc_center_basis(n),
        Some(Preset::ZeroHecke) => dual_center_basis(n, params),
        _ => {
            let z = center(n, params)?;
            let elements = z
                .basis()
                .iter()
                .zip(z.pivots())
                .map(|(v, &p)| {
                    Ok(CenterElement {
                        label: Permutation::from_lex_rank(n, p)?,
                        element: AlgebraElement::from_vector(n, params, v)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CenterBasis {
                n,
                params: params.clone(),
                elements,
            })
        }
    }
}

/// `entries[i][j]` holds the coordinates of `z_i z_j` in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    pub labels: Vec<Permutation>,
    pub entries: Vec<Vec<Vec<Rational>>>,
}

impl MultiplicationTable {
    /// Pairs `(i, j)` of basis elements other than `T_e` whose product is
    /// nonzero.
    pub fn nonzero_nonidentity_products(&self, identity: Option<usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, coords) in row.iter().enumerate() {
                if Some(i) == identity || Some(j) == identity {
                    continue;
                }
                if coords.iter().any(|c| !c.is_zero()) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn report(&self) -> TableReport {
        TableReport {
            labels: self.labels.iter().map(Permutation::reduced_word).collect(),
            entries: self
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|coords| coords.iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub labels: Vec<Word>,
    pub entries: Vec<Vec<Vec<String>>>,
}

/// Products of all basis pairs, expressed back in the basis.
pub fn multiplication_table(basis: &CenterBasis) -> Result<MultiplicationTable> {
    let vectors = basis.vectors();
    let mut entries = Vec::with_capacity(basis.len());
    for zi in &basis.elements {
        let mut row = Vec::with_capacity(basis.len());
        for zj in &basis.elements {
            let product = zi.element.mul(&zj.element)?;
            let coords = coordinates(&vectors, &product.to_vector()).map_err(|e| {
                Error::Inconsistent(format!(
                    "product of basis elements {:?} and {:?} is not in their span: {e}",
                    zi.label, zj.label
                ))
            })?;
            row.push(coords);
        }
        entries.push(row);
    }
    Ok(MultiplicationTable {
        labels: basis.elements.iter().map(|z| z.label.clone()).collect(),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureClass {
    pub representative: Word,
    pub dual_element: AlgebraElement,
    pub support_in_complements: bool,
    pub complement_coefficients: Vec<TermJson>,
    pub coefficients_integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub classes: Vec<ConjectureClass>,
    pub unique_complement_per_crossing_number: bool,
    pub crossing_number_violations: Vec<Word>,
}

/// For every 0-Hecke class, checks whether the dual center element is
/// supported on complements of class members, and records its coefficients
/// there.
pub fn verify_hn_conjecture(n: usize) -> Result<ConjectureReport> {
    let params = AlgebraParams::zero_hecke();
    let dual = dual_center_basis(n, &params)?;
    let classes = mobius_classes(n, &params)?;
    let mut complements: BTreeMap<Permutation, Vec<Permutation>> = BTreeMap::new();
    for w in Permutation::all(n)? {
        let comps = right_complements(&w, &params)?;
        complements.insert(w, comps);
    }
    let mut crossing_number_violations: Vec<Permutation> = complements
        .iter()
        .filter(|(_, comps)| {
            let lengths: BTreeSet<usize> = comps.iter().map(Permutation::length).collect();
            lengths.len() != comps.len()
        })
        .map(|(w, _)| w.clone())
        .collect();
    crossing_number_violations.sort_by_cached_key(Permutation::shortlex_key);
    let mut out = Vec::with_capacity(classes.len());
    for (class, z) in classes.classes.iter().zip(&dual.elements) {
        debug_assert_eq!(class.representative, z.label);
        let mut allowed: Vec<Permutation> = class
            .members
            .iter()
            .flat_map(|w| complements[w].iter().cloned())
            .collect();
        allowed.sort_by_cached_key(Permutation::shortlex_key);
        allowed.dedup();
        let support_in_complements = z.element.support().all(|b| allowed.contains(b));
        let complement_coefficients = allowed
            .iter()
            .map(|b| TermJson {
                word: b.reduced_word(),
                coeff: z.element.coefficient(b),
            })
            .collect();
        out.push(ConjectureClass {
            representative: class.representative.reduced_word(),
            dual_element: z.element.clone(),
            support_in_complements,
            complement_coefficients,
            coefficients_integral: z.element.terms().all(|(_, c)| c.is_integer()),
        });
    }
    Ok(ConjectureReport {
        n,
        classes: out,
        unique_complement_per_crossing_number: crossing_number_violations.is_empty(),
        crossing_number_violations: crossing_number_violations
            .iter()
            .map(Permutation::reduced_word)
            .collect(),
    })
}

/// Whether `z` commutes with every generator.
pub fn is_central(z: &AlgebraElement) -> Result<bool> {
    for i in 1..z.n() {
        if z.mul_left_generator(i)? != z.mul_right_generator(i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Trace pairing `trace(T_w · z)` for every basis element `w`, in
/// lexicographic order.
pub fn trace_profile(z: &AlgebraElement) -> Result<Vec<Rational>> {
    let n = z.n();
    let mut out = Vec::with_capacity(factorial(n));
    for w in Permutation::all(n)? {
        out.push(AlgebraElement::basis(z.params(), &w).mul(z)?.trace());
    }
    Ok(out)
}
