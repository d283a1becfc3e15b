//! Shared test support: seeded random fixtures and small independent
//! oracles built on plain integer matrices.
#![allow(dead_code)]

use graded_core::fixtures::{self, connected_groupoid, cyclic_group, disjoint_union, klein_four, symmetric_group_3};
use graded_core::{
    build_das, validate_category, DasBuild, FiniteAlgebra, FiniteGroupoid, MorphismId, SelectionSpec, Subspace, Vector,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// A group as a one-object groupoid, chosen among cyclic groups of order
/// 1 to 5 and the Klein four-group.
pub fn random_group(rng: &mut StdRng) -> FiniteGroupoid {
    match rng.gen_range(0..6) {
        5 => klein_four(),
        k => cyclic_group(k + 1),
    }
}

fn vertex_group(order: usize) -> FiniteGroupoid {
    match order {
        4 => klein_four(),
        6 => symmetric_group_3(),
        n => cyclic_group(n),
    }
}

/// A groupoid with at most 3 objects and at most 12 morphisms: a disjoint
/// union of connected groupoids, with morphisms declared in shuffled order.
pub fn random_groupoid(rng: &mut StdRng) -> FiniteGroupoid {
    loop {
        let objects = rng.gen_range(1..=3);
        let mut sizes = Vec::new();
        let mut left = objects;
        while left > 0 {
            let k = rng.gen_range(1..=left);
            sizes.push(k);
            left -= k;
        }
        let mut parts = Vec::new();
        let mut morphisms = 0;
        for &k in &sizes {
            let order = *[1, 2, 3, 4, 6].choose(rng).unwrap();
            morphisms += k * k * order;
            parts.push(connected_groupoid(k, &vertex_group(order)));
        }
        if morphisms > 12 {
            continue;
        }
        return shuffled(
            &if parts.len() == 1 {
                parts.pop().unwrap()
            } else {
                disjoint_union(&parts)
            },
            rng,
        );
    }
}

/// The same groupoid with objects and morphisms re-declared in random order.
pub fn shuffled(g: &FiniteGroupoid, rng: &mut StdRng) -> FiniteGroupoid {
    let mut desc = g.to_description();
    desc.objects.shuffle(rng);
    desc.morphisms.shuffle(rng);
    validate_category(&desc).unwrap().as_groupoid().unwrap()
}

/// Every morphism once, plus up to `max_extra` repeats, in random order.
pub fn covering_selection(g: &FiniteGroupoid, max_extra: usize, rng: &mut StdRng) -> Vec<MorphismId> {
    let mut sel: Vec<MorphismId> = g.morphism_ids().collect();
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        let s = MorphismId(rng.gen_range(0..g.morphism_count()));
        sel.push(s);
    }
    sel.shuffle(rng);
    sel
}

pub fn build(g: &FiniteGroupoid, selection: Vec<MorphismId>) -> DasBuild {
    build_das(&SelectionSpec::new(g.category().clone(), selection).unwrap()).unwrap()
}

/// The fixed, named fixtures: `Z_4` with `(0,1,2,3,3)` and the two-object
/// groupoid with its nine-term selection.
pub fn z4_build() -> DasBuild {
    let g = cyclic_group(4);
    build_das(&SelectionSpec::from_names(g.category().clone(), &["0", "1", "2", "3", "3"]).unwrap()).unwrap()
}

pub fn two_object_build() -> DasBuild {
    let g = fixtures::two_object_groupoid();
    build_das(&SelectionSpec::from_names(g.category().clone(), &fixtures::two_object_selection()).unwrap()).unwrap()
}

/// Square integer matrix, the oracle's representation of an element of `M_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    pub a: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            a: vec![vec![0; n]; n],
        }
    }

    /// Sum of matrix units, 1-based.
    pub fn units(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = Self::zero(n);
        for &(i, j) in pairs {
            m.a[i - 1][j - 1] += 1;
        }
        m
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.a[i][k] != 0 {
                    for j in 0..self.n {
                        out.a[i][j] += self.a[i][k] * o.a[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.a[i][j] += o.a[i][j];
            }
        }
        out
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_ints(&self.a.concat())
    }
}

/// A pair of matrix units `(e_ab, e_cd)`, 1-based.
pub type UnitPair = ((usize, usize), (usize, usize));

/// `x ↦ Σ a_k x b_k` for matrix-unit pairs `(a_k, b_k)`.
pub fn conjugation(n: usize, terms: &[UnitPair], x: &IntMatrix) -> IntMatrix {
    terms.iter().fold(IntMatrix::zero(n), |acc, &(a, b)| {
        acc.add(&IntMatrix::units(n, &[a]).mul(x).mul(&IntMatrix::units(n, &[b])))
    })
}

/// Span of sums of matrix units, e.g. `&[&[(1, 1), (3, 3)]]` for `Q(e11+e33)`.
pub fn unit_span(n: usize, elements: &[&[(usize, usize)]]) -> Subspace {
    Subspace::span(n * n, elements.iter().map(|e| IntMatrix::units(n, e).to_vector())).unwrap()
}

/// Matrix-unit supports of a coordinate subspace, as labels like `e12`.
pub fn supports(alg: &FiniteAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| alg.describe(v)).collect()
}

/// Brute-force `X_s` count: pairs `(i, j)` with `s_i s = s_j`.
pub fn position_count(g: &FiniteGroupoid, selection: &[MorphismId], s: MorphismId) -> usize {
    let mut count = 0;
    for &si in selection {
        for &sj in selection {
            if g.dom(si) == g.cod(s) && g.compose(si, s) == Some(sj) {
                count += 1;
            }
        }
    }
    count
}
