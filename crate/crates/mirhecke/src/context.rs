//! Algebra contexts. Three families share the generator alphabet:
//! the Iwahori-Hecke algebra H_n (T_1..T_{n-1} only), the cyclotomic algebra
//! H_n(1,0) (adds the idempotent-like generator X with X^2 = X), and the
//! mirabolic algebra R_n, the quotient of H_n(1,0) where the letter plays the
//! role of e = q^{-1}(T_0 + 1). Irreducible labels per context:
//! partitions of n (as bipartitions with empty second component) for Hecke,
//! all bipartitions of n for the cyclotomic algebra, and the sub-family
//! Lambda'(n) (second component a single column) for the mirabolic one.

use crate::combinatorics::{binomial, factorial, standard_bitableaux, Bipartition, Partition};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Hecke,
    Cyclotomic,
    Mirabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    pub kind: AlgebraKind,
    pub n: usize,
}

impl AlgebraContext {
    pub fn hecke(n: usize) -> Self {
        AlgebraContext {
            kind: AlgebraKind::Hecke,
            n,
        }
    }

    pub fn cyclotomic(n: usize) -> Self {
        AlgebraContext {
            kind: AlgebraKind::Cyclotomic,
            n,
        }
    }

    pub fn mirabolic(n: usize) -> Self {
        AlgebraContext {
            kind: AlgebraKind::Mirabolic,
            n,
        }
    }

    /// Does the context admit the letter X / e?
    pub fn has_e(&self) -> bool {
        self.kind != AlgebraKind::Hecke
    }

    /// Irreducible labels in canonical order.
    pub fn labels(&self) -> Vec<Bipartition> {
        match self.kind {
            AlgebraKind::Hecke => Partition::enumerate(self.n)
                .into_iter()
                .map(|p| Bipartition::new(p, Partition::empty()))
                .collect(),
            AlgebraKind::Cyclotomic => Bipartition::enumerate(self.n, false),
            AlgebraKind::Mirabolic => Bipartition::enumerate(self.n, true),
        }
    }

    pub fn admits_label(&self, label: &Bipartition) -> bool {
        if label.size() != self.n {
            return false;
        }
        match self.kind {
            AlgebraKind::Hecke => label.second.is_empty(),
            AlgebraKind::Cyclotomic => true,
            AlgebraKind::Mirabolic => label.is_second_column(),
        }
    }

    /// Dimension of the algebra (= sum of squared irreducible dimensions).
    pub fn dimension(&self) -> usize {
        match self.kind {
            AlgebraKind::Hecke => factorial(self.n),
            AlgebraKind::Cyclotomic => (1usize << self.n) * factorial(self.n),
            AlgebraKind::Mirabolic => crate::combinatorics::mirabolic_dimension(self.n),
        }
    }

    /// Dimension of the irreducible with the given label.
    pub fn irrep_dimension(&self, label: &Bipartition) -> usize {
        standard_bitableaux(label).len()
    }

    /// C(n,k) f_theta, the closed form for the same number.
    pub fn irrep_dimension_formula(&self, label: &Bipartition) -> usize {
        let k = label.first.size();
        binomial(self.n, k)
            * crate::combinatorics::tableau_count(&label.first)
            * crate::combinatorics::tableau_count(&label.second)
    }

    pub fn smaller(&self) -> Option<AlgebraContext> {
        if self.n == 0 {
            None
        } else {
            Some(AlgebraContext {
                kind: self.kind,
                n: self.n - 1,
            })
        }
    }

    pub fn larger(&self) -> AlgebraContext {
        AlgebraContext {
            kind: self.kind,
            n: self.n + 1,
        }
    }
}

impl fmt::Display for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AlgebraKind::Hecke => "hecke",
            AlgebraKind::Cyclotomic => "cyclotomic",
            AlgebraKind::Mirabolic => "mirabolic",
        };
        write!(f, "{}({})", name, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_counts_and_dimensions() {
        let ctx = AlgebraContext::mirabolic(2);
        assert_eq!(ctx.labels().len(), 4);
        assert_eq!(ctx.dimension(), 7);
        let cy = AlgebraContext::cyclotomic(2);
        assert_eq!(cy.labels().len(), 5);
        assert_eq!(cy.dimension(), 8);
        let sum: usize = cy
            .labels()
            .iter()
            .map(|l| cy.irrep_dimension(l).pow(2))
            .sum();
        assert_eq!(sum, 8);
        assert_eq!(AlgebraContext::mirabolic(4).dimension(), 209);
        assert_eq!(AlgebraContext::mirabolic(5).dimension(), 1546);
    }

    #[test]
    fn squared_dims_match_algebra_dimension() {
        for n in 0..=5usize {
            for ctx in [
                AlgebraContext::hecke(n),
                AlgebraContext::cyclotomic(n),
                AlgebraContext::mirabolic(n),
            ] {
                let sum: usize = ctx
                    .labels()
                    .iter()
                    .map(|l| ctx.irrep_dimension(l).pow(2))
                    .sum();
                assert_eq!(sum, ctx.dimension(), "{}", ctx);
            }
        }
    }
}
