//! Closed-form genera for complete and complete bipartite graphs, used as
//! reference values.

/// Genus of `K_n`: `ceil((n-3)(n-4)/12)`.
///
/// # Panics
/// If `n < 3`.
pub fn genus_formula_complete(n: usize) -> usize {
    assert!(n >= 3, "K_n genus formula needs n >= 3");
    ((n - 3) * n.saturating_sub(4)).div_ceil(12)
}

/// Genus of `K_{a,b}`: `ceil((a-2)(b-2)/4)`.
///
/// # Panics
/// If `a < 2` or `b < 2`.
pub fn genus_formula_complete_bipartite(a: usize, b: usize) -> usize {
    assert!(a >= 2 && b >= 2, "K_(a,b) genus formula needs a, b >= 2");
    ((a - 2) * (b - 2)).div_ceil(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_values() {
        assert_eq!(genus_formula_complete(7), 1);
        assert_eq!(genus_formula_complete(8), 2);
        assert_eq!(genus_formula_complete(4), 0);
        assert_eq!(genus_formula_complete(3), 0);
        assert_eq!(genus_formula_complete(12), 6);
    }

    #[test]
    fn complete_zero_iff_small() {
        for n in 3..40 {
            assert_eq!(genus_formula_complete(n) == 0, n <= 4);
        }
    }

    #[test]
    fn bipartite_values() {
        assert_eq!(genus_formula_complete_bipartite(3, 3), 1);
        assert_eq!(genus_formula_complete_bipartite(4, 4), 1);
        assert_eq!(genus_formula_complete_bipartite(4, 5), 2);
        for b in 2..20 {
            assert_eq!(genus_formula_complete_bipartite(2, b), 0);
        }
    }
}
