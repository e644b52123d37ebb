//! Lower bounds carried by an arrow polynomial: the maximum k-degree bounds
//! the virtual crossing number from below, and the shape of the K-variable
//! support bounds the genus of a supporting surface.

use crate::arrowpoly::{ArrowMonomial, ArrowPolynomial};
use crate::diagram::GaussCode;
use crate::statesum::{expand_parallel, CALIBRATED};

/// Weighted K-degree of one summand: sum of index times power. Pure
/// A-powers have k-degree 0.
pub fn k_degree(m: &ArrowMonomial) -> u64 {
    m.k_powers.iter().map(|(&i, &p)| i as u64 * p as u64).sum()
}

/// The virtual crossing number of any diagram is at least the maximum
/// k-degree over the summands; 0 for constants and for the zero polynomial.
pub fn virtual_crossing_lower_bound(p: &ArrowPolynomial) -> u64 {
    p.terms().map(|(m, _)| k_degree(m)).max().unwrap_or(0)
}

/// How K-variables inside one summand are counted for the genus bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GenusRule {
    /// Count distinct K-indices: K_1^3 is one curve class. This is the
    /// reading the published bound tables follow.
    #[default]
    Distinct,
    /// Count total multiplicity: K_1^3 is three curves. Kept for comparison.
    Multiplicity,
}

fn curve_count(m: &ArrowMonomial, rule: GenusRule) -> u64 {
    match rule {
        GenusRule::Distinct => m.k_powers.len() as u64,
        GenusRule::Multiplicity => m.k_powers.values().map(|&p| p as u64).sum(),
    }
}

/// A surface of genus g carries at most 3g-3 disjoint essential curve
/// classes (one class when g = 1), so a summand with d of them forces
/// genus 0 for d = 0, genus 1 for d = 1, and otherwise the least g >= 2
/// with 3g - 3 >= d.
pub fn genus_lower_bound_with(p: &ArrowPolynomial, rule: GenusRule) -> u64 {
    let d = p.terms().map(|(m, _)| curve_count(m, rule)).max().unwrap_or(0);
    match d {
        0 => 0,
        1 => 1,
        d => (d + 3).div_ceil(3).max(2),
    }
}

pub fn genus_lower_bound(p: &ArrowPolynomial) -> u64 {
    genus_lower_bound_with(p, GenusRule::Distinct)
}

/// Both bounds together with the summands achieving them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub max_k_degree: u64,
    pub v_lower: u64,
    pub genus_lower: u64,
    pub k_degree_witnesses: Vec<ArrowMonomial>,
    pub genus_witnesses: Vec<ArrowMonomial>,
}

impl BoundsReport {
    pub fn from_polynomial(p: &ArrowPolynomial, rule: GenusRule) -> Self {
        let max_k_degree = virtual_crossing_lower_bound(p);
        let genus_lower = genus_lower_bound_with(p, rule);
        let max_curves = p.terms().map(|(m, _)| curve_count(m, rule)).max().unwrap_or(0);
        let k_degree_witnesses =
            p.terms().filter(|(m, _)| k_degree(m) == max_k_degree).map(|(m, _)| m.clone()).collect();
        let genus_witnesses = p
            .terms()
            .filter(|(m, _)| curve_count(m, rule) == max_curves)
            .map(|(m, _)| m.clone())
            .collect();
        BoundsReport {
            max_k_degree,
            v_lower: max_k_degree,
            genus_lower,
            k_degree_witnesses,
            genus_witnesses,
        }
    }
}

/// Everything the tool reports about one knot. All polynomial fields are in
/// canonical text form, so the bounds can be recomputed from the report
/// alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub name: String,
    pub gauss_code: String,
    pub writhe: i64,
    pub arrow_polynomial: String,
    pub normalized_polynomial: String,
    pub bracket: String,
    pub max_k_degree: u64,
    pub v_lower: u64,
    pub genus_lower: u64,
}

impl InvariantReport {
    pub fn compute(name: &str, code: &GaussCode, rule: GenusRule, threads: usize) -> Self {
        let raw = expand_parallel(code, &CALIBRATED, threads);
        let writhe = code.writhe();
        let normalized = raw.normalize_writhe(writhe);
        let bounds = BoundsReport::from_polynomial(&normalized, rule);
        InvariantReport {
            name: name.to_string(),
            gauss_code: code.to_string(),
            writhe,
            arrow_polynomial: raw.print_canonical(),
            normalized_polynomial: normalized.print_canonical(),
            bracket: raw.specialize_k_one().print_canonical(),
            max_k_degree: bounds.max_k_degree,
            v_lower: bounds.v_lower,
            genus_lower: bounds.genus_lower,
        }
    }
}

/// Single-threaded report with the default genus rule.
pub fn full_report(name: &str, code: &GaussCode) -> InvariantReport {
    InvariantReport::compute(name, code, GenusRule::Distinct, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrowpoly::ArrowPolynomial;

    fn p(text: &str) -> ArrowPolynomial {
        ArrowPolynomial::parse_poly(text).unwrap()
    }

    fn mono(text: &str) -> ArrowMonomial {
        p(text).terms().next().unwrap().0.clone()
    }

    #[test]
    fn k_degree_weights_by_index() {
        assert_eq!(k_degree(&mono("A^5")), 0);
        assert_eq!(k_degree(&mono("K1^2")), 2);
        assert_eq!(k_degree(&mono("K1*K2")), 3);
        assert_eq!(k_degree(&mono("K3")), 3);
    }

    #[test]
    fn v_bound_is_max_k_degree() {
        assert_eq!(virtual_crossing_lower_bound(&ArrowPolynomial::zero()), 0);
        assert_eq!(virtual_crossing_lower_bound(&ArrowPolynomial::one()), 0);
        assert_eq!(virtual_crossing_lower_bound(&p("-A^4 - A^2*K1 + A^-2*K1 + A^-4")), 1);
        assert_eq!(virtual_crossing_lower_bound(&p("A^8 - A^4 - A^-4 + 1 + A^-8")), 0);
        // a K1^3 summand dominates
        assert_eq!(virtual_crossing_lower_bound(&p("K1^3 + K2 - A^2*K1")), 3);
    }

    #[test]
    fn genus_bound_counts_distinct_indices() {
        assert_eq!(genus_lower_bound(&ArrowPolynomial::one()), 0);
        assert_eq!(genus_lower_bound(&p("K1^3 + K1")), 1);
        assert_eq!(genus_lower_bound(&p("1 - A^2*K1*K2")), 2);
        assert_eq!(genus_lower_bound(&p("K1*K2*K3")), 2);
        assert_eq!(genus_lower_bound(&p("K1*K2*K3*K4")), 3);
        assert_eq!(genus_lower_bound(&p("K1*K2*K3*K4*K5*K6*K7")), 4);
    }

    #[test]
    fn multiplicity_rule_differs_on_powers() {
        let q = p("K1^3 + K1");
        assert_eq!(genus_lower_bound_with(&q, GenusRule::Distinct), 1);
        assert_eq!(genus_lower_bound_with(&q, GenusRule::Multiplicity), 2);
    }

    #[test]
    fn bounds_ignore_normalization_and_mirror() {
        let q = p("-A^4 - A^2*K1 + A^-2*K1 + A^-4");
        for variant in [q.normalize_writhe(3), q.normalize_writhe(-2), q.invert_a()] {
            assert_eq!(virtual_crossing_lower_bound(&variant), virtual_crossing_lower_bound(&q));
            assert_eq!(genus_lower_bound(&variant), genus_lower_bound(&q));
        }
    }

    #[test]
    fn witnesses_achieve_the_bounds() {
        let q = p("K1^3 + K1*K2 - A^2*K1");
        let report = BoundsReport::from_polynomial(&q, GenusRule::Distinct);
        assert_eq!(report.max_k_degree, 3);
        assert_eq!(report.genus_lower, 2);
        assert_eq!(report.k_degree_witnesses, vec![mono("K1*K2"), mono("K1^3")]);
        assert_eq!(report.genus_witnesses, vec![mono("K1*K2")]);
    }

    #[test]
    fn unknot_report() {
        let report = full_report("unknot", &GaussCode::unknot());
        assert_eq!(report.arrow_polynomial, "1");
        assert_eq!(report.normalized_polynomial, "1");
        assert_eq!(report.bracket, "1");
        assert_eq!(report.writhe, 0);
        assert_eq!((report.max_k_degree, report.v_lower, report.genus_lower), (0, 0, 0));
    }
}
