//! Sparse exact arithmetic in Z[A, A^-1][K_1, K_2, ...].
//!
//! A monomial is an A-power together with a finite set of K-variable powers;
//! a polynomial maps monomials to nonzero integer coefficients. Coefficient
//! arithmetic is checked: overflow aborts instead of wrapping.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

/// `A^a_exp * K_1^p1 * K_2^p2 * ...` without a coefficient.
///
/// `k_powers` never stores a zero power; an empty map is a pure A-power.
/// The derived ordering (A-exponent first, then the K-power map) is the
/// canonical term order used by [`ArrowPolynomial::print_canonical`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowMonomial {
    pub a_exp: i64,
    pub k_powers: BTreeMap<u32, u32>,
}

impl ArrowMonomial {
    pub fn a_power(a_exp: i64) -> Self {
        ArrowMonomial { a_exp, k_powers: BTreeMap::new() }
    }

    /// Single variable K_index (index >= 1).
    pub fn k_var(index: u32) -> Self {
        assert!(index >= 1, "K-variable indices start at 1");
        ArrowMonomial { a_exp: 0, k_powers: BTreeMap::from([(index, 1)]) }
    }

    pub fn is_unit(&self) -> bool {
        self.a_exp == 0 && self.k_powers.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut k_powers = self.k_powers.clone();
        for (&i, &p) in &other.k_powers {
            let entry = k_powers.entry(i).or_insert(0);
            *entry = entry.checked_add(p).expect("K-power overflow");
        }
        ArrowMonomial {
            a_exp: checked_add(self.a_exp, other.a_exp),
            k_powers,
        }
    }
}

/// Element of Z[A, A^-1][K_1, K_2, ...] with no stored zero coefficients,
/// so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ArrowPolynomial {
    terms: BTreeMap<ArrowMonomial, i64>,
}

impl ArrowPolynomial {
    pub fn zero() -> Self {
        ArrowPolynomial::default()
    }

    pub fn one() -> Self {
        ArrowPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        ArrowPolynomial::monomial(ArrowMonomial::default(), c)
    }

    pub fn monomial(m: ArrowMonomial, coeff: i64) -> Self {
        let mut p = ArrowPolynomial::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ArrowMonomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Adds `coeff * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: ArrowMonomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let c = checked_add(*slot.get(), coeff);
                if c == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = c;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = ArrowPolynomial::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ArrowPolynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), checked_mul(c1, c2));
            }
        }
        out
    }

    /// Multiplies by `d^e` where `d = -A^2 - A^-2`.
    pub fn mul_d_power(&self, e: u32) -> Self {
        let mut out = self.clone();
        let d = {
            let mut d = ArrowPolynomial::zero();
            d.add_term(ArrowMonomial::a_power(2), -1);
            d.add_term(ArrowMonomial::a_power(-2), -1);
            d
        };
        for _ in 0..e {
            out = out.mul(&d);
        }
        out
    }

    /// Multiplies by `(-A^3)^(-w)`, the writhe normalization factor.
    pub fn normalize_writhe(&self, w: i64) -> Self {
        let sign = if w % 2 == 0 { 1 } else { -1 };
        let factor = ArrowPolynomial::monomial(
            ArrowMonomial::a_power(w.checked_mul(-3).expect("writhe overflow")),
            sign,
        );
        self.mul(&factor)
    }

    /// Sets every K_i to 1, collapsing to a Laurent polynomial in A.
    pub fn specialize_k_one(&self) -> LaurentA {
        let mut out = LaurentA::zero();
        for (m, c) in self.terms() {
            out.add_term(m.a_exp, c);
        }
        out
    }

    /// Replaces A by A^-1 in every term (the mirror image of the polynomial).
    pub fn invert_a(&self) -> Self {
        let mut out = ArrowPolynomial::zero();
        for (m, c) in self.terms() {
            let mut m = m.clone();
            m.a_exp = -m.a_exp;
            out.add_term(m, c);
        }
        out
    }

    /// Canonical text form: terms in ascending (A-exponent, K-powers) order,
    /// joined by ` + ` / ` - `, with unit coefficients and `A^0` elided.
    pub fn print_canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if m.a_exp != 0 {
                factors.push(format!("A^{}", m.a_exp));
            }
            for (&idx, &pow) in &m.k_powers {
                if pow == 1 {
                    factors.push(format!("K{idx}"));
                } else {
                    factors.push(format!("K{idx}^{pow}"));
                }
            }
            if mag != 1 || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the canonical syntax and a few relaxed variants of it
    /// (explicit `1*` coefficients, signs without surrounding spaces,
    /// factors in any order).
    pub fn parse_poly(text: &str) -> Result<Self, PolyParseError> {
        let mut out = ArrowPolynomial::zero();
        let text = text.trim();
        if text.is_empty() {
            return Err(PolyParseError::Empty);
        }
        for (sign, term) in split_terms(text)? {
            let (m, c) = parse_term(term)?;
            out.add_term(m, checked_mul(sign, c));
        }
        Ok(out)
    }
}

impl fmt::Display for ArrowPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print_canonical())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed term {0:?}")]
    BadTerm(String),
    #[error("malformed factor {0:?}")]
    BadFactor(String),
}

/// Splits on top-level `+`/`-`, keeping each term's sign. The leading term
/// may carry an explicit sign.
fn split_terms(text: &str) -> Result<Vec<(i64, &str)>, PolyParseError> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut start = 0usize;
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && i > start {
            // a sign inside a term only separates terms when it is not an
            // exponent sign such as `A^-5`
            if bytes[..i].iter().rev().take_while(|b| b.is_ascii_whitespace()).count() > 0
                || bytes[i - 1] != b'^'
            {
                let chunk = text[start..i].trim();
                if chunk.is_empty() {
                    return Err(PolyParseError::BadTerm(text[start..=i].to_string()));
                }
                terms.push((sign, chunk));
                sign = if b == b'+' { 1 } else { -1 };
                start = i + 1;
            }
        } else if (b == b'+' || b == b'-') && i == start {
            if i > 0 {
                return Err(PolyParseError::BadTerm(text[start..=i].to_string()));
            }
            sign = if b == b'+' { 1 } else { -1 };
            start = i + 1;
        }
        i += 1;
    }
    let last = text[start..].trim();
    if last.is_empty() {
        return Err(PolyParseError::BadTerm(text[start..].to_string()));
    }
    terms.push((sign, last));
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(ArrowMonomial, i64), PolyParseError> {
    let mut coeff = 1i64;
    let mut m = ArrowMonomial::default();
    for factor in term.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(PolyParseError::BadTerm(term.to_string()));
        }
        if let Ok(n) = f.parse::<i64>() {
            coeff = checked_mul(coeff, n);
        } else if let Some(rest) = f.strip_prefix('A') {
            let exp = match rest.strip_prefix('^') {
                Some(e) => e.parse::<i64>().map_err(|_| PolyParseError::BadFactor(f.to_string()))?,
                None if rest.is_empty() => 1,
                None => return Err(PolyParseError::BadFactor(f.to_string())),
            };
            m.a_exp = checked_add(m.a_exp, exp);
        } else if let Some(rest) = f.strip_prefix('K') {
            let (idx_text, pow) = match rest.split_once('^') {
                Some((i, p)) => {
                    (i, p.parse::<u32>().map_err(|_| PolyParseError::BadFactor(f.to_string()))?)
                }
                None => (rest, 1),
            };
            let idx: u32 =
                idx_text.parse().map_err(|_| PolyParseError::BadFactor(f.to_string()))?;
            if idx == 0 || pow == 0 {
                return Err(PolyParseError::BadFactor(f.to_string()));
            }
            let entry = m.k_powers.entry(idx).or_insert(0);
            *entry = entry.checked_add(pow).expect("K-power overflow");
        } else {
            return Err(PolyParseError::BadFactor(f.to_string()));
        }
    }
    Ok((m, coeff))
}

/// Laurent polynomial in A alone; image of the K_i := 1 specialization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentA {
    terms: BTreeMap<i64, i64>,
}

impl LaurentA {
    pub fn zero() -> Self {
        LaurentA::default()
    }

    pub fn one() -> Self {
        let mut p = LaurentA::zero();
        p.add_term(0, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a_exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(a_exp).or_insert(0);
        *c = checked_add(*c, coeff);
        if *c == 0 {
            self.terms.remove(&a_exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn print_canonical(&self) -> String {
        let mut p = ArrowPolynomial::zero();
        for (e, c) in self.terms() {
            p.add_term(ArrowMonomial::a_power(e), c);
        }
        p.print_canonical()
    }
}

impl fmt::Display for LaurentA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print_canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> ArrowPolynomial {
        ArrowPolynomial::parse_poly(text).unwrap()
    }

    #[test]
    fn print_zero() {
        assert_eq!(ArrowPolynomial::zero().print_canonical(), "0");
        assert_eq!(p("0"), ArrowPolynomial::zero());
    }

    #[test]
    fn add_basics() {
        let k1 = ArrowPolynomial::monomial(ArrowMonomial::k_var(1), 1);
        assert_eq!(k1.add(&ArrowPolynomial::zero()), k1);
        assert!(k1.add(&k1.neg()).is_zero());
        assert_eq!(p("A^2 + K1").add(&p("K1")), p("A^2 + 2*K1"));
    }

    #[test]
    fn mul_basics() {
        let k1 = ArrowPolynomial::monomial(ArrowMonomial::k_var(1), 1);
        assert_eq!(k1.mul(&k1), p("K1^2"));
        assert_eq!(p("A*K1").mul(&p("A^-1*K2")), p("K1*K2"));
        assert_eq!(p("K1*K2").mul(&ArrowPolynomial::one()), p("K1*K2"));
    }

    #[test]
    fn d_powers() {
        assert_eq!(ArrowPolynomial::one().mul_d_power(0), ArrowPolynomial::one());
        assert_eq!(ArrowPolynomial::one().mul_d_power(1).print_canonical(), "-A^-2 - A^2");
        assert_eq!(ArrowPolynomial::one().mul_d_power(2).print_canonical(), "A^-4 + 2 + A^4");
    }

    #[test]
    fn writhe_normalization() {
        let q = p("-A^-5 + A^-5*K1^2 - A^3*K1^2");
        assert_eq!(q.normalize_writhe(0), q);
        assert_eq!(q.normalize_writhe(1), p("A^-8 - A^-8*K1^2 + K1^2"));
        assert_eq!(ArrowPolynomial::one().normalize_writhe(-3).print_canonical(), "-A^9");
        assert_eq!(q.normalize_writhe(5).normalize_writhe(-5), q);
    }

    #[test]
    fn specialization() {
        assert!(p("K1^2 - K1").specialize_k_one().is_zero());
        let row = p("-A^4 - A^2*K1 + A^-2*K1 + A^-4");
        assert_eq!(row.specialize_k_one().print_canonical(), "A^-4 + A^-2 - A^2 - A^4");
    }

    #[test]
    fn canonical_order_and_elision() {
        let q = p("- K1^2*A^3 + A^-5*K1^2 - A^-5");
        assert_eq!(q.print_canonical(), "-A^-5 + A^-5*K1^2 - A^3*K1^2");
        assert_eq!(p("1*A^0*K2^1 + 0*K3 + 2").print_canonical(), "2 + K2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(ArrowPolynomial::parse_poly("").is_err());
        assert!(ArrowPolynomial::parse_poly("A^").is_err());
        assert!(ArrowPolynomial::parse_poly("K0").is_err());
        assert!(ArrowPolynomial::parse_poly("B^2").is_err());
        assert!(ArrowPolynomial::parse_poly("1 + + 2").is_err());
    }

    #[test]
    fn roundtrip() {
        for text in [
            "0",
            "1",
            "-A^-5 + A^-5*K1^2 - A^3*K1^2",
            "A^-4 + 2 + A^4",
            "K7 - 3*A^2*K1*K2^4",
        ] {
            assert_eq!(p(text).print_canonical(), text);
        }
    }

    #[test]
    fn invert_a_is_involution() {
        let q = p("-A^-5 + A^-5*K1^2 - A^3*K1^2");
        assert_eq!(q.invert_a().invert_a(), q);
        assert_eq!(q.invert_a().print_canonical(), "-A^-3*K1^2 - A^5 + A^5*K1^2");
    }
}
